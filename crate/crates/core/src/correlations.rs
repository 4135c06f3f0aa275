//! Exact k-spin correlation functions on the first input face.
//!
//! For a block at level `n` with cyclic boundary conditions, the permitted
//! configurations form a linear space and the ensemble is uniform over it.
//! The probability that `k` chosen face-1 input spins are all zero is
//! computed here without ever enumerating configurations:
//!
//! 1. each chosen spin's dual (a single unity on face 1) is pushed through
//!    the ghost transform `G`, giving `k` ghost duals `w_1 .. w_k`;
//! 2. the ghost spins are independent one-bit variables, so the transform
//!    of their joint distribution at any dual is the product of one-bit
//!    coefficients ([`crate::fourier::product_eval`]);
//! 3. summing the product values over all `2^k` subset sums of
//!    `w_1 .. w_k` and dividing by `2^k` yields the probability
//!    ([`crate::fourier::subspace_sum`]).
//!
//! The closed-form [`theorem_predictor`] states what the answer must be
//! for the twelve-matrix class: `1/2^k` for `k <= 3`, and for `k = 4`
//! exactly `1/8` when the four spins sit at the corners of an axis-aligned
//! square with side `2^(n-1)` taken cyclically, `1/16` otherwise. Scans
//! compare the engine against this prediction; two combinatorial checks
//! ([`tensor_sum_pairing_check`], [`interior_unity_check`]) pin down the
//! structure the prediction rests on.

use crate::block::EdgeAddress;
use crate::dyadic::{Dyadic, DyadicProbability};
use crate::error::{Error, Result};
use crate::fourier::{product_eval_cached, subspace_sum};
use crate::gf2::{Gf2Matrix, Gf2Vector};
use crate::model::VertexModel;
use crate::transform::{build_transform, SpinTransform};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// A set of distinct face-1 input spins to be tested for "all zero".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelationQuery {
    n: usize,
    edges: Vec<EdgeAddress>,
}

impl CorrelationQuery {
    pub fn new(n: usize, edges: Vec<EdgeAddress>) -> Result<CorrelationQuery> {
        if edges.is_empty() {
            return Err(Error::EmptyQuery);
        }
        let side = 1usize << n;
        for (i, e) in edges.iter().enumerate() {
            if e.axis != crate::block::Axis::One {
                return Err(Error::WrongAxis {
                    op: "correlation query",
                });
            }
            for c in [e.coords.0, e.coords.1] {
                if c >= side {
                    return Err(Error::IndexOutOfRange {
                        index: c,
                        dim: side,
                    });
                }
            }
            if edges[..i].contains(e) {
                return Err(Error::DuplicateEdge { index: i });
            }
        }
        Ok(CorrelationQuery { n, edges })
    }

    /// Builds a query from `(b2, b3)` coordinate pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<CorrelationQuery> {
        CorrelationQuery::new(
            n,
            pairs
                .iter()
                .map(|&(b2, b3)| EdgeAddress::face1(b2, b3))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[EdgeAddress] {
        &self.edges
    }
}

/// Reusable state for many queries against one model at one level: the
/// ghost transform plus the two one-bit Fourier coefficients.
pub struct CorrelationEngine {
    n: usize,
    transform: SpinTransform,
    q_hat1: Dyadic,
    q_hat1_t: Dyadic,
}

impl CorrelationEngine {
    pub fn new(model: &VertexModel, n: usize) -> Result<CorrelationEngine> {
        CorrelationEngine::with_cap(model, n, crate::block::DEFAULT_LEVEL_CAP)
    }

    /// [`CorrelationEngine::new`] with an explicit level cap, for callers
    /// that knowingly go beyond the default.
    pub fn with_cap(model: &VertexModel, n: usize, level_cap: usize) -> Result<CorrelationEngine> {
        Ok(CorrelationEngine {
            n,
            transform: crate::transform::build_transform_with_cap(model, n, level_cap)?,
            q_hat1: model.distribution(false)?.q_hat1,
            q_hat1_t: model.distribution(true)?.q_hat1,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Probability that all spins of the query are zero.
    pub fn probability(&self, query: &CorrelationQuery) -> Result<DyadicProbability> {
        if query.n != self.n {
            return Err(Error::LengthMismatch {
                op: "probability",
                expected: self.n,
                found: query.n,
            });
        }
        let k = query.k();
        // ghost dual of each spin: G times a single-unity column, i.e.
        // just the matching column of G
        let duals: Vec<Gf2Vector> = query
            .edges
            .iter()
            .map(|e| Ok(self.transform.g().col(crate::block::input_index(e, self.n)?)))
            .collect::<Result<_>>()?;
        let mut values = Vec::with_capacity(1 << k);
        for mask in 0..1usize << k {
            let mut w = Gf2Vector::zeros(self.transform.dim());
            for (i, d) in duals.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    w.xor_assign(d);
                }
            }
            values.push(product_eval_cached(self.q_hat1, self.q_hat1_t, self.n, &w)?);
        }
        subspace_sum(&values, k as u32)?.try_into()
    }
}

/// One-shot convenience wrapper around [`CorrelationEngine`].
pub fn k_spin_probability(model: &VertexModel, query: &CorrelationQuery) -> Result<DyadicProbability> {
    CorrelationEngine::new(model, query.n)?.probability(query)
}

/// True when the four edges are the corners of an axis-aligned square of
/// side `2^(n-1)`, coordinates taken cyclically modulo `2^n`. Slices that
/// are not exactly four distinct face-1 edges are never squares.
pub fn is_half_period_square(edges: &[EdgeAddress], n: usize) -> Result<bool> {
    if n == 0 {
        return Ok(false);
    }
    for e in edges {
        if e.axis != crate::block::Axis::One {
            return Err(Error::WrongAxis {
                op: "is_half_period_square",
            });
        }
    }
    if edges.len() != 4 {
        return Ok(false);
    }
    let side = 1usize << n;
    let half = side / 2;
    let mut b2: Vec<usize> = edges.iter().map(|e| e.coords.0).collect();
    let mut b3: Vec<usize> = edges.iter().map(|e| e.coords.1).collect();
    b2.sort_unstable();
    b2.dedup();
    b3.sort_unstable();
    b3.dedup();
    // two values per axis, a cyclic half period apart; four distinct
    // corners then force the full product set
    let half_apart = |vals: &[usize]| vals.len() == 2 && (vals[1] - vals[0]) % side == half;
    let distinct = {
        let mut pairs: Vec<(usize, usize)> = edges.iter().map(|e| e.coords).collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs.len() == 4
    };
    Ok(distinct && half_apart(&b2) && half_apart(&b3))
}

/// Closed-form prediction for the twelve-matrix class.
pub fn theorem_predictor(query: &CorrelationQuery) -> Result<DyadicProbability> {
    match query.k() {
        k @ 1..=3 => Ok(DyadicProbability::half_pow(k as u32)),
        4 => Ok(if is_half_period_square(query.edges(), query.n)? {
            DyadicProbability::half_pow(3)
        } else {
            DyadicProbability::half_pow(4)
        }),
        k => Err(Error::PredictorScope { k }),
    }
}

/// A quadruple where the engine and the predictor disagreed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadrupleMismatch {
    pub coords: [(usize, usize); 4],
    pub engine: DyadicProbability,
    pub predictor: DyadicProbability,
}

/// Outcome of a four-spin scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadrupleScanReport {
    pub n: usize,
    /// Whether every quadruple of the level was visited.
    pub exhaustive: bool,
    pub total: usize,
    pub squares: usize,
    /// Histogram of engine probabilities, ascending.
    pub value_counts: Vec<(DyadicProbability, usize)>,
    pub mismatches: Vec<QuadrupleMismatch>,
    pub pass: bool,
}

fn evaluate_quadruples(
    model: &VertexModel,
    n: usize,
    combos: Vec<[usize; 4]>,
    exhaustive: bool,
) -> Result<QuadrupleScanReport> {
    let engine = CorrelationEngine::new(model, n)?;
    let results: Vec<(DyadicProbability, DyadicProbability, bool)> = combos
        .par_iter()
        .map(|combo| {
            let pairs: Vec<(usize, usize)> =
                combo.iter().map(|&i| (i >> n, i & ((1 << n) - 1))).collect();
            let query = CorrelationQuery::from_pairs(n, &pairs)?;
            let engine_p = engine.probability(&query)?;
            let predicted = theorem_predictor(&query)?;
            let square = is_half_period_square(query.edges(), n)?;
            Ok((engine_p, predicted, square))
        })
        .collect::<Result<_>>()?;
    let mut histogram: BTreeMap<DyadicProbability, usize> = BTreeMap::new();
    let mut squares = 0;
    let mut mismatches = Vec::new();
    for (combo, (engine_p, predicted, square)) in combos.iter().zip(&results) {
        *histogram.entry(*engine_p).or_default() += 1;
        squares += *square as usize;
        if engine_p != predicted {
            mismatches.push(QuadrupleMismatch {
                coords: combo.map(|i| (i >> n, i & ((1 << n) - 1))),
                engine: *engine_p,
                predictor: *predicted,
            });
        }
    }
    Ok(QuadrupleScanReport {
        n,
        exhaustive,
        total: combos.len(),
        squares,
        value_counts: histogram.into_iter().collect(),
        mismatches,
        pass: true,
    })
    .map(|mut r| {
        r.pass = r.mismatches.is_empty();
        r
    })
}

/// Evaluates every four-spin query at level `n` against the predictor.
/// `C(4^n, 4)` quadruples — fine up to `n = 3`, enormous beyond (use the
/// stratified variant there).
pub fn scan_quadruples(model: &VertexModel, n: usize) -> Result<QuadrupleScanReport> {
    if n > 3 {
        return Err(Error::LevelTooLarge {
            n,
            cap: 3,
            dim: 1 << (2 * n),
        });
    }
    let face = 1usize << (2 * n);
    let mut combos = Vec::new();
    for a in 0..face {
        for b in a + 1..face {
            for c in b + 1..face {
                for d in c + 1..face {
                    combos.push([a, b, c, d]);
                }
            }
        }
    }
    evaluate_quadruples(model, n, combos, true)
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Stratified four-spin sample: *all* half-period squares of the level
/// plus deterministically seeded random quadruples, at least
/// `min_samples` in total.
pub fn scan_quadruples_stratified(
    model: &VertexModel,
    n: usize,
    min_samples: usize,
    seed: u64,
) -> Result<QuadrupleScanReport> {
    let side = 1usize << n;
    let half = side / 2;
    let face = side * side;
    let mut combos: Vec<[usize; 4]> = Vec::new();
    // every square is determined by its lexicographically first corner
    for x2 in 0..half {
        for x3 in 0..half {
            let mut square = [
                x2 * side + x3,
                x2 * side + (x3 + half),
                (x2 + half) * side + x3,
                (x2 + half) * side + (x3 + half),
            ];
            square.sort_unstable();
            combos.push(square);
        }
    }
    let mut seen: std::collections::HashSet<[usize; 4]> = combos.iter().copied().collect();
    let mut state = seed;
    while combos.len() < min_samples {
        let mut picks = [0usize; 4];
        let mut count = 0;
        while count < 4 {
            let p = (splitmix64(&mut state) as usize) % face;
            if !picks[..count].contains(&p) {
                picks[count] = p;
                count += 1;
            }
        }
        picks.sort_unstable();
        if seen.insert(picks) {
            combos.push(picks);
        }
    }
    evaluate_quadruples(model, n, combos, false)
}

/// Failure of the tensor-sum pairing property: four factor masks whose
/// vectors cancel without forming two equal pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorSumReport {
    pub pass: bool,
    pub checked: usize,
    pub failures: Vec<[usize; 4]>,
}

/// The length-`2^n` tensor vector whose factors are `(1,1)` at the set
/// bits of `mask` and `(1,0)` elsewhere: a unity at `t` exactly when
/// `t` is a submask of `mask`.
fn submask_indicator(n: usize, mask: usize) -> Gf2Vector {
    let mut v = Gf2Vector::zeros(1 << n);
    for t in 0..1usize << n {
        if t & !mask == 0 {
            v.set(t, true);
        }
    }
    v
}

/// Checks that four tensor-product vectors with factors from
/// `{(1,0), (1,1)}` can only sum to zero by forming two equal pairs.
/// Exhaustive over all `(2^n)^4` mask quadruples for `n <= 3`; for larger
/// `n`, `trials` deterministically seeded random quadruples.
pub fn tensor_sum_pairing_check(n: usize, trials: usize) -> TensorSumReport {
    let side = 1usize << n;
    let mut failures = Vec::new();
    let mut checked = 0;
    let consider = |masks: [usize; 4], failures: &mut Vec<[usize; 4]>| {
        let mut sum = Gf2Vector::zeros(side);
        for &m in &masks {
            sum.xor_assign(&submask_indicator(n, m));
        }
        let mut sorted = masks;
        sorted.sort_unstable();
        let paired = sorted[0] == sorted[1] && sorted[2] == sorted[3];
        // cancellation must come from equal pairs, and equal pairs must
        // always cancel
        if sum.is_zero() != paired {
            failures.push(masks);
        }
    };
    if n <= 3 {
        for a in 0..side {
            for b in 0..side {
                for c in 0..side {
                    for d in 0..side {
                        consider([a, b, c, d], &mut failures);
                        checked += 1;
                    }
                }
            }
        }
    } else {
        let mut state = 0x5eed_0000_0000_0000u64 | n as u64;
        for _ in 0..trials {
            let masks =
                [(); 4].map(|_| (splitmix64(&mut state) as usize) % side);
            consider(masks, &mut failures);
            checked += 1;
        }
    }
    TensorSumReport {
        pass: failures.is_empty(),
        checked,
        failures,
    }
}

/// Failure of the interior-unity property at one dual coordinate pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnityWitnessReport {
    pub pass: bool,
    pub checked: usize,
    pub failures: Vec<(usize, usize)>,
}

/// Reference shapes of the two coupled systems that the interior-unity
/// admissibility window is normalised to.
fn has_reference_normalization(model: &VertexModel) -> bool {
    model.g13() == &Gf2Matrix::from_fn(2, 2, |r, c| !(r == 1 && c == 1))
        && model.g12() == &Gf2Matrix::from_fn(2, 2, |r, c| r <= c)
}

/// Checks the off-corner witness property used by the four-spin argument:
/// for every face-1 dual with a single unity at `(chi2, chi3)`, where
/// `chi2` is not all-ones, `chi3` is not all-zeros, and `(chi2, chi3)` is
/// not the half-period corner `(01..1, 10..0)`, the ghost dual `G z` has a
/// unity at some `(alpha, beta)` with `alpha != 0`, `beta != 0` and
/// `alpha + beta < 2^n`.
///
/// The admissibility window is tied to a normalisation of the coupled
/// systems (`G_13 = (11|10)`, `G_12 = (11|01)`); matrices with the other
/// column arrangements place their degenerate windows elsewhere and are
/// rejected with [`Error::NormalizationMismatch`].
pub fn interior_unity_check(model: &VertexModel, n: usize) -> Result<UnityWitnessReport> {
    model.require_valid()?;
    if !has_reference_normalization(model) {
        return Err(Error::NormalizationMismatch {
            encoding: model.encoding(),
        });
    }
    let transform = build_transform(model, n)?;
    let side = 1usize << n;
    let (xi2, xi3) = (side - 1 - side / 2, side / 2);
    let mut failures = Vec::new();
    let mut checked = 0;
    for chi2 in 0..side {
        if chi2 == side - 1 {
            continue;
        }
        for chi3 in 1..side {
            if (chi2, chi3) == (xi2, xi3) {
                continue;
            }
            checked += 1;
            let w = transform.g().col(chi2 * side + chi3);
            let witness = w.iter_ones().any(|pos| {
                let (alpha, beta) = (pos / side, pos % side);
                alpha != 0 && beta != 0 && alpha + beta < side
            });
            if !witness {
                failures.push((chi2, chi3));
            }
        }
    }
    Ok(UnityWitnessReport {
        pass: failures.is_empty(),
        checked,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::Axis;
    use crate::model::{enumerate_matrices, MatrixClass, VertexModel, REFERENCE_ENCODING};

    fn reference() -> VertexModel {
        VertexModel::from_encoding(REFERENCE_ENCODING).unwrap()
    }

    #[test]
    fn query_validation() {
        assert!(matches!(
            CorrelationQuery::new(2, vec![]),
            Err(Error::EmptyQuery)
        ));
        assert!(matches!(
            CorrelationQuery::from_pairs(2, &[(0, 0), (0, 0)]),
            Err(Error::DuplicateEdge { index: 1 })
        ));
        assert!(matches!(
            CorrelationQuery::from_pairs(2, &[(4, 0)]),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            CorrelationQuery::new(2, vec![EdgeAddress::new(Axis::Two, 0, 0)]),
            Err(Error::WrongAxis { .. })
        ));
        let q = CorrelationQuery::from_pairs(2, &[(3, 0), (1, 2)]).unwrap();
        assert_eq!(q.k(), 2);
    }

    #[test]
    fn small_queries_are_uniform_for_the_reference_matrix() {
        for n in 1..=2 {
            let engine = CorrelationEngine::new(&reference(), n).unwrap();
            let side = 1usize << n;
            for b2 in 0..side {
                for b3 in 0..side {
                    let q = CorrelationQuery::from_pairs(n, &[(b2, b3)]).unwrap();
                    assert_eq!(
                        engine.probability(&q).unwrap(),
                        DyadicProbability::half_pow(1),
                        "n = {n}, single ({b2}, {b3})"
                    );
                }
            }
            let face = side * side;
            for i in 0..face {
                for j in i + 1..face {
                    let pairs = [(i / side, i % side), (j / side, j % side)];
                    let q = CorrelationQuery::from_pairs(n, &pairs).unwrap();
                    assert_eq!(
                        engine.probability(&q).unwrap(),
                        DyadicProbability::half_pow(2),
                        "n = {n}, pair {pairs:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn level_one_full_face_is_a_square() {
        // the only quadruple at n = 1 covers the whole face and is a
        // half-period square: probability 1/8, not 1/16
        let q = CorrelationQuery::from_pairs(1, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert!(is_half_period_square(q.edges(), 1).unwrap());
        assert_eq!(
            k_spin_probability(&reference(), &q).unwrap(),
            DyadicProbability::half_pow(3)
        );
        assert_eq!(
            theorem_predictor(&q).unwrap(),
            DyadicProbability::half_pow(3)
        );
    }

    #[test]
    fn square_and_non_square_quadruples_at_level_two() {
        let engine = CorrelationEngine::new(&reference(), 2).unwrap();
        for square in [
            [(0, 0), (2, 0), (0, 2), (2, 2)],
            [(3, 0), (1, 0), (3, 2), (1, 2)],
            [(1, 1), (3, 1), (1, 3), (3, 3)],
        ] {
            let q = CorrelationQuery::from_pairs(2, &square).unwrap();
            assert!(is_half_period_square(q.edges(), 2).unwrap(), "{square:?}");
            assert_eq!(
                engine.probability(&q).unwrap(),
                DyadicProbability::half_pow(3),
                "{square:?}"
            );
        }
        for other in [
            [(0, 0), (1, 0), (0, 2), (2, 2)],
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 0), (2, 1), (2, 0), (0, 1)],
        ] {
            let q = CorrelationQuery::from_pairs(2, &other).unwrap();
            assert!(!is_half_period_square(q.edges(), 2).unwrap(), "{other:?}");
            assert_eq!(
                engine.probability(&q).unwrap(),
                DyadicProbability::half_pow(4),
                "{other:?}"
            );
        }
    }

    #[test]
    fn square_detection_ignores_edge_order() {
        let base = [(1, 0), (3, 2), (3, 0), (1, 2)];
        assert!(is_half_period_square(
            CorrelationQuery::from_pairs(2, &base).unwrap().edges(),
            2
        )
        .unwrap());
        // three corners only
        let q3 = CorrelationQuery::from_pairs(2, &base[..3]).unwrap();
        assert!(!is_half_period_square(q3.edges(), 2).unwrap());
        assert!(!is_half_period_square(&[], 0).unwrap());
    }

    #[test]
    fn predictor_values_and_scope() {
        let q1 = CorrelationQuery::from_pairs(2, &[(0, 0)]).unwrap();
        assert_eq!(theorem_predictor(&q1).unwrap(), DyadicProbability::half_pow(1));
        let q5 = CorrelationQuery::from_pairs(
            2,
            &[(0, 0), (0, 1), (0, 2), (0, 3), (1, 0)],
        )
        .unwrap();
        assert!(matches!(
            theorem_predictor(&q5),
            Err(Error::PredictorScope { k: 5 })
        ));
    }

    #[test]
    fn probabilities_are_translation_invariant() {
        let engine = CorrelationEngine::new(&reference(), 2).unwrap();
        let base: Vec<(usize, usize)> = vec![(0, 0), (1, 2), (3, 3)];
        let p0 = engine
            .probability(&CorrelationQuery::from_pairs(2, &base).unwrap())
            .unwrap();
        for shift2 in 0..4 {
            for shift3 in 0..4 {
                let shifted: Vec<(usize, usize)> = base
                    .iter()
                    .map(|&(a, b)| ((a + shift2) % 4, (b + shift3) % 4))
                    .collect();
                let p = engine
                    .probability(&CorrelationQuery::from_pairs(2, &shifted).unwrap())
                    .unwrap();
                assert_eq!(p, p0, "shift ({shift2}, {shift3})");
            }
        }
    }

    #[test]
    fn exhaustive_level_two_scan_matches_the_prediction() {
        let report = scan_quadruples(&reference(), 2).unwrap();
        assert!(report.pass, "mismatches: {:?}", report.mismatches);
        assert!(report.exhaustive);
        assert_eq!(report.total, 1820);
        assert_eq!(report.squares, 4);
        assert_eq!(
            report.value_counts,
            vec![
                (DyadicProbability::half_pow(4), 1816),
                (DyadicProbability::half_pow(3), 4),
            ]
        );
    }

    #[test]
    fn stratified_scan_includes_every_square() {
        let report = scan_quadruples_stratified(&reference(), 2, 60, 7).unwrap();
        assert!(report.pass, "mismatches: {:?}", report.mismatches);
        assert!(!report.exhaustive);
        assert_eq!(report.squares, 4);
        assert!(report.total >= 60);
    }

    #[test]
    fn twenty_six_class_sample_is_uniform() {
        let a = &enumerate_matrices(Some(MatrixClass::TwentySixClass))[0];
        let engine = CorrelationEngine::new(&VertexModel::new(a).unwrap(), 2).unwrap();
        for pairs in [
            vec![(1, 2)],
            vec![(0, 0), (2, 2)],
            vec![(0, 0), (1, 1), (2, 2)],
            vec![(0, 0), (2, 0), (0, 2), (2, 2)], // a square: still 1/16 here
            vec![(3, 1), (0, 2), (1, 3), (2, 0)],
        ] {
            let q = CorrelationQuery::from_pairs(2, &pairs).unwrap();
            assert_eq!(
                engine.probability(&q).unwrap(),
                DyadicProbability::half_pow(pairs.len() as u32),
                "{pairs:?}"
            );
        }
    }

    #[test]
    fn tensor_sum_pairing_is_exhaustive_for_small_levels() {
        for n in 1..=3 {
            let report = tensor_sum_pairing_check(n, 0);
            assert!(report.pass, "n = {n}: {:?}", report.failures);
            assert_eq!(report.checked, 1 << (4 * n));
        }
        let sampled = tensor_sum_pairing_check(5, 2000);
        assert!(sampled.pass);
        assert_eq!(sampled.checked, 2000);
    }

    #[test]
    fn interior_unity_holds_for_the_reference_matrix() {
        for n in 1..=3 {
            let report = interior_unity_check(&reference(), n).unwrap();
            assert!(report.pass, "n = {n}: {:?}", report.failures);
            // admissible pairs: (2^n - 1) * (2^n - 1) - 1
            let side = 1usize << n;
            assert_eq!(report.checked, (side - 1) * (side - 1) - 1);
        }
    }

    #[test]
    fn interior_unity_rejects_other_normalizations() {
        // a twelve-class matrix whose coupled systems are arranged
        // differently: its degenerate windows sit elsewhere
        let m = VertexModel::from_encoding("011101010").unwrap();
        assert_eq!(
            crate::model::classify(m.matrix()).unwrap(),
            MatrixClass::TwelveClass
        );
        assert!(matches!(
            interior_unity_check(&m, 2),
            Err(Error::NormalizationMismatch { .. })
        ));
    }

    #[test]
    fn engine_level_must_match_query_level() {
        let engine = CorrelationEngine::new(&reference(), 2).unwrap();
        let q = CorrelationQuery::from_pairs(1, &[(0, 0)]).unwrap();
        assert!(engine.probability(&q).is_err());
    }
}
