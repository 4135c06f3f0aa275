//! Independent verification by direct construction of the permitted space.
//!
//! Nothing here touches the ghost transform's Fourier shortcut: the
//! permitted configurations come straight from the block operator's fixed
//! space, probabilities come from dimension counting, and for small levels
//! the whole input space is enumerated bit by bit. The correlation engine
//! and this module share only the face numbering convention, so agreement
//! between the two is meaningful evidence.

use crate::block::{build_block, input_index, propagate_assignment};
use crate::correlations::CorrelationQuery;
use crate::dyadic::{Dyadic, DyadicProbability};
use crate::error::{Error, Result};
use crate::fourier::table_index;
use crate::gf2::{row_action, Gf2Vector, Subspace};
use crate::model::VertexModel;
use crate::transform::{address_class, build_transform, AddressClass, GhostAddress};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Enumerating every input assignment is only feasible while the block has
/// at most `3 * 4^ENUMERATION_CAP = 12` spin lines.
pub const ENUMERATION_CAP: usize = 1;

/// Memoized permitted spaces, keyed by (matrix encoding, level).
type SpaceCache = Mutex<HashMap<(String, usize), Arc<Subspace>>>;

static SPACES: OnceLock<SpaceCache> = OnceLock::new();

/// The space of permitted configurations at level `n`: fixed points of the
/// block operator under cyclic boundary conditions. Memoized per matrix
/// and level, since correlation scans ask for the same space thousands of
/// times.
pub fn permitted_space(model: &VertexModel, n: usize) -> Result<Arc<Subspace>> {
    model.require_valid()?;
    let key = (model.encoding(), n);
    let cache = SPACES.get_or_init(Mutex::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(&key) {
        return Ok(Arc::clone(hit));
    }
    // computed outside the lock; a racing duplicate insert is harmless
    let block = build_block(model, n, false)?;
    let space = Arc::new(block.matrix().fixed_space()?);
    cache
        .lock()
        .expect("cache lock")
        .entry(key)
        .or_insert(space.clone());
    Ok(space)
}

/// Probability that the queried face-1 spins are all zero, by counting:
/// the permitted sub-ensemble with those coordinates pinned to zero is a
/// subspace, so the probability is a pure power of one half.
pub fn oracle_probability(model: &VertexModel, query: &CorrelationQuery) -> Result<DyadicProbability> {
    let space = permitted_space(model, query.n())?;
    let indices: Vec<usize> = query
        .edges()
        .iter()
        .map(|e| input_index(e, query.n()))
        .collect::<Result<_>>()?;
    let vanishing = space.dim_vanishing_on(&indices)?;
    Ok(DyadicProbability::half_pow((space.dim() - vanishing) as u32))
}

/// One way [`enumerate_check`] can fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumerationFailure {
    /// A brute-force fixed point that the permitted space does not contain.
    FixedPointOutsideSpace(Gf2Vector),
    /// Brute force found a different number of fixed points than the
    /// space dimension predicts.
    CountMismatch { expected: usize, found: usize },
    /// Counting over the explicit fixed set disagrees with the
    /// dimension-based probability at these face-1 input coordinates.
    ProbabilityMismatch {
        indices: Vec<usize>,
        counted: DyadicProbability,
        oracle: DyadicProbability,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub n: usize,
    /// Input assignments pushed through the block, `2^(3 * 4^n)`.
    pub inputs: usize,
    pub fixed_count: usize,
    pub space_dim: usize,
    /// Face-1 queries of up to four spins re-counted explicitly.
    pub queries: usize,
    pub failures: Vec<EnumerationFailure>,
    pub pass: bool,
}

/// Ground-truth check for small levels: pushes every input assignment
/// through the block vertex by vertex, collects the fixed points, and
/// confirms they are exactly the permitted space — then re-derives every
/// probability of up to four face-1 spins by explicit counting.
pub fn enumerate_check(model: &VertexModel, n: usize) -> Result<EnumerationReport> {
    model.require_valid()?;
    let dim = 3usize << (2 * n);
    if n > ENUMERATION_CAP {
        return Err(Error::LevelTooLarge {
            n,
            cap: ENUMERATION_CAP,
            dim,
        });
    }
    let space = permitted_space(model, n)?;
    let mut failures = Vec::new();
    let mut fixed = Vec::new();
    for assignment in 0..1u64 << dim {
        let bits: Vec<bool> = (0..dim).map(|i| assignment >> i & 1 == 1).collect();
        let x = Gf2Vector::from_bits(&bits);
        if propagate_assignment(model, n, &x, false)? == x {
            if !space.contains(&x)? {
                failures.push(EnumerationFailure::FixedPointOutsideSpace(x.clone()));
            }
            fixed.push(x);
        }
    }
    // containment plus matching cardinality pins the sets down exactly
    if fixed.len() != 1 << space.dim() {
        failures.push(EnumerationFailure::CountMismatch {
            expected: 1 << space.dim(),
            found: fixed.len(),
        });
    }
    let face = 1usize << (2 * n);
    let mut queries = 0;
    for subset in 1..1usize << face {
        if subset.count_ones() > 4 {
            continue;
        }
        let indices: Vec<usize> = (0..face).filter(|i| subset >> i & 1 == 1).collect();
        let count = fixed
            .iter()
            .filter(|x| indices.iter().all(|&i| !x.get(i)))
            .count();
        let counted =
            DyadicProbability::try_from(Dyadic::new(count as i128, fixed.len().ilog2()))?;
        let pairs: Vec<(usize, usize)> = indices.iter().map(|&i| (i >> n, i % (1 << n))).collect();
        let oracle = oracle_probability(model, &CorrelationQuery::from_pairs(n, &pairs)?)?;
        if counted != oracle {
            failures.push(EnumerationFailure::ProbabilityMismatch {
                indices,
                counted,
                oracle,
            });
        }
        queries += 1;
    }
    Ok(EnumerationReport {
        n,
        inputs: 1 << dim,
        fixed_count: fixed.len(),
        space_dim: space.dim(),
        queries,
        pass: failures.is_empty(),
        failures,
    })
}

/// True when a `2^m`-entry probability table (indices read most
/// significant bit first, as in [`crate::fourier::table_index`]) is
/// exactly the product of its `m` one-bit marginals.
pub fn joint_is_product(table: &[Dyadic]) -> Result<bool> {
    if table.is_empty() || !table.len().is_power_of_two() {
        return Err(Error::LengthMismatch {
            op: "joint_is_product",
            expected: table.len().next_power_of_two().max(2),
            found: table.len(),
        });
    }
    let m = table.len().ilog2() as usize;
    let mut zero_marginal = vec![Dyadic::ZERO; m];
    for (idx, &p) in table.iter().enumerate() {
        for (j, zm) in zero_marginal.iter_mut().enumerate() {
            if idx >> (m - 1 - j) & 1 == 0 {
                *zm += p;
            }
        }
    }
    for (idx, &p) in table.iter().enumerate() {
        let mut expected = Dyadic::ONE;
        for (j, &zm) in zero_marginal.iter().enumerate() {
            expected = expected
                * if idx >> (m - 1 - j) & 1 == 0 {
                    zm
                } else {
                    Dyadic::ONE - zm
                };
        }
        if p != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub n: usize,
    /// Ghost positions checked, `4^n`.
    pub positions: usize,
    /// Positions whose empirical marginal missed the class prediction.
    pub marginal_mismatches: Vec<usize>,
    /// Whether the empirical joint table factors into its marginals.
    pub product_holds: bool,
    pub pass: bool,
}

/// Verifies, over the explicitly enumerated ensemble, that the ghost
/// spins `t = y B` of the face-1 configuration `y` are independent, each
/// with the single-vertex marginal its address class predicts. This is
/// the factorization the correlation engine's product formula relies on,
/// recomputed here from nothing but the permitted space.
pub fn t_spin_independence_check(model: &VertexModel, n: usize) -> Result<IndependenceReport> {
    model.require_valid()?;
    if n > ENUMERATION_CAP {
        return Err(Error::LevelTooLarge {
            n,
            cap: ENUMERATION_CAP,
            dim: 3 << (2 * n),
        });
    }
    let space = permitted_space(model, n)?;
    let transform = build_transform(model, n)?;
    let ghost_dim = transform.dim();
    let total_exp = space.dim() as u32;
    let mut joint_counts = vec![0u64; 1 << ghost_dim];
    for x in space.elements() {
        let y = Gf2Vector::from_bits(&(0..ghost_dim).map(|i| x.get(i)).collect::<Vec<_>>());
        let t = row_action(&y, transform.b())?;
        joint_counts[table_index(&t)] += 1;
    }
    let joint: Vec<Dyadic> = joint_counts
        .iter()
        .map(|&c| Dyadic::new(c as i128, total_exp))
        .collect();
    let q0_plain = Dyadic::from(model.distribution(false)?.q0);
    let q0_ghost = Dyadic::from(model.distribution(true)?.q0);
    let mut marginal_mismatches = Vec::new();
    for j in 0..ghost_dim {
        let zero_count: u64 = joint_counts
            .iter()
            .enumerate()
            .filter(|(idx, _)| idx >> (ghost_dim - 1 - j) & 1 == 0)
            .map(|(_, &c)| c)
            .sum();
        let empirical = Dyadic::new(zero_count as i128, total_exp);
        let predicted = match address_class(GhostAddress::from_row(j, n), n)? {
            AddressClass::A => q0_plain,
            AddressClass::ATranspose => q0_ghost,
        };
        if empirical != predicted {
            marginal_mismatches.push(j);
        }
    }
    let product_holds = joint_is_product(&joint)?;
    Ok(IndependenceReport {
        n,
        positions: ghost_dim,
        pass: marginal_mismatches.is_empty() && product_holds,
        marginal_mismatches,
        product_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{enumerate_matrices, MatrixClass, VertexModel, REFERENCE_ENCODING};
    use crate::transform::class_counts;

    fn reference() -> VertexModel {
        VertexModel::from_encoding(REFERENCE_ENCODING).unwrap()
    }

    #[test]
    fn permitted_space_dimensions_for_the_reference_matrix() {
        let m = reference();
        let s0 = permitted_space(&m, 0).unwrap();
        assert_eq!(s0.dim(), 1);
        assert!(s0
            .contains(&Gf2Vector::from_bits(&[true, true, true]))
            .unwrap());
        assert_eq!(permitted_space(&m, 1).unwrap().dim(), 4);
        assert_eq!(permitted_space(&m, 2).unwrap().dim(), 16);
    }

    #[test]
    fn permitted_space_is_memoized() {
        let m = reference();
        let a = permitted_space(&m, 1).unwrap();
        let b = permitted_space(&m, 1).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }

    #[test]
    fn space_dimension_matches_the_slot_decomposition() {
        // each plain-class ghost slot contributes the eigenspace of the
        // matrix, each transposed-class slot that of its transpose
        for n in [1, 2] {
            let (count_a, count_at) = class_counts(n);
            for a in enumerate_matrices(None) {
                let m = match VertexModel::new(&a) {
                    Ok(m) if m.delta() => m,
                    _ => continue,
                };
                let spectral = m.spectral();
                let predicted =
                    count_a as usize * spectral.dim + count_at as usize * spectral.dim_t;
                assert_eq!(
                    permitted_space(&m, n).unwrap().dim(),
                    predicted,
                    "matrix {}, n = {n}",
                    m.encoding()
                );
            }
        }
    }

    #[test]
    fn oracle_matches_frozen_reference_values() {
        let m = reference();
        for (pairs, exp) in [
            (vec![(0, 0)], 1),
            (vec![(1, 0), (0, 1)], 2),
            (vec![(0, 0), (0, 1), (1, 0)], 3),
            (vec![(0, 0), (0, 1), (1, 0), (1, 1)], 3), // the level-1 square
        ] {
            let q = CorrelationQuery::from_pairs(1, &pairs).unwrap();
            assert_eq!(
                oracle_probability(&m, &q).unwrap(),
                DyadicProbability::half_pow(exp),
                "{pairs:?}"
            );
        }
    }

    #[test]
    fn enumeration_agrees_at_levels_zero_and_one() {
        let m = reference();
        let r0 = enumerate_check(&m, 0).unwrap();
        assert!(r0.pass, "{:?}", r0.failures);
        assert_eq!((r0.inputs, r0.fixed_count, r0.space_dim), (8, 2, 1));
        assert_eq!(r0.queries, 1);

        let r1 = enumerate_check(&m, 1).unwrap();
        assert!(r1.pass, "{:?}", r1.failures);
        assert_eq!((r1.inputs, r1.fixed_count, r1.space_dim), (4096, 16, 4));
        assert_eq!(r1.queries, 15);
    }

    #[test]
    fn enumeration_is_capped() {
        assert!(matches!(
            enumerate_check(&reference(), 2),
            Err(Error::LevelTooLarge { n: 2, cap: 1, .. })
        ));
    }

    #[test]
    fn product_detector_accepts_products_and_rejects_correlation() {
        let quarter = Dyadic::new(1, 2);
        assert!(joint_is_product(&[quarter; 4]).unwrap());
        // two perfectly correlated bits with uniform marginals
        let half = Dyadic::new(1, 1);
        assert!(!joint_is_product(&[half, Dyadic::ZERO, Dyadic::ZERO, half]).unwrap());
        assert!(joint_is_product(&[Dyadic::ONE]).unwrap());
        assert!(joint_is_product(&[]).is_err());
    }

    #[test]
    fn ghost_spins_are_independent_for_the_reference_matrix() {
        for n in [0, 1] {
            let report = t_spin_independence_check(&reference(), n).unwrap();
            assert!(report.pass, "n = {n}: {report:?}");
            assert_eq!(report.positions, 1 << (2 * n));
        }
    }

    #[test]
    fn ghost_spins_are_independent_for_a_twenty_six_class_matrix() {
        let a = &enumerate_matrices(Some(MatrixClass::TwentySixClass))[0];
        let report = t_spin_independence_check(&VertexModel::new(a).unwrap(), 1).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn degenerate_models_are_rejected() {
        let m = VertexModel::from_encoding("000000000").unwrap();
        assert!(matches!(
            permitted_space(&m, 1),
            Err(Error::DegenerateModel { .. })
        ));
    }
}
