//! The local vertex matrix and its derived data.
//!
//! A vertex carries a 3x3 matrix `A` over the two-element field; incoming
//! spins `(x1, x2, x3)` leave as `(y1, y2, y3) = (x1, x2, x3) * A`. Out of
//! the 512 candidate matrices the interesting ones satisfy a
//! general-position condition
//!
//! ```text
//! delta = a12*a23*a31 + a13*a32*a21 = 1
//! ```
//!
//! For each ordered pair `i != j` the entries of `A` and its 2x2 minors
//! assemble into a coupled two-spin system
//!
//! ```text
//! G_ij = ( a_ij  m_ji )
//!        ( a_ji  m_ij )      with det G_ij = delta,
//! ```
//!
//! where `m_jk` is the determinant of `A` with row `j` and column `k`
//! deleted. These 2x2 matrices drive the ghost transform in
//! [`crate::transform`]; their inverses appear as `b13`/`b12`.
//!
//! The fixed vectors of `A` (its eigenspace, since the only eigenvalue in
//! the field is 1) carry the stationary single-vertex distribution: uniform
//! over the eigenspace, zero elsewhere. Its first-spin marginal has the
//! two-point Fourier expansion `(q_hat0, q_hat1) = (q0 + q1, q0 - q1)`.

use crate::dyadic::{Dyadic, DyadicProbability};
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Subspace};

/// Determinant of `a` with row `row` and column `col` deleted (2x2 minor;
/// signs are irrelevant in characteristic two). Indices are 0-based.
fn minor(a: &Gf2Matrix, row: usize, col: usize) -> bool {
    let rs: Vec<usize> = (0..3).filter(|&r| r != row).collect();
    let cs: Vec<usize> = (0..3).filter(|&c| c != col).collect();
    (a.get(rs[0], cs[0]) & a.get(rs[1], cs[1])) ^ (a.get(rs[0], cs[1]) & a.get(rs[1], cs[0]))
}

/// Parses the nine-character row-major 0/1 encoding, e.g. `"011001101"`.
pub fn parse_matrix(encoding: &str) -> Result<Gf2Matrix> {
    if encoding.len() != 9 || !encoding.chars().all(|c| c == '0' || c == '1') {
        return Err(Error::BadEncoding {
            input: encoding.to_string(),
        });
    }
    let bytes = encoding.as_bytes();
    Ok(Gf2Matrix::from_fn(3, 3, |r, c| bytes[3 * r + c] == b'1'))
}

/// Nine-character row-major encoding of a 3x3 matrix.
pub fn encode_matrix(a: &Gf2Matrix) -> String {
    assert_eq!((a.rows(), a.cols()), (3, 3), "encoding is for 3x3 matrices");
    (0..9)
        .map(|i| if a.get(i / 3, i % 3) { '1' } else { '0' })
        .collect()
}

/// A vertex matrix together with everything derived from its entries.
///
/// Construction never fails on a 3x3 input; a degenerate matrix
/// (`delta = 0`) is still inspectable, but [`VertexModel::require_valid`]
/// gates every operation that needs the coupled systems to be invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexModel {
    a: Gf2Matrix,
    minors: Gf2Matrix,
    delta: bool,
    g13: Gf2Matrix,
    g12: Gf2Matrix,
    g23: Gf2Matrix,
    g21: Gf2Matrix,
    g32: Gf2Matrix,
    g31: Gf2Matrix,
    b13: Option<Gf2Matrix>,
    b12: Option<Gf2Matrix>,
}

impl VertexModel {
    pub fn new(a: &Gf2Matrix) -> Result<VertexModel> {
        if a.rows() != 3 || a.cols() != 3 {
            return Err(Error::NotSquare {
                op: "vertex model",
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let minors = Gf2Matrix::from_fn(3, 3, |r, c| minor(a, r, c));
        let delta = (a.get(0, 1) & a.get(1, 2) & a.get(2, 0))
            ^ (a.get(0, 2) & a.get(2, 1) & a.get(1, 0));
        let coupled = |i: usize, j: usize| {
            Gf2Matrix::from_fn(2, 2, |r, c| match (r, c) {
                (0, 0) => a.get(i, j),
                (0, 1) => minors.get(j, i),
                (1, 0) => a.get(j, i),
                _ => minors.get(i, j),
            })
        };
        let g13 = coupled(0, 2);
        let g12 = coupled(0, 1);
        // 2x2 inverses exist exactly when delta = det G_ij = 1
        let (b13, b12) = if delta {
            (Some(g13.inverse()?), Some(g12.inverse()?))
        } else {
            (None, None)
        };
        let (g23, g21) = (coupled(1, 2), coupled(1, 0));
        let (g32, g31) = (coupled(2, 1), coupled(2, 0));
        Ok(VertexModel {
            minors,
            delta,
            g13,
            g12,
            g23,
            g21,
            g32,
            g31,
            b13,
            b12,
            a: a.clone(),
        })
    }

    pub fn from_encoding(encoding: &str) -> Result<VertexModel> {
        VertexModel::new(&parse_matrix(encoding)?)
    }

    pub fn matrix(&self) -> &Gf2Matrix {
        &self.a
    }

    /// The 3x3 matrix of minors; entry `(j, k)` is `A` with row `j` and
    /// column `k` deleted.
    pub fn minors(&self) -> &Gf2Matrix {
        &self.minors
    }

    /// The general-position determinant `a12*a23*a31 + a13*a32*a21`.
    pub fn delta(&self) -> bool {
        self.delta
    }

    pub fn is_valid(&self) -> bool {
        self.delta
    }

    pub fn require_valid(&self) -> Result<()> {
        if self.delta {
            Ok(())
        } else {
            Err(Error::DegenerateModel {
                encoding: self.encoding(),
            })
        }
    }

    pub fn encoding(&self) -> String {
        encode_matrix(&self.a)
    }

    /// The coupled two-spin system `G_ij` for 1-based `i != j`.
    pub fn coupled(&self, i: usize, j: usize) -> &Gf2Matrix {
        match (i, j) {
            (1, 3) => &self.g13,
            (1, 2) => &self.g12,
            (2, 3) => &self.g23,
            (2, 1) => &self.g21,
            (3, 2) => &self.g32,
            (3, 1) => &self.g31,
            _ => panic!("coupled systems are indexed by ordered pairs from {{1,2,3}}"),
        }
    }

    pub fn g13(&self) -> &Gf2Matrix {
        &self.g13
    }

    pub fn g12(&self) -> &Gf2Matrix {
        &self.g12
    }

    /// Inverse of `G_13`; requires a valid model.
    pub fn b13(&self) -> Result<&Gf2Matrix> {
        self.require_valid()?;
        Ok(self.b13.as_ref().expect("valid models store inverses"))
    }

    /// Inverse of `G_12`; requires a valid model.
    pub fn b12(&self) -> Result<&Gf2Matrix> {
        self.require_valid()?;
        Ok(self.b12.as_ref().expect("valid models store inverses"))
    }

    /// The model of the transposed matrix.
    pub fn transposed(&self) -> VertexModel {
        VertexModel::new(&self.a.transpose()).expect("transpose of a 3x3 is 3x3")
    }

    /// Eigenspaces of the matrix and its transpose with their dimensions.
    pub fn spectral(&self) -> SpectralData {
        let e_space = self.a.fixed_space().expect("3x3 is square");
        let e_space_t = self
            .a
            .transpose()
            .fixed_space()
            .expect("3x3 is square");
        let dim = e_space.dim();
        let dim_t = e_space_t.dim();
        SpectralData {
            e_space,
            e_space_t,
            dim,
            dim_t,
        }
    }

    /// Stationary single-vertex distribution: uniform on the eigenspace of
    /// `A` (or of its transpose), zero elsewhere.
    pub fn distribution(&self, transposed: bool) -> Result<VertexDistribution> {
        self.require_valid()?;
        let spectral = self.spectral();
        let space = if transposed {
            &spectral.e_space_t
        } else {
            &spectral.e_space
        };
        let d = space.dim() as u32;
        let mut p = [DyadicProbability::ZERO; 8];
        for x in space.elements() {
            let idx = (x.get(0) as usize) << 2 | (x.get(1) as usize) << 1 | x.get(2) as usize;
            p[idx] = DyadicProbability::half_pow(d);
        }
        let q0: Dyadic = (0..4).map(|i| Dyadic::from(p[i])).fold(Dyadic::ZERO, |a, b| a + b);
        let q1: Dyadic = (4..8).map(|i| Dyadic::from(p[i])).fold(Dyadic::ZERO, |a, b| a + b);
        Ok(VertexDistribution {
            p,
            q0: q0.try_into()?,
            q1: q1.try_into()?,
            q_hat0: q0 + q1,
            q_hat1: q0 - q1,
        })
    }
}

/// Eigen-data of a vertex matrix and its transpose.
///
/// Over this field "eigenspace" always means the fixed space
/// `{x : x * A = x}`; its dimension equals that of the transposed matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralData {
    pub e_space: Subspace,
    pub e_space_t: Subspace,
    pub dim: usize,
    pub dim_t: usize,
}

impl SpectralData {
    /// The unique eigenvector when the eigenspace is one-dimensional.
    pub fn eigenvector(&self) -> Option<crate::gf2::Gf2Vector> {
        (self.dim == 1).then(|| self.e_space.basis().row(0))
    }

    pub fn eigenvector_t(&self) -> Option<crate::gf2::Gf2Vector> {
        (self.dim_t == 1).then(|| self.e_space_t.basis().row(0))
    }
}

/// Distribution of one vertex's spin triple `(x1, x2, x3)` under the
/// stationary ensemble, with the first-spin marginal and its two-point
/// Fourier coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexDistribution {
    /// `p[4*x1 + 2*x2 + x3]` is the probability of the triple.
    pub p: [DyadicProbability; 8],
    /// Marginal probability that the first spin is 0.
    pub q0: DyadicProbability,
    /// Marginal probability that the first spin is 1.
    pub q1: DyadicProbability,
    /// `q0 + q1` (always 1; kept for symmetry).
    pub q_hat0: Dyadic,
    /// `q0 - q1`; equal to 0 or 1 because the first-spin functional is
    /// linear on the eigenspace.
    pub q_hat1: Dyadic,
}

/// Coarse classification of all 512 vertex matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixClass {
    /// `delta = 1`, one-dimensional eigenspaces, eigenvector of `A` of
    /// shape `(1,*,*)` and of the transpose of shape `(0,*,*)`.
    /// Exactly 12 matrices; the long-range four-spin effect lives here.
    TwelveClass,
    /// `delta = 1`, one-dimensional eigenspaces, both eigenvectors of
    /// shape `(1,*,*)`. Exactly 26 matrices; correlations stay uniform.
    TwentySixClass,
    /// `delta = 1` but a different eigen-structure.
    Other,
    /// `delta = 0`: degenerate, no transform exists.
    DeltaZero,
}

impl MatrixClass {
    pub const ALL: [MatrixClass; 4] = [
        MatrixClass::TwelveClass,
        MatrixClass::TwentySixClass,
        MatrixClass::Other,
        MatrixClass::DeltaZero,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MatrixClass::TwelveClass => "twelve",
            MatrixClass::TwentySixClass => "twenty-six",
            MatrixClass::Other => "other",
            MatrixClass::DeltaZero => "delta-zero",
        }
    }
}

impl std::fmt::Display for MatrixClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Classifies a 3x3 matrix. See [`MatrixClass`].
pub fn classify(a: &Gf2Matrix) -> Result<MatrixClass> {
    let model = VertexModel::new(a)?;
    if !model.delta() {
        return Ok(MatrixClass::DeltaZero);
    }
    let spectral = model.spectral();
    let (Some(e), Some(et)) = (spectral.eigenvector(), spectral.eigenvector_t()) else {
        return Ok(MatrixClass::Other);
    };
    Ok(match (e.get(0), et.get(0)) {
        (true, false) => MatrixClass::TwelveClass,
        (true, true) => MatrixClass::TwentySixClass,
        _ => MatrixClass::Other,
    })
}

/// Conjugation by the permutation swapping the second and third axes:
/// `H * A * H` with `H = (100 / 001 / 010)`. An involution on matrices that
/// preserves each class.
pub fn conjugate_by_h(a: &Gf2Matrix) -> Result<Gf2Matrix> {
    if a.rows() != 3 || a.cols() != 3 {
        return Err(Error::NotSquare {
            op: "conjugate_by_h",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let h = |i: usize| [0, 2, 1][i];
    Ok(Gf2Matrix::from_fn(3, 3, |r, c| a.get(h(r), h(c))))
}

/// All 512 matrices in encoding order, optionally restricted to one class.
pub fn enumerate_matrices(filter: Option<MatrixClass>) -> Vec<Gf2Matrix> {
    (0..512u16)
        .map(|bits| Gf2Matrix::from_fn(3, 3, |r, c| bits >> (8 - (3 * r + c)) & 1 == 1))
        .filter(|a| match filter {
            None => true,
            Some(class) => classify(a).expect("3x3 by construction") == class,
        })
        .collect()
}

/// The reference matrix used throughout the examples and tests.
pub const REFERENCE_ENCODING: &str = "011001101";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::Gf2Vector;

    fn reference() -> VertexModel {
        VertexModel::from_encoding(REFERENCE_ENCODING).unwrap()
    }

    #[test]
    fn encoding_round_trips() {
        let a = parse_matrix("011001101").unwrap();
        assert_eq!(a, Gf2Matrix::from_bit_strings(&["011", "001", "101"]).unwrap());
        assert_eq!(encode_matrix(&a), "011001101");
        assert!(parse_matrix("01100110").is_err());
        assert!(parse_matrix("01100110x").is_err());
    }

    #[test]
    fn minors_of_the_reference_matrix() {
        let m = reference();
        let expected = Gf2Matrix::from_bit_strings(&["010", "111", "100"]).unwrap();
        assert_eq!(m.minors(), &expected);
        // row 1, column 2 deleted (0-based) -> the published spot check
        assert!(m.minors().get(1, 2));
    }

    #[test]
    fn reference_coupled_systems() {
        let m = reference();
        assert!(m.delta());
        assert_eq!(m.g13(), &Gf2Matrix::from_bit_strings(&["11", "10"]).unwrap());
        assert_eq!(m.g12(), &Gf2Matrix::from_bit_strings(&["11", "01"]).unwrap());
        assert_eq!(m.coupled(2, 3), &Gf2Matrix::identity(2));
    }

    #[test]
    fn inverses_multiply_back_to_identity() {
        let m = reference();
        assert_eq!(
            m.g13().mat_mul(m.b13().unwrap()).unwrap(),
            Gf2Matrix::identity(2)
        );
        assert_eq!(
            m.g12().mat_mul(m.b12().unwrap()).unwrap(),
            Gf2Matrix::identity(2)
        );
        // the published involution: G_12 is its own inverse
        assert_eq!(m.b12().unwrap(), m.g12());
    }

    #[test]
    fn coupled_determinants_equal_delta_everywhere() {
        let det2 = |g: &Gf2Matrix| (g.get(0, 0) & g.get(1, 1)) ^ (g.get(0, 1) & g.get(1, 0));
        for a in enumerate_matrices(None) {
            let m = VertexModel::new(&a).unwrap();
            for (i, j) in [(1, 3), (1, 2), (2, 3), (2, 1), (3, 2), (3, 1)] {
                assert_eq!(det2(m.coupled(i, j)), m.delta(), "matrix {}", m.encoding());
            }
        }
    }

    #[test]
    fn degenerate_matrix_is_inspectable_but_gated() {
        let m = VertexModel::new(&Gf2Matrix::identity(3)).unwrap();
        assert!(!m.is_valid());
        assert!(!m.delta());
        assert!(matches!(
            m.require_valid(),
            Err(Error::DegenerateModel { .. })
        ));
        assert!(m.b13().is_err());
        assert!(m.distribution(false).is_err());
        // raw data still present
        assert_eq!(m.minors().rows(), 3);
    }

    #[test]
    fn reference_distribution_values() {
        let d = reference().distribution(false).unwrap();
        let half = DyadicProbability::half_pow(1);
        assert_eq!(d.p[0b000], half);
        assert_eq!(d.p[0b111], half);
        assert_eq!(
            d.p.iter().filter(|&&x| x == DyadicProbability::ZERO).count(),
            6
        );
        assert_eq!((d.q0, d.q1), (half, half));
        assert_eq!(d.q_hat0, Dyadic::ONE);
        assert_eq!(d.q_hat1, Dyadic::ZERO);

        let dt = reference().distribution(true).unwrap();
        assert_eq!(dt.p[0b000], half);
        assert_eq!(dt.p[0b011], half);
        assert_eq!(dt.q0, DyadicProbability::ONE);
        assert_eq!(dt.q1, DyadicProbability::ZERO);
        assert_eq!(dt.q_hat1, Dyadic::ONE);
    }

    #[test]
    fn trivial_eigenspace_gives_a_point_mass() {
        // first valid matrix with a zero-dimensional eigenspace
        let a = enumerate_matrices(Some(MatrixClass::Other))
            .into_iter()
            .find(|a| {
                VertexModel::new(a).unwrap().spectral().dim == 0
            })
            .expect("such matrices exist");
        let d = VertexModel::new(&a).unwrap().distribution(false).unwrap();
        assert_eq!(d.p[0], DyadicProbability::ONE);
        assert_eq!(d.q_hat1, Dyadic::ONE);
    }

    #[test]
    fn spectral_dimensions_agree_with_the_transpose() {
        for a in enumerate_matrices(None) {
            let s = VertexModel::new(&a).unwrap().spectral();
            assert_eq!(s.dim, s.dim_t, "matrix {}", encode_matrix(&a));
        }
    }

    #[test]
    fn first_spin_fourier_coefficient_is_zero_or_one() {
        for a in enumerate_matrices(None) {
            let m = VertexModel::new(&a).unwrap();
            if !m.is_valid() {
                continue;
            }
            for transposed in [false, true] {
                let d = m.distribution(transposed).unwrap();
                assert!(
                    d.q_hat1 == Dyadic::ZERO || d.q_hat1 == Dyadic::ONE,
                    "matrix {}",
                    m.encoding()
                );
            }
        }
    }

    #[test]
    fn class_census() {
        let count = |c| enumerate_matrices(Some(c)).len();
        assert_eq!(count(MatrixClass::TwelveClass), 12);
        assert_eq!(count(MatrixClass::TwentySixClass), 26);
        assert_eq!(count(MatrixClass::Other), 74);
        assert_eq!(count(MatrixClass::DeltaZero), 400);
    }

    #[test]
    fn reference_matrix_is_in_the_twelve_class() {
        let a = parse_matrix(REFERENCE_ENCODING).unwrap();
        assert_eq!(classify(&a).unwrap(), MatrixClass::TwelveClass);
        let s = VertexModel::new(&a).unwrap().spectral();
        assert_eq!(s.eigenvector().unwrap(), Gf2Vector::from_bit_string("111").unwrap());
        assert_eq!(s.eigenvector_t().unwrap(), Gf2Vector::from_bit_string("011").unwrap());
    }

    #[test]
    fn twelve_class_eigenvector_shapes() {
        for a in enumerate_matrices(Some(MatrixClass::TwelveClass)) {
            let s = VertexModel::new(&a).unwrap().spectral();
            assert!(s.eigenvector().unwrap().get(0));
            assert!(!s.eigenvector_t().unwrap().get(0));
        }
    }

    #[test]
    fn twenty_six_class_has_no_first_spin_bias() {
        for a in enumerate_matrices(Some(MatrixClass::TwentySixClass)) {
            let m = VertexModel::new(&a).unwrap();
            assert_eq!(m.distribution(false).unwrap().q_hat1, Dyadic::ZERO);
            assert_eq!(m.distribution(true).unwrap().q_hat1, Dyadic::ZERO);
        }
    }

    #[test]
    fn h_conjugation_is_a_class_preserving_involution() {
        for a in enumerate_matrices(None) {
            let conj = conjugate_by_h(&a).unwrap();
            assert_eq!(conjugate_by_h(&conj).unwrap(), a);
            assert_eq!(classify(&conj).unwrap(), classify(&a).unwrap());
        }
    }

    #[test]
    fn transposing_twice_returns_the_model() {
        let m = reference();
        assert_eq!(m.transposed().transposed(), m);
        assert_eq!(
            m.transposed().encoding(),
            encode_matrix(&m.matrix().transpose())
        );
    }
}
