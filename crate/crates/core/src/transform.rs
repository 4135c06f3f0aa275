//! The ghost-spin change of variables under which the model reproduces
//! itself one level up.
//!
//! Doubling a block pairs each face-1 input line with a perpendicular
//! partner, and the natural variables of the doubled system are "ghost"
//! spins: linear combinations of input pairs read off through the coupled
//! two-spin systems `G_13` and `G_12` of the vertex matrix. Repeating the
//! doubling `n` times gives the closed tensor form
//!
//! ```text
//! G = G_13^(kron n) kron G_12^(kron n),      B = G^-1 = B_13^(kron n) kron B_12^(kron n).
//! ```
//!
//! Rows and columns of `G` are indexed by the concatenation of two `n`-bit
//! coordinates: a row belongs to ghost address `(alpha, beta)` at linear
//! position `alpha * 2^n + beta`, and a column to the face-1 input line
//! `(b2, b3)` at `b2 * 2^n + b3` (the same packing as
//! [`crate::block::input_index`] on face 1).
//!
//! The punchline of the construction: the ghost spin at `(alpha, beta)`
//! behaves like a fresh single-vertex spin, governed by the original
//! matrix when `alpha + beta < 2^n` and by its transpose when
//! `alpha + beta >= 2^n`. [`address_class`] encodes that test and
//! [`class_counts`] its census.

use crate::block::{input_index, Axis, EdgeAddress};
use crate::error::{Error, Result};
use crate::gf2::{col_action, Gf2Matrix, Gf2Vector};
use crate::model::VertexModel;

pub use crate::block::DEFAULT_LEVEL_CAP;

/// A ghost-spin address: two `n`-bit coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GhostAddress {
    pub alpha: usize,
    pub beta: usize,
}

impl GhostAddress {
    pub fn new(alpha: usize, beta: usize) -> GhostAddress {
        GhostAddress { alpha, beta }
    }

    /// Linear row position `alpha * 2^n + beta`.
    pub fn row(&self, n: usize) -> usize {
        (self.alpha << n) | self.beta
    }

    /// Inverse of [`GhostAddress::row`].
    pub fn from_row(row: usize, n: usize) -> GhostAddress {
        GhostAddress {
            alpha: row >> n,
            beta: row & ((1 << n) - 1),
        }
    }
}

/// Which vertex matrix governs a ghost spin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AddressClass {
    /// `alpha + beta < 2^n`: the spin follows the matrix itself.
    A,
    /// `alpha + beta >= 2^n`: the spin follows the transpose.
    ATranspose,
}

/// Classifies a ghost address at level `n`.
pub fn address_class(addr: GhostAddress, n: usize) -> Result<AddressClass> {
    let side = 1usize << n;
    for c in [addr.alpha, addr.beta] {
        if c >= side {
            return Err(Error::IndexOutOfRange {
                index: c,
                dim: side,
            });
        }
    }
    Ok(if addr.alpha + addr.beta >= side {
        AddressClass::ATranspose
    } else {
        AddressClass::A
    })
}

/// Exhaustive census of the two classes over all `4^n` ghost addresses.
/// Returns `(count_A, count_ATranspose)`; the closed forms are
/// `2^(2n-1) + 2^(n-1)` and `2^(2n-1) - 2^(n-1)` for `n >= 1`.
pub fn class_counts(n: usize) -> (u64, u64) {
    let side = 1usize << n;
    let mut counts = (0u64, 0u64);
    for alpha in 0..side {
        for beta in 0..side {
            match address_class(GhostAddress::new(alpha, beta), n).expect("in range") {
                AddressClass::A => counts.0 += 1,
                AddressClass::ATranspose => counts.1 += 1,
            }
        }
    }
    counts
}

/// The level-`n` ghost transform together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinTransform {
    n: usize,
    g: Gf2Matrix,
    b: Gf2Matrix,
}

impl SpinTransform {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `4^n`.
    pub fn dim(&self) -> usize {
        self.g.rows()
    }

    /// The forward transform `G` (ghost rows over input columns).
    pub fn g(&self) -> &Gf2Matrix {
        &self.g
    }

    /// The inverse transform `B`.
    pub fn b(&self) -> &Gf2Matrix {
        &self.b
    }

    /// Pushes a dual (column) vector of face-1 spins to ghost duals:
    /// `w = G * z`. A spin functional with dual `z` on the inputs is the
    /// functional with dual `w` on the ghost spins.
    pub fn t_dual(&self, z: &Gf2Vector) -> Result<Gf2Vector> {
        col_action(&self.g, z)
    }
}

fn kron_power(m: &Gf2Matrix, n: usize) -> Gf2Matrix {
    let mut out = Gf2Matrix::identity(1);
    for _ in 0..n {
        out = out.kron(m);
    }
    out
}

/// Builds the closed-form transform at level `n`.
pub fn build_transform_with_cap(
    model: &VertexModel,
    n: usize,
    level_cap: usize,
) -> Result<SpinTransform> {
    model.require_valid()?;
    if n > level_cap {
        return Err(Error::LevelTooLarge {
            n,
            cap: level_cap,
            dim: 1 << (2 * n),
        });
    }
    let g = kron_power(model.g13(), n).kron(&kron_power(model.g12(), n));
    let b = kron_power(model.b13()?, n).kron(&kron_power(model.b12()?, n));
    Ok(SpinTransform { n, g, b })
}

/// [`build_transform_with_cap`] at the default cap.
pub fn build_transform(model: &VertexModel, n: usize) -> Result<SpinTransform> {
    build_transform_with_cap(model, n, DEFAULT_LEVEL_CAP)
}

/// Builds the same transform as a product of single-doubling factors: the
/// step that splits tensor slot `k` (1-based from the most significant)
/// contributes `(1 kron G_13 kron 1) kron (1 kron G_12 kron 1)` with the
/// active factor in slot `k` of each half. The factors act on disjoint
/// slots, so their product telescopes to the closed form; this path exists
/// to verify that, not for production use.
pub fn build_transform_stepwise(model: &VertexModel, n: usize) -> Result<Gf2Matrix> {
    model.require_valid()?;
    let side = 1usize << n;
    let mut product = Gf2Matrix::identity(side * side);
    for k in 1..=n {
        let slot = |g: &Gf2Matrix| {
            Gf2Matrix::identity(1 << (k - 1))
                .kron(g)
                .kron(&Gf2Matrix::identity(side >> k))
        };
        let factor = slot(model.g13()).kron(&slot(model.g12()));
        product = product.mat_mul(&factor)?;
    }
    Ok(product)
}

/// The dual (column) vector of one face-1 input spin: a single unity at
/// position `b2 * 2^n + b3` in a length-`4^n` vector.
pub fn i_dual_column(addr: &EdgeAddress, n: usize) -> Result<Gf2Vector> {
    if addr.axis != Axis::One {
        return Err(Error::WrongAxis {
            op: "i_dual_column",
        });
    }
    Gf2Vector::unit(1 << (2 * n), input_index(addr, n)?)
}

/// The three published tensor bases of the doubled block at `n = 1`, one
/// per face, *in the row order of the source equations*: the face-1 matrix
/// `G_13 kron G_12` lists basis vectors `(e1, e2, e3, e4)`, the face-2
/// matrix `G_23 kron G_21` lists `(e2, e1, e3, e4)`, and the face-3 matrix
/// `G_32 kron G_31` lists `(e3, e1, e2, e4)`. Callers that need
/// `(e1, e2, e3, e4)` order must reorder rows accordingly.
pub fn v_bases_2x2x2(model: &VertexModel) -> Result<[Gf2Matrix; 3]> {
    model.require_valid()?;
    Ok([
        model.g13().kron(model.g12()),
        model.coupled(2, 3).kron(model.coupled(2, 1)),
        model.coupled(3, 2).kron(model.coupled(3, 1)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{enumerate_matrices, MatrixClass, VertexModel, REFERENCE_ENCODING};

    fn reference() -> VertexModel {
        VertexModel::from_encoding(REFERENCE_ENCODING).unwrap()
    }

    #[test]
    fn address_class_examples() {
        let class = |a, b, n| address_class(GhostAddress::new(a, b), n).unwrap();
        assert_eq!(class(0, 0, 1), AddressClass::A);
        assert_eq!(class(0, 1, 1), AddressClass::A);
        assert_eq!(class(1, 0, 1), AddressClass::A);
        assert_eq!(class(1, 1, 1), AddressClass::ATranspose);
        assert_eq!(class(2, 1, 2), AddressClass::A);
        assert_eq!(class(2, 2, 2), AddressClass::ATranspose);
        assert!(address_class(GhostAddress::new(4, 0), 2).is_err());
    }

    #[test]
    fn class_counts_match_the_closed_form() {
        assert_eq!(class_counts(1), (3, 1));
        assert_eq!(class_counts(2), (10, 6));
        for n in 1..=8 {
            let (a, at) = class_counts(n);
            assert_eq!(a, (1 << (2 * n - 1)) + (1 << (n - 1)), "n = {n}");
            assert_eq!(at, (1 << (2 * n - 1)) - (1 << (n - 1)), "n = {n}");
            assert_eq!(a + at, 1 << (2 * n));
        }
    }

    /// Independent recursive classifier: look at the leading bits; two
    /// ones force the transposed class, two zeros the plain class, and a
    /// mixed pair defers to the remaining bits.
    fn recursive_class(alpha: usize, beta: usize, n: usize) -> AddressClass {
        if n == 0 {
            // empty addresses: the sum 0 is not >= 1
            return AddressClass::A;
        }
        let top = 1 << (n - 1);
        match (alpha & top != 0, beta & top != 0) {
            (true, true) => AddressClass::ATranspose,
            (false, false) => AddressClass::A,
            _ => recursive_class(alpha & (top - 1), beta & (top - 1), n - 1),
        }
    }

    #[test]
    fn closed_form_class_agrees_with_the_recursive_rule() {
        for n in 1..=4 {
            let side = 1usize << n;
            for alpha in 0..side {
                for beta in 0..side {
                    assert_eq!(
                        address_class(GhostAddress::new(alpha, beta), n).unwrap(),
                        recursive_class(alpha, beta, n),
                        "(alpha, beta, n) = ({alpha}, {beta}, {n})"
                    );
                }
            }
        }
    }

    #[test]
    fn ghost_row_round_trips() {
        for n in 0..=3 {
            for row in 0..1usize << (2 * n) {
                assert_eq!(GhostAddress::from_row(row, n).row(n), row);
            }
        }
    }

    #[test]
    fn level_one_transform_is_the_coupled_tensor_product() {
        let t = build_transform(&reference(), 1).unwrap();
        let expected =
            Gf2Matrix::from_bit_strings(&["1111", "0101", "1100", "0100"]).unwrap();
        assert_eq!(t.g(), &expected);
    }

    #[test]
    fn transform_inverse_really_inverts() {
        for n in 0..=3 {
            let t = build_transform(&reference(), n).unwrap();
            assert_eq!(
                t.g().mat_mul(t.b()).unwrap(),
                Gf2Matrix::identity(t.dim()),
                "n = {n}"
            );
        }
    }

    #[test]
    fn stepwise_product_equals_the_closed_form() {
        for encoding in ["011001101", "111101101", "011110110"] {
            let m = VertexModel::from_encoding(encoding).unwrap();
            for n in 0..=4 {
                let closed = build_transform(&m, n).unwrap();
                let stepwise = build_transform_stepwise(&m, n).unwrap();
                assert_eq!(closed.g(), &stepwise, "matrix {encoding}, n = {n}");
            }
        }
    }

    #[test]
    fn degenerate_models_have_no_transform() {
        let m = VertexModel::new(&Gf2Matrix::identity(3)).unwrap();
        assert!(build_transform(&m, 1).is_err());
    }

    #[test]
    fn i_dual_is_a_single_unity_on_face_one() {
        let z = i_dual_column(&EdgeAddress::face1(0, 0), 2).unwrap();
        assert_eq!(z, Gf2Vector::unit(16, 0).unwrap());
        let z = i_dual_column(&EdgeAddress::face1(3, 0), 2).unwrap();
        assert_eq!(z, Gf2Vector::unit(16, 12).unwrap());
        assert!(matches!(
            i_dual_column(&EdgeAddress::new(Axis::Two, 0, 0), 2),
            Err(Error::WrongAxis { .. })
        ));
    }

    #[test]
    fn base_corner_dual_transforms_to_the_origin_ghost() {
        // the input line (all-ones, all-zeros) is the normalised first
        // corner: its ghost dual is a single unity at address (0, 0)
        for n in 1..=3 {
            let t = build_transform(&reference(), n).unwrap();
            let z = i_dual_column(&EdgeAddress::face1((1 << n) - 1, 0), n).unwrap();
            let w = t.t_dual(&z).unwrap();
            assert_eq!(w, Gf2Vector::unit(t.dim(), 0).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn transposed_model_reverses_the_ghost_rows() {
        for n in 1..=2 {
            let g = build_transform(&reference(), n).unwrap().g().clone();
            let gt = build_transform(&reference().transposed(), n)
                .unwrap()
                .g()
                .clone();
            let dim = g.rows();
            for r in 0..dim {
                assert_eq!(gt.row(r), g.row(dim - 1 - r), "n = {n}, row {r}");
            }
        }
    }

    #[test]
    fn face_one_tensor_basis_matches_published_row_formula() {
        // fourth basis vector of the face-1 system:
        // (a31*a21, a31*m12, m13*a21, m13*m12)
        let m = reference();
        let [v1, _, _] = v_bases_2x2x2(&m).unwrap();
        let a = m.matrix();
        let mi = m.minors();
        let expected = Gf2Vector::from_bits(&[
            a.get(2, 0) & a.get(1, 0),
            a.get(2, 0) & mi.get(0, 1),
            mi.get(0, 2) & a.get(1, 0),
            mi.get(0, 2) & mi.get(0, 1),
        ]);
        assert_eq!(v1.row(3), expected);
        assert_eq!(v1.row(3), Gf2Vector::from_bit_string("0100").unwrap());
    }

    #[test]
    fn transposing_reverses_the_face_one_basis_rows() {
        for a in enumerate_matrices(Some(MatrixClass::TwelveClass)) {
            let m = VertexModel::new(&a).unwrap();
            let [v1, _, _] = v_bases_2x2x2(&m).unwrap();
            let [v1t, _, _] = v_bases_2x2x2(&m.transposed()).unwrap();
            for r in 0..4 {
                assert_eq!(v1t.row(r), v1.row(3 - r), "matrix {}", m.encoding());
            }
        }
    }

    #[test]
    fn all_tensor_bases_are_invertible_for_valid_models() {
        for class in [MatrixClass::TwelveClass, MatrixClass::TwentySixClass, MatrixClass::Other] {
            for a in enumerate_matrices(Some(class)) {
                let m = VertexModel::new(&a).unwrap();
                for v in v_bases_2x2x2(&m).unwrap() {
                    assert_eq!(v.rank(), 4, "matrix {}", m.encoding());
                }
            }
        }
    }
}
