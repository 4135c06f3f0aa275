//! Walsh (character) transforms with exact dyadic arithmetic.
//!
//! A real-valued function on `F_2^m` is stored as a table of `2^m`
//! [`Dyadic`] values; its transform is
//!
//! ```text
//! F(w) = sum_x f(x) * (-1)^(x . w),
//! ```
//!
//! computed by the usual in-place butterfly, which only ever adds and
//! subtracts — denominators never grow. Two consequences carry the whole
//! correlation engine:
//!
//! * summing `f` over the orthogonal complement of a `k`-dimensional dual
//!   space `K` needs only the `2^k` transform values on `K`
//!   ([`subspace_sum`]);
//! * the transform of a product of functions on disjoint coordinate groups
//!   is the product of the groups' transforms
//!   ([`product_factorization_check`]), which for the ghost-spin ensemble
//!   collapses `F(w)` to a product of one-bit factors ([`product_eval`]).
//!
//! # Index convention
//!
//! A vector `x = (x_1, ..., x_m)` is tabulated at index
//! `x_1 * 2^(m-1) + ... + x_m` — first coordinate most significant, the
//! same concatenation-as-number rule used for face and ghost addresses.
//! Because row and dual vectors share the map, the pairing `x . w` is the
//! popcount parity of `index(x) & index(w)`.

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::gf2::Gf2Vector;
use crate::model::VertexModel;
use crate::transform::{address_class, AddressClass, GhostAddress};

/// Cap on the transform dimension `m`; `2^24` entries is already half a
/// gigabyte of table.
pub const DEFAULT_DIM_CAP: usize = 24;

/// Table index of a vector under the module convention.
pub fn table_index(v: &Gf2Vector) -> usize {
    let mut idx = 0;
    for i in 0..v.len() {
        idx = idx << 1 | v.get(i) as usize;
    }
    idx
}

/// Inverse of [`table_index`]: the length-`dim` vector tabulated at `index`.
pub fn index_vector(dim: usize, index: usize) -> Gf2Vector {
    let bits: Vec<bool> = (0..dim).map(|i| index >> (dim - 1 - i) & 1 == 1).collect();
    Gf2Vector::from_bits(&bits)
}

/// An exact-valued function on `F_2^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanFunction {
    dim: usize,
    values: Vec<Dyadic>,
}

impl BooleanFunction {
    pub fn new(dim: usize, values: Vec<Dyadic>) -> Result<BooleanFunction> {
        if values.len() != 1 << dim {
            return Err(Error::LengthMismatch {
                op: "BooleanFunction::new",
                expected: 1 << dim,
                found: values.len(),
            });
        }
        Ok(BooleanFunction { dim, values })
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize) -> Dyadic) -> BooleanFunction {
        BooleanFunction {
            dim,
            values: (0..1usize << dim).map(f).collect(),
        }
    }

    /// The indicator of a single point.
    pub fn point_mass(dim: usize, index: usize) -> Result<BooleanFunction> {
        if index >= 1 << dim {
            return Err(Error::IndexOutOfRange {
                index,
                dim: 1 << dim,
            });
        }
        Ok(BooleanFunction::from_fn(dim, |x| {
            if x == index {
                Dyadic::ONE
            } else {
                Dyadic::ZERO
            }
        }))
    }

    /// The uniform probability distribution.
    pub fn uniform(dim: usize) -> BooleanFunction {
        BooleanFunction::from_fn(dim, |_| Dyadic::half_pow(dim as u32))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[Dyadic] {
        &self.values
    }

    pub fn value(&self, index: usize) -> Dyadic {
        self.values[index]
    }
}

/// The full table of transform values, indexed like the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourierTable {
    dim: usize,
    values: Vec<Dyadic>,
}

impl FourierTable {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[Dyadic] {
        &self.values
    }

    pub fn value(&self, index: usize) -> Dyadic {
        self.values[index]
    }

    /// Reinterprets the table as a function (e.g. to transform again).
    pub fn to_function(&self) -> BooleanFunction {
        BooleanFunction {
            dim: self.dim,
            values: self.values.clone(),
        }
    }
}

/// Full Walsh transform by the add/subtract butterfly.
pub fn fourier_full_with_cap(f: &BooleanFunction, dim_cap: usize) -> Result<FourierTable> {
    if f.dim > dim_cap {
        return Err(Error::TransformTooLarge {
            dim: f.dim,
            cap: dim_cap,
        });
    }
    let mut v = f.values.clone();
    let mut h = 1;
    while h < v.len() {
        let mut start = 0;
        while start < v.len() {
            for i in start..start + h {
                let (a, b) = (v[i], v[i + h]);
                v[i] = a + b;
                v[i + h] = a - b;
            }
            start += 2 * h;
        }
        h <<= 1;
    }
    Ok(FourierTable {
        dim: f.dim,
        values: v,
    })
}

/// [`fourier_full_with_cap`] at the default cap.
pub fn fourier_full(f: &BooleanFunction) -> Result<FourierTable> {
    fourier_full_with_cap(f, DEFAULT_DIM_CAP)
}

/// Sum of `f` over the orthogonal complement of a `k`-dimensional dual
/// space: `values` must hold the transform values on all `2^k` members of
/// the span (subset sums of the generators, the zero dual included); the
/// result is their average `sum / 2^k`.
pub fn subspace_sum(values: &[Dyadic], k: u32) -> Result<Dyadic> {
    if values.len() != 1 << k {
        return Err(Error::LengthMismatch {
            op: "subspace_sum",
            expected: 1 << k,
            found: values.len(),
        });
    }
    let total = values.iter().copied().fold(Dyadic::ZERO, |a, b| a + b);
    Ok(total.div_pow2(k))
}

/// Evaluates the ghost-ensemble transform at dual `w` as a product of
/// one-bit factors without building any table: each unity of `w` at ghost
/// address `(alpha, beta)` contributes the first-spin Fourier coefficient
/// of the matrix (class `A`) or of its transpose (class `ATranspose`).
pub fn product_eval(model: &VertexModel, n: usize, w: &Gf2Vector) -> Result<Dyadic> {
    let q_hat1 = model.distribution(false)?.q_hat1;
    let q_hat1_t = model.distribution(true)?.q_hat1;
    product_eval_cached(q_hat1, q_hat1_t, n, w)
}

/// [`product_eval`] with the two coefficients precomputed, for callers in
/// a query loop.
pub(crate) fn product_eval_cached(
    q_hat1: Dyadic,
    q_hat1_t: Dyadic,
    n: usize,
    w: &Gf2Vector,
) -> Result<Dyadic> {
    if w.len() != 1 << (2 * n) {
        return Err(Error::LengthMismatch {
            op: "product_eval",
            expected: 1 << (2 * n),
            found: w.len(),
        });
    }
    let mut acc = Dyadic::ONE;
    for j in w.iter_ones() {
        let class = address_class(GhostAddress::from_row(j, n), n)?;
        let factor = match class {
            AddressClass::A => q_hat1,
            AddressClass::ATranspose => q_hat1_t,
        };
        acc = acc * factor;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// Outcome of [`product_factorization_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationReport {
    pub pass: bool,
    pub checked: usize,
    /// Dual indices where the joint transform differed from the product
    /// of the parts' transforms.
    pub mismatches: Vec<usize>,
}

/// Verifies on concrete data that the transform of a coordinate-disjoint
/// product is the product of the transforms: builds the joint function of
/// the given parts, transforms it fully, and compares every value with the
/// product of the per-part transforms.
pub fn product_factorization_check(parts: &[BooleanFunction]) -> Result<FactorizationReport> {
    let total_dim: usize = parts.iter().map(BooleanFunction::dim).sum();
    if total_dim > DEFAULT_DIM_CAP {
        return Err(Error::TransformTooLarge {
            dim: total_dim,
            cap: DEFAULT_DIM_CAP,
        });
    }
    // joint(x) = product of parts on their own coordinate groups, most
    // significant group first
    let joint = BooleanFunction::from_fn(total_dim, |x| {
        let mut acc = Dyadic::ONE;
        let mut rest = total_dim;
        for p in parts {
            rest -= p.dim();
            acc = acc * p.value(x >> rest & ((1 << p.dim()) - 1));
        }
        acc
    });
    let joint_transform = fourier_full(&joint)?;
    let part_transforms: Vec<FourierTable> =
        parts.iter().map(fourier_full).collect::<Result<_>>()?;
    let mut mismatches = Vec::new();
    for w in 0..1usize << total_dim {
        let mut product = Dyadic::ONE;
        let mut rest = total_dim;
        for (p, t) in parts.iter().zip(&part_transforms) {
            rest -= p.dim();
            product = product * t.value(w >> rest & ((1 << p.dim()) - 1));
        }
        if product != joint_transform.value(w) {
            mismatches.push(w);
        }
    }
    Ok(FactorizationReport {
        pass: mismatches.is_empty(),
        checked: 1 << total_dim,
        mismatches,
    })
}
