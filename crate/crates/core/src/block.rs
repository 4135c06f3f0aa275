//! The composed linear operator of a cubic block of vertices.
//!
//! A block of side `N = 2^n` contains `N^3` vertices. Every vertex applies
//! the same 3x3 matrix to its three incoming spins (one per axis) and
//! passes the results on, so the whole block is one linear map from the
//! `3 * 4^n` spins entering through the three input faces to the `3 * 4^n`
//! spins leaving through the opposite faces.
//!
//! # Face coordinate convention
//!
//! This is the single place that fixes how face spins are numbered; every
//! other module goes through [`EdgeAddress`] and [`input_index`].
//!
//! An edge parallel to axis `k` is identified by the two remaining
//! coordinates of its lattice line, *in increasing axis order*:
//!
//! * axis 1 edges carry `(b2, b3)`,
//! * axis 2 edges carry `(b1, b3)`,
//! * axis 3 edges carry `(b1, b2)`.
//!
//! Within a face the pair `(hi, lo)` becomes the linear offset
//! `hi * 2^n + lo` — the concatenated binary address read as a number —
//! and the three faces are stacked in axis order, so a face-`k` spin sits
//! at global index `(k - 1) * 4^n + hi * 2^n + lo`.

use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};
use crate::model::VertexModel;
use crate::transform::v_bases_2x2x2;

/// Default cap on the block level `n`; `n = 5` already means a
/// 3072-dimensional operator. Raise it explicitly if you mean it.
pub const DEFAULT_LEVEL_CAP: usize = 5;

/// A lattice axis. Axis `k` runs along coordinate `b_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    One,
    Two,
    Three,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::One, Axis::Two, Axis::Three];

    /// 0-based position (axis 1 -> 0, ...).
    pub fn index(&self) -> usize {
        match self {
            Axis::One => 0,
            Axis::Two => 1,
            Axis::Three => 2,
        }
    }
}

/// One spin line through a face, named per the module-level convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeAddress {
    pub axis: Axis,
    /// The two perpendicular coordinates in increasing axis order.
    pub coords: (usize, usize),
}

impl EdgeAddress {
    pub fn new(axis: Axis, hi: usize, lo: usize) -> EdgeAddress {
        EdgeAddress {
            axis,
            coords: (hi, lo),
        }
    }

    /// Shorthand for the first-axis face used by correlation queries:
    /// coordinates `(b2, b3)`.
    pub fn face1(b2: usize, b3: usize) -> EdgeAddress {
        EdgeAddress::new(Axis::One, b2, b3)
    }

    /// The address of the edge through vertex `c` parallel to `axis`.
    fn through_vertex(axis: Axis, c: [usize; 3]) -> EdgeAddress {
        match axis {
            Axis::One => EdgeAddress::new(axis, c[1], c[2]),
            Axis::Two => EdgeAddress::new(axis, c[0], c[2]),
            Axis::Three => EdgeAddress::new(axis, c[0], c[1]),
        }
    }
}

/// Global input (equally: output) coordinate of an edge at level `n`.
pub fn input_index(addr: &EdgeAddress, n: usize) -> Result<usize> {
    let side = 1usize << n;
    let (hi, lo) = addr.coords;
    for c in [hi, lo] {
        if c >= side {
            return Err(Error::IndexOutOfRange {
                index: c,
                dim: side,
            });
        }
    }
    Ok(addr.axis.index() * side * side + hi * side + lo)
}

/// The composed operator of a level-`n` block.
///
/// Rows are inputs and columns are outputs: a row vector `x_in` of face
/// spins maps to `x_out = x_in * matrix`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockOperator {
    n: usize,
    matrix: Gf2Matrix,
}

impl BlockOperator {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `3 * 4^n`.
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Gf2Matrix {
        &self.matrix
    }
}

/// Walks all vertices in lexicographic coordinate order — a topological
/// order, since every predecessor of a vertex is lexicographically smaller
/// — handing each vertex its three incoming values and routing the three
/// outgoing ones. `V` is whatever flows along the edges: symbolic linear
/// forms for [`build_block`], concrete bits for [`propagate_assignment`].
/// `combine(incoming, k)` must implement the vertex rule for output `k`.
/// Returns the output-face values in [`input_index`] order.
fn propagate<V: Clone>(
    n: usize,
    mut input_value: impl FnMut(usize) -> V,
    mut combine: impl FnMut(&[V; 3], usize) -> V,
) -> Result<Vec<V>> {
    let side = 1usize << n;
    let face = side * side;
    let key = |axis: usize, c: [usize; 3]| ((axis * side + c[0]) * side + c[1]) * side + c[2];
    // pending[key(axis, c)]: value entering vertex `c` along `axis`
    let mut pending: Vec<Option<V>> = vec![None; 3 * side * face];
    for axis in Axis::ALL {
        for hi in 0..side {
            for lo in 0..side {
                let addr = EdgeAddress::new(axis, hi, lo);
                let entry = match axis {
                    Axis::One => [0, hi, lo],
                    Axis::Two => [hi, 0, lo],
                    Axis::Three => [hi, lo, 0],
                };
                pending[key(axis.index(), entry)] = Some(input_value(input_index(&addr, n)?));
            }
        }
    }
    let mut outputs: Vec<Option<V>> = vec![None; 3 * face];
    for c1 in 0..side {
        for c2 in 0..side {
            for c3 in 0..side {
                let c = [c1, c2, c3];
                let incoming: [V; 3] = [0, 1, 2].map(|axis| {
                    pending[key(axis, c)]
                        .take()
                        .expect("predecessors visited first")
                });
                for (k, axis) in Axis::ALL.into_iter().enumerate() {
                    let value = combine(&incoming, k);
                    let mut next = c;
                    next[k] += 1;
                    if next[k] == side {
                        let addr = EdgeAddress::through_vertex(axis, c);
                        outputs[input_index(&addr, n)?] = Some(value);
                    } else {
                        pending[key(k, next)] = Some(value);
                    }
                }
            }
        }
    }
    Ok(outputs
        .into_iter()
        .map(|v| v.expect("every output edge is reached"))
        .collect())
}

/// Builds the block operator at level `n`, using the transposed vertex
/// matrix when asked. Each output spin is tracked as a symbolic linear
/// form in the `3 * 4^n` input spins; the forms become the columns of the
/// operator.
pub fn build_block_with_cap(
    model: &VertexModel,
    n: usize,
    transposed: bool,
    level_cap: usize,
) -> Result<BlockOperator> {
    model.require_valid()?;
    if n > level_cap {
        return Err(Error::LevelTooLarge {
            n,
            cap: level_cap,
            dim: 3usize << (2 * n),
        });
    }
    let dim = 3usize << (2 * n);
    let a = if transposed {
        model.matrix().transpose()
    } else {
        model.matrix().clone()
    };
    let forms = propagate(
        n,
        |idx| Gf2Vector::unit(dim, idx).expect("input indices are in range"),
        |incoming, k| {
            // y_k = sum_i a_ik * x_i
            let mut acc = Gf2Vector::zeros(dim);
            for (i, x) in incoming.iter().enumerate() {
                if a.get(i, k) {
                    acc.xor_assign(x);
                }
            }
            acc
        },
    )?;
    // forms are output-indexed rows over inputs; the operator wants
    // rows = inputs, so transpose once at the end
    let matrix = Gf2Matrix::from_rows(&forms)?.transpose();
    Ok(BlockOperator { n, matrix })
}

/// [`build_block_with_cap`] at the default level cap.
pub fn build_block(model: &VertexModel, n: usize, transposed: bool) -> Result<BlockOperator> {
    build_block_with_cap(model, n, transposed, DEFAULT_LEVEL_CAP)
}

/// Pushes one concrete input assignment through the block, vertex by
/// vertex, with no symbolic bookkeeping. This is the independent evaluation
/// path used to cross-check [`build_block`]; the two share only the face
/// numbering convention.
pub fn propagate_assignment(
    model: &VertexModel,
    n: usize,
    input: &Gf2Vector,
    transposed: bool,
) -> Result<Gf2Vector> {
    model.require_valid()?;
    let dim = 3usize << (2 * n);
    if input.len() != dim {
        return Err(Error::LengthMismatch {
            op: "propagate_assignment",
            expected: dim,
            found: input.len(),
        });
    }
    let a = if transposed {
        model.matrix().transpose()
    } else {
        model.matrix().clone()
    };
    let bits = propagate(
        n,
        |idx| input.get(idx),
        |incoming, k| {
            let mut b = false;
            for (i, &x) in incoming.iter().enumerate() {
                if a.get(i, k) {
                    b ^= x;
                }
            }
            b
        },
    )?;
    Ok(Gf2Vector::from_bits(&bits))
}

/// One wrong entry found by [`verify_direct_sum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EntryMismatch {
    pub row: usize,
    pub col: usize,
    pub got: bool,
    pub expected: bool,
}

/// Outcome of the doubled-block decomposition check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectSumReport {
    pub pass: bool,
    pub mismatches: Vec<EntryMismatch>,
}

/// Checks that the `n = 1` block, rewritten in the tensor bases of the
/// three coupled two-spin systems and regrouped by basis position, splits
/// into four independent vertex copies: three governed by the matrix
/// itself and one by its transpose.
pub fn verify_direct_sum(model: &VertexModel) -> Result<DirectSumReport> {
    model.require_valid()?;
    let block = build_block(model, 1, false)?;
    let [v1, v2, v3] = v_bases_2x2x2(model)?;
    // Reorder the published tensor rows into first..fourth basis vectors:
    // face 2 lists (e2, e1, e3, e4) and face 3 lists (e3, e1, e2, e4).
    let v2 = v2.select_rows(&[1, 0, 2, 3])?;
    let v3 = v3.select_rows(&[1, 2, 0, 3])?;
    let t = Gf2Matrix::block_diag(&[&v1, &v2, &v3]);
    let conjugated = t
        .mat_mul(block.matrix())?
        .mat_mul(&t.inverse().expect("tensor bases are invertible"))?;
    // group coordinate (face i, basis slot j) -> (slot j, face i)
    let regroup = Gf2Matrix::from_fn(12, 12, |w, t| {
        let (j, i) = (w / 3, w % 3);
        t == 4 * i + j
    });
    let grouped = regroup
        .mat_mul(&conjugated)?
        .mat_mul(&regroup.transpose())?;
    let a = model.matrix();
    let at = a.transpose();
    let expected = Gf2Matrix::block_diag(&[a, a, a, &at]);
    let mut mismatches = Vec::new();
    for row in 0..12 {
        for col in 0..12 {
            let (got, want) = (grouped.get(row, col), expected.get(row, col));
            if got != want {
                mismatches.push(EntryMismatch {
                    row,
                    col,
                    got,
                    expected: want,
                });
            }
        }
    }
    Ok(DirectSumReport {
        pass: mismatches.is_empty(),
        mismatches,
    })
}
