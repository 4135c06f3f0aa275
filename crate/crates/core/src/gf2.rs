//! Dense linear algebra over the two-element field.
//!
//! Everything downstream — vertex models, block operators, spin transforms,
//! the counting oracle — reduces to row/column manipulation of 0/1 matrices,
//! so this module is the one reusable layer of the crate.
//!
//! # Packing convention
//!
//! A length-`m` vector stores coordinate `i` (0-based) in word `i / 64` at
//! bit position `i % 64`, little-endian within the word. Matrices are
//! row-major: row `r` occupies `words_per_row` consecutive words. Unused
//! tail bits are kept at zero so that equality and weight are structural.
//!
//! Coordinate order is only a storage choice here; modules that interpret a
//! vector as a binary *address* (most-significant digit first) do their own
//! index arithmetic and document it.

use crate::error::{Error, Result};
use std::fmt;

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// Iterator over the positions of set bits in a word slice.
struct Ones<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl<'a> Ones<'a> {
    fn new(words: &'a [u64]) -> Ones<'a> {
        Ones {
            words,
            word_idx: 0,
            current: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word_idx * WORD_BITS + bit)
    }
}

/// A row vector over the two-element field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Gf2Vector {
        Gf2Vector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The standard basis vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Result<Gf2Vector> {
        let mut v = Gf2Vector::zeros(len);
        v.check_index(index)?;
        v.set(index, true);
        Ok(v)
    }

    pub fn from_bits(bits: &[bool]) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of `0`/`1` characters, first coordinate first.
    pub fn from_bit_string(s: &str) -> Result<Gf2Vector> {
        let mut v = Gf2Vector::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => {
                    return Err(Error::BadEncoding {
                        input: s.to_string(),
                    })
                }
            }
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                dim: self.len,
            })
        }
    }

    pub fn get(&self, index: usize) -> bool {
        debug_assert!(index < self.len);
        self.words[index / WORD_BITS] >> (index % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, index: usize, value: bool) {
        debug_assert!(index < self.len);
        let mask = 1u64 << (index % WORD_BITS);
        if value {
            self.words[index / WORD_BITS] |= mask;
        } else {
            self.words[index / WORD_BITS] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Positions of the ones, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        Ones::new(&self.words)
    }

    /// In-place sum; panics if lengths differ (use within one ambient space).
    pub fn xor_assign(&mut self, other: &Gf2Vector) {
        assert_eq!(self.len, other.len, "xor of vectors from different spaces");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xored(&self, other: &Gf2Vector) -> Gf2Vector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product `sum_i self_i * other_i` over the field.
    pub fn dot(&self, other: &Gf2Vector) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors from different spaces");
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A dense matrix over the two-element field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Gf2Matrix {
        let words_per_row = words_for(cols);
        Gf2Matrix {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Stacks equal-length vectors as rows.
    pub fn from_rows(rows: &[Gf2Vector]) -> Result<Gf2Matrix> {
        let cols = rows.first().map_or(0, Gf2Vector::len);
        for v in rows {
            if v.len() != cols {
                return Err(Error::LengthMismatch {
                    op: "from_rows",
                    expected: cols,
                    found: v.len(),
                });
            }
        }
        let mut m = Gf2Matrix::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            m.data[r * m.words_per_row..(r + 1) * m.words_per_row].copy_from_slice(&v.words);
        }
        Ok(m)
    }

    /// Parses rows like `["11", "10"]`, one string per row.
    pub fn from_bit_strings(rows: &[&str]) -> Result<Gf2Matrix> {
        let parsed: Vec<Gf2Vector> = rows
            .iter()
            .map(|s| Gf2Vector::from_bit_string(s))
            .collect::<Result<_>>()?;
        Gf2Matrix::from_rows(&parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.words_per_row + c / WORD_BITS] >> (c % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let idx = r * self.words_per_row + c / WORD_BITS;
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    pub fn row(&self, r: usize) -> Gf2Vector {
        Gf2Vector {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn col(&self, c: usize) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    /// Positions of the ones in row `r`, ascending.
    pub fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        Ones::new(self.row_words(r))
    }

    pub fn set_row(&mut self, r: usize, v: &Gf2Vector) {
        assert_eq!(v.len(), self.cols, "row length mismatch");
        self.data[r * self.words_per_row..(r + 1) * self.words_per_row]
            .copy_from_slice(&v.words);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words_per_row;
        for i in 0..w {
            self.data.swap(a * w + i, b * w + i);
        }
    }

    fn xor_row_from(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let w = self.words_per_row;
        let (d0, s0) = (dst * w, src * w);
        if dst < src {
            let (head, tail) = self.data.split_at_mut(s0);
            for i in 0..w {
                head[d0 + i] ^= tail[i];
            }
        } else {
            let (head, tail) = self.data.split_at_mut(d0);
            for i in 0..w {
                tail[i] ^= head[s0 + i];
            }
        }
    }

    fn shape_err(&self, other: &Gf2Matrix, op: &'static str) -> Error {
        Error::ShapeMismatch {
            op,
            lhs_rows: self.rows,
            lhs_cols: self.cols,
            rhs_rows: other.rows,
            rhs_cols: other.cols,
        }
    }

    /// Entrywise sum.
    pub fn xor(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(self.shape_err(other, "xor"));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        Ok(out)
    }

    /// Matrix product `self * other`.
    pub fn mat_mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.cols != other.rows {
            return Err(self.shape_err(other, "mat_mul"));
        }
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        let w = out.words_per_row;
        for r in 0..self.rows {
            for j in Ones::new(self.row_words(r)) {
                let src = other.row_words(j);
                let dst = &mut out.data[r * w..(r + 1) * w];
                for i in 0..w {
                    dst[i] ^= src[i];
                }
            }
        }
        Ok(out)
    }

    /// Kronecker (tensor) product; `self`'s indices are the most significant.
    pub fn kron(&self, other: &Gf2Matrix) -> Gf2Matrix {
        let mut out = Gf2Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for ra in 0..self.rows {
            for ca in Ones::new(self.row_words(ra)) {
                for rb in 0..other.rows {
                    for cb in Ones::new(other.row_words(rb)) {
                        out.set(ra * other.rows + rb, ca * other.cols + cb, true);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut out = Gf2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in Ones::new(self.row_words(r)) {
                out.set(c, r, true);
            }
        }
        out
    }

    /// New matrix whose row `i` is row `indices[i]` of `self`.
    pub fn select_rows(&self, indices: &[usize]) -> Result<Gf2Matrix> {
        let mut out = Gf2Matrix::zeros(indices.len(), self.cols);
        for (i, &r) in indices.iter().enumerate() {
            if r >= self.rows {
                return Err(Error::IndexOutOfRange {
                    index: r,
                    dim: self.rows,
                });
            }
            out.data[i * out.words_per_row..(i + 1) * out.words_per_row]
                .copy_from_slice(self.row_words(r));
        }
        Ok(out)
    }

    /// Block-diagonal stack of square or rectangular blocks.
    pub fn block_diag(blocks: &[&Gf2Matrix]) -> Gf2Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Gf2Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in Ones::new(b.row_words(r)) {
                    out.set(r0 + r, c0 + c, true);
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// In-place reduction to reduced row-echelon form. Returns the pivot
    /// columns; if `tracker` is given, the same row operations are applied to
    /// it (pass the identity to recover the transformation matrix).
    fn reduce(&mut self, mut tracker: Option<&mut Gf2Matrix>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for c in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(src) = (pivot_row..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.swap_rows(pivot_row, src);
            if let Some(t) = tracker.as_deref_mut() {
                t.swap_rows(pivot_row, src);
            }
            for r in 0..self.rows {
                if r != pivot_row && self.get(r, c) {
                    self.xor_row_from(r, pivot_row);
                    if let Some(t) = tracker.as_deref_mut() {
                        t.xor_row_from(r, pivot_row);
                    }
                }
            }
            pivots.push(c);
            pivot_row += 1;
        }
        pivots
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (Gf2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.reduce(None);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.clone().reduce(None).len()
    }

    /// Inverse over the field; `Err(Singular)` when the rank is deficient,
    /// `Err(NotSquare)` when the shape alone rules an inverse out.
    pub fn inverse(&self) -> Result<Gf2Matrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                op: "inverse",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut m = self.clone();
        let mut t = Gf2Matrix::identity(self.rows);
        let pivots = m.reduce(Some(&mut t));
        if pivots.len() < self.rows {
            return Err(Error::Singular);
        }
        Ok(t)
    }

    /// Basis of `{x : x * self = 0}` as a canonical subspace of row vectors.
    pub fn left_kernel(&self) -> Subspace {
        let mut m = self.clone();
        let mut t = Gf2Matrix::identity(self.rows);
        let rank = m.reduce(Some(&mut t)).len();
        // rows of the tracker opposite the zero rows of the reduction
        let kernel_rows: Vec<Gf2Vector> = (rank..self.rows).map(|r| t.row(r)).collect();
        Subspace::from_generators(self.rows, &kernel_rows)
            .expect("kernel rows live in the row space by construction")
    }

    /// Basis of the fixed space `{x : x * self = x}`, i.e. the left kernel
    /// of `self + identity`.
    pub fn fixed_space(&self) -> Result<Subspace> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                op: "fixed_space",
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self
            .xor(&Gf2Matrix::identity(self.rows))
            .expect("shapes checked above")
            .left_kernel())
    }
}

impl fmt::Display for Gf2Matrix {
    /// One 0/1 string per row, newline-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("\n")?;
            }
            for c in 0..self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

/// Row vector times matrix: `x * m`.
pub fn row_action(x: &Gf2Vector, m: &Gf2Matrix) -> Result<Gf2Vector> {
    if x.len() != m.rows {
        return Err(Error::LengthMismatch {
            op: "row_action",
            expected: m.rows,
            found: x.len(),
        });
    }
    let mut out = Gf2Vector::zeros(m.cols);
    for i in x.iter_ones() {
        for (o, s) in out.words.iter_mut().zip(m.row_words(i)) {
            *o ^= s;
        }
    }
    Ok(out)
}

/// Matrix times column vector: `m * w`, returned as a plain vector.
pub fn col_action(m: &Gf2Matrix, w: &Gf2Vector) -> Result<Gf2Vector> {
    if w.len() != m.cols {
        return Err(Error::LengthMismatch {
            op: "col_action",
            expected: m.cols,
            found: w.len(),
        });
    }
    let mut out = Gf2Vector::zeros(m.rows);
    for r in 0..m.rows {
        let mut acc = 0u64;
        for (a, b) in m.row_words(r).iter().zip(&w.words) {
            acc ^= a & b;
        }
        if acc.count_ones() % 2 == 1 {
            out.set(r, true);
        }
    }
    Ok(out)
}

/// A linear subspace of row vectors, held as a reduced row-echelon basis.
///
/// The reduced basis is a canonical form, so two `Subspace` values are `==`
/// exactly when they describe the same subspace, regardless of the
/// generators they were built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Gf2Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the given vectors inside `F_2^ambient`.
    pub fn from_generators(ambient: usize, generators: &[Gf2Vector]) -> Result<Subspace> {
        for g in generators {
            if g.len() != ambient {
                return Err(Error::LengthMismatch {
                    op: "from_generators",
                    expected: ambient,
                    found: g.len(),
                });
            }
        }
        let stacked = Gf2Matrix::from_rows(generators)?;
        Ok(Subspace::from_row_space(ambient, &stacked))
    }

    /// Span of the rows of `m` inside `F_2^ambient` (`ambient == m.cols()`).
    fn from_row_space(ambient: usize, m: &Gf2Matrix) -> Subspace {
        let (red, pivots) = m.rref();
        let basis = red
            .select_rows(&(0..pivots.len()).collect::<Vec<_>>())
            .expect("pivot rows exist");
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    /// The whole space `F_2^ambient`.
    pub fn full(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Gf2Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The canonical basis, one vector per row.
    pub fn basis(&self) -> &Gf2Matrix {
        &self.basis
    }

    pub fn contains(&self, v: &Gf2Vector) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::LengthMismatch {
                op: "contains",
                expected: self.ambient,
                found: v.len(),
            });
        }
        let mut rem = v.clone();
        for (i, &p) in self.pivots.iter().enumerate() {
            if rem.get(p) {
                rem.xor_assign(&self.basis.row(i));
            }
        }
        Ok(rem.is_zero())
    }

    /// Dimension of the subspace of members vanishing on every listed
    /// coordinate: `dim {x in S : x_c = 0 for all c in coords}`.
    pub fn dim_vanishing_on(&self, coords: &[usize]) -> Result<usize> {
        for &c in coords {
            if c >= self.ambient {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    dim: self.ambient,
                });
            }
        }
        // restriction of the basis to the constrained coordinates
        let restricted = Gf2Matrix::from_fn(self.dim(), coords.len(), |r, j| {
            self.basis.get(r, coords[j])
        });
        Ok(self.dim() - restricted.rank())
    }

    /// All `2^dim` members. Only sensible for small spaces; panics above 32
    /// basis vectors.
    pub fn elements(&self) -> impl Iterator<Item = Gf2Vector> + '_ {
        assert!(self.dim() <= 32, "subspace too large to enumerate");
        (0u64..1 << self.dim()).map(move |mask| {
            let mut v = Gf2Vector::zeros(self.ambient);
            for i in 0..self.dim() {
                if mask >> i & 1 == 1 {
                    v.xor_assign(&self.basis.row(i));
                }
            }
            v
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> Gf2Matrix {
        Gf2Matrix::from_bit_strings(rows).unwrap()
    }

    fn v(s: &str) -> Gf2Vector {
        Gf2Vector::from_bit_string(s).unwrap()
    }

    #[test]
    fn mat_mul_inverts_a_two_by_two() {
        // (11|10) and (01|11) are mutually inverse
        let a = m(&["11", "10"]);
        let b = m(&["01", "11"]);
        assert_eq!(a.mat_mul(&b).unwrap(), Gf2Matrix::identity(2));
        assert_eq!(b.mat_mul(&a).unwrap(), Gf2Matrix::identity(2));
    }

    #[test]
    fn mat_mul_rejects_bad_shapes() {
        let a = Gf2Matrix::zeros(2, 3);
        let b = Gf2Matrix::zeros(2, 3);
        assert!(matches!(
            a.mat_mul(&b),
            Err(Error::ShapeMismatch { op: "mat_mul", .. })
        ));
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = Gf2Matrix::identity(2);
        assert_eq!(i2.kron(&i2), Gf2Matrix::identity(4));
    }

    #[test]
    fn kron_places_left_factor_in_high_position() {
        let a = m(&["10", "01"]);
        let b = m(&["11", "01"]);
        let k = a.kron(&b);
        // row (ra, rb) = ra * 2 + rb, same for columns
        assert_eq!(k, m(&["1100", "0100", "0011", "0001"]));
    }

    #[test]
    fn transpose_is_an_involution() {
        let a = m(&["011", "001", "101"]);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose(), m(&["001", "100", "111"]));
    }

    #[test]
    fn row_action_with_unit_vector_picks_a_row() {
        let a = m(&["011", "001", "101"]);
        let e1 = Gf2Vector::unit(3, 1).unwrap();
        assert_eq!(row_action(&e1, &a).unwrap(), v("001"));
        // sum of rows 0 and 2
        assert_eq!(row_action(&v("101"), &a).unwrap(), v("110"));
    }

    #[test]
    fn col_action_computes_parities() {
        let a = m(&["011", "001", "101"]);
        assert_eq!(col_action(&a, &v("111")).unwrap(), v("010"));
        assert_eq!(col_action(&a, &v("000")).unwrap(), v("000"));
        assert!(col_action(&a, &v("10")).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(m(&["011", "001", "101"]).rank(), 3);
        assert_eq!(m(&["11", "11"]).rank(), 1);
        assert_eq!(Gf2Matrix::zeros(3, 4).rank(), 0);
        assert_eq!(Gf2Matrix::identity(5).rank(), 5);
    }

    #[test]
    fn inverse_round_trips() {
        let a = m(&["011", "001", "101"]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mat_mul(&inv).unwrap(), Gf2Matrix::identity(3));
        assert_eq!(inv.mat_mul(&a).unwrap(), Gf2Matrix::identity(3));
        // (11|01) is an involution
        let g = m(&["11", "01"]);
        assert_eq!(g.inverse().unwrap(), g);
    }

    #[test]
    fn inverse_errors_distinguish_shape_from_singularity() {
        assert!(matches!(
            Gf2Matrix::zeros(2, 3).inverse(),
            Err(Error::NotSquare { .. })
        ));
        assert!(matches!(m(&["11", "11"]).inverse(), Err(Error::Singular)));
    }

    #[test]
    fn fixed_space_of_identity_is_everything() {
        let s = Gf2Matrix::identity(3).fixed_space().unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!(s, Subspace::full(3));
    }

    #[test]
    fn fixed_space_matches_hand_computed_eigenvectors() {
        let a = m(&["011", "001", "101"]);
        let s = a.fixed_space().unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&v("111")).unwrap());
        let st = a.transpose().fixed_space().unwrap();
        assert_eq!(st.dim(), 1);
        assert!(st.contains(&v("011")).unwrap());
    }

    #[test]
    fn fixed_space_members_are_exactly_the_fixed_vectors() {
        let a = m(&["011", "001", "101"]);
        let s = a.fixed_space().unwrap();
        for bits in 0u32..8 {
            let x = Gf2Vector::from_bits(&[bits & 4 != 0, bits & 2 != 0, bits & 1 != 0]);
            let fixed = row_action(&x, &a).unwrap() == x;
            assert_eq!(s.contains(&x).unwrap(), fixed, "vector {x}");
        }
    }

    #[test]
    fn left_kernel_annihilates() {
        let a = m(&["11", "11", "00"]);
        let k = a.left_kernel();
        assert_eq!(k.dim(), 2);
        for x in k.elements() {
            assert!(row_action(&x, &a).unwrap().is_zero());
        }
    }

    #[test]
    fn subspace_equality_ignores_generator_presentation() {
        let s1 = Subspace::from_generators(3, &[v("110"), v("011")]).unwrap();
        let s2 = Subspace::from_generators(3, &[v("101"), v("011"), v("110")]).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(s1.dim(), 2);
        assert_ne!(s1, Subspace::full(3));
    }

    #[test]
    fn membership_follows_span() {
        let s = Subspace::from_generators(4, &[v("1100"), v("0011")]).unwrap();
        assert!(s.contains(&v("1111")).unwrap());
        assert!(s.contains(&v("0000")).unwrap());
        assert!(!s.contains(&v("1000")).unwrap());
        assert!(s.contains(&v("111")).is_err());
    }

    #[test]
    fn vanishing_dimension_examples() {
        // span{(1,1,1)}: forcing the first coordinate to zero kills it
        let s = Subspace::from_generators(3, &[v("111")]).unwrap();
        assert_eq!(s.dim_vanishing_on(&[0]).unwrap(), 0);
        // span{(0,1,1)}: the first coordinate is already zero
        let st = Subspace::from_generators(3, &[v("011")]).unwrap();
        assert_eq!(st.dim_vanishing_on(&[0]).unwrap(), 1);
        // full space with two coordinates pinned
        assert_eq!(Subspace::full(3).dim_vanishing_on(&[0, 1]).unwrap(), 1);
        assert!(Subspace::full(3).dim_vanishing_on(&[3]).is_err());
    }

    #[test]
    fn elements_enumerates_the_whole_space() {
        let s = Subspace::from_generators(3, &[v("110"), v("011")]).unwrap();
        let all: Vec<Gf2Vector> = s.elements().collect();
        assert_eq!(all.len(), 4);
        for x in &all {
            assert!(s.contains(x).unwrap());
        }
        // distinct
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                assert_ne!(all[i], all[j]);
            }
        }
    }

    #[test]
    fn unit_vector_bounds_are_checked() {
        assert!(Gf2Vector::unit(4, 3).is_ok());
        assert!(matches!(
            Gf2Vector::unit(4, 4),
            Err(Error::IndexOutOfRange { index: 4, dim: 4 })
        ));
    }

    #[test]
    fn packing_survives_word_boundaries() {
        let mut x = Gf2Vector::zeros(130);
        x.set(0, true);
        x.set(63, true);
        x.set(64, true);
        x.set(129, true);
        assert_eq!(x.weight(), 4);
        assert_eq!(x.iter_ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        let m = Gf2Matrix::from_rows(&[x.clone(), Gf2Vector::zeros(130)]).unwrap();
        assert_eq!(m.row(0), x);
        assert_eq!(m.rank(), 1);
    }
}
