//! Bit-packed linear algebra over the two-element field.
//!
//! Vectors and matrix rows are stored as arrays of `u64` words; addition is
//! word-wise XOR. Row reduction always picks the leftmost column that still
//! has a nonzero entry and, within that column, the first candidate row, so
//! echelon forms (and every basis derived from them) are deterministic.

use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("dimension mismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// A vector in GF(2)^n of fixed length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vec {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vec {
    pub fn zeros(len: usize) -> Self {
        Gf2Vec { len, words: vec![0; words_for(len)] }
    }

    /// The standard basis vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Gf2Vec::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Gf2Vec::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Vector with ones exactly at `indices`.
    pub fn from_support(len: usize, indices: &[usize]) -> Self {
        let mut v = Gf2Vec::zeros(len);
        for &i in indices {
            v.flip(i);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of the nonzero entries, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * WORD + b);
                w &= w - 1;
            }
        }
        out
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(wi, w)| wi * WORD + w.trailing_zeros() as usize)
    }

    /// In-place addition. Panics on length mismatch.
    #[inline]
    pub fn add_assign(&mut self, other: &Gf2Vec) {
        assert_eq!(self.len, other.len, "length mismatch in Gf2Vec addition");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn add(&self, other: &Gf2Vec) -> Gf2Vec {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Standard bilinear pairing sum(a_i b_i).
    pub fn dot(&self, other: &Gf2Vec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in Gf2Vec dot product");
        let ones: u32 = self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum();
        ones % 2 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for Gf2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vec(")?;
        for b in self.iter() {
            write!(f, "{}", b as u8)?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Gf2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            write!(f, "{}", b as u8)?;
        }
        Ok(())
    }
}

/// A dense `rows x cols` matrix over GF(2), stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Gf2Matrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Gf2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Stacks the given vectors as rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Gf2Vec]) -> Result<Self, Gf2Error> {
        let mut m = Gf2Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Gf2Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Gf2Vec]) -> Result<Self, Gf2Error> {
        let mut m = Gf2Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Gf2Error::DimensionMismatch { expected: rows, found: c.len() });
            }
            for i in c.support() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / WORD];
        let mask = 1u64 << (c % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> Gf2Vec {
        Gf2Vec { len: self.cols, words: self.row_words(r).to_vec() }
    }

    pub fn row_vectors(&self) -> Vec<Gf2Vec> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn column(&self, c: usize) -> Gf2Vec {
        Gf2Vec::from_bits((0..self.rows).map(|r| self.get(r, c)))
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).support() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &Gf2Vec) -> Result<Gf2Vec, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let mut out = Gf2Vec::zeros(self.rows);
        for r in 0..self.rows {
            let ones: u32 = self.row_words(r).iter().zip(v.words()).map(|(a, b)| (a & b).count_ones()).sum();
            if ones % 2 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in self.row(r).support() {
                let src = other.row_words(k).to_vec();
                for (a, b) in out.row_words_mut(r).iter_mut().zip(&src) {
                    *a ^= b;
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Reduced row echelon form of the row space.
    pub fn echelon(&self) -> RowEchelon {
        RowEchelon::from_matrix(self)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon basis of a subspace of GF(2)^n.
///
/// Rows are sorted by pivot column; every pivot column is zero in all other
/// rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowEchelon {
    dim: usize,
    rows: Vec<Gf2Vec>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn empty(dim: usize) -> Self {
        RowEchelon { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_matrix(m: &Gf2Matrix) -> Self {
        let mut work = m.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        let stride = work.stride;
        for col in 0..work.cols {
            if rank == work.rows {
                break;
            }
            let (wi, mask) = (col / WORD, 1u64 << (col % WORD));
            let Some(p) = (rank..work.rows).find(|&r| work.data[r * stride + wi] & mask != 0) else {
                continue;
            };
            if p != rank {
                for w in 0..stride {
                    work.data.swap(p * stride + w, rank * stride + w);
                }
            }
            let pivot_row: Vec<u64> = work.row_words(rank).to_vec();
            for r in 0..work.rows {
                if r != rank && work.data[r * stride + wi] & mask != 0 {
                    for (a, b) in work.row_words_mut(r).iter_mut().zip(&pivot_row) {
                        *a ^= b;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        let rows = (0..rank).map(|r| work.row(r)).collect();
        RowEchelon { dim: m.cols, rows, pivots }
    }

    pub fn from_vectors(dim: usize, vectors: &[Gf2Vec]) -> Result<Self, Gf2Error> {
        Ok(Gf2Matrix::from_rows(dim, vectors)?.echelon())
    }

    /// Dimension of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the spanned subspace.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Gf2Vec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns that carry no pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.dim).filter(|&c| !is_pivot[c]).collect()
    }

    /// Reduces `v` modulo the subspace; the result vanishes on every pivot column.
    pub fn reduce(&self, v: &Gf2Vec) -> Gf2Vec {
        assert_eq!(v.len(), self.dim, "length mismatch in reduce");
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out.get(p) {
                out.add_assign(row);
            }
        }
        out
    }

    pub fn contains(&self, v: &Gf2Vec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds a vector to the span; returns `true` if the rank grew.
    pub fn insert(&mut self, v: &Gf2Vec) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.first_one() else {
            return false;
        };
        for row in self.rows.iter_mut() {
            if row.get(p) {
                row.add_assign(&r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    /// Coordinates of `v` with respect to the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &Gf2Vec) -> Option<Gf2Vec> {
        let mut coords = Gf2Vec::zeros(self.rank());
        let mut rest = v.clone();
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if rest.get(p) {
                rest.add_assign(row);
                coords.set(i, true);
            }
        }
        rest.is_zero().then_some(coords)
    }

    /// Span of `self` and `other`.
    pub fn sum(&self, other: &RowEchelon) -> RowEchelon {
        let mut out = self.clone();
        for v in &other.rows {
            out.insert(v);
        }
        out
    }

    /// dim(U ∩ W) = dim U + dim W - dim(U + W).
    pub fn intersection_dim(&self, other: &RowEchelon) -> usize {
        self.rank() + other.rank() - self.sum(other).rank()
    }

    pub fn to_matrix(&self) -> Gf2Matrix {
        Gf2Matrix::from_rows(self.dim, &self.rows).expect("rows share the ambient length")
    }
}

/// Dimension of the row space.
pub fn rank(m: &Gf2Matrix) -> usize {
    m.echelon().rank()
}

/// A basis of `{v : m v = 0}`, one vector per free column of the echelon form.
pub fn kernel_basis(m: &Gf2Matrix) -> Vec<Gf2Vec> {
    let ech = m.echelon();
    let free = ech.free_columns();
    free.iter()
        .map(|&f| {
            let mut v = Gf2Vec::unit(m.cols(), f);
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                if row.get(f) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// The quotient of GF(2)^n by the span of a set of relations, with a fixed
/// coordinate system given by the free columns of the relations' echelon form.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    ambient_dim: usize,
    relation_basis: Gf2Matrix,
    echelon: RowEchelon,
    free: Vec<usize>,
}

impl QuotientSpace {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn quotient_dim(&self) -> usize {
        self.free.len()
    }

    pub fn relation_basis(&self) -> &Gf2Matrix {
        &self.relation_basis
    }

    pub fn relations(&self) -> &RowEchelon {
        &self.echelon
    }

    /// Ambient indices that serve as the quotient basis.
    pub fn basis_columns(&self) -> &[usize] {
        &self.free
    }

    /// Quotient coordinates of an ambient vector.
    pub fn project(&self, v: &Gf2Vec) -> Gf2Vec {
        let r = self.echelon.reduce(v);
        Gf2Vec::from_bits(self.free.iter().map(|&c| r.get(c)))
    }

    /// Quotient coordinates of a single ambient basis vector.
    pub fn project_unit(&self, index: usize) -> Gf2Vec {
        self.project(&Gf2Vec::unit(self.ambient_dim, index))
    }

    /// The canonical lift of quotient coordinates, supported on the basis columns.
    pub fn lift(&self, coords: &Gf2Vec) -> Gf2Vec {
        assert_eq!(coords.len(), self.quotient_dim(), "length mismatch in lift");
        let mut v = Gf2Vec::zeros(self.ambient_dim);
        for i in coords.support() {
            v.set(self.free[i], true);
        }
        v
    }
}

/// Builds the quotient of GF(2)^`ambient_dim` by the span of `relations`.
pub fn build_quotient(ambient_dim: usize, relations: &[Gf2Vec]) -> Result<QuotientSpace, Gf2Error> {
    let relation_basis = Gf2Matrix::from_rows(ambient_dim, relations)?;
    let echelon = relation_basis.echelon();
    let free = echelon.free_columns();
    Ok(QuotientSpace { ambient_dim, relation_basis, echelon, free })
}
