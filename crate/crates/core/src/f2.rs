//! Dense linear algebra over GF(2) on word-packed bit rows.
//!
//! Matrices act on row vectors: `x^T M` is the image of `x`.  The row index of
//! a matrix therefore enumerates a source basis and the column index a target
//! basis.

use std::fmt;

const W: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(W)
}

/// A bit vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vec {
    len: usize,
    words: Vec<u64>,
}

impl F2Vec {
    pub fn zeros(len: usize) -> Self {
        F2Vec { len, words: vec![0; words_for(len)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Parses a string of `0`/`1` characters, index 0 first.
    pub fn from_bits(s: &str) -> Self {
        let bits: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut v = Self::zeros(bits.len());
        for (i, c) in bits.iter().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => panic!("invalid bit character {c:?}"),
            }
        }
        v
    }

    pub fn from_words(len: usize, words: Vec<u64>) -> Self {
        assert_eq!(words.len(), words_for(len));
        let mut v = F2Vec { len, words };
        v.mask_tail();
        v
    }

    fn mask_tail(&mut self) {
        let r = self.len % W;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
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
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / W] >> (i % W)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        let m = 1u64 << (i % W);
        if b {
            self.words[i / W] |= m;
        } else {
            self.words[i / W] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / W] ^= 1u64 << (i % W);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &F2Vec) {
        debug_assert_eq!(self.len, other.len);
        xor_words(&mut self.words, &other.words);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        first_one(&self.words)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * W + b)
                }
            })
        })
    }

    pub fn dot(&self, other: &F2Vec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones();
        }
        acc & 1 == 1
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &F2Vec) -> F2Vec {
        let mut v = F2Vec::zeros(self.len + other.len);
        for i in self.iter_ones() {
            v.set(i, true);
        }
        for i in other.iter_ones() {
            v.set(self.len + i, true);
        }
        v
    }

    /// The sub-vector on `start..start+len`.
    pub fn slice(&self, start: usize, len: usize) -> F2Vec {
        let mut v = F2Vec::zeros(len);
        for i in self.iter_ones() {
            if i >= start && i < start + len {
                v.set(i - start, true);
            }
        }
        v
    }

    pub fn to_bits(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vec[{}]", self.to_bits())
    }
}

#[inline]
fn xor_words(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

#[inline]
fn first_one(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * W + w.trailing_zeros() as usize)
}

/// A dense GF(2) matrix stored row-major with word-aligned rows.
#[derive(Clone, PartialEq, Eq)]
pub struct F2Mat {
    nrows: usize,
    ncols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl fmt::Debug for F2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Mat {}x{}", self.nrows, self.ncols)?;
        for r in 0..self.nrows {
            writeln!(f, "  {}", self.row(r).to_bits())?;
        }
        Ok(())
    }
}

impl F2Mat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        let stride = words_for(ncols);
        F2Mat { nrows, ncols, stride, data: vec![0; nrows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[F2Vec], ncols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), ncols);
        for (r, v) in rows.iter().enumerate() {
            assert_eq!(v.len(), ncols, "row length mismatch");
            m.row_words_mut(r).copy_from_slice(v.words());
        }
        m
    }

    /// Builds a matrix from `0`/`1` strings, one per row.
    pub fn from_bit_rows(rows: &[&str]) -> Self {
        let vs: Vec<F2Vec> = rows.iter().map(|s| F2Vec::from_bits(s)).collect();
        let ncols = vs.first().map_or(0, |v| v.len());
        Self::from_rows(&vs, ncols)
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> F2Vec {
        F2Vec { len: self.ncols, words: self.row_words(r).to_vec() }
    }

    pub fn rows(&self) -> Vec<F2Vec> {
        (0..self.nrows).map(|r| self.row(r)).collect()
    }

    pub fn set_row(&mut self, r: usize, v: &F2Vec) {
        assert_eq!(v.len(), self.ncols);
        self.row_words_mut(r).copy_from_slice(v.words());
    }

    pub fn push_row(&mut self, v: &F2Vec) {
        assert_eq!(v.len(), self.ncols);
        self.data.extend_from_slice(v.words());
        self.nrows += 1;
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r * self.stride + c / W] >> (c % W)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, b: bool) {
        let m = 1u64 << (c % W);
        let w = &mut self.data[r * self.stride + c / W];
        if b {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.stride + c / W] ^= 1u64 << (c % W);
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        xor_words(b, a);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        let (x, y) = if a < b { (a, b) } else { (b, a) };
        let (lo, hi) = self.data.split_at_mut(y * s);
        lo[x * s..(x + 1) * s].swap_with_slice(&mut hi[..s]);
    }

    pub fn transpose(&self) -> F2Mat {
        let mut t = F2Mat::zeros(self.ncols, self.nrows);
        for r in 0..self.nrows {
            let words = self.row_words(r);
            for (wi, &w) in words.iter().enumerate() {
                let mut w = w;
                while w != 0 {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    t.set(wi * W + b, r, true);
                }
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &F2Mat) -> F2Mat {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        let mut out = F2Mat::zeros(self.nrows, other.ncols);
        for r in 0..self.nrows {
            let (src, dst) = (self.row_words(r).to_vec(), r);
            for (wi, &w) in src.iter().enumerate() {
                let mut w = w;
                while w != 0 {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    let k = wi * W + b;
                    let s = other.stride;
                    let orow = &other.data[k * s..(k + 1) * s];
                    let o = out.stride;
                    xor_words(&mut out.data[dst * o..(dst + 1) * o], orow);
                }
            }
        }
        out
    }

    /// Row vector times matrix: `x^T * self`.
    pub fn vec_mul(&self, x: &F2Vec) -> F2Vec {
        assert_eq!(x.len(), self.nrows);
        let mut out = F2Vec::zeros(self.ncols);
        for i in x.iter_ones() {
            xor_words(&mut out.words, self.row_words(i));
        }
        out
    }

    pub fn add(&self, other: &F2Mat) -> F2Mat {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut out = self.clone();
        xor_words(&mut out.data, &other.data);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Stacks `self` over `other`.
    pub fn vstack(&self, other: &F2Mat) -> F2Mat {
        assert_eq!(self.ncols, other.ncols);
        let mut out = self.clone();
        out.data.extend_from_slice(&other.data);
        out.nrows += other.nrows;
        out
    }

    /// Reduced row echelon form in place; returns pivot columns in row order.
    ///
    /// Columns are scanned left to right; the pivot for a column is the first
    /// remaining row with a one there.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == self.nrows {
                break;
            }
            let wi = c / W;
            let bit = 1u64 << (c % W);
            let Some(p) = (r..self.nrows).find(|&i| self.data[i * self.stride + wi] & bit != 0) else {
                continue;
            };
            self.swap_rows(p, r);
            for i in 0..self.nrows {
                if i != r && self.data[i * self.stride + wi] & bit != 0 {
                    self.xor_row_into(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (F2Mat, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.ncols);
        for r in 0..self.nrows {
            e.insert(self.row(r));
        }
        e.rank()
    }

    /// Basis of `{x : M x^T = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<F2Vec> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut x = F2Vec::unit(self.ncols, f);
            for (row, &p) in pivots.iter().enumerate() {
                if r.get(row, f) {
                    x.set(p, true);
                }
            }
            out.push(x);
        }
        out
    }

    /// Basis of `{x : x^T M = 0}`.
    pub fn left_kernel_basis(&self) -> Vec<F2Vec> {
        self.transpose().kernel_basis()
    }

    /// Some `x` with `x^T M = b`, if one exists.
    pub fn solve(&self, b: &F2Vec) -> Option<F2Vec> {
        assert_eq!(b.len(), self.ncols, "right-hand side has wrong length");
        let mut e = TrackedEchelon::new(self.ncols, self.nrows);
        for r in 0..self.nrows {
            e.insert(self.row(r), F2Vec::unit(self.nrows, r));
        }
        e.express(b)
    }
}

/// Incremental row echelon structure for membership tests and reduction.
///
/// Each stored row has a distinct pivot (its lowest set bit at insertion time)
/// and is zero in the pivot columns of all rows stored before it.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<F2Vec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[F2Vec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduce(&self, v: &mut F2Vec) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    }

    pub fn contains(&self, v: &F2Vec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: F2Vec) -> bool {
        assert_eq!(v.len(), self.ncols);
        self.reduce(&mut v);
        match v.first_one() {
            Some(p) => {
                self.rows.push(v);
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }
}

/// An echelon structure that remembers how each row was combined from the
/// inserted vectors, so membership comes with coordinates.
#[derive(Clone, Debug)]
pub struct TrackedEchelon {
    inner: Echelon,
    tags: Vec<F2Vec>,
    tag_len: usize,
}

impl TrackedEchelon {
    pub fn new(ncols: usize, tag_len: usize) -> Self {
        TrackedEchelon { inner: Echelon::new(ncols), tags: Vec::new(), tag_len }
    }

    pub fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// Inserts `v` carrying `tag`; returns the residual tag when `v` was
    /// already in the span (a dependency), `None` when the rank grew.
    pub fn insert(&mut self, mut v: F2Vec, mut tag: F2Vec) -> Option<F2Vec> {
        assert_eq!(tag.len(), self.tag_len);
        for ((row, &p), t) in self.inner.rows.iter().zip(&self.inner.pivots).zip(&self.tags) {
            if v.get(p) {
                v.xor_assign(row);
                tag.xor_assign(t);
            }
        }
        match v.first_one() {
            Some(p) => {
                self.inner.rows.push(v);
                self.inner.pivots.push(p);
                self.tags.push(tag);
                None
            }
            None => Some(tag),
        }
    }

    /// Coordinates of `v` with respect to the inserted vectors, if in the span.
    pub fn express(&self, v: &F2Vec) -> Option<F2Vec> {
        let mut v = v.clone();
        let mut tag = F2Vec::zeros(self.tag_len);
        for ((row, &p), t) in self.inner.rows.iter().zip(&self.inner.pivots).zip(&self.tags) {
            if v.get(p) {
                v.xor_assign(row);
                tag.xor_assign(t);
            }
        }
        v.is_zero().then_some(tag)
    }
}

/// Coordinates of vectors in a fixed basis of a subspace.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    basis: Vec<F2Vec>,
    ech: TrackedEchelon,
}

impl SubspaceBasis {
    /// `basis` must be linearly independent.
    pub fn new(basis: Vec<F2Vec>, ambient: usize) -> Self {
        let mut ech = TrackedEchelon::new(ambient, basis.len());
        for (i, b) in basis.iter().enumerate() {
            let dep = ech.insert(b.clone(), F2Vec::unit(basis.len(), i));
            assert!(dep.is_none(), "basis vectors are dependent");
        }
        SubspaceBasis { basis, ech }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[F2Vec] {
        &self.basis
    }

    pub fn coords(&self, v: &F2Vec) -> Option<F2Vec> {
        self.ech.express(v)
    }

    pub fn combine(&self, coords: &F2Vec, ambient: usize) -> F2Vec {
        let mut v = F2Vec::zeros(ambient);
        for i in coords.iter_ones() {
            v.xor_assign(&self.basis[i]);
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_pivots_of_small_matrix() {
        let m = F2Mat::from_bit_rows(&["110", "011", "101"]);
        let (_, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_of_all_ones_row() {
        let m = F2Mat::from_bit_rows(&["111"]);
        let k = m.kernel_basis();
        let got: Vec<String> = k.iter().map(|v| v.to_bits()).collect();
        assert_eq!(got, vec!["110", "101"]);
        let span: Vec<String> = {
            let mut e = Echelon::new(3);
            for v in &k {
                e.insert(v.clone());
            }
            ["110", "011"].iter().filter(|s| e.contains(&F2Vec::from_bits(s))).map(|s| s.to_string()).collect()
        };
        assert_eq!(span.len(), 2);
    }

    #[test]
    fn solve_reports_absence() {
        let m = F2Mat::from_bit_rows(&["110", "011"]);
        assert!(m.solve(&F2Vec::from_bits("111")).is_none());
        let x = m.solve(&F2Vec::from_bits("101")).unwrap();
        assert_eq!(m.vec_mul(&x).to_bits(), "101");
    }

    #[test]
    fn transpose_roundtrip() {
        let m = F2Mat::from_bit_rows(&["1101", "0010", "1000"]);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.transpose().nrows(), 4);
    }
}
