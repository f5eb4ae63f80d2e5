//! Finite-dimensional graded quotients `A = F2[w_2..w_k] / J`.
//!
//! `A` is built one degree at a time.  In degree `d`, `A_d` is the cokernel of
//! the commutation relations `w_i (w_j c) = w_j (w_i c)` together with the new
//! generators of `J`, inside `V_d = sum_i A_{d-i}`.  This only touches spaces of
//! the size of `A`, never full slices of the polynomial ring.
//!
//! Every basis element is named by a monomial `w_i * name(b)` whose class it
//! is, and records that parent, so names are closed under the recorded parent.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::f2::{F2Mat, F2Vec};
use crate::poly::{Mono, Poly2};

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    k: usize,
    dims: Vec<usize>,
    names: Vec<Vec<Mono>>,
    parents: Vec<Vec<(usize, usize)>>,
    /// `mult[d][i]`: `A_{d-i} -> A_d`, multiplication by `w_i` (empty for `i < 2`).
    mult: Vec<Vec<F2Mat>>,
    order: ColumnOrder,
}

/// Which coordinates of `V_d` are preferred as basis names.  Either choice
/// yields the same algebra; only names and coordinates change.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ColumnOrder {
    /// Standard monomials for the graded lex order.
    #[default]
    Standard,
    /// Columns taken in the opposite order.
    Reversed,
}

/// Why a build stopped early.
#[derive(Debug)]
pub enum BuildStop {
    /// The Hilbert function left the prescribed series at this degree.
    Mismatch(usize),
    /// Not finite within the degree bound.
    Unbounded(usize),
}

impl GradedAlgebra {
    /// Builds `W2 / (gens)` for homogeneous `gens`.
    ///
    /// `expected`, when given, is checked degree by degree and the build stops
    /// at the first disagreement.  `max_degree` bounds the search for the top.
    pub fn build(
        k: usize,
        gens: &[Poly2],
        expected: Option<&dyn Fn(usize) -> i64>,
        max_degree: usize,
    ) -> std::result::Result<GradedAlgebra, BuildStop> {
        Self::build_inner(k, gens, expected, max_degree, true, ColumnOrder::Standard)
    }

    /// `build` with an explicit column order.
    pub fn build_ordered(
        k: usize,
        gens: &[Poly2],
        max_degree: usize,
        order: ColumnOrder,
    ) -> std::result::Result<GradedAlgebra, BuildStop> {
        Self::build_inner(k, gens, None, max_degree, true, order)
    }

    /// Builds degrees `0..=degree` of `W2 / (gens)`, finite or not.
    pub fn build_truncated(k: usize, gens: &[Poly2], degree: usize) -> GradedAlgebra {
        Self::build_inner(k, gens, None, degree, false, ColumnOrder::Standard).expect("truncated build cannot fail")
    }

    fn build_inner(
        k: usize,
        gens: &[Poly2],
        expected: Option<&dyn Fn(usize) -> i64>,
        max_degree: usize,
        finite: bool,
        order: ColumnOrder,
    ) -> std::result::Result<GradedAlgebra, BuildStop> {
        let mut by_degree: HashMap<usize, Vec<&Poly2>> = HashMap::new();
        let mut top_gen = 0;
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let d = g.homogeneous_degree().expect("generators must be homogeneous");
            assert!(d > 0, "unit generator");
            by_degree.entry(d).or_default().push(g);
            top_gen = top_gen.max(d);
        }
        let mut a = GradedAlgebra {
            k,
            dims: vec![1],
            names: vec![vec![Mono::ONE]],
            parents: vec![vec![(0, 0)]],
            mult: vec![vec![F2Mat::zeros(0, 1); k + 1]],
            order,
        };
        if let Some(e) = expected {
            if e(0) != 1 {
                return Err(BuildStop::Mismatch(0));
            }
        }
        let mut zeros_run = 0;
        let mut d = 0;
        loop {
            d += 1;
            if d > max_degree {
                if finite {
                    return Err(BuildStop::Unbounded(max_degree));
                }
                return Ok(a);
            }
            let empty = Vec::new();
            a.push_degree(d, by_degree.get(&d).unwrap_or(&empty));
            if let Some(e) = expected {
                if e(d) != a.dims[d] as i64 {
                    return Err(BuildStop::Mismatch(d));
                }
            }
            zeros_run = if a.dims[d] == 0 { zeros_run + 1 } else { 0 };
            if finite && zeros_run >= k - 1 && d >= top_gen {
                break;
            }
        }
        while a.dims.len() > 1 && *a.dims.last().unwrap() == 0 {
            a.dims.pop();
            a.names.pop();
            a.parents.pop();
            a.mult.pop();
        }
        Ok(a)
    }

    fn push_degree(&mut self, d: usize, gens: &[&Poly2]) {
        let k = self.k;
        // coordinates of V_d: (i, b) with b a basis index of A_{d-i}
        let mut coords: Vec<(Mono, usize, usize)> = Vec::new();
        for i in 2..=k.min(d) {
            for (b, m) in self.names[d - i].iter().enumerate() {
                coords.push((m.mul_var(i), i, b));
            }
        }
        coords.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        if self.order == ColumnOrder::Reversed {
            coords.reverse();
        }
        let width = coords.len();
        let mut pos: HashMap<(usize, usize), usize> = HashMap::with_capacity(width);
        for (c, &(_, i, b)) in coords.iter().enumerate() {
            pos.insert((i, b), c);
        }
        let embed = |i: usize, v: &F2Vec, out: &mut F2Vec| {
            for b in v.iter_ones() {
                out.flip(pos[&(i, b)]);
            }
        };
        let mut rel = F2Mat::zeros(0, width);
        for i in 2..=k {
            for j in (i + 1)..=k {
                if i + j > d {
                    continue;
                }
                let c_deg = d - i - j;
                let mj = &self.mult[d - i][j];
                let mi = &self.mult[d - j][i];
                for c in 0..self.dims[c_deg] {
                    let mut row = F2Vec::zeros(width);
                    embed(i, &mj.row(c), &mut row);
                    embed(j, &mi.row(c), &mut row);
                    if !row.is_zero() {
                        rel.push_row(&row);
                    }
                }
            }
        }
        for g in gens {
            let mut row = F2Vec::zeros(width);
            for m in g.terms() {
                let i = m.min_var().expect("nonconstant monomial");
                let rest = m.div_var(i).unwrap();
                let nf = self.normal_form_mono(&rest);
                embed(i, &nf, &mut row);
            }
            rel.push_row(&row);
        }
        let pivots = rel.rref_in_place();
        let mut is_pivot = vec![false; width];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..width).filter(|&c| !is_pivot[c]).collect();
        let mut free_index = vec![usize::MAX; width];
        for (n, &c) in free.iter().enumerate() {
            free_index[c] = n;
        }
        let dim = free.len();
        let names: Vec<Mono> = free.iter().map(|&c| coords[c].0).collect();
        let parents: Vec<(usize, usize)> = free.iter().map(|&c| (coords[c].1, coords[c].2)).collect();
        let mut pivot_row = vec![usize::MAX; width];
        for (r, &p) in pivots.iter().enumerate() {
            pivot_row[p] = r;
        }
        let mut mult = vec![F2Mat::zeros(0, dim); k + 1];
        for i in 2..=k.min(d) {
            let src = self.dims[d - i];
            let mut m = F2Mat::zeros(src, dim);
            for b in 0..src {
                let c = pos[&(i, b)];
                if is_pivot[c] {
                    let r = pivot_row[c];
                    for x in rel.row(r).iter_ones() {
                        if x != c {
                            m.set(b, free_index[x], true);
                        }
                    }
                } else {
                    m.set(b, free_index[c], true);
                }
            }
            mult[i] = m;
        }
        for i in (d + 1)..=k {
            mult[i] = F2Mat::zeros(0, dim);
        }
        self.dims.push(dim);
        self.names.push(names);
        self.parents.push(parents);
        self.mult.push(mult);
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Highest degree with a nonzero piece.
    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, d: usize) -> usize {
        self.dims.get(d).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn names(&self, d: usize) -> &[Mono] {
        self.names.get(d).map_or(&[], |v| v.as_slice())
    }

    /// `(i, b)`: basis element is `w_i` times basis element `b` of degree `d - i`.
    pub fn parent(&self, d: usize, b: usize) -> (usize, usize) {
        self.parents[d][b]
    }

    /// Multiplication by `w_i` from degree `d - i` to degree `d`.
    pub fn mult(&self, d: usize, i: usize) -> F2Mat {
        if d >= self.dims.len() {
            let src = if d >= i { self.dim(d - i) } else { 0 };
            return F2Mat::zeros(src, 0);
        }
        if i > d || i < 2 || i > self.k {
            return F2Mat::zeros(0, self.dims[d]);
        }
        self.mult[d][i].clone()
    }

    pub fn mult_ref(&self, d: usize, i: usize) -> Option<&F2Mat> {
        (d < self.dims.len() && i >= 2 && i <= d && i <= self.k).then(|| &self.mult[d][i])
    }

    /// Applies multiplication by `w_i` to `v` in degree `d`.
    pub fn act(&self, d: usize, i: usize, v: &F2Vec) -> F2Vec {
        match self.mult_ref(d + i, i) {
            Some(m) => m.vec_mul(v),
            None => F2Vec::zeros(self.dim(d + i)),
        }
    }

    pub fn normal_form_mono(&self, m: &Mono) -> F2Vec {
        let d = m.degree();
        if d == 0 {
            return F2Vec::unit(1, 0);
        }
        let Some(i) = m.min_var() else { unreachable!() };
        let rest = m.div_var(i).unwrap();
        let v = self.normal_form_mono(&rest);
        self.act(d - i, i, &v)
    }

    /// Coordinates of a homogeneous polynomial of degree `d`.
    pub fn normal_form(&self, f: &Poly2, d: usize) -> Result<F2Vec> {
        let mut out = F2Vec::zeros(self.dim(d));
        for m in f.terms() {
            if m.degree() != d {
                return Err(Error::usage(format!("{f} is not homogeneous of degree {d}")));
            }
            if m.exp(1) > 0 || m.max_var() > self.k {
                return Err(Error::usage(format!("{f} is not in F2[w_2..w_{}]", self.k)));
            }
            if d < self.dims.len() {
                out.xor_assign(&self.normal_form_mono(m));
            }
        }
        Ok(out)
    }

    /// The polynomial with the given coordinates, written in basis names.
    pub fn poly(&self, d: usize, v: &F2Vec) -> Poly2 {
        Poly2::from_monos(v.iter_ones().map(|b| self.names[d][b]))
    }

    /// Matrix of multiplication by the element `y` of degree `e`, from degree
    /// `a` to degree `a + e`.  Row `r` is `y` times basis element `r`.
    pub fn mul_by_element(&self, a: usize, e: usize, y: &F2Vec) -> F2Mat {
        let src = self.dim(a);
        let dst = self.dim(a + e);
        let mut out = F2Mat::zeros(src, dst);
        if src == 0 || dst == 0 || y.is_zero() {
            return out;
        }
        // T[b] for basis elements b of degree e' <= e reached by parent chains
        let mut needed: Vec<Vec<bool>> = (0..=e).map(|d| vec![false; self.dim(d)]).collect();
        for b in y.iter_ones() {
            needed[e][b] = true;
        }
        for d in (1..=e).rev() {
            for b in 0..self.dim(d) {
                if needed[d][b] {
                    let (i, pb) = self.parents[d][b];
                    needed[d - i][pb] = true;
                }
            }
        }
        let mut ops: Vec<Vec<Option<F2Mat>>> = (0..=e).map(|d| vec![None; self.dim(d)]).collect();
        ops[0][0] = Some(F2Mat::identity(src));
        for d in 1..=e {
            for b in 0..self.dim(d) {
                if !needed[d][b] {
                    continue;
                }
                let (i, pb) = self.parents[d][b];
                let prev = ops[d - i][pb].as_ref().unwrap();
                ops[d][b] = Some(match self.mult_ref(a + d, i) {
                    Some(m) => prev.mul(m),
                    None => F2Mat::zeros(src, self.dim(a + d)),
                });
            }
        }
        for b in y.iter_ones() {
            out = out.add(ops[e][b].as_ref().unwrap());
        }
        out
    }

    /// Product of two homogeneous elements.
    pub fn mul(&self, d1: usize, x: &F2Vec, d2: usize, y: &F2Vec) -> F2Vec {
        if x.is_zero() || y.is_zero() || d1 + d2 >= self.dims.len() {
            return F2Vec::zeros(self.dim(d1 + d2));
        }
        let m = self.mul_by_element(d1, d2, y);
        m.vec_mul(x)
    }
}

/// Coefficients of `prod (1 - t^{e_s}) / prod_{i=2..k} (1 - t^i)` up to `len`.
pub fn complete_intersection_series(k: usize, degs: &[usize], len: usize) -> Vec<i64> {
    let mut c = vec![0i64; len + 1];
    c[0] = 1;
    for i in 2..=k {
        for j in i..=len {
            c[j] += c[j - i];
        }
    }
    for &e in degs {
        for j in (e..=len).rev() {
            c[j] -= c[j - e];
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly2 {
        s.parse().unwrap()
    }

    #[test]
    fn quotient_by_variables() {
        let a = GradedAlgebra::build(3, &[p("w_2"), p("w_3")], None, 50).unwrap();
        assert_eq!(a.dims(), &[1]);
    }

    #[test]
    fn complete_intersection_dims() {
        // F2[w_2,w_3]/(w_2^2, w_3^2): basis 1, w_2, w_3, w_2 w_3
        let a = GradedAlgebra::build(3, &[p("w_2^2"), p("w_3^2")], None, 50).unwrap();
        assert_eq!(a.dims(), &[1, 0, 1, 1, 0, 1]);
        let s = complete_intersection_series(3, &[4, 6], 5);
        assert_eq!(s, vec![1, 0, 1, 1, 0, 1]);
        let top = a.normal_form(&p("w_2*w_3"), 5).unwrap();
        assert_eq!(top.count_ones(), 1);
        assert!(a.normal_form(&p("w_2^2"), 4).unwrap().is_zero());
    }

    #[test]
    fn infinite_quotient_is_reported() {
        let r = GradedAlgebra::build(3, &[p("w_2^2")], None, 40);
        assert!(matches!(r, Err(BuildStop::Unbounded(_))));
    }
}
