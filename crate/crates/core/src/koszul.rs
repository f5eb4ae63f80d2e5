//! The Koszul complex of `(q_{n-k+1}, .., q_n)` over `W2 = F2[w_2..w_k]`.
//!
//! `Lambda^i` has one block per `i`-subset `S` of the generators, shifted by
//! the sum of their degrees.  Subsets are ordered colexicographically and each
//! block by the monomial order.  The differential is
//! `d(e_S) = sum_{s in S} q_s e_{S - s}`; signs vanish mod 2.

use std::sync::Arc;

use crate::classes::ClassContext;
use crate::error::{Error, Result};
use crate::f2::{Echelon, F2Mat, F2Vec, TrackedEchelon};
use crate::module::GradedModule;
use crate::poly::{mono_basis, GradedSlice, Poly2, VarSet};

/// A degree in both gradings: Koszul degree `d` of `H_1` is cohomological
/// degree `d - 1` of `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DegreePair {
    pub koszul: usize,
    pub cohomological: usize,
}

impl DegreePair {
    pub fn from_koszul(d: usize) -> Self {
        assert!(d >= 1);
        DegreePair { koszul: d, cohomological: d - 1 }
    }

    pub fn from_cohomological(c: usize) -> Self {
        DegreePair { koszul: c + 1, cohomological: c }
    }
}

/// Real dimension `k (n - k)` of the Grassmannian.
pub fn manifold_dim(k: usize, n: usize) -> usize {
    k * (n - k)
}

pub fn check_kn(k: usize, n: usize) -> Result<()> {
    if k < 2 || n <= k {
        return Err(Error::usage(format!("need 2 <= k < n, got k={k}, n={n}")));
    }
    if k > crate::poly::MAX_VARS {
        return Err(Error::usage(format!("k={k} exceeds the supported rank")));
    }
    Ok(())
}

#[derive(Debug)]
pub struct KoszulComplex {
    k: usize,
    n: usize,
    ctx: Arc<ClassContext>,
    gens: Vec<Poly2>,
    gen_degs: Vec<usize>,
    /// `subsets[i]`: bitmasks of `i`-subsets in colex order.
    subsets: Vec<Vec<u32>>,
    shifts: Vec<Vec<usize>>,
}

impl KoszulComplex {
    pub fn build(k: usize, n: usize) -> Result<Self> {
        Self::with_context(Arc::new(ClassContext::new(k)), n)
    }

    pub fn with_context(ctx: Arc<ClassContext>, n: usize) -> Result<Self> {
        let k = ctx.k();
        check_kn(k, n)?;
        let gen_degs: Vec<usize> = (1..=k).map(|s| n - k + s).collect();
        let gens: Vec<Poly2> = gen_degs.iter().map(|&e| (*ctx.q(e as i64)).clone()).collect();
        let mut subsets = vec![Vec::new(); k + 1];
        for mask in 0u32..(1u32 << k) {
            subsets[mask.count_ones() as usize].push(mask);
        }
        let shifts = subsets
            .iter()
            .map(|v| {
                v.iter()
                    .map(|&m| (0..k).filter(|s| m >> s & 1 == 1).map(|s| gen_degs[s]).sum())
                    .collect()
            })
            .collect();
        Ok(KoszulComplex { k, n, ctx, gens, gen_degs, subsets, shifts })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn context(&self) -> &Arc<ClassContext> {
        &self.ctx
    }

    pub fn manifold_dim(&self) -> usize {
        manifold_dim(self.k, self.n)
    }

    /// The sequence `q_{n-k+1}, .., q_n`.
    pub fn generators(&self) -> &[Poly2] {
        &self.gens
    }

    /// Degree shifts of `Lambda^i`, one per subset in colex order.
    pub fn shifts(&self, i: usize) -> &[usize] {
        &self.shifts[i]
    }

    fn vars(&self) -> VarSet {
        VarSet::w2(self.k)
    }

    /// Blocks of `Lambda^i` in degree `d`: `(subset, offset, slice)`.
    pub fn blocks(&self, i: usize, d: usize) -> Vec<(u32, usize, Option<Arc<GradedSlice>>)> {
        let mut off = 0;
        let mut out = Vec::new();
        for (&m, &sh) in self.subsets[i].iter().zip(&self.shifts[i]) {
            if d >= sh {
                let s = mono_basis(self.vars(), d - sh);
                let len = s.dim();
                out.push((m, off, Some(s)));
                off += len;
            } else {
                out.push((m, off, None));
            }
        }
        out
    }

    pub fn dim(&self, i: usize, d: usize) -> usize {
        if i > self.k {
            return 0;
        }
        self.shifts[i]
            .iter()
            .filter(|&&sh| d >= sh)
            .map(|&sh| crate::poly::hilbert_w2(self.k, d - sh))
            .sum()
    }

    /// `d_i : Lambda^i_d -> Lambda^{i-1}_d`, rows indexed by the source basis.
    pub fn differential(&self, i: usize, d: usize) -> Result<F2Mat> {
        if i == 0 || i > self.k {
            return Err(Error::usage(format!("differential index {i} outside 1..={}", self.k)));
        }
        let src = self.blocks(i, d);
        let dst = self.blocks(i - 1, d);
        let dst_pos: std::collections::HashMap<u32, usize> =
            dst.iter().enumerate().map(|(idx, b)| (b.0, idx)).collect();
        let mut m = F2Mat::zeros(self.dim(i, d), self.dim(i - 1, d));
        for (mask, off, slice) in &src {
            let Some(slice) = slice else { continue };
            for s in 0..self.k {
                if mask >> s & 1 == 0 {
                    continue;
                }
                let (_, doff, dslice) = &dst[dst_pos[&(mask & !(1 << s))]];
                let dslice = dslice.as_ref().expect("target block exists");
                for (r, mono) in slice.monos().iter().enumerate() {
                    for t in self.gens[s].terms() {
                        let c = dslice.index_of(&t.mul(mono)).expect("product in slice");
                        m.flip(off + r, doff + c);
                    }
                }
            }
        }
        Ok(m)
    }

    fn rank_d(&self, i: usize, d: usize) -> Result<usize> {
        if i == 0 || i > self.k {
            return Ok(0);
        }
        Ok(self.differential(i, d)?.rank())
    }

    /// `dim H_i` in Koszul degree `d`.
    pub fn homology_dim(&self, i: usize, d: usize) -> Result<usize> {
        if i > self.k {
            return Err(Error::usage(format!("homological index {i} exceeds k={}", self.k)));
        }
        Ok(self.dim(i, d) - self.rank_d(i, d)? - self.rank_d(i + 1, d)?)
    }

    /// Cycle representatives of `H_1` in Koszul degree `d` and a coordinate map.
    pub fn h1_slice(&self, d: usize) -> Result<H1Slice> {
        let d1 = self.differential(1, d)?;
        let cycles = d1.left_kernel_basis();
        let len = self.dim(1, d);
        let mut boundary = Echelon::new(len);
        if self.k >= 2 {
            let d2 = self.differential(2, d)?;
            for r in 0..d2.nrows() {
                boundary.insert(d2.row(r));
            }
        }
        let mut reps = Vec::new();
        let mut chosen = Vec::new();
        let mut tmp = Echelon::new(len);
        for z in cycles {
            let mut v = z.clone();
            boundary.reduce(&mut v);
            if tmp.insert(v.clone()) {
                reps.push(z);
                chosen.push(v);
            }
        }
        let mut rep_ech = TrackedEchelon::new(len, reps.len());
        let count = reps.len();
        for (idx, v) in chosen.into_iter().enumerate() {
            rep_ech.insert(v, F2Vec::unit(count, idx));
        }
        Ok(H1Slice { degree: d, len, boundary, reps, rep_ech })
    }

    /// Multiplication by `w_i` from `Lambda^1_{d}` to `Lambda^1_{d+i}`.
    pub fn shift_lambda1(&self, d: usize, i: usize, v: &F2Vec) -> F2Vec {
        let src = self.blocks(1, d);
        let dst = self.blocks(1, d + i);
        let mut out = F2Vec::zeros(self.dim(1, d + i));
        for ((_, off, slice), (_, doff, dslice)) in src.iter().zip(&dst) {
            let Some(slice) = slice else { continue };
            let dslice = dslice.as_ref().unwrap();
            for r in 0..slice.dim() {
                if v.get(off + r) {
                    let c = dslice.index_of(&slice.monos()[r].mul_var(i)).unwrap();
                    out.flip(doff + c);
                }
            }
        }
        out
    }

    /// Writes the coefficient vector of a `Lambda^1` element as polynomials
    /// in generator order `q_{n-k+1}, .., q_n`.
    pub fn lambda1_polys(&self, d: usize, v: &F2Vec) -> Vec<Poly2> {
        self.blocks(1, d)
            .iter()
            .map(|(_, off, slice)| match slice {
                Some(s) => s.poly(&v.slice(*off, s.dim())),
                None => Poly2::zero(),
            })
            .collect()
    }

    /// The element of `Lambda^1_d` with the given coefficients.
    pub fn lambda1_vector(&self, d: usize, coeffs: &[Poly2]) -> Result<F2Vec> {
        if coeffs.len() != self.k {
            return Err(Error::usage(format!("expected {} coefficients", self.k)));
        }
        let mut out = F2Vec::zeros(self.dim(1, d));
        for ((_, off, slice), f) in self.blocks(1, d).iter().zip(coeffs) {
            if f.is_zero() {
                continue;
            }
            let s = slice.as_ref().ok_or_else(|| Error::usage("coefficient in negative degree".into()))?;
            let c = s.coords(f)?;
            for b in c.iter_ones() {
                out.set(off + b, true);
            }
        }
        Ok(out)
    }

    /// Whether the cycle with these coefficients is a boundary.
    pub fn is_boundary(&self, d: usize, coeffs: &[Poly2]) -> Result<bool> {
        let v = self.lambda1_vector(d, coeffs)?;
        let d2 = self.differential(2, d)?;
        Ok(d2.solve(&v).is_some())
    }

    /// `d_1 d_2 = 0` in degree `d`, checked on matrices.
    pub fn check_square_zero(&self, d: usize) -> Result<bool> {
        for i in 2..=self.k {
            let a = self.differential(i, d)?;
            let b = self.differential(i - 1, d)?;
            if !a.mul(&b).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `K` in cohomological grading, computed from `H_1` degree by degree up to
    /// Koszul degree `N + 1`.
    pub fn anomalous_module(&self) -> Result<GradedModule> {
        let top = self.manifold_dim() + 1;
        let slices: Vec<Option<H1Slice>> =
            (0..=top).map(|d| if d == 0 { Ok(None) } else { self.h1_slice(d).map(Some) }).collect::<Result<_>>()?;
        let dims: Vec<usize> = (0..top).map(|c| slices[c + 1].as_ref().map_or(0, |s| s.dim())).collect();
        Ok(GradedModule::from_fn(self.k, dims.clone(), |c, i| {
            let mut m = F2Mat::zeros(dims[c - i], dims[c]);
            let src = slices[c - i + 1].as_ref().unwrap();
            let dst = slices[c + 1].as_ref().unwrap();
            for (r, z) in src.reps.iter().enumerate() {
                let w = self.shift_lambda1(c - i + 1, i, z);
                m.set_row(r, &dst.coords(&w).expect("cycles map to cycles"));
            }
            m
        }))
    }

    /// Minimal generators of `ker d_1` as a `W2`-module, in Koszul degrees.
    ///
    /// Generators are sought up to `cap`; none may appear in the last `k`
    /// degrees below it, otherwise the cap is reported as too low.
    pub fn min_gens_ker_d1(&self, cap: Option<usize>) -> Result<KerD1> {
        let cap = cap.unwrap_or_else(|| self.default_cap());
        let mut spans: Vec<Vec<F2Vec>> = Vec::with_capacity(cap + 1);
        let mut gens = Vec::new();
        let mut hilbert = Vec::with_capacity(cap + 1);
        for d in 0..=cap {
            let len = self.dim(1, d);
            let z = if len == 0 { Vec::new() } else { self.differential(1, d)?.left_kernel_basis() };
            hilbert.push(z.len());
            let mut e = Echelon::new(len);
            for i in 2..=self.k.min(d) {
                for v in &spans[d - i] {
                    e.insert(self.shift_lambda1(d - i, i, v));
                }
            }
            for v in &z {
                if e.insert(v.clone()) {
                    gens.push((d, v.clone()));
                }
            }
            spans.push(z);
        }
        let window = cap.saturating_sub(self.k) + 1;
        if let Some((d, _)) = gens.iter().find(|(d, _)| *d >= window && *d > 0) {
            return Err(Error::CapTooLow(format!(
                "ker d_1 has a generator in degree {d} within {} of cap {cap}; rerun with a larger cap",
                self.k
            )));
        }
        Ok(KerD1 { cap, generators: gens, hilbert })
    }

    /// `max(N + 1, largest pair shift) + k`.
    pub fn default_cap(&self) -> usize {
        let pair = self.shifts.get(2).and_then(|s| s.iter().max().copied()).unwrap_or(0);
        (self.manifold_dim() + 1).max(pair) + self.k
    }

    pub fn generator_degrees(&self) -> &[usize] {
        &self.gen_degs
    }
}

#[derive(Debug)]
pub struct KerD1 {
    pub cap: usize,
    /// `(Koszul degree, vector in Lambda^1)`.
    pub generators: Vec<(usize, F2Vec)>,
    /// `dim ker d_1` per Koszul degree `0..=cap`.
    pub hilbert: Vec<usize>,
}

impl KerD1 {
    pub fn degrees(&self) -> Vec<usize> {
        self.generators.iter().map(|(d, _)| *d).collect()
    }
}

#[derive(Debug)]
pub struct H1Slice {
    pub degree: usize,
    len: usize,
    boundary: Echelon,
    reps: Vec<F2Vec>,
    rep_ech: TrackedEchelon,
}

impl H1Slice {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[F2Vec] {
        &self.reps
    }

    /// Coordinates of a cycle in the chosen representatives.
    pub fn coords(&self, v: &F2Vec) -> Option<F2Vec> {
        assert_eq!(v.len(), self.len);
        let mut v = v.clone();
        self.boundary.reduce(&mut v);
        self.rep_ech.express(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifts_of_small_case() {
        let k = KoszulComplex::build(3, 12).unwrap();
        assert_eq!(k.shifts(1), &[10, 11, 12]);
        assert_eq!(k.h1_slice(13).unwrap().dim(), 1);
    }
}
