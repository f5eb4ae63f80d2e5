//! Finite graded modules over a [`GradedAlgebra`], stored as a basis per degree
//! plus the matrices of multiplication by each `w_i`.

use crate::algebra::GradedAlgebra;
use crate::f2::{Echelon, F2Mat, F2Vec, SubspaceBasis};
use crate::poly::Poly2;

#[derive(Clone, Debug)]
pub struct GradedModule {
    k: usize,
    dims: Vec<usize>,
    /// `action[d][i]`: `M_{d-i} -> M_d` (only `2 <= i <= min(k, d)` populated).
    action: Vec<Vec<F2Mat>>,
}

impl GradedModule {
    /// Assembles a module from its dimensions and a closure returning the
    /// matrix `M_{d-i} -> M_d` of `w_i`.
    pub fn from_fn<F>(k: usize, dims: Vec<usize>, mut act: F) -> Self
    where
        F: FnMut(usize, usize) -> F2Mat,
    {
        let mut action = Vec::with_capacity(dims.len());
        for d in 0..dims.len() {
            let mut row = Vec::with_capacity(k + 1);
            for i in 0..=k {
                if i >= 2 && i <= d {
                    let m = act(d, i);
                    assert_eq!((m.nrows(), m.ncols()), (dims[d - i], dims[d]), "action shape");
                    row.push(m);
                } else {
                    row.push(F2Mat::zeros(0, dims[d]));
                }
            }
            action.push(row);
        }
        let mut m = GradedModule { k, dims, action };
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.dims.last() == Some(&0) {
            self.dims.pop();
            self.action.pop();
        }
    }

    /// The algebra as a module over itself.
    pub fn from_algebra(alg: &GradedAlgebra) -> Self {
        Self::from_fn(alg.k(), alg.dims().to_vec(), |d, i| alg.mult(d, i))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self, d: usize) -> usize {
        self.dims.get(d).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Lowest degree with a nonzero piece.
    pub fn min_degree(&self) -> Option<usize> {
        self.dims.iter().position(|&d| d > 0)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.dims.iter().rposition(|&d| d > 0)
    }

    pub fn action(&self, d: usize, i: usize) -> Option<&F2Mat> {
        (d < self.dims.len() && i >= 2 && i <= d && i <= self.k).then(|| &self.action[d][i])
    }

    /// `w_i * v` for `v` in degree `d`.
    pub fn act(&self, d: usize, i: usize, v: &F2Vec) -> F2Vec {
        match self.action(d + i, i) {
            Some(m) => m.vec_mul(v),
            None => F2Vec::zeros(self.dim(d + i)),
        }
    }

    /// Span of `sum_i w_i M_{d-i}` inside `M_d`.
    pub fn decomposables(&self, d: usize) -> Echelon {
        let mut e = Echelon::new(self.dim(d));
        for i in 2..=self.k {
            if let Some(m) = self.action(d, i) {
                for r in 0..m.nrows() {
                    e.insert(m.row(r));
                }
            }
        }
        e
    }

    /// Minimal generators as `(degree, vector)`, lowest degree first; within a
    /// degree, basis vectors are taken in index order when not yet spanned.
    pub fn minimal_generators(&self) -> Vec<(usize, F2Vec)> {
        let mut out = Vec::new();
        for d in 0..self.dims.len() {
            if self.dims[d] == 0 {
                continue;
            }
            let mut e = self.decomposables(d);
            for b in 0..self.dims[d] {
                let u = F2Vec::unit(self.dims[d], b);
                if e.insert(u.clone()) {
                    out.push((d, u));
                }
            }
        }
        out
    }

    /// Dimensions of the submodule generated by `gens`.
    pub fn generated_dims(&self, gens: &[(usize, F2Vec)]) -> Vec<usize> {
        let mut spans: Vec<Echelon> = Vec::with_capacity(self.dims.len());
        for d in 0..self.dims.len() {
            let mut e = Echelon::new(self.dims[d]);
            for i in 2..=self.k.min(d) {
                for v in spans[d - i].rows().to_vec() {
                    e.insert(self.act(d - i, i, &v));
                }
            }
            for (gd, v) in gens {
                if *gd == d {
                    e.insert(v.clone());
                }
            }
            spans.push(e);
        }
        spans.iter().map(|e| e.rank()).collect()
    }

    pub fn hilbert(&self) -> Vec<(usize, usize)> {
        self.dims.iter().enumerate().filter(|(_, &n)| n > 0).map(|(d, &n)| (d, n)).collect()
    }
}

/// `sum_j C(-a_j)` with basis in degree `d` ordered by generator, then by the
/// algebra basis of degree `d - a_j`.
#[derive(Clone, Debug)]
pub struct FreeModule {
    shifts: Vec<usize>,
    module: GradedModule,
    /// `offsets[d][j]`: start of block `j` in degree `d` (or `None`).
    offsets: Vec<Vec<Option<usize>>>,
}

impl FreeModule {
    pub fn new(alg: &GradedAlgebra, shifts: &[usize]) -> Self {
        let top = shifts.iter().max().map_or(0, |m| m + alg.top_degree());
        let mut offsets = Vec::with_capacity(top + 1);
        let mut dims = Vec::with_capacity(top + 1);
        for d in 0..=top {
            let mut off = Vec::with_capacity(shifts.len());
            let mut acc = 0;
            for &a in shifts {
                if d >= a && alg.dim(d - a) > 0 {
                    off.push(Some(acc));
                    acc += alg.dim(d - a);
                } else {
                    off.push(None);
                }
            }
            offsets.push(off);
            dims.push(acc);
        }
        let module = GradedModule::from_fn(alg.k(), dims.clone(), |d, i| {
            let mut m = F2Mat::zeros(dims[d - i], dims[d]);
            for (j, &a) in shifts.iter().enumerate() {
                let (Some(src), Some(dst)) = (offsets[d - i][j], offsets[d][j]) else { continue };
                let mm = alg.mult(d - a, i);
                for r in 0..mm.nrows() {
                    for c in mm.row(r).iter_ones() {
                        m.set(src + r, dst + c, true);
                    }
                }
            }
            m
        });
        FreeModule { shifts: shifts.to_vec(), module, offsets }
    }

    pub fn shifts(&self) -> &[usize] {
        &self.shifts
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn block(&self, d: usize, j: usize) -> Option<usize> {
        self.offsets.get(d).and_then(|o| o[j])
    }

    /// The generator `j` as a vector of degree `shifts[j]`.
    pub fn generator(&self, j: usize) -> F2Vec {
        let d = self.shifts[j];
        F2Vec::unit(self.module.dim(d), self.block(d, j).expect("generator block"))
    }

    /// Splits a degree-`d` vector into its coefficients, written in the
    /// algebra's basis names.
    pub fn coefficients(&self, alg: &GradedAlgebra, d: usize, v: &F2Vec) -> Vec<Poly2> {
        self.shifts
            .iter()
            .enumerate()
            .map(|(j, &a)| match self.block(d, j) {
                Some(off) => alg.poly(d - a, &v.slice(off, alg.dim(d - a))),
                None => Poly2::zero(),
            })
            .collect()
    }

    /// Assembles the degree-`d` vector with the given coefficient vectors
    /// (each in the algebra's degree `d - shifts[j]`).
    pub fn from_coefficients(&self, d: usize, coeffs: &[F2Vec]) -> F2Vec {
        let mut v = F2Vec::zeros(self.module.dim(d));
        for (j, c) in coeffs.iter().enumerate() {
            if let Some(off) = self.block(d, j) {
                for b in c.iter_ones() {
                    v.set(off + b, true);
                }
            }
        }
        v
    }

    /// Degreewise matrices of the map sending generator `j` to `images[j]`.
    pub fn map_to(&self, alg: &GradedAlgebra, target: &GradedModule, images: &[F2Vec]) -> Vec<F2Mat> {
        assert_eq!(images.len(), self.shifts.len());
        let top = self.module.dims().len();
        let mut maps: Vec<F2Mat> = Vec::with_capacity(top);
        for d in 0..top {
            let mut m = F2Mat::zeros(self.module.dim(d), target.dim(d));
            for (j, &a) in self.shifts.iter().enumerate() {
                let Some(off) = self.block(d, j) else { continue };
                let e = d - a;
                if e == 0 {
                    assert_eq!(images[j].len(), target.dim(d), "image has wrong degree");
                    m.set_row(off, &images[j]);
                    continue;
                }
                for s in 0..alg.dim(e) {
                    let (i, pb) = alg.parent(e, s);
                    let prev_off = self.block(d - i, j).expect("parent block");
                    let prev = maps[d - i].row(prev_off + pb);
                    m.set_row(off + s, &target.act(d - i, i, &prev));
                }
            }
            maps.push(m);
        }
        maps
    }
}

/// A graded submodule of a free module, with its own basis and action.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub module: GradedModule,
    pub bases: Vec<SubspaceBasis>,
}

impl Submodule {
    /// Kernel of the degreewise maps out of `free`.
    pub fn kernel(free: &FreeModule, maps: &[F2Mat]) -> Self {
        let amb = free.module();
        let bases: Vec<SubspaceBasis> = (0..amb.dims().len())
            .map(|d| {
                let vs = if maps[d].ncols() == 0 {
                    (0..amb.dim(d)).map(|b| F2Vec::unit(amb.dim(d), b)).collect()
                } else {
                    maps[d].left_kernel_basis()
                };
                SubspaceBasis::new(vs, amb.dim(d))
            })
            .collect();
        let dims: Vec<usize> = bases.iter().map(|b| b.dim()).collect();
        let module = GradedModule::from_fn(amb.k(), dims.clone(), |d, i| {
            let mut m = F2Mat::zeros(dims[d - i], dims[d]);
            for (r, v) in bases[d - i].basis().iter().enumerate() {
                let w = amb.act(d - i, i, v);
                let c = bases[d].coords(&w).expect("kernel is a submodule");
                m.set_row(r, &c);
            }
            m
        });
        Submodule { module, bases }
    }

    /// Vector in ambient coordinates.
    pub fn ambient(&self, d: usize, v: &F2Vec, ambient_dim: usize) -> F2Vec {
        self.bases[d].combine(v, ambient_dim)
    }
}

/// One step `P_s = sum_j C(-shifts[j])` of a minimal free resolution.
#[derive(Clone, Debug)]
pub struct FreeResStep {
    pub shifts: Vec<usize>,
    pub free: FreeModule,
    /// Image of generator `j`: in the module coordinates for step 0, in the
    /// previous free module's coordinates otherwise.
    pub images: Vec<F2Vec>,
    /// Degreewise matrices of `P_s -> P_{s-1}` (or `P_0 -> M`).
    pub maps: Vec<F2Mat>,
}

/// The first `steps` terms of a minimal free resolution of `m`.
pub fn resolve(alg: &GradedAlgebra, m: &GradedModule, steps: usize) -> Vec<FreeResStep> {
    let mut out: Vec<FreeResStep> = Vec::new();
    let mut target = m.clone();
    let mut embed: Option<Submodule> = None;
    for _ in 0..steps {
        let gens = target.minimal_generators();
        let shifts: Vec<usize> = gens.iter().map(|(d, _)| *d).collect();
        let local: Vec<F2Vec> = gens.iter().map(|(_, v)| v.clone()).collect();
        let free = FreeModule::new(alg, &shifts);
        let maps_local = free.map_to(alg, &target, &local);
        let (images, maps) = match (&embed, out.last()) {
            (Some(sub), Some(prev)) => {
                let amb = prev.free.module();
                let imgs: Vec<F2Vec> = gens.iter().map(|(d, v)| sub.ambient(*d, v, amb.dim(*d))).collect();
                let maps = free.map_to(alg, amb, &imgs);
                (imgs, maps)
            }
            _ => (local, maps_local.clone()),
        };
        let ker = Submodule::kernel(&free, &maps_local);
        target = ker.module.clone();
        embed = Some(ker);
        out.push(FreeResStep { shifts, free, images, maps });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly2 {
        s.parse().unwrap()
    }

    #[test]
    fn resolution_of_residue_field() {
        // C = F2[w_2]/(w_2^3); the residue field F2 has presentation C -> F2
        let alg = GradedAlgebra::build(2, &[p("w_2^3")], None, 20).unwrap();
        let field = GradedModule::from_fn(2, vec![1], |_, _| unreachable!());
        let res = resolve(&alg, &field, 3);
        assert_eq!(res[0].shifts, vec![0]);
        assert_eq!(res[1].shifts, vec![2]);
        assert_eq!(res[2].shifts, vec![6]);
    }

    #[test]
    fn free_module_generates_itself() {
        let alg = GradedAlgebra::build(3, &[p("w_2^2"), p("w_3^2")], None, 20).unwrap();
        let f = FreeModule::new(&alg, &[0, 3]);
        let gens = f.module().minimal_generators();
        assert_eq!(gens.iter().map(|g| g.0).collect::<Vec<_>>(), vec![0, 3]);
    }
}
