//! Presentations of the characteristic subring `C` and the anomalous module
//! `K`, and the quantities read off from them.
//!
//! `K` is computed in one of two ways:
//!
//! * directly, as `H_1` of the full Koszul complex over `W2`;
//! * by reduction: if the `k - 1` elements left after removing `q_m` form a
//!   regular sequence, then `H_1(q; W2)` is isomorphic to the annihilator of
//!   `q_m` in the complete intersection `R = W2 / (others)`, shifted by
//!   `deg q_m`.  Regularity is certified by the Hilbert function of `R`
//!   matching the complete intersection series in every degree.
//!
//! The reduction touches only spaces of the size of `R`, which is small next
//! to the slices of `W2` near the top degree.

use std::sync::Arc;

use crate::algebra::{complete_intersection_series, ColumnOrder, GradedAlgebra};
use crate::classes::ClassContext;
use crate::error::{Error, Result};
use crate::f2::{F2Mat, F2Vec, SubspaceBasis};
use crate::koszul::{check_kn, manifold_dim, KoszulComplex};
use crate::module::{resolve, FreeResStep, GradedModule};
use crate::poly::{Mono, Poly2};

/// A module over `C` given by generators and relations.
#[derive(Clone, Debug)]
pub struct Presentation {
    /// Sorted generator degrees.
    pub generator_degrees: Vec<usize>,
    /// Sorted relation degrees.
    pub relation_degrees: Vec<usize>,
    /// One row per relation (in the order of `relation_degrees`), one entry per
    /// generator, written as `W2` representatives in normal form.
    pub relation_rows: Vec<Vec<Poly2>>,
}

impl Presentation {
    /// Hilbert function of the presented module `coker(sum C(-b) -> sum C(-a))`,
    /// from the relation rows alone.
    pub fn presented_dims(&self, alg: &GradedAlgebra) -> Result<Vec<usize>> {
        let Some(&top_gen) = self.generator_degrees.iter().max() else {
            return Ok(Vec::new());
        };
        let top = alg.top_degree() + top_gen;
        let mut nf: Vec<Vec<F2Vec>> = Vec::with_capacity(self.relation_rows.len());
        for (row, &b) in self.relation_rows.iter().zip(&self.relation_degrees) {
            let mut out = Vec::with_capacity(row.len());
            for (f, &a) in row.iter().zip(&self.generator_degrees) {
                if f.is_zero() {
                    out.push(F2Vec::zeros(if b >= a { alg.dim(b - a) } else { 0 }));
                    continue;
                }
                if b < a {
                    return Err(Error::Parse(format!("relation of degree {b} has a nonzero entry on a generator of degree {a}")));
                }
                out.push(alg.normal_form(f, b - a)?);
            }
            nf.push(out);
        }
        let mut dims = Vec::with_capacity(top + 1);
        for d in 0..=top {
            let blocks: Vec<usize> =
                self.generator_degrees.iter().map(|&a| if d >= a { alg.dim(d - a) } else { 0 }).collect();
            let total: usize = blocks.iter().sum();
            let mut img = F2Mat::zeros(0, total);
            for (entries, &b) in nf.iter().zip(&self.relation_degrees) {
                if b > d || alg.dim(d - b) == 0 {
                    continue;
                }
                let parts: Vec<F2Mat> = entries
                    .iter()
                    .zip(&self.generator_degrees)
                    .zip(&blocks)
                    .map(|((e, &a), &width)| {
                        if e.is_zero() || width == 0 {
                            F2Mat::zeros(alg.dim(d - b), width)
                        } else {
                            alg.mul_by_element(d - b, b - a, e)
                        }
                    })
                    .collect();
                for r in 0..alg.dim(d - b) {
                    let row = parts.iter().fold(F2Vec::zeros(0), |acc, m| acc.concat(&m.row(r)));
                    img.push_row(&row);
                }
            }
            dims.push(total - img.rank());
        }
        while dims.last() == Some(&0) {
            dims.pop();
        }
        Ok(dims)
    }
}

/// The characteristic subring `C = W2 / (q_{n-k+1}, .., q_n)`.
#[derive(Clone, Debug)]
pub struct CData {
    pub k: usize,
    pub n: usize,
    pub algebra: GradedAlgebra,
    /// The `q_j` that minimally generate the ideal, as `(j, q_j)`.
    pub ideal_min_gens: Vec<(usize, Poly2)>,
}

impl CData {
    pub fn top_degree(&self) -> usize {
        self.algebra.top_degree()
    }

    pub fn hilbert(&self) -> Vec<(usize, usize)> {
        self.algebra.dims().iter().enumerate().filter(|(_, &n)| n > 0).map(|(d, &n)| (d, n)).collect()
    }
}

pub fn present_c(k: usize, n: usize) -> Result<CData> {
    present_c_with(&Arc::new(ClassContext::new(k)), n)
}

pub fn present_c_with(ctx: &Arc<ClassContext>, n: usize) -> Result<CData> {
    present_c_ordered(ctx, n, ColumnOrder::Standard)
}

pub fn present_c_ordered(ctx: &Arc<ClassContext>, n: usize, order: ColumnOrder) -> Result<CData> {
    let k = ctx.k();
    check_kn(k, n)?;
    let qs: Vec<Poly2> = (n - k + 1..=n).map(|j| (*ctx.q(j as i64)).clone()).collect();
    let big_n = manifold_dim(k, n);
    let algebra = GradedAlgebra::build_ordered(k, &qs, big_n + k + 2, order)
        .map_err(|e| Error::Diagnostic(format!("C(k={k}, n={n}) not finite: {e:?}")))?;
    let mut kept: Vec<Poly2> = Vec::new();
    let mut ideal_min_gens = Vec::new();
    for (idx, j) in (n - k + 1..=n).enumerate() {
        let q = &qs[idx];
        if q.is_zero() {
            continue;
        }
        let partial = GradedAlgebra::build_truncated(k, &kept, j);
        if !partial.normal_form(q, j)?.is_zero() {
            kept.push(q.clone());
            ideal_min_gens.push((j, q.clone()));
        }
    }
    Ok(CData { k, n, algebra, ideal_min_gens })
}

/// How `K` was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KRoute {
    /// Prefer the reduction, falling back to the full complex.
    Auto,
    /// Reduction by a regular subsequence; fails if none is found.
    Reduced,
    /// `H_1` of the full Koszul complex.
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RouteUsed {
    /// Reduction with `q_j` removed.
    Reduced { removed: usize },
    Full,
}

/// The anomalous module with its minimal presentation.
#[derive(Clone, Debug)]
pub struct KData {
    pub k: usize,
    pub n: usize,
    pub route: RouteUsed,
    /// `K` in cohomological grading.
    pub module: GradedModule,
    pub presentation: Presentation,
    /// `P_0, P_1, P_2` of a minimal free resolution over `C`.
    pub resolution: Vec<FreeResStep>,
}

impl KData {
    pub fn hilbert(&self) -> Vec<(usize, usize)> {
        self.module.hilbert()
    }
}

/// `K` in cohomological grading by the reduction, if some `k - 1` of the `q`
/// form a regular sequence.
pub fn anomalous_module_reduced(ctx: &ClassContext, n: usize) -> Result<Option<(GradedModule, usize)>> {
    let k = ctx.k();
    check_kn(k, n)?;
    let big_n = manifold_dim(k, n);
    let js: Vec<usize> = (n - k + 1..=n).collect();
    for &m in js.iter().rev() {
        let others: Vec<usize> = js.iter().copied().filter(|&j| j != m).collect();
        let gens: Vec<Poly2> = others.iter().map(|&j| (*ctx.q(j as i64)).clone()).collect();
        if gens.iter().any(|g| g.is_zero()) {
            continue;
        }
        let socle: i64 = others.iter().sum::<usize>() as i64 - (2..=k).sum::<usize>() as i64;
        if socle < 0 {
            continue;
        }
        // the series must be a polynomial of degree `socle`: zero on (socle, sum e]
        let total: usize = others.iter().sum();
        let series = complete_intersection_series(k, &others, total);
        if series[socle as usize + 1..].iter().any(|&x| x != 0) || series.iter().any(|&x| x < 0) {
            continue;
        }
        let expected = |d: usize| series.get(d).copied().unwrap_or(0);
        let Ok(r) = GradedAlgebra::build(k, &gens, Some(&expected), socle as usize + k + 1) else {
            continue;
        };
        if (0..=socle as usize).any(|d| r.dim(d) as i64 != series[d]) {
            continue;
        }
        let y = r.normal_form(&ctx.q(m as i64), m)?;
        let mut bases: Vec<SubspaceBasis> = Vec::with_capacity(big_n + 1);
        for c in 0..=big_n {
            let basis = if c + 1 >= m {
                let a = c + 1 - m;
                let t = r.mul_by_element(a, m, &y);
                if t.ncols() == 0 {
                    (0..r.dim(a)).map(|b| crate::f2::F2Vec::unit(r.dim(a), b)).collect()
                } else {
                    t.left_kernel_basis()
                }
            } else {
                Vec::new()
            };
            let amb = if c + 1 >= m { r.dim(c + 1 - m) } else { 0 };
            bases.push(SubspaceBasis::new(basis, amb));
        }
        let dims: Vec<usize> = bases.iter().map(|b| b.dim()).collect();
        let module = GradedModule::from_fn(k, dims.clone(), |c, i| {
            let mut mat = F2Mat::zeros(dims[c - i], dims[c]);
            if dims[c - i] == 0 {
                return mat;
            }
            let a = c + 1 - m;
            for (row, v) in bases[c - i].basis().iter().enumerate() {
                let w = r.act(a - i, i, v);
                mat.set_row(row, &bases[c].coords(&w).expect("annihilator is a submodule"));
            }
            mat
        });
        return Ok(Some((module, m)));
    }
    Ok(None)
}

pub fn anomalous_module(ctx: &Arc<ClassContext>, n: usize, route: KRoute) -> Result<(GradedModule, RouteUsed)> {
    if route != KRoute::Full {
        if let Some((m, removed)) = anomalous_module_reduced(ctx, n)? {
            return Ok((m, RouteUsed::Reduced { removed }));
        }
        if route == KRoute::Reduced {
            return Err(Error::Diagnostic(format!(
                "no k-1 of the q_j for k={}, n={n} form a regular sequence",
                ctx.k()
            )));
        }
    }
    let kc = KoszulComplex::with_context(ctx.clone(), n)?;
    Ok((kc.anomalous_module()?, RouteUsed::Full))
}

/// Minimal presentation of `K` over `C`, resolved `steps` terms deep.
pub fn present_k(k: usize, n: usize) -> Result<KData> {
    let ctx = Arc::new(ClassContext::new(k));
    let c = present_c_with(&ctx, n)?;
    present_k_with(&ctx, &c, KRoute::Auto, 2)
}

pub fn present_k_with(ctx: &Arc<ClassContext>, c: &CData, route: KRoute, steps: usize) -> Result<KData> {
    let n = c.n;
    let (module, used) = anomalous_module(ctx, n, route)?;
    let resolution = resolve(&c.algebra, &module, steps.max(2));
    let p0 = &resolution[0];
    let p1 = &resolution[1];
    let relation_rows: Vec<Vec<Poly2>> = p1
        .shifts
        .iter()
        .zip(&p1.images)
        .map(|(&b, v)| p0.free.coefficients(&c.algebra, b, v))
        .collect();
    let presentation = Presentation {
        generator_degrees: p0.shifts.clone(),
        relation_degrees: p1.shifts.clone(),
        relation_rows,
    };
    Ok(KData { k: ctx.k(), n, route: used, module, presentation, resolution })
}

/// Characteristic rank: one less than the lowest degree of `K`, or `N` when
/// `K` vanishes.
pub fn charrank_of(k: &GradedModule, big_n: usize) -> usize {
    match k.min_degree() {
        Some(d) => d - 1,
        None => big_n,
    }
}

/// Characteristic rank from the lowest nonzero `H_1` slice, scanning upward
/// from the smallest shift, without building `K`.
pub fn charrank(k: usize, n: usize) -> Result<usize> {
    let kc = KoszulComplex::build(k, n)?;
    let big_n = manifold_dim(k, n);
    let start = kc.shifts(1).iter().copied().min().unwrap_or(0).max(1);
    for d in start..=big_n + 1 {
        if kc.homology_dim(1, d)? > 0 {
            return Ok(d - 2);
        }
    }
    Ok(big_n)
}

/// `min(2^t - 2, k (n - 2^{t-1}) + 2^{t-1} - 2)` for `5 <= k <= 2^{t-1} < n <= 2^t`.
pub fn conjecture_value(k: usize, n: usize, t: u32) -> Result<usize> {
    let half = 1usize << (t - 1);
    if !(k >= 5 && k <= half && half < n && n <= 2 * half) {
        return Err(Error::usage(format!("conjectured range needs 5 <= k <= 2^(t-1) < n <= 2^t (k={k}, n={n}, t={t})")));
    }
    Ok((2 * half - 2).min(k * (n - half) + half - 2))
}

/// The `t` with `2^{t-1} < n <= 2^t`.
pub fn binary_t(n: usize) -> u32 {
    assert!(n >= 2);
    (n - 1).ilog2() + 1
}

/// `dim C_d = dim K_{N-d}` for every `d`.
pub fn check_poincare(c: &CData, k: &GradedModule) -> bool {
    let big_n = manifold_dim(c.k, c.n);
    if c.algebra.top_degree() > big_n || k.max_degree().is_some_and(|d| d > big_n) {
        return false;
    }
    (0..=big_n).all(|d| c.algebra.dim(d) == k.dim(big_n - d))
}

/// `K` is free of rank one.
pub fn check_free_cyclic(kd: &KData) -> bool {
    kd.presentation.generator_degrees.len() == 1 && kd.presentation.relation_degrees.is_empty()
}

/// Least `e` with `w_v^e = 0` in `C`.
pub fn nilpotency_witness(c: &CData, v: usize) -> Result<u32> {
    if !(2..=c.k).contains(&v) {
        return Err(Error::usage(format!("w_{v} is not a generator of C")));
    }
    let top = c.algebra.top_degree();
    let mut e = 1u32;
    loop {
        let d = v * e as usize;
        if d > top {
            return Ok(e);
        }
        let m = Mono::from_exps(&[(v, e)]);
        if c.algebra.normal_form(&Poly2::mono(m), d)?.is_zero() {
            return Ok(e);
        }
        e += 1;
    }
}
