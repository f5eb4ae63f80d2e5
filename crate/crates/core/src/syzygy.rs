//! Explicit relations between `q_{n-k+1}, .., q_n`: the two-power relation,
//! descending and ascending transport, and the `k = 3` closed forms.
//!
//! A relation at level `n` is a coefficient vector `c` with
//! `sum_s c_s q_{n-k+s} = 0`, stored lowest index first.  The recursions are
//! written with `alpha_j` / `beta_j` the coefficient of `q_{n-j}`; the single
//! conversion is [`RelationVec::from_top_first`].

use std::sync::Arc;

use crate::algebra::GradedAlgebra;
use crate::classes::ClassContext;
use crate::error::{Error, Result};
use crate::f2::Echelon;
use crate::koszul::KoszulComplex;
use crate::poly::{mono_basis, Poly2, VarSet};
use crate::presentation::{binary_t, Presentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationVec {
    pub k: usize,
    /// Level: the relation is between `q_{n-k+1}, .., q_n`.
    pub n: i64,
    /// `coeffs[s]` multiplies `q_{n-k+1+s}`.
    pub coeffs: Vec<Poly2>,
    pub koszul_degree: usize,
}

impl RelationVec {
    /// Builds from coefficients listed highest index first (`c[j]` multiplies
    /// `q_{n-j}`) and verifies the relation.
    pub fn from_top_first(ctx: &ClassContext, n: i64, top_first: Vec<Poly2>) -> Result<Self> {
        let k = ctx.k();
        if top_first.len() != k {
            return Err(Error::usage(format!("relation needs {k} coefficients")));
        }
        let mut coeffs = top_first;
        coeffs.reverse();
        let mut degree = None;
        for (s, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = n - k as i64 + 1 + s as i64;
            let Some(cd) = c.homogeneous_degree() else {
                return Err(Error::usage("relation coefficient is not homogeneous".into()));
            };
            let d = cd as i64 + j;
            match degree {
                None => degree = Some(d),
                Some(e) if e != d => return Err(Error::usage("relation is not homogeneous".into())),
                _ => {}
            }
        }
        let koszul_degree = degree.unwrap_or(0).max(0) as usize;
        let rel = RelationVec { k, n, coeffs, koszul_degree };
        if !rel.evaluate(ctx).is_zero() {
            return Err(Error::usage(format!("not a relation between q_{}..q_{}", n - k as i64 + 1, n)));
        }
        Ok(rel)
    }

    /// `sum_s c_s q_{n-k+1+s}`.
    pub fn evaluate(&self, ctx: &ClassContext) -> Poly2 {
        let mut acc = Poly2::zero();
        for (s, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc.add_assign(&c.mul(&ctx.q(self.n - self.k as i64 + 1 + s as i64)));
            }
        }
        acc
    }

    /// Coefficient of `q_{n-j}`.
    pub fn top(&self, j: usize) -> &Poly2 {
        &self.coeffs[self.k - 1 - j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly2::is_zero)
    }
}

fn w(i: usize) -> Poly2 {
    match i {
        0 => Poly2::one(),
        1 => Poly2::zero(),
        _ => Poly2::var(i),
    }
}

/// Transports a relation at level `n0` to level `n0 - steps`, same degree.
pub fn descend(ctx: &ClassContext, start: &RelationVec, steps: usize) -> Result<RelationVec> {
    let k = ctx.k();
    RelationVec::from_top_first(ctx, start.n, (0..k).map(|j| start.top(j).clone()).collect())?;
    let mut alpha: Vec<Poly2> = (0..k).map(|j| start.top(j).clone()).collect();
    for _ in 0..steps {
        let a0 = alpha[0].clone();
        alpha = (0..k)
            .map(|j| {
                let mut c = a0.mul(&w(j + 1));
                if j + 1 < k {
                    c.add_assign(&alpha[j + 1]);
                }
                c
            })
            .collect();
    }
    RelationVec::from_top_first(ctx, start.n - steps as i64, alpha)
}

/// Transports a relation at level `n0` to level `n0 + steps`; the degree
/// grows by `k` per step.
pub fn ascend(ctx: &ClassContext, start: &RelationVec, steps: usize) -> Result<RelationVec> {
    let k = ctx.k();
    RelationVec::from_top_first(ctx, start.n, (0..k).map(|j| start.top(j).clone()).collect())?;
    let wk = w(k);
    let mut beta: Vec<Poly2> = (0..k).map(|j| start.top(j).clone()).collect();
    for _ in 0..steps {
        let last = beta[k - 1].clone();
        beta = (0..k)
            .map(|j| {
                let mut c = last.mul(&w(j));
                if j > 0 {
                    c.add_assign(&wk.mul(&beta[j - 1]));
                }
                c
            })
            .collect();
    }
    RelationVec::from_top_first(ctx, start.n + steps as i64, beta)
}

/// The two-power relation placed in the window `q_{n-k+1}..q_n`.
#[derive(Clone, Debug)]
pub struct Fundamental {
    pub relation: RelationVec,
    /// Set for `k = 2`, where no nontrivial part fits the window.
    pub degenerate: bool,
}

/// For `n = 2^t`: the odd part `sum_{i>1 odd, i<k} w_i q_{n-i}` when `k` is
/// even, the even part `sum_{i even, i<k} w_i q_{n-i}` when `k` is odd.
/// Each is the half of the two-power relation that avoids `q_{n-k}`.
pub fn fundamental_vec(ctx: &ClassContext, n: usize) -> Result<Fundamental> {
    let k = ctx.k();
    if !n.is_power_of_two() || n <= k {
        return Err(Error::usage(format!("fundamental relation needs n = 2^t > k (k={k}, n={n})")));
    }
    let parity = if k % 2 == 0 { 1 } else { 0 };
    let top_first: Vec<Poly2> =
        (0..k).map(|i| if i % 2 == parity && i != 1 { w(i) } else { Poly2::zero() }).collect();
    let relation = RelationVec::from_top_first(ctx, n as i64, top_first)?;
    let degenerate = relation.is_zero();
    Ok(Fundamental { relation, degenerate })
}

/// `(t, i, j)` with `i = 2^t - 3 - n` and `j = n - 2^{t-1} + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CaseIndices {
    pub t: u32,
    pub i: i64,
    pub j: i64,
}

impl CaseIndices {
    /// `t` is the one with `2^{t-1} < n <= 2^t`.
    pub fn of(n: usize) -> Self {
        Self::with_t(n, binary_t(n))
    }

    pub fn with_t(n: usize, t: u32) -> Self {
        let n = n as i64;
        CaseIndices { t, i: (1i64 << t) - 3 - n, j: n - (1i64 << (t - 1)) + 1 }
    }
}

fn k3_range(n: usize) -> Result<CaseIndices> {
    let c = CaseIndices::of(n);
    if n < 5 || c.i < 1 {
        return Err(Error::usage(format!("n={n} is outside 2^(t-1) < n <= 2^t - 4")));
    }
    Ok(c)
}

fn k3_context(ctx: &ClassContext) -> Result<()> {
    if ctx.k() != 3 {
        return Err(Error::usage("this construction is for k = 3".into()));
    }
    Ok(())
}

/// `u = (r_j, w_3 r_{j-2}, r_{j-1})` and `v = (w_3 q_{i-1}, q_{i+1}, q_i)`.
pub fn k3_kernel_basis(ctx: &ClassContext, n: usize) -> Result<(RelationVec, RelationVec)> {
    k3_context(ctx)?;
    let CaseIndices { i, j, .. } = k3_range(n)?;
    let w3 = Poly2::var(3);
    let u = vec![(*ctx.r(j - 1)).clone(), w3.mul(&ctx.r(j - 2)), (*ctx.r(j)).clone()];
    let v = vec![(*ctx.q(i)).clone(), (*ctx.q(i + 1)).clone(), w3.mul(&ctx.q(i - 1))];
    let n = n as i64;
    Ok((RelationVec::from_top_first(ctx, n, u)?, RelationVec::from_top_first(ctx, n, v)?))
}

/// The 2x2 minors of `(u | v)` are `q_{n-2}, q_{n-1}, q_n`.
pub fn k3_minors_hold(ctx: &ClassContext, u: &RelationVec, v: &RelationVec) -> bool {
    let n = u.n;
    let minor = |a: usize, b: usize| u.coeffs[a].mul(&v.coeffs[b]).add(&u.coeffs[b].mul(&v.coeffs[a]));
    minor(1, 2) == *ctx.q(n - 2) && minor(0, 2) == *ctx.q(n - 1) && minor(0, 1) == *ctx.q(n)
}

/// The three linear identities between `q` and `r` at level `n` with the
/// indices of `t`.
pub fn lemma_linear_eqs_with(ctx: &ClassContext, n: usize, t: u32) -> Result<bool> {
    k3_context(ctx)?;
    let CaseIndices { i, j, .. } = CaseIndices::with_t(n, t);
    let n = n as i64;
    let (q, r) = (|x| ctx.q(x), |x| ctx.r(x));
    let w3 = Poly2::var(3);
    let w33 = w3.square();
    let e1 = w3.mul(&r(j - 2)).mul(&q(i)).add(&r(j - 1).mul(&q(i + 1)));
    let e2 = r(j).mul(&q(i)).add(&w3.mul(&r(j - 1)).mul(&q(i - 1)));
    let e3 = r(j).mul(&q(i + 1)).add(&w33.mul(&r(j - 2)).mul(&q(i - 1)));
    Ok(e1 == *q(n - 2) && e2 == *q(n - 1) && e3 == *q(n))
}

pub fn lemma_linear_eqs(ctx: &ClassContext, n: usize) -> Result<bool> {
    lemma_linear_eqs_with(ctx, n, binary_t(n))
}

/// Generators `D_n` (degree `2^t - 4`) and `A_n` (degree `3n - 2^t - 1`),
/// with relations `q_i A + r_{j-1} D`, `q_{i+1} A + w_3 r_{j-2} D`,
/// `w_3 q_{i-1} A + r_j D`.  Generators are listed by ascending degree.
pub fn k3_closed_presentation(ctx: &ClassContext, n: usize) -> Result<Presentation> {
    k3_context(ctx)?;
    let CaseIndices { t, i, j } = k3_range(n)?;
    let deg_a = 3 * n - (1usize << t) - 1;
    let deg_d = (1usize << t) - 4;
    let w3 = Poly2::var(3);
    let rows_ad = [
        ((*ctx.q(i)).clone(), (*ctx.r(j - 1)).clone()),
        ((*ctx.q(i + 1)).clone(), w3.mul(&ctx.r(j - 2))),
        (w3.mul(&ctx.q(i - 1)), (*ctx.r(j)).clone()),
    ];
    let a_first = deg_a < deg_d;
    let generator_degrees = if a_first { vec![deg_a, deg_d] } else { vec![deg_d, deg_a] };
    let relation_rows = rows_ad
        .iter()
        .map(|(a, d)| if a_first { vec![a.clone(), d.clone()] } else { vec![d.clone(), a.clone()] })
        .collect();
    Ok(Presentation {
        generator_degrees,
        relation_degrees: vec![2 * n - 4, 2 * n - 3, 2 * n - 2],
        relation_rows,
    })
}

/// Whether a relation is a Koszul boundary, i.e. trivial in `H_1`.
pub fn boundary_membership(kc: &KoszulComplex, rel: &RelationVec) -> Result<bool> {
    if rel.k != kc.k() || rel.n != kc.n() as i64 {
        return Err(Error::usage("relation and complex disagree on (k, n)".into()));
    }
    kc.is_boundary(rel.koszul_degree, &rel.coeffs)
}

/// The starting relation `q_{2^t-3} = 0` at level `m = 2^t - 3` for `k = 3, 4`,
/// placed on `q_m`.
pub fn vanishing_at_top(ctx: &ClassContext, t: u32) -> Result<RelationVec> {
    let k = ctx.k();
    let m = (1i64 << t) - 3;
    let mut top_first = vec![Poly2::zero(); k];
    top_first[0] = Poly2::one();
    RelationVec::from_top_first(ctx, m, top_first)
}

/// The same vanishing placed on the lowest slot, at level `2^t - 3 + k - 1`.
pub fn vanishing_at_bottom(ctx: &ClassContext, t: u32) -> Result<RelationVec> {
    let k = ctx.k();
    let n = (1i64 << t) - 3 + k as i64 - 1;
    let mut top_first = vec![Poly2::zero(); k];
    top_first[k - 1] = Poly2::one();
    RelationVec::from_top_first(ctx, n, top_first)
}

#[derive(Clone, Debug)]
pub struct ADClasses {
    pub n: usize,
    pub t: u32,
    /// `r_{j-1} p_n + w_3 r_{j-2} p_{n-1} + r_j p_{n-2}`.
    pub a: Poly2,
    /// `q_i p_n + q_{i+1} p_{n-1} + w_3 q_{i-1} p_{n-2}`.
    pub d: Poly2,
}

/// `A_n` and `D_n` in `W1` for the indices of `t`.
pub fn build_ad_with(ctx: &ClassContext, n: usize, t: u32) -> Result<ADClasses> {
    k3_context(ctx)?;
    let CaseIndices { i, j, .. } = CaseIndices::with_t(n, t);
    let nn = n as i64;
    let w3 = Poly2::var(3);
    let (p0, p1, p2) = (ctx.p(nn), ctx.p(nn - 1), ctx.p(nn - 2));
    let a = ctx.r(j - 1).mul(&p0).add(&w3.mul(&ctx.r(j - 2)).mul(&p1)).add(&ctx.r(j).mul(&p2));
    let d = ctx.q(i).mul(&p0).add(&ctx.q(i + 1).mul(&p1)).add(&w3.mul(&ctx.q(i - 1)).mul(&p2));
    Ok(ADClasses { n, t, a, d })
}

pub fn build_ad(ctx: &ClassContext, n: usize) -> Result<ADClasses> {
    let c = k3_range(n)?;
    build_ad_with(ctx, n, c.t)
}

/// `w_1 A_n = sum f Q` and `w_1 D_n = sum g Q` for the coefficient vectors
/// `f, g` of the two relations, since `w_1 p_l = Q_l + q_l`.
pub fn ad_lift_identity(ctx: &ClassContext, ad: &ADClasses) -> bool {
    let CaseIndices { i, j, .. } = CaseIndices::with_t(ad.n, ad.t);
    let n = ad.n as i64;
    let w3 = Poly2::var(3);
    let big = |x| ctx.Q(x);
    let sa = ctx.r(j - 1).mul(&big(n)).add(&w3.mul(&ctx.r(j - 2)).mul(&big(n - 1))).add(&ctx.r(j).mul(&big(n - 2)));
    let sd = ctx.q(i).mul(&big(n)).add(&ctx.q(i + 1).mul(&big(n - 1))).add(&w3.mul(&ctx.q(i - 1)).mul(&big(n - 2)));
    ad.a.mul_var(1) == sa && ad.d.mul_var(1) == sd
}

/// Membership of a homogeneous `f` in the ideal `(Q_{n-2}, Q_{n-1}, Q_n)` of `W1`.
pub fn in_big_q_ideal(ctx: &ClassContext, n: usize, f: &Poly2) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let deg = f.homogeneous_degree().ok_or_else(|| Error::usage("not homogeneous".into()))?;
    let vars = VarSet::w1(ctx.k());
    let target = mono_basis(vars, deg);
    let mut span = Echelon::new(target.dim());
    for l in n.saturating_sub(2)..=n {
        let g = ctx.Q(l as i64);
        if g.is_zero() || l > deg {
            continue;
        }
        for m in mono_basis(vars, deg - l).monos() {
            span.insert(target.coords(&g.mul_mono(m))?);
        }
    }
    Ok(span.contains(&target.coords(f)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Square {
    A,
    D,
}

/// `A_n^2` (for `2^{t-1} <= n < 2^t - 3`) or `D_n^2` (for `2^{t-1} < n <= 2^t - 3`)
/// lies in `(Q_{n-2}, Q_{n-1}, Q_n)`.
pub fn square_in_ideal(ctx: &ClassContext, n: usize, which: Square) -> Result<bool> {
    k3_context(ctx)?;
    let f = match which {
        Square::D => {
            let t = binary_t(n);
            if n < 5 || n > (1 << t) - 3 {
                return Err(Error::usage(format!("D_{n}: need 2^(t-1) < n <= 2^t - 3")));
            }
            build_ad_with(ctx, n, t)?.d
        }
        Square::A => {
            // the t with 2^{t-1} <= n < 2^t
            let t = n.ilog2() + 1;
            if n < 4 || n + 3 >= 1 << t {
                return Err(Error::usage(format!("A_{n}: need 2^(t-1) <= n < 2^t - 3")));
            }
            build_ad_with(ctx, n, t)?.a
        }
    };
    in_big_q_ideal(ctx, n, &f.square())
}

/// `r_{2^{t-1}-2} = q_{2^t-4}`, `w_3 r_{2^{t-1}-4} = q_{2^t-5}` and
/// `r_{2^{t-1}-1} = q_{2^t-2}`.
pub fn rq_lemma(ctx: &ClassContext, t: u32) -> Result<bool> {
    k3_context(ctx)?;
    let h = 1i64 << (t - 1);
    let f = 1i64 << t;
    let w3 = Poly2::var(3);
    Ok(*ctx.r(h - 2) == *ctx.q(f - 4)
        && w3.mul(&ctx.r(h - 4)) == *ctx.q(f - 5)
        && *ctx.r(h - 1) == *ctx.q(f - 2))
}

/// Writes each closed-form relation through `(u, v)` as an element of
/// `Lambda^1`: the three results are the columns of `d_2`, hence boundaries.
pub fn closed_relations_are_boundaries(ctx: &Arc<ClassContext>, n: usize) -> Result<bool> {
    let (u, v) = k3_kernel_basis(ctx, n)?;
    let CaseIndices { i, j, .. } = k3_range(n)?;
    let nn = n as i64;
    let w3 = Poly2::var(3);
    // (coefficient on u, coefficient on v) for each relation
    let lambda = [
        ((*ctx.q(i)).clone(), (*ctx.r(j - 1)).clone()),
        ((*ctx.q(i + 1)).clone(), w3.mul(&ctx.r(j - 2))),
        (w3.mul(&ctx.q(i - 1)), (*ctx.r(j)).clone()),
    ];
    let (q0, q1, q2) = ((*ctx.q(nn - 2)).clone(), (*ctx.q(nn - 1)).clone(), (*ctx.q(nn)).clone());
    let z = Poly2::zero();
    let d2_columns = [[q1.clone(), q0.clone(), z.clone()], [q2.clone(), z.clone(), q0], [z, q2, q1]];
    let kc = KoszulComplex::with_context(ctx.clone(), n)?;
    for ((lu, lv), col) in lambda.iter().zip(&d2_columns) {
        let coeffs: Vec<Poly2> = (0..3).map(|s| lu.mul(&u.coeffs[s]).add(&lv.mul(&v.coeffs[s]))).collect();
        if coeffs != col {
            return Ok(false);
        }
        let deg = lu
            .homogeneous_degree()
            .map(|d| d + u.koszul_degree)
            .or_else(|| lv.homogeneous_degree().map(|d| d + v.koszul_degree))
            .unwrap_or(0);
        if !kc.is_boundary(deg, &coeffs)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The algebra `C` is concentrated below every closed-form relation degree.
pub fn relations_above_top(c: &GradedAlgebra, pres: &Presentation) -> bool {
    pres.relation_degrees.iter().all(|&b| b > c.top_degree())
}
