//! Identity batteries behind `ogc verify`.

use std::sync::Arc;

use serde_json::json;

use ogc_core::classes::*;
use ogc_core::ext::ext_from;
use ogc_core::koszul::{manifold_dim, KoszulComplex};
use ogc_core::poly::Poly2;
use ogc_core::presentation::*;
use ogc_core::syzygy::*;

use crate::args::Suite;
use crate::error::{CliError, CliResult};
use crate::Report;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, failures: Vec<String>) -> Check {
    let pass = failures.is_empty();
    let detail = failures.into_iter().take(5).collect::<Vec<_>>().join("; ");
    Check { name: name.into(), pass, detail }
}

fn k3ctx() -> Arc<ClassContext> {
    Arc::new(ClassContext::new(3))
}

/// Inclusive `n` range of the rank 3 theorem for a given `t`.
fn k3_range(t: u32) -> std::ops::RangeInclusive<usize> {
    (1usize << (t - 1)) + 1..=(1usize << t) - 4
}

pub fn suite_range(suite: Suite) -> std::ops::RangeInclusive<u32> {
    match suite {
        Suite::K3 => 4..=6,
        Suite::Identities => 2..=6,
        Suite::Structural => 0..=u32::MAX,
    }
}

pub fn run_suite(suite: Suite, t_max: u32) -> CliResult<Vec<Check>> {
    let range = suite_range(suite);
    if !range.contains(&t_max) {
        return Err(CliError::Usage(format!("--t-max {t_max} outside {}..={} for this suite", range.start(), range.end())));
    }
    match suite {
        Suite::K3 => k3_suite(t_max),
        Suite::Identities => identities(t_max),
        Suite::Structural => structural(),
    }
}

pub fn run(suite: Suite, t_max: u32) -> CliResult<Report> {
    let checks = run_suite(suite, t_max)?;
    let mut text = String::new();
    for c in &checks {
        if c.pass {
            text.push_str(&format!("PASS {}\n", c.name));
        } else {
            text.push_str(&format!("FAIL {}: {}\n", c.name, c.detail));
        }
    }
    let passed = checks.iter().all(|c| c.pass);
    let rows: Vec<_> = checks.iter().map(|c| json!({"check": c.name, "pass": c.pass, "detail": c.detail})).collect();
    Ok(Report { text, json: json!({"pass": passed, "checks": rows}), passed })
}

fn multinomial_exact(a: &[u64]) -> u128 {
    let mut acc: u128 = 1;
    let mut total: u64 = 0;
    for &x in a {
        for i in 1..=x {
            total += 1;
            acc = acc * total as u128 / i as u128;
        }
    }
    acc
}

fn tuples(len: usize, max_sum: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for t in &out {
            let used: u64 = t.iter().sum();
            for x in 0..=max_sum - used {
                let mut u = t.clone();
                u.push(x);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// Exponent vectors `(a_2..a_k)` with `sum i a_i = w`.
fn weighted(k: usize, w: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut stack = vec![(2usize, 0u64, Vec::<u64>::new())];
    while let Some((i, acc, a)) = stack.pop() {
        if i > k {
            if acc == w {
                out.push(a);
            }
            continue;
        }
        let mut x = 0;
        while acc + x * i as u64 <= w {
            let mut b = a.clone();
            b.push(x);
            stack.push((i + 1, acc + x * i as u64, b));
            x += 1;
        }
    }
    out
}

fn identities(t_max: u32) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();

    let mut triple = Vec::new();
    let mut pw = Vec::new();
    for k in 2..=6 {
        let ctx = ClassContext::new(k);
        for j in 0..=60usize {
            let q = ctx.q(j as i64);
            let det = giambelli_q(k, j);
            if *q != q_closed_form(k, j) || *q != det.kill_var(1) || *ctx.Q(j as i64) != det {
                triple.push(format!("k={k} j={j}"));
            }
            if ctx.P(j as i64) != ctx.p(j as i64).mul_var(1) {
                pw.push(format!("k={k} j={j}"));
            }
        }
    }
    out.push(check("q: recursion = multinomial sum = determinant at w_1=0 (k<=6, j<=60)", triple));
    out.push(check("P = w_1 p = Q + q (k<=6, j<=60)", pw));

    let mut lucas = Vec::new();
    for len in 1..=4 {
        for a in tuples(len, 24) {
            if multinomial_mod2(&a) != (multinomial_exact(&a) % 2 == 1) {
                lucas.push(format!("{a:?}"));
            }
        }
    }
    out.push(check("multinomial parity vs exact integers (|a|<=24, <=4 entries)", lucas));

    let mut consec = Vec::new();
    for len in 1..=3 {
        for a in tuples(len, 20) {
            if a.iter().sum::<u64>() == 0 {
                continue;
            }
            let d = lucas_descents(&a);
            // 2^p is the largest power of two dividing every entry
            let p = a.iter().filter(|&&x| x > 0).map(|x| x.trailing_zeros()).min().unwrap();
            let lowest: Vec<usize> = (0..a.len()).filter(|&i| a[i] > 0 && a[i].trailing_zeros() == p).collect();
            let ok = if multinomial_mod2(&a) {
                d.len() == 1 && lowest == d
            } else {
                d.is_empty() || (d.len() == 2 && lowest == d)
            };
            if !ok {
                consec.push(format!("{a:?} -> {d:?}"));
            }
        }
    }
    out.push(check("consecutive multinomials (|a|<=20, <=3 entries)", consec));

    let mut sums = Vec::new();
    for k in 2..=6 {
        for t in 1..=t_max {
            for a in weighted(k, 1 << t) {
                let mut rhs = false;
                for idx in (0..a.len()).step_by(2) {
                    if a[idx] > 0 {
                        let mut b = a.clone();
                        b[idx] -= 1;
                        rhs ^= multinomial_mod2(&b);
                    }
                }
                if multinomial_mod2(&a) != rhs {
                    sums.push(format!("k={k} a={a:?}"));
                }
            }
        }
    }
    out.push(check(format!("multinomial sums at weight 2^t (k<=6, t<={t_max})"), sums));

    let mut fund = Vec::new();
    for k in 3..=6 {
        let ctx = ClassContext::new(k);
        for n in k + 1..=40 {
            let p2 = n.is_power_of_two();
            if check_fundamental(&ctx, n) != p2 || check_fundamental_odd(&ctx, n) != p2 {
                fund.push(format!("k={k} n={n}"));
            }
        }
    }
    let ctx2 = ClassContext::new(2);
    if !(3..=40).all(|n| check_fundamental(&ctx2, n)) {
        fund.push("k=2 even part should vanish identically".into());
    }
    out.push(check("fundamental relation holds iff n = 2^t (3<=k<=6, k<n<=40; k=2 degenerate)", fund));

    let mut vanish = Vec::new();
    let c3 = k3ctx();
    for t in 2..=6u32 {
        let j = (1i64 << t) - 3;
        if !c3.q(j).is_zero() || !ClassContext::new(4).q(j).is_zero() {
            vanish.push(format!("t={t}"));
        }
    }
    for j in 0..=120i64 {
        let expected = (j + 3).count_ones() == 1 && j + 3 >= 4;
        if c3.q(j).is_zero() != expected {
            vanish.push(format!("k=3 j={j}"));
        }
    }
    out.push(check("q_{2^t-3} = 0 for k=3,4; k=3 zeros exactly there (j<=120)", vanish));

    let rs: Vec<String> = (0..=60).filter(|&j| *c3.r(j as i64) != r_closed_form(j)).map(|j| format!("j={j}")).collect();
    out.push(check("r recursion = closed form (j<=60)", rs));

    let mut lin = Vec::new();
    for t in 3..=t_max.max(3) {
        for n in (1usize << (t - 1)) - 1..=(1usize << t) - 3 {
            if !lemma_linear_eqs_with(&c3, n, t)? {
                lin.push(format!("t={t} n={n}"));
            }
        }
    }
    out.push(check(format!("three linear equations (t=3..{})", t_max.max(3)), lin));

    let mut rq = Vec::new();
    for t in 2..=t_max {
        if !rq_lemma(&c3, t)? {
            rq.push(format!("t={t}"));
        }
    }
    out.push(check(format!("r/q identities (t=2..{t_max})"), rq));
    Ok(out)
}

fn k3_suite(t_max: u32) -> CliResult<Vec<Check>> {
    let ctx = k3ctx();
    let mut out = Vec::new();
    for t in 4..=t_max {
        let mut pres = Vec::new();
        let mut minors = Vec::new();
        let mut bnd = Vec::new();
        let mut lift = Vec::new();
        for n in k3_range(t) {
            let c = present_c_with(&ctx, n)?;
            let kd = present_k_with(&ctx, &c, KRoute::Auto, 2)?;
            let closed = k3_closed_presentation(&ctx, n)?;
            let mut want_gens = vec![(1 << t) - 4, 3 * n - (1 << t) - 1];
            want_gens.sort_unstable();
            let want_rels = vec![2 * n - 4, 2 * n - 3, 2 * n - 2];
            let dims = kd.presentation.presented_dims(&c.algebra)?;
            if kd.presentation.generator_degrees != closed.generator_degrees
                || closed.generator_degrees != want_gens
                || kd.presentation.relation_degrees != closed.relation_degrees
                || closed.relation_degrees != want_rels
                || closed.presented_dims(&c.algebra)? != dims
                || dims != kd.module.dims()
            {
                pres.push(format!("n={n}: engine {:?}/{:?}", kd.presentation.generator_degrees, kd.presentation.relation_degrees));
            }
            let (u, v) = k3_kernel_basis(&ctx, n)?;
            if !k3_minors_hold(&ctx, &u, &v) {
                minors.push(format!("n={n}"));
            }
            if !closed_relations_are_boundaries(&ctx, n)? || !relations_above_top(&c.algebra, &closed) {
                bnd.push(format!("n={n}"));
            }
            let ad = build_ad(&ctx, n)?;
            if !ad_lift_identity(&ctx, &ad) {
                lift.push(format!("n={n}"));
            }
        }
        let r = k3_range(t);
        out.push(check(format!("t={t}: engine presentation = closed form, n={}..{}", r.start(), r.end()), pres));
        out.push(check(format!("t={t}: kernel basis minors"), minors));
        out.push(check(format!("t={t}: closed relations are Koszul boundaries"), bnd));
        out.push(check(format!("t={t}: w_1 A = sum f Q"), lift));

        let mut truths = Vec::new();
        let n = 1usize << (t - 1);
        let start = vanishing_at_top(&ctx, t)?;
        let rel = descend(&ctx, &start, (1usize << t) - 3 - n)?;
        if !boundary_membership(&KoszulComplex::with_context(ctx.clone(), n)?, &rel)? {
            truths.push(format!("descended relation at n={n} is not a boundary"));
        }
        let n = (1usize << t) - 3;
        let start = vanishing_at_bottom(&ctx, t - 1)?;
        let mut rel = ascend(&ctx, &start, n - start.n as usize)?;
        rel.coeffs[2] = Poly2::zero();
        if !boundary_membership(&KoszulComplex::with_context(ctx.clone(), n)?, &rel)? {
            truths.push(format!("ascended relation at n={n} off the q_n slot is not a boundary"));
        }
        out.push(check(format!("t={t}: boundary memberships"), truths));

        if t <= 5 {
            let mut sq = Vec::new();
            for n in (1usize << (t - 1)) + 1..=(1usize << t) - 3 {
                if !square_in_ideal(&ctx, n, Square::D)? {
                    sq.push(format!("D n={n}"));
                }
            }
            for n in 1usize << (t - 1)..(1usize << t) - 3 {
                if !square_in_ideal(&ctx, n, Square::A)? {
                    sq.push(format!("A n={n}"));
                }
            }
            out.push(check(format!("t={t}: squares of A and D lie in (Q_{{n-2}}, Q_{{n-1}}, Q_n)"), sq));
        }
    }
    let mut ext = Vec::new();
    for n in 9..=28 {
        let c = present_c_with(&ctx, n)?;
        let kd = present_k_with(&ctx, &c, KRoute::Auto, 3)?;
        let r = ext_from(&c.algebra, &kd);
        if r.ext1_rank != 0 || !r.cocycles.is_empty() {
            ext.push(format!("n={n}: rank {}", r.ext1_rank));
        }
    }
    out.push(check("Ext^1_C(K, C)_0 = 0 for k=3, 9<=n<=28", ext));
    Ok(out)
}

/// The cases covered by the structural battery.
pub fn structural_cases() -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for (k, hi) in [(2, 12), (3, 20), (4, 18), (5, 13), (6, 12)] {
        for n in k + 1..=hi {
            v.push((k, n));
        }
    }
    v
}

/// Cases where `K` is expected to be free of rank one.
pub const ONE_GENERATOR: [(usize, usize); 16] = [
    (3, 13),
    (3, 14),
    (3, 15),
    (3, 16),
    (5, 16),
    (5, 32),
    (4, 13),
    (4, 14),
    (4, 15),
    (4, 16),
    (4, 17),
    (4, 29),
    (4, 30),
    (4, 31),
    (4, 32),
    (4, 33),
];

fn structural() -> CliResult<Vec<Check>> {
    let mut sq = Vec::new();
    let mut higher = Vec::new();
    let mut pairing = Vec::new();
    let mut poincare = Vec::new();
    let mut cyclic = Vec::new();
    for (k, n) in structural_cases() {
        let ctx = Arc::new(ClassContext::new(k));
        let kc = KoszulComplex::with_context(ctx.clone(), n)?;
        let c = present_c_with(&ctx, n)?;
        let big_n = manifold_dim(k, n);
        for d in 0..=big_n + 1 {
            if !kc.check_square_zero(d)? {
                sq.push(format!("k={k} n={n} d={d}"));
            }
            for i in 2..=k {
                if kc.homology_dim(i, d)? != 0 {
                    higher.push(format!("k={k} n={n} i={i} d={d}"));
                }
            }
            let h1 = kc.homology_dim(1, d)?;
            let want = if d == 0 { 0 } else { c.algebra.dim(big_n + 1 - d) };
            if kc.homology_dim(0, d)? != c.algebra.dim(d) || h1 != want {
                pairing.push(format!("k={k} n={n} d={d}"));
            }
        }
        let kd = present_k_with(&ctx, &c, KRoute::Auto, 2)?;
        if !check_poincare(&c, &kd.module) {
            poincare.push(format!("k={k} n={n}"));
        }
        if kd.presentation.generator_degrees.len() == 1 && !kd.presentation.relation_degrees.is_empty() {
            cyclic.push(format!("k={k} n={n}"));
        }
    }
    for (k, n) in ONE_GENERATOR {
        let kd = present_k(k, n)?;
        if !check_free_cyclic(&kd) {
            cyclic.push(format!("k={k} n={n}: generators {:?}", kd.presentation.generator_degrees));
        }
    }
    Ok(vec![
        check("d o d = 0 in all degrees up to N+1", sq),
        check("H_i = 0 for i >= 2", higher),
        check("H_0 = C and dim H_1 in Koszul degree d = dim C_{N+1-d}", pairing),
        check("Poincare duality dim C_d = dim K_{N-d}", poincare),
        check("one generator implies no relations; listed free cyclic cases", cyclic),
    ])
}
