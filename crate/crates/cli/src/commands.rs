use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use ogc_core::classes::ClassContext;
use ogc_core::ext::{ext_normal_form, ExtReport};
use ogc_core::koszul::{check_kn, manifold_dim, KoszulComplex};
use ogc_core::presentation::{charrank, present_c, present_k};

use crate::args::{ClassKind, Grading, ModuleKind, Span};
use crate::error::{CliError, CliResult};
use crate::Report;

/// Runs `f` over `items` on `jobs` threads, keeping the input order.
pub fn par_map<T, R, F>(jobs: usize, items: Vec<T>, f: F) -> CliResult<Vec<R>>
where
    T: Send,
    R: Send,
    F: Fn(T) -> CliResult<R> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Abort(format!("thread pool: {e}")))?;
    pool.install(|| items.into_par_iter().map(&f).collect())
}

pub fn join(degs: &[usize]) -> String {
    degs.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
}

fn pairs(h: &[(usize, usize)]) -> Value {
    Value::Array(h.iter().map(|&(d, n)| json!([d, n])).collect())
}

pub fn classes(k: usize, kind: ClassKind, j: Span) -> CliResult<Report> {
    if !(2..=ogc_core::poly::MAX_VARS).contains(&k) {
        return Err(CliError::Usage(format!("k={k} outside 2..={}", ogc_core::poly::MAX_VARS)));
    }
    if kind == ClassKind::R && k != 3 {
        return Err(CliError::Usage("the r sequence exists for k=3 only".into()));
    }
    let ctx = ClassContext::new(k);
    let sym = kind.symbol();
    let mut text = String::new();
    let mut values = Vec::new();
    for j in j.iter() {
        let ji = j as i64;
        let p = match kind {
            ClassKind::LowerQ => (*ctx.q(ji)).clone(),
            ClassKind::UpperQ => (*ctx.Q(ji)).clone(),
            ClassKind::LowerP => (*ctx.p(ji)).clone(),
            ClassKind::UpperP => ctx.P(ji),
            ClassKind::R => (*ctx.r(ji)).clone(),
        };
        text.push_str(&format!("{sym}_{j} = {p}\n"));
        values.push(json!({"j": j, "poly": p.to_string()}));
    }
    let json = json!({"k": k, "class": sym, "values": values});
    Ok(Report::ok(text, json))
}

pub fn koszul(k: usize, n: usize, max_index: usize) -> CliResult<Report> {
    check_kn(k, n)?;
    if max_index > k {
        return Err(CliError::Usage(format!("homological index {max_index} exceeds k={k}")));
    }
    let kc = KoszulComplex::build(k, n)?;
    let big_n = manifold_dim(k, n);
    let mut tables = vec![Vec::new(); max_index + 1];
    for d in 0..=big_n + 1 {
        for (i, t) in tables.iter_mut().enumerate() {
            let h = kc.homology_dim(i, d)?;
            if h > 0 {
                t.push((d, h));
            }
        }
    }
    let mut text = format!("koszul k={k} n={n} N={big_n} (Koszul degrees)\n");
    for (i, t) in tables.iter().enumerate() {
        text.push_str(&format!("H_{i}:"));
        for (d, h) in t {
            text.push_str(&format!(" {d}:{h}"));
        }
        text.push('\n');
    }
    let homology: Vec<Value> = tables.iter().enumerate().map(|(i, t)| json!({"i": i, "dims": pairs(t)})).collect();
    let json = json!({"k": k, "n": n, "manifold_dim": big_n, "grading": "koszul", "homology": homology});
    Ok(Report::ok(text, json))
}

pub fn present(k: usize, n: usize, module: ModuleKind, grading: Grading, cap: Option<usize>) -> CliResult<Report> {
    check_kn(k, n)?;
    match module {
        ModuleKind::C => {
            let c = present_c(k, n)?;
            let gens: Vec<Value> = c
                .ideal_min_gens
                .iter()
                .map(|(j, q)| json!({"j": j, "degree": j, "poly": q.to_string()}))
                .collect();
            let mut text = format!("C k={k} n={n} top={}\n", c.top_degree());
            for (j, q) in &c.ideal_min_gens {
                text.push_str(&format!("q_{j} = {q}\n"));
            }
            text.push_str(&format!("hilbert: {}\n", hilbert_text(&c.hilbert())));
            let json = json!({
                "k": k, "n": n, "module": "C", "grading": "cohomological",
                "ideal_generators": gens, "top_degree": c.top_degree(), "hilbert": pairs(&c.hilbert()),
            });
            Ok(Report::ok(text, json))
        }
        ModuleKind::K => {
            let kd = present_k(k, n)?;
            let s = shift(grading);
            let up = |v: &[usize]| v.iter().map(|d| d + s).collect::<Vec<_>>();
            let gens = up(&kd.presentation.generator_degrees);
            let rels = up(&kd.presentation.relation_degrees);
            let hilbert: Vec<(usize, usize)> = kd.hilbert().iter().map(|&(d, h)| (d + s, h)).collect();
            let rows: Vec<Value> = kd
                .presentation
                .relation_rows
                .iter()
                .map(|r| Value::Array(r.iter().map(|p| Value::String(p.to_string())).collect()))
                .collect();
            let mut text = format!("K k={k} n={n} ({} degrees)\n", grading_name(grading));
            text.push_str(&format!("generators: {}\n", join(&gens)));
            text.push_str(&format!("relations: {}\n", join(&rels)));
            for (deg, r) in rels.iter().zip(&kd.presentation.relation_rows) {
                let entries: Vec<String> = r.iter().map(|p| p.to_string()).collect();
                text.push_str(&format!("  {deg}: [{}]\n", entries.join(", ")));
            }
            text.push_str(&format!("hilbert: {}\n", hilbert_text(&hilbert)));
            let json = json!({
                "k": k, "n": n, "module": "K", "grading": grading_name(grading),
                "generators": gens, "relations": rels, "relation_rows": rows, "hilbert": pairs(&hilbert),
            });
            Ok(Report::ok(text, json))
        }
        ModuleKind::KerD1 => {
            let kc = KoszulComplex::build(k, n)?;
            let kd1 = kc.min_gens_ker_d1(cap)?;
            let gens: Vec<usize> = kd1.degrees().iter().map(|&d| d + shift(grading) - 1).collect();
            let text = format!(
                "ker(d_1) k={k} n={n} ({} degrees, cap {})\ngenerators: {}\n",
                grading_name(grading),
                kd1.cap,
                join(&gens)
            );
            let json = json!({
                "k": k, "n": n, "module": "ker_d1", "grading": grading_name(grading),
                "cap": kd1.cap, "generators": gens,
            });
            Ok(Report::ok(text, json))
        }
    }
}

fn shift(g: Grading) -> usize {
    match g {
        Grading::Koszul => 1,
        Grading::Cohomological => 0,
    }
}

fn grading_name(g: Grading) -> &'static str {
    match g {
        Grading::Koszul => "koszul",
        Grading::Cohomological => "cohomological",
    }
}

fn hilbert_text(h: &[(usize, usize)]) -> String {
    h.iter().map(|(d, n)| format!("{d}:{n}")).collect::<Vec<_>>().join(" ")
}

/// All valid `(k, n)` with `k` and `n` in the given ranges.
pub fn grid(k: Span, n: Span) -> CliResult<Vec<(usize, usize)>> {
    let cases: Vec<(usize, usize)> =
        k.iter().flat_map(|k| n.iter().map(move |n| (k, n))).filter(|&(k, n)| k >= 2 && n > k).collect();
    if cases.is_empty() {
        return Err(CliError::Usage("no (k, n) with 2 <= k < n in the given ranges".into()));
    }
    for &(k, _) in &cases {
        if k > ogc_core::poly::MAX_VARS {
            return Err(CliError::Usage(format!("k={k} exceeds the supported rank")));
        }
    }
    Ok(cases)
}

pub fn charranks(k: Span, n: Span, jobs: usize) -> CliResult<Report> {
    let cases = grid(k, n)?;
    let rows = par_map(jobs, cases, |(k, n)| Ok((k, n, charrank(k, n)?)))?;
    let mut text = String::new();
    let mut out = Vec::new();
    for (k, n, c) in rows {
        text.push_str(&format!("k={k} n={n} charrank={c}\n"));
        out.push(json!({"k": k, "n": n, "charrank": c}));
    }
    Ok(Report::ok(text, json!({"rows": out})))
}

/// Cocycle values keyed by `index@degree` of the relation, since several
/// relations may share a degree.
pub fn ext_json(r: &ExtReport) -> Value {
    let cocycles: Vec<Value> = r
        .cocycles
        .iter()
        .map(|c| {
            let mut m = Map::new();
            for (idx, deg, p) in c {
                m.insert(format!("{idx}@{deg}"), Value::String(p.to_string()));
            }
            Value::Object(m)
        })
        .collect();
    json!({
        "k": r.k, "n": r.n, "grading": "cohomological",
        "ext1_rank": r.ext1_rank, "z1_dim": r.z1_dim, "d0_rank": r.d0_rank, "d1_rank": r.d1_rank,
        "cochain_dim": r.d0_target_dim,
        "generator_degrees": r.generator_degrees, "relation_degrees": r.relation_degrees,
        "syzygy_degrees": r.syzygy_degrees, "cocycles": cocycles,
    })
}

pub fn ext(k: usize, n: usize) -> CliResult<Report> {
    check_kn(k, n)?;
    let r = ext_normal_form(k, n)?;
    let mut text = format!(
        "ext k={k} n={n}: rank {}\n  Hom(P_1,C)_0 dim {}, cocycles {}, d_0 rank {}, d_1 rank {}\n",
        r.ext1_rank, r.d0_target_dim, r.z1_dim, r.d0_rank, r.d1_rank
    );
    text.push_str(&format!("  generators {} | relations {}\n", join(&r.generator_degrees), join(&r.relation_degrees)));
    for (i, c) in r.cocycles.iter().enumerate() {
        let parts: Vec<String> = c.iter().map(|(idx, deg, p)| format!("{idx}@{deg} -> {p}")).collect();
        text.push_str(&format!("  cocycle {i}: {}\n", parts.join(", ")));
    }
    Ok(Report::ok(text, ext_json(&r)))
}

/// Shared context for many `n` at fixed `k`.
pub fn context(k: usize) -> Arc<ClassContext> {
    Arc::new(ClassContext::new(k))
}
