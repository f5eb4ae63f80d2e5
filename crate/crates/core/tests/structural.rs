use std::sync::Arc;

use ogc_core::algebra::ColumnOrder;
use ogc_core::classes::ClassContext;
use ogc_core::ext::{ext_from, ext_normal_form, ext_with_order};
use ogc_core::koszul::{manifold_dim, KoszulComplex};
use ogc_core::poly::hilbert_w2;
use ogc_core::presentation::*;
use ogc_core::Error;

fn small_cases() -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for (k, hi) in [(2, 10), (3, 14), (4, 12), (5, 10), (6, 9)] {
        for n in k + 1..=hi {
            v.push((k, n));
        }
    }
    v
}

#[test]
fn koszul_complex_invariants() {
    for (k, n) in small_cases() {
        let kc = KoszulComplex::build(k, n).unwrap();
        let big_n = manifold_dim(k, n);
        let c = present_c(k, n).unwrap();
        for d in 0..=big_n + 1 + k {
            assert!(kc.check_square_zero(d).unwrap(), "d∘d k={k} n={n} d={d}");
            let d1 = kc.differential(1, d).unwrap();
            let ker = if d1.nrows() == 0 { 0 } else { d1.left_kernel_basis().len() };
            let free: usize = kc.shifts(1).iter().filter(|&&s| s <= d).map(|&s| hilbert_w2(k, d - s)).sum();
            assert_eq!(ker, free - d1.rank(), "kernel bookkeeping k={k} n={n} d={d}");
            for i in 2..=k {
                assert_eq!(kc.homology_dim(i, d).unwrap(), 0, "H_{i} k={k} n={n} d={d}");
            }
            assert_eq!(kc.homology_dim(0, d).unwrap(), c.algebra.dim(d), "H_0 = C k={k} n={n} d={d}");
            let h1 = kc.homology_dim(1, d).unwrap();
            if d > big_n + 1 {
                assert_eq!(h1, 0, "H_1 above N+1, k={k} n={n} d={d}");
            } else if d >= 1 {
                // Koszul degree d is cohomological degree d - 1
                assert_eq!(h1, c.algebra.dim(big_n + 1 - d), "pairing k={k} n={n} d={d}");
            }
        }
    }
}

#[test]
fn reduced_and_full_routes_agree() {
    for (k, n) in small_cases() {
        let ctx = Arc::new(ClassContext::new(k));
        let (full, _) = anomalous_module(&ctx, n, KRoute::Full).unwrap();
        let (auto, route) = anomalous_module(&ctx, n, KRoute::Auto).unwrap();
        assert_eq!(full.dims(), auto.dims(), "k={k} n={n} via {route:?}");
        let gf: Vec<usize> = full.minimal_generators().iter().map(|g| g.0).collect();
        let ga: Vec<usize> = auto.minimal_generators().iter().map(|g| g.0).collect();
        assert_eq!(gf, ga, "k={k} n={n}");
        let c = present_c_with(&ctx, n).unwrap();
        let pf = present_k_with(&ctx, &c, KRoute::Full, 2).unwrap();
        let pa = present_k_with(&ctx, &c, KRoute::Auto, 2).unwrap();
        assert_eq!(pf.presentation.relation_degrees, pa.presentation.relation_degrees, "k={k} n={n}");
    }
}

#[test]
fn poincare_and_minimality() {
    for (k, hi) in [(3, 30), (4, 24), (5, 20), (6, 14)] {
        let ctx = Arc::new(ClassContext::new(k));
        for n in k + 1..=hi {
            let c = present_c_with(&ctx, n).unwrap();
            let kd = present_k_with(&ctx, &c, KRoute::Auto, 2).unwrap();
            assert!(check_poincare(&c, &kd.module), "k={k} n={n}");
            assert_eq!(c.algebra.total_dim(), kd.module.dims().iter().sum::<usize>(), "k={k} n={n}");
            let gens = kd.module.minimal_generators();
            assert_eq!(kd.module.generated_dims(&gens), kd.module.dims().to_vec(), "k={k} n={n}");
            let again: Vec<usize> = kd.module.minimal_generators().iter().map(|g| g.0).collect();
            assert_eq!(again, kd.presentation.generator_degrees, "k={k} n={n}");
            let presented = kd.presentation.presented_dims(&c.algebra).unwrap();
            assert_eq!(presented, kd.module.dims().to_vec(), "k={k} n={n}");
            if kd.presentation.generator_degrees.len() == 1 {
                assert!(kd.presentation.relation_degrees.is_empty(), "k={k} n={n}");
            }
        }
    }
}

#[test]
fn resolution_is_exact() {
    for (k, n) in [(3, 12), (4, 18), (4, 20), (5, 13), (6, 12)] {
        let ctx = Arc::new(ClassContext::new(k));
        let c = present_c_with(&ctx, n).unwrap();
        let kd = present_k_with(&ctx, &c, KRoute::Auto, 3).unwrap();
        let r = &kd.resolution;
        let rank = |s: usize, d: usize| r[s].maps.get(d).map_or(0, |m| m.rank());
        let dim = |s: usize, d: usize| r[s].free.module().dim(d);
        for d in 0..=c.top_degree() + 80 {
            assert_eq!(rank(0, d), kd.module.dim(d), "P0 onto K k={k} n={n} d={d}");
            assert_eq!(dim(0, d) - rank(0, d), rank(1, d), "exact at P0 k={k} n={n} d={d}");
            assert_eq!(dim(1, d) - rank(1, d), rank(2, d), "exact at P1 k={k} n={n} d={d}");
        }
    }
}

#[test]
fn one_generator_cases() {
    let cases = [(3, 13), (3, 14), (3, 15), (3, 16), (5, 16), (5, 32)]
        .into_iter()
        .chain((13..=17).map(|n| (4, n)))
        .chain((29..=33).map(|n| (4, n)));
    for (k, n) in cases {
        let kd = present_k(k, n).unwrap();
        assert!(check_free_cyclic(&kd), "k={k} n={n}: {:?}", kd.presentation.generator_degrees);
    }
    for t in 4..=5u32 {
        for n in (1usize << t) - 3..=1 << t {
            assert!(check_free_cyclic(&present_k(3, n).unwrap()), "k=3 n={n}");
        }
    }
}

#[test]
fn presentation_examples() {
    let c = present_c(2, 3).unwrap();
    assert_eq!(c.algebra.total_dim(), 1);
    assert_eq!(c.ideal_min_gens.iter().map(|g| g.1.to_string()).collect::<Vec<_>>(), vec!["w_2"]);
    let c = present_c(3, 12).unwrap();
    assert_eq!((c.top_degree(), c.algebra.dim(15)), (15, 1));
    let c = present_c(4, 18).unwrap();
    assert_eq!((c.algebra.dim(31), c.algebra.dim(32), c.algebra.dim(34)), (1, 2, 1));
    let kd = present_k(3, 12).unwrap();
    assert_eq!(kd.presentation.generator_degrees, vec![12, 19]);
    assert_eq!(kd.presentation.relation_degrees, vec![20, 21, 22]);
    let kd = present_k(4, 18).unwrap();
    assert_eq!(kd.presentation.generator_degrees, vec![20, 28]);
    assert_eq!(kd.presentation.relation_degrees, vec![31, 32, 34]);
    let kd = present_k(6, 12).unwrap();
    assert_eq!(kd.presentation.generator_degrees, vec![14, 15, 16]);
    assert_eq!(kd.presentation.relation_degrees, vec![17, 19, 19, 20, 20, 21]);
    let kd = present_k(4, 20).unwrap();
    // Koszul degrees of the relation table row are these plus one
    assert_eq!(kd.presentation.relation_degrees, vec![34, 35, 36, 40, 44, 44]);
}

#[test]
fn nilpotency() {
    let c = present_c(3, 5).unwrap();
    let e = nilpotency_witness(&c, 2).unwrap();
    assert!(e >= 1);
    let mono = ogc_core::poly::Poly2::var(2).pow(e);
    assert!(c.algebra.normal_form(&mono, 2 * e as usize).unwrap().is_zero());
    if e > 1 {
        let lower = ogc_core::poly::Poly2::var(2).pow(e - 1);
        assert!(!c.algebra.normal_form(&lower, 2 * (e - 1) as usize).unwrap().is_zero());
    }
    assert!(nilpotency_witness(&c, 4).is_err());
}

#[test]
fn ker_d1_examples() {
    let deg = |k, n| KoszulComplex::build(k, n).unwrap().min_gens_ker_d1(None).unwrap().degrees();
    assert_eq!(deg(4, 17), vec![17, 29, 30, 31]);
    assert_eq!(deg(4, 32), vec![29, 61, 62, 63]);
    assert_eq!(deg(3, 12), vec![13, 20]);
    let kc = KoszulComplex::build(3, 12).unwrap();
    assert!(matches!(kc.min_gens_ker_d1(Some(21)), Err(Error::CapTooLow(_))));
    assert_eq!(kc.min_gens_ker_d1(Some(24)).unwrap().degrees(), vec![13, 20]);
}

#[test]
fn charrank_values() {
    assert_eq!(charrank(5, 10).unwrap(), 10);
    assert_eq!(charrank(5, 11).unwrap(), 13);
    assert_eq!(charrank(6, 12).unwrap(), 13);
    assert_eq!(charrank(5, 16).unwrap(), 14);
    assert_eq!(charrank(6, 18).unwrap(), 26);
    assert_eq!(charrank(6, 19).unwrap(), 30);
    assert_eq!(conjecture_value(6, 19, 5).unwrap(), 30);
    assert!(conjecture_value(4, 19, 5).is_err());
    assert_eq!(binary_t(16), 4);
    assert_eq!(binary_t(17), 5);
}

#[test]
fn charrank_is_symmetric() {
    for n in 4..=12 {
        for k in 2..=n / 2 {
            if n - k > 6 {
                continue;
            }
            assert_eq!(charrank(k, n).unwrap(), charrank(n - k, n).unwrap(), "k={k} n={n}");
        }
    }
}

#[test]
fn ext_worked_examples() {
    let r = ext_normal_form(4, 18).unwrap();
    assert_eq!((r.ext1_rank, r.d0_target_dim, r.d0_rank), (1, 4, 3));
    assert_eq!(r.cocycles.len(), 1);
    assert!(r.cocycles[0].iter().all(|(_, deg, _)| *deg == 34));
    let r = ext_normal_form(6, 12).unwrap();
    assert_eq!((r.ext1_rank, r.d0_rank, r.d1_rank), (1, 7, 1));
    // Hom(P_1, C)_0 has dimension 9; its cocycles form an 8-dimensional space
    assert_eq!((r.d0_target_dim, r.z1_dim), (9, 8));
    assert_eq!(r.ext1_rank, r.z1_dim - r.d0_rank);
    assert_eq!(ext_normal_form(4, 17).unwrap().ext1_rank, 0);
    assert!(ext_normal_form(3, 12).unwrap().cocycles.is_empty());
}

#[test]
fn ext_vanishes_for_rank_three() {
    let ctx = Arc::new(ClassContext::new(3));
    for n in 9..=28 {
        let c = present_c_with(&ctx, n).unwrap();
        let kd = present_k_with(&ctx, &c, KRoute::Auto, 3).unwrap();
        let r = ext_from(&c.algebra, &kd);
        assert_eq!(r.ext1_rank, 0, "n={n}");
        if kd.presentation.relation_degrees.iter().all(|&b| b > c.top_degree()) {
            assert_eq!(r.d0_target_dim, 0, "n={n}");
        }
        if kd.presentation.generator_degrees.len() == 1 {
            assert!(kd.presentation.relation_degrees.is_empty());
        }
    }
}

#[test]
fn ext_is_basis_independent() {
    for (k, n) in [(4, 18), (4, 24), (5, 13), (6, 12), (5, 17)] {
        let a = ext_with_order(k, n, ColumnOrder::Standard).unwrap();
        let b = ext_with_order(k, n, ColumnOrder::Reversed).unwrap();
        assert_eq!(a.ext1_rank, b.ext1_rank, "k={k} n={n}");
        assert_eq!(a.z1_dim, b.z1_dim);
        assert_eq!(a.d0_rank, b.d0_rank);
    }
}

#[test]
fn charrank_scan_matches_module() {
    for (k, n) in small_cases() {
        let ctx = Arc::new(ClassContext::new(k));
        let (m, _) = anomalous_module(&ctx, n, KRoute::Auto).unwrap();
        assert_eq!(charrank(k, n).unwrap(), charrank_of(&m, manifold_dim(k, n)), "k={k} n={n}");
    }
}

#[test]
fn ker_d1_at_k4_n30_from_a_regular_subsequence() {
    // q_29 = 0 splits off e_29; if (q_27, q_28, q_30) is regular, the rest of
    // ker d_1 is minimally generated by the three pair boundaries
    let ctx = Arc::new(ClassContext::new(4));
    assert!(ctx.q(29).is_zero());
    let rest: Vec<_> = [27, 28, 30].iter().map(|&j| (*ctx.q(j)).clone()).collect();
    let finite = ogc_core::algebra::GradedAlgebra::build(4, &rest, None, 400).unwrap();
    let series = ogc_core::algebra::complete_intersection_series(4, &[27, 28, 30], finite.top_degree() + 10);
    for (d, &s) in series.iter().enumerate() {
        assert_eq!(finite.dim(d) as i64, s, "complete intersection in degree {d}");
    }
    let expected = vec![29, 27 + 28, 27 + 30, 28 + 30];
    assert_eq!(KoszulComplex::with_context(ctx, 30).unwrap().min_gens_ker_d1(None).unwrap().degrees(), expected);
}
