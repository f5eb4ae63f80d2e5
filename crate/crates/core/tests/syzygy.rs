use std::sync::Arc;

use ogc_core::classes::ClassContext;
use ogc_core::koszul::KoszulComplex;
use ogc_core::poly::{Mono, Poly2};
use ogc_core::presentation::{present_c_with, present_k_with, KRoute};
use ogc_core::syzygy::*;

fn var(i: usize) -> Poly2 {
    Poly2::var(i)
}

fn k3() -> Arc<ClassContext> {
    Arc::new(ClassContext::new(3))
}

#[test]
fn descend_k3_matches_closed_form() {
    let ctx = k3();
    for t in 3..=6u32 {
        let start = vanishing_at_top(&ctx, t).unwrap();
        assert_eq!(descend(&ctx, &start, 0).unwrap(), start);
        let m = (1usize << t) - 3;
        for i in 0..=40usize.min(m - 1) {
            let rel = descend(&ctx, &start, i).unwrap();
            let i = i as i64;
            let expect = vec![var(3).mul(&ctx.q(i - 1)), (*ctx.q(i + 1)).clone(), (*ctx.q(i)).clone()];
            assert_eq!(rel.coeffs, expect, "t={t} i={i}");
            assert_eq!(rel.koszul_degree, m);
        }
    }
}

#[test]
fn ascend_k3_matches_closed_form() {
    let ctx = k3();
    for t in 3..=5u32 {
        // q_{2^t-3} = 0 on the lowest slot at level 2^t - 1
        let start = vanishing_at_bottom(&ctx, t).unwrap();
        assert_eq!(start.n, (1i64 << t) - 1);
        assert_eq!(ascend(&ctx, &start, 0).unwrap(), start);
        for j in 0..=40i64 {
            let rel = ascend(&ctx, &start, j as usize).unwrap();
            let expect = vec![(*ctx.r(j)).clone(), var(3).mul(&ctx.r(j - 2)), (*ctx.r(j - 1)).clone()];
            assert_eq!(rel.coeffs, expect, "t={t} j={j}");
            assert_eq!(rel.koszul_degree as i64, (1i64 << t) - 3 + 3 * j);
        }
    }
}

#[test]
fn descend_k4_matches_closed_form() {
    let ctx = ClassContext::new(4);
    for t in 3..=6u32 {
        let start = vanishing_at_top(&ctx, t).unwrap();
        let m = (1usize << t) - 3;
        for i in 0..=40usize.min(m - 1) {
            let rel = descend(&ctx, &start, i).unwrap();
            let i = i as i64;
            let q = |x| (*ctx.q(x)).clone();
            let expect = vec![
                q(i + 3).add(&var(2).mul(&q(i + 1))).add(&var(3).mul(&q(i))),
                q(i + 2).add(&var(2).mul(&q(i))),
                q(i + 1),
                q(i),
            ];
            assert_eq!(rel.coeffs, expect, "t={t} i={i}");
        }
    }
}

#[test]
fn ascend_k4_matches_closed_form() {
    let ctx = ClassContext::new(4);
    // beta_3^{i+1} = w_3 beta_3^i + w_2 w_4 beta_3^{i-1} + w_4^3 beta_3^{i-3}
    let mut beta = vec![Poly2::one()];
    for i in 0..45usize {
        let get = |x: i64| if x < 0 { Poly2::zero() } else { beta[x as usize].clone() };
        let i = i as i64;
        let next = var(3)
            .mul(&get(i))
            .add(&var(2).mul(&var(4)).mul(&get(i - 1)))
            .add(&var(4).pow(3).mul(&get(i - 3)));
        beta.push(next);
    }
    let b = |x: i64| if x < 0 { Poly2::zero() } else { beta[x as usize].clone() };
    for t in 3..=5u32 {
        let start = vanishing_at_bottom(&ctx, t).unwrap();
        assert_eq!(start.n, 1i64 << t);
        for i in 0..=40i64 {
            let rel = ascend(&ctx, &start, i as usize).unwrap();
            let expect = vec![
                b(i),
                var(2).mul(&b(i - 1)).add(&var(4).pow(2).mul(&b(i - 3))),
                var(4).mul(&b(i - 2)),
                b(i - 1),
            ];
            assert_eq!(rel.coeffs, expect, "t={t} i={i}");
            assert_eq!(rel.koszul_degree as i64, (1i64 << t) - 3 + 4 * i);
        }
    }
}

#[test]
fn transport_rejects_non_relations() {
    let ctx = k3();
    let bogus = RelationVec { k: 3, n: 12, coeffs: vec![Poly2::one(), Poly2::zero(), Poly2::zero()], koszul_degree: 10 };
    assert!(descend(&ctx, &bogus, 1).is_err());
    assert!(ascend(&ctx, &bogus, 1).is_err());
}

#[test]
fn fundamental_vectors() {
    let ctx5 = ClassContext::new(5);
    let f = fundamental_vec(&ctx5, 16).unwrap();
    assert!(!f.degenerate);
    // slots q_12..q_16: w_4 q_12 + w_2 q_14 + q_16
    assert_eq!(f.relation.coeffs, vec![var(4), Poly2::zero(), var(2), Poly2::zero(), Poly2::one()]);
    assert_eq!(f.relation.koszul_degree, 16);

    let ctx6 = ClassContext::new(6);
    let f = fundamental_vec(&ctx6, 16).unwrap();
    // slots q_11..q_16: w_5 q_11 + w_3 q_13
    assert_eq!(f.relation.coeffs[0], var(5));
    assert_eq!(f.relation.coeffs[2], var(3));
    assert_eq!(f.relation.coeffs.iter().filter(|c| !c.is_zero()).count(), 2);

    let f = fundamental_vec(&k3(), 16).unwrap();
    assert_eq!(f.relation.coeffs, vec![var(2), Poly2::zero(), Poly2::one()]);

    let f = fundamental_vec(&ClassContext::new(2), 8).unwrap();
    assert!(f.degenerate);

    assert!(fundamental_vec(&ctx5, 12).is_err());
    for k in 3..=6 {
        let ctx = ClassContext::new(k);
        for t in 3..=6u32 {
            let n = 1usize << t;
            if n > k {
                let f = fundamental_vec(&ctx, n).unwrap();
                assert!(f.relation.evaluate(&ctx).is_zero());
            }
        }
    }
}

#[test]
fn kernel_basis_examples() {
    let ctx = k3();
    let (u, v) = k3_kernel_basis(&ctx, 12).unwrap();
    assert_eq!((v.koszul_degree, u.koszul_degree), (13, 20));
    assert!(k3_minors_hold(&ctx, &u, &v));
    let (u, v) = k3_kernel_basis(&ctx, 11).unwrap();
    assert_eq!((v.koszul_degree, u.koszul_degree), (13, 17));
    assert!(k3_kernel_basis(&ctx, 13).is_err());
    assert!(k3_kernel_basis(&ctx, 16).is_err());
    for t in 4..=6u32 {
        for n in (1usize << (t - 1)) + 1..=(1usize << t) - 4 {
            let (u, v) = k3_kernel_basis(&ctx, n).unwrap();
            assert!(k3_minors_hold(&ctx, &u, &v), "n={n}");
        }
    }
}

#[test]
fn kernel_basis_is_ker_d1_generators() {
    let ctx = k3();
    for n in [9usize, 10, 11, 12, 17, 20] {
        let kc = KoszulComplex::with_context(ctx.clone(), n).unwrap();
        let (u, v) = k3_kernel_basis(&ctx, n).unwrap();
        let kd1 = kc.min_gens_ker_d1(None).unwrap();
        let mut got: Vec<usize> = kd1.generators.iter().map(|(d, _)| *d).collect();
        got.sort();
        let mut want = vec![u.koszul_degree, v.koszul_degree];
        want.sort();
        assert_eq!(got, want, "n={n}");
    }
}

#[test]
fn linear_identities() {
    let ctx = k3();
    assert!(lemma_linear_eqs(&ctx, 12).unwrap());
    assert!(lemma_linear_eqs(&ctx, 20).unwrap());
    for t in 3..=6u32 {
        for n in (1usize << (t - 1)) - 1..=(1usize << t) - 3 {
            assert!(lemma_linear_eqs_with(&ctx, n, t).unwrap(), "t={t} n={n}");
        }
    }
}

#[test]
fn rq_identities() {
    let ctx = k3();
    for t in 2..=6 {
        assert!(rq_lemma(&ctx, t).unwrap(), "t={t}");
    }
}

#[test]
fn closed_presentation_examples() {
    let ctx = k3();
    let p = k3_closed_presentation(&ctx, 12).unwrap();
    assert_eq!(p.generator_degrees, vec![12, 19]);
    assert_eq!(p.relation_degrees, vec![20, 21, 22]);
    let p = k3_closed_presentation(&ctx, 24).unwrap();
    assert_eq!(p.generator_degrees, vec![28, 39]);
    assert_eq!(p.relation_degrees, vec![44, 45, 46]);
    let p = k3_closed_presentation(&ctx, 11).unwrap();
    assert_eq!(p.generator_degrees, vec![12, 16]);
    assert_eq!(p.relation_degrees, vec![18, 19, 20]);
    assert!(k3_closed_presentation(&ctx, 14).is_err());
}

#[test]
fn closed_presentation_agrees_with_engine() {
    let ctx = k3();
    for t in 4..=5u32 {
        for n in (1usize << (t - 1)) + 1..=(1usize << t) - 4 {
            let c = present_c_with(&ctx, n).unwrap();
            let kd = present_k_with(&ctx, &c, KRoute::Auto, 2).unwrap();
            let closed = k3_closed_presentation(&ctx, n).unwrap();
            assert_eq!(kd.presentation.generator_degrees, closed.generator_degrees, "n={n}");
            assert_eq!(kd.presentation.relation_degrees, closed.relation_degrees, "n={n}");
            let a = kd.presentation.presented_dims(&c.algebra).unwrap();
            let b = closed.presented_dims(&c.algebra).unwrap();
            assert_eq!(a, b, "n={n}");
            assert_eq!(a, kd.module.dims().to_vec(), "n={n}");
            assert!(closed_relations_are_boundaries(&ctx, n).unwrap(), "n={n}");
            assert!(relations_above_top(&c.algebra, &closed), "n={n}");
        }
    }
}

#[test]
fn boundary_truths() {
    let ctx = k3();
    for t in 4..=6u32 {
        // descended relation at n = 2^{t-1}
        let n = 1usize << (t - 1);
        let start = vanishing_at_top(&ctx, t).unwrap();
        let rel = descend(&ctx, &start, (1usize << t) - 3 - n).unwrap();
        let kc = KoszulComplex::with_context(ctx.clone(), n).unwrap();
        assert!(boundary_membership(&kc, &rel).unwrap(), "descended t={t}");
        // ascended relation at n = 2^t - 3
        let n = (1usize << t) - 3;
        let start = vanishing_at_bottom(&ctx, t - 1).unwrap();
        let mut rel = ascend(&ctx, &start, n - start.n as usize).unwrap();
        let kc = KoszulComplex::with_context(ctx.clone(), n).unwrap();
        // the q_n slot carries q_{2^t-3} = 0 itself; the rest is a boundary
        assert!(!rel.coeffs[2].is_zero());
        assert!(!boundary_membership(&kc, &rel).unwrap());
        rel.coeffs[2] = Poly2::zero();
        assert!(boundary_membership(&kc, &rel).unwrap(), "ascended t={t}");
    }
    let start = vanishing_at_top(&ctx, 4).unwrap();
    let rel = descend(&ctx, &start, 1).unwrap();
    let kc = KoszulComplex::with_context(ctx.clone(), 12).unwrap();
    assert!(!boundary_membership(&kc, &rel).unwrap());
}

#[test]
fn ad_classes() {
    let ctx = k3();
    let ad = build_ad(&ctx, 12).unwrap();
    assert_eq!(ad.a.homogeneous_degree(), Some(19));
    assert_eq!(ad.d.homogeneous_degree(), Some(12));
    assert!(ad_lift_identity(&ctx, &ad));
    let ad = build_ad(&ctx, 11).unwrap();
    assert_eq!(ad.a.homogeneous_degree(), Some(16));
    for t in 4..=5u32 {
        for n in (1usize << (t - 1)) + 1..=(1usize << t) - 4 {
            let ad = build_ad(&ctx, n).unwrap();
            assert!(ad_lift_identity(&ctx, &ad), "n={n}");
            assert_eq!(ad.a.homogeneous_degree(), Some(3 * n - (1 << t) - 1));
            assert_eq!(ad.d.homogeneous_degree(), Some((1 << t) - 4));
        }
    }
}

#[test]
fn squares_lie_in_ideal() {
    let ctx = k3();
    assert!(square_in_ideal(&ctx, 13, Square::D).unwrap());
    assert!(square_in_ideal(&ctx, 12, Square::A).unwrap());
    for t in 4..=5u32 {
        for n in (1usize << (t - 1)) + 1..=(1usize << t) - 3 {
            assert!(square_in_ideal(&ctx, n, Square::D).unwrap(), "D n={n}");
        }
        for n in 1usize << (t - 1)..(1usize << t) - 3 {
            assert!(square_in_ideal(&ctx, n, Square::A).unwrap(), "A n={n}");
        }
    }
    assert!(square_in_ideal(&ctx, 14, Square::D).is_err());
    assert!(square_in_ideal(&ctx, 13, Square::A).is_err());
}

#[test]
fn square_membership_negative_control() {
    let ctx = k3();
    // w_2^12 has the degree of D_12^2 but vanishes in the Grassmannian
    let f = Poly2::mono(Mono::from_exps(&[(2, 12)]));
    assert!(in_big_q_ideal(&ctx, 12, &f).unwrap());
    let f = Poly2::mono(Mono::from_exps(&[(1, 10), (2, 7)]));
    assert!(!in_big_q_ideal(&ctx, 12, &f).unwrap());
    // above the real dimension 27 everything lies in the ideal
    let f = Poly2::mono(Mono::from_exps(&[(1, 10), (2, 9)]));
    assert!(in_big_q_ideal(&ctx, 12, &f).unwrap());
}
