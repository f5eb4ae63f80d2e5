use ogc_core::poly::{hilbert_w2, mono_basis, mul_matrix, Mono, Poly2, VarSet};
use proptest::prelude::*;

/// Random homogeneous polynomial of degree `d` in `F2[w_2..w_k]`.
fn homogeneous(k: usize, d: usize, mask: u64) -> Poly2 {
    let basis = mono_basis(VarSet::w2(k), d);
    Poly2::from_monos(basis.monos().iter().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, m)| *m))
}

fn any_poly() -> impl Strategy<Value = Poly2> {
    prop::collection::vec((0u32..4, 0u32..4, 0u32..3, 0u32..3), 0..6).prop_map(|terms| {
        Poly2::from_monos(terms.into_iter().map(|(a, b, c, d)| Mono::from_exps(&[(1, a), (2, b), (3, c), (5, d)])))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ring_axioms(f in any_poly(), g in any_poly(), h in any_poly()) {
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.add(&f), Poly2::zero());
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert_eq!(f.square(), f.mul(&f));
    }

    #[test]
    fn text_round_trip(f in any_poly()) {
        let s = f.to_string();
        let back: Poly2 = s.parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn mul_matrix_composes(k in 2usize..=5, a in 0usize..8, df in 0usize..6, dg in 0usize..6, mf in any::<u64>(), mg in any::<u64>()) {
        let vars = VarSet::w2(k);
        let f = homogeneous(k, df, mf);
        let g = homogeneous(k, dg, mg);
        let s0 = mono_basis(vars, a);
        let s1 = mono_basis(vars, a + dg);
        let s2 = mono_basis(vars, a + dg + df);
        let mg_ = mul_matrix(&g, &s0, &s1).unwrap();
        let mf_ = mul_matrix(&f, &s1, &s2).unwrap();
        let mfg = mul_matrix(&f.mul(&g), &s0, &s2).unwrap();
        prop_assert_eq!(mg_.mul(&mf_), mfg);
    }
}

#[test]
fn hilbert_matches_generating_function() {
    for k in 2..=6usize {
        // power series of prod_{i=2..k} 1/(1 - t^i)
        let mut series = vec![0usize; 81];
        series[0] = 1;
        for i in 2..=k {
            for d in i..=80 {
                series[d] += series[d - i];
            }
        }
        for d in 0..=80 {
            assert_eq!(hilbert_w2(k, d), series[d], "k={k} d={d}");
            assert_eq!(mono_basis(VarSet::w2(k), d).dim(), series[d], "k={k} d={d}");
        }
    }
}

#[test]
fn text_format() {
    let f: Poly2 = "w_2^3*w_3+w_3^3".parse().unwrap();
    assert_eq!(f.to_string(), "w_2^3*w_3+w_3^3");
    assert_eq!(Poly2::zero().to_string(), "0");
    assert_eq!(Poly2::one().to_string(), "1");
    assert!("w_2^".parse::<Poly2>().is_err());
    assert!("w_0".parse::<Poly2>().is_err());
}
