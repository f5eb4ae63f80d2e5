use ogc_core::classes::*;
use ogc_core::poly::Poly2;

/// Exact multinomial coefficient, independent of the bit trick.
fn multinomial(a: &[u64]) -> u128 {
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

#[test]
fn triple_oracle() {
    for k in 2..=6 {
        let ctx = ClassContext::new(k);
        for j in 0..=60usize {
            let q = ctx.q(j as i64);
            assert_eq!(*q, q_closed_form(k, j), "closed form k={k} j={j}");
            let det = giambelli_q(k, j);
            assert_eq!(*q, det.kill_var(1), "determinant k={k} j={j}");
            assert_eq!(*ctx.Q(j as i64), det, "recursion vs determinant k={k} j={j}");
            assert_eq!(ctx.p(j as i64).mul_var(1), ctx.Q(j as i64).add(&q), "P = w_1 p, k={k} j={j}");
        }
    }
}

#[test]
fn multinomial_parity_exhaustive() {
    for len in 1..=4 {
        for a in tuples(len, 24) {
            assert_eq!(multinomial_mod2(&a), multinomial(&a) % 2 == 1, "{a:?}");
        }
    }
    assert!(multinomial_mod2(&[2, 5, 8]));
    assert_eq!(multinomial(&[2, 5, 8]), 135135);
}

#[test]
fn consecutive_multinomials() {
    for len in 1..=3 {
        for a in tuples(len, 20) {
            let d = lucas_descents(&a);
            if a.iter().sum::<u64>() == 0 {
                continue;
            }
            if multinomial_mod2(&a) {
                assert_eq!(d.len(), 1, "{a:?}");
                // the unique index carries the lowest bit
                let low = a.iter().filter(|&&x| x > 0).map(|x| x.trailing_zeros()).min().unwrap();
                assert_eq!(a[d[0]].trailing_zeros(), low);
            } else if !d.is_empty() {
                assert_eq!(d.len(), 2, "{a:?}");
            }
        }
    }
    assert_eq!(lucas_descents(&[2, 5, 8]), vec![1]);
}

#[test]
fn multinomial_sums() {
    for k in 2..=6usize {
        for t in 1..=6u32 {
            let target = 1u64 << t;
            // all a = (a_2..a_k) with sum i a_i = 2^t
            let mut stack = vec![(2usize, 0u64, Vec::<u64>::new())];
            while let Some((i, w, a)) = stack.pop() {
                if i > k {
                    if w != target {
                        continue;
                    }
                    let lhs = multinomial_mod2(&a);
                    let mut rhs = false;
                    for j in (2..=k).step_by(2) {
                        let idx = j - 2;
                        if a[idx] > 0 {
                            let mut b = a.clone();
                            b[idx] -= 1;
                            rhs ^= multinomial_mod2(&b);
                        }
                    }
                    assert_eq!(lhs, rhs, "k={k} a={a:?}");
                    continue;
                }
                let mut x = 0;
                while w + x * i as u64 <= target {
                    let mut b = a.clone();
                    b.push(x);
                    stack.push((i + 1, w + x * i as u64, b));
                    x += 1;
                }
            }
        }
    }
}

#[test]
fn fundamental_iff_power_of_two() {
    // for k = 2 the even part is the recursion itself and the odd part is empty
    let ctx2 = ClassContext::new(2);
    for n in 3..=40 {
        assert!(check_fundamental(&ctx2, n));
        assert!(check_fundamental_odd(&ctx2, n));
    }
    for k in 3..=6 {
        let ctx = ClassContext::new(k);
        for n in k + 1..=40 {
            let p2 = n.is_power_of_two();
            assert_eq!(check_fundamental(&ctx, n), p2, "even part k={k} n={n}");
            assert_eq!(check_fundamental_odd(&ctx, n), p2, "odd part k={k} n={n}");
        }
    }
}

#[test]
fn q_vanishing() {
    for t in 2..=6u32 {
        let j = (1i64 << t) - 3;
        assert!(ClassContext::new(3).q(j).is_zero());
        assert!(ClassContext::new(4).q(j).is_zero());
    }
    let ctx = ClassContext::new(3);
    for j in 0..=120i64 {
        let expected = (j + 3).count_ones() == 1 && j + 3 >= 4;
        assert_eq!(ctx.q(j).is_zero(), expected, "j={j}");
    }
    for j in 0..=118i64 {
        assert!(!(ctx.q(j).is_zero() && ctx.q(j + 1).is_zero() && ctx.q(j + 2).is_zero()));
    }
    assert_eq!(*ctx.q(-1), Poly2::zero());
}

#[test]
fn r_sequence() {
    let ctx = ClassContext::new(3);
    for j in 0..=60 {
        assert_eq!(*ctx.r(j as i64), r_closed_form(j), "j={j}");
    }
}
