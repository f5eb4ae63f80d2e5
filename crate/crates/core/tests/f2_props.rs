use ogc_core::f2::{F2Mat, F2Vec};
use proptest::prelude::*;

fn mat() -> impl Strategy<Value = F2Mat> {
    (0usize..=64, 0usize..=64, any::<u64>(), 0u32..=3).prop_map(|(r, c, seed, density)| {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let mut m = F2Mat::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                // density 0 gives sparse matrices, 3 dense ones
                if rng.gen_range(0..8) <= density * 2 {
                    m.set(i, j, true);
                }
            }
        }
        m
    })
}

/// Rank by brute elimination over `u128` rows, independent of the crate.
fn oracle_rank(m: &F2Mat) -> usize {
    let mut rows: Vec<u128> = (0..m.nrows())
        .map(|r| (0..m.ncols()).filter(|&c| m.get(r, c)).fold(0u128, |acc, c| acc | 1 << c))
        .collect();
    let mut rank = 0;
    for bit in 0..m.ncols() {
        if let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) {
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (i, r) in rows.iter_mut().enumerate() {
                if i != rank && *r >> bit & 1 == 1 {
                    *r ^= pivot;
                }
            }
            rank += 1;
        }
    }
    rank
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rank_and_kernel(m in mat()) {
        let (r, pivots) = m.rref();
        prop_assert_eq!(m.rank(), pivots.len());
        prop_assert_eq!(r.rank(), pivots.len());
        prop_assert_eq!(m.rank(), oracle_rank(&m));
        prop_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        for (row, &p) in pivots.iter().enumerate() {
            for other in 0..r.nrows() {
                prop_assert_eq!(r.get(other, p), other == row);
            }
        }
        let ker = m.kernel_basis();
        prop_assert_eq!(ker.len() + m.rank(), m.ncols());
        for x in &ker {
            for row in 0..m.nrows() {
                prop_assert!(!m.row(row).dot(x));
            }
        }
        let km = F2Mat::from_rows(&ker, m.ncols());
        prop_assert_eq!(km.rank(), ker.len());
    }

    #[test]
    fn rref_is_deterministic(m in mat()) {
        let a = m.rref();
        let b = m.clone().rref();
        prop_assert_eq!(a.0, b.0);
        prop_assert_eq!(a.1, b.1);
    }

    #[test]
    fn solve_reproduces_rhs(m in mat(), seed in any::<u64>(), consistent in any::<bool>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let b = if consistent {
            let mut x = F2Vec::zeros(m.nrows());
            for i in 0..m.nrows() {
                x.set(i, rng.gen());
            }
            m.vec_mul(&x)
        } else {
            let mut b = F2Vec::zeros(m.ncols());
            for i in 0..m.ncols() {
                b.set(i, rng.gen());
            }
            b
        };
        match m.solve(&b) {
            Some(x) => prop_assert_eq!(m.vec_mul(&x), b),
            None => {
                prop_assert!(!consistent);
                let aug = m.vstack(&F2Mat::from_rows(&[b], m.ncols()));
                prop_assert_eq!(aug.rank(), m.rank() + 1);
            }
        }
    }

    #[test]
    fn transpose_keeps_rank(m in mat()) {
        prop_assert_eq!(m.transpose().rank(), m.rank());
        prop_assert_eq!(m.left_kernel_basis().len() + m.rank(), m.nrows());
    }
}

#[test]
fn spec_examples() {
    let id = F2Mat::identity(3);
    let (r, p) = id.rref();
    assert_eq!(r, id);
    assert_eq!(p, vec![0, 1, 2]);
    let z = F2Mat::zeros(2, 3);
    let (r, p) = z.rref();
    assert!(r.is_zero() && p.is_empty());
    assert!(id.kernel_basis().is_empty());
    assert_eq!(F2Mat::zeros(2, 4).kernel_basis().len(), 4);
    let m = F2Mat::from_bit_rows(&["110", "011", "101"]);
    assert_eq!(m.rref().1, vec![0, 1]);
    let ker = F2Mat::from_bit_rows(&["111"]).kernel_basis();
    // a basis of the even-weight vectors of length 3
    assert_eq!(ker.len(), 2);
    assert!(ker.iter().all(|v| v.count_ones() % 2 == 0 && !v.is_zero()));
}
