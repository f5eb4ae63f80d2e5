//! Characteristic classes of the oriented tautological bundle and the
//! sequences built from them.
//!
//! `q_j` lives in `F2[w_2..w_k]` and satisfies `q_j = sum_{l=2..k} w_l q_{j-l}`.
//! `Q_j` is the same recursion over `F2[w_1..w_k]` and `P_j = Q_j + q_j = w_1 p_j`.

use std::sync::{Arc, RwLock};

use crate::poly::{Mono, Poly2};

/// Memoized sequences for a fixed rank `k`.  Safe to share across threads;
/// concurrent warm-up of the same index computes the same value.
#[derive(Debug)]
pub struct ClassContext {
    k: usize,
    q: RwLock<Vec<Arc<Poly2>>>,
    big_q: RwLock<Vec<Arc<Poly2>>>,
    p: RwLock<Vec<Arc<Poly2>>>,
    r: RwLock<Vec<Arc<Poly2>>>,
}

fn extend<F>(cache: &RwLock<Vec<Arc<Poly2>>>, j: usize, step: F) -> Arc<Poly2>
where
    F: Fn(&[Arc<Poly2>], usize) -> Poly2,
{
    if let Some(v) = cache.read().unwrap().get(j) {
        return v.clone();
    }
    let mut w = cache.write().unwrap();
    while w.len() <= j {
        let i = w.len();
        let next = step(&w, i);
        w.push(Arc::new(next));
    }
    w[j].clone()
}

impl ClassContext {
    pub fn new(k: usize) -> Self {
        assert!((2..=crate::poly::MAX_VARS).contains(&k), "rank out of range");
        ClassContext {
            k,
            q: RwLock::new(Vec::new()),
            big_q: RwLock::new(Vec::new()),
            p: RwLock::new(Vec::new()),
            r: RwLock::new(Vec::new()),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self, j: i64) -> Arc<Poly2> {
        if j < 0 {
            return Arc::new(Poly2::zero());
        }
        let k = self.k;
        extend(&self.q, j as usize, |prev, i| {
            if i == 0 {
                return Poly2::one();
            }
            let mut acc = Poly2::zero();
            for l in 2..=k.min(i) {
                acc.add_assign(&prev[i - l].mul_var(l));
            }
            acc
        })
    }

    #[allow(non_snake_case)]
    pub fn Q(&self, j: i64) -> Arc<Poly2> {
        if j < 0 {
            return Arc::new(Poly2::zero());
        }
        let k = self.k;
        extend(&self.big_q, j as usize, |prev, i| {
            if i == 0 {
                return Poly2::one();
            }
            let mut acc = Poly2::zero();
            for l in 1..=k.min(i) {
                acc.add_assign(&prev[i - l].mul_var(l));
            }
            acc
        })
    }

    #[allow(non_snake_case)]
    pub fn P(&self, j: i64) -> Poly2 {
        self.Q(j).add(&self.q(j))
    }

    pub fn p(&self, j: i64) -> Arc<Poly2> {
        if j <= 0 {
            return Arc::new(Poly2::zero());
        }
        let k = self.k;
        // index i of the cache stores p_i; p_0 = 0
        extend(&self.p, j as usize, |prev, i| {
            if i == 0 {
                return Poly2::zero();
            }
            let mut acc = (*self.q(i as i64 - 1)).clone();
            for l in 1..=k.min(i) {
                acc.add_assign(&prev[i - l].mul_var(l));
            }
            acc
        })
    }

    /// The sequence `r_{j+1} = w_2 r_j + w_3^2 r_{j-2}`, `r_0 = 1`; rank 3 only.
    ///
    /// # Panics
    /// If the context rank is not 3.
    pub fn r(&self, j: i64) -> Arc<Poly2> {
        assert_eq!(self.k, 3, "the r sequence is defined for rank 3");
        if j < 0 {
            return Arc::new(Poly2::zero());
        }
        let w3sq = Mono::from_exps(&[(3, 2)]);
        extend(&self.r, j as usize, |prev, i| {
            if i == 0 {
                return Poly2::one();
            }
            let mut acc = prev[i - 1].mul_var(2);
            if i >= 3 {
                acc.add_assign(&prev[i - 3].mul_mono(&w3sq));
            }
            acc
        })
    }
}

/// `Q_j` as the determinant of the Hessenberg matrix whose `(r, c)` entry is
/// `w_{c-r+1}` (with `w_0 = 1`, and zero below the subdiagonal or beyond `w_k`).
///
/// Expands along the first remaining column; each minor keeps one row from
/// the already processed block, so memoization needs one layer at a time.
pub fn giambelli_q(k: usize, j: usize) -> Poly2 {
    if j == 0 {
        return Poly2::one();
    }
    let entry = |r: usize, c: usize| -> Poly2 {
        let idx = c as i64 - r as i64 + 1;
        if idx < 0 || idx as usize > k {
            Poly2::zero()
        } else if idx == 0 {
            Poly2::one()
        } else {
            Poly2::var(idx as usize)
        }
    };
    // layer[r] = det of rows {r} u {c+1..j}, columns c..j, for r <= c
    let mut layer: Vec<Poly2> = (0..j).map(|r| entry(r, j - 1)).collect();
    for c in (0..j - 1).rev() {
        let diag = layer[c + 1].clone();
        let next: Vec<Poly2> = (0..=c).map(|r| entry(r, c).mul(&diag).add(&layer[r])).collect();
        layer = next;
    }
    layer.swap_remove(0)
}

/// Parity of the multinomial coefficient `(sum a)! / prod a_i!`.
pub fn multinomial_mod2(a: &[u64]) -> bool {
    let mut acc = 0u64;
    for &x in a {
        if acc & x != 0 {
            return false;
        }
        acc |= x;
    }
    true
}

/// Indices `l` with `a_l > 0` such that lowering `a_l` by one leaves an odd
/// multinomial coefficient.
pub fn lucas_descents(a: &[u64]) -> Vec<usize> {
    (0..a.len())
        .filter(|&l| a[l] > 0)
        .filter(|&l| {
            let mut b = a.to_vec();
            b[l] -= 1;
            multinomial_mod2(&b)
        })
        .collect()
}

/// `q_j` from the sum over exponent vectors with odd multinomial coefficient.
pub fn q_closed_form(k: usize, j: usize) -> Poly2 {
    let mut out = Vec::new();
    let mut a = vec![0u64; k + 1];
    fn go(var: usize, k: usize, rem: usize, a: &mut Vec<u64>, out: &mut Vec<Mono>) {
        if var > k {
            if rem == 0 && multinomial_mod2(&a[2..]) {
                let pairs: Vec<(usize, u32)> = (2..=k).map(|i| (i, a[i] as u32)).collect();
                out.push(Mono::from_exps(&pairs));
            }
            return;
        }
        for e in 0..=rem / var {
            a[var] = e as u64;
            go(var + 1, k, rem - e * var, a, out);
        }
        a[var] = 0;
    }
    go(2, k, j, &mut a, &mut out);
    Poly2::from_monos(out)
}

/// `r_j` from its closed form `sum binom(b_2+b_3, b_2) w_2^{b_2} w_3^{2 b_3}`
/// over `2 b_2 + 6 b_3 = 2 j`.
pub fn r_closed_form(j: usize) -> Poly2 {
    let mut out = Vec::new();
    for b3 in 0..=j / 3 {
        let b2 = j - 3 * b3;
        if multinomial_mod2(&[b2 as u64, b3 as u64]) {
            out.push(Mono::from_exps(&[(2, b2 as u32), (3, 2 * b3 as u32)]));
        }
    }
    Poly2::from_monos(out)
}

/// Whether `sum_{i even} w_i q_{n-i}` (with `w_0 = 1`) vanishes.
pub fn check_fundamental(ctx: &ClassContext, n: usize) -> bool {
    parity_sum(ctx, n, 0).is_zero()
}

/// Whether `sum_{i > 1 odd} w_i q_{n-i}` vanishes.
pub fn check_fundamental_odd(ctx: &ClassContext, n: usize) -> bool {
    parity_sum(ctx, n, 1).is_zero()
}

/// `sum_{i = parity mod 2, i != 1} w_i q_{n-i}` over `0 <= i <= k`.
pub fn parity_sum(ctx: &ClassContext, n: usize, parity: usize) -> Poly2 {
    let mut acc = Poly2::zero();
    for i in (parity..=ctx.k()).step_by(2) {
        if i == 1 {
            continue;
        }
        let t = ctx.q(n as i64 - i as i64);
        if i == 0 {
            acc.add_assign(&t);
        } else {
            acc.add_assign(&t.mul_var(i));
        }
    }
    acc
}
