//! Graded polynomial rings `F2[w_1..w_k]` and `F2[w_2..w_k]` with `deg w_i = i`.
//!
//! Monomials are ordered by weighted degree, then lexicographically on the
//! exponent vector with `w_1 > w_2 > ...`.  Polynomials keep their terms sorted
//! from the largest monomial down.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::f2::F2Mat;

/// Largest variable index supported.
pub const MAX_VARS: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    deg: u16,
    exps: [u8; MAX_VARS],
}

impl Mono {
    pub const ONE: Mono = Mono { deg: 0, exps: [0; MAX_VARS] };

    /// The monomial `w_i`.
    pub fn var(i: usize) -> Mono {
        assert!((1..=MAX_VARS).contains(&i));
        let mut m = Mono::ONE;
        m.exps[i - 1] = 1;
        m.deg = i as u16;
        m
    }

    /// Builds `prod w_i^{e_i}` from `(i, e_i)` pairs.
    pub fn from_exps(pairs: &[(usize, u32)]) -> Mono {
        let mut m = Mono::ONE;
        for &(i, e) in pairs {
            assert!((1..=MAX_VARS).contains(&i));
            let ne = m.exps[i - 1] as u32 + e;
            assert!(ne <= u8::MAX as u32, "exponent overflow");
            m.exps[i - 1] = ne as u8;
            m.deg += (i as u32 * e) as u16;
        }
        m
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.deg as usize
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i - 1] as u32
    }

    /// Largest variable index with a nonzero exponent (0 for the unit).
    pub fn max_var(&self) -> usize {
        (1..=MAX_VARS).rev().find(|&i| self.exps[i - 1] > 0).unwrap_or(0)
    }

    /// Smallest variable index with a nonzero exponent.
    pub fn min_var(&self) -> Option<usize> {
        (1..=MAX_VARS).find(|&i| self.exps[i - 1] > 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut m = *self;
        for i in 0..MAX_VARS {
            let e = m.exps[i] as u32 + other.exps[i] as u32;
            assert!(e <= u8::MAX as u32, "exponent overflow");
            m.exps[i] = e as u8;
        }
        m.deg += other.deg;
        m
    }

    pub fn mul_var(&self, i: usize) -> Mono {
        let mut m = *self;
        assert!(m.exps[i - 1] < u8::MAX, "exponent overflow");
        m.exps[i - 1] += 1;
        m.deg += i as u16;
        m
    }

    /// `self / w_i`, if `w_i` divides `self`.
    pub fn div_var(&self, i: usize) -> Option<Mono> {
        if self.exps[i - 1] == 0 {
            return None;
        }
        let mut m = *self;
        m.exps[i - 1] -= 1;
        m.deg -= i as u16;
        Some(m)
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn pow(&self, e: u32) -> Mono {
        let mut m = Mono::ONE;
        for _ in 0..e {
            m = m.mul(self);
        }
        m
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deg == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for i in 1..=MAX_VARS {
            let e = self.exps[i - 1];
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "w_{i}")?;
            } else {
                write!(f, "w_{i}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Mono {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mono> {
        let s = s.trim();
        if s == "1" {
            return Ok(Mono::ONE);
        }
        let mut pairs = Vec::new();
        for factor in s.split('*') {
            let factor = factor.trim();
            let (base, e) = match factor.split_once('^') {
                Some((b, e)) => (b, e.parse::<u32>().map_err(|_| Error::parse(s))?),
                None => (factor, 1),
            };
            let idx = base.strip_prefix("w_").ok_or_else(|| Error::parse(s))?;
            let idx: usize = idx.parse().map_err(|_| Error::parse(s))?;
            if !(1..=MAX_VARS).contains(&idx) || e == 0 {
                return Err(Error::parse(s));
            }
            pairs.push((idx, e));
        }
        Ok(Mono::from_exps(&pairs))
    }
}

/// A polynomial over GF(2); terms sorted from the largest monomial down.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    terms: Vec<Mono>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly2 { terms: vec![Mono::ONE] }
    }

    pub fn mono(m: Mono) -> Self {
        Poly2 { terms: vec![m] }
    }

    pub fn var(i: usize) -> Self {
        Self::mono(Mono::var(i))
    }

    /// Builds a polynomial from monomials; repeated monomials cancel in pairs.
    pub fn from_monos<I: IntoIterator<Item = Mono>>(it: I) -> Self {
        let mut v: Vec<Mono> = it.into_iter().collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        let mut out: Vec<Mono> = Vec::with_capacity(v.len());
        let mut i = 0;
        while i < v.len() {
            let mut j = i;
            while j < v.len() && v[j] == v[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                out.push(v[i]);
            }
            i = j;
        }
        Poly2 { terms: out }
    }

    pub fn terms(&self) -> &[Mono] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading (largest) monomial.
    pub fn lead(&self) -> Option<Mono> {
        self.terms.first().copied()
    }

    /// The common degree of all terms; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let d = self.terms.first()?.degree();
        self.terms.iter().all(|m| m.degree() == d).then_some(d)
    }

    pub fn contains(&self, m: &Mono) -> bool {
        self.terms.binary_search_by(|x| m.cmp(x)).is_ok()
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Poly2 { terms: out }
    }

    pub fn add_assign(&mut self, other: &Poly2) {
        *self = self.add(other);
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly2 {
        Poly2 { terms: self.terms.iter().map(|t| t.mul(m)).collect() }
    }

    pub fn mul_var(&self, i: usize) -> Poly2 {
        Poly2 { terms: self.terms.iter().map(|t| t.mul_var(i)).collect() }
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        if self.is_zero() || other.is_zero() {
            return Poly2::zero();
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Poly2::zero();
        for m in &small.terms {
            acc = acc.add(&big.mul_mono(m));
        }
        acc
    }

    pub fn square(&self) -> Poly2 {
        Poly2 { terms: self.terms.iter().map(|t| t.mul(t)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly2 {
        let mut out = Poly2::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Sets `w_i := 0`.
    pub fn kill_var(&self, i: usize) -> Poly2 {
        Poly2 { terms: self.terms.iter().copied().filter(|m| m.exp(i) == 0).collect() }
    }

    /// Exact quotient by `w_i`; `None` if some term is not divisible.
    pub fn div_var(&self, i: usize) -> Option<Poly2> {
        let t: Option<Vec<Mono>> = self.terms.iter().map(|m| m.div_var(i)).collect();
        t.map(|terms| Poly2 { terms })
    }

    /// Largest variable index occurring.
    pub fn max_var(&self) -> usize {
        self.terms.iter().map(|m| m.max_var()).max().unwrap_or(0)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|m| m.exp(i) > 0)
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Poly2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Poly2> {
        let s = s.trim();
        if s == "0" {
            return Ok(Poly2::zero());
        }
        let monos: Result<Vec<Mono>> = s.split('+').map(Mono::from_str).collect();
        Ok(Poly2::from_monos(monos?))
    }
}

/// The ambient ring: `W1 = F2[w_1..w_k]` or `W2 = F2[w_2..w_k]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    pub k: usize,
    pub with_w1: bool,
}

impl VarSet {
    pub fn w1(k: usize) -> Self {
        assert!((1..=MAX_VARS).contains(&k));
        VarSet { k, with_w1: true }
    }

    pub fn w2(k: usize) -> Self {
        assert!((2..=MAX_VARS).contains(&k));
        VarSet { k, with_w1: false }
    }

    pub fn first_var(&self) -> usize {
        if self.with_w1 {
            1
        } else {
            2
        }
    }

    pub fn vars(&self) -> std::ops::RangeInclusive<usize> {
        self.first_var()..=self.k
    }

    pub fn contains_mono(&self, m: &Mono) -> bool {
        m.max_var() <= self.k && (self.with_w1 || m.exp(1) == 0)
    }

    pub fn contains(&self, f: &Poly2) -> bool {
        f.terms().iter().all(|m| self.contains_mono(m))
    }

    fn check(&self, f: &Poly2) -> Result<()> {
        if self.contains(f) {
            Ok(())
        } else {
            Err(Error::usage(format!("polynomial {f} does not lie in {self}")))
        }
    }

    pub fn add(&self, f: &Poly2, g: &Poly2) -> Result<Poly2> {
        self.check(f)?;
        self.check(g)?;
        Ok(f.add(g))
    }

    pub fn mul(&self, f: &Poly2, g: &Poly2) -> Result<Poly2> {
        self.check(f)?;
        self.check(g)?;
        Ok(f.mul(g))
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2[w_{}..w_{}]", self.first_var(), self.k)
    }
}

/// The monomial basis of one degree, largest monomial first, with an index.
#[derive(Debug)]
pub struct GradedSlice {
    pub vars: VarSet,
    pub degree: usize,
    monos: Vec<Mono>,
    index: HashMap<Mono, usize>,
}

impl GradedSlice {
    fn new(vars: VarSet, degree: usize) -> Self {
        let mut monos = Vec::new();
        enumerate(vars.k, vars.first_var(), degree, Mono::ONE, &mut monos);
        monos.sort_unstable_by(|a, b| b.cmp(a));
        let index = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        GradedSlice { vars, degree, monos, index }
    }

    pub fn monos(&self) -> &[Mono] {
        &self.monos
    }

    pub fn dim(&self) -> usize {
        self.monos.len()
    }

    pub fn index_of(&self, m: &Mono) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a homogeneous polynomial of this degree.
    pub fn coords(&self, f: &Poly2) -> Result<crate::f2::F2Vec> {
        let mut v = crate::f2::F2Vec::zeros(self.dim());
        for m in f.terms() {
            let i = self.index_of(m).ok_or_else(|| {
                Error::usage(format!("monomial {m} is not in degree {} of {}", self.degree, self.vars))
            })?;
            v.set(i, true);
        }
        Ok(v)
    }

    pub fn poly(&self, v: &crate::f2::F2Vec) -> Poly2 {
        Poly2::from_monos(v.iter_ones().map(|i| self.monos[i]))
    }
}

fn enumerate(var: usize, lo: usize, rem: usize, cur: Mono, out: &mut Vec<Mono>) {
    if rem == 0 {
        out.push(cur);
        return;
    }
    if var < lo {
        return;
    }
    let mut m = cur;
    let mut left = rem;
    loop {
        enumerate(var - 1, lo, left, m, out);
        if left < var {
            break;
        }
        left -= var;
        m = m.mul_var(var);
    }
}

type SliceKey = (usize, bool, usize);

fn slice_cache() -> &'static RwLock<HashMap<SliceKey, Arc<GradedSlice>>> {
    static CACHE: OnceLock<RwLock<HashMap<SliceKey, Arc<GradedSlice>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The cached monomial basis of degree `d`.
pub fn mono_basis(vars: VarSet, d: usize) -> Arc<GradedSlice> {
    let key = (vars.k, vars.with_w1, d);
    if let Some(s) = slice_cache().read().unwrap().get(&key) {
        return s.clone();
    }
    let s = Arc::new(GradedSlice::new(vars, d));
    slice_cache().write().unwrap().entry(key).or_insert(s).clone()
}

/// Matrix of multiplication by `f` from `src` to `dst`; row `r` is `f * src[r]`.
pub fn mul_matrix(f: &Poly2, src: &GradedSlice, dst: &GradedSlice) -> Result<F2Mat> {
    if src.vars != dst.vars {
        return Err(Error::usage("source and target slices live in different rings".into()));
    }
    src.vars.check(f)?;
    if let Some(e) = f.homogeneous_degree() {
        if e + src.degree != dst.degree {
            return Err(Error::usage(format!(
                "degree mismatch: {} + {} != {}",
                e, src.degree, dst.degree
            )));
        }
    } else if !f.is_zero() {
        return Err(Error::usage(format!("{f} is not homogeneous")));
    }
    let mut m = F2Mat::zeros(src.dim(), dst.dim());
    for (r, sm) in src.monos().iter().enumerate() {
        for t in f.terms() {
            let c = dst.index_of(&t.mul(sm)).expect("product lies in target slice");
            m.flip(r, c);
        }
    }
    Ok(m)
}

/// Dimension of degree `d` of `F2[w_2..w_k]`.
pub fn hilbert_w2(k: usize, d: usize) -> usize {
    hilbert(VarSet::w2(k), d)
}

/// Dimension of degree `d` of the ring.
pub fn hilbert(vars: VarSet, d: usize) -> usize {
    let mut c = vec![0usize; d + 1];
    c[0] = 1;
    for i in vars.vars() {
        for j in i..=d {
            c[j] += c[j - i];
        }
    }
    c[d]
}

/// Distinct degrees of monomials in `f`, as a set.
pub fn degrees_of(f: &Poly2) -> BTreeSet<usize> {
    f.terms().iter().map(|m| m.degree()).collect()
}
