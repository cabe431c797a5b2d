//! Kazhdan–Lusztig polynomials of `S_n` and the Verma multiplicities built from them.

use std::collections::HashMap;
use std::env;
use std::fmt;
use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;
use serde::Serialize;

use crate::cosets::BlockSet;
use crate::error::{Error, Result};
use crate::weyl::{enumerate_group_bounded, enumerate_parabolic, MultiWeylElement, Permutation, DEFAULT_MAX_RANK};

/// Environment variable holding the memo-table entry cap.
pub const CACHE_CAP_VAR: &str = "WEYLKIT_KL_CACHE_CAP";
pub const DEFAULT_CACHE_CAP: usize = 40_000_000;

/// Integer polynomial in `q`; `coeffs[i]` is the coefficient of `q^i`, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct KLPolynomial {
    coeffs: Vec<i64>,
}

impl KLPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn eval_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// `self + c q^shift p`.
    pub fn add_scaled(&mut self, p: &Self, c: i64, shift: usize) {
        if self.coeffs.len() < p.coeffs.len() + shift {
            self.coeffs.resize(p.coeffs.len() + shift, 0);
        }
        for (i, &a) in p.coeffs.iter().enumerate() {
            self.coeffs[i + shift] += c * a;
        }
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }
}

impl fmt::Display for KLPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let body = match (i, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "q".into(),
                (1, m) => format!("{m}q"),
                (e, 1) => format!("q^{e}"),
                (e, m) => format!("{m}q^{e}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for KLPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

type Key = (u8, u64, u64);

/// `(z, μ(z, w))` for every `z` with nonzero `μ`.
type MuList = Arc<Vec<(Permutation, i64)>>;

/// Memo table for `P_{x,w}`. Safe to share between threads; entries are
/// computed without holding a lock, so two threads may compute the same entry.
pub struct KlTable {
    polys: RwLock<HashMap<Key, Arc<KLPolynomial>>>,
    mu: RwLock<HashMap<(u8, u64), MuList>>,
    groups: RwLock<HashMap<usize, Arc<Vec<Permutation>>>>,
    overrides: RwLock<HashMap<Key, KLPolynomial>>,
    cap: usize,
    bound: usize,
}

impl Default for KlTable {
    fn default() -> Self {
        Self::with_cap(cap_from_env())
    }
}

fn cap_from_env() -> usize {
    env::var(CACHE_CAP_VAR).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CACHE_CAP)
}

impl KlTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cap(cap: usize) -> Self {
        Self {
            polys: RwLock::default(),
            mu: RwLock::default(),
            groups: RwLock::default(),
            overrides: RwLock::default(),
            cap,
            bound: DEFAULT_MAX_RANK,
        }
    }

    /// Process-wide table; the cap is read from [`CACHE_CAP_VAR`] once.
    pub fn global() -> &'static KlTable {
        static GLOBAL: OnceLock<KlTable> = OnceLock::new();
        GLOBAL.get_or_init(KlTable::default)
    }

    pub fn len(&self) -> usize {
        self.polys.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Forces `P_{x,w}` to a given value. Used to check that the self-test notices corruption.
    #[doc(hidden)]
    pub fn inject_fault(&self, x: &Permutation, w: &Permutation, p: KLPolynomial) {
        self.overrides.write().insert(key(x, w), p);
    }

    pub fn poly(&self, x: &Permutation, w: &Permutation) -> Result<KLPolynomial> {
        if x.n() != w.n() {
            return Err(Error::RankMismatch(x.n(), w.n()));
        }
        if x.n() > self.bound {
            return Err(Error::BoundExceeded { n: x.n(), bound: self.bound });
        }
        Ok(self.get(x, w)?.as_ref().clone())
    }

    fn get(&self, x: &Permutation, w: &Permutation) -> Result<Arc<KLPolynomial>> {
        let k = key(x, w);
        {
            let ov = self.overrides.read();
            if !ov.is_empty() {
                if let Some(p) = ov.get(&k) {
                    return Ok(Arc::new(p.clone()));
                }
            }
        }
        if let Some(p) = self.polys.read().get(&k) {
            return Ok(p.clone());
        }
        let p = Arc::new(self.compute(x, w)?);
        let mut table = self.polys.write();
        if table.len() >= self.cap && !table.contains_key(&k) {
            return Err(Error::CacheCap(self.cap));
        }
        Ok(table.entry(k).or_insert(p).clone())
    }

    fn compute(&self, x: &Permutation, w: &Permutation) -> Result<KLPolynomial> {
        let (lx, lw) = (x.length(), w.length());
        if lx > lw || !x.bruhat_leq(w)? {
            return Ok(KLPolynomial::zero());
        }
        if lw - lx <= 2 {
            return Ok(KLPolynomial::one());
        }
        let s = (1..w.n()).find(|&i| w.has_left_descent(i)).expect("w is not the identity");
        if !x.has_left_descent(s) {
            return Ok(self.get(&x.lmul_simple(s), w)?.as_ref().clone());
        }
        // sx < x, v = sw < w:
        // P_{x,w} = P_{sx,v} + q P_{x,v} − Σ_{z: sz<z, x≤z<v} μ(z,v) q^{(l(w)−l(z))/2} P_{x,z}
        let v = w.lmul_simple(s);
        let mut p = self.get(&x.lmul_simple(s), &v)?.as_ref().clone();
        p.add_scaled(&*self.get(x, &v)?, 1, 1);
        for (z, mu) in self.mu_list(&v)?.iter() {
            if !z.has_left_descent(s) {
                continue;
            }
            let lz = z.length();
            if lz < lx || !x.bruhat_leq(z)? {
                continue;
            }
            p.add_scaled(&*self.get(x, z)?, -mu, (lw - lz) / 2);
        }
        Ok(p)
    }

    /// All `(z, μ(z,v))` with `z < v` and `μ ≠ 0`.
    fn mu_list(&self, v: &Permutation) -> Result<Arc<Vec<(Permutation, i64)>>> {
        let k = (v.n() as u8, v.lex_rank());
        if let Some(m) = self.mu.read().get(&k) {
            return Ok(m.clone());
        }
        let lv = v.length();
        let mut out = Vec::new();
        for z in self.group(v.n())?.iter() {
            let lz = z.length();
            if lz >= lv || (lv - lz).is_multiple_of(2) || !z.bruhat_leq(v)? {
                continue;
            }
            let top = (lv - lz - 1) / 2;
            let c = self.get(z, v)?.coeff(top);
            if c != 0 {
                out.push((z.clone(), c));
            }
        }
        let out = Arc::new(out);
        Ok(self.mu.write().entry(k).or_insert(out).clone())
    }

    fn group(&self, n: usize) -> Result<Arc<Vec<Permutation>>> {
        if let Some(g) = self.groups.read().get(&n) {
            return Ok(g.clone());
        }
        let g = Arc::new(enumerate_group_bounded(n, self.bound)?);
        Ok(self.groups.write().entry(n).or_insert(g).clone())
    }

    /// `m(w′, w) = Π_σ P_{w′_σ, w_σ}(1)`.
    pub fn verma_mult(&self, wprime: &MultiWeylElement, w: &MultiWeylElement) -> Result<u64> {
        wprime.check_shape(w)?;
        let mut m = 1u64;
        for (a, b) in wprime.components().iter().zip(w.components()) {
            let v = self.poly(a, b)?.eval_one();
            if v == 0 {
                return Ok(0);
            }
            m *= v as u64;
        }
        Ok(m)
    }

    /// `Σ_{y ∈ W_{Δ^k ∪ K}} (−1)^{l(y)} P_{y,w}(1)` for a single permutation.
    pub fn parabolic_verma_mult_single(&self, k: &BlockSet, w: &Permutation) -> Result<i64> {
        if w.n() != k.n() {
            return Err(Error::RankMismatch(w.n(), k.n()));
        }
        let mut total = 0;
        for y in enumerate_parabolic(&k.levi_roots())? {
            let v = self.poly(&y, w)?.eval_one();
            total += if y.length() % 2 == 0 { v } else { -v };
        }
        Ok(total)
    }

    /// `[M_K : L(−w·λ)] = Σ_{w′ ∈ W_{Δ^k ∪ K}^{d_L}} (−1)^{l(w′)} m(w′, w)`,
    /// evaluated as the product over embeddings of the single-component sums.
    pub fn parabolic_verma_mult(&self, k: &BlockSet, w: &MultiWeylElement) -> Result<i64> {
        let mut total = 1;
        for c in w.components() {
            total *= self.parabolic_verma_mult_single(k, c)?;
            if total == 0 {
                break;
            }
        }
        Ok(total)
    }
}

fn key(x: &Permutation, w: &Permutation) -> Key {
    (x.n() as u8, x.lex_rank(), w.lex_rank())
}

/// `P_{x,w}` from the process-wide table.
pub fn kl_poly(x: &Permutation, w: &Permutation) -> Result<KLPolynomial> {
    KlTable::global().poly(x, w)
}

pub fn verma_mult(wprime: &MultiWeylElement, w: &MultiWeylElement) -> Result<u64> {
    KlTable::global().verma_mult(wprime, w)
}

pub fn parabolic_verma_mult(k: &BlockSet, w: &MultiWeylElement) -> Result<i64> {
    KlTable::global().parabolic_verma_mult(k, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s, Some(4)).unwrap()
    }

    #[test]
    fn small_values() {
        let t = KlTable::new();
        assert_eq!(t.poly(&p("e"), &p("[3,4,1,2]")).unwrap().coeffs(), &[1, 1]);
        assert_eq!(t.poly(&p("s2"), &p("[3,4,1,2]")).unwrap().coeffs(), &[1, 1]);
        assert_eq!(t.poly(&p("s1"), &p("[3,4,1,2]")).unwrap().coeffs(), &[1]);
        assert!(t.poly(&p("s1"), &p("e")).unwrap().is_zero());
        for x in crate::weyl::enumerate_group(4).unwrap() {
            assert_eq!(t.poly(&x, &p("[4,3,2,1]")).unwrap(), KLPolynomial::one());
            assert_eq!(t.poly(&x, &x).unwrap(), KLPolynomial::one());
        }
    }

    #[test]
    fn multiplicities() {
        let t = KlTable::new();
        let m = |s: &str| MultiWeylElement::parse(s, Some(4)).unwrap();
        assert_eq!(t.verma_mult(&m("[3,4,1,2]"), &m("[3,4,1,2]")).unwrap(), 1);
        assert_eq!(t.verma_mult(&m("e"), &m("[3,4,1,2]")).unwrap(), 2);
        assert_eq!(t.verma_mult(&m("s1"), &m("e")).unwrap(), 0);
        let k = BlockSet::empty(2, 2);
        for (w, expect) in [("e", 1), ("s2", 1), ("[3,4,1,2]", 1), ("s3*s2", 0), ("s1*s2", 0), ("s1*s3*s2", 0), ("s1", 0)] {
            assert_eq!(t.parabolic_verma_mult(&k, &m(w)).unwrap(), expect, "{w}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let t = KlTable::with_cap(3);
        let err = t.poly(&Permutation::identity(5), &Permutation::parse("[5,3,4,1,2]", None).unwrap());
        assert_eq!(err, Err(Error::CacheCap(3)));
    }

    #[test]
    fn fault_override() {
        let t = KlTable::new();
        t.inject_fault(&p("e"), &p("[3,4,1,2]"), KLPolynomial::from_coeffs(vec![1, 2]));
        assert_eq!(t.poly(&p("e"), &p("[3,4,1,2]")).unwrap().coeffs(), &[1, 2]);
    }

    #[test]
    fn display() {
        assert_eq!(KLPolynomial::from_coeffs(vec![1, 2, 0, 1, 0]).to_string(), "1+2q+q^3");
        assert_eq!(KLPolynomial::zero().to_string(), "0");
    }
}
