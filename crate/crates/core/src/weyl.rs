//! Type A Weyl groups: permutations in one-line notation, Bruhat order,
//! parabolic subgroups and the `d_L`-fold product group.
//!
//! Composition is composition of functions on positions: `(u * v)(i) = u(v(i))`.
//! Left multiplication by `s_i` swaps the values `i` and `i+1`, right
//! multiplication swaps the entries in positions `i` and `i+1`.

use std::fmt;

use crate::error::{Error, Result};

/// Default ceiling on `n` for anything that enumerates all of `S_n`.
pub const DEFAULT_MAX_RANK: usize = 9;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    w: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from its one-line form (values `1..=n`).
    pub fn new(one_line: &[usize]) -> Result<Self> {
        let n = one_line.len();
        if n == 0 || n > u8::MAX as usize {
            return Err(Error::Parse(format!("rank {n} out of range")));
        }
        let mut seen = vec![false; n + 1];
        for &v in one_line {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Parse(format!("{one_line:?} is not a permutation of 1..{n}")));
            }
            seen[v] = true;
        }
        Ok(Self { w: one_line.iter().map(|&v| v as u8).collect() })
    }

    pub fn identity(n: usize) -> Self {
        Self { w: (1..=n as u8).collect() }
    }

    /// The simple reflection `s_i`, `1 <= i < n`.
    pub fn simple(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "s_{i} not in S_{n}");
        let mut p = Self::identity(n);
        p.w.swap(i - 1, i);
        p
    }

    /// `s_{i_1} * s_{i_2} * ... * s_{i_m}`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut p = Self::identity(n);
        for &i in word.iter().rev() {
            if i == 0 || i >= n {
                return Err(Error::Parse(format!("s{i} is not a simple reflection of S_{n}")));
            }
            p = p.lmul_simple(i);
        }
        Ok(p)
    }

    /// Parses `"[3,4,1,2]"`, `"s2*s1*s3*s2"` or `"e"`. Word forms need `n`.
    pub fn parse(s: &str, n: Option<usize>) -> Result<Self> {
        let t = s.trim();
        let p = if let Some(body) = t.strip_prefix('[') {
            let body = body
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unterminated permutation {s:?}")))?;
            let vals = body
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse(format!("bad permutation {s:?}")))?;
            Self::new(&vals)?
        } else {
            let n = n.ok_or_else(|| Error::Parse(format!("word form {s:?} needs an explicit rank")))?;
            if t == "e" || t == "1" {
                Self::identity(n)
            } else {
                let word = t
                    .split('*')
                    .map(|x| x.trim().strip_prefix('s').and_then(|d| d.parse::<usize>().ok()))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::Parse(format!("bad word {s:?}")))?;
                Self::from_word(n, &word)?
            }
        };
        if let Some(n) = n {
            if p.n() != n {
                return Err(Error::RankMismatch(p.n(), n));
            }
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    /// `w(i)` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> usize {
        self.w[i - 1] as usize
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.w.iter().map(|&v| v as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.w.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.n()];
        for (i, &v) in self.w.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Self { w: inv }
    }

    /// `self * other`, i.e. `other` applied first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch(self.n(), other.n()));
        }
        Ok(Self { w: other.w.iter().map(|&v| self.w[v as usize - 1]).collect() })
    }

    /// `s_i * self`.
    pub fn lmul_simple(&self, i: usize) -> Self {
        let a = i as u8;
        Self {
            w: self
                .w
                .iter()
                .map(|&v| if v == a { a + 1 } else if v == a + 1 { a } else { v })
                .collect(),
        }
    }

    /// `self * s_i`.
    pub fn rmul_simple(&self, i: usize) -> Self {
        let mut w = self.w.clone();
        w.swap(i - 1, i);
        Self { w }
    }

    pub fn length(&self) -> usize {
        let w = &self.w;
        let mut inv = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    fn position_of(&self, value: usize) -> usize {
        self.w.iter().position(|&v| v as usize == value).expect("value in range")
    }

    /// `l(s_i w) < l(w)`: the value `i+1` sits left of `i`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.position_of(i + 1) < self.position_of(i)
    }

    /// `l(w s_i) < l(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.w[i - 1] > self.w[i]
    }

    pub fn descents_left(&self) -> SimpleRootSet {
        let n = self.n();
        SimpleRootSet::from_iter_unchecked(n, (1..n).filter(|&i| self.has_left_descent(i)))
    }

    pub fn descents_right(&self) -> SimpleRootSet {
        let n = self.n();
        SimpleRootSet::from_iter_unchecked(n, (1..n).filter(|&i| self.has_right_descent(i)))
    }

    /// `I(w) = {i : l(s_i w) > l(w)}`.
    pub fn ascents_left(&self) -> SimpleRootSet {
        let n = self.n();
        SimpleRootSet::from_iter_unchecked(n, (1..n).filter(|&i| !self.has_left_descent(i)))
    }

    /// A reduced word, peeling off the smallest left descent each time.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length());
        let mut cur = self.clone();
        while let Some(i) = (1..cur.n()).find(|&i| cur.has_left_descent(i)) {
            word.push(i);
            cur = cur.lmul_simple(i);
        }
        word
    }

    pub fn support(&self) -> SimpleRootSet {
        // s_i occurs in some (equivalently every) reduced word iff w does not fix {1..i}.
        let n = self.n();
        let mut max_prefix = 0;
        let mut out = Vec::new();
        for i in 1..n {
            max_prefix = max_prefix.max(self.w[i - 1] as usize);
            if max_prefix > i {
                out.push(i);
            }
        }
        SimpleRootSet::from_iter_unchecked(n, out)
    }

    /// Bruhat order via the lifting recursion along a reduced word of `w`:
    /// with `s` a left descent of `w`, `x <= w` iff `min(x, sx) <= sw`.
    pub fn bruhat_leq(&self, w: &Self) -> Result<bool> {
        if self.n() != w.n() {
            return Err(Error::RankMismatch(self.n(), w.n()));
        }
        let mut x = self.clone();
        let mut lx = x.length();
        if lx > w.length() {
            return Ok(false);
        }
        for s in w.reduced_word() {
            if lx == 0 {
                return Ok(true);
            }
            if x.has_left_descent(s) {
                x = x.lmul_simple(s);
                lx -= 1;
            }
        }
        Ok(lx == 0)
    }

    /// Rank-matrix criterion: `x <= w` iff `#{j <= i : x(j) >= m} <= #{j <= i : w(j) >= m}`
    /// for all `i, m`. Kept as an independent check on [`Self::bruhat_leq`].
    pub fn bruhat_leq_rank(&self, w: &Self) -> Result<bool> {
        let n = self.n();
        if n != w.n() {
            return Err(Error::RankMismatch(n, w.n()));
        }
        for m in 1..=n as u8 {
            let (mut cx, mut cw) = (0, 0);
            for i in 0..n {
                cx += (self.w[i] >= m) as i32;
                cw += (w.w[i] >= m) as i32;
                if cx > cw {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Lexicographic rank of the one-line form among all of `S_n`.
    pub fn lex_rank(&self) -> u64 {
        let n = self.n();
        let mut rank = 0u64;
        for i in 0..n {
            let smaller = self.w[i + 1..].iter().filter(|&&v| v < self.w[i]).count() as u64;
            rank = rank * (n - i) as u64 + smaller;
        }
        rank
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.w.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A subset of `Δ_n = {1, ..., n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SimpleRootSet {
    n: usize,
    members: Vec<usize>,
}

impl SimpleRootSet {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut m: Vec<usize> = members.into_iter().collect();
        m.sort_unstable();
        m.dedup();
        if let Some(&bad) = m.iter().find(|&&i| i == 0 || i >= n) {
            return Err(Error::Precondition(format!("{bad} is not a simple root of S_{n}")));
        }
        Ok(Self { n, members: m })
    }

    pub(crate) fn from_iter_unchecked(n: usize, members: impl IntoIterator<Item = usize>) -> Self {
        Self { n, members: members.into_iter().collect() }
    }

    pub fn empty(n: usize) -> Self {
        Self { n, members: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Self { n, members: (1..n).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.members.iter().all(|&i| other.contains(i))
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut m = self.members.clone();
        m.extend_from_slice(&other.members);
        m.sort_unstable();
        m.dedup();
        Self { n: self.n, members: m }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self { n: self.n, members: self.members.iter().copied().filter(|&i| other.contains(i)).collect() }
    }

    /// Block sizes of the standard Levi of `W_I`: cut `1..n` after every `i ∉ I`.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![1];
        for i in 1..self.n {
            if self.contains(i) {
                *sizes.last_mut().unwrap() += 1;
            } else {
                sizes.push(1);
            }
        }
        sizes
    }

    /// Parses `"1,3"`; `"-"` is the empty set.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let t = s.trim();
        if t == "-" || t.is_empty() {
            return Ok(Self::empty(n));
        }
        let m = t
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("bad root set {s:?}")))?;
        Self::new(n, m)
    }
}

impl fmt::Display for SimpleRootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_index_set(f, &self.members)
    }
}

pub(crate) fn fmt_index_set(f: &mut fmt::Formatter<'_>, members: &[usize]) -> fmt::Result {
    if members.is_empty() {
        return write!(f, "-");
    }
    for (i, m) in members.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{m}")?;
    }
    Ok(())
}

/// Longest element of `W_I`: reverses every block.
pub fn longest_element(i: &SimpleRootSet) -> Permutation {
    let mut w = Vec::with_capacity(i.n());
    let mut start = 1;
    for size in i.block_sizes() {
        w.extend((start..start + size).rev());
        start += size;
    }
    Permutation::new(&w).expect("block reversal is a permutation")
}

fn check_bound(n: usize, bound: usize) -> Result<()> {
    if n > bound {
        Err(Error::BoundExceeded { n, bound })
    } else if n == 0 {
        Err(Error::Precondition("rank must be positive".into()))
    } else {
        Ok(())
    }
}

/// All of `S_n` in lexicographic order of one-line forms.
pub fn enumerate_group(n: usize) -> Result<Vec<Permutation>> {
    enumerate_group_bounded(n, DEFAULT_MAX_RANK)
}

pub fn enumerate_group_bounded(n: usize, bound: usize) -> Result<Vec<Permutation>> {
    check_bound(n, bound)?;
    let mut cur: Vec<u8> = (1..=n as u8).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation { w: cur.clone() });
        if !next_permutation(&mut cur) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(a: &mut [u8]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// All of `W_I` in lexicographic order.
pub fn enumerate_parabolic(i: &SimpleRootSet) -> Result<Vec<Permutation>> {
    enumerate_parabolic_bounded(i, DEFAULT_MAX_RANK)
}

pub fn enumerate_parabolic_bounded(i: &SimpleRootSet, bound: usize) -> Result<Vec<Permutation>> {
    let n = i.n();
    check_bound(n, bound)?;
    let mut out = vec![Vec::with_capacity(n)];
    let mut start = 1u8;
    for size in i.block_sizes() {
        let mut block: Vec<u8> = (start..start + size as u8).collect();
        let mut perms = Vec::new();
        loop {
            perms.push(block.clone());
            if !next_permutation(&mut block) {
                break;
            }
        }
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u8>| {
                perms.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(p);
                    v
                })
            })
            .collect();
        start += size as u8;
    }
    Ok(out.into_iter().map(|w| Permutation { w }).collect())
}

/// An element of the product `W_n^{d_L}`, one factor per embedding.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MultiWeylElement {
    comps: Vec<Permutation>,
}

impl MultiWeylElement {
    pub fn new(comps: Vec<Permutation>) -> Result<Self> {
        let Some(first) = comps.first() else {
            return Err(Error::Shape("need at least one component".into()));
        };
        if let Some(bad) = comps.iter().find(|c| c.n() != first.n()) {
            return Err(Error::RankMismatch(first.n(), bad.n()));
        }
        Ok(Self { comps })
    }

    pub fn single(w: Permutation) -> Self {
        Self { comps: vec![w] }
    }

    pub fn identity(n: usize, d: usize) -> Self {
        Self { comps: vec![Permutation::identity(n); d] }
    }

    pub fn components(&self) -> &[Permutation] {
        &self.comps
    }

    pub fn n(&self) -> usize {
        self.comps[0].n()
    }

    pub fn d(&self) -> usize {
        self.comps.len()
    }

    pub fn length(&self) -> usize {
        self.comps.iter().map(Permutation::length).sum()
    }

    pub fn supports(&self) -> Vec<SimpleRootSet> {
        self.comps.iter().map(Permutation::support).collect()
    }

    pub fn ascent_sets(&self) -> Vec<SimpleRootSet> {
        self.comps.iter().map(Permutation::ascents_left).collect()
    }

    /// `∪_σ I(w_σ)`, the literal union form.
    pub fn ascent_union(&self) -> SimpleRootSet {
        self.ascent_sets().iter().fold(SimpleRootSet::empty(self.n()), |a, b| a.union(b))
    }

    /// `∩_σ I(w_σ)`, the joint dominance set.
    pub fn ascent_intersection(&self) -> SimpleRootSet {
        self.ascent_sets().iter().fold(SimpleRootSet::full(self.n()), |a, b| a.intersection(b))
    }

    pub fn inverse(&self) -> Self {
        Self { comps: self.comps.iter().map(Permutation::inverse).collect() }
    }

    pub fn bruhat_leq(&self, other: &Self) -> Result<bool> {
        self.check_shape(other)?;
        for (a, b) in self.comps.iter().zip(&other.comps) {
            if !a.bruhat_leq(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn check_shape(&self, other: &Self) -> Result<()> {
        if self.d() != other.d() || self.n() != other.n() {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.d(),
                self.n(),
                other.d(),
                other.n()
            )));
        }
        Ok(())
    }

    /// Components separated by `;`, each in any [`Permutation::parse`] form.
    pub fn parse(s: &str, n: Option<usize>) -> Result<Self> {
        let comps = s
            .split(';')
            .map(|c| Permutation::parse(c, n))
            .collect::<Result<Vec<_>>>()?;
        Self::new(comps)
    }
}

impl fmt::Display for MultiWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Cartesian power of a list, first factor varying slowest.
pub fn product_power<T: Clone>(items: &[T], d: usize) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p| {
                items.iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(x.clone());
                    q
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s, Some(4)).unwrap()
    }

    #[test]
    fn word_anchor() {
        assert_eq!(p("s2*s1*s3*s2"), p("[3,4,1,2]"));
        assert_eq!(p("[3,4,1,2]").reduced_word(), vec![2, 1, 3, 2]);
    }

    #[test]
    fn lengths() {
        assert_eq!(p("e").length(), 0);
        assert_eq!(p("[3,4,1,2]").length(), 4);
        assert_eq!(p("[4,3,2,1]").length(), 6);
    }

    #[test]
    fn bruhat_examples() {
        assert!(p("[2,1,4,3]").bruhat_leq(&p("[3,4,1,2]")).unwrap());
        assert!(!p("[2,1,3,4]").bruhat_leq(&p("[1,3,2,4]")).unwrap());
        assert!(Permutation::identity(3).bruhat_leq(&p("[1,2,3,4]")).is_err());
    }

    #[test]
    fn ascents_and_support() {
        assert_eq!(p("e").ascents_left(), SimpleRootSet::full(4));
        assert_eq!(p("s2").ascents_left().members(), &[1, 3]);
        assert_eq!(p("[3,4,1,2]").ascents_left().members(), &[1, 3]);
        assert!(p("e").support().is_empty());
        assert_eq!(p("s2").support().members(), &[2]);
        assert_eq!(p("[3,4,1,2]").support().members(), &[1, 2, 3]);
    }

    #[test]
    fn longest_elements() {
        assert!(longest_element(&SimpleRootSet::empty(4)).is_identity());
        assert_eq!(longest_element(&SimpleRootSet::full(4)), p("[4,3,2,1]"));
        assert_eq!(longest_element(&SimpleRootSet::new(4, [1, 3]).unwrap()), p("[2,1,4,3]"));
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_group(1).unwrap().len(), 1);
        assert_eq!(enumerate_group(3).unwrap().len(), 6);
        let g = enumerate_group(4).unwrap();
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        let par = enumerate_parabolic(&SimpleRootSet::new(3, [1]).unwrap()).unwrap();
        assert_eq!(par, vec![Permutation::identity(3), Permutation::simple(3, 1)]);
        assert!(matches!(enumerate_group(10), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn lex_rank_matches_enumeration_order() {
        for (i, w) in enumerate_group(5).unwrap().iter().enumerate() {
            assert_eq!(w.lex_rank(), i as u64);
        }
    }

    #[test]
    fn parse_roundtrip() {
        let w = MultiWeylElement::parse("[3,4,1,2];s2", Some(4)).unwrap();
        assert_eq!(w.to_string(), "[3,4,1,2];[1,3,2,4]");
        assert_eq!(MultiWeylElement::parse(&w.to_string(), None).unwrap(), w);
        assert!(Permutation::parse("[1,1,2]", None).is_err());
        assert!(Permutation::parse("s1*s2", None).is_err());
        assert_eq!(SimpleRootSet::parse("-", 4).unwrap().to_string(), "-");
        assert_eq!(SimpleRootSet::parse("3,1", 4).unwrap().to_string(), "1,3");
        assert!(SimpleRootSet::parse("4", 4).is_err());
    }
}
