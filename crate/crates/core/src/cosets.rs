//! Double cosets, the coset matrix bijection and the block-scaled
//! subgroups attached to a block size `r` and block count `k` (`n = rk`).

use std::fmt;

use crate::error::{Error, Result};
use crate::weyl::{enumerate_group, fmt_index_set, Permutation, SimpleRootSet};

/// A subset of `Δ_n(k) = {r, 2r, ..., (k-1)r}`, stored by block index `i`
/// (meaning the root `ir`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BlockSet {
    r: usize,
    k: usize,
    members: Vec<usize>,
}

impl BlockSet {
    pub fn new(r: usize, k: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        if r == 0 || k == 0 {
            return Err(Error::Precondition("r and k must be positive".into()));
        }
        let mut m: Vec<usize> = members.into_iter().collect();
        m.sort_unstable();
        m.dedup();
        if let Some(&bad) = m.iter().find(|&&i| i == 0 || i >= k) {
            return Err(Error::Precondition(format!("block index {bad} outside 1..{}", k - 1)));
        }
        Ok(Self { r, k, members: m })
    }

    pub fn empty(r: usize, k: usize) -> Self {
        Self { r, k, members: Vec::new() }
    }

    /// `Δ_n(k)` itself.
    pub fn full(r: usize, k: usize) -> Self {
        Self { r, k, members: (1..k).collect() }
    }

    /// `Δ_{k,i} = Δ_n(k) ∖ {ir}`.
    pub fn full_minus(r: usize, k: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= k {
            return Err(Error::Precondition(format!("block index {i} outside 1..{}", k.saturating_sub(1))));
        }
        Self::new(r, k, (1..k).filter(|&j| j != i))
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.r * self.k
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
        Self { r: self.r, k: self.k, members: m }
    }

    pub fn difference(&self, other: &Self) -> Self {
        Self {
            r: self.r,
            k: self.k,
            members: self.members.iter().copied().filter(|&i| !other.contains(i)).collect(),
        }
    }

    /// The roots `{ir}` as a subset of `Δ_n`.
    pub fn roots(&self) -> SimpleRootSet {
        SimpleRootSet::from_iter_unchecked(self.n(), self.members.iter().map(|&i| i * self.r))
    }

    /// `Δ_n^k ∪ I`: the roots inside blocks together with the chosen block walls.
    pub fn levi_roots(&self) -> SimpleRootSet {
        let r = self.r;
        SimpleRootSet::from_iter_unchecked(
            self.n(),
            (1..self.n()).filter(|&a| a % r != 0 || self.contains(a / r)),
        )
    }

    /// Block indices `i` with `ir ∈ roots`.
    pub fn from_roots(r: usize, k: usize, roots: &SimpleRootSet) -> Self {
        Self { r, k, members: (1..k).filter(|&i| roots.contains(i * r)).collect() }
    }

    /// All subsets of `Δ_n(k)`, ordered by bitmask.
    pub fn all_subsets(r: usize, k: usize) -> Vec<Self> {
        let m = k.saturating_sub(1);
        (0u64..1 << m)
            .map(|mask| Self { r, k, members: (1..k).filter(|&i| mask >> (i - 1) & 1 == 1).collect() })
            .collect()
    }

    /// All `K` with `self ⊆ K ⊆ upper`.
    pub fn between(&self, upper: &Self) -> Vec<Self> {
        let free: Vec<usize> = upper.members.iter().copied().filter(|&i| !self.contains(i)).collect();
        (0u64..1 << free.len())
            .map(|mask| {
                let extra = free.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i);
                self.union(&Self { r: self.r, k: self.k, members: extra.collect() })
            })
            .collect()
    }

    pub fn parse(s: &str, r: usize, k: usize) -> Result<Self> {
        let t = s.trim();
        if t == "-" || t.is_empty() {
            return Self::new(r, k, []);
        }
        let m = t
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("bad block set {s:?}")))?;
        Self::new(r, k, m)
    }
}

impl fmt::Display for BlockSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_index_set(f, &self.members)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderedPartition {
    pub parts: Vec<usize>,
}

impl OrderedPartition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `s_i = k_1 + ... + k_i` (no factor `r`), with `s_0 = 0`.
    pub fn partial_sum(&self, i: usize) -> usize {
        self.parts[..i].iter().sum()
    }
}

/// Block sizes `(k_1, ..., k_l)` of the Levi cut out by `I`.
pub fn partition_of(i: &BlockSet) -> OrderedPartition {
    OrderedPartition { parts: SimpleRootSet::from_iter_unchecked(i.k(), i.members().to_vec()).block_sizes() }
}

/// `w(J) ⊆ Φ⁺` and `w⁻¹(I) ⊆ Φ⁺`.
pub fn is_min_double_coset_rep(w: &Permutation, i: &SimpleRootSet, j: &SimpleRootSet) -> bool {
    j.members().iter().all(|&a| !w.has_right_descent(a)) && i.members().iter().all(|&a| !w.has_left_descent(a))
}

/// One minimal-length element per double coset `W_I \ S_n / W_J`, lexicographic.
pub fn min_double_coset_reps(n: usize, i: &SimpleRootSet, j: &SimpleRootSet) -> Result<Vec<Permutation>> {
    if i.n() != n || j.n() != n {
        return Err(Error::RankMismatch(i.n().max(j.n()), n));
    }
    Ok(enumerate_group(n)?.into_iter().filter(|w| is_min_double_coset_rep(w, i, j)).collect())
}

/// `B(w)_{ab} = |I_a ∩ w(J_b)|` over the blocks of `I` and `J`.
pub fn coset_matrix(w: &Permutation, i: &SimpleRootSet, j: &SimpleRootSet) -> Result<Vec<Vec<usize>>> {
    let n = w.n();
    if i.n() != n || j.n() != n {
        return Err(Error::RankMismatch(i.n().max(j.n()), n));
    }
    if !is_min_double_coset_rep(w, i, j) {
        return Err(Error::Precondition(format!("{w} is not a minimal double coset representative")));
    }
    let block_index = |sizes: Vec<usize>| -> Vec<usize> {
        sizes.iter().enumerate().flat_map(|(b, &s)| std::iter::repeat_n(b, s)).collect()
    };
    let row_of = block_index(i.block_sizes());
    let col_of = block_index(j.block_sizes());
    let mut m = vec![vec![0; j.block_sizes().len()]; i.block_sizes().len()];
    for pos in 1..=n {
        m[row_of[w.at(pos) - 1]][col_of[pos - 1]] += 1;
    }
    Ok(m)
}

/// `w°((i-1)r + l) = (w(i)-1)r + l` for `1 <= l <= r`.
pub fn block_embed(w: &Permutation, r: usize) -> Permutation {
    let k = w.n();
    let mut out = Vec::with_capacity(r * k);
    for i in 1..=k {
        out.extend((1..=r).map(|l| (w.at(i) - 1) * r + l));
    }
    Permutation::new(&out).expect("block embedding is a permutation")
}

/// Minimal in `W_{Δ^k ∪ I} \ S_n / W_{Δ^k ∪ J}` and normalizing `Δ_n^k`.
#[allow(non_snake_case)]
pub fn is_in_W_IJ(w: &Permutation, i: &BlockSet, j: &BlockSet) -> Result<bool> {
    let n = i.n();
    if j.n() != n || w.n() != n || i.r() != j.r() {
        return Err(Error::Shape(format!("w in S_{}, I over {}x{}, J over {}x{}", w.n(), i.r(), i.k(), j.r(), j.k())));
    }
    if !is_min_double_coset_rep(w, &i.levi_roots(), &j.levi_roots()) {
        return Ok(false);
    }
    let r = i.r();
    Ok((1..n).filter(|a| a % r != 0).all(|a| w.at(a + 1) == w.at(a) + 1 && !w.at(a).is_multiple_of(r)))
}

/// `a_{i,I} = r(Σ_{j<i} k_j − Σ_{j>i} k_j)`.
pub fn modulus_exponents(i: &BlockSet) -> Vec<i64> {
    let parts = partition_of(i).parts;
    let r = i.r() as i64;
    (0..parts.len())
        .map(|a| {
            let before: usize = parts[..a].iter().sum();
            let after: usize = parts[a + 1..].iter().sum();
            r * (before as i64 - after as i64)
        })
        .collect()
}

/// The closed form `r(2 s_{i-1} + k_i − k)` with r-free partial sums.
pub fn modulus_exponents_closed(i: &BlockSet) -> Vec<i64> {
    let p = partition_of(i);
    let (r, k) = (i.r() as i64, i.k() as i64);
    (0..p.len()).map(|a| r * (2 * p.partial_sum(a) as i64 + p.parts[a] as i64 - k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots(n: usize, m: &[usize]) -> SimpleRootSet {
        SimpleRootSet::new(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn partitions() {
        assert_eq!(partition_of(&BlockSet::empty(2, 2)).parts, vec![1, 1]);
        assert_eq!(partition_of(&BlockSet::full(2, 2)).parts, vec![2]);
        assert_eq!(partition_of(&BlockSet::new(1, 5, [2, 3]).unwrap()).parts, vec![1, 3, 1]);
    }

    #[test]
    fn double_coset_reps() {
        let e2 = roots(2, &[]);
        assert_eq!(min_double_coset_reps(2, &e2, &e2).unwrap().len(), 2);
        let i = roots(3, &[1]);
        let reps = min_double_coset_reps(3, &i, &i).unwrap();
        assert_eq!(reps, vec![Permutation::identity(3), Permutation::simple(3, 2)]);
        let i = roots(4, &[1, 3]);
        assert_eq!(min_double_coset_reps(4, &i, &i).unwrap().len(), 3);
    }

    #[test]
    fn coset_matrices() {
        let e3 = roots(3, &[]);
        assert_eq!(
            coset_matrix(&Permutation::identity(3), &e3, &e3).unwrap(),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
        let i = roots(4, &[1, 3]);
        assert_eq!(coset_matrix(&Permutation::identity(4), &i, &i).unwrap(), vec![vec![2, 0], vec![0, 2]]);
        let w = Permutation::parse("[3,4,1,2]", None).unwrap();
        assert_eq!(coset_matrix(&w, &i, &i).unwrap(), vec![vec![0, 2], vec![2, 0]]);
        assert!(coset_matrix(&Permutation::simple(4, 1), &i, &i).is_err());
    }

    #[test]
    fn embedding() {
        assert!(block_embed(&Permutation::identity(2), 2).is_identity());
        assert_eq!(block_embed(&Permutation::simple(2, 1), 2).to_string(), "[3,4,1,2]");
        assert_eq!(block_embed(&Permutation::simple(3, 1), 1), Permutation::simple(3, 1));
    }

    #[test]
    fn w_ij_membership() {
        let e = BlockSet::empty(2, 2);
        assert!(is_in_W_IJ(&Permutation::identity(4), &e, &e).unwrap());
        assert!(is_in_W_IJ(&Permutation::parse("[3,4,1,2]", None).unwrap(), &e, &e).unwrap());
        assert!(!is_in_W_IJ(&Permutation::simple(4, 2), &e, &e).unwrap());
    }

    #[test]
    fn modulus() {
        assert_eq!(modulus_exponents(&BlockSet::empty(2, 2)), vec![-2, 2]);
        assert_eq!(modulus_exponents(&BlockSet::full(3, 4)), vec![0]);
        for k in 1..6 {
            let a = modulus_exponents(&BlockSet::empty(3, k));
            let expect: Vec<i64> = (1..=k as i64).map(|i| 3 * (2 * i - 1 - k as i64)).collect();
            assert_eq!(a, expect);
        }
    }

    #[test]
    fn block_set_text() {
        let s = BlockSet::parse("2,1", 2, 4).unwrap();
        assert_eq!(s.to_string(), "1,2");
        assert_eq!(BlockSet::parse(&s.to_string(), 2, 4).unwrap(), s);
        assert!(BlockSet::parse("4", 2, 4).is_err());
        assert_eq!(s.levi_roots().members(), &[1, 2, 3, 4, 5, 7]);
        assert_eq!(BlockSet::empty(1, 4).between(&BlockSet::full(1, 4)).len(), 8);
    }
}
