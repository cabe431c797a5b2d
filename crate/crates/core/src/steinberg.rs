//! Constituent multiplicities `m(w, J, S)` and Grothendieck-group checks of
//! the smooth and analytic Tits complexes.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use rayon::prelude::*;

use crate::cosets::BlockSet;
use crate::error::{Error, Result};
use crate::kl::KlTable;
use crate::weyl::{enumerate_group, enumerate_parabolic, product_power, MultiWeylElement, Permutation, SimpleRootSet};

/// Finitely supported integer combination of labels.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GrothVector<L: Ord> {
    terms: BTreeMap<L, i64>,
}

impl<L: Ord> Default for GrothVector<L> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<L: Ord + Clone> GrothVector<L> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(label: L) -> Self {
        let mut v = Self::new();
        v.add_term(label, 1);
        v
    }

    pub fn add_term(&mut self, label: L, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(label.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&label);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: i64) {
        for (l, &v) in &other.terms {
            self.add_term(l.clone(), c * v);
        }
    }

    pub fn get(&self, label: &L) -> i64 {
        self.terms.get(label).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, &i64)> {
        self.terms.iter()
    }
}

impl<L: Ord + Clone> Add for &GrothVector<L> {
    type Output = GrothVector<L>;
    fn add(self, rhs: Self) -> GrothVector<L> {
        let mut out = self.clone();
        out.add_scaled(rhs, 1);
        out
    }
}

impl<L: Ord + Clone> Sub for &GrothVector<L> {
    type Output = GrothVector<L>;
    fn sub(self, rhs: Self) -> GrothVector<L> {
        let mut out = self.clone();
        out.add_scaled(rhs, -1);
        out
    }
}

impl<L: Ord + Clone> Neg for &GrothVector<L> {
    type Output = GrothVector<L>;
    fn neg(self) -> GrothVector<L> {
        let mut out = GrothVector::new();
        out.add_scaled(self, -1);
        out
    }
}

/// A JH-factor label `(w, J)` of the analytic Steinberg representation attached to `S`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ConstituentLabel {
    pub w: MultiWeylElement,
    pub j: BlockSet,
    pub s: BlockSet,
}

impl fmt::Display for ConstituentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, J={}, S={})", self.w, self.j, self.s)
    }
}

/// The complex `0 → C_top → ... → C_0` with `C_j = ⊕_{K ⊇ I, |K∖I| = j} [K]`.
#[derive(Clone, Debug)]
pub struct FormalComplex {
    pub base: BlockSet,
    pub terms: Vec<GrothVector<BlockSet>>,
}

impl FormalComplex {
    pub fn tits(i: &BlockSet) -> Self {
        let full = BlockSet::full(i.r(), i.k());
        let mut terms = vec![GrothVector::new(); full.len() - i.len() + 1];
        for kset in i.between(&full) {
            terms[kset.len() - i.len()].add_term(kset, 1);
        }
        Self { base: i.clone(), terms }
    }

    /// `d_{K′,K} = (−1)^a` when `K = K′ ∖ {a-th smallest element of K′}`, else 0.
    pub fn sign(kp: &BlockSet, kset: &BlockSet) -> i32 {
        if kp.len() != kset.len() + 1 || !kset.is_subset(kp) {
            return 0;
        }
        let a = kp.members().iter().position(|&x| !kset.contains(x)).expect("one extra element") + 1;
        if a % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Image of a basis element of `C_j` in `C_{j−1}`.
    pub fn differential(&self, kp: &BlockSet) -> GrothVector<BlockSet> {
        let mut out = GrothVector::new();
        for &x in kp.members() {
            if self.base.contains(x) {
                continue;
            }
            let kset = kp.difference(&BlockSet::new(kp.r(), kp.k(), [x]).expect("member is in range"));
            out.add_term(kset.clone(), Self::sign(kp, &kset) as i64);
        }
        out
    }

    pub fn apply(&self, v: &GrothVector<BlockSet>) -> GrothVector<BlockSet> {
        let mut out = GrothVector::new();
        for (kp, &c) in v.iter() {
            out.add_scaled(&self.differential(kp), c);
        }
        out
    }

    pub fn squares_to_zero(&self) -> bool {
        self.terms.iter().flat_map(|t| t.iter()).all(|(kp, _)| self.apply(&self.differential(kp)).is_zero())
    }
}

/// `∩_σ I(w_σ)`: the roots `i` with `w·λ` dominant for `i` (any dominant `λ`).
pub fn dominance_roots(w: &MultiWeylElement) -> SimpleRootSet {
    w.ascent_intersection()
}

fn check_shape(w: &MultiWeylElement, sets: &[&BlockSet], r: usize, k: usize, d: usize) -> Result<()> {
    if r == 0 || k == 0 || d == 0 {
        return Err(Error::Precondition("r, k and d_L must be positive".into()));
    }
    if w.n() != r * k || w.d() != d {
        return Err(Error::Shape(format!("w is {}x{}, expected {d}x{}", w.d(), w.n(), r * k)));
    }
    if sets.iter().any(|s| s.r() != r || s.k() != k) {
        return Err(Error::Shape(format!("block sets must live over (r,k)=({r},{k})")));
    }
    Ok(())
}

/// `Δ^k ∪ S ⊆ ∩_σ I(w_σ)` and `S ⊆ J ⊆ ∩_σ I(w_σ) ∩ Δ_n(k)`.
pub fn is_admissible(w: &MultiWeylElement, j: &BlockSet, s: &BlockSet) -> bool {
    let dom = dominance_roots(w);
    s.levi_roots().is_subset(&dom) && s.is_subset(j) && j.roots().is_subset(&dom)
}

fn check_admissible(w: &MultiWeylElement, j: &BlockSet, s: &BlockSet, r: usize, k: usize, d: usize) -> Result<()> {
    check_shape(w, &[j, s], r, k, d)?;
    let dom = dominance_roots(w);
    if !s.levi_roots().is_subset(&dom) {
        return Err(Error::Precondition(format!("w·λ is not dominant for Δ^k ∪ S (dominance set {dom})")));
    }
    if !s.is_subset(j) {
        return Err(Error::Precondition(format!("S={s} is not contained in J={j}")));
    }
    if !j.roots().is_subset(&dom) {
        return Err(Error::Precondition(format!("J={j} is not inside the dominance set {dom}")));
    }
    Ok(())
}

fn block_mask(roots: &SimpleRootSet, r: usize, k: usize) -> u64 {
    (1..k).filter(|&i| roots.contains(i * r)).fold(0, |m, i| m | 1 << (i - 1))
}

fn set_mask(b: &BlockSet) -> u64 {
    b.members().iter().fold(0, |m, &i| m | 1 << (i - 1))
}

/// `m(w, J, S) = Σ (−1)^{l(w′) + |J∖S|} m(w′, w)` over `w′ ∈ W_{Δ^k ∪ J}^{d_L}` whose
/// block support `T = ∪_σ supp(w′_σ) ∖ Δ^k` satisfies `J∖S ⊆ T ⊆ J`.
pub fn steinberg_multiplicity_in(
    table: &KlTable,
    w: &MultiWeylElement,
    j: &BlockSet,
    s: &BlockSet,
    r: usize,
    k: usize,
    d: usize,
) -> Result<i64> {
    check_admissible(w, j, s, r, k, d)?;
    let parabolic = enumerate_parabolic(&j.levi_roots())?;
    // Per embedding: signed KL sums bucketed by block support.
    let mut acc: BTreeMap<u64, i64> = BTreeMap::from([(0, 1)]);
    for wc in w.components() {
        let mut buckets: BTreeMap<u64, i64> = BTreeMap::new();
        for y in &parabolic {
            let v = table.poly(y, wc)?.eval_one();
            if v != 0 {
                let sign = if y.length() % 2 == 0 { 1 } else { -1 };
                *buckets.entry(block_mask(&y.support(), r, k)).or_insert(0) += sign * v;
            }
        }
        let mut next = BTreeMap::new();
        for (&ma, &a) in &acc {
            for (&mb, &b) in &buckets {
                *next.entry(ma | mb).or_insert(0) += a * b;
            }
        }
        acc = next;
    }
    let need = set_mask(&j.difference(s));
    let total: i64 = acc.iter().filter(|(&t, _)| t & need == need).map(|(_, &v)| v).sum();
    Ok(if j.difference(s).len().is_multiple_of(2) { total } else { -total })
}

/// `Σ_{S ⊆ K ⊆ J} (−1)^{|K∖S|} [M_K : L(−w·λ)]`.
pub fn steinberg_multiplicity_oracle_in(
    table: &KlTable,
    w: &MultiWeylElement,
    j: &BlockSet,
    s: &BlockSet,
    r: usize,
    k: usize,
    d: usize,
) -> Result<i64> {
    check_admissible(w, j, s, r, k, d)?;
    let mut total = 0;
    for kset in s.between(j) {
        let sign = if (kset.len() - s.len()).is_multiple_of(2) { 1 } else { -1 };
        total += sign * table.parabolic_verma_mult(&kset, w)?;
    }
    Ok(total)
}

pub fn steinberg_multiplicity(w: &MultiWeylElement, j: &BlockSet, s: &BlockSet, r: usize, k: usize, d: usize) -> Result<i64> {
    steinberg_multiplicity_in(KlTable::global(), w, j, s, r, k, d)
}

pub fn steinberg_multiplicity_oracle(
    w: &MultiWeylElement,
    j: &BlockSet,
    s: &BlockSet,
    r: usize,
    k: usize,
    d: usize,
) -> Result<i64> {
    steinberg_multiplicity_oracle_in(KlTable::global(), w, j, s, r, k, d)
}

/// Window default: everything for `n <= 6`, explicit beyond.
pub fn resolve_max_len(n: usize, d: usize, max_len: Option<usize>) -> Result<usize> {
    match max_len {
        Some(m) => Ok(m),
        None if n <= 6 => Ok(n * (n - 1) / 2 * d),
        None => Err(Error::Precondition(format!("max_len must be given for n={n} > 6"))),
    }
}

/// All `w ∈ S_n^{d_L}` with `l(w) <= max_len`, sorted by (length, one-line).
pub fn candidate_elements(n: usize, d: usize, max_len: usize, filter: impl Fn(&Permutation) -> bool) -> Result<Vec<MultiWeylElement>> {
    let base: Vec<Permutation> = enumerate_group(n)?.into_iter().filter(|p| filter(p) && p.length() <= max_len).collect();
    let mut out: Vec<MultiWeylElement> = product_power(&base, d)
        .into_iter()
        .map(|c| MultiWeylElement::new(c).expect("same rank"))
        .filter(|w| w.length() <= max_len)
        .collect();
    out.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Every `(w, J)` with `w·λ` dominant for `Δ^k ∪ S`, `l(w) <= max_len` and `m(w, J, S) ≠ 0`.
/// With `parallel`, work is spread over the current rayon pool; output order is unchanged.
pub fn enumerate_constituents_in(
    table: &KlTable,
    s: &BlockSet,
    d: usize,
    max_len: Option<usize>,
    parallel: bool,
) -> Result<Vec<(ConstituentLabel, i64)>> {
    let (r, k) = (s.r(), s.k());
    let n = r * k;
    if d == 0 {
        return Err(Error::Precondition("d_L must be positive".into()));
    }
    let max_len = resolve_max_len(n, d, max_len)?;
    let need = s.levi_roots();
    let cands = candidate_elements(n, d, max_len, |p| need.is_subset(&p.ascents_left()))?;
    let per_w = |w: &MultiWeylElement| -> Result<Vec<(ConstituentLabel, i64)>> {
        let upper = BlockSet::from_roots(r, k, &dominance_roots(w));
        let mut out = Vec::new();
        for j in s.between(&upper) {
            let m = steinberg_multiplicity_in(table, w, &j, s, r, k, d)?;
            if m != 0 {
                out.push((ConstituentLabel { w: w.clone(), j, s: s.clone() }, m));
            }
        }
        Ok(out)
    };
    let chunks: Vec<Result<Vec<_>>> =
        if parallel { cands.par_iter().map(per_w).collect() } else { cands.iter().map(per_w).collect() };
    let mut out = Vec::new();
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

pub fn enumerate_constituents(s: &BlockSet, d: usize, max_len: Option<usize>) -> Result<Vec<(ConstituentLabel, i64)>> {
    enumerate_constituents_in(KlTable::global(), s, d, max_len, false)
}

/// `Σ_j (−1)^j [C_j] = e_I`, expanding `[i_K] = Σ_{J ⊇ K} e_J`.
pub fn smooth_tits_euler_check(i: &BlockSet) -> bool {
    let full = BlockSet::full(i.r(), i.k());
    let cx = FormalComplex::tits(i);
    let mut euler = GrothVector::new();
    for (deg, term) in cx.terms.iter().enumerate() {
        let sign = if deg % 2 == 0 { 1 } else { -1 };
        for (kset, &c) in term.iter() {
            for jset in kset.between(&full) {
                euler.add_term(jset, sign * c);
            }
        }
    }
    euler == GrothVector::basis(i.clone())
}

/// For every `w` in the length window, expands `Σ_{K ⊇ S} (−1)^{|K∖S|} [I_K]` with
/// `[I_K] = Σ_w [M_K : L(−w·λ)] Σ_{K ⊆ J ⊆ I(w) ∩ Δ(k)} e_{(w,J)}` and compares the
/// coefficient of each `e_{(w,J)}` with `m(w, J, S)` (zero when not admissible).
/// Also checks that `[M_K : L(−w·λ)]` vanishes whenever `Δ^k ∪ K ⊄ I(w)`, which is
/// what lets the expansion stop at `I(w)`.
pub fn analytic_tits_euler_check_in(table: &KlTable, s: &BlockSet, d: usize, max_len: Option<usize>) -> Result<bool> {
    let (r, k) = (s.r(), s.k());
    let n = r * k;
    let max_len = resolve_max_len(n, d, max_len)?;
    let full = BlockSet::full(r, k);
    let ks = s.between(&full);
    for w in candidate_elements(n, d, max_len, |_| true)? {
        let dom = dominance_roots(&w);
        let upper = BlockSet::from_roots(r, k, &dom);
        let mut euler: GrothVector<BlockSet> = GrothVector::new();
        for kset in &ks {
            let pv = table.parabolic_verma_mult(kset, &w)?;
            if !kset.levi_roots().is_subset(&dom) {
                if pv != 0 {
                    return Ok(false);
                }
                continue;
            }
            let sign = if (kset.len() - s.len()).is_multiple_of(2) { 1 } else { -1 };
            for j in kset.between(&upper) {
                euler.add_term(j, sign * pv);
            }
        }
        for j in BlockSet::empty(r, k).between(&upper) {
            let expect =
                if is_admissible(&w, &j, s) { steinberg_multiplicity_in(table, &w, &j, s, r, k, d)? } else { 0 };
            if euler.get(&j) != expect {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn analytic_tits_euler_check(s: &BlockSet, d: usize, max_len: Option<usize>) -> Result<bool> {
    analytic_tits_euler_check_in(KlTable::global(), s, d, max_len)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> MultiWeylElement {
        MultiWeylElement::parse(s, Some(4)).unwrap()
    }

    #[test]
    fn gl4_values() {
        let e = BlockSet::empty(2, 2);
        for (word, m) in [("e", 1), ("s2", 1), ("s2*s3", 0), ("s2*s1", 0), ("s2*s1*s3", 0), ("s2*s3*s1*s2", 1)] {
            assert_eq!(steinberg_multiplicity(&w(word), &e, &e, 2, 2, 1).unwrap(), m, "{word}");
        }
    }

    #[test]
    fn rejects_inadmissible() {
        let e = BlockSet::empty(2, 2);
        assert!(steinberg_multiplicity(&w("s1"), &e, &e, 2, 2, 1).is_err());
        let one = BlockSet::full(2, 2);
        assert!(steinberg_multiplicity(&w("e"), &e, &one, 2, 2, 1).is_err());
        assert!(steinberg_multiplicity(&w("e"), &e, &e, 2, 2, 2).is_err());
    }

    #[test]
    fn corrected_support_condition() {
        // With S = J nonempty the literal condition supp ∖ Δ^k = J ∖ S would drop
        // terms; here the oracle gives 0.
        let w = MultiWeylElement::parse("s2*s1", Some(3)).unwrap();
        let j = BlockSet::new(1, 3, [1]).unwrap();
        assert_eq!(steinberg_multiplicity(&w, &j, &j, 1, 3, 1).unwrap(), 0);
        assert_eq!(steinberg_multiplicity_oracle(&w, &j, &j, 1, 3, 1).unwrap(), 0);
    }

    #[test]
    fn constituents_gl4() {
        let got = enumerate_constituents(&BlockSet::empty(2, 2), 1, None).unwrap();
        let labels: Vec<String> = got.iter().map(|(l, m)| format!("{} {} {m}", l.w, l.j)).collect();
        assert_eq!(labels, vec!["[1,2,3,4] - 1", "[1,3,2,4] - 1", "[3,4,1,2] - 1"]);
        let k1 = enumerate_constituents(&BlockSet::empty(3, 1), 1, None).unwrap();
        assert_eq!(k1.len(), 1);
        assert!(k1[0].0.w.components()[0].is_identity());
    }

    #[test]
    fn complexes() {
        for k in 1..=5 {
            for i in BlockSet::all_subsets(1, k) {
                assert!(FormalComplex::tits(&i).squares_to_zero());
                assert!(smooth_tits_euler_check(&i));
            }
        }
        assert!(analytic_tits_euler_check(&BlockSet::empty(2, 2), 1, None).unwrap());
    }

    #[test]
    fn groth_arithmetic() {
        let a = GrothVector::basis("x");
        let b = GrothVector::basis("y");
        let c = &(&a + &b) - &a;
        assert_eq!(c, b);
        assert!((&c + &(-&b)).is_zero());
    }
}
