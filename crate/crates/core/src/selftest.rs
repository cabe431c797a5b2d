//! Invariant suites run by `weylkit selftest`.
//!
//! `Quick` covers ranks up to 5, `Full` up to 7. KL comparisons against the
//! R-polynomial oracle stop at `S_5` (the oracle is cubic in `n!`); KL
//! properties run on `S_6` in `Full`.

use std::time::Instant;

use serde::Serialize;

use crate::cosets::{block_embed, min_double_coset_reps, modulus_exponents, BlockSet};
use crate::error::Result;
use crate::ext::{self, CharGroup, ExtQuery, ExtStatus, Flavor, Params, RepDescriptor};
use crate::kl::KlTable;
use crate::oracle;
use crate::segments::{jacquet_decomposition, jh_factors, pi_base_twists, pi_i_segments, theta_fiber};
use crate::steinberg::{
    analytic_tits_euler_check_in, candidate_elements, is_admissible, smooth_tits_euler_check,
    steinberg_multiplicity_in, steinberg_multiplicity_oracle_in, FormalComplex,
};
use crate::weights::{dominance_set, dot_action, IntegralWeight};
use crate::weyl::{enumerate_group, longest_element, MultiWeylElement, Permutation, SimpleRootSet};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Level {
    Quick,
    Full,
}

impl Level {
    pub fn max_rank(self) -> usize {
        match self {
            Level::Quick => 5,
            Level::Full => 7,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub pass: bool,
    pub checks: u64,
    pub failures: Vec<String>,
    /// Wall time; left out of the JSON so reports are reproducible.
    #[serde(skip)]
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub level: &'static str,
    pub pass: bool,
    pub suites: Vec<SuiteReport>,
}

struct Suite {
    checks: u64,
    failures: Vec<String>,
}

impl Suite {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        } else if !ok {
            self.failures.truncate(20);
            self.failures.push("...".into());
        }
    }
}

type SuiteFn = fn(&mut Suite, Level, &KlTable) -> Result<()>;

pub fn run(level: Level, table: &KlTable) -> Report {
    let suites: [(&'static str, SuiteFn); 7] = [
        ("weyl", weyl_suite),
        ("cosets", cosets_suite),
        ("weights", weights_suite),
        ("kl", kl_suite),
        ("segments", segments_suite),
        ("steinberg", steinberg_suite),
        ("ext", ext_suite),
    ];
    let mut out = Vec::new();
    for (name, f) in suites {
        let start = Instant::now();
        let mut s = Suite { checks: 0, failures: Vec::new() };
        if let Err(e) = f(&mut s, level, table) {
            s.failures.push(format!("error: {e}"));
        }
        out.push(SuiteReport {
            name,
            pass: s.failures.is_empty(),
            checks: s.checks,
            failures: s.failures,
            millis: start.elapsed().as_millis(),
        });
    }
    Report {
        level: match level {
            Level::Quick => "quick",
            Level::Full => "full",
        },
        pass: out.iter().all(|s| s.pass),
        suites: out,
    }
}

fn weyl_suite(s: &mut Suite, level: Level, _: &KlTable) -> Result<()> {
    let top = level.max_rank();
    for n in 1..=top {
        let g = enumerate_group(n)?;
        s.check(g.len() == (1..=n).product::<usize>(), || format!("|S_{n}|"));
        for w in &g {
            let word = w.reduced_word();
            s.check(word.len() == w.length(), || format!("reduced word length of {w}"));
            s.check(Permutation::from_word(n, &word).as_ref() == Ok(w), || format!("word of {w} multiplies back"));
            s.check(
                w.ascents_left().union(&w.descents_left()) == SimpleRootSet::full(n)
                    && w.ascents_left().intersection(&w.descents_left()).is_empty(),
                || format!("ascents/descents of {w} partition Δ_n"),
            );
        }
        let w0 = longest_element(&SimpleRootSet::full(n));
        let pair_rank = if level == Level::Full { 6 } else { 5 };
        if n <= pair_rank {
            for x in &g {
                s.check(Permutation::identity(n).bruhat_leq(x)?, || format!("e <= {x}"));
                s.check(x.bruhat_leq(&w0)?, || format!("{x} <= w0"));
                for w in &g {
                    s.check(x.bruhat_leq(w)? == x.bruhat_leq_rank(w)?, || format!("bruhat({x},{w}) vs rank criterion"));
                }
            }
        }
        if n <= 4 {
            for x in &g {
                for w in &g {
                    s.check(
                        x.bruhat_leq(w)? == oracle::bruhat_by_subwords(&x.one_line(), &w.one_line()),
                        || format!("bruhat({x},{w}) vs subword search"),
                    );
                }
            }
        }
        for mask in 0u64..1 << (n - 1) {
            let i = SimpleRootSet::new(n, (1..n).filter(|a| mask >> (a - 1) & 1 == 1))?;
            let expect: usize = i.block_sizes().iter().map(|&b| (1..=b).product::<usize>()).product();
            s.check(crate::weyl::enumerate_parabolic(&i)?.len() == expect, || format!("|W_I| for I={i}"));
        }
    }
    Ok(())
}

fn cosets_suite(s: &mut Suite, level: Level, _: &KlTable) -> Result<()> {
    let top = level.max_rank();
    for n in 1..=top {
        let g = enumerate_group(n)?;
        let subsets: Vec<SimpleRootSet> = (0u64..1 << (n - 1))
            .map(|m| SimpleRootSet::new(n, (1..n).filter(|a| m >> (a - 1) & 1 == 1)).unwrap())
            .collect();
        for i in &subsets {
            for j in &subsets {
                let reps = min_double_coset_reps(n, i, j)?;
                let expect = oracle::count_matrices(&i.block_sizes(), &j.block_sizes());
                s.check(reps.len() as u64 == expect, || format!("double cosets n={n} I={i} J={j}"));
            }
        }
        if n <= 4 {
            // Every w lies over exactly one representative, which is Bruhat-below it.
            for i in &subsets {
                for j in &subsets {
                    let reps = min_double_coset_reps(n, i, j)?;
                    let wi = crate::weyl::enumerate_parabolic(i)?;
                    let wj = crate::weyl::enumerate_parabolic(j)?;
                    let mut owner = vec![usize::MAX; g.len()];
                    for (ri, rep) in reps.iter().enumerate() {
                        for a in &wi {
                            for b in &wj {
                                let x = a.compose(rep)?.compose(b)?;
                                let idx = x.lex_rank() as usize;
                                s.check(owner[idx] == usize::MAX || owner[idx] == ri, || {
                                    format!("{x} in two double cosets for I={i} J={j}")
                                });
                                owner[idx] = ri;
                                s.check(rep.bruhat_leq(&x)?, || format!("rep {rep} <= {x}"));
                            }
                        }
                    }
                    s.check(owner.iter().all(|&o| o != usize::MAX), || format!("cosets cover S_{n}"));
                }
            }
        }
    }
    for k in 1..=8 {
        for r in 1..=3 {
            for i in BlockSet::all_subsets(r, k) {
                let a = modulus_exponents(&i);
                let parts = crate::cosets::partition_of(&i).parts;
                let sum: i64 = a.iter().zip(&parts).map(|(x, &p)| x * p as i64).sum();
                s.check(sum == 0, || format!("Σ a_i k_i for r={r} I={i}"));
                s.check(a == crate::cosets::modulus_exponents_closed(&i), || format!("closed form r={r} I={i}"));
            }
        }
    }
    for k in 1..=4 {
        for r in 1..=2 {
            let g = enumerate_group(k)?;
            for u in &g {
                let eu = block_embed(u, r);
                s.check(eu.length() == r * r * u.length(), || format!("embedded length of {u}"));
                for v in &g {
                    s.check(block_embed(&u.compose(v)?, r) == eu.compose(&block_embed(v, r))?, || {
                        format!("embedding is multiplicative at {u},{v}")
                    });
                }
            }
        }
    }
    Ok(())
}

fn weights_suite(s: &mut Suite, _: Level, _: &KlTable) -> Result<()> {
    let g3 = enumerate_group(3)?;
    let lambda = IntegralWeight::new(vec![vec![5, -2, 7]])?;
    for u in &g3 {
        for v in &g3 {
            let mu = MultiWeylElement::single(u.clone());
            let nu = MultiWeylElement::single(v.clone());
            let uv = MultiWeylElement::single(u.compose(v)?);
            s.check(dot_action(&uv, &lambda)? == dot_action(&mu, &dot_action(&nu, &lambda)?)?, || {
                format!("dot action at {u},{v}")
            });
        }
    }
    let g4 = enumerate_group(4)?;
    let dominant = IntegralWeight::new(vec![vec![3, 1, 0, 0], vec![2, 2, 0, -1]])?;
    for a in &g4 {
        for b in &g4 {
            let w = MultiWeylElement::new(vec![a.clone(), b.clone()])?;
            let expect = w.ascent_intersection();
            s.check(dominance_set(&w, &dominant)? == expect, || format!("dominance set of {w}"));
            s.check(dominance_set(&w, &IntegralWeight::zero(4, 2))? == expect, || format!("dominance at 0 of {w}"));
        }
    }
    Ok(())
}

fn kl_suite(s: &mut Suite, level: Level, table: &KlTable) -> Result<()> {
    for n in 1..=5 {
        let oracle_table = oracle::kl_table_via_r_polynomials(n);
        let g = enumerate_group(n)?;
        for x in &g {
            for w in &g {
                let p = table.poly(x, w)?;
                let expect = oracle_table.get(&(x.one_line(), w.one_line())).cloned().unwrap_or_default();
                s.check(p.coeffs() == expect.as_slice(), || format!("P_{{{x},{w}}} = {p} vs oracle {expect:?}"));
            }
        }
    }
    let top = if level == Level::Full { 6 } else { 5 };
    for n in 1..=top {
        let g = enumerate_group(n)?;
        let w0 = longest_element(&SimpleRootSet::full(n));
        for w in &g {
            for x in &g {
                let p = table.poly(x, w)?;
                let leq = x.bruhat_leq(w)?;
                s.check(p.is_zero() != leq, || format!("support of P_{{{x},{w}}}"));
                if !leq {
                    continue;
                }
                s.check(p.coeff(0) == 1, || format!("constant term of P_{{{x},{w}}}"));
                s.check(p.coeffs().iter().all(|&c| c >= 0), || format!("positivity of P_{{{x},{w}}}"));
                if x != w {
                    let bound = (w.length() - x.length() - 1) / 2;
                    s.check(p.degree().unwrap_or(0) <= bound, || format!("degree of P_{{{x},{w}}}"));
                }
                if n <= 5 {
                    s.check(table.poly(&x.inverse(), &w.inverse())? == p, || format!("inverse symmetry at {x},{w}"));
                }
                if let Some(a) = (1..n).find(|&a| w.has_left_descent(a) && !x.has_left_descent(a)) {
                    s.check(table.poly(&x.lmul_simple(a), w)? == p, || format!("descent invariance at {x},{w}"));
                }
            }
            s.check(table.poly(w, &w0)?.coeffs() == [1], || format!("P_{{{w},w0}} = 1"));
        }
    }
    let e = Permutation::identity(4);
    let w = Permutation::parse("[3,4,1,2]", None)?;
    s.check(table.poly(&e, &w)?.coeffs() == [1, 1], || "P_{e,3412} = 1+q".into());
    Ok(())
}

fn segments_suite(s: &mut Suite, level: Level, _: &KlTable) -> Result<()> {
    use num_rational::Rational64;
    for k in 1..=8usize {
        for r in 1..=4usize {
            let t = pi_base_twists(r, k);
            let centered: Rational64 = t
                .exponents
                .iter()
                .enumerate()
                .map(|(i, e)| (e - Rational64::from((k - i - 1) as i64)) * Rational64::from(r as i64))
                .sum();
            s.check(centered == Rational64::from(0), || format!("centrality r={r} k={k}"));
            let segs = pi_i_segments(&BlockSet::empty(r, k));
            s.check(segs.iter().map(|g| g.twist).collect::<Vec<_>>() == t.exponents, || {
                format!("segments at I=∅ r={r} k={k}")
            });
            s.check(jh_factors(r, k)?.len() == 1 << (k - 1), || format!("JH count r={r} k={k}"));
        }
    }
    for k in 1..=level.max_rank().min(7) {
        for r in 1..=2 {
            let mut tuples: Vec<_> = jacquet_decomposition(r, k)?.into_iter().map(|(_, t)| t).collect();
            let total = tuples.len();
            tuples.sort();
            tuples.dedup();
            s.check(tuples.len() == total && total == (1..=k).product::<usize>(), || {
                format!("distinct Jacquet tuples r={r} k={k}")
            });
        }
        let mut seen = 0;
        for i in BlockSet::all_subsets(1, k) {
            let fiber = theta_fiber(&i)?;
            seen += fiber.len();
            let complement = SimpleRootSet::new(k, (1..k).filter(|&a| !i.contains(a)))?;
            let w0 = longest_element(&complement);
            let min_len = fiber.iter().map(Permutation::length).min();
            s.check(min_len == Some(w0.length()) && fiber.contains(&w0), || format!("fiber minimum for I={i}"));
            s.check(fiber.iter().filter(|w| Some(w.length()) == min_len).count() == 1, || {
                format!("unique fiber minimum for I={i}")
            });
        }
        s.check(seen == (1..=k).product::<usize>(), || format!("fibers cover S_{k}"));
    }
    Ok(())
}

/// `(r, k, d_L)` triples where formula and oracle are compared exhaustively.
pub fn steinberg_envelope(level: Level) -> Vec<(usize, usize, usize)> {
    let mut v = vec![(1, 3, 1), (2, 2, 1), (1, 4, 1)];
    if level == Level::Full {
        v.extend([(2, 2, 2), (1, 3, 2)]);
    }
    v
}

fn steinberg_suite(s: &mut Suite, level: Level, table: &KlTable) -> Result<()> {
    for (r, k, d) in steinberg_envelope(level) {
        let n = r * k;
        for w in candidate_elements(n, d, n * (n - 1) / 2 * d, |_| true)? {
            for sset in BlockSet::all_subsets(r, k) {
                for j in BlockSet::all_subsets(r, k) {
                    if !is_admissible(&w, &j, &sset) {
                        continue;
                    }
                    let m = steinberg_multiplicity_in(table, &w, &j, &sset, r, k, d)?;
                    let o = steinberg_multiplicity_oracle_in(table, &w, &j, &sset, r, k, d)?;
                    s.check(m == o, || format!("m({w},{j},{sset}) = {m} vs oracle {o} at {r},{k},{d}"));
                    s.check(m >= 0, || format!("m({w},{j},{sset}) = {m} < 0"));
                }
            }
        }
        for sset in BlockSet::all_subsets(r, k) {
            s.check(analytic_tits_euler_check_in(table, &sset, d, None)?, || {
                format!("analytic Euler identity S={sset} at {r},{k},{d}")
            });
        }
    }
    for k in 1..=6 {
        for i in BlockSet::all_subsets(1, k) {
            s.check(smooth_tits_euler_check(&i), || format!("smooth Euler identity I={i} k={k}"));
            if k <= 5 {
                s.check(FormalComplex::tits(&i).squares_to_zero(), || format!("d∘d = 0 for I={i} k={k}"));
            }
        }
    }
    Ok(())
}

fn ext_suite(s: &mut Suite, _: Level, _: &KlTable) -> Result<()> {
    let q = |flavor, degree, left: RepDescriptor, right: RepDescriptor, p: Params| ExtQuery {
        flavor,
        fixed_center: false,
        degree,
        left,
        right,
        params: p,
    };
    for d in 1..=3 {
        for (r, k) in [(1, 2), (2, 3), (3, 3), (1, 5)] {
            let p = Params::new(r, k, d)?;
            s.check(ext::consistency_check_thm_main(r, k, d), || format!("endpoint identity {r},{k},{d}"));
            for i in 1..k {
                let v = RepDescriptor::GenSteinberg(BlockSet::new(r, k, [i])?);
                let a7 = ext::ext_dim(&q(Flavor::Analytic, 1, v.clone(), RepDescriptor::StAn, p))?;
                let a8 = ext::ext_dim(&q(Flavor::Analytic, 1, v.clone(), RepDescriptor::SigmaI(i), p))?;
                s.check(a7.dim() == Some(d as u64 + 1), || format!("Ext^1(v_{i}, St) = d_L+1 at {r},{k},{d}"));
                s.check(a8.dim() == a7.dim(), || format!("Ext^1(v_{i}, Σ_i) = Ext^1(v_{i}, St) at {r},{k},{d}"));
            }
            let full = BlockSet::full(r, k);
            for a in BlockSet::all_subsets(r, k) {
                for b in BlockSet::all_subsets(r, k) {
                    for deg in 0..4 {
                        let ans = ext::ext_dim(&q(
                            Flavor::Smooth,
                            deg,
                            RepDescriptor::IndFull(a.clone()),
                            RepDescriptor::IndFull(b.clone()),
                            p,
                        ))?;
                        let expect = if b.is_subset(&a) { ext::binomial(ext::levi_rank(&b), deg as u64) } else { 0 };
                        s.check(ans.dim() == Some(expect), || format!("smooth Ext^{deg}(i_{a}, i_{b})"));
                        let r3 = ext::ext_dim(&q(
                            Flavor::Smooth,
                            deg,
                            RepDescriptor::GenSteinberg(a.clone()),
                            RepDescriptor::IndFull(b.clone()),
                            p,
                        ))?;
                        let shift = full.len() - a.len();
                        let expect = if a.union(&b) != full || deg < shift {
                            0
                        } else {
                            ext::binomial(ext::levi_rank(&b), (deg - shift) as u64)
                        };
                        s.check(r3.dim() == Some(expect), || format!("smooth Ext^{deg}(v_{a}, i_{b})"));
                        if b.is_subset(&a) && a.len() == b.len() + 1 {
                            let r4 = ext::ext_dim(&q(
                                Flavor::Smooth,
                                deg,
                                RepDescriptor::GenSteinberg(a.clone()),
                                RepDescriptor::GenSteinberg(b.clone()),
                                p,
                            ))?;
                            s.check(r4.dim() == Some(u64::from(deg == 1)), || format!("smooth Ext^{deg}(v_{a}, v_{b})"));
                        }
                    }
                }
            }
            s.check(ext::char_group_dim(CharGroup::HomL, &full, d) == d as u64 + 1, || "dim Hom(L^×, E)".into());
            let undetermined = ext::ext_dim(&q(Flavor::Analytic, 2, RepDescriptor::StAn, RepDescriptor::StAn, p))?;
            s.check(undetermined.status == ExtStatus::NotDetermined, || "unknown query reported as such".into());
        }
    }
    Ok(())
}
