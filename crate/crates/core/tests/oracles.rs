//! Production paths against brute-force references.

use std::collections::{HashMap, HashSet, VecDeque};

use weylkit::cosets::{coset_matrix, min_double_coset_reps};
use weylkit::oracle::{all_perms, block_sizes, bruhat_by_subwords, count_matrices, inversions, kl_table_via_r_polynomials};
use weylkit::steinberg::{candidate_elements, is_admissible, steinberg_multiplicity_in};
use weylkit::weyl::enumerate_group;
use weylkit::{BlockSet, KlTable, MultiWeylElement, Permutation, SimpleRootSet};

fn perm(v: &[usize]) -> Permutation {
    Permutation::new(v).unwrap()
}

#[test]
fn bruhat_three_ways_on_s5() {
    let all = all_perms(5);
    for x in &all {
        let px = perm(x);
        for w in &all {
            let pw = perm(w);
            let sub = bruhat_by_subwords(x, w);
            assert_eq!(px.bruhat_leq(&pw).unwrap(), sub, "{x:?} <= {w:?}");
            assert_eq!(px.bruhat_leq_rank(&pw).unwrap(), sub, "{x:?} <= {w:?} (rank)");
        }
    }
}

#[test]
fn length_is_inversion_count() {
    for n in 1..=6 {
        for w in all_perms(n) {
            assert_eq!(perm(&w).length(), inversions(&w));
            assert_eq!(perm(&w).reduced_word().len(), inversions(&w));
        }
    }
}

#[test]
fn kl_matches_r_polynomial_inversion() {
    for n in 1..=5 {
        let table = KlTable::new();
        let oracle = kl_table_via_r_polynomials(n);
        let all = all_perms(n);
        for x in &all {
            for w in &all {
                let p = table.poly(&perm(x), &perm(w)).unwrap();
                let expect = oracle.get(&(x.clone(), w.clone())).cloned().unwrap_or_default();
                assert_eq!(p.coeffs(), expect.as_slice(), "P_{{{x:?},{w:?}}}");
            }
        }
    }
}

/// Double cosets by breadth-first orbit search under left `s_i`, `i ∈ I`, and right `s_j`, `j ∈ J`.
fn orbit_count(n: usize, left: &[usize], right: &[usize]) -> usize {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut count = 0;
    for start in all_perms(n) {
        if !seen.insert(start.clone()) {
            continue;
        }
        count += 1;
        let mut queue = VecDeque::from([start]);
        while let Some(w) = queue.pop_front() {
            let mut next = Vec::new();
            for &i in left {
                // s_i·w swaps the values i and i+1
                next.push(w.iter().map(|&v| if v == i { i + 1 } else if v == i + 1 { i } else { v }).collect::<Vec<_>>());
            }
            for &j in right {
                let mut u = w.clone();
                u.swap(j - 1, j);
                next.push(u);
            }
            for u in next {
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
    }
    count
}

#[test]
fn double_cosets_against_orbits_and_matrices() {
    for n in 1..=6 {
        let subsets: Vec<Vec<usize>> =
            (0u32..1 << (n - 1)).map(|m| (1..n).filter(|i| m >> (i - 1) & 1 == 1).collect()).collect();
        for i in &subsets {
            for j in &subsets {
                let si = SimpleRootSet::new(n, i.iter().copied()).unwrap();
                let sj = SimpleRootSet::new(n, j.iter().copied()).unwrap();
                let reps = min_double_coset_reps(n, &si, &sj).unwrap();
                let expect = orbit_count(n, i, j);
                assert_eq!(reps.len(), expect, "n={n} I={i:?} J={j:?}");
                assert_eq!(count_matrices(&block_sizes(n, i), &block_sizes(n, j)) as usize, expect);
                // distinct representatives give distinct block matrices
                let mats: HashSet<Vec<Vec<usize>>> = reps.iter().map(|w| coset_matrix(w, &si, &sj).unwrap()).collect();
                assert_eq!(mats.len(), reps.len());
            }
        }
    }
}

fn subsets(r: usize, k: usize) -> Vec<BlockSet> {
    BlockSet::all_subsets(r, k)
}

/// `[M_K : L(w)]` straight from the definition, summing over all of `W_{Levi}^{d}`.
fn pv_direct(oracle: &HashMap<(Vec<usize>, Vec<usize>), Vec<i64>>, levi: &[usize], w: &MultiWeylElement) -> i64 {
    let n = w.n();
    let in_levi = |y: &Vec<usize>| -> bool {
        // y preserves the blocks cut out by `levi` iff every non-root position keeps the prefix set
        (1..n).filter(|i| !levi.contains(i)).all(|i| y[..i].iter().all(|&v| v <= i))
    };
    let levi_elems: Vec<Vec<usize>> = all_perms(n).into_iter().filter(in_levi).collect();
    let mut tuples: Vec<Vec<&Vec<usize>>> = vec![vec![]];
    for _ in 0..w.d() {
        tuples = tuples.into_iter().flat_map(|t| levi_elems.iter().map(move |y| [t.clone(), vec![y]].concat())).collect();
    }
    tuples
        .iter()
        .map(|ys| {
            let len: usize = ys.iter().map(|y| inversions(y)).sum();
            let sign = if len.is_multiple_of(2) { 1 } else { -1 };
            let prod: i64 = ys
                .iter()
                .zip(w.components())
                .map(|(y, wc)| oracle.get(&((*y).clone(), wc.one_line())).map_or(0, |c| c.iter().sum::<i64>()))
                .product();
            sign * prod
        })
        .sum()
}

#[test]
fn parabolic_verma_against_direct_sum() {
    for (r, k, d) in [(2, 2, 1), (1, 3, 2), (1, 4, 1), (2, 2, 2)] {
        let n = r * k;
        let oracle = kl_table_via_r_polynomials(n);
        let table = KlTable::new();
        for w in candidate_elements(n, d, n * (n - 1) / 2 * d, |_| true).unwrap() {
            for kset in subsets(r, k) {
                let levi = kset.levi_roots();
                let got = table.parabolic_verma_mult(&kset, &w).unwrap();
                assert_eq!(got, pv_direct(&oracle, levi.members(), &w), "K={kset} w={w}");
            }
        }
    }
}

#[test]
fn steinberg_formula_against_definition() {
    for (r, k, d) in [(1, 3, 1), (2, 2, 1), (1, 3, 2)] {
        let n = r * k;
        let oracle = kl_table_via_r_polynomials(n);
        let table = KlTable::new();
        let mut nonzero = 0;
        for w in candidate_elements(n, d, n * (n - 1) / 2 * d, |_| true).unwrap() {
            for s in subsets(r, k) {
                for j in subsets(r, k) {
                    if !is_admissible(&w, &j, &s) {
                        continue;
                    }
                    let direct: i64 = s
                        .between(&j)
                        .iter()
                        .map(|kset| {
                            let sign = if (kset.len() - s.len()) % 2 == 0 { 1 } else { -1 };
                            sign * pv_direct(&oracle, kset.levi_roots().members(), &w)
                        })
                        .sum();
                    let m = steinberg_multiplicity_in(&table, &w, &j, &s, r, k, d).unwrap();
                    assert_eq!(m, direct, "w={w} J={j} S={s}");
                    assert!(m >= 0);
                    nonzero += (m != 0) as usize;
                }
            }
        }
        assert!(nonzero > 0);
    }
}

#[test]
fn group_enumeration_is_complete() {
    for n in 1..=6 {
        let g = enumerate_group(n).unwrap();
        let set: HashSet<Vec<usize>> = g.iter().map(Permutation::one_line).collect();
        assert_eq!(set.len(), (1..=n).product::<usize>());
    }
}
