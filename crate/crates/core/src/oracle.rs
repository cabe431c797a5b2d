//! Brute-force reference computations used by the self-test and the test
//! suites. Everything here works on raw one-line vectors and shares no code
//! with the production paths it checks.

use std::collections::HashMap;

/// All permutations of `1..=n` as vectors, in no particular order.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v + 1);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn inversions(w: &[usize]) -> usize {
    (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
}

/// A reduced word `w = s_{a_1} ... s_{a_m}` found by bubble-sorting positions.
pub fn bubble_word(w: &[usize]) -> Vec<usize> {
    // Sorting w by adjacent position swaps gives w s_{b_1} ... s_{b_m} = e,
    // so w = s_{b_m} ... s_{b_1}.
    let mut v = w.to_vec();
    let mut swaps = Vec::new();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..v.len().saturating_sub(1) {
            if v[i] > v[i + 1] {
                v.swap(i, i + 1);
                swaps.push(i + 1);
                changed = true;
            }
        }
    }
    swaps.reverse();
    swaps
}

/// Product of simple reflections, as a one-line vector.
pub fn word_product(n: usize, word: &[usize]) -> Vec<usize> {
    // Right-multiplying by s_a swaps positions a and a+1.
    let mut v: Vec<usize> = (1..=n).collect();
    for &a in word {
        v.swap(a - 1, a);
    }
    v
}

/// `x <= w` by searching every subword of one reduced word of `w`.
pub fn bruhat_by_subwords(x: &[usize], w: &[usize]) -> bool {
    let word = bubble_word(w);
    let lx = inversions(x);
    let m = word.len();
    (0u64..1 << m).any(|mask| {
        if (mask.count_ones() as usize) != lx {
            return false;
        }
        let sub: Vec<usize> = (0..m).filter(|b| mask >> b & 1 == 1).map(|b| word[b]).collect();
        word_product(x.len(), &sub) == x
    })
}

type Poly = Vec<i64>;

fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, &x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

/// Every Kazhdan–Lusztig polynomial of `S_n`, via R-polynomials and the
/// inversion formula `q^{l(w)-l(x)} P̄_{x,w} − P_{x,w} = Σ_{x<y≤w} R_{x,y} P_{y,w}`.
/// Keys are one-line vectors `(x, w)`; pairs with `P = 0` are omitted.
pub fn kl_table_via_r_polynomials(n: usize) -> HashMap<(Vec<usize>, Vec<usize>), Vec<i64>> {
    let perms = all_perms(n);
    let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let len: Vec<usize> = perms.iter().map(|p| inversions(p)).collect();
    let rmul = |i: usize, a: usize| -> usize {
        let mut v = perms[i].clone();
        v.swap(a - 1, a);
        index[&v]
    };
    let m = perms.len();

    // R_{x,w}, recursing on a right descent s of w:
    // R_{x,w} = R_{xs,ws} if xs < x, else (q−1) R_{x,ws} + q R_{xs,ws}.
    let mut r: Vec<Option<Poly>> = vec![None; m * m];
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| len[i]);
    for &w in &order {
        for x in 0..m {
            let val = if len[w] == 0 {
                if len[x] == 0 { vec![1] } else { Vec::new() }
            } else {
                let a = (1..n).find(|&a| perms[w][a - 1] > perms[w][a]).unwrap();
                let ws = rmul(w, a);
                let xs = rmul(x, a);
                if len[xs] < len[x] {
                    r[xs * m + ws].clone().unwrap()
                } else {
                    let t1 = poly_mul(&vec![-1, 1], r[x * m + ws].as_ref().unwrap());
                    let t2 = poly_mul(&vec![0, 1], r[xs * m + ws].as_ref().unwrap());
                    poly_add(&t1, &t2)
                }
            };
            r[x * m + w] = Some(val);
        }
    }

    let mut out = HashMap::new();
    for w in 0..m {
        let mut p: Vec<Poly> = vec![Vec::new(); m];
        p[w] = vec![1];
        let mut xs: Vec<usize> = (0..m).filter(|&x| x != w && len[x] < len[w]).collect();
        xs.sort_by_key(|&x| std::cmp::Reverse(len[x]));
        for x in xs {
            let mut g: Poly = Vec::new();
            for y in 0..m {
                if len[y] > len[x] && !p[y].is_empty() {
                    let rxy = r[x * m + y].as_ref().unwrap();
                    if !rxy.is_empty() {
                        g = poly_add(&g, &poly_mul(rxy, &p[y]));
                    }
                }
            }
            let d = len[w] - len[x];
            let low: Poly = g.iter().take((d - 1) / 2 + 1).map(|c| -c).collect();
            p[x] = trim(low);
        }
        for x in 0..m {
            if !p[x].is_empty() {
                out.insert((perms[x].clone(), perms[w].clone()), p[x].clone());
            }
        }
    }
    out
}

/// Number of nonnegative integer matrices with the given row and column sums.
pub fn count_matrices(rows: &[usize], cols: &[usize]) -> u64 {
    if rows.iter().sum::<usize>() != cols.iter().sum::<usize>() {
        return 0;
    }
    fn fill_row(row: usize, rows: &[usize], cols: &mut Vec<usize>) -> u64 {
        if row == rows.len() {
            return u64::from(cols.iter().all(|&c| c == 0));
        }
        fn choose(c: usize, left: usize, row: usize, rows: &[usize], cols: &mut Vec<usize>) -> u64 {
            if c == cols.len() {
                return if left == 0 { fill_row(row + 1, rows, cols) } else { 0 };
            }
            let mut total = 0;
            for take in 0..=left.min(cols[c]) {
                cols[c] -= take;
                total += choose(c + 1, left - take, row, rows, cols);
                cols[c] += take;
            }
            total
        }
        choose(0, rows[row], row, rows, cols)
    }
    fill_row(0, rows, &mut cols.to_vec())
}

/// Block sizes of the standard parabolic generated by `roots ⊆ {1..n-1}`.
pub fn block_sizes(n: usize, roots: &[usize]) -> Vec<usize> {
    let mut sizes = vec![1];
    for i in 1..n {
        if roots.contains(&i) {
            *sizes.last_mut().unwrap() += 1;
        } else {
            sizes.push(1);
        }
    }
    sizes
}

/// `Σ_{I ⊆ K ⊆ J} (−1)^{|K∖I|}` over bitmasks; 1 iff `I = J`.
pub fn inclusion_exclusion(i: u64, j: u64) -> i64 {
    if i & !j != 0 {
        return 0;
    }
    let free = j & !i;
    let mut total = 0i64;
    let mut sub = free;
    loop {
        total += if sub.count_ones().is_multiple_of(2) { 1 } else { -1 };
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_round_trip() {
        for w in all_perms(4) {
            let word = bubble_word(&w);
            assert_eq!(word.len(), inversions(&w));
            assert_eq!(word_product(4, &word), w);
        }
    }

    #[test]
    fn known_kl_values() {
        let t = kl_table_via_r_polynomials(4);
        assert_eq!(t[&(vec![1, 2, 3, 4], vec![3, 4, 1, 2])], vec![1, 1]);
        assert_eq!(t[&(vec![1, 2, 3, 4], vec![4, 2, 3, 1])], vec![1, 1]);
        assert!(!t.contains_key(&(vec![2, 1, 3, 4], vec![1, 3, 2, 4])));
    }

    #[test]
    fn matrix_counts() {
        assert_eq!(count_matrices(&[2, 2], &[2, 2]), 3);
        assert_eq!(count_matrices(&[1, 1, 1], &[1, 1, 1]), 6);
        assert_eq!(count_matrices(&[3], &[1, 2]), 1);
    }
}
