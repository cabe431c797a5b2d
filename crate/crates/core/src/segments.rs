//! Twist bookkeeping for segments built from an opaque cuspidal `π`.
//! Only the exponents of `v_r` and the block shapes are tracked.

use std::fmt;

use num_rational::Rational64;

use crate::cosets::{partition_of, BlockSet};
use crate::error::{Error, Result};
use crate::weyl::{enumerate_group, Permutation};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SegmentDatum {
    pub block_length: usize,
    pub twist: Rational64,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TwistTuple {
    pub exponents: Vec<Rational64>,
}

/// Arrow `i` is `true` when edge `i` points right; rendered `>` (right) and `<` (left).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Orientation {
    pub arrows: Vec<bool>,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &a in &self.arrows {
            write!(f, "{}", if a { '>' } else { '<' })?;
        }
        Ok(())
    }
}

impl Orientation {
    /// Block indices carrying a right-pointing arrow.
    pub fn to_block_set(&self, r: usize) -> BlockSet {
        let k = self.arrows.len() + 1;
        BlockSet::new(r, k, self.arrows.iter().enumerate().filter(|(_, &a)| a).map(|(i, _)| i + 1))
            .expect("indices in range")
    }
}

/// `"1/2"`, `"-1"`, `"0"`.
pub fn fmt_rational(q: &Rational64) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `−(r/2)(k − 2i + 1)`, the `δ^{1/2}` part at position `i`.
fn half_modulus(r: usize, k: usize, i: usize) -> Rational64 {
    Rational64::new(-(r as i64) * (k as i64 - 2 * i as i64 + 1), 2)
}

/// Exponent `i` is `−(r/2)(k−2i+1) + (k−i)`.
pub fn pi_base_twists(r: usize, k: usize) -> TwistTuple {
    TwistTuple {
        exponents: (1..=k).map(|i| half_modulus(r, k, i) + Rational64::from((k - i) as i64)).collect(),
    }
}

/// One tuple per `w ∈ S_k`, exponent `i` being `w(k−i) − (r/2)(k−2i+1)` where `w`
/// acts on `{0, ..., k−1}`.
pub fn jacquet_decomposition(r: usize, k: usize) -> Result<Vec<(Permutation, TwistTuple)>> {
    Ok(enumerate_group(k)?
        .into_iter()
        .map(|w| {
            let exponents = (1..=k)
                .map(|i| Rational64::from((w.at(k - i + 1) - 1) as i64) + half_modulus(r, k, i))
                .collect();
            (w, TwistTuple { exponents })
        })
        .collect())
}

/// Per Levi block `i`: length `k_i`, twist `−(r/2)(k − 2s_{i−1} − k_i) + (k − s_i)`.
pub fn pi_i_segments(i: &BlockSet) -> Vec<SegmentDatum> {
    let p = partition_of(i);
    let (r, k) = (i.r() as i64, i.k() as i64);
    (0..p.len())
        .map(|a| {
            let ki = p.parts[a] as i64;
            let s_prev = p.partial_sum(a) as i64;
            let s_cur = s_prev + ki;
            SegmentDatum {
                block_length: ki as usize,
                twist: Rational64::new(-r * (k - 2 * s_prev - ki), 2) + Rational64::from(k - s_cur),
            }
        })
        .collect()
}

pub fn orientation_of(w: &Permutation) -> Orientation {
    Orientation { arrows: (1..w.n()).map(|i| w.at(i) < w.at(i + 1)).collect() }
}

/// `{w ∈ S_k : w(i) < w(i+1) exactly for i ∈ I}`.
pub fn theta_fiber(i: &BlockSet) -> Result<Vec<Permutation>> {
    let k = i.k();
    Ok(enumerate_group(k)?
        .into_iter()
        .filter(|w| (1..k).all(|a| (w.at(a) < w.at(a + 1)) == i.contains(a)))
        .collect())
}

/// All `2^{k−1}` subsets of `Δ_n(k)`, one per irreducible constituent.
pub fn jh_factors(r: usize, k: usize) -> Result<Vec<BlockSet>> {
    if r == 0 || k == 0 {
        return Err(Error::Precondition("r and k must be positive".into()));
    }
    if k > 63 {
        return Err(Error::BoundExceeded { n: k, bound: 63 });
    }
    Ok(BlockSet::all_subsets(r, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{longest_element, SimpleRootSet};

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn base_twists() {
        assert_eq!(pi_base_twists(1, 2).exponents, vec![q(1, 2), q(1, 2)]);
        assert_eq!(pi_base_twists(2, 2).exponents, vec![q(0, 1), q(1, 1)]);
        assert_eq!(pi_base_twists(5, 1).exponents, vec![q(0, 1)]);
    }

    #[test]
    fn jacquet_small() {
        let j = jacquet_decomposition(3, 1).unwrap();
        assert_eq!(j.len(), 1);
        assert_eq!(j[0].1.exponents, vec![q(0, 1)]);
        let j = jacquet_decomposition(2, 2).unwrap();
        assert_eq!(j[0].1.exponents, vec![q(0, 1), q(1, 1)]);
        assert_eq!(j[1].1.exponents, vec![q(-1, 1), q(2, 1)]);
    }

    #[test]
    fn segments_match_base() {
        for (r, k) in [(1, 3), (2, 4), (3, 2)] {
            let segs = pi_i_segments(&BlockSet::empty(r, k));
            let twists: Vec<_> = segs.iter().map(|s| s.twist).collect();
            assert_eq!(twists, pi_base_twists(r, k).exponents);
            assert!(segs.iter().all(|s| s.block_length == 1));
        }
        let segs = pi_i_segments(&BlockSet::full(2, 3));
        assert_eq!(segs, vec![SegmentDatum { block_length: 3, twist: q(0, 1) }]);
        let segs = pi_i_segments(&BlockSet::new(2, 3, [1]).unwrap());
        assert_eq!(segs.iter().map(|s| s.block_length).collect::<Vec<_>>(), vec![2, 1]);
        assert_eq!(segs.iter().map(|s| s.twist).collect::<Vec<_>>(), vec![q(0, 1), q(2, 1)]);
    }

    #[test]
    fn fibers() {
        assert!(orientation_of(&Permutation::identity(4)).arrows.iter().all(|&a| a));
        assert_eq!(orientation_of(&Permutation::parse("[2,1,3]", None).unwrap()).to_string(), "<>");
        let k2: Vec<_> = BlockSet::all_subsets(1, 2).iter().map(|i| theta_fiber(i).unwrap()).collect();
        assert_eq!(k2, vec![vec![Permutation::simple(2, 1)], vec![Permutation::identity(2)]]);
        let mut total = 0;
        for i in BlockSet::all_subsets(1, 3) {
            let fiber = theta_fiber(&i).unwrap();
            total += fiber.len();
            let complement = SimpleRootSet::new(3, (1..3).filter(|&a| !i.contains(a))).unwrap();
            let w0 = longest_element(&complement);
            let min_len = fiber.iter().map(Permutation::length).min().unwrap();
            let minimal: Vec<_> = fiber.iter().filter(|w| w.length() == min_len).collect();
            assert_eq!(minimal, vec![&w0]);
        }
        assert_eq!(total, 6);
    }

    #[test]
    fn jh_counts() {
        assert_eq!(jh_factors(1, 1).unwrap().len(), 1);
        assert_eq!(jh_factors(2, 2).unwrap().len(), 2);
        assert_eq!(jh_factors(2, 4).unwrap().len(), 8);
    }

    #[test]
    fn rational_text() {
        assert_eq!(fmt_rational(&q(-1, 2)), "-1/2");
        assert_eq!(fmt_rational(&q(4, 2)), "2");
    }
}
