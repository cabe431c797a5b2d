//! Integral weights over `d_L` embeddings and the dot action.

use std::fmt;

use crate::error::{Error, Result};
use crate::weyl::{MultiWeylElement, SimpleRootSet};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntegralWeight {
    n: usize,
    rows: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Orientation {
    Plus,
    Minus,
}

/// `ρ` stored as `(n-1, ..., 0)`; the true `ρ` is this minus `shift_twice / 2`
/// in every coordinate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rho {
    pub shifted: Vec<i64>,
    pub shift_twice: i64,
}

impl IntegralWeight {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.first().map(Vec::len).unwrap_or(0);
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("weight rows must be nonempty and of equal length".into()));
        }
        Ok(Self { n, rows })
    }

    pub fn zero(n: usize, d: usize) -> Self {
        Self { n, rows: vec![vec![0; n]; d] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// `"3,1,0,0;2,2,0,0"`.
    pub fn parse(s: &str) -> Result<Self> {
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| x.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("bad weight {s:?}")))?;
        Self::new(rows)
    }
}

impl fmt::Display for IntegralWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

pub fn rho(n: usize) -> Rho {
    Rho { shifted: (0..n as i64).rev().collect(), shift_twice: n as i64 - 1 }
}

/// `w·λ = w(λ+ρ) − ρ`, with `w` acting by `μ ↦ (μ_{w⁻¹(1)}, ..., μ_{w⁻¹(n)})`.
pub fn dot_action(w: &MultiWeylElement, lambda: &IntegralWeight) -> Result<IntegralWeight> {
    if w.n() != lambda.n() {
        return Err(Error::RankMismatch(w.n(), lambda.n()));
    }
    if w.d() != lambda.d() {
        return Err(Error::Shape(format!("{} components vs {} weight rows", w.d(), lambda.d())));
    }
    let rho = rho(w.n()).shifted;
    let rows = w
        .components()
        .iter()
        .zip(&lambda.rows)
        .map(|(ws, row)| {
            let inv = ws.inverse();
            (1..=w.n())
                .map(|i| {
                    let src = inv.at(i) - 1;
                    row[src] + rho[src] - rho[i - 1]
                })
                .collect()
        })
        .collect();
    Ok(IntegralWeight { n: w.n(), rows })
}

pub fn is_i_dominant(lambda: &IntegralWeight, i: &SimpleRootSet, orientation: Orientation) -> bool {
    lambda.rows.iter().all(|row| {
        i.members().iter().all(|&a| match orientation {
            Orientation::Plus => row[a - 1] >= row[a],
            Orientation::Minus => row[a - 1] <= row[a],
        })
    })
}

/// The largest `J` with `w·λ` plus-dominant for `J`. Requires `λ` dominant.
pub fn dominance_set(w: &MultiWeylElement, lambda: &IntegralWeight) -> Result<SimpleRootSet> {
    if !is_i_dominant(lambda, &SimpleRootSet::full(lambda.n()), Orientation::Plus) {
        return Err(Error::Precondition(format!("weight {lambda} is not dominant")));
    }
    let mu = dot_action(w, lambda)?;
    let n = mu.n();
    Ok(SimpleRootSet::from_iter_unchecked(
        n,
        (1..n).filter(|&a| mu.rows.iter().all(|row| row[a - 1] >= row[a])),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::Permutation;

    #[test]
    fn rho_values() {
        assert_eq!(rho(2).shifted, vec![1, 0]);
        assert_eq!(rho(4).shifted, vec![3, 2, 1, 0]);
    }

    #[test]
    fn dot_examples() {
        let z = IntegralWeight::zero(2, 1);
        let s1 = MultiWeylElement::single(Permutation::simple(2, 1));
        let mu = dot_action(&s1, &z).unwrap();
        assert_eq!(mu.rows(), &[vec![-1, 1]]);
        let i = SimpleRootSet::full(2);
        assert!(is_i_dominant(&mu, &i, Orientation::Minus));
        assert!(!is_i_dominant(&mu, &i, Orientation::Plus));
        assert_eq!(dot_action(&MultiWeylElement::identity(2, 1), &z).unwrap(), z);
    }

    #[test]
    fn dominance_examples() {
        let w = MultiWeylElement::parse("[3,4,1,2]", None).unwrap();
        assert_eq!(dominance_set(&w, &IntegralWeight::zero(4, 1)).unwrap().members(), &[1, 3]);
        let w = MultiWeylElement::parse("s2;e", Some(4)).unwrap();
        assert_eq!(dominance_set(&w, &IntegralWeight::zero(4, 2)).unwrap().members(), &[1, 3]);
        let bad = IntegralWeight::parse("0,1,0,0").unwrap();
        assert!(dominance_set(&MultiWeylElement::identity(4, 1), &bad).is_err());
    }

    #[test]
    fn weight_text() {
        let l = IntegralWeight::parse("3,1,0,0;2,2,0,0").unwrap();
        assert_eq!(l.to_string(), "3,1,0,0;2,2,0,0");
        assert!(IntegralWeight::parse("1,2;3").is_err());
    }
}
