//! Upper bounds on the topological entropy of the S-adic subshift.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::Result;

use super::directive::DirectiveSequence;
use super::limit::column_sums;

/// `ln x` for a big integer of any size.
fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyBound {
    /// `min_{n ≤ depth} ln(Card A_n) / β⁻_n`.
    pub bound: f64,
    /// Depth at which the minimum is attained.
    pub argmin: usize,
    /// The individual terms `ln(Card A_n) / β⁻_n`.
    pub terms: Vec<f64>,
    pub depth: usize,
}

/// `h ≤ min_{n ≤ N} ln(Card A_n) / β⁻_n`, with `β⁻_n` the exact minimal
/// column sum of `A_n` (the `ℓ¹`-induced norm of the inverse direction).
pub fn entropy_upper_bound(ds: &DirectiveSequence, depth: usize) -> Result<EntropyBound> {
    let rows = column_sums(ds, depth)?;
    let mut terms = Vec::with_capacity(rows.len());
    for (n, r) in rows.iter().enumerate() {
        let card = ds.alphabet(n)?.len() as f64;
        let beta = r.iter().min().unwrap();
        terms.push(card.ln() / beta.to_f64().unwrap_or(f64::INFINITY));
    }
    let (argmin, bound) = argmin(&terms);
    Ok(EntropyBound {
        bound,
        argmin,
        terms,
        depth: rows.len() - 1,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteLengthBound {
    pub length: usize,
    /// Upper bound on `ln p(N) / N` for the depth-limited language.
    pub bound: f64,
    pub argmin: usize,
    pub terms: Vec<f64>,
}

/// Bound on `ln p(N) / N` at a finite length `N`.
///
/// A length-`N` factor of `σ_{[0,n)}(A_n^*)` is fixed by a word of
/// `k = ⌈(N-1)/β⁻_n⌉ + 1` letters of `A_n` and an offset inside the image of
/// its first letter, so `p(N) ≤ β⁺_n (Card A_n)^k`. The minimum over
/// `n ≤ depth` is returned; it tends to the asymptotic bound as `N` grows.
pub fn finite_length_entropy_bound(
    ds: &DirectiveSequence,
    length: usize,
    depth: usize,
) -> Result<FiniteLengthBound> {
    let rows = column_sums(ds, depth)?;
    let nn = length.max(1);
    let mut terms = Vec::with_capacity(rows.len());
    for (n, r) in rows.iter().enumerate() {
        let card = ds.alphabet(n)?.len() as f64;
        let bmin = r.iter().min().unwrap();
        let bmax = r.iter().max().unwrap();
        let k = match bmin.to_u64() {
            Some(b) => ((nn as u64 - 1).div_ceil(b) + 1) as f64,
            None => 1.0,
        };
        terms.push((ln_big(bmax) + k * card.ln()) / nn as f64);
    }
    let (argmin, bound) = argmin(&terms);
    Ok(FiniteLengthBound {
        length: nn,
        bound,
        argmin,
        terms,
    })
}

fn argmin(terms: &[f64]) -> (usize, f64) {
    terms
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, t)| if t < acc.1 { (i, t) } else { acc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sadic::directive::Seeds;
    use crate::substitution::builtin;

    fn fib() -> DirectiveSequence {
        DirectiveSequence::periodic(vec![builtin("fibonacci").unwrap()], Seeds::Auto).unwrap()
    }

    #[test]
    fn fibonacci_bound() {
        let b = entropy_upper_bound(&fib(), 20).unwrap();
        // β⁻_20 = 10946.
        assert!((b.bound - 2f64.ln() / 10946.0).abs() < 1e-15);
        assert_eq!(b.argmin, 20);
        let b0 = entropy_upper_bound(&fib(), 0).unwrap();
        assert!((b0.bound - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn finite_length_dominates_fibonacci_complexity() {
        let f = finite_length_entropy_bound(&fib(), 200, 20).unwrap();
        assert!((201f64).ln() / 200.0 <= f.bound);
        assert!(f.bound < 0.05);
    }

    #[test]
    fn big_logs() {
        let x = BigUint::from(3u8).pow(2000);
        assert!((ln_big(&x) - 2000.0 * 3f64.ln()).abs() < 1e-9);
    }
}
