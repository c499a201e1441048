//! Balance and discrepancy of a prefix window.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::WordStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrequencySource {
    Empirical,
    Supplied,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BalanceReport {
    pub prefix_len: usize,
    pub max_n: usize,
    /// Per letter, the largest `max |v|_i - min |v|_i` over equal-length windows
    /// `v` with length at most `max_n`.
    pub imbalance: Vec<u64>,
    /// `B̂`: the largest per-letter imbalance.
    pub balance: u64,
    /// `Δ̂ = max_{i, n ≤ prefix_len} | |u_0…u_{n-1}|_i - n f_i |`.
    pub discrepancy: f64,
    pub frequencies: Vec<f64>,
    pub frequency_source: FrequencySource,
}

/// Balance `B̂` over window lengths `1..=max_n` and discrepancy `Δ̂` over all
/// prefixes of the window. Without `f`, the empirical frequencies of the
/// window are used.
pub fn balance(
    stream: &WordStream,
    prefix_len: usize,
    max_n: usize,
    f: Option<&[f64]>,
) -> Result<BalanceReport> {
    if max_n == 0 || max_n > prefix_len {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= max_n <= prefix_len (got max_n={max_n}, prefix_len={prefix_len})"
        )));
    }
    let u = stream.prefix(prefix_len)?;
    let d = u.alphabet().len();
    let (freq, source) = match f {
        Some(f) => {
            if f.len() != d {
                return Err(Error::InvalidParameter(format!(
                    "frequency vector has {} entries for {d} letters",
                    f.len()
                )));
            }
            let s: f64 = f.iter().sum();
            if (s - 1.0).abs() > 1e-9 || f.iter().any(|&x| x < 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "frequency vector must be non-negative and sum to 1 (sum {s})"
                )));
            }
            (f.to_vec(), FrequencySource::Supplied)
        }
        None => {
            let mut c = vec![0.0; d];
            for &l in u.letters() {
                c[l as usize] += 1.0;
            }
            (
                c.iter().map(|x| x / prefix_len as f64).collect(),
                FrequencySource::Empirical,
            )
        }
    };
    let mut imbalance = vec![0u64; d];
    let mut discrepancy = 0.0f64;
    let mut pref = vec![0u32; prefix_len + 1];
    for i in 0..d {
        for (k, &l) in u.letters().iter().enumerate() {
            pref[k + 1] = pref[k] + (l as usize == i) as u32;
        }
        for n in 1..=prefix_len {
            discrepancy = discrepancy.max((pref[n] as f64 - n as f64 * freq[i]).abs());
        }
        for n in 1..=max_n {
            let (mut lo, mut hi) = (u32::MAX, 0u32);
            for s in 0..=prefix_len - n {
                let c = pref[s + n] - pref[s];
                lo = lo.min(c);
                hi = hi.max(c);
            }
            imbalance[i] = imbalance[i].max((hi - lo) as u64);
        }
    }
    Ok(BalanceReport {
        prefix_len,
        max_n,
        balance: imbalance.iter().copied().max().unwrap_or(0),
        imbalance,
        discrepancy,
        frequencies: freq,
        frequency_source: source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::substitution::builtin;
    use crate::word::FiniteWord;

    #[test]
    fn sturmian_and_thue_morse() {
        let fib = builtin("fibonacci").unwrap().fixed_point_stream(0).unwrap();
        assert_eq!(balance(&fib, 4096, 200, None).unwrap().balance, 1);
        let tm = builtin("thue-morse").unwrap().fixed_point_stream(0).unwrap();
        assert_eq!(balance(&tm, 4096, 200, None).unwrap().balance, 2);
    }

    #[test]
    fn constant_word() {
        let a = Alphabet::from_chars("a").unwrap();
        let s = WordStream::periodic(FiniteWord::parse("a", &a).unwrap()).unwrap();
        let r = balance(&s, 100, 10, None).unwrap();
        assert_eq!(r.balance, 0);
        assert_eq!(r.discrepancy, 0.0);
    }

    #[test]
    fn supplied_frequency_is_checked() {
        let tm = builtin("thue-morse").unwrap().fixed_point_stream(0).unwrap();
        assert!(balance(&tm, 64, 4, Some(&[0.7, 0.7])).is_err());
        let r = balance(&tm, 64, 4, Some(&[0.5, 0.5])).unwrap();
        assert_eq!(r.frequency_source, FrequencySource::Supplied);
        assert!(r.discrepancy <= 1.0);
    }
}
