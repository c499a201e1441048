//! Factor sets, complexity, recurrence and return words of finite windows.
//!
//! Everything here is relative to a finite prefix window (or, for language
//! tables, to a stated depth). Window tables are built from a suffix array
//! sorted on the first `max_n` letters plus adjacent common-prefix lengths,
//! so that distinct factors of every length come out in lexicographic order
//! without hashing.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::substitution::Substitution;
use crate::word::{FiniteWord, WordStream};

/// Where a factor table came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "source", rename_all = "kebab-case")]
pub enum FactorSource {
    /// All windows of a prefix of this length.
    Window { prefix_len: usize },
    /// Depth-`depth` truncation of an S-adic language.
    Language { depth: usize },
}

/// Distinct factors of each length `1..=max_length`, each length stored as a
/// flat buffer of `p(n) · n` letters in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorTable {
    alphabet: Alphabet,
    max_length: usize,
    source: FactorSource,
    by_length: Vec<Vec<Letter>>,
}

impl FactorTable {
    /// Builds a table from explicit sets; `sets[n-1]` holds the length-`n`
    /// factors.
    pub fn from_sets(
        alphabet: Alphabet,
        source: FactorSource,
        sets: Vec<BTreeSet<Vec<Letter>>>,
    ) -> Self {
        let max_length = sets.len();
        let by_length = sets
            .into_iter()
            .map(|s| s.into_iter().flatten().collect())
            .collect();
        FactorTable {
            alphabet,
            max_length,
            source,
            by_length,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    pub fn source(&self) -> &FactorSource {
        &self.source
    }

    /// `p(n)`; zero outside `1..=max_length`.
    pub fn p(&self, n: usize) -> usize {
        if n == 0 || n > self.max_length {
            return 0;
        }
        self.by_length[n - 1].len() / n
    }

    /// Length-`n` factors in lexicographic order of letter indices.
    pub fn factors(&self, n: usize) -> impl Iterator<Item = &[Letter]> + '_ {
        let buf: &[Letter] = if n == 0 || n > self.max_length {
            &[]
        } else {
            &self.by_length[n - 1]
        };
        buf.chunks_exact(n.max(1))
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        let n = w.len();
        if n == 0 {
            return true;
        }
        if n > self.max_length {
            return false;
        }
        let buf = &self.by_length[n - 1];
        let count = buf.len() / n;
        let (mut lo, mut hi) = (0, count);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match buf[mid * n..(mid + 1) * n].cmp(w) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// Rendered factors of length `n`.
    pub fn rendered(&self, n: usize) -> Vec<String> {
        self.factors(n).map(|f| self.alphabet.render(f)).collect()
    }

    /// True when every length-`n` factor is contained in `other`.
    pub fn is_subset_of(&self, other: &FactorTable) -> bool {
        (1..=self.max_length.min(other.max_length))
            .all(|n| self.factors(n).all(|f| other.contains(f)))
    }
}

/// Suffix order on the first `depth` letters of every suffix (ties broken by
/// position) and the common-prefix length, capped at `depth`, between each
/// suffix and its predecessor in that order.
pub(crate) fn truncated_suffix_array(s: &[Letter], depth: usize) -> (Vec<usize>, Vec<usize>) {
    let n = s.len();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let mut sa: Vec<usize> = (0..n).collect();
    let mut rank: Vec<i64> = s.iter().map(|&l| l as i64).collect();
    let mut tmp = vec![0i64; n];
    let mut k = 1;
    loop {
        let key = |i: usize, rank: &[i64]| (rank[i], if i + k < n { rank[i + k] } else { -1 });
        sa.sort_unstable_by_key(|&i| (key(i, &rank), i));
        tmp[sa[0]] = 0;
        for w in 1..n {
            let bump = key(sa[w], &rank) != key(sa[w - 1], &rank);
            tmp[sa[w]] = tmp[sa[w - 1]] + bump as i64;
        }
        std::mem::swap(&mut rank, &mut tmp);
        if rank[sa[n - 1]] as usize == n - 1 || 2 * k >= depth {
            break;
        }
        k *= 2;
    }
    let mut lcp = vec![0; n];
    for w in 1..n {
        let (a, b) = (sa[w - 1], sa[w]);
        let limit = depth.min(n - a).min(n - b);
        let mut l = 0;
        while l < limit && s[a + l] == s[b + l] {
            l += 1;
        }
        lcp[w] = l;
    }
    (sa, lcp)
}

/// All length-`n` windows of `prefix(prefix_len)`, for `1 ≤ n ≤ max_n`.
pub fn factors(stream: &WordStream, prefix_len: usize, max_n: usize) -> Result<FactorTable> {
    check_window(prefix_len, max_n)?;
    let w = stream.prefix(prefix_len)?;
    Ok(factors_of_letters(w.alphabet().clone(), w.letters(), max_n))
}

/// Factor table of a finite word.
pub fn factors_of_word(w: &FiniteWord, max_n: usize) -> Result<FactorTable> {
    check_window(w.len(), max_n)?;
    Ok(factors_of_letters(w.alphabet().clone(), w.letters(), max_n))
}

fn check_window(prefix_len: usize, max_n: usize) -> Result<()> {
    if max_n == 0 {
        return Err(Error::InvalidParameter("max_n must be at least 1".into()));
    }
    if prefix_len < max_n {
        return Err(Error::InvalidParameter(format!(
            "prefix length {prefix_len} is shorter than max_n {max_n}"
        )));
    }
    Ok(())
}

/// Separator between independent segments in a concatenated buffer; no
/// factor may contain it.
pub(crate) const SEPARATOR: Letter = Letter::MAX;

pub(crate) fn factors_of_letters(alphabet: Alphabet, s: &[Letter], max_n: usize) -> FactorTable {
    let by_length = factor_buffers(s, max_n);
    FactorTable {
        alphabet,
        max_length: max_n,
        source: FactorSource::Window { prefix_len: s.len() },
        by_length,
    }
}

/// Factor table of the union of the factor sets of `segments`.
pub(crate) fn factors_of_segments(
    alphabet: Alphabet,
    source: FactorSource,
    segments: &[Vec<Letter>],
    max_n: usize,
) -> FactorTable {
    let mut buf = Vec::with_capacity(segments.iter().map(|x| x.len() + 1).sum());
    for seg in segments {
        buf.extend_from_slice(seg);
        buf.push(SEPARATOR);
    }
    FactorTable {
        alphabet,
        max_length: max_n,
        source,
        by_length: factor_buffers(&buf, max_n),
    }
}

fn factor_buffers(s: &[Letter], max_n: usize) -> Vec<Vec<Letter>> {
    let (sa, lcp) = truncated_suffix_array(s, max_n);
    let room = valid_lengths(s);
    (1..=max_n)
        .map(|n| {
            let mut buf = Vec::new();
            for (w, &pos) in sa.iter().enumerate() {
                if room[pos] >= n && (w == 0 || lcp[w] < n) {
                    buf.extend_from_slice(&s[pos..pos + n]);
                }
            }
            buf
        })
        .collect()
}

/// Number of letters from each position before the next separator.
fn valid_lengths(s: &[Letter]) -> Vec<usize> {
    let mut room = vec![0usize; s.len()];
    let mut run = 0;
    for i in (0..s.len()).rev() {
        run = if s[i] == SEPARATOR { 0 } else { run + 1 };
        room[i] = run;
    }
    room
}

/// Complexity function of a table with first differences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Complexity {
    /// `p[n-1] = p(n)`.
    pub p: Vec<u64>,
    /// `dp[n-1] = p(n+1) - p(n)`, one entry shorter than `p`.
    pub dp: Vec<i64>,
}

pub fn complexity(table: &FactorTable) -> Complexity {
    let p: Vec<u64> = (1..=table.max_length())
        .map(|n| table.p(n) as u64)
        .collect();
    let dp = p.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect();
    Complexity { p, dp }
}

/// `log p(n) / n` for each `n`, its running minimum, and the value at the
/// largest `n`. The running minimum is an upper trend for the entropy, since
/// `log p(n)/n` converges to its infimum by submultiplicativity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyEstimate {
    pub estimate: f64,
    pub ratios: Vec<f64>,
    pub envelope: Vec<f64>,
}

pub fn entropy_estimate(p: &[u64]) -> Result<EntropyEstimate> {
    if p.is_empty() {
        return Err(Error::InvalidParameter("empty complexity sequence".into()));
    }
    let ratios: Vec<f64> = p
        .iter()
        .enumerate()
        .map(|(i, &v)| (v.max(1) as f64).ln() / (i + 1) as f64)
        .collect();
    let mut envelope = Vec::with_capacity(ratios.len());
    let mut m = f64::INFINITY;
    for &r in &ratios {
        m = m.min(r);
        envelope.push(m);
    }
    Ok(EntropyEstimate {
        estimate: *ratios.last().unwrap(),
        ratios,
        envelope,
    })
}

/// Window recurrence data for each length `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Recurrence {
    pub prefix_len: usize,
    /// `r[n-1] = R(n)`, or `None` when some length-`n` factor of the window
    /// occurs only once, so no window length certifies recurrence.
    pub r: Vec<Option<usize>>,
    /// `r_return[n-1] = R'(n)`: the longest return word over length-`n`
    /// factors (maximal gap between consecutive occurrences); `None` under
    /// the same condition as `r`.
    pub r_return: Vec<Option<usize>>,
}

/// `R(n)`: the least `k` such that every length-`k` window of the prefix
/// contains every length-`n` factor of the prefix.
pub fn recurrence_function(
    stream: &WordStream,
    prefix_len: usize,
    max_n: usize,
) -> Result<Recurrence> {
    check_window(prefix_len, max_n)?;
    let w = stream.prefix(prefix_len)?;
    Ok(recurrence_of_letters(w.letters(), max_n))
}

pub(crate) fn recurrence_of_letters(s: &[Letter], max_n: usize) -> Recurrence {
    let len = s.len();
    let (sa, lcp) = truncated_suffix_array(s, max_n);
    let mut id = vec![usize::MAX; len];
    let mut r = Vec::with_capacity(max_n);
    let mut r_return = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let mut next = 0usize;
        for (w, &pos) in sa.iter().enumerate() {
            if len - pos < n {
                id[pos] = usize::MAX;
                continue;
            }
            if w == 0 || lcp[w] < n || len - sa[w - 1] < n {
                next += 1;
            }
            id[pos] = next - 1;
        }
        let count = next;
        let mut first = vec![usize::MAX; count];
        let mut last = vec![usize::MAX; count];
        let mut max_gap = vec![0usize; count];
        for pos in 0..=len - n {
            let f = id[pos];
            if last[f] == usize::MAX {
                first[f] = pos;
            } else {
                max_gap[f] = max_gap[f].max(pos - last[f]);
            }
            last[f] = pos;
        }
        let recurrent = (0..count).all(|f| first[f] != last[f]);
        if !recurrent {
            r.push(None);
            r_return.push(None);
            continue;
        }
        let mut k = 0usize;
        let mut gap = 0usize;
        for f in 0..count {
            let kv = (first[f] + n)
                .max(max_gap[f] + n - 1)
                .max(len - last[f]);
            k = k.max(kv);
            gap = gap.max(max_gap[f]);
        }
        r.push(Some(k));
        r_return.push(Some(gap));
    }
    Recurrence {
        prefix_len: len,
        r,
        r_return,
    }
}

fn occurrences(hay: &[Letter], w: &[Letter]) -> Vec<usize> {
    if w.is_empty() || w.len() > hay.len() {
        return Vec::new();
    }
    hay.windows(w.len())
        .enumerate()
        .filter(|(_, win)| *win == w)
        .map(|(i, _)| i)
        .collect()
}

fn check_same_alphabet(stream: &WordStream, w: &FiniteWord) -> Result<()> {
    if stream.alphabet() != w.alphabet() {
        return Err(Error::AlphabetMismatch {
            expected: stream.alphabet().to_string(),
            found: w.alphabet().to_string(),
        });
    }
    Ok(())
}

/// Return words of `w` in the prefix: the factors running from one occurrence
/// of `w` to the next, listed by first appearance.
pub fn return_words(
    stream: &WordStream,
    prefix_len: usize,
    w: &FiniteWord,
) -> Result<Vec<FiniteWord>> {
    check_same_alphabet(stream, w)?;
    let u = stream.prefix(prefix_len)?;
    let occ = occurrences(u.letters(), w.letters());
    if occ.len() < 2 {
        return Err(Error::InsufficientOccurrences(format!(
            "{w} ({} occurrence(s) in a window of {prefix_len})",
            occ.len()
        )));
    }
    let mut seen: Vec<&[Letter]> = Vec::new();
    for pair in occ.windows(2) {
        let rw = &u.letters()[pair[0]..pair[1]];
        if !seen.contains(&rw) {
            seen.push(rw);
        }
    }
    Ok(seen
        .into_iter()
        .map(|rw| FiniteWord::new_unchecked(u.alphabet().clone(), rw.to_vec()))
        .collect())
}

/// The prefix recoded over its return words to `w`.
#[derive(Debug, Clone)]
pub struct DerivedWord {
    /// Coding of the prefix over `1..=d₁`.
    pub derived: FiniteWord,
    /// `i ↦ w_i`, the `i`-th return word by first appearance.
    pub coding: Substitution,
    /// Length of the prefix reproduced by `coding(derived)`: everything up to
    /// the last occurrence of `w` in the window.
    pub covered: usize,
}

impl DerivedWord {
    pub fn stream(&self) -> WordStream {
        WordStream::finite(self.derived.clone())
    }
}

/// Derived word of the prefix with respect to its own prefix `w`.
///
/// The recoding covers the prefix up to the last occurrence of `w`; the tail
/// after it is not a complete return word and is dropped.
pub fn derived_word(stream: &WordStream, prefix_len: usize, w: &FiniteWord) -> Result<DerivedWord> {
    check_same_alphabet(stream, w)?;
    let u = stream.prefix(prefix_len)?;
    if !u.letters().starts_with(w.letters()) || w.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "{w} must be a non-empty prefix of the window"
        )));
    }
    let occ = occurrences(u.letters(), w.letters());
    if occ.len() < 2 {
        return Err(Error::InsufficientOccurrences(format!(
            "{w} ({} occurrence(s) in a window of {prefix_len})",
            occ.len()
        )));
    }
    let mut words: Vec<&[Letter]> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    let mut code = Vec::with_capacity(occ.len() - 1);
    for pair in occ.windows(2) {
        let rw = &u.letters()[pair[0]..pair[1]];
        let idx = match words.iter().position(|x| *x == rw) {
            Some(i) => i,
            None => {
                words.push(rw);
                counts.push(0);
                words.len() - 1
            }
        };
        counts[idx] += 1;
        code.push(idx as Letter);
    }
    if let Some(i) = counts.iter().position(|&c| c < 2) {
        return Err(Error::NotRecurrent(format!(
            "return word {} occurs once in the window",
            u.alphabet().render(words[i])
        )));
    }
    let numeric = Alphabet::numeric(words.len())?;
    let coding = Substitution::new(
        Some(format!("return words of {w}")),
        numeric.clone(),
        u.alphabet().clone(),
        words.iter().map(|x| x.to_vec()).collect(),
    )?;
    Ok(DerivedWord {
        derived: FiniteWord::new_unchecked(numeric, code),
        coding,
        covered: *occ.last().unwrap(),
    })
}

/// Complexity recomputed on doubling prefixes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    pub prefix_lens: Vec<usize>,
    /// Largest `n` such that `p(1..=n)` agreed on the last two prefixes.
    pub stable_up_to: usize,
}

/// Recomputes `p(1..=max_n)` on `prefix_len · 2^k` for `k ≤ doublings` and
/// reports how far the last two agree.
pub fn stabilization(
    stream: &WordStream,
    prefix_len: usize,
    max_n: usize,
    doublings: usize,
) -> Result<Stabilization> {
    let mut lens = Vec::new();
    let mut tables: Vec<Vec<u64>> = Vec::new();
    let mut len = prefix_len;
    for _ in 0..=doublings {
        let t = factors(stream, len, max_n)?;
        tables.push(complexity(&t).p);
        lens.push(len);
        len *= 2;
    }
    let stable_up_to = match tables.len() {
        0 | 1 => 0,
        k => {
            let (a, b) = (&tables[k - 2], &tables[k - 1]);
            a.iter().zip(b).take_while(|(x, y)| x == y).count()
        }
    };
    Ok(Stabilization {
        prefix_lens: lens,
        stable_up_to,
    })
}

/// One CSV row per length: `n, p, dp, R`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityRow {
    pub n: usize,
    pub p: u64,
    pub dp: Option<i64>,
    #[serde(rename = "R")]
    pub r: Option<usize>,
}

pub fn complexity_rows(c: &Complexity, rec: Option<&Recurrence>) -> Vec<ComplexityRow> {
    c.p.iter()
        .enumerate()
        .map(|(i, &p)| ComplexityRow {
            n: i + 1,
            p,
            dp: c.dp.get(i).copied(),
            r: rec.and_then(|r| r.r.get(i).copied().flatten()),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::builtin;

    fn fib_stream() -> WordStream {
        builtin("fibonacci").unwrap().fixed_point_stream(0).unwrap()
    }

    fn brute_factors(s: &[Letter], n: usize) -> BTreeSet<Vec<Letter>> {
        s.windows(n).map(|w| w.to_vec()).collect()
    }

    fn brute_recurrence(s: &[Letter], n: usize) -> Option<usize> {
        let all = brute_factors(s, n);
        (n..=s.len()).find(|&k| {
            s.windows(k)
                .all(|win| all.iter().all(|f| win.windows(n).any(|x| x == &f[..])))
        })
    }

    #[test]
    fn fibonacci_factors_of_length_three() {
        let t = factors(&fib_stream(), 10_000, 3).unwrap();
        assert_eq!(t.rendered(3), vec!["aab", "aba", "baa", "bab"]);
        assert_eq!(t.p(3), 4);
        assert_eq!(
            t.source(),
            &FactorSource::Window { prefix_len: 10_000 }
        );
    }

    #[test]
    fn constant_and_full_window() {
        let a = Alphabet::from_chars("a").unwrap();
        let s = WordStream::periodic(FiniteWord::parse("a", &a).unwrap()).unwrap();
        let t = factors(&s, 50, 10).unwrap();
        assert!((1..=10).all(|n| t.p(n) == 1));
        let t = factors(&fib_stream(), 7, 7).unwrap();
        assert_eq!(t.p(7), 1);
        assert!(matches!(factors(&fib_stream(), 3, 4), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn short_stream_error() {
        let s = WordStream::finite(FiniteWord::parse_inferred("abc").unwrap());
        assert_eq!(
            factors(&s, 10, 2),
            Err(Error::ShortStream {
                requested: 10,
                available: 3
            })
        );
    }

    #[test]
    fn fibonacci_complexity_is_n_plus_one() {
        let t = factors(&fib_stream(), 5_000, 60).unwrap();
        let c = complexity(&t);
        assert!(c.p.iter().enumerate().all(|(i, &p)| p == i as u64 + 2));
        assert!(c.dp.iter().all(|&d| d == 1));
    }

    #[test]
    fn entropy_estimates() {
        let lin: Vec<u64> = (1..=400).map(|n| n + 1).collect();
        let e = entropy_estimate(&lin).unwrap();
        assert!(e.estimate < 0.016);
        let full: Vec<u64> = (1..=20).map(|n| 1u64 << n).collect();
        assert!((entropy_estimate(&full).unwrap().estimate - 2f64.ln()).abs() < 1e-12);
        assert_eq!(entropy_estimate(&[1, 1, 1]).unwrap().estimate, 0.0);
        assert!(entropy_estimate(&[]).is_err());
    }

    #[test]
    fn fibonacci_recurrence_matches_brute_force() {
        let s = fib_stream();
        let rec = recurrence_function(&s, 400, 12).unwrap();
        assert_eq!(rec.r[0], Some(3));
        let letters = s.prefix(400).unwrap().into_letters();
        for n in 1..=12 {
            assert_eq!(rec.r[n - 1], brute_recurrence(&letters, n), "n = {n}");
        }
    }

    #[test]
    fn constant_recurrence_and_undetermined() {
        let a = Alphabet::from_chars("a").unwrap();
        let s = WordStream::periodic(FiniteWord::parse("a", &a).unwrap()).unwrap();
        let rec = recurrence_function(&s, 30, 5).unwrap();
        assert_eq!(rec.r, (1..=5).map(Some).collect::<Vec<_>>());
        let w = FiniteWord::parse_inferred("abbbbbbb").unwrap();
        let rec = recurrence_function(&WordStream::finite(w), 8, 2).unwrap();
        assert_eq!(rec.r, vec![None, None]);
    }

    #[test]
    fn return_words_examples() {
        let s = fib_stream();
        let a = FiniteWord::parse("a", s.alphabet()).unwrap();
        let rw: Vec<String> = return_words(&s, 1000, &a)
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(rw, vec!["ab", "a"]);
        let ab = Alphabet::from_chars("ab").unwrap();
        let per = WordStream::periodic(FiniteWord::parse("ab", &ab).unwrap()).unwrap();
        let w = FiniteWord::parse("ab", &ab).unwrap();
        let rw = return_words(&per, 100, &w).unwrap();
        assert_eq!(rw.len(), 1);
        assert_eq!(rw[0].to_string(), "ab");
        let bb = FiniteWord::parse("bb", &ab).unwrap();
        assert!(matches!(
            return_words(&per, 100, &bb),
            Err(Error::InsufficientOccurrences(_))
        ));
    }

    #[test]
    fn derived_words() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let per = WordStream::periodic(FiniteWord::parse("ab", &ab).unwrap()).unwrap();
        let d = derived_word(&per, 100, &FiniteWord::parse("ab", &ab).unwrap()).unwrap();
        assert!(d.derived.letters().iter().all(|&l| l == 0));
        let s = fib_stream();
        let a = FiniteWord::parse("a", &ab).unwrap();
        let d = derived_word(&s, 2000, &a).unwrap();
        let back = d.coding.apply(&d.derived).unwrap();
        let u = s.prefix(2000).unwrap();
        assert_eq!(back.letters(), &u.letters()[..d.covered]);
        // Recoding Fibonacci over its return words to `a` gives Fibonacci again.
        let fib = s.prefix(d.derived.len()).unwrap();
        assert_eq!(d.derived.letters(), fib.letters());
    }

    #[test]
    fn derived_word_rejects_non_recurrent() {
        let w = FiniteWord::parse_inferred("abaab").unwrap();
        let r = derived_word(&WordStream::finite(w.clone()), 5, &w.prefix(1));
        assert!(matches!(r, Err(Error::NotRecurrent(_))));
    }

    #[test]
    fn stabilization_on_fibonacci() {
        let st = stabilization(&fib_stream(), 2000, 30, 2).unwrap();
        assert_eq!(st.prefix_lens, vec![2000, 4000, 8000]);
        assert_eq!(st.stable_up_to, 30);
    }

    #[test]
    fn table_membership() {
        let t = factors(&fib_stream(), 200, 5).unwrap();
        assert!(t.contains(&[0, 1, 0]));
        assert!(!t.contains(&[1, 1]));
        assert!(t.contains(&[]));
    }
}
