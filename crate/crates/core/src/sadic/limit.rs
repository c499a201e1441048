//! Limit words, languages, growth and primitivity of directive sequences.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use serde::Serialize;

use crate::alphabet::Letter;
use crate::error::{Error, Result};
use crate::factors::{factors_of_segments, FactorSource, FactorTable};
use crate::matrix::BoolMatrix;
use crate::substitution::Substitution;
use crate::word::WordStream;

use super::directive::DirectiveSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LimitOptions {
    /// Steps without growth of the seed image after which the sequence is
    /// declared not everywhere growing.
    pub stall_window: usize,
    /// Hard cap on the depth explored for one prefix request.
    pub max_depth: usize,
}

impl Default for LimitOptions {
    fn default() -> Self {
        LimitOptions {
            stall_window: 64,
            max_depth: 1 << 20,
        }
    }
}

/// The limit word `lim σ_0 ⋯ σ_{n-1}(a_n)`.
///
/// Seed compatibility (`σ_n(a_{n+1})` begins with `a_n`) is checked at every
/// depth reached, so each prefix is a prefix of every deeper approximant.
/// For a finite sequence the stream is the finite word `σ_0 ⋯ σ_{L-1}(a_L)`.
pub fn limit_word_stream(ds: &DirectiveSequence, opts: LimitOptions) -> Result<WordStream> {
    ds.seed(0)?;
    let alphabet = ds.alphabet(0)?;
    let ds2 = ds.clone();
    let label = format!("limit of {}", ds.label());
    Ok(WordStream::from_fn(alphabet, label, move |m| {
        limit_prefix(&ds2, m, opts)
    }))
}

fn limit_prefix(ds: &DirectiveSequence, m: usize, opts: LimitOptions) -> Result<Vec<Letter>> {
    let target = m.max(1) as u64;
    // lens[k][x] = |σ_{[0,k)}(x)| for x in A_k, saturating.
    let mut lens: Vec<Vec<u64>> = vec![vec![1; ds.alphabet(0)?.len()]];
    let mut subs: Vec<Substitution> = Vec::new();
    let mut seed = ds.seed(0)?;
    let mut best = 1u64;
    let mut last_growth = 0usize;
    let mut n = 0usize;
    loop {
        if lens[n][seed as usize] >= target || ds.len() == Some(n) {
            break;
        }
        if n >= opts.max_depth {
            return Err(Error::NotGrowing {
                depth: n,
                length: best as usize,
            });
        }
        let s = ds.substitution(n)?;
        if let Some(prev) = subs.last() {
            if prev.domain() != s.codomain() {
                return Err(Error::DimensionMismatch {
                    index: n,
                    detail: format!(
                        "codomain {} differs from domain {} of the previous step",
                        s.codomain(),
                        prev.domain()
                    ),
                });
            }
        }
        let next_seed = ds.seed(n + 1)?;
        if s.image(next_seed)[0] != seed {
            return Err(Error::SeedIncompatible {
                index: n,
                detail: format!(
                    "{}({}) does not begin with {}",
                    s.label(),
                    s.domain().name(next_seed),
                    s.codomain().name(seed)
                ),
            });
        }
        let prev = &lens[n];
        let next: Vec<u64> = s
            .images()
            .iter()
            .map(|img| {
                img.iter()
                    .fold(0u64, |acc, &y| acc.saturating_add(prev[y as usize]))
            })
            .collect();
        let grown = next[next_seed as usize];
        lens.push(next);
        subs.push(s);
        n += 1;
        seed = next_seed;
        if grown > best {
            best = grown;
            last_growth = n;
        } else if n - last_growth >= opts.stall_window {
            return Err(Error::NotGrowing {
                depth: n,
                length: best as usize,
            });
        }
    }
    // Expand top-down, keeping at each level only the shortest prefix whose
    // image reaches the target length.
    let mut word = vec![seed];
    for k in (0..n).rev() {
        let s = &subs[k];
        let lk = &lens[k];
        let mut out = Vec::new();
        let mut covered = 0u64;
        'outer: for &x in &word {
            for &y in s.image(x) {
                out.push(y);
                covered = covered.saturating_add(lk[y as usize]);
                if covered >= target {
                    break 'outer;
                }
            }
        }
        word = out;
    }
    word.truncate(m);
    Ok(word)
}

/// Profile of `β⁻_n = min_i |σ_{[0,n)}(i)|` and `β⁺_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthProfile {
    /// Deepest level computed (shorter than requested for finite sequences).
    pub depth: usize,
    #[serde(serialize_with = "big_vec")]
    pub beta_minus: Vec<BigUint>,
    #[serde(serialize_with = "big_vec")]
    pub beta_plus: Vec<BigUint>,
    /// `β⁻` still increased over the second half of the range, i.e.
    /// `β⁻_N > β⁻_{⌊N/2⌋}`.
    pub growing: bool,
}

fn big_vec<S: serde::Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Column sums of `A_n = M_0 ⋯ M_{n-1}` as exact row vectors.
pub(crate) fn column_sums(ds: &DirectiveSequence, depth: usize) -> Result<Vec<Vec<BigUint>>> {
    let depth = ds.len().map_or(depth, |l| l.min(depth));
    let chain = ds.chain(depth)?;
    let d0 = ds.alphabet(0)?.len();
    let mut rows = vec![vec![BigUint::from(1u8); d0]];
    for s in &chain {
        let prev = rows.last().unwrap();
        let next = s
            .images()
            .iter()
            .map(|img| img.iter().map(|&y| &prev[y as usize]).sum())
            .collect();
        rows.push(next);
    }
    Ok(rows)
}

/// Growth profile of the seed-independent image lengths up to `depth`.
pub fn everywhere_growing_check(ds: &DirectiveSequence, depth: usize) -> Result<GrowthProfile> {
    let rows = column_sums(ds, depth)?;
    let beta_minus: Vec<BigUint> = rows.iter().map(|r| r.iter().min().unwrap().clone()).collect();
    let beta_plus: Vec<BigUint> = rows.iter().map(|r| r.iter().max().unwrap().clone()).collect();
    let n = beta_minus.len() - 1;
    let growing = n >= 1 && beta_minus[n] > beta_minus[n / 2];
    Ok(GrowthProfile {
        depth: n,
        beta_minus,
        beta_plus,
        growing,
    })
}

/// Image summary of a word for factor collection up to length `l`: its
/// length, first and last `l - 1` letters, and its length-`l` factors.
#[derive(Clone)]
struct Summary {
    len: u64,
    head: Vec<Letter>,
    tail: Vec<Letter>,
    windows: HashSet<Vec<Letter>>,
}

impl Summary {
    fn letter(x: Letter, l: usize) -> Self {
        let edge = if l > 1 { vec![x] } else { Vec::new() };
        let mut windows = HashSet::new();
        if l == 1 {
            windows.insert(vec![x]);
        }
        Summary {
            len: 1,
            head: edge.clone(),
            tail: edge,
            windows,
        }
    }

    fn empty() -> Self {
        Summary {
            len: 0,
            head: Vec::new(),
            tail: Vec::new(),
            windows: HashSet::new(),
        }
    }

    fn concat(&self, other: &Summary, l: usize) -> Summary {
        let h = l - 1;
        let mut windows = self.windows.clone();
        windows.extend(other.windows.iter().cloned());
        let mut joint = self.tail.clone();
        joint.extend_from_slice(&other.head);
        if joint.len() >= l {
            for w in joint.windows(l) {
                windows.insert(w.to_vec());
            }
        }
        let head = if self.len as usize >= h {
            self.head.clone()
        } else {
            let mut v = self.head.clone();
            v.extend_from_slice(&other.head);
            v.truncate(h);
            v
        };
        let tail = if other.len as usize >= h {
            other.tail.clone()
        } else {
            let mut v = self.tail.clone();
            v.extend_from_slice(&other.tail);
            v[v.len().saturating_sub(h)..].to_vec()
        };
        Summary {
            len: self.len.saturating_add(other.len),
            head,
            tail,
            windows,
        }
    }
}

/// Cap on stored window letters for language tables.
const LANGUAGE_CAP: usize = 1 << 26;

/// Factors up to `max_len` of `σ_{[0,depth)}(A_depth*)`: the depth-`depth`
/// truncation of the S-adic language. Deeper truncations never add factors.
pub fn sadic_language(ds: &DirectiveSequence, depth: usize, max_len: usize) -> Result<FactorTable> {
    if max_len == 0 {
        return Err(Error::InvalidParameter("max_len must be at least 1".into()));
    }
    if let Some(l) = ds.len() {
        if depth > l {
            return Err(Error::DirectiveExhausted(l));
        }
    }
    let chain = ds.chain(depth)?;
    let a0 = ds.alphabet(0)?;
    let mut level: Vec<Summary> = (0..a0.len() as Letter)
        .map(|x| Summary::letter(x, max_len))
        .collect();
    for s in &chain {
        level = s
            .images()
            .iter()
            .map(|img| {
                img.iter()
                    .fold(Summary::empty(), |acc, &y| acc.concat(&level[y as usize], max_len))
            })
            .collect();
        check_cap(level.iter().map(|x| x.windows.len()).sum::<usize>() * max_len)?;
    }
    // Free words over the top alphabet: explore the reachable tails.
    let mut windows: HashSet<Vec<Letter>> = HashSet::new();
    for x in &level {
        windows.extend(x.windows.iter().cloned());
    }
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(Vec::new());
    queue.push_back(Summary::empty());
    while let Some(state) = queue.pop_front() {
        for x in &level {
            let mut bare = x.clone();
            bare.windows = HashSet::new();
            let c = state.concat(&bare, max_len);
            windows.extend(c.windows);
            if seen.insert(c.tail.clone()) {
                let len = c.tail.len() as u64;
                queue.push_back(Summary {
                    len,
                    head: c.tail.clone(),
                    tail: c.tail,
                    windows: HashSet::new(),
                });
            }
        }
        check_cap(windows.len() * max_len)?;
    }
    let mut segments: Vec<Vec<Letter>> = windows.into_iter().collect();
    segments.sort_unstable();
    Ok(factors_of_segments(
        a0,
        FactorSource::Language { depth },
        &segments,
        max_len,
    ))
}

fn check_cap(letters: usize) -> Result<()> {
    if letters > LANGUAGE_CAP {
        return Err(Error::TooLarge(format!(
            "language table would hold more than {LANGUAGE_CAP} letters"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeakWitness {
    pub n: usize,
    /// Least `r` with `M_n ⋯ M_{n+r}` positive, if found within `r_max`.
    pub r: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimitivityReport {
    pub start: usize,
    pub r_max: usize,
    pub weak: Vec<WeakWitness>,
    /// One `r` that works at every scanned `n`; `None` means unknown, not
    /// false.
    pub strong: Option<usize>,
}

/// Weak-primitivity witnesses at `n = start, …, start + scan - 1` and the
/// uniform window length they imply.
pub fn primitivity_check(
    ds: &DirectiveSequence,
    start: usize,
    r_max: usize,
    scan: usize,
) -> Result<PrimitivityReport> {
    let end = start + scan + r_max;
    let end = ds.len().map_or(end, |l| l.min(end));
    let chain = ds.chain(end)?;
    let pats: Vec<BoolMatrix> = chain.iter().map(|s| s.incidence().pattern()).collect();
    if let Some(p) = pats.iter().find(|p| p.rows() != p.cols()) {
        return Err(Error::NotSquare {
            rows: p.rows(),
            cols: p.cols(),
        });
    }
    let mut weak = Vec::with_capacity(scan);
    for n in start..start + scan {
        if n >= pats.len() {
            break;
        }
        let mut acc = pats[n].clone();
        let mut found = None;
        for r in 0..=r_max {
            if r > 0 {
                match pats.get(n + r) {
                    Some(p) => acc = acc.mul(p).expect("square chain"),
                    None => break,
                }
            }
            if acc.is_positive() {
                found = Some(r);
                break;
            }
        }
        weak.push(WeakWitness { n, r: found });
    }
    let strong = if !weak.is_empty() && weak.iter().all(|w| w.r.is_some()) {
        weak.iter().map(|w| w.r.unwrap()).max()
    } else {
        None
    };
    Ok(PrimitivityReport {
        start,
        r_max,
        weak,
        strong,
    })
}
