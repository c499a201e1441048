//! Finite words and lazily generated infinite words.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};

/// A finite word over an alphabet, stored as letter indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteWord {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl FiniteWord {
    pub fn new(alphabet: Alphabet, letters: Vec<Letter>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l as usize >= alphabet.len()) {
            return Err(Error::UnknownLetter {
                letter: format!("#{bad}"),
                alphabet: alphabet.to_string(),
            });
        }
        Ok(FiniteWord { alphabet, letters })
    }

    pub(crate) fn new_unchecked(alphabet: Alphabet, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|&l| (l as usize) < alphabet.len()));
        FiniteWord { alphabet, letters }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        FiniteWord {
            alphabet,
            letters: Vec::new(),
        }
    }

    /// Parses a word given letter by letter (`"abaab"`) or, when the text
    /// contains whitespace-separated multi-character tokens, token by token
    /// (`"x1 x2 x1"`).
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let letters = tokenize(text)
            .iter()
            .map(|t| alphabet.index(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteWord {
            alphabet: alphabet.clone(),
            letters,
        })
    }

    /// Parses a word and infers its alphabet (distinct letters, sorted).
    pub fn parse_inferred(text: &str) -> Result<Self> {
        let tokens = tokenize(text);
        let set: BTreeSet<&String> = tokens.iter().collect();
        let alphabet = Alphabet::new(set.into_iter().cloned())?;
        Self::parse(text, &alphabet)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `|w|_i`: number of occurrences of `letter`.
    pub fn count(&self, letter: Letter) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }

    pub fn concat(&self, other: &FiniteWord) -> Result<FiniteWord> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                expected: self.alphabet.to_string(),
                found: other.alphabet.to_string(),
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(FiniteWord::new_unchecked(self.alphabet.clone(), letters))
    }

    pub fn prefix(&self, n: usize) -> FiniteWord {
        FiniteWord::new_unchecked(
            self.alphabet.clone(),
            self.letters[..n.min(self.len())].to_vec(),
        )
    }

    pub fn starts_with(&self, other: &FiniteWord) -> bool {
        self.alphabet == other.alphabet && self.letters.starts_with(&other.letters)
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.render(&self.letters))
    }
}

impl fmt::Debug for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteWord({:?})", self.to_string())
    }
}

fn tokenize(text: &str) -> Vec<String> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.iter().any(|t| t.chars().count() > 1) && tokens.len() > 1 {
        tokens.into_iter().map(String::from).collect()
    } else {
        text.chars()
            .filter(|c| !c.is_whitespace())
            .map(String::from)
            .collect()
    }
}

/// Vector of letter counts: component `i` is `|w|_i`.
pub fn abelianize(w: &FiniteWord) -> Vec<u64> {
    abelianize_letters(w.letters(), w.alphabet().len())
}

pub(crate) fn abelianize_letters(letters: &[Letter], d: usize) -> Vec<u64> {
    let mut v = vec![0u64; d];
    for &l in letters {
        v[l as usize] += 1;
    }
    v
}

type PrefixFn = dyn Fn(usize) -> Result<Vec<Letter>> + Send + Sync;

/// An infinite (or declared-finite) word given by a prefix provider.
///
/// The provider is called with a requested length `n` and must return a
/// vector of at least `n` letters, or the whole word when the word is finite
/// and shorter than `n`. Prefixes must be consistent across calls.
#[derive(Clone)]
pub struct WordStream {
    alphabet: Alphabet,
    label: String,
    provider: Arc<PrefixFn>,
}

impl WordStream {
    pub fn from_fn<F>(alphabet: Alphabet, label: impl Into<String>, f: F) -> Self
    where
        F: Fn(usize) -> Result<Vec<Letter>> + Send + Sync + 'static,
    {
        WordStream {
            alphabet,
            label: label.into(),
            provider: Arc::new(f),
        }
    }

    /// A finite word seen as a stream that declares itself finite.
    pub fn finite(word: FiniteWord) -> Self {
        let letters: Arc<[Letter]> = word.letters.into();
        let label = format!("finite word of length {}", letters.len());
        WordStream::from_fn(word.alphabet, label, move |n| {
            Ok(letters[..n.min(letters.len())].to_vec())
        })
    }

    /// The periodic word `w w w ...`.
    pub fn periodic(word: FiniteWord) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidParameter("period must be non-empty".into()));
        }
        let label = format!("({word})^inf");
        let letters: Arc<[Letter]> = word.letters.into();
        Ok(WordStream::from_fn(word.alphabet, label, move |n| {
            Ok(letters.iter().copied().cycle().take(n).collect())
        }))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Exactly `n` letters, or [`Error::ShortStream`] if the word is finite
    /// and shorter.
    pub fn prefix(&self, n: usize) -> Result<FiniteWord> {
        let w = self.available_prefix(n)?;
        if w.len() < n {
            return Err(Error::ShortStream {
                requested: n,
                available: w.len(),
            });
        }
        Ok(w)
    }

    /// Up to `n` letters; shorter only when the stream is finite.
    pub fn available_prefix(&self, n: usize) -> Result<FiniteWord> {
        let mut letters = (self.provider)(n)?;
        letters.truncate(n);
        FiniteWord::new(self.alphabet.clone(), letters)
    }
}

impl fmt::Debug for WordStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WordStream")
            .field("alphabet", &self.alphabet)
            .field("label", &self.label)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelianize_counts() {
        let w = FiniteWord::parse_inferred("abaab").unwrap();
        assert_eq!(abelianize(&w), vec![3, 2]);
        let e = FiniteWord::empty(w.alphabet().clone());
        assert_eq!(abelianize(&e), vec![0, 0]);
    }

    #[test]
    fn abelianize_is_additive() {
        let ab = Alphabet::from_chars("abc").unwrap();
        let v = FiniteWord::parse("abcca", &ab).unwrap();
        let w = FiniteWord::parse("bbc", &ab).unwrap();
        let vw = v.concat(&w).unwrap();
        let sum: Vec<u64> = abelianize(&v)
            .iter()
            .zip(abelianize(&w))
            .map(|(x, y)| x + y)
            .collect();
        assert_eq!(abelianize(&vw), sum);
    }

    #[test]
    fn parse_tokens_and_chars() {
        let w = FiniteWord::parse_inferred("x1 x2  x1\n").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.to_string(), "x1 x2 x1");
        let v = FiniteWord::parse_inferred("a b\nb a").unwrap();
        assert_eq!(v.to_string(), "abba");
    }

    #[test]
    fn finite_stream_reports_short() {
        let w = FiniteWord::parse_inferred("abc").unwrap();
        let s = WordStream::finite(w);
        assert_eq!(s.prefix(2).unwrap().to_string(), "ab");
        assert_eq!(
            s.prefix(5),
            Err(Error::ShortStream {
                requested: 5,
                available: 3
            })
        );
    }

    #[test]
    fn periodic_stream() {
        let w = FiniteWord::parse_inferred("ab").unwrap();
        let s = WordStream::periodic(w).unwrap();
        assert_eq!(s.prefix(5).unwrap().to_string(), "ababa");
    }
}
