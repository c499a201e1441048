//! Finite ordered alphabets.
//!
//! Letters are stored as strings (so multi-character symbols are allowed) and
//! addressed everywhere else by their index, which is also the coordinate used
//! in incidence matrices and abelianization vectors.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a letter inside its [`Alphabet`].
pub type Letter = u32;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Arc<[String]>,
}

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        for (i, l) in letters.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::InvalidParameter("empty letter name".into()));
            }
            if letters[..i].contains(l) {
                return Err(Error::DuplicateLetter(l.clone()));
            }
        }
        Ok(Alphabet {
            letters: letters.into(),
        })
    }

    /// One-character letters taken from `s`, in order.
    pub fn from_chars(s: &str) -> Result<Self> {
        Self::new(s.chars().map(String::from))
    }

    /// The alphabet `1, 2, ..., d`.
    pub fn numeric(d: usize) -> Result<Self> {
        Self::new((1..=d).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.letters[letter as usize]
    }

    pub fn index(&self, name: &str) -> Result<Letter> {
        self.letters
            .iter()
            .position(|l| l == name)
            .map(|i| i as Letter)
            .ok_or_else(|| Error::UnknownLetter {
                letter: name.to_string(),
                alphabet: self.to_string(),
            })
    }

    pub fn contains(&self, name: &str) -> bool {
        self.letters.iter().any(|l| l == name)
    }

    /// True when every letter is a single character, so words can be
    /// rendered without separators.
    pub fn is_single_char(&self) -> bool {
        self.letters.iter().all(|l| l.chars().count() == 1)
    }

    /// Renders a sequence of letter indices.
    pub fn render(&self, letters: &[Letter]) -> String {
        if self.is_single_char() {
            letters.iter().map(|&l| self.name(l)).collect()
        } else {
            letters
                .iter()
                .map(|&l| self.name(l))
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    /// Extends the alphabet with a fresh letter whose name starts with `base`.
    pub fn with_fresh_letter(&self, base: &str) -> (Alphabet, Letter) {
        let mut name = base.to_string();
        let mut k = 0;
        while self.contains(&name) {
            name = format!("{base}{k}");
            k += 1;
        }
        let mut letters = self.letters.to_vec();
        letters.push(name);
        let idx = (letters.len() - 1) as Letter;
        (
            Alphabet {
                letters: letters.into(),
            },
            idx,
        )
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.letters.join(","))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_duplicates() {
        assert_eq!(
            Alphabet::new(Vec::<String>::new()),
            Err(Error::EmptyAlphabet)
        );
        assert!(matches!(
            Alphabet::from_chars("aba"),
            Err(Error::DuplicateLetter(_))
        ));
    }

    #[test]
    fn fresh_letter_avoids_collisions() {
        let a = Alphabet::new(["a", "l", "l0"]).unwrap();
        let (b, idx) = a.with_fresh_letter("l");
        assert_eq!(b.name(idx), "l1");
        assert_eq!(b.len(), 4);
    }

    #[test]
    fn render_multichar() {
        let a = Alphabet::new(["x1", "x2"]).unwrap();
        assert_eq!(a.render(&[0, 1, 0]), "x1 x2 x1");
        let b = Alphabet::from_chars("ab").unwrap();
        assert_eq!(b.render(&[0, 1, 0]), "aba");
    }
}
