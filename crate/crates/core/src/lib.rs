//! S-adic expansions of infinite words.
//!
//! Substitutions and their incidence matrices, combinatorial metrics of
//! words (complexity, recurrence, balance), directive sequences and their
//! limit words and languages, letter frequencies from nested cones,
//! multidimensional continued fractions, and Lyapunov exponents of matrix
//! cocycles over S-adic graphs.

pub mod alphabet;
pub mod balance;
pub mod cf;
pub mod error;
pub mod factors;
pub mod graph;
pub mod matrix;
pub mod sadic;
pub mod substitution;
pub mod word;

pub use alphabet::{Alphabet, Letter};
pub use error::{Error, Result};
pub use matrix::IntMatrix;
pub use substitution::Substitution;
pub use word::{abelianize, FiniteWord, WordStream};
