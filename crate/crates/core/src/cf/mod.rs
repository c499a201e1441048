//! Multidimensional continued fractions as substitution selectors.
//!
//! A map picks, for a non-negative vector `x`, a branch `i` with
//! `M_i⁻¹ x ≥ 0` and continues with `F(x) = M_i⁻¹ x`. The chosen matrices
//! are incidence matrices of substitutions, so an expansion is also a
//! directive sequence.

mod maps;
mod scalar;

pub use maps::{ArnouxRauzyMap, JacobiPerronMap, PartitionMap, SturmianMap, JP_DIGIT_CAP};
pub use scalar::{parse_rational, CfScalar};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::sadic::{DirectiveKind, DirectiveSequence, Seeds, TailPolicy};
use crate::substitution::Substitution;

#[derive(Debug, Clone, PartialEq)]
pub struct Branch<T> {
    pub symbol: String,
    pub substitution: Substitution,
    /// `M⁻¹ x`.
    pub remainder: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Step<T> {
    Branch(Branch<T>),
    /// No branch applies; the reason is reported with the expansion.
    Halt(String),
}

pub trait CfMap<T: CfScalar> {
    fn name(&self) -> String;
    fn dimension(&self) -> usize;
    fn step(&self, x: &[T]) -> Result<Step<T>>;
}

#[derive(Debug, Clone, PartialEq)]
pub struct CfExpansion<T> {
    pub map: String,
    pub input: Vec<T>,
    pub symbols: Vec<String>,
    pub substitutions: Vec<Substitution>,
    /// `remainders[k] = F^{k+1}(x)`.
    pub remainders: Vec<Vec<T>>,
    pub halt: Option<String>,
}

/// Applies the map up to `n` times, stopping early when it halts.
pub fn cf_expand<T: CfScalar, M: CfMap<T> + ?Sized>(map: &M, x: &[T], n: usize) -> Result<CfExpansion<T>> {
    let mut exp = CfExpansion {
        map: map.name(),
        input: x.to_vec(),
        symbols: Vec::new(),
        substitutions: Vec::new(),
        remainders: Vec::new(),
        halt: None,
    };
    let mut cur = x.to_vec();
    for _ in 0..n {
        match map.step(&cur)? {
            Step::Branch(b) => {
                exp.symbols.push(b.symbol);
                exp.substitutions.push(b.substitution);
                cur = b.remainder.clone();
                exp.remainders.push(b.remainder);
            }
            Step::Halt(reason) => {
                exp.halt = Some(reason);
                break;
            }
        }
    }
    if exp.halt.is_none() && n == 0 {
        // Report a halt at the input even for zero steps.
        if let Step::Halt(reason) = map.step(&cur)? {
            exp.halt = Some(reason);
        }
    }
    Ok(exp)
}

fn apply<T: CfScalar>(m: &IntMatrix, v: &[T]) -> Vec<T> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols()).fold(T::zero(), |s, j| {
                s.add(&T::from_int(&m.get(i, j).clone().into()).mul(&v[j]))
            })
        })
        .collect()
}

impl<T: CfScalar> CfExpansion<T> {
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn matrices(&self) -> Vec<IntMatrix> {
        self.substitutions.iter().map(Substitution::incidence).collect()
    }

    /// `M_{i_0} ⋯ M_{i_{k-1}}`.
    pub fn product(&self, k: usize) -> IntMatrix {
        let d = self.input.len();
        self.substitutions[..k]
            .iter()
            .fold(IntMatrix::identity(d), |a, s| a.mul(&s.incidence()).expect("square"))
    }

    /// `F^k(x)`, with `F^0(x) = x`.
    pub fn remainder(&self, k: usize) -> &[T] {
        if k == 0 {
            &self.input
        } else {
            &self.remainders[k - 1]
        }
    }

    /// Largest deviation in `x = M_{i_0} ⋯ M_{i_{k-1}} F^k(x)` over all `k`,
    /// relative to `‖x‖_∞`; exactly zero when the identity holds in exact
    /// arithmetic.
    pub fn reconstruction_error(&self) -> f64 {
        let d = self.input.len();
        let scale = self.input.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
        let mut a = IntMatrix::identity(d);
        let mut worst = 0.0f64;
        for k in 0..=self.len() {
            if k > 0 {
                a = a.mul(&self.substitutions[k - 1].incidence()).expect("square");
            }
            let y = apply(&a, self.remainder(k));
            for (u, v) in y.iter().zip(&self.input) {
                if T::EXACT {
                    if u != v {
                        worst = worst.max(1.0);
                    }
                } else {
                    worst = worst.max((u.to_f64() - v.to_f64()).abs() / scale);
                }
            }
        }
        worst
    }

    /// The identity `x = A_k F^k(x)` for every `k`, exactly for rationals
    /// and within `1e-9` relative error for floats.
    pub fn reconstruction_holds(&self) -> bool {
        let e = self.reconstruction_error();
        if T::EXACT {
            e == 0.0
        } else {
            e <= 1e-9
        }
    }

    /// JSON form; numbers are written with their `Display` form (`p/q` for
    /// rationals) to keep exactness.
    pub fn to_json(&self) -> Value {
        let vec = |v: &[T]| Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect());
        json!({
            "map": self.map,
            "input": vec(&self.input),
            "steps": self.len(),
            "symbols": self.symbols,
            "substitutions": self.substitutions.iter().map(|s| s.label()).collect::<Vec<_>>(),
            "matrices": self.matrices().iter().map(|m| m.to_string_rows()).collect::<Vec<_>>(),
            "remainders": self.remainders.iter().map(|r| vec(r)).collect::<Vec<_>>(),
            "halt": self.halt,
        })
    }
}

/// Maximal runs of equal consecutive symbols.
pub fn run_lengths<T>(exp: &CfExpansion<T>) -> Vec<(String, usize)> {
    let mut out: Vec<(String, usize)> = Vec::new();
    for s in &exp.symbols {
        match out.last_mut() {
            Some((last, k)) if last == s => *k += 1,
            _ => out.push((s.clone(), 1)),
        }
    }
    out
}

/// Groups each maximal run `i^k` into one step with substitution `τ_i^k`
/// and remainder `F^k`, the multiplicative acceleration of an additive map.
pub fn accelerate<T: CfScalar>(exp: &CfExpansion<T>) -> Result<CfExpansion<T>> {
    let mut out = CfExpansion {
        map: format!("{} (accelerated)", exp.map),
        input: exp.input.clone(),
        symbols: Vec::new(),
        substitutions: Vec::new(),
        remainders: Vec::new(),
        halt: exp.halt.clone(),
    };
    let mut pos = 0;
    for (symbol, k) in run_lengths(exp) {
        let s = &exp.substitutions[pos];
        let p = s.power(k as u32)?;
        let name = if k == 1 { s.label() } else { format!("{}^{k}", s.label()) };
        out.symbols.push(if k == 1 { symbol } else { format!("{symbol}^{k}") });
        out.substitutions.push(p.with_name(name));
        pos += k;
        out.remainders.push(exp.remainders[pos - 1].clone());
    }
    Ok(out)
}

/// How seeds are chosen for the directive sequence of an expansion.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum SeedPolicy {
    /// Backward seeds from the given top letter (or the first letter of the
    /// top alphabet): always compatible, and the limit is the finite word
    /// `σ_0 ⋯ σ_{L-1}(a_L)`.
    #[default]
    Backward,
    BackwardFrom(String),
    /// No seeds; the sequence is used for language-level operations only.
    LanguageOnly,
}

/// The explicit finite directive sequence `σ_0, …, σ_{L-1}` of an
/// expansion. Expansions are never extended periodically.
pub fn directive_from_expansion<T>(exp: &CfExpansion<T>, policy: SeedPolicy) -> Result<DirectiveSequence> {
    if exp.symbols.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "expansion of length 0 ({})",
            exp.halt.as_deref().unwrap_or("no steps requested")
        )));
    }
    let list = exp.substitutions.clone();
    let top = list.last().unwrap().domain().clone();
    let seeds = match policy {
        SeedPolicy::Backward => Seeds::Backward {
            last: top.name(0).to_string(),
        },
        SeedPolicy::BackwardFrom(l) => Seeds::Backward { last: l },
        SeedPolicy::LanguageOnly => Seeds::None,
    };
    DirectiveSequence::new(
        DirectiveKind::ExplicitFinite {
            list,
            tail: TailPolicy::Finite,
        },
        seeds,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn sturmian_steps() {
        let m = SturmianMap::new();
        let e = cf_expand(&m, &q(&[2, 1]), 10).unwrap();
        assert_eq!(e.symbols, vec!["a"]);
        assert_eq!(e.remainders[0], q(&[1, 1]));
        assert!(e.halt.is_some());
        let e = cf_expand(&m, &q(&[1, 1]), 10).unwrap();
        assert!(e.is_empty() && e.halt.is_some());
        let e = cf_expand(&m, &q(&[5, 3]), 10).unwrap();
        assert_eq!(e.symbols, vec!["a", "b", "a"]);
        assert!(e.reconstruction_holds());
    }

    #[test]
    fn arnoux_rauzy_steps() {
        let m = ArnouxRauzyMap::new(3).unwrap();
        let e = cf_expand(&m, &q(&[5, 2, 1]), 10).unwrap();
        assert_eq!(e.symbols, vec!["1"]);
        assert_eq!(e.remainders[0], q(&[2, 2, 1]));
        let e = cf_expand(&m, &q(&[1, 1, 1]), 10).unwrap();
        assert!(e.is_empty());
        let e = cf_expand(&m, &q(&[1, 0, 0]), 10).unwrap();
        assert!(e.is_empty());
        assert_eq!(e.halt.as_deref(), Some("zero coordinate"));
    }

    #[test]
    fn jacobi_perron_steps() {
        let e = cf_expand(&JacobiPerronMap, &q(&[1, 3, 7]), 10).unwrap();
        assert_eq!(e.symbols, vec!["(3,7)"]);
        assert_eq!(e.remainders[0], q(&[0, 0, 1]));
        assert_eq!(e.halt.as_deref(), Some("a = 0"));
        assert_eq!(
            e.substitutions[0].incidence(),
            IntMatrix::from_rows(&[[0, 0, 1], [1, 0, 3], [0, 1, 7]])
        );
        assert!(e.reconstruction_holds());
        assert!(matches!(
            cf_expand(&JacobiPerronMap, &q(&[7, 3, 5]), 1),
            Err(Error::OutsideCone { .. })
        ));
    }

    #[test]
    fn float_mode() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let e = cf_expand(&SturmianMap::new(), &[1.0, 1.0 / phi], 20).unwrap();
        assert_eq!(e.len(), 20);
        let expected: Vec<&str> = (0..20).map(|k| if k % 2 == 0 { "a" } else { "b" }).collect();
        assert_eq!(e.symbols, expected);
        assert!(e.reconstruction_holds());
    }

    #[test]
    fn partition_map_matches_sturmian() {
        let p = PartitionMap::new(
            "farey",
            vec![
                ("a".into(), crate::substitution::builtin("tau-a").unwrap()),
                ("b".into(), crate::substitution::builtin("tau-b").unwrap()),
            ],
        )
        .unwrap();
        let x = q(&[13, 8]);
        let e1 = cf_expand(&p, &x, 50).unwrap();
        let e2 = cf_expand(&SturmianMap::new(), &x, 50).unwrap();
        assert_eq!(e1.symbols, e2.symbols);
        assert_eq!(e1.remainders, e2.remainders);
    }

    #[test]
    fn acceleration_groups_runs() {
        let e = cf_expand(&SturmianMap::new(), &q(&[17, 5]), 50).unwrap();
        // 17/5 = [3; 2, 2]
        let rl: Vec<usize> = run_lengths(&e).into_iter().map(|(_, k)| k).collect();
        assert_eq!(rl, vec![3, 2, 1]);
        let a = accelerate(&e).unwrap();
        assert_eq!(a.symbols, vec!["a^3", "b^2", "a"]);
        assert!(a.reconstruction_holds());
        assert_eq!(a.product(3), e.product(6));
    }

    #[test]
    fn directive_policies() {
        let e = cf_expand(&SturmianMap::new(), &q(&[1, 0]), 5).unwrap();
        assert!(directive_from_expansion(&e, SeedPolicy::default()).is_err());
        let e = cf_expand(&SturmianMap::new(), &q(&[34, 21]), 50).unwrap();
        let ds = directive_from_expansion(&e, SeedPolicy::LanguageOnly).unwrap();
        assert!(!ds.has_seeds());
        assert_eq!(ds.len(), Some(e.len()));
        let ds = directive_from_expansion(&e, SeedPolicy::default()).unwrap();
        let u = crate::sadic::limit_word_stream(&ds, Default::default()).unwrap();
        let w = u.available_prefix(1000).unwrap();
        // A finite approximant: length is a column sum of the product.
        let a = e.product(e.len());
        let sums = a.column_sums();
        assert!(sums.iter().any(|s| *s == (w.len() as u64).into()));
    }
}
