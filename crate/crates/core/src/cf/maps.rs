//! Built-in continued-fraction maps and the generic partition map.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::substitution::library::{arnoux_rauzy, jacobi_perron};
use crate::substitution::{builtin, Substitution};

use super::scalar::CfScalar;
use super::{Branch, CfMap, Step};

/// Largest Jacobi-Perron digit materialized as a substitution image.
pub const JP_DIGIT_CAP: u64 = 1 << 20;

fn check_input<T: CfScalar>(map: &str, x: &[T], d: usize) -> Result<()> {
    if x.len() != d {
        return Err(Error::DimensionMismatch {
            index: 0,
            detail: format!("{map} works on {d}-vectors, got {}", x.len()),
        });
    }
    if let Some(i) = x.iter().position(|v| v.is_negative()) {
        return Err(Error::OutsideCone {
            map: map.into(),
            detail: format!("coordinate {} is negative", i + 1),
        });
    }
    if x.iter().all(|v| v.is_zero()) {
        return Err(Error::OutsideCone {
            map: map.into(),
            detail: "the zero vector has no direction".into(),
        });
    }
    Ok(())
}

/// Additive Sturmian map on `(x_a, x_b)`: `τ_a` when `x_a > x_b`, `τ_b`
/// when `x_b > x_a`.
#[derive(Debug, Clone)]
pub struct SturmianMap {
    tau: [Substitution; 2],
}

impl SturmianMap {
    pub fn new() -> Self {
        SturmianMap {
            tau: [builtin("tau-a").unwrap(), builtin("tau-b").unwrap()],
        }
    }
}

impl Default for SturmianMap {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: CfScalar> CfMap<T> for SturmianMap {
    fn name(&self) -> String {
        "sturmian".into()
    }

    fn dimension(&self) -> usize {
        2
    }

    fn step(&self, x: &[T]) -> Result<Step<T>> {
        check_input("sturmian", x, 2)?;
        if x.iter().any(CfScalar::is_zero) {
            return Ok(Step::Halt("zero coordinate".into()));
        }
        let (i, rem) = if x[0] > x[1] {
            (0, vec![x[0].sub(&x[1]), x[1].clone()])
        } else if x[1] > x[0] {
            (1, vec![x[0].clone(), x[1].sub(&x[0])])
        } else {
            return Ok(Step::Halt("equal coordinates (rational direction)".into()));
        };
        Ok(Step::Branch(Branch {
            symbol: ["a", "b"][i].into(),
            substitution: self.tau[i].clone(),
            remainder: rem,
        }))
    }
}

/// Additive Arnoux-Rauzy map: letter `i` when `x_i > Σ_{j≠i} x_j`; outside
/// the Rauzy gasket no coordinate dominates and the map halts.
#[derive(Debug, Clone)]
pub struct ArnouxRauzyMap {
    mu: Vec<Substitution>,
}

impl ArnouxRauzyMap {
    pub fn new(d: usize) -> Result<Self> {
        let mu = (1..=d).map(|i| arnoux_rauzy(d, i)).collect::<Result<_>>()?;
        Ok(ArnouxRauzyMap { mu })
    }
}

impl<T: CfScalar> CfMap<T> for ArnouxRauzyMap {
    fn name(&self) -> String {
        format!("arnoux-rauzy-{}", self.mu.len())
    }

    fn dimension(&self) -> usize {
        self.mu.len()
    }

    fn step(&self, x: &[T]) -> Result<Step<T>> {
        check_input("arnoux-rauzy", x, self.mu.len())?;
        if x.iter().any(CfScalar::is_zero) {
            return Ok(Step::Halt("zero coordinate".into()));
        }
        let total = x.iter().fold(T::zero(), |s, v| s.add(v));
        for (i, xi) in x.iter().enumerate() {
            let others = total.sub(xi);
            if *xi > others {
                let mut rem = x.to_vec();
                rem[i] = xi.sub(&others);
                return Ok(Step::Branch(Branch {
                    symbol: (i + 1).to_string(),
                    substitution: self.mu[i].clone(),
                    remainder: rem,
                }));
            }
        }
        Ok(Step::Halt("no strictly dominant coordinate".into()))
    }
}

/// Jacobi-Perron in linear form on `{0 ≤ a, b < c}`:
/// `(a, b, c) ↦ (b - B a, c - C a, a)` with `B = ⌊b/a⌋`, `C = ⌊c/a⌋`, and
/// `σ_{B,C}: 1 ↦ 2, 2 ↦ 3, 3 ↦ 1 2^B 3^C`.
#[derive(Debug, Clone, Copy, Default)]
pub struct JacobiPerronMap;

impl<T: CfScalar> CfMap<T> for JacobiPerronMap {
    fn name(&self) -> String {
        "jacobi-perron".into()
    }

    fn dimension(&self) -> usize {
        3
    }

    fn step(&self, x: &[T]) -> Result<Step<T>> {
        check_input("jacobi-perron", x, 3)?;
        let (a, b, c) = (&x[0], &x[1], &x[2]);
        let outside = |detail: &str| Error::OutsideCone {
            map: "jacobi-perron".into(),
            detail: detail.into(),
        };
        if a >= c {
            return Err(outside("requires a < c"));
        }
        if b >= c {
            return Err(outside("requires b < c"));
        }
        if a.is_zero() {
            return Ok(Step::Halt("a = 0".into()));
        }
        let digit = |v: &T| -> Result<u64> {
            let q: BigInt = v.floor_div(a);
            q.to_u64().filter(|&q| q <= JP_DIGIT_CAP).ok_or_else(|| {
                Error::TooLarge(format!("Jacobi-Perron digit {q} exceeds {JP_DIGIT_CAP}"))
            })
        };
        let bd = digit(b)?;
        let cd = digit(c)?;
        let rem = vec![
            b.sub(&T::from_int(&bd.into()).mul(a)),
            c.sub(&T::from_int(&cd.into()).mul(a)),
            a.clone(),
        ];
        Ok(Step::Branch(Branch {
            symbol: format!("({bd},{cd})"),
            substitution: jacobi_perron(bd, cd)?,
            remainder: rem,
        }))
    }
}

/// A map given by finitely many branches `(symbol, τ_i)`: the branch is the
/// unique `i` with `M_i⁻¹ x ≥ 0`. Inputs on a boundary (several branches)
/// or outside every branch halt.
#[derive(Debug, Clone)]
pub struct PartitionMap {
    name: String,
    branches: Vec<(String, Substitution, Vec<Vec<BigRational>>)>,
}

impl PartitionMap {
    pub fn new(name: impl Into<String>, branches: Vec<(String, Substitution)>) -> Result<Self> {
        let name = name.into();
        if branches.is_empty() {
            return Err(Error::InvalidParameter("partition map without branches".into()));
        }
        let alphabet = branches[0].1.domain().clone();
        let mut out = Vec::with_capacity(branches.len());
        for (symbol, s) in branches {
            if !s.is_endomorphism() || s.domain() != &alphabet {
                return Err(Error::AlphabetMismatch {
                    expected: alphabet.to_string(),
                    found: format!("{} -> {}", s.domain(), s.codomain()),
                });
            }
            let inv = s
                .incidence()
                .inverse_rational()?
                .ok_or_else(|| Error::NotInvertible(s.label()))?;
            out.push((symbol, s, inv));
        }
        Ok(PartitionMap { name, branches: out })
    }
}

impl<T: CfScalar> CfMap<T> for PartitionMap {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn dimension(&self) -> usize {
        self.branches[0].2.len()
    }

    fn step(&self, x: &[T]) -> Result<Step<T>> {
        let d = CfMap::<T>::dimension(self);
        check_input(&self.name, x, d)?;
        let mut hits = Vec::new();
        for (k, (_, _, inv)) in self.branches.iter().enumerate() {
            let y: Vec<T> = inv
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(x)
                        .fold(T::zero(), |s, (m, v)| s.add(&T::from_rational(m).mul(v)))
                })
                .collect();
            if y.iter().all(|v| !v.is_negative()) {
                hits.push((k, y));
            }
        }
        match hits.len() {
            0 => Ok(Step::Halt("no branch contains the vector".into())),
            1 => {
                let (k, y) = hits.pop().unwrap();
                let (symbol, s, _) = &self.branches[k];
                Ok(Step::Branch(Branch {
                    symbol: symbol.clone(),
                    substitution: s.clone(),
                    remainder: y,
                }))
            }
            _ => Ok(Step::Halt("vector lies on a boundary between branches".into())),
        }
    }
}
