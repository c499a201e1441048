//! Directive sequences `σ_n: A_{n+1}* → A_n*` with seed letters `a_n`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::graph::SAdicGraph;
use crate::substitution::Substitution;

/// What happens after the last substitution of an explicit finite list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TailPolicy {
    /// The sequence ends; the limit word is the finite word
    /// `σ_0 ⋯ σ_{L-1}(a_L)`, and language operations stop at depth `L`.
    Finite,
    /// The last substitution repeats forever.
    RepeatLast,
}

type Provider = dyn Fn(usize) -> Result<Substitution> + Send + Sync;

#[derive(Clone)]
pub enum DirectiveKind {
    Periodic(Vec<Substitution>),
    EventuallyPeriodic {
        pre: Vec<Substitution>,
        cycle: Vec<Substitution>,
    },
    ExplicitFinite {
        list: Vec<Substitution>,
        tail: TailPolicy,
    },
    /// Substitutions read along a finite edge path of an S-adic graph.
    GraphPath {
        graph: Arc<SAdicGraph>,
        path: Vec<usize>,
    },
    /// `σ_n` computed on demand by a pure function of `n`.
    Generated { label: String, provider: Arc<Provider> },
}

/// How seed letters `a_n` are chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Seeds {
    /// No seeds: only language-level operations are available.
    None,
    /// `a_n` is the first letter shared by all images of `σ_n`, which makes
    /// every seed compatible whatever `a_{n+1}` is.
    Auto,
    /// `a_n = pre[n]` for `n < pre.len()`, then `cycle` repeated; letters are
    /// resolved by name in `A_n`.
    Pattern { pre: Vec<String>, cycle: Vec<String> },
    /// For finite sequences of length `L`: `a_L = last`, and each earlier
    /// `a_n` is the first letter of `σ_n(a_{n+1})`.
    Backward { last: String },
}

impl Seeds {
    pub fn constant(letter: &str) -> Self {
        Seeds::Pattern {
            pre: Vec::new(),
            cycle: vec![letter.to_string()],
        }
    }
}

#[derive(Clone)]
pub struct DirectiveSequence {
    kind: DirectiveKind,
    seeds: Seeds,
    backward: Option<Arc<[Letter]>>,
}

impl DirectiveSequence {
    pub fn new(kind: DirectiveKind, seeds: Seeds) -> Result<Self> {
        match &kind {
            DirectiveKind::Periodic(list) => {
                nonempty(list, "periodic list")?;
                check_chain(list, true)?;
            }
            DirectiveKind::EventuallyPeriodic { pre, cycle } => {
                nonempty(cycle, "cycle")?;
                let mut all = pre.clone();
                all.extend(cycle.iter().cloned());
                check_chain(&all, false)?;
                check_chain(cycle, true)?;
            }
            DirectiveKind::ExplicitFinite { list, tail } => {
                nonempty(list, "explicit list")?;
                check_chain(list, false)?;
                if *tail == TailPolicy::RepeatLast {
                    check_chain(&list[list.len() - 1..], true)?;
                }
            }
            DirectiveKind::GraphPath { graph, path } => {
                graph.check_path(path)?;
                if path.is_empty() {
                    return Err(Error::InvalidParameter("empty graph path".into()));
                }
            }
            DirectiveKind::Generated { .. } => {}
        }
        let mut ds = DirectiveSequence {
            kind,
            seeds,
            backward: None,
        };
        if let Seeds::Backward { last } = &ds.seeds {
            let len = ds.len().ok_or_else(|| {
                Error::InvalidParameter("backward seeds need a finite sequence".into())
            })?;
            let mut seeds = vec![0 as Letter; len + 1];
            seeds[len] = ds.alphabet(len)?.index(last)?;
            for n in (0..len).rev() {
                seeds[n] = ds.substitution(n)?.image(seeds[n + 1])[0];
            }
            ds.backward = Some(seeds.into());
        }
        Ok(ds)
    }

    pub fn periodic(list: Vec<Substitution>, seeds: Seeds) -> Result<Self> {
        Self::new(DirectiveKind::Periodic(list), seeds)
    }

    pub fn finite(list: Vec<Substitution>, seeds: Seeds) -> Result<Self> {
        Self::new(
            DirectiveKind::ExplicitFinite {
                list,
                tail: TailPolicy::Finite,
            },
            seeds,
        )
    }

    pub fn generated<F>(label: impl Into<String>, seeds: Seeds, f: F) -> Result<Self>
    where
        F: Fn(usize) -> Result<Substitution> + Send + Sync + 'static,
    {
        Self::new(
            DirectiveKind::Generated {
                label: label.into(),
                provider: Arc::new(f),
            },
            seeds,
        )
    }

    pub fn kind(&self) -> &DirectiveKind {
        &self.kind
    }

    pub fn seeds(&self) -> &Seeds {
        &self.seeds
    }

    pub fn with_seeds(&self, seeds: Seeds) -> Result<Self> {
        Self::new(self.kind.clone(), seeds)
    }

    /// Number of substitutions, `None` when infinite.
    pub fn len(&self) -> Option<usize> {
        match &self.kind {
            DirectiveKind::ExplicitFinite {
                list,
                tail: TailPolicy::Finite,
            } => Some(list.len()),
            DirectiveKind::GraphPath { path, .. } => Some(path.len()),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `σ_n`.
    pub fn substitution(&self, n: usize) -> Result<Substitution> {
        match &self.kind {
            DirectiveKind::Periodic(list) => Ok(list[n % list.len()].clone()),
            DirectiveKind::EventuallyPeriodic { pre, cycle } => Ok(if n < pre.len() {
                pre[n].clone()
            } else {
                cycle[(n - pre.len()) % cycle.len()].clone()
            }),
            DirectiveKind::ExplicitFinite { list, tail } => match (list.get(n), tail) {
                (Some(s), _) => Ok(s.clone()),
                (None, TailPolicy::RepeatLast) => Ok(list[list.len() - 1].clone()),
                (None, TailPolicy::Finite) => Err(Error::DirectiveExhausted(list.len())),
            },
            DirectiveKind::GraphPath { graph, path } => match path.get(n) {
                Some(&e) => Ok(graph.edge_substitution(e).clone()),
                None => Err(Error::DirectiveExhausted(path.len())),
            },
            DirectiveKind::Generated { provider, .. } => provider(n),
        }
    }

    /// `σ_0, …, σ_{n-1}`, checked to compose.
    pub fn chain(&self, n: usize) -> Result<Vec<Substitution>> {
        let mut out: Vec<Substitution> = Vec::with_capacity(n);
        for k in 0..n {
            let s = self.substitution(k)?;
            if let Some(prev) = out.last() {
                if prev.domain() != s.codomain() {
                    return Err(Error::DimensionMismatch {
                        index: k,
                        detail: format!(
                            "codomain {} of step {k} differs from domain {} of step {}",
                            s.codomain(),
                            prev.domain(),
                            k - 1
                        ),
                    });
                }
            }
            out.push(s);
        }
        Ok(out)
    }

    /// `A_n`: the codomain of `σ_n`, or the domain of `σ_{n-1}`.
    pub fn alphabet(&self, n: usize) -> Result<Alphabet> {
        if n == 0 {
            return Ok(self.substitution(0)?.codomain().clone());
        }
        Ok(self.substitution(n - 1)?.domain().clone())
    }

    /// The seed letter `a_n` in `A_n`.
    pub fn seed(&self, n: usize) -> Result<Letter> {
        match &self.seeds {
            Seeds::None => Err(Error::NoSeeds),
            Seeds::Auto => {
                if self.len() == Some(n) {
                    return Ok(0);
                }
                let s = self.substitution(n)?;
                let first = s.images()[0][0];
                if s.images().iter().all(|img| img[0] == first) {
                    Ok(first)
                } else {
                    Err(Error::SeedIncompatible {
                        index: n,
                        detail: format!(
                            "images of {} do not share a first letter",
                            s.label()
                        ),
                    })
                }
            }
            Seeds::Pattern { pre, cycle } => {
                let name = if n < pre.len() {
                    &pre[n]
                } else if cycle.is_empty() {
                    return Err(Error::NoSeeds);
                } else {
                    &cycle[(n - pre.len()) % cycle.len()]
                };
                self.alphabet(n)?.index(name)
            }
            Seeds::Backward { .. } => {
                let b = self.backward.as_ref().expect("computed at construction");
                b.get(n).copied().ok_or(Error::DirectiveExhausted(b.len() - 1))
            }
        }
    }

    pub fn has_seeds(&self) -> bool {
        self.seeds != Seeds::None
    }

    /// Short description used in reports.
    pub fn label(&self) -> String {
        let names = |l: &[Substitution]| {
            l.iter().map(|s| s.label()).collect::<Vec<_>>().join(" ")
        };
        match &self.kind {
            DirectiveKind::Periodic(l) => format!("periodic({})", names(l)),
            DirectiveKind::EventuallyPeriodic { pre, cycle } => {
                format!("eventually-periodic({} | {})", names(pre), names(cycle))
            }
            DirectiveKind::ExplicitFinite { list, tail } => {
                format!("explicit[{} substitutions, tail {tail:?}]", list.len())
            }
            DirectiveKind::GraphPath { graph, path } => {
                format!("graph path of length {} in {}", path.len(), graph.name())
            }
            DirectiveKind::Generated { label, .. } => label.clone(),
        }
    }
}

impl fmt::Debug for DirectiveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DirectiveSequence")
            .field("kind", &self.label())
            .field("seeds", &self.seeds)
            .finish()
    }
}

fn nonempty(list: &[Substitution], what: &str) -> Result<()> {
    if list.is_empty() {
        return Err(Error::InvalidParameter(format!("{what} must be non-empty")));
    }
    Ok(())
}

/// Consecutive entries must compose: `domain(σ_k) = codomain(σ_{k+1})`,
/// cyclically when `cyclic`.
fn check_chain(list: &[Substitution], cyclic: bool) -> Result<()> {
    let n = list.len();
    let pairs = if cyclic { n } else { n.saturating_sub(1) };
    for k in 0..pairs {
        let (a, b) = (&list[k], &list[(k + 1) % n]);
        if a.domain() != b.codomain() {
            return Err(Error::DimensionMismatch {
                index: k + 1,
                detail: format!(
                    "domain {} of {} differs from codomain {} of {}",
                    a.domain(),
                    a.label(),
                    b.codomain(),
                    b.label()
                ),
            });
        }
    }
    Ok(())
}
