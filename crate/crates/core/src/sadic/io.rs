//! JSON form of directive sequences:
//! `{"kind": "periodic"|"eventually-periodic"|"explicit", "substitutions": [..],
//! "pre": [..], "cycle": [..], "seeds": [..]}`.
//!
//! `substitutions` holds the list of a periodic or explicit sequence, `pre`
//! and `cycle` those of an eventually periodic one. `seeds` is either a list
//! of letter names repeated cyclically, or one of the strings `"auto"` and
//! `"none"`; `seed_pre` optionally lists the first seeds before the cycle.
//! Explicit sequences accept `"tail": "finite"|"repeat-last"`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::substitution::{Substitution, SubstitutionSpec};

use super::directive::{DirectiveKind, DirectiveSequence, Seeds, TailPolicy};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SeedSpec {
    Letters(Vec<String>),
    Keyword(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectiveFile {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub substitutions: Vec<SubstitutionSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pre: Vec<SubstitutionSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cycle: Vec<SubstitutionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seeds: Option<SeedSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub seed_pre: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<TailPolicy>,
}

fn resolve_all(list: &[SubstitutionSpec]) -> Result<Vec<Substitution>> {
    list.iter().map(SubstitutionSpec::resolve).collect()
}

fn specs(list: &[Substitution]) -> Vec<SubstitutionSpec> {
    list.iter().map(SubstitutionSpec::from_substitution).collect()
}

impl DirectiveFile {
    pub fn to_directive(&self) -> Result<DirectiveSequence> {
        let kind = match self.kind.as_str() {
            "periodic" => DirectiveKind::Periodic(resolve_all(&self.substitutions)?),
            "eventually-periodic" => DirectiveKind::EventuallyPeriodic {
                pre: resolve_all(&self.pre)?,
                cycle: resolve_all(&self.cycle)?,
            },
            "explicit" => DirectiveKind::ExplicitFinite {
                list: resolve_all(&self.substitutions)?,
                tail: self.tail.unwrap_or(TailPolicy::Finite),
            },
            other => {
                return Err(Error::Format(format!(
                    "unknown directive kind {other:?} (expected periodic, eventually-periodic or explicit)"
                )))
            }
        };
        let seeds = match &self.seeds {
            None => Seeds::None,
            Some(SeedSpec::Keyword(k)) if k == "none" => Seeds::None,
            Some(SeedSpec::Keyword(k)) if k == "auto" => Seeds::Auto,
            Some(SeedSpec::Keyword(k)) => {
                return Err(Error::Format(format!(
                    "seeds must be a list of letters, \"auto\" or \"none\", got {k:?}"
                )))
            }
            Some(SeedSpec::Letters(cycle)) => Seeds::Pattern {
                pre: self.seed_pre.clone(),
                cycle: cycle.clone(),
            },
        };
        DirectiveSequence::new(kind, seeds)
    }

    /// `None` for graph paths and generated sequences, which have no file form.
    pub fn from_directive(ds: &DirectiveSequence) -> Option<Self> {
        let mut f = DirectiveFile {
            kind: String::new(),
            substitutions: Vec::new(),
            pre: Vec::new(),
            cycle: Vec::new(),
            seeds: None,
            seed_pre: Vec::new(),
            tail: None,
        };
        match ds.kind() {
            DirectiveKind::Periodic(l) => {
                f.kind = "periodic".into();
                f.substitutions = specs(l);
            }
            DirectiveKind::EventuallyPeriodic { pre, cycle } => {
                f.kind = "eventually-periodic".into();
                f.pre = specs(pre);
                f.cycle = specs(cycle);
            }
            DirectiveKind::ExplicitFinite { list, tail } => {
                f.kind = "explicit".into();
                f.substitutions = specs(list);
                f.tail = Some(*tail);
            }
            _ => return None,
        }
        match ds.seeds() {
            Seeds::None => {}
            Seeds::Auto => f.seeds = Some(SeedSpec::Keyword("auto".into())),
            Seeds::Pattern { pre, cycle } => {
                f.seeds = Some(SeedSpec::Letters(cycle.clone()));
                f.seed_pre = pre.clone();
            }
            Seeds::Backward { .. } => return None,
        }
        Some(f)
    }
}

pub fn directive_from_json(text: &str) -> Result<DirectiveSequence> {
    let f: DirectiveFile = serde_json::from_str(text)?;
    f.to_directive()
}

pub fn directive_to_json(ds: &DirectiveSequence) -> Result<String> {
    let f = DirectiveFile::from_directive(ds).ok_or_else(|| {
        Error::Format(format!("{} has no file representation", ds.label()))
    })?;
    Ok(serde_json::to_string_pretty(&f)? + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_round_trip() {
        let text = r#"{"kind": "periodic", "substitutions": ["fibonacci"], "seeds": ["a"]}"#;
        let ds = directive_from_json(text).unwrap();
        assert_eq!(ds.seed(7).unwrap(), 0);
        let back = directive_to_json(&ds).unwrap();
        let again = directive_from_json(&back).unwrap();
        assert_eq!(directive_to_json(&again).unwrap(), back);
    }

    #[test]
    fn inline_and_eventually_periodic() {
        let text = r#"{"kind": "eventually-periodic",
            "pre": [{"domain": ["a","b"], "rules": {"a": "aab", "b": "b"}}],
            "cycle": ["tau-a", "tau-b"], "seeds": "auto"}"#;
        let ds = directive_from_json(text).unwrap();
        assert_eq!(ds.substitution(0).unwrap().image(0), &[0, 0, 1]);
        assert_eq!(ds.substitution(3).unwrap().label(), "tau-a");
    }

    #[test]
    fn bad_kind() {
        assert!(matches!(
            directive_from_json(r#"{"kind": "spiral"}"#),
            Err(Error::Format(_))
        ));
    }
}
