//! JSON form of substitutions:
//! `{"name": .., "domain": [..], "codomain": [..], "rules": {letter: image}}`
//! where an image is a string of one-character letters or an array of
//! letter names.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::word::FiniteWord;

use super::{builtin, Substitution};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubstitutionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub domain: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codomain: Option<Vec<String>>,
    pub rules: Map<String, Value>,
}

/// A substitution given either by built-in name or inline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubstitutionSpec {
    Name(String),
    Inline(SubstitutionFile),
}

impl SubstitutionSpec {
    pub fn resolve(&self) -> Result<Substitution> {
        match self {
            SubstitutionSpec::Name(n) => builtin(n),
            SubstitutionSpec::Inline(f) => f.to_substitution(),
        }
    }

    /// Named built-ins stay names; anything else is written inline.
    pub fn from_substitution(s: &Substitution) -> Self {
        if let Some(n) = s.name() {
            if builtin(n).map(|b| &b == s).unwrap_or(false) {
                return SubstitutionSpec::Name(n.to_string());
            }
        }
        SubstitutionSpec::Inline(SubstitutionFile::from_substitution(s))
    }
}

impl SubstitutionFile {
    pub fn from_substitution(s: &Substitution) -> Self {
        let single = s.codomain().is_single_char();
        let mut rules = Map::new();
        for (j, img) in s.images().iter().enumerate() {
            let value = if single {
                Value::String(s.codomain().render(img))
            } else {
                Value::Array(
                    img.iter()
                        .map(|&l| Value::String(s.codomain().name(l).to_string()))
                        .collect(),
                )
            };
            rules.insert(s.domain().name(j as u32).to_string(), value);
        }
        SubstitutionFile {
            name: s.name().map(String::from),
            domain: s.domain().letters().to_vec(),
            codomain: Some(s.codomain().letters().to_vec()),
            rules,
        }
    }

    pub fn to_substitution(&self) -> Result<Substitution> {
        let domain = Alphabet::new(self.domain.iter().cloned())?;
        let codomain = match &self.codomain {
            Some(c) => Alphabet::new(c.iter().cloned())?,
            None => domain.clone(),
        };
        let name = self.name.clone().unwrap_or_default();
        for key in self.rules.keys() {
            if !domain.contains(key) {
                return Err(Error::UnknownLetter {
                    letter: key.clone(),
                    alphabet: domain.to_string(),
                });
            }
        }
        let mut images = Vec::with_capacity(domain.len());
        for letter in domain.letters() {
            let value = self.rules.get(letter).ok_or_else(|| Error::MissingRule {
                name: name.clone(),
                letter: letter.clone(),
            })?;
            let img = match value {
                Value::String(s) => FiniteWord::parse(s, &codomain)?.into_letters(),
                Value::Array(items) => items
                    .iter()
                    .map(|v| match v {
                        Value::String(s) => codomain.index(s),
                        other => Err(Error::Format(format!(
                            "image letters must be strings, got {other}"
                        ))),
                    })
                    .collect::<Result<Vec<_>>>()?,
                other => {
                    return Err(Error::Format(format!(
                        "rule for {letter:?} must be a string or array, got {other}"
                    )))
                }
            };
            images.push(img);
        }
        Substitution::new(self.name.clone(), domain, codomain, images)
    }
}

pub fn substitution_to_json(s: &Substitution) -> String {
    let mut text = serde_json::to_string_pretty(&SubstitutionFile::from_substitution(s))
        .expect("substitution serializes");
    text.push('\n');
    text
}

pub fn substitution_from_json(text: &str) -> Result<Substitution> {
    let f: SubstitutionFile = serde_json::from_str(text)?;
    f.to_substitution()
}
