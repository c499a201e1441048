//! Built-in substitutions, addressed by name.

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};

use super::Substitution;

const FIXED: &[(&str, &str, &[&str])] = &[
    ("fibonacci", "ab", &["ab", "a"]),
    ("thue-morse", "ab", &["ab", "ba"]),
    // Sturmian pairs.
    ("tau-a", "ab", &["a", "ab"]),
    ("tau-b", "ab", &["ba", "b"]),
    ("mu-a", "ab", &["a", "ba"]),
    ("mu-b", "ab", &["ab", "b"]),
    // Quadratic-complexity example and its companions.
    ("quadratic", "ab", &["aab", "b"]),
    ("swap", "ab", &["b", "a"]),
    ("quadratic-swap", "ab", &["b", "aab"]),
    ("swap-quadratic", "ab", &["bba", "a"]),
    // Five substitutions for complexity with first difference at most 2.
    ("dehn-r", "abc", &["ab", "b", "c"]),
    ("dehn-l", "abc", &["ba", "b", "c"]),
    ("perm-ab", "abc", &["b", "a", "c"]),
    ("perm-bc", "abc", &["a", "c", "b"]),
    ("proj-ab", "abc", &["b", "b", "b"]),
    // Strongly primitive, linear complexity, not linearly recurrent.
    ("durand-sigma", "abc", &["acb", "bab", "cbc"]),
    ("durand-tau", "abc", &["abc", "acb", "aac"]),
];

/// Names accepted by [`builtin`]; parametrized families are listed as
/// patterns.
pub fn builtin_names() -> Vec<String> {
    let mut v: Vec<String> = FIXED.iter().map(|(n, _, _)| n.to_string()).collect();
    v.push("identity-<letters>".into());
    v.push("ar<d>-<i>".into());
    v.push("jp-<B>-<C>".into());
    v
}

pub fn builtin(name: &str) -> Result<Substitution> {
    if let Some((n, letters, images)) = FIXED.iter().find(|(n, _, _)| *n == name) {
        let alphabet = Alphabet::from_chars(letters)?;
        return Substitution::from_strs(n, &alphabet, images);
    }
    if let Some(letters) = name.strip_prefix("identity-") {
        let alphabet = Alphabet::from_chars(letters)?;
        return Ok(Substitution::identity(&alphabet).with_name(name));
    }
    if let Some(s) = parse_ar(name) {
        return s;
    }
    if let Some(s) = parse_jp(name) {
        return s;
    }
    Err(unknown(name))
}

fn unknown(name: &str) -> Error {
    Error::UnknownSubstitution {
        name: name.to_string(),
        available: builtin_names().join(", "),
    }
}

/// `ar<d>-<i>`: `i ↦ i`, `j ↦ j i` over `1..d`.
pub(crate) fn arnoux_rauzy(d: usize, i: usize) -> Result<Substitution> {
    if d < 2 || i == 0 || i > d {
        return Err(Error::InvalidParameter(format!(
            "Arnoux-Rauzy substitution needs d >= 2 and 1 <= i <= d (got d={d}, i={i})"
        )));
    }
    let alphabet = Alphabet::numeric(d)?;
    let k = (i - 1) as Letter;
    let images = (0..d as Letter)
        .map(|j| if j == k { vec![k] } else { vec![j, k] })
        .collect();
    Substitution::new(
        Some(format!("ar{d}-{i}")),
        alphabet.clone(),
        alphabet,
        images,
    )
}

/// `jp-<B>-<C>`: `1 ↦ 2`, `2 ↦ 3`, `3 ↦ 1 2^B 3^C`.
pub(crate) fn jacobi_perron(b: u64, c: u64) -> Result<Substitution> {
    let alphabet = Alphabet::numeric(3)?;
    let mut last = vec![0];
    last.extend(std::iter::repeat_n(1, b as usize));
    last.extend(std::iter::repeat_n(2, c as usize));
    Substitution::new(
        Some(format!("jp-{b}-{c}")),
        alphabet.clone(),
        alphabet,
        vec![vec![1], vec![2], last],
    )
}

fn parse_ar(name: &str) -> Option<Result<Substitution>> {
    let rest = name.strip_prefix("ar")?;
    let (d, i) = rest.split_once('-')?;
    let d: usize = d.parse().ok()?;
    let i: usize = i.parse().ok()?;
    Some(arnoux_rauzy(d, i))
}

fn parse_jp(name: &str) -> Option<Result<Substitution>> {
    let rest = name.strip_prefix("jp-")?;
    let (b, c) = rest.split_once('-')?;
    Some(jacobi_perron(b.parse().ok()?, c.parse().ok()?))
}
