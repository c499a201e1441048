//! Substitutions (non-erasing free-monoid morphisms), their incidence
//! matrices, primitivity, Perron data, fixed points and the prefix-suffix
//! automaton.

mod io;
pub(crate) mod library;

pub use io::{substitution_from_json, substitution_to_json, SubstitutionSpec};
pub use library::{builtin, builtin_names};

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::matrix::{hilbert_diameter, normalize_l1, BoolMatrix, IntMatrix};
use crate::word::{FiniteWord, WordStream};

/// A non-erasing morphism `σ: domain* → codomain*`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Substitution {
    name: Option<String>,
    domain: Alphabet,
    codomain: Alphabet,
    images: Vec<Vec<Letter>>,
}

impl Substitution {
    pub fn new(
        name: Option<String>,
        domain: Alphabet,
        codomain: Alphabet,
        images: Vec<Vec<Letter>>,
    ) -> Result<Self> {
        if images.len() != domain.len() {
            let letter = domain
                .letters()
                .get(images.len())
                .cloned()
                .unwrap_or_default();
            return Err(Error::MissingRule {
                name: name.clone().unwrap_or_default(),
                letter,
            });
        }
        for (j, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::Erasing(domain.name(j as Letter).to_string()));
            }
            if let Some(&bad) = img.iter().find(|&&l| l as usize >= codomain.len()) {
                return Err(Error::UnknownLetter {
                    letter: format!("#{bad}"),
                    alphabet: codomain.to_string(),
                });
            }
        }
        Ok(Substitution {
            name,
            domain,
            codomain,
            images,
        })
    }

    /// Endomorphism of `alphabet` with images given as text, in alphabet
    /// order (`from_strs("fibonacci", &ab, &["ab", "a"])`).
    pub fn from_strs(name: &str, alphabet: &Alphabet, images: &[&str]) -> Result<Self> {
        Self::from_strs_between(name, alphabet, alphabet, images)
    }

    pub fn from_strs_between(
        name: &str,
        domain: &Alphabet,
        codomain: &Alphabet,
        images: &[&str],
    ) -> Result<Self> {
        let images = images
            .iter()
            .map(|s| FiniteWord::parse(s, codomain).map(FiniteWord::into_letters))
            .collect::<Result<Vec<_>>>()?;
        let name = (!name.is_empty()).then(|| name.to_string());
        Self::new(name, domain.clone(), codomain.clone(), images)
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        Substitution {
            name: Some("identity".into()),
            domain: alphabet.clone(),
            codomain: alphabet.clone(),
            images: (0..alphabet.len() as Letter).map(|l| vec![l]).collect(),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Name, or a rendering of the rules when unnamed.
    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| self.to_string())
    }

    pub fn domain(&self) -> &Alphabet {
        &self.domain
    }

    pub fn codomain(&self) -> &Alphabet {
        &self.codomain
    }

    pub fn image(&self, letter: Letter) -> &[Letter] {
        &self.images[letter as usize]
    }

    pub fn images(&self) -> &[Vec<Letter>] {
        &self.images
    }

    pub fn image_word(&self, letter: Letter) -> FiniteWord {
        FiniteWord::new_unchecked(self.codomain.clone(), self.images[letter as usize].clone())
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn apply(&self, w: &FiniteWord) -> Result<FiniteWord> {
        if w.alphabet() != &self.domain {
            return Err(Error::AlphabetMismatch {
                expected: self.domain.to_string(),
                found: w.alphabet().to_string(),
            });
        }
        Ok(FiniteWord::new_unchecked(
            self.codomain.clone(),
            self.apply_letters(w.letters()),
        ))
    }

    pub fn apply_letters(&self, w: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(w.len() * 2);
        for &l in w {
            out.extend_from_slice(&self.images[l as usize]);
        }
        out
    }

    /// `self ∘ t`, i.e. `a ↦ self(t(a))`.
    pub fn compose(&self, t: &Substitution) -> Result<Substitution> {
        if t.codomain != self.domain {
            return Err(Error::AlphabetMismatch {
                expected: self.domain.to_string(),
                found: t.codomain.to_string(),
            });
        }
        let name = match (&self.name, &t.name) {
            (Some(a), Some(b)) => Some(format!("{a}*{b}")),
            _ => None,
        };
        Ok(Substitution {
            name,
            domain: t.domain.clone(),
            codomain: self.codomain.clone(),
            images: t.images.iter().map(|img| self.apply_letters(img)).collect(),
        })
    }

    pub fn power(&self, k: u32) -> Result<Substitution> {
        if !self.is_endomorphism() {
            return Err(Error::AlphabetMismatch {
                expected: self.domain.to_string(),
                found: self.codomain.to_string(),
            });
        }
        let mut acc = Substitution::identity(&self.domain);
        for _ in 0..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Entry `(i, j)` is `|σ(j)|_i`.
    pub fn incidence(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.codomain.len(), self.domain.len());
        let mut counts = vec![0u64; self.codomain.len()];
        for (j, img) in self.images.iter().enumerate() {
            counts.iter_mut().for_each(|c| *c = 0);
            for &l in img {
                counts[l as usize] += 1;
            }
            for (i, &c) in counts.iter().enumerate() {
                if c > 0 {
                    m.set(i, j, BigUint::from(c));
                }
            }
        }
        m
    }

    pub fn is_positive(&self) -> bool {
        self.incidence().is_positive()
    }

    pub fn primitivity(&self, k_max: Option<usize>) -> Result<Primitivity> {
        primitivity(&self.incidence(), k_max)
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(matches!(self.primitivity(None)?, Primitivity::Primitive { .. }))
    }

    /// The fixed point starting with `a`, as the limit of `σ^k(a)`.
    pub fn fixed_point_stream(&self, a: Letter) -> Result<WordStream> {
        if !self.is_endomorphism() {
            return Err(Error::FixedPoint(
                "domain and codomain differ".to_string(),
            ));
        }
        if a as usize >= self.domain.len() {
            return Err(Error::FixedPoint(format!("letter #{a} not in alphabet")));
        }
        let img = &self.images[a as usize];
        let name = self.domain.name(a).to_string();
        if img[0] != a {
            return Err(Error::FixedPoint(format!(
                "image of {name} does not begin with {name}"
            )));
        }
        if img.len() < 2 {
            return Err(Error::FixedPoint(format!(
                "image of {name} has length 1, so the iterates do not grow"
            )));
        }
        let sigma = self.clone();
        let label = format!("fixed point of {} from {name}", self.label());
        Ok(WordStream::from_fn(self.domain.clone(), label, move |n| {
            let mut w = vec![a];
            while w.len() < n {
                w = sigma.apply_letters(&w);
            }
            Ok(w)
        }))
    }

    pub fn prefix_suffix_automaton(&self) -> PrefixSuffixAutomaton {
        let mut edges = Vec::new();
        for (b, img) in self.images.iter().enumerate() {
            for k in 0..img.len() {
                edges.push(PrefixSuffixEdge {
                    from: b as Letter,
                    to: img[k],
                    prefix: img[..k].to_vec(),
                    suffix: img[k + 1..].to_vec(),
                });
            }
        }
        PrefixSuffixAutomaton {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            edges,
        }
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rules: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(j, img)| {
                format!(
                    "{}->{}",
                    self.domain.name(j as Letter),
                    self.codomain.render(img)
                )
            })
            .collect();
        write!(f, "{}", rules.join(", "))
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Substitution({}: {self})", self.name.as_deref().unwrap_or("-"))
    }
}

/// Outcome of a bounded search for a positive power.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Primitivity {
    /// `M^k > 0`, `k` minimal.
    Primitive { k: usize },
    /// Exhausted the Wielandt bound, so no power is positive.
    NotPrimitive { bound: usize },
    /// Exhausted a user bound below the Wielandt bound.
    Unknown { k_max: usize },
}

/// `(d-1)^2 + 1`: a primitive `d×d` matrix has a positive power at most this.
pub fn wielandt_bound(d: usize) -> usize {
    if d == 0 {
        1
    } else {
        (d - 1) * (d - 1) + 1
    }
}

pub fn primitivity(m: &IntMatrix, k_max: Option<usize>) -> Result<Primitivity> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let bound = wielandt_bound(m.rows());
    let limit = k_max.unwrap_or(bound);
    let p = m.pattern();
    let mut acc = p.clone();
    for k in 1..=limit {
        if acc.is_positive() {
            return Ok(Primitivity::Primitive { k });
        }
        acc = acc.mul(&p).expect("square");
    }
    if limit >= bound {
        Ok(Primitivity::NotPrimitive { bound })
    } else {
        Ok(Primitivity::Unknown { k_max: limit })
    }
}

/// Dominant eigenvalue and normalized positive eigenvector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerronData {
    pub lambda: f64,
    pub eigenvector: Vec<f64>,
    /// `max_i |(Mv)_i - λ v_i|`.
    pub residual: f64,
    /// Hilbert diameter of the columns of the last computed power.
    pub diameter: f64,
}

/// Perron data of a primitive matrix: columns of `M^k` for growing `k`
/// converge projectively to the eigenvector; powers are taken by repeated
/// squaring of a float copy of a positive power, rescaled at every step.
pub fn perron(m: &IntMatrix, tol: f64) -> Result<PerronData> {
    let k = match primitivity(m, None)? {
        Primitivity::Primitive { k } => k,
        _ => return Err(Error::NotPrimitive(wielandt_bound(m.rows()))),
    };
    let d = m.rows();
    let start = m.pow(k as u32)?;
    let shift = start.max_bits().saturating_sub(60);
    let mut p = start.to_f64_scaled(shift);
    let columns = |p: &Vec<Vec<f64>>| -> Vec<Vec<f64>> {
        (0..d).map(|j| (0..d).map(|i| p[i][j]).collect()).collect()
    };
    let mut diam = hilbert_diameter(&columns(&p));
    for _ in 0..200 {
        if diam < tol {
            break;
        }
        let mut q = vec![vec![0.0; d]; d];
        for i in 0..d {
            for l in 0..d {
                let a = p[i][l];
                for j in 0..d {
                    q[i][j] += a * p[l][j];
                }
            }
        }
        let mx = q.iter().flatten().fold(0.0f64, |a, &b| a.max(b));
        q.iter_mut().flatten().for_each(|x| *x /= mx);
        let next = hilbert_diameter(&columns(&q));
        p = q;
        if next >= diam && diam < 1e-6 {
            diam = next.min(diam);
            break;
        }
        diam = next;
    }
    let cols = columns(&p);
    let mut bary = vec![0.0; d];
    for c in &cols {
        for (b, x) in bary.iter_mut().zip(normalize_l1(c)) {
            *b += x;
        }
    }
    let v = normalize_l1(&bary);
    let mf = m.to_f64();
    let mv: Vec<f64> = mf
        .iter()
        .map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum())
        .collect();
    let lambda: f64 = mv.iter().sum();
    let residual = mv
        .iter()
        .zip(&v)
        .map(|(a, b)| (a - lambda * b).abs())
        .fold(0.0, f64::max);
    Ok(PerronData {
        lambda,
        eigenvector: v,
        residual,
        diameter: diam,
    })
}

/// `β⁻_n` and `β⁺_n`: shortest and longest image lengths under
/// `σ_0 ⋯ σ_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthBounds {
    pub n: usize,
    #[serde(serialize_with = "crate::matrix::big_as_string")]
    pub beta_minus: BigUint,
    #[serde(serialize_with = "crate::matrix::big_as_string")]
    pub beta_plus: BigUint,
}

impl GrowthBounds {
    pub fn from_matrix(n: usize, product: &IntMatrix) -> Self {
        let sums = product.column_sums();
        GrowthBounds {
            n,
            beta_minus: sums.iter().min().cloned().unwrap_or_default(),
            beta_plus: sums.iter().max().cloned().unwrap_or_default(),
        }
    }

    pub fn beta_minus_u64(&self) -> u64 {
        self.beta_minus.to_u64().unwrap_or(u64::MAX)
    }
}

/// Growth bounds of the first `n` substitutions of `chain`.
pub fn growth_bounds(chain: &[Substitution], n: usize) -> Result<GrowthBounds> {
    if n > chain.len() {
        return Err(Error::DirectiveExhausted(chain.len()));
    }
    if n == 0 {
        let d = chain.first().map_or(1, |s| s.codomain().len());
        return Ok(GrowthBounds::from_matrix(0, &IntMatrix::identity(d)));
    }
    let mut acc = chain[0].incidence();
    for (i, s) in chain[1..n].iter().enumerate() {
        if chain[i].domain() != s.codomain() {
            return Err(Error::DimensionMismatch {
                index: i + 1,
                detail: format!(
                    "domain {} of step {i} differs from codomain {}",
                    chain[i].domain(),
                    s.codomain()
                ),
            });
        }
        acc = acc.mul(&s.incidence())?;
    }
    Ok(GrowthBounds::from_matrix(n, &acc))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixSuffixEdge {
    pub from: Letter,
    pub to: Letter,
    pub prefix: Vec<Letter>,
    pub suffix: Vec<Letter>,
}

/// Edge `b → a` labelled `(p, a, s)` for every factorization `σ(b) = p a s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixSuffixAutomaton {
    pub domain: Alphabet,
    pub codomain: Alphabet,
    pub edges: Vec<PrefixSuffixEdge>,
}

impl PrefixSuffixAutomaton {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges rendered as `(from, to, prefix, suffix)` strings.
    pub fn rendered(&self) -> Vec<(String, String, String, String)> {
        self.edges
            .iter()
            .map(|e| {
                (
                    self.domain.name(e.from).to_string(),
                    self.codomain.name(e.to).to_string(),
                    self.codomain.render(&e.prefix),
                    self.codomain.render(&e.suffix),
                )
            })
            .collect()
    }

    pub fn pattern(&self) -> BoolMatrix {
        let mut m = IntMatrix::zeros(self.codomain.len(), self.domain.len());
        for e in &self.edges {
            m.set(e.to as usize, e.from as usize, BigUint::from(1u8));
        }
        m.pattern()
    }
}
