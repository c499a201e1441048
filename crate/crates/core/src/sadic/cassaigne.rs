//! The universal S-adic expansion of an arbitrary finite word.
//!
//! Over `B = A ∪ {ℓ}` with a fresh letter `ℓ`, let `σ_a` fix every letter
//! of `A` and send `ℓ ↦ ℓa`, and let `τ_ℓ` fix `A` and send `ℓ ↦ w_0`. Then
//! `τ_ℓ σ_{w_1} ⋯ σ_{w_{L-1}}(ℓ) = w`.

use crate::error::{Error, Result};
use crate::substitution::Substitution;
use crate::word::FiniteWord;

use super::directive::{DirectiveKind, DirectiveSequence, Seeds, TailPolicy};

/// Finite directive sequence `τ_ℓ, σ_{w_1}, …, σ_{w_{L-1}}` with seeds
/// `a_0 = w_0` and `a_n = ℓ` afterwards; its limit word is `w`.
pub fn cassaigne_expansion(w: &FiniteWord) -> Result<DirectiveSequence> {
    if w.is_empty() {
        return Err(Error::InvalidParameter(
            "the empty word has no expansion".into(),
        ));
    }
    let a = w.alphabet();
    let (b, ell) = a.with_fresh_letter("l");
    let ell_name = b.name(ell).to_string();
    let d = a.len();
    let letters = w.letters();

    let mut tau_images: Vec<Vec<_>> = (0..d).map(|x| vec![x as _]).collect();
    tau_images.push(vec![letters[0]]);
    let tau = Substitution::new(Some(format!("tau-{ell_name}")), b.clone(), b.clone(), tau_images)?;

    let mut sigmas: Vec<Option<Substitution>> = vec![None; d];
    let mut list = Vec::with_capacity(letters.len());
    list.push(tau);
    for &x in &letters[1..] {
        let s = match &sigmas[x as usize] {
            Some(s) => s.clone(),
            None => {
                let mut images: Vec<Vec<_>> = (0..d).map(|y| vec![y as _]).collect();
                images.push(vec![ell, x]);
                let s = Substitution::new(
                    Some(format!("sigma-{}", a.name(x))),
                    b.clone(),
                    b.clone(),
                    images,
                )?;
                sigmas[x as usize] = Some(s.clone());
                s
            }
        };
        list.push(s);
    }
    DirectiveSequence::new(
        DirectiveKind::ExplicitFinite {
            list,
            tail: TailPolicy::Finite,
        },
        Seeds::Pattern {
            pre: vec![a.name(letters[0]).to_string()],
            cycle: vec![ell_name],
        },
    )
}
