//! S-adic expansions: directive sequences, limit words and languages,
//! growth, primitivity, frequencies and the balance criterion, entropy
//! bounds and the universal expansion of finite words.

mod cassaigne;
mod directive;
mod entropy;
mod frequency;
mod io;
mod limit;

pub use cassaigne::cassaigne_expansion;
pub use directive::{DirectiveKind, DirectiveSequence, Seeds, TailPolicy};
pub use entropy::{entropy_upper_bound, finite_length_entropy_bound, EntropyBound, FiniteLengthBound};
pub use frequency::{
    balance_criterion_partial_sums, convergence_profile, generalized_eigenvector,
    ConvergenceProfile, CriterionReport, CriterionVerdict, FrequencyResult,
};
pub use io::{directive_from_json, directive_to_json, DirectiveFile, SeedSpec};
pub use limit::{
    everywhere_growing_check, limit_word_stream, primitivity_check, sadic_language,
    GrowthProfile, LimitOptions, PrimitivityReport, WeakWitness,
};
