//! Witness schemes for the BFC Mal'cev condition: words, the `σ, σ*, ρ, ρ*`
//! substitutions, identity verification and the `a_i, b_i` recursion.

mod maps;
mod recursion;
mod scheme;
mod verify;
mod word;

pub use maps::{x_vector_terms, CompiledScheme, SubstitutionMap};
pub use recursion::{solve_recursion, RecursionSolution, SolutionFlag};
pub use scheme::{x_vector_names, SchemeFile, WitnessScheme, MAX_ALPHABET};
pub use verify::{
    scheme_identities, verify_scheme_identities, GroupResult, IdentityResult, SchemeIdentity, SchemeReport,
    GROUPS,
};
pub use word::{all_words, word_count, Word};
