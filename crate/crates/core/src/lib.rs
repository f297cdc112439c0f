//! Exact classification of rational quadratic forms by local invariants,
//! with constructive witnesses for the places where two forms differ.

pub mod arith;
pub mod error;
pub mod form;
pub mod global;
pub mod hilbert;
pub mod hyperbolic;
pub mod local;
#[cfg(feature = "test-oracles")]
pub mod oracles;
pub mod place;
pub mod square_class;
pub mod subform;
mod witness;

pub use arith::{parse_rational, rat, Rational};
pub use error::{Error, Result};
pub use form::{hasse_variants, order_form, rediagonalize, DiagonalForm, InvariantProfile};
pub use global::{
    globally_isometric, globally_isotropic, is_subform, isogroupic, similar, square_existence,
    synthesize_form, Isogroupy, SquareClassConstraint, SynthesisProfile, DEFAULT_SEARCH_BOUND,
};
pub use hilbert::{hilbert_support, hilbert_symbol, nonsquare_partner};
pub use hyperbolic::{
    commensurable, contains_as_subspace, dichotomy_report, distinguishing_place, is_admissible,
    maclachlan_enumerate, maclachlan_form_to_primes, maclachlan_parity_ok,
    maclachlan_primes_to_form, AdmissiblePair, DichotomyReport, MaclachlanClass,
    RamificationAudit, SubspaceContainment,
};
pub use local::{
    local_form_exists, local_invariants, local_isometric, local_isotropic, local_subform,
    local_witt_index, tits_index, LocalInvariants, LocalSquareClass, TitsFamily, TitsIndex,
};
pub use place::Place;
pub use square_class::SquareClass;
pub use subform::{
    distinguishing_subform_even_codim1, distinguishing_subform_even_codim2,
    distinguishing_subform_odd, real_distinguishing_subform, similar_subform_obstruction,
    similar_subform_search, transfer_subform, verify_certificate, SubformCertificate,
};
