//! The co-t-structure `(A, B)` generated by a finite set of compact objects:
//! approximations, the tower, decomposition triangles, membership oracles and
//! runtime checks of the statements the construction relies on.

mod approximations;
mod axioms;
mod generators;
mod membership;
mod report;
mod tower;

pub use approximations::{
    setup2_iso_diagnostic, verify_approx_maps, verify_b_approximation, verify_isom, verify_ses,
    SesSlot,
};
pub use axioms::{
    adjacency_report, check_connected_corigid, check_setup2, default_window, generating_diagnostic,
    membership_equality_suite, nondegeneracy_window, verify_axioms,
};
pub use generators::GeneratorSet;
pub use membership::{in_a_bar, in_a_sampled, in_b, Membership};
pub use report::{HomWitness, Level, Origin, Outcome, Report, Tier, Verdict};
pub use tower::{
    b_approximation, b_samples, build_tower, decompose, default_max_iter, r_approximation,
    Decomposition, RApproximation, RSummand, Tower, TowerStep, TowerTrace, TraceStep,
};
