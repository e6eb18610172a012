//! The box experiment over the rational probability axis.
//!
//! A box is a multiset of labeled instances; drawing one uniformly yields
//! the place (0 = none) where a subset-solution is checked in the observed
//! step. For every `q` in `[0, 1] ∩ Q` some box has `P(A) = q`, and a
//! [`FamilyRule`] fixes which one is used. Probabilities are exact
//! rationals; floats only appear in Monte Carlo frequencies.

mod family;
mod rational;
mod urn;

pub use family::{
    detect_jump, family_box, family_spec, rational_grid, scan_csv, scan_family, Approach, BoxSpec,
    FamilyRule, JumpReport, LimitMethod, ScanRow,
};
pub use rational::RationalQ;
pub use urn::{
    estimate_pmf, estimate_pmf_parallel, exact_pmf, make_box, probability_of_A, sample_box,
    EmpiricalPmf, InputBox, OutcomeLabel, Pmf, CHUNK_TRIALS,
};
