//! Formula generation and rewriting.
//!
//! * two-term seeds `π/4 = 2^(k−1)·arctan(1/α) + arctan(1/β)`;
//! * exact two-angle identities (floor steps, splits);
//! * integerization and peeling pipelines that record a [`DerivationTrace`];
//! * scripted derivations of published formulas.
//!
//! Sign convention: a floor step always acts on `z = 1/arg` of the term as
//! stored, sign included. Seeds keep the sign of β in the argument.

mod derive;
mod pipeline;
mod seed;
mod steps;
mod trace;

pub use derive::{derive, derive_with_progress, Derivation, DERIVATIONS, EQ30_FLOORS};
pub use pipeline::{
    integerize, integerize_with_progress, peel_powers_of_ten, IntegerizeMode, IntegerizeOutcome,
    IntegerizeStatus, DEFAULT_MAX_STEPS,
};
pub use seed::{
    alpha_for_k, beta_gauss, beta_iter, iter_states, two_term_seed, IterState, SeedResult,
};
pub use steps::{
    angle_quotient, angles_cancel, double_split, floor_step, msplit, scaled_floor_step, split_term,
};
pub use trace::{DerivationTrace, TraceStep};
