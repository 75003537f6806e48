//! Independence, l1 constants and the double limit property for finite
//! families.
//!
//! Independence and tameness are properties of infinite sequences. Here they
//! are read at finite scale: a family is "tame at `k`" when no `k` of its
//! members are independent, and a DLP violation is a `k × k` two-constants
//! submatrix.

mod dlp;
mod independence;
mod l1;

pub use dlp::{dlp_violation, DlpWitness};
pub use independence::{
    independence_at, independence_search, max_independent_size, threshold_gaps,
    IndependenceCheck, IndependenceWitness, Pattern,
};
pub use l1::{
    independence_implies_l1, l1_constant, l1_constant_grid, pattern_pair_norm,
    sup_norm_of_combination, L1Bound, L1Certificate, L1Method, MAX_GRID_POINTS,
};
