//! Order compactification by the diagonal map, and exhaustive
//! fragmentability checks on finite topological spaces.

mod embed;
mod fragment;

pub use embed::{
    augment_separating, diagonal_embed, verify_claims, ClaimReport, Counterexample, EmbeddingResult,
};
pub use fragment::{
    fragmented_vector_closure, is_fragmented, is_fragmented_metric, ClosureReport, Fragmentation,
    DEFAULT_MAX_GROUND,
};
