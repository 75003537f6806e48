//! Variation calculus on finite chains: the total variation, its restriction
//! to initial segments, the Jordan decomposition, the metric-valued variation
//! and the Lipschitz separators of a finite metric space.

mod function;
mod variation;

pub use function::{ChainFunction, FunctionFamily, MetricChainFunction};
pub use variation::{
    is_bv_r, jordan_decompose, lipschitz_separators, metric_variation, restricted_variation,
    subchain_sum, variation, Variation,
};
