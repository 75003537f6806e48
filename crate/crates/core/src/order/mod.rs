//! Finite ordered structures and the order-topological primitives built on them.

mod chain;
mod metric;
mod poset;
mod topology;

pub use chain::{order_separate, Chain, Separation};
pub use metric::FiniteMetricSpace;
pub use poset::{separating_family, FinitePoset};
pub use topology::{
    interval_topology, is_closed_order, validate_topology, FiniteTopology, PointSet,
    TopologyReport, MAX_EXPLICIT_GROUND,
};
