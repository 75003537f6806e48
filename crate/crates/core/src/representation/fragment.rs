use crate::error::{Error, Result};
use crate::order::{FiniteMetricSpace, FiniteTopology, PointSet};
use crate::scalar::Scalar;

/// Default cap on the ground size for the exhaustive subset enumeration.
pub const DEFAULT_MAX_GROUND: usize = 15;

/// Outcome of the exhaustive check; `witness` is the first failing subset in
/// ascending bitmask order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragmentation {
    pub witness: Option<PointSet>,
    pub subsets_checked: u64,
}

impl Fragmentation {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Any open set meeting `A` in `x` contains the minimal neighbourhood `U_x`,
/// so `A` has an `ε`-small open trace iff some `x ∈ A` has `f(U_x ∩ A)`
/// of diameter at most `ε`. Returns that `x`.
fn small_trace<T: Scalar>(
    topology: &FiniteTopology,
    a: PointSet,
    eps: &T,
    diameter: &impl Fn(PointSet) -> T,
) -> Option<usize> {
    a.iter().find(|&x| diameter(topology.neighbourhood(x).intersection(a)) <= *eps)
}

fn check<T: Scalar>(
    topology: &FiniteTopology,
    eps: &T,
    max_ground: usize,
    diameter: impl Fn(PointSet) -> T,
) -> Result<Fragmentation> {
    if !(*eps > T::zero()) {
        return Err(Error::EpsilonNonPositive(eps.approx()));
    }
    let n = topology.ground_size();
    if n > max_ground {
        return Err(Error::GroundTooLarge { size: n, max: max_ground });
    }
    let full = topology.full().0;
    for mask in 1..=full {
        let a = PointSet(mask);
        if small_trace(topology, a, eps, &diameter).is_none() {
            return Ok(Fragmentation { witness: Some(a), subsets_checked: mask });
        }
    }
    Ok(Fragmentation { witness: None, subsets_checked: full })
}

fn real_diameter<T: Scalar>(values: &[T]) -> impl Fn(PointSet) -> T + '_ {
    move |s: PointSet| {
        let mut it = s.iter().map(|x| &values[x]);
        let Some(first) = it.next() else { return T::zero() };
        let (lo, hi) = it.fold((first.clone(), first.clone()), |(lo, hi), v| (T::min_of(&lo, v), T::max_of(&hi, v)));
        hi - lo
    }
}

fn check_len(values: usize, topology: &FiniteTopology) -> Result<()> {
    if values != topology.ground_size() {
        return Err(Error::SizeMismatch { expected: topology.ground_size(), found: values });
    }
    Ok(())
}

/// Whether a real-valued `f` is `ε`-fragmented: every nonempty subset `A` of
/// the ground set meets some open set in a nonempty piece on which `f` varies
/// by at most `ε`. All `2^n − 1` subsets are checked.
pub fn is_fragmented<T: Scalar>(
    values: &[T],
    topology: &FiniteTopology,
    epsilon: &T,
    max_ground: usize,
) -> Result<Fragmentation> {
    check_len(values.len(), topology)?;
    check(topology, epsilon, max_ground, real_diameter(values))
}

/// [`is_fragmented`] for a map into a finite metric space, with diameters
/// measured by the target metric.
pub fn is_fragmented_metric<T: Scalar>(
    values: &[usize],
    target: &FiniteMetricSpace<T>,
    topology: &FiniteTopology,
    epsilon: &T,
    max_ground: usize,
) -> Result<Fragmentation> {
    check_len(values.len(), topology)?;
    if let Some(&bad) = values.iter().find(|&&v| v >= target.size()) {
        return Err(Error::IndexOutOfRange { index: bad, len: target.size() });
    }
    check(topology, epsilon, max_ground, |s: PointSet| {
        let pts: Vec<usize> = s.iter().map(|x| values[x]).collect();
        pts.iter()
            .flat_map(|&p| pts.iter().map(move |&q| (p, q)))
            .fold(T::zero(), |m, (p, q)| T::max_of(&m, target.dist(p, q)))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    /// `f + g` passes the exhaustive check at `ε`.
    pub sum: Fragmentation,
    /// First subset where the two-step construction failed, if any.
    pub replay_failure: Option<PointSet>,
}

impl ClosureReport {
    pub fn holds(&self) -> bool {
        self.sum.holds() && self.replay_failure.is_none()
    }
}

/// Given `f` and `g` fragmented at `ε/2`, checks that `f + g` is fragmented at
/// `ε`, both directly and by replaying the two-step argument: for each `A`
/// pick an open `O_1` small for `f` on `A`, then `O_2` small for `g` on
/// `A ∩ O_1`; `O_1 ∩ O_2` must then be small for `f + g` on `A`.
pub fn fragmented_vector_closure<T: Scalar>(
    f: &[T],
    g: &[T],
    topology: &FiniteTopology,
    epsilon: &T,
    max_ground: usize,
) -> Result<ClosureReport> {
    check_len(f.len(), topology)?;
    check_len(g.len(), topology)?;
    let half = epsilon.half();
    if !is_fragmented(f, topology, &half, max_ground)?.holds() {
        return Err(Error::NotFragmented(0));
    }
    if !is_fragmented(g, topology, &half, max_ground)?.holds() {
        return Err(Error::NotFragmented(1));
    }
    let h: Vec<T> = f.iter().zip(g).map(|(a, b)| a.clone() + b.clone()).collect();
    let sum = is_fragmented(&h, topology, epsilon, max_ground)?;

    let (df, dg, dh) = (real_diameter(f), real_diameter(g), real_diameter(&h));
    let mut replay_failure = None;
    for mask in 1..=topology.full().0 {
        let a = PointSet(mask);
        let ok = small_trace(topology, a, &half, &df)
            .map(|x| a.intersection(topology.neighbourhood(x)))
            .and_then(|a1| {
                small_trace(topology, a1, &half, &dg).map(|y| a1.intersection(topology.neighbourhood(y)))
            })
            .is_some_and(|piece| !piece.is_empty() && dh(piece) <= *epsilon);
        if !ok {
            replay_failure = Some(a);
            break;
        }
    }
    Ok(ClosureReport { sum, replay_failure })
}
