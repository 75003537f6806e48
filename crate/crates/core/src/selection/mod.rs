//! Helly-type extraction of almost-convergent subfamilies.
//!
//! On finitely many sample points pointwise and uniform convergence agree, so
//! "convergent subsequence" is read as "subfamily whose members are pairwise
//! within `epsilon` at every sample point". Every selector works by bin
//! refinement: at each sample point the current survivors are sorted into
//! width-`epsilon` bins and only the most populated bin (lowest on ties) is
//! kept. With `B` bins and `s` points at least `⌈N / B^s⌉` members survive.

mod stream;

use std::sync::Arc;

pub use stream::{diagonal_select_stream, FnStream, FunctionStream, StreamSelection};

use crate::bv::{
    is_bv_r, jordan_decompose, lipschitz_separators, variation, FunctionFamily,
    MetricChainFunction,
};
use crate::error::{Error, Result};
use crate::order::{separating_family, Chain, FinitePoset};
use crate::scalar::{bin_count, bin_index, Scalar};

/// One refinement step: at `point`, `bin` was kept and `survivors` remained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub stage: String,
    pub point: usize,
    pub bin: usize,
    pub survivors: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult<T> {
    /// Strictly increasing member indices.
    pub selected: Vec<usize>,
    pub epsilon: T,
    pub sample_points: Vec<usize>,
    pub trace: Vec<TraceStep>,
}

/// Keeps the most populated width-`eps` bin of `range` at each sample point.
pub(crate) fn refine<T: Scalar>(
    candidates: Vec<usize>,
    value: impl Fn(usize, usize) -> T,
    range: &(T, T),
    eps: &T,
    samples: &[usize],
    stage: &str,
    trace: &mut Vec<TraceStep>,
) -> Vec<usize> {
    let bins = bin_count(&range.0, &range.1, eps);
    let mut survivors = candidates;
    for &x in samples {
        if survivors.is_empty() {
            break;
        }
        let labels: Vec<usize> =
            survivors.iter().map(|&n| bin_index(&value(n, x), &range.0, eps, bins)).collect();
        let mut counts = vec![0usize; bins];
        for &b in &labels {
            counts[b] += 1;
        }
        let best = (0..bins).fold(0, |best, b| if counts[b] > counts[best] { b } else { best });
        survivors = survivors.into_iter().zip(&labels).filter(|(_, &b)| b == best).map(|(n, _)| n).collect();
        trace.push(TraceStep { stage: stage.to_string(), point: x, bin: best, survivors: survivors.len() });
    }
    survivors
}

/// First pair of selected members and point where the distance exceeds `eps`.
pub fn pairwise_violation<T: Scalar>(
    selected: &[usize],
    samples: &[usize],
    eps: &T,
    distance: impl Fn(usize, usize, usize) -> T,
) -> Option<(usize, usize, usize)> {
    for (k, &i) in selected.iter().enumerate() {
        for &j in &selected[k + 1..] {
            for &x in samples {
                if distance(i, j, x) > *eps {
                    return Some((i, j, x));
                }
            }
        }
    }
    None
}

impl<T: Scalar> SelectionResult<T> {
    /// Re-checks `|f_i(x) − f_j(x)| ≤ epsilon` on the raw values.
    pub fn validate(&self, family: &FunctionFamily<T>) -> Option<(usize, usize, usize)> {
        pairwise_violation(&self.selected, &self.sample_points, &self.epsilon, |i, j, x| {
            (family.value(i, x).clone() - family.value(j, x).clone()).abs()
        })
    }

    /// Re-checks `d(f_i(x), f_j(x)) ≤ epsilon` on the raw target points.
    pub fn validate_metric(&self, members: &[MetricChainFunction<T>]) -> Option<(usize, usize, usize)> {
        pairwise_violation(&self.selected, &self.sample_points, &self.epsilon, |i, j, x| {
            members[i].target().dist(members[i].values()[x], members[j].values()[x]).clone()
        })
    }

    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }
}

fn check_common<T: Scalar>(chain: &Chain, eps: &T, samples: Option<&[usize]>) -> Result<Vec<usize>> {
    if !(*eps > T::zero()) {
        return Err(Error::EpsilonNonPositive(eps.approx()));
    }
    match samples {
        None => Ok(chain.points().collect()),
        Some(s) => {
            for &x in s {
                chain.check_index(x)?;
            }
            Ok(s.to_vec())
        }
    }
}

/// Pigeonhole floor `⌈n / bins^points⌉` of a bin refinement.
pub fn pigeonhole_floor(n: usize, bins: usize, points: usize) -> usize {
    let mut cap = 1usize;
    for _ in 0..points {
        cap = cap.saturating_mul(bins);
    }
    n.div_ceil(cap)
}

/// Bin refinement on a family of increasing functions. `samples = None` uses
/// every chain point.
pub fn select_monotone<T: Scalar>(
    family: &FunctionFamily<T>,
    epsilon: &T,
    samples: Option<&[usize]>,
) -> Result<SelectionResult<T>> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let sample_points = check_common(family.chain(), epsilon, samples)?;
    for (member, f) in family.members().iter().enumerate() {
        if let Some(at) = f.first_descent() {
            return Err(Error::NotMonotone { member, at });
        }
    }
    let mut trace = Vec::new();
    let selected = refine(
        (0..family.len()).collect(),
        |n, x| family.value(n, x).clone(),
        family.range(),
        epsilon,
        &sample_points,
        "monotone",
        &mut trace,
    );
    Ok(SelectionResult { selected, epsilon: epsilon.clone(), sample_points, trace })
}

/// Selection for a family in `BV_r`: each member is split as `u − v`, the
/// increasing parts `u` are refined at `epsilon/2`, then the survivors' `v`
/// parts at `epsilon/2`. Since `|f − f'| ≤ |u − u'| + |v − v'|`, survivors are
/// pairwise within `epsilon`.
pub fn select_bv<T: Scalar>(
    family: &FunctionFamily<T>,
    r: &T,
    epsilon: &T,
    samples: Option<&[usize]>,
) -> Result<SelectionResult<T>> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let sample_points = check_common(family.chain(), epsilon, samples)?;
    for (member, f) in family.members().iter().enumerate() {
        if !is_bv_r(f, r)? {
            return Err(Error::NotBVr { member, variation: variation(f).approx(), radius: r.approx() });
        }
    }
    let mut trace = Vec::new();
    let selected = refine_bv(
        (0..family.len()).collect(),
        |n| family.member(n).values().to_vec(),
        family.chain(),
        family.range(),
        r,
        epsilon,
        &sample_points,
        "",
        &mut trace,
    );
    Ok(SelectionResult { selected, epsilon: epsilon.clone(), sample_points, trace })
}

/// The two half-tolerance passes of [`select_bv`] on arbitrary value rows.
#[allow(clippy::too_many_arguments)]
fn refine_bv<T: Scalar>(
    candidates: Vec<usize>,
    values: impl Fn(usize) -> Vec<T>,
    chain: &Arc<Chain>,
    range: &(T, T),
    r: &T,
    epsilon: &T,
    samples: &[usize],
    label: &str,
    trace: &mut Vec<TraceStep>,
) -> Vec<usize> {
    let half = epsilon.half();
    let mut parts = std::collections::HashMap::new();
    for &n in &candidates {
        let f = crate::bv::ChainFunction::fitted(chain.clone(), values(n)).expect("rows match the chain");
        let (u, v) = jordan_decompose(&f);
        parts.insert(n, (u.values().to_vec(), v.values().to_vec()));
    }
    // u ∈ [0, r] and v = u − f ∈ [−d, r − c]; widen for float drift
    let top = parts.values().flat_map(|(u, _)| u.iter()).fold(r.clone(), |m, x| T::max_of(&m, x));
    let u_range = (T::zero(), top.clone());
    let v_range = (-range.1.clone(), top - range.0.clone());
    let after_u = refine(candidates, |n, x| parts[&n].0[x].clone(), &u_range, &half, samples, &format!("{label}u"), trace);
    refine(after_u, |n, x| parts[&n].1[x].clone(), &v_range, &half, samples, &format!("{label}v"), trace)
}

/// An order preserving map from a chain into a finite poset.
#[derive(Debug, Clone, PartialEq)]
pub struct PosetValuedMap {
    chain: Arc<Chain>,
    target: Arc<FinitePoset>,
    values: Vec<usize>,
}

impl PosetValuedMap {
    pub fn new(chain: Arc<Chain>, target: Arc<FinitePoset>, values: Vec<usize>) -> Result<Self> {
        if values.len() != chain.size() {
            return Err(Error::SizeMismatch { expected: chain.size(), found: values.len() });
        }
        if let Some(&bad) = values.iter().find(|&&v| v >= target.size()) {
            return Err(Error::IndexOutOfRange { index: bad, len: target.size() });
        }
        Ok(PosetValuedMap { chain, target, values })
    }

    pub fn chain(&self) -> &Arc<Chain> {
        &self.chain
    }

    pub fn target(&self) -> &Arc<FinitePoset> {
        &self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// First pair of consecutive chain points where the map is not increasing.
    pub fn first_violation(&self) -> Option<(usize, usize)> {
        (0..self.values.len().saturating_sub(1))
            .find(|&i| !self.target.leq(self.values[i], self.values[i + 1]))
            .map(|i| (i, i + 1))
    }
}

/// Selection for increasing maps into a finite poset: compose with the
/// up-set indicators of the target and refine along each of them in turn.
/// For `epsilon < 1` the survivors coincide at every sample point.
pub fn select_poset_valued<T: Scalar>(
    members: &[PosetValuedMap],
    epsilon: &T,
    samples: Option<&[usize]>,
) -> Result<SelectionResult<T>> {
    let first = members.first().ok_or(Error::EmptyFamily)?;
    let sample_points = check_common(first.chain(), epsilon, samples)?;
    for (n, m) in members.iter().enumerate() {
        if m.target() != first.target() || m.chain() != first.chain() {
            return Err(Error::TargetMismatch(n));
        }
        if let Some((lower, upper)) = m.first_violation() {
            return Err(Error::NotIncreasing { member: n, lower, upper });
        }
    }
    let separators = separating_family::<T>(first.target());
    let mut trace = Vec::new();
    let mut survivors: Vec<usize> = (0..members.len()).collect();
    for (y, h) in separators.members().iter().enumerate() {
        survivors = refine(
            survivors,
            |n, x| h.value(members[n].values()[x]).clone(),
            &(T::zero(), T::one()),
            epsilon,
            &sample_points,
            &format!("up-set {y}"),
            &mut trace,
        );
    }
    Ok(SelectionResult { selected: survivors, epsilon: epsilon.clone(), sample_points, trace })
}

/// Selection for metric-valued maps of variation at most `r`.
///
/// Members are composed with the rescaled distance functions
/// `h_y = d(y, ·)/diam`; each composite has variation at most `r/diam`, and
/// the [`select_bv`] refinement runs on each coordinate at `epsilon/diam`.
/// Because `d(p, q) = diam · max_y |h_y(p) − h_y(q)|`, survivors are within
/// `epsilon` in the target metric.
pub fn select_metric_valued<T: Scalar>(
    members: &[MetricChainFunction<T>],
    r: &T,
    epsilon: &T,
    samples: Option<&[usize]>,
) -> Result<SelectionResult<T>> {
    let first = members.first().ok_or(Error::EmptyFamily)?;
    let sample_points = check_common(first.chain(), epsilon, samples)?;
    for (n, m) in members.iter().enumerate() {
        if m.target() != first.target() || m.chain() != first.chain() {
            return Err(Error::TargetMismatch(n));
        }
        if !is_bv_r(m, r)? {
            return Err(Error::NotBVr {
                member: n,
                variation: crate::bv::metric_variation(m).approx(),
                radius: r.approx(),
            });
        }
    }
    let target = first.target();
    let diam = target.diameter();
    let mut trace = Vec::new();
    let mut survivors: Vec<usize> = (0..members.len()).collect();
    if !diam.is_zero() {
        let separators = lipschitz_separators(target);
        let budget = epsilon.clone() / diam.clone();
        let radius = r.clone() / diam.clone();
        for (y, h) in separators.members().iter().enumerate() {
            survivors = refine_bv(
                survivors,
                |n| members[n].values().iter().map(|&p| h.value(p).clone()).collect(),
                first.chain(),
                &(T::zero(), T::one()),
                &radius,
                &budget,
                &sample_points,
                &format!("h{y}."),
                &mut trace,
            );
        }
    }
    Ok(SelectionResult { selected: survivors, epsilon: epsilon.clone(), sample_points, trace })
}
