use std::sync::Arc;

use super::{ChainFunction, FunctionFamily, MetricChainFunction};
use crate::error::{Error, Result};
use crate::order::{Chain, FiniteMetricSpace};
use crate::scalar::{extent, Scalar};

/// Total variation `Σ |f(x_{i+1}) − f(x_i)|` over consecutive chain points.
///
/// On a finite chain this is the supremum over all subchains, since dropping a
/// point can only shrink the sum by the triangle inequality.
pub fn variation<T: Scalar>(f: &ChainFunction<T>) -> T {
    jump_sum(f.values())
}

fn jump_sum<T: Scalar>(values: &[T]) -> T {
    values
        .windows(2)
        .fold(T::zero(), |acc, w| acc + (w[1].clone() - w[0].clone()).abs())
}

/// The jump sum along an arbitrary strictly increasing list of chain points.
pub fn subchain_sum<T: Scalar>(f: &ChainFunction<T>, points: &[usize]) -> Result<T> {
    for w in points.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::NotStrictlyOrdered(w[0], w[1]));
        }
    }
    for &p in points {
        f.chain().check_index(p)?;
    }
    let values: Vec<T> = points.iter().map(|&p| f.value(p).clone()).collect();
    Ok(jump_sum(&values))
}

/// Variation of `f` on the initial segment `{x : x ≤ cutoff}` (cutoff included).
pub fn restricted_variation<T: Scalar>(f: &ChainFunction<T>, cutoff: usize) -> Result<T> {
    f.chain().check_index(cutoff)?;
    Ok(jump_sum(&f.values()[..=cutoff]))
}

/// Jordan decomposition `f = u − v` with `u(x) = Υ^x(f)` and `v = u − f`.
///
/// Both parts are increasing. With an exact scalar the identity `u − v = f`
/// holds exactly; with floats `v` is still formed as `u − f`, so it may drift
/// by rounding.
pub fn jordan_decompose<T: Scalar>(
    f: &ChainFunction<T>,
) -> (ChainFunction<T>, ChainFunction<T>) {
    let values = f.values();
    let mut u = Vec::with_capacity(values.len());
    let mut acc = T::zero();
    u.push(acc.clone());
    for w in values.windows(2) {
        acc = acc + (w[1].clone() - w[0].clone()).abs();
        u.push(acc.clone());
    }
    let v: Vec<T> = u.iter().zip(values).map(|(u, f)| u.clone() - f.clone()).collect();
    let fit = |vals: Vec<T>| {
        let range = extent(&vals).expect("chains are nonempty");
        ChainFunction::new(f.chain().clone(), vals, range).expect("range fitted to values")
    };
    (fit(u), fit(v))
}

/// `Σ d(f(x_{i+1}), f(x_i))` over consecutive chain points.
pub fn metric_variation<T: Scalar>(f: &MetricChainFunction<T>) -> T {
    let target = f.target();
    f.values()
        .windows(2)
        .fold(T::zero(), |acc, w| acc + target.dist(w[0], w[1]).clone())
}

/// The distance functions `h_y = d(y, ·) / diam` for every point `y`, as a
/// `[0, 1]`-valued family on the target's points. A one-point (zero diameter)
/// space yields the constant zero function.
pub fn lipschitz_separators<T: Scalar>(space: &FiniteMetricSpace<T>) -> FunctionFamily<T> {
    let n = space.size();
    let chain = Arc::new(Chain::new(n).expect("metric spaces are nonempty"));
    let diam = space.diameter();
    let rows = (0..n)
        .map(|y| {
            (0..n)
                .map(|x| {
                    if diam.is_zero() {
                        T::zero()
                    } else {
                        space.dist(y, x).clone() / diam.clone()
                    }
                })
                .collect()
        })
        .collect();
    FunctionFamily::new(chain, (T::zero(), T::one()), rows).expect("separators lie in [0, 1]")
}

/// Anything with a variation along its chain.
pub trait Variation<T> {
    fn total_variation(&self) -> T;
}

impl<T: Scalar> Variation<T> for ChainFunction<T> {
    fn total_variation(&self) -> T {
        variation(self)
    }
}

impl<T: Scalar> Variation<T> for MetricChainFunction<T> {
    fn total_variation(&self) -> T {
        metric_variation(self)
    }
}

/// Whether the variation is at most `r`. The comparison is exact in `T`.
pub fn is_bv_r<T: Scalar, F: Variation<T>>(f: &F, r: &T) -> Result<bool> {
    if *r < T::zero() {
        return Err(Error::NegativeRadius(r.approx()));
    }
    Ok(f.total_variation() <= *r)
}
