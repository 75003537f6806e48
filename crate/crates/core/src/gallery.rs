//! Classical families and seeded random corpora. Every generator is a pure
//! function of its parameters and seed.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bv::{metric_variation, variation, ChainFunction, FunctionFamily, MetricChainFunction};
use crate::error::{Error, Result};
use crate::order::{Chain, FiniteMetricSpace, FiniteTopology, PointSet};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Seed(pub u64);

impl Seed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

/// Largest Cantor cube dimension accepted (a chain of `2^20` points).
pub const MAX_CANTOR_DIM: usize = 20;
/// Largest ground set for random topologies.
pub const MAX_RANDOM_GROUND: usize = 15;

/// The signs of `sin(2^n π x)` for `n = 1..=n_max` at the midpoints
/// `(2j + 1) / (2·grid)` of `grid` equal subintervals of `[0, 1]`.
///
/// Signs are computed in integers: `2^n x = 2^n (2j+1) / (2·grid)` and the
/// sine is positive exactly when its integer part is even.
pub fn gen_rademacher<T: Scalar>(n_max: usize, grid: usize) -> Result<FunctionFamily<T>> {
    if n_max == 0 || grid == 0 {
        return Err(Error::BadSize("need n_max >= 1 and a nonempty grid".into()));
    }
    if n_max > 60 || grid > 1 << 24 {
        return Err(Error::TooLarge(format!("n_max = {n_max}, grid = {grid}")));
    }
    let den = 2 * grid as u128;
    // every sign cell [i / 2^n_max, (i + 1) / 2^n_max) of the last member must be sampled
    let cells = 1u128 << n_max;
    if cells > grid as u128 {
        return Err(Error::GridTooCoarse(format!("{grid} points cannot meet {cells} sign cells")));
    }
    let mut seen = vec![false; cells as usize];
    for j in 0..grid {
        seen[(cells * (2 * j as u128 + 1) / den) as usize] = true;
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(Error::GridTooCoarse(format!("sign cell {i} of r_{n_max} has no grid point")));
    }
    let chain = Arc::new(Chain::new(grid)?);
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let scale = 1u128 << n;
        let mut row = Vec::with_capacity(grid);
        for j in 0..grid {
            let num = scale * (2 * j as u128 + 1);
            if num % den == 0 {
                return Err(Error::GridHitsZero(n));
            }
            row.push(if (num / den) % 2 == 0 { T::one() } else { -T::one() });
        }
        rows.push(row);
    }
    FunctionFamily::new(chain, (-T::one(), T::one()), rows)
}

/// Coordinate projections of `{0,1}^k` listed in lexicographic order; member
/// `m` reads coordinate `m + 1`.
pub fn gen_cantor_projections<T: Scalar>(k: usize) -> Result<FunctionFamily<T>> {
    if k == 0 {
        return Err(Error::BadSize("k must be at least 1".into()));
    }
    if k > MAX_CANTOR_DIM {
        return Err(Error::TooLarge(format!("k = {k} exceeds {MAX_CANTOR_DIM}")));
    }
    let n = 1usize << k;
    let chain = Arc::new(Chain::new(n)?);
    let rows = (0..k)
        .map(|m| (0..n).map(|p| if (p >> (k - 1 - m)) & 1 == 1 { T::one() } else { T::zero() }).collect())
        .collect();
    FunctionFamily::new(chain, (T::zero(), T::one()), rows)
}

/// The powers `t ↦ t^n`, `n = 1..=n_max`, sampled on a strictly increasing
/// grid in `[0, 1]`.
pub fn gen_helly_powers<T: Scalar>(n_max: usize, grid: &[T]) -> Result<FunctionFamily<T>> {
    if grid.is_empty() {
        return Err(Error::BadSize("empty grid".into()));
    }
    if let Some(w) = grid.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::Invariant(format!("grid not increasing at {} >= {}", w[0], w[1])));
    }
    if grid[0] < T::zero() || grid[grid.len() - 1] > T::one() {
        return Err(Error::Invariant("grid leaves [0, 1]".into()));
    }
    let chain = Arc::new(Chain::new(grid.len())?);
    let rows = (1..=n_max).map(|n| grid.iter().map(|t| num_traits::pow(t.clone(), n)).collect()).collect();
    FunctionFamily::new(chain, (T::zero(), T::one()), rows)
}

/// Increasing members in `[0, 1]`, each the sorted list of uniform draws.
pub fn gen_random_monotone<T: Scalar>(count: usize, chain_size: usize, seed: Seed) -> Result<FunctionFamily<T>> {
    let chain = Arc::new(Chain::new(chain_size)?);
    let mut rng = seed.rng();
    let rows = (0..count)
        .map(|_| {
            let mut draws: Vec<f64> = (0..chain_size).map(|_| rng.gen::<f64>()).collect();
            draws.sort_by(f64::total_cmp);
            draws.into_iter().map(T::lit).collect()
        })
        .collect();
    FunctionFamily::new(chain, (T::zero(), T::one()), rows)
}

/// Random walks with range `[0, r]` whose jump sums are uniform draws in
/// `[0, r]`. Every member satisfies `variation <= r`, checked in `T`.
pub fn gen_random_bv<T: Scalar>(count: usize, chain_size: usize, r: &T, seed: Seed) -> Result<FunctionFamily<T>> {
    if !(*r > T::zero()) {
        return Err(Error::NegativeRadius(r.approx()));
    }
    let chain = Arc::new(Chain::new(chain_size)?);
    let mut rng = seed.rng();
    let radius = r.approx();
    let mut members = Vec::with_capacity(count);
    for _ in 0..count {
        let steps: Vec<f64> = (1..chain_size).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let mut total = rng.gen::<f64>() * radius;
        loop {
            let values = walk(&steps, total);
            let f = ChainFunction::new(chain.clone(), values.into_iter().map(T::lit).collect(), (T::zero(), r.clone()));
            match f {
                Ok(f) if variation(&f) <= *r => {
                    members.push(f);
                    break;
                }
                // rounding pushed the walk past the bound: shrink and redo
                _ => total *= 0.999,
            }
        }
    }
    FunctionFamily::from_members(chain, (T::zero(), r.clone()), members)
}

fn walk(steps: &[f64], total: f64) -> Vec<f64> {
    let mass: f64 = steps.iter().map(|s| s.abs()).sum();
    let scale = if mass > 0.0 { total / mass } else { 0.0 };
    let mut values = vec![0.0];
    for s in steps {
        values.push(values[values.len() - 1] + s * scale);
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    values.iter().map(|v| (v - lo).max(0.0)).collect()
}

/// Random maps into `target` with metric variation at most `r`: each step
/// either stays or jumps to a uniformly drawn point the remaining budget allows.
pub fn gen_random_metric_walks<T: Scalar>(
    count: usize,
    chain_size: usize,
    target: &Arc<FiniteMetricSpace<T>>,
    r: &T,
    seed: Seed,
) -> Result<Vec<MetricChainFunction<T>>> {
    if *r < T::zero() {
        return Err(Error::NegativeRadius(r.approx()));
    }
    let chain = Arc::new(Chain::new(chain_size)?);
    let mut rng = seed.rng();
    let m = target.size();
    (0..count)
        .map(|_| {
            let mut budget = r.clone();
            let mut at = rng.gen_range(0..m);
            let mut values = vec![at];
            for _ in 1..chain_size {
                let next = rng.gen_range(0..m);
                let cost = target.dist(at, next).clone();
                if rng.gen_bool(0.5) && cost <= budget {
                    budget = budget - cost;
                    at = next;
                }
                values.push(at);
            }
            let f = MetricChainFunction::new(chain.clone(), target.clone(), values)?;
            debug_assert!(metric_variation(&f) <= *r);
            Ok(f)
        })
        .collect()
}

/// Topology generated by `open_count_hint` random subsets. A hint of zero
/// gives the indiscrete topology and a hint of `2^ground_size` or more the
/// discrete one.
pub fn gen_random_topology(ground_size: usize, open_count_hint: usize, seed: Seed) -> Result<FiniteTopology> {
    if ground_size == 0 || ground_size > MAX_RANDOM_GROUND {
        return Err(Error::GroundTooLarge { size: ground_size, max: MAX_RANDOM_GROUND });
    }
    if open_count_hint >= 1 << ground_size {
        return FiniteTopology::discrete(ground_size);
    }
    let mut rng = seed.rng();
    let full = PointSet::full(ground_size).0;
    let subbase: Vec<PointSet> = (0..open_count_hint).map(|_| PointSet(rng.gen_range(0..=full))).collect();
    FiniteTopology::generated_by(ground_size, subbase)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::validate_topology;

    #[test]
    fn rademacher_examples() {
        let r = gen_rademacher::<f64>(1, 2).unwrap();
        assert_eq!(r.member(0).values(), &[1.0, -1.0]);
        let r = gen_rademacher::<f64>(2, 8).unwrap();
        assert_eq!(r.member(1).values(), &[1.0, 1.0, -1.0, -1.0, 1.0, 1.0, -1.0, -1.0]);
        assert!(r.members().iter().all(|f| variation(f) >= 2.0));
        assert!(matches!(gen_rademacher::<f64>(3, 4), Err(Error::GridTooCoarse(_))));
        // midpoints of 3 cells: 2^n·x hits an integer for x = 1/2
        assert_eq!(gen_rademacher::<f64>(1, 3).unwrap_err(), Error::GridHitsZero(1));
    }

    #[test]
    fn cantor_examples() {
        let c = gen_cantor_projections::<f64>(1).unwrap();
        assert_eq!(c.member(0).values(), &[0.0, 1.0]);
        let c = gen_cantor_projections::<f64>(2).unwrap();
        assert_eq!(c.member(0).values(), &[0.0, 0.0, 1.0, 1.0]);
        assert_eq!(c.member(1).values(), &[0.0, 1.0, 0.0, 1.0]);
        assert!(matches!(gen_cantor_projections::<f64>(21), Err(Error::TooLarge(_))));
    }

    #[test]
    fn helly_examples() {
        let grid = [0.0, 0.25, 0.5, 1.0];
        let h = gen_helly_powers(3, &grid).unwrap();
        assert_eq!(h.member(0).values(), &grid);
        assert!(h.members().iter().all(|f| f.is_increasing() && variation(f) == 1.0));
        assert!(gen_helly_powers(2, &[0.5, 0.25]).is_err());
    }

    #[test]
    fn random_monotone_is_reproducible() {
        let a = gen_random_monotone::<f64>(5, 7, Seed(3)).unwrap();
        assert_eq!(a, gen_random_monotone::<f64>(5, 7, Seed(3)).unwrap());
        assert!(a.members().iter().all(|f| f.is_increasing()));
        assert!(gen_random_monotone::<f64>(0, 7, Seed(3)).unwrap().is_empty());
    }

    #[test]
    fn random_bv_respects_radius() {
        let f = gen_random_bv(50, 9, &0.3, Seed(11)).unwrap();
        assert!(f.members().iter().all(|m| variation(m) <= 0.3));
        assert_eq!(f, gen_random_bv(50, 9, &0.3, Seed(11)).unwrap());
    }

    #[test]
    fn random_topology_examples() {
        let t = gen_random_topology(4, 0, Seed(1)).unwrap();
        assert_eq!(t, FiniteTopology::indiscrete(4).unwrap());
        assert_eq!(gen_random_topology(4, 16, Seed(1)).unwrap(), FiniteTopology::discrete(4).unwrap());
        let t = gen_random_topology(6, 5, Seed(9)).unwrap();
        assert!(validate_topology(6, t.opens()).passed());
        assert_eq!(t, gen_random_topology(6, 5, Seed(9)).unwrap());
    }

    #[test]
    fn metric_walks_stay_in_budget() {
        let space = Arc::new(FiniteMetricSpace::from_reals(&[0.0, 1.0, 3.0]).unwrap());
        let walks = gen_random_metric_walks(100, 10, &space, &4.0, Seed(5)).unwrap();
        assert!(walks.iter().all(|w| metric_variation(w) <= 4.0));
    }
}
