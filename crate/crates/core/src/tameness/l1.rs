//! The best constant `a` in `a · Σ|c_i| ≤ ‖Σ c_i f_i‖_∞`.
//!
//! Restricted to one sign orthant `c_i = s_i w_i` with `w` on the unit simplex,
//! the objective is a maximum of finitely many linear functions of `w`, so the
//! minimum over the orthant is a small linear program. Flipping every sign
//! leaves the objective unchanged, so only orthants with `s_0 = +1` are visited.

use microlp::{ComparisonOp, OptimizationDirection, Problem};

use super::independence::IndependenceWitness;
use crate::bv::FunctionFamily;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Grid route refuses to visit more simplex points than this.
pub const MAX_GRID_POINTS: usize = 20_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum L1Method {
    LinearProgram,
    SimplexGrid { resolution: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct L1Certificate {
    /// `‖Σ c_i f_i‖_∞` at the reported coefficients; an upper bound on the constant.
    pub constant: f64,
    /// Certified lower bound on the constant.
    pub lower_bound: f64,
    /// Coefficients with `Σ|c_i| = 1` attaining `constant`.
    pub coefficients: Vec<f64>,
    pub tolerance: f64,
    pub method: L1Method,
}

fn float_rows<T: Scalar>(family: &FunctionFamily<T>) -> Vec<Vec<f64>> {
    family.members().iter().map(|m| m.values().iter().map(Scalar::approx).collect()).collect()
}

/// `max_x |Σ c_i f_i(x)|` for a family given by float rows.
pub fn sup_norm_of_combination(rows: &[Vec<f64>], coefficients: &[f64]) -> f64 {
    let points = rows.first().map_or(0, Vec::len);
    (0..points)
        .map(|x| rows.iter().zip(coefficients).map(|(r, c)| c * r[x]).sum::<f64>().abs())
        .fold(0.0, f64::max)
}

fn check_args<T: Scalar>(family: &FunctionFamily<T>, tolerance: f64) -> Result<()> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if !(tolerance > 0.0) {
        return Err(Error::ToleranceNonPositive(tolerance));
    }
    if family.len() > 24 {
        return Err(Error::TooLarge(format!("{} members; orthant enumeration is capped at 24", family.len())));
    }
    Ok(())
}

fn orthant_signs(k: usize, orthant: u64) -> Vec<f64> {
    (0..k).map(|i| if i > 0 && orthant >> (i - 1) & 1 == 1 { -1.0 } else { 1.0 }).collect()
}

/// The l1 constant by one linear program per sign orthant.
pub fn l1_constant<T: Scalar>(family: &FunctionFamily<T>, tolerance: f64) -> Result<L1Certificate> {
    check_args(family, tolerance)?;
    let rows = float_rows(family);
    let k = rows.len();
    let n = family.chain().size();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for orthant in 0..1u64 << (k - 1) {
        let signs = orthant_signs(k, orthant);
        let mut lp = Problem::new(OptimizationDirection::Minimize);
        let w: Vec<_> = (0..k).map(|_| lp.add_var(0.0, (0.0, 1.0))).collect();
        let t = lp.add_var(1.0, (0.0, f64::INFINITY));
        lp.add_constraint(w.iter().map(|&v| (v, 1.0)).collect::<Vec<_>>(), ComparisonOp::Eq, 1.0);
        for x in 0..n {
            let combo: Vec<_> = (0..k).map(|i| (w[i], signs[i] * rows[i][x])).collect();
            let mut upper = combo.clone();
            upper.push((t, -1.0));
            lp.add_constraint(upper, ComparisonOp::Le, 0.0);
            let mut lower: Vec<_> = combo.into_iter().map(|(v, c)| (v, -c)).collect();
            lower.push((t, -1.0));
            lp.add_constraint(lower, ComparisonOp::Le, 0.0);
        }
        let solution = lp
            .solve()
            .map_err(|e| Error::Lp(e.to_string()))?
            .into_solution()
            .map_err(|_| Error::Lp("solve interrupted".into()))?;
        let weights: Vec<f64> = w.iter().map(|&v| solution.var_value(v).max(0.0)).collect();
        let total: f64 = weights.iter().sum();
        let coefficients: Vec<f64> =
            weights.iter().zip(&signs).map(|(w, s)| s * w / total).collect();
        let value = sup_norm_of_combination(&rows, &coefficients);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, coefficients));
        }
    }
    let (constant, coefficients) = best.expect("at least one orthant");
    Ok(L1Certificate {
        constant,
        // simplex optimum up to solver round-off
        lower_bound: constant - 1e-9 * (1.0 + constant),
        coefficients,
        tolerance,
        method: L1Method::LinearProgram,
    })
}

/// Calls `visit` with every weight vector `parts / m` on the `k`-simplex grid.
fn for_each_composition(k: usize, m: usize, visit: &mut impl FnMut(&[usize])) {
    fn rec(parts: &mut Vec<usize>, k: usize, left: usize, visit: &mut impl FnMut(&[usize])) {
        if parts.len() + 1 == k {
            parts.push(left);
            visit(parts);
            parts.pop();
            return;
        }
        for p in 0..=left {
            parts.push(p);
            rec(parts, k, left - p, visit);
            parts.pop();
        }
    }
    rec(&mut Vec::with_capacity(k), k, m, visit);
}

fn binomial(n: usize, r: usize) -> f64 {
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// The l1 constant by exhaustive search over a simplex grid in each orthant.
///
/// Any weight vector is within l1 distance `k / m` of a grid point of
/// resolution `m`, and the objective is Lipschitz in `c` with constant
/// `L = max |f_i(x)|`, so the grid minimum overshoots the constant by at most
/// `L k / m`. The resolution doubles until that bound drops below `tolerance`.
pub fn l1_constant_grid<T: Scalar>(
    family: &FunctionFamily<T>,
    tolerance: f64,
) -> Result<L1Certificate> {
    check_args(family, tolerance)?;
    let rows = float_rows(family);
    let k = rows.len();
    let lipschitz = family.sup_norm().approx();
    let mut m = 1usize;
    while lipschitz * k as f64 / m as f64 > tolerance {
        m *= 2;
    }
    let orthants = 1u64 << (k - 1);
    let cost = binomial(m + k - 1, k - 1) * orthants as f64;
    if cost > MAX_GRID_POINTS as f64 {
        return Err(Error::TooLarge(format!(
            "simplex grid of resolution {m} over {k} members needs {cost:.0} evaluations"
        )));
    }
    let mut best = (f64::INFINITY, Vec::new());
    let mut coefficients = vec![0.0; k];
    for orthant in 0..orthants {
        let signs = orthant_signs(k, orthant);
        for_each_composition(k, m, &mut |parts| {
            for i in 0..k {
                coefficients[i] = signs[i] * parts[i] as f64 / m as f64;
            }
            let value = sup_norm_of_combination(&rows, &coefficients);
            if value < best.0 {
                best = (value, coefficients.clone());
            }
        });
    }
    let bound = lipschitz * k as f64 / m as f64;
    Ok(L1Certificate {
        constant: best.0,
        lower_bound: (best.0 - bound).max(0.0),
        coefficients: best.1,
        tolerance,
        method: L1Method::SimplexGrid { resolution: m },
    })
}

/// Lower bound `(b − a)/2` carried by an independence witness, checked against
/// the measured l1 constant of the witnessed subfamily.
#[derive(Debug, Clone, PartialEq)]
pub struct L1Bound {
    pub bound: f64,
    pub measured: L1Certificate,
    pub holds: bool,
}

/// For coefficients `c`, the larger of `|Σ c_i f_i|` at the point realising
/// "positive coefficients below `a`, negative above `b`" and at the point of
/// the swapped pattern. The two sums differ by more than `(b − a) Σ|c_i|`.
pub fn pattern_pair_norm<T: Scalar>(
    witness: &IndependenceWitness<T>,
    family: &FunctionFamily<T>,
    coefficients: &[f64],
) -> f64 {
    let k = witness.k();
    let mut mask = 0u64;
    for c in coefficients.iter().take(k) {
        mask = mask << 1 | u64::from(*c < 0.0);
    }
    let p = super::independence::Pattern { mask, width: k };
    let eval = |x: usize| {
        witness
            .indices
            .iter()
            .zip(coefficients)
            .map(|(&i, c)| c * family.value(i, x).approx())
            .sum::<f64>()
            .abs()
    };
    eval(witness.point_for(p)).max(eval(witness.point_for(p.swapped())))
}

/// Validates `witness` and measures the l1 constant of its subfamily.
pub fn independence_implies_l1<T: Scalar>(
    witness: &IndependenceWitness<T>,
    family: &FunctionFamily<T>,
    tolerance: f64,
) -> Result<L1Bound> {
    witness.validate(family)?;
    let bound = (witness.b.clone() - witness.a.clone()).approx() / 2.0;
    let measured = l1_constant(&family.subfamily(&witness.indices)?, tolerance)?;
    let holds = measured.constant >= bound - tolerance;
    Ok(L1Bound { bound, measured, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Chain;
    use crate::tameness::independence_at;
    use std::sync::Arc;

    fn family(rows: Vec<Vec<f64>>) -> FunctionFamily<f64> {
        let chain = Arc::new(Chain::new(rows[0].len()).unwrap());
        FunctionFamily::new(chain, (-2.0, 2.0), rows).unwrap()
    }

    #[test]
    fn identical_copies_cancel() {
        let fam = family(vec![vec![0.3, -1.0, 1.5], vec![0.3, -1.0, 1.5]]);
        let c = l1_constant(&fam, 1e-6).unwrap();
        assert!(c.constant.abs() < 1e-9);
        assert!((c.coefficients[0] + c.coefficients[1]).abs() < 1e-9);
        assert!(l1_constant_grid(&fam, 1e-3).unwrap().constant < 1e-12);
    }

    #[test]
    fn single_member_gives_sup_norm() {
        let fam = family(vec![vec![0.3, -1.25, 0.5]]);
        assert!((l1_constant(&fam, 1e-6).unwrap().constant - 1.25).abs() < 1e-9);
        assert!((l1_constant_grid(&fam, 1e-6).unwrap().constant - 1.25).abs() < 1e-12);
    }

    #[test]
    fn cantor_pair_constant_is_one_half() {
        let fam = family(vec![vec![0.0, 0.0, 1.0, 1.0], vec![0.0, 1.0, 0.0, 1.0]]);
        let lp = l1_constant(&fam, 1e-6).unwrap();
        assert!((lp.constant - 0.5).abs() < 1e-9);
        let grid = l1_constant_grid(&fam, 1e-3).unwrap();
        assert!((grid.constant - 0.5).abs() < 1e-3);
        assert!(grid.lower_bound <= 0.5 + 1e-12);
    }

    #[test]
    fn argument_errors() {
        let chain = Arc::new(Chain::new(2).unwrap());
        let empty = FunctionFamily::<f64>::empty(chain, (0.0, 1.0)).unwrap();
        assert_eq!(l1_constant(&empty, 1e-3), Err(Error::EmptyFamily));
        let fam = family(vec![vec![0.0, 1.0]]);
        assert_eq!(l1_constant(&fam, 0.0), Err(Error::ToleranceNonPositive(0.0)));
        assert_eq!(l1_constant_grid(&fam, -1.0), Err(Error::ToleranceNonPositive(-1.0)));
    }

    #[test]
    fn witness_bound_on_cantor_pair() {
        let fam = family(vec![vec![0.0, 0.0, 1.0, 1.0], vec![0.0, 1.0, 0.0, 1.0]]);
        let w = independence_at(&fam, &[0, 1], &0.25, &0.75).unwrap().witness().unwrap();
        let b = independence_implies_l1(&w, &fam, 1e-6).unwrap();
        assert_eq!(b.bound, 0.25);
        assert!(b.holds);
        assert!((b.measured.constant - 0.5).abs() < 1e-9);
        for c in [[0.5, -0.5], [1.0, 0.0], [-0.3, 0.7], [0.2, 0.8]] {
            assert!(pattern_pair_norm(&w, &fam, &c) > 0.25 * 1.0 - 1e-12);
        }
    }
}
