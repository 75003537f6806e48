use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Rows `i_1 < … < i_k`, columns `j_1 < … < j_k` and constants with
/// `values(i_p, j_q) ≈ alpha` for `p ≤ q` and `≈ beta` for `p > q`.
#[derive(Debug, Clone, PartialEq)]
pub struct DlpWitness<T> {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub alpha: T,
    pub beta: T,
}

impl<T: Scalar> DlpWitness<T> {
    /// Re-checks the configuration against the raw matrix.
    pub fn validate(&self, values: &[Vec<T>], delta: &T, tail_tolerance: &T) -> Result<()> {
        let k = self.rows.len();
        if k != self.cols.len() || k < 2 {
            return Err(Error::InvalidWitness("row and column lists must match".into()));
        }
        if !self.rows.windows(2).all(|w| w[0] < w[1]) || !self.cols.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidWitness("indices must increase".into()));
        }
        if (self.alpha.clone() - self.beta.clone()).abs() < *delta {
            return Err(Error::InvalidWitness("constants closer than delta".into()));
        }
        for (p, &i) in self.rows.iter().enumerate() {
            for (q, &j) in self.cols.iter().enumerate() {
                let v = values
                    .get(i)
                    .and_then(|r| r.get(j))
                    .ok_or_else(|| Error::InvalidWitness(format!("entry ({i}, {j}) missing")))?;
                let target = if p <= q { &self.alpha } else { &self.beta };
                if (v.clone() - target.clone()).abs() > *tail_tolerance {
                    return Err(Error::InvalidWitness(format!("entry ({i}, {j}) off its constant")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone)]
struct Band<T> {
    lo: T,
    hi: T,
}

impl<T: Scalar> Band<T> {
    fn widen(band: &Option<Band<T>>, v: &T) -> Band<T> {
        match band {
            None => Band { lo: v.clone(), hi: v.clone() },
            Some(b) => Band { lo: T::min_of(&b.lo, v), hi: T::max_of(&b.hi, v) },
        }
    }
}

struct Search<'a, T> {
    values: &'a [Vec<T>],
    k: usize,
    delta: T,
    tol: T,
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl<T: Scalar> Search<'_, T> {
    /// Best achievable `|alpha − beta|` given the entry bands, if both bands are tight enough.
    fn gap(&self, upper: &Option<Band<T>>, lower: &Option<Band<T>>) -> Option<(T, T, T)> {
        let tol2 = self.tol.clone() + self.tol.clone();
        let fits = |b: &Option<Band<T>>| b.as_ref().is_none_or(|b| b.hi.clone() - b.lo.clone() <= tol2);
        if !fits(upper) || !fits(lower) {
            return None;
        }
        let (u, l) = match (upper, lower) {
            (Some(u), Some(l)) => (u, l),
            _ => return Some((self.delta.clone(), T::zero(), T::zero())),
        };
        // alpha ∈ [u.hi − tol, u.lo + tol], beta ∈ [l.hi − tol, l.lo + tol]
        let up = u.lo.clone() + self.tol.clone() - (l.hi.clone() - self.tol.clone());
        let down = l.lo.clone() + self.tol.clone() - (u.hi.clone() - self.tol.clone());
        if up >= down {
            Some((up, u.lo.clone() + self.tol.clone(), l.hi.clone() - self.tol.clone()))
        } else {
            Some((down, u.hi.clone() - self.tol.clone(), l.lo.clone() + self.tol.clone()))
        }
    }

    fn extend(&mut self, upper: Option<Band<T>>, lower: Option<Band<T>>) -> Option<DlpWitness<T>> {
        let p = self.rows.len();
        if p == self.k {
            let (_, alpha, beta) = self.gap(&upper, &lower)?;
            return Some(DlpWitness { rows: self.rows.clone(), cols: self.cols.clone(), alpha, beta });
        }
        let first_row = self.rows.last().map_or(0, |r| r + 1);
        let first_col = self.cols.last().map_or(0, |c| c + 1);
        let n_rows = self.values.len();
        let n_cols = self.values[0].len();
        // leave room for the remaining k − p − 1 picks
        for i in first_row..n_rows.saturating_sub(self.k - p - 1) {
            for j in first_col..n_cols.saturating_sub(self.k - p - 1) {
                let mut up = upper.clone();
                for q in 0..p {
                    up = Some(Band::widen(&up, &self.values[self.rows[q]][j]));
                }
                up = Some(Band::widen(&up, &self.values[i][j]));
                let mut low = lower.clone();
                for q in 0..p {
                    low = Some(Band::widen(&low, &self.values[i][self.cols[q]]));
                }
                match self.gap(&up, &low) {
                    Some((g, _, _)) if g >= self.delta => {}
                    _ => continue,
                }
                self.rows.push(i);
                self.cols.push(j);
                if let Some(w) = self.extend(up, low) {
                    return Some(w);
                }
                self.rows.pop();
                self.cols.pop();
            }
        }
        None
    }
}

/// Searches for a `k × k` two-constants submatrix certifying that the iterated
/// limits along some row and column subsequences disagree by at least
/// `delta − 2·tail_tolerance`.
///
/// Exhaustive backtracking in lexicographic order of `(row, column)` picks,
/// pruned as soon as the entries seen so far cannot be split into two bands of
/// width `2·tail_tolerance` at distance `delta`.
pub fn dlp_violation<T: Scalar>(
    values: &[Vec<T>],
    delta: &T,
    tail_tolerance: &T,
    k: usize,
) -> Result<Option<DlpWitness<T>>> {
    let n_rows = values.len();
    let n_cols = values.first().map_or(0, Vec::len);
    if let Some(r) = values.iter().find(|r| r.len() != n_cols) {
        return Err(Error::SizeMismatch { expected: n_cols, found: r.len() });
    }
    if k < 2 || k > n_rows.min(n_cols) {
        return Err(Error::BadSize(format!(
            "k = {k} must lie in 2..={}",
            n_rows.min(n_cols)
        )));
    }
    if !(*delta > T::zero()) {
        return Err(Error::ToleranceNonPositive(delta.approx()));
    }
    if *tail_tolerance < T::zero() {
        return Err(Error::ToleranceNonPositive(tail_tolerance.approx()));
    }
    let mut search = Search {
        values,
        k,
        delta: delta.clone(),
        tol: tail_tolerance.clone(),
        rows: Vec::with_capacity(k),
        cols: Vec::with_capacity(k),
    };
    Ok(search.extend(None, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn staircase(n: usize) -> Vec<Vec<f64>> {
        (0..n).map(|i| (0..n).map(|j| if i <= j { 1.0 } else { 0.0 }).collect()).collect()
    }

    #[test]
    fn staircase_violates_dlp() {
        let m = staircase(5);
        let w = dlp_violation(&m, &0.5, &0.0, 3).unwrap().unwrap();
        assert_eq!((w.alpha, w.beta), (1.0, 0.0));
        w.validate(&m, &0.5, &0.0).unwrap();
    }

    #[test]
    fn constant_matrix_has_no_violation() {
        let m = vec![vec![0.3; 5]; 5];
        assert_eq!(dlp_violation(&m, &0.1, &0.0, 2).unwrap(), None);
    }

    #[test]
    fn repeated_increasing_rows_have_no_violation() {
        let row: Vec<f64> = (0..6).map(|j| j as f64 / 5.0).collect();
        let m = vec![row; 6];
        for k in 2..=4 {
            assert_eq!(dlp_violation(&m, &0.01, &0.0, k).unwrap(), None);
        }
    }

    #[test]
    fn noisy_staircase_needs_tolerance() {
        let mut m = staircase(4);
        m[0][1] = 0.9375;
        m[2][0] = 0.0625;
        assert!(dlp_violation(&m, &0.8, &0.0, 4).unwrap().is_none());
        let w = dlp_violation(&m, &0.8, &0.0625, 4).unwrap().unwrap();
        w.validate(&m, &0.8, &0.0625).unwrap();
    }

    #[test]
    fn bad_sizes() {
        let m = staircase(3);
        assert!(matches!(dlp_violation(&m, &0.5, &0.0, 1), Err(Error::BadSize(_))));
        assert!(matches!(dlp_violation(&m, &0.5, &0.0, 4), Err(Error::BadSize(_))));
        assert!(matches!(dlp_violation(&m, &0.0, &0.0, 2), Err(Error::ToleranceNonPositive(_))));
    }
}
