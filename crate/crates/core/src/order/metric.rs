use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A finite metric space given by its distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace<T> {
    size: usize,
    dist: Vec<T>,
}

impl<T: Scalar> FiniteMetricSpace<T> {
    pub fn new(dist: Vec<Vec<T>>) -> Result<Self> {
        let size = dist.len();
        if size == 0 {
            return Err(Error::Invariant("a metric space has at least one point".into()));
        }
        if let Some(row) = dist.iter().find(|r| r.len() != size) {
            return Err(Error::SizeMismatch { expected: size, found: row.len() });
        }
        for i in 0..size {
            for j in 0..size {
                let d = &dist[i][j];
                if *d < T::zero() {
                    return Err(Error::Invariant(format!("negative distance at ({i}, {j})")));
                }
                if (i == j) != d.is_zero() {
                    return Err(Error::Invariant(format!(
                        "d({i}, {j}) = 0 must hold exactly when the points coincide"
                    )));
                }
                if *d != dist[j][i] {
                    return Err(Error::Invariant(format!("distance not symmetric at ({i}, {j})")));
                }
                for k in 0..size {
                    if dist[i][k] > d.clone() + dist[j][k].clone() {
                        return Err(Error::Invariant(format!(
                            "triangle inequality fails for ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteMetricSpace { size, dist: dist.into_iter().flatten().collect() })
    }

    /// Points of the real line with the absolute-value distance.
    pub fn from_reals(points: &[T]) -> Result<Self> {
        let rows = points
            .iter()
            .map(|x| points.iter().map(|y| (x.clone() - y.clone()).abs()).collect())
            .collect();
        Self::new(rows)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dist(&self, i: usize, j: usize) -> &T {
        &self.dist[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.dist.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn diameter(&self) -> T {
        self.dist.iter().fold(T::zero(), |m, d| T::max_of(&m, d))
    }

    /// Smallest nonzero distance, if there are at least two points.
    pub fn min_positive_distance(&self) -> Option<T> {
        self.dist
            .iter()
            .filter(|d| !d.is_zero())
            .fold(None, |m: Option<T>, d| Some(m.map_or(d.clone(), |m| T::min_of(&m, d))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_metric() {
        let m = FiniteMetricSpace::new(vec![
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 1.0],
            vec![2.0, 1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(m.diameter(), 2.0);
        assert_eq!(m.min_positive_distance(), Some(1.0));
    }

    #[test]
    fn rejects_broken_metrics() {
        assert!(FiniteMetricSpace::new(vec![vec![0.0, 1.0], vec![2.0, 0.0]]).is_err());
        assert!(FiniteMetricSpace::new(vec![vec![0.0, 0.0], vec![0.0, 0.0]]).is_err());
        assert!(FiniteMetricSpace::new(vec![
            vec![0.0, 1.0, 5.0],
            vec![1.0, 0.0, 1.0],
            vec![5.0, 1.0, 0.0],
        ])
        .is_err());
        assert!(FiniteMetricSpace::<f64>::new(vec![]).is_err());
    }
}
