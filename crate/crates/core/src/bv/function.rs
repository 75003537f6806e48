use std::sync::Arc;

use crate::error::{Error, Result};
use crate::order::{Chain, FiniteMetricSpace};
use crate::scalar::{extent, Scalar};

/// A real-valued function on a chain with a declared range `[c, d]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainFunction<T> {
    chain: Arc<Chain>,
    values: Vec<T>,
    range: (T, T),
}

impl<T: Scalar> ChainFunction<T> {
    pub fn new(chain: Arc<Chain>, values: Vec<T>, range: (T, T)) -> Result<Self> {
        if values.len() != chain.size() {
            return Err(Error::SizeMismatch { expected: chain.size(), found: values.len() });
        }
        let (c, d) = &range;
        if c > d {
            return Err(Error::Invariant(format!("range [{c}, {d}] is empty")));
        }
        if let Some(i) = values.iter().position(|v| v < c || v > d) {
            return Err(Error::Invariant(format!(
                "value {} at point {i} lies outside the range [{c}, {d}]",
                values[i]
            )));
        }
        Ok(ChainFunction { chain, values, range })
    }

    /// A function whose declared range is the span of its values.
    pub fn fitted(chain: Arc<Chain>, values: Vec<T>) -> Result<Self> {
        let range =
            extent(&values).ok_or(Error::SizeMismatch { expected: chain.size(), found: 0 })?;
        Self::new(chain, values, range)
    }

    pub fn chain(&self) -> &Arc<Chain> {
        &self.chain
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value(&self, point: usize) -> &T {
        &self.values[point]
    }

    pub fn range(&self) -> &(T, T) {
        &self.range
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// First point `i` with `f(i) > f(i + 1)`, if any.
    pub fn first_descent(&self) -> Option<usize> {
        self.values.windows(2).position(|w| w[0] > w[1])
    }

    pub fn is_increasing(&self) -> bool {
        self.first_descent().is_none()
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|v| *v == self.values[0])
    }

    /// `alpha · f`, with the range scaled (and flipped for negative `alpha`).
    pub fn scaled(&self, alpha: &T) -> Self {
        let values = self.values.iter().map(|v| v.clone() * alpha.clone()).collect();
        let (c, d) = (self.range.0.clone() * alpha.clone(), self.range.1.clone() * alpha.clone());
        let range = if c <= d { (c, d) } else { (d, c) };
        ChainFunction { chain: self.chain.clone(), values, range }
    }

    /// Pointwise sum, with the Minkowski sum of the ranges.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.chain != other.chain {
            return Err(Error::Invariant("functions live on different chains".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        let range = (
            self.range.0.clone() + other.range.0.clone(),
            self.range.1.clone() + other.range.1.clone(),
        );
        Ok(ChainFunction { chain: self.chain.clone(), values, range })
    }

    /// Same values on the same chain under another declared range.
    pub fn with_range(&self, range: (T, T)) -> Result<Self> {
        Self::new(self.chain.clone(), self.values.clone(), range)
    }
}

/// An ordered list of functions on one chain sharing a common range.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionFamily<T> {
    chain: Arc<Chain>,
    range: (T, T),
    members: Vec<ChainFunction<T>>,
}

impl<T: Scalar> FunctionFamily<T> {
    pub fn new(chain: Arc<Chain>, range: (T, T), rows: Vec<Vec<T>>) -> Result<Self> {
        if range.0 > range.1 {
            return Err(Error::Invariant("family range is empty".into()));
        }
        let members = rows
            .into_iter()
            .map(|values| ChainFunction::new(chain.clone(), values, range.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(FunctionFamily { chain, range, members })
    }

    pub fn empty(chain: Arc<Chain>, range: (T, T)) -> Result<Self> {
        Self::new(chain, range, Vec::new())
    }

    /// Collects existing functions; each must live on `chain` and inside `range`.
    pub fn from_members(
        chain: Arc<Chain>,
        range: (T, T),
        members: Vec<ChainFunction<T>>,
    ) -> Result<Self> {
        let rows = members
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                if *m.chain() != chain {
                    Err(Error::Invariant(format!("member {i} lives on a different chain")))
                } else {
                    Ok(m.values)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(chain, range, rows)
    }

    pub fn chain(&self) -> &Arc<Chain> {
        &self.chain
    }

    pub fn range(&self) -> &(T, T) {
        &self.range
    }

    pub fn members(&self) -> &[ChainFunction<T>] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &ChainFunction<T> {
        &self.members[i]
    }

    pub fn value(&self, member: usize, point: usize) -> &T {
        &self.members[member].values[point]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.members.iter().map(|m| m.values.clone()).collect()
    }

    pub fn push(&mut self, values: Vec<T>) -> Result<()> {
        self.members.push(ChainFunction::new(self.chain.clone(), values, self.range.clone())?);
        Ok(())
    }

    /// Members at `indices`, in the given order.
    pub fn subfamily(&self, indices: &[usize]) -> Result<Self> {
        let members = indices
            .iter()
            .map(|&i| {
                self.members
                    .get(i)
                    .cloned()
                    .ok_or(Error::IndexOutOfRange { index: i, len: self.len() })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FunctionFamily { chain: self.chain.clone(), range: self.range.clone(), members })
    }

    pub fn scaled(&self, alpha: &T) -> Self {
        let (c, d) = (self.range.0.clone() * alpha.clone(), self.range.1.clone() * alpha.clone());
        let range = if c <= d { (c, d) } else { (d, c) };
        let members = self
            .members
            .iter()
            .map(|m| ChainFunction { range: range.clone(), ..m.scaled(alpha) })
            .collect();
        FunctionFamily { chain: self.chain.clone(), range, members }
    }

    /// Largest absolute value taken by any member.
    pub fn sup_norm(&self) -> T {
        self.members
            .iter()
            .flat_map(|m| m.values.iter())
            .fold(T::zero(), |acc, v| T::max_of(&acc, &v.abs()))
    }
}

/// A map from a chain into a finite metric space, stored as target indices.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricChainFunction<T> {
    chain: Arc<Chain>,
    target: Arc<FiniteMetricSpace<T>>,
    values: Vec<usize>,
}

impl<T: Scalar> MetricChainFunction<T> {
    pub fn new(
        chain: Arc<Chain>,
        target: Arc<FiniteMetricSpace<T>>,
        values: Vec<usize>,
    ) -> Result<Self> {
        if values.len() != chain.size() {
            return Err(Error::SizeMismatch { expected: chain.size(), found: values.len() });
        }
        if let Some(&bad) = values.iter().find(|&&v| v >= target.size()) {
            return Err(Error::IndexOutOfRange { index: bad, len: target.size() });
        }
        Ok(MetricChainFunction { chain, target, values })
    }

    pub fn chain(&self) -> &Arc<Chain> {
        &self.chain
    }

    pub fn target(&self) -> &Arc<FiniteMetricSpace<T>> {
        &self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `h ∘ f` for a function `h` given by its values on the target points.
    pub fn compose(&self, h: &ChainFunction<T>) -> Result<ChainFunction<T>> {
        if h.len() != self.target.size() {
            return Err(Error::SizeMismatch { expected: self.target.size(), found: h.len() });
        }
        let values = self.values.iter().map(|&y| h.value(y).clone()).collect();
        ChainFunction::new(self.chain.clone(), values, h.range().clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Arc<Chain> {
        Arc::new(Chain::new(n).unwrap())
    }

    #[test]
    fn values_must_fit_range_and_chain() {
        assert!(ChainFunction::new(chain(2), vec![0.0, 1.5], (0.0, 1.0)).is_err());
        assert!(ChainFunction::new(chain(3), vec![0.0, 1.0], (0.0, 1.0)).is_err());
        assert!(ChainFunction::new(chain(2), vec![0.5, 0.5], (1.0, 0.0)).is_err());
        let f = ChainFunction::fitted(chain(3), vec![0.5, -1.0, 2.0]).unwrap();
        assert_eq!(f.range(), &(-1.0, 2.0));
        assert_eq!(f.first_descent(), Some(0));
    }

    #[test]
    fn scaling_flips_range() {
        let f = ChainFunction::new(chain(2), vec![0.0, 1.0], (0.0, 1.0)).unwrap();
        let g = f.scaled(&-2.0);
        assert_eq!(g.values(), &[-0.0, -2.0]);
        assert_eq!(g.range(), &(-2.0, -0.0));
    }

    #[test]
    fn family_members_share_chain() {
        let c = chain(2);
        let other = ChainFunction::new(chain(3), vec![0.0; 3], (0.0, 1.0)).unwrap();
        assert!(FunctionFamily::from_members(c.clone(), (0.0, 1.0), vec![other]).is_err());
        let fam =
            FunctionFamily::new(c, (0.0, 1.0), vec![vec![0.0, 1.0], vec![0.5, 0.5]]).unwrap();
        assert_eq!(fam.subfamily(&[1]).unwrap().member(0).values(), &[0.5, 0.5]);
        assert!(fam.subfamily(&[2]).is_err());
        assert_eq!(fam.sup_norm(), 1.0);
    }

    #[test]
    fn metric_function_indices_checked() {
        let m = Arc::new(FiniteMetricSpace::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap());
        assert!(MetricChainFunction::new(chain(2), m.clone(), vec![0, 2]).is_err());
        assert!(MetricChainFunction::new(chain(2), m, vec![0, 1]).is_ok());
    }
}
