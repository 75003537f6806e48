use std::collections::HashSet;
use std::ops::Range;

use crate::error::{Error, Result};

/// A finite linearly ordered set. Points are addressed by rank `0..size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    size: usize,
    labels: Option<Vec<String>>,
}

impl Chain {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Invariant("a chain has at least one point".into()));
        }
        Ok(Chain { size, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Invariant("a chain has at least one point".into()));
        }
        let distinct: HashSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::Invariant("chain labels must be distinct".into()));
        }
        Ok(Chain { size: labels.len(), labels: Some(labels) })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn points(&self) -> Range<usize> {
        0..self.size
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.size {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, len: self.size })
        }
    }
}

/// Disjoint open neighbourhoods `lower ∋ u1`, `upper ∋ u2` with `lower < upper`.
///
/// Both are rays, so they are kept as index ranges: `lower` is `(←, t)` and
/// `upper` is `(s, →)` for the cut points chosen by [`order_separate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub lower: Range<usize>,
    pub upper: Range<usize>,
}

/// Separates `u1 < u2` by rays. With nothing strictly between them the rays are
/// `(←, u2)` and `(u1, →)`; otherwise both rays are cut at the least point `t`
/// of the open interval `(u1, u2)`.
pub fn order_separate(chain: &Chain, u1: usize, u2: usize) -> Result<Separation> {
    chain.check_index(u1)?;
    chain.check_index(u2)?;
    if u1 >= u2 {
        return Err(Error::NotStrictlyOrdered(u1, u2));
    }
    let n = chain.size();
    if u2 == u1 + 1 {
        Ok(Separation { lower: 0..u2, upper: u1 + 1..n })
    } else {
        let t = u1 + 1;
        Ok(Separation { lower: 0..t, upper: t + 1..n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separates_adjacent_points_by_rays() {
        let c = Chain::new(2).unwrap();
        let s = order_separate(&c, 0, 1).unwrap();
        assert_eq!(s.lower, 0..1);
        assert_eq!(s.upper, 1..2);
    }

    #[test]
    fn separates_through_least_intermediate_point() {
        let c = Chain::new(3).unwrap();
        let s = order_separate(&c, 0, 2).unwrap();
        assert_eq!((s.lower, s.upper), (0..1, 2..3));

        let c = Chain::new(5).unwrap();
        let s = order_separate(&c, 1, 4).unwrap();
        assert_eq!((s.lower, s.upper), (0..2, 3..5));
    }

    #[test]
    fn rejects_unordered_points() {
        let c = Chain::new(3).unwrap();
        assert_eq!(order_separate(&c, 2, 1), Err(Error::NotStrictlyOrdered(2, 1)));
        assert_eq!(order_separate(&c, 1, 1), Err(Error::NotStrictlyOrdered(1, 1)));
        assert!(matches!(order_separate(&c, 0, 3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn labels_must_be_distinct() {
        assert!(Chain::with_labels(vec!["a".into(), "a".into()]).is_err());
        let c = Chain::with_labels(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(c.size(), 2);
        assert_eq!(c.label(1), "b");
        assert!(Chain::new(0).is_err());
    }
}
