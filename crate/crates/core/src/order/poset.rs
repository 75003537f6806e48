use std::sync::Arc;

use super::Chain;
use crate::bv::FunctionFamily;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A partial order on `0..size`, stored as a dense `≤` matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    size: usize,
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Builds the poset from its full relation; checks the three axioms.
    pub fn new(size: usize, relation: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![false; size * size];
        for &(i, j) in relation {
            if i >= size || j >= size {
                return Err(Error::IndexOutOfRange { index: i.max(j), len: size });
            }
            leq[i * size + j] = true;
        }
        let p = FinitePoset { size, leq };
        p.check()?;
        Ok(p)
    }

    /// Reflexive-transitive closure of `covers`; fails if the closure is not antisymmetric.
    pub fn from_covers(size: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![false; size * size];
        for i in 0..size {
            leq[i * size + i] = true;
        }
        for &(i, j) in covers {
            if i >= size || j >= size {
                return Err(Error::IndexOutOfRange { index: i.max(j), len: size });
            }
            leq[i * size + j] = true;
        }
        for k in 0..size {
            for i in 0..size {
                if leq[i * size + k] {
                    for j in 0..size {
                        if leq[k * size + j] {
                            leq[i * size + j] = true;
                        }
                    }
                }
            }
        }
        let p = FinitePoset { size, leq };
        p.check()?;
        Ok(p)
    }

    pub fn chain(size: usize) -> Self {
        let mut leq = vec![false; size * size];
        for i in 0..size {
            for j in i..size {
                leq[i * size + j] = true;
            }
        }
        FinitePoset { size, leq }
    }

    pub fn antichain(size: usize) -> Self {
        let mut leq = vec![false; size * size];
        for i in 0..size {
            leq[i * size + i] = true;
        }
        FinitePoset { size, leq }
    }

    fn check(&self) -> Result<()> {
        if self.size == 0 {
            return Err(Error::Invariant("a poset has at least one point".into()));
        }
        let n = self.size;
        for i in 0..n {
            if !self.leq(i, i) {
                return Err(Error::Invariant(format!("relation is not reflexive at {i}")));
            }
            for j in 0..n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return Err(Error::Invariant(format!(
                        "relation is not antisymmetric at ({i}, {j})"
                    )));
                }
                for k in 0..n {
                    if self.leq(i, j) && self.leq(j, k) && !self.leq(i, k) {
                        return Err(Error::Invariant(format!(
                            "relation is not transitive at ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.size + j]
    }

    /// All pairs `(i, j)` with `i ≤ j`.
    pub fn relation(&self) -> Vec<(usize, usize)> {
        (0..self.size)
            .flat_map(|i| (0..self.size).map(move |j| (i, j)))
            .filter(|&(i, j)| self.leq(i, j))
            .collect()
    }

    /// The principal up-set `{y : x ≤ y}`.
    pub fn up_set(&self, x: usize) -> Vec<bool> {
        (0..self.size).map(|y| self.leq(x, y)).collect()
    }
}

/// Indicators of the principal up-sets of `poset`, one per point, as a
/// `[0, 1]`-valued family on the ground set `0..size`.
///
/// Each indicator is increasing, and for `x ≠ y` the up-set of one of them
/// contains exactly one of the two points.
pub fn separating_family<T: Scalar>(poset: &FinitePoset) -> FunctionFamily<T> {
    let chain = Arc::new(Chain::new(poset.size()).expect("posets are nonempty"));
    let rows = (0..poset.size())
        .map(|x| {
            poset
                .up_set(x)
                .into_iter()
                .map(|inside| if inside { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    FunctionFamily::new(chain, (T::zero(), T::one()), rows).expect("indicators lie in [0, 1]")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> FinitePoset {
        FinitePoset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn axioms_are_checked() {
        assert!(FinitePoset::new(2, &[(0, 0), (1, 1), (0, 1)]).is_ok());
        assert!(FinitePoset::new(2, &[(0, 0), (0, 1)]).is_err());
        assert!(FinitePoset::new(2, &[(0, 0), (1, 1), (0, 1), (1, 0)]).is_err());
        assert!(FinitePoset::new(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]).is_err());
        assert!(FinitePoset::from_covers(2, &[(0, 1), (1, 0)]).is_err());
        assert_eq!(diamond().relation().len(), 9);
    }

    #[test]
    fn antichain_indicators() {
        let fam = separating_family::<f64>(&FinitePoset::antichain(2));
        assert_eq!(fam.len(), 2);
        assert_eq!(fam.member(0).values(), &[1.0, 0.0]);
        assert_eq!(fam.member(1).values(), &[0.0, 1.0]);
    }

    #[test]
    fn chain_indicators() {
        let fam = separating_family::<f64>(&FinitePoset::chain(3));
        let rows: Vec<&[f64]> = fam.members().iter().map(|m| m.values()).collect();
        assert_eq!(rows, vec![&[1.0, 1.0, 1.0][..], &[0.0, 1.0, 1.0], &[0.0, 0.0, 1.0]]);
    }

    fn increasing_and_separating(p: &FinitePoset) {
        let fam = separating_family::<f64>(p);
        let n = p.size();
        for h in fam.members() {
            for x in 0..n {
                for y in 0..n {
                    if p.leq(x, y) {
                        assert!(h.value(x) <= h.value(y));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y {
                    assert!(fam.members().iter().any(|h| h.value(x) != h.value(y)));
                }
            }
        }
    }

    #[test]
    fn diamond_is_separated() {
        let p = diamond();
        assert_eq!(separating_family::<f64>(&p).len(), 4);
        increasing_and_separating(&p);
    }

    #[test]
    fn separation_on_assorted_posets() {
        increasing_and_separating(&FinitePoset::chain(5));
        increasing_and_separating(&FinitePoset::antichain(4));
        increasing_and_separating(&FinitePoset::from_covers(5, &[(0, 2), (1, 2), (2, 3), (2, 4)]).unwrap());
    }
}
