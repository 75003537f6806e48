use crate::bv::FunctionFamily;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A full sign pattern over `k` selected members, as a bit mask.
///
/// Bit `k - 1 - j` is set when the `j`-th selected member must lie above `b`
/// (the `M` side) and clear when it must lie below `a` (the `P` side), so that
/// ascending masks enumerate patterns lexicographically with "below" first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    pub mask: u64,
    pub width: usize,
}

impl Pattern {
    pub fn is_above(&self, j: usize) -> bool {
        self.mask >> (self.width - 1 - j) & 1 == 1
    }

    /// Positions (into the selected indices) constrained below `a`.
    pub fn below(&self) -> Vec<usize> {
        (0..self.width).filter(|&j| !self.is_above(j)).collect()
    }

    /// Positions constrained above `b`.
    pub fn above(&self) -> Vec<usize> {
        (0..self.width).filter(|&j| self.is_above(j)).collect()
    }

    /// The pattern with every side flipped.
    pub fn swapped(&self) -> Pattern {
        Pattern { mask: !self.mask & ((1u64 << self.width) - 1), width: self.width }
    }
}

/// Thresholds `a < b` and a chain point realising every full sign pattern on
/// the selected members.
#[derive(Debug, Clone, PartialEq)]
pub struct IndependenceWitness<T> {
    pub indices: Vec<usize>,
    pub a: T,
    pub b: T,
    /// `pattern_points[mask]` realises the pattern with that mask.
    pub pattern_points: Vec<usize>,
}

impl<T: Scalar> IndependenceWitness<T> {
    pub fn k(&self) -> usize {
        self.indices.len()
    }

    pub fn point_for(&self, pattern: Pattern) -> usize {
        self.pattern_points[pattern.mask as usize]
    }

    pub fn patterns(&self) -> impl Iterator<Item = Pattern> + '_ {
        let width = self.k();
        (0..1u64 << width).map(move |mask| Pattern { mask, width })
    }

    /// Re-checks every stored point against the raw values with strict `<` and `>`.
    pub fn validate(&self, family: &FunctionFamily<T>) -> Result<()> {
        if !(self.a < self.b) {
            return Err(Error::InvalidWitness("thresholds are not ordered".into()));
        }
        check_indices(family, &self.indices)?;
        if self.pattern_points.len() != 1usize << self.k() {
            return Err(Error::InvalidWitness("wrong number of pattern points".into()));
        }
        for p in self.patterns() {
            let x = self.point_for(p);
            if x >= family.chain().size() {
                return Err(Error::InvalidWitness(format!("point {x} is not on the chain")));
            }
            for (j, &i) in self.indices.iter().enumerate() {
                let v = family.value(i, x);
                let ok = if p.is_above(j) { *v > self.b } else { *v < self.a };
                if !ok {
                    return Err(Error::InvalidWitness(format!(
                        "point {x} does not realise pattern {:0w$b} at member {i}",
                        p.mask,
                        w = p.width
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Result of testing one subfamily at fixed thresholds.
#[derive(Debug, Clone, PartialEq)]
pub enum IndependenceCheck<T> {
    Independent(IndependenceWitness<T>),
    /// The lexicographically first pattern with an empty region.
    Refused(Pattern),
}

impl<T> IndependenceCheck<T> {
    pub fn witness(self) -> Option<IndependenceWitness<T>> {
        match self {
            IndependenceCheck::Independent(w) => Some(w),
            IndependenceCheck::Refused(_) => None,
        }
    }
}

fn check_indices<T: Scalar>(family: &FunctionFamily<T>, indices: &[usize]) -> Result<()> {
    if indices.is_empty() {
        return Err(Error::BadIndices("no members selected".into()));
    }
    if indices.len() > 63 {
        return Err(Error::BadIndices("at most 63 members can be selected".into()));
    }
    for (n, &i) in indices.iter().enumerate() {
        if i >= family.len() {
            return Err(Error::BadIndices(format!("member {i} does not exist")));
        }
        if indices[..n].contains(&i) {
            return Err(Error::BadIndices(format!("member {i} selected twice")));
        }
    }
    Ok(())
}

/// For each chain point, the full pattern it realises (if any), then the first
/// point found for each pattern. Patterns with no point stay `None`.
fn realised_patterns<T: Scalar>(
    family: &FunctionFamily<T>,
    indices: &[usize],
    a: &T,
    b: &T,
) -> Vec<Option<usize>> {
    let k = indices.len();
    let mut found = vec![None; 1usize << k];
    'points: for x in family.chain().points() {
        let mut mask = 0u64;
        for &i in indices {
            let v = family.value(i, x);
            mask <<= 1;
            if *v > *b {
                mask |= 1;
            } else if !(*v < *a) {
                continue 'points;
            }
        }
        found[mask as usize].get_or_insert(x);
    }
    found
}

/// Tests whether the selected members are independent at thresholds `(a, b)`.
///
/// Only the `2^k` full patterns are checked: the region of a partial pattern
/// contains the region of every full pattern extending it.
pub fn independence_at<T: Scalar>(
    family: &FunctionFamily<T>,
    indices: &[usize],
    a: &T,
    b: &T,
) -> Result<IndependenceCheck<T>> {
    if !(a < b) {
        return Err(Error::BadThresholds { a: a.approx(), b: b.approx() });
    }
    check_indices(family, indices)?;
    let width = indices.len();
    let found = realised_patterns(family, indices, a, b);
    if let Some(mask) = found.iter().position(Option::is_none) {
        return Ok(IndependenceCheck::Refused(Pattern { mask: mask as u64, width }));
    }
    Ok(IndependenceCheck::Independent(IndependenceWitness {
        indices: indices.to_vec(),
        a: a.clone(),
        b: b.clone(),
        pattern_points: found.into_iter().map(Option::unwrap).collect(),
    }))
}

/// Candidate thresholds: for each gap `(v_i, v_{i+1})` between consecutive
/// distinct pooled values, its two trisection points.
///
/// Pattern regions only change when a threshold crosses a value, and shrinking
/// `b` or growing `a` only enlarges them, so within the ordering "a ascending,
/// then b ascending" the first feasible pair is always the trisection pair of
/// the lowest feasible gap.
pub fn threshold_gaps<T: Scalar>(family: &FunctionFamily<T>) -> Vec<(T, T)> {
    let mut values: Vec<T> = family.members().iter().flat_map(|m| m.values().iter().cloned()).collect();
    values.sort_by(|x, y| x.partial_cmp(y).expect("values are comparable"));
    values.dedup();
    let three = T::one() + T::two();
    values
        .windows(2)
        .map(|w| {
            let step = (w[1].clone() - w[0].clone()) / three.clone();
            (w[0].clone() + step.clone(), w[0].clone() + step.clone() + step)
        })
        .collect()
}

/// Lexicographic `k`-subsets of `0..n`.
pub(crate) fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let c = current.as_mut().unwrap();
        let mut i = k;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Searches every `k`-subset (lexicographically) at every candidate threshold
/// pair for an independent subfamily.
///
/// `None` certifies that no `k` members are independent at any `a < b`. This is
/// the finite stand-in for tameness: a family of `n` functions is "tame at `k`"
/// when this returns `None`.
pub fn independence_search<T: Scalar>(
    family: &FunctionFamily<T>,
    k: usize,
) -> Result<Option<IndependenceWitness<T>>> {
    if k == 0 || k > family.len() || k > 63 {
        return Err(Error::BadSize(format!(
            "subfamily size {k} must lie in 1..={}",
            family.len().min(63)
        )));
    }
    let gaps = threshold_gaps(family);
    for subset in combinations(family.len(), k) {
        for (a, b) in &gaps {
            let found = realised_patterns(family, &subset, a, b);
            if found.iter().all(Option::is_some) {
                return Ok(Some(IndependenceWitness {
                    indices: subset,
                    a: a.clone(),
                    b: b.clone(),
                    pattern_points: found.into_iter().map(Option::unwrap).collect(),
                }));
            }
        }
    }
    Ok(None)
}

/// Largest `k` with an independent `k`-subfamily, with its witness.
///
/// Independence passes to subfamilies, so the scan stops at the first failure.
pub fn max_independent_size<T: Scalar>(
    family: &FunctionFamily<T>,
) -> (usize, Option<IndependenceWitness<T>>) {
    let mut best = (0, None);
    for k in 1..=family.len().min(63) {
        match independence_search(family, k) {
            Ok(Some(w)) => best = (k, Some(w)),
            _ => break,
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Chain;
    use std::sync::Arc;

    fn family(rows: Vec<Vec<f64>>, range: (f64, f64)) -> FunctionFamily<f64> {
        let chain = Arc::new(Chain::new(rows[0].len()).unwrap());
        FunctionFamily::new(chain, range, rows).unwrap()
    }

    fn cantor2() -> FunctionFamily<f64> {
        family(vec![vec![0.0, 0.0, 1.0, 1.0], vec![0.0, 1.0, 0.0, 1.0]], (0.0, 1.0))
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<_> = combinations(4, 2).collect();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(3, 3).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
    }

    #[test]
    fn cantor_pair_is_independent() {
        let fam = cantor2();
        let w = independence_at(&fam, &[0, 1], &0.25, &0.75).unwrap().witness().unwrap();
        assert_eq!(w.pattern_points, vec![0, 1, 2, 3]);
        w.validate(&fam).unwrap();
    }

    #[test]
    fn increasing_pair_is_refused() {
        let fam = family(vec![vec![0.0, 0.3, 0.6, 1.0], vec![0.1, 0.2, 0.9, 0.95]], (0.0, 1.0));
        for (a, b) in [(0.25, 0.75), (0.15, 0.25), (0.5, 0.55)] {
            assert!(matches!(
                independence_at(&fam, &[0, 1], &a, &b).unwrap(),
                IndependenceCheck::Refused(_)
            ));
        }
        assert_eq!(independence_search(&fam, 2).unwrap(), None);
    }

    #[test]
    fn constant_refusal_names_first_pattern() {
        let fam = family(vec![vec![0.5, 0.5, 0.5]], (0.0, 1.0));
        let check = independence_at(&fam, &[0], &0.25, &0.75).unwrap();
        let p = Pattern { mask: 0, width: 1 };
        assert_eq!(check, IndependenceCheck::Refused(p));
        assert_eq!(p.below(), vec![0]);
    }

    #[test]
    fn two_valued_singleton_is_independent() {
        let fam = family(vec![vec![0.2, 0.2, 0.8]], (0.0, 1.0));
        let w = independence_search(&fam, 1).unwrap().unwrap();
        assert!(w.a > 0.2 && w.b < 0.8 && w.a < w.b);
        w.validate(&fam).unwrap();
        assert_eq!(max_independent_size(&fam).0, 1);
    }

    #[test]
    fn errors_on_bad_arguments() {
        let fam = cantor2();
        assert!(matches!(independence_at(&fam, &[0, 1], &0.5, &0.5), Err(Error::BadThresholds { .. })));
        assert!(matches!(independence_at(&fam, &[0, 0], &0.2, &0.5), Err(Error::BadIndices(_))));
        assert!(matches!(independence_at(&fam, &[5], &0.2, &0.5), Err(Error::BadIndices(_))));
        assert!(matches!(independence_search(&fam, 0), Err(Error::BadSize(_))));
        assert!(matches!(independence_search(&fam, 3), Err(Error::BadSize(_))));
    }

    #[test]
    fn all_constant_family_has_no_independent_member() {
        let fam = family(vec![vec![0.1; 4], vec![0.7; 4]], (0.0, 1.0));
        assert_eq!(max_independent_size(&fam), (0, None));
    }

    #[test]
    fn tampered_witness_fails_validation() {
        let fam = cantor2();
        let mut w = independence_at(&fam, &[0, 1], &0.25, &0.75).unwrap().witness().unwrap();
        w.pattern_points.swap(0, 3);
        assert!(matches!(w.validate(&fam), Err(Error::InvalidWitness(_))));
    }
}
