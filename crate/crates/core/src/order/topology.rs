use std::collections::BTreeSet;
use std::fmt;

use super::{Chain, FinitePoset};
use crate::error::{Error, Result};

/// Largest ground set for which a topology is materialised set by set.
pub const MAX_EXPLICIT_GROUND: usize = 20;

/// A subset of a ground set of at most 64 points, as a bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PointSet(pub u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        PointSet(1u64 << i)
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Self {
        PointSet(points.into_iter().fold(0u64, |m, i| m | (1u64 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        PointSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Outcome of checking the topology axioms on an explicit family of sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TopologyReport {
    Pass,
    OutsideGround(PointSet),
    NotUnionClosed(PointSet, PointSet),
    NotIntersectionClosed(PointSet, PointSet),
    MissingEmpty,
    MissingFull,
}

impl TopologyReport {
    pub fn passed(&self) -> bool {
        matches!(self, TopologyReport::Pass)
    }
}

impl fmt::Display for TopologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyReport::Pass => write!(f, "pass"),
            TopologyReport::OutsideGround(s) => write!(f, "set {s} leaves the ground set"),
            TopologyReport::NotUnionClosed(a, b) => {
                write!(f, "union {} of {a} and {b} is missing", a.union(*b))
            }
            TopologyReport::NotIntersectionClosed(a, b) => {
                write!(f, "intersection {} of {a} and {b} is missing", a.intersection(*b))
            }
            TopologyReport::MissingEmpty => write!(f, "empty set is missing"),
            TopologyReport::MissingFull => write!(f, "full set is missing"),
        }
    }
}

/// Checks pairwise union and intersection closure first, then the presence of
/// the empty and full sets. Reports the first failure in sorted order.
pub fn validate_topology(ground_size: usize, opens: &BTreeSet<PointSet>) -> TopologyReport {
    let full = PointSet::full(ground_size);
    if let Some(s) = opens.iter().find(|s| !s.is_subset(full)) {
        return TopologyReport::OutsideGround(*s);
    }
    let sets: Vec<PointSet> = opens.iter().copied().collect();
    for (i, &a) in sets.iter().enumerate() {
        for &b in &sets[i + 1..] {
            if !opens.contains(&a.union(b)) {
                return TopologyReport::NotUnionClosed(a, b);
            }
            if !opens.contains(&a.intersection(b)) {
                return TopologyReport::NotIntersectionClosed(a, b);
            }
        }
    }
    if !opens.contains(&PointSet::EMPTY) {
        return TopologyReport::MissingEmpty;
    }
    if !opens.contains(&full) {
        return TopologyReport::MissingFull;
    }
    TopologyReport::Pass
}

/// An explicit finite topology.
///
/// Alongside the open sets it keeps the minimal open neighbourhood of every
/// point (the intersection of all opens containing it), which generates the
/// whole topology under unions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    ground_size: usize,
    opens: BTreeSet<PointSet>,
    neighbourhoods: Vec<PointSet>,
}

impl FiniteTopology {
    pub fn new(ground_size: usize, opens: BTreeSet<PointSet>) -> Result<Self> {
        if ground_size == 0 || ground_size > 64 {
            return Err(Error::Invariant(format!("ground size {ground_size} outside 1..=64")));
        }
        let report = validate_topology(ground_size, &opens);
        if !report.passed() {
            return Err(Error::Invariant(format!("not a topology: {report}")));
        }
        let full = PointSet::full(ground_size);
        let neighbourhoods = (0..ground_size)
            .map(|x| {
                opens
                    .iter()
                    .filter(|o| o.contains(x))
                    .fold(full, |acc, o| acc.intersection(*o))
            })
            .collect();
        Ok(FiniteTopology { ground_size, opens, neighbourhoods })
    }

    /// Topology generated by an arbitrary family of subsets used as a subbase.
    pub fn generated_by<I>(ground_size: usize, subbase: I) -> Result<Self>
    where
        I: IntoIterator<Item = PointSet>,
    {
        if ground_size == 0 || ground_size > MAX_EXPLICIT_GROUND {
            return Err(Error::GroundTooLarge { size: ground_size, max: MAX_EXPLICIT_GROUND });
        }
        let full = PointSet::full(ground_size);
        let mut nbhd = vec![full; ground_size];
        for g in subbase {
            let g = g.intersection(full);
            for x in g.iter() {
                nbhd[x] = nbhd[x].intersection(g);
            }
        }
        // opens are exactly the sets containing the minimal neighbourhood of each member
        let opens = (0..=full.0)
            .map(PointSet)
            .filter(|a| a.iter().all(|x| nbhd[x].is_subset(*a)))
            .collect();
        Ok(FiniteTopology { ground_size, opens, neighbourhoods: nbhd })
    }

    pub fn discrete(ground_size: usize) -> Result<Self> {
        Self::generated_by(ground_size, (0..ground_size).map(PointSet::singleton))
    }

    pub fn indiscrete(ground_size: usize) -> Result<Self> {
        Self::generated_by(ground_size, std::iter::empty())
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn opens(&self) -> &BTreeSet<PointSet> {
        &self.opens
    }

    pub fn is_open(&self, s: PointSet) -> bool {
        self.opens.contains(&s)
    }

    /// Smallest open set containing `x`.
    pub fn neighbourhood(&self, x: usize) -> PointSet {
        self.neighbourhoods[x]
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.ground_size)
    }
}

/// Topology generated by the open rays `(a, →)` and `(←, b)` of a chain.
pub fn interval_topology(chain: &Chain) -> Result<FiniteTopology> {
    let n = chain.size();
    let rays = (0..n).flat_map(|a| {
        [PointSet::from_points(a + 1..n), PointSet::from_points(0..a)]
    });
    FiniteTopology::generated_by(n, rays)
}

/// Whether the graph of `poset` is closed in the square of `topology`.
///
/// The complement of the graph is open in the product exactly when it contains
/// `U_i × U_j` for each of its pairs `(i, j)`, `U` being minimal neighbourhoods.
pub fn is_closed_order(poset: &FinitePoset, topology: &FiniteTopology) -> Result<bool> {
    let n = poset.size();
    if n != topology.ground_size() {
        return Err(Error::SizeMismatch { expected: n, found: topology.ground_size() });
    }
    for i in 0..n {
        for j in 0..n {
            if poset.leq(i, j) {
                continue;
            }
            let ui = topology.neighbourhood(i);
            let uj = topology.neighbourhood(j);
            if ui.iter().any(|a| uj.iter().any(|b| poset.leq(a, b))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(list: &[&[usize]]) -> BTreeSet<PointSet> {
        list.iter().map(|s| PointSet::from_points(s.iter().copied())).collect()
    }

    #[test]
    fn nested_family_is_a_topology() {
        assert_eq!(validate_topology(2, &sets(&[&[], &[0], &[0, 1]])), TopologyReport::Pass);
    }

    #[test]
    fn missing_union_is_reported_with_its_pair() {
        let r = validate_topology(2, &sets(&[&[], &[0], &[1]]));
        assert_eq!(r, TopologyReport::NotUnionClosed(PointSet(1), PointSet(2)));
        assert!(FiniteTopology::new(2, sets(&[&[], &[0], &[1]])).is_err());
    }

    #[test]
    fn power_set_is_a_topology() {
        let all: BTreeSet<PointSet> = (0..8u64).map(PointSet).collect();
        assert!(validate_topology(3, &all).passed());
        assert_eq!(FiniteTopology::discrete(3).unwrap().opens(), &all);
    }

    #[test]
    fn interval_topology_of_small_chains() {
        let one = interval_topology(&Chain::new(1).unwrap()).unwrap();
        assert_eq!(one.opens(), &sets(&[&[], &[0]]));
        for n in 2..=7 {
            let t = interval_topology(&Chain::new(n).unwrap()).unwrap();
            assert_eq!(t.opens().len(), 1 << n, "n = {n}");
            assert!(validate_topology(n, t.opens()).passed());
        }
    }

    #[test]
    fn minimal_neighbourhoods() {
        let t = FiniteTopology::new(3, sets(&[&[], &[0], &[0, 1], &[0, 1, 2]])).unwrap();
        assert_eq!(t.neighbourhood(0), PointSet(1));
        assert_eq!(t.neighbourhood(1), PointSet(3));
        assert_eq!(t.neighbourhood(2), PointSet(7));
    }

    /// Oracle: the complement of the graph is a union of open rectangles.
    fn closed_by_rectangles(p: &FinitePoset, t: &FiniteTopology) -> bool {
        let n = p.size();
        let opens: Vec<PointSet> = t.opens().iter().copied().collect();
        let mut covered = vec![false; n * n];
        for &u in &opens {
            for &v in &opens {
                let inside = u.iter().all(|a| v.iter().all(|b| !p.leq(a, b)));
                if inside {
                    for a in u.iter() {
                        for b in v.iter() {
                            covered[a * n + b] = true;
                        }
                    }
                }
            }
        }
        (0..n).all(|i| (0..n).all(|j| p.leq(i, j) || covered[i * n + j]))
    }

    #[test]
    fn closed_order_examples() {
        let chain2 = FinitePoset::chain(2);
        let indiscrete = FiniteTopology::indiscrete(2).unwrap();
        assert!(!is_closed_order(&chain2, &indiscrete).unwrap());
        assert!(!closed_by_rectangles(&chain2, &indiscrete));

        let discrete = FiniteTopology::discrete(3).unwrap();
        assert!(is_closed_order(&FinitePoset::antichain(3), &discrete).unwrap());
        assert!(is_closed_order(&FinitePoset::chain(3), &discrete).unwrap());
        assert!(matches!(
            is_closed_order(&chain2, &discrete),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn closed_order_agrees_with_rectangle_oracle() {
        let posets = [
            FinitePoset::chain(3),
            FinitePoset::antichain(3),
            FinitePoset::from_covers(3, &[(0, 1), (0, 2)]).unwrap(),
        ];
        let topologies = [
            FiniteTopology::indiscrete(3).unwrap(),
            FiniteTopology::discrete(3).unwrap(),
            FiniteTopology::generated_by(3, [PointSet(1), PointSet(6)]).unwrap(),
            FiniteTopology::generated_by(3, [PointSet(1), PointSet(3)]).unwrap(),
            FiniteTopology::generated_by(3, [PointSet(4), PointSet(6)]).unwrap(),
        ];
        for p in &posets {
            for t in &topologies {
                assert_eq!(is_closed_order(p, t).unwrap(), closed_by_rectangles(p, t));
            }
        }
    }

    #[test]
    fn chains_are_closed_in_their_interval_topology() {
        for n in 1..=8 {
            let c = Chain::new(n).unwrap();
            let t = interval_topology(&c).unwrap();
            assert!(is_closed_order(&FinitePoset::chain(n), &t).unwrap());
        }
    }
}
