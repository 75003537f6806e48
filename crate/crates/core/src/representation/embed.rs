use std::collections::BTreeSet;
use std::sync::Arc;

use crate::bv::FunctionFamily;
use crate::error::{Error, Result};
use crate::order::Chain;
use crate::scalar::Scalar;

fn separated<T: Scalar>(rows: &[Vec<T>], x: usize, y: usize) -> bool {
    rows.iter().any(|r| r[x] != r[y])
}

/// Appends indicators of upper sets `{x : y ≤ x}` (valued `c` below, `d` from
/// `y` on) until every two chain points are told apart by some member. Upper
/// points are visited in ascending order. A degenerate range `[c, c]` is
/// widened to `[c, c + 1]` so the indicators can separate anything.
pub fn augment_separating<T: Scalar>(family: &FunctionFamily<T>) -> FunctionFamily<T> {
    augment_with_log(family).0
}

fn augment_with_log<T: Scalar>(family: &FunctionFamily<T>) -> (FunctionFamily<T>, Vec<usize>) {
    let n = family.chain().size();
    let mut rows = family.rows();
    let (c, mut d) = family.range().clone();
    if c == d {
        d = c.clone() + T::one();
    }
    let mut appended = Vec::new();
    for y in 1..n {
        if (0..y).all(|x| separated(&rows, x, y)) {
            continue;
        }
        rows.push((0..n).map(|x| if x < y { c.clone() } else { d.clone() }).collect());
        appended.push(y);
    }
    if appended.is_empty() {
        return (family.clone(), appended);
    }
    let out = FunctionFamily::new(family.chain().clone(), (c, d), rows).expect("indicators lie in the range");
    (out, appended)
}

/// The diagonal map `ν(x) = (f_i(x))_i` into the product of ranges, with the
/// product order `u ≤ v ⟺ u_i ≤ v_i for all i` restricted to the image.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingResult<T> {
    pub source: Arc<Chain>,
    pub family: FunctionFamily<T>,
    /// `image_points[x]` is `ν(x)`.
    pub image_points: Vec<Vec<T>>,
    /// Pairs `(p, q)` of image indices with `ν(p) ≤ ν(q)`.
    pub induced_relation: BTreeSet<(usize, usize)>,
    /// `extensions[i][p]` is the coordinate projection `F_i` at image point `p`.
    pub extensions: Vec<Vec<T>>,
    /// Upper points whose indicators were appended.
    pub appended: Vec<usize>,
}

impl<T: Scalar> EmbeddingResult<T> {
    /// Builds image, product order and projections without any checks.
    pub fn from_parts(family: FunctionFamily<T>, appended: Vec<usize>) -> Self {
        let source = family.chain().clone();
        let n = source.size();
        let image_points: Vec<Vec<T>> =
            (0..n).map(|x| family.members().iter().map(|f| f.value(x).clone()).collect()).collect();
        let mut induced_relation = BTreeSet::new();
        for p in 0..n {
            for q in 0..n {
                if product_leq(&image_points[p], &image_points[q]) {
                    induced_relation.insert((p, q));
                }
            }
        }
        let extensions = family.rows();
        EmbeddingResult { source, family, image_points, induced_relation, extensions, appended }
    }

    pub fn related(&self, p: usize, q: usize) -> bool {
        self.induced_relation.contains(&(p, q))
    }
}

fn product_leq<T: Scalar>(u: &[T], v: &[T]) -> bool {
    u.iter().zip(v).all(|(a, b)| a <= b)
}

/// Builds the diagonal embedding of an increasing family, optionally
/// augmenting it first so that `ν` is injective.
pub fn diagonal_embed<T: Scalar>(
    chain: &Arc<Chain>,
    family: &FunctionFamily<T>,
    auto_augment: bool,
) -> Result<EmbeddingResult<T>> {
    if family.chain() != chain {
        return Err(Error::SizeMismatch { expected: chain.size(), found: family.chain().size() });
    }
    for (member, f) in family.members().iter().enumerate() {
        if let Some(at) = f.first_descent() {
            return Err(Error::NotMonotone { member, at });
        }
    }
    let (family, appended) =
        if auto_augment { augment_with_log(family) } else { (family.clone(), Vec::new()) };
    // increasing members: equal values at x < y force equality in between
    for x in 1..chain.size() {
        if !separated(&family.rows(), x - 1, x) {
            return Err(Error::NotSeparating(x - 1, x));
        }
    }
    Ok(EmbeddingResult::from_parts(family, appended))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Counterexample<T> {
    NotReflexive(usize),
    /// Distinct points related both ways.
    Cycle(usize, usize),
    NotTransitive(usize, usize, usize),
    Incomparable(usize, usize),
    ExtensionNotIncreasing { member: usize, lower: usize, upper: usize },
    ExtensionMismatch { member: usize, point: usize, expected: T, found: T },
    /// The relation differs from the product order at this pair.
    NotProductOrder(usize, usize),
    /// Chain points `x < y` that are not strictly ordered in the image.
    OrderNotPreserved(usize, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClaimReport<T> {
    /// The relation is a partial order on the image.
    pub partial_order: Option<Counterexample<T>>,
    /// Closedness of the order in the square. On a finite image every subset
    /// is closed, so this always holds and is flagged vacuous.
    pub closed_vacuous: bool,
    /// The relation is total on the image.
    pub linear: Option<Counterexample<T>>,
    /// Each projection is increasing and restricts to its member.
    pub extensions: Option<Counterexample<T>>,
    /// Product and interval topologies on a finite image are both discrete.
    pub topology_degenerate: bool,
    /// Density of the image is unfalsifiable: a finite image is its own closure.
    pub density_vacuous: bool,
    pub product_order: Option<Counterexample<T>>,
    pub order_fidelity: Option<Counterexample<T>>,
}

impl<T> ClaimReport<T> {
    /// Substantive claims: partial order, linearity, extensions.
    pub fn substantive_pass(&self) -> bool {
        self.partial_order.is_none() && self.linear.is_none() && self.extensions.is_none()
    }

    pub fn all_pass(&self) -> bool {
        self.substantive_pass() && self.product_order.is_none() && self.order_fidelity.is_none()
    }
}

pub fn verify_claims<T: Scalar>(e: &EmbeddingResult<T>) -> ClaimReport<T> {
    let n = e.image_points.len();
    let rel = |p, q| e.related(p, q);

    let partial_order = (0..n)
        .find(|&p| !rel(p, p))
        .map(Counterexample::NotReflexive)
        .or_else(|| {
            e.induced_relation
                .iter()
                .find(|&&(p, q)| p != q && rel(q, p))
                .map(|&(p, q)| Counterexample::Cycle(p, q))
        })
        .or_else(|| {
            e.induced_relation.iter().find_map(|&(p, q)| {
                (0..n).find(|&r| rel(q, r) && !rel(p, r)).map(|r| Counterexample::NotTransitive(p, q, r))
            })
        });

    let linear = (0..n)
        .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
        .find(|&(p, q)| !rel(p, q) && !rel(q, p))
        .map(|(p, q)| Counterexample::Incomparable(p, q));

    let mut extensions = None;
    'members: for (i, ext) in e.extensions.iter().enumerate() {
        for &(p, q) in &e.induced_relation {
            if ext[p] > ext[q] {
                extensions = Some(Counterexample::ExtensionNotIncreasing { member: i, lower: p, upper: q });
                break 'members;
            }
        }
        for x in 0..n.min(e.family.chain().size()) {
            let expected = e.family.value(i, x);
            if ext[x] != *expected {
                extensions = Some(Counterexample::ExtensionMismatch {
                    member: i,
                    point: x,
                    expected: expected.clone(),
                    found: ext[x].clone(),
                });
                break 'members;
            }
        }
    }

    let product_order = (0..n)
        .flat_map(|p| (0..n).map(move |q| (p, q)))
        .find(|&(p, q)| rel(p, q) != product_leq(&e.image_points[p], &e.image_points[q]))
        .map(|(p, q)| Counterexample::NotProductOrder(p, q));

    let order_fidelity = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .find(|&(x, y)| !rel(x, y) || e.image_points[x] == e.image_points[y])
        .map(|(x, y)| Counterexample::OrderNotPreserved(x, y));

    ClaimReport {
        partial_order,
        closed_vacuous: true,
        linear,
        extensions,
        topology_degenerate: true,
        density_vacuous: true,
        product_order,
        order_fidelity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(rows: Vec<Vec<f64>>, n: usize) -> FunctionFamily<f64> {
        FunctionFamily::new(Arc::new(Chain::new(n).unwrap()), (0.0, 1.0), rows).unwrap()
    }

    #[test]
    fn augment_examples() {
        let consts = family(vec![vec![0.5; 3], vec![0.2; 3]], 3);
        let aug = augment_separating(&consts);
        assert_eq!(aug.len(), 4);
        assert_eq!(aug.member(2).values(), &[0.0, 1.0, 1.0]);
        assert_eq!(aug.member(3).values(), &[0.0, 0.0, 1.0]);

        let ramp = family(vec![vec![0.0, 0.5, 1.0]], 3);
        assert_eq!(augment_separating(&ramp), ramp);

        let lone = family(vec![], 1);
        assert_eq!(augment_separating(&lone), lone);
    }

    #[test]
    fn degenerate_range_is_widened() {
        let f = FunctionFamily::new(Arc::new(Chain::new(2).unwrap()), (0.5, 0.5), vec![vec![0.5, 0.5]]).unwrap();
        let aug = augment_separating(&f);
        assert_eq!(aug.range(), &(0.5, 1.5));
        assert_eq!(aug.member(1).values(), &[0.5, 1.5]);
    }

    #[test]
    fn ramp_embeds_as_itself() {
        let fam = family(vec![vec![0.0, 0.5, 1.0]], 3);
        let e = diagonal_embed(fam.chain(), &fam, false).unwrap();
        assert_eq!(e.image_points, vec![vec![0.0], vec![0.5], vec![1.0]]);
        let expected: BTreeSet<_> = (0..3).flat_map(|p| (p..3).map(move |q| (p, q))).collect();
        assert_eq!(e.induced_relation, expected);
        assert!(verify_claims(&e).all_pass());
    }

    #[test]
    fn constants_do_not_separate() {
        let fam = family(vec![vec![0.3, 0.3]], 2);
        assert_eq!(diagonal_embed(fam.chain(), &fam, false), Err(Error::NotSeparating(0, 1)));
        let e = diagonal_embed(fam.chain(), &fam, true).unwrap();
        assert_eq!(e.appended, vec![1]);
        assert!(verify_claims(&e).all_pass());
    }

    #[test]
    fn two_steps_on_four_points() {
        let fam = family(vec![vec![0.0, 1.0, 1.0, 1.0], vec![0.0, 0.0, 1.0, 1.0], vec![0.0, 0.0, 0.0, 1.0]], 4);
        let e = diagonal_embed(fam.chain(), &fam, false).unwrap();
        let distinct: BTreeSet<_> = e.image_points.iter().map(|v| format!("{v:?}")).collect();
        assert_eq!(distinct.len(), 4);
        let report = verify_claims(&e);
        assert!(report.linear.is_none() && report.all_pass());
    }

    #[test]
    fn injected_cycle_breaks_claim_one() {
        let fam = family(vec![vec![0.0, 0.5, 1.0]], 3);
        let mut e = diagonal_embed(fam.chain(), &fam, false).unwrap();
        e.induced_relation.insert((2, 1));
        let report = verify_claims(&e);
        assert_eq!(report.partial_order, Some(Counterexample::Cycle(1, 2)));
    }

    #[test]
    fn crossing_member_breaks_claim_two() {
        let fam = family(vec![vec![0.0, 1.0], vec![1.0, 0.0]], 2);
        let e = EmbeddingResult::from_parts(fam, Vec::new());
        let report = verify_claims(&e);
        assert_eq!(report.linear, Some(Counterexample::Incomparable(0, 1)));
        assert!(report.partial_order.is_none());
    }

    #[test]
    fn non_monotone_input_rejected() {
        let fam = family(vec![vec![1.0, 0.0]], 2);
        assert_eq!(diagonal_embed(fam.chain(), &fam, true), Err(Error::NotMonotone { member: 0, at: 0 }));
    }
}
