use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{bin_count, bin_index, Scalar};

/// A lazily evaluated sequence of functions `f_0, f_1, …` on chain points.
pub trait FunctionStream<T> {
    /// Common value range `[c, d]` of every member.
    fn range(&self) -> (T, T);
    fn eval(&self, member: usize, point: usize) -> T;
}

/// A stream backed by a closure.
pub struct FnStream<T, F> {
    range: (T, T),
    f: F,
}

impl<T: Scalar, F: Fn(usize, usize) -> T> FnStream<T, F> {
    pub fn new(range: (T, T), f: F) -> Self {
        FnStream { range, f }
    }
}

impl<T: Scalar, F: Fn(usize, usize) -> T> FunctionStream<T> for FnStream<T, F> {
    fn range(&self) -> (T, T) {
        self.range.clone()
    }

    fn eval(&self, member: usize, point: usize) -> T {
        (self.f)(member, point)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StreamSelection<T> {
    pub points: Vec<usize>,
    pub schedule: Vec<T>,
    /// `stages[m − 1]` lists the members of stage `m` in increasing order.
    pub stages: Vec<Vec<usize>>,
    /// `diagonal[m − 1]` is the `m`-th member of stage `m`.
    pub diagonal: Vec<usize>,
    /// Members drawn from the stream.
    pub draws: usize,
}

struct Alive<T> {
    member: usize,
    values: Vec<T>,
}

/// Diagonal selection along a stream.
///
/// Stage `m` keeps the members of stage `m − 1` whose values at the first `m`
/// points all fall in one bin of width `schedule[m − 1]` (the most populated
/// bin signature, lowest on ties), drawing further members until at least
/// `m + 1` survive. Stages are nested, and for `m ≤ l ≤ l'` the diagonal
/// members `l` and `l'` are within `schedule[m − 1]` at the first `m` points.
///
/// Only survivors are retained, each with values at the points it has been
/// evaluated on.
pub fn diagonal_select_stream<T: Scalar, S: FunctionStream<T>>(
    stream: &S,
    points: &[usize],
    schedule: &[T],
    budget: usize,
) -> Result<StreamSelection<T>> {
    let depth = schedule.len();
    if depth == 0 || points.len() < depth {
        return Err(Error::BadSize(format!(
            "need a nonempty schedule and at least {depth} points, got {}",
            points.len()
        )));
    }
    for e in schedule {
        if !(*e > T::zero()) {
            return Err(Error::EpsilonNonPositive(e.approx()));
        }
    }
    let (lo, hi) = stream.range();
    let mut chosen: Vec<Vec<usize>> = Vec::with_capacity(depth);
    let mut alive: Vec<Alive<T>> = Vec::new();
    // member and the deepest stage it reached
    let mut reached: Vec<(usize, usize)> = Vec::new();
    let mut draws = 0usize;

    let signature = |values: &[T], eps: &T, upto: usize| -> Vec<usize> {
        let bins = bin_count(&lo, &hi, eps);
        values[..upto].iter().map(|v| bin_index(v, &lo, eps, bins)).collect()
    };

    for m in 1..=depth {
        let eps = &schedule[m - 1];
        for a in alive.iter_mut() {
            while a.values.len() < m {
                a.values.push(stream.eval(a.member, points[a.values.len()]));
            }
        }
        let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (slot, a) in alive.iter().enumerate() {
            groups.entry(signature(&a.values, eps, m)).or_default().push(slot);
        }
        loop {
            let best = groups.iter().fold(None::<(&Vec<usize>, usize)>, |best, (key, slots)| match best {
                Some((_, c)) if c >= slots.len() => best,
                _ => Some((key, slots.len())),
            });
            if let Some((key, count)) = best {
                if count > m {
                    chosen.push(key.clone());
                    break;
                }
            }
            if draws == budget {
                return Err(Error::BudgetExhausted { stage: m, draws });
            }
            let member = draws;
            draws += 1;
            let values: Vec<T> = points[..m].iter().map(|&p| stream.eval(member, p)).collect();
            let survived = (1..m).find(|&l| signature(&values, &schedule[l - 1], l) != chosen[l - 1]);
            match survived {
                Some(l) => reached.push((member, l - 1)),
                None => {
                    groups.entry(signature(&values, eps, m)).or_default().push(alive.len());
                    alive.push(Alive { member, values });
                }
            }
        }
        let keep = &chosen[m - 1];
        let mut next = Vec::new();
        for a in alive.drain(..) {
            if signature(&a.values, eps, m) == *keep {
                next.push(a);
            } else {
                reached.push((a.member, m - 1));
            }
        }
        alive = next;
    }
    reached.extend(alive.iter().map(|a| (a.member, depth)));
    reached.sort_unstable();
    let stages: Vec<Vec<usize>> = (1..=depth)
        .map(|m| reached.iter().filter(|(_, s)| *s >= m).map(|(n, _)| *n).collect())
        .collect();
    let diagonal = stages.iter().enumerate().map(|(i, s)| s[i]).collect();
    Ok(StreamSelection {
        points: points[..depth].to_vec(),
        schedule: schedule.to_vec(),
        stages,
        diagonal,
        draws,
    })
}
