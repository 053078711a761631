//! Finite presentations of closed subsets of [0,1].
//!
//! A set is stored as its components: isolated rational points and closed
//! rational intervals, pairwise disjoint and sorted. `mk_closed_set` is the
//! only constructor; it canonicalizes arbitrary raw input (merging touching
//! or overlapping items) and rejects anything outside [0,1] or empty.

use crate::rational::Rational;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Point(Rational),
    Interval(Rational, Rational),
}

impl Component {
    pub fn left(&self) -> &Rational {
        match self {
            Component::Point(p) => p,
            Component::Interval(a, _) => a,
        }
    }

    pub fn right(&self) -> &Rational {
        match self {
            Component::Point(p) => p,
            Component::Interval(_, b) => b,
        }
    }

    pub fn is_interval(&self) -> bool {
        matches!(self, Component::Interval(..))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.left() <= x && x <= self.right()
    }
}

impl fmt::Debug for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Point(p) => write!(f, "{{{}}}", p),
            Component::Interval(a, b) => write!(f, "[{},{}]", a, b),
        }
    }
}

/// Canonical presentation of a non-empty closed subset of [0,1].
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawClosedSet", into = "RawClosedSet")]
pub struct ClosedSet1D {
    components: Vec<Component>,
}

#[derive(Serialize, Deserialize)]
struct RawClosedSet {
    components: Vec<Component>,
}

impl TryFrom<RawClosedSet> for ClosedSet1D {
    type Error = SetError;
    fn try_from(raw: RawClosedSet) -> Result<Self, SetError> {
        mk_closed_set(raw.components)
    }
}

impl From<ClosedSet1D> for RawClosedSet {
    fn from(s: ClosedSet1D) -> RawClosedSet {
        RawClosedSet {
            components: s.components,
        }
    }
}

impl fmt::Debug for ClosedSet1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.components).finish()
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SetError {
    #[error("closed set must be non-empty")]
    Empty,
    #[error("coordinate {0} outside [0,1]")]
    OutOfRange(Rational),
    #[error("interval with left endpoint {0} greater than right endpoint {1}")]
    ReversedInterval(Rational, Rational),
}

/// Canonicalize raw point/interval items into a `ClosedSet1D`.
///
/// Touching and overlapping items merge; a raw `Interval(a,a)` degrades to a
/// point. Items may arrive in any order.
pub fn mk_closed_set(raw: Vec<Component>) -> Result<ClosedSet1D, SetError> {
    if raw.is_empty() {
        return Err(SetError::Empty);
    }
    let mut items = Vec::with_capacity(raw.len());
    for c in raw {
        match c {
            Component::Point(p) => {
                if !p.in_unit_interval() {
                    return Err(SetError::OutOfRange(p));
                }
                items.push((p.clone(), p));
            }
            Component::Interval(a, b) => {
                if a > b {
                    return Err(SetError::ReversedInterval(a, b));
                }
                if !a.in_unit_interval() {
                    return Err(SetError::OutOfRange(a));
                }
                if !b.in_unit_interval() {
                    return Err(SetError::OutOfRange(b));
                }
                items.push((a, b));
            }
        }
    }
    items.sort();
    let mut merged: Vec<(Rational, Rational)> = Vec::with_capacity(items.len());
    for (a, b) in items {
        match merged.last_mut() {
            Some((_, prev_b)) if a <= *prev_b => {
                if b > *prev_b {
                    *prev_b = b;
                }
            }
            _ => merged.push((a, b)),
        }
    }
    let components = merged
        .into_iter()
        .map(|(a, b)| {
            if a == b {
                Component::Point(a)
            } else {
                Component::Interval(a, b)
            }
        })
        .collect();
    Ok(ClosedSet1D { components })
}

impl ClosedSet1D {
    /// Shorthand constructor for a set of isolated points.
    pub fn points(coords: &[Rational]) -> Result<Self, SetError> {
        mk_closed_set(coords.iter().cloned().map(Component::Point).collect())
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.components.iter().any(|c| c.contains(x))
    }

    pub fn point_count(&self) -> usize {
        self.components.iter().filter(|c| !c.is_interval()).count()
    }

    pub fn interval_count(&self) -> usize {
        self.components.iter().filter(|c| c.is_interval()).count()
    }

    pub fn min(&self) -> &Rational {
        self.components.first().unwrap().left()
    }

    pub fn max(&self) -> &Rational {
        self.components.last().unwrap().right()
    }

    /// Exact distance from `x` to the set, together with the nearest set
    /// point (ties resolved toward 0).
    pub fn nearest(&self, x: &Rational) -> (Rational, Rational) {
        let mut best: Option<(Rational, Rational)> = None;
        for c in &self.components {
            let candidate = if c.contains(x) {
                x.clone()
            } else if x < c.left() {
                c.left().clone()
            } else {
                c.right().clone()
            };
            let dist = (&candidate - x).abs();
            let better = match &best {
                None => true,
                Some((bd, bp)) => dist < *bd || (dist == *bd && candidate < *bp),
            };
            if better {
                best = Some((dist, candidate));
            }
        }
        best.unwrap()
    }
}

/// A maximal relatively-open subinterval of [0,1] − A.
///
/// `touches_0` / `touches_1` record whether the gap contains the ambient
/// boundary point, i.e. whether 0 (resp. 1) lies outside A.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Gap {
    pub lo: Rational,
    pub hi: Rational,
    pub touches_0: bool,
    pub touches_1: bool,
}

/// Maximal relatively-open intervals of the complement, in spatial order.
pub fn complement_intervals(a: &ClosedSet1D) -> Vec<Gap> {
    let mut gaps = Vec::new();
    let zero = Rational::zero();
    let one = Rational::one();
    let first = a.min();
    if *first > zero {
        gaps.push(Gap {
            lo: zero.clone(),
            hi: first.clone(),
            touches_0: true,
            touches_1: false,
        });
    }
    for w in a.components.windows(2) {
        gaps.push(Gap {
            lo: w[0].right().clone(),
            hi: w[1].left().clone(),
            touches_0: false,
            touches_1: false,
        });
    }
    let last = a.max();
    if *last < one {
        gaps.push(Gap {
            lo: last.clone(),
            hi: one,
            touches_0: false,
            touches_1: true,
        });
    }
    gaps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn pt(n: i64, d: i64) -> Component {
        Component::Point(rat(n, d))
    }

    fn iv(a: (i64, i64), b: (i64, i64)) -> Component {
        Component::Interval(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn touching_point_absorbed_into_interval() {
        let s = mk_closed_set(vec![iv((0, 1), (1, 4)), pt(1, 4)]).unwrap();
        assert_eq!(s.components(), &[iv((0, 1), (1, 4))]);
    }

    #[test]
    fn points_sorted() {
        let s = mk_closed_set(vec![pt(1, 2), pt(1, 4)]).unwrap();
        assert_eq!(s.components(), &[pt(1, 4), pt(1, 2)]);
    }

    #[test]
    fn overlapping_intervals_merge() {
        let s = mk_closed_set(vec![iv((1, 3), (1, 2)), iv((2, 5), (3, 5))]).unwrap();
        assert_eq!(s.components(), &[iv((1, 3), (3, 5))]);
    }

    #[test]
    fn degenerate_interval_becomes_point() {
        let s = mk_closed_set(vec![iv((1, 2), (1, 2))]).unwrap();
        assert_eq!(s.components(), &[pt(1, 2)]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(mk_closed_set(vec![]), Err(SetError::Empty));
        assert!(matches!(
            mk_closed_set(vec![pt(3, 2)]),
            Err(SetError::OutOfRange(_))
        ));
        assert!(matches!(
            mk_closed_set(vec![iv((1, 2), (1, 4))]),
            Err(SetError::ReversedInterval(..))
        ));
    }

    #[test]
    fn complement_of_interior_point() {
        let a = ClosedSet1D::points(&[rat(1, 2)]).unwrap();
        let gaps = complement_intervals(&a);
        assert_eq!(gaps.len(), 2);
        assert!(gaps[0].touches_0 && !gaps[0].touches_1);
        assert_eq!((gaps[0].lo.clone(), gaps[0].hi.clone()), (rat(0, 1), rat(1, 2)));
        assert!(gaps[1].touches_1 && !gaps[1].touches_0);
    }

    #[test]
    fn complement_respects_relative_openness_at_zero() {
        let a = ClosedSet1D::points(&[rat(0, 1)]).unwrap();
        let gaps = complement_intervals(&a);
        assert_eq!(gaps.len(), 1);
        assert!(!gaps[0].touches_0);
        assert!(gaps[0].touches_1);
        assert_eq!((gaps[0].lo.clone(), gaps[0].hi.clone()), (rat(0, 1), rat(1, 1)));
    }

    // Hand enumeration, cross-checked by the 1/256 grid scan below.
    #[test]
    fn complement_of_mixed_set() {
        let a = mk_closed_set(vec![iv((0, 1), (1, 4)), pt(1, 2), iv((3, 4), (1, 1))]).unwrap();
        let gaps = complement_intervals(&a);
        assert_eq!(gaps.len(), 2);
        assert_eq!((gaps[0].lo.clone(), gaps[0].hi.clone()), (rat(1, 4), rat(1, 2)));
        assert_eq!((gaps[1].lo.clone(), gaps[1].hi.clone()), (rat(1, 2), rat(3, 4)));
        assert!(gaps.iter().all(|g| !g.touches_0 && !g.touches_1));
    }

    /// Grid-scan oracle: every sample of [0,1] lands in exactly one side of
    /// the (components, gaps) partition.
    fn scan_partition(a: &ClosedSet1D, resolution: i64) {
        let gaps = complement_intervals(a);
        for k in 0..=resolution {
            let x = rat(k, resolution);
            let in_set = a.contains(&x);
            let in_gap = gaps.iter().any(|g| {
                (g.lo < x && x < g.hi)
                    || (g.touches_0 && x == g.lo)
                    || (g.touches_1 && x == g.hi)
            });
            assert!(in_set != in_gap, "sample {} claimed by {}", x, if in_set && in_gap { "both" } else { "neither" });
        }
    }

    #[test]
    fn partition_scan_at_256() {
        let sets = [
            mk_closed_set(vec![pt(1, 2)]).unwrap(),
            mk_closed_set(vec![pt(0, 1)]).unwrap(),
            mk_closed_set(vec![iv((0, 1), (1, 4)), pt(1, 2), iv((3, 4), (1, 1))]).unwrap(),
            mk_closed_set(vec![iv((0, 1), (1, 1))]).unwrap(),
            mk_closed_set(vec![pt(1, 3), iv((1, 2), (1, 1))]).unwrap(),
        ];
        for a in &sets {
            scan_partition(a, 256);
        }
    }
}
