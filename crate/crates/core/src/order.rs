//! Encoding finite linear orders as closed subsets of [0,1] by inductive
//! interval removal.
//!
//! Elements are consumed in enumeration order; each step removes an open
//! interval whose position realizes the element's place in the order,
//! reserving a third of the nearest free gap on each side where further
//! elements are still pending. The encoded set is the complement of the
//! removed intervals, and its gap structure is order-isomorphic to the input.

use crate::closed_set::{mk_closed_set, ClosedSet1D, Component};
use crate::invariants::{extract_t, pattern_order_iso};
use crate::rational::{rat, Rational};
use serde::{Deserialize, Serialize};

/// A finite linear order with a fixed enumeration of its elements.
/// `ranks[k]` is the order-rank (1-based) of the element enumerated at
/// step k+1.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawOrder", into = "RawOrder")]
pub struct LinearOrderSpec {
    n: usize,
    ranks: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawOrder {
    n: usize,
    ranks: Vec<usize>,
}

impl TryFrom<RawOrder> for LinearOrderSpec {
    type Error = OrderError;
    fn try_from(raw: RawOrder) -> Result<Self, OrderError> {
        LinearOrderSpec::new(raw.n, raw.ranks)
    }
}

impl From<LinearOrderSpec> for RawOrder {
    fn from(o: LinearOrderSpec) -> RawOrder {
        RawOrder {
            n: o.n,
            ranks: o.ranks,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("ranks must be a permutation of 1..=n")]
    NotAPermutation,
    #[error("order must have at least one element")]
    Empty,
}

impl LinearOrderSpec {
    pub fn new(n: usize, ranks: Vec<usize>) -> Result<Self, OrderError> {
        if n == 0 {
            return Err(OrderError::Empty);
        }
        if ranks.len() != n {
            return Err(OrderError::NotAPermutation);
        }
        let mut seen = vec![false; n + 1];
        for &r in &ranks {
            if r < 1 || r > n || seen[r] {
                return Err(OrderError::NotAPermutation);
            }
            seen[r] = true;
        }
        Ok(LinearOrderSpec { n, ranks })
    }

    /// The chain 1 < 2 < … < n enumerated in rank order.
    pub fn chain(n: usize) -> Self {
        LinearOrderSpec::new(n, (1..=n).collect()).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }
}

/// One removed interval, tagged with the enumeration step that produced it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RemovedInterval {
    pub step: usize,
    pub a: Rational,
    pub b: Rational,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RemovedIntervals {
    intervals: Vec<RemovedInterval>,
}

impl RemovedIntervals {
    pub fn from_intervals(intervals: Vec<RemovedInterval>) -> Self {
        RemovedIntervals { intervals }
    }

    pub fn intervals(&self) -> &[RemovedInterval] {
        &self.intervals
    }

    /// Does the spatial order of the intervals agree with the rank order of
    /// the elements they encode?
    pub fn spatial_order_matches_ranks(&self, order: &LinearOrderSpec) -> bool {
        if self.intervals.len() != order.n() {
            return false;
        }
        let mut sorted: Vec<&RemovedInterval> = self.intervals.iter().collect();
        sorted.sort_by(|x, y| x.a.cmp(&y.a));
        sorted
            .iter()
            .enumerate()
            .all(|(pos, iv)| order.ranks()[iv.step - 1] == pos + 1)
    }

    pub fn pairwise_disjoint(&self) -> bool {
        let mut sorted: Vec<(&Rational, &Rational)> =
            self.intervals.iter().map(|iv| (&iv.a, &iv.b)).collect();
        sorted.sort();
        sorted.windows(2).all(|w| w[0].1 <= w[1].0)
    }
}

/// Run the inductive removal for the whole enumeration and return the removed
/// intervals together with the encoded set A_R.
pub fn encode_order(order: &LinearOrderSpec) -> (RemovedIntervals, ClosedSet1D) {
    let n = order.n();
    let ranks = order.ranks();
    let third = rat(1, 3);
    let two_thirds = rat(2, 3);
    let one = Rational::one();
    let zero = Rational::zero();

    let mut intervals: Vec<RemovedInterval> = Vec::with_capacity(n);
    let base = {
        let r1 = ranks[0];
        // A single element is both least and largest; least wins.
        if r1 == 1 {
            (zero.clone(), third.clone())
        } else if r1 == n {
            (two_thirds.clone(), one.clone())
        } else {
            (third.clone(), two_thirds.clone())
        }
    };
    intervals.push(RemovedInterval {
        step: 1,
        a: base.0,
        b: base.1,
    });

    for t in 2..=n {
        let r = ranks[t - 1];
        // Nearest previously enumerated elements below and above, by rank.
        let below = (0..t - 1)
            .filter(|&k| ranks[k] < r)
            .max_by_key(|&k| ranks[k]);
        let above = (0..t - 1)
            .filter(|&k| ranks[k] > r)
            .min_by_key(|&k| ranks[k]);
        // Gap emptiness is decided against the full order, not just the
        // elements enumerated so far: rank differences of 1 mean adjacency.
        let (a, b) = match (below, above) {
            (Some(i), Some(j)) => {
                let (bi, aj) = (&intervals[i].b, &intervals[j].a);
                let a = if r - ranks[i] == 1 {
                    bi.clone()
                } else {
                    &(&two_thirds * bi) + &(&third * aj)
                };
                let b = if ranks[j] - r == 1 {
                    aj.clone()
                } else {
                    &(&third * bi) + &(&two_thirds * aj)
                };
                (a, b)
            }
            (None, Some(j)) => {
                let aj = &intervals[j].a;
                let a = if r == 1 { zero.clone() } else { &third * aj };
                let b = if ranks[j] - r == 1 {
                    aj.clone()
                } else {
                    &two_thirds * aj
                };
                (a, b)
            }
            (Some(i), None) => {
                let bi = &intervals[i].b;
                let a = if r - ranks[i] == 1 {
                    bi.clone()
                } else {
                    &(&two_thirds * bi) + &third
                };
                let b = if r == n {
                    one.clone()
                } else {
                    &(&third * bi) + &two_thirds
                };
                (a, b)
            }
            (None, None) => unreachable!("an isolated element only occurs at step 1"),
        };
        intervals.push(RemovedInterval { step: t, a, b });
    }

    let removed = RemovedIntervals { intervals };
    let set = complement_of(&removed);
    (removed, set)
}

/// A_R: the canonical complement of the removed intervals within [0,1].
fn complement_of(removed: &RemovedIntervals) -> ClosedSet1D {
    let mut spans: Vec<(&Rational, &Rational)> =
        removed.intervals.iter().map(|iv| (&iv.a, &iv.b)).collect();
    spans.sort();
    let zero = Rational::zero();
    let one = Rational::one();
    let mut parts: Vec<Component> = Vec::new();
    let mut push = |lo: Rational, hi: Rational| {
        if lo == hi {
            parts.push(Component::Point(lo));
        } else if lo < hi {
            parts.push(Component::Interval(lo, hi));
        }
    };
    push(zero.clone(), spans[0].0.clone());
    for w in spans.windows(2) {
        push(w[0].1.clone(), w[1].0.clone());
    }
    push(spans[spans.len() - 1].1.clone(), one);
    mk_closed_set(parts).expect("complement of a proper removal is non-empty")
}

/// Encode, then check the encoding against the order.
pub fn verify_encoding(order: &LinearOrderSpec) -> bool {
    let (removed, set) = encode_order(order);
    check_encoding(order, &removed, &set)
}

/// Check an encoding (possibly not the one this module produced): removed
/// intervals disjoint and spatially rank-ordered, the set free of interior,
/// and its gap structure order-isomorphic to the input.
pub fn check_encoding(
    order: &LinearOrderSpec,
    removed: &RemovedIntervals,
    set: &ClosedSet1D,
) -> bool {
    if !removed.pairwise_disjoint() || !removed.spatial_order_matches_ranks(order) {
        return false;
    }
    if order.n() == 1 {
        // A single element cannot tile [0,1]: the construction removes
        // (0,1/3) and leaves the reserved remainder [1/3,1] in place.
        let expected = mk_closed_set(vec![
            Component::Point(Rational::zero()),
            Component::Interval(rat(1, 3), Rational::one()),
        ])
        .unwrap();
        return *set == expected
            && removed.intervals.len() == 1
            && removed.intervals[0].a == Rational::zero()
            && removed.intervals[0].b == rat(1, 3);
    }
    let pattern = extract_t(set);
    if pattern.u_count() > 0 {
        return false;
    }
    matches!(pattern_order_iso(&pattern, order, Some(removed)), Ok(true))
}
