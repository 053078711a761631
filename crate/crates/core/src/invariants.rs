//! Countable-structure invariants of closed subsets of [0,1], and the
//! deciders built on them.
//!
//! `extract_t` reads off the ordered U/V pattern (interval interiors of A and
//! complement gaps, in spatial order); `extract_s` reduces the clopen-algebra
//! invariant to its two component counts. `decide_h1` answers "are A and B
//! homeomorphic"; `decide_r1` answers "does some ambient homeomorphism of
//! [0,1] carry A onto B", and its positive path produces an explicit
//! piecewise-linear witness.

use crate::closed_set::{complement_intervals, mk_closed_set, ClosedSet1D, Component};
use crate::order::LinearOrderSpec;
use crate::order::RemovedIntervals;
use crate::pl::{Orientation, PLHomeo1D};
use crate::rational::Rational;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, Hash)]
#[serde(rename_all = "lowercase")]
pub enum PatternEntry {
    U,
    V { touches_0: bool, touches_1: bool },
}

/// The ordered U/V structure of a set: one U per interval component interior,
/// one V per maximal complement gap, merged in spatial order.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize, Hash)]
pub struct UVPattern {
    pub entries: Vec<PatternEntry>,
}

impl UVPattern {
    pub fn v_count(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| matches!(e, PatternEntry::V { .. }))
            .count()
    }

    pub fn u_count(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| matches!(e, PatternEntry::U))
            .count()
    }

    /// Spatial reversal with the boundary flags swapped; the pattern of the
    /// mirrored set.
    pub fn mirrored(&self) -> UVPattern {
        let entries = self
            .entries
            .iter()
            .rev()
            .map(|e| match e {
                PatternEntry::U => PatternEntry::U,
                PatternEntry::V {
                    touches_0,
                    touches_1,
                } => PatternEntry::V {
                    touches_0: *touches_1,
                    touches_1: *touches_0,
                },
            })
            .collect();
        UVPattern { entries }
    }
}

impl fmt::Display for UVPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any0 = false;
        let mut any1 = false;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match e {
                PatternEntry::U => write!(f, "U")?,
                PatternEntry::V {
                    touches_0,
                    touches_1,
                } => {
                    any0 |= touches_0;
                    any1 |= touches_1;
                    write!(f, "V")?;
                }
            }
        }
        write!(
            f,
            " | t0:{} t1:{}",
            if any0 { "+" } else { "-" },
            if any1 { "+" } else { "-" }
        )
    }
}

/// Component counts determining the clopen-algebra invariant of a finite
/// presentation: the atoms are the components, with interval atoms marked.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SInvariant {
    pub point_count: usize,
    pub interval_count: usize,
}

/// The unordered pair of the pattern of A and the pattern of its mirror.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MPair {
    pub forward: UVPattern,
    pub mirrored: UVPattern,
}

impl MPair {
    pub fn of(a: &ClosedSet1D) -> MPair {
        let forward = extract_t(a);
        let mirrored = extract_t(&mirror_set(a));
        debug_assert_eq!(mirrored, forward.mirrored());
        MPair { forward, mirrored }
    }
}

pub fn extract_t(a: &ClosedSet1D) -> UVPattern {
    // Tag every entry with its left coordinate, then merge by spatial order.
    // A gap and an interval interior never share a left coordinate unless the
    // gap is the relatively-open [0,·) piece, which sorts first via the flag.
    let mut tagged: Vec<(Rational, bool, PatternEntry)> = Vec::new();
    for c in a.components() {
        if let Component::Interval(lo, _) = c {
            tagged.push((lo.clone(), false, PatternEntry::U));
        }
    }
    for g in complement_intervals(a) {
        tagged.push((
            g.lo.clone(),
            g.touches_0,
            PatternEntry::V {
                touches_0: g.touches_0,
                touches_1: g.touches_1,
            },
        ));
    }
    tagged.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| y.1.cmp(&x.1)));
    UVPattern {
        entries: tagged.into_iter().map(|(_, _, e)| e).collect(),
    }
}

/// A* = {1 − x : x ∈ A}.
pub fn mirror_set(a: &ClosedSet1D) -> ClosedSet1D {
    let one = Rational::one();
    let mapped: Vec<Component> = a
        .components()
        .iter()
        .map(|c| match c {
            Component::Point(p) => Component::Point(&one - p),
            Component::Interval(lo, hi) => Component::Interval(&one - hi, &one - lo),
        })
        .collect();
    mk_closed_set(mapped).expect("mirror of a canonical set is canonical")
}

pub fn extract_s(a: &ClosedSet1D) -> SInvariant {
    SInvariant {
        point_count: a.point_count(),
        interval_count: a.interval_count(),
    }
}

/// A and B are homeomorphic iff their component counts agree.
pub fn decide_h1(a: &ClosedSet1D, b: &ClosedSet1D) -> bool {
    extract_s(a) == extract_s(b)
}

/// Pattern-level kernel of the ambient-homeomorphism decider. `decide_r1`
/// and the verification suites share this comparison.
pub fn r1_patterns_match(pat_a: &UVPattern, pat_b: &UVPattern, pat_b_mirror: &UVPattern) -> bool {
    pat_a == pat_b || pat_a == pat_b_mirror
}

/// Some homeomorphism of [0,1] carries A onto B iff their patterns match,
/// directly or after mirroring.
pub fn decide_r1(a: &ClosedSet1D, b: &ClosedSet1D) -> bool {
    let pat_a = extract_t(a);
    let pat_b = extract_t(b);
    r1_patterns_match(&pat_a, &pat_b, &pat_b.mirrored())
}

/// Positive verdicts come with an explicit witness: a piecewise-linear
/// ambient homeomorphism h with h[A] = B.
pub fn decide_r1_witness(a: &ClosedSet1D, b: &ClosedSet1D) -> Option<PLHomeo1D> {
    let pat_a = extract_t(a);
    let pat_b = extract_t(b);
    if pat_a == pat_b {
        let h = component_matching_witness(a, b, Orientation::Preserving)
            .expect("equal patterns admit an increasing matching");
        debug_assert_eq!(h.image(a), *b);
        return Some(h);
    }
    if pat_a == pat_b.mirrored() {
        let h = component_matching_witness(a, b, Orientation::Reversing)
            .expect("mirrored patterns admit a decreasing matching");
        debug_assert_eq!(h.image(a), *b);
        return Some(h);
    }
    None
}

/// Build the PL map sending A's component boundaries to B's in the given
/// direction, or `None` when the component shapes are incompatible.
///
/// Pins are assembled already sorted by input (components are spatially
/// ordered), so no re-sort is needed; duplicates can only be adjacent.
pub fn component_matching_witness(
    a: &ClosedSet1D,
    b: &ClosedSet1D,
    orientation: Orientation,
) -> Option<PLHomeo1D> {
    let ca = a.components();
    let cb = b.components();
    if ca.len() != cb.len() {
        return None;
    }
    let n = ca.len();
    let zero = Rational::zero();
    let one = Rational::one();
    // Boundary containment must agree, otherwise no ambient map exists.
    let (want0, want1) = match orientation {
        Orientation::Preserving => (b.contains(&zero), b.contains(&one)),
        Orientation::Reversing => (b.contains(&one), b.contains(&zero)),
    };
    if a.contains(&zero) != want0 || a.contains(&one) != want1 {
        return None;
    }
    let mut pins: Vec<(Rational, Rational)> = Vec::with_capacity(2 * n + 2);
    let mut push = |pins: &mut Vec<(Rational, Rational)>, pin: (Rational, Rational)| {
        if pins.last() != Some(&pin) {
            pins.push(pin);
        }
    };
    match orientation {
        Orientation::Preserving => push(&mut pins, (zero.clone(), zero.clone())),
        Orientation::Reversing => push(&mut pins, (zero.clone(), one.clone())),
    }
    for i in 0..n {
        let src = &ca[i];
        let dst = match orientation {
            Orientation::Preserving => &cb[i],
            Orientation::Reversing => &cb[n - 1 - i],
        };
        if src.is_interval() != dst.is_interval() {
            return None;
        }
        match orientation {
            Orientation::Preserving => {
                push(&mut pins, (src.left().clone(), dst.left().clone()));
                push(&mut pins, (src.right().clone(), dst.right().clone()));
            }
            Orientation::Reversing => {
                push(&mut pins, (src.left().clone(), dst.right().clone()));
                push(&mut pins, (src.right().clone(), dst.left().clone()));
            }
        }
    }
    match orientation {
        Orientation::Preserving => push(&mut pins, (one.clone(), one.clone())),
        Orientation::Reversing => push(&mut pins, (one.clone(), zero.clone())),
    }
    // Strict monotonicity of the pin outputs is exactly pattern/signature
    // compatibility; bail out rather than panic if the caller got it wrong.
    PLHomeo1D::new(orientation, pins).ok()
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PatternIsoError {
    #[error("pattern has a U entry but encoder provenance was supplied")]
    UnexpectedInterior,
}

/// Order-isomorphism check between a pattern's V entries and a finite linear
/// order. With encoder provenance, also verifies that the removed intervals'
/// spatial order realizes the element ranks.
pub fn pattern_order_iso(
    pattern: &UVPattern,
    order: &LinearOrderSpec,
    provenance: Option<&RemovedIntervals>,
) -> Result<bool, PatternIsoError> {
    if let Some(intervals) = provenance {
        if pattern.u_count() > 0 {
            return Err(PatternIsoError::UnexpectedInterior);
        }
        if !intervals.spatial_order_matches_ranks(order) {
            return Ok(false);
        }
        if intervals.intervals().len() != order.n() {
            return Ok(false);
        }
    }
    Ok(pattern.v_count() == order.n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn set(raw: Vec<Component>) -> ClosedSet1D {
        mk_closed_set(raw).unwrap()
    }

    fn pt(n: i64, d: i64) -> Component {
        Component::Point(rat(n, d))
    }

    fn iv(a: (i64, i64), b: (i64, i64)) -> Component {
        Component::Interval(rat(a.0, a.1), rat(b.0, b.1))
    }

    fn v(t0: bool, t1: bool) -> PatternEntry {
        PatternEntry::V {
            touches_0: t0,
            touches_1: t1,
        }
    }

    // Hand enumeration: interiors (0,1/4),(3/4,1); gaps (1/4,1/2),(1/2,3/4).
    #[test]
    fn extract_t_mixed() {
        let a = set(vec![iv((0, 1), (1, 4)), pt(1, 2), iv((3, 4), (1, 1))]);
        let p = extract_t(&a);
        assert_eq!(
            p.entries,
            vec![
                PatternEntry::U,
                v(false, false),
                v(false, false),
                PatternEntry::U
            ]
        );
        assert_eq!(p.to_string(), "U V V U | t0:- t1:-");
    }

    #[test]
    fn extract_t_singleton_and_full() {
        let a = set(vec![pt(1, 2)]);
        assert_eq!(extract_t(&a).entries, vec![v(true, false), v(false, true)]);
        let full = set(vec![iv((0, 1), (1, 1))]);
        assert_eq!(extract_t(&full).entries, vec![PatternEntry::U]);
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(
            mirror_set(&set(vec![pt(0, 1)])).components(),
            &[pt(1, 1)]
        );
        assert_eq!(
            mirror_set(&set(vec![iv((0, 1), (1, 4))])).components(),
            &[iv((3, 4), (1, 1))]
        );
        // Componentwise 1−x then re-sort.
        assert_eq!(
            mirror_set(&set(vec![pt(1, 3), iv((1, 2), (1, 1))])).components(),
            &[iv((0, 1), (1, 2)), pt(2, 3)]
        );
    }

    #[test]
    fn extract_s_counts() {
        let a = set(vec![pt(0, 1), pt(1, 2), pt(1, 1)]);
        assert_eq!(
            extract_s(&a),
            SInvariant {
                point_count: 3,
                interval_count: 0
            }
        );
        let b = set(vec![iv((0, 1), (1, 1))]);
        assert_eq!(
            extract_s(&b),
            SInvariant {
                point_count: 0,
                interval_count: 1
            }
        );
    }

    #[test]
    fn h1_examples() {
        let a = ClosedSet1D::points(&[rat(0, 1), rat(1, 2), rat(1, 1)]).unwrap();
        let b = ClosedSet1D::points(&[rat(1, 3), rat(2, 3), rat(1, 1)]).unwrap();
        assert!(decide_h1(&a, &b));
        assert!(!decide_h1(
            &set(vec![iv((0, 1), (1, 1))]),
            &set(vec![pt(1, 2)])
        ));
        // Counts (1,1) on both sides.
        assert!(decide_h1(
            &set(vec![iv((0, 1), (1, 4)), pt(1, 2)]),
            &set(vec![pt(0, 1), iv((1, 2), (1, 1))])
        ));
    }

    #[test]
    fn r1_examples() {
        let a = set(vec![pt(0, 1)]);
        assert!(decide_r1(&a, &a));
        assert!(!decide_r1(&a, &set(vec![pt(1, 2)])));
        let b = set(vec![pt(1, 1)]);
        assert!(decide_r1(&a, &b));
        let w = decide_r1_witness(&a, &b).unwrap();
        assert_eq!(w.image(&a), b);
        assert_eq!(w.eval(&rat(0, 1)).unwrap(), rat(1, 1));
    }

    #[test]
    fn r1_implies_h1() {
        let pairs = [
            (set(vec![pt(0, 1)]), set(vec![pt(1, 1)])),
            (
                set(vec![iv((0, 1), (1, 4)), pt(1, 2)]),
                set(vec![pt(1, 2), iv((3, 4), (1, 1))]),
            ),
        ];
        for (a, b) in pairs {
            if decide_r1(&a, &b) {
                assert!(decide_h1(&a, &b));
            }
        }
    }

    #[test]
    fn mirror_law_small() {
        let sets = [
            set(vec![pt(0, 1)]),
            set(vec![pt(1, 2)]),
            set(vec![iv((0, 1), (1, 4)), pt(1, 2), iv((3, 4), (1, 1))]),
            set(vec![pt(1, 3), iv((1, 2), (1, 1))]),
        ];
        for a in &sets {
            assert_eq!(extract_t(&mirror_set(a)), extract_t(a).mirrored());
        }
    }
}
