//! Property tests for the algebraic laws the core types promise.

use continua::closed_set::{complement_intervals, mk_closed_set, ClosedSet1D, Component};
use continua::invariants::{extract_t, mirror_set};
use continua::pl::{Orientation, PLHomeo1D};
use continua::rational::{rat, Rational};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn rational_01() -> impl Strategy<Value = Rational> {
    (0i64..=360).prop_map(|k| rat(k, 360))
}

fn raw_components() -> impl Strategy<Value = Vec<Component>> {
    prop::collection::vec((rational_01(), rational_01(), any::<bool>()), 1..6).prop_map(|items| {
        items
            .into_iter()
            .map(|(a, b, interval)| {
                if interval {
                    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                    Component::Interval(lo, hi)
                } else {
                    Component::Point(a)
                }
            })
            .collect()
    })
}

fn canonical_set() -> impl Strategy<Value = ClosedSet1D> {
    raw_components().prop_map(|raw| mk_closed_set(raw).unwrap())
}

fn pl_homeo() -> impl Strategy<Value = PLHomeo1D> {
    (
        prop::collection::btree_set(1i64..48, 0..4),
        prop::collection::btree_set(1i64..48, 0..4),
        any::<bool>(),
    )
        .prop_map(|(xs, ys, reversing)| {
            let n = xs.len().min(ys.len());
            let xs: Vec<i64> = xs.into_iter().take(n).collect();
            let mut ys: Vec<i64> = ys.into_iter().take(n).collect();
            if reversing {
                ys.reverse();
            }
            let mut pts = vec![(
                Rational::zero(),
                if reversing {
                    Rational::one()
                } else {
                    Rational::zero()
                },
            )];
            for (x, y) in xs.iter().zip(ys.iter()) {
                pts.push((rat(*x, 48), rat(*y, 48)));
            }
            pts.push((
                Rational::one(),
                if reversing {
                    Rational::zero()
                } else {
                    Rational::one()
                },
            ));
            let orientation = if reversing {
                Orientation::Reversing
            } else {
                Orientation::Preserving
            };
            PLHomeo1D::new(orientation, pts).unwrap()
        })
}

proptest! {
    #[test]
    fn canonicalization_idempotent(raw in raw_components()) {
        let once = mk_closed_set(raw).unwrap();
        let twice = mk_closed_set(once.components().to_vec()).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn complement_partitions_unit_interval(a in canonical_set()) {
        let gaps = complement_intervals(&a);
        for k in 0..=256i64 {
            let x = rat(k, 256);
            let in_set = a.contains(&x);
            let in_gap = gaps.iter().any(|g| {
                (g.lo < x && x < g.hi)
                    || (g.touches_0 && x == g.lo)
                    || (g.touches_1 && x == g.hi)
            });
            prop_assert!(in_set != in_gap);
        }
    }

    #[test]
    fn pl_inverse_undoes_image(a in canonical_set(), h in pl_homeo()) {
        let there = h.image(&a);
        let back = h.invert().image(&there);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn pl_image_preserves_component_counts(a in canonical_set(), h in pl_homeo()) {
        let img = h.image(&a);
        prop_assert_eq!(img.point_count(), a.point_count());
        prop_assert_eq!(img.interval_count(), a.interval_count());
    }

    #[test]
    fn pl_eval_inverse_round_trip(h in pl_homeo(), k in 0i64..=96) {
        let x = rat(k, 96);
        let y = h.eval(&x).unwrap();
        prop_assert_eq!(h.invert().eval(&y).unwrap(), x);
    }

    #[test]
    fn compose_matches_pointwise(g in pl_homeo(), h in pl_homeo(), k in 0i64..=64) {
        let x = rat(k, 64);
        let composed = PLHomeo1D::compose(&g, &h);
        prop_assert_eq!(
            composed.eval(&x).unwrap(),
            g.eval(&h.eval(&x).unwrap()).unwrap()
        );
    }

    #[test]
    fn mirror_law(a in canonical_set()) {
        prop_assert_eq!(extract_t(&mirror_set(&a)), extract_t(&a).mirrored());
    }

    #[test]
    fn mirror_is_involution(a in canonical_set()) {
        prop_assert_eq!(mirror_set(&mirror_set(&a)), a);
    }

    #[test]
    fn json_round_trips(a in canonical_set(), h in pl_homeo()) {
        let j = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<ClosedSet1D>(&j).unwrap(), a);
        let j = serde_json::to_string(&h).unwrap();
        prop_assert_eq!(serde_json::from_str::<PLHomeo1D>(&j).unwrap(), h);
    }

    #[test]
    fn gadget_json_round_trip(values in prop::collection::vec(-3i64..=3, 2..5)) {
        let g = continua::turbulence::build_f(
            &continua::turbulence::IntSeq::new(values),
            2,
        )
        .unwrap();
        let j = serde_json::to_string(&g.complex).unwrap();
        prop_assert_eq!(
            serde_json::from_str::<continua::GeoComplex>(&j).unwrap(),
            g.complex
        );
    }
}

#[test]
fn pattern_determines_component_shapes() {
    // Sets sharing a pattern must share their whole component-shape
    // sequence and boundary behavior; the decider depends on this
    // faithfulness.
    let sets = continua::suites::grid_sets(6, 3);
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut by_pattern: std::collections::HashMap<String, (Vec<bool>, bool, bool)> =
        std::collections::HashMap::new();
    for a in &sets {
        let key = format!("{:?}", extract_t(a));
        let shape = (
            a.components().iter().map(|c| c.is_interval()).collect::<Vec<_>>(),
            a.contains(&Rational::zero()),
            a.contains(&Rational::one()),
        );
        if let Some(prev) = by_pattern.get(&key) {
            assert_eq!(*prev, shape, "pattern {} is ambiguous", key);
        } else {
            by_pattern.insert(key.clone(), shape);
        }
        seen.insert(key);
    }
    assert!(seen.len() > 10);
}
