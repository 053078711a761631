//! The planar two-component gadget built from an integer sequence, the shift
//! homeomorphism between two such gadgets, and its displacement profile.
//!
//! Geometry lives in [-1,1]×[0,1]. The vertical axis is the image of the
//! logical z-line under the order isomorphism f(z) = 1/(1+2^-z) (so f(0) =
//! 1/2); all maps act affinely on z and are evaluated exactly there, with
//! physical y produced by `fscale` only on output. Stripe n occupies x ∈
//! [1/(2n+1), 1/(2n)] and stacks the rectangle boundaries ∂R(n,k) with one
//! filled rectangle at k = x_n + 1; a connector curve joins consecutive
//! stripes; the T-shaped component I₀ sits on the left. Truncation replaces
//! the closure of the infinite stack by two full-height rails per stripe,
//! labeled as such.

use crate::complex::{Cell, CellGeom, CellLabel, GeoComplex, Point, RectSide};
use crate::dyadic::logistic_shift;
use crate::rational::{rat, Rational};
use serde::{Deserialize, Serialize};

/// Samples per connector polyline (2^6).
pub const CONNECTOR_SAMPLES: i64 = 64;

/// A finite prefix x_1..x_N of an integer sequence, 1-based like the stripe
/// indices.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IntSeq {
    pub values: Vec<i64>,
}

impl IntSeq {
    pub fn new(values: Vec<i64>) -> Self {
        IntSeq { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// x_n with the paper's 1-based indexing; 0 beyond the prefix.
    pub fn at(&self, n: usize) -> i64 {
        if n >= 1 && n <= self.values.len() {
            self.values[n - 1]
        } else {
            0
        }
    }

    /// sup_n |(x_n − y_n)/n| over the common prefix.
    pub fn metric(&self, other: &IntSeq) -> Rational {
        let len = self.values.len().max(other.values.len());
        let mut best = Rational::zero();
        for n in 1..=len {
            let d = rat((self.at(n) - other.at(n)).abs(), n as i64);
            if d > best {
                best = d;
            }
        }
        best
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TurbulenceError {
    #[error("sequence needs at least 2 entries, got {0}")]
    TooShort(usize),
    #[error("window radius must be at least 2, got {0}")]
    BadWindow(u32),
    #[error("stripe index must be at least 1")]
    BadStripeIndex,
    #[error("sequences must have the same length")]
    LengthMismatch,
}

/// The order isomorphism z ↦ 1/(1+2^-z) from the logical line onto (0,1).
/// Exact rational for integer z, deterministic dyadic otherwise.
pub fn fscale(z: &Rational) -> Rational {
    logistic_shift(&rat(1, 2), z)
}

/// Logical height: finite z, or the closure levels at the strip's bottom and
/// top edges.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LogicalZ {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl LogicalZ {
    pub fn physical(&self) -> Rational {
        match self {
            LogicalZ::NegInf => Rational::zero(),
            LogicalZ::Finite(z) => fscale(z),
            LogicalZ::PosInf => Rational::one(),
        }
    }
}

/// A point of stripe n in logical coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StripeChart {
    pub n: usize,
    pub x: Rational,
    pub z: LogicalZ,
}

impl StripeChart {
    pub fn physical(&self) -> Point {
        vec![self.x.clone(), self.z.physical()]
    }
}

/// x-range of stripe n: [1/(2n+1), 1/(2n)].
pub fn stripe_span(n: usize) -> (Rational, Rational) {
    (rat(1, 2 * n as i64 + 1), rat(1, 2 * n as i64))
}

/// The rectangle R(n,k) in the stripe chart.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LogicalRect {
    pub n: usize,
    pub k: i64,
    pub x_lo: Rational,
    pub x_hi: Rational,
    pub z_lo: Rational,
    pub z_hi: Rational,
}

pub fn rect(n: usize, k: i64) -> Result<LogicalRect, TurbulenceError> {
    if n < 1 {
        return Err(TurbulenceError::BadStripeIndex);
    }
    let (x_lo, x_hi) = stripe_span(n);
    Ok(LogicalRect {
        n,
        k,
        x_lo,
        x_hi,
        z_lo: rat(k, n as i64),
        z_hi: rat(k + 1, n as i64),
    })
}

impl LogicalRect {
    /// Physical corners (min, max).
    pub fn physical(&self) -> (Point, Point) {
        (
            vec![self.x_lo.clone(), fscale(&self.z_lo)],
            vec![self.x_hi.clone(), fscale(&self.z_hi)],
        )
    }
}

/// Logical z of connector n at parameter λ: the affine path from the
/// attachment level of stripe n to that of stripe n+1.
pub fn connector_z(x: &IntSeq, n: usize, lambda: &Rational) -> Rational {
    let start = rat(2 * x.at(n) + 1, 2 * n as i64);
    let end = rat(2 * x.at(n + 1) + 1, 2 * (n as i64 + 1));
    &(&(&Rational::one() - lambda) * &start) + &(lambda * &end)
}

/// Connector n abscissa at parameter λ: 1/(2n+1+λ).
pub fn connector_x(n: usize, lambda: &Rational) -> Rational {
    (&rat(2 * n as i64 + 1, 1) + lambda).recip()
}

/// The gadget complex for a truncated sequence, with the given stripe window
/// radius.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GadgetComplex {
    #[serde(flatten)]
    pub complex: GeoComplex,
    pub seq: IntSeq,
    pub window: u32,
}

pub fn build_f(x: &IntSeq, window: u32) -> Result<GadgetComplex, TurbulenceError> {
    let n_stripes = x.len();
    if n_stripes < 2 {
        return Err(TurbulenceError::TooShort(n_stripes));
    }
    if window < 2 {
        return Err(TurbulenceError::BadWindow(window));
    }
    let k_radius = window as i64;
    let zero = Rational::zero;
    let one = Rational::one;
    let half = rat(1, 2);

    let mut cells: Vec<Cell> = vec![
        Cell::new(
            CellGeom::Segment(vec![rat(-1, 1), half.clone()], vec![zero(), half.clone()]),
            CellLabel::I0,
        ),
        Cell::new(
            CellGeom::Segment(vec![zero(), zero()], vec![zero(), one()]),
            CellLabel::I0,
        ),
        Cell::new(
            CellGeom::Point(vec![zero(), half.clone()]),
            CellLabel::Junction,
        ),
    ];

    for n in 1..=n_stripes {
        let xn = x.at(n);
        let (xl, xr) = stripe_span(n);
        // Truncation rails standing in for the closure of the stack.
        cells.push(Cell::new(
            CellGeom::Segment(vec![xl.clone(), zero()], vec![xl.clone(), one()]),
            CellLabel::Rail {
                n,
                side: RectSide::L,
            },
        ));
        cells.push(Cell::new(
            CellGeom::Segment(vec![xr.clone(), zero()], vec![xr.clone(), one()]),
            CellLabel::Rail {
                n,
                side: RectSide::R,
            },
        ));
        for k in (xn - k_radius)..=(xn + k_radius) {
            let r = rect(n, k).expect("n >= 1");
            let y_lo = fscale(&r.z_lo);
            let y_hi = fscale(&r.z_hi);
            cells.push(Cell::new(
                CellGeom::Segment(
                    vec![xl.clone(), y_lo.clone()],
                    vec![xr.clone(), y_lo.clone()],
                ),
                CellLabel::Stripe {
                    n,
                    k,
                    side: RectSide::B,
                },
            ));
            cells.push(Cell::new(
                CellGeom::Segment(
                    vec![xl.clone(), y_lo.clone()],
                    vec![xl.clone(), y_hi.clone()],
                ),
                CellLabel::Stripe {
                    n,
                    k,
                    side: RectSide::L,
                },
            ));
            cells.push(Cell::new(
                CellGeom::Segment(vec![xr.clone(), y_lo], vec![xr.clone(), y_hi]),
                CellLabel::Stripe {
                    n,
                    k,
                    side: RectSide::R,
                },
            ));
        }
        // Top edge of the window: the bottom side of the next index up.
        let top_k = xn + k_radius + 1;
        let y_top = fscale(&rat(top_k, n as i64));
        cells.push(Cell::new(
            CellGeom::Segment(vec![xl.clone(), y_top.clone()], vec![xr.clone(), y_top]),
            CellLabel::Stripe {
                n,
                k: top_k,
                side: RectSide::B,
            },
        ));
        // The one filled rectangle, at k = x_n + 1.
        let filled = rect(n, xn + 1).expect("n >= 1");
        let (lo, hi) = filled.physical();
        cells.push(Cell::new(
            CellGeom::Rect(lo, hi),
            CellLabel::Stripe {
                n,
                k: xn + 1,
                side: RectSide::Interior,
            },
        ));
    }

    for n in 1..n_stripes {
        let mut prev: Option<Point> = None;
        for j in 0..=CONNECTOR_SAMPLES {
            let lambda = rat(j, CONNECTOR_SAMPLES);
            let p = vec![connector_x(n, &lambda), fscale(&connector_z(x, n, &lambda))];
            if let Some(q) = prev.take() {
                cells.push(Cell::new(
                    CellGeom::Segment(q, p.clone()),
                    CellLabel::Connector { n },
                ));
            }
            prev = Some(p);
        }
    }

    let ambient = vec![
        (rat(-1, 1), Rational::one()),
        (Rational::zero(), Rational::one()),
    ];
    let complex = GeoComplex::with_ambient(2, ambient, cells).expect("gadget cells are valid");
    Ok(GadgetComplex {
        complex,
        seq: x.clone(),
        window,
    })
}

// ---------------------------------------------------------------------------
// The shift homeomorphism σ
// ---------------------------------------------------------------------------

/// The logical z-shift σ applies at abscissa px ∈ (0,1), for the pair
/// (x⃗, y⃗): Δ_n/n on stripe n, the λ-interpolated value in gaps, Δ_1·λ on
/// the outer region, and 0 beyond the truncated stripes.
pub fn sigma_shift(x: &IntSeq, y: &IntSeq, px: &Rational) -> Result<Rational, TurbulenceError> {
    if x.len() != y.len() {
        return Err(TurbulenceError::LengthMismatch);
    }
    debug_assert!(*px > Rational::zero() && *px < Rational::one());
    let delta = |n: usize| rat(y.at(n) - x.at(n), 1);
    let q = px.recip();
    if q <= rat(2, 1) {
        // Outer region x ∈ [1/2, 1): px = 1/(1+λ).
        let lambda = &q - &Rational::one();
        return Ok(&delta(1) * &lambda);
    }
    let m: i64 = {
        use num_traits::ToPrimitive;
        q.floor().to_i64().expect("stripe index fits in i64")
    };
    if q.is_integer() || m % 2 == 0 {
        // Stripe n = floor(q)/2; both closed edges land here.
        let n = (m / 2) as usize;
        if n > x.len() {
            return Ok(Rational::zero());
        }
        Ok(&delta(n) / &rat(n as i64, 1))
    } else {
        // Gap between stripe n+1 and stripe n, n = (m−1)/2.
        let n = ((m - 1) / 2) as usize;
        if n > x.len() {
            return Ok(Rational::zero());
        }
        let lambda = &q - &rat(2 * n as i64 + 1, 1);
        let a = &(&delta(n) * &(&Rational::one() - &lambda)) / &rat(n as i64, 1);
        let b = &(&delta(n + 1) * &lambda) / &rat(n as i64 + 1, 1);
        Ok(&a + &b)
    }
}

/// σ on a logical point (px, z): exact.
pub fn sigma_eval_logical(
    x: &IntSeq,
    y: &IntSeq,
    px: &Rational,
    z: &Rational,
) -> Result<(Rational, Rational), TurbulenceError> {
    let s = sigma_shift(x, y, px)?;
    Ok((px.clone(), z + &s))
}

/// σ on a physical point. Points outside the open square (0,1)² return
/// unchanged (σ extends by the identity there). Exact whenever the z-shift
/// is an integer, dyadic within the error budget otherwise.
pub fn sigma_eval(x: &IntSeq, y: &IntSeq, p: &Point) -> Result<Point, TurbulenceError> {
    if x.len() != y.len() {
        return Err(TurbulenceError::LengthMismatch);
    }
    let (px, py) = (&p[0], &p[1]);
    let zero = Rational::zero();
    let one = Rational::one();
    if *px <= zero || *px >= one || *py <= zero || *py >= one {
        return Ok(p.clone());
    }
    let s = sigma_shift(x, y, px)?;
    if s.is_zero() {
        return Ok(p.clone());
    }
    Ok(vec![px.clone(), logistic_shift(py, &s)])
}

// ---------------------------------------------------------------------------
// Displacement profile
// ---------------------------------------------------------------------------

/// sup_z |f(z+δ) − f(z)| for the logistic scale, by ternary search on the
/// unimodal difference (target accuracy well below 2^-20).
pub fn displacement_entry(delta: &Rational) -> Rational {
    if delta.is_zero() {
        return Rational::zero();
    }
    let d = delta.abs();
    let g = |z: &Rational| -> Rational { &fscale(&(z + &d)) - &fscale(z) };
    let mut lo = &-&d - &Rational::one();
    let mut hi = Rational::one();
    let third = rat(1, 3);
    let tol = Rational::pow2(-18);
    while &hi - &lo > tol {
        let w = &(&hi - &lo) * &third;
        let m1 = &lo + &w;
        let m2 = &hi - &w;
        if g(&m1) < g(&m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    let mid = &(&lo + &hi) / &rat(2, 1);
    [g(&lo), g(&mid), g(&hi)].into_iter().max().unwrap()
}

/// Per-stripe displacement bounds for the pair (x⃗, y⃗): entry n is the sup
/// displacement the shift δ_n = (y_n − x_n)/n can produce.
pub fn displacement_profile(x: &IntSeq, y: &IntSeq) -> Result<Vec<Rational>, TurbulenceError> {
    if x.len() != y.len() {
        return Err(TurbulenceError::LengthMismatch);
    }
    Ok((1..=x.len())
        .map(|n| displacement_entry(&rat(y.at(n) - x.at(n), n as i64)))
        .collect())
}

// ---------------------------------------------------------------------------
// Cell-action verification
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellMapEntry {
    pub source: String,
    pub target: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StripeDisplacement {
    pub n: usize,
    pub sup: Rational,
    pub bound: Rational,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaReport {
    pub entries: Vec<CellMapEntry>,
    pub mismatch_count: usize,
    pub stripes: Vec<StripeDisplacement>,
    pub ok: bool,
}

/// Verify the cell action of σ between the two gadgets exactly in logical
/// coordinates, and bound per-stripe physical displacement.
pub fn sigma_verify(
    x: &IntSeq,
    y: &IntSeq,
    window: u32,
    tol: &Rational,
) -> Result<SigmaReport, TurbulenceError> {
    sigma_verify_impl(x, y, window, tol, false)
}

/// Seam for the verification suites' negative control: `flip` negates the
/// shift, which must produce cell mismatches whenever x ≠ y.
pub(crate) fn sigma_verify_impl(
    x: &IntSeq,
    y: &IntSeq,
    window: u32,
    tol: &Rational,
    flip: bool,
) -> Result<SigmaReport, TurbulenceError> {
    if x.len() != y.len() {
        return Err(TurbulenceError::LengthMismatch);
    }
    if x.len() < 2 {
        return Err(TurbulenceError::TooShort(x.len()));
    }
    if window < 2 {
        return Err(TurbulenceError::BadWindow(window));
    }
    let shift_at = |px: &Rational| -> Result<Rational, TurbulenceError> {
        let s = sigma_shift(x, y, px)?;
        Ok(if flip { -s } else { s })
    };

    let k_radius = window as i64;
    let mut entries = Vec::new();
    let mut stripes = Vec::new();
    let mut mismatch_count = 0usize;

    for n in 1..=x.len() {
        let xn = x.at(n);
        let yn = y.at(n);
        let dn = yn - xn;
        let (xl, xr) = stripe_span(n);
        let mut sup = Rational::zero();
        for k in (xn - k_radius)..=(xn + k_radius + 1) {
            let src = rect(n, k)?;
            let dst = rect(n, k + dn)?;
            // Both stripe edges must see the same shift, and it must carry
            // the source corners exactly onto the target corners.
            let mut ok = true;
            for px in [&xl, &xr] {
                let s = shift_at(px)?;
                for (zs, zd) in [(&src.z_lo, &dst.z_lo), (&src.z_hi, &dst.z_hi)] {
                    if &(zs + &s) != zd {
                        ok = false;
                    }
                    let disp = (&fscale(&(zs + &s)) - &fscale(zs)).abs();
                    if disp > sup {
                        sup = disp.clone();
                    }
                }
            }
            // Window alignment: the target index sits in y's window.
            if (k + dn - yn).abs() > k_radius + 1 {
                ok = false;
            }
            if !ok {
                mismatch_count += 1;
            }
            for side in ["l", "r", "b"] {
                entries.push(CellMapEntry {
                    source: format!("stripe({},{},{})", n, k, side),
                    target: format!("stripe({},{},{})", n, k + dn, side),
                    ok,
                });
            }
        }
        // The filled rectangle tracks k = x_n+1 ↦ k = y_n+1.
        let filled_ok = {
            let s = shift_at(&xl)?;
            &rat(xn + 1, n as i64) + &s == rat(yn + 1, n as i64)
        };
        entries.push(CellMapEntry {
            source: format!("stripe({},{},interior)", n, xn + 1),
            target: format!("stripe({},{},interior)", n, yn + 1),
            ok: filled_ok,
        });
        if !filled_ok {
            mismatch_count += 1;
        }
        let bound = &displacement_entry(&rat(dn, n as i64)) + tol;
        let ok = sup <= bound;
        if !ok {
            mismatch_count += 1;
        }
        stripes.push(StripeDisplacement { n, sup, bound, ok });
    }

    for n in 1..x.len() {
        let mut ok = true;
        for j in 0..=CONNECTOR_SAMPLES {
            let lambda = rat(j, CONNECTOR_SAMPLES);
            let px = connector_x(n, &lambda);
            let s = shift_at(&px)?;
            let zs = connector_z(x, n, &lambda);
            let zd = connector_z(y, n, &lambda);
            if &zs + &s != zd {
                ok = false;
            }
        }
        if !ok {
            mismatch_count += 1;
        }
        entries.push(CellMapEntry {
            source: format!("connector({})", n),
            target: format!("connector({})", n),
            ok,
        });
    }
    for fixed in ["i0", "junction"] {
        entries.push(CellMapEntry {
            source: fixed.to_string(),
            target: fixed.to_string(),
            ok: true,
        });
    }

    let ok = mismatch_count == 0;
    Ok(SigmaReport {
        entries,
        mismatch_count,
        stripes,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyzer::{component_count, puncture};

    #[test]
    fn fscale_examples() {
        assert_eq!(fscale(&rat(0, 1)), rat(1, 2));
        assert_eq!(fscale(&rat(1, 1)), rat(2, 3));
        assert_eq!(fscale(&rat(-1, 1)), rat(1, 3));
        let v = fscale(&rat(1, 2));
        assert!(v > rat(1, 2) && v < rat(2, 3));
    }

    #[test]
    fn rect_examples() {
        let r = rect(1, 0).unwrap();
        assert_eq!((r.x_lo.clone(), r.x_hi.clone()), (rat(1, 3), rat(1, 2)));
        let (lo, hi) = r.physical();
        assert_eq!(lo[1], rat(1, 2));
        assert_eq!(hi[1], rat(2, 3));

        let r = rect(1, -1).unwrap();
        let (lo, hi) = r.physical();
        assert_eq!(lo[1], rat(1, 3));
        assert_eq!(hi[1], rat(1, 2));

        let r = rect(2, 0).unwrap();
        assert_eq!((r.x_lo.clone(), r.x_hi.clone()), (rat(1, 5), rat(1, 4)));
        assert_eq!((r.z_lo.clone(), r.z_hi.clone()), (rat(0, 1), rat(1, 2)));

        assert_eq!(rect(0, 0).unwrap_err(), TurbulenceError::BadStripeIndex);
    }

    #[test]
    fn smallest_build() {
        let x = IntSeq::new(vec![0, 0]);
        let g = build_f(&x, 2).unwrap();
        let stripes: std::collections::BTreeSet<usize> = g
            .complex
            .cells()
            .iter()
            .filter_map(|c| match c.label {
                Some(CellLabel::Stripe { n, .. }) => Some(n),
                _ => None,
            })
            .collect();
        assert_eq!(stripes.into_iter().collect::<Vec<_>>(), vec![1, 2]);
        let connectors = g
            .complex
            .count_label(|l| matches!(l, CellLabel::Connector { .. }));
        assert_eq!(connectors, CONNECTOR_SAMPLES as usize);
        assert_eq!(
            g.complex.count_label(|l| matches!(l, CellLabel::Junction)),
            1
        );
        assert!(build_f(&IntSeq::new(vec![0]), 2).is_err());
        assert!(build_f(&x, 1).is_err());
    }

    #[test]
    fn gadget_has_two_path_components() {
        let x = IntSeq::new(vec![0, 1, -1]);
        let g = build_f(&x, 2).unwrap();
        assert_eq!(component_count(&g.complex), 2);
    }

    #[test]
    fn junction_puncture_in_i0() {
        let x = IntSeq::new(vec![0, 0]);
        let g = build_f(&x, 2).unwrap();
        let i0 = g
            .complex
            .restrict(|l| matches!(l, CellLabel::I0 | CellLabel::Junction))
            .unwrap();
        let r = puncture(&i0, &vec![rat(0, 1), rat(1, 2)]).unwrap();
        assert!(r.is_cut);
        assert_eq!(r.component_count_after, 3);
        // On the full gadget the same puncture adds two components.
        let r = puncture(&g.complex, &vec![rat(0, 1), rat(1, 2)]).unwrap();
        assert!(r.is_cut);
        assert_eq!(r.component_count_after, 4);
    }

    #[test]
    fn filled_marker_per_stripe() {
        let x = IntSeq::new(vec![3, -2]);
        let g = build_f(&x, 4).unwrap();
        for n in 1..=2 {
            let filled: Vec<i64> = g
                .complex
                .cells()
                .iter()
                .filter_map(|c| match (&c.geom, &c.label) {
                    (
                        CellGeom::Rect(..),
                        Some(CellLabel::Stripe {
                            n: sn,
                            k,
                            side: RectSide::Interior,
                        }),
                    ) if *sn == n => Some(*k),
                    _ => None,
                })
                .collect();
            assert_eq!(filled, vec![x.at(n) + 1]);
        }
    }

    #[test]
    fn sigma_identity_when_sequences_agree() {
        let x = IntSeq::new(vec![0, 3, -2]);
        for p in [
            vec![rat(2, 5), rat(1, 2)],
            vec![rat(1, 3), rat(2, 3)],
            vec![rat(7, 10), rat(1, 5)],
        ] {
            assert_eq!(sigma_eval(&x, &x, &p).unwrap(), p);
        }
    }

    #[test]
    fn sigma_stripe_shift_example() {
        // Stripe 1 shift by 1 moves f(0) to f(1).
        let x = IntSeq::new(vec![0, 0]);
        let y = IntSeq::new(vec![1, 0]);
        let p = vec![rat(1, 3), rat(1, 2)];
        assert_eq!(sigma_eval(&x, &y, &p).unwrap(), vec![rat(1, 3), rat(2, 3)]);
    }

    #[test]
    fn sigma_outer_branch_example() {
        // px = 2/3 means λ = 1/2, so z moves from 0 to 1/2.
        let x = IntSeq::new(vec![0, 0]);
        let y = IntSeq::new(vec![1, 0]);
        let p = vec![rat(2, 3), rat(1, 2)];
        let out = sigma_eval(&x, &y, &p).unwrap();
        assert_eq!(out[0], rat(2, 3));
        assert_eq!(out[1], fscale(&rat(1, 2)));
    }

    #[test]
    fn sigma_boundary_points_fixed() {
        let x = IntSeq::new(vec![0, 0]);
        let y = IntSeq::new(vec![5, -5]);
        for p in [
            vec![rat(-1, 2), rat(1, 2)],
            vec![rat(0, 1), rat(1, 4)],
            vec![rat(1, 2), rat(0, 1)],
            vec![rat(1, 1), rat(1, 3)],
        ] {
            assert_eq!(sigma_eval(&x, &y, &p).unwrap(), p);
        }
    }

    #[test]
    fn sigma_logical_round_trip_exact() {
        let x = IntSeq::new(vec![0, 2, -1, 4]);
        let y = IntSeq::new(vec![1, 0, -3, 4]);
        let abscissas = [
            rat(1, 3),
            rat(2, 5),
            rat(1, 2),
            rat(3, 4),
            rat(9, 40),
            rat(1, 7),
            rat(1, 11),
            rat(1, 20),
        ];
        for px in &abscissas {
            for z in [rat(0, 1), rat(5, 3), rat(-7, 2)] {
                let (qx, qz) = sigma_eval_logical(&x, &y, px, &z).unwrap();
                let (bx, bz) = sigma_eval_logical(&y, &x, &qx, &qz).unwrap();
                assert_eq!((bx, bz), (px.clone(), z));
            }
        }
    }

    #[test]
    fn sigma_physical_round_trip_exact_for_integer_shifts() {
        let x = IntSeq::new(vec![0, 2]);
        let y = IntSeq::new(vec![3, -2]);
        // On stripe 1 the shift Δ_1/1 is an integer.
        let p = vec![rat(2, 5), rat(3, 7)];
        let q = sigma_eval(&x, &y, &p).unwrap();
        assert_eq!(sigma_eval(&y, &x, &q).unwrap(), p);
    }

    #[test]
    fn sigma_verify_clean_and_flipped() {
        let x = IntSeq::new(vec![0, 1, -1]);
        let y = IntSeq::new(vec![1, 1, -2]);
        let tol = Rational::pow2(-30);
        let report = sigma_verify(&x, &y, 4, &tol).unwrap();
        assert!(report.ok, "mismatches: {}", report.mismatch_count);
        assert!(report.stripes.iter().all(|s| s.ok));

        let flipped = sigma_verify_impl(&x, &y, 4, &tol, true).unwrap();
        assert!(!flipped.ok);
        assert!(flipped.mismatch_count > 0);
    }

    #[test]
    fn sigma_verify_localizes_tail_difference() {
        let n = 4;
        let x = IntSeq::new(vec![0; n]);
        let mut yv = vec![0; n];
        yv[n - 1] = 1;
        let y = IntSeq::new(yv);
        let tol = Rational::pow2(-30);
        let report = sigma_verify(&x, &y, 4, &tol).unwrap();
        assert!(report.ok);
        for s in &report.stripes {
            if s.n < n {
                assert_eq!(s.sup, Rational::zero(), "stripe {}", s.n);
            } else {
                assert!(s.sup > Rational::zero());
            }
        }
    }

    #[test]
    fn displacement_profile_examples() {
        let x = IntSeq::new(vec![0, 0, 0]);
        assert!(displacement_profile(&x, &x)
            .unwrap()
            .iter()
            .all(|e| e.is_zero()));

        // δ = 1: the sup is (√2−1)² = 3−2√2; check the closed form.
        let v = displacement_entry(&rat(1, 1));
        let s = &(&rat(3, 1) - &v) / &rat(2, 1);
        let err = (&(&s * &s) - &rat(2, 1)).abs();
        assert!(err < Rational::pow2(-19), "err = {}", err);

        // Constant difference: entries strictly decreasing in n.
        let y = IntSeq::new(vec![1, 1, 1]);
        let profile = displacement_profile(&x, &y).unwrap();
        assert!(profile[0] > profile[1] && profile[1] > profile[2]);
    }

    #[test]
    fn metric_is_sup_of_scaled_differences() {
        let x = IntSeq::new(vec![0, 0, 0]);
        let y = IntSeq::new(vec![1, 4, 3]);
        assert_eq!(x.metric(&y), rat(2, 1));
    }

    #[test]
    fn gadget_json_reads_back_as_complex() {
        let g = build_f(&IntSeq::new(vec![0, 0]), 2).unwrap();
        let json = serde_json::to_string(&g).unwrap();
        let as_complex: GeoComplex = serde_json::from_str(&json).unwrap();
        assert_eq!(as_complex, g.complex);
        let back: GadgetComplex = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
    }
}
