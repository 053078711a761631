//! Coding continua at finite truncation depth, and the homeomorphism lifts
//! between them.
//!
//! A `DSet` is the finite stand-in for a countable set of isolated points
//! accumulating exactly on its base: at level k it carries a 1/2^k-net of
//! the base at height 1/2^k. The complexes built here place that data at
//! height 0 of a higher-dimensional cube and cone it to an apex (`build_i`,
//! `build_fan`, `build_tilde`, `build_j`), or embed a rescaled cylinder over
//! the set on the bottom face (`build_hat`). The lifts turn a 1-D map A → B
//! into maps of the corresponding complexes and back.

use crate::closed_set::{ClosedSet1D, Component};
use crate::complex::{Cell, CellGeom, CellLabel, GeoComplex, Point};
use crate::evaluable::EvaluableHomeo;
use crate::pl::{Orientation, PLHomeo1D, PlError};
use crate::rational::{rat, Rational};
use serde::{Deserialize, Serialize};

// ---------------------------------------------------------------------------
// D-sets
// ---------------------------------------------------------------------------

/// Finite truncation of a countable isolated set over a base: (position,
/// height) pairs with heights 1/2^k, the level-k positions forming a
/// 1/2^k-net of the base.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DSet {
    pub base: ClosedSet1D,
    pub depth: u32,
    pub points: Vec<(Rational, Rational)>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DsetError {
    #[error("depth must be at least 1")]
    BadDepth,
    #[error("point ({0}, {1}) has a height off the 1/2^k ladder")]
    BadHeight(Rational, Rational),
    #[error("position {0} lies outside the base set")]
    OffBase(Rational),
    #[error("duplicate point")]
    Duplicate,
    #[error("level {level} positions fail the 1/2^{level}-net property")]
    NetFailure { level: u32 },
}

/// Deterministic D-set: level-k positions are the dyadic grid of denominator
/// 2^k snapped to the nearest base point, ties toward 0, de-duplicated.
pub fn gen_dset(base: &ClosedSet1D, depth: u32) -> Result<DSet, DsetError> {
    if depth < 1 {
        return Err(DsetError::BadDepth);
    }
    let mut points = Vec::new();
    for k in 1..=depth {
        let h = Rational::pow2(-(k as i64));
        let steps = 1i64 << k;
        let mut level: Vec<Rational> = Vec::new();
        for j in 0..=steps {
            let g = rat(j, steps);
            let (_, snapped) = base.nearest(&g);
            level.push(snapped);
        }
        level.sort();
        level.dedup();
        for pos in level {
            points.push((pos, h.clone()));
        }
    }
    let d = DSet {
        base: base.clone(),
        depth,
        points,
    };
    validate_dset(&d)?;
    Ok(d)
}

/// Check every `DSet` invariant; the net property is an exact rational
/// coverage test per level.
pub fn validate_dset(d: &DSet) -> Result<(), DsetError> {
    if d.depth < 1 {
        return Err(DsetError::BadDepth);
    }
    let heights: Vec<Rational> = (1..=d.depth)
        .map(|k| Rational::pow2(-(k as i64)))
        .collect();
    let mut seen = d.points.clone();
    seen.sort();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(DsetError::Duplicate);
    }
    for (pos, h) in &d.points {
        if !heights.contains(h) {
            return Err(DsetError::BadHeight(pos.clone(), h.clone()));
        }
        if !d.base.contains(pos) {
            return Err(DsetError::OffBase(pos.clone()));
        }
    }
    for (k, h) in heights.iter().enumerate() {
        let level = (k + 1) as u32;
        let mut positions: Vec<&Rational> = d
            .points
            .iter()
            .filter(|(_, ph)| ph == h)
            .map(|(p, _)| p)
            .collect();
        positions.sort();
        if !covers(&positions, h, &d.base) {
            return Err(DsetError::NetFailure { level });
        }
    }
    Ok(())
}

/// Is every base point within `radius` of some position?
fn covers(positions: &[&Rational], radius: &Rational, base: &ClosedSet1D) -> bool {
    if positions.is_empty() {
        return false;
    }
    // Merge the closed balls around the positions, then test containment
    // of each component.
    let mut balls: Vec<(Rational, Rational)> = positions
        .iter()
        .map(|p| (*p - radius, *p + radius))
        .collect();
    balls.sort();
    let mut merged: Vec<(Rational, Rational)> = Vec::new();
    for (lo, hi) in balls {
        match merged.last_mut() {
            Some((_, last_hi)) if lo <= *last_hi => {
                if hi > *last_hi {
                    *last_hi = hi;
                }
            }
            _ => merged.push((lo, hi)),
        }
    }
    base.components().iter().all(|c| {
        merged
            .iter()
            .any(|(lo, hi)| lo <= c.left() && c.right() <= hi)
    })
}

// ---------------------------------------------------------------------------
// Complexes
// ---------------------------------------------------------------------------

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CodingError {
    #[error("apex must have positive height")]
    ApexAtFloor,
    #[error("apex has wrong dimension")]
    ApexDimension,
    #[error(transparent)]
    Dset(#[from] DsetError),
    #[error("invalid complex: {0}")]
    Complex(#[from] crate::complex::ComplexError),
}

fn floor_cells_2d(components: &[Component]) -> Vec<Cell> {
    components
        .iter()
        .map(|c| {
            let geom = match c {
                Component::Point(p) => CellGeom::Point(vec![p.clone(), Rational::zero()]),
                Component::Interval(a, b) => CellGeom::Segment(
                    vec![a.clone(), Rational::zero()],
                    vec![b.clone(), Rational::zero()],
                ),
            };
            Cell::new(geom, CellLabel::Floor)
        })
        .collect()
}

fn dset_cells_2d(points: &[(Rational, Rational)]) -> Vec<Cell> {
    points
        .iter()
        .map(|(pos, h)| {
            Cell::new(
                CellGeom::Point(vec![pos.clone(), h.clone()]),
                CellLabel::Dset,
            )
        })
        .collect()
}

/// Truncated I(A,A) in [0,1]²: the components of A at height 0 plus one
/// point cell per D-set element.
pub fn build_i(a: &ClosedSet1D, depth: u32) -> Result<GeoComplex, CodingError> {
    let d = gen_dset(a, depth)?;
    build_i_with(a.components(), &d.points).map_err(CodingError::from)
}

fn build_i_with(
    components: &[Component],
    dset_points: &[(Rational, Rational)],
) -> Result<GeoComplex, crate::complex::ComplexError> {
    let mut cells = floor_cells_2d(components);
    cells.extend(dset_cells_2d(dset_points));
    GeoComplex::new(2, cells)
}

/// The default apex (1/2, …, 1/2, 1) in the lifted cube.
pub fn default_apex(out_dim: usize) -> Point {
    let mut p = vec![rat(1, 2); out_dim - 1];
    p.push(Rational::one());
    p
}

/// Cone a complex to an apex one dimension up. Cells are lifted to height 0;
/// floor and dset point cells get a segment to the apex, segment and
/// rectangle cells are coned through their corner vertices.
pub fn build_fan(complex: &GeoComplex, apex: &Point) -> Result<GeoComplex, CodingError> {
    let out_dim = complex.dim() + 1;
    if apex.len() != out_dim {
        return Err(CodingError::ApexDimension);
    }
    if apex[out_dim - 1] <= Rational::zero() {
        return Err(CodingError::ApexAtFloor);
    }
    let lift = |p: &Point| -> Point {
        let mut q = p.clone();
        q.push(Rational::zero());
        q
    };
    let mut cells: Vec<Cell> = Vec::new();
    let mut cones: Vec<Cell> = Vec::new();
    for cell in complex.cells() {
        let coned = matches!(cell.label, Some(CellLabel::Floor) | Some(CellLabel::Dset));
        match &cell.geom {
            CellGeom::Point(p) => {
                let q = lift(p);
                if coned {
                    cones.push(Cell::new(
                        CellGeom::Segment(q.clone(), apex.clone()),
                        CellLabel::Cone,
                    ));
                }
                cells.push(Cell {
                    geom: CellGeom::Point(q),
                    label: cell.label,
                });
            }
            CellGeom::Segment(p0, p1) => {
                let (q0, q1) = (lift(p0), lift(p1));
                if coned {
                    for corner in [&q0, &q1] {
                        cones.push(Cell::new(
                            CellGeom::Segment(corner.clone(), apex.clone()),
                            CellLabel::Cone,
                        ));
                    }
                }
                cells.push(Cell {
                    geom: CellGeom::Segment(q0, q1),
                    label: cell.label,
                });
            }
            CellGeom::Rect(lo, hi) => {
                let (qlo, qhi) = (lift(lo), lift(hi));
                if coned {
                    // All four corners of the (2-extent) rectangle.
                    let free: Vec<usize> =
                        (0..lo.len()).filter(|&k| lo[k] < hi[k]).collect();
                    let mut corners = vec![qlo.clone()];
                    for &axis in &free {
                        let mut extra = Vec::new();
                        for c in &corners {
                            let mut c2 = c.clone();
                            c2[axis] = hi[axis].clone();
                            extra.push(c2);
                        }
                        corners.extend(extra);
                    }
                    for corner in corners {
                        cones.push(Cell::new(
                            CellGeom::Segment(corner, apex.clone()),
                            CellLabel::Cone,
                        ));
                    }
                }
                cells.push(Cell {
                    geom: CellGeom::Rect(qlo, qhi),
                    label: cell.label,
                });
            }
        }
    }
    cells.extend(cones);
    cells.push(Cell::new(CellGeom::Point(apex.clone()), CellLabel::Apex));
    GeoComplex::new(out_dim, cells).map_err(CodingError::from)
}

/// Ã at truncation depth: the fan over I(A,A) with the default apex.
pub fn build_tilde(a: &ClosedSet1D, depth: u32) -> Result<GeoComplex, CodingError> {
    build_fan(&build_i(a, depth)?, &default_apex(3))
}

fn build_tilde_with(
    components: &[Component],
    dset_points: &[(Rational, Rational)],
) -> Result<GeoComplex, CodingError> {
    build_fan(&build_i_with(components, dset_points)?, &default_apex(3))
}

/// Truncated J([0,1], A) in [0,1]³: floor segment [0,1]×{0}×{0}, D-set
/// points at third coordinate 0, cone segments from the D-set points and
/// from A's component corners to the apex.
pub fn build_j(a: &ClosedSet1D, depth: u32) -> Result<GeoComplex, CodingError> {
    let d = gen_dset(a, depth)?;
    let apex = default_apex(3);
    let zero = Rational::zero;
    let mut cells = vec![Cell::new(
        CellGeom::Segment(
            vec![zero(), zero(), zero()],
            vec![Rational::one(), zero(), zero()],
        ),
        CellLabel::FloorCube,
    )];
    for (pos, h) in &d.points {
        cells.push(Cell::new(
            CellGeom::Point(vec![pos.clone(), h.clone(), zero()]),
            CellLabel::Dset,
        ));
    }
    for (pos, h) in &d.points {
        cells.push(Cell::new(
            CellGeom::Segment(vec![pos.clone(), h.clone(), zero()], apex.clone()),
            CellLabel::Cone,
        ));
    }
    for c in a.components() {
        let corners: Vec<&Rational> = match c {
            Component::Point(p) => vec![p],
            Component::Interval(a, b) => vec![a, b],
        };
        for corner in corners {
            cells.push(Cell::new(
                CellGeom::Segment(vec![corner.clone(), zero(), zero()], apex.clone()),
                CellLabel::Cone,
            ));
        }
    }
    cells.push(Cell::new(CellGeom::Point(apex), CellLabel::Apex));
    GeoComplex::new(3, cells).map_err(CodingError::from)
}

/// Â in [0,1]²: the floor segment [1/3,2/3]×{0} plus the rescaled cylinder
/// over A on [0,1/3].
pub fn build_hat(a: &ClosedSet1D) -> GeoComplex {
    let third = rat(1, 3);
    let rescale = |x: &Rational| &(x + &Rational::one()) / &rat(3, 1);
    let mut cells = vec![Cell::new(
        CellGeom::Segment(
            vec![third.clone(), Rational::zero()],
            vec![rat(2, 3), Rational::zero()],
        ),
        CellLabel::Floor,
    )];
    for c in a.components() {
        let geom = match c {
            Component::Point(p) => {
                let x = rescale(p);
                CellGeom::Segment(vec![x.clone(), Rational::zero()], vec![x, third.clone()])
            }
            Component::Interval(lo, hi) => CellGeom::Rect(
                vec![rescale(lo), Rational::zero()],
                vec![rescale(hi), third.clone()],
            ),
        };
        cells.push(Cell::new(geom, CellLabel::Cylinder));
    }
    GeoComplex::new(2, cells).expect("hat cells are valid")
}

// ---------------------------------------------------------------------------
// Lifts and extensions
// ---------------------------------------------------------------------------

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LiftError {
    #[error("map does not carry A onto B")]
    ImageMismatch,
    #[error("transported D-set fails the net property at level {level}")]
    NetFailure { level: u32 },
    #[error("map does not preserve the floor segment (sampled at x = {0})")]
    FloorNotPreserved(Rational),
    #[error("cell correspondence broke at source cell {0}")]
    CellMismatch(usize),
    #[error("incidence not preserved between source cells {0} and {1}")]
    IncidenceMismatch(usize, usize),
    #[error(transparent)]
    Coding(#[from] CodingError),
    #[error(transparent)]
    Pl(#[from] PlError),
}

/// The boundary-fixing extension f′ of a 1-D map: conjugate f onto
/// [1/3,2/3], identity outside when order-preserving, x ↦ 1−x outside when
/// order-reversing.
pub fn extend_homeo_1d(f: &PLHomeo1D) -> PLHomeo1D {
    let third = rat(1, 3);
    let two_thirds = rat(2, 3);
    let one = Rational::one();
    let zero = Rational::zero();
    let inner = |u: &Rational| &(u + &one) / &rat(3, 1);
    let mut pts: Vec<(Rational, Rational)> = Vec::new();
    match f.orientation() {
        Orientation::Preserving => {
            pts.push((zero.clone(), zero.clone()));
            for (u, v) in f.breakpoints() {
                pts.push((inner(u), inner(v)));
            }
            pts.push((one.clone(), one.clone()));
        }
        Orientation::Reversing => {
            pts.push((zero.clone(), one.clone()));
            pts.push((third, two_thirds));
            for (u, v) in f.breakpoints() {
                pts.push((inner(u), inner(v)));
            }
            pts.push((one.clone(), zero.clone()));
        }
    }
    pts.sort_by(|a, b| a.0.cmp(&b.0));
    pts.dedup();
    PLHomeo1D::new(f.orientation(), pts).expect("extension of a homeomorphism")
}

/// Result of lifting a 1-D map to the hat complexes: the product map
/// (x,t) ↦ (f′(x), t) plus the exact cell correspondence it induces.
#[derive(Clone, Debug)]
pub struct HatLift {
    pub map: EvaluableHomeo,
    pub f_prime: PLHomeo1D,
    /// Pairs (source cell in build_hat(A), target cell in build_hat(B)).
    pub cell_map: Vec<(usize, usize)>,
}

pub fn lift_hat_homeo(
    f: &PLHomeo1D,
    a: &ClosedSet1D,
    b: &ClosedSet1D,
) -> Result<HatLift, LiftError> {
    if &f.image(a) != b {
        return Err(LiftError::ImageMismatch);
    }
    let f_prime = extend_homeo_1d(f);
    let hat_a = build_hat(a);
    let hat_b = build_hat(b);
    let mut cell_map = Vec::with_capacity(hat_a.cells().len());
    let mut hit = vec![false; hat_b.cells().len()];
    for (i, cell) in hat_a.cells().iter().enumerate() {
        let image = match &cell.geom {
            CellGeom::Segment(p, q) => {
                let (xp, xq) = (f_prime.eval(&p[0])?, f_prime.eval(&q[0])?);
                if xp <= xq {
                    CellGeom::Segment(vec![xp, p[1].clone()], vec![xq, q[1].clone()])
                } else if p[1] == q[1] {
                    CellGeom::Segment(vec![xq, q[1].clone()], vec![xp, p[1].clone()])
                } else {
                    CellGeom::Segment(vec![xp, p[1].clone()], vec![xq, q[1].clone()])
                }
            }
            CellGeom::Rect(lo, hi) => {
                let (mut xl, mut xh) = (f_prime.eval(&lo[0])?, f_prime.eval(&hi[0])?);
                if xl > xh {
                    std::mem::swap(&mut xl, &mut xh);
                }
                CellGeom::Rect(vec![xl, lo[1].clone()], vec![xh, hi[1].clone()])
            }
            CellGeom::Point(p) => CellGeom::Point(vec![f_prime.eval(&p[0])?, p[1].clone()]),
        };
        let target = hat_b
            .cells()
            .iter()
            .position(|c| cells_equal_unoriented(&c.geom, &image))
            .ok_or(LiftError::CellMismatch(i))?;
        if hit[target] {
            return Err(LiftError::CellMismatch(i));
        }
        hit[target] = true;
        cell_map.push((i, target));
    }
    if !hit.iter().all(|&h| h) {
        return Err(LiftError::CellMismatch(hat_a.cells().len()));
    }
    Ok(HatLift {
        map: EvaluableHomeo::pl_product(f_prime.clone()),
        f_prime,
        cell_map,
    })
}

fn cells_equal_unoriented(a: &CellGeom, b: &CellGeom) -> bool {
    match (a, b) {
        (CellGeom::Segment(a0, a1), CellGeom::Segment(b0, b1)) => {
            (a0 == b0 && a1 == b1) || (a0 == b1 && a1 == b0)
        }
        _ => a == b,
    }
}

/// A floor map recovered from a 2-D lift, with the worst-case deviation the
/// sampling could hide (zero on the structurally exact path).
#[derive(Clone, Debug)]
pub struct BaseExtraction {
    pub map: PLHomeo1D,
    pub error_bound: Rational,
}

/// Recover the base 1-D map from a lift: x ↦ unrescale(first coordinate of
/// f̂((x+1)/3, 0)). Product lifts are inverted exactly; other kinds are
/// sampled on the dyadic grid with 2^grid_bits steps and interpolated.
pub fn extract_base_homeo(
    fhat: &EvaluableHomeo,
    grid_bits: u32,
) -> Result<BaseExtraction, LiftError> {
    use crate::evaluable::MapKind;
    let third = rat(1, 3);
    let two_thirds = rat(2, 3);
    if let MapKind::PlProduct(fp) = fhat.kind() {
        // Exact path: unconjugate the inner part of f′.
        let at_third = fp.eval(&third).map_err(LiftError::Pl)?;
        let at_two_thirds = fp.eval(&two_thirds).map_err(LiftError::Pl)?;
        let preserves = at_third == third && at_two_thirds == two_thirds;
        let reverses = at_third == two_thirds && at_two_thirds == third;
        if !preserves && !reverses {
            return Err(LiftError::FloorNotPreserved(third));
        }
        let unscale = |v: &Rational| &(&rat(3, 1) * v) - &Rational::one();
        let mut pts: Vec<(Rational, Rational)> = vec![
            (Rational::zero(), unscale(&at_third)),
            (Rational::one(), unscale(&at_two_thirds)),
        ];
        for (u, v) in fp.breakpoints() {
            if *u > third && *u < two_thirds {
                pts.push((unscale(u), unscale(v)));
            }
        }
        pts.sort_by(|x, y| x.0.cmp(&y.0));
        pts.dedup();
        let orientation = if preserves {
            Orientation::Preserving
        } else {
            Orientation::Reversing
        };
        let map = PLHomeo1D::new(orientation, pts)?;
        return Ok(BaseExtraction {
            map,
            error_bound: Rational::zero(),
        });
    }

    let steps = 1i64 << grid_bits;
    let mut pts: Vec<(Rational, Rational)> = Vec::with_capacity(steps as usize + 1);
    for j in 0..=steps {
        let x = rat(j, steps);
        let embedded = vec![&(&x + &Rational::one()) / &rat(3, 1), Rational::zero()];
        let image = fhat
            .eval(&embedded)
            .map_err(|_| LiftError::FloorNotPreserved(x.clone()))?;
        if !image[1].is_zero() || image[0] < third || image[0] > two_thirds {
            return Err(LiftError::FloorNotPreserved(x));
        }
        pts.push((x, &(&rat(3, 1) * &image[0]) - &Rational::one()));
    }
    let orientation = if pts[0].1 < pts[steps as usize].1 {
        Orientation::Preserving
    } else {
        Orientation::Reversing
    };
    let mut error_bound = Rational::zero();
    for w in pts.windows(2) {
        let gap = (&w[1].1 - &w[0].1).abs();
        if gap > error_bound {
            error_bound = gap;
        }
    }
    let map = PLHomeo1D::new(orientation, pts)?;
    Ok(BaseExtraction { map, error_bound })
}

/// Result of transporting the tilde complex of A through a 1-D map: the
/// image complex over B (with the transported D-set) and the induced cell
/// bijection, incidence verified exhaustively.
#[derive(Clone, Debug)]
pub struct TildeLift {
    pub transported: GeoComplex,
    pub transported_dset: DSet,
    /// Pairs (cell in build_tilde(A, m), cell in the transported complex).
    pub cell_map: Vec<(usize, usize)>,
}

pub fn lift_tilde_homeo(
    f: &PLHomeo1D,
    a: &ClosedSet1D,
    b: &ClosedSet1D,
    depth: u32,
) -> Result<TildeLift, LiftError> {
    if &f.image(a) != b {
        return Err(LiftError::ImageMismatch);
    }
    let dset_a = gen_dset(a, depth).map_err(CodingError::from)?;
    // Transport (position, height) ↦ (f(position), height); the paper's
    // slope argument does not survive truncation for free, so the net
    // property is re-checked rather than assumed.
    let transported_points: Vec<(Rational, Rational)> = dset_a
        .points
        .iter()
        .map(|(pos, h)| (f.eval(pos).expect("position in [0,1]"), h.clone()))
        .collect();
    let transported_dset = DSet {
        base: b.clone(),
        depth,
        points: transported_points.clone(),
    };
    if let Err(e) = validate_dset(&transported_dset) {
        return Err(match e {
            DsetError::NetFailure { level } => LiftError::NetFailure { level },
            other => LiftError::Coding(CodingError::Dset(other)),
        });
    }

    let tilde_a = build_tilde(a, depth)?;
    // Image components in source order, so the pairing is positional.
    let image_components: Vec<Component> = a
        .components()
        .iter()
        .map(|c| match c {
            Component::Point(p) => Component::Point(f.eval(p).expect("in domain")),
            Component::Interval(lo, hi) => {
                let u = f.eval(lo).expect("in domain");
                let v = f.eval(hi).expect("in domain");
                if u <= v {
                    Component::Interval(u, v)
                } else {
                    Component::Interval(v, u)
                }
            }
        })
        .collect();
    let tilde_b = build_tilde_with(&image_components, &transported_points)?;
    if tilde_a.cells().len() != tilde_b.cells().len() {
        return Err(LiftError::CellMismatch(0));
    }
    let cell_map: Vec<(usize, usize)> = (0..tilde_a.cells().len()).map(|i| (i, i)).collect();
    // Labels must line up (apex ↦ apex, floor ↦ floor, cone ↦ cone, …).
    for (i, j) in &cell_map {
        if tilde_a.cells()[*i].label != tilde_b.cells()[*j].label {
            return Err(LiftError::CellMismatch(*i));
        }
    }
    // Exhaustive incidence preservation.
    use crate::analyzer::{intersect_cells, IntersectGeom};
    let n = cell_map.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let in_a = !matches!(
                intersect_cells(&tilde_a.cells()[i].geom, &tilde_a.cells()[j].geom),
                IntersectGeom::Empty
            );
            let in_b = !matches!(
                intersect_cells(&tilde_b.cells()[i].geom, &tilde_b.cells()[j].geom),
                IntersectGeom::Empty
            );
            if in_a != in_b {
                return Err(LiftError::IncidenceMismatch(i, j));
            }
        }
    }
    Ok(TildeLift {
        transported: tilde_b,
        transported_dset,
        cell_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_set::mk_closed_set;
    use crate::rational::rat;

    fn pts(coords: &[(i64, i64)]) -> ClosedSet1D {
        ClosedSet1D::points(
            &coords
                .iter()
                .map(|&(n, d)| rat(n, d))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn dset_over_singleton() {
        let a = pts(&[(1, 2)]);
        let d = gen_dset(&a, 3).unwrap();
        assert_eq!(
            d.points,
            vec![
                (rat(1, 2), rat(1, 2)),
                (rat(1, 2), rat(1, 4)),
                (rat(1, 2), rat(1, 8)),
            ]
        );
    }

    #[test]
    fn dset_over_full_interval() {
        let a = mk_closed_set(vec![Component::Interval(rat(0, 1), rat(1, 1))]).unwrap();
        let d = gen_dset(&a, 1).unwrap();
        assert_eq!(
            d.points,
            vec![
                (rat(0, 1), rat(1, 2)),
                (rat(1, 2), rat(1, 2)),
                (rat(1, 1), rat(1, 2)),
            ]
        );
    }

    #[test]
    fn dset_over_endpoints_snaps_ties_toward_zero() {
        let a = pts(&[(0, 1), (1, 1)]);
        let d = gen_dset(&a, 2).unwrap();
        assert_eq!(d.points.len(), 4);
        let level1: Vec<_> = d
            .points
            .iter()
            .filter(|(_, h)| *h == rat(1, 2))
            .map(|(p, _)| p.clone())
            .collect();
        assert_eq!(level1, vec![rat(0, 1), rat(1, 1)]);
    }

    #[test]
    fn dset_validation_catches_net_failure() {
        let a = mk_closed_set(vec![Component::Interval(rat(0, 1), rat(1, 1))]).unwrap();
        let d = DSet {
            base: a,
            depth: 2,
            points: vec![(rat(0, 1), rat(1, 2)), (rat(0, 1), rat(1, 4))],
        };
        assert_eq!(validate_dset(&d), Err(DsetError::NetFailure { level: 1 }));
    }

    #[test]
    fn build_i_cell_counts() {
        let c = build_i(&pts(&[(1, 2)]), 1).unwrap();
        assert_eq!(c.cells().len(), 2);
        let c = build_i(&pts(&[(0, 1), (1, 1)]), 2).unwrap();
        assert_eq!(c.count_label(|l| matches!(l, CellLabel::Floor)), 2);
        assert_eq!(c.count_label(|l| matches!(l, CellLabel::Dset)), 4);
        // All cells disjoint by construction.
        assert_eq!(crate::analyzer::component_count(&c), c.cells().len());
    }

    #[test]
    fn tilde_is_a_connected_cone() {
        let c = build_tilde(&pts(&[(1, 2)]), 1).unwrap();
        assert_eq!(c.count_label(|l| matches!(l, CellLabel::Cone)), 2);
        assert_eq!(crate::analyzer::component_count(&c), 1);

        let c = build_tilde(&pts(&[(0, 1), (1, 1)]), 2).unwrap();
        assert_eq!(c.count_label(|l| matches!(l, CellLabel::Cone)), 6);
        assert_eq!(c.count_label(|l| matches!(l, CellLabel::Floor)), 2);
        assert_eq!(crate::analyzer::component_count(&c), 1);
    }

    #[test]
    fn fan_rejects_floor_apex() {
        let base = build_i(&pts(&[(1, 2)]), 1).unwrap();
        let mut apex = default_apex(3);
        apex[2] = Rational::zero();
        assert!(matches!(
            build_fan(&base, &apex),
            Err(CodingError::ApexAtFloor)
        ));
    }

    #[test]
    fn j_complex_smallest_case() {
        let c = build_j(&pts(&[(1, 2)]), 1).unwrap();
        assert_eq!(c.count_label(|l| matches!(l, CellLabel::FloorCube)), 1);
        assert_eq!(c.count_label(|l| matches!(l, CellLabel::Dset)), 1);
        assert_eq!(c.count_label(|l| matches!(l, CellLabel::Cone)), 2);
        assert_eq!(crate::analyzer::component_count(&c), 1);
    }

    #[test]
    fn j_apex_puncture_isolates_dset_segments() {
        let a = pts(&[(1, 2)]);
        let depth = 2;
        let c = build_j(&a, depth).unwrap();
        let dset_count = c.count_label(|l| matches!(l, CellLabel::Dset));
        let r = crate::analyzer::puncture(&c, &default_apex(3)).unwrap();
        assert!(r.is_cut);
        assert_eq!(r.component_count_after, dset_count + 1);
    }

    #[test]
    fn hat_examples() {
        let c = build_hat(&pts(&[(0, 1)]));
        assert_eq!(c.cells().len(), 2);
        match &c.cells()[1].geom {
            CellGeom::Segment(p, q) => {
                assert_eq!(p[0], rat(1, 3));
                assert_eq!(q, &vec![rat(1, 3), rat(1, 3)]);
            }
            other => panic!("expected vertical segment, got {:?}", other),
        }

        let full = mk_closed_set(vec![Component::Interval(rat(0, 1), rat(1, 1))]).unwrap();
        let c = build_hat(&full);
        assert!(matches!(&c.cells()[1].geom, CellGeom::Rect(lo, hi)
            if lo == &vec![rat(1, 3), rat(0, 1)] && hi == &vec![rat(2, 3), rat(1, 3)]));

        let c = build_hat(&pts(&[(0, 1), (1, 1)]));
        let xs: Vec<Rational> = c.cells()[1..]
            .iter()
            .map(|cell| match &cell.geom {
                CellGeom::Segment(p, _) => p[0].clone(),
                _ => panic!("expected segments"),
            })
            .collect();
        assert_eq!(xs, vec![rat(1, 3), rat(2, 3)]);
    }

    #[test]
    fn extend_identity_and_reversal() {
        let id = extend_homeo_1d(&PLHomeo1D::identity());
        for k in 0..=12 {
            let x = rat(k, 12);
            assert_eq!(id.eval(&x).unwrap(), x);
        }
        let rev = extend_homeo_1d(&PLHomeo1D::reversal());
        for k in 0..=12 {
            let x = rat(k, 12);
            assert_eq!(rev.eval(&x).unwrap(), &Rational::one() - &x);
        }
    }

    #[test]
    fn extend_rescales_breakpoints() {
        let f = PLHomeo1D::new(
            Orientation::Preserving,
            vec![
                (rat(0, 1), rat(0, 1)),
                (rat(1, 2), rat(1, 4)),
                (rat(1, 1), rat(1, 1)),
            ],
        )
        .unwrap();
        let fp = extend_homeo_1d(&f);
        assert_eq!(fp.eval(&rat(1, 2)).unwrap(), rat(5, 12));
        assert_eq!(fp.eval(&rat(1, 6)).unwrap(), rat(1, 6));
        assert_eq!(fp.eval(&rat(5, 6)).unwrap(), rat(5, 6));
    }

    #[test]
    fn hat_lift_identity_and_reversal() {
        let a = pts(&[(0, 1)]);
        let lift = lift_hat_homeo(&PLHomeo1D::identity(), &a, &a).unwrap();
        assert_eq!(lift.cell_map, vec![(0, 0), (1, 1)]);

        let b = pts(&[(1, 1)]);
        let lift = lift_hat_homeo(&PLHomeo1D::reversal(), &a, &b).unwrap();
        assert_eq!(lift.cell_map.len(), build_hat(&a).cells().len());
        // The x=1/3 vertical lands on the x=2/3 vertical.
        let hat_b = build_hat(&b);
        let (_, target) = lift.cell_map[1];
        assert!(matches!(&hat_b.cells()[target].geom, CellGeom::Segment(p, _)
            if p[0] == rat(2, 3)));
    }

    #[test]
    fn hat_lift_requires_image_match() {
        let a = pts(&[(0, 1)]);
        let b = pts(&[(1, 2)]);
        assert_eq!(
            lift_hat_homeo(&PLHomeo1D::identity(), &a, &b).unwrap_err(),
            LiftError::ImageMismatch
        );
    }

    #[test]
    fn extract_recovers_base_map() {
        let f = PLHomeo1D::new(
            Orientation::Preserving,
            vec![
                (rat(0, 1), rat(0, 1)),
                (rat(1, 2), rat(1, 4)),
                (rat(1, 1), rat(1, 1)),
            ],
        )
        .unwrap();
        let a = pts(&[(0, 1), (1, 2)]);
        let b = f.image(&a);
        let lift = lift_hat_homeo(&f, &a, &b).unwrap();
        let extracted = extract_base_homeo(&lift.map, 6).unwrap();
        assert_eq!(extracted.error_bound, Rational::zero());
        assert_eq!(extracted.map, f);
        // Agreement at every dyadic rational of denominator 2^10.
        for j in 0..=1024 {
            let x = rat(j, 1024);
            assert_eq!(extracted.map.eval(&x).unwrap(), f.eval(&x).unwrap());
        }
    }

    #[test]
    fn extract_rejects_floor_breaker() {
        let swap = EvaluableHomeo::coordinate_swap(crate::complex::unit_box(2));
        assert!(matches!(
            extract_base_homeo(&swap, 6),
            Err(LiftError::FloorNotPreserved(_))
        ));
    }

    #[test]
    fn tilde_lift_identity_and_reversal() {
        let a = pts(&[(0, 1)]);
        let lift = lift_tilde_homeo(&PLHomeo1D::identity(), &a, &a, 2).unwrap();
        assert_eq!(lift.transported, build_tilde(&a, 2).unwrap());

        let b = pts(&[(1, 1)]);
        let lift = lift_tilde_homeo(&PLHomeo1D::reversal(), &a, &b, 2).unwrap();
        for (pos, _) in &lift.transported_dset.points {
            assert_eq!(*pos, rat(1, 1));
        }
    }

    #[test]
    fn tilde_lift_reports_net_failure() {
        // Slope 7 on the last segment stretches level gaps past the net radius.
        let f = PLHomeo1D::new(
            Orientation::Preserving,
            vec![
                (rat(0, 1), rat(0, 1)),
                (rat(7, 8), rat(1, 8)),
                (rat(1, 1), rat(1, 1)),
            ],
        )
        .unwrap();
        let a = mk_closed_set(vec![Component::Interval(rat(7, 8), rat(1, 1))]).unwrap();
        let b = f.image(&a);
        let err = lift_tilde_homeo(&f, &a, &b, 3).unwrap_err();
        assert!(matches!(err, LiftError::NetFailure { .. }), "{:?}", err);
    }
}
