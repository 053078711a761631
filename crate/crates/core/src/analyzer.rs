//! Path components and cut points of geometric complexes.
//!
//! Every cell is convex, so a union of cells is path-connected exactly when
//! the graph joining cells with non-empty intersection is connected. All
//! intersection tests are exact rational; there is no epsilon geometry here.
//!
//! Point removal works on a `Scene`: removing p deletes point cells equal to
//! p, splits 1-cells containing p in their interior into two pieces that do
//! not touch at p, and leaves 2-cells whole (a convex planar set minus a
//! point stays path-connected). Incidences whose entire intersection is a
//! removed point stop counting.

use crate::complex::{Cell, CellGeom, GeoComplex, Point};
use crate::rational::Rational;
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AnalyzeError {
    #[error("point does not lie on the complex")]
    NotOnComplex,
    #[error("point has wrong dimension")]
    DimensionMismatch,
}

/// Result of removing a single point.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PunctureResult {
    pub point: Point,
    pub is_cut: bool,
    pub component_count_after: usize,
}

// ---------------------------------------------------------------------------
// Exact primitives
// ---------------------------------------------------------------------------

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b.iter()).map(|(x, y)| x - y).collect()
}

fn add_scaled(a: &[Rational], t: &Rational, u: &[Rational]) -> Vec<Rational> {
    a.iter().zip(u.iter()).map(|(x, du)| x + &(t * du)).collect()
}

fn parallel(u: &[Rational], v: &[Rational]) -> bool {
    let d = u.len();
    for i in 0..d {
        for j in (i + 1)..d {
            if &u[i] * &v[j] != &u[j] * &v[i] {
                return false;
            }
        }
    }
    true
}

/// Parameter t with p = a + t·u, if p lies on the line; u must be non-zero.
fn param_on_line(a: &[Rational], u: &[Rational], p: &[Rational]) -> Option<Rational> {
    let k = u.iter().position(|c| !c.is_zero())?;
    let t = &(&p[k] - &a[k]) / &u[k];
    let q = add_scaled(a, &t, u);
    if q == p {
        Some(t)
    } else {
        None
    }
}

/// The exact intersection of two convex cells. Always a (possibly
/// degenerate) convex box or segment for our cell types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntersectGeom {
    Empty,
    Single(Point),
    Segment(Point, Point),
    Box(Point, Point),
}

impl IntersectGeom {
    fn is_empty(&self) -> bool {
        matches!(self, IntersectGeom::Empty)
    }
}

fn seg_seg(a: &Point, b: &Point, c: &Point, d: &Point) -> IntersectGeom {
    let u = sub(b, a);
    let v = sub(d, c);
    if parallel(&u, &v) {
        let tc = match param_on_line(a, &u, c) {
            Some(t) => t,
            None => return IntersectGeom::Empty,
        };
        let td = param_on_line(a, &u, d).expect("parallel endpoint lies on the same line");
        let (mut lo, mut hi) = if tc <= td { (tc, td) } else { (td, tc) };
        lo = lo.max(Rational::zero());
        hi = hi.min(Rational::one());
        if lo > hi {
            IntersectGeom::Empty
        } else if lo == hi {
            IntersectGeom::Single(add_scaled(a, &lo, &u))
        } else {
            IntersectGeom::Segment(add_scaled(a, &lo, &u), add_scaled(a, &hi, &u))
        }
    } else {
        let w = sub(c, a);
        let dims = u.len();
        for i in 0..dims {
            for j in (i + 1)..dims {
                let det = &(&u[i] * &-&v[j]) - &(&-&v[i] * &u[j]);
                if det.is_zero() {
                    continue;
                }
                let t = &(&(&w[i] * &-&v[j]) - &(&-&v[i] * &w[j])) / &det;
                let s = &(&(&u[i] * &w[j]) - &(&w[i] * &u[j])) / &det;
                // Verify in full; skew lines satisfy two equations only.
                let lhs = add_scaled(a, &t, &u);
                let rhs = add_scaled(c, &s, &v);
                if lhs != rhs {
                    return IntersectGeom::Empty;
                }
                let unit = |x: &Rational| !x.is_negative() && *x <= Rational::one();
                return if unit(&t) && unit(&s) {
                    IntersectGeom::Single(lhs)
                } else {
                    IntersectGeom::Empty
                };
            }
        }
        unreachable!("non-parallel vectors have a non-zero cross component")
    }
}

fn seg_box(a: &Point, b: &Point, bx: &[(Rational, Rational)]) -> IntersectGeom {
    let u = sub(b, a);
    let mut t0 = Rational::zero();
    let mut t1 = Rational::one();
    for (k, (lo, hi)) in bx.iter().enumerate() {
        if u[k].is_zero() {
            if &a[k] < lo || &a[k] > hi {
                return IntersectGeom::Empty;
            }
            continue;
        }
        let ta = &(lo - &a[k]) / &u[k];
        let tb = &(hi - &a[k]) / &u[k];
        let (enter, exit) = if ta <= tb { (ta, tb) } else { (tb, ta) };
        if enter > t0 {
            t0 = enter;
        }
        if exit < t1 {
            t1 = exit;
        }
        if t0 > t1 {
            return IntersectGeom::Empty;
        }
    }
    if t0 == t1 {
        IntersectGeom::Single(add_scaled(a, &t0, &u))
    } else {
        IntersectGeom::Segment(add_scaled(a, &t0, &u), add_scaled(a, &t1, &u))
    }
}

fn box_box(x: &[(Rational, Rational)], y: &[(Rational, Rational)]) -> IntersectGeom {
    let mut lo = Vec::with_capacity(x.len());
    let mut hi = Vec::with_capacity(x.len());
    let mut extent = 0usize;
    for ((xl, xh), (yl, yh)) in x.iter().zip(y.iter()) {
        let l = if xl >= yl { xl.clone() } else { yl.clone() };
        let h = if xh <= yh { xh.clone() } else { yh.clone() };
        if l > h {
            return IntersectGeom::Empty;
        }
        if l < h {
            extent += 1;
        }
        lo.push(l);
        hi.push(h);
    }
    match extent {
        0 => IntersectGeom::Single(lo),
        1 => IntersectGeom::Segment(lo, hi),
        _ => IntersectGeom::Box(lo, hi),
    }
}

pub fn intersect_cells(a: &CellGeom, b: &CellGeom) -> IntersectGeom {
    match (a, b) {
        (CellGeom::Point(p), other) | (other, CellGeom::Point(p)) => {
            if cell_contains(other, p) {
                IntersectGeom::Single(p.clone())
            } else {
                IntersectGeom::Empty
            }
        }
        (CellGeom::Segment(a0, a1), CellGeom::Segment(b0, b1)) => seg_seg(a0, a1, b0, b1),
        (CellGeom::Segment(a0, a1), CellGeom::Rect(..)) => seg_box(a0, a1, &b.bbox()),
        (CellGeom::Rect(..), CellGeom::Segment(b0, b1)) => seg_box(b0, b1, &a.bbox()),
        (CellGeom::Rect(..), CellGeom::Rect(..)) => box_box(&a.bbox(), &b.bbox()),
    }
}

pub fn cell_contains(cell: &CellGeom, p: &Point) -> bool {
    match cell {
        CellGeom::Point(q) => q == p,
        CellGeom::Segment(a, b) => {
            let u = sub(b, a);
            match param_on_line(a, &u, p) {
                Some(t) => !t.is_negative() && t <= Rational::one(),
                None => false,
            }
        }
        CellGeom::Rect(lo, hi) => lo
            .iter()
            .zip(hi.iter())
            .zip(p.iter())
            .all(|((l, h), x)| l <= x && x <= h),
    }
}

fn bbox_overlap(x: &[(Rational, Rational)], y: &[(Rational, Rational)]) -> bool {
    x.iter()
        .zip(y.iter())
        .all(|((xl, xh), (yl, yh))| xl <= yh && yl <= xh)
}

// ---------------------------------------------------------------------------
// Scene: a complex with a set of removed points
// ---------------------------------------------------------------------------

#[derive(Clone)]
struct SceneCell {
    geom: CellGeom,
    alive: bool,
}

/// A complex refined at removed points, supporting repeated punctures.
#[derive(Clone)]
pub struct Scene {
    cells: Vec<SceneCell>,
    bboxes: Vec<Vec<(Rational, Rational)>>,
    edges: Vec<BTreeMap<usize, IntersectGeom>>,
    removed: Vec<Point>,
}

impl Scene {
    pub fn new(complex: &GeoComplex) -> Scene {
        let cells: Vec<SceneCell> = complex
            .cells()
            .iter()
            .map(|c| SceneCell {
                geom: c.geom.clone(),
                alive: true,
            })
            .collect();
        let bboxes: Vec<_> = cells.iter().map(|c| c.geom.bbox()).collect();
        let mut edges: Vec<BTreeMap<usize, IntersectGeom>> = vec![BTreeMap::new(); cells.len()];
        for i in 0..cells.len() {
            for j in (i + 1)..cells.len() {
                if !bbox_overlap(&bboxes[i], &bboxes[j]) {
                    continue;
                }
                let geom = intersect_cells(&cells[i].geom, &cells[j].geom);
                if !geom.is_empty() {
                    edges[i].insert(j, geom.clone());
                    edges[j].insert(i, geom);
                }
            }
        }
        Scene {
            cells,
            bboxes,
            edges,
            removed: Vec::new(),
        }
    }

    fn edge_usable(&self, geom: &IntersectGeom) -> bool {
        match geom {
            IntersectGeom::Empty => false,
            IntersectGeom::Single(p) => !self.removed.contains(p),
            _ => true,
        }
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        self.cells
            .iter()
            .any(|c| c.alive && cell_contains(&c.geom, p))
            && !self.removed.contains(p)
    }

    /// Remove a single point from the union of cells.
    pub fn remove_point(&mut self, p: &Point) -> Result<(), AnalyzeError> {
        if p.len() != self.bboxes.first().map_or(p.len(), |b| b.len()) {
            return Err(AnalyzeError::DimensionMismatch);
        }
        let mut on_complex = false;
        let mut new_cells: Vec<CellGeom> = Vec::new();
        for idx in 0..self.cells.len() {
            if !self.cells[idx].alive || !cell_contains(&self.cells[idx].geom, p) {
                continue;
            }
            on_complex = true;
            match self.cells[idx].geom.clone() {
                CellGeom::Point(_) => {
                    self.cells[idx].alive = false;
                }
                CellGeom::Segment(a, b) => {
                    if &a != p && &b != p {
                        // Interior point: split into two pieces meeting only at p.
                        self.cells[idx].alive = false;
                        new_cells.push(CellGeom::Segment(a.clone(), p.clone()));
                        new_cells.push(CellGeom::Segment(p.clone(), b.clone()));
                    }
                }
                CellGeom::Rect(..) => {}
            }
        }
        if !on_complex || self.removed.contains(p) {
            return Err(AnalyzeError::NotOnComplex);
        }
        for geom in new_cells {
            let bbox = geom.bbox();
            let idx = self.cells.len();
            self.cells.push(SceneCell { geom, alive: true });
            self.bboxes.push(bbox);
            self.edges.push(BTreeMap::new());
            for other in 0..idx {
                if !self.cells[other].alive {
                    continue;
                }
                if !bbox_overlap(&self.bboxes[idx], &self.bboxes[other]) {
                    continue;
                }
                let geom = intersect_cells(&self.cells[idx].geom, &self.cells[other].geom);
                if !geom.is_empty() {
                    self.edges[idx].insert(other, geom.clone());
                    self.edges[other].insert(idx, geom);
                }
            }
        }
        self.removed.push(p.clone());
        Ok(())
    }

    /// Connected components of the current (punctured) union.
    pub fn component_count(&self) -> usize {
        self.component_labels().1
    }

    /// Deterministic labels: each alive cell gets the smallest alive cell
    /// index of its component. Dead cells get usize::MAX.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.cells.len();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if !self.cells[start].alive || label[start] != usize::MAX {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            label[start] = start;
            while let Some(i) = stack.pop() {
                let neighbors: Vec<usize> = self.edges[i]
                    .iter()
                    .filter(|(j, geom)| {
                        self.cells[**j].alive
                            && label[**j] == usize::MAX
                            && self.edge_usable(geom)
                    })
                    .map(|(j, _)| *j)
                    .collect();
                for j in neighbors {
                    label[j] = start;
                    stack.push(j);
                }
            }
        }
        (label, count)
    }
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

/// Component labeling of a complex: per-cell label (smallest member cell
/// index) and the number of path components.
pub fn path_components(complex: &GeoComplex) -> (Vec<usize>, usize) {
    Scene::new(complex).component_labels()
}

pub fn component_count(complex: &GeoComplex) -> usize {
    path_components(complex).1
}

/// Remove one point and report whether it was a cut point.
pub fn puncture(complex: &GeoComplex, p: &Point) -> Result<PunctureResult, AnalyzeError> {
    let mut scene = Scene::new(complex);
    puncture_scene(&mut scene, p)
}

/// Same, continuing from an already punctured scene (the scene is advanced).
pub fn puncture_scene(scene: &mut Scene, p: &Point) -> Result<PunctureResult, AnalyzeError> {
    let before = scene.component_count();
    scene.remove_point(p)?;
    let after = scene.component_count();
    Ok(PunctureResult {
        point: p.clone(),
        is_cut: after > before,
        component_count_after: after,
    })
}

/// Filter candidates down to the non-cut points of the scene's current state.
pub fn classify_non_cut(scene: &Scene, candidates: &[Point]) -> Result<Vec<Point>, AnalyzeError> {
    let mut non_cut = Vec::new();
    for p in candidates {
        let mut trial = scene.clone();
        let result = puncture_scene(&mut trial, p)?;
        if !result.is_cut {
            non_cut.push(p.clone());
        }
    }
    Ok(non_cut)
}

/// Intersection of the complex with the closed sup-norm ball of radius `eps`
/// around `center`; `None` when the ball misses the complex entirely.
pub fn clip_to_box(complex: &GeoComplex, center: &Point, eps: &Rational) -> Option<GeoComplex> {
    let bx: Vec<(Rational, Rational)> = center.iter().map(|c| (c - eps, c + eps)).collect();
    clip_to_ranges(complex, &bx)
}

/// Intersection of the complex with an arbitrary closed box.
pub fn clip_to_ranges(
    complex: &GeoComplex,
    bx: &[(Rational, Rational)],
) -> Option<GeoComplex> {
    let mut cells = Vec::new();
    for cell in complex.cells() {
        let clipped = match &cell.geom {
            CellGeom::Point(p) => {
                if bx.iter().zip(p.iter()).all(|((l, h), x)| l <= x && x <= h) {
                    IntersectGeom::Single(p.clone())
                } else {
                    IntersectGeom::Empty
                }
            }
            CellGeom::Segment(a, b) => seg_box(a, b, bx),
            CellGeom::Rect(..) => box_box(&cell.geom.bbox(), bx),
        };
        let geom = match clipped {
            IntersectGeom::Empty => continue,
            IntersectGeom::Single(p) => CellGeom::Point(p),
            IntersectGeom::Segment(a, b) => CellGeom::Segment(a, b),
            IntersectGeom::Box(lo, hi) => CellGeom::Rect(lo, hi),
        };
        cells.push(Cell {
            geom,
            label: cell.label,
        });
    }
    if cells.is_empty() {
        return None;
    }
    let ambient = complex
        .ambient()
        .iter()
        .zip(bx.iter())
        .map(|((alo, ahi), (blo, bhi))| {
            (
                if alo >= blo { alo.clone() } else { blo.clone() },
                if ahi <= bhi { ahi.clone() } else { bhi.clone() },
            )
        })
        .collect();
    GeoComplex::with_ambient(complex.dim(), ambient, cells).ok()
}
