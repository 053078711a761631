//! Brute-force connectivity oracle: rasterize cells onto a voxel grid and
//! flood-fill.
//!
//! This is deliberately a different algorithm from the exact incidence graph
//! (test oracle, not a production path). Coordinates are snapped to a fixed
//! 2^20 grid over the ambient box, cells are scan-converted at sub-voxel
//! sampling density, and occupied voxels are merged under 8-connectivity in
//! 2-D (26 in 3-D).
//!
//! Precondition (documented, checkable with `min_component_gap`): distinct
//! path components must be separated by more than two voxels. Touching cells
//! always merge no matter how fine the grid, so the count is reliable once
//! the resolution exceeds twice the inverse of the smallest gap between
//! components.

use crate::complex::{CellGeom, GeoComplex};
use crate::rational::Rational;
use num_traits::ToPrimitive;
use std::collections::{HashMap, VecDeque};

const FIXED_BITS: u32 = 20;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RasterError {
    #[error("resolution must be a power of two and at least 2^6, got {0}")]
    BadResolution(u32),
    #[error("raster oracle supports dimensions 2 and 3, got {0}")]
    UnsupportedDimension(usize),
}

/// Component count of the rasterized complex.
pub fn raster_oracle(complex: &GeoComplex, resolution: u32) -> Result<usize, RasterError> {
    if resolution < 64 || !resolution.is_power_of_two() {
        return Err(RasterError::BadResolution(resolution));
    }
    let dim = complex.dim();
    if dim != 2 && dim != 3 {
        return Err(RasterError::UnsupportedDimension(dim));
    }
    let ambient = complex.ambient();

    // Snap a rational coordinate to the fixed 2^20 grid of its axis.
    let snap = |x: &Rational, axis: usize| -> i64 {
        let (lo, hi) = &ambient[axis];
        let f = &(x - lo) / &(hi - lo);
        let scaled = (&f * &Rational::pow2(FIXED_BITS as i64)).floor();
        scaled.to_i64().expect("fixed-point coordinate fits in i64")
    };
    let snap_point =
        |p: &[Rational]| -> Vec<i64> { p.iter().enumerate().map(|(k, x)| snap(x, k)).collect() };

    let r = resolution as i64;
    let voxel_of = |fx: i64| -> i32 { ((fx * r) >> FIXED_BITS).clamp(0, r - 1) as i32 };

    let mut occupied: HashMap<[i32; 3], u32> = HashMap::new();
    let mark = |occupied: &mut HashMap<[i32; 3], u32>, fp: &[i64]| {
        let mut key = [0i32; 3];
        for (k, &fx) in fp.iter().enumerate() {
            key[k] = voxel_of(fx);
        }
        occupied.insert(key, u32::MAX);
    };

    // Sub-voxel sampling: steps of at most a quarter voxel per axis.
    let samples = 4 * r;
    for cell in complex.cells() {
        match &cell.geom {
            CellGeom::Point(p) => mark(&mut occupied, &snap_point(p)),
            CellGeom::Segment(a, b) => {
                let fa = snap_point(a);
                let fb = snap_point(b);
                for j in 0..=samples {
                    let fp: Vec<i64> = fa
                        .iter()
                        .zip(fb.iter())
                        .map(|(&x, &y)| x + (y - x) * j / samples)
                        .collect();
                    mark(&mut occupied, &fp);
                }
            }
            CellGeom::Rect(lo, hi) => {
                let flo = snap_point(lo);
                let fhi = snap_point(hi);
                let free: Vec<usize> = (0..dim).filter(|&k| flo[k] < fhi[k]).collect();
                let (u, v) = (free[0], free[1]);
                let (u0, u1) = (voxel_of(flo[u]), voxel_of(fhi[u]));
                let (v0, v1) = (voxel_of(flo[v]), voxel_of(fhi[v]));
                let mut key = [0i32; 3];
                for (k, &fx) in flo.iter().enumerate() {
                    key[k] = voxel_of(fx);
                }
                for cu in u0..=u1 {
                    for cv in v0..=v1 {
                        let mut k = key;
                        k[u] = cu;
                        k[v] = cv;
                        occupied.insert(k, u32::MAX);
                    }
                }
            }
        }
    }

    // Flood fill over occupied voxels with full diagonal connectivity.
    let mut count = 0usize;
    let keys: Vec<[i32; 3]> = occupied.keys().cloned().collect();
    let zmax = if dim == 2 { 0 } else { 1 };
    for start in keys {
        if occupied[&start] != u32::MAX {
            continue;
        }
        count += 1;
        let id = count as u32;
        occupied.insert(start, id);
        let mut queue = VecDeque::new();
        queue.push_back(start);
        while let Some(cur) = queue.pop_front() {
            for dx in -1i32..=1 {
                for dy in -1i32..=1 {
                    for dz in -zmax..=zmax {
                        if dx == 0 && dy == 0 && dz == 0 {
                            continue;
                        }
                        let next = [cur[0] + dx, cur[1] + dy, cur[2] + dz];
                        if let Some(slot) = occupied.get_mut(&next) {
                            if *slot == u32::MAX {
                                *slot = id;
                                queue.push_back(next);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(count)
}

/// Smallest sup-norm bounding-box distance between cells lying in different
/// path components (per the exact analyzer); `None` for connected complexes.
/// A conservative lower bound for the raster precondition.
pub fn min_component_gap(complex: &GeoComplex, labels: &[usize]) -> Option<Rational> {
    let boxes: Vec<_> = complex.cells().iter().map(|c| c.geom.bbox()).collect();
    let mut best: Option<Rational> = None;
    for i in 0..boxes.len() {
        for j in (i + 1)..boxes.len() {
            if labels[i] == labels[j] {
                continue;
            }
            let mut gap = Rational::zero();
            for ((l1, h1), (l2, h2)) in boxes[i].iter().zip(boxes[j].iter()) {
                let axis_gap = if l2 > h1 {
                    l2 - h1
                } else if l1 > h2 {
                    l1 - h2
                } else {
                    Rational::zero()
                };
                if axis_gap > gap {
                    gap = axis_gap;
                }
            }
            if best.as_ref().is_none_or(|b| gap < *b) {
                best = Some(gap);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Cell, CellLabel};
    use crate::rational::rat;

    fn p2(x: (i64, i64), y: (i64, i64)) -> Vec<Rational> {
        vec![rat(x.0, x.1), rat(y.0, y.1)]
    }

    #[test]
    fn rejects_bad_resolution() {
        let c = GeoComplex::new(
            2,
            vec![Cell::new(
                CellGeom::Point(p2((1, 2), (1, 2))),
                CellLabel::Dset,
            )],
        )
        .unwrap();
        assert_eq!(raster_oracle(&c, 100), Err(RasterError::BadResolution(100)));
        assert_eq!(raster_oracle(&c, 32), Err(RasterError::BadResolution(32)));
    }

    #[test]
    fn two_disjoint_segments_at_all_resolutions() {
        let c = GeoComplex::new(
            2,
            vec![
                Cell::new(
                    CellGeom::Segment(p2((0, 1), (0, 1)), p2((1, 4), (0, 1))),
                    CellLabel::Floor,
                ),
                Cell::new(
                    CellGeom::Segment(p2((1, 2), (1, 2)), p2((1, 1), (1, 2))),
                    CellLabel::Floor,
                ),
            ],
        )
        .unwrap();
        for res in [64, 256, 1024] {
            assert_eq!(raster_oracle(&c, res).unwrap(), 2);
        }
    }

    #[test]
    fn rect_plus_touching_segment_is_one() {
        let c = GeoComplex::new(
            2,
            vec![
                Cell::new(
                    CellGeom::Rect(p2((0, 1), (0, 1)), p2((1, 2), (1, 2))),
                    CellLabel::Floor,
                ),
                Cell::new(
                    CellGeom::Segment(p2((1, 2), (1, 2)), p2((1, 1), (1, 1))),
                    CellLabel::Floor,
                ),
            ],
        )
        .unwrap();
        assert_eq!(raster_oracle(&c, 256).unwrap(), 1);
    }

    #[test]
    fn cone_in_three_dimensions_is_one() {
        let apex = vec![rat(1, 2), rat(1, 2), rat(1, 1)];
        let base = |x: (i64, i64)| vec![rat(x.0, x.1), rat(0, 1), rat(0, 1)];
        let c = GeoComplex::new(
            3,
            vec![
                Cell::new(
                    CellGeom::Segment(base((0, 1)), apex.clone()),
                    CellLabel::Cone,
                ),
                Cell::new(
                    CellGeom::Segment(base((1, 1)), apex.clone()),
                    CellLabel::Cone,
                ),
                Cell::new(CellGeom::Point(apex), CellLabel::Apex),
            ],
        )
        .unwrap();
        assert_eq!(raster_oracle(&c, 64).unwrap(), 1);
    }

    #[test]
    fn component_gap_is_exact() {
        let c = GeoComplex::new(
            2,
            vec![
                Cell::new(
                    CellGeom::Segment(p2((0, 1), (0, 1)), p2((1, 4), (0, 1))),
                    CellLabel::Floor,
                ),
                Cell::new(
                    CellGeom::Segment(p2((1, 2), (0, 1)), p2((1, 1), (0, 1))),
                    CellLabel::Floor,
                ),
            ],
        )
        .unwrap();
        let (labels, n) = crate::analyzer::path_components(&c);
        assert_eq!(n, 2);
        assert_eq!(min_component_gap(&c, &labels).unwrap(), rat(1, 4));
    }
}
