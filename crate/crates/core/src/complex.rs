//! Geometric complexes: finite unions of points, segments, and axis-aligned
//! rectangles with exact rational coordinates.
//!
//! Cells may carry role labels so downstream checks can find the apex of a
//! cone, the filled rectangle of a stripe, a connector polyline, and so on.
//! Labels serialize as short strings (`"cone"`, `"stripe(2,-1,l)"`, …).

use crate::rational::Rational;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

pub type Point = Vec<Rational>;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RectSide {
    L,
    R,
    B,
    Interior,
}

impl fmt::Display for RectSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RectSide::L => "l",
            RectSide::R => "r",
            RectSide::B => "b",
            RectSide::Interior => "interior",
        };
        write!(f, "{}", s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CellLabel {
    Floor,
    FloorCube,
    Dset,
    Cone,
    Apex,
    Cylinder,
    I0,
    Junction,
    Stripe { n: usize, k: i64, side: RectSide },
    Rail { n: usize, side: RectSide },
    Connector { n: usize },
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellLabel::Floor => write!(f, "floor"),
            CellLabel::FloorCube => write!(f, "floor-cube"),
            CellLabel::Dset => write!(f, "dset"),
            CellLabel::Cone => write!(f, "cone"),
            CellLabel::Apex => write!(f, "apex"),
            CellLabel::Cylinder => write!(f, "cylinder"),
            CellLabel::I0 => write!(f, "i0"),
            CellLabel::Junction => write!(f, "junction"),
            CellLabel::Stripe { n, k, side } => write!(f, "stripe({},{},{})", n, k, side),
            CellLabel::Rail { n, side } => write!(f, "rail({},{})", n, side),
            CellLabel::Connector { n } => write!(f, "connector({})", n),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("unknown cell label `{0}`")]
pub struct ParseLabelError(String);

impl FromStr for CellLabel {
    type Err = ParseLabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseLabelError(s.to_string());
        match s {
            "floor" => return Ok(CellLabel::Floor),
            "floor-cube" => return Ok(CellLabel::FloorCube),
            "dset" => return Ok(CellLabel::Dset),
            "cone" => return Ok(CellLabel::Cone),
            "apex" => return Ok(CellLabel::Apex),
            "cylinder" => return Ok(CellLabel::Cylinder),
            "i0" => return Ok(CellLabel::I0),
            "junction" => return Ok(CellLabel::Junction),
            _ => {}
        }
        let (name, args) = s
            .split_once('(')
            .and_then(|(n, rest)| rest.strip_suffix(')').map(|a| (n, a)))
            .ok_or_else(bad)?;
        let parts: Vec<&str> = args.split(',').collect();
        let side = |t: &str| -> Result<RectSide, ParseLabelError> {
            match t {
                "l" => Ok(RectSide::L),
                "r" => Ok(RectSide::R),
                "b" => Ok(RectSide::B),
                "interior" => Ok(RectSide::Interior),
                _ => Err(bad()),
            }
        };
        match (name, parts.as_slice()) {
            ("stripe", [n, k, sd]) => Ok(CellLabel::Stripe {
                n: n.parse().map_err(|_| bad())?,
                k: k.parse().map_err(|_| bad())?,
                side: side(sd)?,
            }),
            ("rail", [n, sd]) => Ok(CellLabel::Rail {
                n: n.parse().map_err(|_| bad())?,
                side: side(sd)?,
            }),
            ("connector", [n]) => Ok(CellLabel::Connector {
                n: n.parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

impl Serialize for CellLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CellLabel {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CellGeom {
    #[serde(rename = "point")]
    Point(Point),
    #[serde(rename = "seg")]
    Segment(Point, Point),
    /// Axis-aligned, with positive extent in exactly two axes.
    #[serde(rename = "rect")]
    Rect(Point, Point),
}

impl CellGeom {
    pub fn dim_of_coords(&self) -> usize {
        match self {
            CellGeom::Point(p) => p.len(),
            CellGeom::Segment(a, _) => a.len(),
            CellGeom::Rect(lo, _) => lo.len(),
        }
    }

    /// Per-axis bounding interval.
    pub fn bbox(&self) -> Vec<(Rational, Rational)> {
        match self {
            CellGeom::Point(p) => p.iter().map(|x| (x.clone(), x.clone())).collect(),
            CellGeom::Segment(a, b) => a
                .iter()
                .zip(b.iter())
                .map(|(x, y)| {
                    if x <= y {
                        (x.clone(), y.clone())
                    } else {
                        (y.clone(), x.clone())
                    }
                })
                .collect(),
            CellGeom::Rect(lo, hi) => lo
                .iter()
                .zip(hi.iter())
                .map(|(x, y)| (x.clone(), y.clone()))
                .collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Cell {
    #[serde(flatten)]
    pub geom: CellGeom,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<CellLabel>,
}

impl Cell {
    pub fn new(geom: CellGeom, label: CellLabel) -> Cell {
        Cell {
            geom,
            label: Some(label),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("cell coordinate arity {found} does not match ambient dimension {dim}")]
    DimensionMismatch { dim: usize, found: usize },
    #[error("coordinate outside the ambient box")]
    OutOfAmbient,
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("rectangle must have positive extent in exactly two axes, found {0}")]
    BadRectExtent(usize),
    #[error("rectangle has inverted extent on some axis")]
    InvertedRect,
    #[error("complex has no cells")]
    Empty,
}

/// A finite union of labeled cells inside an ambient box.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawComplex", into = "RawComplex")]
pub struct GeoComplex {
    dim: usize,
    ambient: Vec<(Rational, Rational)>,
    cells: Vec<Cell>,
}

#[derive(Serialize, Deserialize)]
struct RawComplex {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ambient: Option<Vec<(Rational, Rational)>>,
    cells: Vec<Cell>,
}

impl TryFrom<RawComplex> for GeoComplex {
    type Error = ComplexError;
    fn try_from(raw: RawComplex) -> Result<Self, ComplexError> {
        let ambient = raw
            .ambient
            .unwrap_or_else(|| unit_box(raw.dim));
        GeoComplex::with_ambient(raw.dim, ambient, raw.cells)
    }
}

impl From<GeoComplex> for RawComplex {
    fn from(c: GeoComplex) -> RawComplex {
        let ambient = if c.ambient == unit_box(c.dim) {
            None
        } else {
            Some(c.ambient)
        };
        RawComplex {
            dim: c.dim,
            ambient,
            cells: c.cells,
        }
    }
}

pub fn unit_box(dim: usize) -> Vec<(Rational, Rational)> {
    (0..dim)
        .map(|_| (Rational::zero(), Rational::one()))
        .collect()
}

impl GeoComplex {
    pub fn new(dim: usize, cells: Vec<Cell>) -> Result<Self, ComplexError> {
        GeoComplex::with_ambient(dim, unit_box(dim), cells)
    }

    pub fn with_ambient(
        dim: usize,
        ambient: Vec<(Rational, Rational)>,
        cells: Vec<Cell>,
    ) -> Result<Self, ComplexError> {
        if cells.is_empty() {
            return Err(ComplexError::Empty);
        }
        for cell in &cells {
            let found = cell.geom.dim_of_coords();
            if found != dim {
                return Err(ComplexError::DimensionMismatch { dim, found });
            }
            match &cell.geom {
                CellGeom::Point(_) => {}
                CellGeom::Segment(a, b) => {
                    if a == b {
                        return Err(ComplexError::DegenerateSegment);
                    }
                }
                CellGeom::Rect(lo, hi) => {
                    let mut extent = 0;
                    for (l, h) in lo.iter().zip(hi.iter()) {
                        if l > h {
                            return Err(ComplexError::InvertedRect);
                        }
                        if l < h {
                            extent += 1;
                        }
                    }
                    if extent != 2 {
                        return Err(ComplexError::BadRectExtent(extent));
                    }
                }
            }
            for (axis, (lo, hi)) in cell.geom.bbox().into_iter().enumerate() {
                let (alo, ahi) = &ambient[axis];
                if lo < *alo || hi > *ahi {
                    return Err(ComplexError::OutOfAmbient);
                }
            }
        }
        Ok(GeoComplex {
            dim,
            ambient,
            cells,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient(&self) -> &[(Rational, Rational)] {
        &self.ambient
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cells_with_label(&self, want: impl Fn(&CellLabel) -> bool) -> Vec<usize> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.label.as_ref().is_some_and(&want))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn count_label(&self, want: impl Fn(&CellLabel) -> bool) -> usize {
        self.cells_with_label(want).len()
    }

    /// A new complex keeping only cells whose label passes the filter.
    pub fn restrict(&self, want: impl Fn(&CellLabel) -> bool) -> Result<GeoComplex, ComplexError> {
        let cells = self
            .cells
            .iter()
            .filter(|c| c.label.as_ref().is_some_and(&want))
            .cloned()
            .collect();
        GeoComplex::with_ambient(self.dim, self.ambient.clone(), cells)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p2(x: (i64, i64), y: (i64, i64)) -> Point {
        vec![rat(x.0, x.1), rat(y.0, y.1)]
    }

    #[test]
    fn label_round_trip() {
        let labels = [
            CellLabel::Floor,
            CellLabel::FloorCube,
            CellLabel::Apex,
            CellLabel::Stripe {
                n: 2,
                k: -1,
                side: RectSide::L,
            },
            CellLabel::Rail {
                n: 3,
                side: RectSide::R,
            },
            CellLabel::Connector { n: 4 },
        ];
        for l in labels {
            let s = l.to_string();
            assert_eq!(s.parse::<CellLabel>().unwrap(), l);
        }
        assert!("stripe(1)".parse::<CellLabel>().is_err());
    }

    #[test]
    fn validation() {
        let seg = Cell::new(
            CellGeom::Segment(p2((0, 1), (0, 1)), p2((1, 1), (1, 1))),
            CellLabel::Floor,
        );
        assert!(GeoComplex::new(2, vec![seg.clone()]).is_ok());
        assert_eq!(
            GeoComplex::new(2, vec![]).unwrap_err(),
            ComplexError::Empty
        );
        let degenerate = Cell::new(
            CellGeom::Segment(p2((0, 1), (0, 1)), p2((0, 1), (0, 1))),
            CellLabel::Floor,
        );
        assert_eq!(
            GeoComplex::new(2, vec![degenerate]).unwrap_err(),
            ComplexError::DegenerateSegment
        );
        let out = Cell::new(CellGeom::Point(p2((3, 2), (0, 1))), CellLabel::Floor);
        assert_eq!(
            GeoComplex::new(2, vec![out]).unwrap_err(),
            ComplexError::OutOfAmbient
        );
        let thin = Cell::new(
            CellGeom::Rect(p2((0, 1), (0, 1)), p2((1, 1), (0, 1))),
            CellLabel::Floor,
        );
        assert_eq!(
            GeoComplex::new(2, vec![thin]).unwrap_err(),
            ComplexError::BadRectExtent(1)
        );
    }

    #[test]
    fn json_shape_matches_interface() {
        let c = GeoComplex::new(
            3,
            vec![Cell::new(
                CellGeom::Segment(
                    vec![rat(0, 1), rat(0, 1), rat(0, 1)],
                    vec![rat(1, 2), rat(1, 2), rat(1, 1)],
                ),
                CellLabel::Cone,
            )],
        )
        .unwrap();
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["dim"], 3);
        assert_eq!(json["cells"][0]["seg"][1][2], "1");
        assert_eq!(json["cells"][0]["label"], "cone");
        let back: GeoComplex = serde_json::from_value(json).unwrap();
        assert_eq!(back, c);
    }
}
