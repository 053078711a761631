//! Deterministic SVG rendering of geometric complexes.
//!
//! 2-D complexes render directly; 3-D complexes are projected
//! orthographically by dropping the last axis. Styling keys off cell labels:
//! filled stripe rectangles are shaded, connectors drawn as paths, the
//! T-component and junction highlighted. Output is built by plain string
//! concatenation with fixed numeric formatting, so identical inputs give
//! byte-identical documents.

use crate::complex::{CellGeom, CellLabel, GeoComplex, RectSide};
use crate::rational::Rational;
use crate::turbulence::{build_f, GadgetComplex};
use std::fmt::Write as _;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SvgError {
    #[error("cannot render dimension {0} (only 2 and 3 supported)")]
    DimensionTooHigh(usize),
}

const SCALE: f64 = 1000.0;

struct Frame {
    x_lo: f64,
    y_hi: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn of(complex: &GeoComplex) -> Frame {
        let (x_lo, x_hi) = &complex.ambient()[0];
        let (y_lo, y_hi) = &complex.ambient()[1];
        Frame {
            x_lo: x_lo.to_f64(),
            y_hi: y_hi.to_f64(),
            width: (x_hi.to_f64() - x_lo.to_f64()) * SCALE,
            height: (y_hi.to_f64() - y_lo.to_f64()) * SCALE,
        }
    }

    fn x(&self, v: &Rational) -> String {
        format!("{:.3}", (v.to_f64() - self.x_lo) * SCALE)
    }

    fn y(&self, v: &Rational) -> String {
        format!("{:.3}", (self.y_hi - v.to_f64()) * SCALE)
    }
}

fn stroke_of(label: &Option<CellLabel>) -> &'static str {
    match label {
        Some(CellLabel::Connector { .. }) => "#2a9d8f",
        Some(CellLabel::I0) => "#e76f51",
        Some(CellLabel::Rail { .. }) => "#999999",
        Some(CellLabel::Cone) => "#888888",
        _ => "#000000",
    }
}

/// Render a complex; `samples` caps the number of vertices drawn per
/// connector polyline (pass `CONNECTOR_SAMPLES` for full fidelity).
pub fn render_svg(complex: &GeoComplex, samples: u32) -> Result<String, SvgError> {
    if complex.dim() > 3 {
        return Err(SvgError::DimensionTooHigh(complex.dim()));
    }
    let frame = Frame::of(complex);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {:.3} {:.3}">"#,
        frame.width, frame.height
    );
    let _ = writeln!(
        out,
        r##"<rect x="0" y="0" width="{:.3}" height="{:.3}" fill="#ffffff"/>"##,
        frame.width, frame.height
    );

    // Connector cells render as joined paths, one per connector label.
    let mut i = 0usize;
    let cells = complex.cells();
    while i < cells.len() {
        let cell = &cells[i];
        match (&cell.geom, &cell.label) {
            (CellGeom::Segment(..), Some(CellLabel::Connector { n })) => {
                let mut vertices: Vec<&Vec<Rational>> = Vec::new();
                let mut j = i;
                while j < cells.len() {
                    match (&cells[j].geom, &cells[j].label) {
                        (CellGeom::Segment(a, b), Some(CellLabel::Connector { n: m }))
                            if m == n =>
                        {
                            if vertices.is_empty() {
                                vertices.push(a);
                            }
                            vertices.push(b);
                            j += 1;
                        }
                        _ => break,
                    }
                }
                let keep = (samples.max(2) as usize).min(vertices.len());
                let stride = (vertices.len() as f64 - 1.0) / (keep as f64 - 1.0);
                let mut d = String::new();
                for s in 0..keep {
                    let idx = ((s as f64 * stride).round() as usize).min(vertices.len() - 1);
                    let v = vertices[idx];
                    let cmd = if s == 0 { 'M' } else { 'L' };
                    let _ = write!(d, "{}{} {} ", cmd, frame.x(&v[0]), frame.y(&v[1]));
                }
                let _ = writeln!(
                    out,
                    r#"<path d="{}" fill="none" stroke="{}" stroke-width="2" class="connector"/>"#,
                    d.trim_end(),
                    stroke_of(&cell.label)
                );
                i = j;
            }
            _ => {
                render_cell(&mut out, &frame, cell);
                i += 1;
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn render_cell(out: &mut String, frame: &Frame, cell: &crate::complex::Cell) {
    match &cell.geom {
        CellGeom::Point(p) => {
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="3" fill="{}"/>"#,
                frame.x(&p[0]),
                frame.y(&p[1]),
                stroke_of(&cell.label)
            );
        }
        CellGeom::Segment(a, b) => {
            let _ = writeln!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="1.5"/>"#,
                frame.x(&a[0]),
                frame.y(&a[1]),
                frame.x(&b[0]),
                frame.y(&b[1]),
                stroke_of(&cell.label)
            );
        }
        CellGeom::Rect(lo, hi) => {
            let filled = matches!(
                cell.label,
                Some(CellLabel::Stripe {
                    side: RectSide::Interior,
                    ..
                })
            );
            let (x, y) = (frame.x(&lo[0]), frame.y(&hi[1]));
            let w = format!("{:.3}", (hi[0].to_f64() - lo[0].to_f64()) * SCALE);
            let h = format!("{:.3}", (hi[1].to_f64() - lo[1].to_f64()) * SCALE);
            let style = if filled {
                r##"fill="#f4a261" stroke="#000000" class="filled""##
            } else {
                r##"fill="none" stroke="#000000""##
            };
            let _ = writeln!(
                out,
                r#"<rect x="{}" y="{}" width="{}" height="{}" {} stroke-width="1"/>"#,
                x, y, w, h, style
            );
        }
    }
}

/// Render a gadget, re-evaluating its connector curves through the logistic
/// scale at the requested sample density.
pub fn render_gadget(gadget: &GadgetComplex, samples: u32) -> Result<String, SvgError> {
    if samples as i64 == crate::turbulence::CONNECTOR_SAMPLES || samples < 2 {
        return render_svg(&gadget.complex, samples.max(2));
    }
    // Rebuild at the native density, then let the cap downsample.
    let rebuilt = build_f(&gadget.seq, gadget.window).expect("gadget was already built once");
    render_svg(&rebuilt.complex, samples)
}
