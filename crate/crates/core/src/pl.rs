//! Piecewise-linear self-homeomorphisms of [0,1].

use crate::closed_set::{mk_closed_set, ClosedSet1D, Component};
use crate::rational::Rational;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Preserving,
    Reversing,
}

/// A piecewise-linear bijection of [0,1], strictly monotone in its declared
/// orientation and determined by its breakpoints.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPl", into = "RawPl")]
pub struct PLHomeo1D {
    orientation: Orientation,
    breakpoints: Vec<(Rational, Rational)>,
}

#[derive(Serialize, Deserialize)]
struct RawPl {
    orientation: Orientation,
    breakpoints: Vec<(Rational, Rational)>,
}

impl TryFrom<RawPl> for PLHomeo1D {
    type Error = PlError;
    fn try_from(raw: RawPl) -> Result<Self, PlError> {
        PLHomeo1D::new(raw.orientation, raw.breakpoints)
    }
}

impl From<PLHomeo1D> for RawPl {
    fn from(h: PLHomeo1D) -> RawPl {
        RawPl {
            orientation: h.orientation,
            breakpoints: h.breakpoints,
        }
    }
}

impl fmt::Debug for PLHomeo1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PL[{:?}", self.orientation)?;
        for (x, y) in &self.breakpoints {
            write!(f, " ({},{})", x, y)?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PlError {
    #[error("need at least two breakpoints")]
    TooFewBreakpoints,
    #[error("breakpoint inputs must start at 0 and end at 1")]
    BadEndpoints,
    #[error("breakpoints must be strictly monotone in the declared orientation")]
    NotMonotone,
    #[error("argument {0} outside [0,1]")]
    OutOfDomain(Rational),
}

impl PLHomeo1D {
    pub fn new(
        orientation: Orientation,
        breakpoints: Vec<(Rational, Rational)>,
    ) -> Result<Self, PlError> {
        if breakpoints.len() < 2 {
            return Err(PlError::TooFewBreakpoints);
        }
        let zero = Rational::zero();
        let one = Rational::one();
        let first = &breakpoints[0];
        let last = &breakpoints[breakpoints.len() - 1];
        if first.0 != zero || last.0 != one {
            return Err(PlError::BadEndpoints);
        }
        let (want_first, want_last) = match orientation {
            Orientation::Preserving => (zero.clone(), one.clone()),
            Orientation::Reversing => (one.clone(), zero.clone()),
        };
        if first.1 != want_first || last.1 != want_last {
            return Err(PlError::BadEndpoints);
        }
        for w in breakpoints.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(PlError::NotMonotone);
            }
            let ok = match orientation {
                Orientation::Preserving => w[0].1 < w[1].1,
                Orientation::Reversing => w[0].1 > w[1].1,
            };
            if !ok {
                return Err(PlError::NotMonotone);
            }
        }
        Ok(PLHomeo1D {
            orientation,
            breakpoints,
        })
    }

    pub fn identity() -> Self {
        PLHomeo1D::new(
            Orientation::Preserving,
            vec![
                (Rational::zero(), Rational::zero()),
                (Rational::one(), Rational::one()),
            ],
        )
        .unwrap()
    }

    pub fn reversal() -> Self {
        PLHomeo1D::new(
            Orientation::Reversing,
            vec![
                (Rational::zero(), Rational::one()),
                (Rational::one(), Rational::zero()),
            ],
        )
        .unwrap()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.breakpoints
    }

    /// Exact piecewise-linear interpolation.
    pub fn eval(&self, x: &Rational) -> Result<Rational, PlError> {
        if !x.in_unit_interval() {
            return Err(PlError::OutOfDomain(x.clone()));
        }
        // Breakpoint inputs are sorted; find the segment containing x.
        let idx = self
            .breakpoints
            .partition_point(|(bx, _)| bx <= x);
        if idx == 0 {
            return Ok(self.breakpoints[0].1.clone());
        }
        let (x0, y0) = &self.breakpoints[idx - 1];
        if x == x0 {
            return Ok(y0.clone());
        }
        let (x1, y1) = &self.breakpoints[idx];
        let t = (x - x0) / (x1 - x0);
        Ok(y0 + &(&t * &(y1 - y0)))
    }

    /// Image of a canonical closed set; components map to components.
    pub fn image(&self, a: &ClosedSet1D) -> ClosedSet1D {
        let mapped: Vec<Component> = a
            .components()
            .iter()
            .map(|c| match c {
                Component::Point(p) => Component::Point(self.eval(p).unwrap()),
                Component::Interval(lo, hi) => {
                    let u = self.eval(lo).unwrap();
                    let v = self.eval(hi).unwrap();
                    if u <= v {
                        Component::Interval(u, v)
                    } else {
                        Component::Interval(v, u)
                    }
                }
            })
            .collect();
        mk_closed_set(mapped).expect("image of a canonical set is canonical")
    }

    /// g ∘ h, with breakpoints at the refinement of h's breakpoints and the
    /// h-preimages of g's breakpoints.
    pub fn compose(g: &PLHomeo1D, h: &PLHomeo1D) -> PLHomeo1D {
        let h_inv = h.invert();
        let mut inputs: Vec<Rational> = h
            .breakpoints
            .iter()
            .map(|(x, _)| x.clone())
            .chain(g.breakpoints.iter().map(|(x, _)| h_inv.eval(x).unwrap()))
            .collect();
        inputs.sort();
        inputs.dedup();
        let breakpoints = inputs
            .into_iter()
            .map(|x| {
                let y = g.eval(&h.eval(&x).unwrap()).unwrap();
                (x, y)
            })
            .collect();
        let orientation = if g.orientation == h.orientation {
            Orientation::Preserving
        } else {
            Orientation::Reversing
        };
        PLHomeo1D::new(orientation, breakpoints).expect("composition of homeomorphisms")
    }

    /// Inverse map: swap breakpoint roles and re-sort.
    pub fn invert(&self) -> PLHomeo1D {
        let mut swapped: Vec<(Rational, Rational)> = self
            .breakpoints
            .iter()
            .map(|(x, y)| (y.clone(), x.clone()))
            .collect();
        swapped.sort_by(|a, b| a.0.cmp(&b.0));
        PLHomeo1D::new(self.orientation, swapped).expect("inverse of a homeomorphism")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sample() -> PLHomeo1D {
        PLHomeo1D::new(
            Orientation::Preserving,
            vec![
                (rat(0, 1), rat(0, 1)),
                (rat(1, 2), rat(1, 4)),
                (rat(1, 1), rat(1, 1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn eval_identity_and_reversal() {
        assert_eq!(PLHomeo1D::identity().eval(&rat(1, 3)).unwrap(), rat(1, 3));
        assert_eq!(PLHomeo1D::reversal().eval(&rat(1, 4)).unwrap(), rat(3, 4));
    }

    // Hand interpolation on the segment (1/2,1/4)-(1,1): 1/4 + (1/2)(3/4) = 5/8.
    #[test]
    fn eval_two_segment_map() {
        assert_eq!(sample().eval(&rat(3, 4)).unwrap(), rat(5, 8));
        assert!(sample().eval(&rat(3, 2)).is_err());
    }

    #[test]
    fn image_mirror() {
        let a = mk_closed_set(vec![
            Component::Point(rat(0, 1)),
            Component::Interval(rat(1, 2), rat(1, 1)),
        ])
        .unwrap();
        let img = PLHomeo1D::reversal().image(&a);
        assert_eq!(
            img.components(),
            &[
                Component::Interval(rat(0, 1), rat(1, 2)),
                Component::Point(rat(1, 1)),
            ]
        );
    }

    // Endpoint evaluation: h(1/4)=1/8, h(3/4)=5/8.
    #[test]
    fn image_of_interval() {
        let a = mk_closed_set(vec![Component::Interval(rat(1, 4), rat(3, 4))]).unwrap();
        let img = sample().image(&a);
        assert_eq!(
            img.components(),
            &[Component::Interval(rat(1, 8), rat(5, 8))]
        );
    }

    #[test]
    fn compose_with_identity() {
        let h = sample();
        assert_eq!(PLHomeo1D::compose(&PLHomeo1D::identity(), &h), h);
        assert_eq!(PLHomeo1D::compose(&h, &PLHomeo1D::identity()), h);
    }

    #[test]
    fn reversal_is_involution() {
        assert_eq!(PLHomeo1D::reversal().invert(), PLHomeo1D::reversal());
    }

    #[test]
    fn invert_swaps_pairs() {
        let inv = sample().invert();
        assert_eq!(
            inv.breakpoints(),
            &[
                (rat(0, 1), rat(0, 1)),
                (rat(1, 4), rat(1, 2)),
                (rat(1, 1), rat(1, 1)),
            ]
        );
    }

    #[test]
    fn invert_round_trip_exact() {
        let h = sample();
        let inv = h.invert();
        for k in 0..=16 {
            let x = rat(k, 16);
            assert_eq!(inv.eval(&h.eval(&x).unwrap()).unwrap(), x);
        }
    }

    #[test]
    fn rejects_non_monotone() {
        let r = PLHomeo1D::new(
            Orientation::Preserving,
            vec![
                (rat(0, 1), rat(0, 1)),
                (rat(1, 2), rat(3, 4)),
                (rat(3, 4), rat(1, 2)),
                (rat(1, 1), rat(1, 1)),
            ],
        );
        assert_eq!(r, Err(PlError::NotMonotone));
    }
}
