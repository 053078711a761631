//! Evaluable homeomorphisms of boxes in dimension ≥ 2.
//!
//! Maps are a closed set of kinds, each with an exact rational evaluator and
//! an exact structural inverse, so round trips are equalities rather than
//! approximations. The radial extension promotes a self-map of the inner
//! cube [1/3,2/3]^d to a self-map of [0,1]^d: inside the cube it applies the
//! given map, outside it keeps the sup-norm radius and transports the
//! direction through the map's action on the inner boundary.

use crate::complex::Point;
use crate::pl::PLHomeo1D;
use crate::rational::{rat, Rational};
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    Identity,
    /// (x, t) ↦ (f(x), t) on [0,1]².
    PlProduct(PLHomeo1D),
    /// out[i] = in[perm[i]].
    AxisPerm(Vec<usize>),
    /// Per-axis PL maps conjugated onto the inner cube [1/3,2/3]^d.
    InnerPlPerAxis(Vec<PLHomeo1D>),
    /// Sup-norm radial extension of an inner-cube map to [0,1]^d.
    RadialExtension(Box<EvaluableHomeo>),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EvaluableHomeo {
    dim: usize,
    domain: Vec<(Rational, Rational)>,
    kind: MapKind,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("point outside the map's domain box")]
    OutOfDomain,
    #[error("point has wrong dimension")]
    DimensionMismatch,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RadialError {
    #[error("inner map must be defined on the cube [1/3,2/3]^d")]
    WrongInnerDomain,
    #[error("inner map needs dimension at least 2")]
    DimensionTooLow,
    #[error("boundary-preservation check failed at sample {0:?}")]
    BoundaryNotPreserved(Point),
}

fn inner_cube(dim: usize) -> Vec<(Rational, Rational)> {
    (0..dim).map(|_| (rat(1, 3), rat(2, 3))).collect()
}

fn full_cube(dim: usize) -> Vec<(Rational, Rational)> {
    (0..dim).map(|_| (Rational::zero(), Rational::one())).collect()
}

impl EvaluableHomeo {
    pub fn identity(dim: usize) -> Self {
        EvaluableHomeo {
            dim,
            domain: full_cube(dim),
            kind: MapKind::Identity,
        }
    }

    pub fn identity_on(domain: Vec<(Rational, Rational)>) -> Self {
        EvaluableHomeo {
            dim: domain.len(),
            domain,
            kind: MapKind::Identity,
        }
    }

    pub fn pl_product(f_prime: PLHomeo1D) -> Self {
        EvaluableHomeo {
            dim: 2,
            domain: full_cube(2),
            kind: MapKind::PlProduct(f_prime),
        }
    }

    pub fn axis_perm(perm: Vec<usize>, domain: Vec<(Rational, Rational)>) -> Self {
        assert!(perm.len() == domain.len());
        EvaluableHomeo {
            dim: domain.len(),
            domain,
            kind: MapKind::AxisPerm(perm),
        }
    }

    /// The coordinate swap (x,y) ↦ (y,x); the domain must be swap-symmetric.
    pub fn coordinate_swap(domain: Vec<(Rational, Rational)>) -> Self {
        Self::axis_perm(vec![1, 0], domain)
    }

    /// Product of 1-D maps, each conjugated onto the [1/3,2/3] axis range.
    pub fn inner_pl_per_axis(maps: Vec<PLHomeo1D>) -> Self {
        let dim = maps.len();
        EvaluableHomeo {
            dim,
            domain: inner_cube(dim),
            kind: MapKind::InnerPlPerAxis(maps),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain(&self) -> &[(Rational, Rational)] {
        &self.domain
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn eval(&self, p: &[Rational]) -> Result<Point, EvalError> {
        if p.len() != self.dim {
            return Err(EvalError::DimensionMismatch);
        }
        if !self
            .domain
            .iter()
            .zip(p.iter())
            .all(|((lo, hi), x)| lo <= x && x <= hi)
        {
            return Err(EvalError::OutOfDomain);
        }
        Ok(match &self.kind {
            MapKind::Identity => p.to_vec(),
            MapKind::PlProduct(f) => {
                vec![f.eval(&p[0]).expect("domain checked"), p[1].clone()]
            }
            MapKind::AxisPerm(perm) => perm.iter().map(|&i| p[i].clone()).collect(),
            MapKind::InnerPlPerAxis(maps) => maps
                .iter()
                .zip(p.iter())
                .map(|(f, x)| {
                    let unit = &(&rat(3, 1) * x) - &Rational::one();
                    let y = f.eval(&unit).expect("domain checked");
                    &(&y + &Rational::one()) / &rat(3, 1)
                })
                .collect(),
            MapKind::RadialExtension(inner) => {
                let half = rat(1, 2);
                let sixth = rat(1, 6);
                let u: Vec<Rational> = p.iter().map(|x| x - &half).collect();
                let r = u
                    .iter()
                    .map(|x| x.abs())
                    .max()
                    .expect("dimension at least 2");
                if r <= sixth {
                    inner.eval(p).expect("inner cube point")
                } else {
                    // Direction: the inner-cube boundary point hit by u.
                    let scale_in = &sixth / &r;
                    let bd: Vec<Rational> =
                        u.iter().map(|x| &half + &(x * &scale_in)).collect();
                    let q = inner.eval(&bd).expect("boundary point is in the cube");
                    let scale_out = &r / &sixth;
                    q.iter()
                        .map(|y| &half + &(&(y - &half) * &scale_out))
                        .collect()
                }
            }
        })
    }

    /// The exact inverse map.
    pub fn inverse(&self) -> EvaluableHomeo {
        let kind = match &self.kind {
            MapKind::Identity => MapKind::Identity,
            MapKind::PlProduct(f) => MapKind::PlProduct(f.invert()),
            MapKind::AxisPerm(perm) => {
                let mut inv = vec![0; perm.len()];
                for (i, &j) in perm.iter().enumerate() {
                    inv[j] = i;
                }
                MapKind::AxisPerm(inv)
            }
            MapKind::InnerPlPerAxis(maps) => {
                MapKind::InnerPlPerAxis(maps.iter().map(|f| f.invert()).collect())
            }
            MapKind::RadialExtension(inner) => {
                MapKind::RadialExtension(Box::new(inner.inverse()))
            }
        };
        EvaluableHomeo {
            dim: self.dim,
            domain: self.domain.clone(),
            kind,
        }
    }
}

/// Extend a self-map of the inner cube radially to a self-map of [0,1]^d.
///
/// The inner map must send the cube onto itself and its boundary onto its
/// boundary; this is checked on a sample grid at construction time.
pub fn radial_extend(phi: EvaluableHomeo) -> Result<EvaluableHomeo, RadialError> {
    let dim = phi.dim;
    if dim < 2 {
        return Err(RadialError::DimensionTooLow);
    }
    if phi.domain != inner_cube(dim) {
        return Err(RadialError::WrongInnerDomain);
    }
    let grid: Vec<Rational> = (0..=4).map(|k| &rat(1, 3) + &rat(k, 12)).collect();
    let on_boundary = |p: &[Rational]| p.iter().any(|x| *x == rat(1, 3) || *x == rat(2, 3));
    let mut samples: Vec<Point> = Vec::new();
    // All grid points of every face of the inner cube.
    for axis in 0..dim {
        for face in [rat(1, 3), rat(2, 3)] {
            let others: Vec<usize> = (0..dim).filter(|&k| k != axis).collect();
            let mut idx = vec![0usize; others.len()];
            loop {
                let mut p = vec![Rational::zero(); dim];
                p[axis] = face.clone();
                for (slot, &k) in others.iter().enumerate() {
                    p[k] = grid[idx[slot]].clone();
                }
                samples.push(p);
                let mut carry = 0;
                loop {
                    if carry == idx.len() {
                        break;
                    }
                    idx[carry] += 1;
                    if idx[carry] < grid.len() {
                        break;
                    }
                    idx[carry] = 0;
                    carry += 1;
                }
                if carry == idx.len() {
                    break;
                }
            }
        }
    }
    for p in &samples {
        match phi.eval(p) {
            Ok(q) if on_boundary(&q) => {}
            _ => return Err(RadialError::BoundaryNotPreserved(p.clone())),
        }
    }
    Ok(EvaluableHomeo {
        dim,
        domain: full_cube(dim),
        kind: MapKind::RadialExtension(Box::new(phi)),
    })
}
