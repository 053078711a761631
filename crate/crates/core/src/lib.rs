//! Exact-arithmetic coding continua at finite truncation scale.
//!
//! The crate builds closed subsets of [0,1] from finite linear orders,
//! extracts the countable-structure invariants that classify such sets up to
//! (ambient) homeomorphism, assembles the cone/fan complexes that lift those
//! sets into higher dimensions, generates a planar two-component gadget whose
//! homeomorphism type tracks integer-sequence tails, and verifies the
//! expected topological facts by computing path components and cut points of
//! the resulting complexes with exact rational geometry.

pub mod analyzer;
pub mod closed_set;
pub mod coding;
pub mod complex;
pub mod dyadic;
pub mod evaluable;
pub mod invariants;
pub mod order;
pub mod pl;
pub mod raster;
pub mod rational;
pub mod suites;
pub mod svg;
pub mod turbulence;

pub use closed_set::{complement_intervals, mk_closed_set, ClosedSet1D, Component};
pub use complex::{Cell, CellGeom, CellLabel, GeoComplex};
pub use pl::{Orientation, PLHomeo1D};
pub use rational::Rational;
