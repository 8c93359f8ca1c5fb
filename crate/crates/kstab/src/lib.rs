//! Exact-arithmetic verification engine for K-stability computations on
//! del Pezzo pairs with line boundaries.
//!
//! The crate reproduces, in exact rational arithmetic, the computations
//! behind wall-crossing analysis for pairs (surface, `c` times the sum of
//! its lines) as the coefficient `c` varies:
//!
//! * [`exactnum`] -- rationals, affine-in-`c` functions, exact linear
//!   solves;
//! * [`picard`] -- the Picard lattice of a blown-up plane, line and root
//!   enumeration;
//! * [`dynkin`] -- ADE type detection for root configurations;
//! * [`contraction`] -- Mumford pull-back, line-degeneration orbits,
//!   boundary log discrepancies, wall-candidate thresholds;
//! * [`chain`] -- log discrepancies along infinitely-near blow-up chains
//!   and `1/n(1,1)` vertices, with log-canonicity verdicts;
//! * [`wps`] -- `A`, `S`, `beta` invariants on weighted projective planes;
//! * [`catalog`] -- built-in encodings of the covered configurations with
//!   expected values;
//! * [`verify`] -- the regression runner comparing engine output with the
//!   catalog's expectations;
//! * [`model`] -- the JSON model-file format (`kstab/1`);
//! * [`report`] -- deterministic text/JSON report construction.
//!
//! Everything outside the test oracles is exact: no floating point.

pub mod catalog;
pub mod chain;
pub mod contraction;
pub mod dynkin;
pub mod exactnum;
pub mod model;
pub mod picard;
pub mod report;
pub mod verify;
pub mod wps;

pub use catalog::{Catalog, CatalogEntry, Payload};
pub use exactnum::{AffineRational, Positivity, Rational};
pub use picard::{DivisorClass, PicardLattice};
