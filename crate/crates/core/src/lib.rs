//! Exact combinatorics of compact symmetric triads: root systems,
//! σ-systems and Satake diagrams, double Satake diagrams, and the
//! classification of triads with their rank and order invariants.

// Index loops read better than zipped iterators in the matrix code.
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod classify;
pub mod double;
pub mod error;
pub mod exec;
pub mod linalg;
pub mod render;
pub mod rootsys;
pub mod scalar;
pub mod sigma;
pub mod verify;

pub use catalog::{Algebra, Family, InvolutionClass};
pub use classify::{ClassificationReport, TriadClass};
pub use double::{DoubleSatakeDiagram, DoubleSigmaSystem};
pub use error::{Error, Result};
pub use exec::Execution;
pub use linalg::{QMatrix, Vector};
pub use rootsys::{CartanType, DiagramAut, FundamentalSystem, OrthoMap, RootAut, RootSystem, Series};
pub use scalar::Scalar;
pub use sigma::{SatakeDiagram, SigmaSystem};
