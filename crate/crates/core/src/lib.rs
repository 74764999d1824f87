//! Newton polygons of L-functions attached to parallelotopes: lattice
//! combinatorics, Hodge-type lower bounds, Dwork's trace formula in
//! truncated p-adic arithmetic, and an exponential-sum oracle.

pub mod dwork;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod polygon;
pub mod rational;
pub mod series;

pub use error::{Error, Result};
pub use lattice::{BlockDecomposition, Hypothesis, LatticePoint, Parallelotope, Side};
pub use polygon::{NewtonPolygon, SlopeDistribution};
pub use rational::Rat;
