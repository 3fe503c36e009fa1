//! Exact intersection theory on smooth complete toric varieties.
//!
//! The crate computes wall relations, intersection-number polynomials of
//! torus-invariant subvarieties, Chern-character pairings, and uses them to
//! test and classify 2-Fano toric manifolds. All arithmetic is exact:
//! arbitrary-precision integers and rationals, no floating point anywhere.

pub mod chow;
pub mod construct;
pub mod error;
pub mod fan;
pub mod fano;
pub mod matrix;
pub mod report;
pub mod surface;

pub use error::{Error, Result};
pub use fan::{Cone, Fan, FanJson, RayId, StarFan, Wall};
