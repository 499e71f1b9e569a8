//! Enriched data sets and the persistent homology they carry.
//!
//! A data set is a finite family of rational-valued measurements on a finite
//! domain. Choosing operations (self-maps of the domain preserving the
//! family) turns it into an incarnation; equivariant operators compare
//! incarnations, Grothendieck graphs encode them, and persistent homology of
//! Vietoris–Rips complexes of sublevel sets becomes a functor on those graphs.

pub mod actions;
pub mod data;
pub mod error;
pub mod fixtures;
pub mod ggraph;
pub mod io;
pub mod linalg;
pub mod operators;
pub mod persistence;
pub mod rational;

pub use actions::{Incarnation, IncarnationKind, Partition};
pub use data::{DataSet, Domain, Endo, Measurement, PointMap, Pseudometric, ValueMap};
pub use error::{Error, ErrorClass, Result};
pub use rational::Rational;
