//! Finite Coxeter groups, their maximal-order abelian subgroups and the
//! incidence geometries those subgroups cut out on weight sets.

pub mod abelian;
pub mod error;
pub mod geometry;
pub mod permgroup;
pub mod quotient;
pub mod rootsys;
pub mod scalar;
pub mod sorth;
pub mod weights;

pub use error::{Error, Result};
