//! Graded multiplicities in the exterior algebra of the little adjoint module.
//!
//! Exact arithmetic throughout: big integers for multiplicities and
//! polynomial coefficients, rationals only inside the formal Hecke algebra.

pub mod characters;
pub mod daha;
pub mod error;
pub mod gradedmult;
pub mod laurent;
pub mod macdonald;
pub mod qpoly;
pub mod rootsys;
pub mod verify;

pub use error::{Error, Result};
pub use rootsys::{
    Family, KLabel, LengthClass, Partition, Root, RootSystem, RootSystemType, Weight, WeylGroup,
};
