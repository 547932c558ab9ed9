//! Genus-two enumerative invariants of `P^2` and `P^3`, computed exactly from
//! genus-zero Gromov-Witten data.
//!
//! The pipeline runs bottom-up: [`gw0`] reconstructs genus-zero invariants,
//! [`rt`] applies the composition laws to get symplectic invariants,
//! [`nodecounts`] and [`chern`] evaluate the boundary corrections, and
//! [`genus2`] assembles `n_{2,d} = (RT - CR) / 2`.

pub mod algebra;
pub mod cache;
pub mod chern;
pub mod cli;
pub mod constraints;
pub mod error;
pub mod genus2;
pub mod gw0;
pub mod nodecounts;
pub mod rt;

pub use algebra::{binomial, diagonal, CohClass, DiagonalDecomposition, Rational};
pub use constraints::ConstraintProfile;
pub use error::{Error, Result};

pub use gw0::{GwKey, GwTable, Insertions};
