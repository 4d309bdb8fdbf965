//! Exact and analytic enumeration engine for chordal planar graphs and
//! simple chordal planar maps: counting sequences, annihilating polynomials,
//! discriminants, and asymptotic constants, cross-checked against a
//! brute-force census.

pub mod asymptotics;
pub mod error;
pub mod graphs;
pub mod hp;
pub mod lazy;
pub mod maps;
pub mod oracle;
pub mod poly;
pub mod rootfind;
pub mod singular;
pub mod series;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
