//! Exact combinatorics behind the cell / nilpotent-orbit / conjugacy-class
//! diagrams of a loop group: root data and their affine diagrams, Weyl group
//! character tables, fake degrees and truncated induction, nilpotent orbits
//! with the Springer correspondence, and a sampling oracle for the
//! (parahoric) Kazhdan-Lusztig maps built on Newton-Puiseux analysis of
//! characteristic polynomials over truncated power series.
//!
//! Everything here is pure and allocation-backed; file formats, the command
//! line and table ingestion live in the `cellmap` crate.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod characters;
pub mod driver;
pub mod error;
pub mod exceptional;
pub mod fp;
pub mod invariants;
pub mod label;
pub mod looplattice;
pub mod orbits;
pub mod partition;
pub mod puiseux;
pub mod rootdata;
pub mod subgroup;
pub mod tpoly;
pub mod weyl;

pub use error::{Error, Result};
pub use rootdata::{Family, Parahoric, RootDatum};
