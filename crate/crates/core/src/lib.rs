//! Distinct-difference configurations (DDCs) on the square and hexagonal grids.
//!
//! A DDC is a finite set of grid dots whose ordered difference vectors are
//! pairwise distinct; equivalently, the lines connecting dots differ in
//! length or slope. This crate provides:
//!
//! - exact distance functions for the Manhattan, hexagonal, and squared
//!   Euclidean metrics ([`grid`]);
//! - the configuration/periodic-array/shape value types and DDC
//!   verification ([`config`]);
//! - maximal anticodes (Lee spheres and their variants, the hexagonal
//!   anticode chain) with generators, classification, and enumeration
//!   oracles ([`anticodes`]);
//! - number-theoretic machinery: primes, GF(p^k), Sidon sets, Golomb
//!   rulers ([`algebra`]);
//! - the classic doubly periodic constructions (Welch, Golomb, folded
//!   rulers, CRT, LeeDD and its diagonal extension) ([`constructions`]);
//! - shift-search extraction pipelines producing verified configurations
//!   inside anticodes and circles ([`extraction`]);
//! - exact upper-bound evaluators, including the honeycomb-array
//!   nonexistence computation ([`bounds`]);
//! - exhaustive backtrack search for optimal dot counts ([`search`]).
//!
//! All verification-grade arithmetic is integer or rational; floating
//! point appears only in parameter optimization and area formulas.

pub mod algebra;
pub mod anticodes;
pub mod bounds;
pub mod config;
pub mod constructions;
pub mod extraction;
pub mod grid;
pub mod search;

mod error;

pub use error::{Error, Result};

/// Version string embedded in every JSON report for reproducibility.
pub const REPORT_VERSION: &str = env!("CARGO_PKG_VERSION");
