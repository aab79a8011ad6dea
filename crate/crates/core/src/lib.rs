//! Homotopy types of Vietoris–Rips and Čech complexes of finite subsets of the
//! circle, computed through cyclic-graph dismantling and winding fractions.
//!
//! Everything here is exact: circle points are rationals, homology is computed
//! over the integers. The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cech;
pub mod circle;
pub mod classify;
pub mod cyclic_graph;
mod error;
pub mod evolution;
pub mod homology;
#[cfg(any(test, feature = "oracles"))]
pub mod oracle;
pub mod rational;

pub use circle::{CirclePoint, PointConfiguration, RegularWitness};
pub use classify::{BettiProfile, ComplexKind, HomotopyType, WedgeCount};
pub use cyclic_graph::{CyclicGraph, Dismantling, VertexMap, WindingFraction};
pub use error::Error;
pub use rational::Rational;

pub type Result<T> = core::result::Result<T, Error>;
