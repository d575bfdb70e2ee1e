//! Clustered colouring of graphs with bounded treedepth or pathwidth.
//!
//! The crate builds the standard examples C⟨h,k⟩ and W⟨h,k⟩, computes
//! elimination trees, and produces machine-checkable certificates: clustered
//! (h−1)-colourings or W⟨h,k⟩ minor models for bounded-treedepth graphs,
//! two-colourings of bounded-pathwidth graphs with short monochromatic paths,
//! product colourings, and exact fractional-colouring bounds. Exhaustive
//! oracles for colourings and minors back the certificates at desk scale.

pub mod canon;
pub mod cert;
pub mod cluster;
pub mod elimination;
pub mod error;
pub mod fractional;
pub mod generators;
pub mod graph;
pub mod oracles;
pub mod pathwidth;

pub use error::{Error, Result};
pub use graph::{Bound, Colouring, Graph, MinorModel};
