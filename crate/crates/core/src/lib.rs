//! Invariant curves of planar polynomial vector fields, and their fate under
//! Caputo fractional-order flows.
//!
//! The crate has four layers:
//! - exact polynomial algebra and field utilities ([`scalar`], [`poly`], [`field`], [`graph`], [`equilibria`]);
//! - coefficient-condition detectors for invariant curves ([`detect`]);
//! - fractional calculus numerics ([`fractional`]);
//! - invariance experiments built on the two ([`audit`]).

pub mod scalar;
pub mod poly;
pub mod roots;
pub mod field;
pub mod graph;
pub mod equilibria;
pub mod detect;
pub mod corpus;
pub mod audit;
pub mod fractional;
