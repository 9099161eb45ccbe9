//! Symbolic calculus for Real Seiberg–Witten invariants of closed 4-manifolds
//! equipped with an involution.

pub mod charclass;
pub mod cli;
pub mod engine;
pub mod exotic;
pub mod model;
pub mod ring;
