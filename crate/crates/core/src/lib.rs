//! Construction of sextic surfaces with an even set of 56 nodes from smooth
//! plane quartics, with exact certificates and finite-field verification.
//!
//! The pipeline runs quartic -> bicanonical sections -> weighted sextic
//! relation -> sextic in P^3 -> node census.

pub mod algebra;
pub mod curve;
pub mod parse;
pub mod pipeline;
pub mod relation;
pub mod report;
pub mod surface;
pub mod verify;
