//! Differential graded algebras of oriented marked graph diagrams.
//!
//! The crate builds the algebra of a diagram from its crossing data, checks and
//! simplifies the differential, extracts the degree-0 presentation and counts
//! its ring maps into Z/NZ.

pub mod algebra;
pub mod dga;
pub mod diagram;
pub mod homology;
