//! Verification toolkit for finite flag simplicial complexes.
//!
//! A flag complex is determined by its 1-skeleton: the simplices are exactly
//! the cliques of the graph. Everything here works on that encoding. The
//! library provides:
//!
//! * largeness and systolicity checks ([`complex`]),
//! * triangulated discs with combinatorial curvature accounting ([`disc`]),
//! * minimal disc fillings of cycles ([`filling`]),
//! * simplicial group actions, invariance sets and orbit dichotomies
//!   ([`actions`]),
//! * boundary edge swaps on labeled surfaces ([`swaps`]),
//! * deterministic example generators ([`fixtures`]),
//! * JSON/DOT serialization ([`io`]) and the CLI driver ([`cli`]).

pub mod actions;
pub mod cli;
pub mod complex;
pub mod disc;
pub mod filling;
pub mod fixtures;
pub mod homology;
pub mod io;
pub mod pi1;
pub mod swaps;
