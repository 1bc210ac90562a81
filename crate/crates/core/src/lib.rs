//! Toroidal sets in R³ as towers of nested solid tori.
//!
//! - [`laurent`]: exact Laurent polynomials over the integers.
//! - [`knots`]: symbolic knot types with genus and Alexander polynomial.
//! - [`diagrams`]: PD and Gauss codes, an independent source of the same invariants.
//! - [`towers`]: towers, their cohomology, genus, Alexander polynomial and attractor verdicts.
//! - [`catalog`]: the built-in example towers.
//! - [`report`]: deterministic text and JSON reports.

pub mod catalog;
pub mod diagrams;
pub mod knots;
pub mod laurent;
pub mod report;
pub mod towers;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/laurent.md")]
mod book_laurent {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/knots.md")]
mod book_knots {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/diagrams.md")]
mod book_diagrams {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/towers.md")]
mod book_towers {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/genus.md")]
mod book_genus {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/alexander.md")]
mod book_alexander {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/verdicts.md")]
mod book_verdicts {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
