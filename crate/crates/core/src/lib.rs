//! Koszul cohomology and graded Betti diagrams over prime fields.
//!
//! The pipeline is: build a graded module (a polynomial quotient, or the
//! coordinate ring of an explicit curve model), assemble the Koszul strands,
//! and read Betti numbers off exact ranks over `F_p`.

pub mod field;
pub mod exactla;
pub mod gring;
pub mod koszul;
pub mod curves;
pub mod conjectures;
pub mod models;
pub mod report;
pub mod cli;
