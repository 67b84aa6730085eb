//! Command-line front end: invariants, residue tables, verification and catalog sweeps.

pub mod app;
pub mod catalog;
pub mod render;
pub mod verify;
