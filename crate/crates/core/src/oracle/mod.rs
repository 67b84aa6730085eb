//! Brute-force spectral oracle on the explicit spinor module.
//!
//! Operators are stored as tensor products of 2×2 factors and can be
//! materialized densely at small `k`; see [`rep::SlotOrder`] for the slot
//! convention and why it is the one that works.

pub mod kron;
pub mod matrix;
pub mod rep;
pub mod spectrum;

pub use matrix::ComplexMatrix;
pub use rep::{
    build_rep, build_rep_with_order, CheckOutcome, EigenbasisReport, SlotOrder, SpinorRep,
};
pub use spectrum::{kernel_dim_oracle, windowed_spectrum, EigenSection, WindowedSpectrum};
