//! Eta invariants and harmonic spinors of the odd-dimensional flat manifolds
//! with cyclic holonomy `Z_n`, `n = 2k + 1`.
//!
//! The exact path runs `manifold` → `combinatorics` → `invariants` and never
//! touches floating point. The `zeta` and `oracle` modules re-derive the same
//! numbers independently: one through Hurwitz zeta regularization, the other
//! by building the spinor module as dense complex matrices and reading off the
//! equivariant Dirac eigenvalues directly.

pub mod combinatorics;
pub mod error;
pub mod invariants;
pub mod manifold;
pub mod oracle;
pub mod rational;
pub mod zeta;

pub use combinatorics::{MultiplicityTable, SignVector};
pub use error::{Error, Result};
pub use invariants::{EtaBranch, EtaResult};
pub use manifold::{FchdManifold, HolonomyMatrix, SpinStructure};
pub use rational::ExactRational;
