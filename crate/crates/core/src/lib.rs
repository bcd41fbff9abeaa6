//! Squeezed and SU(2) coherent states of the 1D and isotropic 2D harmonic
//! oscillator on a truncated Fock space, with independent numerical checks
//! of their closed-form properties.
//!
//! Units are `hbar = m = omega = 1`.

pub mod density;
pub mod error;
pub mod fock;
pub mod observables;
pub mod operators;
pub mod special;
pub mod states;
pub mod verify;

pub use error::{Error, Result};
