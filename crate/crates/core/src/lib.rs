//! Bound-state spectra of the Dirac oscillator in a rotating frame around a
//! cosmic string, with independent numerical checks.
//!
//! * [`model`]: physical parameters and the shared parameter algebra.
//! * [`kummer`]: `₁F₁` by series, polynomial, recurrence and the cosine form.
//! * [`spectra`]: closed-form energy levels, tables and degeneracy clusters.
//! * [`oracle`]: finite-volume radial eigensolver, exact hard-wall roots and
//!   wavefunctions.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod kummer;
pub mod model;
pub mod oracle;
pub mod spectra;

pub use model::{Branch, PhysicalConfig, QuantumNumbers, Spin};
