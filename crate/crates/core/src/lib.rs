//! Bound-state spectroscopy of the Woods-Saxon potential.
//!
//! Computes energy levels and normalized radial wavefunctions of the
//! Woods-Saxon well −V0/(1 + e^{(r−r0)/a}) for arbitrary angular momentum,
//! both relativistically (Klein-Gordon, spin 0) and non-relativistically
//! (Schrödinger). Two independent routes are provided:
//!
//! * closed-form spectra obtained by replacing the centrifugal barrier with
//!   a Pekeris-type combination of the well's own shape functions, which
//!   renders the radial equation exactly solvable
//!   ([`closed_form`], [`wavefunction`]);
//! * a fourth-order Numerov shooting eigensolver that handles the exact
//!   centrifugal term, the Pekeris-replaced term, and the Klein-Gordon
//!   radial equation without further approximation ([`oracle`]).
//!
//! The two routes cross-validate each other; [`spectrum`] assembles either
//! into sorted level tables.

pub mod closed_form;
pub mod oracle;
pub mod potential;
pub mod quadrature;
pub mod special;
pub mod spectrum;
pub mod units;
pub mod wavefunction;

pub use closed_form::{Branch, EnergyLevel, Method, QuantumState};
pub use potential::WoodsSaxonParams;
pub use units::{Mass, UnitSystem};
