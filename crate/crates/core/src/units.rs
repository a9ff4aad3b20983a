//! Unit systems and particle masses.
//!
//! Exactly two presets exist. `nuclear()` works in MeV/fm with masses given
//! in atomic mass units; `dimensionless()` sets ħ²/(2m₀) = 1 (and ħ = c = 1)
//! so that energies and lengths are unitless — the convention of the
//! standard Woods-Saxon eigenvalue benchmark.

use thiserror::Error;

/// ħc in MeV·fm (CODATA 2018).
pub const HBAR_C_MEV_FM: f64 = 197.3269804;

/// One atomic mass unit in MeV/c² (CODATA 2018).
pub const AMU_TO_MEV: f64 = 931.49410242;

#[derive(Debug, Error, PartialEq)]
pub enum UnitsError {
    #[error("mass must be strictly positive, got {0}")]
    NonPositiveMass(f64),
}

/// Particle mass, stored in atomic mass units (or bare units under the
/// dimensionless preset).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mass(f64);

impl Mass {
    pub fn from_amu(value: f64) -> Result<Self, UnitsError> {
        if !(value > 0.0) {
            return Err(UnitsError::NonPositiveMass(value));
        }
        Ok(Mass(value))
    }

    pub fn amu(self) -> f64 {
        self.0
    }
}

/// A closed set of physical conventions; constructible only through the two
/// presets so the invariants (positive constants, documented meanings) hold
/// by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    hbar_c: f64,
    amu_to_energy: f64,
    /// When set, overrides ħ²/(2m₀) regardless of the mass (dimensionless preset).
    hbar2_over_2m0: Option<f64>,
}

impl UnitSystem {
    /// MeV / fm / amu conventions.
    pub const fn nuclear() -> Self {
        UnitSystem {
            hbar_c: HBAR_C_MEV_FM,
            amu_to_energy: AMU_TO_MEV,
            hbar2_over_2m0: None,
        }
    }

    /// ħ = c = 1, ħ²/(2m₀) = 1; masses and energies are bare numbers.
    pub const fn dimensionless() -> Self {
        UnitSystem {
            hbar_c: 1.0,
            amu_to_energy: 1.0,
            hbar2_over_2m0: Some(1.0),
        }
    }

    pub fn hbar_c(&self) -> f64 {
        self.hbar_c
    }

    /// δ = 1/(ħc): the factor converting an energy to an inverse length in
    /// the relativistic radial equation.
    pub fn delta(&self) -> f64 {
        1.0 / self.hbar_c
    }

    /// Rest energy m₀c² of a particle.
    pub fn rest_energy(&self, m0: Mass) -> f64 {
        m0.amu() * self.amu_to_energy
    }

    /// ħ²/(2m₀): the kinetic prefactor of the radial Schrödinger equation,
    /// in energy·length².
    pub fn kinetic_factor(&self, m0: Mass) -> f64 {
        match self.hbar2_over_2m0 {
            Some(k) => k,
            None => self.hbar_c * self.hbar_c / (2.0 * self.rest_energy(m0)),
        }
    }

    pub fn is_dimensionless(&self) -> bool {
        self.hbar2_over_2m0.is_some()
    }
}
