//! Assembly of full level tables (all states with ℓ + 1 ≤ N ≤ N_max) from
//! any of the energy routes, sorted by (N, ℓ). Entries whose route fails
//! (complex closed-form energy, no oracle bound state) are kept in the table
//! with their validity flags cleared rather than dropped.

use crate::closed_form::{
    kg_energy_complex, kg_reality_condition, schrodinger_energy, Branch, EnergyLevel, Method,
    QuantumState, REALITY_TOL,
};
use crate::oracle::{self, Variant};
use crate::potential::WoodsSaxonParams;
use crate::units::{Mass, UnitSystem};

/// The energy route used to fill a spectrum table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMethod {
    KgClosed(Branch),
    SeClosed,
    /// Numerov, exact centrifugal barrier.
    OracleExact,
    /// Numerov, Pekeris-replaced barrier.
    OraclePekeris,
}

fn states_up_to(n_max: u32) -> Vec<QuantumState> {
    let mut out = Vec::new();
    for n_principal in 1..=n_max {
        for l in 0..n_principal {
            out.push(QuantumState::from_nodes(n_principal - l - 1, l));
        }
    }
    out
}

/// Level table for all states with ℓ + 1 ≤ N ≤ N_max, sorted by (N, ℓ);
/// always exactly N_max(N_max+1)/2 entries.
pub fn spectrum_table(
    p: &WoodsSaxonParams,
    m0: Mass,
    u: &UnitSystem,
    n_max: u32,
    method: SpectrumMethod,
) -> Vec<EnergyLevel> {
    match method {
        SpectrumMethod::KgClosed(branch) => states_up_to(n_max)
            .into_iter()
            .map(|state| {
                let e = kg_energy_complex(state, branch, p, m0, u);
                let is_real = e.im.abs() <= REALITY_TOL * e.re.abs().max(1.0);
                EnergyLevel {
                    state,
                    energy: e.re,
                    branch: Some(branch),
                    method: Method::KgClosed,
                    is_real,
                    valid: is_real && e.re.is_finite() && kg_reality_condition(state, p, m0, u),
                }
            })
            .collect(),
        SpectrumMethod::SeClosed => states_up_to(n_max)
            .into_iter()
            .map(|state| schrodinger_energy(state, p, m0, u))
            .collect(),
        SpectrumMethod::OracleExact | SpectrumMethod::OraclePekeris => {
            let variant = if method == SpectrumMethod::OracleExact {
                Variant::Exact
            } else {
                Variant::Pekeris
            };
            let m = if variant == Variant::Exact {
                Method::OracleExact
            } else {
                Method::OracleApprox
            };
            oracle::solve_spectrum(p, m0, u, n_max, variant)
                .into_iter()
                .map(|(state, res)| match res {
                    Ok(r) => EnergyLevel {
                        state,
                        energy: r.energy,
                        branch: None,
                        method: m,
                        is_real: true,
                        valid: true,
                    },
                    Err(_) => EnergyLevel {
                        state,
                        energy: f64::NAN,
                        branch: None,
                        method: m,
                        is_real: false,
                        valid: false,
                    },
                })
                .collect()
        }
    }
}
