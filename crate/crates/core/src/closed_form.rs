//! Closed-form energy spectra of the Pekeris-replaced radial problems.
//!
//! With the centrifugal barrier replaced by D·(D0 + D1·s + D2·s²), both the
//! Klein-Gordon and the Schrödinger radial equations become hypergeometric
//! in z and yield polynomial eigenproblems. The KG spectrum is the root pair
//! of a quadratic in E (particle/antiparticle branches); square roots along
//! the way may go complex, which is tracked explicitly and surfaced through
//! validity flags rather than NaNs.

use crate::potential::{pekeris_coefficients, WoodsSaxonParams};
use crate::units::{Mass, UnitSystem};
use num_complex::Complex64;
use thiserror::Error;

/// Imaginary parts below `REALITY_TOL`·max(1, |E|) are treated as numerical
/// noise on a real eigenvalue.
pub const REALITY_TOL: f64 = 1e-10;

#[derive(Debug, Error, PartialEq)]
pub enum ClosedFormError {
    #[error("invalid quantum state: principal number {n_principal} requires l + 1 <= N (got l = {l})")]
    InvalidState { n_principal: u32, l: u32 },
    #[error("complex energy {re} + {im}i: no real bound state of this index in this regime")]
    ComplexEnergy { re: f64, im: f64 },
}

/// Sign of the energy square-root term: `Particle` is the printed "+".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Particle,
    Antiparticle,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Particle => 1.0,
            Branch::Antiparticle => -1.0,
        }
    }
}

/// Which route produced an energy value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    KgClosed,
    SeClosed,
    OracleExact,
    OracleApprox,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::KgClosed => "KG-closed",
            Method::SeClosed => "SE-closed",
            Method::OracleExact => "oracle-exact",
            Method::OracleApprox => "oracle-approx",
        })
    }
}

/// Spectroscopic state (N, ℓ): N ≥ ℓ + 1; radial node count n_r = N − ℓ − 1.
/// The formula-level index n equals n_r (polynomial degree = node count).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct QuantumState {
    n_principal: u32,
    l: u32,
}

const SPECTROSCOPIC: &[u8] = b"spdfghiklmnoqrtuv";

impl QuantumState {
    pub fn new(n_principal: u32, l: u32) -> Result<Self, ClosedFormError> {
        if n_principal < l + 1 {
            return Err(ClosedFormError::InvalidState { n_principal, l });
        }
        Ok(QuantumState { n_principal, l })
    }

    /// Build from node count and ℓ (always valid).
    pub fn from_nodes(n_r: u32, l: u32) -> Self {
        QuantumState {
            n_principal: n_r + l + 1,
            l,
        }
    }

    pub fn n_principal(self) -> u32 {
        self.n_principal
    }

    pub fn l(self) -> u32 {
        self.l
    }

    /// Radial node count N − ℓ − 1.
    pub fn n_r(self) -> u32 {
        self.n_principal - self.l - 1
    }

    /// Formula index n = n_r.
    pub fn n(self) -> u32 {
        self.n_r()
    }

    /// "1s", "2p", ... (falls back to "[ℓ=k]" beyond the letter table).
    pub fn label(self) -> String {
        match SPECTROSCOPIC.get(self.l as usize) {
            Some(&c) => format!("{}{}", self.n_principal, c as char),
            None => format!("{}[l={}]", self.n_principal, self.l),
        }
    }
}

/// One energy value with provenance and validity flags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub state: QuantumState,
    pub energy: f64,
    pub branch: Option<Branch>,
    pub method: Method,
    pub is_real: bool,
    pub valid: bool,
}

/// The dimensionless coefficients of the transformed KG equation at a given
/// trial energy, complex where the printed square roots demand it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KGCoefficients {
    pub a1_sq: f64,
    pub a2_sq: f64,
    pub a3_sq: f64,
    /// Principal square root of a3² (decay exponent at r → ∞).
    pub a3: Complex64,
    /// A = sqrt(a3² + 2a2² + 4a1²).
    pub cap_a: Complex64,
    /// n1 = −(2n+1) + sqrt(1 + 4a1²).
    pub n1: Complex64,
}

impl KGCoefficients {
    /// The (a3, A) pair as reals, when both imaginary parts are negligible.
    pub fn real_exponents(&self) -> Option<(f64, f64)> {
        let tol = |c: Complex64| c.im.abs() <= REALITY_TOL * c.re.abs().max(1.0);
        if tol(self.a3) && tol(self.cap_a) {
            Some((self.a3.re, self.cap_a.re))
        } else {
            None
        }
    }
}

/// 2m₀D/ħ² = ℓ(ℓ+1)/r0², the unit-free centrifugal scale entering the KG
/// coefficient combinations.
fn centrifugal_scale(l: u32, p: &WoodsSaxonParams) -> f64 {
    f64::from(l) * f64::from(l + 1) / (p.r0 * p.r0)
}

/// KG equation coefficients a1², a2², a3² (and derived a3, A, n1) for state
/// and trial energy E.
pub fn kg_coefficients(
    state: QuantumState,
    energy: f64,
    p: &WoodsSaxonParams,
    m0: Mass,
    u: &UnitSystem,
) -> KGCoefficients {
    let c = pekeris_coefficients(state.l(), p, m0, u);
    let cl = centrifugal_scale(state.l(), p);
    let beta2 = p.beta() * p.beta();
    let delta = u.delta();
    let mc2 = u.rest_energy(m0);
    let a1_sq = (cl * c.d2 - delta * delta * p.v0 * p.v0) / beta2;
    let a2_sq = 2.0 * (cl * c.d1 - 2.0 * delta * delta * energy * p.v0) / beta2;
    let a3_sq = 4.0 * (cl * c.d0 + delta * delta * (mc2 * mc2 - energy * energy)) / beta2;
    let a3 = Complex64::new(a3_sq, 0.0).sqrt();
    let cap_a = Complex64::new(a3_sq + 2.0 * a2_sq + 4.0 * a1_sq, 0.0).sqrt();
    let n1 = -(2.0 * f64::from(state.n()) + 1.0) + Complex64::new(1.0 + 4.0 * a1_sq, 0.0).sqrt();
    KGCoefficients {
        a1_sq,
        a2_sq,
        a3_sq,
        a3,
        cap_a,
        n1,
    }
}

/// Full complex KG eigenvalue for any ℓ (the quadratic-root expression with
/// the branch sign), before the realness check.
pub fn kg_energy_complex(
    state: QuantumState,
    branch: Branch,
    p: &WoodsSaxonParams,
    m0: Mass,
    u: &UnitSystem,
) -> Complex64 {
    let c = pekeris_coefficients(state.l(), p, m0, u);
    let cl = centrifugal_scale(state.l(), p);
    let (w0, w1, w2) = (cl * c.d0, cl * c.d1, cl * c.d2);
    let beta = p.beta();
    let delta = u.delta();
    let mc2 = u.rest_energy(m0);
    let a1_sq = (w2 - delta * delta * p.v0 * p.v0) / (beta * beta);
    let n1 = -(2.0 * f64::from(state.n()) + 1.0) + Complex64::new(1.0 + 4.0 * a1_sq, 0.0).sqrt();
    let den = beta * beta * n1 * n1 + 4.0 * delta * delta * p.v0 * p.v0;
    // fused form of −(den − 4(w1+w2))·V0/(2·den): keeps the two large
    // quotients from cancelling catastrophically when den is huge
    let first = -p.v0 / 2.0 + 2.0 * (w1 + w2) * p.v0 / den;
    let radicand = (2.0 * mc2 * mc2 * delta * delta + 2.0 * w0 + w1 + w2) / (2.0 * den)
        - ((w1 + w2) / den).powu(2)
        - 1.0 / 16.0;
    first + branch.sign() * (beta * n1 / delta) * radicand.sqrt()
}

fn accept_real(
    e: Complex64,
    state: QuantumState,
    branch: Branch,
    real_condition: bool,
) -> Result<EnergyLevel, ClosedFormError> {
    if e.im.abs() <= REALITY_TOL * e.re.abs().max(1.0) {
        Ok(EnergyLevel {
            state,
            energy: e.re,
            branch: Some(branch),
            method: Method::KgClosed,
            is_real: true,
            valid: real_condition && e.re.is_finite(),
        })
    } else {
        Err(ClosedFormError::ComplexEnergy { re: e.re, im: e.im })
    }
}

/// KG eigenvalue for any ℓ-state; errors when the reality condition fails.
pub fn kg_energy(
    state: QuantumState,
    branch: Branch,
    p: &WoodsSaxonParams,
    m0: Mass,
    u: &UnitSystem,
) -> Result<EnergyLevel, ClosedFormError> {
    let e = kg_energy_complex(state, branch, p, m0, u);
    accept_real(e, state, branch, kg_reality_condition(state, p, m0, u))
}

/// KG s-wave eigenvalue: E = −V0/2 ± (βn1'/δ)·sqrt(m²c⁴δ²/(β²n1'²+4δ²V0²) − 1/16).
pub fn kg_energy_swave(
    n: u32,
    branch: Branch,
    p: &WoodsSaxonParams,
    m0: Mass,
    u: &UnitSystem,
) -> Result<EnergyLevel, ClosedFormError> {
    let beta = p.beta();
    let delta = u.delta();
    let mc2 = u.rest_energy(m0);
    let a1p_sq = -(delta * p.v0 / beta).powi(2);
    let n1 = -(2.0 * f64::from(n) + 1.0) + Complex64::new(1.0 + 4.0 * a1p_sq, 0.0).sqrt();
    let den = beta * beta * n1 * n1 + 4.0 * delta * delta * p.v0 * p.v0;
    let radicand = mc2 * mc2 * delta * delta / den - 1.0 / 16.0;
    let e = -p.v0 / 2.0 + branch.sign() * (beta * n1 / delta) * radicand.sqrt();
    let state = QuantumState::from_nodes(n, 0);
    accept_real(e, state, branch, kg_reality_condition(state, p, m0, u))
}

/// The printed reality condition: with n1 real,
/// (2m²c⁴δ² + cl(2D0+D1+D2)) / (2(β²n1²+4δ²V0²)) > (cl(D1+D2)/(β²n1²+4δ²V0²))² + 1/16.
pub fn kg_reality_condition(
    state: QuantumState,
    p: &WoodsSaxonParams,
    m0: Mass,
    u: &UnitSystem,
) -> bool {
    let c = pekeris_coefficients(state.l(), p, m0, u);
    let cl = centrifugal_scale(state.l(), p);
    let beta = p.beta();
    let delta = u.delta();
    let mc2 = u.rest_energy(m0);
    let a1_sq = (cl * c.d2 - delta * delta * p.v0 * p.v0) / (beta * beta);
    let disc = 1.0 + 4.0 * a1_sq;
    if disc < 0.0 {
        // n1 itself is complex: eigenvalues cannot be real
        return false;
    }
    let n1 = -(2.0 * f64::from(state.n()) + 1.0) + disc.sqrt();
    let den = beta * beta * n1 * n1 + 4.0 * delta * delta * p.v0 * p.v0;
    let lhs = (2.0 * mc2 * mc2 * delta * delta + cl * (2.0 * c.d0 + c.d1 + c.d2)) / (2.0 * den);
    let rhs = (cl * (c.d1 + c.d2) / den).powi(2) + 1.0 / 16.0;
    lhs > rhs
}

/// Non-relativistic eigenvalue for any ℓ:
/// E = D·D0 − (ħ²/2m₀a²)·[ (2n+1+S)/4 − (ℓ(ℓ+1)a²(D1+D2)/r0² − V0a²·2m₀/ħ²/... ) / (2n+1+S) ]²
/// with S = sqrt(1 + 4ℓ(ℓ+1)a²D2/r0²).
pub fn schrodinger_energy(
    state: QuantumState,
    p: &WoodsSaxonParams,
    m0: Mass,
    u: &UnitSystem,
) -> EnergyLevel {
    let c = pekeris_coefficients(state.l(), p, m0, u);
    let k = u.kinetic_factor(m0);
    let ll1 = f64::from(state.l()) * f64::from(state.l() + 1);
    let a2 = p.a * p.a;
    let s = (1.0 + 4.0 * ll1 * a2 * c.d2 / (p.r0 * p.r0)).sqrt();
    let q = 2.0 * f64::from(state.n()) + 1.0 + s;
    let bracket = 0.25 * q - (ll1 * a2 * (c.d1 + c.d2) / (p.r0 * p.r0) - p.v0 * a2 / k) / q;
    let energy = k * ll1 * c.d0 / (p.r0 * p.r0) - (k / a2) * bracket * bracket;
    EnergyLevel {
        state,
        energy,
        branch: None,
        method: Method::SeClosed,
        is_real: true,
        valid: energy.is_finite(),
    }
}

/// Non-relativistic s-wave: E = −(ħ²/2m₀a²)[((n+1)/2)² + (m₀V0a²/ħ²/(n+1))² + m₀V0a²/ħ²].
pub fn schrodinger_energy_swave(
    n: u32,
    p: &WoodsSaxonParams,
    m0: Mass,
    u: &UnitSystem,
) -> EnergyLevel {
    let k = u.kinetic_factor(m0);
    let a2 = p.a * p.a;
    // m₀V0a²/ħ² = V0·a²/(2k)
    let nu = p.v0 * a2 / (2.0 * k);
    let nf = f64::from(n);
    let energy = -(k / a2) * (((nf + 1.0) / 2.0).powi(2) + (nu / (nf + 1.0)).powi(2) + nu);
    EnergyLevel {
        state: QuantumState::from_nodes(n, 0),
        energy,
        branch: None,
        method: Method::SeClosed,
        is_real: true,
        valid: energy.is_finite(),
    }
}
