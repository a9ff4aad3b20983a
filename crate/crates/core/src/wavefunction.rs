//! Closed-form radial eigenfunctions and their normalization.
//!
//! Both equations reduce, after the Pekeris replacement and the exponential
//! substitution, to Jacobi-polynomial form:
//!
//! * Klein-Gordon: φ(z) = b′·(2−z)^{A/2}·z^{a3/2}·P_n^{(a3,A)}(1−z) with
//!   z = 2/(1 + e^{β(r−r0)});
//! * Schrödinger: φ(z) = a_n·(1−z)^{A}·z^{ε}·P_n^{(2ε,2A)}(1−2z) with
//!   z = 1/(1 + e^{β(r−r0)}).
//!
//! The Schrödinger exponents are implemented with positive signs — the only
//! normalizable choice; the corresponding source prints them negated.
//! Normalization is by adaptive quadrature against the stated measures; the
//! closed-form gamma expression for the KG constant is computed for n ≤ 2 as
//! a report-only cross-check (its printed double sums are ambiguous and the
//! value disagrees with quadrature by many orders of magnitude).

use crate::closed_form::{ClosedFormError, KGCoefficients, QuantumState};
use crate::potential::{pekeris_coefficients, WoodsSaxonParams};
use crate::quadrature::{adaptive_quad, QuadratureError};
use crate::special::{binom_real, gamma, hyp2f1_series, jacobi_eval, SpecialError};
use crate::units::{Mass, UnitSystem};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum WavefunctionError {
    #[error("Jacobi exponents out of range (a3 = {a3}, A = {cap_a}; both must exceed -1)")]
    InvalidExponents { a3: f64, cap_a: f64 },
    #[error("complex exponents: state is not in the real bound regime")]
    ComplexExponents,
    #[error("non-normalizable: decay exponent {eps} does not vanish at large r")]
    NonNormalizable { eps: f64 },
    #[error("normalization integral diverges")]
    DivergentIntegral,
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    State(#[from] ClosedFormError),
}

/// Degree and exponent parameters of the Jacobi factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub n: u32,
    pub alpha: f64,
    pub beta_j: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WavefunctionKind {
    KleinGordon,
    Schrodinger,
}

/// A fully specified closed-form radial function u(r) = norm·(outer)^{q}·z^{p}·P(arg).
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionSpec {
    pub kind: WavefunctionKind,
    pub state: QuantumState,
    /// Power of z: a3/2 (KG) or ε (SE).
    pub z_exponent: f64,
    /// Power of (2−z) (KG) or (1−z) (SE): A/2 or A.
    pub outer_exponent: f64,
    pub jacobi: JacobiParams,
    pub norm: f64,
    beta: f64,
    r0: f64,
}

/// A sampled radial function with normalization metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFunction {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// |defining normalization integral − 1| for the sampled object.
    pub norm_residual: f64,
}

impl WavefunctionSpec {
    pub fn z_of_r(&self, r: f64) -> f64 {
        let s = 1.0 / (1.0 + (self.beta * (r - self.r0)).exp());
        match self.kind {
            WavefunctionKind::KleinGordon => 2.0 * s,
            WavefunctionKind::Schrodinger => s,
        }
    }

    /// z at the r → 0⁺ probe (the inner end of the physical domain).
    pub fn z_at_origin(&self) -> f64 {
        self.z_of_r(0.0)
    }

    pub fn eval_z(&self, z: f64) -> f64 {
        let (outer, arg) = match self.kind {
            WavefunctionKind::KleinGordon => (2.0 - z, 1.0 - z),
            WavefunctionKind::Schrodinger => (1.0 - z, 1.0 - 2.0 * z),
        };
        let poly = jacobi_eval(self.jacobi.n, self.jacobi.alpha, self.jacobi.beta_j, arg)
            .expect("degree validated at construction");
        self.norm * outer.powf(self.outer_exponent) * z.powf(self.z_exponent) * poly
    }

    pub fn eval_r(&self, r: f64) -> f64 {
        self.eval_z(self.z_of_r(r))
    }

    pub fn with_norm(&self, norm: f64) -> Self {
        let mut s = self.clone();
        s.norm = norm;
        s
    }

    /// Interior sign changes over the physical radial domain (0, r_max).
    pub fn count_nodes(&self, r_max: f64, samples: usize) -> usize {
        let mut nodes = 0;
        let mut prev = 0.0_f64;
        for i in 1..samples {
            let r = r_max * i as f64 / samples as f64;
            let v = self.eval_r(r);
            if prev != 0.0 && v != 0.0 && prev.signum() != v.signum() {
                nodes += 1;
            }
            if v != 0.0 {
                prev = v;
            }
        }
        nodes
    }

    /// Sample on an r-grid; the residual re-checks the defining measure.
    pub fn sample(&self, grid: &[f64]) -> Result<RadialFunction, WavefunctionError> {
        let values: Vec<f64> = grid.iter().map(|&r| self.eval_r(r)).collect();
        let integral = self.normalization_integral()?;
        Ok(RadialFunction {
            grid: grid.to_vec(),
            values,
            norm_residual: (integral - 1.0).abs(),
        })
    }

    /// The defining measure integral of the spec as currently scaled.
    fn normalization_integral(&self) -> Result<f64, WavefunctionError> {
        if 2.0 * self.z_exponent + 1.0 <= -1.0 {
            return Err(WavefunctionError::DivergentIntegral);
        }
        let q = match self.kind {
            // (2/β)∫₀¹ |φ|²·z/(2−z) dz, as printed
            WavefunctionKind::KleinGordon => {
                let f = |z: f64| {
                    let phi = self.eval_z(z);
                    phi * phi * z / (2.0 - z)
                };
                let r = adaptive_quad(f, 1e-300, 1.0, 1e-10, 1e-8)?;
                2.0 / self.beta * r.value
            }
            // ∫₀^∞ |φ(r)|² dr = (1/β)∫₀^{z(0)} |φ|²/(z(1−z)) dz
            WavefunctionKind::Schrodinger => {
                let f = |z: f64| {
                    let phi = self.eval_z(z);
                    phi * phi / (z * (1.0 - z))
                };
                let r = adaptive_quad(f, 1e-300, self.z_at_origin(), 1e-10, 1e-8)?;
                r.value / self.beta
            }
        };
        Ok(q)
    }
}

/// Report from `normalize`: the multiplicative constant, the round-trip
/// residual after applying it, and (KG, n ≤ 2) the closed-form gamma-sum
/// value of the constant — reported, never asserted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationReport {
    pub constant: f64,
    pub residual: f64,
    pub closed_form_crosscheck: Option<f64>,
}

/// Build the KG spec (unit norm) from the equation coefficients.
pub fn kg_wavefunction(
    state: QuantumState,
    coeffs: &KGCoefficients,
    p: &WoodsSaxonParams,
) -> Result<WavefunctionSpec, WavefunctionError> {
    let (a3, cap_a) = coeffs
        .real_exponents()
        .ok_or(WavefunctionError::ComplexExponents)?;
    if a3 <= -1.0 || cap_a <= -1.0 {
        return Err(WavefunctionError::InvalidExponents { a3, cap_a });
    }
    Ok(WavefunctionSpec {
        kind: WavefunctionKind::KleinGordon,
        state,
        z_exponent: a3 / 2.0,
        outer_exponent: cap_a / 2.0,
        jacobi: JacobiParams {
            n: state.n(),
            alpha: a3,
            beta_j: cap_a,
        },
        norm: 1.0,
        beta: p.beta(),
        r0: p.r0,
    })
}

/// ε and A of the Schrödinger eigenfunction at a given energy:
/// ε² = (D·D0 − E)/(kβ²), A² = ε² + γ² + κ² with γ² = (D·D1 − V0)/(kβ²),
/// κ² = D·D2/(kβ²).
pub fn se_exponents(
    state: QuantumState,
    energy: f64,
    p: &WoodsSaxonParams,
    m0: Mass,
    u: &UnitSystem,
) -> Result<(f64, f64), WavefunctionError> {
    let c = pekeris_coefficients(state.l(), p, m0, u);
    let kb2 = u.kinetic_factor(m0) * p.beta() * p.beta();
    let eps_sq = (c.d * c.d0 - energy) / kb2;
    let gamma_sq = (c.d * c.d1 - p.v0) / kb2;
    let kappa_sq = c.d * c.d2 / kb2;
    if eps_sq <= 0.0 {
        return Err(WavefunctionError::NonNormalizable {
            eps: -(-eps_sq).sqrt(),
        });
    }
    let a_sq = eps_sq + gamma_sq + kappa_sq;
    if a_sq <= 0.0 {
        return Err(WavefunctionError::InvalidExponents {
            a3: eps_sq.sqrt(),
            cap_a: a_sq,
        });
    }
    Ok((eps_sq.sqrt(), a_sq.sqrt()))
}

/// Build the SE spec (unit norm) with the sign-fixed positive exponents.
pub fn se_wavefunction(
    state: QuantumState,
    eps: f64,
    cap_a: f64,
    p: &WoodsSaxonParams,
) -> Result<WavefunctionSpec, WavefunctionError> {
    if !(eps > 0.0) {
        return Err(WavefunctionError::NonNormalizable { eps });
    }
    // Jacobi parameters 2ε, 2A must both exceed −1
    if 2.0 * cap_a <= -1.0 {
        return Err(WavefunctionError::InvalidExponents { a3: eps, cap_a });
    }
    Ok(WavefunctionSpec {
        kind: WavefunctionKind::Schrodinger,
        state,
        z_exponent: eps,
        outer_exponent: cap_a,
        jacobi: JacobiParams {
            n: state.n(),
            alpha: 2.0 * eps,
            beta_j: 2.0 * cap_a,
        },
        norm: 1.0,
        beta: p.beta(),
        r0: p.r0,
    })
}

/// Normalization constant by adaptive quadrature, with round-trip residual.
pub fn normalize(spec: &WavefunctionSpec) -> Result<NormalizationReport, WavefunctionError> {
    let integral = spec.normalization_integral()?;
    if !(integral.is_finite() && integral > 0.0) {
        return Err(WavefunctionError::DivergentIntegral);
    }
    let constant = 1.0 / integral.sqrt();
    let normalized = spec.with_norm(spec.norm * constant);
    let residual = (normalized.normalization_integral()? - 1.0).abs();
    let closed_form_crosscheck = match spec.kind {
        WavefunctionKind::KleinGordon if spec.jacobi.n <= 2 => eq50_crosscheck(
            spec.jacobi.n,
            spec.jacobi.alpha,
            spec.jacobi.beta_j,
            spec.beta,
        ),
        _ => None,
    };
    Ok(NormalizationReport {
        constant,
        residual,
        closed_form_crosscheck,
    })
}

/// The printed closed-form KG normalization constant (gamma/hypergeometric
/// route). Its expansion-function double sums are ambiguous as printed; this
/// evaluates the most literal self-consistent reading and exists only so the
/// conformance report can document how far it sits from quadrature.
fn eq50_crosscheck(n: u32, a3: f64, cap_a: f64, beta: f64) -> Option<f64> {
    let nf = f64::from(n);
    let pre = gamma(a3 + nf + 1.0) / (gamma(nf + 1.0) * gamma(cap_a + a3 + nf + 1.0));
    let g_term = |m: u32| -> f64 {
        // the two printed half-integer sign factors multiply to −2^{1/2−m}
        -(2.0_f64).powf(0.5 - f64::from(m))
            * pre
            * binom_real(nf, m)
            * gamma(cap_a + a3 + nf + f64::from(m) + 1.0)
            / gamma(a3 + cap_a + 1.0)
    };
    let mut inv = 0.0;
    for m in 0..=n {
        for s in 0..=n {
            let b = f64::from(m) + f64::from(s) + a3 + 2.0;
            // ∫₀¹ z^{b−1}(2−z)^{A−1} dz via the z→z/2 hypergeometric form
            let integral = gamma(b) / (2.0 * gamma(1.0 + b)) * hyp2f1_series(1.0 - cap_a, b, 1.0 + b, 0.5);
            inv += g_term(m) * g_term(s) * integral;
        }
    }
    inv /= beta;
    if inv.is_finite() && inv > 0.0 {
        Some(1.0 / inv.sqrt())
    } else {
        Some(f64::NAN)
    }
}

/// First-order behavior of the SE eigenfunction near the origin probe
/// z = 1/2 (y = 1 − 2z): φ/a_n ≈ constant + linear·y.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OriginExpansion {
    pub constant: f64,
    pub linear: f64,
    /// Expansion of the bare Jacobi factor alone.
    pub jacobi_constant: f64,
    pub jacobi_linear: f64,
}

/// Expand P_n^{(2ε,2A)}(y) about y = 0 through first order using the
/// binomial-sum representation, and fold in the (1−z)^A z^ε prefactor.
pub fn origin_expansion(n: u32, eps: f64, cap_a: f64) -> OriginExpansion {
    let nf = f64::from(n);
    let mut c0 = 0.0;
    let mut c1 = 0.0;
    for k in 0..=n {
        let b = binom_real(nf + 2.0 * eps, k) * binom_real(nf + 2.0 * cap_a, n - k);
        let sign = if (n - k) % 2 == 0 { 1.0 } else { -1.0 };
        // d/dy[(y−1)^{n−k}(y+1)^k] at y = 0
        c0 += b * sign;
        c1 += b * (f64::from(k) * sign - f64::from(n - k) * sign);
    }
    let scale = 0.5_f64.powi(n as i32);
    c0 *= scale;
    c1 *= scale;
    let pref = 0.5_f64.powf(eps + cap_a);
    OriginExpansion {
        constant: pref * c0,
        // the prefactor contributes dln[(1−z)^A z^ε]/dy = A − ε at z = 1/2
        linear: pref * (c1 + c0 * (cap_a - eps)),
        jacobi_constant: c0,
        jacobi_linear: c1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::{kg_coefficients, kg_energy, schrodinger_energy, Branch};
    use approx::assert_relative_eq;

    fn fig3() -> (WoodsSaxonParams, Mass, UnitSystem) {
        (
            WoodsSaxonParams::new(43.1, 3.44731, 0.67).unwrap(),
            Mass::from_amu(1.007825).unwrap(),
            UnitSystem::nuclear(),
        )
    }

    fn table1() -> (WoodsSaxonParams, Mass, UnitSystem) {
        (
            WoodsSaxonParams::new(50.0, 7.0, 0.6).unwrap(),
            Mass::from_amu(1.0).unwrap(),
            UnitSystem::dimensionless(),
        )
    }

    fn kg_spec(n: u32, l: u32, branch: Branch) -> Option<WavefunctionSpec> {
        let (p, m, u) = fig3();
        let state = QuantumState::from_nodes(n, l);
        let e = kg_energy(state, branch, &p, m, &u).ok()?;
        let coeffs = kg_coefficients(state, e.energy, &p, m, &u);
        kg_wavefunction(state, &coeffs, &p).ok()
    }

    #[test]
    fn kg_ground_state_nodeless_and_positive() {
        let spec = kg_spec(0, 0, Branch::Particle).unwrap();
        for i in 1..100 {
            let z = f64::from(i) / 100.0;
            assert!(spec.eval_z(z) > 0.0);
        }
        let (p, _, _) = fig3();
        assert_eq!(spec.count_nodes(p.r0 + 20.0 * p.a, 10_000), 0);
    }

    #[test]
    fn kg_decay_at_large_r() {
        let spec = kg_spec(0, 1, Branch::Particle).unwrap();
        assert!(spec.z_exponent > 0.0);
        assert!(spec.eval_z(1e-9).abs() < 1e-6 * spec.eval_z(0.5).abs());
        let (p, _, _) = fig3();
        assert!(spec.eval_r(p.r0 + 25.0 * p.a).abs() < 1e-8);
    }

    #[test]
    fn kg_node_count_law_full_physical_range() {
        // node count = n on (0, r_max); some nodes sit inside r < r0
        // (z > 1), so the scan must cover the whole radial domain
        let (p, ..) = fig3();
        for l in 0..3 {
            for n in 0..4 {
                for branch in [Branch::Particle, Branch::Antiparticle] {
                    if let Some(spec) = kg_spec(n, l, branch) {
                        assert_eq!(
                            spec.count_nodes(p.r0 + 20.0 * p.a, 20_000),
                            n as usize,
                            "n={n} l={l} {branch:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn kg_normalization_round_trip() {
        for (n, l) in [(0u32, 0u32), (1, 1), (2, 0)] {
            if let Some(spec) = kg_spec(n, l, Branch::Particle) {
                let rep = normalize(&spec).unwrap();
                assert!(rep.residual < 1e-8, "residual {}", rep.residual);
                // doubling the amplitude halves the constant
                let rep2 = normalize(&spec.with_norm(2.0)).unwrap();
                assert_relative_eq!(rep2.constant, rep.constant / 2.0, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn kg_eq50_crosscheck_is_reported_not_matching() {
        // the printed closed-form constant is documented as inconsistent
        // with quadrature; we only require that a finite report value exists
        let spec = kg_spec(0, 1, Branch::Particle).unwrap();
        let rep = normalize(&spec).unwrap();
        let cc = rep.closed_form_crosscheck.unwrap();
        assert!(cc.is_finite() || cc.is_nan());
    }

    #[test]
    fn se_exponents_and_node_law_table1() {
        let (p, m, u) = table1();
        for l in 0..3u32 {
            for n in 0..3u32 {
                let state = QuantumState::from_nodes(n, l);
                let e = schrodinger_energy(state, &p, m, &u);
                let (eps, cap_a) = se_exponents(state, e.energy, &p, m, &u).unwrap();
                assert!(eps > 0.0 && cap_a > 0.0);
                let spec = se_wavefunction(state, eps, cap_a, &p).unwrap();
                assert_eq!(
                    spec.count_nodes(p.r0 + 20.0 * p.a, 20_000),
                    n as usize,
                    "n={n} l={l}"
                );
                let rep = normalize(&spec).unwrap();
                assert!(rep.residual < 1e-8);
            }
        }
    }

    #[test]
    fn se_rejects_unbound_exponents() {
        let (p, m, u) = table1();
        let state = QuantumState::from_nodes(0, 0);
        // an energy above D·D0 = 0 makes ε² < 0
        assert!(matches!(
            se_exponents(state, 5.0, &p, m, &u),
            Err(WavefunctionError::NonNormalizable { .. })
        ));
        assert!(se_wavefunction(state, -1.0, 2.0, &p).is_err());
    }

    #[test]
    fn origin_expansion_degree_zero() {
        let oe = origin_expansion(0, 1.3, 2.1);
        assert_relative_eq!(oe.jacobi_constant, 1.0, max_relative = 1e-14);
        assert_eq!(oe.jacobi_linear, 0.0);
        assert_relative_eq!(oe.constant, 0.5_f64.powf(3.4), max_relative = 1e-14);
    }

    #[test]
    fn origin_expansion_matches_phi_to_first_order() {
        let (p, m, u) = table1();
        for (n, l) in [(1u32, 1u32), (2, 0), (3, 2)] {
            let state = QuantumState::from_nodes(n, l);
            let e = schrodinger_energy(state, &p, m, &u);
            let (eps, cap_a) = se_exponents(state, e.energy, &p, m, &u).unwrap();
            let spec = se_wavefunction(state, eps, cap_a, &p).unwrap();
            let oe = origin_expansion(n, eps, cap_a);
            // Richardson: remainder after removing constant+linear is O(y²)
            let rem = |y: f64| {
                let z = (1.0 - y) / 2.0;
                spec.eval_z(z) - oe.constant - oe.linear * y
            };
            let r1 = rem(1e-3).abs();
            let r2 = rem(5e-4).abs();
            if r1 > 1e-12 {
                let order = (r1 / r2).log2();
                assert!(
                    (order - 2.0).abs() < 0.3,
                    "n={n} l={l}: remainder order {order}"
                );
            }
            // constant term matches φ(z=1/2)
            assert_relative_eq!(spec.eval_z(0.5), oe.constant, max_relative = 1e-10);
        }
    }

    #[test]
    fn origin_terms_finite_for_table1_states() {
        let (p, m, u) = table1();
        for l in 0..6u32 {
            for n in 0..=(5 - l.min(5)) {
                let state = QuantumState::from_nodes(n, l);
                let e = schrodinger_energy(state, &p, m, &u);
                let (eps, cap_a) = se_exponents(state, e.energy, &p, m, &u).unwrap();
                let oe = origin_expansion(n, eps, cap_a);
                assert!(oe.constant.is_finite() && oe.linear.is_finite());
                let spec = se_wavefunction(state, eps, cap_a, &p).unwrap();
                assert!(spec.eval_z(0.5).is_finite());
                assert!(spec.eval_r(1e-9).is_finite());
            }
        }
    }
}
