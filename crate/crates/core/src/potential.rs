//! The Woods-Saxon well, the Pekeris-type centrifugal replacement, and the
//! two effective potentials built from them.
//!
//! The exact radial problem for ℓ > 0 carries the barrier ħ²ℓ(ℓ+1)/(2m₀r²),
//! which blocks closed-form solution. Expanding 1/r² around r = r0 in the
//! well's own shape function s = 1/(1 + e^{β(r−r0)}) gives
//!
//!   ħ²ℓ(ℓ+1)/(2m₀r²) ≈ D·(D0 + D1·s + D2·s²),  D = ħ²ℓ(ℓ+1)/(2m₀r0²),
//!
//! with D0, D1, D2 fixed by matching value, slope and curvature at r = r0.

use crate::units::{Mass, UnitSystem};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PotentialError {
    #[error("parameter {name} must be strictly positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },
    #[error("radius must be strictly positive for the exact centrifugal term, got {0}")]
    NonPositiveRadius(f64),
}

/// Depth V0, radius r0, surface thickness a of −V0/(1 + e^{(r−r0)/a}).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WoodsSaxonParams {
    pub v0: f64,
    pub r0: f64,
    pub a: f64,
}

impl WoodsSaxonParams {
    pub fn new(v0: f64, r0: f64, a: f64) -> Result<Self, PotentialError> {
        for (name, value) in [("V0", v0), ("r0", r0), ("a", a)] {
            if !(value > 0.0) {
                return Err(PotentialError::NonPositiveParameter { name, value });
            }
        }
        Ok(WoodsSaxonParams { v0, r0, a })
    }

    /// Inverse surface thickness β = 1/a.
    pub fn beta(&self) -> f64 {
        1.0 / self.a
    }

    /// Dimensionless steepness t = βr0.
    pub fn t(&self) -> f64 {
        self.r0 / self.a
    }

    /// Shape function s(r) = 1/(1 + e^{β(r−r0)}) ∈ (0, 1).
    pub fn shape(&self, r: f64) -> f64 {
        1.0 / (1.0 + (self.beta() * (r - self.r0)).exp())
    }
}

/// V(r) = −V0/(1 + e^{β(r−r0)}).
pub fn woods_saxon(r: f64, p: &WoodsSaxonParams) -> f64 {
    debug_assert!(r >= 0.0, "radius must be non-negative");
    -p.v0 * p.shape(r)
}

/// The matched coefficients of the centrifugal replacement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PekerisCoefficients {
    /// Centrifugal scale ħ²ℓ(ℓ+1)/(2m₀r0²), in energy units.
    pub d: f64,
    pub d0: f64,
    pub d1: f64,
    pub d2: f64,
}

impl PekerisCoefficients {
    /// The replacement series D·(D0 + D1·s + D2·s²) at radius r.
    pub fn eval(&self, r: f64, p: &WoodsSaxonParams) -> f64 {
        let s = p.shape(r);
        self.d * (self.d0 + self.d1 * s + self.d2 * s * s)
    }
}

/// D0 = 12/t² − 4/t + 1, D1 = −48/t² + 8/t, D2 = 48/t² with t = βr0,
/// D = ħ²ℓ(ℓ+1)/(2m₀r0²).
pub fn pekeris_coefficients(
    l: u32,
    p: &WoodsSaxonParams,
    m0: Mass,
    u: &UnitSystem,
) -> PekerisCoefficients {
    let t = p.t();
    let ll1 = f64::from(l) * f64::from(l + 1);
    PekerisCoefficients {
        d: u.kinetic_factor(m0) * ll1 / (p.r0 * p.r0),
        d0: 12.0 / (t * t) - 4.0 / t + 1.0,
        d1: -48.0 / (t * t) + 8.0 / t,
        d2: 48.0 / (t * t),
    }
}

/// V(r) + ħ²ℓ(ℓ+1)/(2m₀r²); rejects r ≤ 0 (centrifugal singularity).
pub fn effective_potential_exact(
    r: f64,
    l: u32,
    p: &WoodsSaxonParams,
    m0: Mass,
    u: &UnitSystem,
) -> Result<f64, PotentialError> {
    if !(r > 0.0) {
        return Err(PotentialError::NonPositiveRadius(r));
    }
    let ll1 = f64::from(l) * f64::from(l + 1);
    Ok(woods_saxon(r, p) + u.kinetic_factor(m0) * ll1 / (r * r))
}

/// V(r) + D·(D0 + D1·s + D2·s²); total on r ≥ 0 (no singularity).
pub fn effective_potential_approx(
    r: f64,
    l: u32,
    p: &WoodsSaxonParams,
    m0: Mass,
    u: &UnitSystem,
) -> f64 {
    woods_saxon(r, p) + pekeris_coefficients(l, p, m0, u).eval(r, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn table1() -> WoodsSaxonParams {
        WoodsSaxonParams::new(50.0, 7.0, 0.6).unwrap()
    }

    const DIMLESS: UnitSystem = UnitSystem::dimensionless();

    fn unit_mass() -> Mass {
        Mass::from_amu(1.0).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(WoodsSaxonParams::new(0.0, 7.0, 0.6).is_err());
        assert!(WoodsSaxonParams::new(50.0, -7.0, 0.6).is_err());
        assert!(WoodsSaxonParams::new(50.0, 7.0, 0.0).is_err());
        let p = table1();
        assert_relative_eq!(p.beta() * p.a, 1.0, max_relative = 1e-15);
    }

    #[test]
    fn woods_saxon_midpoint_and_tail() {
        let p = table1();
        assert_relative_eq!(woods_saxon(p.r0, &p), -p.v0 / 2.0, max_relative = 1e-14);
        // exponential tail: |V| < 1e-12·V0 once β(r−r0) > 30
        let r_far = p.r0 + 31.0 * p.a;
        assert!(woods_saxon(r_far, &p).abs() < 1e-12 * p.v0);
        assert!(woods_saxon(r_far, &p) < 0.0);
    }

    #[test]
    fn woods_saxon_scalar_value() {
        // V0=50, r0=7, a=0.6, r=7.6 → −50/(1+e)
        let p = table1();
        let expected = -50.0 / (1.0 + std::f64::consts::E);
        assert_relative_eq!(woods_saxon(7.6, &p), expected, max_relative = 1e-14);
        assert_relative_eq!(expected, -13.447_071, max_relative = 1e-7);
    }

    /// Independent fit of (D0, D1, D2): solve the 3×3 linear system matching
    /// value, first and second derivative of D·(D0+D1·s+D2·s²) to D·r0²/r²
    /// at x = 0, derivatives by central finite differences.
    fn fitted_coefficients(p: &WoodsSaxonParams) -> (f64, f64, f64) {
        let h = 1e-5 * p.r0;
        let shape = |x: f64| 1.0 / (1.0 + (p.beta() * x).exp());
        let target = |x: f64| p.r0 * p.r0 / ((p.r0 + x) * (p.r0 + x));
        // rows: value, d/dx, d²/dx² of (1, s, s²) at x=0
        let mut m = [[0.0_f64; 3]; 3];
        let mut rhs = [0.0_f64; 3];
        let basis = [
            |_s: f64| 1.0,
            |s: f64| s,
            |s: f64| s * s,
        ];
        for (j, b) in basis.iter().enumerate() {
            m[0][j] = b(shape(0.0));
            m[1][j] = (b(shape(h)) - b(shape(-h))) / (2.0 * h);
            m[2][j] = (b(shape(h)) - 2.0 * b(shape(0.0)) + b(shape(-h))) / (h * h);
        }
        rhs[0] = target(0.0);
        rhs[1] = (target(h) - target(-h)) / (2.0 * h);
        rhs[2] = (target(h) - 2.0 * target(0.0) + target(-h)) / (h * h);
        // Gaussian elimination, 3×3
        for col in 0..3 {
            let piv = (col..3)
                .max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())
                .unwrap();
            m.swap(col, piv);
            rhs.swap(col, piv);
            for row in col + 1..3 {
                let f = m[row][col] / m[col][col];
                for k in col..3 {
                    m[row][k] -= f * m[col][k];
                }
                rhs[row] -= f * rhs[col];
            }
        }
        let mut x = [0.0_f64; 3];
        for row in (0..3).rev() {
            let mut acc = rhs[row];
            for k in row + 1..3 {
                acc -= m[row][k] * x[k];
            }
            x[row] = acc / m[row][row];
        }
        (x[0], x[1], x[2])
    }

    #[test]
    fn pekeris_t2_analytic() {
        // t = 2 → (D0, D1, D2) = (2, −8, 12)
        let p = WoodsSaxonParams::new(50.0, 2.0, 1.0).unwrap();
        let c = pekeris_coefficients(1, &p, unit_mass(), &DIMLESS);
        assert_relative_eq!(c.d0, 2.0, max_relative = 1e-14);
        assert_relative_eq!(c.d1, -8.0, max_relative = 1e-14);
        assert_relative_eq!(c.d2, 12.0, max_relative = 1e-14);
        assert_relative_eq!(c.d, 2.0 / 4.0, max_relative = 1e-14);
    }

    #[test]
    fn pekeris_matches_fitting_oracle() {
        for p in [table1(), WoodsSaxonParams::new(43.1, 3.44731, 0.67).unwrap()] {
            let c = pekeris_coefficients(2, &p, unit_mass(), &DIMLESS);
            let (f0, f1, f2) = fitted_coefficients(&p);
            assert_relative_eq!(c.d0, f0, max_relative = 1e-5);
            assert_relative_eq!(c.d1, f1, max_relative = 1e-5);
            assert_relative_eq!(c.d2, f2, max_relative = 1e-5);
        }
        // t = 7/0.6 frozen values from the fitting oracle
        let c = pekeris_coefficients(1, &table1(), unit_mass(), &DIMLESS);
        assert_relative_eq!(c.d0, 0.745_306_122_448_98, max_relative = 1e-12);
        assert_relative_eq!(c.d1, 0.333_061_224_489_80, max_relative = 1e-12);
        assert_relative_eq!(c.d2, 0.352_653_061_224_49, max_relative = 1e-12);
    }

    #[test]
    fn pekeris_large_t_limit() {
        let p = WoodsSaxonParams::new(50.0, 1e9, 1.0).unwrap();
        let c = pekeris_coefficients(1, &p, unit_mass(), &DIMLESS);
        assert!((c.d0 - 1.0).abs() < 1e-8);
        assert!(c.d1.abs() < 1e-8);
        assert!(c.d2.abs() < 1e-15);
    }

    #[test]
    fn d_zero_iff_l_zero() {
        let p = table1();
        assert_eq!(pekeris_coefficients(0, &p, unit_mass(), &DIMLESS).d, 0.0);
        assert!(pekeris_coefficients(1, &p, unit_mass(), &DIMLESS).d > 0.0);
    }

    #[test]
    fn effective_potentials_l0_reduce_to_bare_well() {
        let p = table1();
        for i in 1..200 {
            let r = 0.1 * f64::from(i);
            let bare = woods_saxon(r, &p);
            let ex = effective_potential_exact(r, 0, &p, unit_mass(), &DIMLESS).unwrap();
            let ap = effective_potential_approx(r, 0, &p, unit_mass(), &DIMLESS);
            assert_eq!(ex, bare);
            assert_eq!(ap, bare);
        }
    }

    #[test]
    fn effective_exact_rejects_nonpositive_radius() {
        let p = table1();
        assert!(effective_potential_exact(0.0, 1, &p, unit_mass(), &DIMLESS).is_err());
        assert!(effective_potential_exact(-1.0, 1, &p, unit_mass(), &DIMLESS).is_err());
    }

    #[test]
    fn approx_at_x0_equals_well_plus_d() {
        let p = table1();
        let c = pekeris_coefficients(3, &p, unit_mass(), &DIMLESS);
        let v = effective_potential_approx(p.r0, 3, &p, unit_mass(), &DIMLESS);
        assert_relative_eq!(v, woods_saxon(p.r0, &p) + c.d, max_relative = 1e-13);
    }

    #[test]
    fn monotone_in_l() {
        let p = table1();
        for i in 1..60 {
            let r = 0.3 * f64::from(i);
            for l in 0..6 {
                let ex_lo = effective_potential_exact(r, l, &p, unit_mass(), &DIMLESS).unwrap();
                let ex_hi =
                    effective_potential_exact(r, l + 1, &p, unit_mass(), &DIMLESS).unwrap();
                assert!(ex_hi >= ex_lo);
                let ap_lo = effective_potential_approx(r, l, &p, unit_mass(), &DIMLESS);
                let ap_hi = effective_potential_approx(r, l + 1, &p, unit_mass(), &DIMLESS);
                assert!(ap_hi >= ap_lo);
            }
        }
    }

    proptest! {
        #[test]
        fn coefficient_identity(t in 0.1_f64..1e4) {
            // D0 + D1/2 + D2/4 = 1 exactly (value match at x = 0)
            let p = WoodsSaxonParams::new(1.0, t, 1.0).unwrap();
            let c = pekeris_coefficients(1, &p, Mass::from_amu(1.0).unwrap(), &DIMLESS);
            prop_assert!((c.d0 + c.d1 / 2.0 + c.d2 / 4.0 - 1.0).abs() < 1e-14);
        }

        #[test]
        fn woods_saxon_monotone_and_bounded(
            r1 in 0.0_f64..40.0,
            dr in 1e-6_f64..10.0,
            v0 in 0.5_f64..200.0,
            r0 in 0.5_f64..15.0,
            a in 0.05_f64..2.0,
        ) {
            let p = WoodsSaxonParams::new(v0, r0, a).unwrap();
            let v1 = woods_saxon(r1, &p);
            let v2 = woods_saxon(r1 + dr, &p);
            // non-strict: deep in the flat bottom the increment underflows
            prop_assert!(v2 >= v1);
            // non-strict at the ends: V(0) rounds to −v0 for very sharp
            // surfaces, and the far tail underflows to −0
            prop_assert!(v1 >= -v0 && v1 <= 0.0);
        }
    }
}
