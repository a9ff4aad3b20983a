//! Special functions needed by the closed-form wavefunctions: the gamma
//! function, Jacobi polynomials (recurrence plus the explicit gamma-sum
//! representation), real-argument binomial coefficients, and the Gauss
//! hypergeometric function at z = 1/2.

use thiserror::Error;

/// Degrees above this are refused rather than silently losing accuracy in
/// the three-term recurrence.
pub const JACOBI_DEGREE_CAP: u32 = 64;

#[derive(Debug, Error, PartialEq)]
pub enum SpecialError {
    #[error("Jacobi degree {n} exceeds the supported cap {cap}")]
    DegreeTooLarge { n: u32, cap: u32 },
    #[error("hyp2f1_half({a}, {b}) outside the identity's validity region (requires a + b = 1)")]
    OutOfRegion { a: f64, b: f64 },
}

// Lanczos approximation, g = 7, 9 coefficients; |relative error| < 1e-12
// over the positive axis, reflection below 1/2.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for real x (poles at non-positive integers return non-finite values).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection: Γ(x)Γ(1−x) = π/sin(πx)
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS_COEF[0];
        for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
    }
}

/// Generalized binomial coefficient C(x, k) for real x, integer k ≥ 0.
pub fn binom_real(x: f64, k: u32) -> f64 {
    let mut acc = 1.0;
    for j in 1..=k {
        acc *= (x - f64::from(k) + f64::from(j)) / f64::from(j);
    }
    acc
}

/// P_n^{(α,β)}(x) by the three-term recurrence.
pub fn jacobi_eval(n: u32, alpha: f64, beta: f64, x: f64) -> Result<f64, SpecialError> {
    if n > JACOBI_DEGREE_CAP {
        return Err(SpecialError::DegreeTooLarge {
            n,
            cap: JACOBI_DEGREE_CAP,
        });
    }
    if n == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) / 2.0;
    for k in 2..=n {
        let k = f64::from(k);
        let ab = alpha + beta;
        let c0 = 2.0 * k * (k + ab) * (2.0 * k + ab - 2.0);
        let c1 = (2.0 * k + ab - 1.0)
            * ((2.0 * k + ab) * (2.0 * k + ab - 2.0) * x + alpha * alpha - beta * beta);
        let c2 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + ab);
        let next = (c1 * cur - c2 * prev) / c0;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// P_n^{(α,β)}(x) by the explicit gamma-function sum
/// Γ(n+α+1)/(n!Γ(n+α+β+1)) Σ_m C(n,m) Γ(n+α+β+m+1)/Γ(α+m+1) ((x−1)/2)^m.
///
/// Used as an independent cross-check of the recurrence for small n.
pub fn jacobi_sum_gamma(n: u32, alpha: f64, beta: f64, x: f64) -> Result<f64, SpecialError> {
    if n > JACOBI_DEGREE_CAP {
        return Err(SpecialError::DegreeTooLarge {
            n,
            cap: JACOBI_DEGREE_CAP,
        });
    }
    // for x < 0 apply P_n^{(α,β)}(x) = (−1)ⁿ P_n^{(β,α)}(−x) first: the sum
    // is then in powers of (x−1)/2 with |·| ≤ 1/2, avoiding the catastrophic
    // alternating-sum cancellation near x = −1
    if x < 0.0 {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(sign * jacobi_sum_gamma(n, beta, alpha, -x)?);
    }
    let nf = f64::from(n);
    // Γ(n+α+β+m+1)/Γ(n+α+β+1) is folded into the rising factorial
    // (n+α+β+1)_m (finite when α+β hits a negative integer); terms are built
    // by exact ratio recurrences, gamma is only called on the smooth prefactor
    let pre = gamma(nf + alpha + 1.0) / (gamma(nf + 1.0) * gamma(alpha + 1.0));
    // the alternating sum can cancel by factors > 1e5 (e.g. large symmetric
    // α = β near x = 0); terms and partial sums are carried in double-double
    // precision so the final value keeps full f64 accuracy
    let q = (x - 1.0) / 2.0;
    let mut term = Dd::from(1.0);
    let mut sum = Dd::from(1.0);
    for m in 0..n {
        let mf = f64::from(m);
        term = term
            .mul_f64(nf - mf)
            .div_f64(mf + 1.0)
            .mul_f64(nf + alpha + beta + 1.0 + mf)
            .div_f64(alpha + mf + 1.0)
            .mul_f64(q);
        sum = sum.add(term);
    }
    Ok(pre * sum.hi)
}

/// Minimal double-double value (~32 significant digits) for the
/// cancellation-prone Jacobi sum. Products use FMA error terms, sums the
/// Knuth two-sum.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

impl From<f64> for Dd {
    fn from(hi: f64) -> Self {
        Dd { hi, lo: 0.0 }
    }
}

impl Dd {
    fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let (hi, lo) = two_sum(s, e + self.lo + other.lo);
        Dd { hi, lo }
    }

    fn mul_f64(self, a: f64) -> Dd {
        let p = self.hi * a;
        let e = self.hi.mul_add(a, -p) + self.lo * a;
        let (hi, lo) = two_sum(p, e);
        Dd { hi, lo }
    }

    fn div_f64(self, a: f64) -> Dd {
        let q1 = self.hi / a;
        // remainder of the first quotient, exactly via FMA
        let r = q1.mul_add(-a, self.hi) + self.lo;
        let (hi, lo) = two_sum(q1, r / a);
        Dd { hi, lo }
    }
}

/// ₂F₁(a, b; c; z) by direct series summation (|z| < 1).
pub fn hyp2f1_series(a: f64, b: f64, c: f64, z: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..5000 {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term.abs() < 1e-16 * sum.abs().max(1.0) {
            break;
        }
    }
    sum
}

/// ₂F₁(1−A, b; 1+b; 1/2) via the gamma identity (√π/2^A)·Γ(1+A)/Γ(1/2+A).
///
/// Called with the series parameters (a, b) = (1−A, b); the identity is
/// valid exactly when A = b, i.e. a + b = 1 (derived from the z = −1
/// Kummer value through the quadratic transformation — the constraint
/// a − b + c = 1 of the Kummer identity forces b = A, see the project
/// conformance report).
pub fn hyp2f1_half(a: f64, b: f64) -> Result<f64, SpecialError> {
    let cap_a = 1.0 - a;
    if (cap_a - b).abs() > 1e-10 * (1.0 + a.abs() + b.abs()) {
        return Err(SpecialError::OutOfRegion { a, b });
    }
    Ok(std::f64::consts::PI.sqrt() / 2f64.powf(cap_a) * gamma(1.0 + cap_a)
        / gamma(0.5 + cap_a))
}
