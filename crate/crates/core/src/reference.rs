//! Reference values: closed forms, large-κ asymptotics for power and log
//! amplitudes with a linear phase, and a brute-force oscillation-resolving
//! quadrature for moderate κ.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{invalid, QuadError, Result};
use crate::gauss::gauss_legendre;
use crate::problem::NormalizedProblem;

/// Euler–Mascheroni constant, to the digits the log asymptotic uses.
pub const EULER_GAMMA: f64 = 0.5772156649;

/// Largest wave number the brute-force oracle accepts.
pub const BRUTE_FORCE_MAX_KAPPA: f64 = 1e4;

const BRUTE_FORCE_POINTS: usize = 15;
const MAX_DOUBLINGS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceKind {
    Exact,
    Asymptotic,
    BruteForce,
}

impl ReferenceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ReferenceKind::Exact => "exact",
            ReferenceKind::Asymptotic => "asymptotic",
            ReferenceKind::BruteForce => "brute_force",
        }
    }
}

impl fmt::Display for ReferenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceValue {
    pub value: Complex64,
    pub kind: ReferenceKind,
    /// Estimated relative accuracy of `value`.
    pub claimed_accuracy: f64,
}

/// `Γ(x)` by the Lanczos approximation (`g = 7`, 9 terms), with reflection
/// below 1/2.
pub fn gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut a = COEF[0];
    for (i, c) in COEF.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

/// `(iκ)^{-(1+α)}` on the branch with `arg(iκ) = π/2`.
pub fn i_kappa_power(alpha: f64, kappa: f64) -> Complex64 {
    Complex64::from_polar(kappa.powf(-(1.0 + alpha)), -PI * (1.0 + alpha) / 2.0)
}

/// Large-κ value of `∫_0^1 x^α e^{iκx} dx`:
/// `Γ(1+α) e^{iπ(1+α)} (iκ)^{-(1+α)} + e^{iκ}/(iκ)`.
pub fn asymptotic_power_ref(alpha: f64, kappa: f64) -> Result<ReferenceValue> {
    if !(alpha > -1.0 && alpha < 1.0) || alpha == 0.0 {
        return Err(invalid(
            "alpha",
            format!("need alpha in (-1, 0) or (0, 1), got {alpha}"),
        ));
    }
    if !(kappa > 1.0) {
        return Err(QuadError::WaveNumberTooSmall(kappa));
    }
    let origin =
        gamma(1.0 + alpha) * Complex64::cis(PI * (1.0 + alpha)) * i_kappa_power(alpha, kappa);
    let end = Complex64::cis(kappa) / Complex64::new(0.0, kappa);
    Ok(ReferenceValue {
        value: origin + end,
        kind: ReferenceKind::Asymptotic,
        claimed_accuracy: 1.0 / kappa,
    })
}

/// Large-κ value of `∫_0^1 ln(x) e^{iκx} dx`: `-(π/2 + iγ_E + i ln κ)/κ`.
pub fn asymptotic_log_ref(kappa: f64) -> Result<ReferenceValue> {
    if !(kappa > 1.0) {
        return Err(QuadError::WaveNumberTooSmall(kappa));
    }
    Ok(ReferenceValue {
        value: -Complex64::new(PI / 2.0, EULER_GAMMA + kappa.ln()) / kappa,
        kind: ReferenceKind::Asymptotic,
        claimed_accuracy: 1.0 / (kappa * kappa),
    })
}

/// `∫_0^1 e^{cx} e^{iκx} dx = (e^{c+iκ} - 1)/(c + iκ)`.
pub fn closed_form_exp_linear(c: f64, kappa: f64) -> ReferenceValue {
    let value = if c == 0.0 {
        let half = (kappa / 2.0).sin();
        Complex64::new(kappa.sin() / kappa, 2.0 * half * half / kappa)
    } else {
        let z = Complex64::new(c, kappa);
        (z.exp() - 1.0) / z
    };
    ReferenceValue {
        value,
        kind: ReferenceKind::Exact,
        claimed_accuracy: f64::EPSILON,
    }
}

/// Neumaier-compensated sum of complex terms.
#[derive(Default)]
struct CompensatedSum {
    sum: Complex64,
    carry: Complex64,
}

impl CompensatedSum {
    fn add(&mut self, v: Complex64) {
        fn step(sum: &mut f64, carry: &mut f64, v: f64) {
            let t = *sum + v;
            if sum.abs() >= v.abs() {
                *carry += (*sum - t) + v;
            } else {
                *carry += (v - t) + *sum;
            }
            *sum = t;
        }
        step(&mut self.sum.re, &mut self.carry.re, v.re);
        step(&mut self.sum.im, &mut self.carry.im, v.im);
    }

    fn total(&self) -> Complex64 {
        self.sum + self.carry
    }
}

/// Composite 15-point Gauss–Legendre on panels a fraction of a wavelength
/// wide, doubled until two successive values agree to `rel_tol`. For a
/// singular amplitude the first panel is refined geometrically towards 0.
pub fn brute_force(problem: &NormalizedProblem, rel_tol: f64) -> Result<ReferenceValue> {
    let kappa = problem.kappa();
    if kappa > BRUTE_FORCE_MAX_KAPPA {
        return Err(invalid(
            "kappa",
            format!("brute force is limited to kappa <= {BRUTE_FORCE_MAX_KAPPA}, got {kappa}"),
        ));
    }
    if !(rel_tol >= 1e-12) {
        return Err(invalid(
            "rel_tol",
            format!("need rel_tol >= 1e-12, got {rel_tol}"),
        ));
    }
    let rule = gauss_legendre(BRUTE_FORCE_POINTS)?;
    let slope = (0..=256)
        .map(|i| problem.g_prime(i as f64 / 256.0).abs())
        .fold(problem.sigma_r().max(1.0), f64::max);
    let base = (8.0 * kappa.abs().max(1.0) * slope / (2.0 * PI)).ceil() as usize;
    let depth = 10f64.powf(-17.0 / (1.0 + problem.mu())).max(1e-300);

    let integrand = |x: f64| problem.f(x) * Complex64::cis(kappa * problem.g(x));
    let evaluate = |panels: usize| {
        let width = 1.0 / panels as f64;
        let mut acc = CompensatedSum::default();
        let start = if problem.integrand().is_singular() {
            let mut hi = width;
            while hi > depth {
                let lo = 0.5 * hi;
                acc.add(rule.integrate(lo, hi, integrand));
                hi = lo;
            }
            1
        } else {
            0
        };
        for j in start..panels {
            let a = j as f64 * width;
            let b = if j + 1 == panels {
                1.0
            } else {
                (j + 1) as f64 * width
            };
            acc.add(rule.integrate(a, b, integrand));
        }
        acc.total()
    };

    let mut previous = evaluate(base);
    let mut panels = base;
    for _ in 0..MAX_DOUBLINGS {
        panels *= 2;
        let current = evaluate(panels);
        if (current - previous).norm() <= rel_tol * current.norm() {
            return Ok(ReferenceValue {
                value: problem.restore(current),
                kind: ReferenceKind::BruteForce,
                claimed_accuracy: rel_tol,
            });
        }
        previous = current;
    }
    let last = evaluate(panels);
    Err(QuadError::OracleNotConverged {
        last: (last.re, last.im),
        previous: (previous.re, previous.im),
    })
}
