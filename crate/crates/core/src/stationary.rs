//! Rules for an amplitude singular at 0 and/or an oscillator with a
//! stationary point of order `r` at 0.
//!
//! The interval is split at `λ_r = κ_σ^{-1/(r+1)}`. On `[0, λ_r]` the
//! integrand is non-oscillatory and handled by [`crate::singular`]; on
//! `[λ_r, 1]` a Filon rule runs on the Λ-mesh
//! `x_j = κ_σ^{(j/n - 1)/(r+1)}`, whose panel `j` gets `N_j` refinements
//! derived from `q_j = M_j x_{j-1} / g(x_{j-1})`.

use num_complex::Complex64;

use crate::ceil_tol;
use crate::error::{invalid, QuadError, Result};
use crate::filon::{NodePlacement, PanelSampler};
use crate::outcome::{QuadratureOutcome, Warning};
use crate::problem::NormalizedProblem;
use crate::singular::{singular_quad_algebraic, singular_quad_geometric};

/// Degree schedule on the Λ-mesh.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaVariant {
    /// Fixed degree `m`; `N_j = ⌈q_j⌉` for `r = 0`, `⌈q_j^{m/(m-1)}⌉` otherwise.
    Polynomial { m: usize },
    /// `m_j = n + ⌈(n + 1 - j)(1 - α)⌉` and `N_j = ⌈q_j⌉`.
    Exponential,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaMesh {
    pub n: usize,
    /// `x_0 = λ_r < ... < x_n = 1`.
    pub nodes: Vec<f64>,
    pub max_derivative: Vec<f64>,
    pub q: Vec<f64>,
    pub refinements: Vec<usize>,
    pub degrees: Vec<usize>,
    /// `λ_r^{-1/n} - 1`.
    pub beta: f64,
    /// `κ_σ^{1/n}(κ_σ^{1/n} - 1)`.
    pub tau: f64,
    /// `1 - λ_r^{1/n}`.
    pub rho: f64,
}

pub fn build_lambda_mesh(
    problem: &NormalizedProblem,
    n: usize,
    variant: LambdaVariant,
) -> Result<LambdaMesh> {
    if n == 0 {
        return Err(invalid("n", "need at least one panel"));
    }
    if problem.kappa() <= 1.0 {
        return Err(QuadError::WaveNumberTooSmall(problem.kappa()));
    }
    let r = problem.r();
    if let LambdaVariant::Polynomial { m } = variant {
        if m == 0 {
            return Err(invalid("m", "degree must be at least 1"));
        }
        if r > 0 && m < 2 {
            return Err(invalid(
                "m",
                "need m >= 2 when the oscillator has a stationary point",
            ));
        }
    }
    let ks = problem.kappa_sigma();
    let lambda = problem.lambda_r();
    let rf = r as f64 + 1.0;
    let nodes: Vec<f64> = (0..=n)
        .map(|j| match j {
            0 => lambda,
            j if j == n => 1.0,
            j => ks.powf((j as f64 / n as f64 - 1.0) / rf),
        })
        .collect();

    let mut max_derivative = Vec::with_capacity(n);
    let mut q = Vec::with_capacity(n);
    let mut refinements = Vec::with_capacity(n);
    let mut degrees = Vec::with_capacity(n);
    for j in 1..=n {
        let (a, b) = (nodes[j - 1], nodes[j]);
        let m_j = problem.g_prime(a).abs().max(problem.g_prime(b).abs());
        let ga = problem.g(a);
        if !(ga > 0.0) {
            return Err(QuadError::NonFinite("g at a Λ-mesh node"));
        }
        let q_j = m_j * a / ga;
        let (refine, degree) = match variant {
            LambdaVariant::Polynomial { m } if r == 0 => (ceil_tol(q_j), m),
            LambdaVariant::Polynomial { m } => (ceil_tol(q_j.powf(m as f64 / (m as f64 - 1.0))), m),
            LambdaVariant::Exponential => {
                let extra = ceil_tol((n + 1 - j) as f64 * (1.0 - problem.alpha()));
                (ceil_tol(q_j), n + extra)
            }
        };
        max_derivative.push(m_j);
        q.push(q_j);
        refinements.push(refine);
        degrees.push(degree);
    }

    let root = ks.powf(1.0 / n as f64);
    Ok(LambdaMesh {
        n,
        nodes,
        max_derivative,
        q,
        refinements,
        degrees,
        beta: lambda.powf(-1.0 / n as f64) - 1.0,
        tau: root * (root - 1.0),
        rho: 1.0 - lambda.powf(1.0 / n as f64),
    })
}

fn run_lambda(problem: &NormalizedProblem, mesh: &LambdaMesh) -> Result<QuadratureOutcome> {
    let mut sampler = PanelSampler::new(problem, NodePlacement::Uniform);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..mesh.n {
        acc += sampler.composite(
            mesh.nodes[j],
            mesh.nodes[j + 1],
            mesh.degrees[j],
            mesh.refinements[j],
        )?;
    }
    Ok(sampler.finish(acc))
}

/// Fixed-degree Filon rule on `[λ_r, 1]`.
pub fn oscillatory_part_p(
    problem: &NormalizedProblem,
    n: usize,
    m: usize,
) -> Result<QuadratureOutcome> {
    run_lambda(
        problem,
        &build_lambda_mesh(problem, n, LambdaVariant::Polynomial { m })?,
    )
}

/// Growing-degree Filon rule on `[λ_r, 1]`.
pub fn oscillatory_part_e(problem: &NormalizedProblem, n: usize) -> Result<QuadratureOutcome> {
    run_lambda(
        problem,
        &build_lambda_mesh(problem, n, LambdaVariant::Exponential)?,
    )
}

/// Algebraically graded Gauss rule (`s`, `m_tilde`) on `[0, λ_r]` plus the
/// fixed-degree Filon rule (`n`, `m`) on `[λ_r, 1]`.
pub fn cmfp_full(
    problem: &NormalizedProblem,
    n: usize,
    m: usize,
    s: usize,
    m_tilde: usize,
) -> Result<QuadratureOutcome> {
    let singular = singular_quad_algebraic(problem, s, m_tilde)?;
    let oscillatory = oscillatory_part_p(problem, n, m)?;
    let mut out = QuadratureOutcome::combine(singular, oscillatory);
    out.warnings.extend(problem.warnings().iter().cloned());
    Ok(out)
}

/// Geometrically graded Gauss rule on `[0, λ_r]` plus the growing-degree
/// Filon rule on `[λ_r, 1]`, with `ε = 1`.
pub fn cmfe_full(
    problem: &NormalizedProblem,
    n: usize,
    s: usize,
    gamma: f64,
) -> Result<QuadratureOutcome> {
    cmfe_full_with_epsilon(problem, n, s, gamma, 1.0)
}

/// [`cmfe_full`] where panel `j` of the singular part uses `⌈jε⌉` points.
pub fn cmfe_full_with_epsilon(
    problem: &NormalizedProblem,
    n: usize,
    s: usize,
    gamma: f64,
    epsilon: f64,
) -> Result<QuadratureOutcome> {
    let singular = singular_quad_geometric(problem, s, gamma, epsilon)?;
    let oscillatory = oscillatory_part_e(problem, n)?;
    let mut out = QuadratureOutcome::combine(singular, oscillatory);
    out.warnings.extend(problem.warnings().iter().cloned());
    if n >= 2 && !check_condition_5c(problem, n) {
        out.warnings.push(Warning::StationaryScheduleTooShort { n });
    }
    Ok(out)
}

/// `τ_n ≤ (n - 1)/e`. Advisory only.
pub fn check_condition_5c(problem: &NormalizedProblem, n: usize) -> bool {
    condition_5c(problem.kappa_sigma(), n)
}

pub fn condition_5c(kappa_sigma: f64, n: usize) -> bool {
    let root = kappa_sigma.powf(1.0 / n as f64);
    root * (root - 1.0) <= (n as f64 - 1.0) / std::f64::consts::E
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{normalize_problem, IntegrandSpec, OscillatorSpec};

    fn problem(f: IntegrandSpec, g: OscillatorSpec, kappa: f64) -> NormalizedProblem {
        normalize_problem(&f, &g, kappa).unwrap()
    }

    fn one() -> IntegrandSpec {
        IntegrandSpec::smooth_real(|_| 1.0).unwrap()
    }

    fn invsqrt() -> IntegrandSpec {
        IntegrandSpec::singular_real(|x| x.powf(-0.5), -0.5).unwrap()
    }

    fn linear() -> OscillatorSpec {
        OscillatorSpec::new(|x| x, |_| 1.0, 0)
    }

    fn square() -> OscillatorSpec {
        OscillatorSpec::new(|x| x * x, |x| 2.0 * x, 1).with_top_derivative(|_| 2.0)
    }

    fn cube() -> OscillatorSpec {
        OscillatorSpec::new(|x| x * x * x, |x| 3.0 * x * x, 2).with_top_derivative(|_| 6.0)
    }

    #[test]
    fn linear_phase_gives_unit_refinements() {
        let p = problem(one(), linear(), 1e3);
        let mesh = build_lambda_mesh(&p, 6, LambdaVariant::Polynomial { m: 4 }).unwrap();
        assert!(mesh.q.iter().all(|&q| (q - 1.0).abs() < 1e-12));
        assert!(mesh.refinements.iter().all(|&n| n == 1));
        assert_eq!(mesh.nodes[0], 1e-3);
        assert_eq!(mesh.nodes[6], 1.0);
    }

    #[test]
    fn cube_mesh_nodes() {
        let p = problem(one(), cube(), 1e3);
        let mesh = build_lambda_mesh(&p, 3, LambdaVariant::Exponential).unwrap();
        let expect = [0.1, 10f64.powf(-2.0 / 3.0), 10f64.powf(-1.0 / 3.0), 1.0];
        for (a, b) in mesh.nodes.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        // q_j = 3 (x_j/x_{j-1})^2 for g = x^3.
        let q = 3.0 * 1e3f64.powf(2.0 / 9.0);
        assert!(mesh.q.iter().all(|&v| (v - q).abs() < 1e-12));
    }

    #[test]
    fn exponential_schedule_for_inverse_sqrt_on_square() {
        let p = problem(invsqrt(), square(), 1e4);
        assert_eq!(p.alpha(), -0.75);
        let mesh = build_lambda_mesh(&p, 3, LambdaVariant::Exponential).unwrap();
        assert_eq!(mesh.degrees, vec![9, 7, 5]);
        // q_j = 2 κ^{1/6} ≈ 9.28
        assert_eq!(mesh.refinements, vec![10, 10, 10]);
    }

    #[test]
    fn q_bound_holds() {
        for kappa in [1e2, 1e4, 1e7] {
            for g in [square(), cube()] {
                let p = problem(one(), g, kappa);
                let r = p.r() as f64;
                for n in 2..=10 {
                    let mesh = build_lambda_mesh(&p, n, LambdaVariant::Exponential).unwrap();
                    let bound =
                        (r + 1.0) * p.kappa_sigma().powf(r / (n as f64 * (r + 1.0))) * p.sigma_r()
                            / p.delta_r();
                    assert!(mesh.q.iter().all(|&q| q <= bound * (1.0 + 1e-12)));
                }
            }
        }
    }

    #[test]
    fn polynomial_variant_needs_m_two_with_stationary_point() {
        let p = problem(one(), square(), 1e3);
        assert!(build_lambda_mesh(&p, 4, LambdaVariant::Polynomial { m: 1 }).is_err());
        let p = problem(one(), linear(), 1e3);
        assert!(build_lambda_mesh(&p, 4, LambdaVariant::Polynomial { m: 1 }).is_ok());
    }

    #[test]
    fn counts_add_across_the_split() {
        let sqrt = IntegrandSpec::singular_real(f64::sqrt, 0.5).unwrap();
        let p = problem(sqrt, linear(), 1e3);
        assert_eq!(cmfp_full(&p, 10, 4, 10, 4).unwrap().n_evals, 77);
        assert_eq!(cmfp_full(&p, 5, 4, 5, 4).unwrap().n_evals, 37);
    }

    #[test]
    fn constant_amplitude_linear_phase_is_exact() {
        let kappa = 50.0;
        let p = problem(one(), linear(), kappa);
        let exact = (Complex64::cis(kappa) - 1.0) / Complex64::new(0.0, kappa);
        // Both singular meshes make the dropped piece [0, λ x_1] negligible.
        let v = cmfp_full(&p, 5, 4, 30, 4).unwrap().value;
        assert!((v - exact).norm() < 1e-10 * exact.norm());
        let v = cmfe_full(&p, 2, 12, 0.02).unwrap().value;
        assert!((v - exact).norm() < 1e-10 * exact.norm());
    }

    #[test]
    fn condition_examples() {
        assert!(condition_5c(1e3, 10));
        assert!(!condition_5c(1e3, 2));
        assert!(condition_5c(1.0 + 1e-9, 3));
    }

    #[test]
    fn diagnostics() {
        let p = problem(one(), linear(), 1e4);
        let mesh = build_lambda_mesh(&p, 4, LambdaVariant::Exponential).unwrap();
        assert!((mesh.beta - 9.0).abs() < 1e-12);
        assert!((mesh.tau - 90.0).abs() < 1e-10);
        assert!((mesh.rho - 0.9).abs() < 1e-12);
    }
}
