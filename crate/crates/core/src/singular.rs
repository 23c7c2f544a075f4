//! Graded Gauss–Legendre rules for the non-oscillatory piece `[0, λ_r]`.
//!
//! After the substitution `x = λ_r t` the integrand is
//! `φ_κ(t) = f(λ_r t) e^{iκ g(λ_r t)}` on `[0, 1]`, which completes at most
//! about one oscillation. Breakpoints cluster at the origin either
//! algebraically, `x_j = (j/s)^p`, or geometrically, `x_j = γ^{s-j}`. The
//! first panel `[0, x_1]` is replaced by zero, so `f` is never sampled there.

use num_complex::Complex64;

use crate::ceil_tol;
use crate::error::{invalid, Result};
use crate::gauss::gauss_legendre;
use crate::outcome::{MeshSchedule, PanelSchedule, QuadratureOutcome};
use crate::problem::NormalizedProblem;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SingularVariant {
    /// `x_j = (j/s)^p` with `p = (2m + 1)/(1 + μ)`.
    Algebraic { m: usize },
    /// `x_j = γ^{s-j}`, panel `j` with `⌈jε⌉` points.
    Geometric { gamma: f64, epsilon: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularMesh {
    pub variant: SingularVariant,
    pub s: usize,
    /// `x_0 = 0 < x_1 < ... < x_s = 1`.
    pub breakpoints: Vec<f64>,
    /// Gauss points on panel `[x_j, x_{j+1}]` for `j = 1..s`; the dropped
    /// first panel has no entry.
    pub degrees: Vec<usize>,
}

impl SingularMesh {
    pub fn algebraic(s: usize, m: usize, mu: f64) -> Result<Self> {
        if s < 2 {
            return Err(invalid("s", format!("need s >= 2, got {s}")));
        }
        if m == 0 {
            return Err(invalid("m_tilde", "need at least one Gauss point"));
        }
        let p = algebraic_exponent(m, mu);
        let breakpoints = (0..=s)
            .map(|j| {
                if j == s {
                    1.0
                } else {
                    (j as f64 / s as f64).powf(p)
                }
            })
            .collect();
        Ok(Self {
            variant: SingularVariant::Algebraic { m },
            s,
            breakpoints,
            degrees: vec![m; s - 1],
        })
    }

    pub fn geometric(s: usize, gamma: f64, epsilon: f64) -> Result<Self> {
        if s < 2 {
            return Err(invalid("s", format!("need s >= 2, got {s}")));
        }
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(invalid("gamma", format!("need 0 < gamma < 1, got {gamma}")));
        }
        if !(epsilon >= 1.0 && epsilon.is_finite()) {
            return Err(invalid(
                "epsilon",
                format!("need epsilon >= 1, got {epsilon}"),
            ));
        }
        let mut breakpoints = vec![0.0];
        breakpoints.extend((1..=s).map(|j| gamma.powi((s - j) as i32)));
        let degrees = (1..s).map(|j| ceil_tol(j as f64 * epsilon)).collect();
        Ok(Self {
            variant: SingularVariant::Geometric { gamma, epsilon },
            s,
            breakpoints,
            degrees,
        })
    }

    /// Number of integrand samples the rule takes.
    pub fn evaluations(&self) -> usize {
        self.degrees.iter().sum()
    }
}

/// `p = (2m + 1)/(1 + μ)`.
pub fn algebraic_exponent(m: usize, mu: f64) -> f64 {
    (2 * m + 1) as f64 / (1.0 + mu)
}

/// `λ_r Σ_{j≥1} Q_{m_j}[φ_κ]` over the mesh panels after the first.
pub fn singular_quad(
    problem: &NormalizedProblem,
    mesh: &SingularMesh,
) -> Result<QuadratureOutcome> {
    let lambda = problem.lambda_r();
    let kappa = problem.kappa();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut evals = 0;
    let mut schedule = MeshSchedule::default();
    let mut rule = gauss_legendre(mesh.degrees[0])?;
    for (j, &m) in mesh.degrees.iter().enumerate() {
        if rule.len() != m {
            rule = gauss_legendre(m)?;
        }
        let (a, b) = (mesh.breakpoints[j + 1], mesh.breakpoints[j + 2]);
        acc += rule.integrate(a, b, |t| {
            let x = lambda * t;
            problem.f(x) * Complex64::cis(kappa * problem.g(x))
        });
        evals += m;
        schedule.panels.push(PanelSchedule {
            a: lambda * a,
            b: lambda * b,
            degree: m,
            refinements: 1,
        });
    }
    Ok(QuadratureOutcome {
        value: problem.restore(acc * lambda),
        n_evals: evals,
        mesh: Some(schedule),
        warnings: Vec::new(),
    })
}

pub fn singular_quad_algebraic(
    problem: &NormalizedProblem,
    s: usize,
    m: usize,
) -> Result<QuadratureOutcome> {
    singular_quad(problem, &SingularMesh::algebraic(s, m, problem.mu())?)
}

pub fn singular_quad_geometric(
    problem: &NormalizedProblem,
    s: usize,
    gamma: f64,
    epsilon: f64,
) -> Result<QuadratureOutcome> {
    singular_quad(problem, &SingularMesh::geometric(s, gamma, epsilon)?)
}
