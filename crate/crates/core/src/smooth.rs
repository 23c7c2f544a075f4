//! Composite Filon rules on the κ-graded mesh of `[0, 1]` for a smooth
//! amplitude and an oscillator without stationary points.
//!
//! The mesh is `x_0 = 0`, `x_j = κ^{(j-1)/(n-1) - 1}`, so the first panel
//! is `[0, 1/κ]` and the rest grow geometrically up to 1. Panel `j` is split
//! into `N_j = ⌈M_j⌉` equal pieces, `M_j` being the larger of `|g'|` at its
//! ends.

use crate::ceil_tol;
use crate::error::{invalid, QuadError, Result};
use crate::filon::{NodePlacement, PanelSampler};
use crate::outcome::{QuadratureOutcome, Warning};
use crate::problem::NormalizedProblem;

const INTERIOR_SAMPLES: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct KappaMesh {
    pub kappa: f64,
    pub n: usize,
    pub nodes: Vec<f64>,
    pub max_derivative: Vec<f64>,
    pub refinements: Vec<usize>,
    pub warnings: Vec<Warning>,
}

impl KappaMesh {
    /// `η = max{1/κ, 1 - κ^{-1/(n-1)}}`, the largest relative panel width.
    pub fn eta(&self) -> f64 {
        (1.0 / self.kappa).max(1.0 - self.kappa.powf(-1.0 / (self.n as f64 - 1.0)))
    }
}

/// κ-graded nodes on `[0, 1]`; `nodes[n]` is exactly 1.
pub fn kappa_nodes(kappa: f64, n: usize) -> Vec<f64> {
    let mut nodes = Vec::with_capacity(n + 1);
    nodes.push(0.0);
    for j in 1..n {
        let e = (j as f64 - 1.0) / (n as f64 - 1.0) - 1.0;
        nodes.push(kappa.powf(e));
    }
    nodes.push(1.0);
    nodes
}

pub fn build_kappa_mesh(problem: &NormalizedProblem, n: usize) -> Result<KappaMesh> {
    if n < 2 {
        return Err(invalid("n", format!("need at least 2 panels, got {n}")));
    }
    let kappa = problem.kappa();
    if kappa <= 1.0 {
        return Err(QuadError::WaveNumberTooSmall(kappa));
    }
    let nodes = kappa_nodes(kappa, n);
    let mut max_derivative = Vec::with_capacity(n);
    let mut refinements = Vec::with_capacity(n);
    let mut warnings = Vec::new();
    for j in 1..=n {
        let (a, b) = (nodes[j - 1], nodes[j]);
        let m = problem.g_prime(a).abs().max(problem.g_prime(b).abs());
        let interior = (1..INTERIOR_SAMPLES)
            .map(|i| {
                problem
                    .g_prime(a + (b - a) * i as f64 / INTERIOR_SAMPLES as f64)
                    .abs()
            })
            .fold(0.0_f64, f64::max);
        if interior > 1.01 * m {
            warnings.push(Warning::DerivativeExceedsPanelBound {
                panel: j,
                ratio: interior / m,
            });
        }
        max_derivative.push(m);
        refinements.push(ceil_tol(m));
    }
    Ok(KappaMesh {
        kappa,
        n,
        nodes,
        max_derivative,
        refinements,
        warnings,
    })
}

fn check_smooth(problem: &NormalizedProblem) -> Result<()> {
    if problem.integrand().is_singular() {
        return Err(QuadError::SingularAmplitude);
    }
    if problem.r() != 0 {
        return Err(QuadError::StationaryOscillator(problem.r()));
    }
    Ok(())
}

fn run_on_mesh(
    problem: &NormalizedProblem,
    mesh: KappaMesh,
    degrees: &[usize],
    mut warnings: Vec<Warning>,
) -> Result<QuadratureOutcome> {
    let mut sampler = PanelSampler::new(problem, NodePlacement::Uniform);
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    for j in 0..mesh.n {
        acc += sampler.composite(
            mesh.nodes[j],
            mesh.nodes[j + 1],
            degrees[j],
            mesh.refinements[j],
        )?;
    }
    let mut out = sampler.finish(acc);
    warnings.extend(problem.warnings().iter().cloned());
    warnings.extend(mesh.warnings);
    out.warnings = warnings;
    Ok(out)
}

/// Fixed degree `m` on every panel of the κ-graded mesh.
pub fn cmfp_smooth(problem: &NormalizedProblem, n: usize, m: usize) -> Result<QuadratureOutcome> {
    check_smooth(problem)?;
    let mesh = build_kappa_mesh(problem, n)?;
    let degrees = vec![m; n];
    run_on_mesh(problem, mesh, &degrees, Vec::new())
}

/// `m_j = ⌈n(n-1)/(n+1-j)⌉` for `j = 1..=n`.
pub fn cmfe_degrees(n: usize) -> Vec<usize> {
    (1..=n)
        .map(|j| ceil_tol((n * (n - 1)) as f64 / (n + 1 - j) as f64))
        .collect()
}

/// Degrees growing towards `x = 1`; error `O(κ^{-n-1})` once `n` meets
/// [`min_n_condition_3c`].
pub fn cmfe_smooth(problem: &NormalizedProblem, n: usize) -> Result<QuadratureOutcome> {
    check_smooth(problem)?;
    let mesh = build_kappa_mesh(problem, n)?;
    let mut warnings = Vec::new();
    if n < 3 {
        warnings.push(Warning::FewPanels { n });
    }
    if n < min_n_condition_3c(problem.kappa()) {
        warnings.push(Warning::DegreeScheduleTooShort {
            n,
            kappa: problem.kappa(),
        });
    }
    run_on_mesh(problem, mesh, &cmfe_degrees(n), warnings)
}

/// Smallest `n` with `(n-1)(ln(n-2+e) - 1) >= ln κ`.
pub fn min_n_condition_3c(kappa: f64) -> usize {
    let target = kappa.ln();
    (2usize..)
        .find(|&n| {
            let nf = n as f64;
            (nf - 1.0) * ((nf - 2.0 + std::f64::consts::E).ln() - 1.0) >= target
        })
        .expect("left-hand side grows without bound")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{normalize_problem, IntegrandSpec, OscillatorSpec};
    use num_complex::Complex64;

    fn exp_linear(kappa: f64) -> NormalizedProblem {
        let f = IntegrandSpec::smooth_real(f64::exp).unwrap();
        let g = OscillatorSpec::new(|x| x, |_| 1.0, 0);
        normalize_problem(&f, &g, kappa).unwrap()
    }

    fn exact(kappa: f64) -> Complex64 {
        let z = Complex64::new(1.0, kappa);
        (z.exp() - 1.0) / z
    }

    #[test]
    fn mesh_nodes() {
        assert_eq!(kappa_nodes(100.0, 3), vec![0.0, 0.01, 0.1, 1.0]);
        assert_eq!(kappa_nodes(1e6, 2), vec![0.0, 1e-6, 1.0]);
        let mesh = build_kappa_mesh(&exp_linear(1e3), 6).unwrap();
        assert!(mesh.refinements.iter().all(|&n| n == 1));
        assert!(mesh.nodes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn cmfe_schedules() {
        assert_eq!(cmfe_degrees(4), vec![3, 4, 6, 12]);
        assert_eq!(cmfe_degrees(5), vec![4, 5, 7, 10, 20]);
        assert_eq!(cmfe_smooth(&exp_linear(1e3), 4).unwrap().n_evals, 26);
        assert_eq!(cmfe_smooth(&exp_linear(1e3), 5).unwrap().n_evals, 47);
    }

    #[test]
    fn cmfp_first_table_row() {
        let out = cmfp_smooth(&exp_linear(100.0), 5, 4).unwrap();
        assert_eq!(out.n_evals, 21);
        let re = (out.value - exact(100.0)).norm() / exact(100.0).norm();
        assert!(re < 5e-6, "{re}");
    }

    #[test]
    fn cmfe_is_very_accurate() {
        let out = cmfe_smooth(&exp_linear(1e3), 4).unwrap();
        let re = (out.value - exact(1e3)).norm() / exact(1e3).norm();
        assert!(re < 1e-10, "{re}");
    }

    #[test]
    fn condition_scan() {
        assert_eq!(min_n_condition_3c(0.9f64.exp()), 4);
        assert_eq!(min_n_condition_3c(1.0 + 1e-12), 3);
        let n = min_n_condition_3c(1e7);
        let lhs = |n: usize| (n as f64 - 1.0) * ((n as f64 - 2.0 + std::f64::consts::E).ln() - 1.0);
        assert!(lhs(n) >= 1e7f64.ln() && lhs(n - 1) < 1e7f64.ln());
    }

    #[test]
    fn short_schedule_is_flagged() {
        let out = cmfe_smooth(&exp_linear(1e6), 3).unwrap();
        assert!(out
            .warnings
            .iter()
            .any(|w| matches!(w, Warning::DegreeScheduleTooShort { .. })));
    }

    #[test]
    fn rejects_singular_or_stationary_problems() {
        let f = IntegrandSpec::singular_real(f64::sqrt, 0.5).unwrap();
        let g = OscillatorSpec::new(|x| x, |_| 1.0, 0);
        let p = normalize_problem(&f, &g, 100.0).unwrap();
        assert!(matches!(
            cmfp_smooth(&p, 5, 4),
            Err(QuadError::SingularAmplitude)
        ));
        let f = IntegrandSpec::smooth_real(|_| 1.0).unwrap();
        let g = OscillatorSpec::new(|x| x * x, |x| 2.0 * x, 1);
        let p = normalize_problem(&f, &g, 100.0).unwrap();
        assert!(matches!(
            cmfe_smooth(&p, 4),
            Err(QuadError::StationaryOscillator(1))
        ));
    }
}
