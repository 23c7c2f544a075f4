//! Amplitudes with an algebraic or logarithmic singularity at the origin.
//!
//! The full pipelines split `[0, 1]` at `λ = κ^{-1}`: graded Gauss points on
//! the left piece, a Filon rule on the right.

use oscquad::registry::{Amplitude, Phase};
use oscquad::{
    asymptotic_log_ref, asymptotic_power_ref, check_condition_5c, cmfe_full_with_epsilon,
    cmfp_full, normalize_problem,
};

fn main() -> oscquad::Result<()> {
    let g = Phase::Linear.spec();
    for amplitude in [Amplitude::InvSqrt, Amplitude::Sqrt, Amplitude::Log] {
        println!("f = {amplitude}");
        for kappa in [1e2, 1e4, 1e6] {
            let problem = normalize_problem(&amplitude.spec(), &g, kappa)?;
            let reference = match amplitude.power() {
                Some(mu) => asymptotic_power_ref(mu, kappa)?,
                None => asymptotic_log_ref(kappa)?,
            };
            let p = cmfp_full(&problem, 10, 4, 10, 4)?;
            // Shortest Λ-mesh whose degree schedule keeps pace with κ.
            let n = (2..).find(|&n| check_condition_5c(&problem, n)).unwrap();
            let e = cmfe_full_with_epsilon(&problem, n, 12, 0.02, 2.0)?;
            let rel =
                |v: num_complex::Complex64| (v - reference.value).norm() / reference.value.norm();
            println!(
                "  kappa={kappa:<6.0e} lambda={:.1e}  cmfp: {:.2e} ({} evals)  cmfe n={n}: {:.2e} ({} evals)",
                problem.lambda_r(),
                rel(p.value),
                p.n_evals,
                rel(e.value),
                e.n_evals
            );
        }
    }
    Ok(())
}
