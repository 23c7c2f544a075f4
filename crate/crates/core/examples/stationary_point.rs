//! Oscillators with a stationary point at the origin, `g(x) = x^3`.
//!
//! Prints the mesh the exponential pipeline builds on `[λ, 1]` and its
//! convergence against the asymptotic reference.

use oscquad::registry::{Amplitude, Phase};
use oscquad::{
    asymptotic_power_ref, build_lambda_mesh, cmfe_full_with_epsilon, normalize_problem,
    LambdaVariant,
};

fn main() -> oscquad::Result<()> {
    let f = Amplitude::One.spec();
    let g = Phase::Cube.spec();

    let problem = normalize_problem(&f, &g, 1e4)?;
    let mesh = build_lambda_mesh(&problem, 3, LambdaVariant::Exponential)?;
    println!(
        "kappa = 1e4, lambda = {:.4e}, alpha = {:.4}",
        problem.lambda_r(),
        problem.alpha()
    );
    println!("nodes        {:?}", mesh.nodes);
    println!("q            {:?}", mesh.q);
    println!("refinements  {:?}", mesh.refinements);
    println!("degrees      {:?}", mesh.degrees);

    // x^3 over [0, 1] is (1/3) of y^{-2/3} e^{iκy} over [0, 1].
    println!("\n{:>8} {:>12} {:>6}", "kappa", "rel_err", "N");
    for kappa in [1e2, 1e3, 1e4, 1e5, 1e6] {
        let problem = normalize_problem(&f, &g, kappa)?;
        let out = cmfe_full_with_epsilon(&problem, 3, 7, 0.02, 6.0)?;
        let reference = asymptotic_power_ref(-2.0 / 3.0, kappa)?.value / 3.0;
        let err = (out.value - reference).norm() / reference.norm();
        println!("{kappa:>8.0e} {err:>12.3e} {:>6}", out.n_evals);
    }
    Ok(())
}
