//! A user-defined problem: complex amplitude, decreasing oscillator with a
//! nonzero offset, checked against the brute-force oracle.

use num_complex::Complex64;
use oscquad::problem::SingularSet;
use oscquad::{brute_force, cmfe_smooth, normalize_problem, IntegrandSpec, OscillatorSpec};

fn main() -> oscquad::Result<()> {
    let f = IntegrandSpec::new(
        |x: f64| Complex64::new(x.cos(), 0.5 * x) / (1.0 + x * x),
        0.0,
        SingularSet::Empty,
    )?;
    // g(x) = 2 - x - x^2/4 decreases from 2 to 0.75.
    let g = OscillatorSpec::new(|x| 2.0 - x - 0.25 * x * x, |x| -1.0 - 0.5 * x, 0);
    g.validate()?;

    for kappa in [50.0, 500.0, 5000.0] {
        let problem = normalize_problem(&f, &g, kappa)?;
        let out = cmfe_smooth(&problem, 6)?;
        let oracle = brute_force(&problem, 1e-12)?;
        println!(
            "kappa={kappa:<6} value={:.12e}{:+.12e}i  rel_err={:.2e}  evals={}",
            out.value.re,
            out.value.im,
            (out.value - oracle.value).norm() / oracle.value.norm(),
            out.n_evals
        );
    }
    Ok(())
}
