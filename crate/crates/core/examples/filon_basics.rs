//! Single-panel and composite Filon rules on `∫_0^1 e^x e^{iκx} dx`.
//!
//! The error of a fixed rule falls as κ grows, and splitting the interval
//! into `N` panels trades evaluations for accuracy.

use num_complex::Complex64;
use oscquad::{filon_basic, filon_composite, normalize_problem, IntegrandSpec, OscillatorSpec};

fn exact(kappa: f64) -> Complex64 {
    let z = Complex64::new(1.0, kappa);
    (z.exp() - 1.0) / z
}

fn main() -> oscquad::Result<()> {
    let f = IntegrandSpec::smooth_real(f64::exp)?;
    let g = OscillatorSpec::new(|x| x, |_| 1.0, 0);

    println!("single panel, degree 4");
    println!("{:>10} {:>12} {:>4}", "kappa", "rel_err", "N");
    for kappa in [1e1, 1e2, 1e3, 1e4, 1e5] {
        let problem = normalize_problem(&f, &g, kappa)?;
        let out = filon_basic(&problem, 0.0, 1.0, 4)?;
        let err = (out.value - exact(kappa)).norm() / exact(kappa).norm();
        println!("{kappa:>10.0e} {err:>12.3e} {:>4}", out.n_evals);
    }

    // The error stalls while each panel still spans several wavelengths and
    // falls like a power of 1/N once κ/N drops below one.
    println!("\ncomposite, kappa = 100");
    let problem = normalize_problem(&f, &g, 100.0)?;
    for m in [2, 4] {
        for panels in [1, 4, 16, 64, 256] {
            let out = filon_composite(&problem, 0.0, 1.0, m, panels)?;
            let err = (out.value - exact(100.0)).norm() / exact(100.0).norm();
            println!(
                "m={m} N={panels:<4} evals={:<5} rel_err={err:.3e}",
                out.n_evals
            );
        }
    }
    Ok(())
}
