//! Parallel κ sweep through the benchmark driver, reporting the error
//! scaled by `κ^{n+1}` so that a flat column shows the predicted rate.
//!
//! Set `OSC_THREADS` to cap the worker pool.

use oscquad::bench::{log_space, sweep, Rule, RuleParams, RunConfig};
use oscquad::registry::{Amplitude, Phase};

fn main() -> oscquad::Result<()> {
    let n = 3;
    let params = RuleParams {
        n: Some(n),
        ..RuleParams::default()
    };
    let config = RunConfig::new(Rule::CmfeSmooth, Amplitude::Exp, Phase::Linear, 1e2, params);
    let records = sweep(&config, &log_space(1e2, 1e5, 7))?;
    println!(
        "{:>10} {:>12} {:>12} {:>4}",
        "kappa", "abs_err", "scaled", "N"
    );
    for r in &records {
        let scaled = r.kappa.powi(n as i32 + 1) * r.abs_err();
        println!(
            "{:>10.3e} {:>12.3e} {:>12.3e} {:>4}",
            r.kappa,
            r.abs_err(),
            scaled,
            r.n_evals
        );
    }
    Ok(())
}
