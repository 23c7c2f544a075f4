//! Graded meshes for a smooth amplitude: fixed degree versus degrees that
//! grow towards `x = 1`, on an oscillator with varying slope.

use oscquad::registry::{Amplitude, Phase};
use oscquad::{build_kappa_mesh, cmfe_smooth, cmfp_smooth, normalize_problem};

fn main() -> oscquad::Result<()> {
    let f = Amplitude::Exp.spec();
    let g = Phase::SinMix.spec();

    let problem = normalize_problem(&f, &g, 1e3)?;
    let mesh = build_kappa_mesh(&problem, 5)?;
    println!("kappa = 1e3, n = 5");
    println!("breakpoints  {:?}", mesh.nodes);
    println!("refinements  {:?}", mesh.refinements);
    println!("eta          {:.4}", mesh.eta());

    println!(
        "\n{:>8} {:>26} {:>26} {:>6} {:>6}",
        "kappa", "cmfp n=20 m=4", "cmfe n=5", "N_p", "N_e"
    );
    for kappa in [1e2, 1e3, 1e4, 1e5, 1e6] {
        let problem = normalize_problem(&f, &g, kappa)?;
        let p = cmfp_smooth(&problem, 20, 4)?;
        let e = cmfe_smooth(&problem, 5)?;
        println!(
            "{kappa:>8.0e} {:>12.9} {:>+13.9}i {:>12.9} {:>+13.9}i {:>6} {:>6}",
            p.value.re, p.value.im, e.value.re, e.value.im, p.n_evals, e.n_evals
        );
        for w in &e.warnings {
            println!("         warning: {w:?}");
        }
    }
    Ok(())
}
