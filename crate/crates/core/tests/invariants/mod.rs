//! Invariant checks shared by the property suite and the acceptance harness.
//! Each returns a description of the violation, if any.

#![allow(dead_code)]

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use oscquad::registry::{Amplitude, Phase};
use oscquad::*;

use crate::common::{horner, poly_linear, rel};

pub type Check = std::result::Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: oscquad::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn linear() -> OscillatorSpec {
    OscillatorSpec::new(|x| x, |_| 1.0, 0)
}

/// Smallest `n` with `κ_σ^{r/(n(r+1))} <= 2`.
pub fn n_for_ratio_two(p: &NormalizedProblem) -> usize {
    let r = p.r() as f64;
    ((r * p.kappa_sigma().log2() / (r + 1.0)).ceil() as usize).max(1)
}

/// `filon_basic` with `m` at least the degree integrates a polynomial
/// times `e^{iκx}` exactly. Returns `Ok` for a cancelling polynomial.
pub fn filon_polynomial_exactness(coeffs: &[f64], extra: usize, kappa: f64) -> Check {
    let m = (coeffs.len() - 1 + extra).max(1);
    let exact = poly_linear(coeffs, kappa);
    if exact.norm() <= 1e-3 / kappa {
        return Ok(());
    }
    let c = coeffs.to_vec();
    let f = lib(IntegrandSpec::smooth_real(move |x| horner(&c, x)))?;
    let p = lib(normalize_problem_any_kappa(&f, &linear(), kappa))?;
    let got = lib(filon_basic(&p, 0.0, 1.0, m))?.value;
    let e = rel(got, exact);
    ensure(e <= 1e-12, || format!("m={m} kappa={kappa}: rel {e:.2e}"))
}

pub fn gauss_exactness(m: usize) -> Check {
    let rule = lib(gauss_legendre(m))?;
    for k in 0..2 * m {
        let got: f64 = rule.integrate(-1.0, 1.0, |x| x.powi(k as i32));
        let exact = if k % 2 == 0 {
            2.0 / (k as f64 + 1.0)
        } else {
            0.0
        };
        ensure((got - exact).abs() <= 1e-13, || {
            format!("m={m} degree {k}: {got} vs {exact}")
        })?;
    }
    Ok(())
}

pub fn moment_branch_agreement(t: f64) -> Check {
    let s = moments::scaled_moments(t, MAX_DEGREE, MomentBranch::Series);
    let r = moments::scaled_moments(t, MAX_DEGREE, MomentBranch::Recurrence);
    for (k, (a, b)) in s.iter().zip(&r).enumerate() {
        let e = rel(*b, *a);
        ensure(e <= 1e-11, || format!("t={t} k={k}: rel {e:.2e}"))?;
    }
    Ok(())
}

/// Count bounds of the fixed-degree and growing-degree smooth rules.
pub fn smooth_counts(kappa: f64, n: usize, m: usize, g: Phase) -> Check {
    let p = lib(normalize_problem(&Amplitude::Exp.spec(), &g.spec(), kappa))?;
    let sigma = p.sigma_r().ceil() as usize;
    let fixed = lib(cmfp_smooth(&p, n, m))?.n_evals;
    ensure(fixed <= sigma * n * m + 1, || {
        format!("cmfp_smooth n={n} m={m}: {fixed}")
    })?;
    // n(n-1) is the top degree; 8 keeps it under the cap.
    let n = n.min(8);
    let nf = n as f64;
    let growing = lib(cmfe_smooth(&p, n))?.n_evals as f64;
    let bound = sigma as f64 * (nf * (nf - 1.0) * nf.ln() + nf * nf) + 1.0;
    ensure(growing <= bound, || {
        format!("cmfe_smooth n={n}: {growing} > {bound}")
    })
}

/// Count bounds of the two singular-part meshes.
pub fn singular_counts(f: Amplitude, s: usize, m: usize, gamma: f64, eps: f64) -> Check {
    let p = lib(normalize_problem(&f.spec(), &linear(), 100.0))?;
    let algebraic = lib(singular_quad_algebraic(&p, s, m))?.n_evals;
    ensure(algebraic == (s - 1) * m, || {
        format!("algebraic s={s} m={m}: {algebraic}")
    })?;
    let s = s.min(30);
    let geo = lib(singular_quad_geometric(&p, s, gamma, eps))?.n_evals;
    let bound = eps.ceil() as usize * (s * s - s);
    ensure(geo <= bound, || {
        format!("geometric s={s} eps={eps}: {geo} > {bound}")
    })
}

/// Count bounds of the two oscillatory-part meshes, for `n` at least the
/// smallest value that keeps neighbouring panel ratios at most 2.
pub fn oscillatory_counts(f: Amplitude, g: Phase, kappa: f64, extra: usize, m: usize) -> Check {
    let p = lib(normalize_problem(&f.spec(), &g.spec(), kappa))?;
    let n = n_for_ratio_two(&p) + extra;
    let (sigma, delta) = (p.sigma_r(), p.delta_r());
    let r = p.r() as f64;
    let mf = m as f64;
    let fixed = lib(oscillatory_part_p(&p, n, m))?.n_evals as f64;
    let per_panel = if p.r() == 0 {
        (sigma / delta).ceil()
    } else {
        (2.0 * (r + 1.0) * sigma / delta)
            .powf(mf / (mf - 1.0))
            .ceil()
    };
    let bound = per_panel * (n * m) as f64 + 1.0;
    ensure(fixed <= bound, || {
        format!("P-mesh {f}/{g} n={n} m={m}: {fixed} > {bound}")
    })?;

    let n = n.min(14);
    let nf = n as f64;
    let growing = lib(oscillatory_part_e(&p, n))?.n_evals as f64;
    let per_panel = if p.r() == 0 {
        (sigma / delta).ceil()
    } else {
        ((r + 1.0) * sigma / delta * p.kappa_sigma().powf(r / (nf * (r + 1.0)))).ceil()
    };
    let degrees = 2.0 * nf * nf + (1.0 - p.alpha()).ceil() * (nf * nf + nf);
    let bound = per_panel * degrees / 2.0 + 1.0;
    ensure(growing <= bound, || {
        format!("E-mesh {f}/{g} n={n}: {growing} > {bound}")
    })
}

/// Neither full rule samples a singular amplitude left of the first
/// interior breakpoint of its singular mesh.
pub fn first_panel_skipped(f: Amplitude, g: Phase, kappa: f64, s: usize, gamma: f64) -> Check {
    let smallest = Arc::new(AtomicU64::new(f64::INFINITY.to_bits()));
    let seen = Arc::clone(&smallest);
    let base = f.spec();
    let spy = lib(IntegrandSpec::new(
        move |x: f64| {
            seen.fetch_min(x.to_bits(), Ordering::Relaxed);
            base.eval(x)
        },
        f.mu(),
        SingularSet::Origin,
    ))?;
    let p = lib(normalize_problem(&spy, &g.spec(), kappa))?;
    let lambda = p.lambda_r();
    let lowest = || f64::from_bits(smallest.load(Ordering::Relaxed));

    smallest.store(f64::INFINITY.to_bits(), Ordering::Relaxed);
    lib(cmfe_full(&p, 3, s, gamma))?;
    let x1 = lambda * lib(SingularMesh::geometric(s, gamma, 1.0))?.breakpoints[1];
    ensure(lowest() > x1, || {
        format!("cmfe_full {f}/{g} s={s}: sampled {} <= {x1}", lowest())
    })?;

    smallest.store(f64::INFINITY.to_bits(), Ordering::Relaxed);
    lib(cmfp_full(&p, 3, 3, s, 3))?;
    let x1 = lambda * lib(SingularMesh::algebraic(s, 3, p.mu()))?.breakpoints[1];
    ensure(lowest() > x1, || {
        format!("cmfp_full {f}/{g} s={s}: sampled {} <= {x1}", lowest())
    })
}
