//! Moment-free composite Filon quadrature for
//! `I = ∫_0^1 f(x) e^{iκ g(x)} dx` with large `κ`.
//!
//! `f` may carry an algebraic singularity `x^μ` at the origin and `g` may
//! have a stationary point of order `r` there. A problem is first reduced to
//! canonical form with [`normalize_problem`]; then one of the rules applies:
//!
//! * [`filon_basic`], [`filon_composite`]: single panel and equal-width
//!   composite rule.
//! * [`cmfp_smooth`], [`cmfe_smooth`]: κ-graded mesh, smooth `f` and
//!   `g' != 0`, with fixed or growing degree.
//! * [`cmfp_full`], [`cmfe_full`]: split at `λ_r`, a graded Gauss rule on
//!   the non-oscillatory left piece and a Filon rule on the rest.
//!
//! ```
//! use oscquad::{cmfe_smooth, normalize_problem, IntegrandSpec, OscillatorSpec};
//!
//! let f = IntegrandSpec::smooth_real(f64::exp).unwrap();
//! let g = OscillatorSpec::new(|x| x, |_| 1.0, 0);
//! let problem = normalize_problem(&f, &g, 1e3).unwrap();
//! let out = cmfe_smooth(&problem, 4).unwrap();
//! assert_eq!(out.n_evals, 26);
//! ```

pub mod bench;
pub mod error;
pub mod filon;
pub mod gauss;
pub mod moments;
pub mod outcome;
pub mod problem;
pub mod reference;
pub mod registry;
pub mod singular;
pub mod smooth;
pub mod stationary;

pub use error::{QuadError, Result};
pub use filon::{filon_basic, filon_composite, filon_composite_with, FilonPanel, NodePlacement};
pub use gauss::{gauss_legendre, GaussRule};
pub use moments::{
    monomial_moments, newton_osc_integral, MomentBranch, MomentTable, NewtonPoly, MAX_DEGREE,
};
pub use outcome::{MeshSchedule, PanelSchedule, QuadratureOutcome, Warning};
pub use problem::{
    derive_sigma_delta, normalize_problem, normalize_problem_any_kappa, IntegrandSpec,
    NormalizedProblem, OscillatorSpec, SingularSet, Smoothness,
};
pub use reference::{
    asymptotic_log_ref, asymptotic_power_ref, brute_force, ReferenceKind, ReferenceValue,
};
pub use singular::{singular_quad_algebraic, singular_quad_geometric, SingularMesh};
pub use smooth::{build_kappa_mesh, cmfe_smooth, cmfp_smooth, min_n_condition_3c, KappaMesh};
pub use stationary::{
    build_lambda_mesh, check_condition_5c, cmfe_full, cmfe_full_with_epsilon, cmfp_full,
    oscillatory_part_e, oscillatory_part_p, LambdaMesh, LambdaVariant,
};

/// `⌈x⌉`, but values within a relative `1e-10` above an integer round down
/// to it, and the result is at least 1. Mesh schedules are products of
/// powers that should land on integers; plain `ceil` would add a panel or a
/// degree whenever rounding nudges them upward.
pub(crate) fn ceil_tol(x: f64) -> usize {
    ((x - 1e-10 * x.abs()).ceil().max(1.0)) as usize
}

#[cfg(test)]
mod tests {
    use super::ceil_tol;

    #[test]
    fn tolerant_ceiling() {
        assert_eq!(ceil_tol(3.0 * (1.0 + 2.0 / 3.0)), 5);
        assert_eq!(ceil_tol(5.000001), 6);
        assert_eq!(ceil_tol(0.2), 1);
        assert_eq!(ceil_tol(0.0), 1);
    }
}
