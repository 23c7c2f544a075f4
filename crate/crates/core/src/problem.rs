//! Integrand and oscillator descriptions, and their reduction to the
//! canonical form every rule in this crate works with: `g` increasing on
//! `[0, 1]` with `g(0) = 0`.
//!
//! User callables must be pure and reentrant. All types here are immutable
//! once built and can be shared across threads.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{QuadError, Result};
use crate::outcome::Warning;

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type ComplexFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

const MONOTONE_GRID: usize = 256;
const DERIVATIVE_GRID: usize = 64;
const SIGMA_DELTA_GRID: usize = 1024;

/// Points where the amplitude may be singular. Only the origin is supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularSet {
    Empty,
    Origin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    Order(u32),
    Infinite,
}

/// The amplitude `f` together with its singularity metadata.
#[derive(Clone)]
pub struct IntegrandSpec {
    f: ComplexFn,
    mu: f64,
    singular_set: SingularSet,
    smoothness: Smoothness,
}

impl IntegrandSpec {
    /// `mu` is the singularity index; it must lie in `(-1, 1)`. With an
    /// empty singular set `f(0)` has to be finite.
    pub fn new<F>(f: F, mu: f64, singular_set: SingularSet) -> Result<Self>
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Self::from_arc(Arc::new(f), mu, singular_set, Smoothness::Infinite)
    }

    pub fn from_arc(
        f: ComplexFn,
        mu: f64,
        singular_set: SingularSet,
        smoothness: Smoothness,
    ) -> Result<Self> {
        if !(mu > -1.0 && mu < 1.0) {
            return Err(QuadError::SingularityIndexOutOfRange(mu));
        }
        if singular_set == SingularSet::Empty {
            let f0 = f(0.0);
            if !(f0.re.is_finite() && f0.im.is_finite()) {
                return Err(QuadError::AmplitudeNotFiniteAtZero);
            }
        }
        Ok(Self {
            f,
            mu,
            singular_set,
            smoothness,
        })
    }

    /// A real amplitude that is smooth on all of `[0, 1]`.
    pub fn smooth_real<F>(f: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(move |x| Complex64::new(f(x), 0.0), 0.0, SingularSet::Empty)
    }

    /// A real amplitude with an algebraic singularity of index `mu` at 0.
    pub fn singular_real<F>(f: F, mu: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(move |x| Complex64::new(f(x), 0.0), mu, SingularSet::Origin)
    }

    pub fn with_smoothness(mut self, smoothness: Smoothness) -> Self {
        self.smoothness = smoothness;
        self
    }

    #[inline]
    pub fn eval(&self, x: f64) -> Complex64 {
        (self.f)(x)
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn singular_set(&self) -> SingularSet {
        self.singular_set
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn is_singular(&self) -> bool {
        self.singular_set == SingularSet::Origin
    }

    fn conjugated(&self) -> Self {
        let f = Arc::clone(&self.f);
        Self {
            f: Arc::new(move |x| f(x).conj()),
            ..self.clone()
        }
    }
}

impl fmt::Debug for IntegrandSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntegrandSpec")
            .field("mu", &self.mu)
            .field("singular_set", &self.singular_set)
            .field("smoothness", &self.smoothness)
            .finish_non_exhaustive()
    }
}

/// The oscillator `g`, its derivative and the order `r` of its (only)
/// stationary point, which sits at the origin when `r > 0`.
#[derive(Clone)]
pub struct OscillatorSpec {
    g: RealFn,
    g_prime: RealFn,
    top_derivative: Option<RealFn>,
    r: u32,
    increasing: bool,
    g0: f64,
}

impl OscillatorSpec {
    /// Direction and `g(0)` are read off the callables.
    pub fn new<G, D>(g: G, g_prime: D, r: u32) -> Self
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::from_arcs(Arc::new(g), Arc::new(g_prime), r)
    }

    pub fn from_arcs(g: RealFn, g_prime: RealFn, r: u32) -> Self {
        let g0 = g(0.0);
        let increasing = g_prime(1.0) > 0.0;
        Self {
            g,
            g_prime,
            top_derivative: None,
            r,
            increasing,
            g0,
        }
    }

    /// Supplies `g^(r+1)`. Without it the derivative is estimated by finite
    /// differences of `g'`.
    pub fn with_top_derivative<H>(mut self, h: H) -> Self
    where
        H: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.top_derivative = Some(Arc::new(h));
        self
    }

    #[inline]
    pub fn g(&self, x: f64) -> f64 {
        (self.g)(x)
    }

    #[inline]
    pub fn g_prime(&self, x: f64) -> f64 {
        (self.g_prime)(x)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn increasing(&self) -> bool {
        self.increasing
    }

    pub fn g0(&self) -> f64 {
        self.g0
    }

    /// `g^(r+1)(x)`, from the supplied callable when there is one.
    pub fn top_derivative(&self, x: f64) -> f64 {
        if self.r == 0 {
            return self.g_prime(x);
        }
        match &self.top_derivative {
            Some(h) => h(x),
            None => finite_difference(&*self.g_prime, self.r, x),
        }
    }

    /// Checks the standing assumptions: `g'` consistent with `g`, `g'` of one
    /// sign matching the declared direction, and `|g'(x)|/x^r` neither
    /// vanishing nor blowing up towards 0.
    pub fn validate(&self) -> Result<()> {
        for i in 1..DERIVATIVE_GRID {
            let x = i as f64 / DERIVATIVE_GRID as f64;
            let step = 1e-5;
            let fd = (self.g(x + step) - self.g(x - step)) / (2.0 * step);
            let d = self.g_prime(x);
            if !d.is_finite() || (fd - d).abs() > 1e-6 * d.abs().max(1e-3) {
                return Err(QuadError::InconsistentDerivative {
                    at: x,
                    derivative: d,
                    finite_difference: fd,
                });
            }
        }

        let sign = if self.increasing { 1.0 } else { -1.0 };
        let mut seen_positive = false;
        let mut seen_negative = false;
        for i in 0..=MONOTONE_GRID {
            let x = i as f64 / MONOTONE_GRID as f64;
            let d = self.g_prime(x);
            if x == 0.0 && self.r > 0 {
                continue;
            }
            if d > 0.0 {
                seen_positive = true;
            } else if d < 0.0 {
                seen_negative = true;
            } else if self.r == 0 || x > 0.0 {
                return Err(QuadError::StationaryPointInPanel { at: x });
            }
            if seen_positive && seen_negative {
                return Err(QuadError::NonMonotoneOscillator { at: x });
            }
        }
        if (sign > 0.0 && seen_negative) || (sign < 0.0 && seen_positive) {
            return Err(QuadError::DirectionMismatch {
                declared: if self.increasing {
                    "increasing"
                } else {
                    "decreasing"
                },
            });
        }

        // |g'(x)| ~ c x^r near the origin.
        let ratio = |x: f64| self.g_prime(x).abs() / x.powi(self.r as i32);
        let near = ratio(1e-6);
        let far = ratio(0.1);
        let spread = near / far;
        if !(near > 0.0 && far > 0.0 && spread.is_finite() && (1e-2..=1e2).contains(&spread)) {
            return Err(QuadError::StationaryOrderMismatch { declared: self.r });
        }
        Ok(())
    }

    /// Sign changes of `g''` on a grid over `(0, 1)`; first location found.
    fn inflection_point(&self) -> Option<f64> {
        let mut previous: Option<f64> = None;
        let scale = (0..=16)
            .map(|i| self.g_prime(i as f64 / 16.0).abs())
            .fold(0.0_f64, f64::max);
        for i in 1..MONOTONE_GRID {
            let x = i as f64 / MONOTONE_GRID as f64;
            let second = finite_difference(&*self.g_prime, 1, x);
            if second.abs() <= 1e-8 * scale {
                continue;
            }
            if let Some(p) = previous {
                if p * second < 0.0 {
                    return Some(x);
                }
            }
            previous = Some(second);
        }
        None
    }

    fn normalized(&self) -> Self {
        let sign = if self.increasing { 1.0 } else { -1.0 };
        let g0 = self.g0;
        let g = Arc::clone(&self.g);
        let gp = Arc::clone(&self.g_prime);
        let top = self.top_derivative.clone();
        Self {
            g: Arc::new(move |x| sign * (g(x) - g0)),
            g_prime: Arc::new(move |x| sign * gp(x)),
            top_derivative: top.map(|h| Arc::new(move |x: f64| sign * h(x)) as RealFn),
            r: self.r,
            increasing: true,
            g0: 0.0,
        }
    }
}

impl fmt::Debug for OscillatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OscillatorSpec")
            .field("r", &self.r)
            .field("increasing", &self.increasing)
            .field("g0", &self.g0)
            .field("has_top_derivative", &self.top_derivative.is_some())
            .finish_non_exhaustive()
    }
}

/// Order-`order` derivative of `d` at `x` by a central stencil, shifted to
/// stay inside `[0, 1]`.
fn finite_difference(d: &(dyn Fn(f64) -> f64 + Send + Sync), order: u32, x: f64) -> f64 {
    let step = 5e-3;
    let half = order as f64 * step / 2.0;
    let centre = x.clamp(half, 1.0 - half);
    let mut acc = 0.0;
    let mut binom = 1.0;
    for k in 0..=order {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binom * d(centre + half - k as f64 * step);
        binom = binom * (order - k) as f64 / (k + 1) as f64;
    }
    acc / step.powi(order as i32)
}

/// Estimates `sigma(r) = max |g^(r+1)|/(r+1)!` and `delta(r) = min |g^(r+1)|/(r+1)!`
/// over `samples` uniformly spaced points of `[0, 1]`.
pub fn derive_sigma_delta(oscillator: &OscillatorSpec, samples: usize) -> Result<(f64, f64)> {
    if samples < 2 {
        return Err(crate::error::invalid(
            "samples",
            "need at least 2 grid points",
        ));
    }
    let factorial: f64 = (1..=oscillator.r + 1).map(|k| k as f64).product();
    let mut sigma = f64::NEG_INFINITY;
    let mut delta = f64::INFINITY;
    for i in 0..samples {
        let x = i as f64 / (samples - 1) as f64;
        let v = oscillator.top_derivative(x).abs() / factorial;
        if !v.is_finite() {
            return Err(QuadError::NonFinite("g^(r+1)"));
        }
        sigma = sigma.max(v);
        delta = delta.min(v);
    }
    if delta <= 0.0 {
        return Err(QuadError::DegenerateStationaryPoint(delta));
    }
    Ok((sigma, delta))
}

/// A problem in canonical form together with the constants the graded
/// meshes are built from.
#[derive(Debug, Clone)]
pub struct NormalizedProblem {
    integrand: IntegrandSpec,
    oscillator: OscillatorSpec,
    kappa: f64,
    phase_factor: Complex64,
    conjugated: bool,
    sigma_r: f64,
    delta_r: f64,
    kappa_sigma: f64,
    lambda_r: f64,
    alpha: f64,
    warnings: Vec<Warning>,
}

/// Reduces `(f, g)` to canonical form.
///
/// `g(0) != 0` is absorbed into `phase_factor = exp(i kappa g(0))`. A
/// decreasing `g` is replaced by `-g` (and `f` by its conjugate); the stored
/// value then has to be conjugated, which [`NormalizedProblem::restore`] does.
pub fn normalize_problem(
    integrand: &IntegrandSpec,
    oscillator: &OscillatorSpec,
    kappa: f64,
) -> Result<NormalizedProblem> {
    if kappa <= 1.0 {
        return Err(QuadError::WaveNumberTooSmall(kappa));
    }
    normalize_problem_any_kappa(integrand, oscillator, kappa)
}

/// Like [`normalize_problem`] but accepts any finite `kappa > 0`. Only the
/// plain Filon rules make sense below `kappa = 1`; the graded meshes assume
/// `kappa > 1`.
pub fn normalize_problem_any_kappa(
    integrand: &IntegrandSpec,
    oscillator: &OscillatorSpec,
    kappa: f64,
) -> Result<NormalizedProblem> {
    if !kappa.is_finite() {
        return Err(QuadError::NonFinite("kappa"));
    }
    if kappa <= 0.0 {
        return Err(QuadError::WaveNumberTooSmall(kappa));
    }
    if !(integrand.mu > -1.0 && integrand.mu < 1.0) {
        return Err(QuadError::SingularityIndexOutOfRange(integrand.mu));
    }
    oscillator.validate()?;

    let mut warnings = Vec::new();
    if let Some(at) = oscillator.inflection_point() {
        warnings.push(Warning::InflectionPoint { at });
    }

    let conjugated = !oscillator.increasing;
    let phase_factor = if oscillator.g0 == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::cis(kappa * oscillator.g0)
    };
    let integrand = if conjugated {
        integrand.conjugated()
    } else {
        integrand.clone()
    };
    let oscillator = if conjugated || oscillator.g0 != 0.0 {
        oscillator.normalized()
    } else {
        oscillator.clone()
    };

    let (sigma_r, delta_r) = derive_sigma_delta(&oscillator, SIGMA_DELTA_GRID)?;
    let kappa_sigma = if sigma_r <= 1.0 {
        kappa
    } else {
        kappa * sigma_r
    };
    let r = oscillator.r as f64;
    let lambda_r = kappa_sigma.powf(-1.0 / (r + 1.0));
    let alpha = (integrand.mu - r) / (r + 1.0);

    Ok(NormalizedProblem {
        integrand,
        oscillator,
        kappa,
        phase_factor,
        conjugated,
        sigma_r,
        delta_r,
        kappa_sigma,
        lambda_r,
        alpha,
        warnings,
    })
}

impl NormalizedProblem {
    pub fn integrand(&self) -> &IntegrandSpec {
        &self.integrand
    }

    pub fn oscillator(&self) -> &OscillatorSpec {
        &self.oscillator
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn phase_factor(&self) -> Complex64 {
        self.phase_factor
    }

    pub fn conjugated(&self) -> bool {
        self.conjugated
    }

    pub fn sigma_r(&self) -> f64 {
        self.sigma_r
    }

    pub fn delta_r(&self) -> f64 {
        self.delta_r
    }

    pub fn kappa_sigma(&self) -> f64 {
        self.kappa_sigma
    }

    pub fn lambda_r(&self) -> f64 {
        self.lambda_r
    }

    /// Singularity index of the transplanted amplitude near the origin.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn r(&self) -> u32 {
        self.oscillator.r
    }

    pub fn mu(&self) -> f64 {
        self.integrand.mu
    }

    pub fn warnings(&self) -> &[Warning] {
        &self.warnings
    }

    /// Maps a value computed for the canonical problem back to the original
    /// integral.
    pub fn restore(&self, raw: Complex64) -> Complex64 {
        let v = if self.conjugated { raw.conj() } else { raw };
        if self.phase_factor == Complex64::new(1.0, 0.0) {
            v
        } else {
            self.phase_factor * v
        }
    }

    #[inline]
    pub(crate) fn f(&self, x: f64) -> Complex64 {
        self.integrand.eval(x)
    }

    #[inline]
    pub(crate) fn g(&self, x: f64) -> f64 {
        self.oscillator.g(x)
    }

    #[inline]
    pub(crate) fn g_prime(&self, x: f64) -> f64 {
        self.oscillator.g_prime(x)
    }
}
