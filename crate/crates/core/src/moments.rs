//! Oscillatory moments `∫_a^b y^n e^{iκy} dy` and exact integration of
//! Newton-form polynomials against `e^{iκy}`.
//!
//! Everything is computed in the normalized variable `y = a + h v` with
//! `v ∈ [0, 1]`, so the quantities actually tabulated are
//! `ν_n(t) = ∫_0^1 v^n e^{itv} dv` with `t = κh`. These stay bounded by
//! `1/(n+1)` and do not underflow for high degree on short intervals.

use num_complex::Complex64;

use crate::error::{invalid, QuadError, Result};

/// Highest polynomial degree the moment tables support.
pub const MAX_DEGREE: usize = 64;

/// Below this `|t|` the power series is used.
const SERIES_THRESHOLD: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MomentBranch {
    #[default]
    Auto,
    Series,
    Recurrence,
}

/// Moments of `e^{iκy}` on `[a, b]` up to degree `nmax`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    kappa: f64,
    a: f64,
    b: f64,
    scaled: Vec<Complex64>,
}

impl MomentTable {
    pub fn new(kappa: f64, a: f64, b: f64, nmax: usize) -> Result<Self> {
        Self::with_branch(kappa, a, b, nmax, MomentBranch::Auto)
    }

    pub fn with_branch(
        kappa: f64,
        a: f64,
        b: f64,
        nmax: usize,
        branch: MomentBranch,
    ) -> Result<Self> {
        if !(kappa.is_finite() && a.is_finite() && b.is_finite()) {
            return Err(QuadError::NonFinite("moment table input"));
        }
        if a >= b {
            return Err(invalid("interval", format!("need a < b, got [{a}, {b}]")));
        }
        if nmax > MAX_DEGREE {
            return Err(QuadError::DegreeTooLarge(nmax));
        }
        let t = kappa * (b - a);
        Ok(Self {
            kappa,
            a,
            b,
            scaled: scaled_moments(t, nmax, branch),
        })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn max_degree(&self) -> usize {
        self.scaled.len() - 1
    }

    /// `ν_n = ∫_0^1 v^n e^{iκ(b-a)v} dv`.
    pub fn scaled(&self) -> &[Complex64] {
        &self.scaled
    }

    /// Shifted moment `μ_n = ∫_0^{b-a} u^n e^{iκu} du`. The phase `e^{iκa}`
    /// is left to the caller.
    pub fn mu(&self, n: usize) -> Complex64 {
        let h = self.b - self.a;
        self.scaled[n] * h.powi(n as i32 + 1)
    }

    /// `∫_a^b y^n e^{iκy} dy`, by binomial expansion of `(a + u)^n`.
    pub fn monomial(&self, n: usize) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut binom = 1.0;
        for k in 0..=n {
            acc += binom * self.a.powi((n - k) as i32) * self.mu(k);
            binom = binom * (n - k) as f64 / (k + 1) as f64;
        }
        Complex64::cis(self.kappa * self.a) * acc
    }
}

/// `∫_a^b y^n e^{iκy} dy` for `n = 0..=nmax`.
pub fn monomial_moments(kappa: f64, a: f64, b: f64, nmax: usize) -> Result<Vec<Complex64>> {
    let table = MomentTable::new(kappa, a, b, nmax)?;
    Ok((0..=nmax).map(|n| table.monomial(n)).collect())
}

/// `ν_n(t)` for `n = 0..=nmax`.
pub fn scaled_moments(t: f64, nmax: usize, branch: MomentBranch) -> Vec<Complex64> {
    let use_series = match branch {
        MomentBranch::Series => true,
        MomentBranch::Recurrence => t == 0.0,
        MomentBranch::Auto => t.abs() < SERIES_THRESHOLD,
    };
    if use_series {
        series_moments(t, nmax)
    } else {
        recurrence_moments(t, nmax)
    }
}

fn series_moments(t: f64, nmax: usize) -> Vec<Complex64> {
    let it = Complex64::new(0.0, t);
    (0..=nmax)
        .map(|n| {
            let mut power = Complex64::new(1.0, 0.0);
            let mut sum = Complex64::new(1.0 / (n + 1) as f64, 0.0);
            for k in 1..400 {
                power = power * it / k as f64;
                let term = power / (n + k + 1) as f64;
                sum += term;
                if term.norm() < 1e-18 * sum.norm() {
                    break;
                }
            }
            sum
        })
        .collect()
}

/// Upward recurrence while it is stable (`n <= |t|`), then a downward sweep
/// started far enough above `nmax` that the seed error has died out.
fn recurrence_moments(t: f64, nmax: usize) -> Vec<Complex64> {
    let e = Complex64::cis(t);
    let it = Complex64::new(0.0, t);
    let mut nu = vec![Complex64::new(0.0, 0.0); nmax + 1];

    // ν_0 = (e^{it} - 1)/(it), written without cancellation.
    let half = (t / 2.0).sin();
    nu[0] = Complex64::new(t.sin() / t, 2.0 * half * half / t);

    let upward = (t.abs().floor() as usize).min(nmax);
    for n in 1..=upward {
        nu[n] = (e - n as f64 * nu[n - 1]) / it;
    }
    if upward == nmax {
        return nu;
    }

    let mut top = nmax + 10;
    let mut decay = 1.0;
    for k in (upward + 1)..=top {
        decay *= t.abs() / k as f64;
    }
    while decay > 1e-20 {
        top += 1;
        decay *= t.abs() / top as f64;
    }
    let mut current = e / (Complex64::new(top as f64 + 1.0, 0.0) + it);
    for k in (upward + 2..=top).rev() {
        let below = (e - it * current) / k as f64;
        if k - 1 <= nmax {
            nu[k - 1] = below;
        }
        current = below;
    }
    nu
}

/// Newton divided differences of `(x_j, y_j)`; `x` must be distinct.
pub fn divided_differences(x: &[f64], y: &[Complex64]) -> Result<Vec<Complex64>> {
    if x.len() != y.len() || x.is_empty() {
        return Err(invalid(
            "nodes",
            "need matching, non-empty node and value lists",
        ));
    }
    let mut table = y.to_vec();
    let m = x.len();
    for level in 1..m {
        for j in (level..m).rev() {
            let dx = x[j] - x[j - level];
            if dx == 0.0 {
                return Err(invalid("nodes", format!("repeated node {}", x[j])));
            }
            table[j] = (table[j] - table[j - 1]) / dx;
        }
    }
    Ok(table)
}

/// `p(y) = Σ_j c_j Π_{l<j} (y - x_l)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonPoly {
    centers: Vec<f64>,
    coeffs: Vec<Complex64>,
}

impl NewtonPoly {
    /// Extra trailing centers are allowed and ignored.
    pub fn new(centers: Vec<f64>, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() || centers.len() + 1 < coeffs.len() {
            return Err(invalid(
                "centers",
                format!(
                    "{} coefficients need at least {} centers",
                    coeffs.len(),
                    coeffs.len().saturating_sub(1)
                ),
            ));
        }
        if coeffs.len() - 1 > MAX_DEGREE {
            return Err(QuadError::DegreeTooLarge(coeffs.len() - 1));
        }
        Ok(Self { centers, coeffs })
    }

    /// Interpolant of `values` at `nodes`.
    pub fn interpolate(nodes: &[f64], values: &[Complex64]) -> Result<Self> {
        let coeffs = divided_differences(nodes, values)?;
        Self::new(nodes.to_vec(), coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval(&self, y: f64) -> Complex64 {
        let m = self.degree();
        let mut acc = self.coeffs[m];
        for j in (0..m).rev() {
            acc = self.coeffs[j] + (y - self.centers[j]) * acc;
        }
        acc
    }
}

/// `∫_a^b p(y) e^{iκy} dy`, exact up to rounding.
pub fn newton_osc_integral(p: &NewtonPoly, kappa: f64, a: f64, b: f64) -> Result<Complex64> {
    if !(kappa.is_finite() && a.is_finite() && b.is_finite()) {
        return Err(QuadError::NonFinite("integration bounds"));
    }
    if a >= b {
        return Err(invalid("interval", format!("need a < b, got [{a}, {b}]")));
    }
    let h = b - a;
    let m = p.degree();
    let centers: Vec<f64> = p.centers[..m].iter().map(|c| (c - a) / h).collect();
    let mut scale = 1.0;
    let coeffs: Vec<Complex64> = p
        .coeffs
        .iter()
        .map(|c| {
            let out = c * scale;
            scale *= h;
            out
        })
        .collect();
    Ok(normalized_integral(kappa, a, h, &centers, &coeffs))
}

/// `e^{iκa} h ∫_0^1 q(v) e^{iκhv} dv` for `q` in Newton form on normalized
/// centers. Used directly by the Filon panels, whose divided differences are
/// already taken in the normalized variable.
///
/// `q` is expanded in powers of `w = v - 1/2` rather than `v`: a function
/// analytic in the disc through both panel ends then has coefficients that
/// shrink, while its expansion about `v = 0` can grow geometrically and
/// cancel in the sum.
pub(crate) fn normalized_integral(
    kappa: f64,
    a: f64,
    h: f64,
    centers: &[f64],
    coeffs: &[Complex64],
) -> Complex64 {
    let m = coeffs.len() - 1;
    // Coefficients in w, built from the innermost Newton term out.
    let mut mono = vec![Complex64::new(0.0, 0.0); m + 1];
    mono[0] = coeffs[m];
    for j in (0..m).rev() {
        let c = centers[j] - 0.5;
        for k in (1..=m - j).rev() {
            mono[k] = mono[k - 1] - c * mono[k];
        }
        mono[0] = coeffs[j] - c * mono[0];
    }
    let t = kappa * h;
    // ∫_0^1 w^k e^{itv} dv = e^{it/2} 2^{-k-1} ∫_{-1}^1 u^k e^{itu/2} du, and
    // the symmetric integral is 2 Re ν_k(t/2) or 2i Im ν_k(t/2).
    let nu = scaled_moments(0.5 * t, m, MomentBranch::Auto);
    let mut scale = 1.0;
    let mut sum = Complex64::new(0.0, 0.0);
    for (k, (c, n)) in mono.iter().zip(&nu).enumerate() {
        let symmetric = if k % 2 == 0 {
            Complex64::new(n.re, 0.0)
        } else {
            Complex64::new(0.0, n.im)
        };
        sum += c * symmetric * scale;
        scale *= 0.5;
    }
    Complex64::cis(kappa * a + 0.5 * t) * h * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// Composite Simpson on a fine grid, as an independent check.
    fn simpson<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, panels: usize) -> Complex64 {
        let h = (b - a) / panels as f64;
        let mut acc = f(a) + f(b);
        for i in 1..panels {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(a + i as f64 * h);
        }
        acc * h / 3.0
    }

    #[test]
    fn zeroth_moment_closed_form() {
        for &(k, a, b) in &[
            (10.0, 0.0, 1.0),
            (1e3, 0.2, 0.7),
            (0.3, 0.0, 1.0),
            (1e6, 0.0, 1e-3),
        ] {
            let t = MomentTable::new(k, a, b, 0).unwrap();
            let exact = (Complex64::cis(k * b) - Complex64::cis(k * a)) / Complex64::new(0.0, k);
            // b - a is itself rounded, which shifts the phase by ~κ ulp.
            assert!((t.monomial(0) - exact).norm() < 1e-13 * exact.norm());
        }
    }

    #[test]
    fn scaled_moments_match_quadrature() {
        for &t in &[0.0, 0.3, 0.99, 1.0, 2.5, 17.0, 400.0] {
            let nu = scaled_moments(t, 40, MomentBranch::Auto);
            for n in [0usize, 1, 5, 20, 40] {
                let q = simpson(
                    |v| v.powi(n as i32) * Complex64::cis(t * v),
                    0.0,
                    1.0,
                    20000,
                );
                assert!(
                    (nu[n] - q).norm() < 1e-10,
                    "t={t} n={n}: {} vs {}",
                    nu[n],
                    q
                );
            }
        }
    }

    #[test]
    fn shifted_moments_at_pi() {
        let t = MomentTable::new(std::f64::consts::PI, 0.0, 1.0, 1).unwrap();
        let pi = std::f64::consts::PI;
        assert!((t.mu(0) - Complex64::new(0.0, 2.0 / pi)).norm() < 1e-15);
        assert!((t.mu(1) - Complex64::new(-2.0 / (pi * pi), 1.0 / pi)).norm() < 1e-15);
    }

    #[test]
    fn recurrence_residual_is_small() {
        for &(k, h) in &[
            (3.0, 1.0),
            (1e3, 0.01),
            (50.0, 1.0),
            (1e6, 1e-7),
            (0.5, 1.0),
        ] {
            let t = MomentTable::new(k, 0.25, 0.25 + h, MAX_DEGREE).unwrap();
            let ik = Complex64::new(0.0, k);
            for n in 1..=MAX_DEGREE {
                let rhs =
                    h.powi(n as i32) * Complex64::cis(k * h) / ik - n as f64 / ik * t.mu(n - 1);
                let res = (t.mu(n) - rhs).norm();
                assert!(
                    res <= 1e-12 * t.mu(n).norm().max(1.0),
                    "k={k} h={h} n={n} res={res}"
                );
            }
        }
    }

    #[test]
    fn tiny_interval_branches_agree() {
        let s = MomentTable::with_branch(1e6, 0.5, 0.5 + 1e-7, 3, MomentBranch::Series).unwrap();
        let r =
            MomentTable::with_branch(1e6, 0.5, 0.5 + 1e-7, 3, MomentBranch::Recurrence).unwrap();
        assert!((s.mu(3) - r.mu(3)).norm() <= 1e-12 * s.mu(3).norm());
    }

    #[test]
    fn branches_agree_at_threshold() {
        let s = scaled_moments(1.0, MAX_DEGREE, MomentBranch::Series);
        let r = scaled_moments(1.0, MAX_DEGREE, MomentBranch::Recurrence);
        for (a, b) in s.iter().zip(&r) {
            assert!((a - b).norm() <= 1e-13 * a.norm());
        }
    }

    #[test]
    fn high_degree_moments_stay_accurate_when_n_exceeds_t() {
        // Pure upward recursion loses everything here.
        let nu = scaled_moments(3.0, 64, MomentBranch::Auto);
        let series = scaled_moments(3.0, 64, MomentBranch::Series);
        for n in 0..=64 {
            assert!(
                (nu[n] - series[n]).norm() < 1e-13 * series[n].norm(),
                "n={n}"
            );
        }
    }

    #[test]
    fn newton_integral_of_quadratic() {
        // p(y) = 1 + 2(y-0.1) + 3(y-0.1)(y-0.4) = 3y^2 + 0.5y + 0.92
        let p = NewtonPoly::new(vec![0.1, 0.4, 0.9], vec![c(1.0), c(2.0), c(3.0)]).unwrap();
        for y in [0.0, 0.3, 1.0] {
            assert!((p.eval(y) - c(3.0 * y * y + 0.5 * y + 0.92)).norm() < 1e-14);
        }
        let kappa = 37.0;
        let m = monomial_moments(kappa, 0.0, 1.0, 2).unwrap();
        let exact = 3.0 * m[2] + 0.5 * m[1] + 0.92 * m[0];
        let got = newton_osc_integral(&p, kappa, 0.0, 1.0).unwrap();
        assert!((got - exact).norm() < 1e-14);
    }

    #[test]
    fn divided_differences_reproduce_interpolant() {
        let x: [f64; 5] = [0.0, 0.2, 0.5, 0.55, 1.0];
        let y: Vec<Complex64> = x
            .iter()
            .map(|&t| Complex64::new(t.exp(), t.sin()))
            .collect();
        let p = NewtonPoly::interpolate(&x, &y).unwrap();
        for (xi, yi) in x.iter().zip(&y) {
            assert!((p.eval(*xi) - yi).norm() < 1e-13);
        }
        assert!(divided_differences(&[0.0, 0.0], &[c(1.0), c(2.0)]).is_err());
    }

    #[test]
    fn degree_cap() {
        assert!(matches!(
            MomentTable::new(1.0, 0.0, 1.0, MAX_DEGREE + 1),
            Err(QuadError::DegreeTooLarge(65))
        ));
    }
}
