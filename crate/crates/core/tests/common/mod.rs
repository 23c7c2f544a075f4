//! Independent reference integrals for the integration tests. Nothing here
//! calls into the library's quadrature code.

#![allow(dead_code)]

use num_complex::Complex64;

pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

/// Composite Simpson with `panels` (even) subintervals.
pub fn simpson<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, panels: usize) -> Complex64 {
    let panels = panels + panels % 2;
    let h = (b - a) / panels as f64;
    let mut odd = Complex64::new(0.0, 0.0);
    let mut even = Complex64::new(0.0, 0.0);
    for i in 1..panels {
        let v = f(a + i as f64 * h);
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    (f(a) + f(b) + 4.0 * odd + 2.0 * even) * h / 3.0
}

/// `∫_0^1 f(x) e^{iκ g(x)} dx` after `x = u^k`, which removes an algebraic
/// or logarithmic endpoint singularity for `k` large enough.
pub fn oscillatory<F, G>(f: F, g: G, kappa: f64, k: i32, panels: usize) -> Complex64
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    simpson(
        |u| {
            // The transformed integrand is finite at 0 but f itself may not be.
            let u = if u == 0.0 { 1e-12 } else { u };
            let x = u.powi(k);
            let jac = k as f64 * u.powi(k - 1);
            Complex64::cis(kappa * g(x)) * (f(x) * jac)
        },
        0.0,
        1.0,
        panels,
    )
}

/// `∫_0^1 p(x) e^{iκx} dx` for `p(x) = Σ c_j x^j`: a Taylor series of the
/// exponential for small κ, repeated integration by parts otherwise.
pub fn poly_linear(coeffs: &[f64], kappa: f64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    if kappa < 20.0 {
        let mut total = Complex64::new(0.0, 0.0);
        for (j, &c) in coeffs.iter().enumerate() {
            let mut term = Complex64::new(1.0, 0.0);
            let mut sum = Complex64::new(0.0, 0.0);
            for n in 0..200 {
                if n > 0 {
                    term = term * i * kappa / n as f64;
                }
                sum += term / (j + n + 1) as f64;
            }
            total += c * sum;
        }
        return total;
    }
    let mut d: Vec<f64> = coeffs.to_vec();
    let e = Complex64::cis(kappa);
    let ik = i * kappa;
    let mut total = Complex64::new(0.0, 0.0);
    let mut denom = ik;
    let mut sign = 1.0;
    while !d.is_empty() {
        let at_one: f64 = d.iter().sum();
        let at_zero = d[0];
        total += sign * (at_one * e - at_zero) / denom;
        d = d
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| j as f64 * c)
            .collect();
        denom *= ik;
        sign = -sign;
    }
    total
}

pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Least-squares slope of `ys` against `xs`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}
