//! Gauss–Legendre rules on `[-1, 1]`.

use crate::error::{invalid, QuadError, Result};

/// Largest supported number of points.
pub const MAX_POINTS: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    /// Ascending nodes in `(-1, 1)`.
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Applies the rule on `[a, b]`.
    pub fn integrate<T, F>(&self, a: f64, b: f64, mut f: F) -> T
    where
        T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
        F: FnMut(f64) -> T,
    {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = T::default();
        for (t, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * t) * *w;
        }
        acc * half
    }
}

/// `(P_m(x), P_{m-1}(x))` by the three-term recurrence.
fn legendre_pair(m: usize, x: f64) -> (f64, f64) {
    let mut prev = 1.0;
    let mut cur = x;
    for k in 2..=m {
        let next = ((2 * k - 1) as f64 * x * cur - (k - 1) as f64 * prev) / k as f64;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// `m`-point Gauss–Legendre rule, exact for polynomials of degree `2m - 1`.
pub fn gauss_legendre(m: usize) -> Result<GaussRule> {
    if m == 0 || m > MAX_POINTS {
        return Err(invalid(
            "m",
            format!("need 1 <= m <= {MAX_POINTS}, got {m}"),
        ));
    }
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let mf = m as f64;
    // Roots come in ± pairs; solve for the non-negative half.
    for j in 1..=m.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (j as f64 - 0.25) / (mf + 0.5)).cos();
        let mut converged = false;
        for _ in 0..100 {
            let (p, q) = legendre_pair(m, x);
            let dp = mf * (x * p - q) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged {
            // A last step of size ~ulp can oscillate; accept if the residual is tiny.
            let (p, _) = legendre_pair(m, x);
            if p.abs() > 1e-13 {
                return Err(QuadError::GaussNotConverged(m));
            }
        }
        if 2 * j - 1 == m {
            x = 0.0;
        }
        let (_, q) = legendre_pair(m, x);
        let w = 2.0 * (1.0 - x * x) / (mf * q).powi(2);
        nodes[m - j] = x;
        weights[m - j] = w;
        nodes[j - 1] = -x;
        weights[j - 1] = w;
    }
    Ok(GaussRule { nodes, weights })
}
