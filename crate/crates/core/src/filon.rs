//! The moment-free Filon rule on a single panel and its equal-width
//! composite.
//!
//! On `[a, b]` the transplanted amplitude `Ψ = (f/g') ∘ g^{-1}` is
//! interpolated at the mapped nodes `g(t_j)`; only `f(t_j)` and `g'(t_j)`
//! are sampled, so `g^{-1}` is never needed. The interpolant is then
//! integrated exactly against `e^{iκy}` over `[g(a), g(b)]`.

use num_complex::Complex64;

use crate::error::{invalid, QuadError, Result};
use crate::moments::{self, MAX_DEGREE};
use crate::outcome::{MeshSchedule, PanelSchedule, QuadratureOutcome};
use crate::problem::NormalizedProblem;

/// Where the `m + 1` interpolation nodes sit inside a panel. Both choices
/// include the endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NodePlacement {
    #[default]
    Uniform,
    ChebyshevLobatto,
}

impl NodePlacement {
    fn node(self, a: f64, b: f64, j: usize, m: usize) -> f64 {
        if j == 0 {
            return a;
        }
        if j == m {
            return b;
        }
        match self {
            NodePlacement::Uniform => a + (b - a) * j as f64 / m as f64,
            NodePlacement::ChebyshevLobatto => {
                let c = (std::f64::consts::PI * j as f64 / m as f64).cos();
                0.5 * (a + b) - 0.5 * (b - a) * c
            }
        }
    }
}

/// Sampled data of one panel: nodes, mapped centers and `Ψ` values.
#[derive(Debug, Clone, PartialEq)]
pub struct FilonPanel {
    pub a: f64,
    pub b: f64,
    pub nodes: Vec<f64>,
    pub centers: Vec<f64>,
    pub psi_values: Vec<Complex64>,
}

impl FilonPanel {
    pub fn degree(&self) -> usize {
        self.nodes.len() - 1
    }

    /// `∫_{g(a)}^{g(b)} p(y) e^{iκy} dy` for the interpolant `p` of `Ψ`.
    pub fn integrate(&self, kappa: f64) -> Result<Complex64> {
        let m = self.degree();
        let lo = self.centers[0];
        let h = self.centers[m] - lo;
        if !(h > 0.0) {
            return Err(QuadError::NonMonotoneOscillator { at: self.a });
        }
        let scaled: Vec<f64> = self.centers.iter().map(|c| (c - lo) / h).collect();
        let coeffs = moments::divided_differences(&scaled, &self.psi_values)
            .map_err(|_| QuadError::NonMonotoneOscillator { at: self.a })?;
        Ok(moments::normalized_integral(kappa, lo, h, &scaled, &coeffs))
    }
}

#[derive(Debug, Clone, Copy)]
struct Sample {
    x: f64,
    g: f64,
    psi: Complex64,
}

/// Samples `(f, g')` panel by panel and reuses the right endpoint of one
/// panel as the left endpoint of the next.
pub(crate) struct PanelSampler<'p> {
    problem: &'p NormalizedProblem,
    placement: NodePlacement,
    last: Option<Sample>,
    evals: usize,
    schedule: MeshSchedule,
}

impl<'p> PanelSampler<'p> {
    pub(crate) fn new(problem: &'p NormalizedProblem, placement: NodePlacement) -> Self {
        Self {
            problem,
            placement,
            last: None,
            evals: 0,
            schedule: MeshSchedule::default(),
        }
    }

    fn sample(&mut self, x: f64) -> Result<Sample> {
        let d = self.problem.g_prime(x);
        if d == 0.0 {
            return Err(QuadError::StationaryPointInPanel { at: x });
        }
        self.evals += 1;
        let psi = self.problem.f(x) / d;
        if !(psi.re.is_finite() && psi.im.is_finite()) {
            return Err(QuadError::NonFinite("amplitude sample"));
        }
        Ok(Sample {
            x,
            g: self.problem.g(x),
            psi,
        })
    }

    fn panel(&mut self, a: f64, b: f64, m: usize) -> Result<Complex64> {
        let mut nodes = Vec::with_capacity(m + 1);
        let mut centers = Vec::with_capacity(m + 1);
        let mut psi_values = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let x = self.placement.node(a, b, j, m);
            let s = match self.last {
                Some(s) if j == 0 && s.x == x => s,
                _ => self.sample(x)?,
            };
            nodes.push(s.x);
            centers.push(s.g);
            psi_values.push(s.psi);
            if j == m {
                self.last = Some(s);
            }
        }
        FilonPanel {
            a,
            b,
            nodes,
            centers,
            psi_values,
        }
        .integrate(self.problem.kappa())
    }

    /// `N` equal subpanels of degree `m` on `[a, b]`, summed left to right.
    pub(crate) fn composite(&mut self, a: f64, b: f64, m: usize, n: usize) -> Result<Complex64> {
        check_panel(a, b, m)?;
        if n == 0 {
            return Err(invalid("N", "need at least one subpanel"));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        let mut left = a;
        for j in 1..=n {
            let right = if j == n {
                b
            } else {
                a + (b - a) * j as f64 / n as f64
            };
            acc += self.panel(left, right, m)?;
            left = right;
        }
        self.schedule.panels.push(PanelSchedule {
            a,
            b,
            degree: m,
            refinements: n,
        });
        Ok(acc)
    }

    pub(crate) fn finish(self, raw: Complex64) -> QuadratureOutcome {
        QuadratureOutcome {
            value: self.problem.restore(raw),
            n_evals: self.evals,
            mesh: Some(self.schedule),
            warnings: Vec::new(),
        }
    }
}

fn check_panel(a: f64, b: f64, m: usize) -> Result<()> {
    if !(0.0 <= a && a < b && b <= 1.0) {
        return Err(invalid(
            "panel",
            format!("need 0 <= a < b <= 1, got [{a}, {b}]"),
        ));
    }
    if m == 0 {
        return Err(invalid("m", "degree must be at least 1"));
    }
    if m > MAX_DEGREE {
        return Err(QuadError::DegreeTooLarge(m));
    }
    Ok(())
}

/// Samples one panel without integrating it.
pub fn sample_panel(
    problem: &NormalizedProblem,
    a: f64,
    b: f64,
    m: usize,
    placement: NodePlacement,
) -> Result<FilonPanel> {
    check_panel(a, b, m)?;
    let mut sampler = PanelSampler::new(problem, placement);
    let mut panel = FilonPanel {
        a,
        b,
        nodes: Vec::new(),
        centers: Vec::new(),
        psi_values: Vec::new(),
    };
    for j in 0..=m {
        let s = sampler.sample(placement.node(a, b, j, m))?;
        panel.nodes.push(s.x);
        panel.centers.push(s.g);
        panel.psi_values.push(s.psi);
    }
    Ok(panel)
}

/// Degree-`m` Filon rule on `[a, b]` with uniform nodes.
pub fn filon_basic(
    problem: &NormalizedProblem,
    a: f64,
    b: f64,
    m: usize,
) -> Result<QuadratureOutcome> {
    filon_composite_with(problem, a, b, m, 1, NodePlacement::Uniform)
}

/// `N` equal-width copies of [`filon_basic`] on `[a, b]`.
pub fn filon_composite(
    problem: &NormalizedProblem,
    a: f64,
    b: f64,
    m: usize,
    n: usize,
) -> Result<QuadratureOutcome> {
    filon_composite_with(problem, a, b, m, n, NodePlacement::Uniform)
}

pub fn filon_composite_with(
    problem: &NormalizedProblem,
    a: f64,
    b: f64,
    m: usize,
    n: usize,
    placement: NodePlacement,
) -> Result<QuadratureOutcome> {
    let mut sampler = PanelSampler::new(problem, placement);
    let raw = sampler.composite(a, b, m, n)?;
    Ok(sampler.finish(raw))
}
