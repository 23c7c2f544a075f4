use num_complex::Complex64;

/// Non-fatal diagnostics collected while building a problem or a mesh.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// `g''` changes sign near `at`.
    InflectionPoint { at: f64 },
    /// Interior sampling on panel `panel` found `|g'|` above the endpoint
    /// maximum by the factor `ratio`.
    DerivativeExceedsPanelBound { panel: usize, ratio: f64 },
    /// The graded degree schedule is too short for the given wave number.
    DegreeScheduleTooShort { n: usize, kappa: f64 },
    /// The exponential stationary-point schedule gives no decay for this `n`.
    StationaryScheduleTooShort { n: usize },
    /// `n < 3` for the exponential smooth rule.
    FewPanels { n: usize },
}

/// Per-panel description of the quadrature actually carried out.
#[derive(Debug, Clone, PartialEq)]
pub struct PanelSchedule {
    pub a: f64,
    pub b: f64,
    /// Filon interpolation degree, or Gauss points for singular panels.
    pub degree: usize,
    /// Number of equal subpanels (1 for Gauss panels).
    pub refinements: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MeshSchedule {
    pub panels: Vec<PanelSchedule>,
}

impl MeshSchedule {
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.panels.iter().map(|p| p.a).collect();
        if let Some(last) = self.panels.last() {
            out.push(last.b);
        }
        out
    }

    pub(crate) fn append(&mut self, other: MeshSchedule) {
        self.panels.extend(other.panels);
    }
}

/// Result of any rule: the value of the original integral, the number of
/// amplitude evaluations it took, and what was done to get it.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureOutcome {
    pub value: Complex64,
    pub n_evals: usize,
    pub mesh: Option<MeshSchedule>,
    pub warnings: Vec<Warning>,
}

impl QuadratureOutcome {
    /// Sum of two pieces of a split integral. Evaluation counts add; the two
    /// pieces never share sample points.
    pub fn combine(first: QuadratureOutcome, second: QuadratureOutcome) -> QuadratureOutcome {
        let mesh = match (first.mesh, second.mesh) {
            (Some(mut a), Some(b)) => {
                a.append(b);
                Some(a)
            }
            (a, b) => a.or(b),
        };
        let mut warnings = first.warnings;
        for w in second.warnings {
            if !warnings.contains(&w) {
                warnings.push(w);
            }
        }
        QuadratureOutcome {
            value: first.value + second.value,
            n_evals: first.n_evals + second.n_evals,
            mesh,
            warnings,
        }
    }
}
