//! Benchmark driver: runs a named rule on a built-in problem, attaches a
//! reference value and produces CSV-ready records.

use std::fmt;
use std::io;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, QuadError, Result};
use crate::filon::filon_composite;
use crate::problem::{normalize_problem, NormalizedProblem};
use crate::reference::{
    asymptotic_log_ref, asymptotic_power_ref, brute_force, closed_form_exp_linear, ReferenceValue,
    BRUTE_FORCE_MAX_KAPPA,
};
use crate::registry::{Amplitude, Phase};
use crate::smooth::{cmfe_smooth, cmfp_smooth};
use crate::stationary::{cmfe_full_with_epsilon, cmfp_full};
use crate::QuadratureOutcome;

/// Relative tolerance of brute-force references produced here.
pub const BRUTE_FORCE_TOL: f64 = 1e-12;

/// Environment variable capping the number of sweep workers.
pub const THREADS_ENV: &str = "OSC_THREADS";

pub const CSV_HEADER: [&str; 13] = [
    "rule",
    "integrand",
    "oscillator",
    "kappa",
    "params",
    "value_re",
    "value_im",
    "ref_re",
    "ref_im",
    "ref_kind",
    "rel_err",
    "n_evals",
    "wall_ns",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Filon,
    CmfpSmooth,
    CmfeSmooth,
    CmfpFull,
    CmfeFull,
}

impl Rule {
    pub const ALL: [Rule; 5] = [
        Rule::Filon,
        Rule::CmfpSmooth,
        Rule::CmfeSmooth,
        Rule::CmfpFull,
        Rule::CmfeFull,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Filon => "filon",
            Rule::CmfpSmooth => "cmfp_smooth",
            Rule::CmfeSmooth => "cmfe_smooth",
            Rule::CmfpFull => "cmfp_full",
            Rule::CmfeFull => "cmfe_full",
        }
    }

    /// Whether the rule can be applied to this amplitude/oscillator pair.
    pub fn applies_to(self, f: Amplitude, g: Phase) -> bool {
        match self {
            Rule::Filon | Rule::CmfpSmooth | Rule::CmfeSmooth => !f.is_singular() && g.r() == 0,
            Rule::CmfpFull | Rule::CmfeFull => true,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = QuadError;

    fn from_str(s: &str) -> Result<Self> {
        Rule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| invalid("rule", format!("unknown rule {s:?}")))
    }
}

/// Where the reference value comes from. `Auto` picks a closed form, then
/// an asymptotic formula, then brute force when `κ` is small enough.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RefSource {
    #[default]
    Auto,
    Closed,
    Asymptotic,
    Brute,
}

impl FromStr for RefSource {
    type Err = QuadError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(RefSource::Auto),
            "closed" => Ok(RefSource::Closed),
            "asymptotic" => Ok(RefSource::Asymptotic),
            "brute" => Ok(RefSource::Brute),
            _ => Err(invalid("ref", format!("unknown reference source {s:?}"))),
        }
    }
}

/// Rule parameters. Which ones are needed depends on the rule.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RuleParams {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub s: Option<usize>,
    pub m_tilde: Option<usize>,
    pub gamma: Option<f64>,
    pub epsilon: Option<f64>,
}

impl RuleParams {
    fn need<T: Copy>(value: Option<T>, name: &'static str, rule: Rule) -> Result<T> {
        value.ok_or_else(|| invalid(name, format!("required by rule {rule}")))
    }

    /// Checks that every parameter `rule` needs is present.
    pub fn check(&self, rule: Rule) -> Result<()> {
        match rule {
            Rule::Filon => {
                Self::need(self.m, "m", rule)?;
            }
            Rule::CmfpSmooth => {
                Self::need(self.n, "n", rule)?;
                Self::need(self.m, "m", rule)?;
            }
            Rule::CmfeSmooth => {
                Self::need(self.n, "n", rule)?;
            }
            Rule::CmfpFull => {
                Self::need(self.n, "n", rule)?;
                Self::need(self.m, "m", rule)?;
                Self::need(self.s, "s", rule)?;
                Self::need(self.m_tilde, "mtilde", rule)?;
            }
            Rule::CmfeFull => {
                Self::need(self.n, "n", rule)?;
                Self::need(self.s, "s", rule)?;
                Self::need(self.gamma, "gamma", rule)?;
            }
        }
        Ok(())
    }

    /// `name=value` pairs joined by `;`, in a fixed order.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if let Some(v) = self.n {
            parts.push(format!("n={v}"));
        }
        if let Some(v) = self.m {
            parts.push(format!("m={v}"));
        }
        if let Some(v) = self.s {
            parts.push(format!("s={v}"));
        }
        if let Some(v) = self.m_tilde {
            parts.push(format!("mtilde={v}"));
        }
        if let Some(v) = self.gamma {
            parts.push(format!("gamma={v}"));
        }
        if let Some(v) = self.epsilon {
            parts.push(format!("epsilon={v}"));
        }
        parts.join(";")
    }
}

/// One integration to run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub rule: Rule,
    pub amplitude: Amplitude,
    pub phase: Phase,
    pub kappa: f64,
    pub params: RuleParams,
    pub reference: RefSource,
    /// Overrides the singularity index of `log`.
    pub log_mu: Option<f64>,
}

impl RunConfig {
    pub fn new(
        rule: Rule,
        amplitude: Amplitude,
        phase: Phase,
        kappa: f64,
        params: RuleParams,
    ) -> Self {
        Self {
            rule,
            amplitude,
            phase,
            kappa,
            params,
            reference: RefSource::Auto,
            log_mu: None,
        }
    }

    pub fn with_reference(mut self, reference: RefSource) -> Self {
        self.reference = reference;
        self
    }

    pub fn with_kappa(mut self, kappa: f64) -> Self {
        self.kappa = kappa;
        self
    }

    pub fn problem(&self) -> Result<NormalizedProblem> {
        let f = match self.log_mu {
            Some(mu) if self.amplitude == Amplitude::Log => self.amplitude.spec_with_mu(mu)?,
            _ => self.amplitude.spec(),
        };
        normalize_problem(&f, &self.phase.spec(), self.kappa)
    }
}

/// Runs the configured rule on an already normalized problem.
pub fn apply_rule(
    problem: &NormalizedProblem,
    rule: Rule,
    params: &RuleParams,
) -> Result<QuadratureOutcome> {
    params.check(rule)?;
    let p = *params;
    match rule {
        Rule::Filon => filon_composite(problem, 0.0, 1.0, p.m.unwrap(), p.n.unwrap_or(1)),
        Rule::CmfpSmooth => cmfp_smooth(problem, p.n.unwrap(), p.m.unwrap()),
        Rule::CmfeSmooth => cmfe_smooth(problem, p.n.unwrap()),
        Rule::CmfpFull => cmfp_full(
            problem,
            p.n.unwrap(),
            p.m.unwrap(),
            p.s.unwrap(),
            p.m_tilde.unwrap(),
        ),
        Rule::CmfeFull => cmfe_full_with_epsilon(
            problem,
            p.n.unwrap(),
            p.s.unwrap(),
            p.gamma.unwrap(),
            p.epsilon.unwrap_or(1.0),
        ),
    }
}

fn closed_form(f: Amplitude, g: Phase, kappa: f64) -> Option<ReferenceValue> {
    match (f, g) {
        (Amplitude::One, Phase::Linear) => Some(closed_form_exp_linear(0.0, kappa)),
        (Amplitude::Exp, Phase::Linear) => Some(closed_form_exp_linear(1.0, kappa)),
        _ => None,
    }
}

/// For `f = x^μ`, `g = x^k` the substitution `y = x^k` gives
/// `(1/k) ∫_0^1 y^α e^{iκy} dy` with `α = (1+μ)/k - 1`.
fn asymptotic(f: Amplitude, g: Phase, kappa: f64) -> Result<Option<ReferenceValue>> {
    if f == Amplitude::Log && g == Phase::Linear {
        return asymptotic_log_ref(kappa).map(Some);
    }
    let (Some(mu), Some(k)) = (f.power(), g.power()) else {
        return Ok(None);
    };
    let k = k as f64;
    let alpha = (1.0 + mu) / k - 1.0;
    if alpha == 0.0 {
        return Ok(None);
    }
    let mut r = asymptotic_power_ref(alpha, kappa)?;
    r.value /= k;
    Ok(Some(r))
}

/// Reference value for a built-in problem, or `None` when `Auto` finds
/// nothing applicable.
pub fn reference_value(config: &RunConfig) -> Result<Option<ReferenceValue>> {
    let (f, g, kappa) = (config.amplitude, config.phase, config.kappa);
    let missing =
        |what: &str| QuadError::NoReference(format!("no {what} reference for f={f}, g={g}"));
    match config.reference {
        RefSource::Closed => closed_form(f, g, kappa)
            .map(Some)
            .ok_or_else(|| missing("closed-form")),
        RefSource::Asymptotic => asymptotic(f, g, kappa)?
            .map(Some)
            .ok_or_else(|| missing("asymptotic")),
        RefSource::Brute => brute_force(&config.problem()?, BRUTE_FORCE_TOL).map(Some),
        RefSource::Auto => {
            if let Some(r) = closed_form(f, g, kappa) {
                return Ok(Some(r));
            }
            if let Some(r) = asymptotic(f, g, kappa)? {
                return Ok(Some(r));
            }
            if kappa <= BRUTE_FORCE_MAX_KAPPA {
                return brute_force(&config.problem()?, BRUTE_FORCE_TOL).map(Some);
            }
            Ok(None)
        }
    }
}

/// One row of benchmark output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub rule: String,
    pub integrand: String,
    pub oscillator: String,
    pub kappa: f64,
    pub params: String,
    pub value_re: f64,
    pub value_im: f64,
    pub ref_re: f64,
    pub ref_im: f64,
    pub ref_kind: String,
    pub rel_err: f64,
    pub n_evals: usize,
    pub wall_ns: u64,
}

impl RunRecord {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.value_re, self.value_im)
    }

    pub fn reference(&self) -> Option<Complex64> {
        (self.ref_kind != "none").then(|| Complex64::new(self.ref_re, self.ref_im))
    }

    pub fn abs_err(&self) -> f64 {
        self.reference()
            .map_or(f64::NAN, |r| (self.value() - r).norm())
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.rule.clone(),
            self.integrand.clone(),
            self.oscillator.clone(),
            format!("{:e}", self.kappa),
            self.params.clone(),
            format!("{:e}", self.value_re),
            format!("{:e}", self.value_im),
            format!("{:e}", self.ref_re),
            format!("{:e}", self.ref_im),
            self.ref_kind.clone(),
            format!("{:e}", self.rel_err),
            self.n_evals.to_string(),
            self.wall_ns.to_string(),
        ]
    }
}

/// Runs one configuration and attaches its reference.
pub fn integrate(config: &RunConfig) -> Result<RunRecord> {
    let problem = config.problem()?;
    let start = Instant::now();
    let outcome = apply_rule(&problem, config.rule, &config.params)?;
    let wall_ns = start.elapsed().as_nanos() as u64;
    let reference = reference_value(config)?;
    let (ref_value, ref_kind, rel_err) = match reference {
        Some(r) => (
            r.value,
            r.kind.as_str(),
            (outcome.value - r.value).norm() / r.value.norm(),
        ),
        None => (Complex64::new(f64::NAN, f64::NAN), "none", f64::NAN),
    };
    Ok(RunRecord {
        rule: config.rule.name().to_string(),
        integrand: config.amplitude.name().to_string(),
        oscillator: config.phase.name().to_string(),
        kappa: config.kappa,
        params: config.params.describe(),
        value_re: outcome.value.re,
        value_im: outcome.value.im,
        ref_re: ref_value.re,
        ref_im: ref_value.im,
        ref_kind: ref_kind.to_string(),
        rel_err,
        n_evals: outcome.n_evals,
        wall_ns,
    })
}

/// Worker cap from `OSC_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Runs a list of configurations in parallel; output keeps input order.
pub fn run_all(configs: &[RunConfig]) -> Result<Vec<RunRecord>> {
    let work = || {
        configs
            .par_iter()
            .map(integrate)
            .collect::<Result<Vec<_>>>()
    };
    match thread_cap() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| invalid(THREADS_ENV, e.to_string()))?
            .install(work),
        None => work(),
    }
}

/// `config` at each wave number in `kappas`.
pub fn sweep(config: &RunConfig, kappas: &[f64]) -> Result<Vec<RunRecord>> {
    let configs: Vec<RunConfig> = kappas.iter().map(|&k| config.with_kappa(k)).collect();
    run_all(&configs)
}

/// `count` logarithmically spaced points from `start` to `stop` inclusive.
pub fn log_space(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let (a, b) = (start.ln(), stop.ln());
            (0..count)
                .map(|i| match i {
                    0 => start,
                    i if i == count - 1 => stop,
                    i => (a + (b - a) * i as f64 / (count - 1) as f64).exp(),
                })
                .collect()
        }
    }
}

fn decades(from: i32, to: i32) -> Vec<f64> {
    (from..=to).map(|e| 10f64.powi(e)).collect()
}

fn params(n: usize) -> RuleParams {
    RuleParams {
        n: Some(n),
        ..RuleParams::default()
    }
}

/// Configurations behind the numbered experiments.
pub fn example_configs(id: u32) -> Result<Vec<RunConfig>> {
    use Amplitude::*;
    use Phase::*;
    let mut out = Vec::new();
    let mut push = |rule, f, g, kappas: &[f64], p: RuleParams, reference| {
        for &k in kappas {
            out.push(RunConfig::new(rule, f, g, k, p).with_reference(reference));
        }
    };
    let kappas = decades(2, 7);
    match id {
        1 => {
            for n in [5, 15, 20, 30] {
                let p = RuleParams {
                    m: Some(4),
                    ..params(n)
                };
                push(Rule::CmfpSmooth, Exp, Linear, &kappas, p, RefSource::Closed);
            }
        }
        2 => {
            for f in [Sqrt, Log, InvSqrt] {
                for n in [5, 10] {
                    let p = RuleParams {
                        m: Some(4),
                        s: Some(n),
                        m_tilde: Some(4),
                        ..params(n)
                    };
                    push(Rule::CmfpFull, f, Linear, &kappas, p, RefSource::Asymptotic);
                }
            }
        }
        3 => {
            for n in [30, 50] {
                let p = RuleParams {
                    m: Some(4),
                    s: Some(n),
                    m_tilde: Some(4),
                    ..params(n)
                };
                push(
                    Rule::CmfpFull,
                    InvSqrt,
                    Square,
                    &kappas,
                    p,
                    RefSource::Asymptotic,
                );
            }
        }
        4 => {
            for n in [4, 5] {
                push(
                    Rule::CmfeSmooth,
                    Exp,
                    Linear,
                    &kappas,
                    params(n),
                    RefSource::Closed,
                );
            }
        }
        5 | 6 => {
            let (f, g, s) = if id == 5 {
                (One, Cube, 7)
            } else {
                (InvSqrt, Square, 12)
            };
            for n in [3, 4] {
                let p = RuleParams {
                    s: Some(s),
                    gamma: Some(0.02),
                    epsilon: Some(6.0),
                    ..params(n)
                };
                push(Rule::CmfeFull, f, g, &kappas, p, RefSource::Asymptotic);
            }
        }
        7 => {
            let kappas = decades(2, 6);
            push(
                Rule::CmfeSmooth,
                One,
                SinMix,
                &kappas,
                params(3),
                RefSource::Auto,
            );
            let p = RuleParams {
                s: Some(6),
                gamma: Some(0.02),
                epsilon: Some(1.5),
                ..params(6)
            };
            push(Rule::CmfeFull, Log, SinMix, &kappas, p, RefSource::Auto);
        }
        _ => return Err(invalid("example", format!("need 1..=7, got {id}"))),
    }
    Ok(out)
}

/// Reproduces one of the numbered experiments.
pub fn run_example(id: u32) -> Result<Vec<RunRecord>> {
    run_all(&example_configs(id)?)
}

/// Writes the header and one row per record. With `scale = Some(p)` a
/// trailing `scaled_err` column holds `κ^p |value - ref|`.
pub fn write_csv<W: io::Write>(
    records: &[RunRecord],
    out: W,
    scale: Option<f64>,
) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<&str> = CSV_HEADER.to_vec();
    if scale.is_some() {
        header.push("scaled_err");
    }
    w.write_record(&header)?;
    for r in records {
        let mut fields = r.fields();
        if let Some(p) = scale {
            fields.push(format!("{:e}", r.kappa.powf(p) * r.abs_err()));
        }
        w.write_record(&fields)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: io::Read>(input: R) -> csv::Result<Vec<RunRecord>> {
    csv::Reader::from_reader(input).deserialize().collect()
}
