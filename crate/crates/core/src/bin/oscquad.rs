use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser};

use oscquad::bench::{self, RefSource, Rule, RuleParams, RunConfig, RunRecord};
use oscquad::registry::{Amplitude, Phase};

/// Oscillatory quadrature benchmarks: single runs, κ sweeps and the
/// numbered experiments, written as CSV.
#[derive(Debug, Parser)]
#[command(name = "oscquad", version)]
#[command(group(ArgGroup::new("mode").required(true).args(["kappa", "kappa_list", "kappa_range", "example"])))]
struct Cli {
    /// filon | cmfp_smooth | cmfe_smooth | cmfp_full | cmfe_full
    #[arg(long, value_parser = parse::<Rule>)]
    rule: Option<Rule>,

    /// one | exp | sqrt | log | invsqrt
    #[arg(long = "f", value_parser = parse::<Amplitude>)]
    amplitude: Option<Amplitude>,

    /// linear | square | cube | sinmix
    #[arg(long = "g", value_parser = parse::<Phase>)]
    phase: Option<Phase>,

    #[arg(long)]
    kappa: Option<f64>,

    /// Comma-separated wave numbers.
    #[arg(long, value_delimiter = ',')]
    kappa_list: Option<Vec<f64>>,

    /// start:stop:count, logarithmically spaced.
    #[arg(long)]
    kappa_range: Option<String>,

    /// Reproduce experiment 1..=7.
    #[arg(long)]
    example: Option<u32>,

    #[arg(long)]
    n: Option<usize>,

    #[arg(long)]
    m: Option<usize>,

    #[arg(long)]
    s: Option<usize>,

    #[arg(long)]
    mtilde: Option<usize>,

    #[arg(long)]
    gamma: Option<f64>,

    #[arg(long)]
    epsilon: Option<f64>,

    /// Singularity index used for the log amplitude.
    #[arg(long, allow_negative_numbers = true)]
    log_mu: Option<f64>,

    /// closed | asymptotic | brute (default: first available)
    #[arg(long = "ref", value_parser = parse::<RefSource>)]
    reference: Option<RefSource>,

    /// Append scaled_err = kappa^p |value - ref|.
    #[arg(long, allow_negative_numbers = true)]
    scale: Option<f64>,

    /// Aligned text instead of CSV.
    #[arg(long)]
    pretty: bool,

    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse<T>(s: &str) -> Result<T, String>
where
    T: std::str::FromStr<Err = oscquad::QuadError>,
{
    s.parse::<T>().map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Numerical(String),
}

fn parse_range(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(format!("expected start:stop:count, got {text:?}"));
    };
    let start: f64 = start.parse().map_err(|_| format!("bad start {start:?}"))?;
    let stop: f64 = stop.parse().map_err(|_| format!("bad stop {stop:?}"))?;
    let count: usize = count.parse().map_err(|_| format!("bad count {count:?}"))?;
    if !(start > 0.0 && stop > 0.0) || count == 0 {
        return Err("range needs positive endpoints and a positive count".into());
    }
    Ok(bench::log_space(start, stop, count))
}

fn build_config(cli: &Cli) -> Result<(RunConfig, Vec<f64>), Failure> {
    let usage = |msg: &str| Failure::Usage(msg.to_string());
    let rule = cli.rule.ok_or_else(|| usage("--rule is required"))?;
    let amplitude = cli.amplitude.ok_or_else(|| usage("--f is required"))?;
    let phase = cli.phase.ok_or_else(|| usage("--g is required"))?;
    if !rule.applies_to(amplitude, phase) {
        return Err(usage(&format!(
            "rule {rule} needs a smooth amplitude and an oscillator without stationary point (got f={amplitude}, g={phase})"
        )));
    }
    let params = RuleParams {
        n: cli.n,
        m: cli.m,
        s: cli.s,
        m_tilde: cli.mtilde,
        gamma: cli.gamma,
        epsilon: cli.epsilon,
    };
    params
        .check(rule)
        .map_err(|e| Failure::Usage(e.to_string()))?;

    let kappas = match (&cli.kappa, &cli.kappa_list, &cli.kappa_range) {
        (Some(k), _, _) => vec![*k],
        (_, Some(list), _) => list.clone(),
        (_, _, Some(range)) => parse_range(range).map_err(Failure::Usage)?,
        _ => unreachable!("clap enforces a mode"),
    };
    if let Some(k) = kappas.iter().find(|k| !(**k > 1.0 && k.is_finite())) {
        return Err(usage(&format!(
            "wave numbers must be finite and > 1, got {k}"
        )));
    }
    let mut config = RunConfig::new(rule, amplitude, phase, kappas[0], params)
        .with_reference(cli.reference.unwrap_or_default());
    config.log_mu = cli.log_mu;
    Ok((config, kappas))
}

fn records(cli: &Cli) -> Result<Vec<RunRecord>, Failure> {
    if let Some(id) = cli.example {
        if !(1..=7).contains(&id) {
            return Err(Failure::Usage(format!(
                "--example must be in 1..=7, got {id}"
            )));
        }
        return bench::run_example(id).map_err(|e| Failure::Numerical(e.to_string()));
    }
    let (config, kappas) = build_config(cli)?;
    bench::sweep(&config, &kappas).map_err(|e| Failure::Numerical(e.to_string()))
}

fn write_pretty(records: &[RunRecord], out: &mut dyn Write, scale: Option<f64>) -> io::Result<()> {
    writeln!(
        out,
        "{:<12} {:<8} {:<7} {:>9} {:<36} {:>24} {:>24} {:>10} {:>7} {:>10}{}",
        "rule",
        "f",
        "g",
        "kappa",
        "params",
        "value_re",
        "value_im",
        "rel_err",
        "N",
        "ref",
        if scale.is_some() { "  scaled_err" } else { "" }
    )?;
    for r in records {
        let scaled = scale.map_or(String::new(), |p| {
            format!("  {:.3e}", r.kappa.powf(p) * r.abs_err())
        });
        writeln!(
            out,
            "{:<12} {:<8} {:<7} {:>9.2e} {:<36} {:>24.16e} {:>24.16e} {:>10.3e} {:>7} {:>10}{}",
            r.rule,
            r.integrand,
            r.oscillator,
            r.kappa,
            r.params,
            r.value_re,
            r.value_im,
            r.rel_err,
            r.n_evals,
            r.ref_kind,
            scaled
        )?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let rows = match records(&cli) {
        Ok(rows) => rows,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical error: {msg}");
            return ExitCode::from(3);
        }
    };

    let mut sink: Box<dyn Write> = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(f),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(io::stdout().lock()),
    };
    let written = if cli.pretty {
        write_pretty(&rows, &mut sink, cli.scale).map_err(|e| e.to_string())
    } else {
        bench::write_csv(&rows, &mut sink, cli.scale).map_err(|e| e.to_string())
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
