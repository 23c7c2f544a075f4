//! Named amplitudes and oscillators used by the benchmark driver.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, QuadError, Result};
use crate::problem::{IntegrandSpec, OscillatorSpec};

/// Singularity index assigned to `ln x` by default. Any value in `(-1, 0)`
/// is admissible; smaller values grade the singular mesh more strongly.
pub const LOG_MU: f64 = -0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Amplitude {
    One,
    Exp,
    Sqrt,
    Log,
    InvSqrt,
}

impl Amplitude {
    pub const ALL: [Amplitude; 5] = [
        Amplitude::One,
        Amplitude::Exp,
        Amplitude::Sqrt,
        Amplitude::Log,
        Amplitude::InvSqrt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Amplitude::One => "one",
            Amplitude::Exp => "exp",
            Amplitude::Sqrt => "sqrt",
            Amplitude::Log => "log",
            Amplitude::InvSqrt => "invsqrt",
        }
    }

    pub fn mu(self) -> f64 {
        match self {
            Amplitude::One | Amplitude::Exp => 0.0,
            Amplitude::Sqrt => 0.5,
            Amplitude::Log => LOG_MU,
            Amplitude::InvSqrt => -0.5,
        }
    }

    pub fn is_singular(self) -> bool {
        matches!(self, Amplitude::Sqrt | Amplitude::Log | Amplitude::InvSqrt)
    }

    /// Exponent `μ` when `f = x^μ`.
    pub fn power(self) -> Option<f64> {
        match self {
            Amplitude::One => Some(0.0),
            Amplitude::Sqrt => Some(0.5),
            Amplitude::InvSqrt => Some(-0.5),
            Amplitude::Exp | Amplitude::Log => None,
        }
    }

    pub fn spec(self) -> IntegrandSpec {
        self.spec_with_mu(self.mu())
            .expect("built-in amplitudes are valid")
    }

    /// Same amplitude with an overridden singularity index; only `log`
    /// accepts a value other than its default.
    pub fn spec_with_mu(self, mu: f64) -> Result<IntegrandSpec> {
        if self != Amplitude::Log && mu != self.mu() {
            return Err(invalid(
                "mu",
                format!("{} has fixed index {}", self.name(), self.mu()),
            ));
        }
        match self {
            Amplitude::One => IntegrandSpec::smooth_real(|_| 1.0),
            Amplitude::Exp => IntegrandSpec::smooth_real(f64::exp),
            Amplitude::Sqrt => IntegrandSpec::singular_real(f64::sqrt, mu),
            Amplitude::Log => IntegrandSpec::singular_real(f64::ln, mu),
            Amplitude::InvSqrt => IntegrandSpec::singular_real(|x| 1.0 / x.sqrt(), mu),
        }
    }
}

impl fmt::Display for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Amplitude {
    type Err = QuadError;

    fn from_str(s: &str) -> Result<Self> {
        Amplitude::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| invalid("f", format!("unknown amplitude {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Linear,
    Square,
    Cube,
    /// `(sin(πx/2) + 2x)/3`.
    SinMix,
}

impl Phase {
    pub const ALL: [Phase; 4] = [Phase::Linear, Phase::Square, Phase::Cube, Phase::SinMix];

    pub fn name(self) -> &'static str {
        match self {
            Phase::Linear => "linear",
            Phase::Square => "square",
            Phase::Cube => "cube",
            Phase::SinMix => "sinmix",
        }
    }

    pub fn r(self) -> u32 {
        match self {
            Phase::Linear | Phase::SinMix => 0,
            Phase::Square => 1,
            Phase::Cube => 2,
        }
    }

    /// Exponent `k` when `g = x^k`.
    pub fn power(self) -> Option<u32> {
        match self {
            Phase::Linear => Some(1),
            Phase::Square => Some(2),
            Phase::Cube => Some(3),
            Phase::SinMix => None,
        }
    }

    pub fn spec(self) -> OscillatorSpec {
        match self {
            Phase::Linear => OscillatorSpec::new(|x| x, |_| 1.0, 0),
            Phase::Square => {
                OscillatorSpec::new(|x| x * x, |x| 2.0 * x, 1).with_top_derivative(|_| 2.0)
            }
            Phase::Cube => {
                OscillatorSpec::new(|x| x * x * x, |x| 3.0 * x * x, 2).with_top_derivative(|_| 6.0)
            }
            Phase::SinMix => OscillatorSpec::new(
                |x| ((PI * x / 2.0).sin() + 2.0 * x) / 3.0,
                |x| (PI / 2.0 * (PI * x / 2.0).cos() + 2.0) / 3.0,
                0,
            ),
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Phase {
    type Err = QuadError;

    fn from_str(s: &str) -> Result<Self> {
        Phase::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| invalid("g", format!("unknown oscillator {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for a in Amplitude::ALL {
            assert_eq!(a.name().parse::<Amplitude>().unwrap(), a);
        }
        for g in Phase::ALL {
            assert_eq!(g.name().parse::<Phase>().unwrap(), g);
        }
        assert!("cosh".parse::<Amplitude>().is_err());
    }

    #[test]
    fn oscillators_validate() {
        for g in Phase::ALL {
            g.spec().validate().unwrap();
        }
    }

    #[test]
    fn log_index_is_tunable() {
        assert!(Amplitude::Log.spec_with_mu(-0.3).is_ok());
        assert!(Amplitude::Sqrt.spec_with_mu(0.2).is_err());
    }
}
