//! Named, seeded property checks that replay the theorems and
//! counterexamples on generated instances.
//!
//! Every trial draws from its own ChaCha8 stream (`seed`, stream = trial
//! index), so a failing trial is replayed by its seed and index alone.

mod checks;
pub mod gen;

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;
use core::time::Duration;

use rand::SeedableRng;

use crate::closure::SearchBounds;
use crate::error::{Error, Result};

pub use gen::{generate_instance, Instance, Profile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    P70,
    P80,
    P90,
    P100,
    A80,
    A90,
    A101,
    A120,
    A140,
    F20,
    Lem50,
    T4800,
}

impl CheckId {
    pub const ALL: [CheckId; 12] = [
        CheckId::P70,
        CheckId::P80,
        CheckId::P90,
        CheckId::P100,
        CheckId::A80,
        CheckId::A90,
        CheckId::A101,
        CheckId::A120,
        CheckId::A140,
        CheckId::F20,
        CheckId::Lem50,
        CheckId::T4800,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckId::P70 => "P70",
            CheckId::P80 => "P80",
            CheckId::P90 => "P90",
            CheckId::P100 => "P100",
            CheckId::A80 => "A80",
            CheckId::A90 => "A90",
            CheckId::A101 => "A101",
            CheckId::A120 => "A120",
            CheckId::A140 => "A140",
            CheckId::F20 => "F20",
            CheckId::Lem50 => "LEM50",
            CheckId::T4800 => "T4800",
        }
    }

    pub fn default_trials(&self) -> usize {
        match self {
            CheckId::P70 => 500,
            CheckId::F20 | CheckId::A101 => 200,
            CheckId::A90 => 4,
            CheckId::A140 => 6,
            _ => 100,
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<CheckId> {
        CheckId::ALL
            .iter()
            .copied()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownCheckId(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub check: CheckId,
    pub trials: usize,
    pub seed: u64,
    pub bounds: SearchBounds,
}

impl CheckConfig {
    pub fn new(check: CheckId, seed: u64) -> CheckConfig {
        CheckConfig {
            check,
            trials: check.default_trials(),
            seed,
            bounds: SearchBounds {
                max_deg: 2,
                radius: 1,
            },
        }
    }
}

/// Outcome of one trial. Bounded searches that neither prove nor refute
/// are inconclusive, never passes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub trial: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub check_id: CheckId,
    pub seed: u64,
    pub trials: usize,
    pub passes: usize,
    pub fails: usize,
    pub inconclusive: usize,
    pub counterexample: Option<Counterexample>,
    /// Wall time; only measured with the `std` feature.
    pub elapsed: Option<Duration>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.fails == 0
    }
}

/// The generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: usize) -> gen::Rng8 {
    let mut rng = gen::Rng8::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Replays a single trial.
pub fn run_trial(cfg: &CheckConfig, trial: usize) -> Outcome {
    let mut rng = trial_rng(cfg.seed, trial);
    match checks::run(cfg.check, &mut rng, trial, cfg.bounds) {
        Ok(o) => o,
        Err(e) => Outcome::Fail(alloc::format!("error: {e}")),
    }
}

pub fn run_check(cfg: &CheckConfig) -> Result<CheckReport> {
    if cfg.trials == 0 {
        return Err(Error::PreconditionViolated("at least one trial is required"));
    }
    #[cfg(feature = "std")]
    let start = std::time::Instant::now();
    let mut report = CheckReport {
        check_id: cfg.check,
        seed: cfg.seed,
        trials: cfg.trials,
        passes: 0,
        fails: 0,
        inconclusive: 0,
        counterexample: None,
        elapsed: None,
    };
    for trial in 0..cfg.trials {
        match run_trial(cfg, trial) {
            Outcome::Pass => report.passes += 1,
            Outcome::Inconclusive => report.inconclusive += 1,
            Outcome::Fail(detail) => {
                report.fails += 1;
                if report.counterexample.is_none() {
                    report.counterexample = Some(Counterexample { trial, detail });
                }
            }
        }
    }
    #[cfg(feature = "std")]
    {
        report.elapsed = Some(start.elapsed());
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
