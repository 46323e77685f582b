//! Parameter sweeps over synthetic benchmarks with CSV output.
//!
//! Each sweep value is repeated on freshly generated graphs. Run `i` of sweep
//! value `s` uses the seed `derive_seed(master, [s, i])` for both generation
//! and detection, so rows are reproducible however the runs are scheduled.

use std::io::{self, Write};
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::detection::{detect, DetectionParams, ParamError};
use crate::generators::{
    gen_lfr_like, gen_planted, Benchmark, GenError, LfrLikeConfig, PlantedConfig,
};
use crate::metrics::scores;
use crate::rng::derive_seed;

pub const CSV_HEADER: &str = "sweep,tau,repeats,nmi_mean,nmi_std,ari_mean,ari_std,ms_mean";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BenchError {
    #[error("invalid sweep: {0}")]
    Range(String),
    #[error(transparent)]
    Generator(#[from] GenError),
    #[error(transparent)]
    Params(#[from] ParamError),
}

/// Which benchmark family to sweep; the swept field (`z_out` or `mu`) of the
/// base configuration is overwritten per row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Suite {
    Planted(PlantedConfig),
    LfrLike(LfrLikeConfig),
}

impl Suite {
    pub fn planted() -> Self {
        Suite::Planted(PlantedConfig::default())
    }

    pub fn lfr_like() -> Self {
        Suite::LfrLike(LfrLikeConfig::default())
    }

    /// `z_out` from 1 to 8, or `mu` from 0.1 to 0.8.
    pub fn default_values(&self) -> Vec<f64> {
        match self {
            Suite::Planted(_) => sweep_range(1.0, 8.0, 1.0).expect("valid"),
            Suite::LfrLike(_) => sweep_range(0.1, 0.8, 0.1).expect("valid"),
        }
    }

    pub fn generate(&self, value: f64, seed: u64) -> Result<Benchmark, GenError> {
        match *self {
            Suite::Planted(base) => gen_planted(&PlantedConfig {
                z_out: value,
                seed,
                ..base
            }),
            Suite::LfrLike(base) => gen_lfr_like(&LfrLikeConfig {
                mu: value,
                seed,
                ..base
            }),
        }
    }
}

/// Inclusive arithmetic progression `start, start + step, ..., <= end`.
pub fn sweep_range(start: f64, end: f64, step: f64) -> Result<Vec<f64>, BenchError> {
    if !(start.is_finite() && end.is_finite() && step.is_finite()) || step <= 0.0 || end < start {
        return Err(BenchError::Range(format!(
            "need start <= end and step > 0 (got {start}:{end}:{step})"
        )));
    }
    let count = ((end - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| {
            let x = start + i as f64 * step;
            (x * 1e9).round() / 1e9
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub suite: Suite,
    pub values: Vec<f64>,
    pub taus: Vec<f64>,
    pub repeats: usize,
    pub master_seed: u64,
    /// Detection settings; `tau` and `seed` are replaced per run.
    pub params: DetectionParams,
}

impl SweepConfig {
    pub fn new(suite: Suite) -> Self {
        SweepConfig {
            values: suite.default_values(),
            suite,
            taus: vec![0.2],
            repeats: 10,
            master_seed: 0,
            params: DetectionParams::default(),
        }
    }

    pub fn run_seed(&self, value: f64, repeat: usize) -> u64 {
        derive_seed(self.master_seed, &[value.to_bits(), repeat as u64])
    }
}

/// Aggregated scores for one `(sweep value, tau)` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRow {
    pub sweep: f64,
    pub tau: f64,
    pub repeats: usize,
    pub nmi_mean: f64,
    pub nmi_std: f64,
    pub ari_mean: f64,
    pub ari_std: f64,
    pub ms_mean: f64,
}

impl BenchRow {
    pub fn csv_line(&self, timing: bool) -> String {
        let ms = if timing { self.ms_mean } else { 0.0 };
        format!(
            "{},{},{},{:.6},{:.6},{:.6},{:.6},{:.3}",
            self.sweep,
            self.tau,
            self.repeats,
            self.nmi_mean,
            self.nmi_std,
            self.ari_mean,
            self.ari_std,
            ms
        )
    }
}

/// Mean and sample standard deviation.
pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() == 1 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

struct RunScores {
    nmi: f64,
    ari: f64,
    ms: f64,
}

/// Runs every `(value, repeat)` graph against every tau.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<BenchRow>, BenchError> {
    if config.repeats == 0 {
        return Err(BenchError::Range("repeats must be at least 1".into()));
    }
    if config.values.is_empty() || config.taus.is_empty() {
        return Err(BenchError::Range("empty sweep".into()));
    }
    for &tau in &config.taus {
        config.params.with_tau(tau).validate()?;
    }

    let jobs: Vec<(usize, usize)> = (0..config.values.len())
        .flat_map(|s| (0..config.repeats).map(move |i| (s, i)))
        .collect();
    let results: Vec<Vec<RunScores>> = jobs
        .par_iter()
        .map(|&(s, i)| {
            let value = config.values[s];
            let seed = config.run_seed(value, i);
            let bench = config.suite.generate(value, seed)?;
            config
                .taus
                .iter()
                .map(|&tau| {
                    let params = DetectionParams {
                        tau,
                        seed,
                        ..config.params
                    };
                    let start = Instant::now();
                    let detection = detect(&bench.graph, &params)?;
                    let ms = start.elapsed().as_secs_f64() * 1e3;
                    let sc = scores(&detection.partition, &bench.truth).expect("same vertex set");
                    Ok(RunScores {
                        nmi: sc.nmi,
                        ari: sc.ari,
                        ms,
                    })
                })
                .collect::<Result<Vec<_>, BenchError>>()
        })
        .collect::<Result<_, BenchError>>()?;

    let mut rows = Vec::new();
    for (s, &value) in config.values.iter().enumerate() {
        let runs = &results[s * config.repeats..(s + 1) * config.repeats];
        for (t, &tau) in config.taus.iter().enumerate() {
            let pick = |f: fn(&RunScores) -> f64| runs.iter().map(|r| f(&r[t])).collect::<Vec<_>>();
            let (nmi_mean, nmi_std) = mean_std(&pick(|r| r.nmi));
            let (ari_mean, ari_std) = mean_std(&pick(|r| r.ari));
            let (ms_mean, _) = mean_std(&pick(|r| r.ms));
            rows.push(BenchRow {
                sweep: value,
                tau,
                repeats: config.repeats,
                nmi_mean,
                nmi_std,
                ari_mean,
                ari_std,
                ms_mean,
            });
        }
    }
    Ok(rows)
}

/// Writes the header and one line per row. With `timing` off the `ms_mean`
/// column is written as zero so the output is byte-reproducible.
pub fn write_csv<W: Write>(rows: &[BenchRow], timing: bool, mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.csv_line(timing))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(sweep_range(1.0, 8.0, 1.0).unwrap().len(), 8);
        let mus = sweep_range(0.1, 0.8, 0.1).unwrap();
        assert_eq!(mus.len(), 8);
        assert_eq!(mus[2], 0.3);
        assert_eq!(mus[7], 0.8);
        assert!(sweep_range(2.0, 1.0, 1.0).is_err());
        assert!(sweep_range(1.0, 2.0, 0.0).is_err());
    }

    #[test]
    fn mean_std_basics() {
        assert_eq!(mean_std(&[2.0]), (2.0, 0.0));
        let (m, s) = mean_std(&[1.0, 3.0]);
        assert_eq!(m, 2.0);
        assert!((s - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn small_planted_sweep() {
        let config = SweepConfig {
            values: vec![1.0, 2.0],
            taus: vec![0.1, 0.2],
            repeats: 3,
            ..SweepConfig::new(Suite::planted())
        };
        let rows = run_sweep(&config).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.repeats == 3 && r.nmi_std >= 0.0));
        let again = run_sweep(&config).unwrap();
        for (a, b) in rows.iter().zip(&again) {
            assert_eq!(a.csv_line(false), b.csv_line(false));
        }
    }

    #[test]
    fn zero_repeats_rejected() {
        let config = SweepConfig {
            repeats: 0,
            ..SweepConfig::new(Suite::planted())
        };
        assert!(matches!(run_sweep(&config), Err(BenchError::Range(_))));
    }
}
