//! Experiment specification: config-file ingestion and flag merging.
//!
//! Config files are TOML with the keys `n`, `eps_m`, `eps_w`, `mode`
//! (`"threshold"` or `"rate-targeted"`), `rate` or `rates`, `beta`, and
//! either `frozen_seed` or `frozen_bits`. Command-line flags override
//! file values. A single master seed determines every random draw:
//! sub-streams are split off deterministically per purpose and per
//! rate, so serial and parallel runs agree.

use std::path::{Path, PathBuf};

use polarwt::{BitVec, ConstructionMode, MatrixVariant};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Raw config-file contents.
#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub n: Option<usize>,
    pub eps_m: Option<f64>,
    pub eps_w: Option<f64>,
    pub mode: Option<String>,
    pub rate: Option<f64>,
    pub rates: Option<Vec<f64>>,
    pub beta: Option<f64>,
    pub frozen_seed: Option<u64>,
    pub frozen_bits: Option<String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)?;
        toml::from_str(&text)
            .map_err(|e| CliError::Validation(format!("bad config file {}: {e}", path.display())))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModeArg {
    Threshold,
    #[value(name = "rate-targeted")]
    RateTargeted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum VariantArg {
    Homogeneous,
    #[value(name = "paper-literal")]
    PaperLiteral,
}

/// Shared flags for every subcommand.
#[derive(Debug, clap::Args)]
pub struct CommonArgs {
    /// TOML config file; flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Block exponent (N = 2^n)
    #[arg(long)]
    pub n: Option<usize>,
    /// Main-channel erasure probability
    #[arg(long = "eps-m")]
    pub eps_m: Option<f64>,
    /// Wiretap-channel erasure probability (must be >= eps-m)
    #[arg(long = "eps-w")]
    pub eps_w: Option<f64>,
    /// Index selection mode
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Single target rate
    #[arg(long)]
    pub rate: Option<f64>,
    /// Comma-separated rate list for sweeps
    #[arg(long, value_delimiter = ',')]
    pub rates: Option<Vec<f64>>,
    /// Polarization exponent in (0, 1/2)
    #[arg(long)]
    pub beta: Option<f64>,
    /// Monte Carlo trials
    #[arg(long)]
    pub trials: Option<usize>,
    /// Master seed; fully determines all random draws
    #[arg(long)]
    pub seed: Option<u64>,
    /// Nested-matrix variant for equivocation
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    /// Output file (CSV for sweeps, config file for construct)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Where the frozen vector comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum FrozenSource {
    /// Seed of a dedicated stream (defaults to the master seed).
    Seed(u64),
    /// Explicit bits, ascending frozen-index order.
    Bits(BitVec),
}

/// Fully resolved experiment parameters.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub n: usize,
    pub eps_m: f64,
    pub eps_w: f64,
    pub mode: ModeArg,
    pub rates: Vec<f64>,
    pub beta: f64,
    pub trials: usize,
    pub seed: u64,
    pub variant: MatrixVariant,
    pub frozen: FrozenSource,
    pub out: Option<PathBuf>,
}

pub const DEFAULT_TRIALS: usize = 1000;
pub const DEFAULT_SEED: u64 = 1;

impl ExperimentSpec {
    pub fn resolve(args: &CommonArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let n = args
            .n
            .or(file.n)
            .ok_or_else(|| CliError::Validation("missing --n".into()))?;
        let eps_m = args
            .eps_m
            .or(file.eps_m)
            .ok_or_else(|| CliError::Validation("missing --eps-m".into()))?;
        let eps_w = args
            .eps_w
            .or(file.eps_w)
            .ok_or_else(|| CliError::Validation("missing --eps-w".into()))?;
        if !(0.0..=1.0).contains(&eps_m) || !(0.0..=1.0).contains(&eps_w) {
            return Err(CliError::Validation(
                "erasure probabilities must lie in [0, 1]".into(),
            ));
        }
        if eps_w < eps_m {
            return Err(CliError::Validation(format!(
                "degradedness violation: eps-w ({eps_w}) must be >= eps-m ({eps_m})"
            )));
        }

        let mut rates: Vec<f64> = Vec::new();
        if let Some(r) = args.rate {
            rates.push(r);
        }
        if let Some(rs) = &args.rates {
            rates.extend(rs);
        }
        if rates.is_empty() {
            if let Some(r) = file.rate {
                rates.push(r);
            }
            if let Some(rs) = &file.rates {
                rates.extend(rs);
            }
        }

        let file_mode = match file.mode.as_deref() {
            None => None,
            Some("threshold") => Some(ModeArg::Threshold),
            Some("rate-targeted") => Some(ModeArg::RateTargeted),
            Some(other) => {
                return Err(CliError::Validation(format!(
                    "unknown mode {other:?} in config file"
                )))
            }
        };
        let mode = args.mode.or(file_mode).unwrap_or(if rates.is_empty() {
            ModeArg::Threshold
        } else {
            ModeArg::RateTargeted
        });
        if mode == ModeArg::RateTargeted && rates.is_empty() {
            return Err(CliError::Validation(
                "rate-targeted mode needs --rate or --rates".into(),
            ));
        }

        let seed = args.seed.unwrap_or(DEFAULT_SEED);
        let frozen = if let Some(bits) = &file.frozen_bits {
            let parsed: Result<Vec<bool>, _> = bits
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => Err(CliError::Validation(format!(
                        "frozen_bits may contain only 0/1, found {other:?}"
                    ))),
                })
                .collect();
            FrozenSource::Bits(BitVec::from_bools(&parsed?))
        } else {
            FrozenSource::Seed(file.frozen_seed.unwrap_or(seed))
        };

        Ok(ExperimentSpec {
            n,
            eps_m,
            eps_w,
            mode,
            rates,
            beta: args
                .beta
                .or(file.beta)
                .unwrap_or(polarwt::construct::DEFAULT_BETA),
            trials: args.trials.unwrap_or(DEFAULT_TRIALS),
            seed,
            variant: match args.variant.unwrap_or(VariantArg::Homogeneous) {
                VariantArg::Homogeneous => MatrixVariant::Homogeneous,
                VariantArg::PaperLiteral => MatrixVariant::PaperLiteral,
            },
            frozen,
            out: args.out.clone(),
        })
    }

    /// Construction mode for a particular rate of the sweep.
    pub fn construction_mode(&self, rate: Option<f64>) -> ConstructionMode {
        match self.mode {
            ModeArg::Threshold => ConstructionMode::Threshold { beta: self.beta },
            ModeArg::RateTargeted => ConstructionMode::RateTargeted {
                rate: rate.expect("rate-targeted mode resolved with at least one rate"),
            },
        }
    }

    /// Sub-stream used to draw the frozen vector for rate index `idx`.
    pub fn frozen_rng(&self, idx: u64) -> ChaCha12Rng {
        let seed = match self.frozen {
            FrozenSource::Seed(s) => s,
            FrozenSource::Bits(_) => self.seed,
        };
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(1 + idx);
        rng
    }

    /// Sub-stream used for channel noise and message draws for rate
    /// index `idx`.
    pub fn noise_rng(&self, idx: u64) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(1 << 32 | idx);
        rng
    }

    /// Sub-stream handed to the leakage sweep.
    pub fn sweep_rng(&self) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(2 << 32);
        rng
    }
}
