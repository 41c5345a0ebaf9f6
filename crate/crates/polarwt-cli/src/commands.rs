//! The four CLI commands: construction summary, roundtrip trace, and
//! the reliability and equivocation CSV sweeps.

use std::fmt::Write as _;
use std::io::Write as _;

use polarwt::construct::polarization_threshold;
use polarwt::{
    bhattacharyya_bec, block_error_rate, decode_bob, encode_secret, leakage_sweep,
    secrecy_capacity, select_index_sets, BecChannel, BitVec, WiretapCodeConfig,
};
use rand::Rng;

use crate::spec::{ExperimentSpec, FrozenSource, ModeArg};
use crate::CliError;

/// Writes finished output to the experiment's `--out` path, or stdout.
fn emit(spec: &ExperimentSpec, text: &str) -> Result<(), CliError> {
    match &spec.out {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(())
        }
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn build_config(
    spec: &ExperimentSpec,
    rate: Option<f64>,
    idx: u64,
) -> Result<WiretapCodeConfig, CliError> {
    let config = select_index_sets(spec.n, spec.eps_m, spec.eps_w, spec.construction_mode(rate))?;
    match &spec.frozen {
        FrozenSource::Bits(bits) => Ok(config.assign_frozen_fixed(bits.clone())?),
        FrozenSource::Seed(_) => Ok(config.assign_frozen_random(&mut spec.frozen_rng(idx))),
    }
}

pub fn cmd_construct(spec: &ExperimentSpec) -> Result<(), CliError> {
    let rate = spec.rates.first().copied();
    let config = select_index_sets(spec.n, spec.eps_m, spec.eps_w, spec.construction_mode(rate))?;
    let t = polarization_threshold(spec.n, spec.beta);
    let z_m = bhattacharyya_bec(BecChannel::new(spec.eps_m)?, spec.n);
    let z_w = bhattacharyya_bec(BecChannel::new(spec.eps_w)?, spec.n);
    let good_m = z_m.z().iter().filter(|&&z| z <= t).count();
    let good_w = z_w.z().iter().filter(|&&z| z <= t).count();
    let cs = secrecy_capacity(spec.eps_m, spec.eps_w)?;

    let mut text = String::new();
    let _ = writeln!(text, "N = {}", config.block_len());
    let _ = writeln!(text, "|A_m| = {good_m}");
    let _ = writeln!(text, "|A_w| = {good_w}");
    let _ = writeln!(text, "k = {}", config.k());
    let _ = writeln!(text, "|random| = {}", config.set_random().len());
    let _ = writeln!(text, "|frozen| = {}", config.set_frozen().len());
    let _ = writeln!(text, "R = {:.4}", config.rate());
    let _ = writeln!(text, "C_s = {cs:.4}");
    let _ = writeln!(text, "threshold = {t:.6e}");
    print!("{text}");

    if let Some(path) = &spec.out {
        let file = crate::spec::ConfigFile {
            n: Some(spec.n),
            eps_m: Some(spec.eps_m),
            eps_w: Some(spec.eps_w),
            mode: Some(
                match spec.mode {
                    ModeArg::Threshold => "threshold",
                    ModeArg::RateTargeted => "rate-targeted",
                }
                .into(),
            ),
            rate,
            rates: None,
            beta: Some(spec.beta),
            frozen_seed: match spec.frozen {
                FrozenSource::Seed(s) => Some(s),
                FrozenSource::Bits(_) => None,
            },
            frozen_bits: match &spec.frozen {
                FrozenSource::Bits(b) => Some(b.to_string()),
                FrozenSource::Seed(_) => None,
            },
        };
        let toml = toml::to_string(&file)
            .map_err(|e| CliError::Validation(format!("config serialization failed: {e}")))?;
        std::fs::write(path, toml)?;
    }
    Ok(())
}

/// Decodes a hex message into exactly k bits (4 bits per digit, most
/// significant bit of each digit first).
fn parse_message_hex(hex: &str, k: usize) -> Result<BitVec, CliError> {
    let needed = k.div_ceil(4);
    if hex.len() != needed {
        return Err(CliError::Validation(format!(
            "message-hex must have {needed} hex digits for k = {k}, got {}",
            hex.len()
        )));
    }
    let mut bits = BitVec::zeros(k);
    for (j, c) in hex.chars().enumerate() {
        let v = c
            .to_digit(16)
            .ok_or_else(|| CliError::Validation(format!("bad hex digit {c:?}")))?;
        for b in 0..4 {
            let i = 4 * j + b;
            if i < k {
                bits.set(i, (v >> (3 - b)) & 1 == 1);
            }
        }
    }
    Ok(bits)
}

pub fn cmd_roundtrip(spec: &ExperimentSpec, message_hex: Option<&str>) -> Result<(), CliError> {
    let rate = spec.rates.first().copied();
    let config = build_config(spec, rate, 0)?;
    let mut rng = spec.noise_rng(0);

    let msg = match message_hex {
        Some(h) => parse_message_hex(h, config.k())?,
        None => {
            let mut m = BitVec::zeros(config.k());
            for i in 0..m.len() {
                m.set(i, rng.gen_bool(0.5));
            }
            m
        }
    };
    let mut randomness = BitVec::zeros(config.set_random().len());
    for i in 0..randomness.len() {
        randomness.set(i, rng.gen_bool(0.5));
    }
    let rec = encode_secret(&msg, &config, &randomness)?;
    let received = BecChannel::new(spec.eps_m)?.transmit(&rec.codeword, &mut rng);
    let decoded = decode_bob(&received, &config)?;
    let success = decoded.message == msg && decoded.randomness == randomness;

    println!("message    = {msg}");
    println!("u          = {}", rec.u_word);
    println!("codeword   = {}", rec.codeword);
    println!("received   = {received}");
    println!("decoded    = {}", decoded.message);
    println!("consistent = {}", decoded.consistent);
    println!("success    = {success}");
    Ok(())
}

pub fn cmd_reliability(spec: &ExperimentSpec) -> Result<(), CliError> {
    let mut csv = String::from("rate,p_hat,bound,trials\n");
    let runs: Vec<Option<f64>> = if spec.mode == ModeArg::Threshold {
        vec![None]
    } else {
        spec.rates.iter().copied().map(Some).collect()
    };
    for (idx, rate) in runs.into_iter().enumerate() {
        let config = build_config(spec, rate, idx as u64).map_err(|e| match (rate, e) {
            (Some(r), CliError::Core(err)) => CliError::Annotated(format!("rate {r}"), err),
            (_, e) => e,
        })?;
        let est = block_error_rate(&config, spec.trials, &mut spec.noise_rng(idx as u64))?;
        let _ = writeln!(
            csv,
            "{:.4},{:.6},{:.6},{}",
            config.rate(),
            est.p_hat,
            est.bound,
            spec.trials
        );
    }
    emit(spec, &csv)
}

pub fn cmd_equivocation(spec: &ExperimentSpec) -> Result<(), CliError> {
    if spec.mode != ModeArg::RateTargeted {
        return Err(CliError::Validation(
            "equivocation sweeps need rate-targeted mode with --rate or --rates".into(),
        ));
    }
    let reports = leakage_sweep(
        spec.n,
        spec.eps_m,
        spec.eps_w,
        &spec.rates,
        spec.trials,
        &mut spec.sweep_rng(),
        spec.variant,
    )?;
    let mut csv = String::from("rate,re_mean,leak_mean,re_stderr,trials\n");
    for r in &reports {
        let _ = writeln!(
            csv,
            "{:.4},{:.4},{:.4},{:.4},{}",
            r.rate, r.re_mean, r.leak_mean, r.re_stderr, r.trials
        );
    }
    emit(spec, &csv)
}
