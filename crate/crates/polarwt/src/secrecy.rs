//! Secrecy measurement: exact per-pattern equivocation via the
//! rank difference of column-restricted parity-check matrices, an
//! exhaustive-enumeration oracle, and Monte Carlo aggregation of
//! equivocation-rate reports across a rate sweep.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::construct::{select_index_sets, ConstructionMode, WiretapCodeConfig};
use crate::error::Error;
use crate::gf2::{BitVec, Gf2Matrix};
use crate::polar::generator_matrix;
use crate::{codec, Result};

/// Enumeration bound for the brute-force entropy oracle.
pub const ENUMERATION_LIMIT: usize = 20;

/// Which generator row sets back the nested parity-check pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixVariant {
    /// Spans of the information rows only. The coset offset from the
    /// frozen vector shifts the affine system's right-hand side, not
    /// its solution count, so this is the measure-exact choice.
    Homogeneous,
    /// Row sets additionally include the frozen rows whose frozen bit
    /// is nonzero. Retained for comparison with the counting argument
    /// that derives the rank formula.
    PaperLiteral,
}

/// Parity checks of the overall code and of the sub-code, plus
/// transposed copies for fast column-restricted ranks.
#[derive(Debug, Clone)]
pub struct NestedCodeMatrices {
    h_t: Gf2Matrix,
    h_s: Gf2Matrix,
    ht_cols: Gf2Matrix,
    hs_cols: Gf2Matrix,
    k: usize,
    variant: MatrixVariant,
}

impl NestedCodeMatrices {
    /// Parity check of the overall code span.
    pub fn h_t(&self) -> &Gf2Matrix {
        &self.h_t
    }

    /// Parity check of the sub-code span.
    pub fn h_s(&self) -> &Gf2Matrix {
        &self.h_s
    }

    pub fn variant(&self) -> MatrixVariant {
        self.variant
    }

    /// Block length N.
    pub fn block_len(&self) -> usize {
        self.h_t.cols()
    }

    /// Eve's exact message equivocation in bits for one erasure
    /// pattern: rank of the sub-code parity check restricted to the
    /// erased columns minus the same rank for the overall code.
    /// Always in [0, k].
    pub fn equivocation_given_erasures(&self, erased: &[usize]) -> f64 {
        // rank of a column submatrix equals the row rank of the same
        // selection in the transposed copy
        let rank_s = self.hs_cols.rank_of_rows(erased);
        let rank_t = self.ht_cols.rank_of_rows(erased);
        debug_assert!(rank_s >= rank_t && rank_s - rank_t <= self.k);
        (rank_s - rank_t) as f64
    }
}

/// Builds the nested parity-check pair for a configured code.
pub fn build_nested_matrices(
    config: &WiretapCodeConfig,
    variant: MatrixVariant,
) -> Result<NestedCodeMatrices> {
    let frozen = config.frozen_vector()?;
    let g = generator_matrix(config.block_exp())?;

    let mut overall_rows = config.set_information();
    let mut sub_rows = config.set_random().to_vec();
    if variant == MatrixVariant::PaperLiteral {
        let nonzero_frozen: Vec<usize> = config
            .set_frozen()
            .iter()
            .enumerate()
            .filter(|&(j, _)| frozen.get(j))
            .map(|(_, &i)| i)
            .collect();
        overall_rows.extend_from_slice(&nonzero_frozen);
        overall_rows.sort_unstable();
        sub_rows.extend_from_slice(&nonzero_frozen);
        sub_rows.sort_unstable();
    }

    let span = |rows: &[usize]| -> Result<Gf2Matrix> {
        let picked: Vec<BitVec> = rows.iter().map(|&i| g.row_bits(i)).collect();
        let mut m = Gf2Matrix::from_rows(&picked)?;
        if rows.is_empty() {
            m = Gf2Matrix::zeros(0, config.block_len());
        }
        Ok(m)
    };

    let h_t = span(&overall_rows)?.parity_check_from_generator();
    let h_s = span(&sub_rows)?.parity_check_from_generator();
    let ht_cols = h_t.transposed();
    let hs_cols = h_s.transposed();
    Ok(NestedCodeMatrices {
        h_t,
        h_s,
        ht_cols,
        hs_cols,
        k: config.k(),
        variant,
    })
}

/// Exhaustive oracle for the rank formula: enumerates every
/// (message, randomness) pair with the fixed frozen vector, groups
/// codewords by their restriction to the non-erased positions, and
/// returns the exact conditional entropy H(M | Z) in bits for the
/// given erasure pattern.
pub fn brute_force_equivocation(config: &WiretapCodeConfig, erased: &[usize]) -> Result<f64> {
    let k = config.k();
    let nr = config.set_random().len();
    if k + nr > ENUMERATION_LIMIT {
        return Err(Error::EnumerationBoundExceeded {
            bits: k + nr,
            limit: ENUMERATION_LIMIT,
        });
    }
    let n_len = config.block_len();
    let mut is_erased = vec![false; n_len];
    for &i in erased {
        if i >= n_len {
            return Err(Error::IndexOutOfRange {
                index: i,
                limit: n_len,
            });
        }
        is_erased[i] = true;
    }
    let visible: Vec<usize> = (0..n_len).filter(|&i| !is_erased[i]).collect();

    // observation -> (message -> count)
    let mut groups: BTreeMap<BitVec, BTreeMap<u64, u64>> = BTreeMap::new();
    for m in 0..1u64 << k {
        let msg = BitVec::from_uint(m, k);
        for r in 0..1u64 << nr {
            let rec = codec::encode_secret(&msg, config, &BitVec::from_uint(r, nr))?;
            let mut obs = BitVec::zeros(visible.len());
            for (j, &i) in visible.iter().enumerate() {
                obs.set(j, rec.codeword.get(i));
            }
            *groups.entry(obs).or_default().entry(m).or_default() += 1;
        }
    }

    let total = (1u64 << (k + nr)) as f64;
    let mut entropy = 0.0;
    for counts in groups.values() {
        let group_total: u64 = counts.values().sum();
        let mut h = 0.0;
        for &c in counts.values() {
            let p = c as f64 / group_total as f64;
            h -= p * libm::log2(p);
        }
        entropy += (group_total as f64 / total) * h;
    }
    Ok(entropy)
}

/// One row of a rate sweep: mean equivocation rate H(M|Z^N)/N and the
/// complementary normalized leakage, with trial statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivocationReport {
    /// Achieved rate k/N.
    pub rate: f64,
    /// Mean equivocation rate over sampled erasure patterns.
    pub re_mean: f64,
    /// Normalized leakage I(M;Z^N)/N = rate - re_mean.
    pub leak_mean: f64,
    pub trials: usize,
    pub re_stderr: f64,
}

/// Sweeps rates with the rate-targeted construction: one random frozen
/// vector fixed per rate, `trials` erasure patterns sampled from
/// BEC(eps_w) per rate, equivocation evaluated by the rank formula.
///
/// Per-rate sub-streams are seeded up front from `rng`, so trial
/// evaluation order cannot change the results.
pub fn leakage_sweep(
    n: usize,
    eps_m: f64,
    eps_w: f64,
    rates: &[f64],
    trials: usize,
    rng: &mut impl Rng,
    variant: MatrixVariant,
) -> Result<Vec<EquivocationReport>> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1"));
    }
    let seeds: Vec<u64> = (0..rates.len()).map(|_| rng.gen()).collect();
    rates
        .iter()
        .zip(seeds)
        .map(|(&rate, seed)| {
            let mut sub = ChaCha12Rng::seed_from_u64(seed);
            let config =
                select_index_sets(n, eps_m, eps_w, ConstructionMode::RateTargeted { rate })?
                    .assign_frozen_random(&mut sub);
            let matrices = build_nested_matrices(&config, variant)?;
            let n_len = config.block_len() as f64;
            let mut values = Vec::with_capacity(trials);
            let mut pattern = Vec::new();
            for _ in 0..trials {
                pattern.clear();
                for i in 0..config.block_len() {
                    if sub.gen_bool(eps_w) {
                        pattern.push(i);
                    }
                }
                values.push(matrices.equivocation_given_erasures(&pattern) / n_len);
            }
            let mean = values.iter().sum::<f64>() / trials as f64;
            let stderr = if trials > 1 {
                let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
                    / (trials - 1) as f64;
                libm::sqrt(var / trials as f64)
            } else {
                0.0
            };
            let achieved = config.rate();
            Ok(EquivocationReport {
                rate: achieved,
                re_mean: mean,
                leak_mean: achieved - mean,
                trials,
                re_stderr: stderr,
            })
        })
        .collect()
}
