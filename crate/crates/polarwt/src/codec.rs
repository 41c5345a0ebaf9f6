//! Secret encoder/decoder: map (message, random bits, frozen vector)
//! onto the polar input word, encode, and recover both at Bob via
//! successive cancellation.

use rand::Rng;

use crate::channel::{BecChannel, ErasureWord};
use crate::construct::WiretapCodeConfig;
use crate::error::Error;
use crate::gf2::BitVec;
use crate::polar::{bhattacharyya_bec, polar_encode, sc_decode_bec};
use crate::Result;

/// One encoding: the assembled input word, its codeword, and the
/// random bits that were used.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodingRecord {
    pub u_word: BitVec,
    pub codeword: BitVec,
    pub random_bits: BitVec,
}

/// Places the message on the message indices, the given random bits on
/// the random indices and the frozen vector on the frozen indices, then
/// polar-encodes the result.
pub fn encode_secret(
    msg: &BitVec,
    config: &WiretapCodeConfig,
    random_bits: &BitVec,
) -> Result<EncodingRecord> {
    if msg.len() != config.k() {
        return Err(Error::LengthMismatch {
            expected: config.k(),
            got: msg.len(),
        });
    }
    if random_bits.len() != config.set_random().len() {
        return Err(Error::LengthMismatch {
            expected: config.set_random().len(),
            got: random_bits.len(),
        });
    }
    let frozen = config.frozen_vector()?;
    let mut u = BitVec::zeros(config.block_len());
    for (j, &i) in config.set_message().iter().enumerate() {
        u.set(i, msg.get(j));
    }
    for (j, &i) in config.set_random().iter().enumerate() {
        u.set(i, random_bits.get(j));
    }
    for (j, &i) in config.set_frozen().iter().enumerate() {
        u.set(i, frozen.get(j));
    }
    let codeword = polar_encode(&u, config.block_exp())?;
    Ok(EncodingRecord {
        u_word: u,
        codeword,
        random_bits: random_bits.clone(),
    })
}

/// Like [`encode_secret`], drawing the random bits uniformly from the
/// given stream.
pub fn encode_secret_drawn(
    msg: &BitVec,
    config: &WiretapCodeConfig,
    rng: &mut impl Rng,
) -> Result<EncodingRecord> {
    let mut random_bits = BitVec::zeros(config.set_random().len());
    for i in 0..random_bits.len() {
        random_bits.set(i, rng.gen_bool(0.5));
    }
    encode_secret(msg, config, &random_bits)
}

/// Bob's decoding result.
#[derive(Debug, Clone, PartialEq)]
pub struct BobDecode {
    pub message: BitVec,
    pub randomness: BitVec,
    /// False when some non-frozen decision was forced at an erased
    /// (tied) bit-channel, signaling a possible block error.
    pub consistent: bool,
}

/// Runs SC decoding with the config's frozen set and returns the
/// estimates restricted to the message and random index sets.
pub fn decode_bob(received: &ErasureWord, config: &WiretapCodeConfig) -> Result<BobDecode> {
    if received.len() != config.block_len() {
        return Err(Error::LengthMismatch {
            expected: config.block_len(),
            got: received.len(),
        });
    }
    let frozen = config.frozen_vector()?;
    let out = sc_decode_bec(received, config.set_frozen(), frozen)?;
    let mut message = BitVec::zeros(config.k());
    for (j, &i) in config.set_message().iter().enumerate() {
        message.set(j, out.u_hat.get(i));
    }
    let mut randomness = BitVec::zeros(config.set_random().len());
    for (j, &i) in config.set_random().iter().enumerate() {
        randomness.set(j, out.u_hat.get(i));
    }
    Ok(BobDecode {
        message,
        randomness,
        consistent: out.forced_ties == 0,
    })
}

/// Monte Carlo block error estimate together with the analytic union
/// bound (sum of the main-channel Z values over the information set).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockErrorEstimate {
    pub p_hat: f64,
    pub bound: f64,
}

/// Measures the fraction of trials where Bob fails to recover both the
/// message and the random bits over BEC(eps_m), with fresh uniform
/// message and randomness per trial.
pub fn block_error_rate(
    config: &WiretapCodeConfig,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<BlockErrorEstimate> {
    block_error_rate_over(config, BecChannel::new(config.eps_m())?, trials, rng)
}

/// [`block_error_rate`] over an explicit channel, keeping the config's
/// index geometry fixed.
pub fn block_error_rate_over(
    config: &WiretapCodeConfig,
    channel: BecChannel,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<BlockErrorEstimate> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1"));
    }
    let z_m = bhattacharyya_bec(channel, config.block_exp());
    let bound: f64 = config.set_information().iter().map(|&i| z_m.z()[i]).sum();
    let mut errors = 0usize;
    for _ in 0..trials {
        let mut msg = BitVec::zeros(config.k());
        for i in 0..msg.len() {
            msg.set(i, rng.gen_bool(0.5));
        }
        let rec = encode_secret_drawn(&msg, config, rng)?;
        let received = channel.transmit(&rec.codeword, rng);
        let decoded = decode_bob(&received, config)?;
        if decoded.message != msg || decoded.randomness != rec.random_bits {
            errors += 1;
        }
    }
    Ok(BlockErrorEstimate {
        p_hat: errors as f64 / trials as f64,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{select_index_sets, ConstructionMode};
    use alloc::string::ToString;
    use alloc::vec::Vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn small_config() -> WiretapCodeConfig {
        // n=2, (0.25, 0.5): message {1}, random {2,3}, frozen {0}
        select_index_sets(2, 0.25, 0.5, ConstructionMode::RateTargeted { rate: 0.25 })
            .unwrap()
            .assign_frozen_fixed(BitVec::zeros(1))
            .unwrap()
    }

    #[test]
    fn all_zero_inputs_give_zero_codeword() {
        let cfg = small_config();
        let rec = encode_secret(&BitVec::zeros(1), &cfg, &BitVec::zeros(2)).unwrap();
        assert_eq!(rec.codeword.count_ones(), 0);
    }

    #[test]
    fn codeword_is_generator_row_combination() {
        // message bit on index 1 selects row 1 of G_4 = (1,0,1,0)
        let cfg = small_config();
        let rec = encode_secret(&BitVec::from_bools(&[true]), &cfg, &BitVec::zeros(2)).unwrap();
        assert_eq!(rec.u_word.to_string(), "0100");
        assert_eq!(rec.codeword.to_string(), "1010");
    }

    #[test]
    fn distinct_randomness_gives_distinct_codeword() {
        let cfg = small_config();
        let msg = BitVec::from_bools(&[true]);
        let a = encode_secret(&msg, &cfg, &BitVec::from_bools(&[false, false])).unwrap();
        let b = encode_secret(&msg, &cfg, &BitVec::from_bools(&[true, false])).unwrap();
        assert_ne!(a.codeword, b.codeword);
    }

    #[test]
    fn encode_validates_lengths_and_frozen_state() {
        let cfg = small_config();
        assert!(encode_secret(&BitVec::zeros(2), &cfg, &BitVec::zeros(2)).is_err());
        assert!(encode_secret(&BitVec::zeros(1), &cfg, &BitVec::zeros(1)).is_err());
        let unset =
            select_index_sets(2, 0.25, 0.5, ConstructionMode::RateTargeted { rate: 0.25 }).unwrap();
        assert!(matches!(
            encode_secret(&BitVec::zeros(1), &unset, &BitVec::zeros(2)),
            Err(Error::FrozenVectorUnset)
        ));
    }

    #[test]
    fn decode_without_erasures_recovers_exactly() {
        let cfg = small_config();
        let msg = BitVec::from_bools(&[true]);
        let randomness = BitVec::from_bools(&[true, false]);
        let rec = encode_secret(&msg, &cfg, &randomness).unwrap();
        let out = decode_bob(&ErasureWord::from_bits(&rec.codeword), &cfg).unwrap();
        assert_eq!(out.message, msg);
        assert_eq!(out.randomness, randomness);
        assert!(out.consistent);
    }

    #[test]
    fn decode_all_erased_is_inconsistent() {
        use crate::channel::Symbol;
        let cfg = small_config();
        let y = ErasureWord::new(alloc::vec![Symbol::Erased; 4]);
        let out = decode_bob(&y, &cfg).unwrap();
        assert!(!out.consistent);
    }

    #[test]
    fn decode_single_erasure_recovers() {
        use crate::channel::Symbol;
        let cfg = small_config();
        let msg = BitVec::from_bools(&[true]);
        let randomness = BitVec::from_bools(&[false, true]);
        let rec = encode_secret(&msg, &cfg, &randomness).unwrap();
        let mut symbols: Vec<Symbol> = rec.codeword.iter().map(Symbol::from).collect();
        symbols[0] = Symbol::Erased;
        let out = decode_bob(&ErasureWord::new(symbols), &cfg).unwrap();
        assert_eq!(out.message, msg);
        assert_eq!(out.randomness, randomness);
    }

    #[test]
    fn linearity_and_coset_structure() {
        let cfg =
            select_index_sets(3, 0.25, 0.5, ConstructionMode::RateTargeted { rate: 0.25 }).unwrap();
        let nf = cfg.set_frozen().len();
        let zero_frozen = cfg.clone().assign_frozen_fixed(BitVec::zeros(nf)).unwrap();
        let mut f = BitVec::zeros(nf);
        for i in 0..nf {
            f.set(i, i % 2 == 0);
        }
        let offset_frozen = cfg.assign_frozen_fixed(f).unwrap();

        let k = zero_frozen.k();
        let nr = zero_frozen.set_random().len();
        let m1 = BitVec::from_uint(0b10, k);
        let m2 = BitVec::from_uint(0b11, k);
        let r1 = BitVec::from_uint(0b011, nr);
        let r2 = BitVec::from_uint(0b101, nr);

        // linearity with frozen = 0
        let mut m12 = m1.clone();
        m12.xor_assign(&m2);
        let mut r12 = r1.clone();
        r12.xor_assign(&r2);
        let mut sum = encode_secret(&m1, &zero_frozen, &r1).unwrap().codeword;
        sum.xor_assign(&encode_secret(&m2, &zero_frozen, &r2).unwrap().codeword);
        assert_eq!(
            encode_secret(&m12, &zero_frozen, &r12).unwrap().codeword,
            sum
        );

        // coset offset: enc(m, r, f) = enc(m, r, 0) + enc(0, 0, f)
        let coset = encode_secret(&BitVec::zeros(k), &offset_frozen, &BitVec::zeros(nr))
            .unwrap()
            .codeword;
        let mut shifted = encode_secret(&m1, &zero_frozen, &r1).unwrap().codeword;
        shifted.xor_assign(&coset);
        assert_eq!(
            encode_secret(&m1, &offset_frozen, &r1).unwrap().codeword,
            shifted
        );
    }

    #[test]
    fn noiseless_channel_has_zero_error_rate() {
        let cfg = select_index_sets(4, 0.0, 0.5, ConstructionMode::RateTargeted { rate: 0.25 })
            .unwrap()
            .assign_frozen_random(&mut ChaCha12Rng::seed_from_u64(1));
        let est = block_error_rate(&cfg, 200, &mut ChaCha12Rng::seed_from_u64(2)).unwrap();
        assert_eq!(est.p_hat, 0.0);
    }

    #[test]
    fn error_rate_monotone_in_channel_quality() {
        // same index geometry, progressively cleaner transmission channel
        let cfg = select_index_sets(6, 0.25, 0.5, ConstructionMode::RateTargeted { rate: 0.25 })
            .unwrap()
            .assign_frozen_random(&mut ChaCha12Rng::seed_from_u64(3));
        let mut rates = Vec::new();
        for eps in [0.25, 0.1, 0.0] {
            let est = block_error_rate_over(
                &cfg,
                BecChannel::new(eps).unwrap(),
                500,
                &mut ChaCha12Rng::seed_from_u64(4),
            )
            .unwrap();
            rates.push(est.p_hat);
        }
        assert!(rates[0] >= rates[1] && rates[1] >= rates[2], "{rates:?}");
        assert_eq!(rates[2], 0.0);
    }
}
