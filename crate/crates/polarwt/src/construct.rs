//! Nested index-set selection for a degraded BEC pair.
//!
//! Partitions {0..N-1} into message indices (good for Bob, bad for
//! Eve), random indices (good for both) and frozen indices (bad for
//! both), and packages the partition with a frozen vector as a wiretap
//! code configuration.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::channel::BecChannel;
use crate::error::Error;
use crate::gf2::BitVec;
use crate::polar::bhattacharyya_bec;
use crate::Result;

pub const DEFAULT_BETA: f64 = 0.3;

/// How the index partition is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConstructionMode {
    /// Both good sets are cut at the polarization threshold
    /// (1/N) * 2^(-N^beta), beta in (0, 1/2).
    Threshold { beta: f64 },
    /// Rate sweep: the information set is the ceil((1 - eps_m) * N)
    /// most reliable indices for Bob; the ceil(rate * N) of them that
    /// are least reliable for Eve carry the message, the rest carry
    /// random bits. Ties break toward the lower index.
    RateTargeted { rate: f64 },
}

/// The threshold (1/N) * 2^(-N^beta).
pub fn polarization_threshold(n: usize, beta: f64) -> f64 {
    let n_len = (1u64 << n) as f64;
    libm::exp2(-libm::pow(n_len, beta)) / n_len
}

/// Secrecy capacity of the degraded BEC pair: eps_w - eps_m.
pub fn secrecy_capacity(eps_m: f64, eps_w: f64) -> Result<f64> {
    let m = BecChannel::new(eps_m)?;
    let w = BecChannel::new(eps_w)?;
    if eps_w < eps_m {
        return Err(Error::DegradednessViolation { eps_m, eps_w });
    }
    Ok(m.capacity() - w.capacity())
}

/// Nested wiretap code: block exponent, channel pair, index partition
/// and (once assigned) the frozen vector.
#[derive(Debug, Clone, PartialEq)]
pub struct WiretapCodeConfig {
    n: usize,
    eps_m: f64,
    eps_w: f64,
    beta: f64,
    set_message: Vec<usize>,
    set_random: Vec<usize>,
    set_frozen: Vec<usize>,
    frozen_vector: Option<BitVec>,
}

impl WiretapCodeConfig {
    pub fn block_exp(&self) -> usize {
        self.n
    }

    pub fn block_len(&self) -> usize {
        1 << self.n
    }

    pub fn eps_m(&self) -> f64 {
        self.eps_m
    }

    pub fn eps_w(&self) -> f64 {
        self.eps_w
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Message indices, ascending.
    pub fn set_message(&self) -> &[usize] {
        &self.set_message
    }

    /// Random-bit indices, ascending.
    pub fn set_random(&self) -> &[usize] {
        &self.set_random
    }

    /// Frozen indices, ascending.
    pub fn set_frozen(&self) -> &[usize] {
        &self.set_frozen
    }

    /// Message length k.
    pub fn k(&self) -> usize {
        self.set_message.len()
    }

    /// Code rate k/N.
    pub fn rate(&self) -> f64 {
        self.k() as f64 / self.block_len() as f64
    }

    /// Information indices (message plus random), ascending.
    pub fn set_information(&self) -> Vec<usize> {
        let mut a: Vec<usize> = self
            .set_message
            .iter()
            .chain(&self.set_random)
            .copied()
            .collect();
        a.sort_unstable();
        a
    }

    pub fn frozen_vector(&self) -> Result<&BitVec> {
        self.frozen_vector.as_ref().ok_or(Error::FrozenVectorUnset)
    }

    pub fn has_frozen_vector(&self) -> bool {
        self.frozen_vector.is_some()
    }

    /// Fixes the frozen vector to the given bits (one per frozen index,
    /// in ascending index order).
    pub fn assign_frozen_fixed(mut self, bits: BitVec) -> Result<Self> {
        if bits.len() != self.set_frozen.len() {
            return Err(Error::LengthMismatch {
                expected: self.set_frozen.len(),
                got: bits.len(),
            });
        }
        self.frozen_vector = Some(bits);
        Ok(self)
    }

    /// Draws each frozen bit uniformly from the stream, then fixes the
    /// vector for the config's lifetime.
    pub fn assign_frozen_random(mut self, rng: &mut impl Rng) -> Self {
        let mut bits = BitVec::zeros(self.set_frozen.len());
        for i in 0..bits.len() {
            bits.set(i, rng.gen_bool(0.5));
        }
        self.frozen_vector = Some(bits);
        self
    }
}

/// Selects the nested index partition for the degraded pair
/// (BEC(eps_m), BEC(eps_w)). The frozen vector is left unset.
pub fn select_index_sets(
    n: usize,
    eps_m: f64,
    eps_w: f64,
    mode: ConstructionMode,
) -> Result<WiretapCodeConfig> {
    BecChannel::new(eps_m)?;
    BecChannel::new(eps_w)?;
    if eps_w < eps_m {
        return Err(Error::DegradednessViolation { eps_m, eps_w });
    }
    let n_len = 1usize << n;
    let z_m = bhattacharyya_bec(BecChannel::new(eps_m)?, n);
    let z_w = bhattacharyya_bec(BecChannel::new(eps_w)?, n);
    let z_m = z_m.z();
    let z_w = z_w.z();

    let (message, random, beta) = match mode {
        ConstructionMode::Threshold { beta } => {
            if !(0.0 < beta && beta < 0.5) {
                return Err(Error::InvalidParameter("beta must lie in (0, 1/2)"));
            }
            let t = polarization_threshold(n, beta);
            let a_m: Vec<usize> = (0..n_len).filter(|&i| z_m[i] <= t).collect();
            let a_w: Vec<usize> = (0..n_len).filter(|&i| z_w[i] <= t).collect();
            let message: Vec<usize> = a_m.iter().copied().filter(|i| !a_w.contains(i)).collect();
            (message, a_w, beta)
        }
        ConstructionMode::RateTargeted { rate } => {
            if !(0.0..1.0).contains(&rate) {
                return Err(Error::InvalidParameter("rate must lie in [0, 1)"));
            }
            let k = libm::ceil(rate * n_len as f64) as usize;
            let info_len = libm::ceil((1.0 - eps_m) * n_len as f64) as usize;
            if k > info_len {
                return Err(Error::InfeasibleRate {
                    requested: k,
                    available: info_len,
                });
            }
            // Bob's information set: the most reliable channels for the
            // main channel, ties toward the lower index.
            let mut by_bob: Vec<usize> = (0..n_len).collect();
            by_bob.sort_by(|&a, &b| z_m[a].partial_cmp(&z_m[b]).unwrap().then(a.cmp(&b)));
            let info = &by_bob[..info_len];
            // Message rides the members least reliable for Eve.
            let mut by_eve: Vec<usize> = info.to_vec();
            by_eve.sort_by(|&a, &b| z_w[b].partial_cmp(&z_w[a]).unwrap().then(a.cmp(&b)));
            let mut message = by_eve[..k].to_vec();
            let mut random = by_eve[k..].to_vec();
            message.sort_unstable();
            random.sort_unstable();
            (message, random, DEFAULT_BETA)
        }
    };

    let mut in_info = vec![false; n_len];
    for &i in message.iter().chain(&random) {
        in_info[i] = true;
    }
    let frozen: Vec<usize> = (0..n_len).filter(|&i| !in_info[i]).collect();

    Ok(WiretapCodeConfig {
        n,
        eps_m,
        eps_w,
        beta,
        set_message: message,
        set_random: random,
        set_frozen: frozen,
        frozen_vector: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn secrecy_capacity_values() {
        assert_eq!(secrecy_capacity(0.25, 0.5).unwrap(), 0.25);
        assert_eq!(secrecy_capacity(0.3, 0.3).unwrap(), 0.0);
        assert_eq!(secrecy_capacity(0.0, 1.0).unwrap(), 1.0);
        assert!(matches!(
            secrecy_capacity(0.5, 0.25),
            Err(Error::DegradednessViolation { .. })
        ));
    }

    #[test]
    fn rate_targeted_small_example() {
        // n=2, (0.25, 0.5): z_m = [0.6836, 0.1914, 0.1211, 0.0039],
        // z_w = [0.9375, 0.5625, 0.4375, 0.0625]. The information set is
        // the ceil(0.75*4) = 3 best Bob channels {1,2,3}; the single
        // message index is the one worst for Eve, index 1.
        let cfg =
            select_index_sets(2, 0.25, 0.5, ConstructionMode::RateTargeted { rate: 0.25 }).unwrap();
        assert_eq!(cfg.set_message(), &[1]);
        assert_eq!(cfg.set_random(), &[2, 3]);
        assert_eq!(cfg.set_frozen(), &[0]);
        assert_eq!(cfg.k(), 1);
    }

    #[test]
    fn threshold_equal_channels_empty_message() {
        let cfg =
            select_index_sets(6, 0.25, 0.25, ConstructionMode::Threshold { beta: 0.3 }).unwrap();
        assert!(cfg.set_message().is_empty());
    }

    #[test]
    fn threshold_noiseless_main_channel() {
        let cfg =
            select_index_sets(4, 0.0, 0.5, ConstructionMode::Threshold { beta: 0.3 }).unwrap();
        // z_m all zero: every index is good for Bob, nothing is frozen.
        assert!(cfg.set_frozen().is_empty());
        assert_eq!(cfg.k() + cfg.set_random().len(), 16);
    }

    #[test]
    fn partition_covers_everything() {
        for mode in [
            ConstructionMode::Threshold { beta: 0.3 },
            ConstructionMode::RateTargeted { rate: 0.3 },
        ] {
            let cfg = select_index_sets(6, 0.2, 0.45, mode).unwrap();
            let n_len = cfg.block_len();
            let mut seen = vec![0u8; n_len];
            for &i in cfg
                .set_message()
                .iter()
                .chain(cfg.set_random())
                .chain(cfg.set_frozen())
            {
                seen[i] += 1;
            }
            assert!(seen.iter().all(|&c| c == 1), "partition failure: {seen:?}");
        }
    }

    #[test]
    fn threshold_sets_are_nested() {
        let cfg =
            select_index_sets(10, 0.25, 0.5, ConstructionMode::Threshold { beta: 0.3 }).unwrap();
        let z_m = bhattacharyya_bec(BecChannel::new(0.25).unwrap(), 10);
        let t = polarization_threshold(10, 0.3);
        // every Eve-good index also passes Bob's threshold
        for &i in cfg.set_random() {
            assert!(z_m.z()[i] <= t);
        }
    }

    #[test]
    fn rate_targeted_hits_requested_k() {
        for rate in [0.05, 0.25, 0.5] {
            let cfg =
                select_index_sets(10, 0.25, 0.5, ConstructionMode::RateTargeted { rate }).unwrap();
            assert_eq!(cfg.k(), libm::ceil(rate * 1024.0) as usize);
        }
    }

    #[test]
    fn rate_targeted_infeasible() {
        assert!(matches!(
            select_index_sets(6, 0.25, 0.5, ConstructionMode::RateTargeted { rate: 0.9 }),
            Err(Error::InfeasibleRate { .. })
        ));
    }

    #[test]
    fn degradedness_enforced() {
        assert!(matches!(
            select_index_sets(4, 0.5, 0.25, ConstructionMode::Threshold { beta: 0.3 }),
            Err(Error::DegradednessViolation { .. })
        ));
    }

    #[test]
    fn frozen_vector_assignment() {
        let cfg =
            select_index_sets(3, 0.25, 0.5, ConstructionMode::RateTargeted { rate: 0.25 }).unwrap();
        let nf = cfg.set_frozen().len();
        let fixed = cfg.clone().assign_frozen_fixed(BitVec::zeros(nf)).unwrap();
        assert_eq!(fixed.frozen_vector().unwrap().count_ones(), 0);
        assert!(cfg
            .clone()
            .assign_frozen_fixed(BitVec::zeros(nf + 1))
            .is_err());
        let a = cfg
            .clone()
            .assign_frozen_random(&mut ChaCha12Rng::seed_from_u64(5));
        let b = cfg.assign_frozen_random(&mut ChaCha12Rng::seed_from_u64(5));
        assert_eq!(a.frozen_vector().unwrap(), b.frozen_vector().unwrap());
    }
}
