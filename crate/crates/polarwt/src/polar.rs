//! The polar transform for binary erasure channels: exact bit-channel
//! erasure probabilities, butterfly encoding with the bit-reversal
//! permutation, the explicit generator matrix, and successive
//! cancellation decoding over three-valued erasure beliefs.

use alloc::vec;
use alloc::vec::Vec;

use crate::channel::{BecChannel, ErasureWord, Symbol};
use crate::error::Error;
use crate::gf2::{BitVec, Gf2Matrix};
use crate::{Result, ANALYSIS_LIMIT_EXP};

/// Exact Bhattacharyya parameters of the N = 2^n bit-channels of a
/// BEC, indexed in successive-cancellation decoding order.
#[derive(Debug, Clone, PartialEq)]
pub struct ReliabilityProfile {
    block_exp: usize,
    z_values: Vec<f64>,
}

impl ReliabilityProfile {
    pub fn block_exp(&self) -> usize {
        self.block_exp
    }

    pub fn block_len(&self) -> usize {
        1 << self.block_exp
    }

    pub fn z(&self) -> &[f64] {
        &self.z_values
    }
}

/// Runs the BEC reliability recursion n times: a parent value z splits
/// into children 2z - z^2 (degraded) and z^2 (upgraded), assigned to
/// the lower and higher branch so index i matches SC decoding order.
pub fn bhattacharyya_bec(channel: BecChannel, n: usize) -> ReliabilityProfile {
    let mut z = vec![channel.erasure_prob()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(2 * z.len());
        for &v in &z {
            next.push(2.0 * v - v * v);
            next.push(v * v);
        }
        z = next;
    }
    ReliabilityProfile {
        block_exp: n,
        z_values: z,
    }
}

/// The involution mapping index i to the index with reversed n-bit
/// binary representation.
pub fn bit_reversal_permutation(n: usize) -> Vec<usize> {
    let len = 1usize << n;
    (0..len)
        .map(|i| {
            let mut r = 0;
            for b in 0..n {
                r |= ((i >> b) & 1) << (n - 1 - b);
            }
            r
        })
        .collect()
}

/// In-place butterfly for v -> v * F^{tensor n}, block-major order.
fn butterfly(v: &mut [bool]) {
    let n_len = v.len();
    let mut block = n_len;
    while block >= 2 {
        let half = block / 2;
        for start in (0..n_len).step_by(block) {
            for i in start..start + half {
                v[i] ^= v[i + half];
            }
        }
        block = half;
    }
}

/// Encodes u into x = u . B_N . F^{tensor n} over GF(2) in O(N log N).
pub fn polar_encode(u: &BitVec, n: usize) -> Result<BitVec> {
    let n_len = 1usize << n;
    if u.len() != n_len {
        return Err(Error::LengthMismatch {
            expected: n_len,
            got: u.len(),
        });
    }
    let mut v: Vec<bool> = u.iter().collect();
    butterfly(&mut v);
    // x = (u F^{tensor n}) B_N, using B_N F^{tensor n} = F^{tensor n} B_N
    let rev = bit_reversal_permutation(n);
    let mut x = BitVec::zeros(n_len);
    for (i, &bit) in v.iter().enumerate() {
        if bit {
            x.set(rev[i], true);
        }
    }
    Ok(x)
}

/// The dense N x N generator matrix B_N . F^{tensor n}. Self-inverse
/// over GF(2). Bounded by the dense-analysis limit.
pub fn generator_matrix(n: usize) -> Result<Gf2Matrix> {
    if n > ANALYSIS_LIMIT_EXP {
        return Err(Error::AnalysisLimitExceeded {
            n,
            limit_exp: ANALYSIS_LIMIT_EXP,
        });
    }
    let n_len = 1usize << n;
    let mut g = Gf2Matrix::zeros(n_len, n_len);
    for i in 0..n_len {
        let mut e = BitVec::zeros(n_len);
        e.set(i, true);
        let row = polar_encode(&e, n).expect("unit vector has block length");
        for (c, bit) in row.iter().enumerate() {
            if bit {
                g.set(i, c, true);
            }
        }
    }
    Ok(g)
}

/// Result of successive cancellation decoding.
#[derive(Debug, Clone, PartialEq)]
pub struct ScDecode {
    /// Estimated input word, frozen positions copied verbatim.
    pub u_hat: BitVec,
    /// Number of non-frozen positions whose bit-channel belief was
    /// erased, i.e. decisions forced by the tie rule (pick 0).
    pub forced_ties: usize,
}

struct ScState {
    u_hat: BitVec,
    frozen: Vec<Option<bool>>,
    forced_ties: usize,
}

fn check_node(a: Symbol, b: Symbol) -> Symbol {
    match (a.bit(), b.bit()) {
        (Some(x), Some(y)) => Symbol::from(x ^ y),
        _ => Symbol::Erased,
    }
}

fn variable_node(a: Symbol, b: Symbol, left_sum: bool) -> Symbol {
    // b observes the branch codeword bit directly; a observes it masked
    // by the already-decided left partial sum.
    match b.bit() {
        Some(y) => Symbol::from(y),
        None => match a.bit() {
            Some(x) => Symbol::from(x ^ left_sum),
            None => Symbol::Erased,
        },
    }
}

fn sc_recurse(alpha: &[Symbol], offset: usize, st: &mut ScState) -> Vec<bool> {
    if alpha.len() == 1 {
        let bit = match st.frozen[offset] {
            Some(b) => b,
            None => match alpha[0].bit() {
                Some(b) => b,
                None => {
                    // equal likelihoods: the >= decision rule picks 0
                    st.forced_ties += 1;
                    false
                }
            },
        };
        st.u_hat.set(offset, bit);
        return vec![bit];
    }
    let half = alpha.len() / 2;
    let left: Vec<Symbol> = (0..half)
        .map(|i| check_node(alpha[i], alpha[i + half]))
        .collect();
    let beta_l = sc_recurse(&left, offset, st);
    let right: Vec<Symbol> = (0..half)
        .map(|i| variable_node(alpha[i], alpha[i + half], beta_l[i]))
        .collect();
    let beta_r = sc_recurse(&right, offset + half, st);
    let mut beta = Vec::with_capacity(alpha.len());
    for i in 0..half {
        beta.push(beta_l[i] ^ beta_r[i]);
    }
    beta.extend_from_slice(&beta_r);
    beta
}

/// Successive cancellation decoding of a BEC output word.
///
/// `frozen_set` lists the frozen positions (in SC index order) and
/// `frozen_values` carries one bit per entry of `frozen_set`. Beliefs
/// are propagated as {0, 1, erased}; an erased bit-channel belief at a
/// non-frozen position decides 0.
pub fn sc_decode_bec(
    received: &ErasureWord,
    frozen_set: &[usize],
    frozen_values: &BitVec,
) -> Result<ScDecode> {
    let n_len = received.len();
    if n_len == 0 || !n_len.is_power_of_two() {
        return Err(Error::LengthMismatch {
            expected: n_len.next_power_of_two().max(1),
            got: n_len,
        });
    }
    if frozen_values.len() != frozen_set.len() {
        return Err(Error::LengthMismatch {
            expected: frozen_set.len(),
            got: frozen_values.len(),
        });
    }
    let n = n_len.trailing_zeros() as usize;
    let mut frozen = vec![None; n_len];
    for (j, &i) in frozen_set.iter().enumerate() {
        if i >= n_len {
            return Err(Error::IndexOutOfRange {
                index: i,
                limit: n_len,
            });
        }
        frozen[i] = Some(frozen_values.get(j));
    }
    // x = w B_N with w = u F^{tensor n}: undo the permutation, then run
    // the plain butterfly recursion on w-order beliefs.
    let rev = bit_reversal_permutation(n);
    let alpha: Vec<Symbol> = (0..n_len).map(|i| received.get(rev[i])).collect();
    let mut st = ScState {
        u_hat: BitVec::zeros(n_len),
        frozen,
        forced_ties: 0,
    };
    sc_recurse(&alpha, 0, &mut st);
    Ok(ScDecode {
        u_hat: st.u_hat,
        forced_ties: st.forced_ties,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn profile(eps: f64, n: usize) -> Vec<f64> {
        bhattacharyya_bec(BecChannel::new(eps).unwrap(), n)
            .z()
            .to_vec()
    }

    #[test]
    fn bhattacharyya_base_case() {
        assert_eq!(profile(0.25, 0), vec![0.25]);
    }

    #[test]
    fn bhattacharyya_one_step() {
        assert_eq!(profile(0.5, 1), vec![0.75, 0.25]);
    }

    #[test]
    fn bhattacharyya_two_levels() {
        let z = profile(0.25, 2);
        let expected = [0.68359375, 0.19140625, 0.12109375, 0.00390625];
        for (a, b) in z.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn bit_reversal_small() {
        assert_eq!(bit_reversal_permutation(0), vec![0]);
        assert_eq!(bit_reversal_permutation(2), vec![0, 2, 1, 3]);
        assert_eq!(bit_reversal_permutation(3), vec![0, 4, 2, 6, 1, 5, 3, 7]);
    }

    #[test]
    fn encode_second_row_of_f() {
        let x = polar_encode(&BitVec::from_bools(&[false, true]), 1).unwrap();
        assert_eq!(x.to_string(), "11");
    }

    #[test]
    fn encode_all_ones_row() {
        let x = polar_encode(&BitVec::from_bools(&[false, false, false, true]), 2).unwrap();
        assert_eq!(x.to_string(), "1111");
    }

    #[test]
    fn encode_matches_matrix_multiply() {
        // oracle: explicit GF(2) multiply against G_4 = B_4 F^{tensor 2}
        let g = generator_matrix(2).unwrap();
        let u = BitVec::from_bools(&[true, true, false, false]);
        let mut x = BitVec::zeros(4);
        for i in 0..4 {
            if u.get(i) {
                x.xor_assign(&g.row_bits(i));
            }
        }
        assert_eq!(x.to_string(), "0010");
        assert_eq!(polar_encode(&u, 2).unwrap(), x);
    }

    #[test]
    fn encode_length_mismatch() {
        assert!(polar_encode(&BitVec::zeros(3), 2).is_err());
    }

    #[test]
    fn generator_small_cases() {
        let g1 = generator_matrix(1).unwrap();
        assert_eq!(g1, Gf2Matrix::from_bits(&[&[1, 0], &[1, 1]]));
        let g2 = generator_matrix(2).unwrap();
        let expected =
            Gf2Matrix::from_bits(&[&[1, 0, 0, 0], &[1, 0, 1, 0], &[1, 1, 0, 0], &[1, 1, 1, 1]]);
        assert_eq!(g2, expected);
    }

    #[test]
    fn generator_is_self_inverse() {
        for n in 1..=3 {
            let g = generator_matrix(n).unwrap();
            let len = 1 << n;
            for i in 0..len {
                let x = polar_encode(&g.row_bits(i), n).unwrap();
                let mut e = BitVec::zeros(len);
                e.set(i, true);
                assert_eq!(x, e, "G*G row {i} at n={n}");
            }
        }
    }

    #[test]
    fn generator_respects_analysis_limit() {
        assert!(matches!(
            generator_matrix(13),
            Err(Error::AnalysisLimitExceeded { .. })
        ));
    }

    #[test]
    fn sc_no_erasures_inverts_encoding() {
        let u = BitVec::from_bools(&[true, false, true, true, false, false, true, false]);
        let x = polar_encode(&u, 3).unwrap();
        let out = sc_decode_bec(&ErasureWord::from_bits(&x), &[], &BitVec::zeros(0)).unwrap();
        assert_eq!(out.u_hat, u);
        assert_eq!(out.forced_ties, 0);
    }

    #[test]
    fn sc_all_erased_all_frozen_copies_frozen() {
        let frozen_set: Vec<usize> = (0..4).collect();
        let frozen = BitVec::from_bools(&[true, false, true, true]);
        let y = ErasureWord::new(vec![Symbol::Erased; 4]);
        let out = sc_decode_bec(&y, &frozen_set, &frozen).unwrap();
        assert_eq!(out.u_hat, frozen);
        assert_eq!(out.forced_ties, 0);
    }

    #[test]
    fn sc_recovers_single_erasure_via_frozen_prefix() {
        // u = (0,0,1,1), frozen {0,1} = (0,0), erase codeword position 0.
        // Of the two completions of the erasure only one is consistent
        // with the frozen prefix.
        let u = BitVec::from_bools(&[false, false, true, true]);
        let x = polar_encode(&u, 2).unwrap();
        let mut symbols: Vec<Symbol> = x.iter().map(Symbol::from).collect();
        symbols[0] = Symbol::Erased;
        let out = sc_decode_bec(&ErasureWord::new(symbols), &[0, 1], &BitVec::zeros(2)).unwrap();
        assert_eq!(out.u_hat, u);
        assert_eq!(out.forced_ties, 0);
    }

    #[test]
    fn sc_validates_inputs() {
        let y = ErasureWord::new(vec![Symbol::Zero; 3]);
        assert!(sc_decode_bec(&y, &[], &BitVec::zeros(0)).is_err());
        let y = ErasureWord::new(vec![Symbol::Zero; 4]);
        assert!(sc_decode_bec(&y, &[0], &BitVec::zeros(2)).is_err());
        assert!(sc_decode_bec(&y, &[9], &BitVec::zeros(1)).is_err());
    }
}
