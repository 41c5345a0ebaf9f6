//! Polar wiretap codes over binary erasure channels.
//!
//! Builds nested polar codes for a stochastically degraded BEC pair
//! (main channel to Bob, wiretap channel to Eve), encodes secret
//! messages into cosets of the nested code, decodes at Bob with
//! successive cancellation, and measures secrecy empirically through
//! the rank-based equivocation formula for erasure patterns.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats and the
//! CLI live in the companion `polarwt-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod channel;
pub mod codec;
pub mod construct;
pub mod error;
pub mod gf2;
pub mod polar;
pub mod secrecy;

pub use channel::{BecChannel, ErasureWord, Symbol};
pub use codec::{block_error_rate, decode_bob, encode_secret, BobDecode, EncodingRecord};
pub use construct::{secrecy_capacity, select_index_sets, ConstructionMode, WiretapCodeConfig};
pub use error::Error;
pub use gf2::{BitVec, Gf2Matrix};
pub use polar::{
    bhattacharyya_bec, bit_reversal_permutation, generator_matrix, polar_encode, sc_decode_bec,
    ReliabilityProfile, ScDecode,
};
pub use secrecy::{
    brute_force_equivocation, build_nested_matrices, leakage_sweep, EquivocationReport,
    MatrixVariant, NestedCodeMatrices,
};

pub type Result<T> = core::result::Result<T, Error>;

/// Largest block exponent for which dense N x N matrices are built
/// (generator matrices, parity checks). Beyond this the butterfly
/// encoder is the only supported path.
pub const ANALYSIS_LIMIT_EXP: usize = 12;
