//! Binary erasure channel model and three-valued channel outputs.

use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::error::Error;
use crate::gf2::BitVec;
use crate::Result;

/// Binary erasure channel with a fixed erasure probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BecChannel {
    erasure_prob: f64,
}

impl BecChannel {
    pub fn new(erasure_prob: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&erasure_prob) {
            return Err(Error::InvalidProbability(erasure_prob));
        }
        Ok(BecChannel { erasure_prob })
    }

    pub fn erasure_prob(&self) -> f64 {
        self.erasure_prob
    }

    /// Symmetric capacity; exact for the BEC.
    pub fn capacity(&self) -> f64 {
        1.0 - self.erasure_prob
    }

    /// Sends a codeword through the channel, erasing each symbol
    /// independently with the channel's erasure probability.
    pub fn transmit(&self, x: &BitVec, rng: &mut impl Rng) -> ErasureWord {
        let symbols = x
            .iter()
            .map(|bit| {
                if rng.gen_bool(self.erasure_prob) {
                    Symbol::Erased
                } else {
                    Symbol::from(bit)
                }
            })
            .collect();
        ErasureWord { symbols }
    }
}

/// One received BEC symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symbol {
    Zero,
    One,
    Erased,
}

impl Symbol {
    pub fn is_erased(self) -> bool {
        self == Symbol::Erased
    }

    /// The known bit value, if any.
    pub fn bit(self) -> Option<bool> {
        match self {
            Symbol::Zero => Some(false),
            Symbol::One => Some(true),
            Symbol::Erased => None,
        }
    }
}

impl From<bool> for Symbol {
    fn from(bit: bool) -> Self {
        if bit {
            Symbol::One
        } else {
            Symbol::Zero
        }
    }
}

/// Channel output word over {0, 1, erased}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErasureWord {
    symbols: Vec<Symbol>,
}

impl ErasureWord {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        ErasureWord { symbols }
    }

    /// Word with no erasures.
    pub fn from_bits(x: &BitVec) -> Self {
        ErasureWord {
            symbols: x.iter().map(Symbol::from).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn get(&self, i: usize) -> Symbol {
        self.symbols[i]
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn erased_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.symbols[i].is_erased())
            .collect()
    }
}

impl fmt::Display for ErasureWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            f.write_str(match s {
                Symbol::Zero => "0",
                Symbol::One => "1",
                Symbol::Erased => "e",
            })?;
        }
        Ok(())
    }
}
