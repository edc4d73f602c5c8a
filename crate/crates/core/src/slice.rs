// SPDX-License-Identifier: Apache-2.0

//! Bit-sliced enumeration of binary input spaces.
//!
//! Input `x` of an `n`-variable space assigns variable `v` the bit
//! `(x >> (n - 1 - v)) & 1`, so variable 0 is the most significant bit and
//! numeric order on `x` is lexicographic order on the assignment vector.
//! Each variable is represented as a slice of 64-bit words, bit `t` of word
//! `k` standing for input `64 * k + t`.

use std::ops::Range;

use crate::network::Network;

/// Words processed per block. 64 words = 4096 inputs.
pub(crate) const BLOCK_WORDS: usize = 64;

const LOW_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

#[derive(Debug, Clone, Copy)]
pub(crate) struct InputSpace {
    vars: usize,
}

impl InputSpace {
    pub(crate) fn new(vars: usize) -> Self {
        debug_assert!(vars < 40);
        InputSpace { vars }
    }

    pub(crate) fn total_words(&self) -> usize {
        if self.vars <= 6 {
            1
        } else {
            1 << (self.vars - 6)
        }
    }

    /// Bits of a word that correspond to real inputs.
    pub(crate) fn valid_mask(&self) -> u64 {
        if self.vars >= 6 {
            !0
        } else {
            (1u64 << (1u32 << self.vars)) - 1
        }
    }

    pub(crate) fn blocks(&self) -> usize {
        self.total_words().div_ceil(BLOCK_WORDS)
    }

    pub(crate) fn block_words(&self, block: usize) -> Range<usize> {
        let start = block * BLOCK_WORDS;
        start..(start + BLOCK_WORDS).min(self.total_words())
    }

    pub(crate) fn var_word(&self, var: usize, word: usize) -> u64 {
        let bit = self.vars - 1 - var;
        if bit < 6 {
            LOW_PATTERNS[bit] & self.valid_mask()
        } else if (word >> (bit - 6)) & 1 == 1 {
            !0
        } else {
            0
        }
    }

    pub(crate) fn vector(&self, index: u64) -> Vec<u8> {
        (0..self.vars)
            .map(|v| ((index >> (self.vars - 1 - v)) & 1) as u8)
            .collect()
    }
}

/// Wire-major slice buffer: wire `w`'s words live at `w * len .. (w + 1) * len`.
pub(crate) struct SliceBlock {
    pub(crate) words: Vec<u64>,
    pub(crate) len: usize,
}

impl SliceBlock {
    pub(crate) fn wire(&self, w: usize) -> &[u64] {
        &self.words[w * self.len..(w + 1) * self.len]
    }
}

/// Loads the identity assignment for `range` and pushes it through `net`.
pub(crate) fn eval_network(net: &Network, space: &InputSpace, range: Range<usize>) -> SliceBlock {
    let len = range.len();
    let width = net.width();
    let mut words = vec![0u64; width * len];
    for w in 0..width {
        for (k, word) in range.clone().enumerate() {
            words[w * len + k] = space.var_word(w, word);
        }
    }
    for c in net.comparators() {
        let (lo, hi) = (c.low * len, c.high * len);
        for k in 0..len {
            let a = words[lo + k];
            let b = words[hi + k];
            words[lo + k] = a & b;
            words[hi + k] = a | b;
        }
    }
    SliceBlock { words, len }
}
