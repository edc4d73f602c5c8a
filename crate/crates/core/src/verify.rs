// SPDX-License-Identifier: Apache-2.0

//! Exhaustive 0-1 verification.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::network::Network;
use crate::slice::{eval_network, InputSpace};

/// Largest width handled by exhaustive operations unless overridden.
pub const DEFAULT_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VerifyMode {
    /// Every wire carries a slice of the whole input space; one comparator is
    /// an AND plus an OR per word.
    #[default]
    BitSliced,
    /// One binary vector at a time. Only meant for differential testing.
    Naive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Sorts,
    /// Lexicographically least binary input the network leaves unsorted.
    Counterexample(Vec<u8>),
}

impl Verdict {
    pub fn sorts(&self) -> bool {
        matches!(self, Verdict::Sorts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verifier {
    pub cap: usize,
    pub mode: VerifyMode,
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier {
            cap: DEFAULT_CAP,
            mode: VerifyMode::BitSliced,
        }
    }
}

impl Verifier {
    pub fn with_cap(cap: usize) -> Self {
        Verifier {
            cap,
            ..Verifier::default()
        }
    }

    pub fn naive() -> Self {
        Verifier {
            mode: VerifyMode::Naive,
            ..Verifier::default()
        }
    }

    pub fn check_width(&self, width: usize) -> Result<()> {
        if width > self.cap {
            return Err(Error::CapExceeded {
                width,
                cap: self.cap,
            });
        }
        Ok(())
    }

    pub fn verify(&self, net: &Network) -> Result<Verdict> {
        self.check_width(net.width())?;
        let failing = match self.mode {
            VerifyMode::BitSliced => first_failure_sliced(net),
            VerifyMode::Naive => first_failure_naive(net),
        };
        let space = InputSpace::new(net.width());
        Ok(match failing {
            None => Verdict::Sorts,
            Some(x) => Verdict::Counterexample(space.vector(x)),
        })
    }
}

fn first_failure_sliced(net: &Network) -> Option<u64> {
    let width = net.width();
    let space = InputSpace::new(width);
    let mask = space.valid_mask();
    (0..space.blocks()).into_par_iter().find_map_first(|block| {
        let range = space.block_words(block);
        let first_word = range.start;
        let out = eval_network(net, &space, range);
        (0..out.len).find_map(|k| {
            let mut bad = 0u64;
            for w in 0..width - 1 {
                bad |= out.wire(w)[k] & !out.wire(w + 1)[k];
            }
            bad &= mask;
            (bad != 0).then(|| ((first_word + k) as u64) * 64 + u64::from(bad.trailing_zeros()))
        })
    })
}

fn first_failure_naive(net: &Network) -> Option<u64> {
    let space = InputSpace::new(net.width());
    (0..1u64 << net.width()).find(|&x| {
        let mut v = space.vector(x);
        net.apply_in_place(&mut v);
        !is_sorted(&v)
    })
}

pub fn is_sorted<T: Ord>(values: &[T]) -> bool {
    values.windows(2).all(|w| w[0] <= w[1])
}

/// Exhaustive 0-1 check with the default cap in bit-sliced mode.
pub fn verify_sorts_binary(net: &Network) -> Result<Verdict> {
    Verifier::default().verify(net)
}

/// Lifts a failing binary vector to a failing permutation of `0..width`.
///
/// Zeros receive the values `0..z` in wire order and ones the values
/// `z..width`. Thresholding the result at `z` gives back `bad`, and comparator
/// networks commute with monotone maps, so the permutation fails too.
pub fn counterexample_permutation(net: &Network, bad: &[u8]) -> Result<Vec<usize>> {
    if bad.len() != net.width() {
        return Err(Error::LengthMismatch {
            expected: net.width(),
            got: bad.len(),
        });
    }
    if bad.iter().any(|&b| b > 1) {
        return Err(Error::NotBinary);
    }
    if is_sorted(&net.apply(bad)?) {
        return Err(Error::NotACounterexample);
    }
    let zeros = bad.iter().filter(|&&b| b == 0).count();
    let (mut next_zero, mut next_one) = (0, zeros);
    let perm: Vec<usize> = bad
        .iter()
        .map(|&b| {
            let slot = if b == 0 {
                &mut next_zero
            } else {
                &mut next_one
            };
            *slot += 1;
            *slot - 1
        })
        .collect();
    debug_assert!(!is_sorted(&net.apply(&perm)?));
    Ok(perm)
}
