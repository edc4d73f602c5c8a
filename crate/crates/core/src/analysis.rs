// SPDX-License-Identifier: Apache-2.0

//! Machine checks for the structural claims behind the 16-input sorters.
//!
//! Rank claims are functions built from order statistics of wire subsets,
//! which commute with monotone maps, so checking them on every binary input
//! settles them for all inputs. The permutation sampler is a cross-check of
//! that reasoning, not a substitute for it.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constructions::{
    batcher_sorter, green16, green16_naive_merge, with_m_sorter, LAYER1, LAYER3, M, TETRAD_LOWER,
    TETRAD_UPPER,
};
use crate::error::{Error, Result};
use crate::network::Network;
use crate::poset::{infer_poset, Poset};
use crate::schedule::depth;
use crate::verify::verify_sorts_binary;

pub const DEFAULT_SAMPLES: usize = 10_000;
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// True iff the inferred poset of `net` is subset inclusion on the `2^n`
/// wire bitmasks.
pub fn check_cube_poset(net: &Network, n: u32) -> Result<bool> {
    let width = 1usize << n;
    if net.width() != width {
        return Err(Error::WidthMismatch {
            left: net.width(),
            right: width,
        });
    }
    Ok(infer_poset(net)? == Poset::cube(n as usize))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    /// Wire 15 holds the maximum and wire 0 the minimum.
    A,
    /// Ranks 2 and 3 from the top are the two largest values on layer III;
    /// ranks 2 and 3 from the bottom the two smallest on layer I.
    B,
    /// The six medial values are drawn from the eight values of `M`.
    C,
    /// Ranks 4 and 5 from the top are the third largest of layer III and the
    /// maximum of `M`; dually at the bottom.
    D,
}

impl Claim {
    pub const ALL: [Claim; 4] = [Claim::A, Claim::B, Claim::C, Claim::D];

    pub fn letter(self) -> char {
        match self {
            Claim::A => 'a',
            Claim::B => 'b',
            Claim::C => 'c',
            Claim::D => 'd',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObservationMode {
    ExhaustiveBinary,
    SampledPermutations { samples: usize, seed: u64 },
}

impl ObservationMode {
    pub fn sampled_default() -> Self {
        ObservationMode::SampledPermutations {
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Counterexample {
    Binary(Vec<u8>),
    Permutation(Vec<usize>),
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::Binary(v) => v.iter().try_for_each(|b| write!(f, "{b}")),
            Counterexample::Permutation(p) => {
                let items: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                f.write_str(&items.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimVerdict {
    pub claim: Claim,
    /// First failing input in enumeration order, if any.
    pub counterexample: Option<Counterexample>,
}

impl ClaimVerdict {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationReport {
    pub mode: ObservationMode,
    pub inputs_checked: u64,
    pub verdicts: Vec<ClaimVerdict>,
}

impl ObservationReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(ClaimVerdict::holds)
    }

    pub fn verdict(&self, claim: Claim) -> &ClaimVerdict {
        self.verdicts
            .iter()
            .find(|v| v.claim == claim)
            .expect("every claim is reported")
    }

    /// Line-oriented verdict text: a `#` header naming the mode, then one
    /// `<claim> holds` or `<claim> fails <witness>` line per claim.
    pub fn render(&self) -> String {
        let mut out = match self.mode {
            ObservationMode::ExhaustiveBinary => {
                format!(
                    "# observations mode=exhaustive-binary inputs={}\n",
                    self.inputs_checked
                )
            }
            ObservationMode::SampledPermutations { samples, seed } => {
                format!(
                    "# observations mode=sampled-permutations samples={samples} seed={seed:#x}\n"
                )
            }
        };
        for v in &self.verdicts {
            match &v.counterexample {
                None => out.push_str(&format!("{} holds\n", v.claim.letter())),
                Some(cx) => out.push_str(&format!("{} fails {cx}\n", v.claim.letter())),
            }
        }
        out
    }
}

fn sorted<T: Ord + Clone>(values: impl IntoIterator<Item = T>) -> Vec<T> {
    let mut v: Vec<T> = values.into_iter().collect();
    v.sort();
    v
}

fn same_multiset<T: Ord + Clone>(a: &[T], b: &[T]) -> bool {
    sorted(a.iter().cloned()) == sorted(b.iter().cloned())
}

/// Is `small` a sub-multiset of `large`? Both must be sorted.
fn sub_multiset<T: Ord>(small: &[T], large: &[T]) -> bool {
    let mut it = large.iter();
    small.iter().all(|x| it.by_ref().any(|y| y == x))
}

/// Evaluates claims a) to d) on the output of the approximate phase.
fn claims_hold<T: Ord + Clone>(out: &[T]) -> [bool; 4] {
    let ranks = sorted(out.iter().cloned());
    let layer1 = sorted(LAYER1.iter().map(|&w| out[w].clone()));
    let layer3 = sorted(LAYER3.iter().map(|&w| out[w].clone()));
    // M is evaluated as the middle layer plus min(layer III) and max(layer I).
    let m_values = sorted(
        crate::constructions::cube_layer_wires(4, 2)
            .into_iter()
            .map(|w| out[w].clone())
            .chain([layer3[0].clone(), layer1[3].clone()]),
    );

    let a = out[15] == ranks[15] && out[0] == ranks[0];
    let b =
        same_multiset(&ranks[13..15], &layer3[2..4]) && same_multiset(&ranks[1..3], &layer1[0..2]);
    let c = sub_multiset(&ranks[5..11], &m_values);
    let d = same_multiset(&ranks[11..13], &[layer3[1].clone(), m_values[7].clone()])
        && same_multiset(&ranks[3..5], &[layer1[2].clone(), m_values[0].clone()]);
    [a, b, c, d]
}

/// Checks claims a) to d) on the output of `prefix`, a 16-wire network.
pub fn check_observations(prefix: &Network, mode: ObservationMode) -> Result<ObservationReport> {
    if prefix.width() != 16 {
        return Err(Error::WidthMismatch {
            left: prefix.width(),
            right: 16,
        });
    }
    let (inputs_checked, first) = match mode {
        ObservationMode::ExhaustiveBinary => (1u64 << 16, first_binary_failures(prefix)),
        ObservationMode::SampledPermutations { samples, seed } => (
            samples as u64,
            first_permutation_failures(prefix, samples, seed),
        ),
    };
    let verdicts = Claim::ALL
        .iter()
        .zip(first)
        .map(|(&claim, counterexample)| ClaimVerdict {
            claim,
            counterexample,
        })
        .collect();
    Ok(ObservationReport {
        mode,
        inputs_checked,
        verdicts,
    })
}

/// Binary inputs enumerated with wire 0 as the most significant bit.
fn binary_input(x: u32) -> Vec<u8> {
    (0..16).map(|w| ((x >> (15 - w)) & 1) as u8).collect()
}

fn first_binary_failures(prefix: &Network) -> [Option<Counterexample>; 4] {
    let first: [Option<u32>; 4] = (0u32..1 << 16)
        .into_par_iter()
        .fold(
            || [None; 4],
            |mut acc: [Option<u32>; 4], x| {
                let mut out = binary_input(x);
                prefix.apply_in_place(&mut out);
                for (slot, ok) in acc.iter_mut().zip(claims_hold(&out)) {
                    if !ok && slot.is_none_or(|s| x < s) {
                        *slot = Some(x);
                    }
                }
                acc
            },
        )
        .reduce(
            || [None; 4],
            |a, b| {
                std::array::from_fn(|i| match (a[i], b[i]) {
                    (Some(p), Some(q)) => Some(p.min(q)),
                    (p, q) => p.or(q),
                })
            },
        );
    first.map(|x| x.map(|x| Counterexample::Binary(binary_input(x))))
}

fn first_permutation_failures(
    prefix: &Network,
    samples: usize,
    seed: u64,
) -> [Option<Counterexample>; 4] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut first: [Option<Counterexample>; 4] = Default::default();
    let mut input: Vec<usize> = (0..16).collect();
    for _ in 0..samples {
        input.shuffle(&mut rng);
        let mut out = input.clone();
        prefix.apply_in_place(&mut out);
        for (slot, ok) in first.iter_mut().zip(claims_hold(&out)) {
            if !ok && slot.is_none() {
                *slot = Some(Counterexample::Permutation(input.clone()));
            }
        }
    }
    first
}

/// Dominance counts between the two tetrads of `M` in an inferred poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TetradDominance {
    /// For each wire of [`TETRAD_UPPER`], how many lower-tetrad wires lie below it.
    pub upper_beats: [usize; 4],
    /// For each wire of [`TETRAD_LOWER`], how many upper-tetrad wires lie above it.
    pub lower_loses_to: [usize; 4],
}

impl TetradDominance {
    pub fn from_poset(p: &Poset) -> Self {
        TetradDominance {
            upper_beats: TETRAD_UPPER
                .map(|u| TETRAD_LOWER.iter().filter(|&&l| p.wire_leq(l, u)).count()),
            lower_loses_to: TETRAD_LOWER
                .map(|l| TETRAD_UPPER.iter().filter(|&&u| p.wire_leq(l, u)).count()),
        }
    }

    pub fn min_upper(&self) -> usize {
        self.upper_beats.iter().copied().min().unwrap_or(0)
    }

    pub fn min_lower(&self) -> usize {
        self.lower_loses_to.iter().copied().min().unwrap_or(0)
    }
}

/// Inferred poset of `prefix` restricted to the wires of `M`.
pub fn m_poset(prefix: &Network) -> Result<Poset> {
    if prefix.width() != 16 {
        return Err(Error::WidthMismatch {
            left: prefix.width(),
            right: 16,
        });
    }
    Ok(infer_poset(prefix)?.restrict(&M))
}

fn above_all_but(p: &Poset, wire: usize, except: &[usize]) -> bool {
    M.iter()
        .filter(|w| **w != wire && !except.contains(w))
        .all(|&w| p.wire_leq(w, wire))
}

fn below_all_but(p: &Poset, wire: usize, except: &[usize]) -> bool {
    M.iter()
        .filter(|w| **w != wire && !except.contains(w))
        .all(|&w| p.wire_leq(wire, w))
}

/// Green's tetrad poset: every upper wire beats at least two lower wires,
/// wire 9 beats at least three, every lower wire loses to at least two upper
/// wires, and so wires 12, 10 are the top two of `M` and wires 3, 5 the
/// bottom two.
pub fn check_green_m_poset(prefix: &Network) -> Result<bool> {
    let p = m_poset(prefix)?;
    let dom = TetradDominance::from_poset(&p);
    let nine = TETRAD_UPPER
        .iter()
        .position(|&w| w == 9)
        .expect("9 is upper");
    Ok(dom.min_upper() >= 2
        && dom.upper_beats[nine] >= 3
        && dom.min_lower() >= 2
        && above_all_but(&p, 12, &[])
        && above_all_but(&p, 10, &[12])
        && below_all_but(&p, 3, &[])
        && below_all_but(&p, 5, &[3]))
}

/// van Voorhis's poset after the second round of pairs: every upper wire
/// beats at least three lower wires and every lower wire loses to at least
/// three upper wires.
pub fn check_vv_m_poset(prefix: &Network) -> Result<bool> {
    let dom = TetradDominance::from_poset(&m_poset(prefix)?);
    Ok(dom.min_upper() >= 3 && dom.min_lower() >= 3)
}

/// Replaces both `M` phases by Batcher's 8-sorter on the `M` wires and checks
/// the result still sorts.
pub fn check_strategy() -> Result<bool> {
    let net = with_m_sorter(&batcher_sorter(8)?)?;
    Ok(verify_sorts_binary(&net)?.sorts())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DepthRegression {
    pub green_depth: usize,
    pub naive_depth: usize,
}

impl DepthRegression {
    pub fn holds(&self) -> bool {
        self.green_depth == 10 && self.naive_depth >= 11
    }
}

/// Depth of [`green16`] against [`green16_naive_merge`].
pub fn depth_regression() -> DepthRegression {
    DepthRegression {
        green_depth: depth(&green16()),
        naive_depth: depth(&green16_naive_merge()),
    }
}
