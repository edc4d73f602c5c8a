// SPDX-License-Identifier: Apache-2.0

//! The 16-input sorters of Green and van Voorhis, built phase by phase, plus
//! the pieces they are made of and a Batcher baseline.
//!
//! Both 16-sorters open with the 4-dimensional hypercube phase, which leaves
//! wire `w` bounded below by every wire whose bitmask is a subset of `w`'s.
//! The popcount of a wire index is its cube layer (0 through 4). After the two
//! outer layers are sorted, the six medial ranks all live on the set [`M`],
//! and the two constructions differ only in how they sort `M`.

use crate::error::{Error, Result};
use crate::network::{Comparator, Network, PhaseTag};

/// Cube layer I: popcount-1 wires.
pub const LAYER1: [usize; 4] = [1, 2, 4, 8];
/// Cube layer III: popcount-3 wires.
pub const LAYER3: [usize; 4] = [7, 11, 13, 14];
/// Middle layer plus wire 7 (minimum of layer III once sorted) and wire 8
/// (maximum of layer I once sorted), ascending.
pub const M: [usize; 8] = [3, 5, 6, 7, 8, 9, 10, 12];

/// Upper tetrad of `M`: the three pair winners and min(layer III).
pub const TETRAD_UPPER: [usize; 4] = [7, 9, 10, 12];
/// Lower tetrad of `M`: the three pair losers and max(layer I).
pub const TETRAD_LOWER: [usize; 4] = [3, 5, 6, 8];

/// Middle-layer pairs compared right after the layer sorters. Each pair is a
/// wire and its bitwise complement, so together they neighbour every wire of
/// layers I and III.
pub const MIDDLE_PAIRS: [(usize, usize); 3] = [(3, 12), (5, 10), (6, 9)];
/// van Voorhis's second round of pairs on the middle layer.
pub const CROSS_PAIRS: [(usize, usize); 3] = [(5, 12), (6, 10), (3, 9)];
/// Rank repairs after `M` is sorted: max(M) against the third element of
/// layer III, min(M) against the second element of layer I.
pub const FINAL_PAIRS: [(usize, usize); 2] = [(3, 4), (11, 12)];

const SORTER4_PAIRS: [(usize, usize); 5] = [(0, 1), (2, 3), (0, 2), (1, 3), (1, 2)];

/// Cube layer of a wire in a `2^n`-wire hypercube phase.
pub fn cube_layer(wire: usize) -> u32 {
    wire.count_ones()
}

/// Wires of cube layer `layer` among `2^n` wires, ascending.
pub fn cube_layer_wires(n: u32, layer: u32) -> Vec<usize> {
    (0..1usize << n)
        .filter(|w| cube_layer(*w) == layer)
        .collect()
}

/// Approximate sorting phase on `2^n` wires: round `k` compares `i` with
/// `i + 2^k` for every `i` with bit `k` clear.
pub fn hypercube_phase(n: u32) -> Result<Network> {
    hypercube_phase_ordered(&(0..n).collect::<Vec<_>>())
}

/// Hypercube phase with the rounds taken in the given dimension order.
pub fn hypercube_phase_ordered(dims: &[u32]) -> Result<Network> {
    let n = dims.len() as u32;
    if n == 0 {
        return Err(Error::UnsupportedSize(0));
    }
    if n > 24 {
        return Err(Error::UnsupportedSize(n as usize));
    }
    let width = 1usize << n;
    let mut cs = Vec::with_capacity(n as usize * width / 2);
    for &k in dims {
        if k >= n {
            return Err(Error::UnsupportedSize(k as usize));
        }
        let step = 1usize << k;
        cs.extend(
            (0..width)
                .filter(|i| i & step == 0)
                .map(|i| Comparator::tagged(i, i + step, PhaseTag::Approx)),
        );
    }
    Network::new(width, cs)
}

/// The 5-comparator, depth-3 four-input sorter. Its first four comparators
/// already put the minimum on wire 0 and the maximum on wire 3.
pub fn sorter4() -> Network {
    Network::from_pairs(4, &SORTER4_PAIRS).expect("static sorter")
}

fn tagged_block(block: &Network, wires: &[usize], tag: PhaseTag) -> Network {
    block
        .retagged(Some(tag))
        .embed(wires, 16)
        .expect("static wire list")
}

fn tagged_pairs(pairs: &[(usize, usize)], tag: PhaseTag) -> Network {
    let cs = pairs
        .iter()
        .map(|&(l, h)| Comparator::tagged(l, h, tag))
        .collect();
    Network::new(16, cs).expect("static pairs")
}

fn chain(parts: &[Network]) -> Network {
    parts.iter().skip(1).fold(parts[0].clone(), |acc, p| {
        acc.concat(p).expect("width 16 throughout")
    })
}

/// The 32-comparator hypercube phase on 16 wires.
pub fn approx16() -> Network {
    hypercube_phase(4).expect("n = 4")
}

/// Approximate phase followed by the sorters of layers I and III.
pub fn outer_layers16() -> Network {
    let s4 = sorter4();
    chain(&[
        approx16(),
        tagged_block(&s4, &LAYER1, PhaseTag::Layer1),
        tagged_block(&s4, &LAYER3, PhaseTag::Layer3),
    ])
}

/// Everything both 16-sorters share: 45 comparators through the first pairs.
pub fn common_prefix16() -> Network {
    chain(&[
        outer_layers16(),
        tagged_pairs(&MIDDLE_PAIRS, PhaseTag::Pairs),
    ])
}

fn tetrads() -> Network {
    let s4 = sorter4();
    chain(&[
        tagged_block(&s4, &TETRAD_UPPER, PhaseTag::TetradA),
        tagged_block(&s4, &TETRAD_LOWER, PhaseTag::TetradB),
    ])
}

fn green_with_merge(merge: &[(usize, usize)]) -> Network {
    chain(&[
        common_prefix16(),
        tetrads(),
        tagged_pairs(merge, PhaseTag::Merge),
        tagged_pairs(&FINAL_PAIRS, PhaseTag::Final),
    ])
}

/// Green's 16-sorter: 60 comparators, depth 10.
///
/// After the tetrad sorts the two extremes on each side of `M` are settled
/// and only wires 6..=9 remain to be merged. Wires 7 and 8 are ready a layer
/// earlier than 6 and 9, so they are compared first.
pub fn green16() -> Network {
    green_with_merge(&[(7, 8), (6, 7), (8, 9)])
}

/// [`green16`] with the final merge done as a plain sequential pass
/// (6,7), (7,8), (8,9). Still a sorter, but deeper.
pub fn green16_naive_merge() -> Network {
    green_with_merge(&[(6, 7), (7, 8), (8, 9)])
}

/// van Voorhis's 16-sorter: 61 comparators, depth 9.
///
/// A second round of middle-layer pairs runs while wires 7 and 8 are still
/// being computed, after which every element of each tetrad is ordered
/// against three of the other. Sorting both tetrads then leaves a single
/// comparison between the medial pair.
pub fn van_voorhis16() -> Network {
    chain(&[
        common_prefix16(),
        tagged_pairs(&CROSS_PAIRS, PhaseTag::Pairs2),
        tetrads(),
        tagged_pairs(&[(7, 8)], PhaseTag::Merge),
        tagged_pairs(&FINAL_PAIRS, PhaseTag::Final),
    ])
}

/// Outer-layer sorting, then `m_sorter` (an 8-input sorter) on the wires of
/// [`M`], then the two rank repairs.
pub fn with_m_sorter(m_sorter: &Network) -> Result<Network> {
    let m_phase = m_sorter.embed(&M, 16)?;
    outer_layers16()
        .concat(&m_phase)?
        .concat(&tagged_pairs(&FINAL_PAIRS, PhaseTag::Final))
}

/// Batcher's odd-even mergesort network for `n ∈ {2, 4, 8, 16, 32}`.
pub fn batcher_sorter(n: usize) -> Result<Network> {
    if !matches!(n, 2 | 4 | 8 | 16 | 32) {
        return Err(Error::UnsupportedSize(n));
    }
    let mut pairs = Vec::new();
    let mut p = 1;
    while p < n {
        let mut k = p;
        while k >= 1 {
            let mut j = k % p;
            while j + k < n {
                for i in 0..k.min(n - j - k) {
                    if (i + j) / (2 * p) == (i + j + k) / (2 * p) {
                        pairs.push((i + j, i + j + k));
                    }
                }
                j += 2 * k;
            }
            k /= 2;
        }
        p *= 2;
    }
    Network::from_pairs(n, &pairs)
}
