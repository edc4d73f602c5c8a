// SPDX-License-Identifier: Apache-2.0

//! Comparator networks.
//!
//! A [`Network`] is an ordered list of [`Comparator`]s on a fixed number of
//! wires. Every comparator is standard: after it fires, the smaller value sits
//! on `low` and the larger on `high`, so the maximum drifts to the highest wire
//! index.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Structural block a comparator belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhaseTag {
    Approx,
    Layer1,
    Layer3,
    Pairs,
    Pairs2,
    TetradA,
    TetradB,
    Merge,
    Final,
}

impl PhaseTag {
    pub const ALL: [PhaseTag; 9] = [
        PhaseTag::Approx,
        PhaseTag::Layer1,
        PhaseTag::Layer3,
        PhaseTag::Pairs,
        PhaseTag::Pairs2,
        PhaseTag::TetradA,
        PhaseTag::TetradB,
        PhaseTag::Merge,
        PhaseTag::Final,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PhaseTag::Approx => "approx",
            PhaseTag::Layer1 => "layer1",
            PhaseTag::Layer3 => "layer3",
            PhaseTag::Pairs => "pairs",
            PhaseTag::Pairs2 => "pairs2",
            PhaseTag::TetradA => "tetradA",
            PhaseTag::TetradB => "tetradB",
            PhaseTag::Merge => "merge",
            PhaseTag::Final => "final",
        }
    }

    /// Numeric block label used in diagrams: 1 and 2 for the layer sorters,
    /// 3 and 4 for the tetrad sorters, 5 for the merge.
    pub fn block_label(self) -> Option<u8> {
        match self {
            PhaseTag::Layer1 => Some(1),
            PhaseTag::Layer3 => Some(2),
            PhaseTag::TetradA => Some(3),
            PhaseTag::TetradB => Some(4),
            PhaseTag::Merge => Some(5),
            _ => None,
        }
    }
}

impl fmt::Display for PhaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PhaseTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        PhaseTag::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown phase tag `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Comparator {
    pub low: usize,
    pub high: usize,
    pub tag: Option<PhaseTag>,
}

impl Comparator {
    /// Untagged comparator. Orientation is checked when it enters a
    /// [`Network`].
    pub fn new(low: usize, high: usize) -> Self {
        Comparator {
            low,
            high,
            tag: None,
        }
    }

    pub fn tagged(low: usize, high: usize, tag: PhaseTag) -> Self {
        Comparator {
            low,
            high,
            tag: Some(tag),
        }
    }

    pub fn with_tag(self, tag: Option<PhaseTag>) -> Self {
        Comparator { tag, ..self }
    }

    pub fn touches(&self, wire: usize) -> bool {
        self.low == wire || self.high == wire
    }

    pub fn shares_wire(&self, other: &Comparator) -> bool {
        self.touches(other.low) || self.touches(other.high)
    }

    fn validate(&self, width: usize) -> Result<()> {
        if self.low >= self.high {
            return Err(Error::DegenerateComparator {
                low: self.low,
                high: self.high,
            });
        }
        if self.high >= width {
            return Err(Error::WireOutOfRange {
                low: self.low,
                high: self.high,
                width,
            });
        }
        Ok(())
    }
}

impl From<(usize, usize)> for Comparator {
    fn from((low, high): (usize, usize)) -> Self {
        Comparator::new(low, high)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Network {
    width: usize,
    comparators: Vec<Comparator>,
}

impl Network {
    pub fn new(width: usize, comparators: Vec<Comparator>) -> Result<Self> {
        if width == 0 {
            return Err(Error::ZeroWidth);
        }
        for c in &comparators {
            c.validate(width)?;
        }
        Ok(Network { width, comparators })
    }

    pub fn empty(width: usize) -> Result<Self> {
        Network::new(width, Vec::new())
    }

    /// Builds an untagged network from `(low, high)` pairs.
    pub fn from_pairs(width: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Network::new(width, pairs.iter().map(|&p| p.into()).collect())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn comparators(&self) -> &[Comparator] {
        &self.comparators
    }

    /// Number of comparators (the network's size, or complexity).
    pub fn len(&self) -> usize {
        self.comparators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comparators.is_empty()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.comparators.iter().map(|c| (c.low, c.high)).collect()
    }

    /// The first `count` comparators (clamped to the network length).
    pub fn prefix(&self, count: usize) -> Network {
        let count = count.min(self.comparators.len());
        Network {
            width: self.width,
            comparators: self.comparators[..count].to_vec(),
        }
    }

    /// Returns a copy with every comparator carrying `tag`.
    pub fn retagged(&self, tag: Option<PhaseTag>) -> Network {
        Network {
            width: self.width,
            comparators: self.comparators.iter().map(|c| c.with_tag(tag)).collect(),
        }
    }

    /// Comparators with the given tag, in network order.
    pub fn phase(&self, tag: PhaseTag) -> impl Iterator<Item = &Comparator> + '_ {
        self.comparators.iter().filter(move |c| c.tag == Some(tag))
    }

    pub fn has_tags(&self) -> bool {
        self.comparators.iter().any(|c| c.tag.is_some())
    }

    /// Applies the network to `input`, min to `low` and max to `high`.
    pub fn apply<T: Ord + Clone>(&self, input: &[T]) -> Result<Vec<T>> {
        if input.len() != self.width {
            return Err(Error::LengthMismatch {
                expected: self.width,
                got: input.len(),
            });
        }
        let mut out = input.to_vec();
        self.apply_in_place(&mut out);
        Ok(out)
    }

    /// In-place variant of [`Network::apply`]. Panics if `values` is shorter
    /// than the highest wire touched.
    pub fn apply_in_place<T: Ord>(&self, values: &mut [T]) {
        for c in &self.comparators {
            if values[c.low] > values[c.high] {
                values.swap(c.low, c.high);
            }
        }
    }

    /// Re-targets `self` onto `wires` of a host network of `host_width`
    /// wires: comparator `(i, j)` becomes `(wires[i], wires[j])`.
    pub fn embed(&self, wires: &[usize], host_width: usize) -> Result<Network> {
        if wires.len() != self.width {
            return Err(Error::WidthMismatch {
                left: self.width,
                right: wires.len(),
            });
        }
        if wires.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NonAscendingWires);
        }
        if let Some(&wire) = wires.iter().find(|&&w| w >= host_width) {
            return Err(Error::TargetOutOfRange {
                wire,
                width: host_width,
            });
        }
        let comparators = self
            .comparators
            .iter()
            .map(|c| Comparator {
                low: wires[c.low],
                high: wires[c.high],
                tag: c.tag,
            })
            .collect();
        Network::new(host_width, comparators)
    }

    /// Comparators of `self` followed by those of `other`.
    pub fn concat(&self, other: &Network) -> Result<Network> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                left: self.width,
                right: other.width,
            });
        }
        let mut comparators = self.comparators.clone();
        comparators.extend_from_slice(&other.comparators);
        Ok(Network {
            width: self.width,
            comparators,
        })
    }

    pub fn push(&mut self, comparator: Comparator) -> Result<()> {
        comparator.validate(self.width)?;
        self.comparators.push(comparator);
        Ok(())
    }
}

/// Free-function form of [`Network::embed`].
pub fn embed(block: &Network, wires: &[usize], host_width: usize) -> Result<Network> {
    block.embed(wires, host_width)
}

/// Free-function form of [`Network::concat`].
pub fn concat(a: &Network, b: &Network) -> Result<Network> {
    a.concat(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_comparator_orders_pair() {
        let net = Network::from_pairs(2, &[(0, 1)]).unwrap();
        assert_eq!(net.apply(&[5, 3]).unwrap(), vec![3, 5]);
        assert_eq!(net.apply(&[3, 5]).unwrap(), vec![3, 5]);
    }

    #[test]
    fn apply_rejects_wrong_length() {
        let net = Network::from_pairs(3, &[(0, 1)]).unwrap();
        assert_eq!(
            net.apply(&[1, 2]),
            Err(Error::LengthMismatch {
                expected: 3,
                got: 2
            })
        );
    }

    #[test]
    fn construction_rejects_bad_comparators() {
        assert!(matches!(
            Network::from_pairs(2, &[(1, 1)]),
            Err(Error::DegenerateComparator { .. })
        ));
        assert!(matches!(
            Network::from_pairs(2, &[(1, 0)]),
            Err(Error::DegenerateComparator { .. })
        ));
        assert!(matches!(
            Network::from_pairs(2, &[(0, 2)]),
            Err(Error::WireOutOfRange { .. })
        ));
        assert_eq!(Network::empty(0), Err(Error::ZeroWidth));
    }

    #[test]
    fn embed_maps_block_onto_wires() {
        let block = Network::from_pairs(2, &[(0, 1)]).unwrap();
        let host = block.embed(&[3, 12], 16).unwrap();
        assert_eq!(host.pairs(), vec![(3, 12)]);
        assert_eq!(host.width(), 16);
    }

    #[test]
    fn embed_rejects_bad_targets() {
        let block = Network::from_pairs(2, &[(0, 1)]).unwrap();
        assert_eq!(block.embed(&[2, 1], 4), Err(Error::NonAscendingWires));
        assert_eq!(block.embed(&[2, 2], 4), Err(Error::NonAscendingWires));
        assert_eq!(
            block.embed(&[1, 4], 4),
            Err(Error::TargetOutOfRange { wire: 4, width: 4 })
        );
        assert!(matches!(
            block.embed(&[0, 1, 2], 4),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn concat_with_empty_is_identity() {
        let net = Network::new(
            3,
            vec![
                Comparator::tagged(0, 1, PhaseTag::Pairs),
                Comparator::new(1, 2),
            ],
        )
        .unwrap();
        let empty = Network::empty(3).unwrap();
        assert_eq!(empty.concat(&net).unwrap(), net);
        assert_eq!(net.concat(&empty).unwrap(), net);
        assert!(matches!(
            net.concat(&Network::empty(4).unwrap()),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn phase_tags_parse_back() {
        for tag in PhaseTag::ALL {
            assert_eq!(tag.as_str().parse::<PhaseTag>(), Ok(tag));
        }
        assert!("layer2".parse::<PhaseTag>().is_err());
    }
}
