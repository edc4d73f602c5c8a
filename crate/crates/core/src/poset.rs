// SPDX-License-Identifier: Apache-2.0

//! The "known to be ≤" relation between wires after a network has run.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::network::Network;
use crate::slice::{eval_network, InputSpace};
use crate::verify::{Verifier, VerifyMode};

/// Partial order on a set of nodes. Each node carries the wire index it came
/// from, so restrictions keep their original names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<usize>,
    leq: Vec<bool>,
}

impl Poset {
    /// Builds a poset from a row-major `n × n` relation. Rejects distinct
    /// nodes related both ways.
    pub fn from_relation(labels: Vec<usize>, leq: Vec<bool>) -> Result<Self> {
        let n = labels.len();
        assert_eq!(leq.len(), n * n, "relation must be n × n");
        for a in 0..n {
            for b in a + 1..n {
                if leq[a * n + b] && leq[b * n + a] {
                    return Err(Error::ForcedEquality {
                        a: labels[a],
                        b: labels[b],
                    });
                }
            }
        }
        Ok(Poset { labels, leq })
    }

    /// Subset-inclusion order on the `2^n` bitmasks.
    pub fn cube(n: usize) -> Poset {
        let size = 1usize << n;
        let mut leq = vec![false; size * size];
        for a in 0..size {
            for b in 0..size {
                leq[a * size + b] = a & b == a;
            }
        }
        Poset {
            labels: (0..size).collect(),
            leq,
        }
    }

    /// The total order `0 ≤ 1 ≤ … ≤ n − 1`.
    pub fn chain(n: usize) -> Poset {
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in a..n {
                leq[a * n + b] = true;
            }
        }
        Poset {
            labels: (0..n).collect(),
            leq,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Wire index of each node.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Node index of `wire`, if present.
    pub fn node_of(&self, wire: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == wire)
    }

    /// `a ≤ b` by node index.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    /// `a ≤ b` by wire label. Panics on unknown wires.
    pub fn wire_leq(&self, a: usize, b: usize) -> bool {
        let na = self.node_of(a).expect("unknown wire");
        let nb = self.node_of(b).expect("unknown wire");
        self.leq(na, nb)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn relation(&self) -> &[bool] {
        &self.leq
    }

    /// Sub-poset on the given wires, in the given order.
    pub fn restrict(&self, wires: &[usize]) -> Poset {
        let nodes: Vec<usize> = wires
            .iter()
            .map(|&w| self.node_of(w).expect("unknown wire"))
            .collect();
        let n = nodes.len();
        let mut leq = vec![false; n * n];
        for (i, &a) in nodes.iter().enumerate() {
            for (j, &b) in nodes.iter().enumerate() {
                leq[i * n + j] = self.leq(a, b);
            }
        }
        Poset {
            labels: wires.to_vec(),
            leq,
        }
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|a| self.leq(a, a))
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| !self.leq(a, b) || (0..n).all(|c| !self.leq(b, c) || self.leq(a, c)))
        })
    }

    pub fn is_chain(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    /// Nodes above or equal to `a`.
    pub fn upset(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.leq(a, b)).collect()
    }

    /// Nodes below or equal to `a`.
    pub fn downset(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.leq(b, a)).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| (0..self.len()).all(|b| !self.lt(a, b)))
            .collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| (0..self.len()).all(|b| !self.lt(b, a)))
            .collect()
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between. Sorted
    /// by `(a, b)`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// Reflexive-transitive closure of `edges` over `n` nodes, row-major.
    pub fn closure(n: usize, edges: &[(usize, usize)]) -> Vec<bool> {
        let mut rel = vec![false; n * n];
        for a in 0..n {
            rel[a * n + a] = true;
        }
        for &(a, b) in edges {
            rel[a * n + b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                if rel[a * n + k] {
                    for b in 0..n {
                        if rel[k * n + b] {
                            rel[a * n + b] = true;
                        }
                    }
                }
            }
        }
        rel
    }
}

impl Verifier {
    /// Infers `leq[a][b]`: no binary input ends with a 1 on `a` and a 0 on `b`.
    pub fn infer_poset(&self, net: &Network) -> Result<Poset> {
        self.check_width(net.width())?;
        let width = net.width();
        let broken = match self.mode {
            VerifyMode::BitSliced => broken_pairs_sliced(net),
            VerifyMode::Naive => broken_pairs_naive(net),
        };
        let leq = broken.into_iter().map(|b| !b).collect();
        Poset::from_relation((0..width).collect(), leq)
    }
}

/// `broken[a * w + b]` is set when some input leaves `a = 1, b = 0`.
fn broken_pairs_sliced(net: &Network) -> Vec<bool> {
    let width = net.width();
    let space = InputSpace::new(width);
    let mask = space.valid_mask();
    (0..space.blocks())
        .into_par_iter()
        .map(|block| {
            let out = eval_network(net, &space, space.block_words(block));
            let mut broken = vec![false; width * width];
            for a in 0..width {
                let wa = out.wire(a);
                for b in 0..width {
                    if a == b {
                        continue;
                    }
                    let wb = out.wire(b);
                    broken[a * width + b] = wa.iter().zip(wb).any(|(&x, &y)| x & !y & mask != 0);
                }
            }
            broken
        })
        .reduce(
            || vec![false; width * width],
            |mut acc, other| {
                acc.iter_mut().zip(other).for_each(|(x, y)| *x |= y);
                acc
            },
        )
}

fn broken_pairs_naive(net: &Network) -> Vec<bool> {
    let width = net.width();
    let space = InputSpace::new(width);
    let mut broken = vec![false; width * width];
    for x in 0..1u64 << width {
        let mut v = space.vector(x);
        net.apply_in_place(&mut v);
        for a in 0..width {
            for b in 0..width {
                if v[a] == 1 && v[b] == 0 {
                    broken[a * width + b] = true;
                }
            }
        }
    }
    broken
}

/// Poset inference with the default verifier.
pub fn infer_poset(net: &Network) -> Result<Poset> {
    Verifier::default().infer_poset(net)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_comparator_gives_chain() {
        let net = Network::from_pairs(2, &[(0, 1)]).unwrap();
        let p = infer_poset(&net).unwrap();
        assert_eq!(p, Poset::chain(2));
    }

    #[test]
    fn untouched_wires_are_incomparable() {
        let net = Network::from_pairs(3, &[(0, 1)]).unwrap();
        let p = infer_poset(&net).unwrap();
        assert!(p.leq(0, 1));
        assert!(!p.leq(1, 0));
        assert!(!p.leq(0, 2) && !p.leq(2, 0));
        assert!(!p.leq(1, 2) && !p.leq(2, 1));
    }

    #[test]
    fn degenerate_relation_is_rejected() {
        let rel = vec![true, true, true, true];
        assert_eq!(
            Poset::from_relation(vec![4, 9], rel),
            Err(Error::ForcedEquality { a: 4, b: 9 })
        );
    }

    #[test]
    fn cube_has_n_2_pow_n_minus_1_covers() {
        for n in 1..=4 {
            let cube = Poset::cube(n);
            assert!(cube.is_reflexive() && cube.is_transitive());
            assert_eq!(cube.hasse_edges().len(), n << (n - 1));
        }
    }

    #[test]
    fn chain_reduction_is_a_path() {
        let p = Poset::chain(3);
        assert_eq!(p.hasse_edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(Poset::closure(3, &p.hasse_edges()), p.relation());
    }

    #[test]
    fn restriction_keeps_labels() {
        let p = Poset::chain(5).restrict(&[4, 1]);
        assert_eq!(p.labels(), &[4, 1]);
        assert!(p.leq(1, 0));
        assert!(!p.leq(0, 1));
        assert!(p.wire_leq(1, 4));
    }
}
