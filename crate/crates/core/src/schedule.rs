// SPDX-License-Identifier: Apache-2.0

//! Depth scheduling.

use crate::network::Network;

/// Assignment of comparators to parallel layers (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredSchedule {
    layer_of: Vec<usize>,
    depth: usize,
}

impl LayeredSchedule {
    /// Layer of the comparator at `position` in network order.
    pub fn layer_of(&self, position: usize) -> usize {
        self.layer_of[position]
    }

    pub fn layers(&self) -> &[usize] {
        &self.layer_of
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Comparator positions grouped by layer; index 0 holds layer 1.
    pub fn grouped(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.depth];
        for (pos, &layer) in self.layer_of.iter().enumerate() {
            groups[layer - 1].push(pos);
        }
        groups
    }

    /// Checks both layering invariants against `net`.
    pub fn is_valid_for(&self, net: &Network) -> bool {
        let cs = net.comparators();
        if cs.len() != self.layer_of.len() {
            return false;
        }
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                if cs[i].shares_wire(&cs[j]) && self.layer_of[i] >= self.layer_of[j] {
                    return false;
                }
            }
        }
        self.layer_of.iter().copied().max().unwrap_or(0) == self.depth
    }
}

/// Places every comparator one layer after the latest earlier comparator on
/// either of its wires.
pub fn asap_schedule(net: &Network) -> LayeredSchedule {
    let mut ready = vec![0usize; net.width()];
    let mut depth = 0;
    let layer_of = net
        .comparators()
        .iter()
        .map(|c| {
            let layer = ready[c.low].max(ready[c.high]) + 1;
            ready[c.low] = layer;
            ready[c.high] = layer;
            depth = depth.max(layer);
            layer
        })
        .collect();
    LayeredSchedule { layer_of, depth }
}

pub fn depth(net: &Network) -> usize {
    asap_schedule(net).depth()
}

/// Length of the longest chain of comparators in which each consecutive pair
/// shares a wire. Quadratic; used to cross-check [`asap_schedule`].
pub fn longest_chain(net: &Network) -> usize {
    let cs = net.comparators();
    let mut best = vec![1usize; cs.len()];
    for j in 0..cs.len() {
        for i in 0..j {
            if cs[i].shares_wire(&cs[j]) {
                best[j] = best[j].max(best[i] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}
