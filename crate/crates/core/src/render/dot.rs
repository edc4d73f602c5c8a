// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;

use crate::poset::Poset;

/// DOT digraph of the Hasse diagram of `p`, edges pointing upwards. Nodes are
/// labelled with 1-based line numbers (wire + 1).
pub fn render_poset_dot(p: &Poset) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=circle];\n");
    let name = |node: usize| format!("n{}", p.labels()[node] + 1);
    for node in 0..p.len() {
        let _ = writeln!(
            out,
            "  {} [label=\"{}\"];",
            name(node),
            p.labels()[node] + 1
        );
    }
    for (a, b) in p.hasse_edges() {
        let _ = writeln!(out, "  {} -> {};", name(a), name(b));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_is_a_path() {
        let dot = render_poset_dot(&Poset::chain(3));
        assert_eq!(
            dot,
            "digraph poset {\n  rankdir=BT;\n  node [shape=circle];\n  n1 [label=\"1\"];\n  \
             n2 [label=\"2\"];\n  n3 [label=\"3\"];\n  n1 -> n2;\n  n2 -> n3;\n}\n"
        );
    }

    #[test]
    fn antichain_has_no_edges() {
        let p = Poset::from_relation(vec![0, 1, 2], {
            let mut r = vec![false; 9];
            for i in 0..3 {
                r[i * 3 + i] = true;
            }
            r
        })
        .unwrap();
        assert!(!render_poset_dot(&p).contains("->"));
    }
}
