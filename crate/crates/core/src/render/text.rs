// SPDX-License-Identifier: Apache-2.0

//! Plain-text network format.
//!
//! ```text
//! width 4
//! # phase:layer1
//! 0 1
//! 2 3
//! ;
//! 0 2
//! ```
//!
//! The header is `width <w>`, then one `<low> <high>` line per comparator.
//! `# phase:<tag>` sets the tag of the comparators that follow (`none`
//! clears it); other `#` lines are comments. A `;` line closes a layer, and
//! comparators between two separators must touch disjoint wires.

use crate::error::{Error, Result};
use crate::network::{Comparator, Network, PhaseTag};
use crate::schedule::asap_schedule;

fn push_tag_change(out: &mut String, current: &mut Option<PhaseTag>, next: Option<PhaseTag>) {
    if *current != next {
        match next {
            Some(tag) => out.push_str(&format!("# phase:{tag}\n")),
            None => out.push_str("# phase:none\n"),
        }
        *current = next;
    }
}

/// Renders `net` so that [`parse_text`] gives it back unchanged.
pub fn render_text(net: &Network) -> String {
    let mut out = format!("width {}\n", net.width());
    let mut tag = None;
    for c in net.comparators() {
        push_tag_change(&mut out, &mut tag, c.tag);
        out.push_str(&format!("{} {}\n", c.low, c.high));
    }
    out
}

/// Renders `net` with `;` between ASAP layers. Comparators are emitted in
/// layer order (stable within a layer), which only permutes comparators on
/// disjoint wires, so the parsed network computes the same function.
pub fn render_text_layered(net: &Network) -> String {
    let sched = asap_schedule(net);
    let mut out = format!("width {}\n", net.width());
    let mut tag = None;
    for (i, layer) in sched.grouped().iter().enumerate() {
        if i > 0 {
            out.push_str(";\n");
        }
        for &pos in layer {
            let c = &net.comparators()[pos];
            push_tag_change(&mut out, &mut tag, c.tag);
            out.push_str(&format!("{} {}\n", c.low, c.high));
        }
    }
    out
}

pub fn parse_text(text: &str) -> Result<Network> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut width = None;
    let mut tag = None;
    let mut comparators = Vec::new();
    let mut layer_wires: Vec<usize> = Vec::new();
    let layered = text.lines().any(|l| l.trim() == ";");
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(name) = comment.trim().strip_prefix("phase:") {
                tag = match name.trim() {
                    "none" => None,
                    other => Some(other.parse::<PhaseTag>().map_err(|m| err(line_no, m))?),
                };
            }
            continue;
        }
        let Some(width) = width else {
            let w = line
                .strip_prefix("width")
                .and_then(|rest| rest.trim().parse::<usize>().ok())
                .ok_or_else(|| err(line_no, "expected `width <w>` header".into()))?;
            if w == 0 {
                return Err(err(line_no, "width must be at least 1".into()));
            }
            width = Some(w);
            continue;
        };
        if line == ";" {
            if layer_wires.is_empty() {
                return Err(err(line_no, "empty layer".into()));
            }
            layer_wires.clear();
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [low, high] = fields[..] else {
            return Err(err(
                line_no,
                format!("expected `<low> <high>`, found `{line}`"),
            ));
        };
        let parse_wire = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| err(line_no, format!("`{s}` is not a wire index")))
        };
        let (low, high) = (parse_wire(low)?, parse_wire(high)?);
        if low >= high {
            return Err(err(
                line_no,
                format!("comparator ({low}, {high}) needs low < high"),
            ));
        }
        if high >= width {
            return Err(err(
                line_no,
                format!("wire {high} out of range for width {width}"),
            ));
        }
        if layered && (layer_wires.contains(&low) || layer_wires.contains(&high)) {
            return Err(err(
                line_no,
                format!("({low}, {high}) reuses a wire within its layer"),
            ));
        }
        layer_wires.extend([low, high]);
        comparators.push(Comparator { low, high, tag });
    }
    let width = width.ok_or_else(|| err(text.lines().count().max(1), "missing header".into()))?;
    Network::new(width, comparators)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_comparator_text() {
        let net = Network::from_pairs(2, &[(0, 1)]).unwrap();
        assert_eq!(render_text(&net), "width 2\n0 1\n");
        assert_eq!(parse_text("width 2\n0 1\n").unwrap(), net);
    }

    #[test]
    fn tags_survive() {
        let net = Network::new(
            3,
            vec![
                Comparator::tagged(0, 1, PhaseTag::Pairs),
                Comparator::new(1, 2),
                Comparator::tagged(0, 2, PhaseTag::Final),
            ],
        )
        .unwrap();
        let text = render_text(&net);
        assert_eq!(
            text,
            "width 3\n# phase:pairs\n0 1\n# phase:none\n1 2\n# phase:final\n0 2\n"
        );
        assert_eq!(parse_text(&text).unwrap(), net);
    }

    #[test]
    fn rejects_bad_comparators() {
        for (text, line) in [
            ("width 2\n1 1\n", 2),
            ("width 2\n1 0\n", 2),
            ("width 2\n0 2\n", 2),
            ("width 2\n0\n", 2),
            ("width 2\n0 x\n", 2),
            ("0 1\n", 1),
            ("width 3\n0 1\n1 2\n;\n", 3),
            ("width 3\n;\n0 1\n", 2),
            ("width 3\n# phase:bogus\n0 1\n", 2),
        ] {
            match parse_text(text) {
                Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn separators_accepted_when_disjoint() {
        let net = parse_text("width 4\n0 1\n2 3\n;\n0 2\n").unwrap();
        assert_eq!(net.pairs(), vec![(0, 1), (2, 3), (0, 2)]);
    }

    #[test]
    fn layered_rendering_parses() {
        let net = Network::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (0, 1)]).unwrap();
        let text = render_text_layered(&net);
        assert_eq!(text, "width 4\n0 1\n;\n1 2\n;\n2 3\n0 1\n");
        let back = parse_text(&text).unwrap();
        assert_eq!(back.len(), 4);
        assert!(parse_text("width 3\n0 1\n1 2\n").is_ok());
    }
}
