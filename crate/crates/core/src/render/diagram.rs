// SPDX-License-Identifier: Apache-2.0

//! Knuth-style network diagrams: one horizontal line per wire, one vertical
//! bridge per comparator, bridges grouped into columns by ASAP layer.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::network::{Network, PhaseTag};
use crate::schedule::asap_schedule;

pub const MAX_DRAW_WIDTH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramFormat {
    Ascii,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagramOptions {
    /// Draw wire 0 at the top instead of the bottom.
    pub flip: bool,
    /// Numeric block labels under tagged sub-networks.
    pub labels: bool,
    /// Per-phase bridge colours (SVG only).
    pub color: bool,
    /// Vertical line after the approximate phase.
    pub separator: bool,
}

impl Default for DiagramOptions {
    fn default() -> Self {
        DiagramOptions {
            flip: false,
            labels: true,
            color: true,
            separator: true,
        }
    }
}

/// Column placement of every comparator.
struct Layout {
    /// Global column of each comparator, in network order.
    column: Vec<usize>,
    /// Layer (0-based) of each comparator.
    layer: Vec<usize>,
    /// First global column of each layer, plus one trailing entry.
    layer_start: Vec<usize>,
    /// Separator drawn after this 0-based layer.
    separator_after: Option<usize>,
}

impl Layout {
    fn new(net: &Network, opts: &DiagramOptions) -> Layout {
        let sched = asap_schedule(net);
        let cs = net.comparators();
        let mut column = vec![0; cs.len()];
        let mut layer_start = vec![0];
        for group in sched.grouped() {
            let mut order = group.clone();
            order.sort_by_key(|&p| (cs[p].low, cs[p].high, p));
            // Sub-columns of this layer, each holding its occupied spans.
            let mut subs: Vec<Vec<(usize, usize)>> = Vec::new();
            for p in order {
                let span = (cs[p].low, cs[p].high);
                let free = subs
                    .iter()
                    .position(|spans| spans.iter().all(|&(lo, hi)| span.1 < lo || span.0 > hi));
                let sub = free.unwrap_or_else(|| {
                    subs.push(Vec::new());
                    subs.len() - 1
                });
                subs[sub].push(span);
                column[p] = layer_start.last().unwrap() + sub;
            }
            let next = layer_start.last().unwrap() + subs.len();
            layer_start.push(next);
        }
        let layer: Vec<usize> = sched.layers().iter().map(|l| l - 1).collect();
        let separator_after = opts
            .separator
            .then(|| approx_boundary(net, &layer))
            .flatten();
        Layout {
            column,
            layer,
            layer_start,
            separator_after,
        }
    }

    fn depth(&self) -> usize {
        self.layer_start.len() - 1
    }

    fn columns(&self) -> usize {
        *self.layer_start.last().unwrap()
    }
}

/// Last layer of the approx phase, if every other comparator comes later.
fn approx_boundary(net: &Network, layer: &[usize]) -> Option<usize> {
    let cs = net.comparators();
    let is_approx = |i: usize| cs[i].tag == Some(PhaseTag::Approx);
    let last = (0..cs.len())
        .filter(|&i| is_approx(i))
        .map(|i| layer[i])
        .max()?;
    let first_other = (0..cs.len())
        .filter(|&i| !is_approx(i))
        .map(|i| layer[i])
        .min();
    match first_other {
        Some(l) if l <= last => None,
        _ => Some(last),
    }
}

/// Column span of each labelled block, keyed by label.
fn blocks(net: &Network, layout: &Layout) -> BTreeMap<u8, (usize, usize, usize, usize)> {
    let mut out: BTreeMap<u8, (usize, usize, usize, usize)> = BTreeMap::new();
    for (i, c) in net.comparators().iter().enumerate() {
        if let Some(label) = c.tag.and_then(PhaseTag::block_label) {
            let col = layout.column[i];
            let e = out.entry(label).or_insert((col, col, c.low, c.high));
            e.0 = e.0.min(col);
            e.1 = e.1.max(col);
            e.2 = e.2.min(c.low);
            e.3 = e.3.max(c.high);
        }
    }
    out
}

pub fn render_diagram(
    net: &Network,
    format: DiagramFormat,
    opts: &DiagramOptions,
) -> Result<String> {
    if net.width() > MAX_DRAW_WIDTH {
        return Err(Error::TooWideToDraw {
            width: net.width(),
            limit: MAX_DRAW_WIDTH,
        });
    }
    let layout = Layout::new(net, opts);
    Ok(match format {
        DiagramFormat::Ascii => ascii(net, &layout, opts),
        DiagramFormat::Svg => svg(net, &layout, opts),
    })
}

fn ascii(net: &Network, layout: &Layout, opts: &DiagramOptions) -> String {
    let width = net.width();
    let row_of = |wire: usize| if opts.flip { wire } else { width - 1 - wire };
    let rows = 2 * width - 1;

    // Horizontal position of every global column and of the separator.
    let mut x_of_col = Vec::with_capacity(layout.columns());
    let mut sep_x = None;
    let mut x = 1;
    for l in 0..layout.depth() {
        for _ in layout.layer_start[l]..layout.layer_start[l + 1] {
            x_of_col.push(x);
            x += 2;
        }
        x += 1;
        if layout.separator_after == Some(l) {
            sep_x = Some(x);
            x += 2;
        }
    }
    let line_len = x;

    let mut grid: Vec<Vec<char>> = (0..rows)
        .map(|r| vec![if r % 2 == 0 { '-' } else { ' ' }; line_len])
        .collect();
    if let Some(sx) = sep_x {
        for row in grid.iter_mut() {
            row[sx] = ':';
        }
    }
    for (i, c) in net.comparators().iter().enumerate() {
        let x = x_of_col[layout.column[i]];
        let (a, b) = (row_of(c.low) * 2, row_of(c.high) * 2);
        let (top, bottom) = (a.min(b), a.max(b));
        for (r, row) in grid.iter_mut().enumerate().take(bottom + 1).skip(top) {
            row[x] = if r == top || r == bottom { 'o' } else { '|' };
        }
    }

    let gutter = format!("{}", width).len() + 1;
    let mut out = String::new();
    let mut ruler = vec![' '; line_len];
    for l in 0..layout.depth() {
        let label = (l + 1).to_string();
        let start = x_of_col[layout.layer_start[l]];
        for (k, ch) in label.chars().enumerate() {
            if start + k < line_len {
                ruler[start + k] = ch;
            }
        }
    }
    let _ = writeln!(
        out,
        "{:gutter$}{}",
        "",
        ruler.iter().collect::<String>().trim_end()
    );
    for (r, row) in grid.iter().enumerate() {
        let text: String = row.iter().collect();
        if r % 2 == 0 {
            let wire = if opts.flip { r / 2 } else { width - 1 - r / 2 };
            let _ = writeln!(out, "{:>w$} {}", wire, text, w = gutter - 1);
        } else {
            let _ = writeln!(out, "{:gutter$}{}", "", text.trim_end());
        }
    }
    if opts.labels {
        let blocks = blocks(net, layout);
        if !blocks.is_empty() {
            let mut row = vec![' '; line_len + blocks.len()];
            for (label, (c0, c1, _, _)) in blocks {
                let mut at = (x_of_col[c0] + x_of_col[c1]) / 2;
                while row[at] != ' ' {
                    at += 1;
                }
                row[at] = char::from(b'0' + label);
            }
            let _ = writeln!(
                out,
                "{:gutter$}{}",
                "",
                row.iter().collect::<String>().trim_end()
            );
        }
    }
    out
}

const COL_W: usize = 14;
const LAYER_GAP: usize = 10;
const ROW_H: usize = 24;
const MARGIN: usize = 30;

fn phase_color(tag: Option<PhaseTag>) -> &'static str {
    match tag {
        None => "#000000",
        Some(PhaseTag::Approx) => "#4c72b0",
        Some(PhaseTag::Layer1) => "#55a868",
        Some(PhaseTag::Layer3) => "#2f8f5b",
        Some(PhaseTag::Pairs) => "#c44e52",
        Some(PhaseTag::Pairs2) => "#dd8452",
        Some(PhaseTag::TetradA) => "#8172b3",
        Some(PhaseTag::TetradB) => "#937860",
        Some(PhaseTag::Merge) => "#da8bc3",
        Some(PhaseTag::Final) => "#8c8c8c",
    }
}

fn svg(net: &Network, layout: &Layout, opts: &DiagramOptions) -> String {
    let width = net.width();
    let mut x_of_col = Vec::with_capacity(layout.columns());
    let mut sep_x = None;
    let mut x = MARGIN + COL_W / 2;
    for l in 0..layout.depth() {
        for _ in layout.layer_start[l]..layout.layer_start[l + 1] {
            x_of_col.push(x);
            x += COL_W;
        }
        x += LAYER_GAP;
        if layout.separator_after == Some(l) {
            sep_x = Some(x - LAYER_GAP / 2 - COL_W / 2);
        }
    }
    let total_w = x + MARGIN;
    let label_band = if opts.labels { ROW_H } else { 0 };
    let total_h = 2 * MARGIN + (width - 1) * ROW_H + label_band;
    let y_of = |wire: usize| {
        let row = if opts.flip { wire } else { width - 1 - wire };
        MARGIN + row * ROW_H
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total_w}" height="{total_h}" viewBox="0 0 {total_w} {total_h}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect width="{total_w}" height="{total_h}" fill="white"/>"#
    );
    let _ = writeln!(out, r#"<g class="wires" stroke="black" stroke-width="1">"#);
    for w in 0..width {
        let y = y_of(w);
        let _ = writeln!(
            out,
            r#"<line class="wire" x1="{}" y1="{y}" x2="{}" y2="{y}"/>"#,
            MARGIN - 10,
            total_w - MARGIN + 10
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r#"<g class="wire-labels" font-family="monospace" font-size="10" text-anchor="end">"#
    );
    for w in 0..width {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}">{}</text>"#,
            MARGIN - 14,
            y_of(w) + 3,
            w + 1
        );
    }
    let _ = writeln!(out, "</g>");

    let cs = net.comparators();
    for l in 0..layout.depth() {
        let _ = writeln!(out, r#"<g class="layer" data-layer="{}">"#, l + 1);
        for (i, c) in cs.iter().enumerate().filter(|(i, _)| layout.layer[*i] == l) {
            let x = x_of_col[layout.column[i]];
            let color = if opts.color {
                phase_color(c.tag)
            } else {
                "#000000"
            };
            let phase = c.tag.map(PhaseTag::as_str).unwrap_or("none");
            let (y1, y2) = (y_of(c.low), y_of(c.high));
            let _ = writeln!(
                out,
                r#"<line class="bridge" data-phase="{phase}" x1="{x}" y1="{y1}" x2="{x}" y2="{y2}" stroke="{color}" stroke-width="2"/>"#
            );
            for y in [y1, y2] {
                let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="3" fill="{color}"/>"#);
            }
        }
        let _ = writeln!(out, "</g>");
    }
    if let Some(sx) = sep_x {
        let _ = writeln!(
            out,
            r#"<line class="separator" x1="{sx}" y1="{}" x2="{sx}" y2="{}" stroke="black" stroke-dasharray="4,3"/>"#,
            MARGIN - 12,
            MARGIN + (width - 1) * ROW_H + 12
        );
    }
    if opts.labels {
        for (label, (c0, c1, _, _)) in blocks(net, layout) {
            let cx = (x_of_col[c0] + x_of_col[c1]) / 2;
            let _ = writeln!(
                out,
                r#"<text class="block-label" x="{cx}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{label}</text>"#,
                MARGIN + (width - 1) * ROW_H + ROW_H
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
