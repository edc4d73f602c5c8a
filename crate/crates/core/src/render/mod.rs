// SPDX-License-Identifier: Apache-2.0

//! Text, diagram and DOT output.

mod diagram;
mod dot;
mod text;

pub use diagram::{render_diagram, DiagramFormat, DiagramOptions, MAX_DRAW_WIDTH};
pub use dot::render_poset_dot;
pub use text::{parse_text, render_text, render_text_layered};
