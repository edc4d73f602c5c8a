// SPDX-License-Identifier: Apache-2.0

//! Monotone AND/OR circuits read off comparator networks.
//!
//! On bits a comparator computes `min = AND` and `max = OR`, so every
//! comparator becomes two gates and a depth-`d` network becomes a depth-`d`
//! circuit. Output wire `j` of a `w`-input sorter computes the threshold
//! function "at least `w - j` ones".

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::network::Network;
use crate::slice::{eval_network, InputSpace};
use crate::verify::DEFAULT_CAP;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Signal {
    Input(usize),
    Gate(usize),
    Const(bool),
}

impl fmt::Display for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Signal::Input(i) => write!(f, "x{i}"),
            Signal::Gate(g) => write!(f, "g{g}"),
            Signal::Const(b) => write!(f, "{}", u8::from(*b)),
        }
    }
}

impl FromStr for Signal {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let index = |rest: &str| {
            rest.parse::<usize>()
                .map_err(|_| format!("bad reference `{s}`"))
        };
        match s {
            "0" => Ok(Signal::Const(false)),
            "1" => Ok(Signal::Const(true)),
            _ if s.starts_with('x') => index(&s[1..]).map(Signal::Input),
            _ if s.starts_with('g') => index(&s[1..]).map(Signal::Gate),
            _ => Err(format!("bad reference `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    And,
    Or,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gate {
    pub kind: GateKind,
    pub a: Signal,
    pub b: Signal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneCircuit {
    inputs: usize,
    /// Inputs not pinned to a constant, ascending.
    live: Vec<usize>,
    gates: Vec<Gate>,
    /// `(wire, signal)` in ascending wire order.
    outputs: Vec<(usize, Signal)>,
}

impl MonotoneCircuit {
    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn live_inputs(&self) -> &[usize] {
        &self.live
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[(usize, Signal)] {
        &self.outputs
    }

    pub fn output(&self, wire: usize) -> Result<Signal> {
        self.outputs
            .iter()
            .find(|(w, _)| *w == wire)
            .map(|&(_, s)| s)
            .ok_or(Error::UnknownOutput(wire))
    }

    /// Gate levels; inputs and constants sit at level 0.
    fn levels(&self) -> Vec<usize> {
        let mut levels = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let level_of = |s: Signal| match s {
                Signal::Gate(id) => levels[id],
                _ => 0,
            };
            let l = 1 + level_of(g.a).max(level_of(g.b));
            levels.push(l);
        }
        levels
    }

    /// Longest input-to-output path, counted in gates.
    pub fn cone_depth(&self, wire: usize) -> Result<usize> {
        Ok(match self.output(wire)? {
            Signal::Gate(g) => self.levels()[g],
            _ => 0,
        })
    }

    /// Evaluates on a full input assignment (pinned inputs are ignored).
    /// Returns output values in [`MonotoneCircuit::outputs`] order.
    pub fn eval(&self, input: &[u8]) -> Result<Vec<u8>> {
        if input.len() != self.inputs {
            return Err(Error::LengthMismatch {
                expected: self.inputs,
                got: input.len(),
            });
        }
        let mut values = Vec::with_capacity(self.gates.len());
        let read = |s: Signal, values: &[u8]| match s {
            Signal::Input(i) => input[i],
            Signal::Gate(g) => values[g],
            Signal::Const(b) => u8::from(b),
        };
        for g in &self.gates {
            let (a, b) = (read(g.a, &values), read(g.b, &values));
            values.push(match g.kind {
                GateKind::And => a & b,
                GateKind::Or => a | b,
            });
        }
        Ok(self
            .outputs
            .iter()
            .map(|&(_, s)| read(s, &values))
            .collect())
    }

    /// Pins `input` to `bit`, propagates constants and drops gates no output
    /// depends on.
    pub fn specialize(&self, input: usize, bit: bool) -> Result<MonotoneCircuit> {
        if input >= self.inputs {
            return Err(Error::InputOutOfRange {
                index: input,
                inputs: self.inputs,
            });
        }
        let mut remap: Vec<Signal> = Vec::with_capacity(self.gates.len());
        let mut gates = Vec::new();
        let subst = |s: Signal, remap: &[Signal]| match s {
            Signal::Input(i) if i == input => Signal::Const(bit),
            Signal::Gate(g) => remap[g],
            other => other,
        };
        for g in &self.gates {
            let a = subst(g.a, &remap);
            let b = subst(g.b, &remap);
            let folded = match (g.kind, a, b) {
                (GateKind::And, Signal::Const(false), _)
                | (GateKind::And, _, Signal::Const(false)) => Some(Signal::Const(false)),
                (GateKind::Or, Signal::Const(true), _) | (GateKind::Or, _, Signal::Const(true)) => {
                    Some(Signal::Const(true))
                }
                (_, Signal::Const(_), other) | (_, other, Signal::Const(_)) => Some(other),
                _ => None,
            };
            remap.push(folded.unwrap_or_else(|| {
                gates.push(Gate { kind: g.kind, a, b });
                Signal::Gate(gates.len() - 1)
            }));
        }
        let outputs = self
            .outputs
            .iter()
            .map(|&(w, s)| (w, subst(s, &remap)))
            .collect();
        let live = self.live.iter().copied().filter(|&i| i != input).collect();
        Ok(MonotoneCircuit {
            inputs: self.inputs,
            live,
            gates,
            outputs,
        }
        .without_dead_gates())
    }

    fn without_dead_gates(self) -> MonotoneCircuit {
        let mut needed = vec![false; self.gates.len()];
        for &(_, s) in &self.outputs {
            if let Signal::Gate(g) = s {
                needed[g] = true;
            }
        }
        for g in (0..self.gates.len()).rev() {
            if needed[g] {
                for s in [self.gates[g].a, self.gates[g].b] {
                    if let Signal::Gate(h) = s {
                        needed[h] = true;
                    }
                }
            }
        }
        let mut new_id = vec![usize::MAX; self.gates.len()];
        let mut gates = Vec::new();
        let rename = |s: Signal, new_id: &[usize]| match s {
            Signal::Gate(g) => Signal::Gate(new_id[g]),
            other => other,
        };
        for (g, gate) in self.gates.iter().enumerate() {
            if needed[g] {
                new_id[g] = gates.len();
                gates.push(Gate {
                    kind: gate.kind,
                    a: rename(gate.a, &new_id),
                    b: rename(gate.b, &new_id),
                });
            }
        }
        let outputs = self
            .outputs
            .iter()
            .map(|&(w, s)| (w, rename(s, &new_id)))
            .collect();
        MonotoneCircuit {
            inputs: self.inputs,
            live: self.live,
            gates,
            outputs,
        }
    }

    /// Keeps only output `wire` and the gates it depends on.
    pub fn cone(&self, wire: usize) -> Result<MonotoneCircuit> {
        let signal = self.output(wire)?;
        let single = MonotoneCircuit {
            inputs: self.inputs,
            live: self.live.clone(),
            gates: self.gates.clone(),
            outputs: vec![(wire, signal)],
        };
        Ok(single.without_dead_gates())
    }

    /// Bit-sliced evaluation of every gate over one block of the space spanned
    /// by the live inputs.
    fn eval_block(&self, space: &InputSpace, words: std::ops::Range<usize>) -> Vec<Vec<u64>> {
        let len = words.len();
        let mut input_slices = vec![Vec::new(); self.inputs];
        for (var, &i) in self.live.iter().enumerate() {
            input_slices[i] = words.clone().map(|k| space.var_word(var, k)).collect();
        }
        let mut gate_slices: Vec<Vec<u64>> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let slice = {
                let read = |s: Signal, k: usize| match s {
                    Signal::Input(i) => input_slices[i][k],
                    Signal::Gate(h) => gate_slices[h][k],
                    Signal::Const(b) => {
                        if b {
                            !0
                        } else {
                            0
                        }
                    }
                };
                (0..len)
                    .map(|k| match g.kind {
                        GateKind::And => read(g.a, k) & read(g.b, k),
                        GateKind::Or => read(g.a, k) | read(g.b, k),
                    })
                    .collect()
            };
            gate_slices.push(slice);
        }
        let mut out = Vec::with_capacity(self.outputs.len());
        for &(_, s) in &self.outputs {
            out.push(match s {
                Signal::Input(i) => input_slices[i].clone(),
                Signal::Gate(g) => gate_slices[g].clone(),
                Signal::Const(b) => vec![if b { !0 } else { 0 }; len],
            });
        }
        out
    }

    fn check_live(&self, n: usize) -> Result<InputSpace> {
        if self.live.len() != n {
            return Err(Error::LiveInputMismatch {
                live: self.live.len(),
                expected: n,
            });
        }
        if n > DEFAULT_CAP {
            return Err(Error::CapExceeded {
                width: n,
                cap: DEFAULT_CAP,
            });
        }
        Ok(InputSpace::new(n))
    }

    /// Does output `wire` equal "at least `k` of the `n` live inputs are 1"
    /// on every assignment?
    pub fn is_threshold(&self, wire: usize, k: usize, n: usize) -> Result<bool> {
        let pos = self
            .outputs
            .iter()
            .position(|&(w, _)| w == wire)
            .ok_or(Error::UnknownOutput(wire))?;
        let space = self.check_live(n)?;
        let mask = space.valid_mask();
        Ok((0..space.blocks()).into_par_iter().all(|block| {
            let words = space.block_words(block);
            let first = words.start;
            let got = &self.eval_block(&space, words)[pos];
            got.iter().enumerate().all(|(k_word, &word)| {
                let base = ((first + k_word) as u64) * 64;
                let expected = (0..64u64)
                    .filter(|t| (base + t).count_ones() as usize >= k)
                    .fold(0u64, |acc, t| acc | 1 << t);
                (word ^ expected) & mask == 0
            })
        }))
    }

    /// Exhaustively compares every output with the matching wire of `net`.
    /// Requires a circuit with no pinned inputs.
    pub fn equivalent_to_network(&self, net: &Network) -> Result<bool> {
        if self.inputs != net.width() {
            return Err(Error::WidthMismatch {
                left: self.inputs,
                right: net.width(),
            });
        }
        let space = self.check_live(self.inputs)?;
        let mask = space.valid_mask();
        Ok((0..space.blocks()).into_par_iter().all(|block| {
            let words = space.block_words(block);
            let expected = eval_network(net, &space, words.clone());
            let got = self.eval_block(&space, words);
            self.outputs.iter().zip(&got).all(|(&(wire, _), slice)| {
                slice
                    .iter()
                    .zip(expected.wire(wire))
                    .all(|(a, b)| (a ^ b) & mask == 0)
            })
        }))
    }

    /// Gate-list text: `g<id> = AND|OR <ref> <ref>` per gate, then
    /// `out<wire> = <ref>` per output. Comment lines carry the input count and
    /// any pinned inputs.
    pub fn render(&self) -> String {
        let mut out = format!("# inputs {}\n", self.inputs);
        let pinned: Vec<String> = (0..self.inputs)
            .filter(|i| !self.live.contains(i))
            .map(|i| format!("x{i}"))
            .collect();
        if !pinned.is_empty() {
            out.push_str(&format!("# pinned {}\n", pinned.join(" ")));
        }
        for (id, g) in self.gates.iter().enumerate() {
            let kind = match g.kind {
                GateKind::And => "AND",
                GateKind::Or => "OR",
            };
            out.push_str(&format!("g{id} = {kind} {} {}\n", g.a, g.b));
        }
        for (wire, s) in &self.outputs {
            out.push_str(&format!("out{wire} = {s}\n"));
        }
        out
    }

    /// Parses [`MonotoneCircuit::render`] output.
    pub fn parse(text: &str) -> Result<MonotoneCircuit> {
        let err = |line: usize, message: String| Error::Parse { line, message };
        let mut inputs = None;
        let mut pinned = Vec::new();
        let mut gates = Vec::new();
        let mut outputs = Vec::new();
        let mut max_input = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                let mut words = comment.split_whitespace();
                match words.next() {
                    Some("inputs") => {
                        let n = words.next().and_then(|w| w.parse().ok());
                        inputs = Some(n.ok_or_else(|| err(line_no, "bad input count".into()))?);
                    }
                    Some("pinned") => {
                        for w in words {
                            match w.parse::<Signal>() {
                                Ok(Signal::Input(i)) => pinned.push(i),
                                _ => return Err(err(line_no, format!("bad pinned input `{w}`"))),
                            }
                        }
                    }
                    _ => {}
                }
                continue;
            }
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| err(line_no, "expected `=`".into()))?;
            let lhs = lhs.trim();
            let rhs: Vec<&str> = rhs.split_whitespace().collect();
            let mut signal = |s: &str| -> Result<Signal> {
                let sig = s.parse::<Signal>().map_err(|m| err(line_no, m))?;
                match sig {
                    Signal::Gate(g) if g >= gates.len() => {
                        Err(err(line_no, format!("g{g} used before definition")))
                    }
                    Signal::Input(i) => {
                        max_input = max_input.max(i + 1);
                        Ok(sig)
                    }
                    _ => Ok(sig),
                }
            };
            if let Some(id) = lhs.strip_prefix('g') {
                if id.parse::<usize>().ok() != Some(gates.len()) {
                    return Err(err(line_no, format!("expected gate g{}", gates.len())));
                }
                let [kind, a, b] = rhs[..] else {
                    return Err(err(line_no, "expected `AND|OR <ref> <ref>`".into()));
                };
                let kind = match kind {
                    "AND" => GateKind::And,
                    "OR" => GateKind::Or,
                    other => return Err(err(line_no, format!("unknown gate kind `{other}`"))),
                };
                let (a, b) = (signal(a)?, signal(b)?);
                gates.push(Gate { kind, a, b });
            } else if let Some(wire) = lhs.strip_prefix("out") {
                let wire = wire
                    .parse()
                    .map_err(|_| err(line_no, format!("bad output `{lhs}`")))?;
                let [s] = rhs[..] else {
                    return Err(err(line_no, "expected a single reference".into()));
                };
                outputs.push((wire, signal(s)?));
            } else {
                return Err(err(line_no, format!("unexpected `{lhs}`")));
            }
        }
        let inputs = inputs.unwrap_or(max_input);
        if max_input > inputs {
            return Err(Error::InputOutOfRange {
                index: max_input - 1,
                inputs,
            });
        }
        let live = (0..inputs).filter(|i| !pinned.contains(i)).collect();
        Ok(MonotoneCircuit {
            inputs,
            live,
            gates,
            outputs,
        })
    }
}

/// One AND and one OR gate per comparator, wired exactly as the network is.
pub fn network_to_circuit(net: &Network) -> MonotoneCircuit {
    let mut signal: Vec<Signal> = (0..net.width()).map(Signal::Input).collect();
    let mut gates = Vec::with_capacity(2 * net.len());
    for c in net.comparators() {
        let (a, b) = (signal[c.low], signal[c.high]);
        gates.push(Gate {
            kind: GateKind::And,
            a,
            b,
        });
        gates.push(Gate {
            kind: GateKind::Or,
            a,
            b,
        });
        signal[c.low] = Signal::Gate(gates.len() - 2);
        signal[c.high] = Signal::Gate(gates.len() - 1);
    }
    MonotoneCircuit {
        inputs: net.width(),
        live: (0..net.width()).collect(),
        gates,
        outputs: signal.into_iter().enumerate().collect(),
    }
}
