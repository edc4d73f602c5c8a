// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("comparator ({low}, {high}) is not standard: low must be strictly below high")]
    DegenerateComparator { low: usize, high: usize },

    #[error("comparator ({low}, {high}) exceeds network width {width}")]
    WireOutOfRange {
        low: usize,
        high: usize,
        width: usize,
    },

    #[error("network width must be at least 1")]
    ZeroWidth,

    #[error("input has length {got}, network width is {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },

    #[error("width {width} exceeds the exhaustive verification cap of {cap}")]
    CapExceeded { width: usize, cap: usize },

    #[error("target wires must be strictly ascending")]
    NonAscendingWires,

    #[error("target wire {wire} is outside host width {width}")]
    TargetOutOfRange { wire: usize, width: usize },

    #[error("wires {a} and {b} are forced equal on every binary input")]
    ForcedEquality { a: usize, b: usize },

    #[error("vector is not a binary vector")]
    NotBinary,

    #[error("the network sorts the given vector; there is nothing to lift")]
    NotACounterexample,

    #[error("unsupported size {0}")]
    UnsupportedSize(usize),

    #[error("unknown output wire {0}")]
    UnknownOutput(usize),

    #[error("input index {index} out of range for {inputs} inputs")]
    InputOutOfRange { index: usize, inputs: usize },

    #[error("live input count is {live}, caller expected {expected}")]
    LiveInputMismatch { live: usize, expected: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("width {width} is too large to draw (limit {limit})")]
    TooWideToDraw { width: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
