// SPDX-License-Identifier: Apache-2.0

//! Construction, exhaustive verification and structural analysis of
//! comparator sorting networks, centred on the 16-input sorters of Green
//! (60 comparators, depth 10) and van Voorhis (61 comparators, depth 9).

pub mod analysis;
pub mod circuit;
pub mod constructions;
pub mod error;
pub mod network;
pub mod poset;
pub mod render;
pub mod schedule;
mod slice;
pub mod verify;

pub use circuit::{network_to_circuit, MonotoneCircuit};
pub use error::{Error, Result};
pub use network::{concat, embed, Comparator, Network, PhaseTag};
pub use poset::{infer_poset, Poset};
pub use schedule::{asap_schedule, LayeredSchedule};
pub use verify::{counterexample_permutation, verify_sorts_binary, Verdict, Verifier, VerifyMode};
