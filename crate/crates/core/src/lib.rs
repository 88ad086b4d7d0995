//! Reversible-logic circuit kit built around the 4x4 TSG gate.
//!
//! Gates are permutation tables ([`GateSpec`]); circuits are acyclic
//! [`Netlist`]s with explicit garbage-output accounting. The [`builders`]
//! synthesise the single-gate full adder and N-bit ripple-carry and carry-skip
//! adders, [`sim`] and [`verify`] check them exhaustively or by seeded random
//! sampling, and [`metrics`] compares their gate and garbage counts with the
//! reference cost tables.
//!
//! Line `i` of any gate or circuit is bit `i` of an integer assignment; line 0
//! is the topmost line (`A`). Bitstrings are written with line 0 leftmost.

pub mod builders;
pub mod document;
pub mod dot;
pub mod error;
pub mod gate;
pub mod metrics;
pub mod netlist;
pub mod pattern;
pub mod sim;
pub mod sliced;
pub mod verify;

pub use builders::{
    build_carry_skip, build_full_adder, build_ripple_carry, fredkin_and_tree, tsg_config,
    TsgConfig, TsgRole,
};
pub use error::{Error, Result};
pub use gate::{eval_gate, fredkin_table, gate_from_table, is_bijective, tsg_table, GateSpec, StandardGate};
pub use metrics::{comparison_report, metrics, ComparisonReport, Metrics, ReportKind};
pub use netlist::{
    build, classify_outputs, validate, Netlist, NetlistBuilder, OutputClassification, PortRef,
    Source,
};
pub use pattern::BitPattern;
pub use sim::{is_bijective_netlist, simulate, truth_table, SimulationResult};
pub use sliced::SlicedSim;
pub use verify::{verify_adder, VerificationReport, VerifyMode};

/// Lane word used by the exhaustive sweeps.
pub type Lanes = u64;
/// Bit-sliced simulator evaluating 64 assignments per pass.
pub type SlicedSim64<'a> = SlicedSim<'a, u64>;
/// Bit-sliced simulator evaluating 128 assignments per pass.
pub type SlicedSim128<'a> = SlicedSim<'a, u128>;
