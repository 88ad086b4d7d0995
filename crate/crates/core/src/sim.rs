//! Scalar netlist simulation, truth tables and circuit-level bijectivity.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::netlist::{Netlist, PortRef, Source};
use crate::pattern::lines_of;
use crate::sliced::{enumeration_word, lane_count, SlicedSim};

/// Largest number of free input bits any exhaustive sweep will enumerate.
pub const MAX_ENUMERATION_BITS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationResult {
    /// Value of every gate output port, indexed `[instance][port]`.
    pub ports: Vec<Vec<bool>>,
    pub outputs: Vec<bool>,
}

impl SimulationResult {
    pub fn port(&self, p: PortRef) -> bool {
        self.ports[p.gate][p.port]
    }
}

pub fn simulate(netlist: &Netlist, assignment: &[bool]) -> Result<SimulationResult> {
    simulate_with_overrides(netlist, assignment, &[])
}

/// Simulates with selected gate output ports forced to fixed values.
///
/// A forced port is seen by every downstream consumer and primary output, which
/// lets tests probe a gate's behaviour for internal values the surrounding
/// circuit would not naturally produce.
pub fn simulate_with_overrides(
    netlist: &Netlist,
    assignment: &[bool],
    overrides: &[(PortRef, bool)],
) -> Result<SimulationResult> {
    if assignment.len() != netlist.num_inputs {
        return Err(Error::WidthMismatch {
            expected: netlist.num_inputs,
            actual: assignment.len(),
        });
    }
    let mut ports: Vec<Vec<bool>> = Vec::with_capacity(netlist.instances.len());
    for (gi, g) in netlist.instances.iter().enumerate() {
        let input = g.inputs.iter().enumerate().fold(0u32, |acc, (i, src)| {
            acc | (u32::from(read(*src, assignment, &ports)) << i)
        });
        let out = g.gate.eval_value(input);
        let mut lines: Vec<bool> = (0..g.gate.arity()).map(|j| (out >> j) & 1 == 1).collect();
        for &(p, v) in overrides.iter().filter(|(p, _)| p.gate == gi) {
            lines[p.port] = v;
        }
        ports.push(lines);
    }
    let outputs = netlist
        .outputs
        .iter()
        .map(|&src| read(src, assignment, &ports))
        .collect();
    Ok(SimulationResult { ports, outputs })
}

fn read(src: Source, assignment: &[bool], ports: &[Vec<bool>]) -> bool {
    match src {
        Source::Input(i) => assignment[i],
        Source::Const(b) => b,
        Source::Port(p) => ports[p.gate][p.port],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthRow {
    /// Input assignment as an integer, line `i` in bit `i`.
    pub input: u64,
    pub outputs: Vec<bool>,
}

/// All `2^n` rows in ascending input order.
pub fn truth_table(netlist: &Netlist) -> Result<Vec<TruthRow>> {
    let n = netlist.num_inputs;
    guard("truth table", n)?;
    let sim = SlicedSim::<u64>::new(netlist);
    let total = 1u64 << n;
    let lanes = lane_count::<u64>() as u64;
    let mut rows = Vec::with_capacity(total as usize);
    let mut base = 0;
    while base < total {
        let inputs: Vec<u64> = (0..n).map(|i| enumeration_word(base, i)).collect();
        let outs = sim.eval_outputs(&inputs);
        for l in 0..lanes.min(total - base) {
            rows.push(TruthRow {
                input: base + l,
                outputs: outs.iter().map(|w| (w >> l) & 1 == 1).collect(),
            });
        }
        base += lanes;
    }
    Ok(rows)
}

/// Input values in tabulation order: line 0 is the most significant column,
/// so rows read like a hand-written truth table with `A` first.
pub fn tabulation_order(num_inputs: usize) -> impl Iterator<Item = u64> {
    (0..1u64 << num_inputs).map(move |r| {
        (0..num_inputs).fold(0u64, |acc, i| acc | (((r >> (num_inputs - 1 - i)) & 1) << i))
    })
}

pub fn input_lines(input: u64, num_inputs: usize) -> Vec<bool> {
    lines_of(input, num_inputs)
}

fn guard(what: &'static str, bits: usize) -> Result<()> {
    if bits > MAX_ENUMERATION_BITS {
        return Err(Error::TooWide {
            what,
            bits,
            limit: MAX_ENUMERATION_BITS,
        });
    }
    Ok(())
}

/// A line of the full reversible interface of a circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InterfaceLine {
    Port(PortRef),
    /// A primary input no gate reads, passed straight through.
    Input(usize),
}

/// Every gate output port not consumed by another gate, followed by every
/// primary input not read by any gate.
pub fn output_interface(netlist: &Netlist) -> Vec<InterfaceLine> {
    let consumers = netlist.port_consumers();
    let mut lines: Vec<InterfaceLine> = consumers
        .iter()
        .enumerate()
        .flat_map(|(gate, ports)| {
            ports
                .iter()
                .enumerate()
                .filter(|(_, &c)| c == 0)
                .map(move |(port, _)| InterfaceLine::Port(PortRef { gate, port }))
        })
        .collect();
    lines.extend(
        netlist
            .input_consumers()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .map(|(i, _)| InterfaceLine::Input(i)),
    );
    lines
}

/// Number of free bits once constants are lifted to inputs.
pub fn free_input_count(netlist: &Netlist) -> usize {
    netlist.num_inputs + netlist.constant_inputs().len()
}

/// Two free-input assignments that produce the same full output, if any.
///
/// Free inputs are the primary inputs followed by every constant gate input.
pub fn find_collision(netlist: &Netlist) -> Result<Option<(u64, u64)>> {
    let n = netlist.num_inputs;
    let free = free_input_count(netlist);
    guard("bijectivity check", free)?;
    let interface = output_interface(netlist);
    let key_words = interface.len().div_ceil(64).max(1);
    let sim = SlicedSim::<u64>::new(netlist);
    let total = 1u64 << free;
    let lanes = lane_count::<u64>() as u64;
    let mut first_of: HashMap<Vec<u64>, u64> = HashMap::with_capacity(total as usize);
    let mut base = 0;
    while base < total {
        let words: Vec<u64> = (0..free).map(|i| enumeration_word(base, i)).collect();
        let (inputs, constants) = words.split_at(n);
        let ports = sim.eval_ports(inputs, Some(constants));
        let line_words: Vec<u64> = interface
            .iter()
            .map(|line| match *line {
                InterfaceLine::Port(p) => ports[p.gate][p.port],
                InterfaceLine::Input(i) => inputs[i],
            })
            .collect();
        for l in 0..lanes.min(total - base) {
            let mut key = vec![0u64; key_words];
            for (j, w) in line_words.iter().enumerate() {
                key[j / 64] |= ((w >> l) & 1) << (j % 64);
            }
            if let Some(prev) = first_of.insert(key, base + l) {
                return Ok(Some((prev, base + l)));
            }
        }
        base += lanes;
    }
    Ok(None)
}

/// Whether the map from all free inputs (constants lifted) to the full output
/// interface is injective.
pub fn is_bijective_netlist(netlist: &Netlist) -> Result<bool> {
    Ok(find_collision(netlist)?.is_none())
}
