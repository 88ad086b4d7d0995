//! Acyclic gate-level netlists and garbage-output accounting.
//!
//! A netlist has numbered primary inputs, gate instances listed in evaluation
//! order, and designated primary outputs. Every gate input is driven by a
//! primary input, a constant, or an output port of an earlier instance.
//!
//! Gate output ports may feed at most one gate input. Primary inputs may fan
//! out freely (reported as a warning). A builder may also declare an output
//! port as *shared*, which downgrades its fanout to a warning; the carry-skip
//! builder uses this for carries passed between blocks.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gate::GateSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PortRef {
    /// Instance index.
    pub gate: usize,
    /// Output line of that instance.
    pub port: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    Input(usize),
    Const(bool),
    Port(PortRef),
}

impl Source {
    pub fn port(gate: usize, port: usize) -> Self {
        Source::Port(PortRef { gate, port })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateInstance {
    pub id: String,
    pub gate: Arc<GateSpec>,
    pub inputs: Vec<Source>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Architecture {
    #[default]
    Custom,
    FullAdder,
    Ripple,
    CarrySkip {
        block: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct NetlistMeta {
    pub width: Option<usize>,
    pub architecture: Architecture,
}

/// Unvalidated netlist contents.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NetlistParts {
    pub name: String,
    pub num_inputs: usize,
    pub instances: Vec<GateInstance>,
    pub outputs: Vec<Source>,
    pub shared_ports: Vec<PortRef>,
    pub meta: NetlistMeta,
}

impl NetlistParts {
    pub fn total_ports(&self) -> usize {
        self.instances.iter().map(|g| g.gate.arity()).sum()
    }

    pub fn instance_index(&self, id: &str) -> Option<usize> {
        self.instances.iter().position(|g| g.id == id)
    }

    /// Number of gate inputs driven by each output port, indexed `[gate][port]`.
    pub fn port_consumers(&self) -> Vec<Vec<usize>> {
        let mut counts: Vec<Vec<usize>> = self
            .instances
            .iter()
            .map(|g| vec![0; g.gate.arity()])
            .collect();
        for g in &self.instances {
            for src in &g.inputs {
                if let Source::Port(p) = *src {
                    if let Some(c) = counts.get_mut(p.gate).and_then(|v| v.get_mut(p.port)) {
                        *c += 1;
                    }
                }
            }
        }
        counts
    }

    /// Number of gate inputs driven by each primary input.
    pub fn input_consumers(&self) -> Vec<usize> {
        let mut counts = vec![0; self.num_inputs];
        for g in &self.instances {
            for src in &g.inputs {
                if let Source::Input(i) = *src {
                    if let Some(c) = counts.get_mut(i) {
                        *c += 1;
                    }
                }
            }
        }
        counts
    }

    /// Constant-driven gate inputs as `(instance, input line, value)`.
    pub fn constant_inputs(&self) -> Vec<(usize, usize, bool)> {
        self.instances
            .iter()
            .enumerate()
            .flat_map(|(gi, g)| {
                g.inputs.iter().enumerate().filter_map(move |(li, s)| match s {
                    Source::Const(b) => Some((gi, li, *b)),
                    _ => None,
                })
            })
            .collect()
    }
}

/// A validated, immutable netlist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Netlist {
    parts: NetlistParts,
    warnings: Vec<Diagnostic>,
}

impl Netlist {
    /// Validates `parts`, failing on any error-level diagnostic.
    pub fn try_from_parts(parts: NetlistParts) -> Result<Self> {
        let (errors, warnings): (Vec<_>, Vec<_>) = validate(&parts)
            .into_iter()
            .partition(|d| d.severity == Severity::Error);
        if !errors.is_empty() {
            return Err(Error::InvalidNetlist(errors));
        }
        Ok(Self { parts, warnings })
    }

    pub fn parts(&self) -> &NetlistParts {
        &self.parts
    }

    pub fn into_parts(self) -> NetlistParts {
        self.parts
    }

    pub fn warnings(&self) -> &[Diagnostic] {
        &self.warnings
    }
}

impl Deref for Netlist {
    type Target = NetlistParts;

    fn deref(&self) -> &NetlistParts {
        &self.parts
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagnosticKind {
    Cycle,
    NotTopological,
    Dangling,
    ArityMismatch,
    DuplicateId,
    GateOutputFanout,
    SharedPortFanout,
    PrimaryInputFanout,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub kind: DiagnosticKind,
    pub instance: Option<String>,
    pub message: String,
}

impl Diagnostic {
    fn error(kind: DiagnosticKind, instance: Option<&str>, message: String) -> Self {
        Self {
            severity: Severity::Error,
            kind,
            instance: instance.map(str::to_string),
            message,
        }
    }

    fn warning(kind: DiagnosticKind, instance: Option<&str>, message: String) -> Self {
        Self {
            severity: Severity::Warning,
            ..Self::error(kind, instance, message)
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{level}: {}", self.message)
    }
}

/// Checks every structural invariant; an empty result means the netlist is clean.
pub fn validate(parts: &NetlistParts) -> Vec<Diagnostic> {
    use DiagnosticKind::*;
    let mut diags = Vec::new();
    let n = parts.instances.len();

    let mut seen: HashMap<&str, usize> = HashMap::new();
    for (gi, g) in parts.instances.iter().enumerate() {
        if let Some(prev) = seen.insert(g.id.as_str(), gi) {
            diags.push(Diagnostic::error(
                DuplicateId,
                Some(&g.id),
                format!("duplicate instance id {:?} (instances {prev} and {gi})", g.id),
            ));
        }
    }

    let port_ok = |p: PortRef| p.gate < n && p.port < parts.instances[p.gate].gate.arity();
    let describe = |p: PortRef| match parts.instances.get(p.gate) {
        Some(g) => format!("{}.{}", g.id, p.port),
        None => format!("#{}.{}", p.gate, p.port),
    };

    let mut forward = Vec::new();
    for (gi, g) in parts.instances.iter().enumerate() {
        if g.inputs.len() != g.gate.arity() {
            diags.push(Diagnostic::error(
                ArityMismatch,
                Some(&g.id),
                format!(
                    "arity mismatch: {} has {} inputs, gate {} needs {}",
                    g.id,
                    g.inputs.len(),
                    g.gate.name(),
                    g.gate.arity()
                ),
            ));
        }
        for (li, src) in g.inputs.iter().enumerate() {
            match *src {
                Source::Input(i) if i >= parts.num_inputs => diags.push(Diagnostic::error(
                    Dangling,
                    Some(&g.id),
                    format!("dangling reference: {} input {li} reads primary input {i}", g.id),
                )),
                Source::Port(p) if !port_ok(p) => diags.push(Diagnostic::error(
                    Dangling,
                    Some(&g.id),
                    format!("dangling reference: {} input {li} reads {}", g.id, describe(p)),
                )),
                Source::Port(p) if p.gate >= gi => forward.push((gi, li, p)),
                _ => {}
            }
        }
    }

    let cycles = find_cycles(parts);
    for cycle in &cycles {
        let path: Vec<&str> = cycle.iter().map(|&i| parts.instances[i].id.as_str()).collect();
        diags.push(Diagnostic::error(
            Cycle,
            Some(path[0]),
            format!("cycle: {}", path.join(" -> ")),
        ));
    }
    if cycles.is_empty() {
        for (gi, li, p) in forward {
            let id = &parts.instances[gi].id;
            diags.push(Diagnostic::error(
                NotTopological,
                Some(id),
                format!(
                    "not topologically ordered: {id} input {li} reads {} which comes later",
                    describe(p)
                ),
            ));
        }
    }

    for (oi, src) in parts.outputs.iter().enumerate() {
        let bad = match *src {
            Source::Input(i) => i >= parts.num_inputs,
            Source::Port(p) => !port_ok(p),
            Source::Const(_) => false,
        };
        if bad {
            diags.push(Diagnostic::error(
                Dangling,
                None,
                format!("dangling reference: primary output {oi} reads {src:?}"),
            ));
        }
    }
    for &p in &parts.shared_ports {
        if !port_ok(p) {
            diags.push(Diagnostic::error(
                Dangling,
                None,
                format!("dangling reference: shared port {}", describe(p)),
            ));
        }
    }

    for (gi, counts) in parts.port_consumers().iter().enumerate() {
        for (port, &c) in counts.iter().enumerate() {
            if c <= 1 {
                continue;
            }
            let p = PortRef { gate: gi, port };
            let id = &parts.instances[gi].id;
            if parts.shared_ports.contains(&p) {
                diags.push(Diagnostic::warning(
                    SharedPortFanout,
                    Some(id),
                    format!("shared-port fanout {c} on {}", describe(p)),
                ));
            } else {
                diags.push(Diagnostic::error(
                    GateOutputFanout,
                    Some(id),
                    format!("gate-output fanout {c} on {}", describe(p)),
                ));
            }
        }
    }
    for (i, &c) in parts.input_consumers().iter().enumerate() {
        if c > 1 {
            diags.push(Diagnostic::warning(
                PrimaryInputFanout,
                None,
                format!("primary-input fanout {c} on input {i}"),
            ));
        }
    }
    diags
}

/// Cycles in the instance graph, each as a closed path of instance indices.
fn find_cycles(parts: &NetlistParts) -> Vec<Vec<usize>> {
    let n = parts.instances.len();
    let preds: Vec<Vec<usize>> = parts
        .instances
        .iter()
        .map(|g| {
            let mut v: Vec<usize> = g
                .inputs
                .iter()
                .filter_map(|s| match s {
                    Source::Port(p) if p.gate < n => Some(p.gate),
                    _ => None,
                })
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();

    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut cycles = Vec::new();
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        state[root] = 1;
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if let Some(&succ) = preds[node].get(*next) {
                *next += 1;
                match state[succ] {
                    0 => {
                        state[succ] = 1;
                        stack.push((succ, 0));
                    }
                    1 => {
                        let start = stack.iter().position(|&(v, _)| v == succ).unwrap();
                        // Stack follows "reads from" edges; reverse to show data flow.
                        let mut cycle: Vec<usize> = stack[start..].iter().map(|&(v, _)| v).collect();
                        cycle.reverse();
                        cycle.push(cycle[0]);
                        cycles.push(cycle);
                    }
                    _ => {}
                }
            } else {
                state[node] = 2;
                stack.pop();
            }
        }
    }
    cycles
}

/// Single-use netlist builder. Instances must be added in evaluation order.
#[derive(Debug)]
pub struct NetlistBuilder {
    parts: NetlistParts,
}

/// Starts a netlist with `num_inputs` primary inputs.
pub fn build(num_inputs: usize) -> NetlistBuilder {
    NetlistBuilder::new("netlist", num_inputs)
}

impl NetlistBuilder {
    pub fn new(name: impl Into<String>, num_inputs: usize) -> Self {
        Self {
            parts: NetlistParts {
                name: name.into(),
                num_inputs,
                ..Default::default()
            },
        }
    }

    pub fn set_meta(&mut self, meta: NetlistMeta) {
        self.parts.meta = meta;
    }

    pub fn num_instances(&self) -> usize {
        self.parts.instances.len()
    }

    /// Adds an instance with a generated id, returning its index.
    pub fn add_gate(&mut self, gate: Arc<GateSpec>, inputs: Vec<Source>) -> Result<usize> {
        let id = format!("g{}", self.parts.instances.len());
        self.add_named_gate(id, gate, inputs)
    }

    pub fn add_named_gate(
        &mut self,
        id: impl Into<String>,
        gate: Arc<GateSpec>,
        inputs: Vec<Source>,
    ) -> Result<usize> {
        use DiagnosticKind::*;
        let id = id.into();
        let idx = self.parts.instances.len();
        let fail = |kind, msg: String| Err(Error::InvalidNetlist(vec![Diagnostic::error(kind, Some(&id), msg)]));
        if self.parts.instance_index(&id).is_some() {
            return fail(DuplicateId, format!("duplicate instance id {id:?}"));
        }
        if inputs.len() != gate.arity() {
            return fail(
                ArityMismatch,
                format!(
                    "arity mismatch: {id} has {} inputs, gate {} needs {}",
                    inputs.len(),
                    gate.name(),
                    gate.arity()
                ),
            );
        }
        for (li, src) in inputs.iter().enumerate() {
            match *src {
                Source::Input(i) if i >= self.parts.num_inputs => {
                    return fail(Dangling, format!("dangling reference: {id} input {li} reads primary input {i}"));
                }
                Source::Port(p) if p.gate >= idx => {
                    return fail(
                        NotTopological,
                        format!("not topologically ordered: {id} input {li} reads instance #{}", p.gate),
                    );
                }
                Source::Port(p) if p.port >= self.parts.instances[p.gate].gate.arity() => {
                    return fail(
                        Dangling,
                        format!("dangling reference: {id} input {li} reads port {} of {}", p.port, self.parts.instances[p.gate].id),
                    );
                }
                _ => {}
            }
        }
        self.parts.instances.push(GateInstance { id, gate, inputs });
        Ok(idx)
    }

    /// Allows `port` to drive more than one gate input.
    pub fn share_port(&mut self, port: PortRef) {
        if !self.parts.shared_ports.contains(&port) {
            self.parts.shared_ports.push(port);
        }
    }

    pub fn set_primary_outputs(mut self, outputs: Vec<Source>) -> Result<Netlist> {
        self.parts.outputs = outputs;
        Netlist::try_from_parts(self.parts)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PortClass {
    Primary,
    Consumed,
    Garbage,
}

/// Per-port classification of gate outputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputClassification {
    /// Indexed `[instance][port]`.
    pub classes: Vec<Vec<PortClass>>,
    pub primary: usize,
    pub consumed: usize,
    pub garbage: usize,
}

impl OutputClassification {
    pub fn garbage_ports(&self) -> impl Iterator<Item = PortRef> + '_ {
        self.classes.iter().enumerate().flat_map(|(gate, ports)| {
            ports
                .iter()
                .enumerate()
                .filter(|(_, c)| **c == PortClass::Garbage)
                .map(move |(port, _)| PortRef { gate, port })
        })
    }

    pub fn class(&self, port: PortRef) -> PortClass {
        self.classes[port.gate][port.port]
    }
}

/// Tags each gate output port: a designated primary output, consumed by another
/// gate, or garbage (neither).
pub fn classify_outputs(netlist: &Netlist) -> OutputClassification {
    let consumers = netlist.port_consumers();
    let mut classes: Vec<Vec<PortClass>> = consumers
        .iter()
        .map(|ports| {
            ports
                .iter()
                .map(|&c| if c > 0 { PortClass::Consumed } else { PortClass::Garbage })
                .collect()
        })
        .collect();
    for src in &netlist.outputs {
        if let Source::Port(p) = *src {
            classes[p.gate][p.port] = PortClass::Primary;
        }
    }
    let count = |k| classes.iter().flatten().filter(|&&c| c == k).count();
    let (primary, consumed, garbage) = (
        count(PortClass::Primary),
        count(PortClass::Consumed),
        count(PortClass::Garbage),
    );
    OutputClassification {
        classes,
        primary,
        consumed,
        garbage,
    }
}
