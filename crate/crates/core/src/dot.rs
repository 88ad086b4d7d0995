//! Graphviz export. Output depends only on the netlist, so it is stable
//! across runs.

use std::fmt::Write;

use crate::gate::StandardGate;
use crate::netlist::{classify_outputs, Architecture, Netlist, PortClass, Source};

/// Display name of primary input `i`; adders use `A0.., B0.., Cin`.
pub fn input_label(netlist: &Netlist, i: usize) -> String {
    match (netlist.meta.architecture, netlist.meta.width) {
        (Architecture::Custom, _) | (_, None) => format!("in{i}"),
        (_, Some(w)) if i < w => format!("A{i}"),
        (_, Some(w)) if i < 2 * w => format!("B{}", i - w),
        (_, Some(w)) if i == 2 * w => "Cin".into(),
        _ => format!("in{i}"),
    }
}

/// Display name of primary output `o`; adders use `S0.., Cout`.
pub fn output_label(netlist: &Netlist, o: usize) -> String {
    match (netlist.meta.architecture, netlist.meta.width) {
        (Architecture::Custom, _) | (_, None) => format!("out{o}"),
        (_, Some(w)) if o < w => format!("S{o}"),
        (_, Some(w)) if o == w => "Cout".into(),
        _ => format!("out{o}"),
    }
}

fn port_name(netlist: &Netlist, gate: usize, port: usize, output: bool) -> String {
    match StandardGate::from_name(netlist.instances[gate].gate.name()) {
        Some(g) if output => g.output_names()[port].to_string(),
        Some(g) => g.input_names()[port].to_string(),
        None => port.to_string(),
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

/// Gates become nodes and wires become edges. Garbage ports end in small red
/// point nodes reached by dashed edges.
pub fn to_dot(netlist: &Netlist) -> String {
    let classes = classify_outputs(netlist);
    let mut s = String::new();
    let gate_node = |g: usize| quote(&format!("gate:{}", netlist.instances[g].id));

    writeln!(s, "digraph {} {{", quote(&netlist.name)).unwrap();
    writeln!(s, "  rankdir=LR;").unwrap();
    writeln!(s, "  node [fontname=\"Helvetica\"];").unwrap();
    for i in 0..netlist.num_inputs {
        writeln!(s, "  \"in:{i}\" [shape=invhouse, label={}];", quote(&input_label(netlist, i))).unwrap();
    }
    for (gi, g) in netlist.instances.iter().enumerate() {
        writeln!(
            s,
            "  {} [shape=box, label={}];",
            gate_node(gi),
            quote(&format!("{}\\n{}", g.id, g.gate.name()))
        )
        .unwrap();
    }
    for o in 0..netlist.outputs.len() {
        writeln!(s, "  \"out:{o}\" [shape=house, label={}];", quote(&output_label(netlist, o))).unwrap();
    }

    let edge_from = |src: Source, consumer: &str, head: Option<String>, s: &mut String| {
        let head = head.map(|h| format!(", headlabel={}", quote(&h))).unwrap_or_default();
        match src {
            Source::Input(i) => {
                writeln!(s, "  \"in:{i}\" -> {consumer} [{}];", head.trim_start_matches(", ")).unwrap()
            }
            Source::Const(b) => {
                unreachable!("constants are emitted per consumer ({b})")
            }
            Source::Port(p) => writeln!(
                s,
                "  {} -> {consumer} [taillabel={}{head}];",
                gate_node(p.gate),
                quote(&port_name(netlist, p.gate, p.port, true))
            )
            .unwrap(),
        }
    };

    for (gi, g) in netlist.instances.iter().enumerate() {
        let consumer = gate_node(gi);
        for (li, &src) in g.inputs.iter().enumerate() {
            let head = Some(port_name(netlist, gi, li, false));
            if let Source::Const(b) = src {
                let node = quote(&format!("const:{}:{li}", g.id));
                writeln!(s, "  {node} [shape=plaintext, label=\"{}\"];", u8::from(b)).unwrap();
                writeln!(s, "  {node} -> {consumer} [headlabel={}];", quote(head.as_deref().unwrap())).unwrap();
            } else {
                edge_from(src, &consumer, head, &mut s);
            }
        }
    }
    for (o, &src) in netlist.outputs.iter().enumerate() {
        let consumer = format!("\"out:{o}\"");
        if let Source::Const(b) = src {
            let node = quote(&format!("const:out:{o}"));
            writeln!(s, "  {node} [shape=plaintext, label=\"{}\"];", u8::from(b)).unwrap();
            writeln!(s, "  {node} -> {consumer};").unwrap();
        } else {
            edge_from(src, &consumer, None, &mut s);
        }
    }
    for (gi, ports) in classes.classes.iter().enumerate() {
        for (pi, class) in ports.iter().enumerate() {
            if *class != PortClass::Garbage {
                continue;
            }
            let node = quote(&format!("garbage:{}:{pi}", netlist.instances[gi].id));
            writeln!(s, "  {node} [shape=point, color=red];").unwrap();
            writeln!(
                s,
                "  {} -> {node} [style=dashed, color=red, taillabel={}];",
                gate_node(gi),
                quote(&port_name(netlist, gi, pi, true))
            )
            .unwrap();
        }
    }
    writeln!(s, "}}").unwrap();
    s
}
