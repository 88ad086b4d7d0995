//! Circuit synthesis: single-TSG configurations and N-bit adders.
//!
//! Adder layout (stable): inputs `A[0..n)`, `B[0..n)`, `Cin`; outputs
//! `Sum[0..n)`, `Cout`; all LSB first.

use std::fmt;

use crate::error::{Error, Result};
use crate::gate::{GateSpec, StandardGate};
use crate::netlist::{
    Architecture, Netlist, NetlistBuilder, NetlistMeta, PortRef, Source,
};

/// TSG line carrying operand `A` when used as a full adder.
pub const FA_LINE_A: usize = 0;
pub const FA_LINE_B: usize = 1;
/// Tied to constant 0.
pub const FA_LINE_ANCILLA: usize = 2;
pub const FA_LINE_CIN: usize = 3;
/// `Q = A xor B` when the ancilla is 0.
pub const FA_PORT_PROPAGATE: usize = 1;
pub const FA_PORT_SUM: usize = 2;
pub const FA_PORT_COUT: usize = 3;

/// Fredkin port carrying `a·b` when fed `(a, b, 0)`.
pub const FREDKIN_PORT_AND: usize = 2;
/// Fredkin port carrying `p ? c : x` when fed `(p, x, c)`.
pub const FREDKIN_PORT_MUX: usize = 1;

pub const MAX_ADDER_WIDTH: usize = 1024;
pub const DEFAULT_BLOCK: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TsgRole {
    Not,
    Xor,
    Nor,
    FullAdder,
}

impl TsgRole {
    pub const ALL: [TsgRole; 4] = [TsgRole::Not, TsgRole::Xor, TsgRole::Nor, TsgRole::FullAdder];

    pub fn operands(self) -> usize {
        match self {
            TsgRole::Not => 1,
            TsgRole::Xor | TsgRole::Nor => 2,
            TsgRole::FullAdder => 3,
        }
    }

    /// The role's function on operand values, outputs in designated order.
    pub fn eval(self, ops: &[bool]) -> Vec<bool> {
        match self {
            TsgRole::Not => vec![!ops[0]],
            TsgRole::Xor => vec![ops[0] ^ ops[1]],
            TsgRole::Nor => vec![!(ops[0] | ops[1])],
            TsgRole::FullAdder => {
                let (a, b, c) = (ops[0], ops[1], ops[2]);
                vec![a ^ b ^ c, (a & b) | (c & (a ^ b))]
            }
        }
    }

    pub fn outputs(self) -> usize {
        match self {
            TsgRole::FullAdder => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for TsgRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TsgRole::Not => "NOT",
            TsgRole::Xor => "XOR",
            TsgRole::Nor => "NOR",
            TsgRole::FullAdder => "FULL_ADDER",
        })
    }
}

/// A wiring of one TSG gate that realises a role.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TsgConfig {
    pub role: TsgRole,
    /// Gate line for each operand, in operand order.
    pub operand_lines: Vec<usize>,
    /// `(line, value)` for every line tied to a constant.
    pub constants: Vec<(usize, bool)>,
    /// Gate output lines carrying the role's outputs, in order.
    pub outputs: Vec<usize>,
    pub garbage: Vec<usize>,
}

impl TsgConfig {
    /// A one-gate netlist with the operands as primary inputs.
    pub fn netlist(&self) -> Netlist {
        let mut inputs = vec![Source::Const(false); 4];
        for (op, &line) in self.operand_lines.iter().enumerate() {
            inputs[line] = Source::Input(op);
        }
        for &(line, v) in &self.constants {
            inputs[line] = Source::Const(v);
        }
        let mut b = NetlistBuilder::new(format!("tsg-{}", self.role), self.operand_lines.len());
        let g = b.add_named_gate("tsg", StandardGate::Tsg.spec(), inputs).unwrap();
        b.set_primary_outputs(self.outputs.iter().map(|&p| Source::port(g, p)).collect())
            .unwrap()
    }
}

/// Searches TSG wirings for one that realises `role`.
///
/// Candidates are tried in a fixed order: operand line assignments, then
/// designated output lines, then constant values for the remaining lines, each
/// lexicographically. The first wiring whose outputs match the role on every
/// operand combination is returned.
pub fn tsg_config(role: TsgRole) -> TsgConfig {
    let tsg = StandardGate::Tsg.spec();
    let k = role.operands();
    for lines in permutations(4, k) {
        let free: Vec<usize> = (0..4).filter(|l| !lines.contains(l)).collect();
        for outs in permutations(4, role.outputs()) {
            for consts in 0u32..1 << free.len() {
                let base = free
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (i, &l)| acc | (((consts >> i) & 1) << l));
                let realises = (0u32..1 << k).all(|ops| {
                    let op_bits: Vec<bool> = (0..k).map(|i| (ops >> i) & 1 == 1).collect();
                    let x = lines
                        .iter()
                        .zip(&op_bits)
                        .fold(base, |acc, (&l, &b)| acc | (u32::from(b) << l));
                    let y = tsg.eval_value(x);
                    let got: Vec<bool> = outs.iter().map(|&o| (y >> o) & 1 == 1).collect();
                    got == role.eval(&op_bits)
                });
                if realises {
                    return TsgConfig {
                        role,
                        operand_lines: lines.clone(),
                        constants: free
                            .iter()
                            .enumerate()
                            .map(|(i, &l)| (l, (consts >> i) & 1 == 1))
                            .collect(),
                        garbage: (0..4).filter(|o| !outs.contains(o)).collect(),
                        outputs: outs,
                    };
                }
            }
        }
    }
    unreachable!("TSG realises every role")
}

/// Ordered selections of `k` distinct items from `0..n`, lexicographic.
fn permutations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !cur.contains(&i) {
                cur.push(i);
                go(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut Vec::new(), &mut out);
    out
}

/// Adds one TSG full-adder stage and returns its instance index.
fn add_full_adder(
    b: &mut NetlistBuilder,
    id: String,
    a: Source,
    bb: Source,
    cin: Source,
) -> Result<usize> {
    let mut inputs = vec![Source::Const(false); 4];
    inputs[FA_LINE_A] = a;
    inputs[FA_LINE_B] = bb;
    inputs[FA_LINE_ANCILLA] = Source::Const(false);
    inputs[FA_LINE_CIN] = cin;
    b.add_named_gate(id, StandardGate::Tsg.spec(), inputs)
}

/// Single-TSG full adder: inputs `(A, B, Cin)`, outputs `(Sum, Cout)`.
pub fn build_full_adder() -> Netlist {
    let mut b = NetlistBuilder::new("full-adder", 3);
    b.set_meta(NetlistMeta {
        width: Some(1),
        architecture: Architecture::FullAdder,
    });
    let g = add_full_adder(&mut b, "fa0".into(), Source::Input(0), Source::Input(1), Source::Input(2))
        .unwrap();
    b.set_primary_outputs(vec![Source::port(g, FA_PORT_SUM), Source::port(g, FA_PORT_COUT)])
        .unwrap()
}

fn check_width(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ADDER_WIDTH {
        return Err(Error::Params(format!(
            "width must be in 1..={MAX_ADDER_WIDTH}, got {n}"
        )));
    }
    Ok(())
}

/// `n` cascaded TSG full adders.
pub fn build_ripple_carry(n: usize) -> Result<Netlist> {
    check_width(n)?;
    let mut b = NetlistBuilder::new(format!("ripple-{n}"), 2 * n + 1);
    b.set_meta(NetlistMeta {
        width: Some(n),
        architecture: Architecture::Ripple,
    });
    let mut carry = Source::Input(2 * n);
    let mut sums = Vec::with_capacity(n + 1);
    for i in 0..n {
        let g = add_full_adder(&mut b, format!("fa{i}"), Source::Input(i), Source::Input(n + i), carry)?;
        sums.push(Source::port(g, FA_PORT_SUM));
        carry = Source::port(g, FA_PORT_COUT);
    }
    sums.push(carry);
    b.set_primary_outputs(sums)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AndTree {
    pub instances: Vec<usize>,
    pub output: Source,
}

/// Folds `signals` left to right through a chain of Fredkin AND gates, each
/// fed `(acc, next, 0)`.
pub fn fredkin_and_tree(b: &mut NetlistBuilder, prefix: &str, signals: &[Source]) -> Result<AndTree> {
    if signals.len() < 2 {
        return Err(Error::Params(format!(
            "AND tree needs at least 2 signals, got {}",
            signals.len()
        )));
    }
    let fg = StandardGate::Fredkin.spec();
    let mut acc = signals[0];
    let mut instances = Vec::with_capacity(signals.len() - 1);
    for (j, &s) in signals[1..].iter().enumerate() {
        let g = b.add_named_gate(
            format!("{prefix}{j}"),
            fg.clone(),
            vec![acc, s, Source::Const(false)],
        )?;
        instances.push(g);
        acc = Source::port(g, FREDKIN_PORT_AND);
    }
    Ok(AndTree {
        instances,
        output: acc,
    })
}

pub fn check_carry_skip_params(n: usize, block: usize) -> Result<()> {
    check_width(n)?;
    if block < 2 {
        return Err(Error::Params(format!("block must be at least 2, got {block}")));
    }
    if !n.is_multiple_of(block) {
        return Err(Error::Params(format!(
            "block must divide width (width {n}, block {block})"
        )));
    }
    Ok(())
}

/// Carry-skip adder built from `n / block` blocks.
///
/// Each block has `block` TSG full adders, a Fredkin AND chain over their
/// propagate outputs, and a Fredkin skip multiplexer fed `(P, C_last, Cin)`
/// whose mux port passes the block carry-in when `P = 1`. Instances are named
/// `fa{i}`, `and{k}_{j}` and `skip{k}`.
///
/// A block's carry-in drives both its first adder and its multiplexer. For
/// the first block that is the `Cin` primary input; for later blocks it is the
/// previous multiplexer output, declared as a shared port.
pub fn build_carry_skip(n: usize, block: usize) -> Result<Netlist> {
    check_carry_skip_params(n, block)?;
    let mut b = NetlistBuilder::new(format!("carry-skip-{n}-b{block}"), 2 * n + 1);
    b.set_meta(NetlistMeta {
        width: Some(n),
        architecture: Architecture::CarrySkip { block },
    });
    let fg = StandardGate::Fredkin.spec();
    let mut block_cin = Source::Input(2 * n);
    let mut outputs = Vec::with_capacity(n + 1);
    for k in 0..n / block {
        let mut carry = block_cin;
        let mut propagates = Vec::with_capacity(block);
        for i in k * block..(k + 1) * block {
            let g = add_full_adder(&mut b, format!("fa{i}"), Source::Input(i), Source::Input(n + i), carry)?;
            outputs.push(Source::port(g, FA_PORT_SUM));
            propagates.push(Source::port(g, FA_PORT_PROPAGATE));
            carry = Source::port(g, FA_PORT_COUT);
        }
        let and = fredkin_and_tree(&mut b, &format!("and{k}_"), &propagates)?;
        let mux = b.add_named_gate(format!("skip{k}"), fg.clone(), vec![and.output, carry, block_cin])?;
        if let Source::Port(p) = block_cin {
            b.share_port(p);
        }
        block_cin = Source::Port(PortRef {
            gate: mux,
            port: FREDKIN_PORT_MUX,
        });
    }
    outputs.push(block_cin);
    b.set_primary_outputs(outputs)
}

/// Block structure of a carry-skip netlist, recovered from instance names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkipBlock {
    pub mux: usize,
    pub propagate: Source,
    pub last_carry: Source,
    pub carry_in: Source,
}

pub fn skip_blocks(netlist: &Netlist) -> Vec<SkipBlock> {
    (0..)
        .map_while(|k| netlist.instance_index(&format!("skip{k}")))
        .map(|mux| {
            let inputs = &netlist.instances[mux].inputs;
            SkipBlock {
                mux,
                propagate: inputs[0],
                last_carry: inputs[1],
                carry_in: inputs[2],
            }
        })
        .collect()
}

/// Whether a gate spec is one of the standard library gates.
pub fn is_standard(gate: &GateSpec) -> bool {
    StandardGate::from_name(gate.name()).is_some_and(|g| *g.spec() == *gate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlist::{classify_outputs, validate, DiagnosticKind, Severity};
    use crate::sim::{simulate, truth_table};
    use crate::pattern::lines_of;

    fn add(n: &Netlist, width: usize, a: u64, bb: u64, cin: bool) -> (u64, bool) {
        let mut x = lines_of(a, width);
        x.extend(lines_of(bb, width));
        x.push(cin);
        let out = simulate(n, &x).unwrap().outputs;
        let sum = out[..width]
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i));
        (sum, out[width])
    }

    #[test]
    fn config_search_finds_documented_full_adder() {
        let fa = tsg_config(TsgRole::FullAdder);
        assert_eq!(fa.operand_lines, vec![FA_LINE_A, FA_LINE_B, FA_LINE_CIN]);
        assert_eq!(fa.constants, vec![(FA_LINE_ANCILLA, false)]);
        assert_eq!(fa.outputs, vec![FA_PORT_SUM, FA_PORT_COUT]);
        assert_eq!(fa.garbage, vec![0, 1]);
    }

    #[test]
    fn config_search_examples() {
        let xor = tsg_config(TsgRole::Xor);
        assert_eq!(xor.operand_lines, vec![0, 1]);
        assert_eq!(xor.outputs, vec![1]);
        assert!(xor.constants.contains(&(2, false)));

        let nor = tsg_config(TsgRole::Nor);
        assert_eq!(nor.operand_lines, vec![0, 2]);
        assert_eq!(nor.outputs, vec![1]);
        assert!(nor.constants.contains(&(1, true)));
    }

    #[test]
    fn every_config_reproduces_its_role() {
        for role in TsgRole::ALL {
            let cfg = tsg_config(role);
            let n = cfg.netlist();
            for row in truth_table(&n).unwrap() {
                let ops = lines_of(row.input, role.operands());
                assert_eq!(row.outputs, role.eval(&ops), "{role} on {ops:?}");
            }
            assert_eq!(cfg.garbage.len() + cfg.outputs.len(), 4);
        }
    }

    #[test]
    fn full_adder_examples() {
        let n = build_full_adder();
        assert_eq!(n.instances.len(), 1);
        assert_eq!(classify_outputs(&n).garbage, 2);
        assert_eq!(n.constant_inputs().len(), 1);
        assert_eq!(add(&n, 1, 1, 1, false), (0, true));
        assert_eq!(add(&n, 1, 0, 0, false), (0, false));
    }

    #[test]
    fn ripple_examples() {
        for n in [1, 4] {
            let r = build_ripple_carry(n).unwrap();
            assert_eq!(r.instances.len(), n);
            assert_eq!(classify_outputs(&r).garbage, 2 * n);
        }
        let r = build_ripple_carry(4).unwrap();
        assert_eq!(add(&r, 4, 5, 6, false), (11, false));
        assert!(validate(&build_ripple_carry(8).unwrap()).is_empty());
        assert!(build_ripple_carry(0).is_err());
        assert!(build_ripple_carry(1025).is_err());
    }

    #[test]
    fn carry_skip_examples() {
        let s = build_carry_skip(4, 4).unwrap();
        assert_eq!(s.instances.len(), 8);
        assert_eq!(classify_outputs(&s).garbage, 12);
        let s8 = build_carry_skip(8, 4).unwrap();
        assert_eq!(s8.instances.len(), 16);
        assert_eq!(classify_outputs(&s8).garbage, 24);

        assert_eq!(add(&s, 4, 15, 1, false), (0, true));
        let (sum, cout) = add(&s, 4, 15, 0, true);
        assert_eq!((sum, cout), (0, true));

        let blocks = skip_blocks(&s);
        assert_eq!(blocks.len(), 1);
        let mut x = lines_of(15, 4);
        x.extend(lines_of(0, 4));
        x.push(true);
        let r = simulate(&s, &x).unwrap();
        assert!(r.port(PortRef { gate: blocks[0].mux, port: 0 }), "block propagate");
        assert!(r.port(PortRef { gate: blocks[0].mux, port: FREDKIN_PORT_MUX }));
    }

    #[test]
    fn carry_skip_rejects_bad_blocks() {
        let err = build_carry_skip(6, 4).unwrap_err();
        assert!(err.to_string().contains("block must divide width"), "{err}");
        assert!(build_carry_skip(4, 1).is_err());
        assert!(build_carry_skip(0, 2).is_err());
    }

    #[test]
    fn carry_skip_warnings_only_on_block_carries() {
        let s = build_carry_skip(8, 4).unwrap();
        let diags = validate(&s);
        assert!(diags.iter().all(|d| d.severity == Severity::Warning));
        let kinds: Vec<_> = diags.iter().map(|d| d.kind).collect();
        assert_eq!(
            kinds,
            vec![DiagnosticKind::SharedPortFanout, DiagnosticKind::PrimaryInputFanout]
        );
        assert!(diags[0].message.contains("skip0.1"), "{}", diags[0].message);
        assert!(diags[1].message.contains("input 16"), "{}", diags[1].message);
    }

    #[test]
    fn and_tree_examples() {
        let mut b = NetlistBuilder::new("and", 4);
        let sigs: Vec<Source> = (0..4).map(Source::Input).collect();
        let t = fredkin_and_tree(&mut b, "and", &sigs).unwrap();
        assert_eq!(t.instances.len(), 3);
        let n = b.set_primary_outputs(vec![t.output]).unwrap();
        for row in truth_table(&n).unwrap() {
            assert_eq!(row.outputs[0], row.input == 0b1111);
        }
        assert_eq!(simulate(&n, &[true, true, false, true]).unwrap().outputs, vec![false]);

        let mut b = NetlistBuilder::new("and2", 2);
        let t = fredkin_and_tree(&mut b, "and", &[Source::Input(0), Source::Input(1)]).unwrap();
        let n = b.set_primary_outputs(vec![t.output]).unwrap();
        assert_eq!(simulate(&n, &[true, true]).unwrap().outputs, vec![true]);

        let mut b = NetlistBuilder::new("and1", 1);
        assert!(fredkin_and_tree(&mut b, "and", &[Source::Input(0)]).is_err());
    }
}
