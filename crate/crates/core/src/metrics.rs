//! Cost model (gate and garbage counts) and reference comparison tables.

use std::fmt;

use crate::builders::{build_carry_skip, build_full_adder, build_ripple_carry};
use crate::error::Result;
use crate::netlist::{classify_outputs, Netlist};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Metrics {
    pub gate_count: usize,
    pub garbage_count: usize,
    pub constant_input_count: usize,
    pub primary_input_count: usize,
    pub primary_output_count: usize,
    pub width: Option<usize>,
    /// Extra gate inputs driven by already-used primary inputs.
    pub primary_input_fanout: usize,
    /// Extra gate inputs driven by declared shared ports.
    pub shared_port_fanout: usize,
}

/// Counts everything from the graph itself.
pub fn metrics(netlist: &Netlist) -> Metrics {
    let extra = |c: &usize| c.saturating_sub(1);
    Metrics {
        gate_count: netlist.instances.len(),
        garbage_count: classify_outputs(netlist).garbage,
        constant_input_count: netlist.constant_inputs().len(),
        primary_input_count: netlist.num_inputs,
        primary_output_count: netlist.outputs.len(),
        width: netlist.meta.width,
        primary_input_fanout: netlist.input_consumers().iter().map(extra).sum(),
        shared_port_fanout: netlist.port_consumers().iter().flatten().map(extra).sum(),
    }
}

impl fmt::Display for Metrics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gates: {}", self.gate_count)?;
        writeln!(f, "garbage outputs: {}", self.garbage_count)?;
        writeln!(f, "constant inputs: {}", self.constant_input_count)?;
        writeln!(f, "primary inputs: {}", self.primary_input_count)?;
        writeln!(f, "primary outputs: {}", self.primary_output_count)?;
        if let Some(w) = self.width {
            writeln!(f, "width: {w}")?;
        }
        writeln!(f, "primary-input fanout: {}", self.primary_input_fanout)?;
        write!(f, "shared-port fanout: {}", self.shared_port_fanout)
    }
}

/// A cost as printed in a comparison table: a constant or a multiple of `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cost {
    Fixed(usize),
    PerBit(usize),
}

impl Cost {
    pub fn at(self, n: usize) -> usize {
        match self {
            Cost::Fixed(v) => v,
            Cost::PerBit(k) => k * n,
        }
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Fixed(v) => write!(f, "{v}"),
            Cost::PerBit(1) => write!(f, "N"),
            Cost::PerBit(k) => write!(f, "{k}N"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReportKind {
    FullAdder,
    Ripple,
    Skip { block: usize },
}

impl fmt::Display for ReportKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportKind::FullAdder => write!(f, "full adder"),
            ReportKind::Ripple => write!(f, "ripple-carry adder"),
            ReportKind::Skip { block } => write!(f, "carry-skip adder (block {block})"),
        }
    }
}

/// A reference table row. Values are stored as printed, never computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReferenceRow {
    pub label: &'static str,
    pub gates: Cost,
    pub garbage: Cost,
}

const fn row(label: &'static str, gates: Cost, garbage: Cost) -> ReferenceRow {
    ReferenceRow {
        label,
        gates,
        garbage,
    }
}

use Cost::{Fixed, PerBit};

pub const FULL_ADDER_TABLE: [ReferenceRow; 5] = [
    row("TSG design", Fixed(1), Fixed(2)),
    row("Prior design A", Fixed(3), Fixed(3)),
    row("Prior design B", Fixed(3), Fixed(2)),
    row("Prior design C", Fixed(5), Fixed(5)),
    row("Prior design D", Fixed(2), Fixed(2)),
];

pub const RIPPLE_TABLE: [ReferenceRow; 5] = [
    row("TSG design", PerBit(1), PerBit(2)),
    row("Prior design A", PerBit(3), PerBit(3)),
    row("Prior design B", PerBit(3), PerBit(2)),
    row("Prior design C", PerBit(5), PerBit(5)),
    row("Prior design D", PerBit(2), PerBit(2)),
];

pub const SKIP_TABLE: [ReferenceRow; 2] = [
    row("TSG design", PerBit(2), PerBit(3)),
    row("Prior design C", PerBit(6), PerBit(12)),
];

pub fn reference_table(kind: ReportKind) -> &'static [ReferenceRow] {
    match kind {
        ReportKind::FullAdder => &FULL_ADDER_TABLE,
        ReportKind::Ripple => &RIPPLE_TABLE,
        ReportKind::Skip { .. } => &SKIP_TABLE,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub label: String,
    pub gates: usize,
    pub garbage: usize,
    /// Formula the value comes from, as printed in the table.
    pub gates_formula: Cost,
    pub garbage_formula: Cost,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub kind: ReportKind,
    pub n: usize,
    pub measured: Metrics,
    /// First row is the measured circuit; the rest are reference rows at `n`.
    pub rows: Vec<ReportRow>,
    pub discrepancies: Vec<String>,
}

impl ComparisonReport {
    /// Compares `measured` against the TSG-design formulas for `kind`.
    pub fn from_measured(kind: ReportKind, n: usize, measured: Metrics) -> Self {
        let n = match kind {
            ReportKind::FullAdder => 1,
            _ => n,
        };
        let table = reference_table(kind);
        let ours = &table[0];
        let mut discrepancies = Vec::new();
        if measured.gate_count != ours.gates.at(n) {
            discrepancies.push(format!(
                "gates: measured {}, expected {} = {}",
                measured.gate_count,
                ours.gates,
                ours.gates.at(n)
            ));
        }
        if measured.garbage_count != ours.garbage.at(n) {
            discrepancies.push(format!(
                "garbage outputs: measured {}, expected {} = {}",
                measured.garbage_count,
                ours.garbage,
                ours.garbage.at(n)
            ));
        }
        let mut rows = vec![ReportRow {
            label: "TSG design (measured)".into(),
            gates: measured.gate_count,
            garbage: measured.garbage_count,
            gates_formula: ours.gates,
            garbage_formula: ours.garbage,
        }];
        rows.extend(table[1..].iter().map(|r| ReportRow {
            label: r.label.into(),
            gates: r.gates.at(n),
            garbage: r.garbage.at(n),
            gates_formula: r.gates,
            garbage_formula: r.garbage,
        }));
        Self {
            kind,
            n,
            measured,
            rows,
            discrepancies,
        }
    }

    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,gates,garbage,gates_formula,garbage_formula\n");
        for r in &self.rows {
            out.push_str(&format!(
                "\"{}\",{},{},{},{}\n",
                r.label, r.gates, r.garbage, r.gates_formula, r.garbage_formula
            ));
        }
        out
    }
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ReportKind::FullAdder => writeln!(f, "{}", self.kind)?,
            _ => writeln!(f, "{}, N = {}", self.kind, self.n)?,
        }
        let w = self.rows.iter().map(|r| r.label.len()).max().unwrap_or(0);
        writeln!(f, "{:<w$}  {:>12}  {:>12}", "", "gates", "garbage")?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<w$}  {:>12}  {:>12}",
                r.label,
                format!("{} ({})", r.gates, r.gates_formula),
                format!("{} ({})", r.garbage, r.garbage_formula),
            )?;
        }
        if self.passed() {
            write!(f, "measured costs match the TSG-design formulas")
        } else {
            write!(f, "DISCREPANCY: {}", self.discrepancies.join("; "))
        }
    }
}

/// Builds the circuit for `kind` at width `n` and compares it with its table.
pub fn comparison_report(kind: ReportKind, n: usize) -> Result<ComparisonReport> {
    let netlist = match kind {
        ReportKind::FullAdder => build_full_adder(),
        ReportKind::Ripple => build_ripple_carry(n)?,
        ReportKind::Skip { block } => build_carry_skip(n, block)?,
    };
    Ok(ComparisonReport::from_measured(kind, n, metrics(&netlist)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triples(r: &ComparisonReport) -> Vec<(usize, usize)> {
        r.rows.iter().map(|r| (r.gates, r.garbage)).collect()
    }

    #[test]
    fn metrics_examples() {
        let m = metrics(&build_full_adder());
        assert_eq!((m.gate_count, m.garbage_count, m.constant_input_count), (1, 2, 1));
        let m = metrics(&build_ripple_carry(16).unwrap());
        assert_eq!((m.gate_count, m.garbage_count), (16, 32));
        let m = metrics(&build_carry_skip(16, 4).unwrap());
        assert_eq!((m.gate_count, m.garbage_count), (32, 48));
        // 16 TSG ancillas + 4 blocks * 3 AND ancillas
        assert_eq!(m.constant_input_count, 28);
        assert_eq!(m.primary_input_fanout, 1);
        assert_eq!(m.shared_port_fanout, 3);
    }

    #[test]
    fn report_examples() {
        let r = comparison_report(ReportKind::FullAdder, 1).unwrap();
        assert_eq!(triples(&r), vec![(1, 2), (3, 3), (3, 2), (5, 5), (2, 2)]);
        assert!(r.passed());

        let r = comparison_report(ReportKind::Ripple, 4).unwrap();
        assert_eq!(r.rows[0].gates, 4);
        assert_eq!(r.rows[0].garbage, 8);
        let c9 = r.rows.iter().find(|r| r.label == "Prior design C").unwrap();
        assert_eq!((c9.gates, c9.garbage), (20, 20));

        let r = comparison_report(ReportKind::Skip { block: 4 }, 4).unwrap();
        assert_eq!(triples(&r), vec![(8, 12), (24, 48)]);
        assert!(r.passed());
    }

    #[test]
    fn deviation_is_flagged() {
        let mut m = metrics(&build_ripple_carry(4).unwrap());
        m.garbage_count += 1;
        let r = ComparisonReport::from_measured(ReportKind::Ripple, 4, m);
        assert!(!r.passed());
        assert!(r.to_string().contains("DISCREPANCY"));
    }

    #[test]
    fn cost_rendering() {
        assert_eq!(Cost::PerBit(1).to_string(), "N");
        assert_eq!(Cost::PerBit(12).to_string(), "12N");
        assert_eq!(Cost::Fixed(3).to_string(), "3");
        let csv = comparison_report(ReportKind::Skip { block: 4 }, 8).unwrap().to_csv();
        assert_eq!(
            csv,
            "label,gates,garbage,gates_formula,garbage_formula\n\
             \"TSG design (measured)\",16,24,2N,3N\n\
             \"Prior design C\",48,96,6N,12N\n"
        );
    }
}
