//! Reversible gates as explicit permutation tables.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::pattern::{BitPattern, MAX_WIDTH};

/// TSG rows as `ABCD PQRS`, line 0 leftmost, in the order the gate is
/// usually tabulated (`A` most significant).
const TSG_ROWS: [&str; 16] = [
    "0000 0000",
    "0001 0010",
    "0010 0111",
    "0011 0100",
    "0100 0110",
    "0101 0101",
    "0110 0001",
    "0111 0011",
    "1000 1110",
    "1001 1101",
    "1010 1111",
    "1011 1100",
    "1100 1001",
    "1101 1011",
    "1110 1000",
    "1111 1010",
];

/// A `k`-line gate given by its output pattern for every input pattern.
///
/// Specs are immutable once built. The table is not required to be a
/// permutation, so that non-reversible candidates can be represented and
/// rejected by [`GateSpec::is_bijective`].
#[derive(Clone)]
pub struct GateSpec {
    name: String,
    arity: usize,
    table: Vec<u32>,
    inverse: Option<Vec<u32>>,
}

impl GateSpec {
    /// Builds a gate from raw output values indexed by input value.
    pub fn from_values(name: impl Into<String>, table: Vec<u32>) -> Result<Self> {
        let len = table.len();
        if len < 2 || !len.is_power_of_two() || len > 1 << MAX_WIDTH {
            return Err(Error::TableLength(len));
        }
        let arity = len.trailing_zeros() as usize;
        if let Some(&bad) = table.iter().find(|&&v| v >> arity != 0) {
            return Err(Error::ValueOverflow {
                width: arity,
                value: bad,
            });
        }
        let inverse = invert(&table);
        Ok(Self {
            name: name.into(),
            arity,
            table,
            inverse,
        })
    }

    /// Builds a gate from one output pattern per input pattern.
    pub fn from_rows(name: impl Into<String>, rows: &[BitPattern]) -> Result<Self> {
        let len = rows.len();
        if len < 2 || !len.is_power_of_two() || len > 1 << MAX_WIDTH {
            return Err(Error::TableLength(len));
        }
        let arity = len.trailing_zeros() as usize;
        if let Some(bad) = rows.iter().find(|r| r.width() != arity) {
            return Err(Error::WidthMismatch {
                expected: arity,
                actual: bad.width(),
            });
        }
        Self::from_values(name, rows.iter().map(|r| r.value()).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Output values indexed by input value.
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn eval(&self, input: BitPattern) -> Result<BitPattern> {
        if input.width() != self.arity {
            return Err(Error::WidthMismatch {
                expected: self.arity,
                actual: input.width(),
            });
        }
        BitPattern::new(self.arity, self.table[input.value() as usize])
    }

    #[inline]
    pub fn eval_value(&self, input: u32) -> u32 {
        self.table[input as usize]
    }

    pub fn is_bijective(&self) -> bool {
        self.inverse.is_some()
    }

    /// The input that produces `output`, when the gate is reversible.
    pub fn invert(&self, output: BitPattern) -> Result<Option<BitPattern>> {
        if output.width() != self.arity {
            return Err(Error::WidthMismatch {
                expected: self.arity,
                actual: output.width(),
            });
        }
        Ok(self
            .inverse
            .as_ref()
            .map(|inv| BitPattern::new(self.arity, inv[output.value() as usize]).unwrap()))
    }

    /// The inverse gate, if this one is reversible.
    pub fn inverse_gate(&self) -> Option<GateSpec> {
        let inv = self.inverse.clone()?;
        GateSpec::from_values(format!("{}^-1", self.name), inv).ok()
    }
}

fn invert(table: &[u32]) -> Option<Vec<u32>> {
    let mut inv = vec![u32::MAX; table.len()];
    for (input, &out) in table.iter().enumerate() {
        let slot = &mut inv[out as usize];
        if *slot != u32::MAX {
            return None;
        }
        *slot = input as u32;
    }
    Some(inv)
}

impl PartialEq for GateSpec {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.table == other.table
    }
}

impl Eq for GateSpec {}

impl fmt::Debug for GateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GateSpec")
            .field("name", &self.name)
            .field("arity", &self.arity)
            .finish_non_exhaustive()
    }
}

/// The closed gate library.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardGate {
    Tsg,
    Fredkin,
}

impl StandardGate {
    pub const ALL: [StandardGate; 2] = [StandardGate::Tsg, StandardGate::Fredkin];

    pub fn name(self) -> &'static str {
        match self {
            StandardGate::Tsg => "TSG",
            StandardGate::Fredkin => "FREDKIN",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|g| g.name() == name)
    }

    /// Shared, lazily built spec.
    pub fn spec(self) -> Arc<GateSpec> {
        static TSG: OnceLock<Arc<GateSpec>> = OnceLock::new();
        static FREDKIN: OnceLock<Arc<GateSpec>> = OnceLock::new();
        match self {
            StandardGate::Tsg => TSG.get_or_init(|| Arc::new(tsg_table())).clone(),
            StandardGate::Fredkin => FREDKIN.get_or_init(|| Arc::new(fredkin_table())).clone(),
        }
    }

    /// Port names, line 0 first.
    pub fn input_names(self) -> &'static [&'static str] {
        match self {
            StandardGate::Tsg => &["A", "B", "C", "D"],
            StandardGate::Fredkin => &["A", "B", "C"],
        }
    }

    pub fn output_names(self) -> &'static [&'static str] {
        match self {
            StandardGate::Tsg => &["P", "Q", "R", "S"],
            StandardGate::Fredkin => &["P", "Q", "R"],
        }
    }
}

/// The 4x4 TSG gate, outputs ordered `(P, Q, R, S)`.
pub fn tsg_table() -> GateSpec {
    let mut table = vec![0u32; 16];
    for row in TSG_ROWS {
        let (input, output) = row.split_once(' ').unwrap();
        let input = BitPattern::parse(input).unwrap();
        let output = BitPattern::parse(output).unwrap();
        table[input.value() as usize] = output.value();
    }
    GateSpec::from_values("TSG", table).unwrap()
}

/// TSG rows in tabulation order (`A` as most significant column).
pub fn tsg_rows() -> Vec<(BitPattern, BitPattern)> {
    TSG_ROWS
        .iter()
        .map(|row| {
            let (i, o) = row.split_once(' ').unwrap();
            (BitPattern::parse(i).unwrap(), BitPattern::parse(o).unwrap())
        })
        .collect()
}

/// Controlled swap: `P = A`; `(Q, R) = (B, C)` when `A = 0`, `(C, B)` when `A = 1`.
///
/// With `C` tied to 0, `R = A·B`. With `(A, B, C) = (p, x, c)`, `Q` selects `c`
/// when `p = 1` and `x` otherwise.
pub fn fredkin_table() -> GateSpec {
    let table = (0u32..8)
        .map(|x| {
            let a = x & 1;
            let b = (x >> 1) & 1;
            let c = (x >> 2) & 1;
            let (q, r) = if a == 1 { (c, b) } else { (b, c) };
            a | (q << 1) | (r << 2)
        })
        .collect();
    GateSpec::from_values("FREDKIN", table).unwrap()
}

pub fn eval_gate(gate: &GateSpec, input: BitPattern) -> Result<BitPattern> {
    gate.eval(input)
}

pub fn is_bijective(gate: &GateSpec) -> bool {
    gate.is_bijective()
}

pub fn gate_from_table(name: impl Into<String>, rows: &[BitPattern]) -> Result<GateSpec> {
    GateSpec::from_rows(name, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pat(s: &str) -> BitPattern {
        BitPattern::parse(s).unwrap()
    }

    #[test]
    fn tsg_examples() {
        let tsg = tsg_table();
        assert_eq!(tsg.arity(), 4);
        for (i, o) in [
            ("0000", "0000"),
            ("0010", "0111"),
            ("1011", "1100"),
            ("1111", "1010"),
            ("1101", "1011"),
            ("1001", "1101"),
        ] {
            assert_eq!(tsg.eval(pat(i)).unwrap(), pat(o), "input {i}");
        }
    }

    // Independent closed form for the TSG outputs, checked against every row.
    #[test]
    fn tsg_matches_closed_form() {
        let tsg = tsg_table();
        for x in 0u32..16 {
            let [a, b, c, d] = [0, 1, 2, 3].map(|i| (x >> i) & 1 == 1);
            let p = a;
            let q = (!a & !c) ^ !b;
            let r = q ^ d;
            let s = (q & d) ^ ((a & b) ^ c);
            let expect = BitPattern::from_lines(&[p, q, r, s]).unwrap();
            assert_eq!(tsg.eval(BitPattern::new(4, x).unwrap()).unwrap(), expect);
        }
    }

    #[test]
    fn fredkin_examples_and_oracle() {
        let fg = fredkin_table();
        assert_eq!(fg.eval(pat("010")).unwrap(), pat("010"));
        assert_eq!(fg.eval(pat("110")).unwrap(), pat("101"));
        assert_eq!(fg.eval(pat("101")).unwrap(), pat("110"));
        assert_eq!(fg.eval(pat("000")).unwrap(), pat("000"));
        for x in 0u32..8 {
            let [a, b, c] = [0, 1, 2].map(|i| (x >> i) & 1 == 1);
            let out = fg.eval(BitPattern::new(3, x).unwrap()).unwrap();
            assert_eq!(out.line(0), a);
            assert_eq!(out.line(1), (!a & b) | (a & c));
            assert_eq!(out.line(2), (!a & c) | (a & b));
        }
    }

    #[test]
    fn fredkin_and_and_mux_configurations() {
        let fg = fredkin_table();
        for a in [false, true] {
            for b in [false, true] {
                let out = fg.eval(BitPattern::from_lines(&[a, b, false]).unwrap()).unwrap();
                assert_eq!(out.line(2), a & b);
            }
        }
        for p in [false, true] {
            for x in [false, true] {
                for c in [false, true] {
                    let out = fg.eval(BitPattern::from_lines(&[p, x, c]).unwrap()).unwrap();
                    assert_eq!(out.line(1), (!p & x) ^ (p & c));
                    if p {
                        assert_eq!(out.line(1), c);
                    }
                }
            }
        }
    }

    #[test]
    fn bijectivity() {
        assert!(is_bijective(&tsg_table()));
        assert!(is_bijective(&fredkin_table()));
        let zero = GateSpec::from_values("ZERO", vec![0; 16]).unwrap();
        assert!(!zero.is_bijective());
    }

    #[test]
    fn from_table_cases() {
        let rows: Vec<_> = (0u32..16)
            .map(|x| BitPattern::new(4, x).unwrap())
            .map(|x| tsg_table().eval(x).unwrap())
            .collect();
        let g = gate_from_table("TSG", &rows).unwrap();
        assert_eq!(g, tsg_table());

        let not = gate_from_table("NOT", &[pat("1"), pat("0")]).unwrap();
        assert!(not.is_bijective());
        let stuck = gate_from_table("STUCK", &[pat("0"), pat("0")]).unwrap();
        assert!(!stuck.is_bijective());

        assert_eq!(
            gate_from_table("X", &[pat("0"), pat("1"), pat("0")]),
            Err(Error::TableLength(3))
        );
        assert!(matches!(
            gate_from_table("X", &[pat("00"), pat("1")]),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn eval_rejects_width_mismatch() {
        let err = tsg_table().eval(pat("101")).unwrap_err();
        assert_eq!(
            err,
            Error::WidthMismatch {
                expected: 4,
                actual: 3
            }
        );
    }

    #[test]
    fn standard_gate_names() {
        assert_eq!(StandardGate::from_name("TSG"), Some(StandardGate::Tsg));
        assert_eq!(StandardGate::from_name("FREDKIN"), Some(StandardGate::Fredkin));
        assert_eq!(StandardGate::from_name("TOFFOLI"), None);
        assert_eq!(*StandardGate::Tsg.spec(), tsg_table());
    }

    proptest! {
        #[test]
        fn inverse_round_trips(x in 0u32..16) {
            let tsg = tsg_table();
            let p = BitPattern::new(4, x).unwrap();
            let y = tsg.eval(p).unwrap();
            prop_assert_eq!(tsg.invert(y).unwrap(), Some(p));
            let inv = tsg.inverse_gate().unwrap();
            prop_assert_eq!(inv.eval(y).unwrap(), p);
        }

        #[test]
        fn bijectivity_matches_distinct_count(
            table in (1usize..=4).prop_flat_map(|k| prop::collection::vec(0u32..(1 << k), 1 << k))
        ) {
            let distinct: std::collections::HashSet<_> = table.iter().collect();
            let g = GateSpec::from_values("T", table.clone()).unwrap();
            prop_assert_eq!(g.is_bijective(), distinct.len() == table.len());
        }

        #[test]
        fn shuffled_permutations_are_bijective(
            perm in (1usize..=4).prop_flat_map(|k| Just((0u32..(1 << k)).collect::<Vec<_>>()).prop_shuffle())
        ) {
            prop_assert!(GateSpec::from_values("P", perm).unwrap().is_bijective());
        }
    }
}
