//! Functional verification of adder netlists against integer addition.
//!
//! Adders follow the builders' layout: inputs `A[0..n)`, `B[0..n)`, `Cin`
//! (LSB first), outputs `Sum[0..n)`, `Cout`.

use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::netlist::Netlist;
use crate::sim::simulate;
use crate::sliced::{enumeration_word, lane_count, SlicedSim};

/// Widest adder checked exhaustively (`2^(2*10+1)` assignments).
pub const MAX_EXHAUSTIVE_WIDTH: usize = 10;

/// Counterexamples kept in a report; the total is always counted.
pub const MAX_RECORDED_FAILURES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    Randomized { trials: u64, seed: u64 },
}

impl fmt::Display for VerifyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyMode::Exhaustive => write!(f, "exhaustive"),
            VerifyMode::Randomized { trials, seed } => {
                write!(f, "randomized ({trials} trials, seed {seed})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub a: BigUint,
    pub b: BigUint,
    pub cin: bool,
    pub expected: BigUint,
    pub actual: BigUint,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A={} B={} Cin={}: expected {}, got {}",
            self.a,
            self.b,
            u8::from(self.cin),
            self.expected,
            self.actual
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub mode: VerifyMode,
    pub width: usize,
    pub checked: u64,
    pub failure_count: u64,
    /// The first few failures in input order.
    pub failures: Vec<Counterexample>,
    pub passed: bool,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ok = self.checked - self.failure_count;
        if self.passed {
            write!(f, "{ok}/{} ok ({})", self.checked, self.mode)
        } else {
            write!(f, "{ok}/{} ok, {} failed ({})", self.checked, self.failure_count, self.mode)?;
            if let Some(first) = self.failures.first() {
                write!(f, "; first counterexample: {first}")?;
            }
            Ok(())
        }
    }
}

fn check_layout(netlist: &Netlist, width: usize) -> Result<()> {
    if width == 0 {
        return Err(Error::Layout("width must be at least 1".into()));
    }
    if netlist.num_inputs != 2 * width + 1 {
        return Err(Error::Layout(format!(
            "{width}-bit adder needs {} inputs (A, B, Cin), netlist has {}",
            2 * width + 1,
            netlist.num_inputs
        )));
    }
    if netlist.outputs.len() != width + 1 {
        return Err(Error::Layout(format!(
            "{width}-bit adder needs {} outputs (Sum, Cout), netlist has {}",
            width + 1,
            netlist.outputs.len()
        )));
    }
    Ok(())
}

/// Checks `Sum + 2^n * Cout == A + B + Cin` on every assignment (exhaustive)
/// or on seeded random ones.
pub fn verify_adder(netlist: &Netlist, width: usize, mode: VerifyMode) -> Result<VerificationReport> {
    check_layout(netlist, width)?;
    let (checked, mut failures) = match mode {
        VerifyMode::Exhaustive => {
            if width > MAX_EXHAUSTIVE_WIDTH {
                return Err(Error::TooWide {
                    what: "exhaustive adder verification",
                    bits: 2 * width + 1,
                    limit: 2 * MAX_EXHAUSTIVE_WIDTH + 1,
                });
            }
            exhaustive(netlist, width)
        }
        VerifyMode::Randomized { trials, seed } => randomized(netlist, width, trials, seed)?,
    };
    let failure_count = failures.len() as u64;
    failures.truncate(MAX_RECORDED_FAILURES);
    Ok(VerificationReport {
        mode,
        width,
        checked,
        failure_count,
        failures,
        passed: failure_count == 0,
    })
}

fn exhaustive(netlist: &Netlist, width: usize) -> (u64, Vec<Counterexample>) {
    let bits = 2 * width + 1;
    let total = 1u64 << bits;
    let lanes = lane_count::<u64>() as u64;
    let chunks = total.div_ceil(lanes);
    let sim = SlicedSim::<u64>::new(netlist);
    let mask = (1u64 << width) - 1;

    // Chunks are disjoint input ranges; sorting restores input order.
    let mut failures: Vec<(u64, u64)> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|chunk| {
            let base = chunk * lanes;
            let inputs: Vec<u64> = (0..bits).map(|i| enumeration_word(base, i)).collect();
            let outs = sim.eval_outputs(&inputs);
            (0..lanes.min(total - base)).filter_map(move |l| {
                let x = base + l;
                let expected = (x & mask) + ((x >> width) & mask) + (x >> (2 * width));
                let actual = outs
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, w)| acc | (((w >> l) & 1) << j));
                (actual != expected).then_some((x, actual))
            })
        })
        .collect();
    failures.sort_unstable();
    let failures = failures
        .into_iter()
        .map(|(x, actual)| {
            let a = x & mask;
            let b = (x >> width) & mask;
            let cin = x >> (2 * width) == 1;
            Counterexample {
                a: a.into(),
                b: b.into(),
                cin,
                expected: (a + b + u64::from(cin)).into(),
                actual: actual.into(),
            }
        })
        .collect();
    (total, failures)
}

fn to_biguint(bits: &[bool]) -> BigUint {
    let mut bytes = vec![0u8; bits.len().div_ceil(8)];
    for (i, &b) in bits.iter().enumerate() {
        if b {
            bytes[i / 8] |= 1 << (i % 8);
        }
    }
    BigUint::from_bytes_le(&bytes)
}

fn randomized(
    netlist: &Netlist,
    width: usize,
    trials: u64,
    seed: u64,
) -> Result<(u64, Vec<Counterexample>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut assignment = vec![false; 2 * width + 1];
    for _ in 0..trials {
        assignment.iter_mut().for_each(|b| *b = rng.gen());
        let result = simulate(netlist, &assignment)?;
        let a = to_biguint(&assignment[..width]);
        let b = to_biguint(&assignment[width..2 * width]);
        let cin = assignment[2 * width];
        let expected = &a + &b + u32::from(cin);
        let actual = to_biguint(&result.outputs);
        if actual != expected {
            failures.push(Counterexample {
                a,
                b,
                cin,
                expected,
                actual,
            });
        }
    }
    Ok((trials, failures))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::StandardGate;
    use crate::netlist::{build, Source};

    /// One-bit "adder" that drops the carry: Sum = A xor B, Cout = 0.
    fn broken_adder() -> Netlist {
        let mut b = build(3);
        let g = b
            .add_gate(
                StandardGate::Tsg.spec(),
                vec![Source::Input(0), Source::Input(1), Source::Const(false), Source::Const(false)],
            )
            .unwrap();
        b.set_primary_outputs(vec![Source::port(g, 1), Source::Const(false)])
            .unwrap()
    }

    #[test]
    fn broken_adder_fails_with_counterexamples() {
        let n = broken_adder();
        let r = verify_adder(&n, 1, VerifyMode::Exhaustive).unwrap();
        assert!(!r.passed);
        assert_eq!(r.checked, 8);
        // only A=B=0,Cin=0 and single-operand cases without Cin pass
        assert_eq!(r.failure_count, 5);
        assert_eq!(r.failures[0].to_string(), "A=1 B=1 Cin=0: expected 2, got 0");

        let r = verify_adder(&n, 1, VerifyMode::Randomized { trials: 200, seed: 7 }).unwrap();
        assert!(!r.passed);
        assert!(r.failures.len() <= MAX_RECORDED_FAILURES);
    }

    #[test]
    fn layout_and_size_guards() {
        let n = broken_adder();
        assert!(matches!(verify_adder(&n, 2, VerifyMode::Exhaustive), Err(Error::Layout(_))));
        assert!(matches!(verify_adder(&n, 0, VerifyMode::Exhaustive), Err(Error::Layout(_))));
        let wide = build(23)
            .set_primary_outputs((0..12).map(Source::Input).collect())
            .unwrap();
        assert!(matches!(
            verify_adder(&wide, 11, VerifyMode::Exhaustive),
            Err(Error::TooWide { .. })
        ));
    }

    #[test]
    fn biguint_from_lines_is_lsb_first() {
        assert_eq!(to_biguint(&[true, false, true]), BigUint::from(5u32));
        assert_eq!(to_biguint(&[false; 70]), BigUint::from(0u32));
    }
}
