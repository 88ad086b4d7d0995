//! Bit-sliced netlist evaluation.
//!
//! Each bit of a machine word `W` is an independent simulation lane, so one
//! pass over the netlist evaluates `W::BITS` assignments. Gates are evaluated
//! from their permutation tables as a sum of minterms, which keeps this route
//! independent of the table-lookup path in [`crate::sim`].

use std::marker::PhantomData;

use num_traits::PrimInt;

use crate::netlist::{Netlist, Source};

/// Number of simulation lanes in `W`.
pub fn lane_count<W: PrimInt>() -> usize {
    W::zero().count_zeros() as usize
}

/// Word for free bit `bit` across lanes `base..base + lanes`, where lane `l`
/// carries the assignment numbered `base + l`.
pub fn enumeration_word<W: PrimInt>(base: u64, bit: usize) -> W {
    let lanes = lane_count::<W>();
    let mut w = W::zero();
    for l in 0..lanes {
        if ((base + l as u64) >> bit) & 1 == 1 {
            w = w | (W::one() << l);
        }
    }
    w
}

pub struct SlicedSim<'a, W> {
    netlist: &'a Netlist,
    constant_slots: Vec<Vec<Option<usize>>>,
    _word: PhantomData<W>,
}

impl<'a, W: PrimInt> SlicedSim<'a, W> {
    pub fn new(netlist: &'a Netlist) -> Self {
        let mut next = 0;
        let constant_slots = netlist
            .instances
            .iter()
            .map(|g| {
                g.inputs
                    .iter()
                    .map(|s| match s {
                        Source::Const(_) => {
                            next += 1;
                            Some(next - 1)
                        }
                        _ => None,
                    })
                    .collect()
            })
            .collect();
        Self {
            netlist,
            constant_slots,
            _word: PhantomData,
        }
    }

    pub fn netlist(&self) -> &Netlist {
        self.netlist
    }

    /// Evaluates every gate output port.
    ///
    /// `constants`, when given, replaces constant gate inputs in the order of
    /// [`crate::netlist::NetlistParts::constant_inputs`].
    pub fn eval_ports(&self, inputs: &[W], constants: Option<&[W]>) -> Vec<Vec<W>> {
        assert_eq!(inputs.len(), self.netlist.num_inputs);
        let ones = !W::zero();
        let mut ports: Vec<Vec<W>> = Vec::with_capacity(self.netlist.instances.len());
        let mut terms = Vec::new();
        for (gi, g) in self.netlist.instances.iter().enumerate() {
            let lines: Vec<W> = g
                .inputs
                .iter()
                .zip(&self.constant_slots[gi])
                .map(|(src, slot)| match (*src, constants, slot) {
                    (Source::Const(_), Some(free), Some(k)) => free[*k],
                    (Source::Const(b), _, _) => {
                        if b {
                            ones
                        } else {
                            W::zero()
                        }
                    }
                    (Source::Input(i), _, _) => inputs[i],
                    (Source::Port(p), _, _) => ports[p.gate][p.port],
                })
                .collect();

            let arity = g.gate.arity();
            terms.clear();
            terms.extend((0..1usize << arity).map(|m| {
                lines.iter().enumerate().fold(ones, |acc, (i, &w)| {
                    if (m >> i) & 1 == 1 {
                        acc & w
                    } else {
                        acc & !w
                    }
                })
            }));
            let mut out = vec![W::zero(); arity];
            for (m, &row) in g.gate.table().iter().enumerate() {
                for (j, o) in out.iter_mut().enumerate() {
                    if (row >> j) & 1 == 1 {
                        *o = *o | terms[m];
                    }
                }
            }
            ports.push(out);
        }
        ports
    }

    pub fn eval_outputs(&self, inputs: &[W]) -> Vec<W> {
        let ports = self.eval_ports(inputs, None);
        self.read_outputs(inputs, &ports)
    }

    pub fn read_outputs(&self, inputs: &[W], ports: &[Vec<W>]) -> Vec<W> {
        self.netlist
            .outputs
            .iter()
            .map(|src| match *src {
                Source::Input(i) => inputs[i],
                Source::Const(b) => {
                    if b {
                        !W::zero()
                    } else {
                        W::zero()
                    }
                }
                Source::Port(p) => ports[p.gate][p.port],
            })
            .collect()
    }
}
