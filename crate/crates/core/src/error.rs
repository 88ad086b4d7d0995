use thiserror::Error;

use crate::netlist::Diagnostic;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("bit pattern width {0} out of range 1..=16")]
    BadWidth(usize),
    #[error("value {value} does not fit in {width} bits")]
    ValueOverflow { width: usize, value: u32 },
    #[error("width mismatch: expected {expected} lines, got {actual}")]
    WidthMismatch { expected: usize, actual: usize },
    #[error("gate table length {0} is not a power of two in 2..=65536")]
    TableLength(usize),
    #[error("invalid bitstring {0:?}: only '0' and '1' allowed")]
    BadBitstring(String),
    #[error("invalid netlist: {}", join_diagnostics(.0))]
    InvalidNetlist(Vec<Diagnostic>),
    #[error("{what} needs {bits} free bits, limit is {limit}")]
    TooWide {
        what: &'static str,
        bits: usize,
        limit: usize,
    },
    #[error("adder layout mismatch: {0}")]
    Layout(String),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("document error: {0}")]
    Document(String),
}

fn join_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
