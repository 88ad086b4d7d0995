//! `revkit`: build, simulate, verify and cost reversible adder netlists.
//!
//! Exit codes: 0 success, 1 verification or report failure, 2 usage or
//! parse error. Bitstrings are written with input line 0 leftmost.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use revkit::document::{from_json, to_json, LoadOptions};
use revkit::dot::to_dot;
use revkit::metrics::ComparisonReport;
use revkit::pattern::{bitstring, parse_bitstring};
use revkit::sim::{input_lines, tabulation_order};
use revkit::{
    build_carry_skip, build_full_adder, build_ripple_carry, classify_outputs, metrics, simulate,
    truth_table, verify_adder, Netlist, ReportKind, VerifyMode,
};

#[derive(Parser)]
#[command(name = "revkit", version, about = "Reversible TSG/Fredkin adder toolkit")]
struct Cli {
    /// Accept netlist files that define their own gate tables.
    #[arg(long, global = true)]
    allow_custom_gates: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesise an adder and write it as a JSON netlist.
    Build {
        #[command(flatten)]
        arch: ArchArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Simulate one input assignment.
    Sim {
        file: PathBuf,
        /// One character per primary input, line 0 first.
        #[arg(long)]
        inputs: String,
        /// Also print the value of every garbage output.
        #[arg(long)]
        verbose: bool,
    },
    /// Print the full truth table, line 0 as the leftmost (most significant) column.
    Table { file: PathBuf },
    /// Check an adder netlist against integer addition.
    Verify {
        file: PathBuf,
        #[arg(long)]
        width: usize,
        /// Check every assignment (the default).
        #[arg(long, conflicts_with = "random")]
        exhaustive: bool,
        /// Check this many random assignments instead.
        #[arg(long, value_name = "TRIALS")]
        random: Option<u64>,
        #[arg(long, default_value_t = 42, requires = "random")]
        seed: u64,
    },
    /// Print gate, garbage and constant counts.
    Metrics { file: PathBuf },
    /// Compare measured costs with the reference comparison table.
    Report {
        #[command(flatten)]
        arch: ArchArgs,
        /// Measure this netlist instead of building a fresh one.
        #[arg(long)]
        netlist: Option<PathBuf>,
        #[arg(long)]
        csv: bool,
    },
    /// Write a Graphviz description of the netlist.
    ExportDot {
        file: PathBuf,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Arch {
    FullAdder,
    Ripple,
    Skip,
}

#[derive(Args)]
struct ArchArgs {
    #[arg(long, value_enum)]
    arch: Arch,
    /// Adder width in bits (ignored for the full adder).
    #[arg(long, default_value_t = 1)]
    width: usize,
    /// Carry-skip block size.
    #[arg(long, default_value_t = revkit::builders::DEFAULT_BLOCK)]
    block: usize,
}

impl ArchArgs {
    fn kind(&self) -> ReportKind {
        match self.arch {
            Arch::FullAdder => ReportKind::FullAdder,
            Arch::Ripple => ReportKind::Ripple,
            Arch::Skip => ReportKind::Skip { block: self.block },
        }
    }

    fn build(&self) -> Result<Netlist> {
        Ok(match self.arch {
            Arch::FullAdder => build_full_adder(),
            Arch::Ripple => build_ripple_carry(self.width)?,
            Arch::Skip => build_carry_skip(self.width, self.block)?,
        })
    }
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Ok,
    CheckFailed,
}

fn load(path: &Path, opts: LoadOptions) -> Result<Netlist> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    from_json(&text, opts).with_context(|| format!("loading {}", path.display()))
}

fn run(cli: Cli) -> Result<Outcome> {
    let opts = LoadOptions {
        allow_custom_gates: cli.allow_custom_gates,
    };
    match cli.command {
        Command::Build { arch, out } => {
            let n = arch.build()?;
            fs::write(&out, to_json(&n)).with_context(|| format!("writing {}", out.display()))?;
            println!("wrote {} ({} gates)", out.display(), n.instances.len());
        }
        Command::Sim {
            file,
            inputs,
            verbose,
        } => {
            let n = load(&file, opts)?;
            let assignment = parse_bitstring(&inputs)?;
            if assignment.len() != n.num_inputs {
                bail!(
                    "expected {} input bits, got {}",
                    n.num_inputs,
                    assignment.len()
                );
            }
            let r = simulate(&n, &assignment)?;
            println!("{}", bitstring(&r.outputs));
            if verbose {
                for p in classify_outputs(&n).garbage_ports() {
                    println!(
                        "garbage {}.{} = {}",
                        n.instances[p.gate].id,
                        p.port,
                        u8::from(r.port(p))
                    );
                }
            }
        }
        Command::Table { file } => {
            let n = load(&file, opts)?;
            let rows = truth_table(&n)?;
            for x in tabulation_order(n.num_inputs) {
                let row = &rows[x as usize];
                println!(
                    "{} {}",
                    bitstring(&input_lines(x, n.num_inputs)),
                    bitstring(&row.outputs)
                );
            }
        }
        Command::Verify {
            file,
            width,
            exhaustive: _,
            random,
            seed,
        } => {
            let n = load(&file, opts)?;
            let mode = match random {
                Some(trials) => VerifyMode::Randomized { trials, seed },
                None => VerifyMode::Exhaustive,
            };
            let report = verify_adder(&n, width, mode)?;
            println!("{report}");
            if !report.passed {
                return Ok(Outcome::CheckFailed);
            }
        }
        Command::Metrics { file } => {
            let n = load(&file, opts)?;
            println!("{}", metrics(&n));
        }
        Command::Report { arch, netlist, csv } => {
            let n = match &netlist {
                Some(path) => load(path, opts)?,
                None => arch.build()?,
            };
            let report = ComparisonReport::from_measured(arch.kind(), arch.width, metrics(&n));
            if csv {
                print!("{}", report.to_csv());
                for d in &report.discrepancies {
                    eprintln!("discrepancy: {d}");
                }
            } else {
                println!("{report}");
            }
            if !report.passed() {
                return Ok(Outcome::CheckFailed);
            }
        }
        Command::ExportDot { file, out } => {
            let n = load(&file, opts)?;
            let dot = to_dot(&n);
            match out {
                Some(path) => fs::write(&path, dot).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{dot}"),
            }
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
