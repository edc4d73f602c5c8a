// SPDX-License-Identifier: Apache-2.0

//! `sortnet` command-line front end.
//!
//! Exit codes: 0 when the command succeeds or the checked claim holds, 1 when
//! a claim fails or a counterexample is found, 2 on usage or I/O errors.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sortnet_core::analysis::{
    check_green_m_poset, check_observations, check_strategy, check_vv_m_poset, depth_regression,
    ObservationMode, DEFAULT_SAMPLES,
};
use sortnet_core::circuit::network_to_circuit;
use sortnet_core::constructions::{
    approx16, batcher_sorter, green16, green16_naive_merge, hypercube_phase, sorter4,
    van_voorhis16, M,
};
use sortnet_core::render::{
    parse_text, render_diagram, render_poset_dot, render_text, render_text_layered, DiagramFormat,
    DiagramOptions,
};
use sortnet_core::schedule::asap_schedule;
use sortnet_core::verify::DEFAULT_CAP;
use sortnet_core::{counterexample_permutation, Network, PhaseTag, Verdict, Verifier, VerifyMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "sortnet",
    version,
    about = "Build, verify and analyse comparator sorting networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a built-in network in text format.
    Build {
        #[command(subcommand)]
        target: BuildTarget,
        /// Separate ASAP layers with `;` lines.
        #[arg(long, global = true)]
        layers: bool,
    },
    /// Exhaustive 0-1 check; prints "sorts" or a counterexample.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Check one binary vector at a time instead of bit-sliced.
        #[arg(long)]
        naive: bool,
    },
    /// Width, size, depth and per-phase comparator counts.
    Stats {
        #[command(flatten)]
        input: InputArgs,
    },
    /// DOT Hasse diagram of the inferred poset.
    Poset {
        #[command(flatten)]
        input: InputArgs,
        /// Only use the first K comparators.
        #[arg(long, value_name = "K")]
        prefix: Option<usize>,
        /// Restrict to `M` or a comma-separated list of 0-based wires.
        #[arg(long, value_name = "WIRES")]
        restrict: Option<String>,
    },
    /// ASCII or SVG drawing.
    Diagram {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        /// Draw wire 0 at the top.
        #[arg(long)]
        flip: bool,
        #[arg(long)]
        no_labels: bool,
        #[arg(long)]
        no_color: bool,
        #[arg(long)]
        no_separator: bool,
    },
    /// Check the rank observations on the 16-wire hypercube phase.
    Observations {
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value = "0xC0FFEE", value_parser = parse_seed)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ObservationSelect::Both)]
        mode: ObservationSelect,
    },
    /// Structural checks on the 16-input sorters.
    Checks {
        #[arg(value_enum)]
        check: Check,
    },
    /// Depth-9 majority circuit read off the van Voorhis network.
    Majority {
        /// Number of variables: 15 or 16.
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(["15", "16"]))]
        vars: String,
        /// Output 1 iff at least this many inputs are 1 (default 8).
        #[arg(long, default_value_t = 8)]
        threshold: usize,
        /// Constant the extra input is pinned to in the 15-variable case.
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        pin: u8,
    },
}

#[derive(Debug, Subcommand)]
enum BuildTarget {
    /// Green's 60-comparator, depth-10 sorter.
    Green16,
    /// Green's sorter with a sequential final merge.
    #[command(name = "green16-naive-merge")]
    Green16NaiveMerge,
    /// van Voorhis's 61-comparator, depth-9 sorter.
    Vanvoorhis16,
    /// Approximate phase on 2^N wires.
    Hypercube { n: u32 },
    /// Batcher odd-even mergesort, N in {2,4,8,16,32}.
    Batcher { n: usize },
    /// Five-comparator four-input sorter.
    Sorter4,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Network file; stdin when absent or `-`.
    file: Option<PathBuf>,
    /// Override the exhaustive verification width cap.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Ascii,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ObservationSelect {
    Exhaustive,
    Sampled,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Check {
    GreenM,
    VvM,
    Strategy,
    DepthRegression,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed `{s}`: {e}"))
}

enum Failure {
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

fn read_network(input: &InputArgs, stdin: &mut dyn Read) -> Result<Network, Failure> {
    let text = match &input.file {
        Some(path) if path.as_os_str() != "-" => fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        _ => {
            let mut buf = String::new();
            stdin.read_to_string(&mut buf)?;
            buf
        }
    };
    Ok(parse_text(&text)?)
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render();
            let target: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(target, "{rendered}");
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match dispatch(cli.command, stdin, stdout) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Build { target, layers } => {
            let net = match target {
                BuildTarget::Green16 => green16(),
                BuildTarget::Green16NaiveMerge => green16_naive_merge(),
                BuildTarget::Vanvoorhis16 => van_voorhis16(),
                BuildTarget::Hypercube { n } => hypercube_phase(n)?,
                BuildTarget::Batcher { n } => batcher_sorter(n)?,
                BuildTarget::Sorter4 => sorter4(),
            };
            let text = if layers {
                render_text_layered(&net)
            } else {
                render_text(&net)
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Verify { input, naive } => {
            let net = read_network(&input, stdin)?;
            let mode = if naive {
                VerifyMode::Naive
            } else {
                VerifyMode::BitSliced
            };
            match (Verifier {
                cap: input.cap,
                mode,
            })
            .verify(&net)?
            {
                Verdict::Sorts => {
                    writeln!(out, "sorts")?;
                    Ok(EXIT_OK)
                }
                Verdict::Counterexample(bad) => {
                    let perm = counterexample_permutation(&net, &bad)?;
                    let bits: String = bad.iter().map(|b| char::from(b'0' + b)).collect();
                    let perm: Vec<String> = perm.iter().map(|p| p.to_string()).collect();
                    writeln!(out, "counterexample: {bits}")?;
                    writeln!(out, "witness: {}", perm.join(","))?;
                    Ok(EXIT_CLAIM_FAILS)
                }
            }
        }
        Command::Stats { input } => {
            let net = read_network(&input, stdin)?;
            let depth = asap_schedule(&net).depth();
            writeln!(out, "width: {}", net.width())?;
            writeln!(out, "comparators: {}, depth: {}", net.len(), depth)?;
            for tag in PhaseTag::ALL {
                let count = net.phase(tag).count();
                if count > 0 {
                    writeln!(out, "phase {tag}: {count}")?;
                }
            }
            let untagged = net.comparators().iter().filter(|c| c.tag.is_none()).count();
            if net.has_tags() && untagged > 0 {
                writeln!(out, "phase none: {untagged}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Poset {
            input,
            prefix,
            restrict,
        } => {
            let mut net = read_network(&input, stdin)?;
            if let Some(k) = prefix {
                net = net.prefix(k);
            }
            let mut poset = Verifier::with_cap(input.cap).infer_poset(&net)?;
            if let Some(list) = restrict {
                let wires = parse_wire_list(&list, net.width())?;
                poset = poset.restrict(&wires);
            }
            out.write_all(render_poset_dot(&poset).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Diagram {
            input,
            format,
            flip,
            no_labels,
            no_color,
            no_separator,
        } => {
            let net = read_network(&input, stdin)?;
            let opts = DiagramOptions {
                flip,
                labels: !no_labels,
                color: !no_color,
                separator: !no_separator,
            };
            let format = match format {
                Format::Ascii => DiagramFormat::Ascii,
                Format::Svg => DiagramFormat::Svg,
            };
            out.write_all(render_diagram(&net, format, &opts)?.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Observations {
            samples,
            seed,
            mode,
        } => {
            let prefix = approx16();
            let mut modes = Vec::new();
            if mode != ObservationSelect::Sampled {
                modes.push(ObservationMode::ExhaustiveBinary);
            }
            if mode != ObservationSelect::Exhaustive {
                modes.push(ObservationMode::SampledPermutations { samples, seed });
            }
            let mut all = true;
            for m in modes {
                let report = check_observations(&prefix, m)?;
                all &= report.all_hold();
                out.write_all(report.render().as_bytes())?;
            }
            Ok(if all { EXIT_OK } else { EXIT_CLAIM_FAILS })
        }
        Command::Checks { check } => {
            let (name, pass) = match check {
                Check::GreenM => ("green-m", check_green_m_poset(&green16().prefix(55))?),
                Check::VvM => ("vv-m", check_vv_m_poset(&van_voorhis16().prefix(48))?),
                Check::Strategy => ("strategy", check_strategy()?),
                Check::DepthRegression => {
                    let reg = depth_regression();
                    writeln!(out, "green16 depth: {}", reg.green_depth)?;
                    writeln!(out, "green16-naive-merge depth: {}", reg.naive_depth)?;
                    ("depth-regression", reg.holds())
                }
            };
            writeln!(out, "{name}: {}", if pass { "pass" } else { "fail" })?;
            Ok(if pass { EXIT_OK } else { EXIT_CLAIM_FAILS })
        }
        Command::Majority {
            vars,
            threshold,
            pin,
        } => {
            let vars: usize = vars.parse()?;
            if threshold == 0 || threshold > vars {
                return Err(Failure::Usage(format!("threshold must be in 1..={vars}")));
            }
            let full = network_to_circuit(&van_voorhis16());
            let (circuit, wire) = if vars == 16 {
                (full, 16 - threshold)
            } else {
                // A pinned 1 counts toward the threshold.
                let wire = if pin == 1 {
                    15 - threshold
                } else {
                    16 - threshold
                };
                (full.specialize(15, pin == 1)?, wire)
            };
            let cone = circuit.cone(wire)?;
            let depth = cone.cone_depth(wire)?;
            let holds = cone.is_threshold(wire, threshold, vars)?;
            out.write_all(cone.render().as_bytes())?;
            writeln!(out, "# output wire: {wire}")?;
            writeln!(out, "# cone depth: {depth}")?;
            writeln!(
                out,
                "# threshold {threshold} of {vars}: {}",
                if holds { "holds" } else { "fails" }
            )?;
            Ok(if holds { EXIT_OK } else { EXIT_CLAIM_FAILS })
        }
    }
}

fn parse_wire_list(list: &str, width: usize) -> Result<Vec<usize>, Failure> {
    if list == "M" {
        if width != 16 {
            return Err(Failure::Usage("`M` needs a 16-wire network".into()));
        }
        return Ok(M.to_vec());
    }
    let mut wires = Vec::new();
    for part in list.split(',') {
        let w: usize = part
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("bad wire `{part}`")))?;
        if w >= width {
            return Err(Failure::Usage(format!(
                "wire {w} out of range for width {width}"
            )));
        }
        if wires.contains(&w) {
            return Err(Failure::Usage(format!("wire {w} listed twice")));
        }
        wires.push(w);
    }
    Ok(wires)
}
