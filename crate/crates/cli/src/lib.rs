//! Library side of the `avn` command-line tool. [`run`] parses arguments,
//! writes the report to `out` and returns the process exit code.

pub mod verify;

#[cfg(test)]
mod tests;

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use avn::graphstate::{Graph, DEFAULT_ORBIT_CAP};
use avn::semantics::{
    empirical_model, is_strongly_contextual, named_fixture, stabiliser_state, xor_theory_of_model,
};
use avn::subgroup::{variable_name, AvnDecision, DEFAULT_ELEMENT_CAP};
use avn::triples::{
    count_brute_force, count_formula, count_structured, TripleStream, DEFAULT_BRUTE_CAP,
    DEFAULT_ENUMERATION_CAP,
};
use avn::{Error, StabiliserGroup, XorEquation, XorTheory};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "avn",
    version,
    about = "All-versus-Nothing arguments for stabiliser states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountMode {
    Formula,
    Brute,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphAction {
    Avn,
    Triple,
    Lc,
    Orbit,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List AvN triples in canonical order, one per line.
    Enumerate {
        #[arg(long)]
        qubits: usize,
        /// Emit all eight sign patterns of each triple.
        #[arg(long)]
        phases: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        max_qubits: Option<usize>,
    },
    /// Count AvN triples (with phases) and cross-check against the closed formula.
    Count {
        #[arg(long)]
        qubits: usize,
        #[arg(long, value_enum, default_value_t = CountMode::Formula)]
        mode: CountMode,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        max_qubits: Option<usize>,
    },
    /// Graph-state checks; reads the graph from FILE or stdin.
    Graph {
        #[arg(value_enum)]
        action: GraphAction,
        file: Option<PathBuf>,
        /// Vertex for `lc`.
        #[arg(long)]
        vertex: Option<usize>,
        #[arg(long)]
        max_qubits: Option<usize>,
    },
    /// Decide AvN for a generator list such as "XXX,ZZI,IZZ".
    Theory {
        generators: String,
        #[arg(long)]
        max_qubits: Option<usize>,
    },
    /// Print an empirical model: a fixture (ghz3, prbox, cluster4) or a maximal generator list.
    Model {
        source: String,
        /// Also print the XOR theory and the strong-contextuality verdict.
        #[arg(long)]
        theory: bool,
    },
    /// Run the invariant suites.
    Verify {
        #[arg(long, value_enum, default_value_t = verify::Suite::All)]
        suite: verify::Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Serialize)]
struct TripleRecord<'a> {
    n: usize,
    e: &'a str,
    f: &'a str,
    g: &'a str,
    ne: usize,
    nf: usize,
    ng: usize,
}

#[derive(Debug, Serialize)]
struct CountRecord {
    n: usize,
    mode: &'static str,
    count: String,
    formula: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    matches: Option<bool>,
}

enum Failure {
    Avn(Error),
    Io(io::Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Avn(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Enumerate {
            qubits,
            phases,
            format,
            limit,
            max_qubits,
        } => enumerate(
            qubits,
            phases,
            format,
            limit,
            cap(max_qubits, DEFAULT_ENUMERATION_CAP, err),
            out,
        ),
        Command::Count {
            qubits,
            mode,
            format,
            max_qubits,
        } => {
            let default = if mode == CountMode::Brute {
                DEFAULT_BRUTE_CAP
            } else {
                DEFAULT_ENUMERATION_CAP
            };
            count(qubits, mode, format, cap(max_qubits, default, err), out)
        }
        Command::Graph {
            action,
            file,
            vertex,
            max_qubits,
        } => graph(
            action,
            file,
            vertex,
            cap(max_qubits, DEFAULT_ORBIT_CAP, err),
            out,
        ),
        Command::Theory {
            generators,
            max_qubits,
        } => theory(&generators, cap(max_qubits, DEFAULT_ELEMENT_CAP, err), out),
        Command::Model { source, theory } => model(&source, theory, out),
        Command::Verify { suite, seed } => run_verify(suite, seed, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_PROPERTY
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Avn(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::SizeCap { .. } => EXIT_CAP,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn cap(requested: Option<usize>, default: usize, err: &mut dyn Write) -> usize {
    match requested {
        Some(c) => {
            if c > default {
                let _ = writeln!(err, "warning: raising the qubit cap from {default} to {c}; runtime and memory grow exponentially");
            }
            c
        }
        None => default,
    }
}

fn enumerate(
    n: usize,
    phases: bool,
    format: Format,
    limit: Option<usize>,
    cap: usize,
    out: &mut dyn Write,
) -> Outcome {
    if n < 3 {
        return Err(Failure::Usage(format!(
            "--qubits must be at least 3, got {n}"
        )));
    }
    let stream = TripleStream::new(n, phases, cap)?;
    let mut emitted = 0usize;
    for t in stream.take(limit.unwrap_or(usize::MAX)) {
        match format {
            Format::Text => writeln!(out, "{t}")?,
            Format::Records => {
                let c = t.counts()?;
                let (e, f, g) = (t.e.to_string(), t.f.to_string(), t.g.to_string());
                let rec = TripleRecord {
                    n,
                    e: &e,
                    f: &f,
                    g: &g,
                    ne: c.n_e,
                    nf: c.n_f,
                    ng: c.n_g,
                };
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&rec).expect("plain record")
                )?;
            }
        }
        emitted += 1;
    }
    writeln!(out, "count={emitted}")?;
    Ok(EXIT_OK)
}

fn count(n: usize, mode: CountMode, format: Format, cap: usize, out: &mut dyn Write) -> Outcome {
    if n < 3 {
        return Err(Failure::Usage(format!(
            "--qubits must be at least 3, got {n}"
        )));
    }
    let formula = count_formula(n);
    let (name, counted) = match mode {
        CountMode::Formula => ("formula", None),
        CountMode::Brute => ("brute", Some(count_brute_force(n, cap)?)),
        CountMode::Structured => ("structured", Some(count_structured(n, cap)?)),
    };
    let phased = counted.map(|c| num_bigint::BigUint::from(c) * 8u32);
    let matches = phased.as_ref().map(|p| *p == formula);
    match format {
        Format::Text => {
            if let (Some(c), Some(p)) = (counted, &phased) {
                writeln!(out, "{name}: {p} (phase-free {c})")?;
                writeln!(out, "formula: {formula}")?;
                writeln!(
                    out,
                    "{}",
                    if matches == Some(true) {
                        "MATCH"
                    } else {
                        "MISMATCH"
                    }
                )?;
            } else {
                writeln!(out, "{formula}")?;
            }
        }
        Format::Records => {
            let rec = CountRecord {
                n,
                mode: name,
                count: phased.as_ref().unwrap_or(&formula).to_string(),
                formula: formula.to_string(),
                matches,
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string(&rec).expect("plain record")
            )?;
        }
    }
    Ok(if matches == Some(false) {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    })
}

fn read_graph(file: Option<PathBuf>) -> std::result::Result<Graph, Failure> {
    let text = match file {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(&p)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?,
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Ok(text.parse()?)
}

fn write_certificate(out: &mut dyn Write, n: usize, elems: &[avn::PauliElement]) -> Outcome {
    let theory = XorTheory {
        num_qubits: n,
        equations: elems.iter().map(XorEquation::of_element).collect(),
    };
    assert!(theory.is_refutation(), "certificate does not refute");
    writeln!(out, "certificate:")?;
    for (p, eq) in elems.iter().zip(&theory.equations) {
        writeln!(out, "  {eq}    [{p}]")?;
    }
    writeln!(out, "sum: {}", theory.sum())?;
    Ok(EXIT_OK)
}

fn graph(
    action: GraphAction,
    file: Option<PathBuf>,
    vertex: Option<usize>,
    cap: usize,
    out: &mut dyn Write,
) -> Outcome {
    let g = read_graph(file)?;
    match action {
        GraphAction::Avn => match g.avn_witness() {
            Some(u) => writeln!(out, "AvN: yes (vertex {u} has degree {})", g.degree(u))?,
            None => writeln!(out, "AvN: no (maximum degree {})", g.max_degree())?,
        },
        GraphAction::Triple => match g.extract_avn_triple() {
            Some(x) => {
                let (u, v, w) = x.vertices;
                writeln!(out, "vertices: {u} {v} {w}")?;
                let case = match x.case {
                    avn::graphstate::ExtractionCase::Triangle => "triangle",
                    avn::graphstate::ExtractionCase::Star => "star",
                };
                writeln!(out, "case: {} ({case})", x.case.number())?;
                writeln!(out, "triple: {}", x.triple)?;
                write_certificate(out, g.num_vertices(), &x.triple.certificate())?;
            }
            None => writeln!(out, "no AvN triple (maximum degree {})", g.max_degree())?,
        },
        GraphAction::Lc => {
            let v = vertex.ok_or_else(|| Failure::Usage("lc needs --vertex".into()))?;
            writeln!(out, "{}", g.local_complement(v)?)?;
        }
        GraphAction::Orbit => {
            let orbit = g.lc_orbit(cap)?;
            writeln!(out, "orbit size={}", orbit.len())?;
            for h in &orbit {
                writeln!(
                    out,
                    "edges={}",
                    h.edges()
                        .iter()
                        .map(|(a, b)| format!("{a}-{b}"))
                        .collect::<Vec<_>>()
                        .join(",")
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn theory(generators: &str, cap: usize, out: &mut dyn Write) -> Outcome {
    let s = StabiliserGroup::parse(generators)?;
    let n = s.num_qubits();
    writeln!(out, "generators:")?;
    for eq in &s.generator_theory().equations {
        writeln!(out, "  {eq}")?;
    }
    match s.is_avn_capped(cap)? {
        AvnDecision::Yes(cert) => {
            writeln!(out, "AvN: yes")?;
            write_certificate(out, n, &cert)?;
        }
        AvnDecision::No(assignment) => {
            writeln!(out, "AvN: no")?;
            let vals: Vec<String> = assignment
                .iter()
                .enumerate()
                .map(|(v, b)| format!("{}={}", variable_name(v), *b as u8))
                .collect();
            writeln!(out, "assignment: {}", vals.join(" "))?;
        }
    }
    Ok(EXIT_OK)
}

fn model(source: &str, with_theory: bool, out: &mut dyn Write) -> Outcome {
    let m = match named_fixture(source) {
        Some(m) => m,
        None => {
            let s = StabiliserGroup::parse(source)?;
            empirical_model(&stabiliser_state(&s)?)?
        }
    };
    write!(out, "{}", m.dump())?;
    if with_theory {
        writeln!(out, "theory:")?;
        for eq in xor_theory_of_model(&m).equations {
            writeln!(out, "  {}", eq.render(&|v| m.variable_name(v)))?;
        }
        let sc = is_strongly_contextual(&m)?;
        writeln!(
            out,
            "strongly contextual: {}",
            if sc { "yes" } else { "no" }
        )?;
    }
    Ok(EXIT_OK)
}

fn run_verify(suite: verify::Suite, seed: u64, out: &mut dyn Write) -> Outcome {
    let checks = verify::run_suite(suite, seed);
    for c in &checks {
        writeln!(out, "{c}")?;
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    if failed == 0 {
        writeln!(out, "verify: all {} checks passed", checks.len())?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "verify: {failed} of {} checks failed", checks.len())?;
        Ok(EXIT_PROPERTY)
    }
}
