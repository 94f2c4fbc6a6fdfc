//! The `amalgam` command line.
//!
//! Exit codes: 0 success, 1 failed verification or infeasible spec,
//! 2 malformed input, 3 search or enumeration budget exhausted.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use amalgam_core::surface_cover::{DEFAULT_ENUMERATION_CAP, DEFAULT_SAMPLE_BUDGET};
use amalgam_core::{
    build_main_example, certify_not_comm_cohopfian, lift_curve, oracle_table,
    realize_surface_cover_with_budget, verify_certificate, AmalgamComplex, AmalgamCover,
    Certificate, CertifyOptions, ConstructionError, CoverError, CoverSpec, Surface,
    SurfaceCoverRep, Word,
};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "amalgam",
    version,
    about = "Finite covers of simple surface amalgams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build and verify a certificate for a simple amalgam.
    Certify {
        amalgam: PathBuf,
        /// Degree of the shared circles in the larger cover.
        #[arg(long = "d", default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        core_degree: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Attach permutation-level realizations of every cover piece.
        #[arg(long)]
        realize: bool,
        /// Largest piece degree to realize.
        #[arg(long, default_value_t = 16)]
        max_realized_degree: u64,
        #[command(flatten)]
        output: Output,
        #[arg(long, default_value_t = DEFAULT_SAMPLE_BUDGET)]
        budget: u64,
    },
    /// Re-verify a certificate.
    Verify { certificate: PathBuf },
    /// Find a connected cover of one surface with given boundary degrees.
    Realize {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        boundary: u32,
        #[arg(long)]
        degree: u32,
        /// Boundary partitions, e.g. "3;1,2".
        #[arg(long)]
        partitions: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SAMPLE_BUDGET)]
        budget: u64,
    },
    /// Compare the parity criterion with exhaustive enumeration.
    Enumerate {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        boundary: u32,
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Degrees of the preimages of a closed curve.
    Lift {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Emit a built-in certificate.
    Example {
        #[arg(long, required = true)]
        main: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Graphviz description of a certificate's covers.
    Dot { certificate: PathBuf },
}

#[derive(Debug, Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(short = 'o', long = "output")]
    path: Option<PathBuf>,
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn malformed(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_MALFORMED,
            kind: "malformed_input",
            message: message.into(),
        }
    }
}

impl From<CoverError> for Failure {
    fn from(e: CoverError) -> Self {
        let (code, kind) = match e {
            CoverError::Infeasible { .. } => (EXIT_FAILED, "infeasible"),
            CoverError::SearchExhausted { .. } => (EXIT_BUDGET, "search_exhausted"),
            CoverError::BudgetExceeded { .. } => (EXIT_BUDGET, "budget_exceeded"),
            _ => (EXIT_MALFORMED, "malformed_input"),
        };
        Self {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Realization { source, piece } => {
                let inner = Failure::from(source);
                Self {
                    message: format!("piece `{piece}`: {}", inner.message),
                    ..inner
                }
            }
            ConstructionError::Verification(_)
            | ConstructionError::WitnessInvariantViolation(_) => Self {
                code: EXIT_FAILED,
                kind: "verification_failed",
                message: e.to_string(),
            },
            ConstructionError::Overflow => Self {
                code: EXIT_BUDGET,
                kind: "overflow",
                message: e.to_string(),
            },
            _ => Self::malformed(e.to_string()),
        }
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    error: &'a str,
    message: &'a str,
}

/// What a successful command produced.
struct Success {
    code: i32,
    text: String,
    output: Option<PathBuf>,
}

impl Success {
    fn stdout(text: String) -> Self {
        Self {
            code: EXIT_OK,
            text,
            output: None,
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_MALFORMED
            } else {
                EXIT_OK
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(success) => {
            if success.code == EXIT_OK {
                if let Some(path) = &success.output {
                    if let Err(e) = write_atomic(path, success.text.as_bytes()) {
                        let _ = writeln!(err, "cannot write {}: {e}", path.display());
                        return EXIT_MALFORMED;
                    }
                    return EXIT_OK;
                }
            }
            let _ = out.write_all(success.text.as_bytes());
            success.code
        }
        Err(failure) => {
            let body = ErrorBody {
                error: failure.kind,
                message: &failure.message,
            };
            let _ = writeln!(err, "{}", serde_json::to_string(&body).unwrap_or_default());
            failure.code
        }
    }
}

fn execute(command: Command) -> Result<Success, Failure> {
    match command {
        Command::Certify {
            amalgam,
            core_degree,
            seed,
            realize,
            max_realized_degree,
            output,
            budget,
        } => {
            let x: AmalgamComplex = read_json(&amalgam)?;
            let validation = x.validate();
            if !validation.passed() {
                let reasons: Vec<String> = validation
                    .violations
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                return Err(Failure::malformed(format!(
                    "invalid amalgam: {}",
                    reasons.join("; ")
                )));
            }
            let options = CertifyOptions {
                core_degree,
                seed,
                realize,
                max_realized_degree,
                samples: budget,
            };
            let cert = certify_not_comm_cohopfian(&x, &options)?;
            certificate_output(&cert, output.path)
        }
        Command::Verify { certificate } => {
            let cert: Certificate = read_json(&certificate)?;
            let report = verify_certificate(&cert);
            let mut text = report.to_string();
            if !text.ends_with('\n') {
                text.push('\n');
            }
            let consistent = report == cert.report;
            if !consistent {
                text.push_str("FAIL stored report differs from the recomputed one\n");
            }
            let code = if report.passed() && consistent {
                EXIT_OK
            } else {
                EXIT_FAILED
            };
            Ok(Success {
                code,
                text,
                output: None,
            })
        }
        Command::Realize {
            genus,
            boundary,
            degree,
            partitions,
            seed,
            budget,
        } => {
            let base = Surface::new(genus, boundary);
            let spec = CoverSpec::new(degree, CoverSpec::parse_partitions(&partitions)?);
            spec.check_against(&base)?;
            let rep = realize_surface_cover_with_budget(&base, &spec, seed, budget)?;
            Ok(Success::stdout(to_json(&rep)?))
        }
        Command::Enumerate {
            genus,
            boundary,
            degree,
            budget,
            json,
        } => {
            let table = oracle_table(&Surface::new(genus, boundary), degree, budget)?;
            let code = if table.all_agree() {
                EXIT_OK
            } else {
                EXIT_FAILED
            };
            let text = if json {
                to_json(&table)?
            } else {
                render_table(&table)
            };
            Ok(Success {
                code,
                text,
                output: None,
            })
        }
        Command::Lift { rep, word } => {
            let rep: SurfaceCoverRep = read_json(&rep)?;
            let word: Word = word.parse()?;
            let degrees = lift_curve(&rep, &word)?;
            let text =
                serde_json::to_string(&degrees).map_err(|e| Failure::malformed(e.to_string()))?;
            Ok(Success::stdout(text + "\n"))
        }
        Command::Example { main: _, output } => {
            certificate_output(&build_main_example(), output.path)
        }
        Command::Dot { certificate } => {
            let cert: Certificate = read_json(&certificate)?;
            Ok(Success::stdout(render_dot(&cert)))
        }
    }
}

fn certificate_output(cert: &Certificate, path: Option<PathBuf>) -> Result<Success, Failure> {
    let text = to_json(cert)?;
    let code = if cert.report.passed() {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    Ok(Success {
        code,
        text,
        output: path,
    })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::malformed(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| Failure::malformed(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

/// Writes through a temporary file in the target directory, so the target
/// either keeps its old contents or receives the complete new ones.
fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut file = tempfile::NamedTempFile::new_in(dir)?;
    file.write_all(bytes)?;
    file.as_file().sync_all()?;
    file.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn render_table(table: &amalgam_core::surface_cover::OracleTable) -> String {
    let mut text = String::new();
    let _ = writeln!(
        text,
        "base (g={}, b={}), degree {}: {} tuples, {} connected",
        table.base.genus,
        table.base.boundary_count,
        table.degree,
        table.tuples,
        table.connected_tuples
    );
    let _ = writeln!(
        text,
        "{:<24} {:>8} {:>10} {:>6}",
        "partitions", "parity", "connected", "agree"
    );
    for row in &table.rows {
        let partitions: Vec<String> = row
            .boundary_partitions
            .iter()
            .map(|c| {
                c.parts()
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        let _ = writeln!(
            text,
            "{:<24} {:>8} {:>10} {:>6}",
            partitions.join(";"),
            row.parity_feasible,
            row.connected_realizations,
            if row.agrees() { "yes" } else { "NO" }
        );
    }
    text
}

fn dot_id(prefix: &str, id: &str) -> String {
    format!("\"{prefix}/{}\"", id.replace('"', "'"))
}

fn render_cover(text: &mut String, name: &str, cover: &AmalgamCover, complement: &[String]) {
    let _ = writeln!(text, "  subgraph \"cluster_{name}\" {{");
    let _ = writeln!(text, "    label=\"{name} (degree {})\";", cover.degree);
    for lift in &cover.circle_lifts {
        let _ = writeln!(
            text,
            "    {} [shape=ellipse, label=\"{}\\n{}×{}\"];",
            dot_id(name, &lift.id),
            lift.id,
            lift.base_circle,
            lift.degree
        );
    }
    for piece in &cover.pieces {
        let degree = cover
            .piece_degree(piece)
            .map_or("?".to_owned(), |d| d.to_string());
        let style = if complement.contains(&piece.id) {
            ", style=filled, fillcolor=lightgrey"
        } else {
            ""
        };
        let _ = writeln!(
            text,
            "    {} [shape=box, label=\"{}\\ng={} b={}\\ndegree {degree}\"{style}];",
            dot_id(name, &piece.id),
            piece.id,
            piece.surface.genus,
            piece.surface.boundary_count
        );
        for entry in &piece.boundary_map {
            let label = cover
                .lift(&entry.lift)
                .map_or("?".to_owned(), |l| l.degree.to_string());
            let _ = writeln!(
                text,
                "    {} -- {} [label=\"{label}\"];",
                dot_id(name, &piece.id),
                dot_id(name, &entry.lift)
            );
        }
    }
    let _ = writeln!(text, "  }}");
}

/// Pieces and circle lifts as nodes, incidences as edges labelled with the
/// lift's degree. Complement pieces are shaded.
pub fn render_dot(cert: &Certificate) -> String {
    let mut text = String::from("graph certificate {\n");
    let base = AmalgamCover {
        base: cert.base.clone(),
        degree: 1,
        circle_lifts: cert
            .base
            .circles
            .iter()
            .map(|c| amalgam_core::CircleLift {
                id: c.clone(),
                base_circle: c.clone(),
                degree: 1,
            })
            .collect(),
        pieces: cert
            .base
            .pieces
            .iter()
            .enumerate()
            .map(|(i, s)| amalgam_core::CoverPiece {
                id: format!("piece_{}", i + 1),
                base_piece: i,
                surface: *s,
                boundary_map: cert.base.attachments[i]
                    .iter()
                    .enumerate()
                    .map(|(j, c)| amalgam_core::BoundaryLift {
                        base_boundary: j,
                        lift: c.clone(),
                    })
                    .collect(),
            })
            .collect(),
        realizations: None,
    };
    render_cover(&mut text, "base", &base, &[]);
    if let Some(hat) = &cert.hat {
        render_cover(&mut text, "hat", hat, &[]);
    }
    render_cover(&mut text, "x_prime", &cert.x_prime, &[]);
    render_cover(
        &mut text,
        "x_double_prime",
        &cert.x_double_prime,
        &cert.witness.complement,
    );
    text.push_str("}\n");
    text
}
