//! The `tropolink` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::atlas::{enumerate_legged, enumerate_p_regular, move_graph, Filter};
use crate::canon::LegMode;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::io::{read_graph, to_dot, GraphDoc};
use crate::linkage::{link, link_with_legs, verify_certificate, LinkMode, LinkageCertificate};
use crate::moduli::{build_poset, connected_through_codim_one, Locus};
use crate::normal_form::build_polygon;

#[derive(Parser, Debug)]
#[command(
    name = "tropolink",
    version,
    about = "Certified linkage of regular graphs and tropical moduli posets"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Maximum number of worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Plain,
    #[value(name = "3ec")]
    ThreeEc,
}

impl From<ModeArg> for LinkMode {
    fn from(m: ModeArg) -> LinkMode {
        match m {
            ModeArg::Plain => LinkMode::Plain,
            ModeArg::ThreeEc => LinkMode::ThreeEc,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LegArg {
    Labeled,
    Unlabeled,
}

impl From<LegArg> for LegMode {
    fn from(m: LegArg) -> LegMode {
        match m {
            LegArg::Labeled => LegMode::Labeled,
            LegArg::Unlabeled => LegMode::Unlabeled,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Link two graphs and write the certificate.
    Link {
        g1: PathBuf,
        g2: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Plain)]
        mode: ModeArg,
        /// How legs are matched when the graphs have legs.
        #[arg(long, value_enum, default_value_t = LegArg::Labeled)]
        leg_mode: LegArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a certificate; exits 1 when it is invalid.
    Verify {
        cert: PathBuf,
        #[arg(long)]
        p: usize,
        /// Defaults to the mode recorded in the certificate.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// List one graph per isomorphism class.
    Enumerate {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 0)]
        legs: u32,
        #[arg(long = "3ec")]
        three_ec: bool,
    },
    /// Strong-link adjacency over isomorphism classes.
    Movegraph {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 0)]
        legs: u32,
        /// Restrict to 3-edge-connected classes and middles.
        #[arg(long = "3ec")]
        three_ec: bool,
    },
    /// The p-polygon on gamma vertices.
    Polygon {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        gamma: usize,
    },
    /// Stratification poset of a tropical moduli locus.
    Poset {
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 0)]
        legs: u32,
        /// all | pure | 3ec | preg:P
        #[arg(long, default_value = "all")]
        locus: String,
    },
    /// Connectedness through codimension one; exits 1 when disconnected.
    #[command(name = "check-codim1")]
    CheckCodim1 {
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 0)]
        legs: u32,
        #[arg(long, default_value = "all")]
        locus: String,
    },
}

/// Runs the command line on `args` (program name first), writing results
/// to `out`. Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.jobs {
        // A pool may already exist when called repeatedly in one process.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let kind = match e {
                Error::Malformed(_) | Error::Json(_) => "malformed",
                Error::Precondition(_) => "precondition",
                Error::BudgetExceeded(_) => "budget",
                Error::Internal(_) => "internal",
                Error::Io(_) => "io",
            };
            let _ = writeln!(
                out,
                "{}",
                json!({"error": {"kind": kind, "message": e.to_string()}})
            );
            2
        }
    }
}

fn emit(out: &mut dyn Write, s: &str) -> Result<()> {
    out.write_all(s.as_bytes())?;
    if !s.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Link {
            g1,
            g2,
            mode,
            leg_mode,
            output,
        } => {
            let (a, b) = (read_graph(g1)?, read_graph(g2)?);
            let cert = if a.leg_count() > 0 || b.leg_count() > 0 {
                if *mode == ModeArg::ThreeEc {
                    return Err(Error::Precondition(
                        "3ec mode is for graphs without legs".into(),
                    ));
                }
                link_with_legs(&a, &b, (*leg_mode).into())?
            } else {
                link(&a, &b, (*mode).into())?
            };
            match output {
                Some(path) => {
                    std::fs::write(path, cert.to_json())?;
                    emit(
                        out,
                        &json!({"steps": cert.len(), "output": path}).to_string(),
                    )?;
                }
                None => emit(out, &cert.to_json())?,
            }
            Ok(0)
        }
        Command::Verify { cert, p, mode } => {
            let c = LinkageCertificate::from_json(&std::fs::read_to_string(cert)?)?;
            let mode = mode.map(LinkMode::from).unwrap_or(c.mode);
            let report = verify_certificate(&c, *p, mode);
            emit(out, &serde_json::to_string_pretty(&report)?)?;
            Ok(if report.valid { 0 } else { 1 })
        }
        Command::Enumerate {
            p,
            genus,
            legs,
            three_ec,
        } => {
            let filter = if *three_ec {
                Filter::ThreeEdgeConnected
            } else {
                Filter::All
            };
            let graphs = if *legs == 0 {
                enumerate_p_regular(*p, *genus, filter)?
            } else {
                enumerate_legged(*p, *genus, *legs, LegMode::Labeled, filter)?
            };
            match cli.format {
                Format::Json => {
                    let docs: Vec<GraphDoc> = graphs.iter().map(GraphDoc::from_graph).collect();
                    emit(out, &serde_json::to_string_pretty(&docs)?)?;
                }
                Format::Dot => {
                    for (i, g) in graphs.iter().enumerate() {
                        emit(
                            out,
                            &to_dot(&WeightedGraph::pure(g.clone()), &format!("class{i}")),
                        )?;
                    }
                }
            }
            Ok(0)
        }
        Command::Movegraph {
            p,
            genus,
            legs,
            three_ec,
        } => {
            let filter = if *three_ec {
                Filter::ThreeEdgeConnected
            } else {
                Filter::All
            };
            let classes = enumerate_legged(*p, *genus, *legs, LegMode::Labeled, filter)?;
            let mg = move_graph(&classes, LegMode::Labeled, *three_ec);
            match cli.format {
                Format::Dot => emit(out, &mg.to_dot(&format!("moves_p{p}_b{genus}_n{legs}")))?,
                Format::Json => emit(
                    out,
                    &serde_json::to_string_pretty(&json!({
                        "classes": mg.ids,
                        "edges": mg.edges,
                        "connected": mg.is_connected(),
                    }))?,
                )?,
            }
            Ok(0)
        }
        Command::Polygon { p, gamma } => {
            let g = build_polygon(*p, *gamma)?;
            match cli.format {
                Format::Json => emit(out, &GraphDoc::from_graph(&g).to_json())?,
                Format::Dot => emit(
                    out,
                    &to_dot(&WeightedGraph::pure(g), &format!("polygon_{p}_{gamma}")),
                )?,
            }
            Ok(0)
        }
        Command::Poset { genus, legs, locus } => {
            let poset = build_poset(*genus, *legs, locus.parse::<Locus>()?)?;
            match cli.format {
                Format::Json => emit(out, &poset.to_json())?,
                Format::Dot => emit(out, &poset.to_dot())?,
            }
            Ok(0)
        }
        Command::CheckCodim1 { genus, legs, locus } => {
            let poset = build_poset(*genus, *legs, locus.parse::<Locus>()?)?;
            let report = connected_through_codim_one(&poset)?;
            let status = if report.connected {
                "connected"
            } else {
                "disconnected"
            };
            emit(
                out,
                &serde_json::to_string_pretty(&json!({
                    "status": status,
                    "report": report,
                }))?,
            )?;
            Ok(if report.connected { 0 } else { 1 })
        }
    }
}
