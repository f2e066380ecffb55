//! Command-line front end. Every command reads a representation from a
//! matrix file (or a graph file, by the `.graph` extension), runs one
//! library computation, and prints a deterministic report.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gsep_core::polytope::{self, Side};
use gsep_core::toric::{self, MonomialOrder};
use gsep_core::{cuts, equivalence, io, Error, IntMatrix, RegularRep};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "gsep",
    version,
    about = "Generalized symmetric edge polytopes of regular matroid representations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format; both carry the same information.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a representation: full rank, unimodularity, simplicity
    Check { input: PathBuf },
    /// Shape summary: rank, size, counts, polytope dimension
    Info { input: PathBuf },
    /// Bases of the represented matroid, as ground labels
    Bases { input: PathBuf },
    /// Circuits of the represented matroid, as ground labels
    Circuits { input: PathBuf },
    /// Row-space vectors with entries of absolute value below k
    Cuts {
        input: PathBuf,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(i64).range(1..))]
        k: i64,
    },
    /// Kernel vectors with entries of absolute value below k
    Flows {
        input: PathBuf,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(i64).range(1..))]
        k: i64,
    },
    /// Facet certificates of the polytope
    Facets { input: PathBuf },
    /// Lattice points of the k-th dilate of the polar polytope
    PolarPoints {
        input: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(i64).range(1..))]
        k: i64,
    },
    /// Primitive binomials of the doubled matrix
    Graver { input: PathBuf },
    /// Groebner basis of the toric ideal under the standard order
    Groebner { input: PathBuf },
    /// Unimodular triangulation read off the initial ideal
    Triangulate { input: PathBuf },
    /// Ehrhart numerator, computed along two routes that must agree
    Hstar { input: PathBuf },
    /// Gamma vector of the palindromic Ehrhart numerator
    Gamma { input: PathBuf },
    /// Decide unimodular equivalence of two representations
    Equiv {
        first: PathBuf,
        second: PathBuf,
        /// Ground-set correspondence file ("i j" per line, one-based);
        /// searched for when omitted.
        #[arg(long)]
        correspondence: Option<PathBuf>,
    },
    /// Standard-form representation of a graph's matroid
    FromGraph { input: PathBuf },
}

fn load_rep(path: &Path) -> Result<RegularRep, Error> {
    if path.extension().and_then(|e| e.to_str()) == Some("graph") {
        RegularRep::from_graph(&io::read_graph(path)?)
    } else {
        RegularRep::from_matrix(io::read_matrix(path)?)
    }
}

fn matrix_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn labeled(rep: &RegularRep, sets: &[Vec<usize>]) -> Vec<Vec<i64>> {
    sets.iter()
        .map(|s| s.iter().map(|&i| rep.ground_labels()[i]).collect())
        .collect()
}

fn report(cmd: &Command) -> Result<Value, Error> {
    match cmd {
        Command::Check { input } => {
            let rep = load_rep(input)?;
            Ok(json!({
                "ok": true,
                "rank": rep.rank(),
                "size": rep.size(),
                "totally_unimodular": rep.matrix().is_totally_unimodular()?,
                "simple": rep.is_simple(),
            }))
        }
        Command::Info { input } => {
            let rep = load_rep(input)?;
            let p = polytope::Polytope::from_signed_columns(rep.matrix());
            Ok(json!({
                "rank": rep.rank(),
                "size": rep.size(),
                "labels": rep.ground_labels(),
                "simple": rep.is_simple(),
                "bipartite": rep.is_bipartite()?,
                "totally_unimodular": rep.matrix().is_totally_unimodular()?,
                "bases": rep.bases()?.len(),
                "circuits": rep.circuits()?.len(),
                "vertices": p.vertices().len(),
                "dimension": polytope::dimension(&p)?,
            }))
        }
        Command::Bases { input } => {
            let rep = load_rep(input)?;
            let bases = labeled(&rep, rep.bases()?);
            Ok(json!({ "count": bases.len(), "bases": bases }))
        }
        Command::Circuits { input } => {
            let rep = load_rep(input)?;
            let circuits = labeled(&rep, rep.circuits()?);
            Ok(json!({ "count": circuits.len(), "circuits": circuits }))
        }
        Command::Cuts { input, k } => {
            let rep = load_rep(input)?;
            let v = cuts::k_cuts(&rep, *k)?;
            Ok(json!({ "k": k, "count": v.len(), "vectors": v }))
        }
        Command::Flows { input, k } => {
            let rep = load_rep(input)?;
            let v = cuts::k_flows(&rep, *k)?;
            Ok(json!({ "k": k, "count": v.len(), "vectors": v }))
        }
        Command::Facets { input } => {
            let rep = load_rep(input)?;
            let certs = polytope::facets(&rep)?;
            Ok(json!({ "count": certs.len(), "facets": certs }))
        }
        Command::PolarPoints { input, k } => {
            let rep = load_rep(input)?;
            let pts = polytope::polar_lattice_points(&rep, *k)?;
            Ok(json!({ "k": k, "count": pts.len(), "points": pts }))
        }
        Command::Graver { input } => {
            let rep = load_rep(input)?;
            let b = toric::graver_doubled(&rep)?;
            Ok(json!({ "count": b.len(), "binomials": b }))
        }
        Command::Groebner { input } => {
            let rep = load_rep(input)?;
            let order = MonomialOrder::standard(rep.size());
            let b = toric::groebner_basis(&rep, &order)?;
            Ok(json!({ "count": b.len(), "binomials": b }))
        }
        Command::Triangulate { input } => {
            let rep = load_rep(input)?;
            let order = MonomialOrder::standard(rep.size());
            let t = toric::triangulation(&rep, &order)?;
            Ok(json!({
                "rank": t.rank(),
                "ground_size": t.ground_size(),
                "cone_facets": t.cone_facets(),
                "boundary_facets": t.boundary_facets(),
            }))
        }
        Command::Hstar { input } => {
            let rep = load_rep(input)?;
            let counts = polytope::ehrhart_counts(&rep, Side::Primal, rep.rank() as i64)?;
            Ok(json!({ "counts": counts, "hstar": polytope::hstar(&rep)? }))
        }
        Command::Gamma { input } => {
            let rep = load_rep(input)?;
            let h = polytope::hstar(&rep)?;
            let g = polytope::gamma_from_hstar(&h)?;
            Ok(json!({ "hstar": h, "gamma": g }))
        }
        Command::Equiv { first, second, correspondence } => {
            let m1 = load_rep(first)?;
            let m2 = load_rep(second)?;
            let corr = match correspondence {
                Some(path) => Some(io::read_correspondence(path)?),
                None => equivalence::matroid_isomorphism_search(&m1, &m2)?,
            };
            match corr {
                None => Ok(json!({ "equivalent": false })),
                Some(c) => {
                    let (f, p) = equivalence::unimodular_transform(&m1, &m2, &c)?;
                    Ok(json!({
                        "equivalent": true,
                        "correspondence": c,
                        "transform": matrix_rows(&f),
                        "perm": p.perm(),
                        "signs": p.signs(),
                    }))
                }
            }
        }
        Command::FromGraph { input } => {
            let rep = RegularRep::from_graph(&io::read_graph(input)?)?;
            Ok(json!({
                "rows": rep.rank(),
                "cols": rep.size(),
                "matrix": matrix_rows(rep.matrix()),
                "labels": rep.ground_labels(),
            }))
        }
    }
}

fn error_value(e: &Error) -> Value {
    let kind = match e {
        Error::Overflow => "overflow",
        Error::NotSquare { .. } => "not-square",
        Error::RankDeficient { .. } => "rank-deficient",
        Error::ZeroRank => "zero-rank",
        Error::NotUnimodular { .. } => "not-unimodular",
        Error::NotABasis { .. } => "not-a-basis",
        Error::NotStandardForm => "not-standard-form",
        Error::MustSimplify => "must-simplify",
        Error::ZeroColumn => "zero-column",
        Error::NeedsFacets => "needs-facets",
        Error::InvalidArgument(_) => "invalid-argument",
        Error::SigningInfeasible => "signing-infeasible",
        Error::InvalidCorrespondence(_) => "invalid-correspondence",
        Error::SizeLimit { .. } => "size-limit",
        Error::TheoremViolation(_) => "theorem-violation",
        Error::Inconsistency(_) => "inconsistency",
        Error::Parse { .. } => "parse",
        Error::Io(_) => "io",
    };
    let mut v = json!({ "error": { "kind": kind, "message": e.to_string() } });
    if let Error::NotUnimodular { rows, cols, det } = e {
        v["error"]["rows"] = json!(rows);
        v["error"]["cols"] = json!(cols);
        v["error"]["det"] = json!(det);
    }
    v
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Io(_) | Error::Parse { .. } => 3,
        Error::TheoremViolation(_) | Error::Inconsistency(_) => 1,
        _ => 2,
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

/// Plain-text rendering of the same JSON value: objects as "key: ..."
/// lines, arrays of scalars on one line, nested arrays one row per line.
fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (key, val) in map {
                if is_scalar(val) {
                    out.push_str(&format!("{pad}{key}: {val}\n"));
                } else {
                    out.push_str(&format!("{pad}{key}:\n"));
                    render_text(val, indent + 2, out);
                }
            }
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            let joined: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("{pad}{}\n", joined.join(" ")));
        }
        Value::Array(items) => {
            for item in items {
                render_text(item, indent, out);
            }
        }
        scalar => out.push_str(&format!("{pad}{scalar}\n")),
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{v:#}\n"),
        Format::Text => {
            let mut s = String::new();
            render_text(v, 0, &mut s);
            s
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match report(&cli.command) {
        Ok(v) => {
            let text = render(&v, cli.format);
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(Error::from),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    print!("{:#}\n", error_value(&e));
                    ExitCode::from(exit_code_for(&e))
                }
            }
        }
        Err(e) => {
            print!("{:#}\n", error_value(&e));
            ExitCode::from(exit_code_for(&e))
        }
    }
}
