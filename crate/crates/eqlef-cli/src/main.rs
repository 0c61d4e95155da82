//! Batch front end for the equivariant Lefschetz library.
//!
//! Exit codes: 0 on success, 1 when a verification finds an exact mismatch,
//! 2 on invalid input.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use eqlef::complex::GComplex;
use eqlef::fundcat::{Analysis, AnalysisOptions};
use eqlef::group::conjugacy_classes_of_subgroups;
use eqlef::subdivision::MapModel;
use eqlef::{burnside, io, lefschetz, splitting};

#[derive(Parser)]
#[command(name = "eqlef", about = "Equivariant Lefschetz invariants of cellular self-maps")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Ring {
    /// Require integral coefficients.
    Z,
    /// Allow rational coefficients.
    Q,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct CommonArgs {
    /// Group file (permutation generators).
    #[arg(long)]
    group: PathBuf,
    /// Complex file (simplices and generator action).
    #[arg(long)]
    complex: PathBuf,
    /// Map file (vertex images on the subdivided complex).
    #[arg(long)]
    map: PathBuf,
    /// Fundamental-group assertion file for free-abelian components.
    #[arg(long)]
    pi1: Option<PathBuf>,
    /// Vertex-order seed; results must not depend on it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Ring::Q)]
    ring: Ring,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print subgroup classes, components, objects, and component dynamics.
    Analyze(CommonArgs),
    /// The generalized Lefschetz invariant from the chain-level traces.
    Lambda(CommonArgs),
    /// The local invariant from fixed-point data.
    LambdaLoc {
        #[command(flatten)]
        common: CommonArgs,
        /// Fixed-point data file.
        #[arg(long)]
        fixed: PathBuf,
    },
    /// Compare both invariants and the character cross-checks exactly.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Fixed-point data file.
        #[arg(long)]
        fixed: PathBuf,
    },
    /// The Burnside-ring Lefschetz class and its mark vector.
    Burnside(CommonArgs),
    /// Component-orbit dynamics: recurrent cycles and transients.
    Split(CommonArgs),
}

fn read(path: &Path) -> eqlef::Result<String> {
    std::fs::read_to_string(path).map_err(|e| {
        eqlef::Error::InvalidInput(format!("cannot read {}: {e}", path.display()))
    })
}

struct Loaded {
    complex: GComplex,
    map: MapModel,
    opts: AnalysisOptions,
}

fn load(common: &CommonArgs) -> eqlef::Result<Loaded> {
    let group = io::group_from_json(&read(&common.group)?)?;
    let complex = io::complex_from_json(&read(&common.complex)?, group)?;
    let map = io::map_from_json(&read(&common.map)?, &complex)?;
    let assertions = match &common.pi1 {
        Some(path) => io::assertions_from_json(&read(path)?)?,
        None => Vec::new(),
    };
    let opts = AnalysisOptions { seed: common.seed, assertions };
    Ok(Loaded { complex, map, opts })
}

fn emit(common: &CommonArgs, value: &Value) {
    match common.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).unwrap()),
        Format::Text => print_text(value, 0),
    }
}

/// Plain indented rendering of a JSON value for the text format.
fn print_text(value: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(m) => {
            for (k, v) in m {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        println!("{pad}{k}:");
                        print_text(v, indent + 1);
                    }
                    _ => println!("{pad}{k}: {}", scalar(v)),
                }
            }
        }
        Value::Array(items) => {
            for v in items {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        println!("{pad}-");
                        print_text(v, indent + 1);
                    }
                    _ => println!("{pad}- {}", scalar(v)),
                }
            }
        }
        _ => println!("{pad}{}", scalar(value)),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn check_ring(common: &CommonArgs, lam: &lefschetz::LambdaElement) -> eqlef::Result<()> {
    if common.ring == Ring::Z && !lam.is_integral() {
        return Err(eqlef::Error::InvalidInput(
            "invariant has non-integral coefficients; rerun with --ring q".into(),
        ));
    }
    Ok(())
}

fn run() -> eqlef::Result<u8> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Analyze(common) => {
            let loaded = load(&common)?;
            let an = Analysis::new(&loaded.complex, &loaded.map, &loaded.opts)?;
            emit(&common, &io::analysis_json(&an));
            Ok(0)
        }
        Cmd::Lambda(common) => {
            let loaded = load(&common)?;
            let an = Analysis::new(&loaded.complex, &loaded.map, &loaded.opts)?;
            let lam = lefschetz::lambda(&an)?;
            check_ring(&common, &lam)?;
            emit(&common, &io::lambda_json(&an, &lam));
            Ok(0)
        }
        Cmd::LambdaLoc { common, fixed } => {
            let loaded = load(&common)?;
            let an = Analysis::new(&loaded.complex, &loaded.map, &loaded.opts)?;
            let data = io::fixed_points_from_json(&read(&fixed)?)?;
            let loc = lefschetz::lambda_local(&an, &data)?;
            check_ring(&common, &loc)?;
            emit(&common, &io::lambda_json(&an, &loc));
            Ok(0)
        }
        Cmd::Verify { common, fixed } => {
            let loaded = load(&common)?;
            let an = Analysis::new(&loaded.complex, &loaded.map, &loaded.opts)?;
            let data = io::fixed_points_from_json(&read(&fixed)?)?;
            let report = lefschetz::verify_fixed_point_theorem(&an, &data)?;
            check_ring(&common, &report.lambda)?;
            emit(&common, &io::verify_json(&an, &report));
            if report.passed() {
                Ok(0)
            } else {
                for (label, ok) in &report.per_object {
                    if !ok {
                        eprintln!("mismatch at object {label}");
                    }
                }
                Ok(1)
            }
        }
        Cmd::Burnside(common) => {
            let loaded = load(&common)?;
            let classes = conjugacy_classes_of_subgroups(&loaded.complex.group)?;
            let l0 =
                lefschetz::lefschetz_burnside_class(&loaded.complex, &loaded.map, &classes)?;
            let marks = burnside::ch0(&loaded.complex.group, &classes, &l0);
            let mut out = BTreeMap::new();
            out.insert("class", io::burnside_json(&classes, &l0));
            out.insert("marks", io::marks_json(&classes, &marks));
            emit(&common, &serde_json::to_value(out).unwrap());
            Ok(0)
        }
        Cmd::Split(common) => {
            let loaded = load(&common)?;
            let an = Analysis::new(&loaded.complex, &loaded.map, &loaded.opts)?;
            let summaries = splitting::split_components(&an);
            emit(&common, &io::split_json(&an, &summaries));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
