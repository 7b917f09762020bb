//! `fdecomp`: fundamental decompositions and transforms of reaction networks from the command line.

mod report;

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fdecomp::decomposition::{
    analyze_partition, bounds_report, default_orientation, f_decomposition_with, linkage_partition,
    multistationarity_precheck, p_decomposition, parse_partition, species_partition, Orientation, PartitionKind,
    ReactionPartition,
};
use fdecomp::generators::preset;
use fdecomp::invariants::{check_invariants, select};
use fdecomp::kinetics::{cf_subsets, classify_plk, render_kinetics, PowerLawKinetics};
use fdecomp::network::render_network;
use fdecomp::transform::{transform, verify_transform, TransformMethod};
use fdecomp::{parse_system, ReactionNetwork};
use serde::Serialize;

use report::{
    AnalysisReport, CheckReport, FileCheck, KineticsSummary, NetworkSummary, TransformReport, SCHEMA_VERSION,
};

#[derive(Parser)]
#[command(name = "fdecomp", version, about = "Fundamental decompositions of chemical reaction networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Network statistics, kinetics class, F-decomposition, property flags and bounds.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Analyze a chosen decomposition under a chosen orientation.
    Decompose {
        #[command(flatten)]
        input: Input,
        /// `auto` or a comma-separated list of reaction ids, one per reversible pair plus every irreversible reaction.
        #[arg(long, default_value = "auto")]
        orientation: String,
        /// `f`, `p`, `linkage`, `species`, or a file with one class of reaction ids per line.
        #[arg(long, default_value = "f")]
        partition: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Rewrite a power-law system into a reactant-determined one.
    Transform {
        #[command(flatten)]
        input: Input,
        /// `cf-rm+` or `cf-ri+`.
        #[arg(long, default_value = "cf-ri+")]
        method: TransformMethod,
        /// Run the verification checks; exit 1 if any fails.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Evaluate invariants on a network file, a directory of network files, or a preset.
    Check {
        #[command(flatten)]
        input: Input,
        /// `all` or a comma-separated list of invariant names.
        #[arg(long, default_value = "all")]
        invariants: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
struct Input {
    /// Network file in the text format, or `-` for stdin.
    #[arg(conflicts_with = "preset")]
    file: Option<PathBuf>,
    /// Built-in example, e.g. `schmitz` or `pd-distributive:3`.
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Errors that map to exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

struct System {
    label: String,
    network: ReactionNetwork,
    kinetics: Option<PowerLawKinetics>,
}

fn load_text(label: &str, text: &str) -> Result<System, InputError> {
    let (network, kinetics) = parse_system(text).map_err(|e| InputError(format!("{label}: {e}")))?;
    Ok(System { label: label.to_string(), network, kinetics })
}

fn load(input: &Input) -> Result<System, InputError> {
    match (&input.file, &input.preset) {
        (_, Some(name)) => {
            let p = preset(name)?;
            Ok(System { label: format!("preset:{name}"), network: p.network, kinetics: p.kinetics })
        }
        (Some(path), None) if path == Path::new("-") => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            load_text("<stdin>", &text)
        }
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            load_text(&path.display().to_string(), &text)
        }
        (None, None) => Err(InputError("give a network file or --preset".into())),
    }
}

fn kinetics_summary(net: &ReactionNetwork, k: &PowerLawKinetics) -> KineticsSummary {
    let parts = cf_subsets(net, k);
    KineticsSummary {
        classification: classify_plk(net, k),
        nf_nodes: parts.nf_nodes().iter().map(|&c| net.render_complex(&net.complexes()[c])).collect(),
    }
}

fn orientation(net: &ReactionNetwork, spec: &str) -> Result<Orientation, InputError> {
    if spec == "auto" {
        return Ok(default_orientation(net));
    }
    let ids: Vec<&str> = spec.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
    Ok(Orientation::from_ids(net, &ids)?)
}

fn partition(net: &ReactionNetwork, o: &Orientation, spec: &str) -> Result<ReactionPartition, InputError> {
    Ok(match spec {
        "f" => f_decomposition_with(net, o),
        "p" => p_decomposition(net, o),
        "linkage" => linkage_partition(net),
        "species" => species_partition(net)?,
        path => {
            let text = fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))?;
            parse_partition(&text, net, PartitionKind::User).map_err(|e| InputError(format!("{path}: {e}")))?
        }
    })
}

fn analysis(
    command: &'static str,
    sys: &System,
    o: &Orientation,
    p: &ReactionPartition,
) -> Result<AnalysisReport, InputError> {
    let net = &sys.network;
    let decomposition = analyze_partition(net, p)?;
    let bounds = bounds_report(net, &decomposition);
    let precheck = match &sys.kinetics {
        Some(k) => multistationarity_precheck(net, k).ok(),
        None => multistationarity_precheck(net, &PowerLawKinetics::mass_action(net)).ok(),
    };
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        command,
        input: sys.label.clone(),
        network: NetworkSummary::of(net),
        kinetics: sys.kinetics.as_ref().map(|k| kinetics_summary(net, k)),
        orientation: o.ids(net),
        decomposition,
        bounds,
        precheck,
    })
}

fn emit<T: Serialize>(value: &T, format: Format) -> Result<(), InputError> {
    let json = serde_json::to_value(value)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&json)?),
        Format::Text => print!("{}", report::render_text(&json)),
    }
    Ok(())
}

fn check_one(label: String, sys: &System, names: &[&'static str]) -> FileCheck {
    let outcomes = check_invariants(&sys.network, sys.kinetics.as_ref(), names);
    FileCheck { input: label, passed: outcomes.iter().all(|o| o.passed), outcomes }
}

fn run(cli: Cli) -> Result<ExitCode, InputError> {
    match cli.command {
        Command::Analyze { input, format } => {
            let sys = load(&input)?;
            let o = default_orientation(&sys.network);
            let p = f_decomposition_with(&sys.network, &o);
            emit(&analysis("analyze", &sys, &o, &p)?, format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { input, orientation: ospec, partition: pspec, format } => {
            let sys = load(&input)?;
            let o = orientation(&sys.network, &ospec)?;
            let p = partition(&sys.network, &o, &pspec)?;
            emit(&analysis("decompose", &sys, &o, &p)?, format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Transform { input, method, verify, format } => {
            let sys = load(&input)?;
            let net = &sys.network;
            let k = sys.kinetics.as_ref().ok_or_else(|| InputError(format!("{}: transform needs a kinetics block", sys.label)))?;
            let result = transform(net, k, method);
            let verification = verify.then(|| verify_transform(net, k, &result));
            let failed = verification.as_ref().is_some_and(|v| !v.passed());
            let out = &result.network;
            let report = TransformReport {
                schema_version: SCHEMA_VERSION,
                command: "transform",
                input: sys.label.clone(),
                method,
                modified: result.modified.clone(),
                added_complexes: result.added_complexes.iter().map(|c| out.render_complex(c)).collect(),
                input_kinetics: kinetics_summary(net, k),
                output_kinetics: kinetics_summary(out, &result.kinetics),
                output: format!("{}kinetics:\n{}", render_network(out), render_kinetics(out, &result.kinetics)),
                verification,
            };
            emit(&report, format)?;
            Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Check { input, invariants, format } => {
            let requested: Option<Vec<String>> = (invariants != "all")
                .then(|| invariants.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect());
            let names = select(requested.as_deref())?;
            let mut files = Vec::new();
            match &input.file {
                Some(dir) if input.preset.is_none() && dir.is_dir() => {
                    let mut paths: Vec<PathBuf> = fs::read_dir(dir)?
                        .filter_map(|e| e.ok().map(|e| e.path()))
                        .filter(|p| p.is_file())
                        .collect();
                    paths.sort();
                    for path in paths {
                        let text = fs::read_to_string(&path)?;
                        let sys = load_text(&path.display().to_string(), &text)?;
                        files.push(check_one(sys.label.clone(), &sys, &names));
                    }
                }
                _ => {
                    let sys = load(&input)?;
                    files.push(check_one(sys.label.clone(), &sys, &names));
                }
            }
            let report = CheckReport {
                schema_version: SCHEMA_VERSION,
                command: "check",
                invariants: names,
                passed: files.iter().all(|f| f.passed),
                files,
            };
            emit(&report, format)?;
            Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
