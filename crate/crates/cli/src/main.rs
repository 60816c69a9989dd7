//! `bimodal`: verify, profile, classify, construct and enumerate bimodal
//! collections.
//!
//! Exit status is 0 on success, 1 when a collection is not bimodal or a
//! reference example does not replay, and 2 on input or budget errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bimodal_core::construct::{
    construct_cosets, construct_group_partition, construct_mixed_partition, construct_r1, construct_star, shift,
    subdivide,
};
use bimodal_core::io::{self, CosetsDoc, PartitionDoc, R1Doc, ScopeDoc, ShiftDoc, StarDoc, SubdivideDoc};
use bimodal_core::{
    classify, difference_profile, enumerate_bimodal, golden, is_bimodal_by_definition, is_bimodal_by_structure,
    ClassifyError, RunOptions, SetCollection,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bimodal", version, about = "Bimodal collections of disjoint subsets of finite abelian groups")]
struct Cli {
    #[command(flatten)]
    format: FormatArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(multiple = false)]
struct FormatArgs {
    /// Emit JSON documents.
    #[arg(long, global = true)]
    json: bool,
    /// Emit human-readable text (the default).
    #[arg(long, global = true)]
    text: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run both checkers and report a witness on failure.
    Verify { file: PathBuf },
    /// Print the external difference counts N_i(delta).
    Profile { file: PathBuf },
    /// Print the structural classification of a bimodal collection.
    Classify { file: PathBuf },
    /// Build a collection from a construction spec; always emits JSON.
    Construct { kind: Kind, specfile: PathBuf },
    /// Enumerate every bimodal partition in a scope.
    Enumerate {
        scopefile: PathBuf,
        /// Candidate budget, overriding the scope file.
        #[arg(long)]
        budget: Option<u128>,
        /// Count translates once (`shift`) or separately (`none`).
        #[arg(long, value_parser = ["shift", "none"])]
        dedupe: Option<String>,
        /// Include every collection found in the JSON census.
        #[arg(long)]
        materialize: bool,
        /// Worker threads (defaults to all cores).
        #[arg(long)]
        workers: Option<usize>,
        /// Also write each collection found as one JSON line to this file.
        #[arg(long)]
        stream: Option<PathBuf>,
    },
    /// Replay the reference examples (all of them, or one by name).
    Examples { name: Option<String> },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Cosets,
    GroupPartition,
    MixedPartition,
    Shift,
    Subdivide,
    Star,
    R1,
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl std::fmt::Display) -> Failure {
    Failure { code: 2, message: message.to_string() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn parse_doc<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| input_error(format!("{}: malformed document: {e}", path.display())))
}

fn load_collection(path: &Path) -> Result<SetCollection, Failure> {
    io::parse_collection(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.format.json;
    let mut out = std::io::stdout().lock();
    match run(cli.command, json, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let _ = out.flush();
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command, json: bool, out: &mut impl Write) -> Result<u8, Failure> {
    let mut emit = |s: String| out.write_all(s.as_bytes()).map_err(input_error);
    match command {
        Command::Verify { file } => {
            let c = load_collection(&file)?;
            let (d, s) = (is_bimodal_by_definition(&c), is_bimodal_by_structure(&c));
            emit(if json { io::verdicts_json(&c, &d, &s) } else { io::verdicts_text(&c, &d, &s) })?;
            Ok(if d.is_bimodal() && s.is_bimodal() { 0 } else { 1 })
        }
        Command::Profile { file } => {
            let c = load_collection(&file)?;
            let p = difference_profile(&c);
            emit(if json { io::profile_json(&c, &p) } else { io::profile_text(&c, &p) })?;
            Ok(0)
        }
        Command::Classify { file } => {
            let c = load_collection(&file)?;
            match classify(&c) {
                Ok(rep) => {
                    emit(if json { io::report_json(&c, &rep) } else { io::report_text(&c, &rep) })?;
                    Ok(0)
                }
                Err(ClassifyError::NotBimodal(w)) => {
                    Err(Failure { code: 1, message: format!("not bimodal: {}", w.describe(c.group())) })
                }
                Err(e) => Err(Failure { code: 1, message: e.to_string() }),
            }
        }
        Command::Construct { kind, specfile } => {
            let c = construct(kind, &specfile)?;
            emit(io::emit_collection(&c))?;
            Ok(0)
        }
        Command::Enumerate { scopefile, budget, dedupe, materialize, workers, stream } => {
            let doc: ScopeDoc = parse_doc(&scopefile)?;
            let mut scope = doc.resolve().map_err(input_error)?;
            if let Some(b) = budget {
                scope.budget = b;
            }
            if let Some(d) = dedupe {
                scope.dedupe = io::parse_dedupe(&d).map_err(input_error)?;
            }
            let opts = RunOptions { workers, materialize: materialize || stream.is_some() };
            let mut res = enumerate_bimodal(&scope, opts).map_err(input_error)?;
            if let Some(path) = stream {
                let lines: String = res.collections.iter().flatten().map(io::emit_collection).collect();
                fs::write(&path, lines).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
                if !materialize {
                    res.collections = None;
                }
            }
            emit(if json { io::census_json(&res) } else { io::census_text(&res) })?;
            Ok(0)
        }
        Command::Examples { name } => {
            let examples = match name {
                None => golden::all(),
                Some(n) => vec![golden::by_name(&n).ok_or_else(|| {
                    let names: Vec<&str> = golden::all().iter().map(|g| g.name).collect();
                    input_error(format!("unknown example {n:?}; known: {}", names.join(", ")))
                })?],
            };
            let mut failed = false;
            for ex in &examples {
                let result = ex.replay();
                failed |= result.is_err();
                let c = &ex.collection;
                let p = difference_profile(c);
                if json {
                    let problems = result.err().unwrap_or_default();
                    let doc = serde_json::json!({
                        "name": ex.name,
                        "ok": problems.is_empty(),
                        "problems": problems,
                        "bimodal": ex.expected.bimodal,
                        "case": ex.expected.case.name(),
                        "r": ex.expected.r,
                        "collection": serde_json::from_str::<serde_json::Value>(&io::emit_collection(c))
                            .expect("emitted collections are JSON"),
                        "profile": serde_json::from_str::<serde_json::Value>(&io::profile_json(c, &p))
                            .expect("emitted profiles are JSON"),
                    });
                    emit(format!("{doc}\n"))?;
                } else {
                    let status = match &result {
                        Ok(()) => "ok".to_string(),
                        Err(problems) => format!("MISMATCH: {}", problems.join("; ")),
                    };
                    emit(format!(
                        "{}: {} ({})\n  {}\n  bimodal, case {}, r = {}\n{}",
                        ex.name,
                        status,
                        ex.description,
                        c,
                        ex.expected.case,
                        ex.expected.r,
                        io::profile_text(c, &p)
                    ))?;
                }
            }
            Ok(u8::from(failed))
        }
    }
}

fn construct(kind: Kind, path: &Path) -> Result<SetCollection, Failure> {
    let built = match kind {
        Kind::Cosets => {
            let (h, reps) = parse_doc::<CosetsDoc>(path)?.resolve().map_err(input_error)?;
            construct_cosets(&h, &reps)
        }
        Kind::GroupPartition => {
            let (g, subs) = parse_doc::<PartitionDoc>(path)?.resolve().map_err(input_error)?;
            construct_group_partition(&g, &subs)
        }
        Kind::MixedPartition => {
            let (g, subs) = parse_doc::<PartitionDoc>(path)?.resolve().map_err(input_error)?;
            construct_mixed_partition(&g, &subs)
        }
        Kind::Shift => {
            let (c, g) = parse_doc::<ShiftDoc>(path)?.resolve().map_err(input_error)?;
            shift(&c, g)
        }
        Kind::Subdivide => {
            let (c, i, parts) = parse_doc::<SubdivideDoc>(path)?.resolve().map_err(input_error)?;
            subdivide(&c, i, &parts)
        }
        Kind::Star => construct_star(&parse_doc::<StarDoc>(path)?.resolve().map_err(input_error)?),
        Kind::R1 => {
            let spec = parse_doc::<R1Doc>(path)?.resolve().map_err(input_error)?;
            construct_r1(&spec.group, &spec.h1, &spec.a1, &spec.tiling, spec.subgroup_cap)
        }
    };
    built.map_err(input_error)
}
