//! Command-line front end: root enumeration, recurrence sequences, rigid
//! classification, Hom/Ext of representation files, the orbit-model window
//! tables, mutation walks, and the verification campaigns.
//!
//! Output is byte-stable for a fixed invocation: JSON with sorted keys and
//! no whitespace variation, or tab-separated newline-terminated rows.
//! Exit codes: 0 success (all checks pass), 1 verification failure,
//! 2 input error. Nothing is printed on exit 2 except one diagnostic line
//! on the error stream.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quiverlab::cluster::{ClusterIndec, ClusterModel, ClusterObject, TiltingSet, Window};
use quiverlab::verify::{run_all, Campaign, CampaignConfig};
use quiverlab::{
    ext1_dim, hom_space, kronecker_sequences, positive_real_roots, rigid_indec_classify, Quiver,
    Rep, Report, Status,
};

#[derive(Parser)]
#[command(name = "quiverlab", version, about = "quiver representation laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to a file instead of standard output.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Positive real roots with entries within the bound.
    Roots(RootsArgs),
    /// The two recurrence families of dimension vectors.
    Sequences(SequencesArgs),
    /// Dimension vectors of rigid indecomposables within the bound.
    Rigid(RigidArgs),
    /// Hom and Ext dimensions of two representations read from a file.
    Hom(HomArgs),
    /// Orbit-model window: Hom table and rigidity pattern.
    Cluster(ClusterArgs),
    /// Mutation walk along the standard chain.
    Mutate(MutateArgs),
    /// Verification campaigns.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct RootsArgs {
    /// Degree of the two-vertex quiver.
    #[arg(long, conflicts_with = "input")]
    m: Option<u64>,
    /// Quiver description file (JSON: {"arrows": [[u,v],...], "vertices": n}).
    #[arg(long = "in")]
    input: Option<std::path::PathBuf>,
    #[arg(long, default_value_t = 10)]
    bound: u64,
}

#[derive(Args)]
struct SequencesArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    m: u64,
    #[arg(long, default_value_t = 8)]
    count: usize,
}

#[derive(Args)]
struct RigidArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    m: u64,
    #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(1..))]
    bound: u64,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct HomArgs {
    /// JSON file with fields "x" and "y", each a representation.
    #[arg(long = "in")]
    input: std::path::PathBuf,
    /// Echo the parsed representations back into the output.
    #[arg(long, default_value_t = false)]
    dump: bool,
}

#[derive(Args)]
struct ClusterArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    m: u64,
    #[arg(long, default_value_t = 4)]
    window: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct MutateArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    m: u64,
    /// Number of mutation steps up the chain (and back down).
    #[arg(long, default_value_t = 3)]
    window: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run every campaign.
    #[arg(long, default_value_t = false)]
    all: bool,
    #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(1..))]
    bound: u64,
    #[arg(long, default_value_t = 6)]
    window: i64,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Outcome {
    Ok(String),
    VerificationFailed(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok(text)) => emit(&cli, text),
        Ok(Outcome::VerificationFailed(text)) => {
            let code = emit(&cli, text);
            if code != ExitCode::SUCCESS {
                return code;
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, text: String) -> ExitCode {
    match &cli.out {
        None => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Some(path) => match std::fs::write(path, text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                ExitCode::from(2)
            }
        },
    }
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Roots(a) => roots_cmd(a, cli.format).map(Outcome::Ok),
        Command::Sequences(a) => sequences_cmd(a, cli.format).map(Outcome::Ok),
        Command::Rigid(a) => rigid_cmd(a, cli.format).map(Outcome::Ok),
        Command::Hom(a) => hom_cmd(a, cli.format).map(Outcome::Ok),
        Command::Cluster(a) => cluster_cmd(a, cli.format).map(Outcome::Ok),
        Command::Mutate(a) => mutate_cmd(a, cli.format).map(Outcome::Ok),
        Command::Verify(a) => verify_cmd(a, cli.format),
    }
}

fn err_str<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn load_quiver(a: &RootsArgs) -> Result<Quiver, String> {
    match (&a.m, &a.input) {
        (Some(m), None) => {
            if *m == 0 {
                return Err("m must be at least 1".into());
            }
            Ok(Quiver::kronecker(*m as usize))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            serde_json::from_str(&text).map_err(err_str)
        }
        _ => Err("specify exactly one of --m or --in".into()),
    }
}

fn roots_cmd(a: &RootsArgs, format: Format) -> Result<String, String> {
    let q = load_quiver(a)?;
    let roots = positive_real_roots(&q, a.bound).map_err(err_str)?;
    match format {
        Format::Json => {
            let v = json!({
                "bound": a.bound,
                "quiver": q,
                "roots": roots.iter().map(|d| d.0.clone()).collect::<Vec<_>>(),
            });
            Ok(to_json_line(&v))
        }
        Format::Tsv => {
            let mut out = String::new();
            for d in &roots {
                let cells: Vec<String> = d.0.iter().map(|x| x.to_string()).collect();
                writeln!(out, "{}", cells.join("\t")).unwrap();
            }
            Ok(out)
        }
    }
}

fn sequences_cmd(a: &SequencesArgs, format: Format) -> Result<String, String> {
    let (p, i) = kronecker_sequences(a.m, a.count).map_err(err_str)?;
    match format {
        Format::Json => {
            let v = json!({
                "I": i.iter().map(|d| d.0.clone()).collect::<Vec<_>>(),
                "P": p.iter().map(|d| d.0.clone()).collect::<Vec<_>>(),
                "count": a.count,
                "m": a.m,
            });
            Ok(to_json_line(&v))
        }
        Format::Tsv => {
            let mut out = String::new();
            let row = |label: &str, seq: &[quiverlab::DimVector]| {
                let cells: Vec<String> = seq.iter().map(|d| d.to_string()).collect();
                format!("{label}\t{}", cells.join("\t"))
            };
            writeln!(out, "{}", row("I", &i)).unwrap();
            writeln!(out, "{}", row("P", &p)).unwrap();
            Ok(out)
        }
    }
}

fn rigid_cmd(a: &RigidArgs, format: Format) -> Result<String, String> {
    let vectors = rigid_indec_classify(a.m, a.bound, a.trials, a.seed).map_err(err_str)?;
    match format {
        Format::Json => {
            let v = json!({
                "bound": a.bound,
                "m": a.m,
                "seed": a.seed,
                "vectors": vectors.iter().map(|d| d.0.clone()).collect::<Vec<_>>(),
            });
            Ok(to_json_line(&v))
        }
        Format::Tsv => {
            let mut out = String::new();
            for d in &vectors {
                let cells: Vec<String> = d.0.iter().map(|x| x.to_string()).collect();
                writeln!(out, "{}", cells.join("\t")).unwrap();
            }
            Ok(out)
        }
    }
}

fn hom_cmd(a: &HomArgs, format: Format) -> Result<String, String> {
    #[derive(serde::Deserialize)]
    struct Pair {
        x: Rep,
        y: Rep,
    }
    let text = std::fs::read_to_string(&a.input)
        .map_err(|e| format!("cannot read {}: {e}", a.input.display()))?;
    let pair: Pair = serde_json::from_str(&text).map_err(err_str)?;
    let hom = hom_space(&pair.x, &pair.y).map_err(err_str)?.dim();
    let ext = ext1_dim(&pair.x, &pair.y).map_err(err_str)?;
    match format {
        Format::Json => {
            let mut v = json!({ "ext": ext, "hom": hom });
            if a.dump {
                v["x"] = serde_json::to_value(&pair.x).map_err(err_str)?;
                v["y"] = serde_json::to_value(&pair.y).map_err(err_str)?;
            }
            Ok(to_json_line(&v))
        }
        Format::Tsv => Ok(format!("ext\t{ext}\nhom\t{hom}\n")),
    }
}

fn cluster_cmd(a: &ClusterArgs, format: Format) -> Result<String, String> {
    let model = ClusterModel::new(a.m, a.seed).map_err(err_str)?;
    let w = a.window;
    let mut hom_rows: Vec<(i64, i64, u64)> = Vec::new();
    let mut rigid_pairs: Vec<(i64, i64)> = Vec::new();
    for i in -w..=w {
        for j in -w..=w {
            let dim = model
                .hom_dim(&model.standard(i), &model.standard(j))
                .map_err(err_str)?;
            hom_rows.push((i, j, dim));
            if i < j {
                let pair = ClusterObject::new(vec![model.standard(i), model.standard(j)]);
                if model.is_2_rigid(&pair).map_err(err_str)? {
                    rigid_pairs.push((i, j));
                }
            }
        }
    }
    match format {
        Format::Json => {
            let v = json!({
                "hom": hom_rows.iter().map(|(i, j, d)| json!([i, j, d])).collect::<Vec<_>>(),
                "m": a.m,
                "rigid_pairs": rigid_pairs.iter().map(|(i, j)| json!([i, j])).collect::<Vec<_>>(),
                "window": w,
            });
            Ok(to_json_line(&v))
        }
        Format::Tsv => {
            let mut out = String::new();
            for (i, j, d) in &hom_rows {
                writeln!(out, "hom\t{i}\t{j}\t{d}").unwrap();
            }
            for (i, j) in &rigid_pairs {
                writeln!(out, "rigid-pair\t{i}\t{j}").unwrap();
            }
            Ok(out)
        }
    }
}

fn mutate_cmd(a: &MutateArgs, format: Format) -> Result<String, String> {
    let model = ClusterModel::new(a.m, a.seed).map_err(err_str)?;
    let win = Window {
        index_radius: a.window + 2,
        ..Window::default()
    };
    let label = |t: &TiltingSet| -> Vec<i64> {
        t.indecs()
            .iter()
            .map(|x| match x {
                ClusterIndec::Chain(j) => *j,
                ClusterIndec::Module(_) => i64::MIN,
            })
            .collect()
    };
    let mut steps: Vec<(Vec<i64>, i64, Vec<i64>)> = Vec::new();
    let mut current = model.standard_pair(0);
    for k in 0..a.window {
        let next = model
            .mutate(&current, &model.standard(k), &win)
            .map_err(err_str)?;
        steps.push((label(&current), k, label(&next)));
        current = next;
    }
    for k in (0..a.window).rev() {
        let next = model
            .mutate(&current, &model.standard(k + 2), &win)
            .map_err(err_str)?;
        steps.push((label(&current), k + 2, label(&next)));
        current = next;
    }
    let returned = current == model.standard_pair(0);
    match format {
        Format::Json => {
            let v = json!({
                "m": a.m,
                "returned": returned,
                "steps": steps
                    .iter()
                    .map(|(from, at, to)| json!({"at": at, "from": from, "to": to}))
                    .collect::<Vec<_>>(),
            });
            Ok(to_json_line(&v))
        }
        Format::Tsv => {
            let mut out = String::new();
            for (from, at, to) in &steps {
                writeln!(
                    out,
                    "step\t{{{}}}\tM({at})\t{{{}}}",
                    from.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                    to.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                )
                .unwrap();
            }
            writeln!(out, "returned\t{returned}").unwrap();
            Ok(out)
        }
    }
}

fn verify_cmd(a: &VerifyArgs, format: Format) -> Result<Outcome, String> {
    let campaigns = if a.all {
        vec![
            Campaign::ClassificationDegree3,
            Campaign::ClassificationDegree6,
            Campaign::KacKronecker3,
            Campaign::KacLinear2,
            Campaign::KacPoint,
        ]
    } else {
        Vec::new()
    };
    let config = CampaignConfig {
        bound: a.bound,
        window: a.window,
        trials: a.trials,
        seed: a.seed,
        campaigns,
    };
    let reports = run_all(&config).map_err(err_str)?;
    let all_pass = reports.iter().all(Report::passed);
    let text = match format {
        Format::Json => {
            let v = serde_json::to_value(&reports).map_err(err_str)?;
            to_json_line(&v)
        }
        Format::Tsv => {
            let mut out = String::new();
            for r in &reports {
                let status = match r.status {
                    Status::Pass => "pass",
                    Status::Fail => "fail",
                    Status::Skipped => "skipped",
                };
                writeln!(out, "report\t{}\t{status}\t{}", r.claim, r.ms).unwrap();
                for c in r.checks.iter().filter(|c| !c.ok) {
                    writeln!(
                        out,
                        "counterexample\t{}\t{}\t{}\texpected\t{}\tgot\t{}",
                        r.claim, c.name, c.inputs, c.expected, c.got
                    )
                    .unwrap();
                }
            }
            out
        }
    };
    if all_pass {
        Ok(Outcome::Ok(text))
    } else {
        Ok(Outcome::VerificationFailed(text))
    }
}

fn to_json_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable value");
    s.push('\n');
    s
}
