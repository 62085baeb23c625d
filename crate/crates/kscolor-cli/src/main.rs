//! Command-line front end for the kscolor workbench.
//!
//! Exit codes separate mathematics from plumbing: 0 is a positive result
//! (COLORABLE, or a finite-precision demonstration that went through), 2 a
//! negative mathematical verdict (UNCOLORABLE, or a demonstration that
//! found no witness for some hidden state), and 1 an operational error
//! (bad flags, unknown catalog, unreadable file). Identical invocations
//! with identical seeds produce byte-identical JSON.

use std::error::Error;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kscolor::bipartite::{discontinuity_stats, run_fwt_pipeline, stats_to_csv, StatsRow};
use kscolor::catalog;
use kscolor::geometry::{projector_distance, DirectionSet, DirectionSetFile};
use kscolor::rational_gen::{perturb_frames, rational_frames, PerturbationPlanFile};
use kscolor::solver::{export_cnf, solve, Coloring, ColoringFile, SolveReport, Verdict};

const SQRT2: f64 = std::f64::consts::SQRT_2;

#[derive(Parser)]
#[command(
    name = "kscolor",
    version,
    about = "Exact workbench for Kochen-Specker colorability and the finite-precision loophole"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Norm {
    /// Operator norm: distance of two rays is the sine of their angle.
    Operator,
    /// Frobenius norm: sqrt(2) times the operator distance.
    Frobenius,
}

impl Norm {
    /// Converts a user-supplied distance into operator-norm units.
    fn to_operator(self, d: f64) -> f64 {
        match self {
            Norm::Operator => d,
            Norm::Frobenius => d / SQRT2,
        }
    }

    /// Converts an operator-norm distance into the user's units.
    fn from_operator(self, d: f64) -> f64 {
        match self {
            Norm::Operator => d,
            Norm::Frobenius => d * SQRT2,
        }
    }
}

#[derive(Args)]
struct SetArg {
    /// Built-in catalog name (peres33, ck31, bub33).
    set: Option<String>,
    /// Load the direction set from a JSON file instead of a catalog.
    #[arg(long, conflicts_with = "set", value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    /// Stdout format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the command's artifact to this path.
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide colorability and report a witness coloring or a refutation.
    Verify {
        #[command(flatten)]
        set: SetArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Generate the rational direction set of all Pythagorean frames up to a height.
    GenRational {
        /// Largest hypotenuse of the primitive Pythagorean quadruples used.
        #[arg(long, value_name = "N")]
        max_n: i64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Rotate each frame by an independent small exact rotation.
    Perturb {
        #[command(flatten)]
        set: SetArg,
        /// Per-direction distance bound (strict) in the chosen norm.
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Norm::Operator)]
        norm: Norm,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the finite-precision loophole demonstration end to end.
    Fwt {
        #[command(flatten)]
        set: SetArg,
        /// Perturbation bound; witnesses are scanned at twice this radius.
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Norm::Operator)]
        norm: Norm,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Export the coloring constraints as DIMACS CNF.
    Cnf {
        #[command(flatten)]
        set: SetArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Tabulate how often a coloring separates nearby direction pairs.
    Stats {
        #[command(flatten)]
        set: SetArg,
        /// Coloring file, as written by verify -o on a colorable set.
        #[arg(long, value_name = "PATH")]
        coloring: PathBuf,
        /// Comma-separated scan radii in the chosen norm.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "0.01,0.02,0.04,0.1,0.25,0.5,1,2"
        )]
        radii: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Norm::Operator)]
        norm: Norm,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are not failures; genuine usage errors
            // exit 1 because 2 is reserved for negative verdicts.
            let ok = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return ExitCode::from(if ok { 0 } else { 1 });
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// Renders an error with its full source chain.
fn chain(err: &dyn Error) -> String {
    let mut msg = err.to_string();
    let mut cur = err.source();
    while let Some(src) = cur {
        msg.push_str(": ");
        msg.push_str(&src.to_string());
        cur = src.source();
    }
    msg
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Verify { set, out } => cmd_verify(&set, &out),
        Command::GenRational { max_n, out } => cmd_gen_rational(max_n, &out),
        Command::Perturb {
            set,
            epsilon,
            seed,
            norm,
            out,
        } => cmd_perturb(&set, epsilon, seed, norm, &out),
        Command::Fwt {
            set,
            epsilon,
            seed,
            norm,
            out,
        } => cmd_fwt(&set, epsilon, seed, norm, &out),
        Command::Cnf { set, out } => cmd_cnf(&set, &out),
        Command::Stats {
            set,
            coloring,
            radii,
            norm,
            out,
        } => cmd_stats(&set, &coloring, &radii, norm, &out),
    }
}

/// Resolves the positional catalog name or --file path into a set.
fn resolve_set(arg: &SetArg) -> Result<(String, DirectionSet), String> {
    if let Some(path) = &arg.file {
        let text = fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let file: DirectionSetFile = serde_json::from_str(&text)
            .map_err(|e| format!("cannot parse {}: {e}", path.display()))?;
        let loaded = file.into_set().map_err(|e| chain(&e))?;
        for warning in &loaded.warnings {
            eprintln!("warning: {warning}");
        }
        return Ok((loaded.name, loaded.set));
    }
    if let Some(name) = &arg.set {
        let entry = catalog::builtin(name).map_err(|e| chain(&e))?;
        return Ok((entry.name, entry.directions));
    }
    Err("give a catalog name or --file PATH (see --help)".to_string())
}

fn write_artifact(path: &PathBuf, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable report");
    text.push('\n');
    text
}

#[derive(Serialize)]
struct VerifyDoc {
    set: String,
    points: usize,
    edges: usize,
    frames: usize,
    verdict: String,
    nodes: u64,
    propagations: u64,
    witness: Option<Vec<u8>>,
}

fn verify_doc(name: &str, ds: &DirectionSet, report: &SolveReport) -> VerifyDoc {
    VerifyDoc {
        set: name.to_string(),
        points: ds.len(),
        edges: ds.ortho_edges().len(),
        frames: ds.frames().len(),
        verdict: report.verdict.to_string(),
        nodes: report.stats.nodes,
        propagations: report.stats.propagations,
        witness: report.witness.as_ref().map(|c| c.values().to_vec()),
    }
}

fn cmd_verify(set: &SetArg, out: &OutputArgs) -> Result<ExitCode, String> {
    let (name, ds) = resolve_set(set)?;
    let report = solve(&ds);
    let doc = verify_doc(&name, &ds, &report);
    match out.format {
        Format::Text => {
            println!(
                "set {name}: {} points, {} edges, {} frames",
                doc.points, doc.edges, doc.frames
            );
            println!("verdict: {}", doc.verdict);
            println!(
                "nodes: {}, propagations: {}, wall: {:?}",
                doc.nodes, doc.propagations, report.stats.wall
            );
            if let Some(witness) = &doc.witness {
                let rendered: String =
                    witness.iter().map(|v| char::from(b'0' + v)).collect();
                println!("witness: {rendered}");
            }
        }
        Format::Json => print!("{}", to_pretty_json(&doc)),
        Format::Csv => {
            println!("set,points,edges,frames,verdict,nodes,propagations");
            println!(
                "{name},{},{},{},{},{},{}",
                doc.points, doc.edges, doc.frames, doc.verdict, doc.nodes, doc.propagations
            );
        }
    }
    if let Some(path) = &out.output {
        // A witness coloring is the artifact of a positive verdict; stats
        // accepts it back. A refutation has no witness, so the artifact is
        // the report itself.
        let artifact = match &report.witness {
            Some(witness) => to_pretty_json(&witness.to_file(&name)),
            None => to_pretty_json(&doc),
        };
        write_artifact(path, &artifact)?;
    }
    Ok(match report.verdict {
        Verdict::Colorable => ExitCode::from(0),
        Verdict::Uncolorable => ExitCode::from(2),
    })
}

fn cmd_gen_rational(max_n: i64, out: &OutputArgs) -> Result<ExitCode, String> {
    let ds = rational_frames(max_n).map_err(|e| chain(&e))?;
    let name = format!("rational-{max_n}");
    let doc = ds.to_file(&name);
    match out.format {
        Format::Text => println!(
            "{name}: {} directions, {} orthogonal pairs, {} frames",
            ds.len(),
            ds.ortho_edges().len(),
            ds.frames().len()
        ),
        Format::Json => print!("{}", to_pretty_json(&doc)),
        Format::Csv => return Err("gen-rational has no CSV form; use json".to_string()),
    }
    if let Some(path) = &out.output {
        write_artifact(path, &to_pretty_json(&doc))?;
    }
    Ok(ExitCode::from(0))
}

#[derive(Serialize)]
struct PerturbDoc {
    plan: PerturbationPlanFile,
    result: DirectionSetFile,
}

fn cmd_perturb(
    set: &SetArg,
    epsilon: f64,
    seed: u64,
    norm: Norm,
    out: &OutputArgs,
) -> Result<ExitCode, String> {
    let (name, ds) = resolve_set(set)?;
    let plan = perturb_frames(&ds, norm.to_operator(epsilon), seed).map_err(|e| chain(&e))?;
    let result_name = format!("{name}-perturbed-{seed}");
    let doc = PerturbDoc {
        plan: plan.to_file(&name),
        result: plan.result.to_file(&result_name),
    };
    match out.format {
        Format::Text => {
            let max_move = plan
                .provenance
                .iter()
                .enumerate()
                .map(|(i, &(frame, slot))| {
                    let source = ds.point(ds.frames()[frame][slot]);
                    projector_distance(plan.result.point(i), source)
                })
                .fold(0.0f64, f64::max);
            println!(
                "{result_name}: {} points, {} orthogonal pairs, {} frames (totally incompatible)",
                plan.result.len(),
                plan.result.ortho_edges().len(),
                plan.result.frames().len()
            );
            println!(
                "largest direction move: {} (bound {epsilon}, {} norm)",
                norm.from_operator(max_move),
                match norm {
                    Norm::Operator => "operator",
                    Norm::Frobenius => "frobenius",
                }
            );
        }
        Format::Json => print!("{}", to_pretty_json(&doc)),
        Format::Csv => return Err("perturb has no CSV form; use json".to_string()),
    }
    if let Some(path) = &out.output {
        write_artifact(path, &to_pretty_json(&doc))?;
    }
    Ok(ExitCode::from(0))
}

fn cmd_fwt(
    set: &SetArg,
    epsilon: f64,
    seed: u64,
    norm: Norm,
    out: &OutputArgs,
) -> Result<ExitCode, String> {
    let (name, ds) = resolve_set(set)?;
    let mut report =
        run_fwt_pipeline(&ds, &name, norm.to_operator(epsilon), seed).map_err(|e| chain(&e))?;
    // Rescale the report into the user's units.
    report.epsilon = epsilon;
    report.radius = 2.0 * epsilon;
    for witness in &mut report.witnesses {
        witness.distance = norm.from_operator(witness.distance);
    }
    match out.format {
        Format::Text => {
            println!(
                "fwt {name}: epsilon {epsilon}, seed {seed} (sides {} / {})",
                report.seed_a, report.seed_b
            );
            println!(
                "exact-consistency violations: {}",
                report.nature_violations
            );
            println!(
                "hidden states: {}, witnesses per state: {:?}",
                report.hidden_states, report.witnesses_per_state
            );
            if let Some(first) = report.witnesses.first() {
                println!(
                    "closest witness: state {} frames {}/{} slots {}/{} distance {} values {}-{}",
                    first.z,
                    first.a_frame,
                    first.b_frame,
                    first.i,
                    first.j,
                    first.distance,
                    first.value_a,
                    first.value_b
                );
            }
            println!(
                "finite-precision demonstration: {}",
                if report.passed { "PASSED" } else { "FAILED" }
            );
        }
        Format::Json => print!("{}", to_pretty_json(&report)),
        Format::Csv => {
            println!("z,a_frame,i,b_frame,j,distance,value_a,value_b");
            for w in &report.witnesses {
                println!(
                    "{},{},{},{},{},{},{},{}",
                    w.z, w.a_frame, w.i, w.b_frame, w.j, w.distance, w.value_a, w.value_b
                );
            }
        }
    }
    if let Some(path) = &out.output {
        write_artifact(path, &to_pretty_json(&report))?;
    }
    Ok(ExitCode::from(if report.passed { 0 } else { 2 }))
}

fn cmd_cnf(set: &SetArg, out: &OutputArgs) -> Result<ExitCode, String> {
    let (name, ds) = resolve_set(set)?;
    let cnf = export_cnf(&ds, &name);
    match &out.output {
        Some(path) => write_artifact(path, &cnf)?,
        None => print!("{cnf}"),
    }
    Ok(ExitCode::from(0))
}

#[derive(Serialize)]
struct StatsRowDoc {
    radius: f64,
    pairs: u64,
    disagreements: u64,
    fraction: f64,
}

fn cmd_stats(
    set: &SetArg,
    coloring_path: &PathBuf,
    radii: &[f64],
    norm: Norm,
    out: &OutputArgs,
) -> Result<ExitCode, String> {
    let (name, ds) = resolve_set(set)?;
    let text = fs::read_to_string(coloring_path)
        .map_err(|e| format!("cannot read {}: {e}", coloring_path.display()))?;
    let file: ColoringFile = serde_json::from_str(&text)
        .map_err(|e| format!("cannot parse {}: {e}", coloring_path.display()))?;
    if file.set != name {
        eprintln!(
            "warning: coloring was recorded for set {}, applying it to {name}",
            file.set
        );
    }
    let coloring: Coloring = file.into_coloring().map_err(|e| chain(&e))?;
    let operator_radii: Vec<f64> = radii.iter().map(|&r| norm.to_operator(r)).collect();
    let mut rows = discontinuity_stats(&ds, &coloring, &operator_radii).map_err(|e| chain(&e))?;
    // Echo the radii in the units the user gave them.
    for (row, &radius) in rows.iter_mut().zip(radii) {
        row.radius = radius;
    }
    match out.format {
        Format::Text => {
            for StatsRow {
                radius,
                pairs,
                disagreements,
                fraction,
            } in &rows
            {
                println!(
                    "radius {radius}: {pairs} pairs within, {disagreements} disagreeing ({:.1}%)",
                    fraction * 100.0
                );
            }
        }
        Format::Json => {
            let docs: Vec<StatsRowDoc> = rows
                .iter()
                .map(|r| StatsRowDoc {
                    radius: r.radius,
                    pairs: r.pairs,
                    disagreements: r.disagreements,
                    fraction: r.fraction,
                })
                .collect();
            print!("{}", to_pretty_json(&docs));
        }
        Format::Csv => print!("{}", stats_to_csv(&rows)),
    }
    if let Some(path) = &out.output {
        write_artifact(path, &stats_to_csv(&rows))?;
    }
    Ok(ExitCode::from(0))
}
