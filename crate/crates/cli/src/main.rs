//! `qcover`: command-line front end for the standard-graded test.
//!
//! Every analysis command prints one JSON report on stdout. Diagnostics go
//! to stderr. Exit codes: 0 success or standard graded, 2 bad input,
//! 10 not standard graded, 11 not a quasi-tree, 20 the criterion and the
//! brute-force search disagree.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qcover::covers::{d_max, indecomposable_covers};
use qcover::cycles::DEFAULT_BUDGET;
use qcover::families::{delta_n, figure1, random_quasi_tree, GeneratorSeed};
use qcover::format::{parse_auto, to_json, to_text, LabeledComplex};
use qcover::gradedness::{cross_validate_with, is_standard_graded_with, smd_sweep, Options};
use qcover::quasi_forest::{is_quasi_forest, is_quasi_tree, leaf_order, relation_tree};
use qcover::{BranchRule, FacetId, GradednessError, SimplicialComplex};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

const EXIT_INPUT: u8 = 2;
const EXIT_NOT_GRADED: u8 = 10;
const EXIT_NOT_QUASI_TREE: u8 = 11;
const EXIT_DISAGREE: u8 = 20;

#[derive(Parser)]
#[command(
    name = "qcover",
    version,
    about = "Standard-graded test for vertex cover algebras of quasi-trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a complex and decide standard gradedness by the cycle criterion.
    Check { path: PathBuf },
    /// List the indecomposable k-covers.
    Covers {
        path: PathBuf,
        #[arg(long)]
        k: u32,
        /// Also write the sorted cover list as a JSON array.
        #[arg(long)]
        emit_golden: Option<PathBuf>,
    },
    /// Largest generator degree up to a bound.
    Dmax {
        path: PathBuf,
        #[arg(long, default_value_t = 4)]
        k_max: u32,
    },
    /// Run the criterion and the brute-force search side by side.
    Verify {
        path: PathBuf,
        #[arg(long, default_value_t = 4)]
        k_max: u32,
        /// Seed for the branch rule of the relation tree.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where to write the failure artifact on disagreement.
        #[arg(long)]
        artifact: Option<PathBuf>,
        /// Also run the brute-force search on every SMD.
        #[arg(long)]
        all_smds: bool,
    },
    /// Emit a named or random complex.
    Gen {
        #[command(subcommand)]
        family: Family,
        #[command(flatten)]
        output: GenOutput,
    },
    /// Emit a relation tree in Graphviz DOT.
    Dot {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Rule::Smallest)]
        rule: Rule,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Leaf order as comma-separated facet numbers; defaults to the
        /// greedy order.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Family {
    DeltaN {
        #[arg(long)]
        n: usize,
    },
    Figure1,
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        facets: usize,
        #[arg(long, default_value_t = 3)]
        max_facet_size: usize,
    },
}

#[derive(Args)]
struct GenOutput {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Smallest,
    Largest,
    Random,
}

#[derive(Serialize)]
struct Report {
    version: &'static str,
    command: &'static str,
    input_digest: String,
    result: Value,
    timing_ms: u128,
}

/// A failed run: exit code plus message for stderr.
struct Failure(u8, anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(EXIT_INPUT, e.into())
    }
}

fn digest(complex: &SimplicialComplex) -> String {
    hex::encode(Sha256::digest(to_json(complex).as_bytes()))
}

fn load(path: &Path) -> Result<LabeledComplex, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_auto(&text).with_context(|| format!("parsing {}", path.display()))?)
}

fn budget() -> Result<u64, Failure> {
    match std::env::var("QCOVER_BUDGET") {
        Ok(v) => Ok(v
            .trim()
            .parse()
            .with_context(|| format!("QCOVER_BUDGET must be a nonnegative integer, got {v:?}"))?),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn write_out(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn labels(input: &LabeledComplex) -> Value {
    match &input.labels {
        Some(names) => json!(names),
        None => Value::Null,
    }
}

/// Output of one command: a report payload with an exit code, or raw bytes
/// for stdout.
enum Output {
    Report {
        command: &'static str,
        complex: SimplicialComplex,
        result: Value,
        code: u8,
    },
    Raw(String),
}

fn report(command: &'static str, complex: SimplicialComplex, result: Value, code: u8) -> Output {
    Output::Report {
        command,
        complex,
        result,
        code,
    }
}

fn cmd_check(path: &Path) -> Result<Output, Failure> {
    let input = load(path)?;
    let c = &input.complex;
    let mut result = json!({
        "vertices": qcover::FacetView::universe(c).len(),
        "facets": c.facet_count(),
        "labels": labels(&input),
        "quasi_forest": is_quasi_forest(c),
        "quasi_tree": is_quasi_tree(c),
    });
    if !is_quasi_tree(c) {
        eprintln!("not a quasi-tree; the cycle criterion does not apply");
        return Ok(report("check", input.complex, result, EXIT_NOT_QUASI_TREE));
    }
    let options = Options {
        budget: budget()?,
        ..Options::default()
    };
    let verdict = is_standard_graded_with(c, options)?;
    let code = if verdict.standard_graded {
        0
    } else {
        EXIT_NOT_GRADED
    };
    result["verdict"] = serde_json::to_value(&verdict)?;
    if let Some(cycle) = &verdict.cycle_witness {
        result["cycle"] = json!(cycle.to_string());
    }
    Ok(report("check", input.complex, result, code))
}

fn cmd_covers(path: &Path, k: u32, golden: Option<&Path>) -> Result<Output, Failure> {
    let input = load(path)?;
    let covers = indecomposable_covers(&input.complex, k);
    if let Some(golden) = golden {
        write_out(golden, &format!("{}\n", serde_json::to_string(&covers)?))?;
    }
    let result = json!({
        "k": k,
        "labels": labels(&input),
        "count": covers.len(),
        "covers": covers,
    });
    Ok(report("covers", input.complex, result, 0))
}

fn cmd_dmax(path: &Path, k_max: u32) -> Result<Output, Failure> {
    if k_max == 0 {
        return Err(anyhow!("--k-max must be at least 1").into());
    }
    let input = load(path)?;
    let bound = d_max(&input.complex, k_max);
    let disclaimer = bound.disclaimer();
    eprintln!("warning: {disclaimer}");
    let result = json!({ "d_max": bound, "disclaimer": disclaimer });
    Ok(report("dmax", input.complex, result, 0))
}

fn cmd_verify(
    path: &Path,
    k_max: u32,
    seed: u64,
    artifact: Option<&Path>,
    all_smds: bool,
) -> Result<Output, Failure> {
    let input = load(path)?;
    let c = &input.complex;
    let options = Options {
        budget: budget()?,
        branch_rule: BranchRule::Seeded(seed),
    };
    let cv = match cross_validate_with(c, k_max, options) {
        Err(GradednessError::NotQuasiTree) => {
            eprintln!("not a quasi-tree; nothing to cross-validate");
            let result = json!({ "quasi_tree": false });
            return Ok(report("verify", input.complex, result, EXIT_NOT_QUASI_TREE));
        }
        other => other?,
    };
    let mut result = serde_json::to_value(&cv)?;
    let mut code = 0;
    if let Some(failure) = cv.failure_artifact(c) {
        let target = artifact
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from(format!("qcover-failure-{}.json", &digest(c)[..12])));
        write_out(
            &target,
            &format!("{}\n", serde_json::to_string_pretty(&failure)?),
        )?;
        eprintln!(
            "criterion and brute force disagree; artifact written to {}",
            target.display()
        );
        result["artifact"] = json!(target.display().to_string());
        code = EXIT_DISAGREE;
    }
    if all_smds {
        let sweep: Vec<Value> = smd_sweep(c, k_max)?
            .into_iter()
            .map(|(ids, v)| json!({ "facets": ids, "verdict": v }))
            .collect();
        result["smds"] = Value::Array(sweep);
    }
    Ok(report("verify", input.complex, result, code))
}

fn cmd_gen(family: &Family, output: &GenOutput) -> Result<Output, Failure> {
    let complex = match *family {
        Family::DeltaN { n } => delta_n(n)?,
        Family::Figure1 => figure1(),
        Family::Random {
            seed,
            facets,
            max_facet_size,
        } => random_quasi_tree(GeneratorSeed {
            seed,
            num_facets: facets,
            max_facet_size,
        })?,
    };
    let text = match output.format {
        Format::Json => to_json(&complex),
        Format::Text => to_text(&complex),
    };
    match &output.out {
        Some(path) => {
            write_out(path, &text)?;
            let result =
                json!({ "out": path.display().to_string(), "facets": complex.facet_lists() });
            Ok(report("gen", complex, result, 0))
        }
        None => Ok(Output::Raw(text)),
    }
}

fn cmd_dot(
    path: &Path,
    rule: Rule,
    seed: u64,
    order: Option<&[usize]>,
    out: Option<&Path>,
) -> Result<Output, Failure> {
    let input = load(path)?;
    let c = &input.complex;
    let order: Vec<FacetId> = match order {
        Some(numbers) => numbers
            .iter()
            .map(|&n| FacetId::from_number(n).ok_or_else(|| anyhow!("facet numbers start at 1")))
            .collect::<Result<_, _>>()?,
        None => match leaf_order(c) {
            Some(order) => order.into_vec(),
            None => {
                return Err(Failure(
                    EXIT_NOT_QUASI_TREE,
                    anyhow!("not a quasi-forest; no relation tree exists"),
                ))
            }
        },
    };
    let rule = match rule {
        Rule::Smallest => BranchRule::Smallest,
        Rule::Largest => BranchRule::Largest,
        Rule::Random => BranchRule::Seeded(seed),
    };
    let dot = relation_tree(c, &order, rule)?.to_dot(c);
    match out {
        Some(target) => {
            write_out(target, &dot)?;
            let result = json!({ "out": target.display().to_string() });
            Ok(report("dot", input.complex, result, 0))
        }
        None => Ok(Output::Raw(dot)),
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Check { path } => cmd_check(path),
        Command::Covers {
            path,
            k,
            emit_golden,
        } => cmd_covers(path, *k, emit_golden.as_deref()),
        Command::Dmax { path, k_max } => cmd_dmax(path, *k_max),
        Command::Verify {
            path,
            k_max,
            seed,
            artifact,
            all_smds,
        } => cmd_verify(path, *k_max, *seed, artifact.as_deref(), *all_smds),
        Command::Gen { family, output } => cmd_gen(family, output),
        Command::Dot {
            path,
            rule,
            seed,
            order,
            out,
        } => cmd_dot(path, *rule, *seed, order.as_deref(), out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(Output::Raw(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Output::Report {
            command,
            complex,
            result,
            code,
        }) => {
            let report = Report {
                version: env!("CARGO_PKG_VERSION"),
                command,
                input_digest: digest(&complex),
                result,
                timing_ms: start.elapsed().as_millis(),
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("reports serialize")
            );
            ExitCode::from(code)
        }
        Err(Failure(code, err)) => {
            // Some errors already embed their source's message; print each
            // cause only when it adds something.
            let mut message = String::new();
            let mut last = String::new();
            for cause in err.chain() {
                let text = cause.to_string();
                if !last.ends_with(&text) {
                    if !message.is_empty() {
                        message.push_str(": ");
                    }
                    message.push_str(&text);
                }
                last = text;
            }
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
