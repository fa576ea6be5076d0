//! `mppa`: verify the identity suites, print normal forms, build moment
//! maps and the dg preprojective algebra, and run the matrix oracle.
//!
//! Exit codes: 0 when all requested checks pass, 1 on a check failure,
//! 2 on a usage error.

use clap::{Parser, Subcommand, ValueEnum};
use mppa::ncalg::{builtins, expr, rewrite};
use mppa::preproj;
use mppa::quiver::QuiverFile;
use mppa::repvar::MatrixRep;
use mppa::resolutions;
use mppa::witnesses;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "mppa", version, about = "Multiplicative preprojective algebra toolkit")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run an identity suite (all, laurent, cospan, a2, invrels, controls,
    /// a2-diagrams).
    Verify {
        #[arg(long)]
        suite: String,
        /// Truncation order of the mixed witness.
        #[arg(long, default_value_t = 5)]
        truncation: usize,
    },
    /// Print the normal form of an expression in a built-in algebra.
    Nf {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        expr: String,
    },
    /// Build the dg algebra Upsilon^q(Q) and write it as JSON.
    BuildUpsilon {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the multiplicative moment map of a quiver.
    Moment {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Compare two expressions over a quiver's localized path algebra at
    /// random matrix representations.
    Oracle {
        #[arg(long)]
        quiver: PathBuf,
        /// Comma-separated dimensions, one per vertex (e.g. "2,3").
        #[arg(long)]
        dims: String,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Exactly two expressions to compare.
        #[arg(long = "expr")]
        exprs: Vec<String>,
    },
    /// Certify confluence of the built-in rewriting systems.
    CriticalPairs {
        /// A built-in algebra name, or "all".
        #[arg(long, default_value = "all")]
        algebra: String,
        #[arg(long, default_value_t = 12)]
        depth: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    }
}

fn run(cli: &Cli) -> Result<i32, String> {
    match &cli.cmd {
        Cmd::Verify { suite, truncation } => verify(suite, *truncation, cli.format),
        Cmd::Nf { algebra, expr: e } => nf(algebra, e, cli.format),
        Cmd::BuildUpsilon { quiver, out } => build_upsilon(quiver, out, cli.format),
        Cmd::Moment { quiver, vertex } => moment(quiver, vertex.as_deref(), cli.format),
        Cmd::Oracle {
            quiver,
            dims,
            trials,
            seed,
            exprs,
        } => oracle(quiver, dims, *trials, *seed, exprs, cli.format),
        Cmd::CriticalPairs { algebra, depth } => critical_pairs(algebra, *depth, cli.format),
    }
}

#[derive(Serialize)]
struct DiagramsOutput {
    diagrams: Vec<resolutions::DiagramReport>,
    all_passed: bool,
}

fn verify(suite: &str, truncation: usize, format: Format) -> Result<i32, String> {
    if suite == "a2-diagrams" {
        let diagrams = resolutions::check_a2_diagrams();
        let all_passed = diagrams.iter().all(|d| d.passed);
        let out = DiagramsOutput {
            diagrams,
            all_passed,
        };
        match format {
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(&out).map_err(|e| e.to_string())?
            ),
            Format::Text => {
                for d in &out.diagrams {
                    println!(
                        "[{}] {} — {} ({})",
                        if d.passed { "PASS" } else { "FAIL" },
                        d.name,
                        d.anchor,
                        d.detail
                    );
                }
                println!(
                    "a2-diagrams: {}",
                    if out.all_passed { "all passed" } else { "FAILED" }
                );
            }
        }
        return Ok(if out.all_passed { 0 } else { 1 });
    }
    let report = witnesses::run_suite(suite, truncation).map_err(|e| e.to_string())?;
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
        ),
        Format::Text => {
            for e in &report.entries {
                print!(
                    "[{}] {} — {}",
                    if e.passed { "PASS" } else { "FAIL" },
                    e.id,
                    e.statement
                );
                if e.detail.is_empty() {
                    println!();
                } else {
                    println!(" ({})", e.detail);
                }
            }
            println!(
                "suite {}: {}/{} passed",
                report.suite,
                report.entries.iter().filter(|e| e.passed).count(),
                report.entries.len()
            );
        }
    }
    Ok(if report.all_passed { 0 } else { 1 })
}

fn nf(algebra: &str, input: &str, format: Format) -> Result<i32, String> {
    let pres = builtins::by_name(algebra).map_err(|e| e.to_string())?;
    let e = expr::parse_element(&pres, input).map_err(|e| e.to_string())?;
    let printed = expr::print_element(&e.normal_form());
    match format {
        Format::Json => println!(
            "{}",
            serde_json::json!({ "algebra": pres.name, "input": input, "normal_form": printed })
        ),
        Format::Text => println!("{printed}"),
    }
    Ok(0)
}

fn load_quiver(path: &PathBuf) -> Result<QuiverFile, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let qf: QuiverFile = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    qf.quiver().validate().map_err(|e| e.to_string())?;
    Ok(qf)
}

fn build_upsilon(path: &PathBuf, out: &PathBuf, format: Format) -> Result<i32, String> {
    let qf = load_quiver(path)?;
    let q = qf.quiver();
    let qvals = qf.q_values().map_err(|e| e.to_string())?;
    let ord = qf.fusion().map_err(|e| e.to_string())?;
    let ups = preproj::build_upsilon(&q, &qvals, &ord).map_err(|e| e.to_string())?;
    let desc = ups.describe();
    let json = serde_json::to_string_pretty(&desc).map_err(|e| e.to_string())?;
    std::fs::write(out, json).map_err(|e| format!("{}: {e}", out.display()))?;
    match format {
        Format::Json => println!("{}", serde_json::json!({ "out": out.display().to_string() })),
        Format::Text => println!("wrote {}", out.display()),
    }
    Ok(0)
}

fn moment(path: &PathBuf, vertex: Option<&str>, format: Format) -> Result<i32, String> {
    let qf = load_quiver(path)?;
    let q = qf.quiver();
    let ord = qf.fusion().map_err(|e| e.to_string())?;
    let mm = preproj::moment_map(&q, &ord).map_err(|e| e.to_string())?;
    let vertices: Vec<String> = match vertex {
        Some(v) => {
            if !q.vertices.iter().any(|w| w == v) {
                return Err(format!("unknown vertex `{v}`"));
            }
            vec![v.to_string()]
        }
        None => q.vertices.clone(),
    };
    match format {
        Format::Json => {
            let map: std::collections::BTreeMap<String, String> = vertices
                .iter()
                .map(|v| (v.clone(), expr::print_element(&mm.mu[v])))
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&map).map_err(|e| e.to_string())?
            );
        }
        Format::Text => {
            for v in &vertices {
                println!("mu_{v} = {}", expr::print_element(&mm.mu[v]));
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct OracleOutput {
    equal: bool,
    trials: usize,
    seed: u64,
    refuted_at: Option<usize>,
}

fn oracle(
    path: &PathBuf,
    dims: &str,
    trials: usize,
    seed: u64,
    exprs: &[String],
    format: Format,
) -> Result<i32, String> {
    if exprs.len() != 2 {
        return Err(format!("expected exactly two --expr values, got {}", exprs.len()));
    }
    let qf = load_quiver(path)?;
    let q = qf.quiver();
    let dims: Vec<usize> = dims
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    if dims.len() != q.vertices.len() {
        return Err(format!(
            "got {} dimensions for {} vertices",
            dims.len(),
            q.vertices.len()
        ));
    }
    let dq = q.double().map_err(|e| e.to_string())?;
    let pres = builtins::quiver_loc(&dq);
    let a = expr::parse_element(&pres, &exprs[0]).map_err(|e| e.to_string())?;
    let b = expr::parse_element(&pres, &exprs[1]).map_err(|e| e.to_string())?;
    let diff = a.sub(&b);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut refuted_at = None;
    for i in 0..trials {
        let rep = MatrixRep::random(&pres, dims.clone(), &mut rng).map_err(|e| e.to_string())?;
        if !rep.is_zero(&diff).map_err(|e| e.to_string())? {
            refuted_at = Some(i);
            break;
        }
    }
    let out = OracleOutput {
        equal: refuted_at.is_none(),
        trials,
        seed,
        refuted_at,
    };
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&out).map_err(|e| e.to_string())?
        ),
        Format::Text => match out.refuted_at {
            None => println!("equal at {trials} representations (seed {seed})"),
            Some(i) => println!("refuted at representation #{i} (seed {seed})"),
        },
    }
    Ok(if out.equal { 0 } else { 1 })
}

#[derive(Serialize)]
struct PairsOutput {
    algebra: String,
    depth: u64,
    pairs: usize,
    joinable: usize,
    confluent: bool,
}

fn critical_pairs(algebra: &str, depth: u64, format: Format) -> Result<i32, String> {
    let names: Vec<&str> = if algebra == "all" {
        vec!["laurent", "laurent_pair", "interval_kI", "a2_loc"]
    } else {
        vec![algebra]
    };
    let mut outputs = Vec::new();
    for name in names {
        let pres = builtins::by_name(name).map_err(|e| e.to_string())?;
        let pairs = rewrite::critical_pairs(&pres, depth).map_err(|e| e.to_string())?;
        let joinable = pairs.iter().filter(|p| p.joinable).count();
        outputs.push(PairsOutput {
            algebra: pres.name.clone(),
            depth,
            pairs: pairs.len(),
            joinable,
            confluent: joinable == pairs.len(),
        });
    }
    let ok = outputs.iter().all(|o| o.confluent);
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&outputs).map_err(|e| e.to_string())?
        ),
        Format::Text => {
            for o in &outputs {
                println!(
                    "[{}] {}: {}/{} critical pairs joinable at depth {}",
                    if o.confluent { "PASS" } else { "FAIL" },
                    o.algebra,
                    o.joinable,
                    o.pairs,
                    o.depth
                );
            }
        }
    }
    Ok(if ok { 0 } else { 1 })
}
