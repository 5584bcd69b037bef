//! Command-line front end: build catalog complexes, analyze vectors and
//! certificates, run decompositions, search move paths, audit Boolean
//! charts, and run the verification suites.
//!
//! Exit codes: 0 success, 1 verification/precondition failure, 2 usage or
//! parse errors.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use flagsphere::boolean::{local_global_audit, SeedBudget};
use flagsphere::catalog::{parse_build_spec, Built, FileSource};
use flagsphere::cm::{
    certify_sphere, is_cohen_macaulay, is_doubly_cm, SphereProvenance, SphereStatus,
};
use flagsphere::complex::SimplicialComplex;
use flagsphere::decomposition::{
    iterated_gamma_decomposition, reconstruct_h, summarize, DecompNode, DecompOptions,
    EdgeStrategy, Expansion, Remainder,
};
use flagsphere::homology::FieldSpec;
use flagsphere::search::{find_move_path, Budget};
use flagsphere::vectors::{dehn_sommerville_check, gamma_vector, h_polynomial};
use flagsphere::verify::{run_all, run_suite, Suite, SuiteOptions};

#[derive(Parser)]
#[command(name = "flagsphere", version, about = "flag complexes: vectors, moves, decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a complex from a build spec and print canonical JSON
    Build {
        /// e.g. "crosspoly(3)", "susp(cycle(6))", "subdiv(cycle(4), 0, 1)"
        spec: String,
        /// Emit the complex even when it is not flag
        #[arg(long)]
        allow_nonflag: bool,
    },
    /// Report f/h/gamma vectors, flagness, Dehn-Sommerville, CM status and
    /// the sphere certificate
    Analyze(InputArgs),
    /// Decompose the h-polynomial into iterated double suspensions of edge
    /// links plus attributed remainders
    Decompose {
        #[command(flatten)]
        input: InputArgs,
        /// Edge selection: max-link-h, min-link-h or lex
        #[arg(long, default_value = "max-link-h")]
        strategy: String,
        /// Proceed without a sphere certificate (results reported, not asserted)
        #[arg(long)]
        force: bool,
        /// Move-path search depth per node
        #[arg(long, default_value_t = 24)]
        max_depth: usize,
        /// Move-path search state cap per node
        #[arg(long, default_value_t = 60000)]
        max_states: usize,
    },
    /// Search for an edge subdivision/contraction path between two complexes
    Path {
        /// JSON file with the starting complex, or - for standard input
        from: String,
        /// JSON file with the target complex
        to: String,
        #[arg(long, default_value_t = 6)]
        max_depth: usize,
        #[arg(long, default_value_t = 200000)]
        max_states: usize,
    },
    /// Per-edge Boolean seed charts and their overlap statistics
    Audit {
        #[command(flatten)]
        input: InputArgs,
        /// Proceed without a sphere certificate
        #[arg(long)]
        force: bool,
    },
    /// Run a named verification suite (or "all")
    Verify {
        /// subdivision-identity, net-count, lower-bound, cross-polytope-bound,
        /// decomposition, boolean-search, cm-certification, suspension-gamma, all
        suite: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 50)]
        walks: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Aligned text summary instead of JSON
        #[arg(long)]
        table: bool,
    },
}

#[derive(Args)]
struct InputArgs {
    /// JSON complex file, or - for standard input
    file: Option<String>,
    /// Build spec instead of a file (carries a sphere certificate)
    #[arg(long, conflicts_with = "file")]
    build: Option<String>,
    /// Field for Cohen-Macaulay checks: a prime p for GF(p), 0 for rationals
    #[arg(long, default_value_t = 2)]
    field: u64,
    /// Aligned text report instead of JSON
    #[arg(long)]
    table: bool,
}

struct FsFiles;

impl FileSource for FsFiles {
    fn load(&self, path: &str) -> Result<SimplicialComplex, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
        serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))
    }
}

fn read_input(input: &InputArgs) -> Result<(SimplicialComplex, Option<SphereProvenance>), String> {
    if let Some(spec) = &input.build {
        let Built {
            complex,
            provenance,
        } = parse_build_spec(spec, &FsFiles).map_err(|e| e.to_string())?;
        return Ok((complex, provenance));
    }
    let complex = match input.file.as_deref() {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| e.to_string())?;
            serde_json::from_str(&buf).map_err(|e| e.to_string())?
        }
        Some(path) => FsFiles.load(path)?,
    };
    Ok((complex, None))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Build {
            spec,
            allow_nonflag,
        } => {
            let built = parse_build_spec(&spec, &FsFiles).map_err(|e| e.to_string())?;
            if !allow_nonflag {
                if let Some(witness) = built.complex.flag_witness() {
                    eprintln!(
                        "refusing non-flag complex (witness {witness}); pass --allow-nonflag to emit it"
                    );
                    return Ok(ExitCode::from(1));
                }
            }
            println!("{}", serde_json::to_string(&built.complex).map_err(|e| e.to_string())?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Analyze(input) => analyze(&input),
        Command::Decompose {
            input,
            strategy,
            force,
            max_depth,
            max_states,
        } => decompose(&input, &strategy, force, max_depth, max_states),
        Command::Path {
            from,
            to,
            max_depth,
            max_states,
        } => path_command(&from, &to, max_depth, max_states),
        Command::Audit { input, force } => audit(&input, force),
        Command::Verify {
            suite,
            samples,
            walks,
            seed,
            table,
        } => verify(&suite, samples, walks, seed, table),
    }
}

fn field_spec(p: u64) -> Result<FieldSpec, String> {
    if p == 0 {
        Ok(FieldSpec::rationals())
    } else {
        FieldSpec::gf(p).map_err(|e| e.to_string())
    }
}

fn analyze(input: &InputArgs) -> Result<ExitCode, String> {
    let (complex, provenance) = read_input(input)?;
    let field = field_spec(input.field)?;
    if complex.is_void() {
        return Err("the void complex has no analysis".to_string());
    }
    let dim = complex.dimension().unwrap();
    let d = (dim + 1) as usize;
    let f = complex.f_vector().map_err(|e| e.to_string())?;
    let h = h_polynomial(&complex).map_err(|e| e.to_string())?;
    let ds = dehn_sommerville_check(&complex).map_err(|e| e.to_string())?;
    let gamma = if ds { gamma_vector(&h, d).ok() } else { None };
    let witness = complex.flag_witness();
    let cm = is_cohen_macaulay(&complex, field).map_err(|e| e.to_string())?;
    let doubly = is_doubly_cm(&complex, field).map_err(|e| e.to_string())?;
    let sphere = certify_sphere(&complex, provenance.as_ref());
    if input.table {
        println!("dimension          {dim}");
        println!("f-polynomial       {f}");
        println!("h-polynomial       {h}");
        println!("dehn-sommerville   {ds}");
        match &gamma {
            Some(g) => println!(
                "gamma              {}",
                flagsphere::Polynomial::from_coeffs(g.entries().to_vec())
            ),
            None => println!("gamma              (undefined: h not symmetric)"),
        }
        println!(
            "flag               {}",
            match &witness {
                None => "yes".to_string(),
                Some(w) => format!("no (witness {w})"),
            }
        );
        println!("cm over {field}       {}", cm.is_cm);
        println!("doubly cm          {}", doubly.is_doubly_cm);
        println!("sphere             {sphere:?}");
    } else {
        let report = json!({
            "dimension": dim,
            "f": f,
            "h": h,
            "dehn_sommerville": ds,
            "gamma": gamma,
            "flag": witness.is_none(),
            "flag_witness": witness,
            "euler_characteristic": complex.euler_characteristic().map_err(|e| e.to_string())?.to_string().parse::<i64>().ok(),
            "cm": cm,
            "doubly_cm": doubly,
            "sphere": sphere,
        });
        println!("{}", serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?);
    }
    Ok(ExitCode::SUCCESS)
}

fn require_sphere(
    complex: &SimplicialComplex,
    provenance: Option<&SphereProvenance>,
    force: bool,
    what: &str,
) -> Result<bool, ExitCode> {
    let status = certify_sphere(complex, provenance);
    if status == SphereStatus::Unknown && !force {
        eprintln!(
            "{what} requires a certified flag sphere (exact check up to dimension 2, \
             provenance from --build beyond); pass --force to downgrade assertions"
        );
        return Err(ExitCode::from(1));
    }
    Ok(status != SphereStatus::Unknown)
}

fn decompose(
    input: &InputArgs,
    strategy: &str,
    force: bool,
    max_depth: usize,
    max_states: usize,
) -> Result<ExitCode, String> {
    let (complex, provenance) = read_input(input)?;
    let strategy = EdgeStrategy::parse(strategy)
        .ok_or_else(|| format!("unknown strategy '{strategy}'"))?;
    let certified = match require_sphere(&complex, provenance.as_ref(), force, "decompose") {
        Ok(c) => c,
        Err(code) => return Ok(code),
    };
    let tree = iterated_gamma_decomposition(
        &complex,
        DecompOptions {
            strategy,
            path_budget: Budget {
                max_depth,
                max_states,
            },
        },
    )
    .map_err(|e| e.to_string())?;
    let summary = summarize(&tree).map_err(|e| e.to_string())?;
    if input.table {
        println!(
            "h = {}   reconstructed = {}   ok = {}",
            tree.h_root,
            reconstruct_h(&tree),
            summary.reconstruction_ok
        );
        println!(
            "depth {} of bound {}, {} attributed nodes, {} raw nodes, gamma {}",
            summary.max_depth,
            summary.depth_bound,
            summary.attributed_nodes,
            summary.raw_nodes,
            summary.collected_gamma
        );
        print_node(&tree.root, 0);
    } else {
        let out = json!({ "certified": certified, "tree": tree, "summary": summary });
        println!("{}", serde_json::to_string_pretty(&out).map_err(|e| e.to_string())?);
    }
    Ok(ExitCode::SUCCESS)
}

fn print_node(node: &DecompNode, indent: usize) {
    let pad = "  ".repeat(indent);
    let sign = if node.sign >= 0 { '+' } else { '-' };
    println!(
        "{pad}{sign} x^{} (1+x)^{} * h(lk({})) = {}   [m={}]",
        node.r, node.s, node.base_face, node.link_h, node.m
    );
    match &node.expansion {
        Expansion::Leaf { reason } => {
            println!("{pad}  leaf ({reason:?})");
        }
        Expansion::Expanded {
            chosen_edge,
            suspension,
            remainder,
        } => {
            println!("{pad}  split over edge {chosen_edge}");
            print_node(suspension, indent + 1);
            match remainder {
                Remainder::Attributed {
                    terms,
                    bracket,
                    bracket_nonnegative,
                    ..
                } => {
                    println!(
                        "{pad}  bracket {} (nonnegative: {})",
                        bracket, bracket_nonnegative
                    );
                    for t in terms {
                        print_node(t, indent + 1);
                    }
                }
                Remainder::Raw { remainder_div_x } => {
                    println!("{pad}  raw remainder / x = {remainder_div_x} (path budget exhausted)");
                }
            }
        }
    }
}

fn path_command(
    from: &str,
    to: &str,
    max_depth: usize,
    max_states: usize,
) -> Result<ExitCode, String> {
    let from_complex = FsFiles.load(from)?;
    let to_complex = FsFiles.load(to)?;
    let budget = Budget {
        max_depth,
        max_states,
    };
    match find_move_path(&from_complex, &to_complex, &budget) {
        Ok(found) => {
            let net = found
                .sequence
                .net_subdivision_count()
                .map_err(|e| e.to_string())?;
            let out = json!({
                "found": true,
                "sequence": found.sequence,
                "end": found.end,
                "isomorphism": found.isomorphism,
                "net_subdivisions": net,
                "stats": found.stats,
            });
            println!("{}", serde_json::to_string_pretty(&out).map_err(|e| e.to_string())?);
            Ok(ExitCode::SUCCESS)
        }
        Err(flagsphere::search::PathError::NotFound { stats }) => {
            let out = json!({ "found": false, "stats": stats });
            println!("{}", serde_json::to_string_pretty(&out).map_err(|e| e.to_string())?);
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn audit(input: &InputArgs, force: bool) -> Result<ExitCode, String> {
    let (complex, provenance) = read_input(input)?;
    let certified = match require_sphere(&complex, provenance.as_ref(), force, "audit") {
        Ok(c) => c,
        Err(code) => return Ok(code),
    };
    let report = local_global_audit(&complex, &SeedBudget::default()).map_err(|e| e.to_string())?;
    if input.table {
        println!(
            "{} charts ({} with seeds, {} without), {} overlapping pairs, {} conflicting, max status difference {}",
            report.charts.len(),
            report.charts_with_seed,
            report.charts_without_seed,
            report.overlaps.len(),
            report.conflicting_pairs,
            report.max_status_difference
        );
        for chart in &report.charts {
            println!(
                "edge {}  h(link) = {}  non-Boolean {}  seed {}",
                chart.edge,
                chart.h_link,
                chart.non_boolean_count,
                match chart.outcome.found() {
                    Some(seed) => format!("{}", seed.seed),
                    None => "none".to_string(),
                }
            );
        }
    } else {
        let out = json!({ "certified": certified, "audit": report });
        println!("{}", serde_json::to_string_pretty(&out).map_err(|e| e.to_string())?);
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(
    suite: &str,
    samples: usize,
    walks: usize,
    seed: u64,
    table: bool,
) -> Result<ExitCode, String> {
    let opts = SuiteOptions {
        samples,
        walks,
        seed,
    };
    let reports = if suite == "all" {
        run_all(&opts)
    } else {
        let suite = Suite::parse(suite).ok_or_else(|| {
            format!(
                "unknown suite '{suite}'; expected one of {} or all",
                Suite::all()
                    .iter()
                    .map(|s| s.name())
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        })?;
        vec![run_suite(suite, &opts)]
    };
    let all_passed = reports.iter().all(|r| r.passed);
    if table {
        for report in &reports {
            println!(
                "{:24} {}  ({} checks, {} ms)",
                report.suite,
                if report.passed { "pass" } else { "FAIL" },
                report.checks.len(),
                report.elapsed_ms
            );
            for check in report.checks.iter().filter(|c| !c.passed) {
                println!("  FAIL {} :: {}", check.label, check.details);
            }
        }
    } else {
        println!("{}", serde_json::to_string_pretty(&reports).map_err(|e| e.to_string())?);
    }
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
