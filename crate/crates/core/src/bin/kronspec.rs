//! Command-line interface: graph product construction, exact spectra,
//! Laplacian spectrum estimation, and the evaluation experiments.
//!
//! Exit codes: 0 success, 2 input error, 3 numerical error, 4 infeasible
//! configuration.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use kronspec::eigen::{adjacency_spectrum, laplacian_spectrum};
use kronspec::estimator::{estimate_pipeline, OrderingMethod};
use kronspec::evaluation::{
    correlation_experiment, exhaustive_ordering_oracle, run_error_profile, run_method_comparison,
    timing_comparison, DistributionSummary,
};
use kronspec::exact::{
    compose_adjacency_spectrum, compose_cartesian_laplacian, compose_degree_spectrum,
};
use kronspec::manifest::RunManifest;
use kronspec::randgen::{generate, GraphModel};
use kronspec::seeds::derive_seed;
use kronspec::{Error, Graph, ProductKind, Result, Spectrum};

#[derive(Parser)]
#[command(name = "kronspec", version, about = "Graph products and their spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a product graph from two edge-list files.
    Product {
        #[arg(long)]
        kind: ProductKind,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Estimate the Laplacian spectrum of a direct or strong product.
    Estimate {
        #[arg(long)]
        kind: ProductKind,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long, default_value = "correlated")]
        ordering: OrderingMethod,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exact spectra: a single graph's, or a composed product spectrum.
    Exact(ExactArgs),
    /// Evaluation experiments on seeded random graph models.
    Evaluate {
        #[command(subcommand)]
        experiment: Experiment,
    },
}

#[derive(Args)]
struct ExactArgs {
    /// degree | adjacency | laplacian
    #[arg(long)]
    matrix: String,
    /// Single-graph mode: the graph file.
    #[arg(long, conflicts_with_all = ["kind", "g", "h"])]
    graph: Option<PathBuf>,
    /// Composed mode: product kind plus both factor files.
    #[arg(long, requires = "g", requires = "h")]
    kind: Option<ProductKind>,
    #[arg(long)]
    g: Option<PathBuf>,
    #[arg(long)]
    h: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Experiment {
    /// RMSE distributions for all five ordering methods.
    RmseCompare {
        #[command(flatten)]
        common: ExperimentArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Per-rank percentage-error distributions under correlated ordering.
    ErrorProfile {
        #[command(flatten)]
        common: ExperimentArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Correlation between factor eigenvector products and their images
    /// under the direct-product Laplacian.
    Correlation {
        #[arg(long)]
        g: GraphModel,
        #[arg(long)]
        h: GraphModel,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exhaustive search over eigenvalue orderings (small factors only).
    Exhaustive {
        #[command(flatten)]
        common: ExperimentArgs,
    },
    /// Wall-clock comparison: explicit product eigendecomposition vs
    /// estimation pipeline.
    Timing {
        #[command(flatten)]
        common: ExperimentArgs,
    },
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    kind: ProductKind,
    /// Model for factor G, `er:N:M` or `ba:N:m`.
    #[arg(long)]
    g: GraphModel,
    /// Model for factor H.
    #[arg(long)]
    h: GraphModel,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads for independent trials; 1 is the fully serial,
    /// bit-reproducible baseline (results are merged by trial index, so
    /// values are identical at any job count).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Output path prefix; writes <out>.json and experiment CSVs.
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Product { kind, g, h, out } => cmd_product(kind, &g, &h, &out),
        Command::Estimate {
            kind,
            g,
            h,
            ordering,
            seed,
            out,
        } => cmd_estimate(kind, &g, &h, ordering, seed, &out),
        Command::Exact(args) => cmd_exact(args),
        Command::Evaluate { experiment } => cmd_evaluate(experiment),
    }
}

fn load_factor(path: &Path) -> Result<Graph> {
    Graph::load_edge_list(path)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    std::fs::write(path, format!("{:#}\n", value))?;
    Ok(())
}

fn spectrum_json(manifest: &RunManifest, spectrum: &Spectrum) -> serde_json::Value {
    json!({
        "manifest": manifest,
        "kind": spectrum.kind(),
        "eigenvalues": spectrum.values(),
    })
}

fn cmd_product(kind: ProductKind, g_file: &Path, h_file: &Path, out: &Path) -> Result<()> {
    let g = load_factor(g_file)?;
    let h = load_factor(h_file)?;
    for (name, graph) in [("G", &g), ("H", &h)] {
        if !graph.is_connected() {
            eprintln!("warning: factor {name} is disconnected");
        }
    }
    let product = kronspec::products::product_graph(kind, &g, &h);
    product.write_edge_list(out)?;
    println!(
        "{kind} product: {} nodes, {} edges -> {}",
        product.node_count(),
        product.edge_count(),
        out.display()
    );
    Ok(())
}

fn cmd_estimate(
    kind: ProductKind,
    g_file: &Path,
    h_file: &Path,
    ordering: OrderingMethod,
    seed: u64,
    out: &Path,
) -> Result<()> {
    if kind == ProductKind::Cartesian {
        return Err(Error::Input(
            "cartesian product Laplacian spectra are exact; use `exact --matrix laplacian --kind cartesian`"
                .into(),
        ));
    }
    let g = load_factor(g_file)?;
    let h = load_factor(h_file)?;
    for (name, graph) in [("G", &g), ("H", &h)] {
        if !graph.is_connected() {
            return Err(Error::Input(format!(
                "factor {name} is disconnected; estimation assumes a single zero eigenvalue per factor"
            )));
        }
    }
    let spectrum = estimate_pipeline(kind, &g, &h, ordering, seed)?;
    let manifest = RunManifest::new(
        "estimate",
        json!({
            "kind": kind,
            "g": g_file.display().to_string(),
            "h": h_file.display().to_string(),
            "ordering": ordering,
        }),
        Some(seed),
    );
    write_json(out, &spectrum_json(&manifest, &spectrum))
}

fn cmd_exact(args: ExactArgs) -> Result<()> {
    let manifest = RunManifest::new(
        "exact",
        json!({
            "matrix": args.matrix,
            "graph": args.graph.as_ref().map(|p| p.display().to_string()),
            "kind": args.kind,
            "g": args.g.as_ref().map(|p| p.display().to_string()),
            "h": args.h.as_ref().map(|p| p.display().to_string()),
        }),
        None,
    );
    let spectrum = match (&args.graph, args.kind) {
        (Some(path), None) => {
            let g = load_factor(path)?;
            match args.matrix.as_str() {
                "degree" => g.degree_spectrum(),
                "adjacency" => adjacency_spectrum(&g)?,
                "laplacian" => laplacian_spectrum(&g)?,
                other => return Err(Error::Input(format!("unknown matrix `{other}`"))),
            }
        }
        (None, Some(kind)) => {
            let g = load_factor(args.g.as_ref().expect("required by clap"))?;
            let h = load_factor(args.h.as_ref().expect("required by clap"))?;
            match args.matrix.as_str() {
                "degree" => {
                    compose_degree_spectrum(kind, &g.degree_spectrum(), &h.degree_spectrum())?
                }
                "adjacency" => compose_adjacency_spectrum(
                    kind,
                    &adjacency_spectrum(&g)?,
                    &adjacency_spectrum(&h)?,
                )?,
                "laplacian" => {
                    if kind != ProductKind::Cartesian {
                        return Err(Error::Input(format!(
                            "no exact Laplacian composition exists for the {kind} product; use `estimate`"
                        )));
                    }
                    compose_cartesian_laplacian(&laplacian_spectrum(&g)?, &laplacian_spectrum(&h)?)?
                }
                other => return Err(Error::Input(format!("unknown matrix `{other}`"))),
            }
        }
        _ => {
            return Err(Error::Input(
                "pass either --graph FILE, or --kind with --g and --h".into(),
            ))
        }
    };
    write_json(&args.out, &spectrum_json(&manifest, &spectrum))
}

fn summary_json(s: &DistributionSummary) -> serde_json::Value {
    serde_json::to_value(s).expect("summary serializes")
}

fn cmd_evaluate(experiment: Experiment) -> Result<()> {
    match experiment {
        Experiment::RmseCompare { common, trials } => {
            let manifest = experiment_manifest("rmse-compare", &common, Some(trials));
            let cmp = run_method_comparison(
                common.kind,
                &common.g,
                &common.h,
                trials,
                common.seed,
                common.jobs,
            )?;
            let mut writer = csv::Writer::from_path(with_suffix(&common.out, ".trials.csv")).map_err(csv_err)?;
            writer.write_record(["method", "trial", "seed", "rmse", "t_exact_ms", "t_estimate_ms"])
                .map_err(csv_err)?;
            for r in &cmp.reports {
                writer
                    .write_record([
                        r.method.to_string(),
                        r.trial.to_string(),
                        r.seed.to_string(),
                        r.rmse.to_string(),
                        format!("{:.3}", r.t_exact_ms),
                        format!("{:.3}", r.t_estimate_ms),
                    ])
                    .map_err(csv_err)?;
            }
            writer.flush()?;
            let per_method: serde_json::Map<String, serde_json::Value> = cmp
                .per_method
                .iter()
                .map(|(m, s)| (m.to_string(), summary_json(s)))
                .collect();
            write_json(
                &with_suffix(&common.out, ".json"),
                &json!({
                    "manifest": manifest,
                    "kind": common.kind,
                    "trials": trials,
                    "rmse_per_method": per_method,
                }),
            )?;
            for (m, s) in &cmp.per_method {
                println!("{m}: median rmse {:.4}", s.median);
            }
            Ok(())
        }
        Experiment::ErrorProfile { common, trials } => {
            let manifest = experiment_manifest("error-profile", &common, Some(trials));
            let profile = run_error_profile(
                common.kind,
                &common.g,
                &common.h,
                trials,
                common.seed,
                common.jobs,
            )?;
            let mut ranks = csv::Writer::from_path(with_suffix(&common.out, ".ranks.csv")).map_err(csv_err)?;
            ranks
                .write_record(["rank", "p5", "q25", "median", "q75", "p95"])
                .map_err(csv_err)?;
            for (rank, s) in profile.per_rank.iter().enumerate() {
                ranks
                    .write_record([
                        (rank + 1).to_string(),
                        s.p5.to_string(),
                        s.q25.to_string(),
                        s.median.to_string(),
                        s.q75.to_string(),
                        s.p95.to_string(),
                    ])
                    .map_err(csv_err)?;
            }
            ranks.flush()?;
            let mut trials_csv = csv::Writer::from_path(with_suffix(&common.out, ".trials.csv")).map_err(csv_err)?;
            trials_csv
                .write_record(["trial", "seed", "rmse", "t_exact_ms", "t_estimate_ms"])
                .map_err(csv_err)?;
            for r in &profile.reports {
                trials_csv
                    .write_record([
                        r.trial.to_string(),
                        r.seed.to_string(),
                        r.rmse.to_string(),
                        format!("{:.3}", r.t_exact_ms),
                        format!("{:.3}", r.t_estimate_ms),
                    ])
                    .map_err(csv_err)?;
            }
            trials_csv.flush()?;
            write_json(
                &with_suffix(&common.out, ".json"),
                &json!({
                    "manifest": manifest,
                    "kind": common.kind,
                    "trials": trials,
                    "fraction_within_10pct": profile.fraction_within_10pct,
                    "defined_count": profile.defined_count,
                    "undefined_count": profile.undefined_count,
                }),
            )?;
            println!(
                "fraction within +-10%: {:.4} ({} defined, {} undefined)",
                profile.fraction_within_10pct, profile.defined_count, profile.undefined_count
            );
            Ok(())
        }
        Experiment::Correlation {
            g,
            h,
            trials,
            seed,
            out,
        } => {
            let manifest = RunManifest::new(
                "correlation",
                json!({ "g": g.to_string(), "h": h.to_string(), "trials": trials }),
                Some(seed),
            );
            let mut writer = csv::Writer::from_path(with_suffix(&out, ".csv")).map_err(csv_err)?;
            writer.write_record(["trial", "coefficient"]).map_err(csv_err)?;
            let mut all = Vec::new();
            for trial in 0..trials {
                let trial_seed = derive_seed(seed, trial as u64);
                let fg = generate(&g, derive_seed(trial_seed, 1))?;
                let fh = generate(&h, derive_seed(trial_seed, 2))?;
                let coeffs = correlation_experiment(&fg, &fh)?;
                for c in &coeffs {
                    writer
                        .write_record([trial.to_string(), c.to_string()])
                        .map_err(csv_err)?;
                }
                all.extend(coeffs);
            }
            writer.flush()?;
            let summary = DistributionSummary::from_samples(&all)?;
            write_json(
                &with_suffix(&out, ".json"),
                &json!({
                    "manifest": manifest,
                    "coefficients": summary_json(&summary),
                }),
            )?;
            println!("median correlation: {:.4} over {} pairs", summary.median, all.len());
            Ok(())
        }
        Experiment::Exhaustive { common } => {
            let manifest = experiment_manifest("exhaustive", &common, None);
            let trial_seed = derive_seed(common.seed, 0);
            let g = generate(&common.g, derive_seed(trial_seed, 1))?;
            let h = generate(&common.h, derive_seed(trial_seed, 2))?;
            let result = exhaustive_ordering_oracle(common.kind, &g, &h)?;
            write_json(
                &with_suffix(&common.out, ".json"),
                &json!({
                    "manifest": manifest,
                    "best_rmse": result.best_rmse,
                    "best_ordering_g": result.best_ordering_g,
                    "best_ordering_h": result.best_ordering_h,
                }),
            )?;
            println!("best rmse {:.6}", result.best_rmse);
            Ok(())
        }
        Experiment::Timing { common } => {
            let manifest = experiment_manifest("timing", &common, None);
            let result = timing_comparison(common.kind, &common.g, &common.h, common.seed)?;
            write_json(
                &with_suffix(&common.out, ".json"),
                &json!({
                    "manifest": manifest,
                    "t_exact_ms": result.t_exact.as_secs_f64() * 1e3,
                    "t_estimate_ms": result.t_estimate.as_secs_f64() * 1e3,
                    "speedup": result.speedup,
                    "product_nodes": result.product_nodes,
                }),
            )?;
            println!(
                "exact {:.1} ms, estimate {:.3} ms, speedup {:.1}x",
                result.t_exact.as_secs_f64() * 1e3,
                result.t_estimate.as_secs_f64() * 1e3,
                result.speedup
            );
            Ok(())
        }
    }
}

fn experiment_manifest(
    command: &str,
    common: &ExperimentArgs,
    trials: Option<usize>,
) -> RunManifest {
    RunManifest::new(
        command,
        json!({
            "kind": common.kind,
            "g": common.g.to_string(),
            "h": common.h.to_string(),
            "trials": trials,
            "jobs": common.jobs,
        }),
        Some(common.seed),
    )
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_os_string();
    s.push(suffix);
    PathBuf::from(s)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Input(format!("csv write: {e}"))
}
