//! `mheal` command line: ingest a dataset, run one stage of the library, and
//! leave deterministic artifacts under the output directory plus a JSON run
//! report on stdout.
//!
//! Exit codes: 0 success, 1 usage, 2 unreadable or malformed data, 3 numeric
//! failure during computation. Failures print a JSON error object to stderr.

use clap::{Args, Parser, Subcommand, ValueEnum};
use mheal::clustering::{matched_accuracy, spherical_kmeans};
use mheal::derive_seed;
use mheal::evaluation::{boundary_partition, match_losses, Direction};
use mheal::geometry::{
    concentration_test, gaussian_project, normalize_to_sphere, order_preservation_check,
    NormalizeMode, OrderKind, ProjectionMatrix,
};
use mheal::io::{self, InputFormat};
use mheal::pipeline::{run_mheal, MhealConfig};
use mheal::report::{self, RunReport};
use mheal::selection::{approximation_loss_check, greedy_select, maxmin_select, sandwich_bounds};
use mheal::versionspace::run_study;
use mheal::{Error, PointSet, UnitPointSet};
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "mheal",
    version,
    about = "Coreset selection by minimal hyperspherical energy over spherical clusters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliFormat {
    Csv,
    Libsvm,
    Idx,
}

impl CliFormat {
    fn to_io(self) -> InputFormat {
        match self {
            CliFormat::Csv => InputFormat::Csv,
            CliFormat::Libsvm => InputFormat::Libsvm,
            CliFormat::Idx => InputFormat::Idx,
        }
    }

    fn name(self) -> &'static str {
        match self {
            CliFormat::Csv => "csv",
            CliFormat::Libsvm => "libsvm",
            CliFormat::Idx => "idx",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliRule {
    /// Product-of-distances greedy tried from every start.
    Greedy,
    /// Max-min (farthest-point) selection from --init.
    Maxmin,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliNormalize {
    /// Divide each row by its l2 norm.
    L2,
    /// Z-score columns first, then l2-normalize rows.
    Gaussian,
}

impl CliNormalize {
    fn to_mode(self) -> NormalizeMode {
        match self {
            CliNormalize::L2 => NormalizeMode::L2,
            CliNormalize::Gaussian => NormalizeMode::GaussianStandardizeThenL2,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliDirection {
    /// Flag the densest neighborhoods.
    HighEnergy,
    /// Flag the most isolated points.
    LowEnergy,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliOrder {
    Geodesic,
    Angle,
}

#[derive(Args)]
struct CommonArgs {
    /// Input data file.
    #[arg(long)]
    input: PathBuf,

    /// Input format.
    #[arg(long, value_enum, default_value_t = CliFormat::Csv)]
    format: CliFormat,

    /// Skip the first line of a csv input.
    #[arg(long)]
    has_header: bool,

    /// Treat the last csv column as a +/-1 label.
    #[arg(long)]
    label_last: bool,

    /// Directory artifacts are written into.
    #[arg(long, env = "MHEAL_OUTPUT_DIR", default_value = "out")]
    output_dir: PathBuf,

    /// Root seed; every seeded stage derives its own seed from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl CommonArgs {
    fn ingest(&self) -> Result<io::Ingested, Error> {
        io::ingest(
            &self.input,
            self.format.to_io(),
            self.has_header,
            self.label_last,
        )
    }

    fn config_echo(&self) -> serde_json::Value {
        serde_json::json!({
            "input": self.input.display().to_string(),
            "format": self.format.name(),
            "has_header": self.has_header,
            "label_last": self.label_last,
            "output_dir": self.output_dir.display().to_string(),
            "seed": self.seed,
        })
    }

    fn prepare_output(&self) -> Result<(), Error> {
        std::fs::create_dir_all(&self.output_dir)?;
        Ok(())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.output_dir.join(name)
    }
}

/// l2-normalize ingested rows, recording nothing (plain l2 has no
/// zero-variance bookkeeping).
fn unit_rows(points: &PointSet) -> Result<UnitPointSet, Error> {
    Ok(normalize_to_sphere(points, NormalizeMode::L2)?.points)
}

fn merge_config(mut base: serde_json::Value, extra: serde_json::Value) -> serde_json::Value {
    let obj = base.as_object_mut().unwrap();
    for (k, v) in extra.as_object().unwrap() {
        obj.insert(k.clone(), v.clone());
    }
    base
}

#[derive(Subcommand)]
enum Command {
    /// Select a coreset from the l2-normalized rows.
    Select {
        #[command(flatten)]
        common: CommonArgs,
        /// How many points to select.
        #[arg(long)]
        budget: usize,
        #[arg(long, value_enum, default_value_t = CliRule::Greedy)]
        rule: CliRule,
        /// Starting index for the maxmin rule.
        #[arg(long, default_value_t = 0)]
        init: usize,
    },
    /// Spherical k-means over the l2-normalized rows.
    Cluster {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 60)]
        max_iters: usize,
    },
    /// Full pipeline: cluster, rotation-search per-cluster inits, max-min
    /// selection of tau representatives per cluster.
    Mheal {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        k: usize,
        /// Per-cluster selection budget.
        #[arg(long)]
        tau: usize,
        /// Rotation-candidate count per cluster; default min(32, cluster size).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum, default_value_t = CliNormalize::L2)]
        normalize: CliNormalize,
    },
    /// Distribution-matching losses (kl, mmd, mean distance) between the raw
    /// rows and coresets of each requested budget.
    Match {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated coreset sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        budgets: Vec<usize>,
        /// Smoothing offset added to subset histogram bins in the kl loss.
        #[arg(long, default_value_t = 1e-6)]
        beta: f64,
        #[arg(long, value_enum, default_value_t = CliRule::Maxmin)]
        rule: CliRule,
        #[arg(long, default_value_t = 0)]
        init: usize,
    },
    /// Partition the l2-normalized rows by k-nearest-neighbor log-inverse
    /// distance energy.
    Boundary {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 5)]
        knn_k: usize,
        /// Fraction of points flagged, strictly inside (0, 1).
        #[arg(long, default_value_t = 0.3)]
        fraction: f64,
        #[arg(long, value_enum, default_value_t = CliDirection::HighEnergy)]
        direction: CliDirection,
    },
    /// Version-space pruning study: uniform sampling vs per-cluster
    /// round-robin, paired over seeds. Requires labels.
    Prune {
        #[command(flatten)]
        common: CommonArgs,
        /// Hypothesis pool size.
        #[arg(long, default_value_t = 10_000)]
        pool: usize,
        #[arg(long, default_value_t = 500)]
        rounds: usize,
        #[arg(long, default_value_t = 10.0)]
        theta0_iwal: f64,
        /// Default is (xi/k)/r with xi=1, r=0.1, k=3.
        #[arg(long, default_value_t = 10.0 / 3.0)]
        theta0_mheal: f64,
        /// Cluster count for the per-cluster stream.
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Comma-separated study seeds.
        #[arg(long, value_delimiter = ',', default_values_t = vec![0u64, 1, 2, 3, 4])]
        seeds: Vec<u64>,
    },
    /// Gaussian random projection of the raw rows, with a Monte-Carlo
    /// concentration report (which always projects to kappa = input dim).
    Project {
        #[command(flatten)]
        common: CommonArgs,
        /// Output dimension of the projection artifact; default keeps the
        /// input dimension.
        #[arg(long)]
        kappa: Option<usize>,
        /// Entry standard deviation before the 1/sqrt(kappa) scale.
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        /// Concentration band half-width, in [0, 1].
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        /// Monte-Carlo pair count.
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        /// Also measure pairwise-order preservation under this metric.
        #[arg(long, value_enum)]
        order: Option<CliOrder>,
    },
    /// Sweep the energy sandwich bounds over every prefix of a max-min
    /// selection and report the approximation-loss envelope.
    CheckBounds {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 8)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        init: usize,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => report::EXIT_USAGE,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = run(cli.command) {
        eprintln!("{}", report::error_json(&err));
        std::process::exit(report::exit_code(&err));
    }
}

fn run(command: Command) -> Result<(), Error> {
    let started = Instant::now();
    match command {
        Command::Select {
            common,
            budget,
            rule,
            init,
        } => {
            let data = common.ingest()?;
            common.prepare_output()?;
            let unit = unit_rows(&data.points)?;
            let mut rep = RunReport::new(
                "select",
                merge_config(
                    common.config_echo(),
                    serde_json::json!({
                        "budget": budget,
                        "rule": if rule == CliRule::Greedy { "greedy" } else { "maxmin" },
                        "init": init,
                    }),
                ),
            );
            let indices_path = common.path("indices.csv");
            let json_path = common.path("selection.json");
            match rule {
                CliRule::Greedy => {
                    let out = greedy_select(&unit, budget)?;
                    io::write_indices_csv(&indices_path, &out.selected)?;
                    io::write_json(&json_path, &out)?;
                    rep.counter("distance_evals", out.distance_evals);
                    rep.counter("degenerate_picks", out.degenerate_picks);
                }
                CliRule::Maxmin => {
                    let out = maxmin_select(&unit, budget, init)?;
                    io::write_indices_csv(&indices_path, &out.selected)?;
                    io::write_json(&json_path, &out)?;
                    rep.counter("distance_evals", out.distance_evals);
                }
            }
            rep.artifact(&indices_path);
            rep.artifact(&json_path);
            rep.emit(started);
        }
        Command::Cluster {
            common,
            k,
            max_iters,
        } => {
            let data = common.ingest()?;
            common.prepare_output()?;
            let unit = unit_rows(&data.points)?;
            let model = spherical_kmeans(&unit, k, max_iters, derive_seed(common.seed, "kmeans"))?;
            let mut rep = RunReport::new(
                "cluster",
                merge_config(
                    common.config_echo(),
                    serde_json::json!({"k": k, "max_iters": max_iters}),
                ),
            );
            rep.counter("iterations", model.iterations_run as u64);
            rep.counter("reseeds", model.reseeds as u64);
            let assignments_path = common.path("assignments.csv");
            io::write_indices_csv(&assignments_path, &model.assignments)?;
            let json_path = common.path("clusters.json");
            if let Some(labels) = &data.labels {
                let accuracy = matched_accuracy(&model.assignments, labels, k)?;
                io::write_json(
                    &json_path,
                    &serde_json::json!({"model": model, "matched_accuracy": accuracy}),
                )?;
            } else {
                io::write_json(&json_path, &serde_json::json!({ "model": model }))?;
            }
            rep.artifact(&assignments_path);
            rep.artifact(&json_path);
            rep.emit(started);
        }
        Command::Mheal {
            common,
            k,
            tau,
            m,
            normalize,
        } => {
            let data = common.ingest()?;
            common.prepare_output()?;
            let config = MhealConfig {
                k,
                tau,
                m,
                seed: common.seed,
                normalize: normalize.to_mode(),
                kmeans_max_iters: 60,
            };
            let out = run_mheal(&data.points, &config)?;
            let mut rep = RunReport::new(
                "mheal",
                merge_config(
                    common.config_echo(),
                    serde_json::json!({
                        "k": k,
                        "tau": tau,
                        "m": m,
                        "normalize": if normalize == CliNormalize::L2 { "l2" } else { "gaussian" },
                    }),
                ),
            );
            for w in &out.warnings {
                rep.warn(w.to_string());
            }
            rep.counter(
                "distance_evals",
                out.set.per_cluster.iter().map(|c| c.distance_evals).sum(),
            );
            rep.counter("kmeans_iterations", out.model.iterations_run as u64);
            let indices_path = common.path("indices.csv");
            io::write_indices_csv(&indices_path, &out.set.flat)?;
            let json_path = common.path("mheal.json");
            io::write_json(
                &json_path,
                &serde_json::json!({
                    "set": out.set,
                    "model": out.model,
                    "warnings": out.warnings,
                }),
            )?;
            rep.artifact(&indices_path);
            rep.artifact(&json_path);
            rep.emit(started);
        }
        Command::Match {
            common,
            budgets,
            beta,
            rule,
            init,
        } => {
            let data = common.ingest()?;
            common.prepare_output()?;
            let unit = unit_rows(&data.points)?;
            let mut rows = Vec::with_capacity(budgets.len());
            let mut reports = Vec::with_capacity(budgets.len());
            for &budget in &budgets {
                let selected = match rule {
                    CliRule::Greedy => greedy_select(&unit, budget)?.selected,
                    CliRule::Maxmin => maxmin_select(&unit, budget, init)?.selected,
                };
                let subset = data.points.gather(&selected)?;
                let losses = match_losses(&data.points, &subset, beta)?;
                rows.push((budget, losses.kl, losses.mmd, losses.mmd_mu));
                reports.push(serde_json::json!({
                    "budget": budget,
                    "selected": selected,
                    "losses": losses,
                }));
            }
            let mut rep = RunReport::new(
                "match",
                merge_config(
                    common.config_echo(),
                    serde_json::json!({
                        "budgets": budgets,
                        "beta": beta,
                        "rule": if rule == CliRule::Greedy { "greedy" } else { "maxmin" },
                        "init": init,
                    }),
                ),
            );
            let csv_path = common.path("match.csv");
            io::write_match_csv(&csv_path, &rows)?;
            let json_path = common.path("match.json");
            io::write_json(&json_path, &reports)?;
            rep.artifact(&csv_path);
            rep.artifact(&json_path);
            rep.emit(started);
        }
        Command::Boundary {
            common,
            knn_k,
            fraction,
            direction,
        } => {
            let data = common.ingest()?;
            common.prepare_output()?;
            let unit = unit_rows(&data.points)?;
            let dir = match direction {
                CliDirection::HighEnergy => Direction::HighEnergy,
                CliDirection::LowEnergy => Direction::LowEnergy,
            };
            let part = boundary_partition(unit.points(), knn_k, fraction, dir)?;
            let mut rep = RunReport::new(
                "boundary",
                merge_config(
                    common.config_echo(),
                    serde_json::json!({
                        "knn_k": knn_k,
                        "fraction": fraction,
                        "direction": if dir == Direction::HighEnergy { "high_energy" } else { "low_energy" },
                    }),
                ),
            );
            if !part.degenerate.is_empty() {
                rep.warn(format!(
                    "{} point(s) have duplicate nearest neighbors and infinite scores: {:?}",
                    part.degenerate.len(),
                    part.degenerate
                ));
            }
            let in_path = common.path("in_version_space.csv");
            io::write_indices_csv(&in_path, &part.in_version_space)?;
            let json_path = common.path("boundary.json");
            io::write_json(&json_path, &part)?;
            rep.artifact(&in_path);
            rep.artifact(&json_path);
            rep.emit(started);
        }
        Command::Prune {
            common,
            pool,
            rounds,
            theta0_iwal,
            theta0_mheal,
            k,
            seeds,
        } => {
            let data = common.ingest()?;
            let labels = data.labels.as_ref().ok_or(Error::EmptyData)?;
            common.prepare_output()?;
            let study = run_study(
                &data.points,
                labels,
                pool,
                rounds,
                theta0_iwal,
                theta0_mheal,
                k,
                &seeds,
            )?;
            let mut rep = RunReport::new(
                "prune",
                merge_config(
                    common.config_echo(),
                    serde_json::json!({
                        "pool": pool,
                        "rounds": rounds,
                        "theta0_iwal": theta0_iwal,
                        "theta0_mheal": theta0_mheal,
                        "k": k,
                        "seeds": seeds,
                    }),
                ),
            );
            let survivors_path = common.path("survivors.csv");
            io::write_study_csv(&survivors_path, &study.survivors)?;
            let error_path = common.path("error.csv");
            io::write_study_csv(&error_path, &study.error)?;
            let labels_path = common.path("labels.csv");
            io::write_study_csv(&labels_path, &study.labels)?;
            let per_seed: Vec<serde_json::Value> = study
                .runs
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "seed": r.seed,
                        "iwal_final_survivors": r.iwal.rows.last().map(|t| t.survivors),
                        "iwal_labels": r.iwal.rows.last().map(|t| t.cumulative_labels),
                        "mheal_final_survivors": r.mheal.rows.last().map(|t| t.survivors),
                        "mheal_labels": r.mheal.rows.last().map(|t| t.cumulative_labels),
                    })
                })
                .collect();
            let json_path = common.path("prune.json");
            io::write_json(&json_path, &serde_json::json!({ "per_seed": per_seed }))?;
            rep.artifact(&survivors_path);
            rep.artifact(&error_path);
            rep.artifact(&labels_path);
            rep.artifact(&json_path);
            rep.emit(started);
        }
        Command::Project {
            common,
            kappa,
            sigma,
            epsilon,
            trials,
            order,
        } => {
            let data = common.ingest()?;
            common.prepare_output()?;
            let kappa = kappa.unwrap_or(data.points.dim());
            let proj = ProjectionMatrix::generate(
                kappa,
                data.points.dim(),
                sigma,
                derive_seed(common.seed, "projection"),
            )?;
            let projected = gaussian_project(&data.points, &proj)?;
            let concentration = concentration_test(
                &data.points,
                epsilon,
                sigma,
                trials,
                derive_seed(common.seed, "concentration"),
            )?;
            let order_report = match order {
                Some(kind) => Some(order_preservation_check(
                    &data.points,
                    &proj,
                    match kind {
                        CliOrder::Geodesic => OrderKind::Geodesic,
                        CliOrder::Angle => OrderKind::Angle,
                    },
                    epsilon,
                    derive_seed(common.seed, "order"),
                )?),
                None => None,
            };
            let mut rep = RunReport::new(
                "project",
                merge_config(
                    common.config_echo(),
                    serde_json::json!({
                        "kappa": kappa,
                        "sigma": sigma,
                        "epsilon": epsilon,
                        "trials": trials,
                        "order": order.map(|o| if o == CliOrder::Geodesic { "geodesic" } else { "angle" }),
                    }),
                ),
            );
            rep.counter("trials", concentration.trials);
            rep.counter("violations", concentration.violations);
            let projected_path = common.path("projected.csv");
            io::write_points_csv(&projected_path, &projected)?;
            let json_path = common.path("projection.json");
            io::write_json(
                &json_path,
                &serde_json::json!({
                    "kappa": kappa,
                    "sigma": sigma,
                    "matrix_seed": proj.seed(),
                    "concentration": concentration,
                    "order": order_report,
                }),
            )?;
            rep.artifact(&projected_path);
            rep.artifact(&json_path);
            rep.emit(started);
        }
        Command::CheckBounds {
            common,
            budget,
            init,
        } => {
            let data = common.ingest()?;
            common.prepare_output()?;
            let unit = unit_rows(&data.points)?;
            let run = maxmin_select(&unit, budget, init)?;
            let mut csv = String::from(
                "prefix,candidate,lower,middle,energy,upper_loss_bound,hypothesis_holds,chain_holds\n",
            );
            let mut states = 0u64;
            let mut chain_failures = 0u64;
            for prefix in 2..=run.selected.len() {
                let selected = &run.selected[..prefix];
                for candidate in 0..unit.rows() {
                    if selected.contains(&candidate) {
                        continue;
                    }
                    let b = sandwich_bounds(&unit, selected, candidate)?;
                    states += 1;
                    if b.chain_holds == Some(false) {
                        chain_failures += 1;
                    }
                    csv.push_str(&format!(
                        "{},{},{:?},{:?},{:?},{:?},{},{}\n",
                        prefix,
                        candidate,
                        b.lower,
                        b.middle,
                        b.energy,
                        b.upper_loss_bound,
                        b.hypothesis_holds,
                        b.chain_holds.map_or("na".to_string(), |c| c.to_string()),
                    ));
                }
            }
            let envelope = approximation_loss_check(&unit, &run.selected)?;
            let mut rep = RunReport::new(
                "check-bounds",
                merge_config(
                    common.config_echo(),
                    serde_json::json!({"budget": budget, "init": init}),
                ),
            );
            rep.counter("bound_states", states);
            rep.counter("chain_failures", chain_failures);
            rep.counter("distance_evals", run.distance_evals);
            if chain_failures > 0 {
                rep.warn(format!("{chain_failures} bound state(s) broke the chain"));
            }
            let csv_path = common.path("bounds.csv");
            std::fs::write(&csv_path, csv)?;
            let json_path = common.path("bounds.json");
            io::write_json(
                &json_path,
                &serde_json::json!({
                    "selected": run.selected,
                    "covering_radius": run.covering_radius,
                    "envelope": envelope,
                    "states": states,
                    "chain_failures": chain_failures,
                }),
            )?;
            rep.artifact(&csv_path);
            rep.artifact(&json_path);
            rep.emit(started);
        }
    }
    Ok(())
}
