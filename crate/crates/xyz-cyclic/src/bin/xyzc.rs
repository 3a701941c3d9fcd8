//! Batch front door for the XYZ cyclic code library: construct and inspect
//! codes, estimate distances, reproduce the optimal-code table, and run
//! threshold sweep campaigns. CSV goes to standard output (or `--out`);
//! progress and diagnostics go to standard error.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use xyz_cyclic::decoder::{BpVariant, DecoderConfig, Schedule};
use xyz_cyclic::distance::{
    distance_upper_bound, exhaustive_distance_with_budget, overhead_pair, search_optimal,
    DistanceReport,
};
use xyz_cyclic::family::{
    build_code, code_dimension, has_repetition_structure, seed_generator, x_logical_witness,
    y_logical_witness, XYZParams,
};
use xyz_cyclic::noise::{threshold_sweep, NoiseKind, SimConfig, CSV_HEADER};
use xyz_cyclic::oracle::{enumerate_logicals, EnumerationBudget};
use xyz_cyclic::pauli::Axis;

#[derive(Parser)]
#[command(name = "xyzc", about = "XYZ cyclic code toolbox", version)]
struct Cli {
    /// Cap the worker thread count (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write primary output to a file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct DecoderOpts {
    /// Maximum BP iterations.
    #[arg(long, default_value_t = 100)]
    max_iterations: usize,
    /// BP variant: "product" or "min-sum".
    #[arg(long, default_value = "product")]
    bp_variant: String,
    /// Normalization factor for min-sum.
    #[arg(long, default_value_t = 0.625)]
    min_sum_scale: f64,
    /// OSD re-encoding order (0 = information-set solution only).
    #[arg(long, default_value_t = 0)]
    osd_order: usize,
    /// Message schedule: "parallel" or "serial".
    #[arg(long, default_value = "parallel")]
    schedule: String,
}

impl DecoderOpts {
    fn build(&self) -> Result<DecoderConfig, String> {
        Ok(DecoderConfig {
            max_bp_iterations: self.max_iterations,
            bp_variant: parse_variant(&self.bp_variant, self.min_sum_scale)?,
            osd_order: self.osd_order,
            schedule: parse_schedule(&self.schedule)?,
        })
    }
}

fn parse_variant(name: &str, scale: f64) -> Result<BpVariant, String> {
    match name {
        "product" => Ok(BpVariant::ProductDomain),
        "min-sum" | "min_sum" => Ok(BpVariant::MinSum { scale }),
        other => Err(format!("unknown bp variant {other:?}")),
    }
}

fn parse_schedule(name: &str) -> Result<Schedule, String> {
    match name {
        "parallel" => Ok(Schedule::Parallel),
        "serial" => Ok(Schedule::Serial),
        other => Err(format!("unknown schedule {other:?}")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Construct C(a,b) and report its structural properties.
    Construct {
        #[arg(short)]
        a: usize,
        #[arg(short)]
        b: usize,
    },
    /// Report the code dimension, closed form against the rank cross-check.
    Dimension {
        #[arg(short)]
        a: usize,
        #[arg(short)]
        b: usize,
    },
    /// Monte Carlo distance upper bounds, optionally confirmed exhaustively.
    Distance {
        #[arg(short)]
        a: usize,
        #[arg(short)]
        b: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also run the exhaustive oracle up to this weight.
        #[arg(long)]
        exact: Option<usize>,
        #[command(flatten)]
        decoder: DecoderOpts,
    },
    /// Closed-form logical witnesses (kind "x" needs -b and -l; kind "y"
    /// needs -a and -b).
    Witness {
        /// "x" or "y".
        kind: String,
        #[arg(short)]
        a: Option<usize>,
        #[arg(short)]
        b: usize,
        #[arg(short)]
        l: Option<usize>,
    },
    /// Optimal codes per b: CSV of (b, a, n, d_x_up, d_z_up, d_y_up).
    Table1 {
        #[arg(long, default_value_t = 0)]
        b_min: usize,
        #[arg(long)]
        b_max: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        decoder: DecoderOpts,
    },
    /// Threshold sweep campaign from a TOML config document.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Physical-qubit overhead versus the XZZX surface code at distance d.
    Overhead {
        /// Odd distances, repeatable.
        #[arg(short, required = true)]
        d: Vec<usize>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        decoder: DecoderOpts,
    },
    /// Exhaustively enumerate logicals of C(a,b) up to a weight cap.
    Oracle {
        #[arg(short)]
        a: usize,
        #[arg(short)]
        b: usize,
        #[arg(long)]
        w_max: usize,
        #[arg(long, default_value_t = 5_000_000)]
        max_candidates: u64,
    },
}

/// Campaign document for `sweep`; fully determines the run, seed included.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CampaignConfig {
    /// `[a, b]` pairs.
    codes: Vec<[usize; 2]>,
    /// "depolarizing", "z_biased", "pure_x", "pure_y" or "pure_z".
    noise: String,
    eta: Option<f64>,
    p_grid: Vec<f64>,
    trials: usize,
    seed: u64,
    #[serde(default)]
    full_decoder: bool,
    #[serde(default)]
    decoder: DecoderDoc,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct DecoderDoc {
    max_iterations: Option<usize>,
    bp_variant: Option<String>,
    min_sum_scale: Option<f64>,
    osd_order: Option<usize>,
    schedule: Option<String>,
}

impl DecoderDoc {
    fn build(&self) -> Result<DecoderConfig, String> {
        let base = DecoderConfig::default();
        Ok(DecoderConfig {
            max_bp_iterations: self.max_iterations.unwrap_or(base.max_bp_iterations),
            bp_variant: parse_variant(
                self.bp_variant.as_deref().unwrap_or("product"),
                self.min_sum_scale.unwrap_or(0.625),
            )?,
            osd_order: self.osd_order.unwrap_or(base.osd_order),
            schedule: parse_schedule(self.schedule.as_deref().unwrap_or("parallel"))?,
        })
    }
}

fn parse_noise_kind(name: &str, eta: Option<f64>) -> Result<NoiseKind, String> {
    match name {
        "depolarizing" => Ok(NoiseKind::Depolarizing),
        "z_biased" => {
            let eta = eta.ok_or("z_biased noise requires an eta value")?;
            Ok(NoiseKind::ZBiased { eta })
        }
        "pure_x" => Ok(NoiseKind::Pure { sigma: Axis::X }),
        "pure_y" => Ok(NoiseKind::Pure { sigma: Axis::Y }),
        "pure_z" => Ok(NoiseKind::Pure { sigma: Axis::Z }),
        other => Err(format!("unknown noise kind {other:?}")),
    }
}

fn report_lines(params: XYZParams, r: &DistanceReport) -> String {
    format!(
        "a={} b={} n={} d_x_up={} d_z_up={} d_y_up={} trials={} skipped={} seed={}\n\
         witness_x={}\nwitness_z={}\nwitness_y={}\n",
        params.a,
        params.b,
        r.n,
        r.d_x_up,
        r.d_z_up,
        r.d_y_up,
        r.trials,
        r.skipped,
        r.seed,
        r.witness_x,
        r.witness_z,
        r.witness_y
    )
}

fn run(cli: &Cli) -> Result<String, String> {
    match &cli.command {
        Command::Construct { a, b } => {
            let params = XYZParams::new(*a, *b);
            let code = build_code(params);
            let k_closed = code_dimension(params);
            let k_rank = code.num_logical_qubits();
            let mut out = String::new();
            writeln!(out, "n={}", params.n()).unwrap();
            writeln!(out, "k={k_closed} (rank cross-check: {k_rank})").unwrap();
            if k_closed == 1 {
                for axis in Axis::ALL {
                    let ok = has_repetition_structure(params, axis).map_err(|e| e.to_string())?;
                    writeln!(out, "repetition_{}={}", axis.label(), if ok { "yes" } else { "no" })
                        .unwrap();
                }
            } else {
                writeln!(out, "repetition=inapplicable (k=3)").unwrap();
            }
            writeln!(out, "s1={}", seed_generator(params)).unwrap();
            Ok(out)
        }
        Command::Dimension { a, b } => {
            let params = XYZParams::new(*a, *b);
            let k_closed = code_dimension(params);
            let k_rank = build_code(params).num_logical_qubits();
            if k_closed != k_rank {
                return Err(format!(
                    "closed form k={k_closed} disagrees with rank k={k_rank}"
                ));
            }
            Ok(format!("k={k_closed}\n"))
        }
        Command::Distance {
            a,
            b,
            trials,
            seed,
            exact,
            decoder,
        } => {
            let params = XYZParams::new(*a, *b);
            let cfg = decoder.build()?;
            let code = build_code(params);
            let report =
                distance_upper_bound(&code, *trials, &cfg, *seed).map_err(|e| e.to_string())?;
            let mut out = report_lines(params, &report);
            if let Some(w_max) = exact {
                let exact_d =
                    exhaustive_distance_with_budget(&code, *w_max, &EnumerationBudget::default())
                        .map_err(|e| e.to_string())?;
                match exact_d {
                    Some(d) => writeln!(out, "exact_distance={d}").unwrap(),
                    None => writeln!(out, "exact_distance=none_below_{}", w_max + 1).unwrap(),
                }
            }
            Ok(out)
        }
        Command::Witness { kind, a, b, l } => match kind.as_str() {
            "x" => {
                let l = l.ok_or("x witness requires -l")?;
                let w = x_logical_witness(*b, l).map_err(|e| e.to_string())?;
                Ok(format!("witness={w}\nweight={}\n", w.weight()))
            }
            "y" => {
                let a = a.ok_or("y witness requires -a")?;
                let w = y_logical_witness(XYZParams::new(a, *b)).map_err(|e| e.to_string())?;
                Ok(format!("witness={w}\nweight={}\n", w.weight()))
            }
            other => Err(format!("unknown witness kind {other:?}")),
        },
        Command::Table1 {
            b_min,
            b_max,
            trials,
            seed,
            decoder,
        } => {
            let cfg = decoder.build()?;
            let mut out = String::from("# xyzc table1 schema v1\n");
            out.push_str("b,a,n,d_x_up,d_z_up,d_y_up,trials,seed\n");
            for b in *b_min..=*b_max {
                let a_max = 12 * b + 10;
                eprintln!("searching b={b} (a <= {a_max})");
                match search_optimal(b, a_max, *trials, &cfg, *seed).map_err(|e| e.to_string())? {
                    Some((a, r)) => {
                        writeln!(
                            out,
                            "{b},{a},{},{},{},{},{},{seed}",
                            r.n, r.d_x_up, r.d_z_up, r.d_y_up, r.trials
                        )
                        .unwrap();
                    }
                    None => eprintln!("no optimal code found for b={b} within a <= {a_max}"),
                }
            }
            Ok(out)
        }
        Command::Sweep { config } => {
            let text = std::fs::read_to_string(config)
                .map_err(|e| format!("cannot read {}: {e}", config.display()))?;
            let doc: CampaignConfig = toml::from_str(&text).map_err(|e| e.to_string())?;
            if doc.trials == 0 {
                return Err("trials must be positive".into());
            }
            let kind = parse_noise_kind(&doc.noise, doc.eta)?;
            let sim = SimConfig {
                decoder: doc.decoder.build()?,
                force_full_decoder: doc.full_decoder,
            };
            let codes: Vec<XYZParams> =
                doc.codes.iter().map(|&[a, b]| XYZParams::new(a, b)).collect();
            let estimates = threshold_sweep(&codes, kind, &doc.p_grid, doc.trials, &sim, doc.seed)
                .map_err(|e| e.to_string())?;
            let mut out = String::from("# xyzc sweep schema v1\n");
            out.push_str(CSV_HEADER);
            out.push('\n');
            for est in &estimates {
                if est.infeasible > 0 {
                    eprintln!(
                        "warning: {} infeasible trials at a={} b={} p={}",
                        est.infeasible, est.params.a, est.params.b, est.noise.p
                    );
                }
                out.push_str(&est.csv_row());
                out.push('\n');
            }
            Ok(out)
        }
        Command::Overhead {
            d,
            trials,
            seed,
            decoder,
        } => {
            let cfg = decoder.build()?;
            let mut out = String::from("# xyzc overhead schema v1\n");
            out.push_str("d,xyz_n,xzzx_n\n");
            for &dist in d {
                let (xyz_n, xzzx_n) =
                    overhead_pair(dist, *trials, &cfg, *seed).map_err(|e| e.to_string())?;
                writeln!(out, "{dist},{xyz_n},{xzzx_n}").unwrap();
            }
            Ok(out)
        }
        Command::Oracle {
            a,
            b,
            w_max,
            max_candidates,
        } => {
            let params = XYZParams::new(*a, *b);
            let code = build_code(params);
            let budget = EnumerationBudget {
                max_candidates: *max_candidates,
                max_weight: *w_max,
            };
            let found = enumerate_logicals(&code, *w_max, &budget).map_err(|e| e.to_string())?;
            let mut out = String::new();
            match found.min_weight() {
                Some(w) => writeln!(out, "min_logical_weight={w}").unwrap(),
                None => writeln!(out, "min_logical_weight=none_below_{}", w_max + 1).unwrap(),
            }
            for (class, members) in &found.classes {
                let tag = match class {
                    Some((kx, kz)) => format!("class_sympX{kx}_sympZ{kz}"),
                    None => "class_unkeyed".into(),
                };
                writeln!(out, "{tag}={}", members.len()).unwrap();
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: cannot configure thread pool: {e}");
            return ExitCode::FAILURE;
        }
    }
    match run(&cli) {
        Ok(output) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &output) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::FAILURE;
                }
            } else {
                let mut stdout = std::io::stdout().lock();
                if stdout.write_all(output.as_bytes()).is_err() {
                    return ExitCode::FAILURE;
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
