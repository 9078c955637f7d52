// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use proxcurve::bounds;
use proxcurve::harness::emit::{emit, write_levels_jsonl, write_vertices_csv};
use proxcurve::harness::sweep::{sweep, write_sweep_csv, DEFAULT_SWEEP};
use proxcurve::harness::{execute, geodesic_oracle_2d, Scenario};
use proxcurve::space::estimate::{estimate_rho, estimate_zeta_plus};
use proxcurve::{build_curve, polyline_length, SpaceModel};

#[derive(Parser)]
#[command(name = "proxcurve", version, about = "Slice-projection curves in proximally smooth sets of lp^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Absolute slack for bound comparisons.
    #[arg(long)]
    tol: Option<f64>,
    /// Override the builder's maximal depth.
    #[arg(long)]
    max_depth: Option<usize>,
    /// Seed for sampling estimators.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for output files.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate rho and zeta+ for an lp space and check them against the model.
    Moduli {
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.5, 1.0])]
        taus: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.2, 0.3, 0.4, 0.5])]
        eps: Vec<f64>,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Build the curve and write the vertex table and per-level statistics.
    Build {
        scenario: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Build the curve, run every enabled check and print the report.
    Verify {
        scenario: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Grid shortest path between the scenario endpoints (2D only).
    Oracle {
        scenario: PathBuf,
        #[arg(long)]
        grid_n: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Re-run a scenario for a list of endpoint distances and emit a CSV.
    Sweep {
        scenario: PathBuf,
        #[arg(long, value_delimiter = ',')]
        d: Vec<f64>,
        /// Boundary parameter of the first endpoint.
        #[arg(long, default_value_t = 0.0)]
        start: f64,
        #[command(flatten)]
        common: Common,
    },
}

fn load(path: &Path, common: &Common) -> Result<Scenario> {
    let mut s = Scenario::load(path).with_context(|| format!("loading {}", path.display()))?;
    if let Some(tol) = common.tol {
        s.config.tolerances.bound_slack = tol;
    }
    if let Some(k) = common.max_depth {
        s.config.builder.max_depth = k;
    }
    Ok(s)
}

fn out_dir(s: &Scenario, common: &Common) -> Option<PathBuf> {
    common.out_dir.clone().or_else(|| s.config.output.dir.as_ref().map(PathBuf::from))
}

fn print_json(value: &serde_json::Value) -> Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn moduli(p: f64, dim: usize, taus: &[f64], eps: &[f64], budget: usize, common: &Common) -> Result<bool> {
    let space = SpaceModel::lp(p, dim)?;
    let model = space.modulus();
    let slack = common.tol.unwrap_or(1e-8);
    let mut ok = true;
    let mut rho_rows = Vec::new();
    for &tau in taus {
        let est = estimate_rho(&space, tau, budget, common.seed)?;
        let lower = (1.0 + tau * tau).sqrt() - 1.0;
        let in_bracket = est >= lower - slack && est <= tau + slack;
        let below_model = est <= model.rho(tau)? + slack;
        ok &= in_bracket && below_model;
        rho_rows.push(json!({
            "tau": tau, "estimate": est, "model": model.rho(tau)?,
            "day_nordlander": in_bracket, "model_is_upper_bound": below_model,
        }));
    }
    let mut zeta_rows = Vec::new();
    for &e in eps {
        let est = estimate_zeta_plus(&space, e, budget, common.seed)?;
        let lo = 1.0 + estimate_rho(&space, e / (2.0 * (1.0 + e)), budget, common.seed)?;
        let hi = 1.0 + model.rho(2.0 * e)?;
        let in_bracket = est >= lo - slack && est <= hi + slack;
        ok &= in_bracket;
        zeta_rows.push(json!({ "eps": e, "estimate": est, "lower": lo, "upper": hi, "sandwich": in_bracket }));
    }
    let pt = model.power_type();
    print_json(&json!({
        "space": space,
        "power_type": pt,
        "omega_inv_eighth": bounds::omega_inv_eighth(model)?,
        "beta_L": bounds::beta_l(model)?,
        "beta_I": bounds::beta_i(model, pt.s)?,
        "rho": rho_rows,
        "zeta_plus": zeta_rows,
        "pass": ok,
    }))?;
    Ok(ok)
}

fn build(path: &Path, common: &Common) -> Result<bool> {
    let s = load(path, common)?;
    let curve = build_curve(&s.space, &s.set, &s.x0, &s.x1, &s.build_params())?;
    let summary = json!({
        "depth": curve.depth,
        "vertices": curve.vertices.len(),
        "polyline_length": polyline_length(&curve),
        "deltas": curve.deltas,
        "truncation_bound": curve.truncation_bound,
    });
    if let Some(dir) = out_dir(&s, common) {
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        let v = dir.join(&s.config.output.vertices);
        write_vertices_csv(fs::File::create(&v)?, s.space.dim(), Some(&curve))?;
        let l = dir.join(&s.config.output.levels);
        write_levels_jsonl(io::BufWriter::new(fs::File::create(&l)?), &curve)?;
    }
    print_json(&summary)?;
    Ok(true)
}

fn verify(path: &Path, common: &Common) -> Result<bool> {
    let s = load(path, common)?;
    let (report, curve) = execute(&s);
    if let Some(dir) = out_dir(&s, common) {
        emit(&report, curve.as_ref(), s.space.dim(), &dir, &s.config.output)?;
    }
    writeln!(io::stdout().lock(), "{}", report.to_canonical_json())?;
    Ok(report.pass)
}

fn oracle(path: &Path, grid_n: Option<usize>, common: &Common) -> Result<bool> {
    let s = load(path, common)?;
    let n = grid_n.unwrap_or(s.config.oracle.grid_n);
    let r = geodesic_oracle_2d(&s.space, &s.set, &s.x0, &s.x1, n)?;
    print_json(&json!({
        "length": r.length,
        "h": r.h,
        "grid_n": r.grid_n,
        "metrication_error": r.metrication_error,
        "chord": s.space.norm(&(&s.x1 - &s.x0))?,
    }))?;
    Ok(true)
}

fn run_sweep(path: &Path, ds: &[f64], start: f64, common: &Common) -> Result<bool> {
    let s = load(path, common)?;
    let ds = if ds.is_empty() { DEFAULT_SWEEP.to_vec() } else { ds.to_vec() };
    if ds.iter().any(|d| d.is_nan() || *d <= 0.0) {
        bail!("sweep distances must be positive");
    }
    let rows = sweep(&s, &ds, start)?;
    match out_dir(&s, common) {
        Some(dir) => {
            fs::create_dir_all(&dir)?;
            write_sweep_csv(fs::File::create(dir.join("sweep.csv"))?, &rows)?;
        }
        None => write_sweep_csv(io::stdout().lock(), &rows)?,
    }
    Ok(rows.iter().all(|r| r.all_checks_pass))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Moduli { p, dim, taus, eps, budget, common } => moduli(*p, *dim, taus, eps, *budget, common),
        Command::Build { scenario, common } => build(scenario, common),
        Command::Verify { scenario, common } => verify(scenario, common),
        Command::Oracle { scenario, grid_n, common } => oracle(scenario, *grid_n, common),
        Command::Sweep { scenario, d, start, common } => run_sweep(scenario, d, *start, common),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
