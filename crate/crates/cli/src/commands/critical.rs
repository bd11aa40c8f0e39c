//! `critical`: Monte Carlo over the critical-window limit process plus the
//! moderate-deviation rate curve for the largest component (the latter
//! drawn at the same drift value, reproducing the rate-curve figure at
//! theta = 2).

use clap::Args as ClapArgs;
use giantscope_core::critical::breve_i_beta;
use giantscope_core::limits::{default_horizon, excursions, simulate_critical_limit};

use crate::commands::{check, GridSpec};
use crate::csvio::CsvWriter;
use crate::error::CliError;
use crate::harness::mc_harness;
use crate::jsonio::write_json;
use crate::meta::Meta;
use crate::svg::{line_plot, Series, PALETTE};
use crate::{forbid_seedless, Cli};

#[derive(ClapArgs, Debug)]
pub struct Args {
    /// Drift of the parabolic-drift Brownian motion (and of the rate curve)
    #[arg(long, default_value_t = 0.0)]
    pub theta: f64,

    /// Replications of the limit process
    #[arg(long, default_value_t = 1000)]
    pub reps: u64,

    /// Master seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Time horizon (default 2 theta^+ + 6)
    #[arg(long)]
    pub t_max: Option<f64>,

    /// Euler step (default 1e-3 * horizon)
    #[arg(long)]
    pub dt: Option<f64>,

    /// Grid for the rate curve over the largest-component size
    #[arg(long)]
    pub grid: Option<GridSpec>,
}

pub fn run(cli: &Cli, args: &Args) -> Result<(), CliError> {
    forbid_seedless(cli)?;
    check(args.reps >= 1, "need at least one replication")?;
    let t_max = args.t_max.unwrap_or_else(|| default_horizon(args.theta));
    check(t_max > 0.0 && t_max.is_finite(), "--t-max must be positive")?;
    let dt = args.dt.unwrap_or(1e-3 * t_max);
    check(dt > 0.0 && dt < t_max, "--dt must lie in (0, t_max)")?;

    let mut meta = Meta::new("critical");
    meta.push("theta", args.theta)
        .push("reps", args.reps)
        .push("seed", args.seed)
        .push("t_max", t_max)
        .push("dt", dt);

    // Monte Carlo over the limit process
    let names = ["longest_len", "longest_marks", "total_marks", "sup_x"];
    let theta = args.theta;
    let summary = mc_harness(&names, args.reps, args.seed, |seed| {
        let path = simulate_critical_limit(theta, t_max, dt, seed);
        let (lens, marks) = excursions(&path, 2.0 * dt);
        vec![
            lens.first().copied().unwrap_or(0.0),
            marks.first().copied().unwrap_or(0) as f64,
            *path.marks().last().unwrap() as f64,
            path.sup(),
        ]
    });
    write_json(
        &cli.out.join("critical_summary.json"),
        &meta,
        serde_json::to_value(&summary).map_err(|e| CliError::internal(e.to_string()))?,
    )?;

    // one exported path: t, x, marks
    let path = simulate_critical_limit(theta, t_max, dt, giantscope_core::RngSeed::new(args.seed, 0));
    let mut out = CsvWriter::create(&cli.out.join("critical_path.csv"), &meta, &["t", "x", "marks"])?;
    for i in 0..path.x().len() {
        out.row(&[
            crate::csvio::format_f64(i as f64 * dt),
            crate::csvio::format_f64(path.x()[i]),
            path.marks()[i].to_string(),
        ])?;
    }
    out.finish()?;

    // rate curve for the largest critical component
    let grid = args
        .grid
        .unwrap_or_else(|| GridSpec::new(0.0, 3.0 * theta.max(0.0) + 2.0, 0.005));
    check(grid.lo >= 0.0, "rate curve sizes must be non-negative")?;
    let mut curve = CsvWriter::create(
        &cli.out.join("critical_ibeta.csv"),
        &meta,
        &["u", "breve_i_beta"],
    )?;
    let mut pts = Vec::new();
    for u in grid.points() {
        let v = breve_i_beta(u, theta);
        curve.row_f64(&[u, v])?;
        pts.push((u, v));
    }
    curve.finish()?;

    if cli.svg {
        let series = [Series {
            label: format!("theta = {theta}"),
            points: pts,
            color: PALETTE[1],
        }];
        let svg = line_plot(
            "moderate deviations of the largest critical component",
            "u",
            "breve I_beta(u)",
            &series,
        );
        std::fs::write(cli.out.join("fig_critical_ibeta.svg"), svg)?;
    }
    Ok(())
}
