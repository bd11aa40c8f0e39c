//! `traj`: generate an optimal trajectory, export it as CSV, and report
//! the quadrature-vs-closed-form cross-check (JSON). A gap beyond the
//! quadrature budget is an internal check failure.

use clap::Args as ClapArgs;
use serde_json::json;

use giantscope_core::variational::{
    breve_i_s_functional, critical_excursion_cost, critical_regulator, i_phi_functional,
    i_q_functional, i_s_functional, lln_curves, optimal_excursion, optimal_excursion_critical,
    optimal_regulator, Trajectory,
};

use crate::commands::{check, require};
use crate::csvio::CsvWriter;
use crate::error::CliError;
use crate::jsonio::write_json;
use crate::meta::Meta;
use crate::svg::{line_plot, Series, PALETTE};
use crate::Cli;

#[derive(ClapArgs, Debug)]
pub struct Args {
    /// Which trajectory: excursion | critical | regulator | lln
    #[arg(long = "fn", default_value = "excursion")]
    pub kind: String,

    /// Window start
    #[arg(long)]
    pub s: Option<f64>,

    /// Window end
    #[arg(long)]
    pub t: Option<f64>,

    /// Prescribed excursion area
    #[arg(long)]
    pub w: Option<f64>,

    /// Edge intensity
    #[arg(long)]
    pub c: Option<f64>,

    /// Critical drift parameter
    #[arg(long)]
    pub theta: Option<f64>,

    /// Endpoint mass of the regulator
    #[arg(long)]
    pub a: Option<f64>,

    /// Required flat measure of the regulator
    #[arg(long)]
    pub tau: Option<f64>,

    /// Grid cells
    #[arg(long, default_value_t = 4096)]
    pub cells: usize,
}

/// Quadrature budget for the self-check at the default grid.
const GAP_BUDGET: f64 = 1e-3;

pub fn run(cli: &Cli, args: &Args) -> Result<(), CliError> {
    check(args.cells >= 8, "--cells must be at least 8")?;
    let mut meta = Meta::new("traj");
    meta.push("fn", &args.kind).push("cells", args.cells);

    let (traj, report, extra): (Trajectory, serde_json::Value, Vec<(&str, Trajectory)>) =
        match args.kind.as_str() {
            "excursion" => {
                let (s, t, w) = window(args)?;
                let c = require(args.c, "--c")?;
                check(c > 0.0, "--c must be positive")?;
                meta.push("s", s).push("t", t).push("w", w).push("c", c);
                let (traj, rho, cost) = optimal_excursion(s, t, w, c, args.cells)
                    .map_err(|e| CliError::validation(e.to_string()))?;
                let quad = i_s_functional(&traj, c);
                let gap = (quad - cost).abs();
                if gap > GAP_BUDGET {
                    return Err(CliError::internal(format!(
                        "excursion quadrature {quad} vs closed form {cost}"
                    )));
                }
                let area = traj.integral_simpson();
                (
                    traj,
                    json!({
                        "rho": rho,
                        "closed_form": cost,
                        "quadrature": quad,
                        "gap": gap,
                        "area": area,
                    }),
                    Vec::new(),
                )
            }
            "critical" => {
                let (s, t, w) = window(args)?;
                let theta = require(args.theta, "--theta")?;
                meta.push("s", s).push("t", t).push("w", w).push("theta", theta);
                check(s > 0.0 || w == 0.0 || s >= 0.0, "window must be admissible")?;
                let traj = optimal_excursion_critical(s, t, w, args.cells);
                let quad = breve_i_s_functional(&traj, theta);
                let cost = critical_excursion_cost(s, t, w, theta);
                let gap = (quad - cost).abs();
                if gap > GAP_BUDGET {
                    return Err(CliError::internal(format!(
                        "critical quadrature {quad} vs closed form {cost}"
                    )));
                }
                (
                    traj,
                    json!({
                        "closed_form": cost,
                        "quadrature": quad,
                        "gap": gap,
                        "peak": 1.5 * w / (t - s),
                    }),
                    Vec::new(),
                )
            }
            "regulator" => {
                let a = require(args.a, "--a")?;
                let tau = args.tau.unwrap_or(0.0);
                let c = require(args.c, "--c")?;
                check((0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&tau), "a, tau in [0,1]")?;
                check(c > 0.0, "--c must be positive")?;
                meta.push("a", a).push("tau", tau).push("c", c);
                let (traj, cost) = optimal_regulator(a, tau, c, args.cells);
                let quad = if cost.is_finite() {
                    i_phi_functional(&traj, c)
                } else {
                    f64::INFINITY
                };
                (
                    traj,
                    json!({
                        "closed_form": crate::jsonio::rate_value(cost),
                        "phi_action_quadrature": crate::jsonio::rate_value(quad),
                    }),
                    Vec::new(),
                )
            }
            "critical_regulator" => {
                let tau = args.tau.unwrap_or(0.0);
                let theta = require(args.theta, "--theta")?;
                let t_max = args.t.unwrap_or(2.0 * tau.max(theta.max(1.0)) + 1.0);
                meta.push("tau", tau).push("theta", theta).push("t", t_max);
                let (traj, cost) = critical_regulator(tau, theta, t_max, args.cells);
                (traj, json!({ "closed_form": cost }), Vec::new())
            }
            "lln" => {
                let c = require(args.c, "--c")?;
                check(c > 0.0, "--c must be positive")?;
                meta.push("c", c);
                let (qbar, phibar, ebar) = lln_curves(c, args.cells);
                let iq = i_q_functional(&qbar, c);
                let iphi = i_phi_functional(&phibar, c);
                (
                    qbar.clone(),
                    json!({
                        "i_q_of_qbar": iq,
                        "i_phi_of_phibar": iphi,
                    }),
                    vec![("phibar", phibar), ("ebar", ebar)],
                )
            }
            other => {
                return Err(CliError::validation(format!(
                    "unknown trajectory kind `{other}`"
                )))
            }
        };

    // trajectory CSV: t,value (plus companion columns for lln)
    let path = cli.out.join(format!("traj_{}.csv", args.kind));
    let mut header = vec!["t", "value"];
    for (name, _) in &extra {
        header.push(name);
    }
    let mut out = CsvWriter::create(&path, &meta, &header)?;
    for i in 0..=traj.cells() {
        let mut row = vec![traj.time(i), traj.values()[i]];
        for (_, other) in &extra {
            row.push(other.values()[i]);
        }
        out.row_f64(&row)?;
    }
    out.finish()?;

    write_json(&cli.out.join(format!("traj_{}_report.json", args.kind)), &meta, report)?;

    if cli.svg {
        let mut series = vec![Series {
            label: "value".into(),
            points: (0..=traj.cells()).map(|i| (traj.time(i), traj.values()[i])).collect(),
            color: PALETTE[0],
        }];
        for (j, (name, other)) in extra.iter().enumerate() {
            series.push(Series {
                label: name.to_string(),
                points: (0..=other.cells()).map(|i| (other.time(i), other.values()[i])).collect(),
                color: PALETTE[(j + 1) % PALETTE.len()],
            });
        }
        let svg = line_plot(&format!("trajectory: {}", args.kind), "t", "x", &series);
        std::fs::write(cli.out.join(format!("traj_{}.svg", args.kind)), svg)?;
    }
    Ok(())
}

fn window(args: &Args) -> Result<(f64, f64, f64), CliError> {
    let s = require(args.s, "--s")?;
    let t = require(args.t, "--t")?;
    let w = require(args.w, "--w")?;
    check(s.is_finite() && t.is_finite() && w.is_finite(), "window must be finite")?;
    check(s < t, "need s < t")?;
    check(w >= 0.0, "area must be non-negative")?;
    Ok((s, t, w))
}
