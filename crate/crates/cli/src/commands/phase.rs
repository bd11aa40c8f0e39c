//! `phase`: phase points (JSON) and count-rate curves (CSV) for a list of
//! intensities, with the convexity geometry verified before anything is
//! written. Reproduces the count-rate family and convexity-region figures.

use clap::Args as ClapArgs;
use serde_json::json;

use giantscope_core::rates::{self, phase_points_with, RateParams};

use crate::commands::{check, GridSpec};
use crate::csvio::CsvWriter;
use crate::error::CliError;
use crate::jsonio::write_json;
use crate::meta::Meta;
use crate::svg::{line_plot, Series, PALETTE};
use crate::Cli;

#[derive(ClapArgs, Debug)]
pub struct Args {
    /// Intensities (comma list)
    #[arg(long, value_delimiter = ',', required = true)]
    pub c: Vec<f64>,

    /// Grid over the count density a for the curves
    #[arg(long, default_value = "0:1:0.002")]
    pub grid: GridSpec,
}

pub fn run(cli: &Cli, args: &Args) -> Result<(), CliError> {
    check(
        args.c.iter().all(|&c| c > 0.0 && c.is_finite()),
        "all intensities must be positive",
    )?;
    check(
        args.grid.lo >= 0.0 && args.grid.hi <= 1.0,
        "--grid must lie within [0, 1]",
    )?;

    let mut meta = Meta::new("phase");
    meta.push("c", format!("{:?}", args.c));
    meta.push(
        "grid",
        format!("{}:{}:{}", args.grid.lo, args.grid.hi, args.grid.step),
    );

    // phase points, sanity-checked before anything is written
    let mut entries = Vec::new();
    for &c in &args.c {
        let p = make_params(c, cli);
        let pp = phase_points_with(&p);
        if c > 2.0 {
            let (at, ah, tt) = (
                pp.a_tilde.expect("c > 2"),
                pp.a_hat.expect("c > 2"),
                pp.tau_tilde.expect("c > 2"),
            );
            let ok = at < 2.0 / c && 0.5 < ah && ah < pp.a_star && pp.a_star <= 1.0 && tt > 0.0;
            if !ok {
                return Err(CliError::internal(format!(
                    "phase geometry violated at c = {c}: a* = {}, a~ = {at}, a^ = {ah}",
                    pp.a_star
                )));
            }
        }
        entries.push(json!({
            "c": c,
            "a_star": pp.a_star,
            "a_tilde": pp.a_tilde,
            "a_hat": pp.a_hat,
            "tau_tilde": pp.tau_tilde,
        }));
    }
    write_json(&cli.out.join("phase.json"), &meta, json!({ "points": entries }))?;

    // count-rate curves, one value column per intensity
    let grid = args.grid.points();
    let mut header: Vec<String> = vec!["a".to_string()];
    header.extend(args.c.iter().map(|c| format!("i_alpha_c{c}")));
    let header_refs: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
    let mut out = CsvWriter::create(&cli.out.join("i_alpha_curves.csv"), &meta, &header_refs)?;
    let mut curves: Vec<Vec<(f64, f64)>> = vec![Vec::new(); args.c.len()];
    for &a in &grid {
        let mut row = vec![a];
        for (j, &c) in args.c.iter().enumerate() {
            let p = make_params(c, cli);
            let v = rates::i_alpha_checked(a, &p).map_err(|e| CliError::internal(e.to_string()))?;
            row.push(v);
            curves[j].push((a, v));
        }
        out.row_f64(&row)?;
    }
    out.finish()?;

    if cli.svg {
        let series: Vec<Series> = args
            .c
            .iter()
            .enumerate()
            .map(|(j, c)| Series {
                label: format!("c = {c}"),
                points: curves[j].clone(),
                color: PALETTE[j % PALETTE.len()],
            })
            .collect();
        let svg = line_plot("rate of the number of components", "a", "I_alpha(a)", &series);
        std::fs::write(cli.out.join("fig_count_rate.svg"), svg)?;

        // convexity-concavity regions over a c sweep
        let c_hi = args.c.iter().cloned().fold(4.0f64, f64::max);
        let sweep: Vec<f64> = (0..=240).map(|i| 2.005 + (c_hi - 2.005) * i as f64 / 240.0).collect();
        let mut astar_pts = Vec::new();
        let mut atilde_pts = Vec::new();
        let mut ahat_pts = Vec::new();
        for &c in &sweep {
            let pp = phase_points_with(&make_params(c, cli));
            astar_pts.push((c, pp.a_star));
            atilde_pts.push((c, pp.a_tilde.unwrap_or(f64::NAN)));
            ahat_pts.push((c, pp.a_hat.unwrap_or(f64::NAN)));
        }
        let series = vec![
            Series {
                label: "a* (no-giant regime)".into(),
                points: astar_pts,
                color: PALETTE[0],
            },
            Series {
                label: "a~ (convexity edge)".into(),
                points: atilde_pts,
                color: PALETTE[1],
            },
            Series {
                label: "a^ (breakup point)".into(),
                points: ahat_pts,
                color: PALETTE[2],
            },
        ];
        let svg = line_plot("convexity-concavity regions", "c", "a", &series);
        std::fs::write(cli.out.join("fig_convexity_regions.svg"), svg)?;
    }
    Ok(())
}

fn make_params(c: f64, cli: &Cli) -> RateParams {
    let mut p = RateParams::new(c);
    if let Some(tol) = cli.tol {
        p = p.with_tol(tol.max(1e-15));
    }
    p
}
