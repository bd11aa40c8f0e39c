//! `beta-ldp`: rate curve for the size of the largest component at one
//! intensity, cross-validated pointwise against O'Connell's alternative
//! form of the same rate (disagreement is an internal check failure).

use clap::Args as ClapArgs;

use giantscope_core::rates::{i_beta_oconnell, i_beta_with, RateParams};

use crate::commands::{check, GridSpec};
use crate::csvio::CsvWriter;
use crate::error::CliError;
use crate::meta::Meta;
use crate::svg::{line_plot, Series, PALETTE};
use crate::Cli;

#[derive(ClapArgs, Debug)]
pub struct Args {
    /// Edge intensity
    #[arg(long)]
    pub c: f64,

    /// Grid over the largest-component fraction u
    #[arg(long, default_value = "0:1:0.002")]
    pub grid: GridSpec,
}

const CROSS_CHECK_TOL: f64 = 1e-8;

pub fn run(cli: &Cli, args: &Args) -> Result<(), CliError> {
    check(args.c > 0.0 && args.c.is_finite(), "--c must be positive")?;
    check(
        args.grid.lo >= 0.0 && args.grid.hi <= 1.0,
        "--grid must lie within [0, 1]",
    )?;
    let p = RateParams::new(args.c);

    let mut meta = Meta::new("beta-ldp");
    meta.push("c", args.c).push(
        "grid",
        format!("{}:{}:{}", args.grid.lo, args.grid.hi, args.grid.step),
    );

    let mut out = CsvWriter::create(&cli.out.join("i_beta_curve.csv"), &meta, &["u", "i_beta"])?;
    let mut pts = Vec::new();
    for u in args.grid.points() {
        let v = i_beta_with(u, &p);
        if args.c > 1.0 && u > 1e-9 {
            let alt = i_beta_oconnell(u, &p);
            if (v - alt).abs() > CROSS_CHECK_TOL {
                return Err(CliError::internal(format!(
                    "i_beta({u}) = {v} disagrees with the O'Connell form {alt}"
                )));
            }
        }
        out.row_f64(&[u, v])?;
        pts.push((u, v));
    }
    out.finish()?;

    if cli.svg {
        let series = [Series {
            label: format!("c = {}", args.c),
            points: pts,
            color: PALETTE[3],
        }];
        let svg = line_plot(
            "large deviations of the largest component",
            "u",
            "I_beta(u)",
            &series,
        );
        std::fs::write(cli.out.join("fig_beta_ldp.svg"), svg)?;
    }
    Ok(())
}
