use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use dcsi_core::datagen::{generate, grid, GenSpec, Generator, GridSpec};

use crate::report::{open, say};
use crate::Outcome;

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    /// Generator id: toys a..i, experiments e1..e9, or var
    #[arg(long, value_name = "ID")]
    pub exp: Generator,
    /// Write the generator's whole parameter grid plus a manifest
    #[arg(long)]
    pub grid: bool,
    /// Keep every n-th value of each grid axis
    #[arg(long, default_value_t = 1, value_name = "N")]
    pub stride: usize,
    #[arg(long, default_value_t = 0, value_name = "N")]
    pub seed: u64,
    /// Output file, or directory with --grid; standard output when absent
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "class", value_name = "NAME")]
    pub label_column: String,
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Bridge share (e3)
    #[arg(long)]
    pub c: Option<f64>,
    /// Irrelevant noise dimensions (e4)
    #[arg(long)]
    pub n_irrev: Option<f64>,
    /// Dimension (e5)
    #[arg(long)]
    pub p: Option<f64>,
    /// Moon shift (e6)
    #[arg(long)]
    pub s: Option<f64>,
    /// Radius (e7, e9)
    #[arg(long)]
    pub r: Option<f64>,
    /// Sphere dimension (e9)
    #[arg(long)]
    pub n: Option<f64>,
}

impl GenerateArgs {
    fn params(&self) -> Vec<(&'static str, f64)> {
        [
            ("d", self.d),
            ("sigma", self.sigma),
            ("c", self.c),
            ("n_irrev", self.n_irrev),
            ("p", self.p),
            ("s", self.s),
            ("r", self.r),
            ("n", self.n),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }
}

pub fn run(args: &GenerateArgs) -> Result<Outcome> {
    if args.grid {
        return run_grid(args);
    }
    let mut spec = GenSpec::new(args.exp, args.seed);
    for (k, v) in args.params() {
        spec = spec.with(k, v);
    }
    let ds = generate(&spec)?;
    let mut w = open(args.out.as_deref())?;
    ds.write_csv(&mut w, &args.label_column)?;
    w.flush()?;
    say(
        args.out.is_some(),
        &format!(
            "{} [{}]: {} points in {} dimensions",
            args.exp,
            spec.describe(),
            ds.n(),
            ds.dim()
        ),
    );
    Ok(Outcome::Success)
}

fn run_grid(args: &GenerateArgs) -> Result<Outcome> {
    if !args.params().is_empty() {
        bail!("parameter flags cannot be combined with --grid");
    }
    if args.stride == 0 {
        bail!("stride must be at least 1");
    }
    let Some(dir) = &args.out else {
        bail!("--grid needs --out DIR");
    };
    let specs = grid(&GridSpec {
        generator: args.exp,
        stride: args.stride,
        seed: args.seed,
    });
    if specs.is_empty() {
        bail!("generator `{}` has no parameter grid", args.exp);
    }
    std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let manifest_path = dir.join("manifest.csv");
    let mut manifest = csv::Writer::from_writer(open(Some(&manifest_path))?);
    manifest.write_record(["file", "generator", "seed", "params"])?;
    for (k, spec) in specs.iter().enumerate() {
        let name = format!("{}_{k:04}.csv", args.exp);
        let ds = generate(spec)?;
        let mut w = open(Some(&dir.join(&name)))?;
        ds.write_csv(&mut w, &args.label_column)?;
        w.flush()?;
        manifest.write_record([name, args.exp.to_string(), spec.seed.to_string(), spec.describe()])?;
    }
    manifest.flush()?;
    say(
        true,
        &format!("wrote {} data sets and manifest.csv to {}", specs.len(), dir.display()),
    );
    Ok(Outcome::Success)
}
