//! Run configuration: command-line flags over a flat `key = value` file over
//! built-in defaults. The resolved values are echoed into every report.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use dcsi_core::bench::{
    NoiseConvention, SweepConfig, DEFAULT_EPS_MAX, DEFAULT_EPS_MIN, DEFAULT_EPS_STEP, HIGH_DIM_EPS_MAX,
};
use dcsi_core::datagen::Generator;
use dcsi_core::dcsi::{CoreConfig, MulticlassVariant, DEFAULT_MIN_PTS};
use dcsi_core::measures::{BatteryConfig, MeasureId, DEFAULT_CVNN_K, DEFAULT_NETWORK_EPS};
use dcsi_core::{Dataset, Metric};

/// First line of every report; a config file starting with it is read as a
/// previous report and only its header block is used.
pub const REPORT_MAGIC: &str = "# dcsi-cli";

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

const KEYS: &[&str] = &[
    "command",
    "input",
    "label-column",
    "standardize",
    "metric",
    "neighborhood-metric",
    "min-pts",
    "min-pts-class",
    "eps",
    "eps-quantile",
    "eps-class",
    "measures",
    "multiclass",
    "cvnn-k",
    "network-eps",
    "dbscan-min-pts",
    "eps-min",
    "eps-max",
    "eps-max-high-dim",
    "eps-step",
    "high-dim",
    "noise",
    "seed",
    "workers",
    "exp",
    "stride",
    "reps",
    "manifest",
];

/// Flags shared by `measure`, `pairwise`, `sweep` and `bench`. Every flag
/// can also be set in the `--config` file under its long name.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Flat `key = value` file (or an earlier report); flags win
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Labelled CSV data set (bench accepts several)
    #[arg(long, value_name = "PATH")]
    pub input: Vec<PathBuf>,
    /// Column holding the class labels [default: class]
    #[arg(long, value_name = "NAME")]
    pub label_column: Option<String>,
    /// z-score the whole matrix before anything else
    #[arg(long)]
    pub standardize: bool,
    /// Distance for DCSI, the CVIs, DSI and DBSCAN [default: euclidean]
    #[arg(long, value_name = "euclidean|gower")]
    pub metric: Option<Metric>,
    /// Distance for N1, N2, N3, LSC, density and ClsCoef [default: gower]
    #[arg(long, value_name = "euclidean|gower")]
    pub neighborhood_metric: Option<Metric>,
    /// DCSI MinPts [default: 5]
    #[arg(long, value_name = "N")]
    pub min_pts: Option<usize>,
    /// Per-class DCSI MinPts (repeatable)
    #[arg(long, value_name = "CLASS=N")]
    pub min_pts_class: Vec<String>,
    /// Global DCSI radius instead of the per-class heuristic
    #[arg(long, value_name = "VALUE")]
    pub eps: Option<f64>,
    /// Quantile of the (2·MinPts)-NN distances used by the heuristic [default: 0.5]
    #[arg(long, value_name = "Q")]
    pub eps_quantile: Option<f64>,
    /// Per-class DCSI radius (repeatable)
    #[arg(long, value_name = "CLASS=VALUE")]
    pub eps_class: Vec<String>,
    /// Comma-separated measure ids, `all` or `none`
    #[arg(long, value_name = "LIST")]
    pub measures: Option<String>,
    /// Multi-class DCSI summary [default: g1_mean]
    #[arg(long, value_name = "VARIANT")]
    pub multiclass: Option<MulticlassVariant>,
    /// Neighborhood size of CVNN [default: 10]
    #[arg(long, value_name = "K")]
    pub cvnn_k: Option<usize>,
    /// Radius of the density / ClsCoef graph [default: 0.15]
    #[arg(long, value_name = "VALUE")]
    pub network_eps: Option<f64>,
    /// DBSCAN MinPts for sweeps [default: 5]
    #[arg(long, value_name = "N")]
    pub dbscan_min_pts: Option<usize>,
    /// Smallest swept radius [default: 0.01]
    #[arg(long, value_name = "VALUE")]
    pub eps_min: Option<f64>,
    /// Largest swept radius [default: 10, or eps-max-high-dim with --high-dim]
    #[arg(long, value_name = "VALUE")]
    pub eps_max: Option<f64>,
    /// Largest swept radius for high-dimensional data [default: 50]
    #[arg(long, value_name = "VALUE")]
    pub eps_max_high_dim: Option<f64>,
    /// Sweep step [default: 0.01]
    #[arg(long, value_name = "VALUE")]
    pub eps_step: Option<f64>,
    /// Treat the data as high-dimensional (wide sweep range)
    #[arg(long)]
    pub high_dim: bool,
    /// How DBSCAN noise enters the ARI [default: singletons]
    #[arg(long, value_name = "singletons|shared")]
    pub noise: Option<NoiseConvention>,
    /// Master seed [default: 0]
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
    /// Report path; standard output when absent
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Data sets processed in parallel by bench [default: all cores]
    #[arg(long, value_name = "N")]
    pub workers: Option<usize>,
}

/// Values read from a `--config` file.
#[derive(Debug, Default)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("config {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let report = text.starts_with(REPORT_MAGIC);
        let mut values = BTreeMap::new();
        for (no, line) in text.lines().enumerate() {
            let line = if report {
                match line.strip_prefix('#') {
                    Some(rest) => rest,
                    None => break,
                }
            } else {
                line
            };
            let t = line.trim();
            if t.is_empty() || (!report && t.starts_with('#')) {
                continue;
            }
            let Some((key, value)) = t.split_once('=') else {
                if report {
                    continue;
                }
                bail!("line {}: expected `key = value`", no + 1);
            };
            let key = key.trim();
            if !KEYS.contains(&key) {
                // reports may carry run statistics after the settings
                if report {
                    continue;
                }
                bail!("line {}: unknown key `{key}`", no + 1);
            }
            if values.insert(key.to_string(), value.trim().to_string()).is_some() {
                bail!("line {}: duplicate key `{key}`", no + 1);
            }
        }
        Ok(Self { values })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: Display,
    {
        self.raw(key)
            .map(|v| v.parse::<T>().map_err(|e| anyhow!("config key `{key}`: {e}")))
            .transpose()
    }
}

fn pick<T: FromStr>(flag: Option<T>, file: &ConfigFile, key: &str) -> Result<Option<T>>
where
    T::Err: Display,
{
    match flag {
        Some(v) => Ok(Some(v)),
        None => file.get(key),
    }
}

fn pick_bool(flag: bool, file: &ConfigFile, key: &str) -> Result<bool> {
    Ok(flag || file.get::<bool>(key)?.unwrap_or(false))
}

/// `CLASS=VALUE` entries from flags, or a comma-separated list from the file.
fn pick_map<T: FromStr>(flags: &[String], file: &ConfigFile, key: &str) -> Result<BTreeMap<String, T>>
where
    T::Err: Display,
{
    let entries: Vec<String> = if !flags.is_empty() {
        flags.to_vec()
    } else {
        file.raw(key)
            .map(|v| {
                v.split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect()
            })
            .unwrap_or_default()
    };
    let mut map = BTreeMap::new();
    for entry in entries {
        let (class, value) = entry
            .rsplit_once('=')
            .ok_or_else(|| anyhow!("--{key} expects CLASS=VALUE, got `{entry}`"))?;
        let value = value
            .trim()
            .parse::<T>()
            .map_err(|e| anyhow!("--{key} `{entry}`: {e}"))?;
        if map.insert(class.trim().to_string(), value).is_some() {
            bail!("--{key}: class `{class}` given twice");
        }
    }
    Ok(map)
}

fn parse_measures(list: &str) -> Result<Vec<MeasureId>> {
    match list.trim() {
        "all" => Ok(MeasureId::ALL.to_vec()),
        "none" | "" => Ok(Vec::new()),
        list => {
            let mut ids = Vec::new();
            for item in list.split(',') {
                let id: MeasureId = item.parse()?;
                if ids.contains(&id) {
                    bail!("measure `{id}` listed twice");
                }
                ids.push(id);
            }
            Ok(ids)
        }
    }
}

fn join_map<T: Display>(map: &BTreeMap<String, T>) -> String {
    map.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// Where `bench` takes its data sets from.
#[derive(Debug, Clone, PartialEq)]
pub enum BenchSource {
    Grid { exp: Generator, stride: usize, reps: usize },
    Manifest(PathBuf),
    Files,
}

/// Flags only `bench` understands.
#[derive(Debug, Clone, Default, Args)]
pub struct BenchArgs {
    /// Benchmark a generator's parameter grid
    #[arg(long, value_name = "ID")]
    pub exp: Option<Generator>,
    /// Keep every n-th value of each grid axis [default: 1]
    #[arg(long, value_name = "N")]
    pub stride: Option<usize>,
    /// Independent draws per grid point [default: 1]
    #[arg(long, value_name = "N")]
    pub reps: Option<usize>,
    /// Benchmark the data sets listed in a `generate --grid` manifest
    #[arg(long, value_name = "PATH")]
    pub manifest: Option<PathBuf>,
}

/// Fully resolved settings. Every field has a concrete value.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: Vec<PathBuf>,
    pub label_column: String,
    pub standardize: bool,
    pub metric: Metric,
    pub neighborhood_metric: Metric,
    pub min_pts: usize,
    pub min_pts_class: BTreeMap<String, usize>,
    pub eps: Option<f64>,
    pub eps_quantile: f64,
    pub eps_class: BTreeMap<String, f64>,
    pub measures: Vec<MeasureId>,
    pub multiclass: MulticlassVariant,
    pub cvnn_k: usize,
    pub network_eps: f64,
    pub dbscan_min_pts: usize,
    pub eps_min: f64,
    /// Sweep upper bound for ordinary data.
    pub eps_max: f64,
    pub eps_max_high_dim: f64,
    pub eps_step: f64,
    pub high_dim: bool,
    pub noise: NoiseConvention,
    pub seed: u64,
    pub workers: usize,
    pub out: Option<PathBuf>,
    pub bench: Option<BenchSource>,
}

/// Which command a configuration is resolved for; decides defaults and the
/// keys echoed in the report header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmd {
    Measure,
    Pairwise,
    Sweep,
    Bench,
}

impl Cmd {
    pub fn name(self) -> &'static str {
        match self {
            Cmd::Measure => "measure",
            Cmd::Pairwise => "pairwise",
            Cmd::Sweep => "sweep",
            Cmd::Bench => "bench",
        }
    }
}

impl RunConfig {
    pub fn resolve(cmd: Cmd, args: &RunArgs, bench: Option<&BenchArgs>) -> Result<Self> {
        let file = match &args.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let input = if !args.input.is_empty() {
            args.input.clone()
        } else {
            file.raw("input")
                .map(|v| {
                    v.split(',')
                        .map(|s| PathBuf::from(s.trim()))
                        .filter(|p| !p.as_os_str().is_empty())
                        .collect()
                })
                .unwrap_or_default()
        };
        let default_measures = match cmd {
            Cmd::Pairwise => Vec::new(),
            _ => MeasureId::ALL.to_vec(),
        };
        let measures = match pick::<String>(args.measures.clone(), &file, "measures")? {
            Some(list) => parse_measures(&list)?,
            None => default_measures,
        };
        let high_dim = pick_bool(args.high_dim, &file, "high-dim")?;
        let eps_max_high_dim = pick(args.eps_max_high_dim, &file, "eps-max-high-dim")?.unwrap_or(HIGH_DIM_EPS_MAX);
        let eps_max = pick(args.eps_max, &file, "eps-max")?.unwrap_or(if high_dim && cmd == Cmd::Sweep {
            eps_max_high_dim
        } else {
            DEFAULT_EPS_MAX
        });
        let workers = pick(args.workers, &file, "workers")?
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        if workers == 0 {
            bail!("workers must be at least 1");
        }

        let bench_source = match (cmd, bench) {
            (Cmd::Bench, Some(b)) => {
                let exp = pick(b.exp, &file, "exp")?;
                let manifest = pick(b.manifest.clone(), &file, "manifest")?;
                let stride = pick(b.stride, &file, "stride")?.unwrap_or(1);
                let reps = pick(b.reps, &file, "reps")?.unwrap_or(1);
                if stride == 0 || reps == 0 {
                    bail!("stride and reps must be at least 1");
                }
                let given =
                    usize::from(exp.is_some()) + usize::from(manifest.is_some()) + usize::from(!input.is_empty());
                if given != 1 {
                    bail!("bench needs exactly one of --exp, --manifest or --input");
                }
                Some(match (exp, manifest) {
                    (Some(exp), _) => BenchSource::Grid { exp, stride, reps },
                    (None, Some(path)) => BenchSource::Manifest(path),
                    (None, None) => BenchSource::Files,
                })
            }
            _ => None,
        };

        let cfg = Self {
            input,
            label_column: pick(args.label_column.clone(), &file, "label-column")?.unwrap_or_else(|| "class".into()),
            standardize: pick_bool(args.standardize, &file, "standardize")?,
            metric: pick(args.metric, &file, "metric")?.unwrap_or(Metric::Euclidean),
            neighborhood_metric: pick(args.neighborhood_metric, &file, "neighborhood-metric")?.unwrap_or(Metric::Gower),
            min_pts: pick(args.min_pts, &file, "min-pts")?.unwrap_or(DEFAULT_MIN_PTS),
            min_pts_class: pick_map(&args.min_pts_class, &file, "min-pts-class")?,
            eps: match args.eps {
                Some(e) => Some(e),
                None => match file.raw("eps") {
                    None | Some("heuristic") => None,
                    Some(v) => Some(v.parse().map_err(|e| anyhow!("config key `eps`: {e}"))?),
                },
            },
            eps_quantile: pick(args.eps_quantile, &file, "eps-quantile")?.unwrap_or(0.5),
            eps_class: pick_map(&args.eps_class, &file, "eps-class")?,
            measures,
            multiclass: pick(args.multiclass, &file, "multiclass")?.unwrap_or_default(),
            cvnn_k: pick(args.cvnn_k, &file, "cvnn-k")?.unwrap_or(DEFAULT_CVNN_K),
            network_eps: pick(args.network_eps, &file, "network-eps")?.unwrap_or(DEFAULT_NETWORK_EPS),
            dbscan_min_pts: pick(args.dbscan_min_pts, &file, "dbscan-min-pts")?.unwrap_or(DEFAULT_MIN_PTS),
            eps_min: pick(args.eps_min, &file, "eps-min")?.unwrap_or(DEFAULT_EPS_MIN),
            eps_max,
            eps_max_high_dim,
            eps_step: pick(args.eps_step, &file, "eps-step")?.unwrap_or(DEFAULT_EPS_STEP),
            high_dim,
            noise: pick(args.noise, &file, "noise")?.unwrap_or_default(),
            seed: pick(args.seed, &file, "seed")?.unwrap_or(0),
            workers,
            out: args.out.clone(),
            bench: bench_source,
        };
        if matches!(cmd, Cmd::Measure | Cmd::Pairwise | Cmd::Sweep) && cfg.input.len() != 1 {
            bail!("{} needs exactly one --input", cmd.name());
        }
        Ok(cfg)
    }

    pub fn core_config(&self) -> CoreConfig {
        CoreConfig {
            min_pts: self.min_pts,
            min_pts_per_class: self.min_pts_class.clone(),
            eps_quantile: self.eps_quantile,
            eps_global: self.eps,
            eps_per_class: self.eps_class.clone(),
        }
    }

    pub fn battery_config(&self) -> BatteryConfig {
        BatteryConfig {
            cvi_metric: self.metric,
            neighborhood_metric: self.neighborhood_metric,
            cvnn_k: self.cvnn_k,
            network_eps: self.network_eps,
            core: self.core_config(),
            variant: self.multiclass,
        }
    }

    /// Sweep settings; `high_dim` selects the wide upper bound (bench only,
    /// `sweep` already folded it into `eps_max`).
    pub fn sweep_config(&self, high_dim: bool) -> SweepConfig {
        SweepConfig {
            eps_min: self.eps_min,
            eps_max: if high_dim { self.eps_max_high_dim } else { self.eps_max },
            step: self.eps_step,
            min_pts: self.dbscan_min_pts,
            convention: self.noise,
        }
    }

    /// Reads one input file, standardised if requested.
    pub fn load(&self, path: &Path) -> Result<Dataset> {
        let ds = Dataset::load_csv(path, &self.label_column)?;
        Ok(if self.standardize { ds.standardize()? } else { ds })
    }

    /// The keys that shape `cmd`'s report, in a fixed order.
    pub fn header(&self, cmd: Cmd) -> Vec<(&'static str, String)> {
        let inputs = self
            .input
            .iter()
            .map(|p| p.display().to_string())
            .collect::<Vec<_>>()
            .join(",");
        let measures = if self.measures.is_empty() {
            "none".to_string()
        } else {
            self.measures.iter().map(|m| m.as_str()).collect::<Vec<_>>().join(",")
        };
        let mut h: Vec<(&'static str, String)> = vec![("command", cmd.name().into())];
        if let Some(src) = &self.bench {
            match src {
                BenchSource::Grid { exp, stride, reps } => {
                    h.push(("exp", exp.to_string()));
                    h.push(("stride", stride.to_string()));
                    h.push(("reps", reps.to_string()));
                    h.push(("seed", self.seed.to_string()));
                }
                BenchSource::Manifest(path) => h.push(("manifest", path.display().to_string())),
                BenchSource::Files => h.push(("input", inputs.clone())),
            }
        } else {
            h.push(("input", inputs));
        }
        h.push(("label-column", self.label_column.clone()));
        h.push(("standardize", self.standardize.to_string()));
        h.push(("metric", self.metric.to_string()));
        let dcsi_keys = |h: &mut Vec<(&'static str, String)>| {
            h.push(("min-pts", self.min_pts.to_string()));
            h.push(("min-pts-class", join_map(&self.min_pts_class)));
            h.push(("eps", self.eps.map_or("heuristic".into(), |e| e.to_string())));
            h.push(("eps-quantile", self.eps_quantile.to_string()));
            h.push(("eps-class", join_map(&self.eps_class)));
        };
        let battery_keys = |h: &mut Vec<(&'static str, String)>| {
            h.push(("neighborhood-metric", self.neighborhood_metric.to_string()));
            h.push(("measures", measures.clone()));
            h.push(("multiclass", self.multiclass.to_string()));
            h.push(("cvnn-k", self.cvnn_k.to_string()));
            h.push(("network-eps", self.network_eps.to_string()));
        };
        let sweep_keys = |h: &mut Vec<(&'static str, String)>| {
            h.push(("dbscan-min-pts", self.dbscan_min_pts.to_string()));
            h.push(("eps-min", self.eps_min.to_string()));
            h.push(("eps-max", self.eps_max.to_string()));
            h.push(("eps-step", self.eps_step.to_string()));
            h.push(("noise", self.noise.to_string()));
        };
        match cmd {
            Cmd::Measure | Cmd::Pairwise => {
                dcsi_keys(&mut h);
                battery_keys(&mut h);
            }
            Cmd::Sweep => sweep_keys(&mut h),
            Cmd::Bench => {
                dcsi_keys(&mut h);
                battery_keys(&mut h);
                sweep_keys(&mut h);
                h.push(("eps-max-high-dim", self.eps_max_high_dim.to_string()));
                h.push(("high-dim", self.high_dim.to_string()));
                h.push(("workers", self.workers.to_string()));
            }
        }
        h
    }
}
