use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use dcsi_core::bench::{epsilon_sweep, spearman};
use dcsi_core::datagen::{generate, grid, GenSpec, Generator, GridSpec};
use dcsi_core::measures::battery;
use dcsi_core::Dataset;
use rayon::prelude::*;

use crate::config::{BenchSource, Cmd, RunConfig};
use crate::report::{num, say, Report};
use crate::Outcome;

enum Data {
    Spec(GenSpec),
    File(PathBuf),
}

struct Job {
    experiment: String,
    file: String,
    seed: String,
    params: String,
    high_dim: bool,
    data: Data,
}

struct Record {
    n: Option<usize>,
    measures: Vec<Option<f64>>,
    max_ari: Option<(f64, f64)>,
    errors: Vec<String>,
}

impl Record {
    fn failed(&self) -> bool {
        self.n.is_none() || self.max_ari.is_none()
    }
}

fn grid_jobs(exp: Generator, stride: usize, reps: usize, seed: u64) -> Vec<Job> {
    let specs = grid(&GridSpec {
        generator: exp,
        stride,
        seed: 0,
    });
    let mut jobs = Vec::with_capacity(specs.len() * reps);
    for (k, spec) in specs.into_iter().enumerate() {
        for r in 0..reps {
            let mut spec = spec.clone();
            spec.seed = seed.wrapping_add((k * reps + r) as u64);
            jobs.push(Job {
                experiment: exp.to_string(),
                file: String::new(),
                seed: spec.seed.to_string(),
                params: spec.describe(),
                high_dim: exp.high_dimensional(),
                data: Data::Spec(spec),
            });
        }
    }
    jobs
}

fn manifest_jobs(path: &Path, force_high_dim: bool) -> Result<Vec<Job>> {
    let dir = path.parent().unwrap_or(Path::new(""));
    let mut reader =
        csv::Reader::from_path(path).with_context(|| format!("cannot read manifest {}", path.display()))?;
    let headers = reader.headers()?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| anyhow!("manifest {} lacks column `{name}`", path.display()))
    };
    let (file, generator, seed, params) = (col("file")?, col("generator")?, col("seed")?, col("params")?);
    let mut jobs = Vec::new();
    for row in reader.records() {
        let row = row?;
        let exp = &row[generator];
        let high_dim = force_high_dim || exp.parse::<Generator>().map(|g| g.high_dimensional()).unwrap_or(false);
        jobs.push(Job {
            experiment: exp.to_string(),
            file: row[file].to_string(),
            seed: row[seed].to_string(),
            params: row[params].to_string(),
            high_dim,
            data: Data::File(dir.join(&row[file])),
        });
    }
    Ok(jobs)
}

fn process(cfg: &RunConfig, job: &Job) -> Record {
    let mut record = Record {
        n: None,
        measures: vec![None; cfg.measures.len()],
        max_ari: None,
        errors: Vec::new(),
    };
    let loaded: Result<Dataset> = match &job.data {
        Data::Spec(spec) => {
            generate(spec)
                .map_err(Into::into)
                .and_then(|ds| if cfg.standardize { Ok(ds.standardize()?) } else { Ok(ds) })
        }
        Data::File(path) => cfg.load(path),
    };
    let ds = match loaded {
        Ok(ds) => ds,
        Err(e) => {
            record.errors.push(format!("data: {e:#}"));
            return record;
        }
    };
    record.n = Some(ds.n());
    for (slot, (id, result)) in record
        .measures
        .iter_mut()
        .zip(battery(&ds, &cfg.measures, &cfg.battery_config()))
    {
        match result {
            Ok(v) => *slot = Some(v.value),
            Err(e) => record.errors.push(format!("{id}: {e}")),
        }
    }
    let dm = ds.distances(cfg.metric);
    match epsilon_sweep(&dm, ds.class_indices(), &cfg.sweep_config(job.high_dim || cfg.high_dim)) {
        Ok(s) => record.max_ari = Some((s.max_ari, s.argmax_eps)),
        Err(e) => record.errors.push(format!("sweep: {e}")),
    }
    record
}

/// One correlation line: measure values against max ARI over `rows`.
fn correlate(m: usize, rows: &[&Record]) -> (usize, usize, String, String) {
    let (xs, ys): (Vec<f64>, Vec<f64>) = rows.iter().filter_map(|r| Some((r.measures[m]?, r.max_ari?.0))).unzip();
    let excluded = rows.len() - xs.len();
    if xs.len() < 3 {
        return (xs.len(), excluded, String::new(), "fewer than 3 data sets".into());
    }
    match spearman(&xs, &ys) {
        Ok(r) => (xs.len(), excluded, num(r), String::new()),
        Err(e) => (xs.len(), excluded, String::new(), e.to_string()),
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let jobs = match cfg.bench.as_ref().expect("bench source resolved") {
        BenchSource::Grid { exp, stride, reps } => grid_jobs(*exp, *stride, *reps, cfg.seed),
        BenchSource::Manifest(path) => manifest_jobs(path, cfg.high_dim)?,
        BenchSource::Files => cfg
            .input
            .iter()
            .map(|p| Job {
                experiment: "input".into(),
                file: p.display().to_string(),
                seed: String::new(),
                params: String::new(),
                high_dim: cfg.high_dim,
                data: Data::File(p.clone()),
            })
            .collect(),
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build()?;
    // collect keeps grid order whatever the completion order
    let records: Vec<Record> = pool.install(|| jobs.par_iter().map(|job| process(cfg, job)).collect());

    let header = cfg.header(Cmd::Bench);
    let mut columns = vec!["index", "experiment", "file", "seed", "params", "n"];
    columns.extend(cfg.measures.iter().map(|m| m.as_str()));
    columns.extend(["max_ari", "argmax_eps", "error"]);
    let mut report = Report::create(cfg.out.as_deref(), &header, &columns)?;
    for (k, (job, rec)) in jobs.iter().zip(&records).enumerate() {
        let mut row = vec![
            k.to_string(),
            job.experiment.clone(),
            job.file.clone(),
            job.seed.clone(),
            job.params.clone(),
            rec.n.map_or(String::new(), |n| n.to_string()),
        ];
        row.extend(rec.measures.iter().map(|v| v.map_or(String::new(), num)));
        match rec.max_ari {
            Some((ari, eps)) => row.extend([num(ari), num(eps)]),
            None => row.extend([String::new(), String::new()]),
        }
        row.push(rec.errors.join("; "));
        report.row(&row)?;
    }
    let failed = records.iter().filter(|r| r.failed()).count();
    let with_errors = records.iter().filter(|r| !r.errors.is_empty()).count();
    report.finish(&[("data-sets", records.len().to_string()), ("failed", failed.to_string())])?;

    let to_file = cfg.out.is_some();
    say(
        to_file,
        &format!(
            "{} data sets; {failed} failed, {with_errors} with errors",
            records.len()
        ),
    );
    let usable = records.iter().filter(|r| !r.failed()).count();
    if usable < 3 {
        say(
            to_file,
            &format!("correlations suppressed: {usable} usable data sets, at least 3 needed"),
        );
    } else {
        write_correlations(cfg, &header, &jobs, &records, failed)?;
    }
    Ok(Outcome::from_failures(with_errors))
}

fn write_correlations(
    cfg: &RunConfig,
    header: &[(&str, String)],
    jobs: &[Job],
    records: &[Record],
    failed: usize,
) -> Result<()> {
    let out = cfg.out.as_ref().map(|p| p.with_extension("spearman.csv"));
    if out.is_none() {
        // separates the two tables on standard output
        println!();
    }
    let mut report = Report::create(
        out.as_deref(),
        header,
        &["scope", "measure", "n", "excluded", "spearman", "note"],
    )?;
    let mut scopes: Vec<&str> = Vec::new();
    for job in jobs {
        if !scopes.contains(&job.experiment.as_str()) {
            scopes.push(&job.experiment);
        }
    }
    let mut lines = Vec::new();
    let mut emit = |scope: &str, rows: Vec<&Record>| -> Result<()> {
        for (m, id) in cfg.measures.iter().enumerate() {
            let (n, excluded, rho, note) = correlate(m, &rows);
            if scope == "all" {
                lines.push(format!(
                    "  {:<8} {}",
                    id.as_str(),
                    if rho.is_empty() { &note } else { &rho }
                ));
            }
            report.row([
                scope.to_string(),
                id.to_string(),
                n.to_string(),
                excluded.to_string(),
                rho,
                note,
            ])?;
        }
        Ok(())
    };
    emit("all", records.iter().collect())?;
    for scope in &scopes {
        let rows = jobs
            .iter()
            .zip(records)
            .filter(|(j, _)| j.experiment == *scope)
            .map(|(_, r)| r)
            .collect();
        emit(scope, rows)?;
    }
    report.finish(&[("failed", failed.to_string())])?;
    if let Some(path) = &out {
        say(
            true,
            &format!(
                "Spearman correlation with max ARI (all data sets), written to {}:",
                path.display()
            ),
        );
        for line in lines {
            say(true, &line);
        }
    }
    Ok(())
}
