use anyhow::Result;
use dcsi_core::bench::epsilon_sweep;

use crate::config::{Cmd, RunConfig};
use crate::report::{num, say, Report};
use crate::Outcome;

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let ds = cfg.load(&cfg.input[0])?;
    let dm = ds.distances(cfg.metric);
    let result = epsilon_sweep(&dm, ds.class_indices(), &cfg.sweep_config(false))?;
    let mut report = Report::create(cfg.out.as_deref(), &cfg.header(Cmd::Sweep), &["eps", "ari"])?;
    for (eps, ari) in result.grid.iter().zip(&result.ari) {
        report.row([num(*eps), num(*ari)])?;
    }
    report.finish(&[("max_ari", num(result.max_ari)), ("argmax_eps", num(result.argmax_eps))])?;
    say(
        cfg.out.is_some(),
        &format!(
            "{} radii; max ARI {} at eps {}",
            result.grid.len(),
            num(result.max_ari),
            num(result.argmax_eps)
        ),
    );
    Ok(Outcome::Success)
}
