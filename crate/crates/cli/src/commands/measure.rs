use anyhow::Result;
use dcsi_core::measures::battery;

use crate::config::{Cmd, RunConfig};
use crate::report::{num, say, Report};
use crate::Outcome;

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let ds = cfg.load(&cfg.input[0])?;
    let results = battery(&ds, &cfg.measures, &cfg.battery_config());
    let mut report = Report::create(
        cfg.out.as_deref(),
        &cfg.header(Cmd::Measure),
        &["measure", "value", "params", "flag", "error"],
    )?;
    let mut failed = 0;
    for (id, result) in &results {
        match result {
            Ok(v) => report.row([
                id.as_str().to_string(),
                num(v.value),
                v.params.to_string(),
                v.flag.unwrap_or("").to_string(),
                String::new(),
            ])?,
            Err(e) => {
                failed += 1;
                report.row([
                    id.as_str().to_string(),
                    String::new(),
                    String::new(),
                    String::new(),
                    e.to_string(),
                ])?
            }
        }
    }
    report.finish(&[])?;
    say(
        cfg.out.is_some(),
        &format!(
            "{} measures on {} points, {} classes; {failed} failed",
            results.len(),
            ds.n(),
            ds.num_classes()
        ),
    );
    Ok(Outcome::from_failures(failed))
}
