use anyhow::Result;
use dcsi_core::dcsi::{dcsi, PairwiseDcsi};
use dcsi_core::measures::battery;
use dcsi_core::Dataset;

use crate::config::{Cmd, RunConfig};
use crate::report::{num, say, Report};
use crate::Outcome;

/// Pairwise DCSI of classes `i < j` on the two-class restriction.
fn pair_dcsi(cfg: &RunConfig, sub: &Dataset) -> dcsi_core::Result<PairwiseDcsi> {
    let mut core = cfg.core_config();
    // per-class overrides only for the two classes present
    core.min_pts_per_class.retain(|k, _| sub.class_index(k).is_some());
    core.eps_per_class.retain(|k, _| sub.class_index(k).is_some());
    let dm = sub.distances(cfg.metric);
    let report = dcsi(sub, &dm, &core)?;
    Ok(report.pairs[0].clone())
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let ds = cfg.load(&cfg.input[0])?;
    ds.require_classes(2)?;
    for name in cfg.min_pts_class.keys().chain(cfg.eps_class.keys()) {
        if ds.class_index(name).is_none() {
            return Err(dcsi_core::Error::UnknownClass(name.clone()).into());
        }
    }
    let mut columns = vec!["class_i", "class_j", "sep", "conn_i", "conn_j", "dcsi"];
    columns.extend(cfg.measures.iter().map(|m| m.as_str()));
    columns.push("error");
    let mut report = Report::create(cfg.out.as_deref(), &cfg.header(Cmd::Pairwise), &columns)?;
    let battery_cfg = cfg.battery_config();

    let k = ds.num_classes();
    let mut failed = 0;
    for i in 0..k {
        for j in (i + 1)..k {
            let mut row = vec![ds.classes()[i].clone(), ds.classes()[j].clone()];
            let mut errors = Vec::new();
            let sub = ds.restrict_to_classes(&[i, j])?;
            match pair_dcsi(cfg, &sub) {
                Ok(p) => row.extend([num(p.sep), num(p.conn_i), num(p.conn_j), num(p.dcsi)]),
                Err(e) => {
                    row.extend(std::iter::repeat_n(String::new(), 4));
                    errors.push(format!("dcsi: {e}"));
                }
            }
            for (id, result) in battery(&sub, &cfg.measures, &battery_cfg) {
                match result {
                    Ok(v) => row.push(num(v.value)),
                    Err(e) => {
                        row.push(String::new());
                        errors.push(format!("{id}: {e}"));
                    }
                }
            }
            if !errors.is_empty() {
                failed += 1;
            }
            row.push(errors.join("; "));
            report.row(&row)?;
        }
    }
    report.finish(&[])?;
    say(
        cfg.out.is_some(),
        &format!("{} class pairs; {failed} with errors", k * (k - 1) / 2),
    );
    Ok(Outcome::from_failures(failed))
}
