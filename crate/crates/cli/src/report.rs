//! CSV reports: a `#` header block echoing the settings, then rows.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};

use crate::config::{REPORT_MAGIC, VERSION};

/// Six significant digits; shortest form that round-trips the rounded value.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let rounded: f64 = format!("{x:.5e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        return "0".into();
    }
    let a = rounded.abs();
    if (1e-4..1e6).contains(&a) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

pub struct Report {
    csv: csv::Writer<Box<dyn Write>>,
}

impl Report {
    /// Opens `out` (standard output when `None`) and writes the header block.
    pub fn create(out: Option<&Path>, settings: &[(&str, String)], columns: &[&str]) -> Result<Self> {
        let mut w = open(out)?;
        writeln!(w, "{REPORT_MAGIC} {VERSION}")?;
        for (k, v) in settings {
            writeln!(w, "{}", format!("# {k} = {v}").trim_end())?;
        }
        let mut csv = csv::Writer::from_writer(w);
        csv.write_record(columns)?;
        Ok(Self { csv })
    }

    pub fn row<I, S>(&mut self, fields: I) -> Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.csv.write_record(fields)?;
        Ok(())
    }

    /// Appends `# key = value` lines after the rows and flushes.
    pub fn finish(self, trailer: &[(&str, String)]) -> Result<()> {
        let mut w = self.csv.into_inner().map_err(|e| e.into_error())?;
        for (k, v) in trailer {
            writeln!(w, "# {k} = {v}")?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn open(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
            }
            let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            Box::new(BufWriter::new(f))
        }
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

/// Human-readable progress: standard output when the report goes to a
/// file, standard error when the report itself is on standard output.
pub fn say(to_file: bool, msg: &str) {
    if to_file {
        println!("{msg}");
    } else {
        eprintln!("{msg}");
    }
}
