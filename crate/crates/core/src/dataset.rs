//! Labeled point sets, CSV ingestion and matrix-wise standardization.

use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// `n` points in `d` dimensions, each carrying a class label.
///
/// Classes are indexed in order of first appearance in `labels`; every
/// operation that iterates classes or class pairs uses that order.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    values: Vec<f64>,
    n: usize,
    d: usize,
    feature_names: Vec<String>,
    labels: Vec<String>,
    classes: Vec<String>,
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
}

/// Size, mean vector and squared dispersion of one class.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassSummary {
    pub class_id: String,
    pub size: usize,
    pub center: Vec<f64>,
    /// Sum of squared Euclidean distances of the members to `center`.
    pub scatter: f64,
    /// Mean Euclidean distance of the members to `center`.
    pub mean_radius: f64,
}

impl Dataset {
    /// Builds a data set from row vectors and labels.
    pub fn from_rows<S: Into<String>>(rows: Vec<Vec<f64>>, labels: Vec<S>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyDataset);
        }
        let d = rows[0].len();
        let mut values = Vec::with_capacity(n * d);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != d {
                return Err(Error::RaggedRow {
                    row: i + 1,
                    found: row.len(),
                    expected: d,
                });
            }
            values.extend(row);
        }
        let names = (0..d).map(|j| format!("f{j}")).collect();
        Self::from_flat(values, d, labels, names)
    }

    /// Builds a data set from a row-major `n × d` buffer.
    pub fn from_flat<S: Into<String>>(
        values: Vec<f64>,
        d: usize,
        labels: Vec<S>,
        feature_names: Vec<String>,
    ) -> Result<Self> {
        if d == 0 {
            return Err(Error::NoFeatures);
        }
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyDataset);
        }
        if values.len() != n * d {
            return Err(Error::LengthMismatch {
                left: values.len(),
                right: n * d,
            });
        }
        if feature_names.len() != d {
            return Err(Error::LengthMismatch {
                left: feature_names.len(),
                right: d,
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::BadCell {
                row: pos / d + 1,
                column: feature_names[pos % d].clone(),
                value: values[pos].to_string(),
            });
        }

        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut classes = Vec::new();
        let mut class_of = Vec::with_capacity(n);
        let mut members: Vec<Vec<usize>> = Vec::new();
        for (i, label) in labels.iter().enumerate() {
            let c = *index.entry(label.as_str()).or_insert_with(|| {
                classes.push(label.clone());
                members.push(Vec::new());
                classes.len() - 1
            });
            class_of.push(c);
            members[c].push(i);
        }

        Ok(Self {
            values,
            n,
            d,
            feature_names,
            labels,
            classes,
            class_of,
            members,
        })
    }

    /// Reads a CSV file with one header row; every column other than
    /// `label_column` is a numeric feature.
    pub fn load_csv(path: impl AsRef<Path>, label_column: &str) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        Self::read_csv(file, label_column).map_err(|e| match e {
            Error::Io { message, .. } => Error::Io {
                path: path.to_path_buf(),
                message,
            },
            other => other,
        })
    }

    pub fn read_csv<R: Read>(reader: R, label_column: &str) -> Result<Self> {
        let io_err = |e: csv::Error| Error::Io {
            path: "<stream>".into(),
            message: e.to_string(),
        };
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(reader);
        let header: Vec<String> = rdr.headers().map_err(io_err)?.iter().map(str::to_owned).collect();
        let label_pos = header
            .iter()
            .position(|h| h == label_column)
            .ok_or_else(|| Error::MissingLabelColumn(label_column.to_owned()))?;
        let feature_names: Vec<String> = header
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != label_pos)
            .map(|(_, h)| h.clone())
            .collect();
        if feature_names.is_empty() {
            return Err(Error::NoFeatures);
        }

        let mut values = Vec::new();
        let mut labels = Vec::new();
        for (r, record) in rdr.records().enumerate() {
            let record = record.map_err(io_err)?;
            let row = r + 1;
            if record.len() != header.len() {
                return Err(Error::RaggedRow {
                    row,
                    found: record.len(),
                    expected: header.len(),
                });
            }
            for (j, cell) in record.iter().enumerate() {
                if j == label_pos {
                    labels.push(cell.to_owned());
                    continue;
                }
                let v: f64 = cell.parse().map_err(|_| Error::BadCell {
                    row,
                    column: header[j].clone(),
                    value: cell.to_owned(),
                })?;
                if !v.is_finite() {
                    return Err(Error::BadCell {
                        row,
                        column: header[j].clone(),
                        value: cell.to_owned(),
                    });
                }
                values.push(v);
            }
        }
        if labels.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let d = feature_names.len();
        Self::from_flat(values, d, labels, feature_names)
    }

    /// Writes the data set in the same CSV layout `read_csv` accepts, with
    /// the label as the last column. Values use Rust's shortest round-trip
    /// float formatting, so reading the file back is lossless.
    pub fn write_csv<W: Write>(&self, writer: W, label_column: &str) -> Result<()> {
        let io_err = |e: csv::Error| Error::Io {
            path: "<stream>".into(),
            message: e.to_string(),
        };
        let mut w = csv::Writer::from_writer(writer);
        let mut header = self.feature_names.clone();
        header.push(label_column.to_owned());
        w.write_record(&header).map_err(io_err)?;
        let mut record = Vec::with_capacity(self.d + 1);
        for i in 0..self.n {
            record.clear();
            record.extend(self.point(i).iter().map(|v| v.to_string()));
            record.push(self.labels[i].clone());
            w.write_record(&record).map_err(io_err)?;
        }
        w.flush().map_err(|e| Error::Io {
            path: "<stream>".into(),
            message: e.to_string(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.values[i * self.d..(i + 1) * self.d]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Class index of point `i`.
    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_indices(&self) -> &[usize] {
        &self.class_of
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_index(&self, class_id: &str) -> Option<usize> {
        self.classes.iter().position(|c| c == class_id)
    }

    /// Point indices of class `c`, ascending.
    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.members[c].len()
    }

    /// Errors when the data set has fewer than `required` classes.
    pub fn require_classes(&self, required: usize) -> Result<()> {
        if self.num_classes() < required {
            return Err(Error::TooFewClasses {
                required,
                found: self.num_classes(),
            });
        }
        Ok(())
    }

    pub(crate) fn require_class_size(&self, required: usize) -> Result<()> {
        for (c, m) in self.members.iter().enumerate() {
            if m.len() < required {
                return Err(Error::ClassTooSmall {
                    class: self.classes[c].clone(),
                    size: m.len(),
                    required,
                });
            }
        }
        Ok(())
    }

    /// Mean vector of the whole data set.
    pub fn center(&self) -> Vec<f64> {
        mean_of(self, 0..self.n)
    }

    pub fn summaries(&self) -> Vec<ClassSummary> {
        (0..self.num_classes())
            .map(|c| {
                let members = &self.members[c];
                let center = mean_of(self, members.iter().copied());
                let (mut scatter, mut radius) = (0.0, 0.0);
                for &i in members {
                    let sq = sq_dist(self.point(i), &center);
                    scatter += sq;
                    radius += sq.sqrt();
                }
                ClassSummary {
                    class_id: self.classes[c].clone(),
                    size: members.len(),
                    center,
                    scatter,
                    mean_radius: radius / members.len() as f64,
                }
            })
            .collect()
    }

    /// Sub-data set holding the points of the given classes, in original order.
    pub fn restrict_to_classes(&self, keep: &[usize]) -> Result<Self> {
        let rows: Vec<usize> = (0..self.n).filter(|&i| keep.contains(&self.class_of[i])).collect();
        self.select(&rows)
    }

    /// Sub-data set of the given rows, in the given order.
    pub fn select(&self, rows: &[usize]) -> Result<Self> {
        let mut values = Vec::with_capacity(rows.len() * self.d);
        let mut labels = Vec::with_capacity(rows.len());
        for &i in rows {
            values.extend_from_slice(self.point(i));
            labels.push(self.labels[i].clone());
        }
        Self::from_flat(values, self.d, labels, self.feature_names.clone())
    }

    /// Copy with every coordinate passed through `f(feature, value)`.
    pub fn map_values(&self, mut f: impl FnMut(usize, f64) -> f64) -> Result<Self> {
        let values = self.values.iter().enumerate().map(|(k, &v)| f(k % self.d, v)).collect();
        Self::from_flat(values, self.d, self.labels.clone(), self.feature_names.clone())
    }

    /// Copy with labels replaced.
    pub fn with_labels<S: Into<String>>(&self, labels: Vec<S>) -> Result<Self> {
        Self::from_flat(self.values.clone(), self.d, labels, self.feature_names.clone())
    }

    /// Matrix-wise standardization: the grand mean over all `n·d` entries is
    /// subtracted and the result divided by the single standard deviation of
    /// those entries (sample convention, divisor `n·d − 1`).
    pub fn standardize(&self) -> Result<Self> {
        let m = self.values.len();
        if m < 2 {
            return Err(Error::InvalidParameter(
                "standardization needs at least two entries".into(),
            ));
        }
        let mean = self.values.iter().sum::<f64>() / m as f64;
        let var = self.values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (m - 1) as f64;
        let sd = var.sqrt();
        if !(sd > 0.0) || !sd.is_finite() {
            return Err(Error::ZeroVariance);
        }
        self.map_values(|_, v| (v - mean) / sd)
    }
}

fn mean_of(ds: &Dataset, rows: impl IntoIterator<Item = usize>) -> Vec<f64> {
    let mut acc = vec![0.0; ds.dim()];
    let mut count = 0usize;
    for i in rows {
        for (a, v) in acc.iter_mut().zip(ds.point(i)) {
            *a += v;
        }
        count += 1;
    }
    if count > 0 {
        acc.iter_mut().for_each(|a| *a /= count as f64);
    }
    acc
}

pub(crate) fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_small_file() {
        let csv = "f0,f1,label\n0,1,a\n2,3,b\n4,5,a\n6,7,c\n";
        let ds = Dataset::read_csv(csv.as_bytes(), "label").unwrap();
        assert_eq!(ds.n(), 4);
        assert_eq!(ds.dim(), 2);
        assert_eq!(ds.num_classes(), 3);
        assert_eq!(ds.point(2), &[4.0, 5.0]);
        assert_eq!(ds.members(0), &[0, 2]);
    }

    #[test]
    fn label_column_may_sit_anywhere() {
        let csv = "y,x0,x1\nA,1,2\nB,3,4\n";
        let ds = Dataset::read_csv(csv.as_bytes(), "y").unwrap();
        assert_eq!(ds.feature_names(), &["x0".to_string(), "x1".to_string()]);
        assert_eq!(ds.label(1), "B");
    }

    #[test]
    fn single_class_still_loads() {
        let csv = "f0,label\n1,a\n2,a\n";
        let ds = Dataset::read_csv(csv.as_bytes(), "label").unwrap();
        assert_eq!(ds.num_classes(), 1);
    }

    #[test]
    fn nan_cell_names_row_and_column() {
        let csv = "f0,f1,label\n0,1,a\n2,NaN,b\n";
        let err = Dataset::read_csv(csv.as_bytes(), "label").unwrap_err();
        assert_eq!(
            err,
            Error::BadCell {
                row: 2,
                column: "f1".into(),
                value: "NaN".into()
            }
        );
    }

    #[test]
    fn missing_label_and_empty_file() {
        let err = Dataset::read_csv("a,b\n1,2\n".as_bytes(), "label").unwrap_err();
        assert_eq!(err, Error::MissingLabelColumn("label".into()));
        let err = Dataset::read_csv("a,label\n".as_bytes(), "label").unwrap_err();
        assert_eq!(err, Error::EmptyDataset);
    }

    #[test]
    fn missing_file() {
        let err = Dataset::load_csv("/nonexistent/x.csv", "label").unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    #[test]
    fn csv_round_trip_is_lossless() {
        let ds = Dataset::from_rows(vec![vec![0.1, -3.25e-7], vec![1.0 / 3.0, 2.0]], vec!["x", "y"]).unwrap();
        let mut buf = Vec::new();
        ds.write_csv(&mut buf, "label").unwrap();
        let back = Dataset::read_csv(buf.as_slice(), "label").unwrap();
        assert_eq!(back, ds);
    }

    #[test]
    fn standardize_is_matrix_wise() {
        let ds = Dataset::from_rows(vec![vec![0.0, 0.0], vec![2.0, 2.0]], vec!["a", "b"]).unwrap();
        let s = ds.standardize().unwrap();
        let mean: f64 = s.values().iter().sum::<f64>() / 4.0;
        assert!(mean.abs() < 1e-15);
        // sd of {0,0,2,2} with divisor 3 is sqrt(4/3)
        let sd = (4.0f64 / 3.0).sqrt();
        assert!((s.point(1)[0] - 1.0 / sd).abs() < 1e-12);
        assert_eq!(s.point(0)[0], s.point(0)[1]);
    }

    #[test]
    fn standardize_fixed_point() {
        let ds = Dataset::from_rows(
            vec![vec![1.0, 5.0], vec![-2.0, 0.5], vec![3.0, 7.0]],
            vec!["a", "b", "a"],
        )
        .unwrap();
        let once = ds.standardize().unwrap();
        let twice = once.standardize().unwrap();
        for (a, b) in once.values().iter().zip(twice.values()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn standardize_rejects_constant() {
        let ds = Dataset::from_rows(vec![vec![3.0, 3.0], vec![3.0, 3.0]], vec!["a", "b"]).unwrap();
        assert_eq!(ds.standardize().unwrap_err(), Error::ZeroVariance);
    }

    #[test]
    fn summaries() {
        let ds = Dataset::from_rows(
            vec![vec![0.0], vec![2.0], vec![6.0], vec![8.0]],
            vec!["a", "a", "b", "b"],
        )
        .unwrap();
        let s = ds.summaries();
        assert_eq!(s[0].center, vec![1.0]);
        assert_eq!(s[1].center, vec![7.0]);
        assert_eq!(s[0].scatter, 2.0);
        assert_eq!(s[1].mean_radius, 1.0);
        assert_eq!(ds.center(), vec![4.0]);
    }
}
