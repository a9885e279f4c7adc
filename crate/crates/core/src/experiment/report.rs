//! Per-repetition records, per-condition summaries and their CSV form.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::Result;

/// One repetition of one condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub lambda: usize,
    pub classes: usize,
    pub repetition: usize,
    /// Class names used, `;`-joined.
    pub class_subset: String,
    pub accuracy_plain: Option<f64>,
    pub accuracy_rst: Option<f64>,
    pub train_seconds: f64,
    /// Mean time to classify one test sample.
    pub test_seconds: f64,
    pub knda_gamma: f64,
    pub svm_gamma: Option<f64>,
    pub svm_penalty: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionSummary {
    pub lambda: usize,
    pub classes: usize,
    pub repetitions: usize,
    pub mean_plain: Option<f64>,
    pub std_plain: Option<f64>,
    pub mean_rst: Option<f64>,
    pub std_rst: Option<f64>,
    pub median_train_seconds: f64,
    pub median_test_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub records: Vec<RunRecord>,
    pub summaries: Vec<ConditionSummary>,
}

/// Mean and sample standard deviation (0 for a single value).
pub(crate) fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

pub(crate) fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 { v[m] } else { (v[m - 1] + v[m]) / 2.0 }
}

impl ExperimentReport {
    /// Groups records by `(classes, λ)` in first-appearance order.
    pub fn from_records(records: Vec<RunRecord>) -> Self {
        let mut keys: Vec<(usize, usize)> = Vec::new();
        for r in &records {
            if !keys.contains(&(r.classes, r.lambda)) {
                keys.push((r.classes, r.lambda));
            }
        }
        let summaries = keys
            .into_iter()
            .map(|(classes, lambda)| {
                let group: Vec<&RunRecord> = records.iter().filter(|r| r.classes == classes && r.lambda == lambda).collect();
                let stat = |f: fn(&RunRecord) -> Option<f64>| {
                    let v: Option<Vec<f64>> = group.iter().map(|r| f(r)).collect();
                    v.map(|v| mean_std(&v))
                };
                let plain = stat(|r| r.accuracy_plain);
                let rst = stat(|r| r.accuracy_rst);
                ConditionSummary {
                    lambda,
                    classes,
                    repetitions: group.len(),
                    mean_plain: plain.map(|p| p.0),
                    std_plain: plain.map(|p| p.1),
                    mean_rst: rst.map(|p| p.0),
                    std_rst: rst.map(|p| p.1),
                    median_train_seconds: median(&group.iter().map(|r| r.train_seconds).collect::<Vec<_>>()),
                    median_test_seconds: median(&group.iter().map(|r| r.test_seconds).collect::<Vec<_>>()),
                }
            })
            .collect();
        Self { records, summaries }
    }

    pub fn summary(&self, classes: usize, lambda: usize) -> Option<&ConditionSummary> {
        self.summaries.iter().find(|s| s.classes == classes && s.lambda == lambda)
    }

    /// Writes `<stem>.csv` (records) and `<stem>_summary.csv`.
    pub fn write_csv(&self, dir: &Path, stem: &str) -> Result<()> {
        fs::create_dir_all(dir)?;
        let mut w = csv::Writer::from_path(dir.join(format!("{stem}.csv"))).map_err(csv_err)?;
        for r in &self.records {
            w.serialize(r).map_err(csv_err)?;
        }
        w.flush()?;
        let mut w = csv::Writer::from_path(dir.join(format!("{stem}_summary.csv"))).map_err(csv_err)?;
        for s in &self.summaries {
            w.serialize(s).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads records back from `<stem>.csv`.
    pub fn read_csv(dir: &Path, stem: &str) -> Result<Self> {
        let mut rdr = csv::Reader::from_path(dir.join(format!("{stem}.csv"))).map_err(csv_err)?;
        let records = rdr.deserialize().collect::<std::result::Result<Vec<RunRecord>, _>>().map_err(csv_err)?;
        Ok(Self::from_records(records))
    }
}

fn csv_err(e: csv::Error) -> crate::Error {
    crate::Error::Io(e.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(lambda: usize, rep: usize, acc: f64) -> RunRecord {
        RunRecord {
            lambda,
            classes: 4,
            repetition: rep,
            class_subset: "a;b".into(),
            accuracy_plain: Some(acc),
            accuracy_rst: None,
            train_seconds: rep as f64,
            test_seconds: 0.1,
            knda_gamma: 0.5,
            svm_gamma: Some(1.0),
            svm_penalty: None,
        }
    }

    #[test]
    fn summaries_group_by_condition() {
        let report = ExperimentReport::from_records(vec![record(4, 0, 0.5), record(4, 1, 1.0), record(9, 0, 0.75)]);
        assert_eq!(report.summaries.len(), 2);
        let s = report.summary(4, 4).unwrap();
        assert_eq!(s.mean_plain, Some(0.75));
        assert!((s.std_plain.unwrap() - 0.125f64.sqrt()).abs() < 1e-12);
        assert_eq!(s.mean_rst, None);
        assert_eq!(s.median_train_seconds, 0.5);
    }

    #[test]
    fn csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let report = ExperimentReport::from_records(vec![record(4, 0, 0.5), record(4, 1, 1.0 / 3.0)]);
        report.write_csv(dir.path(), "lambda_sweep").unwrap();
        let back = ExperimentReport::read_csv(dir.path(), "lambda_sweep").unwrap();
        assert_eq!(back, report);
        let header = fs::read_to_string(dir.path().join("lambda_sweep.csv")).unwrap();
        assert!(header.starts_with("lambda,classes,repetition,class_subset,accuracy_plain,accuracy_rst"));
    }

    #[test]
    fn sample_std() {
        let (m, s) = mean_std(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - (5.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }
}
