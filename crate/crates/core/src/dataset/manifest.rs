use std::fs::{self, File};
use std::path::{Path, PathBuf};

use super::LabeledDataset;
use crate::trajectory::{read_trajectory_csv, write_trajectory_csv};
use crate::{Error, Result};

/// Loads a `path,label` manifest; paths resolve relative to the manifest.
/// Each sample's source id is its path as written in the manifest.
pub fn load_manifest(path: &Path) -> Result<LabeledDataset> {
    let file = File::open(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingFile(path.to_path_buf()),
        _ => Error::Io(e),
    })?;
    let base = path.parent().unwrap_or(Path::new("."));
    let parse_err = |row: usize, column: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        row,
        column,
        message,
    };
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file);
    let headers = rdr.headers().map_err(|e| parse_err(1, 1, e.to_string()))?;
    if headers.iter().collect::<Vec<_>>() != ["path", "label"] {
        return Err(parse_err(1, 1, "expected header `path,label`".into()));
    }
    let mut items = Vec::new();
    for (idx, record) in rdr.records().enumerate() {
        let row = idx + 2;
        let record = record.map_err(|e| parse_err(row, 1, e.to_string()))?;
        let (rel, label) = (&record[0], &record[1]);
        if rel.is_empty() {
            return Err(parse_err(row, 1, "empty path".into()));
        }
        if label.is_empty() {
            return Err(parse_err(row, 2, "empty label".into()));
        }
        let trajectory = read_trajectory_csv(&base.join(rel))?;
        items.push((trajectory, label.to_string(), rel.to_string()));
    }
    if items.is_empty() {
        return Err(parse_err(1, 1, "manifest lists no trajectories".into()));
    }
    LabeledDataset::from_named(items)
}

/// Writes each trajectory to `dir/trajectories/NNNNN.csv` and a manifest to
/// `dir/manifest.csv`, whose path is returned.
pub fn write_manifest(dataset: &LabeledDataset, dir: &Path) -> Result<PathBuf> {
    let traj_dir = dir.join("trajectories");
    fs::create_dir_all(&traj_dir)?;
    let manifest = dir.join("manifest.csv");
    let mut wtr = csv::Writer::from_path(&manifest).map_err(csv_io)?;
    wtr.write_record(["path", "label"]).map_err(csv_io)?;
    for (i, s) in dataset.samples().iter().enumerate() {
        let rel = format!("trajectories/{i:05}.csv");
        write_trajectory_csv(&dir.join(&rel), s.trajectory.points())?;
        wtr.write_record([rel.as_str(), dataset.class_names()[s.label].as_str()]).map_err(csv_io)?;
    }
    wtr.flush()?;
    Ok(manifest)
}

fn csv_io(e: csv::Error) -> Error {
    Error::Io(e.into())
}
