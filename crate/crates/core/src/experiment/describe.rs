use std::io::Write;
use std::path::{Path, PathBuf};

use crate::point_context::{descriptor, ContextTable, Descriptor};
use crate::trajectory::{preprocess, read_trajectory_csv, PreprocessConfig, Trajectory};
use crate::{Error, Result};

/// A preprocessed trajectory with its descriptor.
#[derive(Debug, Clone)]
pub struct Description {
    pub trajectory: Trajectory,
    pub descriptor: Descriptor,
    pub table: ContextTable,
    /// Where a newly generated table was saved.
    pub saved_table: Option<PathBuf>,
}

/// Preprocesses the trajectory at `path` to `n` points and computes its
/// descriptor. An existing `table_path` is read; otherwise a table is
/// generated from `seed` and written to `table_path`, or to
/// `context_table_n{n}_l{λ}.csv` beside the trajectory when none is given.
pub fn cmd_describe(path: &Path, n: usize, lambda: usize, table_path: Option<&Path>, seed: u64) -> Result<Description> {
    let cfg = PreprocessConfig::with_n(n);
    cfg.validate()?;
    let raw = read_trajectory_csv(path)?;
    let trajectory = preprocess(&raw, &cfg)?;
    let (table, saved_table) = match table_path {
        Some(p) if p.exists() => {
            let table = ContextTable::read_csv(p, n)?;
            if table.lambda() != lambda {
                return Err(Error::InvalidConfig(format!(
                    "table {} has λ = {}, but λ = {lambda} was requested",
                    p.display(),
                    table.lambda()
                )));
            }
            (table, None)
        }
        other => {
            let table = ContextTable::generate(n, lambda, seed)?;
            let dest = other.map(Path::to_path_buf).unwrap_or_else(|| {
                path.with_file_name(format!("context_table_n{n}_l{lambda}.csv"))
            });
            table.write_csv(&dest)?;
            (table, Some(dest))
        }
    };
    let descriptor = descriptor(trajectory.points(), &table)?;
    Ok(Description {
        trajectory,
        descriptor,
        table,
        saved_table,
    })
}

impl Description {
    /// Two CSV blocks separated by a blank line: `point,x,y,z` (1-based
    /// points) and `index,value` (1-based descriptor entries).
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "point,x,y,z")?;
        for (i, p) in self.trajectory.points().iter().enumerate() {
            writeln!(out, "{},{},{},{}", i + 1, p.x, p.y, p.z)?;
        }
        writeln!(out)?;
        writeln!(out, "index,value")?;
        for (k, v) in self.descriptor.values.iter().enumerate() {
            writeln!(out, "{},{v}", k + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trajectory::write_trajectory_csv;
    use crate::Point3;

    #[test]
    fn straight_line_has_expected_length() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("line.csv");
        write_trajectory_csv(&path, &[Point3::zeros(), Point3::new(1.0, 2.0, 3.0)]).unwrap();
        let d = cmd_describe(&path, 30, 4, None, 1).unwrap();
        assert_eq!(d.descriptor.len(), 4 * 30 - 10);
        let saved = d.saved_table.clone().unwrap();
        assert!(saved.exists());

        let again = cmd_describe(&path, 30, 4, Some(&saved), 99).unwrap();
        assert_eq!(again.table, d.table);
        assert!(again.saved_table.is_none());
        let mut buf = Vec::new();
        d.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("point,x,y,z\n1,"));
        assert_eq!(text.lines().count(), 1 + 30 + 1 + 1 + 110);
    }

    #[test]
    fn missing_file_is_reported() {
        let err = cmd_describe(Path::new("/nonexistent/t.csv"), 30, 4, None, 0).unwrap_err();
        assert!(matches!(err, Error::MissingFile(_)));
    }
}
