use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use super::RawTrajectory;
use crate::{Error, Point3, Result};

const HEADER: [&str; 3] = ["x", "y", "z"];

/// Reads a trajectory CSV (`x,y,z` header, one point per row).
pub fn read_trajectory_csv(path: &Path) -> Result<RawTrajectory> {
    let file = File::open(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingFile(path.to_path_buf()),
        _ => Error::Io(e),
    })?;
    parse_trajectory_csv(file, path)
}

/// Parses trajectory CSV from any reader. `origin` only labels errors.
pub fn parse_trajectory_csv<R: Read>(reader: R, origin: &Path) -> Result<RawTrajectory> {
    let parse_err = |row: usize, column: usize, message: String| Error::Parse {
        path: origin.to_path_buf(),
        row,
        column,
        message,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| parse_err(1, 1, e.to_string()))?
        .clone();
    if headers.iter().collect::<Vec<_>>() != HEADER {
        return Err(parse_err(1, 1, format!("expected header `x,y,z`, found `{}`", headers.iter().collect::<Vec<_>>().join(","))));
    }
    let mut points = Vec::new();
    for (idx, record) in rdr.records().enumerate() {
        let row = idx + 2;
        let record = record.map_err(|e| parse_err(row, 1, e.to_string()))?;
        let mut coords = [0.0; 3];
        for (col, slot) in coords.iter_mut().enumerate() {
            let field = record
                .get(col)
                .filter(|f| !f.is_empty())
                .ok_or_else(|| parse_err(row, col + 1, "missing field".into()))?;
            *slot = field
                .parse::<f64>()
                .map_err(|_| parse_err(row, col + 1, format!("not a number: `{field}`")))?;
        }
        if record.len() > 3 {
            return Err(parse_err(row, 4, "unexpected extra field".into()));
        }
        points.push(Point3::new(coords[0], coords[1], coords[2]));
    }
    RawTrajectory::new(points).map_err(|e| match e {
        Error::InvalidTrajectory(msg) => parse_err(0, 0, msg),
        other => other,
    })
}

/// Writes points in the trajectory CSV format. Values use the shortest
/// representation that parses back to the same `f64`.
pub fn write_trajectory_csv(path: &Path, points: &[Point3]) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "x,y,z")?;
    for p in points {
        writeln!(out, "{},{},{}", p.x, p.y, p.z)?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<RawTrajectory> {
        parse_trajectory_csv(s.as_bytes(), Path::new("mem.csv"))
    }

    #[test]
    fn parses_well_formed_input() {
        let t = parse("x,y,z\n0,0,0\n1.5,-2,3e-1\n").unwrap();
        assert_eq!(t.points(), &[Point3::new(0., 0., 0.), Point3::new(1.5, -2., 0.3)]);
    }

    #[test]
    fn rejects_bad_header() {
        assert!(matches!(parse("a,b,c\n0,0,0\n1,1,1\n"), Err(Error::Parse { row: 1, .. })));
    }

    #[test]
    fn reports_row_and_column_of_bad_field() {
        match parse("x,y,z\n0,0,0\n1,abc,1\n") {
            Err(Error::Parse { row, column, .. }) => assert_eq!((row, column), (3, 2)),
            other => panic!("unexpected {other:?}"),
        }
        match parse("x,y,z\n0,0,0\n1,1\n") {
            Err(Error::Parse { row, column, .. }) => assert_eq!((row, column), (3, 3)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn write_then_read_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let pts = vec![Point3::new(0.1, 1.0 / 3.0, -2e-17), Point3::new(1e10, -0.0, 7.0)];
        write_trajectory_csv(&path, &pts).unwrap();
        assert_eq!(read_trajectory_csv(&path).unwrap().points(), pts.as_slice());
    }

    #[test]
    fn missing_file_is_reported() {
        assert!(matches!(
            read_trajectory_csv(Path::new("/nonexistent/t.csv")),
            Err(Error::MissingFile(_))
        ));
    }
}
