//! Importer for the Auslan sign archive.
//!
//! Each recorded instance is one text file (`*.sign` or `*.tsd`) holding one
//! frame per line with whitespace-, tab- or comma-separated channels. Only the
//! three position channels are kept. The sign word is the file stem with any
//! trailing instance number removed (`drink3.sign`, `drink-3.tsd` → `drink`).
//! Non-numeric lines (headers, comments) are skipped.

use std::fs;
use std::path::Path;

use walkdir::WalkDir;

use super::LabeledDataset;
use crate::trajectory::RawTrajectory;
use crate::{Error, Point3, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct AslOptions {
    /// 0-based channel indices holding x, y, z.
    pub position_columns: [usize; 3],
    pub extensions: Vec<String>,
}

impl Default for AslOptions {
    fn default() -> Self {
        Self {
            position_columns: [0, 1, 2],
            extensions: vec!["sign".into(), "tsd".into()],
        }
    }
}

pub fn import_asl(root: &Path) -> Result<LabeledDataset> {
    import_asl_with(root, &AslOptions::default())
}

pub fn import_asl_with(root: &Path, opts: &AslOptions) -> Result<LabeledDataset> {
    if !root.is_dir() {
        return Err(Error::UnrecognizedLayout(format!("{} is not a directory", root.display())));
    }
    let mut files = Vec::new();
    let mut other = 0usize;
    for entry in WalkDir::new(root).sort_by_file_name() {
        let entry = entry.map_err(|e| Error::Io(e.into()))?;
        if !entry.file_type().is_file() {
            continue;
        }
        let ext = entry.path().extension().and_then(|e| e.to_str()).unwrap_or("");
        if opts.extensions.iter().any(|x| x.eq_ignore_ascii_case(ext)) {
            files.push(entry.into_path());
        } else {
            other += 1;
        }
    }
    if files.is_empty() {
        return Err(Error::UnrecognizedLayout(format!(
            "no .{} files under {} ({other} other files found)",
            opts.extensions.join("/."),
            root.display()
        )));
    }
    let mut items = Vec::with_capacity(files.len());
    for path in files {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
        let name = sign_name(stem);
        if name.is_empty() {
            return Err(Error::UnrecognizedLayout(format!("cannot derive a sign word from {}", path.display())));
        }
        let text = fs::read_to_string(&path)?;
        let trajectory = parse_frames(&text, &path, opts.position_columns)?;
        let source = path.strip_prefix(root).unwrap_or(&path).to_string_lossy().into_owned();
        items.push((trajectory, name.to_string(), source));
    }
    LabeledDataset::from_named(items)
}

/// Sign word for a file stem: trailing digits and a `-`/`_` separator removed.
pub fn sign_name(stem: &str) -> &str {
    stem.trim_end_matches(|c: char| c.is_ascii_digit()).trim_end_matches(['-', '_'])
}

fn parse_frames(text: &str, path: &Path, cols: [usize; 3]) -> Result<RawTrajectory> {
    let need = cols.iter().max().unwrap() + 1;
    let mut points = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let fields: Vec<&str> = line.split(|c: char| c.is_whitespace() || c == ',').filter(|f| !f.is_empty()).collect();
        let values: Option<Vec<f64>> = fields.iter().map(|f| f.parse::<f64>().ok()).collect();
        let Some(values) = values else { continue };
        if values.is_empty() {
            continue;
        }
        if values.len() < need {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                row: idx + 1,
                column: values.len() + 1,
                message: format!("expected at least {need} channels, found {}", values.len()),
            });
        }
        points.push(Point3::new(values[cols[0]], values[cols[1]], values[cols[2]]));
    }
    RawTrajectory::new(points).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        row: 0,
        column: 0,
        message: e.to_string(),
    })
}
