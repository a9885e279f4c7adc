use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Context-point indices shared by all trajectories of a data set.
///
/// Point `i` (0-based, `i ≥ λ`) is described by its distances to the `λ`
/// distinct earlier points listed in `row(i)`. Points before `λ` have no row;
/// their pairwise distances are all part of the descriptor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextTable {
    n: usize,
    lambda: usize,
    rows: Vec<Vec<usize>>,
}

/// Draws a table where each row is a uniformly random `λ`-subset of the
/// earlier points, in random order, deterministic in `seed`.
pub fn make_context_table(n: usize, lambda: usize, seed: u64) -> Result<ContextTable> {
    ContextTable::generate(n, lambda, seed)
}

impl ContextTable {
    pub fn generate(n: usize, lambda: usize, seed: u64) -> Result<Self> {
        check_lambda(n, lambda)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows = (lambda..n)
            .map(|i| index::sample(&mut rng, i, lambda).into_vec())
            .collect();
        Ok(Self { n, lambda, rows })
    }

    /// Builds a table from explicit 0-based rows for points `λ..n`.
    pub fn from_rows(n: usize, lambda: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        check_lambda(n, lambda)?;
        if rows.len() != n - lambda {
            return Err(Error::SizeMismatch {
                expected: n - lambda,
                found: rows.len(),
            });
        }
        for (k, row) in rows.iter().enumerate() {
            let i = lambda + k;
            if row.len() != lambda {
                return Err(Error::SizeMismatch {
                    expected: lambda,
                    found: row.len(),
                });
            }
            let mut seen = vec![false; i];
            for &m in row {
                if m >= i || std::mem::replace(&mut seen[m], true) {
                    return Err(Error::InvalidConfig(format!(
                        "context row for point {} must hold distinct indices in [1..{}], got {}",
                        i + 1,
                        i,
                        m + 1
                    )));
                }
            }
        }
        Ok(Self { n, lambda, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// Context indices of 0-based point `i`, or `None` for `i < λ`.
    pub fn row(&self, i: usize) -> Option<&[usize]> {
        i.checked_sub(self.lambda)
            .and_then(|k| self.rows.get(k))
            .map(Vec::as_slice)
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Length of the descriptors this table produces.
    pub fn descriptor_len(&self) -> usize {
        super::descriptor_len(self.n, self.lambda)
    }

    /// A table for a smaller context number whose rows are prefixes of this
    /// table's rows. Points in `[lambda, self.lambda)` have no row here and get
    /// a fresh random subset; every distance it selects is still part of this
    /// table's descriptor.
    pub fn restrict(&self, lambda: usize, seed: u64) -> Result<Self> {
        check_lambda(self.n, lambda)?;
        if lambda > self.lambda {
            return Err(Error::InvalidConfig(format!(
                "cannot restrict a table with context number {} to {lambda}",
                self.lambda
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows = (lambda..self.n)
            .map(|i| match self.row(i) {
                Some(row) => row[..lambda].to_vec(),
                None => index::sample(&mut rng, i, lambda).into_vec(),
            })
            .collect();
        Ok(Self {
            n: self.n,
            lambda,
            rows,
        })
    }

    /// Serializes as CSV with header `i,j,m_ij` and 1-based indices.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,m_ij\n");
        for (k, row) in self.rows.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                writeln!(out, "{},{},{}", self.lambda + k + 1, j + 1, m + 1).unwrap();
            }
        }
        out
    }

    /// Parses [`ContextTable::to_csv`] output. The point count `n` is not
    /// recoverable from an empty table (`λ = n`), so the caller supplies it.
    pub fn from_csv(text: &str, n: usize) -> Result<Self> {
        let parse_err = |row: usize, column: usize, message: String| Error::Parse {
            path: "<context table>".into(),
            row,
            column,
            message,
        };
        let mut lines = text.lines();
        match lines.next().map(str::trim) {
            Some("i,j,m_ij") => {}
            other => {
                return Err(parse_err(1, 1, format!("expected header `i,j,m_ij`, found {other:?}")))
            }
        }
        let mut entries = Vec::new();
        for (idx, line) in lines.enumerate() {
            let row = idx + 2;
            if line.trim().is_empty() {
                continue;
            }
            let mut triple = [0usize; 3];
            let mut fields = line.split(',');
            for (col, slot) in triple.iter_mut().enumerate() {
                let f = fields
                    .next()
                    .ok_or_else(|| parse_err(row, col + 1, "missing field".into()))?
                    .trim();
                *slot = f
                    .parse()
                    .ok()
                    .filter(|&v: &usize| v >= 1)
                    .ok_or_else(|| parse_err(row, col + 1, format!("not a 1-based index: `{f}`")))?;
            }
            entries.push((row, triple));
        }
        let lambda = entries.iter().map(|(_, t)| t[1]).max().unwrap_or(n);
        check_lambda(n, lambda)?;
        let mut rows = vec![vec![usize::MAX; lambda]; n - lambda];
        for (row, [i, j, m]) in entries {
            if i <= lambda || i > n {
                return Err(parse_err(row, 1, format!("point index {i} outside ({lambda}..{n}]")));
            }
            let slot = &mut rows[i - lambda - 1][j - 1];
            if *slot != usize::MAX {
                return Err(parse_err(row, 2, format!("duplicate entry ({i},{j})")));
            }
            *slot = m - 1;
        }
        if rows.iter().flatten().any(|&m| m == usize::MAX) {
            return Err(parse_err(0, 0, "incomplete context table".into()));
        }
        Self::from_rows(n, lambda, rows)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_csv())?;
        Ok(())
    }

    pub fn read_csv(path: &Path, n: usize) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => Error::MissingFile(path.to_path_buf()),
            _ => Error::Io(e),
        })?;
        Self::from_csv(&text, n).map_err(|e| match e {
            Error::Parse {
                row,
                column,
                message,
                ..
            } => Error::Parse {
                path: path.to_path_buf(),
                row,
                column,
                message,
            },
            other => other,
        })
    }
}

fn check_lambda(n: usize, lambda: usize) -> Result<()> {
    if lambda == 0 || lambda > n {
        Err(Error::InvalidLambda { lambda, n })
    } else {
        Ok(())
    }
}
