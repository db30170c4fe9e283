//! Eigenvalue files: plain text, one positive real per line. Blank lines are
//! skipped.

use std::path::Path;

use levyarea::QWienerSpec;

use crate::error::{CliError, Result};

pub fn parse_eigenvalues(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        match t.parse::<f64>() {
            Ok(v) if v.is_finite() && v > 0.0 => out.push(v),
            _ => {
                return Err(CliError::EigenValue {
                    line: i + 1,
                    text: t.to_string(),
                })
            }
        }
    }
    Ok(out)
}

pub fn read_spec(path: &Path, dim: usize) -> Result<QWienerSpec> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::EigenFile {
        path: path.to_path_buf(),
        source,
    })?;
    let eta = parse_eigenvalues(&text)?;
    if eta.len() != dim {
        return Err(CliError::EigenCount {
            expected: dim,
            found: eta.len(),
        });
    }
    Ok(QWienerSpec::from_eigenvalues(&eta)?)
}
