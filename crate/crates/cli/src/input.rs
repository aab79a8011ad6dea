//! Points files: one rational per line (`p/q`, integer or decimal),
//! `#` starts a comment, blank lines are skipped.

use std::fs;
use std::path::Path;

use cyclic_rips_core::rational::parse_rational;
use cyclic_rips_core::{CirclePoint, PointConfiguration};

use crate::error::{CliError, Result};

pub fn parse_points(text: &str) -> Result<PointConfiguration> {
    let mut pts = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let q = parse_rational(line).map_err(|e| CliError::Input(format!("line {}: {e}", lineno + 1)))?;
        let p = CirclePoint::new(q).map_err(|e| CliError::Input(format!("line {}: {e}", lineno + 1)))?;
        pts.push(p);
    }
    Ok(PointConfiguration::new(pts)?)
}

pub fn read_points(path: &Path) -> Result<PointConfiguration> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_points(&text)
}
