// SPDX-License-Identifier: Apache-2.0

//! Vertex CSV, per-level JSON lines and the canonical report.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde_json::json;

use super::checks::VerificationReport;
use super::config::OutputConfig;
use super::HarnessError;
use crate::bounds::delta_decay_bound;
use crate::builder::DyadicCurve;

/// Columns `level,j,denom,x0,...,x{dim−1}`; one row per vertex at the final depth.
pub fn write_vertices_csv<W: Write>(out: W, dim: usize, curve: Option<&DyadicCurve>) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["level".to_string(), "j".into(), "denom".into()];
    header.extend((0..dim).map(|i| format!("x{i}")));
    w.write_record(&header)?;
    if let Some(c) = curve {
        let denom = 1u64 << c.depth;
        for (j, v) in c.vertices.iter().enumerate() {
            let mut row = vec![c.level_introduced(j).to_string(), j.to_string(), denom.to_string()];
            row.extend(v.coords().iter().map(|x| x.to_string()));
            w.write_record(&row)?;
        }
    }
    w.flush().map_err(|e| HarnessError::io("<csv>", e))?;
    Ok(())
}

/// One `{"i", "delta", "decay_bound", "length"}` object per level.
pub fn write_levels_jsonl<W: Write>(mut out: W, curve: &DyadicCurve) -> Result<(), HarnessError> {
    let mu = curve.feasibility.as_ref().and_then(|f| f.mu);
    let d0 = curve.deltas.first().copied().unwrap_or(0.0);
    for (i, &delta) in curve.deltas.iter().enumerate() {
        let bound = mu.map(|m| delta_decay_bound(m, d0, i));
        let line = json!({ "i": i, "delta": delta, "decay_bound": bound, "length": curve.lengths[i] });
        writeln!(out, "{line}").map_err(|e| HarnessError::io("<jsonl>", e))?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmittedPaths {
    pub vertices: PathBuf,
    pub levels: PathBuf,
    pub report: PathBuf,
}

fn create(path: &Path) -> Result<BufWriter<File>, HarnessError> {
    File::create(path).map(BufWriter::new).map_err(|e| HarnessError::io(path, e))
}

/// Writes all three files into `dir`, creating it if needed.
pub fn emit(
    report: &VerificationReport,
    curve: Option<&DyadicCurve>,
    dim: usize,
    dir: &Path,
    names: &OutputConfig,
) -> Result<EmittedPaths, HarnessError> {
    std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    let paths = EmittedPaths {
        vertices: dir.join(&names.vertices),
        levels: dir.join(&names.levels),
        report: dir.join(&names.report),
    };
    write_vertices_csv(create(&paths.vertices)?, dim, curve)?;
    let mut levels = create(&paths.levels)?;
    if let Some(c) = curve {
        write_levels_jsonl(&mut levels, c)?;
    }
    levels.flush().map_err(|e| HarnessError::io(&paths.levels, e))?;
    let mut rep = create(&paths.report)?;
    writeln!(rep, "{}", report.to_canonical_json()).map_err(|e| HarnessError::io(&paths.report, e))?;
    rep.flush().map_err(|e| HarnessError::io(&paths.report, e))?;
    Ok(paths)
}
