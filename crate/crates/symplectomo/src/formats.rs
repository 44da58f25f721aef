// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

//! File formats: tomogram CSV (`X,w`), grid CSV (`q,p,value`), matrix JSON,
//! manifest JSON. CSV numbers carry 9 significant digits with `.` as the
//! decimal separator and LF line endings; JSON numbers use the shortest
//! round-trip representation.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use symplectomo_core::tomography::{PhaseSpaceGrid, ReconstructionDiagnostics, TomogramSlice};
use symplectomo_core::{Complex64, OperatorMatrix, ReferenceFrame, UniformAxis};

use crate::config::{LatticeConfig, RunConfig};
use crate::error::{CliError, CliResult};

/// Significant digits written to CSV.
pub const CSV_DIGITS: usize = 9;

/// Decimal rendering with [`CSV_DIGITS`] significant digits; scientific
/// notation outside `[1e-4, 1e9)`.
pub fn fmt_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", CSV_DIGITS - 1, v);
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..].parse().expect("exponent digits");
    if !(-4..9).contains(&exp) {
        return sci;
    }
    let decimals = (CSV_DIGITS as i32 - 1 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Writes `bytes` to a temporary file next to `path` and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e.error)))?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Format(format!("{}: {e}", path.display())))
}

fn csv_bytes(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> CliResult<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

fn read_rows(path: &Path, header: &[&str]) -> CliResult<Vec<Vec<f64>>> {
    let mut r = csv::ReaderBuilder::new()
        .from_path(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let found: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if found != header {
        return Err(CliError::Format(format!("{}: header {found:?}, expected {header:?}", path.display())));
    }
    let mut rows = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        let vals = rec
            .iter()
            .map(|s| s.parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| CliError::Format(format!("{}: row {} is not numeric", path.display(), line + 2)))?;
        if vals.len() != header.len() {
            return Err(CliError::Format(format!("{}: row {} has {} fields", path.display(), line + 2, vals.len())));
        }
        rows.push(vals);
    }
    Ok(rows)
}

/// Grid coordinate read back from 9 digits must land on the axis node.
fn check_node(path: &Path, axis: &UniformAxis, i: usize, found: f64) -> CliResult<()> {
    let expected = axis.point(i);
    let tol = 1e-8 * expected.abs().max(axis.step);
    if (found - expected).abs() > tol {
        return Err(CliError::Format(format!(
            "{}: coordinate {found} does not match grid node {expected}",
            path.display()
        )));
    }
    Ok(())
}

pub fn tomogram_csv(slice: &TomogramSlice) -> CliResult<Vec<u8>> {
    let ax = slice.x_axis;
    csv_bytes(
        &["X", "w"],
        slice.density.iter().enumerate().map(|(i, &w)| vec![fmt_sig(ax.point(i)), fmt_sig(w)]),
    )
}

pub fn write_tomogram_csv(path: &Path, slice: &TomogramSlice) -> CliResult<()> {
    write_atomic(path, &tomogram_csv(slice)?)
}

pub fn read_tomogram_csv(path: &Path, frame: ReferenceFrame, x_axis: UniformAxis) -> CliResult<TomogramSlice> {
    let rows = read_rows(path, &["X", "w"])?;
    if rows.len() != x_axis.count {
        return Err(CliError::Format(format!("{}: {} rows, expected {}", path.display(), rows.len(), x_axis.count)));
    }
    for (i, r) in rows.iter().enumerate() {
        check_node(path, &x_axis, i, r[0])?;
    }
    Ok(TomogramSlice {
        frame,
        x_axis,
        density: rows.into_iter().map(|r| r[1]).collect(),
    })
}

/// Rows in q-major order, matching the grid storage.
pub fn grid_csv(grid: &PhaseSpaceGrid) -> CliResult<Vec<u8>> {
    let (qa, pa) = (grid.q_axis, grid.p_axis);
    csv_bytes(
        &["q", "p", "value"],
        (0..qa.count).flat_map(move |i| (0..pa.count).map(move |j| (i, j))).map(|(i, j)| {
            vec![fmt_sig(qa.point(i)), fmt_sig(pa.point(j)), fmt_sig(grid.at(i, j))]
        }),
    )
}

pub fn write_grid_csv(path: &Path, grid: &PhaseSpaceGrid) -> CliResult<()> {
    write_atomic(path, &grid_csv(grid)?)
}

pub fn read_grid_csv(path: &Path, q_axis: UniformAxis, p_axis: UniformAxis) -> CliResult<PhaseSpaceGrid> {
    let rows = read_rows(path, &["q", "p", "value"])?;
    if rows.len() != q_axis.count * p_axis.count {
        return Err(CliError::Format(format!("{}: {} rows, expected {}", path.display(), rows.len(), q_axis.count * p_axis.count)));
    }
    for (k, r) in rows.iter().enumerate() {
        check_node(path, &q_axis, k / p_axis.count, r[0])?;
        check_node(path, &p_axis, k % p_axis.count, r[1])?;
    }
    Ok(PhaseSpaceGrid::new(q_axis, p_axis, rows.into_iter().map(|r| r[2]).collect())?)
}

/// `{dim, entries: [[re, im], ...]}`, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &OperatorMatrix) -> Self {
        Self {
            dim: m.dim(),
            entries: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> CliResult<OperatorMatrix> {
        let data = self.entries.iter().map(|e| Complex64::new(e[0], e[1])).collect();
        OperatorMatrix::from_row_major(self.dim, data).map_err(|e| CliError::Format(format!("matrix: {e}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TomogramKind {
    Quantum,
    Classical,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceEntry {
    pub mu: f64,
    pub nu: f64,
    pub file: String,
    pub x_axis: [f64; 3],
}

impl SliceEntry {
    pub fn frame(&self) -> ReferenceFrame {
        ReferenceFrame::new(self.mu, self.nu)
    }

    pub fn axis(&self) -> CliResult<UniformAxis> {
        let count = self.x_axis[2];
        if count.fract() != 0.0 || count < 0.0 {
            return Err(CliError::Format(format!("{}: bad axis count {count}", self.file)));
        }
        UniformAxis::new(self.x_axis[0], self.x_axis[1], count as usize).map_err(|e| CliError::Format(format!("{}: {e}", self.file)))
    }
}

/// Written by `tomogram`, read by `invert`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TomogramManifest {
    pub kind: TomogramKind,
    pub state: String,
    pub lattice: Option<LatticeConfig>,
    pub slices: Vec<SliceEntry>,
    pub config: RunConfig,
}

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsJson {
    pub boundary_decay: f64,
    pub imaginary_residue: f64,
    pub trace_deviation: f64,
    pub min_eigenvalue: f64,
}

impl From<ReconstructionDiagnostics> for DiagnosticsJson {
    fn from(d: ReconstructionDiagnostics) -> Self {
        Self {
            boundary_decay: d.boundary_decay,
            imaginary_residue: d.imaginary_residue,
            trace_deviation: d.trace_deviation,
            min_eigenvalue: d.min_eigenvalue,
        }
    }
}

/// Written by `invert` next to its output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InversionManifest {
    pub target: String,
    pub source: String,
    pub output: String,
    pub diagnostics: DiagnosticsJson,
    pub config: RunConfig,
}
