// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

//! The five subcommands as library functions.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use symplectomo_core::star_product::{
    mean_value, observable_operator, star_trace, star_via_kernel, KernelKind, LabelPoint, OperatorSymbol, PolyObservable,
};
use symplectomo_core::tomography::{
    classical_inverse, classical_tomogram, density_from_tomogram, quantum_tomogram, quantum_tomogram_spectral,
    wigner_from_tomogram, ClassicalDistribution, ClassicalForm, PolarTomogram, TomogramSlice,
};
use symplectomo_core::{BasisConfig, DensityMatrix, ReferenceFrame, UniformAxis};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::formats::{
    read_json, read_tomogram_csv, write_grid_csv, write_json, write_tomogram_csv, InversionManifest, MatrixJson, SliceEntry,
    TomogramKind, TomogramManifest, MANIFEST_FILE,
};
use crate::spec::{parse_spec, Spec};

/// How quantum slices are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum TomogramMethod {
    /// FFT of the characteristic function.
    #[default]
    Characteristic,
    /// Eigenbasis of the quadrature, smeared by `epsilon`.
    Spectral,
}

enum Source {
    Quantum(DensityMatrix),
    Classical(ClassicalDistribution),
}

impl Source {
    fn slice(&self, frame: ReferenceFrame, axis: UniformAxis, method: TomogramMethod, eps: f64) -> CliResult<TomogramSlice> {
        Ok(match (self, method) {
            (Source::Quantum(rho), TomogramMethod::Characteristic) => quantum_tomogram(rho, frame, axis)?,
            (Source::Quantum(rho), TomogramMethod::Spectral) => quantum_tomogram_spectral(rho, frame, axis, Some(eps))?,
            (Source::Classical(f), _) => classical_tomogram(f, frame, axis)?,
        })
    }
}

fn source(spec: &Spec, cfg: &RunConfig) -> CliResult<Source> {
    match spec {
        Spec::Quantum(s) => Ok(Source::Quantum(symplectomo_core::hilbert::density_state(s, cfg.basis()?)?)),
        Spec::Classical(form) => Ok(Source::Classical(ClassicalDistribution::new(form.clone(), cfg.normalization.into())?)),
        Spec::Operator(_) => Err(CliError::parse("operator", "tomograms need a state, not an operator")),
    }
}

fn slice_file(i: usize) -> String {
    format!("slice_{i:05}.csv")
}

/// Writes one CSV per frame plus the manifest into `out`. Returns the manifest.
pub fn cmd_tomogram(state: &str, cfg: &RunConfig, method: TomogramMethod, out: &Path) -> CliResult<TomogramManifest> {
    let spec = parse_spec(state)?;
    let src = source(&spec, cfg)?;
    let kind = match src {
        Source::Quantum(_) => TomogramKind::Quantum,
        Source::Classical(_) => TomogramKind::Classical,
    };
    let (frames, lattice) = cfg.frame_list()?;
    let base = cfg.x_grid.axis()?;
    // Full lattices scale the X axis with the frame radius; explicit frames keep it.
    let scale_axis = lattice.is_some_and(|l| matches!(l.sampling, crate::config::SamplingName::Full));
    let slices = frames
        .par_iter()
        .map(|&f| {
            let axis = if scale_axis { base.scaled(f.norm()) } else { base };
            src.slice(f, axis, method, cfg.epsilon)
        })
        .collect::<CliResult<Vec<_>>>()?;
    std::fs::create_dir_all(out)?;
    let entries = slices
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let file = slice_file(i);
            write_tomogram_csv(&out.join(&file), s)?;
            Ok(SliceEntry {
                mu: s.frame.mu,
                nu: s.frame.nu,
                file,
                x_axis: [s.x_axis.center, s.x_axis.step, s.x_axis.count as f64],
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let manifest = TomogramManifest {
        kind,
        state: state.to_owned(),
        lattice,
        slices: entries,
        config: cfg.clone(),
    };
    write_json(&out.join(MANIFEST_FILE), &manifest)?;
    Ok(manifest)
}

/// Reads a tomogram directory back into slices.
pub fn load_tomogram(dir: &Path) -> CliResult<(TomogramManifest, Vec<TomogramSlice>)> {
    let manifest: TomogramManifest = read_json(&dir.join(MANIFEST_FILE))?;
    let slices = manifest
        .slices
        .par_iter()
        .map(|e| read_tomogram_csv(&dir.join(&e.file), e.frame(), e.axis()?))
        .collect::<CliResult<Vec<_>>>()?;
    Ok((manifest, slices))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum InvertTarget {
    Wigner,
    Density,
    Classical,
}

impl InvertTarget {
    fn name(self) -> &'static str {
        match self {
            InvertTarget::Wigner => "wigner",
            InvertTarget::Density => "density",
            InvertTarget::Classical => "classical",
        }
    }
}

/// Inverts a tomogram directory. Grids go to `<target>.csv`, the density to
/// `density.json`; diagnostics to `inversion.json`.
pub fn cmd_invert(dir: &Path, target: InvertTarget, cfg: &RunConfig, out: &Path) -> CliResult<InversionManifest> {
    let (manifest, slices) = load_tomogram(dir)?;
    let lattice_cfg = manifest.lattice.ok_or_else(|| {
        symplectomo_core::Error::InsufficientFrameCoverage("tomogram was taken on explicit frames, not a polar lattice".into())
    })?;
    let tomo = PolarTomogram::from_slices(lattice_cfg.lattice()?, lattice_cfg.sampling.into(), slices)?;
    let opts = cfg.reconstruction();
    let (qa, pa) = (cfg.q_grid.axis()?, cfg.p_grid.axis()?);
    std::fs::create_dir_all(out)?;
    let (output, diag) = match target {
        InvertTarget::Wigner => {
            let (grid, diag) = wigner_from_tomogram(&tomo, qa, pa, &opts)?;
            let file = "wigner.csv".to_owned();
            write_grid_csv(&out.join(&file), &grid)?;
            (file, diag)
        }
        InvertTarget::Classical => {
            let (dist, diag) = classical_inverse(&tomo, qa, pa, cfg.normalization.into(), &opts)?;
            let ClassicalForm::Grid(grid) = dist.form else {
                unreachable!("classical_inverse returns a grid")
            };
            let file = "classical.csv".to_owned();
            write_grid_csv(&out.join(&file), &grid)?;
            (file, diag)
        }
        InvertTarget::Density => {
            let (rho, diag) = density_from_tomogram(&tomo, cfg.basis()?, &opts)?;
            let file = "density.json".to_owned();
            write_json(&out.join(&file), &MatrixJson::from_matrix(rho.op()))?;
            (file, diag)
        }
    };
    let inv = InversionManifest {
        target: target.name().into(),
        source: dir.display().to_string(),
        output,
        diagnostics: diag.into(),
        config: cfg.clone(),
    };
    write_json(&out.join("inversion.json"), &inv)?;
    Ok(inv)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum StarRoute {
    #[default]
    Trace,
    Kernel,
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StarReport {
    pub x: [f64; 3],
    pub trace_value: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_value: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_diff: Option<f64>,
}

/// Star product of two specs at `point = (X, mu, nu)`.
pub fn cmd_star(a: &str, b: &str, point: [f64; 3], route: StarRoute, cfg: &RunConfig) -> CliResult<StarReport> {
    let basis = cfg.basis()?;
    let (ma, mb) = (parse_spec(a)?.operator(basis)?, parse_spec(b)?.operator(basis)?);
    let x = LabelPoint::new(point[0], point[1], point[2]);
    let pair = |z: symplectomo_core::Complex64| [z.re, z.im];
    let trace = match route {
        StarRoute::Trace | StarRoute::Both => Some(star_trace(&ma, &mb, x)?),
        StarRoute::Kernel => None,
    };
    let kernel = match route {
        StarRoute::Kernel | StarRoute::Both => Some(star_via_kernel(
            &OperatorSymbol::new(ma),
            &OperatorSymbol::new(mb),
            x,
            KernelKind::Quantum,
            &cfg.quadrature(),
        )?),
        StarRoute::Trace => None,
    };
    Ok(StarReport {
        x: point,
        trace_value: trace.map(pair),
        kernel_value: kernel.map(pair),
        abs_diff: trace.zip(kernel).map(|(t, k)| (t - k).norm()),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeanReport {
    pub observable: String,
    pub tomographic_value: f64,
    pub trace_value: f64,
    pub abs_diff: f64,
}

pub fn parse_observable(s: &str) -> CliResult<PolyObservable> {
    PolyObservable::ALL
        .into_iter()
        .find(|o| o.name() == s)
        .ok_or_else(|| CliError::parse(s, "observable must be one of 1, q, p, q2, p2, qp+pq"))
}

/// `<A>` from tomogram moments, next to `Tr(rho A)`.
pub fn cmd_mean(state: &str, observable: &str, cfg: &RunConfig) -> CliResult<MeanReport> {
    let obs = parse_observable(observable)?;
    let Spec::Quantum(s) = parse_spec(state)? else {
        return Err(CliError::parse(state, "mean values need a quantum state"));
    };
    let basis = cfg.basis()?;
    let rho = symplectomo_core::hilbert::density_state(&s, basis)?;
    let axis = cfg.x_grid.axis()?;
    let slices = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]
        .into_iter()
        .map(|(m, n)| quantum_tomogram(&rho, ReferenceFrame::new(m, n), axis))
        .collect::<Result<Vec<_>, _>>()?;
    let tomo = mean_value(&slices, obs)?;
    let trace = rho.op().trace_with(&observable_operator(obs, BasisConfig::new(rho.dim())?))?.re;
    Ok(MeanReport {
        observable: obs.name().into(),
        tomographic_value: tomo,
        trace_value: trace,
        abs_diff: (tomo - trace).abs(),
    })
}

/// Default output directory.
pub fn default_out() -> PathBuf {
    PathBuf::from("symplectomo-out")
}
