// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration: JSON file, CLI overrides, validation.

use std::path::Path;

use serde::{Deserialize, Serialize};
use symplectomo_core::star_product::QuadratureConfig;
use symplectomo_core::tomography::{Normalization, PolarLattice, ReconstructionOptions, Sampling};
use symplectomo_core::{BasisConfig, ReferenceFrame, UniformAxis};

use crate::error::{CliError, CliResult};

/// Smallest allowed grid count.
pub const MIN_COUNT: usize = 8;
/// Environment variable that overrides the configured seed.
pub const SEED_ENV: &str = "SYMPLECTOMO_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisConfig {
    pub center: f64,
    pub step: f64,
    pub count: usize,
}

impl AxisConfig {
    pub fn axis(&self) -> CliResult<UniformAxis> {
        Ok(UniformAxis::new(self.center, self.step, self.count)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplingName {
    #[default]
    UnitCircle,
    Full,
}

impl From<SamplingName> for Sampling {
    fn from(s: SamplingName) -> Self {
        match s {
            SamplingName::UnitCircle => Sampling::UnitCircle,
            SamplingName::Full => Sampling::Full,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    pub cutoff: f64,
    pub radial_step: f64,
    pub angular_step: f64,
    #[serde(default)]
    pub sampling: SamplingName,
}

impl LatticeConfig {
    pub fn lattice(&self) -> CliResult<PolarLattice> {
        Ok(PolarLattice::new(self.cutoff, self.radial_step, self.angular_step)?)
    }
}

impl Default for LatticeConfig {
    fn default() -> Self {
        let l = PolarLattice::default();
        Self {
            cutoff: l.cutoff,
            radial_step: l.radial_step,
            angular_step: l.angular_step,
            sampling: SamplingName::default(),
        }
    }
}

/// Frame selection: a polar lattice or an explicit `(mu, nu)` list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameConfig {
    Polar(LatticeConfig),
    Explicit(Vec<[f64; 2]>),
}

impl Default for FrameConfig {
    fn default() -> Self {
        FrameConfig::Polar(LatticeConfig::default())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizationName {
    Plain,
    #[default]
    Wigner,
}

impl From<NormalizationName> for Normalization {
    fn from(n: NormalizationName) -> Self {
        match n {
            NormalizationName::Plain => Normalization::Plain,
            NormalizationName::Wigner => Normalization::Wigner,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Boundary decay of the characteristic function, relative to `G(0)`.
    pub coverage: f64,
    pub imaginary: f64,
    pub quadrature_rel: f64,
    pub quadrature_abs: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        let r = ReconstructionOptions::default();
        let q = QuadratureConfig::default();
        Self {
            coverage: r.coverage_tol,
            imaginary: r.imag_tol,
            quadrature_rel: q.rel_tol,
            quadrature_abs: q.abs_tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub dim: usize,
    pub x_grid: AxisConfig,
    pub q_grid: AxisConfig,
    pub p_grid: AxisConfig,
    pub frames: FrameConfig,
    /// Smearing width for spectral tomograms.
    pub epsilon: f64,
    pub tolerances: Tolerances,
    pub normalization: NormalizationName,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let phase = AxisConfig {
            center: 0.0,
            step: 0.1,
            count: 81,
        };
        Self {
            dim: 32,
            x_grid: AxisConfig {
                center: 0.0,
                step: 0.05,
                count: 1024,
            },
            q_grid: phase,
            p_grid: phase,
            frames: FrameConfig::default(),
            epsilon: 0.1,
            tolerances: Tolerances::default(),
            normalization: NormalizationName::default(),
            seed: 1,
        }
    }
}

fn config_err(msg: String) -> CliError {
    CliError::Config(msg)
}

fn check_axis(name: &str, a: &AxisConfig) -> CliResult<()> {
    if a.count < MIN_COUNT {
        return Err(config_err(format!("{name}.count = {} is below {MIN_COUNT}", a.count)));
    }
    if !(a.step > 0.0) || !a.step.is_finite() || !a.center.is_finite() {
        return Err(config_err(format!("{name} needs a finite center and a positive step")));
    }
    Ok(())
}

fn check_positive(name: &str, v: f64) -> CliResult<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(config_err(format!("{name} = {v} must be positive")));
    }
    Ok(())
}

impl RunConfig {
    /// Reads a JSON config; missing fields take their defaults.
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| config_err(format!("{}: {e}", path.display())))
    }

    /// Replaces the seed with `SYMPLECTOMO_SEED` when set.
    pub fn apply_env(&mut self) -> CliResult<()> {
        if let Ok(v) = std::env::var(SEED_ENV) {
            self.seed = v
                .trim()
                .parse()
                .map_err(|_| CliError::parse(v.clone(), format!("{SEED_ENV} must be an unsigned integer")))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.dim < 2 {
            return Err(config_err(format!("dim = {} is below 2", self.dim)));
        }
        check_axis("x_grid", &self.x_grid)?;
        check_axis("q_grid", &self.q_grid)?;
        check_axis("p_grid", &self.p_grid)?;
        check_positive("epsilon", self.epsilon)?;
        let t = &self.tolerances;
        check_positive("tolerances.coverage", t.coverage)?;
        check_positive("tolerances.imaginary", t.imaginary)?;
        check_positive("tolerances.quadrature_rel", t.quadrature_rel)?;
        check_positive("tolerances.quadrature_abs", t.quadrature_abs)?;
        match &self.frames {
            FrameConfig::Polar(l) => {
                check_positive("frames.polar.cutoff", l.cutoff)?;
                check_positive("frames.polar.radial_step", l.radial_step)?;
                check_positive("frames.polar.angular_step", l.angular_step)?;
                l.lattice()?;
            }
            FrameConfig::Explicit(list) => {
                if list.is_empty() {
                    return Err(config_err("frames.explicit is empty".into()));
                }
                for f in list {
                    ReferenceFrame::new(f[0], f[1]).validated()?;
                }
            }
        }
        Ok(())
    }

    pub fn basis(&self) -> CliResult<BasisConfig> {
        Ok(BasisConfig::new(self.dim)?)
    }

    pub fn reconstruction(&self) -> ReconstructionOptions {
        ReconstructionOptions {
            coverage_tol: self.tolerances.coverage,
            imag_tol: self.tolerances.imaginary,
        }
    }

    pub fn quadrature(&self) -> QuadratureConfig {
        QuadratureConfig {
            rel_tol: self.tolerances.quadrature_rel,
            abs_tol: self.tolerances.quadrature_abs,
            ..QuadratureConfig::default()
        }
    }

    /// The frame list to measure, with the lattice when frames are polar.
    pub fn frame_list(&self) -> CliResult<(Vec<ReferenceFrame>, Option<LatticeConfig>)> {
        match &self.frames {
            FrameConfig::Polar(l) => Ok((l.lattice()?.expected_frames(l.sampling.into()), Some(*l))),
            FrameConfig::Explicit(list) => Ok((list.iter().map(|f| ReferenceFrame::new(f[0], f[1])).collect(), None)),
        }
    }
}

/// Flag overrides, one per config field.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct Overrides {
    /// Fock-basis dimension
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// X grid as `center,step,count`
    #[arg(long, value_parser = parse_axis, global = true)]
    pub x_grid: Option<AxisConfig>,
    /// q grid as `center,step,count`
    #[arg(long, value_parser = parse_axis, global = true)]
    pub q_grid: Option<AxisConfig>,
    /// p grid as `center,step,count`
    #[arg(long, value_parser = parse_axis, global = true)]
    pub p_grid: Option<AxisConfig>,
    /// Explicit frame `mu,nu` (repeatable); replaces the polar lattice
    #[arg(long = "frame", value_parser = parse_pair, global = true)]
    pub frame: Vec<[f64; 2]>,
    /// Polar lattice cutoff radius L
    #[arg(long, global = true)]
    pub cutoff: Option<f64>,
    #[arg(long, global = true)]
    pub radial_step: Option<f64>,
    #[arg(long, global = true)]
    pub angular_step: Option<f64>,
    /// `unit_circle` or `full`
    #[arg(long, value_parser = parse_sampling, global = true)]
    pub sampling: Option<SamplingName>,
    /// Spectral smearing width
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    #[arg(long, global = true)]
    pub coverage_tol: Option<f64>,
    #[arg(long, global = true)]
    pub imag_tol: Option<f64>,
    #[arg(long, global = true)]
    pub quad_rel_tol: Option<f64>,
    #[arg(long, global = true)]
    pub quad_abs_tol: Option<f64>,
    /// `plain` or `wigner`
    #[arg(long, value_parser = parse_normalization, global = true)]
    pub normalization: Option<NormalizationName>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

impl Overrides {
    pub fn apply(&self, cfg: &mut RunConfig) {
        if let Some(v) = self.dim {
            cfg.dim = v;
        }
        if let Some(v) = self.x_grid {
            cfg.x_grid = v;
        }
        if let Some(v) = self.q_grid {
            cfg.q_grid = v;
        }
        if let Some(v) = self.p_grid {
            cfg.p_grid = v;
        }
        if !self.frame.is_empty() {
            cfg.frames = FrameConfig::Explicit(self.frame.clone());
        }
        let lattice_flags = self.cutoff.is_some() || self.radial_step.is_some() || self.angular_step.is_some() || self.sampling.is_some();
        if lattice_flags {
            let mut l = match &cfg.frames {
                FrameConfig::Polar(l) => *l,
                FrameConfig::Explicit(_) => LatticeConfig::default(),
            };
            if let Some(v) = self.cutoff {
                l.cutoff = v;
            }
            if let Some(v) = self.radial_step {
                l.radial_step = v;
            }
            if let Some(v) = self.angular_step {
                l.angular_step = v;
            }
            if let Some(v) = self.sampling {
                l.sampling = v;
            }
            cfg.frames = FrameConfig::Polar(l);
        }
        if let Some(v) = self.epsilon {
            cfg.epsilon = v;
        }
        if let Some(v) = self.coverage_tol {
            cfg.tolerances.coverage = v;
        }
        if let Some(v) = self.imag_tol {
            cfg.tolerances.imaginary = v;
        }
        if let Some(v) = self.quad_rel_tol {
            cfg.tolerances.quadrature_rel = v;
        }
        if let Some(v) = self.quad_abs_tol {
            cfg.tolerances.quadrature_abs = v;
        }
        if let Some(v) = self.normalization {
            cfg.normalization = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
    }
}

/// Loads `path` (or defaults), applies flags then `SYMPLECTOMO_SEED`, validates.
pub fn resolve(path: Option<&Path>, overrides: &Overrides) -> CliResult<RunConfig> {
    let mut cfg = match path {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    overrides.apply(&mut cfg);
    cfg.apply_env()?;
    cfg.validate()?;
    Ok(cfg)
}

fn parse_floats(s: &str, n: usize) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(format!("expected {n} comma-separated numbers"));
    }
    parts.iter().map(|p| p.parse::<f64>().map_err(|_| format!("`{p}` is not a number"))).collect()
}

pub fn parse_pair(s: &str) -> Result<[f64; 2], String> {
    let v = parse_floats(s, 2)?;
    Ok([v[0], v[1]])
}

pub fn parse_axis(s: &str) -> Result<AxisConfig, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err("expected center,step,count".into());
    }
    let num = |p: &str| p.parse::<f64>().map_err(|_| format!("`{p}` is not a number"));
    Ok(AxisConfig {
        center: num(parts[0])?,
        step: num(parts[1])?,
        count: parts[2].parse().map_err(|_| format!("`{}` is not a count", parts[2]))?,
    })
}

fn parse_sampling(s: &str) -> Result<SamplingName, String> {
    match s {
        "unit_circle" => Ok(SamplingName::UnitCircle),
        "full" => Ok(SamplingName::Full),
        _ => Err("expected unit_circle or full".into()),
    }
}

fn parse_normalization(s: &str) -> Result<NormalizationName, String> {
    match s {
        "plain" => Ok(NormalizationName::Plain),
        "wigner" => Ok(NormalizationName::Wigner),
        _ => Err("expected plain or wigner".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate_and_round_trip() {
        let cfg = RunConfig::default();
        cfg.validate().unwrap();
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), cfg);
        let partial: RunConfig = serde_json::from_str(r#"{"dim": 12}"#).unwrap();
        assert_eq!(partial.dim, 12);
        assert_eq!(partial.x_grid, cfg.x_grid);
    }

    #[test]
    fn validation_rejects_bad_fields() {
        let mut cfg = RunConfig::default();
        cfg.epsilon = 0.0;
        assert_eq!(cfg.validate().unwrap_err().code(), "ConfigError");
        let mut cfg = RunConfig::default();
        cfg.x_grid.count = 7;
        assert!(cfg.validate().is_err());
        let mut cfg = RunConfig::default();
        cfg.frames = FrameConfig::Polar(LatticeConfig {
            cutoff: -1.0,
            ..LatticeConfig::default()
        });
        assert!(cfg.validate().is_err());
        let mut cfg = RunConfig::default();
        cfg.frames = FrameConfig::Explicit(vec![[0.0, 0.0]]);
        assert_eq!(cfg.validate().unwrap_err().code(), "InvalidFrame");
    }

    #[test]
    fn overrides_take_precedence() {
        let mut cfg = RunConfig::default();
        let o = Overrides {
            dim: Some(8),
            cutoff: Some(1.0),
            frame: vec![],
            seed: Some(9),
            ..Overrides::default()
        };
        o.apply(&mut cfg);
        assert_eq!(cfg.dim, 8);
        assert_eq!(cfg.seed, 9);
        match cfg.frames {
            FrameConfig::Polar(l) => assert_eq!(l.cutoff, 1.0),
            _ => panic!("lattice expected"),
        }
        assert_eq!(parse_axis("0,0.1,16").unwrap().count, 16);
        assert!(parse_pair("1").is_err());
    }
}
