// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::TomogramSlice;
use crate::error::{Error, Result};
use crate::fft::{dft_in_place, Sign};
use crate::frame::ReferenceFrame;
use crate::grid::UniformAxis;
use crate::hilbert::{characteristic_with, eig_hermitian, quadrature_operator, BasisConfig, DensityMatrix};
use crate::matrix::OperatorMatrix;

/// Frequency grid `k_m = (m - count/2) * step` for the X <-> k transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KGrid {
    pub step: f64,
    pub count: usize,
}

impl KGrid {
    /// The unique grid conjugate to `x_axis`: `step_X * step_k * count = 2π`.
    pub fn conjugate_to(x_axis: &UniformAxis) -> Self {
        Self {
            step: 2.0 * PI / (x_axis.step * x_axis.count as f64),
            count: x_axis.count,
        }
    }

    /// Largest sampled `|k|`.
    pub fn band_edge(&self) -> f64 {
        (self.count / 2) as f64 * self.step
    }

    fn check_against(&self, x_axis: &UniformAxis) -> Result<()> {
        let product = self.step * x_axis.step * self.count as f64;
        if self.count != x_axis.count || (product - 2.0 * PI).abs() > 1e-9 * 2.0 * PI {
            return Err(Error::NyquistViolation(format!(
                "k grid (step {}, count {}) is not conjugate to the X grid (step {}, count {})",
                self.step, self.count, x_axis.step, x_axis.count
            )));
        }
        Ok(())
    }
}

/// Knobs for the characteristic-function route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TomogramOptions {
    /// Explicit k grid; `None` uses [`KGrid::conjugate_to`].
    pub k_grid: Option<KGrid>,
    /// Gaussian smoothing width applied as `exp(-eps^2 k^2 / 2)` in k space.
    pub smoothing: Option<f64>,
    /// `|chi(band edge)| / |chi(0)|` above this level is a Nyquist violation.
    pub tail_tol: f64,
    /// Largest accepted `max |Im w| / max |w|` for density matrices.
    pub imag_tol: f64,
}

impl Default for TomogramOptions {
    fn default() -> Self {
        Self {
            k_grid: None,
            smoothing: None,
            tail_tol: 1e-10,
            imag_tol: 1e-8,
        }
    }
}

/// Complex X-density `(1/2π) ∫ e^{ikX} Tr(A exp(-ik(mu q + nu p))) dk` of an
/// arbitrary operator, on `x_axis`.
pub fn symbol_density(
    a: &OperatorMatrix,
    frame: ReferenceFrame,
    x_axis: UniformAxis,
    opts: &TomogramOptions,
) -> Result<Vec<Complex64>> {
    let frame = frame.validated()?;
    x_axis.validate()?;
    let kg = opts.k_grid.unwrap_or_else(|| KGrid::conjugate_to(&x_axis));
    kg.check_against(&x_axis)?;
    if let Some(eps) = opts.smoothing {
        if !(eps > 0.0) {
            return Err(Error::InvalidAxis(format!("smoothing width {eps} must be positive")));
        }
    }

    let n = x_axis.count;
    let off = x_axis.offset();
    let c = x_axis.center;
    let twopi_n = 2.0 * PI / n as f64;
    let mut scratch = OperatorMatrix::zeros(a.dim());

    let mut buf: Vec<Complex64> = (0..n)
        .map(|m| {
            let k = (m as f64 - off as f64) * kg.step;
            // Tr(A exp(-ik X)) = Tr(A W(-k frame))
            let mut chi = characteristic_with(a, frame.scaled(-k), &mut scratch);
            if let Some(eps) = opts.smoothing {
                chi *= (-0.5 * eps * eps * k * k).exp();
            }
            let shift = k * c - twopi_n * ((off * m) % n) as f64;
            chi * Complex64::from_polar(1.0, shift)
        })
        .collect();

    let chi0 = a.trace().norm().max(a.max_abs());
    let edge = buf[0].norm();
    if chi0 > 0.0 && edge > opts.tail_tol * chi0 {
        return Err(Error::NyquistViolation(format!(
            "characteristic function at the band edge k = {:.4} is {edge:e}, refine the X step",
            kg.band_edge()
        )));
    }

    dft_in_place(&mut buf, Sign::Positive);
    let pre = kg.step / (2.0 * PI);
    let tail = twopi_n * ((off * off) % n) as f64;
    Ok(buf
        .iter()
        .enumerate()
        .map(|(j, z)| z * Complex64::from_polar(pre, tail - twopi_n * ((off * j) % n) as f64))
        .collect())
}

/// Symplectic tomogram `Tr(rho δ(X - mu q - nu p))` via the characteristic function.
pub fn quantum_tomogram(rho: &DensityMatrix, frame: ReferenceFrame, x_axis: UniformAxis) -> Result<TomogramSlice> {
    quantum_tomogram_with(rho, frame, x_axis, &TomogramOptions::default())
}

pub fn quantum_tomogram_with(
    rho: &DensityMatrix,
    frame: ReferenceFrame,
    x_axis: UniformAxis,
    opts: &TomogramOptions,
) -> Result<TomogramSlice> {
    let values = symbol_density(rho.op(), frame, x_axis, opts)?;
    let peak = values.iter().map(|z| z.re.abs()).fold(0.0, f64::max);
    let imag = values.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if imag > opts.imag_tol * peak.max(f64::MIN_POSITIVE) {
        return Err(Error::ImaginaryResidueTooLarge(imag / peak));
    }
    Ok(TomogramSlice {
        frame: frame.validated()?,
        x_axis,
        density: values.iter().map(|z| z.re).collect(),
    })
}

/// Discrete spectral measure `sum_j w_j δ(X - lambda_j)` of the truncated
/// quadrature `mu q + nu p` in state `rho`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralMeasure {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl SpectralMeasure {
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Pushforward under `X -> lambda X`.
    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            nodes: self.nodes.iter().map(|x| x * lambda).collect(),
            weights: self.weights.clone(),
        }
    }

    /// `∫ X^order dm`.
    pub fn moment(&self, order: u32) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * x.powi(order as i32))
            .sum()
    }

    /// Convolution with a normalized Gaussian of width `eps`, sampled on `x_axis`.
    pub fn smeared(&self, x_axis: &UniformAxis, eps: f64) -> Vec<f64> {
        let norm = 1.0 / (eps * (2.0 * PI).sqrt());
        x_axis
            .points()
            .iter()
            .map(|&x| {
                self.nodes
                    .iter()
                    .zip(&self.weights)
                    .map(|(l, w)| {
                        let d = (x - l) / eps;
                        w * (-0.5 * d * d).exp()
                    })
                    .sum::<f64>()
                    * norm
            })
            .collect()
    }
}

pub fn spectral_measure(rho: &DensityMatrix, frame: ReferenceFrame, cfg: BasisConfig) -> Result<SpectralMeasure> {
    let frame = frame.validated()?;
    if cfg.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: cfg.dim(),
        });
    }
    let es = eig_hermitian(&quadrature_operator(frame, cfg))?;
    let weights = (0..es.dim())
        .map(|j| rho.op().expectation(&es.vector(j)).re)
        .collect();
    Ok(SpectralMeasure {
        nodes: es.values.clone(),
        weights,
    })
}

/// Spectral-route tomogram: the eigen-measure of `mu q + nu p` smeared by a
/// Gaussian of width `eps` (default `2 * x_axis.step`).
pub fn quantum_tomogram_spectral(
    rho: &DensityMatrix,
    frame: ReferenceFrame,
    x_axis: UniformAxis,
    eps: Option<f64>,
) -> Result<TomogramSlice> {
    x_axis.validate()?;
    let eps = eps.unwrap_or(2.0 * x_axis.step);
    if !(eps > 0.0) {
        return Err(Error::InvalidAxis(format!("smearing width {eps} must be positive")));
    }
    let cfg = BasisConfig::new(rho.dim())?;
    let measure = spectral_measure(rho, frame, cfg)?;
    Ok(TomogramSlice {
        frame: frame.validated()?,
        x_axis,
        density: measure.smeared(&x_axis, eps),
    })
}
