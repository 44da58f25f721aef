// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

//! Classical and quantum symplectic tomograms and their inversion.
//!
//! A tomogram `w(X, mu, nu)` is the probability density of `X = mu q + nu p`.
//! For a classical density `f(q, p)` it is the Radon transform
//! `∫ f δ(mu q + nu p - X) dq dp`; for a quantum state it is
//! `Tr(rho δ(X - mu q - nu p))`, computed here either from the characteristic
//! function `Tr(rho exp(-i k (mu q + nu p)))` by FFT or from the spectral
//! decomposition of the truncated quadrature operator.
//!
//! Every inverse passes through `G(mu, nu) = ∫ w(X, mu, nu) e^{iX} dX`,
//! followed by a polar quadrature over the frame plane.

mod classical;
mod moments;
mod quantum;
mod reconstruct;

use alloc::vec::Vec;

pub use crate::frame::ReferenceFrame;
use crate::grid::UniformAxis;

pub use classical::{
    classical_characteristic, classical_tomogram, classical_tomogram_value, ClassicalDistribution, ClassicalForm, GaussianParams,
    Normalization, PhaseSpaceGrid,
};
pub use moments::tomogram_moments;
pub use quantum::{
    quantum_tomogram, quantum_tomogram_spectral, quantum_tomogram_with, spectral_measure, symbol_density,
    KGrid, SpectralMeasure, TomogramOptions,
};
pub use reconstruct::{
    classical_inverse, density_from_tomogram, quantize_characteristic, quantize_slices, wigner_from_tomogram, CharacteristicGrid,
    PolarLattice, PolarTomogram, ReconstructionDiagnostics, ReconstructionOptions, Sampling, WignerGrid,
};

/// Tomogram density sampled on a uniform X grid for one reference frame.
#[derive(Debug, Clone, PartialEq)]
pub struct TomogramSlice {
    pub frame: ReferenceFrame,
    pub x_axis: UniformAxis,
    pub density: Vec<f64>,
}

impl TomogramSlice {
    /// Trapezoid `∫ w dX`.
    pub fn integral(&self) -> f64 {
        self.x_axis.trapezoid(&self.density)
    }

    /// Linearly interpolated density, zero outside the grid.
    pub fn value_at(&self, x: f64) -> f64 {
        self.x_axis.interpolate(&self.density, x)
    }

    pub fn min_density(&self) -> f64 {
        self.density.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Trapezoid `∫ X^order w dX` without normalization checks.
    pub fn raw_moment(&self, order: u32) -> f64 {
        let weighted: Vec<f64> = self
            .x_axis
            .points()
            .iter()
            .zip(&self.density)
            .map(|(x, w)| x.powi(order as i32) * w)
            .collect();
        self.x_axis.trapezoid(&weighted)
    }

    /// `∫ w(X) e^{i s X} dX` by the trapezoid rule.
    pub fn fourier_at(&self, s: f64) -> crate::Complex64 {
        let mut acc = crate::Complex64::new(0.0, 0.0);
        let n = self.density.len();
        for (i, &w) in self.density.iter().enumerate() {
            let weight = if i == 0 || i + 1 == n { 0.5 } else { 1.0 };
            acc += crate::Complex64::from_polar(w * weight, s * self.x_axis.point(i));
        }
        acc * self.x_axis.step
    }

    /// Index of the largest density sample.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &w) in self.density.iter().enumerate() {
            if w > self.density[best] {
                best = i;
            }
        }
        best
    }
}
