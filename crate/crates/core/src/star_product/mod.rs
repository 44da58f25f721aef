// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

//! Star-product quantization on tomographic symbols.
//!
//! The dequantizer `U(X, mu, nu) = δ(X - mu q - nu p)` maps an operator to its
//! tomographic symbol `f_A(X, mu, nu) = Tr(A U)`; the quantizer
//! `D(X, mu, nu) = (1/2π) exp(i X - i mu q - i nu p)` maps it back. The
//! star product `f_A * f_B = f_{AB}` is computed either through the trace
//! (`star_trace`) or through the closed-form integral kernel
//! (`star_via_kernel`).

mod distributional;
mod kernels;
mod mean;
mod symbols;

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frame::ReferenceFrame;
use crate::grid::UniformAxis;

pub use distributional::{
    distributional_symbol, regularized_x_integral, DistributionalOperator, DistributionalSymbol, DistributionalTerm,
    XProfile,
};
pub use kernels::{
    associativity_residual, associativity_residual_kernel, kernel_classical, kernel_dual, kernel_quantum,
    kernel_ratio_check, star_via_kernel, KernelKind, QuadratureConfig,
};
pub use mean::{mean_value, observable_operator, PolyObservable};
pub use symbols::{dequantize_symbol, dual_symbol, quantize_operator, star_trace, weyl_symbol};

/// Label `x = (X, mu, nu)` of a tomographic symbol value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabelPoint {
    pub x: f64,
    pub frame: ReferenceFrame,
}

impl LabelPoint {
    pub const fn new(x: f64, mu: f64, nu: f64) -> Self {
        Self {
            x,
            frame: ReferenceFrame::new(mu, nu),
        }
    }
}

/// `prefactor * δ(constraint_residual)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub constraint_residual: f64,
    pub prefactor: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolClass {
    TraceClassNumeric,
    Distributional,
}

/// A function on label points.
pub trait SymbolField {
    fn class(&self) -> SymbolClass {
        SymbolClass::TraceClassNumeric
    }

    fn value(&self, x: LabelPoint) -> Result<Complex64>;

    /// `∫ f(X, frame) e^{i s X} dX`; frame `(0, 0)` gives the total X-mass.
    fn x_fourier(&self, frame: ReferenceFrame, s: f64) -> Result<Complex64>;

    /// Values along one frame on `x_axis`.
    fn slice(&self, frame: ReferenceFrame, x_axis: UniformAxis) -> Result<Vec<Complex64>> {
        x_axis
            .points()
            .into_iter()
            .map(|x| self.value(LabelPoint { x, frame }))
            .collect()
    }
}

/// Tomographic symbol of an operator in the truncated basis.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSymbol {
    pub op: crate::matrix::OperatorMatrix,
}

impl OperatorSymbol {
    pub fn new(op: crate::matrix::OperatorMatrix) -> Self {
        Self { op }
    }
}

impl SymbolField for OperatorSymbol {
    fn value(&self, x: LabelPoint) -> Result<Complex64> {
        dequantize_symbol(&self.op, x)
    }

    fn x_fourier(&self, frame: ReferenceFrame, s: f64) -> Result<Complex64> {
        // ∫ Tr(A δ(X - X̂)) e^{isX} dX = Tr(A exp(i s X̂))
        Ok(crate::hilbert::characteristic(&self.op, frame.scaled(s)))
    }

    fn slice(&self, frame: ReferenceFrame, x_axis: UniformAxis) -> Result<Vec<Complex64>> {
        crate::tomography::symbol_density(&self.op, frame, x_axis, &Default::default())
    }
}

/// Classical tomogram `w_f(X, mu, nu)` as a symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalSymbol {
    pub dist: crate::tomography::ClassicalDistribution,
}

impl SymbolField for ClassicalSymbol {
    fn value(&self, x: LabelPoint) -> Result<Complex64> {
        Ok(crate::tomography::classical_tomogram_value(&self.dist, x.frame, x.x)?.into())
    }

    fn x_fourier(&self, frame: ReferenceFrame, s: f64) -> Result<Complex64> {
        Ok(crate::tomography::classical_characteristic(&self.dist, frame.scaled(s)))
    }
}

/// Complex symbol samples along one frame.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolSlice {
    pub frame: ReferenceFrame,
    pub x_axis: UniformAxis,
    pub values: Vec<Complex64>,
}

impl SymbolSlice {
    fn interpolate(&self, x: f64) -> Complex64 {
        let t = self.x_axis.locate(x);
        let n = self.values.len();
        if t < 0.0 || t > (n - 1) as f64 {
            return Complex64::new(0.0, 0.0);
        }
        let i = (t as usize).min(n - 2);
        let f = t - i as f64;
        self.values[i] * (1.0 - f) + self.values[i + 1] * f
    }

    fn fourier(&self, s: f64) -> Complex64 {
        let n = self.values.len();
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, v) in self.values.iter().enumerate() {
            let w = if i == 0 || i + 1 == n { 0.5 } else { 1.0 };
            acc += v * Complex64::from_polar(w, s * self.x_axis.point(i));
        }
        acc * self.x_axis.step
    }
}

/// Symbol known on a finite set of frames. Values on other radii along a
/// stored direction follow from homogeneity, `f(X, r m) = f(X / r, m) / r`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSymbol {
    pub slices: Vec<SymbolSlice>,
}

impl SampledSymbol {
    /// Samples `symbol` on `frames`, all on the same X axis.
    pub fn sample(symbol: &dyn SymbolField, frames: &[ReferenceFrame], x_axis: UniformAxis) -> Result<Self> {
        let slices = frames
            .iter()
            .map(|&frame| {
                Ok(SymbolSlice {
                    frame,
                    x_axis,
                    values: symbol.slice(frame, x_axis)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { slices })
    }

    /// The stored slice along the direction of `frame` and the scale `r` with
    /// `frame = r * slice.frame`.
    fn along(&self, frame: ReferenceFrame) -> Result<(&SymbolSlice, f64)> {
        let n = frame.norm();
        self.slices
            .iter()
            .find_map(|s| {
                let m = s.frame.norm();
                let cross = s.frame.mu * frame.nu - s.frame.nu * frame.mu;
                let dot = s.frame.mu * frame.mu + s.frame.nu * frame.nu;
                (cross.abs() <= 1e-9 * m * n && dot > 0.0).then_some((s, n / m))
            })
            .ok_or(Error::MissingRequiredFrame {
                mu: frame.mu,
                nu: frame.nu,
            })
    }
}

impl SymbolField for SampledSymbol {
    fn value(&self, x: LabelPoint) -> Result<Complex64> {
        let frame = x.frame.validated()?;
        let (s, r) = self.along(frame)?;
        Ok(s.interpolate(x.x / r) / r)
    }

    fn x_fourier(&self, frame: ReferenceFrame, s: f64) -> Result<Complex64> {
        if frame.is_zero() {
            let first = self.slices.first().ok_or(Error::MissingRequiredFrame { mu: 0.0, nu: 0.0 })?;
            return Ok(first.fourier(0.0));
        }
        let (slice, r) = self.along(frame)?;
        Ok(slice.fourier(s * r))
    }
}
