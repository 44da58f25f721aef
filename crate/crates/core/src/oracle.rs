// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

//! Brute-force reference computations, independent of the transform code.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frame::ReferenceFrame;
use crate::matrix::OperatorMatrix;
use crate::tomography::{ClassicalDistribution, ClassicalForm, GaussianParams};

/// Default width of the Gaussian standing in for `δ(mu q + nu p - X)`.
pub const DELTA_WIDTH: f64 = 0.02;
/// Half-width of the quadrature box in standard deviations.
const BOX_SIGMAS: f64 = 9.0;

/// Radon transform by direct 2D quadrature of
/// `f(q, p) g_eps(mu q + nu p - X)` over a rectangular grid, per unit mass.
///
/// The result approximates the tomogram convolved with a Gaussian of width
/// `delta_width`.
pub fn radon_quadrature_oracle(f: &ClassicalDistribution, frame: ReferenceFrame, x: f64, delta_width: f64) -> Result<f64> {
    let frame = frame.validated()?;
    if !(delta_width > 0.0) {
        return Err(Error::InvalidAxis(format!("delta width {delta_width} must be positive")));
    }
    let (q_box, p_box, min_sigma) = match &f.form {
        ClassicalForm::Grid(g) => {
            let edge = g.boundary_max();
            if edge > 1e-6 * g.max_value() {
                return Err(Error::SupportNotCovered(format!("boundary value {edge:e}")));
            }
            let s = g.q_axis.step.min(g.p_axis.step);
            ((g.q_axis.first(), g.q_axis.last()), (g.p_axis.first(), g.p_axis.last()), 4.0 * s)
        }
        form => {
            let mut parts = Vec::new();
            gaussians(form, &mut parts);
            let mut qb = (f64::INFINITY, f64::NEG_INFINITY);
            let mut pb = (f64::INFINITY, f64::NEG_INFINITY);
            let mut smin = f64::INFINITY;
            for g in parts {
                let (sq, sp) = (g.cov_qq.sqrt(), g.cov_pp.sqrt());
                qb = (qb.0.min(g.mean_q - BOX_SIGMAS * sq), qb.1.max(g.mean_q + BOX_SIGMAS * sq));
                pb = (pb.0.min(g.mean_p - BOX_SIGMAS * sp), pb.1.max(g.mean_p + BOX_SIGMAS * sp));
                let det = g.cov_qq * g.cov_pp - g.cov_qp * g.cov_qp;
                smin = smin.min((det / g.cov_qq.max(g.cov_pp)).sqrt());
            }
            (qb, pb, smin)
        }
    };
    let h = (delta_width / (1.5 * frame.mu.abs().max(frame.nu.abs()))).min(min_sigma / 4.0);
    let nq = ((q_box.1 - q_box.0) / h).ceil() as usize + 1;
    let np = ((p_box.1 - p_box.0) / h).ceil() as usize + 1;
    let norm = 1.0 / (delta_width * (2.0 * PI).sqrt());
    let mut acc = 0.0;
    for iq in 0..nq {
        let q = q_box.0 + iq as f64 * h;
        for ip in 0..np {
            let p = p_box.0 + ip as f64 * h;
            let d = (frame.project(q, p) - x) / delta_width;
            if d.abs() < 12.0 {
                acc += f.density(q, p) * (-0.5 * d * d).exp();
            }
        }
    }
    Ok(acc * h * h * norm / f.convention.mass())
}

fn gaussians(form: &ClassicalForm, out: &mut Vec<GaussianParams>) {
    match form {
        ClassicalForm::Gaussian(g) => out.push(*g),
        ClassicalForm::Point { q0, p0, width } => out.push(GaussianParams::isotropic(*q0, *p0, width * width)),
        ClassicalForm::Mixture(parts) => parts.iter().for_each(|(_, f)| gaussians(f, out)),
        ClassicalForm::Grid(_) => {}
    }
}

/// `Tr(A B)` as the explicit double sum.
pub fn direct_trace_product(a: &OperatorMatrix, b: &OperatorMatrix) -> Complex64 {
    let n = a.dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}
