// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::TomogramSlice;
use crate::error::{Error, Result};
use crate::frame::ReferenceFrame;
use crate::grid::UniformAxis;

/// Total phase-space mass of a distribution.
///
/// `Plain` densities integrate to 1; `Wigner` densities carry the
/// `(1/2π) ∫ f dq dp = 1` normalization shared with Wigner functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    Plain,
    #[default]
    Wigner,
}

impl Normalization {
    pub fn mass(self) -> f64 {
        match self {
            Normalization::Plain => 1.0,
            Normalization::Wigner => 2.0 * PI,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianParams {
    pub mean_q: f64,
    pub mean_p: f64,
    pub cov_qq: f64,
    pub cov_pp: f64,
    pub cov_qp: f64,
}

impl GaussianParams {
    pub fn standard() -> Self {
        Self::isotropic(0.0, 0.0, 1.0)
    }

    pub fn isotropic(mean_q: f64, mean_p: f64, variance: f64) -> Self {
        Self {
            mean_q,
            mean_p,
            cov_qq: variance,
            cov_pp: variance,
            cov_qp: 0.0,
        }
    }

    fn determinant(&self) -> f64 {
        self.cov_qq * self.cov_pp - self.cov_qp * self.cov_qp
    }

    fn validate(&self) -> Result<()> {
        let finite = [self.mean_q, self.mean_p, self.cov_qq, self.cov_pp, self.cov_qp]
            .iter()
            .all(|v| v.is_finite());
        if !finite || self.cov_qq <= 0.0 || self.cov_pp <= 0.0 || self.determinant() <= 0.0 {
            return Err(Error::InvalidDistribution(format!(
                "covariance [[{}, {}], [{}, {}]] is not positive definite",
                self.cov_qq, self.cov_qp, self.cov_qp, self.cov_pp
            )));
        }
        Ok(())
    }

    /// Unit-mass density.
    fn density(&self, q: f64, p: f64) -> f64 {
        let det = self.determinant();
        let (dq, dp) = (q - self.mean_q, p - self.mean_p);
        let quad = (self.cov_pp * dq * dq - 2.0 * self.cov_qp * dq * dp + self.cov_qq * dp * dp) / det;
        (-0.5 * quad).exp() / (2.0 * PI * det.sqrt())
    }

    /// Mean and variance of `mu q + nu p`.
    fn projected(&self, frame: ReferenceFrame) -> (f64, f64) {
        let (m, n) = (frame.mu, frame.nu);
        let mean = m * self.mean_q + n * self.mean_p;
        let var = m * m * self.cov_qq + 2.0 * m * n * self.cov_qp + n * n * self.cov_pp;
        (mean, var)
    }
}

/// Phase-space samples `values[iq * p_axis.count + ip]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpaceGrid {
    pub q_axis: UniformAxis,
    pub p_axis: UniformAxis,
    pub values: Vec<f64>,
}

impl PhaseSpaceGrid {
    pub fn new(q_axis: UniformAxis, p_axis: UniformAxis, values: Vec<f64>) -> Result<Self> {
        q_axis.validate()?;
        p_axis.validate()?;
        if values.len() != q_axis.count * p_axis.count {
            return Err(Error::DimensionMismatch {
                expected: q_axis.count * p_axis.count,
                found: values.len(),
            });
        }
        Ok(Self { q_axis, p_axis, values })
    }

    pub fn tabulate(q_axis: UniformAxis, p_axis: UniformAxis, mut f: impl FnMut(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(q_axis.count * p_axis.count);
        for iq in 0..q_axis.count {
            let q = q_axis.point(iq);
            for ip in 0..p_axis.count {
                values.push(f(q, p_axis.point(ip)));
            }
        }
        Self { q_axis, p_axis, values }
    }

    #[inline]
    pub fn at(&self, iq: usize, ip: usize) -> f64 {
        self.values[iq * self.p_axis.count + ip]
    }

    /// Double trapezoid integral.
    pub fn integral(&self) -> f64 {
        let rows: Vec<f64> = (0..self.q_axis.count)
            .map(|iq| {
                let row = &self.values[iq * self.p_axis.count..(iq + 1) * self.p_axis.count];
                self.p_axis.trapezoid(row)
            })
            .collect();
        self.q_axis.trapezoid(&rows)
    }

    /// Bilinear interpolation, zero outside the grid.
    pub fn interpolate(&self, q: f64, p: f64) -> f64 {
        let tq = self.q_axis.locate(q);
        let tp = self.p_axis.locate(p);
        let (nq, np) = (self.q_axis.count, self.p_axis.count);
        if tq < 0.0 || tp < 0.0 || tq > (nq - 1) as f64 || tp > (np - 1) as f64 {
            return 0.0;
        }
        let iq = (tq as usize).min(nq - 2);
        let ip = (tp as usize).min(np - 2);
        let (fq, fp) = (tq - iq as f64, tp - ip as f64);
        let v00 = self.at(iq, ip);
        let v01 = self.at(iq, ip + 1);
        let v10 = self.at(iq + 1, ip);
        let v11 = self.at(iq + 1, ip + 1);
        (1.0 - fq) * ((1.0 - fp) * v00 + fp * v01) + fq * ((1.0 - fp) * v10 + fp * v11)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest absolute value on the outer ring of samples.
    pub fn boundary_max(&self) -> f64 {
        let (nq, np) = (self.q_axis.count, self.p_axis.count);
        let mut m: f64 = 0.0;
        for iq in 0..nq {
            for ip in 0..np {
                if iq == 0 || ip == 0 || iq + 1 == nq || ip + 1 == np {
                    m = m.max(self.at(iq, ip).abs());
                }
            }
        }
        m
    }

    /// Grid indices of the largest sample.
    pub fn argmax(&self) -> (usize, usize) {
        let mut best = 0;
        for (i, &v) in self.values.iter().enumerate() {
            if v > self.values[best] {
                best = i;
            }
        }
        (best / self.p_axis.count, best % self.p_axis.count)
    }

    /// `max |self - other|` over a common grid.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ClassicalForm {
    Gaussian(GaussianParams),
    /// Point mass at `(q0, p0)`, band-limited as an isotropic Gaussian of
    /// standard deviation `width`.
    Point { q0: f64, p0: f64, width: f64 },
    /// Sampled density in the distribution's normalization convention.
    Grid(PhaseSpaceGrid),
    /// Convex combination of unit-mass components.
    Mixture(Vec<(f64, ClassicalForm)>),
}

/// Phase-space probability density together with its normalization convention.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalDistribution {
    pub form: ClassicalForm,
    pub convention: Normalization,
}

/// Grid samples below this fraction of the peak count as empty support.
const SUPPORT_LEVEL: f64 = 1e-6;

impl ClassicalDistribution {
    pub fn new(form: ClassicalForm, convention: Normalization) -> Result<Self> {
        validate_form(&form)?;
        Ok(Self { form, convention })
    }

    pub fn gaussian(params: GaussianParams, convention: Normalization) -> Result<Self> {
        Self::new(ClassicalForm::Gaussian(params), convention)
    }

    pub fn point(q0: f64, p0: f64, width: f64, convention: Normalization) -> Result<Self> {
        Self::new(ClassicalForm::Point { q0, p0, width }, convention)
    }

    /// Density at `(q, p)` in this distribution's convention.
    pub fn density(&self, q: f64, p: f64) -> f64 {
        match &self.form {
            ClassicalForm::Grid(g) => g.interpolate(q, p),
            form => self.convention.mass() * unit_density(form, q, p),
        }
    }
}

fn validate_form(form: &ClassicalForm) -> Result<()> {
    match form {
        ClassicalForm::Gaussian(g) => g.validate(),
        ClassicalForm::Point { q0, p0, width } => {
            if !(*width > 0.0) || !q0.is_finite() || !p0.is_finite() || !width.is_finite() {
                return Err(Error::InvalidDistribution(format!("point width {width} must be positive")));
            }
            Ok(())
        }
        ClassicalForm::Grid(g) => {
            if g.values.iter().any(|v| !(*v >= 0.0)) {
                return Err(Error::InvalidDistribution("grid values must be nonnegative".into()));
            }
            Ok(())
        }
        ClassicalForm::Mixture(parts) => {
            if parts.is_empty() || parts.iter().any(|(w, _)| !(*w >= 0.0)) {
                return Err(Error::InvalidWeights("mixture weights must be nonnegative".into()));
            }
            let total: f64 = parts.iter().map(|(w, _)| w).sum();
            if (total - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidWeights(format!("weights sum to {total}, expected 1")));
            }
            if parts.iter().any(|(_, f)| matches!(f, ClassicalForm::Grid(_))) {
                return Err(Error::InvalidDistribution("grid components cannot be mixed".into()));
            }
            parts.iter().try_for_each(|(_, f)| validate_form(f))
        }
    }
}

fn point_gaussian(q0: f64, p0: f64, width: f64) -> GaussianParams {
    GaussianParams::isotropic(q0, p0, width * width)
}

fn unit_density(form: &ClassicalForm, q: f64, p: f64) -> f64 {
    match form {
        ClassicalForm::Gaussian(g) => g.density(q, p),
        ClassicalForm::Point { q0, p0, width } => point_gaussian(*q0, *p0, *width).density(q, p),
        ClassicalForm::Mixture(parts) => parts.iter().map(|(w, f)| w * unit_density(f, q, p)).sum(),
        ClassicalForm::Grid(_) => unreachable!("grid densities carry their own convention"),
    }
}

/// Normalized characteristic function `E[exp(i (mu q + nu p))]`.
pub fn classical_characteristic(f: &ClassicalDistribution, frame: ReferenceFrame) -> Complex64 {
    match &f.form {
        ClassicalForm::Grid(g) => {
            let mut acc = Complex64::new(0.0, 0.0);
            let (nq, np) = (g.q_axis.count, g.p_axis.count);
            for iq in 0..nq {
                let wq = if iq == 0 || iq + 1 == nq { 0.5 } else { 1.0 };
                let q = g.q_axis.point(iq);
                for ip in 0..np {
                    let wp = if ip == 0 || ip + 1 == np { 0.5 } else { 1.0 };
                    let phase = frame.project(q, g.p_axis.point(ip));
                    acc += Complex64::from_polar(wq * wp * g.at(iq, ip), phase);
                }
            }
            acc * (g.q_axis.step * g.p_axis.step / f.convention.mass())
        }
        form => form_characteristic(form, frame),
    }
}

fn form_characteristic(form: &ClassicalForm, frame: ReferenceFrame) -> Complex64 {
    match form {
        ClassicalForm::Gaussian(g) => {
            let (mean, var) = g.projected(frame);
            Complex64::from_polar((-0.5 * var).exp(), mean)
        }
        ClassicalForm::Point { q0, p0, width } => {
            form_characteristic(&ClassicalForm::Gaussian(point_gaussian(*q0, *p0, *width)), frame)
        }
        ClassicalForm::Mixture(parts) => parts.iter().map(|(w, f)| form_characteristic(f, frame) * *w).sum(),
        ClassicalForm::Grid(_) => unreachable!(),
    }
}

/// Radon transform `∫ f δ(mu q + nu p - X) dq dp`, normalized to unit X-mass.
pub fn classical_tomogram(
    f: &ClassicalDistribution,
    frame: ReferenceFrame,
    x_axis: UniformAxis,
) -> Result<TomogramSlice> {
    let frame = frame.validated()?;
    x_axis.validate()?;
    let xs = x_axis.points();
    let density = match &f.form {
        ClassicalForm::Grid(g) => grid_line_integrals(g, frame, &xs, f.convention.mass())?,
        form => xs.iter().map(|&x| closed_form_density(form, frame, x)).collect(),
    };
    Ok(TomogramSlice {
        frame,
        x_axis,
        density,
    })
}

/// Tomogram density at a single `X`.
pub fn classical_tomogram_value(f: &ClassicalDistribution, frame: ReferenceFrame, x: f64) -> Result<f64> {
    let frame = frame.validated()?;
    match &f.form {
        ClassicalForm::Grid(g) => Ok(grid_line_integrals(g, frame, &[x], f.convention.mass())?[0]),
        form => Ok(closed_form_density(form, frame, x)),
    }
}

fn normal_pdf(x: f64, mean: f64, var: f64) -> f64 {
    let d = x - mean;
    (-0.5 * d * d / var).exp() / (2.0 * PI * var).sqrt()
}

fn closed_form_density(form: &ClassicalForm, frame: ReferenceFrame, x: f64) -> f64 {
    match form {
        ClassicalForm::Gaussian(g) => {
            let (mean, var) = g.projected(frame);
            normal_pdf(x, mean, var)
        }
        ClassicalForm::Point { q0, p0, width } => {
            closed_form_density(&ClassicalForm::Gaussian(point_gaussian(*q0, *p0, *width)), frame, x)
        }
        ClassicalForm::Mixture(parts) => parts.iter().map(|(w, c)| w * closed_form_density(c, frame, x)).sum(),
        ClassicalForm::Grid(_) => unreachable!(),
    }
}

/// Line integrals of bilinearly interpolated grid data along `mu q + nu p = X`.
fn grid_line_integrals(g: &PhaseSpaceGrid, frame: ReferenceFrame, xs: &[f64], mass: f64) -> Result<Vec<f64>> {
    let peak = g.max_value();
    if peak <= 0.0 {
        return Err(Error::InvalidDistribution("grid density is identically zero".into()));
    }
    let edge = g.boundary_max();
    if edge > SUPPORT_LEVEL * peak {
        return Err(Error::SupportNotCovered(format!(
            "boundary value {edge:e} exceeds {SUPPORT_LEVEL:e} of the peak {peak:e}"
        )));
    }
    let norm = frame.norm();
    let (ux, uy) = (frame.mu / norm, frame.nu / norm);
    // direction along the line
    let (dx, dy) = (-uy, ux);
    let ds = 0.5 * g.q_axis.step.min(g.p_axis.step);
    let (q_lo, q_hi) = (g.q_axis.first(), g.q_axis.last());
    let (p_lo, p_hi) = (g.p_axis.first(), g.p_axis.last());

    Ok(xs
        .iter()
        .map(|&x| {
            let (q0, p0) = (x * ux / norm, x * uy / norm);
            let Some((s_lo, s_hi)) = clip_line(q0, p0, dx, dy, (q_lo, q_hi), (p_lo, p_hi)) else {
                return 0.0;
            };
            let n = (((s_hi - s_lo) / ds).ceil() as usize).max(1);
            let h = (s_hi - s_lo) / n as f64;
            let vals: Vec<f64> = (0..=n)
                .map(|k| {
                    let s = s_lo + k as f64 * h;
                    g.interpolate(q0 + s * dx, p0 + s * dy)
                })
                .collect();
            crate::grid::trapezoid(&vals, h) / (norm * mass)
        })
        .collect())
}

/// Parameter interval where `(q0, p0) + s (dx, dy)` stays inside the box.
fn clip_line(q0: f64, p0: f64, dx: f64, dy: f64, qb: (f64, f64), pb: (f64, f64)) -> Option<(f64, f64)> {
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for (origin, dir, (a, b)) in [(q0, dx, qb), (p0, dy, pb)] {
        if dir.abs() < 1e-300 {
            if origin < a || origin > b {
                return None;
            }
        } else {
            let (t1, t2) = ((a - origin) / dir, (b - origin) / dir);
            lo = lo.max(t1.min(t2));
            hi = hi.min(t1.max(t2));
        }
    }
    (hi > lo).then_some((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn axis() -> UniformAxis {
        UniformAxis::new(0.0, 0.05, 512).unwrap()
    }

    fn standard(conv: Normalization) -> ClassicalDistribution {
        ClassicalDistribution::gaussian(GaussianParams::standard(), conv).unwrap()
    }

    #[test]
    fn standard_gaussian_value_on_diagonal_frame() {
        let s = classical_tomogram(&standard(Normalization::Plain), ReferenceFrame::new(1.0, 1.0), axis()).unwrap();
        assert_abs_diff_eq!(s.density[256], 0.282_094_79, epsilon = 1e-8);
        assert_abs_diff_eq!(s.integral(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn closed_form_matches_two_dimensional_quadrature() {
        // oracle: ∫∫ f(q,p) g_eps(mu q + nu p - X) dq dp with a narrow Gaussian delta
        let g = GaussianParams {
            mean_q: 0.4,
            mean_p: -0.3,
            cov_qq: 0.8,
            cov_pp: 1.3,
            cov_qp: 0.25,
        };
        let f = ClassicalDistribution::gaussian(g, Normalization::Plain).unwrap();
        let frame = ReferenceFrame::new(0.7, -1.2);
        let s = classical_tomogram(&f, frame, axis()).unwrap();
        let eps: f64 = 0.02;
        let h = 0.01;
        for &x in &[-1.0, 0.0, 0.9] {
            let mut acc = 0.0;
            let n = 1400;
            for i in 0..n {
                let q = -7.0 + i as f64 * h;
                for j in 0..n {
                    let p = -7.0 + j as f64 * h;
                    acc += f.density(q, p) * normal_pdf(frame.project(q, p) - x, 0.0, eps * eps);
                }
            }
            let oracle = acc * h * h;
            let (m, v) = g.projected(frame);
            // oracle carries the eps^2 broadening; compare against that exact value
            assert_abs_diff_eq!(oracle, normal_pdf(x, m, v + eps * eps), epsilon = 1e-6);
            assert_abs_diff_eq!(s.value_at(x), normal_pdf(x, m, v), epsilon = 1e-12);
            assert!((oracle - s.value_at(x)).abs() < 1e-3);
        }
    }

    #[test]
    fn homogeneity_by_scaled_frames() {
        let f = standard(Normalization::Wigner);
        let frame = ReferenceFrame::new(0.6, 1.1);
        let base = classical_tomogram(&f, frame, axis()).unwrap();
        for lambda in [2.0f64, -1.0, 0.5, 3.0, -2.0] {
            let scaled_axis = axis().scaled(lambda.abs());
            let s = classical_tomogram(&f, frame.scaled(lambda), scaled_axis).unwrap();
            for i in 1..512 {
                let j = if lambda > 0.0 { i } else { 512 - i };
                assert_abs_diff_eq!(lambda.abs() * s.density[j], base.density[i], epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn point_peak_sits_at_projection() {
        let f = ClassicalDistribution::point(1.0, -0.5, 0.1, Normalization::Plain).unwrap();
        let frame = ReferenceFrame::new(1.0, 2.0);
        let s = classical_tomogram(&f, frame, axis()).unwrap();
        assert_abs_diff_eq!(s.x_axis.point(s.argmax()), 0.0, epsilon = 1e-12);
        let s2 = classical_tomogram(&f, ReferenceFrame::new(1.0, 0.0), axis()).unwrap();
        assert_abs_diff_eq!(s2.x_axis.point(s2.argmax()), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn sampled_grid_route_matches_closed_form() {
        let g = GaussianParams {
            mean_q: 0.5,
            mean_p: 0.0,
            cov_qq: 1.0,
            cov_pp: 0.6,
            cov_qp: -0.2,
        };
        for conv in [Normalization::Plain, Normalization::Wigner] {
            let exact = ClassicalDistribution::gaussian(g, conv).unwrap();
            let ax = UniformAxis::new(0.0, 0.05, 321).unwrap();
            let grid = PhaseSpaceGrid::tabulate(ax, ax, |q, p| exact.density(q, p));
            assert_abs_diff_eq!(grid.integral(), conv.mass(), epsilon = 1e-6);
            let sampled = ClassicalDistribution::new(ClassicalForm::Grid(grid), conv).unwrap();
            for frame in [ReferenceFrame::new(1.0, 0.0), ReferenceFrame::new(0.3, -0.8), ReferenceFrame::new(0.0, 2.0)] {
                let a = classical_tomogram(&exact, frame, axis()).unwrap();
                let b = classical_tomogram(&sampled, frame, axis()).unwrap();
                let diff = a.density.iter().zip(&b.density).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
                assert!(diff < 2e-3, "{frame:?}: {diff}");
                assert_abs_diff_eq!(b.integral(), 1.0, epsilon = 1e-3);
            }
            let phi_exact = classical_characteristic(&exact, ReferenceFrame::new(0.7, 0.2));
            let phi_grid = classical_characteristic(&sampled, ReferenceFrame::new(0.7, 0.2));
            assert!((phi_exact - phi_grid).norm() < 1e-6);
        }
    }

    #[test]
    fn errors() {
        let f = standard(Normalization::Plain);
        assert_eq!(
            classical_tomogram(&f, ReferenceFrame::new(0.0, 0.0), axis()),
            Err(Error::InvalidFrame)
        );
        let bad = GaussianParams {
            cov_qp: 2.0,
            ..GaussianParams::standard()
        };
        assert!(ClassicalDistribution::gaussian(bad, Normalization::Plain).is_err());
        let ax = UniformAxis::new(0.0, 0.1, 21).unwrap();
        let grid = PhaseSpaceGrid::tabulate(ax, ax, |q, p| f.density(q, p));
        let clipped = ClassicalDistribution::new(ClassicalForm::Grid(grid), Normalization::Plain).unwrap();
        assert!(matches!(
            classical_tomogram(&clipped, ReferenceFrame::new(1.0, 0.0), axis()),
            Err(Error::SupportNotCovered(_))
        ));
    }
}
