// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::classical::{ClassicalDistribution, ClassicalForm, Normalization, PhaseSpaceGrid};
use super::TomogramSlice;
use crate::error::{Error, Result};
use crate::frame::ReferenceFrame;
use crate::grid::UniformAxis;
use crate::hilbert::{displacement_into, eig_hermitian, weyl_amplitude, BasisConfig, DensityMatrix};
use crate::matrix::OperatorMatrix;

/// Reconstructed Wigner function `W(q, p)`, normalized to `(1/2π) ∫ W = 1`.
pub type WignerGrid = PhaseSpaceGrid;

/// Polar `(mu, nu)` lattice: radii `i * radial_step` for `i = 1..=n_r` up to
/// `cutoff`, angles `j * angular_step` covering the full circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarLattice {
    pub cutoff: f64,
    pub radial_step: f64,
    pub angular_step: f64,
}

impl Default for PolarLattice {
    fn default() -> Self {
        Self {
            cutoff: 6.0,
            radial_step: 0.1,
            angular_step: PI / 64.0,
        }
    }
}

impl PolarLattice {
    pub fn new(cutoff: f64, radial_step: f64, angular_step: f64) -> Result<Self> {
        let lattice = Self {
            cutoff,
            radial_step,
            angular_step,
        };
        lattice.validate()?;
        Ok(lattice)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.cutoff > 0.0
            && self.radial_step > 0.0
            && self.angular_step > 0.0
            && self.cutoff.is_finite()
            && self.radial_step <= self.cutoff
            && self.angular_step <= PI / 4.0;
        if !ok {
            return Err(Error::InvalidAxis(format!(
                "polar lattice (L {}, dr {}, dtheta {}) is not usable",
                self.cutoff, self.radial_step, self.angular_step
            )));
        }
        Ok(())
    }

    pub fn radial_count(&self) -> usize {
        ((self.cutoff / self.radial_step).round() as usize).max(1)
    }

    pub fn angular_count(&self) -> usize {
        (2.0 * PI / self.angular_step).round() as usize
    }

    /// Actual radial step after rounding the cutoff onto the lattice.
    pub fn dr(&self) -> f64 {
        self.cutoff / self.radial_count() as f64
    }

    pub fn dtheta(&self) -> f64 {
        2.0 * PI / self.angular_count() as f64
    }

    pub fn radius(&self, i: usize) -> f64 {
        i as f64 * self.dr()
    }

    pub fn unit_frame(&self, j: usize) -> ReferenceFrame {
        ReferenceFrame::from_angle(j as f64 * self.dtheta())
    }

    /// Lattice node `(i, j)` with `i >= 1`.
    pub fn frame(&self, i: usize, j: usize) -> ReferenceFrame {
        self.unit_frame(j).scaled(self.radius(i))
    }

    /// Frames required by `sampling`, in storage order.
    pub fn expected_frames(&self, sampling: Sampling) -> Vec<ReferenceFrame> {
        let nt = self.angular_count();
        match sampling {
            Sampling::UnitCircle => (0..nt).map(|j| self.unit_frame(j)).collect(),
            Sampling::Full => (1..=self.radial_count())
                .flat_map(|i| (0..nt).map(move |j| (i, j)))
                .map(|(i, j)| self.frame(i, j))
                .collect(),
        }
    }
}

/// How the `(mu, nu)` plane is covered by measured slices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sampling {
    /// Every lattice node is measured directly.
    Full,
    /// Only unit frames are measured; other radii follow from homogeneity,
    /// `w(X, r m) = w(X / r, m) / r`.
    #[default]
    UnitCircle,
}

/// Tomogram slices laid out on a [`PolarLattice`].
#[derive(Debug, Clone, PartialEq)]
pub struct PolarTomogram {
    pub lattice: PolarLattice,
    pub sampling: Sampling,
    pub slices: Vec<TomogramSlice>,
}

impl PolarTomogram {
    /// Samples `measure(frame, axis)` at every required frame. In `Full` mode the
    /// axis for radius `r` is `base_axis.scaled(r)`.
    pub fn sample(
        lattice: PolarLattice,
        sampling: Sampling,
        base_axis: UniformAxis,
        mut measure: impl FnMut(ReferenceFrame, UniformAxis) -> Result<TomogramSlice>,
    ) -> Result<Self> {
        lattice.validate()?;
        let slices = lattice
            .expected_frames(sampling)
            .into_iter()
            .map(|f| measure(f, base_axis.scaled(f.norm())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            lattice,
            sampling,
            slices,
        })
    }

    /// Checks that `slices` match the frames required by `sampling`, in order.
    pub fn from_slices(lattice: PolarLattice, sampling: Sampling, slices: Vec<TomogramSlice>) -> Result<Self> {
        lattice.validate()?;
        let expected = lattice.expected_frames(sampling);
        if expected.len() != slices.len() {
            return Err(Error::InsufficientFrameCoverage(format!(
                "lattice needs {} slices, got {}",
                expected.len(),
                slices.len()
            )));
        }
        for (e, s) in expected.iter().zip(&slices) {
            if !e.approx_eq(&s.frame, 1e-9 * e.norm().max(1.0)) {
                return Err(Error::InsufficientFrameCoverage(format!(
                    "expected frame ({}, {}), found ({}, {})",
                    e.mu, e.nu, s.frame.mu, s.frame.nu
                )));
            }
        }
        Ok(Self {
            lattice,
            sampling,
            slices,
        })
    }

    /// `G(mu, nu) = ∫ w(X, mu, nu) e^{iX} dX` on the lattice.
    pub fn characteristic_grid(&self) -> CharacteristicGrid {
        let l = self.lattice;
        let (nr, nt) = (l.radial_count(), l.angular_count());
        let values = match self.sampling {
            Sampling::Full => self.slices.iter().map(|s| s.fourier_at(1.0)).collect(),
            Sampling::UnitCircle => {
                let mut v = Vec::with_capacity(nr * nt);
                for i in 1..=nr {
                    let r = l.radius(i);
                    v.extend(self.slices.iter().map(|s| s.fourier_at(r)));
                }
                v
            }
        };
        let origin = self.slices.iter().map(|s| s.integral()).sum::<f64>() / self.slices.len() as f64;
        CharacteristicGrid {
            lattice: l,
            origin: Complex64::new(origin, 0.0),
            values,
        }
    }
}

/// Values of `G` on a polar lattice; `values[(i - 1) * n_theta + j]` sits at
/// radius index `i >= 1`, `origin` is `G(0, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicGrid {
    pub lattice: PolarLattice,
    pub origin: Complex64,
    pub values: Vec<Complex64>,
}

impl CharacteristicGrid {
    pub fn from_fn(lattice: PolarLattice, mut g: impl FnMut(ReferenceFrame) -> Complex64) -> Result<Self> {
        lattice.validate()?;
        let values = lattice.expected_frames(Sampling::Full).into_iter().map(&mut g).collect();
        Ok(Self {
            lattice,
            origin: g(ReferenceFrame::new(0.0, 0.0)),
            values,
        })
    }

    /// `max |G|` on the outer ring relative to `|G(0)|`.
    pub fn boundary_decay(&self) -> f64 {
        let nt = self.lattice.angular_count();
        let ring = &self.values[self.values.len() - nt..];
        ring.iter().map(|z| z.norm()).fold(0.0, f64::max) / self.origin.norm().max(f64::MIN_POSITIVE)
    }

    fn check_coverage(&self, tol: f64) -> Result<f64> {
        let decay = self.boundary_decay();
        if decay > tol {
            return Err(Error::InsufficientFrameCoverage(format!(
                "|G| on the cutoff ring L = {} is {decay:.3e} of G(0), above {tol:e}",
                self.lattice.cutoff
            )));
        }
        Ok(decay)
    }

    /// Quadrature nodes `(frame, weight * G)` of `∫ d²m G(m) F(m)`.
    ///
    /// Trapezoid in `r` and `theta`; the `r = 0` end contributes through the
    /// Euler-Maclaurin term `(dr^2 / 12) 2π G(0) F(0)`, returned separately.
    fn weighted_nodes(&self) -> (Vec<(ReferenceFrame, Complex64)>, Complex64) {
        let l = self.lattice;
        let (nr, nt) = (l.radial_count(), l.angular_count());
        let (dr, dt) = (l.dr(), l.dtheta());
        let mut nodes = Vec::with_capacity(nr * nt);
        for i in 1..=nr {
            let end = if i == nr { 0.5 } else { 1.0 };
            let w = end * l.radius(i) * dr * dt;
            for j in 0..nt {
                nodes.push((l.frame(i, j), self.values[(i - 1) * nt + j] * w));
            }
        }
        (nodes, self.origin * (dr * dr / 12.0 * 2.0 * PI))
    }

    /// `c ∫ G(m) e^{-i (mu q + nu p)} d²m` on a `(q, p)` grid, real part and
    /// relative imaginary residue.
    fn fourier_to_grid(&self, q_axis: &UniformAxis, p_axis: &UniformAxis, c: f64) -> (Vec<f64>, f64) {
        let (nodes, origin) = self.weighted_nodes();
        let (nq, np) = (q_axis.count, p_axis.count);
        let qs = q_axis.points();
        let ps = p_axis.points();
        let mut acc = alloc::vec![origin; nq * np];
        let mut eq = alloc::vec![Complex64::new(0.0, 0.0); nq];
        let mut ep = alloc::vec![Complex64::new(0.0, 0.0); np];
        for (f, g) in nodes {
            for (e, &q) in eq.iter_mut().zip(&qs) {
                *e = Complex64::from_polar(1.0, -f.mu * q) * g;
            }
            for (e, &p) in ep.iter_mut().zip(&ps) {
                *e = Complex64::from_polar(1.0, -f.nu * p);
            }
            for (iq, a) in acc.chunks_exact_mut(np).enumerate() {
                let e = eq[iq];
                for (x, b) in a.iter_mut().zip(&ep) {
                    *x += e * b;
                }
            }
        }
        let re: Vec<f64> = acc.iter().map(|z| z.re * c).collect();
        let peak = re.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let imag = acc.iter().map(|z| (z.im * c).abs()).fold(0.0, f64::max);
        (re, imag / peak.max(f64::MIN_POSITIVE))
    }
}

/// Tolerances for the inversion routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconstructionOptions {
    /// Largest accepted `max |G|` on the cutoff ring relative to `G(0)`.
    pub coverage_tol: f64,
    /// Largest accepted relative imaginary residue.
    pub imag_tol: f64,
}

impl Default for ReconstructionOptions {
    fn default() -> Self {
        Self {
            coverage_tol: 1e-3,
            imag_tol: 1e-6,
        }
    }
}

/// Deviations observed while inverting.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ReconstructionDiagnostics {
    /// `max |G|` on the cutoff ring relative to `G(0)`.
    pub boundary_decay: f64,
    /// Relative imaginary residue (grids) or anti-Hermitian part (operators).
    pub imaginary_residue: f64,
    /// `|Tr(rho) - 1|` before renormalization (operators only).
    pub trace_deviation: f64,
    /// Smallest eigenvalue of the Hermitized, renormalized operator before
    /// negative eigenvalues are clipped (density reconstruction only).
    pub min_eigenvalue: f64,
}

fn check_imag(residue: f64, tol: f64) -> Result<()> {
    if residue > tol {
        return Err(Error::ImaginaryResidueTooLarge(residue));
    }
    Ok(())
}

/// Inverse Radon transform `f = (1/4π²) ∫ G(m) e^{-i(mu q + nu p)} d²m`,
/// scaled to the requested normalization convention.
pub fn classical_inverse(
    tomogram: &PolarTomogram,
    q_axis: UniformAxis,
    p_axis: UniformAxis,
    convention: Normalization,
    opts: &ReconstructionOptions,
) -> Result<(ClassicalDistribution, ReconstructionDiagnostics)> {
    q_axis.validate()?;
    p_axis.validate()?;
    let grid = tomogram.characteristic_grid();
    let decay = grid.check_coverage(opts.coverage_tol)?;
    let c = convention.mass() / (4.0 * PI * PI);
    let (values, residue) = grid.fourier_to_grid(&q_axis, &p_axis, c);
    check_imag(residue, opts.imag_tol)?;
    let diag = ReconstructionDiagnostics {
        boundary_decay: decay,
        imaginary_residue: residue,
        ..Default::default()
    };
    // quadrature ripple can leave tiny negative samples; they are kept as is
    let dist = ClassicalDistribution {
        form: ClassicalForm::Grid(PhaseSpaceGrid::new(q_axis, p_axis, values)?),
        convention,
    };
    Ok((dist, diag))
}

/// Wigner function `W(q, p) = (1/2π) ∫ G(m) e^{-i(mu q + nu p)} d²m`.
pub fn wigner_from_tomogram(
    tomogram: &PolarTomogram,
    q_axis: UniformAxis,
    p_axis: UniformAxis,
    opts: &ReconstructionOptions,
) -> Result<(WignerGrid, ReconstructionDiagnostics)> {
    q_axis.validate()?;
    p_axis.validate()?;
    let grid = tomogram.characteristic_grid();
    let decay = grid.check_coverage(opts.coverage_tol)?;
    let (values, residue) = grid.fourier_to_grid(&q_axis, &p_axis, 1.0 / (2.0 * PI));
    check_imag(residue, opts.imag_tol)?;
    let diag = ReconstructionDiagnostics {
        boundary_decay: decay,
        imaginary_residue: residue,
        ..Default::default()
    };
    Ok((PhaseSpaceGrid::new(q_axis, p_axis, values)?, diag))
}

/// Raw operator `(1/2π) ∫ G(m) exp(-i(mu q + nu p)) d²m` from characteristic values.
pub fn quantize_characteristic(
    grid: &CharacteristicGrid,
    cfg: BasisConfig,
    opts: &ReconstructionOptions,
) -> Result<(OperatorMatrix, ReconstructionDiagnostics)> {
    let decay = grid.check_coverage(opts.coverage_tol)?;
    let (nodes, origin) = grid.weighted_nodes();
    let dim = cfg.dim();
    let mut acc = OperatorMatrix::identity(dim).scale(origin);
    let mut d = OperatorMatrix::zeros(dim);
    for (f, g) in nodes {
        // exp(-i(mu q + nu p)) = D(-beta)
        displacement_into(-weyl_amplitude(f), &mut d);
        acc.add_scaled(&d, g);
    }
    let op = acc.scale_real(1.0 / (2.0 * PI));
    let scale = op.max_abs().max(f64::MIN_POSITIVE);
    let diag = ReconstructionDiagnostics {
        boundary_decay: decay,
        imaginary_residue: op.hermiticity_deviation() / scale,
        trace_deviation: (op.trace() - 1.0).norm(),
        min_eigenvalue: 0.0,
    };
    Ok((op, diag))
}

/// Raw density-operator reconstruction, no Hermitization or renormalization.
pub fn quantize_slices(
    tomogram: &PolarTomogram,
    cfg: BasisConfig,
    opts: &ReconstructionOptions,
) -> Result<(OperatorMatrix, ReconstructionDiagnostics)> {
    quantize_characteristic(&tomogram.characteristic_grid(), cfg, opts)
}

/// Relaxed positivity floor for reconstructed density matrices.
const RECONSTRUCTION_PSD_TOL: f64 = 1e-6;

/// Density operator from tomogram slices: raw reconstruction, Hermitized and
/// trace-renormalized. Eigenvalues below the relaxed floor (cutoff ripple) are
/// clipped to zero and the trace restored; the pre-clip minimum is reported.
pub fn density_from_tomogram(
    tomogram: &PolarTomogram,
    cfg: BasisConfig,
    opts: &ReconstructionOptions,
) -> Result<(DensityMatrix, ReconstructionDiagnostics)> {
    let (raw, mut diag) = quantize_slices(tomogram, cfg, opts)?;
    let herm = raw.hermitian_part();
    let mut rho = herm.scale_real(1.0 / herm.trace().re);
    if diag.trace_deviation > 1e-8 || diag.imaginary_residue > 1e-8 {
        log::info!(
            "reconstructed density renormalized: trace deviation {:e}, anti-Hermitian part {:e}",
            diag.trace_deviation,
            diag.imaginary_residue
        );
    }
    let es = eig_hermitian(&rho)?;
    diag.min_eigenvalue = es.values[0];
    if es.values[0] < -RECONSTRUCTION_PSD_TOL {
        log::info!("clipping negative eigenvalues down to {:e}", es.values[0]);
        let clipped = es.map_spectrum(|l| Complex64::new(l.max(0.0), 0.0)).hermitian_part();
        rho = clipped.scale_real(1.0 / clipped.trace().re);
    }
    Ok((DensityMatrix::with_psd_tolerance(rho, RECONSTRUCTION_PSD_TOL)?, diag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{density_state, fidelity, StateSpec};
    use crate::tomography::{classical_tomogram, quantum_tomogram, GaussianParams};

    fn xaxis() -> UniformAxis {
        UniformAxis::new(0.0, 0.05, 512).unwrap()
    }

    fn quantum(rho: &DensityMatrix, sampling: Sampling, lattice: PolarLattice) -> PolarTomogram {
        PolarTomogram::sample(lattice, sampling, xaxis(), |f, ax| quantum_tomogram(rho, f, ax)).unwrap()
    }

    #[test]
    fn lattice_layout() {
        let l = PolarLattice::default();
        assert_eq!(l.radial_count(), 60);
        assert_eq!(l.angular_count(), 128);
        assert_eq!(l.expected_frames(Sampling::UnitCircle).len(), 128);
        assert_eq!(l.expected_frames(Sampling::Full).len(), 60 * 128);
        let f = l.frame(60, 32);
        assert!(f.approx_eq(&ReferenceFrame::new(0.0, 6.0), 1e-12));
    }

    #[test]
    fn gaussian_round_trip_classical() {
        let f = ClassicalDistribution::gaussian(GaussianParams::standard(), Normalization::Plain).unwrap();
        let tomo = PolarTomogram::sample(PolarLattice::default(), Sampling::UnitCircle, xaxis(), |fr, ax| {
            classical_tomogram(&f, fr, ax)
        })
        .unwrap();
        let ax = UniformAxis::new(0.0, 0.1, 64).unwrap();
        let (g, diag) = classical_inverse(&tomo, ax, ax, Normalization::Plain, &Default::default()).unwrap();
        assert!(diag.imaginary_residue < 1e-6);
        let ClassicalForm::Grid(grid) = g.form else { panic!() };
        let exact = PhaseSpaceGrid::tabulate(ax, ax, |q, p| f.density(q, p));
        assert!(grid.max_abs_diff(&exact) < 1e-3);
    }

    #[test]
    fn ground_state_wigner() {
        let rho = density_state(&StateSpec::Fock(0), BasisConfig::new(16).unwrap()).unwrap();
        let tomo = quantum(&rho, Sampling::UnitCircle, PolarLattice::default());
        let ax = UniformAxis::new(0.0, 0.1, 80).unwrap();
        let (w, _) = wigner_from_tomogram(&tomo, ax, ax, &Default::default()).unwrap();
        let exact = PhaseSpaceGrid::tabulate(ax, ax, |q, p| 2.0 * (-q * q - p * p).exp());
        assert!(w.max_abs_diff(&exact) < 1e-2);
        assert!((w.integral() / (2.0 * PI) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn density_round_trip_and_sufficiency() {
        let cfg = BasisConfig::new(16).unwrap();
        let rho = density_state(&StateSpec::Coherent(Complex64::new(0.8, 0.0)), cfg).unwrap();
        let unit = quantum(&rho, Sampling::UnitCircle, PolarLattice::default());
        let (r1, diag) = density_from_tomogram(&unit, cfg, &Default::default()).unwrap();
        assert!(fidelity(&r1, &rho).unwrap() >= 0.999);
        assert!(diag.trace_deviation < 1e-3 && diag.min_eigenvalue > -1e-3, "{diag:?}");

        let coarse = PolarLattice::new(6.0, 0.2, PI / 32.0).unwrap();
        let a = quantum(&rho, Sampling::UnitCircle, coarse);
        let b = quantum(&rho, Sampling::Full, coarse);
        let (ra, _) = density_from_tomogram(&a, cfg, &Default::default()).unwrap();
        let (rb, _) = density_from_tomogram(&b, cfg, &Default::default()).unwrap();
        let gap = (fidelity(&ra, &rho).unwrap() - fidelity(&rb, &rho).unwrap()).abs();
        assert!(gap < 1e-3, "{gap}");
    }

    #[test]
    fn small_cutoff_is_rejected() {
        let rho = density_state(&StateSpec::Fock(0), BasisConfig::new(8).unwrap()).unwrap();
        let l = PolarLattice::new(1.0, 0.1, PI / 16.0).unwrap();
        let tomo = quantum(&rho, Sampling::UnitCircle, l);
        assert!(matches!(
            density_from_tomogram(&tomo, BasisConfig::new(8).unwrap(), &Default::default()),
            Err(Error::InsufficientFrameCoverage(_))
        ));
    }

    #[test]
    fn from_slices_checks_frames() {
        let l = PolarLattice::new(2.0, 0.5, PI / 8.0).unwrap();
        let rho = density_state(&StateSpec::Fock(0), BasisConfig::new(8).unwrap()).unwrap();
        let tomo = quantum(&rho, Sampling::UnitCircle, l);
        let mut slices = tomo.slices.clone();
        assert!(PolarTomogram::from_slices(l, Sampling::UnitCircle, slices.clone()).is_ok());
        slices.swap(0, 1);
        assert!(PolarTomogram::from_slices(l, Sampling::UnitCircle, slices).is_err());
        assert!(PolarTomogram::from_slices(l, Sampling::Full, tomo.slices).is_err());
    }
}
