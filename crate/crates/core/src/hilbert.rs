// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

//! Operator algebra in the truncated harmonic-oscillator (Fock) basis.
//!
//! Conventions: `hbar = m = omega = 1`, `q = (a + a†)/√2`, `p = i(a† - a)/√2`.
//! Two kinds of phase-space exponentials are provided:
//!
//! * [`exp_displacement`] exponentiates the *truncated* quadrature matrix
//!   `mu q + nu p` through its eigendecomposition. It is exactly unitary on the
//!   truncated space but its far-from-diagonal range aliases once
//!   `|mu|, |nu|` approach the truncation radius.
//! * [`displacement`] / [`weyl_operator`] return the leading block of the
//!   untruncated operator `D(beta) = exp(beta a† - beta* a)` via the ladder
//!   recurrences. Traces against operators supported inside the block are
//!   exact, which is what the characteristic-function routes need.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use num_traits::Zero;

use crate::eigen::{jacobi_hermitian, EigenSystem};
use crate::error::{Error, Result};
use crate::frame::ReferenceFrame;
use crate::matrix::{check_dims, OperatorMatrix};

/// Hermiticity tolerance applied to raw inputs.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Renormalization factors above this level are reported through `log`.
const RENORMALIZATION_LOG_LEVEL: f64 = 1e-8;

/// Truncation of the Fock basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisConfig {
    dim: usize,
}

impl BasisConfig {
    pub const DEFAULT_DIM: usize = 64;

    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension(dim));
        }
        Ok(Self { dim })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl Default for BasisConfig {
    fn default() -> Self {
        Self {
            dim: Self::DEFAULT_DIM,
        }
    }
}

pub fn build_annihilation(cfg: BasisConfig) -> OperatorMatrix {
    OperatorMatrix::from_fn(cfg.dim(), |r, c| {
        if c == r + 1 {
            Complex64::new((c as f64).sqrt(), 0.0)
        } else {
            Complex64::zero()
        }
    })
}

/// `q = (a + a†)/√2`: `q[n-1][n] = q[n][n-1] = sqrt(n/2)`.
pub fn build_position(cfg: BasisConfig) -> OperatorMatrix {
    OperatorMatrix::from_fn(cfg.dim(), |r, c| {
        if r.abs_diff(c) == 1 {
            Complex64::new((r.max(c) as f64 / 2.0).sqrt(), 0.0)
        } else {
            Complex64::zero()
        }
    })
}

/// `p = i(a† - a)/√2`: `p[n][n-1] = i sqrt(n/2)`, `p[n-1][n] = -i sqrt(n/2)`.
pub fn build_momentum(cfg: BasisConfig) -> OperatorMatrix {
    OperatorMatrix::from_fn(cfg.dim(), |r, c| {
        let amp = (r.max(c) as f64 / 2.0).sqrt();
        if r == c + 1 {
            Complex64::new(0.0, amp)
        } else if c == r + 1 {
            Complex64::new(0.0, -amp)
        } else {
            Complex64::zero()
        }
    })
}

pub fn build_number(cfg: BasisConfig) -> OperatorMatrix {
    let diag: Vec<Complex64> = (0..cfg.dim()).map(|n| Complex64::new(n as f64, 0.0)).collect();
    OperatorMatrix::from_diagonal(&diag)
}

/// Phase-space inversion `diag((-1)^n)`.
pub fn build_parity(cfg: BasisConfig) -> OperatorMatrix {
    let diag: Vec<Complex64> = (0..cfg.dim())
        .map(|n| Complex64::new(if n % 2 == 0 { 1.0 } else { -1.0 }, 0.0))
        .collect();
    OperatorMatrix::from_diagonal(&diag)
}

/// `mu q + nu p` as a tridiagonal Hermitian matrix.
pub fn quadrature_operator(frame: ReferenceFrame, cfg: BasisConfig) -> OperatorMatrix {
    OperatorMatrix::from_fn(cfg.dim(), |r, c| {
        if r.abs_diff(c) != 1 {
            return Complex64::zero();
        }
        let amp = (r.max(c) as f64 / 2.0).sqrt();
        let p = if r > c { amp } else { -amp };
        Complex64::new(frame.mu * amp, frame.nu * p)
    })
}

/// Density operator: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    op: OperatorMatrix,
}

impl DensityMatrix {
    pub const HERMITIAN_TOL: f64 = 1e-12;
    pub const TRACE_TOL: f64 = 1e-10;
    pub const PSD_TOL: f64 = 1e-10;

    pub fn new(op: OperatorMatrix) -> Result<Self> {
        Self::with_psd_tolerance(op, Self::PSD_TOL)
    }

    /// Validates with a relaxed lower bound on the smallest eigenvalue.
    pub fn with_psd_tolerance(op: OperatorMatrix, psd_tol: f64) -> Result<Self> {
        let herm = op.hermiticity_deviation();
        if herm > Self::HERMITIAN_TOL {
            return Err(Error::NotDensity(format!("hermiticity deviation {herm:e}")));
        }
        let tr = op.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > Self::TRACE_TOL {
            return Err(Error::NotDensity(format!("trace {} + {}i", tr.re, tr.im)));
        }
        let lowest = jacobi_hermitian(&op).values[0];
        if lowest < -psd_tol {
            return Err(Error::NotDensity(format!("smallest eigenvalue {lowest:e}")));
        }
        Ok(Self { op })
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn op(&self) -> &OperatorMatrix {
        &self.op
    }

    pub fn into_inner(self) -> OperatorMatrix {
        self.op
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        self.op.trace_with(&self.op).map(|z| z.re).unwrap_or(0.0)
    }
}

/// Test-state families.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Fock(usize),
    Coherent(Complex64),
    /// Mean photon number `nbar >= 0`.
    Thermal(f64),
    /// Convex combination `(weight, component)`.
    Mixture(Vec<(f64, StateSpec)>),
}

/// Builds the density matrix for `spec`, renormalizing truncated tails.
pub fn density_state(spec: &StateSpec, cfg: BasisConfig) -> Result<DensityMatrix> {
    let op = state_operator(spec, cfg)?;
    DensityMatrix::new(op)
}

fn state_operator(spec: &StateSpec, cfg: BasisConfig) -> Result<OperatorMatrix> {
    let dim = cfg.dim();
    match spec {
        StateSpec::Fock(n) => {
            if *n >= dim {
                return Err(Error::FockLevelOutOfRange { level: *n, dim });
            }
            let mut m = OperatorMatrix::zeros(dim);
            m[(*n, *n)] = Complex64::new(1.0, 0.0);
            Ok(m)
        }
        StateSpec::Coherent(alpha) => {
            let mut amps = Vec::with_capacity(dim);
            let mut c = Complex64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
            for n in 0..dim {
                amps.push(c);
                c = c * alpha / ((n + 1) as f64).sqrt();
            }
            let kept: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
            report_renormalization("coherent", 1.0 - kept);
            let inv = 1.0 / kept.sqrt();
            for a in amps.iter_mut() {
                *a *= inv;
            }
            Ok(OperatorMatrix::from_fn(dim, |r, c| amps[r] * amps[c].conj()))
        }
        StateSpec::Thermal(nbar) => {
            if !(*nbar >= 0.0) || !nbar.is_finite() {
                return Err(Error::NotDensity(format!("thermal occupation {nbar} must be >= 0")));
            }
            let ratio = nbar / (nbar + 1.0);
            let mut probs = Vec::with_capacity(dim);
            let mut p = 1.0 / (nbar + 1.0);
            for _ in 0..dim {
                probs.push(p);
                p *= ratio;
            }
            let kept: f64 = probs.iter().sum();
            report_renormalization("thermal", 1.0 - kept);
            let diag: Vec<Complex64> = probs.iter().map(|&p| Complex64::new(p / kept, 0.0)).collect();
            Ok(OperatorMatrix::from_diagonal(&diag))
        }
        StateSpec::Mixture(parts) => {
            if parts.is_empty() {
                return Err(Error::InvalidWeights("empty mixture".into()));
            }
            if parts.iter().any(|(w, _)| !(*w >= 0.0) || !w.is_finite()) {
                return Err(Error::InvalidWeights("weights must be nonnegative".into()));
            }
            let total: f64 = parts.iter().map(|(w, _)| w).sum();
            if (total - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidWeights(format!("weights sum to {total}, expected 1")));
            }
            let mut acc = OperatorMatrix::zeros(dim);
            for (w, part) in parts {
                let m = state_operator(part, cfg)?;
                acc.add_scaled(&m, Complex64::new(*w, 0.0));
            }
            Ok(acc)
        }
    }
}

fn report_renormalization(kind: &str, lost: f64) {
    if lost > RENORMALIZATION_LOG_LEVEL {
        log::info!("{kind} state renormalized after truncation: lost weight {lost:e}");
    }
}

/// Eigendecomposition of a Hermitian matrix (tolerance [`HERMITIAN_TOL`]).
pub fn eig_hermitian(h: &OperatorMatrix) -> Result<EigenSystem> {
    eig_hermitian_with_tol(h, HERMITIAN_TOL)
}

pub fn eig_hermitian_with_tol(h: &OperatorMatrix, tol: f64) -> Result<EigenSystem> {
    let dev = h.hermiticity_deviation();
    if dev > tol {
        return Err(Error::NotHermitian(dev));
    }
    Ok(jacobi_hermitian(h))
}

/// `exp(i s 1 - i mu q - i nu p)` on the truncated space.
pub fn exp_displacement(s: f64, frame: ReferenceFrame, cfg: BasisConfig) -> Result<OperatorMatrix> {
    let h = quadrature_operator(frame, cfg);
    let es = eig_hermitian(&h)?;
    Ok(es.map_spectrum(|l| Complex64::from_polar(1.0, s - l)))
}

/// Leading `dim x dim` block of `D(beta) = exp(beta a† - beta* a)`.
pub fn displacement(beta: Complex64, cfg: BasisConfig) -> OperatorMatrix {
    let mut out = OperatorMatrix::zeros(cfg.dim());
    displacement_into(beta, &mut out);
    out
}

/// Fills `out` with the leading block of `D(beta)`.
///
/// Recurrences (from `a D = D (a + beta)` and `a† D = D (a† + beta*)`):
/// `D[0][n+1] = -beta* D[0][n] / sqrt(n+1)` and
/// `D[m+1][n] = (sqrt(n) D[m][n-1] + beta D[m][n]) / sqrt(m+1)`.
pub fn displacement_into(beta: Complex64, out: &mut OperatorMatrix) {
    let dim = out.dim();
    let d = out.as_mut_slice();
    let mb = -beta.conj();
    d[0] = Complex64::new((-beta.norm_sqr() / 2.0).exp(), 0.0);
    for n in 1..dim {
        d[n] = d[n - 1] * mb * inv_sqrt(n);
    }
    for m in 0..dim - 1 {
        let s = inv_sqrt(m + 1);
        let (head, tail) = d.split_at_mut((m + 1) * dim);
        let row = &head[m * dim..];
        let next = &mut tail[..dim];
        next[0] = beta * row[0] * s;
        for n in 1..dim {
            next[n] = (row[n - 1] * sqrt_usize(n) + beta * row[n]) * s;
        }
    }
}

#[inline]
fn sqrt_usize(n: usize) -> f64 {
    (n as f64).sqrt()
}

#[inline]
fn inv_sqrt(n: usize) -> f64 {
    1.0 / (n as f64).sqrt()
}

/// Displacement amplitude with `D(beta) = exp(i (mu q + nu p))`.
#[inline]
pub fn weyl_amplitude(frame: ReferenceFrame) -> Complex64 {
    Complex64::new(-frame.nu, frame.mu) * FRAC_1_SQRT_2
}

/// Leading block of `exp(i (mu q + nu p))` (untruncated operator).
pub fn weyl_operator(frame: ReferenceFrame, cfg: BasisConfig) -> OperatorMatrix {
    displacement(weyl_amplitude(frame), cfg)
}

/// `Tr(op_1 op_2 ... op_k)`.
pub fn trace_product(ops: &[&OperatorMatrix]) -> Result<Complex64> {
    let (first, rest) = ops.split_first().ok_or(Error::InvalidDimension(0))?;
    let dim = first.dim();
    for op in rest {
        check_dims(dim, op.dim())?;
    }
    match rest.split_last() {
        None => Ok(first.trace()),
        Some((last, middle)) => {
            let mut acc = (*first).clone();
            for op in middle {
                acc = acc.matmul(op)?;
            }
            acc.trace_with(last)
        }
    }
}

/// `Tr(a b) / max(Tr a², Tr b²)`.
pub fn fidelity(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    check_dims(a.dim(), b.dim())?;
    let ab = a.op().trace_with(b.op())?.re;
    let denom = a.purity().max(b.purity());
    Ok(ab / denom)
}

/// Characteristic function `Tr(A exp(i (mu q + nu p)))` via [`displacement_into`],
/// reusing `scratch` as the displacement buffer.
pub fn characteristic_with(op: &OperatorMatrix, frame: ReferenceFrame, scratch: &mut OperatorMatrix) -> Complex64 {
    displacement_into(weyl_amplitude(frame), scratch);
    // Tr(A D) = sum_{m,n} A[n][m] D[m][n]
    let dim = op.dim();
    let a = op.as_slice();
    let d = scratch.as_slice();
    let mut acc = Complex64::zero();
    for m in 0..dim {
        for n in 0..dim {
            acc += a[n * dim + m] * d[m * dim + n];
        }
    }
    acc
}

/// `Tr(A exp(i (mu q + nu p)))` for an operator supported in the truncated block.
pub fn characteristic(op: &OperatorMatrix, frame: ReferenceFrame) -> Complex64 {
    let mut scratch = OperatorMatrix::zeros(op.dim());
    characteristic_with(op, frame, &mut scratch)
}

/// Quadrature polynomial in the truncated space, computed in a basis two
/// levels larger so that products of `q`, `p` are exact inside the block.
pub fn quadratic_form(cq: f64, cp: f64, cqq: f64, cpp: f64, csym: f64, cfg: BasisConfig) -> OperatorMatrix {
    let big = BasisConfig { dim: cfg.dim() + 2 };
    let q = build_position(big);
    let p = build_momentum(big);
    let qq = &q * &q;
    let pp = &p * &p;
    let qp = &q * &p;
    let pq = &p * &q;
    let mut acc = OperatorMatrix::zeros(big.dim());
    acc.add_scaled(&q, Complex64::new(cq, 0.0));
    acc.add_scaled(&p, Complex64::new(cp, 0.0));
    acc.add_scaled(&qq, Complex64::new(cqq, 0.0));
    acc.add_scaled(&pp, Complex64::new(cpp, 0.0));
    acc.add_scaled(&qp, Complex64::new(csym, 0.0));
    acc.add_scaled(&pq, Complex64::new(csym, 0.0));
    acc.truncated(cfg.dim())
}

/// Coherent-state ket amplitudes (normalized after truncation).
pub fn coherent_ket(alpha: Complex64, cfg: BasisConfig) -> Vec<Complex64> {
    let mut amps = vec![Complex64::zero(); cfg.dim()];
    let mut c = Complex64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    for (n, a) in amps.iter_mut().enumerate() {
        *a = c;
        c = c * alpha / ((n + 1) as f64).sqrt();
    }
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in amps.iter_mut() {
        *a /= norm;
    }
    amps
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::{PI, SQRT_2};

    fn cfg(d: usize) -> BasisConfig {
        BasisConfig::new(d).unwrap()
    }

    #[test]
    fn basis_rejects_small_dims() {
        assert_eq!(BasisConfig::new(1), Err(Error::InvalidDimension(1)));
        assert_eq!(BasisConfig::default().dim(), 64);
    }

    #[test]
    fn position_matrix_entries() {
        let q2 = build_position(cfg(2));
        assert_abs_diff_eq!(q2[(0, 1)].re, 0.707_106_78, epsilon = 1e-8);
        assert_abs_diff_eq!(q2[(1, 0)].re, 0.707_106_78, epsilon = 1e-8);
        let q3 = build_position(cfg(3));
        assert_abs_diff_eq!(q3[(1, 2)].re, 1.0, epsilon = 1e-15);
        let q9 = build_position(cfg(9));
        assert!((0..9).all(|n| q9[(n, n)] == Complex64::zero()));
        assert_eq!(q9.hermiticity_deviation(), 0.0);
    }

    #[test]
    fn momentum_matrix_and_commutator() {
        let p2 = build_momentum(cfg(2));
        assert_abs_diff_eq!(p2[(0, 1)].im, -0.707_106_78, epsilon = 1e-8);
        assert_abs_diff_eq!(p2[(1, 0)].im, 0.707_106_78, epsilon = 1e-8);
        let c8 = cfg(8);
        let (q, p) = (build_position(c8), build_momentum(c8));
        assert_eq!(p.hermiticity_deviation(), 0.0);
        let comm = &(&q * &p) - &(&p * &q);
        for r in 0..7 {
            for c in 0..7 {
                let expect = if r == c { Complex64::i() } else { Complex64::zero() };
                assert!((comm[(r, c)] - expect).norm() < 1e-12);
            }
        }
        // the truncation corner carries the compensating -(dim-1) i
        assert_abs_diff_eq!(comm[(7, 7)].im, -7.0, epsilon = 1e-12);
    }

    #[test]
    fn ground_projector_and_errors() {
        let rho = density_state(&StateSpec::Fock(0), cfg(2)).unwrap();
        assert_eq!(rho.op()[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(rho.op()[(1, 1)], Complex64::zero());
        assert_eq!(
            density_state(&StateSpec::Fock(2), cfg(2)),
            Err(Error::FockLevelOutOfRange { level: 2, dim: 2 })
        );
        let bad = StateSpec::Mixture(vec![(0.7, StateSpec::Fock(0)), (0.7, StateSpec::Fock(1))]);
        assert!(matches!(density_state(&bad, cfg(4)), Err(Error::InvalidWeights(_))));
        let neg = StateSpec::Mixture(vec![(1.5, StateSpec::Fock(0)), (-0.5, StateSpec::Fock(1))]);
        assert!(matches!(density_state(&neg, cfg(4)), Err(Error::InvalidWeights(_))));
    }

    #[test]
    fn coherent_position_mean() {
        let c = cfg(32);
        let rho = density_state(&StateSpec::Coherent(Complex64::new(1.0, 0.0)), c).unwrap();
        let mean = trace_product(&[rho.op(), &build_position(c)]).unwrap();
        assert_abs_diff_eq!(mean.re, SQRT_2, epsilon = 1e-6);
    }

    #[test]
    fn thermal_weights_are_geometric() {
        let rho = density_state(&StateSpec::Thermal(0.5), cfg(32)).unwrap();
        // before renormalization p_n = (1/3) (1/3)^n... the ratio survives it
        for n in 0..10 {
            let ratio = rho.op()[(n + 1, n + 1)].re / rho.op()[(n, n)].re;
            assert_abs_diff_eq!(ratio, 1.0 / 3.0, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(rho.op()[(0, 0)].re, 2.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn eig_of_position_two_levels() {
        let es = eig_hermitian(&build_position(cfg(2))).unwrap();
        assert_abs_diff_eq!(es.values[0], -FRAC_1_SQRT_2, epsilon = 1e-12);
        assert_abs_diff_eq!(es.values[1], FRAC_1_SQRT_2, epsilon = 1e-12);
        let id = eig_hermitian(&OperatorMatrix::identity(4)).unwrap();
        assert_eq!(id.values, vec![1.0; 4]);
        let skew = OperatorMatrix::from_fn(3, |r, c| Complex64::new((r as f64) - (c as f64), 0.0));
        assert!(matches!(eig_hermitian(&skew), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn unit_frames_share_the_position_spectrum() {
        let c = cfg(64);
        let base = eig_hermitian(&build_position(c)).unwrap().values;
        for phi in [0.3, 1.1, 2.0, -0.7] {
            let h = quadrature_operator(ReferenceFrame::from_angle(phi), c);
            let vals = eig_hermitian(&h).unwrap().values;
            for (a, b) in vals.iter().zip(&base) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn exp_displacement_limits() {
        let c = cfg(8);
        let id = exp_displacement(0.0, ReferenceFrame::new(0.0, 0.0), c).unwrap();
        assert!(id.max_abs_diff(&OperatorMatrix::identity(8)) < 1e-14);
        let c32 = cfg(32);
        let ground = density_state(&StateSpec::Fock(0), c32).unwrap();
        let u = exp_displacement(0.0, ReferenceFrame::new(2.0, 0.0), c32).unwrap();
        let v = ground.op().trace_with(&u).unwrap();
        assert_abs_diff_eq!(v.re, 0.367_879_44, epsilon = 1e-6);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-10);
        let s = exp_displacement(0.7, ReferenceFrame::new(0.0, 0.0), c).unwrap();
        assert!((s[(3, 3)] - Complex64::from_polar(1.0, 0.7)).norm() < 1e-14);
    }

    #[test]
    fn ground_state_characteristic_function_by_quadrature() {
        // oracle: integrate psi0(x)^2-weighted exp(-i mu x) after splitting
        // exp(-i(mu q + nu p)) = e^{i mu nu/2} e^{-i mu q} e^{-i nu p}:
        // <0|..|0> = e^{i mu nu/2} ∫ psi0(x) e^{-i mu x} psi0(x - nu) dx
        let c = cfg(40);
        let ground = density_state(&StateSpec::Fock(0), c).unwrap();
        let psi0 = |x: f64| (-x * x / 2.0).exp() / PI.powf(0.25);
        for (mu, nu) in [(0.5, -1.0), (2.0, 2.0), (-1.3, 0.4), (0.0, 1.8)] {
            let h = 1e-3;
            let mut acc = Complex64::zero();
            let mut x = -12.0;
            while x <= 12.0 {
                acc += Complex64::from_polar(psi0(x) * psi0(x - nu), -mu * x) * h;
                x += h;
            }
            let oracle = acc * Complex64::from_polar(1.0, mu * nu / 2.0);
            let u = exp_displacement(0.0, ReferenceFrame::new(mu, nu), c).unwrap();
            let v = ground.op().trace_with(&u).unwrap();
            assert!((v - oracle).norm() < 1e-6, "({mu},{nu}): {v} vs {oracle}");
            assert!((oracle.re - (-(mu * mu + nu * nu) / 4.0).exp()).abs() < 1e-6);
        }
    }

    #[test]
    fn closed_form_displacement_matches_laguerre_entries() {
        // <m|D(b)|n> = sqrt(n!/m!) b^{m-n} e^{-|b|^2/2} L_n^{(m-n)}(|b|^2), m >= n
        fn laguerre(n: usize, alpha: f64, x: f64) -> f64 {
            let (mut l0, mut l1) = (1.0, 1.0 + alpha - x);
            if n == 0 {
                return l0;
            }
            for k in 1..n {
                let kf = k as f64;
                let l2 = ((2.0 * kf + 1.0 + alpha - x) * l1 - (kf + alpha) * l0) / (kf + 1.0);
                l0 = l1;
                l1 = l2;
            }
            l1
        }
        fn fact(n: usize) -> f64 {
            (1..=n).map(|k| k as f64).product()
        }
        let beta = Complex64::new(0.8, -1.3);
        let d = displacement(beta, cfg(12));
        for m in 0..12 {
            for n in 0..=m {
                let x = beta.norm_sqr();
                let expect = beta.powu((m - n) as u32)
                    * ((fact(n) / fact(m)).sqrt() * (-x / 2.0).exp() * laguerre(n, (m - n) as f64, x));
                assert!((d[(m, n)] - expect).norm() < 1e-12, "({m},{n})");
                // <n|D(b)|m> = conj(<m|D(-b)|n>)-type symmetry: D[n][m] = (-b*)^{m-n}...
                let mirror = (-beta.conj()).powu((m - n) as u32)
                    * ((fact(n) / fact(m)).sqrt() * (-x / 2.0).exp() * laguerre(n, (m - n) as f64, x));
                assert!((d[(n, m)] - mirror).norm() < 1e-12, "({n},{m})");
            }
        }
    }

    #[test]
    fn weyl_operator_agrees_with_truncated_exponential_in_the_low_block() {
        let frame = ReferenceFrame::new(0.9, -1.4);
        let big = cfg(96);
        let exact = weyl_operator(frame, cfg(10));
        let trunc = exp_displacement(0.0, ReferenceFrame::new(-frame.mu, -frame.nu), big).unwrap();
        for r in 0..10 {
            for c in 0..10 {
                assert!((exact[(r, c)] - trunc[(r, c)]).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn trace_product_cyclic_and_errors() {
        let c = cfg(16);
        let (q, p) = (build_position(c), build_momentum(c));
        let direct: Complex64 = (0..16)
            .flat_map(|r| (0..16).map(move |k| (r, k)))
            .map(|(r, k)| q[(r, k)] * p[(k, r)])
            .sum();
        assert_eq!(trace_product(&[&q, &p]).unwrap(), direct);
        // the +i n/2 and -i n/2 ladder terms cancel pairwise
        assert_eq!(direct, Complex64::zero());
        let id3 = OperatorMatrix::identity(3);
        assert!(matches!(
            trace_product(&[&q, &id3]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(trace_product(&[]).is_err());
    }

    #[test]
    fn fidelity_examples() {
        let c = cfg(32);
        let f0 = density_state(&StateSpec::Fock(0), c).unwrap();
        let f1 = density_state(&StateSpec::Fock(1), c).unwrap();
        let th = density_state(&StateSpec::Thermal(0.5), c).unwrap();
        assert_abs_diff_eq!(fidelity(&f0, &f0).unwrap(), 1.0, epsilon = 1e-14);
        assert_eq!(fidelity(&f0, &f1).unwrap(), 0.0);
        // diagonal oracle: Tr(P0 th) = th00, Tr(th^2) = sum th_nn^2 = (2/3)^2/(1-1/9)
        let th00 = th.op()[(0, 0)].re;
        let pur: f64 = (0..32).map(|n| th.op()[(n, n)].re.powi(2)).sum();
        assert_abs_diff_eq!(fidelity(&f0, &th).unwrap(), th00 / pur.max(1.0), epsilon = 1e-14);
        assert_abs_diff_eq!(fidelity(&th, &f0).unwrap(), fidelity(&f0, &th).unwrap(), epsilon = 1e-15);
        let small = density_state(&StateSpec::Fock(0), cfg(4)).unwrap();
        assert!(fidelity(&f0, &small).is_err());
    }
}
