// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::symbols::dequantize_symbol;
use super::{KernelValue, LabelPoint, OperatorSymbol, SymbolClass, SymbolField};
use crate::error::{Error, Result};
use crate::frame::ReferenceFrame;
use crate::hilbert::{eig_hermitian, exp_displacement, quadrature_operator, BasisConfig};
use crate::matrix::{check_dims, OperatorMatrix};

const KERNEL_NORM: f64 = 1.0 / (4.0 * PI * PI);

fn constraint(x1: &LabelPoint, x2: &LabelPoint, x: &LabelPoint) -> f64 {
    let (a, b, m) = (x1.frame, x2.frame, x.frame);
    m.mu * (a.nu + b.nu) - m.nu * (a.mu + b.mu)
}

/// Quantum star-product kernel
/// `δ(mu(nu1 + nu2) - nu(mu1 + mu2)) / 4π² * exp((i/2)[(nu1 mu2 - nu2 mu1) + 2X1 + 2X2 - 2(nu1 + nu2)X/nu])`.
pub fn kernel_quantum(x1: LabelPoint, x2: LabelPoint, x: LabelPoint) -> Result<KernelValue> {
    if x.frame.nu == 0.0 {
        return Err(Error::NuZeroInKernel);
    }
    let (a, b) = (x1.frame, x2.frame);
    let twist = a.nu * b.mu - b.nu * a.mu;
    let phase = 0.5 * (twist + 2.0 * x1.x + 2.0 * x2.x - 2.0 * (a.nu + b.nu) * x.x / x.frame.nu);
    Ok(KernelValue {
        constraint_residual: constraint(&x1, &x2, &x),
        prefactor: Complex64::from_polar(KERNEL_NORM, phase),
    })
}

/// Commutative kernel for classical tomograms,
/// `δ(...) / 4π² * exp(i[X1 + X2 - X(nu1 + nu2)/nu])`.
pub fn kernel_classical(x1: LabelPoint, x2: LabelPoint, x: LabelPoint) -> Result<KernelValue> {
    if x.frame.nu == 0.0 {
        return Err(Error::NuZeroInKernel);
    }
    let phase = x1.x + x2.x - x.x * (x1.frame.nu + x2.frame.nu) / x.frame.nu;
    Ok(KernelValue {
        constraint_residual: constraint(&x1, &x2, &x),
        prefactor: Complex64::from_polar(KERNEL_NORM, phase),
    })
}

/// Quantum over classical prefactor; equals `exp(i(mu2 nu1 - mu1 nu2)/2)`.
pub fn kernel_ratio_check(x1: LabelPoint, x2: LabelPoint, x: LabelPoint) -> Result<Complex64> {
    Ok(kernel_quantum(x1, x2, x)?.prefactor / kernel_classical(x1, x2, x)?.prefactor)
}

/// `Tr(U(x2) U(x1) D(x))` with spectrally smeared dequantizers
/// `U(x) = g_eps(X - mu q - nu p)` and the quantizer
/// `D(x) = (1/2π) exp(iX - i mu q - i nu p)` of the truncated quadratures.
pub fn kernel_dual(x1: LabelPoint, x2: LabelPoint, x: LabelPoint, cfg: BasisConfig, eps: f64) -> Result<Complex64> {
    if !(eps > 0.0) {
        return Err(Error::InvalidAxis(alloc::format!("smearing width {eps} must be positive")));
    }
    let u1 = smeared_dequantizer(x1, cfg, eps)?;
    let u2 = smeared_dequantizer(x2, cfg, eps)?;
    let d = exp_displacement(x.x, x.frame, cfg)?.scale_real(1.0 / (2.0 * PI));
    Ok(u2.matmul(&u1)?.trace_with(&d)?)
}

fn smeared_dequantizer(x: LabelPoint, cfg: BasisConfig, eps: f64) -> Result<OperatorMatrix> {
    let frame = x.frame.validated()?;
    let es = eig_hermitian(&quadrature_operator(frame, cfg))?;
    let norm = 1.0 / (eps * (2.0 * PI).sqrt());
    Ok(es.map_spectrum(|l| {
        let d = (x.x - l) / eps;
        Complex64::new(norm * (-0.5 * d * d).exp(), 0.0)
    }))
}

/// Which kernel `star_via_kernel` integrates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KernelKind {
    #[default]
    Quantum,
    Classical,
}

/// Lattice quadrature for the kernel integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Fine lattice step; the convergence check compares against twice this.
    pub step: f64,
    /// Half-width of the frame-plane box.
    pub extent: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            step: 0.2,
            extent: 14.0,
            rel_tol: 1e-3,
            abs_tol: 1e-10,
        }
    }
}

/// Kernel-route star product `∫∫ fA(x1) fB(x2) K(x1, x2, x) dx1 dx2`.
///
/// The X1, X2 integrals fall onto `G(m) = ∫ f(X, m) e^{iX} dX`. The delta
/// forces `m1 + m2 = t m`, which is resolved by integrating over `m1` and the
/// scalar `t` (unit Jacobian):
/// `(1/4π²) ∫ dt d²m1 G_A(m1) G_B(t m - m1) exp(-i(m1 × m2)/2 - i t X)`.
/// On a square lattice aligned with `m` the phase depends only on the
/// transverse index of `m1` and on `t`, and the `m1` sum along `m` is a
/// discrete convolution. The result is accepted when the lattice of twice the
/// step agrees within `rel_tol * |fine| + abs_tol`.
pub fn star_via_kernel(
    fa: &dyn SymbolField,
    fb: &dyn SymbolField,
    x: LabelPoint,
    kind: KernelKind,
    quad: &QuadratureConfig,
) -> Result<Complex64> {
    if fa.class() != SymbolClass::TraceClassNumeric || fb.class() != SymbolClass::TraceClassNumeric {
        return Err(Error::NotTraceClass);
    }
    let frame = x.frame.validated()?;
    if frame.nu == 0.0 {
        return Err(Error::NuZeroInKernel);
    }
    let h = quad.step;
    let r = frame.norm();
    let (ux, uy) = (frame.mu / r, frame.nu / r);
    // even half-count so the coarse lattice keeps the box edges
    let half = {
        let n = (quad.extent / h).ceil() as i64;
        n + n % 2
    };
    let side = (2 * half + 1) as usize;
    let node = |i: i64, j: i64| {
        let (s, t) = (i as f64 * h, j as f64 * h);
        ReferenceFrame::new(s * ux - t * uy, s * uy + t * ux)
    };
    let sample = |f: &dyn SymbolField| -> Result<Vec<Complex64>> {
        let mut g = Vec::with_capacity(side * side);
        for i in -half..=half {
            for j in -half..=half {
                g.push(f.x_fourier(node(i, j), 1.0)?);
            }
        }
        Ok(g)
    };
    let ga = sample(fa)?;
    let gb = sample(fb)?;
    let at = |g: &[Complex64], i: i64, j: i64| g[(i + half) as usize * side + (j + half) as usize];

    let mut fine = Complex64::new(0.0, 0.0);
    let mut coarse = Complex64::new(0.0, 0.0);
    for j in -half..=half {
        for k in -2 * half..=2 * half {
            let lo = (k - half).max(-half);
            let hi = (k + half).min(half);
            let mut conv = Complex64::new(0.0, 0.0);
            let mut conv_even = Complex64::new(0.0, 0.0);
            for i in lo..=hi {
                let term = at(&ga, i, j) * at(&gb, k - i, -j);
                conv += term;
                if i % 2 == 0 {
                    conv_even += term;
                }
            }
            if conv == Complex64::new(0.0, 0.0) {
                continue;
            }
            // representative pair with m1 + m2 = k h m_hat
            let x1 = LabelPoint {
                x: 0.0,
                frame: node(0, j),
            };
            let x2 = LabelPoint {
                x: 0.0,
                frame: node(k, -j),
            };
            let kernel = match kind {
                KernelKind::Quantum => kernel_quantum(x1, x2, x)?,
                KernelKind::Classical => kernel_classical(x1, x2, x)?,
            };
            fine += kernel.prefactor * conv;
            if j % 2 == 0 && k % 2 == 0 {
                coarse += kernel.prefactor * conv_even;
            }
        }
    }
    let w = h * h * h / r;
    fine *= w;
    coarse *= 8.0 * w;
    let change = (fine - coarse).norm();
    let tolerance = quad.rel_tol * fine.norm() + quad.abs_tol;
    if change > tolerance {
        return Err(Error::QuadratureNotConverged {
            coarse: coarse.norm(),
            fine: fine.norm(),
            change,
            tolerance,
        });
    }
    Ok(fine)
}

/// Trace-route associativity defect `|Tr((AB)C U(x)) - Tr(A(BC) U(x))|`.
pub fn associativity_residual(
    a: &OperatorMatrix,
    b: &OperatorMatrix,
    c: &OperatorMatrix,
    x: LabelPoint,
) -> Result<f64> {
    check_dims(a.dim(), b.dim())?;
    check_dims(a.dim(), c.dim())?;
    let left = a.matmul(b)?.matmul(c)?;
    let right = a.matmul(&b.matmul(c)?)?;
    Ok((dequantize_symbol(&left, x)? - dequantize_symbol(&right, x)?).norm())
}

/// Kernel-route defect `|f_{AB} * f_C - f_A * f_{BC}|` at `x`.
pub fn associativity_residual_kernel(
    a: &OperatorMatrix,
    b: &OperatorMatrix,
    c: &OperatorMatrix,
    x: LabelPoint,
    quad: &QuadratureConfig,
) -> Result<f64> {
    check_dims(a.dim(), b.dim())?;
    check_dims(a.dim(), c.dim())?;
    let ab = OperatorSymbol::new(a.matmul(b)?);
    let bc = OperatorSymbol::new(b.matmul(c)?);
    let left = star_via_kernel(&ab, &OperatorSymbol::new(c.clone()), x, KernelKind::Quantum, quad)?;
    let right = star_via_kernel(&OperatorSymbol::new(a.clone()), &bc, x, KernelKind::Quantum, quad)?;
    Ok((left - right).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{density_state, StateSpec};
    use crate::star_product::{star_trace, ClassicalSymbol};
    use crate::tomography::{ClassicalDistribution, GaussianParams, Normalization};
    use approx::assert_abs_diff_eq;

    fn projector(n: usize, dim: usize) -> OperatorMatrix {
        density_state(&StateSpec::Fock(n), BasisConfig::new(dim).unwrap()).unwrap().into_inner()
    }

    #[test]
    fn kernel_substitution_examples() {
        let x1 = LabelPoint::new(0.0, 1.0, 0.0);
        let x2 = LabelPoint::new(0.0, 0.0, 1.0);
        let x = LabelPoint::new(0.0, 1.0, 1.0);
        let kq = kernel_quantum(x1, x2, x).unwrap();
        assert_eq!(kq.constraint_residual, 0.0);
        // twist nu1 mu2 - nu2 mu1 = -1
        assert!((kq.prefactor - Complex64::from_polar(KERNEL_NORM, -0.5)).norm() < 1e-15);
        let kc = kernel_classical(x1, x2, x).unwrap();
        assert!((kc.prefactor - KERNEL_NORM).norm() < 1e-15);
        let kc1 = kernel_classical(x1, x2, LabelPoint::new(1.0, 1.0, 1.0)).unwrap();
        assert!((kc1.prefactor - Complex64::from_polar(KERNEL_NORM, -1.0)).norm() < 1e-15);
        let ratio = kernel_ratio_check(x1, x2, x).unwrap();
        assert!((ratio - Complex64::from_polar(1.0, -0.5)).norm() < 1e-12);
        assert_eq!(kernel_quantum(x1, x2, LabelPoint::new(0.0, 1.0, 0.0)), Err(Error::NuZeroInKernel));
    }

    #[test]
    fn swapping_flips_the_twist() {
        let x1 = LabelPoint::new(0.0, 0.3, -1.2);
        let x2 = LabelPoint::new(0.0, 1.7, 0.4);
        let x = LabelPoint::new(0.0, 0.5, 0.8);
        let a = kernel_quantum(x1, x2, x).unwrap();
        let b = kernel_quantum(x2, x1, x).unwrap();
        assert_eq!(a.constraint_residual, b.constraint_residual);
        assert!((a.prefactor * b.prefactor - KERNEL_NORM * KERNEL_NORM).norm() < 1e-15);
    }

    #[test]
    fn kernel_route_matches_trace_route_for_ground_state() {
        let p0 = projector(0, 8);
        let s = OperatorSymbol::new(p0.clone());
        let x = LabelPoint::new(0.0, 1.0, 1.0);
        let k = star_via_kernel(&s, &s, x, KernelKind::Quantum, &QuadratureConfig::default()).unwrap();
        let t = star_trace(&p0, &p0, x).unwrap();
        assert!((k - t).norm() < 1e-3 * t.norm(), "{k} vs {t}");

        let p1 = OperatorSymbol::new(projector(1, 8));
        let z = star_via_kernel(&s, &p1, LabelPoint::new(0.4, -0.5, 1.2), KernelKind::Quantum, &Default::default())
            .unwrap();
        assert!(z.norm() < 1e-3);
    }

    #[test]
    fn classical_product_is_tomogram_of_pointwise_product() {
        let g1 = GaussianParams {
            mean_q: 0.5,
            mean_p: -0.2,
            cov_qq: 1.0,
            cov_pp: 0.7,
            cov_qp: 0.2,
        };
        let g2 = GaussianParams::isotropic(-0.3, 0.4, 0.8);
        let f1 = ClassicalSymbol {
            dist: ClassicalDistribution::gaussian(g1, Normalization::Plain).unwrap(),
        };
        let f2 = ClassicalSymbol {
            dist: ClassicalDistribution::gaussian(g2, Normalization::Plain).unwrap(),
        };
        let x = LabelPoint::new(0.3, 0.6, -1.1);
        let quad = QuadratureConfig::default();
        let a = star_via_kernel(&f1, &f2, x, KernelKind::Classical, &quad).unwrap();
        let b = star_via_kernel(&f2, &f1, x, KernelKind::Classical, &quad).unwrap();
        assert!((a - b).norm() < 1e-12);

        // oracle: 2π * Radon transform of f1 f2 by direct 2D quadrature
        let (d1, d2) = (&f1.dist, &f2.dist);
        let h = 0.02;
        let eps: f64 = 0.01;
        let mut acc = 0.0;
        for i in 0..800 {
            let q = -8.0 + i as f64 * h;
            for j in 0..800 {
                let p = -8.0 + j as f64 * h;
                let d = x.frame.project(q, p) - x.x;
                acc += d1.density(q, p) * d2.density(q, p) * (-0.5 * d * d / (eps * eps)).exp();
            }
        }
        let oracle = 2.0 * PI * acc * h * h / (eps * (2.0 * PI).sqrt());
        assert!(a.im.abs() < 1e-10);
        assert_abs_diff_eq!(a.re, oracle, epsilon = 1e-4);
    }

    #[test]
    fn associativity_both_routes() {
        let dim = 8;
        let p0 = projector(0, dim);
        let p1 = projector(1, dim);
        let x = LabelPoint::new(0.2, 0.7, -0.9);
        assert_eq!(associativity_residual(&p0, &p1, &p0, x).unwrap(), 0.0);
        let c = density_state(&StateSpec::Coherent(Complex64::new(0.5, 0.0)), BasisConfig::new(dim).unwrap())
            .unwrap()
            .into_inner();
        let t = density_state(&StateSpec::Thermal(0.3), BasisConfig::new(dim).unwrap()).unwrap().into_inner();
        let r = associativity_residual_kernel(&p0, &c, &t, x, &QuadratureConfig::default()).unwrap();
        assert!(r < 2e-3, "{r}");
    }

    #[test]
    fn dual_kernel_parity_identities() {
        let cfg = BasisConfig::new(24).unwrap();
        let eps = 0.3;
        let x = LabelPoint::new(0.0, 0.8, -0.6);
        let x1 = LabelPoint::new(0.0, 0.5, 1.0);
        let same = kernel_dual(x1, x1, x, cfg, eps).unwrap();
        assert!(same.im.abs() < 1e-8);
        let x2 = LabelPoint::new(0.0, -1.2, 0.3);
        let a = kernel_dual(x1, x2, x, cfg, eps).unwrap();
        let b = kernel_dual(x2, x1, x, cfg, eps).unwrap();
        assert!((a - b.conj()).norm() < 1e-8);
        assert!(a.re.is_finite() && a.im.is_finite());
    }
}
