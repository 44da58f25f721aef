// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use super::{LabelPoint, SymbolField};
use crate::error::Result;
use crate::frame::ReferenceFrame;
use crate::hilbert::{characteristic_with, displacement, exp_displacement, BasisConfig};
use crate::matrix::OperatorMatrix;
use crate::tomography::{
    quantize_characteristic, CharacteristicGrid, PolarLattice, ReconstructionDiagnostics, ReconstructionOptions,
};

/// Extra Gaussian decay lengths kept beyond the classical turning point.
const SUPPORT_MARGIN: f64 = 8.0;
/// Relative level of `|chi|` at which the k integral is cut.
const K_TAIL: f64 = 1e-14;

/// Tomographic symbol `Tr(A δ(X - mu q - nu p))` at one label point.
///
/// Evaluated as the direct trapezoid sum of
/// `(1/2π) ∫ e^{ikX} Tr(A exp(-ik(mu q + nu p))) dk`. The k step keeps the
/// periodic images of the X-density outside its support, which for an
/// operator in the `dim`-level block ends near `|m| (sqrt(2 dim + 1) + 8)`.
pub fn dequantize_symbol(a: &OperatorMatrix, x: LabelPoint) -> Result<Complex64> {
    let frame = x.frame.validated()?;
    let dim = a.dim();
    let r = frame.norm();
    let support = r * ((2.0 * dim as f64 + 1.0).sqrt() + SUPPORT_MARGIN);
    let dk = 2.0 * PI / (x.x.abs() + 2.0 * support);
    let mut scratch = OperatorMatrix::zeros(dim);
    let mut chi = |k: f64| characteristic_with(a, frame.scaled(-k), &mut scratch);

    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    let mut k_max = SQRT_2 * ((2.0 * dim as f64).sqrt() + SUPPORT_MARGIN) / r;
    for _ in 0..16 {
        if chi(k_max).norm().max(chi(-k_max).norm()) <= K_TAIL * scale {
            break;
        }
        k_max *= 1.25;
    }
    let n = (k_max / dk).ceil() as i64;
    let mut acc = chi(0.0);
    for m in 1..=n {
        let k = m as f64 * dk;
        let w = if m == n { 0.5 } else { 1.0 };
        acc += (chi(k) * Complex64::from_polar(1.0, k * x.x) + chi(-k) * Complex64::from_polar(1.0, -k * x.x)) * w;
    }
    Ok(acc * (dk / (2.0 * PI)))
}

/// Trace-route star product `f_{AB}(x) = Tr(A B U(x))`.
pub fn star_trace(a: &OperatorMatrix, b: &OperatorMatrix, x: LabelPoint) -> Result<Complex64> {
    dequantize_symbol(&a.matmul(b)?, x)
}

/// `A = ∫ f_A(x) D(x) dx` on a polar frame lattice, without Hermitization or
/// renormalization. The X integral enters through `symbol.x_fourier`, the
/// radial direction through homogeneity along unit frames.
pub fn quantize_operator(
    symbol: &dyn SymbolField,
    lattice: PolarLattice,
    cfg: BasisConfig,
    opts: &ReconstructionOptions,
) -> Result<(OperatorMatrix, ReconstructionDiagnostics)> {
    lattice.validate()?;
    let (nr, nt) = (lattice.radial_count(), lattice.angular_count());
    let mut values = Vec::with_capacity(nr * nt);
    for i in 1..=nr {
        let r = lattice.radius(i);
        for j in 0..nt {
            values.push(symbol.x_fourier(lattice.unit_frame(j), r)?);
        }
    }
    let grid = CharacteristicGrid {
        lattice,
        origin: symbol.x_fourier(ReferenceFrame::new(0.0, 0.0), 0.0)?,
        values,
    };
    quantize_characteristic(&grid, cfg, opts)
}

/// Dual symbol `Tr(A D(x)) = (1/2π) e^{iX} Tr(A exp(-i mu q - i nu p))`,
/// with the exponential of the truncated quadrature. Frame `(0, 0)` is allowed.
pub fn dual_symbol(a: &OperatorMatrix, x: LabelPoint) -> Result<Complex64> {
    let cfg = BasisConfig::new(a.dim())?;
    let e = exp_displacement(x.x, x.frame, cfg)?;
    Ok(a.trace_with(&e)? / (2.0 * PI))
}

/// Weyl symbol `2 Tr(A D(2 alpha) Π)` with `alpha = (q + i p)/√2` and parity
/// `Π = diag((-1)^n)`.
///
/// Evaluated as `2 Σ_n w_n (-1)^n <n|D(alpha)† A D(alpha)|n>`. The plain
/// truncated parity sum does not converge for operators that are not trace
/// class, and the truncated `D(2 alpha)` leaks out of the block long before
/// `D(alpha)` does. The window `w` is 1 up to `n_0 = 2 floor(dim / 8)`,
/// vanishes from `n_1 = 2 floor(dim / 4)` on and satisfies
/// `w_{n_0 + j} + w_{n_1 - j} = 1`, so a diagonal that is constant over the
/// taper sums out as if the series were Abel-summed.
pub fn weyl_symbol(a: &OperatorMatrix, q: f64, p: f64) -> Complex64 {
    let dim = a.dim();
    let alpha = Complex64::new(q, p) / SQRT_2;
    let d = displacement(alpha, BasisConfig::new(dim.max(2)).expect("dim >= 2"));
    let (n0, n1) = (2 * (dim / 8), (2 * (dim / 4)).max(2));
    let mut acc = Complex64::new(0.0, 0.0);
    let mut ad = alloc::vec![Complex64::new(0.0, 0.0); dim];
    for n in 0..n1.min(dim) {
        let w = parity_window((n as f64 - n0 as f64) / (n1 - n0) as f64);
        if w == 0.0 {
            continue;
        }
        for (j, slot) in ad.iter_mut().enumerate() {
            *slot = (0..dim).map(|k| a[(j, k)] * d[(k, n)]).sum();
        }
        let c: Complex64 = (0..dim).map(|j| d[(j, n)].conj() * ad[j]).sum();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        acc += c * (w * sign);
    }
    acc * 2.0
}

/// Smooth step from 1 at `t = 0` to 0 at `t = 1`, odd about `t = 1/2`.
fn parity_window(t: f64) -> f64 {
    if t <= 0.0 {
        return 1.0;
    }
    if t >= 1.0 {
        return 0.0;
    }
    let f = |s: f64| (-1.0 / s).exp();
    f(1.0 - t) / (f(t) + f(1.0 - t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{build_momentum, build_position, density_state, StateSpec};
    use crate::star_product::{OperatorSymbol, SampledSymbol};
    use crate::tomography::{quantum_tomogram, Sampling};
    use crate::UniformAxis;
    use approx::assert_abs_diff_eq;

    fn rho(spec: StateSpec, dim: usize) -> OperatorMatrix {
        density_state(&spec, BasisConfig::new(dim).unwrap()).unwrap().into_inner()
    }

    #[test]
    fn dequantized_ground_and_coherent_values() {
        let g = rho(StateSpec::Fock(0), 16);
        let v = dequantize_symbol(&g, LabelPoint::new(0.0, 1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, 0.564_189_58, epsilon = 1e-5);
        assert!(v.im.abs() < 1e-8);
        let c = rho(StateSpec::Coherent(Complex64::new(1.0, 0.0)), 32);
        let v = dequantize_symbol(&c, LabelPoint::new(SQRT_2, 1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, 0.564_189_58, epsilon = 1e-4);
    }

    #[test]
    fn point_evaluation_matches_fft_slice() {
        let a = rho(StateSpec::Thermal(0.7), 24);
        let frame = ReferenceFrame::new(0.4, -1.3);
        let ax = UniformAxis::new(0.3, 0.05, 512).unwrap();
        let slice = quantum_tomogram(&density_state(&StateSpec::Thermal(0.7), BasisConfig::new(24).unwrap()).unwrap(), frame, ax).unwrap();
        for i in (0..512).step_by(37) {
            let v = dequantize_symbol(&a, LabelPoint { x: ax.point(i), frame }).unwrap();
            assert_abs_diff_eq!(v.re, slice.density[i], epsilon = 1e-10);
        }
    }

    #[test]
    fn star_trace_projectors() {
        let p0 = rho(StateSpec::Fock(0), 8);
        let p1 = rho(StateSpec::Fock(1), 8);
        for x in [LabelPoint::new(0.0, 1.0, 1.0), LabelPoint::new(-0.7, 0.3, 2.0)] {
            let st = star_trace(&p0, &p0, x).unwrap();
            assert!((st - dequantize_symbol(&p0, x).unwrap()).norm() < 1e-10);
            assert!(star_trace(&p0, &p1, x).unwrap().norm() < 1e-10);
        }
    }

    #[test]
    fn quantize_round_trip_and_linearity() {
        let cfg = BasisConfig::new(12).unwrap();
        let lattice = PolarLattice::default();
        let opts = ReconstructionOptions::default();
        let g = rho(StateSpec::Fock(0), 12);
        let (q, _) = quantize_operator(&OperatorSymbol::new(g.clone()), lattice, cfg, &opts).unwrap();
        assert!(q.max_abs_diff(&g) < 1e-3);

        let e = rho(StateSpec::Fock(1), 12);
        let mut mix = g.scale_real(0.5);
        mix.add_scaled(&e, Complex64::new(0.5, 0.0));
        let (qm, _) = quantize_operator(&OperatorSymbol::new(mix.clone()), lattice, cfg, &opts).unwrap();
        assert!(qm.max_abs_diff(&mix) < 1e-3);

        // sampled slices on unit frames reach the same operator
        let ax = UniformAxis::new(0.0, 0.05, 512).unwrap();
        let frames = lattice.expected_frames(Sampling::UnitCircle);
        let sampled = SampledSymbol::sample(&OperatorSymbol::new(g.clone()), &frames, ax).unwrap();
        let (qs, _) = quantize_operator(&sampled, lattice, cfg, &opts).unwrap();
        assert!(qs.max_abs_diff(&g) < 1e-3);
        assert_abs_diff_eq!(qs.trace().re, 1.0, epsilon = 1e-3);
    }

    #[test]
    fn dual_symbol_examples() {
        let id = OperatorMatrix::identity(6);
        let v = dual_symbol(&id, LabelPoint::new(0.0, 0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, 6.0 / (2.0 * PI), epsilon = 1e-12);
        let g = rho(StateSpec::Fock(0), 32);
        for (mu, nu) in [(0.5, -1.0), (2.0, 0.0), (-1.5, 1.5)] {
            let v = dual_symbol(&g, LabelPoint::new(0.0, mu, nu)).unwrap();
            let exact = (-(mu * mu + nu * nu) / 4.0).exp() / (2.0 * PI);
            assert!((v - exact).norm() < 1e-6);
            let m0 = v.norm();
            for x in [1.0, -3.0] {
                let vx = dual_symbol(&g, LabelPoint::new(x, mu, nu)).unwrap();
                assert_abs_diff_eq!(vx.norm(), m0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn weyl_symbols() {
        let cfg = BasisConfig::new(64).unwrap();
        let q = build_position(cfg);
        let p = build_momentum(cfg);
        let id = OperatorMatrix::identity(64);
        for i in 0..9 {
            for j in 0..9 {
                let (x, y) = (-2.0 + 0.5 * i as f64, -2.0 + 0.5 * j as f64);
                assert!((weyl_symbol(&q, x, y) - x).norm() < 1e-3);
                assert!((weyl_symbol(&p, x, y) - y).norm() < 1e-3);
                assert!((weyl_symbol(&id, x, y) - 1.0).norm() < 1e-6);
            }
        }
        let g = rho(StateSpec::Fock(0), 16);
        assert!((weyl_symbol(&g, 0.0, 0.0) - 2.0).norm() < 1e-4);
        let g = rho(StateSpec::Fock(0), 32);
        // ground-state Wigner function 2 exp(-q^2 - p^2)
        let exact = 2.0 * (-(0.8f64 * 0.8 + 0.3 * 0.3)).exp();
        assert!((weyl_symbol(&g, 0.8, -0.3) - exact).norm() < 1e-6);
    }
}
