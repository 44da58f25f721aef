// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;
use symplectomo_core::hilbert::{build_momentum, build_position, trace_product};
use symplectomo_core::star_product::{
    dequantize_symbol, kernel_classical, kernel_quantum, kernel_ratio_check, star_trace, LabelPoint,
};
use symplectomo_core::tomography::quantum_tomogram;
use symplectomo_core::{BasisConfig, Complex64, DensityMatrix, OperatorMatrix, ReferenceFrame, UniformAxis};

fn matrix(dim: usize) -> impl Strategy<Value = OperatorMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim).prop_map(move |v| {
        let data = v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
        OperatorMatrix::from_row_major(dim, data).unwrap()
    })
}

fn density(dim: usize) -> impl Strategy<Value = DensityMatrix> {
    matrix(dim).prop_map(|m| {
        let g = m.matmul(&m.adjoint()).unwrap();
        let tr = g.trace().re;
        DensityMatrix::new(g.scale_real(1.0 / tr)).unwrap()
    })
}

fn label() -> impl Strategy<Value = LabelPoint> {
    (-3.0f64..3.0, -2.0f64..2.0, -2.0f64..2.0).prop_map(|(x, mu, nu)| LabelPoint::new(x, mu, nu))
}

fn frame() -> impl Strategy<Value = ReferenceFrame> {
    (0.0f64..core::f64::consts::TAU, 0.5f64..2.0).prop_map(|(phi, s)| ReferenceFrame::from_scale_angle(s, phi))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn trace_is_cyclic(a in matrix(6), b in matrix(6), c in matrix(6)) {
        let abc = trace_product(&[&a, &b, &c]).unwrap();
        let cab = trace_product(&[&c, &a, &b]).unwrap();
        prop_assert!((abc - cab).norm() < 1e-10 * (1.0 + abc.norm()));
    }

    #[test]
    fn hermitian_symbols_are_real(a in matrix(6), x in label()) {
        prop_assume!(x.frame.norm() > 0.2);
        let h = a.hermitian_part();
        let v = dequantize_symbol(&h, x).unwrap();
        prop_assert!(v.im.abs() < 1e-8 * (1.0 + v.re.abs()));
    }

    #[test]
    fn tomograms_are_normalized_and_homogeneous(rho in density(6), f in frame(), lambda in prop::sample::select(vec![-2.0, 0.5, 3.0])) {
        let ax = UniformAxis::new(0.0, 0.05, 1024).unwrap();
        let s = quantum_tomogram(&rho, f, ax).unwrap();
        prop_assert!((s.integral() - 1.0).abs() < 1e-4);
        prop_assert!(s.min_density() > -1e-6);
        let scaled = quantum_tomogram(&rho, f.scaled(lambda), ax.scaled(lambda.abs())).unwrap();
        for x in [-1.3, 0.0, 0.4, 2.1] {
            let lhs = lambda.abs() * scaled.value_at(lambda * x);
            prop_assert!((lhs - s.value_at(x)).abs() < 1e-3);
        }
    }

    #[test]
    fn star_trace_of_projector_pair_matches_operator_symbol(rho in density(5), x in label()) {
        prop_assume!(x.frame.norm() > 0.2);
        let id = OperatorMatrix::identity(5);
        let st = star_trace(rho.op(), &id, x).unwrap();
        let direct = dequantize_symbol(rho.op(), x).unwrap();
        prop_assert!((st - direct).norm() < 1e-10);
    }

    #[test]
    fn kernel_algebra(x1 in label(), x2 in label(), x in label()) {
        prop_assume!(x.frame.nu != 0.0);
        let ka = kernel_classical(x1, x2, x).unwrap();
        let kb = kernel_classical(x2, x1, x).unwrap();
        prop_assert_eq!(ka, kb);
        let (a, b) = (x1.frame, x2.frame);
        let expected = Complex64::from_polar(1.0, (b.mu * a.nu - a.mu * b.nu) / 2.0);
        prop_assert!((kernel_ratio_check(x1, x2, x).unwrap() - expected).norm() < 1e-12);
        let kq = kernel_quantum(x1, x2, x).unwrap();
        prop_assert_eq!(kq.constraint_residual, ka.constraint_residual);
    }
}

#[test]
fn canonical_commutator_inside_block() {
    let cfg = BasisConfig::new(10).unwrap();
    let (q, p) = (build_position(cfg), build_momentum(cfg));
    let comm = &(&q * &p) - &(&p * &q);
    for n in 0..9 {
        assert!((comm[(n, n)] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }
}
