// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

//! Consolidated property and oracle suite behind `symplectomo verify`.
//!
//! Each check measures one defect (or a quality figure such as fidelity) and
//! compares it with its tolerance. Checks are independent and run in
//! parallel; randomized checks draw from a ChaCha stream keyed by the suite
//! seed and the check's position, so a report depends only on its config
//! (`runtime_ms` aside).

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use symplectomo_core::hilbert::{build_momentum, build_position, density_state, fidelity};
use symplectomo_core::oracle::{direct_trace_product, radon_quadrature_oracle, DELTA_WIDTH};
use symplectomo_core::star_product::{
    associativity_residual, associativity_residual_kernel, kernel_classical, kernel_ratio_check, mean_value,
    observable_operator, regularized_x_integral, star_trace, star_via_kernel, weyl_symbol, KernelKind, LabelPoint,
    OperatorSymbol, PolyObservable, QuadratureConfig, XProfile,
};
use symplectomo_core::tomography::{
    classical_inverse, classical_tomogram, density_from_tomogram, quantum_tomogram, ClassicalDistribution, ClassicalForm,
    GaussianParams, Normalization, PolarLattice, PolarTomogram, ReconstructionOptions, Sampling,
};
use symplectomo_core::{BasisConfig, Complex64, DensityMatrix, OperatorMatrix, ReferenceFrame, StateSpec, UniformAxis};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    /// Dimension-8 smoke subset.
    Quick,
    /// Every check at acceptance sizes.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub profile: Profile,
    pub seed: u64,
    /// Basis dimension for the tomogram-law checks.
    pub dim: usize,
}

impl SuiteConfig {
    pub fn new(profile: Profile, seed: u64) -> Self {
        let dim = match profile {
            Profile::Quick => 8,
            Profile::Full => 32,
        };
        Self { profile, seed, dim }
    }

    fn full(&self) -> bool {
        self.profile == Profile::Full
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// Whether `measured` must stay below or above `tolerance`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Max,
    Min,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub invariant: String,
    pub status: Status,
    pub measured: Option<f64>,
    pub tolerance: f64,
    pub bound: Bound,
    pub runtime_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Copy with all timings zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.checks.iter_mut().for_each(|c| c.runtime_ms = 0);
        r
    }
}

type Measure = fn(&SuiteConfig, &mut ChaCha8Rng) -> CliResult<f64>;

struct CheckSpec {
    name: &'static str,
    invariant: &'static str,
    tolerance: f64,
    bound: Bound,
    quick: bool,
    measure: Measure,
}

const fn max(name: &'static str, invariant: &'static str, tolerance: f64, quick: bool, measure: Measure) -> CheckSpec {
    CheckSpec {
        name,
        invariant,
        tolerance,
        bound: Bound::Max,
        quick,
        measure,
    }
}

const CHECKS: &[CheckSpec] = &[
    max("tomogram.normalization", "quantum tomograms integrate to 1 over X", 1e-4, true, tomogram_normalization),
    max("tomogram.nonnegativity", "quantum tomograms are nonnegative", 1e-6, true, tomogram_nonnegativity),
    max("tomogram.homogeneity", "|l| w(lX, l mu, l nu) = w(X, mu, nu)", 1e-3, true, tomogram_homogeneity),
    max("golden.fock0", "ground-state tomogram at X = 0, frame (1, 0)", 1e-5, true, golden_fock0),
    max("golden.fock1", "first excited tomogram at X = 1, frame (1, 0)", 1e-5, true, golden_fock1),
    max("golden.coherent_mean_q", "<q> of coherent(1) from its tomogram", 1e-4, true, golden_coherent_mean),
    max("oracle.radon_quadrature", "closed-form Radon transform matches 2D quadrature", 1e-3, true, radon_oracle),
    max("classical.round_trip", "inverse Radon transform recovers the density", 1e-2, false, classical_round_trip),
    CheckSpec {
        name: "quantum.round_trip.fock0",
        invariant: "density reconstruction from tomograms (fidelity)",
        tolerance: 0.999,
        bound: Bound::Min,
        quick: false,
        measure: round_trip_fock0,
    },
    CheckSpec {
        name: "quantum.round_trip.coherent",
        invariant: "density reconstruction from tomograms (fidelity)",
        tolerance: 0.999,
        bound: Bound::Min,
        quick: false,
        measure: round_trip_coherent,
    },
    max("star.route_agreement", "kernel-route star product equals the trace route (relative)", 1e-3, false, route_agreement),
    max("star.associativity.trace", "trace-route star product is associative", 1e-10, true, associativity_trace),
    max("star.associativity.kernel", "kernel-route star product is associative", 2e-3, false, associativity_kernel),
    max("kernel.classical_symmetry", "classical kernel is symmetric under exchange", 0.0, true, classical_symmetry),
    max("kernel.ratio_phase", "quantum/classical kernel ratio is exp(i(mu2 nu1 - mu1 nu2)/2)", 1e-12, true, ratio_phase),
    max("mean.values", "mean values from tomogram moments equal Tr(rho A)", 1e-4, true, mean_values),
    max("weyl.position", "Weyl symbol of q is the coordinate q", 1e-3, true, weyl_position),
    max("weyl.momentum", "Weyl symbol of p is the coordinate p", 1e-3, true, weyl_momentum),
    max("weyl.identity", "Weyl symbol of the identity is 1", 1e-6, true, weyl_identity),
    max("distributional.identity_pairing", "regularized pairing of the identity symbol tends to 1", 1e-2, true, identity_pairing),
    max("oracle.direct_trace", "matrix trace product equals the explicit double sum", 1e-12, true, direct_trace),
];

/// Runs every check of the profile. Failures are report entries.
pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    let checks: Vec<Check> = CHECKS
        .par_iter()
        .enumerate()
        .filter(|(_, s)| config.full() || s.quick)
        .map(|(i, s)| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(i as u64);
            let t0 = Instant::now();
            let result = (s.measure)(config, &mut rng);
            let runtime_ms = t0.elapsed().as_millis() as u64;
            let (status, measured, detail) = match result {
                Ok(v) => {
                    let ok = match s.bound {
                        Bound::Max => v <= s.tolerance,
                        Bound::Min => v >= s.tolerance,
                    };
                    (if ok { Status::Pass } else { Status::Fail }, Some(v), None)
                }
                Err(e) => (Status::Fail, None, Some(e.render())),
            };
            Check {
                name: s.name.into(),
                invariant: s.invariant.into(),
                status,
                measured,
                tolerance: s.tolerance,
                bound: s.bound,
                runtime_ms,
                detail,
            }
        })
        .collect();
    SuiteReport {
        config: *config,
        passed: checks.iter().all(|c| c.status != Status::Fail),
        checks,
    }
}

/// Names of the checks a profile runs, in report order.
pub fn check_names(profile: Profile) -> Vec<&'static str> {
    CHECKS
        .iter()
        .filter(|s| profile == Profile::Full || s.quick)
        .map(|s| s.name)
        .collect()
}

// ---- seeded inputs

/// Hermitian matrix with entries from uniform [-1, 1], symmetrized.
pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> OperatorMatrix {
    let m = OperatorMatrix::from_fn(dim, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    m.hermitian_part()
}

/// Gram density `M M† / Tr(M M†)`.
pub fn random_density(rng: &mut impl Rng, dim: usize) -> DensityMatrix {
    let m = OperatorMatrix::from_fn(dim, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let g = m.matmul(&m.adjoint()).expect("square");
    let tr = g.trace().re;
    DensityMatrix::new(g.scale_real(1.0 / tr)).expect("Gram matrices are densities")
}

fn random_frame(rng: &mut impl Rng) -> ReferenceFrame {
    ReferenceFrame::from_scale_angle(rng.gen_range(0.5..2.0), rng.gen_range(0.0..TAU))
}

fn random_label(rng: &mut impl Rng) -> LabelPoint {
    LabelPoint::new(rng.gen_range(-3.0..3.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
}

fn law_states(cfg: &SuiteConfig) -> Vec<StateSpec> {
    let top = if cfg.full() { 5 } else { 1 };
    let mut v: Vec<StateSpec> = (0..=top).map(StateSpec::Fock).collect();
    v.push(StateSpec::Coherent(Complex64::new(1.0, 0.5)));
    v.push(StateSpec::Thermal(0.5));
    v
}

fn law_frames(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Vec<ReferenceFrame> {
    let n = if cfg.full() { 12 } else { 4 };
    (0..n).map(|_| random_frame(rng)).collect()
}

fn x_axis() -> UniformAxis {
    UniformAxis::new(0.0, 0.05, 1024).expect("valid axis")
}

fn basis(dim: usize) -> CliResult<BasisConfig> {
    Ok(BasisConfig::new(dim)?)
}

fn max_over<T>(items: impl IntoIterator<Item = T>, mut f: impl FnMut(T) -> CliResult<f64>) -> CliResult<f64> {
    let mut worst = 0.0f64;
    for it in items {
        worst = worst.max(f(it)?);
    }
    Ok(worst)
}

// ---- tomogram laws

fn law_slices(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> CliResult<Vec<symplectomo_core::tomography::TomogramSlice>> {
    let frames = law_frames(cfg, rng);
    let b = basis(cfg.dim)?;
    let mut out = Vec::new();
    for s in law_states(cfg) {
        let rho = density_state(&s, b)?;
        for &f in &frames {
            out.push(quantum_tomogram(&rho, f, x_axis())?);
        }
    }
    Ok(out)
}

fn tomogram_normalization(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> CliResult<f64> {
    max_over(law_slices(cfg, rng)?, |s| Ok((s.integral() - 1.0).abs()))
}

fn tomogram_nonnegativity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> CliResult<f64> {
    max_over(law_slices(cfg, rng)?, |s| Ok((-s.min_density()).max(0.0)))
}

fn tomogram_homogeneity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> CliResult<f64> {
    let frames = law_frames(cfg, rng);
    let b = basis(cfg.dim)?;
    // one wide axis for both slices, so the scaled slice comes from different
    // characteristic-function samples; lambda X stays on grid nodes
    let ax = UniformAxis::new(0.0, 0.05, 4096)?;
    let nodes: Vec<f64> = (-6..=6).map(|i| i as f64 * 0.5).collect();
    let mut worst = 0.0f64;
    for s in law_states(cfg) {
        let rho = density_state(&s, b)?;
        for &f in &frames {
            let base = quantum_tomogram(&rho, f, ax)?;
            for lambda in [-2.0, 0.5, 3.0] {
                let scaled = quantum_tomogram(&rho, f.scaled(lambda), ax)?;
                for &x in &nodes {
                    let lhs = f64::abs(lambda) * scaled.value_at(lambda * x);
                    worst = worst.max((lhs - base.value_at(x)).abs());
                }
            }
        }
    }
    Ok(worst)
}

// ---- golden values

fn slice_value(spec: StateSpec, dim: usize, x: f64) -> CliResult<f64> {
    let rho = density_state(&spec, basis(dim)?)?;
    Ok(quantum_tomogram(&rho, ReferenceFrame::new(1.0, 0.0), x_axis())?.value_at(x))
}

fn golden_fock0(_: &SuiteConfig, _: &mut ChaCha8Rng) -> CliResult<f64> {
    Ok((slice_value(StateSpec::Fock(0), 16, 0.0)? - 1.0 / PI.sqrt()).abs())
}

fn golden_fock1(_: &SuiteConfig, _: &mut ChaCha8Rng) -> CliResult<f64> {
    // |psi_1(x)|^2 = 2 x^2 e^{-x^2} / sqrt(pi)
    Ok((slice_value(StateSpec::Fock(1), 16, 1.0)? - 2.0 * (-1.0f64).exp() / PI.sqrt()).abs())
}

fn golden_coherent_mean(_: &SuiteConfig, _: &mut ChaCha8Rng) -> CliResult<f64> {
    let rho = density_state(&StateSpec::Coherent(Complex64::new(1.0, 0.0)), basis(32)?)?;
    let s = quantum_tomogram(&rho, ReferenceFrame::new(1.0, 0.0), x_axis())?;
    Ok((mean_value(&[s], PolyObservable::Q)? - 2.0f64.sqrt()).abs())
}

// ---- classical

fn two_gaussians() -> CliResult<ClassicalDistribution> {
    let a = GaussianParams {
        mean_q: -1.2,
        mean_p: 0.4,
        cov_qq: 0.6,
        cov_pp: 0.5,
        cov_qp: 0.1,
    };
    let b = GaussianParams {
        mean_q: 1.0,
        mean_p: -0.8,
        cov_qq: 0.5,
        cov_pp: 0.7,
        cov_qp: -0.15,
    };
    let form = ClassicalForm::Mixture(vec![(0.4, ClassicalForm::Gaussian(a)), (0.6, ClassicalForm::Gaussian(b))]);
    Ok(ClassicalDistribution::new(form, Normalization::Plain)?)
}

fn radon_oracle(_: &SuiteConfig, rng: &mut ChaCha8Rng) -> CliResult<f64> {
    let f = two_gaussians()?;
    let mut worst = 0.0f64;
    for _ in 0..4 {
        let frame = random_frame(rng);
        let x = rng.gen_range(-2.0..2.0);
        let closed = symplectomo_core::tomography::classical_tomogram_value(&f, frame, x)?;
        let brute = radon_quadrature_oracle(&f, frame, x, DELTA_WIDTH)?;
        worst = worst.max((closed - brute).abs());
    }
    Ok(worst)
}

fn classical_round_trip(_: &SuiteConfig, _: &mut ChaCha8Rng) -> CliResult<f64> {
    let f = two_gaussians()?;
    let lattice = PolarLattice::default();
    let tomo = PolarTomogram::sample(lattice, Sampling::UnitCircle, x_axis(), |fr, ax| classical_tomogram(&f, fr, ax))?;
    let axis = UniformAxis::new(0.0, 0.08, 128)?;
    let (rec, _) = classical_inverse(&tomo, axis, axis, Normalization::Plain, &ReconstructionOptions::default())?;
    let ClassicalForm::Grid(grid) = &rec.form else {
        return Err(CliError::Format("inverse did not return a grid".into()));
    };
    let mut worst = 0.0f64;
    for i in 0..axis.count {
        for j in 0..axis.count {
            worst = worst.max((grid.at(i, j) - f.density(axis.point(i), axis.point(j))).abs());
        }
    }
    Ok(worst)
}

// ---- quantum round trip

fn round_trip(spec: StateSpec, dim: usize) -> CliResult<f64> {
    let rho = density_state(&spec, basis(dim)?)?;
    let ax = UniformAxis::new(0.0, 0.05, 512)?;
    let tomo = PolarTomogram::sample(PolarLattice::default(), Sampling::UnitCircle, ax, |f, a| quantum_tomogram(&rho, f, a))?;
    let (rec, _) = density_from_tomogram(&tomo, basis(dim)?, &ReconstructionOptions::default())?;
    Ok(fidelity(&rho, &rec)?)
}

fn round_trip_fock0(_: &SuiteConfig, _: &mut ChaCha8Rng) -> CliResult<f64> {
    round_trip(StateSpec::Fock(0), 16)
}

fn round_trip_coherent(_: &SuiteConfig, _: &mut ChaCha8Rng) -> CliResult<f64> {
    round_trip(StateSpec::Coherent(Complex64::new(0.8, 0.0)), 24)
}

// ---- star products

/// Label point with `nu` bounded away from 0 and moderate `X`.
fn kernel_label(rng: &mut impl Rng) -> LabelPoint {
    let nu = rng.gen_range(0.5..1.5) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    LabelPoint::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.5..1.5), nu)
}

fn route_agreement(_: &SuiteConfig, rng: &mut ChaCha8Rng) -> CliResult<f64> {
    let quad = QuadratureConfig::default();
    let cases: Vec<(OperatorMatrix, OperatorMatrix, Vec<LabelPoint>)> = (0..20)
        .map(|_| {
            let a = random_density(rng, 8).into_inner();
            let b = random_density(rng, 8).into_inner();
            let pts = (0..5).map(|_| kernel_label(rng)).collect();
            (a, b, pts)
        })
        .collect();
    let per_case = cases
        .par_iter()
        .map(|(a, b, pts)| {
            let (sa, sb) = (OperatorSymbol::new(a.clone()), OperatorSymbol::new(b.clone()));
            max_over(pts.iter(), |&x| {
                let t = star_trace(a, b, x)?;
                let k = star_via_kernel(&sa, &sb, x, KernelKind::Quantum, &quad)?;
                Ok((k - t).norm() / t.norm())
            })
        })
        .collect::<CliResult<Vec<f64>>>()?;
    Ok(per_case.into_iter().fold(0.0, f64::max))
}

fn associativity_trace(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> CliResult<f64> {
    let n = if cfg.full() { 50 } else { 10 };
    let mut worst = 0.0f64;
    for _ in 0..n {
        let (a, b, c) = (random_hermitian(rng, 8), random_hermitian(rng, 8), random_hermitian(rng, 8));
        let mut x = random_label(rng);
        if x.frame.is_zero() {
            x.frame.nu = 1.0;
        }
        worst = worst.max(associativity_residual(&a, &b, &c, x)?);
    }
    Ok(worst)
}

fn associativity_kernel(_: &SuiteConfig, rng: &mut ChaCha8Rng) -> CliResult<f64> {
    let quad = QuadratureConfig::default();
    let cases: Vec<_> = (0..5)
        .map(|_| {
            let t = [random_density(rng, 8), random_density(rng, 8), random_density(rng, 8)].map(DensityMatrix::into_inner);
            (t, kernel_label(rng))
        })
        .collect();
    let r = cases
        .par_iter()
        .map(|([a, b, c], x)| Ok(associativity_residual_kernel(a, b, c, *x, &quad)?))
        .collect::<CliResult<Vec<f64>>>()?;
    Ok(r.into_iter().fold(0.0, f64::max))
}

fn kernel_triples(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Vec<(LabelPoint, LabelPoint, LabelPoint)> {
    let n = if cfg.full() { 1000 } else { 100 };
    (0..n)
        .map(|_| {
            let (a, b) = (random_label(rng), random_label(rng));
            let mut x = random_label(rng);
            if x.frame.nu == 0.0 {
                x.frame.nu = 1.0;
            }
            (a, b, x)
        })
        .collect()
}

fn classical_symmetry(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> CliResult<f64> {
    max_over(kernel_triples(cfg, rng), |(a, b, x)| {
        let k1 = kernel_classical(a, b, x)?;
        let k2 = kernel_classical(b, a, x)?;
        Ok((k1.prefactor - k2.prefactor).norm() + (k1.constraint_residual - k2.constraint_residual).abs())
    })
}

fn ratio_phase(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> CliResult<f64> {
    max_over(kernel_triples(cfg, rng), |(a, b, x)| {
        let (f1, f2) = (a.frame, b.frame);
        let expected = Complex64::from_polar(1.0, (f2.mu * f1.nu - f1.mu * f2.nu) / 2.0);
        Ok((kernel_ratio_check(a, b, x)? - expected).norm())
    })
}

// ---- mean values

fn mean_values(cfg: &SuiteConfig, _: &mut ChaCha8Rng) -> CliResult<f64> {
    let dim = if cfg.full() { 32 } else { 8 };
    let b = basis(dim)?;
    let mut states: Vec<StateSpec> = (0..=3).map(StateSpec::Fock).collect();
    states.push(StateSpec::Coherent(Complex64::new(1.0, 0.0)));
    states.push(StateSpec::Thermal(0.5));
    let ax = x_axis();
    max_over(states, |s| {
        let rho = density_state(&s, b)?;
        let slices = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]
            .into_iter()
            .map(|(m, n)| quantum_tomogram(&rho, ReferenceFrame::new(m, n), ax))
            .collect::<Result<Vec<_>, _>>()?;
        max_over(PolyObservable::ALL, |o| {
            let tomo = mean_value(&slices, o)?;
            let tr = rho.op().trace_with(&observable_operator(o, b))?.re;
            Ok((tomo - tr).abs())
        })
    })
}

// ---- Weyl symbols

fn weyl_grid() -> impl Iterator<Item = (f64, f64)> {
    (0..9).flat_map(|i| (0..9).map(move |j| (-2.0 + 0.5 * i as f64, -2.0 + 0.5 * j as f64)))
}

fn weyl_position(_: &SuiteConfig, _: &mut ChaCha8Rng) -> CliResult<f64> {
    let q = build_position(basis(64)?);
    max_over(weyl_grid(), |(x, y)| Ok((weyl_symbol(&q, x, y) - x).norm()))
}

fn weyl_momentum(_: &SuiteConfig, _: &mut ChaCha8Rng) -> CliResult<f64> {
    let p = build_momentum(basis(64)?);
    max_over(weyl_grid(), |(x, y)| Ok((weyl_symbol(&p, x, y) - y).norm()))
}

fn weyl_identity(_: &SuiteConfig, _: &mut ChaCha8Rng) -> CliResult<f64> {
    let id = OperatorMatrix::identity(64);
    max_over(weyl_grid(), |(x, y)| Ok((weyl_symbol(&id, x, y) - 1.0).norm()))
}

// ---- distributional

fn identity_pairing(_: &SuiteConfig, _: &mut ChaCha8Rng) -> CliResult<f64> {
    let v = regularized_x_integral(XProfile::Abs, 1e-3)? * (-PI / (2.0 * PI));
    Ok((v - 1.0).norm())
}

fn direct_trace(_: &SuiteConfig, rng: &mut ChaCha8Rng) -> CliResult<f64> {
    max_over(0..10, |_| {
        let (a, b) = (random_hermitian(rng, 8), random_hermitian(rng, 8));
        Ok((a.trace_with(&b)? - direct_trace_product(&a, &b)).norm())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_profile_passes_and_is_deterministic() {
        let cfg = SuiteConfig::new(Profile::Quick, 3);
        let a = run_suite(&cfg);
        for c in &a.checks {
            assert_eq!(c.status, Status::Pass, "{c:?}");
        }
        let b = run_suite(&cfg);
        assert_eq!(a.without_timing(), b.without_timing());
        let names: Vec<&str> = a.checks.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, check_names(Profile::Quick));
    }

    #[test]
    fn seeded_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = random_hermitian(&mut rng, 6);
        assert_eq!(h.hermiticity_deviation(), 0.0);
        let rho = random_density(&mut rng, 6);
        assert!((rho.op().trace().re - 1.0).abs() < 1e-12);
    }
}
