// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::{LabelPoint, SymbolClass, SymbolField};
use crate::error::{Error, Result};
use crate::frame::ReferenceFrame;
use crate::hilbert::{build_momentum, build_position, quadratic_form, BasisConfig};
use crate::matrix::OperatorMatrix;

/// X dependence of a distributional term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XProfile {
    /// `|X|`
    Abs,
    /// `X |X|`
    XAbs,
}

/// `coefficient * profile(X) * δ^(mu_order)(mu) * δ^(nu_order)(nu)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionalTerm {
    pub coefficient: f64,
    pub profile: XProfile,
    pub mu_order: u8,
    pub nu_order: u8,
}

/// Finite sum of distributional terms.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionalSymbol {
    pub terms: Vec<DistributionalTerm>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistributionalOperator {
    Identity,
    Position,
    Momentum,
}

/// Closed-form tomographic symbols of `1`, `q` and `p`:
/// `-π |X| δ(mu) δ(nu)`, `(π/2) X|X| δ'(mu) δ(nu)`, `(π/2) X|X| δ(mu) δ'(nu)`.
pub fn distributional_symbol(which: DistributionalOperator) -> DistributionalSymbol {
    let term = match which {
        DistributionalOperator::Identity => DistributionalTerm {
            coefficient: -PI,
            profile: XProfile::Abs,
            mu_order: 0,
            nu_order: 0,
        },
        DistributionalOperator::Position => DistributionalTerm {
            coefficient: PI / 2.0,
            profile: XProfile::XAbs,
            mu_order: 1,
            nu_order: 0,
        },
        DistributionalOperator::Momentum => DistributionalTerm {
            coefficient: PI / 2.0,
            profile: XProfile::XAbs,
            mu_order: 0,
            nu_order: 1,
        },
    };
    DistributionalSymbol { terms: vec![term] }
}

/// Simpson step for the regularized X integrals.
const SIMPSON_STEP: f64 = 0.005;

/// `∫ g(X) e^{iX - eps X^2} dX` over the real line.
///
/// `|X|` is even and `X|X|` odd, so the integral folds onto `[0, ∞)` (no kink
/// inside the domain) and is cut where `e^{-eps X^2}` drops below `e^{-60}`.
pub fn regularized_x_integral(profile: XProfile, eps: f64) -> Result<Complex64> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidAxis(alloc::format!("regularization {eps} must be positive")));
    }
    let cut = (60.0 / eps).sqrt();
    let n = {
        let n = (cut / SIMPSON_STEP).ceil() as usize;
        n + n % 2
    };
    let h = cut / n as f64;
    let f = |x: f64| {
        let damp = (-eps * x * x).exp();
        match profile {
            XProfile::Abs => x * x.cos() * damp,
            XProfile::XAbs => x * x * x.sin() * damp,
        }
    };
    let mut acc = f(0.0) + f(cut);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(i as f64 * h);
    }
    let half = acc * h / 3.0;
    Ok(match profile {
        XProfile::Abs => Complex64::new(2.0 * half, 0.0),
        XProfile::XAbs => Complex64::new(0.0, 2.0 * half),
    })
}

impl DistributionalSymbol {
    /// Regularized pairing with the quantizer,
    /// `∫ f(x) (1/2π) exp(iX - i mu q - i nu p) e^{-eps X^2} dx`.
    ///
    /// `δ^(a)(mu) δ^(b)(nu)` acts on `exp(-i mu q - i nu p)` as
    /// `(-∂_mu)^a (-∂_nu)^b` at the origin: `1`, `i q`, `i p`, `-(qp + pq)/2`.
    pub fn pair_with_quantizer(&self, eps: f64, cfg: BasisConfig) -> Result<OperatorMatrix> {
        let i = Complex64::new(0.0, 1.0);
        let mut acc = OperatorMatrix::zeros(cfg.dim());
        for t in &self.terms {
            let scalar = regularized_x_integral(t.profile, eps)? * (t.coefficient / (2.0 * PI));
            let op = match (t.mu_order, t.nu_order) {
                (0, 0) => OperatorMatrix::identity(cfg.dim()),
                (1, 0) => build_position(cfg).scale(i),
                (0, 1) => build_momentum(cfg).scale(i),
                (1, 1) => quadratic_form(0.0, 0.0, 0.0, 0.0, -0.5, cfg),
                (a, b) => {
                    return Err(Error::InvalidDistribution(alloc::format!(
                        "derivative orders ({a}, {b}) are not supported"
                    )))
                }
            };
            acc.add_scaled(&op, scalar);
        }
        Ok(acc)
    }
}

impl SymbolField for DistributionalSymbol {
    fn class(&self) -> SymbolClass {
        SymbolClass::Distributional
    }

    fn value(&self, _x: LabelPoint) -> Result<Complex64> {
        Err(Error::NotTraceClass)
    }

    fn x_fourier(&self, _frame: ReferenceFrame, _s: f64) -> Result<Complex64> {
        Err(Error::NotTraceClass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity_value(eps: f64) -> f64 {
        let v = regularized_x_integral(XProfile::Abs, eps).unwrap();
        (-PI / (2.0 * PI) * v).re
    }

    #[test]
    fn term_lists() {
        let id = distributional_symbol(DistributionalOperator::Identity);
        assert_eq!(id.terms.len(), 1);
        assert_eq!(
            id.terms[0],
            DistributionalTerm {
                coefficient: -PI,
                profile: XProfile::Abs,
                mu_order: 0,
                nu_order: 0
            }
        );
        let q = distributional_symbol(DistributionalOperator::Position);
        assert_eq!((q.terms[0].coefficient, q.terms[0].profile, q.terms[0].mu_order, q.terms[0].nu_order), (PI / 2.0, XProfile::XAbs, 1, 0));
    }

    #[test]
    fn identity_pairing_converges_monotonically() {
        // oracle: plain trapezoid on the symmetric interval, kink at X = 0 included
        let eps_list = [0.1, 0.01, 0.001];
        let mut last = f64::INFINITY;
        for eps in eps_list {
            let v = identity_value(eps);
            let cut = (60.0f64 / eps).sqrt();
            let h = 1e-3;
            let n = (cut / h) as i64;
            let mut acc = 0.0;
            for k in -n..=n {
                let x = k as f64 * h;
                let w = if k.abs() == n { 0.5 } else { 1.0 };
                acc += w * x.abs() * x.cos() * (-eps * x * x).exp();
            }
            let oracle = -0.5 * acc * h;
            assert!((v - oracle).abs() < 1e-5, "{eps}: {v} vs {oracle}");
            let gap = (v - 1.0).abs();
            assert!(gap < last);
            last = gap;
        }
        assert!(last < 1e-2);
    }

    #[test]
    fn pairing_reproduces_quadratures() {
        let cfg = BasisConfig::new(6).unwrap();
        let eps = 1e-4;
        let id = distributional_symbol(DistributionalOperator::Identity).pair_with_quantizer(eps, cfg).unwrap();
        assert!(id.max_abs_diff(&OperatorMatrix::identity(6)) < 1e-2);
        let q = distributional_symbol(DistributionalOperator::Position).pair_with_quantizer(eps, cfg).unwrap();
        assert!(q.max_abs_diff(&build_position(cfg)) < 1e-2);
        let p = distributional_symbol(DistributionalOperator::Momentum).pair_with_quantizer(eps, cfg).unwrap();
        assert!(p.max_abs_diff(&build_momentum(cfg)) < 1e-2);
        assert_eq!(
            id_symbol_value(),
            Err(Error::NotTraceClass)
        );
    }

    fn id_symbol_value() -> Result<Complex64> {
        distributional_symbol(DistributionalOperator::Identity).value(LabelPoint::new(0.0, 1.0, 0.0))
    }
}
