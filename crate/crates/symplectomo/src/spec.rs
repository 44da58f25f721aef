// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

//! State and operator specifications.
//!
//! ```text
//! fock:n | coherent:re,im | thermal:nbar
//! cgauss:q0,p0,sqq,spp,sqp | cpoint:q0,p0[,width]
//! mix:w1*spec1+w2*spec2+...
//! q | p | 1
//! ```

use symplectomo_core::hilbert::{build_momentum, build_position, density_state};
use symplectomo_core::tomography::{ClassicalDistribution, ClassicalForm, GaussianParams, Normalization};
use symplectomo_core::{BasisConfig, Complex64, OperatorMatrix, StateSpec};

use crate::error::{CliError, CliResult};

/// Width assigned to `cpoint` when none is given.
pub const DEFAULT_POINT_WIDTH: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedOperator {
    Identity,
    Position,
    Momentum,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Spec {
    Quantum(StateSpec),
    Classical(ClassicalForm),
    Operator(NamedOperator),
}

impl Spec {
    /// Matrix in the truncated basis: density for quantum states, the named
    /// operator otherwise. Classical distributions have no matrix.
    pub fn operator(&self, cfg: BasisConfig) -> CliResult<OperatorMatrix> {
        match self {
            Spec::Quantum(s) => Ok(density_state(s, cfg)?.into_inner()),
            Spec::Operator(NamedOperator::Identity) => Ok(OperatorMatrix::identity(cfg.dim())),
            Spec::Operator(NamedOperator::Position) => Ok(build_position(cfg)),
            Spec::Operator(NamedOperator::Momentum) => Ok(build_momentum(cfg)),
            Spec::Classical(_) => Err(CliError::parse("classical", "a classical distribution has no operator matrix")),
        }
    }

    pub fn classical(&self, convention: Normalization) -> Option<CliResult<ClassicalDistribution>> {
        match self {
            Spec::Classical(form) => Some(ClassicalDistribution::new(form.clone(), convention).map_err(Into::into)),
            _ => None,
        }
    }
}

fn numbers(token: &str, body: &str, allowed: &[usize]) -> CliResult<Vec<f64>> {
    let values = body
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| CliError::parse(token, format!("`{p}` is not a number"))))
        .collect::<CliResult<Vec<_>>>()?;
    if !allowed.contains(&values.len()) {
        return Err(CliError::parse(token, format!("expected {allowed:?} parameters, found {}", values.len())));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(CliError::parse(token, "parameters must be finite"));
    }
    Ok(values)
}

/// Splits a mixture body on the `+` separators, leaving exponent signs alone.
fn split_terms(body: &str) -> Vec<&str> {
    let bytes = body.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    for (i, &b) in bytes.iter().enumerate() {
        if b == b'+' && i > 0 && !matches!(bytes[i - 1], b'e' | b'E') {
            out.push(&body[start..i]);
            start = i + 1;
        }
    }
    out.push(&body[start..]);
    out
}

pub fn parse_spec(token: &str) -> CliResult<Spec> {
    let token = token.trim();
    match token {
        "q" => return Ok(Spec::Operator(NamedOperator::Position)),
        "p" => return Ok(Spec::Operator(NamedOperator::Momentum)),
        "1" => return Ok(Spec::Operator(NamedOperator::Identity)),
        _ => {}
    }
    let (kind, body) = token
        .split_once(':')
        .ok_or_else(|| CliError::parse(token, "expected kind:parameters or one of q, p, 1"))?;
    match kind {
        "fock" => {
            let n = body.trim().parse::<usize>().map_err(|_| CliError::parse(token, "fock level must be a nonnegative integer"))?;
            Ok(Spec::Quantum(StateSpec::Fock(n)))
        }
        "coherent" => {
            let v = numbers(token, body, &[1, 2])?;
            Ok(Spec::Quantum(StateSpec::Coherent(Complex64::new(v[0], *v.get(1).unwrap_or(&0.0)))))
        }
        "thermal" => {
            let v = numbers(token, body, &[1])?;
            Ok(Spec::Quantum(StateSpec::Thermal(v[0])))
        }
        "cgauss" => {
            let v = numbers(token, body, &[5])?;
            let g = GaussianParams {
                mean_q: v[0],
                mean_p: v[1],
                cov_qq: v[2],
                cov_pp: v[3],
                cov_qp: v[4],
            };
            Ok(Spec::Classical(ClassicalForm::Gaussian(g)))
        }
        "cpoint" => {
            let v = numbers(token, body, &[2, 3])?;
            Ok(Spec::Classical(ClassicalForm::Point {
                q0: v[0],
                p0: v[1],
                width: *v.get(2).unwrap_or(&DEFAULT_POINT_WIDTH),
            }))
        }
        "mix" => parse_mixture(token, body),
        other => Err(CliError::parse(other, "unknown specification kind")),
    }
}

fn parse_mixture(token: &str, body: &str) -> CliResult<Spec> {
    let mut quantum = Vec::new();
    let mut classical = Vec::new();
    for term in split_terms(body) {
        let (w, inner) = term
            .split_once('*')
            .ok_or_else(|| CliError::parse(term, "mixture terms look like weight*spec"))?;
        let w = w.trim().parse::<f64>().map_err(|_| CliError::parse(w, "mixture weight is not a number"))?;
        match parse_spec(inner)? {
            Spec::Quantum(s) => quantum.push((w, s)),
            Spec::Classical(f) => classical.push((w, f)),
            Spec::Operator(_) => return Err(CliError::parse(inner, "operators cannot be mixed")),
        }
    }
    match (quantum.is_empty(), classical.is_empty()) {
        (false, true) => Ok(Spec::Quantum(StateSpec::Mixture(quantum))),
        (true, false) => Ok(Spec::Classical(ClassicalForm::Mixture(classical))),
        _ => Err(CliError::parse(token, "a mixture must be all quantum or all classical")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        assert_eq!(parse_spec("fock:3").unwrap(), Spec::Quantum(StateSpec::Fock(3)));
        assert_eq!(
            parse_spec("coherent:1,-0.5").unwrap(),
            Spec::Quantum(StateSpec::Coherent(Complex64::new(1.0, -0.5)))
        );
        assert_eq!(parse_spec("thermal:0.5").unwrap(), Spec::Quantum(StateSpec::Thermal(0.5)));
        assert!(matches!(parse_spec("cgauss:0,0,1,1,0").unwrap(), Spec::Classical(ClassicalForm::Gaussian(_))));
        assert_eq!(
            parse_spec("cpoint:1,0").unwrap(),
            Spec::Classical(ClassicalForm::Point {
                q0: 1.0,
                p0: 0.0,
                width: DEFAULT_POINT_WIDTH
            })
        );
        assert_eq!(parse_spec("q").unwrap(), Spec::Operator(NamedOperator::Position));
        match parse_spec("mix:0.5*fock:0+0.5*coherent:1e+0,0").unwrap() {
            Spec::Quantum(StateSpec::Mixture(parts)) => {
                assert_eq!(parts.len(), 2);
                assert_eq!(parts[1].1, StateSpec::Coherent(Complex64::new(1.0, 0.0)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reports_offending_token() {
        let e = parse_spec("fock:x").unwrap_err();
        assert_eq!(e.code(), "ParseError");
        assert!(e.to_string().contains("fock:x"));
        let e = parse_spec("squeezed:1").unwrap_err();
        assert!(e.to_string().contains("squeezed"));
        assert!(parse_spec("mix:0.5*fock:0+0.5*cpoint:0,0").is_err());
        assert!(parse_spec("cgauss:0,0,1").is_err());
        assert!(parse_spec("mix:0.5fock:0").is_err());
    }
}
