// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

use alloc::string::String;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("basis dimension {0} is below the minimum of 2")]
    InvalidDimension(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("fock level {level} out of range for dimension {dim}")]
    FockLevelOutOfRange { level: usize, dim: usize },
    #[error("invalid mixture weights: {0}")]
    InvalidWeights(String),
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("not a valid density matrix: {0}")]
    NotDensity(String),
    #[error("reference frame (0, 0) is not allowed here")]
    InvalidFrame,
    #[error("invalid classical distribution: {0}")]
    InvalidDistribution(String),
    #[error("invalid grid: {0}")]
    InvalidAxis(String),
    #[error("distribution support is not covered by the grid: {0}")]
    SupportNotCovered(String),
    #[error("k-grid violates the sampling relation: {0}")]
    NyquistViolation(String),
    #[error("insufficient frame coverage: {0}")]
    InsufficientFrameCoverage(String),
    #[error("imaginary residue {0:e} exceeds the allowed relative level")]
    ImaginaryResidueTooLarge(f64),
    #[error("tomogram slice is not normalized (integral {0})")]
    NotNormalized(f64),
    #[error("closed-form kernel is singular at nu = 0 (resolve the delta in mu instead, or use the trace route)")]
    NuZeroInKernel,
    #[error("quadrature did not converge: coarse {coarse:e}, fine {fine:e}, change {change:e} > tolerance {tolerance:e}")]
    QuadratureNotConverged {
        coarse: f64,
        fine: f64,
        change: f64,
        tolerance: f64,
    },
    #[error("required reference frame ({mu}, {nu}) missing from slice set")]
    MissingRequiredFrame { mu: f64, nu: f64 },
    #[error("symbol is distributional; a trace-class numeric symbol is required")]
    NotTraceClass,
}

impl Error {
    /// Stable, machine-parseable identifier of the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidDimension(_) => "InvalidDimension",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::FockLevelOutOfRange { .. } => "FockLevelOutOfRange",
            Error::InvalidWeights(_) => "InvalidWeights",
            Error::NotHermitian(_) => "NotHermitian",
            Error::NotDensity(_) => "NotDensity",
            Error::InvalidFrame => "InvalidFrame",
            Error::InvalidDistribution(_) => "InvalidDistribution",
            Error::InvalidAxis(_) => "InvalidAxis",
            Error::SupportNotCovered(_) => "SupportNotCovered",
            Error::NyquistViolation(_) => "NyquistViolation",
            Error::InsufficientFrameCoverage(_) => "InsufficientFrameCoverage",
            Error::ImaginaryResidueTooLarge(_) => "ImaginaryResidueTooLarge",
            Error::NotNormalized(_) => "NotNormalized",
            Error::NuZeroInKernel => "NuZeroInKernel",
            Error::QuadratureNotConverged { .. } => "QuadratureNotConverged",
            Error::MissingRequiredFrame { .. } => "MissingRequiredFrame",
            Error::NotTraceClass => "NotTraceClass",
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
