// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};

/// Phase-space reference frame `(mu, nu)`: the measured coordinate is
/// `X = mu q + nu p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceFrame {
    pub mu: f64,
    pub nu: f64,
}

impl ReferenceFrame {
    pub const fn new(mu: f64, nu: f64) -> Self {
        Self { mu, nu }
    }

    /// Unit frame `(cos phi, sin phi)`, the optical homodyne slice.
    pub fn from_angle(phi: f64) -> Self {
        Self::new(phi.cos(), phi.sin())
    }

    /// Rotated, scaled frame `(s cos phi, s^-1 sin phi)`.
    pub fn from_scale_angle(s: f64, phi: f64) -> Self {
        Self::new(s * phi.cos(), phi.sin() / s)
    }

    pub fn is_zero(&self) -> bool {
        self.mu == 0.0 && self.nu == 0.0
    }

    /// Rejects the degenerate frame `(0, 0)` and non-finite entries.
    pub fn validated(self) -> Result<Self> {
        if self.is_zero() || !self.mu.is_finite() || !self.nu.is_finite() {
            Err(Error::InvalidFrame)
        } else {
            Ok(self)
        }
    }

    pub fn norm(&self) -> f64 {
        self.mu.hypot(self.nu)
    }

    pub fn angle(&self) -> f64 {
        self.nu.atan2(self.mu)
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        Self::new(self.mu * lambda, self.nu * lambda)
    }

    /// `mu q + nu p` at a phase-space point.
    #[inline]
    pub fn project(&self, q: f64, p: f64) -> f64 {
        self.mu * q + self.nu * p
    }

    /// Equality up to `tol` in each component.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.mu - other.mu).abs() <= tol && (self.nu - other.nu).abs() <= tol
    }
}
