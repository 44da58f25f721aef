// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Uniform 1D grid `x_i = center + (i - count / 2) * step`, `i in 0..count`.
///
/// With integer division in `count / 2`, `center` is always a grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformAxis {
    pub center: f64,
    pub step: f64,
    pub count: usize,
}

impl UniformAxis {
    pub fn new(center: f64, step: f64, count: usize) -> Result<Self> {
        let axis = Self {
            center,
            step,
            count,
        };
        axis.validate()?;
        Ok(axis)
    }

    pub fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::InvalidAxis(alloc::format!(
                "count {} must be at least 2",
                self.count
            )));
        }
        if !(self.step > 0.0) || !self.step.is_finite() || !self.center.is_finite() {
            return Err(Error::InvalidAxis(alloc::format!(
                "step {} must be positive and finite",
                self.step
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn offset(&self) -> usize {
        self.count / 2
    }

    #[inline]
    pub fn point(&self, i: usize) -> f64 {
        self.center + (i as f64 - self.offset() as f64) * self.step
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.point(i)).collect()
    }

    pub fn first(&self) -> f64 {
        self.point(0)
    }

    pub fn last(&self) -> f64 {
        self.point(self.count - 1)
    }

    /// Same node pattern stretched by `factor > 0` about the origin.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            center: self.center * factor,
            step: self.step * factor,
            count: self.count,
        }
    }

    /// Fractional index of `x` (may lie outside `0..count`).
    pub fn locate(&self, x: f64) -> f64 {
        (x - self.center) / self.step + self.offset() as f64
    }

    /// Trapezoid rule over samples on this axis.
    pub fn trapezoid(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.count);
        trapezoid(values, self.step)
    }

    /// Linear interpolation of samples, zero outside the axis.
    pub fn interpolate(&self, values: &[f64], x: f64) -> f64 {
        let t = self.locate(x);
        if t < 0.0 || t > (self.count - 1) as f64 {
            return 0.0;
        }
        let i = (t as usize).min(self.count - 2);
        let frac = t - i as f64;
        values[i] * (1.0 - frac) + values[i + 1] * frac
    }
}

pub(crate) fn trapezoid(values: &[f64], step: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => {
            let inner: f64 = values[1..n - 1].iter().sum();
            step * (inner + 0.5 * (values[0] + values[n - 1]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn center_is_a_node() {
        let ax = UniformAxis::new(0.0, 0.1, 8).unwrap();
        assert_eq!(ax.point(4), 0.0);
        assert!((ax.first() + 0.4).abs() < 1e-15);
        assert!((ax.last() - 0.3).abs() < 1e-15);
        let odd = UniformAxis::new(2.0, 0.5, 5).unwrap();
        assert_eq!(odd.point(2), 2.0);
    }

    #[test]
    fn rejects_bad_axes() {
        assert!(UniformAxis::new(0.0, 0.0, 8).is_err());
        assert!(UniformAxis::new(0.0, -1.0, 8).is_err());
        assert!(UniformAxis::new(0.0, 0.1, 1).is_err());
        assert!(UniformAxis::new(f64::NAN, 0.1, 8).is_err());
    }

    #[test]
    fn trapezoid_and_interpolation() {
        let ax = UniformAxis::new(0.5, 0.25, 5).unwrap(); // 0, 0.25, .., 1
        let v: Vec<f64> = ax.points().iter().map(|x| 2.0 * x).collect();
        assert!((ax.trapezoid(&v) - 1.0).abs() < 1e-15);
        assert!((ax.interpolate(&v, 0.6) - 1.2).abs() < 1e-14);
        assert_eq!(ax.interpolate(&v, 1.5), 0.0);
    }
}
