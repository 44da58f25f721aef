// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense square complex matrices in a truncated basis.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Dense `dim x dim` complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl OperatorMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for n in 0..dim {
            m[(n, n)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (n, &d) in diag.iter().enumerate() {
            m[(n, n)] = d;
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|n| self[(n, n)]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, other: &Self, s: Complex64) {
        debug_assert_eq!(self.dim, other.dim);
        for (a, &b) in self.data.iter_mut().zip(other.data.iter()) {
            *a += b * s;
        }
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |A[m][n] - conj(A[n][m])|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for r in 0..self.dim {
            for c in r..self.dim {
                dev = dev.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        dev
    }

    /// `(A + A†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |r, c| (self[(r, c)] + self[(c, r)].conj()) * 0.5)
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        check_dims(self.dim, rhs.dim)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            let out_row = &mut out.data[r * n..(r + 1) * n];
            for k in 0..n {
                let a = self.data[r * n + k];
                if a.is_zero() {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `Tr(self * rhs)` without forming the product.
    pub fn trace_with(&self, rhs: &Self) -> Result<Complex64> {
        check_dims(self.dim, rhs.dim)?;
        let n = self.dim;
        let mut acc = Complex64::zero();
        for r in 0..n {
            for c in 0..n {
                acc += self.data[r * n + c] * rhs.data[c * n + r];
            }
        }
        Ok(acc)
    }

    /// `<v| self |v>`.
    pub fn expectation(&self, v: &[Complex64]) -> Complex64 {
        let n = self.dim;
        let mut acc = Complex64::zero();
        for r in 0..n {
            let mut row = Complex64::zero();
            for c in 0..n {
                row += self.data[r * n + c] * v[c];
            }
            acc += v[r].conj() * row;
        }
        acc
    }

    /// Restriction to the leading `dim x dim` block.
    pub fn truncated(&self, dim: usize) -> Self {
        Self::from_fn(dim, |r, c| self[(r, c)])
    }

    /// Zero-padded embedding into a larger basis.
    pub fn padded(&self, dim: usize) -> Self {
        Self::from_fn(dim, |r, c| {
            if r < self.dim && c < self.dim {
                self[(r, c)]
            } else {
                Complex64::zero()
            }
        })
    }
}

#[inline]
pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

impl Index<(usize, usize)> for OperatorMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for OperatorMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

/// Panics on dimension mismatch; use [`OperatorMatrix::matmul`] for the fallible form.
impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.matmul(rhs).expect("operator dimensions must agree")
    }
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.dim, rhs.dim, "operator dimensions must agree");
        OperatorMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.dim, rhs.dim, "operator dimensions must agree");
        OperatorMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}
