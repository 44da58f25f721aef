// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

//! Cyclic Jacobi eigensolver for dense complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then applies the real symmetric Jacobi rotation. Sweeps continue
//! until the off-diagonal Frobenius norm drops below `eps * ||A||_F`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::matrix::OperatorMatrix;

const MAX_SWEEPS: usize = 64;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    /// Column `j` (i.e. `vectors[(n, j)]`) is the eigenvector for `values[j]`.
    pub vectors: OperatorMatrix,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Eigenvector `j` as a contiguous vector.
    pub fn vector(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim()).map(|n| self.vectors[(n, j)]).collect()
    }

    /// `V f(Λ) V†` for a scalar function of the eigenvalues.
    pub fn map_spectrum(&self, mut f: impl FnMut(f64) -> Complex64) -> OperatorMatrix {
        let n = self.dim();
        let fv: Vec<Complex64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        OperatorMatrix::from_fn(n, |r, c| {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                acc += v[(r, j)] * fv[j] * v[(c, j)].conj();
            }
            acc
        })
    }

    /// `max |H - V Λ V†|`.
    pub fn reconstruction_residual(&self, h: &OperatorMatrix) -> f64 {
        self.map_spectrum(|l| Complex64::new(l, 0.0)).max_abs_diff(h)
    }
}

/// Diagonalizes `h`, assumed Hermitian (only the upper triangle's consistency
/// with the lower one is not re-checked here).
pub(crate) fn jacobi_hermitian(h: &OperatorMatrix) -> EigenSystem {
    let n = h.dim();
    let mut a = h.hermitian_part();
    let mut v = OperatorMatrix::identity(n);

    let frob = a.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let threshold = f64::EPSILON * frob.max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|k| a[(k, k)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values = order.iter().map(|&k| diag[k]).collect();
    let vectors = OperatorMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    EigenSystem { values, vectors }
}

fn off_diagonal_norm(a: &OperatorMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for r in 0..n {
        for c in (r + 1)..n {
            s += a[(r, c)].norm_sqr();
        }
    }
    (2.0 * s).sqrt()
}

fn rotate(a: &mut OperatorMatrix, v: &mut OperatorMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Skip rotations that cannot change the diagonal in floating point.
    if mag < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = apq / mag; // e^{i phi}
    let zeta = (aqq - app) / (2.0 * mag);
    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
    let t = if zeta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // J restricted to (p, q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.dim();
    // A <- A J (columns p, q)
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    // A <- J† A (rows p, q)
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    // V <- V J
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}
