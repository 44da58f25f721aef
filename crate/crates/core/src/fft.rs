// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

//! Unnormalized discrete Fourier transforms.
//!
//! `dft(x, sign)[j] = sum_m x[m] * exp(sign * 2 pi i m j / n)`. Power-of-two
//! lengths take the iterative radix-2 path, other lengths fall back to the
//! direct O(n^2) sum.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

/// Transform direction, the sign of the exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    fn value(self) -> f64 {
        match self {
            Sign::Negative => -1.0,
            Sign::Positive => 1.0,
        }
    }
}

pub fn dft_in_place(data: &mut [Complex64], sign: Sign) {
    let n = data.len();
    if n <= 1 {
        return;
    }
    if n.is_power_of_two() {
        radix2(data, sign);
    } else {
        let out = naive(data, sign);
        data.copy_from_slice(&out);
    }
}

fn naive(data: &[Complex64], sign: Sign) -> Vec<Complex64> {
    let n = data.len();
    let s = sign.value();
    (0..n)
        .map(|j| {
            data.iter()
                .enumerate()
                .map(|(m, &x)| {
                    // reduce m*j mod n before scaling to keep the angle small
                    let idx = (m * j) % n;
                    x * Complex64::from_polar(1.0, s * 2.0 * PI * idx as f64 / n as f64)
                })
                .sum()
        })
        .collect()
}

fn radix2(data: &mut [Complex64], sign: Sign) {
    let n = data.len();
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }
    let s = sign.value();
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let twiddles: Vec<Complex64> = (0..half)
            .map(|k| {
                let ang = s * 2.0 * PI * k as f64 / len as f64;
                Complex64::new(ang.cos(), ang.sin())
            })
            .collect();
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let u = data[start + k];
                let t = data[start + k + half] * twiddles[k];
                data[start + k] = u + t;
                data[start + k + half] = u - t;
            }
        }
        len <<= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signal(n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|m| {
                let x = m as f64;
                Complex64::new((0.3 * x).sin() + 0.1 * x, (1.7 * x).cos() - 0.02 * x * x)
            })
            .collect()
    }

    #[test]
    fn radix2_matches_direct_sum() {
        for n in [2usize, 8, 64, 256] {
            let x = signal(n);
            for sign in [Sign::Negative, Sign::Positive] {
                let mut fast = x.clone();
                dft_in_place(&mut fast, sign);
                let slow = naive(&x, sign);
                let scale = slow.iter().map(|z| z.norm()).fold(1.0, f64::max);
                for (a, b) in fast.iter().zip(&slow) {
                    assert!((a - b).norm() < 1e-12 * scale, "n={n}");
                }
            }
        }
    }

    #[test]
    fn forward_then_inverse_is_n_times_identity() {
        let x = signal(12); // non power of two path
        let mut y = x.clone();
        dft_in_place(&mut y, Sign::Negative);
        dft_in_place(&mut y, Sign::Positive);
        for (a, b) in x.iter().zip(&y) {
            assert!((a * 12.0 - b).norm() < 1e-10);
        }
    }
}
