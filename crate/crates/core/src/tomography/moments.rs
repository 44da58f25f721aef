// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

use super::TomogramSlice;
use crate::error::{Error, Result};

const NORMALIZATION_TOL: f64 = 1e-3;

/// `∫ X^order w dX` of a normalized slice (order 1 or 2 in practice; 0 returns
/// the normalization itself).
pub fn tomogram_moments(slice: &TomogramSlice, order: u32) -> Result<f64> {
    let norm = slice.integral();
    if (norm - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized(norm));
    }
    Ok(slice.raw_moment(order))
}
