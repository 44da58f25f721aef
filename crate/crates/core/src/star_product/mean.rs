// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};
use crate::frame::ReferenceFrame;
use crate::hilbert::{quadratic_form, BasisConfig};
use crate::matrix::OperatorMatrix;
use crate::tomography::{tomogram_moments, TomogramSlice};

/// Polynomial observables whose dual symbols reduce to slice moments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyObservable {
    Identity,
    Q,
    P,
    Q2,
    P2,
    /// `q p + p q`
    QpPq,
}

impl PolyObservable {
    pub const ALL: [PolyObservable; 6] = [
        PolyObservable::Identity,
        PolyObservable::Q,
        PolyObservable::P,
        PolyObservable::Q2,
        PolyObservable::P2,
        PolyObservable::QpPq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PolyObservable::Identity => "1",
            PolyObservable::Q => "q",
            PolyObservable::P => "p",
            PolyObservable::Q2 => "q2",
            PolyObservable::P2 => "p2",
            PolyObservable::QpPq => "qp+pq",
        }
    }
}

const Q_FRAME: ReferenceFrame = ReferenceFrame::new(1.0, 0.0);
const P_FRAME: ReferenceFrame = ReferenceFrame::new(0.0, 1.0);
const DIAGONAL_FRAME: ReferenceFrame = ReferenceFrame::new(1.0, 1.0);

fn moment_at(slices: &[TomogramSlice], frame: ReferenceFrame, order: u32) -> Result<f64> {
    let slice = slices
        .iter()
        .find(|s| s.frame.approx_eq(&frame, 1e-12))
        .ok_or(Error::MissingRequiredFrame {
            mu: frame.mu,
            nu: frame.nu,
        })?;
    tomogram_moments(slice, order)
}

/// `<A>` from tomogram moments on the frames `(1, 0)`, `(0, 1)` and `(1, 1)`.
///
/// `(q + p)^2 = q^2 + p^2 + (qp + pq)` gives the symmetrized product from
/// the three second moments.
pub fn mean_value(slices: &[TomogramSlice], observable: PolyObservable) -> Result<f64> {
    match observable {
        PolyObservable::Identity => moment_at(slices, Q_FRAME, 0),
        PolyObservable::Q => moment_at(slices, Q_FRAME, 1),
        PolyObservable::P => moment_at(slices, P_FRAME, 1),
        PolyObservable::Q2 => moment_at(slices, Q_FRAME, 2),
        PolyObservable::P2 => moment_at(slices, P_FRAME, 2),
        PolyObservable::QpPq => Ok(moment_at(slices, DIAGONAL_FRAME, 2)?
            - moment_at(slices, Q_FRAME, 2)?
            - moment_at(slices, P_FRAME, 2)?),
    }
}

/// Matrix of the observable, exact inside the truncated block.
pub fn observable_operator(observable: PolyObservable, cfg: BasisConfig) -> OperatorMatrix {
    let c = match observable {
        PolyObservable::Identity => return OperatorMatrix::identity(cfg.dim()),
        PolyObservable::Q => (1.0, 0.0, 0.0, 0.0, 0.0),
        PolyObservable::P => (0.0, 1.0, 0.0, 0.0, 0.0),
        PolyObservable::Q2 => (0.0, 0.0, 1.0, 0.0, 0.0),
        PolyObservable::P2 => (0.0, 0.0, 0.0, 1.0, 0.0),
        PolyObservable::QpPq => (0.0, 0.0, 0.0, 0.0, 1.0),
    };
    quadratic_form(c.0, c.1, c.2, c.3, c.4, cfg)
}
