// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

//! Symplectic tomography and star-product quantization in a truncated Fock
//! basis.
//!
//! The crate is `no_std` (it needs `alloc`). Modules:
//!
//! * [`hilbert`]: ladder-operator matrices, test states, Hermitian
//!   eigendecomposition, phase-space exponentials, traces.
//! * [`tomography`]: classical Radon tomograms, quantum symplectic tomograms
//!   (characteristic-function and spectral routes), Fourier inversion to
//!   phase-space densities, Wigner functions and density operators.
//! * [`star_product`]: dequantizer/quantizer symbol maps, trace- and
//!   kernel-route star products, closed-form kernels, dual symbols, mean
//!   values, Weyl symbols and distributional symbols.
//! * [`oracle`]: brute-force reference computations used by the test suites.
#![no_std]

extern crate alloc;

pub mod eigen;
pub mod error;
pub mod fft;
pub mod frame;
pub mod grid;
pub mod hilbert;
pub mod matrix;
pub mod oracle;
pub mod star_product;
pub mod tomography;

pub use num_complex::Complex64;

pub use crate::eigen::EigenSystem;
pub use crate::error::{Error, Result};
pub use crate::frame::ReferenceFrame;
pub use crate::grid::UniformAxis;
pub use crate::hilbert::{BasisConfig, DensityMatrix, StateSpec};
pub use crate::matrix::OperatorMatrix;
