// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line driver for `symplectomo-core`: run configuration, state
//! specifications, file formats, the five subcommands and the verification
//! suite.

pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod spec;
pub mod verify;

pub use error::{CliError, CliResult};
