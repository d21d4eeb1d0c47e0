// Copyright 2026 The dasim Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors produced by the compiler and the simulators.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The request exceeds what the dense kernels can hold in memory.
    #[error("resource limit: {0}")]
    Resource(String),

    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A combinatorial object cannot be constructed with the supported methods.
    #[error("construction error: {0}")]
    Construction(String),

    /// Malformed text input (schedule or circuit files).
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
