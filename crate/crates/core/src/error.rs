// Copyright 2026 the Sessile Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

use thiserror::Error;

/// Errors produced by the sessile drop toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter fell outside the domain where an operation is defined.
    #[error("domain error: {name} = {value} ({reason})")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// Fixed-width problem asked for more area than a graph can enclose with
    /// a minimizer on the given chord.
    #[error("infeasible area {area} for half-width {half_width}: limit is {limit}")]
    InfeasibleArea {
        area: f64,
        half_width: f64,
        limit: f64,
    },

    /// The outer one-dimensional search ended on a bracket endpoint.
    #[error("minimum on bracket endpoint {at} of ({lo}, {hi})")]
    BracketMiss { lo: f64, hi: f64, at: f64 },

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("invalid support [{a}, {b}]: {reason}")]
    InvalidSupport {
        a: f64,
        b: f64,
        reason: &'static str,
    },

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown candidate kind `{0}`")]
    UnknownKind(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::Domain {
        name,
        value,
        reason,
    }
}
