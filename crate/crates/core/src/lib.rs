// Copyright 2026 the Sessile Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Equilibrium shape of a two-dimensional sessile drop.
//!
//! A drop of area `A` resting on a line minimizes `J = L − 2βp`: the length
//! of its free boundary minus `β` times the wetted width `2p`. For graphs
//! the minimizer is a circular arc meeting the line at angle `arccos β`.
//!
//! - [`analytic`] holds the closed forms.
//! - [`curve`] is the discrete admissible class, polyline graphs with exact
//!   length and area, and the sharp inequality gap.
//! - [`solver`] minimizes `J` directly over polylines and should reproduce
//!   the closed form.
//! - [`candidates`] compares configurations of the related plane
//!   partitioning problem.
//! - [`verify`] runs the batch property checks.

pub mod analytic;
pub mod candidates;
pub mod curve;
pub mod error;
pub mod solver;
mod sum;
pub mod svg;
pub mod verify;

pub use analytic::{AdhesionParam, BetaRegime, CircularArcSolution};
pub use candidates::{CandidateKind, ClusterCandidate};
pub use curve::{CurveMetrics, GraphCurve};
pub use error::{Error, Result};
pub use solver::{SolveReport, SolverConfig, StepRule};
