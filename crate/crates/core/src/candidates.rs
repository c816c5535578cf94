// Copyright 2026 the Sessile Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Candidate configurations for one bounded chamber of area `A` between
//! two half-planes.
//!
//! Far from the chamber the two unbounded chambers meet along a line, so
//! every candidate is compared by its relative energy `ℓ(∂Ω₀) − d`: the
//! chamber perimeter minus the length of axis it removes. Reflecting a
//! half-plane drop across the axis doubles its energy at `β = 1/2`, which
//! links the lens-shaped candidate to the closed form in
//! [`crate::analytic`].

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::analytic::{self, AdhesionParam};
use crate::curve::fmt_f64;
use crate::error::{domain, Error, Result};

/// β of the half-plane problem matching 120° triple junctions.
pub const JUNCTION_BETA: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CandidateKind {
    /// Intersection of two equal disks, lens corners on the axis.
    VesicaPiscis,
    /// Disk centered on the axis, removing a diameter.
    DiskOnAxis,
    /// Disk clear of the axis.
    DiskOffAxis,
    /// Two β = 0 half-disks reflected into a disk, scored at β = 1/2.
    HalfDiskPairMismatch,
}

impl CandidateKind {
    pub const ALL: [CandidateKind; 4] = [
        CandidateKind::VesicaPiscis,
        CandidateKind::DiskOnAxis,
        CandidateKind::DiskOffAxis,
        CandidateKind::HalfDiskPairMismatch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CandidateKind::VesicaPiscis => "VesicaPiscis",
            CandidateKind::DiskOnAxis => "DiskOnAxis",
            CandidateKind::DiskOffAxis => "DiskOffAxis",
            CandidateKind::HalfDiskPairMismatch => "HalfDiskPairMismatch",
        }
    }
}

impl fmt::Display for CandidateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CandidateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

/// Geometric parameters of a candidate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Descriptor {
    /// Radius of the boundary arcs.
    pub radius: f64,
    /// Length of axis removed by the chamber.
    pub chord: f64,
    /// Interior angle between each boundary arc and the axis at a junction,
    /// radians. `None` when the chamber does not touch the axis.
    pub junction_half_angle: Option<f64>,
}

impl Descriptor {
    /// Angle between the two arcs at a junction, as seen from the chamber.
    pub fn interior_junction_angle(&self) -> Option<f64> {
        self.junction_half_angle.map(|a| 2.0 * a)
    }

    /// Angle between each arc and the outgoing axis ray.
    pub fn exterior_junction_angle(&self) -> Option<f64> {
        self.junction_half_angle.map(|a| PI - a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterCandidate {
    pub kind: CandidateKind,
    pub total_area: f64,
    /// `ℓ(∂Ω₀) − d`.
    pub relative_energy: f64,
    pub descriptor: Descriptor,
}

pub fn candidate_energy(kind: CandidateKind, total_area: f64) -> Result<ClusterCandidate> {
    if !(total_area.is_finite() && total_area > 0.0) {
        return Err(domain(
            "total_area",
            total_area,
            "must be positive and finite",
        ));
    }
    let disk_radius = (total_area / PI).sqrt();
    let (relative_energy, descriptor) = match kind {
        CandidateKind::VesicaPiscis => {
            let beta = AdhesionParam::new(JUNCTION_BETA)?;
            let half = 0.5 * total_area;
            let sol = analytic::closed_form_solution(beta, half)?;
            (
                2.0 * analytic::minimal_energy(beta, half)?,
                Descriptor {
                    radius: sol.radius,
                    chord: 2.0 * sol.half_width,
                    junction_half_angle: Some(analytic::endpoint_angle(beta)?),
                },
            )
        }
        CandidateKind::DiskOnAxis => (
            2.0 * disk_radius * (PI - 1.0),
            Descriptor {
                radius: disk_radius,
                chord: 2.0 * disk_radius,
                junction_half_angle: Some(FRAC_PI_2),
            },
        ),
        CandidateKind::DiskOffAxis => (
            2.0 * PI * disk_radius,
            Descriptor {
                radius: disk_radius,
                chord: 0.0,
                junction_half_angle: None,
            },
        ),
        CandidateKind::HalfDiskPairMismatch => {
            // Half-disk of area A/2 is the β = 0 optimum; score it with
            // J = L − 2βp at β = 1/2 and reflect.
            let beta0 = AdhesionParam::new(0.0)?;
            let sol = analytic::closed_form_solution(beta0, 0.5 * total_area)?;
            let half_energy = sol.arc_length() - 2.0 * JUNCTION_BETA * sol.half_width;
            (
                2.0 * half_energy,
                Descriptor {
                    radius: sol.radius,
                    chord: 2.0 * sol.half_width,
                    junction_half_angle: Some(FRAC_PI_2),
                },
            )
        }
    };
    Ok(ClusterCandidate {
        kind,
        total_area,
        relative_energy,
        descriptor,
    })
}

/// Energies closer than this (relative) rank by kind order instead.
const TIE_TOLERANCE: f64 = 1e-12;

fn by_energy(a: &ClusterCandidate, b: &ClusterCandidate) -> Ordering {
    let (x, y) = (a.relative_energy, b.relative_energy);
    if (x - y).abs() <= TIE_TOLERANCE * x.abs().max(y.abs()) {
        a.kind.cmp(&b.kind)
    } else {
        x.total_cmp(&y)
    }
}

/// Every kind, sorted by ascending relative energy.
pub fn rank_candidates(total_area: f64) -> Result<Vec<ClusterCandidate>> {
    let mut all = CandidateKind::ALL
        .into_iter()
        .map(|k| candidate_energy(k, total_area))
        .collect::<Result<Vec<_>>>()?;
    all.sort_by(by_energy);
    Ok(all)
}

/// `kind,total_area,relative_energy,rank` with ranks from 1.
pub fn write_ranking_csv<W: Write>(ranked: &[ClusterCandidate], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(["kind", "total_area", "relative_energy", "rank"])?;
    for (i, c) in ranked.iter().enumerate() {
        w.write_record([
            c.kind.name().to_string(),
            fmt_f64(c.total_area),
            fmt_f64(c.relative_energy),
            (i + 1).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
