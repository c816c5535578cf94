// Copyright 2026 the Sessile Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Closed-form minimizers of the half-plane drop problem.
//!
//! Among nonnegative graphs `u` on a free support `[-p, p]` with
//! `u(±p) = 0` and prescribed area `A`, the energy
//! `J[u] = ∫ (√(1 + u'²) − β) dx` is minimized by the circular arc
//! `u(x) = √(R² − x²) − βR` with `R = √(A / c(β))`,
//! `c(β) = arccos β − β√(1 − β²)` and `p = √(1 − β²) R`. The arc meets the
//! axis at the interior contact angle `arccos β`, and the minimal energy is
//! `2√(A c(β))`.
//!
//! Everything here is a pure function of its arguments and serves as the
//! exact reference for the discrete machinery in [`crate::curve`] and
//! [`crate::solver`].

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use crate::error::{domain, Error, Result};

/// Solutions are refused for β closer than this to 1; `c(β)` vanishes there.
pub const BETA_UPPER_GUARD: f64 = 1e-9;

/// Slack for clamping arcsin/arccos arguments onto `[-1, 1]`.
pub const CLAMP_SLACK: f64 = 1e-14;

/// Surface adhesion coefficient β.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct AdhesionParam(f64);

/// Qualitative behaviour of the half-plane problem as a function of β.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BetaRegime {
    /// β ≤ −1: the optimal drop detaches into a disk away from the axis.
    DisjointBall,
    /// −1 < β < 0: the optimal boundary overhangs and is not a graph.
    NonGraphArc,
    /// β = 0: half-disk meeting the axis vertically.
    HalfDisk,
    /// 0 < β < 1: circular-arc graph, the regime solved in closed form.
    GraphArc,
    /// β ≥ 1: the energy has no lower bound.
    UnboundedBelow,
}

impl BetaRegime {
    /// Whether [`closed_form_solution`] is available in this regime.
    pub fn admits_closed_form(self) -> bool {
        matches!(self, BetaRegime::HalfDisk | BetaRegime::GraphArc)
    }

    pub fn name(self) -> &'static str {
        match self {
            BetaRegime::DisjointBall => "DisjointBall",
            BetaRegime::NonGraphArc => "NonGraphArc",
            BetaRegime::HalfDisk => "HalfDisk",
            BetaRegime::GraphArc => "GraphArc",
            BetaRegime::UnboundedBelow => "UnboundedBelow",
        }
    }
}

impl fmt::Display for BetaRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl AdhesionParam {
    /// Accepts any finite β.
    pub fn new(beta: f64) -> Result<Self> {
        if beta.is_finite() {
            Ok(Self(beta))
        } else {
            Err(domain("beta", beta, "must be finite"))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn regime(self) -> BetaRegime {
        classify_beta(self)
    }

    /// β on `[0, 1)`, where the graph formulas make sense.
    pub(crate) fn graph_beta(self) -> Result<f64> {
        if (0.0..1.0).contains(&self.0) {
            Ok(self.0)
        } else {
            Err(domain("beta", self.0, "expected 0 <= beta < 1"))
        }
    }

    /// β on `[0, 1 - BETA_UPPER_GUARD]`, where a solution can be built.
    pub(crate) fn solvable_beta(self) -> Result<f64> {
        let b = self.graph_beta()?;
        if b > 1.0 - BETA_UPPER_GUARD {
            Err(domain("beta", b, "too close to 1 for a finite solution"))
        } else {
            Ok(b)
        }
    }

    /// `√(1 − β²)` evaluated as `√((1 − β)(1 + β))`.
    pub(crate) fn cosine_complement(self) -> f64 {
        ((1.0 - self.0) * (1.0 + self.0)).sqrt()
    }
}

impl TryFrom<f64> for AdhesionParam {
    type Error = Error;

    fn try_from(beta: f64) -> Result<Self> {
        Self::new(beta)
    }
}

/// Exact minimizer for a given `(β, A)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircularArcSolution {
    pub beta: f64,
    pub area: f64,
    /// Radius of curvature.
    pub radius: f64,
    /// Half-width of the support.
    pub half_width: f64,
    /// Curvature, the Lagrange multiplier of the area constraint.
    pub lambda: f64,
    /// Depth of the circle center below the axis, `βR`.
    pub center_depth: f64,
    /// `u(0) = (1 − β)R`.
    pub apex_height: f64,
}

impl CircularArcSolution {
    /// Height of the optimal profile; see [`minimizer_height`].
    pub fn height(&self, x: f64) -> Result<f64> {
        minimizer_height(self, x)
    }

    /// Length of the arc, `2R·arccos β`.
    pub fn arc_length(&self) -> f64 {
        2.0 * self.radius * self.beta.acos()
    }
}

/// `θ − sin θ cos θ`, the normalized area of a circular segment with half
/// opening angle θ. Uses a series for small θ where the direct form cancels.
pub(crate) fn segment_shape(theta: f64) -> f64 {
    let x = 2.0 * theta;
    if x < 0.25 {
        // (x − sin x) / 2 = Σ_{k≥1} (−1)^{k+1} x^{2k+1} / (2·(2k+1)!)
        let x2 = x * x;
        let mut term = x * x2 / 6.0;
        let mut sum = 0.0;
        for k in 1..12 {
            sum += term;
            let m = (2 * k + 2) as f64;
            term *= -x2 / (m * (m + 1.0));
        }
        0.5 * sum
    } else {
        0.5 * (x - x.sin())
    }
}

/// `c(β) = arccos β − β√(1 − β²)`, with `R⁻² = c(β)` for unit area.
pub fn shape_constant(beta: AdhesionParam) -> Result<f64> {
    beta.graph_beta()?;
    Ok(segment_shape(contact_angle_of(beta)))
}

fn contact_angle_of(beta: AdhesionParam) -> f64 {
    beta.cosine_complement().atan2(beta.value())
}

fn check_area(area: f64) -> Result<f64> {
    if area.is_finite() && area > 0.0 {
        Ok(area)
    } else {
        Err(domain("area", area, "must be positive and finite"))
    }
}

pub fn closed_form_solution(beta: AdhesionParam, area: f64) -> Result<CircularArcSolution> {
    let b = beta.solvable_beta()?;
    let area = check_area(area)?;
    let radius = (area / shape_constant(beta)?).sqrt();
    let half_width = beta.cosine_complement() * radius;
    Ok(CircularArcSolution {
        beta: b,
        area,
        radius,
        half_width,
        lambda: 1.0 / radius,
        center_depth: b * radius,
        apex_height: (1.0 - b) * radius,
    })
}

/// `u(x) = √(R² − x²) − βR` for `|x| ≤ p`.
///
/// Evaluated as `(p − x)(p + x) / (√(R² − x²) + βR)` so the endpoints come
/// out as exact zeros.
pub fn minimizer_height(sol: &CircularArcSolution, x: f64) -> Result<f64> {
    let p = sol.half_width;
    let ax = x.abs();
    if ax.is_nan() || ax > p * (1.0 + CLAMP_SLACK) {
        return Err(domain("x", x, "outside the support [-p, p]"));
    }
    if ax >= p {
        return Ok(0.0);
    }
    let r = sol.radius;
    let root = ((r - ax) * (r + ax)).sqrt();
    let denom = root + sol.center_depth;
    Ok(((p - ax) * (p + ax) / denom).max(0.0))
}

/// Area of the circular segment of radius `R` over the chord `[-p, p]`,
/// `R² arcsin(p/R) − p√(R² − p²)`.
pub fn segment_area(radius: f64, half_width: f64) -> Result<f64> {
    let theta = segment_half_angle(radius, half_width)?;
    Ok(radius * radius * segment_shape(theta))
}

/// `arcsin(p/R)` with `p/R` clamped onto 1 within [`CLAMP_SLACK`].
fn segment_half_angle(radius: f64, half_width: f64) -> Result<f64> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(domain("radius", radius, "must be positive and finite"));
    }
    if half_width.is_nan() || half_width <= 0.0 {
        return Err(domain("half_width", half_width, "must be positive"));
    }
    if half_width > radius * (1.0 + CLAMP_SLACK) {
        return Err(domain("half_width", half_width, "exceeds the radius"));
    }
    let p = half_width.min(radius);
    let cos_part = ((radius - p) * (radius + p)).sqrt();
    Ok(p.atan2(cos_part))
}

/// `2√(A c(β))`, the least energy over all free supports.
pub fn minimal_energy(beta: AdhesionParam, area: f64) -> Result<f64> {
    beta.solvable_beta()?;
    let area = check_area(area)?;
    Ok(2.0 * (area * shape_constant(beta)?).sqrt())
}

/// Lower bound on the energy at a fixed half-width `p`:
/// `g(p) = (arccos β / √(1 − β²) − β) p + √(1 − β²) A / p`.
pub fn lower_bound_g(beta: AdhesionParam, area: f64, half_width: f64) -> Result<f64> {
    let b = beta.graph_beta()?;
    let area = check_area(area)?;
    let p = check_half_width(half_width)?;
    let s = beta.cosine_complement();
    Ok((contact_angle_of(beta) / s - b) * p + s * area / p)
}

/// Right-hand side of the sharp length inequality at half-width `p`:
/// `(arccos β / √(1 − β²) + β) p + √(1 − β²) A / p`. Unlike
/// [`lower_bound_g`] it accepts `A = 0`.
pub fn length_lower_bound(beta: AdhesionParam, area: f64, half_width: f64) -> Result<f64> {
    let b = beta.graph_beta()?;
    if !(area.is_finite() && area >= 0.0) {
        return Err(domain("area", area, "must be nonnegative and finite"));
    }
    let p = check_half_width(half_width)?;
    let s = beta.cosine_complement();
    Ok((contact_angle_of(beta) / s + b) * p + s * area / p)
}

fn check_half_width(p: f64) -> Result<f64> {
    if p.is_finite() && p > 0.0 {
        Ok(p)
    } else {
        Err(domain("half_width", p, "must be positive and finite"))
    }
}

/// `p₀ = √((1 − β²) A / c(β))`, the minimizer of [`lower_bound_g`].
pub fn optimal_half_width(beta: AdhesionParam, area: f64) -> Result<f64> {
    beta.solvable_beta()?;
    let area = check_area(area)?;
    let s = beta.cosine_complement();
    Ok((s * s * area / shape_constant(beta)?).sqrt())
}

/// Interior contact angle `arccos β` in radians.
pub fn endpoint_angle(beta: AdhesionParam) -> Result<f64> {
    beta.graph_beta()?;
    Ok(contact_angle_of(beta))
}

pub fn classify_beta(beta: AdhesionParam) -> BetaRegime {
    let b = beta.value();
    if b <= -1.0 {
        BetaRegime::DisjointBall
    } else if b < 0.0 {
        BetaRegime::NonGraphArc
    } else if b == 0.0 {
        BetaRegime::HalfDisk
    } else if b < 1.0 {
        BetaRegime::GraphArc
    } else {
        BetaRegime::UnboundedBelow
    }
}

/// Circular arc through `(±p, 0)` enclosing area `A` with the chord.
///
/// This is the length minimizer at a *fixed* half-width, used as the
/// reference for fixed-width solves. Only minor segments up to the
/// half-disk are graphs, so `A ≤ (π/2) p²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedChordArc {
    pub half_width: f64,
    pub area: f64,
    pub radius: f64,
    /// Half opening angle φ, with `R sin φ = p`.
    pub half_angle: f64,
    /// `R cos φ`.
    pub center_depth: f64,
}

impl FixedChordArc {
    pub fn length(&self) -> f64 {
        2.0 * self.radius * self.half_angle
    }

    /// `L − 2βp`.
    pub fn energy(&self, beta: f64) -> f64 {
        self.length() - 2.0 * beta * self.half_width
    }

    /// Profile height; zero outside the chord.
    pub fn height(&self, x: f64) -> f64 {
        let p = self.half_width;
        let ax = x.abs();
        if ax >= p {
            return 0.0;
        }
        let r = self.radius;
        let root = ((r - ax) * (r + ax)).sqrt();
        let denom = root + self.center_depth;
        if denom > 0.0 {
            ((p - ax) * (p + ax) / denom).max(0.0)
        } else {
            root
        }
    }
}

pub fn fixed_chord_arc(half_width: f64, area: f64) -> Result<FixedChordArc> {
    let p = check_half_width(half_width)?;
    let area = check_area(area)?;
    let limit = FRAC_PI_2 * p * p;
    if area > limit * (1.0 + CLAMP_SLACK) {
        return Err(Error::InfeasibleArea {
            area,
            half_width: p,
            limit,
        });
    }
    // A(φ) = p² (φ − sin φ cos φ) / sin² φ increases on (0, π/2].
    let target = area / (p * p);
    let normalized = |phi: f64| segment_shape(phi) / phi.sin().powi(2);
    let (mut lo, mut hi) = (0.0_f64, FRAC_PI_2);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if normalized(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let half_angle = 0.5 * (lo + hi);
    let radius = p / half_angle.sin();
    let center_depth = if half_angle >= FRAC_PI_2 {
        0.0
    } else {
        radius * half_angle.cos()
    };
    Ok(FixedChordArc {
        half_width: p,
        area,
        radius,
        half_angle,
        center_depth,
    })
}

/// Largest area a fixed chord of half-width `p` can carry as a graph.
pub fn half_disk_area(half_width: f64) -> f64 {
    0.5 * PI * half_width * half_width
}
