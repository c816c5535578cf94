// Copyright 2026 the Sessile Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Batch property checks: the sharp length inequality over random curves,
//! and the closed-form gradient against central differences of the energy.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analytic::AdhesionParam;
use crate::curve::{random_admissible, GraphCurve};
use crate::error::Result;
use crate::solver::discrete_gradient;

/// Tolerance for a negative gap: rounding only, scaled by `1 + L`.
pub fn gap_tolerance(length: f64) -> f64 {
    1e-12 * (1.0 + length)
}

/// Per-sample seed; independent of evaluation order.
pub fn sample_seed(seed: u64, stream: u64, index: u64) -> u64 {
    // splitmix64 finalizer over the packed triple
    let mut z = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(stream.wrapping_mul(0xBF58_476D_1CE4_E5B9))
        .wrapping_add(index);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Shape of the random curves drawn by [`inequality_sweep`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub samples: usize,
    pub seed: u64,
    /// Grid sizes cycled through by sample index.
    pub grids: &'static [usize],
    pub half_width_range: (f64, f64),
    pub amplitude: f64,
}

impl SweepSpec {
    pub const DEFAULT_GRIDS: &'static [usize] = &[2, 3, 5, 8, 16, 33, 64, 128];

    pub fn new(samples: usize, seed: u64) -> Self {
        Self {
            samples,
            seed,
            grids: Self::DEFAULT_GRIDS,
            half_width_range: (0.05, 5.0),
            amplitude: 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub beta: f64,
    pub samples: usize,
    pub min_gap: f64,
    /// Smallest `gap / (1 + L)`.
    pub min_scaled_gap: f64,
    /// Sample indices whose gap fell below `−1e−12 (1 + L)`.
    pub failures: Vec<usize>,
    /// Energy fell below `2√(A c(β))` beyond rounding.
    pub energy_bound_failures: Vec<usize>,
}

impl SweepSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.energy_bound_failures.is_empty()
    }
}

/// Draws `spec.samples` curves for one β and records the inequality gaps.
/// Evaluation runs in parallel; results are reduced in sample order.
pub fn inequality_sweep(
    beta: AdhesionParam,
    stream: u64,
    spec: &SweepSpec,
) -> Result<SweepSummary> {
    let b = beta.graph_beta()?;
    let lower = crate::analytic::shape_constant(beta)?;
    let per_sample: Vec<(f64, f64, bool)> = (0..spec.samples)
        .into_par_iter()
        .map(|i| -> Result<(f64, f64, bool)> {
            let n = spec.grids[i % spec.grids.len()];
            let curve = random_admissible(
                sample_seed(spec.seed, stream, i as u64),
                spec.half_width_range,
                n,
                spec.amplitude,
            )?;
            let m = curve.metrics(beta)?;
            let energy_ok = m.energy >= 2.0 * (m.area * lower).sqrt() - gap_tolerance(m.length);
            Ok((m.gap, m.gap / (1.0 + m.length), energy_ok))
        })
        .collect::<Result<_>>()?;

    let mut summary = SweepSummary {
        beta: b,
        samples: spec.samples,
        min_gap: f64::INFINITY,
        min_scaled_gap: f64::INFINITY,
        failures: Vec::new(),
        energy_bound_failures: Vec::new(),
    };
    for (i, (gap, scaled, energy_ok)) in per_sample.into_iter().enumerate() {
        summary.min_gap = summary.min_gap.min(gap);
        summary.min_scaled_gap = summary.min_scaled_gap.min(scaled);
        if scaled < -1e-12 {
            summary.failures.push(i);
        }
        if !energy_ok {
            summary.energy_bound_failures.push(i);
        }
    }
    Ok(summary)
}

/// Central-difference derivative of an energy on raw heights.
///
/// Step `δ_i = step · (1 + |u_i|)`; the first and last heights stay fixed.
pub fn central_differences<F>(heights: &[f64], step: f64, energy: F) -> Vec<f64>
where
    F: Fn(&[f64]) -> f64,
{
    let n = heights.len() - 1;
    let mut work = heights.to_vec();
    (1..n)
        .map(|i| {
            let delta = step * (1.0 + heights[i].abs());
            work[i] = heights[i] + delta;
            let up = energy(&work);
            work[i] = heights[i] - delta;
            let down = energy(&work);
            work[i] = heights[i];
            (up - down) / (2.0 * delta)
        })
        .collect()
}

/// Augmented energy on unvalidated heights (negative entries allowed), for
/// differencing across the nonnegativity bound.
pub fn raw_augmented_energy(
    half_width: f64,
    heights: &[f64],
    beta: f64,
    lambda: f64,
    mu: f64,
    target_area: f64,
) -> f64 {
    let n = heights.len() - 1;
    let h = 2.0 * half_width / n as f64;
    let length: f64 = heights.windows(2).map(|w| h.hypot(w[1] - w[0])).sum();
    let area: f64 = 0.5 * h * heights.windows(2).map(|w| w[0] + w[1]).sum::<f64>();
    let r = area - target_area;
    length - 2.0 * beta * half_width - lambda * r + 0.5 * mu * r * r
}

/// Components smaller than this are compared on an absolute scale.
pub const GRADCHECK_FLOOR: f64 = 1e-2;

/// `|a − b| / max(|a|, |b|, floor)`.
pub fn relative_error(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(GRADCHECK_FLOOR)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradCheck {
    pub max_relative_error: f64,
    pub max_absolute_error: f64,
}

/// Compares [`discrete_gradient`] with central differences at one point.
pub fn gradient_check(
    curve: &GraphCurve,
    beta: AdhesionParam,
    lambda: f64,
    mu: f64,
    target_area: f64,
    step: f64,
) -> Result<GradCheck> {
    let b = beta.graph_beta()?;
    let analytic = discrete_gradient(curve, beta, lambda, mu, target_area)?;
    let p = curve.half_width();
    let numeric = central_differences(curve.heights(), step, |u| {
        raw_augmented_energy(p, u, b, lambda, mu, target_area)
    });
    let mut out = GradCheck {
        max_relative_error: 0.0,
        max_absolute_error: 0.0,
    };
    for (a, f) in analytic.iter().zip(&numeric) {
        out.max_relative_error = out.max_relative_error.max(relative_error(*a, *f));
        out.max_absolute_error = out.max_absolute_error.max((a - f).abs());
    }
    Ok(out)
}

/// Random gradient checks: `samples` curves with random multiplier,
/// penalty and target area for each β.
pub fn gradient_check_sweep(
    betas: &[AdhesionParam],
    samples: usize,
    seed: u64,
    grid: usize,
) -> Result<GradCheck> {
    let mut worst = GradCheck {
        max_relative_error: 0.0,
        max_absolute_error: 0.0,
    };
    for (stream, &beta) in betas.iter().enumerate() {
        for i in 0..samples {
            let s = sample_seed(seed, 1000 + stream as u64, i as u64);
            let curve = random_admissible(s, (0.2, 2.0), grid.max(3), 1.0)?;
            let mut rng = ChaCha8Rng::seed_from_u64(s ^ 0x5EED);
            let lambda = rng.random_range(-2.0..2.0);
            let mu = rng.random_range(0.0..10.0);
            let target = curve.area() * rng.random_range(0.5..1.5) + rng.random_range(0.0..0.1);
            let check = gradient_check(&curve, beta, lambda, mu, target, 1e-6)?;
            worst.max_relative_error = worst.max_relative_error.max(check.max_relative_error);
            worst.max_absolute_error = worst.max_absolute_error.max(check.max_absolute_error);
        }
    }
    Ok(worst)
}
