// Copyright 2026 the Sessile Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Nonnegative polyline graphs on a uniform grid over `[-p, p]`.
//!
//! A polyline is itself an admissible competitor, so its length and area
//! below are the exact integrals of the piecewise-linear interpolant and
//! the sharp inequality holds for it up to rounding only.

use std::io::{Read, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic::{self, AdhesionParam};
use crate::error::{Error, Result};
use crate::sum::symmetric_sum;

/// Polyline graph with heights `u_0..=u_n` at `x_i = -p + 2p·i/n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphCurve {
    half_width: f64,
    heights: Vec<f64>,
}

/// Length, area, energy and inequality gap of one curve at one β.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveMetrics {
    pub length: f64,
    pub area: f64,
    pub energy: f64,
    pub gap: f64,
}

impl GraphCurve {
    /// Validates `p > 0`, at least two intervals, exact zero endpoints and
    /// finite nonnegative heights.
    pub fn new(half_width: f64, heights: Vec<f64>) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidCurve(format!(
                "half-width must be positive, got {half_width}"
            )));
        }
        if heights.len() < 3 {
            return Err(Error::InvalidCurve(format!(
                "need at least 2 intervals, got {} nodes",
                heights.len()
            )));
        }
        if heights[0] != 0.0 || heights[heights.len() - 1] != 0.0 {
            return Err(Error::InvalidCurve("endpoint heights must be zero".into()));
        }
        if let Some((i, u)) = heights
            .iter()
            .enumerate()
            .find(|(_, u)| !(u.is_finite() && **u >= 0.0))
        {
            return Err(Error::InvalidCurve(format!("height {i} is {u}")));
        }
        Ok(Self {
            half_width,
            heights,
        })
    }

    /// Zero curve with `n` intervals.
    pub fn flat(half_width: f64, n: usize) -> Result<Self> {
        Self::new(half_width, vec![0.0; n + 1])
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn heights(&self) -> &[f64] {
        &self.heights
    }

    /// Number of intervals.
    pub fn intervals(&self) -> usize {
        self.heights.len() - 1
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.intervals() as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        grid_node(self.half_width, self.intervals(), i)
    }

    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.heights
            .iter()
            .enumerate()
            .map(move |(i, &u)| (self.node(i), u))
    }

    /// The mirror image `u_i ↦ u_{n-i}`.
    pub fn reversed(&self) -> Self {
        let mut heights = self.heights.clone();
        heights.reverse();
        Self {
            half_width: self.half_width,
            heights,
        }
    }

    /// `Σ √(h² + (u_{i+1} − u_i)²)`.
    pub fn length(&self) -> f64 {
        let h = self.spacing();
        let segments: Vec<f64> = self
            .heights
            .windows(2)
            .map(|w| h.hypot(w[1] - w[0]))
            .collect();
        symmetric_sum(&segments)
    }

    /// Trapezoid sum, exact for the polyline.
    pub fn area(&self) -> f64 {
        let h = self.spacing();
        let pairs: Vec<f64> = self.heights.windows(2).map(|w| w[0] + w[1]).collect();
        0.5 * h * symmetric_sum(&pairs)
    }

    /// `J = L − 2βp`.
    pub fn energy(&self, beta: AdhesionParam) -> Result<f64> {
        let b = beta.graph_beta()?;
        Ok(self.length() - 2.0 * b * self.half_width)
    }

    /// `L − [(arccos β/√(1−β²) + β) p + √(1−β²) A/p]`, nonnegative for
    /// every admissible curve and zero only on the matched circular arc.
    pub fn isoperimetric_gap(&self, beta: AdhesionParam) -> Result<f64> {
        let rhs = analytic::length_lower_bound(beta, self.area(), self.half_width)?;
        Ok(self.length() - rhs)
    }

    pub fn metrics(&self, beta: AdhesionParam) -> Result<CurveMetrics> {
        let length = self.length();
        let area = self.area();
        let b = beta.graph_beta()?;
        let rhs = analytic::length_lower_bound(beta, area, self.half_width)?;
        Ok(CurveMetrics {
            length,
            area,
            energy: length - 2.0 * b * self.half_width,
            gap: length - rhs,
        })
    }

    /// Outward unit normals `(−u', 1)/√(1 + u'²)` of the first and last
    /// segments, from one-sided slopes.
    pub fn endpoint_normals(&self) -> [[f64; 2]; 2] {
        let h = self.spacing();
        let n = self.intervals();
        let left = (self.heights[1] - self.heights[0]) / h;
        let right = (self.heights[n] - self.heights[n - 1]) / h;
        [unit_normal(left), unit_normal(right)]
    }

    /// Writes `x,u` rows with 17 significant digits.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(["x", "u"])?;
        for (x, u) in self.nodes() {
            w.write_record([fmt_f64(x), fmt_f64(u)])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }

    /// Reads an `x,u` table written by [`GraphCurve::write_csv`]. The nodes
    /// must form a uniform grid symmetric about zero.
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(input);
        let headers = r.headers()?.clone();
        if headers.len() != 2 || &headers[0] != "x" || &headers[1] != "u" {
            return Err(Error::Parse(format!(
                "expected header `x,u`, got {headers:?}"
            )));
        }
        let mut xs = Vec::new();
        let mut us = Vec::new();
        for (line, record) in r.records().enumerate() {
            let record = record?;
            if record.len() != 2 {
                return Err(Error::Parse(format!("row {}: expected 2 fields", line + 1)));
            }
            xs.push(parse_f64(&record[0], line)?);
            us.push(parse_f64(&record[1], line)?);
        }
        if xs.len() < 3 {
            return Err(Error::Parse("need at least 3 rows".into()));
        }
        let p = -xs[0];
        let n = xs.len() - 1;
        for (i, &x) in xs.iter().enumerate() {
            let want = grid_node(p, n, i);
            if (x - want).abs() > 1e-12 * p.abs().max(1.0) {
                return Err(Error::Parse(format!(
                    "row {}: x = {x} is off the uniform grid on [-{p}, {p}]",
                    i + 1
                )));
            }
        }
        Self::new(p, us)
    }
}

fn parse_f64(field: &str, line: usize) -> Result<f64> {
    field
        .parse::<f64>()
        .map_err(|e| Error::Parse(format!("row {}: `{field}`: {e}", line + 1)))
}

/// 17 significant digits; round-trips every `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub(crate) fn grid_node(half_width: f64, n: usize, i: usize) -> f64 {
    if 2 * i == n {
        0.0
    } else {
        -half_width + 2.0 * half_width * i as f64 / n as f64
    }
}

fn unit_normal(slope: f64) -> [f64; 2] {
    let s = slope.hypot(1.0);
    [-slope / s, 1.0 / s]
}

/// Samples the closed-form minimizer at `n + 1` grid nodes, with exact zero
/// endpoints.
pub fn sample_closed_form(beta: AdhesionParam, area: f64, n: usize) -> Result<GraphCurve> {
    if n < 2 {
        return Err(Error::InvalidCurve(format!("need n >= 2, got {n}")));
    }
    let sol = analytic::closed_form_solution(beta, area)?;
    let p = sol.half_width;
    let mut heights = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let u = if i == 0 || i == n {
            0.0
        } else {
            analytic::minimizer_height(&sol, grid_node(p, n, i))?
        };
        heights.push(u);
    }
    // Even profile; mirror to keep the samples exactly symmetric.
    for i in 0..n / 2 {
        heights[n - i] = heights[i];
    }
    GraphCurve::new(p, heights)
}

/// Extends a graph supported on `[a, b]` by zero to `[-P, P]`,
/// `P = max(|a|, |b|)`.
///
/// `heights` are samples at uniform spacing on `[a, b]`. Existing segments
/// are subdivided by the smallest integer factor that puts the padding on
/// the grid, so the polyline itself is unchanged: area is preserved exactly
/// and length grows by exactly the added flat pieces.
pub fn symmetrize_support(a: f64, b: f64, heights: &[f64]) -> Result<GraphCurve> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidSupport {
            a,
            b,
            reason: "need a < b",
        });
    }
    if heights.len() < 2 {
        return Err(Error::InvalidSupport {
            a,
            b,
            reason: "need at least two samples",
        });
    }
    if heights[0] != 0.0 || heights[heights.len() - 1] != 0.0 {
        return Err(Error::InvalidSupport {
            a,
            b,
            reason: "heights must vanish at a and b",
        });
    }
    let p = a.abs().max(b.abs());
    let m = heights.len() - 1;
    let h = (b - a) / m as f64;
    let left_pad = (a + p) / h;
    let right_pad = (p - b) / h;

    let on_grid = |v: f64| (v - v.round()).abs() <= 1e-9 * v.abs().max(1.0);
    let factor = (1..=64usize)
        .find(|&k| on_grid(left_pad * k as f64) && on_grid(right_pad * k as f64))
        .ok_or(Error::InvalidSupport {
            a,
            b,
            reason: "padding is not commensurate with the sample spacing",
        })?;

    let left = (left_pad * factor as f64).round() as usize;
    let right = (right_pad * factor as f64).round() as usize;
    let mut out = vec![0.0; left];
    for w in heights.windows(2) {
        for j in 0..factor {
            let t = j as f64 / factor as f64;
            out.push(w[0] + t * (w[1] - w[0]));
        }
    }
    out.push(0.0);
    out.extend(std::iter::repeat_n(0.0, right));
    GraphCurve::new(p, out)
}

/// Deterministic pseudo-random admissible curve for property testing.
///
/// The half-width is uniform on `p_range`; the profile family is drawn per
/// seed and includes near-zero heights, isolated spikes and steep walls.
/// All heights scale with `amplitude`.
pub fn random_admissible(
    seed: u64,
    p_range: (f64, f64),
    n: usize,
    amplitude: f64,
) -> Result<GraphCurve> {
    let (lo, hi) = p_range;
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
        return Err(Error::InvalidCurve(format!(
            "bad half-width range {p_range:?}"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidCurve(format!("need n >= 2, got {n}")));
    }
    if !(amplitude.is_finite() && amplitude >= 0.0) {
        return Err(Error::InvalidCurve(format!("bad amplitude {amplitude}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = if hi > lo {
        rng.random_range(lo..=hi)
    } else {
        lo
    };
    let mut u = vec![0.0; n + 1];
    let interior = 1..n;
    match rng.random_range(0..7u32) {
        // iid noise
        0 => interior.for_each(|i| u[i] = rng.random::<f64>()),
        // smooth positive bumps
        1 => {
            let modes = rng.random_range(1..=4usize);
            let coeffs: Vec<f64> = (0..modes).map(|_| rng.random_range(-0.5..1.0)).collect();
            for i in interior {
                let t = i as f64 / n as f64;
                let v: f64 = coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, c)| c * ((j + 1) as f64 * std::f64::consts::PI * t).sin())
                    .sum();
                u[i] = v.max(0.0);
            }
        }
        // isolated spike
        2 => {
            let k = rng.random_range(1..n);
            for i in interior {
                u[i] = 0.01 * rng.random::<f64>();
            }
            u[k] = 1.0;
        }
        // near-zero heights
        3 => {
            let scale = 10f64.powf(-rng.random_range(6.0..12.0));
            interior.for_each(|i| u[i] = scale * rng.random::<f64>());
        }
        // reflected Brownian bridge
        4 => {
            let mut walk = vec![0.0; n + 1];
            for i in 1..=n {
                walk[i] = walk[i - 1] + rng.random_range(-1.0..1.0);
            }
            let end = walk[n];
            for i in interior {
                u[i] = (walk[i] - end * i as f64 / n as f64).abs() / (n as f64).sqrt();
            }
        }
        // plateau at full amplitude with steep walls
        5 => interior.for_each(|i| u[i] = 0.9 + 0.1 * rng.random::<f64>()),
        // sparse: most heights exactly zero
        _ => interior.for_each(|i| {
            if rng.random_bool(0.2) {
                u[i] = rng.random::<f64>();
            }
        }),
    }
    for v in &mut u[1..n] {
        *v *= amplitude;
    }
    GraphCurve::new(p, u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn beta(b: f64) -> AdhesionParam {
        AdhesionParam::new(b).unwrap()
    }

    fn tent() -> GraphCurve {
        GraphCurve::new(1.0, vec![0.0, 1.0, 0.0]).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert!(GraphCurve::new(1.0, vec![0.0, 0.0]).is_err());
        assert!(GraphCurve::new(0.0, vec![0.0, 1.0, 0.0]).is_err());
        assert!(GraphCurve::new(1.0, vec![0.1, 1.0, 0.0]).is_err());
        assert!(GraphCurve::new(1.0, vec![0.0, -1e-300, 0.0]).is_err());
        assert!(GraphCurve::new(1.0, vec![0.0, f64::NAN, 0.0]).is_err());
    }

    #[test]
    fn flat_curve() {
        for n in [2, 3, 10, 101] {
            let c = GraphCurve::flat(1.0, n).unwrap();
            assert!((c.length() - 2.0).abs() < 1e-14);
            assert_eq!(c.area(), 0.0);
            assert!((c.energy(beta(0.5)).unwrap() - 1.0).abs() < 1e-14);
            assert_eq!(c.endpoint_normals(), [[0.0, 1.0], [0.0, 1.0]]);
        }
        let gap = GraphCurve::flat(1.0, 4)
            .unwrap()
            .isoperimetric_gap(beta(0.5))
            .unwrap();
        // 2 − (arccos(1/2)/√(3/4) + 1/2)
        assert!((gap - 0.290_800_423_843_854_8).abs() < 1e-14);
    }

    #[test]
    fn tent_values() {
        let c = tent();
        assert!((c.length() - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        assert!((c.area() - 1.0).abs() < 1e-15);
        assert!((c.energy(beta(0.5)).unwrap() - (2.0 * 2f64.sqrt() - 1.0)).abs() < 1e-15);
        // 2√2 − 2.5752249799405839
        let gap = c.isoperimetric_gap(beta(0.5)).unwrap();
        assert!((gap - 0.253_202_144_805_606_2).abs() < 1e-14);
        let [l, r] = c.endpoint_normals();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((l[1] - s).abs() < 1e-15 && (r[1] - s).abs() < 1e-15);
        assert!(l[0] < 0.0 && r[0] > 0.0);
    }

    #[test]
    fn sampled_closed_form() {
        let c = sample_closed_form(beta(0.5), 1.0, 2).unwrap();
        assert_eq!(c.heights()[0], 0.0);
        assert!((c.heights()[1] - 0.637_999_671_047_133_6).abs() < 1e-14);

        let c = sample_closed_form(beta(0.5), 1.0, 4096).unwrap();
        let hs = c.heights();
        assert!((0..=4096).all(|i| hs[i] == hs[4096 - i]));
        assert!((c.area() - 1.0).abs() < 2e-7);
        assert!((c.length() - 2.672_446_772_739_173).abs() < 5e-7);
        assert!((c.energy(beta(0.5)).unwrap() - 1.567_398_927_273_307).abs() < 1e-6);
        let gap = c.isoperimetric_gap(beta(0.5)).unwrap();
        assert!((0.0..1e-6).contains(&gap));
        for nu in c.endpoint_normals() {
            assert!((nu[1] - 0.5).abs() < 2e-3);
        }
    }

    #[test]
    fn metrics_agree_with_parts() {
        let c = random_admissible(3, (0.5, 2.0), 40, 1.0).unwrap();
        let m = c.metrics(beta(0.3)).unwrap();
        assert_eq!(m.length, c.length());
        assert_eq!(m.area, c.area());
        assert_eq!(m.energy, c.energy(beta(0.3)).unwrap());
        assert_eq!(m.gap, c.isoperimetric_gap(beta(0.3)).unwrap());
        assert!(m.length >= 2.0 * c.half_width());
    }

    #[test]
    fn reflection_bit_identical() {
        for seed in 0..50 {
            let c = random_admissible(seed, (0.1, 3.0), 3 + seed as usize, 2.0).unwrap();
            let r = c.reversed();
            assert_eq!(c.length().to_bits(), r.length().to_bits());
            assert_eq!(c.area().to_bits(), r.area().to_bits());
            let b = beta(0.7);
            assert_eq!(
                c.isoperimetric_gap(b).unwrap().to_bits(),
                r.isoperimetric_gap(b).unwrap().to_bits()
            );
        }
    }

    #[test]
    fn symmetrize_identity_and_padding() {
        let c = symmetrize_support(-1.0, 1.0, &[0.0, 1.0, 0.0]).unwrap();
        assert_eq!(c, tent());

        let c = symmetrize_support(0.0, 2.0, &[0.0, 1.0, 0.0]).unwrap();
        assert_eq!(c.half_width(), 2.0);
        assert_eq!(c.heights(), &[0.0, 0.0, 0.0, 1.0, 0.0]);
        assert_eq!(c.area(), 1.0);
        assert!((c.length() - (2.0 + 2.0 * 2f64.sqrt())).abs() < 1e-14);

        let c = symmetrize_support(-3.0, 1.0, &[0.0, 2.0, 0.5, 1.0, 0.0]).unwrap();
        assert_eq!(c.half_width(), 3.0);
        assert_eq!(c.intervals(), 6);
    }

    #[test]
    fn symmetrize_subdivides_when_needed() {
        // Spacing 1 on [0.5, 2.5]; padding 2 on the left, 0 on the right.
        let c = symmetrize_support(0.5, 2.5, &[0.0, 1.0, 0.0]).unwrap();
        assert_eq!(c.half_width(), 2.5);
        assert!((c.area() - 1.0).abs() < 1e-15);
        // Spacing 0.8 on [0.2, 1.8]: left pad 2.0/0.8 = 2.5 needs halving.
        let c = symmetrize_support(0.2, 1.8, &[0.0, 0.4, 0.0]).unwrap();
        assert_eq!(c.intervals(), 9);
        assert!((c.area() - 0.32).abs() < 1e-15);
    }

    #[test]
    fn symmetrize_errors() {
        assert!(symmetrize_support(1.0, 1.0, &[0.0, 0.0]).is_err());
        assert!(symmetrize_support(2.0, 1.0, &[0.0, 0.0]).is_err());
        assert!(symmetrize_support(0.0, 1.0, &[0.0, 1.0]).is_err());
        assert!(symmetrize_support(0.0, 1.0, &[0.0, 1.0, 0.0]).is_ok());
        assert!(symmetrize_support(0.0, std::f64::consts::PI, &[0.0, 1.0, 0.0]).is_ok());
        // Padding (1 + 1/π)/spacing is irrational.
        let a = std::f64::consts::FRAC_1_PI;
        assert!(symmetrize_support(a, 1.0, &[0.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn random_generator_contract() {
        let a = random_admissible(42, (0.5, 1.5), 30, 1.0).unwrap();
        let b = random_admissible(42, (0.5, 1.5), 30, 1.0).unwrap();
        assert_eq!(a, b);
        let flat = random_admissible(42, (0.5, 1.5), 30, 0.0).unwrap();
        assert!(flat.heights().iter().all(|&u| u == 0.0));
        assert!(random_admissible(1, (0.0, 1.0), 30, 1.0).is_err());
        assert!(random_admissible(1, (1.0, 2.0), 1, 1.0).is_err());
    }

    #[test]
    fn csv_round_trip_and_format() {
        let c = sample_closed_form(beta(0.5), 1.0, 8).unwrap();
        let text = c.to_csv_string();
        assert!(text.starts_with("x,u\n"));
        assert!(!text.contains('\r'));
        let second = text.lines().nth(1).unwrap();
        assert_eq!(
            second,
            format!("{},{}", fmt_f64(-c.half_width()), fmt_f64(0.0))
        );
        let back = GraphCurve::read_csv(text.as_bytes()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn csv_rejects_bad_input() {
        assert!(GraphCurve::read_csv("a,b\n-1,0\n0,1\n1,0\n".as_bytes()).is_err());
        assert!(GraphCurve::read_csv("x,u\n-1,0\n0.3,1\n1,0\n".as_bytes()).is_err());
        assert!(GraphCurve::read_csv("x,u\n-1,0\n0,1\n1,0.5\n".as_bytes()).is_err());
        assert!(GraphCurve::read_csv("x,u\n-1,0\n0,zz\n1,0\n".as_bytes()).is_err());
        assert!(GraphCurve::read_csv("x,u\n-1,0\n0,1\n1,0\n".as_bytes()).is_ok());
    }
}
