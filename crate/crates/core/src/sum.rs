// Copyright 2026 the Sessile Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Order-canonical summation.
//!
//! Terms are first folded as `t[i] + t[m-1-i]`, then reduced pairwise. The
//! fold is symmetric under reversal and floating-point addition commutes, so
//! a reversed term list sums to the bit-identical result.

pub(crate) fn symmetric_sum(terms: &[f64]) -> f64 {
    let m = terms.len();
    let half = m / 2;
    let mut folded: Vec<f64> = (0..half).map(|i| terms[i] + terms[m - 1 - i]).collect();
    if m % 2 == 1 {
        folded.push(terms[half]);
    }
    pairwise(&folded)
}

fn pairwise(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        len if len <= 8 => xs.iter().sum(),
        len => {
            let mid = len / 2;
            pairwise(&xs[..mid]) + pairwise(&xs[mid..])
        }
    }
}
