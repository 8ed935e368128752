//! Box-counting dimension of a sampled curve.

use crate::error::{HarosError, Result};

use super::entropy::EntropySample;

pub const MIN_SAMPLES: usize = 10_000;
pub const MIN_SCALES: usize = 4;

/// Boxes of side `2^-j` needed to cover the curve through `points`, sorted
/// by abscissa and normalised to the unit square. Each column covers the
/// range of its samples together with the last sample of the previous
/// column, so steep segments between columns are counted.
fn boxes_at(points: &[(f64, f64)], j: u32) -> u64 {
    let cells = (1u64 << j) as f64;
    let cell = |v: f64| ((v * cells).floor() as i64).clamp(0, cells as i64 - 1);
    let mut total = 0u64;
    let mut i = 0;
    let mut prev: Option<f64> = None;
    while i < points.len() {
        let col = cell(points[i].0);
        let (mut lo, mut hi) = (points[i].1, points[i].1);
        if let Some(p) = prev {
            lo = lo.min(p);
            hi = hi.max(p);
        }
        while i < points.len() && cell(points[i].0) == col {
            lo = lo.min(points[i].1);
            hi = hi.max(points[i].1);
            prev = Some(points[i].1);
            i += 1;
        }
        total += (cell(hi) - cell(lo) + 1) as u64;
    }
    total
}

/// Least-squares slope of `ln N(ε)` against `ln(1/ε)` over `ε = 2^-j` for
/// each `j` in `scales`, on the `S` curve of `samples`.
pub fn box_counting_dimension(samples: &[EntropySample], scales: &[u32]) -> Result<f64> {
    let points: Vec<(f64, f64)> = samples.iter().map(|s| (s.x_float, s.s)).collect();
    curve_dimension(&points, scales)
}

/// As [`box_counting_dimension`] for raw `(x, y)` points sorted by `x`.
pub fn curve_dimension(points: &[(f64, f64)], scales: &[u32]) -> Result<f64> {
    if points.len() < MIN_SAMPLES {
        return Err(HarosError::InsufficientData(format!(
            "{} samples, at least {MIN_SAMPLES} needed",
            points.len()
        )));
    }
    if scales.len() < MIN_SCALES {
        return Err(HarosError::InsufficientData(format!(
            "{} scales, at least {MIN_SCALES} needed",
            scales.len()
        )));
    }
    let (x0, x1) = (points[0].0, points[points.len() - 1].0);
    let (y0, y1) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.1), b.max(p.1)));
    let xs = (x1 - x0).max(f64::MIN_POSITIVE);
    let ys = y1 - y0;
    let norm: Vec<(f64, f64)> = points
        .iter()
        .map(|&(x, y)| ((x - x0) / xs, if ys > 0.0 { (y - y0) / ys } else { 0.5 }))
        .collect();
    let data: Vec<(f64, f64)> = scales
        .iter()
        .map(|&j| {
            let n = boxes_at(&norm, j) as f64;
            (j as f64 * std::f64::consts::LN_2, n.ln())
        })
        .collect();
    Ok(slope(&data))
}

fn slope(data: &[(f64, f64)]) -> f64 {
    let n = data.len() as f64;
    let mx = data.iter().map(|p| p.0).sum::<f64>() / n;
    let my = data.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = data.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = data.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}
