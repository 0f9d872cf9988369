//! Complete invertibility, `0 ∉ F(C)`, through rotated Hermitian parts.
//!
//! `F(C)` is convex, so `0 ∉ F(C)` iff some rotation `e^{iθ} C` has a PD
//! Hermitian part. The margin `m(θ) = λ_min((e^{iθ}C + e^{-iθ}C*)/2)` is
//! scanned on a uniform grid and refined by golden-section search around
//! every grid-local maximum.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::matcore::{check_square, spectral_norm, CMat, HermitianMatrix};

pub const GRID_POINTS: usize = 720;
const ANGLE_RESOLUTION: f64 = 1e-12;
/// Relative tolerance (against `‖C‖`) under which a margin counts as zero.
pub const BOUNDARY_RTOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FovCertificate {
    pub contains_zero: bool,
    /// `max_θ m(θ)`; positive exactly when `0 ∉ F(C)`.
    pub margin: f64,
    /// Angle in `[0, 2π)` attaining the margin.
    pub theta_star: f64,
    pub grid_points: usize,
}

/// `m(θ)`.
pub fn rotated_margin(c: &CMat, theta: f64) -> Result<f64> {
    let rot = c * Complex64::from_polar(1.0, theta);
    let ev = HermitianMatrix::hermitize(&rot).eigenvalues()?;
    Ok(ev[0])
}

fn golden_max(c: &CMat, mut lo: f64, mut hi: f64) -> Result<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = rotated_margin(c, x1)?;
    let mut f2 = rotated_margin(c, x2)?;
    while hi - lo > ANGLE_RESOLUTION {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = rotated_margin(c, x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = rotated_margin(c, x1)?;
        }
    }
    let mid = 0.5 * (lo + hi);
    Ok((mid, rotated_margin(c, mid)?))
}

pub fn is_completely_invertible(c: &CMat) -> Result<FovCertificate> {
    check_square(c)?;
    let step = 2.0 * PI / GRID_POINTS as f64;
    let grid: Vec<f64> = (0..GRID_POINTS)
        .map(|i| rotated_margin(c, i as f64 * step))
        .collect::<Result<_>>()?;

    // Ties go to the smallest angle.
    let mut best_theta = 0.0;
    let mut best = f64::NEG_INFINITY;
    for (i, &m) in grid.iter().enumerate() {
        if m > best {
            best = m;
            best_theta = i as f64 * step;
        }
    }
    for i in 0..GRID_POINTS {
        let prev = grid[(i + GRID_POINTS - 1) % GRID_POINTS];
        let next = grid[(i + 1) % GRID_POINTS];
        if grid[i] >= prev && grid[i] >= next {
            let centre = i as f64 * step;
            let (theta, m) = golden_max(c, centre - step, centre + step)?;
            if m > best {
                best = m;
                best_theta = theta.rem_euclid(2.0 * PI);
            }
        }
    }

    let scale = spectral_norm(c);
    Ok(FovCertificate {
        contains_zero: best <= BOUNDARY_RTOL * scale,
        margin: best,
        theta_star: best_theta,
        grid_points: GRID_POINTS,
    })
}
