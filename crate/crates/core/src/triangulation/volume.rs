//! Hyperbolic volume through the Bloch–Wigner dilogarithm.

use std::sync::OnceLock;

use num_complex::Complex64;
use thiserror::Error;

use super::solver::{ShapeAssignment, SolveStatus};

/// Largest volume of an ideal tetrahedron, attained by the regular one.
pub const REGULAR_TETRAHEDRON_VOLUME: f64 = 1.014_941_606_409_653_6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VolumeError {
    #[error("volume needs a geometric solution, got {0:?}")]
    NotGeometric(SolveStatus),
}

const TERMS: usize = 40;

/// `B_n / (n+1)!`, the coefficients of `Li_2(z)` as a series in `-log(1-z)`.
fn bernoulli_coefficients() -> &'static [f64; TERMS] {
    static COEFFS: OnceLock<[f64; TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        // a_n = B_n / n! from Σ_{k≤m} a_k / (m+1-k)! = 0 for m ≥ 1
        let mut fact = [1.0f64; TERMS + 2];
        for i in 1..fact.len() {
            fact[i] = fact[i - 1] * i as f64;
        }
        let mut a = [0.0f64; TERMS];
        a[0] = 1.0;
        for m in 1..TERMS {
            let s: f64 = (0..m).map(|k| a[k] / fact[m + 1 - k]).sum();
            a[m] = -s;
        }
        std::array::from_fn(|n| a[n] / (n as f64 + 1.0))
    })
}

/// `Li_2(z)` for `|z| ≤ 1`, `Re z ≤ 1/2`.
fn dilog_reduced(z: Complex64) -> Complex64 {
    let u = -(Complex64::new(1.0, 0.0) - z).ln();
    let mut power = u;
    let mut sum = Complex64::new(0.0, 0.0);
    for &c in bernoulli_coefficients() {
        sum += power * c;
        power *= u;
    }
    sum
}

/// `D(z) = Im Li_2(z) + arg(1 - z)·log|z|`, the volume of the ideal
/// tetrahedron of shape `z` when `Im z > 0`.
pub fn bloch_wigner(z: Complex64) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    if z.im == 0.0 || !z.is_finite() || z.norm() == 0.0 {
        return 0.0;
    }
    // D is invariant under z ↦ 1 - 1/z, 1/(1-z) and changes sign under z ↦ 1/z, 1 - z, z/(z-1)
    let images = [
        (z, 1.0),
        (one - one / z, 1.0),
        (one / (one - z), 1.0),
        (one / z, -1.0),
        (one - z, -1.0),
        (z / (z - one), -1.0),
    ];
    let (w, sign) = images
        .iter()
        .copied()
        .find(|(w, _)| w.norm() <= 1.0 && w.re <= 0.5)
        .unwrap_or_else(|| images.iter().copied().min_by(|a, b| a.0.norm().total_cmp(&b.0.norm())).unwrap());
    sign * (dilog_reduced(w).im + (one - w).arg() * w.norm().ln())
}

pub fn volume_of_shapes(shapes: &[Complex64]) -> f64 {
    shapes.iter().map(|&z| bloch_wigner(z)).sum()
}

pub fn volume(s: &ShapeAssignment) -> Result<f64, VolumeError> {
    if s.status != SolveStatus::Geometric {
        return Err(VolumeError::NotGeometric(s.status));
    }
    Ok(volume_of_shapes(&s.shapes))
}
