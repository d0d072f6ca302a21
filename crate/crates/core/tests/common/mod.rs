//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use surgerylab::triangulation::solver::{jacobian, residuals};
use surgerylab::triangulation::{GluingSystem, RowKind};

/// `Λ(θ) = Σ sin(2nθ) / (2n²)`, truncated after `terms` terms. The tail is
/// `O(1/terms²)` away from multiples of `π`.
pub fn lobachevsky(theta: f64, terms: usize) -> f64 {
    (1..=terms).map(|n| (2.0 * n as f64 * theta).sin() / (2.0 * (n * n) as f64)).sum()
}

/// Volume of the ideal tetrahedron of shape `z` as `Λ(α) + Λ(β) + Λ(γ)`
/// over its dihedral angles.
pub fn tetrahedron_volume_by_angles(z: Complex64, terms: usize) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    let alpha = z.arg();
    let beta = (one / (one - z)).arg();
    let gamma = PI - alpha - beta;
    lobachevsky(alpha, terms) + lobachevsky(beta, terms) + lobachevsky(gamma, terms)
}

/// Signed volume `Σ D(z_t)` with `D` evaluated from the Lobachevsky form.
pub fn signed_volume_by_angles(shapes: &[Complex64], terms: usize) -> f64 {
    shapes
        .iter()
        .map(|&z| {
            if z.im >= 0.0 {
                tetrahedron_volume_by_angles(z, terms)
            } else {
                -tetrahedron_volume_by_angles(z.conj(), terms)
            }
        })
        .sum()
}

fn newton_step(system: &GluingSystem, w: &[Complex64], shift: &[Complex64]) -> Option<Vec<Complex64>> {
    let f: Vec<Complex64> = residuals(system, w).iter().zip(shift).map(|(r, s)| r + s).collect();
    let j: DMatrix<Complex64> = jacobian(system, w);
    let rhs = DVector::from_iterator(f.len(), f.iter().map(|x| -x));
    let delta = j.svd(true, true).solve(&rhs, 1e-14).ok()?;
    // short steps keep every log on the branch it started on
    let longest = delta.iter().map(|d| d.norm()).fold(0.0, f64::max);
    let scale = if longest > 0.25 { 0.25 / longest } else { 1.0 };
    Some(w.iter().zip(delta.iter()).map(|(w, d)| w + d * scale).collect())
}

/// Deforms a solution of the complete system into one of `system` by
/// ramping the filling right-hand sides from `0` to `2πi`, with plain
/// Newton steps and no positivity constraint. The ramp parameter follows
/// `s + i·detour·s(1-s)` so the path can go around singular points. Returns the shapes and the
/// final residual.
pub fn unconstrained_continuation(
    system: &GluingSystem,
    complete_shapes: &[Complex64],
    steps: usize,
    detour: f64,
) -> (Vec<Complex64>, f64) {
    let mut w: Vec<Complex64> = complete_shapes.iter().map(|z| z.ln()).collect();
    for k in 0..=steps {
        let s = k as f64 / steps as f64;
        let t = Complex64::new(s, detour * s * (1.0 - s));
        let shift: Vec<Complex64> = system
            .rows
            .iter()
            .map(|r| match r.kind {
                RowKind::Filling(_) => Complex64::new(0.0, 2.0 * PI) * (1.0 - t),
                _ => Complex64::new(0.0, 0.0),
            })
            .collect();
        for _ in 0..if k == steps { 60 } else { 12 } {
            match newton_step(system, &w, &shift) {
                Some(next) if next.iter().all(|x| x.is_finite()) => w = next,
                _ => break,
            }
        }
    }
    let residual = residuals(system, &w).iter().map(|x| x.norm()).fold(0.0, f64::max);
    (w.iter().map(|w| w.exp()).collect(), residual)
}
