//! Newton's method on the log-form gluing equations.
//!
//! Unknowns are `w_t = log z_t`, started at `iπ/3`. Each step is the least
//! squares solution of `J δ = -F` and is halved until every `Im w_t` stays in
//! `(0, π)`, then halved further until the residual decreases.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::equations::{gluing_system, FillingInstruction, GluingSystem, GluingSystemError};
use super::IdealTriangulation;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverParams {
    pub tol: f64,
    pub max_iter: usize,
    /// Positivity tolerance on `Im z`.
    pub epsilon: f64,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams { tol: 1e-12, max_iter: 100, epsilon: 1e-9 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Geometric,
    Degenerate,
    NotConverged,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapeAssignment {
    pub shapes: Vec<Complex64>,
    pub status: SolveStatus,
    /// Largest absolute residual over all equations.
    pub residual: f64,
    pub iterations: usize,
    pub diagnostic: Option<String>,
}

impl ShapeAssignment {
    pub fn is_geometric(&self) -> bool {
        self.status == SolveStatus::Geometric
    }
}

/// Residuals `Σ a_t w_t + Σ b_t log(1 - z_t) - c·πi`, one per row.
pub fn residuals(system: &GluingSystem, w: &[Complex64]) -> Vec<Complex64> {
    let logs_one_minus: Vec<Complex64> = w.iter().map(|w| (Complex64::new(1.0, 0.0) - w.exp()).ln()).collect();
    system
        .rows
        .iter()
        .map(|row| {
            let (a, b, c) = row.log_form();
            let mut acc = Complex64::new(0.0, -(c as f64) * PI);
            for t in 0..w.len() {
                acc += w[t] * a[t] as f64 + logs_one_minus[t] * b[t] as f64;
            }
            acc
        })
        .collect()
}

/// `∂F_r / ∂w_t`.
pub fn jacobian(system: &GluingSystem, w: &[Complex64]) -> DMatrix<Complex64> {
    let n = w.len();
    let dlog_one_minus: Vec<Complex64> = w
        .iter()
        .map(|w| {
            let z = w.exp();
            -z / (Complex64::new(1.0, 0.0) - z)
        })
        .collect();
    let mut j = DMatrix::zeros(system.rows.len(), n);
    for (r, row) in system.rows.iter().enumerate() {
        let (a, b, _) = row.log_form();
        for t in 0..n {
            j[(r, t)] = Complex64::new(a[t] as f64, 0.0) + dlog_one_minus[t] * b[t] as f64;
        }
    }
    j
}

fn max_abs(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

fn sum_sq(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum()
}

fn in_domain(w: &[Complex64]) -> bool {
    w.iter().all(|w| w.im > 0.0 && w.im < PI && w.re.is_finite())
}

/// Shapes pinched against `0`, `1`, `∞` or the real line.
fn near_boundary(shapes: &[Complex64]) -> bool {
    const EDGE: f64 = 1e-6;
    shapes.iter().any(|&z| {
        let arg = z.arg();
        arg < EDGE || arg > PI - EDGE || z.norm() < EDGE || z.norm() > 1.0 / EDGE || (z - 1.0).norm() < EDGE
    })
}

pub fn solve_system(system: &GluingSystem, params: &SolverParams) -> ShapeAssignment {
    let n = system.num_tetrahedra;
    let mut w = vec![Complex64::new(0.0, PI / 3.0); n];
    let mut f = residuals(system, &w);
    let mut diagnostic = None;
    let mut iterations = 0;
    let mut converged = max_abs(&f) < params.tol;
    while !converged && iterations < params.max_iter {
        let j = jacobian(system, &w);
        if !j.iter().all(|x| x.is_finite()) || !f.iter().all(|x| x.is_finite()) {
            diagnostic = Some("non-finite Jacobian".into());
            break;
        }
        let svd = j.svd(true, true);
        let (smax, smin) = (svd.singular_values.max(), svd.singular_values.min());
        if !(smax > 0.0) || smin < 1e-13 * smax {
            diagnostic = Some(format!("singular Jacobian (condition {:.3e})", smax / smin));
            break;
        }
        let rhs = DVector::from_iterator(f.len(), f.iter().map(|x| -x));
        let delta = match svd.solve(&rhs, 0.0) {
            Ok(d) => d,
            Err(e) => {
                diagnostic = Some(format!("least squares step failed: {e}"));
                break;
            }
        };
        let mut scale = 1.0;
        let trial = |s: f64| -> Vec<Complex64> { w.iter().zip(delta.iter()).map(|(w, d)| w + d * s).collect() };
        let mut next = trial(scale);
        let mut halvings = 0;
        while !in_domain(&next) && halvings < 60 {
            scale *= 0.5;
            halvings += 1;
            next = trial(scale);
        }
        let old = sum_sq(&f);
        let mut f_next = residuals(system, &next);
        while sum_sq(&f_next) >= old && halvings < 60 {
            scale *= 0.5;
            halvings += 1;
            next = trial(scale);
            f_next = residuals(system, &next);
        }
        iterations += 1;
        if !in_domain(&next) || sum_sq(&f_next) >= old {
            diagnostic = Some("no step reduces the residual inside the upper half plane".into());
            break;
        }
        w = next;
        f = f_next;
        converged = max_abs(&f) < params.tol;
    }
    let shapes: Vec<Complex64> = w.iter().map(|w| w.exp()).collect();
    let residual = max_abs(&f);
    let status = if converged {
        if shapes.iter().all(|z| z.im > params.epsilon) {
            SolveStatus::Geometric
        } else {
            SolveStatus::Degenerate
        }
    } else if near_boundary(&shapes) {
        SolveStatus::Degenerate
    } else {
        if diagnostic.is_none() {
            diagnostic = Some(format!("no convergence after {} iterations", params.max_iter));
        }
        SolveStatus::NotConverged
    };
    ShapeAssignment { shapes, status, residual, iterations, diagnostic }
}

pub fn solve_geometric(
    tri: &IdealTriangulation,
    fillings: &[FillingInstruction],
    params: &SolverParams,
) -> Result<ShapeAssignment, GluingSystemError> {
    Ok(solve_system(&gluing_system(tri, fillings)?, params))
}

/// The solver output as `{status, shapes: [[re, im], ...], residual, volume}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverReport {
    pub status: SolveStatus,
    pub shapes: Vec<[f64; 2]>,
    pub residual: f64,
    pub volume: Option<f64>,
    pub iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

impl From<&ShapeAssignment> for SolverReport {
    fn from(s: &ShapeAssignment) -> Self {
        SolverReport {
            status: s.status,
            shapes: s.shapes.iter().map(|z| [z.re, z.im]).collect(),
            residual: s.residual,
            volume: super::volume::volume(s).ok(),
            iterations: s.iterations,
            diagnostic: s.diagnostic.clone(),
        }
    }
}
