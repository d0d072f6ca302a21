//! Edge, completeness and Dehn filling equations.
//!
//! A row counts corners per tetrahedron: `corners[t] = [n, n', n'']` stands
//! for `n·log z_t + n'·log z'_t + n''·log z''_t = rhs·πi`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{cusp, shape_slot, IdealTriangulation};
use crate::slopes::Slope;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FillingInstruction {
    Complete,
    Filled(Slope),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GluingSystemError {
    #[error("{got} filling instructions for {cusps} cusps")]
    FillingCount { cusps: usize, got: usize },
    #[error("slope {0} is too large for a filling equation")]
    SlopeOverflow(Slope),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum RowKind {
    Edge(usize),
    Meridian(usize),
    Longitude(usize),
    Filling(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingRow {
    pub kind: RowKind,
    pub corners: Vec<[i64; 3]>,
    /// Right-hand side as a multiple of `πi`.
    pub rhs: i64,
}

impl GluingRow {
    /// The row as `Σ a_t log z_t + Σ b_t log(1 - z_t) = c·πi` with principal
    /// logarithms for shapes in the upper half plane.
    pub fn log_form(&self) -> (Vec<i64>, Vec<i64>, i64) {
        // log z' = -log(1-z), log z'' = log(1-z) - log z + iπ
        let a = self.corners.iter().map(|k| k[0] - k[2]).collect();
        let b = self.corners.iter().map(|k| k[2] - k[1]).collect();
        let c = self.rhs - self.corners.iter().map(|k| k[2]).sum::<i64>();
        (a, b, c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingSystem {
    pub num_tetrahedra: usize,
    pub rows: Vec<GluingRow>,
}

impl GluingSystem {
    pub fn edge_rows(&self) -> impl Iterator<Item = &GluingRow> {
        self.rows.iter().filter(|r| matches!(r.kind, RowKind::Edge(_)))
    }
}

fn slope_coefficients(s: &Slope) -> Result<(i64, i64), GluingSystemError> {
    let conv = |x: &BigInt| x.to_i64().filter(|v| v.unsigned_abs() < 1 << 40);
    match (conv(s.numerator()), conv(s.denominator())) {
        (Some(p), Some(q)) => Ok((p, q)),
        _ => Err(GluingSystemError::SlopeOverflow(s.clone())),
    }
}

pub fn gluing_system(
    tri: &IdealTriangulation,
    fillings: &[FillingInstruction],
) -> Result<GluingSystem, GluingSystemError> {
    let n = tri.num_tetrahedra();
    if fillings.len() != tri.num_cusps() {
        return Err(GluingSystemError::FillingCount { cusps: tri.num_cusps(), got: fillings.len() });
    }
    let mut rows: Vec<GluingRow> =
        (0..tri.num_edges()).map(|e| GluingRow { kind: RowKind::Edge(e), corners: vec![[0; 3]; n], rhs: 2 }).collect();
    for t in 0..n {
        for a in 0..4 {
            for b in a + 1..4 {
                rows[tri.edge_class(t, a, b)].corners[t][shape_slot(a, b)] += 1;
            }
        }
    }
    for (c, instruction) in fillings.iter().enumerate() {
        let (m, l) = cusp::peripheral_rows(tri, c);
        match instruction {
            FillingInstruction::Complete => {
                rows.push(GluingRow { kind: RowKind::Meridian(c), corners: m, rhs: 0 });
                rows.push(GluingRow { kind: RowKind::Longitude(c), corners: l, rhs: 0 });
            }
            FillingInstruction::Filled(s) => {
                let (p, q) = slope_coefficients(s)?;
                let corners = m.iter().zip(&l).map(|(x, y)| std::array::from_fn(|k| p * x[k] + q * y[k])).collect();
                rows.push(GluingRow { kind: RowKind::Filling(c), corners, rhs: 2 });
            }
        }
    }
    Ok(GluingSystem { num_tetrahedra: n, rows })
}
