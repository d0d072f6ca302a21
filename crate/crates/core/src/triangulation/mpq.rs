//! Numerical check of the `M_{p,q}` classification on the magic manifold.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::census::{magic_manifold, MPQ_CUSPS};
use super::equations::{FillingInstruction, GluingSystemError};
use super::solver::{solve_geometric, SolveStatus, SolverParams};
use super::volume::volume;
use crate::error::ParamError;
use crate::magic::{classify_mpq, is_exceptional_filling, mpq_filling};
use crate::slopes::Slope;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MpqGeometryError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("M_{{{p},{q}}} filling ({fill0}, {fill1}): {source}")]
    System { p: i64, q: i64, fill0: Slope, fill1: Slope, source: GluingSystemError },
}

/// How the solver verdict relates to the filling table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    /// Geometric solution on a filling the table calls hyperbolic.
    Confirmed,
    /// No geometric solution on a filling the table calls exceptional.
    ConsistentNonGeometric,
    /// No geometric solution although the table says hyperbolic; not a contradiction.
    Inconclusive,
    /// Geometric solution on an exceptional filling.
    Contradiction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MpqGeometryReport {
    pub p: i64,
    pub q: i64,
    /// Slopes on cusps `MPQ_CUSPS.0` and `MPQ_CUSPS.1`.
    pub fillings: [Slope; 2],
    pub status: SolveStatus,
    pub volume: Option<f64>,
    pub residual: f64,
    pub iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
    /// `classify_mpq` says hyperbolic.
    pub classified_hyperbolic: bool,
    /// `is_exceptional_filling` on the same slopes.
    pub table_exceptional: bool,
    pub agreement: Agreement,
}

impl MpqGeometryReport {
    pub fn is_geometric(&self) -> bool {
        self.status == SolveStatus::Geometric
    }
}

pub fn verify_mpq_geometry(p: i64, q: i64, params: &SolverParams) -> Result<MpqGeometryReport, MpqGeometryError> {
    let filling = mpq_filling(p, q)?;
    let table_exceptional = is_exceptional_filling(&filling)?;
    let classified_hyperbolic = match classify_mpq(p, q) {
        Ok(piece) => piece.is_hyperbolic(),
        Err(ParamError::NonHyperbolic { .. }) => false,
        Err(e) => return Err(e.into()),
    };
    let [a, b] = [filling.slopes()[0].clone(), filling.slopes()[1].clone()];
    let tri = magic_manifold();
    let mut instructions = vec![FillingInstruction::Complete; tri.num_cusps()];
    instructions[MPQ_CUSPS.0] = FillingInstruction::Filled(a.clone());
    instructions[MPQ_CUSPS.1] = FillingInstruction::Filled(b.clone());
    let solution = solve_geometric(&tri, &instructions, params).map_err(|source| MpqGeometryError::System {
        p,
        q,
        fill0: a.clone(),
        fill1: b.clone(),
        source,
    })?;
    let geometric = solution.is_geometric();
    let agreement = match (geometric, classified_hyperbolic) {
        (true, true) => Agreement::Confirmed,
        (true, false) => Agreement::Contradiction,
        (false, false) => Agreement::ConsistentNonGeometric,
        (false, true) => Agreement::Inconclusive,
    };
    Ok(MpqGeometryReport {
        p,
        q,
        fillings: [a, b],
        status: solution.status,
        volume: volume(&solution).ok(),
        residual: solution.residual,
        iterations: solution.iterations,
        diagnostic: solution.diagnostic.clone(),
        classified_hyperbolic,
        table_exceptional,
        agreement,
    })
}
