//! Exact knot invariants used to rule out Seifert fibered surgeries on
//! `P(-2,p,p)`: the Gordon–Litherland signature of the branch knots
//! `K_{p±}`, slice-Bennequin bounds on the Rasmussen invariant, and torus
//! knot determinants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ParamError;
use crate::knots::{kp_diagram_stats, require_kp, KpSign, TorusKnot};

/// Gordon–Litherland form of a spanning surface together with its normal
/// Euler number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoeritzForm {
    pub matrix: Vec<Vec<i64>>,
    pub euler_number: i64,
}

impl GoeritzForm {
    /// `sign G + e/2`.
    pub fn knot_signature(&self) -> Result<i64, ParamError> {
        Ok(matrix_signature(&self.matrix)? + self.euler_number / 2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RasmussenBounds {
    pub lower: i64,
    pub upper: i64,
}

/// The form of the non-orientable surface `V_{p±}` with `b_1 = 3`.
pub fn goeritz_form_kp(p: i64, sign: KpSign) -> Result<GoeritzForm, ParamError> {
    require_kp(p)?;
    let e = sign.unit();
    Ok(GoeritzForm {
        matrix: vec![vec![4 * p - 4 + e, 0, 2], vec![0, 1, 1], vec![2, 1, 0]],
        euler_number: -8 * p + 16 - 2 * e,
    })
}

/// Signature of a symmetric integer matrix.
///
/// Congruence diagonalization over the rationals: a zero pivot is
/// replaced by a later nonzero diagonal entry, or, failing that, by adding
/// a row/column with a nonzero off-diagonal partner (which makes the pivot
/// `2 a_kj`). Rows that vanish entirely are null directions.
pub fn matrix_signature(m: &[Vec<i64>]) -> Result<i64, ParamError> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(ParamError::NotSquare);
    }
    for i in 0..n {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return Err(ParamError::NotSymmetric);
            }
        }
    }
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|row| row.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();

    let mut signature = 0i64;
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[k] += v;
                }
            } else {
                continue;
            }
        }
        let pivot = a[k][k].clone();
        signature += if pivot.is_positive() { 1 } else { -1 };
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for r in k..n {
                let v = &f * &a[r][k];
                a[r][i] -= v;
            }
        }
    }
    Ok(signature)
}

/// `σ(K_{p±})`, which equals `-4p + 9 ∓ 1`.
pub fn knot_signature_kp(p: i64, sign: KpSign) -> Result<i64, ParamError> {
    goeritz_form_kp(p, sign)?.knot_signature()
}

/// Slice-Bennequin bounds `w - O + 1 <= s <= w + O - 1` from the diagram
/// and its mirror.
pub fn rasmussen_bounds_kp(p: i64, sign: KpSign) -> Result<RasmussenBounds, ParamError> {
    let d = kp_diagram_stats(p, sign)?;
    Ok(RasmussenBounds { lower: d.writhe - d.seifert_circles + 1, upper: d.writhe + d.seifert_circles - 1 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MontesinosCheck {
    /// `s_lower + σ`, a lower bound for `s + σ`.
    pub witness: i64,
    pub excluded: bool,
}

/// `|s + σ| >= 4` rules out Montesinos knots.
pub fn montesinos_obstruction(p: i64, sign: KpSign) -> Result<MontesinosCheck, ParamError> {
    let witness = rasmussen_bounds_kp(p, sign)?.lower + knot_signature_kp(p, sign)?;
    Ok(MontesinosCheck { witness, excluded: witness >= 4 })
}

/// Dense integer polynomial, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
struct IntPoly(Vec<i64>);

impl IntPoly {
    /// `t^n - 1`.
    fn binomial(n: usize) -> Self {
        let mut c = vec![0; n + 1];
        c[0] = -1;
        c[n] = 1;
        IntPoly(c)
    }

    fn mul(&self, o: &IntPoly) -> IntPoly {
        let mut c = vec![0i64; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly(c)
    }

    /// Exact division by a monic polynomial; `None` if there is a remainder.
    fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.0.len() - 1;
        debug_assert_eq!(d.0[dd], 1);
        let mut r = self.0.clone();
        if r.len() <= dd {
            return None;
        }
        let mut q = vec![0i64; r.len() - dd];
        let support: Vec<(usize, i64)> = d.0.iter().copied().enumerate().filter(|&(_, c)| c != 0).collect();
        for i in (0..q.len()).rev() {
            let c = r[i + dd];
            q[i] = c;
            if c != 0 {
                for &(j, dj) in &support {
                    r[i + j] -= c * dj;
                }
            }
        }
        r.iter().all(|&x| x == 0).then_some(IntPoly(q))
    }

    fn eval(&self, t: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, c| acc * t + c)
    }
}

/// `Δ_{T(x,y)}(t) = (t^{xy} - 1)(t - 1) / ((t^x - 1)(t^y - 1))`, computed by
/// exact division; coefficients lowest degree first.
pub fn torus_alexander(x: i64, y: i64) -> Result<Vec<i64>, ParamError> {
    let k = TorusKnot::new(x, y)?;
    let (x, y) = (k.x() as usize, k.y().unsigned_abs() as usize);
    let num = IntPoly::binomial(x * y).mul(&IntPoly::binomial(1));
    let delta = num
        .div_exact(&IntPoly::binomial(x))
        .and_then(|q| q.div_exact(&IntPoly::binomial(y)))
        .expect("torus knot Alexander quotient is exact");
    Ok(delta.0)
}

/// `|Δ_{T(x,y)}(-1)|`.
pub fn torus_determinant(x: i64, y: i64) -> Result<u64, ParamError> {
    let delta = IntPoly(torus_alexander(x, y)?);
    Ok(delta.eval(-1).unsigned_abs())
}

/// `2g(T(x,y)) = (x-1)(y-1)`, equal to `s` for positive torus knots.
pub fn torus_two_genus(x: i64, y: i64) -> Result<u64, ParamError> {
    let k = TorusKnot::new(x, y)?;
    if k.y() < 0 {
        return Err(ParamError::NotTorusKnot { x, y });
    }
    Ok(((k.x() - 1) * (k.y() - 1)) as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HomologyOrder {
    Finite(u64),
    Infinite,
}

/// `|H_1(K(r))| = |r|` for integer surgery on a knot in `S^3`.
pub fn homology_order_of_surgery(r: i64) -> HomologyOrder {
    match r {
        0 => HomologyOrder::Infinite,
        r => HomologyOrder::Finite(r.unsigned_abs()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusCheck {
    pub det: u64,
    /// `s_lower > -σ`, so the knot is not alternating and `T(2, ·)` is out.
    pub non_alternating: bool,
    /// No braid-index-3 torus knot has this determinant.
    pub braid_three_excluded: bool,
    /// The only braid-index-4 candidate `T(4, det)`.
    pub candidate: (i64, i64),
    pub candidate_s: i64,
    pub s_upper: i64,
    pub excluded: bool,
}

/// Determinant values of `T(3, y)`; they depend on `y mod 6` only.
fn braid_three_determinants() -> Vec<u64> {
    let mut dets: Vec<u64> = [1, 2, 4, 5, 7, 8].iter().filter_map(|&y| torus_determinant(3, y).ok()).collect();
    dets.sort_unstable();
    dets.dedup();
    dets
}

/// Shows `K_{p±}` is not a torus knot: its determinant `4p ± 1` forces
/// `T(4, 4p ± 1)` (or its mirror), whose Rasmussen invariant lies outside
/// the slice-Bennequin window of `K_{p±}`.
pub fn torus_elimination(p: i64, sign: KpSign) -> Result<TorusCheck, ParamError> {
    let r = 4 * p + sign.unit();
    let det = match homology_order_of_surgery(r) {
        HomologyOrder::Finite(d) => d,
        HomologyOrder::Infinite => unreachable!("4p ± 1 is odd"),
    };
    let bounds = rasmussen_bounds_kp(p, sign)?;
    let sigma = knot_signature_kp(p, sign)?;
    let non_alternating = bounds.lower > -sigma;
    let braid_three_excluded = !braid_three_determinants().contains(&det);

    let y = det as i64;
    debug_assert_eq!(torus_determinant(4, y)?, det);
    let candidate_s = torus_two_genus(4, y)? as i64;
    // the mirror T(4,-y) has s = -candidate_s, below the lower bound
    let excluded = non_alternating && braid_three_excluded && bounds.upper < candidate_s && bounds.lower > -candidate_s;
    Ok(TorusCheck {
        det,
        non_alternating,
        braid_three_excluded,
        candidate: (4, y),
        candidate_s,
        s_upper: bounds.upper,
        excluded,
    })
}

/// One line of the invariant sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KpReport {
    pub p: i64,
    pub sign: KpSign,
    pub writhe: i64,
    pub goeritz_signature: i64,
    pub sigma: i64,
    pub s_lower: i64,
    pub s_upper: i64,
    pub det: u64,
    pub montesinos_witness: i64,
    pub montesinos_excluded: bool,
    pub torus_excluded: bool,
}

pub fn kp_report(p: i64, sign: KpSign) -> Result<KpReport, ParamError> {
    let form = goeritz_form_kp(p, sign)?;
    let bounds = rasmussen_bounds_kp(p, sign)?;
    let mont = montesinos_obstruction(p, sign)?;
    let torus = torus_elimination(p, sign)?;
    Ok(KpReport {
        p,
        sign,
        writhe: kp_diagram_stats(p, sign)?.writhe,
        goeritz_signature: matrix_signature(&form.matrix)?,
        sigma: form.knot_signature()?,
        s_lower: bounds.lower,
        s_upper: bounds.upper,
        det: torus.det,
        montesinos_witness: mont.witness,
        montesinos_excluded: mont.excluded,
        torus_excluded: torus.excluded,
    })
}
