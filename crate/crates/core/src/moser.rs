//! Moser's classification of Dehn surgery on torus knots.
//!
//! For `a/b`-surgery on `T(x,y)` put `σ = a - b·x·y`. Then `|σ| = 1` gives a
//! lens space with `|H_1| = |a|`, `σ = 0` gives `L(x,·) # L(y,·)`, and any
//! other value a Seifert fibered space over `S^2` with exceptional fibers of
//! multiplicities `x`, `|y|`, `|σ|`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{require_at_least, require_odd, ParamError};
use crate::knots::TorusKnot;
use crate::slopes::{factor_knot_slope, Slope};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TorusSurgeryVerdict {
    Lens {
        #[serde(with = "crate::bigint_json")]
        order: BigInt,
    },
    /// Connected sum of two lens spaces with the given homology orders.
    Reducible { summands: [u64; 2] },
    /// Fiber multiplicities, sorted.
    SeifertFibered {
        #[serde(with = "crate::bigint_json::array3")]
        fibers: [BigInt; 3],
    },
    /// `∞`-surgery, which returns `S^3`.
    TrivialFilling,
}

impl TorusSurgeryVerdict {
    pub fn is_lens(&self) -> bool {
        matches!(self, Self::Lens { .. })
    }
}

pub fn classify_torus_surgery(x: i64, y: i64, slope: &Slope) -> Result<TorusSurgeryVerdict, ParamError> {
    let knot = TorusKnot::new(x, y)?;
    if slope.is_infinity() {
        return Ok(TorusSurgeryVerdict::TrivialFilling);
    }
    let (a, b) = (slope.numerator(), slope.denominator());
    let sigma: BigInt = a - b * BigInt::from(knot.x()) * BigInt::from(knot.y());
    let (ux, uy) = (knot.x().unsigned_abs(), knot.y().unsigned_abs());
    Ok(if sigma.abs().is_one() {
        TorusSurgeryVerdict::Lens { order: a.abs() }
    } else if sigma.is_zero() {
        TorusSurgeryVerdict::Reducible { summands: [ux.min(uy), ux.max(uy)] }
    } else {
        let mut fibers = [BigInt::from(ux), BigInt::from(uy), sigma.abs()];
        fibers.sort();
        TorusSurgeryVerdict::SeifertFibered { fibers }
    })
}

/// The quotient of `K(r)` by the period-two symmetry of `P(-2,p,p)`, whose
/// factor knot is `T(2,p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "quotient", rename_all = "snake_case")]
pub enum FactorQuotient {
    /// Odd `r`: the quotient is the manifold `T(2,p)(r/2)`.
    Manifold(TorusSurgeryVerdict),
    /// Even `r`: the pair `(r, 2)` is not primitive and the core of the
    /// filling is a cone locus of order two, so the quotient is an orbifold.
    Orbifold { reduced_slope: Slope },
}

impl FactorQuotient {
    pub fn is_lens(&self) -> bool {
        matches!(self, Self::Manifold(v) if v.is_lens())
    }
}

pub fn factor_knot_quotient(p: i64, r: i64) -> Result<FactorQuotient, ParamError> {
    require_odd("p", p)?;
    require_at_least("p", p, 5)?;
    let slope = factor_knot_slope(r);
    if r % 2 == 0 {
        return Ok(FactorQuotient::Orbifold { reduced_slope: slope });
    }
    Ok(FactorQuotient::Manifold(classify_torus_surgery(2, p, &slope)?))
}

/// Integers `r` with `|r - 4p| <= window` whose factor-knot quotient is a
/// lens space; always `{4p - 1, 4p + 1}` once the window is nonempty.
pub fn lens_slopes_for_factor_knot(p: i64, window: i64) -> Result<Vec<i64>, ParamError> {
    require_odd("p", p)?;
    require_at_least("p", p, 5)?;
    let mut out = Vec::new();
    for r in 4 * p - window..=4 * p + window {
        if factor_knot_quotient(p, r)?.is_lens() {
            out.push(r);
        }
    }
    Ok(out)
}

/// Order of a lens verdict as a machine integer.
pub fn lens_order(v: &TorusSurgeryVerdict) -> Option<u64> {
    match v {
        TorusSurgeryVerdict::Lens { order } => order.to_u64(),
        _ => None,
    }
}
