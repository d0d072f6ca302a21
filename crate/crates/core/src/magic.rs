//! Dehn fillings of the magic manifold `N`, the exterior of the
//! three-component chain link.
//!
//! Only the two-cusp exceptional table is encoded: `N(a/b, c/d)` is
//! hyperbolic unless one slope lies in `{∞, -3, -2, -1, 0}` or the
//! unordered pair is one of `(1,1)`, `(-4,-1/2)`, `(-3/2,-5/2)`.

use serde::{Deserialize, Serialize};

use crate::error::{require_at_least, require_odd, ParamError};
use crate::slopes::Slope;

/// Filling slopes on up to three cusps of `N`, kept as a sorted multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Slope>", into = "Vec<Slope>")]
pub struct MagicFilling {
    slopes: Vec<Slope>,
}

impl MagicFilling {
    pub fn new(mut slopes: Vec<Slope>) -> Result<Self, ParamError> {
        if slopes.len() > 3 {
            return Err(ParamError::Arity { expected: 3, got: slopes.len() });
        }
        slopes.sort();
        Ok(Self { slopes })
    }

    pub fn pair(a: Slope, b: Slope) -> Self {
        Self::new(vec![a, b]).expect("two slopes")
    }

    pub fn slopes(&self) -> &[Slope] {
        &self.slopes
    }
}

impl TryFrom<Vec<Slope>> for MagicFilling {
    type Error = ParamError;

    fn try_from(v: Vec<Slope>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<MagicFilling> for Vec<Slope> {
    fn from(f: MagicFilling) -> Self {
        f.slopes
    }
}

/// Seifert invariants `(base, (a1,b1), (a2,b2), ...)` as quoted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertData {
    pub base: String,
    pub fibers: Vec<(i64, i64)>,
}

impl std::fmt::Display for SeifertData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}", self.base)?;
        for (a, b) in &self.fibers {
            write!(f, ",({a},{b})")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MpqClass {
    Hyperbolic {
        #[serde(skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        annotation: Option<String>,
    },
    SeifertFibered(SeifertData),
}

/// The non-`I`-bundle JSJ piece `M_{p,q} = N(-(k+1)/k, -(l+1)/l)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MpqPiece {
    pub k: i64,
    pub l: i64,
    pub filling: MagicFilling,
    pub classification: MpqClass,
}

impl MpqPiece {
    pub fn p(&self) -> i64 {
        2 * self.k + 1
    }

    pub fn q(&self) -> i64 {
        2 * self.l + 1
    }

    pub fn is_hyperbolic(&self) -> bool {
        matches!(self.classification, MpqClass::Hyperbolic { .. })
    }
}

fn single_exceptional() -> [Slope; 5] {
    [Slope::infinity(), Slope::new(-3, 1), Slope::new(-2, 1), Slope::new(-1, 1), Slope::new(0, 1)]
}

fn pair_exceptional() -> [MagicFilling; 3] {
    [
        MagicFilling::pair(Slope::new(1, 1), Slope::new(1, 1)),
        MagicFilling::pair(Slope::new(-4, 1), Slope::new(-1, 2)),
        MagicFilling::pair(Slope::new(-3, 2), Slope::new(-5, 2)),
    ]
}

/// Whether `N(a/b, c/d)` is non-hyperbolic according to the two-cusp table.
pub fn is_exceptional_filling(f: &MagicFilling) -> Result<bool, ParamError> {
    if f.slopes.len() != 2 {
        return Err(ParamError::Arity { expected: 2, got: f.slopes.len() });
    }
    let singles = single_exceptional();
    if f.slopes.iter().any(|s| singles.contains(s)) {
        return Ok(true);
    }
    Ok(pair_exceptional().contains(f))
}

fn check_mpq(p: i64, q: i64) -> Result<(i64, i64), ParamError> {
    require_odd("p", p)?;
    require_odd("q", q)?;
    require_at_least("p", p, 3)?;
    require_at_least("q", q, p)?;
    Ok(((p - 1) / 2, (q - 1) / 2))
}

/// `-(k+1)/k`, the image of the twist slope `-1/k`.
pub fn twist_slope(k: i64) -> Slope {
    Slope::new(-(k + 1), k)
}

/// The filling `{-(k+1)/k, -(l+1)/l}` with `p = 2k+1`, `q = 2l+1`.
pub fn mpq_filling(p: i64, q: i64) -> Result<MagicFilling, ParamError> {
    let (k, l) = check_mpq(p, q)?;
    Ok(MagicFilling::pair(twist_slope(k), twist_slope(l)))
}

pub fn classify_mpq(p: i64, q: i64) -> Result<MpqPiece, ParamError> {
    let (k, l) = check_mpq(p, q)?;
    if p == 3 && (q == 3 || q == 5) {
        return Err(ParamError::NonHyperbolic { p, q });
    }
    let classification = if k == 1 {
        MpqClass::SeifertFibered(SeifertData { base: "D".into(), fibers: vec![(3, 1), (l - 1, l)] })
    } else {
        let name = (p == 5 && q == 5).then(|| "figure-8 knot sister".to_string());
        let annotation = (p == 5).then(|| "Whitehead sister parent".to_string());
        MpqClass::Hyperbolic { name, annotation }
    };
    Ok(MpqPiece { k, l, filling: mpq_filling(p, q)?, classification })
}
