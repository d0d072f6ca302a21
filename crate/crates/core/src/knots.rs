//! Pretzel and torus knots, diagram statistics of the branch knots
//! `K_{p±}`, and the surgery classifier for `P(-2,p,q)`.

use serde::{Deserialize, Serialize};

use crate::error::{require_at_least, require_odd, ParamError};
use crate::magic::{classify_mpq, MpqClass, MpqPiece, SeifertData};
use crate::slopes::Slope;

/// The pretzel knot `P(-2,p,q)`, stored with `p <= q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PretzelKnot {
    p: i64,
    q: i64,
}

impl PretzelKnot {
    /// Validates odd `p, q >= 3`; the pair is reordered so that `p <= q`.
    pub fn new(p: i64, q: i64) -> Result<Self, ParamError> {
        require_odd("p", p)?;
        require_odd("q", q)?;
        require_at_least("p", p, 3)?;
        require_at_least("q", q, 3)?;
        Ok(Self { p: p.min(q), q: p.max(q) })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_hyperbolic(&self) -> bool {
        !(self.p == 3 && (self.q == 3 || self.q == 5))
    }

    pub fn surface_slope(&self) -> i64 {
        2 * (self.p + self.q)
    }
}

/// The torus knot `T(x,y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusKnot {
    x: i64,
    y: i64,
}

impl TorusKnot {
    pub fn new(x: i64, y: i64) -> Result<Self, ParamError> {
        if x < 2 || y.abs() < 2 || num_integer::gcd(x, y.abs()) != 1 {
            return Err(ParamError::NotTorusKnot { x, y });
        }
        Ok(Self { x, y })
    }

    pub fn x(&self) -> i64 {
        self.x
    }

    pub fn y(&self) -> i64 {
        self.y
    }
}

pub fn is_hyperbolic_pretzel(p: i64, q: i64) -> Result<bool, ParamError> {
    Ok(PretzelKnot::new(p, q)?.is_hyperbolic())
}

/// The toroidal slope `2(p+q)`.
pub fn surface_slope(p: i64, q: i64) -> Result<i64, ParamError> {
    Ok(PretzelKnot::new(p, q)?.surface_slope())
}

/// Which of the two branch knots `K_{p+}`, `K_{p-}` (surgery slope `4p ± 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KpSign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl KpSign {
    pub const BOTH: [KpSign; 2] = [KpSign::Plus, KpSign::Minus];

    /// `+1` or `-1`.
    pub fn unit(self) -> i64 {
        match self {
            KpSign::Plus => 1,
            KpSign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            KpSign::Plus => '+',
            KpSign::Minus => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KpDiagramStats {
    pub writhe: i64,
    pub seifert_circles: i64,
    pub braid_index_upper: i64,
}

pub(crate) fn require_kp(p: i64) -> Result<(), ParamError> {
    require_odd("p", p)?;
    require_at_least("p", p, 5)
}

/// Writhe and Seifert circle count of the four-braid diagram of `K_{p±}`.
///
/// The diagram contributes `4p - 8` and `2p - 4` crossings from the two
/// twist regions plus one clasp of sign `±`.
pub fn kp_diagram_stats(p: i64, sign: KpSign) -> Result<KpDiagramStats, ParamError> {
    require_kp(p)?;
    Ok(KpDiagramStats { writhe: (4 * p - 8) + (2 * p - 4) + sign.unit(), seifert_circles: 4, braid_index_upper: 4 })
}

/// A piece of the JSJ decomposition of a toroidal surgery.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "piece", rename_all = "snake_case")]
pub enum JsjPiece {
    TwistedIBundleOverKleinBottle,
    MagicFilling(MpqPiece),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Hyperbolic,
    Toroidal,
    SeifertFibered,
    Reducible,
    Lens,
    OutOfScope,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ClassificationRecord", try_from = "ClassificationRecord")]
pub enum SurgeryClassification {
    Hyperbolic,
    Toroidal { pieces: Vec<JsjPiece> },
    SeifertFibered(SeifertData),
    Reducible,
    Lens { order: u64 },
    OutOfScope { reason: String },
}

impl SurgeryClassification {
    pub fn verdict(&self) -> Verdict {
        match self {
            Self::Hyperbolic => Verdict::Hyperbolic,
            Self::Toroidal { .. } => Verdict::Toroidal,
            Self::SeifertFibered(_) => Verdict::SeifertFibered,
            Self::Reducible => Verdict::Reducible,
            Self::Lens { .. } => Verdict::Lens,
            Self::OutOfScope { .. } => Verdict::OutOfScope,
        }
    }

    /// The non-`I`-bundle JSJ piece of a toroidal verdict.
    pub fn magic_piece(&self) -> Option<&MpqPiece> {
        match self {
            Self::Toroidal { pieces } => pieces.iter().find_map(|p| match p {
                JsjPiece::MagicFilling(m) => Some(m),
                _ => None,
            }),
            _ => None,
        }
    }
}

/// Flat JSON form: `{verdict, pieces, seifert_data, reason}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub verdict: Verdict,
    pub pieces: Vec<JsjPiece>,
    pub seifert_data: Option<SeifertData>,
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lens_order: Option<u64>,
}

impl From<SurgeryClassification> for ClassificationRecord {
    fn from(c: SurgeryClassification) -> Self {
        let mut rec = ClassificationRecord {
            verdict: c.verdict(),
            pieces: Vec::new(),
            seifert_data: None,
            reason: None,
            lens_order: None,
        };
        match c {
            SurgeryClassification::Toroidal { pieces } => rec.pieces = pieces,
            SurgeryClassification::SeifertFibered(d) => rec.seifert_data = Some(d),
            SurgeryClassification::OutOfScope { reason } => rec.reason = Some(reason),
            SurgeryClassification::Lens { order } => rec.lens_order = Some(order),
            SurgeryClassification::Hyperbolic | SurgeryClassification::Reducible => {}
        }
        rec
    }
}

impl TryFrom<ClassificationRecord> for SurgeryClassification {
    type Error = String;

    fn try_from(r: ClassificationRecord) -> Result<Self, Self::Error> {
        Ok(match r.verdict {
            Verdict::Hyperbolic => Self::Hyperbolic,
            Verdict::Reducible => Self::Reducible,
            Verdict::Toroidal => Self::Toroidal { pieces: r.pieces },
            Verdict::SeifertFibered => Self::SeifertFibered(r.seifert_data.ok_or("missing seifert_data")?),
            Verdict::Lens => Self::Lens { order: r.lens_order.ok_or("missing lens_order")? },
            Verdict::OutOfScope => Self::OutOfScope { reason: r.reason.ok_or("missing reason")? },
        })
    }
}

pub const OUT_OF_SCOPE_REASON: &str = "Seifert/hyperbolic dichotomy not established for p != q";

/// Classifies `r`-surgery on the hyperbolic pretzel knot `P(-2,p,q)`.
///
/// The surface slope `2(p+q)` is the unique toroidal slope; the result
/// splits into a twisted `I`-bundle over the Klein bottle and the magic
/// filling `M_{p,q}`. For `p = q >= 5` every other slope is hyperbolic.
pub fn classify_surgery(p: i64, q: i64, r: &Slope) -> Result<SurgeryClassification, ParamError> {
    let knot = PretzelKnot::new(p, q)?;
    if !knot.is_hyperbolic() {
        return Err(ParamError::NonHyperbolic { p: knot.p(), q: knot.q() });
    }
    if *r == Slope::integer(knot.surface_slope()) {
        let piece = classify_mpq(knot.p(), knot.q())?;
        return Ok(SurgeryClassification::Toroidal {
            pieces: vec![JsjPiece::TwistedIBundleOverKleinBottle, JsjPiece::MagicFilling(piece)],
        });
    }
    if r.is_infinity() {
        // the trivial filling gives back S^3
        return Ok(SurgeryClassification::Lens { order: 1 });
    }
    if knot.p() == knot.q() {
        return Ok(SurgeryClassification::Hyperbolic);
    }
    Ok(SurgeryClassification::OutOfScope { reason: OUT_OF_SCOPE_REASON.to_string() })
}

/// Seifert data of the magic piece when it is Seifert fibered.
pub fn toroidal_seifert_piece(c: &SurgeryClassification) -> Option<&SeifertData> {
    match &c.magic_piece()?.classification {
        MpqClass::SeifertFibered(d) => Some(d),
        MpqClass::Hyperbolic { .. } => None,
    }
}
