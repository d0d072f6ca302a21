//! Surgery slopes as points of `Q ∪ {∞}`.
//!
//! A slope is stored as a coprime pair `(numerator, denominator)` with a
//! non-negative denominator; `∞` is `1/0`. With this normal form equality
//! of slopes is structural equality of the pair.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlopeError {
    #[error("0/0 is not a slope")]
    Undefined,
    #[error("cannot parse slope {0:?}")]
    Parse(String),
}

/// A normalized slope `numerator/denominator`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    num: BigInt,
    den: BigInt,
}

impl Slope {
    /// Reduces `a/b` to its canonical representative.
    pub fn normalize(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self, SlopeError> {
        let (mut a, mut b) = (a.into(), b.into());
        if a.is_zero() && b.is_zero() {
            return Err(SlopeError::Undefined);
        }
        if b.is_zero() {
            return Ok(Self::infinity());
        }
        let g = a.gcd(&b);
        a /= &g;
        b /= &g;
        if b.is_negative() {
            a = -a;
            b = -b;
        }
        Ok(Self { num: a, den: b })
    }

    /// Shorthand for `normalize` on machine integers. Panics on `(0, 0)`.
    pub fn new(a: i64, b: i64) -> Self {
        Self::normalize(a, b).expect("0/0 is not a slope")
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self { num: n.into(), den: BigInt::one() }
    }

    pub fn infinity() -> Self {
        Self { num: BigInt::one(), den: BigInt::zero() }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_infinity(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// The pair as machine integers, if it fits.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.num.to_i64()?, self.den.to_i64()?))
    }

    /// Floating point value; `∞` maps to `f64::INFINITY`.
    pub fn to_f64(&self) -> f64 {
        if self.is_infinity() {
            return f64::INFINITY;
        }
        self.num.to_f64().unwrap_or(f64::NAN) / self.den.to_f64().unwrap_or(f64::NAN)
    }
}

/// `|p s' - q r'|` for `s = p/q` and `t = r'/s'`.
pub fn geometric_intersection(s: &Slope, t: &Slope) -> BigUint {
    let det = &s.num * &t.den - &s.den * &t.num;
    det.magnitude().clone()
}

/// The slope correspondence `p/q ↦ (p - q)/q` from the boundary of the
/// two-handle complement onto the matching cusp of the magic manifold.
pub fn chain_slope_map(s: &Slope) -> Slope {
    if s.is_infinity() {
        return Slope::infinity();
    }
    Slope::normalize(&s.num - &s.den, s.den.clone()).expect("denominator is nonzero")
}

/// Integer surgery `r` on a period-two knot descends to `r/2` on the factor knot.
pub fn factor_knot_slope(r: impl Into<BigInt>) -> Slope {
    Slope::normalize(r.into(), 2).expect("denominator is nonzero")
}

impl From<i64> for Slope {
    fn from(n: i64) -> Self {
        Slope::integer(n)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            f.write_str("∞")
        } else if self.is_integral() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Slope {
    type Err = SlopeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if matches!(t, "∞" | "inf" | "infinity") {
            return Ok(Slope::infinity());
        }
        let bad = || SlopeError::Parse(s.to_string());
        let parse_int = |x: &str| x.trim().replace('−', "-").parse::<BigInt>().map_err(|_| bad());
        match t.split_once('/') {
            Some((a, b)) => Slope::normalize(parse_int(a)?, parse_int(b)?),
            None => Ok(Slope::integer(parse_int(t)?)),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(Slope::normalize(2, 4).unwrap(), Slope::new(1, 2));
        assert_eq!(Slope::normalize(2, 4).unwrap().to_i64_pair(), Some((1, 2)));
        assert_eq!(Slope::normalize(-1, 0).unwrap(), Slope::infinity());
        assert_eq!(Slope::normalize(-1, 0).unwrap().to_i64_pair(), Some((1, 0)));
        assert_eq!(Slope::normalize(3, -2).unwrap().to_i64_pair(), Some((-3, 2)));
        assert_eq!(Slope::normalize(0, -5).unwrap().to_i64_pair(), Some((0, 1)));
        assert_eq!(Slope::normalize(0, 0), Err(SlopeError::Undefined));
    }

    #[test]
    fn intersection_examples() {
        let one = BigUint::one();
        assert_eq!(geometric_intersection(&Slope::infinity(), &Slope::new(0, 1)), one);
        assert_eq!(geometric_intersection(&Slope::new(-3, 2), &Slope::new(-4, 3)), one);
        let s = Slope::new(7, 5);
        assert!(geometric_intersection(&s, &s).is_zero());
    }

    #[test]
    fn chain_map_examples() {
        assert_eq!(chain_slope_map(&Slope::new(-1, 2)), Slope::new(-3, 2));
        assert_eq!(chain_slope_map(&Slope::new(0, 1)), Slope::new(-1, 1));
        assert_eq!(chain_slope_map(&Slope::infinity()), Slope::infinity());
    }

    #[test]
    fn chain_map_on_twist_slopes() {
        for k in 1..=10_000i64 {
            assert_eq!(chain_slope_map(&Slope::new(-1, k)), Slope::new(-(k + 1), k), "k = {k}");
        }
    }

    #[test]
    fn factor_knot_examples() {
        assert_eq!(factor_knot_slope(21), Slope::new(21, 2));
        assert_eq!(factor_knot_slope(20), Slope::new(10, 1));
        assert_eq!(factor_knot_slope(-7), Slope::new(-7, 2));
    }

    #[test]
    fn render_and_parse() {
        assert_eq!(Slope::new(-3, 2).to_string(), "-3/2");
        assert_eq!(Slope::new(4, 1).to_string(), "4");
        assert_eq!(Slope::infinity().to_string(), "∞");
        for s in ["-3/2", "4", "∞", "0", "-17/5"] {
            assert_eq!(s.parse::<Slope>().unwrap().to_string(), s);
        }
        assert_eq!("1/0".parse::<Slope>().unwrap(), Slope::infinity());
        assert!("0/0".parse::<Slope>().is_err());
        assert!("x/2".parse::<Slope>().is_err());
    }

    #[test]
    fn exact_beyond_machine_width() {
        let big: BigInt = BigInt::from(i64::MAX) * 3;
        let s = Slope::normalize(big.clone(), 3).unwrap();
        assert_eq!(s.numerator(), &BigInt::from(i64::MAX));
        let t = Slope::normalize(big * 2, 6).unwrap();
        assert_eq!(geometric_intersection(&s, &t), BigUint::zero());
        let u = Slope::normalize(BigInt::from(i64::MAX) + 1, 1).unwrap();
        assert_eq!(geometric_intersection(&s, &u), BigUint::one());
    }

    proptest! {
        #[test]
        fn normalize_idempotent(a in -1000i64..1000, b in -1000i64..1000, k in 1i64..50) {
            prop_assume!(a != 0 || b != 0);
            let s = Slope::normalize(a, b).unwrap();
            let again = Slope::normalize(s.numerator().clone(), s.denominator().clone()).unwrap();
            prop_assert_eq!(&again, &s);
            let scaled = Slope::normalize(-k * a, -k * b).unwrap();
            prop_assert!(geometric_intersection(&s, &scaled).is_zero());
            prop_assert_eq!(scaled.to_string().parse::<Slope>().unwrap(), s);
        }

        #[test]
        fn intersection_symmetric(a in -500i64..500, b in 0i64..500, c in -500i64..500, d in 0i64..500) {
            prop_assume!((a != 0 || b != 0) && (c != 0 || d != 0));
            let (s, t) = (Slope::new(a, b), Slope::new(c, d));
            prop_assert_eq!(geometric_intersection(&s, &t), geometric_intersection(&t, &s));
            prop_assert_eq!(geometric_intersection(&s, &t).is_zero(), s == t);
        }
    }
}
