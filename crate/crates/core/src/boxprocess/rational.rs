use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// An exact rational in `[0, 1]`, kept reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalQ(Ratio<i64>);

impl RationalQ {
    pub const ZERO: RationalQ = RationalQ(Ratio::new_raw(0, 1));
    pub const ONE: RationalQ = RationalQ(Ratio::new_raw(1, 1));

    /// `a / b`, reduced. Fails when `b = 0` or the value leaves `[0, 1]`.
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if b == 0 {
            return Err(Error::Domain(format!("{a}/0")));
        }
        Self::from_ratio(Ratio::new(a, b))
    }

    pub fn from_ratio(r: Ratio<i64>) -> Result<Self> {
        if r < Ratio::zero() || r > Ratio::one() {
            return Err(Error::Domain(r.to_string()));
        }
        Ok(RationalQ(r))
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    pub fn ratio(self) -> Ratio<i64> {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// Always `a/b`, including `0/1` and `1/1`.
    pub fn fraction(self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

/// Integers print bare (`0`, `1`); everything else as `a/b`.
impl fmt::Display for RationalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for RationalQ {
    type Err = Error;

    /// Accepts `a/b` or a bare integer.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let (a, b) = match s.trim().split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        let a: i64 = a.parse().map_err(|_| bad())?;
        let b: i64 = b.parse().map_err(|_| bad())?;
        RationalQ::new(a, b)
    }
}

impl Serialize for RationalQ {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.fraction())
    }
}

impl<'de> Deserialize<'de> for RationalQ {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
