//! Exact rationals and the extended half-line `[0, +∞]`.
//!
//! JSON form: integers, or strings `"p"`, `"p/q"`, `"inf"`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    Rational::from_str(s).map_err(|_| format!("not a rational number: {s:?}"))
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum NumberOrString {
    Int(i64),
    Str(String),
}

/// Serde adapters for a single `Rational`.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        match NumberOrString::deserialize(d)? {
            NumberOrString::Int(i) => Ok(rat(i)),
            NumberOrString::Str(s) => parse_rational(&s).map_err(de::Error::custom),
        }
    }
}

/// Serde adapters for `Vec<Vec<Rational>>`.
pub mod serde_rational_rows {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Cell(#[serde(with = "serde_rational")] Rational);

    pub fn serialize<S: Serializer>(rows: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let cells: Vec<Vec<Cell>> = rows.iter().map(|r| r.iter().cloned().map(Cell).collect()).collect();
        cells.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let cells: Vec<Vec<Cell>> = Vec::deserialize(d)?;
        Ok(cells.into_iter().map(|r| r.into_iter().map(|c| c.0).collect()).collect())
    }
}

/// A value in `[0, +∞]`. `+∞` absorbs addition and positive scaling.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedValue {
    Finite(Rational),
    Infinity,
}

impl ExtendedValue {
    pub fn zero() -> Self {
        ExtendedValue::Finite(Rational::zero())
    }

    pub fn finite(r: Rational) -> Result<Self, String> {
        if r.is_negative() {
            Err(format!("negative value {r}"))
        } else {
            Ok(ExtendedValue::Finite(r))
        }
    }

    pub fn from_int(n: u32) -> Self {
        ExtendedValue::Finite(rat(n.into()))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtendedValue::Finite(r) if r.is_zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedValue::Infinity)
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtendedValue::Finite(r) => Some(r),
            ExtendedValue::Infinity => None,
        }
    }

    pub fn add(&self, other: &ExtendedValue) -> ExtendedValue {
        match (self, other) {
            (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => ExtendedValue::Finite(a + b),
            _ => ExtendedValue::Infinity,
        }
    }

    /// `k · self` for `k > 0`.
    pub fn scale(&self, k: &Rational) -> ExtendedValue {
        debug_assert!(k.is_positive());
        match self {
            ExtendedValue::Finite(a) => ExtendedValue::Finite(a * k),
            ExtendedValue::Infinity => ExtendedValue::Infinity,
        }
    }

    /// `ε`-closeness in `[0, +∞]`: both finite within `ε`, or both `+∞`.
    pub fn is_close(&self, other: &ExtendedValue, eps: &Rational) -> bool {
        match (self, other) {
            (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => &(a - b).abs() < eps,
            (ExtendedValue::Infinity, ExtendedValue::Infinity) => true,
            _ => false,
        }
    }
}

impl PartialOrd for ExtendedValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => a.cmp(b),
            (ExtendedValue::Finite(_), ExtendedValue::Infinity) => Ordering::Less,
            (ExtendedValue::Infinity, ExtendedValue::Finite(_)) => Ordering::Greater,
            (ExtendedValue::Infinity, ExtendedValue::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::Finite(r) => write!(f, "{r}"),
            ExtendedValue::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtendedValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "inf" | "infinity" | "+inf" => Ok(ExtendedValue::Infinity),
            other => ExtendedValue::finite(parse_rational(other)?),
        }
    }
}

impl Serialize for ExtendedValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtendedValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match NumberOrString::deserialize(d)? {
            NumberOrString::Int(i) => ExtendedValue::finite(rat(i)).map_err(de::Error::custom),
            NumberOrString::Str(s) => s.parse().map_err(de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_puts_infinity_last() {
        let mut v = vec![ExtendedValue::Infinity, ExtendedValue::from_int(3), ExtendedValue::zero()];
        v.sort();
        assert_eq!(v, vec![ExtendedValue::zero(), ExtendedValue::from_int(3), ExtendedValue::Infinity]);
    }

    #[test]
    fn infinity_absorbs() {
        let inf = ExtendedValue::Infinity;
        assert_eq!(inf.add(&ExtendedValue::from_int(1)), inf);
        assert_eq!(inf.scale(&ratio(3, 2)), inf);
        assert_eq!(ExtendedValue::from_int(2).scale(&ratio(3, 2)), ExtendedValue::from_int(3));
    }

    #[test]
    fn closeness_isolates_infinity() {
        let eps = rat(1000);
        assert!(!ExtendedValue::from_int(5).is_close(&ExtendedValue::Infinity, &eps));
        assert!(ExtendedValue::Infinity.is_close(&ExtendedValue::Infinity, &ratio(1, 10)));
        assert!(!ExtendedValue::from_int(1).is_close(&ExtendedValue::from_int(2), &rat(1)));
    }

    #[test]
    fn json_forms() {
        let v: Vec<ExtendedValue> = serde_json::from_str(r#"[0, "1/2", "inf", "3"]"#).unwrap();
        assert_eq!(v[1], ExtendedValue::Finite(ratio(1, 2)));
        assert!(v[2].is_infinite());
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["0","1/2","inf","3"]"#);
        assert!(serde_json::from_str::<ExtendedValue>("-1").is_err());
        assert!(serde_json::from_str::<ExtendedValue>("\"x\"").is_err());
    }
}
