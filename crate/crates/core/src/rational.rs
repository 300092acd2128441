//! Exact rationals and their `"p/q"` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"0.05"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::invalid(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = match whole.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let frac_num: BigInt = frac.parse().map_err(|_| bad())?;
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let magnitude = Rational::new(whole * &denom + frac_num, denom);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// `"p/q"`, or just `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact conversion of a finite float.
pub fn from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::invalid(format!("non-finite value {x}")))
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// Serde adapter storing a rational as its `"p/q"` string.
pub mod serde_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(v) => Ok(int(v)),
            Repr::Text(t) => parse_rational(&t).map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational("0.05").unwrap(), ratio(1, 20));
        assert_eq!(parse_rational("-1.25").unwrap(), ratio(-5, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn format_forms() {
        assert_eq!(format_rational(&ratio(161, 180)), "161/180");
        assert_eq!(format_rational(&ratio(4, 2)), "2");
        assert_eq!(from_f64(0.25).unwrap(), ratio(1, 4));
    }
}
