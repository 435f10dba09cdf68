//! Rational scalars and their string form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses "p/q", "p" or a decimal literal such as "0.25" into lowest terms.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {t:?}")))?;
        let q: BigInt = q.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {t:?}")))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {t:?}")));
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let neg = whole.starts_with('-');
        let digits = frac.len() as u32;
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal {t:?}")));
        }
        let w: BigInt = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            whole.parse().map_err(|_| Error::Parse(format!("bad decimal {t:?}")))?
        };
        let f: BigInt = if frac.is_empty() { BigInt::zero() } else { frac.parse().unwrap() };
        let den = BigInt::from(10).pow(digits);
        let mag = w.abs() * &den + f;
        let num = if neg { -mag } else { mag };
        return Ok(Rat::new(num, den));
    }
    let p: BigInt = t.parse().map_err(|_| Error::Parse(format!("bad rational {t:?}")))?;
    Ok(Rat::from_integer(p))
}

pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Fractional part in [0, 1).
pub fn frac(r: &Rat) -> Rat {
    r - r.floor()
}

pub fn lcm_denominators<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn to_i64(n: &BigInt, what: &str) -> Result<i64> {
    n.to_i64()
        .ok_or_else(|| Error::PrecisionOverflow(format!("{what} does not fit in 64 bits")))
}

pub fn to_u64(n: &BigInt, what: &str) -> Result<u64> {
    n.to_u64()
        .ok_or_else(|| Error::PrecisionOverflow(format!("{what} does not fit in 64 bits")))
}

/// Serde adapters: scalars as "p/q" strings.
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        S(String),
        I(i64),
        F(f64),
    }

    fn from_raw<E: serde::de::Error>(r: Raw) -> std::result::Result<Rat, E> {
        match r {
            Raw::S(s) => parse_rat(&s).map_err(E::custom),
            Raw::I(i) => Ok(int(i)),
            Raw::F(f) => Rat::from_float(f).ok_or_else(|| E::custom("non-finite number")),
        }
    }

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        from_raw(Raw::deserialize(d)?)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format_rat(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
            Vec::<Raw>::deserialize(d)?.into_iter().map(from_raw).collect()
        }
    }

    pub mod vec2 {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Vec<Rat>], s: S) -> std::result::Result<S::Ok, S::Error> {
            let rows: Vec<Vec<String>> = v.iter().map(|r| r.iter().map(format_rat).collect()).collect();
            serde::Serialize::serialize(&rows, s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Rat>>, D::Error> {
            let rows = Vec::<Vec<Raw>>::deserialize(d)?;
            rows.into_iter()
                .map(|r| r.into_iter().map(from_raw::<D::Error>).collect())
                .collect()
        }
    }
}
