//! Exact rational scalars and a few combinatorial helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Parses `"p/q"`, `"p"` or a finite decimal like `"-0.25"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = ip.starts_with('-');
        let ip_abs = ip.trim_start_matches(['-', '+']);
        let whole: BigInt = if ip_abs.is_empty() {
            BigInt::zero()
        } else {
            ip_abs.parse().map_err(|_| bad())?
        };
        let frac: BigInt = fp.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let v = Rat::new(whole * &scale + frac, scale);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(n))
}

/// Canonical `"p/q"` (or `"p"` for integers).
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rat) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // huge operands: shift both down before dividing
            let bits = r.numer().bits().max(r.denom().bits()) as i64 - 900;
            let sh = bits.max(0) as usize;
            let n = (r.numer().abs() >> sh).to_f64().unwrap_or(f64::MAX);
            let d = (r.denom() >> sh).to_f64().unwrap_or(f64::MAX);
            let v = n / d;
            if r.is_negative() {
                -v
            } else {
                v
            }
        }
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= BigInt::from(n - j);
        acc = acc.div_floor(&BigInt::from(j + 1));
    }
    acc
}

/// Shapley coalition weight |S|!(n-|S|-1)!/n!.
pub fn shapley_weight(n: usize, s: usize) -> Rat {
    Rat::new(factorial(s) * factorial(n - s - 1), factorial(n))
}

/// Minimal field interface so enumeration code can run exactly or in f64.
pub trait Field:
    Clone
    + PartialOrd
    + std::fmt::Debug
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + std::ops::Neg<Output = Self>
    + Zero
    + One
{
    fn from_rat(r: &Rat) -> Self;
    fn to_f64(&self) -> f64;

    fn from_int(v: i64) -> Self {
        Self::from_rat(&int(v))
    }
}

impl Field for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn to_f64(&self) -> f64 {
        to_f64(self)
    }
}

impl Field for f64 {
    fn from_rat(r: &Rat) -> Self {
        to_f64(r)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// A rational written as `"p/q"`, a decimal string or a JSON number.
pub fn json_rat(v: &serde_json::Value) -> Result<Rat> {
    match v {
        serde_json::Value::String(s) => parse_rat(s),
        serde_json::Value::Number(n) => parse_rat(&n.to_string()),
        other => Err(Error::Parse(format!("expected a rational, found {other}"))),
    }
}

fn json_array(v: &serde_json::Value) -> Result<&Vec<serde_json::Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("expected an array, found {v}")))
}

pub fn json_vec(v: &serde_json::Value) -> Result<Vec<Rat>> {
    json_array(v)?.iter().map(json_rat).collect()
}

pub fn json_mat(v: &serde_json::Value) -> Result<Vec<Vec<Rat>>> {
    json_array(v)?.iter().map(json_vec).collect()
}

pub fn json_cube(v: &serde_json::Value) -> Result<Vec<Vec<Vec<Rat>>>> {
    json_array(v)?.iter().map(json_mat).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        assert_eq!(parse_rat("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rat("-0.25").unwrap(), ratio(-1, 4));
        assert_eq!(parse_rat("7").unwrap(), int(7));
        assert_eq!(fmt_rat(&ratio(-2, 4)), "-1/2");
        assert_eq!(fmt_rat(&int(3)), "3");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn combinatorics() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
        // 25! overflows u64
        assert_eq!(factorial(25).to_string(), "15511210043330985984000000");
        assert_eq!(shapley_weight(2, 1), ratio(1, 2));
    }

    #[test]
    fn huge_to_f64() {
        let big = Rat::new(factorial(300) + 1u32, factorial(300));
        assert!((to_f64(&big) - 1.0).abs() < 1e-12);
    }
}
