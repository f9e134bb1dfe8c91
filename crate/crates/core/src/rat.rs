//! Helpers for exact rational coefficients.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses "p/q", "p", or a plain decimal like "0.355" into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let digits = frac.len() as u32;
        let combined = format!("{int}{frac}");
        let n: BigInt = combined
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?;
        return Ok(Rat::new(n, BigInt::from(10u32).pow(digits)));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    Ok(Rat::from_integer(n))
}

/// Renders as "p/q" (or "p" when the denominator is one).
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rat) -> f64 {
    // BigRational::to_f64 is exact up to one rounding for moderate sizes, but
    // factorial-scale numerators overflow its naive path; go through a scaled
    // division that always stays in range.
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let neg = r.is_negative();
    let mut num = r.numer().abs();
    let mut den = r.denom().abs();
    // strip matching magnitude so both fit in f64
    let bits = num.bits().max(den.bits());
    if bits > 900 {
        let shift = bits - 900;
        num >>= shift;
        den >>= shift;
    }
    let v = num.to_f64().unwrap_or(f64::INFINITY) / den.to_f64().unwrap_or(f64::INFINITY);
    if neg {
        -v
    } else {
        v
    }
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3/8").unwrap(), rat(3, 8));
        assert_eq!(parse_rat("-1/4").unwrap(), rat(-1, 4));
        assert_eq!(parse_rat("2").unwrap(), rat_int(2));
        assert_eq!(parse_rat("0.355").unwrap(), rat(355, 1000));
        assert!(parse_rat("1/0").is_err());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(10, 3), BigInt::from(120));
    }

    #[test]
    fn large_ratio_to_f64() {
        let r = Rat::new(factorial(40), factorial(38));
        assert!((to_f64(&r) - 40.0 * 39.0).abs() < 1e-9);
    }
}
