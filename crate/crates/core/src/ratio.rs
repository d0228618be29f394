//! Parsing and formatting helpers for exact rationals.

use crate::error::{Error, Result};
use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn pow2(exp: i64) -> BigRational {
    if exp >= 0 {
        BigRational::from_integer(BigInt::one() << (exp as usize))
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << ((-exp) as usize))
    }
}

/// Parse "num", "num/den" or a plain decimal like "0.125" into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {:?}", s)))?;
        let den: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {:?}", s)))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {:?}", s)));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int_digits = if int_part.is_empty() || int_part == "-" {
            "0"
        } else {
            int_part
        };
        let whole: BigInt = int_digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal in {:?}", s)))?;
        if !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal in {:?}", s)));
        }
        let frac: BigInt = if frac_part.is_empty() {
            BigInt::zero()
        } else {
            frac_part
                .parse()
                .map_err(|_| Error::Parse(format!("bad decimal in {:?}", s)))?
        };
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mut val = BigRational::new(whole.abs() * &scale + frac, scale);
        if negative {
            val = -val;
        }
        return Ok(val);
    }
    let num: BigInt = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {:?}", s)))?;
    Ok(BigRational::from_integer(num))
}

/// Canonical "num/den" (or "num" for integers).
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Decimal string with `digits` fractional digits, rounded toward the stated
/// direction so the printed value encloses the true one.
pub fn to_decimal(q: &BigRational, digits: u32, round_up: bool) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = q * BigRational::from_integer(scale.clone());
    let floor = scaled.floor().to_integer();
    let n = if round_up && scaled != BigRational::from_integer(floor.clone()) {
        floor + 1
    } else {
        floor
    };
    let negative = n.sign() == Sign::Minus;
    let abs = n.abs();
    let s = abs.to_string();
    let (int_part, frac_part) = if s.len() > digits as usize {
        let split = s.len() - digits as usize;
        (s[..split].to_string(), s[split..].to_string())
    } else {
        (
            "0".to_string(),
            format!("{:0>width$}", s, width = digits as usize),
        )
    };
    let frac_trimmed = frac_part.trim_end_matches('0');
    let body = if frac_trimmed.is_empty() {
        int_part
    } else {
        format!("{}.{}", int_part, frac_trimmed)
    };
    if negative {
        format!("-{}", body)
    } else {
        body
    }
}

/// `binom(n, k)` as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        for s in ["3", "-4", "1/2", "22/7", "-5/3"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(format_rational(&q), s);
        }
        assert_eq!(parse_rational("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn decimal_rounding_directions() {
        let third = rat(1, 3);
        assert_eq!(to_decimal(&third, 4, false), "0.3333");
        assert_eq!(to_decimal(&third, 4, true), "0.3334");
        assert_eq!(to_decimal(&rat(1, 2), 4, true), "0.5");
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(10, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(52, 5), BigInt::from(2598960u64));
    }
}
