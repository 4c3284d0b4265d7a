//! Exact rational numbers and their `p/q` string form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p/q"`, an integer, or a plain decimal such as `"0.37"` or `"-1.5e-3"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {text:?}")))?;
        let q: BigInt = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {text:?}")))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    parse_decimal(s).ok_or_else(|| Error::Parse(format!("not a rational: {text:?}")))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{whole}{frac}").parse().ok()?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        Rational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Some(value)
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Huge numerator or denominator: fall back to a scaled division.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Closest rational with denominator at most `max_denom`, by continued fractions.
pub fn best_rational(x: f64, max_denom: i64) -> Rational {
    if !x.is_finite() {
        return zero();
    }
    let negative = x < 0.0;
    let mut v = x.abs();
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    for _ in 0..64 {
        let a = v.floor();
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_denom as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if frac < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    let r = Rational::new(BigInt::from(h1), BigInt::from(k1.max(1)));
    if negative {
        -r
    } else {
        r
    }
}

pub fn min_of<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<&'a Rational> {
    values.into_iter().min()
}

pub fn is_nonnegative(values: &[Rational]) -> bool {
    values.iter().all(|v| !v.is_negative())
}

pub fn sum(values: &[Rational]) -> Rational {
    values.iter().fold(zero(), |acc, v| acc + v)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(zero(), |acc, (x, y)| acc + x * y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("11/26").unwrap(), rat(11, 26));
        assert_eq!(parse_rational("0.37").unwrap(), rat(37, 100));
        assert_eq!(parse_rational("1").unwrap(), int(1));
        assert_eq!(parse_rational("-2/4").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("1e-6").unwrap(), rat(1, 1_000_000));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format_rational(&rat(10, 20)), "1/2");
        assert_eq!(format_rational(&int(3)), "3");
        assert_eq!(format_rational(&rat(-5, 13)), "-5/13");
    }

    #[test]
    fn best_rational_recovers_small_fractions() {
        assert_eq!(best_rational(11.0 / 26.0, 1_000_000), rat(11, 26));
        assert_eq!(best_rational(-0.25, 100), rat(-1, 4));
        assert_eq!(best_rational(0.0, 100), zero());
    }
}
