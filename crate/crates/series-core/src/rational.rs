//! Exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::SeriesError;

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Rational::from_integer(acc)
}

pub fn binomial(n: i64, k: u32) -> Rational {
    // generalized binomial, n may be negative
    let mut acc = Rational::one();
    for i in 0..k as i64 {
        acc *= int(n - i);
        acc /= int(i + 1);
    }
    acc
}

/// Always `num/den`, including `/1` for integers.
pub fn to_fraction_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// `num/den`, or just `num` when the denominator is one.
pub fn to_display_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `n`, `n/d` or an exact decimal such as `-0.05`.
pub fn parse_rational(s: &str) -> Result<Rational, SeriesError> {
    let s = s.trim();
    let bad = || SeriesError::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => match s.split_once('.') {
            Some((whole, frac)) if !frac.is_empty() && frac.bytes().all(|b| b.is_ascii_digit()) => {
                let n: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
                Ok(Rational::new(n, BigInt::from(10u32).pow(frac.len() as u32)))
            }
            Some(_) => Err(bad()),
            None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
        },
    }
}

/// Lossy conversion for reporting only.
pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}
