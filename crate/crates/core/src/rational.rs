//! Parsing and canonical formatting of exact rationals.
//!
//! Rationals travel through JSON and the command line as `"p/q"` strings with
//! an optional sign and `q > 0`. Integers print without a denominator.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

fn split(s: &str) -> Result<(&str, Option<&str>)> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::ParseRational(s.to_string()));
    }
    Ok(match s.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (s, None),
    })
}

fn check_digits(s: &str, signed: bool, whole: &str) -> Result<()> {
    let body = if signed {
        s.strip_prefix(['+', '-']).unwrap_or(s)
    } else {
        s
    };
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::ParseRational(whole.to_string()));
    }
    Ok(())
}

pub fn parse_q(s: &str) -> Result<Q> {
    let (p, q) = split(s)?;
    check_digits(p, true, s)?;
    let num: BigInt = p
        .parse()
        .map_err(|_| Error::ParseRational(s.to_string()))?;
    let den: BigInt = match q {
        Some(q) => {
            check_digits(q, false, s)?;
            q.parse().map_err(|_| Error::ParseRational(s.to_string()))?
        }
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(Error::ParseRational(s.to_string()));
    }
    Ok(Q::new(num, den))
}

pub fn parse_r64(s: &str) -> Result<Ratio<i64>> {
    let (p, q) = split(s)?;
    check_digits(p, true, s)?;
    let num: i64 = p.parse().map_err(|_| Error::ParseRational(s.to_string()))?;
    let den: i64 = match q {
        Some(q) => {
            check_digits(q, false, s)?;
            q.parse().map_err(|_| Error::ParseRational(s.to_string()))?
        }
        None => 1,
    };
    if den == 0 {
        return Err(Error::ParseRational(s.to_string()));
    }
    Ok(Ratio::new(num, den))
}

/// Parses a comma-separated list of `p/q` tokens.
pub fn parse_q_list(s: &str) -> Result<Vec<Q>> {
    s.split(',').map(parse_q).collect()
}

pub fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn fmt_r64(q: &Ratio<i64>) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn q_from_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_to_f64(q: &Q) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Exact square root of a non-negative rational, if it has one.
pub fn q_sqrt(q: &Q) -> Option<Q> {
    if q.is_negative() {
        return None;
    }
    let rn = q.numer().sqrt();
    let rd = q.denom().sqrt();
    if &(&rn * &rn) == q.numer() && &(&rd * &rd) == q.denom() {
        Some(Q::new(rn, rd))
    } else {
        None
    }
}
