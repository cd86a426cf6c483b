//! The two parametrizations of Painleve VI and the conversion between them.
//!
//! `(alpha, beta, gamma, delta)` are the coefficients of the rational form;
//! `(a0, a1, a2, a3) = (alpha, -beta, gamma, 1/2 - delta)` are the weights of the
//! half-period terms in the elliptic form.

use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q_list, q_frac, q_to_f64, Q};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlphaTuple(pub [Q; 4]);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PviParams {
    pub alpha: Q,
    pub beta: Q,
    pub gamma: Q,
    pub delta: Q,
}

fn four(s: &str) -> Result<[Q; 4]> {
    let v = parse_q_list(s)?;
    <[Q; 4]>::try_from(v).map_err(|_| Error::ParseRational(s.to_string()))
}

impl AlphaTuple {
    pub fn new(a: [Q; 4]) -> Self {
        AlphaTuple(a)
    }

    pub fn from_fracs(a: [(i64, i64); 4]) -> Self {
        AlphaTuple(a.map(|(n, d)| q_frac(n, d)))
    }

    pub fn from_ints(a: [i64; 4]) -> Self {
        AlphaTuple(a.map(|n| q_frac(n, 1)))
    }

    /// Parses `"a0,a1,a2,a3"`.
    pub fn parse(s: &str) -> Result<Self> {
        four(s).map(AlphaTuple)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> [f64; 4] {
        [
            q_to_f64(&self.0[0]),
            q_to_f64(&self.0[1]),
            q_to_f64(&self.0[2]),
            q_to_f64(&self.0[3]),
        ]
    }

    pub fn to_pvi(&self) -> PviParams {
        let [a0, a1, a2, a3] = self.0.clone();
        PviParams {
            alpha: a0,
            beta: -a1,
            gamma: a2,
            delta: q_frac(1, 2) - a3,
        }
    }

    pub fn scaled(&self, s: &Q) -> Self {
        AlphaTuple(self.0.clone().map(|a| a * s))
    }

    pub fn to_strings(&self) -> [String; 4] {
        [fmt_q(&self.0[0]), fmt_q(&self.0[1]), fmt_q(&self.0[2]), fmt_q(&self.0[3])]
    }
}

impl PviParams {
    pub fn new(alpha: Q, beta: Q, gamma: Q, delta: Q) -> Self {
        PviParams { alpha, beta, gamma, delta }
    }

    pub fn from_fracs(p: [(i64, i64); 4]) -> Self {
        let [a, b, c, d] = p.map(|(n, d)| q_frac(n, d));
        PviParams::new(a, b, c, d)
    }

    /// Parses `"alpha,beta,gamma,delta"`.
    pub fn parse(s: &str) -> Result<Self> {
        let [a, b, c, d] = four(s)?;
        Ok(PviParams::new(a, b, c, d))
    }

    pub fn to_alpha(&self) -> AlphaTuple {
        AlphaTuple([
            self.alpha.clone(),
            -self.beta.clone(),
            self.gamma.clone(),
            q_frac(1, 2) - &self.delta,
        ])
    }

    pub fn to_complex(&self) -> [Complex64; 4] {
        [&self.alpha, &self.beta, &self.gamma, &self.delta].map(|q| Complex64::new(q_to_f64(q), 0.0))
    }

    pub fn to_strings(&self) -> [String; 4] {
        [
            fmt_q(&self.alpha),
            fmt_q(&self.beta),
            fmt_q(&self.gamma),
            fmt_q(&self.delta),
        ]
    }
}

impl From<&AlphaTuple> for PviParams {
    fn from(a: &AlphaTuple) -> Self {
        a.to_pvi()
    }
}

impl From<&PviParams> for AlphaTuple {
    fn from(p: &PviParams) -> Self {
        p.to_alpha()
    }
}

impl fmt::Display for AlphaTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl fmt::Display for PviParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// `{"re": .., "im": ..}` wire form of a complex number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(c: Complex64) -> Self {
        ComplexValue { re: c.re, im: c.im }
    }
}

impl From<ComplexValue> for Complex64 {
    fn from(c: ComplexValue) -> Self {
        Complex64::new(c.re, c.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversion_examples() {
        let p = PviParams::from_fracs([(1, 8), (-1, 8), (1, 8), (3, 8)]);
        assert_eq!(p.to_alpha(), AlphaTuple::from_fracs([(1, 8); 4]));

        let p = PviParams::from_fracs([(9, 8), (-1, 8), (1, 8), (3, 8)]);
        assert_eq!(p.to_alpha(), AlphaTuple::from_fracs([(9, 8), (1, 8), (1, 8), (1, 8)]));

        let p = PviParams::from_fracs([(0, 1), (0, 1), (0, 1), (1, 2)]);
        assert!(p.to_alpha().is_zero());
    }

    #[test]
    fn round_trip_is_involutive() {
        let a = AlphaTuple::from_fracs([(3, 7), (-2, 5), (0, 1), (11, 3)]);
        assert_eq!(a.to_pvi().to_alpha(), a);
        let p = PviParams::from_fracs([(1, 2), (1, 3), (-1, 4), (1, 5)]);
        assert_eq!(p.to_alpha().to_pvi(), p);
    }

    #[test]
    fn parse_lists() {
        assert_eq!(AlphaTuple::parse("1,2,3,4").unwrap(), AlphaTuple::from_ints([1, 2, 3, 4]));
        assert!(AlphaTuple::parse("1,2,3").is_err());
        assert!(PviParams::parse("1/8,-1/8,1/8,x").is_err());
    }

    #[test]
    fn complex_wire_form() {
        let s = serde_json::to_string(&ComplexValue::from(Complex64::new(0.5, -2.0))).unwrap();
        assert_eq!(s, r#"{"re":0.5,"im":-2.0}"#);
    }
}
