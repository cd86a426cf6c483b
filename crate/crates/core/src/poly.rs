//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables come from a fixed ordered set (`y > t > z > a0..a3 > u0..u3`) and
//! monomials are compared graded-lexicographically, so the leading term is the
//! last entry of the term map.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, q_from_int, q_sqrt, q_to_f64, Q};

pub const NVARS: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Y,
    T,
    Z,
    A0,
    A1,
    A2,
    A3,
    U0,
    U1,
    U2,
    U3,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::Y,
        Var::T,
        Var::Z,
        Var::A0,
        Var::A1,
        Var::A2,
        Var::A3,
        Var::U0,
        Var::U1,
        Var::U2,
        Var::U3,
    ];

    pub fn alpha(j: usize) -> Var {
        [Var::A0, Var::A1, Var::A2, Var::A3][j]
    }

    pub fn u(j: usize) -> Var {
        [Var::U0, Var::U1, Var::U2, Var::U3][j]
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["y", "t", "z", "a0", "a1", "a2", "a3", "u0", "u1", "u2", "u3"][self.index()]
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }
}

/// Exponent vector over [`Var::ALL`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, e: u16) -> Self {
        let mut m = Monomial::one();
        m.0[v.index()] = e;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0) {
            *a += b;
        }
        r
    }

    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0) {
            *a = a.checked_sub(b)?;
        }
        Some(r)
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0) {
            *a = (*a).min(b);
        }
        r
    }

    fn sqrt(&self) -> Option<Monomial> {
        let mut r = *self;
        for e in r.0.iter_mut() {
            if *e % 2 != 0 {
                return None;
            }
            *e /= 2;
        }
        Some(r)
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Q>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        MultiPoly::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        MultiPoly::constant(q_from_int(n))
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::term(Q::one(), Monomial::var(v, 1))
    }

    pub fn term(c: Q, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.degree_in(v) > 0
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|&v| self.depends_on(v)).collect()
    }

    /// All terms share one total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Q) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &Q, mono: &Monomial) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> MultiPoly {
        let i = v.index();
        MultiPoly::from_terms(self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
            let mut m2 = *m;
            m2.0[i] -= 1;
            (m2, c * q_from_int(m.0[i] as i64))
        }))
    }

    /// Replaces `v` by the polynomial `by`.
    pub fn substitute(&self, v: Var, by: &MultiPoly) -> MultiPoly {
        let deg = self.degree_in(v);
        let powers: Vec<MultiPoly> = std::iter::successors(Some(MultiPoly::one()), |p| Some(p * by))
            .take(deg as usize + 1)
            .collect();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let mut rest = *m;
            rest.0[v.index()] = 0;
            out = out + powers[e as usize].mul_monomial(c, &rest);
        }
        out
    }

    pub fn substitute_value(&self, v: Var, value: &Q) -> MultiPoly {
        self.substitute(v, &MultiPoly::constant(value.clone()))
    }

    /// Simultaneously replaces each `v` by `num/den` and multiplies through by
    /// `den^deg_v(self)` for every substituted variable. Returns the numerator.
    pub fn substitute_fractions(&self, subs: &[(Var, MultiPoly, MultiPoly)]) -> MultiPoly {
        let degs: Vec<u16> = subs.iter().map(|(v, _, _)| self.degree_in(*v)).collect();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut acc = MultiPoly::one();
            for ((v, num, den), &d) in subs.iter().zip(&degs) {
                let e = m.exp(*v);
                rest.0[v.index()] = 0;
                acc = &acc * &(&num.pow(e as u32) * &den.pow((d - e) as u32));
            }
            out = out + acc.mul_monomial(c, &rest);
        }
        out
    }

    pub fn eval_complex(&self, point: &[(Var, Complex64)]) -> Complex64 {
        let mut vals = [Complex64::new(0.0, 0.0); NVARS];
        for (v, x) in point {
            vals[v.index()] = *x;
        }
        let mut s = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = Complex64::new(q_to_f64(c), 0.0);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= vals[i].powi(e as i32);
                }
            }
            s += t;
        }
        s
    }

    pub fn eval_q(&self, point: &[(Var, Q)]) -> Q {
        let mut p = self.clone();
        for (v, x) in point {
            p = p.substitute_value(*v, x);
        }
        p.coeff(&Monomial::one())
    }

    /// Coefficients of `v^0, v^1, ..`, each free of `v`.
    pub fn coefficients_in(&self, v: Var) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let mut rest = *m;
            rest.0[v.index()] = 0;
            out[m.exp(v) as usize].add_term(rest, c.clone());
        }
        out
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(*first, |g, m| g.gcd(m)),
        }
    }

    pub fn div_monomial(&self, mono: &Monomial) -> Option<MultiPoly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.div(mono)?, c.clone());
        }
        Some(MultiPoly { terms })
    }

    /// Exact division; fails unless `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        let (lm, lc) = divisor.leading_term().ok_or(Error::InexactDivision)?;
        let (lm, lc) = (*lm, lc.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lm).ok_or(Error::InexactDivision)?;
            let qc = c / &lc;
            rem = rem - divisor.mul_monomial(&qc, &qm);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// `Q` with `Q^2 = self` and positive leading coefficient.
    pub fn sqrt(&self) -> Result<MultiPoly> {
        let Some((lm, lc)) = self.leading_term() else {
            return Ok(MultiPoly::zero());
        };
        let root_m = lm.sqrt().ok_or(Error::NotASquare)?;
        let root_c = q_sqrt(lc).ok_or(Error::NotASquare)?;
        let twice_lead = &root_c * q_from_int(2);
        let mut root = MultiPoly::term(root_c, root_m);
        let mut last = root_m;
        let mut rem = self - &(&root * &root);
        while let Some((m, c)) = rem.leading_term() {
            let next = m.div(&root_m).ok_or(Error::NotASquare)?;
            if next >= last {
                return Err(Error::NotASquare);
            }
            let term = MultiPoly::term(c / &twice_lead, next);
            rem = rem - &(&(&root * &term) * &MultiPoly::int(2)) - &term * &term;
            root = root + term;
            last = next;
        }
        Ok(root)
    }

    /// Multiplies by `-1` if needed so the leading coefficient is positive.
    pub fn normalize_sign(&self) -> MultiPoly {
        match self.leading_term() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&(Q::one() / c)),
            None => MultiPoly::zero(),
        }
    }

    /// The `c` with `self = c * other`, if any.
    pub fn scalar_ratio(&self, other: &MultiPoly) -> Option<Q> {
        match (self.leading_term(), other.leading_term()) {
            (None, None) => Some(Q::one()),
            (Some((m1, c1)), Some((m2, c2))) if m1 == m2 => {
                let r = c1 / c2;
                (other.scale(&r) == *self).then_some(r)
            }
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let exps: BTreeMap<&str, u16> = Var::ALL
                    .into_iter()
                    .filter(|v| m.exp(*v) > 0)
                    .map(|v| (v.name(), m.exp(v)))
                    .collect();
                json!({ "coeff": fmt_q(c), "exponents": exps })
            })
            .collect();
        json!({ "text": self.to_string(), "terms": terms })
    }

    /// Parses the canonical text form, e.g. `3 * y^4 - 4 * y^3 * t - t^2`.
    pub fn parse(s: &str) -> Result<MultiPoly> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::ParsePoly(s.to_string()));
        }
        let mut pieces = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if i > 0 && (ch == '+' || ch == '-') && !compact[..i].ends_with(['*', '^']) {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);
        let mut out = MultiPoly::zero();
        for piece in pieces {
            let (sign, body) = match piece.as_bytes().first() {
                Some(b'-') => (-Q::one(), &piece[1..]),
                Some(b'+') => (Q::one(), &piece[1..]),
                _ => (Q::one(), piece),
            };
            if body.is_empty() {
                return Err(Error::ParsePoly(s.to_string()));
            }
            let mut coeff = sign;
            let mut mono = Monomial::one();
            for factor in body.split('*') {
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff *= parse_q(factor).map_err(|_| Error::ParsePoly(s.to_string()))?;
                    continue;
                }
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u16>().map_err(|_| Error::ParsePoly(s.to_string()))?),
                    None => (factor, 1),
                };
                let v = Var::from_name(name).ok_or_else(|| Error::ParsePoly(s.to_string()))?;
                mono = mono.mul(&Monomial::var(v, e));
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let abs = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{}", fmt_q(&abs))?;
            for v in Var::ALL {
                match m.exp(v) {
                    0 => {}
                    1 => write!(f, " * {}", v.name())?,
                    e => write!(f, " * {}^{}", v.name(), e)?,
                }
            }
        }
        Ok(())
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c.clone());
        }
        r
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        let mut r = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, o: MultiPoly) -> MultiPoly {
                (&self).$f(&o)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, o: &MultiPoly) -> MultiPoly {
                (&self).$f(o)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $f(self, o: MultiPoly) -> MultiPoly {
                self.$f(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Shorthand for the ring variables used throughout.
pub fn y() -> MultiPoly {
    MultiPoly::var(Var::Y)
}

pub fn t() -> MultiPoly {
    MultiPoly::var(Var::T)
}

pub fn z() -> MultiPoly {
    MultiPoly::var(Var::Z)
}

pub fn c(n: i64) -> MultiPoly {
    MultiPoly::int(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s).unwrap()
    }

    #[test]
    fn graded_lex_leading_term() {
        let d = p("-t^2 + 6*t*y^2 - 4*y^3 - 4*t*y^3 + 3*y^4");
        let (m, c) = d.leading_term().unwrap();
        assert_eq!(*m, Monomial::var(Var::Y, 4));
        assert_eq!(*c, q_from_int(3));
    }

    #[test]
    fn text_round_trip() {
        let d = p("3*y^4 - 4*t*y^3 - 4*y^3 + 6*t*y^2 - t^2");
        assert_eq!(d.to_string(), "3 * y^4 - 4 * y^3 * t - 4 * y^3 + 6 * y^2 * t - 1 * t^2");
        assert_eq!(p(&d.to_string()), d);
        assert_eq!(p("1/2 * a0 - 3/4*u1^2"), p("-3/4*u1^2+1/2*a0"));
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert!(MultiPoly::parse("2 * w").is_err());
        assert!(MultiPoly::parse("y^").is_err());
        assert!(MultiPoly::parse("").is_err());
    }

    #[test]
    fn square_root_examples() {
        let s = (y() - c(1)).pow(2);
        assert_eq!(s.sqrt().unwrap(), y() - c(1));
        let f = p("y^4 - 4*y^3 + 6*t*y^2 - 4*t^2*y + t^2");
        assert_eq!(f.pow(2).sqrt().unwrap(), f);
        assert_eq!(f.pow(2).scale(&q_from_int(9)).sqrt().unwrap(), f.scale(&q_from_int(3)));
        assert_eq!(p("y^2 + t").sqrt(), Err(Error::NotASquare));
        assert_eq!(p("2*y^2").sqrt(), Err(Error::NotASquare));
        assert_eq!(p("y^2 + 2*y").sqrt(), Err(Error::NotASquare));
        assert_eq!((-f.pow(2)).sqrt(), Err(Error::NotASquare));
    }

    #[test]
    fn negative_root_normalized() {
        let r = (c(1) - y()).pow(2).sqrt().unwrap();
        assert_eq!(r, y() - c(1));
    }

    #[test]
    fn exact_division() {
        let a = p("y^2 - t");
        let b = p("y^2 - 2*y + t");
        assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        assert_eq!(a.div_exact(&b), Err(Error::InexactDivision));
        assert_eq!(a.div_exact(&MultiPoly::zero()), Err(Error::InexactDivision));
    }

    #[test]
    fn substitution_is_simultaneous() {
        // (t, y) -> (y, t) swap via fractions with unit denominators.
        let q = p("y^2 - t");
        let swapped = q.substitute_fractions(&[(Var::T, y(), c(1)), (Var::Y, t(), c(1))]);
        assert_eq!(swapped, p("t^2 - y"));
    }

    #[test]
    fn derivative_and_coefficients() {
        let q = p("3*y^4 - 4*t*y^3 + t^2");
        assert_eq!(q.derivative(Var::Y), p("12*y^3 - 12*t*y^2"));
        assert_eq!(q.derivative(Var::T), p("-4*y^3 + 2*t"));
        let cs = q.coefficients_in(Var::Y);
        assert_eq!(cs.len(), 5);
        assert_eq!(cs[0], p("t^2"));
        assert_eq!(cs[3], p("-4*t"));
    }

    #[test]
    fn scalar_ratio_detects_multiples() {
        let q = p("y^2 - t");
        assert_eq!(q.scale(&q_from_int(-5)).scalar_ratio(&q), Some(q_from_int(-5)));
        assert_eq!(p("y^2 + t").scalar_ratio(&q), None);
    }

    #[test]
    fn json_lists_terms_leading_first() {
        let v = p("y^2 - t").to_json();
        assert_eq!(v["terms"][0]["exponents"]["y"], 2);
        assert_eq!(v["terms"][1]["coeff"], "-1");
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((0u16..3, 0u16..3, -5i64..=5, 1i64..=3), 0..5).prop_map(|ts| {
            MultiPoly::from_terms(ts.into_iter().map(|(a, b, n, d)| {
                (
                    Monomial::var(Var::Y, a).mul(&Monomial::var(Var::T, b)),
                    crate::rational::q_frac(n, d),
                )
            }))
        })
    }

    proptest! {
        #[test]
        fn square_root_inverts_squaring(q in small_poly()) {
            let r = q.pow(2).sqrt().unwrap();
            prop_assert_eq!(r, q.normalize_sign());
        }

        #[test]
        fn division_inverts_multiplication(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        }

        #[test]
        fn text_form_round_trips(q in small_poly()) {
            prop_assert_eq!(MultiPoly::parse(&q.to_string()).unwrap(), q);
        }

        #[test]
        fn ring_laws(a in small_poly(), b in small_poly(), d in small_poly()) {
            prop_assert_eq!(&a * &(&b + &d), &(&a * &b) + &(&a * &d));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }
    }
}
