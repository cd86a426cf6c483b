//! Irreducibility certificates for bivariate polynomials in `(y, t)`.
//!
//! If `P` is primitive in `y` over `Q[t]` and, for some integer `t0` and prime
//! `p`, the image of `P(y, t0)` in `F_p[y]` keeps its degree and is irreducible,
//! then `P` has no factorization into two factors of positive `y`-degree. The
//! finite-field test is exhaustive trial division by every monic polynomial of
//! degree at most half the degree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::curves::{p0_poly, CurveId};
use crate::poly::{c, t, y, MultiPoly, Var};
use crate::rational::{q_from_int, Q};

pub const MAX_PRIME: u64 = 97;
const T0_CANDIDATES: [i64; 16] = [2, 3, -1, -2, 5, 4, -3, 7, 6, -5, 10, -7, 11, 13, -4, 17];

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Irreducibility {
    Irreducible { t0: i64, prime: u64 },
    Reducible { factor: String, cofactor: String },
    Unknown,
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible { .. })
    }
}

/// Dense polynomial over `F_p`, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn inv(&self, a: u64) -> u64 {
        // Fermat: a^(p-2).
        let (mut base, mut e, mut acc) = (a % self.p, self.p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }

    /// Remainder of `self` modulo the monic `d`.
    fn rem_monic(&self, d: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut r = self.coeffs.clone();
        let dd = d.len() - 1;
        while r.len() > dd {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dd;
            if lead != 0 {
                for (i, &dc) in d.iter().enumerate() {
                    r[shift + i] = (r[shift + i] + p - lead * dc % p) % p;
                }
            }
            r.pop();
        }
        r
    }

    /// Exhaustive: no monic polynomial of degree `1..=deg/2` divides `self`.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        let p = self.p;
        let lead_inv = self.inv(self.coeffs[n]);
        let monic = FpPoly {
            p,
            coeffs: self.coeffs.iter().map(|c| c * lead_inv % p).collect(),
        };
        for d in 1..=n / 2 {
            let mut low = vec![0u64; d];
            loop {
                let mut div = low.clone();
                div.push(1);
                if monic.rem_monic(&div).iter().all(|&c| c == 0) {
                    return false;
                }
                // Odometer over the d lower coefficients.
                let mut i = 0;
                while i < d {
                    low[i] += 1;
                    if low[i] < p {
                        break;
                    }
                    low[i] = 0;
                    i += 1;
                }
                if i == d {
                    break;
                }
            }
        }
        true
    }
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
}

/// Univariate polynomial in `t` with rational coefficients, lowest first.
fn to_dense_t(p: &MultiPoly) -> Vec<Q> {
    p.coefficients_in(Var::T)
        .into_iter()
        .map(|c| c.coeff(&crate::poly::Monomial::one()))
        .collect()
}

fn trim(v: &mut Vec<Q>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn dense_rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db {
        let f = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &f * bc;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn dense_gcd(a: Vec<Q>, b: Vec<Q>) -> Vec<Q> {
    let (mut a, mut b) = (a, b);
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = dense_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Content of `P` viewed in `Q[t][y]`, as a monic polynomial in `t`.
pub fn content_in_y(p: &MultiPoly) -> MultiPoly {
    let g = p
        .coefficients_in(Var::Y)
        .iter()
        .map(to_dense_t)
        .fold(Vec::new(), dense_gcd);
    let Some(lead) = g.last().cloned() else {
        return MultiPoly::zero();
    };
    g.iter().enumerate().fold(MultiPoly::zero(), |acc, (i, c)| {
        acc + t().pow(i as u32).scale(&(c / &lead))
    })
}

fn candidate_factors() -> Vec<MultiPoly> {
    let one = q_from_int(1);
    let mut v = vec![y(), y() - c(1), y() - t()];
    v.extend(CurveId::ALL.map(CurveId::poly));
    v.push(p0_poly(&one, &one, &one));
    v
}

/// Integer coefficients of `L * P(y, t0)` in `y`, lowest first.
fn specialize(p: &MultiPoly, t0: i64) -> Vec<BigInt> {
    let spec = p.substitute_value(Var::T, &q_from_int(t0));
    let cs: Vec<Q> = spec
        .coefficients_in(Var::Y)
        .iter()
        .map(|c| c.coeff(&crate::poly::Monomial::one()))
        .collect();
    let lcm = cs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    cs.iter()
        .map(|c| (c * Q::from_integer(lcm.clone())).to_integer())
        .collect()
}

fn reduce_mod(coeffs: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    coeffs
        .iter()
        .map(|c| {
            let r = c.mod_floor(&pb);
            r.to_u64().expect("residue fits in u64")
        })
        .collect()
}

/// Searches for an irreducibility certificate `(t0, p)` or a factor witness.
pub fn is_irreducible(p: &MultiPoly) -> Irreducibility {
    let only_yt = p.variables().iter().all(|v| matches!(v, Var::Y | Var::T));
    let deg = p.degree_in(Var::Y) as usize;
    if p.is_zero() || !only_yt || deg == 0 || deg > 6 {
        return Irreducibility::Unknown;
    }

    let content = content_in_y(p);
    if !content.is_constant() {
        let cof = p.div_exact(&content).expect("content divides");
        return Irreducibility::Reducible {
            factor: content.to_string(),
            cofactor: cof.to_string(),
        };
    }
    for cand in candidate_factors() {
        if let Ok(cof) = p.div_exact(&cand) {
            if !cof.is_constant() {
                return Irreducibility::Reducible {
                    factor: cand.to_string(),
                    cofactor: cof.to_string(),
                };
            }
        }
    }

    let specs: Vec<(i64, Vec<BigInt>)> = T0_CANDIDATES.iter().map(|&t0| (t0, specialize(p, t0))).collect();
    for prime in primes_up_to(MAX_PRIME) {
        for (t0, ints) in &specs {
            let fp = FpPoly::new(prime, reduce_mod(ints, prime));
            if fp.degree() == Some(deg) && fp.is_irreducible() {
                return Irreducibility::Irreducible { t0: *t0, prime };
            }
        }
    }
    Irreducibility::Unknown
}

/// Re-checks a claimed certificate from scratch.
pub fn check_certificate(p: &MultiPoly, t0: i64, prime: u64) -> bool {
    let deg = p.degree_in(Var::Y) as usize;
    let fp = FpPoly::new(prime, reduce_mod(&specialize(p, t0), prime));
    content_in_y(p).is_constant() && fp.degree() == Some(deg) && fp.is_irreducible()
}
