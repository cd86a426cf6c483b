//! Rational half-period vectors `(mu, nu)` under the level-2 congruence
//! subgroup, modulo `Z^2` and a global sign.
//!
//! A Picard solution is labelled by `p(tau) = mu + nu*tau`. Two labels give the
//! same multivalued solution exactly when they lie in one `Gamma[2]` orbit of
//! `+-`/`Z^2` classes, and the orbit length is the number of branches.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{fmt_r64, parse_r64};

pub type R64 = Ratio<i64>;

/// Orbits are only enumerated for denominators up to this bound.
pub const MAX_DENOMINATOR: i64 = 1000;

fn frac(x: R64) -> R64 {
    x - x.floor()
}

/// A class of `(mu, nu)` modulo `Z^2` and sign, stored by its canonical
/// representative in `[0, 1)^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPair {
    mu: R64,
    nu: R64,
}

impl RationalPair {
    pub fn new(mu: R64, nu: R64) -> Self {
        canonicalize(mu, nu)
    }

    pub fn from_ints(mu: (i64, i64), nu: (i64, i64)) -> Self {
        canonicalize(Ratio::new(mu.0, mu.1), Ratio::new(nu.0, nu.1))
    }

    pub fn parse(mu: &str, nu: &str) -> Result<Self> {
        Ok(canonicalize(parse_r64(mu)?, parse_r64(nu)?))
    }

    pub fn mu(&self) -> R64 {
        self.mu
    }

    pub fn nu(&self) -> R64 {
        self.nu
    }

    pub fn is_zero(&self) -> bool {
        self.mu == R64::from(0) && self.nu == R64::from(0)
    }

    /// Both components in `Z/2`: `p(tau)` is then congruent to a half-period.
    pub fn is_half_integer(&self) -> bool {
        *(self.mu * 2).denom() == 1 && *(self.nu * 2).denom() == 1
    }

    /// Least common denominator of the two components.
    pub fn denominator(&self) -> i64 {
        self.mu.denom().lcm(self.nu.denom())
    }
}

impl fmt::Display for RationalPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_r64(&self.mu), fmt_r64(&self.nu))
    }
}

impl Serialize for RationalPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [fmt_r64(&self.mu), fmt_r64(&self.nu)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [mu, nu] = <[String; 2]>::deserialize(d)?;
        RationalPair::parse(&mu, &nu).map_err(serde::de::Error::custom)
    }
}

/// Reduces `v` modulo `Z^2` and picks the lexicographically smaller of the
/// representatives of `v` and `-v`.
pub fn canonicalize(mu: R64, nu: R64) -> RationalPair {
    let plus = (frac(mu), frac(nu));
    let minus = (frac(-mu), frac(-nu));
    let (mu, nu) = plus.min(minus);
    RationalPair { mu, nu }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lemma1Data {
    /// Numerator shared by both components.
    #[serde(rename = "M")]
    pub big_m: i64,
    #[serde(rename = "N")]
    pub big_n: i64,
    pub m: i64,
    pub n: i64,
    pub standard: RationalPair,
}

impl Lemma1Data {
    /// Parity class of `(m, n)` as a label.
    pub fn parity(&self) -> &'static str {
        match (self.m.is_odd(), self.n.is_odd()) {
            (false, true) => "even/odd",
            (true, false) => "odd/even",
            (true, true) => "odd/odd",
            (false, false) => unreachable!("m and n are coprime"),
        }
    }
}

/// Writes `v = (mM/N, nM/N)` with `gcd(M, N) = gcd(m, n) = 1` and selects the
/// standard vector `(0, M/N)`, `(M/N, 0)` or `(M/N, M/N)` from the parity of
/// `(m, n)`.
pub fn lemma1_reduce(v: &RationalPair) -> Result<Lemma1Data> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let big_n = v.denominator();
    let mu_scaled = v.mu.numer() * (big_n / v.mu.denom());
    let nu_scaled = v.nu.numer() * (big_n / v.nu.denom());
    let big_m = mu_scaled.gcd(&nu_scaled);
    let (m, n) = (mu_scaled / big_m, nu_scaled / big_m);
    let s = Ratio::new(big_m, big_n);
    let zero = R64::from(0);
    let standard = match (m.is_odd(), n.is_odd()) {
        (false, true) => canonicalize(zero, s),
        (true, false) => canonicalize(s, zero),
        _ => canonicalize(s, s),
    };
    Ok(Lemma1Data {
        big_m,
        big_n,
        m,
        n,
        standard,
    })
}

/// An element of `Gamma[2]`: `ad - bc = 1`, diagonal odd, off-diagonal even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Gamma2Matrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Gamma2Matrix {
    pub const IDENTITY: Gamma2Matrix = Gamma2Matrix {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let ok = a * d - b * c == 1 && a.is_odd() && d.is_odd() && b.is_even() && c.is_even();
        if ok {
            Ok(Gamma2Matrix { a, b, c, d })
        } else {
            Err(Error::NotGamma2 { a, b, c, d })
        }
    }

    /// `[[1, 2], [0, 1]]`, `[[1, 0], [2, 1]]` and their inverses. Together with
    /// `-I` (absorbed by the sign quotient) they generate `Gamma[2]`.
    pub fn generators() -> [Gamma2Matrix; 4] {
        [
            Gamma2Matrix { a: 1, b: 2, c: 0, d: 1 },
            Gamma2Matrix { a: 1, b: 0, c: 2, d: 1 },
            Gamma2Matrix { a: 1, b: -2, c: 0, d: 1 },
            Gamma2Matrix { a: 1, b: 0, c: -2, d: 1 },
        ]
    }

    pub fn mul(&self, o: &Gamma2Matrix) -> Gamma2Matrix {
        Gamma2Matrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }
}

/// Column-vector action `A (mu, nu)^T`, followed by canonicalization.
pub fn act(m: &Gamma2Matrix, v: &RationalPair) -> Result<RationalPair> {
    let m = Gamma2Matrix::new(m.a, m.b, m.c, m.d)?;
    Ok(act_unchecked(&m, v))
}

fn act_unchecked(m: &Gamma2Matrix, v: &RationalPair) -> RationalPair {
    let (mu, nu) = (v.mu, v.nu);
    canonicalize(
        mu * m.a + nu * m.b,
        mu * m.c + nu * m.d,
    )
}

/// Breadth-first closure of `{v}` under the generators.
pub fn enumerate_orbit(v: &RationalPair) -> Result<BTreeSet<RationalPair>> {
    let den = v.denominator();
    if den > MAX_DENOMINATOR {
        return Err(Error::DenominatorTooLarge(den));
    }
    let gens = Gamma2Matrix::generators();
    let mut seen = BTreeSet::from([*v]);
    let mut queue = VecDeque::from([*v]);
    while let Some(w) = queue.pop_front() {
        for g in &gens {
            let next = act_unchecked(g, &w);
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

pub fn same_orbit(v1: &RationalPair, v2: &RationalPair) -> Result<bool> {
    if v1.denominator() != v2.denominator() {
        return Ok(false);
    }
    Ok(enumerate_orbit(v1)?.contains(v2))
}

/// Partitions the classes `(a/N, b/N)` with `gcd(a, b, N) = 1` into orbits and
/// returns the sorted orbit sizes.
pub fn orbit_partition(big_n: i64) -> Result<Vec<usize>> {
    Ok(orbits_of_denominator(big_n)?
        .iter()
        .map(BTreeSet::len)
        .collect())
}

/// The orbits themselves, sorted by size and then by least element.
pub fn orbits_of_denominator(big_n: i64) -> Result<Vec<BTreeSet<RationalPair>>> {
    if big_n < 2 {
        return Err(Error::ZeroVector);
    }
    if big_n > MAX_DENOMINATOR {
        return Err(Error::DenominatorTooLarge(big_n));
    }
    let mut remaining: BTreeSet<RationalPair> = eligible_classes(big_n).collect();
    let mut orbits = Vec::new();
    while let Some(&v) = remaining.iter().next() {
        let orbit = enumerate_orbit(&v)?;
        for w in &orbit {
            remaining.remove(w);
        }
        orbits.push(orbit);
    }
    orbits.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.first().cmp(&y.first())));
    Ok(orbits)
}

/// Canonical classes of exact denominator `N`.
pub fn eligible_classes(big_n: i64) -> impl Iterator<Item = RationalPair> {
    (0..big_n)
        .flat_map(move |a| (0..big_n).map(move |b| (a, b)))
        .filter(move |&(a, b)| a.gcd(&b).gcd(&big_n) == 1)
        .map(move |(a, b)| canonicalize(Ratio::new(a, big_n), Ratio::new(b, big_n)))
        .collect::<BTreeSet<_>>()
        .into_iter()
}

/// The matrix `[[-N, N+1], [-1-N^2, 1+N(N+1)]]` sending `(M/N, 0)` to the class
/// of `(0, M/N)` when `N` is odd.
pub fn lemma2_matrix(big_n: i64) -> Result<Gamma2Matrix> {
    if big_n < 1 || big_n.is_even() {
        return Err(Error::EvenDenominator(big_n));
    }
    Gamma2Matrix::new(-big_n, big_n + 1, -1 - big_n * big_n, 1 + big_n * (big_n + 1))
}
