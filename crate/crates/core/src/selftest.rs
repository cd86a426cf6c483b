//! Built-in consistency checks covering every module.
//!
//! Checks that depend on the curve equations read them from a [`CurveCatalog`],
//! so a corrupted catalog is caught.

use std::time::Instant;

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curves::{
    derive_quartics, int_alpha, kummer_condition, master_poly, p0_poly, tripling_f_poly,
    tripling_g_poly, verify_kummer_equivalence, verify_uniformization_of, CurveId, Line,
};
use crate::elliptic::{Elliptic, TauPoint};
use crate::error::Result;
use crate::ffield::is_irreducible;
use crate::orbit::{orbit_partition, same_orbit, RationalPair};
use crate::params::AlphaTuple;
use crate::poly::{c, t, y, MultiPoly, Var};
use crate::rational::{q_frac, Q};
use crate::verifier::{classify_with, verify_poly, Kind, SampleSpec};

pub const SEED: u64 = 0x5eed_0006;

/// Equations of the seven canonical curves.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveCatalog {
    polys: [MultiPoly; 7],
}

impl Default for CurveCatalog {
    fn default() -> Self {
        CurveCatalog {
            polys: CurveId::ALL.map(CurveId::poly),
        }
    }
}

impl CurveCatalog {
    pub fn get(&self, id: CurveId) -> &MultiPoly {
        &self.polys[id as usize]
    }

    pub fn with(mut self, id: CurveId, p: MultiPoly) -> Self {
        self.polys[id as usize] = p;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub millis: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfTestReport {
    pub schema_version: u32,
    pub passed: bool,
    pub checks: Vec<Check>,
}

type CheckFn = fn(&CurveCatalog) -> Result<(bool, String)>;

pub const CHECKS: [(&str, CheckFn); 12] = [
    ("master_poly_three_factors", master_three_factors),
    ("double_line_cofactor", double_line_cofactor),
    ("kummer_equivalence", kummer_equivalence),
    ("tripling_quartics", tripling_quartics),
    ("uniformizations", uniformizations),
    ("orbit_counts", orbit_counts),
    ("elliptic_engine", elliptic_engine),
    ("tripling_numeric", tripling_numeric),
    ("reduction_identity", reduction_identity),
    ("ode_residuals", ode_residuals),
    ("classification", classification),
    ("cross_module", cross_module),
];

pub fn run(catalog: &CurveCatalog) -> SelfTestReport {
    let checks: Vec<Check> = CHECKS
        .iter()
        .map(|&(name, f)| {
            let start = Instant::now();
            let (passed, detail) = f(catalog).unwrap_or_else(|e| (false, format!("error: {e}")));
            Check {
                name,
                passed,
                detail,
                millis: start.elapsed().as_secs_f64() * 1e3,
            }
        })
        .collect();
    SelfTestReport {
        schema_version: 1,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

fn random_q(r: &mut ChaCha8Rng) -> Q {
    q_frac(r.gen_range(-20..=20), r.gen_range(1..=9))
}

fn random_tau(r: &mut ChaCha8Rng) -> Result<TauPoint> {
    TauPoint::new(r.gen_range(-0.5..0.5), r.gen_range(0.5..3.0))
}

/// `z = a + b tau` with `a, b` away from the lattice.
fn random_z(r: &mut ChaCha8Rng, tau: &TauPoint) -> Complex64 {
    let a: f64 = r.gen_range(0.05..0.95);
    let b: f64 = r.gen_range(0.05..0.95);
    a + b * tau.value()
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

pub fn sample_taus() -> Vec<TauPoint> {
    [(0.0, 1.0), (0.3, 0.8), (-0.4, 1.5), (0.1, 2.5), (0.45, 0.6)]
        .into_iter()
        .map(|(re, im)| TauPoint::new(re, im).expect("upper half plane"))
        .collect()
}

fn master_three_factors(cat: &CurveCatalog) -> Result<(bool, String)> {
    let m = master_poly(&int_alpha([1, 1, 1, 1]));
    let prod = cat.get(CurveId::A) * cat.get(CurveId::B) * cat.get(CurveId::C);
    let defect = &m - &prod;
    Ok((defect.is_zero(), format!("defect terms: {}", defect.num_terms())))
}

fn double_line_cofactor(_: &CurveCatalog) -> Result<(bool, String)> {
    let mut r = rng();
    let sq = (y() - t()).pow(2);
    for _ in 0..20 {
        let (a0, a1, a2) = (random_q(&mut r), random_q(&mut r), random_q(&mut r));
        let m = master_poly(&AlphaTuple([a0.clone(), a1.clone(), a2.clone(), Q::zero()]));
        if m.div_exact(&sq)? != p0_poly(&a0, &a1, &a2) {
            return Ok((false, format!("quotient mismatch at ({a0}, {a1}, {a2})")));
        }
    }
    let one = Q::from_integer(1.into());
    let cert = is_irreducible(&p0_poly(&one, &one, &one));
    Ok((cert.is_irreducible(), format!("20 quotients exact; P0(1,1,1): {cert:?}")))
}

fn kummer_equivalence(_: &CurveCatalog) -> Result<(bool, String)> {
    if !verify_kummer_equivalence() {
        return Ok((false, "sign product differs from defect".into()));
    }
    let mut r = rng();
    for line in Line::ALL {
        for _ in 0..50 {
            let (p, q) = (random_q(&mut r), random_q(&mut r));
            let mut a: [Q; 4] = std::array::from_fn(|_| Q::zero());
            for (k, &(i, j)) in line.pairs().iter().enumerate() {
                let v = if k == 0 { &p } else { &q };
                a[i] = v.clone();
                a[j] = v.clone();
            }
            let a = AlphaTuple(a);
            if !kummer_condition(&a).0 {
                return Ok((false, format!("defect nonzero on {line:?} at {a}")));
            }
        }
    }
    Ok((true, "identity in u; 150 line points".into()))
}

fn tripling_quartics(cat: &CurveCatalog) -> Result<(bool, String)> {
    let q = derive_quartics()?;
    let mut bad = Vec::new();
    for id in CurveId::QUARTICS {
        if q.get(id) != Some(cat.get(id)) {
            bad.push(id.name());
        }
    }
    // The plain differences f - g and f - t g are not squares after removing the
    // linear factor; the squares come from y f^2 - g^2 and y f^2 - t g^2.
    let (f, g) = (tripling_f_poly(), tripling_g_poly());
    let literal = (&f - &g)
        .div_exact(&(y() - c(1)))
        .and_then(|p| p.sqrt())
        .is_ok();
    Ok((
        bad.is_empty() && !literal,
        format!("mismatched: {bad:?}; (f-g)/(y-1) square: {literal}"),
    ))
}

fn uniformizations(cat: &CurveCatalog) -> Result<(bool, String)> {
    let bad: Vec<&str> = CurveId::QUARTICS
        .into_iter()
        .filter(|&id| !verify_uniformization_of(id, cat.get(id)))
        .map(CurveId::name)
        .collect();
    Ok((bad.is_empty(), format!("failing: {bad:?}")))
}

fn orbit_counts(_: &CurveCatalog) -> Result<(bool, String)> {
    let want: [(i64, Vec<usize>); 4] = [(3, vec![4]), (4, vec![2, 2, 2]), (5, vec![12]), (6, vec![4, 4, 4])];
    for (n, w) in want {
        let got = orbit_partition(n)?;
        if got != w {
            return Ok((false, format!("N={n}: {got:?}")));
        }
    }
    let mut pairs = 0;
    for n in 2..=12i64 {
        for m in 1..n {
            if num_integer::Integer::gcd(&m, &n) != 1 {
                continue;
            }
            let v = RationalPair::from_ints((m, n), (0, 1));
            let merged = same_orbit(&v, &RationalPair::from_ints((0, 1), (m, n)))?
                && same_orbit(&v, &RationalPair::from_ints((m, n), (m, n)))?;
            let split = !same_orbit(&v, &RationalPair::from_ints((0, 1), (m, n)))?
                && !same_orbit(&v, &RationalPair::from_ints((m, n), (m, n)))?;
            if (n % 2 == 1 && !merged) || (n % 2 == 0 && !split) {
                return Ok((false, format!("parity rule fails at {m}/{n}")));
            }
            pairs += 1;
        }
    }
    Ok((true, format!("partitions match; {pairs} coprime (M, N) checked")))
}

fn elliptic_engine(_: &CurveCatalog) -> Result<(bool, String)> {
    let ell = Elliptic::default();
    let mut r = rng();
    let (mut de, mut per, mut sum, mut half) = (0f64, 0f64, 0f64, 0f64);
    for _ in 0..50 {
        let tau = random_tau(&mut r)?;
        let z = random_z(&mut r, &tau);
        let inv = ell.invariants_at(&tau)?;
        let e = inv.e();
        let p = ell.wp(z, &tau)?;
        let dp = ell.wp_prime(z, &tau)?;
        let cubic = 4.0 * (p - e[0]) * (p - e[1]) * (p - e[2]);
        de = de.max(rel(dp * dp, cubic));
        per = per
            .max(rel(ell.wp(z + 1.0, &tau)?, p))
            .max(rel(ell.wp(z + tau.value(), &tau)?, p));
        sum = sum.max((e[0] + e[1] + e[2]).norm());
        let hp = tau.half_periods();
        for k in 0..3 {
            half = half.max(rel(ell.wp(hp[k + 1], &tau)?, e[k]));
        }
    }
    Ok((
        de < 1e-9 && per < 1e-9 && sum < 1e-12 && half < 1e-9,
        format!("ode {de:.1e}, periods {per:.1e}, sum e {sum:.1e}, half periods {half:.1e}"),
    ))
}

fn tripling_numeric(_: &CurveCatalog) -> Result<(bool, String)> {
    let ell = Elliptic::default();
    let mut r = rng();
    let mut worst = 0f64;
    let mut done = 0;
    while done < 50 {
        let tau = random_tau(&mut r)?;
        let z = random_z(&mut r, &tau);
        match ell.triple_check(z, &tau) {
            Ok((lhs, rhs)) => {
                worst = worst.max(rel(lhs, rhs));
                done += 1;
            }
            // 3z landed on a lattice point or g vanished; draw again.
            Err(_) => continue,
        }
    }
    Ok((worst < 1e-8, format!("max relative error {worst:.1e}")))
}

fn reduction_identity(_: &CurveCatalog) -> Result<(bool, String)> {
    let ell = Elliptic::default();
    let v = RationalPair::from_ints((1, 4), (0, 1));
    let (mut on, mut off) = (0f64, f64::INFINITY);
    for tau in sample_taus() {
        on = on.max(ell.reduction_residual(&[0.7, 0.7, -1.3, -1.3], &v, &tau)?.norm());
        off = off.min(ell.reduction_residual(&[1.0, 2.0, 3.0, 4.0], &v, &tau)?.norm());
    }
    Ok((on < 1e-8 && off > 1e-3, format!("(c,c,d,d) max {on:.1e}; (1,2,3,4) min {off:.1e}")))
}

/// The parameter tuple each canonical curve solves.
pub fn canonical_alpha(id: CurveId) -> AlphaTuple {
    let e = |a: [i64; 4]| AlphaTuple(a.map(|n| q_frac(n, 8)));
    match id {
        CurveId::A | CurveId::B | CurveId::C => e([1, 1, 1, 1]),
        CurveId::D => e([9, 1, 1, 1]),
        CurveId::E => e([1, 9, 1, 1]),
        CurveId::F => e([1, 1, 9, 1]),
        CurveId::G => e([1, 1, 1, 9]),
    }
}

/// Curve and parameter combinations that must not solve the equation.
pub fn mismatched_controls() -> Vec<(CurveId, AlphaTuple)> {
    vec![
        (CurveId::A, int_alpha([9, 1, 1, 1])),
        (CurveId::B, int_alpha([1, 2, 3, 4])),
        (CurveId::D, canonical_alpha(CurveId::A)),
        (CurveId::D, canonical_alpha(CurveId::E)),
        (CurveId::E, canonical_alpha(CurveId::F)),
        (CurveId::F, canonical_alpha(CurveId::G)),
        (CurveId::G, canonical_alpha(CurveId::D)),
    ]
}

fn ode_residuals(cat: &CurveCatalog) -> Result<(bool, String)> {
    let spec = SampleSpec::default();
    let mut worst_on = 0f64;
    for id in CurveId::ALL {
        let r = verify_poly(id.name(), cat.get(id), &canonical_alpha(id).to_pvi(), &spec)?;
        worst_on = worst_on.max(r.max_residual);
    }
    let mut best_off = f64::INFINITY;
    for (id, a) in mismatched_controls() {
        let r = verify_poly(id.name(), cat.get(id), &a.to_pvi(), &spec)?;
        best_off = best_off.min(r.max_residual);
    }
    Ok((
        worst_on < 1e-8 && best_off > 1e-3,
        format!("pairings max {worst_on:.1e}; controls min {best_off:.1e}"),
    ))
}

fn classification(_: &CurveCatalog) -> Result<(bool, String)> {
    use CurveId::*;
    let spec = SampleSpec {
        count: 12,
        ..Default::default()
    };
    let e = |a: [i64; 4]| AlphaTuple(a.map(|n| q_frac(n, 8)));
    let cases: Vec<(AlphaTuple, Kind, Vec<CurveId>)> = vec![
        (int_alpha([0; 4]), Kind::PicardFamily, vec![]),
        (e([1, 1, 3, 3]), Kind::FiniteList, vec![A]),
        (e([1, 3, 1, 3]), Kind::FiniteList, vec![B]),
        (e([1, 3, 3, 1]), Kind::FiniteList, vec![C]),
        (e([9, 1, 1, 1]), Kind::FiniteList, vec![D]),
        (e([1, 9, 1, 1]), Kind::FiniteList, vec![E]),
        (e([1, 1, 9, 1]), Kind::FiniteList, vec![F]),
        (e([1, 1, 1, 9]), Kind::FiniteList, vec![G]),
        (int_alpha([1, 2, 3, 4]), Kind::Empty, vec![]),
    ];
    for (a, kind, curves) in cases {
        let r = classify_with(&a, true, &spec);
        if r.kind != kind || r.curves != curves || r.verified() != Some(true) {
            return Ok((false, format!("{a}: {:?} {:?} verified={:?}", r.kind, r.curves, r.verified())));
        }
    }
    Ok((true, "9 inputs agree with rules and residuals".into()))
}

fn cross_module(cat: &CurveCatalog) -> Result<(bool, String)> {
    let ell = Elliptic::default();
    let v = RationalPair::from_ints((1, 4), (0, 1));
    let m = master_poly(&e_line());
    let mut worst = 0f64;
    for tau in sample_taus() {
        let (t, y) = ell.picard_eval(&v, &tau)?;
        let at = [(Var::Y, y), (Var::T, t)];
        worst = worst
            .max(m.eval_complex(&at).norm())
            .max(cat.get(CurveId::A).eval_complex(&at).norm());
    }
    Ok((worst < 1e-6, format!("max |P| {worst:.1e}")))
}

fn e_line() -> AlphaTuple {
    int_alpha([1, 1, 2, 2])
}
