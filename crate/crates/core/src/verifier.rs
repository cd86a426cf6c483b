//! Residual certification of algebraic curves against Painleve VI and the
//! rule-based classification of exceptional solutions.
//!
//! A curve `P(y, t) = 0` is checked by sampling `t` on a loop inside
//! `C \ {0, 1}`, solving for every branch `y`, computing the 2-jet of the branch
//! by implicit differentiation and evaluating the ODE residual.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::curves::{CurveId, Line};
use crate::elliptic::{Elliptic, TauPoint};
use crate::error::{Error, Result};
use crate::orbit::{same_orbit, RationalPair};
use crate::params::{AlphaTuple, ComplexValue, PviParams};
use crate::poly::{MultiPoly, Var};
use crate::rational::{q_from_int, Q};
use crate::roots::poly_roots;

/// Residuals below this certify a solution.
pub const ACCEPT: f64 = 1e-8;
/// Residuals above this reject a candidate.
pub const REJECT: f64 = 1e-3;
/// `|dP/dy|` below this marks a sample as singular.
pub const SINGULAR: f64 = 1e-8;
/// Distance from `{0, 1, t}` below which a branch value is skipped.
pub const EXCLUDED: f64 = 1e-9;

/// A curve together with the partial derivatives needed for 2-jets.
#[derive(Debug, Clone)]
pub struct CurveJet {
    pub poly: MultiPoly,
    py: MultiPoly,
    pt: MultiPoly,
    pyy: MultiPoly,
    pty: MultiPoly,
    ptt: MultiPoly,
}

impl CurveJet {
    pub fn new(poly: MultiPoly) -> Self {
        let py = poly.derivative(Var::Y);
        let pt = poly.derivative(Var::T);
        CurveJet {
            pyy: py.derivative(Var::Y),
            pty: pt.derivative(Var::Y),
            ptt: pt.derivative(Var::T),
            py,
            pt,
            poly,
        }
    }

    /// `(y', y'')` along the branch through `(t, y)`.
    pub fn derivs(&self, t: Complex64, y: Complex64) -> Result<(Complex64, Complex64)> {
        let at = [(Var::Y, y), (Var::T, t)];
        let py = self.py.eval_complex(&at);
        if py.norm() < SINGULAR {
            return Err(Error::SingularPoint(py.norm()));
        }
        let y1 = -self.pt.eval_complex(&at) / py;
        let y2 = -(self.ptt.eval_complex(&at)
            + 2.0 * self.pty.eval_complex(&at) * y1
            + self.pyy.eval_complex(&at) * y1 * y1)
            / py;
        Ok((y1, y2))
    }

    /// Branch values `y` of `P(., t) = 0`.
    pub fn branches(&self, t: Complex64) -> Vec<Complex64> {
        let coeffs: Vec<Complex64> = self
            .poly
            .coefficients_in(Var::Y)
            .iter()
            .map(|c| c.eval_complex(&[(Var::T, t)]))
            .collect();
        poly_roots(&coeffs)
    }
}

pub fn implicit_derivs(p: &MultiPoly, t: Complex64, y: Complex64) -> Result<(Complex64, Complex64)> {
    CurveJet::new(p.clone()).derivs(t, y)
}

/// `|y'' - RHS|` for the Painleve VI equation with the given jet.
pub fn pvi_residual(
    params: &PviParams,
    t: Complex64,
    y: Complex64,
    y1: Complex64,
    y2: Complex64,
) -> Result<f64> {
    pvi_residual_c(&params.to_complex(), t, y, y1, y2)
}

pub fn pvi_residual_c(
    params: &[Complex64; 4],
    t: Complex64,
    y: Complex64,
    y1: Complex64,
    y2: Complex64,
) -> Result<f64> {
    if t.norm() < EXCLUDED || (t - 1.0).norm() < EXCLUDED {
        return Err(Error::ExcludedPoint("t in {0, 1}"));
    }
    if y.norm() < EXCLUDED || (y - 1.0).norm() < EXCLUDED || (y - t).norm() < EXCLUDED {
        return Err(Error::ExcludedPoint("y in {0, 1, t}"));
    }
    let [alpha, beta, gamma, delta] = *params;
    let one = Complex64::new(1.0, 0.0);
    let rhs = 0.5 * (one / y + one / (y - 1.0) + one / (y - t)) * y1 * y1
        - (one / t + one / (t - 1.0) + one / (y - t)) * y1
        + y * (y - 1.0) * (y - t) / (t * t * (t - 1.0) * (t - 1.0))
            * (alpha
                + beta * t / (y * y)
                + gamma * (t - 1.0) / ((y - 1.0) * (y - 1.0))
                + delta * t * (t - 1.0) / ((y - t) * (y - t)));
    Ok((y2 - rhs).norm())
}

/// Sample loop `t = center + radius * exp(i theta_k)`,
/// `theta_k = 2 pi (k + 1/2) / count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSpec {
    pub count: usize,
    pub center: Complex64,
    pub radius: f64,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            count: 25,
            center: Complex64::new(0.5, 0.0),
            radius: 0.25,
        }
    }
}

impl SampleSpec {
    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.count).map(move |k| {
            let theta = std::f64::consts::TAU * (k as f64 + 0.5) / self.count as f64;
            self.center + Complex64::from_polar(self.radius, theta)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub t: ComplexValue,
    pub y: ComplexValue,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedSample {
    pub t: ComplexValue,
    pub y: ComplexValue,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Accepted,
    Rejected,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub schema_version: u32,
    pub curve: String,
    pub params: [String; 4],
    pub samples: Vec<Sample>,
    pub max_residual: f64,
    pub median_residual: f64,
    pub skipped: usize,
    pub skipped_samples: Vec<SkippedSample>,
    pub verdict: Verdict,
}

impl ResidualReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t_re,t_im,y_re,y_im,residual\n");
        for smp in &self.samples {
            let _ = writeln!(
                s,
                "{:e},{:e},{:e},{:e},{:e}",
                smp.t.re, smp.t.im, smp.y.re, smp.y.im, smp.residual
            );
        }
        s
    }
}

pub fn verdict_for(max_residual: f64) -> Verdict {
    if max_residual < ACCEPT {
        Verdict::Accepted
    } else if max_residual > REJECT {
        Verdict::Rejected
    } else {
        Verdict::Inconclusive
    }
}

/// Residuals of every branch of `P = 0` over the sample loop.
pub fn verify_poly(
    label: &str,
    poly: &MultiPoly,
    params: &PviParams,
    spec: &SampleSpec,
) -> Result<ResidualReport> {
    let jet = CurveJet::new(poly.clone());
    let pc = params.to_complex();
    let mut samples = Vec::new();
    let mut skipped_samples = Vec::new();
    for t in spec.points() {
        for y in jet.branches(t) {
            let skip = |reason: String| SkippedSample {
                t: t.into(),
                y: y.into(),
                reason,
            };
            let r = jet
                .derivs(t, y)
                .and_then(|(y1, y2)| pvi_residual_c(&pc, t, y, y1, y2));
            match r {
                Ok(residual) => samples.push(Sample {
                    t: t.into(),
                    y: y.into(),
                    residual,
                }),
                Err(e) => skipped_samples.push(skip(e.to_string())),
            }
        }
    }
    if samples.is_empty() {
        return Err(Error::NoValidSamples);
    }
    let mut sorted: Vec<f64> = samples.iter().map(|s| s.residual).collect();
    sorted.sort_by(f64::total_cmp);
    let max_residual = *sorted.last().unwrap();
    let median_residual = sorted[sorted.len() / 2];
    Ok(ResidualReport {
        schema_version: 1,
        curve: label.to_string(),
        params: params.to_strings(),
        samples,
        max_residual,
        median_residual,
        skipped: skipped_samples.len(),
        skipped_samples,
        verdict: verdict_for(max_residual),
    })
}

pub fn verify_curve(curve: CurveId, params: &PviParams, spec: &SampleSpec) -> Result<ResidualReport> {
    verify_poly(curve.name(), &curve.poly(), params, spec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    PicardFamily,
    FiniteList,
    Empty,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveCheck {
    pub curve: CurveId,
    pub expected: bool,
    pub max_residual: f64,
    pub verdict: Verdict,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationResult {
    pub kind: Kind,
    pub curves: Vec<CurveId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub picard_note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Vec<CurveCheck>>,
}

impl ClassificationResult {
    /// With verification, every canonical curve behaved as predicted.
    pub fn verified(&self) -> Option<bool> {
        self.verification
            .as_ref()
            .map(|v| v.iter().all(|c| c.agrees))
    }
}

fn nine_to_one(a: &[Q; 4], big: usize) -> bool {
    let nine = q_from_int(9);
    !a[big].is_zero()
        && (0..4)
            .filter(|&j| j != big)
            .all(|j| &a[j] * &nine == a[big])
}

/// Curves listed by the classification for `alpha` (empty for the zero tuple).
pub fn rule_curves(alpha: &AlphaTuple) -> Vec<CurveId> {
    if alpha.is_zero() {
        return Vec::new();
    }
    let mut out: BTreeSet<CurveId> = Line::ALL
        .into_iter()
        .filter(|l| l.contains(alpha))
        .map(Line::curve)
        .collect();
    for (big, id) in CurveId::QUARTICS.into_iter().enumerate() {
        if nine_to_one(&alpha.0, big) {
            out.insert(id);
        }
    }
    out.into_iter().collect()
}

pub fn classify(alpha: &AlphaTuple, verify: bool) -> ClassificationResult {
    classify_with(alpha, verify, &SampleSpec::default())
}

pub fn classify_with(alpha: &AlphaTuple, verify: bool, spec: &SampleSpec) -> ClassificationResult {
    let picard = alpha.is_zero();
    let curves = rule_curves(alpha);
    let kind = if picard {
        Kind::PicardFamily
    } else if curves.is_empty() {
        Kind::Empty
    } else {
        Kind::FiniteList
    };
    let picard_note = picard.then(|| {
        "every (mu, nu) outside (Z/2)^2 gives a Picard solution; \
         the curves A..G are the ones with at most 6 branches"
            .to_string()
    });
    let verification = verify.then(|| {
        let params = alpha.to_pvi();
        CurveId::ALL
            .into_iter()
            .map(|id| {
                // At the zero tuple every Picard solution, hence every canonical curve,
                // satisfies the equation.
                let expected = picard || curves.contains(&id);
                match verify_curve(id, &params, spec) {
                    Ok(r) => CurveCheck {
                        curve: id,
                        expected,
                        max_residual: r.max_residual,
                        verdict: r.verdict,
                        agrees: matches!(
                            (expected, r.verdict),
                            (true, Verdict::Accepted) | (false, Verdict::Rejected)
                        ),
                    },
                    Err(_) => CurveCheck {
                        curve: id,
                        expected,
                        max_residual: f64::NAN,
                        verdict: Verdict::Inconclusive,
                        agrees: false,
                    },
                }
            })
            .collect()
    });
    ClassificationResult {
        kind,
        curves,
        picard_note,
        verification,
    }
}

/// Representatives of the orbits with at most 6 classes and their curves.
pub fn orbit_table() -> [(RationalPair, CurveId); 7] {
    let r = RationalPair::from_ints;
    [
        (r((1, 4), (0, 1)), CurveId::A),
        (r((0, 1), (1, 4)), CurveId::B),
        (r((1, 4), (1, 4)), CurveId::C),
        (r((1, 3), (1, 3)), CurveId::D),
        (r((1, 6), (0, 1)), CurveId::E),
        (r((0, 1), (1, 6)), CurveId::F),
        (r((1, 6), (1, 6)), CurveId::G),
    ]
}

/// The curve carrying the Picard solution labelled by `v`, if its orbit has
/// at most 6 classes.
pub fn orbit_to_curve(v: &RationalPair) -> Result<Option<CurveId>> {
    if v.is_half_integer() {
        return Err(Error::HalfPeriod(v.to_string()));
    }
    for (rep, id) in orbit_table() {
        if same_orbit(v, &rep)? {
            return Ok(Some(id));
        }
    }
    Ok(None)
}

/// `|P(y, t)|` at the Picard point of `v` for each canonical curve.
pub fn curve_values_at_picard_point(
    v: &RationalPair,
    tau: &TauPoint,
    ell: &Elliptic,
) -> Result<Vec<(CurveId, f64)>> {
    let (t, y) = ell.picard_eval(v, tau)?;
    Ok(CurveId::ALL
        .into_iter()
        .map(|id| (id, id.poly().eval_complex(&[(Var::Y, y), (Var::T, t)]).norm()))
        .collect())
}
