//! The exact polynomial side: the master sextic whose factors carry every
//! exceptional solution, its reducibility locus, the four quartics coming from
//! the tripling formula, their rational parametrizations and the `S_4`
//! symmetries permuting them.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::AlphaTuple;
use crate::poly::{c, t, y, z, MultiPoly, Var};
use crate::rational::{q_from_int, Q};

/// The seven solution curves of the classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CurveId {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CurveId {
    pub const ALL: [CurveId; 7] = [
        CurveId::A,
        CurveId::B,
        CurveId::C,
        CurveId::D,
        CurveId::E,
        CurveId::F,
        CurveId::G,
    ];

    pub const QUARTICS: [CurveId; 4] = [CurveId::D, CurveId::E, CurveId::F, CurveId::G];

    pub fn poly(self) -> MultiPoly {
        let (y, t) = (y(), t());
        match self {
            CurveId::A => y.pow(2) - &t,
            CurveId::B => y.pow(2) - c(2) * &y + &t,
            CurveId::C => y.pow(2) - c(2) * &t * &y + &t,
            CurveId::D => {
                c(3) * y.pow(4) - c(4) * &t * y.pow(3) - c(4) * y.pow(3) + c(6) * &t * y.pow(2)
                    - t.pow(2)
            }
            CurveId::E => {
                y.pow(4) - c(6) * &t * y.pow(2) + c(4) * &t * (&t + c(1)) * &y - c(3) * t.pow(2)
            }
            CurveId::F => {
                y.pow(4) - c(4) * y.pow(3) + c(6) * &t * y.pow(2) - c(4) * t.pow(2) * &y + t.pow(2)
            }
            CurveId::G => {
                y.pow(4) - c(4) * &t * y.pow(3) + c(6) * &t * y.pow(2) - c(4) * &t * &y + t.pow(2)
            }
        }
    }

    pub fn name(self) -> &'static str {
        ["A", "B", "C", "D", "E", "F", "G"][self as usize]
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CurveId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CurveId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownCurve(s.to_string()))
    }
}

fn a(alpha: &AlphaTuple, j: usize) -> MultiPoly {
    MultiPoly::constant(alpha.0[j].clone())
}

/// `a0 y^2 (y-1)^2 (y-t)^2 - a1 t (y-1)^2 (y-t)^2 - a2 (1-t) y^2 (y-t)^2
///  - a3 t (t-1) y^2 (y-1)^2`.
pub fn master_poly(alpha: &AlphaTuple) -> MultiPoly {
    let (y, t) = (y(), t());
    let y2 = y.pow(2);
    let ym1 = (&y - c(1)).pow(2);
    let ymt = (&y - &t).pow(2);
    a(alpha, 0) * &y2 * &ym1 * &ymt
        - a(alpha, 1) * &t * &ym1 * &ymt
        - a(alpha, 2) * (c(1) - &t) * &y2 * &ymt
        - a(alpha, 3) * &t * (&t - c(1)) * &y2 * &ym1
}

/// The cofactor of `(y - t)^2` in the master polynomial when `a3 = 0`.
pub fn p0_poly(a0: &Q, a1: &Q, a2: &Q) -> MultiPoly {
    let (y, t) = (y(), t());
    let (a0, a1, a2) = (
        MultiPoly::constant(a0.clone()),
        MultiPoly::constant(a1.clone()),
        MultiPoly::constant(a2.clone()),
    );
    let ym1 = (&y - c(1)).pow(2);
    let y2 = y.pow(2);
    &a0 * &ym1 * &y2 - &a2 * &y2 - t * (&a1 * &ym1 - &a2 * &y2)
}

/// Quadratic form `sum a_j^2 - 2 sum_{i<j} a_i a_j` in the symbols `a0..a3`.
fn kummer_quadric(a: &[MultiPoly; 4]) -> MultiPoly {
    let mut s = MultiPoly::zero();
    for (i, ai) in a.iter().enumerate() {
        s = s + ai.pow(2);
        for aj in &a[i + 1..] {
            s = s - c(2) * ai * aj;
        }
    }
    s
}

/// `(quadric)^2 - 64 a0 a1 a2 a3` as a polynomial in `a0..a3`.
pub fn kummer_defect_poly() -> MultiPoly {
    let a = [0, 1, 2, 3].map(|j| MultiPoly::var(Var::alpha(j)));
    kummer_quadric(&a).pow(2) - c(64) * &a[0] * &a[1] * &a[2] * &a[3]
}

/// Exact value of the Kummer defect at `alpha`.
pub fn kummer_defect(alpha: &AlphaTuple) -> Q {
    let a = alpha.0.clone().map(MultiPoly::constant);
    let p = kummer_quadric(&a).pow(2) - c(64) * &a[0] * &a[1] * &a[2] * &a[3];
    p.coeff(&crate::poly::Monomial::one())
}

pub fn kummer_condition(alpha: &AlphaTuple) -> (bool, Q) {
    let d = kummer_defect(alpha);
    (d.is_zero(), d)
}

/// `prod over signs (u0 +- u1 +- u2 +- u3)`.
pub fn signed_sum_product() -> MultiPoly {
    let u = [0, 1, 2, 3].map(|j| MultiPoly::var(Var::u(j)));
    let mut prod = MultiPoly::one();
    for mask in 0..8u8 {
        let mut f = u[0].clone();
        for (k, uk) in u[1..].iter().enumerate() {
            if mask & (1 << k) == 0 {
                f = f + uk;
            } else {
                f = f - uk;
            }
        }
        prod = prod * f;
    }
    prod
}

/// The Kummer defect with `a_j = u_j^2` substituted.
pub fn kummer_defect_in_u() -> MultiPoly {
    let mut p = kummer_defect_poly();
    for j in 0..4 {
        p = p.substitute(Var::alpha(j), &MultiPoly::var(Var::u(j)).pow(2));
    }
    p
}

/// Checks the sign-product form of the Kummer condition as a polynomial
/// identity in `u0..u3`.
pub fn verify_kummer_equivalence() -> bool {
    signed_sum_product() == kummer_defect_in_u()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Line {
    L1,
    L2,
    L3,
}

impl Line {
    pub const ALL: [Line; 3] = [Line::L1, Line::L2, Line::L3];

    /// The pair of index pairs that must agree.
    pub fn pairs(self) -> [(usize, usize); 2] {
        match self {
            Line::L1 => [(0, 1), (2, 3)],
            Line::L2 => [(0, 2), (1, 3)],
            Line::L3 => [(0, 3), (1, 2)],
        }
    }

    pub fn contains(self, alpha: &AlphaTuple) -> bool {
        self.pairs().iter().all(|&(i, j)| alpha.0[i] == alpha.0[j])
    }

    /// The curve carried by this line.
    pub fn curve(self) -> CurveId {
        match self {
            Line::L1 => CurveId::A,
            Line::L2 => CurveId::B,
            Line::L3 => CurveId::C,
        }
    }
}

pub fn line_membership(alpha: &AlphaTuple) -> BTreeSet<Line> {
    Line::ALL.into_iter().filter(|l| l.contains(alpha)).collect()
}

/// Numerator and denominator of the tripling formula
/// `w(3z) = y (f/g)^2`, `y = w(z)`.
pub fn tripling_f_poly() -> MultiPoly {
    let (y, t) = (y(), t());
    y.pow(4) + c(4) * &y * &t - c(6) * y.pow(2) * &t - c(3) * t.pow(2) + c(4) * &y * t.pow(2)
}

pub fn tripling_g_poly() -> MultiPoly {
    let (y, t) = (y(), t());
    c(4) * y.pow(3) * &t - c(6) * y.pow(2) * &t + c(4) * y.pow(3) - c(3) * y.pow(4) + t.pow(2)
}

/// The four quartics read off the tripling formula, one per preimage value of
/// `w(3z)`: `infinity` (g = 0), `0` (f = 0), `1` and `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quartics {
    pub d: MultiPoly,
    pub e: MultiPoly,
    pub f: MultiPoly,
    pub g: MultiPoly,
}

impl Quartics {
    pub fn get(&self, id: CurveId) -> Option<&MultiPoly> {
        match id {
            CurveId::D => Some(&self.d),
            CurveId::E => Some(&self.e),
            CurveId::F => Some(&self.f),
            CurveId::G => Some(&self.g),
            _ => None,
        }
    }
}

/// `w(3z) = 1` and `w(3z) = t` give `y f^2 - g^2 = (y - 1) F^2` and
/// `y f^2 - t g^2 = (y - t) G^2`; `F` and `G` are extracted as exact square
/// roots.
pub fn derive_quartics() -> Result<Quartics> {
    let f = tripling_f_poly();
    let g = tripling_g_poly();
    let yf2 = y() * f.pow(2);
    let at_one = (&yf2 - g.pow(2)).div_exact(&(y() - c(1)))?;
    let at_t = (&yf2 - t() * g.pow(2)).div_exact(&(y() - t()))?;
    Ok(Quartics {
        d: (-&g).normalize_sign(),
        e: f.normalize_sign(),
        f: at_one.sqrt()?.normalize_sign(),
        g: at_t.sqrt()?.normalize_sign(),
    })
}

/// `y(z) = yn/yd`, `t(z) = tn/td`.
#[derive(Debug, Clone, PartialEq)]
pub struct Uniformization {
    pub y_num: MultiPoly,
    pub y_den: MultiPoly,
    pub t_num: MultiPoly,
    pub t_den: MultiPoly,
}

impl Uniformization {
    pub fn of(curve: CurveId) -> Option<Uniformization> {
        let z = z();
        let one = c(1);
        let u = |y_num, y_den, t_num, t_den| Uniformization {
            y_num,
            y_den,
            t_num,
            t_den,
        };
        match curve {
            CurveId::D => Some(u(
                one.clone(),
                &one - z.pow(2),
                c(2) * &z - &one,
                (&z - &one).pow(3) * (&z + &one),
            )),
            CurveId::E => Some(u(
                &one - z.pow(2),
                one.clone(),
                (&z + &one) * (&z - &one).pow(3),
                c(2) * &z - &one,
            )),
            CurveId::F => Some(u(
                z.pow(2),
                one.clone(),
                -(z.pow(3) * (&z - c(2))),
                c(2) * &z - &one,
            )),
            CurveId::G => Some(u(
                -(c(2) * &z - &one),
                &z * (&z - c(2)),
                -(c(2) * &z - &one),
                z.pow(3) * (&z - c(2)),
            )),
            _ => None,
        }
    }

    /// Numerator of `P(y(z), t(z))` after clearing denominators.
    pub fn substitute_into(&self, p: &MultiPoly) -> MultiPoly {
        p.substitute_fractions(&[
            (Var::Y, self.y_num.clone(), self.y_den.clone()),
            (Var::T, self.t_num.clone(), self.t_den.clone()),
        ])
    }
}

/// Substitutes the curve's parametrization and checks the cleared numerator
/// vanishes identically. Only the quartics carry one.
pub fn verify_uniformization(curve: CurveId) -> bool {
    verify_uniformization_of(curve, &curve.poly())
}

pub fn verify_uniformization_of(curve: CurveId, p: &MultiPoly) -> bool {
    match Uniformization::of(curve) {
        Some(u) => u.substitute_into(p).is_zero(),
        None => false,
    }
}

/// Generators of the `S_4` acting on `(t, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Symmetry {
    /// `(t, y) -> (1 - t, 1 - y)`
    Reflect,
    /// `(t, y) -> (1/t, y/t)`
    Invert,
    /// `(t, y) -> (1/t, 1/y)`
    InvertBoth,
}

impl Symmetry {
    fn substitution(self) -> [(Var, MultiPoly, MultiPoly); 2] {
        let (y, t, one) = (y(), t(), c(1));
        match self {
            Symmetry::Reflect => [
                (Var::T, &one - &t, one.clone()),
                (Var::Y, &one - &y, one.clone()),
            ],
            Symmetry::Invert => [(Var::T, one.clone(), t.clone()), (Var::Y, y, t)],
            Symmetry::InvertBoth => [(Var::T, one.clone(), t), (Var::Y, one, y)],
        }
    }

    pub fn apply(self, p: &MultiPoly) -> MultiPoly {
        let q = p.substitute_fractions(&self.substitution());
        let content = q.monomial_content();
        q.div_monomial(&content)
            .expect("monomial content divides every term")
            .normalize_sign()
    }
}

/// Applies the word left to right.
pub fn apply_symmetry(p: &MultiPoly, word: &[Symmetry]) -> MultiPoly {
    word.iter().fold(p.clone(), |acc, s| s.apply(&acc))
}

/// The six elements of the `S_3` generated by [`Symmetry::Reflect`] and
/// [`Symmetry::Invert`], as shortest words.
pub fn s3_elements() -> [Vec<Symmetry>; 6] {
    use Symmetry::{Invert as I, Reflect as R};
    [vec![], vec![R], vec![I], vec![R, I], vec![I, R], vec![R, I, R]]
}

/// Depends on both `y` and `t` and is not a constant multiple of `y - t`.
pub fn is_nontrivial_factor(p: &MultiPoly) -> bool {
    p.depends_on(Var::Y)
        && p.depends_on(Var::T)
        && p.scalar_ratio(&(y() - t())).is_none()
}

/// Two polynomials agree up to a nonzero rational factor.
pub fn same_up_to_scale(a: &MultiPoly, b: &MultiPoly) -> bool {
    !a.is_zero() && a.scalar_ratio(b).is_some()
}

pub fn int_alpha(a: [i64; 4]) -> AlphaTuple {
    AlphaTuple(a.map(q_from_int))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s).unwrap()
    }

    #[test]
    fn all_equal_alpha_splits_in_three() {
        let m = master_poly(&int_alpha([1, 1, 1, 1]));
        let prod = CurveId::A.poly() * CurveId::B.poly() * CurveId::C.poly();
        assert_eq!(m, prod);
        assert!(master_poly(&int_alpha([0; 4])).is_zero());
    }

    #[test]
    fn vanishing_a3_gives_double_line() {
        let m = master_poly(&int_alpha([1, 1, 1, 0]));
        let p0 = p("y^4 - 2*y^3 + 2*t*y - t");
        assert_eq!(p0_poly(&q_from_int(1), &q_from_int(1), &q_from_int(1)), p0);
        assert_eq!(m, (y() - t()).pow(2) * p0);
    }

    #[test]
    fn kummer_examples() {
        assert_eq!(kummer_condition(&int_alpha([1, 1, 2, 2])), (true, Q::zero()));
        assert_eq!(kummer_condition(&int_alpha([9, 1, 1, 1])), (true, Q::zero()));
        assert_eq!(kummer_condition(&int_alpha([1, 2, 3, 4])), (false, q_from_int(64)));
    }

    #[test]
    fn kummer_sign_product() {
        assert!(verify_kummer_equivalence());
        let prod = signed_sum_product();
        assert!(prod.is_homogeneous());
        assert_eq!(prod.total_degree(), 8);
        assert_eq!(kummer_defect_in_u().total_degree(), 8);
        let at = [(Var::U0, q_from_int(3)), (Var::U1, q_from_int(1)), (Var::U2, q_from_int(1)), (Var::U3, q_from_int(1))];
        assert!(prod.eval_q(&at).is_zero());
        assert!(kummer_defect(&int_alpha([9, 1, 1, 1])).is_zero());
    }

    #[test]
    fn lines() {
        assert_eq!(line_membership(&int_alpha([1, 1, 2, 2])), BTreeSet::from([Line::L1]));
        assert_eq!(line_membership(&int_alpha([1, 1, 1, 1])).len(), 3);
        assert!(line_membership(&int_alpha([1, 2, 3, 4])).is_empty());
    }

    #[test]
    fn quartics_from_tripling() {
        let q = derive_quartics().unwrap();
        assert_eq!(-tripling_g_poly(), p("3*y^4 - 4*t*y^3 - 4*y^3 + 6*t*y^2 - t^2"));
        assert_eq!(tripling_f_poly(), p("y^4 - 6*t*y^2 + 4*t^2*y + 4*t*y - 3*t^2"));
        for id in CurveId::QUARTICS {
            assert_eq!(q.get(id).unwrap(), &id.poly(), "{id}");
        }
    }

    #[test]
    fn literal_difference_quotients_are_not_squares() {
        let f = tripling_f_poly();
        let g = tripling_g_poly();
        let quot = (&f - &g).div_exact(&(y() - c(1))).unwrap();
        assert_eq!(quot.sqrt(), Err(Error::NotASquare));
    }

    #[test]
    fn uniformizations() {
        for id in CurveId::QUARTICS {
            assert!(verify_uniformization(id), "{id}");
        }
        assert!(!verify_uniformization(CurveId::A));
        // A uniformization of D does not parametrize E.
        assert!(!verify_uniformization_of(CurveId::D, &CurveId::E.poly()));
    }

    #[test]
    fn uniformization_point_z3() {
        let u = Uniformization::of(CurveId::D).unwrap();
        let z3 = [(Var::Z, q_from_int(3))];
        let yv = u.y_num.eval_q(&z3) / u.y_den.eval_q(&z3);
        let tv = u.t_num.eval_q(&z3) / u.t_den.eval_q(&z3);
        assert_eq!(yv, q_frac(-1, 8));
        assert_eq!(tv, q_frac(5, 32));
        assert!(CurveId::D.poly().eval_q(&[(Var::Y, yv), (Var::T, tv)]).is_zero());
    }

    #[test]
    fn symmetry_examples() {
        assert_eq!(Symmetry::Reflect.apply(&CurveId::A.poly()), CurveId::B.poly());
        assert_eq!(Symmetry::InvertBoth.apply(&CurveId::D.poly()), CurveId::E.poly());
        let d = CurveId::D.poly();
        assert_eq!(apply_symmetry(&d, &[]), d);
    }

    #[test]
    fn quadratics_permuted_by_s3() {
        let quad: Vec<MultiPoly> = [CurveId::A, CurveId::B, CurveId::C].map(CurveId::poly).to_vec();
        for w in s3_elements() {
            let images: BTreeSet<String> =
                quad.iter().map(|q| apply_symmetry(q, &w).to_string()).collect();
            let orig: BTreeSet<String> = quad.iter().map(|q| q.to_string()).collect();
            assert_eq!(images, orig, "{w:?}");
        }
    }

    #[test]
    fn quartics_permuted_by_generators() {
        let orig: BTreeSet<String> = CurveId::QUARTICS.iter().map(|c| c.poly().to_string()).collect();
        for s in [Symmetry::Reflect, Symmetry::Invert, Symmetry::InvertBoth] {
            let images: BTreeSet<String> =
                CurveId::QUARTICS.iter().map(|c| s.apply(&c.poly()).to_string()).collect();
            assert_eq!(images, orig, "{s:?}");
        }
    }

    #[test]
    fn nontrivial_factor_predicate() {
        assert!(is_nontrivial_factor(&CurveId::A.poly()));
        assert!(!is_nontrivial_factor(&(y() - t()).scale(&q_from_int(-3))));
        assert!(!is_nontrivial_factor(&(y() - c(1))));
        assert!(!is_nontrivial_factor(&t()));
    }

    #[test]
    fn curve_names_parse() {
        assert_eq!("d".parse::<CurveId>().unwrap(), CurveId::D);
        assert!("H".parse::<CurveId>().is_err());
    }
}
