//! The curves `H(alpha)` and `C(alpha, beta)` and the table of
//! `alpha_d = mu(sqrt(m)/d)`.
//!
//! `mu(x)` is the unique `mu` in `[0, 1)` with `j(ix) = 64 (mu^2 + 3)^3 / (mu^2 - 1)^2`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algnum::{
    compose_g, isolate_roots_unit_interval, match_roots, minimal_polynomial_in_degrees, AlgebraicReal, IntPoly,
};
use crate::classpoly::{class_polynomial, two_torsion_form, ClassPolyResult, OrderSpec};
use crate::error::{Error, Result};
use crate::quartic_iso::{is_nonsingular, QuarticTriple};
use crate::realball::{certify_compare, precision_cap, refine_until, CertOrdering, ComplexBall, Dyadic, RealBall};

/// Above this degree of `g`, roots are located from the `j` enclosures
/// instead of a Sturm sequence of `g`.
pub const STURM_MAX_DEGREE: usize = 48;

/// Largest minimal-polynomial degree attempted by lattice reduction.
pub const LLL_MAX_DEGREE: usize = 16;

/// `64 (t + 3)^3 - J (t - 1)^2`, increasing in `J^-1`-order on `[0, 1)`.
fn balance(t: &Dyadic, j: &RealBall) -> RealBall {
    let p = j.prec();
    let t = RealBall::exact(t.clone(), p);
    let a = t.add(&RealBall::from_int(3, p)).pow(3).mul_i64(64);
    let b = t.sub(&RealBall::one(p)).sqr();
    a.sub(&j.mul(&b))
}

/// `J(t) = 64 (t + 3)^3 / (t - 1)^2` at an exact `t = mu^2`.
pub fn j_of_mu_squared(t: &BigRational) -> Result<BigRational> {
    let one = BigRational::one();
    if *t == one {
        return Err(Error::Domain("mu^2 = 1".into()));
    }
    let three = BigRational::from_integer(BigInt::from(3));
    let s = t + &three;
    let d = t - &one;
    Ok(&s * &s * &s * BigRational::from_integer(BigInt::from(64)) / (&d * &d))
}

/// Enclosure of the unique `mu` in `[0, 1)` with `64 (mu^2+3)^3 = J (mu^2-1)^2`.
///
/// Bisects on `t = mu^2` until the sign of the balance can no longer be
/// decided or the bracket is below `2^-prec(J)`, then takes a square root.
pub fn mu_from_j(j: &RealBall) -> Result<RealBall> {
    let p = j.prec();
    let j1728 = RealBall::from_int(1728, p);
    if certify_compare(j, &j1728) == CertOrdering::Less {
        return Err(Error::Domain(format!("J = {} is below 1728", j.to_decimal(6))));
    }
    let mut lo = Dyadic::zero();
    let mut hi = Dyadic::one();
    for _ in 0..p + 8 {
        let mid = Dyadic::midpoint(&lo, &hi);
        match balance(&mid, j).sign() {
            Some(Ordering::Less) => lo = mid,
            Some(Ordering::Greater) => hi = mid,
            Some(Ordering::Equal) => {
                lo = mid.clone();
                hi = mid;
                break;
            }
            None => break,
        }
    }
    let prec = p.max(64);
    let t = RealBall::from_endpoints(&lo, &hi, prec);
    t.sqrt()
}

/// One row of the table.
#[derive(Clone, Debug)]
pub struct AlphaEntry {
    pub d: u64,
    pub alpha: AlgebraicReal,
    pub j: ComplexBall,
}

/// How the real roots of `g` in `(0, 1)` were located.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootPath {
    /// Sturm isolation of `g`, then matching against the `mu` enclosures.
    Sturm,
    /// Isolating intervals taken directly from the `mu` enclosures, with
    /// uniqueness certified through the monotonicity of `J` on `(0, 1)`.
    Enclosure,
}

#[derive(Clone, Debug)]
pub struct AlphaTable {
    pub m: u64,
    pub classpoly: ClassPolyResult,
    pub g: IntPoly,
    pub path: RootPath,
    /// Sorted by `d`; the entry for `d = 1` comes first.
    pub entries: Vec<AlphaEntry>,
}

impl AlphaTable {
    pub fn alpha(&self, d: u64) -> Option<&AlgebraicReal> {
        self.entries.iter().find(|e| e.d == d).map(|e| &e.alpha)
    }

    pub fn alpha1(&self) -> &AlgebraicReal {
        &self.entries[0].alpha
    }

    /// Entries with `d > 1`.
    pub fn quartic_entries(&self) -> &[AlphaEntry] {
        &self.entries[1..]
    }
}

pub fn build_alpha_table(m: u64) -> Result<AlphaTable> {
    build_alpha_table_with(m, None)
}

/// Like [`build_alpha_table`], with the root-location path forced.
pub fn build_alpha_table_with(m: u64, path: Option<RootPath>) -> Result<AlphaTable> {
    let order = OrderSpec::new(m)?;
    let cp = class_polynomial(&order)?;
    let g = compose_g(&cp.f);
    let path = path.unwrap_or(if g.degree() <= STURM_MAX_DEGREE { RootPath::Sturm } else { RootPath::Enclosure });
    let divisors = order.odd_divisors();
    let js: Vec<ComplexBall> = divisors.iter().map(|&d| cp.j_of_divisor(d).cloned()).collect::<Result<_>>()?;
    let targets: Vec<RealBall> = js.iter().map(|j| mu_from_j(&j.re)).collect::<Result<_>>()?;

    let alphas = match path {
        RootPath::Sturm => {
            let roots = isolate_roots_unit_interval(&g);
            if roots.len() != divisors.len() {
                return Err(Error::InternalInconsistency(format!(
                    "g has {} roots in (0,1) but m has {} odd divisors",
                    roots.len(),
                    divisors.len()
                )));
            }
            let idx = match_roots(&roots, &targets)?;
            idx.into_iter().map(|i| roots[i].clone()).collect::<Vec<_>>()
        }
        RootPath::Enclosure => enclosure_roots(&cp, &divisors, &g, &targets)?,
    };

    let h = cp.h;
    // the alpha_d have had degree 2h in every case examined, so try it first
    let degrees: Vec<usize> = [2 * h, h, 4 * h].into_iter().filter(|&k| k <= LLL_MAX_DEGREE).collect();
    let alphas: Vec<AlgebraicReal> = alphas
        .into_par_iter()
        .map(|mut a| {
            if !degrees.is_empty() {
                match minimal_polynomial_in_degrees(&mut a, &degrees) {
                    Ok(_) | Err(Error::RecognitionFailed(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            Ok(a)
        })
        .collect::<Result<_>>()?;

    let entries: Vec<AlphaEntry> = divisors
        .iter()
        .zip(alphas)
        .zip(js)
        .map(|((&d, alpha), j)| AlphaEntry { d, alpha, j })
        .collect();
    check_one_largest(&entries)?;
    Ok(AlphaTable { m, classpoly: cp, g, path, entries })
}

/// Certify `alpha_1 > alpha_d` for every `d > 1`.
fn check_one_largest(entries: &[AlphaEntry]) -> Result<()> {
    let mut bits = 64;
    loop {
        let a1 = entries[0].alpha.refine(bits)?;
        let mut undecided = false;
        for e in &entries[1..] {
            match certify_compare(&a1, &e.alpha.refine(bits)?) {
                CertOrdering::Greater => {}
                CertOrdering::Less => {
                    return Err(Error::InternalInconsistency(format!("alpha_1 < alpha_{}", e.d)));
                }
                CertOrdering::Overlap => undecided = true,
            }
        }
        if !undecided {
            return Ok(());
        }
        bits *= 2;
    }
}

/// Isolating intervals from the `mu` enclosures.
///
/// `g(x) = (x^2-1)^(2n) f(J(x^2))` and `J` increases strictly on `[0, 1)`,
/// so the roots of `g` there correspond one-to-one to the real roots of `f`
/// that are at least 1728. An enclosure `[lo, hi]` of `mu_d` therefore holds
/// exactly one root of `g` once `J([lo^2, hi^2])` misses every other root
/// of `f`, which is checked against the enclosures of all `j` values.
fn enclosure_roots(
    cp: &ClassPolyResult,
    divisors: &[u64],
    g: &IntPoly,
    targets: &[RealBall],
) -> Result<Vec<AlgebraicReal>> {
    let defining = g.primitive_part();
    let zero = BigRational::zero();
    let one = BigRational::one();
    let mut out = Vec::with_capacity(targets.len());
    for (&d, t) in divisors.iter().zip(targets) {
        let own = two_torsion_form(&cp.order, d)?;
        let (lo, hi) = t.rational_bounds();
        let lo = lo.max(zero.clone());
        if hi >= one {
            return Err(Error::Undecided(format!("mu enclosure for d = {d} reaches 1")));
        }
        let jlo = j_of_mu_squared(&(&lo * &lo))?;
        let jhi = j_of_mu_squared(&(&hi * &hi))?;
        for (form, j) in &cp.roots {
            if *form == own {
                continue;
            }
            let real_ok = j.im.sign().is_some_and(|s| s != Ordering::Equal);
            let (rl, rh) = j.re.rational_bounds();
            if !(real_ok || rh < jlo || rl > jhi) {
                return Err(Error::Undecided(format!("mu enclosure for d = {d} not isolating")));
            }
        }
        if defining.sign_at(&lo) == Ordering::Equal || defining.sign_at(&hi) == Ordering::Equal {
            return Err(Error::Undecided("enclosure endpoint is a root of g".into()));
        }
        out.push(AlgebraicReal::trusted(defining.clone(), lo, hi));
    }
    Ok(out)
}

/// Which curve an equation describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Hyperelliptic,
    Quartic,
}

/// A coefficient as a rational expression in named algebraic reals, with
/// its enclosure.
#[derive(Clone, Debug)]
pub struct Coefficient {
    pub expr: String,
    pub value: RealBall,
}

/// JSON form of a coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientRecord {
    pub expr: String,
    pub decimal: String,
    pub radius: String,
}

impl Coefficient {
    pub fn record(&self, digits: u32) -> CoefficientRecord {
        CoefficientRecord {
            expr: self.expr.clone(),
            decimal: self.value.to_decimal(digits),
            radius: radius_string(&self.value),
        }
    }
}

/// Radius as a power-of-two upper bound, `"0"` for exact balls.
pub fn radius_string(x: &RealBall) -> String {
    if x.rad().is_zero() {
        "0".into()
    } else {
        format!("2^{}", x.rad().log2_ceil())
    }
}

#[derive(Clone, Debug)]
pub struct CurveEquation {
    pub kind: CurveKind,
    /// `c0` for `H(alpha)`; `a`, `b`, `c` for a quartic.
    pub coefficients: Vec<(String, Coefficient)>,
    /// Minimal (or, failing that, defining) polynomials of the named reals.
    pub minpolys: BTreeMap<String, IntPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveEquationRecord {
    pub kind: CurveKind,
    pub coefficients: BTreeMap<String, CoefficientRecord>,
    pub minpolys: BTreeMap<String, IntPoly>,
}

impl CurveEquation {
    pub fn coefficient(&self, name: &str) -> Option<&Coefficient> {
        self.coefficients.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn triple(&self) -> Option<QuarticTriple<RealBall>> {
        let get = |n| self.coefficient(n).map(|c| c.value.clone());
        Some(QuarticTriple::new(get("a")?, get("b")?, get("c")?))
    }

    pub fn record(&self, digits: u32) -> CurveEquationRecord {
        CurveEquationRecord {
            kind: self.kind,
            coefficients: self.coefficients.iter().map(|(n, c)| (n.clone(), c.record(digits))).collect(),
            minpolys: self.minpolys.clone(),
        }
    }
}

/// Exact value of `x` if it equals the rational `v`.
fn equals_rational(x: &AlgebraicReal, v: &BigRational) -> bool {
    let (lo, hi) = x.interval();
    lo <= v && v <= hi && x.best_poly().sign_at(v) == Ordering::Equal
}

fn check_alpha(alpha: &AlgebraicReal, name: &str) -> Result<()> {
    let one = BigRational::one();
    for v in [BigRational::zero(), one.clone(), -one] {
        if equals_rational(alpha, &v) {
            return Err(Error::DegenerateCurve(format!("{name} = {v}")));
        }
    }
    Ok(())
}

/// Working precision for `digits` decimal digits after the point.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

/// `W^2 = X^4 + Y^4 + c0` with `X^2 + Y^2 = 1`, `c0 = -1 + 1/(2 alpha^2)`.
pub fn hyperelliptic_equation(alpha: &AlgebraicReal, name: &str, prec: u32) -> Result<CurveEquation> {
    check_alpha(alpha, name)?;
    let a = alpha.refine(prec + 16)?.with_prec(prec + 16);
    let c0 = a.sqr().mul_2exp(1).inv()?.sub(&RealBall::one(prec + 16));
    let mut minpolys = BTreeMap::new();
    minpolys.insert(name.to_string(), alpha.best_poly().clone());
    Ok(CurveEquation {
        kind: CurveKind::Hyperelliptic,
        coefficients: vec![("c0".into(), Coefficient { expr: format!("-1 + 1/(2*{name}^2)"), value: c0 })],
        minpolys,
    })
}

/// Coefficients of `C(alpha, beta)` and the twisting value
/// `T = 8 (b' - 1)(b' - 2 beta^2 + 1)` with `b' = 2 alpha^2 - 1`.
#[derive(Clone, Debug)]
pub struct QuarticCoeffs {
    pub triple: QuarticTriple<RealBall>,
    pub twist: RealBall,
}

/// Radii of `a` and `b` end up below `2^-prec`; the working precision
/// doubles as needed, since `1 - alpha^2` shrinks like `exp(-pi sqrt(m))`.
pub fn quartic_coeffs(alpha: &AlgebraicReal, beta: &AlgebraicReal, prec: u32) -> Result<QuarticCoeffs> {
    check_alpha(alpha, "alpha")?;
    let target = prec as i64;
    refine_until(prec + 32, precision_cap(), "computing quartic coefficients", |wp| {
        let qc = quartic_coeffs_at(alpha, beta, wp)?;
        if qc.triple.a.rad_below_pow2(target) && qc.triple.b.rad_below_pow2(target) {
            Ok(qc)
        } else {
            Err(Error::Undecided("quartic coefficients too wide".into()))
        }
    })
}

fn quartic_coeffs_at(alpha: &AlgebraicReal, beta: &AlgebraicReal, wp: u32) -> Result<QuarticCoeffs> {
    let a = alpha.refine(wp)?.with_prec(wp);
    let b = beta.refine(wp)?.with_prec(wp);
    let one = RealBall::one(wp);
    let big_a = one.sub(&b.sqr()).mul_i64(4).div(&one.sub(&a.sqr()))?.sub(&RealBall::from_int(2, wp));
    let big_b = b.mul_2exp(1).div(&a)?;
    let bp = a.sqr().mul_2exp(1).sub(&one);
    let twist = bp.sub(&one).mul(&bp.sub(&b.sqr().mul_2exp(1)).add(&one)).mul_i64(8);
    Ok(QuarticCoeffs { triple: QuarticTriple::new(big_a, big_b.clone(), big_b), twist })
}

/// `C(alpha_1, alpha_d)` as a curve equation, certified nonsingular.
pub fn quartic_equation(alpha1: &AlgebraicReal, alphad: &AlgebraicReal, d: u64, prec: u32) -> Result<CurveEquation> {
    let mut bits = prec;
    let qc = loop {
        let qc = quartic_coeffs(alpha1, alphad, bits)?;
        match is_nonsingular(&qc.triple) {
            Ok(true) => break qc,
            Ok(false) => return Err(Error::Singular(format!("C(alpha_1, alpha_{d})"))),
            Err(Error::Undecided(_)) if bits < crate::realball::precision_cap() => bits *= 2,
            Err(Error::Undecided(_)) => {
                return Err(Error::PrecisionExhausted {
                    cap: crate::realball::precision_cap(),
                    what: format!("certifying C(alpha_1, alpha_{d}) nonsingular"),
                })
            }
            Err(e) => return Err(e),
        }
    };
    let (n1, nd) = ("alpha_1".to_string(), format!("alpha_{d}"));
    let a_expr = format!("-2 + 4*(1 - {nd}^2)/(1 - {n1}^2)");
    let b_expr = format!("2*{nd}/{n1}");
    let mut minpolys = BTreeMap::new();
    minpolys.insert(n1, alpha1.best_poly().clone());
    minpolys.insert(nd, alphad.best_poly().clone());
    let QuarticTriple { a, b, c } = qc.triple;
    Ok(CurveEquation {
        kind: CurveKind::Quartic,
        coefficients: vec![
            ("a".into(), Coefficient { expr: a_expr, value: a }),
            ("b".into(), Coefficient { expr: b_expr.clone(), value: b }),
            ("c".into(), Coefficient { expr: b_expr, value: c }),
        ],
        minpolys,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn mu_at_1728_is_zero() {
        let mu = mu_from_j(&RealBall::from_int(1728, 128)).unwrap();
        assert!(mu.contains_rational(&q(0, 1)));
        assert!(mu.upper().to_f64() < 1e-15);
        assert!(mu_from_j(&RealBall::from_int(1000, 64)).is_err());
    }

    #[test]
    fn degenerate_alpha() {
        let one = AlgebraicReal::new(IntPoly::from_i64(&[-1, 1]), q(1, 2), q(2, 1)).unwrap();
        assert!(matches!(hyperelliptic_equation(&one, "alpha", 64), Err(Error::DegenerateCurve(_))));
        let s = AlgebraicReal::new(IntPoly::from_i64(&[-1, 0, 2]), q(1, 2), q(1, 1)).unwrap();
        let e = hyperelliptic_equation(&s, "alpha", 64).unwrap();
        assert!(e.coefficient("c0").unwrap().value.contains_rational(&q(0, 1)));
    }

    #[test]
    fn beta_equal_alpha_gives_two() {
        let s = AlgebraicReal::new(IntPoly::from_i64(&[-1, 0, 3]), q(1, 2), q(1, 1)).unwrap();
        let qc = quartic_coeffs(&s, &s, 64).unwrap();
        assert!(qc.triple.a.contains_rational(&q(2, 1)));
        assert!(qc.twist.contains_rational(&q(0, 1)));
    }
}
