//! Strict equivalence and isomorphism of quartics
//! `X^4 + Y^4 + Z^4 + a X^2Y^2 + b X^2Z^2 + c Y^2Z^2`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algnum::AlgebraicReal;
use crate::error::{Error, Result};
use crate::realball::{certified_gap, certify_compare, precision_cap, refine_until, CertOrdering, ComplexBall, RealBall};

/// Outcome of an equality test that may be inconclusive for enclosures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    Equal,
    Different,
    Unknown,
}

impl Tri {
    fn and(self, o: Tri) -> Tri {
        match (self, o) {
            (Tri::Different, _) | (_, Tri::Different) => Tri::Different,
            (Tri::Equal, Tri::Equal) => Tri::Equal,
            _ => Tri::Unknown,
        }
    }

    fn or(self, o: Tri) -> Tri {
        match (self, o) {
            (Tri::Equal, _) | (_, Tri::Equal) => Tri::Equal,
            (Tri::Different, Tri::Different) => Tri::Different,
            _ => Tri::Unknown,
        }
    }
}

/// Field-like values a quartic's coefficients can take: exact rationals or
/// real balls. A zero-radius ball behaves as an exact value.
pub trait Scalar: Clone + fmt::Debug + Send + Sync {
    /// The integer `n` in the same numeric context as `self`.
    fn int(&self, n: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
    fn compare(&self, o: &Self) -> Tri;
    fn is_exact(&self) -> bool;
    /// Total order used only to canonicalize multisets.
    fn canon_cmp(&self, o: &Self) -> Ordering;
    fn render(&self) -> String;
}

impl Scalar for BigRational {
    fn int(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok(self / o)
    }
    fn compare(&self, o: &Self) -> Tri {
        if self == o {
            Tri::Equal
        } else {
            Tri::Different
        }
    }
    fn is_exact(&self) -> bool {
        true
    }
    fn canon_cmp(&self, o: &Self) -> Ordering {
        self.cmp(o)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Scalar for RealBall {
    fn int(&self, n: i64) -> Self {
        RealBall::from_int(n, self.prec())
    }
    fn add(&self, o: &Self) -> Self {
        RealBall::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RealBall::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RealBall::mul(self, o)
    }
    fn neg(&self) -> Self {
        RealBall::neg(self)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        RealBall::div(self, o)
    }
    fn compare(&self, o: &Self) -> Tri {
        match certify_compare(self, o) {
            CertOrdering::Less | CertOrdering::Greater => Tri::Different,
            CertOrdering::Overlap if self.is_exact() && o.is_exact() => Tri::Equal,
            CertOrdering::Overlap => Tri::Unknown,
        }
    }
    fn is_exact(&self) -> bool {
        RealBall::is_exact(self)
    }
    fn canon_cmp(&self, o: &Self) -> Ordering {
        self.mid().cmp(o.mid())
    }
    fn render(&self) -> String {
        let s = self.to_decimal(30);
        if self.is_exact() && s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    }
}

/// Coefficients `(a, b, c)` of `Q(a, b, c)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuarticTriple<S> {
    pub a: S,
    pub b: S,
    pub c: S,
}

impl<S: Scalar> QuarticTriple<S> {
    pub fn new(a: S, b: S, c: S) -> Self {
        QuarticTriple { a, b, c }
    }

    pub fn entries(&self) -> [&S; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// `a^2 + b^2 + c^2 - abc - 4`.
    pub fn discriminant_factor(&self) -> S {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        a.mul(a).add(&b.mul(b)).add(&c.mul(c)).sub(&a.mul(b).mul(c)).sub(&a.int(4))
    }
}

impl<S: Scalar> fmt::Display for QuarticTriple<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q({}, {}, {})", self.a.render(), self.b.render(), self.c.render())
    }
}

/// Nonsingularity: `a^2 + b^2 + c^2 - abc - 4 != 0` and no square equals 4.
///
/// Exact inputs decide both ways. Enclosures can only certify `true`; an
/// enclosure that still meets a singular value gives `Undecided`.
pub fn is_nonsingular<S: Scalar>(t: &QuarticTriple<S>) -> Result<bool> {
    let four = t.a.int(4);
    let zero = t.a.int(0);
    let mut verdict = t.discriminant_factor().compare(&zero);
    for x in t.entries() {
        verdict = verdict.or(x.mul(x).compare(&four));
    }
    match verdict {
        Tri::Equal => Ok(false),
        Tri::Different => Ok(true),
        Tri::Unknown => Err(Error::Undecided("nonsingularity not certified at this precision".into())),
    }
}

/// Complete invariant of a strict class: sorted squares and the product.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrictClassInvariant<S> {
    pub squares: [S; 3],
    pub product: S,
}

impl<S: Scalar> StrictClassInvariant<S> {
    fn from_parts(mut squares: [S; 3], product: S) -> Self {
        squares.sort_by(|x, y| x.canon_cmp(y));
        StrictClassInvariant { squares, product }
    }

    pub fn compare(&self, o: &Self) -> Tri {
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut any = Tri::Different;
        for p in PERMS {
            let mut t = Tri::Equal;
            for i in 0..3 {
                t = t.and(self.squares[i].compare(&o.squares[p[i]]));
            }
            any = any.or(t);
        }
        any.and(self.product.compare(&o.product))
    }
}

impl<S: Scalar> fmt::Display for StrictClassInvariant<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{squares: [{}, {}, {}], product: {}}}",
            self.squares[0].render(),
            self.squares[1].render(),
            self.squares[2].render(),
            self.product.render()
        )
    }
}

pub fn strict_invariant<S: Scalar>(t: &QuarticTriple<S>) -> StrictClassInvariant<S> {
    let sq = [t.a.mul(&t.a), t.b.mul(&t.b), t.c.mul(&t.c)];
    StrictClassInvariant::from_parts(sq, t.a.mul(&t.b).mul(&t.c))
}

/// A strict class with whatever entries are known explicitly. Companion
/// classes may have a negative "square" when `a + 2 < 0`; such classes never
/// match a real triple, which keeps comparisons valid without complex numbers.
#[derive(Clone, Debug)]
struct ClassRep<S> {
    vals: [Option<S>; 3],
    sq: [S; 3],
    prod: S,
}

impl<S: Scalar> ClassRep<S> {
    fn of(t: &QuarticTriple<S>) -> Self {
        ClassRep {
            vals: [Some(t.a.clone()), Some(t.b.clone()), Some(t.c.clone())],
            sq: [t.a.mul(&t.a), t.b.mul(&t.b), t.c.mul(&t.c)],
            prod: t.a.mul(&t.b).mul(&t.c),
        }
    }

    fn invariant(&self) -> StrictClassInvariant<S> {
        StrictClassInvariant::from_parts(self.sq.clone(), self.prod.clone())
    }

    /// Companion classes from every pair of (possibly) equal squares.
    fn moves(&self) -> Result<Vec<ClassRep<S>>> {
        let zero = self.prod.int(0);
        let two = self.prod.int(2);
        let four = self.prod.int(4);
        let sixteen = self.prod.int(16);
        let mut out = Vec::new();
        for (i, j, k) in [(1, 2, 0), (0, 2, 1), (0, 1, 2)] {
            if self.sq[i].compare(&self.sq[j]) == Tri::Different {
                continue;
            }
            let sigma_zero = match (self.sq[i].compare(&zero), self.sq[j].compare(&zero)) {
                (Tri::Different, _) | (_, Tri::Different) => Tri::Different,
                (Tri::Equal, Tri::Equal) => Tri::Equal,
                _ => Tri::Unknown,
            };
            if sigma_zero != Tri::Different {
                // pattern (x, 0, 0): both x and -x represent the class
                let x = match &self.vals[k] {
                    Some(v) => v.clone(),
                    None if self.sq[k].compare(&zero) == Tri::Equal => zero.clone(),
                    None => {
                        return Err(Error::InternalInconsistency("entry of a two-zero class is not explicit".into()))
                    }
                };
                for s in [x.clone(), x.neg()] {
                    let a = sixteen.div(&s.add(&two))?.sub(&two);
                    out.push(ClassRep {
                        vals: [Some(a.clone()), Some(zero.clone()), Some(zero.clone())],
                        sq: [a.mul(&a), zero.clone(), zero.clone()],
                        prod: zero.clone(),
                    });
                }
            }
            if sigma_zero != Tri::Equal {
                // pattern (a', s, s) with s^2 = sigma and a' = product / sigma
                let sigma = &self.sq[i];
                let ap = self.prod.div(sigma).map_err(|_| Error::Undecided("repeated square not separated from 0".into()))?;
                let den = ap.add(&two);
                let a = sixteen.div(&den).map_err(|_| Error::Undecided("a + 2 not separated from 0".into()))?.sub(&two);
                let b2 = four.mul(sigma).div(&den)?;
                out.push(ClassRep {
                    vals: [Some(a.clone()), None, None],
                    sq: [a.mul(&a), b2.clone(), b2.clone()],
                    prod: a.mul(&b2),
                });
            }
        }
        Ok(out)
    }
}

/// Shape of an isomorphism class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IsoCase {
    /// All squares pairwise distinct in every strict class.
    Generic,
    /// Some strict class has two equal squares.
    TwoEqual,
    /// Some strict class has two zero entries.
    TwoZero,
}

#[derive(Clone, Debug)]
pub struct IsoClassDescriptor<S> {
    pub strict_classes: Vec<StrictClassInvariant<S>>,
    pub case: IsoCase,
    /// Explicit representative triples where available.
    reps: Vec<ClassRep<S>>,
}

impl<S: Scalar> IsoClassDescriptor<S> {
    fn from_reps(reps: Vec<ClassRep<S>>) -> Self {
        let zero = reps[0].prod.int(0);
        let mut case = IsoCase::Generic;
        for r in &reps {
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                if r.sq[i].compare(&r.sq[j]) == Tri::Equal {
                    if r.sq[i].compare(&zero) == Tri::Equal {
                        case = IsoCase::TwoZero;
                    } else if case == IsoCase::Generic {
                        case = IsoCase::TwoEqual;
                    }
                }
            }
        }
        IsoClassDescriptor { strict_classes: reps.iter().map(|r| r.invariant()).collect(), case, reps }
    }
}

/// Proposition cap on strict classes per isomorphism class.
const MAX_STRICT_CLASSES: usize = 3;

/// Closure of the strict class of `t` under the associated-form moves.
///
/// Exact inputs are closed to a fixpoint, with more than three classes
/// reported as an internal inconsistency. Enclosures are over-approximated:
/// every pair of overlapping squares is treated as possibly equal and the
/// moves are applied to depth two, which covers every class reachable in
/// the exact case because each move is an involution.
pub fn associated_forms<S: Scalar>(t: &QuarticTriple<S>) -> Result<IsoClassDescriptor<S>> {
    let exact = t.entries().iter().all(|x| x.is_exact());
    let start = ClassRep::of(t);
    if exact {
        let mut reps = vec![start];
        let mut idx = 0;
        while idx < reps.len() {
            for c in reps[idx].moves()? {
                let inv = c.invariant();
                if reps.iter().all(|r| r.invariant().compare(&inv) == Tri::Different) {
                    reps.push(c);
                    if reps.len() > MAX_STRICT_CLASSES {
                        return Err(Error::InternalInconsistency(format!(
                            "more than {MAX_STRICT_CLASSES} strict classes for {t}"
                        )));
                    }
                }
            }
            idx += 1;
        }
        Ok(IsoClassDescriptor::from_reps(reps))
    } else {
        let mut reps = vec![start];
        let mut frontier = vec![0usize];
        for _ in 0..2 {
            let mut next = Vec::new();
            for &i in &frontier {
                for c in reps[i].moves()? {
                    reps.push(c);
                    next.push(reps.len() - 1);
                }
            }
            frontier = next;
        }
        Ok(IsoClassDescriptor::from_reps(reps))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IsoVerdict {
    Isomorphic,
    NonIsomorphic,
    Undecided,
}

impl fmt::Display for IsoVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IsoVerdict::Isomorphic => "Isomorphic",
            IsoVerdict::NonIsomorphic => "NonIsomorphic",
            IsoVerdict::Undecided => "Undecided",
        };
        write!(f, "{s}")
    }
}

/// Verdict plus the class data that witnesses it.
#[derive(Clone, Debug)]
pub struct IsoReport<S> {
    pub verdict: IsoVerdict,
    pub left: IsoClassDescriptor<S>,
    pub right: IsoClassDescriptor<S>,
    /// Indices of a matching pair of strict classes, when isomorphic.
    pub witness: Option<(usize, usize)>,
}

/// Decide isomorphism of two nonsingular quartics. Enclosures can only
/// yield `NonIsomorphic` or `Undecided`; exact inputs always decide.
pub fn are_isomorphic<S: Scalar>(t1: &QuarticTriple<S>, t2: &QuarticTriple<S>) -> Result<IsoReport<S>> {
    for t in [t1, t2] {
        match is_nonsingular(t) {
            Ok(true) => {}
            Ok(false) => return Err(Error::Singular(format!("{t} is singular"))),
            Err(Error::Undecided(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let left = associated_forms(t1)?;
    let right = associated_forms(t2)?;
    let mut all_different = true;
    let mut witness = None;
    for (i, x) in left.strict_classes.iter().enumerate() {
        for (j, y) in right.strict_classes.iter().enumerate() {
            match x.compare(y) {
                Tri::Equal => {
                    witness.get_or_insert((i, j));
                }
                Tri::Different => {}
                Tri::Unknown => all_different = false,
            }
        }
    }
    let verdict = if witness.is_some() {
        IsoVerdict::Isomorphic
    } else if all_different {
        IsoVerdict::NonIsomorphic
    } else {
        IsoVerdict::Undecided
    };
    Ok(IsoReport { verdict, left, right, witness })
}

/// Automorphism groups of curves with commuting involutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AutGroupLabel {
    V4,
    D8,
    S4,
    G16,
    G48,
    G96,
    /// `GL(3, F_2)`, standard form `Q(z, z, z)` with `z = 3(-1 + sqrt(-7))/2`.
    GL3F2,
}

impl AutGroupLabel {
    /// Number of conjugacy classes of `V4` subgroups.
    pub fn v4_classes(&self) -> usize {
        match self {
            AutGroupLabel::V4 | AutGroupLabel::S4 | AutGroupLabel::G48 | AutGroupLabel::GL3F2 => 1,
            AutGroupLabel::D8 | AutGroupLabel::G96 => 2,
            AutGroupLabel::G16 => 3,
        }
    }
}

/// Automorphism group label of a real nonsingular quartic with exact
/// rational coefficients. `G48` and `GL3F2` have no real standard form and
/// are never returned.
pub fn classify_aut_group(t: &QuarticTriple<BigRational>) -> Result<AutGroupLabel> {
    if !is_nonsingular(t)? {
        return Err(Error::Singular(format!("{t} is singular")));
    }
    let desc = associated_forms(t)?;
    let six = BigRational::from_integer(BigInt::from(6));
    let label = match desc.case {
        IsoCase::TwoZero => {
            let special = desc.reps.iter().any(|r| {
                let zeros = r.sq.iter().filter(|s| s.is_zero()).count();
                let nonzero: Vec<&BigRational> = r.sq.iter().filter(|s| !s.is_zero()).collect();
                zeros == 3 || (zeros == 2 && *nonzero[0] == &six * &six)
            });
            if special {
                AutGroupLabel::G96
            } else {
                AutGroupLabel::G16
            }
        }
        _ if desc.reps.iter().any(|r| r.sq[0] == r.sq[1] && r.sq[1] == r.sq[2] && !r.sq[0].is_zero()) => {
            AutGroupLabel::S4
        }
        IsoCase::TwoEqual => AutGroupLabel::D8,
        IsoCase::Generic => AutGroupLabel::V4,
    };
    Ok(label)
}

/// Sign choice for `d` with `d^2 = a + 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// `a -> -2 + 16/(a + 2)`, the first coordinate of the companion form.
pub fn vary_a(a: &BigRational) -> Result<BigRational> {
    let two = BigRational::from_integer(BigInt::from(2));
    let sixteen = BigRational::from_integer(BigInt::from(16));
    Ok(sixteen.div(&(a + &two)).map_err(|_| Error::Domain("a = -2".into()))? - two)
}

/// Companion `Q(-2 + 16/(a+2), 2b/d, 2b/d)` of `Q(a, b, b)` with `d^2 = a + 2`,
/// plus the projective matrix `[[e/2, e/2, 0], [e/2, -e/2, 0], [0, 0, 1]]`,
/// `e^2 = d`, taking points of the first curve to the second.
pub fn vary_the_curve(
    a: &RealBall,
    b: &RealBall,
    branch: Branch,
) -> Result<(QuarticTriple<RealBall>, [[ComplexBall; 3]; 3])> {
    let prec = a.prec().max(b.prec());
    let s = a.add(&RealBall::from_int(2, prec));
    if !s.is_positive() {
        return Err(Error::Domain("vary_the_curve needs a + 2 > 0".into()));
    }
    let mut d = s.sqrt()?;
    if branch == Branch::Minus {
        d = d.neg();
    }
    let big_a = RealBall::from_int(16, prec).div(&s)?.sub(&RealBall::from_int(2, prec));
    let bb = b.mul_2exp(1).div(&d)?;
    let e = ComplexBall::from_real(d).sqrt()?;
    let h = e.mul_2exp(-1);
    let z = ComplexBall::zero(prec);
    let m = [[h.clone(), h.clone(), z.clone()], [h.clone(), h.neg(), z.clone()], [z.clone(), z, ComplexBall::one(prec)]];
    Ok((QuarticTriple::new(big_a, bb.clone(), bb), m))
}

/// Evaluate `Q(a, b, c)` at a complex point.
pub fn eval_quartic(t: &QuarticTriple<RealBall>, p: &[ComplexBall; 3]) -> ComplexBall {
    let [x, y, z] = p;
    let (x2, y2, z2) = (x.sqr(), y.sqr(), z.sqr());
    x2.sqr()
        .add(&y2.sqr())
        .add(&z2.sqr())
        .add(&x2.mul(&y2).mul_real(&t.a))
        .add(&x2.mul(&z2).mul_real(&t.b))
        .add(&y2.mul(&z2).mul_real(&t.c))
}

/// Apply a 3x3 complex matrix to a point.
pub fn apply_matrix(m: &[[ComplexBall; 3]; 3], p: &[ComplexBall; 3]) -> [ComplexBall; 3] {
    std::array::from_fn(|i| m[i][0].mul(&p[0]).add(&m[i][1].mul(&p[1])).add(&m[i][2].mul(&p[2])))
}

/// One certified inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityRecord {
    pub lhs: String,
    pub rhs: String,
    pub relation: String,
    /// Certified lower bound on `|lhs - rhs|`, as a truncated decimal.
    pub gap: String,
}

/// Certificate that the quartics `C(alpha_1, alpha_d)` are pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinctnessCertificate {
    pub records: Vec<InequalityRecord>,
    pub precision: u32,
    pub valid: bool,
}

fn gap_string(x: &RealBall, y: &RealBall) -> String {
    match certified_gap(x, y) {
        Some(g) => RealBall::exact(g, 64).to_decimal(40),
        None => "0".into(),
    }
}

/// Certify `alpha_1 > alpha_d`, `r_d = (1 - alpha_1^2)/(1 - alpha_d^2)` in
/// `(0, 1)`, and the `r_d` pairwise distinct, so that no two quartics
/// satisfy `r_d = r_d'` or `r_d r_d' = 1`.
pub fn distinctness_certificate(
    alpha1: &AlgebraicReal,
    others: &[(u64, AlgebraicReal)],
) -> Result<DistinctnessCertificate> {
    for (i, (d, x)) in others.iter().enumerate() {
        let mut all = vec![(1u64, alpha1)];
        all.extend(others[..i].iter().map(|(d, a)| (*d, a)));
        for (e, y) in all {
            if x.same_root_as(y) {
                return Err(Error::CertificateInvalid(format!("alpha_{d} and alpha_{e} are the same root")));
            }
        }
    }
    refine_until(64, precision_cap(), "certifying distinctness", |p| {
        let a1 = alpha1.refine(p)?.with_prec(p);
        let one = RealBall::one(p);
        let num = one.sub(&a1.sqr());
        let mut records = Vec::new();
        let mut rs = Vec::new();
        for (d, x) in others {
            let ad = x.refine(p)?.with_prec(p);
            if certify_compare(&a1, &ad) != CertOrdering::Greater {
                return Err(Error::Undecided(format!("alpha_1 > alpha_{d}")));
            }
            records.push(InequalityRecord {
                lhs: "alpha_1".into(),
                rhs: format!("alpha_{d}"),
                relation: ">".into(),
                gap: gap_string(&a1, &ad),
            });
            let r = num.div(&one.sub(&ad.sqr()))?;
            let zero = RealBall::zero(p);
            if certify_compare(&r, &zero) != CertOrdering::Greater || certify_compare(&r, &one) != CertOrdering::Less {
                return Err(Error::Undecided(format!("0 < r_{d} < 1")));
            }
            records.push(InequalityRecord {
                lhs: format!("r_{d}"),
                rhs: "0".into(),
                relation: ">".into(),
                gap: gap_string(&r, &zero),
            });
            records.push(InequalityRecord {
                lhs: format!("r_{d}"),
                rhs: "1".into(),
                relation: "<".into(),
                gap: gap_string(&r, &one),
            });
            rs.push((*d, r));
        }
        for i in 0..rs.len() {
            for j in i + 1..rs.len() {
                let (di, ri) = &rs[i];
                let (dj, rj) = &rs[j];
                if certify_compare(ri, rj) == CertOrdering::Overlap {
                    return Err(Error::Undecided(format!("r_{di} != r_{dj}")));
                }
                records.push(InequalityRecord {
                    lhs: format!("r_{di}"),
                    rhs: format!("r_{dj}"),
                    relation: "!=".into(),
                    gap: gap_string(ri, rj),
                });
            }
        }
        Ok(DistinctnessCertificate { records, precision: p, valid: true })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn t(a: i64, b: i64, c: i64) -> QuarticTriple<BigRational> {
        QuarticTriple::new(q(a), q(b), q(c))
    }

    #[test]
    fn invariant_examples() {
        assert_eq!(strict_invariant(&t(1, 2, 3)).compare(&strict_invariant(&t(3, 1, 2))), Tri::Equal);
        assert_eq!(strict_invariant(&t(1, 2, 3)).compare(&strict_invariant(&t(-1, -2, 3))), Tri::Equal);
        assert_eq!(strict_invariant(&t(1, 2, 3)).compare(&strict_invariant(&t(-1, 2, 3))), Tri::Different);
    }

    #[test]
    fn nonsingularity_examples() {
        assert!(!is_nonsingular(&t(2, 5, 7)).unwrap());
        assert!(is_nonsingular(&t(0, 0, 0)).unwrap());
        assert!(!is_nonsingular(&t(3, 3, 7)).unwrap());
    }

    #[test]
    fn companions() {
        let d = associated_forms(&t(0, 0, 0)).unwrap();
        let six = strict_invariant(&t(6, 0, 0));
        assert!(d.strict_classes.iter().any(|c| c.compare(&six) == Tri::Equal));
        let d = associated_forms(&t(6, 1, 1)).unwrap();
        let target = StrictClassInvariant::from_parts(
            [q(0), BigRational::new(1.into(), 2.into()), BigRational::new(1.into(), 2.into())],
            q(0),
        );
        assert!(d.strict_classes.iter().any(|c| c.compare(&target) == Tri::Equal));
        assert_eq!(associated_forms(&t(1, 3, 5)).unwrap().strict_classes.len(), 1);
    }

    #[test]
    fn isomorphism_examples() {
        assert_eq!(are_isomorphic(&t(0, 0, 0), &t(6, 0, 0)).unwrap().verdict, IsoVerdict::Isomorphic);
        assert_eq!(are_isomorphic(&t(1, 3, 5), &t(1, 3, 5)).unwrap().verdict, IsoVerdict::Isomorphic);
        assert_eq!(are_isomorphic(&t(1, 3, 5), &t(1, 3, -5)).unwrap().verdict, IsoVerdict::NonIsomorphic);
        assert!(matches!(are_isomorphic(&t(2, 0, 0), &t(0, 0, 0)), Err(Error::Singular(_))));
    }

    #[test]
    fn aut_groups() {
        assert_eq!(classify_aut_group(&t(0, 0, 0)).unwrap(), AutGroupLabel::G96);
        assert_eq!(classify_aut_group(&t(1, 1, 1)).unwrap(), AutGroupLabel::S4);
        assert_eq!(classify_aut_group(&t(1, 3, 5)).unwrap(), AutGroupLabel::V4);
        assert_eq!(classify_aut_group(&t(1, 0, 0)).unwrap(), AutGroupLabel::G16);
        assert_eq!(classify_aut_group(&t(1, 3, 3)).unwrap(), AutGroupLabel::D8);
    }

    #[test]
    fn vary_involution() {
        let a = BigRational::new(7.into(), 3.into());
        assert_eq!(vary_a(&vary_a(&a).unwrap()).unwrap(), a);
        assert!(vary_a(&q(-2)).is_err());
    }
}
