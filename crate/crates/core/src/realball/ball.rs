//! Midpoint-radius real balls.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::dyadic::Dyadic;
use super::mag::Mag;
use crate::error::{Error, Result};

/// A certified real number: the true value lies in `[mid - rad, mid + rad]`.
///
/// `prec` is the working precision (mantissa bits) used when rounding the
/// midpoint of results derived from this ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealBall {
    mid: Dyadic,
    rad: Mag,
    prec: u32,
}

/// Outcome of comparing two balls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertOrdering {
    Less,
    Greater,
    /// The enclosures intersect; more precision is needed.
    Overlap,
}

impl RealBall {
    pub fn new(mid: Dyadic, rad: Mag, prec: u32) -> Self {
        RealBall { mid, rad, prec }
    }

    pub fn exact(mid: Dyadic, prec: u32) -> Self {
        RealBall { mid, rad: Mag::zero(), prec }
    }

    pub fn zero(prec: u32) -> Self {
        Self::exact(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::exact(Dyadic::one(), prec)
    }

    pub fn from_int<T: Into<BigInt>>(n: T, prec: u32) -> Self {
        Self::exact(Dyadic::from_int(n), prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let num = Self::from_int(q.numer().clone(), prec);
        if q.denom() == &BigInt::from(1) {
            return num;
        }
        let den = Self::from_int(q.denom().clone(), prec);
        num.div(&den).expect("positive denominator")
    }

    /// Ball `[lo, hi]` hull of two dyadic endpoints.
    pub fn from_endpoints(lo: &Dyadic, hi: &Dyadic, prec: u32) -> Self {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let mid = Dyadic::midpoint(lo, hi);
        let rad = Mag::from_dyadic_up(&(hi - &mid));
        let mut b = RealBall { mid, rad, prec };
        b.round_in_place();
        b
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(mut self, prec: u32) -> Self {
        self.prec = prec;
        self.round_in_place();
        self
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn lower(&self) -> Dyadic {
        &self.mid - &self.rad.to_dyadic()
    }

    pub fn upper(&self) -> Dyadic {
        &self.mid + &self.rad.to_dyadic()
    }

    /// Upper bound on `|x|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        Mag::from_dyadic_up(&self.mid).add_up(&self.rad)
    }

    /// Lower bound on `|x|` over the ball (zero if the ball contains zero).
    pub fn abs_lower(&self) -> Mag {
        Mag::from_dyadic_down(&self.mid).sub_down(&self.rad)
    }

    fn round_in_place(&mut self) {
        let (m, err) = self.mid.round(self.prec);
        self.mid = m;
        self.rad = self.rad.add_up(&err);
    }

    fn finish(mid: Dyadic, rad: Mag, prec: u32) -> Self {
        let mut b = RealBall { mid, rad, prec };
        b.round_in_place();
        b
    }

    /// Certified sign: `None` when the ball straddles zero. A zero-radius ball
    /// with zero midpoint is certified zero.
    pub fn sign(&self) -> Option<Ordering> {
        let m = Mag::from_dyadic_down(&self.mid);
        if self.rad.is_zero() {
            return Some(self.mid.sign());
        }
        if m > self.rad || (self.rad.to_dyadic() < self.mid.abs()) {
            Some(self.mid.sign())
        } else {
            None
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Some(Ordering::Greater)
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Some(Ordering::Less)
    }

    pub fn contains_zero(&self) -> bool {
        self.lower() <= Dyadic::zero() && self.upper() >= Dyadic::zero()
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        (&self.mid - x).abs() <= self.rad.to_dyadic()
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        let d = (self.mid.to_rational() - q).abs();
        d <= self.rad.to_dyadic().to_rational()
    }

    /// True if every point of `other` lies in `self`.
    pub fn contains_ball(&self, other: &RealBall) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn overlaps(&self, other: &RealBall) -> bool {
        certify_compare(self, other) == CertOrdering::Overlap
    }

    /// Smallest ball containing both.
    pub fn union(&self, other: &RealBall) -> RealBall {
        let lo = std::cmp::min(self.lower(), other.lower());
        let hi = std::cmp::max(self.upper(), other.upper());
        RealBall::from_endpoints(&lo, &hi, self.prec.max(other.prec))
    }

    /// Intersection of two enclosures, `None` if they are disjoint.
    pub fn intersect(&self, other: &RealBall) -> Option<RealBall> {
        let lo = std::cmp::max(self.lower(), other.lower());
        let hi = std::cmp::min(self.upper(), other.upper());
        if lo > hi {
            return None;
        }
        Some(RealBall::from_endpoints(&lo, &hi, self.prec.max(other.prec)))
    }

    /// True if the radius is strictly below `2^-bits`.
    pub fn rad_below_pow2(&self, bits: i64) -> bool {
        self.rad < Mag::pow2(-bits)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn neg(&self) -> RealBall {
        RealBall { mid: -&self.mid, rad: self.rad, prec: self.prec }
    }

    pub fn abs(&self) -> RealBall {
        match self.sign() {
            Some(Ordering::Less) => self.neg(),
            Some(_) => self.clone(),
            None => {
                let hi = std::cmp::max(self.upper(), -self.lower());
                RealBall::from_endpoints(&Dyadic::zero(), &hi, self.prec)
            }
        }
    }

    pub fn add(&self, other: &RealBall) -> RealBall {
        let prec = self.prec.max(other.prec);
        let rad = self.rad.add_up(&other.rad);
        // skip the exact sum when one operand is far below the other's ulp
        let (ta, tb) = (self.mid.top(), other.mid.top());
        if !other.mid.is_zero() && !self.mid.is_zero() {
            if tb < ta - prec as i64 - 64 {
                return Self::finish(self.mid.clone(), rad.add_up(&Mag::from_dyadic_up(&other.mid)), prec);
            }
            if ta < tb - prec as i64 - 64 {
                return Self::finish(other.mid.clone(), rad.add_up(&Mag::from_dyadic_up(&self.mid)), prec);
            }
        }
        Self::finish(&self.mid + &other.mid, rad, prec)
    }

    pub fn sub(&self, other: &RealBall) -> RealBall {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RealBall) -> RealBall {
        let prec = self.prec.max(other.prec);
        let mid = &self.mid * &other.mid;
        let am = Mag::from_dyadic_up(&self.mid);
        let bm = Mag::from_dyadic_up(&other.mid);
        let rad = am
            .mul_up(&other.rad)
            .add_up(&bm.mul_up(&self.rad))
            .add_up(&self.rad.mul_up(&other.rad));
        Self::finish(mid, rad, prec)
    }

    pub fn sqr(&self) -> RealBall {
        let mid = &self.mid * &self.mid;
        let am = Mag::from_dyadic_up(&self.mid);
        let rad = am.mul_up(&self.rad).mul_2exp(1).add_up(&self.rad.mul_up(&self.rad));
        let mut b = Self::finish(mid, rad, self.prec);
        // the square is nonnegative; clip a lower endpoint below zero
        if b.lower() < Dyadic::zero() {
            b = RealBall::from_endpoints(&Dyadic::zero(), &b.upper(), self.prec);
        }
        b
    }

    pub fn mul_int(&self, k: &BigInt) -> RealBall {
        let mid = &self.mid * &Dyadic::from_int(k.clone());
        let rad = self.rad.mul_up(&Mag::from_bigint_up(k, 0));
        Self::finish(mid, rad, self.prec)
    }

    pub fn mul_i64(&self, k: i64) -> RealBall {
        self.mul_int(&BigInt::from(k))
    }

    pub fn mul_2exp(&self, k: i64) -> RealBall {
        RealBall { mid: self.mid.mul_2exp(k), rad: self.rad.mul_2exp(k), prec: self.prec }
    }

    /// Division; fails with `UndecidableSign` if the divisor contains zero.
    pub fn div(&self, other: &RealBall) -> Result<RealBall> {
        let prec = self.prec.max(other.prec);
        let denom_low = other.abs_lower();
        if denom_low.is_zero() {
            return Err(Error::UndecidableSign("division by a ball containing zero".into()));
        }
        // quotient of midpoints with at least prec + 2 correct bits
        let (q, qerr) = if self.mid.is_zero() {
            (Dyadic::zero(), Mag::zero())
        } else {
            let na = self.mid.mantissa().bits() as i64;
            let nb = other.mid.mantissa().bits() as i64;
            let shift = (prec as i64 + 2 + nb - na).max(0);
            let num = self.mid.mantissa() << shift as usize;
            let quo = num / other.mid.mantissa();
            let exp = self.mid.exponent() - shift - other.mid.exponent();
            (Dyadic::new(quo, exp), Mag::pow2(exp))
        };
        // |x/y - xm/ym| <= (xr + |xm/ym| yr) / (|ym| - yr)
        let qabs = Mag::from_dyadic_up(&q).add_up(&qerr);
        let prop = if self.rad.is_zero() && other.rad.is_zero() {
            Mag::zero()
        } else {
            self.rad.add_up(&qabs.mul_up(&other.rad)).div_up(&denom_low)
        };
        Ok(Self::finish(q, prop.add_up(&qerr), prec))
    }

    pub fn inv(&self) -> Result<RealBall> {
        RealBall::one(self.prec).div(self)
    }

    pub fn div_int(&self, k: i64) -> RealBall {
        self.div(&RealBall::from_int(k, self.prec)).expect("nonzero integer divisor")
    }

    /// Square root; fails with `Domain` if the ball reaches below zero.
    pub fn sqrt(&self) -> Result<RealBall> {
        let lo = self.lower();
        if lo < Dyadic::zero() {
            return Err(Error::Domain("square root of a ball containing negative values".into()));
        }
        let prec = self.prec;
        if lo.is_zero() {
            if self.is_exact() {
                return Ok(RealBall::zero(prec));
            }
            // [0, hi]: enclose by [0, sqrt(hi)]
            let hi = Mag::from_dyadic_up(&self.upper()).sqrt_up();
            return Ok(RealBall::from_endpoints(&Dyadic::zero(), &hi.to_dyadic(), prec));
        }
        let (root, rerr) = sqrt_dyadic(&self.mid, prec + 2);
        // |sqrt(x) - sqrt(m)| <= r / (2 sqrt(lo))
        let prop = if self.rad.is_zero() {
            Mag::zero()
        } else {
            let s = Mag::from_dyadic_down(&lo).sqrt_down();
            self.rad.div_up(&s).mul_2exp(-1)
        };
        Ok(Self::finish(root, prop.add_up(&rerr), prec))
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, mut e: u32) -> RealBall {
        let mut base = self.clone();
        let mut acc = RealBall::one(self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    /// Rational enclosure `[lower, upper]`.
    pub fn rational_bounds(&self) -> (BigRational, BigRational) {
        (self.lower().to_rational(), self.upper().to_rational())
    }

    /// Decimal digits after the point that are pinned by the enclosure,
    /// truncated (never rounded) and capped at `max_frac`. Falls back to a
    /// `mid +/- rad` rendering when not even the integer part is pinned.
    pub fn to_decimal(&self, max_frac: u32) -> String {
        let lo = self.lower();
        let hi = self.upper();
        if lo.sign() == Ordering::Less && hi.sign() == Ordering::Greater {
            return format!("{:e} +/- {:e}", self.mid.to_f64(), self.rad.to_f64());
        }
        if hi.sign() != Ordering::Greater && lo.sign() == Ordering::Less {
            let neg = self.neg();
            let s = neg.to_decimal(max_frac);
            return if s.contains("+/-") { format!("-({s})") } else { format!("-{s}") };
        }
        let mut fl = lo.floor_decimal_scaled(max_frac);
        let mut fh = hi.floor_decimal_scaled(max_frac);
        let mut k = max_frac;
        let ten = BigInt::from(10u8);
        while fl != fh && k > 0 {
            fl = &fl / &ten;
            fh = &fh / &ten;
            k -= 1;
        }
        if fl != fh {
            return format!("{:e} +/- {:e}", self.mid.to_f64(), self.rad.to_f64());
        }
        format_fixed(&fl, k)
    }

    /// Number of fractional decimal digits pinned (capped at `max_frac`).
    pub fn pinned_digits(&self, max_frac: u32) -> u32 {
        let s = self.to_decimal(max_frac);
        if s.contains("+/-") {
            return 0;
        }
        s.split('.').nth(1).map(|f| f.len() as u32).unwrap_or(0)
    }
}

fn format_fixed(v: &BigInt, k: u32) -> String {
    let neg = v.is_negative();
    let digits = v.abs().to_string();
    let k = k as usize;
    let body = if k == 0 {
        digits
    } else if digits.len() <= k {
        format!("0.{}{}", "0".repeat(k - digits.len()), digits)
    } else {
        let (a, b) = digits.split_at(digits.len() - k);
        format!("{a}.{b}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Square root of a nonnegative dyadic to `prec` bits with its error bound.
fn sqrt_dyadic(x: &Dyadic, prec: u32) -> (Dyadic, Mag) {
    if x.is_zero() {
        return (Dyadic::zero(), Mag::zero());
    }
    let bits = x.mantissa().bits() as i64;
    // shift so the integer root has about prec bits and the exponent is even
    let mut shift = (2 * prec as i64 - bits).max(0);
    if (x.exponent() - shift) % 2 != 0 {
        shift += 1;
    }
    let m: BigInt = x.mantissa() << shift as usize;
    let root = m.sqrt();
    let exact = &root * &root == m;
    let exp = (x.exponent() - shift) / 2;
    let err = if exact { Mag::zero() } else { Mag::pow2(exp) };
    (Dyadic::new(root, exp), err)
}

/// Compare two balls; `Less`/`Greater` only when the enclosures are disjoint.
pub fn certify_compare(x: &RealBall, y: &RealBall) -> CertOrdering {
    if x.upper() < y.lower() {
        CertOrdering::Less
    } else if x.lower() > y.upper() {
        CertOrdering::Greater
    } else {
        CertOrdering::Overlap
    }
}

/// Gap between two disjoint balls (`lower(y) - upper(x)` or symmetric),
/// `None` when they overlap.
pub fn certified_gap(x: &RealBall, y: &RealBall) -> Option<Dyadic> {
    match certify_compare(x, y) {
        CertOrdering::Less => Some(&y.lower() - &x.upper()),
        CertOrdering::Greater => Some(&x.lower() - &y.upper()),
        CertOrdering::Overlap => None,
    }
}

impl fmt::Display for RealBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(30))
    }
}

/// Convenience: check a ball is within `tol` of a rational.
pub fn within(x: &RealBall, target: &BigRational, tol: &BigRational) -> bool {
    let (lo, hi) = x.rational_bounds();
    (lo - target).abs() < *tol && (hi - target).abs() < *tol
}
