use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::intpoly::IntPoly;
use super::sturm::{Isolated, SturmSequence};
use crate::error::{Error, Result};
use crate::realball::{precision_cap, Dyadic, RealBall};

/// Real algebraic number: a root of `defining` isolated in `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicReal {
    defining: IntPoly,
    minimal: Option<IntPoly>,
    lo: BigRational,
    hi: BigRational,
    decimal: RealBall,
}

impl AlgebraicReal {
    /// Check by a Sturm count that `[lo, hi]` holds exactly one root of the
    /// squarefree polynomial `defining`.
    pub fn new(defining: IntPoly, lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi || defining.degree() == 0 {
            return Err(Error::InvalidArgument("empty interval or constant polynomial".into()));
        }
        let st = SturmSequence::new(&defining);
        let mut n = st.count(&lo, &hi);
        if defining.sign_at(&lo) == Ordering::Equal {
            n += 1;
        }
        if n != 1 {
            return Err(Error::InvalidArgument(format!("interval holds {n} roots, expected 1")));
        }
        Ok(Self::trusted(defining, lo, hi))
    }

    pub fn from_isolated(defining: IntPoly, iso: Isolated) -> Self {
        Self::trusted(defining, iso.lo, iso.hi)
    }

    /// Caller guarantees exactly one root of `defining` in `[lo, hi]`.
    pub(crate) fn trusted(defining: IntPoly, lo: BigRational, hi: BigRational) -> Self {
        let decimal = interval_ball(&lo, &hi, 64);
        AlgebraicReal { defining, minimal: None, lo, hi, decimal }
    }

    pub fn defining(&self) -> &IntPoly {
        &self.defining
    }

    pub fn minimal(&self) -> Option<&IntPoly> {
        self.minimal.as_ref()
    }

    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    /// Cached enclosure from the most recent refinement.
    pub fn decimal(&self) -> &RealBall {
        &self.decimal
    }

    /// Best available polynomial: the minimal one if recovered.
    pub fn best_poly(&self) -> &IntPoly {
        self.minimal.as_ref().unwrap_or(&self.defining)
    }

    /// Store a minimal polynomial after checking it divides `defining` and
    /// has exactly one root in the isolating interval.
    pub fn set_minimal(&mut self, p: IntPoly) -> Result<()> {
        self.defining.exact_divide(&p)?;
        let st = SturmSequence::new(&p);
        let mut n = st.count(&self.lo, &self.hi);
        if p.sign_at(&self.lo) == Ordering::Equal {
            n += 1;
        }
        if n != 1 {
            return Err(Error::InternalInconsistency("candidate factor has no unique root in the interval".into()));
        }
        self.minimal = Some(p);
        Ok(())
    }

    /// Whether both values are the same root. Only meaningful when the two
    /// share a defining polynomial; otherwise answers `false`. Isolating
    /// intervals of one polynomial meet in more than a non-root endpoint
    /// only when they hold the same root.
    pub fn same_root_as(&self, other: &AlgebraicReal) -> bool {
        if self.defining != other.defining {
            return false;
        }
        let l = (&self.lo).max(&other.lo);
        let h = (&self.hi).min(&other.hi);
        match l.cmp(h) {
            Ordering::Greater => false,
            Ordering::Less => true,
            Ordering::Equal => [self, other].iter().all(|x| x.lo == x.hi || (l != &x.lo && l != &x.hi)),
        }
    }

    fn sign_at(&self, x: &BigRational) -> Ordering {
        let p = self.best_poly();
        // a ball evaluation settles most signs cheaply
        let bits = p.max_coeff_bits() as u32 + 2 * p.degree() as u32 + 64;
        let xb = RealBall::from_rational(x, bits + x.numer().bits() as u32 + x.denom().bits() as u32);
        if let Some(s) = p.eval_ball(&xb).sign() {
            return s;
        }
        p.sign_at(x)
    }

    /// Enclosure of radius below `2^-precision`, by bisection.
    pub fn refine(&self, precision: u32) -> Result<RealBall> {
        Ok(self.narrowed(precision)?.decimal)
    }

    /// Copy with the isolating interval shrunk to width below `2^-precision`:
    /// bisection until the derivative is certified nonzero on the interval,
    /// then interval Newton steps with doubling working precision.
    pub fn narrowed(&self, precision: u32) -> Result<AlgebraicReal> {
        if precision > precision_cap() {
            return Err(Error::PrecisionExhausted { cap: precision_cap(), what: "refining an algebraic real".into() });
        }
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        let width = BigRational::new(BigInt::one(), BigInt::one() << (precision as usize + 1));
        if lo != hi {
            let s_lo = self.sign_at(&lo);
            if s_lo == Ordering::Equal {
                hi = lo.clone();
            } else if self.sign_at(&hi) == Ordering::Equal {
                lo = hi.clone();
            }
            let two = BigRational::from_integer(BigInt::from(2));
            let mut steps = 0u32;
            while &hi - &lo > width {
                if steps % 8 == 0 {
                    if let Some((l, h)) = self.newton(&lo, &hi, precision) {
                        lo = l;
                        hi = h;
                        continue;
                    }
                }
                steps += 1;
                // dyadic midpoints keep the endpoints short
                let m = dyadic_mid(&lo, &hi, precision + 2).unwrap_or_else(|| (&lo + &hi) / &two);
                let s = self.sign_at(&m);
                if s == Ordering::Equal {
                    lo = m.clone();
                    hi = m;
                } else if s == s_lo {
                    lo = m;
                } else {
                    hi = m;
                }
            }
        }
        let decimal = interval_ball(&lo, &hi, precision + 8);
        Ok(AlgebraicReal { defining: self.defining.clone(), minimal: self.minimal.clone(), lo, hi, decimal })
    }

    /// Interval Newton iteration on `[lo, hi]`. Returns a strictly narrower
    /// interval still holding the root, or `None` when the derivative is not
    /// certified nonzero there or the iteration stalls.
    fn newton(&self, lo: &BigRational, hi: &BigRational, precision: u32) -> Option<(BigRational, BigRational)> {
        let p = self.best_poly();
        let dp = p.derivative();
        let size = lo.abs().max(hi.abs()).ceil().to_integer().bits() as u32 + 1;
        let base = p.max_coeff_bits() as u32 + size * p.degree() as u32 + 64;
        let mut x = interval_ball(lo, hi, base + precision.min(64));
        if !dp.eval_ball(&x).sign().is_some_and(|s| s != Ordering::Equal) {
            return None;
        }
        let target = precision as i64 + 1;
        let mut progressed = false;
        loop {
            let have = -x.rad().log2_ceil().max(-(1 << 40));
            if x.rad_below_pow2(target) || x.is_exact() {
                break;
            }
            let wp = base + (2 * have.max(32) as u32).min(precision + 64);
            let xw = x.clone().with_prec(wp);
            let m = RealBall::exact(xw.mid().clone(), wp);
            let step = match p.eval_ball(&m).div(&dp.eval_ball(&xw)) {
                Ok(q) => q,
                Err(_) => break,
            };
            let n = m.sub(&step);
            let next = match n.intersect(&xw) {
                Some(b) => b,
                None => break,
            };
            // stop when a step no longer halves the radius
            if next.rad().mul_2exp(1) > x.rad() {
                break;
            }
            x = next;
            progressed = true;
        }
        if !progressed {
            return None;
        }
        let l = x.lower().to_rational().max(lo.clone());
        let h = x.upper().to_rational().min(hi.clone());
        if (&h - &l) * BigRational::from_integer(BigInt::from(4)) >= (hi - lo) * BigRational::from_integer(BigInt::from(3)) {
            return None;
        }
        Some((l, h))
    }
}

/// A dyadic strictly inside `(lo, hi)` near the middle, if one of at most
/// `bits` fractional bits exists there.
fn dyadic_mid(lo: &BigRational, hi: &BigRational, bits: u32) -> Option<BigRational> {
    let m = (lo + hi) / BigRational::from_integer(BigInt::from(2));
    let w = hi - lo;
    let mut k = 1u32;
    while k <= bits + 2 {
        let scale = BigRational::from_integer(BigInt::one() << k as usize);
        let cand = (&m * &scale).round() / &scale;
        if &cand > lo && &cand < hi && (&cand - &m).abs() <= &w / BigRational::from_integer(BigInt::from(4)) {
            return Some(cand);
        }
        k += 1;
    }
    None
}

/// Ball enclosing the rational interval `[lo, hi]`.
pub fn interval_ball(lo: &BigRational, hi: &BigRational, prec: u32) -> RealBall {
    let k = prec as i64 + 4;
    let a = Dyadic::floor_rational(lo, k);
    let b = Dyadic::ceil_rational(hi, k);
    RealBall::from_endpoints(&a, &b, prec)
}
