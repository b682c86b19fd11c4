//! Exact dyadic rationals `man * 2^exp`.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::mag::{bigint_sign, Mag};

/// Exact dyadic rational. The mantissa is odd unless the value is zero, in
/// which case the exponent is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { man, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.man.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.man.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.man >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn zero() -> Self {
        Dyadic { man: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { man: BigInt::one(), exp: 0 }
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Dyadic::new(n.into(), 0)
    }

    pub fn pow2(e: i64) -> Self {
        Dyadic { man: BigInt::one(), exp: e }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn sign(&self) -> Ordering {
        bigint_sign(&self.man)
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { man: self.man.abs(), exp: self.exp }
    }

    /// `floor(log2 |x|) + 1`, i.e. `|x| < 2^top`. Zero maps to `i64::MIN`.
    pub fn top(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.man.bits() as i64
        }
    }

    pub fn mul_2exp(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { man: self.man.clone(), exp: self.exp + k }
    }

    /// Truncate the mantissa to at most `prec` bits. Returns the rounded value
    /// and an upper bound for the rounding error.
    pub fn round(&self, prec: u32) -> (Dyadic, Mag) {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return (self.clone(), Mag::zero());
        }
        let shift = bits - prec as u64;
        let man = &self.man >> shift;
        let exp = self.exp + shift as i64;
        (Dyadic::new(man, exp), Mag::pow2(exp))
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as usize)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Floor of `self * 2^k` as an integer.
    pub fn floor_scaled(&self, k: i64) -> BigInt {
        let e = self.exp + k;
        if e >= 0 {
            &self.man << e as usize
        } else {
            // arithmetic shift floors toward negative infinity
            &self.man >> (-e) as usize
        }
    }

    /// Floor of `self * 10^k`.
    pub fn floor_decimal_scaled(&self, k: u32) -> BigInt {
        let scaled = &self.man * BigInt::from(10u8).pow(k);
        if self.exp >= 0 {
            scaled << self.exp as usize
        } else {
            scaled >> (-self.exp) as usize
        }
    }

    /// Nearest dyadic with denominator `2^k` at or below `q`.
    pub fn floor_rational(q: &BigRational, k: i64) -> Dyadic {
        let scaled = scale_rational(q, k);
        Dyadic::new(scaled.floor().to_integer(), -k)
    }

    pub fn ceil_rational(q: &BigRational, k: i64) -> Dyadic {
        let scaled = scale_rational(q, k);
        Dyadic::new(scaled.ceil().to_integer(), -k)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits() as i64;
        let shift = (bits - 60).max(0);
        let top: i64 = num_traits::ToPrimitive::to_i64(&(&self.man >> shift as usize)).unwrap_or(0);
        let e = (self.exp + shift).clamp(-3000, 3000) as i32;
        top as f64 * 2f64.powi(e)
    }

    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        (a + b).mul_2exp(-1)
    }
}

fn scale_rational(q: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        q * BigRational::from_integer(BigInt::one() << k as usize)
    } else {
        q / BigRational::from_integer(BigInt::one() << (-k) as usize)
    }
}

fn align(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, i64) {
    let e = a.exp.min(b.exp);
    let am = &a.man << (a.exp - e) as usize;
    let bm = &b.man << (b.exp - e) as usize;
    (am, bm, e)
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &'a Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, e) = align(self, rhs);
        Dyadic::new(a + b, e)
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &'a Dyadic) -> Dyadic {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return -rhs;
        }
        let (a, b, e) = align(self, rhs);
        Dyadic::new(a - b, e)
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &'a Dyadic) -> Dyadic {
        Dyadic::new(&self.man * &rhs.man, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { man: -&self.man, exp: self.exp }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { man: -self.man, exp: self.exp }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.sign(), other.sign());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == Ordering::Equal {
            return Ordering::Equal;
        }
        // same nonzero sign: compare magnitudes by top bit first
        let (ta, tb) = (self.top(), other.top());
        let mag = if ta != tb {
            ta.cmp(&tb)
        } else {
            let (a, b, _) = align(&self.abs(), &other.abs());
            a.cmp(&b)
        };
        if sa == Ordering::Greater {
            mag
        } else {
            mag.reverse()
        }
    }
}
