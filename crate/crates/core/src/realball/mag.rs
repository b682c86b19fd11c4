//! Low-precision magnitude bounds used for ball radii.
//!
//! A [`Mag`] is `man * 2^exp` with a 30-bit mantissa. Every operation has an
//! explicit rounding direction: `*_up` results are upper bounds of the exact
//! value, `*_down` results are lower bounds.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Roots;
use num_traits::{ToPrimitive, Zero};

use super::dyadic::Dyadic;

const MAG_BITS: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mag {
    man: u64,
    exp: i64,
}

fn bit_len(x: u128) -> u32 {
    128 - x.leading_zeros()
}

impl Mag {
    pub const fn zero() -> Self {
        Mag { man: 0, exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    /// Exactly `2^e`.
    pub fn pow2(e: i64) -> Self {
        Mag { man: 1 << (MAG_BITS - 1), exp: e - (MAG_BITS as i64 - 1) }
    }

    pub fn from_u64(n: u64) -> Self {
        Self::from_parts_up(n as u128, 0)
    }

    fn from_parts(man: u128, exp: i64, up: bool) -> Self {
        if man == 0 {
            return Mag::zero();
        }
        let bits = bit_len(man);
        if bits > MAG_BITS {
            let shift = bits - MAG_BITS;
            let mut m = man >> shift;
            let lost = man & ((1u128 << shift) - 1);
            let mut e = exp + shift as i64;
            if up && lost != 0 {
                m += 1;
                if m == 1u128 << MAG_BITS {
                    m >>= 1;
                    e += 1;
                }
            }
            Mag { man: m as u64, exp: e }
        } else {
            let shift = MAG_BITS - bits;
            Mag { man: (man << shift) as u64, exp: exp - shift as i64 }
        }
    }

    pub(crate) fn from_parts_up(man: u128, exp: i64) -> Self {
        Self::from_parts(man, exp, true)
    }

    pub(crate) fn from_parts_down(man: u128, exp: i64) -> Self {
        Self::from_parts(man, exp, false)
    }

    /// Upper bound for `|man_big| * 2^exp`.
    pub(crate) fn from_bigint_up(man: &BigInt, exp: i64) -> Self {
        Self::from_bigint(man, exp, true)
    }

    pub(crate) fn from_bigint_down(man: &BigInt, exp: i64) -> Self {
        Self::from_bigint(man, exp, false)
    }

    fn from_bigint(man: &BigInt, exp: i64, up: bool) -> Self {
        if man.is_zero() {
            return Mag::zero();
        }
        let mag = man.magnitude();
        let bits = mag.bits();
        if bits <= 100 {
            return Self::from_parts(mag.to_u128().unwrap(), exp, up);
        }
        let shift = bits - 100;
        let top = (mag >> shift).to_u128().unwrap();
        // the dropped low bits only matter for the upward direction
        let top = if up { top + 1 } else { top };
        Self::from_parts(top, exp + shift as i64, up)
    }

    pub fn from_dyadic_up(d: &Dyadic) -> Self {
        Self::from_bigint_up(d.mantissa(), d.exponent())
    }

    pub fn from_dyadic_down(d: &Dyadic) -> Self {
        Self::from_bigint_down(d.mantissa(), d.exponent())
    }

    pub fn to_dyadic(&self) -> Dyadic {
        Dyadic::new(BigInt::from(self.man), self.exp)
    }

    /// Upper bound for `log2(self)`; `i64::MIN` for zero.
    pub fn log2_ceil(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        self.exp + MAG_BITS as i64
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let e = self.exp.clamp(-2000, 2000) as i32;
        self.man as f64 * 2f64.powi(e)
    }

    pub fn add_up(&self, other: &Mag) -> Mag {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.exp >= other.exp { (self, other) } else { (other, self) };
        let diff = (hi.exp - lo.exp) as u64;
        if diff > 90 {
            return Self::from_parts_up(hi.man as u128 + 1, hi.exp);
        }
        Self::from_parts_up(((hi.man as u128) << diff) + lo.man as u128, lo.exp)
    }

    /// Lower bound for `max(0, self - other)`.
    pub fn sub_down(&self, other: &Mag) -> Mag {
        if other.is_zero() {
            return *self;
        }
        if self.cmp(other) != Ordering::Greater {
            return Mag::zero();
        }
        let e = self.exp.min(other.exp);
        let da = (self.exp - e) as u64;
        let db = (other.exp - e) as u64;
        if da > 90 {
            // other is below one unit of self
            return Self::from_parts_down(self.man as u128 - 1, self.exp);
        }
        let a = (self.man as u128) << da;
        let b = (other.man as u128) << db;
        Self::from_parts_down(a - b, e)
    }

    pub fn mul_up(&self, other: &Mag) -> Mag {
        Self::from_parts_up(self.man as u128 * other.man as u128, self.exp + other.exp)
    }

    pub fn mul_down(&self, other: &Mag) -> Mag {
        Self::from_parts_down(self.man as u128 * other.man as u128, self.exp + other.exp)
    }

    pub fn mul_2exp(&self, k: i64) -> Mag {
        if self.is_zero() {
            return *self;
        }
        Mag { man: self.man, exp: self.exp + k }
    }

    pub fn mul_u64_up(&self, k: u64) -> Mag {
        self.mul_up(&Mag::from_u64(k))
    }

    /// Upper bound for `self / other`; `other` must be nonzero.
    pub fn div_up(&self, other: &Mag) -> Mag {
        assert!(!other.is_zero(), "Mag division by zero");
        if self.is_zero() {
            return *self;
        }
        let q = ((self.man as u128) << 64) / other.man as u128 + 1;
        Self::from_parts_up(q, self.exp - other.exp - 64)
    }

    pub fn div_down(&self, other: &Mag) -> Mag {
        assert!(!other.is_zero(), "Mag division by zero");
        if self.is_zero() {
            return *self;
        }
        let q = ((self.man as u128) << 64) / other.man as u128;
        Self::from_parts_down(q, self.exp - other.exp - 64)
    }

    fn sqrt_dir(&self, up: bool) -> Mag {
        if self.is_zero() {
            return *self;
        }
        // bring the mantissa to ~2^90 with an even exponent
        let mut shift = 90 - MAG_BITS as i64;
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let m = (self.man as u128) << shift;
        let e = self.exp - shift;
        let r = m.sqrt();
        let r = if up && r * r != m { r + 1 } else { r };
        Self::from_parts(r, e / 2, up)
    }

    pub fn sqrt_up(&self) -> Mag {
        self.sqrt_dir(true)
    }

    pub fn sqrt_down(&self) -> Mag {
        self.sqrt_dir(false)
    }

    pub fn pow_up(&self, mut e: u32) -> Mag {
        let mut base = *self;
        let mut acc = Mag::from_u64(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_up(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_up(&base);
            }
        }
        acc
    }

    pub fn max(self, other: Mag) -> Mag {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        // normalized mantissas share a bit length, so the exponent decides first
        self.exp.cmp(&other.exp).then(self.man.cmp(&other.man))
    }
}

/// Sign of a BigInt as an `Ordering` against zero.
pub(crate) fn bigint_sign(x: &BigInt) -> Ordering {
    match x.sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}
