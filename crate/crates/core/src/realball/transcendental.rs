//! pi, exp, and cos/sin on balls.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::One;

use super::ball::RealBall;
use super::complex::ComplexBall;
use super::dyadic::Dyadic;
use super::mag::Mag;

struct PiCache {
    bits: u64,
    value: BigInt,
    err_ulps: u64,
}

static PI_CACHE: Mutex<Option<PiCache>> = Mutex::new(None);

/// `2^w * atan(1/n)` truncated, with the number of ulps of accumulated error.
fn atan_inv_fixed(n: u64, w: u64) -> (BigInt, u64) {
    let one = BigInt::one() << w as usize;
    let n2 = BigInt::from(n * n);
    let mut power = &one / BigInt::from(n);
    let mut sum = BigInt::from(0);
    let mut k: u64 = 0;
    let mut terms = 0u64;
    while power.bits() > 0 {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &n2;
        k += 1;
        terms += 1;
    }
    // each division loses < 1 ulp; the truncated alternating tail is < 1 ulp
    (sum, 2 * terms + 2)
}

/// pi enclosed to at least `prec` bits.
pub fn pi(prec: u32) -> RealBall {
    let w = prec as u64 + 32;
    let mut guard = PI_CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if guard.as_ref().map(|c| c.bits < w).unwrap_or(true) {
        let (a5, e5) = atan_inv_fixed(5, w);
        let (a239, e239) = atan_inv_fixed(239, w);
        let value = a5 * 16 - a239 * 4;
        *guard = Some(PiCache { bits: w, value, err_ulps: 16 * e5 + 4 * e239 });
    }
    let c = guard.as_ref().expect("cache filled");
    let shift = c.bits - w;
    let value = &c.value >> shift as usize;
    // shifting down costs one more ulp at the coarser scale
    let err = c.err_ulps.div_ceil(1u64 << shift.min(63)) + 1;
    drop(guard);
    RealBall::new(Dyadic::new(value, -(w as i64)), Mag::from_u64(err).mul_2exp(-(w as i64)), prec)
}

/// Number of halvings so that `|x| / 2^s < 2^-r`, with `r` tuned to the precision.
fn reduction_steps(upper: Mag, prec: u32) -> (u32, u32) {
    let r = ((prec as u64).sqrt() as u32 / 2).max(8);
    let lg = upper.log2_ceil();
    let s = if lg == i64::MIN { 0 } else { (lg + r as i64).max(0) as u32 };
    (s, r)
}

/// Factorial lower bound used in the Taylor tail estimate:
/// returns `|t|^k / k!` rounded up, with `|t| <= bound`.
fn tail_bound(bound: Mag, k: u32) -> Mag {
    let mut t = Mag::from_u64(1);
    for i in 1..=k {
        t = t.mul_up(&bound).div_up(&Mag::from_u64(i as u64));
    }
    // geometric factor for |t| < 1/2 is at most 2
    t.mul_2exp(1)
}

fn exp_small(t: &RealBall, r: u32, wp: u32) -> RealBall {
    let bound = t.abs_upper();
    let k = wp / r + 2;
    // Horner: 1 + t(1 + t/2(1 + t/3(...)))
    let mut acc = RealBall::one(wp);
    for i in (1..k).rev() {
        acc = acc.mul(t).div_int(i as i64).add(&RealBall::one(wp));
    }
    let tail = tail_bound(bound, k);
    RealBall::new(acc.mid().clone(), acc.rad().add_up(&tail), wp)
}

/// `exp(x)` for a real ball.
pub fn exp(x: &RealBall) -> RealBall {
    let prec = x.prec();
    let (s, r) = reduction_steps(x.abs_upper(), prec);
    let wp = prec + s + 32;
    let t = x.clone().with_prec(wp).mul_2exp(-(s as i64));
    let mut y = exp_small(&t, r, wp);
    for _ in 0..s {
        y = y.sqr();
    }
    y.with_prec(prec)
}

fn expi_small(t: &RealBall, r: u32, wp: u32) -> ComplexBall {
    let bound = t.abs_upper();
    let k = wp / r + 2;
    let it = ComplexBall::new(RealBall::zero(wp), t.clone());
    let mut acc = ComplexBall::one(wp);
    for i in (1..k).rev() {
        let prod = acc.mul(&it);
        acc = ComplexBall::new(prod.re.div_int(i as i64), prod.im.div_int(i as i64)).add(&ComplexBall::one(wp));
    }
    acc.add_error(tail_bound(bound, k))
}

/// `(cos x, sin x)` for a real ball.
pub fn cos_sin(x: &RealBall) -> (RealBall, RealBall) {
    let prec = x.prec();
    let (s, r) = reduction_steps(x.abs_upper(), prec);
    let wp = prec + 2 * s + 32;
    let t = x.clone().with_prec(wp).mul_2exp(-(s as i64));
    let mut z = expi_small(&t, r, wp);
    for _ in 0..s {
        z = z.sqr();
    }
    (clamp_unit(z.re.with_prec(prec)), clamp_unit(z.im.with_prec(prec)))
}

/// Intersect with [-1, 1] when the enclosure spills over.
fn clamp_unit(b: RealBall) -> RealBall {
    let one = Dyadic::one();
    let lo = std::cmp::max(b.lower(), -&one);
    let hi = std::cmp::min(b.upper(), one);
    if lo == b.lower() && hi == b.upper() {
        b
    } else {
        RealBall::from_endpoints(&lo, &hi, b.prec())
    }
}

/// `exp(z)` for a complex ball.
pub fn exp_complex(z: &ComplexBall) -> ComplexBall {
    let e = exp(&z.re);
    let (c, s) = cos_sin(&z.im);
    ComplexBall::new(e.mul(&c), e.mul(&s))
}
