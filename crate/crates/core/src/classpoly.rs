//! Class group of `Z[sqrt(-m)]` via reduced forms, CM values of j, and the
//! class polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algnum::IntPoly;
use crate::error::{Error, Result};
use crate::realball::{cos_sin, exp, pi, precision_cap, refine_until, ComplexBall, Dyadic, Mag, RealBall};

/// The order `Z[sqrt(-m)]` for even squarefree `m >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrderSpec {
    m: u64,
    disc: i64,
}

impl OrderSpec {
    pub fn new(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!("m = {m} must be at least 2")));
        }
        if m % 2 != 0 {
            return Err(Error::InvalidArgument(format!("m = {m} must be even")));
        }
        if !is_squarefree(m) {
            return Err(Error::InvalidArgument(format!("m = {m} must be squarefree")));
        }
        if m > (i64::MAX as u64) / 8 {
            return Err(Error::InvalidArgument(format!("m = {m} is too large")));
        }
        Ok(OrderSpec { m, disc: -4 * m as i64 })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    /// Odd positive divisors of `m`, increasing.
    pub fn odd_divisors(&self) -> Vec<u64> {
        let odd = self.m / 2;
        (1..=odd).filter(|d| odd % d == 0).collect()
    }
}

pub fn is_squarefree(n: u64) -> bool {
    let mut k = 2u64;
    while k * k <= n {
        if n % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    n > 0
}

/// Primitive positive definite form `a x^2 + b xy + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FormTriple {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl FormTriple {
    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        a > 0 && b.abs() <= a && a <= c && (!(b.abs() == a || a == c) || b >= 0)
    }

    /// Order 2 in the class group: the reduced form equals its inverse.
    pub fn is_ambiguous(&self) -> bool {
        self.b == 0 || self.b == self.a || self.a == self.c
    }
}

impl std::fmt::Display for FormTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Reduce a positive definite form.
pub fn reduce_form(a: i64, b: i64, c: i64) -> FormTriple {
    let (mut a, mut b, mut c) = (a as i128, b as i128, c as i128);
    assert!(a > 0 && b * b - 4 * a * c < 0, "form must be positive definite");
    loop {
        // bring b into (-a, a]
        if b > a || b <= -a {
            let k = (a - b).div_euclid(2 * a);
            let nb = b + 2 * k * a;
            c += k * (b + k * a);
            b = nb;
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        if a == c && b < 0 {
            b = -b;
        }
        break;
    }
    FormTriple { a: a as i64, b: b as i64, c: c as i64 }
}

/// One reduced form per ideal class of `Z[sqrt(-m)]`, sorted by `(a, b)`.
pub fn enumerate_reduced_forms(order: &OrderSpec) -> Vec<FormTriple> {
    let m = order.m as i64;
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= 4 * m {
        let mut b = -a + (a & 1);
        while b <= a {
            let num = b * b + 4 * m;
            if num % (4 * a) == 0 {
                let f = FormTriple { a, b, c: num / (4 * a) };
                if f.is_reduced() && gcd3(f.a, f.b, f.c) == 1 {
                    out.push(f);
                }
            }
            b += 2;
        }
        a += 1;
    }
    out
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    use num_integer::Integer;
    a.gcd(&b).gcd(&c)
}

/// Reduced form of the ideal `(d, sqrt(-m))`, i.e. of `(d, 0, m/d)`.
pub fn two_torsion_form(order: &OrderSpec, d: u64) -> Result<FormTriple> {
    if d == 0 || d % 2 == 0 || order.m % d != 0 {
        return Err(Error::InvalidArgument(format!("d = {d} is not an odd divisor of m = {}", order.m)));
    }
    Ok(reduce_form(d as i64, 0, (order.m / d) as i64))
}

/// `tau = (-b + 2 i sqrt(m)) / (2a)` in the upper half plane.
pub fn tau_of_form(form: &FormTriple, order: &OrderSpec, prec: u32) -> ComplexBall {
    let re = RealBall::from_rational(&BigRational::new(BigInt::from(-form.b), BigInt::from(2 * form.a)), prec);
    let im = RealBall::from_int(order.m, prec)
        .sqrt()
        .expect("m is positive")
        .div_int(form.a);
    ComplexBall::new(re, im)
}

fn divisor_power_sums(n: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut s3 = vec![BigInt::from(0); n];
    let mut s5 = vec![BigInt::from(0); n];
    for d in 1..n {
        let d3 = BigInt::from(d as u64).pow(3);
        let d5 = BigInt::from(d as u64).pow(5);
        let mut k = d;
        while k < n {
            s3[k] += &d3;
            s5[k] += &d5;
            k += d;
        }
    }
    (s3, s5)
}

/// One evaluation of `j(tau)` at working precision `wp`.
fn j_eval_at(tau: &ComplexBall, wp: u32) -> Result<ComplexBall> {
    let min_im = RealBall::from_rational(&BigRational::new(4.into(), 5.into()), 64);
    if !tau.im.sub(&min_im).is_positive() {
        return Err(Error::InvalidArgument("j evaluation needs Im(tau) > 4/5".into()));
    }
    let re = tau.re.clone().with_prec(wp);
    let im = tau.im.clone().with_prec(wp);
    let two_pi = pi(wp).mul_2exp(1);
    let modulus = exp(&two_pi.mul(&im).neg());
    let (c, s) = cos_sin(&two_pi.mul(&re));
    let q = ComplexBall::new(modulus.mul(&c), modulus.mul(&s));
    let qabs = modulus.abs_upper();

    // terms until 1100 N^5 |q|^N drops below 2^-(wp+32)
    let lq = qabs.to_f64().log2();
    let mut n = 2usize;
    while (1100f64).log2() + 5.0 * (n as f64).log2() + n as f64 * lq > -(wp as f64) - 32.0 {
        n += 1;
    }
    let (s3, s5) = divisor_power_sums(n);
    let mut sum3 = ComplexBall::zero(wp);
    let mut sum5 = ComplexBall::zero(wp);
    let mut qn = q.clone();
    for k in 1..n {
        sum3 = sum3.add(&mul_int(&qn, &s3[k]));
        sum5 = sum5.add(&mul_int(&qn, &s5[k]));
        qn = qn.mul(&q);
    }
    // For |q| <= exp(-8 pi / 5), sum_{k>=N} 504 sigma_5(k) |q|^k <= 1100 N^5 |q|^N.
    let mut tail = Mag::from_u64(1100).mul_up(&Mag::from_u64(n as u64).pow_up(5));
    tail = tail.mul_up(&qabs.pow_up(n as u32));
    let one = ComplexBall::one(wp);
    let e4 = one.add(&mul_int(&sum3, &BigInt::from(240))).add_error(tail);
    let e6 = one.sub(&mul_int(&sum5, &BigInt::from(504))).add_error(tail);
    let e4c = e4.sqr().mul(&e4);
    let den = e4c.sub(&e6.sqr());
    let j = mul_int(&e4c, &BigInt::from(1728)).div(&den)?;
    Ok(j)
}

fn mul_int(z: &ComplexBall, k: &BigInt) -> ComplexBall {
    ComplexBall::new(z.re.mul_int(k), z.im.mul_int(k))
}

fn extra_bits(tau: &ComplexBall) -> u32 {
    // log2 |1/q| = 2 pi Im(tau) / ln 2 < 9.07 Im(tau)
    let im = tau.im.abs_upper().to_f64();
    2 * (9.07 * im).ceil() as u32
}

/// Enclosure of `j(tau)` with radius below `2^-precision` (both parts).
pub fn j_eval(tau: &ComplexBall, precision: u32) -> Result<ComplexBall> {
    let start = precision + extra_bits(tau) + 64;
    refine_until(start, precision_cap(), "evaluating j", |wp| {
        let j = j_eval_at(tau, wp)?;
        if j.max_rad() < Mag::pow2(-(precision as i64)) {
            Ok(j)
        } else {
            Err(Error::Undecided("j enclosure too wide".into()))
        }
    })
}

/// `j` at the CM point of a reduced form; `tau` is recomputed at each
/// working precision so its own width never limits the result.
pub fn j_of_form(form: &FormTriple, order: &OrderSpec, precision: u32) -> Result<ComplexBall> {
    let probe = tau_of_form(form, order, 64);
    let start = precision + extra_bits(&probe) + 64;
    refine_until(start, precision_cap(), "evaluating j at a CM point", |wp| {
        let tau = tau_of_form(form, order, wp + 32);
        let j = j_eval_at(&tau, wp)?;
        if j.max_rad() < Mag::pow2(-(precision as i64)) {
            Ok(j)
        } else {
            Err(Error::Undecided("j enclosure too wide".into()))
        }
    })
}

/// Bits of absolute precision on each `j` that make the product's rounding
/// safe: the coefficients of `f` are bounded by `prod (1 + |j_i|)` and
/// `log2 |j(tau)|` is about `2 pi Im(tau) / ln 2` with `Im(tau) = sqrt(m)/a`.
pub fn required_precision(order: &OrderSpec) -> u32 {
    let forms = enumerate_reduced_forms(order);
    let h = forms.len() as f64;
    let s: f64 = forms.iter().map(|f| 1.0 / f.a as f64).sum();
    let lead = 2.0 * std::f64::consts::PI * (order.m as f64).sqrt() * s / std::f64::consts::LN_2;
    lead.ceil() as u32 + 32 + 10 * h as u32
}

/// Class polynomial with the data used to certify it.
#[derive(Clone, Debug)]
pub struct ClassPolyResult {
    pub order: OrderSpec,
    pub f: IntPoly,
    pub h: usize,
    pub roots: Vec<(FormTriple, ComplexBall)>,
    /// Upper bound on the distance from every coefficient enclosure to its
    /// integer (real and imaginary parts).
    pub residual: RealBall,
    pub precision: u32,
}

impl ClassPolyResult {
    /// j-value of the form reduced from `(d, 0, m/d)`.
    pub fn j_of_divisor(&self, d: u64) -> Result<&ComplexBall> {
        let f = two_torsion_form(&self.order, d)?;
        self.roots
            .iter()
            .find(|(g, _)| *g == f)
            .map(|(_, j)| j)
            .ok_or_else(|| Error::InternalInconsistency(format!("form {f} missing from the class list")))
    }
}

/// Round complex-ball coefficients to integers; fails with `Undecided`
/// unless each lies within 1/4 of its integer with imaginary part below 1/4.
fn round_coefficients(coeffs: &[ComplexBall]) -> Result<(Vec<BigInt>, Mag)> {
    let quarter = Mag::pow2(-2);
    let half = Dyadic::pow2(-1);
    let mut worst = Mag::zero();
    let mut out = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        let n = (c.re.mid() + &half).floor_scaled(0);
        let dist = Mag::from_dyadic_up(&(c.re.mid() - &Dyadic::from_int(n.clone()))).add_up(&c.re.rad());
        let im = c.im.abs_upper();
        let r = dist.max(im);
        if r >= quarter {
            return Err(Error::Undecided("class polynomial coefficient not pinned".into()));
        }
        worst = worst.max(r);
        out.push(n);
    }
    Ok((out, worst))
}

/// `prod (x - j(tau_Q))` over reduced forms, rounded to `Z[x]`.
pub fn class_polynomial(order: &OrderSpec) -> Result<ClassPolyResult> {
    let forms = enumerate_reduced_forms(order);
    let h = forms.len();
    let start = required_precision(order);
    refine_until(start, precision_cap(), "computing the class polynomial", |p| {
        let js: Vec<ComplexBall> =
            forms.par_iter().map(|f| j_of_form(f, order, p)).collect::<Result<Vec<_>>>()?;
        let wp = p + 64;
        // coefficients, constant term first
        let mut poly = vec![ComplexBall::one(wp)];
        for j in &js {
            let mut next = vec![ComplexBall::zero(wp); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] = next[i + 1].add(c);
                next[i] = next[i].sub(&c.mul(j));
            }
            poly = next;
        }
        let (coeffs, worst) = round_coefficients(&poly)?;
        let f = IntPoly::new(coeffs);
        Ok(ClassPolyResult {
            order: *order,
            f,
            h,
            roots: forms.iter().copied().zip(js).collect(),
            residual: RealBall::exact(worst.to_dyadic(), 64),
            precision: p,
        })
    })
}
