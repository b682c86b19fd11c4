//! Dense univariate polynomials over Z.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::realball::{ComplexBall, Dyadic, RealBall};

/// Integer polynomial, constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k];
        v.push(c);
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Exact division of every coefficient by `k`.
    pub fn div_scalar_exact(&self, k: &BigInt) -> Result<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            out.push(q);
        }
        Ok(IntPoly::new(out))
    }

    pub fn pow(&self, mut e: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &IntPoly) -> IntPoly {
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &IntPoly::constant(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect(),
        )
    }

    /// Gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c).expect("content divides")
    }

    /// Quotient when `d` divides `self` exactly over Z.
    pub fn exact_divide(&self, d: &IntPoly) -> Result<IntPoly> {
        if d.is_zero() {
            return Err(Error::InvalidArgument("division by the zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        if self.degree() < d.degree() {
            return Err(Error::InexactDivision);
        }
        let mut rem = self.coeffs.clone();
        let dl = d.leading();
        let dd = d.degree();
        let mut q = vec![BigInt::zero(); self.degree() - dd + 1];
        for i in (0..q.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (qi, r) = top.div_rem(&dl);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &qi * c;
            }
            q[i] = qi;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(IntPoly::new(q))
    }

    /// Pseudo-remainder `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        assert!(!d.is_zero(), "pseudo-remainder by zero");
        if self.degree() < d.degree() || self.is_zero() {
            return self.clone();
        }
        let dl = d.leading();
        let dd = d.degree();
        let mut rem = self.coeffs.clone();
        let mut e = (self.degree() - dd + 1) as u32;
        while !rem.is_empty() && rem.len() > dd {
            let k = rem.len() - 1;
            let top = rem[k].clone();
            for c in rem.iter_mut() {
                *c *= &dl;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &top * c;
            }
            rem.pop();
            while rem.last().map(|c| c.is_zero()).unwrap_or(false) {
                rem.pop();
            }
            e -= 1;
        }
        IntPoly::new(rem).scale(&dl.pow(e))
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    /// `self / gcd(self, self')`, primitive.
    pub fn squarefree_part(&self) -> IntPoly {
        let g = self.gcd(&self.derivative());
        let p = self.primitive_part();
        if g.degree() == 0 {
            return p;
        }
        p.exact_divide(&g).expect("gcd divides").primitive_part()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `den^deg * self(num/den)`, which has the sign of `self(num/den)` for `den > 0`.
    pub fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &dpow;
            dpow *= den;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let v = self.eval_homogeneous(x.numer(), x.denom());
        BigRational::new(v, x.denom().pow(self.degree() as u32))
    }

    pub fn sign_at(&self, x: &BigRational) -> std::cmp::Ordering {
        self.eval_homogeneous(x.numer(), x.denom()).sign().cmp_zero()
    }

    pub fn eval_ball(&self, x: &RealBall) -> RealBall {
        let prec = x.prec();
        let mut acc = RealBall::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&RealBall::from_int(c.clone(), prec));
        }
        acc
    }

    pub fn eval_complex(&self, z: &ComplexBall) -> ComplexBall {
        let prec = z.prec();
        let mut acc = ComplexBall::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(&ComplexBall::from_real(RealBall::from_int(c.clone(), prec)));
        }
        acc
    }

    /// Sign at a dyadic point via a ball evaluation, `None` if undecided.
    pub fn sign_at_dyadic_ball(&self, x: &Dyadic, prec: u32) -> Option<std::cmp::Ordering> {
        self.eval_ball(&RealBall::exact(x.clone(), prec)).sign()
    }

    /// Largest coefficient bit length.
    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Coefficients as decimal strings, constant term first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<IntPoly> {
        let mut v = Vec::with_capacity(items.len());
        for s in items {
            let c: BigInt = s
                .as_ref()
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad integer coefficient {:?}", s.as_ref())))?;
            v.push(c);
        }
        Ok(IntPoly::new(v))
    }
}

trait SignExt {
    fn cmp_zero(self) -> std::cmp::Ordering;
}

impl SignExt for num_bigint::Sign {
    fn cmp_zero(self) -> std::cmp::Ordering {
        match self {
            num_bigint::Sign::Minus => std::cmp::Ordering::Less,
            num_bigint::Sign::NoSign => std::cmp::Ordering::Equal,
            num_bigint::Sign::Plus => std::cmp::Ordering::Greater,
        }
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &'a IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            v.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        IntPoly::new(v)
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &'a IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &'a IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }
}

impl fmt::Display for IntPoly {
    /// Renders as `x^2 - 4834944*x + 14670139392`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if i == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        IntPoly::from_strings(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64(cs)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
        assert_eq!(p(&[0, 0, 1]).compose(&p(&[1, 1])), p(&[1, 2, 1]));
        assert_eq!(p(&[-1, 0, 1]).exact_divide(&p(&[2, 1])), Err(Error::InexactDivision));
        assert_eq!(p(&[-1, 0, 1]).exact_divide(&p(&[1, 1])), Ok(p(&[-1, 1])));
    }

    #[test]
    fn display_format() {
        let f = p(&[14670139392, -4834944, 1]);
        assert_eq!(f.to_string(), "x^2 - 4834944*x + 14670139392");
        assert_eq!(p(&[-8000, 1]).to_string(), "x - 8000");
        assert_eq!(p(&[0, -1, 0, 2]).to_string(), "2*x^3 - x");
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = &p(&[-3, 0, 1]) * &p(&[-1, 1]);
        let b = &a * &p(&[-1, 1]);
        assert_eq!(b.squarefree_part(), a);
        assert_eq!(a.gcd(&p(&[-3, 0, 1]).scale(&BigInt::from(6))), p(&[-3, 0, 1]));
    }

    #[test]
    fn rational_evaluation() {
        let f = p(&[-1, 0, 4]);
        let half = BigRational::new(1.into(), 2.into());
        assert!(f.eval_rational(&half).is_zero());
        assert_eq!(f.sign_at(&BigRational::new(1.into(), 3.into())), std::cmp::Ordering::Less);
    }

    #[test]
    fn json_roundtrip() {
        let f = p(&[14670139392, -4834944, 1]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"["14670139392","-4834944","1"]"#);
        let back: IntPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
