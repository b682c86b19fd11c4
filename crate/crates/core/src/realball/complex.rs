use super::ball::RealBall;
use super::mag::Mag;
use crate::error::Result;

/// Rectangular complex ball: independent enclosures of the real and
/// imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: RealBall,
    pub im: RealBall,
}

impl ComplexBall {
    pub fn new(re: RealBall, im: RealBall) -> Self {
        ComplexBall { re, im }
    }

    pub fn from_real(re: RealBall) -> Self {
        let p = re.prec();
        ComplexBall { re, im: RealBall::zero(p) }
    }

    pub fn zero(prec: u32) -> Self {
        ComplexBall::from_real(RealBall::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        ComplexBall::from_real(RealBall::one(prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn add(&self, o: &ComplexBall) -> ComplexBall {
        ComplexBall { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &ComplexBall) -> ComplexBall {
        ComplexBall { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> ComplexBall {
        ComplexBall { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &ComplexBall) -> ComplexBall {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        ComplexBall { re, im }
    }

    pub fn sqr(&self) -> ComplexBall {
        let re = self.re.sqr().sub(&self.im.sqr());
        let im = self.re.mul(&self.im).mul_2exp(1);
        ComplexBall { re, im }
    }

    pub fn mul_real(&self, r: &RealBall) -> ComplexBall {
        ComplexBall { re: self.re.mul(r), im: self.im.mul(r) }
    }

    pub fn mul_2exp(&self, k: i64) -> ComplexBall {
        ComplexBall { re: self.re.mul_2exp(k), im: self.im.mul_2exp(k) }
    }

    /// `|z|^2` as a real ball.
    pub fn norm_sqr(&self) -> RealBall {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn div(&self, o: &ComplexBall) -> Result<ComplexBall> {
        let n = o.norm_sqr();
        let re = self.re.mul(&o.re).add(&self.im.mul(&o.im)).div(&n)?;
        let im = self.im.mul(&o.re).sub(&self.re.mul(&o.im)).div(&n)?;
        Ok(ComplexBall { re, im })
    }

    /// Upper bound on `|z|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        let a = self.re.abs_upper();
        let b = self.im.abs_upper();
        a.mul_up(&a).add_up(&b.mul_up(&b)).sqrt_up()
    }

    /// Widen both components by `r`.
    pub fn add_error(&self, r: Mag) -> ComplexBall {
        ComplexBall {
            re: RealBall::new(self.re.mid().clone(), self.re.rad().add_up(&r), self.re.prec()),
            im: RealBall::new(self.im.mid().clone(), self.im.rad().add_up(&r), self.im.prec()),
        }
    }

    pub fn overlaps(&self, o: &ComplexBall) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }

    /// Principal square root; fails when the ball meets the branch cut
    /// `(-inf, 0]` in a way that leaves the sign of the imaginary part open.
    pub fn sqrt(&self) -> Result<ComplexBall> {
        use std::cmp::Ordering;
        let r = self.norm_sqr().sqrt()?;
        if self.re.is_positive() {
            let x = r.add(&self.re).mul_2exp(-1).sqrt()?;
            // Im(z) / (2x) avoids a cancelling subtraction
            let y = self.im.div(&x.mul_2exp(1))?;
            return Ok(ComplexBall { re: x, im: y });
        }
        let y = match self.im.sign() {
            Some(Ordering::Greater) => r.sub(&self.re).mul_2exp(-1).sqrt()?,
            Some(Ordering::Less) => r.sub(&self.re).mul_2exp(-1).sqrt()?.neg(),
            Some(Ordering::Equal) => {
                let y = self.re.neg().sqrt()?;
                return Ok(ComplexBall { re: RealBall::zero(y.prec()), im: y });
            }
            None => return Err(crate::error::Error::UndecidableSign("square root on the branch cut".into())),
        };
        let x = self.im.div(&y.mul_2exp(1))?;
        Ok(ComplexBall { re: x, im: y })
    }

    /// Larger of the two component radii.
    pub fn max_rad(&self) -> Mag {
        self.re.rad().max(self.im.rad())
    }
}
