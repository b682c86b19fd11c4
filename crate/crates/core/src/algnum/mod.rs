//! Exact integer polynomials, real root isolation, algebraic reals and
//! minimal-polynomial recovery.

mod algebraic;
mod intpoly;
mod lll;
mod recognize;
mod sturm;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use algebraic::{interval_ball, AlgebraicReal};
pub use intpoly::IntPoly;
pub use lll::{lll, Reduced};
pub use recognize::{match_roots, minimal_polynomial, minimal_polynomial_in_degrees};
pub use sturm::{bisect_to_width, isolate_roots, Isolated, SturmSequence};

/// `64 (y + 3)^3` and `(y - 1)^2`, the numerator and denominator of the
/// j-invariant of `Y^2 = (X-1)(X-mu)(X+1)` in terms of `y = mu^2`.
fn j_of_mu_parts() -> (IntPoly, IntPoly) {
    let num = IntPoly::from_i64(&[3, 1]).pow(3).scale(&BigInt::from(64));
    let den = IntPoly::from_i64(&[-1, 1]).pow(2);
    (num, den)
}

/// Substitute `y = x^2`.
fn in_x_squared(p: &IntPoly) -> IntPoly {
    let mut v = vec![BigInt::zero(); 2 * p.coeffs().len()];
    for (i, c) in p.coeffs().iter().enumerate() {
        v[2 * i] = c.clone();
    }
    IntPoly::new(v)
}

/// `g = (x^2 - 1)^(2n) f(64 (x^2 + 3)^3 / (x^2 - 1)^2)` for `f` of degree `n`,
/// expanded exactly with its content kept.
pub fn compose_g(f: &IntPoly) -> IntPoly {
    let n = f.degree();
    let (a, b) = j_of_mu_parts();
    // homogeneous Horner: G = sum_k f_k A^k B^(n-k)
    let mut bpow = IntPoly::one();
    let mut acc = IntPoly::constant(f.leading());
    for k in (0..n).rev() {
        bpow = &bpow * &b;
        acc = &(&acc * &a) + &bpow.scale(&f.coeff(k));
    }
    in_x_squared(&acc)
}

/// Real roots of `g` in the open interval `(0, 1)`, by Sturm bisection.
pub fn isolate_roots_unit_interval(g: &IntPoly) -> Vec<AlgebraicReal> {
    let sq = g.squarefree_part();
    let zero = BigRational::zero();
    let one = BigRational::one();
    isolate_roots(&sq, &zero, &one).into_iter().map(|iso| AlgebraicReal::from_isolated(sq.clone(), iso)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_identity_poly() {
        let g = compose_g(&IntPoly::x());
        let expect = IntPoly::from_i64(&[3, 0, 1]).pow(3).scale(&BigInt::from(64));
        assert_eq!(g, expect);
        assert!(isolate_roots_unit_interval(&g).is_empty());
    }

    #[test]
    fn compose_m6_matches_factored_form() {
        let f = IntPoly::from_i64(&[14670139392, -4834944, 1]);
        let g = compose_g(&f);
        let a = IntPoly::from_i64(&[36, 0, -36, 0, 1]);
        let b = IntPoly::from_i64(&[-207, -396, 342, 276, 1]);
        let c = IntPoly::from_i64(&[-207, 396, 342, -276, 1]);
        let expect = (&(&a * &b) * &c).scale(&(BigInt::one() << 12));
        assert_eq!(g, expect);
    }
}
