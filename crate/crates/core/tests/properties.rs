use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

mod common;

use common::naive_class_number;
use isojac::algnum::{compose_g, IntPoly};
use isojac::classpoly::{enumerate_reduced_forms, is_squarefree, j_eval, OrderSpec};
use isojac::curvefam::{j_of_mu_squared, mu_from_j};
use isojac::quartic_iso::{
    apply_matrix, eval_quartic, strict_invariant, vary_a, vary_the_curve, Branch, QuarticTriple, Tri,
};
use isojac::realball::{ComplexBall, Mag, RealBall};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

/// All 24 images of a triple under permutations and even sign changes.
fn strict_orbit(t: &[BigRational; 3]) -> Vec<[BigRational; 3]> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    const SIGNS: [[i64; 3]; 4] = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];
    let mut out = Vec::new();
    for p in PERMS {
        for s in SIGNS {
            out.push(std::array::from_fn(|i| &t[p[i]] * BigRational::from_integer(s[i].into())));
        }
    }
    out
}

fn triple(t: &[BigRational; 3]) -> QuarticTriple<BigRational> {
    QuarticTriple::new(t[0].clone(), t[1].clone(), t[2].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Equal strict invariants exactly when one triple lies in the other's orbit.
    #[test]
    fn strict_invariant_is_complete(
        a in small_rational(), b in small_rational(), c in small_rational(),
        image in 0usize..24, flips in 0u8..8, perturb in any::<bool>(), other in small_rational(),
    ) {
        let t = [a, b, c];
        let orbit = strict_orbit(&t);
        let mut u = orbit[image].clone();
        // an arbitrary sign pattern, possibly odd
        for (i, x) in u.iter_mut().enumerate() {
            if flips >> i & 1 == 1 {
                *x = -x.clone();
            }
        }
        if perturb {
            u[image % 3] = other;
        }
        let brute = orbit.contains(&u);
        let inv = strict_invariant(&triple(&t)).compare(&strict_invariant(&triple(&u)));
        prop_assert_eq!(inv == Tri::Equal, brute);
        prop_assert_eq!(inv == Tri::Different, !brute);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// The companion map on `(a, b^2)` is an involution, exactly.
    #[test]
    fn vary_is_an_involution(a in small_rational(), b in small_rational()) {
        prop_assume!(a != q(-2, 1));
        let two = q(2, 1);
        let a2 = vary_a(&a).unwrap();
        prop_assert_eq!(vary_a(&a2).unwrap(), a.clone());
        let b2_sq = &b * &b * q(4, 1) / (&a + &two);
        let back = &b2_sq * q(4, 1) / (&a2 + &two);
        prop_assert_eq!(back, &b * &b);
    }

    /// Applying the ball version twice on one branch returns enclosures of the input.
    #[test]
    fn vary_the_curve_twice(a in small_rational(), b in small_rational()) {
        prop_assume!(a > q(-2, 1) + q(1, 10));
        let p = 256;
        let ab = RealBall::from_rational(&a, p);
        let bb = RealBall::from_rational(&b, p);
        let (t1, _) = vary_the_curve(&ab, &bb, Branch::Plus).unwrap();
        let (t2, _) = vary_the_curve(&t1.a, &t1.b, Branch::Plus).unwrap();
        prop_assert!(t2.a.contains_rational(&a));
        prop_assert!(t2.b.contains_rational(&b));
        prop_assert!(t2.c.contains_rational(&b));
    }
}

/// A point of `Q(a, b, b)` with given `X, Y`, solving the quadratic in `Z^2`.
fn point_on(t: &QuarticTriple<RealBall>, x: &RealBall, y: &RealBall, root: bool) -> [ComplexBall; 3] {
    let x2 = x.sqr();
    let y2 = y.sqr();
    let lin = t.b.mul(&x2).add(&t.c.mul(&y2));
    let con = x2.sqr().add(&y2.sqr()).add(&t.a.mul(&x2).mul(&y2));
    let disc = ComplexBall::from_real(lin.sqr().sub(&con.mul_2exp(2))).sqrt().unwrap();
    let mut w = ComplexBall::from_real(lin.neg());
    w = if root { w.add(&disc) } else { w.sub(&disc) };
    let z = w.mul_2exp(-1).sqrt().unwrap();
    [ComplexBall::from_real(x.clone()), ComplexBall::from_real(y.clone()), z]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    /// The companion matrix maps 20 sampled points of each curve onto its companion.
    #[test]
    fn point_mapping_residual(
        a in (-18i64..=200).prop_map(|n| q(n, 10)),
        b in (-30i64..=30).prop_map(|n| q(n, 10)),
        plus in any::<bool>(),
        pts in proptest::collection::vec((-20i64..=20, -20i64..=20, any::<bool>()), 20),
    ) {
        let p = 200u32;
        let ab = RealBall::from_rational(&a, p);
        let bb = RealBall::from_rational(&b, p);
        let src = QuarticTriple::new(ab.clone(), bb.clone(), bb.clone());
        let branch = if plus { Branch::Plus } else { Branch::Minus };
        let (dst, m) = vary_the_curve(&ab, &bb, branch).unwrap();
        let bound = Mag::pow2(-(p as i64) + 16);
        for (x, y, root) in pts {
            let pt = point_on(&src, &RealBall::from_rational(&q(x, 10), p), &RealBall::from_rational(&q(y, 10), p), root);
            prop_assert!(eval_quartic(&src, &pt).abs_upper() < bound);
            let image = apply_matrix(&m, &pt);
            let r = eval_quartic(&dst, &image);
            prop_assert!(r.abs_upper() < bound, "residual {:e} at ({x}, {y})", r.abs_upper().to_f64());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    /// `mu -> J(mu^2) -> mu` loses at most half the working precision.
    #[test]
    fn mu_j_round_trip(k in 1i64..1_000_000) {
        let p = 160u32;
        let mu = q(k, 1_000_000);
        let j = j_of_mu_squared(&(&mu * &mu)).unwrap();
        let back = mu_from_j(&RealBall::from_rational(&j, p)).unwrap();
        let err = back.sub(&RealBall::from_rational(&mu, p)).abs_upper();
        prop_assert!(err < Mag::pow2(-(p as i64) / 2), "error {:e}", err.to_f64());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn j_is_invariant_under_inversion(k in 81i64..=123) {
        let p = 128u32;
        let x = q(k, 100);
        let tau = |y: &BigRational| ComplexBall::new(RealBall::zero(p + 32), RealBall::from_rational(y, p + 32));
        let j1 = j_eval(&tau(&x), p).unwrap();
        let j2 = j_eval(&tau(&x.recip()), p).unwrap();
        prop_assert!(j1.overlaps(&j2));
        // j is real on the imaginary axis
        prop_assert!(j1.im.contains_zero());
    }
}

/// `(x^2 - 1)^(2n) f(64 (x^2 + 3)^3 / (x^2 - 1)^2)` evaluated directly.
fn g_oracle(f: &IntPoly, x: &BigRational) -> BigRational {
    let one = BigRational::one();
    let x2 = x * x;
    let den = (&x2 - &one) * (&x2 - &one);
    let s = &x2 + BigRational::from_integer(3.into());
    let arg = &s * &s * &s * BigRational::from_integer(64.into()) / &den;
    let n = f.degree();
    let mut acc = BigRational::zero();
    for c in f.coeffs().iter().rev() {
        acc = acc * &arg + BigRational::from_integer(c.clone());
    }
    acc * num_traits::pow(den, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn compose_g_matches_direct_evaluation(
        cs in proptest::collection::vec(-1000i64..=1000, 1..6),
        xs in proptest::collection::vec((-50i64..=50, 1i64..=7), 4),
    ) {
        let mut cs = cs;
        cs.push(1);
        let f = IntPoly::from_i64(&cs);
        let g = compose_g(&f);
        prop_assert_eq!(g.degree(), 6 * f.degree());
        for (n, d) in xs {
            let x = q(n, d);
            prop_assume!(&x * &x != BigRational::one());
            prop_assert_eq!(g.eval_rational(&x), g_oracle(&f, &x));
        }
    }

    /// Reduced-form enumeration against a brute-force count.
    #[test]
    fn reduced_forms_match_brute_force(k in 1u64..1500) {
        let m = 2 * k;
        prop_assume!(is_squarefree(m));
        let order = OrderSpec::new(m).unwrap();
        let forms = enumerate_reduced_forms(&order);
        prop_assert_eq!(forms.len(), naive_class_number(m));
        for f in &forms {
            prop_assert!(f.is_reduced());
            prop_assert_eq!(f.disc(), -4 * m as i64);
        }
    }
}
