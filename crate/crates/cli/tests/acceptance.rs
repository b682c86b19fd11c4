//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use isojac::algnum::IntPoly;
use isojac::classpoly::{class_polynomial, enumerate_reduced_forms, j_eval, j_of_form, two_torsion_form, OrderSpec};
use isojac::curvefam::{build_alpha_table, j_of_mu_squared, mu_from_j, AlphaTable};
use isojac::latticecert::build_certificate;
use isojac::quartic_iso::{
    apply_matrix, eval_quartic, strict_invariant, vary_a, vary_the_curve, Branch, IsoVerdict, QuarticTriple, Tri,
};
use isojac::realball::{certify_compare, CertOrdering, ComplexBall, Mag, RealBall};
use isojac::report::family_report;

const SEED: u64 = 0x5eed_0f15;

const CLASSPOLY_LIMIT: Duration = Duration::from_secs(5);
const J_DECIMALS_LIMIT: Duration = Duration::from_secs(30);
const LATTICE_LIMIT: Duration = Duration::from_secs(1);
const SCALE_LIMIT: Duration = Duration::from_secs(600);

/// Bits for enclosing j when comparing against printed decimals.
const J_BITS: u32 = 200;
/// Bits for the multiquadratic cross-check.
const EXPR_BITS: u32 = 256;
/// Working precision of the property suites.
const PROP_BITS: u32 = 200;
/// Residual bound `2^(-p + 16)` for mapped points.
const RESIDUAL_SLACK: i64 = 16;

/// The m <= 10^4 with the largest class number (9974, h = 170), the largest
/// class number among those with four odd divisors (9434, h = 168), and the
/// largest class number among those with sixteen (8970, h = 80).
const SCALE_CASES: [u64; 3] = [9974, 9434, 8970];

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn dec(s: &str) -> BigRational {
    let (i, f) = s.split_once('.').unwrap_or((s, ""));
    let n: BigInt = format!("{i}{f}").parse().unwrap();
    BigRational::new(n, num_traits::pow(BigInt::from(10), f.len()))
}

fn ten_pow_neg(k: usize) -> BigRational {
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), k))
}

/// `|x - y| <= tol`, certified.
fn within(x: &RealBall, y: &BigRational, tol: &BigRational) -> bool {
    let p = x.prec().max(64);
    let diff = x.sub(&RealBall::from_rational(y, p + 64)).abs();
    certify_compare(&diff, &RealBall::from_rational(tol, p + 64)) == CertOrdering::Less
}

fn poly(cs: &[i64]) -> IntPoly {
    // highest degree first, as printed
    let mut v = cs.to_vec();
    v.reverse();
    IntPoly::from_i64(&v)
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn check(cond: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok: cond, detail: detail.into() }
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let f = match class_polynomial(&OrderSpec::new(6).unwrap()) {
        Ok(r) => r.f,
        Err(e) => return fail(e.to_string()),
    };
    let el = t.elapsed();
    let s = f.to_string();
    check(s == "x^2 - 4834944*x + 14670139392" && el < CLASSPOLY_LIMIT, format!("f = {s} in {el:.2?}"))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let cases: [(u64, &[(u64, &str)]); 2] = [
        (6, &[(1, "4831907.903351340"), (3, "3036.096648660")]),
        (
            30,
            &[
                (1, "883067941288166.389365302091877037343676871900"),
                (3, "96685.684561070142571546116321742465"),
                (5, "1944.822048602018380008403472146653"),
                (15, "29717203.104025025747171408136529238982"),
            ],
        ),
    ];
    let mut seen = Vec::new();
    for (m, printed) in cases {
        let order = OrderSpec::new(m).unwrap();
        for &(d, s) in printed {
            let form = two_torsion_form(&order, d).unwrap();
            let j = match j_of_form(&form, &order, J_BITS) {
                Ok(j) => j,
                Err(e) => return fail(e.to_string()),
            };
            let places = s.split_once('.').unwrap().1.len();
            let ulp = ten_pow_neg(places);
            if !within(&j.re, &dec(s), &ulp) || !within(&j.im, &BigRational::zero(), &ulp) {
                return fail(format!("j for (m, d) = ({m}, {d}) is {}, printed {s}", j.re.to_decimal(places as u32)));
            }
            seen.push(format!("{m}/{d}: {places} places"));
        }
    }
    let el = t.elapsed();
    check(el < J_DECIMALS_LIMIT, format!("all within one unit in the last place ({}) in {el:.2?}", seen.join(", ")))
}

fn table(m: u64) -> Result<AlphaTable, String> {
    build_alpha_table(m).map_err(|e| e.to_string())
}

fn printed_octics() -> [IntPoly; 3] {
    [
        poly(&[1, 0, -464328, 0, 3576024, 0, -6223392, 0, 3111696]),
        poly(&[1, -3714600, 158287932, -550595160, -358871706, 1052916840, 302346108, -498574440, -101729439]),
        poly(&[1, 3714600, 158287932, 550595160, -358871706, -1052916840, 302346108, 498574440, -101729439]),
    ]
}

fn criterion_3() -> Outcome {
    let (t6, t30) = match (table(6), table(30)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return fail(e),
    };
    let g6 = (&(&poly(&[1, 0, -36, 0, 36]) * &poly(&[1, 276, 342, -396, -207])) * &poly(&[1, -276, 342, 396, -207]))
        .scale(&BigInt::from(1u64 << 12));
    let [a, b, c] = printed_octics();
    let g30 = (&(&a * &b) * &c).scale(&BigInt::from(1u64 << 24));
    check(t6.g == g6 && t30.g == g30, format!("deg g = {} and {}, coefficientwise equal", t6.g.degree(), t30.g.degree()))
}

fn criterion_4() -> Outcome {
    let (t6, t30) = match (table(6), table(30)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return fail(e),
    };
    let want1 = poly(&[1, 276, 342, -396, -207]);
    let want3 = poly(&[1, -276, 342, 396, -207]);
    let ok6 = t6.alpha(1).and_then(|a| a.minimal()) == Some(&want1)
        && t6.alpha(3).and_then(|a| a.minimal()) == Some(&want3);
    let [_, b, c] = printed_octics();
    let mut found: Vec<&IntPoly> = Vec::new();
    let mut ok30 = true;
    for e in &t30.entries {
        match e.alpha.minimal() {
            Some(p) if *p == b || *p == c => {
                if !found.contains(&p) {
                    found.push(p);
                }
            }
            _ => ok30 = false,
        }
    }
    check(ok6 && ok30 && found.len() == 2, "m = 6 quartics and both m = 30 octics recovered and certified minimal")
}

/// `c0 + sum c_k sqrt(k)` with certified square roots.
fn multiquadratic(terms: &[(i64, i64)]) -> RealBall {
    let mut acc = RealBall::zero(EXPR_BITS);
    for &(c, k) in terms {
        let r = if k == 1 { RealBall::one(EXPR_BITS) } else { RealBall::from_int(k, EXPR_BITS).sqrt().unwrap() };
        acc = acc.add(&r.mul_i64(c));
    }
    acc
}

fn criterion_5() -> Outcome {
    let (t6, t30) = match (table(6), table(30)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return fail(e),
    };
    // (d, sign of the printed value, expression)
    let six: [(u64, i64, [(i64, i64); 4]); 2] = [
        (1, 1, [(-69, 1), (-48, 2), (40, 3), (28, 6)]),
        (3, -1, [(-69, 1), (48, 2), (40, 3), (-28, 6)]),
    ];
    let s = |a: i64, b: i64, c: i64, d: i64, e: i64, f: i64| {
        vec![(-464325, 1), (a * 328320, 2), (b * 268072, 3), (c * 207648, 5), (189560, 6), (d * 146832, 10), (e * 119888, 15), (f * 84772, 30)]
    };
    let thirty: [(u64, i64, Vec<(i64, i64)>); 4] = [
        (1, 1, s(-1, 1, -1, -1, 1, 1)),
        (3, 1, s(1, -1, 1, -1, 1, -1)),
        (5, 1, s(1, -1, -1, 1, -1, 1)),
        (15, -1, s(-1, 1, 1, 1, -1, -1)),
    ];
    let mut worst = 0f64;
    let mut run = |t: &AlphaTable, d: u64, sign: i64, expr: &[(i64, i64)], tol: &BigRational| -> Result<(), String> {
        let alpha = t.alpha(d).ok_or("missing alpha")?.refine(EXPR_BITS).map_err(|e| e.to_string())?;
        let value = multiquadratic(expr).mul_i64(sign);
        let diff = alpha.sub(&value).abs();
        worst = worst.max(diff.abs_upper().to_f64());
        if certify_compare(&diff, &RealBall::from_rational(tol, EXPR_BITS)) == CertOrdering::Less {
            Ok(())
        } else {
            Err(format!("alpha_{d} differs by {:e}", diff.abs_upper().to_f64()))
        }
    };
    for (d, sign, e) in six {
        if let Err(e) = run(&t6, d, sign, &e, &ten_pow_neg(12)) {
            return fail(format!("m = 6: {e}"));
        }
    }
    for (d, sign, e) in &thirty {
        if let Err(e) = run(&t30, *d, *sign, e, &ten_pow_neg(20)) {
            return fail(format!("m = 30: {e}"));
        }
    }
    pass(format!("largest certified difference below {worst:.1e}"))
}

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    for m in [6, 30] {
        let r = match family_report(m, 30, None) {
            Ok(r) => r,
            Err(e) => return fail(format!("m = {m}: {e}")),
        };
        let quartics = r.quartics.iter().all(|q| q.nonsingular && q.twist_nonzero);
        let pairs = r.pairs.iter().all(|p| p.verdict == IsoVerdict::NonIsomorphic);
        let expected_pairs = r.quartics.len() * (r.quartics.len().saturating_sub(1)) / 2;
        if !(quartics && pairs && r.pairs.len() == expected_pairs && r.distinctness.valid && r.all_certified()) {
            return fail(format!("m = {m}: certificates incomplete"));
        }
        parts.push(format!(
            "m = {m}: {} quartics nonsingular, {} pairs NonIsomorphic, {} distinctness inequalities",
            r.quartics.len(),
            r.pairs.len(),
            r.distinctness.records.len()
        ));
    }
    let ok = parts[1].contains("3 quartics") && parts[1].contains("3 pairs");
    check(ok, parts.join("; "))
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    for (m, d) in [(6, 3), (30, 3), (30, 5), (30, 15)] {
        match build_certificate(m, d) {
            Ok(c) if c.det.abs() == 1 && c.torsion.all_ok() => {}
            Ok(c) => return fail(format!("(m, d) = ({m}, {d}): det {}, torsion ok {}", c.det, c.torsion.all_ok())),
            Err(e) => return fail(e.to_string()),
        }
    }
    let el = t.elapsed();
    check(el < LATTICE_LIMIT, format!("four certificates, det = +-1, torsion checks pass, in {el:.2?}"))
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    q(rng.gen_range(-40..=40), rng.gen_range(1..=6))
}

fn strict_orbit(t: &[BigRational; 3]) -> Vec<[BigRational; 3]> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    const SIGNS: [[i64; 3]; 4] = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];
    let mut out = Vec::new();
    for p in PERMS {
        for s in SIGNS {
            out.push(std::array::from_fn(|i| &t[p[i]] * q(s[i], 1)));
        }
    }
    out
}

fn naive_class_number(m: i64) -> usize {
    let mut count = 0;
    let mut a = 1i64;
    while 3 * a * a <= 4 * m {
        for b in -a..=a {
            let num = b * b + 4 * m;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c >= a && !((b.abs() == a || a == c) && b < 0) && num_integer::gcd(num_integer::gcd(a, b), c) == 1 {
                count += 1;
            }
        }
        a += 1;
    }
    count
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let tri = |v: &[BigRational; 3]| QuarticTriple::new(v[0].clone(), v[1].clone(), v[2].clone());

    // strict-invariant completeness
    for _ in 0..200 {
        let t = [random_rational(&mut rng), random_rational(&mut rng), random_rational(&mut rng)];
        let orbit = strict_orbit(&t);
        let mut u = orbit[rng.gen_range(0..24)].clone();
        for x in u.iter_mut() {
            if rng.gen_bool(0.3) {
                *x = -x.clone();
            }
        }
        if rng.gen_bool(0.3) {
            u[rng.gen_range(0..3)] = random_rational(&mut rng);
        }
        let same = strict_invariant(&tri(&t)).compare(&strict_invariant(&tri(&u))) == Tri::Equal;
        if same != orbit.contains(&u) {
            return fail(format!("strict invariant disagrees with the orbit at {t:?}, {u:?}"));
        }
    }

    // vary involution, exact
    for _ in 0..100 {
        let a = random_rational(&mut rng);
        if a == q(-2, 1) {
            continue;
        }
        if vary_a(&vary_a(&a).unwrap()).unwrap() != a {
            return fail(format!("vary_a is not an involution at {a}"));
        }
    }

    // point mapping
    let bound = Mag::pow2(-(PROP_BITS as i64) + RESIDUAL_SLACK);
    let mut worst = 0f64;
    for _ in 0..5 {
        let a = RealBall::from_rational(&q(rng.gen_range(-18..=200), 10), PROP_BITS);
        let b = RealBall::from_rational(&q(rng.gen_range(-30..=30), 10), PROP_BITS);
        let branch = if rng.gen_bool(0.5) { Branch::Plus } else { Branch::Minus };
        let src = QuarticTriple::new(a.clone(), b.clone(), b.clone());
        let (dst, mat) = vary_the_curve(&a, &b, branch).unwrap();
        for _ in 0..20 {
            let x = RealBall::from_rational(&q(rng.gen_range(-20..=20), 10), PROP_BITS);
            let y = RealBall::from_rational(&q(rng.gen_range(-20..=20), 10), PROP_BITS);
            let (x2, y2) = (x.sqr(), y.sqr());
            let lin = src.b.mul(&x2).add(&src.c.mul(&y2));
            let con = x2.sqr().add(&y2.sqr()).add(&src.a.mul(&x2).mul(&y2));
            let disc = ComplexBall::from_real(lin.sqr().sub(&con.mul_2exp(2))).sqrt().unwrap();
            let w = ComplexBall::from_real(lin.neg());
            let w = if rng.gen_bool(0.5) { w.add(&disc) } else { w.sub(&disc) };
            let z = w.mul_2exp(-1).sqrt().unwrap();
            let pt = [ComplexBall::from_real(x), ComplexBall::from_real(y), z];
            let r = eval_quartic(&dst, &apply_matrix(&mat, &pt)).abs_upper();
            worst = worst.max(r.to_f64());
            if r >= bound {
                return fail(format!("point residual {:e}", r.to_f64()));
            }
        }
    }

    // mu / j round trip
    for _ in 0..50 {
        let mu = q(rng.gen_range(1..1_000_000), 1_000_000);
        let j = j_of_mu_squared(&(&mu * &mu)).unwrap();
        let back = mu_from_j(&RealBall::from_rational(&j, PROP_BITS)).unwrap();
        if back.sub(&RealBall::from_rational(&mu, PROP_BITS)).abs_upper() >= Mag::pow2(-(PROP_BITS as i64) / 2) {
            return fail(format!("mu round trip at {mu}"));
        }
    }

    // j(ix) = j(i/x)
    for _ in 0..10 {
        let x = q(rng.gen_range(81..=123), 100);
        let tau = |y: &BigRational| ComplexBall::new(RealBall::zero(160), RealBall::from_rational(y, 160));
        let (j1, j2) = (j_eval(&tau(&x), 128).unwrap(), j_eval(&tau(&x.recip()), 128).unwrap());
        if !j1.overlaps(&j2) {
            return fail(format!("j(ix) and j(i/x) disagree at x = {x}"));
        }
    }

    // class numbers
    for m in [2u64, 6, 10, 30, 42] {
        let order = OrderSpec::new(m).unwrap();
        let h = class_polynomial(&order).map(|r| r.h).unwrap_or(0);
        if h != naive_class_number(m as i64) || h != enumerate_reduced_forms(&order).len() {
            return fail(format!("class number mismatch at m = {m}"));
        }
    }
    pass(format!("200 invariants, 100 involutions, 100 points (worst residual {worst:.1e}), 50 round trips, 10 inversions, 5 class numbers"))
}

fn criterion_9() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for m in SCALE_CASES {
        let t = Instant::now();
        let r = family_report(m, 30, None);
        let el = t.elapsed();
        match r {
            Ok(r) => {
                let good = r.all_certified() && el < SCALE_LIMIT;
                ok &= good;
                parts.push(format!("m = {m} (h = {}, {} quartics) {el:.1?}", r.h, r.quartics.len()));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("m = {m}: {e}"));
            }
        }
    }
    check(ok, parts.join(", "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("class polynomial exactness", criterion_1),
        ("j decimals", criterion_2),
        ("g exactness", criterion_3),
        ("minimal polynomials", criterion_4),
        ("exact-expression cross-check", criterion_5),
        ("family certificates for m = 6, 30", criterion_6),
        ("lattice certificates", criterion_7),
        ("property suites", criterion_8),
        ("scale limit m <= 10^4", criterion_9),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        if !filter.is_empty() && !filter.iter().any(|x| x == &n.to_string()) {
            continue;
        }
        let o = f();
        let tag = if o.ok { "PASS" } else { "FAIL" };
        println!("[{tag}] {n}. {name}: {}", o.detail);
        if !o.ok {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
