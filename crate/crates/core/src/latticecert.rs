//! Exact check that `(1/d) [[ud, 2w], [(v/2) w, d]]`, `w^2 = -m`, carries
//! `L_1 x L_1` onto `L_d x L_d` where `L_d = Z + (w/d) Z`, together with the
//! 2-torsion congruences that make it compatible with the gluing groups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algnum::AlgebraicReal;
use crate::classpoly::OrderSpec;
use crate::error::{Error, Result};
use crate::realball::{certify_compare, precision_cap, refine_until, CertOrdering, RealBall};

/// `re + im * w` with rational parts and `w^2 = -m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QOmega {
    pub re: BigRational,
    pub im: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl QOmega {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        QOmega { re, im }
    }

    pub fn int(n: i64) -> Self {
        QOmega { re: rat(n, 1), im: BigRational::zero() }
    }

    pub fn omega_times(q: BigRational) -> Self {
        QOmega { re: BigRational::zero(), im: q }
    }

    pub fn add(&self, o: &QOmega) -> QOmega {
        QOmega { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &QOmega) -> QOmega {
        QOmega { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &QOmega, m: u64) -> QOmega {
        let mm = BigRational::from_integer(BigInt::from(m));
        QOmega {
            re: &self.re * &o.re - &self.im * &o.im * mm,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    /// Coordinates in the basis `{1, w/d}`.
    pub fn coords(&self, d: u64) -> (BigRational, BigRational) {
        (self.re.clone(), &self.im * BigRational::from_integer(BigInt::from(d)))
    }

    /// Membership in `L_d`.
    pub fn in_lattice(&self, d: u64) -> bool {
        let (a, b) = self.coords(d);
        a.is_integer() && b.is_integer()
    }
}

impl fmt::Display for QOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*w", self.re, self.im)
    }
}

/// `(u, v)` with `u d + v (m/d) = 1`, `v` divisible by 4 and `|v|` minimal.
pub fn find_uv(m: u64, d: u64) -> Result<(i64, i64)> {
    check_divisor(m, d)?;
    let (d, e) = (d as i64, (m / d) as i64);
    let g = d.extended_gcd(&e);
    if g.gcd != 1 {
        return Err(Error::InvalidArgument(format!("gcd({d}, {e}) = {}", g.gcd)));
    }
    // v is fixed mod d; d odd lets us also fix it mod 4
    let v0 = g.y.rem_euclid(d);
    let modulus = 4 * d;
    let mut v = (0..4).map(|k| v0 + k * d).find(|v| v % 4 == 0).expect("d odd");
    if v > modulus / 2 {
        v -= modulus;
    }
    let u = (1 - v * e) / d;
    debug_assert_eq!(u * d + v * e, 1);
    Ok((u, v))
}

fn check_divisor(m: u64, d: u64) -> Result<()> {
    OrderSpec::new(m)?;
    if d == 0 || d % 2 == 0 || m % d != 0 {
        return Err(Error::InvalidArgument(format!("d = {d} is not an odd divisor of m = {m}")));
    }
    Ok(())
}

fn det(rows: &[[i64; 4]; 4]) -> Result<i128> {
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    // fraction-free Bareiss elimination
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    i128::try_from(sign * &a[n - 1][n - 1]).map_err(|_| Error::InvalidArgument("determinant overflow".into()))
}

/// Image of a 2-torsion class `(x, y)` and whether it has the required form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionCheck {
    pub label: String,
    pub image: [String; 2],
    pub expected: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub t_left: TorsionCheck,
    pub t_right: TorsionCheck,
    /// One entry per candidate representative of `S_1`.
    pub s_diagonal: Vec<TorsionCheck>,
}

impl TorsionReport {
    pub fn all_ok(&self) -> bool {
        self.t_left.ok && self.t_right.ok && self.s_diagonal.iter().all(|c| c.ok)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCertificate {
    pub m: u64,
    pub d: u64,
    pub u: i64,
    pub v: i64,
    /// Entries of the scaled matrix as `"p/q + r/s*w"`.
    pub matrix: [[String; 2]; 2],
    pub coord_matrix: [[i64; 4]; 4],
    pub det: i128,
    /// Determinant of the coordinate matrix of the unscaled matrix (`d^4` up to sign).
    pub unscaled_det: i128,
    pub torsion: TorsionReport,
}

impl IsoCertificate {
    pub fn is_valid(&self) -> bool {
        self.det.abs() == 1 && self.torsion.all_ok()
    }
}

fn scaled_matrix(d: u64, u: i64, v: i64) -> [[QOmega; 2]; 2] {
    let di = d as i64;
    [
        [QOmega::int(u), QOmega::omega_times(rat(2, di))],
        [QOmega::omega_times(rat(v, 2 * di)), QOmega::int(1)],
    ]
}

fn apply(mat: &[[QOmega; 2]; 2], p: &[QOmega; 2], m: u64) -> [QOmega; 2] {
    [
        mat[0][0].mul(&p[0], m).add(&mat[0][1].mul(&p[1], m)),
        mat[1][0].mul(&p[0], m).add(&mat[1][1].mul(&p[1], m)),
    ]
}

fn basis_images(mat: &[[QOmega; 2]; 2], m: u64, d: u64) -> Result<[[i64; 4]; 4]> {
    let w = QOmega::omega_times(BigRational::one());
    let zero = QOmega::int(0);
    let one = QOmega::int(1);
    let basis = [[one.clone(), zero.clone()], [w.clone(), zero.clone()], [zero.clone(), one], [zero, w]];
    let mut out = [[0i64; 4]; 4];
    for (i, b) in basis.iter().enumerate() {
        let img = apply(mat, b, m);
        let (a0, a1) = img[0].coords(d);
        let (b0, b1) = img[1].coords(d);
        for (j, c) in [a0, a1, b0, b1].into_iter().enumerate() {
            if !c.is_integer() {
                return Err(Error::CertificateInvalid(format!("image of basis vector {i} is not in L_d x L_d")));
            }
            out[i][j] = i64::try_from(c.to_integer()).map_err(|_| Error::InvalidArgument("m too large".into()))?;
        }
    }
    Ok(out)
}

fn torsion_report(mat: &[[QOmega; 2]; 2], m: u64, d: u64) -> TorsionReport {
    let half = |q: QOmega| QOmega::new(q.re / rat(2, 1), q.im / rat(2, 1));
    let zero = QOmega::int(0);
    let t1 = half(QOmega::new(rat(1, 1), rat(1, 1)));
    let td = half(QOmega::new(rat(1, 1), rat(1, d as i64)));
    let congruent = |x: &QOmega, y: &QOmega| x.sub(y).in_lattice(d);
    let render = |p: &[QOmega; 2]| [p[0].to_string(), p[1].to_string()];

    let img = apply(mat, &[t1.clone(), zero.clone()], m);
    let t_left = TorsionCheck {
        label: "(T_1, 0)".into(),
        ok: congruent(&img[0], &td) && congruent(&img[1], &zero),
        image: render(&img),
        expected: "(T_d, 0)".into(),
    };
    let img = apply(mat, &[zero.clone(), t1], m);
    let t_right = TorsionCheck {
        label: "(0, T_1)".into(),
        ok: congruent(&img[0], &zero) && congruent(&img[1], &td),
        image: render(&img),
        expected: "(0, T_d)".into(),
    };
    let targets = [("1/2", QOmega::new(rat(1, 2), BigRational::zero())), ("(w/d)/2", QOmega::omega_times(rat(1, 2 * d as i64)))];
    let s_diagonal = [("1/2", QOmega::new(rat(1, 2), BigRational::zero())), ("w/2", QOmega::omega_times(rat(1, 2)))]
        .into_iter()
        .map(|(name, s1)| {
            let img = apply(mat, &[s1.clone(), s1], m);
            let hit = targets.iter().find(|(_, s)| congruent(&img[0], s) && congruent(&img[1], s));
            TorsionCheck {
                label: format!("(S_1, S_1) with S_1 = {name}"),
                image: render(&img),
                expected: match hit {
                    Some((n, _)) => format!("(s, s) with s = {n}"),
                    None => "(s, s) with s in {1/2, (w/d)/2}".into(),
                },
                ok: hit.is_some(),
            }
        })
        .collect();
    TorsionReport { t_left, t_right, s_diagonal }
}

pub fn build_certificate(m: u64, d: u64) -> Result<IsoCertificate> {
    let (u, v) = find_uv(m, d)?;
    build_certificate_with(m, d, u, v)
}

/// Certificate for a caller-chosen `(u, v)`.
pub fn build_certificate_with(m: u64, d: u64, u: i64, v: i64) -> Result<IsoCertificate> {
    check_divisor(m, d)?;
    let di = d as i64;
    if u * di + v * (m as i64 / di) != 1 || v % 4 != 0 {
        return Err(Error::InvalidArgument(format!("(u, v) = ({u}, {v}) does not satisfy ud + v(m/d) = 1, 4 | v")));
    }
    let mat = scaled_matrix(d, u, v);
    let coord = basis_images(&mat, m, d)?;
    let det_scaled = det(&coord)?;
    let unscaled = mat.clone().map(|r| r.map(|x| x.mul(&QOmega::int(di), m)));
    let coord_unscaled = basis_images(&unscaled, m, d)?;
    let unscaled_det = det(&coord_unscaled)?;
    let torsion = torsion_report(&mat, m, d);
    let matrix = mat.map(|r| r.map(|x| x.to_string()));
    Ok(IsoCertificate { m, d, u, v, matrix, coord_matrix: coord, det: det_scaled, unscaled_det, torsion })
}

/// Verify a certificate, failing unless the determinant is a unit and every
/// torsion congruence holds.
pub fn check_torsion_maps(cert: &IsoCertificate) -> Result<&TorsionReport> {
    if cert.det.abs() != 1 {
        return Err(Error::CertificateInvalid(format!("determinant {} is not a unit", cert.det)));
    }
    if !cert.torsion.all_ok() {
        return Err(Error::CertificateInvalid("a torsion congruence fails".into()));
    }
    Ok(&cert.torsion)
}

/// Certify `T = 8 (b - 1)(b - 2 alpha_d^2 + 1) != 0` with `b = 2 alpha_1^2 - 1`,
/// through `alpha_1 < 1` and `alpha_1 != alpha_d` (both positive).
pub fn twisting_nonzero(alpha1: &AlgebraicReal, alphad: &AlgebraicReal) -> Result<bool> {
    if alpha1.same_root_as(alphad) {
        return Ok(false);
    }
    refine_until(64, precision_cap(), "certifying the twisting value", |p| {
        let a = alpha1.refine(p)?;
        let b = alphad.refine(p)?;
        let one = RealBall::one(p);
        let zero = RealBall::zero(p);
        let below_one = certify_compare(&a, &one) == CertOrdering::Less;
        let positive = certify_compare(&a, &zero) == CertOrdering::Greater && certify_compare(&b, &zero) == CertOrdering::Greater;
        let apart = certify_compare(&a, &b) != CertOrdering::Overlap;
        if below_one && positive && apart {
            Ok(true)
        } else {
            Err(Error::Undecided("twisting value".into()))
        }
    })
}
