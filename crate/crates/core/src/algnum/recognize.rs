//! Minimal polynomials by integer-relation search, and matching of numeric
//! targets to isolated roots.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::algebraic::AlgebraicReal;
use super::intpoly::IntPoly;
use super::lll::{lll, Reduced};
use crate::error::{Error, Result};
use crate::realball::{Dyadic, Mag, RealBall};

fn binomial(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn norm_sq(p: &IntPoly) -> BigInt {
    p.coeffs().iter().map(|c| c * c).sum()
}

/// Upper bound for the squared lattice length of any relation of degree at
/// most `k` among roots of `p`: Landau-Mignotte gives `|q_i| <= C(j,i) |p|_2`
/// for every factor `q` of degree `j`, and the last lattice coordinate is at
/// most `sum |q_i|` because each scaled power is rounded to within 1.
fn relation_bound(p: &IntPoly, k: usize) -> BigInt {
    let k = k as u64;
    norm_sq(p) * (binomial(2 * k, k) + (BigInt::one() << (2 * k) as usize))
}

/// Scaled powers `round(2^bits x^i)`, `i = 0..=k`.
fn scaled_powers(x: &AlgebraicReal, k: usize, bits: u32) -> Result<Vec<BigInt>> {
    let (lo, hi) = x.interval();
    let size = lo.abs().max(hi.abs()).ceil().to_integer().bits() as u32;
    let wp = bits + (size + 2) * k as u32 + 64;
    let xb = x.refine(wp)?.with_prec(wp);
    let mut pw = RealBall::one(wp);
    let half = Dyadic::pow2(-1);
    let mut out = Vec::with_capacity(k + 1);
    for _ in 0..=k {
        let scaled = pw.mul_2exp(bits as i64);
        // |a - 2^bits x^i| <= 1/2 + rad must stay below 1
        if scaled.rad() > Mag::pow2(-2) {
            return Err(Error::InternalInconsistency("relation lattice entry not pinned".into()));
        }
        out.push((scaled.mid() + &half).floor_scaled(0));
        pw = pw.mul(&xb);
    }
    Ok(out)
}

/// Lattice of integer relations among `1, x, ..., x^k` at scale `2^bits`,
/// in the basis `u` (rows of a unimodular matrix; identity if `None`).
fn relation_lattice(x: &AlgebraicReal, k: usize, bits: u32, u: Option<&[Vec<BigInt>]>) -> Result<Vec<Vec<BigInt>>> {
    let a = scaled_powers(x, k, bits)?;
    let rows = match u {
        Some(u) => u
            .iter()
            .map(|r| {
                let mut row = r.clone();
                row.push(r.iter().zip(&a).map(|(c, ai)| c * ai).sum());
                row
            })
            .collect(),
        None => (0..=k)
            .map(|i| {
                let mut row = vec![BigInt::zero(); k + 2];
                row[i] = BigInt::one();
                row[k + 1] = a[i].clone();
                row
            })
            .collect(),
    };
    Ok(rows)
}

/// Coefficient part of a reduced basis, to seed the next precision.
fn transform(red: &Reduced, k: usize) -> Vec<Vec<BigInt>> {
    red.basis.iter().map(|v| v[..=k].to_vec()).collect()
}

fn candidate(x: &AlgebraicReal, red: &Reduced, k: usize) -> Option<IntPoly> {
    for v in red.basis.iter().take(2) {
        let p = IntPoly::new(v[..=k].to_vec());
        if p.degree() == 0 {
            continue;
        }
        let p = p.primitive_part();
        let mut probe = x.clone();
        if probe.set_minimal(p.clone()).is_ok() {
            return Some(p);
        }
    }
    None
}

/// Try to find a relation of exact degree `k` dividing `x.defining()`.
/// The scale doubles from a small start, each pass reusing the previous
/// reduction so that LLL only has to repair a nearly reduced basis.
fn search_degree(x: &AlgebraicReal, k: usize) -> Result<Option<IntPoly>> {
    let bound = relation_bound(x.defining(), k);
    let pmax = (k as u64 + 1) * (bound.bits() + k as u64 + 16);
    let mut bits = 32 * (k as u64 + 1);
    let mut u: Option<Vec<Vec<BigInt>>> = None;
    loop {
        let rows = relation_lattice(x, k, bits as u32, u.as_deref())?;
        let red = lll(rows, 99, 100);
        if let Some(p) = candidate(x, &red, k) {
            return Ok(Some(p));
        }
        if bits >= pmax {
            return Ok(None);
        }
        u = Some(transform(&red, k));
        bits = (bits * 2).min(pmax);
    }
}

/// Prove that no nonzero integer polynomial of degree below `deg p` vanishes
/// at `x`, where `p` is a verified factor of the defining polynomial.
fn certify_no_smaller(x: &AlgebraicReal, p: &IntPoly) -> Result<bool> {
    let k = p.degree();
    if k <= 1 {
        return Ok(true);
    }
    let bound = relation_bound(p, k - 1);
    let base = (k as u64 / 2 + 1) * (bound.bits() + k as u64) + 32 * k as u64;
    let mut bits = (32 * k as u64).min(base);
    let mut u: Option<Vec<Vec<BigInt>>> = None;
    loop {
        let rows = relation_lattice(x, k - 1, bits as u32, u.as_deref())?;
        let red = lll(rows, 99, 100);
        if bits >= base && red.gs_min_exceeds(&bound) {
            return Ok(true);
        }
        if bits >= 4 * base {
            return Ok(false);
        }
        u = Some(transform(&red, k - 1));
        bits = (bits * 2).min(if bits < base { base } else { 4 * base });
    }
}

/// Minimal polynomial of `x` among the given candidate degrees, tried in order.
///
/// Each candidate must divide the defining polynomial and have exactly one
/// root in the isolating interval. Minimality is then certified by a lattice
/// bound ruling out every relation of smaller degree, so the result is
/// irreducible. On success the polynomial is stored into `x`.
pub fn minimal_polynomial_in_degrees(x: &mut AlgebraicReal, degrees: &[usize]) -> Result<IntPoly> {
    let dd = x.defining().degree();
    for &k in degrees.iter().filter(|&&k| k >= 1 && k <= dd) {
        let found = if k == dd {
            // the whole defining polynomial is the last resort candidate
            let p = x.defining().primitive_part();
            let mut probe = x.clone();
            probe.set_minimal(p.clone()).ok().map(|_| p)
        } else {
            search_degree(x, k)?
        };
        if let Some(p) = found {
            if certify_no_smaller(x, &p)? {
                x.set_minimal(p.clone())?;
                return Ok(p);
            }
        }
    }
    Err(Error::RecognitionFailed(format!("no verified relation in degrees {degrees:?}")))
}

/// Minimal polynomial trying every degree `1..=degree_bound`.
pub fn minimal_polynomial(x: &mut AlgebraicReal, degree_bound: usize) -> Result<IntPoly> {
    let degs: Vec<usize> = (1..=degree_bound).collect();
    minimal_polynomial_in_degrees(x, &degs)
}

fn overlaps(x: &AlgebraicReal, b: &RealBall) -> bool {
    let (lo, hi) = x.interval();
    let (bl, bh) = b.rational_bounds();
    !(&bh < lo || &bl > hi)
}

/// Match each target enclosure to the unique root whose isolating interval
/// it meets. Returns one root index per target; the map must be injective.
pub fn match_roots(roots: &[AlgebraicReal], targets: &[RealBall]) -> Result<Vec<usize>> {
    let mut roots: Vec<AlgebraicReal> = roots.to_vec();
    let mut out = Vec::with_capacity(targets.len());
    for t in targets {
        let mut hits: Vec<usize> = (0..roots.len()).filter(|&i| overlaps(&roots[i], t)).collect();
        if hits.len() > 1 {
            // shrink the competing intervals to the scale of the target
            let bits = (-(t.rad().log2_ceil().max(-(1 << 20)))).max(8) as u32 + 8;
            for &i in &hits {
                roots[i] = roots[i].narrowed(bits)?;
            }
            hits.retain(|&i| overlaps(&roots[i], t));
        }
        match hits.as_slice() {
            [i] => out.push(*i),
            [] => return Err(Error::AmbiguousMatch("target meets no isolating interval".into())),
            _ => return Err(Error::AmbiguousMatch("target meets several isolating intervals".into())),
        }
    }
    let mut seen = out.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != out.len() {
        return Err(Error::AmbiguousMatch("two targets matched the same root".into()));
    }
    Ok(out)
}
