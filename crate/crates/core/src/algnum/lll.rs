//! Integral LLL reduction (all-integer Gram-Schmidt data, no rationals).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Result of reducing a lattice basis.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub basis: Vec<Vec<BigInt>>,
    /// `d[i] = prod_{j<=i} |b*_j|^2`, with `d[0] = 1` (one-based).
    pub d: Vec<BigInt>,
}

impl Reduced {
    /// True if every Gram-Schmidt vector satisfies `|b*_i|^2 > bound`,
    /// which lower-bounds the length of every nonzero lattice vector.
    pub fn gs_min_exceeds(&self, bound: &BigInt) -> bool {
        (1..self.d.len()).all(|i| self.d[i] > &self.d[i - 1] * bound)
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Round `a / b` to the nearest integer (`b > 0`).
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (a * &two + b).div_floor(&(b * &two))
}

/// LLL with parameter `delta = num/den`. Rows of `rows` must be linearly
/// independent.
pub fn lll(rows: Vec<Vec<BigInt>>, num: i64, den: i64) -> Reduced {
    let n = rows.len();
    // one-based working arrays
    let mut b: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    b.push(Vec::new());
    b.extend(rows);
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n + 1]; n + 1];
    d[0] = BigInt::from(1);
    if n == 0 {
        return Reduced { basis: Vec::new(), d };
    }
    d[1] = dot(&b[1], &b[1]);
    let (pn, pd) = (BigInt::from(num), BigInt::from(den));
    let mut k = 2;
    let mut kmax = 1;
    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 1..j {
                    u = (&d[i] * &u - &lam[k][i] * &lam[j][i]) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "LLL input rows are linearly dependent");
                    d[k] = u;
                }
            }
        }
        loop {
            red(&mut b, &mut lam, &d, k, k - 1);
            let lhs = &pd * &d[k] * &d[k - 2];
            let rhs = &pn * &d[k - 1] * &d[k - 1] - &pd * &lam[k][k - 1] * &lam[k][k - 1];
            if lhs < rhs {
                swap(&mut b, &mut lam, &mut d, k, kmax);
                k = (k - 1).max(2);
            } else {
                for l in (1..k - 1).rev() {
                    red(&mut b, &mut lam, &d, k, l);
                }
                k += 1;
                break;
            }
        }
    }
    b.remove(0);
    Reduced { basis: b, d }
}

fn red(b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize) {
    let two_l = &lam[k][l] * BigInt::from(2);
    if two_l.abs() <= d[l] {
        return;
    }
    let q = round_div(&lam[k][l], &d[l]);
    let bl = b[l].clone();
    for (x, y) in b[k].iter_mut().zip(&bl) {
        *x -= &q * y;
    }
    lam[k][l] = &lam[k][l] - &q * &d[l];
    for i in 1..l {
        let t = &q * &lam[l][i];
        lam[k][i] -= t;
    }
}

fn swap(b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &mut [BigInt], k: usize, kmax: usize) {
    b.swap(k, k - 1);
    for j in 1..k - 1 {
        let t = lam[k][j].clone();
        lam[k][j] = lam[k - 1][j].clone();
        lam[k - 1][j] = t;
    }
    let l = lam[k][k - 1].clone();
    let bb = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
    for i in k + 1..=kmax {
        let t = lam[i][k].clone();
        lam[i][k] = (&d[k] * &lam[i][k - 1] - &l * &t) / &d[k - 1];
        lam[i][k - 1] = (&bb * &t + &l * &lam[i][k]) / &d[k];
    }
    d[k - 1] = bb;
}
