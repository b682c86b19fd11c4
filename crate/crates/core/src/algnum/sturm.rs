//! Sturm sequences and real root isolation over exact rationals.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::intpoly::IntPoly;

/// Sturm sequence of a polynomial, with every member made primitive
/// (positive rescaling keeps the sign pattern).
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<IntPoly>,
}

impl SturmSequence {
    pub fn new(p: &IntPoly) -> Self {
        let mut seq = vec![p.primitive_part()];
        let d = p.derivative();
        if d.is_zero() {
            return SturmSequence { seq };
        }
        seq.push(d.primitive_part());
        loop {
            let n = seq.len();
            let (a, b) = (&seq[n - 2], &seq[n - 1]);
            let r = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            // prem = lc(b)^k * rem; keep the sign of -rem
            let k = a.degree() - b.degree() + 1;
            let flip = b.leading().is_negative() && k % 2 == 1;
            let next = if flip { r } else { -&r };
            let c = next.content();
            seq.push(next.div_scalar_exact(&c).expect("content divides"));
        }
        SturmSequence { seq }
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.seq
    }

    fn variations<I: Iterator<Item = Ordering>>(signs: I) -> usize {
        let mut last = Ordering::Equal;
        let mut v = 0;
        for s in signs {
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(|p| p.leading().sign().cmp_zero()))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(|p| {
            let s = p.leading().sign().cmp_zero();
            if p.degree() % 2 == 1 {
                s.reverse()
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    pub fn count_real(&self) -> usize {
        self.variations_at_neg_inf().saturating_sub(self.variations_at_pos_inf())
    }
}

trait SignCmp {
    fn cmp_zero(self) -> Ordering;
}

impl SignCmp for num_bigint::Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }
}

/// A closed rational interval `[lo, hi]` holding exactly one root of the
/// polynomial it was isolated for. `lo == hi` marks an exact rational root;
/// otherwise neither endpoint is a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isolated {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn mid(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigRational::from_integer(BigInt::from(2))
}

/// Isolate the distinct real roots of `p` in the open interval `(lo, hi)`,
/// sorted increasingly.
pub fn isolate_roots(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> Vec<Isolated> {
    if p.degree() == 0 || lo >= hi {
        return Vec::new();
    }
    let sq = p.squarefree_part();
    let st = SturmSequence::new(&sq);
    let mut out = Vec::new();
    let mut work = vec![(lo.clone(), hi.clone(), st.count(lo, hi))];
    while let Some((a, b, n)) = work.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 {
            if let Some(iso) = tighten(&sq, &st, a, b) {
                if iso.lo != *hi || iso.hi != *hi {
                    out.push(iso);
                }
            }
            continue;
        }
        let m = mid(&a, &b);
        let left = st.count(&a, &m);
        work.push((m.clone(), b, n - left));
        work.push((a, m, left));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Given exactly one root in `(a, b]`, return an interval with non-root
/// endpoints or a degenerate exact root.
fn tighten(p: &IntPoly, st: &SturmSequence, mut a: BigRational, mut b: BigRational) -> Option<Isolated> {
    loop {
        if p.sign_at(&b) == Ordering::Equal {
            return Some(Isolated { lo: b.clone(), hi: b });
        }
        if p.sign_at(&a) != Ordering::Equal {
            return Some(Isolated { lo: a, hi: b });
        }
        let m = mid(&a, &b);
        if st.count(&m, &b) == 1 {
            a = m;
        } else {
            b = m;
        }
    }
}

/// Bisect an isolating interval until its width is at most `2^-bits`.
pub fn bisect_to_width(p: &IntPoly, iso: &Isolated, bits: u32) -> Isolated {
    let mut lo = iso.lo.clone();
    let mut hi = iso.hi.clone();
    if lo == hi {
        return iso.clone();
    }
    let width = BigRational::new(BigInt::one(), BigInt::one() << bits as usize);
    let s_lo = p.sign_at(&lo);
    while &hi - &lo > width {
        let m = mid(&lo, &hi);
        let s = p.sign_at(&m);
        if s == Ordering::Equal {
            return Isolated { lo: m.clone(), hi: m };
        }
        if s == s_lo {
            lo = m;
        } else {
            hi = m;
        }
    }
    Isolated { lo, hi }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn counts_on_known_polys() {
        // (x^2 - 3)(x - 1)
        let p = &IntPoly::from_i64(&[-3, 0, 1]) * &IntPoly::from_i64(&[-1, 1]);
        let st = SturmSequence::new(&p);
        assert_eq!(st.count_real(), 3);
        assert_eq!(st.count(&q(0, 1), &q(2, 1)), 2);
        // half-open: root 1 counted in (0,1] but not in (1,2]
        assert_eq!(st.count(&q(0, 1), &q(1, 1)), 1);
        assert_eq!(st.count(&q(1, 1), &q(2, 1)), 1);
    }

    #[test]
    fn isolation_with_rational_roots() {
        let p = IntPoly::from_i64(&[-1, 2]); // 2x - 1
        let r = isolate_roots(&p, &q(0, 1), &q(1, 1));
        assert_eq!(r.len(), 1);
        assert!(r[0].lo <= q(1, 2) && q(1, 2) <= r[0].hi);
        let narrow = bisect_to_width(&p, &r[0], 10);
        assert_eq!(narrow, Isolated { lo: q(1, 2), hi: q(1, 2) });
        let none = isolate_roots(&IntPoly::from_i64(&[3, 0, 1]), &q(-10, 1), &q(10, 1));
        assert!(none.is_empty());
        // root exactly at the open right end is excluded
        let e = isolate_roots(&IntPoly::from_i64(&[-1, 1]), &q(0, 1), &q(1, 1));
        assert!(e.is_empty());
    }

    #[test]
    fn many_close_roots() {
        // (10x-1)(10x-2)...(10x-9)
        let mut p = IntPoly::one();
        for k in 1..10 {
            p = &p * &IntPoly::from_i64(&[-k, 10]);
        }
        let r = isolate_roots(&p, &q(0, 1), &q(1, 1));
        assert_eq!(r.len(), 9);
        for w in r.windows(2) {
            assert!(w[0].hi <= w[1].lo);
        }
    }
}
