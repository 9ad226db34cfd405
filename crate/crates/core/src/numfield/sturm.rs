//! Sturm sequences and exact real root isolation.

use num_traits::{One, Signed, Zero};

use crate::arith::rational::int;
use crate::arith::{Rational, RationalPoly};

/// Sturm sequence of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<RationalPoly>,
}

impl SturmSequence {
    pub fn new(f: &RationalPoly) -> Self {
        let mut seq = vec![f.clone()];
        if f.deg() == 0 {
            return Self { seq };
        }
        let mut next = f.derivative();
        while !next.is_zero() {
            let r = -&seq.last().expect("nonempty").rem(&next);
            seq.push(next);
            next = r;
        }
        Self { seq }
    }

    fn changes<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut n = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
        n
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::changes(self.seq.iter().map(|p| sign(&p.eval(x))))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::changes(self.seq.iter().map(|p| sign(&p.lc())))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::changes(self.seq.iter().map(|p| {
            let s = sign(&p.lc());
            if p.deg() % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots.
    pub fn real_root_count(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }

    /// Distinct roots in the half-open interval `(lo, hi]`.
    pub fn count_in(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations_at(lo) - self.variations_at(hi)
    }
}

pub fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// All real roots lie in `(-B, B)` for this Cauchy bound.
pub fn cauchy_bound(f: &RationalPoly) -> Rational {
    let lc = f.lc().abs();
    let m = f.coeffs()[..f.deg()]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Rational::zero);
    m + Rational::one()
}

/// Isolating interval `[lo, hi]` for one real root; `lo == hi` for a rational root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

/// Disjoint isolating intervals for the real roots of a squarefree `f`, ascending.
pub fn isolate_real_roots(f: &RationalPoly) -> Vec<RootInterval> {
    match f.deg() {
        0 => return Vec::new(),
        1 => {
            let r = -f.coeff(0) / f.coeff(1);
            return vec![RootInterval { lo: r.clone(), hi: r }];
        }
        _ => {}
    }
    let sturm = SturmSequence::new(f);
    let b = cauchy_bound(f);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sturm.count_in(&lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 && f.eval(&hi).is_zero() {
            out.push(RootInterval { lo: hi.clone(), hi });
            continue;
        }
        // interval endpoints must not be roots so bisection can compare signs
        if n == 1 && !f.eval(&lo).is_zero() {
            out.push(RootInterval { lo, hi });
            continue;
        }
        let mid = (&lo + &hi) / int(2);
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Shrink an isolating interval of a root of `f` by bisection.
pub fn bisect(f: &RationalPoly, iv: &RootInterval) -> RootInterval {
    if iv.lo == iv.hi {
        return iv.clone();
    }
    let mid = (&iv.lo + &iv.hi) / int(2);
    let fm = f.eval(&mid);
    if fm.is_zero() {
        return RootInterval { lo: mid.clone(), hi: mid };
    }
    if sign(&fm) == sign(&f.eval(&iv.lo)) {
        RootInterval { lo: mid, hi: iv.hi.clone() }
    } else {
        RootInterval { lo: iv.lo.clone(), hi: mid }
    }
}

/// Sign of `a(θ)` for the root θ of `f` in `iv`, assuming `a(θ) ≠ 0`.
pub fn sign_at_root(f: &RationalPoly, iv: &RootInterval, a: &RationalPoly) -> i8 {
    if a.deg() == 0 || iv.lo == iv.hi {
        return sign(&a.eval(&iv.lo));
    }
    let sq = a.div_exact(&a.gcd(&a.derivative())).expect("gcd divides");
    let sturm = SturmSequence::new(&sq);
    let mut iv = iv.clone();
    loop {
        let (sl, sh) = (sign(&a.eval(&iv.lo)), sign(&a.eval(&iv.hi)));
        if sl != 0 && sh != 0 && sturm.count_in(&iv.lo, &iv.hi) == 0 {
            return sl;
        }
        iv = bisect(f, &iv);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RationalPoly {
        RationalPoly::from_i64(c)
    }

    #[test]
    fn root_counts() {
        assert_eq!(SturmSequence::new(&p(&[-2, 0, 1])).real_root_count(), 2);
        assert_eq!(SturmSequence::new(&p(&[1, 0, 1])).real_root_count(), 0);
        assert_eq!(SturmSequence::new(&p(&[1, -2, -1, 1])).real_root_count(), 3);
        assert_eq!(SturmSequence::new(&p(&[-1, -1, 0, 1])).real_root_count(), 1);
    }

    #[test]
    fn isolation_is_ordered_and_disjoint() {
        let f = p(&[1, -2, -1, 1]);
        let ivs = isolate_real_roots(&f);
        assert_eq!(ivs.len(), 3);
        for w in ivs.windows(2) {
            assert!(w[0].hi <= w[1].lo);
        }
        let ivs = isolate_real_roots(&p(&[-3, 1]));
        assert_eq!(ivs, vec![RootInterval { lo: int(3), hi: int(3) }]);
        let ivs = isolate_real_roots(&p(&[0, -1, 0, 1]));
        assert_eq!(ivs.len(), 3);
    }

    #[test]
    fn signs_of_generator() {
        let f = p(&[-2, 0, 1]);
        let ivs = isolate_real_roots(&f);
        let s: Vec<i8> = ivs.iter().map(|iv| sign_at_root(&f, iv, &p(&[0, 1]))).collect();
        assert_eq!(s, vec![-1, 1]);
        // 3 - 2x at ±√2: 3 - 2√2 > 0 barely
        let s: Vec<i8> = ivs.iter().map(|iv| sign_at_root(&f, iv, &p(&[3, -2]))).collect();
        assert_eq!(s, vec![1, 1]);
    }
}
