//! Real root isolation by Sturm sequences and rational bisection.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::poly::IntPolynomial;

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn half() -> BigRational {
    rat(1, 2)
}

/// Sturm chain of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPolynomial>,
}

impl SturmChain {
    pub fn new(p: &IntPolynomial) -> SturmChain {
        let mut chain = vec![p.clone()];
        let d = p.derivative();
        if d.is_zero() {
            return SturmChain { chain };
        }
        chain.push(d.primitive_part());
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            if b.degree() == 0 {
                break;
            }
            let mut r = a.pseudo_rem(b);
            let k = a.degree() - b.degree() + 1;
            if b.leading().is_negative() && k % 2 == 1 {
                r = -r;
            }
            if r.is_zero() {
                break;
            }
            let (c, pp) = r.content_and_primitive();
            // keep the sign of -r: content carries sign of leading coefficient
            let next = if c.is_negative() { pp } else { -pp };
            chain.push(next);
        }
        SturmChain { chain }
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        count_changes(self.chain.iter().map(|q| q.sign_at(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        count_changes(self.chain.iter().map(|q| {
            let s = q.leading().is_positive();
            let odd = q.degree() % 2 == 1;
            let pos = if positive || !odd { s } else { !s };
            if pos {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        }))
    }

    /// Number of distinct roots in `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false)
            .saturating_sub(self.variations_at_infinity(true))
    }
}

fn count_changes(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut n = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Bound `B` such that every real root lies in `(-B, B)`.
pub fn cauchy_bound(p: &IntPolynomial) -> BigRational {
    let lc = p.leading().abs();
    let m = p.coeffs()[..p.degree()]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    BigRational::new(m + &lc, lc) + BigRational::one()
}

/// One real root of a square-free primitive polynomial with an isolating interval.
///
/// Either `lo == hi` and the root is that rational, or `lo < hi`, `p(lo)` and `p(hi)`
/// have opposite signs and no other root lies in `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct RealRoot {
    poly: IntPolynomial,
    lo: BigRational,
    hi: BigRational,
}

impl RealRoot {
    /// Unchecked constructor; the caller guarantees the isolation invariant.
    pub(crate) fn from_parts(poly: IntPolynomial, lo: BigRational, hi: BigRational) -> RealRoot {
        RealRoot { poly, lo, hi }
    }

    pub fn rational(q: BigRational) -> RealRoot {
        let poly = IntPolynomial::new(vec![-q.numer().clone(), q.denom().clone()]);
        RealRoot { poly, lo: q.clone(), hi: q }
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    fn bisect_once(&mut self) {
        if self.is_exact() {
            return;
        }
        let mid = (&self.lo + &self.hi) * half();
        let sm = self.poly.sign_at(&mid);
        if sm == Ordering::Equal {
            self.lo = mid.clone();
            self.hi = mid;
        } else if sm == self.poly.sign_at(&self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// A copy refined until the interval width is at most `2^-bits`.
    pub fn refined(&self, bits: u32) -> RealRoot {
        let target = BigRational::new(BigInt::one(), BigInt::one() << bits);
        let mut r = self.clone();
        while r.width() > target {
            r.bisect_once();
        }
        r
    }

    pub fn to_f64(&self) -> f64 {
        let r = if self.width() > rat(1, 1 << 30) {
            self.refined(60)
        } else {
            self.clone()
        };
        ((&r.lo + &r.hi) * half()).to_f64().unwrap_or(f64::NAN)
    }

    /// Floating enclosure `[lo, hi]` rounded outward, width about `2^-bits`.
    pub fn enclosure(&self, bits: u32) -> (f64, f64) {
        let r = self.refined(bits);
        (rat_down(&r.lo), rat_up(&r.hi))
    }

    /// Compare the root with a rational number.
    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        if self.is_exact() {
            return self.lo.cmp(q);
        }
        if q <= &self.lo {
            return Ordering::Greater;
        }
        if q >= &self.hi {
            return Ordering::Less;
        }
        let sq = self.poly.sign_at(q);
        if sq == Ordering::Equal {
            return Ordering::Equal;
        }
        // the root lies between lo and q iff signs differ
        if sq == self.poly.sign_at(&self.lo) {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Exact comparison of two real roots.
    pub fn cmp_root(&self, other: &RealRoot) -> Ordering {
        let mut a = self.clone();
        let mut b = other.clone();
        if a.is_exact() {
            return b.cmp_rational(&a.lo).reverse();
        }
        if b.is_exact() {
            return a.cmp_rational(&b.lo);
        }
        let mut checked = false;
        loop {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            if !checked {
                checked = true;
                let g = a.poly.gcd(&b.poly);
                if g.degree() > 0 {
                    let lo = std::cmp::max(a.lo.clone(), b.lo.clone());
                    let hi = std::cmp::min(a.hi.clone(), b.hi.clone());
                    let sc = SturmChain::new(&g);
                    let n = sc.count(&lo, &hi) + usize::from(g.sign_at(&lo) == Ordering::Equal);
                    if n > 0 {
                        return Ordering::Equal;
                    }
                }
            }
            a.bisect_once();
            b.bisect_once();
            if a.is_exact() {
                return b.cmp_rational(&a.lo).reverse();
            }
            if b.is_exact() {
                return a.cmp_rational(&b.lo);
            }
        }
    }
}

impl PartialEq for RealRoot {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_root(other) == Ordering::Equal
    }
}

pub(crate) fn rat_down(q: &BigRational) -> f64 {
    let f = q.to_f64().unwrap_or(f64::NAN);
    match BigRational::from_float(f) {
        Some(r) if &r > q => f.next_down(),
        _ => f,
    }
}

pub(crate) fn rat_up(q: &BigRational) -> f64 {
    let f = q.to_f64().unwrap_or(f64::NAN);
    match BigRational::from_float(f) {
        Some(r) if &r < q => f.next_up(),
        _ => f,
    }
}

/// Isolates the distinct real roots of `p` in the open interval `(lo, hi)`, ascending.
pub fn isolate_real_roots(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> Vec<RealRoot> {
    assert!(!p.is_zero(), "isolate_real_roots: zero polynomial");
    let q = p.square_free_part();
    if q.degree() == 0 || lo >= hi {
        return vec![];
    }
    let b = cauchy_bound(&q);
    let lo = std::cmp::max(lo.clone(), -b.clone());
    let hi_c = std::cmp::min(hi.clone(), b);
    let chain = SturmChain::new(&q);
    let mut out = vec![];
    let mut stack = vec![(lo.clone(), hi_c.clone(), chain.count(&lo, &hi_c))];
    while let Some((a, b, c)) = stack.pop() {
        if c == 0 {
            continue;
        }
        if c == 1 {
            out.push(single(&q, &chain, a, b));
            continue;
        }
        let mid = (&a + &b) * half();
        let cl = chain.count(&a, &mid);
        // right half first so that the left is processed first
        stack.push((mid.clone(), b, c - cl));
        stack.push((a, mid, cl));
    }
    out.retain(|r| r.cmp_rational(hi) == Ordering::Less);
    out
}

/// Root in `(a, b]` known to be unique.
fn single(q: &IntPolynomial, chain: &SturmChain, mut a: BigRational, mut b: BigRational) -> RealRoot {
    if q.sign_at(&b) == Ordering::Equal {
        return RealRoot::from_parts(q.clone(), b.clone(), b);
    }
    while q.sign_at(&a) == Ordering::Equal {
        let mid = (&a + &b) * half();
        if q.sign_at(&mid) == Ordering::Equal {
            return RealRoot::from_parts(q.clone(), mid.clone(), mid);
        }
        if chain.count(&a, &mid) == 0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    RealRoot::from_parts(q.clone(), a, b)
}

pub fn isolate_all_real_roots(p: &IntPolynomial) -> Vec<RealRoot> {
    let b = cauchy_bound(&p.square_free_part()) + BigRational::one();
    isolate_real_roots(p, &-b.clone(), &b)
}

/// Largest real root of `p` if any.
pub fn largest_real_root(p: &IntPolynomial) -> Option<RealRoot> {
    isolate_all_real_roots(p).pop()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn golden_and_doubling() {
        let r = isolate_real_roots(&p(&[-1, -1, 1]), &rat(1, 1), &rat(2, 1));
        assert_eq!(r.len(), 1);
        assert!((r[0].to_f64() - 1.618_033_988_749_895).abs() < 1e-15);
        let r = isolate_real_roots(&p(&[-1, 1, -2, 1]), &rat(1, 1), &rat(2, 1));
        assert_eq!(r.len(), 1);
        assert!((r[0].to_f64() - 1.754_877_666_246_693).abs() < 1e-14);
        assert!(isolate_real_roots(&p(&[1, 0, 1]), &rat(-10, 1), &rat(10, 1)).is_empty());
    }

    #[test]
    fn rational_roots_and_open_ends() {
        // (x-1)(x-2)(2x-1)
        let f = &(&p(&[-1, 1]) * &p(&[-2, 1])) * &p(&[-1, 2]);
        let all = isolate_all_real_roots(&f);
        assert_eq!(all.len(), 3);
        for (r, q) in all.iter().zip([rat(1, 2), rat(1, 1), rat(2, 1)]) {
            assert_eq!(r.cmp_rational(&q), Ordering::Equal);
        }
        let open = isolate_real_roots(&f, &rat(1, 2), &rat(2, 1));
        assert_eq!(open.len(), 1);
        assert_eq!(open[0].cmp_rational(&rat(1, 1)), Ordering::Equal);
    }

    #[test]
    fn refine_and_compare() {
        let r = largest_real_root(&p(&[-2, 0, 1])).unwrap();
        let r2 = r.refined(80);
        assert!(r2.width() <= BigRational::new(1.into(), BigInt::one() << 80));
        assert_eq!(r.cmp_rational(&rat(141421, 100000)), Ordering::Greater);
        assert_eq!(r.cmp_rational(&rat(141422, 100000)), Ordering::Less);
        // same root from x^4-4 = (x^2-2)(x^2+2)
        let s = largest_real_root(&p(&[-4, 0, 0, 0, 1])).unwrap();
        assert_eq!(r.cmp_root(&s), Ordering::Equal);
        let t = largest_real_root(&p(&[-3, 0, 1])).unwrap();
        assert_eq!(r.cmp_root(&t), Ordering::Less);
        let (lo, hi) = r.enclosure(50);
        assert!(lo <= std::f64::consts::SQRT_2 && std::f64::consts::SQRT_2 <= hi);
    }

    #[test]
    fn count_matches_isolation() {
        let f = p(&[1, -5, 0, 10, 0, -5, 1]);
        let c = SturmChain::new(&f.square_free_part()).count_all();
        assert_eq!(c, isolate_all_real_roots(&f).len());
    }
}
