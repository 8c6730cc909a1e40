//! Real algebraic numbers given by a minimal polynomial and an isolating interval.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::classify::{classify, NumberClass};
use super::factor::factor;
use super::poly::IntPolynomial;
use super::roots::{isolate_real_roots, largest_real_root, rat, RealRoot, SturmChain};
use crate::error::{Error, Result};

/// Default certified width of isolating intervals, in bits.
pub const DEFAULT_BITS: u32 = 80;

#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    root: RealRoot,
    approx: f64,
}

impl AlgebraicNumber {
    /// Caller guarantees `root.poly()` is irreducible, primitive, positive leading coefficient.
    pub(crate) fn from_irreducible_root(root: RealRoot) -> AlgebraicNumber {
        let root = root.refined(DEFAULT_BITS);
        let approx = root.to_f64();
        AlgebraicNumber { root, approx }
    }

    /// The root of the irreducible polynomial `minpoly` inside `[lo, hi]`.
    pub fn new(minpoly: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> Result<AlgebraicNumber> {
        let f = factor(minpoly)?;
        if !f.is_irreducible() {
            return Err(Error::NotIrreducible(minpoly.to_string()));
        }
        Self::select_root(minpoly, lo, hi)
    }

    /// The unique real root of some factor of `p` in `[lo, hi]`; errors unless exactly one
    /// distinct root of `p` lies there.
    pub fn root_of(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> Result<AlgebraicNumber> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = factor(p)?;
        let mut found = vec![];
        for (g, _) in &f.factors {
            if let Ok(a) = Self::select_root(g, lo, hi) {
                found.push(a);
            }
        }
        match found.len() {
            1 => Ok(found.pop().unwrap()),
            0 => Err(Error::InvalidInput(format!("no root of {p} in [{lo}, {hi}]"))),
            _ => Err(Error::InvalidInput(format!("several roots of {p} in [{lo}, {hi}]"))),
        }
    }

    fn select_root(g: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> Result<AlgebraicNumber> {
        let g = g.primitive_part();
        let chain = SturmChain::new(&g.square_free_part());
        let at_lo = g.sign_at(lo) == Ordering::Equal;
        let n = chain.count(lo, hi) + usize::from(at_lo);
        if n != 1 {
            return Err(Error::InvalidInput(format!("{n} roots of {g} in [{lo}, {hi}]")));
        }
        if at_lo {
            return Ok(Self::from_irreducible_root(RealRoot::from_parts(g, lo.clone(), lo.clone())));
        }
        let mut r = isolate_real_roots(&g, lo, hi);
        if r.is_empty() {
            // root sits at hi
            return Ok(Self::from_irreducible_root(RealRoot::from_parts(g, hi.clone(), hi.clone())));
        }
        Ok(Self::from_irreducible_root(r.remove(0)))
    }

    /// Minimal-polynomial handle for the number isolated by `r`.
    pub fn from_real_root(r: &RealRoot) -> Result<AlgebraicNumber> {
        Self::root_of(r.poly(), r.lo(), r.hi())
    }

    /// Largest real root of `p`.
    pub fn largest_root(p: &IntPolynomial) -> Result<AlgebraicNumber> {
        let r = largest_real_root(p)
            .ok_or_else(|| Error::InvalidInput(format!("{p} has no real root")))?;
        Self::from_real_root(&r)
    }

    pub fn from_rational(q: &BigRational) -> AlgebraicNumber {
        let r = RealRoot::rational(q.clone());
        let poly = r.poly().primitive_part();
        Self::from_irreducible_root(RealRoot::from_parts(poly, q.clone(), q.clone()))
    }

    pub fn minpoly(&self) -> &IntPolynomial {
        self.root.poly()
    }

    pub fn degree(&self) -> usize {
        self.minpoly().degree()
    }

    pub fn root(&self) -> &RealRoot {
        &self.root
    }

    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (self.root.lo(), self.root.hi())
    }

    pub fn to_f64(&self) -> f64 {
        self.approx
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            let c = self.minpoly().coeffs();
            Some(BigRational::new(-c[0].clone(), c[1].clone()))
        } else {
            None
        }
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.minpoly().is_monic()
    }

    /// New handle with an isolating interval of width at most `2^-bits`.
    pub fn refined(&self, bits: u32) -> AlgebraicNumber {
        AlgebraicNumber { root: self.root.refined(bits), approx: self.approx }
    }

    pub fn enclosure(&self, bits: u32) -> (f64, f64) {
        self.root.enclosure(bits)
    }

    /// `1/a` for positive `a`.
    pub fn reciprocal(&self) -> Result<AlgebraicNumber> {
        let mut r = self.root.clone();
        if r.cmp_rational(&BigRational::zero()) != Ordering::Greater {
            return Err(Error::Domain("reciprocal of a non-positive number".into()));
        }
        let mut bits = 4;
        while !r.lo().is_positive() {
            r = r.refined(bits);
            bits += 4;
        }
        let poly = self.minpoly().reversed();
        let (lo, hi) = (r.hi().recip(), r.lo().recip());
        let root = if lo == hi {
            RealRoot::from_parts(poly, lo.clone(), lo)
        } else {
            RealRoot::from_parts(poly, lo, hi)
        };
        Ok(Self::from_irreducible_root(root))
    }

    /// `k * a` for a positive integer `k`.
    pub fn scaled(&self, k: u32) -> AlgebraicNumber {
        let kb = BigInt::from(k);
        let poly = self.minpoly().scale_roots(&kb).primitive_part();
        let kr = BigRational::from_integer(kb);
        let root = RealRoot::from_parts(poly, self.root.lo() * &kr, self.root.hi() * &kr);
        Self::from_irreducible_root(root)
    }

    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        self.root.cmp_rational(q)
    }

    pub fn classify(&self) -> Result<NumberClass> {
        classify(self)
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly() == other.minpoly() && self.root.cmp_root(&other.root) == Ordering::Equal
    }
}

impl Eq for AlgebraicNumber {}

impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.minpoly() == other.minpoly() && self.root.lo() == other.root.lo() && self.root.hi() == other.root.hi() {
            return Ordering::Equal;
        }
        self.root.cmp_root(&other.root)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.10} (root of {})", self.approx, self.minpoly())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedKind {
    Multinacci,
    Doubling,
}

impl std::str::FromStr for NamedKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<NamedKind> {
        match s {
            "multinacci" => Ok(NamedKind::Multinacci),
            "doubling" => Ok(NamedKind::Doubling),
            _ => Err(Error::Parse(format!("unknown parameter family '{s}'"))),
        }
    }
}

/// `x^n - x^(n-1) - ... - 1`
pub fn multinacci_poly(n: usize) -> IntPolynomial {
    let mut c = vec![BigInt::from(-1); n + 1];
    c[n] = BigInt::one();
    IntPolynomial::new(c)
}

/// `x^(n+1) - 2x^n + x - 1`
pub fn doubling_poly(n: usize) -> IntPolynomial {
    let mut c = vec![BigInt::zero(); n + 2];
    c[n + 1] = BigInt::one();
    c[n] += BigInt::from(-2);
    c[1] += BigInt::one();
    c[0] += BigInt::from(-1);
    IntPolynomial::new(c)
}

/// `τ_n` (multinacci) or `φ_n` (doubling) as the root in `(1, 2)`.
pub fn named_parameter(kind: NamedKind, n: usize) -> Result<AlgebraicNumber> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("index {n} < 2")));
    }
    let p = match kind {
        NamedKind::Multinacci => multinacci_poly(n),
        NamedKind::Doubling => doubling_poly(n),
    };
    AlgebraicNumber::root_of(&p, &rat(1, 1), &rat(2, 1))
}

/// `t_n = 1/τ_n`
pub fn t_n(n: usize) -> Result<AlgebraicNumber> {
    named_parameter(NamedKind::Multinacci, n)?.reciprocal()
}

/// `s_n = 1/φ_n`
pub fn s_n(n: usize) -> Result<AlgebraicNumber> {
    named_parameter(NamedKind::Doubling, n)?.reciprocal()
}

/// Parses `multinacci:3`, `doubling:2`, `tau3`, `phi2`, `golden`.
pub fn parse_named(s: &str) -> Option<Result<AlgebraicNumber>> {
    let s = s.trim();
    if s == "golden" {
        return Some(named_parameter(NamedKind::Multinacci, 2));
    }
    if let Some((k, n)) = s.split_once(':') {
        let kind = k.parse::<NamedKind>().ok()?;
        let n = n.parse::<usize>().ok()?;
        return Some(named_parameter(kind, n));
    }
    for (pre, kind) in [("tau", NamedKind::Multinacci), ("phi", NamedKind::Doubling)] {
        if let Some(rest) = s.strip_prefix(pre) {
            if let Ok(n) = rest.parse::<usize>() {
                return Some(named_parameter(kind, n));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_values() {
        let g = named_parameter(NamedKind::Multinacci, 2).unwrap();
        assert!((g.to_f64() - 1.618_033_988_749_895).abs() < 1e-15);
        let t2 = t_n(2).unwrap();
        assert!((t2.to_f64() - 0.618_033_988_749_895).abs() < 1e-15);
        assert_eq!(t2.minpoly(), &IntPolynomial::from_i64s(&[-1, 1, 1]));
        let phi2 = named_parameter(NamedKind::Doubling, 2).unwrap();
        assert!((phi2.to_f64() - 1.754_877_666_246_693).abs() < 1e-14);
        assert!((s_n(2).unwrap().to_f64() - 0.569_840_290_998_053).abs() < 1e-14);
        assert!((t_n(3).unwrap().to_f64() - 0.543_689_012_692_076).abs() < 1e-14);
        assert!(named_parameter(NamedKind::Doubling, 1).is_err());
    }

    #[test]
    fn ordering_and_reducible_input() {
        let t2 = t_n(2).unwrap();
        let s2 = s_n(2).unwrap();
        assert!(s2 < t2);
        assert_eq!(t2.clone(), t2.refined(200));
        let bad = IntPolynomial::from_i64s(&[-1, 0, 1]);
        assert!(matches!(AlgebraicNumber::new(&bad, &rat(0, 1), &rat(2, 1)), Err(Error::NotIrreducible(_))));
        let r = AlgebraicNumber::root_of(&bad, &rat(0, 1), &rat(2, 1)).unwrap();
        assert_eq!(r.as_rational(), Some(rat(1, 1)));
    }

    #[test]
    fn scaled_root() {
        let t2 = t_n(2).unwrap();
        let two_t = t2.scaled(2);
        assert!((two_t.to_f64() - 1.236_067_977_499_79).abs() < 1e-13);
    }
}
