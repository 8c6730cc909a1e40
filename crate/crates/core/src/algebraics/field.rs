//! Arithmetic in Q(β) for a real algebraic generator β.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::number::AlgebraicNumber;
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

const LEVELS: usize = 12;
const BASE_BITS: u32 = 96;

/// Precomputed integer bounds for `β^i` over an isolating interval `[a/q, b/q]`, `a > 0`.
struct Level {
    /// `a^i q^(d-1-i)` and `b^i q^(d-1-i)`
    lo_pow: Vec<BigInt>,
    hi_pow: Vec<BigInt>,
    /// interval endpoints for the generic fallback
    lo: BigRational,
    hi: BigRational,
}

struct FieldCtx {
    beta: AlgebraicNumber,
    deg: usize,
    /// `reduce[j]` = coordinates of `β^(deg + j)`
    reduce: Vec<Vec<BigRational>>,
    levels: Vec<OnceLock<Level>>,
    beta_f64: f64,
}

/// Shared handle to Q(β); cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldCtx>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q({})", self.0.beta)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.beta == other.0.beta
    }
}

impl Field {
    pub fn new(beta: &AlgebraicNumber) -> Field {
        let deg = beta.degree();
        let p = beta.minpoly();
        let lc = BigRational::from_integer(p.leading());
        // β^deg = -Σ (c_i / lc) β^i
        let mut cur: Vec<BigRational> =
            (0..deg).map(|i| -BigRational::from_integer(p.coeff(i)) / &lc).collect();
        let mut reduce = vec![];
        for _ in 0..deg.saturating_sub(1).max(1) {
            reduce.push(cur.clone());
            // multiply by β
            let top = cur[deg - 1].clone();
            let mut next = vec![BigRational::zero(); deg];
            for i in (1..deg).rev() {
                next[i] = cur[i - 1].clone();
            }
            for i in 0..deg {
                next[i] += &top * &reduce[0][i];
            }
            cur = next;
        }
        Field(Arc::new(FieldCtx {
            beta: beta.clone(),
            deg,
            reduce,
            levels: (0..LEVELS).map(|_| OnceLock::new()).collect(),
            beta_f64: beta.to_f64(),
        }))
    }

    pub fn beta(&self) -> &AlgebraicNumber {
        &self.0.beta
    }

    pub fn degree(&self) -> usize {
        self.0.deg
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), coords: vec![BigRational::zero(); self.0.deg] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(&BigRational::one())
    }

    pub fn from_int(&self, k: i64) -> FieldElement {
        self.from_rational(&BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_rational(&self, q: &BigRational) -> FieldElement {
        let mut e = self.zero();
        e.coords[0] = q.clone();
        e
    }

    /// The generator β.
    pub fn generator(&self) -> FieldElement {
        self.from_poly_coeffs(&[BigRational::zero(), BigRational::one()])
    }

    /// Σ c_i β^i reduced modulo the minimal polynomial.
    pub fn from_poly_coeffs(&self, c: &[BigRational]) -> FieldElement {
        FieldElement { field: self.clone(), coords: self.reduce_vec(c.to_vec()) }
    }

    pub fn from_int_poly(&self, p: &IntPolynomial) -> FieldElement {
        let c: Vec<BigRational> = p.coeffs().iter().map(|x| BigRational::from_integer(x.clone())).collect();
        self.from_poly_coeffs(&c)
    }

    fn reduce_vec(&self, mut c: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.0.deg;
        if c.len() > d {
            let extra: Vec<BigRational> = c.drain(d..).collect();
            // powers beyond the table are folded from the top down
            let mut extra = extra;
            while extra.len() > self.0.reduce.len() {
                let k = d + extra.len() - 1;
                let top = extra.pop().unwrap();
                if top.is_zero() {
                    continue;
                }
                // β^k = β^(k-d) β^d
                let shift = k - d;
                for (i, r) in self.0.reduce[0].iter().enumerate() {
                    let idx = shift + i;
                    if idx < d {
                        c[idx] += &top * r;
                    } else {
                        extra[idx - d] += &top * r;
                    }
                }
            }
            for (j, e) in extra.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                for (i, r) in self.0.reduce[j].iter().enumerate() {
                    c[i] += e * r;
                }
            }
        }
        c.resize(d, BigRational::zero());
        c
    }

    fn level(&self, k: usize) -> &Level {
        self.0.levels[k].get_or_init(|| {
            let bits = BASE_BITS << k;
            let r = self.0.beta.root().refined(bits);
            let (lo, hi) = (r.lo().clone(), r.hi().clone());
            let q = lo.denom().lcm(hi.denom());
            let a = lo.numer() * (&q / lo.denom());
            let b = hi.numer() * (&q / hi.denom());
            let d = self.0.deg;
            let mut lo_pow = vec![];
            let mut hi_pow = vec![];
            if a.is_positive() {
                for i in 0..d {
                    let qq = num_traits::pow(q.clone(), d - 1 - i);
                    lo_pow.push(num_traits::pow(a.clone(), i) * &qq);
                    hi_pow.push(num_traits::pow(b.clone(), i) * qq);
                }
            }
            Level { lo_pow, hi_pow, lo, hi }
        })
    }

    /// Parses a rational expression in `b` (β) and `t` (1/β), e.g. `(18-3*b)/29`.
    pub fn parse(&self, s: &str) -> Result<FieldElement> {
        let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = ExprParser { s: &toks, i: 0, f: self };
        let v = p.expr()?;
        if p.i != toks.len() {
            return Err(Error::Parse(format!("trailing input in '{s}'")));
        }
        Ok(v)
    }
}

struct ExprParser<'a> {
    s: &'a [char],
    i: usize,
    f: &'a Field,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<FieldElement> {
        let mut v = self.term()?;
        while let Some(c) = self.peek() {
            if c == '+' || c == '-' {
                self.i += 1;
                let r = self.term()?;
                v = if c == '+' { &v + &r } else { &v - &r };
            } else {
                break;
            }
        }
        Ok(v)
    }

    fn term(&mut self) -> Result<FieldElement> {
        let mut v = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.i += 1;
                    let r = self.power()?;
                    v = &v * &r;
                }
                Some('/') => {
                    self.i += 1;
                    let r = self.power()?;
                    v = v.checked_div(&r)?;
                }
                // implicit product such as 3b or 2(1+b)
                Some(c) if c == '(' || c.is_ascii_alphabetic() => {
                    let r = self.power()?;
                    v = &v * &r;
                }
                _ => break,
            }
        }
        Ok(v)
    }

    fn power(&mut self) -> Result<FieldElement> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.i += 1;
            let neg = if self.peek() == Some('-') {
                self.i += 1;
                true
            } else {
                false
            };
            let st = self.i;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.i += 1;
            }
            let e: u32 = self.s[st..self.i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| Error::Parse("bad exponent".into()))?;
            let v = base.pow(e);
            return if neg { v.inverse() } else { Ok(v) };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FieldElement> {
        match self.peek() {
            Some('(') => {
                self.i += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.i += 1;
                Ok(v)
            }
            Some('-') => {
                self.i += 1;
                Ok(-&self.power()?)
            }
            Some('b') => {
                self.i += 1;
                Ok(self.f.generator())
            }
            Some('t') => {
                self.i += 1;
                self.f.generator().inverse()
            }
            Some(c) if c.is_ascii_digit() => {
                let st = self.i;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.i += 1;
                }
                let n: BigInt = self.s[st..self.i].iter().collect::<String>().parse().unwrap();
                Ok(self.f.from_rational(&BigRational::from_integer(n)))
            }
            _ => Err(Error::Parse(format!("unexpected input at position {}", self.i))),
        }
    }
}

/// Element Σ coords_i β^i of Q(β), always reduced.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    /// Largest bit length among coordinate numerators and denominators.
    pub fn height_bits(&self) -> u64 {
        self.coords
            .iter()
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    pub fn mul_beta(&self) -> FieldElement {
        let d = self.field.0.deg;
        let mut c = Vec::with_capacity(d + 1);
        c.push(BigRational::zero());
        c.extend(self.coords.iter().cloned());
        FieldElement { field: self.field.clone(), coords: self.field.reduce_vec(c) }
    }

    pub fn pow(&self, e: u32) -> FieldElement {
        let mut r = self.field.one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn scale(&self, k: &BigRational) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.0.deg == 1 {
            return Ok(self.field.from_rational(&self.coords[0].recip()));
        }
        let m: Vec<BigRational> = self
            .field
            .0
            .beta
            .minpoly()
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let u = qpoly_inverse_mod(&self.coords, &m);
        Ok(self.field.from_poly_coeffs(&u))
    }

    pub fn checked_div(&self, o: &FieldElement) -> Result<FieldElement> {
        Ok(self * &o.inverse()?)
    }

    /// Exact sign.
    pub fn sign(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        if let Some(q) = self.as_rational() {
            return q.cmp(&BigRational::zero());
        }
        // common denominator
        let den = self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coords.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        for k in 0..LEVELS {
            let lv = self.field.level(k);
            if let Some(s) = sign_on_level(&ints, lv) {
                return s;
            }
        }
        // a nonzero element of Q(β) cannot vanish at β; this is unreachable for valid fields
        panic!("sign undecided after {} bits", BASE_BITS << (LEVELS - 1));
    }

    pub fn to_f64(&self) -> f64 {
        let b = self.field.0.beta_f64;
        let mut acc = 0.0;
        for c in self.coords.iter().rev() {
            acc = acc * b + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Value with an accuracy independent of cancellation in the coordinates.
    pub fn to_f64_exact(&self) -> f64 {
        if let Some(q) = self.as_rational() {
            return q.to_f64().unwrap_or(f64::NAN);
        }
        let lv = self.field.level(1);
        let mid = (&lv.lo + &lv.hi) / BigRational::from_integer(BigInt::from(2));
        let mut acc = BigRational::zero();
        for c in self.coords.iter().rev() {
            acc = acc * &mid + c;
        }
        acc.to_f64().unwrap_or(f64::NAN)
    }
}

fn sign_on_level(ints: &[BigInt], lv: &Level) -> Option<Ordering> {
    if !lv.lo_pow.is_empty() {
        let mut lower = BigInt::zero();
        let mut upper = BigInt::zero();
        for (i, c) in ints.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_positive() {
                lower += c * &lv.lo_pow[i];
                upper += c * &lv.hi_pow[i];
            } else {
                lower += c * &lv.hi_pow[i];
                upper += c * &lv.lo_pow[i];
            }
        }
        if lower.is_positive() {
            return Some(Ordering::Greater);
        }
        if upper.is_negative() {
            return Some(Ordering::Less);
        }
        return None;
    }
    // interval Horner for generators whose interval touches zero or is negative
    let (mut lo, mut hi) = (BigRational::zero(), BigRational::zero());
    for c in ints.iter().rev() {
        let cands = [&lo * &lv.lo, &lo * &lv.hi, &hi * &lv.lo, &hi * &lv.hi];
        let mn = cands.iter().min().unwrap().clone();
        let mx = cands.iter().max().unwrap().clone();
        let cr = BigRational::from_integer(c.clone());
        lo = mn + &cr;
        hi = mx + cr;
    }
    if lo.is_positive() {
        Some(Ordering::Greater)
    } else if hi.is_negative() {
        Some(Ordering::Less)
    } else {
        None
    }
}

fn qtrim(a: &mut Vec<BigRational>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn qdivrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    qtrim(&mut r);
    let mut b = b.to_vec();
    qtrim(&mut b);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lb = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = &r[k + b.len() - 1] / &lb;
        if !c.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                r[k + i] -= &c * bc;
            }
        }
        q[k] = c;
    }
    qtrim(&mut r);
    (q, r)
}

fn qmul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

fn qsub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    let mut r: Vec<BigRational> = (0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect();
    qtrim(&mut r);
    r
}

/// `u` with `u a ≡ 1 (mod m)`, `m` irreducible.
fn qpoly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    qtrim(&mut r1);
    let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (vec![], vec![BigRational::one()]);
    while r1.len() > 1 {
        let (q, r) = qdivrem(&r0, &r1);
        let s2 = qsub(&s0, &qmul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    // r1 is a nonzero constant
    let c = r1[0].recip();
    s1.iter().map(|x| x * &c).collect()
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.coords == other.coords {
            return Ordering::Equal;
        }
        (self - other).sign()
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (~{:.12})", self, self.to_f64())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![];
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "b".into(),
                _ => format!("b^{i}"),
            };
            let s = if i == 0 {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if *c == -BigRational::one() {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            };
            parts.push(s);
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        f.write_str(&out)
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        debug_assert!(self.field == o.field);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        debug_assert!(self.field == o.field);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        debug_assert!(self.field == o.field);
        let c = qmul(&self.coords, &o.coords);
        FieldElement { field: self.field.clone(), coords: self.field.reduce_vec(c) }
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    /// Panics on division by zero; use `checked_div` for fallible division.
    fn div(self, o: &FieldElement) -> FieldElement {
        self.checked_div(o).expect("division by zero in Q(β)")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
}
