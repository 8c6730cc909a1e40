//! Dense integer polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Polynomial with arbitrary-precision integer coefficients, ascending degree order.
///
/// The coefficient vector is always trimmed, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Returns `(c, q)` with `self = c * q`, `q` primitive with positive leading coefficient.
    pub fn content_and_primitive(&self) -> (BigInt, IntPolynomial) {
        if self.is_zero() {
            return (BigInt::zero(), IntPolynomial::zero());
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        (c.clone(), IntPolynomial::new(self.coeffs.iter().map(|a| a / &c).collect()))
    }

    pub fn primitive_part(&self) -> IntPolynomial {
        self.content_and_primitive().1
    }

    pub fn scale(&self, k: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `x^deg * p(1/x)`, normalized to a positive leading coefficient.
    pub fn reversed(&self) -> IntPolynomial {
        let mut c = self.coeffs.clone();
        c.reverse();
        let p = IntPolynomial::new(c);
        if p.leading().is_negative() {
            -p
        } else {
            p
        }
    }

    /// `p(-x)`
    pub fn negate_variable(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `q^deg * p(x / q)` for a positive integer `q`; the roots get multiplied by `q`.
    pub fn scale_roots(&self, q: &BigInt) -> IntPolynomial {
        let d = self.degree();
        let mut pw = BigInt::one();
        let mut out = vec![BigInt::zero(); self.coeffs.len()];
        for i in (0..=d).rev() {
            if i < self.coeffs.len() {
                out[i] = &self.coeffs[i] * &pw;
            }
            pw *= q;
        }
        IntPolynomial::new(out)
    }

    pub fn is_reciprocal(&self) -> bool {
        let n = self.coeffs.len();
        n > 0 && (0..n).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    pub fn is_antireciprocal(&self) -> bool {
        let n = self.coeffs.len();
        n > 0 && (0..n).all(|i| self.coeffs[i] == -&self.coeffs[n - 1 - i])
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        // Horner on numerator with a common power of the denominator.
        let (n, d) = (x.numer(), x.denom());
        if self.is_zero() {
            return BigRational::zero();
        }
        let deg = self.degree();
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        // acc = d^deg * p(x) after the loop built d^(deg+1) in dpow.
        let denom = num_traits::pow(d.clone(), deg);
        BigRational::new(acc, denom)
    }

    /// Sign of `p(x)` for rational `x`, avoiding a gcd normalization.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        let (n, d) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        acc.sign_ord()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Pseudo remainder `lc(b)^(da-db+1) * a mod b`.
    pub fn pseudo_rem(&self, b: &IntPolynomial) -> IntPolynomial {
        assert!(!b.is_zero(), "pseudo_rem by zero");
        let db = b.degree();
        let lb = b.leading();
        let mut r = self.coeffs.clone();
        if r.len() < b.coeffs.len() {
            return self.clone();
        }
        let mut steps = r.len() - b.coeffs.len() + 1;
        while r.len() >= b.coeffs.len() && !r.is_empty() {
            let lr = r.last().unwrap().clone();
            let shift = r.len() - 1 - db;
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[i + shift] -= &lr * bc;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            steps -= 1;
        }
        let mut out = IntPolynomial::new(r);
        if steps > 0 {
            out = out.scale(&num_traits::pow(lb, steps));
        }
        out
    }

    /// Exact division over Z, if `b` divides `self`.
    pub fn div_exact(&self, b: &IntPolynomial) -> Option<IntPolynomial> {
        if b.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        if self.degree() < b.degree() {
            return None;
        }
        let lb = b.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - b.coeffs.len() + 1];
        for k in (0..q.len()).rev() {
            let top = &r[k + b.coeffs.len() - 1];
            let (qq, rem) = top.div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[k + i] -= &qq * bc;
            }
            q[k] = qq;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(IntPolynomial::new(q))
        } else {
            None
        }
    }

    /// Primitive gcd over Z[x] with positive leading coefficient.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    /// Yun square-free decomposition of the primitive part: `pp = Π a_i^i`.
    /// Returns `(a_i, i)` for the nonconstant `a_i`.
    pub fn square_free_decomposition(&self) -> Vec<(IntPolynomial, usize)> {
        let f = self.primitive_part();
        let mut out = vec![];
        if f.degree() == 0 {
            return out;
        }
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.div_exact(&a).expect("gcd divides");
        let mut c = fp.div_exact(&a).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let ai = b.gcd(&d);
            b = b.div_exact(&ai).expect("gcd divides");
            if ai.degree() > 0 {
                out.push((ai.clone(), i));
            }
            if b.degree() == 0 {
                break;
            }
            c = d.div_exact(&ai).expect("gcd divides");
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Square-free part (product of distinct irreducible factors), primitive.
    pub fn square_free_part(&self) -> IntPolynomial {
        let f = self.primitive_part();
        if f.degree() == 0 {
            return f;
        }
        let g = f.gcd(&f.derivative());
        f.div_exact(&g).expect("gcd divides").primitive_part()
    }

    /// Bit length of the largest coefficient.
    pub fn height_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    pub fn to_coeff_list(&self) -> String {
        let parts: Vec<String> = if self.is_zero() {
            vec!["0".into()]
        } else {
            self.coeffs.iter().map(|c| c.to_string()).collect()
        };
        format!("[{}]", parts.join(","))
    }

    /// Human-readable form in the given variable, highest degree first.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { "-" } else { "+" });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a}*{mono}"));
            }
        }
        s
    }

    /// Parses `[c0,c1,...]` or a human-readable polynomial in one variable.
    pub fn parse(s: &str) -> Result<IntPolynomial> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unterminated coefficient list: {s}")))?;
            let mut v = vec![];
            for part in inner.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                v.push(
                    part.parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("bad coefficient '{part}'")))?,
                );
            }
            return Ok(IntPolynomial::new(v));
        }
        parse_human(s)
    }
}

fn parse_human(s: &str) -> Result<IntPolynomial> {
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let bytes = text.as_bytes();
    let mut var: Option<u8> = None;
    let mut terms: Vec<(BigInt, usize)> = vec![];
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = BigInt::one();
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        } else if !terms.is_empty() {
            return Err(Error::Parse(format!("expected sign in '{text}'")));
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coef = if i > start {
            text[start..i].parse::<BigInt>().unwrap()
        } else {
            BigInt::one()
        };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let mut exp = 0usize;
        if i < bytes.len() && bytes[i].is_ascii_alphabetic() {
            let v = bytes[i];
            if var.is_some_and(|w| w != v) {
                return Err(Error::Parse(format!("mixed variables in '{text}'")));
            }
            var = Some(v);
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let st = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                exp = text[st..i]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in '{text}'")))?;
            }
        } else if i == start {
            return Err(Error::Parse(format!("unexpected character in '{text}'")));
        }
        terms.push((sign * coef, exp));
    }
    let deg = terms.iter().map(|t| t.1).max().unwrap_or(0);
    if deg > 4096 {
        return Err(Error::Parse("degree too large".into()));
    }
    let mut v = vec![BigInt::zero(); deg + 1];
    for (c, e) in terms {
        v[e] += c;
    }
    Ok(IntPolynomial::new(v))
}

trait SignOrd {
    fn sign_ord(&self) -> Ordering;
}

impl SignOrd for BigInt {
    fn sign_ord(&self) -> Ordering {
        if self.is_negative() {
            Ordering::Less
        } else if self.is_zero() {
            Ordering::Equal
        } else {
            Ordering::Greater
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("x"))
    }
}

impl<'a> Add<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, o: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, o: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, o: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || o.is_zero() {
            return IntPolynomial::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPolynomial::new(v)
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn parse_forms_agree() {
        let a = IntPolynomial::parse("x^5-x^4-x^2-x-1").unwrap();
        let b = IntPolynomial::parse("[-1,-1,-1,0,-1,1]").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "x^5-x^4-x^2-x-1");
        assert_eq!(IntPolynomial::parse("2*t^3 + 2t^2 - 1").unwrap(), p(&[-1, 0, 2, 2]));
        assert!(IntPolynomial::parse("x^2+y").is_err());
    }

    #[test]
    fn gcd_and_division() {
        let a = &p(&[-1, -1, 1]) * &p(&[1, 1]);
        let b = &p(&[-1, -1, 1]) * &p(&[-2, 0, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, -1, 1]));
        assert_eq!(a.div_exact(&p(&[1, 1])).unwrap(), p(&[-1, -1, 1]));
        assert!(a.div_exact(&p(&[2, 1])).is_none());
    }

    #[test]
    fn yun() {
        let f = &(&p(&[-1, -1, 1]) * &p(&[-1, -1, 1])) * &p(&[0, 1]);
        let d = f.square_free_decomposition();
        assert_eq!(d, vec![(p(&[0, 1]), 1), (p(&[-1, -1, 1]), 2)]);
        assert_eq!(f.square_free_part(), &p(&[-1, -1, 1]) * &p(&[0, 1]));
    }

    #[test]
    fn reversal_and_eval() {
        let f = p(&[-1, 1, 1]);
        assert_eq!(f.reversed(), p(&[1, -1, -1]).reversed());
        assert_eq!(f.reversed(), p(&[-1, -1, 1]));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.eval_rational(&half), BigRational::new((-1).into(), 4.into()));
        assert_eq!(f.sign_at(&half), Ordering::Less);
        assert_eq!(p(&[-3, 0, 1]).scale_roots(&BigInt::from(2)), p(&[-12, 0, 1]));
    }
}
