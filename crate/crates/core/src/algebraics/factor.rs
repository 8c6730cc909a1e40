//! Factorization over Z[x]: square-free decomposition, modular factorization,
//! Hensel lifting and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{self, Fp};
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_CAP: usize = 64;

/// `p = content * Π factor^multiplicity`, factors primitive irreducible with
/// positive leading coefficients, sorted by degree and then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    pub factors: Vec<(IntPolynomial, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPolynomial {
        let mut acc = IntPolynomial::constant(self.content.clone());
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = &acc * f;
            }
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

pub fn factor(p: &IntPolynomial) -> Result<Factorization> {
    factor_with_cap(p, DEFAULT_DEGREE_CAP)
}

pub fn factor_with_cap(p: &IntPolynomial, cap: usize) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() > cap {
        return Err(Error::DegreeCap { degree: p.degree(), cap });
    }
    let (content, pp) = p.content_and_primitive();
    let mut factors = vec![];
    for (a, m) in pp.square_free_decomposition() {
        for g in factor_squarefree(&a) {
            factors.push((g, m));
        }
    }
    factors.sort_by(|x, y| canonical_cmp(&x.0, &y.0));
    Ok(Factorization { content, factors })
}

pub fn is_irreducible(p: &IntPolynomial) -> Result<bool> {
    Ok(p.degree() >= 1 && factor(p)?.is_irreducible())
}

fn canonical_cmp(a: &IntPolynomial, b: &IntPolynomial) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

type ZPoly = Vec<BigInt>;

fn md(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

fn zmod(a: &[BigInt], m: &BigInt) -> ZPoly {
    let mut v: ZPoly = a.iter().map(|c| md(c, m)).collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zmul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    zmod(&r, m)
}

fn zadd(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let r: ZPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect();
    zmod(&r, m)
}

fn zsub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let r: ZPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    zmod(&r, m)
}

/// Division by a monic polynomial modulo `m`.
fn zdivrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let mut r = zmod(a, m);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = md(&r[k + b.len() - 1], m);
        if !c.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                r[k + i] -= &c * bc;
            }
        }
        q[k] = c;
    }
    (zmod(&q, m), zmod(&r, m))
}

fn to_fp(a: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    let mut v: Fp = a.iter().map(|c| md(c, &pb).to_u64().unwrap()).collect();
    modp::trim(&mut v);
    v
}

fn from_fp(a: &Fp) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn inv_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    md(&e.x, m)
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Irreducible factors of a primitive square-free polynomial.
fn factor_squarefree(f: &IntPolynomial) -> Vec<IntPolynomial> {
    if f.degree() <= 1 {
        return vec![f.primitive_part()];
    }
    let coeffs = f.coeffs().to_vec();
    let lc = f.leading();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // pick the prime giving the fewest modular factors among a few candidates
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_fp(&coeffs, p);
        if modp::deg(&fp) != f.degree() as isize {
            continue;
        }
        let g = modp::gcd(&fp, &modp::derivative(&fp, p), p);
        if modp::deg(&g) > 0 {
            continue;
        }
        let fs = modp::factor_squarefree(&fp, p, &mut rng);
        if best.as_ref().is_none_or(|b| fs.len() < b.1.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 5 || best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (p, modular) = best.expect("some prime works for a square-free polynomial");
    if modular.len() == 1 {
        return vec![f.clone()];
    }

    // coefficient bound for lc-scaled factors
    let norm2: BigInt = coeffs.iter().map(|c| c * c).sum();
    let bound = (norm2.sqrt() + 1u32) * lc.abs() * (BigInt::one() << f.degree()) * 2u32;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus = &modulus * &modulus;
    }
    let lifted = lift_tree(&coeffs, &modular, p, &modulus);
    recombine(f.clone(), lifted, &modulus)
}

/// Lifts `f ≡ lc(f) Π facs (mod p)` to monic factors modulo `m_target` (a power p^(2^j)).
fn lift_tree(f: &[BigInt], facs: &[Fp], p: u64, m_target: &BigInt) -> Vec<ZPoly> {
    if facs.len() == 1 {
        let f = zmod(f, m_target);
        let il = inv_mod(f.last().unwrap(), m_target);
        return vec![zmod(&f.iter().map(|c| c * &il).collect::<Vec<_>>(), m_target)];
    }
    let k = facs.len() / 2;
    let lcp = to_fp(&[f.last().unwrap().clone()], p);
    let g0 = facs[..k].iter().fold(lcp, |acc, u| modp::mul(&acc, u, p));
    let h0 = facs[k..].iter().fold(vec![1u64], |acc, u| modp::mul(&acc, u, p));
    let (_, s0, t0) = modp::ext_gcd(&g0, &h0, p);
    let (mut g, mut h, mut s, mut t) = (from_fp(&g0), from_fp(&h0), from_fp(&s0), from_fp(&t0));
    let mut m = BigInt::from(p);
    while &m < m_target {
        let m2 = &m * &m;
        let e = zsub(f, &zmul(&g, &h, &m2), &m2);
        let (q, r) = zdivrem_monic(&zmul(&s, &e, &m2), &h, &m2);
        let g1 = zadd(&zadd(&g, &zmul(&t, &e, &m2), &m2), &zmul(&q, &g, &m2), &m2);
        let h1 = zadd(&h, &r, &m2);
        let b = zsub(&zadd(&zmul(&s, &g1, &m2), &zmul(&t, &h1, &m2), &m2), &[BigInt::one()], &m2);
        let (c, d) = zdivrem_monic(&zmul(&s, &b, &m2), &h1, &m2);
        let s1 = zsub(&s, &d, &m2);
        let t1 = zsub(&zsub(&t, &zmul(&t, &b, &m2), &m2), &zmul(&c, &g1, &m2), &m2);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = m2;
    }
    let mut out = lift_tree(&g, &facs[..k], p, m_target);
    out.extend(lift_tree(&h, &facs[k..], p, m_target));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> IntPolynomial {
    let half: BigInt = m >> 1;
    IntPolynomial::new(
        a.iter()
            .map(|c| {
                let r = md(c, m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn recombine(mut f: IntPolynomial, mut lifted: Vec<ZPoly>, m: &BigInt) -> Vec<IntPolynomial> {
    let mut out = vec![];
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        let n = lifted.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let lc = f.leading();
            let mut g: ZPoly = vec![md(&lc, m)];
            for &i in &idx {
                g = zmul(&g, &lifted[i], m);
            }
            let cand = symmetric(&g, m).primitive_part();
            if cand.degree() > 0 {
                if let Some(q) = f.div_exact(&cand) {
                    out.push(cand);
                    f = q.primitive_part();
                    for &i in idx.iter().rev() {
                        lifted.remove(i);
                    }
                    continue 'outer;
                }
            }
            // next combination
            let mut i = s;
            loop {
                if i == 0 {
                    s += 1;
                    continue 'outer;
                }
                i -= 1;
                if idx[i] < n - s + i {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..s {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    if f.degree() > 0 {
        out.push(f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn small_cases() {
        let f = factor(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
        let sq = &p(&[-1, -1, 1]) * &p(&[-1, -1, 1]);
        assert_eq!(factor(&sq).unwrap().factors, vec![(p(&[-1, -1, 1]), 2)]);
        let t8 = IntPolynomial::parse("t^8-t^7+t^5+t^4+t^2+t-1").unwrap();
        assert!(factor(&t8).unwrap().is_irreducible());
    }

    #[test]
    fn swinnerton_dyer_like() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime
        let f = factor(&p(&[1, 0, -10, 0, 1])).unwrap();
        assert!(f.is_irreducible());
        // (x^4-10x^2+1)(x^2-2)(3x+1) * 6
        let g = &(&p(&[1, 0, -10, 0, 1]) * &p(&[-2, 0, 1])) * &p(&[6, 18]);
        let fg = factor(&g).unwrap();
        assert_eq!(fg.content, BigInt::from(6));
        assert_eq!(fg.factors.len(), 3);
        assert_eq!(fg.expand(), g);
    }

    #[test]
    fn degree_cap() {
        let mut c = vec![0i64; 70];
        c[0] = -1;
        c[69] = 1;
        assert!(matches!(factor(&p(&c)), Err(Error::DegreeCap { .. })));
        c[65] = 1;
        assert_eq!(factor(&p(&c[..66])).unwrap_err(), Error::DegreeCap { degree: 65, cap: 64 });
    }

    #[test]
    fn cyclotomic_split() {
        // x^12 - 1 has 6 cyclotomic factors
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let f = factor(&p(&c)).unwrap();
        assert_eq!(f.factors.len(), 6);
        assert_eq!(f.expand(), p(&c));
    }
}
