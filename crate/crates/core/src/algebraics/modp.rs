//! Polynomials over a small prime field, coefficients as `u64` ascending.

use rand::Rng;

pub(crate) type Fp = Vec<u64>;

pub(crate) fn trim(a: &mut Fp) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn inv(a: u64, p: u64) -> u64 {
    pow(a % p, p - 2, p)
}

pub(crate) fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

pub(crate) fn deg(a: &Fp) -> isize {
    a.len() as isize - 1
}

#[cfg(test)]
pub(crate) fn add(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    let mut r: Fp = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut r);
    r
}

pub(crate) fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    let mut r: Fp = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut r);
    r
}

pub(crate) fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    trim(&mut r);
    r
}

pub(crate) fn scale(a: &Fp, k: u64, p: u64) -> Fp {
    let mut r: Fp = a.iter().map(|&x| x * (k % p) % p).collect();
    trim(&mut r);
    r
}

pub(crate) fn monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => vec![],
        Some(&l) => scale(a, inv(l, p), p),
    }
}

pub(crate) fn divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.clone();
    trim(&mut r);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let il = inv(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = r[k + b.len() - 1] * il % p;
        q[k] = c;
        if c != 0 {
            for (i, &bc) in b.iter().enumerate() {
                r[k + i] = (r[k + i] + p - c * bc % p) % p;
            }
        }
    }
    trim(&mut q);
    trim(&mut r);
    (q, r)
}

pub(crate) fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    divrem(a, b, p).1
}

pub(crate) fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// Returns `(g, s, t)` with `s a + t b = g` monic.
pub(crate) fn ext_gcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], vec![]);
    let (mut t0, mut t1): (Fp, Fp) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let l = inv(*r0.last().expect("gcd of zeros"), p);
    (scale(&r0, l, p), scale(&s0, l, p), scale(&t0, l, p))
}

pub(crate) fn derivative(a: &Fp, p: u64) -> Fp {
    let mut r: Fp = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * (i as u64 % p) % p)
        .collect();
    trim(&mut r);
    r
}

pub(crate) fn powmod(base: &Fp, mut e: u128, m: &Fp, p: u64) -> Fp {
    let mut r: Fp = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = rem(&mul(&r, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    r
}

/// `x^(p^k) mod m` by repeated p-th powering.
fn frobenius(h: &Fp, m: &Fp, p: u64) -> Fp {
    powmod(h, p as u128, m, p)
}

/// Distinct-degree factorization of a monic square-free polynomial.
pub(crate) fn distinct_degree(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = vec![];
    let mut f = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut i = 1;
    while deg(&f) >= 2 * i as isize {
        h = frobenius(&h, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if deg(&g) > 0 {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, i));
        }
        i += 1;
    }
    if deg(&f) > 0 {
        let d = deg(&f) as usize;
        out.push((f, d));
    }
    out
}

/// Splits a monic square-free product of irreducibles of degree `d` (odd `p`).
pub(crate) fn equal_degree<R: Rng>(f: &Fp, d: usize, p: u64, rng: &mut R) -> Vec<Fp> {
    let n = deg(f) as usize;
    if n == d {
        return vec![f.clone()];
    }
    loop {
        let mut a: Fp = (0..n).map(|_| rng.gen_range(0..p)).collect();
        trim(&mut a);
        if deg(&a) < 1 {
            continue;
        }
        // a^((p^d-1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
        let mut c = a.clone();
        let mut acc = a.clone();
        for _ in 1..d {
            c = frobenius(&c, f, p);
            acc = rem(&mul(&acc, &c, p), f, p);
        }
        let b = sub(&powmod(&acc, ((p - 1) / 2) as u128, f, p), &vec![1], p);
        let g = gcd(&b, f, p);
        if deg(&g) > 0 && deg(&g) < n as isize {
            let h = divrem(f, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&monic(&h, p), d, p, rng));
            return out;
        }
    }
}

pub(crate) fn factor_squarefree<R: Rng>(f: &Fp, p: u64, rng: &mut R) -> Vec<Fp> {
    let f = monic(f, p);
    let mut out = vec![];
    for (g, d) in distinct_degree(&f, p) {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn splits_into_linear_factors() {
        let p = 7;
        // (x-1)(x-2)(x-3)(x^2+1) over F_7 ; x^2+1 is irreducible mod 7
        let f = mul(
            &mul(&mul(&vec![6, 1], &vec![5, 1], p), &vec![4, 1], p),
            &vec![1, 0, 1],
            p,
        );
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let fs = factor_squarefree(&f, p, &mut rng);
        assert_eq!(fs.len(), 4);
        let prod = fs.iter().fold(vec![1u64], |acc, g| mul(&acc, g, p));
        assert_eq!(prod, f);
    }

    #[test]
    fn bezout() {
        let p = 11;
        let (g, s, t) = ext_gcd(&vec![1, 2, 1], &vec![3, 1], p);
        assert_eq!(g, vec![1]);
        let lhs = add(&mul(&s, &vec![1, 2, 1], p), &mul(&t, &vec![3, 1], p), p);
        assert_eq!(lhs, vec![1]);
    }
}
