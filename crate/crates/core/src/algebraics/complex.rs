//! Certified enclosures of all complex roots of a square-free integer polynomial.
//!
//! Approximations come from an Aberth iteration in `f64`, then Weierstrass
//! corrections in exact Gaussian-integer arithmetic at a chosen binary precision.
//! Each approximation `z_i` carries the disk `D(z_i, n|w_i|)` with
//! `w_i = p(z_i) / (lc Π_{j≠i}(z_i - z_j))`; every connected component of `k`
//! such disks holds exactly `k` roots.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::IntPolynomial;

/// Disk with dyadic center `(re + i im) / 2^prec` and squared radius `r2`.
#[derive(Clone, Debug)]
pub struct Disk {
    pub re: BigInt,
    pub im: BigInt,
    pub prec: u32,
    pub r2: BigRational,
}

impl Disk {
    pub fn center_f64(&self) -> Complex64 {
        let s = BigRational::new(BigInt::one(), BigInt::one() << self.prec);
        Complex64::new(
            (BigRational::from_integer(self.re.clone()) * &s).to_f64().unwrap_or(f64::NAN),
            (BigRational::from_integer(self.im.clone()) * &s).to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn modulus2(&self) -> BigRational {
        BigRational::new(&self.re * &self.re + &self.im * &self.im, BigInt::one() << (2 * self.prec))
    }

    fn scale(&self) -> BigInt {
        BigInt::one() << self.prec
    }

    /// Rational bounds on `|λ|` for the root inside this disk.
    pub fn modulus_bounds(&self) -> (BigRational, BigRational) {
        let k = self.prec + 16;
        let m2 = self.modulus2();
        let r = sqrt_hi(&self.r2, k);
        let lo = sqrt_lo(&m2, k) - &r;
        let hi = sqrt_hi(&m2, k) + r;
        (if lo.is_negative() { BigRational::zero() } else { lo }, hi)
    }

    /// Real segment `[x - r, x + r]` if the disk meets the real axis.
    pub fn real_segment(&self) -> Option<(BigRational, BigRational)> {
        let y2 = BigRational::new(&self.im * &self.im, BigInt::one() << (2 * self.prec));
        if y2 > self.r2 {
            return None;
        }
        let x = BigRational::new(self.re.clone(), self.scale());
        let r = sqrt_hi(&self.r2, self.prec + 16);
        Some((&x - &r, x + r))
    }
}

pub(crate) fn sqrt_lo(q: &BigRational, bits: u32) -> BigRational {
    if !q.is_positive() {
        return BigRational::zero();
    }
    let scaled = (q * BigRational::from_integer(BigInt::one() << (2 * bits))).floor().to_integer();
    BigRational::new(scaled.sqrt(), BigInt::one() << bits)
}

pub(crate) fn sqrt_hi(q: &BigRational, bits: u32) -> BigRational {
    if !q.is_positive() {
        return BigRational::zero();
    }
    let scaled = (q * BigRational::from_integer(BigInt::one() << (2 * bits))).ceil().to_integer();
    BigRational::new(scaled.sqrt() + 1u32, BigInt::one() << bits)
}

/// Aberth iteration in double precision.
pub fn aberth_f64(p: &IntPolynomial) -> Vec<Complex64> {
    let n = p.degree();
    if n == 0 {
        return vec![];
    }
    let c: Vec<f64> = p.coeffs().iter().map(|x| x.to_f64().unwrap_or(0.0)).collect();
    let lc = c[n];
    let radius = 1.0 + c[..n].iter().map(|x| (x / lc).abs()).fold(0.0, f64::max).min(1e6);
    let r0 = radius.min(2.0 * (c[..n].iter().map(|x| (x / lc).abs()).sum::<f64>()).max(1.0));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(r0 * 0.9, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4)
        })
        .collect();
    let eval = |x: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &a in c.iter().rev() {
            d = d * x + v;
            v = v * x + a;
        }
        (v, d)
    };
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (v, d) = eval(z[k]);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    // round(num / den) for den > 0
    let two = BigInt::from(2);
    (num * &two + den).div_floor(&(den * two))
}

/// Gaussian-integer approximations at a common binary precision.
#[derive(Clone, Debug)]
pub struct Approximations {
    pub prec: u32,
    pub re: Vec<BigInt>,
    pub im: Vec<BigInt>,
}

impl Approximations {
    pub fn from_f64(z: &[Complex64], prec: u32) -> Approximations {
        let to_int = |x: f64| {
            let r = BigRational::from_float(x).unwrap_or_default()
                * BigRational::from_integer(BigInt::one() << prec);
            r.round().to_integer()
        };
        Approximations {
            prec,
            re: z.iter().map(|c| to_int(c.re)).collect(),
            im: z.iter().map(|c| to_int(c.im)).collect(),
        }
    }

    /// Computes Smith disks and the Weierstrass-corrected approximations at `new_prec`.
    pub fn disks_and_step(&self, p: &IntPolynomial, new_prec: u32) -> (Vec<Disk>, Approximations) {
        let n = self.re.len();
        let prec = self.prec;
        let lc = p.leading();
        let coeffs = p.coeffs();
        let mut disks = Vec::with_capacity(n);
        let mut next_re = Vec::with_capacity(n);
        let mut next_im = Vec::with_capacity(n);
        let nn = BigInt::from(n as u64);
        for i in 0..n {
            let (a, b) = (&self.re[i], &self.im[i]);
            // A = 2^(prec*n) p(z)
            let (mut ar, mut ai) = (coeffs[n].clone(), BigInt::zero());
            for k in (0..n).rev() {
                let t = &ar * a - &ai * b;
                ai = &ar * b + &ai * a;
                ar = t + (&coeffs[k] << (prec as usize * (n - k)));
            }
            // Q = 2^(prec*(n-1)) Π (z_i - z_j)
            let (mut qr, mut qi) = (BigInt::one(), BigInt::zero());
            for j in 0..n {
                if j == i {
                    continue;
                }
                let dr = a - &self.re[j];
                let di = b - &self.im[j];
                let t = &qr * &dr - &qi * &di;
                qi = &qr * &di + &qi * &dr;
                qr = t;
            }
            let q2 = &qr * &qr + &qi * &qi;
            if q2.is_zero() {
                // coincident approximations: infinite radius, nudge apart
                disks.push(Disk {
                    re: a.clone(),
                    im: b.clone(),
                    prec,
                    r2: BigRational::from_integer(BigInt::from(1) << 64),
                });
                let shift = BigInt::from(i as u64 + 1) << (prec.saturating_sub(20) as usize);
                next_re.push((a + &shift) << (new_prec - prec.min(new_prec)) as usize);
                next_im.push((b + shift) << (new_prec - prec.min(new_prec)) as usize);
                continue;
            }
            let a2 = &ar * &ar + &ai * &ai;
            let den = (&lc * &lc * &q2) << (2 * prec as usize);
            let r2 = BigRational::new(a2 * &nn * &nn, den);
            disks.push(Disk { re: a.clone(), im: b.clone(), prec, r2 });
            // w = A conj(Q) / (lc |Q|^2 2^prec)
            let wr = &ar * &qr + &ai * &qi;
            let wi = &ai * &qr - &ar * &qi;
            let d = &lc * &q2;
            let up = new_prec as i64 - prec as i64;
            let (num_r, num_i) = (a * &d - &wr, b * &d - &wi);
            let (num_r, num_i, d) = if up >= 0 {
                (num_r << up as usize, num_i << up as usize, d)
            } else {
                (num_r, num_i, d << (-up) as usize)
            };
            let d = if d.is_negative() { -d } else { d };
            let sgn = if lc.is_negative() { -BigInt::one() } else { BigInt::one() };
            next_re.push(round_div(&(num_r * &sgn), &d));
            next_im.push(round_div(&(num_i * &sgn), &d));
        }
        (disks, Approximations { prec: new_prec, re: next_re, im: next_im })
    }
}

/// True when the disks are provably pairwise disjoint.
pub fn disks_isolated(disks: &[Disk]) -> bool {
    let two = BigRational::from_integer(BigInt::from(2));
    for i in 0..disks.len() {
        for j in i + 1..disks.len() {
            let (a, b) = (&disks[i], &disks[j]);
            debug_assert_eq!(a.prec, b.prec);
            let dr = &a.re - &b.re;
            let di = &a.im - &b.im;
            let d2 = BigRational::new(&dr * &dr + &di * &di, BigInt::one() << (2 * a.prec));
            if d2 <= &two * (&a.r2 + &b.r2) {
                return false;
            }
        }
    }
    true
}

/// Iterates the precision ladder, handing each isolated disk set to `decide`
/// until it returns `Some`. Returns `Err(bits)` when the top precision fails.
pub fn with_certified_disks<T>(
    p: &IntPolynomial,
    max_prec: u32,
    mut decide: impl FnMut(&[Disk]) -> Option<T>,
) -> Result<T, u32> {
    let z = aberth_f64(p);
    let mut prec = 64;
    let mut approx = Approximations::from_f64(&z, prec);
    loop {
        // two correction steps per level
        let (_, a1) = approx.disks_and_step(p, prec);
        let (disks, a2) = a1.disks_and_step(p, prec);
        if disks_isolated(&disks) {
            if let Some(v) = decide(&disks) {
                return Ok(v);
            }
        }
        if prec >= max_prec {
            return Err(prec);
        }
        let np = (prec * 2).min(max_prec);
        approx = a2.disks_and_step(p, np).1;
        prec = np;
    }
}
