//! Pisot / Salem / Perron / Garsia classification from certified conjugate moduli.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::complex::{with_certified_disks, Disk};
use super::number::AlgebraicNumber;
use super::poly::IntPolynomial;
use super::roots::{isolate_real_roots, rat};
use crate::error::{Error, Result};

/// Highest binary precision tried before a modulus comparison is reported undecided.
pub const MAX_PRECISION_BITS: u32 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NumberTag {
    Pisot,
    Salem,
    Garsia,
    PerronStrict,
    WeakPerronOnly,
    AlgebraicIntegerOnly,
    NotInteger,
}

impl NumberTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            NumberTag::Pisot => "pisot",
            NumberTag::Salem => "salem",
            NumberTag::Garsia => "garsia",
            NumberTag::PerronStrict => "perron_strict",
            NumberTag::WeakPerronOnly => "weak_perron_only",
            NumberTag::AlgebraicIntegerOnly => "algebraic_integer_only",
            NumberTag::NotInteger => "not_integer",
        }
    }
}

impl fmt::Display for NumberTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassFlags {
    pub algebraic_integer: bool,
    pub pisot: bool,
    pub salem: bool,
    pub perron: bool,
    pub weak_perron: bool,
    pub garsia: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumberClass {
    pub tag: NumberTag,
    pub flags: ClassFlags,
    pub witness: String,
    /// Conjugate moduli (excluding the root itself), descending.
    pub conjugate_moduli: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cmp {
    Less,
    Equal,
    Greater,
    Unknown,
}

struct Conjugate {
    center: num_complex::Complex64,
    modulus: f64,
    vs_one: Cmp,
    vs_beta: Cmp,
}

fn cmp_bounds(lo: &BigRational, hi: &BigRational, r_lo: &BigRational, r_hi: &BigRational) -> Cmp {
    if hi < r_lo {
        Cmp::Less
    } else if lo > r_hi {
        Cmp::Greater
    } else {
        Cmp::Unknown
    }
}

/// Number of roots on the unit circle of an irreducible reciprocal polynomial of even degree.
fn unit_circle_count(p: &IntPolynomial) -> usize {
    // p(x) = x^m q(x + 1/x), built from x^k + x^-k = V_k(y)
    let m = p.degree() / 2;
    let c = p.coeffs();
    let y = IntPolynomial::x();
    let mut v_prev = IntPolynomial::constant(BigInt::from(2));
    let mut v = y.clone();
    let mut q = IntPolynomial::constant(c[m].clone());
    for k in 1..=m {
        q = &q + &v.scale(&c[m + k]);
        let next = &(&y * &v) - &v_prev;
        v_prev = v;
        v = next;
    }
    2 * isolate_real_roots(&q, &rat(-2, 1), &rat(2, 1)).len()
}

fn real_segment_hits(d: &Disk, lo: &BigRational, hi: &BigRational) -> bool {
    match d.real_segment() {
        Some((a, b)) => !(b < *lo || a > *hi),
        None => false,
    }
}

fn fmt_c(z: num_complex::Complex64) -> String {
    if z.im.abs() < 1e-12 {
        format!("{:.6}", z.re)
    } else {
        format!("{:.6}{:+.6}i", z.re, z.im)
    }
}

pub fn classify(a: &AlgebraicNumber) -> Result<NumberClass> {
    let p = a.minpoly().clone();
    if a.cmp_rational(&BigRational::one()) != Ordering::Greater {
        return Err(Error::Domain(format!("classified root {} must exceed 1", a.to_f64())));
    }
    if !p.is_monic() {
        return Ok(NumberClass {
            tag: NumberTag::NotInteger,
            flags: ClassFlags::default(),
            witness: format!("leading coefficient {} of {} is not 1", p.leading(), p),
            conjugate_moduli: vec![],
        });
    }
    let b0 = p.coeff(0).abs();
    if p.degree() == 1 {
        let flags = ClassFlags {
            algebraic_integer: true,
            pisot: true,
            salem: false,
            perron: true,
            weak_perron: true,
            garsia: b0 == BigInt::from(2),
        };
        return Ok(NumberClass {
            tag: NumberTag::Pisot,
            flags,
            witness: "rational integer, no conjugates".into(),
            conjugate_moduli: vec![],
        });
    }
    let on_circle = if p.is_reciprocal() { unit_circle_count(&p) } else { 0 };
    let symmetric = p.negate_variable() == p || p.negate_variable() == -&p;
    let one = BigRational::one();

    let decided = with_certified_disks(&p, MAX_PRECISION_BITS, |disks| {
        let prec = disks[0].prec;
        let beta = a.refined(prec + 8);
        let (blo, bhi) = beta.interval();
        let hits: Vec<usize> = (0..disks.len()).filter(|&i| real_segment_hits(&disks[i], blo, bhi)).collect();
        if hits.len() != 1 {
            return None;
        }
        let bi = hits[0];
        let mi = if symmetric {
            let (nlo, nhi) = (-bhi.clone(), -blo.clone());
            let h: Vec<usize> = (0..disks.len()).filter(|&i| real_segment_hits(&disks[i], &nlo, &nhi)).collect();
            if h.len() != 1 {
                return None;
            }
            Some(h[0])
        } else {
            None
        };
        let mut out = vec![];
        let mut unknown_one = 0;
        for (j, d) in disks.iter().enumerate() {
            if j == bi {
                continue;
            }
            let (lo, hi) = d.modulus_bounds();
            let vs_one = cmp_bounds(&lo, &hi, &one, &one);
            let vs_beta = if Some(j) == mi { Cmp::Equal } else { cmp_bounds(&lo, &hi, blo, bhi) };
            if vs_beta == Cmp::Unknown {
                return None;
            }
            if vs_one == Cmp::Unknown {
                unknown_one += 1;
            }
            let c = d.center_f64();
            out.push(Conjugate { center: c, modulus: c.norm(), vs_one, vs_beta });
        }
        if unknown_one != on_circle {
            return None;
        }
        for c in out.iter_mut() {
            if c.vs_one == Cmp::Unknown {
                c.vs_one = Cmp::Equal;
            }
        }
        Some(out)
    });
    let conj = decided.map_err(|bits| Error::Undecided {
        bits,
        detail: format!("conjugate moduli of {p} could not be separated from 1 and the root"),
    })?;

    let all = |f: &dyn Fn(&Conjugate) -> bool| conj.iter().all(f);
    let pisot = all(&|c| c.vs_one == Cmp::Less);
    let salem = !pisot && all(&|c| c.vs_one != Cmp::Greater);
    let perron = all(&|c| c.vs_beta == Cmp::Less);
    let weak_perron = all(&|c| c.vs_beta != Cmp::Greater);
    let garsia = b0 == BigInt::from(2) && all(&|c| c.vs_one == Cmp::Greater);
    let flags = ClassFlags { algebraic_integer: true, pisot, salem, perron, weak_perron, garsia };
    let tag = if pisot {
        NumberTag::Pisot
    } else if salem {
        NumberTag::Salem
    } else if garsia {
        NumberTag::Garsia
    } else if perron {
        NumberTag::PerronStrict
    } else if weak_perron {
        NumberTag::WeakPerronOnly
    } else {
        NumberTag::AlgebraicIntegerOnly
    };

    let largest = conj
        .iter()
        .max_by(|x, y| x.modulus.partial_cmp(&y.modulus).unwrap())
        .expect("degree >= 2");
    let smallest = conj
        .iter()
        .min_by(|x, y| x.modulus.partial_cmp(&y.modulus).unwrap())
        .expect("degree >= 2");
    let witness = match tag {
        NumberTag::Pisot => format!(
            "largest conjugate {} has modulus {:.6} < 1",
            fmt_c(largest.center),
            largest.modulus
        ),
        NumberTag::Salem => format!("{on_circle} conjugates on the unit circle, the rest inside"),
        NumberTag::Garsia => format!(
            "|constant term| = 2 and smallest conjugate {} has modulus {:.6} > 1",
            fmt_c(smallest.center),
            smallest.modulus
        ),
        NumberTag::PerronStrict | NumberTag::WeakPerronOnly => {
            let outside = conj.iter().filter(|c| c.vs_one != Cmp::Less).max_by(|x, y| {
                x.modulus.partial_cmp(&y.modulus).unwrap()
            });
            let c = outside.unwrap_or(largest);
            let rel = if tag == NumberTag::PerronStrict { "<" } else { "=" };
            format!(
                "conjugate {} has modulus {:.6} >= 1; largest conjugate modulus {:.6} {rel} {:.6}",
                fmt_c(c.center),
                c.modulus,
                largest.modulus,
                a.to_f64()
            )
        }
        NumberTag::AlgebraicIntegerOnly => {
            let c = conj.iter().find(|c| c.vs_beta == Cmp::Greater).unwrap_or(largest);
            format!("conjugate {} has modulus {:.6} > {:.6}", fmt_c(c.center), c.modulus, a.to_f64())
        }
        NumberTag::NotInteger => unreachable!(),
    };
    let mut moduli: Vec<f64> = conj.iter().map(|c| c.modulus).collect();
    moduli.sort_by(|x, y| y.partial_cmp(x).unwrap());
    Ok(NumberClass { tag, flags, witness, conjugate_moduli: moduli })
}

/// Classifies the largest real root of an irreducible polynomial.
pub fn classify_polynomial(p: &IntPolynomial) -> Result<(AlgebraicNumber, NumberClass)> {
    if !super::factor::factor(p)?.is_irreducible() {
        return Err(Error::NotIrreducible(p.to_string()));
    }
    let a = AlgebraicNumber::largest_root(p)?;
    let c = classify(&a)?;
    Ok((a, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tag(s: &str) -> NumberTag {
        classify_polynomial(&IntPolynomial::parse(s).unwrap()).unwrap().1.tag
    }

    #[test]
    fn table() {
        assert_eq!(tag("x^2-x-1"), NumberTag::Pisot);
        assert_eq!(tag("x^3-2x^2+x-1"), NumberTag::Pisot);
        assert_eq!(tag("x^5-x^4-x^2-x-1"), NumberTag::PerronStrict);
        assert_eq!(tag("x^3-2x-2"), NumberTag::Garsia);
        assert_eq!(tag("x^7-x^5+x^3-x^2-1"), NumberTag::AlgebraicIntegerOnly);
        assert_eq!(tag("2x^2-3"), NumberTag::NotInteger);
    }

    #[test]
    fn salem_and_weak_perron() {
        // Lehmer's polynomial
        let c = classify_polynomial(&IntPolynomial::parse("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1").unwrap())
            .unwrap()
            .1;
        assert_eq!(c.tag, NumberTag::Salem);
        assert!(c.flags.perron && !c.flags.pisot);
        let w = classify_polynomial(&IntPolynomial::parse("x^2-3").unwrap()).unwrap().1;
        assert_eq!(w.tag, NumberTag::WeakPerronOnly);
        // 2^(1/2): conjugate -2^(1/2), norm 2
        let g = classify_polynomial(&IntPolynomial::parse("x^2-2").unwrap()).unwrap().1;
        assert_eq!(g.tag, NumberTag::Garsia);
        assert!(!g.flags.perron && g.flags.weak_perron);
        assert!(w.flags.weak_perron && !w.flags.perron);
    }

    #[test]
    fn reducible_rejected() {
        assert!(matches!(
            classify_polynomial(&IntPolynomial::parse("x^2-1").unwrap()),
            Err(Error::NotIrreducible(_))
        ));
    }

    #[test]
    fn flag_details() {
        let (_, c) = classify_polynomial(&IntPolynomial::parse("x^5-x^4-x^2-x-1").unwrap()).unwrap();
        assert!((c.conjugate_moduli[0] - 1.03).abs() < 0.01);
        assert!((c.conjugate_moduli[3] - 0.75).abs() < 0.01);
        let (_, g) = classify_polynomial(&IntPolynomial::parse("x^3-2x-2").unwrap()).unwrap();
        assert!(g.flags.garsia && g.flags.perron);
    }
}
