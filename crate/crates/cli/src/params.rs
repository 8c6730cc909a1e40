//! Parsing of parameters, points and ranges given on the command line.

use bernlab::algebraics::{parse_named, AlgebraicNumber, IntPolynomial, NamedKind};
use bernlab::curves::ParamRange;
use bernlab::{Error, Result};
use num_rational::BigRational;

/// `β` from a named parameter (`tau2`, `phi3`, `golden`, `doubling:2`) or a polynomial (largest real root).
pub fn beta(spec: &str) -> Result<AlgebraicNumber> {
    if let Some(named) = parse_named(spec) {
        return named;
    }
    let p = IntPolynomial::parse(spec)?;
    AlgebraicNumber::largest_root(&p)
}

fn rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let (a, b): (i64, i64) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
        return (b != 0).then(|| BigRational::new(a.into(), b.into()));
    }
    if s.contains(['e', 'E']) {
        return None;
    }
    // decimal literal, read exactly
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.trim_start_matches('-').chars().chain(frac.chars()).any(|c| !c.is_ascii_digit()) {
        return None;
    }
    let digits: i64 = format!("{int}{frac}").parse().ok()?;
    Some(BigRational::new(digits.into(), 10i64.checked_pow(frac.len() as u32)?.into()))
}

/// A parameter `t`: a decimal or fraction, `t<n>` / `s<n>` (reciprocal multinacci / doubling numbers),
/// or a `β` (name or polynomial) whose reciprocal is taken.
pub fn t_exact(spec: &str) -> Result<AlgebraicNumber> {
    if let Some(q) = rational(spec) {
        return Ok(AlgebraicNumber::from_rational(&q));
    }
    for (pre, kind) in [("t", NamedKind::Multinacci), ("s", NamedKind::Doubling)] {
        if let Some(n) = spec.strip_prefix(pre).and_then(|r| r.parse::<usize>().ok()) {
            return bernlab::algebraics::named_parameter(kind, n)?.reciprocal();
        }
    }
    beta(spec)?.reciprocal()
}

pub fn t_float(spec: &str) -> Result<f64> {
    if let Ok(v) = spec.trim().parse::<f64>() {
        return Ok(v);
    }
    Ok(t_exact(spec)?.to_f64())
}

/// `lo,hi`, exclusive at `lo` and inclusive at `hi`.
pub fn range(spec: &str) -> Result<ParamRange> {
    let (a, b) = spec
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("range {spec:?} is not of the form lo,hi")))?;
    let (lo, hi) = (t_exact(a)?, t_exact(b)?);
    if lo >= hi {
        return Err(Error::InvalidInput(format!("empty range {spec}")));
    }
    Ok(ParamRange::new(lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameters() {
        assert!((t_float("t2").unwrap() - 0.618034).abs() < 1e-6);
        assert!((t_float("s2").unwrap() - 0.569840).abs() < 1e-6);
        assert_eq!(t_exact("0.25").unwrap().as_rational(), Some(BigRational::new(1.into(), 4.into())));
        assert_eq!(t_exact("3/5").unwrap().as_rational(), Some(BigRational::new(3.into(), 5.into())));
        assert!((beta("x^3-2*x^2+x-1").unwrap().to_f64() - 1.754878).abs() < 1e-6);
        assert!(range("0.6,0.5").is_err());
        assert!(range("s2,t2").is_ok());
    }
}
