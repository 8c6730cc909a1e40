//! Unique-address sets `A_t` and itinerary sets `S_b`: holes, growth and dimension,
//! and parameters admitting points with two or countably many addresses.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebraics::roots::rat;
use crate::algebraics::{AlgebraicNumber, Field, FieldElement, IntPolynomial, NumberClass};
use crate::curves::{algebraic_roots_between, rational_form, t_star, ParamRange};
use crate::error::{Error, Result};
use crate::orbits::{growth_rate, Bernoulli, Enclosure, Growth};
use crate::words::{BitSeq, BitWord};

pub const MAX_HOLE_DEPTH: usize = 40;
/// Largest number of hole words [`holes`] will list.
pub const HOLE_LIST_CAP: usize = 1 << 20;
/// Orbit points iterated before a no-return check is reported as unverified.
pub const NO_RETURN_HORIZON: usize = 10_000;

fn check_b(b: &BitSeq) -> Result<()> {
    if !b.is_kneading() {
        return Err(Error::NotKneading(b.to_string()));
    }
    if b.value() >= rat(1, 2) {
        return Err(Error::InvalidInput(format!("{b} is not below 1/2")));
    }
    Ok(())
}

/// Markov partition of [0,1] cut at the doubling orbit of `2b` and `1 - 2b`.
///
/// A word `w` is a hole word when no suffix `s` with `|s| ≥ 2` has `f_s(½) ∈ (b, 1-b)`. Reading words
/// from the right, `0s` stays a hole word iff `f_s(½) < 2b`, and `1s` iff `f_s(½) > 1 - 2b`.
#[derive(Clone, Debug)]
struct SuffixAutomaton {
    /// `next[i][a]`: state after prefixing letter `a`, if allowed.
    next: Vec<[Option<usize>; 2]>,
    start: [usize; 2],
}

impl SuffixAutomaton {
    fn new(b: &BitSeq) -> Result<SuffixAutomaton> {
        let two = rat(2, 1);
        let one = BigRational::one();
        let bv = b.value();
        let (lo, hi) = (&two * &bv, &one - &two * &bv);
        let mut cuts = vec![BigRational::zero(), one.clone()];
        for start in [lo.clone(), hi.clone()] {
            let mut p = start;
            while !cuts.contains(&p) {
                if p.denom() & BigInt::one() == BigInt::zero() {
                    return Err(Error::Dyadic);
                }
                cuts.push(p.clone());
                p = &p * &two;
                if p >= one {
                    p -= &one;
                }
            }
        }
        cuts.sort();
        let state = |x: &BigRational| cuts.partition_point(|c| c < x) - 1;
        let n = cuts.len() - 1;
        let mut next = vec![[None, None]; n];
        for (i, nx) in next.iter_mut().enumerate() {
            let (l, r) = (&cuts[i], &cuts[i + 1]);
            for a in 0..2u8 {
                let ok = if a == 0 { *r <= lo } else { *l >= hi };
                if !ok {
                    continue;
                }
                let shift = BigRational::from_integer(a.into());
                let (il, ir) = ((&shift + l) / &two, (&shift + r) / &two);
                let j = state(&((&il + &ir) / &two));
                if il < cuts[j] || ir > cuts[j + 1] {
                    return Err(Error::Internal("partition is not Markov".into()));
                }
                nx[a as usize] = Some(j);
            }
        }
        let start = [state(&rat(1, 4)), state(&rat(3, 4))];
        Ok(SuffixAutomaton { next, start })
    }

    /// `a_m` for `m = 1..=depth`.
    fn counts(&self, depth: usize) -> Vec<BigInt> {
        let n = self.next.len();
        let mut v = vec![BigInt::zero(); n];
        for s in self.start {
            v[s] += 1;
        }
        let mut out = vec![];
        for _ in 0..depth {
            out.push(v.iter().sum());
            let mut w = vec![BigInt::zero(); n];
            for (i, c) in v.iter().enumerate() {
                for j in self.next[i].iter().flatten() {
                    w[*j] += c;
                }
            }
            v = w;
        }
        out
    }

    /// Adjacency of the states reachable from the two starts.
    fn adjacency(&self) -> Vec<Vec<u32>> {
        let n = self.next.len();
        let mut seen = vec![false; n];
        let mut stack = self.start.to_vec();
        for &s in &stack {
            seen[s] = true;
        }
        while let Some(i) = stack.pop() {
            for &j in self.next[i].iter().flatten() {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        let idx: Vec<usize> = (0..n).filter(|&i| seen[i]).collect();
        let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut a = vec![vec![0u32; idx.len()]; idx.len()];
        for &i in &idx {
            for j in self.next[i].iter().flatten() {
                a[pos[&i]][pos[j]] += 1;
            }
        }
        a
    }
}

/// Hole words `W` of `S_b` up to a length, with `J_w = f_w(J)`, `J = (b, 1-b)`, `f0 = x/2`, `f1 = (x+1)/2`.
/// `J` itself is the level-0 hole and is not listed.
#[derive(Clone, Debug)]
pub struct HoleSystem {
    pub b: BitSeq,
    pub depth: usize,
    /// Sorted by length, then lexicographically.
    pub holes: Vec<BitWord>,
    /// `counts[m-1] = a_m`
    pub counts: Vec<BigInt>,
}

impl HoleSystem {
    /// Endpoints of `J_w`.
    pub fn interval(&self, w: &BitWord) -> (BigRational, BigRational) {
        let bv = self.b.value();
        hole_interval(w, &bv)
    }

    /// The listed hole containing the eventually periodic point `c`, if any.
    pub fn containing(&self, c: &BitSeq) -> Option<&BitWord> {
        let x = c.value();
        // J_w lies in the cylinder of w, so only prefixes of c can qualify
        (1..=self.depth).find_map(|k| {
            let p = c.prefix(k);
            let i = self.holes.binary_search_by(|w| (w.len(), w.bits()).cmp(&(k, p.bits()))).ok()?;
            let (l, r) = self.interval(&self.holes[i]);
            (l < x && x < r).then_some(&self.holes[i])
        })
    }
}

pub(crate) fn hole_interval(w: &BitWord, b: &BigRational) -> (BigRational, BigRational) {
    let one = BigRational::one();
    let (mut l, mut r) = (b.clone(), &one - b);
    for &a in w.bits().iter().rev() {
        let s = BigRational::from_integer(a.into());
        l = (&l + &s) / rat(2, 1);
        r = (&r + &s) / rat(2, 1);
    }
    (l, r)
}

/// Counts `a_m` for `m ≤ depth` without listing words.
pub fn hole_counts(b: &BitSeq, depth: usize) -> Result<Vec<BigInt>> {
    check_b(b)?;
    Ok(SuffixAutomaton::new(b)?.counts(depth))
}

pub fn holes(b: &BitSeq, depth: usize) -> Result<HoleSystem> {
    check_b(b)?;
    if depth > MAX_HOLE_DEPTH {
        return Err(Error::ResourceCap(format!("depth {depth} exceeds {MAX_HOLE_DEPTH}")));
    }
    let aut = SuffixAutomaton::new(b)?;
    let counts = aut.counts(depth);
    let total: BigInt = counts.iter().sum();
    if total > BigInt::from(HOLE_LIST_CAP) {
        return Err(Error::ResourceCap(format!("{total} hole words exceed {HOLE_LIST_CAP}")));
    }
    let mut holes = vec![];
    // words built right to left: (reversed letters, state)
    let mut layer: Vec<(Vec<u8>, usize)> = if depth == 0 { vec![] } else { vec![(vec![0], aut.start[0]), (vec![1], aut.start[1])] };
    while !layer.is_empty() {
        let mut words: Vec<BitWord> = layer.iter().map(|(r, _)| BitWord::new(r.iter().rev().cloned().collect())).collect();
        words.sort();
        holes.extend(words);
        if layer[0].0.len() == depth {
            break;
        }
        let mut next = vec![];
        for (r, s) in &layer {
            for a in 0..2u8 {
                if let Some(j) = aut.next[*s][a as usize] {
                    let mut r2 = r.clone();
                    r2.push(a);
                    next.push((r2, j));
                }
            }
        }
        layer = next;
    }
    Ok(HoleSystem { b: b.clone(), depth, holes, counts })
}

/// Growth rate `ρ` of the hole counts, exact for eventually periodic `b`.
pub fn hole_growth(b: &BitSeq) -> Result<Growth> {
    check_b(b)?;
    growth_rate(&SuffixAutomaton::new(b)?.adjacency())
}

/// `dim A_t = log ρ / log β`, valid at `t = t*(b)` and, for periodic `b`, on `[t*(b'), t*(b)]` with `b'` the period double.
pub fn dimension(b: &BitSeq, t: &AlgebraicNumber) -> Result<Enclosure> {
    check_b(b)?;
    let ts = t_star(b)?;
    let ok = match t.cmp(&ts) {
        Ordering::Equal => true,
        Ordering::Greater => false,
        Ordering::Less => match b.period_double() {
            Ok(b2) if b.preperiod().is_empty() => *t >= t_star(&b2)?,
            _ => false,
        },
    };
    if !ok {
        return Err(Error::Domain(format!("t = {:.6} is outside the plateau of {b}", t.to_f64())));
    }
    let rho = hole_growth(b)?.enclosure;
    let tf = t.to_f64();
    let margin = 1e-12;
    let (lb, hb) = ((1.0 / tf) * (1.0 - margin), (1.0 / tf) * (1.0 + margin));
    let lo = (rho.lo.ln() / hb.ln()).max(0.0);
    let hi = rho.hi.ln() / lb.ln();
    Ok(Enclosure::new(lo - margin, hi + margin))
}

/// `b = .overline{w(1-w)}`
pub fn is_isolated(b: &BitSeq) -> bool {
    let per = b.period();
    let n = per.len();
    b.preperiod().is_empty() && n % 2 == 0 && (0..n / 2).all(|i| per[i] + per[i + n / 2] == 1)
}

/// Doubling orbit of `c` avoids `(b, 1-b)`.
pub fn in_s_b(c: &BitSeq, b: &BitSeq) -> bool {
    let bv = b.value();
    let hi = BigRational::one() - &bv;
    c.doubling_orbit().iter().all(|s| {
        let v = s.value();
        v <= bv || v >= hi
    })
}

/// `y_c(t) ∈ A_t` (the point with address `c` has no other address): `t < t*(c)`.
pub fn membership_at(c: &BitSeq, t: &AlgebraicNumber) -> Result<bool> {
    Ok(*t < t_star(c)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AddressCount {
    Two,
    Countable,
}

impl AddressCount {
    pub fn as_str(&self) -> &'static str {
        match self {
            AddressCount::Two => "two",
            AddressCount::Countable => "countable",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TwoAddressReport {
    pub t: AlgebraicNumber,
    pub beta: AlgebraicNumber,
    pub y: FieldElement,
    /// For two addresses: `y = f0(y_upper) = f1(y_lower)`. For countable: `y = y_lower = y_upper`.
    pub lower: BitSeq,
    pub upper: BitSeq,
    pub count: AddressCount,
    /// No-return check finished (every followed orbit closed).
    pub verified: bool,
    pub number_class: NumberClass,
}

impl TwoAddressReport {
    pub fn csv_header() -> &'static str {
        "t,minpoly,y,cardinality,verified,lower,upper"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{:.12},{},{:.12},{},{},{},{}",
            self.t.to_f64(),
            self.t.minpoly().to_string_var("t"),
            self.y.to_f64(),
            self.count.as_str(),
            self.verified,
            self.lower,
            self.upper
        )
    }

    pub fn json(&self) -> String {
        format!(
            "{{\"t\":{:.12},\"minpoly\":\"{}\",\"y\":{:.12},\"cardinality\":\"{}\",\"verified\":{},\"lower\":\"{}\",\"upper\":\"{}\",\"class\":\"{}\"}}",
            self.t.to_f64(),
            self.t.minpoly().to_string_var("t"),
            self.y.to_f64(),
            self.count.as_str(),
            self.verified,
            self.lower,
            self.upper,
            self.number_class.tag.as_str()
        )
    }
}

enum Walk {
    Closed,
    Reached,
    Entered,
    Horizon,
}

/// Follows the single-valued orbit of `x` until it cycles, hits `stop`, or enters the closed overlap `D`.
fn walk(sys: &Bernoulli, x: &FieldElement, stop: Option<&FieldElement>) -> Walk {
    let mut seen = HashSet::new();
    let mut z = x.clone();
    for _ in 0..NO_RETURN_HORIZON {
        if Some(&z) == stop {
            return Walk::Reached;
        }
        if sys.in_overlap(&z) {
            return Walk::Entered;
        }
        if !seen.insert(z.clone()) {
            return Walk::Closed;
        }
        let a = if sys.applicable(0, &z) { 0 } else { 1 };
        z = sys.g(a, &z);
    }
    Walk::Horizon
}

/// `Some(verified)` when neither orbit meets `D` (other than at `stop`), `None` when one does.
fn no_return(sys: &Bernoulli, xs: &[FieldElement], stop: Option<&FieldElement>) -> Option<bool> {
    let mut verified = true;
    for x in xs {
        match walk(sys, x, stop) {
            Walk::Entered => return None,
            Walk::Horizon => verified = false,
            Walk::Closed | Walk::Reached => {}
        }
    }
    Some(verified)
}

fn field_of(t: &AlgebraicNumber) -> Result<(AlgebraicNumber, Bernoulli, FieldElement)> {
    let beta = t.reciprocal()?;
    let field = Field::new(&beta);
    let tf = field.generator().inverse()?;
    Ok((beta, Bernoulli::from_field(field), tf))
}

fn roots_in(p: &IntPolynomial, range: &ParamRange) -> Result<Vec<AlgebraicNumber>> {
    if p.is_zero() {
        return Ok(vec![]);
    }
    Ok(algebraic_roots_between(p, &rat(1, 2), &BigRational::one())?.into_iter().filter(|s| range.contains(s)).collect())
}

/// Parameters where `y = f0(y_c) = f1(y_{c'})` has exactly the two addresses `0c` and `1c'`:
/// roots of `y_c - y_{c'} = β - 1` with both points in `A_t`.
pub fn two_address_pair(c_lower: &BitSeq, c_upper: &BitSeq, range: &ParamRange) -> Result<Vec<TwoAddressReport>> {
    let (cl, cu) = (rational_form(c_lower), rational_form(c_upper));
    let t = IntPolynomial::x();
    let one_minus_t = &IntPolynomial::one() - &t;
    // t (N_u D_l - N_l D_u) - (1 - t) D_u D_l
    let diff = &(&cu.numerator * &cl.denominator) - &(&cl.numerator * &cu.denominator);
    let p = &(&t * &diff) - &(&one_minus_t * &(&cu.denominator * &cl.denominator));
    let mut out = vec![];
    for s in roots_in(&p, range)? {
        if !membership_at(c_lower, &s)? || !membership_at(c_upper, &s)? {
            continue;
        }
        let (beta, sys, tf) = field_of(&s)?;
        let (xu, xl) = (cu.eval_field(&tf)?, cl.eval_field(&tf)?);
        let y = &tf * &xu;
        if y != sys.f(1, &xl) || !sys.in_overlap(&y) {
            return Err(Error::Internal(format!("two-address identity fails for {c_lower}, {c_upper}")));
        }
        let Some(verified) = no_return(&sys, &[xu, xl], None) else { continue };
        let number_class = beta.classify()?;
        out.push(TwoAddressReport {
            t: s,
            beta,
            y,
            lower: c_lower.clone(),
            upper: c_upper.clone(),
            count: AddressCount::Two,
            verified,
            number_class,
        });
    }
    Ok(out)
}

/// Smallest parameter in `range` where the curves of a nonperiodic kneading `b` and a periodic kneading `c`
/// with different first letters meet, if the orbit of the meeting point does not return to `D` elsewhere.
pub fn countable_pair(b: &BitSeq, c: &BitSeq, range: &ParamRange) -> Result<Option<TwoAddressReport>> {
    if b.preperiod().is_empty() || !c.preperiod().is_empty() || !b.is_kneading() || !c.is_kneading() || b.bit(1) == c.bit(1) {
        return Err(Error::InvalidInput(format!("({b}, {c}) is not a nonperiodic/periodic kneading pair")));
    }
    let (cb, cc) = (rational_form(b), rational_form(c));
    let p = &(&cb.numerator * &cc.denominator) - &(&cc.numerator * &cb.denominator);
    let Some(s) = roots_in(&p, range)?.into_iter().next() else { return Ok(None) };
    let (beta, sys, tf) = field_of(&s)?;
    let y = cb.eval_field(&tf)?;
    if y != cc.eval_field(&tf)? {
        return Err(Error::Internal(format!("curves {b}, {c} disagree at the root")));
    }
    let xs = [sys.g(0, &y), sys.g(1, &y)];
    let Some(verified) = no_return(&sys, &xs, Some(&y)) else { return Ok(None) };
    let (lower, upper) = if b < c { (b.clone(), c.clone()) } else { (c.clone(), b.clone()) };
    Ok(Some(TwoAddressReport {
        t: s,
        beta: beta.clone(),
        y,
        lower,
        upper,
        count: AddressCount::Countable,
        verified,
        number_class: beta.classify()?,
    }))
}

/// All catalog pairs: two-address roots for `c' < ½ < c`, and countable meetings of nonperiodic/periodic
/// kneading pairs. Sorted by `t`.
pub fn two_address_scan(range: &ParamRange, catalog: &[BitSeq]) -> Result<Vec<TwoAddressReport>> {
    let half = rat(1, 2);
    let mut pairs = vec![];
    for l in catalog.iter().filter(|c| c.value() < half) {
        for u in catalog.iter().filter(|c| c.value() > half) {
            pairs.push((l, u));
        }
    }
    let mut out: Vec<TwoAddressReport> = {
        use rayon::prelude::*;
        let found: Vec<Vec<TwoAddressReport>> = pairs.par_iter().map(|(l, u)| two_address_pair(l, u, range)).collect::<Result<_>>()?;
        found.into_iter().flatten().collect()
    };
    for b in catalog.iter().filter(|b| !b.preperiod().is_empty() && b.is_kneading()) {
        for c in catalog.iter().filter(|c| c.preperiod().is_empty() && c.is_kneading() && c.bit(1) != b.bit(1)) {
            out.extend(countable_pair(b, c, range)?);
        }
    }
    out.sort_by(|a, b| a.t.cmp(&b.t).then_with(|| a.lower.cmp(&b.lower)).then_with(|| a.upper.cmp(&b.upper)));
    Ok(out)
}

/// Parameters where `½` has exactly the two addresses `1c` and `0(1-c)`: roots of `y_c(t) = 1 - 1/(2t)`.
pub fn central_point_params(range: &ParamRange, catalog: &[BitSeq]) -> Result<Vec<TwoAddressReport>> {
    let half = rat(1, 2);
    let t = IntPolynomial::x();
    let two_t = &t + &t;
    let two_t_minus_one = &two_t - &IntPolynomial::one();
    let mut out = vec![];
    for c in catalog.iter().filter(|c| c.value() < half) {
        let f = rational_form(c);
        // 2t N - (2t - 1) D
        let p = &(&two_t * &f.numerator) - &(&two_t_minus_one * &f.denominator);
        for s in roots_in(&p, range)? {
            if !membership_at(c, &s)? {
                continue;
            }
            let (beta, sys, tf) = field_of(&s)?;
            let x = f.eval_field(&tf)?;
            let y = sys.f(1, &x);
            if y != sys.field().parse("1/2")? {
                return Err(Error::Internal(format!("central identity fails for {c}")));
            }
            let mirror = &sys.field().one() - &x;
            let Some(verified) = no_return(&sys, &[x, mirror], None) else { continue };
            out.push(TwoAddressReport {
                t: s,
                beta: beta.clone(),
                y,
                lower: c.clone(),
                upper: c.complement(),
                count: AddressCount::Two,
                verified,
                number_class: beta.classify()?,
            });
        }
    }
    out.sort_by(|a, b| a.t.cmp(&b.t).then_with(|| a.lower.cmp(&b.lower)));
    Ok(out)
}

/// `{2^-k/3, 1 - 2^-k/3 : k ≤ k_max}`
pub fn third_catalog(k_max: usize) -> Vec<BitSeq> {
    let mut out = vec![];
    for k in 0..=k_max {
        let q = BigRational::new(1.into(), BigInt::from(3) << k);
        out.push(BitSeq::from_rational(&q).expect("non-dyadic"));
        out.push(BitSeq::from_rational(&(BigRational::one() - q)).expect("non-dyadic"));
    }
    out
}

/// `.00overline{01}` and `.00(01)^n overline{0110}` for `n ≤ n_max`.
pub fn central_catalog(n_max: usize) -> Vec<BitSeq> {
    let mut out = vec![BitSeq::new(vec![0, 0], vec![0, 1]).expect("valid")];
    for n in 0..=n_max {
        let mut pre = vec![0, 0];
        for _ in 0..n {
            pre.extend([0, 1]);
        }
        out.push(BitSeq::new(pre, vec![0, 1, 1, 0]).expect("valid"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraics::NumberTag;

    fn seq(s: &str) -> BitSeq {
        BitSeq::parse(s).unwrap()
    }

    /// Maximal `J_w` by containment in the intervals of all proper prefixes, including `J` itself.
    /// Endpoints scaled by `q 2^m` for `b = p/q`.
    fn brute_counts(b: &BitSeq, depth: usize) -> Vec<usize> {
        let bv = b.value();
        let (p, q): (i128, i128) = (bv.numer().try_into().unwrap(), bv.denom().try_into().unwrap());
        (1..=depth)
            .map(|m| {
                (0i128..1 << m)
                    .filter(|&w| {
                        let (l, r) = (q * w + p, q * w + q - p);
                        (0..m).all(|k| {
                            let v = w >> (m - k);
                            let (pl, pr) = ((q * v + p) << (m - k), (q * v + q - p) << (m - k));
                            !(pl <= l && r <= pr)
                        })
                    })
                    .count()
            })
            .collect()
    }

    #[test]
    fn counts_match_brute_force() {
        for b in ["1/3", "3/7", "7/15", "2/5", "4/9"] {
            let b = seq(b);
            let dp: Vec<usize> = hole_counts(&b, 16).unwrap().iter().map(|c| c.to_string().parse().unwrap()).collect();
            assert_eq!(dp, brute_counts(&b, 16), "{b}");
        }
    }

    #[test]
    fn holes_disjoint_and_listed() {
        for b in ["1/3", "3/7", "7/15", "2/5"] {
            let h = holes(&seq(b), 10).unwrap();
            let total: BigInt = h.counts.iter().sum();
            assert_eq!(BigInt::from(h.holes.len()), total);
            let mut iv: Vec<_> = h.holes.iter().map(|w| h.interval(w)).collect();
            iv.push((h.b.value(), BigRational::one() - h.b.value()));
            iv.sort();
            for p in iv.windows(2) {
                assert!(p[0].1 <= p[1].0, "{b}: overlap");
            }
            // suffix test on cylinder midpoints
            let (lo, hi) = (h.b.value(), BigRational::one() - h.b.value());
            for w in &h.holes {
                for k in 0..w.len().saturating_sub(1) {
                    let mut s = w.bits()[k..].to_vec();
                    s.push(1);
                    let v = BitWord::new(s).dyadic_value();
                    assert!(v < lo || v > hi, "{b} {w}");
                }
            }
        }
        assert!(holes(&seq("3/7"), 0).unwrap().holes.is_empty());
        assert!(holes(&seq("3/7"), 41).is_err());
        assert!(holes(&seq("1/5"), 4).is_err());
    }

    #[test]
    fn three_sevenths() {
        let g = hole_growth(&seq("3/7")).unwrap();
        let tau = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((g.value() - tau).abs() < 1e-10);
        assert!(IntPolynomial::parse("x^2-x-1").unwrap() == *g.algebraic().unwrap().minpoly());
        // surviving cylinders avoid runs of three equal letters after the first letter
        let b = seq("3/7");
        for m in 4..12usize {
            for bits in 0u32..1 << m {
                let w: Vec<u8> = (0..m).rev().map(|i| ((bits >> i) & 1) as u8).collect();
                let runs = w[1..].windows(3).any(|x| x[0] == x[1] && x[1] == x[2]) && w[1..].windows(4).any(|x| x[0] != x[1] && x[1] == x[2] && x[2] == x[3]);
                let c = BitSeq::new(w.clone(), vec![0, 1, 1]).unwrap();
                if runs {
                    assert!(!in_s_b(&c, &b));
                }
            }
        }
        assert_eq!(hole_growth(&seq("1/3")).unwrap().algebraic().unwrap().as_rational(), Some(rat(1, 1)));
    }

    #[test]
    fn isolation() {
        assert!(is_isolated(&seq("2/5")));
        assert!(is_isolated(&seq("1/3")));
        assert!(!is_isolated(&seq("3/7")));
        assert!(!is_isolated(&seq("7/15")));
    }

    #[test]
    fn membership() {
        let third = seq("1/3");
        let t2 = crate::algebraics::named_parameter(crate::algebraics::NamedKind::Multinacci, 2).unwrap().reciprocal().unwrap();
        assert!(membership_at(&third, &AlgebraicNumber::from_rational(&rat(3, 5))).unwrap());
        assert!(!membership_at(&third, &t2).unwrap());
        assert!(!membership_at(&seq("1/5"), &AlgebraicNumber::from_rational(&rat(29, 50))).unwrap());
    }

    #[test]
    fn dimensions() {
        let b = seq("3/7");
        let t3 = t_star(&b).unwrap();
        let d = dimension(&b, &t3).unwrap();
        let tau = (1.0 + 5f64.sqrt()) / 2.0;
        let expect = tau.ln() / (1.0 / t3.to_f64()).ln();
        assert!(d.contains(expect) && d.width() < 1e-9);
        // increases with t on the plateau [t*(b'), t*(b)]
        let lo = t_star(&b.period_double().unwrap()).unwrap().to_f64();
        let mut last = 0.0;
        for i in 1..=5 {
            let t = lo + (t3.to_f64() - lo) * i as f64 / 6.0;
            let q = BigRational::from_float(t).unwrap();
            let d = dimension(&b, &AlgebraicNumber::from_rational(&q)).unwrap().mid();
            assert!(d > last);
            last = d;
        }
        let third = seq("1/3");
        let d = dimension(&third, &AlgebraicNumber::from_rational(&rat(3, 5))).unwrap();
        assert!(d.contains(0.0));
        assert!(dimension(&third, &AlgebraicNumber::from_rational(&rat(1, 2))).is_err());
    }

    #[test]
    fn complement_identity() {
        for b in ["1/3", "3/7", "7/15", "2/5"] {
            let b = seq(b);
            let h = holes(&b, 14).unwrap();
            for p in 1..60i64 {
                for q in [61i64, 63, 67, 127] {
                    let Ok(c) = BitSeq::from_fraction(p, q) else { continue };
                    if c.preperiod().len() + c.period().len() > 12 {
                        continue;
                    }
                    let v = c.value();
                    let in_j = v > b.value() && v < BigRational::one() - b.value();
                    assert_eq!(in_s_b(&c, &b), !in_j && h.containing(&c).is_none(), "{b} {c}");
                }
            }
        }
    }

    #[test]
    fn countable_example() {
        let r = countable_pair(&seq("5/12"), &seq("8/15"), &ParamRange::default()).unwrap().unwrap();
        assert!((r.t.to_f64() - 0.5951).abs() < 1e-4);
        assert!((r.y.to_f64() - 0.463).abs() < 1e-3);
        assert!(r.verified);
        assert!(r.number_class.flags.algebraic_integer);
    }

    #[test]
    fn central_garsia() {
        let r = central_point_params(&ParamRange::rational(&rat(1, 2), &rat(29, 50)), &[seq(".00overline{01}")]).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].t.minpoly(), &IntPolynomial::parse("2*x^3+2*x^2-1").unwrap());
        assert_eq!(r[0].number_class.tag, NumberTag::Garsia);
        assert!((r[0].t.to_f64() - 0.5652).abs() < 1e-4);
    }
}
