//! Address curves `y_b(t) = (1-t)/t · Σ b_k t^k`, entry parameters `t*`, curve intersections
//! and the network-parameter solver.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebraics::roots::{isolate_real_roots, rat};
use crate::algebraics::{
    factor, named_parameter, AlgebraicNumber, Field, FieldElement, IntPolynomial, NamedKind, NumberClass,
};
use crate::error::{Error, Result};
use crate::orbits::Bernoulli;
use crate::words::{morse_thue_prefix, BitSeq, BitWord};

/// `num / den` with integer coefficients, in lowest terms, `den` primitive with positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: IntPolynomial,
    pub den: IntPolynomial,
}

impl RationalFunction {
    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() > 0 {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        } else {
            (num, den)
        };
        let c = den.content() * den.leading().signum();
        let nc = num.content();
        let common = num_integer::Integer::gcd(&c, &nc);
        if !common.is_zero() && !common.is_one() {
            let common = if c.is_negative() { -common } else { common };
            num = div_coeffs(&num, &common);
            den = div_coeffs(&den, &common);
        } else if c.is_negative() {
            num = -num;
            den = -den;
        }
        Ok(RationalFunction { num, den })
    }

    pub fn eval(&self, t: &BigRational) -> Result<BigRational> {
        let d = self.den.eval_rational(t);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval_rational(t) / d)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.num.eval_f64(t) / self.den.eval_f64(t)
    }

    pub fn eval_field(&self, t: &FieldElement) -> Result<FieldElement> {
        eval_poly(&self.num, t).checked_div(&eval_poly(&self.den, t))
    }

    pub fn to_string_var(&self, var: &str) -> String {
        format!("({}) / ({})", self.num.to_string_var(var), self.den.to_string_var(var))
    }
}

fn div_coeffs(p: &IntPolynomial, k: &BigInt) -> IntPolynomial {
    IntPolynomial::new(p.coeffs().iter().map(|c| c / k).collect())
}

/// Horner evaluation of an integer polynomial at a field element.
pub(crate) fn eval_poly(p: &IntPolynomial, x: &FieldElement) -> FieldElement {
    let field = x.field();
    let mut acc = field.zero();
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * x) + &field.from_rational(&BigRational::from_integer(c.clone()));
    }
    acc
}

/// `Σ_{k=1}^{n} w_k t^k`
fn weighted(w: &[u8]) -> IntPolynomial {
    let mut c = vec![BigInt::zero(); w.len() + 1];
    for (k, &a) in w.iter().enumerate() {
        c[k + 1] = BigInt::from(a);
    }
    IntPolynomial::new(c)
}

fn monomial(k: usize) -> IntPolynomial {
    IntPolynomial::monomial(BigInt::one(), k)
}

/// `1 + t + ... + t^{p-1}`
fn geometric(p: usize) -> IntPolynomial {
    IntPolynomial::new(vec![BigInt::one(); p])
}

/// Drops the factor `t` from a polynomial with zero constant term.
fn div_t(p: &IntPolynomial) -> IntPolynomial {
    debug_assert!(p.coeff(0).is_zero());
    IntPolynomial::new(p.coeffs().iter().skip(1).cloned().collect())
}

/// `U(1 - t^p) + t^a W` for `b = .u overline{w}`; equals `(1 - t^p) Σ b_k t^k`.
fn series_numerator(b: &BitSeq) -> IntPolynomial {
    let (u, w) = (b.preperiod(), b.period());
    let one_minus = &IntPolynomial::one() - &monomial(w.len());
    &(&weighted(u) * &one_minus) + &(&monomial(u.len()) * &weighted(w))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddressCurve {
    pub address: BitSeq,
    pub numerator: IntPolynomial,
    pub denominator: IntPolynomial,
}

impl AddressCurve {
    pub fn form(&self) -> RationalFunction {
        RationalFunction { num: self.numerator.clone(), den: self.denominator.clone() }
    }

    pub fn eval(&self, t: &BigRational) -> Result<BigRational> {
        self.form().eval(t)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.form().eval_f64(t)
    }

    pub fn eval_field(&self, t: &FieldElement) -> Result<FieldElement> {
        self.form().eval_field(t)
    }
}

/// Closed rational form of the address curve of an eventually periodic `b`.
pub fn rational_form(b: &BitSeq) -> AddressCurve {
    let num = div_t(&series_numerator(b));
    let f = RationalFunction::new(num, geometric(b.period().len())).expect("nonzero denominator");
    AddressCurve { address: b.clone(), numerator: f.num, denominator: f.den }
}

/// Exact value `y_b(t)` for `t ∈ (0, 1)`.
pub fn curve_eval(b: &BitSeq, t: &BigRational) -> Result<BigRational> {
    if !t.is_positive() || *t >= BigRational::one() {
        return Err(Error::Domain(format!("t = {t} is not in (0,1)")));
    }
    rational_form(b).eval(t)
}

pub fn curve_eval_f64(b: &BitSeq, t: f64) -> f64 {
    rational_form(b).eval_f64(t)
}

/// Fixed point of `g_w` as a function of `t`: `Σ w_i t^{i-1} / (1 + ... + t^{n-1})`.
pub fn cycle_fixed_point_symbolic(w: &BitWord) -> Result<RationalFunction> {
    if w.is_empty() {
        return Err(Error::InvalidInput("empty cycle word".into()));
    }
    RationalFunction::new(div_t(&weighted(w.bits())), geometric(w.len()))
}

fn kneading_lower(b: &BitSeq) -> Result<BitSeq> {
    let k = b.kneading_of()?;
    Ok(if k.bit(1) == 1 { k.complement() } else { k })
}

/// Polynomial (in `t`) whose unique root in `(1/2, 1)` is `t*` of the kneading sequence `k < 1/2`.
fn t_star_polynomial(k: &BitSeq) -> IntPolynomial {
    let p = k.period().len();
    let one_minus = &IntPolynomial::one() - &monomial(p);
    let full = &series_numerator(k) - &(&IntPolynomial::x() * &one_minus);
    div_t(&full)
}

/// The parameter where the address curve of `b`'s kneading sequence meets the lower edge of D.
pub fn t_star(b: &BitSeq) -> Result<AlgebraicNumber> {
    if !b.is_itinerary() {
        return Err(Error::NotItinerary(b.to_string()));
    }
    let k = kneading_lower(b)?;
    AlgebraicNumber::root_of(&t_star_polynomial(&k), &rat(1, 2), &rat(1, 1))
}

/// Certified bracket `[lo, hi]` for `t*` of a sequence known only through a prefix.
#[derive(Clone, Debug, PartialEq)]
pub struct TStarBracket {
    pub lo: BigRational,
    pub hi: BigRational,
    pub prefix_len: usize,
}

impl TStarBracket {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (crate::algebraics::roots::rat_down(&self.lo), crate::algebraics::roots::rat_up(&self.hi))
    }

    /// Bracket for `β = 1/t`.
    pub fn beta(&self) -> (BigRational, BigRational) {
        (self.hi.recip(), self.lo.recip())
    }
}

/// Largest dyadic `x` in `[0,1]` (to `bits` bits) with `sign(p(x)) < 0`, for `p` increasing-in-sign.
fn bisect_sign_change(p: &IntPolynomial, bits: u32) -> (BigRational, BigRational) {
    let (mut lo, mut hi) = (BigRational::zero(), BigRational::one());
    let half = rat(1, 2);
    for _ in 0..bits {
        let mid = (&lo + &hi) * &half;
        match p.sign_at(&mid) {
            Ordering::Less => lo = mid,
            Ordering::Greater => hi = mid,
            Ordering::Equal => return (mid.clone(), mid),
        }
    }
    (lo, hi)
}

/// `t*` bracket from the first `prefix.len()` letters, using `f_N(t) ≤ Σ b_{k+1} t^k ≤ f_N(t) + t^N/(1-t)`.
pub fn t_star_prefix(prefix: &BitWord, bits: u32) -> Result<TStarBracket> {
    let n = prefix.len();
    if n < 2 {
        return Err(Error::PrefixTooShort(prefix.to_string()));
    }
    let b: Vec<u8> = if prefix.bits()[0] == 1 { prefix.complement().0 } else { prefix.0.clone() };
    // f_N(t) = Σ_{k=1}^{N-1} b_{k+1} t^k
    let mut c = vec![BigInt::zero(); n];
    for k in 1..n {
        c[k] = BigInt::from(b[k]);
    }
    let f = IntPolynomial::new(c);
    let one = IntPolynomial::one();
    let one_minus_t = &one - &IntPolynomial::x();
    let lower_eq = &(&(&f * &one_minus_t) + &monomial(n)) - &one_minus_t;
    let upper_eq = &f - &one;
    let lo = bisect_sign_change(&lower_eq, bits + 2).0;
    let hi = if upper_eq.sign_at(&BigRational::one()) == Ordering::Greater {
        bisect_sign_change(&upper_eq, bits + 2).1
    } else {
        BigRational::one()
    };
    Ok(TStarBracket { lo, hi, prefix_len: n })
}

/// Largest supported precision for [`komornik_loreti`].
pub const KL_MAX_BITS: u32 = 256;

/// Bracket of width `≤ 2^-bits` for `t_KL`, from Thue–Morse prefixes.
pub fn komornik_loreti(bits: u32) -> Result<TStarBracket> {
    if bits > KL_MAX_BITS {
        return Err(Error::InvalidInput(format!("precision {bits} exceeds {KL_MAX_BITS} bits")));
    }
    let target = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let mut n = 2 * bits as usize + 16;
    loop {
        let br = t_star_prefix(&morse_thue_prefix(n), bits + 8)?;
        if br.width() <= target {
            return Ok(br);
        }
        if n > 16 * KL_MAX_BITS as usize {
            return Err(Error::Internal(format!("bracket did not shrink below 2^-{bits}")));
        }
        n *= 2;
    }
}

/// Parameter window, exclusive at `lo` and inclusive at `hi`.
#[derive(Clone, Debug)]
pub struct ParamRange {
    pub lo: AlgebraicNumber,
    pub hi: AlgebraicNumber,
}

impl ParamRange {
    pub fn new(lo: AlgebraicNumber, hi: AlgebraicNumber) -> ParamRange {
        ParamRange { lo, hi }
    }

    pub fn rational(lo: &BigRational, hi: &BigRational) -> ParamRange {
        ParamRange { lo: AlgebraicNumber::from_rational(lo), hi: AlgebraicNumber::from_rational(hi) }
    }

    pub fn contains(&self, s: &AlgebraicNumber) -> bool {
        *s > self.lo && *s <= self.hi
    }
}

impl Default for ParamRange {
    /// `(1/2, t_2]`
    fn default() -> ParamRange {
        let t2 = named_parameter(NamedKind::Multinacci, 2)
            .and_then(|a| a.reciprocal())
            .expect("golden mean");
        ParamRange { lo: AlgebraicNumber::from_rational(&rat(1, 2)), hi: t2 }
    }
}

#[derive(Clone, Debug)]
pub struct IntersectionReport {
    /// Intersection parameter `t`.
    pub s: AlgebraicNumber,
    pub beta: AlgebraicNumber,
    /// Ordinate, in `Q(β)`.
    pub z: FieldElement,
    pub number_class: NumberClass,
    /// `1 - s ≤ z ≤ s`
    pub inside_overlap: bool,
    /// `z = s` or `z = 1 - s`
    pub boundary: bool,
}

impl IntersectionReport {
    /// Minimal polynomial of `s` (the `t`-side polynomial).
    pub fn t_minpoly(&self) -> &IntPolynomial {
        self.s.minpoly()
    }

    pub fn beta_minpoly(&self) -> &IntPolynomial {
        self.beta.minpoly()
    }

    fn build(s: AlgebraicNumber, mut z_of: impl FnMut(&FieldElement) -> Result<FieldElement>) -> Result<IntersectionReport> {
        let beta = s.reciprocal()?;
        let field = Field::new(&beta);
        let t = field.generator().inverse()?;
        let z = z_of(&t)?;
        let one_minus_t = &field.one() - &t;
        let inside_overlap = z >= one_minus_t && z <= t;
        let boundary = z == t || z == one_minus_t;
        let number_class = beta.classify()?;
        Ok(IntersectionReport { s, beta, z, number_class, inside_overlap, boundary })
    }
}

/// Irreducible factors of `p` other than `t` and `t - 1`, primitive with positive leading coefficient.
fn relevant_factors(p: &IntPolynomial) -> Result<Vec<IntPolynomial>> {
    let x = IntPolynomial::x();
    let x_minus_one = &x - &IntPolynomial::one();
    let mut out = vec![];
    for (g, _) in factor(p)?.factors {
        let mut g = g.primitive_part();
        if g.leading().is_negative() {
            g = -g;
        }
        if g.degree() == 0 || g == x || g == x_minus_one {
            continue;
        }
        out.push(g);
    }
    Ok(out)
}

/// Roots of `p` (through its irreducible factors) inside the open interval `(lo, hi)`, ascending.
pub(crate) fn algebraic_roots_between(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> Result<Vec<AlgebraicNumber>> {
    let mut out = vec![];
    for g in relevant_factors(p)? {
        for r in isolate_real_roots(&g, lo, hi) {
            out.push(AlgebraicNumber::from_irreducible_root(r));
        }
    }
    out.sort();
    Ok(out)
}

/// Intersections of the address curves of `b` and `c` for parameters in `range`.
pub fn curve_intersection(b: &BitSeq, c: &BitSeq, range: &ParamRange) -> Result<Vec<IntersectionReport>> {
    if b == c {
        return Err(Error::InvalidInput(format!("identical curves {b}")));
    }
    let (cb, cc) = (rational_form(b), rational_form(c));
    let p = &(&cb.numerator * &cc.denominator) - &(&cc.numerator * &cb.denominator);
    if p.is_zero() {
        return Err(Error::InvalidInput(format!("curves of {b} and {c} coincide")));
    }
    let mut out = vec![];
    for s in algebraic_roots_between(&p, &BigRational::zero(), &BigRational::one())? {
        if !range.contains(&s) {
            continue;
        }
        let rep = IntersectionReport::build(s, |t| {
            let z = cb.eval_field(t)?;
            if z != cc.eval_field(t)? {
                return Err(Error::Internal(format!("curves {b}, {c} disagree at the root")));
            }
            Ok(z)
        })?;
        out.push(rep);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// `g_cycle(g_path(y)) = g_path(y)`
    SelfLoop,
    /// `g_cycle(g_path(y)) = 1 - g_path(y)`
    Reflection,
}

impl std::str::FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Target> {
        match s {
            "self" => Ok(Target::SelfLoop),
            "reflection" => Ok(Target::Reflection),
            _ => Err(Error::Parse(format!("unknown target '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub path: BitWord,
    pub cycle: BitWord,
    pub target: Target,
}

impl Constraint {
    pub fn new(path: BitWord, cycle: BitWord, target: Target) -> Constraint {
        Constraint { path, cycle, target }
    }

    /// Parses `path,cycle,target` with `e` or empty for the empty path.
    pub fn parse(s: &str) -> Result<Constraint> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("constraint '{s}' needs path,cycle,target")));
        }
        let word = |w: &str| -> Result<BitWord> {
            if w.is_empty() || w == "e" || w == "ε" {
                Ok(BitWord::empty())
            } else {
                w.parse()
            }
        };
        let cycle = word(parts[1])?;
        if cycle.is_empty() {
            return Err(Error::Parse("empty cycle".into()));
        }
        Ok(Constraint { path: word(parts[0])?, cycle, target: parts[2].parse()? })
    }

    fn first_letter(&self) -> u8 {
        self.path.bits().first().copied().unwrap_or(self.cycle.bits()[0])
    }

    /// `y = A(β)/B(β)` forced by this constraint.
    fn ratio(&self) -> (IntPolynomial, IntPolynomial) {
        let one = IntPolynomial::one();
        let beta_minus_one = &IntPolynomial::x() - &one;
        let horner = |w: &[u8]| {
            // Σ w_i β^{len-i}
            let mut c: Vec<BigInt> = w.iter().rev().map(|&a| BigInt::from(a)).collect();
            if c.is_empty() {
                c.push(BigInt::zero());
            }
            IntPolynomial::new(c)
        };
        let (m, n) = (self.path.len(), self.cycle.len());
        let v = horner(self.path.bits());
        let w = horner(self.cycle.bits());
        let bn = monomial(n);
        let cyc = match self.target {
            Target::SelfLoop => &bn - &one,
            Target::Reflection => &bn + &one,
        };
        let mut a = &(&beta_minus_one * &w) + &(&(&beta_minus_one * &v) * &cyc);
        if self.target == Target::Reflection {
            a = &a + &one;
        }
        (a, &monomial(m) * &cyc)
    }

    /// Checks the constraint at `y`, simulating every step with domain checks.
    pub fn realized(&self, sys: &Bernoulli, y: &FieldElement) -> bool {
        let Some(x) = sys.apply_word(self.path.bits(), y) else { return false };
        let Some(e) = sys.apply_word(self.cycle.bits(), &x) else { return false };
        match self.target {
            Target::SelfLoop => e == x,
            Target::Reflection => e == &sys.field().one() - &x,
        }
    }
}

impl std::fmt::Display for Constraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let t = match self.target {
            Target::SelfLoop => "self",
            Target::Reflection => "reflection",
        };
        write!(f, "({},{},{})", self.path, self.cycle, t)
    }
}

#[derive(Clone, Debug)]
pub struct NetworkSolution {
    pub report: IntersectionReport,
    /// All constraints hold with every map applied inside its domain.
    pub realizable: bool,
}

/// Polynomial in `β` whose roots are the parameters compatible with all constraints.
pub fn network_polynomial(constraints: &[Constraint]) -> Result<IntPolynomial> {
    if constraints.len() < 2 {
        return Err(Error::Underdetermined("a single constraint fixes y given β, not β".into()));
    }
    let first: Vec<u8> = constraints.iter().map(Constraint::first_letter).collect();
    if !first.contains(&0) || !first.contains(&1) {
        return Err(Error::InvalidInput("the branches must start with different letters".into()));
    }
    let (a0, b0) = constraints[0].ratio();
    let mut g: Option<IntPolynomial> = None;
    for c in &constraints[1..] {
        let (a, b) = c.ratio();
        let p = &(&a0 * &b) - &(&a * &b0);
        if p.is_zero() {
            return Err(Error::Underdetermined(format!("{} and {} agree identically", constraints[0], c)));
        }
        g = Some(match g {
            None => p,
            Some(q) => q.gcd(&p),
        });
    }
    let g = g.expect("at least one pair");
    // β > 1, so powers of β carry no information
    let lead_zeros = g.coeffs().iter().take_while(|c| c.is_zero()).count();
    let g = IntPolynomial::new(g.coeffs()[lead_zeros..].to_vec());
    if g.degree() == 0 {
        return Err(Error::Inconsistent("no common parameter".into()));
    }
    Ok(g)
}

/// Parameters `β ∈ (1, 2)` for which all constraints hold at a common point `y`.
pub fn network_parameter(constraints: &[Constraint]) -> Result<Vec<NetworkSolution>> {
    let g = network_polynomial(constraints)?;
    let (a0, b0) = constraints[0].ratio();
    let mut out = vec![];
    for beta in algebraic_roots_between(&g, &rat(1, 1), &rat(2, 1))? {
        let s = beta.reciprocal()?;
        let mut realizable = false;
        let report = IntersectionReport::build(s, |t| {
            let field = t.field();
            let b = field.generator();
            let den = eval_poly(&b0, &b);
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let y = eval_poly(&a0, &b).checked_div(&den)?;
            let sys = Bernoulli::from_field(field.clone());
            realizable = sys.in_overlap(&y) && constraints.iter().all(|c| c.realized(&sys, &y));
            Ok(y)
        })?;
        out.push(NetworkSolution { report, realizable });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Univoque {
    pub univoque: bool,
    /// `1/t*(b)` when `univoque`.
    pub beta: Option<AlgebraicNumber>,
}

/// `b < 1/2` gives a univoque `β` iff `b` is a kneading sequence that is not purely periodic.
pub fn is_univoque(b: &BitSeq) -> Result<Univoque> {
    if b.value() >= rat(1, 2) {
        return Err(Error::InvalidInput(format!("{b} is not below 1/2")));
    }
    if !b.is_kneading() || b.is_purely_periodic() {
        return Ok(Univoque { univoque: false, beta: None });
    }
    let beta = t_star(b)?.reciprocal()?;
    Ok(Univoque { univoque: true, beta: Some(beta) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraics::number::{s_n, t_n};
    use crate::algebraics::NumberTag;
    use proptest::prelude::*;

    fn seq(s: &str) -> BitSeq {
        BitSeq::parse(s).unwrap()
    }

    fn poly(s: &str) -> IntPolynomial {
        IntPolynomial::parse(s).unwrap()
    }

    /// Truncated series bracket for `y_b(t)`: partial sum and partial sum plus tail.
    fn series_bracket(b: &BitSeq, t: &BigRational, n: usize) -> (BigRational, BigRational) {
        let mut s = BigRational::zero();
        let mut tk = BigRational::one();
        for k in 1..=n {
            tk = &tk * t;
            if b.bit(k) == 1 {
                s += &tk;
            }
        }
        let one = BigRational::one();
        let f = (&one - t) / t;
        let tail = &tk * t / (&one - t);
        (&s * &f, (&s + &tail) * &f)
    }

    #[test]
    fn closed_forms() {
        let c = rational_form(&seq("1/3"));
        assert_eq!(c.numerator, poly("t"));
        assert_eq!(c.denominator, poly("1+t"));
        assert_eq!(curve_eval(&seq("1/3"), &rat(3, 5)).unwrap(), rat(3, 8));
        let c = rational_form(&seq("2/5"));
        assert_eq!((c.numerator, c.denominator), (poly("t"), poly("1+t^2")));
        let c = rational_form(&seq("1/5"));
        assert_eq!((c.numerator, c.denominator), (poly("t^2"), poly("1+t^2")));
        let c = rational_form(&seq("1/12"));
        assert_eq!((c.numerator, c.denominator), (poly("t^3"), poly("1+t")));
        assert!(curve_eval(&seq("1/3"), &rat(1, 1)).is_err());
    }

    #[test]
    fn symbolic_fixed_points() {
        let f = cycle_fixed_point_symbolic(&"01".parse().unwrap()).unwrap();
        assert_eq!((f.num, f.den), (poly("t"), poly("1+t")));
        let f = cycle_fixed_point_symbolic(&"000".parse().unwrap()).unwrap();
        assert!(f.num.is_zero());
    }

    #[test]
    fn entry_parameters() {
        let t2 = t_n(2).unwrap();
        assert_eq!(t_star(&seq("1/3")).unwrap(), t2);
        assert_eq!(t_star(&seq("2/3")).unwrap(), t2);
        assert_eq!(t_star(&seq("2/5")).unwrap(), s_n(2).unwrap());
        assert_eq!(t_star(&seq("3/7")).unwrap(), t_n(3).unwrap());
        // 1/5 = .overline{0011} has kneading sequence 2/5
        assert_eq!(t_star(&seq("1/5")).unwrap(), s_n(2).unwrap());
        assert!(BitSeq::parse("1/4").is_err());
    }

    #[test]
    fn kl_bracket() {
        let b = komornik_loreti(20).unwrap();
        let (lo, hi) = b.to_f64();
        assert!(hi - lo <= 2f64.powi(-20));
        assert!(lo < 0.55955 && hi > 0.55945, "{lo} {hi}");
        let (blo, bhi) = b.beta();
        assert!(blo <= rat(17872, 10000) + rat(1, 20000) && bhi >= rat(17872, 10000) - rat(1, 20000));
        let b4 = komornik_loreti(4).unwrap();
        assert!(b4.width() <= rat(1, 16));
        assert!(b4.lo <= b.lo && b4.hi >= b.hi);
        assert!(komornik_loreti(257).is_err());
    }

    #[test]
    fn prefix_bracket_contains_exact() {
        let b = seq("3/7");
        let exact = t_star(&b).unwrap();
        for n in [8, 20, 40] {
            let br = t_star_prefix(&b.prefix(n), 40).unwrap();
            assert_ne!(exact.cmp_rational(&br.lo), Ordering::Less);
            assert_ne!(exact.cmp_rational(&br.hi), Ordering::Greater);
        }
    }

    #[test]
    fn intersections() {
        let r = ParamRange::default();
        let rep = curve_intersection(&seq("4/9"), &seq("8/15"), &r).unwrap();
        assert_eq!(rep.len(), 1);
        assert_eq!(rep[0].s, s_n(2).unwrap());
        assert_eq!(rep[0].beta_minpoly(), &poly("x^3-2x^2+x-1"));
        assert!((rep[0].z.to_f64() - 0.4809).abs() < 1e-4);
        assert_eq!(rep[0].number_class.tag, NumberTag::Pisot);

        let rep = curve_intersection(&seq("3/7"), &seq("8/15"), &r).unwrap();
        assert_eq!(rep.len(), 1);
        assert!((rep[0].s.to_f64() - 0.5765).abs() < 1e-4);
        assert_eq!(rep[0].number_class.tag, NumberTag::Pisot);

        let rep = curve_intersection(&seq("56/129"), &seq("16/31"), &r).unwrap();
        assert!(rep.iter().any(|x| x.t_minpoly() == &poly("t^8-t^7+t^5+t^4+t^2+t-1")));
        assert!(curve_intersection(&seq("1/3"), &seq("1/3"), &r).is_err());

        let rep = curve_intersection(&seq("55/127"), &seq("16/31"), &r).unwrap();
        let hit: Vec<_> = rep.iter().filter(|x| (x.s.to_f64() - 0.5546).abs() < 1e-4).collect();
        assert_eq!(hit.len(), 1);
        assert_eq!(hit[0].beta.degree(), 9);
        assert_eq!(hit[0].number_class.tag, NumberTag::PerronStrict);
        assert!((hit[0].z.to_f64() - 0.4701).abs() < 1e-4);

        let rep = curve_intersection(&seq("5/12"), &seq("8/15"), &r).unwrap();
        let hit: Vec<_> = rep.iter().filter(|x| (x.s.to_f64() - 0.5951).abs() < 1e-4).collect();
        assert_eq!(hit.len(), 1);
        assert!((hit[0].z.to_f64() - 0.463).abs() < 1e-3);
    }

    #[test]
    fn network_examples() {
        let c = |p: &str, w: &str, t: &str| Constraint::parse(&format!("{p},{w},{t}")).unwrap();
        let sol = network_parameter(&[c("e", "100", "self"), c("e", "011", "self")]).unwrap();
        assert_eq!(sol.len(), 1);
        assert_eq!(sol[0].report.beta, named_parameter(NamedKind::Multinacci, 2).unwrap());
        assert_eq!(sol[0].report.z.as_rational(), Some(&rat(1, 2)));
        assert!(sol[0].realizable);

        let cs = [c("e", "10000", "self"), c("e", "01", "reflection")];
        assert_eq!(network_polynomial(&cs).unwrap(), poly("x^6-2x^5+x^4-x^3+1"));
        let sol = network_parameter(&cs).unwrap();
        assert_eq!(sol.len(), 1);
        assert_eq!(sol[0].report.beta_minpoly(), &poly("x^5-x^4-x^2-x-1"));
        assert!((sol[0].report.z.to_f64() - 0.4389).abs() < 1e-4);
        assert!(sol[0].realizable);

        assert!(matches!(network_parameter(&[c("e", "100010", "self")]), Err(Error::Underdetermined(_))));
        assert!(network_parameter(&[c("e", "100", "self"), c("e", "100", "self")]).is_err());
    }

    #[test]
    fn univoque() {
        let u = is_univoque(&seq(".011overline{10}")).unwrap();
        assert!(u.univoque);
        let beta = u.beta.unwrap();
        assert_eq!(beta.minpoly(), &poly("x^4-x^3-2x^2+1"));
        assert!((beta.to_f64() - 1.9052).abs() < 1e-4);
        assert!(!is_univoque(&seq("1/3")).unwrap().univoque);
        assert!(!is_univoque(&seq("22/60")).unwrap().univoque);
    }

    #[test]
    fn t_star_monotone_on_kneading_sequences() {
        let mut kn: Vec<BitSeq> = vec![];
        for p in 2..=10usize {
            for m in 0u32..(1 << p) {
                let w: Vec<u8> = (0..p).map(|i| ((m >> (p - 1 - i)) & 1) as u8).collect();
                if let Ok(b) = BitSeq::periodic(w) {
                    if b.period().len() == p && b.bit(1) == 0 && b.is_kneading() {
                        kn.push(b);
                    }
                }
            }
        }
        kn.sort();
        kn.dedup();
        let ts: Vec<AlgebraicNumber> = kn.iter().map(|b| t_star(b).unwrap()).collect();
        for i in 1..ts.len() {
            assert!(ts[i - 1] >= ts[i], "{} {}", kn[i - 1], kn[i]);
        }
    }

    #[test]
    fn no_crossing_below_entry() {
        let mut words: Vec<BitSeq> = vec![];
        for p in 2..=6usize {
            for m in 0u32..(1 << p) {
                let w: Vec<u8> = (0..p).map(|i| ((m >> (p - 1 - i)) & 1) as u8).collect();
                if let Ok(b) = BitSeq::periodic(w) {
                    if b.is_itinerary() {
                        words.push(b);
                    }
                }
            }
        }
        words.sort();
        words.dedup();
        let ts: Vec<AlgebraicNumber> = words.iter().map(|b| t_star(b).unwrap()).collect();
        for (b, tb) in words.iter().zip(&ts).filter(|(b, _)| b.bit(1) == 0) {
            for (c, tc) in words.iter().zip(&ts).filter(|(c, _)| c.bit(1) == 1) {
                let hi = std::cmp::min(tb, tc).clone();
                let range = ParamRange::new(AlgebraicNumber::from_rational(&rat(1, 2)), hi);
                let cb = rational_form(b);
                let cc = rational_form(c);
                let p = &(&cb.numerator * &cc.denominator) - &(&cc.numerator * &cb.denominator);
                // a root at t* itself is on the boundary and allowed
                for r in isolate_real_roots(&p.square_free_part(), &rat(1, 2), &rat(1, 1)) {
                    assert_ne!(r.cmp_root(range.hi.root()), Ordering::Less, "{b} {c}");
                }
            }
        }
    }

    #[test]
    fn overlap_intersections_are_weak_perron() {
        let r = ParamRange::default();
        let cat = ["4/9", "8/15", "3/7", "2/5", "7/15", "9/17", "5/11", "6/11"];
        for (i, b) in cat.iter().enumerate() {
            for c in &cat[i + 1..] {
                for rep in curve_intersection(&seq(b), &seq(c), &r).unwrap() {
                    if rep.inside_overlap {
                        assert!(rep.beta_minpoly().leading().is_one());
                        assert!(matches!(
                            rep.number_class.tag,
                            NumberTag::Pisot | NumberTag::Salem | NumberTag::PerronStrict | NumberTag::WeakPerronOnly
                        ), "{b} {c}: {}", rep.number_class.tag);
                    }
                }
            }
        }
    }

    #[test]
    fn network_matches_curves() {
        let sol = network_parameter(&[
            Constraint::parse("e,011100,self").unwrap(),
            Constraint::parse("e,1000,self").unwrap(),
        ])
        .unwrap();
        let rep = curve_intersection(&seq("4/9"), &seq("8/15"), &ParamRange::default()).unwrap();
        assert!(sol.iter().any(|n| n.report.s == rep[0].s && n.report.z == rep[0].z));
    }

    fn arb_seq() -> impl Strategy<Value = BitSeq> {
        (prop::collection::vec(0u8..2, 0..5), prop::collection::vec(0u8..2, 2..7))
            .prop_filter_map("itinerary", |(u, w)| BitSeq::new(u, w).ok().filter(|b| b.is_itinerary()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn series_brackets_closed_form(b in arb_seq(), num in 51u32..99) {
            let t = rat(num as i64, 100);
            let y = curve_eval(&b, &t).unwrap();
            let (lo, hi) = series_bracket(&b, &t, 60);
            prop_assert!(lo <= y && y <= hi);
        }

        #[test]
        fn denominator_has_no_roots_in_window(b in arb_seq()) {
            let c = rational_form(&b);
            prop_assert!(isolate_real_roots(&c.denominator, &rat(1, 2), &rat(1, 1)).is_empty());
            prop_assert!(c.denominator.sign_at(&rat(1, 1)) != Ordering::Equal);
        }
    }
}
