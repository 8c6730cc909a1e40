//! Finite 0/1 words and eventually periodic binary sequences.
//!
//! A [`BitSeq`] `.u overline{w}` is identified with the rational number whose
//! binary expansion it is. The doubling map `x -> 2x mod 1` acts as the shift.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Finite word over {0,1}.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord(pub Vec<u8>);

impl BitWord {
    pub fn new(bits: Vec<u8>) -> BitWord {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        BitWord(bits)
    }

    pub fn empty() -> BitWord {
        BitWord(vec![])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn complement(&self) -> BitWord {
        BitWord(self.0.iter().map(|b| 1 - b).collect())
    }

    pub fn concat(&self, other: &BitWord) -> BitWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BitWord(v)
    }

    /// `.w` as a dyadic rational.
    pub fn dyadic_value(&self) -> BigRational {
        BigRational::new(word_int(&self.0), BigInt::one() << self.0.len())
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for BitWord {
    type Err = Error;

    /// Accepts plain words (`0110`), `ε`/`e`/empty, powers such as `10^210^5`, and groups `00(01)^3`.
    fn from_str(s: &str) -> Result<BitWord> {
        let s = s.trim();
        if s.is_empty() || s == "ε" || s == "e" || s == "eps" {
            return Ok(BitWord::empty());
        }
        let c: Vec<char> = s.chars().collect();
        let mut i = 0;
        let out = parse_group(&c, &mut i, s)?;
        if i != c.len() {
            return Err(Error::Parse(format!("unbalanced ')' in '{s}'")));
        }
        Ok(BitWord(out))
    }
}

fn parse_group(c: &[char], i: &mut usize, src: &str) -> Result<Vec<u8>> {
    let mut out = vec![];
    while *i < c.len() && c[*i] != ')' {
        let unit = match c[*i] {
            '0' | '1' => {
                *i += 1;
                vec![(c[*i - 1] == '1') as u8]
            }
            '(' => {
                *i += 1;
                let g = parse_group(c, i, src)?;
                if *i >= c.len() {
                    return Err(Error::Parse(format!("missing ')' in '{src}'")));
                }
                *i += 1;
                g
            }
            _ => return Err(Error::Parse(format!("bad word '{src}'"))),
        };
        let mut rep = 1usize;
        // single-digit exponent unless braced: 10^210^5 = 1 0^2 1 0^5, 0^{12}
        if *i < c.len() && c[*i] == '^' {
            *i += 1;
            let digits: String = if c.get(*i) == Some(&'{') {
                let end = c[*i..]
                    .iter()
                    .position(|&x| x == '}')
                    .ok_or_else(|| Error::Parse(format!("missing '}}' in '{src}'")))?;
                let d = c[*i + 1..*i + end].iter().collect();
                *i += end + 1;
                d
            } else {
                *i += 1;
                c.get(*i - 1).map(|x| x.to_string()).unwrap_or_default()
            };
            rep = digits.parse().map_err(|_| Error::Parse(format!("bad exponent in '{src}'")))?;
        }
        for _ in 0..rep {
            out.extend_from_slice(&unit);
        }
    }
    Ok(out)
}

fn word_int(bits: &[u8]) -> BigInt {
    let mut v = BigInt::zero();
    for &b in bits {
        v = (v << 1usize) + b as u32;
    }
    v
}

/// Smallest root of a word: `w = r^k` with `r` primitive.
fn primitive_root(w: &[u8]) -> &[u8] {
    let n = w.len();
    for d in 1..=n {
        if n % d == 0 && (d..n).all(|i| w[i] == w[i - d]) {
            return &w[..d];
        }
    }
    w
}

/// Eventually periodic 0/1 sequence `.pre overline{per}` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSeq {
    pre: Vec<u8>,
    per: Vec<u8>,
}

impl BitSeq {
    /// Builds and canonicalizes. Rejects dyadic rationals in (0,1) (constant tail after a nonempty preperiod).
    pub fn new(pre: Vec<u8>, per: Vec<u8>) -> Result<BitSeq> {
        if per.is_empty() {
            return Err(Error::InvalidInput("empty period".into()));
        }
        if pre.iter().chain(&per).any(|&b| b > 1) {
            return Err(Error::InvalidInput("letters must be 0 or 1".into()));
        }
        let mut per = primitive_root(&per).to_vec();
        let mut pre = pre;
        while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        if per.len() == 1 && !pre.is_empty() {
            return Err(Error::Dyadic);
        }
        Ok(BitSeq { pre, per })
    }

    pub fn periodic(per: Vec<u8>) -> Result<BitSeq> {
        BitSeq::new(vec![], per)
    }

    /// Canonical expansion of a non-dyadic rational in (0,1).
    pub fn from_rational(q: &BigRational) -> Result<BitSeq> {
        if !q.is_positive() || q >= &BigRational::one() {
            return Err(Error::InvalidInput(format!("{q} is not in (0,1)")));
        }
        let mut d = q.denom().clone();
        let two = BigInt::from(2);
        while d.is_even() {
            d /= &two;
        }
        if d.is_one() {
            return Err(Error::Dyadic);
        }
        let mut seen: HashMap<BigRational, usize> = HashMap::new();
        let mut bits = vec![];
        let mut x = q.clone();
        let one = BigRational::one();
        loop {
            if let Some(&i) = seen.get(&x) {
                let per = bits[i..].to_vec();
                bits.truncate(i);
                return BitSeq::new(bits, per);
            }
            seen.insert(x.clone(), bits.len());
            x = &x * BigRational::from_integer(two.clone());
            if x >= one {
                bits.push(1);
                x -= &one;
            } else {
                bits.push(0);
            }
        }
    }

    pub fn from_fraction(p: i64, q: i64) -> Result<BitSeq> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        BitSeq::from_rational(&BigRational::new(p.into(), q.into()))
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.pre
    }

    pub fn period(&self) -> &[u8] {
        &self.per
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.pre.is_empty()
    }

    /// `k`-th letter, 1-based.
    pub fn bit(&self, k: usize) -> u8 {
        assert!(k >= 1);
        let i = k - 1;
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.per[(i - self.pre.len()) % self.per.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> BitWord {
        BitWord((1..=n).map(|k| self.bit(k)).collect())
    }

    /// Exact value in [0,1].
    pub fn value(&self) -> BigRational {
        let p = self.per.len();
        let s = self.pre.len();
        let m = (BigInt::one() << p) - 1;
        let num = word_int(&self.pre) * &m + word_int(&self.per);
        BigRational::new(num, m << s)
    }

    pub fn to_f64(&self) -> f64 {
        self.value().to_f64().unwrap_or(f64::NAN)
    }

    /// Shift by one letter (doubling map).
    pub fn shift(&self) -> BitSeq {
        if self.pre.is_empty() {
            let mut per = self.per.clone();
            per.rotate_left(1);
            BitSeq { pre: vec![], per }
        } else {
            BitSeq { pre: self.pre[1..].to_vec(), per: self.per.clone() }
        }
    }

    /// Prepends a word.
    pub fn prepend(&self, w: &[u8]) -> Result<BitSeq> {
        let mut pre = w.to_vec();
        pre.extend_from_slice(&self.pre);
        BitSeq::new(pre, self.per.clone())
    }

    /// `1 - b`, letterwise complement.
    pub fn complement(&self) -> BitSeq {
        BitSeq { pre: self.pre.iter().map(|b| 1 - b).collect(), per: self.per.iter().map(|b| 1 - b).collect() }
    }

    /// Forward orbit under doubling in visit order; all elements distinct.
    pub fn doubling_orbit(&self) -> Vec<BitSeq> {
        let n = self.pre.len() + self.per.len();
        let mut out = Vec::with_capacity(n);
        let mut cur = self.clone();
        for _ in 0..n {
            let next = cur.shift();
            out.push(cur);
            cur = next;
        }
        out
    }

    /// True iff the orbit closure avoids ½: the tail is not constant.
    pub fn is_itinerary(&self) -> bool {
        self.per.len() > 1
    }

    fn dist_half(&self) -> BigRational {
        (self.value() - BigRational::new(1.into(), 2.into())).abs()
    }

    /// No shift is strictly nearer to ½ than `self`.
    pub fn is_kneading(&self) -> bool {
        if !self.is_itinerary() {
            return false;
        }
        let d = self.dist_half();
        self.doubling_orbit().iter().all(|s| s.dist_half() >= d)
    }

    /// Orbit element nearest to ½; ties go to the smaller value.
    pub fn kneading_of(&self) -> Result<BitSeq> {
        if !self.is_itinerary() {
            return Err(Error::NotItinerary(self.to_string()));
        }
        let mut best: Option<(BigRational, BigRational, BitSeq)> = None;
        for s in self.doubling_orbit() {
            let (d, v) = (s.dist_half(), s.value());
            let better = match &best {
                None => true,
                Some((bd, bv, _)) => d < *bd || (d == *bd && v < *bv),
            };
            if better {
                best = Some((d, v, s));
            }
        }
        Ok(best.unwrap().2)
    }

    /// `.overline{w} -> .overline{w(1-w)}`.
    pub fn period_double(&self) -> Result<BitSeq> {
        if !self.pre.is_empty() {
            return Err(Error::NotPeriodic(self.to_string()));
        }
        let mut per = self.per.clone();
        per.extend(self.per.iter().map(|b| 1 - b));
        BitSeq::periodic(per)
    }

    /// Parses `p/q`, `.011overline{10}`, `.(011)overline{10}`, `0.011(10)` style input.
    pub fn parse(s: &str) -> Result<BitSeq> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
            let q: BigInt = q.trim().parse().map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return BitSeq::from_rational(&BigRational::new(p, q));
        }
        let body = s
            .strip_prefix("0.")
            .or_else(|| s.strip_prefix('.'))
            .or_else(|| s.strip_prefix(','))
            .ok_or_else(|| Error::Parse(format!("bad bit sequence '{s}'")))?;
        let (pre, per) = if let Some(i) = body.find("overline{") {
            let rest = &body[i + "overline{".len()..];
            let per = rest
                .strip_suffix('}')
                .ok_or_else(|| Error::Parse(format!("missing '}}' in '{s}'")))?;
            (&body[..i], per)
        } else if body.ends_with(')') {
            let i = body.rfind('(').ok_or_else(|| Error::Parse(format!("missing '(' in '{s}'")))?;
            // .011(10) with the last parenthesized group as period
            let per = body[i + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("missing ')' in '{s}'")))?;
            (&body[..i], per)
        } else {
            return Err(Error::Parse(format!("no period in '{s}'")));
        };
        let pre: BitWord = if pre.is_empty() { BitWord::empty() } else { pre.parse()? };
        let per: BitWord = per.parse()?;
        BitSeq::new(pre.0, per.0)
    }
}

impl PartialOrd for BitSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BitSeq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value().cmp(&other.value())
    }
}

impl fmt::Display for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(".")?;
        for b in &self.pre {
            write!(f, "{b}")?;
        }
        f.write_str("overline{")?;
        for b in &self.per {
            write!(f, "{b}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (= {})", self, self.value())
    }
}

impl FromStr for BitSeq {
    type Err = Error;
    fn from_str(s: &str) -> Result<BitSeq> {
        BitSeq::parse(s)
    }
}

/// First `n` letters of the Thue–Morse sequence 0110 1001 ...
pub fn morse_thue_prefix(n: usize) -> BitWord {
    BitWord((0..n).map(|i| (i.count_ones() % 2) as u8).collect())
}

/// Periodic approximants `.overline{b_1...b_n}` of a nonperiodic kneading sequence given by a prefix.
///
/// Index `n` is accepted when `b_{n+1} = 1` and there is no `k < n` with
/// `(1-b_k)...(1-b_{n+1}) = b_1...b_{n-k+2}`. Indices whose approximant has a
/// constant period (not an itinerary) are skipped.
pub fn periodic_approximants(prefix: &BitWord, count: usize) -> Result<Vec<BitSeq>> {
    if count == 0 {
        return Err(Error::InvalidInput("count must be at least 1".into()));
    }
    let b = |k: usize| prefix.0[k - 1];
    let len = prefix.len();
    let mut out = vec![];
    let mut n = 1;
    while out.len() < count {
        if n + 1 > len {
            return Err(Error::PrefixTooShort(format!(
                "{} approximants found in a prefix of length {len}; need a longer prefix",
                out.len()
            )));
        }
        let accept = b(n + 1) == 1
            && (1..n).all(|k| !(k..=n + 1).all(|i| 1 - b(i) == b(i - k + 1)));
        if accept {
            let s = BitSeq::periodic(prefix.0[..n].to_vec())?;
            if s.is_itinerary() {
                out.push(s);
            }
        }
        n += 1;
    }
    Ok(out)
}

/// Periodic approximants are only defined for nonperiodic input.
pub fn periodic_approximants_of(b: &BitSeq, _count: usize) -> Result<Vec<BitSeq>> {
    Err(Error::InvalidInput(format!("{b} is eventually periodic; approximants need a nonperiodic prefix")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraics::roots::rat;

    fn q(p: i64, d: i64) -> BitSeq {
        BitSeq::from_fraction(p, d).unwrap()
    }

    #[test]
    fn from_rational_examples() {
        assert_eq!(q(1, 3).to_string(), ".overline{01}");
        assert_eq!(q(8, 15).to_string(), ".overline{1000}");
        assert_eq!(q(11, 24).to_string(), ".011overline{10}");
        assert_eq!(BitSeq::from_fraction(1, 4), Err(Error::Dyadic));
        assert!(BitSeq::from_fraction(0, 1).is_err());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(BitSeq::parse(".011overline{10}").unwrap(), q(11, 24));
        assert_eq!(BitSeq::parse(".(011)overline{10}").unwrap(), q(11, 24));
        assert_eq!(BitSeq::parse("0.011(10)").unwrap(), q(11, 24));
        assert_eq!(BitSeq::parse("22/60").unwrap(), BitSeq::parse(".01overline{0111}").unwrap());
        assert_eq!(BitSeq::parse(".1overline{0}"), Err(Error::Dyadic));
        let one = BitSeq::parse(".overline{1}").unwrap();
        assert_eq!(one.value(), rat(1, 1));
        assert!(!one.is_itinerary());
        assert_eq!(
            BitSeq::parse(".00(01)^2overline{0110}").unwrap(),
            BitSeq::new(vec![0, 0, 0, 1, 0, 1], vec![0, 1, 1, 0]).unwrap()
        );
        assert_eq!(
            BitSeq::parse(".0001^2overline{0110}").unwrap(),
            BitSeq::new(vec![0, 0, 0, 1, 1], vec![0, 1, 1, 0]).unwrap()
        );
    }

    #[test]
    fn orbits() {
        let vals = |b: BitSeq| b.doubling_orbit().iter().map(|s| s.value()).collect::<Vec<_>>();
        assert_eq!(vals(q(1, 3)), vec![rat(1, 3), rat(2, 3)]);
        assert_eq!(vals(q(1, 5)), vec![rat(1, 5), rat(2, 5), rat(4, 5), rat(3, 5)]);
        assert_eq!(vals(q(11, 24)), vec![rat(11, 24), rat(11, 12), rat(5, 6), rat(2, 3), rat(1, 3)]);
    }

    #[test]
    fn kneading() {
        assert!(q(3, 7).is_kneading());
        assert!(q(1, 3).is_kneading());
        assert!(!q(22, 60).is_kneading());
        assert_eq!(q(22, 60).kneading_of().unwrap(), q(7, 15));
        assert_eq!(q(11, 24).kneading_of().unwrap(), q(11, 24));
        assert_eq!(q(1, 5).kneading_of().unwrap(), q(2, 5));
    }

    #[test]
    fn doubling() {
        assert_eq!(q(1, 3).period_double().unwrap(), q(2, 5));
        assert_eq!(q(3, 7).period_double().unwrap(), q(4, 9));
        assert_eq!(q(7, 15).period_double().unwrap(), q(8, 17));
        assert!(q(11, 24).period_double().is_err());
    }

    #[test]
    fn thue_morse() {
        assert_eq!(morse_thue_prefix(4).to_string(), "0110");
        assert_eq!(morse_thue_prefix(8).to_string(), "01101001");
        assert_eq!(morse_thue_prefix(1).to_string(), "0");
        let a = periodic_approximants(&morse_thue_prefix(64), 2).unwrap();
        assert_eq!(a, vec![q(1, 3), q(2, 5)]);
        assert!(matches!(periodic_approximants(&morse_thue_prefix(4), 3), Err(Error::PrefixTooShort(_))));
        assert!(periodic_approximants_of(&q(1, 3), 1).is_err());
    }

    #[test]
    fn run_length_words() {
        let v: BitWord = "10^210^5".parse().unwrap();
        assert_eq!(v.to_string(), "100100000");
        let w: BitWord = "01^21010^3".parse().unwrap();
        assert_eq!(w.to_string(), "011101000");
        assert_eq!("0^{12}1".parse::<BitWord>().unwrap().len(), 13);
    }
}
