//! Prime cycle mixtures: the Fibonacci construction at β = τ and concatenation of mixtures.

use num_bigint::BigInt;
use num_traits::One;

use crate::algebraics::{named_parameter, FieldElement, NamedKind};
use crate::error::{Error, Result};
use crate::words::BitWord;

use super::graph::{finite_orbit, OrbitGraph, OrbitLimits};
use super::spectral::{growth_rate, Growth};
use super::system::Bernoulli;

/// Directed multigraph whose cycles all pass through `root` with common length `period`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixtureGraph {
    pub succ: Vec<Vec<usize>>,
    pub root: usize,
    pub period: usize,
    pub cycles: BigInt,
}

const MAX_FIRST_RETURNS: usize = 1 << 20;

impl MixtureGraph {
    /// Validates the mixture shape by enumerating first returns to `root`.
    pub fn new(succ: Vec<Vec<usize>>, root: usize) -> Result<MixtureGraph> {
        let n = succ.len();
        if root >= n {
            return Err(Error::InvalidInput("root out of range".into()));
        }
        let mut lengths: Option<usize> = None;
        let mut count = BigInt::from(0);
        let mut on_path = vec![false; n];
        let mut visits = 0usize;
        // (vertex, next successor index, depth)
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        on_path[root] = true;
        while let Some(&mut (v, ref mut k)) = stack.last_mut() {
            if *k >= succ[v].len() {
                on_path[v] = false;
                stack.pop();
                continue;
            }
            let w = succ[v][*k];
            *k += 1;
            visits += 1;
            if visits > MAX_FIRST_RETURNS {
                return Err(Error::ResourceCap("too many first-return paths".into()));
            }
            let depth = stack.len();
            if w == root {
                match lengths {
                    None => lengths = Some(depth),
                    Some(p) if p != depth => {
                        return Err(Error::InvalidInput(format!("cycles of lengths {p} and {depth}: not a mixture")));
                    }
                    _ => {}
                }
                count += 1;
            } else if on_path[w] {
                return Err(Error::InvalidInput("a cycle avoids the root: rootless mixture".into()));
            } else {
                on_path[w] = true;
                stack.push((w, 0));
            }
        }
        let period = lengths.ok_or_else(|| Error::InvalidInput("root lies on no cycle: rootless mixture".into()))?;
        Ok(MixtureGraph { succ, root, period, cycles: count })
    }

    /// The part of a closed orbit graph reachable from its root.
    pub fn from_orbit(g: &OrbitGraph) -> Result<MixtureGraph> {
        let mut succ = vec![vec![]; g.len()];
        for e in &g.edges {
            succ[e.from].push(e.to);
        }
        MixtureGraph::new(succ, g.root)
    }

    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let n = self.succ.len();
        let mut a = vec![vec![0; n]; n];
        for (i, s) in self.succ.iter().enumerate() {
            for &j in s {
                a[i][j] += 1;
            }
        }
        a
    }

    pub fn growth_rate(&self) -> Result<Growth> {
        growth_rate(&self.adjacency())
    }

    /// `cycles^(1/period)`
    pub fn predicted_rate(&self) -> f64 {
        let c: f64 = self.cycles.to_string().parse().unwrap_or(f64::INFINITY);
        c.powf(1.0 / self.period as f64)
    }
}

/// Redirects edges entering `a.root` to `b.root` and edges entering `b.root` to `a.root`.
pub fn concatenate_mixtures(a: &MixtureGraph, b: &MixtureGraph) -> Result<MixtureGraph> {
    let off = a.succ.len();
    let mut succ: Vec<Vec<usize>> = vec![];
    for s in &a.succ {
        succ.push(s.iter().map(|&j| if j == a.root { b.root + off } else { j }).collect());
    }
    for s in &b.succ {
        succ.push(s.iter().map(|&j| if j == b.root { a.root } else { j + off }).collect());
    }
    MixtureGraph::new(succ, a.root)
}

#[derive(Clone, Debug)]
pub struct FibonacciMixture {
    pub k: usize,
    pub words: Vec<BitWord>,
    /// Common fixed point of all `g_w`.
    pub point: FieldElement,
    pub graph: OrbitGraph,
}

/// Words of the k-th step: F_{k+1} words of length 2k-1.
pub fn fibonacci_words(k: usize) -> Result<Vec<BitWord>> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("k = {k} < 2")));
    }
    let mut words: Vec<Vec<u8>> = vec![vec![1, 0, 0], vec![0, 1, 1]];
    for step in 3..=k {
        let (ext, last, repl): (u8, u8, [u8; 3]) = if step % 2 == 0 { (1, 0, [1, 0, 0]) } else { (0, 1, [0, 1, 1]) };
        let mut next = vec![];
        for w in &words {
            let mut e = w.clone();
            e.extend([ext, ext]);
            next.push(e);
            if *w.last().unwrap() == last {
                let mut r = w[..w.len() - 1].to_vec();
                r.extend(repl);
                next.push(r);
            }
        }
        words = next;
    }
    Ok(words.into_iter().map(BitWord::new).collect())
}

/// `f_w(x) = f_{w_1} ∘ ... ∘ f_{w_n}(x)`
pub fn f_word(sys: &Bernoulli, w: &[u8], x: &FieldElement) -> FieldElement {
    w.iter().rev().fold(x.clone(), |acc, &a| sys.f(a, &acc))
}

/// The k-th Fibonacci cycle mixture at the golden mean.
pub fn fibonacci_mixture(k: usize, limits: &OrbitLimits) -> Result<FibonacciMixture> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("k = {k} < 2")));
    }
    if 4 * k - 3 > limits.max_vertices {
        return Err(Error::ResourceCap(format!("{} vertices exceed the cap", 4 * k - 3)));
    }
    let sys = Bernoulli::new(&named_parameter(NamedKind::Multinacci, 2)?)?;
    let words = fibonacci_words(k)?;
    let zero = sys.field().zero();
    let f0 = f_word(&sys, words[0].bits(), &zero);
    if words.iter().any(|w| f_word(&sys, w.bits(), &zero) != f0) {
        return Err(Error::Internal("mixture words define different maps".into()));
    }
    let point = sys.cycle_fixed_point(words[0].bits());
    let graph = finite_orbit(&sys, &point, limits)?;
    if !graph.closed {
        return Err(Error::ResourceCap("orbit did not close".into()));
    }
    Ok(FibonacciMixture { k, words, point, graph })
}

/// `F_n` with `F_1 = F_2 = 1`.
pub fn fibonacci(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::from(0), BigInt::one());
    for _ in 0..n {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(k: usize) -> Vec<String> {
        fibonacci_words(k).unwrap().iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn word_lists() {
        assert_eq!(words(2), ["100", "011"]);
        assert_eq!(words(3), ["10000", "01100", "01011"]);
        assert_eq!(words(4), ["1000011", "1000100", "0110011", "0110100", "0101111"]);
        for k in 2..12 {
            let w = fibonacci_words(k).unwrap();
            assert_eq!(BigInt::from(w.len()), fibonacci(k + 1));
            assert!(w.iter().all(|x| x.len() == 2 * k - 1));
        }
    }

    #[test]
    fn golden_mixture() {
        let m = fibonacci_mixture(2, &OrbitLimits::default()).unwrap();
        assert_eq!(m.graph.len(), 5);
        let g = MixtureGraph::from_orbit(&m.graph).unwrap();
        assert_eq!((g.period, g.cycles.clone()), (3, BigInt::from(2)));
    }

    #[test]
    fn concatenation() {
        let a = MixtureGraph::from_orbit(&fibonacci_mixture(2, &OrbitLimits::default()).unwrap().graph).unwrap();
        let b = MixtureGraph::from_orbit(&fibonacci_mixture(3, &OrbitLimits::default()).unwrap().graph).unwrap();
        assert_eq!((b.period, b.cycles.clone()), (5, BigInt::from(3)));
        let aa = concatenate_mixtures(&a, &a).unwrap();
        assert_eq!((aa.period, aa.cycles.clone()), (6, BigInt::from(4)));
        let r = aa.growth_rate().unwrap();
        assert!((r.value() - 2f64.cbrt()).abs() < 1e-10);
        let ab = concatenate_mixtures(&a, &b).unwrap();
        assert_eq!((ab.period, ab.cycles.clone()), (8, BigInt::from(6)));
        let mut five = a.clone();
        for _ in 0..4 {
            five = concatenate_mixtures(&five, &a).unwrap();
        }
        assert_eq!((five.period, five.cycles.clone()), (15, BigInt::from(32)));
        assert_eq!(fibonacci(9), BigInt::from(34));
        assert!((five.growth_rate().unwrap().value() - five.predicted_rate()).abs() < 1e-10);
    }

    #[test]
    fn rootless() {
        // two disjoint loops joined by a path
        assert!(MixtureGraph::new(vec![vec![1], vec![1]], 0).is_err());
        assert!(MixtureGraph::new(vec![vec![0, 1], vec![0]], 0).is_err());
    }
}
