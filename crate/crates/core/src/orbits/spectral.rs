//! Spectral radius of successor matrices, local dimensions and the two-cycle growth bound.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebraics::roots::{isolate_real_roots, rat, rat_down, rat_up};
use crate::algebraics::{AlgebraicNumber, IntPolynomial, RealRoot};
use crate::error::{Error, Result};

/// Largest component size handled by the exact characteristic polynomial.
pub const EXACT_LIMIT: usize = 64;

const TARGET_WIDTH: f64 = 1e-11;

/// Closed interval of reals with `lo ≤ hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
}

impl Enclosure {
    pub fn new(lo: f64, hi: f64) -> Enclosure {
        assert!(lo <= hi, "empty enclosure [{lo}, {hi}]");
        Enclosure { lo, hi }
    }

    pub fn point(x: f64) -> Enclosure {
        Enclosure { lo: x, hi: x }
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12}, {:.12}]", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthMethod {
    /// No cycle at all: the orbit is finite and acyclic.
    Acyclic,
    CharPoly,
    PowerIteration,
}

#[derive(Clone, Debug)]
pub struct Growth {
    pub enclosure: Enclosure,
    /// Isolated root of the characteristic polynomial of the dominant component, when computed exactly.
    pub root: Option<RealRoot>,
    pub method: GrowthMethod,
}

impl Growth {
    pub fn value(&self) -> f64 {
        self.enclosure.mid()
    }

    /// Exact algebraic handle, when available.
    pub fn algebraic(&self) -> Option<AlgebraicNumber> {
        self.root.as_ref().and_then(|r| AlgebraicNumber::from_real_root(r).ok())
    }
}

/// Strongly connected components (Tarjan, iterative), in reverse topological order.
pub fn strongly_connected_components(adj: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let succ: Vec<Vec<usize>> = adj.iter().map(|r| (0..n).filter(|&j| r[j] > 0).collect()).collect();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = vec![];
    let mut comps = vec![];
    let mut counter = 0;
    for s in 0..n {
        if index[s] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(s, 0)];
        index[s] = counter;
        low[s] = counter;
        counter += 1;
        stack.push(s);
        on_stack[s] = true;
        while let Some(&mut (v, ref mut k)) = call.last_mut() {
            if *k < succ[v].len() {
                let w = succ[v][*k];
                *k += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut c = vec![];
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        c.push(w);
                        if w == v {
                            break;
                        }
                    }
                    c.sort();
                    comps.push(c);
                }
            }
        }
    }
    comps
}

/// `det(xI - A)` by Berkowitz's division-free algorithm.
pub fn characteristic_polynomial(a: &[Vec<u32>]) -> IntPolynomial {
    let n = a.len();
    if n == 0 {
        return IntPolynomial::one();
    }
    let a: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    // descending coefficients
    let mut v: Vec<BigInt> = vec![BigInt::one(), -a[0][0].clone()];
    for r in 1..n {
        let row: Vec<BigInt> = a[r][..r].to_vec();
        let mut col: Vec<BigInt> = (0..r).map(|i| a[i][r].clone()).collect();
        let mut t = vec![BigInt::one(), -a[r][r].clone()];
        for _ in 0..r {
            let rc: BigInt = row.iter().zip(&col).map(|(x, y)| x * y).sum();
            t.push(-rc);
            col = (0..r).map(|i| (0..r).map(|j| &a[i][j] * &col[j]).sum()).collect();
        }
        let mut nv = vec![BigInt::zero(); r + 2];
        for (i, slot) in nv.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate().take(i + 1) {
                if i - j < t.len() {
                    *slot += &t[i - j] * vj;
                }
            }
        }
        v = nv;
    }
    v.reverse();
    IntPolynomial::new(v)
}

fn sub_matrix(adj: &[Vec<u32>], idx: &[usize]) -> Vec<Vec<u32>> {
    idx.iter().map(|&i| idx.iter().map(|&j| adj[i][j]).collect()).collect()
}

fn exact_radius(m: &[Vec<u32>]) -> Result<(RealRoot, Enclosure)> {
    let p = characteristic_polynomial(m);
    let roots = isolate_real_roots(&p, &rat(1, 2), &rat(3, 1));
    let r = roots.into_iter().last().ok_or_else(|| Error::Internal("no Perron root".into()))?;
    let mut bits = 40;
    loop {
        let rr = r.refined(bits);
        let e = Enclosure::new(rat_down(rr.lo()), rat_up(rr.hi()));
        if e.width() <= TARGET_WIDTH || rr.is_exact() {
            return Ok((rr, e));
        }
        bits += 16;
    }
}

/// Collatz–Wielandt bounds from power iteration on `A + I` (primitive for irreducible `A`).
fn power_radius(m: &[Vec<u32>]) -> Enclosure {
    let n = m.len();
    let succ: Vec<Vec<(usize, f64)>> =
        m.iter().map(|r| (0..n).filter(|&j| r[j] > 0).map(|j| (j, r[j] as f64)).collect()).collect();
    let mut v = vec![1.0f64; n];
    let mut best = Enclosure::new(0.0, 3.0);
    for _ in 0..2_000_000 {
        let w: Vec<f64> = (0..n).map(|i| v[i] + succ[i].iter().map(|&(j, a)| a * v[j]).sum::<f64>()).collect();
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..n {
            let q = w[i] / v[i];
            lo = lo.min(q);
            hi = hi.max(q);
        }
        // slack for rounding in the n-term sums
        let slack = 4.0 * (n as f64) * f64::EPSILON * hi;
        let e = Enclosure::new((lo - 1.0 - slack).max(best.lo), (hi - 1.0 + slack).min(best.hi));
        best = e;
        if best.width() <= TARGET_WIDTH {
            break;
        }
        let norm = w.iter().cloned().fold(0.0, f64::max);
        v = w.into_iter().map(|x| x / norm).collect();
    }
    best
}

/// Spectral radius of a nonnegative integer matrix with a certified enclosure.
pub fn growth_rate(adj: &[Vec<u32>]) -> Result<Growth> {
    let mut best: Option<Growth> = None;
    for c in strongly_connected_components(adj) {
        let m = sub_matrix(adj, &c);
        if c.len() == 1 && m[0][0] == 0 {
            continue;
        }
        let g = if c.len() <= EXACT_LIMIT {
            let (r, e) = exact_radius(&m)?;
            Growth { enclosure: e, root: Some(r), method: GrowthMethod::CharPoly }
        } else {
            Growth { enclosure: power_radius(&m), root: None, method: GrowthMethod::PowerIteration }
        };
        best = Some(match best {
            None => g,
            Some(b) => {
                let replace = match (&b.root, &g.root) {
                    (Some(x), Some(y)) => y.cmp_root(x) == Ordering::Greater,
                    _ => g.enclosure.lo > b.enclosure.hi || (g.enclosure.mid() > b.enclosure.mid()),
                };
                if replace {
                    g
                } else {
                    b
                }
            }
        });
    }
    Ok(best.unwrap_or(Growth { enclosure: Enclosure::point(0.0), root: None, method: GrowthMethod::Acyclic }))
}

/// `(log m - log ρ) / log β` with outward rounding.
pub fn local_dimension(m: u32, beta: &AlgebraicNumber, rho: &Enclosure) -> Result<Enclosure> {
    let mf = m as f64;
    if rho.lo < 1.0 - 1e-12 || rho.hi > mf + 1e-12 {
        return Err(Error::Domain(format!("ρ = {rho} is outside [1, {m}]")));
    }
    let (blo, bhi) = beta.enclosure(60);
    let up = |x: f64| x + 4.0 * f64::EPSILON * x.abs().max(1e-300);
    let down = |x: f64| x - 4.0 * f64::EPSILON * x.abs().max(1e-300);
    let num_lo = down((mf.ln() - rho.hi.max(1.0).ln()).max(0.0));
    let num_hi = up(mf.ln() - rho.lo.max(1.0).ln());
    let (lb_lo, lb_hi) = (down(blo.ln()), up(bhi.ln()));
    Ok(Enclosure::new(down(num_lo.max(0.0) / lb_hi), up(num_hi / lb_lo)))
}

/// Positive root of `x^-m + x^-n = 1`, exactly as an algebraic number.
pub fn min_growth_bound(m: u32, n: u32) -> Result<(AlgebraicNumber, Enclosure)> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("cycle lengths must be positive".into()));
    }
    let (a, b) = (m.min(n) as usize, m.max(n) as usize);
    // x^b - x^(b-a) - 1
    let mut c = vec![BigInt::zero(); b + 1];
    c[b] += 1;
    c[b - a] -= 1;
    c[0] -= 1;
    let p = IntPolynomial::new(c);
    let r = AlgebraicNumber::root_of(&p, &rat(1, 1), &rat(2, 1))?;
    let (lo, hi) = r.enclosure(60);
    Ok((r, Enclosure::new(lo, hi)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Supercritical,
    Subcritical,
    Undecided,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Supercritical => "supercritical",
            Verdict::Subcritical => "subcritical",
            Verdict::Undecided => "undecided",
        }
    }
}

/// `ρ > 2s` (no bounded density) when the enclosures separate.
pub fn supercritical_test(rho: &Enclosure, s: &AlgebraicNumber) -> Verdict {
    let (lo, hi) = s.scaled(2).enclosure(60);
    if rho.lo > hi {
        Verdict::Supercritical
    } else if rho.hi < lo {
        Verdict::Subcritical
    } else {
        Verdict::Undecided
    }
}

/// Exact variant for algebraic `ρ`, deciding equality too (equal counts as not supercritical).
pub fn supercritical_exact(rho: &AlgebraicNumber, s: &AlgebraicNumber) -> Verdict {
    match rho.cmp(&s.scaled(2)) {
        Ordering::Greater => Verdict::Supercritical,
        _ => Verdict::Subcritical,
    }
}

/// Number of length-`q` paths from `root`: `(S^q · 1)_root`.
pub fn generation_count(adj: &[Vec<u32>], root: usize, q: usize) -> BigInt {
    let n = adj.len();
    let mut v = vec![BigInt::one(); n];
    for _ in 0..q {
        v = (0..n).map(|i| (0..n).filter(|&j| adj[i][j] > 0).map(|j| &v[j] * adj[i][j]).sum()).collect();
    }
    v[root].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraics::named_parameter;
    use crate::algebraics::number::t_n;
    use crate::algebraics::NamedKind;
    use proptest::prelude::*;

    fn det_oracle(a: &[Vec<i64>]) -> i64 {
        // Laplace expansion
        let n = a.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    a[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &x)| x).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * a[0][j] * det_oracle(&minor)
            })
            .sum()
    }

    #[test]
    fn charpoly_small() {
        let a = vec![vec![0, 1, 0], vec![0, 0, 1], vec![2, 0, 0]];
        assert_eq!(characteristic_polynomial(&a), IntPolynomial::parse("x^3-2").unwrap());
        let g = growth_rate(&a).unwrap();
        assert!((g.value() - 2f64.powf(1.0 / 3.0)).abs() < 1e-10);
        assert!(g.enclosure.width() <= 1e-10);
    }

    #[test]
    fn bounds() {
        let (_, e) = min_growth_bound(5, 2).unwrap();
        assert!((e.mid() - 1.2365).abs() < 1e-3);
        let (_, e) = min_growth_bound(3, 4).unwrap();
        assert!((e.mid() - 1.221).abs() < 1e-3);
        let (r, _) = min_growth_bound(9, 9).unwrap();
        assert_eq!(r.minpoly(), &IntPolynomial::parse("x^9-2").unwrap());
        let (_, e) = min_growth_bound(7, 5).unwrap();
        assert!(e.lo >= 1.1237 - 1e-3 && (e.mid() - 1.1237).abs() < 1e-3);
    }

    #[test]
    fn dimensions() {
        let tau = named_parameter(NamedKind::Multinacci, 2).unwrap();
        let d = local_dimension(2, &tau, &Enclosure::point(2f64.cbrt())).unwrap();
        assert!((d.mid() - 0.9603).abs() < 5e-4);
        let d = local_dimension(2, &tau, &Enclosure::point(tau.to_f64().sqrt())).unwrap();
        assert!((d.mid() - 0.9404).abs() < 5e-4);
        let d = local_dimension(2, &tau, &Enclosure::point(1.0)).unwrap();
        assert!((d.mid() - 1.4404).abs() < 5e-4);
        assert!(local_dimension(2, &tau, &Enclosure::point(2.5)).is_err());
    }

    #[test]
    fn verdicts() {
        let tau = named_parameter(NamedKind::Multinacci, 2).unwrap();
        let t2 = t_n(2).unwrap();
        let sqrt_tau = Enclosure::point(tau.to_f64().sqrt());
        assert_eq!(supercritical_test(&sqrt_tau, &t2), Verdict::Supercritical);
        let (r, e) = min_growth_bound(9, 9).unwrap();
        let alpha = AlgebraicNumber::root_of(&IntPolynomial::parse("x^5-x^4-x^3-1").unwrap(), &rat(1, 1), &rat(2, 1)).unwrap();
        let s = alpha.reciprocal().unwrap();
        assert_eq!(supercritical_test(&e, &s), Verdict::Subcritical);
        assert_eq!(supercritical_exact(&r, &s), Verdict::Subcritical);
    }

    #[test]
    fn power_iteration_agrees() {
        // a 70-cycle with one chord
        let n = 70;
        let mut a = vec![vec![0u32; n]; n];
        for i in 0..n {
            a[i][(i + 1) % n] = 1;
        }
        a[34][0] = 1;
        let g = growth_rate(&a).unwrap();
        assert_eq!(g.method, GrowthMethod::PowerIteration);
        // x^-35 + x^-70 = 1 gives x^35 = τ
        let r = ((1.0 + 5f64.sqrt()) / 2.0).powf(1.0 / 35.0);
        assert!((g.enclosure.mid() - r).abs() < 1e-12 && g.enclosure.width() <= 1e-10, "{} {r}", g.enclosure);
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<u32>>> {
        (1usize..6).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0u32..3, n), n))
    }

    proptest! {
        #[test]
        fn charpoly_matches_determinant(a in arb_matrix(), x in -3i64..4) {
            let n = a.len();
            let m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { x } else { 0 } - a[i][j] as i64).collect()).collect();
            let p = characteristic_polynomial(&a);
            prop_assert_eq!(p.eval_int(&BigInt::from(x)), BigInt::from(det_oracle(&m)));
        }

        #[test]
        fn scc_partition(a in arb_matrix()) {
            let comps = strongly_connected_components(&a);
            let mut all: Vec<usize> = comps.concat();
            all.sort();
            prop_assert_eq!(all, (0..a.len()).collect::<Vec<_>>());
        }
    }
}
