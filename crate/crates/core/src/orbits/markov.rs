//! Markov partition generated by a finite orbit and its stationary vector.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebraics::FieldElement;
use crate::error::{Error, Result};

use super::graph::OrbitGraph;
use super::system::Bernoulli;

#[derive(Clone, Debug)]
pub struct MarkovPartition {
    /// Sorted, starting at 0 and ending at 1.
    pub cut_points: Vec<FieldElement>,
    /// `m[k][l] = Σ { p_i : J_l ⊆ g_i(J_k) }`
    pub matrix: Vec<Vec<BigRational>>,
    /// `w_k = ν(J_k)`
    pub stationary: Vec<BigRational>,
}

impl MarkovPartition {
    pub fn len(&self) -> usize {
        self.stationary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stationary.is_empty()
    }

    /// `(left, right)` of `J_k` as floats.
    pub fn interval_f64(&self, k: usize) -> (f64, f64) {
        (self.cut_points[k].to_f64(), self.cut_points[k + 1].to_f64())
    }
}

fn irreducible(m: &[Vec<BigRational>]) -> bool {
    let n = m.len();
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                let e = if forward { &m[i][j] } else { &m[j][i] };
                if !e.is_zero() && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    n == 0 || (reach(true) && reach(false))
}

/// Solves `M w = w`, `Σ w = 1` by exact elimination.
fn stationary_vector(m: &[Vec<BigRational>]) -> Result<Vec<BigRational>> {
    let n = m.len();
    // rows: (M - I) w = 0 with the last equation replaced by Σ w = 1
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut r: Vec<BigRational> = (0..n)
                .map(|j| if i == j { &m[i][j] - BigRational::one() } else { m[i][j].clone() })
                .collect();
            r.push(BigRational::zero());
            r
        })
        .collect();
    a[n - 1] = vec![BigRational::one(); n + 1];
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Internal("singular stationary system".into()))?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let v = &f * &a[col][c];
                    a[r][c] -= v;
                }
            }
        }
    }
    let w: Vec<BigRational> = a.into_iter().map(|r| r[n].clone()).collect();
    if w.iter().any(|x| x.is_negative()) {
        return Err(Error::Internal("negative stationary mass".into()));
    }
    Ok(w)
}

/// Partition of [0,1] cut at the orbit points, with transition weights `probs = (p0, p1)`.
pub fn markov_partition(sys: &Bernoulli, g: &OrbitGraph, probs: [BigRational; 2]) -> Result<MarkovPartition> {
    if !g.closed {
        return Err(Error::OpenGraph);
    }
    if !probs[0].is_positive() || !probs[1].is_positive() || &probs[0] + &probs[1] != BigRational::one() {
        return Err(Error::InvalidInput("probabilities must be positive and sum to 1".into()));
    }
    let field = sys.field();
    let mut cuts = g.vertices.clone();
    cuts.push(field.zero());
    cuts.push(field.one());
    cuts.sort();
    cuts.dedup();
    let n = cuts.len() - 1;
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 0..n {
        for letter in 0..2u8 {
            let (dom_lo, dom_hi) = if letter == 0 { (field.zero(), sys.t().clone()) } else { (sys.one_minus_t().clone(), field.one()) };
            let lo = std::cmp::max(&cuts[k], &dom_lo);
            let hi = std::cmp::min(&cuts[k + 1], &dom_hi);
            if lo >= hi {
                continue;
            }
            let (ilo, ihi) = (sys.g(letter, lo), sys.g(letter, hi));
            for (l, row) in m[k].iter_mut().enumerate() {
                if cuts[l] >= ilo && cuts[l + 1] <= ihi {
                    *row += &probs[letter as usize];
                }
            }
        }
    }
    for l in 0..n {
        let s: BigRational = (0..n).map(|k| m[k][l].clone()).sum();
        if !s.is_one() {
            return Err(Error::Internal(format!("column {l} sums to {s}")));
        }
    }
    if !irreducible(&m) {
        return Err(Error::Internal("reducible Markov matrix".into()));
    }
    let stationary = stationary_vector(&m)?;
    Ok(MarkovPartition { cut_points: cuts, matrix: m, stationary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraics::roots::rat;
    use crate::algebraics::{named_parameter, NamedKind};
    use crate::orbits::graph::{finite_orbit, OrbitLimits};

    fn halves() -> [BigRational; 2] {
        [rat(1, 2), rat(1, 2)]
    }

    fn check(p: &MarkovPartition) {
        let n = p.len();
        assert_eq!(p.stationary.iter().cloned().sum::<BigRational>(), BigRational::one());
        for k in 0..n {
            let mw: BigRational = (0..n).map(|l| &p.matrix[k][l] * &p.stationary[l]).sum();
            assert_eq!(mw, p.stationary[k]);
        }
    }

    #[test]
    fn golden_half_partition() {
        let sys = Bernoulli::new(&named_parameter(NamedKind::Multinacci, 2).unwrap()).unwrap();
        let g = finite_orbit(&sys, &sys.field().parse("1/2").unwrap(), &OrbitLimits::default()).unwrap();
        let p = markov_partition(&sys, &g, halves()).unwrap();
        assert_eq!(p.len(), 6);
        let cuts: Vec<f64> = p.cut_points.iter().map(|c| c.to_f64()).collect();
        for (c, e) in cuts[1..6].iter().zip([0.191, 0.309, 0.5, 0.691, 0.809]) {
            assert!((c - e).abs() < 1e-3);
        }
        check(&p);
        // symmetric measure
        for k in 0..6 {
            assert_eq!(p.stationary[k], p.stationary[5 - k]);
        }
    }

    #[test]
    fn doubling_parameter_partition() {
        let beta = named_parameter(NamedKind::Doubling, 2).unwrap();
        let sys = Bernoulli::new(&beta).unwrap();
        let g = finite_orbit(&sys, sys.t(), &OrbitLimits::default()).unwrap();
        assert!(g.closed);
        let p = markov_partition(&sys, &g, halves()).unwrap();
        check(&p);
        let q = markov_partition(&sys, &g, [rat(1, 3), rat(2, 3)]).unwrap();
        check(&q);
    }

    #[test]
    fn trivial_orbit() {
        let sys = Bernoulli::new(&named_parameter(NamedKind::Multinacci, 2).unwrap()).unwrap();
        let g = finite_orbit(&sys, &sys.field().one(), &OrbitLimits::default()).unwrap();
        let p = markov_partition(&sys, &g, halves()).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.stationary, vec![BigRational::one()]);
        assert!(markov_partition(&sys, &g, [rat(1, 2), rat(1, 3)]).is_err());
    }
}
