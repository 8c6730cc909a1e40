//! Breadth-first closure of a point under the partial maps g0, g1.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::algebraics::FieldElement;
use crate::error::{Error, Result};

use super::system::Bernoulli;

pub const DEFAULT_MAX_VERTICES: usize = 10_000;
pub const DEFAULT_MAX_HEIGHT_BITS: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitLimits {
    pub max_vertices: usize,
    pub max_height_bits: u64,
}

impl Default for OrbitLimits {
    fn default() -> Self {
        OrbitLimits { max_vertices: DEFAULT_MAX_VERTICES, max_height_bits: DEFAULT_MAX_HEIGHT_BITS }
    }
}

impl OrbitLimits {
    pub fn with_max_vertices(max_vertices: usize) -> Self {
        OrbitLimits { max_vertices, ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: u8,
}

/// Vertices sorted ascending; `closed` iff every vertex has all its applicable successors in the graph.
#[derive(Clone, Debug)]
pub struct OrbitGraph {
    pub vertices: Vec<FieldElement>,
    pub edges: Vec<Edge>,
    pub root: usize,
    pub closed: bool,
}

impl OrbitGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.from == v).count()
    }

    pub fn successors(&self, v: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.from == v)
    }

    /// `s_{kl}` = number of labels from `k` to `l`, ignoring closure.
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let n = self.len();
        let mut a = vec![vec![0u32; n]; n];
        for e in &self.edges {
            a[e.from][e.to] += 1;
        }
        a
    }

    pub fn index_of(&self, x: &FieldElement) -> Option<usize> {
        self.vertices.binary_search(x).ok()
    }

    /// Vertices with two successors.
    pub fn branch_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.out_degree(v) == 2).collect()
    }

    pub fn vertices_f64(&self) -> Vec<f64> {
        self.vertices.iter().map(FieldElement::to_f64).collect()
    }

    /// Graphviz rendering; the root is drawn as a double circle.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph orbit {\n  rankdir=LR;\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let shape = if i == self.root { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  v{i} [label=\"{:.6}\", shape={shape}];", v.to_f64());
        }
        for e in &self.edges {
            let _ = writeln!(s, "  v{} -> v{} [label=\"{}\"];", e.from, e.to, e.label);
        }
        s.push_str("}\n");
        s
    }

    fn from_unsorted(points: Vec<FieldElement>, edges: Vec<Edge>, root: usize, closed: bool) -> OrbitGraph {
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| points[a].cmp(&points[b]));
        let mut rank = vec![0; points.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        let mut edges: Vec<Edge> =
            edges.into_iter().map(|e| Edge { from: rank[e.from], to: rank[e.to], label: e.label }).collect();
        edges.sort();
        edges.dedup();
        let mut vertices = points;
        let mut slots: Vec<Option<FieldElement>> = vertices.drain(..).map(Some).collect();
        let vertices = order.iter().map(|&i| slots[i].take().unwrap()).collect();
        OrbitGraph { vertices, edges, root: rank[root], closed }
    }

    /// Graph made of the given labelled paths (each a start point and a word), without closure.
    pub fn from_paths(sys: &Bernoulli, root: &FieldElement, paths: &[(FieldElement, Vec<u8>)]) -> Result<OrbitGraph> {
        let mut index: HashMap<FieldElement, usize> = HashMap::new();
        let mut points = vec![];
        let mut edges = vec![];
        let mut intern = |x: &FieldElement, points: &mut Vec<FieldElement>| -> usize {
            *index.entry(x.clone()).or_insert_with(|| {
                points.push(x.clone());
                points.len() - 1
            })
        };
        let r = intern(root, &mut points);
        for (start, word) in paths {
            let trace = sys
                .trace_word(word, start)
                .ok_or_else(|| Error::Domain(format!("word {:?} leaves the domain", word)))?;
            let mut prev = intern(&trace[0], &mut points);
            for (k, x) in trace.iter().enumerate().skip(1) {
                let cur = intern(x, &mut points);
                edges.push(Edge { from: prev, to: cur, label: word[k - 1] });
                prev = cur;
            }
        }
        Ok(OrbitGraph::from_unsorted(points, edges, r, false))
    }
}

/// Orbit of `x` under all applicable maps, stopping at `limits.max_vertices`.
pub fn finite_orbit(sys: &Bernoulli, x: &FieldElement, limits: &OrbitLimits) -> Result<OrbitGraph> {
    if !sys.in_unit(x) {
        return Err(Error::Domain(format!("x = {:.6} is not in [0,1]", x.to_f64())));
    }
    let mut index: HashMap<FieldElement, usize> = HashMap::new();
    let mut points = vec![x.clone()];
    index.insert(x.clone(), 0);
    let mut edges = vec![];
    let mut queue = VecDeque::from([0usize]);
    let mut closed = true;
    while let Some(i) = queue.pop_front() {
        for letter in 0..2u8 {
            if !sys.applicable(letter, &points[i]) {
                continue;
            }
            let y = sys.g(letter, &points[i]);
            let j = match index.get(&y) {
                Some(&j) => j,
                None => {
                    if points.len() >= limits.max_vertices {
                        closed = false;
                        continue;
                    }
                    if y.height_bits() > limits.max_height_bits {
                        return Err(Error::ResourceCap(format!(
                            "coefficient height above {} bits",
                            limits.max_height_bits
                        )));
                    }
                    points.push(y.clone());
                    index.insert(y, points.len() - 1);
                    queue.push_back(points.len() - 1);
                    points.len() - 1
                }
            };
            edges.push(Edge { from: i, to: j, label: letter });
        }
    }
    Ok(OrbitGraph::from_unsorted(points, edges, 0, closed))
}

/// Successor matrix of a closed orbit.
pub fn successor_matrix(g: &OrbitGraph) -> Result<Vec<Vec<u32>>> {
    if !g.closed {
        return Err(Error::OpenGraph);
    }
    Ok(g.adjacency())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraics::roots::rat;
    use crate::algebraics::{named_parameter, AlgebraicNumber, NamedKind};

    fn golden() -> Bernoulli {
        Bernoulli::new(&named_parameter(NamedKind::Multinacci, 2).unwrap()).unwrap()
    }

    #[test]
    fn golden_half() {
        let sys = golden();
        let half = sys.field().parse("1/2").unwrap();
        let g = finite_orbit(&sys, &half, &OrbitLimits::default()).unwrap();
        assert!(g.closed);
        assert_eq!(g.len(), 5);
        assert_eq!(g.vertices[g.root], half);
        let s = successor_matrix(&g).unwrap();
        let mut rows: Vec<u32> = s.iter().map(|r| r.iter().sum()).collect();
        rows.sort();
        assert_eq!(rows, vec![1, 1, 1, 1, 2]);
        for (i, v) in g.vertices.iter().enumerate() {
            assert_eq!(g.out_degree(i), if sys.in_overlap(v) { 2 } else { 1 });
        }
        let dot = g.to_dot();
        assert!(dot.contains("doublecircle") && dot.contains("label=\"0\""));
    }

    #[test]
    fn fixed_point_zero() {
        let sys = golden();
        let g = finite_orbit(&sys, &sys.field().zero(), &OrbitLimits::default()).unwrap();
        assert_eq!(successor_matrix(&g).unwrap(), vec![vec![1]]);
    }

    #[test]
    fn rational_parameter_does_not_close() {
        let sys = Bernoulli::new(&AlgebraicNumber::from_rational(&rat(3, 2))).unwrap();
        let half = sys.field().parse("1/2").unwrap();
        let g = finite_orbit(&sys, &half, &OrbitLimits::default()).unwrap();
        assert!(!g.closed);
        assert_eq!(g.len(), DEFAULT_MAX_VERTICES);
        assert!(successor_matrix(&g).is_err());
    }

    #[test]
    fn height_cap() {
        let sys = Bernoulli::new(&AlgebraicNumber::from_rational(&rat(3, 2))).unwrap();
        let half = sys.field().parse("1/2").unwrap();
        let lim = OrbitLimits { max_vertices: 100_000, max_height_bits: 8 };
        assert!(matches!(finite_orbit(&sys, &half, &lim), Err(Error::ResourceCap(_))));
    }
}
