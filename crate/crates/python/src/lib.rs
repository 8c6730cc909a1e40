//! Python bindings: `import bernlab`.

use bernlab::algebraics::{classify_polynomial, parse_named, AlgebraicNumber, IntPolynomial, NumberClass};
use bernlab::curves::{curve_intersection, rational_form, t_star, ParamRange};
use bernlab::density::{self, Histogram as CoreHistogram};
use bernlab::orbits::{
    fibonacci_mixture, finite_orbit, growth_rate, local_dimension, successor_matrix, Bernoulli, OrbitLimits,
};
use bernlab::unique::{self, central_catalog, central_point_params, third_catalog, two_address_scan, TwoAddressReport};
use bernlab::words::BitSeq;
use bernlab::Error;
use pyo3::exceptions::{PyMemoryError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: Error) -> PyErr {
    if e.is_resource() {
        PyMemoryError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn beta_of(spec: &str) -> Result<AlgebraicNumber, Error> {
    if let Some(named) = parse_named(spec) {
        return named;
    }
    AlgebraicNumber::largest_root(&IntPolynomial::parse(spec)?)
}

fn seq(s: &str) -> PyResult<BitSeq> {
    BitSeq::parse(s).map_err(err)
}

fn range_of(lo: f64, hi: f64) -> PyResult<ParamRange> {
    let q = |x: f64| num_rational::BigRational::from_float(x).ok_or_else(|| PyValueError::new_err("non-finite bound"));
    let (a, b) = (q(lo)?, q(hi)?);
    if a >= b {
        return Err(PyValueError::new_err(format!("empty range ({lo}, {hi}]")));
    }
    Ok(ParamRange::rational(&a, &b))
}

fn class_dict<'py>(py: Python<'py>, c: &NumberClass) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("class", c.tag.as_str())?;
    d.set_item("pisot", c.flags.pisot)?;
    d.set_item("salem", c.flags.salem)?;
    d.set_item("perron", c.flags.perron)?;
    d.set_item("weak_perron", c.flags.weak_perron)?;
    d.set_item("garsia", c.flags.garsia)?;
    d.set_item("algebraic_integer", c.flags.algebraic_integer)?;
    d.set_item("conjugate_moduli", c.conjugate_moduli.clone())?;
    d.set_item("witness", c.witness.clone())?;
    Ok(d)
}

/// A real algebraic number given by its minimal polynomial and an isolating interval.
#[pyclass(frozen, name = "Algebraic")]
struct Algebraic(AlgebraicNumber);

#[pymethods]
impl Algebraic {
    /// Largest real root of a polynomial, or a named parameter (`tau3`, `phi2`, `golden`).
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        beta_of(spec).map(Algebraic).map_err(err)
    }

    #[getter]
    fn minpoly(&self) -> String {
        self.0.minpoly().to_string()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn __float__(&self) -> f64 {
        self.0.to_f64()
    }

    fn reciprocal(&self) -> PyResult<Algebraic> {
        self.0.reciprocal().map(Algebraic).map_err(err)
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let c = bernlab::algebraics::classify(&self.0).map_err(err)?;
        class_dict(py, &c)
    }

    fn __repr__(&self) -> String {
        format!("Algebraic({:.12}, minpoly={})", self.0.to_f64(), self.0.minpoly())
    }
}

/// Classify the largest real root of an irreducible polynomial.
#[pyfunction]
fn classify<'py>(py: Python<'py>, poly: &str) -> PyResult<Bound<'py, PyDict>> {
    let p = IntPolynomial::parse(poly).map_err(err)?;
    let (root, c) = classify_polynomial(&p).map_err(err)?;
    let d = class_dict(py, &c)?;
    d.set_item("root", root.to_f64())?;
    Ok(d)
}

/// Finite orbit of a point of Q(β) under the multivalued Bernoulli map.
#[pyclass(frozen)]
struct Orbit {
    #[pyo3(get)]
    vertices: Vec<f64>,
    #[pyo3(get)]
    exprs: Vec<String>,
    #[pyo3(get)]
    edges: Vec<(usize, usize, u8)>,
    #[pyo3(get)]
    root: usize,
    #[pyo3(get)]
    closed: bool,
    /// Enclosure of the growth rate, when the orbit closed.
    #[pyo3(get)]
    growth_rate: Option<(f64, f64)>,
    #[pyo3(get)]
    local_dimension: Option<(f64, f64)>,
    dot: String,
}

#[pymethods]
impl Orbit {
    fn to_dot(&self) -> String {
        self.dot.clone()
    }

    fn __len__(&self) -> usize {
        self.vertices.len()
    }

    fn __repr__(&self) -> String {
        format!("Orbit({} vertices, closed={})", self.vertices.len(), self.closed)
    }
}

#[pyfunction]
#[pyo3(signature = (beta, point, max_vertices = bernlab::orbits::graph::DEFAULT_MAX_VERTICES))]
fn orbit(beta: &str, point: &str, max_vertices: usize) -> PyResult<Orbit> {
    let beta = beta_of(beta).map_err(err)?;
    let sys = Bernoulli::new(&beta).map_err(err)?;
    let x = sys.field().parse(point).map_err(err)?;
    let g = finite_orbit(&sys, &x, &OrbitLimits::with_max_vertices(max_vertices)).map_err(err)?;
    let (mut rate, mut dim) = (None, None);
    if g.closed {
        let gr = growth_rate(&successor_matrix(&g).map_err(err)?).map_err(err)?;
        let d = local_dimension(2, &beta, &gr.enclosure).map_err(err)?;
        rate = Some((gr.enclosure.lo, gr.enclosure.hi));
        dim = Some((d.lo, d.hi));
    }
    Ok(Orbit {
        vertices: g.vertices.iter().map(|v| v.to_f64()).collect(),
        exprs: g.vertices.iter().map(|v| v.to_string()).collect(),
        edges: g.edges.iter().map(|e| (e.from, e.to, e.label)).collect(),
        root: g.root,
        closed: g.closed,
        growth_rate: rate,
        local_dimension: dim,
        dot: g.to_dot(),
    })
}

/// Words of the k-th Fibonacci cycle mixture at the golden mean.
#[pyfunction]
fn fibonacci_words(k: usize) -> PyResult<Vec<String>> {
    let m = fibonacci_mixture(k, &OrbitLimits::default()).map_err(err)?;
    Ok(m.words.iter().map(|w| w.to_string()).collect())
}

/// Entry parameter t* of an itinerary: (value, minimal polynomial).
#[pyfunction(name = "t_star")]
fn t_star_py(b: &str) -> PyResult<(f64, String)> {
    let t = t_star(&seq(b)?).map_err(err)?;
    Ok((t.to_f64(), t.minpoly().to_string_var("t")))
}

/// Address curve y_b(t).
#[pyfunction]
fn curve(b: &str, t: f64) -> PyResult<f64> {
    Ok(rational_form(&seq(b)?).eval_f64(t))
}

/// Intersections of two address curves on (lo, hi].
#[pyfunction]
#[pyo3(signature = (b, c, lo = 0.5, hi = 0.6180339887498949))]
fn intersect<'py>(py: Python<'py>, b: &str, c: &str, lo: f64, hi: f64) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let reps = curve_intersection(&seq(b)?, &seq(c)?, &range_of(lo, hi)?).map_err(err)?;
    reps.iter()
        .map(|r| {
            let d = class_dict(py, &r.number_class)?;
            d.set_item("s", r.s.to_f64())?;
            d.set_item("z", r.z.to_f64())?;
            d.set_item("t_minpoly", r.t_minpoly().to_string_var("t"))?;
            d.set_item("beta_minpoly", r.beta_minpoly().to_string())?;
            d.set_item("inside_overlap", r.inside_overlap)?;
            Ok(d)
        })
        .collect()
}

/// Histogram approximation of the Bernoulli convolution.
#[pyclass(frozen)]
struct Histogram(CoreHistogram);

#[pymethods]
impl Histogram {
    #[new]
    #[pyo3(signature = (t, bins = 4000, iterations = None))]
    fn new(py: Python<'_>, t: f64, bins: usize, iterations: Option<usize>) -> PyResult<Self> {
        py.detach(|| density::approximate(t, bins, iterations)).map(Histogram).map_err(err)
    }

    #[getter]
    fn t(&self) -> f64 {
        self.0.t
    }

    #[getter]
    fn iterations(&self) -> usize {
        self.0.iterations
    }

    #[getter]
    fn mass(&self) -> Vec<f64> {
        self.0.mass.clone()
    }

    /// Densities with mean 1.
    fn standardized(&self) -> Vec<f64> {
        self.0.standardized()
    }

    fn cdf(&self, x: f64) -> f64 {
        self.0.cdf(x)
    }

    fn interval_mass(&self, a: f64, b: f64) -> f64 {
        self.0.interval_mass(a, b)
    }

    fn quantile_residual(&self, b: &str) -> PyResult<f64> {
        density::quantile_residual(&seq(b)?, &self.0).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.bins()
    }
}

/// Number of hole words of each length 1..=depth.
#[pyfunction]
#[pyo3(signature = (b, depth = 12))]
fn hole_counts(b: &str, depth: usize) -> PyResult<Vec<u64>> {
    let counts = unique::hole_counts(&seq(b)?, depth).map_err(err)?;
    counts
        .iter()
        .map(|c| u64::try_from(c).map_err(|_| PyValueError::new_err("count exceeds u64")))
        .collect()
}

fn report_dict<'py>(py: Python<'py>, r: &TwoAddressReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("t", r.t.to_f64())?;
    d.set_item("y", r.y.to_f64())?;
    d.set_item("t_minpoly", r.t.minpoly().to_string_var("t"))?;
    d.set_item("count", r.count.as_str())?;
    d.set_item("lower", r.lower.to_string())?;
    d.set_item("upper", r.upper.to_string())?;
    d.set_item("verified", r.verified)?;
    d.set_item("class", r.number_class.tag.as_str())?;
    Ok(d)
}

/// Parameters in (lo, hi] with two-address or countable-address points from the 1/3-catalog.
#[pyfunction]
#[pyo3(signature = (lo, hi, k_max = 6))]
fn scan_two_address<'py>(py: Python<'py>, lo: f64, hi: f64, k_max: usize) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let range = range_of(lo, hi)?;
    let reps = py.detach(|| two_address_scan(&range, &third_catalog(k_max))).map_err(err)?;
    reps.iter().map(|r| report_dict(py, r)).collect()
}

/// Parameters in (lo, hi] where 1/2 has exactly two addresses.
#[pyfunction]
#[pyo3(signature = (lo, hi, n_max = 6))]
fn central_points<'py>(py: Python<'py>, lo: f64, hi: f64, n_max: usize) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let range = range_of(lo, hi)?;
    let reps = py.detach(|| central_point_params(&range, &central_catalog(n_max))).map_err(err)?;
    reps.iter().map(|r| report_dict(py, r)).collect()
}

#[pymodule]
#[pyo3(name = "bernlab")]
fn bernlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Algebraic>()?;
    m.add_class::<Orbit>()?;
    m.add_class::<Histogram>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(orbit, m)?)?;
    m.add_function(wrap_pyfunction!(fibonacci_words, m)?)?;
    m.add_function(wrap_pyfunction!(t_star_py, m)?)?;
    m.add_function(wrap_pyfunction!(curve, m)?)?;
    m.add_function(wrap_pyfunction!(intersect, m)?)?;
    m.add_function(wrap_pyfunction!(hole_counts, m)?)?;
    m.add_function(wrap_pyfunction!(scan_two_address, m)?)?;
    m.add_function(wrap_pyfunction!(central_points, m)?)?;
    Ok(())
}
