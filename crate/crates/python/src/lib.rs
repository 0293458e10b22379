//! Python bindings for the core library.
//!
//! The surface mirrors the CLI: complexes travel as a `Complex` class,
//! polynomials, operators, fractions, and points travel as the same string
//! literals the command line accepts (`"3*x^2*y - 1/2*w"`, `"x1^2 d1^[3]"`,
//! `"x^3/w^2"`, `"1,1,0,0"`), and structured results come back as dicts.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use sr_dmod_core::ddm::{self, InverseOutcome, RationalPoint};
use sr_dmod_core::field::FieldSpec;
use sr_dmod_core::localization::{candidate_ass_primes, cech_cohomology, saturate};
use sr_dmod_core::parse;
use sr_dmod_core::sralgebra::{ExponentVector, Polynomial, SrRing};
use sr_dmod_core::weyl::DiffOp;
use sr_dmod_core::{
    complex_from_json, complex_to_json, holonomy, idealizer, CheckOutcome, DdmContext, Face,
    SimplicialComplex, TSpaceVerdict,
};

fn err(e: sr_dmod_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field_of(char_p: u32) -> PyResult<FieldSpec> {
    FieldSpec::from_char(char_p).map_err(err)
}

fn outcome_dict<'py>(py: Python<'py>, o: &CheckOutcome) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new_bound(py);
    match o {
        CheckOutcome::Pass => d.set_item("verdict", "PASS")?,
        CheckOutcome::Fail(witness) => {
            d.set_item("verdict", "FAIL")?;
            d.set_item("witness", witness)?;
        }
        CheckOutcome::NotApplicable(reason) => {
            d.set_item("verdict", "NA")?;
            d.set_item("reason", reason)?;
        }
    }
    Ok(d)
}

fn face_labels(c: &SimplicialComplex, mask: Face) -> Vec<String> {
    mask.vertices().map(|v| c.label(v).to_string()).collect()
}

fn monomial_string(e: &ExponentVector, labels: &[String]) -> String {
    let field = FieldSpec::Rationals;
    Polynomial::monomial_in(labels.len(), e.clone(), field.one(), field).render(labels)
}

/// A simplicial complex on labeled vertices, the combinatorial side of every
/// computation in this package.
#[pyclass(module = "sr_dmod_py")]
#[derive(Clone)]
struct Complex {
    inner: SimplicialComplex,
}

#[pymethods]
impl Complex {
    /// Build from candidate facets (0-based vertex lists); redundant faces
    /// are dropped and unused vertices removed.
    #[new]
    #[pyo3(signature = (n, facets, labels=None))]
    fn new(n: usize, facets: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> PyResult<Self> {
        let faces: Vec<Face> = facets
            .into_iter()
            .map(Face::from_vertices)
            .collect();
        SimplicialComplex::from_facets(n, &faces, labels)
            .map(|inner| Complex { inner })
            .map_err(err)
    }

    /// The worked four-vertex example: a triangle boundary x,y,z plus an
    /// isolated vertex w.
    #[staticmethod]
    fn tripp() -> Complex {
        Complex {
            inner: sr_dmod_core::complex::tripp(),
        }
    }

    /// Two disjoint edges — the smallest graph that fails separability.
    #[staticmethod]
    fn two_disjoint_edges() -> Complex {
        Complex {
            inner: sr_dmod_core::complex::two_disjoint_edges(),
        }
    }

    #[staticmethod]
    #[pyo3(signature = (n, labels=None))]
    fn full_simplex(n: usize, labels: Option<Vec<String>>) -> PyResult<Complex> {
        SimplicialComplex::full_simplex(n, labels)
            .map(|inner| Complex { inner })
            .map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Complex> {
        complex_from_json(text)
            .map(|inner| Complex { inner })
            .map_err(err)
    }

    fn to_json(&self) -> String {
        complex_to_json(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn facets(&self) -> Vec<Vec<usize>> {
        self.inner
            .facets()
            .map(|f| f.vertices().collect())
            .collect()
    }

    /// True/False for the separability verdict; None when the face ideal is
    /// zero (full simplex) and the condition is vacuous.
    fn is_t_space(&self) -> Option<bool> {
        match self.inner.is_t_space() {
            TSpaceVerdict::TSpace => Some(true),
            TSpaceVerdict::NotTSpace => Some(false),
            TSpaceVerdict::NotApplicable => None,
        }
    }

    fn is_face(&self, vertices: Vec<usize>) -> bool {
        self.inner.is_face(Face::from_vertices(vertices))
    }

    fn faces(&self) -> Vec<Vec<usize>> {
        self.inner
            .faces()
            .into_iter()
            .map(|f| f.vertices().collect())
            .collect()
    }

    fn f_vector(&self) -> Vec<u64> {
        self.inner.f_vector()
    }

    fn link(&self, vertices: Vec<usize>) -> PyResult<Complex> {
        self.inner
            .link(Face::from_vertices(vertices))
            .map(|inner| Complex { inner })
            .map_err(err)
    }

    /// Squarefree generators of the face ideal, rendered with the labels.
    fn face_ideal(&self) -> PyResult<Vec<String>> {
        let ring = SrRing::new(self.inner.clone(), FieldSpec::Rationals);
        let labels = self.inner.labels();
        Ok(ring
            .face_ideal_generators()
            .map_err(err)?
            .iter()
            .map(|g| monomial_string(g, labels))
            .collect())
    }

    /// Minimal primes of the face ideal, each as a list of variable labels.
    fn minimal_primes(&self) -> Vec<Vec<String>> {
        self.inner
            .minimal_primes_masks()
            .into_iter()
            .map(|p| face_labels(&self.inner, p))
            .collect()
    }

    /// Hilbert function of the quotient ring at degree `j`.
    fn hilbert(&self, j: u32) -> u64 {
        SrRing::new(self.inner.clone(), FieldSpec::Rationals).hilbert(j)
    }

    /// Hilbert values H(0), …, H(j_max).
    fn hilbert_values(&self, j_max: u32) -> Vec<u64> {
        let ring = SrRing::new(self.inner.clone(), FieldSpec::Rationals);
        (0..=j_max).map(|j| ring.hilbert(j)).collect()
    }

    /// Accumulated Hilbert values Σ_{j≤i} H(j) for i ≤ i_max.
    fn hilbert_partial_sums(&self, i_max: u32) -> Vec<u64> {
        let ring = SrRing::new(self.inner.clone(), FieldSpec::Rationals);
        (0..=i_max).map(|i| ring.iterated_hilbert(i)).collect()
    }

    /// Operator monomials x^a d^[t] of the differential operator ring with
    /// |a| + |t| ≤ max_degree, rendered.
    fn dr_basis(&self, max_degree: u32) -> Vec<String> {
        let labels = self.inner.labels();
        idealizer::dr_basis_up_to(&self.inner, max_degree)
            .iter()
            .map(|m| m.render(labels))
            .collect()
    }

    /// Dimension of the span of operator monomials of total degree ≤ i.
    fn bernstein_dim(&self, i: u32) -> usize {
        holonomy::bernstein_dim(&self.inner, i)
    }

    /// Membership test for x^a d^[t] in the operator ring: for every minimal
    /// prime P, either supp(a) meets P or supp(t) misses P.
    fn traves_member(&self, a: Vec<u32>, t: Vec<u32>) -> PyResult<bool> {
        let n = self.inner.n();
        if a.len() != n || t.len() != n {
            return Err(PyValueError::new_err(format!(
                "exponent vectors must have length {n}"
            )));
        }
        Ok(idealizer::traves_member(
            &self.inner,
            &ExponentVector(a),
            &ExponentVector(t),
        ))
    }

    /// Saturation 0 :_R f^∞ for a monomial f: (rendered generators, the
    /// exponent at which the colon chain stabilizes).
    fn saturation(&self, f: &str) -> PyResult<(Vec<String>, u32)> {
        let labels = self.inner.labels().to_vec();
        let f = parse::parse_monomial(f, &labels).map_err(err)?;
        let ctx = saturate(&self.inner, FieldSpec::Rationals, &f).map_err(err)?;
        let gens = ctx
            .saturation_generators()
            .iter()
            .map(|g| monomial_string(g, &labels))
            .collect();
        Ok((gens, ctx.sat_exponent()))
    }

    fn __repr__(&self) -> String {
        format!(
            "Complex(n={}, facets={:?})",
            self.inner.n(),
            self.inner
                .facets()
                .map(|f| f.vertices().collect::<Vec<_>>())
                .collect::<Vec<_>>()
        )
    }

    fn __eq__(&self, other: &Complex) -> bool {
        self.inner == other.inner
    }
}

/// Normal form of an operator in the quotient of the operator ring by the
/// left ideal of a rational point (coordinates as in "1,1,0,0").
#[pyfunction]
#[pyo3(signature = (complex, point, op, char=0))]
fn normal_form(complex: &Complex, point: &str, op: &str, char: u32) -> PyResult<String> {
    let field = field_of(char)?;
    let labels = complex.inner.labels().to_vec();
    let coords = parse::parse_point(point, field).map_err(err)?;
    let pt = RationalPoint::new(&complex.inner, field, coords).map_err(err)?;
    let op = parse::parse_operator(op, &labels, field).map_err(err)?;
    let ctx = DdmContext::new(complex.inner.clone(), pt).map_err(err)?;
    Ok(ctx.normal_form_diffop(&op).map_err(err)?.render(&labels))
}

/// Run the unit search for the class of `op` in the quotient at `point`.
/// Returns {"invertible": bool} plus either the verified inverse or the
/// failure witness.
#[pyfunction]
#[pyo3(signature = (complex, point, op, char=0))]
fn find_inverse(
    py: Python<'_>,
    complex: &Complex,
    point: &str,
    op: &str,
    char: u32,
) -> PyResult<Py<PyDict>> {
    let field = field_of(char)?;
    let labels = complex.inner.labels().to_vec();
    let coords = parse::parse_point(point, field).map_err(err)?;
    let pt = RationalPoint::new(&complex.inner, field, coords).map_err(err)?;
    let op = parse::parse_operator(op, &labels, field).map_err(err)?;
    let ctx = DdmContext::new(complex.inner.clone(), pt).map_err(err)?;
    let w = ctx.normal_form_diffop(&op).map_err(err)?;
    let out = PyDict::new_bound(py);
    match ctx.find_inverse(&w).map_err(err)? {
        InverseOutcome::Inverse { f } => {
            let product = ctx.polynomial_times(&f, &w);
            let verified = product
                .sub(&ddm::DdmElement::one(f.n(), ctx.field()))
                .is_zero();
            out.set_item("invertible", true)?;
            out.set_item("inverse", f.render(&labels))?;
            out.set_item("verified", verified)?;
        }
        InverseOutcome::Failure(wit) => {
            let witness = PyDict::new_bound(py);
            witness.set_item("element", wit.w.render(&labels))?;
            witness.set_item("obstruction_order", monomial_string(&wit.t_l, &labels))?;
            witness.set_item("reduced", wit.reduced.render(&labels))?;
            out.set_item("invertible", false)?;
            out.set_item("witness", witness)?;
        }
    }
    Ok(out.unbind())
}

/// Image dimensions of the operator filtrations in the quotient at `point`,
/// with the accumulated Hilbert values they are compared against.
#[pyfunction]
#[pyo3(signature = (complex, point, i_max, char=0))]
fn filtration_dims(
    py: Python<'_>,
    complex: &Complex,
    point: &str,
    i_max: u32,
    char: u32,
) -> PyResult<Py<PyDict>> {
    let field = field_of(char)?;
    let coords = parse::parse_point(point, field).map_err(err)?;
    let pt = RationalPoint::new(&complex.inner, field, coords).map_err(err)?;
    let report = ddm::filt_dim_check(&complex.inner, &pt, i_max).map_err(err)?;
    let out = PyDict::new_bound(py);
    out.set_item("order_dims", report.order_dims)?;
    out.set_item("bernstein_dims", report.bernstein_dims)?;
    out.set_item("hilbert_partial_sums", report.iterated_hilbert)?;
    out.set_item("order_matches_sums", outcome_dict(py, &report.verdict)?)?;
    Ok(out.unbind())
}

/// Apply an operator to a fraction g/f^k in the localization at the monomial
/// `f`. Returns the canonical input and result fractions.
#[pyfunction]
#[pyo3(signature = (complex, f, op, fraction, char=0))]
fn act(
    py: Python<'_>,
    complex: &Complex,
    f: &str,
    op: &str,
    fraction: &str,
    char: u32,
) -> PyResult<Py<PyDict>> {
    let field = field_of(char)?;
    let labels = complex.inner.labels().to_vec();
    let f = parse::parse_monomial(f, &labels).map_err(err)?;
    let ctx = saturate(&complex.inner, field, &f).map_err(err)?;
    let op = parse::parse_operator(op, &labels, field).map_err(err)?;
    let (num, k) = parse::parse_fraction_literal(fraction, &labels, field, &f).map_err(err)?;
    let u = ctx.fraction(num, k);
    let result = ctx.act(&op, &u).map_err(err)?;
    let out = PyDict::new_bound(py);
    out.set_item("input", ctx.render_fraction(&u))?;
    out.set_item("result", ctx.render_fraction(&result))?;
    out.set_item("denominator_exponent", result.k)?;
    Ok(out.unbind())
}

/// Čech cohomology table over the multidegree box [lo, hi]^n for the ideal
/// generated by comma-separated monomials, plus candidate associated primes
/// per cohomological degree.
#[pyfunction]
#[pyo3(signature = (complex, ideal, lo=-4, hi=4, char=0))]
fn cech(
    py: Python<'_>,
    complex: &Complex,
    ideal: &str,
    lo: i32,
    hi: i32,
    char: u32,
) -> PyResult<Py<PyDict>> {
    let field = field_of(char)?;
    let labels = complex.inner.labels().to_vec();
    let gens: Vec<ExponentVector> = ideal
        .split(',')
        .map(|m| parse::parse_monomial(m.trim(), &labels))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let comp = cech_cohomology(&complex.inner, field, &gens, lo, hi).map_err(err)?;
    let mut table = Vec::new();
    for ((j, m), d) in comp.table() {
        let row = PyDict::new_bound(py);
        row.set_item("j", j)?;
        row.set_item("multidegree", m)?;
        row.set_item("dim", d)?;
        table.push(row.unbind());
    }
    let mut primes = Vec::new();
    for j in 0..=gens.len() {
        let ps: Vec<Vec<String>> = candidate_ass_primes(&comp, j)
            .into_iter()
            .map(|p| face_labels(&complex.inner, p))
            .collect();
        let row = PyDict::new_bound(py);
        row.set_item("j", j)?;
        row.set_item("primes", ps)?;
        primes.push(row.unbind());
    }
    let out = PyDict::new_bound(py);
    out.set_item("table", table)?;
    out.set_item("candidate_primes", primes)?;
    Ok(out.unbind())
}

/// Growth data for the accumulated-Hilbert filtration: level dimensions, the
/// Krull dimension r, the smallest C with dims[i] ≤ C·i^r, the leading
/// coefficient, and the composition-length bound C·r!.
#[pyfunction]
#[pyo3(signature = (complex, i_max=8, char=0))]
fn growth(py: Python<'_>, complex: &Complex, i_max: u32, char: u32) -> PyResult<Py<PyDict>> {
    let field = field_of(char)?;
    let report = holonomy::r_filtration_report(&complex.inner, field, i_max).map_err(err)?;
    let out = PyDict::new_bound(py);
    out.set_item("dims", report.dims)?;
    out.set_item("r", report.r)?;
    out.set_item("c_bound", report.c_bound.to_string())?;
    out.set_item("leading", report.leading.to_string())?;
    out.set_item("length_bound", report.length_bound.to_string())?;
    out.set_item("verdict", outcome_dict(py, &report.verdict)?)?;
    Ok(out.unbind())
}

/// Check that the localized filtration at the monomial `f` absorbs the
/// diagonal operators up to the given indices.
#[pyfunction]
#[pyo3(signature = (complex, f, i_max=3, t_max=3, char=0))]
fn localized_filtration(
    py: Python<'_>,
    complex: &Complex,
    f: &str,
    i_max: u32,
    t_max: u32,
    char: u32,
) -> PyResult<Py<PyDict>> {
    let field = field_of(char)?;
    let labels = complex.inner.labels().to_vec();
    let f = parse::parse_monomial(f, &labels).map_err(err)?;
    let outcome =
        holonomy::rf_filtration_check(&complex.inner, field, &f, i_max, t_max).map_err(err)?;
    Ok(outcome_dict(py, &outcome)?.unbind())
}

/// Apply an operator literal to a polynomial literal over the given variable
/// labels; returns the rendered image.
#[pyfunction]
#[pyo3(signature = (op, poly, labels, char=0))]
fn apply_operator(op: &str, poly: &str, labels: Vec<String>, char: u32) -> PyResult<String> {
    let field = field_of(char)?;
    let op = parse::parse_operator(op, &labels, field).map_err(err)?;
    let p = parse::parse_polynomial(poly, &labels, field).map_err(err)?;
    Ok(op.apply(&p).render(&labels))
}

/// Compose two operator literals (first ∘ second) over the given labels;
/// returns the rendered normal form.
#[pyfunction]
#[pyo3(signature = (first, second, labels, char=0))]
fn compose_operators(first: &str, second: &str, labels: Vec<String>, char: u32) -> PyResult<String> {
    let field = field_of(char)?;
    let a = parse::parse_operator(first, &labels, field).map_err(err)?;
    let b = parse::parse_operator(second, &labels, field).map_err(err)?;
    Ok(a.compose(&b).render(&labels))
}

/// Commutator [first, second] of two operator literals, rendered.
#[pyfunction]
#[pyo3(signature = (first, second, labels, char=0))]
fn commutator(first: &str, second: &str, labels: Vec<String>, char: u32) -> PyResult<String> {
    let field = field_of(char)?;
    let a = parse::parse_operator(first, &labels, field).map_err(err)?;
    let b = parse::parse_operator(second, &labels, field).map_err(err)?;
    Ok(a.commutator(&b).render(&labels))
}

/// Every complex on at most n vertices (n ≤ 8), one per facet antichain.
#[pyfunction]
fn exhaustive_complexes(n: usize) -> PyResult<Vec<Complex>> {
    Ok(sr_dmod_core::exhaustive_complexes(n)
        .map_err(err)?
        .into_iter()
        .map(|inner| Complex { inner })
        .collect())
}

/// Seeded random complexes on at most n_max vertices.
#[pyfunction]
fn random_complexes(n_max: usize, count: usize, seed: u64) -> PyResult<Vec<Complex>> {
    Ok(sr_dmod_core::random_complexes(n_max, count, seed)
        .map_err(err)?
        .into_iter()
        .map(|inner| Complex { inner })
        .collect())
}

/// Seeded random complexes that pass the separability test.
#[pyfunction]
fn random_t_spaces(n_max: usize, count: usize, seed: u64) -> PyResult<Vec<Complex>> {
    Ok(sr_dmod_core::random_t_spaces(n_max, count, seed)
        .map_err(err)?
        .into_iter()
        .map(|inner| Complex { inner })
        .collect())
}

/// A worked identity, exposed for quick sanity checks from Python:
/// d^[t](x^k) = C(k,t)·x^{k−t} in one variable.
#[pyfunction]
#[pyo3(signature = (k, t, char=0))]
fn divided_power_action(k: u32, t: u32, char: u32) -> PyResult<String> {
    let field = field_of(char)?;
    let labels = vec!["x".to_string()];
    let op = DiffOp::from_monomial(
        sr_dmod_core::OperatorMonomial {
            x: ExponentVector::zero(1),
            d: ExponentVector(vec![t]),
        },
        field.one(),
        field,
    );
    let p = Polynomial::monomial_in(1, ExponentVector(vec![k]), field.one(), field);
    Ok(op.apply(&p).render(&labels))
}

#[pymodule]
fn sr_dmod_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Complex>()?;
    m.add_function(wrap_pyfunction!(normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(find_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(filtration_dims, m)?)?;
    m.add_function(wrap_pyfunction!(act, m)?)?;
    m.add_function(wrap_pyfunction!(cech, m)?)?;
    m.add_function(wrap_pyfunction!(growth, m)?)?;
    m.add_function(wrap_pyfunction!(localized_filtration, m)?)?;
    m.add_function(wrap_pyfunction!(apply_operator, m)?)?;
    m.add_function(wrap_pyfunction!(compose_operators, m)?)?;
    m.add_function(wrap_pyfunction!(commutator, m)?)?;
    m.add_function(wrap_pyfunction!(exhaustive_complexes, m)?)?;
    m.add_function(wrap_pyfunction!(random_complexes, m)?)?;
    m.add_function(wrap_pyfunction!(random_t_spaces, m)?)?;
    m.add_function(wrap_pyfunction!(divided_power_action, m)?)?;
    Ok(())
}
