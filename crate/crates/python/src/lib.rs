//! Python bindings: groups, complexes and butterflies, moved across the
//! boundary as canonical JSON or invariant-factor shorthand.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use twoterm::butterfly::{self as bf, Butterfly};
use twoterm::derived::{biext_groups, derived_tensor};
use twoterm::exactness::ButterflyShortSeq;
use twoterm::fgab::FgAbGroup;
use twoterm::fixtures;
use twoterm::json::{self, Document, Kind, ReadError};
use twoterm::twocomplex::TwoTermComplex;

fn math_err(e: twoterm::Error) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn read_err(e: ReadError) -> PyErr {
    match e {
        ReadError::Math(e) => math_err(e),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parse(text: &str, kind: Kind) -> PyResult<Document> {
    json::parse_document(text, Some(kind)).map_err(read_err)
}

fn shorthand(s: &str) -> PyResult<FgAbGroup> {
    s.parse().map_err(PyValueError::new_err)
}

#[pyclass(name = "Group", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGroup(FgAbGroup);

#[pymethods]
impl PyGroup {
    /// From shorthand such as `"Z/2+Z/4+Z"` or `"0"`.
    #[new]
    fn new(shorthand_text: &str) -> PyResult<Self> {
        shorthand(shorthand_text).map(PyGroup)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match parse(text, Kind::Group)? {
            Document::Group(g) => Ok(PyGroup(g)),
            _ => unreachable!(),
        }
    }

    fn to_json(&self) -> String {
        json::document_to_string(&Document::Group(self.0.clone()))
    }

    /// `(free rank, torsion coefficients)`.
    fn invariant_factors(&self) -> (usize, Vec<String>) {
        let f = self.0.invariant_factors();
        (f.rank, f.torsion.iter().map(ToString::to_string).collect())
    }

    /// `None` for infinite groups.
    fn order(&self) -> Option<String> {
        self.0.order().map(|o| o.to_string())
    }

    fn is_isomorphic(&self, other: &PyGroup) -> bool {
        self.0.is_isomorphic(&other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Group('{}')", self.0)
    }
}

#[pyclass(name = "Complex", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyComplex(TwoTermComplex);

#[pymethods]
impl PyComplex {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match parse(text, Kind::Complex)? {
            Document::Complex(k) => Ok(PyComplex(k)),
            _ => unreachable!(),
        }
    }

    /// `K2`, `E2`, `F2` or `zero`.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        fixtures::complex_by_name(name)
            .map(PyComplex)
            .ok_or_else(|| PyValueError::new_err(format!("no complex `{name}`")))
    }

    /// `[A →d B]` with `d` given by rows.
    #[staticmethod]
    fn from_parts(deg_m1: &PyGroup, deg_0: &PyGroup, d: Vec<Vec<i64>>) -> PyResult<Self> {
        let (a, b) = (&deg_m1.0, &deg_0.0);
        if d.len() != b.ngens() || d.iter().any(|r| r.len() != a.ngens()) {
            return Err(PyValueError::new_err(format!("d must be {}x{}", b.ngens(), a.ngens())));
        }
        let flat: Vec<i64> = d.concat();
        let m = twoterm::intlinalg::IntMatrix::from_i64(b.ngens(), a.ngens(), &flat);
        TwoTermComplex::from_parts(a, b, m).map(PyComplex).map_err(math_err)
    }

    fn to_json(&self) -> String {
        json::document_to_string(&Document::Complex(self.0.clone()))
    }

    fn deg_m1(&self) -> PyGroup {
        PyGroup(self.0.deg_m1().clone())
    }

    fn deg_0(&self) -> PyGroup {
        PyGroup(self.0.deg_0().clone())
    }

    /// `(H^-1, H^0)`.
    fn homology(&self) -> (PyGroup, PyGroup) {
        let h = self.0.homology();
        (PyGroup(h.h_m1().clone()), PyGroup(h.h0().clone()))
    }

    fn is_acyclic(&self) -> bool {
        self.0.is_acyclic()
    }

    fn identity(&self) -> PyButterfly {
        PyButterfly(Butterfly::identity(&self.0))
    }

    fn zero_to(&self, other: &PyComplex) -> PyButterfly {
        PyButterfly(Butterfly::zero(&self.0, &other.0))
    }

    fn __eq__(&self, other: &PyComplex) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Complex({} → {})", self.0.deg_m1(), self.0.deg_0())
    }
}

#[pyclass(name = "Butterfly", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyButterfly(Butterfly);

#[pymethods]
impl PyButterfly {
    /// Reads a butterfly document and checks every axiom.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match parse(text, Kind::Butterfly)? {
            Document::Butterfly(y) => {
                y.validate().map_err(|a| math_err(twoterm::Error::Axiom(a)))?;
                Ok(PyButterfly(y))
            }
            _ => unreachable!(),
        }
    }

    /// `B`, `IK2`, `Br`, `IE2` or `zeroK2`.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        fixtures::butterfly_by_name(name)
            .map(PyButterfly)
            .ok_or_else(|| PyValueError::new_err(format!("no butterfly `{name}`")))
    }

    fn to_json(&self) -> String {
        json::document_to_string(&Document::Butterfly(self.0.clone()))
    }

    fn src(&self) -> PyComplex {
        PyComplex(self.0.src().clone())
    }

    fn dst(&self) -> PyComplex {
        PyComplex(self.0.dst().clone())
    }

    fn carrier(&self) -> PyGroup {
        PyGroup(self.0.carrier().clone())
    }

    /// The composite `self ∘ inner`.
    fn after(&self, inner: &PyButterfly) -> PyResult<PyButterfly> {
        bf::compose(&self.0, &inner.0).map(PyButterfly).map_err(math_err)
    }

    /// The Baer sum of parallel butterflies.
    fn __add__(&self, other: &PyButterfly) -> PyResult<PyButterfly> {
        bf::baer_sum(&self.0, &other.0).map(PyButterfly).map_err(math_err)
    }

    fn invert(&self) -> PyResult<PyButterfly> {
        bf::invert(&self.0).map(PyButterfly).map_err(math_err)
    }

    fn is_invertible(&self) -> bool {
        bf::is_invertible(&self.0)
    }

    /// Whether a 2-isomorphism `self ⇒ other` exists.
    fn is_2_isomorphic(&self, other: &PyButterfly) -> PyResult<bool> {
        Ok(bf::two_morphism_find(&self.0, &other.0).map_err(math_err)?.is_some())
    }

    /// `(mono, epi, faithful, cofaithful)`.
    fn classify(&self) -> (bool, bool, bool, bool) {
        let c = bf::classify(&self.0);
        (c.mono, c.epi, c.faithful, c.cofaithful)
    }

    fn pip(&self) -> PyGroup {
        PyGroup(bf::pip(&self.0))
    }

    fn copip(&self) -> PyGroup {
        PyGroup(bf::copip(&self.0))
    }

    /// Matrices of the induced maps on `H^-1` and `H^0`, as rows of decimal strings.
    fn homology_action(&self) -> (Vec<Vec<String>>, Vec<Vec<String>>) {
        let rows = |m: &twoterm::intlinalg::IntMatrix| {
            (0..m.rows()).map(|r| m.row(r).iter().map(ToString::to_string).collect()).collect()
        };
        let (a, b) = self.0.homology_action();
        (rows(a.matrix()), rows(b.matrix()))
    }

    fn __repr__(&self) -> String {
        format!("Butterfly(carrier {})", self.0.carrier())
    }
}

/// `(Tor_1(A, B), A ⊗ B)` as shorthand strings.
#[pyfunction]
fn tor(a: &str, b: &str) -> PyResult<(String, String)> {
    let t = derived_tensor(&shorthand(a)?, &shorthand(b)?);
    Ok((t.tor1().to_string(), t.tensor().to_string()))
}

/// `(pi1, pi0)` of Biext(A, B; C) as shorthand strings.
#[pyfunction]
fn biext(a: &str, b: &str, c: &str) -> PyResult<(String, String)> {
    let x = biext_groups(&shorthand(a)?, &shorthand(b)?, &shorthand(c)?).map_err(math_err)?;
    Ok((x.pi1.to_string(), x.pi0.to_string()))
}

/// The six homology groups and per-position exactness of a sequence document.
#[pyfunction]
fn les(text: &str) -> PyResult<(Vec<String>, Vec<bool>)> {
    let s: ButterflyShortSeq = match parse(text, Kind::Sequence)? {
        Document::Sequence(s) => s,
        _ => unreachable!(),
    };
    let six = s.les().map_err(math_err)?;
    Ok((six.groups.iter().map(ToString::to_string).collect(), six.exactness().to_vec()))
}

#[pymodule]
#[pyo3(name = "twoterm")]
fn twoterm_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyComplex>()?;
    m.add_class::<PyButterfly>()?;
    m.add_function(wrap_pyfunction!(tor, m)?)?;
    m.add_function(wrap_pyfunction!(biext, m)?)?;
    m.add_function(wrap_pyfunction!(les, m)?)?;
    Ok(())
}
