use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use vck_core::cocycle::{named_cocycle, universal_presentation, PresentedPair, UniversalPair};
use vck_core::invariant as inv;
use vck_core::{algebra, coloring, diagram, enumerate, io, report};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Virtual pair `(S, beta)` on `{0..n-1}`.
#[pyclass(name = "VirtualPair", frozen)]
struct PyVirtualPair(vck_core::VirtualPair);

#[pymethods]
impl PyVirtualPair {
    /// A bundled pair such as `flip2-flip2`, `paper-z4`, `q248`, `dihedral3-i3(1,2,3)`.
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        algebra::named_pair(name).map(Self).map_err(err)
    }

    /// Parses a solution file holding both tables.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        match io::parse_solution_file(text).map_err(err)? {
            (s, Some(beta)) => vck_core::VirtualPair::from_tables(s, beta).map(Self).map_err(err),
            (_, None) => Err(PyValueError::new_err("a virtual pair needs both S and beta")),
        }
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    /// `S(x, y)`.
    fn s(&self, x: usize, y: usize) -> PyResult<(usize, usize)> {
        self.check(x, y)?;
        Ok(self.0.s().apply(x, y))
    }

    /// `beta(x, y)`.
    fn beta(&self, x: usize, y: usize) -> PyResult<(usize, usize)> {
        self.check(x, y)?;
        Ok(self.0.beta().apply(x, y))
    }

    fn is_connected(&self) -> bool {
        self.0.is_connected()
    }

    fn components(&self) -> Vec<Vec<usize>> {
        algebra::connected_components(&self.0).classes()
    }

    fn to_text(&self) -> String {
        io::format_solution_file(self.0.s().table(), Some(self.0.beta().table()), 0)
    }

    fn __repr__(&self) -> String {
        format!("VirtualPair(n={})", self.0.n())
    }
}

impl PyVirtualPair {
    fn check(&self, x: usize, y: usize) -> PyResult<()> {
        if x < self.0.n() && y < self.0.n() {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!("({x},{y}) outside 0..{}", self.0.n())))
        }
    }
}

/// Link diagram given by a signed Gauss code such as `O1+ U2+ ; U1+ O2+`.
#[pyclass(name = "LinkDiagram", frozen)]
struct PyLinkDiagram(diagram::LinkDiagram);

#[pymethods]
impl PyLinkDiagram {
    #[new]
    fn new(code: &str) -> PyResult<Self> {
        diagram::LinkDiagram::parse(code).map(Self).map_err(err)
    }

    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        diagram::catalog(name).map(Self).map_err(err)
    }

    #[getter]
    fn num_components(&self) -> usize {
        self.0.num_components()
    }

    #[getter]
    fn num_arcs(&self) -> usize {
        self.0.num_arcs()
    }

    #[getter]
    fn num_classical(&self) -> usize {
        self.0.num_classical()
    }

    #[getter]
    fn num_virtual(&self) -> usize {
        self.0.num_virtual()
    }

    fn genus(&self) -> usize {
        self.0.genus()
    }

    /// Virtual Reidemeister II move between two semi-arcs `(component, position)`.
    fn insert_vr2(&self, a: (usize, usize), b: (usize, usize)) -> PyResult<Self> {
        self.0.insert_vr2(a.0, a.1, b.0, b.1).map(Self).map_err(err)
    }

    /// Moves the base point of `component` forward by `k` passages.
    fn rotate(&self, component: usize, k: usize) -> PyResult<Self> {
        if component >= self.0.num_components() {
            return Err(PyValueError::new_err(format!("no component {component}")));
        }
        Ok(Self(self.0.rotate(component, k)))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LinkDiagram('{}')", self.0)
    }
}

/// Universal coefficient group of a virtual pair with its cocycle tables.
#[pyclass(name = "UniversalGroup", frozen)]
struct PyUniversal(UniversalPair);

#[pymethods]
impl PyUniversal {
    #[new]
    fn new(pair: &PyVirtualPair) -> Self {
        Self(universal_presentation(&pair.0))
    }

    #[getter]
    fn gens(&self) -> Vec<String> {
        self.0.simplified.gens.clone()
    }

    #[getter]
    fn relators(&self) -> Vec<String> {
        self.0.simplified.relators.iter().map(|r| self.0.simplified.display_word(r)).collect()
    }

    /// Whether the Tietze budget ran out before a fixpoint.
    #[getter]
    fn exhausted(&self) -> bool {
        self.0.exhausted
    }

    fn f(&self, x: usize, y: usize) -> PyResult<String> {
        self.cell(x, y)?;
        Ok(self.0.simplified.display_word(self.0.pi_f(x, y)))
    }

    fn g(&self, x: usize, y: usize) -> PyResult<String> {
        self.cell(x, y)?;
        Ok(self.0.simplified.display_word(self.0.pi_g(x, y)))
    }

    /// Free rank and torsion coefficients of the abelianization.
    fn abelianization(&self) -> (usize, Vec<i64>) {
        let ab = vck_core::abelianize(&self.0.simplified);
        (ab.rank(), ab.factors.iter().copied().filter(|&k| k != 0).collect())
    }

    fn __str__(&self) -> String {
        report::universal_text("universal group", &self.0)
    }
}

impl PyUniversal {
    fn cell(&self, x: usize, y: usize) -> PyResult<()> {
        let n = self.0.vp.n();
        if x < n && y < n {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!("({x},{y}) outside 0..{n}")))
        }
    }
}

/// All colorings, one color per semi-arc, in lexicographic order.
#[pyfunction]
fn colorings(diagram: &PyLinkDiagram, pair: &PyVirtualPair) -> Vec<Vec<usize>> {
    coloring::colorings(&diagram.0, &pair.0)
}

#[pyfunction]
fn count_colorings(diagram: &PyLinkDiagram, pair: &PyVirtualPair) -> usize {
    coloring::count_colorings(&diagram.0, &pair.0)
}

fn word_rows(d: &diagram::LinkDiagram, pp: &PresentedPair) -> PyResult<Vec<(Vec<usize>, Vec<String>)>> {
    let mut inv = inv::word_invariant(d, pp).map_err(err)?;
    inv.rows.sort_by(|a, b| a.coloring.cmp(&b.coloring));
    Ok(inv
        .rows
        .into_iter()
        .map(|r| {
            let words = r.words.iter().map(|w| w.display_powers(&pp.presentation.gens)).collect();
            (r.coloring, words)
        })
        .collect())
}

/// `(coloring, component words)` for the universal pair, in coloring order.
#[pyfunction]
fn invariant(diagram: &PyLinkDiagram, pair: &PyVirtualPair) -> PyResult<Vec<(Vec<usize>, Vec<String>)>> {
    word_rows(&diagram.0, &PresentedPair::from(&universal_presentation(&pair.0)))
}

/// Same for a bundled word-valued cocycle pair such as `virtual-h`.
#[pyfunction]
fn cocycle_invariant(diagram: &PyLinkDiagram, cocycle: &str) -> PyResult<Vec<(Vec<usize>, Vec<String>)>> {
    let pp = named_cocycle(cocycle).ok_or_else(|| PyValueError::new_err(format!("no cocycle '{cocycle}'")))?;
    word_rows(&diagram.0, &pp)
}

/// Multiplicities of the component tuples, written as in `2{a^-1, b^-1}, 2{1, 1}`.
#[pyfunction]
fn multiset(rows: Vec<(Vec<usize>, Vec<String>)>) -> String {
    let tuples: Vec<Vec<String>> = rows.into_iter().map(|(_, t)| t).collect();
    report::format_multiset(&tuples)
}

#[pyfunction]
#[pyo3(signature = (n, long = false))]
fn census(n: usize, long: bool) -> PyResult<BTreeMap<&'static str, usize>> {
    let r = enumerate::census(n, long).map_err(err)?;
    Ok(BTreeMap::from([
        ("all", r.all_pairs),
        ("involutive", r.involutive_pairs),
        ("aut_induced", r.aut_induced_pairs),
        ("connected", r.connected_pairs),
        ("both_disconnected", r.connected_with_both_disconnected),
    ]))
}

/// Text of one of the reproducible tables.
#[pyfunction]
#[pyo3(signature = (target, long = false))]
fn reproduce(target: &str, long: bool) -> PyResult<String> {
    report::generate(target, long).map_err(err)
}

#[pyfunction]
fn catalog_names() -> Vec<&'static str> {
    diagram::catalog_names()
}

#[pymodule]
fn vck(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyVirtualPair>()?;
    m.add_class::<PyLinkDiagram>()?;
    m.add_class::<PyUniversal>()?;
    m.add_function(wrap_pyfunction!(colorings, m)?)?;
    m.add_function(wrap_pyfunction!(count_colorings, m)?)?;
    m.add_function(wrap_pyfunction!(invariant, m)?)?;
    m.add_function(wrap_pyfunction!(cocycle_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(multiset, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add("TARGETS", report::TARGETS.to_vec())?;
    Ok(())
}
