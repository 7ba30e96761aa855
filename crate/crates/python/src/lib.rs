//! Python bindings. Elements are passed as windows (lists of ints) or as
//! strings in either window ("3,4,1,2") or word ("s1*s2") notation.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use weyl_zircon as wz;
use weyl_zircon::{Family, GroupDescriptor, GroupElement, IntervalPoset, ScanOptions};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[derive(FromPyObject)]
enum ElementArg {
    Text(String),
    Window(Vec<i64>),
}

fn window(x: &GroupElement) -> Vec<i64> {
    x.window().iter().map(|&v| v as i64).collect()
}

/// A finite Weyl group of type A, B or D.
#[pyclass(name = "WeylGroup", module = "weyl_zircon", frozen)]
struct PyWeylGroup {
    inner: Arc<wz::WeylGroup>,
}

impl PyWeylGroup {
    fn element(&self, x: ElementArg) -> PyResult<GroupElement> {
        match x {
            ElementArg::Text(s) => self.inner.parse_element(&s).map_err(value_err),
            ElementArg::Window(w) => self.inner.element_from_window(&w).map_err(value_err),
        }
    }
}

#[pymethods]
impl PyWeylGroup {
    #[new]
    fn new(family: &str, rank: usize) -> PyResult<Self> {
        let family: Family = family.parse().map_err(value_err)?;
        let d = GroupDescriptor::new(family, rank).map_err(value_err)?;
        let g = wz::WeylGroup::new(d).map_err(value_err)?;
        Ok(PyWeylGroup { inner: Arc::new(g) })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.descriptor().to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    /// All elements as windows, sorted by length.
    fn elements(&self) -> Vec<Vec<i64>> {
        self.inner.elements().iter().map(window).collect()
    }

    fn generators(&self) -> Vec<Vec<i64>> {
        self.inner.generators().iter().map(window).collect()
    }

    fn reflections(&self) -> Vec<Vec<i64>> {
        self.inner.reflections().iter().map(window).collect()
    }

    fn longest(&self) -> Vec<i64> {
        window(self.inner.longest())
    }

    fn parse(&self, x: ElementArg) -> PyResult<Vec<i64>> {
        Ok(window(&self.element(x)?))
    }

    fn length(&self, x: ElementArg) -> PyResult<u32> {
        self.inner.length(&self.element(x)?).map_err(value_err)
    }

    fn multiply(&self, x: ElementArg, y: ElementArg) -> PyResult<Vec<i64>> {
        let z = self
            .inner
            .multiply(&self.element(x)?, &self.element(y)?)
            .map_err(value_err)?;
        Ok(window(&z))
    }

    fn inverse(&self, x: ElementArg) -> PyResult<Vec<i64>> {
        Ok(window(
            &self.inner.inverse(&self.element(x)?).map_err(value_err)?,
        ))
    }

    /// A reduced word such as "s1*s2", or "e".
    fn word(&self, x: ElementArg) -> PyResult<String> {
        self.inner.word_string(&self.element(x)?).map_err(value_err)
    }

    /// Left descents as 1-based generator numbers.
    fn left_descents(&self, x: ElementArg) -> PyResult<Vec<usize>> {
        let d = self
            .inner
            .left_descents(&self.element(x)?)
            .map_err(value_err)?;
        Ok(d.into_iter().map(|s| s + 1).collect())
    }

    fn bruhat_leq(&self, x: ElementArg, y: ElementArg) -> PyResult<bool> {
        wz::bruhat_leq(&self.inner, &self.element(x)?, &self.element(y)?).map_err(value_err)
    }

    /// The interval `[u, w]`; requires `u < w`.
    fn interval(&self, u: ElementArg, w: ElementArg) -> PyResult<PyInterval> {
        let iv =
            wz::interval(&self.inner, &self.element(u)?, &self.element(w)?).map_err(value_err)?;
        Ok(PyInterval { inner: iv })
    }

    /// Generator label witnessing the C4 condition for `[u, w]`, or None.
    fn c4_witness(&self, u: ElementArg, w: ElementArg) -> PyResult<Option<String>> {
        let s =
            wz::c4_witness(&self.inner, &self.element(u)?, &self.element(w)?).map_err(value_err)?;
        Ok(s.map(|s| self.inner.generator_label(s)))
    }

    fn __repr__(&self) -> String {
        format!(
            "WeylGroup('{}', {})",
            self.inner.descriptor().family,
            self.inner.rank()
        )
    }
}

/// A Bruhat interval `[u, w]`.
#[pyclass(name = "Interval", module = "weyl_zircon", frozen)]
struct PyInterval {
    inner: IntervalPoset,
}

#[pymethods]
impl PyInterval {
    fn __len__(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn bottom(&self) -> Vec<i64> {
        window(self.inner.bottom())
    }

    #[getter]
    fn top(&self) -> Vec<i64> {
        window(self.inner.top())
    }

    /// `l(w) - l(u)`.
    #[getter]
    fn length(&self) -> usize {
        self.inner.length()
    }

    fn elements(&self) -> Vec<Vec<i64>> {
        self.inner.elements().map(window).collect()
    }

    /// Cover relations as position pairs `(lower, upper)`.
    fn covers(&self) -> Vec<(usize, usize)> {
        self.inner.covers()
    }

    fn rank_sizes(&self) -> Vec<usize> {
        self.inner.to_poset().rank_sizes()
    }

    /// Bruhat graph edges as position pairs.
    fn bruhat_edges(&self) -> Vec<(usize, usize)> {
        wz::bruhat_graph(&self.inner)
            .edges
            .iter()
            .map(|e| (e.low, e.high))
            .collect()
    }

    /// `deg_{u,w}(y)` for an element `y` given as a window.
    fn degree(&self, y: Vec<i64>) -> PyResult<usize> {
        let y = self
            .inner
            .group()
            .element_from_window(&y)
            .map_err(value_err)?;
        wz::degree(&self.inner, &y).map_err(value_err)
    }

    fn is_rationally_smooth(&self) -> bool {
        wz::is_rationally_smooth(&self.inner).rationally_smooth
    }

    /// The type-A single-degree test; raises for other types.
    fn is_smooth_type_a(&self) -> PyResult<bool> {
        wz::is_smooth_type_a(&self.inner).map_err(value_err)
    }

    fn is_zircon(&self) -> PyResult<bool> {
        wz::is_zircon(&self.inner.to_poset()).map_err(value_err)
    }

    fn dual_is_zircon(&self) -> bool {
        wz::dual_zircon_check(&self.inner)
    }

    /// A special matching as a partner list over positions, or None.
    fn special_matching(&self) -> PyResult<Option<Vec<usize>>> {
        let m = wz::find_special_matching(&self.inner.to_poset()).map_err(value_err)?;
        Ok(m.map(|m| m.partners().to_vec()))
    }

    /// A bijection of positions onto `other`, or None if not isomorphic.
    fn isomorphism(&self, other: &PyInterval) -> Option<Vec<usize>> {
        wz::are_isomorphic(&self.inner.to_poset(), &other.inner.to_poset())
    }

    #[pyo3(signature = (bruhat_edges = false))]
    fn to_dot(&self, bruhat_edges: bool) -> String {
        self.inner.to_dot(bruhat_edges)
    }

    fn __repr__(&self) -> String {
        format!(
            "Interval([{}, {}] in {}, {} elements)",
            self.inner.bottom(),
            self.inner.top(),
            self.inner.group().descriptor(),
            self.inner.len()
        )
    }
}

/// Runs a scan ("c4", "c3", "delanoy" or "th2") and returns the JSON report.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
#[pyo3(signature = (conjecture, family, rank, jobs = 1, cap_interval = None, timing = true, catalog_length = 6))]
fn verify(
    py: Python<'_>,
    conjecture: &str,
    family: &str,
    rank: usize,
    jobs: usize,
    cap_interval: Option<usize>,
    timing: bool,
    catalog_length: usize,
) -> PyResult<String> {
    let id: wz::ConjectureId = conjecture.parse().map_err(value_err)?;
    let family: Family = family.parse().map_err(value_err)?;
    let d = GroupDescriptor::new(family, rank).map_err(value_err)?;
    let g = wz::WeylGroup::new(d).map_err(value_err)?;
    let opts = ScanOptions {
        jobs: jobs.max(1),
        cap_interval,
        record_timing: timing,
        ..ScanOptions::default()
    };
    let run = || -> Result<wz::VerificationReport, String> {
        match id {
            wz::ConjectureId::C4 => wz::verify_c4(&g, &opts),
            wz::ConjectureId::C3 => wz::verify_c3(&g, &opts),
            wz::ConjectureId::Delanoy2 => wz::verify_delanoy(&g, &opts),
            wz::ConjectureId::Th2Equiv => {
                let top = g.length(g.longest()).map_err(|e| e.to_string())? as usize;
                let catalog = wz::LowerIntervalCatalog::build(
                    &wz::LowerIntervalCatalog::default_groups(),
                    catalog_length.min(top),
                )
                .map_err(|e| e.to_string())?;
                wz::th2_equivalence_scan(&g, &opts, &catalog)
            }
        }
        .map_err(|e| e.to_string())
    };
    let report = py.detach(run).map_err(PyRuntimeError::new_err)?;
    Ok(report.to_json())
}

#[pymodule]
#[pyo3(name = "weyl_zircon")]
fn weyl_zircon_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWeylGroup>()?;
    m.add_class::<PyInterval>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
