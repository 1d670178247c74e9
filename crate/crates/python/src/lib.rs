//! Python bindings: boards, closure traces, the catalog, constructions and
//! the search/sweep entry points.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use bingo_closure::constructions::{self, RingWidth};
use bingo_closure::search::{self, Scope, SearchConfig, SweepMode};
use bingo_closure::{closure, grid, laws, BoardSize, Cell, CellSet, RenderStyle};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn size(n: usize) -> PyResult<BoardSize> {
    BoardSize::new(n).map_err(value_error)
}

fn style(pretty: bool) -> RenderStyle {
    if pretty {
        RenderStyle::Pretty
    } else {
        RenderStyle::Ascii
    }
}

/// A set of occupied cells on an n x n board.
#[pyclass(name = "Board", module = "bingo", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyBoard {
    set: CellSet,
}

impl From<CellSet> for PyBoard {
    fn from(set: CellSet) -> Self {
        PyBoard { set }
    }
}

#[pymethods]
impl PyBoard {
    #[new]
    #[pyo3(signature = (n, cells = Vec::new()))]
    fn new(n: usize, cells: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(CellSet::from_cells(size(n)?, cells).map_err(value_error)?.into())
    }

    /// Parse the `#`/`.` board format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let (_, set) = grid::parse_board(text).map_err(value_error)?;
        Ok(set.into())
    }

    #[staticmethod]
    fn full(n: usize) -> PyResult<Self> {
        Ok(CellSet::full(size(n)?).into())
    }

    #[getter]
    fn n(&self) -> usize {
        self.set.size().side()
    }

    #[getter]
    fn cells(&self) -> Vec<(usize, usize)> {
        self.set.cells().map(|c| (c.row, c.col)).collect()
    }

    fn __len__(&self) -> usize {
        self.set.len()
    }

    fn __contains__(&self, cell: (usize, usize)) -> bool {
        self.set.contains(cell.into())
    }

    fn __str__(&self) -> String {
        self.render(false)
    }

    fn __repr__(&self) -> String {
        format!("Board(n={}, cells={:?})", self.n(), self.cells())
    }

    #[pyo3(signature = (pretty = false))]
    fn render(&self, pretty: bool) -> String {
        grid::render_board(&self.set, None, style(pretty)).expect("unlabeled render")
    }

    fn dependent_set(&self) -> Self {
        bingo_closure::dependent_set(&self.set).into()
    }

    fn dolmatic_step(&self) -> Self {
        bingo_closure::dolmatic_step(&self.set).into()
    }

    fn closure(&self) -> PyTrace {
        PyTrace {
            trace: closure(&self.set),
        }
    }

    fn depth(&self) -> usize {
        bingo_closure::depth(&self.set)
    }

    fn is_closed(&self) -> bool {
        bingo_closure::is_closed(&self.set)
    }

    fn spans(&self) -> bool {
        bingo_closure::spans(&self.set)
    }

    fn canonical_form(&self) -> Self {
        search::canonical_form(&self.set).into()
    }

    fn general_dolmatic_extension(&self) -> PyResult<Self> {
        Ok(bingo_closure::general_dolmatic_extension(&self.set)
            .map_err(value_error)?
            .into())
    }
}

/// The recorded iteration from a board to its closure.
#[pyclass(name = "Trace", module = "bingo", frozen)]
pub struct PyTrace {
    trace: bingo_closure::ClosureTrace,
}

#[pymethods]
impl PyTrace {
    #[getter]
    fn depth(&self) -> usize {
        self.trace.depth
    }

    #[getter]
    fn start(&self) -> PyBoard {
        self.trace.start.into()
    }

    #[getter]
    fn closure(&self) -> PyBoard {
        self.trace.closure.into()
    }

    fn spans(&self) -> bool {
        self.trace.spans()
    }

    /// Cells added at each step.
    #[getter]
    fn steps(&self) -> Vec<Vec<(usize, usize)>> {
        self.trace
            .steps
            .iter()
            .map(|s| s.added.cells().map(|c| (c.row, c.col)).collect())
            .collect()
    }

    #[getter]
    fn labels(&self) -> BTreeMap<(usize, usize), usize> {
        self.trace
            .labels()
            .into_iter()
            .map(|(c, v)| ((c.row, c.col), v))
            .collect()
    }

    fn completions_per_step(&self) -> Vec<usize> {
        self.trace.completions_per_step()
    }

    fn final_rectangle(&self) -> Option<Vec<(usize, usize)>> {
        constructions::final_rectangle(&self.trace).map(|r| r.iter().map(|c| (c.row, c.col)).collect())
    }

    #[pyo3(signature = (pretty = false))]
    fn render(&self, pretty: bool) -> String {
        self.trace.render(style(pretty))
    }

    fn to_json(&self) -> String {
        self.trace.to_document().to_json()
    }

    fn __repr__(&self) -> String {
        format!(
            "Trace(n={}, depth={}, spans={})",
            self.trace.size(),
            self.trace.depth,
            self.trace.spans()
        )
    }
}

/// A named board with the step labels its closure must reproduce.
#[pyclass(name = "CatalogBoard", module = "bingo", frozen)]
pub struct PyCatalogBoard {
    inner: constructions::CatalogBoard,
}

#[pymethods]
impl PyCatalogBoard {
    #[getter]
    fn name(&self) -> &str {
        &self.inner.name
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.size.side()
    }

    #[getter]
    fn board(&self) -> PyBoard {
        self.inner.occupied.into()
    }

    #[getter]
    fn labels(&self) -> BTreeMap<(usize, usize), usize> {
        self.inner
            .labels
            .iter()
            .map(|(c, &v)| ((c.row, c.col), v))
            .collect()
    }

    #[getter]
    fn expected_depth(&self) -> usize {
        self.inner.expected_depth
    }

    #[getter]
    fn expected_spanning(&self) -> bool {
        self.inner.expected_spanning
    }

    /// Close the board and check every label; returns the trace.
    fn verify(&self) -> PyResult<PyTrace> {
        Ok(PyTrace {
            trace: self.inner.verify().map_err(value_error)?,
        })
    }

    #[pyo3(signature = (pretty = false))]
    fn render(&self, pretty: bool) -> String {
        self.inner.labeled_text(style(pretty))
    }

    fn __repr__(&self) -> String {
        format!("CatalogBoard({})", self.inner)
    }
}

#[pyfunction]
fn catalog_names() -> Vec<&'static str> {
    constructions::CATALOG_NAMES.to_vec()
}

#[pyfunction]
fn catalog_board(name: &str) -> PyResult<PyCatalogBoard> {
    constructions::catalog_board(name)
        .map(|inner| PyCatalogBoard { inner })
        .ok_or_else(|| PyKeyError::new_err(name.to_string()))
}

#[pyfunction]
fn wrap_ring(base: &PyCatalogBoard, width: usize) -> PyResult<PyCatalogBoard> {
    let width = RingWidth::try_from(width).map_err(|w| value_error(format!("ring width must be 1 or 2, got {w}")))?;
    Ok(PyCatalogBoard {
        inner: constructions::wrap_ring(&base.inner, width).map_err(value_error)?,
    })
}

#[pyfunction]
fn construct_max_depth(n: usize) -> PyResult<PyCatalogBoard> {
    Ok(PyCatalogBoard {
        inner: constructions::construct_max_depth(n).map_err(value_error)?,
    })
}

/// `(kind, index, cells)` for each line.
type LineTuple = (String, usize, Vec<(usize, usize)>);

#[pyfunction]
fn make_lines(n: usize) -> PyResult<Vec<LineTuple>> {
    Ok(grid::make_lines(size(n)?)
        .into_iter()
        .map(|l| {
            (
                format!("{:?}", l.kind()),
                l.index(),
                l.mask.cells().map(|c: Cell| (c.row, c.col)).collect(),
            )
        })
        .collect())
}

fn parse_scope(scope: &str) -> PyResult<Scope> {
    match scope {
        "all" => Ok(Scope::All),
        "spanning" | "spanning_only" => Ok(Scope::SpanningOnly),
        "nonspanning" | "non_spanning_only" => Ok(Scope::NonSpanningOnly),
        other => Err(value_error(format!("unknown scope {other:?}"))),
    }
}

/// Result of a maximum-depth search.
#[pyclass(name = "SearchReport", module = "bingo", frozen, get_all)]
pub struct PySearchReport {
    n: usize,
    scope: String,
    max_depth: Option<usize>,
    witnesses: Vec<PyBoard>,
    witness_count: u64,
    boards_examined: u64,
    elapsed_ms: u64,
    seed: Option<u64>,
}

impl From<search::SearchReport> for PySearchReport {
    fn from(r: search::SearchReport) -> Self {
        let doc = r.to_document();
        PySearchReport {
            n: doc.n,
            scope: match r.scope {
                Scope::All => "all",
                Scope::SpanningOnly => "spanning_only",
                Scope::NonSpanningOnly => "non_spanning_only",
            }
            .to_string(),
            max_depth: r.max_depth,
            witnesses: r.witnesses.into_iter().map(PyBoard::from).collect(),
            witness_count: r.witness_count,
            boards_examined: r.boards_examined,
            elapsed_ms: doc.elapsed_ms,
            seed: r.seed,
        }
    }
}

#[pymethods]
impl PySearchReport {
    fn __repr__(&self) -> String {
        format!(
            "SearchReport(n={}, scope={}, max_depth={:?}, witness_count={})",
            self.n, self.scope, self.max_depth, self.witness_count
        )
    }
}

#[pyfunction]
#[pyo3(signature = (n, scope = "all", symmetry = true, threads = None, allow_large = false))]
fn max_depth_exhaustive(
    py: Python<'_>,
    n: usize,
    scope: &str,
    symmetry: bool,
    threads: Option<usize>,
    allow_large: bool,
) -> PyResult<PySearchReport> {
    let size = size(n)?;
    let config = SearchConfig {
        scope: parse_scope(scope)?,
        use_symmetry: symmetry,
        threads,
        allow_large,
        ..Default::default()
    };
    let report = py
        .detach(|| search::max_depth_exhaustive(size, &config))
        .map_err(value_error)?;
    Ok(report.into())
}

#[pyfunction]
#[pyo3(signature = (n, samples, seed, scope = "all", threads = None))]
fn max_depth_sampled(
    py: Python<'_>,
    n: usize,
    samples: u64,
    seed: u64,
    scope: &str,
    threads: Option<usize>,
) -> PyResult<PySearchReport> {
    let size = size(n)?;
    let config = SearchConfig {
        scope: parse_scope(scope)?,
        threads,
        ..Default::default()
    };
    let report = py
        .detach(|| search::max_depth_sampled(size, &config, samples, seed))
        .map_err(value_error)?;
    Ok(report.into())
}

fn sweep_mode(samples: Option<u64>, seed: u64) -> SweepMode {
    match samples {
        None => SweepMode::Exhaustive,
        Some(samples) => SweepMode::Sampled { samples, seed },
    }
}

/// Boards deeper than their bound, as `(board, depth, bound, spanning)`.
/// Exhaustive unless `samples` is given.
#[pyfunction]
#[pyo3(signature = (n, samples = None, seed = 0))]
fn bound_sweep(py: Python<'_>, n: usize, samples: Option<u64>, seed: u64) -> PyResult<Vec<(PyBoard, usize, usize, bool)>> {
    let size = size(n)?;
    let violations = py
        .detach(|| search::bound_sweep(size, sweep_mode(samples, seed)))
        .map_err(value_error)?;
    Ok(violations
        .into_iter()
        .map(|v| (v.board.into(), v.observed_depth, v.bound, v.spanning))
        .collect())
}

/// Proper closures missing fewer than 4 cells or 4 lines.
#[pyfunction]
#[pyo3(signature = (n, samples = None, seed = 0))]
fn lemma1_sweep(py: Python<'_>, n: usize, samples: Option<u64>, seed: u64) -> PyResult<Vec<PyBoard>> {
    let size = size(n)?;
    let offending = py
        .detach(|| search::lemma1_sweep(size, sweep_mode(samples, seed)))
        .map_err(value_error)?;
    Ok(offending.into_iter().map(PyBoard::from).collect())
}

/// `(isotone, expansive, dolmatic)` for the named map.
#[pyfunction]
#[pyo3(signature = (n, map = "dependency", budget = 1000, seed = 0))]
fn check_laws(n: usize, map: &str, budget: u64, seed: u64) -> PyResult<(bool, bool, bool)> {
    let map = match map {
        "dependency" => laws::SetMap::Dependency,
        "dolmatic_step" => laws::SetMap::DolmaticStep,
        other => return Err(value_error(format!("unknown map {other:?}"))),
    };
    let r = laws::check_laws(size(n)?, map, budget, seed);
    Ok((r.isotone, r.expansive, r.dolmatic))
}

#[pymodule]
fn bingo(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBoard>()?;
    m.add_class::<PyTrace>()?;
    m.add_class::<PyCatalogBoard>()?;
    m.add_class::<PySearchReport>()?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_board, m)?)?;
    m.add_function(wrap_pyfunction!(wrap_ring, m)?)?;
    m.add_function(wrap_pyfunction!(construct_max_depth, m)?)?;
    m.add_function(wrap_pyfunction!(make_lines, m)?)?;
    m.add_function(wrap_pyfunction!(max_depth_exhaustive, m)?)?;
    m.add_function(wrap_pyfunction!(max_depth_sampled, m)?)?;
    m.add_function(wrap_pyfunction!(bound_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(lemma1_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(check_laws, m)?)?;
    Ok(())
}
