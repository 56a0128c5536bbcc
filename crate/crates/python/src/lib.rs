use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use nilideal::engine::DEFAULT_NODE_BUDGET;
use nilideal::verifier::format_report;
use nilideal::{
    standard_presentation, DerivationTrace, EngineError, EngineOptions, Presentation, SuiteId, Verifier, VerifyConfig,
    Word,
};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn engine_err(e: EngineError) -> PyErr {
    match e {
        EngineError::ZeroInput => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn word(text: &str) -> PyResult<Word> {
    text.parse().map_err(value_err)
}

/// Tokens of a word, or `[]` for the zero word.
#[pyfunction]
fn parse_word(text: &str) -> PyResult<Vec<String>> {
    let w = word(text)?;
    Ok(w.letters().iter().map(|l| l.token().to_string()).collect())
}

/// Canonical spacing of a word's text.
#[pyfunction]
fn format_word(text: &str) -> PyResult<String> {
    Ok(word(text)?.to_string())
}

/// Prefix of length `n` of the infinite square-free word.
#[pyfunction]
fn gen_morphism(n: usize) -> PyResult<String> {
    nilideal::gen_morphism(n).map(|w| w.to_string()).map_err(value_err)
}

#[pyfunction]
fn enumerate_squarefree(n: usize) -> PyResult<Vec<String>> {
    let words = nilideal::enumerate_squarefree(n).map_err(value_err)?;
    Ok(words.iter().map(|w| w.to_string()).collect())
}

#[pyfunction]
fn count_squarefree(n: usize) -> PyResult<usize> {
    nilideal::count_squarefree(n).map_err(value_err)
}

#[pyfunction]
fn find_squares(text: &str) -> PyResult<Vec<(usize, usize)>> {
    Ok(nilideal::find_squares(&word(text)?))
}

/// One suite's outcome.
#[pyclass(get_all, frozen)]
struct SuiteResult {
    suite: String,
    passed: bool,
    cases_run: usize,
    failures: usize,
    notes: Vec<String>,
    line: String,
}

#[pymethods]
impl SuiteResult {
    fn __repr__(&self) -> String {
        self.line.clone()
    }
}

/// Runs the suites (all of them if `prop` is None) against the standard
/// presentation. Returns the results and the text report.
#[pyfunction]
#[pyo3(signature = (prop=None, max_len=None, aux=false, both_aux=false))]
fn verify(prop: Option<&str>, max_len: Option<usize>, aux: bool, both_aux: bool) -> PyResult<(Vec<SuiteResult>, String)> {
    let suites = match prop {
        Some(p) => vec![p.parse::<SuiteId>().map_err(PyValueError::new_err)?],
        None => SuiteId::ALL.to_vec(),
    };
    let mut config = VerifyConfig::default();
    if let Some(n) = max_len {
        for &s in &suites {
            config.set_bound(s, n);
        }
    }
    let mut v = Verifier::standard(aux, EngineOptions::default());
    v.all_suites_on_alternates = both_aux;
    let results = v.run(&suites, &config).map_err(value_err)?;
    let report = format_report(&results);
    let out = results
        .iter()
        .map(|r| SuiteResult {
            suite: r.suite.clone(),
            passed: r.passed(),
            cases_run: r.cases_run,
            failures: r.failures.len(),
            notes: r.notes.clone(),
            line: r.summary_line(),
        })
        .collect();
    Ok((out, report))
}

/// Decision procedures over one presentation.
#[pyclass(frozen)]
struct Engine {
    inner: nilideal::Engine,
}

#[pymethods]
impl Engine {
    /// `rules` is rule-file text; when omitted the built-in presentation is
    /// used, with the aux rules if `aux` is set.
    #[new]
    #[pyo3(signature = (aux=false, rules=None, node_budget=DEFAULT_NODE_BUDGET))]
    fn new(aux: bool, rules: Option<&str>, node_budget: usize) -> PyResult<Engine> {
        let p = match rules {
            Some(text) => Presentation::parse_rules(text).map_err(value_err)?,
            None => standard_presentation(aux),
        };
        let options = EngineOptions { node_budget, ..Default::default() };
        Ok(Engine { inner: nilideal::Engine::with_options(p, options) })
    }

    fn is_zero(&self, py: Python<'_>, w: &str) -> PyResult<bool> {
        let w = word(w)?;
        if w.is_zero() {
            return Ok(true);
        }
        py.detach(|| self.inner.is_zero(&w)).map_err(engine_err)
    }

    fn equivalent(&self, py: Python<'_>, u: &str, v: &str) -> PyResult<bool> {
        let (u, v) = (word(u)?, word(v)?);
        py.detach(|| match (u.is_zero(), v.is_zero()) {
            (true, true) => Ok(true),
            (true, false) => self.inner.is_zero(&v),
            (false, true) => self.inner.is_zero(&u),
            (false, false) => self.inner.equivalent(&u, &v),
        })
        .map_err(engine_err)
    }

    fn canonical_form(&self, py: Python<'_>, w: &str) -> PyResult<String> {
        let w = word(w)?;
        py.detach(|| self.inner.canonical_form(&w)).map(|c| c.to_string()).map_err(engine_err)
    }

    /// Class members sorted by length, then text.
    fn class_members(&self, py: Python<'_>, w: &str) -> PyResult<Vec<String>> {
        let w = word(w)?;
        let report = py.detach(|| self.inner.class_enumerate(&w)).map_err(engine_err)?;
        Ok(report.sorted_members().iter().map(|m| m.to_string()).collect())
    }

    /// Trace text for a shortest derivation to zero, or None.
    fn zero_trace(&self, py: Python<'_>, w: &str) -> PyResult<Option<String>> {
        let w = word(w)?;
        let t = py.detach(|| self.inner.zero_trace(&w)).map_err(engine_err)?;
        Ok(t.map(|t| t.to_text()))
    }

    /// Trace text for a derivation from `u` to `v`.
    fn derive(&self, py: Python<'_>, u: &str, v: &str) -> PyResult<String> {
        let (u, v) = (word(u)?, word(v)?);
        py.detach(|| self.inner.derive(&u, &v)).map(|t| t.to_text()).map_err(engine_err)
    }

    /// True if the trace text replays; a malformed trace raises ValueError.
    fn replay(&self, trace: &str) -> PyResult<bool> {
        let t = DerivationTrace::parse(trace).map_err(value_err)?;
        Ok(nilideal::replay(self.inner.presentation(), &t).is_ok())
    }

    /// The presentation in rule-file format.
    fn rules(&self) -> String {
        self.inner.presentation().to_rule_text()
    }

    fn __len__(&self) -> usize {
        self.inner.presentation().len()
    }
}

#[pymodule]
pub fn pynilideal(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Engine>()?;
    m.add_class::<SuiteResult>()?;
    m.add_function(wrap_pyfunction!(parse_word, m)?)?;
    m.add_function(wrap_pyfunction!(format_word, m)?)?;
    m.add_function(wrap_pyfunction!(gen_morphism, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_squarefree, m)?)?;
    m.add_function(wrap_pyfunction!(count_squarefree, m)?)?;
    m.add_function(wrap_pyfunction!(find_squares, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
