use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use helmsource_core::fbbasis::{FBExpansion, FBIndex, FBSpace, PolarGrid};
use helmsource_core::forward::{add_noise, ForwardEngine, MeasurementSet, NamedSource, SourceSpec};
use helmsource_core::freqplan::{self, DeltaChoice, FrequencyPlan, PlanOptions};
use helmsource_core::kmatrix::KMatrix;
use helmsource_core::pipeline::{self, ExperimentConfig};
use helmsource_core::specfun::{self, BesselZeroTable};
use helmsource_core::sve::BoundaryRule;
use helmsource_core::{Complex64, Error};

create_exception!(helmsource, HelmsourceError, PyException);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Usage(_) | Error::Domain(_) | Error::Parse(_) => PyValueError::new_err(e.to_string()),
        e => HelmsourceError::new_err(e.to_string()),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for helmsource_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

fn engine(name: &str) -> PyResult<ForwardEngine> {
    ForwardEngine::from_name(name).py()
}

fn rule(name: &str) -> PyResult<BoundaryRule> {
    match name {
        "trapezoid" => Ok(BoundaryRule::Trapezoid),
        "simpson" => Ok(BoundaryRule::Simpson),
        _ => Err(PyValueError::new_err(format!("unknown boundary rule '{name}'"))),
    }
}

fn delta(delta_k: Option<f64>) -> DeltaChoice {
    delta_k.map_or(DeltaChoice::Auto, DeltaChoice::Fixed)
}

fn source(obj: &Bound<'_, PyAny>) -> PyResult<SourceSpec> {
    if let Ok(name) = obj.extract::<String>() {
        return Ok(SourceSpec::Named(NamedSource::from_name(&name).py()?));
    }
    if let Ok(e) = obj.cast::<Expansion>() {
        return Ok(SourceSpec::Expansion(e.borrow().inner.clone()));
    }
    Err(PyValueError::new_err("source must be a source name or an Expansion"))
}

/// Measurement frequency plan.
#[pyclass(module = "helmsource")]
struct Plan {
    inner: FrequencyPlan,
}

#[pymethods]
impl Plan {
    #[new]
    #[pyo3(signature = (m, n, r0 = 1.0, r = 1.5, delta_k = None, allow_wide = false, fast_lemma1 = false))]
    fn new(
        m: u32,
        n: u32,
        r0: f64,
        r: f64,
        delta_k: Option<f64>,
        allow_wide: bool,
        fast_lemma1: bool,
    ) -> PyResult<Self> {
        let mut o = PlanOptions::new(m, n, r0, r);
        o.delta = delta(delta_k);
        o.allow_wide = allow_wide;
        o.fast_lemma1 = fast_lemma1;
        Ok(Self { inner: FrequencyPlan::build(&o).py()? })
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(Self { inner: FrequencyPlan::from_json(s).py()? })
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().py()
    }

    #[getter]
    fn delta_k(&self) -> f64 {
        self.inner.delta_k
    }

    #[getter]
    fn frequencies(&self) -> Vec<f64> {
        self.inner.q_s.clone()
    }

    #[getter]
    fn bandwidth_gated(&self) -> bool {
        self.inner.bandwidth_gated
    }

    #[getter]
    fn m_max(&self) -> u32 {
        self.inner.m_max
    }

    #[getter]
    fn n_max(&self) -> u32 {
        self.inner.n_max
    }

    /// `(m, n, k_mn, assigned k)` for every radial mode.
    fn assignment(&self) -> Vec<(u32, u32, f64, f64)> {
        self.inner.assignment.iter().map(|a| (a.m, a.n, a.k_mn, a.k)).collect()
    }

    fn assigned(&self, m: u32, n: u32) -> PyResult<f64> {
        self.inner.assigned(m, n).py()
    }

    /// Angular frequencies `c * k` of the reduced set.
    #[pyo3(signature = (c = 1.0))]
    fn omega(&self, c: f64) -> Vec<f64> {
        self.inner.q_s.iter().map(|k| c * k).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.q_s.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Plan(M={}, N={}, delta_k={:.6}, frequencies={})",
            self.inner.m_max,
            self.inner.n_max,
            self.inner.delta_k,
            self.inner.q_s.len()
        )
    }
}

/// Fourier-Bessel coefficients on a disc.
#[pyclass(module = "helmsource")]
struct Expansion {
    inner: FBExpansion,
}

#[pymethods]
impl Expansion {
    #[new]
    #[pyo3(signature = (m, n, r0 = 1.0, coeffs = None))]
    fn new(m: u32, n: u32, r0: f64, coeffs: Option<Vec<Complex64>>) -> PyResult<Self> {
        let inner = match coeffs {
            Some(c) => FBExpansion::new(m, n, r0, c),
            None => FBExpansion::zeros(m, n, r0),
        }
        .py()?;
        Ok(Self { inner })
    }

    /// Coefficients of a named source, if it has an exact expansion.
    #[staticmethod]
    #[pyo3(signature = (name, r0 = 1.0))]
    fn named(name: &str, r0: f64) -> PyResult<Self> {
        let src = NamedSource::from_name(name).py()?;
        src.expansion(r0)
            .py()?
            .map(|inner| Self { inner })
            .ok_or_else(|| PyValueError::new_err(format!("'{name}' has no finite expansion")))
    }

    /// Projection of a source onto the span of the first modes.
    #[staticmethod]
    #[pyo3(signature = (source, m, n, r0 = 1.0))]
    fn project(source: &Bound<'_, PyAny>, m: u32, n: u32, r0: f64) -> PyResult<Self> {
        let src = self::source(source)?;
        let grid = PolarGrid::with_defaults(r0).py()?;
        let space = FBSpace::new(m, n, r0).py()?;
        let inner = space.project(&src.sample(&grid).py()?, &grid).py()?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(Self { inner: FBExpansion::from_json(s).py()? })
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().py()
    }

    #[getter]
    fn coeffs(&self) -> Vec<Complex64> {
        self.inner.coeffs().to_vec()
    }

    fn get(&self, m: i32, n: u32) -> PyResult<Complex64> {
        self.inner.get(m, n).py()
    }

    fn set(&mut self, m: i32, n: u32, value: Complex64) -> PyResult<()> {
        self.inner.set(m, n, value).py()
    }

    fn norm(&self) -> f64 {
        self.inner.norm()
    }

    /// Field value at polar coordinates `(r, theta)`.
    fn __call__(&self, r: f64, theta: f64) -> PyResult<Complex64> {
        let space = FBSpace::new(self.inner.m_max(), self.inner.n_max(), self.inner.r0()).py()?;
        space.eval_expansion(&self.inner, r, theta).py()
    }

    fn __repr__(&self) -> String {
        format!(
            "Expansion(M={}, N={}, R0={}, norm={:.6})",
            self.inner.m_max(),
            self.inner.n_max(),
            self.inner.r0(),
            self.inner.norm()
        )
    }
}

/// Boundary measurements at several frequencies.
#[pyclass(module = "helmsource")]
struct Measurements {
    inner: MeasurementSet,
}

#[pymethods]
impl Measurements {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(Self { inner: MeasurementSet::from_json(s).py()? })
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().py()
    }

    #[getter]
    fn frequencies(&self) -> Vec<f64> {
        self.inner.measurements().iter().map(|m| m.k()).collect()
    }

    fn samples(&self, k: f64) -> PyResult<Vec<Complex64>> {
        self.inner
            .find(k)
            .map(|m| m.samples().to_vec())
            .ok_or_else(|| PyValueError::new_err(format!("no measurement at k = {k}")))
    }

    /// Copy with relative noise `delta` added to every measurement.
    fn with_noise(&self, delta: f64, seed: u64) -> PyResult<Self> {
        let noisy = self
            .inner
            .measurements()
            .iter()
            .map(|m| add_noise(m, delta, seed))
            .collect::<helmsource_core::Result<Vec<_>>>()
            .py()?;
        Ok(Self { inner: MeasurementSet::new(self.inner.r(), self.inner.p(), noisy).py()? })
    }

    fn __len__(&self) -> usize {
        self.inner.measurements().len()
    }
}

#[pyfunction]
fn bessel_j(m: i32, x: f64) -> PyResult<f64> {
    specfun::bessel_j(m, x).py()
}

#[pyfunction]
fn bessel_y(m: i32, x: f64) -> PyResult<f64> {
    specfun::bessel_y(m, x).py()
}

#[pyfunction]
fn bessel_zero(m: u32, n: u32) -> PyResult<f64> {
    specfun::bessel_zero(m, n).py()
}

/// Orthonormal basis function `phi_{m,n}` at polar coordinates.
#[pyfunction]
#[pyo3(signature = (m, n, r, theta, r0 = 1.0))]
fn fb_basis(m: i32, n: u32, r: f64, theta: f64, r0: f64) -> PyResult<Complex64> {
    helmsource_core::fbbasis::eval_basis(FBIndex::new(m, n), r, theta, r0).py()
}

/// `(m, n, j_mn)` rows for `m <= max_order`, `n <= max_index`.
#[pyfunction]
fn zeros_table(max_order: u32, max_index: u32) -> PyResult<Vec<(u32, u32, f64)>> {
    Ok(BesselZeroTable::new(max_order, max_index).py()?.iter().collect())
}

/// `(delta_k, (m, i))` of the limiting index.
#[pyfunction]
#[pyo3(signature = (m, n, r0 = 1.0, fast = false))]
fn admissible_delta(m: u32, n: u32, r0: f64, fast: bool) -> PyResult<(f64, (u32, u32))> {
    let t = BesselZeroTable::new(m, n.max(2)).py()?;
    let res = freqplan::lemma1_delta(&t, m, n, r0, fast).py()?;
    Ok((res.delta_k, res.limiting))
}

/// `(estimate, exact_count)` of zeros within `delta_j` of `alpha`.
#[pyfunction]
fn density_estimate(alpha: f64, delta_j: f64) -> PyResult<(f64, usize)> {
    let t = freqplan::table_covering(alpha + delta_j + 1.0).py()?;
    let d = freqplan::density_estimate(alpha, delta_j, &t).py()?;
    Ok((d.estimate, d.exact_count))
}

#[pyfunction]
#[pyo3(signature = (plan, source, engine = "sve", samples = 200, noise = 0.0, seed = 0))]
fn simulate(
    plan: &Plan,
    source: &Bound<'_, PyAny>,
    engine: &str,
    samples: usize,
    noise: f64,
    seed: u64,
) -> PyResult<Measurements> {
    let src = self::source(source)?;
    let grid = PolarGrid::with_defaults(plan.inner.r0).py()?;
    let mut set = pipeline::simulate(&plan.inner, &src, self::engine(engine)?, samples, &grid, false).py()?;
    if noise > 0.0 {
        set = pipeline::add_noise_set(&set, noise, seed).py()?;
    }
    Ok(Measurements { inner: set })
}

#[pyfunction]
#[pyo3(signature = (plan, measurements, rule = "trapezoid", symmetrize = false))]
fn reconstruct(plan: &Plan, measurements: &Measurements, rule: &str, symmetrize: bool) -> PyResult<Expansion> {
    let space = FBSpace::new(plan.inner.m_max, plan.inner.n_max, plan.inner.r0).py()?;
    let rec = pipeline::reconstruct_from_measurements(&plan.inner, &space, &measurements.inner, self::rule(rule)?, symmetrize)
        .py()?;
    Ok(Expansion { inner: rec.expansion })
}

/// `(blocks, margins)` with one square matrix and one margin list per order.
#[pyfunction]
fn k_matrix(plan: &Plan) -> PyResult<(Vec<Vec<Vec<f64>>>, Vec<Vec<f64>>)> {
    let space = FBSpace::new(plan.inner.m_max, plan.inner.n_max, plan.inner.r0).py()?;
    let k = KMatrix::assemble(&plan.inner, &space).py()?;
    let blocks = k
        .blocks()
        .iter()
        .map(|b| b.row_iter().map(|r| r.iter().copied().collect()).collect())
        .collect();
    Ok((blocks, k.dominance_report().margins))
}

/// Full plan, simulate and reconstruct run. Returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (m, n, source, delta_k = None, allow_wide = false, noise = 0.0, seed = 0, engine = "sve", rule = "trapezoid", symmetrize = false))]
#[allow(clippy::too_many_arguments)]
fn run_experiment(
    m: u32,
    n: u32,
    source: &Bound<'_, PyAny>,
    delta_k: Option<f64>,
    allow_wide: bool,
    noise: f64,
    seed: u64,
    engine: &str,
    rule: &str,
    symmetrize: bool,
) -> PyResult<String> {
    let mut cfg = ExperimentConfig::new(m, n, self::source(source)?);
    cfg.delta = delta(delta_k);
    cfg.allow_wide = allow_wide;
    cfg.noise = noise;
    cfg.seed = seed;
    cfg.engine = self::engine(engine)?;
    cfg.rule = self::rule(rule)?;
    cfg.symmetrize = symmetrize;
    pipeline::run_reconstruction(&cfg).py()?.to_json().py()
}

/// One of the published experiment tables as CSV.
#[pyfunction]
#[pyo3(signature = (table, engine = "sve", seed = 0))]
fn paper_demo(table: u32, engine: &str, seed: u64) -> PyResult<String> {
    let cols = pipeline::paper_demo(table, self::engine(engine)?, seed).py()?;
    let mut buf = Vec::new();
    pipeline::write_demo_csv(&cols, &mut buf).py()?;
    String::from_utf8(buf).map_err(|e| HelmsourceError::new_err(e.to_string()))
}

#[pymodule]
fn helmsource(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("HelmsourceError", m.py().get_type::<HelmsourceError>())?;
    m.add_class::<Plan>()?;
    m.add_class::<Expansion>()?;
    m.add_class::<Measurements>()?;
    m.add_function(wrap_pyfunction!(bessel_j, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_y, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_zero, m)?)?;
    m.add_function(wrap_pyfunction!(zeros_table, m)?)?;
    m.add_function(wrap_pyfunction!(fb_basis, m)?)?;
    m.add_function(wrap_pyfunction!(admissible_delta, m)?)?;
    m.add_function(wrap_pyfunction!(density_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct, m)?)?;
    m.add_function(wrap_pyfunction!(k_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(paper_demo, m)?)?;
    Ok(())
}
