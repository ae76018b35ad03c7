//! Python bindings for `lissajous_braids`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use lissajous_braids::algebra::{FriezeWord, Psl2Mat};
use lissajous_braids::classify::{self as cls, LevelSlope};
use lissajous_braids::error::Error;
use lissajous_braids::lissajous::{self as liss, TypeMN};
use lissajous_braids::report::Report;
use lissajous_braids::shapetrace::{itinerary as trace_itinerary, DEFAULT_RATIO};
use lissajous_braids::surd;
use lissajous_braids::syzygy;
use lissajous_braids::verify::{run_suite, Suite, VerifyOptions};
use lissajous_braids::words::{self, BinaryWord, Slope};

create_exception!(pylissajous, LissajousError, PyValueError);

fn err(e: Error) -> PyErr {
    LissajousError::new_err(e.to_string())
}

fn label(level: u32, slope: &str) -> PyResult<LevelSlope> {
    let slope: Slope = slope.parse().map_err(err)?;
    LevelSlope::new(level, slope).map_err(err)
}

fn json_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else {
                let text = n.to_string();
                if text.contains(['.', 'e', 'E']) {
                    text.parse::<f64>()
                        .map_err(|e| PyValueError::new_err(e.to_string()))?
                        .into_pyobject(py)?
                        .into_any()
                } else {
                    py.import("builtins")?.getattr("int")?.call1((text,))?
                }
            }
        }
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn matrix_to_py<'py>(py: Python<'py>, m: &Psl2Mat) -> PyResult<Bound<'py, PyAny>> {
    json_to_py(py, &serde_json::to_value(m).expect("matrix serializes"))
}

/// A reduced word in the letters b, d, p, q.
#[pyclass(
    name = "FriezeWord",
    module = "pylissajous",
    frozen,
    eq,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
struct PyFriezeWord(FriezeWord);

#[pymethods]
impl PyFriezeWord {
    #[new]
    fn new(letters: &str) -> PyResult<Self> {
        letters.parse().map(PyFriezeWord).map_err(err)
    }

    fn matrix<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        matrix_to_py(py, &self.0.matrix())
    }

    fn inverse(&self) -> Self {
        PyFriezeWord(self.0.inverse())
    }

    fn is_palindrome(&self) -> bool {
        self.0.is_palindrome()
    }

    fn second_half(&self) -> PyResult<Self> {
        lissajous_braids::algebra::second_half(&self.0)
            .map(PyFriezeWord)
            .map_err(err)
    }

    fn s3_image(&self) -> String {
        lissajous_braids::algebra::s3_image(&self.0).to_string()
    }

    fn cyclically_equal(&self, other: &Self) -> bool {
        lissajous_braids::algebra::cyclically_equal(&self.0, &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyFriezeWord(self.0.concat(&other.0))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("FriezeWord('{}')", self.0)
    }
}

/// Full classification report of the type (m, n) as a dict.
#[pyfunction]
fn classify<'py>(py: Python<'py>, m: i64, n: i64) -> PyResult<Bound<'py, PyAny>> {
    let report = Report::for_type(TypeMN::new(m, n)).map_err(err)?;
    json_to_py(py, &report.to_json())
}

/// Full report of the type carrying level `level` and slope "q/p".
#[pyfunction]
fn from_label<'py>(py: Python<'py>, level: u32, slope: &str) -> PyResult<Bound<'py, PyAny>> {
    let report = Report::for_label(label(level, slope)?).map_err(err)?;
    json_to_py(py, &report.to_json())
}

#[pyfunction]
fn is_collision_free(m: i64, n: i64) -> bool {
    liss::is_collision_free(TypeMN::new(m, n))
}

/// (m*, n*, ell) with both coordinates ≡ 1 mod 3.
#[pyfunction]
fn normalize(m: i64, n: i64) -> PyResult<(i64, i64, i64)> {
    let nt = liss::normalize(TypeMN::new(m, n)).map_err(err)?;
    Ok((nt.m_star, nt.n_star, nt.ell))
}

#[pyfunction]
fn reduce_to_p0(m: i64, n: i64) -> PyResult<(i64, i64)> {
    let nt = liss::normalize(TypeMN::new(m, n)).map_err(err)?;
    let t = liss::reduce_to_p0(&nt).map_err(err)?;
    Ok((t.m, t.n))
}

/// (level, "q/p") of a primitive type.
#[pyfunction]
fn level_slope(m: i64, n: i64) -> PyResult<(u32, String)> {
    let ls = cls::level_slope_of(TypeMN::new(m, n)).map_err(err)?;
    Ok((ls.level, ls.slope.to_string()))
}

#[pyfunction]
fn type_of(level: u32, slope: &str) -> PyResult<(i64, i64)> {
    let t = cls::type_of(label(level, slope)?).map_err(err)?;
    Ok((t.m, t.n))
}

#[pyfunction]
fn epsilon_bits(m: i64, n: i64) -> PyResult<String> {
    let nt = liss::normalize(TypeMN::new(m, n)).map_err(err)?;
    Ok(liss::epsilon_seq(&nt).map_err(err)?.bit_string())
}

/// The braid W over A, B and B⁻¹ (printed as "BB").
#[pyfunction]
fn braid_w(m: i64, n: i64) -> PyResult<String> {
    let nt = liss::normalize(TypeMN::new(m, n)).map_err(err)?;
    Ok(liss::build_w(&nt).map_err(err)?.to_string())
}

#[pyfunction]
fn frieze_h(m: i64, n: i64) -> PyResult<PyFriezeWord> {
    let nt = liss::normalize(TypeMN::new(m, n)).map_err(err)?;
    liss::build_h(&nt).map(PyFriezeWord).map_err(err)
}

#[pyfunction]
fn frieze_w(m: i64, n: i64) -> PyResult<PyFriezeWord> {
    let nt = liss::normalize(TypeMN::new(m, n)).map_err(err)?;
    liss::build_w_frieze(&nt).map(PyFriezeWord).map_err(err)
}

/// Far endpoint of the W axis with its continued fraction.
#[pyfunction]
fn continued_fraction<'py>(py: Python<'py>, m: i64, n: i64) -> PyResult<Bound<'py, PyAny>> {
    let nt = liss::normalize(TypeMN::new(m, n)).map_err(err)?;
    let w = liss::build_w_frieze(&nt).map_err(err)?;
    let far = surd::far_endpoint(&w.matrix()).map_err(err)?;
    let cf = surd::cf_expand(&far);
    let mut value = serde_json::to_value(&cf).expect("expansion serializes");
    value["far_endpoint"] = serde_json::to_value(&far).expect("surd serializes");
    value["approx"] = serde_json::json!(far.approx());
    json_to_py(py, &value)
}

#[pyfunction]
#[pyo3(signature = (m, n, periods = 1, group = false))]
fn syzygy_sequence(m: i64, n: i64, periods: usize, group: bool) -> PyResult<String> {
    let nt = liss::normalize(TypeMN::new(m, n)).map_err(err)?;
    let p0 = liss::reduce_to_p0(&nt).map_err(err)?;
    let seq = syzygy::syzygy_sequence(p0, periods).map_err(err)?;
    if group {
        let ls = cls::level_slope_of(p0).map_err(err)?;
        let block = syzygy::omega(ls).map_err(err)?.len();
        Ok(seq.grouped(block).trim_end_matches('.').to_string())
    } else {
        Ok(seq.to_string())
    }
}

#[pyfunction]
fn omega(level: u32, slope: &str) -> PyResult<String> {
    Ok(syzygy::omega(label(level, slope)?)
        .map_err(err)?
        .to_string())
}

#[pyfunction]
fn christoffel(slope: &str) -> PyResult<String> {
    let s: Slope = slope.parse().map_err(err)?;
    Ok(words::christoffel(s).to_string())
}

#[pyfunction]
fn palindromic_conjugate(word: &str) -> PyResult<String> {
    let w: BinaryWord = word.parse().map_err(err)?;
    Ok(words::palindromic_conjugate(&w).map_err(err)?.to_string())
}

#[pyfunction]
fn enumerate_p0(max_m: i64) -> Vec<(i64, i64)> {
    cls::enumerate_p0(max_m)
        .into_iter()
        .map(|t| (t.m, t.n))
        .collect()
}

/// Region labels visited by the shape curve over one third of a period.
#[pyfunction]
#[pyo3(signature = (m, n, ratio = DEFAULT_RATIO, steps = 20_000))]
fn itinerary(m: i64, n: i64, ratio: f64, steps: usize) -> PyResult<Vec<String>> {
    let nt = liss::normalize(TypeMN::new(m, n)).map_err(err)?;
    Ok(trace_itinerary(&nt, ratio, steps)
        .map_err(err)?
        .into_iter()
        .map(|r| r.to_string())
        .collect())
}

/// Runs a consistency suite and returns (failures, cases).
#[pyfunction]
#[pyo3(signature = (suite, max_m = None, max_sum = 100, seed = 0))]
fn verify(suite: &str, max_m: Option<i64>, max_sum: i64, seed: u64) -> PyResult<(usize, usize)> {
    let suite: Suite = suite.parse().map_err(err)?;
    let outcome = run_suite(
        suite,
        &VerifyOptions {
            max_m,
            max_sum,
            seed,
        },
    );
    Ok((outcome.failures(), outcome.cases.len()))
}

#[pymodule]
pub fn pylissajous(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("LissajousError", m.py().get_type::<LissajousError>())?;
    m.add_class::<PyFriezeWord>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(from_label, m)?)?;
    m.add_function(wrap_pyfunction!(is_collision_free, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_to_p0, m)?)?;
    m.add_function(wrap_pyfunction!(level_slope, m)?)?;
    m.add_function(wrap_pyfunction!(type_of, m)?)?;
    m.add_function(wrap_pyfunction!(epsilon_bits, m)?)?;
    m.add_function(wrap_pyfunction!(braid_w, m)?)?;
    m.add_function(wrap_pyfunction!(frieze_h, m)?)?;
    m.add_function(wrap_pyfunction!(frieze_w, m)?)?;
    m.add_function(wrap_pyfunction!(continued_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(syzygy_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(omega, m)?)?;
    m.add_function(wrap_pyfunction!(christoffel, m)?)?;
    m.add_function(wrap_pyfunction!(palindromic_conjugate, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_p0, m)?)?;
    m.add_function(wrap_pyfunction!(itinerary, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
