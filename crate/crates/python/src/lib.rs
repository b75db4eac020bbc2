//! Python bindings: instances, separation certificates, analysis and
//! pictures. Exact values cross the boundary as "p/q" strings; reports
//! come back as plain dicts.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use serde_json::Value;

use conesep::augdual::{classify_augmented, AugmentedFunctional};
use conesep::io::{self, Instance as CoreInstance, SeminormSpec};
use conesep::random::{random_instance, RandomSpec};
use conesep::report;
use conesep::separation::{check_hypotheses, separate, verify_certificate, SeparationCertificate, Variant};
use conesep::{bundled, svg, Error, Functional, Scalar, Vector};

create_exception!(pyconesep, ConesepError, PyException);
create_exception!(pyconesep, HypothesisError, ConesepError);

fn err(e: Error) -> PyErr {
    match e {
        Error::HypothesisFailed(_) | Error::NotPointed(_) | Error::NotSolid => HypothesisError::new_err(e.to_string()),
        e => ConesepError::new_err(e.to_string()),
    }
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (v.to_string(),))?.unbind())
}

fn scalar(text: &str) -> PyResult<Scalar> {
    Scalar::parse(text).map_err(|e| ConesepError::new_err(format!("bad scalar {text:?}: {e}")))
}

fn vector(items: &[String]) -> PyResult<Vector> {
    Ok(Vector::new(items.iter().map(|s| scalar(s)).collect::<PyResult<_>>()?))
}

fn strings(v: &Vector) -> Vec<String> {
    v.coords().iter().map(Scalar::to_string).collect()
}

fn seminorm(flag: Option<&str>) -> PyResult<Option<SeminormSpec>> {
    flag.map(SeminormSpec::parse_flag).transpose().map_err(err)
}

/// A separation problem with its gauge.
#[pyclass(module = "pyconesep")]
pub struct Instance {
    inner: CoreInstance,
}

#[pymethods]
impl Instance {
    /// Parses instance JSON; `seminorm` overrides the file's gauge.
    #[staticmethod]
    #[pyo3(signature = (text, seminorm=None))]
    fn from_json(text: &str, seminorm: Option<&str>) -> PyResult<Self> {
        let spec = self::seminorm(seminorm)?;
        Ok(Instance {
            inner: io::parse_instance(text, spec.as_ref()).map_err(err)?,
        })
    }

    /// One of the built-in instances by name.
    #[staticmethod]
    #[pyo3(signature = (name, seminorm=None))]
    fn bundled(name: &str, seminorm: Option<&str>) -> PyResult<Self> {
        let spec = self::seminorm(seminorm)?;
        let (spec, psi) = match spec {
            Some(s) => {
                let psi = s.build(2).map_err(err)?;
                (s, psi)
            }
            None => (SeminormSpec::Polygon(8), bundled::default_gauge()),
        };
        let found = bundled::all(&psi)
            .map_err(err)?
            .into_iter()
            .find(|b| b.name == name)
            .ok_or_else(|| ConesepError::new_err(format!("no bundled instance named {name:?}")))?;
        // The orthant fixtures are stated for the max norm.
        let spec = if name.starts_with("orthant") { SeminormSpec::Linf } else { spec };
        let mut inner = CoreInstance::new(found.problem, spec);
        inner.name = Some(name.to_string());
        Ok(Instance { inner })
    }

    /// Seeded random instance; with `variant` set, only instances meeting
    /// its hypotheses are kept.
    #[staticmethod]
    #[pyo3(signature = (dim, seed, pieces=2, generators=3, variant=None, seminorm="linf", max_attempts=200))]
    fn random(
        dim: usize,
        seed: u64,
        pieces: usize,
        generators: usize,
        variant: Option<&str>,
        seminorm: &str,
        max_attempts: usize,
    ) -> PyResult<Self> {
        let mut spec = RandomSpec::new(dim, seed);
        spec.pieces = pieces;
        spec.generators = generators;
        spec.request = variant.map(Variant::parse).transpose().map_err(err)?;
        spec.seminorm = SeminormSpec::parse_flag(seminorm).map_err(err)?;
        spec.max_attempts = max_attempts;
        Ok(Instance {
            inner: random_instance(&spec).map_err(err)?,
        })
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.problem.dim()
    }

    #[getter]
    fn variant(&self) -> String {
        self.inner.problem.variant.to_string()
    }

    #[getter]
    fn name(&self) -> Option<String> {
        self.inner.name.clone()
    }

    /// Same cones and gauge, another variant.
    fn with_variant(&self, variant: &str) -> PyResult<Self> {
        let mut inner = self.inner.clone();
        inner.problem = inner.problem.with_variant(Variant::parse(variant).map_err(err)?);
        Ok(Instance { inner })
    }

    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    /// Gauge value at a point given as "p/q" strings.
    fn gauge(&self, point: Vec<String>) -> PyResult<String> {
        let x = vector(&point)?;
        Ok(self.inner.problem.psi.evaluate(&x).map_err(err)?.to_string())
    }

    fn analyze(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &report::analyze(&self.inner).map_err(err)?)
    }

    fn check_hypotheses(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let r = check_hypotheses(&self.inner.problem).map_err(err)?;
        to_py(py, &serde_json::to_value(&r).expect("report serializes"))
    }

    /// Runs the driver for the instance's variant. Raises
    /// `HypothesisError` when the hypotheses fail.
    fn separate(&self) -> PyResult<Certificate> {
        Ok(Certificate {
            inner: separate(&self.inner.problem).map_err(err)?,
        })
    }

    /// Classifies `(x_star, alpha)` against the augmented dual sets of K.
    fn classify(&self, py: Python<'_>, x_star: Vec<String>, alpha: &str) -> PyResult<Py<PyAny>> {
        let p = &self.inner.problem;
        let aug = AugmentedFunctional::new(Functional::new(vector(&x_star)?), scalar(alpha)?).map_err(err)?;
        let c = classify_augmented(&p.k, &p.psi, &aug).map_err(err)?;
        to_py(py, &serde_json::to_value(&c).expect("class serializes"))
    }

    /// SVG picture of a planar instance, with the level curve of
    /// `certificate` when given.
    #[pyo3(signature = (certificate=None))]
    fn render_svg(&self, certificate: Option<&Certificate>) -> PyResult<String> {
        svg::render(&self.inner.problem, certificate.map(|c| &c.inner)).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(name={:?}, dimension={}, variant={})",
            self.inner.name,
            self.inner.problem.dim(),
            self.inner.problem.variant
        )
    }
}

/// A separating augmented functional with its exact checks.
#[pyclass(module = "pyconesep")]
pub struct Certificate {
    inner: SeparationCertificate,
}

#[pymethods]
impl Certificate {
    #[getter]
    fn x_star(&self) -> Vec<String> {
        strings(self.inner.aug.x_star.coeffs())
    }

    #[getter]
    fn alpha(&self) -> String {
        self.inner.aug.alpha.to_string()
    }

    #[getter]
    fn achieved(&self) -> &'static str {
        report::class_name(self.inner.achieved)
    }

    #[getter]
    fn linear(&self) -> bool {
        self.inner.linear
    }

    #[getter]
    fn verified(&self) -> bool {
        self.inner.verification.passed
    }

    /// Value of `x*(x) + α ψ(x)` at a point.
    fn phi(&self, instance: &Instance, point: Vec<String>) -> PyResult<String> {
        let x = vector(&point)?;
        let psi = instance.inner.problem.psi.evaluate(&x).map_err(err)?;
        Ok((self.inner.aug.x_star.apply(&x) + &self.inner.aug.alpha * &psi).to_string())
    }

    /// Re-runs every check against `instance`; true when the target class
    /// of its variant is reached.
    fn verify(&self, instance: &Instance) -> bool {
        let p = &instance.inner.problem;
        verify_certificate(p, &self.inner).achieved >= p.variant.target()
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &io::certificate_to_json(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!(
            "Certificate(x_star={:?}, alpha={}, achieved={})",
            self.x_star(),
            self.inner.aug.alpha,
            self.achieved()
        )
    }
}

/// Names of the built-in instances.
#[pyfunction]
fn bundled_names() -> PyResult<Vec<&'static str>> {
    Ok(bundled::all(&bundled::default_gauge()).map_err(err)?.iter().map(|b| b.name).collect())
}

#[pymodule]
fn pyconesep(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_class::<Certificate>()?;
    m.add_function(wrap_pyfunction!(bundled_names, m)?)?;
    m.add("ConesepError", m.py().get_type::<ConesepError>())?;
    m.add("HypothesisError", m.py().get_type::<HypothesisError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
