//! Python bindings for the germcalc toolkit.
//!
//! Exposes the jet arithmetic, the two germ classes, the integration and
//! differentiation transforms, classification, and the samplers. Exact
//! rationals cross the boundary as strings ("a" or "a/b"); floats appear
//! only in sampling output.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use germcalc::calculus::{differentiate_d, integrate_i, roundtrip_di, roundtrip_id};
use germcalc::classify::{classify_legendrian, classify_pedal, whitney_criterion, Classification};
use germcalc::germs::{
    assemble_pedal, decompose_pedal, validate_normalized, MapGerm3, NormalizedLegendrianGerm,
    PedalGerm as CorePedalGerm,
};
use germcalc::jet::Jet2;
use germcalc::legendrian::{lift_rank_check, lj_det, lj_reduced, norm_squared, normal_field};
use germcalc::sampling::{
    mesh_to_obj, polyline_to_csv, sample_surface, singular_locus, slice_front, slice_to_csv, Range2,
};
use germcalc::{parse_expr, RoundtripReport};

fn value_err(code: &str, message: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(format!("{code}: {message}"))
}

fn parse(text: &str, order: u32) -> PyResult<Jet2> {
    parse_expr(text, order).map_err(|e| value_err(e.code(), e))
}

fn classification_dict<'py>(py: Python<'py>, c: &Classification) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("tag", c.tag.name())?;
    let diags: Vec<(String, String)> = c
        .diagnostics
        .iter()
        .map(|x| (x.criterion.to_string(), x.value.to_string()))
        .collect();
    d.set_item("diagnostics", diags)?;
    Ok(d)
}

fn roundtrip_dict<'py>(py: Python<'py>, r: &RoundtripReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("equal", r.equal)?;
    d.set_item("compared_degree", r.compared_degree)?;
    let mismatches: Vec<(String, (u32, u32), String, String)> = r
        .mismatches
        .iter()
        .map(|m| {
            (
                m.component.to_string(),
                m.monomial,
                m.expected.clone(),
                m.got.clone(),
            )
        })
        .collect();
    d.set_item("mismatches", mismatches)?;
    Ok(d)
}

fn range_from(range: (f64, f64, f64, f64)) -> PyResult<Range2> {
    let r = Range2 {
        x_min: range.0,
        x_max: range.1,
        y_min: range.2,
        y_max: range.3,
    };
    if !r.is_finite() {
        return Err(value_err(
            "BadRange",
            "range must be finite with xmin < xmax, ymin < ymax",
        ));
    }
    Ok(r)
}

/// A truncated bivariate power series with exact rational coefficients.
#[pyclass(name = "Jet", frozen)]
struct PyJet {
    inner: Jet2,
}

#[pymethods]
impl PyJet {
    #[new]
    #[pyo3(signature = (text, order = 8))]
    fn new(text: &str, order: u32) -> PyResult<Self> {
        if order < 1 {
            return Err(value_err("BadOrder", "order must be at least 1"));
        }
        Ok(PyJet {
            inner: parse(text, order)?,
        })
    }

    #[getter]
    fn order(&self) -> u32 {
        self.inner.order()
    }

    #[getter]
    fn valid_degree(&self) -> u32 {
        self.inner.valid_degree()
    }

    /// Coefficient of x^i * y^j as an exact rational string.
    fn coeff(&self, i: u32, j: u32) -> String {
        self.inner.coeff(i, j).to_string()
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        self.inner.eval(x, y)
    }

    fn d_dx(&self) -> PyJet {
        PyJet {
            inner: self.inner.d_dx(),
        }
    }

    fn d_dy(&self) -> PyJet {
        PyJet {
            inner: self.inner.d_dy(),
        }
    }

    fn int0_x(&self) -> PyResult<PyJet> {
        self.inner
            .int0_x()
            .map(|inner| PyJet { inner })
            .map_err(|e| value_err(e.code(), e))
    }

    fn __add__(&self, other: &PyJet) -> PyResult<PyJet> {
        self.inner
            .add(&other.inner)
            .map(|inner| PyJet { inner })
            .map_err(|e| value_err(e.code(), e))
    }

    fn __sub__(&self, other: &PyJet) -> PyResult<PyJet> {
        self.inner
            .sub(&other.inner)
            .map(|inner| PyJet { inner })
            .map_err(|e| value_err(e.code(), e))
    }

    fn __mul__(&self, other: &PyJet) -> PyResult<PyJet> {
        self.inner
            .mul(&other.inner)
            .map(|inner| PyJet { inner })
            .map_err(|e| value_err(e.code(), e))
    }

    fn __neg__(&self) -> PyJet {
        PyJet {
            inner: self.inner.neg(),
        }
    }

    fn __eq__(&self, other: &PyJet) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Jet('{}', order={})", self.inner, self.inner.order())
    }
}

/// The pair (n, p) of a map-germ of pedal unfolding type (n*p, p, y).
#[pyclass(name = "PedalGerm", frozen)]
struct PyPedalGerm {
    inner: CorePedalGerm,
}

#[pymethods]
impl PyPedalGerm {
    #[new]
    #[pyo3(signature = (n, p, order = 8))]
    fn new(n: &str, p: &str, order: u32) -> PyResult<Self> {
        let n = parse(n, order)?;
        let p = parse(p, order)?;
        let inner = CorePedalGerm::new(n, p).map_err(|e| value_err(e.code(), e))?;
        Ok(PyPedalGerm { inner })
    }

    /// Decompose an assembled map (c1, c2, y) into its pedal pair.
    #[staticmethod]
    #[pyo3(signature = (c1, c2, c3, order = 8))]
    fn from_map(c1: &str, c2: &str, c3: &str, order: u32) -> PyResult<Self> {
        let m = MapGerm3::new(parse(c1, order)?, parse(c2, order)?, parse(c3, order)?)
            .map_err(|e| value_err(e.code(), e))?;
        let inner = decompose_pedal(&m).map_err(|e| value_err(e.code(), e))?;
        Ok(PyPedalGerm { inner })
    }

    #[getter]
    fn n(&self) -> PyJet {
        PyJet {
            inner: self.inner.n().clone(),
        }
    }

    #[getter]
    fn p(&self) -> PyJet {
        PyJet {
            inner: self.inner.p().clone(),
        }
    }

    /// The assembled components (n*p, p, y).
    fn assemble(&self) -> (PyJet, PyJet, PyJet) {
        let m = assemble_pedal(&self.inner);
        (
            PyJet { inner: m.c1 },
            PyJet { inner: m.c2 },
            PyJet { inner: m.c3 },
        )
    }

    /// Integrate into a normalized Legendrian front.
    fn integrate(&self) -> PyResult<PyLegendrianGerm> {
        integrate_i(&self.inner)
            .map(|inner| PyLegendrianGerm { inner })
            .map_err(|e| value_err(e.code(), e))
    }

    /// Exact classification: NonSingular, WhitneyUmbrella, or Unrecognized.
    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        classification_dict(py, &classify_pedal(&self.inner))
    }

    /// The independent classical cross-cap criterion on the assembled map.
    fn whitney_criterion(&self) -> PyResult<bool> {
        whitney_criterion(&assemble_pedal(&self.inner)).map_err(|e| value_err(e.code(), e))
    }

    /// Exact round trip differentiate(integrate(self)) == self.
    fn roundtrip<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = roundtrip_di(&self.inner).map_err(|e| value_err(e.code(), e))?;
        roundtrip_dict(py, &r)
    }

    /// Wavefront OBJ text of the assembled surface over a grid.
    #[pyo3(signature = (range = (-1.0, 1.0, -1.0, 1.0), res = (40, 40)))]
    fn mesh_obj(&self, range: (f64, f64, f64, f64), res: (u32, u32)) -> PyResult<String> {
        if res.0 < 1 || res.1 < 1 {
            return Err(value_err(
                "BadResolution",
                "resolution must be at least 1x1",
            ));
        }
        let mesh = sample_surface(&assemble_pedal(&self.inner), range_from(range)?, res);
        Ok(mesh_to_obj(&mesh))
    }

    fn __repr__(&self) -> String {
        format!("PedalGerm(n='{}', p='{}')", self.inner.n(), self.inner.p())
    }
}

/// A validated normalized Legendrian front (phi1, phi2, y).
#[pyclass(name = "LegendrianGerm", frozen)]
struct PyLegendrianGerm {
    inner: NormalizedLegendrianGerm,
}

#[pymethods]
impl PyLegendrianGerm {
    #[new]
    #[pyo3(signature = (phi1, phi2, order = 8))]
    fn new(phi1: &str, phi2: &str, order: u32) -> PyResult<Self> {
        let phi1 = parse(phi1, order)?;
        let phi2 = parse(phi2, order)?;
        let inner = validate_normalized(&phi1, &phi2).map_err(|e| value_err(e.code(), e))?;
        Ok(PyLegendrianGerm { inner })
    }

    #[getter]
    fn phi1(&self) -> PyJet {
        PyJet {
            inner: self.inner.phi1().clone(),
        }
    }

    #[getter]
    fn phi2(&self) -> PyJet {
        PyJet {
            inner: self.inner.phi2().clone(),
        }
    }

    /// The certified witness n with d(phi1)/dx = n * d(phi2)/dx.
    #[getter]
    fn pedal_n(&self) -> PyJet {
        PyJet {
            inner: self.inner.pedal_n().clone(),
        }
    }

    /// Differentiate back to the pedal pair.
    fn differentiate(&self) -> PyPedalGerm {
        PyPedalGerm {
            inner: differentiate_d(&self.inner),
        }
    }

    /// Exact classification: CuspidalEdge, Swallowtail, or Unrecognized.
    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        classification_dict(py, &classify_legendrian(&self.inner))
    }

    /// The unnormalized normal field (1, nu2, nu3) and the lift rank check.
    fn normal_field(&self) -> (PyJet, PyJet, PyJet, bool) {
        let f = normal_field(&self.inner);
        let immersive = lift_rank_check(&self.inner, &f);
        (
            PyJet {
                inner: f.nu1.clone(),
            },
            PyJet {
                inner: f.nu2.clone(),
            },
            PyJet {
                inner: f.nu3.clone(),
            },
            immersive,
        )
    }

    /// The reduced Legendrian Jacobian d(phi2)/dx.
    fn lj_reduced(&self) -> PyJet {
        PyJet {
            inner: lj_reduced(&self.inner),
        }
    }

    /// The determinant Legendrian Jacobian det(Phi_x, Phi_y, nu) and the
    /// positive unit ||nu||^2 that relates it to the reduced one.
    fn lj_det(&self) -> (PyJet, PyJet) {
        let f = normal_field(&self.inner);
        (
            PyJet {
                inner: lj_det(&self.inner, &f),
            },
            PyJet {
                inner: norm_squared(&f),
            },
        )
    }

    /// Exact round trip integrate(differentiate(self)) == self.
    fn roundtrip<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = roundtrip_id(&self.inner).map_err(|e| value_err(e.code(), e))?;
        roundtrip_dict(py, &r)
    }

    /// Wavefront OBJ text of the front surface over a grid.
    #[pyo3(signature = (range = (-1.0, 1.0, -1.0, 1.0), res = (40, 40)))]
    fn mesh_obj(&self, range: (f64, f64, f64, f64), res: (u32, u32)) -> PyResult<String> {
        if res.0 < 1 || res.1 < 1 {
            return Err(value_err(
                "BadResolution",
                "resolution must be at least 1x1",
            ));
        }
        let mesh = sample_surface(&self.inner.as_map(), range_from(range)?, res);
        Ok(mesh_to_obj(&mesh))
    }

    /// CSV of the traced singular locus {LJ = 0} in the source plane,
    /// or None when the locus is empty on the grid.
    #[pyo3(signature = (range = (-1.0, 1.0, -1.0, 1.0), res = (100, 100)))]
    fn locus_csv(&self, range: (f64, f64, f64, f64), res: (u32, u32)) -> PyResult<Option<String>> {
        if res.0 < 1 || res.1 < 1 {
            return Err(value_err(
                "BadResolution",
                "resolution must be at least 1x1",
            ));
        }
        let locus = singular_locus(&self.inner, range_from(range)?, res);
        Ok(if locus.is_empty() {
            None
        } else {
            Some(polyline_to_csv(&locus.domain))
        })
    }

    /// CSV of a y-slice of the front with per-sample unit normals.
    #[pyo3(signature = (y0, range_x = (-1.0, 1.0), samples = 100))]
    fn slice_csv(&self, y0: f64, range_x: (f64, f64), samples: u32) -> PyResult<String> {
        if samples < 2 {
            return Err(value_err(
                "BadResolution",
                "a slice needs at least two samples",
            ));
        }
        if !(range_x.0.is_finite() && range_x.1.is_finite() && range_x.0 < range_x.1) {
            return Err(value_err(
                "BadRange",
                "slice range must be finite with a < b",
            ));
        }
        Ok(slice_to_csv(&slice_front(
            &self.inner,
            y0,
            range_x,
            samples,
        )))
    }

    fn __repr__(&self) -> String {
        format!(
            "LegendrianGerm(phi1='{}', phi2='{}')",
            self.inner.phi1(),
            self.inner.phi2()
        )
    }
}

/// Classify an assembled map (c1, c2, y): decomposes into a pedal pair first.
#[pyfunction]
#[pyo3(signature = (c1, c2, c3, order = 8))]
fn classify_map<'py>(
    py: Python<'py>,
    c1: &str,
    c2: &str,
    c3: &str,
    order: u32,
) -> PyResult<Bound<'py, PyDict>> {
    let g = PyPedalGerm::from_map(c1, c2, c3, order)?;
    classification_dict(py, &classify_pedal(&g.inner))
}

#[pymodule]
fn germcalc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyJet>()?;
    m.add_class::<PyPedalGerm>()?;
    m.add_class::<PyLegendrianGerm>()?;
    m.add_function(wrap_pyfunction!(classify_map, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
