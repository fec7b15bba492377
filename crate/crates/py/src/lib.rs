//! Python bindings: exposes cycles, orbits, realizations, counts, and the
//! brute-force verifier. Exact rationals cross the boundary as
//! `(numerator, denominator)` tuples of Python ints, ready for
//! `fractions.Fraction`.

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use cyclic::oracle::DEFAULT_ORBIT_BUDGET;
use cyclic::Rational;

fn err(e: cyclic::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn pair(r: &Rational) -> (BigInt, BigInt) {
    (r.numer().clone(), r.denom().clone())
}

/// A q-cycle acting on {1, ..., q}.
#[pyclass(frozen, eq, hash, skip_from_py_object)]
#[derive(PartialEq, Eq, Hash, Clone)]
struct Cycle {
    inner: cyclic::Cycle,
}

#[pymethods]
impl Cycle {
    /// Builds a cycle from cycle notation (default) or from one-line images.
    #[new]
    #[pyo3(signature = (symbols, one_line = false))]
    fn new(symbols: Vec<usize>, one_line: bool) -> PyResult<Self> {
        let inner = if one_line {
            cyclic::Cycle::from_one_line(&symbols)
        } else {
            cyclic::Cycle::from_cycle_notation(&symbols)
        };
        Ok(Cycle { inner: inner.map_err(err)? })
    }

    /// The rotation cycle i -> i + p (mod q); requires gcd(p, q) = 1.
    #[staticmethod]
    fn rotation(q: usize, p: usize) -> PyResult<Self> {
        Ok(Cycle {
            inner: cyclic::Cycle::rotation(q, p).map_err(err)?,
        })
    }

    #[getter]
    fn q(&self) -> usize {
        self.inner.q()
    }

    fn descent(&self) -> usize {
        self.inner.descent()
    }

    fn symmetry_order(&self) -> usize {
        self.inner.symmetry_order()
    }

    fn one_line(&self) -> Vec<usize> {
        self.inner.one_line().to_vec()
    }

    fn cycle_notation(&self) -> Vec<usize> {
        self.inner.cycle_notation()
    }

    fn signature(&self) -> Vec<u32> {
        cyclic::Signature::of_cycle(&self.inner)
            .bits()
            .iter()
            .map(|&b| b as u32)
            .collect()
    }

    fn marked_indices(&self) -> Vec<usize> {
        cyclic::Signature::of_cycle(&self.inner).marked_indices()
    }

    fn inverse(&self) -> Cycle {
        Cycle { inner: self.inner.inverse() }
    }

    /// The conjugate rho^(-j) sigma rho^j.
    fn conjugate(&self, j: i64) -> Cycle {
        Cycle {
            inner: self.inner.conjugate_by_rotation(j),
        }
    }

    /// Rows of the transition matrix as Python ints.
    fn transition_matrix(&self) -> Vec<Vec<BigUint>> {
        let a = cyclic::TransitionMatrix::of_cycle(&self.inner);
        (0..a.q()).map(|i| a.row(i).to_vec()).collect()
    }

    /// Least n with A^n entrywise positive, or None for a rotation cycle.
    fn regularity_index(&self) -> Option<usize> {
        cyclic::regularity_index(&self.inner)
    }

    /// The stationary probability vector of the transition matrix as
    /// (numerator, denominator) pairs.
    fn stationary_vector(&self) -> PyResult<Vec<(BigInt, BigInt)>> {
        let a = cyclic::TransitionMatrix::of_cycle(&self.inner);
        let ell = cyclic::stationary_vector(&a).map_err(err)?;
        Ok(ell.entries().iter().map(pair).collect())
    }

    /// All distinct conjugates forming the combinatorial type.
    fn type_representatives(&self) -> Vec<Cycle> {
        self.inner
            .combinatorial_type()
            .representatives()
            .iter()
            .map(|c| Cycle { inner: c.clone() })
            .collect()
    }

    /// Number of realizations under m_k.
    fn count_realizations(&self, k: u32) -> BigUint {
        cyclic::count_cycle_realizations(&self.inner, k)
    }

    /// Number of realizations of the combinatorial type under m_k.
    fn count_type_realizations(&self, k: u32) -> PyResult<BigUint> {
        cyclic::count_type_realizations(&self.inner, k).map_err(err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Cycle({:?})", self.inner.cycle_notation())
    }
}

/// A period-q orbit of m_k with exact rational points.
#[pyclass(frozen, eq, skip_from_py_object)]
#[derive(PartialEq, Eq, Clone)]
struct Orbit {
    inner: cyclic::Orbit,
}

#[pymethods]
impl Orbit {
    /// Builds an orbit from (numerator, denominator) pairs and validates it.
    #[new]
    fn new(k: u32, points: Vec<(BigInt, BigInt)>) -> PyResult<Self> {
        let points = points
            .into_iter()
            .map(|(n, d)| Rational::new(n, d))
            .collect();
        Ok(Orbit {
            inner: cyclic::Orbit::new(k, points).map_err(err)?,
        })
    }

    #[getter]
    fn k(&self) -> u32 {
        self.inner.k()
    }

    #[getter]
    fn q(&self) -> usize {
        self.inner.q()
    }

    /// Points in lowest terms as (numerator, denominator) pairs.
    fn points(&self) -> Vec<(BigInt, BigInt)> {
        self.inner.points().iter().map(pair).collect()
    }

    /// Numerators over the common denominator k^q - 1.
    fn numerators(&self) -> (Vec<BigUint>, BigUint) {
        self.inner.numerators()
    }

    fn reduced(&self) -> Vec<String> {
        self.inner.reduced_points()
    }

    /// The fixed point distribution as (counts, shift).
    fn fix(&self) -> (Vec<u64>, u64) {
        let f = self.inner.fix();
        (f.counts().to_vec(), f.shift())
    }

    /// The cumulative deployment vector.
    fn dep(&self) -> Vec<u64> {
        self.inner.dep().components().to_vec()
    }

    /// The cycle this orbit realizes.
    fn classify(&self) -> Cycle {
        Cycle {
            inner: self.inner.classify(),
        }
    }

    /// The orbit translated by num/den mod 1.
    fn rotate(&self, num: i64, den: i64) -> PyResult<Orbit> {
        if den == 0 {
            return Err(PyValueError::new_err("zero denominator"));
        }
        let delta = Rational::new(BigInt::from(num), BigInt::from(den));
        Ok(Orbit {
            inner: self.inner.rotate(&delta).map_err(err)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.reduced_points().join(" ")
    }

    fn __repr__(&self) -> String {
        format!("Orbit(k={}, {{{}}})", self.inner.k(), self.inner.reduced_points().join(", "))
    }
}

/// The unique minimal realization of the cycle (degree = descent number).
#[pyfunction]
fn realize_minimal(cycle: &Cycle) -> PyResult<Orbit> {
    Ok(Orbit {
        inner: cyclic::realize_minimal(&cycle.inner).map_err(err)?,
    })
}

/// The realization of the cycle under m_k with the given fixed point
/// distribution and shift.
#[pyfunction]
#[pyo3(signature = (cycle, k, fix, shift = 0))]
fn realize_general(cycle: &Cycle, k: u32, fix: Vec<u64>, shift: u64) -> PyResult<Orbit> {
    let n = cyclic::FixVector::new(fix, shift).map_err(err)?;
    Ok(Orbit {
        inner: cyclic::realize_general(&cycle.inner, k, &n).map_err(err)?,
    })
}

/// The realization of the cycle with the given deployment vector; the degree
/// is `len(dep) + 1`.
#[pyfunction]
fn realize_from_dep(cycle: &Cycle, dep: Vec<u64>) -> PyResult<Orbit> {
    let w = cyclic::DepVector::new(dep).map_err(err)?;
    let k = w.degree();
    Ok(Orbit {
        inner: cyclic::realize_from_dep(&cycle.inner, k, &w).map_err(err)?,
    })
}

/// All admissible (fix, shift) pairs in degree k, in lexicographic order.
#[pyfunction]
fn enumerate_admissible(cycle: &Cycle, k: u32) -> PyResult<Vec<(Vec<u64>, u64)>> {
    let pairs = cyclic::enumerate_admissible(&cycle.inner, k).map_err(err)?;
    Ok(pairs
        .into_iter()
        .map(|n| (n.counts().to_vec(), n.shift()))
        .collect())
}

/// Canonical representatives of the combinatorial types of q-cycles.
#[pyfunction]
#[pyo3(signature = (q, bound = 9))]
fn enumerate_types(q: usize, bound: usize) -> PyResult<Vec<Cycle>> {
    let types = cyclic::enumerate_types(q, bound).map_err(err)?;
    Ok(types
        .into_iter()
        .map(|t| Cycle { inner: t.canonical().clone() })
        .collect())
}

/// Every period-q orbit of m_k, ordered by least numerator.
#[pyfunction]
#[pyo3(signature = (q, k, budget = DEFAULT_ORBIT_BUDGET, jobs = 1))]
fn enumerate_orbits(q: usize, k: u32, budget: u64, jobs: usize) -> PyResult<Vec<Orbit>> {
    let catalog = cyclic::enumerate_orbits(q, k, budget, jobs.max(1)).map_err(err)?;
    Ok(catalog
        .orbits()
        .iter()
        .map(|o| Orbit { inner: o.clone() })
        .collect())
}

/// Cross-checks the closed-form counts against the brute-force catalog and
/// returns the full report as a JSON string (key "pass" is the verdict).
#[pyfunction]
#[pyo3(signature = (q, k, budget = DEFAULT_ORBIT_BUDGET, cycle = None, jobs = 1))]
fn verify_counts(
    q: usize,
    k: u32,
    budget: u64,
    cycle: Option<&Cycle>,
    jobs: usize,
) -> PyResult<String> {
    let filter = cycle.map(|c| &c.inner);
    let report = cyclic::verify_counts(q, k, budget, filter, jobs.max(1)).map_err(err)?;
    serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// SVG circle diagram of an orbit.
#[pyfunction]
fn render_svg(orbit: &Orbit) -> String {
    cyclic::diagram::render_orbit_svg(&orbit.inner)
}

#[pymodule]
fn cyclic_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Cycle>()?;
    m.add_class::<Orbit>()?;
    m.add_function(wrap_pyfunction!(realize_minimal, m)?)?;
    m.add_function(wrap_pyfunction!(realize_general, m)?)?;
    m.add_function(wrap_pyfunction!(realize_from_dep, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_admissible, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_types, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_orbits, m)?)?;
    m.add_function(wrap_pyfunction!(verify_counts, m)?)?;
    m.add_function(wrap_pyfunction!(render_svg, m)?)?;
    m.add("DEFAULT_ORBIT_BUDGET", DEFAULT_ORBIT_BUDGET)?;
    Ok(())
}
