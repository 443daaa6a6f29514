//! Python bindings. Permutations cross the boundary as lists of 1-based
//! values; exact counts become Python ints and exact bounds `Fraction`s.

use num_bigint::BigUint;
use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyTuple;

use rankmod::constructions::{
    build_casym, build_cr, build_csym, cardinality_csym, lower_bound_casym, stirling2 as core_stirling2,
};
use rankmod::ecc::{self as core_ecc, constrained_universe, EccCode};
use rankmod::enumeration::{capacity_ratio as core_capacity_ratio, count_constrained, upper_bound_a_log};
use rankmod::metrics::{self as core_metrics, VectorSpace};
use rankmod::{BigCount, Budget, Code, Constraint, ConstraintKind, Error, IntVector, Metric};

create_exception!(rankmod, BudgetExceeded, PyValueError, "Exhaustive search past the configured n.");

fn err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for rankmod::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(err)
    }
}

fn budget(budget_n: usize) -> Budget {
    Budget::default().with_enumeration_n(budget_n)
}

fn perm(values: Vec<u32>) -> PyResult<rankmod::Permutation> {
    rankmod::Permutation::new(values).py()
}

fn constraint(kind: &str, k: u32) -> PyResult<Constraint> {
    Constraint::new(kind.parse::<ConstraintKind>().py()?, k).py()
}

fn metric(name: &str) -> PyResult<Metric> {
    name.parse().py()
}

fn words(code: &Code) -> Vec<Vec<u32>> {
    code.iter().map(|p| p.values().to_vec()).collect()
}

fn big(c: BigCount) -> BigUint {
    c.into_inner()
}

fn fraction<'py>(py: Python<'py>, r: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    let frac = py.import("fractions")?.getattr("Fraction")?;
    frac.call1((r.numer().clone(), r.denom().clone()))
}

/// A permutation of `[n]` in one-line notation.
#[pyclass(frozen, eq, hash, from_py_object, module = "rankmod")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct Permutation {
    inner: rankmod::Permutation,
}

#[pymethods]
impl Permutation {
    #[new]
    fn new(values: Vec<u32>) -> PyResult<Self> {
        Ok(Permutation { inner: perm(values)? })
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        Permutation { inner: rankmod::Permutation::identity(n) }
    }

    #[getter]
    fn values(&self) -> Vec<u32> {
        self.inner.values().to_vec()
    }

    fn inverse(&self) -> Self {
        Permutation { inner: self.inner.inverse() }
    }

    fn inversions(&self) -> u64 {
        self.inner.inversions()
    }

    fn valleys(&self) -> Vec<usize> {
        rankmod::perm::valleys(&self.inner)
    }

    fn satisfies(&self, kind: &str, k: u32) -> PyResult<bool> {
        Ok(constraint(kind, k)?.holds(self.inner.values()))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Permutation({:?})", self.inner.values())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyfunction]
fn satisfies(values: Vec<u32>, kind: &str, k: u32) -> PyResult<bool> {
    Ok(constraint(kind, k)?.holds(perm(values)?.values()))
}

/// Exact number of permutations of `[n]` satisfying the constraint.
#[pyfunction]
#[pyo3(signature = (n, kind, k, budget_n = Budget::DEFAULT_ENUMERATION_N))]
fn count(n: usize, kind: &str, k: u32, budget_n: usize) -> PyResult<BigUint> {
    count_constrained(n, constraint(kind, k)?, &budget(budget_n)).py().map(big)
}

/// The constrained set in lexicographic order.
#[pyfunction]
#[pyo3(signature = (n, kind, k, budget_n = 10))]
fn enumerate(n: usize, kind: &str, k: u32, budget_n: usize) -> PyResult<Vec<Vec<u32>>> {
    let u = constrained_universe(n, constraint(kind, k)?, &budget(budget_n)).py()?;
    Ok(u.into_iter().map(|p| p.into_values()).collect())
}

#[pyfunction]
fn upper_bound_log2(n: usize, k: u32) -> PyResult<f64> {
    Ok(upper_bound_a_log(n, k).py()?.value())
}

#[pyfunction]
fn capacity_ratio(count: BigUint, n: usize) -> PyResult<f64> {
    core_capacity_ratio(&BigCount::new(count), n).py()
}

#[pyfunction]
fn csym(n: usize, k: u32) -> PyResult<Vec<Vec<u32>>> {
    Ok(words(&build_csym(n, k).py()?))
}

#[pyfunction]
fn csym_size(n: usize, k: u32) -> PyResult<BigUint> {
    cardinality_csym(n, k).py().map(big)
}

#[pyfunction]
fn casym(n: usize) -> PyResult<Vec<Vec<u32>>> {
    Ok(words(&build_casym(n).py()?))
}

#[pyfunction]
fn cr(n: usize, r: usize) -> PyResult<Vec<Vec<u32>>> {
    Ok(words(&build_cr(n, r).py()?))
}

#[pyfunction]
fn casym_lower_bound(py: Python<'_>, n: usize) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &lower_bound_casym(n).py()?)
}

#[pyfunction]
fn stirling2(ell: usize, r: usize) -> PyResult<BigUint> {
    core_stirling2(ell, r).py().map(big)
}

#[pyfunction]
fn kendall_tau(a: Vec<u32>, b: Vec<u32>) -> PyResult<u64> {
    core_metrics::kendall_tau(&perm(a)?, &perm(b)?).py()
}

#[pyfunction]
fn inversion_distance(a: Vec<u32>, b: Vec<u32>) -> PyResult<u64> {
    core_metrics::inversion_distance(&perm(a)?, &perm(b)?).py()
}

#[pyfunction]
fn manhattan(a: Vec<u32>, b: Vec<u32>) -> PyResult<u64> {
    core_metrics::manhattan(a, b).py()
}

#[pyfunction]
fn inversion_ball(n: usize, r: u64) -> PyResult<BigUint> {
    core_metrics::ball_size_inversion(n, r).py().map(big)
}

/// Manhattan ball around `center`, inside the two-neighbor `k` vectors when `k` is given.
#[pyfunction]
#[pyo3(signature = (center, r, k = None))]
fn manhattan_ball(center: Vec<u32>, r: u64, k: Option<u32>) -> PyResult<BigUint> {
    let space = k.map_or(VectorSpace::Full, |k| VectorSpace::TwoNeighbor { k });
    let c = IntVector::new(center).py()?;
    core_metrics::ball_members_manhattan(space, &c, r, &Budget::default()).py().map(big)
}

#[pyfunction]
#[pyo3(signature = (n, k, d, metric = "inversion", kind = "two_neighbor", budget_n = 10))]
fn greedy_code(n: usize, k: u32, d: u64, metric: &str, kind: &str, budget_n: usize) -> PyResult<Vec<Vec<u32>>> {
    let c = constraint(kind, k)?;
    let u = constrained_universe(n, c, &budget(budget_n)).py()?;
    let code = core_ecc::greedy_code(u, c, d, self::metric(metric)?).py()?;
    Ok(words(code.base()))
}

/// `None` if all pairs are at distance `>= d`, else `(first, second, distance)`.
#[pyfunction]
#[pyo3(signature = (code, d, metric = "inversion"))]
fn verify_min_distance(code: Vec<Vec<u32>>, d: u64, metric: &str) -> PyResult<Option<(Vec<u32>, Vec<u32>, u64)>> {
    let members = code.into_iter().map(perm).collect::<PyResult<Vec<_>>>()?;
    let n = members.first().map_or(0, |p| p.len());
    // the distance check does not consult the constraint
    let c = Constraint::two_neighbor(1).py()?;
    let ecc = EccCode::new(Code::new(n, c, "py", members).py()?, d, self::metric(metric)?).py()?;
    Ok(core_ecc::verify_min_distance(&ecc)
        .map(|w| (w.first.into_values(), w.second.into_values(), w.distance)))
}

#[pyfunction]
fn gv_lower_bound(py: Python<'_>, n: usize, k: u32, d: u64) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &core_ecc::gv_lower_bound(n, k, d, &Budget::default()).py()?)
}

fn ball_bound<'py>(py: Python<'py>, b: core_ecc::BallBound) -> PyResult<Bound<'py, PyTuple>> {
    let value = fraction(py, &b.value)?;
    PyTuple::new(py, [value, b.center.values().to_vec().into_pyobject(py)?.into_any()])
}

/// `(bound, minimizing center)`.
#[pyfunction]
fn sphere_packing_bound(py: Python<'_>, n: usize, k: u32, d: u64) -> PyResult<Bound<'_, PyTuple>> {
    ball_bound(py, core_ecc::sphere_packing_bound(n, k, d, &Budget::default()).py()?)
}

/// `(bound, maximizing center)`.
#[pyfunction]
fn gv_manhattan_lower_bound(py: Python<'_>, n: usize, k: u32, d: u64) -> PyResult<Bound<'_, PyTuple>> {
    ball_bound(py, core_ecc::gv_manhattan_lower_bound(n, k, d, &Budget::default()).py()?)
}

/// Size of a largest code with minimum distance `d` in the constrained set.
#[pyfunction]
#[pyo3(signature = (n, k, d, metric = "inversion"))]
fn max_code_size(n: usize, k: u32, d: u64, metric: &str) -> PyResult<usize> {
    let c = Constraint::two_neighbor(k).py()?;
    let u = constrained_universe(n, c, &Budget::default()).py()?;
    Ok(core_ecc::max_code_size_exhaustive(&u, c, d, self::metric(metric)?).py()?.code.len())
}

#[pyfunction]
fn capacity_sym(eps1: f64, eps2: f64) -> PyResult<f64> {
    Ok(core_ecc::capacity_surface_sym(eps1, eps2).py()?.value)
}

#[pyfunction]
fn capacity_asym(eps1: f64, eps2: f64) -> PyResult<f64> {
    Ok(core_ecc::capacity_surface_asym(eps1, eps2).py()?.value)
}

#[pyfunction]
fn capacity_single_sym(eps: f64) -> PyResult<f64> {
    core_ecc::capacity_single_sym(eps).py()
}

#[pyfunction]
fn capacity_single_asym(eps: f64) -> PyResult<f64> {
    core_ecc::capacity_single_asym(eps).py()
}

#[pymodule(name = "rankmod")]
fn rankmod_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Permutation>()?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add_function(wrap_pyfunction!(satisfies, m)?)?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(upper_bound_log2, m)?)?;
    m.add_function(wrap_pyfunction!(capacity_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(csym, m)?)?;
    m.add_function(wrap_pyfunction!(csym_size, m)?)?;
    m.add_function(wrap_pyfunction!(casym, m)?)?;
    m.add_function(wrap_pyfunction!(cr, m)?)?;
    m.add_function(wrap_pyfunction!(casym_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(stirling2, m)?)?;
    m.add_function(wrap_pyfunction!(kendall_tau, m)?)?;
    m.add_function(wrap_pyfunction!(inversion_distance, m)?)?;
    m.add_function(wrap_pyfunction!(manhattan, m)?)?;
    m.add_function(wrap_pyfunction!(inversion_ball, m)?)?;
    m.add_function(wrap_pyfunction!(manhattan_ball, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_code, m)?)?;
    m.add_function(wrap_pyfunction!(verify_min_distance, m)?)?;
    m.add_function(wrap_pyfunction!(gv_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_packing_bound, m)?)?;
    m.add_function(wrap_pyfunction!(gv_manhattan_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(max_code_size, m)?)?;
    m.add_function(wrap_pyfunction!(capacity_sym, m)?)?;
    m.add_function(wrap_pyfunction!(capacity_asym, m)?)?;
    m.add_function(wrap_pyfunction!(capacity_single_sym, m)?)?;
    m.add_function(wrap_pyfunction!(capacity_single_asym, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_to_python_types() {
        Python::initialize();
        Python::attach(|py| {
            let e = err(Error::BudgetExceeded { n: 20, budget: 13 });
            assert!(e.is_instance_of::<BudgetExceeded>(py));
            assert!(e.is_instance_of::<PyValueError>(py));
            let e = err(Error::Empty);
            assert!(!e.is_instance_of::<BudgetExceeded>(py));
        });
    }

    #[test]
    fn counts_cross_as_ints() {
        Python::initialize();
        Python::attach(|py| {
            let n = count(4, "two_neighbor", 1, 13).unwrap();
            assert_eq!(n, BigUint::from(18u32));
            let f = gv_lower_bound(py, 4, 1, 2).unwrap();
            assert_eq!(f.str().unwrap().to_string(), "9/2");
        });
    }
}
