//! Python module `cutgroup`. Group ring elements cross the boundary as `dict[int, int]`
//! mapping element indices to coefficients; reports and verdicts arrive as plain dicts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use cutgroup::catalog::CATALOG_NAMES;
use cutgroup::families::{self, ExtensionShape, MetacyclicParams};
use cutgroup::lattice::delta_product_membership;
use cutgroup::rs::{self, Witness};
use cutgroup::subgroup::{self, normal_closure};
use cutgroup::verify::{self, SuiteOptions, SUITE_NAMES};
use cutgroup::{Error, FiniteGroup, GroupRing, GroupRingElement, GroupSpec, Permutation, Subgroup};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Converts through JSON so Python sees the same shape as the CLI output.
fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

type Coeffs = BTreeMap<usize, BigInt>;

fn element_in(coeffs: Coeffs) -> GroupRingElement {
    let mut u = GroupRingElement::zero();
    for (g, c) in coeffs {
        u = u.add(&GroupRingElement::basis(g).scale(&c));
    }
    u
}

fn element_out(u: &GroupRingElement) -> Coeffs {
    u.terms().map(|(g, c)| (g, c.clone())).collect()
}

/// A finite permutation group.
#[pyclass(name = "Group", module = "cutgroup", frozen)]
struct PyGroup {
    group: FiniteGroup,
    spec: Option<GroupSpec>,
}

impl PyGroup {
    fn from_spec(spec: GroupSpec) -> PyResult<Self> {
        Ok(PyGroup {
            group: spec.build().map_err(err)?,
            spec: Some(spec),
        })
    }

    fn ring(&self) -> GroupRing<'_> {
        GroupRing::new(&self.group)
    }

    fn checked(&self, elems: &[usize]) -> PyResult<()> {
        match elems.iter().find(|&&x| !self.group.contains_index(x)) {
            Some(x) => Err(PyValueError::new_err(format!("element {x} is not in the group"))),
            None => Ok(()),
        }
    }

    fn normal(&self, generators: &[usize]) -> PyResult<Subgroup> {
        self.checked(generators)?;
        normal_closure(&self.group, generators).map_err(err)
    }
}

#[pymethods]
impl PyGroup {
    /// `Group.catalog("symmetric", [4])`
    #[staticmethod]
    #[pyo3(signature = (name, params = Vec::new()))]
    fn catalog(name: &str, params: Vec<i64>) -> PyResult<Self> {
        Self::from_spec(GroupSpec::catalog(name, &params))
    }

    #[staticmethod]
    fn from_spec_json(text: &str) -> PyResult<Self> {
        Self::from_spec(GroupSpec::from_json(text).map_err(err)?)
    }

    /// Generators are lists of cycles on the points `0..degree`.
    #[staticmethod]
    fn from_permutations(degree: usize, generators: Vec<Vec<Vec<usize>>>) -> PyResult<Self> {
        let gens = generators
            .iter()
            .map(|cycles| Permutation::from_cycles(degree, cycles))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        Ok(PyGroup {
            group: FiniteGroup::from_generators(degree, gens).map_err(err)?,
            spec: None,
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.group.order()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.group.degree()
    }

    #[getter]
    fn label(&self) -> String {
        match &self.spec {
            Some(s) => s.label(),
            None => format!("permutation group of order {}", self.group.order()),
        }
    }

    fn spec_json(&self) -> Option<String> {
        self.spec.as_ref().map(GroupSpec::to_json)
    }

    fn generators(&self) -> Vec<usize> {
        self.group.generators().to_vec()
    }

    fn element(&self, x: usize) -> PyResult<String> {
        self.checked(&[x])?;
        Ok(self.group.element(x).to_string())
    }

    fn element_order(&self, x: usize) -> PyResult<usize> {
        self.checked(&[x])?;
        Ok(self.group.element_order(x))
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        self.checked(&[a, b])?;
        Ok(self.group.mul(a, b))
    }

    fn inv(&self, a: usize) -> PyResult<usize> {
        self.checked(&[a])?;
        Ok(self.group.inv(a))
    }

    fn is_abelian(&self) -> bool {
        self.group.is_abelian()
    }

    fn is_nilpotent(&self) -> bool {
        subgroup::is_nilpotent(&self.group)
    }

    fn is_solvable(&self) -> bool {
        subgroup::is_solvable(&self.group)
    }

    fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        subgroup::conjugacy_classes(&self.group)
    }

    fn normal_subgroups(&self) -> Vec<Vec<usize>> {
        subgroup::normal_subgroups(&self.group)
            .iter()
            .map(|n| n.members().to_vec())
            .collect()
    }

    fn center(&self) -> Vec<usize> {
        subgroup::center(&self.group).members().to_vec()
    }

    fn is_cut(&self) -> bool {
        rs::is_cut(&self.group).outcome
    }

    /// `(element, exponent)` with `element^exponent` conjugate to neither `element^±1`.
    fn cut_witness(&self) -> Option<(usize, u64)> {
        match rs::is_cut(&self.group).witness {
            Some(Witness::Exponent { element, exponent }) => Some((element, exponent)),
            _ => None,
        }
    }

    fn is_rs_element(&self, x: usize) -> PyResult<bool> {
        Ok(rs::is_rs_element(&self.group, x).map_err(err)?.outcome)
    }

    fn is_rs_subgroup(&self, generators: Vec<usize>) -> PyResult<bool> {
        self.checked(&generators)?;
        let a = Subgroup::generated_by(&self.group, &generators).map_err(err)?;
        Ok(rs::is_rs_subgroup(&self.group, &a).map_err(err)?.outcome)
    }

    fn rank(&self) -> usize {
        rs::rank_central_units(&self.group)
    }

    /// Whether `G/N` has the same central unit rank, `N` the normal closure of `generators`.
    fn rank_preserved(&self, generators: Vec<usize>) -> PyResult<bool> {
        let n = self.normal(&generators)?;
        Ok(rs::rank_preserved(&self.group, &n).map_err(err)?.outcome)
    }

    fn ring_mul(&self, u: Coeffs, v: Coeffs) -> PyResult<Coeffs> {
        let r = self.ring().mul(&element_in(u), &element_in(v)).map_err(err)?;
        Ok(element_out(&r))
    }

    fn ring_star(&self, u: Coeffs) -> PyResult<Coeffs> {
        Ok(element_out(&self.ring().star(&element_in(u)).map_err(err)?))
    }

    fn is_unit(&self, u: Coeffs) -> PyResult<bool> {
        self.ring().is_unit(&element_in(u)).map_err(err)
    }

    fn unit_inverse(&self, u: Coeffs) -> PyResult<Option<Coeffs>> {
        Ok(self
            .ring()
            .unit_inverse(&element_in(u))
            .map_err(err)?
            .as_ref()
            .map(element_out))
    }

    fn theta(&self, u: Coeffs) -> PyResult<Coeffs> {
        Ok(element_out(&self.ring().theta(&element_in(u)).map_err(err)?))
    }

    fn bass_unit(&self, g: usize, k: u64) -> PyResult<Coeffs> {
        Ok(element_out(&self.ring().bass_unit(g, k).map_err(err)?))
    }

    /// Whether `u` lies in `Δ(G)Δ(N)`, `N` the normal closure of `generators`.
    fn delta_member(&self, generators: Vec<usize>, u: Coeffs) -> PyResult<bool> {
        let n = self.normal(&generators)?;
        delta_product_membership(&self.group, &n, &element_in(u)).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Group({}, order={})", self.label(), self.group.order())
    }
}

#[pyfunction]
fn metacyclic_is_cut(py: Python<'_>, m: u64, n: u64, r: i64) -> PyResult<Bound<'_, PyAny>> {
    let p = MetacyclicParams::new(m, n, r).map_err(err)?;
    to_py(py, &families::metacyclic_is_cut(&p).map_err(err)?)
}

#[pyfunction]
fn baumslag_solitar_is_cut(py: Python<'_>, m: i64, n: i64) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &families::baumslag_solitar_is_cut(m, n).map_err(err)?)
}

/// Amalgam verdict from a preset name or from explicit structural flags.
#[pyfunction]
#[pyo3(signature = (preset = None, rs_in_factor = None, indices = None))]
fn amalgam_is_cut<'py>(
    py: Python<'py>,
    preset: Option<&str>,
    rs_in_factor: Option<bool>,
    indices: Option<(u64, u64)>,
) -> PyResult<Bound<'py, PyAny>> {
    let shape = match preset {
        Some(name) => families::preset(name).map_err(err)?,
        None => ExtensionShape::Amalgam {
            amalgamated_rs_in_factor: rs_in_factor,
            indices,
        },
    };
    to_py(py, &families::extension_is_cut(&shape).map_err(err)?)
}

/// Runs a suite over the default catalog and returns its report.
#[pyfunction]
#[pyo3(signature = (name, max_order = None, seed = 0))]
fn run_suite<'py>(py: Python<'py>, name: &str, max_order: Option<usize>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let options = SuiteOptions { max_order, seed };
    let report = py.detach(|| verify::run_suite(name, &options)).map_err(err)?;
    to_py(py, &report)
}

#[pymodule]
#[pyo3(name = "cutgroup")]
fn cutgroup_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(metacyclic_is_cut, m)?)?;
    m.add_function(wrap_pyfunction!(baumslag_solitar_is_cut, m)?)?;
    m.add_function(wrap_pyfunction!(amalgam_is_cut, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add("CATALOG_NAMES", CATALOG_NAMES.to_vec())?;
    m.add("SUITE_NAMES", SUITE_NAMES.to_vec())?;
    Ok(())
}
