//! Python bindings: the main types and pipelines exposed as thin functions
//! plus a handle class for built quasi-quantum groups. Structured inputs are
//! JSON strings with the same schemas as the CLI; outputs are plain Python
//! objects.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use quasimod_core::abgroup::FiniteAbelianGroup;
use quasimod_core::cyclo::RootOfUnity;
use quasimod_core::modularize;
use quasimod_core::nichols;
use quasimod_core::qform::{check_abelian_cocycle, cocycle_from_qform, QuadraticForm};
use quasimod_core::quasiqg;
use quasimod_core::rootlat;
use serde_json::Value;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn value_to_py(py: Python<'_>, v: &Value) -> PyResult<PyObject> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().unbind().into(),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.unbind().into()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.unbind().into()
            } else {
                n.as_f64().unwrap().into_pyobject(py)?.unbind().into()
            }
        }
        Value::String(s) => s.into_pyobject(py)?.unbind().into(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(value_to_py(py, item)?)?;
            }
            list.unbind().into()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, val) in map {
                dict.set_item(k, value_to_py(py, val)?)?;
            }
            dict.unbind().into()
        }
    })
}

fn parse_qform_json(s: &str) -> PyResult<QuadraticForm> {
    let v: Value = serde_json::from_str(s).map_err(err)?;
    let moduli: Vec<u64> = v["group"]["moduli"]
        .as_array()
        .ok_or_else(|| err("qform JSON needs group.moduli"))?
        .iter()
        .map(|x| x.as_u64().ok_or_else(|| err("bad modulus")))
        .collect::<PyResult<_>>()?;
    let group = FiniteAbelianGroup::new(moduli);
    let root = |x: &Value| -> PyResult<RootOfUnity> {
        let a = x.as_array().filter(|a| a.len() == 2).ok_or_else(|| err("roots are [k, N]"))?;
        Ok(RootOfUnity::new(
            a[0].as_i64().ok_or_else(|| err("bad exponent"))?,
            a[1].as_u64().filter(|&n| n > 0).ok_or_else(|| err("bad order"))?,
        ))
    };
    let diag = v["diag_exps"]
        .as_array()
        .ok_or_else(|| err("qform JSON needs diag_exps"))?
        .iter()
        .map(root)
        .collect::<PyResult<Vec<_>>>()?;
    let mut offdiag = std::collections::BTreeMap::new();
    if let Some(obj) = v["offdiag_exps"].as_object() {
        for (key, val) in obj {
            let inner = key.trim_start_matches('(').trim_end_matches(')');
            let (k, l) = inner.split_once(',').ok_or_else(|| err("offdiag keys: \"(k,l)\""))?;
            offdiag.insert(
                (
                    k.trim().parse::<usize>().map_err(err)?,
                    l.trim().parse::<usize>().map_err(err)?,
                ),
                root(val)?,
            );
        }
    }
    QuadraticForm::new(group, diag, offdiag).map_err(err)
}

fn roots_to_value(rs: &[RootOfUnity]) -> Value {
    Value::Array(rs.iter().map(|r| {
        let (e, n) = r.frac();
        serde_json::json!([e, n])
    }).collect())
}

/// Group order, exponent and element list.
#[pyfunction]
fn group_info(py: Python<'_>, moduli: Vec<u64>) -> PyResult<PyObject> {
    let g = FiniteAbelianGroup::new(moduli);
    value_to_py(
        py,
        &serde_json::json!({
            "moduli": g.moduli,
            "order": g.order(),
            "exponent": g.exponent(),
        }),
    )
}

/// All quadratic forms on ⊕ Z_m, as (diag, offdiag) exponent-pair data.
#[pyfunction]
fn enumerate_qforms(py: Python<'_>, moduli: Vec<u64>) -> PyResult<PyObject> {
    let g = FiniteAbelianGroup::new(moduli);
    let forms = QuadraticForm::enumerate(&g);
    let arr: Vec<Value> = forms
        .iter()
        .map(|q| {
            serde_json::json!({
                "diag_exps": roots_to_value(&q.diag),
                "offdiag_exps": q.offdiag.iter().map(|((k, l), r)| {
                    let (e, n) = r.frac();
                    (format!("({k},{l})"), serde_json::json!([e, n]))
                }).collect::<serde_json::Map<String, Value>>(),
            })
        })
        .collect();
    value_to_py(py, &Value::Array(arr))
}

/// Validity of the cocycle built from a quadratic form (JSON descriptor).
#[pyfunction]
fn qform_cocycle_valid(qform_json: &str) -> PyResult<bool> {
    let q = parse_qform_json(qform_json)?;
    Ok(check_abelian_cocycle(&cocycle_from_qform(&q)))
}

/// Modularizability and pushdown of the braiding attached to a quadratic
/// form; η is an exponent tuple of a ±1-character.
#[pyfunction]
#[pyo3(signature = (qform_json, eta=None))]
fn modularize_qform(py: Python<'_>, qform_json: &str, eta: Option<Vec<u64>>) -> PyResult<PyObject> {
    let q = parse_qform_json(qform_json)?;
    let g = q.group.clone();
    let sigma = q.bihom();
    let eta = eta.unwrap_or_else(|| g.zero());
    let (ok, witness) = modularize::is_modularizable(&sigma, &eta);
    if !ok {
        return value_to_py(
            py,
            &serde_json::json!({"modularizable": false, "witness": witness}),
        );
    }
    let pd = modularize::pushdown(&sigma, &eta, &[]).map_err(err)?;
    let md = modularize::modular_data(&pd.cocycle_bar, &pd.eta_bar);
    value_to_py(
        py,
        &serde_json::json!({
            "modularizable": true,
            "quotient_moduli": pd.qws.quotient.moduli,
            "modular": md.is_modular,
            "t_diag": roots_to_value(&md.tdiag),
        }),
    )
}

/// Root-lattice datum for an irreducible type at a given ℓ.
#[pyfunction]
#[pyo3(signature = (rtype, rank, ell, lambda="weight"))]
fn lattice_datum(py: Python<'_>, rtype: char, rank: usize, ell: u64, lambda: &str) -> PyResult<PyObject> {
    let rs = rootlat::RootSystem::new(rootlat::RootType::from_char(rtype).map_err(err)?, rank)
        .map_err(err)?;
    let lam = match lambda {
        "weight" => rootlat::weight_lattice(&rs),
        "root" => rootlat::root_lattice(&rs),
        other => return Err(err(format!("unknown lattice {other:?}"))),
    };
    let datum = rootlat::quantum_group_datum(&rs, ell, &lam, None).map_err(err)?;
    value_to_py(
        py,
        &serde_json::json!({
            "lambda_prime": {"den": datum.lambda_prime.den, "rows": datum.lambda_prime.rows},
            "group_moduli": datum.cartan.group.moduli,
            "nondegenerate": datum.nondegenerate,
        }),
    )
}

/// Graded dimensions of the Nichols algebra of a diagonal braiding given by
/// a matrix of [k, N] root-of-unity pairs.
#[pyfunction]
#[pyo3(signature = (qmatrix, max_degree=6))]
fn nichols_dims(py: Python<'_>, qmatrix: Vec<Vec<(i64, u64)>>, max_degree: usize) -> PyResult<PyObject> {
    let qm: Vec<Vec<RootOfUnity>> = qmatrix
        .iter()
        .map(|row| row.iter().map(|&(k, n)| RootOfUnity::new(k, n)).collect())
        .collect();
    let vs = nichols::BraidedVS::diagonal(&qm).map_err(err)?;
    let mut dims = vec![];
    for n in 0..=max_degree {
        let d = nichols::woronowicz_dim(&vs, n).map_err(err)?;
        dims.push(d);
        if d == 0 {
            break;
        }
    }
    value_to_py(
        py,
        &serde_json::json!({
            "dims": dims,
            "total": dims.iter().sum::<usize>(),
        }),
    )
}

/// The rank-1 decision table.
#[pyfunction]
fn sl2_table(py: Python<'_>, ell: u64) -> PyResult<PyObject> {
    let mut rows = vec![];
    for plus in [true, false] {
        let datum = rootlat::sl2_datum(ell, plus).map_err(err)?;
        let modularizable = if datum.nondegenerate {
            let sigma = modularize::sigma_from_f(&datum.f).map_err(err)?;
            let eta = vec![0u64; sigma.group.rank()];
            modularize::is_modularizable(&sigma, &eta).0
        } else {
            false
        };
        rows.push(serde_json::json!({
            "f": if plus { "f+" } else { "f-" },
            "nondegenerate": datum.nondegenerate,
            "modularizable": modularizable,
        }));
    }
    value_to_py(py, &Value::Array(rows))
}

/// Built quasi-quantum group with verification entry points.
#[pyclass]
struct QuasiQuantumGroup {
    alg: quasiqg::QuasiHopfAlgebra,
    r: Option<quasiqg::RMatrixData>,
}

#[pymethods]
impl QuasiQuantumGroup {
    #[getter]
    fn dim(&self) -> usize {
        self.alg.dim
    }

    fn basis_labels(&self) -> Vec<String> {
        (0..self.alg.dim).map(|i| self.alg.label(i)).collect()
    }

    /// Per-axiom pass/fail lines (includes the quasitriangular checks when
    /// the R-matrix was solved).
    fn verify(&self) -> Vec<String> {
        quasiqg::verify_quasihopf(&self.alg, self.r.as_ref()).lines()
    }

    fn all_axioms_pass(&self) -> bool {
        quasiqg::verify_quasihopf(&self.alg, self.r.as_ref()).all_pass()
    }

    fn factorizable(&self) -> PyResult<bool> {
        let r = self.r.as_ref().ok_or_else(|| err("built without R"))?;
        Ok(quasiqg::factorizable(&self.alg, r))
    }

    fn drinfeld_ok(&self) -> PyResult<bool> {
        let r = self.r.as_ref().ok_or_else(|| err("built without R"))?;
        Ok(quasiqg::drinfeld_element(&self.alg, r).is_ok())
    }

    /// Full structure-constant dump (same schema as the CLI files).
    fn dump(&self) -> String {
        let raw = quasiqg::RawQuasiHopf::from_algebra(&self.alg, self.r.as_ref());
        serde_json::to_string(&quasiqg::raw_to_json(&raw)).unwrap()
    }
}

/// Build u(ω̄,σ̄) for the rank-1 quotient datum at even ℓ.
#[pyfunction]
#[pyo3(signature = (ell, with_r=true))]
fn build_sl2_quotient(ell: u64, with_r: bool) -> PyResult<QuasiQuantumGroup> {
    let (_, datum, _) = quasiqg::sl2_data(ell).map_err(err)?;
    let alg = quasiqg::build_uqg(&datum).map_err(err)?;
    let r = if with_r { Some(quasiqg::r_matrix(&alg).map_err(err)?) } else { None };
    Ok(QuasiQuantumGroup { alg, r })
}

/// Build u(ω,σ) from a quadratic form descriptor and generator characters.
#[pyfunction]
#[pyo3(signature = (qform_json, chis, with_r=true))]
fn build_uqg(qform_json: &str, chis: Vec<Vec<u64>>, with_r: bool) -> PyResult<QuasiQuantumGroup> {
    let q = parse_qform_json(qform_json)?;
    let datum = quasiqg::UqgDatum { cocycle: cocycle_from_qform(&q), chis };
    let alg = quasiqg::build_uqg(&datum).map_err(err)?;
    let r = if with_r { Some(quasiqg::r_matrix(&alg).map_err(err)?) } else { None };
    Ok(QuasiQuantumGroup { alg, r })
}

/// The fourth-root-of-unity braiding-table report.
#[pyfunction]
fn bn_check(py: Python<'_>, n: usize) -> PyResult<PyObject> {
    let report = quasiqg::bn_example_check(n, None).map_err(err)?;
    value_to_py(
        py,
        &serde_json::json!({
            "group_bar_moduli": report.group_bar.moduli,
            "q_diag": roots_to_value(&report.q_diag),
            "q_matches_pushdown": report.q_matches_pushdown,
            "b_nondegenerate": report.b_nondegenerate,
        }),
    )
}

#[pymodule]
fn quasimod(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(group_info, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_qforms, m)?)?;
    m.add_function(wrap_pyfunction!(qform_cocycle_valid, m)?)?;
    m.add_function(wrap_pyfunction!(modularize_qform, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_datum, m)?)?;
    m.add_function(wrap_pyfunction!(nichols_dims, m)?)?;
    m.add_function(wrap_pyfunction!(sl2_table, m)?)?;
    m.add_function(wrap_pyfunction!(build_sl2_quotient, m)?)?;
    m.add_function(wrap_pyfunction!(build_uqg, m)?)?;
    m.add_function(wrap_pyfunction!(bn_check, m)?)?;
    m.add_class::<QuasiQuantumGroup>()?;
    Ok(())
}
