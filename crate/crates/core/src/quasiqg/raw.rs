//! Self-contained structure-constant tensors: the serialization form of a
//! built algebra, and the verifier entry point that works from a dump alone.

use super::{add_into, AlgElt, QuasiHopfAlgebra, RMatrixData, Tensor2, Tensor3};
use crate::cyclo::CycloNum;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::str::FromStr;

/// Dense-indexed sparse tensors of a quasi-Hopf algebra, decoupled from the
/// assembly machinery; everything the axioms mention.
pub struct RawQuasiHopf {
    pub dim: usize,
    pub labels: Vec<String>,
    pub mult: Vec<AlgElt>,
    pub delta: Vec<Tensor2>,
    pub counit: Vec<CycloNum>,
    pub antipode: Vec<AlgElt>,
    pub phi: Tensor3,
    pub phi_inv: Tensor3,
    pub alpha: AlgElt,
    pub beta: AlgElt,
    pub unit: AlgElt,
    pub r: Option<Tensor2>,
    pub theta: Option<Tensor2>,
}

impl RawQuasiHopf {
    pub fn from_algebra(alg: &QuasiHopfAlgebra, r: Option<&RMatrixData>) -> Self {
        RawQuasiHopf {
            dim: alg.dim,
            labels: (0..alg.dim).map(|i| alg.label(i)).collect(),
            mult: alg.mult.clone(),
            delta: alg.delta.clone(),
            counit: alg.counit.clone(),
            antipode: alg.antipode.clone(),
            phi: alg.phi.clone(),
            phi_inv: alg.phi_inv.clone(),
            alpha: alg.alpha.clone(),
            beta: alg.beta.clone(),
            unit: alg.unit.clone(),
            r: r.map(|d| d.r.clone()),
            theta: r.map(|d| d.theta.clone()),
        }
    }

    pub fn mul(&self, x: &AlgElt, y: &AlgElt) -> AlgElt {
        let mut out = AlgElt::new();
        for (&xi, cx) in x {
            for (&yi, cy) in y {
                for (&k, v) in &self.mult[xi * self.dim + yi] {
                    add_into(&mut out, k, v.mul(cx).mul(cy));
                }
            }
        }
        out
    }

    pub fn t2_mul(&self, a: &Tensor2, b: &Tensor2) -> Tensor2 {
        let d = self.dim;
        let mut out = Tensor2::new();
        for (&(a1, a2), ca) in a {
            for (&(b1, b2), cb) in b {
                let c = ca.mul(cb);
                for (&k1, v1) in &self.mult[a1 * d + b1] {
                    for (&k2, v2) in &self.mult[a2 * d + b2] {
                        add_into(&mut out, (k1, k2), c.mul(v1).mul(v2));
                    }
                }
            }
        }
        out
    }

    pub fn t3_mul(&self, a: &Tensor3, b: &Tensor3) -> Tensor3 {
        let d = self.dim;
        let mut out = Tensor3::new();
        for (&(a1, a2, a3), ca) in a {
            for (&(b1, b2, b3), cb) in b {
                let c = ca.mul(cb);
                for (&k1, v1) in &self.mult[a1 * d + b1] {
                    let c1 = c.mul(v1);
                    for (&k2, v2) in &self.mult[a2 * d + b2] {
                        let c2 = c1.mul(v2);
                        for (&k3, v3) in &self.mult[a3 * d + b3] {
                            add_into(&mut out, (k1, k2, k3), c2.mul(v3));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn apply_s(&self, x: &AlgElt) -> AlgElt {
        let mut out = AlgElt::new();
        for (&i, c) in x {
            for (&k, v) in &self.antipode[i] {
                add_into(&mut out, k, v.mul(c));
            }
        }
        out
    }
}

fn rational_to_string(q: &BigRational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn rational_from_string(s: &str) -> Result<BigRational> {
    let parse_int = |t: &str| {
        BigInt::from_str(t).map_err(|e| Error::Invalid(format!("bad integer {t:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => Ok(BigRational::new(parse_int(n)?, parse_int(d)?)),
        None => Ok(BigRational::from(parse_int(s)?)),
    }
}

pub fn cyclo_to_json(x: &CycloNum) -> serde_json::Value {
    let coeffs: Vec<serde_json::Value> = x
        .coeffs()
        .iter()
        .map(|(&e, c)| serde_json::json!([e, rational_to_string(c)]))
        .collect();
    serde_json::json!({ "level": x.level(), "coeffs": coeffs })
}

pub fn cyclo_from_json(v: &serde_json::Value) -> Result<CycloNum> {
    let level = v["level"]
        .as_u64()
        .ok_or_else(|| Error::Invalid("cyclo.level must be an integer".into()))?;
    let mut out = CycloNum::zero();
    for entry in v["coeffs"]
        .as_array()
        .ok_or_else(|| Error::Invalid("cyclo.coeffs must be an array".into()))?
    {
        let e = entry[0]
            .as_u64()
            .ok_or_else(|| Error::Invalid("cyclo exponent must be an integer".into()))?;
        let c = rational_from_string(
            entry[1]
                .as_str()
                .ok_or_else(|| Error::Invalid("cyclo coefficient must be a string".into()))?,
        )?;
        if !c.is_zero() {
            out = out.add(&CycloNum::root(level, e as i64).scale(&c));
        }
    }
    Ok(out)
}

fn elt_to_json(x: &AlgElt) -> serde_json::Value {
    serde_json::Value::Array(
        x.iter()
            .map(|(&i, c)| serde_json::json!([i, cyclo_to_json(c)]))
            .collect(),
    )
}

fn elt_from_json(v: &serde_json::Value) -> Result<AlgElt> {
    let mut out = AlgElt::new();
    for entry in v
        .as_array()
        .ok_or_else(|| Error::Invalid("element must be an array".into()))?
    {
        let i = entry[0]
            .as_u64()
            .ok_or_else(|| Error::Invalid("element index must be an integer".into()))?
            as usize;
        add_into(&mut out, i, cyclo_from_json(&entry[1])?);
    }
    Ok(out)
}

fn t2_to_json(x: &Tensor2) -> serde_json::Value {
    serde_json::Value::Array(
        x.iter()
            .map(|(&(i, j), c)| serde_json::json!([i, j, cyclo_to_json(c)]))
            .collect(),
    )
}

fn t2_from_json(v: &serde_json::Value) -> Result<Tensor2> {
    let mut out = Tensor2::new();
    for entry in v
        .as_array()
        .ok_or_else(|| Error::Invalid("tensor must be an array".into()))?
    {
        let i = entry[0].as_u64().ok_or_else(|| Error::Invalid("bad index".into()))? as usize;
        let j = entry[1].as_u64().ok_or_else(|| Error::Invalid("bad index".into()))? as usize;
        add_into(&mut out, (i, j), cyclo_from_json(&entry[2])?);
    }
    Ok(out)
}

fn t3_to_json(x: &Tensor3) -> serde_json::Value {
    serde_json::Value::Array(
        x.iter()
            .map(|(&(i, j, k), c)| serde_json::json!([i, j, k, cyclo_to_json(c)]))
            .collect(),
    )
}

fn t3_from_json(v: &serde_json::Value) -> Result<Tensor3> {
    let mut out = Tensor3::new();
    for entry in v
        .as_array()
        .ok_or_else(|| Error::Invalid("tensor must be an array".into()))?
    {
        let i = entry[0].as_u64().ok_or_else(|| Error::Invalid("bad index".into()))? as usize;
        let j = entry[1].as_u64().ok_or_else(|| Error::Invalid("bad index".into()))? as usize;
        let k = entry[2].as_u64().ok_or_else(|| Error::Invalid("bad index".into()))? as usize;
        add_into(&mut out, (i, j, k), cyclo_from_json(&entry[3])?);
    }
    Ok(out)
}

pub fn raw_to_json(raw: &RawQuasiHopf) -> serde_json::Value {
    serde_json::json!({
        "dim": raw.dim,
        "labels": raw.labels,
        "mult": raw.mult.iter().map(elt_to_json).collect::<Vec<_>>(),
        "delta": raw.delta.iter().map(t2_to_json).collect::<Vec<_>>(),
        "counit": raw.counit.iter().map(cyclo_to_json).collect::<Vec<_>>(),
        "antipode": raw.antipode.iter().map(elt_to_json).collect::<Vec<_>>(),
        "phi": t3_to_json(&raw.phi),
        "phi_inv": t3_to_json(&raw.phi_inv),
        "alpha": elt_to_json(&raw.alpha),
        "beta": elt_to_json(&raw.beta),
        "unit": elt_to_json(&raw.unit),
        "r": raw.r.as_ref().map(t2_to_json),
        "theta": raw.theta.as_ref().map(t2_to_json),
    })
}

pub fn raw_from_json(v: &serde_json::Value) -> Result<RawQuasiHopf> {
    let dim = v["dim"]
        .as_u64()
        .ok_or_else(|| Error::Invalid("dump.dim must be an integer".into()))? as usize;
    let arr = |key: &str| -> Result<&Vec<serde_json::Value>> {
        v[key]
            .as_array()
            .ok_or_else(|| Error::Invalid(format!("dump.{key} must be an array")))
    };
    let labels = arr("labels")?
        .iter()
        .map(|x| x.as_str().unwrap_or("").to_string())
        .collect();
    let mult = arr("mult")?.iter().map(elt_from_json).collect::<Result<Vec<_>>>()?;
    if mult.len() != dim * dim {
        return Err(Error::Invalid("dump.mult must have dim² entries".into()));
    }
    let delta = arr("delta")?.iter().map(t2_from_json).collect::<Result<Vec<_>>>()?;
    let counit = arr("counit")?
        .iter()
        .map(cyclo_from_json)
        .collect::<Result<Vec<_>>>()?;
    let antipode = arr("antipode")?
        .iter()
        .map(elt_from_json)
        .collect::<Result<Vec<_>>>()?;
    if delta.len() != dim || counit.len() != dim || antipode.len() != dim {
        return Err(Error::Invalid("dump coalgebra tables must have dim entries".into()));
    }
    Ok(RawQuasiHopf {
        dim,
        labels,
        mult,
        delta,
        counit,
        antipode,
        phi: t3_from_json(&v["phi"])?,
        phi_inv: t3_from_json(&v["phi_inv"])?,
        alpha: elt_from_json(&v["alpha"])?,
        beta: elt_from_json(&v["beta"])?,
        unit: elt_from_json(&v["unit"])?,
        r: match &v["r"] {
            serde_json::Value::Null => None,
            other => Some(t2_from_json(other)?),
        },
        theta: match &v["theta"] {
            serde_json::Value::Null => None,
            other => Some(t2_from_json(other)?),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasiqg::{build_uqg, r_matrix, sl2_data};

    #[test]
    fn dump_roundtrips_bit_identically() {
        let (_, ubar_datum, _) = sl2_data(4).unwrap();
        let alg = build_uqg(&ubar_datum).unwrap();
        let r = r_matrix(&alg).unwrap();
        let raw = RawQuasiHopf::from_algebra(&alg, Some(&r));
        let json = raw_to_json(&raw);
        let text = serde_json::to_string(&json).unwrap();
        let back = raw_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        let json2 = raw_to_json(&back);
        assert_eq!(
            serde_json::to_string(&json).unwrap(),
            serde_json::to_string(&json2).unwrap()
        );
    }
}
