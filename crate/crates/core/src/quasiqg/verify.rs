//! Brute-force verification of every quasi-Hopf and quasitriangular axiom,
//! pointwise over the basis, with a witness on failure. Runs on the raw
//! structure-constant tensors, so dumped algebras verify identically.

use super::raw::RawQuasiHopf;
use super::rmatrix::RMatrixData;
use super::{add_into, AlgElt, QuasiHopfAlgebra, Tensor2, Tensor3};
use crate::cyclo::CycloNum;
use std::collections::BTreeMap;

type Tensor4 = BTreeMap<(usize, usize, usize, usize), CycloNum>;

pub struct AxiomReport {
    pub checks: Vec<(String, bool, Option<String>)>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok, _)| *ok)
    }

    pub fn lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|(name, ok, w)| match (ok, w) {
                (true, _) => format!("{name}: pass"),
                (false, Some(wit)) => format!("{name}: FAIL at {wit}"),
                (false, None) => format!("{name}: FAIL"),
            })
            .collect()
    }
}

pub fn verify_quasihopf(alg: &QuasiHopfAlgebra, r: Option<&RMatrixData>) -> AxiomReport {
    verify_raw(&RawQuasiHopf::from_algebra(alg, r))
}

fn sparse_eq<K: Ord + std::fmt::Debug>(
    a: &BTreeMap<K, CycloNum>,
    b: &BTreeMap<K, CycloNum>,
) -> Option<String> {
    let keys: std::collections::BTreeSet<_> = a.keys().chain(b.keys()).collect();
    for k in keys {
        let va = a.get(k).cloned().unwrap_or_else(CycloNum::zero);
        let vb = b.get(k).cloned().unwrap_or_else(CycloNum::zero);
        if !va.eq(&vb) {
            return Some(format!("{k:?}"));
        }
    }
    None
}

fn t4_mul(raw: &RawQuasiHopf, a: &Tensor4, b: &Tensor4) -> Tensor4 {
    let d = raw.dim;
    let mut out = Tensor4::new();
    for (&(a1, a2, a3, a4), ca) in a {
        for (&(b1, b2, b3, b4), cb) in b {
            let c = ca.mul(cb);
            for (&k1, v1) in &raw.mult[a1 * d + b1] {
                let c1 = c.mul(v1);
                for (&k2, v2) in &raw.mult[a2 * d + b2] {
                    let c2 = c1.mul(v2);
                    for (&k3, v3) in &raw.mult[a3 * d + b3] {
                        let c3 = c2.mul(v3);
                        for (&k4, v4) in &raw.mult[a4 * d + b4] {
                            add_into(&mut out, (k1, k2, k3, k4), c3.mul(v4));
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn verify_raw(raw: &RawQuasiHopf) -> AxiomReport {
    let d = raw.dim;
    let mut checks: Vec<(String, bool, Option<String>)> = vec![];
    let eps = |x: &AlgElt| -> CycloNum {
        let mut s = CycloNum::zero();
        for (&i, c) in x {
            s = s.add(&raw.counit[i].mul(c));
        }
        s
    };

    // associativity
    {
        let mut witness = None;
        'outer: for x in 0..d {
            for y in 0..d {
                let xy = raw.mult[x * d + y].clone();
                for z in 0..d {
                    let ze: AlgElt = [(z, CycloNum::one())].into();
                    let lhs = raw.mul(&xy, &ze);
                    let mut rhs = AlgElt::new();
                    for (&k, v) in &raw.mult[y * d + z] {
                        for (&m, w) in &raw.mult[x * d + k] {
                            add_into(&mut rhs, m, v.mul(w));
                        }
                    }
                    if let Some(wit) = sparse_eq(&lhs, &rhs) {
                        witness = Some(format!("({x},{y},{z}) {wit}"));
                        break 'outer;
                    }
                }
            }
        }
        checks.push(("associativity".into(), witness.is_none(), witness));
    }

    // counit
    {
        let mut witness = None;
        'c1: for x in 0..d {
            for y in 0..d {
                let exy = eps(&raw.mult[x * d + y]);
                if !exy.eq(&raw.counit[x].mul(&raw.counit[y])) {
                    witness = Some(format!("ε not multiplicative at ({x},{y})"));
                    break 'c1;
                }
            }
        }
        if witness.is_none() {
            'c2: for h in 0..d {
                let mut left = AlgElt::new();
                let mut right = AlgElt::new();
                for (&(h1, h2), c) in &raw.delta[h] {
                    add_into(&mut left, h2, c.mul(&raw.counit[h1]));
                    add_into(&mut right, h1, c.mul(&raw.counit[h2]));
                }
                let he: AlgElt = [(h, CycloNum::one())].into();
                if sparse_eq(&left, &he).is_some() || sparse_eq(&right, &he).is_some() {
                    witness = Some(format!("counit axiom at basis {h}"));
                    break 'c2;
                }
            }
        }
        checks.push(("counit".into(), witness.is_none(), witness));
    }

    // Δ multiplicative
    {
        let mut witness = None;
        'dm: for x in 0..d {
            for y in 0..d {
                let mut lhs = Tensor2::new();
                for (&k, v) in &raw.mult[x * d + y] {
                    for (&kk, vv) in &raw.delta[k] {
                        add_into(&mut lhs, kk, vv.mul(v));
                    }
                }
                let rhs = raw.t2_mul(&raw.delta[x], &raw.delta[y]);
                if let Some(wit) = sparse_eq(&lhs, &rhs) {
                    witness = Some(format!("({x},{y}) at {wit}"));
                    break 'dm;
                }
            }
        }
        checks.push((
            "comultiplication multiplicative".into(),
            witness.is_none(),
            witness,
        ));
    }

    // quasi-coassociativity
    {
        let mut witness = None;
        for h in 0..d {
            let mut lhs_pre = Tensor3::new();
            let mut rhs_pre = Tensor3::new();
            for (&(h1, h2), c) in &raw.delta[h] {
                for (&(k1, k2), v) in &raw.delta[h2] {
                    add_into(&mut lhs_pre, (h1, k1, k2), c.mul(v));
                }
                for (&(k1, k2), v) in &raw.delta[h1] {
                    add_into(&mut rhs_pre, (k1, k2, h2), c.mul(v));
                }
            }
            let lhs = raw.t3_mul(&lhs_pre, &raw.phi);
            let rhs = raw.t3_mul(&raw.phi, &rhs_pre);
            if let Some(wit) = sparse_eq(&lhs, &rhs) {
                witness = Some(format!("basis {h} at {wit}"));
                break;
            }
        }
        checks.push(("quasi-coassociativity".into(), witness.is_none(), witness));
    }

    // pentagon
    {
        let lift_23 = |t: &Tensor3| {
            let mut out = Tensor4::new();
            for (&(a, b, c), v) in t {
                for (&(c1, c2), w) in &raw.delta[c] {
                    add_into(&mut out, (a, b, c1, c2), v.mul(w));
                }
            }
            out
        };
        let lift_d1 = |t: &Tensor3| {
            let mut out = Tensor4::new();
            for (&(a, b, c), v) in t {
                for (&(a1, a2), w) in &raw.delta[a] {
                    add_into(&mut out, (a1, a2, b, c), v.mul(w));
                }
            }
            out
        };
        let lift_d2 = |t: &Tensor3| {
            let mut out = Tensor4::new();
            for (&(a, b, c), v) in t {
                for (&(b1, b2), w) in &raw.delta[b] {
                    add_into(&mut out, (a, b1, b2, c), v.mul(w));
                }
            }
            out
        };
        let mut one_phi = Tensor4::new();
        let mut phi_one = Tensor4::new();
        for (&(a, b, c), v) in &raw.phi {
            for (&u, cu) in &raw.unit {
                add_into(&mut one_phi, (u, a, b, c), v.mul(cu));
                add_into(&mut phi_one, (a, b, c, u), v.mul(cu));
            }
        }
        let lhs = t4_mul(raw, &lift_23(&raw.phi), &lift_d1(&raw.phi));
        let rhs = t4_mul(raw, &t4_mul(raw, &one_phi, &lift_d2(&raw.phi)), &phi_one);
        let witness = sparse_eq(&lhs, &rhs).map(|w| format!("at {w}"));
        checks.push(("pentagon".into(), witness.is_none(), witness));
    }

    // (id⊗ε⊗id)(φ) = 1⊗1 and φ invertible
    {
        let mut contracted = Tensor2::new();
        for (&(a, b, c), v) in &raw.phi {
            let e = raw.counit[b].clone();
            add_into(&mut contracted, (a, c), v.mul(&e));
        }
        let mut unit2 = Tensor2::new();
        for (&i, ci) in &raw.unit {
            for (&j, cj) in &raw.unit {
                add_into(&mut unit2, (i, j), ci.mul(cj));
            }
        }
        let witness = sparse_eq(&contracted, &unit2).map(|w| format!("at {w}"));
        checks.push(("(id⊗ε⊗id)(φ) = 1".into(), witness.is_none(), witness));

        let prod = raw.t3_mul(&raw.phi, &raw.phi_inv);
        let mut unit3 = Tensor3::new();
        for (&i, ci) in &raw.unit {
            for (&j, cj) in &raw.unit {
                for (&k, ck) in &raw.unit {
                    add_into(&mut unit3, (i, j, k), ci.mul(cj).mul(ck));
                }
            }
        }
        let witness = sparse_eq(&prod, &unit3).map(|w| format!("at {w}"));
        checks.push(("φ·φ⁻¹ = 1".into(), witness.is_none(), witness));
    }

    // S anti-multiplicative
    {
        let mut witness = None;
        'anti: for x in 0..d {
            for y in 0..d {
                let lhs = raw.apply_s(&raw.mult[x * d + y]);
                let rhs = raw.mul(&raw.antipode[y], &raw.antipode[x]);
                if let Some(wit) = sparse_eq(&lhs, &rhs) {
                    witness = Some(format!("({x},{y}) {wit}"));
                    break 'anti;
                }
            }
        }
        checks.push((
            "antipode anti-multiplicative".into(),
            witness.is_none(),
            witness,
        ));
    }

    // antipode h-axioms
    {
        let mut witness = None;
        for h in 0..d {
            let mut lhs = AlgElt::new();
            for (&(h1, h2), c) in &raw.delta[h] {
                let h2e: AlgElt = [(h2, CycloNum::one())].into();
                let t = raw.mul(&raw.mul(&raw.antipode[h1], &raw.alpha), &h2e);
                for (k, v) in t {
                    add_into(&mut lhs, k, v.mul(c));
                }
            }
            let mut rhs = AlgElt::new();
            for (&k, v) in &raw.alpha {
                add_into(&mut rhs, k, v.mul(&raw.counit[h]));
            }
            if let Some(wit) = sparse_eq(&lhs, &rhs) {
                witness = Some(format!("S(h₁)αh₂ at basis {h} ({wit})"));
                break;
            }
        }
        if witness.is_none() {
            for h in 0..d {
                let mut lhs = AlgElt::new();
                for (&(h1, h2), c) in &raw.delta[h] {
                    let h1e: AlgElt = [(h1, CycloNum::one())].into();
                    let t = raw.mul(&raw.mul(&h1e, &raw.beta), &raw.antipode[h2]);
                    for (k, v) in t {
                        add_into(&mut lhs, k, v.mul(c));
                    }
                }
                let mut rhs = AlgElt::new();
                for (&k, v) in &raw.beta {
                    add_into(&mut rhs, k, v.mul(&raw.counit[h]));
                }
                if let Some(wit) = sparse_eq(&lhs, &rhs) {
                    witness = Some(format!("h₁βS(h₂) at basis {h} ({wit})"));
                    break;
                }
            }
        }
        checks.push(("antipode h-axioms".into(), witness.is_none(), witness));
    }

    // zig-zags
    {
        let mut zig1 = AlgElt::new();
        for (&(x1, x2, x3), c) in &raw.phi {
            let x1e: AlgElt = [(x1, CycloNum::one())].into();
            let x3e: AlgElt = [(x3, CycloNum::one())].into();
            let t = raw.mul(
                &raw.mul(
                    &raw.mul(&raw.mul(&x1e, &raw.beta), &raw.antipode[x2]),
                    &raw.alpha,
                ),
                &x3e,
            );
            for (k, v) in t {
                add_into(&mut zig1, k, v.mul(c));
            }
        }
        let w1 = sparse_eq(&zig1, &raw.unit);
        let mut zig2 = AlgElt::new();
        for (&(x1, x2, x3), c) in &raw.phi_inv {
            let x2e: AlgElt = [(x2, CycloNum::one())].into();
            let x3e: AlgElt = [(x3, CycloNum::one())].into();
            let t = raw.mul(
                &raw.mul(
                    &raw.mul(&raw.mul(&raw.antipode[x1], &raw.alpha), &x2e),
                    &raw.beta,
                ),
                &x3e,
            );
            for (k, v) in t {
                add_into(&mut zig2, k, v.mul(c));
            }
        }
        let w2 = sparse_eq(&zig2, &raw.unit);
        let witness = w1
            .map(|w| format!("X¹βS(X²)αX³ at {w}"))
            .or(w2.map(|w| format!("S(x¹)αx²βx³ at {w}")));
        checks.push(("antipode zig-zags".into(), witness.is_none(), witness));
    }

    if let Some(rr) = &raw.r {
        // RΔ = ΔᵒᵖR
        {
            let mut witness = None;
            for h in 0..d {
                let lhs = raw.t2_mul(rr, &raw.delta[h]);
                let mut dop = Tensor2::new();
                for (&(a, b), c) in &raw.delta[h] {
                    add_into(&mut dop, (b, a), c.clone());
                }
                let rhs = raw.t2_mul(&dop, rr);
                if let Some(wit) = sparse_eq(&lhs, &rhs) {
                    witness = Some(format!("basis {h} at {wit}"));
                    break;
                }
            }
            checks.push(("RΔ = ΔᵒᵖR".into(), witness.is_none(), witness));
        }
        // hexagons, with leg conventions derived from α = φ-action and
        // braiding = swap∘R-action:
        //   (Δ⊗id)(R) = φ₍₂₃₁₎ R₁₃ φ⁻¹₍₁₃₂₎ R₂₃ φ
        //   (id⊗Δ)(R) = φ⁻¹₍₃₁₂₎ R₁₃ φ₍₂₁₃₎ R₁₂ φ⁻¹
        {
            let perm3 = |t: &Tensor3, p: [usize; 3]| {
                let mut out = Tensor3::new();
                for (&(a, b, c), v) in t {
                    let legs = [a, b, c];
                    add_into(&mut out, (legs[p[0]], legs[p[1]], legs[p[2]]), v.clone());
                }
                out
            };
            let embed = |r: &Tensor2, slots: (usize, usize)| {
                let mut out = Tensor3::new();
                for (&(a, b), v) in r {
                    for (&u, cu) in &raw.unit {
                        let mut legs = [u, u, u];
                        legs[slots.0] = a;
                        legs[slots.1] = b;
                        add_into(&mut out, (legs[0], legs[1], legs[2]), v.mul(cu));
                    }
                }
                out
            };
            let d1r = {
                let mut out = Tensor3::new();
                for (&(a, b), v) in rr {
                    for (&(a1, a2), w) in &raw.delta[a] {
                        add_into(&mut out, (a1, a2, b), v.mul(w));
                    }
                }
                out
            };
            let phi_a = perm3(&raw.phi, [1, 2, 0]);
            let phi132_inv = perm3(&raw.phi_inv, [0, 2, 1]);
            let rhs1 = raw.t3_mul(
                &raw.t3_mul(
                    &raw.t3_mul(&raw.t3_mul(&phi_a, &embed(rr, (0, 2))), &phi132_inv),
                    &embed(rr, (1, 2)),
                ),
                &raw.phi,
            );
            let w1 = sparse_eq(&d1r, &rhs1).map(|w| format!("(Δ⊗id)R at {w}"));
            let d2r = {
                let mut out = Tensor3::new();
                for (&(a, b), v) in rr {
                    for (&(b1, b2), w) in &raw.delta[b] {
                        add_into(&mut out, (a, b1, b2), v.mul(w));
                    }
                }
                out
            };
            let phi_b_inv = perm3(&raw.phi_inv, [2, 0, 1]);
            let phi213 = perm3(&raw.phi, [1, 0, 2]);
            let rhs2 = raw.t3_mul(
                &raw.t3_mul(
                    &raw.t3_mul(&raw.t3_mul(&phi_b_inv, &embed(rr, (0, 2))), &phi213),
                    &embed(rr, (0, 1)),
                ),
                &raw.phi_inv,
            );
            let w2 = sparse_eq(&d2r, &rhs2).map(|w| format!("(id⊗Δ)R at {w}"));
            let witness = w1.or(w2);
            checks.push(("quasitriangular hexagons".into(), witness.is_none(), witness));
        }
        // Θ² = 1 on the decomposition factor Θ, when present
        if let Some(theta) = &raw.theta {
            let sq = raw.t2_mul(theta, theta);
            let mut unit2 = Tensor2::new();
            for (&i, ci) in &raw.unit {
                for (&j, cj) in &raw.unit {
                    add_into(&mut unit2, (i, j), ci.mul(cj));
                }
            }
            let witness = sparse_eq(&sq, &unit2).map(|w| format!("at {w}"));
            checks.push(("Θ² = 1".into(), witness.is_none(), witness));
        }
    }

    AxiomReport { checks }
}
