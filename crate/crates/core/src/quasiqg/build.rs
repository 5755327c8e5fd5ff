//! Assembly of u(ω,σ) as explicit structure constants on the triangular
//! basis E-monomial × δ_χ × F-monomial, by normal-form rewriting driven by
//! the commutation relations; plus the Radford biproduct and twisting.

use super::{add_into, theta, AlgElt, Tensor2, Tensor3};
use crate::abgroup::{Elt, FiniteAbelianGroup};
use crate::cyclo::{CycloNum, RootOfUnity};
use crate::nichols::{BraidedVS, NicholsAlgebra};
use crate::qform::{AbelianThreeCocycle, TwoCochain};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// Input datum: an abelian 3-cocycle on the character group and the list of
/// generator characters χ_i.
#[derive(Clone)]
pub struct UqgDatum {
    pub cocycle: AbelianThreeCocycle,
    pub chis: Vec<Elt>,
}

/// Finite-dimensional quasi-Hopf algebra with dense-indexed sparse tensors.
pub struct QuasiHopfAlgebra {
    pub datum: UqgDatum,
    pub nichols: NicholsAlgebra,
    pub dim: usize,
    nb: usize,
    ngrp: usize,
    flat: Vec<(usize, usize)>,
    fdeg: Vec<Elt>,
    letters: Vec<usize>,
    /// flat f (len ≥ 1) = Σ c · (f′ · F_l): entries (letter, flat f′, c)
    fdecomp: Vec<Vec<(usize, usize, CycloNum)>>,
    /// flat e (len ≥ 1) = Σ c · (F_l ∗ e′) shuffle: entries (letter, flat e′, c)
    edecomp: Vec<Vec<(usize, usize, CycloNum)>>,
    rmul_e_cache: std::sync::Mutex<BTreeMap<(usize, usize), AlgElt>>,
    pub mult: Vec<AlgElt>,
    pub delta: Vec<Tensor2>,
    pub counit: Vec<CycloNum>,
    pub antipode: Vec<AlgElt>,
    pub phi: Tensor3,
    pub phi_inv: Tensor3,
    pub alpha: AlgElt,
    pub beta: AlgElt,
    pub unit: AlgElt,
}

/// Diagnostic: report the β-space dimension and per-candidate α-solvability.
pub fn build_uqg_debug(datum: &UqgDatum) -> Result<String> {
    let mut alg = assemble_algebra(datum)?;
    alg.delta = alg.build_delta()?;
    alg.counit = alg.build_counit();
    alg.antipode = alg.build_antipode();
    let (phi, phi_inv) = alg.build_phi();
    alg.phi = phi;
    alg.phi_inv = phi_inv;
    let beta_space = alg.nullspace_beta();
    let mut out = format!("beta-space dim = {}\n", beta_space.len());
    for (i, b) in beta_space.iter().enumerate() {
        let ok = alg.solve_alpha_for(b).is_some();
        out += &format!("  basis {i}: supports = {:?}, alpha solvable = {ok}\n",
            b.keys().take(8).collect::<Vec<_>>());
    }
    // antipode sanity: anti-multiplicativity on all pairs
    let mut bad = 0;
    for x in 0..alg.dim {
        for y in 0..alg.dim {
            let lhs = alg.apply_s(&alg.mult[x * alg.dim + y]);
            let rhs = alg.mul(&alg.antipode[y], &alg.antipode[x]);
            if lhs != rhs {
                if bad < 10 {
                    out += &format!("  S-viol at x={} [{}], y={} [{}]\n", x, alg.label(x), y, alg.label(y));
                }
                bad += 1;
            }
        }
    }
    out += &format!("S anti-mult violations: {bad} of {}\n", alg.dim * alg.dim);
    Ok(out)
}

pub fn build_uqg(datum: &UqgDatum) -> Result<QuasiHopfAlgebra> {
    let mut alg = assemble_algebra(datum)?;
    alg.delta = alg.build_delta()?;
    alg.counit = alg.build_counit();
    alg.antipode = alg.build_antipode();
    let (phi, phi_inv) = alg.build_phi();
    alg.phi = phi;
    alg.phi_inv = phi_inv;
    match alg.solve_alpha_beta() {
        Ok((a, b)) => {
            alg.alpha = a;
            alg.beta = b;
        }
        Err(_) => {
            // no antipode elements over this presentation; the algebra and
            // coalgebra layers stay usable and the verifier reports the
            // missing axioms
        }
    }
    Ok(alg)
}

fn assemble_algebra(datum: &UqgDatum) -> Result<QuasiHopfAlgebra> {
    let cocycle = &datum.cocycle;
    let g = cocycle.group.clone();
    let vs = BraidedVS::from_chis(cocycle.clone(), &datum.chis);
    let nichols = NicholsAlgebra::build(&vs)?;
    let nb: usize = nichols.graded_dims().iter().sum();
    let ngrp = g.order() as usize;
    let dim = nb * ngrp * nb;
    if dim > crate::max_algebra_dim() {
        return Err(Error::Bound(format!(
            "algebra dimension {dim} exceeds the configured bound {}",
            crate::max_algebra_dim()
        )));
    }
    let mut flat = vec![];
    let mut lookup = BTreeMap::new();
    for (d, words) in nichols.basis.iter().enumerate() {
        for i in 0..words.len() {
            lookup.insert((d, i), flat.len());
            flat.push((d, i));
        }
    }
    let fdeg: Vec<Elt> = flat
        .iter()
        .map(|&(d, i)| vs.word_degree(&nichols.basis[d][i]))
        .collect();
    let letters: Vec<usize> = (0..vs.rank())
        .map(|j| {
            let pos = nichols.basis[1]
                .iter()
                .position(|w| w == &vec![j as u8])
                .expect("letters are independent in degree 1");
            lookup[&(1, pos)]
        })
        .collect();

    // decompositions of each flat index of degree ≥ 1 into letter products
    let mut fdecomp: Vec<Vec<(usize, usize, CycloNum)>> = vec![vec![]; flat.len()];
    let mut edecomp: Vec<Vec<(usize, usize, CycloNum)>> = vec![vec![]; flat.len()];
    for degree in 1..nichols.basis.len() {
        let dim_here = nichols.basis[degree].len();
        let mut fcols: Vec<(usize, usize, Vec<CycloNum>)> = vec![];
        let mut ecols: Vec<(usize, usize, Vec<CycloNum>)> = vec![];
        for l in 0..vs.rank() {
            for fp in 0..nichols.basis[degree - 1].len() {
                let mut fv = vec![CycloNum::zero(); dim_here];
                for (idx, c) in nichols.mul_basis(degree - 1, fp, 1, letter_pos(&nichols, l)) {
                    fv[idx] = c;
                }
                fcols.push((l, lookup[&(degree - 1, fp)], fv));
                let mut ev = vec![CycloNum::zero(); dim_here];
                for (idx, c) in nichols.shuffle_basis(1, letter_pos(&nichols, l), degree - 1, fp) {
                    ev[idx] = c;
                }
                ecols.push((l, lookup[&(degree - 1, fp)], ev));
            }
        }
        for bi in 0..dim_here {
            let mut target = vec![CycloNum::zero(); dim_here];
            target[bi] = CycloNum::one();
            let fsol = solve_linear(&fcols.iter().map(|(_, _, v)| v.clone()).collect::<Vec<_>>(), &target)
                .ok_or_else(|| Error::Verification("degree not spanned by letter products".into()))?;
            let esol = solve_linear(&ecols.iter().map(|(_, _, v)| v.clone()).collect::<Vec<_>>(), &target)
                .ok_or_else(|| Error::Verification("degree not spanned by shuffle products".into()))?;
            let fi = lookup[&(degree, bi)];
            for (k, c) in fsol.into_iter().enumerate() {
                if !c.is_zero() {
                    fdecomp[fi].push((fcols[k].0, fcols[k].1, c));
                }
            }
            for (k, c) in esol.into_iter().enumerate() {
                if !c.is_zero() {
                    edecomp[fi].push((ecols[k].0, ecols[k].1, c));
                }
            }
        }
    }

    let mut alg = QuasiHopfAlgebra {
        datum: datum.clone(),
        nichols,
        dim,
        nb,
        ngrp,
        flat,
        fdeg,
        letters,
        fdecomp,
        edecomp,
        rmul_e_cache: Default::default(),
        mult: vec![],
        delta: vec![],
        counit: vec![],
        antipode: vec![],
        phi: Default::default(),
        phi_inv: Default::default(),
        alpha: Default::default(),
        beta: Default::default(),
        unit: Default::default(),
    };
    alg.unit = (0..ngrp).map(|chi| (alg.encode(0, chi, 0), CycloNum::one())).collect();

    // structure constants
    let mut mult = Vec::with_capacity(dim * dim);
    for x in 0..dim {
        let xe: AlgElt = [(x, CycloNum::one())].into();
        for y in 0..dim {
            mult.push(alg.mul_by_basis(&xe, y));
        }
    }
    alg.mult = mult;
    // unit sanity
    for x in 0..dim {
        let xe: AlgElt = [(x, CycloNum::one())].into();
        let left = alg.mul(&alg.unit.clone(), &xe);
        let right = alg.mul(&xe, &alg.unit.clone());
        if left != xe || right != xe {
            return Err(Error::Verification(format!("unit fails at basis {x}")));
        }
    }
    Ok(alg)
}

fn letter_pos(nichols: &NicholsAlgebra, l: usize) -> usize {
    nichols.basis[1]
        .iter()
        .position(|w| w == &vec![l as u8])
        .expect("letter word present")
}

/// Exact linear solve Σ y_k cols[k] = target over the cyclotomic field.
fn solve_linear(cols: &[Vec<CycloNum>], target: &[CycloNum]) -> Option<Vec<CycloNum>> {
    let n_eq = target.len();
    let n_un = cols.len();
    // augmented rows: [coefficients | rhs] with row r: Σ_k cols[k][r]·y_k = target[r]
    let mut rows: Vec<Vec<CycloNum>> = (0..n_eq)
        .map(|r| {
            let mut row: Vec<CycloNum> = (0..n_un).map(|k| cols[k][r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = vec![];
    let mut rank_row = 0;
    for col in 0..n_un {
        let Some(p) = (rank_row..n_eq).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank_row, p);
        let inv = rows[rank_row][col].inv().unwrap();
        for cc in col..=n_un {
            rows[rank_row][cc] = rows[rank_row][cc].mul(&inv);
        }
        for r in 0..n_eq {
            if r == rank_row || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for cc in col..=n_un {
                let t = f.mul(&rows[rank_row][cc]);
                rows[r][cc] = rows[r][cc].sub(&t);
            }
        }
        pivots.push((rank_row, col));
        rank_row += 1;
        if rank_row == n_eq {
            break;
        }
    }
    // consistency: rows beyond the rank must have zero rhs
    for r in rank_row..n_eq {
        if !rows[r][n_un].is_zero() {
            return None;
        }
    }
    let mut out = vec![CycloNum::zero(); n_un];
    for (r, c) in pivots {
        out[c] = rows[r][n_un].clone();
    }
    Some(out)
}

impl QuasiHopfAlgebra {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.datum.cocycle.group
    }

    pub fn cocycle(&self) -> &AbelianThreeCocycle {
        &self.datum.cocycle
    }

    /// Encode with an explicit group element in the middle slot.
    pub fn encode_raw2(&self, e: usize, chi: &[u64], f: usize) -> usize {
        self.encode(e, self.group().index_of(chi), f)
    }

    pub fn encode(&self, e: usize, chi: usize, f: usize) -> usize {
        (e * self.ngrp + chi) * self.nb + f
    }

    pub fn encode_pub(&self, e: usize, chi: usize, f: usize) -> usize {
        self.encode(e, chi, f)
    }

    pub fn decode(&self, idx: usize) -> (usize, usize, usize) {
        (idx / (self.ngrp * self.nb), (idx / self.nb) % self.ngrp, idx % self.nb)
    }

    /// Human-readable label E-monomial δ_χ F-monomial.
    pub fn label(&self, idx: usize) -> String {
        let (e, chi, f) = self.decode(idx);
        let word = |flat: usize| {
            let (d, i) = self.flat[flat];
            if d == 0 {
                String::new()
            } else {
                self.nichols.basis[d][i]
                    .iter()
                    .map(|l| format!("E{l}")) // placeholder, fixed below
                    .collect::<String>()
            }
        };
        let eword = word(e);
        let fword = word(f).replace('E', "F");
        let chi_elt = self.group().element_at(chi);
        let chi_s: Vec<String> = chi_elt.iter().map(|x| x.to_string()).collect();
        format!("{}d({}){}", eword, chi_s.join(","), fword)
    }

    pub fn flat_degree(&self, flat: usize) -> &Elt {
        &self.fdeg[flat]
    }

    pub fn flat_basis_len(&self) -> usize {
        self.nb
    }

    pub fn flat_info(&self, flat: usize) -> (usize, usize) {
        self.flat[flat]
    }

    pub fn flat_of2(&self, d: usize, i: usize) -> usize {
        self.flat_of(d, i)
    }

    pub fn flat_word(&self, flat: usize) -> &[u8] {
        let (d, i) = self.flat[flat];
        &self.nichols.basis[d][i]
    }

    fn chi_elt(&self, idx: usize) -> Elt {
        self.group().element_at(idx)
    }

    fn chi_idx(&self, elt: &[u64]) -> usize {
        self.group().index_of(elt)
    }

    fn chibar(&self, j: usize) -> Elt {
        self.group().neg(&self.datum.chis[j])
    }

    // right multiplication by δ_ψ
    fn rmul_delta(&self, x: &AlgElt, psi: &[u64]) -> AlgElt {
        let g = self.group();
        let mut out = AlgElt::new();
        for (&idx, c) in x {
            let (_, chi, f) = self.decode(idx);
            let expect = g.add(psi, &self.fdeg[f]);
            if self.chi_idx(&expect) == chi {
                add_into(&mut out, idx, c.clone());
            }
        }
        out
    }

    // right multiplication by Σ_ξ fn(ξ) δ_ξ
    fn rmul_diag(&self, x: &AlgElt, f_diag: &dyn Fn(&Elt) -> RootOfUnity) -> AlgElt {
        let g = self.group();
        let mut out = AlgElt::new();
        for (&idx, c) in x {
            let (_, chi, f) = self.decode(idx);
            let xi = g.sub(&self.chi_elt(chi), &self.fdeg[f]);
            add_into(&mut out, idx, c.mul(&f_diag(&xi).to_cyclo()));
        }
        out
    }

    // right multiplication by the generator F̂_j
    fn rmul_f(&self, x: &AlgElt, j: usize) -> AlgElt {
        let g = self.group();
        let om = self.cocycle();
        let chibar_j = self.chibar(j);
        let mut out = AlgElt::new();
        for (&idx, c) in x {
            let (e, chi, f) = self.decode(idx);
            let (fd, fi) = self.flat[f];
            let chi_e = self.chi_elt(chi);
            let psi = g.sub(&g.sub(&chi_e, &self.fdeg[f]), &chibar_j);
            let coeff = om.omega(&self.fdeg[f], &chibar_j, &psi).inv().to_cyclo().mul(c);
            for (f2, c2) in self.nichols.mul_basis(fd, fi, 1, letter_pos(&self.nichols, j)) {
                let flat2 = self.flat_of(fd + 1, f2);
                add_into(&mut out, self.encode(e, chi, flat2), coeff.mul(&c2));
            }
        }
        out
    }

    fn flat_of(&self, d: usize, i: usize) -> usize {
        let mut acc = 0;
        for dd in 0..d {
            acc += self.nichols.basis[dd].len();
        }
        acc + i
    }

    // right multiplication by the generator Ê_j
    fn rmul_e(&self, x: &AlgElt, j: usize) -> AlgElt {
        let mut out = AlgElt::new();
        for (&idx, c) in x {
            let partial = self.rmul_e_basis(idx, j);
            for (k, v) in partial {
                add_into(&mut out, k, v.mul(c));
            }
        }
        out
    }

    fn rmul_e_basis(&self, idx: usize, j: usize) -> AlgElt {
        if let Some(hit) = self.rmul_e_cache.lock().unwrap().get(&(idx, j)) {
            return hit.clone();
        }
        let g = self.group();
        let om = self.cocycle();
        let (e, chi, f) = self.decode(idx);
        let chi_e = self.chi_elt(chi);
        let chibar_j = self.chibar(j);
        let chi_j = &self.datum.chis[j];
        let mut out = AlgElt::new();
        if f == 0 {
            // (e,χ,∅)·Ê_j = ω(χ−d_e, d_e, χ̄_j)^{-1} Σ (e∗F_j-expansion, χ−χ_j, ∅)
            let de = self.fdeg[e].clone();
            let coeff = om.omega(&g.sub(&chi_e, &de), &de, &chibar_j).inv();
            let (ed, ei) = self.flat[e];
            let new_chi = self.chi_idx(&g.sub(&chi_e, chi_j));
            for (e2, c2) in self
                .nichols
                .shuffle_basis(ed, ei, 1, letter_pos(&self.nichols, j))
            {
                let flat2 = self.flat_of(ed + 1, e2);
                add_into(&mut out, self.encode(flat2, new_chi, 0), c2.mul(&coeff.to_cyclo()));
            }
        } else {
            // peel the F-part: f = Σ c′ (f′·F_l), then commute Ê_j past F̂_l
            let df = self.fdeg[f].clone();
            for (l, fp, cp) in self.fdecomp[f].clone() {
                let chibar_l = self.chibar(l);
                let undo = om
                    .omega(&g.sub(&df, &chibar_l), &chibar_l, &g.sub(&chi_e, &df))
                    .to_cyclo()
                    .mul(&cp);
                let base: AlgElt = [(self.encode(e, chi, fp), undo)].into();
                // F̂_l Ê_j = M_{jl}^{-1} Ê_j F̂_l − δ_{jl} M_{jj}^{-1}(K_{χ̄_j} − K̄_{χ̄_j}^{-1})
                let m_inv = |xi: &Elt| om.omega(&chibar_j, &g.add(xi, chi_j), &chibar_l);
                let t = self.rmul_diag(&base, &m_inv);
                let t1 = self.rmul_f(&self.rmul_e(&t, j), l);
                for (k, v) in t1 {
                    add_into(&mut out, k, v);
                }
                if l == j {
                    let k_part = self.rmul_diag(&t, &|xi: &Elt| om.sigma(&chibar_j, xi));
                    let kbar_part =
                        self.rmul_diag(&t, &|xi: &Elt| om.sigma(xi, &chibar_j).inv());
                    for (k, v) in k_part {
                        add_into(&mut out, k, v.neg());
                    }
                    for (k, v) in kbar_part {
                        add_into(&mut out, k, v);
                    }
                }
            }
        }
        self.rmul_e_cache.lock().unwrap().insert((idx, j), out.clone());
        out
    }

    // right multiplication by the basis E-monomial 𝔼_e
    fn rmul_emonomial(&self, x: &AlgElt, e: usize) -> AlgElt {
        if e == 0 {
            return x.clone();
        }
        let g = self.group();
        let om = self.cocycle();
        let de = self.fdeg[e].clone();
        let mut out = AlgElt::new();
        for (l, ep, cp) in &self.edecomp[e] {
            let dep = self.fdeg[*ep].clone();
            let chibar_l = self.chibar(*l);
            let t = self.rmul_e(x, *l);
            let t = self.rmul_emonomial(&t, *ep);
            // undo the δ-dressing: Σ_π ω(π−d_e, χ̄_l, d_e′)^{-1} δ_π inverted
            let t = self.rmul_diag(&t, &|xi: &Elt| om.omega(&g.sub(xi, &de), &chibar_l, &dep));
            for (k, v) in t {
                add_into(&mut out, k, v.mul(cp));
            }
        }
        out
    }

    // right multiplication by the basis F-part 𝔽_f = (f # 1)
    fn rmul_fmonomial(&self, x: &AlgElt, f: usize) -> AlgElt {
        if f == 0 {
            return x.clone();
        }
        let om = self.cocycle();
        let mut out = AlgElt::new();
        for (l, fp, cp) in &self.fdecomp[f] {
            let dfp = self.fdeg[*fp].clone();
            let chibar_l = self.chibar(*l);
            let t = self.rmul_fmonomial(x, *fp);
            let t = self.rmul_f(&t, *l);
            let t = self.rmul_diag(&t, &|xi: &Elt| om.omega(&dfp, &chibar_l, xi));
            for (k, v) in t {
                add_into(&mut out, k, v.mul(cp));
            }
        }
        out
    }

    fn mul_by_basis(&self, x: &AlgElt, y: usize) -> AlgElt {
        let (e, chi, f) = self.decode(y);
        let t = self.rmul_emonomial(x, e);
        let t = self.rmul_delta(&t, &self.chi_elt(chi));
        self.rmul_fmonomial(&t, f)
    }

    /// Product through the precomputed structure constants.
    pub fn mul(&self, x: &AlgElt, y: &AlgElt) -> AlgElt {
        let mut out = AlgElt::new();
        if self.mult.is_empty() {
            for (&yi, cy) in y {
                let t = self.mul_by_basis(x, yi);
                for (k, v) in t {
                    add_into(&mut out, k, v.mul(cy));
                }
            }
            return out;
        }
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
        let mut out = Tensor2::new();
        for (&(a1, a2), ca) in a {
            for (&(b1, b2), cb) in b {
                let c = ca.mul(cb);
                for (&k1, v1) in &self.mult[a1 * self.dim + b1] {
                    for (&k2, v2) in &self.mult[a2 * self.dim + b2] {
                        add_into(&mut out, (k1, k2), c.mul(v1).mul(v2));
                    }
                }
            }
        }
        out
    }

    pub fn t3_mul(&self, a: &Tensor3, b: &Tensor3) -> Tensor3 {
        let mut out = Tensor3::new();
        for (&(a1, a2, a3), ca) in a {
            for (&(b1, b2, b3), cb) in b {
                let c = ca.mul(cb);
                for (&k1, v1) in &self.mult[a1 * self.dim + b1] {
                    let c1 = c.mul(v1);
                    for (&k2, v2) in &self.mult[a2 * self.dim + b2] {
                        let c2 = c1.mul(v2);
                        for (&k3, v3) in &self.mult[a3 * self.dim + b3] {
                            add_into(&mut out, (k1, k2, k3), c2.mul(v3));
                        }
                    }
                }
            }
        }
        out
    }

    /// δ_χ as an element.
    pub fn delta_chi(&self, chi: &[u64]) -> AlgElt {
        [(self.encode(0, self.chi_idx(chi), 0), CycloNum::one())].into()
    }

    /// Σ_ξ f(ξ)δ_ξ.
    pub fn diag_elt(&self, f_diag: &dyn Fn(&Elt) -> RootOfUnity) -> AlgElt {
        (0..self.ngrp)
            .map(|i| {
                (
                    self.encode(0, i, 0),
                    f_diag(&self.chi_elt(i)).to_cyclo(),
                )
            })
            .collect()
    }

    /// K_χ = Σ σ(χ,ψ)δ_ψ and K̄_χ = Σ σ(ψ,χ)δ_ψ.
    pub fn k_elt(&self, chi: &[u64]) -> AlgElt {
        let om = self.cocycle();
        self.diag_elt(&|psi: &Elt| om.sigma(chi, psi))
    }

    pub fn kbar_elt(&self, chi: &[u64]) -> AlgElt {
        let om = self.cocycle();
        self.diag_elt(&|psi: &Elt| om.sigma(psi, chi))
    }

    /// Generator elements.
    pub fn f_gen(&self, j: usize) -> AlgElt {
        let flat = self.letters[j];
        (0..self.ngrp)
            .map(|chi| (self.encode(0, chi, flat), CycloNum::one()))
            .collect()
    }

    pub fn e_gen(&self, j: usize) -> AlgElt {
        let flat = self.letters[j];
        (0..self.ngrp)
            .map(|chi| (self.encode(flat, chi, 0), CycloNum::one()))
            .collect()
    }

    fn build_delta(&self) -> Result<Vec<Tensor2>> {
        let mut delta_e_mono: Vec<Tensor2> = vec![Default::default(); self.nb];
        let mut delta_f_mono: Vec<Tensor2> = vec![Default::default(); self.nb];
        // unit of H⊗H
        let mut unit2 = Tensor2::new();
        for (&i, ci) in &self.unit {
            for (&j, cj) in &self.unit {
                add_into(&mut unit2, (i, j), ci.mul(cj));
            }
        }
        delta_e_mono[0] = unit2.clone();
        delta_f_mono[0] = unit2;
        let g = self.group().clone();
        let om = self.cocycle().clone();
        for flat in 1..self.nb {
            // Δ(𝔼_e) = Σ c Δ(Ê_l) Δ(𝔼_e′) Δ(D^{-1}), D = Σ ω(π−d_e, χ̄_l, d_e′)^{-1} δ_π
            let de = self.fdeg[flat].clone();
            let mut acc_e = Tensor2::new();
            for (l, ep, cp) in &self.edecomp[flat] {
                let dep = self.fdeg[*ep].clone();
                let chibar_l = self.chibar(*l);
                let dinv = self.delta_of_diag(&|xi: &Elt| {
                    om.omega(&g.sub(xi, &de), &chibar_l, &dep)
                });
                let t = self.t2_mul(&self.delta_e_gen(*l), &delta_e_mono[*ep]);
                let t = self.t2_mul(&t, &dinv);
                for (k, v) in t {
                    add_into(&mut acc_e, k, v.mul(cp));
                }
            }
            delta_e_mono[flat] = acc_e;
            let df = self.fdeg[flat].clone();
            let mut acc_f = Tensor2::new();
            for (l, fp, cp) in &self.fdecomp[flat] {
                let dfp = self.fdeg[*fp].clone();
                let chibar_l = self.chibar(*l);
                let winv = self.delta_of_diag(&|xi: &Elt| om.omega(&dfp, &chibar_l, xi));
                let t = self.t2_mul(&delta_f_mono[*fp], &self.delta_f_gen(*l));
                let t = self.t2_mul(&t, &winv);
                for (k, v) in t {
                    add_into(&mut acc_f, k, v.mul(cp));
                }
            }
            delta_f_mono[flat] = acc_f;
            let _ = df;
        }
        let mut out = Vec::with_capacity(self.dim);
        for idx in 0..self.dim {
            let (e, chi, f) = self.decode(idx);
            let dchi = self.delta_of_delta_chi(chi);
            let t = self.t2_mul(&delta_e_mono[e], &dchi);
            let t = self.t2_mul(&t, &delta_f_mono[f]);
            out.push(t);
        }
        Ok(out)
    }

    fn delta_of_delta_chi(&self, chi: usize) -> Tensor2 {
        let g = self.group();
        let chi_e = self.chi_elt(chi);
        let mut out = Tensor2::new();
        for psi in g.elements() {
            let xi = g.sub(&chi_e, &psi);
            out.insert(
                (
                    self.encode(0, self.chi_idx(&psi), 0),
                    self.encode(0, self.chi_idx(&xi), 0),
                ),
                CycloNum::one(),
            );
        }
        out
    }

    fn delta_of_diag(&self, f_diag: &dyn Fn(&Elt) -> RootOfUnity) -> Tensor2 {
        let g = self.group();
        let mut out = Tensor2::new();
        for p1 in g.elements() {
            for p2 in g.elements() {
                let v = f_diag(&g.add(&p1, &p2));
                add_into(
                    &mut out,
                    (
                        self.encode(0, self.chi_idx(&p1), 0),
                        self.encode(0, self.chi_idx(&p2), 0),
                    ),
                    v.to_cyclo(),
                );
            }
        }
        out
    }

    /// Δ(F̂_i) from the relation list.
    pub fn delta_f_gen(&self, i: usize) -> Tensor2 {
        let g = self.group();
        let om = self.cocycle();
        let chibar_i = self.chibar(i);
        let mut out = Tensor2::new();
        for chi in g.elements() {
            for psi in g.elements() {
                // K_{χ̄_i}δ_χ ⊗ F_i δ_ψ term
                let c1 = theta(om, &chi, &chibar_i, &psi)
                    .mul(&om.omega(&chibar_i, &psi, &chi).inv())
                    .mul(&om.sigma(&chibar_i, &chi));
                add_into(
                    &mut out,
                    (
                        self.encode(0, self.chi_idx(&chi), 0),
                        self.encode(0, self.chi_idx(&g.add(&psi, &chibar_i)), self.letters[i]),
                    ),
                    c1.to_cyclo(),
                );
                // F_i δ_χ ⊗ δ_ψ term
                let c2 = om.omega(&chibar_i, &chi, &psi).inv();
                add_into(
                    &mut out,
                    (
                        self.encode(0, self.chi_idx(&g.add(&chi, &chibar_i)), self.letters[i]),
                        self.encode(0, self.chi_idx(&psi), 0),
                    ),
                    c2.to_cyclo(),
                );
            }
        }
        out
    }

    /// Δ(Ê_i) from the relation list.
    pub fn delta_e_gen(&self, i: usize) -> Tensor2 {
        let g = self.group();
        let om = self.cocycle();
        let chi_i = self.datum.chis[i].clone();
        let chibar_i = self.chibar(i);
        let mut out = Tensor2::new();
        for chi in g.elements() {
            for psi in g.elements() {
                // δ_χ Ê_i ⊗ δ_ψ K̄_{χ_i}
                let c1 = theta(om, &psi, &g.sub(&chi, &chi_i), &chi_i)
                    .inv()
                    .mul(&om.omega(&psi, &chi, &chibar_i).inv())
                    .mul(&om.sigma(&psi, &chi_i));
                add_into(
                    &mut out,
                    (
                        self.encode(self.letters[i], self.chi_idx(&g.sub(&chi, &chi_i)), 0),
                        self.encode(0, self.chi_idx(&psi), 0),
                    ),
                    c1.to_cyclo(),
                );
                // δ_χ ⊗ δ_ψ Ê_i
                let c2 = om.omega(&chi, &psi, &chibar_i).inv();
                add_into(
                    &mut out,
                    (
                        self.encode(0, self.chi_idx(&chi), 0),
                        self.encode(self.letters[i], self.chi_idx(&g.sub(&psi, &chi_i)), 0),
                    ),
                    c2.to_cyclo(),
                );
            }
        }
        out
    }

    fn build_counit(&self) -> Vec<CycloNum> {
        (0..self.dim)
            .map(|idx| {
                let (e, chi, f) = self.decode(idx);
                if e == 0 && f == 0 && self.chi_elt(chi).iter().all(|&x| x == 0) {
                    CycloNum::one()
                } else {
                    CycloNum::zero()
                }
            })
            .collect()
    }

    /// S(F̂_i) direct basis form.
    pub fn antipode_f_gen(&self, i: usize) -> AlgElt {
        let g = self.group();
        let om = self.cocycle();
        let chi_i = self.datum.chis[i].clone();
        let chibar_i = self.chibar(i);
        let mut out = AlgElt::new();
        for xi in g.elements() {
            // S(F_i) = −(Σ_ψ w(ψ)δ_ψ) K_{χ_i} F_i with
            // w(ψ) = ω(ψ̄,χ̄_i,χ_iψ)·dσ(χ_i,ψ,ψ̄)·θ(ψ̄|ψχ_i,χ̄_i)^{-1}
            let psi = g.sub(&xi, &chi_i);
            let psibar = g.neg(&psi);
            let dsigma = om
                .sigma(&psi, &psibar)
                .mul(&om.sigma(&g.add(&chi_i, &psi), &psibar).inv())
                .mul(&om.sigma(&chi_i, &psi).inv());
            let w = om
                .omega(&psibar, &chibar_i, &g.add(&chi_i, &psi))
                .mul(&dsigma)
                .mul(&theta(om, &psibar, &g.add(&psi, &chi_i), &chibar_i).inv());
            let coeff = w.mul(&om.sigma(&chi_i, &psi));
            add_into(
                &mut out,
                self.encode(0, self.chi_idx(&g.add(&xi, &chibar_i)), self.letters[i]),
                coeff.to_cyclo().neg(),
            );
        }
        out
    }

    /// S(Ê_i): the closed-form dressing is presentation-sensitive, so it is
    /// solved from anti-multiplicativity of the cross relation
    /// Ê_iF̂_j = M_{ij}F̂_jÊ_i + δ_{ij}(K_{χ̄_i} − K̄_{χ̄_i}⁻¹):
    /// S(F̂_j)·W = W·S(F̂_j)·S(M_{ij}) + δ_{ij}·S(K_{χ̄_i} − K̄_{χ̄_i}⁻¹),
    /// with the closed form tried first.
    fn solve_antipode_e_gen(&self, i: usize, s_f_gens: &[AlgElt]) -> AlgElt {
        let g = self.group().clone();
        let om = self.cocycle().clone();
        let chibar_i = self.chibar(i);
        let n = self.datum.chis.len();
        let check = |w: &AlgElt| -> bool {
            for (j, sfj) in s_f_gens.iter().enumerate().take(n) {
                let m_ij = self.diag_elt(&|xi: &Elt| {
                    om.omega(&self.chibar(j), &g.add(xi, &self.datum.chis[j]), &chibar_i)
                        .inv()
                });
                let s_m = self.apply_elt_s_group(&m_ij);
                let lhs = self.mul(sfj, w);
                let mut rhs = self.mul(&self.mul(w, sfj), &s_m);
                if i == j {
                    let k_elt = self.k_elt(&chibar_i);
                    let kbar = self.kbar_elt(&chibar_i);
                    let kbar_inv = self.diag_elt(&|xi: &Elt| om.sigma(xi, &chibar_i).inv());
                    let _ = kbar;
                    let mut diff = k_elt;
                    for (&kk, v) in &kbar_inv {
                        add_into(&mut diff, kk, v.neg());
                    }
                    let sdiff = self.apply_elt_s_group(&diff);
                    for (kk, v) in sdiff {
                        add_into(&mut rhs, kk, v);
                    }
                }
                if lhs != rhs {
                    return false;
                }
            }
            true
        };
        let closed = self.antipode_e_gen(i);
        if check(&closed) {
            return closed;
        }
        // linear solve over the ansatz W = Σ_ψ w_ψ ([i], ψ, 0)
        let slots: Vec<usize> = (0..self.ngrp)
            .map(|chi| self.encode(self.letters[i], chi, 0))
            .collect();
        let mut rows: Vec<Vec<CycloNum>> = vec![];
        let mut rhs: Vec<CycloNum> = vec![];
        for (j, sfj) in s_f_gens.iter().enumerate().take(n) {
            let m_ij = self.diag_elt(&|xi: &Elt| {
                om.omega(&self.chibar(j), &g.add(xi, &self.datum.chis[j]), &chibar_i)
                    .inv()
            });
            let s_m = self.apply_elt_s_group(&m_ij);
            // per unknown slot: S(F̂_j)e_k − e_k S(F̂_j) S(M)
            let per: Vec<AlgElt> = slots
                .iter()
                .map(|&slot| {
                    let w: AlgElt = [(slot, CycloNum::one())].into();
                    let lhs = self.mul(sfj, &w);
                    let rhs_t = self.mul(&self.mul(&w, sfj), &s_m);
                    let mut diff = lhs;
                    for (kk, v) in rhs_t {
                        add_into(&mut diff, kk, v.neg());
                    }
                    diff
                })
                .collect();
            let mut target = AlgElt::new();
            if i == j {
                let k_elt = self.k_elt(&chibar_i);
                let kbar_inv = self.diag_elt(&|xi: &Elt| om.sigma(xi, &chibar_i).inv());
                let mut diff = k_elt;
                for (&kk, v) in &kbar_inv {
                    add_into(&mut diff, kk, v.neg());
                }
                target = self.apply_elt_s_group(&diff);
            }
            let keys: std::collections::BTreeSet<usize> = per
                .iter()
                .flat_map(|t| t.keys().cloned())
                .chain(target.keys().cloned())
                .collect();
            for k in keys {
                rows.push(
                    per.iter()
                        .map(|t| t.get(&k).cloned().unwrap_or_else(CycloNum::zero))
                        .collect(),
                );
                rhs.push(target.get(&k).cloned().unwrap_or_else(CycloNum::zero));
            }
        }
        let sol = solve_affine(rows, rhs)
            .expect("antipode dressing for the E generators must exist");
        let mut out = AlgElt::new();
        for (&k, v) in &sol {
            add_into(&mut out, slots[k], v.clone());
        }
        assert!(check(&out), "solved antipode dressing fails the cross relation");
        out
    }

    /// S restricted to group-diagonal elements: Σf(ξ)δ_ξ ↦ Σf(ξ)δ_{−ξ}.
    fn apply_elt_s_group(&self, x: &AlgElt) -> AlgElt {
        let g = self.group();
        let mut out = AlgElt::new();
        for (&idx, c) in x {
            let (e, chi, f) = self.decode(idx);
            assert!(e == 0 && f == 0, "group-diagonal element expected");
            add_into(
                &mut out,
                self.encode(0, g.index_of(&g.neg(&self.chi_elt(chi))), 0),
                c.clone(),
            );
        }
        out
    }

    /// S(Ê_i) closed form (kept as the first candidate).
    pub fn antipode_e_gen(&self, i: usize) -> AlgElt {
        let g = self.group();
        let om = self.cocycle();
        let chi_i = self.datum.chis[i].clone();
        let chibar_i = self.chibar(i);
        let mut out = AlgElt::new();
        for xi in g.elements() {
            let w = om
                .omega(&g.sub(&chibar_i, &xi), &chi_i, &xi)
                .mul(&om.omega(&g.neg(&xi), &chibar_i, &chi_i).inv());
            let coeff = w.mul(&om.sigma(&xi, &chi_i).inv());
            add_into(
                &mut out,
                self.encode(self.letters[i], self.chi_idx(&xi), 0),
                coeff.to_cyclo().neg(),
            );
        }
        out
    }

    fn build_antipode(&self) -> Vec<AlgElt> {
        let g = self.group().clone();
        let om = self.cocycle().clone();
        // S on the E/F monomial parts, by the anti-multiplicative recursion
        let mut s_e: Vec<AlgElt> = vec![Default::default(); self.nb];
        let mut s_f: Vec<AlgElt> = vec![Default::default(); self.nb];
        s_e[0] = self.unit.clone();
        s_f[0] = self.unit.clone();
        let s_f_gens: Vec<AlgElt> = (0..self.datum.chis.len())
            .map(|i| self.antipode_f_gen(i))
            .collect();
        let s_e_gens: Vec<AlgElt> = (0..self.datum.chis.len())
            .map(|i| self.solve_antipode_e_gen(i, &s_f_gens))
            .collect();
        for flat in 1..self.nb {
            let de = self.fdeg[flat].clone();
            let mut acc_e = AlgElt::new();
            for (l, ep, cp) in &self.edecomp[flat] {
                let dep = self.fdeg[*ep].clone();
                let chibar_l = self.chibar(*l);
                // 𝔼_e = Σ c Ê_l 𝔼_e′ D^{-1}: S(𝔼_e) = Σ c S(D^{-1}) S(𝔼_e′) S(Ê_l)
                let sdinv =
                    self.diag_elt_neg(&|xi: &Elt| om.omega(&g.sub(xi, &de), &chibar_l, &dep));
                let t = self.mul(&sdinv, &s_e[*ep]);
                let t = self.mul(&t, &s_e_gens[*l]);
                for (k, v) in t {
                    add_into(&mut acc_e, k, v.mul(cp));
                }
            }
            s_e[flat] = acc_e;
            let mut acc_f = AlgElt::new();
            for (l, fp, cp) in &self.fdecomp[flat] {
                let dfp = self.fdeg[*fp].clone();
                let chibar_l = self.chibar(*l);
                let swinv = self.diag_elt_neg(&|xi: &Elt| om.omega(&dfp, &chibar_l, xi));
                let t = self.mul(&swinv, &s_f_gens[*l]);
                let t = self.mul(&t, &s_f[*fp]);
                for (k, v) in t {
                    add_into(&mut acc_f, k, v.mul(cp));
                }
            }
            s_f[flat] = acc_f;
        }
        (0..self.dim)
            .map(|idx| {
                let (e, chi, f) = self.decode(idx);
                let sdelta = self.delta_chi(&g.neg(&self.chi_elt(chi)));
                let t = self.mul(&s_f[f], &sdelta);
                self.mul(&t, &s_e[e])
            })
            .collect()
    }

    /// S(Σ f(ξ)δ_ξ) = Σ f(ξ)δ_{−ξ}.
    fn diag_elt_neg(&self, f_diag: &dyn Fn(&Elt) -> RootOfUnity) -> AlgElt {
        let g = self.group();
        (0..self.ngrp)
            .map(|i| {
                let xi = self.chi_elt(i);
                (
                    self.encode(0, self.chi_idx(&g.neg(&xi)), 0),
                    f_diag(&xi).to_cyclo(),
                )
            })
            .collect()
    }

    fn build_phi(&self) -> (Tensor3, Tensor3) {
        let g = self.group();
        let om = self.cocycle();
        let mut phi = Tensor3::new();
        let mut phi_inv = Tensor3::new();
        for a in g.elements() {
            for b in g.elements() {
                for c in g.elements() {
                    let key = (
                        self.encode(0, self.chi_idx(&a), 0),
                        self.encode(0, self.chi_idx(&b), 0),
                        self.encode(0, self.chi_idx(&c), 0),
                    );
                    let v = om.omega(&a, &b, &c);
                    phi.insert(key, v.to_cyclo());
                    phi_inv.insert(key, v.inv().to_cyclo());
                }
            }
        }
        (phi, phi_inv)
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

    pub fn apply_delta(&self, x: &AlgElt) -> Tensor2 {
        let mut out = Tensor2::new();
        for (&i, c) in x {
            for (&k, v) in &self.delta[i] {
                add_into(&mut out, k, v.mul(c));
            }
        }
        out
    }

    pub fn eps(&self, x: &AlgElt) -> CycloNum {
        let mut s = CycloNum::zero();
        for (&i, c) in x {
            s = s.add(&self.counit[i].mul(c));
        }
        s
    }

    /// Whether the (α, β) solve succeeded for this presentation.
    pub fn has_antipode_elements(&self) -> bool {
        !self.alpha.is_empty() && !self.beta.is_empty()
    }

    /// Check the four antipode axioms for the current (α, β).
    pub fn antipode_axioms_hold(&self) -> bool {
        for h in 0..self.dim {
            let mut lhs1 = AlgElt::new();
            let mut lhs2 = AlgElt::new();
            for (&(h1, h2), c) in &self.delta[h] {
                let h2e: AlgElt = [(h2, CycloNum::one())].into();
                let t = self.mul(&self.mul(&self.antipode[h1], &self.alpha), &h2e);
                for (k, v) in t {
                    add_into(&mut lhs1, k, v.mul(c));
                }
                let h1e: AlgElt = [(h1, CycloNum::one())].into();
                let t = self.mul(&self.mul(&h1e, &self.beta), &self.antipode[h2]);
                for (k, v) in t {
                    add_into(&mut lhs2, k, v.mul(c));
                }
            }
            let mut rhs1 = AlgElt::new();
            let mut rhs2 = AlgElt::new();
            for (&k, v) in &self.alpha {
                add_into(&mut rhs1, k, v.mul(&self.counit[h]));
            }
            for (&k, v) in &self.beta {
                add_into(&mut rhs2, k, v.mul(&self.counit[h]));
            }
            if lhs1 != rhs1 || lhs2 != rhs2 {
                return false;
            }
        }
        let mut zig1 = AlgElt::new();
        for (&(x1, x2, x3), c) in &self.phi {
            let x1e: AlgElt = [(x1, CycloNum::one())].into();
            let x3e: AlgElt = [(x3, CycloNum::one())].into();
            let t = self.mul(
                &self.mul(
                    &self.mul(&self.mul(&x1e, &self.beta), &self.antipode[x2]),
                    &self.alpha,
                ),
                &x3e,
            );
            for (k, v) in t {
                add_into(&mut zig1, k, v.mul(c));
            }
        }
        if zig1 != self.unit {
            return false;
        }
        let mut zig2 = AlgElt::new();
        for (&(x1, x2, x3), c) in &self.phi_inv {
            let x2e: AlgElt = [(x2, CycloNum::one())].into();
            let x3e: AlgElt = [(x3, CycloNum::one())].into();
            let t = self.mul(
                &self.mul(
                    &self.mul(&self.mul(&self.antipode[x1], &self.alpha), &x2e),
                    &self.beta,
                ),
                &x3e,
            );
            for (k, v) in t {
                add_into(&mut zig2, k, v.mul(c));
            }
        }
        zig2 == self.unit
    }

    /// Solve the antipode elements (α, β) from the four axioms: β from its
    /// linear axioms first (preferring β = 1), then α linearly.
    fn solve_alpha_beta(&self) -> Result<(AlgElt, AlgElt)> {
        // candidate βs: solutions of h₁βS(h₂) = ε(h)β
        let beta_space = self.nullspace_beta();
        if beta_space.is_empty() {
            return Err(Error::Verification("no β satisfies its counit axiom".into()));
        }
        // prefer 1 if admissible, then basis vectors, then small sums
        let one: AlgElt = self.unit.clone();
        let mut candidates: Vec<AlgElt> = vec![];
        if let Some(combo) = in_span(&beta_space, &one, self.dim) {
            let _ = combo;
            candidates.push(one.clone());
        }
        candidates.extend(beta_space.iter().cloned());
        for i in 0..beta_space.len() {
            for j in i + 1..beta_space.len() {
                let mut s = beta_space[i].clone();
                for (&k, v) in &beta_space[j] {
                    add_into(&mut s, k, v.clone());
                }
                candidates.push(s);
            }
        }
        // generic-position combinations: if any β in the space admits an α,
        // a generic one does
        for seed in 1u64..=6 {
            let mut s = AlgElt::new();
            let mut c = seed;
            for b in &beta_space {
                c = c.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let coeff = CycloNum::from_int(((c >> 33) % 7 + 1) as i64);
                for (&k, v) in b {
                    add_into(&mut s, k, v.mul(&coeff));
                }
            }
            candidates.push(s);
        }
        for beta in candidates {
            if let Some(alpha) = self.solve_alpha_for(&beta) {
                return Ok((alpha, beta));
            }
        }
        Err(Error::Verification(
            "no (α, β) pair satisfies the antipode axioms in the searched family".into(),
        ))
    }

    fn nullspace_beta(&self) -> Vec<AlgElt> {
        // rows over unknown β: for each basis h: h₁ β S(h₂) − ε(h) β = 0
        let mut rows: Vec<Vec<CycloNum>> = vec![];
        for h in 0..self.dim {
            // operator β ↦ Σ h₁ β S(h₂): assemble columns by acting on e_k
            let mut op: Vec<AlgElt> = vec![AlgElt::new(); self.dim];
            for (&(h1, h2), c) in &self.delta[h] {
                let sh2 = &self.antipode[h2];
                for k in 0..self.dim {
                    // h1 · e_k · S(h2)
                    let t1 = &self.mult[h1 * self.dim + k];
                    let mut term = AlgElt::new();
                    for (&m1, v1) in t1 {
                        for (&s2, vs) in sh2 {
                            for (&mk, v2) in &self.mult[m1 * self.dim + s2] {
                                add_into(&mut term, mk, v1.mul(vs).mul(v2).mul(c));
                            }
                        }
                    }
                    for (kk, v) in term {
                        add_into(&mut op[k], kk, v);
                    }
                }
            }
            let eh = self.counit[h].clone();
            for out_coord in 0..self.dim {
                let mut row = Vec::with_capacity(self.dim);
                let mut nonzero = false;
                for k in 0..self.dim {
                    let mut v = op[k].get(&out_coord).cloned().unwrap_or_else(CycloNum::zero);
                    if out_coord == k {
                        v = v.sub(&eh);
                    }
                    if !v.is_zero() {
                        nonzero = true;
                    }
                    row.push(v);
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
        nullspace(rows, self.dim)
    }

    fn solve_alpha_for(&self, beta: &AlgElt) -> Option<AlgElt> {
        // linear equations for α:
        //  (i)  Σ S(h₁) α h₂ = ε(h) α      for all basis h
        //  (ii) X¹ β S(X²) α X³ = 1        (φ zig-zag)
        //  (iii) S(x¹) α x² β x³ = 1       (φ^{-1} zig-zag)
        let mut rows: Vec<Vec<CycloNum>> = vec![];
        let mut rhs: Vec<CycloNum> = vec![];
        // (i)
        for h in 0..self.dim {
            let mut op: Vec<AlgElt> = vec![AlgElt::new(); self.dim];
            for (&(h1, h2), c) in &self.delta[h] {
                let sh1 = &self.antipode[h1];
                for k in 0..self.dim {
                    let mut term = AlgElt::new();
                    for (&s1, vs) in sh1 {
                        for (&m1, v1) in &self.mult[s1 * self.dim + k] {
                            for (&mk, v2) in &self.mult[m1 * self.dim + h2] {
                                add_into(&mut term, mk, vs.mul(v1).mul(v2).mul(c));
                            }
                        }
                    }
                    for (kk, v) in term {
                        add_into(&mut op[k], kk, v);
                    }
                }
            }
            let eh = self.counit[h].clone();
            for out_coord in 0..self.dim {
                let mut row = Vec::with_capacity(self.dim);
                let mut nonzero = false;
                for k in 0..self.dim {
                    let mut v = op[k].get(&out_coord).cloned().unwrap_or_else(CycloNum::zero);
                    if out_coord == k {
                        v = v.sub(&eh);
                    }
                    if !v.is_zero() {
                        nonzero = true;
                    }
                    row.push(v);
                }
                if nonzero {
                    rows.push(row);
                    rhs.push(CycloNum::zero());
                }
            }
        }
        // (ii) and (iii): α ↦ Σ (X¹βS(X²)) α X³ and α ↦ Σ S(x¹) α (x²βx³)
        let mut op2: Vec<AlgElt> = vec![AlgElt::new(); self.dim];
        for (&(x1, x2, x3), c) in &self.phi {
            // prefix = X¹ β S(X²)
            let x1e: AlgElt = [(x1, CycloNum::one())].into();
            let pre = self.mul(&self.mul(&x1e, beta), &self.antipode[x2]);
            for k in 0..self.dim {
                let ke: AlgElt = [(k, CycloNum::one())].into();
                let x3e: AlgElt = [(x3, CycloNum::one())].into();
                let t = self.mul(&self.mul(&pre, &ke), &x3e);
                for (kk, v) in t {
                    add_into(&mut op2[k], kk, v.mul(c));
                }
            }
        }
        let mut op3: Vec<AlgElt> = vec![AlgElt::new(); self.dim];
        for (&(x1, x2, x3), c) in &self.phi_inv {
            let x2e: AlgElt = [(x2, CycloNum::one())].into();
            let x3e: AlgElt = [(x3, CycloNum::one())].into();
            let post = self.mul(&self.mul(&x2e, beta), &x3e);
            let s1 = &self.antipode[x1];
            for k in 0..self.dim {
                let ke: AlgElt = [(k, CycloNum::one())].into();
                let t = self.mul(&self.mul(s1, &ke), &post);
                for (kk, v) in t {
                    add_into(&mut op3[k], kk, v.mul(c));
                }
            }
        }
        for (op, target) in [(op2, &self.unit), (op3, &self.unit)] {
            for out_coord in 0..self.dim {
                let mut row = Vec::with_capacity(self.dim);
                let mut nonzero = false;
                for k in 0..self.dim {
                    let v = op[k].get(&out_coord).cloned().unwrap_or_else(CycloNum::zero);
                    if !v.is_zero() {
                        nonzero = true;
                    }
                    row.push(v);
                }
                let t = target.get(&out_coord).cloned().unwrap_or_else(CycloNum::zero);
                if nonzero || !t.is_zero() {
                    rows.push(row);
                    rhs.push(t);
                }
            }
        }
        solve_affine(rows, rhs)
    }
}

/// Nullspace basis of a homogeneous system (rows are equations).
fn nullspace(mut rows: Vec<Vec<CycloNum>>, unknowns: usize) -> Vec<AlgElt> {
    let mut pivots: Vec<usize> = vec![];
    let mut rank = 0usize;
    for col in 0..unknowns {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().unwrap();
        for cc in 0..unknowns {
            rows[rank][cc] = rows[rank][cc].mul(&inv);
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for cc in 0..unknowns {
                let t = f.mul(&rows[rank][cc]);
                rows[r][cc] = rows[r][cc].sub(&t);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let free: Vec<usize> = (0..unknowns).filter(|c| !pivots.contains(c)).collect();
    let mut basis = vec![];
    for &fc in &free {
        let mut v = vec![CycloNum::zero(); unknowns];
        v[fc] = CycloNum::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = rows[r][fc].neg();
        }
        let elt: AlgElt = v
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        basis.push(elt);
    }
    basis
}

fn in_span(space: &[AlgElt], target: &AlgElt, dim: usize) -> Option<Vec<CycloNum>> {
    let cols: Vec<Vec<CycloNum>> = space
        .iter()
        .map(|e| {
            (0..dim)
                .map(|i| e.get(&i).cloned().unwrap_or_else(CycloNum::zero))
                .collect()
        })
        .collect();
    let t: Vec<CycloNum> = (0..dim)
        .map(|i| target.get(&i).cloned().unwrap_or_else(CycloNum::zero))
        .collect();
    solve_linear(&cols, &t)
}

pub(crate) fn solve_affine(rows: Vec<Vec<CycloNum>>, rhs: Vec<CycloNum>) -> Option<AlgElt> {
    let unknowns = rows.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<CycloNum>> = rows
        .into_iter()
        .zip(rhs)
        .map(|(mut r, b)| {
            r.push(b);
            r
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = vec![];
    let mut rank = 0usize;
    for col in 0..unknowns {
        let Some(p) = (rank..aug.len()).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(rank, p);
        let inv = aug[rank][col].inv().unwrap();
        for cc in 0..=unknowns {
            aug[rank][cc] = aug[rank][cc].mul(&inv);
        }
        for r in 0..aug.len() {
            if r == rank || aug[r][col].is_zero() {
                continue;
            }
            let f = aug[r][col].clone();
            for cc in 0..=unknowns {
                let t = f.mul(&aug[rank][cc]);
                aug[r][cc] = aug[r][cc].sub(&t);
            }
        }
        pivots.push((rank, col));
        rank += 1;
    }
    for r in rank..aug.len() {
        if !aug[r][unknowns].is_zero() {
            return None;
        }
    }
    let mut out = AlgElt::new();
    for (r, c) in pivots {
        let v = aug[r][unknowns].clone();
        if !v.is_zero() {
            out.insert(c, v);
        }
    }
    Some(out)
}

/// The bosonization B(V) # k^Ĝ_ω: the sub-quasi-Hopf-algebra of u(ω,σ)
/// spanned by the group part and the F-side, extracted with closure checks.
pub struct Biproduct<'a> {
    pub parent: &'a QuasiHopfAlgebra,
    /// parent basis indices of the sub-basis, in (χ, f) order
    pub indices: Vec<usize>,
}

pub fn build_biproduct(alg: &QuasiHopfAlgebra) -> Result<Biproduct<'_>> {
    let mut indices = vec![];
    for idx in 0..alg.dim {
        let (e, _, _) = alg.decode(idx);
        if e == 0 {
            indices.push(idx);
        }
    }
    let inset: std::collections::BTreeSet<usize> = indices.iter().copied().collect();
    for &x in &indices {
        for &y in &indices {
            for k in alg.mult[x * alg.dim + y].keys() {
                if !inset.contains(k) {
                    return Err(Error::Verification("biproduct is not mult-closed".into()));
                }
            }
        }
        for (k1, k2) in alg.delta[x].keys() {
            if !inset.contains(k1) || !inset.contains(k2) {
                return Err(Error::Verification("biproduct is not Δ-closed".into()));
            }
        }
        for k in alg.antipode[x].keys() {
            if !inset.contains(k) {
                return Err(Error::Verification("biproduct is not S-closed".into()));
            }
        }
    }
    Ok(Biproduct { parent: alg, indices })
}

/// Twist of the quasi-Hopf structure by a group-part twist J built from a
/// normalized 2-cochain ζ. Returns the twisted algebra with (α,β) re-solved
/// from the axioms.
pub fn twist_algebra(alg: &QuasiHopfAlgebra, zeta: &TwoCochain) -> Result<QuasiHopfAlgebra> {
    let g = alg.group().clone();
    if zeta.group != g {
        return Err(Error::Invalid("twist cochain lives on the wrong group".into()));
    }
    let mut j = Tensor2::new();
    let mut j_inv = Tensor2::new();
    for a in g.elements() {
        for b in g.elements() {
            let key = (
                alg.encode(0, g.index_of(&a), 0),
                alg.encode(0, g.index_of(&b), 0),
            );
            let v = zeta.eval(&a, &b);
            j.insert(key, v.to_cyclo());
            j_inv.insert(key, v.inv().to_cyclo());
        }
    }
    // Δ^J = JΔJ^{-1}
    let delta: Vec<Tensor2> = (0..alg.dim)
        .map(|i| alg.t2_mul(&alg.t2_mul(&j, &alg.delta[i]), &j_inv))
        .collect();
    // φ^J = U_R φ U_L^{-1}
    let t3_from = |f: &dyn Fn(&Elt, &Elt, &Elt) -> RootOfUnity| {
        let mut out = Tensor3::new();
        for a in g.elements() {
            for b in g.elements() {
                for c in g.elements() {
                    out.insert(
                        (
                            alg.encode(0, g.index_of(&a), 0),
                            alg.encode(0, g.index_of(&b), 0),
                            alg.encode(0, g.index_of(&c), 0),
                        ),
                        f(&a, &b, &c).to_cyclo(),
                    );
                }
            }
        }
        out
    };
    let om = alg.cocycle();
    let phi = t3_from(&|a: &Elt, b: &Elt, c: &Elt| {
        // ω · dζ
        let dz = zeta
            .eval(b, c)
            .mul(&zeta.eval(a, &g.add(b, c)))
            .mul(&zeta.eval(&g.add(a, b), c).inv())
            .mul(&zeta.eval(a, b).inv());
        om.omega(a, b, c).mul(&dz)
    });
    let phi_inv = t3_from(&|a: &Elt, b: &Elt, c: &Elt| {
        let dz = zeta
            .eval(b, c)
            .mul(&zeta.eval(a, &g.add(b, c)))
            .mul(&zeta.eval(&g.add(a, b), c).inv())
            .mul(&zeta.eval(a, b).inv());
        om.omega(a, b, c).mul(&dz).inv()
    });
    let mut out = QuasiHopfAlgebra {
        datum: alg.datum.clone(),
        nichols: NicholsAlgebra::build(&BraidedVS::from_chis(
            alg.datum.cocycle.clone(),
            &alg.datum.chis,
        ))?,
        dim: alg.dim,
        nb: alg.nb,
        ngrp: alg.ngrp,
        flat: alg.flat.clone(),
        fdeg: alg.fdeg.clone(),
        letters: alg.letters.clone(),
        fdecomp: alg.fdecomp.clone(),
        edecomp: alg.edecomp.clone(),
        rmul_e_cache: Default::default(),
        mult: alg.mult.clone(),
        delta,
        counit: alg.counit.clone(),
        antipode: alg.antipode.clone(),
        phi,
        phi_inv,
        alpha: Default::default(),
        beta: Default::default(),
        unit: alg.unit.clone(),
    };
    // α^J = S(J⁽⁻¹⁾)αJ⁽⁻²⁾ and β^J = J¹βS(J²), with the solver as fallback
    let mut alpha_j = AlgElt::new();
    for (&(a, b), c) in &j_inv {
        let be: AlgElt = [(b, CycloNum::one())].into();
        let t = out.mul(&out.mul(&out.antipode[a], &alg.alpha), &be);
        for (k, v) in t {
            add_into(&mut alpha_j, k, v.mul(c));
        }
    }
    let mut beta_j = AlgElt::new();
    for (&(a, b), c) in &j {
        let ae: AlgElt = [(a, CycloNum::one())].into();
        let t = out.mul(&out.mul(&ae, &alg.beta), &out.antipode[b]);
        for (k, v) in t {
            add_into(&mut beta_j, k, v.mul(c));
        }
    }
    out.alpha = alpha_j;
    out.beta = beta_j;
    if !out.antipode_axioms_hold() {
        if let Ok((a, b)) = out.solve_alpha_beta() {
            out.alpha = a;
            out.beta = b;
        }
        // otherwise keep the Def-2.x transforms; antipode_axioms_hold()
        // reports their status (certain cohomologous presentations admit no
        // antipode elements over the standard group-part coproduct)
    }
    Ok(out)
}

/// The isomorphism f_ζ: (B(V)#k^Ĝ_ω)^J → B(V)#k^Ĝ_{ω·dζ} on generators:
/// identity on δ's, F_i ↦ Σ ζ(χ̄_i,χ) F_i#δ_χ. Verified as an algebra and
/// coalgebra map on the biproduct part of the twisted algebra.
pub fn twist_iso_check(
    twisted: &QuasiHopfAlgebra,
    target: &QuasiHopfAlgebra,
    zeta: &TwoCochain,
) -> Result<()> {
    let g = twisted.group().clone();
    if twisted.dim != target.dim {
        return Err(Error::Invalid("twist iso needs equal dimensions".into()));
    }
    // map on the biproduct basis: (0,χ,f) ↦ Π-corrected image; build via
    // generator images and multiplicativity
    let mut images: BTreeMap<usize, AlgElt> = BTreeMap::new();
    for chi in g.elements() {
        let src = twisted.encode(0, g.index_of(&chi), 0);
        images.insert(src, target.delta_chi(&chi));
    }
    // f_ζ(F̂_i) in the target
    let f_img: Vec<AlgElt> = (0..twisted.datum.chis.len())
        .map(|i| {
            let chibar_i = g.neg(&twisted.datum.chis[i]);
            let mut out = AlgElt::new();
            for chi in g.elements() {
                let idx = target.encode(
                    0,
                    g.index_of(&g.add(&chi, &chibar_i)),
                    target.letters[i],
                );
                add_into(&mut out, idx, zeta.eval(&chibar_i, &chi).to_cyclo());
            }
            out
        })
        .collect();
    // extend to all (0,χ,f) via the target's products along the twisted
    // algebra's own decomposition of basis elements, then check homomorphism
    let map_elt = |x: &AlgElt, images: &BTreeMap<usize, AlgElt>| -> Option<AlgElt> {
        let mut out = AlgElt::new();
        for (&i, c) in x {
            let img = images.get(&i)?;
            for (&k, v) in img {
                add_into(&mut out, k, v.mul(c));
            }
        }
        Some(out)
    };
    // biproduct basis elements: (0,χ,f) = δ_χ·𝔽_f with 𝔽_f a product of
    // generators and diagonal corrections; replay that in the target with
    // f_ζ-images. Compute φ(𝔽_f) recursively.
    let mut fmono_img: Vec<AlgElt> = vec![AlgElt::new(); twisted.nb];
    fmono_img[0] = target.unit.clone();
    let om = twisted.cocycle();
    for flat in 1..twisted.nb {
        let mut acc = AlgElt::new();
        for (l, fp, cp) in &twisted.fdecomp[flat] {
            let dfp = twisted.fdeg[*fp].clone();
            let chibar_l = g.neg(&twisted.datum.chis[*l]);
            // image of W^{-1} diag under identity-on-group: note the target
            // coassociator differs, but W^{-1} is a plain diagonal element
            let winv = target.diag_elt(&|xi: &Elt| om.omega(&dfp, &chibar_l, xi));
            let t = target.mul(&fmono_img[*fp], &f_img[*l]);
            let t = target.mul(&t, &winv);
            for (k, v) in t {
                add_into(&mut acc, k, v.mul(cp));
            }
        }
        fmono_img[flat] = acc;
    }
    for chi in g.elements() {
        for f in 0..twisted.nb {
            let src = twisted.encode(0, g.index_of(&chi), f);
            let img = target.mul(&target.delta_chi(&chi), &fmono_img[f]);
            images.insert(src, img);
        }
    }
    // multiplicativity on all biproduct pairs
    for chi1 in 0..twisted.ngrp {
        for f1 in 0..twisted.nb {
            let x = twisted.encode(0, chi1, f1);
            let xe: AlgElt = [(x, CycloNum::one())].into();
            for chi2 in 0..twisted.ngrp {
                for f2 in 0..twisted.nb {
                    let y = twisted.encode(0, chi2, f2);
                    let ye: AlgElt = [(y, CycloNum::one())].into();
                    let lhs = map_elt(&twisted.mul(&xe, &ye), &images)
                        .ok_or_else(|| Error::Verification("image leaves biproduct".into()))?;
                    let rhs = target.mul(&images[&x], &images[&y]);
                    if lhs != rhs {
                        return Err(Error::Verification(format!(
                            "f_ζ not multiplicative at ({x},{y})"
                        )));
                    }
                }
            }
        }
    }
    // coalgebra map on the biproduct: (f_ζ ⊗ f_ζ)(Δ^J(x)) = Δ_target(f_ζ(x))
    for chi in 0..twisted.ngrp {
        for f in 0..twisted.nb {
            let x = twisted.encode(0, chi, f);
            let mut lhs = Tensor2::new();
            for (&(i, j), c) in &twisted.delta[x] {
                let (imgi, imgj) = (
                    images.get(&i).ok_or_else(|| {
                        Error::Verification("Δ^J leaves the biproduct".into())
                    })?,
                    images.get(&j).ok_or_else(|| {
                        Error::Verification("Δ^J leaves the biproduct".into())
                    })?,
                );
                for (&k1, v1) in imgi {
                    for (&k2, v2) in imgj {
                        add_into(&mut lhs, (k1, k2), c.mul(v1).mul(v2));
                    }
                }
            }
            let mut rhs = Tensor2::new();
            for (&i, c) in &images[&x] {
                for (&(k1, k2), v) in &target.delta[i] {
                    add_into(&mut rhs, (k1, k2), v.mul(c));
                }
            }
            if lhs != rhs {
                return Err(Error::Verification(format!(
                    "f_ζ not comultiplicative at basis {x}"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;
    use crate::abgroup::FiniteAbelianGroup;
    use crate::cyclo::RootOfUnity;

    fn sl2_quotient_datum(ell: u64) -> UqgDatum {
        let (_, ubar_datum, _) = super::super::sl2_data(ell).unwrap();
        ubar_datum
    }

    #[test]
    fn group_only_algebra() {
        // no generators: u = k^Ĝ_ω with R = R₀
        let g = FiniteAbelianGroup::cyclic(4);
        let q = crate::qform::QuadraticForm::new(
            g.clone(),
            vec![RootOfUnity::new(1, 8)],
            Default::default(),
        )
        .unwrap();
        let datum = UqgDatum { cocycle: crate::qform::cocycle_from_qform(&q), chis: vec![] };
        let alg = build_uqg(&datum).unwrap();
        assert_eq!(alg.dim, 4);
        let r = r_matrix(&alg).unwrap();
        assert_eq!(r.r, r.r0);
        let rep = verify_quasihopf(&alg, Some(&r));
        let fails: Vec<_> = rep.lines().into_iter().filter(|l| l.contains("FAIL")).collect();
        assert!(fails.is_empty(), "{fails:?}");
        // nondegenerate B → factorizable
        assert!(factorizable(&alg, &r));
    }

    #[test]
    fn biproduct_delta_rule_and_antipode_scalar() {
        let alg = build_uqg(&sl2_quotient_datum(4)).unwrap();
        let g = alg.group().clone();
        let om = alg.cocycle().clone();
        let chi1 = alg.datum.chis[0].clone();
        let chibar = g.neg(&chi1);
        // δ_χ · F_i = F_i # δ_{χχ_i}
        for chi in g.elements() {
            let lhs = alg.mul(&alg.delta_chi(&chi), &alg.f_gen(0));
            let idx = alg.encode_raw(0, g.add(&g.add(&chi, &chi1), &chibar).as_slice(), alg.letters[0]);
            let expect: AlgElt = [(idx, CycloNum::one())].into();
            assert_eq!(lhs, expect, "δ_χ F at χ = {chi:?}");
        }
        // S(F_i#δ_ψ) = −ω(ψ,χ̄_i,χ_iψ̄)σ(χ̄_i,ψ)(F_i#δ_{χ_iψ̄})
        for psi in g.elements() {
            let x = alg.mul(&alg.f_gen(0), &alg.delta_chi(&psi));
            let s = alg.apply_s(&x);
            let target_delta = g.sub(&chi1, &psi);
            let coeff = om
                .omega(&psi, &chibar, &g.add(&chi1, &g.neg(&psi)))
                .mul(&om.sigma(&chibar, &psi));
            let idx = alg.encode_raw(
                0,
                g.add(&target_delta, &chibar).as_slice(),
                alg.letters[0],
            );
            let expect: AlgElt = [(idx, coeff.to_cyclo().neg())].into();
            assert_eq!(s, expect, "S(F#δ) at ψ = {psi:?}");
        }
    }

    #[test]
    fn omega_trivial_gives_skew_primitive_f() {
        // ω ≡ 1: Δ(F) = K_{χ̄} ⊗ F + F ⊗ 1
        let g = FiniteAbelianGroup::cyclic(8);
        let sigma_gen = RootOfUnity::new(1, 8);
        let cocycle = AbelianThreeCocycle::from_fns(
            &g,
            |_, _, _| RootOfUnity::one(),
            |a, b| sigma_gen.pow((a[0] * b[0]) as i64),
        )
        .unwrap();
        let datum = UqgDatum { cocycle, chis: vec![vec![6]] };
        let alg = build_uqg(&datum).unwrap();
        let chibar = alg.group().neg(&alg.datum.chis[0]);
        let mut expect = Tensor2::new();
        let k = alg.k_elt(&chibar);
        for (&i, ci) in &k {
            for (&j, cj) in &alg.f_gen(0) {
                add_into(&mut expect, (i, j), ci.mul(cj));
            }
        }
        for (&i, ci) in &alg.f_gen(0) {
            for (&j, cj) in &alg.unit {
                add_into(&mut expect, (i, j), ci.mul(cj));
            }
        }
        let mut got = Tensor2::new();
        for (&i, c) in &alg.f_gen(0) {
            for (&k2, v) in &alg.delta[i] {
                add_into(&mut got, k2, v.mul(c));
            }
        }
        assert_eq!(got, expect);
    }

    #[test]
    fn twist_by_zeta_t_and_iso() {
        // ℓ = 4, ζ = ζ_t^{-1}: Δ^J(F) = K^{-1}(q^t Σ_{odd} δ + Σ_{even} δ) ⊗ F + F ⊗ 1
        let ell = 4u64;
        let t = 1i64;
        let datum = sl2_quotient_datum(ell);
        let alg = build_uqg(&datum).unwrap();
        let g = alg.group().clone();
        let zeta = crate::qform::TwoCochain::from_fn(&g, |i, j| {
            // ζ_t(i,j) = q^{-tj/2} for odd i; the twist uses ζ = ζ_t^{-1}
            if i[0] % 2 == 1 {
                RootOfUnity::new(t * j[0] as i64, 2 * ell)
            } else {
                RootOfUnity::one()
            }
        });
        let twisted = twist_algebra(&alg, &zeta).unwrap();
        // φ^J is exactly ω·dζ
        let omega_dz = crate::qform::apply_coboundary(
            &alg.datum.cocycle,
            &crate::qform::TwoCochain::from_fn(&g, |i, j| zeta.eval(i, j).inv()),
        );
        for (&(a, b, c), v) in &twisted.phi {
            let (_, ai, _) = twisted.decode(a);
            let (_, bi, _) = twisted.decode(b);
            let (_, ci, _) = twisted.decode(c);
            let expect = omega_dz.omega(
                &g.element_at(ai),
                &g.element_at(bi),
                &g.element_at(ci),
            );
            assert!(v.eq(&expect.to_cyclo()), "φ^J");
        }
        // Δ^J(F_i) general display:
        //   Σ (ω(χ,χ̄,ψ)/ω(χ̄,χ,ψ)) σ(χ̄,χ) ζ(χ,ψχ̄)/ζ(χ,ψ) δ_χ ⊗ (F#δ_ψ)
        // + Σ ω(χ̄,χ,ψ)^{-1} ζ(χχ̄,ψ)/ζ(χ,ψ) (F#δ_χ) ⊗ δ_ψ
        let om = alg.cocycle().clone();
        let chibar = g.neg(&alg.datum.chis[0]);
        let mut expect = Tensor2::new();
        for chi in g.elements() {
            for psi in g.elements() {
                let c1 = om
                    .omega(&chi, &chibar, &psi)
                    .mul(&om.omega(&chibar, &chi, &psi).inv())
                    .mul(&om.sigma(&chibar, &chi))
                    .mul(&zeta.eval(&chi, &g.add(&psi, &chibar)))
                    .mul(&zeta.eval(&chi, &psi).inv());
                add_into(
                    &mut expect,
                    (
                        twisted.encode_raw(0, &chi, 0),
                        twisted.encode_raw(0, &g.add(&psi, &chibar), twisted.letters[0]),
                    ),
                    c1.to_cyclo(),
                );
                let c2 = om
                    .omega(&chibar, &chi, &psi)
                    .inv()
                    .mul(&zeta.eval(&g.add(&chi, &chibar), &psi))
                    .mul(&zeta.eval(&chi, &psi).inv());
                add_into(
                    &mut expect,
                    (
                        twisted.encode_raw(0, &g.add(&chi, &chibar), twisted.letters[0]),
                        twisted.encode_raw(0, &psi, 0),
                    ),
                    c2.to_cyclo(),
                );
            }
        }
        let mut got = Tensor2::new();
        for (&i, c) in &twisted.f_gen(0) {
            for (&k2, v) in &twisted.delta[i] {
                add_into(&mut got, k2, v.mul(c));
            }
        }
        assert_eq!(got, expect, "Δ^J(F) general display");
        // f_ζ is an isomorphism onto the ω·dζ-twisted build
        let twisted_cocycle = crate::qform::apply_coboundary(
            &datum.cocycle,
            &crate::qform::TwoCochain::from_fn(&g, |i, j| zeta.eval(i, j).inv()),
        );
        let target = build_uqg(&UqgDatum {
            cocycle: twisted_cocycle,
            chis: datum.chis.clone(),
        })
        .unwrap();
        twist_iso_check(&twisted, &target, &zeta).unwrap();
    }

    #[test]
    fn lambda_endpoint_examples() {
        let alg = build_uqg(&sl2_quotient_datum(6)).unwrap();
        assert!(lambda_of_word(&alg, &[]).is_one());
        assert!(lambda_of_word(&alg, &[0]).is_one());
        // λ_{F₁F₂} = B(χ̄₁, χ̄₂) (here both letters are the single generator)
        let g = alg.group().clone();
        let om = alg.cocycle().clone();
        let d = g.neg(&alg.datum.chis[0]);
        let expect = om.sigma(&d, &d).pow(2);
        assert_eq!(lambda_of_word(&alg, &[0, 0]), expect);
    }

    #[test]
    fn mutation_is_caught() {
        // corrupt one φ entry: the pentagon (or φ-invertibility) must fail
        let mut alg = build_uqg(&sl2_quotient_datum(4)).unwrap();
        let key = *alg.phi.keys().nth(7).unwrap();
        let old = alg.phi.get(&key).unwrap().clone();
        alg.phi.insert(key, old.neg());
        let rep = verify_quasihopf(&alg, None);
        assert!(!rep.all_pass());
        let names: Vec<String> = rep
            .checks
            .iter()
            .filter(|(_, ok, _)| !ok)
            .map(|(n, _, w)| format!("{n}: {w:?}"))
            .collect();
        assert!(
            names.iter().any(|n| n.contains("pentagon") || n.contains("φ")),
            "expected a φ-level failure, got {names:?}"
        );
    }
}
