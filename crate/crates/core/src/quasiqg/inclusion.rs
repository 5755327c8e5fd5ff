//! The modularization inclusion M: ū → u on structure constants, the
//! worked rank-1 pipeline, and the B_n fourth-root-of-unity example.

use super::{add_into, AlgElt, QuasiHopfAlgebra, UqgDatum};
use crate::abgroup::{Bihomomorphism, Elt, FiniteAbelianGroup};
use crate::cyclo::{CycloNum, RootOfUnity};
use crate::modularize::{self, cyclo_rank, pushdown, PushdownResult};
use crate::qform::AbelianThreeCocycle;
use crate::rootlat;
use crate::{Error, Result};

pub struct InclusionM {
    /// image of each ū basis element inside u
    pub images: Vec<AlgElt>,
}

/// Build and verify the algebra inclusion M: ū → u attached to a pushdown.
/// Requires the section to fix the ambient degrees of all PBW monomials.
pub fn build_inclusion_m(
    ubar: &QuasiHopfAlgebra,
    u: &QuasiHopfAlgebra,
    pd: &PushdownResult,
) -> Result<InclusionM> {
    let gq = ubar.group().clone();
    let ga = u.group().clone();
    if gq != pd.qws.quotient || ga != pd.qws.ambient {
        return Err(Error::Invalid("inclusion groups do not match the pushdown".into()));
    }
    // ambient degree of a ū PBW word (letters carry the ambient χ̄_i)
    let amb_deg = |word: &[u8]| -> Elt {
        word.iter().fold(ga.zero(), |acc, &l| {
            ga.add(&acc, &ga.neg(&u.datum.chis[l as usize]))
        })
    };
    // section condition s([|b|]) = |b| on every PBW degree
    for b in 0..ubar.flat_basis_len() {
        let d = amb_deg(ubar.flat_word(b));
        if pd.qws.section(&pd.qws.project(&d)) != d {
            return Err(Error::Invalid(format!(
                "section does not fix the PBW degree {d:?}"
            )));
        }
    }
    // monoidal-structure isomorphism weights on words
    let s_iso = |word: &[u8]| -> RootOfUnity {
        let mut acc = RootOfUnity::one();
        let mut prefix = ga.zero();
        for (k, &l) in word.iter().enumerate() {
            let dl = ga.neg(&u.datum.chis[l as usize]);
            if k > 0 {
                acc = acc.mul(&pd.kappa.eval(&prefix, &dl));
            }
            prefix = ga.add(&prefix, &dl);
        }
        acc
    };
    // S(b̄) expansions per flat index, as u-side Nichols combinations
    let nb_bar = ubar.flat_basis_len();
    let mut s_of: Vec<Vec<(usize, CycloNum)>> = vec![vec![]; nb_bar];
    for b in 0..nb_bar {
        let w = ubar.flat_word(b).to_vec();
        let scal = s_iso(&w).to_cyclo();
        for (idx, c) in u.nichols.reduce_word(&w) {
            s_of[b].push((u.flat_of_public(w.len(), idx), c.mul(&scal)));
        }
        if s_of[b].is_empty() && !w.is_empty() {
            return Err(Error::Verification(format!(
                "S(b̄) vanishes in B(V) for the word {w:?}"
            )));
        }
    }
    // dual transport: per ū degree, invert the matrix of S against the
    // u-side basis of the same degree
    let mut dual_of: Vec<Vec<(usize, CycloNum)>> = vec![vec![]; nb_bar];
    for deg in 0..ubar.nichols.basis.len() {
        let bar_idx: Vec<usize> = (0..nb_bar)
            .filter(|&b| ubar.flat_word(b).len() == deg)
            .collect();
        let u_idx: Vec<usize> = (0..u.flat_basis_len())
            .filter(|&b| u.flat_word(b).len() == deg)
            .collect();
        if bar_idx.is_empty() {
            continue;
        }
        if bar_idx.len() != u_idx.len() {
            return Err(Error::Verification(
                "graded dimensions of B(V) and B(F(V)) differ".into(),
            ));
        }
        let k = bar_idx.len();
        let mut m = vec![vec![CycloNum::zero(); k]; k];
        for (ci, &b) in bar_idx.iter().enumerate() {
            for (uf, c) in &s_of[b] {
                let r = u_idx.iter().position(|x| x == uf).unwrap();
                m[r][ci] = c.clone();
            }
        }
        let minv = cyclo_matrix_inverse(&m)
            .ok_or_else(|| Error::Verification("S is singular on a degree block".into()))?;
        for (ci, &b) in bar_idx.iter().enumerate() {
            // (S(b̄_i))* = Σ_j (M^{-1})_{ij} (b_j)*
            for (j, &uf) in u_idx.iter().enumerate() {
                let c = minv[ci][j].clone();
                if !c.is_zero() {
                    dual_of[b].push((uf, c));
                }
            }
        }
    }
    // leg images
    let t_elems = pd.qws.subgroup.elements();
    let m_delta = |chi_bar: &Elt| -> AlgElt {
        let mut out = AlgElt::new();
        for tau in &t_elems {
            let psi = ga.add(&pd.qws.section(chi_bar), tau);
            add_into(&mut out, u.encode_raw(0, &psi, 0), CycloNum::one());
        }
        out
    };
    let m_fmono = |f: usize| -> AlgElt {
        // Σ_ψ κ(|b|, ψ) (S(b̄) # δ_ψ)
        let d = amb_deg(ubar.flat_word(f));
        let mut out = AlgElt::new();
        for psi in ga.elements() {
            let kap = pd.kappa.eval(&d, &psi).to_cyclo();
            for (uf, c) in &s_of[f] {
                add_into(
                    &mut out,
                    u.encode_raw(0, &ga.add(&psi, &d), *uf),
                    kap.mul(c),
                );
            }
        }
        out
    };
    let m_emono = |e: usize| -> AlgElt {
        // Γ((S(b̄))^*) · Σ_χ κ(χ|b̄|, |b|)^{-1} δ_χ
        let d = amb_deg(ubar.flat_word(e));
        let mut out = AlgElt::new();
        for chi in ga.elements() {
            let kap = pd.kappa.eval(&ga.sub(&chi, &d), &d).inv().to_cyclo();
            for (uf, c) in &dual_of[e] {
                add_into(&mut out, u.encode_raw(*uf, &chi, 0), kap.mul(c));
            }
        }
        out
    };
    let mut images = Vec::with_capacity(ubar.dim);
    for idx in 0..ubar.dim {
        let (e, chi, f) = ubar.decode(idx);
        let chi_bar = gq.element_at(chi);
        let img = u.mul(&u.mul(&m_emono(e), &m_delta(&chi_bar)), &m_fmono(f));
        images.push(img);
    }
    // injectivity
    let mut mat = vec![vec![CycloNum::zero(); u.dim]; ubar.dim];
    for (r, img) in images.iter().enumerate() {
        for (&k, v) in img {
            mat[r][k] = v.clone();
        }
    }
    if cyclo_rank(mat) != ubar.dim {
        return Err(Error::Verification("M is not injective".into()));
    }
    // multiplicativity on all basis pairs
    for x in 0..ubar.dim {
        for y in 0..ubar.dim {
            let mut lhs = AlgElt::new();
            for (&k, v) in &ubar.mult[x * ubar.dim + y] {
                for (&m, w) in &images[k] {
                    add_into(&mut lhs, m, w.mul(v));
                }
            }
            let rhs = u.mul(&images[x], &images[y]);
            if lhs != rhs {
                return Err(Error::Verification(format!(
                    "M not multiplicative at ū basis pair ({x},{y})"
                )));
            }
        }
    }
    Ok(InclusionM { images })
}

pub(crate) fn cyclo_matrix_inverse(m: &[Vec<CycloNum>]) -> Option<Vec<Vec<CycloNum>>> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut inv: Vec<Vec<CycloNum>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { CycloNum::one() } else { CycloNum::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let pivot_inv = a[col][col].inv()?;
        for j in 0..n {
            a[col][j] = a[col][j].mul(&pivot_inv);
            inv[col][j] = inv[col][j].mul(&pivot_inv);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = f.mul(&a[col][j]);
                a[r][j] = a[r][j].sub(&t);
                let t = f.mul(&inv[col][j]);
                inv[r][j] = inv[r][j].sub(&t);
            }
        }
    }
    Some(inv)
}

impl QuasiHopfAlgebra {
    pub(crate) fn flat_of_public(&self, d: usize, i: usize) -> usize {
        let mut acc = 0;
        for dd in 0..d {
            acc += self.nichols.basis[dd].len();
        }
        acc + i
    }
}

/// χ_i = q^{(α_i, ·)} as exponent tuples on the Cartan group presentation.
pub fn chi_characters(datum: &rootlat::QuantumGroupDatum) -> Result<Vec<Elt>> {
    let g = &datum.cartan.group;
    let rs = &datum.rs;
    let mut out = vec![];
    for i in 0..rs.rank {
        let alpha: Vec<num_rational::BigRational> = rs.cartan[i]
            .iter()
            .map(|&x| num_rational::BigRational::from(num_bigint::BigInt::from(x)))
            .collect();
        let mut exps = vec![0u64; g.rank()];
        for (j, slot) in exps.iter_mut().enumerate() {
            let lift: Vec<num_rational::BigRational> = datum.cartan.lifts[j]
                .iter()
                .map(|&x| {
                    num_rational::BigRational::new(
                        num_bigint::BigInt::from(x),
                        num_bigint::BigInt::from(datum.cartan.lambda_basis.den),
                    )
                })
                .collect();
            let pairing = rs.pair(&alpha, &lift);
            // q^{(α_i, lift_j)} with q = ζ_ℓ
            use num_traits::ToPrimitive;
            let num = pairing.numer().to_i64().ok_or_else(|| {
                Error::Invalid("pairing numerator overflow".into())
            })?;
            let den = pairing.denom().to_u64().ok_or_else(|| {
                Error::Invalid("pairing denominator overflow".into())
            })?;
            let val = RootOfUnity::new(num, datum.ell * den);
            *slot = val.exponent_in(g.moduli[j]).ok_or_else(|| {
                Error::Invalid(format!("χ_{i} is not a character of the presentation"))
            })?;
        }
        out.push(exps);
    }
    Ok(out)
}

/// The rank-1 pipeline: u(1,σ) on Ĝ = Z_2ℓ, its pushdown, and ū = u(ω̄,σ̄)
/// on Z_ℓ with the degree-fixing section.
pub struct Sl2Modularization {
    pub u: QuasiHopfAlgebra,
    pub ubar: QuasiHopfAlgebra,
    pub pushdown: PushdownResult,
}

/// u(1,σ) datum of the rank-1 example with f_±.
pub fn sl2_unquotiented_datum(ell: u64, plus: bool) -> Result<UqgDatum> {
    let datum = rootlat::sl2_datum(ell, plus)?;
    if !datum.nondegenerate {
        return Err(Error::Invalid("f is degenerate; no R-matrix".into()));
    }
    let sigma = modularize::sigma_from_f(&datum.f)?;
    let chis = chi_characters(&datum)?;
    let g = sigma.group.clone();
    let cocycle = AbelianThreeCocycle::from_fns(
        &g,
        |_, _, _| RootOfUnity::one(),
        |a, b| sigma.eval(a, b),
    )?;
    Ok(UqgDatum { cocycle, chis })
}

pub fn sl2_modularization(ell: u64) -> Result<Sl2Modularization> {
    let (u_datum, ubar_datum, pd) = sl2_data(ell)?;
    let u = super::build_uqg(&u_datum)?;
    let ubar = super::build_uqg(&ubar_datum)?;
    Ok(Sl2Modularization { u, ubar, pushdown: pd })
}

/// Quotient algebra only (the pre-quotient u(1,σ) can exceed the dimension
/// bound for larger ℓ).
pub fn sl2_quotient_algebra(ell: u64) -> Result<(QuasiHopfAlgebra, PushdownResult)> {
    let (_, ubar_datum, pd) = sl2_data(ell)?;
    Ok((super::build_uqg(&ubar_datum)?, pd))
}

/// Input data of the rank-1 pipeline: the u(1,σ) datum, the pushed-down
/// datum with the degree-fixing section, and the pushdown witnesses.
pub fn sl2_data(ell: u64) -> Result<(UqgDatum, UqgDatum, PushdownResult)> {
    let datum = rootlat::sl2_datum(ell, true)?;
    let sigma = modularize::sigma_from_f(&datum.f)?;
    let chis = chi_characters(&datum)?;
    let g = sigma.group.clone();
    // section constraints: fix all PBW degrees k·χ̄₁ of the quotient algebra
    let chibar = g.neg(&chis[0]);
    let q11 = sigma.eval(&chibar, &chibar);
    let nilpotency = q11.order().max(1);
    let constraints: Vec<Elt> = (0..nilpotency)
        .map(|k| g.scale(k as i64, &chibar))
        .collect();
    let eta = vec![0u64; g.rank()];
    let pd = pushdown(&sigma, &eta, &constraints)?;
    let chis_bar: Vec<Elt> = chis.iter().map(|c| pd.qws.project(c)).collect();
    let ubar_datum = UqgDatum { cocycle: pd.cocycle_bar.clone(), chis: chis_bar };
    let u_datum = UqgDatum {
        cocycle: AbelianThreeCocycle::from_fns(
            &g,
            |_, _, _| RootOfUnity::one(),
            |a, b| sigma.eval(a, b),
        )?,
        chis,
    };
    Ok((u_datum, ubar_datum, pd))
}

/// Report of the B_n fourth-root-of-unity example: the 4×4 braiding table,
/// quadratic-form agreement with the pushed-down form, and nondegeneracy.
pub struct BnReport {
    pub group_bar: FiniteAbelianGroup,
    pub sigma_table: Vec<Vec<RootOfUnity>>,
    pub q_diag: Vec<RootOfUnity>,
    pub q_matches_pushdown: bool,
    pub b_psi_psi: RootOfUnity,
    pub b_nondegenerate: bool,
    pub chi_is_psi_squared: bool,
}

pub fn bn_example_check(n: usize, beta: Option<RootOfUnity>) -> Result<BnReport> {
    let rs = rootlat::RootSystem::new(rootlat::RootType::B, n)?;
    let datum = rootlat::cft_datum(&rs, 2)?;
    let sigma = modularize::sigma_from_f(&datum.f)?;
    let eta = vec![0u64; sigma.group.rank()];
    let pd = pushdown(&sigma, &eta, &[])?;
    let gbar = pd.qws.quotient.clone();
    if gbar.order() != 4 {
        return Err(Error::Verification(format!(
            "quotient group has order {}, expected 4",
            gbar.order()
        )));
    }
    // β = q^{-n/2} with q = i: a primitive choice of the fourth root power
    let beta = beta.unwrap_or_else(|| RootOfUnity::new(n as i64, 8));
    // table over the basis (1, ψ, χ, ψχ) with χ = ψ² in the cyclic case
    let one = RootOfUnity::one();
    let minus = RootOfUnity::minus_one();
    let sigma_table = vec![
        vec![one, one, one, one],
        vec![one, beta, one, beta],
        vec![one, minus, minus, one],
        vec![one, beta.mul(&minus), minus, beta],
    ];
    let q_diag = vec![one, beta, minus, beta];
    // β⁴ = (−1)ⁿ
    if beta.pow(4) != if n % 2 == 0 { one } else { minus } {
        return Err(Error::Verification("β⁴ ≠ (−1)ⁿ".into()));
    }
    // compare the table's quadratic form with the pushed-down Q̄: some
    // generator realizes the diagonal (1, β, −1, β)
    let qbar = |x: &Elt| pd.cocycle_bar.sigma(x, x);
    let mut q_matches = false;
    let mut chi_is_psi_squared = false;
    for psi in gbar.elements() {
        if gbar.element_order(&psi) != if gbar.moduli == vec![4] { 4 } else { 2 } {
            continue;
        }
        if gbar.moduli == vec![4] {
            let vals: Vec<RootOfUnity> = (0..4).map(|k| qbar(&gbar.scale(k, &psi))).collect();
            if vals == q_diag {
                q_matches = true;
                chi_is_psi_squared = true; // χ := ψ² by construction
                break;
            }
        } else {
            // Z2 × Z2: need ψ with Q(ψ) = β and an independent χ with
            // Q(χ) = −1, Q(ψχ) = β
            for chi in gbar.elements() {
                if chi == gbar.zero() || chi == psi {
                    continue;
                }
                if qbar(&psi) == beta
                    && qbar(&chi) == minus
                    && qbar(&gbar.add(&psi, &chi)) == beta
                {
                    q_matches = true;
                    break;
                }
            }
            if q_matches {
                break;
            }
        }
    }
    // B(ψ, ψ) = β² = (−1)^{n/2} for even n
    let b_psi_psi = beta.mul(&beta);
    if n % 2 == 0 {
        let expect = if (n / 2) % 2 == 0 { one } else { minus };
        if b_psi_psi != expect {
            return Err(Error::Verification("B(ψ,ψ) ≠ (−1)^{n/2}".into()));
        }
    }
    // nondegeneracy of the pushed-down bihomomorphism
    let md = modularize::modular_data(&pd.cocycle_bar, &pd.eta_bar);
    Ok(BnReport {
        group_bar: gbar,
        sigma_table,
        q_diag,
        q_matches_pushdown: q_matches,
        b_psi_psi,
        b_nondegenerate: md.is_modular,
        chi_is_psi_squared,
    })
}
