//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Every equality is exact; there are no tolerances anywhere.
//!
//! Two checks assert statements that the toolkit's exact arithmetic refutes
//! (see the repository notes): the f₋/even-ℓ modularizability cells of the
//! decision table and the Θ² = 1 identity. They are kept as stated and fail
//! honestly; the companion tests carry the attainable content.

use quasimod_core::abgroup::FiniteAbelianGroup;
use quasimod_core::cyclo::{CycloNum, RootOfUnity};
use quasimod_core::modularize::{self, is_modularizable, modular_data, pushdown, sigma_from_f};
use quasimod_core::nichols::{
    adjoint_order, all_reduced_words, matsumoto_apply, nilpotency_order,
    permutations_with_reduced_words, woronowicz_dim, BraidedVS,
};
use quasimod_core::qform::{
    apply_coboundary, check_abelian_cocycle, cocycle_from_qform, cohomologous, qform_of_cocycle,
    AbelianThreeCocycle, QuadraticForm, TwoCochain,
};
use quasimod_core::quasiqg::{
    self, build_inclusion_m, build_uqg, drinfeld_element, factorizable, r_matrix, sl2_data,
    sl2_modularization, sl2_quotient_algebra, theta_closed_form, verify_quasihopf, UqgDatum,
};
use quasimod_core::rootlat;

fn all_groups_up_to(max_order: u64) -> Vec<FiniteAbelianGroup> {
    // abelian groups of order ≤ max as multisets of cyclic factors ≥ 2
    fn factorizations(n: u64, min: u64) -> Vec<Vec<u64>> {
        let mut out = vec![];
        if n == 1 {
            out.push(vec![]);
            return out;
        }
        for d in min..=n {
            if n % d == 0 {
                for mut rest in factorizations(n / d, d) {
                    rest.insert(0, d);
                    out.push(rest);
                }
            }
        }
        out
    }
    let mut groups = vec![FiniteAbelianGroup::trivial()];
    for n in 2..=max_order {
        for f in factorizations(n, 2) {
            groups.push(FiniteAbelianGroup::new(f));
        }
    }
    // deduplicate isomorphic presentations via invariant factors is not
    // needed: distinct multisets of cyclic orders can present isomorphic
    // groups only when gcd-conditions merge them, and sweeping each
    // presentation only repeats work
    groups
}

fn paper_omega_bar(ell: u64) -> AbelianThreeCocycle {
    let g = FiniteAbelianGroup::cyclic(ell);
    AbelianThreeCocycle::from_fns(
        &g,
        |a, b, c| {
            let carry = if b[0] + c[0] >= ell { 1i64 } else { 0 };
            RootOfUnity::new(a[0] as i64 * carry * ell as i64, 2 * ell)
        },
        |a, b| RootOfUnity::new((a[0] * b[0]) as i64, 2 * ell),
    )
    .unwrap()
}

#[test]
fn criterion_1_sl2_decision_table_attainable() {
    // f₊ nondegenerate for every ℓ, modularizable iff ℓ even;
    // f₋ nondegenerate iff ℓ even; η = ±1 both admitted when modularizable.
    for ell in [3u64, 4, 5, 6] {
        let plus = rootlat::sl2_datum(ell, true).unwrap();
        assert!(plus.nondegenerate, "f+ degenerate at ℓ={ell}");
        let sigma = sigma_from_f(&plus.f).unwrap();
        let g = sigma.group.clone();
        for eta_sign in [0u64, 1] {
            // η = ±1-valued characters: trivial and the order-2 one
            let eta = if eta_sign == 0 { g.zero() } else { vec![g.moduli[0] / 2] };
            let (ok, _) = is_modularizable(&sigma, &eta);
            assert_eq!(ok, ell % 2 == 0, "f+ modularizability at ℓ={ell}, η № {eta_sign}");
        }
        let minus = rootlat::sl2_datum(ell, false).unwrap();
        assert_eq!(minus.nondegenerate, ell % 2 == 0, "f- nondegeneracy at ℓ={ell}");
    }
    println!("criterion 1 (attainable cells): PASS");
}

#[test]
fn criterion_1_sl2_decision_table_f_minus_cells() {
    // Stated expectation: modularizable iff ℓ even and f = f₊, i.e. the
    // nondegenerate f₋ at even ℓ must NOT be modularizable. The exact
    // computation gives Q₋(τ) = (−1)^{ℓ²}e^{πiℓ} = +1 for even ℓ, so the
    // assertion below fails; see the decisions ledger.
    let mut diverging = vec![];
    for ell in [4u64, 6] {
        let minus = rootlat::sl2_datum(ell, false).unwrap();
        assert!(minus.nondegenerate);
        let sigma = sigma_from_f(&minus.f).unwrap();
        let eta = vec![0u64; sigma.group.rank()];
        let (ok, _) = is_modularizable(&sigma, &eta);
        if ok {
            diverging.push(ell);
        }
    }
    if diverging.is_empty() {
        println!("criterion 1 (f- cells): PASS");
    } else {
        println!(
            "criterion 1 (f- cells): FAIL — f- at ℓ ∈ {diverging:?} is modularizable by the \
             radical criterion (Q(τ) = +1 exactly), contradicting the stated table"
        );
    }
    assert!(diverging.is_empty(), "stated f-/even cells diverge at ℓ ∈ {diverging:?}");
}

#[test]
fn criterion_2_cocycle_validity_sweep() {
    let mut forms_checked = 0usize;
    for g in all_groups_up_to(16) {
        for q in QuadraticForm::enumerate(&g) {
            let c = cocycle_from_qform(&q);
            assert!(check_abelian_cocycle(&c), "invalid cocycle from {q:?}");
            let q2 = qform_of_cocycle(&c).unwrap();
            for x in g.elements() {
                assert_eq!(q.eval(&x), q2.eval(&x), "roundtrip failed on {:?} at {x:?}", g.moduli);
            }
            forms_checked += 1;
        }
    }
    println!("criterion 2: PASS ({forms_checked} quadratic forms over all groups of order ≤ 16)");
}

#[test]
fn criterion_3_pushdown_identities() {
    // 𝔰𝔩₂ at ℓ ∈ {4, 6} and B₂ at ℓ = 4: π*(ω̄,σ̄) = d_abκ·(1,σ), dω̄ = 1,
    // both hexagons, σ|_T = η_T/η_Tᵀ — all verified pointwise inside
    // pushdown(), which errors on any failure.
    for ell in [4u64, 6] {
        let datum = rootlat::sl2_datum(ell, true).unwrap();
        let sigma = sigma_from_f(&datum.f).unwrap();
        let eta = vec![0u64; sigma.group.rank()];
        let pd = pushdown(&sigma, &eta, &[]).unwrap();
        assert!(check_abelian_cocycle(&pd.cocycle_bar));
        assert_eq!(pd.qws.quotient.order(), ell);
    }
    let b2 = rootlat::RootSystem::new(rootlat::RootType::B, 2).unwrap();
    let datum = rootlat::quantum_group_datum(&b2, 4, &rootlat::weight_lattice(&b2), None).unwrap();
    let sigma = sigma_from_f(&datum.f).unwrap();
    let eta = vec![0u64; sigma.group.rank()];
    let pd = pushdown(&sigma, &eta, &[]).unwrap();
    assert!(check_abelian_cocycle(&pd.cocycle_bar));
    assert_eq!(pd.qws.quotient.order(), 4);
    println!("criterion 3: PASS (pushdown identities pointwise for sl2 ℓ=4,6 and B2 ℓ=4)");
}

#[test]
fn criterion_4_paper_omega_bar_reproduction() {
    for ell in [4u64, 6] {
        // the pushed-down class equals the explicit ω̄-class: equality of
        // associated quadratic forms Q̄([χ]^i) = q^{i²/2}
        let datum = rootlat::sl2_datum(ell, true).unwrap();
        let sigma = sigma_from_f(&datum.f).unwrap();
        let eta = vec![0u64; sigma.group.rank()];
        let pd = pushdown(&sigma, &eta, &[]).unwrap();
        let paper = paper_omega_bar(ell);
        assert_eq!(pd.qws.quotient.moduli, vec![ell]);
        assert!(cohomologous(&pd.cocycle_bar, &paper).unwrap(), "class mismatch at ℓ={ell}");
        for i in 0..ell {
            assert_eq!(
                pd.cocycle_bar.sigma(&[i].to_vec(), &[i].to_vec()),
                RootOfUnity::new((i * i) as i64, 2 * ell),
                "Q̄ value at i={i}, ℓ={ell}"
            );
        }
        // ζ_t-twisting the explicit tables reproduces the closed forms
        for t in [1i64, 3] {
            let g = paper.group.clone();
            let zeta_t = TwoCochain::from_fn(&g, |i, j| {
                if i[0] % 2 == 1 {
                    RootOfUnity::new(-t * j[0] as i64, 2 * ell)
                } else {
                    RootOfUnity::one()
                }
            });
            let twisted = apply_coboundary(&paper, &zeta_t);
            for i in 0..ell {
                for j in 0..ell {
                    // σ̄_t(i,j) = q^{-t(jδ_{2∤i} - iδ_{2∤j})/2} q^{ij/2}
                    let di = (i % 2 == 1) as i64;
                    let dj = (j % 2 == 1) as i64;
                    let expect = RootOfUnity::new(
                        -t * (j as i64 * di - i as i64 * dj) + (i * j) as i64,
                        2 * ell,
                    );
                    assert_eq!(
                        twisted.sigma(&[i].to_vec(), &[j].to_vec()),
                        expect,
                        "σ̄_t at ({i},{j}), t={t}, ℓ={ell}"
                    );
                    for k in 0..ell {
                        // ω̄_t(i,j,k) = q^{tk} when i,j odd, else 1
                        let expect = if i % 2 == 1 && j % 2 == 1 {
                            RootOfUnity::new(2 * t * k as i64, 2 * ell)
                        } else {
                            RootOfUnity::one()
                        };
                        assert_eq!(
                            twisted.omega(&[i].to_vec(), &[j].to_vec(), &[k].to_vec()),
                            expect,
                            "ω̄_t at ({i},{j},{k}), t={t}, ℓ={ell}"
                        );
                    }
                }
            }
        }
    }
    println!("criterion 4: PASS (Q̄-class equality and ζ_t-twist closed forms pointwise)");
}

#[test]
fn criterion_5_nichols_oracle_agreement() {
    // rank 1: total dim = ord(q) for orders ≤ 8
    for m in 2..=8u64 {
        let v = BraidedVS::diagonal(&[vec![RootOfUnity::primitive(m)]]).unwrap();
        let mut total = 0;
        let mut n = 0;
        loop {
            let d = woronowicz_dim(&v, n).unwrap();
            if d == 0 {
                break;
            }
            total += d;
            n += 1;
        }
        assert_eq!(total as u64, m, "rank-1 total at order {m}");
        assert_eq!(nilpotency_order(&v, 0), Some(m));
    }
    // A₂ at ζ₃: total dim 27
    let z3 = RootOfUnity::primitive(3);
    let a2 = BraidedVS::diagonal(&[vec![z3, z3.inv()], vec![RootOfUnity::one(), z3]]).unwrap();
    let alg = quasimod_core::nichols::NicholsAlgebra::build(&a2).unwrap();
    assert_eq!(alg.dim(), 27, "A2 at ζ3");
    // relation orders are ω-independent at fixed σ: compare the trivial-ω
    // cocycle against κ-twists with symmetric κ (which fix σ)
    let g = FiniteAbelianGroup::new(vec![4, 4]);
    let q = QuadraticForm::new(
        g.clone(),
        vec![RootOfUnity::new(1, 8), RootOfUnity::new(3, 8)],
        [((0, 1), RootOfUnity::minus_one())].into(),
    )
    .unwrap();
    let c1 = cocycle_from_qform(&q);
    for seed in 1u64..=3 {
        let kappa = TwoCochain::from_fn(&g, |a, b| {
            let mix = (a[0] * b[0] * seed + a[1] * b[1] + a[0] * b[1] + a[1] * b[0]) % 8;
            RootOfUnity::new(mix as i64, 8)
        });
        let c2 = apply_coboundary(&c1, &kappa);
        let sigma_fixed = g
            .elements()
            .all(|a| g.elements().all(|b| c1.sigma(&a, &b) == c2.sigma(&a, &b)));
        if !sigma_fixed {
            continue; // only symmetric κ keep σ; skip twists that move it
        }
        for degrees in [vec![vec![1, 0], vec![0, 1]], vec![vec![1, 2], vec![2, 1]]] {
            let v1 = BraidedVS::new(c1.clone(), degrees.clone());
            let v2 = BraidedVS::new(c2.clone(), degrees);
            assert_eq!(nilpotency_order(&v1, 0), nilpotency_order(&v2, 0));
            assert_eq!(nilpotency_order(&v1, 1), nilpotency_order(&v2, 1));
            assert_eq!(adjoint_order(&v1, 0, 1), adjoint_order(&v2, 0, 1));
        }
    }
    println!("criterion 5: PASS (symmetrizer ranks, A2 dim 27, ω-independence of orders)");
}

#[test]
fn criterion_6_quasihopf_axiom_suite_ell4() {
    let (alg, _) = sl2_quotient_algebra(4).unwrap();
    assert_eq!(alg.dim, 16);
    let r = r_matrix(&alg).unwrap();
    let report = verify_quasihopf(&alg, Some(&r));
    for (name, ok, wit) in &report.checks {
        if name != "Θ² = 1" {
            assert!(*ok, "{name} failed: {wit:?}");
        }
    }
    relations_hold(&alg, 4);
    let de = drinfeld_element(&alg, &r).unwrap();
    assert!(de.closed_form_matches, "λ_b closed form at ℓ=4");
    println!("criterion 6 (ℓ=4): PASS (dim 16; all axioms except the separately-reported Θ²; relations verbatim)");
}

#[test]
fn criterion_6_quasihopf_axiom_suite_ell6() {
    let (alg, _) = sl2_quotient_algebra(6).unwrap();
    assert_eq!(alg.dim, 54);
    let r = r_matrix(&alg).unwrap();
    let report = verify_quasihopf(&alg, Some(&r));
    for (name, ok, wit) in &report.checks {
        if name != "Θ² = 1" {
            assert!(*ok, "{name} failed: {wit:?}");
        }
    }
    relations_hold(&alg, 6);
    drinfeld_element(&alg, &r).unwrap();
    println!("criterion 6 (ℓ=6): PASS (dim 54; all axioms except the separately-reported Θ²; relations verbatim)");
}

#[test]
fn criterion_6_theta_squared() {
    // Θ² = 1 as stated. Θ = 1⊗1 + X with X nilpotent of positive degree,
    // so Θ² = 1 + 2X ≠ 1 whenever B(V) is nontrivial; fails honestly.
    let (alg, _) = sl2_quotient_algebra(4).unwrap();
    let theta = theta_closed_form(&alg);
    let sq = alg.t2_mul(&theta, &theta);
    let mut unit2 = std::collections::BTreeMap::new();
    for (&i, ci) in &alg.unit {
        for (&j, cj) in &alg.unit {
            unit2.insert((i, j), ci.mul(cj));
        }
    }
    let holds = sq == unit2;
    if holds {
        println!("criterion 6 (Θ² = 1): PASS");
    } else {
        println!(
            "criterion 6 (Θ² = 1): FAIL — Θ = 1 + X with X² = 0 forces Θ² = 1 + 2X ≠ 1; \
             the solved R satisfies every other quasitriangular identity (see ledger)"
        );
    }
    assert!(holds, "Θ² = 1 is structurally unattainable for nontrivial B(V)");
}

fn relations_hold(alg: &quasiqg::QuasiHopfAlgebra, ell: u64) {
    // K := K̄_{χ̄₁}⁻¹; then K^ℓ = 1, KE = q²EK, KF = q⁻²FK,
    // EF − FE = K⁻¹ − K, E^{ℓ/2} = F^{ℓ/2} = 0
    let g = alg.group().clone();
    let om = alg.cocycle().clone();
    let chibar = g.neg(&alg.datum.chis[0]);
    let k = alg.diag_elt(&|psi: &Vec<u64>| om.sigma(psi, &chibar).inv());
    let kinv = alg.invert(&k).unwrap();
    let mut kp = alg.unit.clone();
    for _ in 0..ell {
        kp = alg.mul(&kp, &k);
    }
    assert_eq!(kp, alg.unit, "K^ℓ = 1");
    let e = alg.e_gen(0);
    let f = alg.f_gen(0);
    let q2 = RootOfUnity::new(2, ell);
    let ke = alg.mul(&k, &e);
    let mut ek = alg.mul(&e, &k);
    for v in ek.values_mut() {
        *v = v.mul(&q2.to_cyclo());
    }
    assert_eq!(ke, ek, "KE = q²EK");
    let kf = alg.mul(&k, &f);
    let mut fk = alg.mul(&f, &k);
    for v in fk.values_mut() {
        *v = v.mul(&q2.inv().to_cyclo());
    }
    assert_eq!(kf, fk, "KF = q⁻²FK");
    let ef = alg.mul(&e, &f);
    let fe = alg.mul(&f, &e);
    let mut comm = ef;
    for (kk, v) in fe {
        quasiqg::add_into_pub(&mut comm, kk, v.neg());
    }
    let mut expect = kinv.clone();
    for (kk, v) in k.clone() {
        quasiqg::add_into_pub(&mut expect, kk, v.neg());
    }
    assert_eq!(comm, expect, "EF − FE = K⁻¹ − K");
    let nil = (ell / 2) as usize;
    let mut ep = e.clone();
    let mut fp = f.clone();
    for _ in 1..nil {
        ep = alg.mul(&ep, &e);
        fp = alg.mul(&fp, &f);
    }
    assert!(!ep.is_empty() && !fp.is_empty(), "E^{{ℓ/2−1}}, F^{{ℓ/2−1}} ≠ 0");
    assert!(alg.mul(&ep, &e).is_empty(), "E^{{ℓ/2}} = 0");
    assert!(alg.mul(&fp, &f).is_empty(), "F^{{ℓ/2}} = 0");
}

#[test]
fn criterion_7_omega_trivial_degeneration() {
    // ω ≡ 1 on the sl2 datum: φ = 1⊗1⊗1 and the ordinary extended small
    // quantum group relations
    let datum = quasiqg::sl2_unquotiented_datum(4, true).unwrap();
    let alg = build_uqg(&datum).unwrap();
    assert_eq!(alg.dim, 32);
    // φ is the unit of H³
    let mut unit3 = std::collections::BTreeMap::new();
    for (&i, ci) in &alg.unit {
        for (&j, cj) in &alg.unit {
            for (&k, ck) in &alg.unit {
                unit3.insert((i, j, k), ci.mul(cj).mul(ck));
            }
        }
    }
    assert_eq!(alg.phi, unit3, "φ = 1⊗1⊗1");
    let r = r_matrix(&alg).unwrap();
    let report = verify_quasihopf(&alg, Some(&r));
    for (name, ok, wit) in &report.checks {
        if name != "Θ² = 1" {
            assert!(*ok, "{name} failed: {wit:?}");
        }
    }
    // ordinary relations with K := K̄_{χ̄₁}⁻¹ on Ĝ = Z₈: K⁸ = 1, E² = F² = 0,
    // KE = q²EK with q² = σ(χ̄,χ̄)-type value of order 4
    let g = alg.group().clone();
    let om = alg.cocycle().clone();
    let chibar = g.neg(&alg.datum.chis[0]);
    let k = alg.diag_elt(&|psi: &Vec<u64>| om.sigma(psi, &chibar).inv());
    let mut kp = alg.unit.clone();
    let mut ord = 0;
    for i in 1..=16 {
        kp = alg.mul(&kp, &k);
        if kp == alg.unit {
            ord = i;
            break;
        }
    }
    assert_eq!(ord, 8, "ord K = |Ĝ| for the unquotiented algebra");
    let e = alg.e_gen(0);
    let f = alg.f_gen(0);
    assert!(alg.mul(&e, &e).is_empty() && alg.mul(&f, &f).is_empty());
    // F is skew-primitive: Δ(F) = K_{χ̄}⊗F + F⊗1
    let mut expect = std::collections::BTreeMap::new();
    let kk = alg.k_elt(&chibar);
    for (&i, ci) in &kk {
        for (&j, cj) in &f {
            quasiqg::add_into_pub2(&mut expect, (i, j), ci.mul(cj));
        }
    }
    for (&i, ci) in &f {
        for (&j, cj) in &alg.unit {
            quasiqg::add_into_pub2(&mut expect, (i, j), ci.mul(cj));
        }
    }
    let mut got = std::collections::BTreeMap::new();
    for (&i, c) in &f {
        for (&k2, v) in &alg.delta[i] {
            quasiqg::add_into_pub2(&mut got, k2, v.mul(c));
        }
    }
    assert_eq!(got, expect, "Δ(F) ordinary skew-primitive form");
    println!("criterion 7: PASS (ω ≡ 1 degenerates to the ordinary extended small quantum group)");
}

#[test]
fn criterion_8_factorizability_tracks_muger_center() {
    // u(1,σ) for sl2 ℓ=4 is NOT factorizable (T ≅ Z₂); ū is factorizable
    let m = sl2_modularization(4).unwrap();
    let r_u = r_matrix(&m.u).unwrap();
    assert!(!factorizable(&m.u, &r_u), "u(1,σ) must not be factorizable");
    let r_ubar = r_matrix(&m.ubar).unwrap();
    assert!(factorizable(&m.ubar, &r_ubar), "ū must be factorizable");
    // group-only case tracks nondegeneracy of σσᵀ on all groups ≤ 8
    let mut cases = 0usize;
    for g in all_groups_up_to(8) {
        if g.order() == 0 {
            continue;
        }
        for q in QuadraticForm::enumerate(&g) {
            let c = cocycle_from_qform(&q);
            let datum = UqgDatum { cocycle: c.clone(), chis: vec![] };
            let alg = build_uqg(&datum).unwrap();
            let r = r_matrix(&alg).unwrap();
            let fact = factorizable(&alg, &r);
            let nondeg = modularize::muger_center(&c).order() == 1;
            assert_eq!(fact, nondeg, "group case {:?}, form {q:?}", g.moduli);
            cases += 1;
        }
    }
    println!("criterion 8: PASS (u not factorizable, ū factorizable; {cases} group cases track σσᵀ)");
}

#[test]
fn criterion_9_inclusion_m() {
    let m = sl2_modularization(4).unwrap();
    assert_eq!(m.ubar.dim, 16);
    assert_eq!(m.u.dim, 32);
    build_inclusion_m(&m.ubar, &m.u, &m.pushdown).unwrap();
    println!("criterion 9: PASS (M injective and multiplicative on all 16×16 basis pairs)");
}

#[test]
fn criterion_10_cft_datum() {
    for (rtype, rank, p) in [
        (rootlat::RootType::A, 1usize, 2u64),
        (rootlat::RootType::A, 1, 3),
        (rootlat::RootType::A, 2, 3),
        (rootlat::RootType::B, 2, 2),
    ] {
        let rs = rootlat::RootSystem::new(rtype, rank).unwrap();
        let datum = rootlat::cft_datum(&rs, p).unwrap();
        // Λ′ = 2pΛ_R^∨ equals the centralizer; |T| = 2^rank — both checked
        // inside cft_datum, which errors otherwise
        let _ = datum;
    }
    // B_n, p = 2: Ḡ ≅ Z₄ (n odd) / Z₂×Z₂ (n even), σ-table diag (1,β,−1,β)
    for n in [1usize, 2, 3] {
        let report = quasiqg::bn_example_check(n, None).unwrap();
        if n % 2 == 1 {
            assert_eq!(report.group_bar.moduli, vec![4], "Ḡ at n={n}");
            assert!(report.chi_is_psi_squared);
        } else {
            assert_eq!(report.group_bar.moduli, vec![2, 2], "Ḡ at n={n}");
        }
        let beta = report.q_diag[1];
        assert_eq!(
            beta.pow(4),
            if n % 2 == 0 { RootOfUnity::one() } else { RootOfUnity::minus_one() },
            "β⁴ = (−1)ⁿ at n={n}"
        );
        assert!(report.q_matches_pushdown, "table vs pushed-down Q̄ at n={n}");
        assert!(report.b_nondegenerate, "B̄ nondegenerate at n={n}");
        if n % 2 == 0 {
            let expect = if (n / 2) % 2 == 0 { RootOfUnity::one() } else { RootOfUnity::minus_one() };
            assert_eq!(report.b_psi_psi, expect, "B(ψ,ψ) = (−1)^{{n/2}} at n={n}");
        }
    }
    println!("criterion 10: PASS (Λ′ = 2pΛ_R^∨, |T| = 2^rank, B_n tables at the fourth root)");
}

#[test]
fn criterion_11_property_suites() {
    // mutation: a corrupted structure constant is caught
    let (_, datum, _) = sl2_data(4).unwrap();
    let mut alg = build_uqg(&datum).unwrap();
    let key = *alg.phi.keys().nth(5).unwrap();
    let old = alg.phi.get(&key).unwrap().clone();
    alg.phi.insert(key, old.neg());
    assert!(!verify_quasihopf(&alg, None).all_pass(), "corrupted φ must be caught");
    let mut alg2 = build_uqg(&datum).unwrap();
    let k2 = {
        let some = alg2.mult.iter().position(|m| !m.is_empty()).unwrap();
        let key = *alg2.mult[some].keys().next().unwrap();
        (some, key)
    };
    let old = alg2.mult[k2.0].get(&k2.1).unwrap().clone();
    alg2.mult[k2.0].insert(k2.1, old.mul(&CycloNum::from_int(-1)));
    assert!(!verify_quasihopf(&alg2, None).all_pass(), "corrupted mult must be caught");

    // coboundary application never changes the quadratic form: 1000 samples
    let mut samples = 0usize;
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    'outer: for g in [
        FiniteAbelianGroup::cyclic(4),
        FiniteAbelianGroup::cyclic(6),
        FiniteAbelianGroup::new(vec![2, 4]),
        FiniteAbelianGroup::new(vec![12]),
        FiniteAbelianGroup::new(vec![3, 3]),
    ] {
        let forms = QuadraticForm::enumerate(&g);
        let m = 2 * g.exponent();
        loop {
            let q = &forms[(next() as usize) % forms.len()];
            let c = cocycle_from_qform(q);
            let vals: Vec<u64> = (0..g.order() * g.order()).map(|_| next() % m).collect();
            let kappa = TwoCochain::from_fn(&g, |a, b| {
                if a.iter().all(|&x| x == 0) || b.iter().all(|&x| x == 0) {
                    RootOfUnity::one()
                } else {
                    let idx =
                        (g.index_of(a) * g.order() as usize + g.index_of(b)) % vals.len();
                    RootOfUnity::new(vals[idx] as i64, m)
                }
            });
            let c2 = apply_coboundary(&c, &kappa);
            assert!(check_abelian_cocycle(&c2), "coboundary broke validity");
            let q2 = qform_of_cocycle(&c2).unwrap();
            for x in g.elements() {
                assert_eq!(q.eval(&x), q2.eval(&x), "coboundary changed Q");
            }
            samples += 1;
            if samples % 200 == 0 {
                break;
            }
            if samples >= 1000 {
                break 'outer;
            }
        }
    }
    assert!(samples >= 1000);

    // Matsumoto lift is reduced-word independent for n ≤ 4
    let g = FiniteAbelianGroup::new(vec![8]);
    let q = QuadraticForm::new(g.clone(), vec![RootOfUnity::new(1, 16)], Default::default()).unwrap();
    let v = BraidedVS::new(cocycle_from_qform(&q), vec![vec![1], vec![3], vec![5], vec![7]]);
    for n in 2..=4usize {
        for (perm, _) in permutations_with_reduced_words(n) {
            let w: Vec<u8> = (0..n as u8).collect();
            let results: std::collections::BTreeSet<_> = all_reduced_words(&perm)
                .iter()
                .map(|red| matsumoto_apply(&v, red, &w))
                .collect();
            assert_eq!(results.len(), 1, "lift of {perm:?} depends on the reduced word");
        }
    }
    println!("criterion 11: PASS (mutations caught; 1000 coboundary samples fix Q; Matsumoto lift well-defined)");
}

#[test]
fn cli_roundtrip_is_bit_identical() {
    // build → dump → load → dump: identical bytes
    let (_, datum, _) = sl2_data(4).unwrap();
    let alg = build_uqg(&datum).unwrap();
    let r = r_matrix(&alg).unwrap();
    let raw = quasiqg::RawQuasiHopf::from_algebra(&alg, Some(&r));
    let first = serde_json::to_string(&quasiqg::raw_to_json(&raw)).unwrap();
    let loaded = quasiqg::raw_from_json(&serde_json::from_str(&first).unwrap()).unwrap();
    let second = serde_json::to_string(&quasiqg::raw_to_json(&loaded)).unwrap();
    assert_eq!(first, second);
    // and the reloaded tensors verify identically to the in-memory algebra
    let rep_mem = verify_quasihopf(&alg, Some(&r));
    let rep_file = quasiqg::verify_raw(&loaded);
    let lines_mem: Vec<String> = rep_mem.lines();
    let lines_file: Vec<String> = rep_file.lines();
    assert_eq!(lines_mem, lines_file);
    println!("roundtrip: PASS");
}
