//! Property tests for the arithmetic substrate and the cocycle layer.

use proptest::prelude::*;
use quasimod_core::abgroup::FiniteAbelianGroup;
use quasimod_core::cyclo::{CycloNum, RootOfUnity};
use quasimod_core::modularize::{pushdown, sigma_from_f};
use quasimod_core::qform::{cohomologous, qform_of_cocycle};
use quasimod_core::rootlat;

fn arb_root() -> impl Strategy<Value = RootOfUnity> {
    (1u64..=24, 0i64..48).prop_map(|(n, k)| RootOfUnity::new(k, n))
}

fn arb_cyclo() -> impl Strategy<Value = CycloNum> {
    proptest::collection::vec((arb_root(), -4i64..=4), 1..4).prop_map(|terms| {
        let mut s = CycloNum::zero();
        for (r, c) in terms {
            s = s.add(&r.to_cyclo().scale(&num_rational::BigRational::from_integer(c.into())));
        }
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn root_mul_assoc_comm(a in arb_root(), b in arb_root(), c in arb_root()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&a.inv()).is_one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cyclo_mul_assoc_comm(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
        prop_assert!(a.mul(&b).eq(&b.mul(&a)));
        prop_assert!(a.mul(&b).mul(&c).eq(&a.mul(&b.mul(&c))));
        prop_assert!(a.add(&b).eq(&b.add(&a)));
    }
}

#[test]
fn pushdown_class_is_section_independent() {
    // two different sections yield cohomologous (ω̄, σ̄): equality of the
    // associated quadratic forms
    let datum = rootlat::sl2_datum(4, true).unwrap();
    let sigma = sigma_from_f(&datum.f).unwrap();
    let g = sigma.group.clone();
    let eta = vec![0u64; g.rank()];
    let pd_default = pushdown(&sigma, &eta, &[]).unwrap();
    // force nonstandard representatives in two cosets
    let pd_other = pushdown(&sigma, &eta, &[vec![5], vec![6]]).unwrap();
    assert!(cohomologous(&pd_default.cocycle_bar, &pd_other.cocycle_bar).unwrap());
    let q1 = qform_of_cocycle(&pd_default.cocycle_bar).unwrap();
    let q2 = qform_of_cocycle(&pd_other.cocycle_bar).unwrap();
    for x in pd_default.qws.quotient.elements() {
        assert_eq!(q1.eval(&x), q2.eval(&x));
    }
    // π*Q̄ = Q pointwise for both
    for x in g.elements() {
        for pd in [&pd_default, &pd_other] {
            let px = pd.qws.project(&x);
            assert_eq!(pd.cocycle_bar.sigma(&px, &px), sigma.eval(&x, &x));
        }
    }
}

#[test]
fn radical_iso_on_sl2_datum() {
    // Rad₀ = ℓΛ_W/ℓΛ_R ≅ Z₂ maps onto T = ⟨χ^ℓ⟩ for the rank-1 example
    for ell in [4u64, 6] {
        let datum = rootlat::sl2_datum(ell, true).unwrap();
        let iso = quasimod_core::modularize::radical_iso_phi(&datum.f).unwrap();
        assert_eq!(iso.rad0.order(), 2);
        assert_eq!(iso.t.order(), 2);
        let g = FiniteAbelianGroup::cyclic(2 * ell);
        let nontrivial = iso
            .map
            .iter()
            .find(|(m, _)| m.iter().any(|&x| x != 0))
            .unwrap();
        assert_eq!(g.element_order(&nontrivial.1), 2, "Φ image at ℓ={ell}");
    }
}
