use quasimod_core::abgroup::FiniteAbelianGroup;
use quasimod_core::cyclo::RootOfUnity;
use quasimod_core::qform::AbelianThreeCocycle;
use quasimod_core::quasiqg::*;

fn main() {
    let ell = 4u64;
    let g = FiniteAbelianGroup::cyclic(ell);
    let cocycle = AbelianThreeCocycle::from_fns(
        &g,
        |a, b, c| {
            let carry = if b[0] + c[0] >= ell { 1i64 } else { 0 };
            RootOfUnity::new(a[0] as i64 * carry * ell as i64, 2 * ell)
        },
        |a, b| RootOfUnity::new((a[0] * b[0]) as i64, 2 * ell),
    ).unwrap();
    let datum = UqgDatum { cocycle, chis: vec![vec![ell - 2]] };
    match build_uqg_debug(&datum) {
        Ok(info) => println!("{info}"),
        Err(e) => println!("ERR {e}"),
    }
}
