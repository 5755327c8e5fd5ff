//! Quadratic forms on finite abelian groups, abelian 3-cocycles (ω, σ), the
//! correspondence between the two, coboundaries, and validity checks.

use crate::abgroup::{Bihomomorphism, Character, Elt, FiniteAbelianGroup};
use crate::cyclo::RootOfUnity;
use crate::zlin;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Quadratic form given by Q(e_i) and the associated bihomomorphism values
/// B(e_k, e_l) for k < l, following the generator parametrization.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticForm {
    pub group: FiniteAbelianGroup,
    pub diag: Vec<RootOfUnity>,
    /// values B(e_k, e_l) for k < l, keyed (k, l)
    pub offdiag: std::collections::BTreeMap<(usize, usize), RootOfUnity>,
}

impl QuadraticForm {
    pub fn new(
        group: FiniteAbelianGroup,
        diag: Vec<RootOfUnity>,
        offdiag: std::collections::BTreeMap<(usize, usize), RootOfUnity>,
    ) -> Result<Self> {
        let n = group.rank();
        if diag.len() != n {
            return Err(Error::Invalid("diagonal length must match rank".into()));
        }
        for (i, q) in diag.iter().enumerate() {
            let m = group.moduli[i];
            let bound = 2u64.gcd(&m) * m;
            if bound % q.order() != 0 {
                return Err(Error::Invalid(format!(
                    "Q(e_{i}) has order {}, not dividing gcd(2,m)·m = {bound}",
                    q.order()
                )));
            }
        }
        for k in 0..n {
            for l in k + 1..n {
                let b = offdiag.get(&(k, l)).copied().unwrap_or_else(RootOfUnity::one);
                let g = group.moduli[k].gcd(&group.moduli[l]);
                if g % b.order() != 0 {
                    return Err(Error::Invalid(format!(
                        "B(e_{k},e_{l}) has order {} not dividing gcd = {g}",
                        b.order()
                    )));
                }
            }
        }
        Ok(QuadraticForm { group, diag, offdiag })
    }

    pub fn trivial(group: FiniteAbelianGroup) -> Self {
        let n = group.rank();
        QuadraticForm {
            group,
            diag: vec![RootOfUnity::one(); n],
            offdiag: Default::default(),
        }
    }

    fn b_gen(&self, k: usize, l: usize) -> RootOfUnity {
        use std::cmp::Ordering::*;
        match k.cmp(&l) {
            Less => self.offdiag.get(&(k, l)).copied().unwrap_or_else(RootOfUnity::one),
            Greater => self.offdiag.get(&(l, k)).copied().unwrap_or_else(RootOfUnity::one),
            Equal => self.diag[k].pow(2),
        }
    }

    /// Q(g) = Π_i Q(e_i)^{x_i²} · Π_{k<l} B(e_k,e_l)^{x_k x_l}.
    pub fn eval(&self, g: &[u64]) -> RootOfUnity {
        let mut out = RootOfUnity::one();
        for (i, &x) in g.iter().enumerate() {
            out = out.mul(&self.diag[i].pow((x as i64) * (x as i64)));
        }
        for (&(k, l), b) in &self.offdiag {
            out = out.mul(&b.pow((g[k] as i64) * (g[l] as i64)));
        }
        out
    }

    /// Associated symmetric bihomomorphism B(g,h) = Q(g+h)/(Q(g)Q(h)).
    pub fn bihom(&self) -> Bihomomorphism {
        let n = self.group.rank();
        let values = (0..n)
            .map(|i| (0..n).map(|j| self.b_gen(i, j)).collect())
            .collect();
        Bihomomorphism { group: self.group.clone(), values }
    }

    /// Complete enumeration of quadratic forms on a group, iterating the
    /// generator parameters (r_i, r_kl).
    pub fn enumerate(group: &FiniteAbelianGroup) -> Vec<QuadraticForm> {
        let n = group.rank();
        let diag_orders: Vec<u64> = group.moduli.iter().map(|&m| 2u64.gcd(&m) * m).collect();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|k| (k + 1..n).map(move |l| (k, l)))
            .collect();
        let pair_orders: Vec<u64> = pairs
            .iter()
            .map(|&(k, l)| group.moduli[k].gcd(&group.moduli[l]))
            .collect();
        let mut out = vec![];
        let total: u64 = diag_orders.iter().chain(pair_orders.iter()).product();
        for raw in 0..total {
            let mut idx = raw;
            let mut diag = vec![];
            for &d in &diag_orders {
                diag.push(RootOfUnity::new((idx % d) as i64, d));
                idx /= d;
            }
            let mut offdiag = std::collections::BTreeMap::new();
            for (&(k, l), &d) in pairs.iter().zip(&pair_orders) {
                let v = RootOfUnity::new((idx % d) as i64, d);
                if !v.is_one() {
                    offdiag.insert((k, l), v);
                }
                idx /= d;
            }
            out.push(QuadraticForm { group: group.clone(), diag, offdiag });
        }
        out
    }
}

/// Normalized 2-cochain on G with values in roots of unity, stored as an
/// exponent table against a fixed ambient order.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoCochain {
    pub group: FiniteAbelianGroup,
    pub order: u64,
    table: Vec<u64>,
}

impl TwoCochain {
    pub fn from_fn(group: &FiniteAbelianGroup, f: impl Fn(&[u64], &[u64]) -> RootOfUnity) -> Self {
        let n = group.order() as usize;
        let mut vals = Vec::with_capacity(n * n);
        let mut order = 1u64;
        for a in group.elements() {
            for b in group.elements() {
                let v = f(&a, &b);
                order = order.lcm(&v.order());
                vals.push(v);
            }
        }
        let table = vals
            .iter()
            .map(|v| v.exponent_in(order).expect("order is an lcm"))
            .collect();
        let c = TwoCochain { group: group.clone(), order, table };
        assert!(c.is_normalized(), "2-cochain must be normalized");
        c
    }

    pub fn trivial(group: &FiniteAbelianGroup) -> Self {
        TwoCochain::from_fn(group, |_, _| RootOfUnity::one())
    }

    pub fn eval(&self, a: &[u64], b: &[u64]) -> RootOfUnity {
        let n = self.group.order() as usize;
        let e = self.table[self.group.index_of(a) * n + self.group.index_of(b)];
        RootOfUnity::new(e as i64, self.order)
    }

    pub fn is_normalized(&self) -> bool {
        let zero = self.group.zero();
        self.group
            .elements()
            .all(|a| self.eval(&zero, &a).is_one() && self.eval(&a, &zero).is_one())
    }
}

/// Abelian 3-cocycle (ω, σ): a 3-cocycle together with a 2-cochain subject to
/// the two hexagon equations. Tables are stored as exponents in a common
/// ambient order.
#[derive(Clone, Debug)]
pub struct AbelianThreeCocycle {
    pub group: FiniteAbelianGroup,
    pub order: u64,
    omega: Vec<u64>,
    sigma: Vec<u64>,
}

impl AbelianThreeCocycle {
    /// Materialize from closures. The table size is |G|³; callers stay within
    /// the configured bound (the spec-scale groups are far below it).
    pub fn from_fns(
        group: &FiniteAbelianGroup,
        omega: impl Fn(&[u64], &[u64], &[u64]) -> RootOfUnity,
        sigma: impl Fn(&[u64], &[u64]) -> RootOfUnity,
    ) -> Result<Self> {
        let n = group.order() as usize;
        if n * n * n > (1 << 18) {
            return Err(Error::Bound(format!("cocycle table of size {n}³ exceeds 2^18")));
        }
        let mut ovals = Vec::with_capacity(n * n * n);
        let mut svals = Vec::with_capacity(n * n);
        let mut order = 2 * group.exponent();
        for a in group.elements() {
            for b in group.elements() {
                for c in group.elements() {
                    let v = omega(&a, &b, &c);
                    order = order.lcm(&v.order());
                    ovals.push(v);
                }
            }
        }
        for a in group.elements() {
            for b in group.elements() {
                let v = sigma(&a, &b);
                order = order.lcm(&v.order());
                svals.push(v);
            }
        }
        Ok(AbelianThreeCocycle {
            group: group.clone(),
            order,
            omega: ovals.iter().map(|v| v.exponent_in(order).unwrap()).collect(),
            sigma: svals.iter().map(|v| v.exponent_in(order).unwrap()).collect(),
        })
    }

    pub fn trivial(group: &FiniteAbelianGroup) -> Self {
        AbelianThreeCocycle::from_fns(group, |_, _, _| RootOfUnity::one(), |_, _| RootOfUnity::one())
            .expect("trivial cocycle")
    }

    pub fn omega(&self, a: &[u64], b: &[u64], c: &[u64]) -> RootOfUnity {
        let n = self.group.order() as usize;
        let idx = (self.group.index_of(a) * n + self.group.index_of(b)) * n + self.group.index_of(c);
        RootOfUnity::new(self.omega[idx] as i64, self.order)
    }

    pub fn sigma(&self, a: &[u64], b: &[u64]) -> RootOfUnity {
        let n = self.group.order() as usize;
        RootOfUnity::new(
            self.sigma[self.group.index_of(a) * n + self.group.index_of(b)] as i64,
            self.order,
        )
    }

    /// Raw exponent tables (ω then σ) against `self.order`.
    pub fn tables(&self) -> (&[u64], &[u64]) {
        (&self.omega, &self.sigma)
    }

    pub fn omega_is_trivial(&self) -> bool {
        self.omega.iter().all(|&e| e == 0)
    }
}

/// σ(a,b) = Π Q(g_i)^{a_i b_i} Π_{k<l} B(g_k,g_l)^{a_k b_l},
/// ω(a,b,c) = Π Q(g_i)^{m_i [a_i+b_i ≥ m_i] c_i}.
pub fn cocycle_from_qform(q: &QuadraticForm) -> AbelianThreeCocycle {
    let diag = q.diag.clone();
    let offdiag = q.offdiag.clone();
    let moduli = q.group.moduli.clone();
    let omega = {
        let diag = diag.clone();
        let moduli = moduli.clone();
        move |a: &[u64], b: &[u64], c: &[u64]| {
            let mut out = RootOfUnity::one();
            for i in 0..diag.len() {
                if a[i] + b[i] >= moduli[i] {
                    out = out.mul(&diag[i].pow((moduli[i] as i64) * (c[i] as i64)));
                }
            }
            out
        }
    };
    let sigma = move |a: &[u64], b: &[u64]| {
        let mut out = RootOfUnity::one();
        for i in 0..diag.len() {
            out = out.mul(&diag[i].pow((a[i] as i64) * (b[i] as i64)));
        }
        for (&(k, l), v) in &offdiag {
            out = out.mul(&v.pow((a[k] as i64) * (b[l] as i64)));
        }
        out
    };
    AbelianThreeCocycle::from_fns(&q.group, omega, sigma).expect("spec-scale group")
}

/// Pointwise check of: dω = 1, both hexagons, and normalization.
pub fn check_abelian_cocycle(c: &AbelianThreeCocycle) -> bool {
    let g = &c.group;
    let n = g.order() as usize;
    let m = c.order;
    let elems: Vec<Elt> = g.elements().collect();
    let mut add_idx = vec![0usize; n * n];
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            add_idx[i * n + j] = g.index_of(&g.add(a, b));
        }
    }
    let om = |a: usize, b: usize, c_: usize| c.omega[(a * n + b) * n + c_];
    let sg = |a: usize, b: usize| c.sigma[a * n + b];
    let zero = g.index_of(&g.zero());

    // normalization
    for a in 0..n {
        for b in 0..n {
            if om(zero, a, b) != 0 || om(a, zero, b) != 0 || om(a, b, zero) != 0 {
                return false;
            }
        }
        if sg(zero, a) != 0 || sg(a, zero) != 0 {
            return false;
        }
    }
    // 3-cocycle identity: ω(b,c,d) ω(a,b+c,d) ω(a,b,c) = ω(a+b,c,d) ω(a,b,c+d)
    for a in 0..n {
        for b in 0..n {
            let ab = add_idx[a * n + b];
            for c_ in 0..n {
                let bc = add_idx[b * n + c_];
                for d in 0..n {
                    let cd = add_idx[c_ * n + d];
                    let lhs = om(b, c_, d) + om(a, bc, d) + om(a, b, c_);
                    let rhs = om(ab, c_, d) + om(a, b, cd);
                    if (lhs + 2 * m - rhs) % m != 0 {
                        return false;
                    }
                }
            }
        }
    }
    // hexagon 1: ω(y,x,z) / (ω(x,y,z) ω(y,z,x)) = σ(x,y+z)/(σ(x,y)σ(x,z))
    // hexagon 2: ω(z,x,y) ω(x,y,z) / ω(x,z,y) = σ(x+y,z)/(σ(x,z)σ(y,z))
    for x in 0..n {
        for y in 0..n {
            let xy = add_idx[x * n + y];
            for z in 0..n {
                let yz = add_idx[y * n + z];
                let l1 = om(y, x, z) + sg(x, y) + sg(x, z) + 2 * m - om(x, y, z) - om(y, z, x);
                let r1 = sg(x, yz);
                if (l1 + m - r1) % m != 0 {
                    return false;
                }
                let l2 = om(z, x, y) + om(x, y, z) + sg(x, z) + sg(y, z) + m - om(x, z, y);
                let r2 = sg(xy, z);
                if (l2 + m - r2) % m != 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Recover the quadratic form Q(g) = σ(g,g); errors if the input is not a
/// valid abelian cocycle at the level of the associated bihomomorphism.
pub fn qform_of_cocycle(c: &AbelianThreeCocycle) -> Result<QuadraticForm> {
    let g = &c.group;
    let n = g.rank();
    let diag: Vec<RootOfUnity> = (0..n)
        .map(|i| c.sigma(&g.generator(i), &g.generator(i)))
        .collect();
    let mut offdiag = std::collections::BTreeMap::new();
    for k in 0..n {
        for l in k + 1..n {
            let ek = g.generator(k);
            let el = g.generator(l);
            let b = c.sigma(&ek, &el).mul(&c.sigma(&el, &ek));
            if !b.is_one() {
                offdiag.insert((k, l), b);
            }
        }
    }
    let q = QuadraticForm::new(g.clone(), diag, offdiag)?;
    let bh = q.bihom();
    // B(g,h) = σ(g,h)σ(h,g) must agree with Q(g+h)/(Q(g)Q(h)) pointwise
    for a in g.elements() {
        for b in g.elements() {
            let lhs = c.sigma(&a, &b).mul(&c.sigma(&b, &a));
            let q_ab = c.sigma(&g.add(&a, &b), &g.add(&a, &b));
            let rhs = q_ab.mul(&c.sigma(&a, &a).inv()).mul(&c.sigma(&b, &b).inv());
            if lhs != rhs || bh.eval(&a, &b) != lhs {
                return Err(Error::Verification(format!(
                    "σσᵀ is not the polarization of Q at ({a:?},{b:?})"
                )));
            }
        }
    }
    Ok(q)
}

/// (ω, σ) ↦ (ω·dκ⁻¹, σ·κ/κᵀ).
pub fn apply_coboundary(c: &AbelianThreeCocycle, kappa: &TwoCochain) -> AbelianThreeCocycle {
    assert_eq!(c.group, kappa.group);
    let g = c.group.clone();
    AbelianThreeCocycle::from_fns(
        &c.group,
        |a, b, cc| {
            let dk = kappa
                .eval(b, cc)
                .mul(&kappa.eval(a, &g.add(b, cc)))
                .mul(&kappa.eval(&g.add(a, b), cc).inv())
                .mul(&kappa.eval(a, b).inv());
            c.omega(a, b, cc).mul(&dk.inv())
        },
        |a, b| c.sigma(a, b).mul(&kappa.eval(a, b)).mul(&kappa.eval(b, a).inv()),
    )
    .expect("same-size table")
}

/// Two cocycles are cohomologous iff their quadratic forms coincide.
pub fn cohomologous(c1: &AbelianThreeCocycle, c2: &AbelianThreeCocycle) -> Result<bool> {
    if c1.group != c2.group {
        return Err(Error::Invalid("cocycles live on different groups".into()));
    }
    let g = &c1.group;
    Ok(g.elements().all(|a| c1.sigma(&a, &a) == c2.sigma(&a, &a)))
}

/// ω(χ_i,χ_j,ψ) = ω(χ_j,χ_i,ψ) and ω(χ̄_i,χ_i,ψ) = 1 for all i, j, ψ.
pub fn is_nice(c: &AbelianThreeCocycle, chis: &[Character]) -> bool {
    let g = &c.group;
    for (i, xi) in chis.iter().enumerate() {
        for xj in chis.iter().skip(i) {
            for psi in g.elements() {
                if c.omega(xi, xj, &psi) != c.omega(xj, xi, &psi) {
                    return false;
                }
            }
        }
        let xibar = g.neg(xi);
        for psi in g.elements() {
            if !c.omega(&xibar, xi, &psi).is_one() {
                return false;
            }
        }
    }
    true
}

/// Diagnostic: find a normalized κ with c2 = c1 · d_ab κ, by an exact linear
/// solve on exponents modulo the common ambient order.
pub fn find_coboundary_witness(
    c1: &AbelianThreeCocycle,
    c2: &AbelianThreeCocycle,
) -> Option<TwoCochain> {
    if c1.group != c2.group {
        return None;
    }
    let g = c1.group.clone();
    let n = g.order() as usize;
    let m = c1.order.lcm(&c2.order);
    let lift = |r: RootOfUnity| r.exponent_in(m).expect("common order") as i64;
    let elems: Vec<Elt> = g.elements().collect();
    let idx = |a: &Elt| g.index_of(a);

    // unknowns: κ-exponents x_{(a,b)}; equations over Z_m:
    //   dκ(a,b,c) = (ω2/ω1)^{-1},  κ(a,b) − κ(b,a) = σ2/σ1, κ normalized.
    let nn = n * n;
    let mut cols: Vec<Vec<BigInt>> = vec![];
    let mut rhs: Vec<BigInt> = vec![];
    let mut push_eq = |coeffs: &[(usize, i64)], b: i64, cols: &mut Vec<Vec<BigInt>>, rhs: &mut Vec<BigInt>| {
        let mut col = vec![BigInt::from(0); nn];
        for &(u, c) in coeffs {
            col[u] += BigInt::from(c);
        }
        cols.push(col);
        rhs.push(BigInt::from(b));
    };
    for a in &elems {
        for b in &elems {
            for c in &elems {
                let ab = g.add(a, b);
                let bc = g.add(b, c);
                let w = lift(c2.omega(a, b, c)) - lift(c1.omega(a, b, c));
                // ω2 = ω1 · dκ^{-1}
                push_eq(
                    &[
                        (idx(b) * n + idx(c), -1),
                        (idx(a) * n + g.index_of(&bc), -1),
                        (g.index_of(&ab) * n + idx(c), 1),
                        (idx(a) * n + idx(b), 1),
                    ],
                    w,
                    &mut cols,
                    &mut rhs,
                );
            }
            let s = lift(c2.sigma(a, b)) - lift(c1.sigma(a, b));
            push_eq(
                &[(idx(a) * n + idx(b), 1), (idx(b) * n + idx(a), -1)],
                s,
                &mut cols,
                &mut rhs,
            );
        }
        push_eq(&[(idx(a), 1)], 0, &mut cols, &mut rhs);
        push_eq(&[(idx(a) * n, 1)], 0, &mut cols, &mut rhs);
    }
    let a_mat: zlin::Mat = (0..nn)
        .map(|u| cols.iter().map(|col| col[u].clone()).collect())
        .collect();
    let moduli = vec![BigInt::from(m); cols.len()];
    let x = zlin::solve_left_mod(&a_mat, &rhs, &moduli)?;
    let table: Vec<u64> = x
        .iter()
        .map(|v| v.mod_floor(&BigInt::from(m)).to_u64().unwrap())
        .collect();
    Some(TwoCochain { group: g, order: m, table })
}

/// Abelian 3-cocycle together with a ±1-valued character defining the ribbon
/// twist θ_g = Q(g)η(g).
#[derive(Clone, Debug)]
pub struct RibbonDatum {
    pub cocycle: AbelianThreeCocycle,
    pub eta: Character,
}

impl RibbonDatum {
    pub fn new(cocycle: AbelianThreeCocycle, eta: Character) -> Result<Self> {
        let g = cocycle.group.clone();
        for i in 0..g.rank() {
            let v = g.pairing(&eta, &g.generator(i));
            if !v.mul(&v).is_one() {
                return Err(Error::Invalid(format!("η is not ±1-valued at generator {i}")));
            }
        }
        Ok(RibbonDatum { cocycle, eta })
    }

    pub fn eta_value(&self, x: &[u64]) -> RootOfUnity {
        self.cocycle.group.pairing(&self.eta, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n)
    }

    #[test]
    fn eval_examples() {
        // Z2, Q(e) = i
        let q = QuadraticForm::new(z(2), vec![RootOfUnity::new(1, 4)], Default::default()).unwrap();
        assert_eq!(q.eval(&[1]), RootOfUnity::new(1, 4));
        assert_eq!(q.eval(&[0]), RootOfUnity::one());
        // Z4, Q(e) = ζ8, Q(2e) = ζ8⁴ = −1
        let q = QuadraticForm::new(z(4), vec![RootOfUnity::new(1, 8)], Default::default()).unwrap();
        assert_eq!(q.eval(&[2]), RootOfUnity::minus_one());
        // Q(−g) = Q(g)
        for g in q.group.clone().elements() {
            assert_eq!(q.eval(&g), q.eval(&q.group.neg(&g)));
        }
    }

    #[test]
    fn cocycle_from_qform_z2() {
        let q = QuadraticForm::new(z(2), vec![RootOfUnity::new(1, 4)], Default::default()).unwrap();
        let c = cocycle_from_qform(&q);
        assert_eq!(c.sigma(&[1], &[1]), RootOfUnity::new(1, 4));
        assert_eq!(c.omega(&[1], &[1], &[1]), RootOfUnity::minus_one());
        assert!(check_abelian_cocycle(&c));
    }

    #[test]
    fn trivial_qform_gives_trivial_cocycle() {
        let q = QuadraticForm::trivial(FiniteAbelianGroup::new(vec![2, 4]));
        let c = cocycle_from_qform(&q);
        assert!(c.omega_is_trivial());
        assert!(c
            .group
            .elements()
            .all(|a| c.group.elements().all(|b| c.sigma(&a, &b).is_one())));
    }

    #[test]
    fn odd_cyclic_forms_have_trivial_omega() {
        for k in 0..5i64 {
            let q = QuadraticForm::new(z(5), vec![RootOfUnity::new(k, 5)], Default::default()).unwrap();
            let c = cocycle_from_qform(&q);
            assert!(c.omega_is_trivial());
            assert!(check_abelian_cocycle(&c));
        }
    }

    #[test]
    fn hexagon_forces_bilinearity_when_omega_trivial() {
        let g = z(4);
        let c = AbelianThreeCocycle::from_fns(
            &g,
            |_, _, _| RootOfUnity::one(),
            |a, b| RootOfUnity::new((a[0] * b[0] * b[0]) as i64, 4),
        )
        .unwrap();
        assert!(!check_abelian_cocycle(&c));
    }

    #[test]
    fn roundtrip_qform_cocycle_small_groups() {
        for moduli in [vec![2], vec![3], vec![4], vec![2, 2], vec![6]] {
            let g = FiniteAbelianGroup::new(moduli);
            for q in QuadraticForm::enumerate(&g) {
                let c = cocycle_from_qform(&q);
                assert!(check_abelian_cocycle(&c));
                let q2 = qform_of_cocycle(&c).unwrap();
                for x in g.elements() {
                    assert_eq!(q.eval(&x), q2.eval(&x));
                }
            }
        }
    }

    #[test]
    fn qform_count_on_cyclic_groups() {
        for n in 2..=8u64 {
            let g = z(n);
            let count = QuadraticForm::enumerate(&g).len() as u64;
            if n % 2 == 1 {
                assert_eq!(count, n);
            } else {
                assert_eq!(count, 2 * n);
            }
        }
    }

    #[test]
    fn coboundary_preserves_validity_and_qform() {
        let g = z(4);
        let q = QuadraticForm::new(g.clone(), vec![RootOfUnity::new(3, 8)], Default::default()).unwrap();
        let c = cocycle_from_qform(&q);
        let kappa = TwoCochain::from_fn(&g, |a, b| {
            if a[0] == 0 || b[0] == 0 {
                RootOfUnity::one()
            } else {
                RootOfUnity::new((a[0] * b[0] + a[0]) as i64, 8)
            }
        });
        let c2 = apply_coboundary(&c, &kappa);
        assert!(check_abelian_cocycle(&c2));
        let q2 = qform_of_cocycle(&c2).unwrap();
        for x in g.elements() {
            assert_eq!(q.eval(&x), q2.eval(&x), "coboundary changed Q at {x:?}");
        }
        assert!(cohomologous(&c, &c2).unwrap());
        let c3 = apply_coboundary(&c, &TwoCochain::trivial(&g));
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(c.sigma(&a, &b), c3.sigma(&a, &b));
            }
        }
    }

    #[test]
    fn distinct_forms_not_cohomologous() {
        let g = z(2);
        let q1 = QuadraticForm::trivial(g.clone());
        let q2 =
            QuadraticForm::new(g.clone(), vec![RootOfUnity::minus_one()], Default::default()).unwrap();
        assert!(!cohomologous(&cocycle_from_qform(&q1), &cocycle_from_qform(&q2)).unwrap());
    }

    #[test]
    fn nice_for_trivial_omega() {
        let g = z(4);
        let c = AbelianThreeCocycle::trivial(&g);
        assert!(is_nice(&c, &[vec![1], vec![2], vec![3]]));
    }

    #[test]
    fn witness_search_finds_kappa() {
        let g = z(4);
        let q = QuadraticForm::new(g.clone(), vec![RootOfUnity::new(1, 8)], Default::default()).unwrap();
        let c = cocycle_from_qform(&q);
        let kappa = TwoCochain::from_fn(&g, |a, b| {
            if a[0] == 0 || b[0] == 0 {
                RootOfUnity::one()
            } else {
                RootOfUnity::new((a[0] * a[0] * b[0]) as i64, 8)
            }
        });
        let c2 = apply_coboundary(&c, &kappa);
        let w = find_coboundary_witness(&c, &c2).expect("witness exists");
        let c3 = apply_coboundary(&c, &w);
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(c3.sigma(&a, &b), c2.sigma(&a, &b));
                for cc in g.elements() {
                    assert_eq!(c3.omega(&a, &b, &cc), c2.omega(&a, &b, &cc));
                }
            }
        }
    }
}
