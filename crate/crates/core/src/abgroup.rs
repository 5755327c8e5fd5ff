//! Finite abelian groups presented as ⊕ Z_{m_i}, their elements and
//! characters, symmetric bihomomorphisms, subgroups with Smith-normal-form
//! presentations, and quotients with set-theoretic sections.

use crate::cyclo::RootOfUnity;
use crate::zlin;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub type Elt = Vec<u64>;

/// G = ⊕_i Z_{moduli[i]}. A trivial group has no moduli.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    pub moduli: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(moduli: Vec<u64>) -> Self {
        assert!(moduli.iter().all(|&m| m >= 1), "moduli must be positive");
        FiniteAbelianGroup { moduli: moduli.into_iter().filter(|&m| m > 1).collect() }
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { moduli: vec![] }
    }

    pub fn cyclic(n: u64) -> Self {
        FiniteAbelianGroup::new(vec![n])
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.moduli.iter().fold(1u64, |a, &m| a.lcm(&m))
    }

    pub fn zero(&self) -> Elt {
        vec![0; self.rank()]
    }

    pub fn reduce(&self, x: &[i64]) -> Elt {
        x.iter()
            .zip(&self.moduli)
            .map(|(&v, &m)| v.rem_euclid(m as i64) as u64)
            .collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Elt {
        a.iter()
            .zip(b)
            .zip(&self.moduli)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Elt {
        a.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| (m - x % m) % m)
            .collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Elt {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &[u64]) -> Elt {
        a.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| (((x as i128) * (k as i128)).rem_euclid(m as i128)) as u64)
            .collect()
    }

    pub fn generator(&self, i: usize) -> Elt {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    pub fn element_order(&self, a: &[u64]) -> u64 {
        a.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| if x == 0 { 1 } else { m / m.gcd(&x) })
            .fold(1u64, |acc, o| acc.lcm(&o))
    }

    /// Index of an element in the mixed-radix enumeration.
    pub fn index_of(&self, a: &[u64]) -> usize {
        let mut idx = 0usize;
        for (x, m) in a.iter().zip(&self.moduli) {
            idx = idx * (*m as usize) + (*x as usize);
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> Elt {
        let mut out = vec![0u64; self.rank()];
        for i in (0..self.rank()).rev() {
            let m = self.moduli[i] as usize;
            out[i] = (idx % m) as u64;
            idx /= m;
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> + '_ {
        (0..self.order() as usize).map(|i| self.element_at(i))
    }

    /// Evaluation pairing of a character (exponent tuple b) on an element a,
    /// through the fixed isomorphism of the dual with the group itself:
    /// χ_b(a) = Π_i ζ_{m_i}^{a_i b_i}.
    pub fn pairing(&self, chi: &[u64], a: &[u64]) -> RootOfUnity {
        let m = self.exponent().max(1);
        let mut e: u64 = 0;
        for ((&c, &x), &mi) in chi.iter().zip(a).zip(&self.moduli) {
            e = (e + (c as u128 * x as u128 % mi as u128) as u64 * (m / mi)) % m;
        }
        RootOfUnity::new(e as i64, m)
    }
}

/// Character of G presented by an exponent tuple in the same moduli.
pub type Character = Elt;

/// Symmetric or general bihomomorphism G × G → C^× given by values on
/// generator pairs.
#[derive(Clone, Debug)]
pub struct Bihomomorphism {
    pub group: FiniteAbelianGroup,
    pub values: Vec<Vec<RootOfUnity>>,
}

impl Bihomomorphism {
    pub fn new(group: FiniteAbelianGroup, values: Vec<Vec<RootOfUnity>>) -> Result<Self> {
        let n = group.rank();
        if values.len() != n || values.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("bihomomorphism value matrix has wrong shape".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let g = group.moduli[i].gcd(&group.moduli[j]);
                if g % values[i][j].order() != 0 {
                    return Err(Error::Invalid(format!(
                        "value at ({i},{j}) has order {} not dividing gcd {}",
                        values[i][j].order(),
                        g
                    )));
                }
            }
        }
        Ok(Bihomomorphism { group, values })
    }

    pub fn trivial(group: FiniteAbelianGroup) -> Self {
        let n = group.rank();
        Bihomomorphism { group, values: vec![vec![RootOfUnity::one(); n]; n] }
    }

    pub fn eval(&self, a: &[u64], b: &[u64]) -> RootOfUnity {
        let mut out = RootOfUnity::one();
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out = out.mul(&self.values[i][j].pow((x as i64) * (y as i64)));
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.group.rank();
        (0..n).all(|i| (0..n).all(|j| self.values[i][j] == self.values[j][i]))
    }

    /// The map a ↦ B(a,·) is injective.
    pub fn is_nondegenerate(&self) -> bool {
        radical(self).gens_reduced().is_empty()
    }
}

/// Subgroup of an ambient group, stored by generators.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub ambient: FiniteAbelianGroup,
    pub gens: Vec<Elt>,
}

impl Subgroup {
    pub fn new(ambient: FiniteAbelianGroup, gens: Vec<Elt>) -> Self {
        Subgroup { ambient, gens }
    }

    pub fn trivial(ambient: FiniteAbelianGroup) -> Self {
        Subgroup { ambient, gens: vec![] }
    }

    /// Generators with zero rows dropped.
    pub fn gens_reduced(&self) -> Vec<Elt> {
        self.gens
            .iter()
            .filter(|g| g.iter().any(|&x| x != 0))
            .cloned()
            .collect()
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        if x.iter().all(|&v| v == 0) {
            return true;
        }
        let rows: Vec<Vec<i64>> = self
            .gens
            .iter()
            .map(|g| g.iter().map(|&v| v as i64).collect())
            .collect();
        if rows.is_empty() {
            return false;
        }
        let a = zlin::mat_from_i64(&rows);
        let b: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        let moduli: Vec<BigInt> = self.ambient.moduli.iter().map(|&m| BigInt::from(m)).collect();
        zlin::solve_left_mod(&a, &b, &moduli).is_some()
    }

    /// All elements, by closure under addition of generators.
    pub fn elements(&self) -> Vec<Elt> {
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![self.ambient.zero()];
        seen.insert(self.ambient.zero());
        while let Some(x) = stack.pop() {
            for g in &self.gens {
                let y = self.ambient.add(&x, g);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn order(&self) -> u64 {
        self.elements().len() as u64
    }

    /// Smith-normal-form presentation: the subgroup as an abstract group plus
    /// images of its abstract generators inside the ambient group.
    pub fn snf_presentation(&self) -> (FiniteAbelianGroup, Vec<Elt>) {
        let elems = self.elements();
        if elems.len() <= 1 {
            return (FiniteAbelianGroup::trivial(), vec![]);
        }
        // relation lattice of the generator list inside the ambient group:
        // rows x with x·gens ≡ 0 (mod moduli)
        let gens = self.gens_reduced();
        let rows: Vec<Vec<i64>> = gens
            .iter()
            .map(|g| g.iter().map(|&v| v as i64).collect())
            .collect();
        let a = zlin::mat_from_i64(&rows);
        let moduli: Vec<BigInt> = self.ambient.moduli.iter().map(|&m| BigInt::from(m)).collect();
        let rel = zlin::left_kernel_mod(&a, &moduli);
        // subgroup ≅ Z^k / rel-lattice
        let s = zlin::smith(&rel);
        let k = gens.len();
        let mut new_moduli = vec![];
        let mut new_gens: Vec<Elt> = vec![];
        // Z^k/rel ≅ ⊕ Z_{d_i} with abstract generator i the image of the
        // i-th column of v
        for i in 0..k {
            let d = if i < s.d.len() && i < s.d.first().map_or(0, |r| r.len()) {
                s.d[i][i].to_u64().unwrap_or(0)
            } else {
                0
            };
            // d = 0 cannot happen in a finite group; d = 1 is a trivial factor
            assert!(d != 0, "subgroup presentation not finite");
            if d == 1 {
                continue;
            }
            new_moduli.push(d);
            // abstract generator i corresponds to Σ_j v[j][i]·gens[j]
            let mut img = self.ambient.zero();
            for j in 0..k {
                let c = s.v[j][i]
                    .to_i64()
                    .expect("unreasonably large coefficient in SNF");
                img = self.ambient.add(&img, &self.ambient.scale(c, &gens[j]));
            }
            new_gens.push(img);
        }
        (FiniteAbelianGroup::new(new_moduli), new_gens)
    }
}

/// Radical of a symmetric bihomomorphism: T = { g : B(g,h) = 1 ∀h },
/// computed as an integer kernel of the exponent matrix.
pub fn radical(b: &Bihomomorphism) -> Subgroup {
    assert!(b.is_symmetric(), "radical requires a symmetric bihomomorphism");
    radical_unchecked(b)
}

pub(crate) fn radical_unchecked(b: &Bihomomorphism) -> Subgroup {
    let g = &b.group;
    let n = g.rank();
    if n == 0 {
        return Subgroup::trivial(g.clone());
    }
    let m = g.exponent();
    // exponent matrix of B against μ_m
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            rows[i][j] = b.values[i][j]
                .exponent_in(m)
                .expect("bihomomorphism value outside ambient order") as i64;
        }
    }
    let a = zlin::mat_from_i64(&rows);
    let moduli = vec![BigInt::from(m); n];
    let ker = zlin::left_kernel_mod(&a, &moduli);
    let gens: Vec<Elt> = ker
        .iter()
        .map(|r| {
            r.iter()
                .zip(&g.moduli)
                .map(|(c, &mi)| {
                    c.mod_floor(&BigInt::from(mi))
                        .to_u64()
                        .expect("reduced coefficient fits u64")
                })
                .collect::<Elt>()
        })
        .filter(|e: &Elt| e.iter().any(|&x| x != 0))
        .collect();
    Subgroup::new(g.clone(), gens)
}

/// Quotient G/T in Smith normal form together with the projection and a
/// normalized set-theoretic section.
#[derive(Clone, Debug)]
pub struct QuotientWithSection {
    pub ambient: FiniteAbelianGroup,
    pub subgroup: Subgroup,
    pub quotient: FiniteAbelianGroup,
    /// projection table: ambient element index → quotient element
    proj: Vec<Elt>,
    /// section table: quotient element index → ambient element
    sect: Vec<Elt>,
}

impl QuotientWithSection {
    pub fn project(&self, x: &[u64]) -> Elt {
        self.proj[self.ambient.index_of(x)].clone()
    }

    pub fn section(&self, q: &[u64]) -> Elt {
        self.sect[self.quotient.index_of(q)].clone()
    }

    /// τ_x = x − s(π(x)) ∈ T.
    pub fn tau(&self, x: &[u64]) -> Elt {
        self.ambient.sub(x, &self.section(&self.project(x)))
    }

    /// r(p,q) = s(p) + s(q) − s(p+q) ∈ T.
    pub fn r_cocycle(&self, p: &[u64], q: &[u64]) -> Elt {
        let sp = self.section(p);
        let sq = self.section(q);
        let spq = self.section(&self.quotient.add(p, q));
        self.ambient.sub(&self.ambient.add(&sp, &sq), &spq)
    }
}

/// Build G/T with a section. `constraints` lists ambient elements x that the
/// section must fix: s([x]) = x. They must lie in distinct cosets; remaining
/// cosets get the lexicographically least representative.
pub fn quotient_with_section(
    g: &FiniteAbelianGroup,
    t: &Subgroup,
    constraints: &[Elt],
) -> Result<QuotientWithSection> {
    let t_elems = t.elements();
    let order = g.order() as usize;

    // coset labelling by lexicographically least member
    let mut coset_min: Vec<Option<Elt>> = vec![None; order];
    for x in g.elements() {
        let least = t_elems
            .iter()
            .map(|t| g.add(&x, t))
            .min()
            .expect("subgroup has at least the identity");
        coset_min[g.index_of(&x)] = Some(least);
    }
    let mut reps: Vec<Elt> = coset_min.iter().flatten().cloned().collect();
    reps.sort();
    reps.dedup();

    // abstract quotient via SNF: relations of G's generators plus T's gens
    let n = g.rank();
    let mut rows: Vec<Vec<i64>> = vec![];
    for (i, &m) in g.moduli.iter().enumerate() {
        let mut r = vec![0i64; n];
        r[i] = m as i64;
        rows.push(r);
    }
    for tg in t.gens_reduced() {
        rows.push(tg.iter().map(|&v| v as i64).collect());
    }
    let (quot, proj_mat) = quotient_presentation(g, &rows)?;

    let mut proj: Vec<Elt> = Vec::with_capacity(order);
    for x in g.elements() {
        proj.push(apply_proj(&quot, &proj_mat, &x));
    }

    // section: start from lexicographic-minimal representatives, then apply
    // constraint overrides
    let qorder = quot.order() as usize;
    let mut sect: Vec<Option<Elt>> = vec![None; qorder];
    for c in constraints {
        let q = &proj[g.index_of(c)];
        let slot = &mut sect[quot.index_of(q)];
        if let Some(prev) = slot {
            if prev != c {
                return Err(Error::Invalid(format!(
                    "conflicting section constraints {:?} and {:?} in one coset",
                    prev, c
                )));
            }
        }
        *slot = Some(c.clone());
    }
    // identity coset must be fixed at 0
    let zero_idx = quot.index_of(&quot.zero());
    match &sect[zero_idx] {
        Some(v) if v.iter().any(|&x| x != 0) => {
            return Err(Error::Invalid("section constraint conflicts with s(0) = 0".into()))
        }
        _ => sect[zero_idx] = Some(g.zero()),
    }
    for rep in &reps {
        let q = &proj[g.index_of(rep)];
        let slot = &mut sect[quot.index_of(q)];
        if slot.is_none() {
            *slot = Some(rep.clone());
        }
    }
    let sect: Vec<Elt> = sect
        .into_iter()
        .map(|s| s.expect("every coset has a representative"))
        .collect();

    let qws = QuotientWithSection {
        ambient: g.clone(),
        subgroup: t.clone(),
        quotient: quot,
        proj,
        sect,
    };
    // π ∘ s = id and s(0) = 0
    for q in qws.quotient.elements() {
        debug_assert_eq!(qws.project(&qws.section(&q)), q);
    }
    debug_assert!(qws.section(&qws.quotient.zero()).iter().all(|&x| x == 0));
    Ok(qws)
}

/// Quotient of Z^n by the lattice spanned by `rows`, returned with the
/// projection matrix mapping ambient exponent tuples to quotient tuples.
fn quotient_presentation(
    g: &FiniteAbelianGroup,
    rows: &[Vec<i64>],
) -> Result<(FiniteAbelianGroup, Vec<Vec<i64>>)> {
    let n = g.rank();
    if n == 0 {
        return Ok((FiniteAbelianGroup::trivial(), vec![]));
    }
    let a = zlin::mat_from_i64(rows);
    let s = zlin::smith(&a);
    // u a v = d. The quotient Z^n / rowspan(a) ≅ ⊕ Z_{d_i} with projection
    // x ↦ x·v reduced modulo the invariant factors.
    let mut moduli = vec![];
    let mut keep_cols = vec![];
    for i in 0..n {
        let d = if i < s.d.len() {
            s.d[i][i].to_u64().unwrap_or(0)
        } else {
            0
        };
        if d == 0 {
            return Err(Error::Invalid("quotient is not finite".into()));
        }
        if d > 1 {
            moduli.push(d);
            keep_cols.push(i);
        }
    }
    let mut proj_mat = vec![vec![0i64; keep_cols.len()]; n];
    for r in 0..n {
        for (c_out, &c) in keep_cols.iter().enumerate() {
            proj_mat[r][c_out] = s.v[r][c]
                .to_i64()
                .ok_or_else(|| Error::Invalid("projection coefficient overflow".into()))?;
        }
    }
    Ok((FiniteAbelianGroup::new(moduli), proj_mat))
}

fn apply_proj(quot: &FiniteAbelianGroup, proj_mat: &[Vec<i64>], x: &[u64]) -> Elt {
    let k = quot.rank();
    let mut out = vec![0i64; k];
    for (r, &xv) in x.iter().enumerate() {
        for c in 0..k {
            out[c] += (xv as i64) * proj_mat[r][c];
        }
    }
    quot.reduce(&out)
}

/// Smith-normal-form presentation of Z^n modulo the lattice spanned by the
/// given generator rows (relative to an ambient ⊕ Z_{m_i} when provided).
pub fn smith_quotient(
    generators: &[Vec<i64>],
    ambient: &FiniteAbelianGroup,
) -> Result<(FiniteAbelianGroup, Vec<Vec<i64>>)> {
    let n = ambient.rank();
    let mut rows: Vec<Vec<i64>> = vec![];
    for (i, &m) in ambient.moduli.iter().enumerate() {
        let mut r = vec![0i64; n];
        r[i] = m as i64;
        rows.push(r);
    }
    rows.extend(generators.iter().cloned());
    quotient_presentation(ambient, &rows)
}
