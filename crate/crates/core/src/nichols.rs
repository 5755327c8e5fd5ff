//! Diagonal Nichols-algebra combinatorics in a braided category with
//! associator: coefficient formulas with their recursion oracles, the braid
//! group action on tensor powers, the Matsumoto lift, the Woronowicz
//! symmetrizer, the quasi-quantum shuffle product, and a concrete
//! structure-constant model of B(V) cut out by the symmetrizer kernel.

use crate::abgroup::Elt;
use crate::cyclo::{CycloNum, RootOfUnity};
use crate::qform::AbelianThreeCocycle;
use crate::{Error, Result};
use num_rational::BigRational;
use std::collections::BTreeMap;

/// Word in the letters 0..rank, the left-bracketed monomial basis of T(V).
pub type Word = Vec<u8>;
/// Linear combination of words of one degree.
pub type FreeElt = BTreeMap<Word, CycloNum>;

/// Braided vector space V = ⊕ k·F_i of YD type: letters have degrees
/// |F_i| ∈ G and the braiding/associator come from an abelian 3-cocycle.
#[derive(Clone)]
pub struct BraidedVS {
    pub cocycle: AbelianThreeCocycle,
    /// degrees |F_i| (the characters χ̄_i in the quantum-group reading)
    pub degrees: Vec<Elt>,
}

impl BraidedVS {
    pub fn new(cocycle: AbelianThreeCocycle, degrees: Vec<Elt>) -> Self {
        BraidedVS { cocycle, degrees }
    }

    /// Degrees given as the inverses of a character list.
    pub fn from_chis(cocycle: AbelianThreeCocycle, chis: &[Elt]) -> Self {
        let g = cocycle.group.clone();
        let degrees = chis.iter().map(|c| g.neg(c)).collect();
        BraidedVS { cocycle, degrees }
    }

    /// Diagonal braided vector space with prescribed braiding matrix and
    /// trivial associator, realized on ⊕ Z_N with N the lcm of the orders.
    pub fn diagonal(qmatrix: &[Vec<RootOfUnity>]) -> Result<Self> {
        use num_integer::Integer;
        let n = qmatrix.len();
        let mut level = 2u64;
        for row in qmatrix {
            for v in row {
                level = level.lcm(&v.order());
            }
        }
        let g = crate::abgroup::FiniteAbelianGroup::new(vec![level; n]);
        let qm = qmatrix.to_vec();
        let cocycle = AbelianThreeCocycle::from_fns(
            &g,
            |_, _, _| RootOfUnity::one(),
            |a, b| {
                let mut out = RootOfUnity::one();
                for i in 0..a.len() {
                    for j in 0..b.len() {
                        out = out.mul(&qm[i][j].pow((a[i] as i64) * (b[j] as i64)));
                    }
                }
                out
            },
        )?;
        let degrees = (0..n).map(|i| cocycle.group.generator(i)).collect();
        Ok(BraidedVS { cocycle, degrees })
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn q(&self, i: usize, j: usize) -> RootOfUnity {
        self.cocycle.sigma(&self.degrees[i], &self.degrees[j])
    }

    pub fn word_degree(&self, w: &[u8]) -> Elt {
        let g = &self.cocycle.group;
        w.iter()
            .fold(g.zero(), |acc, &l| g.add(&acc, &self.degrees[l as usize]))
    }

    fn deg_scale(&self, i: usize, k: i64) -> Elt {
        self.cocycle.group.scale(k, &self.degrees[i])
    }
}

/// Gaussian binomial at a root of unity, via the Pascal recursion
/// binom(n,k)_q = binom(n-1,k-1)_q + q^k binom(n-1,k)_q.
pub fn q_binomial(n: u64, k: u64, q: &RootOfUnity) -> CycloNum {
    assert!(k <= n);
    let mut row = vec![CycloNum::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m as usize + 1);
        for j in 0..=m {
            let mut v = CycloNum::zero();
            if j >= 1 {
                v = v.add(&row[(j - 1) as usize]);
            }
            if j < m {
                v = v.add(&row[j as usize].mul(&q.pow(j as i64).to_cyclo()));
            }
            next.push(v);
        }
        row = next;
    }
    row[k as usize].clone()
}

/// (n)_q = 1 + q + … + q^{n−1}.
pub fn q_int(n: u64, q: &RootOfUnity) -> CycloNum {
    let mut s = CycloNum::zero();
    for j in 0..n {
        s = s.add(&q.pow(j as i64).to_cyclo());
    }
    s
}

/// a^i_{k,l} = Π_{r=0}^{l−1} ω(k·d_i, r·d_i, d_i)^{−1}, the rebracketing
/// scalar with F_i^k F_i^l = a^i_{k,l} F_i^{k+l}.
pub fn a_coeff(v: &BraidedVS, i: usize, k: u64, l: u64) -> RootOfUnity {
    let mut out = RootOfUnity::one();
    for r in 0..l {
        out = out.mul(
            &v.cocycle
                .omega(&v.deg_scale(i, k as i64), &v.deg_scale(i, r as i64), &v.degrees[i])
                .inv(),
        );
    }
    out
}

/// Minimal n with (n)_{q_ii}! = 0, i.e. F_i^n = 0; None when q_ii = 1.
pub fn nilpotency_order(v: &BraidedVS, i: usize) -> Option<u64> {
    let q = v.q(i, i);
    if q.is_one() {
        return None;
    }
    (1..=q.order()).find(|&n| q_int(n, &q).is_zero())
}

/// Minimal n with (n)_{q_ii}! Π_{r<n} (1 − q_ii^r q_ij q_ji) = 0, the order
/// of the quantum Serre relation ad_c^n(F_i)(F_j) = 0; None if unbounded.
pub fn adjoint_order(v: &BraidedVS, i: usize, j: usize) -> Option<u64> {
    assert_ne!(i, j);
    let qii = v.q(i, i);
    let qq = v.q(i, j).mul(&v.q(j, i));
    let bound = qii.order() * qq.order() + 1;
    for n in 1..=bound {
        let qfact_zero = (1..=n).any(|m| q_int(m, &qii).is_zero());
        let prod_zero = (0..n).any(|r| qii.pow(r as i64).mul(&qq).is_one());
        if qfact_zero || prod_zero {
            return Some(n);
        }
    }
    None
}

/// Coefficients of Δ(F_i^n) = Σ_k f_n(k) F_i^k ⊗ F_i^{n−k}: the closed form
/// f_n(k) = Π_{r=0}^{n−k−1} ω(k·d, r·d, d) · binom(n,k)_{q_ii}.
pub fn coproduct_coeffs(v: &BraidedVS, i: usize, n: u64) -> Vec<CycloNum> {
    let q = v.q(i, i);
    (0..=n)
        .map(|k| {
            let mut w = RootOfUnity::one();
            for r in 0..(n - k) {
                w = w.mul(&v.cocycle.omega(
                    &v.deg_scale(i, k as i64),
                    &v.deg_scale(i, r as i64),
                    &v.degrees[i],
                ));
            }
            q_binomial(n, k, &q).mul(&w.to_cyclo())
        })
        .collect()
}

/// Independent oracle for the same coefficients: the two-term recursion from
/// the inductive coproduct computation, anchored at f_n(0) = f_n(n) = 1.
pub fn coproduct_coeffs_recursive(v: &BraidedVS, i: usize, n: u64) -> Vec<CycloNum> {
    let d = |k: i64| v.deg_scale(i, k);
    let mut f: Vec<CycloNum> = vec![CycloNum::one()];
    for m in 1..=n as i64 {
        let mut next = vec![CycloNum::zero(); m as usize + 1];
        for k in 0..=m {
            let mut val = CycloNum::zero();
            if k < m {
                let w = v.cocycle.omega(&d(k), &d(m - 1 - k), &v.degrees[i]);
                val = val.add(&f[k as usize].mul(&w.to_cyclo()));
            }
            if k >= 1 {
                let w = v
                    .cocycle
                    .omega(&d(k - 1), &d(m - k), &v.degrees[i])
                    .mul(&v.cocycle.omega(&d(k - 1), &v.degrees[i], &d(m - k)).inv())
                    .mul(&v.cocycle.sigma(&d(m - k), &v.degrees[i]));
                val = val.add(&f[(k - 1) as usize].mul(&w.to_cyclo()));
            }
            next[k as usize] = val;
        }
        f = next;
    }
    f
}

/// Closed form for ad_c^n(F_i)(F_j) = Σ_k μ_n(k) (F_i^k F_j) F_i^{n−k}.
pub fn mu_coeffs(v: &BraidedVS, i: usize, j: usize, n: u64) -> Vec<CycloNum> {
    assert_ne!(i, j);
    let qii = v.q(i, i);
    let di = |k: i64| v.deg_scale(i, k);
    let dj = &v.degrees[j];
    // c_n = Π_{r<n} σ(d_i, r·d_i) / (q_ii^r ω(d_i, r·d_i, d_j))
    let mut c_n = RootOfUnity::one();
    let mut q_exp: i64 = 0;
    for r in 0..n as i64 {
        c_n = c_n
            .mul(&v.cocycle.sigma(&v.degrees[i], &di(r)))
            .mul(&v.cocycle.omega(&v.degrees[i], &di(r), dj).inv());
        q_exp += r;
    }
    c_n = c_n.mul(&qii.pow(-q_exp));
    (0..=n)
        .map(|k| {
            let nk = (n - k) as i64;
            let sign = if (n - k) % 2 == 0 { 1 } else { -1 };
            let root = c_n
                .mul(&a_coeff(v, i, k, n - k).inv())
                .mul(&v.cocycle.sigma(&di(nk), dj))
                .mul(&v.cocycle.omega(&di(k as i64), &di(nk), dj))
                .mul(&v.cocycle.omega(&di(nk), &di(k as i64), dj).inv())
                .mul(&qii.pow(nk * (nk - 1) / 2));
            q_binomial(n, k, &qii)
                .mul(&root.to_cyclo())
                .scale(&BigRational::from_integer(sign.into()))
        })
        .collect()
}

/// Free-algebra multiplication coefficient: appending word `w` to an element
/// of degree `p` costs Π_r ω(p, deg w[..r], deg w[r])^{−1}.
fn concat_coeff(v: &BraidedVS, left_deg: &Elt, w: &[u8]) -> RootOfUnity {
    let g = &v.cocycle.group;
    let mut out = RootOfUnity::one();
    let mut mid = g.zero();
    for &l in w {
        out = out.mul(&v.cocycle.omega(left_deg, &mid, &v.degrees[l as usize]).inv());
        mid = g.add(&mid, &v.degrees[l as usize]);
    }
    out
}

fn free_mul(v: &BraidedVS, a: &FreeElt, b: &FreeElt) -> FreeElt {
    let mut out = FreeElt::new();
    for (wa, ca) in a {
        let da = v.word_degree(wa);
        for (wb, cb) in b {
            let coeff = concat_coeff(v, &da, wb).to_cyclo().mul(ca).mul(cb);
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            add_term(&mut out, w, coeff);
        }
    }
    out
}

fn add_term(e: &mut FreeElt, w: Word, c: CycloNum) {
    if c.is_zero() {
        return;
    }
    match e.remove(&w) {
        Some(prev) => {
            let s = prev.add(&c);
            if !s.is_zero() {
                e.insert(w, s);
            }
        }
        None => {
            e.insert(w, c);
        }
    }
}

/// Oracle for the μ_n(k): iterate ad_c(F_i)(X) = F_i·X − σ(d_i,|X|)·X·F_i in
/// the free algebra, then read off the words i^k j i^{n−k}.
pub fn mu_coeffs_oracle(v: &BraidedVS, i: usize, j: usize, n: u64) -> Vec<CycloNum> {
    let fi: FreeElt = [(vec![i as u8], CycloNum::one())].into();
    let mut x: FreeElt = [(vec![j as u8], CycloNum::one())].into();
    for _ in 0..n {
        let left = free_mul(v, &fi, &x);
        let mut out = left;
        for (w, c) in &x {
            let braid = v.cocycle.sigma(&v.degrees[i], &v.word_degree(w));
            let right = free_mul(v, &[(w.clone(), c.clone())].into(), &fi);
            for (wr, cr) in right {
                add_term(&mut out, wr, cr.mul(&braid.to_cyclo()).neg());
            }
        }
        x = out;
    }
    (0..=n)
        .map(|k| {
            let mut w: Word = vec![i as u8; k as usize];
            w.push(j as u8);
            w.extend(vec![i as u8; (n - k) as usize]);
            x.get(&w).cloned().unwrap_or_else(CycloNum::zero)
        })
        .collect()
}

/// Braid generator action on a left-bracketed word: swap slots (pos, pos+1)
/// with the associator-conjugated braiding scalar.
pub fn braid_generator(v: &BraidedVS, w: &[u8], pos: usize) -> (RootOfUnity, Word) {
    let g = &v.cocycle.group;
    let mut prefix = g.zero();
    for &l in &w[..pos] {
        prefix = g.add(&prefix, &v.degrees[l as usize]);
    }
    let a = &v.degrees[w[pos] as usize];
    let b = &v.degrees[w[pos + 1] as usize];
    let coeff = v
        .cocycle
        .omega(&prefix, a, b)
        .mul(&v.cocycle.sigma(a, b))
        .mul(&v.cocycle.omega(&prefix, b, a).inv());
    let mut out = w.to_vec();
    out.swap(pos, pos + 1);
    (coeff, out)
}

/// All permutations of S_n with a reduced word each (geodesics in the Cayley
/// graph of the adjacent transpositions, found by breadth-first search).
/// Words list generator indices in application order.
pub fn permutations_with_reduced_words(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    seen.insert(id.clone(), vec![]);
    let mut queue = std::collections::VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        let word = seen[&p].clone();
        for s in 0..n.saturating_sub(1) {
            // s_s ∘ p
            let mut q = p.clone();
            for slot in q.iter_mut() {
                if *slot == s {
                    *slot = s + 1;
                } else if *slot == s + 1 {
                    *slot = s;
                }
            }
            if !seen.contains_key(&q) {
                let mut w = word.clone();
                w.push(s);
                seen.insert(q.clone(), w);
                queue.push_back(q);
            }
        }
    }
    seen.into_iter().collect()
}

/// Enumerate all reduced words of a permutation (test support for the
/// well-definedness of the Matsumoto lift).
pub fn all_reduced_words(perm: &[usize]) -> Vec<Vec<usize>> {
    fn inversions(p: &[usize]) -> usize {
        let mut c = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    c += 1;
                }
            }
        }
        c
    }
    let inv = inversions(perm);
    if inv == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for s in 0..perm.len() - 1 {
        // strip s_s from the left: s_s ∘ p has fewer inversions iff the values
        // s, s+1 appear in inverted order in p
        let mut q = perm.to_vec();
        for slot in q.iter_mut() {
            if *slot == s {
                *slot = s + 1;
            } else if *slot == s + 1 {
                *slot = s;
            }
        }
        if inversions(&q) < inv {
            for mut w in all_reduced_words(&q) {
                w.push(s);
                out.push(w);
            }
        }
    }
    out
}

/// ρ(π) applied to a word through a reduced word of π.
pub fn matsumoto_apply(v: &BraidedVS, reduced: &[usize], w: &[u8]) -> (RootOfUnity, Word) {
    let mut coeff = RootOfUnity::one();
    let mut cur = w.to_vec();
    for &s in reduced {
        let (c, next) = braid_generator(v, &cur, s);
        coeff = coeff.mul(&c);
        cur = next;
    }
    (coeff, cur)
}

/// Words of length n over the alphabet, grouped by multidegree.
fn words_by_block(rank: usize, n: usize) -> BTreeMap<Vec<u8>, Vec<Word>> {
    let mut blocks: BTreeMap<Vec<u8>, Vec<Word>> = BTreeMap::new();
    let total = (rank as u64).pow(n as u32);
    for mut idx in 0..total {
        let mut w = vec![0u8; n];
        for slot in w.iter_mut() {
            *slot = (idx % rank as u64) as u8;
            idx /= rank as u64;
        }
        let mut key = vec![0u8; rank];
        for &l in &w {
            key[l as usize] += 1;
        }
        blocks.entry(key).or_default().push(w);
    }
    blocks
}

/// Weak-order spanning tree of S_n: nodes in BFS order, each non-root node
/// recording (parent index, generator). Every permutation is reached along a
/// reduced word, so walking the tree realizes the Matsumoto lift.
fn permutation_tree(n: usize) -> std::sync::Arc<Vec<(u32, u8)>> {
    use std::sync::{Arc, Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<Vec<(u32, u8)>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let id: Vec<u8> = (0..n as u8).collect();
    let mut tree: Vec<(u32, u8)> = vec![(0, 0)];
    let mut idx: std::collections::HashMap<Vec<u8>, u32> = Default::default();
    idx.insert(id.clone(), 0);
    let mut queue = std::collections::VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        let pi = idx[&p];
        for s in 0..n.saturating_sub(1) {
            if p[s] > p[s + 1] {
                continue; // not length-increasing: skip non-reduced extension
            }
            let mut q = p.clone();
            q.swap(s, s + 1);
            if idx.contains_key(&q) {
                continue;
            }
            idx.insert(q.clone(), tree.len() as u32);
            tree.push((pi, s as u8));
            queue.push_back(q);
        }
    }
    debug_assert_eq!(tree.len() as u64, (1..=n as u64).product::<u64>());
    let arc = Arc::new(tree);
    cache.lock().unwrap().insert(n, arc.clone());
    arc
}

/// Woronowicz symmetrizer Wor(c)_n = Σ_{π ∈ S_n} ρ(π) restricted to one
/// multidegree block, as a dense matrix (rows = target, cols = source).
///
/// The sum walks the weak order: each permutation costs one braid-generator
/// lookup per source word, since ρ extends one reduced letter at a time.
fn wor_block(v: &BraidedVS, words: &[Word]) -> Vec<Vec<CycloNum>> {
    let n = words.first().map_or(0, |w| w.len());
    let k = words.len();
    let m = v.cocycle.order;
    if n == 0 {
        return vec![vec![CycloNum::one(); 1]; 1];
    }
    let index: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    // generator action table: (pos, word) → (target word, exponent in μ_M)
    let mut gen_tbl = vec![vec![(0u32, 0u64); k]; n - 1];
    for pos in 0..n - 1 {
        for (wi, w) in words.iter().enumerate() {
            let (c, img) = braid_generator(v, w, pos);
            gen_tbl[pos][wi] = (index[&img] as u32, c.exponent_in(m).expect("μ_M"));
        }
    }
    let tree = permutation_tree(n);
    let mut counts: Vec<u64> = vec![0; k * k * m as usize];
    let mut tgt_state: Vec<u32> = vec![0; tree.len()];
    let mut exp_state: Vec<u64> = vec![0; tree.len()];
    for src in 0..k {
        tgt_state[0] = src as u32;
        exp_state[0] = 0;
        counts[(src * k + src) * m as usize] += 1;
        for node in 1..tree.len() {
            let (parent, gen) = tree[node];
            let (t2, e2) = gen_tbl[gen as usize][tgt_state[parent as usize] as usize];
            let e = (exp_state[parent as usize] + e2) % m;
            tgt_state[node] = t2;
            exp_state[node] = e;
            counts[((t2 as usize) * k + src) * m as usize + e as usize] += 1;
        }
    }
    (0..k)
        .map(|r| {
            (0..k)
                .map(|c| {
                    let mut s = CycloNum::zero();
                    for e in 0..m {
                        let cnt = counts[(r * k + c) * m as usize + e as usize];
                        if cnt > 0 {
                            s = s.add(
                                &CycloNum::root(m, e as i64)
                                    .scale(&BigRational::from_integer(cnt.into())),
                            );
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// dim B^n V = rank of the degree-n Woronowicz symmetrizer, block by block.
pub fn woronowicz_dim(v: &BraidedVS, n: usize) -> Result<usize> {
    let dim_vn = (v.rank() as u64).checked_pow(n as u32);
    match dim_vn {
        Some(d) if (d as usize) <= crate::max_tensor_dim() => {}
        _ => {
            return Err(Error::Bound(format!(
                "dim V^⊗{n} exceeds the configured bound {}",
                crate::max_tensor_dim()
            )))
        }
    }
    if n == 0 {
        return Ok(1);
    }
    let mut total = 0;
    for (_, words) in words_by_block(v.rank(), n) {
        let m = wor_block(v, &words);
        total += crate::modularize::cyclo_rank(m);
    }
    Ok(total)
}

/// Quasi-quantum shuffle product on T(V): μ_{i,n−i} = Σ_{i-shuffles} ρ(σ)∘m.
pub fn shuffle_product(v: &BraidedVS, a: &FreeElt, b: &FreeElt) -> FreeElt {
    let mut out = FreeElt::new();
    let mut grouped: BTreeMap<(usize, usize), Vec<(&Word, &Word)>> = BTreeMap::new();
    for (wa, _) in a {
        for (wb, _) in b {
            grouped.entry((wa.len(), wb.len())).or_default().push((wa, wb));
        }
    }
    for ((la, lb), pairs) in grouped {
        let n = la + lb;
        let shuffles: Vec<Vec<usize>> = permutations_with_reduced_words(n)
            .into_iter()
            .filter(|(p, _)| {
                (0..la.saturating_sub(1)).all(|k| p[k] < p[k + 1])
                    && (la..n.saturating_sub(1)).all(|k| p[k] < p[k + 1])
            })
            .map(|(_, w)| w)
            .collect();
        for (wa, wb) in pairs {
            let ca = &a[wa];
            let cb = &b[wb];
            let cc = concat_coeff(v, &v.word_degree(wa), wb);
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            let base = ca.mul(cb).mul(&cc.to_cyclo());
            for red in &shuffles {
                let (coeff, img) = matsumoto_apply(v, red, &w);
                add_term(&mut out, img, base.mul(&coeff.to_cyclo()));
            }
        }
    }
    out
}

/// Deconcatenation component V^n → V^k ⊗ V^{n−k} of the cofree coproduct,
/// with the inverse rebracketing scalar.
fn deconcat_coeff(v: &BraidedVS, w: &[u8], k: usize) -> RootOfUnity {
    concat_coeff(v, &v.word_degree(&w[..k]), &w[k..]).inv()
}

/// Reduced echelon over word-indexed vectors, tracking combinations of the
/// inserted originals. Rows have pairwise distinct leading (minimal) words.
struct Echelon {
    rows: BTreeMap<Word, (FreeElt, Vec<(usize, CycloNum)>)>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    fn reduce(&self, x: &FreeElt) -> (FreeElt, Vec<(usize, CycloNum)>) {
        let mut target = x.clone();
        let mut combo: Vec<(usize, CycloNum)> = vec![];
        let mut cursor: Option<Word> = None;
        loop {
            let lead = match &cursor {
                None => target.iter().next().map(|(w, _)| w.clone()),
                Some(prev) => target
                    .range((std::ops::Bound::Excluded(prev.clone()), std::ops::Bound::Unbounded))
                    .next()
                    .map(|(w, _)| w.clone()),
            };
            let Some(w) = lead else { break };
            if let Some((row, rcombo)) = self.rows.get(&w) {
                let f = target[&w].mul(&row[&w].inv().unwrap());
                for (wr, cr) in row {
                    add_term(&mut target, wr.clone(), cr.mul(&f).neg());
                }
                for (idx, c) in rcombo {
                    combo.push((*idx, c.mul(&f)));
                }
            } else {
                cursor = Some(w);
            }
        }
        (target, merge_combo(combo))
    }

    /// Insert the vector with original index `idx`; Some(residue-free combo)
    /// when dependent, None when a new row was added.
    fn insert(&mut self, idx: usize, x: &FreeElt) -> Option<Vec<(usize, CycloNum)>> {
        let (residue, combo) = self.reduce(x);
        if residue.is_empty() {
            return Some(combo);
        }
        let lead = residue.iter().next().unwrap().0.clone();
        let mut full_combo = vec![(idx, CycloNum::one())];
        for (j, c) in combo {
            full_combo.push((j, c.neg()));
        }
        self.rows.insert(lead, (residue, full_combo));
        None
    }

    /// Express x as a combination of the inserted originals, if possible.
    fn solve(&self, x: &FreeElt) -> Option<Vec<(usize, CycloNum)>> {
        let (residue, combo) = self.reduce(x);
        residue.is_empty().then_some(combo)
    }
}

fn merge_combo(combo: Vec<(usize, CycloNum)>) -> Vec<(usize, CycloNum)> {
    let mut m: BTreeMap<usize, CycloNum> = BTreeMap::new();
    for (i, c) in combo {
        let entry = m.remove(&i).map(|p| p.add(&c)).unwrap_or(c);
        if !entry.is_zero() {
            m.insert(i, entry);
        }
    }
    m.into_iter().collect()
}

/// Concrete Nichols algebra: words modulo ker(Wor), with multiplication,
/// shuffle products of the symmetrized images, and deconcatenation
/// coproducts, all by exact linear algebra per degree.
pub struct NicholsAlgebra {
    pub vs: BraidedVS,
    /// basis words per degree
    pub basis: Vec<Vec<Word>>,
    /// [deg][word] → expansion over basis indices of that degree
    reductions: Vec<BTreeMap<Word, Vec<(usize, CycloNum)>>>,
    /// Wor-images of the basis words, per degree, in word coordinates
    images: Vec<Vec<FreeElt>>,
    /// echelonized images per degree for membership solves
    echelons: Vec<Echelon>,
}

impl NicholsAlgebra {
    /// Build up to (and including) the top degree; errors if dimensions keep
    /// growing past the bound.
    pub fn build(vs: &BraidedVS) -> Result<NicholsAlgebra> {
        let mut ech0 = Echelon::new();
        let unit: FreeElt = [(vec![], CycloNum::one())].into();
        ech0.insert(0, &unit);
        let mut alg = NicholsAlgebra {
            vs: vs.clone(),
            basis: vec![vec![vec![]]],
            reductions: vec![[(vec![], vec![(0usize, CycloNum::one())])].into()],
            images: vec![vec![unit]],
            echelons: vec![ech0],
        };
        let mut n = 1usize;
        loop {
            let dim_vn = (vs.rank() as u64).checked_pow(n as u32);
            match dim_vn {
                Some(d) if (d as usize) <= crate::max_tensor_dim() => {}
                _ => return Err(Error::Bound("Nichols algebra dimension bound exceeded".into())),
            }
            let mut deg_basis: Vec<Word> = vec![];
            let mut deg_red: BTreeMap<Word, Vec<(usize, CycloNum)>> = BTreeMap::new();
            let mut deg_imgs: Vec<FreeElt> = vec![];
            let mut ech = Echelon::new();
            for (_, words) in words_by_block(vs.rank(), n) {
                let wor = wor_block(&vs, &words);
                for (ci, w) in words.iter().enumerate() {
                    let img: FreeElt = words
                        .iter()
                        .enumerate()
                        .filter(|(r, _)| !wor[*r][ci].is_zero())
                        .map(|(r, wr)| (wr.clone(), wor[r][ci].clone()))
                        .collect();
                    let idx = deg_basis.len();
                    match ech.insert(idx, &img) {
                        None => {
                            deg_basis.push(w.clone());
                            deg_red.insert(w.clone(), vec![(idx, CycloNum::one())]);
                            deg_imgs.push(img);
                        }
                        Some(combo) => {
                            deg_red.insert(w.clone(), combo);
                        }
                    }
                }
            }
            if deg_basis.is_empty() {
                break;
            }
            alg.basis.push(deg_basis);
            alg.reductions.push(deg_red);
            alg.images.push(deg_imgs);
            alg.echelons.push(ech);
            n += 1;
        }
        Ok(alg)
    }

    pub fn top_degree(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.basis.iter().map(|b| b.len()).sum()
    }

    pub fn graded_dims(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.len()).collect()
    }

    /// Expansion of an arbitrary word in the PBW-style basis of its degree;
    /// empty when the word length exceeds the top degree (the word is 0).
    pub fn reduce_word(&self, w: &[u8]) -> Vec<(usize, CycloNum)> {
        let n = w.len();
        if n >= self.basis.len() {
            return vec![];
        }
        self.reductions[n].get(w).cloned().unwrap_or_default()
    }

    /// Product of two basis words, expanded over the basis of the sum degree
    /// (with the free-algebra rebracketing scalar).
    pub fn mul_basis(&self, na: usize, ia: usize, nb: usize, ib: usize) -> Vec<(usize, CycloNum)> {
        let wa = &self.basis[na][ia];
        let wb = &self.basis[nb][ib];
        let coeff = concat_coeff(&self.vs, &self.vs.word_degree(wa), wb);
        let mut w = wa.clone();
        w.extend_from_slice(wb);
        self.reduce_word(&w)
            .into_iter()
            .map(|(i, c)| (i, c.mul(&coeff.to_cyclo())))
            .collect()
    }

    /// Express a free element of homogeneous degree as a combination of
    /// Wor-images of basis words. None if it lies outside the image.
    pub fn solve_in_image(&self, n: usize, x: &FreeElt) -> Option<Vec<(usize, CycloNum)>> {
        if x.is_empty() {
            return Some(vec![]);
        }
        if n >= self.basis.len() {
            return None;
        }
        self.echelons[n].solve(x)
    }

    /// Shuffle product of the Wor-images of two basis words, expanded back
    /// over basis indices: the product of the dual-basis generators.
    pub fn shuffle_basis(&self, na: usize, ia: usize, nb: usize, ib: usize) -> Vec<(usize, CycloNum)> {
        let prod = shuffle_product(&self.vs, &self.images[na][ia], &self.images[nb][ib]);
        self.solve_in_image(na + nb, &prod)
            .expect("shuffle of images stays in the image subalgebra")
    }

    /// Coproduct structure constants in degree split (k, n−k):
    /// Δ(b) = Σ c_{b',b''} b' ⊗ b'' obtained by deconcatenating Wor(b).
    pub fn coproduct_basis(
        &self,
        n: usize,
        i: usize,
        k: usize,
    ) -> Vec<((usize, usize), CycloNum)> {
        let img = &self.images[n][i];
        // deconcatenate every word of the image at position k
        let mut z: BTreeMap<(Word, Word), CycloNum> = BTreeMap::new();
        for (w, c) in img {
            let coeff = deconcat_coeff(&self.vs, w, k).to_cyclo().mul(c);
            let key = (w[..k].to_vec(), w[k..].to_vec());
            match z.remove(&key) {
                Some(prev) => {
                    let s = prev.add(&coeff);
                    if !s.is_zero() {
                        z.insert(key, s);
                    }
                }
                None => {
                    z.insert(key, coeff);
                }
            }
        }
        // solve Z = Σ D_{b'b''} Wor(b')⊗Wor(b'') in two stages
        let mut cols: BTreeMap<Word, FreeElt> = BTreeMap::new();
        for ((u, vw), c) in &z {
            cols.entry(vw.clone()).or_default().insert(u.clone(), c.clone());
        }
        // stage 1: each right-word column lies in the span of the left images
        let mut rows: BTreeMap<usize, FreeElt> = BTreeMap::new();
        for (vw, col) in cols {
            let sol = self.echelons[k]
                .solve(&col)
                .expect("deconcatenation lies in Wor ⊗ Wor");
            for (bidx, c) in sol {
                rows.entry(bidx).or_default().insert(vw.clone(), c);
            }
        }
        // stage 2: each left-index row lies in the span of the right images
        let mut out = vec![];
        for (bidx, row) in rows {
            let sol = self.echelons[n - k]
                .solve(&row)
                .expect("deconcatenation lies in Wor ⊗ Wor");
            for (bj, c) in sol {
                out.push(((bidx, bj), c));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::FiniteAbelianGroup;
    use crate::qform::{cocycle_from_qform, QuadraticForm};

    fn rank1(q: RootOfUnity) -> BraidedVS {
        BraidedVS::diagonal(&[vec![q]]).unwrap()
    }

    #[test]
    fn q_binomial_values() {
        assert!(q_binomial(5, 0, &RootOfUnity::primitive(3)).eq(&CycloNum::one()));
        assert!(q_binomial(2, 1, &RootOfUnity::minus_one()).is_zero());
        // (4 choose 2) at ζ3 vanishes since (3)_q = 0 divides (4)_q!
        assert!(q_binomial(4, 2, &RootOfUnity::primitive(3)).is_zero());
        // generic value: (4 choose 2)_q at q = i is (1+q²)(1+q+q²+q³)/(1+q) — check
        // against the explicit polynomial 1 + q + 2q² + q³ + q⁴
        let q = RootOfUnity::new(1, 5);
        let direct = q_binomial(4, 2, &q);
        let mut expect = CycloNum::zero();
        for (e, c) in [(0i64, 1i64), (1, 1), (2, 2), (3, 1), (4, 1)] {
            expect = expect.add(&CycloNum::root(5, e).scale(&BigRational::from_integer(c.into())));
        }
        assert!(direct.eq(&expect));
    }

    #[test]
    fn nilpotency_orders() {
        assert_eq!(nilpotency_order(&rank1(RootOfUnity::minus_one()), 0), Some(2));
        assert_eq!(nilpotency_order(&rank1(RootOfUnity::primitive(3)), 0), Some(3));
        assert_eq!(nilpotency_order(&rank1(RootOfUnity::one()), 0), None);
    }

    #[test]
    fn adjoint_orders() {
        // q_ij q_ji = 1 → order 1
        let v = BraidedVS::diagonal(&[
            vec![RootOfUnity::primitive(4), RootOfUnity::primitive(4)],
            vec![RootOfUnity::new(-1, 4), RootOfUnity::primitive(4)],
        ])
        .unwrap();
        assert_eq!(adjoint_order(&v, 0, 1), Some(1));
        // A2 at ζ3: q_ii = ζ3, q_ij q_ji = ζ3^{-1} → order 2
        let a2 = BraidedVS::diagonal(&[
            vec![RootOfUnity::primitive(3), RootOfUnity::new(-1, 3)],
            vec![RootOfUnity::one(), RootOfUnity::primitive(3)],
        ])
        .unwrap();
        assert_eq!(adjoint_order(&a2, 0, 1), Some(2));
        // q_ii = −1, q_ij q_ji = −1 → order 2
        let v2 = BraidedVS::diagonal(&[
            vec![RootOfUnity::minus_one(), RootOfUnity::minus_one()],
            vec![RootOfUnity::one(), RootOfUnity::minus_one()],
        ])
        .unwrap();
        assert_eq!(adjoint_order(&v2, 0, 1), Some(2));
    }

    fn sl2_quotient_vs(ell: u64) -> BraidedVS {
        // quotient cocycle with Q([χ]) = ζ_{2ℓ} on Z_ℓ, degree element 2
        let g = FiniteAbelianGroup::cyclic(ell);
        let q = QuadraticForm::new(g.clone(), vec![RootOfUnity::new(1, 2 * ell)], Default::default())
            .unwrap();
        let c = cocycle_from_qform(&q);
        BraidedVS::new(c, vec![vec![ell - 2]])
    }

    #[test]
    fn a_coeff_identities() {
        let v = sl2_quotient_vs(4);
        // identity (1): a_{k,l+m} a_{l,m} / (a_{k+l,m} a_{k,l}) = ω(k,l,m)^{-1}
        for k in 0..=5u64 {
            for l in 0..=5u64 {
                assert!(a_coeff(&v, 0, k, 0).is_one());
                for m in 0..=5u64 {
                    let lhs = a_coeff(&v, 0, k, l + m)
                        .mul(&a_coeff(&v, 0, l, m))
                        .mul(&a_coeff(&v, 0, k + l, m).inv())
                        .mul(&a_coeff(&v, 0, k, l).inv());
                    let rhs = v
                        .cocycle
                        .omega(&v.deg_scale(0, k as i64), &v.deg_scale(0, l as i64), &v.deg_scale(0, m as i64))
                        .inv();
                    assert_eq!(lhs, rhs);
                }
                // identity (2)
                let q = v.q(0, 0);
                let lhs = a_coeff(&v, 0, k, l);
                let rhs = v
                    .cocycle
                    .sigma(&v.deg_scale(0, k as i64), &v.deg_scale(0, l as i64))
                    .mul(&q.pow(-((k * l) as i64)))
                    .mul(&a_coeff(&v, 0, l, k));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn coproduct_coeffs_match_recursion() {
        for ell in [4u64, 6] {
            let v = sl2_quotient_vs(ell);
            for n in 0..=4u64 {
                let closed = coproduct_coeffs(&v, 0, n);
                let rec = coproduct_coeffs_recursive(&v, 0, n);
                for k in 0..=n as usize {
                    assert!(closed[k].eq(&rec[k]), "f_{n}({k}) at ell={ell}");
                }
                assert!(closed[0].eq(&CycloNum::one()));
                assert!(closed[n as usize].eq(&CycloNum::one()));
            }
        }
    }

    #[test]
    fn mu_coeffs_match_free_oracle() {
        // rank 2 over a group with nontrivial ω
        let g = FiniteAbelianGroup::new(vec![4, 4]);
        let q = QuadraticForm::new(
            g.clone(),
            vec![RootOfUnity::new(1, 8), RootOfUnity::new(3, 8)],
            [((0, 1), RootOfUnity::new(1, 4))].into(),
        )
        .unwrap();
        let c = cocycle_from_qform(&q);
        let v = BraidedVS::new(c, vec![vec![1, 0], vec![0, 1]]);
        for n in 1..=4u64 {
            let closed = mu_coeffs(&v, 0, 1, n);
            let oracle = mu_coeffs_oracle(&v, 0, 1, n);
            for k in 0..=n as usize {
                assert!(
                    closed[k].eq(&oracle[k]),
                    "μ_{n}({k}): closed {} vs oracle {}",
                    closed[k],
                    oracle[k]
                );
            }
        }
        // endpoint checks: μ_1 = (−q_ij, 1)
        let mu1 = mu_coeffs(&v, 0, 1, 1);
        assert!(mu1[1].eq(&CycloNum::one()));
        assert!(mu1[0].eq(&v.q(0, 1).to_cyclo().neg()));
    }

    #[test]
    fn braid_relations_hold() {
        let g = FiniteAbelianGroup::new(vec![4]);
        let q = QuadraticForm::new(g.clone(), vec![RootOfUnity::new(1, 8)], Default::default()).unwrap();
        let v = BraidedVS::new(cocycle_from_qform(&q), vec![vec![1], vec![2], vec![3]]);
        for n in 2..=4usize {
            let blocks = words_by_block(3, n);
            for (_, words) in blocks {
                for w in words {
                    for i in 0..n.saturating_sub(2) {
                        // σ_i σ_{i+1} σ_i = σ_{i+1} σ_i σ_{i+1}
                        let path = |seq: &[usize]| {
                            let mut c = RootOfUnity::one();
                            let mut cur = w.clone();
                            for &s in seq {
                                let (cc, nx) = braid_generator(&v, &cur, s);
                                c = c.mul(&cc);
                                cur = nx;
                            }
                            (c, cur)
                        };
                        assert_eq!(path(&[i, i + 1, i]), path(&[i + 1, i, i + 1]));
                    }
                    for i in 0..n.saturating_sub(3) {
                        assert_eq!(path2(&v, &w, &[i, i + 2]), path2(&v, &w, &[i + 2, i]));
                    }
                }
            }
        }
    }

    fn path2(v: &BraidedVS, w: &[u8], seq: &[usize]) -> (RootOfUnity, Word) {
        let mut c = RootOfUnity::one();
        let mut cur = w.to_vec();
        for &s in seq {
            let (cc, nx) = braid_generator(v, &cur, s);
            c = c.mul(&cc);
            cur = nx;
        }
        (c, cur)
    }

    #[test]
    fn matsumoto_reduced_word_independent() {
        let g = FiniteAbelianGroup::new(vec![8]);
        let q = QuadraticForm::new(g.clone(), vec![RootOfUnity::new(1, 16)], Default::default()).unwrap();
        let v = BraidedVS::new(cocycle_from_qform(&q), vec![vec![1], vec![3], vec![5], vec![7]]);
        for n in 2..=4usize {
            for (perm, _) in permutations_with_reduced_words(n) {
                let words = all_reduced_words(&perm);
                let w: Word = (0..n as u8).collect();
                let results: std::collections::BTreeSet<_> = words
                    .iter()
                    .map(|red| matsumoto_apply(&v, red, &w))
                    .collect();
                assert_eq!(results.len(), 1, "permutation {perm:?} lift depends on the word");
            }
        }
    }

    #[test]
    fn rank1_wor_dims() {
        // q of order m → graded dims 1,1,…,1 (m of them), total m
        for m in 2..=8u64 {
            let v = rank1(RootOfUnity::primitive(m));
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
            assert_eq!(total as u64, m);
            assert_eq!(nilpotency_order(&v, 0), Some(m));
        }
    }

    #[test]
    fn shuffle_degree_one() {
        // trivial braiding: x*y = xy + yx
        let v = BraidedVS::diagonal(&[vec![RootOfUnity::one(); 2], vec![RootOfUnity::one(); 2]])
            .unwrap();
        let x: FreeElt = [(vec![0u8], CycloNum::one())].into();
        let y: FreeElt = [(vec![1u8], CycloNum::one())].into();
        let p = shuffle_product(&v, &x, &y);
        assert_eq!(p.len(), 2);
        assert!(p[&vec![0u8, 1]].eq(&CycloNum::one()));
        assert!(p[&vec![1u8, 0]].eq(&CycloNum::one()));
        // q-braiding: x*y = xy + σ(x,y) yx
        let q = RootOfUnity::primitive(4);
        let vq = BraidedVS::diagonal(&[
            vec![RootOfUnity::one(), q],
            vec![RootOfUnity::one(), RootOfUnity::one()],
        ])
        .unwrap();
        let p = shuffle_product(&vq, &x, &y);
        assert!(p[&vec![1u8, 0]].eq(&q.to_cyclo()));
    }

    #[test]
    fn shuffle_associative_with_omega() {
        let v = sl2_quotient_vs(4);
        let x: FreeElt = [(vec![0u8], CycloNum::one())].into();
        let xy = shuffle_product(&v, &x, &x);
        let l = shuffle_product(&v, &xy, &x);
        let r = shuffle_product(&v, &x, &shuffle_product(&v, &x, &x));
        for (w, c) in &l {
            assert!(r.get(w).map(|c2| c2.eq(c)).unwrap_or(c.is_zero()));
        }
        assert_eq!(l.len(), r.len());
    }

    #[test]
    fn nichols_algebra_rank1() {
        for ell in [4u64, 6] {
            let v = sl2_quotient_vs(ell);
            let alg = NicholsAlgebra::build(&v).unwrap();
            assert_eq!(alg.dim() as u64, ell / 2);
            // products: F^k F^l = a_{k,l} F^{k+l}
            let nil = ell / 2;
            for k in 0..nil as usize {
                for l in 0..nil as usize {
                    let prod = alg.mul_basis(k, 0, l, 0);
                    if (k + l) as u64 >= nil {
                        assert!(prod.is_empty());
                    } else {
                        assert_eq!(prod.len(), 1);
                        assert!(prod[0]
                            .1
                            .eq(&a_coeff(&v, 0, k as u64, l as u64).to_cyclo()));
                    }
                }
            }
            // coproduct structure constants reproduce f_n(k)
            for n in 1..nil as usize {
                for k in 0..=n {
                    let cps = alg.coproduct_basis(n, 0, k);
                    let expect = coproduct_coeffs(&v, 0, n as u64);
                    assert_eq!(cps.len(), 1);
                    assert!(cps[0].1.eq(&expect[k]), "deconcat vs closed form at ({n},{k})");
                }
            }
        }
    }

    #[test]
    fn nichols_a2_dimension_27() {
        let z3 = RootOfUnity::primitive(3);
        let v = BraidedVS::diagonal(&[
            vec![z3, z3.inv()],
            vec![RootOfUnity::one(), z3],
        ])
        .unwrap();
        let alg = NicholsAlgebra::build(&v).unwrap();
        assert_eq!(alg.dim(), 27);
    }

    #[test]
    fn relation_orders_omega_independent() {
        // same σ under two cocycles with different ω: orders agree
        let g = FiniteAbelianGroup::cyclic(4);
        let q = QuadraticForm::new(g.clone(), vec![RootOfUnity::new(1, 8)], Default::default()).unwrap();
        let c1 = cocycle_from_qform(&q);
        let kappa = crate::qform::TwoCochain::from_fn(&g, |a, b| {
            if a[0] == 0 || b[0] == 0 {
                RootOfUnity::one()
            } else {
                RootOfUnity::new((a[0] * b[0]) as i64, 8)
            }
        });
        let c2 = crate::qform::apply_coboundary(&c1, &kappa);
        // κ-twist changes σ; to keep σ fixed and vary ω, use cocycles with
        // the same σ-table: compare c1 against c1 with ω multiplied by a
        // σ-preserving coboundary (symmetric κ)
        let sym = crate::qform::TwoCochain::from_fn(&g, |a, b| {
            RootOfUnity::new((a[0] * b[0] * (a[0] + b[0])) as i64, 8)
        });
        let c3 = crate::qform::apply_coboundary(&c1, &sym);
        let _ = c2;
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(c1.sigma(&a, &b), c3.sigma(&a, &b), "symmetric κ must fix σ");
            }
        }
        let v1 = BraidedVS::new(c1, vec![vec![1], vec![2]]);
        let v3 = BraidedVS::new(c3, vec![vec![1], vec![2]]);
        assert_eq!(nilpotency_order(&v1, 0), nilpotency_order(&v3, 0));
        assert_eq!(nilpotency_order(&v1, 1), nilpotency_order(&v3, 1));
        assert_eq!(adjoint_order(&v1, 0, 1), adjoint_order(&v3, 0, 1));
    }
}
