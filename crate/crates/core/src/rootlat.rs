//! Root-system data for simple Lie algebras, lattice arithmetic in the
//! fundamental-weight basis, the centralizer sublattice, the Cartan group
//! G = Λ/Λ′, the R₀ bicharacter, and the maximal-divisibility datum.

use crate::abgroup::{Bihomomorphism, Elt, FiniteAbelianGroup};
use crate::cyclo::RootOfUnity;
use crate::modularize;
use crate::zlin;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl RootType {
    pub fn from_char(c: char) -> Result<RootType> {
        Ok(match c.to_ascii_uppercase() {
            'A' => RootType::A,
            'B' => RootType::B,
            'C' => RootType::C,
            'D' => RootType::D,
            'E' => RootType::E,
            'F' => RootType::F,
            'G' => RootType::G,
            other => return Err(Error::Invalid(format!("unknown root system type {other}"))),
        })
    }
}

/// Irreducible root system with Cartan matrix a[i][j] = (α_i, α_j^∨), root
/// lengths d_i = (α_i,α_i)/2 normalized so that short roots have d = 1, and
/// the rational Gram matrix of the fundamental weights.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub rtype: RootType,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub d: Vec<u64>,
    /// (λ_i, λ_j), exact
    pub gram_lambda: Vec<Vec<BigRational>>,
}

impl RootSystem {
    pub fn new(rtype: RootType, rank: usize) -> Result<Self> {
        if rank == 0 || rank > 8 {
            return Err(Error::Invalid("supported ranks are 1..=8".into()));
        }
        let n = rank;
        let chain = |n: usize| -> Vec<Vec<i64>> {
            let mut a = vec![vec![0i64; n]; n];
            for i in 0..n {
                a[i][i] = 2;
                if i + 1 < n {
                    a[i][i + 1] = -1;
                    a[i + 1][i] = -1;
                }
            }
            a
        };
        let (cartan, d): (Vec<Vec<i64>>, Vec<u64>) = match (rtype, n) {
            (RootType::A, _) => (chain(n), vec![1; n]),
            (RootType::B, 1) => (chain(1), vec![1]),
            (RootType::B, _) => {
                let mut a = chain(n);
                a[n - 2][n - 1] = -2;
                let mut d = vec![2; n];
                d[n - 1] = 1;
                (a, d)
            }
            (RootType::C, 1) => (chain(1), vec![1]),
            (RootType::C, _) => {
                let mut a = chain(n);
                a[n - 1][n - 2] = -2;
                a[n - 2][n - 1] = -1;
                let mut d = vec![1; n];
                d[n - 1] = 2;
                (a, d)
            }
            (RootType::D, n) if n >= 3 => {
                let mut a = chain(n - 1);
                for row in &mut a {
                    row.push(0);
                }
                a.push(vec![0; n]);
                a[n - 1][n - 1] = 2;
                a[n - 3][n - 1] = -1;
                a[n - 1][n - 3] = -1;
                (a, vec![1; n])
            }
            (RootType::E, n) if (6..=8).contains(&n) => {
                // Bourbaki labelling: node 2 attaches to node 4 of the chain
                // 1-3-4-5-6(-7)(-8)
                let mut a = vec![vec![0i64; n]; n];
                for i in 0..n {
                    a[i][i] = 2;
                }
                let mut link = |i: usize, j: usize| {
                    a[i][j] = -1;
                    a[j][i] = -1;
                };
                link(0, 2);
                link(2, 3);
                link(1, 3);
                link(3, 4);
                link(4, 5);
                if n >= 7 {
                    link(5, 6);
                }
                if n >= 8 {
                    link(6, 7);
                }
                (a, vec![1; n])
            }
            (RootType::F, 4) => (
                vec![
                    vec![2, -1, 0, 0],
                    vec![-1, 2, -2, 0],
                    vec![0, -1, 2, -1],
                    vec![0, 0, -1, 2],
                ],
                vec![2, 2, 1, 1],
            ),
            (RootType::G, 2) => (vec![vec![2, -1], vec![-3, 2]], vec![1, 3]),
            _ => {
                return Err(Error::Invalid(format!(
                    "no irreducible system {rtype:?}{n}"
                )))
            }
        };
        // symmetry of (α_i, α_j) = d_j a_ij and positive definiteness
        for i in 0..n {
            for j in 0..n {
                if cartan[i][j] * d[j] as i64 != cartan[j][i] * d[i] as i64 {
                    return Err(Error::Invalid("Cartan data fails d-symmetrization".into()));
                }
            }
        }
        let a_rat: Vec<Vec<BigRational>> = cartan
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from(BigInt::from(x))).collect())
            .collect();
        let a_inv = zlin::rational_inverse(&a_rat)
            .ok_or_else(|| Error::Invalid("Cartan matrix is singular".into()))?;
        let mut gram_lambda = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                gram_lambda[i][j] =
                    &a_inv[j][i] * BigRational::from(BigInt::from(d[i] as i64));
            }
        }
        for i in 0..n {
            for j in 0..n {
                assert_eq!(gram_lambda[i][j], gram_lambda[j][i], "Gram must be symmetric");
            }
        }
        let rs = RootSystem { rtype, rank, cartan, d, gram_lambda };
        assert!(rs.positive_definite(), "Killing form must be positive definite");
        Ok(rs)
    }

    fn positive_definite(&self) -> bool {
        // leading principal minors of the root Gram matrix
        let n = self.rank;
        let mut g = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                g[i][j] = BigRational::from(BigInt::from(self.cartan[i][j] * self.d[j] as i64));
            }
        }
        for k in 1..=n {
            let sub: Vec<Vec<BigRational>> =
                (0..k).map(|i| (0..k).map(|j| g[i][j].clone()).collect()).collect();
            if det_rational(&sub) <= BigRational::zero() {
                return false;
            }
        }
        true
    }

    /// (x, y) for x, y in fundamental-weight coordinates (rational vectors).
    pub fn pair(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let mut s = BigRational::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += &x[i] * &self.gram_lambda[i][j] * &y[j];
            }
        }
        s
    }

    pub fn fundamental_group(&self) -> Result<CartanGroup> {
        cartan_group(&weight_lattice(self), &root_lattice(self), self)
    }
}

fn det_rational(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = BigRational::from(BigInt::from(1));
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(col, p);
            det = -det;
        }
        det *= a[col][col].clone();
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

/// Lattice in the fundamental-weight basis: generators are `rows / den`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    pub den: u64,
    pub rows: Vec<Vec<i64>>,
}

impl Lattice {
    pub fn rank_ambient(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn coords(&self, row: usize) -> Vec<BigRational> {
        self.rows[row]
            .iter()
            .map(|&x| BigRational::new(BigInt::from(x), BigInt::from(self.den)))
            .collect()
    }

    pub fn scale(&self, k: i64) -> Lattice {
        Lattice {
            den: self.den,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|&x| x * k).collect())
                .collect(),
        }
    }

    /// Independent basis rows via Smith reduction.
    pub fn reduced(&self) -> Lattice {
        let a = zlin::mat_from_i64(&self.rows);
        let s = zlin::smith(&a);
        let vinv = integer_inverse(&s.v);
        let n = self.rank_ambient();
        let mut rows = vec![];
        for i in 0..self.rows.len().min(n) {
            if i < s.d.len() && !s.d[i][i].is_zero() {
                let di = s.d[i][i].to_i64().expect("small invariant factor");
                let row: Vec<i64> = (0..n)
                    .map(|j| di * vinv[i][j].to_i64().expect("small basis entry"))
                    .collect();
                rows.push(row);
            }
        }
        Lattice { den: self.den, rows }
    }

    pub fn contains(&self, x_num: &[i64], x_den: u64) -> bool {
        let d = (self.den as i64).lcm(&(x_den as i64));
        let rows: Vec<Vec<i64>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&v| v * (d / self.den as i64)).collect())
            .collect();
        let x: Vec<BigInt> = x_num
            .iter()
            .map(|&v| BigInt::from(v * (d / x_den as i64)))
            .collect();
        zlin::solve_left(&zlin::mat_from_i64(&rows), &x).is_some()
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.rows.iter().all(|r| other.contains(r, self.den))
    }

    pub fn equals(&self, other: &Lattice) -> bool {
        self.is_sublattice_of(other) && other.is_sublattice_of(self)
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        let d = (self.den as i64).lcm(&(other.den as i64)) as u64;
        let a: Vec<Vec<i64>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&v| v * (d / self.den) as i64).collect())
            .collect();
        let b: Vec<Vec<i64>> = other
            .rows
            .iter()
            .map(|r| r.iter().map(|&v| v * (d / other.den) as i64).collect())
            .collect();
        // x = c_a·A = c_b·B: kernel of [A; -B] stacked as columns of unknowns
        let n = self.rank_ambient();
        let mut stacked: Vec<Vec<i64>> = a.clone();
        stacked.extend(b.iter().map(|r| r.iter().map(|&v| -v).collect::<Vec<i64>>()));
        let ker = zlin::left_kernel(&zlin::mat_from_i64(&stacked));
        let rows: Vec<Vec<i64>> = ker
            .iter()
            .map(|coef| {
                (0..n)
                    .map(|j| {
                        let mut s = BigInt::zero();
                        for (i, arow) in a.iter().enumerate() {
                            s += &coef[i] * BigInt::from(arow[j]);
                        }
                        s.to_i64().expect("intersection coefficient fits i64")
                    })
                    .collect()
            })
            .collect();
        Lattice { den: d, rows }.reduced()
    }
}

fn integer_inverse(v: &zlin::Mat) -> Vec<Vec<BigInt>> {
    let n = v.len();
    let rat: Vec<Vec<BigRational>> = v
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from(x.clone())).collect())
        .collect();
    let inv = zlin::rational_inverse(&rat).expect("unimodular matrix");
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    assert!(inv[i][j].is_integer(), "inverse of unimodular must be integral");
                    inv[i][j].to_integer()
                })
                .collect()
        })
        .collect()
}

pub fn root_lattice(rs: &RootSystem) -> Lattice {
    Lattice { den: 1, rows: rs.cartan.clone() }
}

pub fn weight_lattice(rs: &RootSystem) -> Lattice {
    let n = rs.rank;
    Lattice {
        den: 1,
        rows: (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect(),
    }
}

/// Λ_R^∨: Z-span of the coroots α_i/d_i.
pub fn coroot_lattice(rs: &RootSystem) -> Lattice {
    let den = rs.d.iter().fold(1u64, |a, &d| a.lcm(&d));
    Lattice {
        den,
        rows: rs
            .cartan
            .iter()
            .zip(&rs.d)
            .map(|(row, &d)| row.iter().map(|&x| x * (den / d) as i64).collect())
            .collect(),
    }
}

/// Λ_W^∨: Z-span of the fundamental dominant coweights λ_i/d_i.
pub fn coweight_lattice(rs: &RootSystem) -> Lattice {
    let n = rs.rank;
    let den = rs.d.iter().fold(1u64, |a, &d| a.lcm(&d));
    Lattice {
        den,
        rows: (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { (den / rs.d[i]) as i64 } else { 0 })
                    .collect()
            })
            .collect(),
    }
}

/// Λ′ = { α ∈ Λ_R : q^{(α,ν)} = 1 for all ν ∈ Λ }, with q of order ℓ.
pub fn centralizer_lattice(rs: &RootSystem, lambda: &Lattice, ell: u64) -> Result<Lattice> {
    let n = rs.rank;
    // pairing of α_i against the generators of Λ must be ℓ-integral
    let mut p = vec![vec![0i64; lambda.rows.len()]; n];
    for i in 0..n {
        let alpha: Vec<BigRational> = rs.cartan[i]
            .iter()
            .map(|&x| BigRational::from(BigInt::from(x)))
            .collect();
        for (j, _) in lambda.rows.iter().enumerate() {
            let v = rs.pair(&alpha, &lambda.coords(j));
            if !v.is_integer() {
                return Err(Error::Invalid(format!(
                    "pairing (α_{i}, ν_{j}) = {v} is not integral"
                )));
            }
            p[i][j] = v.to_integer().to_i64().expect("small pairing");
        }
    }
    let a = zlin::mat_from_i64(&p);
    let moduli = vec![BigInt::from(ell); lambda.rows.len()];
    let ker = zlin::left_kernel_mod(&a, &moduli);
    // kernel rows are coefficient vectors against the simple roots
    let rows: Vec<Vec<i64>> = ker
        .iter()
        .map(|c| {
            (0..n)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for (i, crow) in c.iter().enumerate() {
                        s += crow * BigInt::from(rs.cartan[i][j]);
                    }
                    s.to_i64().expect("centralizer coefficient fits i64")
                })
                .collect()
        })
        .collect();
    Ok(Lattice { den: 1, rows }.reduced())
}

/// Quotient Λ/Λ′ in invariant-factor form with the projection map and
/// generator lifts back into Λ.
#[derive(Clone, Debug)]
pub struct CartanGroup {
    pub group: FiniteAbelianGroup,
    /// reduced basis of Λ
    pub lambda_basis: Lattice,
    /// map: coefficients against lambda_basis → quotient exponents
    proj: Vec<Vec<i64>>,
    /// lifts of the quotient generators into Λ (rows over lambda_basis.den)
    pub lifts: Vec<Vec<i64>>,
}

impl CartanGroup {
    /// Project a lattice element (num/den in λ-coordinates) to the quotient.
    pub fn project(&self, num: &[i64], den: u64) -> Result<Elt> {
        let basis = &self.lambda_basis;
        let d = (basis.den as i64).lcm(&(den as i64));
        let rows: Vec<Vec<i64>> = basis
            .rows
            .iter()
            .map(|r| r.iter().map(|&v| v * d / basis.den as i64).collect())
            .collect();
        let x: Vec<BigInt> = num.iter().map(|&v| BigInt::from(v * d / den as i64)).collect();
        let c = zlin::solve_left(&zlin::mat_from_i64(&rows), &x)
            .ok_or_else(|| Error::Invalid("element is not in Λ".into()))?;
        let k = self.group.rank();
        let mut out = vec![0i64; k];
        for (i, ci) in c.iter().enumerate() {
            let ci = ci.to_i64().expect("small coefficient");
            for j in 0..k {
                out[j] += ci * self.proj[i][j];
            }
        }
        Ok(self.group.reduce(&out))
    }
}

pub fn cartan_group(lambda: &Lattice, lambda_prime: &Lattice, _rs: &RootSystem) -> Result<CartanGroup> {
    let basis = lambda.reduced();
    if !lambda_prime.is_sublattice_of(&basis) {
        return Err(Error::Invalid("Λ′ is not a sublattice of Λ".into()));
    }
    let k = basis.rows.len();
    // coordinates of Λ′ generators against the Λ-basis
    let d = (basis.den as i64).lcm(&(lambda_prime.den as i64));
    let rows: Vec<Vec<i64>> = basis
        .rows
        .iter()
        .map(|r| r.iter().map(|&v| v * d / basis.den as i64).collect())
        .collect();
    let amat = zlin::mat_from_i64(&rows);
    let mut coords: Vec<Vec<i64>> = vec![];
    for pr in &lambda_prime.rows {
        let x: Vec<BigInt> = pr
            .iter()
            .map(|&v| BigInt::from(v * d / lambda_prime.den as i64))
            .collect();
        let c = zlin::solve_left(&amat, &x).expect("sublattice coordinates");
        coords.push(c.iter().map(|v| v.to_i64().expect("small coordinate")).collect());
    }
    let s = zlin::smith(&zlin::mat_from_i64(&coords));
    let vinv = integer_inverse(&s.v);
    let mut moduli = vec![];
    let mut keep: Vec<usize> = vec![];
    for i in 0..k {
        let di = if i < s.d.len() && i < s.d.first().map_or(0, |r| r.len()) {
            s.d[i][i].to_u64().unwrap_or(0)
        } else {
            0
        };
        if di == 0 {
            return Err(Error::Invalid("Λ/Λ′ is not finite".into()));
        }
        if di > 1 {
            moduli.push(di);
            keep.push(i);
        }
    }
    let group = FiniteAbelianGroup::new(moduli);
    // projection: coefficient vector c against basis ↦ (c·v)_keep mod moduli
    let mut proj = vec![vec![0i64; keep.len()]; k];
    for r in 0..k {
        for (jj, &c) in keep.iter().enumerate() {
            proj[r][jj] = s.v[r][c].to_i64().expect("small projection entry");
        }
    }
    // lifts: abstract generator j corresponds to row j of v^{-1} in basis coords
    let mut lifts = vec![];
    for &c in &keep {
        let n = basis.rank_ambient();
        let mut lift = vec![0i64; n];
        for bi in 0..k {
            let coeff = vinv[c][bi].to_i64().expect("small lift entry");
            for j in 0..n {
                lift[j] += coeff * basis.rows[bi][j];
            }
        }
        lifts.push(lift);
    }
    Ok(CartanGroup { group, lambda_basis: basis, proj, lifts })
}

/// Lattice-level input for u_q(g, Λ) with its R₀ bicharacter data.
pub struct QuantumGroupDatum {
    pub rs: RootSystem,
    pub ell: u64,
    pub lambda: Lattice,
    pub lambda_prime: Lattice,
    pub cartan: CartanGroup,
    /// f(μ,ν) = q^{−(μ,ν)} g([μ],[ν]) on G × G
    pub f: Bihomomorphism,
    pub nondegenerate: bool,
}

/// Build the quantum-group datum for Λ with a sign twist g given by a
/// bicharacter on the fundamental-group quotient H = Λ/Λ_R.
pub fn quantum_group_datum(
    rs: &RootSystem,
    ell: u64,
    lambda: &Lattice,
    g_twist: Option<&Bihomomorphism>,
) -> Result<QuantumGroupDatum> {
    let lr = root_lattice(rs);
    if !lr.is_sublattice_of(lambda) || !lambda.is_sublattice_of(&weight_lattice(rs)) {
        return Err(Error::Invalid("need Λ_R ⊆ Λ ⊆ Λ_W".into()));
    }
    let lambda_prime = centralizer_lattice(rs, lambda, ell)?;
    let cartan = cartan_group(lambda, &lambda_prime, rs)?;
    let h = cartan_group(lambda, &lr, rs)?;
    if let Some(gt) = g_twist {
        if gt.group != h.group {
            return Err(Error::Invalid(format!(
                "g-twist lives on {:?}, fundamental group is {:?}",
                gt.group, h.group
            )));
        }
    }
    let f = r0_bicharacter(rs, ell, &cartan, &h, g_twist)?;
    let nondegenerate = modularize::f_nondegenerate(&f);
    Ok(QuantumGroupDatum {
        rs: rs.clone(),
        ell,
        lambda: lambda.clone(),
        lambda_prime,
        cartan,
        f,
        nondegenerate,
    })
}

/// f(μ,ν) = q^{−(μ,ν)}·g([μ],[ν]) as a bicharacter on G = Λ/Λ′.
fn r0_bicharacter(
    rs: &RootSystem,
    ell: u64,
    cartan: &CartanGroup,
    h: &CartanGroup,
    g_twist: Option<&Bihomomorphism>,
) -> Result<Bihomomorphism> {
    let g = &cartan.group;
    let n = g.rank();
    let value = |a: &[i64], b: &[i64]| -> Result<RootOfUnity> {
        let ar: Vec<BigRational> = a.iter().map(|&x| BigRational::from(BigInt::from(x))).collect();
        let br: Vec<BigRational> = b.iter().map(|&x| BigRational::from(BigInt::from(x))).collect();
        let mut pairing = rs.pair(&ar, &br);
        let den = BigInt::from(cartan.lambda_basis.den * cartan.lambda_basis.den);
        pairing /= BigRational::from(den);
        // q^{-(μ,ν)} with q = ζ_ℓ: exponent −(μ,ν)/ℓ of a full turn
        let num = -(pairing.numer().clone());
        let full_den = pairing.denom() * BigInt::from(ell);
        let q_part = RootOfUnity::new(
            num.to_i64().ok_or_else(|| Error::Invalid("pairing exponent overflow".into()))?,
            full_den.to_u64().ok_or_else(|| Error::Invalid("pairing denominator overflow".into()))?,
        );
        let tw = match g_twist {
            Some(gt) => {
                let ha = h.project(a, cartan.lambda_basis.den)?;
                let hb = h.project(b, cartan.lambda_basis.den)?;
                gt.eval(&ha, &hb)
            }
            None => RootOfUnity::one(),
        };
        Ok(q_part.mul(&tw))
    };
    let mut values = vec![vec![RootOfUnity::one(); n]; n];
    for i in 0..n {
        for j in 0..n {
            values[i][j] = value(&cartan.lifts[i], &cartan.lifts[j])?;
        }
    }
    // well-definedness on G: f(m_i·lift_i, lift_j) must be trivial
    for i in 0..n {
        for j in 0..n {
            let scaled: Vec<i64> = cartan.lifts[i]
                .iter()
                .map(|&x| x * g.moduli[i] as i64)
                .collect();
            let v = value(&scaled, &cartan.lifts[j])?;
            let w = value(&cartan.lifts[j], &scaled)?;
            if !v.is_one() || !w.is_one() {
                return Err(Error::Invalid(format!(
                    "q-exponents not divisible: f is not well-defined on G at generator {i}"
                )));
            }
        }
    }
    Bihomomorphism::new(g.clone(), values)
}

/// Dual braiding on Ĝ (re-export of the group-level transform).
pub fn sigma_from_f(f: &Bihomomorphism) -> Result<Bihomomorphism> {
    modularize::sigma_from_f(f)
}

/// Maximal-divisibility datum: ℓ = 2p with d_i | p, Λ = Λ_W, Λ′ = 2p·Λ_R^∨,
/// trivial g. Verifies Λ′ against the centralizer computation and checks
/// |Rad(σσᵀ)| = 2^rank.
pub fn cft_datum(rs: &RootSystem, p: u64) -> Result<QuantumGroupDatum> {
    for (i, &d) in rs.d.iter().enumerate() {
        if p % d != 0 {
            return Err(Error::Invalid(format!(
                "divisibility fails: 2d_{i} = {} does not divide 2p = {}",
                2 * d,
                2 * p
            )));
        }
    }
    let ell = 2 * p;
    let lw = weight_lattice(rs);
    let datum = quantum_group_datum(rs, ell, &lw, None)?;
    let expected = coroot_lattice(rs).scale(ell as i64);
    if !datum.lambda_prime.equals(&expected) {
        return Err(Error::Verification(
            "Λ′ differs from 2p·Λ_R^∨ in the divisible case".into(),
        ));
    }
    let sigma = modularize::sigma_from_f(&datum.f)?;
    let b = {
        let n = sigma.group.rank();
        let values = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| sigma.values[i][j].mul(&sigma.values[j][i]))
                    .collect()
            })
            .collect();
        Bihomomorphism { group: sigma.group.clone(), values }
    };
    let t = crate::abgroup::radical(&b);
    if t.order() != 1u64 << rs.rank {
        return Err(Error::Verification(format!(
            "|T| = {} is not 2^rank = {}",
            t.order(),
            1u64 << rs.rank
        )));
    }
    Ok(datum)
}

/// The rank-1 worked example: Λ = Λ_W for A₁ with f_±.
pub fn sl2_datum(ell: u64, plus: bool) -> Result<QuantumGroupDatum> {
    let rs = RootSystem::new(RootType::A, 1)?;
    let lw = weight_lattice(&rs);
    let g_twist = if plus {
        None
    } else {
        let lr = root_lattice(&rs);
        let h = cartan_group(&lw, &lr, &rs)?;
        Some(Bihomomorphism::new(
            h.group.clone(),
            vec![vec![RootOfUnity::minus_one()]],
        )?)
    };
    quantum_group_datum(&rs, ell, &lw, g_twist.as_ref())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_lattices() {
        let rs = RootSystem::new(RootType::A, 1).unwrap();
        // Λ_W' = ℓΛ_R for Λ = Λ_W
        for ell in [3u64, 4, 5, 6] {
            let lp = centralizer_lattice(&rs, &weight_lattice(&rs), ell).unwrap();
            let expect = root_lattice(&rs).scale(ell as i64);
            assert!(lp.equals(&expect), "ell = {ell}");
            // G ≅ Z_{2ℓ}
            let cg = cartan_group(&weight_lattice(&rs), &lp, &rs).unwrap();
            assert_eq!(cg.group.moduli, vec![2 * ell]);
        }
    }

    #[test]
    fn centralizer_weight_lattice_general() {
        // Λ = Λ_W → Λ' = <ℓ/gcd(ℓ,d_i)·α_i>
        for (t, r) in [(RootType::B, 2), (RootType::G, 2), (RootType::A, 3)] {
            let rs = RootSystem::new(t, r).unwrap();
            for ell in [4u64, 6] {
                let lp = centralizer_lattice(&rs, &weight_lattice(&rs), ell).unwrap();
                let rows: Vec<Vec<i64>> = rs
                    .cartan
                    .iter()
                    .zip(&rs.d)
                    .map(|(row, &d)| {
                        let k = (ell / ell.gcd(&d)) as i64;
                        row.iter().map(|&x| x * k).collect()
                    })
                    .collect();
                let expect = Lattice { den: 1, rows };
                assert!(lp.equals(&expect), "{t:?}{r} at ell={ell}");
            }
        }
    }

    #[test]
    fn centralizer_root_lattice_case() {
        // Λ = Λ_R → Λ' = Λ_R ∩ ℓ·Λ_W^∨
        for (t, r, ell) in [(RootType::A, 2, 5u64), (RootType::B, 2, 4), (RootType::A, 1, 6)] {
            let rs = RootSystem::new(t, r).unwrap();
            let lr = root_lattice(&rs);
            let lp = centralizer_lattice(&rs, &lr, ell).unwrap();
            let expect = lr.intersect(&coweight_lattice(&rs).scale(ell as i64));
            assert!(lp.equals(&expect), "{t:?}{r} at ell={ell}");
        }
    }

    #[test]
    fn trivial_quotient() {
        let rs = RootSystem::new(RootType::A, 2).unwrap();
        let lr = root_lattice(&rs);
        let lp = centralizer_lattice(&rs, &lr, 1).unwrap();
        assert!(lp.equals(&lr));
        let cg = cartan_group(&lr, &lp, &rs).unwrap();
        assert_eq!(cg.group.order(), 1);
    }

    #[test]
    fn smith_quotient_diag_2_4() {
        let rs = RootSystem::new(RootType::A, 2).unwrap();
        let lam = weight_lattice(&rs);
        let sub = Lattice { den: 1, rows: vec![vec![2, 0], vec![0, 4]] };
        let cg = cartan_group(&lam, &sub, &rs).unwrap();
        let mut m = cg.group.moduli.clone();
        m.sort();
        assert_eq!(m, vec![2, 4]);
    }

    #[test]
    fn sl2_f_nondegeneracy_table() {
        for ell in [3u64, 4, 5, 6] {
            let plus = sl2_datum(ell, true).unwrap();
            assert!(plus.nondegenerate, "f+ at ell={ell}");
            let minus = sl2_datum(ell, false).unwrap();
            assert_eq!(minus.nondegenerate, ell % 2 == 0, "f- at ell={ell}");
        }
    }

    #[test]
    fn sl2_sigma_value() {
        // σ₊(χ,χ) = f₊(λ,λ)^{-1} = exp(πi/ℓ)
        for ell in [4u64, 6] {
            let datum = sl2_datum(ell, true).unwrap();
            let sigma = sigma_from_f(&datum.f).unwrap();
            assert_eq!(sigma.values[0][0], RootOfUnity::new(1, 2 * ell));
        }
    }

    #[test]
    fn cft_datum_examples() {
        // (A1, p=2): Λ' = 4Λ_R, G = Z8, T ≅ Z2
        let rs = RootSystem::new(RootType::A, 1).unwrap();
        let d = cft_datum(&rs, 2).unwrap();
        assert_eq!(d.cartan.group.moduli, vec![8]);
        // Bn, p=2: Ḡ computed in the acceptance suite; here B2 sanity
        let b2 = RootSystem::new(RootType::B, 2).unwrap();
        let d2 = cft_datum(&b2, 2).unwrap();
        assert_eq!(d2.cartan.group.order(), 16);
        // divisibility failure names the root
        let g2 = RootSystem::new(RootType::G, 2).unwrap();
        assert!(cft_datum(&g2, 2).is_err());
    }
}
