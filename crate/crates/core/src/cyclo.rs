//! Exact arithmetic with roots of unity and cyclotomic numbers.
//!
//! `RootOfUnity` is a single root e^{2πi k/N} stored with gcd-reduced (k, N);
//! `CycloNum` is a rational linear combination of N-th roots of unity, i.e.
//! an element of Q(ζ_N) represented in Q[x]/(x^N - 1). Zero tests and
//! equality reduce exactly modulo the cyclotomic polynomial Φ_N; no floating
//! point appears anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// e^{2πi·exp/order} with gcd(exp, order) = 1 (and exp = 0 only for order 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    order: u64,
    exp: u64,
}

impl RootOfUnity {
    pub fn one() -> Self {
        RootOfUnity { order: 1, exp: 0 }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { order: 2, exp: 1 }
    }

    /// e^{2πi·num/den}; `num` may be any integer, `den` > 0.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "root of unity needs positive order");
        let k = num.rem_euclid(den as i64) as u64;
        if k == 0 {
            return RootOfUnity { order: 1, exp: 0 };
        }
        let g = k.gcd(&den);
        RootOfUnity { order: den / g, exp: k / g }
    }

    /// Primitive n-th root ζ_n.
    pub fn primitive(n: u64) -> Self {
        RootOfUnity::new(1, n)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Exponent as a fraction exp/order in lowest terms.
    pub fn frac(&self) -> (u64, u64) {
        (self.exp, self.order)
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        let n = self.order.lcm(&other.order);
        let e = (self.exp as i64) * ((n / self.order) as i64)
            + (other.exp as i64) * ((n / other.order) as i64);
        RootOfUnity::new(e, n)
    }

    pub fn inv(&self) -> RootOfUnity {
        RootOfUnity::new(-(self.exp as i64), self.order)
    }

    pub fn pow(&self, k: i64) -> RootOfUnity {
        let e = (self.exp as i128) * (k as i128);
        RootOfUnity::new((e.rem_euclid(self.order as i128)) as i64, self.order)
    }

    /// Exponent of this root written in μ_m, when its order divides m.
    pub fn exponent_in(&self, m: u64) -> Option<u64> {
        if m % self.order != 0 {
            return None;
        }
        Some(self.exp * (m / self.order) % m.max(1))
    }

    pub fn to_cyclo(&self) -> CycloNum {
        CycloNum::root(self.order, self.exp as i64)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.exp) {
            (1, _) => write!(f, "1"),
            (2, _) => write!(f, "-1"),
            (n, e) => write!(f, "zeta_{}^{}", n, e),
        }
    }
}

/// Cyclotomic polynomial Φ_n as integer coefficients, constant term first.
pub fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    // x^n - 1 divided by the product of Φ_d over proper divisors d | n
    let mut num = vec![BigInt::zero(); (n + 1) as usize];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    num
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let nd = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (i, dc) in den.iter().enumerate() {
            let t = &c * dc;
            rem[k + i] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

/// Element of Q(ζ_N), stored as Σ coeffs[k]·ζ_N^k in Q[x]/(x^N − 1).
#[derive(Clone, Debug)]
pub struct CycloNum {
    level: u64,
    coeffs: BTreeMap<u64, BigRational>,
}

impl CycloNum {
    pub fn zero() -> Self {
        CycloNum { level: 1, coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        CycloNum::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !q.is_zero() {
            coeffs.insert(0, q);
        }
        CycloNum { level: 1, coeffs }
    }

    pub fn from_int(n: i64) -> Self {
        CycloNum::from_rational(BigRational::from(BigInt::from(n)))
    }

    /// ζ_level^exp.
    pub fn root(level: u64, exp: i64) -> Self {
        assert!(level >= 1);
        let mut coeffs = BTreeMap::new();
        coeffs.insert(exp.rem_euclid(level as i64) as u64, BigRational::one());
        CycloNum { level, coeffs }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeffs(&self) -> &BTreeMap<u64, BigRational> {
        &self.coeffs
    }

    fn lift(&self, level: u64) -> CycloNum {
        assert_eq!(level % self.level, 0);
        let f = level / self.level;
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&e, c)| (e * f, c.clone()))
            .collect();
        CycloNum { level, coeffs }
    }

    fn common(a: &CycloNum, b: &CycloNum) -> (CycloNum, CycloNum) {
        let l = a.level.lcm(&b.level);
        (a.lift(l), b.lift(l))
    }

    pub fn add(&self, other: &CycloNum) -> CycloNum {
        let (mut a, b) = CycloNum::common(self, other);
        for (e, c) in b.coeffs {
            let entry = a.coeffs.entry(e).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                a.coeffs.remove(&e);
            }
        }
        a
    }

    pub fn sub(&self, other: &CycloNum) -> CycloNum {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycloNum {
        CycloNum {
            level: self.level,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &CycloNum) -> CycloNum {
        let (a, b) = CycloNum::common(self, other);
        let n = a.level;
        let mut coeffs: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (&ea, ca) in &a.coeffs {
            for (&eb, cb) in &b.coeffs {
                let e = (ea + eb) % n;
                let entry = coeffs.entry(e).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        CycloNum { level: n, coeffs }
    }

    pub fn scale(&self, q: &BigRational) -> CycloNum {
        if q.is_zero() {
            return CycloNum::zero();
        }
        CycloNum {
            level: self.level,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * q)).collect(),
        }
    }

    pub fn mul_root(&self, r: &RootOfUnity) -> CycloNum {
        self.mul(&r.to_cyclo())
    }

    /// Coefficient vector of the canonical remainder modulo Φ_level.
    fn reduced_poly(&self) -> Vec<BigRational> {
        let n = self.level as usize;
        let mut poly = vec![BigRational::zero(); n.max(1)];
        for (&e, c) in &self.coeffs {
            poly[e as usize] += c;
        }
        let phi = cyclotomic_poly(self.level);
        poly_rem_rational(&poly, &phi)
    }

    pub fn is_zero(&self) -> bool {
        if self.coeffs.is_empty() {
            return true;
        }
        self.reduced_poly().iter().all(|c| c.is_zero())
    }

    pub fn eq(&self, other: &CycloNum) -> bool {
        self.sub(other).is_zero()
    }

    pub fn inv(&self) -> Option<CycloNum> {
        // invert in the field Q[x]/Φ_N via the extended euclidean algorithm
        let n = self.level;
        let poly = self.reduced_poly();
        if poly.iter().all(|c| c.is_zero()) {
            return None;
        }
        let phi: Vec<BigRational> = cyclotomic_poly(n)
            .into_iter()
            .map(BigRational::from)
            .collect();
        let (g, _, t) = poly_ext_gcd(&phi, &poly);
        // g is a nonzero constant since Φ_N is irreducible
        assert!(poly_deg(&g) == Some(0), "cyclotomic polynomial not coprime to nonzero element");
        let ginv = g[0].recip();
        let mut inv = CycloNum { level: n, coeffs: BTreeMap::new() };
        for (e, c) in t.iter().enumerate() {
            if !c.is_zero() {
                inv.coeffs.insert(e as u64, c * &ginv);
            }
        }
        Some(inv)
    }

    /// Detect whether this number equals ±ζ^j for some root of unity of
    /// order dividing `self.level` or `2·self.level`.
    pub fn to_root_of_unity(&self) -> Option<RootOfUnity> {
        for n in [self.level, 2 * self.level] {
            for e in 0..n {
                let cand = RootOfUnity::new(e as i64, n);
                if self.eq(&cand.to_cyclo()) {
                    return Some(cand);
                }
            }
        }
        None
    }

    /// Approximate complex value; debugging aid only, never used in contracts.
    pub fn approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (&e, c) in &self.coeffs {
            let t = 2.0 * std::f64::consts::PI * (e as f64) / (self.level as f64);
            let cf = c.to_f64().unwrap_or(f64::NAN);
            re += cf * t.cos();
            im += cf * t.sin();
        }
        (re, im)
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        CycloNum::eq(self, other)
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(e, c)| {
                if *e == 0 {
                    format!("{}", c)
                } else {
                    format!("{}*z{}^{}", c, self.level, e)
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

fn poly_deg(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_rem_rational(num: &[BigRational], den_int: &[BigInt]) -> Vec<BigRational> {
    let den: Vec<BigRational> = den_int.iter().cloned().map(BigRational::from).collect();
    let dd = poly_deg(&den).expect("zero divisor");
    let mut rem = num.to_vec();
    loop {
        let Some(nd) = poly_deg(&rem) else { break };
        if nd < dd {
            break;
        }
        let c = rem[nd].clone() / den[dd].clone();
        for (i, dc) in den.iter().enumerate() {
            let t = &c * dc;
            rem[nd - dd + i] -= t;
        }
    }
    rem.truncate(dd.max(1));
    rem.resize(dd.max(1), BigRational::zero());
    rem
}

/// Extended gcd for rational polynomials: returns (g, s, t) with s·a + t·b = g.
fn poly_ext_gcd(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
    let zero = || vec![BigRational::zero()];
    let one = || vec![BigRational::one()];
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (one(), zero());
    let (mut t0, mut t1) = (zero(), one());
    while poly_deg(&r1).is_some() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        let t = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    (r0, s0, t0)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = poly_deg(b).expect("division by zero polynomial");
    let mut rem = a.to_vec();
    let mut quot = vec![BigRational::zero(); a.len().max(db + 1)];
    loop {
        let Some(da) = poly_deg(&rem) else { break };
        if da < db {
            break;
        }
        let c = rem[da].clone() / b[db].clone();
        quot[da - db] += &c;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            let t = &c * bc;
            rem[da - db + i] -= t;
        }
    }
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = x * y;
            out[i + j] += t;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi_as_i64(n: u64) -> Vec<i64> {
        cyclotomic_poly(n)
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(phi_as_i64(1), vec![-1, 1]);
        assert_eq!(phi_as_i64(4), vec![1, 0, 1]);
        assert_eq!(phi_as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn totient_degree() {
        let totient = |n: u64| (1..=n).filter(|k| k.gcd(&n) == 1).count();
        for n in 1..=128 {
            assert_eq!(cyclotomic_poly(n).len() - 1, totient(n), "deg phi_{}", n);
        }
    }

    #[test]
    fn root_products() {
        let i = RootOfUnity::new(1, 4);
        assert_eq!(i.mul(&i), RootOfUnity::minus_one());
        let z6 = RootOfUnity::primitive(6);
        let z4 = RootOfUnity::primitive(4);
        assert_eq!(z6.mul(&z4), RootOfUnity::new(5, 12));
        for e in 0..12i64 {
            let x = RootOfUnity::new(e, 12);
            assert!(x.mul(&x.inv()).is_one());
        }
    }

    #[test]
    fn geometric_sums_vanish() {
        for n in 2..=24u64 {
            let mut s = CycloNum::zero();
            for j in 0..n {
                s = s.add(&CycloNum::root(n, j as i64));
            }
            assert!(s.is_zero(), "sum of all {}-th roots", n);
        }
        let nonzero = CycloNum::one().add(&CycloNum::root(4, 1));
        assert!(!nonzero.is_zero());
    }

    #[test]
    fn zeta6_equals_one_plus_zeta3() {
        let lhs = CycloNum::root(6, 1);
        let rhs = CycloNum::one().add(&CycloNum::root(3, 1));
        assert!(lhs.eq(&rhs));
    }

    #[test]
    fn root_roundtrip_through_cyclo() {
        for n in 1..=64u64 {
            for j in 0..n.min(20) {
                let r = RootOfUnity::new(j as i64, n);
                let back = r.to_cyclo().to_root_of_unity().unwrap();
                assert_eq!(r, back);
            }
        }
    }

    #[test]
    fn field_inverse() {
        let x = CycloNum::one().add(&CycloNum::root(5, 2));
        let inv = x.inv().unwrap();
        assert!(x.mul(&inv).eq(&CycloNum::one()));
        assert!(CycloNum::zero().inv().is_none());
    }
}
