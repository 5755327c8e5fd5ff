//! Integer linear algebra over arbitrary-precision integers: Smith normal
//! form with transforms, kernels and solves modulo mixed moduli, and exact
//! rational matrix inversion.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Mat = Vec<Vec<BigInt>>;

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![BigInt::zero(); c]; r]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

pub fn mat_from_i64(rows: &[Vec<i64>]) -> Mat {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let (ra, ca) = shape(a);
    let (rb, cb) = shape(b);
    assert_eq!(ca, rb, "dimension mismatch in mat_mul");
    let mut out = zeros(ra, cb);
    for i in 0..ra {
        for k in 0..ca {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cb {
                let t = &a[i][k] * &b[k][j];
                out[i][j] += t;
            }
        }
    }
    out
}

pub fn shape(m: &Mat) -> (usize, usize) {
    (m.len(), m.first().map_or(0, |r| r.len()))
}

/// Smith normal form: `u * a * v = d` with `u`, `v` unimodular and `d`
/// diagonal with nonnegative invariant factors d[0] | d[1] | ...
pub struct Smith {
    pub d: Mat,
    pub u: Mat,
    pub v: Mat,
}

pub fn smith(a: &Mat) -> Smith {
    let (rows, cols) = shape(a);
    let mut d = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);

    loop {
        diagonalize(&mut d, &mut u, &mut v);
        // enforce the divisibility chain; a violation is repaired by mixing
        // the offending rows and re-diagonalizing
        let n = rows.min(cols);
        let mut violation = None;
        for i in 0..n.saturating_sub(1) {
            let (x, y) = (&d[i][i], &d[i + 1][i + 1]);
            if !x.is_zero() && !y.is_zero() && !(y % x).is_zero() {
                violation = Some(i);
                break;
            }
        }
        match violation {
            Some(i) => {
                let add: Vec<BigInt> = d[i + 1].clone();
                for (x, y) in d[i].iter_mut().zip(add.iter()) {
                    *x += y;
                }
                let add: Vec<BigInt> = u[i + 1].clone();
                for (x, y) in u[i].iter_mut().zip(add.iter()) {
                    *x += y;
                }
            }
            None => break,
        }
    }

    for i in 0..rows.min(cols) {
        if d[i][i].is_negative() {
            for j in 0..rows {
                let neg = -u[i][j].clone();
                u[i][j] = neg;
            }
            let neg = -d[i][i].clone();
            d[i][i] = neg;
        }
    }
    debug_assert_eq!(mat_mul(&mat_mul(&u, a), &v), d);
    Smith { d, u, v }
}

fn diagonalize(d: &mut Mat, u: &mut Mat, v: &mut Mat) {
    let (rows, cols) = shape(d);
    let mut t = 0usize;
    while t < rows.min(cols) {
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero()
                    && pivot
                        .map(|(pi, pj): (usize, usize)| d[i][j].abs() < d[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(d, t, pj);
        swap_cols(v, t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = div_round(&d[i][t], &d[t][t]);
                if !q.is_zero() {
                    row_sub(d, i, t, &q);
                    row_sub(u, i, t, &q);
                }
                if !d[i][t].is_zero() {
                    d.swap(t, i);
                    u.swap(t, i);
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = div_round(&d[t][j], &d[t][t]);
                if !q.is_zero() {
                    col_sub(d, j, t, &q);
                    col_sub(v, j, t, &q);
                }
                if !d[t][j].is_zero() {
                    swap_cols(d, t, j);
                    swap_cols(v, t, j);
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        t += 1;
    }
}

fn swap_cols(m: &mut Mat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn row_sub(m: &mut Mat, i: usize, j: usize, q: &BigInt) {
    let rj = m[j].clone();
    for (x, y) in m[i].iter_mut().zip(rj.iter()) {
        *x -= q * y;
    }
}

fn col_sub(m: &mut Mat, j: usize, i: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let t = q * &row[i];
        row[j] -= t;
    }
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // nearest-integer division keeps entries small
    let two = BigInt::from(2);
    let (q, r) = (a / b, a % b);
    if &r.abs() * &two > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Basis (as rows) of the integer kernel { x : x * a = 0 }.
pub fn left_kernel(a: &Mat) -> Mat {
    let (rows, _) = shape(a);
    let s = smith(a);
    let rank = (0..s.d.len().min(s.d.first().map_or(0, |r| r.len())))
        .filter(|&i| !s.d[i][i].is_zero())
        .count();
    // x * a = 0  <=>  (x * u^-1) * d * v^-1 = 0 <=> y * d = 0 with x = y * u
    (rank..rows).map(|i| s.u[i].clone()).collect()
}

/// Generators (rows) of { x in Z^n : x * a ≡ 0 (mod moduli[j]) in column j }.
///
/// Returned rows generate the solution set as a subgroup of Z^n; callers
/// typically reduce them into an ambient finite group afterwards.
pub fn left_kernel_mod(a: &Mat, moduli: &[BigInt]) -> Mat {
    let (rows, cols) = shape(a);
    assert_eq!(cols, moduli.len());
    // stack a on top of diag(moduli): kernels of the stacked map, projected
    // to the first block, are exactly the solutions.
    let mut stacked = a.clone();
    for (j, m) in moduli.iter().enumerate() {
        let mut row = vec![BigInt::zero(); cols];
        row[j] = m.clone();
        stacked.push(row);
    }
    let ker = left_kernel(&stacked);
    ker.into_iter().map(|r| r[..rows].to_vec()).collect()
}

/// Solve x * a ≡ b (mod moduli[j] in column j) over the integers.
pub fn solve_left_mod(a: &Mat, b: &[BigInt], moduli: &[BigInt]) -> Option<Vec<BigInt>> {
    let (rows, cols) = shape(a);
    assert_eq!(cols, moduli.len());
    assert_eq!(b.len(), cols);
    let mut stacked = a.clone();
    for (j, m) in moduli.iter().enumerate() {
        let mut row = vec![BigInt::zero(); cols];
        row[j] = m.clone();
        stacked.push(row);
    }
    // solve y * stacked = b; return first `rows` coords of y
    let sol = solve_left(&stacked, b)?;
    Some(sol[..rows].to_vec())
}

/// Solve x * a = b exactly over Z.
pub fn solve_left(a: &Mat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let (rows, cols) = shape(a);
    assert_eq!(b.len(), cols);
    let s = smith(a);
    // x a = b <=> x u^{-1} d = b v ; set y = x u^{-1}: y d = b v
    let bv: Vec<BigInt> = (0..cols)
        .map(|j| (0..cols).map(|k| &b[k] * &s.v[k][j]).sum())
        .collect();
    let mut y = vec![BigInt::zero(); rows];
    for j in 0..cols {
        let dj = if j < rows { s.d[j][j].clone() } else { BigInt::zero() };
        if dj.is_zero() {
            if !bv[j].is_zero() {
                return None;
            }
        } else {
            if (&bv[j] % &dj) != BigInt::zero() {
                return None;
            }
            y[j] = &bv[j] / &dj;
        }
    }
    // x = y u
    let x: Vec<BigInt> = (0..rows)
        .map(|j| (0..rows).map(|k| &y[k] * &s.u[k][j]).sum())
        .collect();
    Some(x)
}

/// Exact inverse of a square rational matrix.
pub fn rational_inverse(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= p.clone();
            inv[col][j] /= p.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &f * &a[col][j];
                a[r][j] -= t;
                let t = &f * &inv[col][j];
                inv[r][j] -= t;
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_diag_2_4() {
        let a = mat_from_i64(&[vec![2, 0], vec![0, 4]]);
        let s = smith(&a);
        assert_eq!(s.d[0][0], BigInt::from(2));
        assert_eq!(s.d[1][1], BigInt::from(4));
    }

    #[test]
    fn smith_divisibility_chain() {
        let a = mat_from_i64(&[vec![4, 0], vec![0, 6]]);
        let s = smith(&a);
        assert_eq!(s.d[0][0], BigInt::from(2));
        assert_eq!(s.d[1][1], BigInt::from(12));
    }

    #[test]
    fn kernel_mod_radical_style() {
        // {a in Z_8 : 2a ≡ 0 mod 8} = <4>
        let a = mat_from_i64(&[vec![2]]);
        let ker = left_kernel_mod(&a, &[BigInt::from(8)]);
        // reduced mod 8, generators must span {0,4}
        let mut resid: Vec<i64> = ker
            .iter()
            .map(|r| {
                let x: BigInt = (&r[0] % 8 + 8) % 8;
                i64::try_from(x).unwrap()
            })
            .collect();
        resid.retain(|&x| x != 0);
        assert!(resid.iter().all(|&x| x == 4));
        assert!(!resid.is_empty());
    }

    #[test]
    fn solve_left_mod_works() {
        // x * [3] ≡ [5] mod 7  => x = 4 (3*4=12≡5)
        let a = mat_from_i64(&[vec![3]]);
        let x = solve_left_mod(&a, &[BigInt::from(5)], &[BigInt::from(7)]).unwrap();
        let r: BigInt = (&x[0] * 3 - 5) % 7;
        assert!(r.is_zero());
    }

    #[test]
    fn rational_inverse_2x2() {
        let two = BigRational::from(BigInt::from(2));
        let one = BigRational::one();
        let m = vec![vec![two.clone(), one.clone()], vec![one.clone(), one.clone()]];
        let inv = rational_inverse(&m).unwrap();
        // m * inv = id
        for i in 0..2 {
            for j in 0..2 {
                let mut s = BigRational::zero();
                for k in 0..2 {
                    s += &m[i][k] * &inv[k][j];
                }
                assert_eq!(s, if i == j { BigRational::one() } else { BigRational::zero() });
            }
        }
    }
}
