//! Exact linear algebra over arbitrary-precision integers and rationals.
//!
//! Everything in this module is fraction-free or rational-exact; no floating
//! point is used anywhere in the crate.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type IntVector = Vec<BigInt>;
pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn int_vec(v: &[i64]) -> IntVector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn int_mat(rows: &[&[i64]]) -> IntMatrix {
    rows.iter().map(|r| int_vec(r)).collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn is_identity(m: &IntMatrix) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, e)| if i == j { e.is_one() } else { e.is_zero() })
    })
}

pub fn transpose(m: &IntMatrix) -> IntMatrix {
    if m.is_empty() {
        return Vec::new();
    }
    let rows = m.len();
    let cols = m[0].len();
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let k = if n > 0 { a[0].len() } else { 0 };
    let m = if b.is_empty() { 0 } else { b[0].len() };
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

pub fn mat_vec(m: &IntMatrix, v: &[BigInt]) -> IntVector {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn neg_vec(v: &IntVector) -> IntVector {
    v.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(v: &IntVector) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Divides a nonzero vector by the gcd of its entries, keeping direction.
pub fn primitive(v: &IntVector) -> IntVector {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return v.clone();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clears denominators of a rational vector and reduces to a primitive
/// integer vector with the same direction.
pub fn primitive_from_rational(v: &[BigRational]) -> IntVector {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: IntVector = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitive(&ints)
}

/// Exact determinant by fraction-free Bareiss elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !a[i][k].is_zero());
            match swap {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Rank over the rationals by fraction-free elimination.
pub fn rank(m: &[IntVector]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut a = m.to_vec();
    let mut r = 0;
    for c in 0..cols {
        let pivot = (r..a.len()).find(|&i| !a[i][c].is_zero());
        let Some(p) = pivot else { continue };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let (f1, f2) = (a[r][c].clone(), a[i][c].clone());
                for j in 0..cols {
                    a[i][j] = &a[i][j] * &f1 - &a[r][j] * &f2;
                }
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Row-style Hermite normal form with positive pivots; entries above each
/// pivot are reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_normal_form(m: &[IntVector]) -> Vec<IntVector> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut a = m.to_vec();
    let mut pivot_row = 0;
    for c in 0..cols {
        if pivot_row == a.len() {
            break;
        }
        // Euclidean reduction in column c among rows pivot_row..
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..a.len() {
                if !a[i][c].is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) => {
                            if a[i][c].abs() < a[b][c].abs() {
                                Some(i)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(b) = best else { break };
            a.swap(pivot_row, b);
            if a[pivot_row][c].is_negative() {
                for x in a[pivot_row].iter_mut() {
                    *x = -x.clone();
                }
            }
            let mut done = true;
            for i in pivot_row + 1..a.len() {
                if !a[i][c].is_zero() {
                    let q = a[i][c].div_floor(&a[pivot_row][c]);
                    for j in 0..cols {
                        let t = &a[pivot_row][j] * &q;
                        a[i][j] -= t;
                    }
                    if !a[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[pivot_row][c].is_zero() {
            continue;
        }
        // Reduce entries above the pivot.
        for i in 0..pivot_row {
            if !a[i][c].is_zero() {
                let q = a[i][c].div_floor(&a[pivot_row][c]);
                for j in 0..cols {
                    let t = &a[pivot_row][j] * &q;
                    a[i][j] -= t;
                }
            }
        }
        pivot_row += 1;
    }
    a.truncate(pivot_row);
    a
}

/// Basis of the saturated integer kernel `{x : m x = 0}`.
///
/// Runs row reduction on `[m^T | I]`; rows whose left part vanishes give a
/// basis of the kernel lattice. The result is HNF-reduced for canonicity.
pub fn integer_kernel(m: &IntMatrix) -> Vec<IntVector> {
    let rows = m.len();
    let cols = if rows > 0 { m[0].len() } else { 0 };
    if cols == 0 {
        return Vec::new();
    }
    // Augmented matrix: each row is [ (m^T)_i | e_i ] of length rows + cols.
    let mut a: Vec<IntVector> = (0..cols)
        .map(|i| {
            let mut row: IntVector = (0..rows).map(|j| m[j][i].clone()).collect();
            row.extend((0..cols).map(|j| {
                if i == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            row
        })
        .collect();
    let mut pivot_row = 0;
    for c in 0..rows {
        if pivot_row == a.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..a.len() {
                if !a[i][c].is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) => {
                            if a[i][c].abs() < a[b][c].abs() {
                                Some(i)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(b) = best else { break };
            a.swap(pivot_row, b);
            let mut done = true;
            for i in pivot_row + 1..a.len() {
                if !a[i][c].is_zero() {
                    let q = a[i][c].div_floor(&a[pivot_row][c]);
                    for j in 0..rows + cols {
                        let t = &a[pivot_row][j] * &q;
                        a[i][j] -= t;
                    }
                    if !a[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if !a[pivot_row][c].is_zero() {
            pivot_row += 1;
        }
    }
    let kernel: Vec<IntVector> = a[pivot_row..]
        .iter()
        .map(|row| row[rows..].to_vec())
        .filter(|v| !is_zero_vec(v))
        .collect();
    hermite_normal_form(&kernel)
}

/// Solves `a x = b` over the rationals. Returns `Err(SingularMatrix)` when no
/// unique solution exists.
pub fn solve_rational(a: &RatMatrix, b: &[BigRational]) -> Result<Vec<BigRational>> {
    let n = a.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut m: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let pivot = (c..n)
            .find(|&i| !m[i][c].is_zero())
            .ok_or(Error::SingularMatrix)?;
        m.swap(c, pivot);
        let p = m[c][c].clone();
        for j in c..=n {
            m[c][j] = &m[c][j] / &p;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let t = &m[c][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Signature of a symmetric integer matrix by congruence diagonalization
/// (symmetric Gaussian elimination over exact rationals, with symmetric
/// pivoting when a diagonal pivot vanishes).
///
/// Returns `(positive, negative)` diagonal counts. The matrix must be
/// nondegenerate.
pub fn signature_by_congruence(m: &IntMatrix) -> Result<(usize, usize)> {
    let n = m.len();
    let mut a: RatMatrix = m
        .iter()
        .map(|row| row.iter().map(|x| BigRational::from(x.clone())).collect())
        .collect();
    let mut pos = 0;
    let mut neg = 0;
    for i in 0..n {
        if a[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !a[j][j].is_zero()) {
                // Symmetric swap of rows/columns i and j.
                a.swap(i, j);
                for row in a.iter_mut() {
                    row.swap(i, j);
                }
            } else if let Some(j) = (i + 1..n).find(|&j| !a[i][j].is_zero()) {
                // All remaining diagonal entries vanish; make a[i][i] = 2*a[i][j]
                // by the congruence x_i += x_j.
                for k in 0..n {
                    let t = a[j][k].clone();
                    a[i][k] += t;
                }
                for row in a.iter_mut() {
                    let t = row[j].clone();
                    row[i] += t;
                }
            } else {
                return Err(Error::DegenerateGram);
            }
        }
        let p = a[i][i].clone();
        if p.is_zero() {
            return Err(Error::DegenerateGram);
        }
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for r in i + 1..n {
            if a[r][i].is_zero() {
                continue;
            }
            let f = &a[r][i] / &p;
            for k in 0..n {
                let t = &a[i][k] * &f;
                a[r][k] -= t;
            }
            for row in a.iter_mut() {
                let t = &row[i] * &f;
                row[r] -= t;
            }
        }
    }
    Ok((pos, neg))
}

/// LDL^T data of a positive definite rational matrix: `p = l d l^T` with `l`
/// unit lower triangular. Returns `Err` when `p` is not positive definite.
pub struct Ldl {
    pub l: RatMatrix,
    pub d: Vec<BigRational>,
}

pub fn ldl_decompose(p: &RatMatrix) -> Result<Ldl> {
    let n = p.len();
    let mut l: RatMatrix = (0..n)
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
    let mut d = vec![BigRational::zero(); n];
    for j in 0..n {
        let mut dj = p[j][j].clone();
        for k in 0..j {
            dj -= &l[j][k] * &l[j][k] * &d[k];
        }
        if !dj.is_positive() {
            return Err(Error::SingularMatrix);
        }
        d[j] = dj;
        for i in j + 1..n {
            let mut v = p[i][j].clone();
            for k in 0..j {
                v -= &l[i][k] * &l[j][k] * &d[k];
            }
            l[i][j] = v / &d[j];
        }
    }
    Ok(Ldl { l, d })
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(x: &BigInt) -> BigInt {
    debug_assert!(!x.is_negative());
    x.sqrt()
}

/// Largest integer `s >= 0` with `den * s^2 <= num`, given `num >= 0`,
/// `den > 0`. Exact: computed with integer square roots plus adjustment.
pub fn floor_sqrt_ratio(num: &BigInt, den: &BigInt) -> BigInt {
    debug_assert!(!num.is_negative() && den.is_positive());
    let mut s = isqrt(&(num / den));
    while &(&s + 1) * &(&s + 1) * den <= *num {
        s += 1;
    }
    while &s * &s * den > *num {
        s -= 1;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        let u = int_mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&u), int(-1));
        let m = int_mat(&[&[2, 1], &[1, 2]]);
        assert_eq!(determinant(&m), int(3));
        let singular = int_mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(determinant(&singular), int(0));
    }

    #[test]
    fn signature_small() {
        let u = int_mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(signature_by_congruence(&u).unwrap(), (1, 1));
        let d = int_mat(&[&[2, 0], &[0, -2]]);
        assert_eq!(signature_by_congruence(&d).unwrap(), (1, 1));
        let neg = int_mat(&[&[-2]]);
        assert_eq!(signature_by_congruence(&neg).unwrap(), (0, 1));
    }

    #[test]
    fn kernel_of_covector() {
        let m = vec![int_vec(&[1, 1])];
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 1);
        assert!(is_zero_vec(&vec![&k[0][0] + &k[0][1]]));
    }

    #[test]
    fn kernel_is_saturated() {
        // Kernel of (2, 4) is spanned by (2, -1), not (4, -2).
        let m = vec![int_vec(&[2, 4])];
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(primitive(&k[0]), k[0]);
    }

    #[test]
    fn hnf_canonical() {
        let rows = vec![int_vec(&[-1, 1]), int_vec(&[2, -2])];
        let h = hermite_normal_form(&rows);
        assert_eq!(h, vec![int_vec(&[1, -1])]);
    }

    #[test]
    fn solve_2x2() {
        let a: RatMatrix = vec![
            vec![BigRational::from(int(2)), BigRational::from(int(1))],
            vec![BigRational::from(int(1)), BigRational::from(int(3))],
        ];
        let b = vec![BigRational::from(int(5)), BigRational::from(int(10))];
        let x = solve_rational(&a, &b).unwrap();
        assert_eq!(x[0], BigRational::from(int(1)));
        assert_eq!(x[1], BigRational::from(int(3)));
    }

    #[test]
    fn floor_sqrt_ratio_exact() {
        assert_eq!(floor_sqrt_ratio(&int(8), &int(2)), int(2));
        assert_eq!(floor_sqrt_ratio(&int(9), &int(1)), int(3));
        assert_eq!(floor_sqrt_ratio(&int(0), &int(5)), int(0));
        assert_eq!(floor_sqrt_ratio(&int(49), &int(2)), int(4));
    }
}
