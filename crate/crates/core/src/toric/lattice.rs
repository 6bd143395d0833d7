//! Small exact integer linear algebra on `Z^D`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// `v / gcd(v)`, or `None` for the zero vector.
pub fn primitive(v: &[i64]) -> Option<Vec<i64>> {
    let g = gcd_all(v);
    (g != 0).then(|| v.iter().map(|x| x / g).collect())
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn rank(rows: &[Vec<i64>]) -> usize {
    crate::poly::rational_rank(rows)
}

fn to_q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Reduced row echelon form; returns the matrix and its pivot columns.
fn rref(rows: &[Vec<i64>], ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut m: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&v| to_q(v)).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..ncols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

fn integral_primitive(v: &[BigRational]) -> Vec<i64> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i64> = v
        .iter()
        .map(|x| (x.numer() * (&l / x.denom())).to_i64().expect("small lattice vector"))
        .collect();
    primitive(&ints).unwrap_or(ints)
}

/// Primitive integer basis of `{x : row · x = 0 for every row}`.
pub fn nullspace(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let (m, pivots) = rref(rows, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        out.push(integral_primitive(&v));
    }
    out
}

/// Coefficients `λ` with `Σ λ_i cols_i = x`, if `x` lies in the span; the
/// columns must be linearly independent.
pub fn solve(cols: &[Vec<i64>], x: &[i64]) -> Option<Vec<BigRational>> {
    let d = x.len();
    let k = cols.len();
    let rows: Vec<Vec<i64>> = (0..d)
        .map(|i| cols.iter().map(|c| c[i]).chain(std::iter::once(x[i])).collect())
        .collect();
    let (m, pivots) = rref(&rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut lambda = vec![BigRational::zero(); k];
    for (row, &p) in m.iter().zip(&pivots) {
        lambda[p] = row[k].clone();
    }
    Some(lambda)
}

/// Determinant of a square integer matrix.
pub fn det(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    let mut m: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&v| to_q(v)).collect()).collect();
    let mut acc = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return BigInt::zero();
        };
        if p != col {
            m.swap(p, col);
            acc = -acc;
        }
        acc *= m[col][col].clone();
        for i in col + 1..n {
            let f = &m[i][col] / &m[col][col];
            for j in col..n {
                let d = &f * &m[col][j];
                m[i][j] -= d;
            }
        }
    }
    acc.to_integer()
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// gcd of the maximal minors of the `k x D` matrix with the given rows.
pub fn maximal_minor_gcd(rows: &[Vec<i64>], d: usize) -> BigInt {
    let k = rows.len();
    let mut g = BigInt::zero();
    for cols in subsets(d, k) {
        let sub: Vec<Vec<i64>> = rows.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
        g = g.gcd(&det(&sub));
    }
    g.abs()
}

/// Unimodular `W` and its inverse with `B · W` zero outside its first
/// `rows` columns, where `B` has the given rows.
pub fn column_echelon(b: &[Vec<i64>], d: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut m: Vec<Vec<i64>> = b.to_vec();
    let ident = |d: usize| -> Vec<Vec<i64>> { (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect() };
    let mut w = ident(d);
    let mut winv = ident(d);
    let mut lead = 0;
    for r in 0..m.len() {
        if lead >= d {
            break;
        }
        loop {
            let Some(p) = (lead..d).filter(|&c| m[r][c] != 0).min_by_key(|&c| m[r][c].abs()) else {
                break;
            };
            if p != lead {
                for row in m.iter_mut().chain(w.iter_mut()) {
                    row.swap(p, lead);
                }
                winv.swap(p, lead);
            }
            let mut done = true;
            for c in lead + 1..d {
                let q = m[r][c].div_euclid(m[r][lead]);
                if q != 0 {
                    for row in m.iter_mut().chain(w.iter_mut()) {
                        row[c] -= q * row[lead];
                    }
                    let src = winv[c].clone();
                    for (x, s) in winv[lead].iter_mut().zip(src) {
                        *x += q * s;
                    }
                }
                if m[r][c] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[r][lead] != 0 {
            lead += 1;
        }
    }
    (w, winv)
}

pub fn vec_mat(x: &[i64], m: &[Vec<i64>]) -> Vec<i64> {
    let d = m.first().map_or(0, Vec::len);
    (0..d).map(|j| x.iter().zip(m).map(|(a, row)| a * row[j]).sum()).collect()
}

pub fn is_nonnegative(v: &[BigRational]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_and_solve() {
        assert_eq!(nullspace(&[vec![1, 1, 1]], 3), vec![vec![-1, 1, 0], vec![-1, 0, 1]]);
        assert_eq!(nullspace(&[], 2), vec![vec![1, 0], vec![0, 1]]);
        let lam = solve(&[vec![1, 0], vec![1, 2]], &[3, 4]).unwrap();
        assert_eq!(lam, vec![to_q(1), to_q(2)]);
        assert!(solve(&[vec![1, 1, 0]], &[0, 0, 1]).is_none());
    }

    #[test]
    fn determinants_and_minors() {
        assert_eq!(det(&[vec![1, 0], vec![1, 2]]), BigInt::from(2));
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(maximal_minor_gcd(&[vec![2, 3]], 2), BigInt::from(1));
        assert_eq!(maximal_minor_gcd(&[vec![2, 4]], 2), BigInt::from(2));
    }

    #[test]
    fn echelon_is_unimodular() {
        let b = vec![vec![2, 3, 5], vec![1, -1, 4]];
        let (w, winv) = column_echelon(&b, 3);
        for row in &b {
            let y = vec_mat(row, &w);
            assert_eq!(y[2], 0);
        }
        for (i, row) in w.iter().enumerate() {
            let back = vec_mat(row, &winv);
            let e: Vec<i64> = (0..3).map(|j| i64::from(i == j)).collect();
            assert_eq!(back, e);
        }
    }
}
