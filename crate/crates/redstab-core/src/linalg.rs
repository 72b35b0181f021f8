//! Exact rational linear algebra on dense row-major matrices.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

use crate::num::Rat;

pub type Mat = Vec<Vec<Rat>>;

pub fn zeros(rows: usize, cols: usize) -> Mat {
    vec![vec![Rat::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    m
}

pub fn transpose(a: &Mat) -> Mat {
    if a.is_empty() {
        return Vec::new();
    }
    let (r, c) = (a.len(), a[0].len());
    let mut t = zeros(c, r);
    for i in 0..r {
        for j in 0..c {
            t[j][i] = a[i][j].clone();
        }
    }
    t
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let (r, k) = (a.len(), b.len());
    let c = if k == 0 { 0 } else { b[0].len() };
    let mut out = zeros(r, c);
    for i in 0..r {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..c {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

pub fn matvec(a: &Mat, v: &[Rat]) -> Vec<Rat> {
    a.iter().map(|row| dot(row, v)).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// `uᵀ A v`.
pub fn bilinear(a: &Mat, u: &[Rat], v: &[Rat]) -> Rat {
    dot(u, &matvec(a, v))
}

/// Determinant by Bareiss elimination. Every division is exact, which keeps
/// intermediate sizes bounded by minors of the input.
pub fn det(a: &Mat) -> Rat {
    let n = a.len();
    if n == 0 {
        return Rat::one();
    }
    let mut m = a.clone();
    let mut sign = Rat::one();
    let mut prev = Rat::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Rat::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = Rat::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut Mat) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rat::one() / &m[r][c];
        for j in c..cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &Mat) -> usize {
    let mut m = a.clone();
    rref(&mut m).len()
}

/// Basis of the right nullspace `{x : A x = 0}`, one vector per free column.
pub fn nullspace(a: &Mat, cols: usize) -> Vec<Vec<Rat>> {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rat::zero(); cols];
            x[f] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -m[r][f].clone();
            }
            x
        })
        .collect()
}

/// Solve a square system; `None` if singular.
pub fn solve(a: &Mat, b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut aug: Mat = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv.iter().any(|&p| p >= n) {
        return None;
    }
    Some(aug.iter().map(|r| r[n].clone()).collect())
}

pub fn inverse(a: &Mat) -> Option<Mat> {
    let n = a.len();
    let mut aug: Mat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Leading principal minors `det A[..k, ..k]` for `k = 1..=n`.
pub fn leading_minors(a: &Mat) -> Vec<Rat> {
    (1..=a.len())
        .map(|k| det(&a[..k].iter().map(|r| r[..k].to_vec()).collect()))
        .collect()
}

/// Strict negative definiteness via alternating leading minors.
pub fn is_negative_definite(a: &Mat) -> bool {
    leading_minors(a).iter().enumerate().all(|(k, m)| {
        if k % 2 == 0 {
            m.is_negative()
        } else {
            m.is_positive()
        }
    })
}

pub fn is_positive_definite(a: &Mat) -> bool {
    leading_minors(a).iter().all(|m| m.is_positive())
}

/// Inertia `(positive, negative, zero)` of a symmetric matrix, computed by
/// exact symmetric Gaussian elimination (congruence to a diagonal matrix).
pub fn inertia(a: &Mat) -> (usize, usize, usize) {
    let n = a.len();
    let mut m = a.clone();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        if let Some(&p) = active.iter().find(|&&i| !m[i][i].is_zero()) {
            let d = m[p][p].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            active.retain(|&i| i != p);
            for &i in &active {
                let f = &m[i][p] / &d;
                if f.is_zero() {
                    continue;
                }
                for &j in &active {
                    let s = &f * &m[p][j];
                    m[i][j] -= s;
                }
            }
            continue;
        }
        // All diagonal entries vanish: find an off-diagonal pair and rotate.
        let pair = active
            .iter()
            .flat_map(|&i| active.iter().map(move |&j| (i, j)))
            .find(|&(i, j)| i < j && !m[i][j].is_zero());
        let Some((i, j)) = pair else {
            break;
        };
        // Replace basis vector e_i by e_i + e_j: diagonal becomes 2 m_ij.
        for &k in &active {
            let s = m[j][k].clone();
            m[i][k] += s;
        }
        for &k in &active {
            let s = m[k][j].clone();
            m[k][i] += s;
        }
    }
    (pos, neg, n - pos - neg)
}

/// `Bᵀ A B` for a matrix whose columns are the given vectors.
pub fn restrict_form(a: &Mat, basis: &[Vec<Rat>]) -> Mat {
    let av: Vec<Vec<Rat>> = basis.iter().map(|b| matvec(a, b)).collect();
    basis
        .iter()
        .map(|u| av.iter().map(|w| dot(u, w)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{frac, int};

    fn m(rows: &[&[i64]]) -> Mat {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let a = m(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        // 2(3*-2 - 4*5) - (-1)(1*-2 - 0) = -52 - 2
        assert_eq!(det(&a), int(-54));
        let s = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&s), int(-1));
    }

    #[test]
    fn det_with_fractions() {
        let a = vec![vec![frac(1, 2), frac(1, 3)], vec![frac(1, 4), frac(1, 5)]];
        assert_eq!(det(&a), frac(1, 10) - frac(1, 12));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(matmul(&a, &inv), identity(3));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[0, 1, 1, 1]]);
        let ns = nullspace(&a, 4);
        assert_eq!(ns.len(), 2);
        for x in ns {
            assert!(matvec(&a, &x).iter().all(|y| y.is_zero()));
        }
    }

    #[test]
    fn inertia_of_hyperbolic_forms() {
        assert_eq!(inertia(&m(&[&[0, 0, -1], &[0, 1, 0], &[-1, 0, 0]])), (2, 1, 0));
        assert_eq!(inertia(&m(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(inertia(&m(&[&[1, 1], &[1, 1]])), (1, 0, 1));
        assert_eq!(inertia(&m(&[&[-2, 0], &[0, -3]])), (0, 2, 0));
    }

    #[test]
    fn definiteness_by_minors() {
        assert!(is_negative_definite(&m(&[&[-2, 1], &[1, -2]])));
        assert!(!is_negative_definite(&m(&[&[-1, 2], &[2, -1]])));
        assert!(is_positive_definite(&m(&[&[2, 1], &[1, 2]])));
    }
}
