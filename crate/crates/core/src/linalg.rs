//! Dense exact linear algebra over any [`Scalar`].

use crate::field::Scalar;

pub type Mat<F> = Vec<Vec<F>>;

pub fn zeros<F: Scalar>(rows: usize, cols: usize) -> Mat<F> {
    vec![vec![F::zero(); cols]; rows]
}

pub fn identity<F: Scalar>(n: usize) -> Mat<F> {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = F::one();
    }
    m
}

pub fn from_ints<F: Scalar>(rows: &[&[i64]]) -> Mat<F> {
    rows.iter()
        .map(|r| r.iter().map(|&x| F::from_int(x)).collect())
        .collect()
}

pub fn transpose<F: Scalar>(m: &Mat<F>) -> Mat<F> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul<F: Scalar>(a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch in product");
            (0..cols)
                .map(|j| {
                    let mut acc = F::zero();
                    for (k, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            acc = acc + x.clone() * b[k][j].clone();
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<F: Scalar>(a: &Mat<F>, v: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
        })
        .collect()
}

pub fn mat_add<F: Scalar>(a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    a.iter()
        .zip(b)
        .map(|(r, s)| {
            r.iter()
                .zip(s)
                .map(|(x, y)| x.clone() + y.clone())
                .collect()
        })
        .collect()
}

pub fn mat_scale<F: Scalar>(a: &Mat<F>, c: &F) -> Mat<F> {
    a.iter()
        .map(|r| r.iter().map(|x| x.clone() * c.clone()).collect())
        .collect()
}

pub fn is_zero_mat<F: Scalar>(a: &Mat<F>) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

/// Reduced row echelon form and pivot columns.
pub fn rref<F: Scalar>(m: &Mat<F>) -> (Mat<F>, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    if !a[r][j].is_zero() {
                        a[i][j] = a[i][j].clone() - f.clone() * a[r][j].clone();
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<F: Scalar>(m: &Mat<F>) -> usize {
    rref(m).1.len()
}

/// Basis of the row space in reduced echelon form; equal subspaces give equal output.
pub fn row_space<F: Scalar>(m: &Mat<F>) -> Mat<F> {
    let (r, p) = rref(m);
    r.into_iter().take(p.len()).collect()
}

/// Basis of `{x : m·x = 0}`.
pub fn nullspace<F: Scalar>(m: &Mat<F>, cols: usize) -> Vec<Vec<F>> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

pub fn det<F: Scalar>(m: &Mat<F>) -> F {
    let n = m.len();
    let mut a = m.clone();
    let mut acc = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            a.swap(p, c);
            acc = -acc;
        }
        acc = acc * a[c][c].clone();
        let inv = a[c][c].inv().expect("nonzero pivot");
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = a[i][c].clone() * inv.clone();
                for j in c..n {
                    a[i][j] = a[i][j].clone() - f.clone() * a[c][j].clone();
                }
            }
        }
    }
    acc
}

pub fn inverse<F: Scalar>(m: &Mat<F>) -> Option<Mat<F>> {
    let n = m.len();
    let aug: Mat<F> = m
        .iter()
        .zip(identity::<F>(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Some `x` with `a·x = b`, if one exists.
pub fn solve<F: Scalar>(a: &Mat<F>, b: &[F]) -> Option<Vec<F>> {
    let cols = a.first().map_or(0, |r| r.len());
    let aug: Mat<F> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            r.iter()
                .cloned()
                .chain(std::iter::once(x.clone()))
                .collect()
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![F::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r[row][cols].clone();
    }
    Some(x)
}

/// Basis of the intersection of two row spaces.
pub fn intersect<F: Scalar>(a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    // x·A = y·B  ⇔  (x, −y) in the left kernel of [A; B].
    let stacked: Mat<F> = a.iter().chain(b.iter()).cloned().collect();
    let kernel = nullspace(&transpose(&stacked), stacked.len());
    let combos: Mat<F> = kernel
        .into_iter()
        .map(|k| {
            let cols = a[0].len();
            let mut v = vec![F::zero(); cols];
            for (coef, row) in k.iter().zip(a) {
                for (t, x) in v.iter_mut().zip(row) {
                    *t = t.clone() + coef.clone() * x.clone();
                }
            }
            v
        })
        .collect();
    if combos.is_empty() {
        combos
    } else {
        row_space(&combos)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rational};

    #[test]
    fn inverse_and_det() {
        let m: Mat<Rational> = from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(det(&m), rat(18));
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(3));
    }

    #[test]
    fn nullspace_is_kernel() {
        let m: Mat<Rational> = from_ints(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 1]]);
        let k = nullspace(&m, 4);
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(mat_vec(&m, &v).iter().all(|x| *x == rat(0)));
        }
    }

    #[test]
    fn intersection_dimension() {
        let a: Mat<Rational> = from_ints(&[&[1, 0, 0], &[0, 1, 0]]);
        let b: Mat<Rational> = from_ints(&[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(intersect(&a, &b), from_ints::<Rational>(&[&[0, 1, 0]]));
    }
}
