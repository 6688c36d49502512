//! Integral normal forms: elementary divisors of skew forms and lattice indices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type IntMat = Vec<Vec<BigInt>>;

pub fn int_mat(rows: &[Vec<i64>]) -> IntMat {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn is_skew(m: &IntMat) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n) && (0..n).all(|i| (0..n).all(|j| m[i][j] == -m[j][i].clone()))
}

/// Congruence step on both sides: row_k += c·row_j and col_k += c·col_j.
fn add_multiple(m: &mut IntMat, k: usize, j: usize, c: &BigInt) {
    let n = m.len();
    for t in 0..n {
        let v = &m[j][t] * c;
        m[k][t] += v;
    }
    for t in 0..n {
        let v = &m[t][j] * c;
        m[t][k] += v;
    }
}

fn swap_both(m: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    m.swap(a, b);
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Elementary divisors `d₁ | d₂ | …` of a nondegenerate integral skew matrix.
///
/// The matrix is brought to block form `[[0, d_k], [−d_k, 0]]` by simultaneous
/// integral row and column operations; each divisor appears once per block.
pub fn skew_smith(input: &IntMat) -> Result<Vec<BigInt>> {
    if !is_skew(input) {
        return Err(Error::Invalid("matrix is not square and skew".into()));
    }
    let n = input.len();
    if !n.is_multiple_of(2) {
        return Err(Error::Degenerate("odd-dimensional skew form".into()));
    }
    let mut m = input.clone();
    let mut divisors = Vec::new();
    let mut base = 0;
    while base < n {
        // smallest nonzero entry in the trailing block becomes the pivot at (base, base+1)
        let Some((pi, pj)) = smallest_entry(&m, base) else {
            return Err(Error::Degenerate("skew form is degenerate".into()));
        };
        swap_both(&mut m, base, pi);
        let pj = if pj == base { pi } else { pj };
        swap_both(&mut m, base + 1, pj);
        loop {
            let p = m[base][base + 1].clone();
            let mut changed = false;
            for k in base + 2..n {
                // clear row `base` using column base+1, row `base+1` using column base
                let (q, r) = m[base][k].div_mod_floor(&p);
                if !q.is_zero() {
                    add_multiple(&mut m, k, base + 1, &-q);
                }
                if !r.is_zero() {
                    swap_both(&mut m, base + 1, k);
                    changed = true;
                    break;
                }
                let (q, r) = m[base + 1][k].div_mod_floor(&-p.clone());
                if !q.is_zero() {
                    add_multiple(&mut m, k, base, &-q);
                }
                if !r.is_zero() {
                    swap_both(&mut m, base, k);
                    swap_both(&mut m, base, base + 1);
                    changed = true;
                    break;
                }
            }
            if changed {
                continue;
            }
            // the pivot must divide the remaining block
            let bad = (base + 2..n)
                .flat_map(|i| (base + 2..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].is_multiple_of(&p));
            match bad {
                Some((i, _)) => add_multiple(&mut m, base, i, &BigInt::one()),
                None => break,
            }
        }
        let d = m[base][base + 1].abs();
        divisors.push(d);
        base += 2;
    }
    Ok(divisors)
}

fn smallest_entry(m: &IntMat, base: usize) -> Option<(usize, usize)> {
    let n = m.len();
    let mut best: Option<(usize, usize)> = None;
    for i in base..n {
        for j in base..n {
            if m[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(a, b)| m[i][j].abs() < m[a][b].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn int_det(m: &IntMat) -> BigInt {
    // Bareiss fraction-free elimination
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Determinantal divisors: `D_k` is the gcd of all `k×k` minors.
pub fn determinantal_divisors(m: &IntMat) -> Vec<BigInt> {
    let n = m.len();
    (1..=n)
        .map(|k| {
            let sets = subsets(n, k);
            let mut g = BigInt::zero();
            for rows in &sets {
                for cols in &sets {
                    let sub: IntMat = rows
                        .iter()
                        .map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect())
                        .collect();
                    g = g.gcd(&int_det(&sub));
                    if g.is_one() {
                        break;
                    }
                }
                if g.is_one() {
                    break;
                }
            }
            g
        })
        .collect()
}

/// Smith invariants `s_k = D_k / D_{k−1}` from minors.
pub fn smith_from_minors(m: &IntMat) -> Vec<BigInt> {
    let d = determinantal_divisors(m);
    let mut prev = BigInt::one();
    d.into_iter()
        .map(|dk| {
            let s = if prev.is_zero() {
                BigInt::zero()
            } else {
                &dk / &prev
            };
            prev = dk;
            s
        })
        .collect()
}

/// `|det|` of the lattice spanned by integral row vectors of full rank, via Hermite reduction.
pub fn lattice_covolume(gens: &IntMat) -> Result<BigInt> {
    let cols = gens.first().map_or(0, |r| r.len());
    let mut a = gens.clone();
    let mut row = 0;
    for c in 0..cols {
        // Euclid on column c among rows row..
        loop {
            let nz: Vec<usize> = (row..a.len()).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    a.swap(row, i);
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| a[i][c].abs()).unwrap();
            a.swap(row, p);
            for i in row + 1..a.len() {
                if !a[i][c].is_zero() {
                    let q = a[i][c].div_floor(&a[row][c]);
                    for t in 0..cols {
                        let v = &a[row][t] * &q;
                        a[i][t] -= v;
                    }
                }
            }
        }
        if row < a.len() && !a[row][c].is_zero() {
            row += 1;
        } else {
            return Err(Error::Degenerate(
                "generators do not span a full-rank lattice".into(),
            ));
        }
    }
    Ok((0..cols).fold(BigInt::one(), |acc, i| acc * a[i][i].abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn block(delta: &[i64]) -> IntMat {
        let k = delta.len();
        let mut m = vec![vec![0i64; 2 * k]; 2 * k];
        for (i, &d) in delta.iter().enumerate() {
            m[i][k + i] = d;
            m[k + i][i] = -d;
        }
        int_mat(&m)
    }

    #[test]
    fn standard_blocks() {
        assert_eq!(
            skew_smith(&int_mat(&[vec![0, 1], vec![-1, 0]])).unwrap(),
            ints(&[1])
        );
        assert_eq!(
            skew_smith(&block(&[1, 1, 3, 3])).unwrap(),
            ints(&[1, 1, 3, 3])
        );
    }

    #[test]
    fn reduces_non_normal_input() {
        assert_eq!(skew_smith(&block(&[6, 4])).unwrap(), ints(&[2, 12]));
        let m = int_mat(&[
            vec![0, 2, 3, 0],
            vec![-2, 0, 0, 5],
            vec![-3, 0, 0, 7],
            vec![0, -5, -7, 0],
        ]);
        let d = skew_smith(&m).unwrap();
        let s = smith_from_minors(&m);
        assert_eq!(d, vec![s[0].clone(), s[2].clone()]);
    }

    #[test]
    fn degenerate_is_rejected() {
        assert!(skew_smith(&int_mat(&[vec![0, 0], vec![0, 0]])).is_err());
    }

    #[test]
    fn covolume_of_index_two_sublattice() {
        let g = int_mat(&[vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(lattice_covolume(&g).unwrap(), BigInt::from(2));
    }
}
