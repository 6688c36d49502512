//! Skew maps `f: V → V∨` in rank four.

use crate::error::{Error, Result};
use crate::exterior::{Ambient, ExtElement};
use crate::field::Scalar;
use crate::linalg::{self, Mat};

/// A skew map `f: V → V∨` stored by its matrix `a` in the bases `v_i`, `v_i∨`:
/// `f(v_j) = Σ_i a_ij v_i∨`. Then `ω_f(v_i, v_j) = a_ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewMap4<F: Scalar> {
    m: Mat<F>,
}

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

impl<F: Scalar> SkewMap4<F> {
    /// From the upper entries `a12, a13, a14, a23, a24, a34`.
    pub fn from_upper(a: [F; 6]) -> Self {
        let mut m = linalg::zeros(4, 4);
        for (&(i, j), x) in PAIRS.iter().zip(a) {
            m[j][i] = -x.clone();
            m[i][j] = x;
        }
        SkewMap4 { m }
    }

    pub fn from_ints(a: [i64; 6]) -> Self {
        Self::from_upper(a.map(F::from_int))
    }

    pub fn from_matrix(m: Mat<F>) -> Result<Self> {
        if m.len() != 4 || m.iter().any(|r| r.len() != 4) {
            return Err(Error::Invalid("skew map must be 4×4".into()));
        }
        for i in 0..4 {
            for j in 0..4 {
                if m[i][j].clone() + m[j][i].clone() != F::zero() {
                    return Err(Error::Invalid("matrix is not antisymmetric".into()));
                }
            }
        }
        Ok(SkewMap4 { m })
    }

    /// The skew map with `ω_f = x` for `x ∈ ∧²V∨`.
    pub fn from_omega(x: &ExtElement<F>) -> Result<Self> {
        if x.ambient != Ambient::Dual {
            return Err(Error::Ambient);
        }
        if !x.is_zero() && x.degree() != Some(2) {
            return Err(Error::Degree { expected: 2 });
        }
        Ok(Self::from_upper(
            PAIRS.map(|(i, j)| x.coeff((1 << i) | (1 << j))),
        ))
    }

    pub fn omega(&self) -> ExtElement<F> {
        let mut x = ExtElement::zero(Ambient::Dual);
        for (i, j) in PAIRS {
            x.add_term((1 << i) | (1 << j), self.m[i][j].clone());
        }
        x
    }

    pub fn upper(&self) -> [F; 6] {
        PAIRS.map(|(i, j)| self.m[i][j].clone())
    }

    /// Entry `a_ij` with 1-based indices.
    pub fn a(&self, i: usize, j: usize) -> F {
        self.m[i - 1][j - 1].clone()
    }

    pub fn matrix(&self) -> &Mat<F> {
        &self.m
    }

    /// Coordinates of `f(v)` in the dual basis.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        linalg::mat_vec(&self.m, v)
    }

    pub fn pfaffian(&self) -> F {
        let a = |i, j| self.a(i, j);
        a(1, 2) * a(3, 4) - a(1, 3) * a(2, 4) + a(1, 4) * a(2, 3)
    }

    pub fn det(&self) -> F {
        linalg::det(&self.m)
    }

    /// Inverse `V∨ → V` via the Pfaffian-scaled signed complement matrix.
    pub fn inverse(&self) -> Result<SkewMap4<F>> {
        let p = self.pfaffian();
        let pinv = p
            .inv()
            .ok_or_else(|| Error::Degenerate("skew map has zero Pfaffian".into()))?;
        let x = |i, j| self.a(i, j);
        let upper = [-x(3, 4), x(2, 4), -x(2, 3), -x(1, 4), x(1, 3), -x(1, 2)];
        Ok(SkewMap4::from_upper(upper.map(|t| t * pinv.clone())))
    }

    pub fn scale(&self, c: &F) -> Self {
        SkewMap4 {
            m: linalg::mat_scale(&self.m, c),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        SkewMap4 {
            m: linalg::mat_add(&self.m, &other.m),
        }
    }

    pub fn map_coeffs<G: Scalar>(&self, f: impl Fn(&F) -> G) -> SkewMap4<G> {
        SkewMap4 {
            m: self.m.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }
}

pub fn trace<F: Scalar>(m: &Mat<F>) -> F {
    (0..m.len()).fold(F::zero(), |acc, i| acc + m[i][i].clone())
}

/// Checks `(XY)² − ½Tr(XY)·XY + Pf(X)Pf(Y)·1 = 0` exactly.
pub fn skew_cayley_check<F: Scalar>(x: &SkewMap4<F>, y: &SkewMap4<F>) -> bool {
    let xy = linalg::mat_mul(x.matrix(), y.matrix());
    let sq = linalg::mat_mul(&xy, &xy);
    let half_tr = trace(&xy) * F::from_rational(crate::field::frac(1, 2));
    let pp = x.pfaffian() * y.pfaffian();
    let mut r = linalg::mat_add(&sq, &linalg::mat_scale(&xy, &-half_tr));
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = row[i].clone() + pp.clone();
    }
    linalg::is_zero_mat(&r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rational};

    type S = SkewMap4<Rational>;

    #[test]
    fn pfaffian_examples() {
        assert_eq!(S::from_ints([1, 0, 0, 0, 0, 1]).pfaffian(), rat(1));
        let f = S::from_ints([2, 1, 0, 0, 1, 3]);
        assert_eq!(f.pfaffian(), rat(5));
        assert_eq!(f.det(), rat(25));
        assert_eq!(S::from_ints([1, 2, 3, 0, 0, 0]).pfaffian(), rat(0));
    }

    #[test]
    fn inverse_of_standard_form_is_negative() {
        let j = S::from_ints([1, 0, 0, 0, 0, 1]);
        assert_eq!(j.inverse().unwrap(), j.scale(&rat(-1)));
    }

    #[test]
    fn inverse_matches_gaussian_elimination() {
        let f = S::from_ints([2, 1, 0, 0, 1, 3]);
        let inv = f.inverse().unwrap();
        assert_eq!(Some(inv.matrix().clone()), linalg::inverse(f.matrix()));
        assert_eq!(
            linalg::mat_mul(f.matrix(), inv.matrix()),
            linalg::identity(4)
        );
    }

    #[test]
    fn degenerate_inverse_errors() {
        assert!(S::from_ints([1, 2, 3, 0, 0, 0]).inverse().is_err());
    }

    #[test]
    fn cayley_on_standard_form() {
        let j = S::from_ints([1, 0, 0, 0, 0, 1]);
        assert!(skew_cayley_check(&j, &j));
        assert!(skew_cayley_check(&j, &S::from_ints([0; 6])));
    }

    #[test]
    fn omega_round_trip() {
        let f = S::from_ints([2, -1, 4, 0, 1, 3]);
        assert_eq!(S::from_omega(&f.omega()).unwrap(), f);
    }
}
