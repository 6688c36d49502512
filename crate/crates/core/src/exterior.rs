//! Exterior algebra of a rank-4 lattice `V` or its dual, with sparse bitmask storage.
//!
//! Bit `k` of a mask stands for `v_{k+1}` (or `v_{k+1}∨`); a mask denotes the
//! wedge of its generators in increasing order.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Scalar;

pub const TOP: u8 = 0b1111;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ambient {
    V,
    Dual,
}

/// Sign of `e_a ∧ e_b` relative to `e_{a∪b}`; zero when the masks overlap.
pub fn wedge_sign(a: u32, b: u32) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut inversions = 0;
    let mut rest = a;
    while rest != 0 {
        let i = rest.trailing_zeros();
        inversions += (b & ((1u32 << i) - 1)).count_ones();
        rest &= rest - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of the wedge of single generators taken in the given order.
pub fn ordered_sign(indices: &[u32]) -> (u32, i32) {
    let mut mask = 0u32;
    let mut sign = 1;
    for &i in indices {
        let s = wedge_sign(mask, 1 << i);
        if s == 0 {
            return (0, 0);
        }
        sign *= s;
        mask |= 1 << i;
    }
    (mask, sign)
}

#[derive(Clone, PartialEq)]
pub struct ExtElement<F: Scalar> {
    pub ambient: Ambient,
    coeffs: BTreeMap<u8, F>,
}

impl<F: Scalar> ExtElement<F> {
    pub fn zero(ambient: Ambient) -> Self {
        ExtElement {
            ambient,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn scalar(ambient: Ambient, c: F) -> Self {
        Self::monomial(ambient, 0, c)
    }

    pub fn monomial(ambient: Ambient, mask: u8, c: F) -> Self {
        let mut x = Self::zero(ambient);
        x.add_term(mask, c);
        x
    }

    /// Wedge of generators given by 1-based indices, in the order listed.
    pub fn wedge_of(ambient: Ambient, indices: &[usize]) -> Self {
        let zero_based: Vec<u32> = indices.iter().map(|&i| (i - 1) as u32).collect();
        let (mask, sign) = ordered_sign(&zero_based);
        if sign == 0 {
            return Self::zero(ambient);
        }
        Self::monomial(ambient, mask as u8, F::from_int(sign as i64))
    }

    /// Degree-one element `Σ c_k e_k`.
    pub fn vector(ambient: Ambient, c: &[F]) -> Self {
        let mut x = Self::zero(ambient);
        for (k, v) in c.iter().enumerate() {
            x.add_term(1 << k, v.clone());
        }
        x
    }

    pub fn add_term(&mut self, mask: u8, c: F) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&mask) {
            Some(old) => {
                let s = old.clone() + c;
                if s.is_zero() {
                    self.coeffs.remove(&mask);
                } else {
                    *old = s;
                }
            }
            None => {
                self.coeffs.insert(mask, c);
            }
        }
    }

    pub fn coeff(&self, mask: u8) -> F {
        self.coeffs.get(&mask).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u8, &F)> {
        self.coeffs.iter().map(|(&m, c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree when homogeneous; `None` for zero or mixed elements.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.coeffs.keys().map(|m| m.count_ones() as usize);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn part(&self, degree: usize) -> Self {
        let mut x = Self::zero(self.ambient);
        for (m, c) in self.terms() {
            if m.count_ones() as usize == degree {
                x.add_term(m, c.clone());
            }
        }
        x
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut x = Self::zero(self.ambient);
        for (m, v) in self.terms() {
            x.add_term(m, v.clone() * c.clone());
        }
        x
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient, "adding across ambients");
        let mut x = self.clone();
        for (m, c) in other.terms() {
            x.add_term(m, c.clone());
        }
        x
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient, "wedging across ambients");
        let mut x = Self::zero(self.ambient);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let s = wedge_sign(a as u32, b as u32);
                if s != 0 {
                    x.add_term(a | b, F::from_int(s as i64) * ca.clone() * cb.clone());
                }
            }
        }
        x
    }

    /// Coefficient of `v₁∧v₂∧v₃∧v₄`.
    pub fn vol(&self) -> Result<F> {
        if self.ambient != Ambient::V {
            return Err(Error::Ambient);
        }
        if self.degree() != Some(4) && !self.is_zero() {
            return Err(Error::Degree { expected: 4 });
        }
        Ok(self.coeff(TOP))
    }

    /// Interior product `ℓ ⌟ x` of a degree-one element of the opposite ambient.
    pub fn contract(&self, l: &ExtElement<F>) -> Result<Self> {
        if l.ambient == self.ambient {
            return Err(Error::Ambient);
        }
        if l.degree() != Some(1) && !l.is_zero() {
            return Err(Error::Degree { expected: 1 });
        }
        let mut x = Self::zero(self.ambient);
        for (m, c) in self.terms() {
            let mut pos = 0;
            for k in 0..4u8 {
                if m & (1 << k) == 0 {
                    continue;
                }
                let lk = l.coeff(1 << k);
                if !lk.is_zero() {
                    let sign = if pos % 2 == 0 { F::one() } else { -F::one() };
                    x.add_term(m & !(1 << k), sign * lk * c.clone());
                }
                pos += 1;
            }
        }
        Ok(x)
    }

    pub fn to_vec(&self, degree: usize) -> Vec<F> {
        masks_of_degree(degree)
            .into_iter()
            .map(|m| self.coeff(m))
            .collect()
    }

    pub fn map_coeffs<G: Scalar>(&self, f: impl Fn(&F) -> G) -> ExtElement<G> {
        let mut x = ExtElement::zero(self.ambient);
        for (m, c) in self.terms() {
            x.add_term(m, f(c));
        }
        x
    }
}

impl<F: Scalar> fmt::Debug for ExtElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Scalar> fmt::Display for ExtElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let gen = match self.ambient {
            Ambient::V => "v",
            Ambient::Dual => "w",
        };
        let parts: Vec<String> = self
            .terms()
            .map(|(m, c)| {
                let idx: String = (0..4)
                    .filter(|k| m & (1 << k) != 0)
                    .map(|k| (k + 1).to_string())
                    .collect();
                if m == 0 {
                    format!("({c})")
                } else {
                    format!("({c}){gen}{idx}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Masks of a given degree in increasing numeric order.
pub fn masks_of_degree(degree: usize) -> Vec<u8> {
    (0u8..16)
        .filter(|m| m.count_ones() as usize == degree)
        .collect()
}

/// The six degree-two masks, ordered `12, 13, 14, 23, 24, 34`.
pub fn wedge2_basis() -> [u8; 6] {
    [0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]
}

/// Pairing `⟨x, z⟩` of `x ∈ ∧²V∨` with `z ∈ ∧²V`, where
/// `⟨g∧h, v∧w⟩ = g(v)h(w) − g(w)h(v)`.
pub fn pair2<F: Scalar>(x: &ExtElement<F>, z: &ExtElement<F>) -> F {
    assert!(x.ambient == Ambient::Dual && z.ambient == Ambient::V);
    wedge2_basis()
        .iter()
        .fold(F::zero(), |acc, &m| acc + x.coeff(m) * z.coeff(m))
}

/// The isomorphism `ι: ∧²V∨ → ∧²V` with `vol(ι(x) ∧ z) = ⟨x, z⟩`.
pub fn iota<F: Scalar>(x: &ExtElement<F>) -> Result<ExtElement<F>> {
    if x.ambient != Ambient::Dual {
        return Err(Error::Ambient);
    }
    if x.degree() != Some(2) && !x.is_zero() {
        return Err(Error::Degree { expected: 2 });
    }
    let mut y = ExtElement::zero(Ambient::V);
    for (m, c) in x.terms() {
        let comp = TOP & !m;
        let s = wedge_sign(comp as u32, m as u32);
        y.add_term(comp, F::from_int(s as i64) * c.clone());
    }
    Ok(y)
}

/// Inverse of [`iota`].
pub fn iota_inv<F: Scalar>(y: &ExtElement<F>) -> Result<ExtElement<F>> {
    if y.ambient != Ambient::V {
        return Err(Error::Ambient);
    }
    if y.degree() != Some(2) && !y.is_zero() {
        return Err(Error::Degree { expected: 2 });
    }
    let mut x = ExtElement::zero(Ambient::Dual);
    for (m, c) in y.terms() {
        let comp = TOP & !m;
        let s = wedge_sign(m as u32, comp as u32);
        x.add_term(comp, F::from_int(s as i64) * c.clone());
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rational};
    use crate::linalg::{solve, Mat};

    type E = ExtElement<Rational>;

    #[test]
    fn volume_signs() {
        assert_eq!(
            E::wedge_of(Ambient::V, &[1, 2, 3, 4]).vol().unwrap(),
            rat(1)
        );
        assert_eq!(
            E::wedge_of(Ambient::V, &[2, 1, 3, 4]).vol().unwrap(),
            rat(-1)
        );
        let x = E::wedge_of(Ambient::V, &[1, 3, 2, 4]).scale(&rat(3));
        assert_eq!(x.vol().unwrap(), rat(-3));
        assert!(E::wedge_of(Ambient::V, &[1, 2]).vol().is_err());
    }

    #[test]
    fn odd_elements_square_to_zero() {
        let v = E::vector(Ambient::V, &[rat(1), rat(2), rat(-3), rat(5)]);
        assert!(v.wedge(&v).is_zero());
        let a = E::wedge_of(Ambient::V, &[1, 2, 3]).add(&E::wedge_of(Ambient::V, &[2, 3, 4]));
        assert!(a.wedge(&a).is_zero());
    }

    /// Solves the defining linear system of `ι` on the six-dimensional basis.
    fn iota_by_solving(x: &E) -> E {
        let basis = wedge2_basis();
        let a: Mat<Rational> = basis
            .iter()
            .map(|&z| {
                basis
                    .iter()
                    .map(|&y| {
                        E::monomial(Ambient::V, y, rat(1))
                            .wedge(&E::monomial(Ambient::V, z, rat(1)))
                            .coeff(TOP)
                    })
                    .collect()
            })
            .collect();
        let rhs: Vec<Rational> = basis
            .iter()
            .map(|&z| pair2(x, &E::monomial(Ambient::V, z, rat(1))))
            .collect();
        let sol = solve(&a, &rhs).unwrap();
        let mut y = E::zero(Ambient::V);
        for (m, c) in basis.iter().zip(sol) {
            y.add_term(*m, c);
        }
        y
    }

    #[test]
    fn iota_matches_linear_solve() {
        for m in wedge2_basis() {
            let x = E::monomial(Ambient::Dual, m, rat(1));
            assert_eq!(iota(&x).unwrap(), iota_by_solving(&x));
            assert_eq!(iota_inv(&iota(&x).unwrap()).unwrap(), x);
        }
        let x12 = E::wedge_of(Ambient::Dual, &[1, 2]);
        assert_eq!(iota(&x12).unwrap(), E::wedge_of(Ambient::V, &[3, 4]));
        let x34 = E::wedge_of(Ambient::Dual, &[3, 4]);
        assert_eq!(iota(&x34).unwrap(), E::wedge_of(Ambient::V, &[1, 2]));
    }

    #[test]
    fn contraction_is_a_derivation() {
        let l = E::vector(Ambient::Dual, &[rat(1), rat(0), rat(2), rat(0)]);
        let x = E::wedge_of(Ambient::V, &[1, 3]);
        // ℓ⌟(v1∧v3) = ℓ(v1)v3 − ℓ(v3)v1
        let expected =
            E::wedge_of(Ambient::V, &[3]).sub(&E::wedge_of(Ambient::V, &[1]).scale(&rat(2)));
        assert_eq!(x.contract(&l).unwrap(), expected);
    }
}
