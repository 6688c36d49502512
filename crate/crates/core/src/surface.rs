//! Cohomology of an abelian surface and its tensor powers.
//!
//! `H(A)` is the exterior algebra on `η₁..η₄`; a class is an [`ExtElement`] in
//! the `V` ambient read as a polynomial in the `η_i`. The tensor power
//! `H(A)^{⊗r} = H(A^r)` is an exterior algebra on `4r` generators: bit
//! `4k + t` of a [`Tensor`] mask is `p_k*(η_{t+1})`. A pure tensor
//! `a₀ ⊗ … ⊗ a_{r−1}` is the ordered product of the pulled back factors.
//!
//! Koszul signs for moving tensor factors are taken in the shifted grading
//! (degree minus two). The shift is even, so these signs coincide with the
//! exterior-algebra signs used here; `koszul_matches_exterior_sign` checks this.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::{wedge_sign, Ambient, ExtElement, TOP};
use crate::field::Rational;

pub type Coeff = Rational;
pub type CohA = ExtElement<Rational>;

/// Monomial `η_{i₁}∧…∧η_{i_k}` from 1-based indices in the listed order.
pub fn eta(indices: &[usize]) -> CohA {
    CohA::wedge_of(Ambient::V, indices)
}

pub fn coh_one() -> CohA {
    CohA::scalar(Ambient::V, Rational::one())
}

/// The fundamental class `η = η₁∧η₂∧η₃∧η₄`.
pub fn fundamental() -> CohA {
    eta(&[1, 2, 3, 4])
}

/// Degree-four component, i.e. the coefficient of `η`.
pub fn integrate_a(x: &CohA) -> Rational {
    x.coeff(TOP)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    pub r: usize,
    terms: BTreeMap<u32, Coeff>,
}

fn top_mask(r: usize) -> u32 {
    if r == 8 {
        u32::MAX
    } else {
        (1u32 << (4 * r)) - 1
    }
}

impl Tensor {
    pub fn zero(r: usize) -> Self {
        assert!(r <= 8, "tensor powers beyond 8 factors are not supported");
        Tensor {
            r,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(r: usize) -> Self {
        Self::monomial(r, 0, Coeff::one())
    }

    pub fn monomial(r: usize, mask: u32, c: Coeff) -> Self {
        let mut t = Self::zero(r);
        t.add_term(mask, c);
        t
    }

    /// `a₀ ⊗ a₁ ⊗ … ⊗ a_{r−1}`.
    pub fn from_factors(factors: &[CohA]) -> Self {
        let r = factors.len();
        let mut acc = Self::one(r);
        for (k, a) in factors.iter().enumerate() {
            acc = acc.mul(&Self::p_star(r, k, a));
        }
        acc
    }

    /// `p_k*(α) = 1 ⊗ … ⊗ α ⊗ … ⊗ 1` with `α` in the 0-based slot `k`.
    pub fn p_star(r: usize, k: usize, alpha: &CohA) -> Self {
        assert!(k < r);
        let mut t = Self::zero(r);
        for (m, c) in alpha.terms() {
            t.add_term((m as u32) << (4 * k), c.clone());
        }
        t
    }

    pub fn add_term(&mut self, mask: u32, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&mask);
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Coeff)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mask: u32) -> Coeff {
        self.terms.get(&mask).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.r, other.r);
        let mut t = self.clone();
        t.add_assign(other);
        t
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in other.terms() {
            self.add_term(m, c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Coeff) {
        for (m, x) in other.terms() {
            self.add_term(m, x * c);
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut t = Self::zero(self.r);
        if !c.is_zero() {
            for (m, x) in self.terms() {
                t.terms.insert(m, x * c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.r, other.r,
            "multiplying tensors over different index sets"
        );
        let mut t = Self::zero(self.r);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                match wedge_sign(a, b) {
                    0 => {}
                    1 => t.add_term(a | b, ca * cb),
                    _ => t.add_term(a | b, -(ca * cb)),
                }
            }
        }
        t
    }

    /// Ordinary degree when homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.count_ones() as usize);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Shifted degree `Σ (|a_k| − 2)` when homogeneous.
    pub fn shifted_degree(&self) -> Option<i64> {
        self.degree().map(|d| d as i64 - 2 * self.r as i64)
    }

    /// Coefficient of `η ⊗ … ⊗ η`.
    pub fn top_coeff(&self) -> Coeff {
        self.coeff(top_mask(self.r))
    }

    /// `T(α₁⊗…⊗α_r) = (−∫α₁)⋯(−∫α_r)`.
    pub fn t_form(&self) -> Coeff {
        let c = self.top_coeff();
        if self.r.is_multiple_of(2) {
            c
        } else {
            -c
        }
    }

    /// Factor `k` of a monomial mask.
    pub fn factor(mask: u32, k: usize) -> u8 {
        ((mask >> (4 * k)) & 0xf) as u8
    }

    /// Restricts to the degree-`d` part.
    pub fn part(&self, d: usize) -> Self {
        let mut t = Self::zero(self.r);
        for (m, c) in self.terms() {
            if m.count_ones() as usize == d {
                t.add_term(m, c.clone());
            }
        }
        t
    }
}

/// Relabels a monomial along `s: I → J`, returning the new mask and sign, or
/// `None` when two generators collide.
pub fn relabel_monomial(s: &[usize], mask: u32) -> Option<(u32, i32)> {
    let mut acc = 0u32;
    let mut sign = 1;
    let mut rest = mask;
    while rest != 0 {
        let bit = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let nb = 1u32 << (4 * s[bit / 4] + bit % 4);
        if acc & nb != 0 {
            return None;
        }
        if (acc & !(nb - 1) & !nb).count_ones() % 2 == 1 {
            sign = -sign;
        }
        acc |= nb;
    }
    Some((acc, sign))
}

fn check_surjective(s: &[usize], nj: usize) -> Result<()> {
    let mut hit = vec![false; nj];
    for &j in s {
        if j >= nj {
            return Err(Error::NotSurjective);
        }
        hit[j] = true;
    }
    if hit.iter().all(|&h| h) {
        Ok(())
    } else {
        Err(Error::NotSurjective)
    }
}

/// `f*`: multiplies the factors in each fibre of `s: I → J` (`I = 0..s.len()`).
pub fn pullback(s: &[usize], nj: usize, x: &Tensor) -> Result<Tensor> {
    check_surjective(s, nj)?;
    assert_eq!(s.len(), x.r);
    Ok(pullback_unchecked(s, nj, x))
}

pub(crate) fn pullback_unchecked(s: &[usize], nj: usize, x: &Tensor) -> Tensor {
    let mut t = Tensor::zero(nj);
    for (m, c) in x.terms() {
        if let Some((nm, sign)) = relabel_monomial(s, m) {
            t.add_term(nm, if sign > 0 { c.clone() } else { -c.clone() });
        }
    }
    t
}

/// `f_*` of the monomial `e_Y` over `J`, as signed monomials over `I`.
pub fn pushforward_monomial(s: &[usize], nj: usize, y: u32) -> Vec<(u32, i32)> {
    let ni = s.len();
    let mut fibres = vec![Vec::new(); nj];
    for (i, &j) in s.iter().enumerate() {
        fibres[j].push(i);
    }
    let comp = top_mask(nj) & !y;
    let sign_y = wedge_sign(y, comp);
    let parity = if (ni + nj).is_multiple_of(2) { 1 } else { -1 };
    let missing: Vec<usize> = (0..4 * nj).filter(|b| comp & (1 << b) != 0).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; missing.len()];
    loop {
        let mut x = 0u32;
        for (slot, &b) in missing.iter().enumerate() {
            let i = fibres[b / 4][choice[slot]];
            x |= 1 << (4 * i + b % 4);
        }
        let (_, sx) = relabel_monomial(s, x).expect("choices are injective");
        let u = top_mask(ni) & !x;
        out.push((u, parity * sx * sign_y * wedge_sign(u, x)));
        // advance the mixed-radix counter
        let mut slot = 0;
        loop {
            if slot == missing.len() {
                return out;
            }
            choice[slot] += 1;
            if choice[slot] < fibres[missing[slot] / 4].len() {
                break;
            }
            choice[slot] = 0;
            slot += 1;
        }
    }
}

/// `f_*`: the adjoint of `f*` for the forms `T_I` and `T_J`.
pub fn pushforward(s: &[usize], nj: usize, y: &Tensor) -> Result<Tensor> {
    check_surjective(s, nj)?;
    assert_eq!(y.r, nj);
    let mut t = Tensor::zero(s.len());
    for (m, c) in y.terms() {
        for (u, sign) in pushforward_monomial(s, nj, m) {
            t.add_term(u, if sign > 0 { c.clone() } else { -c.clone() });
        }
    }
    Ok(t)
}

/// `Δ_{r,*}(ξ)`: pushforward along `[r] → [1]`.
pub fn delta_star(r: usize, xi: &CohA) -> Tensor {
    let s = vec![0; r];
    pushforward(&s, 1, &Tensor::from_factors(std::slice::from_ref(xi)))
        .expect("constant map onto a point")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::masks_of_degree;
    use crate::field::rat;

    #[test]
    fn integration_on_a() {
        assert_eq!(integrate_a(&fundamental()), rat(1));
        assert_eq!(integrate_a(&eta(&[1, 2])), rat(0));
        assert_eq!(integrate_a(&eta(&[2, 1, 3, 4])), rat(-1));
    }

    #[test]
    fn t_form_signs() {
        let e = fundamental();
        assert_eq!(
            Tensor::from_factors(&[e.clone(), e.clone()]).t_form(),
            rat(1)
        );
        assert_eq!(
            Tensor::from_factors(std::slice::from_ref(&e)).t_form(),
            rat(-1)
        );
        assert_eq!(Tensor::from_factors(&[e, eta(&[1, 2])]).t_form(), rat(0));
    }

    #[test]
    fn pullback_multiplies_fibres() {
        let x = Tensor::from_factors(&[eta(&[1]), eta(&[2])]);
        assert_eq!(
            pullback(&[0, 0], 1, &x).unwrap(),
            Tensor::from_factors(&[eta(&[1, 2])])
        );
        let y = Tensor::from_factors(&[eta(&[2]), eta(&[1])]);
        assert_eq!(
            pullback(&[0, 0], 1, &y).unwrap(),
            Tensor::from_factors(&[eta(&[2, 1])])
        );
        assert_eq!(pullback(&[0, 1], 2, &x).unwrap(), x);
        assert!(pullback(&[0, 0], 2, &x).is_err());
    }

    fn basis_classes() -> Vec<CohA> {
        (0..=4)
            .flat_map(masks_of_degree)
            .map(|m| CohA::monomial(Ambient::V, m, rat(1)))
            .collect()
    }

    #[test]
    fn diagonal_is_adjoint_to_multiplication() {
        let basis = basis_classes();
        for xi in [coh_one(), fundamental(), eta(&[1, 3])] {
            let d = delta_star(2, &xi);
            for b1 in &basis {
                for b2 in &basis {
                    let lhs = d
                        .mul(&Tensor::from_factors(&[b1.clone(), b2.clone()]))
                        .t_form();
                    let rhs = -integrate_a(&xi.wedge(b1).wedge(b2));
                    assert_eq!(lhs, rhs);
                }
            }
        }
        let d = delta_star(2, &fundamental());
        assert_eq!(d.mul(&Tensor::one(2)).t_form(), rat(-1));
    }

    #[test]
    fn triple_diagonal_identity() {
        let basis = basis_classes();
        let d = delta_star(3, &coh_one());
        for b1 in basis.iter().step_by(3) {
            for b2 in &basis {
                for b3 in &basis {
                    let lhs = d
                        .mul(&Tensor::from_factors(&[b1.clone(), b2.clone(), b3.clone()]))
                        .t_form();
                    assert_eq!(lhs, -integrate_a(&b1.wedge(b2).wedge(b3)));
                }
            }
        }
    }

    #[test]
    fn koszul_matches_exterior_sign() {
        // swapping two factors: Koszul sign from shifted degrees vs. exterior sign
        for a in basis_classes() {
            for b in basis_classes() {
                let ab = Tensor::from_factors(&[a.clone(), b.clone()]);
                let ba = Tensor::from_factors(&[b.clone(), a.clone()]);
                let swapped = pullback(&[1, 0], 2, &ab).unwrap();
                let da = a.degree().unwrap_or(0) as i64 - 2;
                let db = b.degree().unwrap_or(0) as i64 - 2;
                let koszul = if (da * db) % 2 == 0 { rat(1) } else { rat(-1) };
                assert_eq!(swapped, ba.scale(&koszul));
            }
        }
    }
}
