//! The Lehn–Sorger ring `H(A){S_m}` and integration on generalized Kummer varieties.
//!
//! A term is a permutation `π` together with a [`Tensor`] indexed by the orbits
//! of `π` in min-element order. The cohomological degree of a term is the
//! tensor degree plus `2(m − #orbits)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::wedge_sign;
use crate::field::{factorial, Rational};
use crate::perm::{joint_orbit_index, Perm};
use crate::surface::{
    delta_star, eta, pullback_unchecked, pushforward_monomial, Coeff, CohA, Tensor,
};

#[derive(Clone, PartialEq)]
pub struct LSElement {
    pub m: usize,
    terms: BTreeMap<Perm, Tensor>,
}

struct PairData {
    zero_defect: bool,
    product: Perm,
    joint: usize,
    s_pi: Vec<usize>,
    s_rho: Vec<usize>,
    s_prod: Vec<usize>,
}

type PushKey = (Vec<usize>, u32);
type PairCache = Mutex<HashMap<(Perm, Perm), Arc<PairData>>>;
type PushCache = Mutex<HashMap<PushKey, Arc<Vec<(u32, i32)>>>>;

fn pair_cache() -> &'static PairCache {
    static CACHE: OnceLock<PairCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn push_cache() -> &'static PushCache {
    static CACHE: OnceLock<PushCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Maps each orbit of `p` (min order) to the joint orbit containing it.
fn orbit_to_joint(p: &Perm, joint: &[usize]) -> Vec<usize> {
    p.orbits().iter().map(|o| joint[o[0]]).collect()
}

/// Graph defect `g(π,ρ)(B) = ½(|B| + 2 − #π-orbits − #ρ-orbits − #πρ-orbits in B)`
/// for each joint orbit `B`, in min-element order.
pub fn graph_defect(pi: &Perm, rho: &Perm) -> Vec<i64> {
    let prod = pi.compose(rho);
    let (joint, nj) = joint_orbit_index(pi, rho);
    let mut size = vec![0i64; nj];
    for &b in &joint {
        size[b] += 1;
    }
    let mut twice = vec![0i64; nj];
    for b in 0..nj {
        twice[b] = size[b] + 2;
    }
    for p in [pi, rho, &prod] {
        for o in p.orbits() {
            twice[joint[o[0]]] -= 1;
        }
    }
    twice
        .into_iter()
        .map(|t| {
            assert!(
                t >= 0 && t % 2 == 0,
                "graph defect must be a nonnegative integer"
            );
            t / 2
        })
        .collect()
}

fn pair_data(pi: &Perm, rho: &Perm) -> Arc<PairData> {
    let key = (pi.clone(), rho.clone());
    if let Some(d) = pair_cache().lock().unwrap().get(&key) {
        return d.clone();
    }
    let product = pi.compose(rho);
    let (joint, nj) = joint_orbit_index(pi, rho);
    let data = Arc::new(PairData {
        zero_defect: graph_defect(pi, rho).iter().all(|&g| g == 0),
        s_pi: orbit_to_joint(pi, &joint),
        s_rho: orbit_to_joint(rho, &joint),
        s_prod: orbit_to_joint(&product, &joint),
        joint: nj,
        product,
    });
    pair_cache().lock().unwrap().insert(key, data.clone());
    data
}

fn cached_push(s: &[usize], nj: usize, y: u32) -> Arc<Vec<(u32, i32)>> {
    let key = (s.to_vec(), y);
    if let Some(v) = push_cache().lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = Arc::new(pushforward_monomial(s, nj, y));
    push_cache().lock().unwrap().insert(key, v.clone());
    v
}

fn push_tensor(s: &[usize], nj: usize, y: &Tensor, out: &mut Tensor) {
    for (mask, c) in y.terms() {
        for &(u, sign) in cached_push(s, nj, mask).iter() {
            out.add_term(u, if sign > 0 { c.clone() } else { -c.clone() });
        }
    }
}

/// `μ_{π,ρ}(a ⊗ b)`, a tensor over the orbits of `πρ`.
fn multiply_terms(pi: &Perm, a: &Tensor, rho: &Perm, b: &Tensor) -> Option<(Perm, Tensor)> {
    let d = pair_data(pi, rho);
    if !d.zero_defect {
        return None;
    }
    let pa = pullback_unchecked(&d.s_pi, d.joint, a);
    let pb = pullback_unchecked(&d.s_rho, d.joint, b);
    let prod = pa.mul(&pb);
    let mut out = Tensor::zero(d.s_prod.len());
    push_tensor(&d.s_prod, d.joint, &prod, &mut out);
    Some((d.product.clone(), out))
}

impl LSElement {
    pub fn zero(m: usize) -> Self {
        LSElement {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(m: usize) -> Self {
        Self::term(Perm::identity(m), Tensor::one(m))
    }

    pub fn term(pi: Perm, t: Tensor) -> Self {
        assert_eq!(
            t.r,
            pi.orbit_count(),
            "tensor must be indexed by the orbits"
        );
        let mut x = Self::zero(pi.m());
        x.add_term(pi, &t);
        x
    }

    /// Element supported on the identity permutation.
    pub fn from_id_tensor(t: Tensor) -> Self {
        Self::term(Perm::identity(t.r), t)
    }

    pub fn add_term(&mut self, pi: Perm, t: &Tensor) {
        if t.is_empty() {
            return;
        }
        match self.terms.get_mut(&pi) {
            Some(old) => {
                old.add_assign(t);
                if old.is_empty() {
                    self.terms.remove(&pi);
                }
            }
            None => {
                self.terms.insert(pi, t.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &Tensor)> {
        self.terms.iter()
    }

    pub fn component(&self, pi: &Perm) -> Option<&Tensor> {
        self.terms.get(pi)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn id_part(&self) -> Tensor {
        self.terms
            .get(&Perm::identity(self.m))
            .cloned()
            .unwrap_or_else(|| Tensor::zero(self.m))
    }

    pub fn is_id_only(&self) -> bool {
        self.terms.keys().all(Perm::is_identity)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m);
        let mut x = self.clone();
        for (p, t) in other.terms() {
            x.add_term(p.clone(), t);
        }
        x
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut x = Self::zero(self.m);
        for (p, t) in self.terms() {
            x.add_term(p.clone(), &t.scale(c));
        }
        x
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Coeff::one()))
    }

    /// Cohomological degree when homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self
            .terms
            .iter()
            .map(|(p, t)| t.degree().map(|d| d + 2 * (self.m - p.orbit_count())));
        let first = degs.next()??;
        for d in degs {
            if d? != first {
                return None;
            }
        }
        Some(first)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "multiplying elements of different rings");
        let mut out = Self::zero(self.m);
        for (pi, a) in self.terms() {
            for (rho, b) in other.terms() {
                if let Some((p, t)) = multiply_terms(pi, a, rho, b) {
                    out.add_term(p, &t);
                }
            }
        }
        out
    }

    /// Identity component of `self · other`, skipping every other product.
    pub fn id_part_of_product(&self, other: &Self) -> Tensor {
        let mut out = Tensor::zero(self.m);
        for (pi, a) in self.terms() {
            if let Some(b) = other.terms.get(&pi.inverse()) {
                if let Some((_, t)) = multiply_terms(pi, a, &pi.inverse(), b) {
                    out.add_assign(&t);
                }
            }
        }
        out
    }

    /// Conjugation action `σ·(t π) = (σ_* t) σπσ⁻¹`.
    pub fn act(&self, sigma: &Perm) -> Self {
        let mut out = Self::zero(self.m);
        for (pi, t) in self.terms() {
            let target = pi.conjugate_by(sigma);
            let (idx, _) = target.orbit_index();
            let s: Vec<usize> = pi.orbits().iter().map(|o| idx[sigma.apply(o[0])]).collect();
            out.add_term(target.clone(), &pullback_unchecked(&s, t.r, t));
        }
        out
    }

    pub fn is_invariant(&self) -> bool {
        Perm::all(self.m).iter().all(|s| self.act(s) == *self)
    }
}

impl fmt::Debug for LSElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, t) in self.terms() {
            writeln!(f, "{p}: {t:?}")?;
        }
        Ok(())
    }
}

/// `Σ_i p_i*(α) Id`.
pub fn mu_class(m: usize, alpha: &CohA) -> LSElement {
    let mut t = Tensor::zero(m);
    for i in 0..m {
        t.add_assign(&Tensor::p_star(m, i, alpha));
    }
    LSElement::from_id_tensor(t)
}

/// `c_m(β) = Σ_{i<j} p_i*(β)(ij)`.
pub fn c_class(m: usize, beta: &CohA) -> Result<LSElement> {
    if m < 2 {
        return Err(Error::OutOfRange("c_m(β) needs m ≥ 2".into()));
    }
    let mut x = LSElement::zero(m);
    for i in 0..m {
        for j in i + 1..m {
            // the orbit {i, j} is the i-th orbit in min order
            x.add_term(
                Perm::transposition(m, i, j),
                &Tensor::p_star(m - 1, i, beta),
            );
        }
    }
    Ok(x)
}

/// Places a tensor over `k` factors into the slots `slots[0..k]` of `m` factors.
fn embed(t: &Tensor, slots: &[usize], m: usize) -> Tensor {
    pullback_unchecked(slots, m, t)
}

/// `c_m(β)·c_m(β′)` by the closed three-sum formula.
pub fn c_square_expand(m: usize, beta: &CohA, beta2: &CohA) -> Result<LSElement> {
    if m < 2 {
        return Err(Error::OutOfRange("c_m(β) needs m ≥ 2".into()));
    }
    let prod = beta.wedge(beta2);
    let mut x = LSElement::zero(m);
    let diag = delta_star(2, &prod);
    for i in 0..m {
        for j in i + 1..m {
            x.add_term(Perm::identity(m), &embed(&diag, &[i, j], m));
        }
    }
    for h in 0..m {
        for k in 0..m {
            for l in 0..m {
                if h == k || k == l || h == l {
                    continue;
                }
                let low = h.min(k).min(l);
                x.add_term(
                    Perm::cycle(m, &[h, k, l]),
                    &Tensor::p_star(m - 2, low, &prod),
                );
            }
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            for h in 0..m {
                for k in h + 1..m {
                    if [h, k].contains(&i) || [h, k].contains(&j) {
                        continue;
                    }
                    let (a, b) = if (i < h && h < j) || (h < i && i < k) {
                        (i, h)
                    } else if j < h {
                        (i, h - 1)
                    } else {
                        (i - 1, h)
                    };
                    let z = Tensor::p_star(m - 2, a, beta).mul(&Tensor::p_star(m - 2, b, beta2));
                    let p = Perm::transposition(m, i, j).compose(&Perm::transposition(m, h, k));
                    x.add_term(p, &z);
                }
            }
        }
    }
    Ok(x)
}

/// The cutting class `ω = Π_{s=1..4} Σ_i p_i*(η_s)`.
pub fn cutting_class(m: usize) -> Tensor {
    (1..=4).fold(Tensor::one(m), |acc, s| {
        acc.mul(&mu_class(m, &eta(&[s])).id_part())
    })
}

/// Coefficient of the top monomial in `a·b` without forming the product.
pub fn top_pairing(a: &Tensor, b: &Tensor) -> Rational {
    assert_eq!(a.r, b.r);
    let top = if a.r == 8 {
        u32::MAX
    } else {
        (1u32 << (4 * a.r)) - 1
    };
    let mut acc = Rational::zero();
    for (ma, ca) in a.terms() {
        let cb = b.coeff(top & !ma);
        if !cb.is_zero() {
            let s = wedge_sign(ma, top & !ma);
            acc += if s > 0 { ca * &cb } else { -(ca * &cb) };
        }
    }
    acc
}

/// `∫_{K_n(A)}` of a class of degree `4n` in the ring with `m = n + 1`.
pub fn integrate_kummer(n: usize, x: &LSElement) -> Result<Rational> {
    let m = n + 1;
    if x.m != m {
        return Err(Error::Invalid(format!(
            "element lives in S_{} not S_{m}",
            x.m
        )));
    }
    match x.degree() {
        Some(d) if d == 4 * n => {}
        Some(d) => return Err(Error::IntegrandDegree { got: d, top: 4 * n }),
        None if x.is_zero() => return Ok(Rational::zero()),
        None => return Err(Error::Invalid("integrand is not homogeneous".into())),
    }
    Ok(top_pairing(&x.id_part(), &cutting_class(m)) / Rational::from_integer(factorial(m as u64)))
}

/// `∫_{K_n(A)} x₁ ⋯ x_k` for homogeneous invariant factors.
///
/// Only the identity component of the product contributes, so factors
/// supported on the identity are moved to the end (with the graded sign), the
/// remaining ones are multiplied generically, and of the last product only the
/// identity component is formed.
pub fn integrate_product(n: usize, factors: &[LSElement]) -> Result<Rational> {
    let m = n + 1;
    let mut degrees = Vec::with_capacity(factors.len());
    for f in factors {
        if f.m != m {
            return Err(Error::Invalid(format!(
                "factor lives in S_{} not S_{m}",
                f.m
            )));
        }
        if f.is_zero() {
            return Ok(Rational::zero());
        }
        degrees.push(
            f.degree()
                .ok_or_else(|| Error::Invalid("factor is not homogeneous".into()))?,
        );
    }
    let total: usize = degrees.iter().sum();
    if total != 4 * n {
        return Err(Error::IntegrandDegree {
            got: total,
            top: 4 * n,
        });
    }
    let mut sign_odd = false;
    for (i, fi) in factors.iter().enumerate() {
        if fi.is_id_only() {
            for (j, fj) in factors.iter().enumerate().skip(i + 1) {
                if !fj.is_id_only() && degrees[i] % 2 == 1 && degrees[j] % 2 == 1 {
                    sign_odd = !sign_odd;
                }
            }
        }
    }
    let moving: Vec<&LSElement> = factors.iter().filter(|f| !f.is_id_only()).collect();
    let mut id = match moving.len() {
        0 => Tensor::one(m),
        1 => moving[0].id_part(),
        k => {
            let mut acc = moving[0].clone();
            for f in &moving[1..k - 1] {
                acc = acc.mul(f);
            }
            acc.id_part_of_product(moving[k - 1])
        }
    };
    for f in factors.iter().filter(|f| f.is_id_only()) {
        id = id.mul(&f.id_part());
    }
    let value = top_pairing(&id, &cutting_class(m)) / Rational::from_integer(factorial(m as u64));
    Ok(if sign_odd { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::surface::{coh_one, fundamental};

    #[test]
    fn graph_defect_examples() {
        let id = Perm::identity(2);
        assert_eq!(graph_defect(&id, &id), vec![0, 0]);
        let t = Perm::transposition(2, 0, 1);
        assert_eq!(graph_defect(&t, &t), vec![0]);
        let c = Perm::cycle(3, &[0, 1, 2]);
        assert_eq!(graph_defect(&c, &c), vec![1]);
    }

    #[test]
    fn transposition_square_is_diagonal() {
        let b = eta(&[1, 2]);
        let b2 = eta(&[3]);
        let x = LSElement::term(Perm::transposition(2, 0, 1), Tensor::p_star(1, 0, &b));
        let y = LSElement::term(Perm::transposition(2, 0, 1), Tensor::p_star(1, 0, &b2));
        let expected = LSElement::from_id_tensor(delta_star(2, &b.wedge(&b2)));
        assert_eq!(x.mul(&y), expected);
    }

    #[test]
    fn three_cycle_times_inverse() {
        let b = eta(&[1]);
        let b2 = eta(&[2, 4]);
        let x = LSElement::term(Perm::cycle(3, &[0, 1, 2]), Tensor::p_star(1, 0, &b));
        let y = LSElement::term(Perm::cycle(3, &[2, 1, 0]), Tensor::p_star(1, 0, &b2));
        assert_eq!(
            x.mul(&y),
            LSElement::from_id_tensor(delta_star(3, &b.wedge(&b2)))
        );
    }

    #[test]
    fn classes_are_invariant() {
        for m in 2..=4 {
            assert!(c_class(m, &eta(&[1, 3])).unwrap().is_invariant());
            assert!(c_class(m, &eta(&[2])).unwrap().is_invariant());
            assert!(mu_class(m, &eta(&[1, 2, 4])).is_invariant());
        }
        assert_eq!(c_class(3, &coh_one()).unwrap().terms().count(), 3);
        assert_eq!(mu_class(3, &coh_one()), LSElement::unit(3).scale(&rat(3)));
    }

    #[test]
    fn fundamental_class_integral() {
        // Γ(η^{⊗m} Id) = η_{A^[m]}/m!, and ∫_{K_n} of a point class under ω is 1/m!·m!·…
        let x = mu_class(3, &fundamental());
        let y = x.mul(&x);
        assert_eq!(y.degree(), Some(8));
        assert!(integrate_kummer(2, &y).is_ok());
    }
}
