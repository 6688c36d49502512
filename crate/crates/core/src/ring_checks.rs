//! Randomized property checks for the ring layer: associativity and graded
//! commutativity of the orbifold product on invariants, the closed expansion of
//! `c_m(β)c_m(β′)`, adjointness of pushforward and pullback, and `Pf² = det`.

use rand::Rng;

use crate::error::Result;
use crate::exterior::{masks_of_degree, Ambient};
use crate::field::{rat, Rational};
use crate::lehn_sorger::{c_class, c_square_expand, mu_class, LSElement};
use crate::skew::SkewMap4;
use crate::surface::{pullback, pushforward, CohA, Tensor};

/// Outcome of one randomized property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyCount {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
}

impl PropertyCount {
    pub fn holds(&self) -> bool {
        self.trials > 0 && self.failures == 0
    }
}

fn small(rng: &mut impl Rng, r: i64) -> Rational {
    rat(rng.random_range(-r..=r))
}

/// A random homogeneous class of the given degree on the surface.
pub fn random_class(rng: &mut impl Rng, degree: usize) -> CohA {
    let mut x = CohA::zero(Ambient::V);
    for m in masks_of_degree(degree) {
        x.add_term(m, small(rng, 2));
    }
    x
}

/// A random homogeneous invariant: `μ(α)`, `c(β)` or a product of two such.
pub fn random_invariant(rng: &mut impl Rng, m: usize) -> Result<LSElement> {
    let x = random_generator(rng, m)?;
    if rng.random_bool(0.3) {
        Ok(x.mul(&random_generator(rng, m)?))
    } else {
        Ok(x)
    }
}

fn random_generator(rng: &mut impl Rng, m: usize) -> Result<LSElement> {
    let d = rng.random_range(0..=3usize);
    let a = random_class(rng, d);
    if m >= 2 && rng.random_bool(0.5) {
        c_class(m, &a)
    } else {
        Ok(mu_class(m, &a))
    }
}

fn parity_sign(a: &LSElement, b: &LSElement) -> Rational {
    match (a.degree(), b.degree()) {
        (Some(x), Some(y)) if x * y % 2 == 1 => rat(-1),
        _ => rat(1),
    }
}

pub fn associativity(rng: &mut impl Rng, m: usize, trials: usize) -> Result<PropertyCount> {
    let mut failures = 0;
    for _ in 0..trials {
        let x = random_invariant(rng, m)?;
        let y = random_invariant(rng, m)?;
        let z = random_invariant(rng, m)?;
        if x.mul(&y).mul(&z) != x.mul(&y.mul(&z)) {
            failures += 1;
        }
    }
    Ok(PropertyCount {
        name: "associativity",
        trials,
        failures,
    })
}

/// `xy = (−1)^{|x||y|} yx`, and products of invariants stay invariant.
pub fn graded_commutativity(rng: &mut impl Rng, m: usize, trials: usize) -> Result<PropertyCount> {
    let mut failures = 0;
    for _ in 0..trials {
        let x = random_invariant(rng, m)?;
        let y = random_invariant(rng, m)?;
        let xy = x.mul(&y);
        if xy != y.mul(&x).scale(&parity_sign(&x, &y)) || !xy.is_invariant() {
            failures += 1;
        }
    }
    Ok(PropertyCount {
        name: "graded commutativity",
        trials,
        failures,
    })
}

pub fn c_square_matches_product(
    rng: &mut impl Rng,
    m: usize,
    trials: usize,
) -> Result<PropertyCount> {
    let mut failures = 0;
    for _ in 0..trials {
        let (d, d2) = (rng.random_range(0..=4), rng.random_range(0..=4));
        let b = random_class(rng, d);
        let b2 = random_class(rng, d2);
        let direct = c_class(m, &b)?.mul(&c_class(m, &b2)?);
        if direct != c_square_expand(m, &b, &b2)? {
            failures += 1;
        }
    }
    Ok(PropertyCount {
        name: "c-square expansion",
        trials,
        failures,
    })
}

fn random_tensor(rng: &mut impl Rng, r: usize) -> Tensor {
    let mut t = Tensor::zero(r);
    for _ in 0..4 {
        let mask = rng.random_range(0..(1u32 << (4 * r)));
        t.add_term(mask, small(rng, 3));
    }
    t
}

/// A random surjection `0..ni → 0..nj`.
fn random_surjection(rng: &mut impl Rng, ni: usize, nj: usize) -> Vec<usize> {
    loop {
        let s: Vec<usize> = (0..ni).map(|_| rng.random_range(0..nj)).collect();
        if (0..nj).all(|j| s.contains(&j)) {
            return s;
        }
    }
}

/// `T_I(f_*(y)·x) = T_J(y·f*(x))` for random surjections and tensors.
pub fn pushforward_adjoint(
    rng: &mut impl Rng,
    max_factors: usize,
    trials: usize,
) -> Result<PropertyCount> {
    let mut failures = 0;
    for _ in 0..trials {
        let ni = rng.random_range(1..=max_factors);
        let nj = rng.random_range(1..=ni);
        let s = random_surjection(rng, ni, nj);
        let x = random_tensor(rng, ni);
        let y = random_tensor(rng, nj);
        let lhs = pushforward(&s, nj, &y)?.mul(&x).t_form();
        let rhs = y.mul(&pullback(&s, nj, &x)?).t_form();
        if lhs != rhs {
            failures += 1;
        }
    }
    Ok(PropertyCount {
        name: "pushforward adjointness",
        trials,
        failures,
    })
}

pub fn pfaffian_squared(rng: &mut impl Rng, trials: usize) -> PropertyCount {
    let mut failures = 0;
    for _ in 0..trials {
        let a = std::array::from_fn(|_| small(rng, 9));
        let f = SkewMap4::from_upper(a);
        let pf = f.pfaffian();
        if &pf * &pf != f.det() {
            failures += 1;
        }
    }
    PropertyCount {
        name: "Pf² = det",
        trials,
        failures,
    }
}

/// All ring properties for `2 ≤ m ≤ max_m`.
pub fn run_all(
    rng: &mut impl Rng,
    max_m: usize,
    trials: usize,
) -> Result<Vec<(usize, PropertyCount)>> {
    let mut out = Vec::new();
    for m in 2..=max_m {
        out.push((m, associativity(rng, m, trials)?));
        out.push((m, graded_commutativity(rng, m, trials)?));
        out.push((m, c_square_matches_product(rng, m, trials)?));
    }
    out.push((max_m, pushforward_adjoint(rng, max_m, 4 * trials)?));
    out.push((0, pfaffian_squared(rng, 10 * trials)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_ring_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (m, p) in run_all(&mut rng, 3, 6).unwrap() {
            assert!(p.holds(), "m = {m}: {p:?}");
        }
    }
}
