//! The endomorphism `Ψ` of `V ⊕ V∨` and the Weil-type structure it induces
//! on tori built from points of `𝒟_h`.

use num_traits::Signed;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exterior::{Ambient, ExtElement};
use crate::field::{frac, rat, QuadExt, Rational, Scalar};
use crate::hodge::{
    graph_matrix, hodge_from_period, polarization_pairing, positivity_check, random_period_point,
    Functional, PeriodPoint, ThetaTriple, C, L_DIM,
};
use crate::linalg::{self, Mat};
use crate::skew::{skew_cayley_check, trace, SkewMap4};
use crate::smith::lattice_covolume;

/// `ϑ`, `h = c(e v₁∨∧v₂∨ + v₃∨∧v₄∨) + sζ∨`, the map `g` with `ω_g = h₀`,
/// and the constants `N`, `b`, `D = N − b²`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeilContext {
    pub t: ThetaTriple,
    pub c: i64,
    pub e: i64,
    pub s: i64,
    pub g: SkewMap4<Rational>,
    pub g_inv: SkewMap4<Rational>,
    pub n: Rational,
    pub b: Rational,
    pub d: Rational,
}

impl WeilContext {
    pub fn new(t: ThetaTriple, c: i64, e: i64, s: i64) -> Result<Self> {
        if c <= 0 || e <= 0 {
            return Err(Error::OutOfRange("c and e must be positive".into()));
        }
        let g = SkewMap4::from_ints([c * e, 0, 0, 0, 0, c]);
        let g_inv = g.inverse()?;
        let k = frac(1, c * c * e);
        let n = &k * &t.t1 / &t.t2;
        let b = &k * rat(s) * &t.t3 / &t.t2;
        let d = &n - &b * &b;
        if !d.is_positive() {
            return Err(Error::Invalid("N − b² must be positive".into()));
        }
        Ok(WeilContext {
            t,
            c,
            e,
            s,
            g,
            g_inv,
            n,
            b,
            d,
        })
    }

    pub fn functional(&self) -> Functional {
        Functional::new(&self.g.omega(), rat(self.s)).expect("degree two")
    }

    /// `c⁻⁴e⁻²(ϑ₃/ϑ₂)²·m·(h,h)∨`, which must equal `D`.
    pub fn d_from_square(&self) -> Rational {
        let r = &self.t.t3 / &self.t.t2;
        frac(1, self.c.pow(4) * self.e * self.e)
            * &r
            * &r
            * &self.t.m
            * self.functional().dual_square(&self.t.m)
    }

    /// `Ψ(v, ℓ) = (g⁻¹ℓ − bv, bℓ − N·g(v))`.
    pub fn psi<F: Scalar>(&self, x: &[F]) -> Vec<F> {
        let (v, l) = (&x[..4], &x[4..]);
        let gi = self.g_inv.map_coeffs(|c| F::from_rational(c.clone()));
        let g = self.g.map_coeffs(|c| F::from_rational(c.clone()));
        let top = gi.apply(l);
        let gv = g.apply(v);
        let mut out: Vec<F> = top
            .iter()
            .zip(v)
            .map(|(a, w)| a.clone() - w.scale(&self.b))
            .collect();
        out.extend(
            l.iter()
                .zip(&gv)
                .map(|(a, w)| a.scale(&self.b) - w.scale(&self.n)),
        );
        out
    }

    /// Matrix of `Ψ` acting on column vectors.
    pub fn psi_matrix(&self) -> Mat<Rational> {
        let cols: Mat<Rational> = linalg::identity::<Rational>(L_DIM)
            .iter()
            .map(|e| self.psi(e))
            .collect();
        linalg::transpose(&cols)
    }

    pub fn psi_squared_is_scalar(&self) -> bool {
        let p = self.psi_matrix();
        let sq = linalg::mat_mul(&p, &p);
        sq == linalg::mat_scale(&linalg::identity(L_DIM), &-self.d.clone())
    }

    /// `√−D` generating `𝕂 = ℚ(√−D)`.
    pub fn sqrt_minus_d(&self) -> QuadExt {
        QuadExt::sqrt(-self.d.clone())
    }

    /// `λ = b ± √−D`.
    pub fn lambda(&self, sign: i32) -> QuadExt {
        QuadExt::rational(self.b.clone()) + self.sqrt_minus_d() * QuadExt::from_int(sign as i64)
    }

    /// `E_± = {(v, λ_± g(v))}`, rows indexed by `v = v₁..v₄`.
    pub fn eigenspace(&self, sign: i32) -> Mat<QuadExt> {
        let lam = self.lambda(sign);
        (0..4)
            .map(|j| {
                let mut row = vec![QuadExt::from_int(0); L_DIM];
                row[j] = QuadExt::from_int(1);
                for i in 0..4 {
                    row[4 + i] = lam.clone() * QuadExt::rational(self.g.matrix()[i][j].clone());
                }
                row
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenReport {
    pub eigenvalue_ok: bool,
    pub isotropic: bool,
    /// `⟨(v,λ₊g v),(w,λ₋g w)⟩ = ϑ₁c⁻²e⁻¹(h,h)∨·ω_g(v,w)` on basis pairs.
    pub cross_pairing_ok: bool,
    /// `λ₊λ₋ = N` and `λ₊ + λ₋ = 2b`.
    pub minimal_polynomial_ok: bool,
}

impl EigenReport {
    pub fn holds(&self) -> bool {
        self.eigenvalue_ok && self.isotropic && self.cross_pairing_ok && self.minimal_polynomial_ok
    }
}

pub fn check_eigenspaces(ctx: &WeilContext) -> EigenReport {
    let h = ctx.functional();
    let t = &ctx.t;
    let root = ctx.sqrt_minus_d();
    let mut eigenvalue_ok = true;
    let mut isotropic = true;
    for sign in [1, -1] {
        let es = ctx.eigenspace(sign);
        let mu = root.clone() * QuadExt::from_int(sign as i64);
        for x in &es {
            let px = ctx.psi(x);
            eigenvalue_ok &= px.iter().zip(x).all(|(a, b)| *a == mu.clone() * b.clone());
        }
        for x in &es {
            for y in &es {
                isotropic &= polarization_pairing(t, &h, x, y).is_zero();
            }
        }
    }
    let (ep, em) = (ctx.eigenspace(1), ctx.eigenspace(-1));
    let factor = &t.t1 * frac(1, ctx.c * ctx.c * ctx.e) * h.dual_square(&t.m);
    let mut cross_pairing_ok = true;
    for i in 0..4 {
        for j in 0..4 {
            let lhs = polarization_pairing(t, &h, &ep[i], &em[j]);
            let rhs = QuadExt::rational(&factor * ctx.g.matrix()[i][j].clone());
            cross_pairing_ok &= lhs == rhs;
        }
    }
    let (l1, l2) = (ctx.lambda(1), ctx.lambda(-1));
    let minimal_polynomial_ok = l1.clone() * l2.clone() == QuadExt::rational(ctx.n.clone())
        && l1 + l2 == QuadExt::rational(rat(2) * &ctx.b);
    EigenReport {
        eigenvalue_ok,
        isotropic,
        cross_pairing_ok,
        minimal_polynomial_ok,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeilReport {
    pub psi_squared: bool,
    pub preserves_h10: bool,
    /// Trace of `Ψ` on `H^{1,0}`; zero iff the `±√−D` eigenspaces are both 2-dimensional.
    pub trace_on_h10: C,
    pub restricted_square: bool,
    pub polarization_scaling: bool,
    /// Graph case only: `Tr(g⁻¹f) = 4b`, `Pf(g⁻¹)Pf(f) = N`, the quadratic
    /// relation for `g⁻¹f`, and its derivation from the Cayley identity.
    pub graph_identities: Option<bool>,
    /// Split case only: `Ψ` preserves `H^{1,0}` for other choices of `N, b`.
    pub split_any_nb: Option<bool>,
}

impl WeilReport {
    pub fn holds(&self) -> bool {
        self.psi_squared
            && self.preserves_h10
            && self.trace_on_h10.is_zero()
            && self.restricted_square
            && self.polarization_scaling
            && self.graph_identities != Some(false)
            && self.split_any_nb != Some(false)
    }
}

/// Matrix of `Ψ` restricted to the row space of `basis`, if it is preserved.
fn restrict(psi: impl Fn(&[C]) -> Vec<C>, basis: &Mat<C>) -> Option<Mat<C>> {
    let bt = linalg::transpose(basis);
    let cols: Option<Vec<Vec<C>>> = basis.iter().map(|x| linalg::solve(&bt, &psi(x))).collect();
    cols.map(|c| linalg::transpose(&c))
}

pub fn verify_weil(ctx: &WeilContext, p: &PeriodPoint) -> Result<WeilReport> {
    let t = &ctx.t;
    let h = ctx.functional();
    if !h.eval(&p.sigma).is_zero() {
        return Err(Error::Invalid("σ is not in h^⊥".into()));
    }
    let hs = hodge_from_period(t, p)?;
    let restricted = restrict(|x| ctx.psi(x), &hs.h10);
    let preserves_h10 = restricted.is_some();
    let (trace_on_h10, restricted_square) = match &restricted {
        Some(m) => {
            let sq = linalg::mat_mul(m, m);
            let target =
                linalg::mat_scale(&linalg::identity(4), &QuadExt::rational(-ctx.d.clone()));
            (trace(m), sq == target)
        }
        None => (C::from_int(1), false),
    };
    let basis = linalg::identity::<Rational>(L_DIM);
    let polarization_scaling = basis.iter().all(|a| {
        basis.iter().all(|b| {
            polarization_pairing(t, &h, &ctx.psi(a), &ctx.psi(b))
                == &ctx.d * polarization_pairing(t, &h, a, b)
        })
    });
    let (graph_identities, split_any_nb) = if p.in_zeta_perp() {
        let mut ok = true;
        for (n, b) in [(rat(2), rat(1)), (frac(-3, 7), frac(5, 2))] {
            let other = WeilContext {
                n,
                b,
                ..ctx.clone()
            };
            ok &= restrict(|x| other.psi(x), &hs.h10).is_some();
        }
        (None, Some(ok))
    } else {
        let a =
            graph_matrix(&hs.h10).ok_or_else(|| Error::Check("H^{1,0} is not a graph".into()))?;
        let f = SkewMap4::from_matrix(a)?;
        let gi = ctx.g_inv.map_coeffs(|c| QuadExt::rational(c.clone()));
        let x = linalg::mat_mul(gi.matrix(), f.matrix());
        let b = QuadExt::rational(ctx.b.clone());
        let n = QuadExt::rational(ctx.n.clone());
        let trace_ok = trace(&x) == QuadExt::from_int(4) * b.clone();
        let pf_ok = gi.pfaffian() * f.pfaffian() == n;
        let mut q = linalg::mat_add(
            &linalg::mat_mul(&x, &x),
            &linalg::mat_scale(&x, &(QuadExt::from_int(-2) * b)),
        );
        for (i, row) in q.iter_mut().enumerate() {
            row[i] = row[i].clone() + n.clone();
        }
        let quad_ok = linalg::is_zero_mat(&q);
        (
            Some(trace_ok && pf_ok && quad_ok && skew_cayley_check(&gi, &f)),
            None,
        )
    };
    Ok(WeilReport {
        psi_squared: ctx.psi_squared_is_scalar(),
        preserves_h10,
        trace_on_h10,
        restricted_square,
        polarization_scaling,
        graph_identities,
        split_any_nb,
    })
}

/// Gram matrix of `H(α,β) = E(α,Ψβ) + √−D·E(α,β)` on `(v₁,0)..(v₄,0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianGram {
    pub matrix: Mat<QuadExt>,
    pub det: QuadExt,
    /// `x` with `x·x̄ = det`.
    pub witness: QuadExt,
}

impl HermitianGram {
    pub fn is_hermitian(&self) -> bool {
        (0..4).all(|i| (0..4).all(|j| self.matrix[j][i] == self.matrix[i][j].conj()))
    }

    pub fn witness_ok(&self) -> bool {
        self.witness.clone() * self.witness.conj() == self.det
    }
}

pub fn hermitian_gram(ctx: &WeilContext) -> Result<HermitianGram> {
    let h = ctx.functional();
    let t = &ctx.t;
    let basis: Mat<Rational> = linalg::identity::<Rational>(L_DIM)[..4].to_vec();
    let matrix: Mat<QuadExt> = basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| {
                    let re = polarization_pairing(t, &h, a, &ctx.psi(b));
                    let im = polarization_pairing(t, &h, a, b);
                    QuadExt::new(re, im, -ctx.d.clone())
                })
                .collect()
        })
        .collect();
    let det = linalg::det(&matrix);
    if det.is_zero() {
        return Err(Error::Degenerate("Hermitian form is degenerate".into()));
    }
    let w = &t.t1 * &t.t1 * rat(ctx.c * ctx.c * ctx.e) * &ctx.d;
    Ok(HermitianGram {
        matrix,
        det,
        witness: QuadExt::rational(w),
    })
}

/// `ϑ₁⁴c⁴e²D²`.
pub fn expected_hermitian_det(ctx: &WeilContext) -> Rational {
    let t1 = &ctx.t.t1;
    t1 * t1 * t1 * t1 * rat(ctx.c.pow(4) * ctx.e * ctx.e) * &ctx.d * &ctx.d
}

/// A random context with `ϑ₁ϑ₂ > 0`, `m = ϑ₁ϑ₂/(2ϑ₃²)` and `D > 0`.
pub fn random_context(rng: &mut impl Rng) -> WeilContext {
    loop {
        let mut th = [0i64; 3];
        for x in th.iter_mut() {
            while *x == 0 {
                *x = rng.random_range(-6..=6);
            }
        }
        if th[0] * th[1] <= 0 {
            continue;
        }
        let m = frac(th[0] * th[1], 2 * th[2] * th[2]);
        let t = ThetaTriple::new(rat(th[0]), rat(th[1]), rat(th[2]), m).expect("nonzero");
        let c = rng.random_range(1..=4);
        let e = rng.random_range(1..=4);
        let s = rng.random_range(-3..=3);
        if num_integer::gcd(c, s) != 1 {
            continue;
        }
        if let Ok(ctx) = WeilContext::new(t, c, e, s) {
            return ctx;
        }
    }
}

/// A random point of `𝒟_h` on the component where [`positivity_check`] returns `+1`.
pub fn random_positive_point(
    ctx: &WeilContext,
    rng: &mut impl Rng,
    in_zeta_perp: bool,
) -> Result<PeriodPoint> {
    let h = ctx.functional();
    let p = random_period_point(&ctx.t, &h, rng, in_zeta_perp);
    Ok(if positivity_check(&ctx.t, &h, &p)? > 0 {
        p
    } else {
        p.conj()
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderThreeExample {
    pub n: Rational,
    pub b: Rational,
    /// `Ψ₀ = 3Ψ`, so `Ψ₀² = −3·Id`.
    pub psi0_square_is_minus_3: bool,
    pub psi_square_is_minus_third: bool,
    pub omega_cubed_is_id: bool,
    pub omega_is_id: bool,
    pub omega_preserves_lattice: bool,
    pub omega_preserves_enlarged: bool,
    pub enlarged_index: num_bigint::BigInt,
}

impl OrderThreeExample {
    pub fn holds(&self) -> bool {
        self.n == frac(1, 3)
            && self.b == rat(0)
            && self.psi0_square_is_minus_3
            && self.psi_square_is_minus_third
            && self.omega_cubed_is_id
            && !self.omega_is_id
            && !self.omega_preserves_lattice
            && self.omega_preserves_enlarged
            && self.enlarged_index == 16.into()
    }
}

fn is_integral(x: &[Rational]) -> bool {
    x.iter().all(|c| c.is_integer())
}

/// Order-three symmetry in the weight-one case `ϑ = (−1, −3, ±3)`, `h = v₁∨∧v₂∨ + v₃∨∧v₄∨`.
pub fn order_three_example(t3: i64) -> Result<OrderThreeExample> {
    let t = ThetaTriple::kummer(2, [-1, -3, t3])?;
    let ctx = WeilContext::new(t, 1, 1, 0)?;
    let psi = ctx.psi_matrix();
    let psi0 = linalg::mat_scale(&psi, &rat(3));
    let id = linalg::identity::<Rational>(L_DIM);
    let psi0_square_is_minus_3 = linalg::mat_mul(&psi0, &psi0) == linalg::mat_scale(&id, &rat(-3));
    let omega = linalg::mat_scale(&linalg::mat_add(&id, &psi0), &frac(-1, 2));
    let cube = linalg::mat_mul(&omega, &linalg::mat_mul(&omega, &omega));
    let apply = |x: &[Rational]| linalg::mat_vec(&omega, x);

    // Generators of the enlarged lattice: V ⊕ V∨ and (v/2, g(v)/2).
    let halves: Mat<Rational> = (0..4)
        .map(|j| {
            let mut v = vec![rat(0); L_DIM];
            v[j] = frac(1, 2);
            for i in 0..4 {
                v[4 + i] = ctx.g.matrix()[i][j].clone() / rat(2);
            }
            v
        })
        .collect();
    let in_enlarged = |y: &[Rational]| -> bool {
        (0u8..16).any(|mask| {
            let mut z = y.to_vec();
            for (j, hv) in halves.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    for (a, b) in z.iter_mut().zip(hv) {
                        *a -= b;
                    }
                }
            }
            is_integral(&z)
        })
    };
    let gens: Mat<Rational> = id.iter().cloned().chain(halves.iter().cloned()).collect();
    let omega_preserves_lattice = id.iter().all(|x| is_integral(&apply(x)));
    let omega_preserves_enlarged = gens.iter().all(|x| in_enlarged(&apply(x)));
    let doubled: crate::smith::IntMat = gens
        .iter()
        .map(|r| r.iter().map(|c| (c * rat(2)).to_integer()).collect())
        .collect();
    // covol(2L′) = 2⁸ / [L′ : L]
    let enlarged_index = num_bigint::BigInt::from(256) / lattice_covolume(&doubled)?;
    Ok(OrderThreeExample {
        n: ctx.n.clone(),
        b: ctx.b.clone(),
        psi0_square_is_minus_3,
        psi_square_is_minus_third: linalg::mat_mul(&psi, &psi)
            == linalg::mat_scale(&id, &frac(-1, 3)),
        omega_cubed_is_id: cube == id,
        omega_is_id: omega == id,
        omega_preserves_lattice,
        omega_preserves_enlarged,
        enlarged_index,
    })
}

/// `ω_g` paired against `v_i ∧ v_j`, used to cross-check the `g` convention.
pub fn omega_g_value(ctx: &WeilContext, i: usize, j: usize) -> Rational {
    let vw = ExtElement::wedge_of(Ambient::V, &[i, j]);
    crate::exterior::pair2(&ctx.g.omega(), &vw)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_constants() {
        for t3 in [3, -3] {
            let ex = order_three_example(t3).unwrap();
            assert!(ex.holds(), "{ex:?}");
        }
    }

    #[test]
    fn g_convention() {
        let ctx = WeilContext::new(ThetaTriple::kummer(2, [-1, -3, 3]).unwrap(), 2, 3, 1).unwrap();
        assert_eq!(omega_g_value(&ctx, 1, 2), rat(6));
        assert_eq!(omega_g_value(&ctx, 3, 4), rat(2));
        assert_eq!(ctx.d, ctx.d_from_square());
    }
}
