//! Weight-one Hodge structures on `V ⊕ V∨` from weight-two period points.

use rand::Rng;

use crate::error::{Error, Result};
use crate::exterior::{
    iota, iota_inv, masks_of_degree, pair2, wedge2_basis, Ambient, ExtElement, TOP,
};
use crate::field::{frac, rat, QuadExt, Rational, Scalar};
use crate::linalg::{self, Mat};
use crate::skew::SkewMap4;

/// `(ϑ₁, ϑ₂, ϑ₃)` together with the constant `m` of the form on `∧²V ⊕ ℚζ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaTriple {
    pub t1: Rational,
    pub t2: Rational,
    pub t3: Rational,
    pub m: Rational,
}

impl ThetaTriple {
    pub fn new(t1: Rational, t2: Rational, t3: Rational, m: Rational) -> Result<Self> {
        if t1.is_zero() || t2.is_zero() || t3.is_zero() {
            return Err(Error::Invalid("ϑ components must be nonzero".into()));
        }
        if m <= rat(0) {
            return Err(Error::Invalid("m must be positive".into()));
        }
        Ok(ThetaTriple { t1, t2, t3, m })
    }

    /// A triple with `m = 1/(2(n+1))`.
    pub fn kummer(n: usize, t: [i64; 3]) -> Result<Self> {
        Self::new(rat(t[0]), rat(t[1]), rat(t[2]), frac(1, 2 * (n as i64 + 1)))
    }

    /// `ϑ₁ϑ₂ = 2mϑ₃²`.
    pub fn satisfies_relation(&self) -> bool {
        &self.t1 * &self.t2 == Rational::from_integer(2.into()) * &self.m * &self.t3 * &self.t3
    }
}

/// Coordinates on `∧²V ⊕ ℚζ`: the six `wedge2_basis` coefficients, then `ζ`.
pub const W_DIM: usize = 7;
/// Coordinates on `V ⊕ V∨`: `v₁..v₄`, then `v₁∨..v₄∨`.
pub const L_DIM: usize = 8;

fn split8<F: Scalar>(a: &[F]) -> (ExtElement<F>, ExtElement<F>) {
    assert_eq!(a.len(), L_DIM);
    (
        ExtElement::vector(Ambient::V, &a[..4]),
        ExtElement::vector(Ambient::Dual, &a[4..]),
    )
}

fn w2_coords<F: Scalar>(x: &ExtElement<F>) -> Vec<F> {
    wedge2_basis().iter().map(|&m| x.coeff(m)).collect()
}

fn w2_element<F: Scalar>(ambient: Ambient, c: &[F]) -> ExtElement<F> {
    let mut x = ExtElement::zero(ambient);
    for (&m, v) in wedge2_basis().iter().zip(c) {
        x.add_term(m, v.clone());
    }
    x
}

fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// `Φ_ϑ((v,g) ∧ (w,h)) = (ϑ₁ v∧w + ϑ₂ ι(g∧h), ϑ₃(g(w) − h(v)))`.
pub fn phi_theta<F: Scalar>(t: &ThetaTriple, a: &[F], b: &[F]) -> Vec<F> {
    let (v, g) = split8(a);
    let (w, h) = split8(b);
    let gh = iota(&g.wedge(&h)).expect("degree two in V∨");
    let t1 = F::from_rational(t.t1.clone());
    let t2 = F::from_rational(t.t2.clone());
    let t3 = F::from_rational(t.t3.clone());
    let mut out: Vec<F> = w2_coords(&v.wedge(&w))
        .into_iter()
        .zip(w2_coords(&gh))
        .map(|(x, y)| t1.clone() * x + t2.clone() * y)
        .collect();
    out.push(t3 * (dot(&a[4..], &b[..4]) - dot(&b[4..], &a[..4])));
    out
}

/// The form `(α + xζ, β + yζ) = vol(α∧β) − m·xy` on `∧²V ⊕ ℚζ`.
pub fn form_w<F: Scalar>(m: &Rational, x: &[F], y: &[F]) -> F {
    let a = w2_element(Ambient::V, &x[..6]);
    let b = w2_element(Ambient::V, &y[..6]);
    let vol = a.wedge(&b).coeff(TOP);
    vol - F::from_rational(m.clone()) * x[6].clone() * y[6].clone()
}

/// An integral functional `h = h₀ + sζ∨` on `∧²V ⊕ ℤζ`, with `h₀ ∈ ∧²V∨`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    pub coeffs: Vec<Rational>,
}

impl Functional {
    pub fn new(h0: &ExtElement<Rational>, s: Rational) -> Result<Self> {
        if h0.ambient != Ambient::Dual {
            return Err(Error::Ambient);
        }
        if !h0.is_zero() && h0.degree() != Some(2) {
            return Err(Error::Degree { expected: 2 });
        }
        let mut coeffs = w2_coords(h0);
        coeffs.push(s);
        Ok(Functional { coeffs })
    }

    pub fn from_coords(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != W_DIM {
            return Err(Error::Invalid("functional needs seven coordinates".into()));
        }
        Ok(Functional { coeffs })
    }

    pub fn h0(&self) -> ExtElement<Rational> {
        w2_element(Ambient::Dual, &self.coeffs[..6])
    }

    pub fn s(&self) -> &Rational {
        &self.coeffs[6]
    }

    pub fn eval<F: Scalar>(&self, y: &[F]) -> F {
        self.coeffs
            .iter()
            .zip(y)
            .fold(F::zero(), |acc, (h, x)| acc + x.scale(h))
    }

    /// `(h, h)∨ = vol∨(h₀∧h₀) − s²/m`.
    pub fn dual_square(&self, m: &Rational) -> Rational {
        let h0 = self.h0();
        h0.wedge(&h0).coeff(TOP) - self.s() * self.s() / m
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Functional {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }
}

/// `⟨a, b⟩_{ϑ,h} = ⟨h, Φ_ϑ(a∧b)⟩`.
pub fn polarization_pairing<F: Scalar>(t: &ThetaTriple, h: &Functional, a: &[F], b: &[F]) -> F {
    h.eval(&phi_theta(t, a, b))
}

/// Images `Φ(γ_i ∧ γ_j)` for `i < j` over the rows of `gamma`.
pub fn wedge_images<F: Scalar>(t: &ThetaTriple, gamma: &Mat<F>) -> Mat<F> {
    let mut out = Vec::new();
    for i in 0..gamma.len() {
        for j in i + 1..gamma.len() {
            out.push(phi_theta(t, &gamma[i], &gamma[j]));
        }
    }
    out
}

/// `dim Φ(∧²Γ)` by direct rank computation.
pub fn image_rank<F: Scalar>(t: &ThetaTriple, gamma: &Mat<F>) -> usize {
    linalg::rank(&wedge_images(t, gamma))
}

/// Whether two nonzero vectors span the same line.
pub fn proportional<F: Scalar>(x: &[F], y: &[F]) -> bool {
    let nonzero = |v: &[F]| v.iter().any(|c| !c.is_zero());
    nonzero(x) && nonzero(y) && linalg::rank(&vec![x.to_vec(), y.to_vec()]) == 1
}

#[derive(Clone, Debug, PartialEq)]
pub enum Classification<F: Scalar> {
    /// `Γ` is the graph of `f` with `ϑ₁ = ϑ₂·Pf(f)`.
    Graph(SkewMap4<F>),
    /// `Γ = U ⊕ U^⊥`, with `U` given by two rows in `V`.
    Split(Mat<F>),
    NotOneDim,
}

impl<F: Scalar> Classification<F> {
    /// The line `Φ(∧²Γ)`: `ϑ₂ι(ω_f) − 2ϑ₃ζ` or `∧²U`.
    pub fn image_line(&self, t: &ThetaTriple) -> Option<Vec<F>> {
        match self {
            Classification::Graph(f) => {
                let t2 = F::from_rational(t.t2.clone());
                let mut y: Vec<F> = w2_coords(&iota(&f.omega()).expect("degree two"))
                    .into_iter()
                    .map(|c| t2.clone() * c)
                    .collect();
                y.push(F::from_rational(rat(-2) * &t.t3));
                Some(y)
            }
            Classification::Split(u) => {
                let a = ExtElement::vector(Ambient::V, &u[0]);
                let b = ExtElement::vector(Ambient::V, &u[1]);
                let mut y = w2_coords(&a.wedge(&b));
                y.push(F::zero());
                Some(y)
            }
            Classification::NotOneDim => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Classification::Graph(_) => "graph",
            Classification::Split(_) => "split",
            Classification::NotOneDim => "not-one-dim",
        }
    }
}

/// The map `A` with `Γ = {(v, Av)}`, when the projection of `Γ` to `V` is onto.
pub fn graph_matrix<F: Scalar>(gamma: &Mat<F>) -> Option<Mat<F>> {
    let p: Mat<F> = gamma.iter().map(|r| r[..4].to_vec()).collect();
    let l: Mat<F> = gamma.iter().map(|r| r[4..].to_vec()).collect();
    let pt_inv = linalg::inverse(&linalg::transpose(&p))?;
    Some(linalg::mat_mul(&linalg::transpose(&l), &pt_inv))
}

fn check_plane<F: Scalar>(gamma: &Mat<F>) -> Result<()> {
    if gamma.len() != 4 || gamma.iter().any(|r| r.len() != L_DIM) {
        return Err(Error::Invalid("expected four vectors in V ⊕ V∨".into()));
    }
    if linalg::rank(gamma) != 4 {
        return Err(Error::Invalid("vectors do not span a 4-plane".into()));
    }
    Ok(())
}

/// Annihilator of the row space of `u` inside `V∨`.
pub fn annihilator<F: Scalar>(u: &Mat<F>) -> Mat<F> {
    linalg::nullspace(u, 4)
}

/// Decides whether `Φ_ϑ(∧²Γ)` is a line and in which of the two ways.
pub fn classify_subspace<F: Scalar>(t: &ThetaTriple, gamma: &Mat<F>) -> Result<Classification<F>> {
    check_plane(gamma)?;
    if let Some(a) = graph_matrix(gamma) {
        let Ok(f) = SkewMap4::from_matrix(a) else {
            return Ok(Classification::NotOneDim);
        };
        let pf = f.pfaffian();
        let t1 = F::from_rational(t.t1.clone());
        let t2 = F::from_rational(t.t2.clone());
        if !pf.is_zero() && t1 == t2 * pf {
            return Ok(Classification::Graph(f));
        }
        return Ok(Classification::NotOneDim);
    }
    let zero4 = vec![F::zero(); 4];
    let v_part: Mat<F> = (0..4)
        .map(|k| {
            let mut e = vec![F::zero(); L_DIM];
            e[k] = F::one();
            e
        })
        .collect();
    let dual_part: Mat<F> = (4..L_DIM)
        .map(|k| {
            let mut e = vec![F::zero(); L_DIM];
            e[k] = F::one();
            e
        })
        .collect();
    let in_v = linalg::intersect(gamma, &v_part);
    let in_dual = linalg::intersect(gamma, &dual_part);
    if in_v.len() != 2 || in_dual.len() != 2 {
        return Ok(Classification::NotOneDim);
    }
    let u: Mat<F> = in_v.iter().map(|r| r[..4].to_vec()).collect();
    let perp: Mat<F> = annihilator(&u)
        .into_iter()
        .map(|l| zero4.iter().cloned().chain(l).collect())
        .collect();
    if linalg::row_space(&perp) != linalg::row_space(&in_dual) {
        return Ok(Classification::NotOneDim);
    }
    Ok(Classification::Split(u))
}

pub type C = QuadExt;

pub fn conj_vec(x: &[C]) -> Vec<C> {
    x.iter().map(C::conj).collect()
}

pub fn conj_mat(m: &Mat<C>) -> Mat<C> {
    m.iter().map(|r| conj_vec(r)).collect()
}

fn to_c(x: &[Rational]) -> Vec<C> {
    x.iter().cloned().map(C::rational).collect()
}

fn real_part(z: &C, what: &str) -> Result<Rational> {
    z.as_rational()
        .ok_or_else(|| Error::Check(format!("{what} is not real: {z}")))
}

/// A point `[σ]` of the period domain, with `ℚ(i)` coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodPoint {
    pub sigma: Vec<C>,
}

impl PeriodPoint {
    /// Checks `(σ,σ) = 0` and `(σ,σ̄) > 0`.
    pub fn new(m: &Rational, sigma: Vec<C>) -> Result<Self> {
        if sigma.len() != W_DIM {
            return Err(Error::Invalid(
                "period point needs seven coordinates".into(),
            ));
        }
        if !form_w(m, &sigma, &sigma).is_zero() {
            return Err(Error::Invalid("(σ,σ) ≠ 0".into()));
        }
        let h = real_part(&form_w(m, &sigma, &conj_vec(&sigma)), "(σ,σ̄)")?;
        if h <= rat(0) {
            return Err(Error::Invalid("(σ,σ̄) is not positive".into()));
        }
        Ok(PeriodPoint { sigma })
    }

    pub fn conj(&self) -> Self {
        PeriodPoint {
            sigma: conj_vec(&self.sigma),
        }
    }

    pub fn in_zeta_perp(&self) -> bool {
        self.sigma[6].is_zero()
    }
}

/// A weight-one Hodge structure on `V ⊕ V∨`, stored by a basis of `H^{1,0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightOneHS {
    pub h10: Mat<C>,
}

impl WeightOneHS {
    pub fn h01(&self) -> Mat<C> {
        conj_mat(&self.h10)
    }

    /// `H^{1,0} ∩ H^{0,1} = 0`, equivalently no nonzero real vector in `H^{1,0}`.
    pub fn is_transversal(&self) -> bool {
        let stacked: Mat<C> = self.h10.iter().chain(self.h01().iter()).cloned().collect();
        linalg::rank(&stacked) == L_DIM
    }

    /// `Φ(∧²H^{1,0}) = [σ]`.
    pub fn spans_line(&self, t: &ThetaTriple, sigma: &[C]) -> bool {
        let images = wedge_images(t, &self.h10);
        let nonzero: Vec<&Vec<C>> = images
            .iter()
            .filter(|y| y.iter().any(|c| !c.is_zero()))
            .collect();
        !nonzero.is_empty() && nonzero.iter().all(|y| proportional(y, sigma))
    }

    /// `Φ(H^{1,0} ∧ H^{0,1}) ⊥ σ`.
    pub fn mixed_orthogonal(&self, t: &ThetaTriple, sigma: &[C]) -> bool {
        let h01 = self.h01();
        self.h10.iter().all(|a| {
            h01.iter()
                .all(|b| form_w(&t.m, &phi_theta(t, a, b), sigma).is_zero())
        })
    }

    /// `⟨,⟩_{ϑ,h}` vanishes on `H^{1,0}`.
    pub fn isotropic_for(&self, t: &ThetaTriple, h: &Functional) -> bool {
        let rows = &self.h10;
        (0..4).all(|i| (i + 1..4).all(|j| polarization_pairing(t, h, &rows[i], &rows[j]).is_zero()))
    }

    /// The Hermitian matrix `G_kl = i⟨a_k, ā_l⟩_{ϑ,h}`.
    pub fn hermitian_gram(&self, t: &ThetaTriple, h: &Functional) -> Mat<C> {
        let h01 = self.h01();
        self.h10
            .iter()
            .map(|a| {
                h01.iter()
                    .map(|b| C::i() * polarization_pairing(t, h, a, b))
                    .collect()
            })
            .collect()
    }

    pub fn canonical(&self) -> Mat<C> {
        linalg::row_space(&self.h10)
    }
}

/// The unique `H^{1,0}` with `Φ_ϑ(∧²H^{1,0}) = [σ]`.
pub fn hodge_from_period(t: &ThetaTriple, p: &PeriodPoint) -> Result<WeightOneHS> {
    if !t.satisfies_relation() {
        return Err(Error::Invalid("ϑ₁ϑ₂ ≠ 2mϑ₃²".into()));
    }
    let p = PeriodPoint::new(&t.m, p.sigma.clone())?;
    let sigma = &p.sigma;
    let h10 = if !sigma[6].is_zero() {
        // Rescale to σ = ϑ₂α − 2ϑ₃ζ and take the graph of f with ι(ω_f) = α.
        let lambda = C::rational(rat(-2) * &t.t3)
            .div(&sigma[6])
            .expect("nonzero ζ coefficient");
        let t2inv = C::rational(t.t2.recip());
        let alpha: Vec<C> = sigma[..6]
            .iter()
            .map(|c| lambda.clone() * c.clone() * t2inv.clone())
            .collect();
        let omega = iota_inv(&w2_element(Ambient::V, &alpha))?;
        let f = SkewMap4::from_omega(&omega)?;
        (0..4)
            .map(|j| {
                let mut row = vec![C::zero(); L_DIM];
                row[j] = C::one();
                for i in 0..4 {
                    row[4 + i] = f.matrix()[i][j].clone();
                }
                row
            })
            .collect()
    } else {
        let eta = w2_element(Ambient::V, &sigma[..6]);
        // U = {v : v ∧ σ = 0}; columns of the map are v_k ∧ σ.
        let cols: Vec<Vec<C>> = (0..4)
            .map(|k| {
                let v = ExtElement::monomial(Ambient::V, 1 << k, C::one());
                masks_of_degree(3)
                    .iter()
                    .map(|&m| v.wedge(&eta).coeff(m))
                    .collect()
            })
            .collect();
        let u = linalg::nullspace(&linalg::transpose(&cols), 4);
        if u.len() != 2 {
            return Err(Error::Degenerate("σ ∈ ζ^⊥ is not decomposable".into()));
        }
        let perp = annihilator(&u);
        let zero4 = vec![C::zero(); 4];
        u.iter()
            .map(|r| r.iter().cloned().chain(zero4.clone()).collect())
            .chain(
                perp.into_iter()
                    .map(|l| zero4.iter().cloned().chain(l).collect()),
            )
            .collect()
    };
    Ok(WeightOneHS { h10 })
}

/// Sign `±1` of the definite Hermitian form `i⟨·, ·̄⟩_{ϑ,h}` on `H^{1,0}`.
pub fn positivity_check(t: &ThetaTriple, h: &Functional, p: &PeriodPoint) -> Result<i32> {
    if !h.eval(&p.sigma).is_zero() {
        return Err(Error::Invalid("⟨h,σ⟩ ≠ 0".into()));
    }
    if h.dual_square(&t.m) <= rat(0) {
        return Err(Error::Invalid("h does not have positive square".into()));
    }
    let hs = hodge_from_period(t, p)?;
    let g = hs.hermitian_gram(t, h);
    let mut sign = 0;
    for k in 1..=4 {
        let sub: Mat<C> = g[..k].iter().map(|r| r[..k].to_vec()).collect();
        let d = real_part(&linalg::det(&sub), "leading minor")?;
        if d.is_zero() {
            return Err(Error::Check(format!("leading minor {k} vanishes")));
        }
        let s = if d > rat(0) { 1 } else { -1 };
        if k == 1 {
            sign = s;
        } else if s != if k % 2 == 0 { 1 } else { sign } {
            return Err(Error::Check(format!(
                "leading minor {k} has the wrong sign"
            )));
        }
    }
    Ok(sign)
}

fn small(rng: &mut impl Rng, r: i64) -> Rational {
    rat(rng.random_range(-r..=r))
}

fn gaussian(rng: &mut impl Rng, r: i64) -> C {
    C::gaussian(small(rng, r), small(rng, r))
}

/// A random functional with `(h,h)∨ > 0`.
pub fn random_positive_functional(rng: &mut impl Rng, m: &Rational) -> Functional {
    loop {
        let h = Functional {
            coeffs: (0..W_DIM).map(|_| small(rng, 3)).collect(),
        };
        if h.dual_square(m) > rat(0) {
            return h;
        }
    }
}

/// A random point of `𝒟_h`, optionally inside `ζ^⊥`.
///
/// Starts from a rational decomposable `σ₀ = u∧u′ ∈ h^⊥` and reflects it
/// along a random `w ∈ h^⊥`: `σ = (w,w)σ₀ − 2(σ₀,w)w` stays isotropic.
pub fn random_period_point(
    t: &ThetaTriple,
    h: &Functional,
    rng: &mut impl Rng,
    in_zeta_perp: bool,
) -> PeriodPoint {
    let h0 = h.h0();
    let mut constraints: Mat<Rational> = vec![h.coeffs.clone()];
    if in_zeta_perp {
        let mut z = vec![rat(0); W_DIM];
        z[6] = rat(1);
        constraints.push(z);
    }
    let perp = linalg::nullspace(&constraints, W_DIM);
    loop {
        let u: Vec<Rational> = (0..4).map(|_| small(rng, 3)).collect();
        let ue = ExtElement::vector(Ambient::V, &u);
        let lin: Vec<Rational> = (0..4)
            .map(|k| {
                pair2(
                    &h0,
                    &ue.wedge(&ExtElement::monomial(Ambient::V, 1 << k, rat(1))),
                )
            })
            .collect();
        let ker = linalg::nullspace(&vec![lin], 4);
        let mut u2 = vec![rat(0); 4];
        for b in &ker {
            let c = small(rng, 3);
            for (x, y) in u2.iter_mut().zip(b) {
                *x += &c * y;
            }
        }
        let mut s0 = w2_coords(&ue.wedge(&ExtElement::vector(Ambient::V, &u2)));
        s0.push(rat(0));
        if s0.iter().all(|c| c.is_zero()) {
            continue;
        }
        let s0 = to_c(&s0);
        let mut w = vec![C::zero(); W_DIM];
        for b in &perp {
            let c = gaussian(rng, 2);
            for (x, y) in w.iter_mut().zip(b) {
                *x = x.clone() + c.clone() * C::rational(y.clone());
            }
        }
        let ww = form_w(&t.m, &w, &w);
        let sw = form_w(&t.m, &s0, &w);
        let sigma: Vec<C> = s0
            .iter()
            .zip(&w)
            .map(|(a, b)| ww.clone() * a.clone() - C::from_int(2) * sw.clone() * b.clone())
            .collect();
        if let Ok(p) = PeriodPoint::new(&t.m, sigma) {
            return p;
        }
    }
}

/// An element `α + η + β·τ` of `S⁺ = ℚ ⊕ ∧²V ⊕ ∧⁴V`, with `vol(τ) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spinor<F: Scalar> {
    pub alpha: F,
    pub eta: Vec<F>,
    pub beta: F,
}

impl<F: Scalar> Spinor<F> {
    pub fn new(alpha: F, eta: &ExtElement<F>, beta: F) -> Result<Self> {
        if eta.ambient != Ambient::V {
            return Err(Error::Ambient);
        }
        if !eta.is_zero() && eta.degree() != Some(2) {
            return Err(Error::Degree { expected: 2 });
        }
        Ok(Spinor {
            alpha,
            eta: w2_coords(eta),
            beta,
        })
    }

    pub fn eta(&self) -> ExtElement<F> {
        w2_element(Ambient::V, &self.eta)
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero() && self.eta.iter().all(|c| c.is_zero())
    }
}

/// `q⁺(α + η + β) = vol(η∧η) − 2αβ`.
pub fn q_plus<F: Scalar>(x: &Spinor<F>) -> F {
    let eta = x.eta();
    eta.wedge(&eta).coeff(TOP) - F::from_int(2) * x.alpha.clone() * x.beta.clone()
}

/// Polarization of [`q_plus`]: `vol(η∧η′) − αβ′ − α′β`.
pub fn q_plus_bilinear<F: Scalar>(x: &Spinor<F>, y: &Spinor<F>) -> F {
    x.eta().wedge(&y.eta()).coeff(TOP)
        - x.alpha.clone() * y.beta.clone()
        - y.alpha.clone() * x.beta.clone()
}

/// The hyperbolic form `q((v,ℓ),(w,m)) = ℓ(w) + m(v)` on `V ⊕ V∨`.
pub fn hyperbolic<F: Scalar>(a: &[F], b: &[F]) -> F {
    dot(&a[4..], &b[..4]) + dot(&b[4..], &a[..4])
}

/// The space `{(v,ℓ) : αv + ℓ⌟η + η∧v + ℓ⌟β = 0}` of a pure spinor.
pub fn z_subspace<F: Scalar>(x: &Spinor<F>) -> Result<Mat<F>> {
    if x.is_zero() || !q_plus(x).is_zero() {
        return Err(Error::Invalid(
            "spinor must be nonzero and q⁺-isotropic".into(),
        ));
    }
    let eta = x.eta();
    let top = ExtElement::monomial(Ambient::V, TOP, x.beta.clone());
    let cols: Vec<Vec<F>> = (0..L_DIM)
        .map(|k| {
            let mut c = vec![F::zero(); L_DIM];
            c[k] = F::one();
            let (v, l) = split8(&c);
            let odd = v
                .scale(&x.alpha)
                .add(&eta.contract(&l).expect("dual vector"))
                .add(&eta.wedge(&v))
                .add(&top.contract(&l).expect("dual vector"));
            let mut out = odd.to_vec(1);
            out.extend(odd.to_vec(3));
            out
        })
        .collect();
    let z = linalg::nullspace(&linalg::transpose(&cols), L_DIM);
    if z.len() != 4 {
        return Err(Error::Check(format!(
            "solution space has dimension {}",
            z.len()
        )));
    }
    Ok(z)
}

/// Whether every pair of rows is `q`-orthogonal.
pub fn is_q_isotropic<F: Scalar>(gamma: &Mat<F>) -> bool {
    gamma
        .iter()
        .all(|a| gamma.iter().all(|b| hyperbolic(a, b).is_zero()))
}

/// `(n+1)α = vol(β)`.
pub fn t_plus_membership<F: Scalar>(n: usize, x: &Spinor<F>) -> bool {
    F::from_int(n as i64 + 1) * x.alpha.clone() == x.beta
}

/// `η + xξ∨ ↦ (−1)^ε x/(2(n+1)) + η + ((−1)^ε x/2)τ`.
pub fn embed_i<F: Scalar>(n: usize, y: &[F], eps: u8) -> Spinor<F> {
    let sign = if eps.is_multiple_of(2) { 1 } else { -1 };
    let x = y[6].clone();
    Spinor {
        alpha: x.scale(&frac(sign, 2 * (n as i64 + 1))),
        eta: y[..6].to_vec(),
        beta: x.scale(&frac(sign, 2)),
    }
}

/// Gram matrix of the dual form `vol − m·xy`, `m = 1/(2(n+1))`, on `∧²V ⊕ ℚξ∨`.
pub fn dual_bbf_gram(n: usize) -> Mat<Rational> {
    let m = frac(1, 2 * (n as i64 + 1));
    let e = linalg::identity::<Rational>(W_DIM);
    e.iter()
        .map(|a| e.iter().map(|b| form_w(&m, a, b)).collect())
        .collect()
}

/// Gram matrix of `q⁺` pulled back along [`embed_i`].
pub fn pulled_back_gram(n: usize, eps: u8) -> Mat<Rational> {
    let e = linalg::identity::<Rational>(W_DIM);
    e.iter()
        .map(|a| {
            e.iter()
                .map(|b| q_plus_bilinear(&embed_i(n, a, eps), &embed_i(n, b, eps)))
                .collect()
        })
        .collect()
}

/// Whether the pure spinor of the line `Φ(∧²Γ)` cuts out `Γ` again.
pub fn embedding_recovers<F: Scalar>(
    t: &ThetaTriple,
    n: usize,
    gamma: &Mat<F>,
    eps: u8,
) -> Result<bool> {
    let Some(y) = classify_subspace(t, gamma)?.image_line(t) else {
        return Err(Error::Invalid("Φ(∧²Γ) is not a line".into()));
    };
    let z = z_subspace(&embed_i(n, &y, eps))?;
    Ok(linalg::row_space(&z) == linalg::row_space(gamma))
}

/// For a pure spinor with `β ≠ 0`, `Z` is the graph of some `f`; returns `f`
/// and whether `vol(β)·ι(ω_f) = −η`.
pub fn spinor_graph<F: Scalar>(x: &Spinor<F>) -> Result<(SkewMap4<F>, bool)> {
    let z = z_subspace(x)?;
    let a = graph_matrix(&z).ok_or_else(|| Error::Invalid("Z(x) is not a graph over V".into()))?;
    let f = SkewMap4::from_matrix(a)?;
    let lhs = iota(&f.omega())?.scale(&x.beta);
    let ok = lhs == x.eta().scale(&F::from_int(-1));
    Ok((f, ok))
}

/// Rows `(e_k, f(e_k))` spanning the graph of `f`.
pub fn graph_plane<F: Scalar>(f: &SkewMap4<F>) -> Mat<F> {
    (0..4)
        .map(|k| {
            let mut e = vec![F::zero(); 4];
            e[k] = F::one();
            let fe = f.apply(&e);
            e.into_iter().chain(fe).collect()
        })
        .collect()
}

/// `U ⊕ U^⊥` for `U` spanned by the two rows of `u`.
pub fn split_plane<F: Scalar>(u: &Mat<F>) -> Mat<F> {
    let zero4 = vec![F::zero(); 4];
    u.iter()
        .map(|r| r.iter().cloned().chain(zero4.iter().cloned()).collect())
        .chain(
            annihilator(u)
                .into_iter()
                .map(|l| zero4.iter().cloned().chain(l).collect()),
        )
        .collect()
}

/// A random unimodular integer matrix, as a product of elementary moves.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> Mat<Rational> {
    let mut p = linalg::identity::<Rational>(n);
    for _ in 0..3 * n {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        if i == j {
            continue;
        }
        let c = small(rng, 2);
        let row = p[j].clone();
        for (a, b) in p[i].iter_mut().zip(row) {
            *a += &c * b;
        }
    }
    p
}

/// The same row space on a different basis.
pub fn mix_rows(rng: &mut impl Rng, gamma: &Mat<Rational>) -> Mat<Rational> {
    linalg::mat_mul(&random_unimodular(rng, gamma.len()), gamma)
}

/// `Pᵀ f₀ P` with `Pf(f₀) = pf` and `det P = 1`, so the Pfaffian is `pf`.
pub fn random_skew_with_pfaffian(rng: &mut impl Rng, pf: &Rational) -> SkewMap4<Rational> {
    let f0 = SkewMap4::from_upper([pf.clone(), rat(0), rat(0), rat(0), rat(0), rat(1)]);
    let p = random_unimodular(rng, 4);
    let m = linalg::mat_mul(&linalg::transpose(&p), &linalg::mat_mul(f0.matrix(), &p));
    SkewMap4::from_matrix(m).expect("congruence preserves skew symmetry")
}

/// A random rational 4-plane in `V ⊕ V∨` with small entries.
pub fn random_plane(rng: &mut impl Rng) -> Mat<Rational> {
    loop {
        let g: Mat<Rational> = (0..4)
            .map(|_| (0..L_DIM).map(|_| small(rng, 2)).collect())
            .collect();
        if linalg::rank(&g) == 4 {
            return g;
        }
    }
}
