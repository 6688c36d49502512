//! Intersection numbers on generalized Kummer varieties `K_n(A)` and the
//! constants `ϑ = (ϑ₁, ϑ₂, ϑ₃)` of the map `∧²H³ → H²∨`.
//!
//! Classes are translated into the Lehn–Sorger ring with `m = n + 1`:
//! `μ_k(λ) ↦ Σ p_i*(λ) Id`, `ξ_n ↦ c_m(1)` and `ν₃(β)/2 ↦ c_m(β)`. Integrands
//! built from `μ`-classes only are also evaluated on `A^{n+1}` directly.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exterior::{masks_of_degree, wedge2_basis, wedge_sign, Ambient, TOP};
use crate::field::{double_factorial, factorial, frac, rat, Rational};
use crate::hodge::ThetaTriple;
use crate::lehn_sorger::{
    c_class, cutting_class, integrate_product, mu_class, top_pairing, LSElement,
};
use crate::linalg::{self, Mat};
use crate::surface::{coh_one, eta, integrate_a, CohA, Tensor};

fn df(k: i64) -> Rational {
    Rational::from_integer(double_factorial(k))
}

fn check_degree(x: &CohA, d: usize) -> Result<()> {
    if x.ambient != Ambient::V {
        return Err(Error::Ambient);
    }
    if !x.is_zero() && x.degree() != Some(d) {
        return Err(Error::Degree { expected: d });
    }
    Ok(())
}

/// A class `μ₂(x) + c·ξ_n` in `H²(K_n(A))`.
#[derive(Clone, Debug, PartialEq)]
pub struct H2Class {
    pub n: usize,
    pub x: CohA,
    pub c: Rational,
}

impl H2Class {
    pub fn new(n: usize, x: CohA, c: Rational) -> Result<Self> {
        check_degree(&x, 2)?;
        Ok(H2Class { n, x, c })
    }

    pub fn mu(n: usize, x: &CohA) -> Result<Self> {
        Self::new(n, x.clone(), Rational::zero())
    }

    pub fn xi(n: usize) -> Self {
        H2Class {
            n,
            x: CohA::zero(Ambient::V),
            c: Rational::one(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        H2Class {
            n: self.n,
            x: self.x.add(&other.x),
            c: &self.c + &other.c,
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        H2Class {
            n: self.n,
            x: self.x.scale(k),
            c: &self.c * k,
        }
    }

    pub fn to_ls(&self) -> LSElement {
        let m = self.n + 1;
        let xi = c_class(m, &coh_one()).expect("m ≥ 2");
        mu_class(m, &self.x).add(&xi.scale(&self.c))
    }
}

/// A class `μ₃(α) + ν₃(β)/2` in `H³(K_n(A))`.
#[derive(Clone, Debug, PartialEq)]
pub struct H3Class {
    pub alpha: CohA,
    pub beta: CohA,
}

impl H3Class {
    pub fn new(alpha: CohA, beta: CohA) -> Result<Self> {
        check_degree(&alpha, 3)?;
        check_degree(&beta, 1)?;
        Ok(H3Class { alpha, beta })
    }

    pub fn to_ls(&self, n: usize) -> LSElement {
        let m = n + 1;
        mu_class(m, &self.alpha).add(&c_class(m, &self.beta).expect("m ≥ 2"))
    }

    /// The unimodular form `(α, β) ↦ 2∫α⌣β`.
    pub fn q(&self) -> Rational {
        rat(2) * pairing31(&self.alpha, &self.beta)
    }
}

/// `⟨α, β⟩ = ∫_A α⌣β` for `α ∈ H³(A)`, `β ∈ H¹(A)`.
pub fn pairing31(alpha: &CohA, beta: &CohA) -> Rational {
    integrate_a(&alpha.wedge(beta))
}

/// The basis `α₁..α₄` of `H³(A)` followed by `η₁..η₄` of `H¹(A)`.
pub fn h3_basis() -> Vec<H3Class> {
    let zero = CohA::zero(Ambient::V);
    let mut out: Vec<H3Class> = masks_of_degree(3)
        .into_iter()
        .map(|s| H3Class {
            alpha: CohA::monomial(Ambient::V, s, Rational::one()),
            beta: zero.clone(),
        })
        .collect();
    out.extend((1..=4).map(|i| H3Class {
        alpha: zero.clone(),
        beta: eta(&[i]),
    }));
    out
}

/// The six classes `μ₂(η_S)` followed by `ξ_n`.
pub fn h2_targets(n: usize) -> Vec<H2Class> {
    let mut out: Vec<H2Class> = wedge2_basis()
        .into_iter()
        .map(|s| H2Class::mu(n, &CohA::monomial(Ambient::V, s, Rational::one())).expect("degree 2"))
        .collect();
    out.push(H2Class::xi(n));
    out
}

/// A standard basis `e_i, f_i` of `H²(A)`: `∫e_i f_i = 1`, other pairings zero.
pub fn standard_basis() -> [(CohA, CohA); 3] {
    [
        (eta(&[1, 2]), eta(&[3, 4])),
        (eta(&[1, 3]), eta(&[2, 4]).scale(&rat(-1))),
        (eta(&[1, 4]), eta(&[2, 3])),
    ]
}

/// The Beauville–Bogomolov–Fujiki form `∫α∧β − 2(n+1)xy`.
pub fn bbf(a: &H2Class, b: &H2Class) -> Result<Rational> {
    if a.n != b.n {
        return Err(Error::Invalid(format!(
            "classes on K_{} and K_{}",
            a.n, b.n
        )));
    }
    Ok(integrate_a(&a.x.wedge(&b.x)) - rat(2 * (a.n as i64 + 1)) * &a.c * &b.c)
}

/// Sum over perfect matchings of `{0..k}` of the products of Gram entries.
fn matching_sum(gram: &Mat<Rational>, idx: &[usize]) -> Rational {
    let Some((&first, rest)) = idx.split_first() else {
        return Rational::one();
    };
    let mut acc = Rational::zero();
    for (pos, &j) in rest.iter().enumerate() {
        if gram[first][j].is_zero() {
            continue;
        }
        let remaining: Vec<usize> = rest
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != pos)
            .map(|(_, &x)| x)
            .collect();
        acc += &gram[first][j] * matching_sum(gram, &remaining);
    }
    acc
}

fn polarized(classes: &[H2Class]) -> Result<Rational> {
    let k = classes.len();
    if !k.is_multiple_of(2) {
        return Err(Error::Invalid("odd number of classes".into()));
    }
    let mut gram = linalg::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram[i][j] = bbf(&classes[i], &classes[j])?;
        }
    }
    Ok(matching_sum(&gram, &(0..k).collect::<Vec<_>>()))
}

fn same_context(n: usize, classes: &[H2Class]) -> Result<()> {
    match classes.iter().find(|c| c.n != n) {
        Some(c) => Err(Error::Invalid(format!("class on K_{} used on K_{n}", c.n))),
        None => Ok(()),
    }
}

/// `∫_{K_n(A)} α₁⋯α_{2n}` from the polarized Fujiki relation.
pub fn fujiki_value(n: usize, classes: &[H2Class]) -> Result<Rational> {
    if classes.len() != 2 * n {
        return Err(Error::Invalid(format!(
            "expected {} classes, got {}",
            2 * n,
            classes.len()
        )));
    }
    same_context(n, classes)?;
    Ok(rat(n as i64 + 1) * polarized(classes)?)
}

/// `∫(q∨)^ℓ α₁⋯α_{2n−2ℓ}`: each factor `q∨` contracts one matching pair
/// against the inverse form, and `b₂ = 7` gives
/// `(n+1)·(2n+5)!!/(2n+5−2ℓ)!!` times the matching sum.
pub fn fujiki_with_qvee(n: usize, l: usize, classes: &[H2Class]) -> Result<Rational> {
    if l > n || classes.len() != 2 * (n - l) {
        return Err(Error::Invalid(format!(
            "ℓ = {l} needs {} classes",
            2 * n.saturating_sub(l)
        )));
    }
    same_context(n, classes)?;
    let (n, l) = (n as i64, l as i64);
    Ok(rat(n + 1) * df(2 * n + 5) / df(2 * n + 5 - 2 * l) * polarized(classes)?)
}

/// Both sides of the double-factorial identity
/// `Σ_i C(ℓ,i)·(2i+2k)!!/(2k)!!·(2n−2i−1)!!/(2n−2ℓ−1)!! = (2n+2k+1)!!/(2n−2ℓ+2k+1)!!`.
pub fn ideban_sides(k: usize, l: usize, n: usize) -> Result<(Rational, Rational)> {
    if l > n {
        return Err(Error::OutOfRange(format!("ℓ = {l} exceeds n = {n}")));
    }
    let (k, l, n) = (k as i64, l as i64, n as i64);
    let lhs = (0..=l).fold(Rational::zero(), |acc, i| {
        let binom = Rational::from_integer(crate::field::binomial(l as u64, i as u64));
        acc + binom * df(2 * i + 2 * k) / df(2 * k) * df(2 * n - 2 * i - 1) / df(2 * n - 2 * l - 1)
    });
    let rhs = df(2 * n + 2 * k + 1) / df(2 * n - 2 * l + 2 * k + 1);
    Ok((lhs, rhs))
}

pub fn verify_ideban(k: usize, l: usize, n: usize) -> Result<bool> {
    let (lhs, rhs) = ideban_sides(k, l, n)?;
    Ok(lhs == rhs)
}

pub fn xi_class(n: usize) -> LSElement {
    H2Class::xi(n).to_ls()
}

/// `σ_n = Σ μ₂(e_i)⌣μ₂(f_i)`.
pub fn sigma_class(n: usize) -> LSElement {
    let m = n + 1;
    standard_basis()
        .iter()
        .fold(LSElement::zero(m), |acc, (e, f)| {
            acc.add(&mu_class(m, e).mul(&mu_class(m, f)))
        })
}

/// `q∨ = 2σ_n − ξ_n²/(2(n+1))`.
pub fn qvee_class(n: usize) -> LSElement {
    let xi = xi_class(n);
    sigma_class(n)
        .scale(&rat(2))
        .sub(&xi.mul(&xi).scale(&frac(1, 2 * (n as i64 + 1))))
}

/// The integral class `q̄ = 2(n+1)q∨`.
pub fn qbar_class(n: usize) -> LSElement {
    qvee_class(n).scale(&rat(2 * (n as i64 + 1)))
}

/// `(n+1)·(2n+5)!!/(2n+5−2ℓ)!!·(2n−2ℓ−1)!!·q^{n−ℓ}`.
pub fn bellaform_closed(n: usize, l: usize, q: &Rational) -> Rational {
    let (ni, li) = (n as i64, l as i64);
    rat(ni + 1) * df(2 * ni + 5) / df(2 * ni + 5 - 2 * li)
        * df(2 * ni - 2 * li - 1)
        * num_traits::pow(q.clone(), n - l)
}

/// `∫σ_nⁱ ξ_n^{2n−2i} = (n+1)·½·i!(i+2)(i+1)(−2(n+1))^{n−i}(2n−2i−1)!!`.
pub fn sigma_xi_closed(n: usize, i: usize) -> Rational {
    let (ni, ii) = (n as i64, i as i64);
    rat(ni + 1)
        * frac(1, 2)
        * Rational::from_integer(factorial(i as u64))
        * rat((ii + 2) * (ii + 1))
        * num_traits::pow(rat(-2 * (ni + 1)), n - i)
        * df(2 * ni - 2 * ii - 1)
}

/// `Σ_i ℓ!/(ℓ−i)!·(i+2)(i+1)2^{i−1}(2n−2i−1)!!` and `(2n+5)!!/(2n+5−2ℓ)!!·(2n−2ℓ−1)!!`.
pub fn bellaform_sum_sides(n: usize, l: usize) -> (Rational, Rational) {
    let (ni, li) = (n as i64, l as i64);
    let lhs = (0..=li).fold(Rational::zero(), |acc, i| {
        let falling = Rational::from_integer(factorial(l as u64) / factorial((li - i) as u64));
        let pow2 = if i == 0 {
            frac(1, 2)
        } else {
            rat(1 << (i - 1))
        };
        acc + falling * rat((i + 2) * (i + 1)) * pow2 * df(2 * ni - 2 * i - 1)
    });
    let rhs = df(2 * ni + 5) / df(2 * ni + 5 - 2 * li) * df(2 * ni - 2 * li - 1);
    (lhs, rhs)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BellaformCheck {
    pub n: usize,
    pub l: usize,
    /// `∫(q∨)^ℓ ξ^{2n−2ℓ}` in the ring.
    pub computed: Rational,
    pub closed: Rational,
    /// `(i, ring value, closed value)` of `∫σⁱξ^{2n−2i}` for `0 ≤ i ≤ n`.
    pub intermediate: Vec<(usize, Rational, Rational)>,
    pub sum_sides: (Rational, Rational),
}

impl BellaformCheck {
    pub fn holds(&self) -> bool {
        self.computed == self.closed
            && self.sum_sides.0 == self.sum_sides.1
            && self.intermediate.iter().all(|(_, a, b)| a == b)
    }
}

fn repeated(x: &LSElement, k: usize) -> Vec<LSElement> {
    vec![x.clone(); k]
}

/// `∫(q∨)^ℓ ξ_n^{2n−2ℓ}` in the ring against the closed form with `γ = ξ_n`.
pub fn bellaform_check(n: usize, l: usize) -> Result<BellaformCheck> {
    if l > n {
        return Err(Error::OutOfRange(format!("ℓ = {l} exceeds n = {n}")));
    }
    if !(2..=3).contains(&n) {
        return Err(Error::OutOfRange("the ring backend covers n = 2, 3".into()));
    }
    let xi = xi_class(n);
    let mut factors = repeated(&qvee_class(n), l);
    factors.extend(repeated(&xi, 2 * n - 2 * l));
    let computed = integrate_product(n, &factors)?;
    let closed = bellaform_closed(n, l, &rat(-2 * (n as i64 + 1)));
    let sigma = sigma_class(n);
    let mut intermediate = Vec::new();
    for i in 0..=n {
        let mut f = repeated(&sigma, i);
        f.extend(repeated(&xi, 2 * n - 2 * i));
        intermediate.push((i, integrate_product(n, &f)?, sigma_xi_closed(n, i)));
    }
    Ok(BellaformCheck {
        n,
        l,
        computed,
        closed,
        intermediate,
        sum_sides: bellaform_sum_sides(n, l),
    })
}

/// `ι⁻¹(α∧α′) ∈ H²(A)`: the class `δ` with `∫δ⌣b⌣b′ = ⟨α,b⟩⟨α′,b′⟩ − ⟨α,b′⟩⟨α′,b⟩`.
pub fn iota_inv_h3(alpha: &CohA, alpha2: &CohA) -> Result<CohA> {
    check_degree(alpha, 3)?;
    check_degree(alpha2, 3)?;
    let mut d = CohA::zero(Ambient::V);
    for s in wedge2_basis() {
        let idx: Vec<usize> = (0..4)
            .filter(|k| s & (1 << k) != 0)
            .map(|k| k + 1)
            .collect();
        let (b, b2) = (eta(&[idx[0]]), eta(&[idx[1]]));
        let f = pairing31(alpha, &b) * pairing31(alpha2, &b2)
            - pairing31(alpha, &b2) * pairing31(alpha2, &b);
        // ∫η_T η_S = sign(T, S) for T the complement of S
        let comp = TOP ^ s;
        d.add_term(comp, f * rat(wedge_sign(comp as u32, s as u32) as i64));
    }
    Ok(d)
}

/// `∫_{K_n(A)} μ(λ₁)⋯μ(λ_k)` evaluated on `A^{n+1}` against the cutting class.
pub fn integrate_mu_product(n: usize, classes: &[CohA]) -> Result<Rational> {
    let m = n + 1;
    let total: usize = classes.iter().map(|c| c.degree().unwrap_or(0)).sum();
    if total != 4 * n {
        return Err(Error::IntegrandDegree {
            got: total,
            top: 4 * n,
        });
    }
    let mut prod = Tensor::one(m);
    for c in classes {
        let mut s = Tensor::zero(m);
        for i in 0..m {
            s.add_assign(&Tensor::p_star(m, i, c));
        }
        prod = prod.mul(&s);
    }
    Ok(top_pairing(&prod, &cutting_class(m)) / Rational::from_integer(factorial(m as u64)))
}

/// `∫ μ₃(α)μ₃(α′)μ₂(γ)^{2n−3}` on `A^{n+1}`.
pub fn integral_mu3(n: usize, alpha: &CohA, alpha2: &CohA, gamma: &CohA) -> Result<Rational> {
    if n < 2 {
        return Err(Error::OutOfRange("n ≥ 2".into()));
    }
    check_degree(alpha, 3)?;
    check_degree(alpha2, 3)?;
    check_degree(gamma, 2)?;
    let mut classes = vec![alpha.clone(), alpha2.clone()];
    classes.extend(vec![gamma.clone(); 2 * n - 3]);
    integrate_mu_product(n, &classes)
}

fn gamma_power(gamma: &CohA, e: usize) -> Rational {
    num_traits::pow(integrate_a(&gamma.wedge(gamma)), e)
}

/// `−(2n−3)!!·∫ι⁻¹(α∧α′)γ·(∫γ²)^{n−2}`.
pub fn laprima_closed(n: usize, alpha: &CohA, alpha2: &CohA, gamma: &CohA) -> Result<Rational> {
    let d = iota_inv_h3(alpha, alpha2)?;
    Ok(-df(2 * n as i64 - 3) * integrate_a(&d.wedge(gamma)) * gamma_power(gamma, n - 2))
}

/// `2(n+1)(2n−5)!!·∫ι⁻¹(α∧α′)γ·(∫γ²)^{n−3}`, the value of `∫μ₃μ₃μ₂(γ)^{2n−5}ξ²`.
pub fn spartan_closed(n: usize, alpha: &CohA, alpha2: &CohA, gamma: &CohA) -> Result<Rational> {
    if n < 3 {
        return Err(Error::OutOfRange("n ≥ 3".into()));
    }
    let d = iota_inv_h3(alpha, alpha2)?;
    Ok(rat(2 * (n as i64 + 1))
        * df(2 * n as i64 - 5)
        * integrate_a(&d.wedge(gamma))
        * gamma_power(gamma, n - 3))
}

/// `−4(n+1)(2n−3)!!·∫ββ′γ·(∫γ²)^{n−2}`, the value of `∫ν₃(β)ν₃(β′)μ₂(γ)^{2n−3}`.
pub fn sironi_closed(n: usize, beta: &CohA, beta2: &CohA, gamma: &CohA) -> Rational {
    let bbg = integrate_a(&beta.wedge(beta2).wedge(gamma));
    rat(-4 * (n as i64 + 1)) * df(2 * n as i64 - 3) * bbg * gamma_power(gamma, n - 2)
}

/// `8(n+1)²(2n−5)!!·∫ββ′γ·(∫γ²)^{n−3}`, the value of `∫ν₃ν₃μ₂(γ)^{2n−5}ξ²`.
pub fn mario_closed(n: usize, beta: &CohA, beta2: &CohA, gamma: &CohA) -> Result<Rational> {
    if n < 3 {
        return Err(Error::OutOfRange("n ≥ 3".into()));
    }
    let bbg = integrate_a(&beta.wedge(beta2).wedge(gamma));
    let k = n as i64 + 1;
    Ok(rat(8 * k * k) * df(2 * n as i64 - 5) * bbg * gamma_power(gamma, n - 3))
}

/// Ring value of `∫ x·x′·μ₂(γ)^{2n−3−2j}·ξ^{2j}`.
fn ring_pair_integral(
    n: usize,
    x: &LSElement,
    x2: &LSElement,
    gamma: &CohA,
    j: usize,
) -> Result<Rational> {
    let m = n + 1;
    let mut f = vec![x.clone(), x2.clone()];
    f.extend(repeated(&mu_class(m, gamma), 2 * n - 3 - 2 * j));
    f.extend(repeated(&xi_class(n), 2 * j));
    integrate_product(n, &f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    /// Lehn–Sorger ring, `n ≤ 3`.
    Ring,
    /// The closed formulas for the four `A^{n+1}` integrals.
    ClosedForm,
}

/// `(C_i(n), D_i(n))` with
/// `Π₃(μ₃μ₃) = C₁ q∨μ₂(δ) + D₁ μ₂(δ)ξ²` (`which = 1`) and
/// `Π₃(ν₃ν₃) = C₂ q∨μ₂(ββ′) + D₂ μ₂(ββ′)ξ²` (`which = 2`),
/// determined by pairing with `μ₂(γ)^{2n−3}` and `μ₂(γ)^{2n−5}ξ²`.
pub fn solve_cd_with(n: usize, which: u8, backend: Backend) -> Result<(Rational, Rational)> {
    if n < 3 {
        return Err(Error::OutOfRange("the C/D system needs n ≥ 3".into()));
    }
    if backend == Backend::Ring && n > 3 {
        return Err(Error::OutOfRange("the ring backend covers n ≤ 3".into()));
    }
    let (alpha, alpha2) = (eta(&[1, 2, 3]), eta(&[1, 2, 4]));
    let (beta, beta2) = (eta(&[1]), eta(&[2]));
    let gamma = eta(&[1, 2]).add(&eta(&[3, 4]));
    let delta = match which {
        1 => iota_inv_h3(&alpha, &alpha2)?,
        2 => beta.wedge(&beta2),
        _ => return Err(Error::Invalid(format!("which must be 1 or 2, got {which}"))),
    };
    let lhs = match (which, backend) {
        (1, Backend::ClosedForm) => vec![
            laprima_closed(n, &alpha, &alpha2, &gamma)?,
            spartan_closed(n, &alpha, &alpha2, &gamma)?,
        ],
        (_, Backend::ClosedForm) => vec![
            sironi_closed(n, &beta, &beta2, &gamma),
            mario_closed(n, &beta, &beta2, &gamma)?,
        ],
        (1, Backend::Ring) => {
            let (a, a2) = (mu_class(n + 1, &alpha), mu_class(n + 1, &alpha2));
            vec![
                ring_pair_integral(n, &a, &a2, &gamma, 0)?,
                ring_pair_integral(n, &a, &a2, &gamma, 1)?,
            ]
        }
        (_, Backend::Ring) => {
            // ν₃ = 2c_m
            let (b, b2) = (
                c_class(n + 1, &beta)?.scale(&rat(2)),
                c_class(n + 1, &beta2)?.scale(&rat(2)),
            );
            vec![
                ring_pair_integral(n, &b, &b2, &gamma, 0)?,
                ring_pair_integral(n, &b, &b2, &gamma, 1)?,
            ]
        }
    };
    let d = H2Class::mu(n, &delta)?;
    let g = H2Class::mu(n, &gamma)?;
    let xi = H2Class::xi(n);
    let with = |k: usize, xis: usize| {
        let mut v = vec![d.clone()];
        v.extend(vec![g.clone(); k]);
        v.extend(vec![xi.clone(); xis]);
        v
    };
    let a = vec![
        vec![
            fujiki_with_qvee(n, 1, &with(2 * n - 3, 0))?,
            fujiki_value(n, &with(2 * n - 3, 2))?,
        ],
        vec![
            fujiki_with_qvee(n, 1, &with(2 * n - 5, 2))?,
            fujiki_value(n, &with(2 * n - 5, 4))?,
        ],
    ];
    let sol =
        linalg::solve(&a, &lhs).ok_or_else(|| Error::Degenerate("singular C/D system".into()))?;
    Ok((sol[0].clone(), sol[1].clone()))
}

/// [`solve_cd_with`] using the ring for `n = 3` and closed forms beyond.
pub fn solve_cd(n: usize, which: u8) -> Result<(Rational, Rational)> {
    solve_cd_with(
        n,
        which,
        if n <= 3 {
            Backend::Ring
        } else {
            Backend::ClosedForm
        },
    )
}

/// `−2^{n−2}(n+1)^{n−2}(2n+3)!!/7!!`.
pub fn theta1_formula(n: usize) -> Rational {
    let k = n as i64 + 1;
    -num_traits::pow(rat(2 * k), n - 2) * df(2 * n as i64 + 3) / df(7)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaValues {
    pub n: usize,
    pub t1: Rational,
    pub t2: Rational,
    pub t3_abs: Rational,
    /// `ϑ₃` with its sign, when computed from an integral.
    pub t3: Option<Rational>,
    pub backend: Backend,
}

impl ThetaValues {
    pub fn triple(&self) -> Option<ThetaTriple> {
        let t3 = self.t3.clone()?;
        ThetaTriple::new(
            self.t1.clone(),
            self.t2.clone(),
            t3,
            frac(1, 2 * (self.n as i64 + 1)),
        )
        .ok()
    }
}

fn require_integer(x: &Rational, what: &str) -> Result<()> {
    if x.is_integer() {
        Ok(())
    } else {
        Err(Error::Check(format!("{what} = {x} is not an integer")))
    }
}

/// `ϑ₃²= ϑ₁ϑ₂/(2m) = (n+1)ϑ₁ϑ₂`, returned as `|ϑ₃|`.
fn theta3_abs(n: usize, t1: &Rational, t2: &Rational) -> Result<Rational> {
    let sq = rat(n as i64 + 1) * t1 * t2;
    require_integer(&sq, "ϑ₃²")?;
    let v = sq.to_integer();
    if v.is_negative() {
        return Err(Error::Check(format!("ϑ₃² = {v} is negative")));
    }
    let r = v.sqrt();
    if &r * &r != v {
        return Err(Error::Check(format!("ϑ₃² = {v} is not a square")));
    }
    Ok(Rational::from_integer(r))
}

fn qbar_factors(n: usize) -> Vec<LSElement> {
    repeated(&qbar_class(n), n - 2)
}

/// `ϑ(q̄^{n−2})`, from ring integrals for `n ≤ 3` or through the C/D route.
pub fn compute_theta_with(n: usize, backend: Backend) -> Result<ThetaValues> {
    if n < 2 {
        return Err(Error::OutOfRange("n ≥ 2".into()));
    }
    let (alpha, alpha2) = (eta(&[1, 2, 3]), eta(&[1, 2, 4]));
    let (beta, beta2) = (eta(&[1]), eta(&[2]));
    // ∫ι⁻¹(α∧α′)⌣w = ∫ββ′⌣w = 1 and ⟨α, η₄⟩ = 1
    let w = eta(&[3, 4]);
    let (t1, t2, t3) = match backend {
        Backend::Ring => {
            if n > 3 {
                return Err(Error::OutOfRange("the ring backend covers n ≤ 3".into()));
            }
            let m = n + 1;
            let tail = |last: LSElement| {
                let mut f = qbar_factors(n);
                f.push(last);
                f
            };
            let mut f = vec![mu_class(m, &alpha), mu_class(m, &alpha2)];
            f.extend(tail(mu_class(m, &w)));
            let t1 = integrate_product(n, &f)?;
            let mut f = vec![c_class(m, &beta)?, c_class(m, &beta2)?];
            f.extend(tail(mu_class(m, &w)));
            let t2 = integrate_product(n, &f)?;
            let mut f = vec![mu_class(m, &alpha), c_class(m, &eta(&[4]))?];
            f.extend(tail(xi_class(n)));
            let t3 = integrate_product(n, &f)?;
            (t1, t2, Some(t3))
        }
        Backend::ClosedForm if n == 2 => {
            let t1 = laprima_closed(2, &alpha, &alpha2, &w)?;
            let t2 = sironi_closed(2, &beta, &beta2, &w) / rat(4);
            (t1, t2, None)
        }
        Backend::ClosedForm => {
            let scale = num_traits::pow(rat(2 * (n as i64 + 1)), n - 2);
            let d = H2Class::mu(n, &iota_inv_h3(&alpha, &alpha2)?)?;
            let bb = H2Class::mu(n, &beta.wedge(&beta2))?;
            let wc = H2Class::mu(n, &w)?;
            let xi = H2Class::xi(n);
            let eval = |delta: &H2Class, (c, dd): (Rational, Rational)| -> Result<Rational> {
                let a = fujiki_with_qvee(n, n - 1, &[delta.clone(), wc.clone()])?;
                let b = fujiki_with_qvee(
                    n,
                    n - 2,
                    &[delta.clone(), xi.clone(), xi.clone(), wc.clone()],
                )?;
                Ok(&scale * (c * a + dd * b))
            };
            let t1 = eval(&d, solve_cd_with(n, 1, Backend::ClosedForm)?)?;
            // F(0, β) = ν₃(β)/2
            let t2 = eval(&bb, solve_cd_with(n, 2, Backend::ClosedForm)?)? / rat(4);
            (t1, t2, None)
        }
    };
    require_integer(&t1, "ϑ₁")?;
    require_integer(&t2, "ϑ₂")?;
    let t3_abs = theta3_abs(n, &t1, &t2)?;
    if let Some(t) = &t3 {
        require_integer(t, "ϑ₃")?;
        if t.abs() != t3_abs {
            return Err(Error::Check(format!(
                "|ϑ₃| = {} but ϑ₁ϑ₂ = 2mϑ₃² gives {t3_abs}",
                t.abs()
            )));
        }
    }
    Ok(ThetaValues {
        n,
        t1,
        t2,
        t3_abs,
        t3,
        backend,
    })
}

/// [`compute_theta_with`] using the ring when `n ≤ 3`.
pub fn compute_theta(n: usize) -> Result<ThetaValues> {
    compute_theta_with(
        n,
        if n <= 3 {
            Backend::Ring
        } else {
            Backend::ClosedForm
        },
    )
}

/// The 28 index pairs `i < j` of [`h3_basis`] in lexicographic order.
pub fn basis_pairs() -> Vec<(usize, usize)> {
    (0..8)
        .flat_map(|i| (i + 1..8).map(move |j| (i, j)))
        .collect()
}

/// `Φ(x∧y)(z) = ∫F(x)F(y)·q̄^{n−2}·z` on all basis pairs and the seven targets.
pub fn phi_matrix(n: usize) -> Result<Vec<Vec<Rational>>> {
    if !(2..=3).contains(&n) {
        return Err(Error::OutOfRange("the ring backend covers n = 2, 3".into()));
    }
    let m = n + 1;
    let basis: Vec<LSElement> = h3_basis().iter().map(|b| b.to_ls(n)).collect();
    let qbar = qbar_class(n);
    let weights: Vec<LSElement> = h2_targets(n)
        .iter()
        .map(|z| (0..n - 2).fold(z.to_ls(), |acc, _| acc.mul(&qbar)))
        .collect();
    let omega = cutting_class(m);
    let norm = Rational::from_integer(factorial(m as u64));
    let mut out = Vec::new();
    for (i, j) in basis_pairs() {
        let p = basis[i].mul(&basis[j]);
        out.push(
            weights
                .iter()
                .map(|w| top_pairing(&p.id_part_of_product(w), &omega) / &norm)
                .collect(),
        );
    }
    Ok(out)
}

/// The three-term expansion
/// `ϑ₁ α∧α′ + ϑ₂ ι(β∧β′) + ϑ₃(⟨α,β′⟩ − ⟨α′,β⟩)ξ∨` evaluated on `z`.
pub fn ansatz_value(t: &ThetaTriple, x: &H3Class, y: &H3Class, z: &H2Class) -> Result<Rational> {
    let d = iota_inv_h3(&x.alpha, &y.alpha)?;
    let a = integrate_a(&d.wedge(&z.x));
    let b = integrate_a(&x.beta.wedge(&y.beta).wedge(&z.x));
    let c = pairing31(&x.alpha, &y.beta) - pairing31(&y.alpha, &x.beta);
    Ok(&t.t1 * a + &t.t2 * b + &t.t3 * c * &z.c)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhiAnsatzReport {
    pub n: usize,
    pub theta: ThetaTriple,
    pub matrix: Vec<Vec<Rational>>,
    /// `(pair index, target index)` of every entry that disagrees with the expansion.
    pub mismatches: Vec<(usize, usize)>,
}

impl PhiAnsatzReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Computes `Φ(q̄^{n−2})` on the full basis and compares it with the expansion
/// using `ϑ₁, ϑ₂` from [`compute_theta`] and the sign of `ϑ₃` read off the matrix.
pub fn verify_phi_ansatz(n: usize) -> Result<PhiAnsatzReport> {
    let theta = compute_theta(n)?;
    let matrix = phi_matrix(n)?;
    let basis = h3_basis();
    let targets = h2_targets(n);
    let pairs = basis_pairs();
    // (α₁, η_j) with ⟨α₁, η_j⟩ ≠ 0 fixes ϑ₃
    let (k, c) = pairs
        .iter()
        .enumerate()
        .find_map(|(k, &(i, j))| {
            let c = pairing31(&basis[i].alpha, &basis[j].beta);
            (!c.is_zero()).then_some((k, c))
        })
        .expect("the pairing is perfect");
    let t3 = &matrix[k][6] / c;
    if t3.abs() != theta.t3_abs {
        return Err(Error::Check(format!(
            "ϑ₃ = {t3} read from Φ, expected ±{}",
            theta.t3_abs
        )));
    }
    let triple = ThetaTriple::new(theta.t1, theta.t2, t3, frac(1, 2 * (n as i64 + 1)))?;
    let mut mismatches = Vec::new();
    for (k, &(i, j)) in pairs.iter().enumerate() {
        for (t, z) in targets.iter().enumerate() {
            if ansatz_value(&triple, &basis[i], &basis[j], z)? != matrix[k][t] {
                mismatches.push((k, t));
            }
        }
    }
    Ok(PhiAnsatzReport {
        n,
        theta: triple,
        matrix,
        mismatches,
    })
}

/// `Φ(b_i ∧ b_j)` for arbitrary basis indices from the pair matrix.
fn phi_on_basis(matrix: &[Vec<Rational>], i: usize, j: usize) -> Vec<Rational> {
    if i == j {
        return vec![Rational::zero(); 7];
    }
    let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
    let k = basis_pairs()
        .iter()
        .position(|&p| p == (a, b))
        .expect("valid pair");
    matrix[k].iter().map(|x| x * rat(sign)).collect()
}

/// `dim φ(γ∧H³)` for `γ = Σ g_i b_i`.
pub fn phi_image_rank(matrix: &[Vec<Rational>], gamma: &[Rational]) -> usize {
    let rows: Vec<Vec<Rational>> = (0..8)
        .map(|k| {
            let mut row = vec![Rational::zero(); 7];
            for (i, g) in gamma.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                for (r, x) in row.iter_mut().zip(phi_on_basis(matrix, i, k)) {
                    *r += g * x;
                }
            }
            row
        })
        .collect();
    linalg::rank(&rows)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankCase {
    pub label: &'static str,
    pub gamma: Vec<Rational>,
    pub q: Rational,
    pub expected: usize,
    pub computed: usize,
}

fn h3_of(coords: &[Rational]) -> H3Class {
    let basis = h3_basis();
    let mut x = H3Class {
        alpha: CohA::zero(Ambient::V),
        beta: CohA::zero(Ambient::V),
    };
    for (b, c) in basis.iter().zip(coords) {
        x.alpha = x.alpha.add(&b.alpha.scale(c));
        x.beta = x.beta.add(&b.beta.scale(c));
    }
    x
}

/// The rank dichotomy `0 / 4 / 7` on crafted classes of each type.
pub fn rank_table(n: usize) -> Result<Vec<RankCase>> {
    let matrix = phi_matrix(n)?;
    let v = |c: [i64; 8]| c.map(rat).to_vec();
    let cases: Vec<(&'static str, Vec<Rational>)> = vec![
        ("zero", v([0; 8])),
        ("pure H3(A)", v([1, 0, 0, 0, 0, 0, 0, 0])),
        ("pure H1(A)", v([0, 0, 0, 0, 0, 0, 1, 0])),
        ("isotropic mixed", v([1, 0, 0, 0, 1, 0, 0, 0])),
        ("isotropic generic", v([1, 1, 0, 0, 0, 0, 1, 1])),
        ("unit square", v([1, 0, 0, 0, 0, 0, 0, 1])),
        ("generic", v([1, 2, 3, 4, 5, 6, 7, 8])),
    ];
    cases
        .into_iter()
        .map(|(label, gamma)| {
            let q = h3_of(&gamma).q();
            let expected = if gamma.iter().all(Zero::is_zero) {
                0
            } else if q.is_zero() {
                4
            } else {
                7
            };
            let computed = phi_image_rank(&matrix, &gamma);
            Ok(RankCase {
                label,
                gamma,
                q,
                expected,
                computed,
            })
        })
        .collect()
}

/// The constant `c_γ` with `∫x⌣y⌣γ^{2n−3} = c_γ∫x⌣y⌣γ⌣(q∨)^{n−2}` on `H³`.
pub fn remark_proportionality(n: usize, gamma: &H2Class) -> Result<Rational> {
    if !(2..=3).contains(&n) || gamma.n != n {
        return Err(Error::OutOfRange("the ring backend covers n = 2, 3".into()));
    }
    if bbf(gamma, gamma)?.is_zero() {
        return Err(Error::Degenerate("γ must have nonzero square".into()));
    }
    let m = n + 1;
    let g = gamma.to_ls();
    let w1 = (1..2 * n - 3).fold(g.clone(), |acc, _| acc.mul(&g));
    let qv = qvee_class(n);
    let w2 = (0..n - 2).fold(g, |acc, _| acc.mul(&qv));
    let basis: Vec<LSElement> = h3_basis().iter().map(|b| b.to_ls(n)).collect();
    let omega = cutting_class(m);
    let mut ratio: Option<Rational> = None;
    for (i, j) in basis_pairs() {
        let p = basis[i].mul(&basis[j]);
        let a = top_pairing(&p.id_part_of_product(&w1), &omega);
        let b = top_pairing(&p.id_part_of_product(&w2), &omega);
        match (&ratio, b.is_zero()) {
            (_, true) if a.is_zero() => {}
            (_, true) => return Err(Error::Check("Gram matrices are not proportional".into())),
            (None, false) => ratio = Some(a / b),
            (Some(r), false) => {
                if a != r * b {
                    return Err(Error::Check("Gram matrices are not proportional".into()));
                }
            }
        }
    }
    ratio.ok_or_else(|| Error::Degenerate("both Gram matrices vanish".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bbf_examples() {
        let xi = H2Class::xi(2);
        assert_eq!(bbf(&xi, &xi).unwrap(), rat(-6));
        let [(e1, f1), _, _] = standard_basis();
        let (e, f) = (H2Class::mu(2, &e1).unwrap(), H2Class::mu(2, &f1).unwrap());
        assert_eq!(bbf(&e, &f).unwrap(), rat(1));
        assert_eq!(bbf(&e, &xi).unwrap(), rat(0));
        assert!(bbf(&e, &H2Class::xi(3)).is_err());
    }

    #[test]
    fn standard_basis_is_standard() {
        let b = standard_basis();
        for (i, (e, f)) in b.iter().enumerate() {
            assert_eq!(integrate_a(&e.wedge(e)), rat(0));
            assert_eq!(integrate_a(&e.wedge(f)), rat(1));
            for (j, (e2, f2)) in b.iter().enumerate() {
                if i != j {
                    for (x, y) in [(e, e2), (e, f2), (f, e2), (f, f2)] {
                        assert_eq!(integrate_a(&x.wedge(y)), rat(0));
                    }
                }
            }
        }
    }

    #[test]
    fn fujiki_examples() {
        let g = H2Class::mu(2, &eta(&[1, 2]).add(&eta(&[3, 4]))).unwrap();
        assert_eq!(fujiki_value(2, &vec![g; 4]).unwrap(), rat(36));
        assert_eq!(fujiki_value(2, &vec![H2Class::xi(2); 4]).unwrap(), rat(324));
        assert!(fujiki_value(2, &[H2Class::xi(2)]).is_err());
    }

    #[test]
    fn ideban_small_cases() {
        assert_eq!(ideban_sides(0, 1, 1).unwrap(), (rat(3), rat(3)));
        assert!(verify_ideban(4, 0, 2).unwrap());
        assert!(verify_ideban(0, 3, 2).is_err());
    }

    #[test]
    fn iota_inv_matches_explicit_choice() {
        // ι⁻¹(η₁η₂η₃ ∧ η₁η₂η₄) = η₁η₂
        assert_eq!(
            iota_inv_h3(&eta(&[1, 2, 3]), &eta(&[1, 2, 4])).unwrap(),
            eta(&[1, 2])
        );
        assert!(iota_inv_h3(&eta(&[1, 2, 3]), &eta(&[1, 2, 3]))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn theta1_formula_small_n() {
        assert_eq!(theta1_formula(2), rat(-1));
        assert_eq!(theta1_formula(3), rat(-72));
    }
}
