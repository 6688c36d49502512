//! Elementary divisors of the polarization on `J³` of a four-dimensional
//! generalized Kummer, for each divisibility class of `c₁(L)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exterior::{Ambient, ExtElement};
use crate::field::{frac, rat, Rational};
use crate::hodge::{polarization_pairing, Functional, ThetaTriple};
use crate::linalg;
use crate::smith::{skew_smith, IntMat};

/// `ϑ` for `n = 2` as computed from the ring, sign of `ϑ₃` included.
pub const THETA_N2: [i64; 3] = [-1, -3, 3];

pub fn theta_n2() -> ThetaTriple {
    ThetaTriple::kummer(2, THETA_N2).expect("valid triple")
}

/// `c₁(L) = c(e v₁∨∧v₂∨ + v₃∨∧v₄∨) + sζ∨` with `gcd(c, s) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolClass {
    pub c: i64,
    pub e: i64,
    pub s: i64,
}

impl PolClass {
    pub fn new(c: i64, e: i64, s: i64) -> Result<Self> {
        if c <= 0 || e <= 0 {
            return Err(Error::OutOfRange("c and e must be positive".into()));
        }
        if c.gcd(&s) != 1 {
            return Err(Error::Invalid("gcd(c, s) must be 1".into()));
        }
        Ok(PolClass { c, e, s })
    }

    /// The normal form for a given divisibility.
    pub fn template(div: u32, e: i64) -> Result<Self> {
        let (c, s) = match div {
            1 => (1, 0),
            2 => (2, 1),
            3 => (3, 1),
            6 => (6, 1),
            _ => return Err(Error::OutOfRange(format!("divisibility {div}"))),
        };
        Self::new(c, e, s)
    }

    /// `gcd(c, 6s)`; `ξ∨` has square `−6` and `∧²V∨` is unimodular.
    pub fn divisibility(&self) -> i64 {
        self.c.gcd(&(6 * self.s))
    }

    /// `2c²e − 6s²`.
    pub fn square(&self) -> i64 {
        2 * self.c * self.c * self.e - 6 * self.s * self.s
    }

    pub fn functional(&self) -> Functional {
        let h0 = ExtElement::wedge_of(Ambient::Dual, &[1, 2])
            .scale(&rat(self.e))
            .add(&ExtElement::wedge_of(Ambient::Dual, &[3, 4]))
            .scale(&rat(self.c));
        Functional::new(&h0, rat(self.s)).expect("degree two")
    }
}

fn unit(k: usize, c: i64) -> Vec<Rational> {
    let mut v = vec![rat(0); 8];
    v[k] = rat(c);
    v
}

/// `α₁..α₄, β₁..β₄` in coordinates `(v₁..v₄, v₁∨..v₄∨)`.
pub fn standard_basis() -> Vec<Vec<Rational>> {
    vec![
        unit(4, 1),
        unit(1, 1),
        unit(3, 1),
        unit(6, 1),
        unit(5, -1),
        unit(0, 1),
        unit(2, 1),
        unit(7, -1),
    ]
}

fn to_int(x: &Rational) -> Result<BigInt> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(Error::Check(format!("non-integral entry {x}")))
    }
}

/// Gram matrix of `⟨,⟩_{ϑ,h}` on `α₁..α₄, β₁..β₄`.
pub fn gram_with(t: &ThetaTriple, p: &PolClass) -> Result<IntMat> {
    let h = p.functional();
    let basis = standard_basis();
    basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| to_int(&polarization_pairing(t, &h, a, b)))
                .collect()
        })
        .collect()
}

pub fn gram_on_standard_basis(p: &PolClass) -> IntMat {
    gram_with(&theta_n2(), p).expect("integral pairing")
}

/// The expected `α`-`β` block.
pub fn expected_block(p: &PolClass) -> IntMat {
    let (c, e, s) = (p.c, p.e, p.s);
    crate::smith::int_mat(&[
        vec![3 * c, 3 * s, 0, 0],
        vec![3 * s, c * e, 0, 0],
        vec![0, 0, c, 3 * s],
        vec![0, 0, 3 * s, 3 * c * e],
    ])
}

/// Splits a Gram matrix into its `α`-`α`, `α`-`β` and `β`-`β` blocks.
pub fn blocks(m: &IntMat) -> (IntMat, IntMat, IntMat) {
    let sub =
        |r: usize, c: usize| -> IntMat { (r..r + 4).map(|i| m[i][c..c + 4].to_vec()).collect() };
    (sub(0, 0), sub(0, 4), sub(4, 4))
}

pub fn elementary_divisor_table(div: u32, e: i64) -> Result<Vec<BigInt>> {
    skew_smith(&gram_on_standard_basis(&PolClass::template(div, e)?))
}

/// The diagonal predicted for each divisibility, `g = gcd(3, e)`.
pub fn expected_divisors(div: u32, e: i64) -> Result<Vec<i64>> {
    let g = 3.gcd(&e);
    Ok(match div {
        1 => vec![1, g, 3 * e / g, 3 * e],
        2 => vec![1, g, 3 * (4 * e - 3) / g, 3 * (4 * e - 3)],
        3 => vec![3, 3, 3 * (3 * e - 1), 3 * (3 * e - 1)],
        6 => vec![3, 3, 3 * (12 * e - 1), 3 * (12 * e - 1)],
        _ => return Err(Error::OutOfRange(format!("divisibility {div}"))),
    })
}

/// The reference change of basis for each divisibility, as rows of
/// coefficients on `α₁..α₄, β₁..β₄`.
///
/// For divisibility 6 this list does not diagonalize the form, since
/// `⟨α₃, β₃ − 6eβ₄⟩ = 6 − 18e`. See [`adapted_basis`].
pub fn reference_basis(div: u32, e: i64) -> Result<Vec<Vec<Rational>>> {
    let g = 3.gcd(&e);
    let r = |c: &[(usize, i64)], d: i64| -> Vec<Rational> {
        let mut v = vec![rat(0); 8];
        for &(k, x) in c {
            v[k] += frac(x, d);
        }
        v
    };
    let (a1, a2, a3, a4, b1, b2, b3, b4) = (0, 1, 2, 3, 4, 5, 6, 7);
    Ok(match div {
        1 => {
            let eg = 3.extended_gcd(&e);
            let (x, y) = (eg.x, eg.y);
            vec![
                r(&[(a3, 1)], 1),
                r(&[(a1, x), (a2, y)], 1),
                r(&[(a1, e), (a2, -3)], g),
                r(&[(a4, 1)], 1),
                r(&[(b3, 1)], 1),
                r(&[(b1, 1), (b2, 1)], 1),
                r(&[(b1, e * y), (b2, -3 * x)], g),
                r(&[(b4, 1)], 1),
            ]
        }
        2 => {
            let eg = 3.extended_gcd(&(2 * e));
            let (x, y) = (eg.x, eg.y);
            vec![
                r(&[(a3, 1)], 1),
                r(&[(a1, x), (a2, y)], 1),
                r(&[(a1, 2 * e), (a2, -3)], g),
                r(&[(a3, 6 * e - 3), (a4, -1)], 1),
                r(&[(b4, 1), (b3, -1)], 1),
                r(&[(b2, 1)], 1),
                r(&[(b1, g), (b2, -(6 * x + 3 * y))], g),
                r(&[(b3, 3), (b4, -2)], 1),
            ]
        }
        3 => vec![
            r(&[(a3, 1)], 1),
            r(&[(a1, 1)], 1),
            r(&[(a4, 1), (a3, -1)], 1),
            r(&[(a1, e), (a2, -1)], 1),
            r(&[(b3, 1)], 1),
            r(&[(b2, 1)], 1),
            r(&[(b4, 1), (b3, -1)], 1),
            r(&[(b1, 1), (b2, -3)], 1),
        ],
        6 => vec![
            r(&[(a1, 1)], 1),
            r(&[(a3, 1)], 1),
            r(&[(a3, 2), (a4, -1)], 1),
            r(&[(a1, 2 * e), (a2, -1)], 1),
            r(&[(b2, 1)], 1),
            r(&[(b4, 1)], 1),
            r(&[(b3, 1), (b4, -6 * e)], 1),
            r(&[(b1, 1), (b2, -6)], 1),
        ],
        _ => return Err(Error::OutOfRange(format!("divisibility {div}"))),
    })
}

/// A unimodular basis in which the form is `((0,Δ),(−Δ,0))`.
///
/// Agrees with [`reference_basis`] except for divisibility 6, where the third
/// and seventh vectors are `6eα₃ − α₄` and `β₃ − 2β₄`.
pub fn adapted_basis(div: u32, e: i64) -> Result<Vec<Vec<Rational>>> {
    let mut b = reference_basis(div, e)?;
    if div == 6 {
        b[2] = vec![
            rat(0),
            rat(0),
            rat(6 * e),
            rat(-1),
            rat(0),
            rat(0),
            rat(0),
            rat(0),
        ];
        b[6] = vec![
            rat(0),
            rat(0),
            rat(0),
            rat(0),
            rat(0),
            rat(0),
            rat(1),
            rat(-2),
        ];
    }
    Ok(b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCheck {
    pub integral: bool,
    pub det: BigInt,
    /// The Gram matrix in the adapted basis.
    pub transformed: IntMat,
    pub expected: IntMat,
}

impl BasisCheck {
    pub fn holds(&self) -> bool {
        self.integral && self.det.abs() == BigInt::from(1) && self.transformed == self.expected
    }
}

/// Checks that a basis is unimodular and brings the form to `((0,Δ),(−Δ,0))`.
pub fn verify_basis(div: u32, e: i64, b: &[Vec<Rational>]) -> Result<BasisCheck> {
    let b = b.to_vec();
    let integral = b.iter().flatten().all(|x| x.is_integer());
    let det = to_int(&linalg::det(&b)).unwrap_or_default();
    let gram: linalg::Mat<Rational> = gram_on_standard_basis(&PolClass::template(div, e)?)
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let t = linalg::mat_mul(&linalg::mat_mul(&b, &gram), &linalg::transpose(&b));
    let transformed = t
        .iter()
        .map(|r| r.iter().map(to_int).collect::<Result<Vec<_>>>())
        .collect::<Result<IntMat>>()?;
    let d = expected_divisors(div, e)?;
    let mut expected = vec![vec![BigInt::from(0); 8]; 8];
    for (k, &x) in d.iter().enumerate() {
        expected[k][k + 4] = BigInt::from(x);
        expected[k + 4][k] = BigInt::from(-x);
    }
    Ok(BasisCheck {
        integral,
        det,
        transformed,
        expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn template_invariants() {
        let sq = [(1, 2, 0), (2, 8, -6), (3, 18, -6), (6, 72, -6)];
        for (div, a, b) in sq {
            for e in 1..5 {
                let p = PolClass::template(div, e).unwrap();
                assert_eq!(p.divisibility(), div as i64);
                assert_eq!(p.square(), a * e + b);
                assert_eq!(p.functional().dual_square(&frac(1, 6)), rat(p.square()));
            }
        }
        assert!(PolClass::new(2, 1, 2).is_err());
    }

    #[test]
    fn small_tables() {
        let t = |d, e| elementary_divisor_table(d, e).unwrap();
        assert_eq!(t(1, 1), [1, 1, 3, 3].map(BigInt::from));
        assert_eq!(t(1, 3), [1, 3, 3, 9].map(BigInt::from));
        assert_eq!(t(3, 1), [3, 3, 6, 6].map(BigInt::from));
    }

    #[test]
    fn reference_basis_fails_only_for_divisibility_six() {
        for e in 1..=4 {
            for div in [1, 2, 3] {
                assert!(verify_basis(div, e, &reference_basis(div, e).unwrap())
                    .unwrap()
                    .holds());
            }
            assert!(!verify_basis(6, e, &reference_basis(6, e).unwrap())
                .unwrap()
                .holds());
            assert!(verify_basis(6, e, &adapted_basis(6, e).unwrap())
                .unwrap()
                .holds());
        }
    }
}
