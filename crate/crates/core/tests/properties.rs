use kumjac::exterior::{iota, iota_inv, wedge2_basis};
use kumjac::field::{frac, rat, QuadExt, Rational};
use kumjac::hodge::{self, ThetaTriple};
use kumjac::kummer;
use kumjac::linalg;
use kumjac::report::classification_agrees;
use kumjac::ring_checks;
use kumjac::skew::{skew_cayley_check, SkewMap4};
use kumjac::smith::{skew_smith, smith_from_minors};
use kumjac::{Ambient, ExtElement};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn skew_entries() -> impl Strategy<Value = [i64; 6]> {
    prop::array::uniform6(-12i64..=12)
}

fn skew(a: [i64; 6]) -> SkewMap4<Rational> {
    SkewMap4::from_ints(a)
}

fn theta_n2() -> ThetaTriple {
    ThetaTriple::kummer(2, [-1, -3, 3]).unwrap()
}

proptest! {
    #[test]
    fn pfaffian_squares_to_determinant(a in skew_entries()) {
        let f = skew(a);
        let pf = f.pfaffian();
        prop_assert_eq!(&pf * &pf, f.det());
    }

    #[test]
    fn skew_inverse_is_inverse(a in skew_entries()) {
        let f = skew(a);
        prop_assume!(f.pfaffian() != rat(0));
        let g = f.inverse().unwrap();
        prop_assert_eq!(linalg::mat_mul(f.matrix(), g.matrix()), linalg::identity(4));
    }

    #[test]
    fn cayley_relation_for_skew_pairs(a in skew_entries(), b in skew_entries()) {
        prop_assert!(skew_cayley_check(&skew(a), &skew(b)));
    }

    #[test]
    fn iota_round_trips(c in prop::array::uniform6(-9i64..=9)) {
        let mut x = ExtElement::zero(Ambient::Dual);
        for (&m, v) in wedge2_basis().iter().zip(c) {
            x.add_term(m, rat(v));
        }
        prop_assert_eq!(iota_inv(&iota(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn double_factorial_identity(k in 0usize..12, l in 0usize..10, extra in 0usize..6) {
        prop_assert!(kummer::verify_ideban(k, l, l + extra).unwrap());
    }

    #[test]
    fn quadratic_norm_is_multiplicative(
        a in -20i64..20, b in -20i64..20, c in -20i64..20, e in -20i64..20, d in 1i64..8
    ) {
        let d = rat(-d);
        let x = QuadExt::new(rat(a), rat(b), d.clone());
        let y = QuadExt::new(rat(c), rat(e), d);
        prop_assert_eq!((x.clone() * y.clone()).norm(), x.norm() * y.norm());
        prop_assert_eq!(x.clone() * x.conj(), QuadExt::rational(x.norm()));
    }
}

/// A random unimodular 8×8 integer matrix from a seed.
fn unimodular(seed: u64) -> Vec<Vec<BigInt>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = hodge::random_unimodular(&mut rng, 8);
    p.iter()
        .map(|r| r.iter().map(|x| x.to_integer()).collect())
        .collect()
}

fn block_skew(d: [i64; 4]) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; 8]; 8];
    for (k, dk) in d.iter().enumerate() {
        m[2 * k][2 * k + 1] = *dk;
        m[2 * k + 1][2 * k] = -dk;
    }
    m
}

/// `Pᵀ M P`.
fn congruent(m: &[Vec<i64>], p: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = m.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .flat_map(|a| (0..n).map(move |b| (a, b)))
                        .map(|(a, b)| &p[a][i] * m[a][b] * &p[b][j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn skew_smith_is_congruence_invariant(d0 in 1i64..4, r1 in 1i64..4, r2 in 1i64..4, r3 in 1i64..3, seed in any::<u64>()) {
        let d = [d0, d0 * r1, d0 * r1 * r2, d0 * r1 * r2 * r3];
        let m = congruent(&block_skew(d), &unimodular(seed));
        let got = skew_smith(&m).unwrap();
        let want: Vec<BigInt> = d.iter().map(|&x| x.into()).collect();
        prop_assert_eq!(&got, &want);
        // each block divisor appears twice among the Smith invariants
        let doubled: Vec<BigInt> = want.iter().flat_map(|x| [x.clone(), x.clone()]).collect();
        prop_assert_eq!(smith_from_minors(&m), doubled);
    }

    #[test]
    fn classification_matches_rank(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = theta_n2();
        let g = hodge::random_plane(&mut rng);
        prop_assert!(classification_agrees(&t, &g).unwrap().1);
        let f = hodge::random_skew_with_pfaffian(&mut rng, &frac(1, 3));
        let g = hodge::mix_rows(&mut rng, &hodge::graph_plane(&f));
        let (c, ok) = classification_agrees(&t, &g).unwrap();
        prop_assert!(ok);
        prop_assert_eq!(c.label(), "graph");
    }

    #[test]
    fn period_points_give_polarized_structures(seed in any::<u64>(), in_zeta_perp in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = theta_n2();
        let h = hodge::random_positive_functional(&mut rng, &t.m);
        let p = hodge::random_period_point(&t, &h, &mut rng, in_zeta_perp);
        let hs = hodge::hodge_from_period(&t, &p).unwrap();
        prop_assert!(hs.spans_line(&t, &p.sigma));
        prop_assert!(hs.is_transversal());
        prop_assert!(hs.isotropic_for(&t, &h));
        let s = hodge::positivity_check(&t, &h, &p).unwrap();
        prop_assert_eq!(hodge::positivity_check(&t, &h, &p.conj()).unwrap(), -s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn ring_product_properties(seed in any::<u64>(), m in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert!(ring_checks::associativity(&mut rng, m, 2).unwrap().holds());
        prop_assert!(ring_checks::graded_commutativity(&mut rng, m, 2).unwrap().holds());
        prop_assert!(ring_checks::c_square_matches_product(&mut rng, m, 2).unwrap().holds());
        prop_assert!(ring_checks::pushforward_adjoint(&mut rng, m, 4).unwrap().holds());
    }

    #[test]
    fn weil_contexts_verify(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = kumjac::weil::random_context(&mut rng);
        prop_assert!(ctx.psi_squared_is_scalar());
        let p = kumjac::weil::random_positive_point(&ctx, &mut rng, false).unwrap();
        prop_assert!(kumjac::weil::verify_weil(&ctx, &p).unwrap().holds());
    }
}
