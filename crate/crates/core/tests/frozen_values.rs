//! Values computed once by the engine and cross-checked against closed formulas,
//! frozen here to catch regressions.

use kumjac::divisors::elementary_divisor_table;
use kumjac::field::{frac, rat};
use kumjac::kummer::{self, Backend};
use kumjac::weil::{self, WeilContext};
use kumjac::ThetaTriple;
use num_bigint::BigInt;

#[test]
fn theta_values() {
    let expect = [
        (2, -1i64, -3i64),
        (3, -72, -288),
        (4, -9900, -49500),
        (5, -2223936, -13343616),
    ];
    for (n, t1, t2) in expect {
        let v = kummer::compute_theta(n).unwrap();
        assert_eq!(
            (v.t1, v.t2, v.t3_abs),
            (rat(t1), rat(t2), rat(-t2)),
            "n = {n}"
        );
    }
    assert_eq!(
        kummer::compute_theta_with(2, Backend::Ring).unwrap().t3,
        Some(rat(3))
    );
    assert_eq!(
        kummer::compute_theta_with(3, Backend::Ring).unwrap().t3,
        Some(rat(288))
    );
}

#[test]
fn dual_class_integrals() {
    let n2: Vec<_> = (0..=2)
        .map(|l| kummer::bellaform_check(2, l).unwrap().computed)
        .collect();
    assert_eq!(n2, [rat(324), rat(-162), rat(189)]);
    let n3: Vec<_> = (0..=3)
        .map(|l| kummer::bellaform_check(3, l).unwrap().computed)
        .collect();
    assert_eq!(n3, [rat(-30720), rat(8448), rat(-3168), rat(2772)]);
}

#[test]
fn cd_values() {
    assert_eq!(kummer::solve_cd(3, 1).unwrap(), (frac(-1, 44), rat(0)));
    assert_eq!(kummer::solve_cd(3, 2).unwrap(), (frac(-4, 11), rat(0)));
    assert_eq!(kummer::solve_cd(5, 1).unwrap(), (frac(-1, 90), rat(0)));
}

#[test]
fn divisor_samples() {
    let big = |v: [i64; 4]| v.map(BigInt::from).to_vec();
    assert_eq!(elementary_divisor_table(1, 3).unwrap(), big([1, 3, 3, 9]));
    assert_eq!(elementary_divisor_table(2, 2).unwrap(), big([1, 1, 15, 15]));
    assert_eq!(elementary_divisor_table(3, 2).unwrap(), big([3, 3, 15, 15]));
    assert_eq!(elementary_divisor_table(6, 1).unwrap(), big([3, 3, 33, 33]));
}

#[test]
fn weil_sample() {
    let t = ThetaTriple::kummer(2, [-1, -3, 3]).unwrap();
    let ctx = WeilContext::new(t, 2, 1, 1).unwrap();
    let g = weil::hermitian_gram(&ctx).unwrap();
    assert!(g.is_hermitian() && g.witness_ok());
    assert_eq!(
        g.det.as_rational().unwrap(),
        weil::expected_hermitian_det(&ctx)
    );
    let ex = weil::order_three_example(3).unwrap();
    assert_eq!(
        (ex.n, ex.b, ex.enlarged_index),
        (frac(1, 3), rat(0), BigInt::from(16))
    );
}
