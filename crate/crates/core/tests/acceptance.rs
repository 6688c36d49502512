//! The acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p kumjac --test acceptance -- --nocapture`.
//!
//! Two sub-checks are known to disagree with the reference values and are
//! reported as FAIL: the sign of `ϑ₃` for `n = 2`, and the listed change of basis
//! for divisibility 6. The test asserts that these are the only failures.

use std::time::{Duration, Instant};

use kumjac::divisors;
use kumjac::field::{frac, rat, Rational};
use kumjac::hodge::{self, Classification, ThetaTriple};
use kumjac::kummer::{self, Backend};
use kumjac::lehn_sorger::{c_class, integrate_product, mu_class};
use kumjac::report::{
    self, classification_agrees, crafted_planes, hodge_tally, spinor_tally, weil_tally,
};
use kumjac::ring_checks;
use kumjac::surface::eta;
use kumjac::weil;
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Part {
    name: String,
    ok: bool,
    detail: String,
    /// Documented disagreement with the reference data.
    known_red: bool,
}

#[derive(Default)]
struct Criterion {
    parts: Vec<Part>,
}

impl Criterion {
    fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.parts.push(Part {
            name: name.into(),
            ok,
            detail: detail.into(),
            known_red: false,
        });
    }

    fn known_red(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.parts.push(Part {
            name: name.into(),
            ok,
            detail: detail.into(),
            known_red: true,
        });
    }

    fn runtime(&mut self, start: Instant, limit_s: u64) {
        let t = start.elapsed();
        self.check(
            format!("runtime < {limit_s} s"),
            t < Duration::from_secs(limit_s),
            format!("{:.2} s", t.as_secs_f64()),
        );
    }

    fn passed(&self) -> bool {
        self.parts.iter().all(|p| p.ok)
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ring_triple(n: usize) -> ThetaTriple {
    kummer::compute_theta(n).unwrap().triple().unwrap()
}

fn double_factorial_identity() -> Criterion {
    let mut c = Criterion::default();
    let start = Instant::now();
    let mut cases = 0;
    let mut bad = Vec::new();
    for k in 0..=6 {
        for l in 0..=6 {
            for n in l..=8 {
                cases += 1;
                if !kummer::verify_ideban(k, l, n).unwrap() {
                    bad.push((k, l, n));
                }
            }
        }
    }
    c.check(
        "all 0 ≤ k, l ≤ 6, l ≤ n ≤ 8",
        bad.is_empty(),
        format!("{cases} cases, failures {bad:?}"),
    );
    let mut extra = 0;
    let mut extra_ok = true;
    for k in 7..=8 {
        for l in 0..=6 {
            for n in l..=8 {
                extra += 1;
                extra_ok &= kummer::verify_ideban(k, l, n).unwrap();
            }
        }
    }
    c.check(
        "extended to k ≤ 8",
        extra_ok,
        format!("{} cases in total", cases + extra),
    );
    c.runtime(start, 1);
    c
}

fn dual_class_powers() -> Criterion {
    let mut c = Criterion::default();
    let start = Instant::now();
    for n in [2, 3] {
        for l in 0..=n {
            let r = kummer::bellaform_check(n, l).unwrap();
            c.check(
                format!("n = {n}, ℓ = {l}"),
                r.holds(),
                format!(
                    "ring {} closed {}, {} intermediate values",
                    r.computed,
                    r.closed,
                    r.intermediate.len()
                ),
            );
        }
    }
    c.runtime(start, 60);
    c
}

fn theta_constants() -> Criterion {
    let mut c = Criterion::default();
    let start = Instant::now();
    for n in [2, 3] {
        let v = kummer::compute_theta_with(n, Backend::Ring).unwrap();
        let k = rat(n as i64 + 1);
        c.check(
            format!("n = {n} ring: ϑ₁ formula, ϑ₂ = (n+1)ϑ₁, |ϑ₃| = (n+1)|ϑ₁|"),
            v.t1 == kummer::theta1_formula(n)
                && v.t2 == &k * &v.t1
                && v.t3.as_ref().map(|t| t.abs()) == Some(&k * v.t1.abs()),
            format!("({}, {}, {:?})", v.t1, v.t2, v.t3.map(|t| t.to_string())),
        );
    }
    for n in 2..=5 {
        let v = kummer::compute_theta_with(n, Backend::ClosedForm).unwrap();
        let k = rat(n as i64 + 1);
        c.check(
            format!("n = {n} closed forms"),
            v.t1 == kummer::theta1_formula(n) && v.t2 == &k * &v.t1 && v.t3_abs == &k * v.t1.abs(),
            format!("ϑ₁ = {}, ϑ₂ = {}, |ϑ₃| = {}", v.t1, v.t2, v.t3_abs),
        );
    }
    // ∫μ₃(α)ν₃(β)ξ with ν₃ = 2c and ∫αβ = 1
    let integral = integrate_product(
        2,
        &[
            mu_class(3, &eta(&[1, 2, 3])),
            c_class(3, &eta(&[4])).unwrap().scale(&rat(2)),
            kummer::xi_class(2),
        ],
    )
    .unwrap();
    let t = kummer::compute_theta(2).unwrap();
    let reference = report::REFERENCE_THETA_N2.map(rat);
    let computed = [t.t1.clone(), t.t2.clone(), t.t3.clone().unwrap()];
    c.known_red(
        "n = 2 full triple including the sign of ϑ₃",
        computed == reference && integral == rat(-6),
        format!(
            "reference (-1, -3, -3) with integral -6; computed ({}, {}, {}) with integral {integral}",
            computed[0], computed[1], computed[2]
        ),
    );
    c.runtime(start, 120);
    c
}

fn phi_expansion() -> Criterion {
    let mut c = Criterion::default();
    for n in [2, 3] {
        let r = kummer::verify_phi_ansatz(n).unwrap();
        c.check(
            format!("n = {n}"),
            r.holds() && r.matrix.len() == 28,
            format!(
                "{} pairs, {} mismatches, ϑ = ({}, {}, {})",
                r.matrix.len(),
                r.mismatches.len(),
                r.theta.t1,
                r.theta.t2,
                r.theta.t3
            ),
        );
    }
    c
}

fn cd_coefficients() -> Criterion {
    let mut c = Criterion::default();
    for n in [3, 4, 5] {
        let c1 = frac(-1, (n as i64 + 1) * (2 * n as i64 + 5));
        let (got1, d1) = kummer::solve_cd(n, 1).unwrap();
        let (got2, d2) = kummer::solve_cd(n, 2).unwrap();
        let c2 = rat(4 * (n as i64 + 1)) * &c1;
        c.check(
            format!("n = {n}"),
            got1 == c1 && d1 == rat(0) && got2 == c2 && d2 == rat(0),
            format!("C₁ = {got1}, D₁ = {d1}, C₂ = {got2}, D₂ = {d2}"),
        );
    }
    c
}

fn rank_dichotomy() -> Criterion {
    let mut c = Criterion::default();
    for n in [2, 3] {
        let table = kummer::rank_table(n).unwrap();
        let mut seen: Vec<usize> = table.iter().map(|r| r.expected).collect();
        seen.sort();
        seen.dedup();
        let ok = table.iter().all(|r| r.expected == r.computed) && seen == vec![0, 4, 7];
        let detail: Vec<String> = table
            .iter()
            .map(|r| format!("{}: {}", r.label, r.computed))
            .collect();
        c.check(format!("n = {n}"), ok, detail.join(", "));
    }
    c
}

fn classification_oracle() -> Criterion {
    let mut c = Criterion::default();
    let start = Instant::now();
    let mut r = rng(7);
    for n in [2, 3] {
        let t = ring_triple(n);
        let planes = crafted_planes(&t, &mut r);
        let mut bad = Vec::new();
        for (label, what, g) in &planes {
            let (cl, ok) = classification_agrees(&t, g).unwrap();
            if !ok || cl.label() != *label {
                bad.push(*what);
            }
        }
        c.check(
            format!("n = {n}: {} crafted planes", planes.len()),
            bad.is_empty(),
            format!("failures {bad:?}"),
        );
    }
    let t = ring_triple(2);
    let trials = 5000;
    let mut agree = 0;
    let mut lines = 0;
    for k in 0..trials {
        let g = match k % 10 {
            // a share of planes built to be one-dimensional, on a mixed basis
            0 => {
                let f = hodge::random_skew_with_pfaffian(&mut r, &(&t.t1 / &t.t2));
                hodge::mix_rows(&mut r, &hodge::graph_plane(&f))
            }
            _ => hodge::random_plane(&mut r),
        };
        let (cl, ok) = classification_agrees(&t, &g).unwrap();
        agree += ok as usize;
        lines += !matches!(cl, Classification::NotOneDim) as usize;
    }
    c.check(
        format!("{trials} random planes"),
        agree == trials,
        format!("{agree} agree, {lines} with a one-dimensional image"),
    );
    c.runtime(start, 60);
    c
}

fn period_points() -> Criterion {
    let mut c = Criterion::default();
    let mut r = rng(8);
    for (n, points) in [(2, 100), (3, 30)] {
        let t = ring_triple(n);
        let h = hodge_tally(&t, &mut r, points).unwrap();
        let ok = [
            h.spans_line,
            h.transversal,
            h.mixed_orthogonal,
            h.isotropic,
            h.definite,
            h.conjugate_flips,
        ]
        .iter()
        .all(|&x| x == points);
        c.check(
            format!("n = {n}: {points} points"),
            ok,
            format!(
                "line {}, transversal {}, isotropic {}, definite {}, conjugate flips {} ({} graph, {} split)",
                h.spans_line, h.transversal, h.isotropic, h.definite, h.conjugate_flips, h.graph_points, h.split_points
            ),
        );
    }
    c
}

fn spinors() -> Criterion {
    let mut c = Criterion::default();
    let mut r = rng(9);
    for n in 2..=5 {
        let dual = hodge::dual_bbf_gram(n);
        c.check(
            format!("n = {n}: pulled back q⁺ is the dual BBF Gram matrix"),
            hodge::pulled_back_gram(n, 0) == dual && hodge::pulled_back_gram(n, 1) == dual,
            "both embeddings",
        );
        let trials = 40;
        let counts = spinor_tally(n, &mut r, trials).unwrap();
        c.check(
            format!("n = {n}: Z(x) on {trials} pure spinors in T⁺"),
            counts.iter().all(|&x| x == trials),
            format!("T⁺, isotropic, Z, η, Pf = {counts:?}"),
        );
    }
    c
}

fn divisor_tables() -> Criterion {
    let mut c = Criterion::default();
    let start = Instant::now();
    for div in [1u32, 2, 3, 6] {
        let mut bad_tables = Vec::new();
        let mut bad_listed = Vec::new();
        let mut bad_adapted = Vec::new();
        for e in 1..=10 {
            let table = divisors::elementary_divisor_table(div, e).unwrap();
            let expected: Vec<_> = divisors::expected_divisors(div, e)
                .unwrap()
                .into_iter()
                .map(Into::into)
                .collect();
            if table != expected {
                bad_tables.push(e);
            }
            if !divisors::verify_basis(div, e, &divisors::reference_basis(div, e).unwrap())
                .unwrap()
                .holds()
            {
                bad_listed.push(e);
            }
            if !divisors::verify_basis(div, e, &divisors::adapted_basis(div, e).unwrap())
                .unwrap()
                .holds()
            {
                bad_adapted.push(e);
            }
        }
        c.check(
            format!("divisibility {div}: tables for e = 1..10"),
            bad_tables.is_empty(),
            format!("failures at e = {bad_tables:?}"),
        );
        let listed = format!("listed basis fails at e = {bad_listed:?}");
        if div == 6 {
            c.known_red(
                format!("divisibility {div}: listed bases"),
                bad_listed.is_empty(),
                listed,
            );
            c.check(
                format!("divisibility {div}: corrected bases"),
                bad_adapted.is_empty(),
                format!("failures at e = {bad_adapted:?}"),
            );
        } else {
            c.check(
                format!("divisibility {div}: listed bases"),
                bad_listed.is_empty(),
                listed,
            );
        }
    }
    c.runtime(start, 5);
    c
}

fn weil_type() -> Criterion {
    let mut c = Criterion::default();
    let start = Instant::now();
    let mut r = rng(10);
    let contexts = 50;
    let [verified, eigen, herm] = weil_tally(&mut r, contexts).unwrap();
    c.check(
        format!("{contexts} random contexts"),
        verified == contexts && eigen == contexts && herm == contexts,
        format!("verify {verified}, eigenspaces {eigen}, Hermitian determinant and witness {herm}"),
    );
    let pairs = 1000;
    let ok = report::cayley_tally(&mut r, pairs);
    c.check(
        format!("{pairs} integer skew pairs"),
        ok == pairs,
        format!("{ok} satisfy the quadratic relation"),
    );
    for t3 in [3, -3] {
        let ex = weil::order_three_example(t3).unwrap();
        c.check(
            format!("weight-one example with ϑ₃ = {t3}"),
            ex.holds(),
            format!(
                "N = {}, b = {}, Ω³ = 1: {}, index {}",
                ex.n, ex.b, ex.omega_cubed_is_id, ex.enlarged_index
            ),
        );
    }
    c.runtime(start, 30);
    c
}

fn ring_properties() -> Criterion {
    let mut c = Criterion::default();
    let start = Instant::now();
    let mut r = rng(11);
    for (m, p) in ring_checks::run_all(&mut r, 4, 25).unwrap() {
        c.check(
            format!("{} (m = {m})", p.name),
            p.holds(),
            format!("{} failures in {}", p.failures, p.trials),
        );
    }
    c.runtime(start, 60);
    c
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Criterion); 12] = [
        ("double-factorial identity", double_factorial_identity),
        ("powers of the dual class against xi", dual_class_powers),
        ("theta constants", theta_constants),
        ("three-constant expansion of phi", phi_expansion),
        ("C/D coefficients", cd_coefficients),
        ("rank dichotomy 0/4/7", rank_dichotomy),
        ("classification vs brute-force rank", classification_oracle),
        ("Hodge structures from period points", period_points),
        ("spinor picture", spinors),
        ("elementary divisor tables", divisor_tables),
        ("Weil type", weil_type),
        ("ring self-tests", ring_properties),
    ];
    println!();
    let mut unexpected = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let c = run();
        println!(
            "{} criterion {:>2}: {name}",
            if c.passed() { "PASS" } else { "FAIL" },
            i + 1
        );
        for p in &c.parts {
            let tag = match (p.ok, p.known_red) {
                (true, _) => "ok  ",
                (false, true) => "red ",
                (false, false) => "FAIL",
            };
            println!("       {tag} {}: {}", p.name, p.detail);
            if p.ok == p.known_red {
                unexpected.push(format!("criterion {}: {} ({})", i + 1, p.name, p.detail));
            }
        }
    }
    assert!(
        unexpected.is_empty(),
        "unexpected outcomes: {unexpected:#?}"
    );
}

#[test]
fn rationals_print_exactly() {
    let x: Rational = frac(-6, 4);
    assert_eq!(x.to_string(), "-3/2");
}
