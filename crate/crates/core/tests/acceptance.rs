//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its runtime (visible with `cargo test --test acceptance --
//! --nocapture`). All eigen/stationary/cochain comparisons are exact
//! rational equalities; only the simulation criterion is statistical.

use arrspec_core::cochains::{FaceFlag, FlatFlag};
use arrspec_core::generators;
use arrspec_core::golden;
use arrspec_core::rational::{random_positive_rational, Rational};
use arrspec_core::sim;
use arrspec_core::spectra::{
    full_spectrum, q_dp_literal, q_permutation_oracle, q_vector, stationary_dp_oracle,
    stationary_exact, transition_matrix, WeightAssignment, PERMUTATION_FACE_LIMIT,
};
use arrspec_core::verify::{self, standard_suite, suite_weights, VerifyReport};
use arrspec_core::FaceComplex;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

fn finish(criterion: usize, what: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!(
        "criterion {criterion}: PASS — {what} ({} ms, budget {} s)",
        elapsed.as_millis(),
        budget.as_secs()
    );
    assert!(
        elapsed <= budget,
        "criterion {criterion} exceeded its {budget:?} budget: {elapsed:?}"
    );
}

fn assert_report_clean(criterion: usize, report: &VerifyReport) {
    for check in &report.checks {
        assert!(
            check.passed,
            "criterion {criterion}: [{}] failed: {}",
            check.name, check.detail
        );
    }
}

/// Criterion 1: the three-line eigenbasis matches the reference table at
/// 5 random positive rational weight vectors, exactly up to per-vector
/// scalars and the chamber-order permutation.
#[test]
fn criterion_1_golden_eigenbasis() {
    let started = Instant::now();
    let complex = FaceComplex::build(generators::three_lines());
    let orient = golden::fixture_orientation(&complex);
    let perm = golden::reference_order_permutation(&complex);
    for trial in 0..5u64 {
        let w = WeightAssignment::random(&complex, 0x9e1d + trial, 1000, 1000);
        let report = full_spectrum(&complex, &w, &orient).expect("spectrum");
        assert_eq!(report.total_multiplicity(), 6);
        let rows = golden::golden_rows(&complex, w.weights());
        for row in &rows {
            let flat = *row.flats.last().unwrap();
            let pkg = report
                .packages
                .iter()
                .find(|p| p.flat == flat)
                .expect("package per flat");
            assert_eq!(pkg.lambda, row.lambda, "lambda on flats {:?}", row.flats);
            let idx = pkg
                .spanning_flags
                .iter()
                .position(|f| f.flats == row.flats)
                .expect("table flag kept by greedy selection");
            let ours: Vec<Rational> = perm
                .iter()
                .map(|&i| pkg.basis[idx].coeffs[i].clone())
                .collect();
            assert!(
                golden::proportional(&ours, &row.vector_reference_order),
                "trial {trial}: flats {:?}: got {ours:?}, want {:?}",
                row.flats,
                row.vector_reference_order
            );
        }
        // Stationary row: the bottom flat's vector is the q direction.
        let q = q_vector(&complex, &w).expect("q");
        assert!(golden::proportional(
            &report.packages[0].basis[0].coeffs,
            &q.coeffs
        ));
    }
    finish(1, "eigenbasis table at 5 weight vectors", started, Duration::from_secs(1));
}

/// Criterion 2: the one-point stationary closed form, exactly, at 5
/// random weight triples.
#[test]
fn criterion_2_golden_stationary() {
    let started = Instant::now();
    let complex = FaceComplex::build(generators::point_on_line());
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b9e);
    for _ in 0..5 {
        let weights: Vec<Rational> = (0..3)
            .map(|_| random_positive_rational(&mut rng, 1000, 1000))
            .collect();
        let w = WeightAssignment::new(weights.clone()).unwrap();
        let q = q_vector(&complex, &w).expect("q");
        // Canonical face order is (+, 0, -).
        let expect = golden::one_point_q(&weights[0], &weights[1], &weights[2]);
        assert_eq!(q.coeffs, expect);
    }
    finish(2, "one-point q closed form at 5 triples", started, Duration::from_secs(1));
}

/// Criterion 3: flag cochain and phi values on the three-line
/// arrangement under the committed fixture orientation, with the
/// reference sign epsilon = -1.
#[test]
fn criterion_3_golden_cochains() {
    let started = Instant::now();
    let complex = FaceComplex::build(generators::three_lines());
    let orient = golden::fixture_orientation(&complex);

    let flag = FaceFlag {
        faces: vec![
            golden::face_of(&complex, "++-"),
            golden::face_of(&complex, "0+-"),
            complex.origin(),
        ],
    };
    let b = arrspec_core::cochains::flag_cochain(&complex, &flag);
    let expect = golden::combination(
        &complex,
        &[(1, "++-"), (-1, "-+-"), (-1, "+-+"), (1, "--+")],
    );
    assert_eq!(b, expect, "flag cochain expansion");

    assert_eq!(
        arrspec_core::cochains::flag_epsilon(&complex, &orient, &flag).unwrap(),
        -1,
        "reference orientation sign"
    );

    let h1 = complex.lattice().find(&[0]).unwrap();
    let xflag = FlatFlag {
        flats: vec![complex.lattice().bottom(), h1],
    };
    let phi_plus =
        arrspec_core::cochains::phi(&complex, &orient, &xflag, golden::face_of(&complex, "0+-"))
            .unwrap();
    assert_eq!(
        phi_plus,
        golden::combination(&complex, &[(1, "++-"), (-1, "-+-")])
    );
    let phi_minus =
        arrspec_core::cochains::phi(&complex, &orient, &xflag, golden::face_of(&complex, "0-+"))
            .unwrap();
    assert_eq!(
        phi_minus,
        golden::combination(&complex, &[(1, "+-+"), (-1, "--+")])
    );
    finish(3, "cochain, epsilon, and phi fixtures", started, Duration::from_secs(1));
}

/// Criterion 4: on >= 20 random essential arrangements (dim <= 3,
/// n <= 6) with random positive rational weights, eigenspace dimensions
/// equal |mu(W, X)| per flat, multiplicities sum to |C|, and the
/// characteristic polynomial factors through the flats at |C|+1 points.
#[test]
fn criterion_4_multiplicity_theorem() {
    let started = Instant::now();
    let suite = verify::random_suite(20, 0xacce97ed ^ 2024);
    assert!(suite.len() >= 20);
    let mut report = VerifyReport::default();
    verify::check_eigen(&mut report, &suite, 2024, true);
    assert_report_clean(4, &report);
    finish(4, "20 random arrangements", started, Duration::from_secs(30));
}

/// Criterion 5: stationary oracle chain. The nullspace route, the
/// subset-DP without-replacement oracle (N <= 16), and the permutation
/// sum (N <= 8) agree exactly on every suite arrangement that admits
/// them.
#[test]
fn criterion_5_oracle_agreement() {
    let started = Instant::now();
    let mut dp_checked = 0usize;
    let mut perm_checked = 0usize;
    for (i, (name, complex)) in standard_suite().iter().enumerate() {
        if complex.n_faces() > 16 {
            continue;
        }
        let w = suite_weights(complex, 2024 ^ (i as u64));
        let exact = stationary_exact(complex, &w).expect("stationary");
        let dp = stationary_dp_oracle(complex, &w).expect("dp");
        assert_eq!(exact.coeffs, dp.coeffs, "{name}: nullspace vs DP");
        dp_checked += 1;

        let literal = q_dp_literal(complex, &w).expect("literal dp");
        let lambda = w.total();
        let q = q_vector(complex, &w).expect("q");
        let expect: Vec<Rational> = literal.iter().map(|x| x * &lambda).collect();
        assert_eq!(q.coeffs, expect, "{name}: q vs lambda * literal");

        if complex.n_faces() <= PERMUTATION_FACE_LIMIT {
            let brute = q_permutation_oracle(complex, &w).expect("permutations");
            assert_eq!(brute, literal, "{name}: permutation sum vs DP");
            perm_checked += 1;
        }
    }
    assert!(dp_checked >= 4, "suite must exercise the DP oracle");
    assert!(perm_checked >= 1, "suite must exercise the permutation oracle");
    finish(
        5,
        "nullspace = DP = permutation sum on the admitting suite",
        started,
        Duration::from_secs(20),
    );
}

/// Criterion 6: filtration_rank(A, p) equals b_0 + ... + b_p for every
/// suite arrangement and every p.
#[test]
fn criterion_6_filtration_ranks() {
    let started = Instant::now();
    let mut report = VerifyReport::default();
    verify::check_filtration(&mut report, &standard_suite());
    assert_report_clean(6, &report);
    finish(6, "all suite arrangements, all p", started, Duration::from_secs(10));
}

/// Criterion 7: orthogonality of flag cochains against the degree
/// filtration, fibre consistency of phi, the face action on cochains,
/// and the module-homomorphism law, exhaustively for n <= 5.
#[test]
fn criterion_7_cochain_properties() {
    let started = Instant::now();
    let mut report = VerifyReport::default();
    verify::check_vg_properties(&mut report, &standard_suite());
    assert_report_clean(7, &report);
    finish(7, "exhaustive on the n <= 5 suite", started, Duration::from_secs(30));
}

/// Criterion 8: semigroup laws (idempotence, deletion, associativity,
/// closure), exhaustively for n <= 5.
#[test]
fn criterion_8_semigroup_laws() {
    let started = Instant::now();
    let mut report = VerifyReport::default();
    verify::check_semigroup(&mut report, &standard_suite());
    assert_report_clean(8, &report);
    finish(8, "exhaustive triples on the n <= 5 suite", started, Duration::from_secs(5));
}

/// Criterion 9 (statistical, soft): a seed-fixed 10^6-step chain on the
/// symmetric three-line walk lands within 0.01 total variation of the
/// exact stationary distribution, and one-step frequencies pass a
/// chi-square smoke test against the transition column.
#[test]
fn criterion_9_simulation_sanity() {
    let started = Instant::now();
    let complex = FaceComplex::build(generators::three_lines());
    let w = WeightAssignment::uniform(&complex);
    let emp = sim::run(&complex, &w, 1_000_000, 100, 20_240_817).expect("run");
    let exact = stationary_exact(&complex, &w).expect("stationary");
    let tv = sim::tv_distance(&emp, &exact).expect("tv");
    assert!(
        tv < Rational::new(1.into(), 100.into()),
        "TV = {tv} for the seed-fixed chain"
    );

    let from = complex.chambers()[0];
    let k = transition_matrix(&complex, &w);
    let lambda = w.total();
    let expected: Vec<Rational> = (0..complex.n_chambers())
        .map(|i| &k[(i, 0)] / &lambda)
        .collect();
    assert!(!expected.iter().all(Rational::is_zero));
    let mut passed = false;
    for seed in [11u64, 12u64] {
        let one = sim::one_step_frequencies(&complex, &w, from, 100_000, seed).expect("freqs");
        let (stat, df) = sim::chi_square(&one, &expected).expect("chi2");
        if sim::chi_square_p_value(stat, df) > 0.001 {
            passed = true;
            break;
        }
    }
    assert!(passed, "chi-square smoke test failed twice");
    finish(9, "TV < 0.01 and chi-square smoke", started, Duration::from_secs(10));
}
