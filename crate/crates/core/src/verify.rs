//! Named invariant suites over a standard battery of arrangements.
//!
//! Every check returns a pass/fail record with a detail string; the CLI
//! `verify` subcommand runs them all and exits nonzero on any failure. The
//! acceptance tests drive the same functions with their own parameters.

use crate::algebra::{act, verify_semigroup_laws, ChamberVector};
use crate::cochains::{
    enumerate_face_flags, enumerate_flat_flags, fibre_flags, filtration_rank, flag_cochain,
    flag_epsilon, flag_product, monomial_pairing, monomials_up_to, phi, FaceFlag, FlatFlag,
    OrientationData,
};
use crate::complex::FaceComplex;
use crate::error::Result;
use crate::generators;
use crate::golden;
use crate::matrix::{RatMatrix, RowSpace};
use crate::rational::{rat, rat_int, random_positive_rational, Rational};
use crate::sign::Sign;
use crate::sim;
use crate::simplex::strict_sign_feasible;
use crate::spectra::{
    self, full_spectrum, lambda_of, q_dp_literal, q_permutation_oracle, q_vector,
    stationary_dp_oracle, stationary_exact, transition_matrix, WeightAssignment,
    DP_FACE_LIMIT, PERMUTATION_FACE_LIMIT,
};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

#[derive(Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn push(&mut self, name: &str, started: Instant, outcome: std::result::Result<String, String>) {
        let millis = started.elapsed().as_millis();
        match outcome {
            Ok(detail) => self.checks.push(Check {
                name: name.into(),
                passed: true,
                detail,
                millis,
            }),
            Err(detail) => self.checks.push(Check {
                name: name.into(),
                passed: false,
                detail,
                millis,
            }),
        }
    }

    pub fn run(&mut self, name: &str, f: impl FnOnce() -> std::result::Result<String, String>) {
        let started = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f))
            .unwrap_or_else(|p| Err(format!("panicked: {}", panic_message(&p))));
        self.push(name, started, outcome);
    }
}

fn panic_message(p: &Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "non-string panic payload".into()
    }
}

fn err<T: std::fmt::Display>(e: T) -> String {
    e.to_string()
}

/// The standard small battery: named classical arrangements plus a few
/// seeded random ones with n <= 5.
pub fn standard_suite() -> Vec<(String, FaceComplex)> {
    let mut out: Vec<(String, FaceComplex)> = vec![
        ("point-on-line".into(), FaceComplex::build(generators::point_on_line())),
        ("boolean-2".into(), FaceComplex::build(generators::boolean(2).unwrap())),
        ("three-lines".into(), FaceComplex::build(generators::three_lines())),
        ("boolean-3".into(), FaceComplex::build(generators::boolean(3).unwrap())),
        ("braid-3".into(), FaceComplex::build(generators::braid(3).unwrap())),
    ];
    for (dim, n, seed) in [(2, 4, 101), (2, 5, 102), (3, 4, 103), (3, 5, 104)] {
        let a = generators::random(dim, n, seed).expect("desk scale");
        out.push((format!("random-{dim}d-{n}h-{seed}"), FaceComplex::build(a)));
    }
    out
}

/// Seeded random battery for the multiplicity/characteristic-polynomial
/// sweep: `count` essential arrangements with dim <= 3, n <= 6, mixed
/// sizes.
pub fn random_suite(count: usize, seed: u64) -> Vec<(String, FaceComplex)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let dim = rng.gen_range(2..=3usize);
        let n = rng.gen_range(dim..=6usize);
        let sub = rng.gen::<u64>();
        if let Ok(a) = generators::random(dim, n, sub) {
            out.push((format!("random-{dim}d-{n}h-{sub:08x}"), FaceComplex::build(a)));
        }
    }
    out
}

/// Random positive weights with small denominators; keeps exact
/// determinants fast on the bigger random arrangements.
pub fn suite_weights(complex: &FaceComplex, seed: u64) -> WeightAssignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = (0..complex.n_faces())
        .map(|_| random_positive_rational(&mut rng, 999, 16))
        .collect();
    WeightAssignment::new(weights).expect("positive by construction")
}

// ---------------------------------------------------------------------
// exact linear algebra
// ---------------------------------------------------------------------

pub fn check_linalg(report: &mut VerifyReport, seed: u64) {
    report.run("linalg: rank-nullity and exact nullspace on random matrices", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for trial in 0..40 {
            let rows = rng.gen_range(1..=6);
            let cols = rng.gen_range(1..=6);
            let mut m = RatMatrix::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    // Skewed toward singular structure: small range, zeros.
                    let num = rng.gen_range(-3i64..=3);
                    let den = rng.gen_range(1i64..=4);
                    m[(i, j)] = rat(num, den);
                }
            }
            let ns = m.nullspace();
            if m.rank() + ns.len() != cols {
                return Err(format!("trial {trial}: rank+nullity != cols"));
            }
            for v in &ns {
                if !m.mul_vec(v).iter().all(Rational::is_zero) {
                    return Err(format!("trial {trial}: nullspace vector not exact"));
                }
            }
        }
        Ok("40 random matrices".into())
    });

    report.run("linalg: LP feasibility vs point sampling and Zaslavsky count", || {
        for (dim, n, sub) in [(2usize, 3usize, 7u64), (2, 4, 8), (3, 4, 9)] {
            let arr = generators::random(dim, n, sub).map_err(err)?;
            let complex = FaceComplex::build(arr.clone());
            // Sampling can only confirm: every sampled sign vector must be
            // in the enumerated (LP-certified) face list.
            let mut rng = ChaCha8Rng::seed_from_u64(sub ^ 0xabcd);
            for _ in 0..400 {
                let p: Vec<Rational> =
                    (0..dim).map(|_| rat(rng.gen_range(-50i64..=50), 1)).collect();
                let signs = arr.signs_at(&p);
                if complex.face_id(&signs).is_none() {
                    return Err(format!(
                        "sampled sign vector {signs:?} not LP-feasible ({dim}d {n}h)"
                    ));
                }
            }
            // Refutation side: the LP-certified chamber count matches the
            // Möbius count, so no infeasible vector was admitted.
            if complex.n_chambers() as i64 != complex.lattice().zaslavsky_count() {
                return Err(format!("chamber count mismatch on {dim}d {n}h"));
            }
        }
        Ok("3 arrangements, 400 samples each".into())
    });
}

// ---------------------------------------------------------------------
// arrangement combinatorics
// ---------------------------------------------------------------------

pub fn check_combinatorics(report: &mut VerifyReport, suite: &[(String, FaceComplex)]) {
    report.run("arrangement: Zaslavsky count and Betti sum", || {
        for (name, c) in suite {
            let z = c.lattice().zaslavsky_count();
            let b: i64 = c.lattice().betti().iter().sum();
            if c.n_chambers() as i64 != z || z != b {
                return Err(format!("{name}: |C| = {}, Zaslavsky = {z}, sum b = {b}", c.n_chambers()));
            }
        }
        Ok(format!("{} arrangements", suite.len()))
    });

    report.run("arrangement: face count decomposition over flats", || {
        for (name, c) in suite {
            for p in 0..=c.arrangement().dim() {
                let direct = c.faces_of_codim(p).count();
                let by_flat: usize = c
                    .lattice()
                    .flats_of_codim(p)
                    .map(|f| c.chambers_of_flat(f.id).len())
                    .sum();
                if direct != by_flat {
                    return Err(format!("{name}: codim {p}: {direct} != {by_flat}"));
                }
            }
        }
        Ok(format!("{} arrangements", suite.len()))
    });

    report.run("arrangement: opposite is an involution preserving flats", || {
        for (name, c) in suite {
            for f in 0..c.n_faces() {
                let o = c.opposite(f);
                if c.opposite(o) != f || c.face(o).flat != c.face(f).flat {
                    return Err(format!("{name}: face {f}"));
                }
                if c.face(f).is_chamber() != c.face(o).is_chamber() {
                    return Err(format!("{name}: chamber status changed under opposite"));
                }
            }
        }
        Ok(format!("{} arrangements", suite.len()))
    });

    report.run("arrangement: Mobius signs alternate on every flat", || {
        for (name, c) in suite {
            for flat in c.lattice().flats() {
                let signed = if flat.codim % 2 == 0 { flat.mobius } else { -flat.mobius };
                if signed <= 0 {
                    return Err(format!("{name}: flat {:?}", flat.contains));
                }
            }
        }
        Ok(format!("{} arrangements", suite.len()))
    });

    report.run("arrangement: enumeration matches exhaustive 3^n scan (n <= 5)", || {
        let mut scanned = 0;
        for (name, c) in suite {
            let arr = c.arrangement();
            let n = arr.n_hyperplanes();
            if n > 5 {
                continue;
            }
            scanned += 1;
            let mut count = 0usize;
            for code in 0..3usize.pow(n as u32) {
                let mut v = code;
                let mut signs = Vec::with_capacity(n);
                for _ in 0..n {
                    signs.push(match v % 3 {
                        0 => Sign::Plus,
                        1 => Sign::Zero,
                        _ => Sign::Minus,
                    });
                    v /= 3;
                }
                let eqs: Vec<Vec<Rational>> = signs
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s.is_zero())
                    .map(|(i, _)| arr.normal(i).to_vec())
                    .collect();
                let strict: Vec<(Vec<Rational>, Sign)> = signs
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero())
                    .map(|(i, s)| (arr.normal(i).to_vec(), *s))
                    .collect();
                let feasible = strict_sign_feasible(arr.dim(), &eqs, &strict);
                if feasible != c.face_id(&signs).is_some() {
                    return Err(format!("{name}: disagreement at {signs:?}"));
                }
                if feasible {
                    count += 1;
                }
            }
            if count != c.n_faces() {
                return Err(format!("{name}: {count} vs {}", c.n_faces()));
            }
        }
        Ok(format!("{scanned} arrangements scanned"))
    });
}

// ---------------------------------------------------------------------
// face semigroup
// ---------------------------------------------------------------------

pub fn check_semigroup(report: &mut VerifyReport, suite: &[(String, FaceComplex)]) {
    report.run("semigroup: idempotence, deletion, associativity, closure", || {
        let mut total_triples = 0usize;
        for (name, c) in suite {
            if c.arrangement().n_hyperplanes() > 5 {
                continue;
            }
            let r = verify_semigroup_laws(c);
            if let Some(bad) = r.counterexample {
                return Err(format!("{name}: {bad}"));
            }
            total_triples += r.triples_checked;
        }
        Ok(format!("{total_triples} triples"))
    });
}

// ---------------------------------------------------------------------
// Varchenko-Gel'fand structure
// ---------------------------------------------------------------------

pub fn check_filtration(report: &mut VerifyReport, suite: &[(String, FaceComplex)]) {
    report.run("filtration: monomial evaluation rank equals partial Betti sums", || {
        for (name, c) in suite {
            let betti = c.lattice().betti();
            for p in 0..=c.arrangement().dim() {
                let want: i64 = betti.iter().take(p + 1).sum();
                let got = filtration_rank(c, p);
                if got as i64 != want {
                    return Err(format!("{name}: p = {p}: rank {got} != {want}"));
                }
            }
        }
        Ok(format!("{} arrangements", suite.len()))
    });
}

pub fn check_vg_properties(report: &mut VerifyReport, suite: &[(String, FaceComplex)]) {
    let small: Vec<&(String, FaceComplex)> = suite
        .iter()
        .filter(|(_, c)| c.arrangement().n_hyperplanes() <= 5)
        .collect();

    report.run("cochains: p-flag cochains annihilate monomials of degree < p", || {
        let mut flags_checked = 0usize;
        for (name, c) in &small {
            let n = c.arrangement().n_hyperplanes();
            for p in 1..=c.arrangement().dim() {
                let monos = monomials_up_to(n, p - 1);
                for flag in enumerate_face_flags(c, p) {
                    let b = flag_cochain(c, &flag);
                    flags_checked += 1;
                    for m in &monos {
                        if !monomial_pairing(c, m, &b).is_zero() {
                            return Err(format!("{name}: flag {:?} vs {:?}", flag.faces, m));
                        }
                    }
                }
            }
        }
        Ok(format!("{flags_checked} flags"))
    });

    report.run("cochains: phi independent of fibre representative", || {
        let mut fibres = 0usize;
        for (name, c) in &small {
            let orient = OrientationData::deterministic(c);
            for p in 0..=c.arrangement().dim() {
                for xflag in enumerate_flat_flags(c, p, None).map_err(err)? {
                    for &ch in c.chambers_of_flat(xflag.top()) {
                        let reps = fibre_flags(c, &xflag, ch);
                        if reps.len() != 1usize << p {
                            return Err(format!("{name}: fibre size {}", reps.len()));
                        }
                        let vals: Vec<ChamberVector> = reps
                            .iter()
                            .map(|f| {
                                Ok(flag_cochain(c, f).scaled(&rat_int(
                                    flag_epsilon(c, &orient, f).map_err(err)?.into(),
                                )))
                            })
                            .collect::<std::result::Result<_, String>>()?;
                        fibres += 1;
                        if vals[1..].iter().any(|v| v != &vals[0]) {
                            return Err(format!("{name}: fibre of {:?} at {ch}", xflag.flats));
                        }
                    }
                }
            }
        }
        Ok(format!("{fibres} fibres"))
    });

    report.run("cochains: face action on cochains (F b(FF) = b(F FF) or 0)", || {
        let mut checked = 0usize;
        for (name, c) in &small {
            for p in 0..=c.arrangement().dim() {
                for flag in enumerate_face_flags(c, p) {
                    let b = flag_cochain(c, &flag);
                    let top_flat = c.face(flag.top()).flat;
                    for f in 0..c.n_faces() {
                        let lhs = act(c, f, &b);
                        let rhs = if c.face_above_flat(f, top_flat) {
                            flag_cochain(c, &flag_product(c, f, &flag))
                        } else {
                            ChamberVector::zero(c, c.lattice().bottom())
                        };
                        checked += 1;
                        if lhs != rhs {
                            return Err(format!(
                                "{name}: face {} on flag {:?}",
                                c.face(f).sign_string(),
                                flag.faces
                            ));
                        }
                    }
                }
            }
        }
        Ok(format!("{checked} pairs"))
    });

    report.run("cochains: phi is a module homomorphism", || {
        let mut checked = 0usize;
        for (name, c) in &small {
            let orient = OrientationData::deterministic(c);
            for p in 0..=c.arrangement().dim() {
                for xflag in enumerate_flat_flags(c, p, None).map_err(err)? {
                    let x = xflag.top();
                    for &ch in c.chambers_of_flat(x) {
                        let image = phi(c, &orient, &xflag, ch).map_err(err)?;
                        for g in 0..c.n_faces() {
                            let lhs = act(c, g, &image);
                            let rhs = if c.face_above_flat(g, x) {
                                phi(c, &orient, &xflag, c.product(g, ch)).map_err(err)?
                            } else {
                                ChamberVector::zero(c, c.lattice().bottom())
                            };
                            checked += 1;
                            if lhs != rhs {
                                return Err(format!(
                                    "{name}: G = {} on {:?} ⊗ {}",
                                    c.face(g).sign_string(),
                                    xflag.flats,
                                    c.face(ch).sign_string()
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(format!("{checked} triples"))
    });

    report.run("cochains: gap relations land in the next filtration step", || {
        let mut relations = 0usize;
        for (name, c) in &small {
            let orient = OrientationData::deterministic(c);
            let n = c.arrangement().n_hyperplanes();
            for p in 2..=c.arrangement().dim() {
                let monos = monomials_up_to(n, p);
                for xflag in enumerate_flat_flags(c, p, None).map_err(err)? {
                    for gap in 1..p {
                        let lattice = c.lattice();
                        let below = xflag.flats[gap - 1];
                        let above = xflag.flats[gap + 1];
                        let middles: Vec<usize> = lattice
                            .flats_of_codim(gap)
                            .filter(|f| lattice.leq(below, f.id) && lattice.leq(f.id, above))
                            .map(|f| f.id)
                            .collect();
                        for &ch in c.chambers_of_flat(xflag.top()) {
                            let mut sum = ChamberVector::zero(c, lattice.bottom());
                            for &y in &middles {
                                let mut variant = xflag.clone();
                                variant.flats[gap] = y;
                                let v = phi(c, &orient, &variant, ch).map_err(err)?;
                                sum.add_scaled(&v, &Rational::one());
                            }
                            relations += 1;
                            for m in &monos {
                                if !monomial_pairing(c, m, &sum).is_zero() {
                                    return Err(format!(
                                        "{name}: relation at {:?} gap {gap} not in W^{}",
                                        xflag.flats,
                                        p + 1
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(format!("{relations} relations"))
    });
}

// ---------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------

pub fn check_eigen(
    report: &mut VerifyReport,
    suite: &[(String, FaceComplex)],
    seed: u64,
    char_poly: bool,
) {
    report.run(
        "spectra: multiplicities equal |mu|, total |C|, basis independent",
        || {
            for (i, (name, c)) in suite.iter().enumerate() {
                let w = suite_weights(c, seed ^ (i as u64));
                let orient = OrientationData::deterministic(c);
                let rep = full_spectrum(c, &w, &orient).map_err(|e| format!("{name}: {e}"))?;
                // Multiplicity per flat and the global count are asserted
                // inside full_spectrum; double-check the bookkeeping here.
                if rep.total_multiplicity() != c.n_chambers() {
                    return Err(format!("{name}: multiplicity sum mismatch"));
                }
                for pkg in &rep.packages {
                    if pkg.basis.len() != c.lattice().multiplicity(pkg.flat) {
                        return Err(format!("{name}: flat {} size", pkg.flat));
                    }
                }
            }
            Ok(format!("{} arrangements", suite.len()))
        },
    );

    if char_poly {
        report.run(
            "spectra: characteristic polynomial factors through the flats",
            || {
                for (i, (name, c)) in suite.iter().enumerate() {
                    let w = suite_weights(c, seed ^ (i as u64));
                    let k = transition_matrix(c, &w);
                    for t in 0..=c.n_chambers() as i64 {
                        let x = rat(3 * t + 1, 2);
                        let (lhs, rhs) =
                            spectra::char_poly_sides_at(c, &w, &k, &x).map_err(err)?;
                        if lhs != rhs {
                            return Err(format!("{name}: mismatch at x = {x}"));
                        }
                    }
                }
                Ok(format!("{} arrangements, |C|+1 points each", suite.len()))
            },
        );
    }

    report.run("spectra: coinciding eigenvalues still span independently", || {
        for (i, (name, c)) in suite.iter().enumerate() {
            let w = suite_weights(c, seed ^ (i as u64) ^ 0x5a5a);
            let orient = OrientationData::deterministic(c);
            let rep = full_spectrum(c, &w, &orient).map_err(|e| format!("{name}: {e}"))?;
            let mut by_lambda: Vec<(Rational, Vec<&ChamberVector>)> = Vec::new();
            for pkg in &rep.packages {
                match by_lambda.iter_mut().find(|(l, _)| l == &pkg.lambda) {
                    Some((_, vs)) => vs.extend(pkg.basis.iter()),
                    None => by_lambda.push((pkg.lambda.clone(), pkg.basis.iter().collect())),
                }
            }
            for (lambda, vs) in by_lambda {
                let mut space = RowSpace::new(c.n_chambers());
                let mut rank = 0usize;
                for v in &vs {
                    if space.insert(&v.coeffs) {
                        rank += 1;
                    }
                }
                if rank != vs.len() {
                    return Err(format!(
                        "{name}: lambda = {lambda}: rank {rank} < {}",
                        vs.len()
                    ));
                }
            }
        }
        Ok(format!("{} arrangements", suite.len()))
    });
}

pub fn check_scale_equivariance(report: &mut VerifyReport, suite: &[(String, FaceComplex)], seed: u64) {
    report.run("spectra: rescaling weights rescales eigenvalues, keeps eigenspaces", || {
        let c_scale = rat(7, 3);
        for (i, (name, c)) in suite.iter().enumerate() {
            if c.n_faces() > 100 {
                continue;
            }
            let w = suite_weights(c, seed ^ (i as u64));
            let w2 = w.scaled(&c_scale);
            let orient = OrientationData::deterministic(c);
            let rep1 = full_spectrum(c, &w, &orient).map_err(err)?;
            let rep2 = full_spectrum(c, &w2, &orient).map_err(err)?;
            for (p1, p2) in rep1.packages.iter().zip(&rep2.packages) {
                if p2.lambda != &p1.lambda * &c_scale {
                    return Err(format!("{name}: lambda not scaled on flat {}", p1.flat));
                }
                // Same span: stacking both bases must not raise the rank.
                let mut space = RowSpace::new(c.n_chambers());
                for v in p1.basis.iter().chain(&p2.basis) {
                    space.insert(&v.coeffs);
                }
                if space.rank() != p1.multiplicity {
                    return Err(format!("{name}: eigenspace moved on flat {}", p1.flat));
                }
            }
        }
        Ok("scale 7/3".into())
    });
}

// ---------------------------------------------------------------------
// stationary oracles
// ---------------------------------------------------------------------

pub fn check_oracles(report: &mut VerifyReport, suite: &[(String, FaceComplex)], seed: u64) {
    report.run("stationary: nullspace equals subset-DP equals permutation sum", || {
        let mut dp_checked = 0usize;
        let mut perm_checked = 0usize;
        for (i, (name, c)) in suite.iter().enumerate() {
            if c.n_faces() > DP_FACE_LIMIT {
                continue;
            }
            let w = suite_weights(c, seed ^ (i as u64));
            let exact = stationary_exact(c, &w).map_err(err)?;
            let dp = stationary_dp_oracle(c, &w).map_err(err)?;
            if exact.coeffs != dp.coeffs {
                return Err(format!("{name}: nullspace vs DP"));
            }
            dp_checked += 1;
            let literal = q_dp_literal(c, &w).map_err(err)?;
            let lambda = w.total();
            let q = q_vector(c, &w).map_err(err)?;
            let expect: Vec<Rational> = literal.iter().map(|x| x * &lambda).collect();
            if q.coeffs != expect {
                return Err(format!("{name}: q_vector vs lambda * literal DP"));
            }
            if c.n_faces() <= PERMUTATION_FACE_LIMIT {
                let brute = q_permutation_oracle(c, &w).map_err(err)?;
                if brute != literal {
                    return Err(format!("{name}: permutation sum vs DP"));
                }
                perm_checked += 1;
            }
        }
        Ok(format!("{dp_checked} DP comparisons, {perm_checked} permutation sums"))
    });

    report.run("stationary: K q = lambda_W q exactly on the whole suite", || {
        for (i, (name, c)) in suite.iter().enumerate() {
            let w = suite_weights(c, seed ^ (i as u64) ^ 0x77);
            let q = q_vector(c, &w).map_err(err)?;
            let k = transition_matrix(c, &w);
            let lambda = w.total();
            let kq = k.mul_vec(&q.coeffs);
            let expect: Vec<Rational> = q.coeffs.iter().map(|x| x * &lambda).collect();
            if kq != expect {
                return Err(format!("{name}: eigen-equation failed"));
            }
        }
        Ok(format!("{} arrangements", suite.len()))
    });

    report.run("stationary: cyclic reinsertion identity at random points", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1d);
        let n = 5usize;
        let f = |xs: &[Rational]| -> Rational {
            let mut suffix = Rational::zero();
            let mut prod = Rational::one();
            for x in xs.iter().rev() {
                suffix += x;
                prod *= suffix.recip();
            }
            prod
        };
        for _ in 0..5 {
            let xs: Vec<Rational> = (0..n)
                .map(|_| random_positive_rational(&mut rng, 1000, 1000))
                .collect();
            let mut lhs = Rational::zero();
            for pos in 0..n {
                // x_1 inserted after the first `pos` of x_2..x_n.
                let mut seq: Vec<Rational> = xs[1..=pos].to_vec();
                seq.push(xs[0].clone());
                seq.extend_from_slice(&xs[pos + 1..]);
                lhs += f(&seq);
            }
            let total = xs.iter().fold(Rational::zero(), |a, b| a + b);
            let rhs = f(&xs) * total / &xs[0];
            if lhs != rhs {
                return Err("identity failed".into());
            }
        }
        Ok("5 random points, N = 5".into())
    });
}

// ---------------------------------------------------------------------
// golden fixtures
// ---------------------------------------------------------------------

pub fn check_goldens(report: &mut VerifyReport, seed: u64) {
    report.run("golden: flag cochain expansion on the three-line arrangement", || {
        let c = FaceComplex::build(generators::three_lines());
        let flag = FaceFlag {
            faces: vec![
                golden::face_of(&c, "++-"),
                golden::face_of(&c, "0+-"),
                c.origin(),
            ],
        };
        let b = flag_cochain(&c, &flag);
        let expect =
            golden::combination(&c, &[(1, "++-"), (-1, "-+-"), (-1, "+-+"), (1, "--+")]);
        if b != expect {
            return Err(format!("b = {}", b.describe(&c)));
        }
        Ok("signed support matches".into())
    });

    report.run("golden: epsilon and phi under the committed orientation", || {
        let c = FaceComplex::build(generators::three_lines());
        let orient = golden::fixture_orientation(&c);
        let flag = FaceFlag {
            faces: vec![
                golden::face_of(&c, "++-"),
                golden::face_of(&c, "0+-"),
                c.origin(),
            ],
        };
        if flag_epsilon(&c, &orient, &flag).map_err(err)? != -1 {
            return Err("epsilon != -1 on the reference flag".into());
        }
        let h1 = c.lattice().find(&[0]).unwrap();
        let xflag = FlatFlag {
            flats: vec![c.lattice().bottom(), h1],
        };
        let plus = phi(&c, &orient, &xflag, golden::face_of(&c, "0+-")).map_err(err)?;
        if plus != golden::combination(&c, &[(1, "++-"), (-1, "-+-")]) {
            return Err(format!("phi(X ⊗ 0+-) = {}", plus.describe(&c)));
        }
        let minus = phi(&c, &orient, &xflag, golden::face_of(&c, "0-+")).map_err(err)?;
        if minus != golden::combination(&c, &[(1, "+-+"), (-1, "--+")]) {
            return Err(format!("phi(X ⊗ 0-+) = {}", minus.describe(&c)));
        }
        Ok("epsilon = -1 and both phi values".into())
    });

    report.run("golden: eigenbasis table at 5 random weight vectors", || {
        let c = FaceComplex::build(generators::three_lines());
        let orient = golden::fixture_orientation(&c);
        let perm = golden::reference_order_permutation(&c);
        for trial in 0..5u64 {
            let w = WeightAssignment::random(&c, seed ^ trial, 1000, 1000);
            let rep = full_spectrum(&c, &w, &orient).map_err(err)?;
            let rows = golden::golden_rows(&c, w.weights());
            for row in &rows {
                let pkg = rep
                    .packages
                    .iter()
                    .find(|p| p.flat == *row.flats.last().unwrap())
                    .expect("flat present");
                if pkg.lambda != row.lambda {
                    return Err(format!("trial {trial}: lambda mismatch on {:?}", row.flats));
                }
                // The kept flag order matches the reference table rows, so
                // the matching basis vector is the one with the same flag.
                let idx = pkg
                    .spanning_flags
                    .iter()
                    .position(|f| f.flats == row.flats)
                    .ok_or_else(|| format!("trial {trial}: flag {:?} not kept", row.flats))?;
                let ours: Vec<Rational> = perm
                    .iter()
                    .map(|&i| pkg.basis[idx].coeffs[i].clone())
                    .collect();
                if !golden::proportional(&ours, &row.vector_reference_order) {
                    return Err(format!(
                        "trial {trial}: direction mismatch on {:?}",
                        row.flats
                    ));
                }
            }
            // Stationary row: the bottom package is the q direction.
            let bottom = &rep.packages[0];
            let q = q_vector(&c, &w).map_err(err)?;
            if !golden::proportional(&bottom.basis[0].coeffs, &q.coeffs) {
                return Err(format!("trial {trial}: stationary direction"));
            }
        }
        Ok("5 weight vectors, 6 rows each".into())
    });

    report.run("golden: one-point stationary closed form at 5 random triples", || {
        let c = FaceComplex::build(generators::point_on_line());
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xf00d);
        for _ in 0..5 {
            let weights: Vec<Rational> = (0..3)
                .map(|_| random_positive_rational(&mut rng, 1000, 1000))
                .collect();
            let w = WeightAssignment::new(weights.clone()).map_err(err)?;
            let q = q_vector(&c, &w).map_err(err)?;
            // Canonical face order is (+, 0, -).
            let expect = golden::one_point_q(&weights[0], &weights[1], &weights[2]);
            if q.coeffs != expect {
                return Err(format!("q = {:?}, expected {:?}", q.coeffs, expect));
            }
        }
        Ok("5 triples".into())
    });

    report.run("golden: braid(3) multiplicities match the three-line Betti numbers", || {
        let braid = FaceComplex::build(generators::braid(3).map_err(err)?);
        let three = FaceComplex::build(generators::three_lines());
        if braid.lattice().betti() != three.lattice().betti() {
            return Err("Betti mismatch".into());
        }
        let w = suite_weights(&braid, seed ^ 0xb3);
        let orient = OrientationData::deterministic(&braid);
        let rep = full_spectrum(&braid, &w, &orient).map_err(err)?;
        let mut mults: Vec<usize> = rep.packages.iter().map(|p| p.multiplicity).collect();
        mults.sort_unstable();
        if mults != vec![1, 1, 1, 1, 2] {
            return Err(format!("multiplicities {mults:?}"));
        }
        Ok("multiplicities (1,1,1,1,2)".into())
    });
}

// ---------------------------------------------------------------------
// simulation
// ---------------------------------------------------------------------

pub fn check_sim(report: &mut VerifyReport, steps: u64) {
    report.run("sim: 10^6-step chain is within 0.01 TV of the exact stationary", || {
        let c = FaceComplex::build(generators::three_lines());
        let w = WeightAssignment::uniform(&c);
        let emp = sim::run(&c, &w, steps, 100, 20_240_817).map_err(err)?;
        let exact = stationary_exact(&c, &w).map_err(err)?;
        let tv = sim::tv_distance(&emp, &exact).map_err(err)?;
        if tv >= rat(1, 100) {
            return Err(format!("TV = {tv}"));
        }
        Ok(format!("TV = {:.5}", crate::rational::to_f64(&tv)))
    });

    report.run("sim: one-step frequencies pass the chi-square smoke test", || {
        let c = FaceComplex::build(generators::three_lines());
        let w = WeightAssignment::uniform(&c);
        let from = c.chambers()[0];
        let k = transition_matrix(&c, &w);
        let lambda = w.total();
        let expected: Vec<Rational> = (0..c.n_chambers())
            .map(|i| &k[(i, 0)] / &lambda)
            .collect();
        // Statistical: retry once on failure before declaring defeat.
        let mut last = (0.0, 0.0);
        for seed in [11u64, 12u64] {
            let emp = sim::one_step_frequencies(&c, &w, from, 100_000, seed).map_err(err)?;
            let (stat, df) = sim::chi_square(&emp, &expected).map_err(err)?;
            let p = sim::chi_square_p_value(stat, df);
            last = (stat, p);
            if p > 0.001 {
                return Ok(format!("chi2 = {stat:.2}, p = {p:.4}"));
            }
        }
        Err(format!("chi2 = {:.2}, p = {:.5} after retry", last.0, last.1))
    });
}

// ---------------------------------------------------------------------
// io round trip
// ---------------------------------------------------------------------

pub fn check_io(report: &mut VerifyReport) {
    report.run("io: arrangement JSON round trip preserves faces, lattice, spectrum", || {
        use crate::io::{ArrangementFile, SpectrumFile};
        let a = generators::three_lines();
        let text = ArrangementFile::from_arrangement(&a).render();
        let b = ArrangementFile::parse(&text)
            .map_err(err)?
            .to_arrangement()
            .map_err(err)?;
        let ca = FaceComplex::build(a);
        let cb = FaceComplex::build(b);
        if ca.faces().len() != cb.faces().len()
            || ca
                .faces()
                .iter()
                .zip(cb.faces())
                .any(|(x, y)| x.signs != y.signs)
        {
            return Err("face lists differ".into());
        }
        if ca.lattice().betti() != cb.lattice().betti() {
            return Err("lattices differ".into());
        }
        let w = suite_weights(&ca, 5);
        let o1 = OrientationData::deterministic(&ca);
        let o2 = OrientationData::deterministic(&cb);
        let s1 = SpectrumFile::from_report(&ca, &full_spectrum(&ca, &w, &o1).map_err(err)?);
        let s2 = SpectrumFile::from_report(&cb, &full_spectrum(&cb, &w, &o2).map_err(err)?);
        if s1.render() != s2.render() {
            return Err("spectra differ".into());
        }
        Ok("identical".into())
    });
}

// ---------------------------------------------------------------------
// entry point
// ---------------------------------------------------------------------

/// Run every suite. `thorough` additionally runs the 20-arrangement random
/// eigen sweep (the acceptance battery).
pub fn run_all(seed: u64, thorough: bool) -> VerifyReport {
    let mut report = VerifyReport::default();
    let suite = standard_suite();
    check_linalg(&mut report, seed);
    check_combinatorics(&mut report, &suite);
    check_semigroup(&mut report, &suite);
    check_filtration(&mut report, &suite);
    check_vg_properties(&mut report, &suite);
    check_eigen(&mut report, &suite, seed, true);
    check_scale_equivariance(&mut report, &suite, seed);
    check_oracles(&mut report, &suite, seed);
    check_goldens(&mut report, seed);
    if thorough {
        let random = random_suite(20, seed ^ 0xacce97ed);
        check_eigen(&mut report, &random, seed, true);
    }
    check_sim(&mut report, 1_000_000);
    check_io(&mut report);
    report
}

/// Shorthand used by a few CLI paths: lambda of every flat, for display.
pub fn all_lambdas(complex: &FaceComplex, w: &WeightAssignment) -> Result<Vec<(usize, Rational)>> {
    (0..complex.lattice().n_flats())
        .map(|x| Ok((x, lambda_of(complex, w, x)?)))
        .collect()
}
