//! Reference fixture for the three-line arrangement {x, y, x - y}.
//!
//! The classical worked example for this walk lists its eigenvectors in a
//! counterclockwise chamber order with relabelled face weights and a fixed
//! orientation of the flats. This module commits that data so golden tests
//! and the verifier compare against one unambiguous source:
//!
//! - chamber order counterclockwise from `+++`;
//! - weight labels `w_0..w_6`: the origin, then the six rays
//!   counterclockwise from `++0`;
//! - orientation: each line H_i gets its own normal f_i as basis, the
//!   origin gets the basis (f_2, f_1), which reproduces the reference sign
//!   `epsilon = -1` on the flag `(++-) > (0+-) > (000)`.

use crate::algebra::ChamberVector;
use crate::cochains::OrientationData;
use crate::complex::{FaceComplex, FaceId};
use crate::lattice::FlatId;
use crate::rational::{rat_int, Rational};
use crate::sign::signs_from_str;
use num_traits::Zero;

/// Counterclockwise chamber order used by the reference table.
pub const REFERENCE_CHAMBER_ORDER: [&str; 6] = ["+++", "++-", "-+-", "---", "--+", "+-+"];

/// Face labels w_0..w_6: origin first, then rays counterclockwise.
pub const WEIGHT_LABELS: [&str; 7] = ["000", "++0", "0+-", "-0-", "--0", "0-+", "+0+"];

pub fn face_of(complex: &FaceComplex, s: &str) -> FaceId {
    complex
        .face_id(&signs_from_str(s).expect("valid sign string"))
        .unwrap_or_else(|| panic!("face {s} not in complex"))
}

/// The committed fixture orientation for the three-line arrangement.
pub fn fixture_orientation(complex: &FaceComplex) -> OrientationData {
    let f = |i: usize| complex.arrangement().normal(i).to_vec();
    let lattice = complex.lattice();
    let mut orient = OrientationData::deterministic(complex);
    for (h, flat) in (0..3).map(|h| (h, lattice.find(&[h]).expect("line flat"))) {
        orient = orient
            .with_basis(complex, flat, vec![f(h)])
            .expect("normals span their own lines");
    }
    let origin = lattice.find(&[0, 1, 2]).expect("origin flat");
    orient
        .with_basis(complex, origin, vec![f(1), f(0)])
        .expect("f2, f1 span the plane")
}

/// Integer combination of chambers given as sign strings, as a vector over
/// the chambers of the whole arrangement.
pub fn combination(complex: &FaceComplex, terms: &[(i64, &str)]) -> ChamberVector {
    let mut v = ChamberVector::zero(complex, complex.lattice().bottom());
    for &(coeff, s) in terms {
        let pos = complex
            .chamber_position(face_of(complex, s))
            .expect("chamber sign string");
        v.coeffs[pos] += rat_int(coeff);
    }
    v
}

/// Permutation taking canonical chamber positions to the reference
/// counterclockwise order: `perm[i]` is the canonical position of the i-th
/// reference chamber.
pub fn reference_order_permutation(complex: &FaceComplex) -> Vec<usize> {
    REFERENCE_CHAMBER_ORDER
        .iter()
        .map(|s| {
            complex
                .chamber_position(face_of(complex, s))
                .expect("chamber")
        })
        .collect()
}

/// Weight value attached to a label index 0..=6 under a weight assignment
/// given in canonical face order.
fn labelled_weight(complex: &FaceComplex, weights: &[Rational], label: usize) -> Rational {
    weights[face_of(complex, WEIGHT_LABELS[label])].clone()
}

/// One row of the reference eigenvector table: the expected vector in the
/// counterclockwise chamber order, as a function of the weights, plus its
/// eigenvalue. Rows are keyed by the flat flag that produces them.
pub struct GoldenRow {
    pub flats: Vec<FlatId>,
    pub vector_reference_order: Vec<Rational>,
    pub lambda: Rational,
}

/// The five non-stationary rows of the reference table (the stationary row
/// is checked separately against the exact stationary vector).
pub fn golden_rows(complex: &FaceComplex, weights: &[Rational]) -> Vec<GoldenRow> {
    let lat = complex.lattice();
    let w = |i: usize| labelled_weight(complex, weights, i);
    let bottom = lat.bottom();
    let h1 = lat.find(&[0]).expect("H1");
    let h2 = lat.find(&[1]).expect("H2");
    let h3 = lat.find(&[2]).expect("H3");
    let origin = lat.find(&[0, 1, 2]).expect("origin");
    let z = Rational::zero;
    let rows = vec![
        GoldenRow {
            flats: vec![bottom, h1],
            vector_reference_order: vec![z(), w(2), -w(2), z(), -w(5), w(5)],
            lambda: w(0) + w(2) + w(5),
        },
        GoldenRow {
            flats: vec![bottom, h2],
            vector_reference_order: vec![w(6), z(), w(3), -w(3), z(), -w(6)],
            lambda: w(0) + w(3) + w(6),
        },
        GoldenRow {
            flats: vec![bottom, h3],
            vector_reference_order: vec![-w(1), w(1), z(), w(4), -w(4), z()],
            lambda: w(0) + w(1) + w(4),
        },
        GoldenRow {
            flats: vec![bottom, h1, origin],
            vector_reference_order: [0, -1, 1, 0, -1, 1].iter().map(|&x| rat_int(x)).collect(),
            lambda: w(0),
        },
        GoldenRow {
            flats: vec![bottom, h2, origin],
            vector_reference_order: [1, 0, -1, 1, 0, -1].iter().map(|&x| rat_int(x)).collect(),
            lambda: w(0),
        },
    ];
    rows
}

/// The exact stationary direction of the one-point arrangement with weights
/// (w_plus, w_zero, w_minus), in the `(+, -)` chamber order and with the
/// reference normalization:
/// `(w_+ + w_0 + w_-) / (w_0 w_+ w_- (w_+ + w_-)) * (w_+, w_-)`.
pub fn one_point_q(w_plus: &Rational, w_zero: &Rational, w_minus: &Rational) -> Vec<Rational> {
    let total = w_plus + w_zero + w_minus;
    let denom = w_zero * w_plus * w_minus * (w_plus + w_minus);
    let scale = total / denom;
    vec![&scale * w_plus, &scale * w_minus]
}

/// Are two vectors proportional by a nonzero rational scalar?
pub fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return b.iter().all(Rational::is_zero);
    };
    if b[i].is_zero() {
        return false;
    }
    let scale = &b[i] / &a[i];
    a.iter().zip(b).all(|(x, y)| &(x * &scale) == y)
}
