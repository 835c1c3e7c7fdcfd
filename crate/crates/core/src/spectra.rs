//! The chamber walk's transition matrix, eigenvalues, stationary vector,
//! and the full eigenbasis built from flag cochains.
//!
//! For a face-weight assignment w, the walk moves a chamber C to FC with
//! probability proportional to w_F. Its transition matrix K has one
//! eigenvalue per flat X,
//!
//! ```text
//! lambda_X = sum of w_F over faces F with |F| >= X,
//! ```
//!
//! with multiplicity |mu(W, X)|. The lambda_X-eigenspace is spanned by the
//! vectors
//!
//! ```text
//! psi_X(Xflag) = sum over chambers C of A^X of q^X_C * phi(Xflag ⊗ C)
//! ```
//!
//! where q^X is the stationary vector of the restricted walk on A^X. All
//! eigen-equations are asserted with exact rational equality; there are no
//! tolerances in this module.

use crate::algebra::ChamberVector;
use crate::cochains::{enumerate_flat_flags, phi, FlatFlag, OrientationData};
use crate::complex::{FaceComplex, FaceId};
use crate::error::{Error, Result};
use crate::lattice::FlatId;
use crate::matrix::{RatMatrix, RowSpace};
use crate::rational::{random_positive_rational, Rational};
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::HashMap;

/// Subset-DP oracles walk over all face subsets; beyond this the state
/// space is out of desk scale.
pub const DP_FACE_LIMIT: usize = 20;

/// Brute-force permutation oracle limit (N! orderings).
pub const PERMUTATION_FACE_LIMIT: usize = 8;

/// One exact rational weight per face, in canonical face order. Walk
/// semantics require strictly positive weights; `new_permissive` admits
/// zeros for exploratory use, at the cost of uniqueness guarantees
/// downstream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightAssignment {
    weights: Vec<Rational>,
}

impl WeightAssignment {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if let Some(i) = weights.iter().position(|w| !w.is_positive()) {
            return Err(Error::InvalidWeights(format!(
                "weight {i} is not strictly positive"
            )));
        }
        Ok(WeightAssignment { weights })
    }

    /// Accept zero weights; negative weights are still rejected.
    pub fn new_permissive(weights: Vec<Rational>) -> Result<Self> {
        if let Some(i) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::InvalidWeights(format!("weight {i} is negative")));
        }
        Ok(WeightAssignment { weights })
    }

    /// The uniform probability distribution on faces.
    pub fn uniform(complex: &FaceComplex) -> Self {
        let n = complex.n_faces();
        WeightAssignment {
            weights: vec![Rational::new(1.into(), (n as i64).into()); n],
        }
    }

    /// Seeded random positive rationals with numerators and denominators
    /// in [1, max].
    pub fn random(complex: &FaceComplex, seed: u64, max_num: u64, max_den: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        WeightAssignment {
            weights: (0..complex.n_faces())
                .map(|_| random_positive_rational(&mut rng, max_num, max_den))
                .collect(),
        }
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, f: FaceId) -> &Rational {
        &self.weights[f]
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().fold(Rational::zero(), |a, b| a + b)
    }

    pub fn is_probability(&self) -> bool {
        self.total().is_one()
    }

    /// Rescale so the weights sum to one.
    pub fn normalized(&self) -> Self {
        let t = self.total();
        WeightAssignment {
            weights: self.weights.iter().map(|w| w / &t).collect(),
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        WeightAssignment {
            weights: self.weights.iter().map(|w| w * c).collect(),
        }
    }
}

/// lambda_X: total weight of the faces of the restriction A^X.
pub fn lambda_of(complex: &FaceComplex, w: &WeightAssignment, x: FlatId) -> Result<Rational> {
    Ok(complex
        .restriction_faces(x)?
        .iter()
        .fold(Rational::zero(), |acc, &f| acc + w.weight(f)))
}

/// Transition matrix on the chambers of the whole arrangement:
/// `K[C', C] = sum of w_F over faces with FC = C'`. Every column sums to
/// lambda_W.
pub fn transition_matrix(complex: &FaceComplex, w: &WeightAssignment) -> RatMatrix {
    local_transition_matrix(complex, w, complex.lattice().bottom())
        .expect("bottom flat always exists")
}

/// Transition matrix of the restricted walk on the chambers of A^X, using
/// the faces of A^X with their original weights.
pub fn local_transition_matrix(
    complex: &FaceComplex,
    w: &WeightAssignment,
    x: FlatId,
) -> Result<RatMatrix> {
    let chambers = complex.chambers_of_flat(x);
    let faces = complex.restriction_faces(x)?;
    let mut k = RatMatrix::zeros(chambers.len(), chambers.len());
    for (col, &c) in chambers.iter().enumerate() {
        for &f in faces {
            let fc = complex.product(f, c);
            let row = complex
                .flat_chamber_position(x, fc)
                .expect("restricted product stays in the restriction");
            k[(row, col)] += w.weight(f);
        }
    }
    Ok(k)
}

/// Exact stationary vector of the restricted walk on A^X: the
/// 1-dimensional nullspace of `K_X - lambda_X I`, normalized to
/// coordinate sum 1.
pub fn stationary_for_flat(
    complex: &FaceComplex,
    w: &WeightAssignment,
    x: FlatId,
) -> Result<ChamberVector> {
    let k = local_transition_matrix(complex, w, x)?;
    let lambda = lambda_of(complex, w, x)?;
    let ns = k.minus_scaled_identity(&lambda).nullspace();
    if ns.len() != 1 {
        return Err(Error::DegenerateWeights(format!(
            "nullity of (K - lambda I) on flat {x} is {}, expected 1",
            ns.len()
        )));
    }
    let v = ns.into_iter().next().unwrap();
    let sum = v.iter().fold(Rational::zero(), |a, b| a + b);
    if sum.is_zero() {
        return Err(Error::DegenerateWeights(
            "stationary direction has zero coordinate sum".into(),
        ));
    }
    Ok(ChamberVector::from_coeffs(
        x,
        v.into_iter().map(|c| c / &sum).collect(),
    ))
}

/// Stationary distribution of the walk on the whole arrangement.
pub fn stationary_exact(complex: &FaceComplex, w: &WeightAssignment) -> Result<ChamberVector> {
    stationary_for_flat(complex, w, complex.lattice().bottom())
}

/// Exact distribution of the chamber reached by drawing all faces without
/// replacement (probability proportional to remaining weight) and
/// multiplying left to right. Subset DP with memoization; early
/// termination once the running product is a chamber, since chambers
/// absorb.
pub fn stationary_dp_oracle(complex: &FaceComplex, w: &WeightAssignment) -> Result<ChamberVector> {
    let n = complex.n_faces();
    if n > DP_FACE_LIMIT {
        return Err(Error::TooManyFaces(n, DP_FACE_LIMIT));
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut memo: HashMap<(FaceId, u32), Vec<Rational>> = HashMap::new();
    let dist = dp_distribution(complex, w, complex.origin(), full, &mut memo);
    Ok(ChamberVector::from_coeffs(complex.lattice().bottom(), dist))
}

fn dp_distribution(
    complex: &FaceComplex,
    w: &WeightAssignment,
    current: FaceId,
    remaining: u32,
    memo: &mut HashMap<(FaceId, u32), Vec<Rational>>,
) -> Vec<Rational> {
    let n_chambers = complex.n_chambers();
    if let Some(pos) = complex.chamber_position(current) {
        let mut v = vec![Rational::zero(); n_chambers];
        v[pos] = Rational::one();
        return v;
    }
    debug_assert!(remaining != 0, "all faces drawn but product not a chamber");
    if let Some(hit) = memo.get(&(current, remaining)) {
        return hit.clone();
    }
    let mut total = Rational::zero();
    for f in 0..complex.n_faces() {
        if remaining & (1 << f) != 0 {
            total += w.weight(f);
        }
    }
    let mut acc = vec![Rational::zero(); n_chambers];
    for f in 0..complex.n_faces() {
        if remaining & (1 << f) == 0 {
            continue;
        }
        let p = w.weight(f) / &total;
        if p.is_zero() {
            continue;
        }
        let sub = dp_distribution(complex, w, complex.product(current, f), remaining & !(1 << f), memo);
        for (a, s) in acc.iter_mut().zip(&sub) {
            if !s.is_zero() {
                *a += &p * s;
            }
        }
    }
    memo.insert((current, remaining), acc.clone());
    acc
}

/// Literal without-replacement sum with reciprocal suffix-sum factors:
/// for each chamber C, the sum over face orderings whose product is C of
/// `prod over positions p of 1 / (sum of weights from position p on)`.
/// Subset DP; once the product is a chamber the remaining factor depends
/// only on the remaining set.
pub fn q_dp_literal(complex: &FaceComplex, w: &WeightAssignment) -> Result<Vec<Rational>> {
    let n = complex.n_faces();
    if n > DP_FACE_LIMIT {
        return Err(Error::TooManyFaces(n, DP_FACE_LIMIT));
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut memo: HashMap<(FaceId, u32), Vec<Rational>> = HashMap::new();
    let mut tail_memo: HashMap<u32, Rational> = HashMap::new();
    Ok(dp_literal(
        complex,
        w,
        complex.origin(),
        full,
        &mut memo,
        &mut tail_memo,
    ))
}

fn dp_literal(
    complex: &FaceComplex,
    w: &WeightAssignment,
    current: FaceId,
    remaining: u32,
    memo: &mut HashMap<(FaceId, u32), Vec<Rational>>,
    tail_memo: &mut HashMap<u32, Rational>,
) -> Vec<Rational> {
    let n_chambers = complex.n_chambers();
    if let Some(pos) = complex.chamber_position(current) {
        let mut v = vec![Rational::zero(); n_chambers];
        v[pos] = dp_tail(complex, w, remaining, tail_memo);
        return v;
    }
    if let Some(hit) = memo.get(&(current, remaining)) {
        return hit.clone();
    }
    let inv_total = suffix_total(complex, w, remaining).recip();
    let mut acc = vec![Rational::zero(); n_chambers];
    for f in 0..complex.n_faces() {
        if remaining & (1 << f) == 0 {
            continue;
        }
        let sub = dp_literal(
            complex,
            w,
            complex.product(current, f),
            remaining & !(1 << f),
            memo,
            tail_memo,
        );
        for (a, s) in acc.iter_mut().zip(&sub) {
            if !s.is_zero() {
                *a += &inv_total * s;
            }
        }
    }
    memo.insert((current, remaining), acc.clone());
    acc
}

/// Sum over orderings of the remaining set of the reciprocal suffix-sum
/// product; the identity factor once the walk has absorbed.
fn dp_tail(
    complex: &FaceComplex,
    w: &WeightAssignment,
    remaining: u32,
    tail_memo: &mut HashMap<u32, Rational>,
) -> Rational {
    if remaining == 0 {
        return Rational::one();
    }
    if let Some(hit) = tail_memo.get(&remaining) {
        return hit.clone();
    }
    let inv_total = suffix_total(complex, w, remaining).recip();
    let mut acc = Rational::zero();
    for f in 0..complex.n_faces() {
        if remaining & (1 << f) != 0 {
            acc += dp_tail(complex, w, remaining & !(1 << f), tail_memo);
        }
    }
    let out = acc * inv_total;
    tail_memo.insert(remaining, out.clone());
    out
}

fn suffix_total(complex: &FaceComplex, w: &WeightAssignment, remaining: u32) -> Rational {
    (0..complex.n_faces())
        .filter(|&f| remaining & (1 << f) != 0)
        .fold(Rational::zero(), |acc, f| acc + w.weight(f))
}

/// Brute-force permutation-sum oracle over all N! face orderings,
/// returning the literal reciprocal-suffix-sum vector (same normalization
/// as [`q_dp_literal`]).
pub fn q_permutation_oracle(complex: &FaceComplex, w: &WeightAssignment) -> Result<Vec<Rational>> {
    let n = complex.n_faces();
    if n > PERMUTATION_FACE_LIMIT {
        return Err(Error::TooManyFaces(n, PERMUTATION_FACE_LIMIT));
    }
    let mut order: Vec<FaceId> = (0..n).collect();
    let mut out = vec![Rational::zero(); complex.n_chambers()];
    permute(&mut order, 0, &mut |perm| {
        let mut product = complex.origin();
        for &f in perm {
            product = complex.product(product, f);
        }
        let pos = complex
            .chamber_position(product)
            .expect("full products are chambers");
        let mut term = Rational::one();
        let mut suffix = Rational::zero();
        for &f in perm.iter().rev() {
            suffix += w.weight(f);
            term *= suffix.recip();
        }
        out[pos] += term;
    });
    Ok(out)
}

fn permute(items: &mut Vec<FaceId>, k: usize, visit: &mut impl FnMut(&[FaceId])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// The reference-normalized top eigenvector: the stationary distribution
/// rescaled by `lambda_W / prod of all face weights`, which matches the
/// one-point closed form exactly.
pub fn q_vector(complex: &FaceComplex, w: &WeightAssignment) -> Result<ChamberVector> {
    let pi = stationary_exact(complex, w)?;
    let lambda = lambda_of(complex, w, complex.lattice().bottom())?;
    let prod = w
        .weights()
        .iter()
        .fold(Rational::one(), |acc, x| acc * x);
    if prod.is_zero() {
        return Err(Error::DegenerateWeights(
            "q normalization needs strictly positive weights".into(),
        ));
    }
    let scale = lambda / prod;
    Ok(pi.scaled(&scale))
}

/// Eigenvalue, eigenvectors, and bookkeeping for one flat.
#[derive(Clone, Debug)]
pub struct EigenPackage {
    pub flat: FlatId,
    pub lambda: Rational,
    pub multiplicity: usize,
    /// Independent eigenvectors on the chambers of the whole arrangement.
    pub basis: Vec<ChamberVector>,
    /// The flat flags whose psi vectors were kept, parallel to `basis`.
    pub spanning_flags: Vec<FlatFlag>,
}

/// The walk's full diagonalization: one package per flat plus the
/// assembled chamber-by-chamber basis matrix (columns in package order).
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub packages: Vec<EigenPackage>,
    pub basis_matrix: RatMatrix,
}

impl SpectrumReport {
    pub fn total_multiplicity(&self) -> usize {
        self.packages.iter().map(|p| p.basis.len()).sum()
    }
}

/// Compute the lambda_X eigenspace: for every flat flag ending at X, pair
/// the restricted stationary vector with phi and keep a maximal
/// independent subset (greedy, in flag enumeration order). The exact
/// eigen-equation and the multiplicity |mu(W, X)| are asserted.
pub fn eigenvectors_for_flat(
    complex: &FaceComplex,
    w: &WeightAssignment,
    x: FlatId,
    orient: &OrientationData,
) -> Result<EigenPackage> {
    let lattice = complex.lattice();
    let p = lattice.flat(x).codim;
    let lambda = lambda_of(complex, w, x)?;
    let q_local = stationary_for_flat(complex, w, x)?;
    let k = transition_matrix(complex, w);
    let chambers_of_x = complex.chambers_of_flat(x).to_vec();

    let mut basis = Vec::new();
    let mut kept_flags = Vec::new();
    let mut space = RowSpace::new(complex.n_chambers());
    for xflag in enumerate_flat_flags(complex, p, Some(x))? {
        let mut psi = ChamberVector::zero(complex, lattice.bottom());
        for (pos, &c) in chambers_of_x.iter().enumerate() {
            if q_local.coeffs[pos].is_zero() {
                continue;
            }
            let contrib = phi(complex, orient, &xflag, c)?;
            psi.add_scaled(&contrib, &q_local.coeffs[pos]);
        }
        let kv = k.mul_vec(&psi.coeffs);
        let lv: Vec<Rational> = psi.coeffs.iter().map(|c| c * &lambda).collect();
        if kv != lv {
            return Err(Error::NotAnEigenvector(x));
        }
        if space.insert(&psi.coeffs) {
            basis.push(psi);
            kept_flags.push(xflag);
        }
    }
    let expected = lattice.multiplicity(x);
    if basis.len() != expected {
        return Err(Error::MultiplicityMismatch {
            flat: x,
            got: basis.len(),
            expected,
        });
    }
    Ok(EigenPackage {
        flat: x,
        lambda,
        multiplicity: expected,
        basis,
        spanning_flags: kept_flags,
    })
}

/// Diagonalize the walk: one eigen package per flat, with the assembled
/// basis checked for exact global independence.
pub fn full_spectrum(
    complex: &FaceComplex,
    w: &WeightAssignment,
    orient: &OrientationData,
) -> Result<SpectrumReport> {
    let flat_ids: Vec<FlatId> = (0..complex.lattice().n_flats()).collect();
    let packages: Result<Vec<EigenPackage>> = flat_ids
        .par_iter()
        .map(|&x| eigenvectors_for_flat(complex, w, x, orient))
        .collect();
    let packages = packages?;
    let n = complex.n_chambers();
    let total: usize = packages.iter().map(|p| p.basis.len()).sum();
    if total != n {
        return Err(Error::MultiplicityMismatch {
            flat: usize::MAX,
            got: total,
            expected: n,
        });
    }
    let columns: Vec<Vec<Rational>> = packages
        .iter()
        .flat_map(|p| p.basis.iter().map(|v| v.coeffs.clone()))
        .collect();
    let basis_matrix = RatMatrix::from_columns(columns);
    if basis_matrix.det().is_zero() {
        return Err(Error::BasisNotIndependent);
    }
    Ok(SpectrumReport {
        packages,
        basis_matrix,
    })
}

/// Evaluate `det(x I - K)` and the product over flats of
/// `(x - lambda_X)^{|mu(W,X)|}` at one rational point.
pub fn char_poly_sides_at(
    complex: &FaceComplex,
    w: &WeightAssignment,
    k: &RatMatrix,
    point: &Rational,
) -> Result<(Rational, Rational)> {
    let n = complex.n_chambers();
    let mut xi_minus_k = k.clone();
    for i in 0..n {
        for j in 0..n {
            let v = if i == j {
                point - &xi_minus_k[(i, j)]
            } else {
                -xi_minus_k[(i, j)].clone()
            };
            xi_minus_k[(i, j)] = v;
        }
    }
    let lhs = xi_minus_k.det();
    let mut rhs = Rational::one();
    for flat in complex.lattice().flats() {
        let lambda = lambda_of(complex, w, flat.id)?;
        let factor = point - &lambda;
        for _ in 0..complex.lattice().multiplicity(flat.id) {
            rhs *= &factor;
        }
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::golden;
    use crate::rational::{rat, rat_int};
    use crate::sign::signs_from_str;

    fn id_of(c: &FaceComplex, s: &str) -> FaceId {
        c.face_id(&signs_from_str(s).unwrap()).unwrap()
    }

    fn point_weights(wp: i64, wz: i64, wm: i64) -> WeightAssignment {
        // Canonical face order on the point arrangement: +, 0, -.
        WeightAssignment::new(vec![rat_int(wp), rat_int(wz), rat_int(wm)]).unwrap()
    }

    #[test]
    fn lambda_examples() {
        let c = FaceComplex::build(generators::three_lines());
        let w = WeightAssignment::random(&c, 5, 50, 10);
        let lat = c.lattice();
        let lw = lambda_of(&c, &w, lat.bottom()).unwrap();
        assert_eq!(lw, w.total());
        let origin = c.face(c.origin()).flat;
        assert_eq!(
            lambda_of(&c, &w, origin).unwrap(),
            w.weight(c.origin()).clone()
        );
        let h1 = lat.find(&[0]).unwrap();
        let expect = w.weight(c.origin())
            + w.weight(id_of(&c, "0+-"))
            + w.weight(id_of(&c, "0-+"));
        assert_eq!(lambda_of(&c, &w, h1).unwrap(), expect);
    }

    #[test]
    fn transition_matrix_point_on_line() {
        let c = FaceComplex::build(generators::point_on_line());
        let w = point_weights(1, 2, 3);
        let k = transition_matrix(&c, &w);
        // Chambers in order (+, -): K = [[w+ + w0, w+], [w-, w- + w0]].
        assert_eq!(k[(0, 0)], rat_int(3));
        assert_eq!(k[(0, 1)], rat_int(1));
        assert_eq!(k[(1, 0)], rat_int(3));
        assert_eq!(k[(1, 1)], rat_int(5));
    }

    #[test]
    fn all_weight_on_origin_scales_identity() {
        let c = FaceComplex::build(generators::three_lines());
        let mut weights = vec![Rational::zero(); c.n_faces()];
        weights[c.origin()] = rat_int(7);
        let w = WeightAssignment::new_permissive(weights).unwrap();
        let k = transition_matrix(&c, &w);
        for i in 0..c.n_chambers() {
            for j in 0..c.n_chambers() {
                let expect = if i == j { rat_int(7) } else { rat_int(0) };
                assert_eq!(k[(i, j)], expect);
            }
        }
    }

    #[test]
    fn column_sums_equal_lambda_w() {
        let c = FaceComplex::build(generators::three_lines());
        let w = WeightAssignment::random(&c, 11, 100, 20);
        let k = transition_matrix(&c, &w);
        let lw = w.total();
        for j in 0..c.n_chambers() {
            let sum = (0..c.n_chambers()).fold(Rational::zero(), |acc, i| acc + &k[(i, j)]);
            assert_eq!(sum, lw);
        }
    }

    #[test]
    fn stationary_point_on_line() {
        let c = FaceComplex::build(generators::point_on_line());
        let w = point_weights(1, 2, 3);
        let pi = stationary_exact(&c, &w).unwrap();
        assert_eq!(pi.coeffs, vec![rat(1, 4), rat(3, 4)]);
    }

    #[test]
    fn stationary_symmetric_boolean_is_uniform() {
        let c = FaceComplex::build(generators::boolean(2).unwrap());
        let w = WeightAssignment::uniform(&c);
        let pi = stationary_exact(&c, &w).unwrap();
        assert!(pi.coeffs.iter().all(|x| x == &rat(1, 4)));
    }

    #[test]
    fn q_vector_matches_one_point_formula() {
        let c = FaceComplex::build(generators::point_on_line());
        for (a, b, z) in [(1, 2, 3), (5, 1, 7), (2, 9, 4)] {
            let w = point_weights(a, z, b);
            let q = q_vector(&c, &w).unwrap();
            let expect = golden::one_point_q(&rat_int(a), &rat_int(z), &rat_int(b));
            assert_eq!(q.coeffs, expect);
        }
    }

    #[test]
    fn q_is_exact_eigenvector() {
        let c = FaceComplex::build(generators::three_lines());
        let w = WeightAssignment::random(&c, 3, 100, 100);
        let q = q_vector(&c, &w).unwrap();
        let k = transition_matrix(&c, &w);
        let kv = k.mul_vec(&q.coeffs);
        let lambda = w.total();
        let expect: Vec<Rational> = q.coeffs.iter().map(|x| x * &lambda).collect();
        assert_eq!(kv, expect);
    }

    #[test]
    fn dp_oracle_agrees_with_nullspace() {
        for complex in [
            FaceComplex::build(generators::point_on_line()),
            FaceComplex::build(generators::boolean(2).unwrap()),
            FaceComplex::build(generators::three_lines()),
        ] {
            let w = WeightAssignment::random(&complex, 17, 30, 7);
            let dp = stationary_dp_oracle(&complex, &w).unwrap();
            let exact = stationary_exact(&complex, &w).unwrap();
            assert_eq!(dp.coeffs, exact.coeffs);
        }
    }

    #[test]
    fn dp_literal_matches_permutation_sum() {
        let c = FaceComplex::build(generators::point_on_line());
        let w = point_weights(3, 5, 2);
        let dp = q_dp_literal(&c, &w).unwrap();
        let brute = q_permutation_oracle(&c, &w).unwrap();
        assert_eq!(dp, brute);
        // And q_vector is lambda_W times the literal sum.
        let q = q_vector(&c, &w).unwrap();
        let lambda = w.total();
        let scaled: Vec<Rational> = dp.iter().map(|x| x * &lambda).collect();
        assert_eq!(q.coeffs, scaled);
    }

    #[test]
    fn dp_concentrates_mass_on_heavy_chamber() {
        let c = FaceComplex::build(generators::point_on_line());
        let w = WeightAssignment::new(vec![rat_int(1), rat(1, 1000), rat(1, 1000)]).unwrap();
        let pi = stationary_dp_oracle(&c, &w).unwrap();
        assert!(pi.coeffs[0] > rat(9, 10));
    }

    #[test]
    fn eigen_package_h1_matches_reference_direction() {
        let c = FaceComplex::build(generators::three_lines());
        let orient = golden::fixture_orientation(&c);
        let w = WeightAssignment::random(&c, 23, 1000, 1000);
        let h1 = c.lattice().find(&[0]).unwrap();
        let pkg = eigenvectors_for_flat(&c, &w, h1, &orient).unwrap();
        assert_eq!(pkg.multiplicity, 1);
        let perm = golden::reference_order_permutation(&c);
        let got: Vec<Rational> = perm.iter().map(|&i| pkg.basis[0].coeffs[i].clone()).collect();
        let rows = golden::golden_rows(&c, w.weights());
        assert!(golden::proportional(&got, &rows[0].vector_reference_order));
        assert_eq!(pkg.lambda, rows[0].lambda);
    }

    #[test]
    fn full_spectrum_three_lines() {
        let c = FaceComplex::build(generators::three_lines());
        let orient = golden::fixture_orientation(&c);
        let w = WeightAssignment::random(&c, 41, 1000, 1000);
        let report = full_spectrum(&c, &w, &orient).unwrap();
        assert_eq!(report.total_multiplicity(), 6);
        let mults: Vec<usize> = report.packages.iter().map(|p| p.multiplicity).collect();
        assert_eq!(mults, vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn boolean_spectrum_has_subset_eigenvalues() {
        let c = FaceComplex::build(generators::boolean(3).unwrap());
        let orient = OrientationData::deterministic(&c);
        let w = WeightAssignment::random(&c, 7, 50, 5);
        let report = full_spectrum(&c, &w, &orient).unwrap();
        assert_eq!(report.packages.len(), 8);
        for pkg in &report.packages {
            assert_eq!(pkg.multiplicity, 1);
            let contains = &c.lattice().flat(pkg.flat).contains;
            let expect = (0..c.n_faces())
                .filter(|&f| {
                    let zs = c.face(f).zero_set();
                    contains.iter().all(|h| zs.contains(h))
                })
                .fold(Rational::zero(), |acc, f| acc + w.weight(f));
            assert_eq!(pkg.lambda, expect);
        }
    }

    #[test]
    fn char_poly_identity_three_lines() {
        let c = FaceComplex::build(generators::three_lines());
        let w = WeightAssignment::random(&c, 13, 40, 8);
        let k = transition_matrix(&c, &w);
        for i in 0..=(c.n_chambers() as i64) {
            let x = rat(7 * i + 3, 5);
            let (lhs, rhs) = char_poly_sides_at(&c, &w, &k, &x).unwrap();
            assert_eq!(lhs, rhs, "at x = {x}");
        }
    }

    #[test]
    fn degenerate_weights_reported() {
        let c = FaceComplex::build(generators::boolean(2).unwrap());
        // All mass on the origin: K = w0 I, nullity of K - w0 I is full.
        let mut weights = vec![Rational::zero(); c.n_faces()];
        weights[c.origin()] = rat_int(1);
        let w = WeightAssignment::new_permissive(weights).unwrap();
        assert!(matches!(
            stationary_exact(&c, &w),
            Err(Error::DegenerateWeights(_))
        ));
    }

    #[test]
    fn weight_validation() {
        assert!(WeightAssignment::new(vec![rat_int(1), rat_int(0)]).is_err());
        assert!(WeightAssignment::new_permissive(vec![rat_int(1), rat_int(0)]).is_ok());
        assert!(WeightAssignment::new_permissive(vec![rat_int(-1)]).is_err());
        let c = FaceComplex::build(generators::point_on_line());
        assert!(WeightAssignment::uniform(&c).is_probability());
    }
}
