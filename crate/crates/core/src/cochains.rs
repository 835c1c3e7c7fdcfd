//! Heaviside monomials, flags, orientation signs, and flag cochains.
//!
//! The Heaviside function of a hyperplane is 1 on chambers on its positive
//! side; products over a hyperplane set I give the square-free monomials
//! x_I whose span of degrees <= p is the p-th step of the degree filtration
//! on chamber functionals. Dually, a flag of faces
//! `F_0 > F_1 > ... > F_p` (codimension i at step i, consecutive covers)
//! yields the flag cochain
//!
//! ```text
//! b(F) = F_p (F_{p-1} - opp(F_{p-1})) ... (F_0 - opp(F_0))
//! ```
//!
//! expanded in the face algebra; its support lands on chambers and it
//! annihilates all monomials of degree < p.
//!
//! A coorientation assigns to each flat X an ordered basis of the span of
//! the normals through X. For a covering pair F < G of faces with flats
//! X < Y, the sign `epsilon(F, G)` compares the orientation of X extended
//! by the outward displacement of F against the orientation of Y; this is
//! what makes the map `phi` (flat flag + chamber of the restriction to a
//! flag cochain) independent of the face flag chosen in the fibre.

use crate::algebra::ChamberVector;
use crate::complex::{FaceComplex, FaceId};
use crate::error::{Error, Result};
use crate::lattice::FlatId;
use crate::matrix::RatMatrix;
use crate::rational::Rational;
use crate::sign::Sign;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

/// Square-free monomial in the Heaviside generators, stored as a sorted
/// set of hyperplane indices. The empty set is the constant function 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HeavisideMonomial {
    pub hyperplanes: Vec<usize>,
}

impl HeavisideMonomial {
    pub fn new(mut hyperplanes: Vec<usize>) -> Self {
        hyperplanes.sort_unstable();
        hyperplanes.dedup();
        HeavisideMonomial { hyperplanes }
    }

    pub fn degree(&self) -> usize {
        self.hyperplanes.len()
    }

    /// 1 if the chamber lies on the positive side of every hyperplane in
    /// the set; the empty product is 1.
    pub fn eval(&self, signs: &[Sign]) -> u8 {
        if self.hyperplanes.iter().all(|&h| signs[h] == Sign::Plus) {
            1
        } else {
            0
        }
    }
}

/// All monomials of degree <= p over n hyperplanes, ordered by degree then
/// lexicographically.
pub fn monomials_up_to(n: usize, p: usize) -> Vec<HeavisideMonomial> {
    fn rec(n: usize, start: usize, left: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(current.clone());
        if left == 0 {
            return;
        }
        for h in start..n {
            current.push(h);
            rec(n, h + 1, left - 1, current, out);
            current.pop();
        }
    }
    let mut sets = Vec::new();
    rec(n, 0, p.min(n), &mut Vec::new(), &mut sets);
    sets.sort_by_key(|s| (s.len(), s.clone()));
    sets.into_iter()
        .map(|hyperplanes| HeavisideMonomial { hyperplanes })
        .collect()
}

/// Evaluate `x_I` on a chamber of the arrangement.
pub fn eval_monomial(complex: &FaceComplex, m: &HeavisideMonomial, chamber: FaceId) -> u8 {
    debug_assert!(complex.face(chamber).is_chamber());
    m.eval(&complex.face(chamber).signs)
}

/// Rank of the evaluation matrix of all monomials of degree <= p on the
/// chambers; equals b_0 + ... + b_p.
pub fn filtration_rank(complex: &FaceComplex, p: usize) -> usize {
    let n = complex.arrangement().n_hyperplanes();
    let monomials = monomials_up_to(n, p);
    let rows = monomials
        .iter()
        .map(|m| {
            complex
                .chambers()
                .iter()
                .map(|&c| Rational::from_integer(m.eval(&complex.face(c).signs).into()))
                .collect()
        })
        .collect();
    RatMatrix::from_rows(rows).rank()
}

/// Pairing of a monomial with a vector on the chambers of the whole
/// arrangement: sum over chambers of `x_I(C) * v_C`.
pub fn monomial_pairing(complex: &FaceComplex, m: &HeavisideMonomial, v: &ChamberVector) -> Rational {
    debug_assert_eq!(v.flat, complex.lattice().bottom());
    complex
        .chambers()
        .iter()
        .zip(&v.coeffs)
        .filter(|(&c, x)| !x.is_zero() && m.eval(&complex.face(c).signs) == 1)
        .fold(Rational::zero(), |acc, (_, x)| acc + x)
}

/// A flag of faces `F_0 > F_1 > ... > F_p`: `faces[i]` has codimension i
/// and consecutive entries are covering pairs in the face poset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FaceFlag {
    pub faces: Vec<FaceId>,
}

impl FaceFlag {
    /// Flag length p (one less than the number of faces).
    pub fn length(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn top(&self) -> FaceId {
        *self.faces.last().unwrap()
    }

    /// The flat flag |F|.
    pub fn flats(&self, complex: &FaceComplex) -> FlatFlag {
        FlatFlag {
            flats: self.faces.iter().map(|&f| complex.face(f).flat).collect(),
        }
    }
}

/// A flag of flats `W = X_0 < X_1 < ... < X_p` with `codim(X_i) = i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FlatFlag {
    pub flats: Vec<FlatId>,
}

impl FlatFlag {
    /// Flag length p.
    pub fn length(&self) -> usize {
        self.flats.len() - 1
    }

    pub fn top(&self) -> FlatId {
        *self.flats.last().unwrap()
    }
}

/// Is G contained in the closure of F? In sign terms every nonzero
/// coordinate of G must agree with F.
fn in_closure(complex: &FaceComplex, g: FaceId, f: FaceId) -> bool {
    complex
        .face(g)
        .signs
        .iter()
        .zip(&complex.face(f).signs)
        .all(|(&gs, &fs)| gs.is_zero() || gs == fs)
}

/// All face flags of length p, in lexicographic face order. Codimension
/// steps of one between comparable faces are automatically covers because
/// the face poset is graded.
pub fn enumerate_face_flags(complex: &FaceComplex, p: usize) -> Vec<FaceFlag> {
    fn rec(
        complex: &FaceComplex,
        by_codim: &[Vec<FaceId>],
        p: usize,
        stack: &mut Vec<FaceId>,
        out: &mut Vec<FaceFlag>,
    ) {
        if stack.len() == p + 1 {
            out.push(FaceFlag {
                faces: stack.clone(),
            });
            return;
        }
        let level = stack.len();
        for &cand in &by_codim[level] {
            if level == 0 || in_closure(complex, cand, stack[level - 1]) {
                stack.push(cand);
                rec(complex, by_codim, p, stack, out);
                stack.pop();
            }
        }
    }
    let by_codim: Vec<Vec<FaceId>> = (0..=p)
        .map(|i| complex.faces_of_codim(i).collect())
        .collect();
    let mut out = Vec::new();
    rec(complex, &by_codim, p, &mut Vec::with_capacity(p + 1), &mut out);
    out
}

/// All flat flags of length p; with `ending_at` fixed these are the flags
/// of the interval [W, X], i.e. of the lattice of the subarrangement A_X.
pub fn enumerate_flat_flags(
    complex: &FaceComplex,
    p: usize,
    ending_at: Option<FlatId>,
) -> Result<Vec<FlatFlag>> {
    fn rec(
        complex: &FaceComplex,
        p: usize,
        ending_at: Option<FlatId>,
        stack: &mut Vec<FlatId>,
        out: &mut Vec<FlatFlag>,
    ) {
        let lattice = complex.lattice();
        if stack.len() == p + 1 {
            out.push(FlatFlag {
                flats: stack.clone(),
            });
            return;
        }
        let level = stack.len();
        let below = *stack.last().unwrap();
        for f in lattice.flats_of_codim(level) {
            if !lattice.leq(below, f.id) {
                continue;
            }
            if let Some(x) = ending_at {
                if !lattice.leq(f.id, x) {
                    continue;
                }
            }
            stack.push(f.id);
            rec(complex, p, ending_at, stack, out);
            stack.pop();
        }
    }
    let lattice = complex.lattice();
    if let Some(x) = ending_at {
        if x >= lattice.n_flats() {
            return Err(Error::FlatNotFound(vec![x]));
        }
        if lattice.flat(x).codim != p {
            return Ok(Vec::new());
        }
    }
    let mut out = Vec::new();
    rec(complex, p, ending_at, &mut vec![lattice.bottom()], &mut out);
    Ok(out)
}

/// Coorientation data: an ordered basis of `span{f_H : H contains X}` for
/// every flat X. Being chosen per flat makes the induced orientations
/// constant on parallel faces.
#[derive(Clone, Debug)]
pub struct OrientationData {
    bases: Vec<Vec<Vec<Rational>>>,
}

impl OrientationData {
    /// Deterministic default: the first `codim(X)` linearly independent
    /// normals through X, in hyperplane order.
    pub fn deterministic(complex: &FaceComplex) -> OrientationData {
        let arr = complex.arrangement();
        let bases = complex
            .lattice()
            .flats()
            .iter()
            .map(|flat| {
                let mut basis: Vec<Vec<Rational>> = Vec::with_capacity(flat.codim);
                for &h in &flat.contains {
                    if basis.len() == flat.codim {
                        break;
                    }
                    let mut cand = basis.clone();
                    cand.push(arr.normal(h).to_vec());
                    if RatMatrix::from_rows(cand.clone()).rank() > basis.len() {
                        basis = cand;
                    }
                }
                basis
            })
            .collect();
        OrientationData { bases }
    }

    /// Replace the basis of one flat; the tuple must be independent and
    /// span the same space as the normals through the flat.
    pub fn with_basis(
        mut self,
        complex: &FaceComplex,
        flat: FlatId,
        basis: Vec<Vec<Rational>>,
    ) -> Result<OrientationData> {
        let f = complex.lattice().flat(flat);
        let dim = complex.arrangement().dim();
        if basis.len() != f.codim || basis.iter().any(|v| v.len() != dim) {
            return Err(Error::DegenerateOrientation(flat));
        }
        let mut all: Vec<Vec<Rational>> = f
            .contains
            .iter()
            .map(|&h| complex.arrangement().normal(h).to_vec())
            .collect();
        all.extend(basis.iter().cloned());
        let spans = basis.is_empty()
            || (RatMatrix::from_rows(basis.clone()).rank() == f.codim
                && RatMatrix::from_rows(all).rank() == f.codim);
        if !spans {
            return Err(Error::DegenerateOrientation(flat));
        }
        self.bases[flat] = basis;
        Ok(self)
    }

    pub fn basis(&self, flat: FlatId) -> &[Vec<Rational>] {
        &self.bases[flat]
    }
}

/// Orientation sign of a covering pair F < G of faces. With X = |F| and
/// Y = |G|, the outward displacement is
/// `w = sum over H in A_Y \ A_X of F_H * f_H`;
/// the sign is the determinant sign of (basis(X), w) expressed in
/// basis(Y). Zero would mean a degenerate orientation and cannot occur for
/// genuine covers.
pub fn epsilon(
    complex: &FaceComplex,
    orient: &OrientationData,
    f: FaceId,
    g: FaceId,
) -> Result<i32> {
    let face_f = complex.face(f);
    let face_g = complex.face(g);
    debug_assert_eq!(face_g.codim, face_f.codim + 1, "not consecutive codims");
    debug_assert!(in_closure(complex, g, f), "not a covering pair");
    let x = face_f.flat;
    let y = face_g.flat;
    let dim = complex.arrangement().dim();
    let x_contains = &complex.lattice().flat(x).contains;
    let y_contains = &complex.lattice().flat(y).contains;

    let mut w = vec![Rational::zero(); dim];
    for &h in y_contains {
        if x_contains.binary_search(&h).is_ok() {
            continue;
        }
        let s = face_f.signs[h];
        debug_assert!(!s.is_zero());
        let sign = if s == Sign::Plus {
            Rational::one()
        } else {
            -Rational::one()
        };
        for (wi, ni) in w.iter_mut().zip(complex.arrangement().normal(h)) {
            *wi += &sign * ni;
        }
    }

    let mut targets: Vec<Vec<Rational>> = orient.basis(x).to_vec();
    targets.push(w);
    let coords = RatMatrix::solve_in_basis(orient.basis(y), &targets)
        .ok_or(Error::DegenerateOrientation(y))?;
    let det = coords.det();
    if det.is_zero() {
        return Err(Error::DegenerateOrientation(y));
    }
    Ok(if det.is_positive() { 1 } else { -1 })
}

/// Product of the covering signs along a face flag; the empty product
/// (p = 0) is +1.
pub fn flag_epsilon(
    complex: &FaceComplex,
    orient: &OrientationData,
    flag: &FaceFlag,
) -> Result<i32> {
    let mut e = 1i32;
    for pair in flag.faces.windows(2) {
        e *= epsilon(complex, orient, pair[0], pair[1])?;
    }
    Ok(e)
}

/// The flag cochain b(F), expanded left to right in the face algebra.
/// The result is supported on chambers of the whole arrangement.
pub fn flag_cochain(complex: &FaceComplex, flag: &FaceFlag) -> ChamberVector {
    let mut terms: HashMap<FaceId, Rational> = HashMap::new();
    terms.insert(flag.top(), Rational::one());
    for &fi in flag.faces.iter().rev().skip(1) {
        let opp = complex.opposite(fi);
        let mut next: HashMap<FaceId, Rational> = HashMap::new();
        for (&face, coeff) in &terms {
            *next
                .entry(complex.product(face, fi))
                .or_insert_with(Rational::zero) += coeff;
            *next
                .entry(complex.product(face, opp))
                .or_insert_with(Rational::zero) -= coeff;
        }
        next.retain(|_, c| !c.is_zero());
        terms = next;
    }
    let w = complex.lattice().bottom();
    let mut out = ChamberVector::zero(complex, w);
    for (face, coeff) in terms {
        let pos = complex
            .chamber_position(face)
            .expect("flag cochains are supported on chambers");
        out.coeffs[pos] = coeff;
    }
    out
}

/// Apply a face to every member of a flag. This is a genuine flag iff
/// `|F| >= |F_p|`; callers must check.
pub fn flag_product(complex: &FaceComplex, f: FaceId, flag: &FaceFlag) -> FaceFlag {
    FaceFlag {
        faces: flag.faces.iter().map(|&x| complex.product(f, x)).collect(),
    }
}

/// All face flags over a flat flag with prescribed top face, sorted by the
/// face tuple (so index 0 is the lexicographically least representative).
/// The fibre has size 2^p: two sign choices at every descent.
pub fn fibre_flags(complex: &FaceComplex, xflag: &FlatFlag, top: FaceId) -> Vec<FaceFlag> {
    fn rec(
        complex: &FaceComplex,
        xflag: &FlatFlag,
        partial: &mut Vec<FaceId>,
        out: &mut Vec<FaceFlag>,
    ) {
        let depth = partial.len(); // faces collected from the top down
        let p = xflag.length();
        if depth == p + 1 {
            let mut faces = partial.clone();
            faces.reverse();
            out.push(FaceFlag { faces });
            return;
        }
        let want_flat = xflag.flats[p - depth];
        let below = *partial.last().unwrap();
        for &cand in complex.chambers_of_flat(want_flat) {
            if in_closure(complex, below, cand) {
                partial.push(cand);
                rec(complex, xflag, partial, out);
                partial.pop();
            }
        }
    }
    if complex.face(top).flat != xflag.top() {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(complex, xflag, &mut vec![top], &mut out);
    out.sort_by(|a, b| a.faces.cmp(&b.faces));
    debug_assert_eq!(
        out.len(),
        1 << xflag.length(),
        "fibre structure is binary at each level"
    );
    out
}

/// The map phi: a flat flag ending at X together with a chamber of A^X
/// determines `epsilon(F) * b(F)` for any face flag F in the fibre.
pub fn phi(
    complex: &FaceComplex,
    orient: &OrientationData,
    xflag: &FlatFlag,
    chamber: FaceId,
) -> Result<ChamberVector> {
    let reps = fibre_flags(complex, xflag, chamber);
    let Some(first) = reps.first() else {
        return Err(Error::EmptyFibre);
    };
    let value = flag_cochain(complex, first).scaled(&Rational::from_integer(
        flag_epsilon(complex, orient, first)?.into(),
    ));
    #[cfg(debug_assertions)]
    for other in &reps[1..] {
        let alt = flag_cochain(complex, other).scaled(&Rational::from_integer(
            flag_epsilon(complex, orient, other)?.into(),
        ));
        debug_assert_eq!(alt, value, "phi must not depend on the fibre representative");
    }
    Ok(value)
}
