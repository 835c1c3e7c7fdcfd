//! The face algebra acting on chamber vectors.
//!
//! `ChamberVector` is an exact-rational vector indexed by the chambers of a
//! restriction A^X (the whole arrangement when X = W). A face acts on it by
//! the face product when its flat lies above X and by zero otherwise; the
//! action extends linearly.

use crate::complex::{FaceComplex, FaceId};
use crate::lattice::FlatId;
use crate::rational::Rational;
use num_traits::{One, Zero};
use std::fmt;

/// Exact coefficient vector indexed by the chambers of A^X in canonical
/// order. `flat` identifies X; the bottom flat gives vectors on the
/// chambers of the whole arrangement.
#[derive(Clone, PartialEq, Eq)]
pub struct ChamberVector {
    pub flat: FlatId,
    pub coeffs: Vec<Rational>,
}

impl ChamberVector {
    pub fn zero(complex: &FaceComplex, flat: FlatId) -> Self {
        ChamberVector {
            flat,
            coeffs: vec![Rational::zero(); complex.chambers_of_flat(flat).len()],
        }
    }

    /// Unit vector at one chamber of A^X.
    pub fn unit(complex: &FaceComplex, flat: FlatId, chamber: FaceId) -> Self {
        let mut v = ChamberVector::zero(complex, flat);
        let pos = complex
            .flat_chamber_position(flat, chamber)
            .expect("chamber belongs to the flat");
        v.coeffs[pos] = Rational::one();
        v
    }

    pub fn from_coeffs(flat: FlatId, coeffs: Vec<Rational>) -> Self {
        ChamberVector { flat, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn add_scaled(&mut self, other: &ChamberVector, scale: &Rational) {
        assert_eq!(self.flat, other.flat, "mixed index sets");
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() && !scale.is_zero() {
                *a += b * scale;
            }
        }
    }

    pub fn scaled(&self, scale: &Rational) -> ChamberVector {
        ChamberVector {
            flat: self.flat,
            coeffs: self.coeffs.iter().map(|c| c * scale).collect(),
        }
    }

    pub fn sum(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |a, b| a + b)
    }

    /// Render with the sign strings of the supporting chambers.
    pub fn describe(&self, complex: &FaceComplex) -> String {
        let chambers = complex.chambers_of_flat(self.flat);
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .zip(chambers)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, &ch)| format!("{}*[{}]", c, complex.face(ch).sign_string()))
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Debug for ChamberVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "ChamberVector@{} [{}]", self.flat, cs.join(", "))
    }
}

/// Face product by sign vectors; thin wrapper over the interned table.
pub fn face_product(complex: &FaceComplex, f: FaceId, g: FaceId) -> FaceId {
    complex.product(f, g)
}

/// The action of a face on a chamber vector over A^X: linear extension of
/// `F·C = FC` when |F| >= X and zero otherwise.
pub fn act(complex: &FaceComplex, f: FaceId, v: &ChamberVector) -> ChamberVector {
    let x = v.flat;
    if !complex.face_above_flat(f, x) {
        return ChamberVector::zero(complex, x);
    }
    let chambers = complex.chambers_of_flat(x);
    let mut out = ChamberVector::zero(complex, x);
    for (pos, &c) in chambers.iter().enumerate() {
        if v.coeffs[pos].is_zero() {
            continue;
        }
        let fc = complex.product(f, c);
        let target = complex
            .flat_chamber_position(x, fc)
            .expect("product of a face above X with a chamber of A^X is a chamber of A^X");
        out.coeffs[target] += &v.coeffs[pos];
    }
    out
}

/// Outcome of the exhaustive semigroup-law check.
#[derive(Debug, Clone)]
pub struct SemigroupReport {
    pub faces: usize,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub counterexample: Option<String>,
}

impl SemigroupReport {
    pub fn ok(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Exhaustively verify idempotence, the deletion property, associativity,
/// and closure of the face product. Intended for desk-scale arrangements.
pub fn verify_semigroup_laws(complex: &FaceComplex) -> SemigroupReport {
    let n = complex.n_faces();
    let mut pairs = 0usize;
    let mut triples = 0usize;
    let name = |id: FaceId| complex.face(id).sign_string();

    for f in 0..n {
        if complex.product(f, f) != f {
            return SemigroupReport {
                faces: n,
                pairs_checked: pairs,
                triples_checked: triples,
                counterexample: Some(format!("FF != F at F = {}", name(f))),
            };
        }
    }
    for f in 0..n {
        for g in 0..n {
            pairs += 1;
            let fg = complex.product(f, g);
            if complex.product(fg, f) != fg {
                return SemigroupReport {
                    faces: n,
                    pairs_checked: pairs,
                    triples_checked: triples,
                    counterexample: Some(format!(
                        "FGF != FG at F = {}, G = {}",
                        name(f),
                        name(g)
                    )),
                };
            }
        }
    }
    for f in 0..n {
        for g in 0..n {
            let fg = complex.product(f, g);
            for e in 0..n {
                triples += 1;
                if complex.product(fg, e) != complex.product(f, complex.product(g, e)) {
                    return SemigroupReport {
                        faces: n,
                        pairs_checked: pairs,
                        triples_checked: triples,
                        counterexample: Some(format!(
                            "(FG)E != F(GE) at F = {}, G = {}, E = {}",
                            name(f),
                            name(g),
                            name(e)
                        )),
                    };
                }
            }
        }
    }
    SemigroupReport {
        faces: n,
        pairs_checked: pairs,
        triples_checked: triples,
        counterexample: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::rational::rat_int;
    use crate::sign::signs_from_str;

    fn id_of(c: &FaceComplex, s: &str) -> FaceId {
        c.face_id(&signs_from_str(s).unwrap()).unwrap()
    }

    #[test]
    fn product_examples() {
        let c = FaceComplex::build(generators::three_lines());
        let f = id_of(&c, "0+-");
        let g = id_of(&c, "+++");
        assert_eq!(c.product(f, g), id_of(&c, "++-"));
        // Origin is the identity.
        for any in 0..c.n_faces() {
            assert_eq!(c.product(c.origin(), any), any);
        }
        // A chamber absorbs on the left.
        let ch = id_of(&c, "--+");
        assert_eq!(c.product(ch, f), ch);
    }

    #[test]
    fn product_of_face_and_chamber_is_chamber() {
        let c = FaceComplex::build(generators::three_lines());
        for f in 0..c.n_faces() {
            for &ch in c.chambers() {
                assert!(c.face(c.product(f, ch)).is_chamber());
            }
        }
    }

    #[test]
    fn semigroup_laws_three_lines() {
        let c = FaceComplex::build(generators::three_lines());
        let report = verify_semigroup_laws(&c);
        assert!(report.ok(), "{:?}", report.counterexample);
        assert_eq!(report.triples_checked, 13 * 13 * 13);
    }

    #[test]
    fn semigroup_laws_point_on_line() {
        let c = FaceComplex::build(generators::point_on_line());
        let report = verify_semigroup_laws(&c);
        assert!(report.ok());
        assert_eq!(report.triples_checked, 27);
    }

    #[test]
    fn local_action_three_lines() {
        let c = FaceComplex::build(generators::three_lines());
        let h1 = c.lattice().find(&[0]).unwrap();
        let c_pm = id_of(&c, "0-+");
        let v = ChamberVector::unit(&c, h1, c_pm);

        // A face on H1 acts by the product within the restriction.
        let f = id_of(&c, "0+-");
        let out = act(&c, f, &v);
        assert_eq!(out, ChamberVector::unit(&c, h1, id_of(&c, "0+-")));

        // A face with |F| = W < H1 acts by zero.
        let g = id_of(&c, "+++");
        assert!(act(&c, g, &v).is_zero());
    }

    #[test]
    fn action_at_bottom_is_plain_product() {
        let c = FaceComplex::build(generators::three_lines());
        let w = c.lattice().bottom();
        for f in 0..c.n_faces() {
            for &ch in c.chambers() {
                let out = act(&c, f, &ChamberVector::unit(&c, w, ch));
                assert_eq!(out, ChamberVector::unit(&c, w, c.product(f, ch)));
            }
        }
    }

    /// act is a module action: F.(G.v) = (FG).v including the zero cases.
    #[test]
    fn module_action_law_on_restriction() {
        let c = FaceComplex::build(generators::three_lines());
        let h1 = c.lattice().find(&[0]).unwrap();
        let mut v = ChamberVector::zero(&c, h1);
        v.coeffs[0] = rat_int(2);
        v.coeffs[1] = rat_int(-3);
        for f in 0..c.n_faces() {
            for g in 0..c.n_faces() {
                let lhs = act(&c, f, &act(&c, g, &v));
                let both_above =
                    c.face_above_flat(f, h1) && c.face_above_flat(g, h1);
                let rhs = if both_above {
                    act(&c, c.product(f, g), &v)
                } else {
                    ChamberVector::zero(&c, h1)
                };
                assert_eq!(lhs, rhs);
            }
        }
    }

    /// restriction_faces(X) is exactly the set of faces acting nonzero on
    /// V(A^X).
    #[test]
    fn restriction_matches_nonzero_action() {
        let c = FaceComplex::build(generators::three_lines());
        for x in 0..c.lattice().n_flats() {
            if c.chambers_of_flat(x).is_empty() {
                continue;
            }
            let sample = ChamberVector::unit(&c, x, c.chambers_of_flat(x)[0]);
            let acting: Vec<FaceId> = (0..c.n_faces())
                .filter(|&f| !act(&c, f, &sample).is_zero())
                .collect();
            assert_eq!(acting, c.restriction_faces(x).unwrap());
        }
    }
}
