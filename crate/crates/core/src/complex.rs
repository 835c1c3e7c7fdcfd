//! The combinatorial skeleton of an arrangement, built once and borrowed by
//! everything downstream: enumerated faces in canonical order, the
//! intersection lattice, per-flat face and chamber lists, opposite faces,
//! and an interned face-product table.

use crate::arrangement::{Arrangement, Face};
use crate::error::{Error, Result};
use crate::lattice::{subset, FlatId, IntersectionLattice};
use crate::sign::Sign;
use std::collections::HashMap;

pub type FaceId = usize;

/// Eager product tables above this face count would dominate memory; the
/// product is recomputed on the fly instead.
const PRODUCT_TABLE_LIMIT: usize = 2048;

pub struct FaceComplex {
    arrangement: Arrangement,
    faces: Vec<Face>,
    face_ids: HashMap<Vec<Sign>, FaceId>,
    opposite: Vec<FaceId>,
    chambers: Vec<FaceId>,
    chamber_pos: HashMap<FaceId, usize>,
    lattice: IntersectionLattice,
    /// Faces F with |F| = X, per flat, in canonical order: the chambers of
    /// the restriction A^X.
    chambers_by_flat: Vec<Vec<FaceId>>,
    /// Faces F with |F| >= X, per flat: the faces of A^X.
    faces_above: Vec<Vec<FaceId>>,
    product_table: Option<Vec<u32>>,
}

impl FaceComplex {
    pub fn build(arrangement: Arrangement) -> FaceComplex {
        let sign_vectors = arrangement.enumerate_sign_vectors();
        let lattice = IntersectionLattice::build(&sign_vectors, |zero_set| {
            let probe: Vec<Sign> = (0..arrangement.n_hyperplanes())
                .map(|i| {
                    if zero_set.contains(&i) {
                        Sign::Zero
                    } else {
                        Sign::Plus
                    }
                })
                .collect();
            arrangement.codim_of_signs(&probe)
        });

        let faces: Vec<Face> = sign_vectors
            .into_iter()
            .map(|signs| {
                let zero_set: Vec<usize> = signs
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s.is_zero())
                    .map(|(i, _)| i)
                    .collect();
                let flat = lattice
                    .find(&zero_set)
                    .expect("face support is a flat by construction");
                Face {
                    codim: lattice.flat(flat).codim,
                    flat,
                    signs,
                }
            })
            .collect();

        let face_ids: HashMap<Vec<Sign>, FaceId> = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.signs.clone(), i))
            .collect();

        let opposite = faces
            .iter()
            .map(|f| {
                let neg: Vec<Sign> = f.signs.iter().map(|s| s.opposite()).collect();
                *face_ids.get(&neg).expect("central arrangements are symmetric")
            })
            .collect();

        let chambers: Vec<FaceId> = faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.is_chamber())
            .map(|(i, _)| i)
            .collect();
        let chamber_pos = chambers.iter().enumerate().map(|(p, &c)| (c, p)).collect();

        let mut chambers_by_flat = vec![Vec::new(); lattice.n_flats()];
        let mut faces_above = vec![Vec::new(); lattice.n_flats()];
        for (i, f) in faces.iter().enumerate() {
            chambers_by_flat[f.flat].push(i);
            for (x, above) in faces_above.iter_mut().enumerate() {
                if subset(&lattice.flat(x).contains, &lattice.flat(f.flat).contains) {
                    above.push(i);
                }
            }
        }

        let mut complex = FaceComplex {
            arrangement,
            faces,
            face_ids,
            opposite,
            chambers,
            chamber_pos,
            lattice,
            chambers_by_flat,
            faces_above,
            product_table: None,
        };
        if complex.faces.len() <= PRODUCT_TABLE_LIMIT {
            let n = complex.faces.len();
            let mut table = vec![0u32; n * n];
            for f in 0..n {
                for g in 0..n {
                    table[f * n + g] = complex.compute_product(f, g) as u32;
                }
            }
            complex.product_table = Some(table);
        }
        complex
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn lattice(&self) -> &IntersectionLattice {
        &self.lattice
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn face_id(&self, signs: &[Sign]) -> Option<FaceId> {
        self.face_ids.get(signs).copied()
    }

    /// Chambers of the whole arrangement, canonical order.
    pub fn chambers(&self) -> &[FaceId] {
        &self.chambers
    }

    pub fn n_chambers(&self) -> usize {
        self.chambers.len()
    }

    /// Position of a chamber in the canonical chamber order.
    pub fn chamber_position(&self, id: FaceId) -> Option<usize> {
        self.chamber_pos.get(&id).copied()
    }

    /// The origin face (all zeros), the identity of the face semigroup.
    pub fn origin(&self) -> FaceId {
        self.face_id(&vec![Sign::Zero; self.arrangement.n_hyperplanes()])
            .expect("central arrangement contains the origin face")
    }

    /// Antipodal face.
    pub fn opposite(&self, id: FaceId) -> FaceId {
        self.opposite[id]
    }

    /// Faces of the restriction A^X: faces F with |F| >= X, i.e. whose
    /// closed set contains the closed set of X.
    pub fn restriction_faces(&self, x: FlatId) -> Result<&[FaceId]> {
        self.faces_above
            .get(x)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::FlatNotFound(vec![x]))
    }

    /// Chambers of A^X: faces with |F| = X, canonical order.
    pub fn chambers_of_flat(&self, x: FlatId) -> &[FaceId] {
        &self.chambers_by_flat[x]
    }

    /// Position of a face inside `chambers_of_flat(x)`.
    pub fn flat_chamber_position(&self, x: FlatId, id: FaceId) -> Option<usize> {
        self.chambers_by_flat[x].binary_search(&id).ok()
    }

    /// Face product: F wins coordinatewise unless zero. Total and closed on
    /// the face set.
    pub fn product(&self, f: FaceId, g: FaceId) -> FaceId {
        match &self.product_table {
            Some(t) => t[f * self.faces.len() + g] as FaceId,
            None => self.compute_product(f, g),
        }
    }

    fn compute_product(&self, f: FaceId, g: FaceId) -> FaceId {
        let signs: Vec<Sign> = self.faces[f]
            .signs
            .iter()
            .zip(&self.faces[g].signs)
            .map(|(&a, &b)| if a.is_zero() { b } else { a })
            .collect();
        *self
            .face_ids
            .get(&signs)
            .expect("face product stays in the face set")
    }

    /// `|F| >= X` test, i.e. the local action of F on V(A^X) is nonzero.
    pub fn face_above_flat(&self, f: FaceId, x: FlatId) -> bool {
        subset(
            &self.lattice.flat(x).contains,
            &self.lattice.flat(self.faces[f].flat).contains,
        )
    }

    pub fn faces_of_codim(&self, p: usize) -> impl Iterator<Item = FaceId> + '_ {
        self.faces
            .iter()
            .enumerate()
            .filter(move |(_, f)| f.codim == p)
            .map(|(i, _)| i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::sign::signs_from_str;

    #[test]
    fn three_lines_complex() {
        let c = FaceComplex::build(generators::three_lines());
        assert_eq!(c.n_faces(), 13);
        assert_eq!(c.n_chambers(), 6);
        assert_eq!(c.lattice().n_flats(), 5);
        assert_eq!(c.face(c.origin()).codim, 2);
    }

    #[test]
    fn opposite_is_involution_and_preserves_flat() {
        let c = FaceComplex::build(generators::three_lines());
        for f in 0..c.n_faces() {
            let o = c.opposite(f);
            assert_eq!(c.opposite(o), f);
            assert_eq!(c.face(f).flat, c.face(o).flat);
        }
        let ray = c.face_id(&signs_from_str("0+-").unwrap()).unwrap();
        let opp = c.face_id(&signs_from_str("0-+").unwrap()).unwrap();
        assert_eq!(c.opposite(ray), opp);
        assert_eq!(c.opposite(c.origin()), c.origin());
    }

    #[test]
    fn restriction_faces_three_lines() {
        let c = FaceComplex::build(generators::three_lines());
        let h1 = c.lattice().find(&[0]).unwrap();
        let above: Vec<String> = c
            .restriction_faces(h1)
            .unwrap()
            .iter()
            .map(|&f| c.face(f).sign_string())
            .collect();
        assert_eq!(above, vec!["0+-", "000", "0-+"]);
        let local_chambers: Vec<String> = c
            .chambers_of_flat(h1)
            .iter()
            .map(|&f| c.face(f).sign_string())
            .collect();
        assert_eq!(local_chambers, vec!["0+-", "0-+"]);

        let w = c.lattice().bottom();
        assert_eq!(c.restriction_faces(w).unwrap().len(), c.n_faces());
        assert_eq!(c.chambers_of_flat(w), c.chambers());

        let origin_flat = c.face(c.origin()).flat;
        assert_eq!(c.restriction_faces(origin_flat).unwrap().len(), 1);
        assert_eq!(c.chambers_of_flat(origin_flat), &[c.origin()]);
    }

    /// |F_p| partitions: the codim-p face count is the sum over codim-p
    /// flats of the chamber counts of their restrictions.
    #[test]
    fn face_count_decomposition() {
        let c = FaceComplex::build(generators::three_lines());
        for p in 0..=2 {
            let total = c.faces_of_codim(p).count();
            let by_flat: usize = c
                .lattice()
                .flats_of_codim(p)
                .map(|f| c.chambers_of_flat(f.id).len())
                .sum();
            assert_eq!(total, by_flat);
        }
    }
}
