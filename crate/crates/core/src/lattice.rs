//! The intersection lattice: flats, Möbius function, Betti numbers.
//!
//! Flats are keyed by their closed hyperplane set (every hyperplane
//! containing the intersection subspace). Each face's zero set is such a
//! closed set, and every flat supports at least one face, so collecting the
//! distinct face supports yields exactly the lattice. The order is reverse
//! inclusion of subspaces, which on closed hyperplane sets is plain
//! inclusion: `X <= Y` iff `contains(X) ⊆ contains(Y)`.

use crate::sign::Sign;
use std::collections::HashMap;

pub type FlatId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    pub id: FlatId,
    /// Sorted indices of the hyperplanes containing the flat.
    pub contains: Vec<usize>,
    pub codim: usize,
    /// Möbius value mu(W, X) of the lattice.
    pub mobius: i64,
}

#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    flats: Vec<Flat>,
    index: HashMap<Vec<usize>, FlatId>,
    betti: Vec<i64>,
}

impl IntersectionLattice {
    /// Build from enumerated faces. `codim_of` must report the rank of the
    /// normals in a zero set.
    pub fn build(
        sign_vectors: &[Vec<Sign>],
        codim_of: impl Fn(&[usize]) -> usize,
    ) -> IntersectionLattice {
        let mut supports: Vec<Vec<usize>> = sign_vectors
            .iter()
            .map(|signs| {
                signs
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s.is_zero())
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        supports.sort();
        supports.dedup();

        let mut flats: Vec<Flat> = supports
            .into_iter()
            .map(|contains| Flat {
                id: 0,
                codim: codim_of(&contains),
                contains,
                mobius: 0,
            })
            .collect();
        flats.sort_by(|a, b| (a.codim, &a.contains).cmp(&(b.codim, &b.contains)));
        for (id, f) in flats.iter_mut().enumerate() {
            f.id = id;
        }

        // Möbius recursion down a linear extension: mu(W, W) = 1 and
        // mu(W, X) = -sum over Y < X of mu(W, Y).
        for i in 0..flats.len() {
            if flats[i].contains.is_empty() {
                flats[i].mobius = 1;
                continue;
            }
            let mut acc = 0i64;
            for j in 0..i {
                if subset(&flats[j].contains, &flats[i].contains) {
                    acc += flats[j].mobius;
                }
            }
            flats[i].mobius = -acc;
        }

        let max_codim = flats.iter().map(|f| f.codim).max().unwrap_or(0);
        let mut betti = vec![0i64; max_codim + 1];
        for f in &flats {
            let signed = if f.codim % 2 == 0 { f.mobius } else { -f.mobius };
            betti[f.codim] += signed;
        }

        let index = flats.iter().map(|f| (f.contains.clone(), f.id)).collect();
        IntersectionLattice {
            flats,
            index,
            betti,
        }
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, id: FlatId) -> &Flat {
        &self.flats[id]
    }

    pub fn n_flats(&self) -> usize {
        self.flats.len()
    }

    /// The bottom element W (empty hyperplane set, codimension 0).
    pub fn bottom(&self) -> FlatId {
        debug_assert!(self.flats[0].contains.is_empty());
        0
    }

    pub fn find(&self, contains: &[usize]) -> Option<FlatId> {
        self.index.get(contains).copied()
    }

    /// `x <= y` in the reverse-inclusion order.
    pub fn leq(&self, x: FlatId, y: FlatId) -> bool {
        subset(&self.flats[x].contains, &self.flats[y].contains)
    }

    /// All comparable pairs (x, y) with x <= y.
    pub fn order_pairs(&self) -> Vec<(FlatId, FlatId)> {
        let mut out = Vec::new();
        for x in 0..self.flats.len() {
            for y in 0..self.flats.len() {
                if self.leq(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn flats_of_codim(&self, p: usize) -> impl Iterator<Item = &Flat> {
        self.flats.iter().filter(move |f| f.codim == p)
    }

    /// Betti numbers b_0..b_max; b_p = (-1)^p sum of mu over codim-p flats.
    pub fn betti(&self) -> &[i64] {
        &self.betti
    }

    /// Zaslavsky's chamber count: sum of |mu| over all flats.
    pub fn zaslavsky_count(&self) -> i64 {
        self.flats.iter().map(|f| f.mobius.abs()).sum()
    }

    pub fn multiplicity(&self, x: FlatId) -> usize {
        self.flats[x].mobius.unsigned_abs() as usize
    }
}

pub(crate) fn subset(a: &[usize], b: &[usize]) -> bool {
    // Both sorted.
    let mut it = b.iter();
    'outer: for x in a {
        for y in it.by_ref() {
            match y.cmp(x) {
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
                std::cmp::Ordering::Less => {}
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::rational::rat_int;

    fn lattice_of(dim: usize, rows: &[&[i64]]) -> IntersectionLattice {
        let normals = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat_int(x)).collect())
            .collect();
        let a = Arrangement::build(dim, normals).unwrap();
        let faces = a.enumerate_sign_vectors();
        IntersectionLattice::build(&faces, |zs| {
            a.codim_of_signs(
                &(0..a.n_hyperplanes())
                    .map(|i| {
                        if zs.contains(&i) {
                            Sign::Zero
                        } else {
                            Sign::Plus
                        }
                    })
                    .collect::<Vec<_>>(),
            )
        })
    }

    #[test]
    fn three_lines_lattice() {
        let l = lattice_of(2, &[&[1, 0], &[0, 1], &[1, -1]]);
        assert_eq!(l.n_flats(), 5);
        assert_eq!(l.flat(0).contains, Vec::<usize>::new());
        assert_eq!(l.flat(0).mobius, 1);
        for h in 1..=3 {
            assert_eq!(l.flat(h).codim, 1);
            assert_eq!(l.flat(h).mobius, -1);
        }
        assert_eq!(l.flat(4).contains, vec![0, 1, 2]);
        assert_eq!(l.flat(4).mobius, 2);
        assert_eq!(l.betti(), &[1, 3, 2]);
        assert_eq!(l.zaslavsky_count(), 6);
    }

    #[test]
    fn point_on_line_lattice() {
        let l = lattice_of(1, &[&[1]]);
        assert_eq!(l.n_flats(), 2);
        assert_eq!(l.flat(1).mobius, -1);
        assert_eq!(l.betti(), &[1, 1]);
    }

    #[test]
    fn boolean_lattice_mobius() {
        let l = lattice_of(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(l.n_flats(), 8);
        for f in l.flats() {
            let expect = if f.contains.len() % 2 == 0 { 1 } else { -1 };
            assert_eq!(f.mobius, expect, "mu on subset {:?}", f.contains);
            assert_eq!(f.codim, f.contains.len());
        }
        assert_eq!(l.betti(), &[1, 3, 3, 1]);
        assert_eq!(l.zaslavsky_count(), 8);
    }

    #[test]
    fn subset_helper() {
        assert!(subset(&[], &[1, 2]));
        assert!(subset(&[1], &[0, 1, 4]));
        assert!(!subset(&[2], &[0, 1]));
        assert!(subset(&[0, 2], &[0, 1, 2]));
        assert!(!subset(&[0, 3], &[0, 1, 2]));
    }
}
