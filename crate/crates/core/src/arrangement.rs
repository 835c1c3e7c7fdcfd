//! Central essential arrangements and their faces.
//!
//! An arrangement is an ordered list of rational normal vectors, each
//! defining the linear hyperplane `{x : f·x = 0}`; the positive side of a
//! hyperplane is where its stored normal evaluates positively. Faces are
//! the feasible sign vectors, enumerated by depth-first extension over the
//! hyperplanes with LP pruning of infeasible prefixes.

use crate::error::{Error, Result};
use crate::lattice::FlatId;
use crate::matrix::RatMatrix;
use crate::rational::Rational;
use crate::sign::{signs_to_string, Sign};
use crate::simplex::{dot, strict_sign_witness};
use num_traits::Zero;

#[derive(Clone, Debug)]
pub struct Arrangement {
    dim: usize,
    normals: Vec<Vec<Rational>>,
}

impl Arrangement {
    /// Validate and build. The normals must be nonzero, pairwise
    /// non-parallel, and span the ambient space.
    pub fn build(dim: usize, normals: Vec<Vec<Rational>>) -> Result<Arrangement> {
        if dim == 0 {
            return Err(Error::Vacuous);
        }
        for (i, f) in normals.iter().enumerate() {
            if f.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "normal {i} has {} entries, expected {dim}",
                    f.len()
                )));
            }
            if f.iter().all(Rational::is_zero) {
                return Err(Error::ZeroNormal(i));
            }
        }
        for i in 0..normals.len() {
            for j in i + 1..normals.len() {
                if parallel(&normals[i], &normals[j]) {
                    return Err(Error::DuplicateHyperplane(i, j));
                }
            }
        }
        let rank = RatMatrix::from_rows(normals.clone()).rank();
        if rank < dim {
            return Err(Error::NotEssential { rank, dim });
        }
        Ok(Arrangement { dim, normals })
    }

    /// Project a (possibly non-essential) central arrangement onto the span
    /// of its normals, re-expressed in a rational basis of that span. The
    /// sign vector of every point is preserved, so faces and flats are
    /// unchanged.
    pub fn essentialize(dim: usize, normals: Vec<Vec<Rational>>) -> Result<Arrangement> {
        if dim == 0 {
            return Err(Error::Vacuous);
        }
        let rank = RatMatrix::from_rows(normals.clone()).rank();
        if rank == dim {
            return Arrangement::build(dim, normals);
        }
        // Basis of the span: the first `rank` linearly independent normals.
        let mut basis: Vec<Vec<Rational>> = Vec::new();
        for f in &normals {
            let mut cand = basis.clone();
            cand.push(f.clone());
            if RatMatrix::from_rows(cand.clone()).rank() > basis.len() {
                basis = cand;
            }
            if basis.len() == rank {
                break;
            }
        }
        // New normal for H: the pairings (f_H · b_1, ..., f_H · b_r). For
        // x = sum y_i b_i in the span, f_H·x = g_H·y, and the orthogonal
        // complement of the span is the center, where every f_H vanishes.
        let projected: Vec<Vec<Rational>> = normals
            .iter()
            .map(|f| basis.iter().map(|b| dot(f, b)).collect())
            .collect();
        Arrangement::build(rank, projected)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_hyperplanes(&self) -> usize {
        self.normals.len()
    }

    pub fn normal(&self, i: usize) -> &[Rational] {
        &self.normals[i]
    }

    pub fn normals(&self) -> &[Vec<Rational>] {
        &self.normals
    }

    /// Sign vector of a point.
    pub fn signs_at(&self, x: &[Rational]) -> Vec<Sign> {
        self.normals.iter().map(|f| Sign::of(&dot(f, x))).collect()
    }

    /// All feasible sign vectors in canonical (lexicographic, `+ < 0 < -`)
    /// order, by depth-first extension with prefix feasibility pruning.
    pub fn enumerate_sign_vectors(&self) -> Vec<Vec<Sign>> {
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(self.normals.len());
        self.extend_prefix(&mut prefix, None, &mut out);
        out
    }

    fn extend_prefix(
        &self,
        prefix: &mut Vec<Sign>,
        witness: Option<Vec<Rational>>,
        out: &mut Vec<Vec<Sign>>,
    ) {
        if prefix.len() == self.normals.len() {
            out.push(prefix.clone());
            return;
        }
        let k = prefix.len();
        for s in [Sign::Plus, Sign::Zero, Sign::Minus] {
            prefix.push(s);
            // A parent witness that already has the right sign on the new
            // hyperplane certifies the child prefix without an LP call.
            let inherited = witness
                .as_ref()
                .filter(|x| Sign::of(&dot(&self.normals[k], x)) == s)
                .cloned();
            let child = match inherited {
                Some(x) => Some(x),
                None => self.prefix_witness(prefix),
            };
            if child.is_some() {
                self.extend_prefix(prefix, child, out);
            }
            prefix.pop();
        }
    }

    fn prefix_witness(&self, prefix: &[Sign]) -> Option<Vec<Rational>> {
        let mut eqs = Vec::new();
        let mut strict = Vec::new();
        for (i, s) in prefix.iter().enumerate() {
            if s.is_zero() {
                eqs.push(self.normals[i].clone());
            } else {
                strict.push((self.normals[i].clone(), *s));
            }
        }
        strict_sign_witness(self.dim, &eqs, &strict)
    }

    /// Codimension of the face with the given signs: the rank of the
    /// normals it lies on.
    pub fn codim_of_signs(&self, signs: &[Sign]) -> usize {
        let zero_rows: Vec<Vec<Rational>> = signs
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_zero())
            .map(|(i, _)| self.normals[i].clone())
            .collect();
        if zero_rows.is_empty() {
            0
        } else {
            RatMatrix::from_rows(zero_rows).rank()
        }
    }
}

fn parallel(a: &[Rational], b: &[Rational]) -> bool {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return false;
            }
        }
    }
    true
}

/// A face of the arrangement: its sign vector, the codimension of its
/// supporting flat, and that flat's id in the intersection lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub signs: Vec<Sign>,
    pub codim: usize,
    pub flat: FlatId,
}

impl Face {
    pub fn is_chamber(&self) -> bool {
        self.signs.iter().all(|s| !s.is_zero())
    }

    /// Hyperplane indices the face lies on; this is the closed set of its
    /// supporting flat.
    pub fn zero_set(&self) -> Vec<usize> {
        self.signs
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn sign_string(&self) -> String {
        signs_to_string(&self.signs)
    }
}
