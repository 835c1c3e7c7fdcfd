//! Dense exact-rational matrices: rank, nullspace, determinant.
//!
//! Rank and determinant run fraction-free (Bareiss) elimination on a
//! denominator-cleared integer copy, which keeps intermediate entries to
//! minor-sized integers instead of letting gcd reduction fight quadratic
//! blowup. The nullspace uses plain Gauss–Jordan over the rationals, where
//! `Ratio` reduces to lowest terms after every pivot operation.

use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Index, IndexMut};

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: Vec<Vec<Rational>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        assert!(cols.iter().all(|col| col.len() == r), "ragged columns");
        let mut m = RatMatrix::zeros(r, c);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, x) in col.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .fold(Rational::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    /// `self - lambda * I`; square matrices only.
    pub fn minus_scaled_identity(&self, lambda: &Rational) -> RatMatrix {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let mut out = self.clone();
        for i in 0..self.rows {
            let d = &out[(i, i)] - lambda;
            out[(i, i)] = d;
        }
        out
    }

    /// Clear denominators row by row, returning integer rows together with
    /// the multiplier applied to each row.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut out = Vec::with_capacity(self.rows);
        let mut mults = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut l = BigInt::one();
            for x in self.row(i) {
                l = l.lcm(x.denom());
            }
            let row = self
                .row(i)
                .iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect();
            out.push(row);
            mults.push(l);
        }
        (out, mults)
    }

    /// Exact rank via fraction-free elimination with column pivoting.
    pub fn rank(&self) -> usize {
        let (mut a, _) = self.integer_rows();
        bareiss_rank(&mut a, self.cols)
    }

    /// Exact determinant of a square matrix.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        let (mut a, mults) = self.integer_rows();
        let mut prev = BigInt::one();
        let mut sign = 1i64;
        for k in 0..n {
            // The pivot must sit on the diagonal; a missing pivot means the
            // determinant is zero.
            let pivot = (k..n).find(|&i| !a[i][k].is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => return Rational::zero(),
            };
            if pivot != k {
                a.swap(pivot, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let scale = mults.into_iter().fold(BigInt::one(), |acc, m| acc * m);
        Rational::new(BigInt::from(sign) * prev, scale)
    }

    /// Express each target column in the given basis columns. Returns the
    /// coefficient matrix `C` with `basis * C = targets`, or `None` if some
    /// target lies outside the span or the basis is dependent.
    // Index loops: the elimination reads the pivot row while writing others.
    #[allow(clippy::needless_range_loop)]
    pub fn solve_in_basis(basis: &[Vec<Rational>], targets: &[Vec<Rational>]) -> Option<RatMatrix> {
        let k = basis.len();
        let t = targets.len();
        let dim = basis.first().map_or(0, Vec::len);
        assert!(targets.iter().all(|v| v.len() == dim), "ambient mismatch");
        // Augmented system [B | T], eliminated over the rationals.
        let mut aug = RatMatrix::zeros(dim, k + t);
        for (j, col) in basis.iter().enumerate() {
            for i in 0..dim {
                aug[(i, j)] = col[i].clone();
            }
        }
        for (j, col) in targets.iter().enumerate() {
            for i in 0..dim {
                aug[(i, k + j)] = col[i].clone();
            }
        }
        let mut a: Vec<Vec<Rational>> = (0..dim).map(|i| aug.row(i).to_vec()).collect();
        let mut pivot_cols = Vec::new();
        let mut r = 0usize;
        for col in 0..k {
            let Some(p) = (r..dim).find(|&i| !a[i][col].is_zero()) else {
                return None; // dependent basis
            };
            a.swap(r, p);
            let inv = a[r][col].recip();
            for x in a[r].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
            for i in 0..dim {
                if i != r && !a[i][col].is_zero() {
                    let f = std::mem::replace(&mut a[i][col], Rational::zero());
                    for j in col + 1..k + t {
                        if !a[r][j].is_zero() {
                            let d = &a[r][j] * &f;
                            a[i][j] -= d;
                        }
                    }
                }
            }
            pivot_cols.push(col);
            r += 1;
        }
        // Rows below the pivots must vanish on every target column.
        for row in a.iter().skip(r) {
            if row[k..].iter().any(|x| !x.is_zero()) {
                return None;
            }
        }
        let mut out = RatMatrix::zeros(k, t);
        for (i, _) in pivot_cols.iter().enumerate() {
            for j in 0..t {
                out[(i, j)] = a[i][k + j].clone();
            }
        }
        Some(out)
    }

    /// Basis of the right nullspace; every returned `v` satisfies
    /// `self * v = 0` exactly, and the basis has `cols - rank` elements.
    #[allow(clippy::needless_range_loop)]
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut a: Vec<Vec<Rational>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivot_cols = Vec::new();
        let mut r = 0usize;
        for col in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][col].recip();
            for x in a[r].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
            for i in 0..self.rows {
                if i != r && !a[i][col].is_zero() {
                    let f = std::mem::replace(&mut a[i][col], Rational::zero());
                    for j in col + 1..self.cols {
                        if !a[r][j].is_zero() {
                            let t = &a[r][j] * &f;
                            a[i][j] -= t;
                        }
                    }
                }
            }
            pivot_cols.push(col);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivot_cols {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (i, &p) in pivot_cols.iter().enumerate() {
                if p < free {
                    v[p] = -a[i][free].clone();
                }
            }
            debug_assert!(self.mul_vec(&v).iter().all(Rational::is_zero));
            basis.push(v);
        }
        basis
    }
}

/// Fraction-free echelon reduction of integer rows; returns the rank.
fn bareiss_rank(a: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in col + 1..cols {
                let num = &a[r][col] * &a[i][j] - &a[i][col] * &a[r][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                a[i][j] = num / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        r += 1;
    }
    r
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Incrementally maintained row space for greedy independence filtering.
/// `insert` returns true when the vector enlarges the span.
pub struct RowSpace {
    cols: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(cols: usize) -> Self {
        RowSpace {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= y * &f;
                    }
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let inv = v[p].recip();
                for x in v.iter_mut() {
                    if !x.is_zero() {
                        *x *= &inv;
                    }
                }
                self.rows.push(v);
                self.pivots.push(p);
                true
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RatMatrix::identity(2).rank(), 2);
        assert_eq!(RatMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert!(RatMatrix::identity(2).nullspace().is_empty());
        let ns = m(&[&[1, 1]]).nullspace();
        assert_eq!(ns.len(), 1);
        // Proportional to (1, -1).
        let v = &ns[0];
        assert_eq!(&v[0] + &v[1], Rational::zero());
        assert!(!v[0].is_zero());
    }

    #[test]
    fn nullspace_is_exact_and_complements_rank() {
        let a = m(&[&[2, 4, 6, 8], &[1, 2, 3, 4], &[0, 0, 5, 5]]);
        let ns = a.nullspace();
        assert_eq!(a.rank() + ns.len(), a.cols());
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn det_basics() {
        assert_eq!(m(&[&[1, 2], &[3, 4]]).det(), rat(-2, 1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), Rational::zero());
        let frac = RatMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 4), rat(1, 5)],
        ]);
        // 1/10 - 1/12 = 1/60
        assert_eq!(frac.det(), rat(1, 60));
        assert_eq!(RatMatrix::zeros(0, 0).det(), Rational::one());
    }

    #[test]
    fn det_with_row_swap() {
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), rat(-1, 1));
        assert_eq!(m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]).det(), rat(-1, 1));
    }

    #[test]
    fn solve_in_basis_coordinates() {
        let b1 = vec![rat(1, 1), rat(0, 1), rat(1, 1)];
        let b2 = vec![rat(0, 1), rat(1, 1), rat(1, 1)];
        let t = vec![rat(2, 1), rat(3, 1), rat(5, 1)]; // 2 b1 + 3 b2
        let c = RatMatrix::solve_in_basis(&[b1.clone(), b2.clone()], &[t]).unwrap();
        assert_eq!(c[(0, 0)], rat(2, 1));
        assert_eq!(c[(1, 0)], rat(3, 1));
        // Outside the span.
        let out = vec![rat(0, 1), rat(0, 1), rat(1, 1)];
        assert!(RatMatrix::solve_in_basis(&[b1.clone(), b2.clone()], &[out]).is_none());
        // Dependent basis.
        assert!(RatMatrix::solve_in_basis(&[b1.clone(), b1], &[b2]).is_none());
    }

    #[test]
    fn row_space_greedy_filter() {
        let mut rs = RowSpace::new(3);
        assert!(rs.insert(&[rat(1, 1), rat(2, 1), rat(3, 1)]));
        assert!(!rs.insert(&[rat(2, 1), rat(4, 1), rat(6, 1)]));
        assert!(rs.insert(&[rat(0, 1), rat(1, 1), rat(1, 1)]));
        assert_eq!(rs.rank(), 2);
    }
}
