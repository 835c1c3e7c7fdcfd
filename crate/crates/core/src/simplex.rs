//! Exact-rational linear programming and strict sign feasibility.
//!
//! `strict_sign_feasible` decides whether a sign vector is realized by some
//! point: given equality rows `a·x = 0` and strict rows `sign(b·x) = s`, it
//! maximizes a slack `t` subject to `s·(b·x) >= t` and `t <= 1`. The system
//! is homogeneous, so the optimum is either 0 (infeasible) or 1 (feasible,
//! with the optimal `x` as a strict witness).
//!
//! The solver is a dense two-phase simplex over exact rationals using
//! Bland's rule for both the entering and leaving variable, which rules out
//! cycling and guarantees termination.

use crate::rational::Rational;
use crate::sign::Sign;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        solution: Vec<Rational>,
    },
    Unbounded,
    Infeasible,
}

/// Maximize `c·z` subject to `A z = b`, `z >= 0`.
pub fn simplex_max(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m, "rhs length mismatch");
    assert!(a.iter().all(|row| row.len() == n), "constraint width mismatch");

    // Normalize to b >= 0, then append one artificial column per row so the
    // artificials form the initial basis.
    let mut t = Tableau {
        a: Vec::with_capacity(m),
        b: Vec::with_capacity(m),
        basis: (n..n + m).collect(),
        n_total: n + m,
    };
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row: Vec<Rational> = a[i]
            .iter()
            .map(|x| if flip { -x.clone() } else { x.clone() })
            .collect();
        row.extend((0..m).map(|j| {
            if j == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        }));
        t.a.push(row);
        t.b.push(if flip { -b[i].clone() } else { b[i].clone() });
    }

    // Phase 1: drive the artificial variables to zero.
    let mut phase1 = vec![Rational::zero(); n + m];
    for obj in phase1.iter_mut().skip(n) {
        *obj = -Rational::one();
    }
    t.optimize(&phase1, n + m);
    if !t.objective_value(&phase1).is_zero() {
        return LpOutcome::Infeasible;
    }
    t.evict_artificials(n);

    // Phase 2 over the original columns only.
    let mut c2: Vec<Rational> = c.to_vec();
    c2.resize(t.n_total, Rational::zero());
    if !t.optimize(&c2, n) {
        return LpOutcome::Unbounded;
    }
    let mut solution = vec![Rational::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        if bv < n {
            solution[bv] = t.b[i].clone();
        }
    }
    LpOutcome::Optimal {
        value: t.objective_value(&c2),
        solution,
    }
}

struct Tableau {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    basis: Vec<usize>,
    n_total: usize,
}

impl Tableau {
    fn objective_value(&self, c: &[Rational]) -> Rational {
        self.basis
            .iter()
            .zip(&self.b)
            .map(|(&bv, bi)| &c[bv] * bi)
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Reduced cost of column `j` for objective `c`.
    fn reduced_cost(&self, c: &[Rational], j: usize) -> Rational {
        let mut v = c[j].clone();
        for (i, &bv) in self.basis.iter().enumerate() {
            if !c[bv].is_zero() && !self.a[i][j].is_zero() {
                v -= &c[bv] * &self.a[i][j];
            }
        }
        v
    }

    /// Bland-rule simplex on columns `< allowed`. Returns false on
    /// unboundedness.
    fn optimize(&mut self, c: &[Rational], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed)
                .filter(|j| !self.basis.contains(j))
                .find(|&j| self.reduced_cost(c, j).is_positive());
            let Some(col) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.a.len() {
                if self.a[i][col].is_positive() {
                    let ratio = &self.b[i] / &self.a[i][col];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = best else {
                return false;
            };
            self.pivot(row, col);
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.a[row][col].recip();
        for x in self.a[row].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.b[row] *= &inv;
        for i in 0..self.a.len() {
            if i == row || self.a[i][col].is_zero() {
                continue;
            }
            let f = std::mem::replace(&mut self.a[i][col], Rational::zero());
            for j in 0..self.n_total {
                if !self.a[row][j].is_zero() && j != col {
                    let t = &self.a[row][j] * &f;
                    self.a[i][j] -= t;
                }
            }
            let t = &self.b[row] * &f;
            self.b[i] -= t;
        }
        self.basis[row] = col;
    }

    /// Pivot basic artificials (columns >= `n_real`) out of the basis; rows
    /// that cannot be pivoted are redundant and get dropped.
    fn evict_artificials(&mut self, n_real: usize) {
        let mut i = 0;
        while i < self.a.len() {
            if self.basis[i] >= n_real {
                debug_assert!(self.b[i].is_zero(), "positive artificial after phase 1");
                match (0..n_real).find(|&j| !self.a[i][j].is_zero()) {
                    Some(col) => self.pivot(i, col),
                    None => {
                        self.a.remove(i);
                        self.b.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }
}

/// Does a point `x` exist with `a·x = 0` for every equality row and
/// `sign(b·x) = s` for every strict row?
pub fn strict_sign_feasible(
    dim: usize,
    equalities: &[Vec<Rational>],
    strict: &[(Vec<Rational>, Sign)],
) -> bool {
    strict_sign_witness(dim, equalities, strict).is_some()
}

/// Like [`strict_sign_feasible`] but returns a witness point satisfying all
/// the strict inequalities with margin at least 1.
pub fn strict_sign_witness(
    dim: usize,
    equalities: &[Vec<Rational>],
    strict: &[(Vec<Rational>, Sign)],
) -> Option<Vec<Rational>> {
    debug_assert!(strict.iter().all(|(_, s)| !s.is_zero()));
    // Columns: x+ (dim), x- (dim), t, one surplus per strict row.
    let n = 2 * dim + 1 + strict.len();
    let t_col = 2 * dim;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for eq in equalities {
        let mut row = vec![Rational::zero(); n];
        for (j, x) in eq.iter().enumerate() {
            row[j] = x.clone();
            row[dim + j] = -x.clone();
        }
        rows.push(row);
        rhs.push(Rational::zero());
    }
    for (k, (v, s)) in strict.iter().enumerate() {
        // s·(v·x) - t - u_k = 0, stored negated so the surplus column is +1.
        let sgn = if *s == Sign::Plus {
            Rational::one()
        } else {
            -Rational::one()
        };
        let mut row = vec![Rational::zero(); n];
        for (j, x) in v.iter().enumerate() {
            row[j] = -(&sgn * x);
            row[dim + j] = &sgn * x;
        }
        row[t_col] = Rational::one();
        row[t_col + 1 + k] = Rational::one();
        rows.push(row);
        rhs.push(Rational::zero());
    }
    // t <= 1 keeps the homogeneous program bounded.
    let mut bound = vec![Rational::zero(); n];
    bound[t_col] = Rational::one();
    rows.push(bound);
    rhs.push(Rational::one());

    let mut obj = vec![Rational::zero(); n];
    obj[t_col] = Rational::one();

    match simplex_max(&rows, &rhs, &obj) {
        LpOutcome::Optimal { value, solution } if value.is_positive() => {
            let x: Vec<Rational> = (0..dim)
                .map(|j| &solution[j] - &solution[dim + j])
                .collect();
            debug_assert!(equalities.iter().all(|eq| dot(eq, &x).is_zero()));
            debug_assert!(strict.iter().all(|(v, s)| Sign::of(&dot(v, &x)) == *s));
            Some(x)
        }
        _ => None,
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .fold(Rational::zero(), |acc, x| acc + x)
}
