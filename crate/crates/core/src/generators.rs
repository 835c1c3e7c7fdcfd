//! Built-in arrangement generators at desk scale.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::rational::{rat_int, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MAX_BRAID: usize = 6;
const MAX_RANDOM_N: usize = 10;
const MAX_RANDOM_DIM: usize = 5;

fn rows(entries: &[&[i64]]) -> Vec<Vec<Rational>> {
    entries
        .iter()
        .map(|r| r.iter().map(|&x| rat_int(x)).collect())
        .collect()
}

/// The lines x, y, x - y through the origin of the plane.
pub fn three_lines() -> Arrangement {
    Arrangement::build(2, rows(&[&[1, 0], &[0, 1], &[1, -1]])).expect("static input")
}

/// One point in a line: the smallest central essential arrangement.
pub fn point_on_line() -> Arrangement {
    Arrangement::build(1, rows(&[&[1]])).expect("static input")
}

/// Coordinate hyperplanes of R^dim.
pub fn boolean(dim: usize) -> Result<Arrangement> {
    if dim == 0 || dim > MAX_RANDOM_DIM {
        return Err(Error::DeskScaleExceeded(format!(
            "boolean dimension {dim} outside 1..={MAX_RANDOM_DIM}"
        )));
    }
    let normals = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { rat_int(1) } else { rat_int(0) })
                .collect()
        })
        .collect();
    Arrangement::build(dim, normals)
}

/// The braid arrangement x_i - x_j in R^m, essentialized to rank m - 1.
pub fn braid(m: usize) -> Result<Arrangement> {
    if !(2..=MAX_BRAID).contains(&m) {
        return Err(Error::DeskScaleExceeded(format!(
            "braid parameter {m} outside 2..={MAX_BRAID}"
        )));
    }
    let mut normals = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let mut f = vec![rat_int(0); m];
            f[i] = rat_int(1);
            f[j] = rat_int(-1);
            normals.push(f);
        }
    }
    Arrangement::essentialize(m, normals)
}

/// Seeded random essential arrangement with small-integer normals; rejects
/// zero or parallel normals and retries until the result is essential.
pub fn random(dim: usize, n: usize, seed: u64) -> Result<Arrangement> {
    if dim == 0 || dim > MAX_RANDOM_DIM {
        return Err(Error::DeskScaleExceeded(format!(
            "random dimension {dim} outside 1..={MAX_RANDOM_DIM}"
        )));
    }
    if n < dim || n > MAX_RANDOM_N {
        return Err(Error::DeskScaleExceeded(format!(
            "random hyperplane count {n} outside {dim}..={MAX_RANDOM_N}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..10_000 {
        let mut normals: Vec<Vec<Rational>> = Vec::with_capacity(n);
        while normals.len() < n {
            let cand: Vec<Rational> = (0..dim).map(|_| rat_int(rng.gen_range(-5..=5))).collect();
            if cand.iter().all(num_traits::Zero::is_zero) {
                continue;
            }
            let dup = normals.iter().any(|f| is_parallel(f, &cand));
            if !dup {
                normals.push(cand);
            }
        }
        match Arrangement::build(dim, normals) {
            Ok(a) => return Ok(a),
            Err(_) => continue 'attempt,
        }
    }
    Err(Error::DeskScaleExceeded(
        "random generator failed to produce an essential arrangement".into(),
    ))
}

fn is_parallel(a: &[Rational], b: &[Rational]) -> bool {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return false;
            }
        }
    }
    true
}

/// Look up a generator by CLI name.
pub fn by_name(name: &str, dim: usize, m: usize, n: usize, seed: u64) -> Result<Arrangement> {
    match name {
        "three-lines" => Ok(three_lines()),
        "point-on-line" => Ok(point_on_line()),
        "boolean" => boolean(dim),
        "braid" => braid(m),
        "random" => random(dim, n, seed),
        other => Err(Error::Parse(format!(
            "unknown generator {other:?}; expected three-lines, point-on-line, boolean, braid, or random"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::FaceComplex;

    #[test]
    fn braid_three_is_three_generic_lines() {
        let c = FaceComplex::build(braid(3).unwrap());
        assert_eq!(c.arrangement().dim(), 2);
        assert_eq!(c.n_chambers(), 6);
        assert_eq!(c.lattice().betti(), &[1, 3, 2]);
    }

    #[test]
    fn braid_four_has_24_chambers() {
        let c = FaceComplex::build(braid(4).unwrap());
        assert_eq!(c.arrangement().dim(), 3);
        assert_eq!(c.n_chambers(), 24);
        assert_eq!(c.n_faces(), 75, "ordered set partitions of 4");
    }

    #[test]
    fn boolean_counts() {
        let c = FaceComplex::build(boolean(3).unwrap());
        assert_eq!(c.n_faces(), 27);
        assert_eq!(c.n_chambers(), 8);
    }

    #[test]
    fn random_is_deterministic_and_valid() {
        let a = random(3, 5, 42).unwrap();
        let b = random(3, 5, 42).unwrap();
        assert_eq!(a.normals(), b.normals());
        let c = FaceComplex::build(a);
        assert!(c.n_chambers() >= 2 * 5);
    }

    #[test]
    fn desk_scale_limits() {
        assert!(matches!(braid(7), Err(Error::DeskScaleExceeded(_))));
        assert!(matches!(random(6, 6, 1), Err(Error::DeskScaleExceeded(_))));
        assert!(matches!(random(2, 11, 1), Err(Error::DeskScaleExceeded(_))));
        assert!(matches!(boolean(0), Err(Error::DeskScaleExceeded(_))));
    }
}
