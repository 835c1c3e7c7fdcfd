//! Sign values and sign vectors.
//!
//! A face of a central arrangement is encoded by one sign per hyperplane.
//! The derived `Ord` gives the canonical coordinate order `+ < 0 < -`, so
//! lexicographic comparison of sign vectors is the canonical face order used
//! throughout the crate.

use crate::error::{Error, Result};
use crate::rational::Rational;
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Zero,
    Minus,
}

impl Sign {
    pub fn of(x: &Rational) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x > &Rational::zero() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Zero => Sign::Zero,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Zero => '0',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Result<Sign> {
        match c {
            '+' => Ok(Sign::Plus),
            '0' => Ok(Sign::Zero),
            '-' => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("invalid sign character {other:?}"))),
        }
    }
}

/// Render a sign vector as its compact string form, e.g. `"+0-"`.
pub fn signs_to_string(signs: &[Sign]) -> String {
    signs.iter().map(|s| s.as_char()).collect()
}

/// Parse a compact sign string over the alphabet `+0-`.
pub fn signs_from_str(s: &str) -> Result<Vec<Sign>> {
    s.chars().map(Sign::from_char).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_coordinate_order() {
        assert!(Sign::Plus < Sign::Zero);
        assert!(Sign::Zero < Sign::Minus);
    }

    #[test]
    fn string_round_trip() {
        let v = signs_from_str("+0-").unwrap();
        assert_eq!(v, vec![Sign::Plus, Sign::Zero, Sign::Minus]);
        assert_eq!(signs_to_string(&v), "+0-");
        assert!(signs_from_str("+x").is_err());
    }

    #[test]
    fn opposite_is_involutive() {
        for s in [Sign::Plus, Sign::Zero, Sign::Minus] {
            assert_eq!(s.opposite().opposite(), s);
        }
    }
}
