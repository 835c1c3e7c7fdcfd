//! JSON wire formats.
//!
//! Rationals travel as strings (`"p/q"` or `"p"`), faces as compact sign
//! strings over `+0-`, flats as sorted hyperplane index lists.

use crate::arrangement::Arrangement;
use crate::complex::FaceComplex;
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::sign::signs_from_str;
use crate::spectra::{SpectrumReport, WeightAssignment};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Arrangement file: `{"dim": 2, "hyperplanes": [["1","0"], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrangementFile {
    pub dim: usize,
    pub hyperplanes: Vec<Vec<String>>,
}

impl ArrangementFile {
    pub fn from_arrangement(a: &Arrangement) -> Self {
        ArrangementFile {
            dim: a.dim(),
            hyperplanes: a
                .normals()
                .iter()
                .map(|f| f.iter().map(format_rational).collect())
                .collect(),
        }
    }

    pub fn to_arrangement(&self) -> Result<Arrangement> {
        let normals: Result<Vec<Vec<Rational>>> = self
            .hyperplanes
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect())
            .collect();
        Arrangement::build(self.dim, normals?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("arrangement file: {e}")))
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Weights input: either an explicit map from face sign strings to
/// rational strings, or a mode selector.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightsSpec {
    Mode {
        mode: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
    Map(BTreeMap<String, String>),
}

impl WeightsSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("weights spec: {e}")))
    }

    /// Resolve against a face complex; `fallback_seed` feeds the random
    /// mode when the file does not carry its own seed.
    pub fn resolve(
        &self,
        complex: &FaceComplex,
        fallback_seed: Option<u64>,
    ) -> Result<WeightAssignment> {
        match self {
            WeightsSpec::Mode { mode, seed } => match mode.as_str() {
                "uniform" => Ok(WeightAssignment::uniform(complex)),
                "random" => {
                    let seed = seed.or(fallback_seed).ok_or_else(|| {
                        Error::Parse("random weights need a seed".into())
                    })?;
                    Ok(WeightAssignment::random(complex, seed, 1000, 1000))
                }
                other => Err(Error::Parse(format!("unknown weights mode {other:?}"))),
            },
            WeightsSpec::Map(map) => {
                let mut weights = vec![Rational::from_integer(0.into()); complex.n_faces()];
                let mut seen = vec![false; complex.n_faces()];
                for (face, value) in map {
                    let signs = signs_from_str(face)?;
                    let id = complex
                        .face_id(&signs)
                        .ok_or_else(|| Error::Parse(format!("unknown face {face:?}")))?;
                    weights[id] = parse_rational(value)?;
                    seen[id] = true;
                }
                if let Some(missing) = seen.iter().position(|&s| !s) {
                    return Err(Error::Parse(format!(
                        "weight map misses face {}",
                        complex.face(missing).sign_string()
                    )));
                }
                WeightAssignment::new(weights)
            }
        }
    }
}

/// Spectrum output: per-flat eigen data in canonical chamber order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumFile {
    pub chambers: Vec<String>,
    pub packages: Vec<SpectrumPackageFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumPackageFile {
    /// Hyperplane index set of the flat.
    pub flat: Vec<usize>,
    pub lambda: String,
    pub multiplicity: usize,
    /// Flat flags that produced the kept eigenvectors, as index sets.
    pub flags: Vec<Vec<Vec<usize>>>,
    pub eigenvectors: Vec<Vec<String>>,
}

impl SpectrumFile {
    pub fn from_report(complex: &FaceComplex, report: &SpectrumReport) -> Self {
        let chambers = complex
            .chambers()
            .iter()
            .map(|&c| complex.face(c).sign_string())
            .collect();
        let packages = report
            .packages
            .iter()
            .map(|p| SpectrumPackageFile {
                flat: complex.lattice().flat(p.flat).contains.clone(),
                lambda: format_rational(&p.lambda),
                multiplicity: p.multiplicity,
                flags: p
                    .spanning_flags
                    .iter()
                    .map(|f| {
                        f.flats
                            .iter()
                            .map(|&x| complex.lattice().flat(x).contains.clone())
                            .collect()
                    })
                    .collect(),
                eigenvectors: p
                    .basis
                    .iter()
                    .map(|v| v.coeffs.iter().map(format_rational).collect())
                    .collect(),
            })
            .collect();
        SpectrumFile { chambers, packages }
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("spectrum file: {e}")))
    }
}
