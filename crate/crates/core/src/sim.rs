//! Seeded Monte Carlo simulation of the chamber walk.
//!
//! Steps sample a face from the normalized weights and multiply it onto the
//! current chamber. Sampling draws one uniform `u64` from a ChaCha8 stream
//! (seedable, portable, documented algorithm) and compares it against
//! cumulative thresholds `floor(cum_k * 2^64)` computed exactly from the
//! rational weights, so there is no floating-point bias and ties at table
//! boundaries resolve deterministically.

use crate::algebra::ChamberVector;
use crate::complex::{FaceComplex, FaceId};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::spectra::WeightAssignment;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Cumulative sampling table over the canonical face order.
pub struct FaceSampler {
    thresholds: Vec<u128>,
}

impl FaceSampler {
    /// Requires probability weights (sum exactly 1).
    pub fn new(w: &WeightAssignment) -> Result<FaceSampler> {
        if !w.is_probability() {
            return Err(Error::InvalidWeights(
                "sampler needs weights summing to 1; call normalized() first".into(),
            ));
        }
        let two64 = BigInt::one() << 64;
        let mut acc = Rational::zero();
        let mut thresholds = Vec::with_capacity(w.len());
        for wf in w.weights() {
            acc += wf;
            // floor(acc * 2^64), exact.
            let scaled: BigInt = (acc.numer() * &two64) / acc.denom();
            thresholds.push(scaled.to_u128().expect("fits below 2^64"));
        }
        debug_assert_eq!(*thresholds.last().unwrap(), 1u128 << 64);
        Ok(FaceSampler { thresholds })
    }

    pub fn sample(&self, draw: u64) -> FaceId {
        let r = draw as u128;
        self.thresholds.partition_point(|&t| t <= r)
    }
}

/// Walk state: the current chamber plus step count.
#[derive(Clone, Debug)]
pub struct WalkState {
    pub current: FaceId,
    pub steps: u64,
}

impl WalkState {
    pub fn start(complex: &FaceComplex) -> WalkState {
        WalkState {
            current: complex.chambers()[0],
            steps: 0,
        }
    }
}

/// One step: sample a face, multiply it onto the current chamber.
pub fn step(
    complex: &FaceComplex,
    sampler: &FaceSampler,
    rng: &mut ChaCha8Rng,
    state: &mut WalkState,
) {
    let f = sampler.sample(rng.gen::<u64>());
    state.current = complex.product(f, state.current);
    state.steps += 1;
}

/// Occupancy counts per chamber (canonical order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalDistribution {
    pub counts: Vec<u64>,
    pub total: u64,
}

/// Run a single chain for `steps` steps, counting occupancy after
/// `burn_in`. Deterministic for a fixed seed.
pub fn run(
    complex: &FaceComplex,
    w: &WeightAssignment,
    steps: u64,
    burn_in: u64,
    seed: u64,
) -> Result<EmpiricalDistribution> {
    if steps <= burn_in {
        return Err(Error::InvalidWeights(format!(
            "steps {steps} must exceed burn-in {burn_in}"
        )));
    }
    let sampler = FaceSampler::new(&w.normalized())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = WalkState::start(complex);
    let mut counts = vec![0u64; complex.n_chambers()];
    for i in 0..steps {
        step(complex, &sampler, &mut rng, &mut state);
        if i >= burn_in {
            let pos = complex
                .chamber_position(state.current)
                .expect("walk stays on chambers");
            counts[pos] += 1;
        }
    }
    Ok(EmpiricalDistribution {
        counts,
        total: steps - burn_in,
    })
}

/// Exact total-variation distance between an empirical distribution and an
/// exact probability vector on the chambers.
pub fn tv_distance(emp: &EmpiricalDistribution, exact: &ChamberVector) -> Result<Rational> {
    if emp.counts.len() != exact.coeffs.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} empirical bins vs {} chambers",
            emp.counts.len(),
            exact.coeffs.len()
        )));
    }
    let total = Rational::from_integer(emp.total.into());
    let mut acc = Rational::zero();
    for (c, q) in emp.counts.iter().zip(&exact.coeffs) {
        let freq = Rational::from_integer((*c).into()) / &total;
        let diff = freq - q;
        acc += diff.abs();
    }
    Ok(acc / Rational::from_integer(2.into()))
}

/// Sample `n` single steps out of a fixed chamber and tally the landing
/// chambers; the expected distribution is column `from` of K / lambda_W.
pub fn one_step_frequencies(
    complex: &FaceComplex,
    w: &WeightAssignment,
    from: FaceId,
    n: u64,
    seed: u64,
) -> Result<EmpiricalDistribution> {
    let sampler = FaceSampler::new(&w.normalized())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; complex.n_chambers()];
    for _ in 0..n {
        let f = sampler.sample(rng.gen::<u64>());
        let to = complex.product(f, from);
        counts[complex.chamber_position(to).expect("chamber")] += 1;
    }
    Ok(EmpiricalDistribution { counts, total: n })
}

/// Pearson chi-square statistic of observed counts against exact expected
/// probabilities; cells with zero probability must hold zero counts.
/// Returns the statistic and the degrees of freedom.
pub fn chi_square(observed: &EmpiricalDistribution, expected: &[Rational]) -> Result<(f64, usize)> {
    if observed.counts.len() != expected.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} observed bins vs {} expected",
            observed.counts.len(),
            expected.len()
        )));
    }
    let mut stat = 0.0f64;
    let mut cells = 0usize;
    for (obs, p) in observed.counts.iter().zip(expected) {
        if p.is_zero() {
            if *obs != 0 {
                return Err(Error::DimensionMismatch(
                    "observed mass in a zero-probability cell".into(),
                ));
            }
            continue;
        }
        cells += 1;
        let e = crate::rational::to_f64(p) * observed.total as f64;
        let d = *obs as f64 - e;
        stat += d * d / e;
    }
    Ok((stat, cells.saturating_sub(1)))
}

/// Upper-tail p-value of the chi-square statistic.
pub fn chi_square_p_value(stat: f64, df: usize) -> f64 {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    if df == 0 {
        return 1.0;
    }
    let dist = ChiSquared::new(df as f64).expect("positive dof");
    1.0 - dist.cdf(stat)
}
