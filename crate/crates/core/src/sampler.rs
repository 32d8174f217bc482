//! Deterministic, seeded generation of rational configurations by rejection,
//! and exhaustive small-grid censuses.
//!
//! The generator is pinned to ChaCha8 seeded from a 64-bit integer, and the
//! draw order is frozen: for each point, real numerator, real denominator,
//! imaginary numerator, imaginary denominator, points in order. Fixing both
//! is what makes golden outputs reproducible across releases, not just the
//! seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Rational};
use crate::geometry::{
    in_complement, in_modified_complement, is_distinct, Configuration,
};

/// Identifier of the pinned pseudo-random generator, recorded in outputs.
pub const GENERATOR_ID: &str = "chacha8";

/// Default cap on the number of tuples a census may enumerate.
pub const DEFAULT_CENSUS_CAP: u128 = 5_000_000;

/// Which predicate accepted samples must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SampleMode {
    /// Pairwise-distinct points.
    #[serde(rename = "conf")]
    Conf,
    /// Pairwise-distinct `t`-subset sums.
    #[serde(rename = "M")]
    Complement,
    /// Distinct `s`-subset sums for every `s <= t`.
    #[serde(rename = "M_prime")]
    ModifiedComplement,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SamplerSpec {
    pub k: usize,
    pub t: usize,
    pub mode: SampleMode,
    pub seed: u64,
    /// Numerators are drawn from `[-B, B]` and denominators from `[1, B]`.
    pub coordinate_bound: i64,
    pub max_rejections: u64,
}

impl SamplerSpec {
    fn validate(&self) -> Result<()> {
        if self.k < 1 || self.t < 1 {
            return Err(Error::InvalidParameter(
                "sampler requires k >= 1 and t >= 1".into(),
            ));
        }
        if self.coordinate_bound < 1 {
            return Err(Error::InvalidParameter(
                "coordinate bound must be at least 1".into(),
            ));
        }
        if self.max_rejections < 1 {
            return Err(Error::InvalidParameter(
                "max_rejections must be at least 1".into(),
            ));
        }
        Ok(())
    }

    fn accepts(&self, configuration: &Configuration) -> Result<bool> {
        match self.mode {
            SampleMode::Conf => Ok(is_distinct(configuration)),
            SampleMode::Complement => in_complement(self.t, configuration),
            SampleMode::ModifiedComplement => in_modified_complement(self.t, configuration),
        }
    }
}

fn draw_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let numer = rng.gen_range(-bound..=bound);
    let denom = rng.gen_range(1..=bound);
    Rational::new(numer.into(), denom.into()).expect("denominator is positive")
}

/// Draws one raw configuration without any predicate, advancing the stream.
pub fn draw_configuration(rng: &mut ChaCha8Rng, k: usize, bound: i64) -> Configuration {
    let points = (0..k)
        .map(|_| {
            let re = draw_rational(rng, bound);
            let im = draw_rational(rng, bound);
            GaussianRational::new(re, im)
        })
        .collect();
    Configuration::new(points).expect("k >= 1")
}

/// Draws exactly `count` configurations satisfying the spec's predicate, by
/// rejection from the seeded stream. Each accepted sample may consume at most
/// `max_rejections` attempts; the excluded set is a finite union of
/// hyperplanes, so exhaustion only ever happens for tiny coordinate bounds.
pub fn sample(spec: &SamplerSpec, count: usize) -> Result<Vec<Configuration>> {
    spec.validate()?;
    if count < 1 {
        return Err(Error::InvalidParameter("sample count must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut attempts: u64 = 0;
        loop {
            attempts += 1;
            let candidate = draw_configuration(&mut rng, spec.k, spec.coordinate_bound);
            if spec.accepts(&candidate)? {
                out.push(candidate);
                break;
            }
            if attempts >= spec.max_rejections {
                return Err(Error::SamplerExhausted {
                    rejections: attempts,
                });
            }
        }
    }
    Ok(out)
}

/// Counts ordered `k`-tuples over the grid and how many have pairwise
/// distinct `t`-subset sums. The grid size is capped: `|grid|^k` may not
/// exceed `cap`.
pub fn grid_census(
    k: usize,
    t: usize,
    grid: &[GaussianRational],
    cap: u128,
) -> Result<(u128, u128)> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("census grid must be nonempty".into()));
    }
    if k < 1 || t < 1 {
        return Err(Error::InvalidParameter(
            "census requires k >= 1 and t >= 1".into(),
        ));
    }
    // the grid is a set: drop repeated entries, keeping first occurrences
    let mut grid: Vec<&GaussianRational> = grid.iter().collect();
    let mut seen = std::collections::HashSet::new();
    grid.retain(|p| seen.insert(*p));
    let mut size: u128 = 1;
    for _ in 0..k {
        size = size.saturating_mul(grid.len() as u128);
        if size > cap {
            return Err(Error::CensusCapExceeded { size, cap });
        }
    }

    let mut members: u128 = 0;
    let mut odometer = vec![0usize; k];
    loop {
        let configuration = Configuration::new(
            odometer.iter().map(|&i| grid[i].clone()).collect(),
        )?;
        if in_complement(t, &configuration)? {
            members += 1;
        }
        // advance the odometer
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok((size, members));
            }
            pos -= 1;
            odometer[pos] += 1;
            if odometer[pos] < grid.len() {
                break;
            }
            odometer[pos] = 0;
        }
    }
}
