//! Seeded instance generators.
//!
//! Every instance is drawn from its own ChaCha8 stream (`rand_chacha`),
//! seeded with `mix64(seed + index * 0x9E3779B97F4A7C15)` where `mix64` is
//! the SplitMix64 finalizer. Output therefore depends only on
//! `(distribution, n, p_max, seed, index)` and instances can be produced in
//! any order or in parallel.
//!
//! Per-job sampling (`p1` then `p2`, job by job):
//!
//! * uniform: integer uniform on `1..=p_max`;
//! * geometric: failures before the first success, `p = 2 / (p_max + 2)`;
//! * negative binomial: failures before the 5th success, `p = 5 / (5 + p_max/2)`,
//!   sampled as a sum of five geometric draws;
//! * Poisson: `lambda = p_max / 2`.
//!
//! The three unbounded families can yield 0; those draws are clamped to 1.
//! No upper truncation is applied, `p_max` only sets the scale.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Geometric, Poisson, Uniform};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Instance, Job, Time};
use crate::select::mix64;

/// Shape parameter of the negative binomial family.
pub const NEGBIN_R: u32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Distribution {
    Uniform,
    Geometric,
    NegBinomial,
    Poisson,
    /// The full-sort family; `n` is the family parameter (2n jobs).
    WorstCase,
    /// The fixed 18-job example; `n` and `p_max` are ignored.
    Figure1,
}

impl Distribution {
    pub fn as_str(&self) -> &'static str {
        match self {
            Distribution::Uniform => "uniform",
            Distribution::Geometric => "geometric",
            Distribution::NegBinomial => "negbinomial",
            Distribution::Poisson => "poisson",
            Distribution::WorstCase => "worstcase",
            Distribution::Figure1 => "figure1",
        }
    }

    pub fn is_random(&self) -> bool {
        !matches!(self, Distribution::WorstCase | Distribution::Figure1)
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "uniform" => Distribution::Uniform,
            "geometric" => Distribution::Geometric,
            "negbinomial" | "negative-binomial" | "nb" => Distribution::NegBinomial,
            "poisson" => Distribution::Poisson,
            "worstcase" => Distribution::WorstCase,
            "figure1" => Distribution::Figure1,
            other => return Err(Error::InvalidArgument(format!("unknown distribution {other:?}"))),
        })
    }
}

/// What to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub dist: Distribution,
    pub n: usize,
    pub p_max: Time,
    pub seed: u64,
    pub count: usize,
}

impl GenSpec {
    pub fn new(dist: Distribution, n: usize, p_max: Time, seed: u64) -> Self {
        Self { dist, n, p_max, seed, count: 1 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dist != Distribution::Figure1 && self.n < 1 {
            return Err(Error::InvalidArgument("n must be >= 1".into()));
        }
        if self.dist.is_random() && self.p_max < 1 {
            return Err(Error::InvalidArgument("p_max must be >= 1".into()));
        }
        Ok(())
    }

    /// The `index`-th instance of this spec.
    pub fn instance(&self, index: u64) -> Result<Instance> {
        self.validate()?;
        match self.dist {
            Distribution::WorstCase => gen_worstcase(self.n),
            Distribution::Figure1 => Ok(figure1_instance()),
            _ => {
                let sampler = TimeSampler::new(self.dist, self.p_max)?;
                let mut rng = instance_rng(self.seed, index);
                draw_instance(&sampler, self.n, &mut rng)
            }
        }
    }

    /// Instances `0..count`.
    pub fn instances(&self) -> Result<Vec<Instance>> {
        (0..self.count as u64).map(|i| self.instance(i)).collect()
    }
}

/// Seed of the `index`-th instance stream.
pub fn instance_seed(seed: u64, index: u64) -> u64 {
    mix64(seed.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(instance_seed(seed, index))
}

/// Single processing-time sampler for one of the random families.
#[derive(Debug, Clone, Copy)]
pub enum TimeSampler {
    Uniform(Uniform<Time>),
    Geometric(Geometric),
    NegBinomial(Geometric),
    Poisson(Poisson<f64>),
}

impl TimeSampler {
    pub fn new(dist: Distribution, p_max: Time) -> Result<Self> {
        if p_max < 1 {
            return Err(Error::InvalidArgument("p_max must be >= 1".into()));
        }
        let bad = |e: &dyn fmt::Display| Error::InvalidArgument(e.to_string());
        let pm = p_max as f64;
        Ok(match dist {
            Distribution::Uniform => TimeSampler::Uniform(Uniform::new_inclusive(1, p_max).map_err(|e| bad(&e))?),
            Distribution::Geometric => TimeSampler::Geometric(Geometric::new(2.0 / (pm + 2.0)).map_err(|e| bad(&e))?),
            Distribution::NegBinomial => {
                let r = NEGBIN_R as f64;
                let p = r / (r + pm / 2.0);
                TimeSampler::NegBinomial(Geometric::new(p).map_err(|e| bad(&e))?)
            }
            Distribution::Poisson => TimeSampler::Poisson(Poisson::new(pm / 2.0).map_err(|e| bad(&e))?),
            other => return Err(Error::InvalidArgument(format!("{other} is not a random family"))),
        })
    }

    /// Raw draw before clamping (may be 0 for the unbounded families).
    pub fn sample_raw<R: Rng + ?Sized>(&self, rng: &mut R) -> Time {
        match self {
            TimeSampler::Uniform(u) => u.sample(rng),
            TimeSampler::Geometric(g) => g.sample(rng) as Time,
            TimeSampler::NegBinomial(g) => (0..NEGBIN_R).map(|_| g.sample(rng) as Time).sum(),
            TimeSampler::Poisson(p) => p.sample(rng) as Time,
        }
    }

    /// Processing time, clamped to at least 1.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Time {
        self.sample_raw(rng).max(1)
    }
}

fn draw_instance<R: Rng + ?Sized>(sampler: &TimeSampler, n: usize, rng: &mut R) -> Result<Instance> {
    let jobs = (0..n)
        .map(|_| {
            let p1 = sampler.sample(rng);
            let p2 = sampler.sample(rng);
            Job::new(p1, p2)
        })
        .collect();
    Instance::new(jobs)
}

pub fn gen_uniform(n: usize, p_max: Time, seed: u64) -> Result<Instance> {
    GenSpec::new(Distribution::Uniform, n, p_max, seed).instance(0)
}

pub fn gen_geometric(n: usize, p_max: Time, seed: u64) -> Result<Instance> {
    GenSpec::new(Distribution::Geometric, n, p_max, seed).instance(0)
}

pub fn gen_negbinomial(n: usize, p_max: Time, seed: u64) -> Result<Instance> {
    GenSpec::new(Distribution::NegBinomial, n, p_max, seed).instance(0)
}

pub fn gen_poisson(n: usize, p_max: Time, seed: u64) -> Result<Instance> {
    GenSpec::new(Distribution::Poisson, n, p_max, seed).instance(0)
}

/// The `2n`-job family whose unique optimum is the full Johnson order:
/// job `j <= n` is `(j, j + 1)`, job `j > n` is `(2n - j + 2, 2n - j + 1)`.
pub fn gen_worstcase(n: usize) -> Result<Instance> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let n = n as Time;
    let jobs = (1..=2 * n)
        .map(|j| if j <= n { Job::new(j, j + 1) } else { Job::new(2 * n - j + 2, 2 * n - j + 1) })
        .collect();
    Instance::new(jobs)
}

const FIGURE1: [(Time, Time); 18] = [
    (1, 8),
    (2, 9),
    (3, 7),
    (4, 8),
    (5, 9),
    (6, 7),
    (7, 9),
    (8, 10),
    (9, 10),
    (10, 9),
    (9, 7),
    (8, 7),
    (8, 6),
    (8, 5),
    (7, 4),
    (7, 3),
    (9, 2),
    (10, 1),
];

/// The 18-job example, already in Johnson order, with both machine totals 121.
pub fn figure1_instance() -> Instance {
    Instance::from_pairs(&FIGURE1).expect("constant instance is valid")
}

/// Empirical PMF of `draws` samples (clamped values), as `(value, count)`
/// sorted by value.
pub fn histogram(dist: Distribution, p_max: Time, draws: usize, seed: u64) -> Result<Vec<(Time, u64)>> {
    let sampler = TimeSampler::new(dist, p_max)?;
    let mut rng = instance_rng(seed, 0);
    let mut counts = std::collections::BTreeMap::new();
    for _ in 0..draws {
        *counts.entry(sampler.sample(&mut rng)).or_insert(0u64) += 1;
    }
    Ok(counts.into_iter().collect())
}
