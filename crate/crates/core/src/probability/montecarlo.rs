//! Sampling estimates of the bound components.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Alpha;
use crate::error::{Error, Result};
use crate::generators::gen_uniform;
use crate::linear::find_k_a;
use crate::partition::Partition;

/// Two-sided 99% normal quantile.
const Z99: f64 = 2.5758293035489;

pub const MIN_TRIALS: u64 = 1000;

/// Empirical frequency with a 99% Wilson score interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub successes: u64,
    pub trials: u64,
    pub freq: f64,
    pub lo: f64,
    pub hi: f64,
}

impl Estimate {
    pub fn new(successes: u64, trials: u64) -> Self {
        let n = trials as f64;
        let p = successes as f64 / n;
        let z2 = Z99 * Z99;
        let denom = 1.0 + z2 / n;
        let centre = (p + z2 / (2.0 * n)) / denom;
        let half = Z99 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
        Self { successes, trials, freq: p, lo: (centre - half).max(0.0), hi: (centre + half).min(1.0) }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Separate estimates of `P1*`, `P2*` and the joint event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McCheck {
    pub p1: Estimate,
    pub p2: Estimate,
    pub joint: Estimate,
}

fn check_trials(trials: u64) -> Result<()> {
    if trials < MIN_TRIALS {
        return Err(Error::InvalidArgument(format!("at least {MIN_TRIALS} trials required (got {trials})")));
    }
    Ok(())
}

/// Samples the restricted model directly: `n` jobs each hit the window
/// with probability `alpha(1 - alpha)` (two independent uniforms straddling
/// `alpha`), and `k_a` surpluses uniform on `{0..floor((1 - alpha) n)}`.
pub fn monte_carlo_check(n: usize, k_a: usize, alpha: Alpha, trials: u64, seed: u64) -> Result<McCheck> {
    check_trials(trials)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = alpha.value();
    let p_max = n as u64;
    let m = alpha.complement_num() as u128 * p_max as u128 / alpha.den() as u128;
    let m = m as u64;
    let (mut s1, mut s2, mut sj) = (0u64, 0u64, 0u64);
    for _ in 0..trials {
        let mut hits = 0usize;
        for _ in 0..n {
            let u1: f64 = rng.random();
            let u2: f64 = rng.random();
            if u1 < a && u2 >= a {
                hits += 1;
            }
        }
        let e1 = hits >= k_a;
        let sum: u64 = (0..k_a).map(|_| rng.random_range(0..=m)).sum();
        let e2 = sum >= p_max;
        s1 += e1 as u64;
        s2 += e2 as u64;
        sj += (e1 && e2) as u64;
    }
    Ok(McCheck {
        p1: Estimate::new(s1, trials),
        p2: Estimate::new(s2, trials),
        joint: Estimate::new(sj, trials),
    })
}

/// Frequency with which a uniform instance on `{1..n}` has a critical
/// A-prefix of at most `k_a` jobs.
pub fn pipeline_frequency(n: usize, k_a: usize, trials: u64, seed: u64) -> Result<Estimate> {
    check_trials(trials)?;
    let mut ok = 0u64;
    for t in 0..trials {
        let inst = gen_uniform(n, n as i64, seed.wrapping_add(t))?;
        let part = Partition::new(&inst);
        if find_k_a(&part, &inst).is_some_and(|c| c.k_a <= k_a) {
            ok += 1;
        }
    }
    Ok(Estimate::new(ok, trials))
}
