//! Distribution of a sum of `k` i.i.d. uniform surpluses `{0..p'}`.
//!
//! `P(j, g)` is the probability that the first `j` surpluses sum to `g`:
//! `P(0, 0) = 1` and `P(j, g) = w * sum_{i=0..p'} P(j-1, g-i)` with
//! `w = 1 / (p' + 1)`. Only `g < cap` is ever stored; a sliding window
//! keeps each level at O(cap).

use super::{Alpha, Tail};

/// Rule turning `(1 - alpha) * p_max` into the surplus support.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PPrime {
    /// `p' = floor((1 - alpha) * p_max)`; a proper distribution.
    #[default]
    Floor,
    /// Integer support `0..=floor(p')` but weight `1 / (p' + 1)` with the
    /// real-valued `p'`, and `P2* = 1 - complement`. The per-step mass
    /// `(floor(p') + 1) / (p' + 1)` is below one whenever `p'` is fractional,
    /// so this overstates `P2*` slightly.
    Real,
}

impl std::str::FromStr for PPrime {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> crate::error::Result<Self> {
        match s {
            "floor" => Ok(PPrime::Floor),
            "real" => Ok(PPrime::Real),
            other => Err(crate::error::Error::InvalidArgument(format!("unknown p' rule {other:?}"))),
        }
    }
}

/// `sum_{g < cap} P(k, g)` for support `0..=m` with per-value weight `w`.
fn mass_below(k: usize, m: u64, w: f64, cap: u64) -> f64 {
    if cap == 0 {
        return 0.0;
    }
    let cap = cap as usize;
    let m = m as usize;
    let mut prev = vec![0.0f64; cap];
    let mut cur = vec![0.0f64; cap];
    prev[0] = 1.0;
    for _ in 0..k {
        let mut window = 0.0f64;
        for g in 0..cap {
            window += prev[g];
            if g > m {
                window -= prev[g - m - 1];
            }
            cur[g] = w * window;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev.iter().sum()
}

/// `(Pr(sum >= p_max), Pr(sum < p_max))` for `k` surpluses uniform on
/// `{0..m}` with per-value weight `w`.
///
/// The tail is obtained directly through the reflection `d -> m - d`:
/// `Pr(sum >= p_max) = Pr(sum' <= k*m - p_max)`.
fn tail_pair(p_max: u64, k: usize, m: u64, w: f64) -> Tail {
    let complement = mass_below(k, m, w, p_max);
    let top = k as u64 * m;
    let tail = if top < p_max { 0.0 } else { mass_below(k, m, w, top - p_max + 1) };
    Tail { tail, complement }
}

/// `P2*` for an explicit integer support `{0..p_prime}`.
pub fn p2_star_support(p_max: u64, k_a: usize, p_prime: u64) -> Tail {
    tail_pair(p_max, k_a, p_prime, 1.0 / (p_prime as f64 + 1.0))
}

/// `P2* = Pr(sum of k_a surpluses >= p_max)` with `p'` from `alpha` and `rule`,
/// and its complement `sum_{g < p_max} P(k_a, g)`.
pub fn p2_star(p_max: u64, k_a: usize, alpha: Alpha, rule: PPrime) -> Tail {
    p2_star_with_defect(p_max, k_a, alpha, rule).0
}

/// As [`p2_star`], plus the value used for `1 - P2*`.
///
/// Under [`PPrime::Real`] the weights do not sum to one, so the success
/// probability is taken literally as `1 - complement`; the reflected tail
/// would not agree with it.
pub(crate) fn p2_star_with_defect(p_max: u64, k_a: usize, alpha: Alpha, rule: PPrime) -> (Tail, f64) {
    let scaled = alpha.complement_num() as u128 * p_max as u128;
    let m = (scaled / alpha.den() as u128) as u64;
    match rule {
        PPrime::Floor => {
            let t = p2_star_support(p_max, k_a, m);
            (t, t.complement)
        }
        PPrime::Real => {
            let real = scaled as f64 / alpha.den() as f64;
            let complement = mass_below(k_a, m, 1.0 / (real + 1.0), p_max);
            (Tail { tail: 1.0 - complement, complement }, complement)
        }
    }
}
