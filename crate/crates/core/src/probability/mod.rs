//! Probability that the A-side critical prefix is short, for processing
//! times uniform on `{1..n}`.
//!
//! Two independent events together imply `k_A <= k`:
//!
//! * at least `k` jobs satisfy `p1 <= alpha*n < p2` (binomial tail `P1*`);
//! * the first `k` of them, with surpluses `p2 - p1` restricted to uniform
//!   on `{0..p'}`, `p' = (1 - alpha) * p_max`, accumulate at least `p_max`
//!   (a convolution DP, `P2*`).
//!
//! `P* = P1* * P2*` is a lower bound. All complements are computed directly
//! rather than as `1 - x`, so bounds like `1 - 1e-9` keep their digits.

mod binomial;
mod dp;
mod montecarlo;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

pub use binomial::{p1_star, p1_star_exact};
pub use dp::{p2_star, p2_star_support, PPrime};
pub use montecarlo::{monte_carlo_check, pipeline_frequency, Estimate, McCheck};

use crate::error::{Error, Result};

/// A probability together with its complement, each computed directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tail {
    pub tail: f64,
    pub complement: f64,
}

/// The split parameter `alpha` as an exact fraction `num / den` in (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alpha {
    num: u64,
    den: u64,
}

impl Alpha {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || num >= den {
            return Err(Error::InvalidAlpha(format!("{num}/{den}")));
        }
        Ok(Self { num, den })
    }

    /// Parses a decimal such as `0.36` exactly.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidAlpha(s.to_string());
        let s = s.trim();
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.is_empty() && frac.is_empty()
            || !int.bytes().all(|b| b.is_ascii_digit())
            || !frac.bytes().all(|b| b.is_ascii_digit())
            || frac.len() > 15
        {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = int.checked_mul(den).and_then(|x| x.checked_add(frac)).ok_or_else(bad)?;
        Alpha::new(num, den).map_err(|_| bad())
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `1 - alpha` as a fraction with the same denominator.
    pub fn complement_num(&self) -> u64 {
        self.den - self.num
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.den as f64).log10().round() as usize;
        if 10u64.checked_pow(digits as u32) == Some(self.den) {
            write!(f, "{:.*}", digits.max(2), self.value())
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Alpha::parse(s)
    }
}

/// `Pr[p1 <= alpha*n < p2] = alpha * (1 - alpha)`.
pub fn prob_c1(alpha: Alpha) -> f64 {
    (alpha.num as f64 * alpha.complement_num() as f64) / (alpha.den as f64 * alpha.den as f64)
}

/// Checked form of [`prob_c1`] for a raw float.
pub fn prob_c1_f64(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidAlpha(alpha.to_string()));
    }
    Ok(alpha * (1.0 - alpha))
}

/// One row of the bound table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbPoint {
    pub n: usize,
    pub p_max: u64,
    pub k_a: usize,
    pub alpha: Alpha,
    pub p1_star: f64,
    pub p2_star: f64,
    pub p_star: f64,
    /// `1 - P*`, assembled from the directly computed complements.
    pub q_star: f64,
}

/// Assembles `P* = P1* * P2*` with `p_max = n`.
pub fn p_star(n: usize, k_a: usize, alpha: Alpha, rule: PPrime) -> ProbPoint {
    let t1 = p1_star(n, k_a, alpha);
    let (t2, q2) = dp::p2_star_with_defect(n as u64, k_a, alpha, rule);
    let q1 = t1.complement;
    ProbPoint {
        n,
        p_max: n as u64,
        k_a,
        alpha,
        p1_star: t1.tail,
        p2_star: t2.tail,
        p_star: t1.tail * t2.tail,
        q_star: q1 + q2 - q1 * q2,
    }
}

/// Scans `alpha = i / grid_den`, `i = 1..grid_den`, for the largest `P*`
/// (smallest `q*`); ties go to the smaller alpha.
pub fn optimize_alpha(n: usize, k_a: usize, grid_den: u64, rule: PPrime) -> Result<ProbPoint> {
    if grid_den < 2 {
        return Err(Error::InvalidArgument(format!("alpha grid needs at least 2 cells (got {grid_den})")));
    }
    let mut best: Option<ProbPoint> = None;
    for i in 1..grid_den {
        let pt = p_star(n, k_a, Alpha::new(i, grid_den)?, rule);
        if best.is_none_or(|b| pt.q_star < b.q_star) {
            best = Some(pt);
        }
    }
    Ok(best.expect("grid is non-empty"))
}

/// Converts a step such as `0.01` to the grid denominator `100`.
pub fn grid_den_from_step(step: f64) -> Result<u64> {
    let den = (1.0 / step).round();
    if !(step > 0.0 && step < 1.0) || ((1.0 / den) - step).abs() > 1e-9 || den < 2.0 {
        return Err(Error::InvalidArgument(format!("grid step {step} must be 1/m for an integer m >= 2")));
    }
    Ok(den as u64)
}

/// How the bound table is printed in the literature: either a rounded
/// decimal or a `1 - 10^-e` order of magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Printed {
    Decimal(f64),
    OneMinusPow10(i32),
}

impl fmt::Display for Printed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Printed::Decimal(v) => write!(f, "{v:.3}"),
            Printed::OneMinusPow10(e) => write!(f, "1-1e-{e}"),
        }
    }
}

/// Published `(n, k_A, alpha, P*)` rows for `n = 20, 40, ..., 200`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedRow {
    pub n: usize,
    pub k_a: usize,
    pub alpha_hundredths: u64,
    pub printed: Printed,
}

impl PublishedRow {
    pub fn alpha(&self) -> Alpha {
        Alpha::new(self.alpha_hundredths, 100).expect("published alpha in (0,1)")
    }
}

pub const PUBLISHED_TABLE: [PublishedRow; 10] = [
    PublishedRow { n: 20, k_a: 4, alpha_hundredths: 36, printed: Printed::Decimal(0.551) },
    PublishedRow { n: 40, k_a: 6, alpha_hundredths: 41, printed: Printed::Decimal(0.912) },
    PublishedRow { n: 60, k_a: 7, alpha_hundredths: 39, printed: Printed::Decimal(0.987) },
    PublishedRow { n: 80, k_a: 9, alpha_hundredths: 43, printed: Printed::OneMinusPow10(3) },
    PublishedRow { n: 100, k_a: 10, alpha_hundredths: 42, printed: Printed::OneMinusPow10(4) },
    PublishedRow { n: 120, k_a: 12, alpha_hundredths: 46, printed: Printed::OneMinusPow10(5) },
    PublishedRow { n: 140, k_a: 13, alpha_hundredths: 45, printed: Printed::OneMinusPow10(6) },
    PublishedRow { n: 160, k_a: 14, alpha_hundredths: 44, printed: Printed::OneMinusPow10(7) },
    PublishedRow { n: 180, k_a: 15, alpha_hundredths: 44, printed: Printed::OneMinusPow10(8) },
    PublishedRow { n: 200, k_a: 16, alpha_hundredths: 43, printed: Printed::OneMinusPow10(9) },
];

/// Tolerance on `P*` for rows printed as decimals.
pub const DECIMAL_TOLERANCE: f64 = 0.002;

/// Largest `k` with `k * log2(k) <= n` (at least 1).
pub fn default_k_a(n: usize) -> usize {
    let mut k = 1usize;
    while ((k + 1) as f64) * ((k + 1) as f64).log2() <= n as f64 {
        k += 1;
    }
    k
}

/// `k_A` used for `n`: the published value where one exists, otherwise [`default_k_a`].
pub fn table_k_a(n: usize) -> usize {
    PUBLISHED_TABLE
        .iter()
        .find(|r| r.n == n)
        .map_or_else(|| default_k_a(n), |r| r.k_a)
}

/// Bound table: `k_A` per [`table_k_a`], alpha optimized on the grid.
pub fn table1(n_values: &[usize], grid_den: u64, rule: PPrime) -> Result<Vec<ProbPoint>> {
    n_values
        .par_iter()
        .map(|&n| optimize_alpha(n, table_k_a(n), grid_den, rule))
        .collect()
}

/// Whether a computed point reproduces a printed value.
pub fn matches_printed(point: &ProbPoint, printed: Printed) -> bool {
    match printed {
        Printed::Decimal(v) => (point.p_star - v).abs() <= DECIMAL_TOLERANCE,
        Printed::OneMinusPow10(e) => point.q_star <= 10f64.powi(-e),
    }
}

/// One published row evaluated under both `p'` rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditRow {
    pub published: PublishedRow,
    pub floor: ProbPoint,
    pub real: ProbPoint,
    pub floor_ok: bool,
    pub real_ok: bool,
}

impl AuditRow {
    /// Accepted when either rounding of `p'` reproduces the printed value.
    pub fn accepted(&self) -> bool {
        self.floor_ok || self.real_ok
    }
}

/// Evaluates every published row at its printed `k_A` and alpha.
pub fn audit_published() -> Vec<AuditRow> {
    PUBLISHED_TABLE
        .iter()
        .map(|row| {
            let floor = p_star(row.n, row.k_a, row.alpha(), PPrime::Floor);
            let real = p_star(row.n, row.k_a, row.alpha(), PPrime::Real);
            AuditRow {
                published: *row,
                floor,
                real,
                floor_ok: matches_printed(&floor, row.printed),
                real_ok: matches_printed(&real, row.printed),
            }
        })
        .collect()
}
