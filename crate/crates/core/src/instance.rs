//! Instance model and its plain-text format.
//!
//! The text format is line oriented: the first line holds the job count `n`,
//! followed by exactly `n` lines of `p1 p2`. Lines end with LF and the final
//! newline is optional.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Processing and completion times, in integer time units.
pub type Time = i64;

/// A job with its processing time on machine 1 and machine 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Job {
    pub p1: Time,
    pub p2: Time,
}

impl Job {
    pub const fn new(p1: Time, p2: Time) -> Self {
        Self { p1, p2 }
    }

    /// Johnson class A: the job is at least as long on machine 2.
    #[inline]
    pub fn in_a(&self) -> bool {
        self.p1 <= self.p2
    }

    #[inline]
    pub fn swapped(&self) -> Job {
        Job::new(self.p2, self.p1)
    }
}

/// An F2||Cmax instance. Immutable once built.
///
/// Construction guarantees every processing time is at least 1 and that
/// `2 * n * p_max` fits in an `i64`, so every sum the library forms is
/// overflow free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Instance {
    jobs: Vec<Job>,
}

impl Instance {
    pub fn new(jobs: Vec<Job>) -> Result<Self> {
        let mut p_max: Time = 0;
        for (job, j) in jobs.iter().enumerate() {
            if j.p1 < 1 || j.p2 < 1 {
                return Err(Error::NonPositiveTime { job, p1: j.p1, p2: j.p2 });
            }
            p_max = p_max.max(j.p1).max(j.p2);
        }
        let n = jobs.len();
        let fits = i64::try_from(n)
            .ok()
            .and_then(|n| n.checked_mul(p_max))
            .and_then(|x| x.checked_mul(2))
            .is_some();
        if !fits {
            return Err(Error::Overflow { n, p_max });
        }
        Ok(Self { jobs })
    }

    /// Builds an instance from `(p1, p2)` pairs.
    pub fn from_pairs(pairs: &[(Time, Time)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(p1, p2)| Job::new(p1, p2)).collect())
    }

    pub fn empty() -> Self {
        Self { jobs: Vec::new() }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.jobs.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.jobs.is_empty()
    }

    #[inline]
    pub fn jobs(&self) -> &[Job] {
        &self.jobs
    }

    #[inline]
    pub fn job(&self, j: usize) -> Job {
        self.jobs[j]
    }

    /// Largest processing time over all jobs and both machines (0 if empty).
    pub fn p_max(&self) -> Time {
        self.jobs.iter().map(|j| j.p1.max(j.p2)).max().unwrap_or(0)
    }

    pub fn total_p1(&self) -> Time {
        self.jobs.iter().map(|j| j.p1).sum()
    }

    pub fn total_p2(&self) -> Time {
        self.jobs.iter().map(|j| j.p2).sum()
    }

    /// The mirrored instance with the two machines swapped. Job order is kept.
    ///
    /// Any sequence on `self` has the same makespan as the reversed sequence
    /// on the mirrored instance.
    pub fn reversed(&self) -> Instance {
        Instance {
            jobs: self.jobs.iter().map(Job::swapped).collect(),
        }
    }

    /// Renders the instance in the text format, with a trailing newline.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses the text format. Errors carry the 1-based offending line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.split('\n').enumerate();
        let (_, header) = lines.next().unwrap_or((0, ""));
        let n: usize = parse_fields::<1>(header, 1)?[0]
            .try_into()
            .map_err(|_| Error::Parse { line: 1, message: "job count must be non-negative".into() })?;

        let mut jobs = Vec::with_capacity(n.min(1 << 20));
        for _ in 0..n {
            let Some((idx, line)) = lines.next() else {
                return Err(Error::Parse {
                    line: jobs.len() + 2,
                    message: format!("expected {n} job lines, found {}", jobs.len()),
                });
            };
            let [p1, p2] = parse_fields::<2>(line, idx + 1)?;
            if p1 < 1 || p2 < 1 {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("processing times must be >= 1 (got {p1} {p2})"),
                });
            }
            jobs.push(Job::new(p1, p2));
        }
        // Only a single trailing newline may follow the last job line.
        match lines.next() {
            None => {}
            Some((_, "")) if lines.next().is_none() => {}
            Some((idx, _)) => {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: "unexpected content after the last job".into(),
                })
            }
        }
        Instance::new(jobs)
    }
}

fn parse_fields<const N: usize>(line: &str, line_no: usize) -> Result<[i64; N]> {
    let err = |message: String| Error::Parse { line: line_no, message };
    let mut out = [0i64; N];
    let mut tokens = line.split(' ');
    for slot in out.iter_mut() {
        let tok = tokens
            .next()
            .ok_or_else(|| err(format!("expected {N} integer field(s)")))?;
        if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit() || b == b'-') {
            return Err(err(format!("invalid integer {tok:?}")));
        }
        *slot = tok
            .parse()
            .map_err(|_| err(format!("invalid integer {tok:?}")))?;
    }
    if let Some(extra) = tokens.next() {
        return Err(err(format!("unexpected extra token {extra:?}")));
    }
    Ok(out)
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.jobs.len())?;
        for j in &self.jobs {
            writeln!(f, "{} {}", j.p1, j.p2)?;
        }
        Ok(())
    }
}

impl FromStr for Instance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Instance::parse(s)
    }
}

/// A processing order: a permutation of the job indices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sequence(Vec<usize>);

impl Sequence {
    /// Validates that `order` is a permutation of `0..n`.
    pub fn new(order: Vec<usize>, n: usize) -> Result<Self> {
        check_permutation(&order, n)?;
        Ok(Self(order))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub(crate) fn from_vec_unchecked(order: Vec<usize>) -> Self {
        Self(order)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Sequence {
        Sequence(self.0.iter().rev().copied().collect())
    }

    /// 1-based job numbers, as printed in reports.
    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|j| j + 1).collect()
    }
}

impl AsRef<[usize]> for Sequence {
    fn as_ref(&self) -> &[usize] {
        &self.0
    }
}

pub(crate) fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(Error::NotPermutation { n });
    }
    let mut seen = vec![false; n];
    for &j in order {
        if j >= n || std::mem::replace(&mut seen[j], true) {
            return Err(Error::NotPermutation { n });
        }
    }
    Ok(())
}
