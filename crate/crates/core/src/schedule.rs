//! Permutation schedule evaluation and the exhaustive optimum used as a test oracle.

use crate::error::{Error, Result};
use crate::instance::{check_permutation, Instance, Job, Time};

/// Largest instance `brute_force_optimum` accepts.
pub const BRUTE_FORCE_LIMIT: usize = 10;

/// Completion times of every job, indexed by position in the sequence.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CompletionTimes {
    pub machine1: Vec<Time>,
    pub machine2: Vec<Time>,
}

impl CompletionTimes {
    pub fn makespan(&self) -> Time {
        self.machine2.last().copied().unwrap_or(0)
    }
}

/// Makespan of the permutation schedule `seq`.
pub fn makespan(inst: &Instance, seq: &[usize]) -> Result<Time> {
    check_permutation(seq, inst.len())?;
    Ok(makespan_unchecked(inst.jobs(), seq))
}

/// Full completion-time vectors for `seq`.
pub fn completion_times(inst: &Instance, seq: &[usize]) -> Result<CompletionTimes> {
    check_permutation(seq, inst.len())?;
    let mut ct = CompletionTimes {
        machine1: Vec::with_capacity(seq.len()),
        machine2: Vec::with_capacity(seq.len()),
    };
    let (mut c1, mut c2) = (0, 0);
    for &j in seq {
        let job = inst.job(j);
        c1 += job.p1;
        c2 = c1.max(c2) + job.p2;
        ct.machine1.push(c1);
        ct.machine2.push(c2);
    }
    Ok(ct)
}

#[inline]
pub(crate) fn makespan_unchecked(jobs: &[Job], seq: &[usize]) -> Time {
    let (mut c1, mut c2) = (0, 0);
    for &j in seq {
        let job = jobs[j];
        c1 += job.p1;
        c2 = c1.max(c2) + job.p2;
    }
    c2
}

/// Exact optimum over all `n!` permutations, with the number of optimal ones.
///
/// Depth-first over prefixes, carrying the machine completion times so each
/// node costs O(1). Refuses instances with more than [`BRUTE_FORCE_LIMIT`] jobs.
pub fn brute_force_optimum(inst: &Instance) -> Result<(Time, u64)> {
    let n = inst.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooManyJobs { n, limit: BRUTE_FORCE_LIMIT });
    }
    if n == 0 {
        return Ok((0, 1));
    }
    let mut best = (Time::MAX, 0u64);
    let mut used = vec![false; n];
    dfs(inst.jobs(), &mut used, n, 0, 0, &mut best);
    Ok(best)
}

fn dfs(jobs: &[Job], used: &mut [bool], left: usize, c1: Time, c2: Time, best: &mut (Time, u64)) {
    if left == 0 {
        match c2.cmp(&best.0) {
            std::cmp::Ordering::Less => *best = (c2, 1),
            std::cmp::Ordering::Equal => best.1 += 1,
            std::cmp::Ordering::Greater => {}
        }
        return;
    }
    for j in 0..jobs.len() {
        if used[j] {
            continue;
        }
        used[j] = true;
        let n1 = c1 + jobs[j].p1;
        let n2 = n1.max(c2) + jobs[j].p2;
        dfs(jobs, used, left - 1, n1, n2, best);
        used[j] = false;
    }
}
