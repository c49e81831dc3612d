//! Johnson's rule with a full comparison sort.
//!
//! This is the O(n log n) baseline the linear-time solver is checked and
//! timed against, so it deliberately stays a plain stable sort.

use crate::instance::{Instance, Sequence, Time};
use crate::partition::Partition;
use crate::schedule::makespan_unchecked;

/// Johnson's sequence and its makespan.
///
/// A-jobs by nondecreasing `p1`, then B-jobs by nonincreasing `p2`. Equal
/// keys keep input order.
pub fn johnson_full(inst: &Instance) -> (Sequence, Time) {
    let part = Partition::new(inst);
    let seq = johnson_order(inst, &part);
    let cmax = makespan_unchecked(inst.jobs(), &seq);
    (Sequence::from_vec_unchecked(seq), cmax)
}

pub(crate) fn johnson_order(inst: &Instance, part: &Partition) -> Vec<usize> {
    let jobs = inst.jobs();
    let mut seq = Vec::with_capacity(inst.len());
    seq.extend_from_slice(&part.a_idx);
    seq.extend_from_slice(&part.b_idx);
    let (a, b) = seq.split_at_mut(part.n_a());
    sort_a(jobs, a);
    sort_b(jobs, b);
    seq
}

#[inline]
pub(crate) fn sort_a(jobs: &[crate::instance::Job], idx: &mut [usize]) {
    idx.sort_by_key(|&j| jobs[j].p1);
}

#[inline]
pub(crate) fn sort_b(jobs: &[crate::instance::Job], idx: &mut [usize]) {
    idx.sort_by_key(|&j| std::cmp::Reverse(jobs[j].p2));
}

/// True iff `seq` puts every A-job before every B-job, A-jobs in
/// nondecreasing `p1` and B-jobs in nonincreasing `p2`.
pub fn is_johnson_order(inst: &Instance, seq: &[usize]) -> bool {
    let jobs = inst.jobs();
    let split = seq.iter().position(|&j| !jobs[j].in_a()).unwrap_or(seq.len());
    let (a, b) = seq.split_at(split);
    b.iter().all(|&j| !jobs[j].in_a())
        && a.windows(2).all(|w| jobs[w[0]].p1 <= jobs[w[1]].p1)
        && b.windows(2).all(|w| jobs[w[0]].p2 >= jobs[w[1]].p2)
}
