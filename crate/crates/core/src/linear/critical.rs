//! Selection-based search for the critical indices `k_A` and `k_B`.
//!
//! Both searches reduce to the same question over a keyed set of jobs: find
//! the smallest tie-closed prefix (by key) whose accumulated surplus strictly
//! exceeds a target. For set A the key is `p1`, the surplus `p2 - p1` and the
//! target `p_max_A1`. Set B is the mirror image: key `p2`, surplus `p1 - p2`,
//! target `p_max_B2`, and the "prefix" is the tail of Johnson's order.
//!
//! The surplus of every record is non-negative, so the accumulated surplus
//! is monotone in the key and the prefix can be found by a selection-driven
//! bisection: take the median key of the remaining candidates, split three
//! ways, and keep exactly one side. No sort is performed and the total work
//! is linear.

use crate::instance::{Instance, Time};
use crate::partition::Partition;
use crate::select::{partition3, select_in_place, Selection};

#[derive(Debug, Clone, Copy)]
pub(crate) struct Rec {
    pub key: Time,
    pub surplus: Time,
}

/// A tie-closed prefix of a keyed set, in sorted-key terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Cut {
    /// Number of records with `key <= threshold`.
    pub le: usize,
    /// Number of records with `key < threshold`.
    pub lt: usize,
    pub threshold: Time,
}

/// Requires a non-empty set whose total surplus is at least `target`.
///
/// Returns the smallest key `v` whose prefix `{key <= v}` has surplus
/// strictly above `target`. When only the whole set reaches the target
/// (with equality), the cut is the whole set.
pub(crate) fn critical_cut(recs: &mut [Rec], target: Time, selection: Selection) -> Cut {
    debug_assert!(!recs.is_empty());
    let key = |r: &Rec| r.key;
    let (mut lo, mut hi) = (0usize, recs.len());
    // Surplus of everything committed below `lo`; never exceeds `target`.
    let mut acc: Time = 0;
    loop {
        let window = &mut recs[lo..hi];
        let m = window.len();
        let mid = select_in_place(window, (m - 1) / 2, &key, selection);
        let pivot = window[mid].key;
        let (lt, eq) = partition3(window, pivot, &key);
        let s_lt: Time = window[..lt].iter().map(|r| r.surplus).sum();
        if acc + s_lt > target {
            hi = lo + lt;
            continue;
        }
        let s_eq: Time = window[lt..lt + eq].iter().map(|r| r.surplus).sum();
        if acc + s_lt + s_eq > target || lt + eq == m {
            return Cut { le: lo + lt + eq, lt: lo + lt, threshold: pivot };
        }
        acc += s_lt + s_eq;
        lo += lt + eq;
    }
}

/// Number of smallest keys probed before falling back to the full bisection.
const PROBE: usize = 64;

/// [`critical_cut`] with a cheap first attempt.
///
/// Critical prefixes are usually tiny, so the records with the `PROBE`
/// smallest keys (tie-closed) are gathered in one pass with a bounded heap.
/// If they already exceed the target, the cut lies inside them and the
/// bisection runs on that head only. Otherwise the full bisection runs, so
/// the total work stays linear.
pub(crate) fn find_cut(recs: &mut [Rec], target: Time, selection: Selection) -> Cut {
    if recs.len() > 4 * PROBE {
        let mut heap = std::collections::BinaryHeap::with_capacity(PROBE + 1);
        for r in recs.iter() {
            if heap.len() < PROBE {
                heap.push(r.key);
            } else if r.key < *heap.peek().expect("heap is full") {
                heap.pop();
                heap.push(r.key);
            }
        }
        let t = *heap.peek().expect("recs is non-empty");
        let mut head = 0;
        let mut surplus: Time = 0;
        for i in 0..recs.len() {
            if recs[i].key <= t {
                surplus += recs[i].surplus;
                recs.swap(head, i);
                head += 1;
            }
        }
        if surplus > target {
            return critical_cut(&mut recs[..head], target, selection);
        }
    }
    critical_cut(recs, target, selection)
}

/// The A-half of the critical indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrefixCut {
    /// Number of leading A-jobs (in Johnson order) that must be sorted.
    pub k_a: usize,
    /// 1-based index of the first job of the tie block ending at `k_a`.
    pub k_a_prime: usize,
    /// `p1` value shared by the tie block.
    pub threshold: Time,
}

/// The B-half of the critical indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuffixCut {
    /// 1-based position (in Johnson order) of the first trailing B-job to sort.
    pub k_b: usize,
    /// 1-based position of the last job of the tie block starting at `k_b`.
    pub k_b_prime: usize,
    /// `p2` value shared by the tie block.
    pub threshold: Time,
    /// Total job count of the instance.
    pub n: usize,
}

impl SuffixCut {
    /// Number of trailing jobs `n - k_b + 1`.
    pub fn trailing(&self) -> usize {
        self.n + 1 - self.k_b
    }
}

/// Critical prefix of set A.
///
/// Absent when A is empty or when `P1A > P2A - p_max_A1`. Otherwise `k_a`
/// is the smallest tie-closed prefix of A, in nondecreasing `p1` order, with
/// `sum p1 < sum p2 - p_max_A1`; if no proper prefix qualifies the whole of A
/// is taken.
pub fn find_k_a(part: &Partition, inst: &Instance) -> Option<PrefixCut> {
    find_k_a_with(part, inst, Selection::default())
}

pub fn find_k_a_with(part: &Partition, inst: &Instance, selection: Selection) -> Option<PrefixCut> {
    if part.a_idx.is_empty() || part.p1_a > part.p2_a - part.p_max_a1 {
        return None;
    }
    let jobs = inst.jobs();
    let mut recs: Vec<Rec> = part
        .a_idx
        .iter()
        .map(|&j| Rec { key: jobs[j].p1, surplus: jobs[j].p2 - jobs[j].p1 })
        .collect();
    let cut = find_cut(&mut recs, part.p_max_a1, selection);
    Some(PrefixCut { k_a: cut.le, k_a_prime: cut.lt + 1, threshold: cut.threshold })
}

/// Critical suffix of set B; the mirror of [`find_k_a`] under machine reversal.
pub fn find_k_b(part: &Partition, inst: &Instance) -> Option<SuffixCut> {
    find_k_b_with(part, inst, Selection::default())
}

pub fn find_k_b_with(part: &Partition, inst: &Instance, selection: Selection) -> Option<SuffixCut> {
    if part.b_idx.is_empty() || part.p2_b > part.p1_b - part.p_max_b2 {
        return None;
    }
    let jobs = inst.jobs();
    let mut recs: Vec<Rec> = part
        .b_idx
        .iter()
        .map(|&j| Rec { key: jobs[j].p2, surplus: jobs[j].p1 - jobs[j].p2 })
        .collect();
    let cut = find_cut(&mut recs, part.p_max_b2, selection);
    let n = part.n();
    Some(SuffixCut {
        k_b: n + 1 - cut.le,
        k_b_prime: n - cut.lt,
        threshold: cut.threshold,
        n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::figure1_instance;

    /// Sort-then-scan reference over `(key, surplus)` pairs.
    fn reference(mut recs: Vec<(Time, Time)>, target: Time) -> Cut {
        recs.sort();
        let mut acc = 0;
        let mut i = 0;
        while i < recs.len() {
            let v = recs[i].0;
            let start = i;
            while i < recs.len() && recs[i].0 == v {
                acc += recs[i].1;
                i += 1;
            }
            if acc > target || i == recs.len() {
                return Cut { le: i, lt: start, threshold: v };
            }
        }
        unreachable!()
    }

    #[test]
    fn figure1_indices() {
        let inst = figure1_instance();
        let part = Partition::new(&inst);
        let a = find_k_a(&part, &inst).unwrap();
        assert_eq!((a.k_a, a.k_a_prime, a.threshold), (2, 2, 2));
        let b = find_k_b(&part, &inst).unwrap();
        assert_eq!(b.trailing(), 2);
        assert_eq!((b.k_b, b.k_b_prime, b.threshold), (17, 17, 2));
    }

    #[test]
    fn tie_closure_takes_whole_block() {
        let inst = Instance::from_pairs(&[(1, 10), (1, 10)]).unwrap();
        let part = Partition::new(&inst);
        assert_eq!(part.p_max_a1, 1);
        let a = find_k_a(&part, &inst).unwrap();
        assert_eq!((a.k_a, a.k_a_prime), (2, 1));
    }

    #[test]
    fn all_equal_b_is_one_tie_block() {
        let inst = Instance::from_pairs(&[(9, 3), (8, 3), (7, 3), (6, 3)]).unwrap();
        let part = Partition::new(&inst);
        let b = find_k_b(&part, &inst).unwrap();
        assert_eq!((b.k_b, b.k_b_prime, b.trailing()), (1, 4, 4));
    }

    #[test]
    fn guard_failure_is_absent() {
        // P1A = 9, P2A = 12, p_max_A1 = 5: 9 > 7
        let inst = Instance::from_pairs(&[(4, 5), (5, 7)]).unwrap();
        let part = Partition::new(&inst);
        assert!(find_k_a(&part, &inst).is_none());
        assert!(find_k_b(&part, &inst).is_none());
        assert!(find_k_a(&Partition::new(&Instance::empty()), &Instance::empty()).is_none());
    }

    #[test]
    fn equality_at_the_guard_takes_all_of_a() {
        // surplus 1 + 2 = 3 = p_max_A1
        let inst = Instance::from_pairs(&[(2, 3), (3, 5)]).unwrap();
        let part = Partition::new(&inst);
        let a = find_k_a(&part, &inst).unwrap();
        assert_eq!((a.k_a, a.k_a_prime), (2, 2));
    }

    #[test]
    fn cut_matches_reference_on_structured_inputs() {
        let sels = [Selection::MedianOfMedians, Selection::Quickselect { seed: 3 }];
        let cases: Vec<Vec<(Time, Time)>> = vec![
            (0..200).map(|i| (i, 1)).collect(),
            (0..200).map(|i| (200 - i, 2)).collect(),
            vec![(5, 3); 150],
            (0..300).map(|i| (i % 7, i % 5)).collect(),
        ];
        for recs in cases {
            let total: Time = recs.iter().map(|r| r.1).sum();
            for target in [0, 1, total / 3, total - 1, total] {
                let expect = reference(recs.clone(), target);
                for s in sels {
                    let mut rs: Vec<Rec> = recs.iter().map(|&(key, surplus)| Rec { key, surplus }).collect();
                    assert_eq!(critical_cut(&mut rs.clone(), target, s), expect);
                    assert_eq!(find_cut(&mut rs, target, s), expect);
                }
            }
        }
    }
}
