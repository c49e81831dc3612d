//! Linear-time variant of Johnson's rule.
//!
//! Sorting of set A can stop after a short prefix once the jobs sorted so far
//! build up enough machine-2 backlog that no remaining A-job can ever starve
//! machine 2; the rest of A may then run in any order. The mirror statement
//! holds for the tail of set B. Two stronger global conditions (A's total
//! backlog covers all of B, or the reverse) free one whole set.
//!
//! [`solve`] checks these conditions in O(n) using selection instead of
//! sorting, sorts only the short ranges that remain, and reports which job
//! ranges (free blocks) may be permuted without changing the makespan.

mod critical;
mod report;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;

pub use critical::{find_k_a, find_k_a_with, find_k_b, find_k_b_with, PrefixCut, SuffixCut};
pub use report::SolveRecord;

use crate::instance::{Instance, Job, Sequence, Time};
use crate::johnson::{johnson_order, sort_a, sort_b};
use crate::partition::Partition;
use crate::schedule::makespan_unchecked;
use crate::select::Selection;

/// `P1 <= P2 - p_max_B2`: B may follow A in any order.
pub fn check_prop5(part: &Partition) -> bool {
    part.p1 <= part.p2 - part.p_max_b2
}

/// `P2 <= P1 - p_max_A1`: A may precede B in any order.
pub fn check_prop6(part: &Partition) -> bool {
    part.p2 <= part.p1 - part.p_max_a1
}

/// Which rule produced the sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolvePath {
    /// Global A-dominance: A prefix sorted, B in any order.
    Prop5,
    /// Global B-dominance: A in any order, B suffix sorted.
    Prop6,
    /// Both the A-prefix and B-suffix conditions hold.
    Prop2And3,
    /// Only the A-prefix condition holds; B is fully sorted.
    Prop2Only,
    /// Only the B-suffix condition holds; A is fully sorted.
    Prop3Only,
    /// Neither side qualifies; plain Johnson's rule.
    FullSortFallback,
}

impl SolvePath {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolvePath::Prop5 => "Prop5",
            SolvePath::Prop6 => "Prop6",
            SolvePath::Prop2And3 => "Prop2and3",
            SolvePath::Prop2Only => "Prop2only",
            SolvePath::Prop3Only => "Prop3only",
            SolvePath::FullSortFallback => "FullSortFallback",
        }
    }
}

impl std::fmt::Display for SolvePath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How one of the two Johnson sets was sequenced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SideMode {
    /// Any order is optimal; emitted in input order.
    Free,
    /// Only the critical prefix (A) or suffix (B) was sorted.
    Partial,
    /// The whole set was sorted.
    Full,
}

/// All four critical indices, 1-based as in Johnson's order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CriticalIndices {
    pub k_a: Option<usize>,
    pub k_a_prime: Option<usize>,
    pub k_b: Option<usize>,
    pub k_b_prime: Option<usize>,
}

/// A contiguous range of output positions whose jobs may be permuted freely.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FreeBlock {
    pub start: usize,
    pub len: usize,
}

impl FreeBlock {
    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.len
    }
}

/// Comparison-sort activity recorded during a single [`solve`] call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SortStats {
    pub calls: usize,
    pub longest: usize,
    pub total: usize,
}

impl SortStats {
    fn record(&mut self, len: usize) {
        self.calls += 1;
        self.longest = self.longest.max(len);
        self.total += len;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveConfig {
    pub selection: Selection,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub sequence: Sequence,
    pub makespan: Time,
    pub path: SolvePath,
    pub indices: CriticalIndices,
    /// Blocks of length >= 2, in output order.
    pub free_blocks: Vec<FreeBlock>,
    pub linear_certified: bool,
    pub a_mode: SideMode,
    pub b_mode: SideMode,
    pub n_a: usize,
    pub n_b: usize,
    pub sort_stats: SortStats,
}

impl SolveReport {
    pub fn n(&self) -> usize {
        self.n_a + self.n_b
    }

    /// Number of trailing B-jobs covered by `k_b` (`n - k_b + 1`), if known.
    pub fn trailing_b(&self) -> Option<usize> {
        self.indices.k_b.map(|k| self.n() + 1 - k)
    }

    /// True when a set that has jobs had to be sorted completely.
    pub fn has_fallback(&self) -> bool {
        (self.a_mode == SideMode::Full && self.n_a > 0) || (self.b_mode == SideMode::Full && self.n_b > 0)
    }

    /// `max(k_a, n - k_b + 1)` over the sides that were partially sorted.
    pub fn partial_sort_bound(&self) -> usize {
        let a = if self.a_mode == SideMode::Partial { self.indices.k_a.unwrap_or(0) } else { 0 };
        let b = if self.b_mode == SideMode::Partial { self.trailing_b().unwrap_or(0) } else { 0 };
        a.max(b)
    }

    pub fn equivalent_count(&self) -> BigUint {
        count_equivalent(self)
    }

    /// Decimal digit count of [`Self::equivalent_count`].
    ///
    /// Exact for moderate block sizes; above that it is derived from
    /// `sum log10(i)` to avoid materializing huge factorials.
    pub fn equivalent_count_digits(&self) -> usize {
        let total: usize = self.free_blocks.iter().map(|b| b.len).sum();
        if total <= 4096 {
            return count_equivalent(self).to_string().len();
        }
        let log10: f64 = self
            .free_blocks
            .iter()
            .flat_map(|b| 2..=b.len)
            .map(|i| (i as f64).log10())
            .sum();
        log10.floor() as usize + 1
    }

    /// A copy of the sequence with every free block shuffled.
    pub fn shuffled_sequence<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<usize> {
        let mut seq = self.sequence.as_slice().to_vec();
        for b in &self.free_blocks {
            seq[b.range()].shuffle(rng);
        }
        seq
    }
}

/// Product of `len!` over the free blocks of `report`.
///
/// Every sequence counted this way is optimal; other optimal sequences may exist.
pub fn count_equivalent(report: &SolveReport) -> BigUint {
    let mut count = BigUint::from(1u32);
    for b in &report.free_blocks {
        for i in 2..=b.len {
            count *= i as u64;
        }
    }
    count
}

/// Solves with the default configuration.
pub fn solve(inst: &Instance) -> SolveReport {
    solve_with(inst, SolveConfig::default())
}

/// Runs the decision cascade:
///
/// 1. global A-dominance (`P1 <= P2 - p_max_B2`): sort only A's critical prefix,
///    B in any order;
/// 2. otherwise global B-dominance: mirrored;
/// 3. otherwise each side independently: partial sort where its critical
///    index exists, full sort where it does not;
/// 4. full Johnson sort when neither side qualifies.
pub fn solve_with(inst: &Instance, config: SolveConfig) -> SolveReport {
    let part = Partition::new(inst);
    let jobs = inst.jobs();
    let a_raw = find_k_a_with(&part, inst, config.selection);
    let b_raw = find_k_b_with(&part, inst, config.selection);
    // A cut spanning the whole set with a single-job last tie block leaves
    // nothing unsorted; it is a full sort and does not count as firing.
    let a_cut = a_raw.filter(|c| c.k_a_prime < part.n_a());
    let b_cut = b_raw.filter(|c| c.k_b_prime > part.n_a() + 1);

    let path = if check_prop5(&part) {
        SolvePath::Prop5
    } else if check_prop6(&part) {
        SolvePath::Prop6
    } else {
        match (a_cut.is_some(), b_cut.is_some()) {
            (true, true) => SolvePath::Prop2And3,
            (true, false) => SolvePath::Prop2Only,
            (false, true) => SolvePath::Prop3Only,
            (false, false) => SolvePath::FullSortFallback,
        }
    };

    let mut stats = SortStats::default();
    let mut free_blocks = Vec::new();
    let mut seq: Vec<usize> = Vec::with_capacity(inst.len());

    let (a_mode, b_mode) = if path == SolvePath::FullSortFallback {
        seq = johnson_order(inst, &part);
        stats.record(part.n_a());
        stats.record(part.n_b());
        (SideMode::Full, SideMode::Full)
    } else {
        let a_mode = match (path, a_cut) {
            (SolvePath::Prop6, _) => SideMode::Free,
            (SolvePath::Prop3Only, _) | (_, None) => SideMode::Full,
            (_, Some(_)) => SideMode::Partial,
        };
        let b_mode = match (path, b_cut) {
            (SolvePath::Prop5, _) => SideMode::Free,
            (SolvePath::Prop2Only, _) | (_, None) => SideMode::Full,
            (_, Some(_)) => SideMode::Partial,
        };
        emit_a(jobs, &part.a_idx, a_mode, a_cut, &mut seq, &mut free_blocks, &mut stats);
        emit_b(jobs, &part.b_idx, b_mode, b_cut, &mut seq, &mut free_blocks, &mut stats);
        (a_mode, b_mode)
    };

    let n = inst.len();
    let a_size = match a_mode {
        SideMode::Free => None,
        SideMode::Partial => a_cut.map(|c| c.k_a),
        SideMode::Full => Some(part.n_a()),
    };
    let b_size = match b_mode {
        SideMode::Free => None,
        SideMode::Partial => b_cut.map(|c| c.trailing()),
        SideMode::Full => Some(part.n_b()),
    };
    let linear_certified = [a_size, b_size].into_iter().flatten().all(|s| nlogn_within(s, n));

    let makespan = makespan_unchecked(jobs, &seq);
    SolveReport {
        sequence: Sequence::from_vec_unchecked(seq),
        makespan,
        path,
        indices: CriticalIndices {
            k_a: a_raw.map(|c| c.k_a),
            k_a_prime: a_raw.map(|c| c.k_a_prime),
            k_b: b_raw.map(|c| c.k_b),
            k_b_prime: b_raw.map(|c| c.k_b_prime),
        },
        free_blocks,
        linear_certified,
        a_mode,
        b_mode,
        n_a: part.n_a(),
        n_b: part.n_b(),
        sort_stats: stats,
    }
}

/// `s * log2(s) <= n`, with `0 log 0 = 0`.
fn nlogn_within(s: usize, n: usize) -> bool {
    s <= 1 || (s as f64) * (s as f64).log2() <= n as f64
}

fn push_block(blocks: &mut Vec<FreeBlock>, start: usize, len: usize) {
    if len >= 2 {
        blocks.push(FreeBlock { start, len });
    }
}

/// Appends set A in the order `mode` calls for.
fn emit_a(
    jobs: &[Job],
    a_idx: &[usize],
    mode: SideMode,
    cut: Option<PrefixCut>,
    seq: &mut Vec<usize>,
    blocks: &mut Vec<FreeBlock>,
    stats: &mut SortStats,
) {
    let base = seq.len();
    match (mode, cut) {
        (SideMode::Free, _) => {
            seq.extend_from_slice(a_idx);
            push_block(blocks, base, a_idx.len());
        }
        (SideMode::Partial, Some(cut)) => {
            // sorted prefix | tie block | rest
            let v = cut.threshold;
            let mut tie = Vec::new();
            let mut rest = Vec::with_capacity(a_idx.len() + 1 - cut.k_a);
            for &j in a_idx {
                match jobs[j].p1.cmp(&v) {
                    std::cmp::Ordering::Less => seq.push(j),
                    std::cmp::Ordering::Equal => tie.push(j),
                    std::cmp::Ordering::Greater => rest.push(j),
                }
            }
            let prefix = seq.len() - base;
            stats.record(prefix);
            sort_a(jobs, &mut seq[base..]);
            push_block(blocks, seq.len(), tie.len());
            seq.extend_from_slice(&tie);
            push_block(blocks, seq.len(), rest.len());
            seq.extend_from_slice(&rest);
        }
        _ => {
            seq.extend_from_slice(a_idx);
            stats.record(a_idx.len());
            sort_a(jobs, &mut seq[base..]);
        }
    }
}

/// Appends set B in the order `mode` calls for.
fn emit_b(
    jobs: &[Job],
    b_idx: &[usize],
    mode: SideMode,
    cut: Option<SuffixCut>,
    seq: &mut Vec<usize>,
    blocks: &mut Vec<FreeBlock>,
    stats: &mut SortStats,
) {
    let base = seq.len();
    match (mode, cut) {
        (SideMode::Free, _) => {
            seq.extend_from_slice(b_idx);
            push_block(blocks, base, b_idx.len());
        }
        (SideMode::Partial, Some(cut)) => {
            // rest | tie block | sorted suffix
            let w = cut.threshold;
            let mut tie = Vec::new();
            let mut suffix = Vec::with_capacity(cut.trailing());
            for &j in b_idx {
                match jobs[j].p2.cmp(&w) {
                    std::cmp::Ordering::Greater => seq.push(j),
                    std::cmp::Ordering::Equal => tie.push(j),
                    std::cmp::Ordering::Less => suffix.push(j),
                }
            }
            push_block(blocks, base, seq.len() - base);
            push_block(blocks, seq.len(), tie.len());
            seq.extend_from_slice(&tie);
            stats.record(suffix.len());
            sort_b(jobs, &mut suffix);
            seq.extend_from_slice(&suffix);
        }
        _ => {
            seq.extend_from_slice(b_idx);
            stats.record(b_idx.len());
            sort_b(jobs, &mut seq[base..]);
        }
    }
}

#[cfg(test)]
mod tests;
