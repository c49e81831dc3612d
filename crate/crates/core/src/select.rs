//! k-th smallest selection.
//!
//! The default strategy is Blum–Floyd–Pratt–Rivest–Tarjan median of medians
//! (groups of five), worst-case O(n). A randomized quickselect with expected
//! O(n) is available for throughput comparisons. Both partition three ways,
//! so inputs made of a single repeated key finish in one pass.

use crate::error::{Error, Result};

/// Pivot strategy for selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Selection {
    #[default]
    MedianOfMedians,
    /// Uniform random pivots from a small deterministic generator.
    Quickselect { seed: u64 },
}

/// Returns the record whose key is the `k`-th smallest (1-based).
///
/// `items` is reordered in the process.
pub fn select_kth<T, K, F>(items: &mut [T], k: usize, key: F, strategy: Selection) -> Result<T>
where
    T: Copy,
    K: Ord + Copy,
    F: Fn(&T) -> K,
{
    if k == 0 || k > items.len() {
        return Err(Error::RankOutOfRange { k, len: items.len() });
    }
    let pos = select_in_place(items, k - 1, &key, strategy);
    Ok(items[pos])
}

/// Rearranges `items` so that position `rank` (0-based) holds the element of
/// that rank, and returns `rank`'s position.
pub(crate) fn select_in_place<T, K, F>(items: &mut [T], rank: usize, key: &F, strategy: Selection) -> usize
where
    T: Copy,
    K: Ord + Copy,
    F: Fn(&T) -> K,
{
    debug_assert!(rank < items.len());
    match strategy {
        Selection::MedianOfMedians => mom_select(items, rank, key),
        Selection::Quickselect { seed } => {
            let mut rng = SplitMix64(seed);
            quickselect(items, rank, key, &mut rng)
        }
    }
}

/// Dutch-flag partition around `pivot`: returns `(lt, eq)` such that
/// `items[..lt] < pivot`, `items[lt..lt + eq] == pivot`, rest `> pivot`.
pub(crate) fn partition3<T, K, F>(items: &mut [T], pivot: K, key: &F) -> (usize, usize)
where
    K: Ord,
    F: Fn(&T) -> K,
{
    let (mut lo, mut mid, mut hi) = (0, 0, items.len());
    while mid < hi {
        match key(&items[mid]).cmp(&pivot) {
            std::cmp::Ordering::Less => {
                items.swap(lo, mid);
                lo += 1;
                mid += 1;
            }
            std::cmp::Ordering::Equal => mid += 1,
            std::cmp::Ordering::Greater => {
                hi -= 1;
                items.swap(mid, hi);
            }
        }
    }
    (lo, mid - lo)
}

fn insertion_sort<T, K: Ord, F: Fn(&T) -> K>(items: &mut [T], key: &F) {
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 && key(&items[j - 1]) > key(&items[j]) {
            items.swap(j - 1, j);
            j -= 1;
        }
    }
}

fn mom_select<T, K, F>(items: &mut [T], rank: usize, key: &F) -> usize
where
    T: Copy,
    K: Ord + Copy,
    F: Fn(&T) -> K,
{
    let (mut lo, mut hi) = (0, items.len());
    loop {
        let window = &mut items[lo..hi];
        let r = rank - lo;
        if window.len() <= 10 {
            insertion_sort(window, key);
            return rank;
        }
        // Medians of groups of five are gathered at the front of the window.
        let groups = window.len().div_ceil(5);
        for g in 0..groups {
            let start = g * 5;
            let end = (start + 5).min(window.len());
            insertion_sort(&mut window[start..end], key);
            window.swap(g, start + (end - start - 1) / 2);
        }
        let m = mom_select(&mut window[..groups], (groups - 1) / 2, key);
        let pivot = key(&window[m]);
        let (lt, eq) = partition3(window, pivot, key);
        if r < lt {
            hi = lo + lt;
        } else if r < lt + eq {
            return rank;
        } else {
            lo += lt + eq;
        }
    }
}

fn quickselect<T, K, F>(items: &mut [T], rank: usize, key: &F, rng: &mut SplitMix64) -> usize
where
    T: Copy,
    K: Ord + Copy,
    F: Fn(&T) -> K,
{
    let (mut lo, mut hi) = (0, items.len());
    loop {
        let window = &mut items[lo..hi];
        let r = rank - lo;
        if window.len() <= 10 {
            insertion_sort(window, key);
            return rank;
        }
        let pivot = key(&window[rng.below(window.len())]);
        let (lt, eq) = partition3(window, pivot, key);
        if r < lt {
            hi = lo + lt;
        } else if r < lt + eq {
            return rank;
        } else {
            lo += lt + eq;
        }
    }
}

/// SplitMix64 (Steele, Lea, Flood 2014). Only used for pivot choice.
#[derive(Debug, Clone)]
pub(crate) struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        mix64(self.0)
    }

    fn below(&mut self, n: usize) -> usize {
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }
}

/// SplitMix64 output finalizer.
pub(crate) fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
