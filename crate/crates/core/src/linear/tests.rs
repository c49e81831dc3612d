use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::generators::{figure1_instance, gen_uniform, gen_worstcase};
use crate::johnson::johnson_full;
use crate::schedule::{brute_force_optimum, makespan};

fn inst(pairs: &[(Time, Time)]) -> Instance {
    Instance::from_pairs(pairs).unwrap()
}

/// Sorts A by `p1` and scans tie-closed prefixes for `sum p1 < sum p2 - p_max_A1`.
/// Returns `(k_a, k_a_prime)`.
fn reference_k_a(inst: &Instance) -> Option<(usize, usize)> {
    let mut a: Vec<Job> = inst.jobs().iter().copied().filter(|j| j.p1 <= j.p2).collect();
    if a.is_empty() {
        return None;
    }
    let pmax = a.iter().map(|j| j.p1).max().unwrap();
    let (s1, s2): (Time, Time) = a.iter().fold((0, 0), |(x, y), j| (x + j.p1, y + j.p2));
    if s1 > s2 - pmax {
        return None;
    }
    a.sort_by_key(|j| j.p1);
    let (mut c1, mut c2) = (0, 0);
    let mut i = 0;
    while i < a.len() {
        let start = i;
        while i < a.len() && a[i].p1 == a[start].p1 {
            c1 += a[i].p1;
            c2 += a[i].p2;
            i += 1;
        }
        if c1 < c2 - pmax {
            return Some((i, start + 1));
        }
    }
    Some((a.len(), a.iter().position(|j| j.p1 == a[a.len() - 1].p1).unwrap() + 1))
}

fn pairs_strategy(max_n: usize, max_t: Time) -> impl Strategy<Value = Vec<(Time, Time)>> {
    prop::collection::vec((1..=max_t, 1..=max_t), 0..=max_n)
}

#[test]
fn figure1_report() {
    let inst = figure1_instance();
    let r = solve(&inst);
    assert_eq!(r.makespan, 122);
    assert_eq!(r.path, SolvePath::Prop2And3);
    assert_eq!(r.indices.k_a, Some(2));
    assert_eq!(r.indices.k_a_prime, Some(2));
    assert_eq!(r.trailing_b(), Some(2));
    assert_eq!(r.free_blocks, vec![FreeBlock { start: 2, len: 7 }, FreeBlock { start: 9, len: 7 }]);
    assert_eq!(r.equivalent_count(), BigUint::from(25_401_600u32));
    assert_eq!(r.equivalent_count_digits(), 8);
    assert!(r.linear_certified);
    assert_eq!((r.a_mode, r.b_mode), (SideMode::Partial, SideMode::Partial));
    assert_eq!(r.sort_stats.longest, 1);
    assert_eq!(makespan(&inst, r.sequence.as_slice()).unwrap(), 122);
    let seq = r.sequence.one_based();
    assert_eq!(&seq[..2], &[1, 2]);
    assert_eq!(&seq[16..], &[17, 18]);
}

#[test]
fn figure1_summary_and_record() {
    let r = solve(&figure1_instance());
    assert_eq!(r.summary_line(), "Cmax=122 path=Prop2and3 kA=2 kA'=2 kB=17 kB'=17");
    let rec = r.to_record();
    assert_eq!(rec.free_blocks, vec![(3, 9), (10, 16)]);
    assert_eq!(rec.path, "Prop2and3");
    let text = r.to_text();
    assert!(text.contains("free_blocks: 3-9 10-16"));
    assert!(text.contains("makespan: 122"));
}

#[test]
fn worstcase_needs_full_sort() {
    for n in 1..=12 {
        let inst = gen_worstcase(n).unwrap();
        let r = solve(&inst);
        assert_eq!(r.path, SolvePath::FullSortFallback, "n={n}");
        assert_eq!(r.equivalent_count(), BigUint::from(1u32));
        assert_eq!(r.makespan, johnson_full(&inst).1);
        assert!(r.has_fallback());
        // the guard holds with equality, so the cut is all of A
        assert_eq!(r.indices.k_a, Some(n));
        assert_eq!(r.trailing_b(), Some(n));
    }
}

#[test]
fn worstcase_large_family() {
    for n in [50, 200, 1000] {
        let r = solve(&gen_worstcase(n).unwrap());
        assert_eq!(r.path, SolvePath::FullSortFallback, "n={n}");
        assert_eq!(r.sequence, Sequence::identity(2 * n));
    }
}

#[test]
fn prop5_and_prop6_examples() {
    let p = Partition::new(&inst(&[(35, 60), (15, 10)]));
    assert_eq!((p.p1, p.p2, p.p_max_b2), (50, 70, 10));
    assert!(check_prop5(&p));
    let p = Partition::new(&inst(&[(35, 45), (15, 10)]));
    assert_eq!((p.p1, p.p2), (50, 55));
    assert!(!check_prop5(&p));
    let p = Partition::new(&inst(&[(10, 20), (50, 20)]));
    assert_eq!((p.p1, p.p2, p.p_max_a1), (60, 40, 10));
    assert!(check_prop6(&p));
    let p = Partition::new(&figure1_instance());
    assert!(!check_prop5(&p) && !check_prop6(&p));
}

#[test]
fn prop5_path_frees_b() {
    let inst = inst(&[(1, 20), (2, 30), (3, 25), (5, 4), (6, 2), (7, 3)]);
    let r = solve(&inst);
    assert_eq!(r.path, SolvePath::Prop5);
    assert_eq!(r.b_mode, SideMode::Free);
    assert_eq!(r.free_blocks.last(), Some(&FreeBlock { start: 3, len: 3 }));
    assert_eq!(r.makespan, johnson_full(&inst).1);
    // B stays in input order
    assert_eq!(&r.sequence.as_slice()[3..], &[3, 4, 5]);
}

#[test]
fn prop6_path_frees_a() {
    let inst = inst(&[(20, 1), (30, 2), (25, 3), (4, 5), (2, 6), (3, 7)]);
    let r = solve(&inst);
    assert_eq!(r.path, SolvePath::Prop6);
    assert_eq!(r.a_mode, SideMode::Free);
    assert_eq!(r.free_blocks[0], FreeBlock { start: 0, len: 3 });
    assert_eq!(&r.sequence.as_slice()[..3], &[3, 4, 5]);
    assert_eq!(r.makespan, johnson_full(&inst).1);
}

#[test]
fn one_sided_paths() {
    // A qualifies, B's guard fails
    let i = inst(&[(1, 3), (1, 4), (10, 9), (9, 8)]);
    let r = solve(&i);
    assert_eq!(r.path, SolvePath::Prop2Only);
    assert_eq!(r.b_mode, SideMode::Full);
    assert_eq!(r.makespan, johnson_full(&i).1);
    let r = solve(&i.reversed());
    assert_eq!(r.path, SolvePath::Prop3Only);
    assert_eq!(r.a_mode, SideMode::Full);
    assert_eq!(r.makespan, johnson_full(&i.reversed()).1);
}

#[test]
fn two_equal_jobs_count_two() {
    let i = inst(&[(1, 2), (1, 2)]);
    let r = solve(&i);
    assert_eq!(r.free_blocks, vec![FreeBlock { start: 0, len: 2 }]);
    assert_eq!(count_equivalent(&r), BigUint::from(2u32));
    assert_eq!(brute_force_optimum(&i).unwrap(), (r.makespan, 2));
}

#[test]
fn no_blocks_count_one() {
    let r = solve(&inst(&[(3, 5)]));
    assert!(r.free_blocks.is_empty());
    assert_eq!(count_equivalent(&r), BigUint::from(1u32));
    let r = solve(&Instance::empty());
    assert_eq!(r.makespan, 0);
    assert_eq!(r.n(), 0);
}

#[test]
fn large_counts_use_digit_estimate() {
    let inst = gen_uniform(20_000, 20_000, 5).unwrap();
    let r = solve(&inst);
    let total: usize = r.free_blocks.iter().map(|b| b.len).sum();
    assert!(total > 4096);
    let exact = r.equivalent_count().to_string().len();
    assert_eq!(r.equivalent_count_digits(), exact);
}

#[test]
fn quickselect_gives_same_report() {
    for seed in 0..30 {
        let inst = gen_uniform(300, 300, seed).unwrap();
        let a = solve(&inst);
        let b = solve_with(&inst, SolveConfig { selection: Selection::Quickselect { seed } });
        assert_eq!(a, b);
    }
}

#[test]
fn selection_matches_reference_on_uniform() {
    for seed in 0..200 {
        let n = 10 + (seed as usize * 7) % 190;
        let inst = gen_uniform(n, n as Time, seed).unwrap();
        let part = Partition::new(&inst);
        let got = find_k_a(&part, &inst).map(|c| (c.k_a, c.k_a_prime));
        assert_eq!(got, reference_k_a(&inst), "seed={seed}");
    }
}

#[test]
fn adversarial_selection_inputs() {
    let all_ties = inst(&vec![(4, 9); 101]);
    let part = Partition::new(&all_ties);
    let c = find_k_a(&part, &all_ties).unwrap();
    assert_eq!((c.k_a, c.k_a_prime), (101, 1));
    assert_eq!(Some((c.k_a, c.k_a_prime)), reference_k_a(&all_ties));
    let inc: Vec<(Time, Time)> = (1..=200).map(|i| (i, i + 3)).collect();
    let inc = inst(&inc);
    let part = Partition::new(&inc);
    assert_eq!(find_k_a(&part, &inc).map(|c| (c.k_a, c.k_a_prime)), reference_k_a(&inc));
}

proptest! {
    #[test]
    fn matches_johnson(pairs in pairs_strategy(40, 30)) {
        let i = inst(&pairs);
        let r = solve(&i);
        prop_assert_eq!(r.makespan, johnson_full(&i).1);
        prop_assert_eq!(r.makespan, makespan(&i, r.sequence.as_slice()).unwrap());
    }

    #[test]
    fn free_block_shuffles_are_optimal(pairs in pairs_strategy(8, 12), seed in any::<u64>()) {
        let i = inst(&pairs);
        let r = solve(&i);
        let (opt, _) = brute_force_optimum(&i).unwrap();
        prop_assert_eq!(r.makespan, opt);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let s = r.shuffled_sequence(&mut rng);
            prop_assert_eq!(makespan(&i, &s).unwrap(), opt);
        }
    }

    #[test]
    fn k_a_matches_reference(pairs in pairs_strategy(60, 20)) {
        let i = inst(&pairs);
        let part = Partition::new(&i);
        let got = find_k_a(&part, &i).map(|c| (c.k_a, c.k_a_prime));
        prop_assert_eq!(got, reference_k_a(&i));
    }

    #[test]
    fn k_b_matches_reference_on_reversal(pairs in pairs_strategy(60, 20)) {
        // only B-jobs, so reversal maps B exactly onto the reversed A-set
        let b: Vec<(Time, Time)> = pairs.into_iter().filter(|(x, y)| x > y).collect();
        let i = inst(&b);
        let part = Partition::new(&i);
        let got = find_k_b(&part, &i).map(|c| (c.trailing(), i.len() + 1 - c.k_b_prime));
        prop_assert_eq!(got, reference_k_a(&i.reversed()));
    }

    #[test]
    fn reversal_mirrors_path(pairs in pairs_strategy(40, 25)) {
        let pairs: Vec<_> = pairs.into_iter().filter(|(x, y)| x != y).collect();
        let i = inst(&pairs);
        let part = Partition::new(&i);
        prop_assume!(!(check_prop5(&part) && check_prop6(&part)));
        let r = solve(&i);
        let m = solve(&i.reversed());
        let mirrored = match r.path {
            SolvePath::Prop5 => SolvePath::Prop6,
            SolvePath::Prop6 => SolvePath::Prop5,
            SolvePath::Prop2Only => SolvePath::Prop3Only,
            SolvePath::Prop3Only => SolvePath::Prop2Only,
            p => p,
        };
        prop_assert_eq!(m.path, mirrored);
        prop_assert_eq!(r.indices.k_a, m.trailing_b());
        prop_assert_eq!(r.trailing_b(), m.indices.k_a);
        prop_assert_eq!(check_prop6(&part), check_prop5(&Partition::new(&i.reversed())));
        prop_assert_eq!(r.makespan, m.makespan);
    }

    #[test]
    fn tie_closure(pairs in pairs_strategy(60, 8)) {
        let i = inst(&pairs);
        let part = Partition::new(&i);
        if let Some(c) = find_k_a(&part, &i) {
            let below = part.a_idx.iter().filter(|&&j| i.job(j).p1 <= c.threshold).count();
            let strictly = part.a_idx.iter().filter(|&&j| i.job(j).p1 < c.threshold).count();
            prop_assert_eq!(below, c.k_a);
            prop_assert_eq!(strictly + 1, c.k_a_prime);
            prop_assert!(c.k_a_prime <= c.k_a && c.k_a <= part.n_a());
        }
        if let Some(c) = find_k_b(&part, &i) {
            prop_assert!(part.n_a() < c.k_b && c.k_b <= c.k_b_prime);
        }
    }

    #[test]
    fn work_bound(pairs in pairs_strategy(80, 50)) {
        let i = inst(&pairs);
        let r = solve(&i);
        if !r.has_fallback() {
            prop_assert!(r.sort_stats.longest <= r.partial_sort_bound());
        }
    }
}
