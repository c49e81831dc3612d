use crate::instance::{Instance, Time};

/// Johnson's split of the jobs into set A (`p1 <= p2`) and set B (`p1 > p2`),
/// with the aggregate sums and maxima the optimality conditions need.
///
/// Index lists keep input order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Partition {
    pub a_idx: Vec<usize>,
    pub b_idx: Vec<usize>,
    pub p1_a: Time,
    pub p2_a: Time,
    pub p1_b: Time,
    pub p2_b: Time,
    pub p1: Time,
    pub p2: Time,
    /// Largest processing time over all jobs and machines.
    pub p_max: Time,
    /// Largest machine-1 time among A-jobs.
    pub p_max_a1: Time,
    /// Largest machine-2 time among B-jobs.
    pub p_max_b2: Time,
}

impl Partition {
    /// Single O(n) pass over the jobs.
    pub fn new(inst: &Instance) -> Self {
        let mut part = Partition::default();
        for (j, job) in inst.jobs().iter().enumerate() {
            part.p_max = part.p_max.max(job.p1).max(job.p2);
            if job.in_a() {
                part.a_idx.push(j);
                part.p1_a += job.p1;
                part.p2_a += job.p2;
                part.p_max_a1 = part.p_max_a1.max(job.p1);
            } else {
                part.b_idx.push(j);
                part.p1_b += job.p1;
                part.p2_b += job.p2;
                part.p_max_b2 = part.p_max_b2.max(job.p2);
            }
        }
        part.p1 = part.p1_a + part.p1_b;
        part.p2 = part.p2_a + part.p2_b;
        part
    }

    pub fn n_a(&self) -> usize {
        self.a_idx.len()
    }

    pub fn n_b(&self) -> usize {
        self.b_idx.len()
    }

    pub fn n(&self) -> usize {
        self.a_idx.len() + self.b_idx.len()
    }
}

/// Free-function form of [`Partition::new`].
pub fn partition(inst: &Instance) -> Partition {
    Partition::new(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{figure1_instance, gen_worstcase};
    use proptest::prelude::*;

    #[test]
    fn figure1_split() {
        let part = partition(&figure1_instance());
        assert_eq!(part.a_idx, (0..9).collect::<Vec<_>>());
        assert_eq!(part.b_idx, (9..18).collect::<Vec<_>>());
        assert_eq!((part.p1, part.p2), (121, 121));
        assert_eq!(part.p_max_a1, 9);
        assert_eq!(part.p_max_b2, 9);
        assert_eq!(part.p_max, 10);
    }

    #[test]
    fn empty() {
        let part = partition(&Instance::empty());
        assert_eq!(part, Partition::default());
    }

    #[test]
    fn figure2_family() {
        let part = partition(&gen_worstcase(4).unwrap());
        assert_eq!(part.a_idx, vec![0, 1, 2, 3]);
        assert_eq!(part.b_idx, vec![4, 5, 6, 7]);
        assert_eq!((part.p1_a, part.p2_a), (10, 14));
        assert_eq!((part.p1_b, part.p2_b), (14, 10));
    }

    #[test]
    fn equal_times_go_to_a() {
        let part = partition(&Instance::from_pairs(&[(3, 3), (4, 2)]).unwrap());
        assert_eq!(part.a_idx, vec![0]);
        assert_eq!(part.b_idx, vec![1]);
    }

    proptest! {
        #[test]
        fn two_coloring(pairs in prop::collection::vec((1i64..50, 1i64..50), 0..60)) {
            let inst = Instance::from_pairs(&pairs).unwrap();
            let part = partition(&inst);
            let mut all: Vec<usize> = part.a_idx.iter().chain(&part.b_idx).copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..pairs.len()).collect::<Vec<_>>());
            for &j in &part.a_idx { prop_assert!(pairs[j].0 <= pairs[j].1); }
            for &j in &part.b_idx { prop_assert!(pairs[j].0 > pairs[j].1); }
            prop_assert_eq!(part.p1, inst.total_p1());
            prop_assert_eq!(part.p2, inst.total_p2());
            prop_assert_eq!(part.p_max, inst.p_max());
        }
    }
}
