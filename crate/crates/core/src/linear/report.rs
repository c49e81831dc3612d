use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::SolveReport;

/// Machine-readable summary of a [`SolveReport`]. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveRecord {
    pub n: usize,
    pub makespan: i64,
    pub path: String,
    pub k_a: Option<usize>,
    pub k_a_prime: Option<usize>,
    pub k_b: Option<usize>,
    pub k_b_prime: Option<usize>,
    /// Inclusive `(first, last)` positions.
    pub free_blocks: Vec<(usize, usize)>,
    pub equivalent_count_digits: usize,
    pub linear_certified: bool,
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

impl SolveReport {
    pub fn to_record(&self) -> SolveRecord {
        SolveRecord {
            n: self.n(),
            makespan: self.makespan,
            path: self.path.to_string(),
            k_a: self.indices.k_a,
            k_a_prime: self.indices.k_a_prime,
            k_b: self.indices.k_b,
            k_b_prime: self.indices.k_b_prime,
            free_blocks: self.free_blocks.iter().map(|b| (b.start + 1, b.start + b.len)).collect(),
            equivalent_count_digits: self.equivalent_count_digits(),
            linear_certified: self.linear_certified,
        }
    }

    /// One-line summary, e.g. `Cmax=122 path=Prop2and3 kA=2 kA'=2 kB=17 kB'=17`.
    pub fn summary_line(&self) -> String {
        format!(
            "Cmax={} path={} kA={} kA'={} kB={} kB'={}",
            self.makespan,
            self.path,
            opt(self.indices.k_a),
            opt(self.indices.k_a_prime),
            opt(self.indices.k_b),
            opt(self.indices.k_b_prime),
        )
    }

    /// Key-value report.
    pub fn to_text(&self) -> String {
        let mut s = self.summary_line();
        s.push('\n');
        let seq: Vec<String> = self.sequence.one_based().iter().map(|j| j.to_string()).collect();
        let blocks: Vec<String> = self
            .free_blocks
            .iter()
            .map(|b| format!("{}-{}", b.start + 1, b.start + b.len))
            .collect();
        let _ = writeln!(s, "makespan: {}", self.makespan);
        let _ = writeln!(s, "path: {}", self.path);
        let _ = writeln!(s, "n_a: {}", self.n_a);
        let _ = writeln!(s, "n_b: {}", self.n_b);
        let _ = writeln!(s, "sequence: {}", seq.join(" "));
        let _ = writeln!(s, "free_blocks: {}", if blocks.is_empty() { "-".into() } else { blocks.join(" ") });
        let _ = writeln!(s, "equivalent_count_digits: {}", self.equivalent_count_digits());
        let _ = writeln!(s, "linear_certified: {}", self.linear_certified);
        let _ = writeln!(s, "longest_sorted_range: {}", self.sort_stats.longest);
        s
    }
}
