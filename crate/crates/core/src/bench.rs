//! Timing harness over seeded generated instances.

use std::time::{Duration, Instant};

use crate::generator::{generate, GenError, GenSpec};
use crate::pipeline::{branch_decompose, decompose};
use crate::treedec::TdError;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Tree(#[from] TdError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Tree,
    Branch,
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    /// Median over the repetitions.
    pub time: Duration,
    pub width: usize,
}

/// Times `target` on one generated instance per `(k, n)` pair, reporting
/// the median of `reps` runs.
pub fn bench(
    pairs: &[(usize, usize)],
    seed: u64,
    reps: usize,
    target: Target,
) -> Result<Vec<BenchRow>, BenchError> {
    let mut rows = Vec::with_capacity(pairs.len());
    for &(k, n) in pairs {
        let emb = generate(&GenSpec::new(k, n, seed))?;
        let mut times = Vec::with_capacity(reps.max(1));
        let mut width = 0;
        for _ in 0..reps.max(1) {
            let t = Instant::now();
            width = match target {
                Target::Tree => decompose(&emb)?.width(),
                Target::Branch => branch_decompose(&emb).map_err(TdError::from)?.width(),
            };
            times.push(t.elapsed());
        }
        times.sort();
        rows.push(BenchRow {
            n: emb.n(),
            k,
            m: emb.m(),
            time: times[times.len() / 2],
            width,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_range_gives_empty_table() {
        assert!(bench(&[], 1, 3, Target::Tree).unwrap().is_empty());
    }

    #[test]
    fn rows_follow_pairs() {
        let rows = bench(&[(1, 50), (2, 80)], 3, 1, Target::Branch).unwrap();
        assert_eq!(rows.iter().map(|r| r.k).collect::<Vec<_>>(), vec![1, 2]);
        assert!(rows[1].width <= 5);
    }
}
