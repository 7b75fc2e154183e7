//! Execution strategy for the data-parallel inner loops.
//!
//! With the `parallel` feature enabled, [`Exec::Parallel`] runs work on the
//! current rayon pool. Without it, every strategy falls back to a plain
//! sequential loop. Results never depend on the strategy: every helper
//! returns items in index order.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a data-parallel loop is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when this strategy will actually fan out across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Maps `f` over `range`, returning results in index order.
    pub fn map_range<T, F>(self, range: Range<u64>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    /// Maps `f` over `items`, returning results in order.
    pub fn map_slice<S, T, F>(self, items: &[S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&S) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Splits `range` into `chunks` contiguous pieces and maps each piece.
    pub fn map_chunks<T, F>(self, range: Range<u64>, chunks: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(Range<u64>) -> T + Sync + Send,
    {
        let pieces = split_range(range, chunks);
        self.map_slice(&pieces, |r| f(r.clone()))
    }

    /// Sorts in place; parallel sort when available.
    pub fn sort_unstable<T: Ord + Send>(self, v: &mut [T]) {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            v.par_sort_unstable();
            return;
        }
        v.sort_unstable();
    }

    /// Number of pieces worth splitting work into.
    pub fn default_chunks(self) -> usize {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return rayon::current_num_threads().max(1) * 4;
        }
        1
    }
}

/// Splits `range` into at most `chunks` non-empty contiguous pieces.
pub fn split_range(range: Range<u64>, chunks: usize) -> Vec<Range<u64>> {
    let len = range.end.saturating_sub(range.start);
    if len == 0 {
        return Vec::new();
    }
    let chunks = (chunks.max(1) as u64).min(len);
    let base = len / chunks;
    let extra = len % chunks;
    let mut out = Vec::with_capacity(chunks as usize);
    let mut start = range.start;
    for i in 0..chunks {
        let size = base + u64::from(i < extra);
        out.push(start..start + size);
        start += size;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_covers_range() {
        for chunks in 1..10 {
            let parts = split_range(3..50, chunks);
            assert_eq!(parts.first().unwrap().start, 3);
            assert_eq!(parts.last().unwrap().end, 50);
            for w in parts.windows(2) {
                assert_eq!(w[0].end, w[1].start);
            }
        }
        assert!(split_range(5..5, 4).is_empty());
        assert_eq!(split_range(0..2, 8).len(), 2);
    }

    #[test]
    fn strategies_agree() {
        let a = Exec::Sequential.map_range(0..1000, |i| i * i);
        let b = Exec::Parallel.map_range(0..1000, |i| i * i);
        assert_eq!(a, b);
        let c: Vec<u64> = Exec::Parallel
            .map_chunks(0..1000, 7, |r| r.sum::<u64>())
            .into_iter()
            .collect();
        assert_eq!(c.iter().sum::<u64>(), (0..1000).sum());
    }
}
