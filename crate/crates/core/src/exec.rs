//! Execution policy for the data-parallel loops (Gaussian buffer fills and
//! Monte-Carlo repetitions).
//!
//! Both policies produce bit-identical results: work is split into chunks
//! whose boundaries do not depend on the thread count, and chunk results are
//! combined in index order.

/// How data-parallel loops are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExecutionPolicy {
    Sequential,
    /// Uses the rayon global pool. Without the `parallel` feature this falls
    /// back to sequential execution.
    Parallel,
}

impl Default for ExecutionPolicy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecutionPolicy::Parallel
        } else {
            ExecutionPolicy::Sequential
        }
    }
}

impl ExecutionPolicy {
    /// Whether this policy actually runs on multiple threads in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == ExecutionPolicy::Parallel
    }

    /// Applies `f` to consecutive chunks of `data`, passing each chunk's
    /// starting offset.
    pub(crate) fn for_each_chunk<T, F>(self, data: &mut [T], chunk: usize, f: F)
    where
        T: Send,
        F: Fn(usize, &mut [T]) + Sync + Send,
    {
        let chunk = chunk.max(1);
        #[cfg(feature = "parallel")]
        if self.is_parallel() && data.len() > chunk {
            use rayon::prelude::*;
            data.par_chunks_mut(chunk)
                .enumerate()
                .for_each(|(k, c)| f(k * chunk, c));
            return;
        }
        for (k, c) in data.chunks_mut(chunk).enumerate() {
            f(k * chunk, c);
        }
    }

    /// Maps `f` over `0..n` and returns the results in index order.
    pub(crate) fn map_indexed<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() && n > 1 {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }
}
