//! Execution policy for the data-parallel inner loops.
//!
//! Everything the engine computes is a pure function of immutable inputs, so
//! the only thing that changes between the two policies is whether independent
//! jobs (slab columns, E2 rows, per-h runs) are farmed out to rayon.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Exec {
    Sequential,
    /// Falls back to sequential execution when the `parallel` feature is off.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            Exec::Parallel => {
                #[cfg(feature = "parallel")]
                {
                    use rayon::prelude::*;
                    items.par_iter().map(f).collect()
                }
                #[cfg(not(feature = "parallel"))]
                {
                    items.iter().map(f).collect()
                }
            }
        }
    }

    /// Like [`Exec::map`] but short-circuits on the first error (in input order
    /// for the sequential path; any error for the parallel one).
    pub fn try_map<T, R, E, F>(self, items: &[T], f: F) -> Result<Vec<R>, E>
    where
        T: Sync,
        R: Send,
        E: Send,
        F: Fn(&T) -> Result<R, E> + Sync + Send,
    {
        self.map(items, f).into_iter().collect()
    }

    pub fn join<A, B, RA, RB>(self, a: A, b: B) -> (RA, RB)
    where
        A: FnOnce() -> RA + Send,
        B: FnOnce() -> RB + Send,
        RA: Send,
        RB: Send,
    {
        match self {
            Exec::Sequential => (a(), b()),
            Exec::Parallel => {
                #[cfg(feature = "parallel")]
                {
                    rayon::join(a, b)
                }
                #[cfg(not(feature = "parallel"))]
                {
                    (a(), b())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_policies_agree() {
        let xs: Vec<u64> = (0..200).collect();
        let a = Exec::Sequential.map(&xs, |x| x * x);
        let b = Exec::Parallel.map(&xs, |x| x * x);
        assert_eq!(a, b);
    }

    #[test]
    fn try_map_reports_error() {
        let xs = [1, 2, 3];
        let r: Result<Vec<i32>, String> = Exec::Parallel.try_map(&xs, |&x| {
            if x == 2 {
                Err("two".to_string())
            } else {
                Ok(x)
            }
        });
        assert_eq!(r, Err("two".to_string()));
    }
}
