//! Data-parallel helpers. With the `parallel` feature (default) these run
//! on rayon; without it they fall back to sequential loops with identical
//! results. Reductions use a total order on `(value, key)` so the outcome
//! does not depend on scheduling.

/// Minimizes `eval(i)` over `0..count`, breaking value ties by the
/// secondary key (and then by index). Returns `None` for an empty range.
pub fn argmin_by<K, F, G>(count: usize, eval: F, key: G) -> Option<(usize, f64)>
where
    K: Ord + Send,
    F: Fn(usize) -> f64 + Sync,
    G: Fn(usize) -> K + Sync,
{
    let pick = |a: (usize, f64), b: (usize, f64)| -> (usize, f64) {
        if b.1 < a.1 {
            b
        } else if a.1 < b.1 {
            a
        } else {
            match key(a.0).cmp(&key(b.0)) {
                std::cmp::Ordering::Greater => b,
                std::cmp::Ordering::Less => a,
                std::cmp::Ordering::Equal => {
                    if b.0 < a.0 {
                        b
                    } else {
                        a
                    }
                }
            }
        }
    };

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..count).into_par_iter().map(|i| (i, eval(i))).reduce_with(pick)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(|i| (i, eval(i))).reduce(pick)
    }
}

/// Maximizes `eval(i)` over `0..count` with the same tie discipline.
pub fn argmax_by<K, F, G>(count: usize, eval: F, key: G) -> Option<(usize, f64)>
where
    K: Ord + Send,
    F: Fn(usize) -> f64 + Sync,
    G: Fn(usize) -> K + Sync,
{
    argmin_by(count, |i| -eval(i), key).map(|(i, v)| (i, -v))
}

/// Maps `f` over the items, in parallel when enabled. Output order matches
/// input order either way.
pub fn map_collect<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

/// Runs `f` inside a thread pool of the requested size when parallelism is
/// enabled; `jobs = 0` keeps the default pool. Sequential builds ignore
/// `jobs`.
pub fn with_pool<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        if jobs == 0 {
            f()
        } else {
            rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .expect("failed to build thread pool")
                .install(f)
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        f()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argmin_breaks_ties_by_key() {
        // values: [1, 0, 0, 2]; tie between 1 and 2 goes to smaller key
        let vals = [1.0, 0.0, 0.0, 2.0];
        let (idx, v) = argmin_by(4, |i| vals[i], |i| std::cmp::Reverse(i)).unwrap();
        assert_eq!(v, 0.0);
        assert_eq!(idx, 2); // Reverse(2) < Reverse(1)
        let (idx, _) = argmin_by(4, |i| vals[i], |i| i).unwrap();
        assert_eq!(idx, 1);
    }

    #[test]
    fn map_preserves_order() {
        let out = map_collect(vec![3, 1, 2], |v| v * 10);
        assert_eq!(out, vec![30, 10, 20]);
    }
}
