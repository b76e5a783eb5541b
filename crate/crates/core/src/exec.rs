//! Data-parallel helpers. With the `parallel` feature (default) these run on
//! the current rayon pool; without it they are plain iterators. Output order
//! always matches input order.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_range<U: Send>(range: Range<usize>, f: impl Fn(usize) -> U + Sync + Send) -> Vec<U> {
    range.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<U: Send>(range: Range<usize>, f: impl Fn(usize) -> U + Sync + Send) -> Vec<U> {
    range.map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn filter_map_range<U: Send>(
    range: Range<usize>,
    f: impl Fn(usize) -> Option<U> + Sync + Send,
) -> Vec<U> {
    range.into_par_iter().filter_map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn filter_map_range<U: Send>(
    range: Range<usize>,
    f: impl Fn(usize) -> Option<U> + Sync + Send,
) -> Vec<U> {
    range.filter_map(f).collect()
}

/// True when the helpers dispatch to rayon.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let v: Vec<u32> = (0..1000).collect();
        assert_eq!(
            map(&v, |x| x * 2),
            (0..1000).map(|x| x * 2).collect::<Vec<_>>()
        );
        assert_eq!(map_range(0..5, |i| i + 1), vec![1, 2, 3, 4, 5]);
        let odd = filter_map_range(0..10, |i| (i % 2 == 1).then_some(i));
        assert_eq!(odd, vec![1, 3, 5, 7, 9]);
    }
}
