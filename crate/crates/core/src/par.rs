//! Data-parallel map over independent evaluation points.
//!
//! With the `parallel` feature the work is spread over the current rayon
//! pool; without it the map runs sequentially. Results keep input order in
//! both cases, so output does not depend on the worker count.

use crate::error::Result;

#[cfg(feature = "parallel")]
pub fn try_map<T, U, F>(items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn try_map<T, U, F>(items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Sequential reference, always available.
pub fn try_map_seq<T, U, F>(items: &[T], f: F) -> Result<Vec<U>>
where
    F: Fn(&T) -> Result<U>,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_order_and_propagates_errors() {
        let xs: Vec<u32> = (0..1000).collect();
        let ys = try_map(&xs, |&x| Ok(x * 2)).unwrap();
        assert_eq!(ys, try_map_seq(&xs, |&x| Ok(x * 2)).unwrap());
        let err = try_map(&xs, |&x| {
            if x == 500 {
                Err(crate::Error::IllConditioned)
            } else {
                Ok(x)
            }
        });
        assert!(err.is_err());
    }
}
