//! Deterministic inputs shared by the benchmark suite.

use multibeta::{BaseTuple, Mode, Scalar};

/// The admissible pair (2, 3/2): the smallest interesting two-base system.
pub fn golden_pair() -> BaseTuple {
    BaseTuple::parse_list("2,3/2", &Mode::Exact).expect("admissible pair")
}

/// An ascending three-base tuple exercising a wider alphabet.
pub fn wide_tuple() -> BaseTuple {
    BaseTuple::parse_list("3/2,7/4,2", &Mode::Exact).expect("admissible tuple")
}

/// `count + 1` points spread evenly across the domain `[0, U]`.
pub fn sample_points(tuple: &BaseTuple, count: usize) -> Vec<Scalar> {
    let upper = tuple.upper_bound();
    let denom = Scalar::from_integer(count as i64);
    (0..=count)
        .map(|i| {
            let numer = Scalar::from_integer(i as i64);
            upper
                .checked_mul(&numer.checked_div(&denom).expect("count > 0"))
                .expect("same mode")
        })
        .collect()
}
