//! Shared fixtures for the criterion benchmarks.

use segre_core::{MonomialIdeal, Rational};

/// `(x1^2, x2^3)`.
pub fn diagonal() -> MonomialIdeal {
    MonomialIdeal::from_vecs(2, &[&[2, 0], &[0, 3]]).expect("valid ideal")
}

/// `(x1^2, x1*x2)`, which has an unbounded Newton region.
pub fn mixed() -> MonomialIdeal {
    MonomialIdeal::from_vecs(2, &[&[2, 0], &[1, 1]]).expect("valid ideal")
}

/// A three-variable ideal with several diagram facets.
pub fn three_variable() -> MonomialIdeal {
    MonomialIdeal::from_vecs(3, &[&[4, 0, 0], &[0, 3, 0], &[0, 0, 5], &[1, 1, 1]]).expect("valid ideal")
}

/// `X = (1/3, 1/2)`.
pub fn sample_point() -> Vec<Rational> {
    vec![Rational::new(1.into(), 3.into()), Rational::new(1.into(), 2.into())]
}
