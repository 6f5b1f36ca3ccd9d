//! Horospherical integral geometry and zonal harmonic analysis on the
//! homogeneous tree `T_q`, realized as the Cayley graph of the free product
//! of `q+1` copies of `Z/2`.
//!
//! Combinatorial quantities (measures, Radon sums, inversions, range tests)
//! are exact rationals; spectral quantities are `Complex64`.

pub mod boundary;
pub mod error;
pub mod flags;
pub mod horo;
pub mod inversion;
pub mod sample;
pub mod scalar;
pub mod spectral;
pub mod support;
pub mod tree;

pub use error::{Error, Result};

/// Exact rational scalar used for all combinatorial computations.
pub type Q = num_rational::Ratio<i128>;
/// Double precision complex scalar for spectral computations.
pub type C = num_complex::Complex64;

/// Builds the rational `n / d`.
pub fn rat(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

/// `q^k` for possibly negative `k`, exactly.
pub fn qpow(q: u32, k: i64) -> Q {
    let b = Q::from_integer(q as i128);
    if k >= 0 {
        num_traits::pow(b, k as usize)
    } else {
        num_traits::pow(b.recip(), (-k) as usize)
    }
}
