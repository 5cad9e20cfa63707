//! Scalar float math routed through `libm` so the crate builds without `std`.

#![allow(dead_code)]

pub use libm::{atan2, cos, exp, fabs, log, log1p, log2, pow, sin, sqrt};

/// Natural logarithm, named to read well at call sites.
#[inline]
pub fn ln(x: f64) -> f64 {
    log(x)
}

/// `ceil` as an integer count, saturating at zero for negative input.
#[inline]
pub fn ceil_count(x: f64) -> u64 {
    if x <= 0.0 {
        0
    } else {
        libm::ceil(x) as u64
    }
}
