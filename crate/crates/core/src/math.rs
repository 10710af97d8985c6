//! Float math routed through `std` or `libm` depending on the build.

#![allow(dead_code)]

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("building nvrange-core without `std` requires the `libm` feature");

macro_rules! shim {
    ($name:ident, $libm:ident) => {
        #[cfg(feature = "std")]
        #[inline]
        pub(crate) fn $name(x: f64) -> f64 {
            f64::$name(x)
        }
        #[cfg(not(feature = "std"))]
        #[inline]
        pub(crate) fn $name(x: f64) -> f64 {
            libm::$libm(x)
        }
    };
}

shim!(cos, cos);
shim!(sin, sin);
shim!(exp, exp);
shim!(ln, log);
shim!(sqrt, sqrt);
shim!(floor, floor);
shim!(round, round);

#[cfg(feature = "std")]
#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    x.abs()
}
#[cfg(not(feature = "std"))]
#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// Euclidean remainder, result in `[0, m)` for `m > 0`.
#[inline]
pub(crate) fn rem_euclid(x: f64, m: f64) -> f64 {
    let r = x - floor(x / m) * m;
    if r >= m {
        r - m
    } else {
        r
    }
}
