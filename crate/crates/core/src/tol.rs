//! Tolerance policy.
//!
//! Every fuzzy comparison in the crate funnels through this module, so the
//! tolerance can be changed in one place (or at startup via the CLI's
//! `--tolerance` flag). The default is 1e-9, which suits desk-scale inputs;
//! an exact-arithmetic kernel could be slotted in behind the same functions.

use std::sync::atomic::{AtomicU64, Ordering};

// f64::to_bits(1e-9)
static TOL_BITS: AtomicU64 = AtomicU64::new(4472406533629990549);

/// Current tolerance for orientation ties and on-boundary tests.
#[inline]
pub fn tol() -> f64 {
    f64::from_bits(TOL_BITS.load(Ordering::Relaxed))
}

/// Replace the global tolerance. Intended to be called once at startup.
pub fn set_tol(t: f64) {
    assert!(t.is_finite() && t > 0.0, "tolerance must be positive");
    TOL_BITS.store(t.to_bits(), Ordering::Relaxed);
}

#[inline]
pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= tol()
}

#[inline]
pub fn approx_zero(x: f64) -> bool {
    x.abs() <= tol()
}

/// `a <= b` up to tolerance.
#[inline]
pub fn approx_le(a: f64, b: f64) -> bool {
    a <= b + tol()
}

/// `a >= b` up to tolerance.
#[inline]
pub fn approx_ge(a: f64, b: f64) -> bool {
    a + tol() >= b
}

/// Sign of `x` with the tolerance treated as zero: -1, 0 or +1.
#[inline]
pub fn fuzzy_sign(x: f64) -> i32 {
    let t = tol();
    if x > t {
        1
    } else if x < -t {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_tolerance() {
        assert_eq!(tol(), 1e-9);
    }

    #[test]
    fn fuzzy_sign_bands() {
        assert_eq!(fuzzy_sign(1e-8), 1);
        assert_eq!(fuzzy_sign(-1e-8), -1);
        assert_eq!(fuzzy_sign(5e-10), 0);
        assert_eq!(fuzzy_sign(-5e-10), 0);
        assert_eq!(fuzzy_sign(0.0), 0);
    }
}
