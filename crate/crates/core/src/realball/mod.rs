//! Certified real and complex ball arithmetic.

mod ball;
mod complex;
mod dyadic;
mod mag;
mod transcendental;

use std::sync::atomic::{AtomicU32, Ordering};

pub use ball::{certified_gap, certify_compare, within, CertOrdering, RealBall};
pub use complex::ComplexBall;
pub use dyadic::Dyadic;
pub use mag::Mag;
pub use transcendental::{cos_sin, exp, exp_complex, pi};

use crate::error::{Error, Result};

/// Default ceiling for the precision doubling loop.
pub const DEFAULT_PRECISION_CAP: u32 = 1 << 20;

static PRECISION_CAP: AtomicU32 = AtomicU32::new(DEFAULT_PRECISION_CAP);

pub fn precision_cap() -> u32 {
    PRECISION_CAP.load(Ordering::Relaxed)
}

/// Set the process-wide precision cap used by [`refine_until`] callers that
/// do not pass an explicit cap.
pub fn set_precision_cap(bits: u32) {
    PRECISION_CAP.store(bits.max(16), Ordering::Relaxed);
}

/// Run `f` at `start` bits, doubling on `UndecidableSign`/`Undecided`
/// until it succeeds or the cap is reached. `start` is clamped to the cap.
pub fn refine_until<T, F>(start: u32, cap: u32, what: &str, mut f: F) -> Result<T>
where
    F: FnMut(u32) -> Result<T>,
{
    let cap = cap.max(16);
    let mut prec = start.clamp(16, cap);
    loop {
        match f(prec) {
            Ok(v) => return Ok(v),
            Err(Error::UndecidableSign(_)) | Err(Error::Undecided(_)) => {
                if prec >= cap {
                    return Err(Error::PrecisionExhausted { cap, what: what.to_string() });
                }
                prec = prec.saturating_mul(2).min(cap);
            }
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refine_doubles_then_gives_up() {
        let mut seen = Vec::new();
        let r: Result<()> = refine_until(16, 128, "testing", |p| {
            seen.push(p);
            Err(Error::UndecidableSign("x".into()))
        });
        assert_eq!(seen, vec![16, 32, 64, 128]);
        assert!(matches!(r, Err(Error::PrecisionExhausted { cap: 128, .. })));
        let ok = refine_until(16, 1024, "t", |p| if p >= 100 { Ok(p) } else { Err(Error::Undecided("u".into())) });
        assert_eq!(ok, Ok(128));
    }
}
