//! Exact scalar arithmetic: arbitrary-precision rationals, expression trees
//! over them, and certified interval evaluation with outward rounding.
//!
//! Everything in this module is float-free. Real values are represented
//! either exactly (as [`Rat`]) or by enclosures — intervals with rational
//! endpoints that are guaranteed to contain the exact real value. All
//! comparisons that claim equality go through a symbolic path (constant
//! folding plus a small set of exact rewrites); numeric evaluation alone can
//! only ever separate values, never identify them.

mod eval;
mod expr;
mod interval;

pub use eval::{compare, eval_interval, Ordering3, PRECISION_LADDER};
pub use expr::RigorousExpr;
pub use interval::Interval;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, kept in lowest terms with a positive
/// denominator (both invariants are enforced by `num_rational`).
pub type Rat = num_rational::BigRational;

/// Error type for exact evaluation and comparison.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    /// A domain precondition (positive log/pow arguments, nonnegative sqrt
    /// argument, nonzero denominator, …) was violated or could not be
    /// certified. `definite` is true when the violation is proven, false when
    /// the available precision was merely insufficient to certify the
    /// precondition.
    #[error("domain error: {reason}")]
    Domain { reason: String, definite: bool },
    /// A result is too large to materialize at any useful precision.
    #[error("magnitude overflow: {0}")]
    Overflow(String),
}

impl ArithError {
    pub(crate) fn definite(reason: impl Into<String>) -> Self {
        ArithError::Domain { reason: reason.into(), definite: true }
    }

    pub(crate) fn indefinite(reason: impl Into<String>) -> Self {
        ArithError::Domain { reason: reason.into(), definite: false }
    }

    /// True when retrying at a higher precision cannot possibly help.
    pub fn is_definite(&self) -> bool {
        match self {
            ArithError::Domain { definite, .. } => *definite,
            ArithError::Overflow(_) => true,
        }
    }
}

/// Largest `e` with `2^e <= n`, for a positive integer `n`.
pub fn floor_log2(n: &BigUint) -> Result<u64, ArithError> {
    if n.is_zero() {
        return Err(ArithError::definite("floor_log2 requires a positive integer"));
    }
    Ok(n.bits() - 1)
}

/// Largest `e` (possibly negative) with `2^e <= x`, for a positive rational.
pub(crate) fn floor_log2_rat(x: &Rat) -> i64 {
    debug_assert!(x.is_positive());
    let a = x.numer().magnitude();
    let b = x.denom().magnitude();
    // bits(a) - bits(b) is either the answer or one too large.
    let t = a.bits() as i64 - b.bits() as i64;
    if pow2_le(a, b, t) {
        t
    } else {
        t - 1
    }
}

/// Does `2^e <= a/b` hold? (`a`, `b` positive integers.)
fn pow2_le(a: &BigUint, b: &BigUint, e: i64) -> bool {
    if e >= 0 {
        *a >= (b << e as usize)
    } else {
        (a << (-e) as usize) >= *b
    }
}

/// If `r` is an exact (possibly negative) power of two, its exponent.
pub(crate) fn rat_pow2_exponent(r: &Rat) -> Option<i64> {
    if !r.is_positive() {
        return None;
    }
    let np = pow2_exponent(r.numer().magnitude())?;
    let dp = pow2_exponent(r.denom().magnitude())?;
    Some(np as i64 - dp as i64)
}

fn pow2_exponent(u: &BigUint) -> Option<u64> {
    let t = u.trailing_zeros()?;
    (t == u.bits() - 1).then_some(t)
}

/// `floor(x * 2^s) / 2^s`: x rounded down onto the dyadic grid of spacing
/// `2^-s` (`s` may be negative, giving a coarser-than-integer grid).
pub(crate) fn floor_scale(x: &Rat, s: i64) -> Rat {
    let (num, den): (BigInt, BigInt) = if s >= 0 {
        (x.numer() << s as usize, x.denom().clone())
    } else {
        (x.numer().clone(), x.denom() << (-s) as usize)
    };
    let q = num.div_floor(&den);
    if s >= 0 {
        Rat::new(q, BigInt::one() << s as usize)
    } else {
        Rat::from_integer(q << (-s) as usize)
    }
}

/// Round down to roughly `bits` significant bits. Sound for either endpoint
/// direction via `round_up_sig(x) = -round_down_sig(-x)`.
pub(crate) fn round_down_sig(x: &Rat, bits: u32) -> Rat {
    if x.is_zero() {
        return Rat::zero();
    }
    let e = floor_log2_rat(&x.abs());
    floor_scale(x, bits as i64 - 1 - e)
}

pub(crate) fn round_up_sig(x: &Rat, bits: u32) -> Rat {
    -round_down_sig(&-x.clone(), bits)
}

/// `2^-k` as a rational.
#[cfg(test)]
pub(crate) fn pow2_neg(k: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << k as usize)
}

/// Decimal rendering of a rational, rounded toward `-inf` (`Down`) or `+inf`
/// (`Up`) at `digits` places after the decimal point. Deterministic; used for
/// displaying interval endpoints honestly.
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum DecimalRounding {
    Down,
    Up,
}

pub fn decimal_string(x: &Rat, digits: usize, rounding: DecimalRounding) -> String {
    let pow10 = BigInt::from(10u32).pow(digits as u32);
    let scaled = x * Rat::from_integer(pow10.clone());
    let units = match rounding {
        DecimalRounding::Down => scaled.floor().to_integer(),
        DecimalRounding::Up => scaled.ceil().to_integer(),
    };
    let neg = units.is_negative();
    let mag = units.magnitude().clone();
    let (int_part, frac_part) = (&mag / pow10.magnitude(), &mag % pow10.magnitude());
    let mut out = String::new();
    if neg && !mag.is_zero() {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        out.push('.');
        let frac = frac_part.to_string();
        for _ in frac.len()..digits {
            out.push('0');
        }
        out.push_str(&frac);
    }
    out
}
