//! Intervals with exact rational endpoints, and enclosure kernels for the
//! transcendental functions (exp, ln, sqrt).
//!
//! The power-series kernels run in dyadic fixed point: a value is a `BigInt`
//! mantissa at scale `2^-w`, every multiplication rounds the lower endpoint
//! down and the upper endpoint up by integer shifts, and exact rationals
//! enter and leave through one directed division per endpoint. The returned
//! interval therefore provably contains the exact function value, and no
//! gcd-reduction work happens inside the series loops. Working precision is
//! the caller's target plus generous guard bits; soundness never depends on
//! the guards, only tightness does.

use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{floor_log2_rat, round_down_sig, round_up_sig, ArithError, Rat};

/// A closed interval `[lo, hi]` with rational endpoints, `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Rat,
    hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(v: Rat) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &Rat) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    /// True if every value of `self` is strictly below every value of `other`.
    pub fn strictly_below(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub(crate) fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub(crate) fn sub(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub(crate) fn mul(&self, o: &Interval) -> Interval {
        // The range of x*y over a box is attained at corners.
        let corners = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = corners.iter().min().unwrap().clone();
        let hi = corners.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    /// None when the divisor interval contains zero.
    pub(crate) fn div(&self, o: &Interval) -> Option<Interval> {
        if !(o.lo.is_positive() || o.hi.is_negative()) {
            return None;
        }
        let corners = [&self.lo / &o.lo, &self.lo / &o.hi, &self.hi / &o.lo, &self.hi / &o.hi];
        let lo = corners.iter().min().unwrap().clone();
        let hi = corners.iter().max().unwrap().clone();
        Some(Interval { lo, hi })
    }

    pub(crate) fn max_iv(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.clone().max(o.lo.clone()), hi: self.hi.clone().max(o.hi.clone()) }
    }

    pub(crate) fn floor_iv(&self) -> Interval {
        Interval { lo: self.lo.floor(), hi: self.hi.floor() }
    }

    /// Outward rounding to roughly `bits` significant bits per endpoint.
    pub(crate) fn round_out(&self, bits: u32) -> Interval {
        Interval { lo: round_down_sig(&self.lo, bits), hi: round_up_sig(&self.hi, bits) }
    }

    /// Intersection of two enclosures of the same real value. Panicking on an
    /// empty intersection is deliberate: it can only happen if one of the
    /// inputs was not actually an enclosure, i.e. on an internal bug.
    pub(crate) fn intersect(&self, o: &Interval) -> Interval {
        let lo = self.lo.clone().max(o.lo.clone());
        let hi = self.hi.clone().min(o.hi.clone());
        assert!(lo <= hi, "disjoint enclosures of one value: soundness bug");
        Interval { lo, hi }
    }
}

/// Fixed-point interval: endpoint mantissas at an implicit scale `2^-w`.
/// Addition is exact; multiplication and small divisions round `lo` toward
/// minus infinity and `hi` toward plus infinity, so an enclosure stays one.
#[derive(Clone, Debug)]
struct Fix {
    lo: BigInt,
    hi: BigInt,
}

/// `ceil(x / 2^w)`; `>>` on `BigInt` floors.
fn ceil_shr(x: BigInt, w: u32) -> BigInt {
    -((-x) >> w)
}

impl Fix {
    fn point(mant: BigInt) -> Fix {
        Fix { lo: mant.clone(), hi: mant }
    }

    /// Tightest fixed-point enclosure of a rational (at most one ulp wide).
    fn from_rat(x: &Rat, w: u32) -> Fix {
        let scaled = x.numer() << w;
        Fix { lo: scaled.div_floor(x.denom()), hi: scaled.div_ceil(x.denom()) }
    }

    fn add(&self, o: &Fix) -> Fix {
        Fix { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    fn mul(&self, o: &Fix, w: u32) -> Fix {
        let corners = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = corners.iter().min().unwrap().clone() >> w;
        let hi = ceil_shr(corners.into_iter().max().unwrap(), w);
        Fix { lo, hi }
    }

    fn div_uint(&self, k: u64) -> Fix {
        let k = BigInt::from(k);
        Fix { lo: self.lo.div_floor(&k), hi: self.hi.div_ceil(&k) }
    }

    /// Multiplication by an exact integer (no rounding).
    fn scale_int(&self, k: i64) -> Fix {
        let k = BigInt::from(k);
        if k.is_negative() {
            Fix { lo: &self.hi * &k, hi: &self.lo * &k }
        } else {
            Fix { lo: &self.lo * &k, hi: &self.hi * &k }
        }
    }

    /// Mantissa bound on the absolute value.
    fn abs_hi(&self) -> BigInt {
        self.lo.abs().max(self.hi.abs())
    }

    fn widen_ulps(&self, ulps: BigInt) -> Fix {
        debug_assert!(!ulps.is_negative());
        Fix { lo: &self.lo - &ulps, hi: &self.hi + &ulps }
    }

    fn to_interval(&self, w: u32) -> Interval {
        let den = BigInt::one() << w;
        Interval { lo: Rat::new(self.lo.clone(), den.clone()), hi: Rat::new(self.hi.clone(), den) }
    }
}

/// Largest exponent magnitude accepted by `exp_point`. Beyond this the result
/// would need tens of millions of bits just for its integer part.
const EXP_ARG_LIMIT: i64 = 24;

/// Enclosure of `e^x` for an exact rational `x`, tight to about `bits` bits.
pub(crate) fn exp_point(x: &Rat, bits: u32) -> Result<Interval, ArithError> {
    if x.is_zero() {
        return Ok(Interval::point(Rat::one()));
    }
    let e = floor_log2_rat(&x.abs());
    if e > EXP_ARG_LIMIT {
        return Err(ArithError::Overflow(format!(
            "exp argument magnitude is about 2^{e}, beyond the supported range"
        )));
    }
    // Reduce to |r| <= 1/2 via r = x / 2^m, then square the result m times.
    let m = (e + 2).max(0) as u32;
    let w = bits + 2 * m + 32;
    let r = Rat::new(x.numer().clone(), x.denom() << m);
    let r_fix = Fix::from_rat(&r, w);

    let one = BigInt::one() << w;
    let mut sum = Fix::point(one.clone());
    let mut term = Fix::point(one);
    let mut k: u64 = 1;
    loop {
        term = term.mul(&r_fix, w).div_uint(k);
        sum = sum.add(&term);
        let t_abs = term.abs_hi();
        if t_abs <= BigInt::from(4) {
            // Tail: |term_{k+j}| <= |term_k| (|r|/(k+1))^j with |r| <= 1/2
            // and k >= 1, so the remaining sum is at most |term_k| / 3.
            sum = sum.widen_ulps(t_abs + 1);
            break;
        }
        k += 1;
    }
    for _ in 0..m {
        sum = sum.mul(&sum, w);
    }
    Ok(sum.to_interval(w))
}

/// Enclosure of `ln x` for an exact rational `x > 0`.
pub(crate) fn ln_point(x: &Rat, bits: u32) -> Result<Interval, ArithError> {
    debug_assert!(x.is_positive());
    let w = bits + 48;
    // Write x = m * 2^e with m in (3/4, 3/2].
    let mut e = floor_log2_rat(x);
    let three_halves = Rat::new(BigInt::from(3), BigInt::from(2));
    let mut m = shift_rat(x, -e);
    if m > three_halves {
        e += 1;
        m = shift_rat(x, -e);
    }
    // ln m = 2 atanh(r) with r = (m-1)/(m+1) in (-1/7, 1/5].
    let one = Rat::one();
    let r = (&m - &one) / (&m + &one);
    let ln_m = atanh_fix(&r, w).scale_int(2);
    Ok(ln_m.add(&ln2_fix(w).scale_int(e)).to_interval(w))
}

/// `x * 2^s` exactly.
fn shift_rat(x: &Rat, s: i64) -> Rat {
    if s >= 0 {
        Rat::new(x.numer() << s as usize, x.denom().clone())
    } else {
        Rat::new(x.numer().clone(), x.denom() << (-s) as usize)
    }
}

/// Fixed-point enclosure of `atanh r` for |r| <= 1/3, via the odd series.
fn atanh_fix(r: &Rat, w: u32) -> Fix {
    if r.is_zero() {
        return Fix::point(BigInt::zero());
    }
    let r_fix = Fix::from_rat(r, w);
    let r2 = Fix::from_rat(&(r * r), w);
    let mut p = r_fix.clone();
    let mut sum = r_fix;
    let mut j: u64 = 0;
    loop {
        p = p.mul(&r2, w);
        j += 1;
        let term = p.div_uint(2 * j + 1);
        sum = sum.add(&term);
        let t_abs = term.abs_hi();
        if t_abs <= BigInt::from(4) {
            // Tail: the next terms shrink by at least r^2 <= 1/9 each, so
            // the remaining sum is at most |term| / 8.
            return sum.widen_ulps(t_abs + 1);
        }
    }
}

/// Cached fixed-point enclosure of ln 2 = 2 atanh(1/3) at scale `2^-w`.
fn ln2_fix(w: u32) -> Fix {
    static CACHE: OnceLock<Mutex<HashMap<u32, Fix>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("ln2 cache poisoned");
    guard
        .entry(w)
        .or_insert_with(|| {
            let third = Rat::new(BigInt::one(), BigInt::from(3));
            atanh_fix(&third, w).scale_int(2)
        })
        .clone()
}

/// Enclosure of ln 2 at working precision `w`.
pub(crate) fn ln2(w: u32) -> Interval {
    ln2_fix(w).to_interval(w)
}

/// Enclosure of sqrt over an interval with `lo >= 0`.
pub(crate) fn sqrt_interval(x: &Interval, bits: u32) -> Interval {
    debug_assert!(!x.lo.is_negative());
    Interval { lo: sqrt_rat(&x.lo, bits, false), hi: sqrt_rat(&x.hi, bits, true) }
}

/// Directed square root: sqrt(a/b) = sqrt(ab)/b, bounded through the integer
/// square root of `ab << 2s`.
fn sqrt_rat(x: &Rat, bits: u32, round_up: bool) -> Rat {
    if x.is_zero() {
        return Rat::zero();
    }
    let s = bits as usize + 8;
    let n = (x.numer() * x.denom()).magnitude() << (2 * s);
    let r = n.sqrt();
    let den = x.denom().magnitude() << s;
    if round_up {
        let exact = &r * &r == n;
        let up = if exact { r } else { r + 1u32 };
        Rat::new(BigInt::from(up), BigInt::from(den))
    } else {
        Rat::new(BigInt::from(r), BigInt::from(den))
    }
}
