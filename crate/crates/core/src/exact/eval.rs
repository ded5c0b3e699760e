//! Certified evaluation of expressions to rational-endpoint enclosures, and
//! the three-way rigorous comparator built on top of it.

use num_traits::{Signed, Zero};

use super::expr::RigorousExpr;
use super::interval::{exp_point, ln2, ln_point, sqrt_interval, Interval};
use super::{ArithError, Rat};

/// Precision escalation ladder used by [`compare`], in bits.
pub const PRECISION_LADDER: [u32; 7] = [64, 128, 256, 512, 1024, 2048, 4096];

/// Smallest internal evaluation rung.
const RUNG_MIN: u32 = 16;

/// Result of a rigorous three-way comparison.
///
/// `ProvenEqual` is only ever produced by the symbolic path (constant folding
/// or a normalization match); overlapping enclosures alone never prove
/// equality. `Undecided` reports the precision at which escalation gave up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ordering3 {
    Less,
    Greater,
    ProvenEqual,
    Undecided { precision_bits: u32 },
}

/// Evaluate `expr` to an enclosure of its exact real value.
///
/// The result always contains the true value. Enclosures are intersected
/// along the internal rung ladder up to `precision_bits` (rounded up to a
/// power of two), so for a fixed expression the width is monotonically
/// non-increasing in `precision_bits` by construction.
pub fn eval_interval(expr: &RigorousExpr, precision_bits: u32) -> Result<Interval, ArithError> {
    if precision_bits < RUNG_MIN {
        return Err(ArithError::definite(format!(
            "precision_bits must be at least {RUNG_MIN}"
        )));
    }
    let top = precision_bits.next_power_of_two();
    let mut acc: Option<Interval> = None;
    let mut last_err: Option<ArithError> = None;
    let mut rung = RUNG_MIN;
    while rung <= top {
        match eval_raw(expr, rung + 64) {
            Ok(iv) => {
                acc = Some(match acc {
                    None => iv,
                    Some(prev) => prev.intersect(&iv),
                });
            }
            Err(e) if e.is_definite() => return Err(e),
            Err(e) => last_err = Some(e),
        }
        rung *= 2;
    }
    acc.ok_or_else(|| last_err.expect("no rung evaluated and none failed"))
}

/// One evaluation pass with all intermediates rounded outward at `w` bits.
fn eval_raw(expr: &RigorousExpr, w: u32) -> Result<Interval, ArithError> {
    if let Some(v) = expr.exact_value() {
        return Ok(Interval::point(v));
    }
    use RigorousExpr::*;
    let iv = match expr {
        IntLit(v) => Interval::point(Rat::from_integer(v.clone())),
        RatLit(r) => Interval::point(r.clone()),
        Add(a, b) => eval_raw(a, w)?.add(&eval_raw(b, w)?).round_out(w),
        Sub(a, b) => eval_raw(a, w)?.sub(&eval_raw(b, w)?).round_out(w),
        Mul(a, b) => eval_raw(a, w)?.mul(&eval_raw(b, w)?).round_out(w),
        Div(a, b) => {
            let num = eval_raw(a, w)?;
            let den = eval_raw(b, w)?;
            match num.div(&den) {
                Some(q) => q.round_out(w),
                None => {
                    let definite = matches!(b.exact_value(), Some(v) if v.is_zero());
                    return Err(ArithError::Domain {
                        reason: "division by a possibly-zero denominator".into(),
                        definite,
                    });
                }
            }
        }
        Max(a, b) => eval_raw(a, w)?.max_iv(&eval_raw(b, w)?),
        Floor(a) => eval_raw(a, w)?.floor_iv(),
        Log2(a) => {
            let x = certified_positive(eval_raw(a, w)?, "log2")?;
            let num = ln_interval(&x, w)?;
            let den = ln2(w + 16);
            num.div(&den).expect("ln 2 enclosure is positive").round_out(w)
        }
        Ln(a) => {
            let x = certified_positive(eval_raw(a, w)?, "ln")?;
            ln_interval(&x, w)?
        }
        Exp(a) => {
            let x = eval_raw(a, w)?;
            exp_interval(&x, w)?
        }
        Sqrt(a) => {
            let x = eval_raw(a, w)?;
            if x.lo().is_negative() {
                return Err(ArithError::Domain {
                    reason: "sqrt of a possibly-negative value".into(),
                    definite: x.hi().is_negative(),
                });
            }
            sqrt_interval(&x, w)
        }
        Pow(base, exponent) => {
            let b = eval_raw(base, w)?;
            let e = eval_raw(exponent, w)?;
            pow_interval(&b, &e, w)?
        }
    };
    Ok(iv)
}

fn certified_positive(x: Interval, what: &str) -> Result<Interval, ArithError> {
    if x.lo().is_positive() {
        Ok(x)
    } else {
        Err(ArithError::Domain {
            reason: format!("{what} of a possibly-nonpositive value"),
            // A nonpositive upper endpoint proves the argument is <= 0.
            definite: !x.hi().is_positive(),
        })
    }
}

/// Enclosure of ln over a certified-positive interval (ln is increasing).
fn ln_interval(x: &Interval, w: u32) -> Result<Interval, ArithError> {
    let lo = ln_point(x.lo(), w)?;
    let hi = ln_point(x.hi(), w)?;
    Ok(Interval::new(lo.lo().clone(), hi.hi().clone()))
}

/// Enclosure of exp over an interval (exp is increasing).
fn exp_interval(x: &Interval, w: u32) -> Result<Interval, ArithError> {
    let lo = exp_point(x.lo(), w)?;
    let hi = exp_point(x.hi(), w)?;
    Ok(Interval::new(lo.lo().clone(), hi.hi().clone()))
}

/// Enclosure of `b^e` as `exp(e * ln b)`, with the two permitted base cases:
/// a provably positive base, or a provably nonnegative base paired with a
/// provably positive exponent (where `0^e = 0`).
fn pow_interval(b: &Interval, e: &Interval, w: u32) -> Result<Interval, ArithError> {
    if b.lo().is_positive() {
        let ln_b = ln_interval(b, w)?;
        let m = e.mul(&ln_b).round_out(w);
        return Ok(exp_interval(&m, w)?.round_out(w));
    }
    if b.hi().is_negative() {
        return Err(ArithError::definite("pow with a provably negative base"));
    }
    if !b.lo().is_zero() {
        return Err(ArithError::indefinite("pow base cannot be certified nonnegative"));
    }
    // Base interval is [0, b_hi].
    if !e.lo().is_positive() {
        let definite = b.is_point() && !e.hi().is_positive() && !(e.contains(&Rat::zero()) && !e.is_point());
        return Err(ArithError::Domain {
            reason: "pow with a possibly-zero base needs a provably positive exponent".into(),
            definite: definite && b.is_point(),
        });
    }
    if b.hi().is_zero() {
        return Ok(Interval::point(Rat::zero()));
    }
    // sup over base in (0, b_hi], exponent in e: attained at base = b_hi.
    let ln_bhi = {
        let p = ln_point(b.hi(), w)?;
        Interval::new(p.lo().clone(), p.hi().clone())
    };
    let m = e.mul(&ln_bhi).round_out(w);
    let upper = exp_interval(&m, w)?;
    Ok(Interval::new(Rat::zero(), upper.hi().clone()))
}

/// Rigorous three-way comparison of two expression values.
///
/// Exact path first: if both sides fold to rationals the answer is exact, and
/// if the normalized trees coincide the values are identical. Otherwise the
/// enclosures are refined along [`PRECISION_LADDER`] until they separate.
/// Overlap after the last rung yields `Undecided`; domain errors that persist
/// at the top rung propagate.
pub fn compare(a: &RigorousExpr, b: &RigorousExpr) -> Result<Ordering3, ArithError> {
    if let (Some(x), Some(y)) = (a.exact_value(), b.exact_value()) {
        return Ok(match x.cmp(&y) {
            std::cmp::Ordering::Less => Ordering3::Less,
            std::cmp::Ordering::Equal => Ordering3::ProvenEqual,
            std::cmp::Ordering::Greater => Ordering3::Greater,
        });
    }
    if a.normalize() == b.normalize() {
        return Ok(Ordering3::ProvenEqual);
    }
    let top = *PRECISION_LADDER.last().expect("ladder is nonempty");
    let mut top_err: Option<ArithError> = None;
    for &p in &PRECISION_LADDER {
        let ia = match eval_interval(a, p) {
            Ok(iv) => Some(iv),
            Err(e) if e.is_definite() => return Err(e),
            Err(e) => {
                if p == top {
                    top_err = Some(e);
                }
                None
            }
        };
        let ib = match eval_interval(b, p) {
            Ok(iv) => Some(iv),
            Err(e) if e.is_definite() => return Err(e),
            Err(e) => {
                if p == top {
                    top_err = Some(e);
                }
                None
            }
        };
        if let (Some(ia), Some(ib)) = (ia, ib) {
            if ia.strictly_below(&ib) {
                return Ok(Ordering3::Less);
            }
            if ib.strictly_below(&ia) {
                return Ok(Ordering3::Greater);
            }
        }
    }
    match top_err {
        Some(e) => Err(e),
        None => Ok(Ordering3::Undecided { precision_bits: top }),
    }
}
