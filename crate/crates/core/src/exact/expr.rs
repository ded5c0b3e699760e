//! Expression trees over exact rationals.
//!
//! A [`RigorousExpr`] is an immutable tree built from integer/rational
//! literals and the operations needed by the bound catalog: field arithmetic,
//! powers with arbitrary real exponents, base-2 and natural logarithms, exp,
//! square roots, floor, and max. Subtrees are reference-counted so formulas
//! can share pieces cheaply.
//!
//! `exact_value` performs conservative constant folding: it returns a
//! rational only when the subtree provably equals it. This includes the
//! identity `b^(log2 a) = a^k` when `b = 2^k`, which is what lets power-of-two
//! instances of the quasipolynomial bounds collapse to exact integers.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{rat_pow2_exponent, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RigorousExpr {
    IntLit(BigInt),
    RatLit(Rat),
    Add(Arc<RigorousExpr>, Arc<RigorousExpr>),
    Sub(Arc<RigorousExpr>, Arc<RigorousExpr>),
    Mul(Arc<RigorousExpr>, Arc<RigorousExpr>),
    Div(Arc<RigorousExpr>, Arc<RigorousExpr>),
    /// `Pow(base, exponent)`; the base must be provably nonnegative, and a
    /// base that may be zero needs a provably positive exponent.
    Pow(Arc<RigorousExpr>, Arc<RigorousExpr>),
    Log2(Arc<RigorousExpr>),
    Ln(Arc<RigorousExpr>),
    Exp(Arc<RigorousExpr>),
    Sqrt(Arc<RigorousExpr>),
    Floor(Arc<RigorousExpr>),
    Max(Arc<RigorousExpr>, Arc<RigorousExpr>),
}

use RigorousExpr::*;

/// Caps keeping constant folding from materializing absurd numbers; anything
/// larger falls through to interval evaluation (or its overflow guard).
const FOLD_INT_EXPONENT_LIMIT: u64 = 1 << 22;
const FOLD_ROOT_LIMIT: u64 = 1 << 12;

impl RigorousExpr {
    pub fn int(v: impl Into<BigInt>) -> Self {
        IntLit(v.into())
    }

    pub fn rat(v: Rat) -> Self {
        RatLit(v)
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        RatLit(Rat::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn add(self, rhs: Self) -> Self {
        Add(Arc::new(self), Arc::new(rhs))
    }

    pub fn sub(self, rhs: Self) -> Self {
        Sub(Arc::new(self), Arc::new(rhs))
    }

    pub fn mul(self, rhs: Self) -> Self {
        Mul(Arc::new(self), Arc::new(rhs))
    }

    pub fn div(self, rhs: Self) -> Self {
        Div(Arc::new(self), Arc::new(rhs))
    }

    pub fn pow(self, exponent: Self) -> Self {
        Pow(Arc::new(self), Arc::new(exponent))
    }

    pub fn log2(self) -> Self {
        Log2(Arc::new(self))
    }

    pub fn ln(self) -> Self {
        Ln(Arc::new(self))
    }

    pub fn exp(self) -> Self {
        Exp(Arc::new(self))
    }

    pub fn sqrt(self) -> Self {
        Sqrt(Arc::new(self))
    }

    pub fn floor(self) -> Self {
        Floor(Arc::new(self))
    }

    pub fn max(self, rhs: Self) -> Self {
        Max(Arc::new(self), Arc::new(rhs))
    }

    /// The exact rational value of this subtree, when it provably has one.
    ///
    /// Returning `None` never means "nonzero" or "irrational"; it only means
    /// the symbolic path could not identify the value.
    pub fn exact_value(&self) -> Option<Rat> {
        match self {
            IntLit(v) => Some(Rat::from_integer(v.clone())),
            RatLit(r) => Some(r.clone()),
            Add(a, b) => Some(a.exact_value()? + b.exact_value()?),
            Sub(a, b) => Some(a.exact_value()? - b.exact_value()?),
            Mul(a, b) => Some(a.exact_value()? * b.exact_value()?),
            Div(a, b) => {
                let d = b.exact_value()?;
                if d.is_zero() {
                    None
                } else {
                    Some(a.exact_value()? / d)
                }
            }
            Pow(base, exponent) => fold_pow(base, exponent),
            Log2(a) => {
                let v = a.exact_value()?;
                rat_pow2_exponent(&v).map(|k| Rat::from_integer(BigInt::from(k)))
            }
            Ln(a) => a.exact_value()?.is_one().then(Rat::zero),
            Exp(a) => a.exact_value()?.is_zero().then(Rat::one),
            Sqrt(a) => {
                let v = a.exact_value()?;
                rational_root(&v, 2)
            }
            Floor(a) => Some(a.exact_value()?.floor()),
            Max(a, b) => Some(a.exact_value()?.max(b.exact_value()?)),
        }
    }

    /// Conservative symbolic positivity: true only when the subtree provably
    /// evaluates to a positive real (and is well defined).
    fn provably_positive(&self) -> bool {
        if let Some(v) = self.exact_value() {
            return v.is_positive();
        }
        match self {
            Log2(a) | Ln(a) => matches!(a.exact_value(), Some(v) if v > Rat::one()),
            Exp(a) => a.exact_value().is_some(),
            Sqrt(a) => matches!(a.exact_value(), Some(v) if v.is_positive()),
            Add(a, b) | Mul(a, b) | Div(a, b) => a.provably_positive() && b.provably_positive(),
            Max(a, b) => a.provably_positive() && b.provably_positive(),
            Pow(b, e) => b.provably_positive() && (e.exact_value().is_some() || e.provably_positive()),
            _ => false,
        }
    }

    /// Canonical form for structural equality: every foldable subtree becomes
    /// a literal, commutative nodes order their children, and `Pow(b, Log2(a))`
    /// is oriented canonically using `b^(log2 a) = a^(log2 b)` (both sides
    /// carry the same positivity preconditions, so the rewrite never changes
    /// whether the expression is well defined).
    pub(crate) fn normalize(&self) -> RigorousExpr {
        if let Some(v) = self.exact_value() {
            return literal(v);
        }
        match self {
            IntLit(_) | RatLit(_) => self.clone(),
            Add(a, b) => sorted_pair(a.normalize(), b.normalize(), |x, y| Add(x, y)),
            Mul(a, b) => sorted_pair(a.normalize(), b.normalize(), |x, y| Mul(x, y)),
            Max(a, b) => sorted_pair(a.normalize(), b.normalize(), |x, y| Max(x, y)),
            Sub(a, b) => Sub(Arc::new(a.normalize()), Arc::new(b.normalize())),
            Div(a, b) => Div(Arc::new(a.normalize()), Arc::new(b.normalize())),
            Pow(base, exponent) => {
                let base = base.normalize();
                let exponent = exponent.normalize();
                if let Log2(arg) = &exponent {
                    if tree_cmp(arg, &base) == std::cmp::Ordering::Less {
                        let new_exp = Log2(Arc::new(base));
                        return Pow(Arc::new(arg.as_ref().clone()), Arc::new(new_exp));
                    }
                }
                Pow(Arc::new(base), Arc::new(exponent))
            }
            Log2(a) => Log2(Arc::new(a.normalize())),
            Ln(a) => Ln(Arc::new(a.normalize())),
            Exp(a) => Exp(Arc::new(a.normalize())),
            Sqrt(a) => Sqrt(Arc::new(a.normalize())),
            Floor(a) => Floor(Arc::new(a.normalize())),
        }
    }
}

fn literal(v: Rat) -> RigorousExpr {
    if v.is_integer() {
        IntLit(v.to_integer())
    } else {
        RatLit(v)
    }
}

fn sorted_pair(
    a: RigorousExpr,
    b: RigorousExpr,
    build: impl Fn(Arc<RigorousExpr>, Arc<RigorousExpr>) -> RigorousExpr,
) -> RigorousExpr {
    if tree_cmp(&b, &a) == std::cmp::Ordering::Less {
        build(Arc::new(b), Arc::new(a))
    } else {
        build(Arc::new(a), Arc::new(b))
    }
}

fn fold_pow(base: &RigorousExpr, exponent: &RigorousExpr) -> Option<Rat> {
    let base_val = base.exact_value();
    if let Some(e) = exponent.exact_value() {
        return rational_pow(&base_val?, &e);
    }
    let b = base_val?;
    if b.is_one() && exponent.provably_positive() {
        return Some(Rat::one());
    }
    if b.is_zero() && exponent.provably_positive() {
        return Some(Rat::zero());
    }
    // b = 2^k and exponent = log2(a) with rational a > 0: the value is a^k.
    if let Log2(arg) = exponent {
        if let (Some(k), Some(a)) = (rat_pow2_exponent(&b), arg.exact_value()) {
            if a.is_positive() {
                return rational_pow(&a, &Rat::from_integer(BigInt::from(k)));
            }
        }
    }
    None
}

/// `b^e` for rationals, when the result is provably rational: integer
/// exponents, and fractional exponents of perfect powers. Negative bases are
/// rejected (the expression invariant requires a nonnegative base anyway).
fn rational_pow(b: &Rat, e: &Rat) -> Option<Rat> {
    if b.is_negative() {
        return None;
    }
    if e.is_integer() {
        let k = e.to_integer();
        if k.is_zero() {
            // 0^0 is left undefined; evaluation reports the domain error.
            return (!b.is_zero()).then(Rat::one);
        }
        if b.is_zero() {
            return k.is_positive().then(Rat::zero);
        }
        let mag = k.magnitude().to_u64().filter(|&m| m <= FOLD_INT_EXPONENT_LIMIT)?;
        let p = Rat::new(b.numer().pow(mag as u32), b.denom().pow(mag as u32));
        return Some(if k.is_negative() { p.recip() } else { p });
    }
    // e = p/q in lowest terms, q >= 2: rational iff b is a perfect q-th power.
    let q = e.denom().to_u64().filter(|&m| m <= FOLD_ROOT_LIMIT)?;
    if b.is_zero() {
        return e.is_positive().then(Rat::zero);
    }
    let root = rational_root(b, q as u32)?;
    rational_pow(&root, &Rat::from_integer(e.numer().clone()))
}

/// Exact q-th root of a nonnegative rational, if it is rational.
fn rational_root(v: &Rat, q: u32) -> Option<Rat> {
    if v.is_negative() {
        return None;
    }
    if v.is_zero() {
        return Some(Rat::zero());
    }
    let num = v.numer().magnitude();
    let den = v.denom().magnitude();
    let rn = num.nth_root(q);
    let rd = den.nth_root(q);
    (&rn.pow(q) == num && &rd.pow(q) == den)
        .then(|| Rat::new(BigInt::from(rn), BigInt::from(rd)))
}

/// Total order on trees: by node kind, then by payload/children. Used only
/// for canonical orientation, so any deterministic total order works.
pub(crate) fn tree_cmp(a: &RigorousExpr, b: &RigorousExpr) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    fn rank(e: &RigorousExpr) -> u8 {
        match e {
            IntLit(_) => 0,
            RatLit(_) => 1,
            Add(..) => 2,
            Sub(..) => 3,
            Mul(..) => 4,
            Div(..) => 5,
            Pow(..) => 6,
            Log2(_) => 7,
            Ln(_) => 8,
            Exp(_) => 9,
            Sqrt(_) => 10,
            Floor(_) => 11,
            Max(..) => 12,
        }
    }
    match rank(a).cmp(&rank(b)) {
        Ordering::Equal => {}
        other => return other,
    }
    match (a, b) {
        (IntLit(x), IntLit(y)) => x.cmp(y),
        (RatLit(x), RatLit(y)) => x.cmp(y),
        (Add(x1, y1), Add(x2, y2))
        | (Sub(x1, y1), Sub(x2, y2))
        | (Mul(x1, y1), Mul(x2, y2))
        | (Div(x1, y1), Div(x2, y2))
        | (Pow(x1, y1), Pow(x2, y2))
        | (Max(x1, y1), Max(x2, y2)) => tree_cmp(x1, x2).then_with(|| tree_cmp(y1, y2)),
        (Log2(x), Log2(y))
        | (Ln(x), Ln(y))
        | (Exp(x), Exp(y))
        | (Sqrt(x), Sqrt(y))
        | (Floor(x), Floor(y)) => tree_cmp(x, y),
        _ => unreachable!("rank already distinguished the kinds"),
    }
}

impl fmt::Display for RigorousExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntLit(v) => write!(f, "{v}"),
            RatLit(r) => write!(f, "{r}"),
            Add(a, b) => write!(f, "({a} + {b})"),
            Sub(a, b) => write!(f, "({a} - {b})"),
            Mul(a, b) => write!(f, "({a} * {b})"),
            Div(a, b) => write!(f, "({a} / {b})"),
            Pow(a, b) => write!(f, "{a}^({b})"),
            Log2(a) => write!(f, "log2({a})"),
            Ln(a) => write!(f, "ln({a})"),
            Exp(a) => write!(f, "exp({a})"),
            Sqrt(a) => write!(f, "sqrt({a})"),
            Floor(a) => write!(f, "floor({a})"),
            Max(a, b) => write!(f, "max({a}, {b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rint(v: i64) -> RigorousExpr {
        RigorousExpr::int(v)
    }

    #[test]
    fn folds_field_arithmetic() {
        let e = rint(3).add(rint(4)).mul(RigorousExpr::ratio(1, 2)).sub(rint(1));
        assert_eq!(e.exact_value().unwrap(), Rat::new(BigInt::from(5), BigInt::from(2)));
        // Division by a foldable zero does not fold (evaluation will report it).
        let z = rint(1).div(rint(2).sub(rint(2)));
        assert_eq!(z.exact_value(), None);
    }

    #[test]
    fn folds_powers_of_two_through_log2() {
        // 4^(log2 4) = 16 via the exponent; 2^(log2 3) = 3 via the base swap.
        let e = rint(4).pow(rint(4).log2());
        assert_eq!(e.exact_value().unwrap(), Rat::from_integer(BigInt::from(16)));
        let e = rint(2).pow(rint(3).log2());
        assert_eq!(e.exact_value().unwrap(), Rat::from_integer(BigInt::from(3)));
        let e = rint(8).pow(rint(5).log2());
        assert_eq!(e.exact_value().unwrap(), Rat::from_integer(BigInt::from(125)));
        // 5^(log2 3) has no rational value; folding must decline.
        assert_eq!(rint(5).pow(rint(3).log2()).exact_value(), None);
    }

    #[test]
    fn folds_zero_and_one_bases_with_positive_exponents() {
        let zero_base = rint(7).sub(rint(7)).pow(rint(3).log2());
        assert_eq!(zero_base.exact_value().unwrap(), Rat::zero());
        let one_base = rint(1).pow(rint(3).log2());
        assert_eq!(one_base.exact_value().unwrap(), Rat::one());
        // Zero base with an exponent of unknown sign must not fold.
        let unsure = rint(0).pow(rint(1).sub(rint(2)));
        assert_eq!(unsure.exact_value(), None);
    }

    #[test]
    fn folds_roots_and_floors() {
        assert_eq!(
            RigorousExpr::ratio(9, 4).sqrt().exact_value().unwrap(),
            Rat::new(BigInt::from(3), BigInt::from(2))
        );
        assert_eq!(RigorousExpr::int(2).sqrt().exact_value(), None);
        assert_eq!(
            RigorousExpr::ratio(-7, 2).floor().exact_value().unwrap(),
            Rat::from_integer(BigInt::from(-4))
        );
        let e = rint(4).pow(RigorousExpr::ratio(1, 2));
        assert_eq!(e.exact_value().unwrap(), Rat::from_integer(BigInt::from(2)));
        let e = rint(4).pow(RigorousExpr::ratio(-3, 2));
        assert_eq!(e.exact_value().unwrap(), Rat::new(BigInt::from(1), BigInt::from(8)));
    }

    #[test]
    fn normalization_identifies_swapped_pow_log_pairs() {
        let a = rint(5).pow(rint(3).log2());
        let b = rint(3).pow(rint(5).log2());
        assert_eq!(a.normalize(), b.normalize());
        let c = rint(5).pow(rint(7).log2());
        assert_ne!(a.normalize(), c.normalize());
        // Commutative reordering.
        let x = rint(2).sqrt().add(rint(3).sqrt());
        let y = rint(3).sqrt().add(rint(2).sqrt());
        assert_eq!(x.normalize(), y.normalize());
    }

    #[test]
    fn display_is_readable() {
        let e = rint(46).sub(rint(4)).pow(rint(3).log2());
        assert_eq!(e.to_string(), "(46 - 4)^(log2(3))");
    }
}
