//! Shared helpers for the integration suites: a small expression AST that is
//! evaluated twice — once through the library's rigorous machinery and once
//! through an independent high-precision floating-point oracle (astro-float).
//! The two implementations share nothing below this file, so agreement
//! between them is meaningful evidence of correctness.

#![allow(dead_code)]

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use diambounds::exact::{Rat, RigorousExpr};
use num_bigint::{BigInt, BigUint};
use rand::Rng;

/// Working precision of the oracle. Slightly above the advertised 1024 bits
/// so that accumulated rounding over a ~30-node tree still leaves more than
/// 1000 correct leading bits.
pub const ORACLE_PRECISION_BITS: usize = 1152;

/// Two values whose difference is below `2^(scale - ORACLE_SLACK_LOG2)` are
/// treated as indistinguishable by the oracle (the gap could be rounding
/// noise rather than a true separation).
pub const ORACLE_SLACK_LOG2: i32 = 1000;

/// The oracle deliberately skips correct rounding: astro-float's
/// correctly-rounded transcendentals retry at ever-higher precision until
/// rounding is unambiguous, which cannot terminate when the true result is
/// exactly representable (e.g. `(3/2)^2` computed as `exp(2 ln(3/2))`).
/// `RoundingMode::None` bypasses that retry loop; the result is then merely
/// faithful to a few ulps at 1152 bits, which is far tighter than the
/// `2^-1000` separation threshold used below.
const RM: RoundingMode = RoundingMode::None;

/// Expression AST shared by the two evaluators. Every node is positive by
/// construction (see the generators below), which keeps sqrt/log/pow inside
/// their domains for both evaluators.
#[derive(Debug, Clone)]
pub enum Node {
    Int(i64),
    Ratio(i64, i64),
    Add(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Max(Box<Node>, Box<Node>),
    Sqrt(Box<Node>),
    /// `log2(x + 2)`: the shift keeps the argument above 2, so the node
    /// itself stays positive.
    Log2Shifted(Box<Node>),
    Pow(Box<Node>, Box<Node>),
}

impl Node {
    /// Lowers the AST into the library's expression type.
    pub fn to_expr(&self) -> RigorousExpr {
        match self {
            Node::Int(v) => RigorousExpr::int(*v),
            Node::Ratio(p, q) => RigorousExpr::ratio(*p, *q),
            Node::Add(a, b) => a.to_expr().add(b.to_expr()),
            Node::Mul(a, b) => a.to_expr().mul(b.to_expr()),
            Node::Div(a, b) => a.to_expr().div(b.to_expr()),
            Node::Max(a, b) => a.to_expr().max(b.to_expr()),
            Node::Sqrt(a) => a.to_expr().sqrt(),
            Node::Log2Shifted(a) => a.to_expr().add(RigorousExpr::int(2)).log2(),
            Node::Pow(a, b) => a.to_expr().pow(b.to_expr()),
        }
    }

    /// Evaluates the AST with astro-float at [`ORACLE_PRECISION_BITS`].
    pub fn to_float(&self, cc: &mut Consts) -> BigFloat {
        let p = ORACLE_PRECISION_BITS;
        match self {
            Node::Int(v) => BigFloat::from_i64(*v, p),
            Node::Ratio(num, den) => {
                BigFloat::from_i64(*num, p).div(&BigFloat::from_i64(*den, p), p, RM)
            }
            Node::Add(a, b) => a.to_float(cc).add(&b.to_float(cc), p, RM),
            Node::Mul(a, b) => a.to_float(cc).mul(&b.to_float(cc), p, RM),
            Node::Div(a, b) => a.to_float(cc).div(&b.to_float(cc), p, RM),
            Node::Max(a, b) => a.to_float(cc).max(&b.to_float(cc)),
            Node::Sqrt(a) => a.to_float(cc).sqrt(p, RM),
            Node::Log2Shifted(a) => {
                let two = BigFloat::from_i64(2, p);
                a.to_float(cc).add(&two, p, RM).log2(p, RM, cc)
            }
            Node::Pow(a, b) => {
                let e = b.to_float(cc);
                a.to_float(cc).pow(&e, p, RM, cc)
            }
        }
    }
}

/// What the oracle can say about `a` versus `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleSign {
    Less,
    Greater,
    /// The two evaluations differ by less than the oracle's own error
    /// budget; the oracle refuses to call a direction.
    TooClose,
}

/// Classifies `a ? b` with the independent oracle. Differences smaller than
/// `2^(scale - ORACLE_SLACK_LOG2)` relative to the larger operand are
/// reported as [`OracleSign::TooClose`].
pub fn oracle_sign(a: &Node, b: &Node, cc: &mut Consts) -> OracleSign {
    let fa = a.to_float(cc);
    let fb = b.to_float(cc);
    assert!(!fa.is_nan() && !fb.is_nan(), "oracle hit a domain error on {a:?} vs {b:?}");
    let diff = fa.sub(&fb, ORACLE_PRECISION_BITS, RM);
    if diff.is_zero() {
        return OracleSign::TooClose;
    }
    let scale = fa.exponent().unwrap_or(0).max(fb.exponent().unwrap_or(0)).max(0);
    let diff_exp = diff.exponent().expect("nonzero finite difference");
    if diff_exp < scale.saturating_sub(ORACLE_SLACK_LOG2) {
        return OracleSign::TooClose;
    }
    if diff.is_negative() {
        OracleSign::Less
    } else {
        OracleSign::Greater
    }
}

/// Exact rational value of a finite `BigFloat`: the mantissa words form an
/// integer scaled by `2^(exponent - word_bits * len)`. (The conversion is
/// exact — the error of an oracle evaluation lives in the float itself, not
/// in this reading of it.)
pub fn bigfloat_to_rat(f: &BigFloat) -> Option<Rat> {
    if f.is_nan() || f.is_inf() {
        return None;
    }
    if f.is_zero() {
        return Some(Rat::from_integer(BigInt::from(0)));
    }
    let (words, _bits, sign, exponent, _inexact) = f.as_raw_parts()?;
    let mut mantissa = BigUint::from(0u32);
    for w in words.iter().rev() {
        mantissa = (mantissa << astro_float::WORD_BIT_SIZE) | BigUint::from(*w);
    }
    let shift = i64::from(exponent) - (astro_float::WORD_BIT_SIZE * words.len()) as i64;
    let unsigned = Rat::from_integer(BigInt::from(mantissa));
    let pow2 = Rat::from_integer(BigInt::from(1) << shift.unsigned_abs() as usize);
    let magnitude = if shift >= 0 { unsigned * pow2 } else { unsigned / pow2 };
    Some(if matches!(sign, Sign::Neg) { -magnitude } else { magnitude })
}

fn leaf(rng: &mut impl Rng) -> Node {
    if rng.gen_bool(0.5) {
        Node::Int(rng.gen_range(1..=12))
    } else {
        Node::Ratio(rng.gen_range(1..=12), rng.gen_range(1..=12))
    }
}

/// Small positive exponent for `Pow`: keeps magnitudes desk-scale even under
/// nesting (worst case around `x^27` with `x <= 144`).
fn exponent_node(rng: &mut impl Rng) -> Node {
    match rng.gen_range(0..5) {
        0 => Node::Int(2),
        1 => Node::Int(3),
        2 => Node::Ratio(1, 2),
        3 => Node::Ratio(rng.gen_range(1..=5), rng.gen_range(2..=5)),
        _ => Node::Log2Shifted(Box::new(leaf(rng))),
    }
}

/// Random positive expression of the given depth, exercising every operation
/// the rigorous evaluator supports on positive arguments.
pub fn gen_positive(rng: &mut impl Rng, depth: u32) -> Node {
    if depth == 0 {
        return leaf(rng);
    }
    let a = Box::new(gen_positive(rng, depth - 1));
    match rng.gen_range(0..7) {
        0 => Node::Add(a, Box::new(gen_positive(rng, depth - 1))),
        1 => Node::Mul(a, Box::new(gen_positive(rng, depth - 1))),
        2 => Node::Div(a, Box::new(gen_positive(rng, depth - 1))),
        3 => Node::Max(a, Box::new(gen_positive(rng, depth - 1))),
        4 => Node::Sqrt(a),
        5 => Node::Log2Shifted(a),
        _ => Node::Pow(a, Box::new(exponent_node(rng))),
    }
}

/// Random positive expression built only from exact rational operations, so
/// the library folds it to a single rational. Used to manufacture pairs that
/// are provably equal.
pub fn gen_rational(rng: &mut impl Rng, depth: u32) -> Node {
    if depth == 0 {
        return leaf(rng);
    }
    let a = Box::new(gen_rational(rng, depth - 1));
    let b = Box::new(gen_rational(rng, depth - 1));
    match rng.gen_range(0..3) {
        0 => Node::Add(a, b),
        1 => Node::Mul(a, b),
        _ => Node::Div(a, b),
    }
}
