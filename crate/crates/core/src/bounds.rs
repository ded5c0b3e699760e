//! The bound catalog: every closed-form and tail diameter bound the library
//! knows, as rigorous expression builders with exact applicability
//! predicates, plus the iterated halving-recursion combinator and the nested
//! binomial bounds derived from it.
//!
//! Applicability thresholds of the form `n >= 2^t` are decided purely on
//! exponents (bit lengths), never by materializing floating-point values,
//! so astronomically large thresholds are exact and cheap.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{compare, eval_interval, ArithError, Ordering3, Rat, RigorousExpr, PRECISION_LADDER};
use crate::tables::SequenceKind;

/// Which diameter quantity a bound dominates: unbounded polyhedra, bounded
/// polytopes, or dual diameters of normal simplicial complexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundTarget {
    #[serde(rename = "delta-u")]
    DeltaU,
    #[serde(rename = "delta-b")]
    DeltaB,
    #[serde(rename = "sigma")]
    Sigma,
}

impl BoundTarget {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundTarget::DeltaU => "delta-u",
            BoundTarget::DeltaB => "delta-b",
            BoundTarget::Sigma => "sigma",
        }
    }

    /// The recursive table whose entries dominate this quantity.
    pub fn tilde_kind(self) -> SequenceKind {
        match self {
            BoundTarget::DeltaU => SequenceKind::DeltaTildeU,
            BoundTarget::DeltaB => SequenceKind::DeltaTildeB,
            BoundTarget::Sigma => SequenceKind::SigmaTilde,
        }
    }

    /// Whether a bound proved for `family_target` also dominates `self`.
    /// Every polytope is a polyhedron, so an unbounded-diameter bound also
    /// bounds polytope diameters; the complex quantity is incomparable.
    pub fn covered_by(self, family_target: BoundTarget) -> bool {
        self == family_target
            || (self == BoundTarget::DeltaB && family_target == BoundTarget::DeltaU)
    }
}

impl fmt::Display for BoundTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown bound target `{0}` (expected delta-u, delta-b, or sigma)")]
pub struct ParseBoundTargetError(pub String);

impl FromStr for BoundTarget {
    type Err = ParseBoundTargetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "delta-u" => Ok(BoundTarget::DeltaU),
            "delta-b" => Ok(BoundTarget::DeltaB),
            "sigma" => Ok(BoundTarget::Sigma),
            other => Err(ParseBoundTargetError(other.to_string())),
        }
    }
}

/// One bound family. The catalog order below is also the tie-breaking order
/// used by [`best_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundFamily {
    /// `n - 3` for 3-polyhedra.
    #[serde(rename = "klee-3d-u")]
    Klee3dU,
    /// `floor(2n/3) - 1` for 3-polytopes (tight).
    #[serde(rename = "klee-3d-b")]
    Klee3dB,
    /// `3^(d-2) n`.
    #[serde(rename = "barnette-69")]
    Barnette69,
    /// `(1/3) 2^(d-2) (n - d + 5/2)`.
    #[serde(rename = "barnette-74")]
    Barnette74,
    /// `2^(d-3) n` for polytopes.
    #[serde(rename = "larman")]
    Larman,
    /// `2^(d-3) n` for polyhedra.
    #[serde(rename = "lms")]
    Lms,
    /// `2^(d-1) n` via connected layer families.
    #[serde(rename = "eisenbrand-clf")]
    EisenbrandClf,
    /// `n^(1 + log2 d)`.
    #[serde(rename = "kalai-kleitman")]
    KalaiKleitman,
    /// `(n-d)^(log2 d)`.
    #[serde(rename = "todd")]
    Todd,
    /// `(n-d)^(log2(d-1))` for polyhedra.
    #[serde(rename = "sk")]
    Sk,
    /// `(n-d-1)^(log2(d-1))` in a smaller tail region.
    #[serde(rename = "sk-minus-1")]
    SkMinus1,
    /// `((2/3)(n-d+3/2))^(log2(d-1))` for polytopes.
    #[serde(rename = "polytope-sk")]
    PolytopeSk,
    /// `(n-d)^(log2 d)` for normal simplicial complexes.
    #[serde(rename = "sigma-sk")]
    SigmaSk,
    /// `(n-3) C(floor(log2(n/4)) + d-3, floor(log2(n/4)))`.
    #[serde(rename = "binomial-u")]
    BinomialU,
    /// `(floor(2n/3) - 1) C(floor(log2(n/4)) + d-3, floor(log2(n/4)))`.
    #[serde(rename = "binomial-b")]
    BinomialB,
    /// `(1/16) n^3 / sqrt(3 log2 n - 5)`.
    #[serde(rename = "cubic")]
    Cubic,
    /// `n^(1 + 1/ln 2 + eps)`.
    #[serde(rename = "subcubic")]
    Subcubic,
    /// `n^(1 + eps)` once `log2 n >= 32 d / eps^2`.
    #[serde(rename = "almost-linear")]
    AlmostLinear,
    /// `n - d` (conjecture; false in general, valid where we check it).
    #[serde(rename = "hirsch")]
    Hirsch,
    /// `d (n - 1)` (conjecture).
    #[serde(rename = "hahnle")]
    Hahnle,
}

impl BoundFamily {
    pub const ALL: [BoundFamily; 20] = [
        BoundFamily::Klee3dU,
        BoundFamily::Klee3dB,
        BoundFamily::Barnette69,
        BoundFamily::Barnette74,
        BoundFamily::Larman,
        BoundFamily::Lms,
        BoundFamily::EisenbrandClf,
        BoundFamily::KalaiKleitman,
        BoundFamily::Todd,
        BoundFamily::Sk,
        BoundFamily::SkMinus1,
        BoundFamily::PolytopeSk,
        BoundFamily::SigmaSk,
        BoundFamily::BinomialU,
        BoundFamily::BinomialB,
        BoundFamily::Cubic,
        BoundFamily::Subcubic,
        BoundFamily::AlmostLinear,
        BoundFamily::Hirsch,
        BoundFamily::Hahnle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundFamily::Klee3dU => "klee-3d-u",
            BoundFamily::Klee3dB => "klee-3d-b",
            BoundFamily::Barnette69 => "barnette-69",
            BoundFamily::Barnette74 => "barnette-74",
            BoundFamily::Larman => "larman",
            BoundFamily::Lms => "lms",
            BoundFamily::EisenbrandClf => "eisenbrand-clf",
            BoundFamily::KalaiKleitman => "kalai-kleitman",
            BoundFamily::Todd => "todd",
            BoundFamily::Sk => "sk",
            BoundFamily::SkMinus1 => "sk-minus-1",
            BoundFamily::PolytopeSk => "polytope-sk",
            BoundFamily::SigmaSk => "sigma-sk",
            BoundFamily::BinomialU => "binomial-u",
            BoundFamily::BinomialB => "binomial-b",
            BoundFamily::Cubic => "cubic",
            BoundFamily::Subcubic => "subcubic",
            BoundFamily::AlmostLinear => "almost-linear",
            BoundFamily::Hirsch => "hirsch",
            BoundFamily::Hahnle => "hahnle",
        }
    }

    pub fn target(self) -> BoundTarget {
        match self {
            BoundFamily::Klee3dB
            | BoundFamily::Barnette69
            | BoundFamily::Barnette74
            | BoundFamily::Larman
            | BoundFamily::PolytopeSk
            | BoundFamily::BinomialB
            | BoundFamily::Hirsch => BoundTarget::DeltaB,
            BoundFamily::SigmaSk => BoundTarget::Sigma,
            _ => BoundTarget::DeltaU,
        }
    }

    pub fn needs_epsilon(self) -> bool {
        matches!(self, BoundFamily::Subcubic | BoundFamily::AlmostLinear)
    }

    /// Conjectural families are never part of a proven minimum; they are
    /// reported alongside for context only.
    pub fn is_conjectural(self) -> bool {
        matches!(self, BoundFamily::Hirsch | BoundFamily::Hahnle)
    }

    /// Human-readable formula, in the variables `d`, `n`, `eps`.
    pub fn formula(self) -> &'static str {
        match self {
            BoundFamily::Klee3dU => "n - 3",
            BoundFamily::Klee3dB => "floor(2n/3) - 1",
            BoundFamily::Barnette69 => "3^(d-2) n",
            BoundFamily::Barnette74 => "(1/3) 2^(d-2) (n - d + 5/2)",
            BoundFamily::Larman | BoundFamily::Lms => "2^(d-3) n",
            BoundFamily::EisenbrandClf => "2^(d-1) n",
            BoundFamily::KalaiKleitman => "n^(1 + log2 d)",
            BoundFamily::Todd => "(n - d)^(log2 d)",
            BoundFamily::Sk => "(n - d)^(log2(d-1))",
            BoundFamily::SkMinus1 => "(n - d - 1)^(log2(d-1))",
            BoundFamily::PolytopeSk => "((2/3)(n - d + 3/2))^(log2(d-1))",
            BoundFamily::SigmaSk => "(n - d)^(log2 d)",
            BoundFamily::BinomialU => "(n - 3) C(floor(log2(n/4)) + d - 3, floor(log2(n/4)))",
            BoundFamily::BinomialB => {
                "(floor(2n/3) - 1) C(floor(log2(n/4)) + d - 3, floor(log2(n/4)))"
            }
            BoundFamily::Cubic => "(1/16) n^3 / sqrt(3 log2 n - 5)",
            BoundFamily::Subcubic => "n^(1 + 1/ln 2 + eps)",
            BoundFamily::AlmostLinear => "n^(1 + eps)",
            BoundFamily::Hirsch => "n - d",
            BoundFamily::Hahnle => "d (n - 1)",
        }
    }

    /// Human-readable statement of the hypothesis under which the bound is
    /// proved (or, for conjectural families, stated).
    pub fn applicability(self) -> &'static str {
        match self {
            BoundFamily::Klee3dU => "d = 3 and n >= 3",
            BoundFamily::Klee3dB => "d = 3 and n >= 4",
            BoundFamily::Barnette69 => "n >= d >= 4",
            BoundFamily::Barnette74 | BoundFamily::Larman | BoundFamily::Lms => "n >= d >= 3",
            BoundFamily::EisenbrandClf => "n >= d >= 1",
            BoundFamily::KalaiKleitman => "n >= d >= 2",
            BoundFamily::Todd => "n >= d >= 1, except (d, n) = (1, 1)",
            BoundFamily::Sk => "n >= d >= 3",
            BoundFamily::SkMinus1 => "d = 4 and n >= 9, or d >= 5 and n >= d + 3",
            BoundFamily::PolytopeSk => "n > d >= 3",
            BoundFamily::SigmaSk => "n > d >= 4",
            BoundFamily::BinomialU => "n >= d >= 3",
            BoundFamily::BinomialB => "n > d >= 3",
            BoundFamily::Cubic => "d >= 3 and n >= 2^(d-1)",
            BoundFamily::Subcubic => {
                "d >= 3, eps > 0, and n >= 2^ceil(1 + (d-3)/(2^eps - 1))"
            }
            BoundFamily::AlmostLinear => "d >= 3, eps > 0, and n >= 2^ceil(32 d / eps^2)",
            BoundFamily::Hirsch => "n > d >= 2 (conjecture)",
            BoundFamily::Hahnle => "n >= d >= 2 (conjecture)",
        }
    }

    pub fn citation(self) -> &'static str {
        match self {
            BoundFamily::Klee3dU => "V. Klee (1966): Delta_u(3,n) <= n - 3",
            BoundFamily::Klee3dB => {
                "V. Klee (1966), tight 3-polytope bound: Delta_b(3,n) <= floor(2n/3) - 1"
            }
            BoundFamily::Barnette69 => "D. Barnette (1969): Delta_b(d,n) <= 3^(d-2) n",
            BoundFamily::Barnette74 => {
                "D. Barnette (1974), Theorem 1: Delta_b(d,n) <= (1/3) 2^(d-2) (n-d+5/2); \
                 the abstract's 2^(d-3) coefficient is a misprint (it fails for the 3-cube)"
            }
            BoundFamily::Larman => "D. Larman (1970): Delta_b(d,n) <= 2^(d-3) n",
            BoundFamily::Lms => {
                "J.-P. Labbe, T. Manneville, F. Santos (2015): Delta_u(d,n) <= 2^(d-3) n, \
                 via simplicial complexes"
            }
            BoundFamily::EisenbrandClf => {
                "F. Eisenbrand, N. Haehnle, A. Razborov, T. Rothvoss (2010): \
                 Delta_u(d,n) <= 2^(d-1) n, via connected layer families"
            }
            BoundFamily::KalaiKleitman => {
                "G. Kalai, D. Kleitman (1992): Delta_u(d,n) <= n^(1 + log2 d)"
            }
            BoundFamily::Todd => "M. Todd (2014): Delta_u(d,n) <= (n-d)^(log2 d)",
            BoundFamily::Sk => {
                "N. Sukegawa, T. Kitahara (2015): Delta_u(d,n) <= (n-d)^(log2(d-1))"
            }
            BoundFamily::SkMinus1 => {
                "N. Sukegawa, T. Kitahara (2015), refinement: \
                 Delta_u(d,n) <= (n-d-1)^(log2(d-1)) in the stated tail region"
            }
            BoundFamily::PolytopeSk => {
                "polytope tail bound from the halving recursion seeded with Klee's tight \
                 3-polytope row: Delta_b(d,n) <= ((2/3)(n-d+3/2))^(log2(d-1))"
            }
            BoundFamily::SigmaSk => {
                "normal-complex tail bound from the halving recursion: \
                 Sigma(d,n) <= (n-d)^(log2 d)"
            }
            BoundFamily::BinomialU => {
                "binomial bound from iterating the halving recursion down to dimension 3: \
                 Delta_u(d,n) <= (n-3) C(floor(log2(n/4)) + d-3, floor(log2(n/4)))"
            }
            BoundFamily::BinomialB => {
                "bounded-polytope form of the iterated binomial bound: \
                 Delta_b(d,n) <= (floor(2n/3)-1) C(floor(log2(n/4)) + d-3, floor(log2(n/4)))"
            }
            BoundFamily::Cubic => {
                "tail-cubic bound via the central binomial coefficient: \
                 Delta_u(d,n) <= (1/16) n^3 / sqrt(3 log2 n - 5) for n >= 2^(d-1)"
            }
            BoundFamily::Subcubic => {
                "tail bound with exponent 1 + 1/ln 2 + eps, from a direct estimate of the \
                 iterated-recursion binomial coefficient"
            }
            BoundFamily::AlmostLinear => {
                "tail-almost-linear bound: Delta_u(d,n) <= n^(1+eps) once \
                 log2 n >= 32 d / eps^2"
            }
            BoundFamily::Hirsch => {
                "W. M. Hirsch (1957), conjecture, disproved by F. Santos: diameter <= n - d; \
                 reported for context only"
            }
            BoundFamily::Hahnle => {
                "N. Haehnle, conjecture: Delta_u(d,n) <= d(n-1); reported for context only"
            }
        }
    }
}

impl fmt::Display for BoundFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown bound family `{0}`")]
pub struct ParseBoundFamilyError(pub String);

impl FromStr for BoundFamily {
    type Err = ParseBoundFamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BoundFamily::ALL
            .iter()
            .copied()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| ParseBoundFamilyError(s.to_string()))
    }
}

/// Evaluation point for the catalog. `epsilon`, when present, must be a
/// positive rational; families that do not need it ignore it, and families
/// that need it are simply inapplicable without it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundParams {
    pub d: u32,
    pub n: BigUint,
    pub epsilon: Option<Rat>,
}

impl BoundParams {
    pub fn new(d: u32, n: impl Into<BigUint>) -> Self {
        BoundParams { d, n: n.into(), epsilon: None }
    }

    pub fn with_epsilon(d: u32, n: impl Into<BigUint>, epsilon: Rat) -> Self {
        BoundParams { d, n: n.into(), epsilon: Some(epsilon) }
    }

    fn positive_epsilon(&self) -> Option<&Rat> {
        self.epsilon.as_ref().filter(|e| e.is_positive())
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum BoundError {
    #[error("{family} does not apply at d={d}, n={n}: requires {}", family.applicability())]
    NotApplicable { family: BoundFamily, d: u32, n: BigUint },
    #[error("{0}")]
    Domain(String),
    #[error("no non-conjectural family bounds {target} at d={d}, n={n}")]
    NoApplicableBound { target: BoundTarget, d: u32, n: BigUint },
    #[error("comparison of {lhs} vs {rhs} still undecided at {precision_bits} bits")]
    Undecidable { lhs: String, rhs: String, precision_bits: u32 },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

fn n_ge(n: &BigUint, k: u64) -> bool {
    *n >= BigUint::from(k)
}

fn n_gt(n: &BigUint, k: u64) -> bool {
    *n > BigUint::from(k)
}

/// `n >= 2^t`, decided on bit lengths alone.
fn n_at_least_pow2(n: &BigUint, t: &BigUint) -> bool {
    !n.is_zero() && BigUint::from(n.bits() - 1) >= *t
}

/// If `n` is exactly a power of two, its exponent.
fn power_of_two_exponent(n: &BigUint) -> Option<u64> {
    n.trailing_zeros().filter(|tz| tz + 1 == n.bits())
}

/// Pins the exact integer value of an expression known to be
/// integer-valued (e.g. rooted at a floor node), escalating precision until
/// the enclosure collapses to a point. `None` if the ladder is exhausted or
/// the expression is undefined.
fn pin_integer(expr: &RigorousExpr) -> Option<BigInt> {
    for &bits in &PRECISION_LADDER {
        match eval_interval(expr, bits) {
            Ok(iv) if iv.is_point() && iv.lo().is_integer() => {
                return Some(iv.lo().to_integer());
            }
            Ok(_) => {}
            Err(e) if e.is_definite() => return None,
            Err(_) => {}
        }
    }
    None
}

/// `ceil(1 + (d-3)/(2^eps - 1))`: the exponent of the sufficient threshold
/// for the subcubic tail bound. At `d = 3` the epsilon term vanishes and the
/// exponent is exactly 1. `None` when the ceiling cannot be pinned (treated
/// as not-provably-applicable by the conservative caller).
fn subcubic_threshold_log2(d: u32, eps: &Rat) -> Option<BigInt> {
    if d == 3 {
        return Some(BigInt::one());
    }
    let ratio = RigorousExpr::int(i64::from(d) - 3)
        .div(RigorousExpr::int(2).pow(RigorousExpr::rat(eps.clone())).sub(RigorousExpr::int(1)));
    // ceil(x) = -floor(-x); the floor of a point-enclosable value pins.
    let neg_ceil = pin_integer(&RigorousExpr::int(0).sub(ratio).floor())?;
    Some(BigInt::one() - neg_ceil)
}

/// `ceil(32 d / eps^2)`: exponent of the almost-linear threshold, exact
/// rational arithmetic throughout.
fn almost_linear_threshold_log2(d: u32, eps: &Rat) -> BigUint {
    let t = Rat::from_integer(BigInt::from(32u32 * d)) / (eps * eps);
    t.ceil().to_integer().to_biguint().expect("positive threshold exponent")
}

/// Whether the family's stated hypothesis holds at `p`. Total: never errors,
/// never panics on well-formed params.
pub fn bound_applies(family: BoundFamily, p: &BoundParams) -> bool {
    let d = p.d;
    let n = &p.n;
    let du = u64::from(d);
    match family {
        BoundFamily::Klee3dU => d == 3 && n_ge(n, 3),
        BoundFamily::Klee3dB => d == 3 && n_ge(n, 4),
        BoundFamily::Barnette69 => d >= 4 && n_ge(n, du),
        BoundFamily::Barnette74 | BoundFamily::Larman | BoundFamily::Lms => {
            d >= 3 && n_ge(n, du)
        }
        BoundFamily::EisenbrandClf => d >= 1 && n_ge(n, du),
        BoundFamily::KalaiKleitman => d >= 2 && n_ge(n, du),
        BoundFamily::Todd => d >= 1 && n_ge(n, du) && !(d == 1 && n.is_one()),
        BoundFamily::Sk => d >= 3 && n_ge(n, du),
        BoundFamily::SkMinus1 => {
            (d == 4 && n_ge(n, 9)) || (d >= 5 && n_ge(n, du + 3))
        }
        BoundFamily::PolytopeSk => d >= 3 && n_gt(n, du),
        BoundFamily::SigmaSk => d >= 4 && n_gt(n, du),
        BoundFamily::BinomialU => d >= 3 && n_ge(n, du),
        BoundFamily::BinomialB => d >= 3 && n_gt(n, du),
        BoundFamily::Cubic => d >= 3 && n.bits() >= u64::from(d),
        BoundFamily::Subcubic => {
            d >= 3
                && p.positive_epsilon().is_some_and(|eps| {
                    subcubic_threshold_log2(d, eps).is_some_and(|t| {
                        t.to_biguint().map_or(true, |t| n_at_least_pow2(n, &t))
                    })
                })
        }
        BoundFamily::AlmostLinear => {
            d >= 3
                && p.positive_epsilon()
                    .is_some_and(|eps| n_at_least_pow2(n, &almost_linear_threshold_log2(d, eps)))
        }
        BoundFamily::Hirsch => d >= 2 && n_gt(n, du),
        BoundFamily::Hahnle => d >= 2 && n_ge(n, du),
    }
}

fn big(n: &BigUint) -> RigorousExpr {
    RigorousExpr::int(BigInt::from(n.clone()))
}

/// `floor(log2(n/4))`, clamped to 0 for `n < 4` (where the binomial bound's
/// index pair degenerates to `C(d-3, 0)`-style edge values).
fn quarter_log_index(n: &BigUint) -> u64 {
    let m = n >> 2u32;
    if m.is_zero() {
        0
    } else {
        m.bits() - 1
    }
}

fn binomial(a: u64, b: u64) -> BigUint {
    num_integer::binomial(BigUint::from(a), BigUint::from(b))
}

/// The formula of `family` at `p` as a rigorous expression tree. Binomial
/// coefficients are folded to exact integers; everything else keeps the
/// formula's shape.
pub fn bound_value(family: BoundFamily, p: &BoundParams) -> Result<RigorousExpr, BoundError> {
    if !bound_applies(family, p) {
        return Err(BoundError::NotApplicable { family, d: p.d, n: p.n.clone() });
    }
    let d = i64::from(p.d);
    let n = &p.n;
    let expr = match family {
        BoundFamily::Klee3dU => big(n).sub(RigorousExpr::int(3)),
        BoundFamily::Klee3dB => RigorousExpr::int(2)
            .mul(big(n))
            .div(RigorousExpr::int(3))
            .floor()
            .sub(RigorousExpr::int(1)),
        BoundFamily::Barnette69 => {
            RigorousExpr::int(3).pow(RigorousExpr::int(d - 2)).mul(big(n))
        }
        BoundFamily::Barnette74 => RigorousExpr::ratio(1, 3)
            .mul(RigorousExpr::int(2).pow(RigorousExpr::int(d - 2)))
            .mul(big(n).sub(RigorousExpr::int(d)).add(RigorousExpr::ratio(5, 2))),
        BoundFamily::Larman | BoundFamily::Lms => {
            RigorousExpr::int(2).pow(RigorousExpr::int(d - 3)).mul(big(n))
        }
        BoundFamily::EisenbrandClf => {
            RigorousExpr::int(2).pow(RigorousExpr::int(d - 1)).mul(big(n))
        }
        BoundFamily::KalaiKleitman => {
            big(n).pow(RigorousExpr::int(1).add(RigorousExpr::int(d).log2()))
        }
        BoundFamily::Todd => {
            big(n).sub(RigorousExpr::int(d)).pow(RigorousExpr::int(d).log2())
        }
        BoundFamily::Sk => {
            big(n).sub(RigorousExpr::int(d)).pow(RigorousExpr::int(d - 1).log2())
        }
        BoundFamily::SkMinus1 => big(n)
            .sub(RigorousExpr::int(d + 1))
            .pow(RigorousExpr::int(d - 1).log2()),
        BoundFamily::PolytopeSk => RigorousExpr::ratio(2, 3)
            .mul(big(n).sub(RigorousExpr::int(d)).add(RigorousExpr::ratio(3, 2)))
            .pow(RigorousExpr::int(d - 1).log2()),
        BoundFamily::SigmaSk => {
            big(n).sub(RigorousExpr::int(d)).pow(RigorousExpr::int(d).log2())
        }
        BoundFamily::BinomialU | BoundFamily::BinomialB => {
            let j = quarter_log_index(n);
            let c = binomial(j + (p.d as u64 - 3), j);
            let factor = if family == BoundFamily::BinomialU {
                big(n).sub(RigorousExpr::int(3))
            } else {
                RigorousExpr::int(2)
                    .mul(big(n))
                    .div(RigorousExpr::int(3))
                    .floor()
                    .sub(RigorousExpr::int(1))
            };
            factor.mul(RigorousExpr::int(BigInt::from(c)))
        }
        BoundFamily::Cubic => RigorousExpr::ratio(1, 16)
            .mul(big(n).pow(RigorousExpr::int(3)))
            .div(
                RigorousExpr::int(3)
                    .mul(big(n).log2())
                    .sub(RigorousExpr::int(5))
                    .sqrt(),
            ),
        BoundFamily::Subcubic => {
            let eps = p.positive_epsilon().expect("checked by bound_applies").clone();
            big(n).pow(
                RigorousExpr::int(1)
                    .add(RigorousExpr::int(1).div(RigorousExpr::int(2).ln()))
                    .add(RigorousExpr::rat(eps)),
            )
        }
        BoundFamily::AlmostLinear => {
            let eps = p.positive_epsilon().expect("checked by bound_applies").clone();
            big(n).pow(RigorousExpr::int(1).add(RigorousExpr::rat(eps)))
        }
        BoundFamily::Hirsch => big(n).sub(RigorousExpr::int(d)),
        BoundFamily::Hahnle => {
            RigorousExpr::int(d).mul(big(n).sub(RigorousExpr::int(1)))
        }
    };
    Ok(expr)
}

/// Iterated halving recursion: `sum_{i=0}^{k} 2^i f(floor(n / 2^i)) - 1`
/// with `k = floor(log2(floor(n/d)))`, so that `d * 2^k <= n`. `f` bounds
/// the diameter one dimension down; the result bounds it at dimension `d`.
pub fn iterated_kk(
    d: u32,
    n: u64,
    lower_dim_bound: impl Fn(u64) -> BigUint,
) -> Result<BigUint, BoundError> {
    if d < 3 || n < u64::from(d) {
        return Err(BoundError::Domain(format!(
            "iterated recursion needs n >= d >= 3, got (d, n) = ({d}, {n})"
        )));
    }
    let k = (n / u64::from(d)).ilog2();
    let mut sum = BigUint::ZERO;
    for i in 0..=k {
        sum += lower_dim_bound(n >> i) << i;
    }
    if sum.is_zero() {
        Ok(sum)
    } else {
        Ok(sum - 1u32)
    }
}

/// Which dimension-3 row seeds the nested binomial bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseRow {
    /// `n - 3` (polyhedra).
    UnboundedKlee,
    /// `floor(2n/3) - 1` (polytopes).
    BoundedKlee,
}

/// `base_row(n) * C(floor(log2(n/4)) + d - 3, floor(log2(n/4)))`, the closed
/// form obtained by unwinding the iterated recursion to dimension 3.
pub fn nested_binomial_bound(d: u32, n: u64, base_row: BaseRow) -> Result<BigUint, BoundError> {
    if d < 3 || n < u64::from(d) {
        return Err(BoundError::Domain(format!(
            "nested binomial bound needs n >= d >= 3, got (d, n) = ({d}, {n})"
        )));
    }
    let j = quarter_log_index(&BigUint::from(n));
    let c = binomial(j + u64::from(d) - 3, j);
    let factor = match base_row {
        BaseRow::UnboundedKlee => n - 3,
        BaseRow::BoundedKlee => ((2 * u128::from(n)) / 3 - 1) as u64,
    };
    Ok(BigUint::from(factor) * c)
}

/// `(n - 3) C(2j, j)` with `j = floor(log2(n/4))`: the central-binomial
/// majorant standing between the nested binomial bound and the cubic bound
/// (the two inequality links are checked empirically, not assumed).
pub fn central_binomial_majorant(n: u64) -> Result<RigorousExpr, BoundError> {
    if n < 4 {
        return Err(BoundError::Domain(format!(
            "central binomial majorant needs n >= 4, got n = {n}"
        )));
    }
    let j = quarter_log_index(&BigUint::from(n));
    let c = binomial(2 * j, j);
    Ok(RigorousExpr::int(i64::try_from(n).expect("desk-scale n") - 3)
        .mul(RigorousExpr::int(BigInt::from(c))))
}

/// Result of [`best_bound`]: the provably smallest applicable
/// non-conjectural bound, plus any applicable conjectural values for
/// context.
#[derive(Debug, Clone)]
pub struct BestBound {
    pub family: BoundFamily,
    pub value: RigorousExpr,
    pub conjectural: Vec<(BoundFamily, RigorousExpr)>,
}

/// Minimum of the applicable catalog values for `target` at `p`, proven by
/// the rigorous comparator; ties go to the earlier catalog entry.
pub fn best_bound(target: BoundTarget, p: &BoundParams) -> Result<BestBound, BoundError> {
    let mut best: Option<(BoundFamily, RigorousExpr)> = None;
    let mut conjectural = Vec::new();
    for family in BoundFamily::ALL {
        if !target.covered_by(family.target()) || !bound_applies(family, p) {
            continue;
        }
        let value = bound_value(family, p)?;
        if family.is_conjectural() {
            conjectural.push((family, value));
            continue;
        }
        best = Some(match best {
            None => (family, value),
            Some((best_family, best_value)) => match compare(&value, &best_value)? {
                Ordering3::Less => (family, value),
                Ordering3::Greater | Ordering3::ProvenEqual => (best_family, best_value),
                Ordering3::Undecided { precision_bits } => {
                    return Err(BoundError::Undecidable {
                        lhs: family.as_str().to_string(),
                        rhs: best_family.as_str().to_string(),
                        precision_bits,
                    });
                }
            },
        });
    }
    match best {
        Some((family, value)) => Ok(BestBound { family, value, conjectural }),
        None => Err(BoundError::NoApplicableBound { target, d: p.d, n: p.n.clone() }),
    }
}

/// Outcome of [`binomial_tail_check`]: does
/// `C(floor(log2 n) + d - 3, floor(log2 n)) <= n^eps` hold at `(eps, d, n)`?
///
/// The sufficiency argument behind the `2^ceil(32 d / eps^2)` threshold
/// factors through two auxiliary inequalities, both exposed here for
/// inspection (each holds whenever `n` is at or above the threshold, and may
/// fail below it even though the main inequality still holds):
/// `(e s)^(2 floor(log2 n)/s) <= n^(eps/2)` and
/// `(e s)^(2 floor(log2 n)/s + 1) <= n^eps`, where `s = max(64/eps^2, e)`.
#[derive(Debug, Clone)]
pub struct BinomialTailCheck {
    pub holds: bool,
    /// `C(floor(log2 n) + d - 3, floor(log2 n))`, exact.
    pub binomial: BigUint,
    /// The scale parameter `max(64/eps^2, e)`.
    pub s: RigorousExpr,
    /// `ceil(32 d / eps^2)`: `n >= 2^this` suffices for the bound to hold.
    pub threshold_log2: BigUint,
    /// Left and right sides of the first auxiliary inequality.
    pub half_step: (RigorousExpr, RigorousExpr),
    /// Left and right sides of the second auxiliary inequality.
    pub full_step: (RigorousExpr, RigorousExpr),
}

/// Decides `C(floor(log2 n) + d - 3, floor(log2 n)) <= n^eps` rigorously.
/// When `n` is a power of two and `eps = p/q` has small denominator, the
/// comparison reduces to exact integer exponent arithmetic; otherwise the
/// rigorous comparator decides it.
pub fn binomial_tail_check(
    epsilon: &Rat,
    d: u32,
    n: &BigUint,
) -> Result<BinomialTailCheck, BoundError> {
    if !epsilon.is_positive() || d < 3 || n.is_zero() {
        return Err(BoundError::Domain(format!(
            "binomial tail check needs eps > 0, d >= 3, n >= 1, got eps={epsilon}, d={d}, n={n}"
        )));
    }
    let k = n.bits() - 1;
    let binomial_value = binomial(k + u64::from(d) - 3, k);

    let holds = decide_binomial_vs_power(&binomial_value, epsilon, n)?;

    let s_rat = Rat::from_integer(BigInt::from(64)) / (epsilon * epsilon);
    let s = RigorousExpr::rat(s_rat).max(RigorousExpr::int(1).exp());
    let es = RigorousExpr::int(1).exp().mul(s.clone());
    let two_k_over_s = RigorousExpr::int(BigInt::from(2 * k)).div(s.clone());
    let half_step = (
        es.clone().pow(two_k_over_s.clone()),
        big(n).pow(RigorousExpr::rat(epsilon / Rat::from_integer(BigInt::from(2)))),
    );
    let full_step = (
        es.pow(two_k_over_s.add(RigorousExpr::int(1))),
        big(n).pow(RigorousExpr::rat(epsilon.clone())),
    );

    Ok(BinomialTailCheck {
        holds,
        binomial: binomial_value,
        s,
        threshold_log2: almost_linear_threshold_log2(d, epsilon),
        half_step,
        full_step,
    })
}

fn decide_binomial_vs_power(
    binomial_value: &BigUint,
    epsilon: &Rat,
    n: &BigUint,
) -> Result<bool, BoundError> {
    if let Some(k) = power_of_two_exponent(n) {
        // n = 2^k, eps = p/q: C <= 2^(k p / q) iff C^q <= 2^(k p), and the
        // right side is compared by bit length alone.
        let p = epsilon.numer().to_biguint().expect("positive epsilon");
        let q = epsilon.denom().to_biguint().expect("positive denominator");
        if let Ok(q_small) = u32::try_from(&q) {
            let lhs = binomial_value.pow(q_small);
            let kp = BigUint::from(k) * p;
            let lhs_log2 = BigUint::from(lhs.bits() - 1);
            return Ok(match lhs_log2.cmp(&kp) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                // Same bit length: <= holds only at exact equality 2^(k p).
                std::cmp::Ordering::Equal => power_of_two_exponent(&lhs) == Some(lhs.bits() - 1),
            });
        }
    }
    let lhs = RigorousExpr::int(BigInt::from(binomial_value.clone()));
    let rhs = big(n).pow(RigorousExpr::rat(epsilon.clone()));
    match compare(&lhs, &rhs)? {
        Ordering3::Less | Ordering3::ProvenEqual => Ok(true),
        Ordering3::Greater => Ok(false),
        Ordering3::Undecided { precision_bits } => Err(BoundError::Undecidable {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            precision_bits,
        }),
    }
}

/// JSON listing of the whole catalog: id, target, formula, hypothesis,
/// citation, flags. Deterministic (catalog order, fixed field order).
pub fn catalog_json() -> String {
    #[derive(Serialize)]
    struct Entry {
        family: &'static str,
        target: &'static str,
        formula: &'static str,
        applicability: &'static str,
        citation: &'static str,
        needs_epsilon: bool,
        conjectural: bool,
    }
    let entries: Vec<Entry> = BoundFamily::ALL
        .iter()
        .map(|f| Entry {
            family: f.as_str(),
            target: f.target().as_str(),
            formula: f.formula(),
            applicability: f.applicability(),
            citation: f.citation(),
            needs_epsilon: f.needs_epsilon(),
            conjectural: f.is_conjectural(),
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&entries).expect("static data serializes");
    out.push('\n');
    out
}
