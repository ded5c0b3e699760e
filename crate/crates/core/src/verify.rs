//! Verification harness: grid checks that the recursive tables stay below
//! the closed-form tail bounds, point checks of the induction-step bracket
//! inequalities behind those bounds, a brute-force check of the index-swap
//! identity, and consistency of the whole catalog with exactly known small
//! polytope diameters.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::bounds::{bound_applies, bound_value, BoundError, BoundFamily, BoundParams, BoundTarget};
use crate::exact::{
    compare, decimal_string, eval_interval, ArithError, DecimalRounding, Ordering3, Rat,
    RigorousExpr,
};
use crate::tables::{RecursionTable, SequenceKind, TableError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "undecided")]
    Undecided,
}

impl Verdict {
    pub fn word(self) -> &'static str {
        match self {
            Verdict::Pass => "Passed",
            Verdict::Fail => "Failed",
            Verdict::Undecided => "Undecided",
        }
    }
}

/// One checked inequality: the parameter point, honest renderings of both
/// sides, and the comparator's verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub params: String,
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub undecided: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn from_cases(suite: impl Into<String>, cases: Vec<CaseResult>) -> Self {
        let mut summary = Summary::default();
        for case in &cases {
            match case.verdict {
                Verdict::Pass => summary.passed += 1,
                Verdict::Fail => summary.failed += 1,
                Verdict::Undecided => summary.undecided += 1,
            }
        }
        VerificationReport { suite: suite.into(), cases, summary }
    }

    pub fn is_clean(&self) -> bool {
        self.summary.failed == 0 && self.summary.undecided == 0
    }

    pub fn has_fail(&self) -> bool {
        self.summary.failed > 0
    }

    pub fn has_undecided(&self) -> bool {
        self.summary.undecided > 0
    }

    /// Line-per-case rendering in the style of grid-check scripts:
    /// `Passed d=4, n=8: 5 <= 19/3`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite {}: {} cases", self.suite, self.cases.len());
        for case in &self.cases {
            let _ = writeln!(
                out,
                "{} {}: {} <= {}",
                case.verdict.word(),
                case.params,
                case.lhs,
                case.rhs
            );
        }
        let _ = writeln!(
            out,
            "summary: {} passed, {} failed, {} undecided",
            self.summary.passed, self.summary.failed, self.summary.undecided
        );
        out
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum VerifyError {
    #[error(
        "(d, n) = ({d}, {n}) is outside the {region} induction region: requires {requirement}"
    )]
    OutsideRegion { region: &'static str, d: u32, n: u64, requirement: &'static str },
    #[error("index-swap brute force is capped at k <= 16, p <= 8; got (k, p) = ({k}, {p})")]
    IndexSwapLimits { k: u32, p: u32 },
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Renders an expression for a report: the exact rational when it folds,
/// otherwise a decimal enclosure at modest precision.
pub(crate) fn render_expr(expr: &RigorousExpr) -> String {
    if let Some(v) = expr.exact_value() {
        return v.to_string();
    }
    match eval_interval(expr, 96) {
        Ok(iv) => format!(
            "[{}, {}]",
            decimal_string(iv.lo(), 6, DecimalRounding::Down),
            decimal_string(iv.hi(), 6, DecimalRounding::Up)
        ),
        Err(e) => format!("<{e}>"),
    }
}

/// Verdict for `lhs <= rhs` from the three-way comparator.
pub(crate) fn verdict_le(lhs: &RigorousExpr, rhs: &RigorousExpr) -> Result<Verdict, ArithError> {
    Ok(match compare(lhs, rhs)? {
        Ordering3::Less | Ordering3::ProvenEqual => Verdict::Pass,
        Ordering3::Greater => Verdict::Fail,
        Ordering3::Undecided { .. } => Verdict::Undecided,
    })
}

pub(crate) fn le_case(
    params: String,
    lhs: &RigorousExpr,
    rhs: &RigorousExpr,
) -> Result<CaseResult, ArithError> {
    Ok(CaseResult {
        params,
        lhs: render_expr(lhs),
        rhs: render_expr(rhs),
        verdict: verdict_le(lhs, rhs)?,
    })
}

/// Which recursive table is checked against which tail bound over its grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TailGrid {
    /// `DeltaTildeU(d,n) <= (n-d)^(log2(d-1))` over the unbounded grid.
    #[serde(rename = "grid-sk")]
    Unbounded,
    /// `DeltaTildeB(d,n) <= ((2/3)(n-d+3/2))^(log2(d-1))` over the polytope grid.
    #[serde(rename = "grid-polytope-sk")]
    Polytope,
    /// `SigmaTilde(d,n) <= (n-d)^(log2 d)` over the complex grid.
    #[serde(rename = "grid-sigma-sk")]
    Complex,
}

impl TailGrid {
    pub fn suite_id(self) -> &'static str {
        match self {
            TailGrid::Unbounded => "grid-sk",
            TailGrid::Polytope => "grid-polytope-sk",
            TailGrid::Complex => "grid-sigma-sk",
        }
    }

    pub fn sequence_kind(self) -> SequenceKind {
        match self {
            TailGrid::Unbounded => SequenceKind::DeltaTildeU,
            TailGrid::Polytope => SequenceKind::DeltaTildeB,
            TailGrid::Complex => SequenceKind::SigmaTilde,
        }
    }

    pub fn bound_family(self) -> BoundFamily {
        match self {
            TailGrid::Unbounded => BoundFamily::Sk,
            TailGrid::Polytope => BoundFamily::PolytopeSk,
            TailGrid::Complex => BoundFamily::SigmaSk,
        }
    }

    /// The grid points, outer `d`, inner `n` (matching the print order of
    /// the grid-check scripts these suites reproduce).
    pub fn grid(self) -> Vec<(u32, u64)> {
        let mut points = Vec::new();
        match self {
            TailGrid::Unbounded => {
                points.extend((4..=45).map(|n| (4, n)));
                for d in 5u32..=7 {
                    points.extend((2 * u64::from(d)..u64::from(d) + 8).map(|n| (d, n)));
                }
            }
            TailGrid::Polytope => {
                for d in 4u32..=10 {
                    let hi = (u64::from(d) + 11).min(21);
                    points.extend((2 * u64::from(d)..hi).map(|n| (d, n)));
                }
            }
            TailGrid::Complex => {
                points.extend((5..=15).map(|n| (4, n)));
                for d in 5u32..=7 {
                    points.extend((2 * u64::from(d)..u64::from(d) + 8).map(|n| (d, n)));
                }
            }
        }
        points
    }
}

/// Checks the recursive table against its tail bound over the whole grid.
pub fn verify_tail_grid(which: TailGrid) -> Result<VerificationReport, VerifyError> {
    let mut table = RecursionTable::new(which.sequence_kind());
    let family = which.bound_family();
    let mut cases = Vec::new();
    for (d, n) in which.grid() {
        let tilde = table.eval(d, n)?;
        let lhs = RigorousExpr::int(BigInt::from(tilde));
        let rhs = bound_value(family, &BoundParams::new(d, n))?;
        cases.push(le_case(format!("d={d}, n={n}"), &lhs, &rhs)?);
    }
    Ok(VerificationReport::from_cases(which.suite_id(), cases))
}

/// Induction regions of the three tail-bound proofs. Each proof reduces the
/// recursive table's top case to the same-shaped bound one dimension down
/// and absorbs the slack into a bracket factor that must stay at most 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InductionRegion {
    /// Unbounded-polyhedra bound `(n-d)^(log2(d-1))`.
    #[serde(rename = "unbounded")]
    Unbounded,
    /// Polytope bound `((2/3)(n-d+3/2))^(log2(d-1))`.
    #[serde(rename = "polytope")]
    Polytope,
    /// Normal-complex bound `(n-d)^(log2 d)`.
    #[serde(rename = "complex")]
    Complex,
}

impl InductionRegion {
    pub fn as_str(self) -> &'static str {
        match self {
            InductionRegion::Unbounded => "unbounded",
            InductionRegion::Polytope => "polytope",
            InductionRegion::Complex => "complex",
        }
    }

    fn requirement(self) -> &'static str {
        match self {
            InductionRegion::Unbounded | InductionRegion::Complex => "d >= 5 and n - d >= 8",
            InductionRegion::Polytope => "d >= 5 and n - d >= 11",
        }
    }

    pub fn contains(self, d: u32, n: u64) -> bool {
        let slack_ok = match self {
            InductionRegion::Unbounded | InductionRegion::Complex => n >= u64::from(d) + 8,
            InductionRegion::Polytope => n >= u64::from(d) + 11,
        };
        d >= 5 && slack_ok
    }
}

/// Checks each inequality link of the region's bracket chain at one point.
///
/// Unbounded: `((d-2)/(d-1))^3 + 2/(d-1) + 2/(d-1)^(log2(n-d)) <= 1`.
/// Polytope: the same bracket with exponent `log2((2/3)(n-d+3/2))`.
/// Complex: `((d-1)/d)^3 + 2/d + 2/d^(log2(n-d)) <= (d^3-d^2+3d+1)/d^3`,
/// then `(d^3-d^2+3d+1)/d^3 <= 1`. At the region edge `n - d = 8` the first
/// link is an exact equality, which counts as a Pass.
pub fn verify_induction_step(
    region: InductionRegion,
    d: u32,
    n: u64,
) -> Result<VerificationReport, VerifyError> {
    if !region.contains(d, n) {
        return Err(VerifyError::OutsideRegion {
            region: region.as_str(),
            d,
            n,
            requirement: region.requirement(),
        });
    }
    let suite = format!("induction-{}", region.as_str());
    let slack = i64::try_from(n).expect("desk-scale n") - i64::from(d);
    let d_i = i64::from(d);
    let one = RigorousExpr::int(1);
    let mut cases = Vec::new();
    match region {
        InductionRegion::Unbounded | InductionRegion::Polytope => {
            let exponent = match region {
                InductionRegion::Unbounded => RigorousExpr::int(slack).log2(),
                _ => RigorousExpr::ratio(2, 3)
                    .mul(RigorousExpr::int(slack).add(RigorousExpr::ratio(3, 2)))
                    .log2(),
            };
            let bracket = RigorousExpr::ratio(d_i - 2, d_i - 1)
                .pow(RigorousExpr::int(3))
                .add(RigorousExpr::ratio(2, d_i - 1))
                .add(
                    RigorousExpr::int(2)
                        .div(RigorousExpr::int(d_i - 1).pow(exponent)),
                );
            cases.push(le_case(format!("d={d}, n={n}, bracket"), &bracket, &one)?);
        }
        InductionRegion::Complex => {
            let bracket = RigorousExpr::ratio(d_i - 1, d_i)
                .pow(RigorousExpr::int(3))
                .add(RigorousExpr::ratio(2, d_i))
                .add(
                    RigorousExpr::int(2)
                        .div(RigorousExpr::int(d_i).pow(RigorousExpr::int(slack).log2())),
                );
            let middle = RigorousExpr::rat(Rat::new(
                BigInt::from(d_i.pow(3) - d_i.pow(2) + 3 * d_i + 1),
                BigInt::from(d_i.pow(3)),
            ));
            cases.push(le_case(format!("d={d}, n={n}, bracket"), &bracket, &middle)?);
            cases.push(le_case(format!("d={d}, n={n}, coefficient"), &middle, &one)?);
        }
    }
    Ok(VerificationReport::from_cases(suite, cases))
}

/// `d^3 - d^2 + 3d + 1 <= d^3` for every `d` in the range: the polynomial
/// link that closes the complex-region bracket chain (it holds from `d = 4`
/// on, one dimension below the region itself, which the chain relies on).
pub fn verify_polynomial_link(d_lo: u32, d_hi: u32) -> VerificationReport {
    let mut cases = Vec::new();
    for d in d_lo..=d_hi {
        let d = u128::from(d);
        let lhs = d.pow(3) - d.pow(2) + 3 * d + 1;
        let rhs = d.pow(3);
        cases.push(CaseResult {
            params: format!("d={d}"),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            verdict: if lhs <= rhs { Verdict::Pass } else { Verdict::Fail },
        });
    }
    VerificationReport::from_cases("induction-polynomial-link", cases)
}

/// Number of p-tuples of nonnegative integers with sum at most `k`,
/// written as the literal nested sum with shrinking upper limits.
fn simplex_form(k: u32, p: u32) -> u128 {
    if p == 0 {
        return 1;
    }
    (0..=k).map(|i| simplex_form(k - i, p - 1)).sum()
}

/// Number of weakly decreasing chains `k >= i_1 >= ... >= i_p >= 0`,
/// written as the literal nested sum with chained upper limits.
fn chain_form(k: u32, p: u32) -> u128 {
    if p == 0 {
        return 1;
    }
    (0..=k).map(|i| chain_form(i, p - 1)).sum()
}

/// Brute-forces both nested-sum forms at `(k, p)` and checks each equals
/// `C(k+p, k)`.
pub fn verify_index_swap(k: u32, p: u32) -> Result<VerificationReport, VerifyError> {
    if k > 16 || p > 8 || p == 0 {
        return Err(VerifyError::IndexSwapLimits { k, p });
    }
    let reference = num_integer::binomial(BigUint::from(k + p), BigUint::from(k));
    let mut cases = Vec::new();
    for (name, value) in [
        ("shrinking-limits form", simplex_form(k, p)),
        ("chained-limits form", chain_form(k, p)),
    ] {
        cases.push(CaseResult {
            params: format!("k={k}, p={p}, {name}"),
            lhs: value.to_string(),
            rhs: reference.to_string(),
            verdict: if BigUint::from(value) == reference { Verdict::Pass } else { Verdict::Fail },
        });
    }
    Ok(VerificationReport::from_cases("index-swap", cases))
}

/// An exactly known diameter from the computational literature on polytopes
/// with few facets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KnownValue {
    pub target: BoundTarget,
    pub d: u32,
    pub n: u64,
    pub value: u64,
    pub citation: &'static str,
}

const KLEE_WALKUP: &str =
    "V. Klee, D. Walkup (1967), the d-step conjecture for dimension below 6";
const GOODEY: &str = "P. Goodey (1972), upper bounds for the diameters of convex polytopes";
const BREMNER_SCHEWE: &str =
    "D. Bremner, L. Schewe (2011), edge-graph diameter bounds for polytopes with few facets";
const BREMNER_DEZA_HUA_SCHEWE: &str =
    "D. Bremner, A. Deza, W. Hua, L. Schewe (2013), more bounds on the diameters of convex polytopes";

/// The exactly known values checked by [`verify_known_values`].
pub const KNOWN_VALUES: [KnownValue; 8] = [
    KnownValue { target: BoundTarget::DeltaB, d: 4, n: 9, value: 5, citation: KLEE_WALKUP },
    KnownValue { target: BoundTarget::DeltaB, d: 5, n: 10, value: 5, citation: KLEE_WALKUP },
    KnownValue { target: BoundTarget::DeltaB, d: 4, n: 10, value: 5, citation: GOODEY },
    KnownValue { target: BoundTarget::DeltaB, d: 5, n: 11, value: 6, citation: GOODEY },
    KnownValue { target: BoundTarget::DeltaB, d: 4, n: 11, value: 6, citation: BREMNER_SCHEWE },
    KnownValue { target: BoundTarget::DeltaB, d: 6, n: 12, value: 6, citation: BREMNER_SCHEWE },
    KnownValue {
        target: BoundTarget::DeltaB,
        d: 4,
        n: 12,
        value: 7,
        citation: BREMNER_DEZA_HUA_SCHEWE,
    },
    KnownValue {
        target: BoundTarget::DeltaB,
        d: 5,
        n: 12,
        value: 7,
        citation: BREMNER_DEZA_HUA_SCHEWE,
    },
];

/// Checks every known exact diameter against the recursive table and every
/// applicable proven bound family, and checks the few-facets statement that
/// the diameter is at most `n - d` whenever `n - d <= 6`.
pub fn verify_known_values() -> Result<VerificationReport, VerifyError> {
    let mut table = RecursionTable::new(SequenceKind::DeltaTildeB);
    let mut cases = Vec::new();
    for kv in KNOWN_VALUES {
        let value = RigorousExpr::int(i64::try_from(kv.value).expect("small value"));
        let point = format!("{}({}, {}) = {}", kv.target, kv.d, kv.n, kv.value);

        let tilde = table.eval(kv.d, kv.n)?;
        let tilde_expr = RigorousExpr::int(BigInt::from(tilde));
        cases.push(le_case(format!("{point} vs recursive table"), &value, &tilde_expr)?);

        let params = BoundParams::new(kv.d, kv.n);
        for family in BoundFamily::ALL {
            if family.is_conjectural()
                || !kv.target.covered_by(family.target())
                || !bound_applies(family, &params)
            {
                continue;
            }
            let bound = bound_value(family, &params)?;
            cases.push(le_case(format!("{point} vs {family}"), &value, &bound)?);
        }

        // Few-facets statement: diameter <= n - d whenever n - d <= 6.
        let slack = kv.n - u64::from(kv.d);
        if slack <= 6 {
            cases.push(CaseResult {
                params: format!("{point} vs few-facets bound n-d"),
                lhs: kv.value.to_string(),
                rhs: slack.to_string(),
                verdict: if kv.value <= slack { Verdict::Pass } else { Verdict::Fail },
            });
        }
    }
    Ok(VerificationReport::from_cases("known-values", cases))
}

/// Default induction sweep used by the command-line `induction` suite: every
/// region over `5 <= d <= 10` with the first six admissible slacks, plus the
/// polynomial link over `4 <= d <= 10`.
pub fn verify_induction_default() -> Result<Vec<VerificationReport>, VerifyError> {
    let mut reports = Vec::new();
    for region in [InductionRegion::Unbounded, InductionRegion::Polytope, InductionRegion::Complex]
    {
        let base = match region {
            InductionRegion::Polytope => 11u64,
            _ => 8u64,
        };
        let mut cases = Vec::new();
        for d in 5u32..=10 {
            for slack in base..base + 6 {
                let report = verify_induction_step(region, d, u64::from(d) + slack)?;
                cases.extend(report.cases);
            }
        }
        reports.push(VerificationReport::from_cases(
            format!("induction-{}", region.as_str()),
            cases,
        ));
    }
    reports.push(verify_polynomial_link(4, 10));
    Ok(reports)
}

/// Default index-swap sweep: all `0 <= k <= 12`, `1 <= p <= 6`, flattened
/// into one report.
pub fn verify_index_swap_default() -> Result<VerificationReport, VerifyError> {
    let mut cases = Vec::new();
    for k in 0u32..=12 {
        for p in 1u32..=6 {
            cases.extend(verify_index_swap(k, p)?.cases);
        }
    }
    Ok(VerificationReport::from_cases("index-swap", cases))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unbounded_grid_all_pass() {
        let report = verify_tail_grid(TailGrid::Unbounded).unwrap();
        assert_eq!(report.cases.len(), 42 + 3 + 2 + 1);
        assert!(report.is_clean(), "{}", report.to_text());
        assert_eq!(report.summary.passed, report.cases.len());
        // The diagonal corner folds to 0 <= 0 and passes as proven equality.
        assert_eq!(report.cases[0].params, "d=4, n=4");
        assert_eq!(report.cases[0].lhs, "0");
        assert_eq!(report.cases[0].rhs, "0");
    }

    #[test]
    fn polytope_grid_all_pass() {
        let report = verify_tail_grid(TailGrid::Polytope).unwrap();
        assert_eq!(report.cases.len(), 28);
        assert!(report.is_clean(), "{}", report.to_text());
    }

    #[test]
    fn complex_grid_all_pass() {
        let report = verify_tail_grid(TailGrid::Complex).unwrap();
        assert_eq!(report.cases.len(), 11 + 3 + 2 + 1);
        assert!(report.is_clean(), "{}", report.to_text());
        // Hand-unrolled corner: SigmaTilde(4,5) = 1 <= 1^(log2 4) = 1.
        let corner = report.cases.iter().find(|c| c.params == "d=4, n=5").unwrap();
        assert_eq!(corner.lhs, "1");
        assert_eq!(corner.rhs, "1");
        assert_eq!(corner.verdict, Verdict::Pass);
    }

    #[test]
    fn induction_step_pinned_points() {
        // Unbounded bracket at (5, 13): (3/4)^3 + 2/4 + 2/4^3 = 61/64.
        let report = verify_induction_step(InductionRegion::Unbounded, 5, 13).unwrap();
        assert!(report.is_clean());
        assert_eq!(report.cases[0].lhs, "61/64");
        assert_eq!(report.cases[0].rhs, "1");

        // Complex chain at (5, 13): bracket = middle = 116/125 exactly at
        // the region edge, then 116/125 <= 1.
        let report = verify_induction_step(InductionRegion::Complex, 5, 13).unwrap();
        assert!(report.is_clean());
        assert_eq!(report.cases.len(), 2);
        assert_eq!(report.cases[0].lhs, "116/125");
        assert_eq!(report.cases[0].rhs, "116/125");
        assert_eq!(report.cases[1].rhs, "1");

        // Polytope region needs more slack.
        assert!(matches!(
            verify_induction_step(InductionRegion::Polytope, 5, 13),
            Err(VerifyError::OutsideRegion { .. })
        ));
        let report = verify_induction_step(InductionRegion::Polytope, 5, 16).unwrap();
        assert!(report.is_clean(), "{}", report.to_text());

        assert!(matches!(
            verify_induction_step(InductionRegion::Unbounded, 4, 30),
            Err(VerifyError::OutsideRegion { .. })
        ));
    }

    #[test]
    fn induction_default_sweep_clean() {
        for report in verify_induction_default().unwrap() {
            assert!(report.is_clean(), "{}", report.to_text());
        }
    }

    #[test]
    fn polynomial_link_holds_from_four() {
        let report = verify_polynomial_link(4, 10);
        assert!(report.is_clean());
        assert_eq!(report.cases[0].lhs, "61");
        assert_eq!(report.cases[0].rhs, "64");
        // One dimension lower the inequality genuinely fails (27-9+9+1=28).
        let report = verify_polynomial_link(3, 3);
        assert!(report.has_fail());
    }

    #[test]
    fn index_swap_examples() {
        let report = verify_index_swap(2, 2).unwrap();
        assert!(report.is_clean());
        assert!(report.cases.iter().all(|c| c.rhs == "6"));

        let report = verify_index_swap(0, 3).unwrap();
        assert!(report.cases.iter().all(|c| c.lhs == "1" && c.rhs == "1"));

        let report = verify_index_swap(3, 1).unwrap();
        assert!(report.cases.iter().all(|c| c.rhs == "4"));

        assert!(matches!(
            verify_index_swap(17, 2),
            Err(VerifyError::IndexSwapLimits { .. })
        ));
        assert!(matches!(
            verify_index_swap(3, 0),
            Err(VerifyError::IndexSwapLimits { .. })
        ));
    }

    #[test]
    fn index_swap_default_sweep_clean() {
        let report = verify_index_swap_default().unwrap();
        assert_eq!(report.cases.len(), 13 * 6 * 2);
        assert!(report.is_clean());
    }

    #[test]
    fn known_values_all_pass() {
        let report = verify_known_values().unwrap();
        assert!(report.is_clean(), "{}", report.to_text());
        // Spot-check the advertised cases.
        let text = report.to_text();
        assert!(text.contains("delta-b(4, 9) = 5 vs polytope-sk"), "{text}");
        assert!(text.contains("delta-b(6, 12) = 6 vs recursive table"), "{text}");
        // Five of the eight values sit in the few-facets band, all with
        // equality at (5,10) and near-equality elsewhere.
        let few_facets: Vec<_> =
            report.cases.iter().filter(|c| c.params.contains("few-facets")).collect();
        assert_eq!(few_facets.len(), 5);
        let tight = few_facets
            .iter()
            .find(|c| c.params.starts_with("delta-b(5, 10)"))
            .unwrap();
        assert_eq!(tight.lhs, tight.rhs);
    }

    #[test]
    fn report_serialization_round_trips() {
        let report = verify_index_swap(2, 2).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(report, back);

        let report = verify_tail_grid(TailGrid::Polytope).unwrap();
        let json = serde_json::to_string_pretty(&report).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(report, back);
    }

    #[test]
    fn text_rendering_mirrors_grid_scripts() {
        let report = verify_tail_grid(TailGrid::Unbounded).unwrap();
        let text = report.to_text();
        assert!(text.starts_with("suite grid-sk: 48 cases\n"));
        assert!(text.contains("Passed d=4, n=4: 0 <= 0"));
        assert!(text.trim_end().ends_with("summary: 48 passed, 0 failed, 0 undecided"));
    }
}
