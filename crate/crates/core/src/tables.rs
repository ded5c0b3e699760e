//! Memoized exact tables for the three recursive diameter-bound sequences.
//!
//! Each sequence assigns a nonnegative integer to pairs `(d, n)` with
//! `n >= d >= base dimension` by a four-case recursion:
//!
//! 1. a closed base row at the base dimension (`n - 3`, `floor(2n/3) - 1`,
//!    or `floor(n/2)` depending on the kind),
//! 2. zero on the diagonal `n = d` above the base dimension,
//! 3. dimension reduction `value(d-1, n-1)` while `n < 2d`,
//! 4. `value(d-1, n-1) + 2*value(d, floor(n/2)) + 2` once `n >= 2d`.
//!
//! Values are exact arbitrary-precision integers: desk-scale entries fit in
//! machine words, but the recursion grows quasipolynomially in `n` and the
//! cost of exactness is negligible.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

/// Which doubly-indexed sequence a table holds.
///
/// `DeltaTildeU` dominates diameters of unbounded `d`-polyhedra with `n`
/// facets, `DeltaTildeB` those of bounded ones (both defined for
/// `n >= d >= 3`); `SigmaTilde` dominates dual-graph diameters of normal
/// `(d-1)`-dimensional simplicial complexes on `n` vertex symbols
/// (`n >= d >= 2`).
///
/// Above the base dimension every table is `0` at `n = d` by the diagonal
/// case. For `DeltaTildeB` that entry is a recursion artifact, not a
/// diameter claim: the bounded-diameter statement it feeds holds for
/// `n > d` only (a bounded polytope needs at least `d + 1` facets, and with
/// exactly `d + 1` it is a simplex of diameter at most 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SequenceKind {
    #[serde(rename = "delta-u")]
    DeltaTildeU,
    #[serde(rename = "delta-b")]
    DeltaTildeB,
    #[serde(rename = "sigma")]
    SigmaTilde,
}

impl SequenceKind {
    /// The base dimension: the smallest `d` in the domain, where the closed
    /// base row applies.
    pub fn min_dimension(self) -> u32 {
        match self {
            SequenceKind::DeltaTildeU | SequenceKind::DeltaTildeB => 3,
            SequenceKind::SigmaTilde => 2,
        }
    }

    /// Whether `(d, n)` lies in this kind's domain of definition.
    pub fn contains(self, d: u32, n: u64) -> bool {
        d >= self.min_dimension() && n >= d as u64
    }

    /// Stable external name, used by the CLI and serialized output.
    pub fn as_str(self) -> &'static str {
        match self {
            SequenceKind::DeltaTildeU => "delta-u",
            SequenceKind::DeltaTildeB => "delta-b",
            SequenceKind::SigmaTilde => "sigma",
        }
    }

    pub const ALL: [SequenceKind; 3] = [
        SequenceKind::DeltaTildeU,
        SequenceKind::DeltaTildeB,
        SequenceKind::SigmaTilde,
    ];
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown sequence kind `{0}` (expected delta-u, delta-b, or sigma)")]
pub struct ParseSequenceKindError(pub String);

impl FromStr for SequenceKind {
    type Err = ParseSequenceKindError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "delta-u" => Ok(SequenceKind::DeltaTildeU),
            "delta-b" => Ok(SequenceKind::DeltaTildeB),
            "sigma" => Ok(SequenceKind::SigmaTilde),
            other => Err(ParseSequenceKindError(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("({d}, {n}) is outside the {kind} domain (need n >= d >= {})", kind.min_dimension())]
    Domain { kind: SequenceKind, d: u32, n: u64 },
    #[error(
        "grid limits d_max={d_max}, n_max={n_max} are malformed for {kind} (need n_max >= d_max >= {})",
        kind.min_dimension()
    )]
    Limits { kind: SequenceKind, d_max: u32, n_max: u64 },
}

/// Memoized table of one sequence kind.
///
/// The memo is append-only and every stored value equals the value mandated
/// by the four-case definition; evaluation is logically pure, so confining a
/// table to one worker (as the `&mut self` receiver enforces) is all the
/// synchronization needed.
#[derive(Debug, Clone)]
pub struct RecursionTable {
    kind: SequenceKind,
    memo: HashMap<(u32, u64), BigUint>,
}

impl RecursionTable {
    pub fn new(kind: SequenceKind) -> Self {
        RecursionTable { kind, memo: HashMap::new() }
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    /// Exact value at `(d, n)`, memoizing every subproblem on the way.
    pub fn eval(&mut self, d: u32, n: u64) -> Result<BigUint, TableError> {
        if !self.kind.contains(d, n) {
            return Err(TableError::Domain { kind: self.kind, d, n });
        }
        Ok(self.eval_in_domain(d, n))
    }

    fn eval_in_domain(&mut self, d: u32, n: u64) -> BigUint {
        if let Some(v) = self.memo.get(&(d, n)) {
            return v.clone();
        }
        let value = if d == self.kind.min_dimension() {
            BigUint::from(match self.kind {
                SequenceKind::DeltaTildeU => n - 3,
                // 2n is computed in 128 bits so the base row is correct for
                // every representable n.
                SequenceKind::DeltaTildeB => ((2 * n as u128) / 3 - 1) as u64,
                SequenceKind::SigmaTilde => n / 2,
            })
        } else if n == d as u64 {
            BigUint::ZERO
        } else if n < 2 * d as u64 {
            self.eval_in_domain(d - 1, n - 1)
        } else {
            self.eval_in_domain(d - 1, n - 1) + self.eval_in_domain(d, n / 2) * 2u32 + 2u32
        };
        self.memo.insert((d, n), value.clone());
        value
    }
}

/// One-shot evaluation with a throwaway memo.
pub fn eval_sequence(kind: SequenceKind, d: u32, n: u64) -> Result<BigUint, TableError> {
    RecursionTable::new(kind).eval(d, n)
}

/// A fully materialized rectangle of table values: rows
/// `min_dimension <= d <= d_max`, columns `d <= n <= n_max`. Cells with
/// `n < d` are outside every kind's domain and are reported as absent.
#[derive(Debug, Clone)]
pub struct TableGrid {
    kind: SequenceKind,
    d_max: u32,
    n_max: u64,
    /// Row-major: row `d` holds `n = d ..= n_max` contiguously.
    cells: Vec<BigUint>,
}

/// Evaluates the whole grid up to `(d_max, n_max)`.
pub fn table_grid(kind: SequenceKind, d_max: u32, n_max: u64) -> Result<TableGrid, TableError> {
    if d_max < kind.min_dimension() || n_max < d_max as u64 {
        return Err(TableError::Limits { kind, d_max, n_max });
    }
    let mut table = RecursionTable::new(kind);
    let mut cells = Vec::new();
    for d in kind.min_dimension()..=d_max {
        for n in d as u64..=n_max {
            cells.push(table.eval(d, n).expect("grid cell is in-domain by construction"));
        }
    }
    Ok(TableGrid { kind, d_max, n_max, cells })
}

impl TableGrid {
    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn d_max(&self) -> u32 {
        self.d_max
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    fn row_start(&self, d: u32) -> usize {
        let min_d = self.kind.min_dimension() as u64;
        let d = d as u64;
        // Row k has n_max - k + 1 cells; sum those for min_d <= k < d.
        ((d - min_d) * (self.n_max + 1) - (d * (d - 1) / 2 - min_d * (min_d - 1) / 2)) as usize
    }

    /// The value at `(d, n)`, or `None` for cells outside the grid or the
    /// kind's domain.
    pub fn value(&self, d: u32, n: u64) -> Option<&BigUint> {
        if d < self.kind.min_dimension() || d > self.d_max || n < d as u64 || n > self.n_max {
            return None;
        }
        Some(&self.cells[self.row_start(d) + (n - d as u64) as usize])
    }

    /// All defined cells as `(d, n, value)`, rows outward in `d`, then `n`.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u64, &BigUint)> + '_ {
        let min_d = self.kind.min_dimension();
        let n_max = self.n_max;
        (min_d..=self.d_max)
            .flat_map(move |d| (d as u64..=n_max).map(move |n| (d, n)))
            .zip(self.cells.iter())
            .map(|((d, n), v)| (d, n, v))
    }

    /// CSV with the fixed header `d,n,value`; absent cells are omitted.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("d,n,value\n");
        for (d, n, v) in self.iter() {
            out.push_str(&format!("{d},{n},{v}\n"));
        }
        out
    }

    /// JSON array of `{"d":..,"n":..,"value":..}` objects, one per defined
    /// cell. Values are emitted as bare JSON integers; they are exact even
    /// beyond 64 bits, so the array is hand-rendered rather than routed
    /// through a fixed-width number type.
    pub fn to_json(&self) -> String {
        let mut out = String::from("[");
        for (i, (d, n, v)) in self.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!("\n{{\"d\":{d},\"n\":{n},\"value\":{v}}}"));
        }
        out.push_str("\n]\n");
        out
    }

    fn render_rows(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let min_d = self.kind.min_dimension();
        let mut header = vec![format!("{} d\\n", self.kind)];
        header.extend((min_d as u64..=self.n_max).map(|n| n.to_string()));
        let rows = (min_d..=self.d_max)
            .map(|d| {
                let mut row = vec![d.to_string()];
                row.extend(
                    (min_d as u64..=self.n_max)
                        .map(|n| self.value(d, n).map_or_else(String::new, |v| v.to_string())),
                );
                row
            })
            .collect();
        (header, rows)
    }

    /// GitHub-style markdown matrix; absent cells are blank.
    pub fn to_markdown(&self) -> String {
        let (header, rows) = self.render_rows();
        let mut out = format!("| {} |\n", header.join(" | "));
        out.push_str(&format!("|{}\n", "---|".repeat(header.len())));
        for row in rows {
            out.push_str(&format!("| {} |\n", row.join(" | ")));
        }
        out
    }

    /// Plain aligned matrix; absent cells are rendered as `.`.
    pub fn to_text(&self) -> String {
        let (header, rows) = self.render_rows();
        let mut widths: Vec<usize> = header.iter().map(String::len).collect();
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len().max(1));
            }
        }
        let mut out = String::new();
        for row in std::iter::once(&header).chain(&rows) {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{:>w$}", if cell.is_empty() { "." } else { cell }))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    /// Cells `(d, n)` where `value(d, n+1) < value(d, n)`. Whether the
    /// sequences are monotone in `n` is not something the underlying theory
    /// claims, so this is a measurement hook only — the library asserts
    /// nothing about the result.
    pub fn monotone_violations_in_n(&self) -> Vec<(u32, u64)> {
        let mut out = Vec::new();
        for d in self.kind.min_dimension()..=self.d_max {
            for n in d as u64..self.n_max {
                if let (Some(a), Some(b)) = (self.value(d, n), self.value(d, n + 1)) {
                    if b < a {
                        out.push((d, n));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(kind: SequenceKind, d: u32, n: u64) -> u64 {
        let v = eval_sequence(kind, d, n).unwrap();
        u64::try_from(&v).unwrap()
    }

    #[test]
    fn base_rows_match_closed_forms() {
        assert_eq!(ev(SequenceKind::DeltaTildeU, 3, 10), 7);
        assert_eq!(ev(SequenceKind::DeltaTildeB, 3, 9), 5);
        assert_eq!(ev(SequenceKind::SigmaTilde, 2, 7), 3);
        for n in 3..=40 {
            assert_eq!(ev(SequenceKind::DeltaTildeU, 3, n), n - 3);
            assert_eq!(ev(SequenceKind::DeltaTildeB, 3, n), 2 * n / 3 - 1);
        }
        for n in 2..=40 {
            assert_eq!(ev(SequenceKind::SigmaTilde, 2, n), n / 2);
        }
    }

    #[test]
    fn diagonal_above_base_is_zero() {
        for kind in SequenceKind::ALL {
            for d in kind.min_dimension() + 1..=9 {
                assert_eq!(ev(kind, d, d as u64), 0, "{kind} at d = n = {d}");
            }
        }
    }

    #[test]
    fn hand_unrolled_values() {
        assert_eq!(ev(SequenceKind::DeltaTildeU, 4, 8), 6);
        assert_eq!(ev(SequenceKind::DeltaTildeU, 4, 16), 26);
        assert_eq!(ev(SequenceKind::DeltaTildeB, 4, 8), 5);
        assert_eq!(ev(SequenceKind::DeltaTildeB, 4, 9), 6);
        assert_eq!(ev(SequenceKind::SigmaTilde, 3, 6), 4);
        // Dimension-reduction region: value(4, 7) = value(3, 6).
        assert_eq!(ev(SequenceKind::SigmaTilde, 4, 7), 4);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            eval_sequence(SequenceKind::DeltaTildeU, 2, 5),
            Err(TableError::Domain { .. })
        ));
        assert!(matches!(
            eval_sequence(SequenceKind::DeltaTildeU, 4, 3),
            Err(TableError::Domain { .. })
        ));
        assert!(matches!(
            eval_sequence(SequenceKind::SigmaTilde, 1, 5),
            Err(TableError::Domain { .. })
        ));
        // Domain corners are fine.
        assert_eq!(ev(SequenceKind::DeltaTildeU, 3, 3), 0);
        assert_eq!(ev(SequenceKind::SigmaTilde, 2, 2), 1);
    }

    #[test]
    fn grid_matches_pointwise_and_marks_absent() {
        let grid = table_grid(SequenceKind::DeltaTildeU, 5, 12).unwrap();
        let mut cells = 0;
        for (d, n, v) in grid.iter() {
            assert_eq!(*v, eval_sequence(SequenceKind::DeltaTildeU, d, n).unwrap());
            assert_eq!(grid.value(d, n), Some(v));
            cells += 1;
        }
        assert_eq!(cells, 10 + 9 + 8);
        assert_eq!(grid.value(4, 3), None);
        assert_eq!(grid.value(6, 10), None);
        assert_eq!(grid.value(3, 13), None);
        assert_eq!(grid.value(2, 5), None);

        assert!(matches!(
            table_grid(SequenceKind::DeltaTildeU, 2, 10),
            Err(TableError::Limits { .. })
        ));
        assert!(matches!(
            table_grid(SequenceKind::DeltaTildeU, 5, 4),
            Err(TableError::Limits { .. })
        ));
    }

    #[test]
    fn recursion_identities_hold_on_grid() {
        for kind in SequenceKind::ALL {
            let grid = table_grid(kind, 6, 40).unwrap();
            for (d, n, v) in grid.iter() {
                if d == kind.min_dimension() {
                    continue;
                }
                if n >= 2 * d as u64 {
                    let expect = grid.value(d - 1, n - 1).unwrap()
                        + grid.value(d, n / 2).unwrap() * 2u32
                        + 2u32;
                    assert_eq!(*v, expect, "{kind} ({d},{n})");
                } else if n > d as u64 {
                    assert_eq!(v, grid.value(d - 1, n - 1).unwrap(), "{kind} ({d},{n})");
                }
            }
        }
    }

    #[test]
    fn csv_and_json_render() {
        let grid = table_grid(SequenceKind::DeltaTildeB, 4, 8).unwrap();
        let csv = grid.to_csv();
        assert!(csv.starts_with("d,n,value\n"));
        assert!(csv.contains("\n4,8,5\n"));
        assert!(csv.contains("\n3,9,") == false);

        let json = grid.to_json();
        assert!(json.starts_with('['));
        assert!(json.trim_end().ends_with(']'));
        assert!(json.contains("{\"d\":4,\"n\":8,\"value\":5}"));
        assert!(json.contains("{\"d\":4,\"n\":4,\"value\":0}"));
    }

    #[test]
    fn markdown_and_text_render() {
        let grid = table_grid(SequenceKind::SigmaTilde, 3, 6).unwrap();
        let md = grid.to_markdown();
        assert!(md.lines().count() == 2 + 2);
        assert!(md.lines().all(|l| l.starts_with('|')));

        let text = grid.to_text();
        // Row d=3 has an absent cell at n=2.
        let row3 = text.lines().nth(2).unwrap();
        assert!(row3.contains('.'));
        assert!(text.contains("sigma"));
    }

    #[test]
    fn memo_hits_equal_fresh_evaluation() {
        let mut table = RecursionTable::new(SequenceKind::DeltaTildeU);
        let first = table.eval(6, 50).unwrap();
        let second = table.eval(6, 50).unwrap();
        assert_eq!(first, second);
        assert_eq!(first, eval_sequence(SequenceKind::DeltaTildeU, 6, 50).unwrap());
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in SequenceKind::ALL {
            assert_eq!(kind.as_str().parse::<SequenceKind>().unwrap(), kind);
            assert_eq!(serde_json::to_string(&kind).unwrap(), format!("\"{kind}\""));
        }
        assert!("delta_u".parse::<SequenceKind>().is_err());
    }

    #[test]
    fn monotone_measurement_runs() {
        // Measured, not asserted: monotonicity in n is an open question for
        // these sequences, so only record what the grid shows.
        let grid = table_grid(SequenceKind::DeltaTildeU, 6, 40).unwrap();
        let violations = grid.monotone_violations_in_n();
        println!("monotone-in-n violations up to (6, 40): {}", violations.len());
    }
}
