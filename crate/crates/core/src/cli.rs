//! Command-line front end: recursion tables, bound evaluation, the best
//! applicable bound, verification suites, and exact instance diameters.
//!
//! Data goes to stdout, diagnostics to stderr. Identical invocations produce
//! byte-identical output. Exit codes: 0 success; 1 any error or (for
//! `verify`) any failed case; 2 for `verify` when everything holds except
//! cases left undecided at the precision cap.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;

use crate::bounds::{
    best_bound, bound_value, BoundError, BoundFamily, BoundParams, BoundTarget,
};
use crate::exact::{decimal_string, eval_interval, DecimalRounding, Rat, RigorousExpr};
use crate::geometry::{
    complex_predicates, cross_check, dual_diameter, enumerate_vertices, parse_complex,
    parse_hpolytope, polytope_diameter, CheckInstance, ComplexPredicates,
};
use crate::tables::{table_grid, SequenceKind};
use crate::verify::{
    verify_index_swap_default, verify_induction_default, verify_known_values, verify_tail_grid,
    TailGrid, VerificationReport,
};

const DEFAULT_PRECISION: u32 = 128;
const MAX_PRECISION: u32 = 4096;
const PRECISION_ENV: &str = "DIAMBOUNDS_PRECISION";

#[derive(Parser)]
#[command(
    name = "diambounds",
    version,
    about = "Exact diameter-bound tables, certified bound evaluation, verification suites, \
             and exact diameters of small polytopes and simplicial complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a recursion-table grid.
    Table {
        /// Sequence: delta-u, delta-b, or sigma.
        #[arg(long)]
        kind: String,
        /// Largest dimension row.
        #[arg(long)]
        d_max: u32,
        /// Largest facet/vertex count column (decimal or `2^k`).
        #[arg(long)]
        n_max: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate one bound family at (d, n).
    Bound {
        /// Family name, e.g. sk, kalai-kleitman, cubic.
        #[arg(long)]
        family: String,
        #[arg(long)]
        d: u32,
        /// Decimal or `2^k`.
        #[arg(long)]
        n: String,
        /// Epsilon, as an integer or `p/q` (required by eps families).
        #[arg(long)]
        eps: Option<String>,
        /// Enclosure precision in bits (1..=4096); overrides DIAMBOUNDS_PRECISION.
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Smallest applicable proven bound at (d, n), with conjectural context.
    Best {
        /// Diameter notion: delta-u, delta-b, or sigma.
        #[arg(long)]
        target: String,
        #[arg(long)]
        d: u32,
        /// Decimal or `2^k`.
        #[arg(long)]
        n: String,
        /// Epsilon, as an integer or `p/q` (admits the eps families).
        #[arg(long)]
        eps: Option<String>,
        /// Enclosure precision in bits (1..=4096); overrides DIAMBOUNDS_PRECISION.
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run verification suites.
    Verify {
        /// grid-sk, grid-polytope-sk, grid-sigma-sk, induction, index-swap,
        /// known-values, or all.
        #[arg(long)]
        suite: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exact diameter of an instance file, with bound cross-checks.
    Diameter {
        /// Path to the instance file.
        #[arg(long)]
        input: String,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Diameter notion for the cross-check; defaults to delta-b for
        /// polytopes and sigma for complexes.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Markdown,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Polytope,
    Complex,
}

/// Runs the CLI on the given arguments and returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help/--version on stdout (exit 0) and usage
            // errors on stderr (exit 2).
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = match cli.command {
        Command::Table { kind, d_max, n_max, format } => cmd_table(&kind, d_max, &n_max, format),
        Command::Bound { family, d, n, eps, precision, format } => {
            cmd_bound(&family, d, &n, eps.as_deref(), precision, format)
        }
        Command::Best { target, d, n, eps, precision, format } => {
            cmd_best(&target, d, &n, eps.as_deref(), precision, format)
        }
        Command::Verify { suite, format } => return cmd_verify(&suite, format),
        Command::Diameter { input, mode, target, format } => {
            cmd_diameter(&input, mode, target.as_deref(), format)
        }
    };
    match outcome {
        Ok(rendered) => {
            print!("{rendered}");
            0
        }
        Err(message) => {
            eprintln!("error: {message}");
            1
        }
    }
}

/// `2^k` or a decimal count.
fn parse_count(s: &str) -> Result<BigUint, String> {
    if let Some(exp) = s.strip_prefix("2^") {
        let k: u32 = exp
            .parse()
            .map_err(|_| format!("cannot read the exponent in `{s}` (expected 2^<integer>)"))?;
        if k > 1 << 20 {
            return Err(format!("2^{k} is beyond any supported computation"));
        }
        return Ok(BigUint::one() << k);
    }
    BigUint::from_str(s).map_err(|_| format!("cannot read a count from `{s}` (decimal or 2^k)"))
}

fn parse_count_u64(s: &str, what: &str) -> Result<u64, String> {
    u64::try_from(parse_count(s)?).map_err(|_| format!("{what} `{s}` does not fit in 64 bits"))
}

fn parse_rat_arg(s: &str) -> Result<Rat, String> {
    let bad = || format!("cannot read a rational from `{s}` (integer or p/q)");
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p).map_err(|_| bad())?;
            let q = BigInt::from_str(q).map_err(|_| bad())?;
            if num_traits::Zero::is_zero(&q) {
                return Err(format!("zero denominator in `{s}`"));
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

fn resolve_precision(flag: Option<u32>) -> Result<u32, String> {
    let bits = match flag {
        Some(bits) => bits,
        None => match std::env::var(PRECISION_ENV) {
            Ok(value) => value
                .parse()
                .map_err(|_| format!("{PRECISION_ENV}=`{value}` is not a bit count"))?,
            Err(_) => DEFAULT_PRECISION,
        },
    };
    if bits == 0 || bits > MAX_PRECISION {
        return Err(format!(
            "precision must be between 1 and {MAX_PRECISION} bits, got {bits}"
        ));
    }
    Ok(bits)
}

fn build_params(d: u32, n: &str, eps: Option<&str>) -> Result<BoundParams, String> {
    let n = parse_count(n)?;
    Ok(match eps {
        Some(e) => BoundParams::with_epsilon(d, n, parse_rat_arg(e)?),
        None => BoundParams::new(d, n),
    })
}

fn require_json_or_text(format: Format) -> Result<(), String> {
    match format {
        Format::Json | Format::Text => Ok(()),
        Format::Csv | Format::Markdown => {
            Err("this command renders json or text output only".into())
        }
    }
}

// ---------------------------------------------------------------------------
// table

fn cmd_table(kind: &str, d_max: u32, n_max: &str, format: Format) -> Result<String, String> {
    let kind = SequenceKind::from_str(kind).map_err(|e| e.to_string())?;
    let n_max = parse_count_u64(n_max, "--n-max")?;
    let grid = table_grid(kind, d_max, n_max).map_err(|e| e.to_string())?;
    Ok(match format {
        Format::Csv => grid.to_csv(),
        Format::Json => grid.to_json(),
        Format::Markdown => grid.to_markdown(),
        Format::Text => grid.to_text(),
    })
}

// ---------------------------------------------------------------------------
// bound / best

/// An exact value or a certified enclosure, rendered for output.
#[derive(Serialize)]
#[serde(untagged)]
enum ValueOut {
    Exact { exact: String },
    Enclosure { lo: String, hi: String, precision_bits: u32 },
}

impl ValueOut {
    fn render(expr: &RigorousExpr, precision_bits: u32) -> Result<ValueOut, String> {
        if let Some(v) = expr.exact_value() {
            return Ok(ValueOut::Exact { exact: v.to_string() });
        }
        let iv = eval_interval(expr, precision_bits).map_err(|e| e.to_string())?;
        let digits = (precision_bits as usize / 4).max(8);
        Ok(ValueOut::Enclosure {
            lo: decimal_string(iv.lo(), digits, DecimalRounding::Down),
            hi: decimal_string(iv.hi(), digits, DecimalRounding::Up),
            precision_bits,
        })
    }

    fn to_text(&self) -> String {
        match self {
            ValueOut::Exact { exact } => format!("{exact} (exact)"),
            ValueOut::Enclosure { lo, hi, precision_bits } => {
                format!("[{lo}, {hi}] (certified enclosure at {precision_bits} bits)")
            }
        }
    }
}

#[derive(Serialize)]
struct BoundOut {
    family: &'static str,
    target: &'static str,
    d: u32,
    n: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    eps: Option<String>,
    value: ValueOut,
    formula: &'static str,
    citation: &'static str,
}

fn cmd_bound(
    family: &str,
    d: u32,
    n: &str,
    eps: Option<&str>,
    precision: Option<u32>,
    format: Format,
) -> Result<String, String> {
    require_json_or_text(format)?;
    let family = BoundFamily::from_str(family).map_err(|e| e.to_string())?;
    let precision = resolve_precision(precision)?;
    let params = build_params(d, n, eps)?;
    let expr = bound_value(family, &params).map_err(|e| e.to_string())?;
    let out = BoundOut {
        family: family.as_str(),
        target: family.target().as_str(),
        d,
        n: params.n.to_string(),
        eps: params.epsilon.as_ref().map(|e| e.to_string()),
        value: ValueOut::render(&expr, precision)?,
        formula: family.formula(),
        citation: family.citation(),
    };
    Ok(match format {
        Format::Json => to_json_line(&out),
        Format::Text => {
            let mut text = String::new();
            let _ = writeln!(text, "family: {}", out.family);
            let _ = writeln!(text, "target: {}", out.target);
            let _ = writeln!(text, "d: {}", out.d);
            let _ = writeln!(text, "n: {}", out.n);
            if let Some(eps) = &out.eps {
                let _ = writeln!(text, "eps: {eps}");
            }
            let _ = writeln!(text, "value: {}", out.value.to_text());
            let _ = writeln!(text, "formula: {}", out.formula);
            let _ = writeln!(text, "citation: {}", out.citation);
            text
        }
        _ => unreachable!("filtered by require_json_or_text"),
    })
}

#[derive(Serialize)]
struct FamilyValueOut {
    family: &'static str,
    value: ValueOut,
    formula: &'static str,
    citation: &'static str,
}

#[derive(Serialize)]
struct BestOut {
    target: &'static str,
    d: u32,
    n: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    eps: Option<String>,
    winner: FamilyValueOut,
    conjectural: Vec<FamilyValueOut>,
}

fn cmd_best(
    target: &str,
    d: u32,
    n: &str,
    eps: Option<&str>,
    precision: Option<u32>,
    format: Format,
) -> Result<String, String> {
    require_json_or_text(format)?;
    let target = BoundTarget::from_str(target).map_err(|e| e.to_string())?;
    let precision = resolve_precision(precision)?;
    let params = build_params(d, n, eps)?;
    let best = best_bound(target, &params).map_err(|e| match e {
        BoundError::Undecidable { .. } => format!("{e}; raise the comparison budget"),
        other => other.to_string(),
    })?;
    let render = |family: BoundFamily, expr: &RigorousExpr| -> Result<FamilyValueOut, String> {
        Ok(FamilyValueOut {
            family: family.as_str(),
            value: ValueOut::render(expr, precision)?,
            formula: family.formula(),
            citation: family.citation(),
        })
    };
    let out = BestOut {
        target: target.as_str(),
        d,
        n: params.n.to_string(),
        eps: params.epsilon.as_ref().map(|e| e.to_string()),
        winner: render(best.family, &best.value)?,
        conjectural: best
            .conjectural
            .iter()
            .map(|(family, expr)| render(*family, expr))
            .collect::<Result<_, _>>()?,
    };
    Ok(match format {
        Format::Json => to_json_line(&out),
        Format::Text => {
            let mut text = String::new();
            let _ = writeln!(text, "best proven bound for {} at d={}, n={}", out.target, out.d, out.n);
            if let Some(eps) = &out.eps {
                let _ = writeln!(text, "eps: {eps}");
            }
            let _ = writeln!(text, "winner: {} = {}", out.winner.family, out.winner.value.to_text());
            let _ = writeln!(text, "  formula: {}", out.winner.formula);
            let _ = writeln!(text, "  citation: {}", out.winner.citation);
            if !out.conjectural.is_empty() {
                let _ = writeln!(text, "conjectural (reported for context, never the winner):");
                for c in &out.conjectural {
                    let _ = writeln!(text, "  {} = {}", c.family, c.value.to_text());
                }
            }
            text
        }
        _ => unreachable!("filtered by require_json_or_text"),
    })
}

// ---------------------------------------------------------------------------
// verify

fn collect_reports(suite: &str) -> Result<Vec<VerificationReport>, String> {
    fn gather(suite: &str) -> Result<Option<Vec<VerificationReport>>, crate::verify::VerifyError> {
        let single = |r: VerificationReport| Some(vec![r]);
        Ok(match suite {
            "grid-sk" => single(verify_tail_grid(TailGrid::Unbounded)?),
            "grid-polytope-sk" => single(verify_tail_grid(TailGrid::Polytope)?),
            "grid-sigma-sk" => single(verify_tail_grid(TailGrid::Complex)?),
            "induction" => Some(verify_induction_default()?),
            "index-swap" => single(verify_index_swap_default()?),
            "known-values" => single(verify_known_values()?),
            "all" => {
                let mut reports = Vec::new();
                for grid in [TailGrid::Unbounded, TailGrid::Polytope, TailGrid::Complex] {
                    reports.push(verify_tail_grid(grid)?);
                }
                reports.extend(verify_induction_default()?);
                reports.push(verify_index_swap_default()?);
                reports.push(verify_known_values()?);
                Some(reports)
            }
            _ => None,
        })
    }
    gather(suite).map_err(|e| e.to_string())?.ok_or_else(|| {
        format!(
            "unknown suite `{suite}` (expected grid-sk, grid-polytope-sk, grid-sigma-sk, \
             induction, index-swap, known-values, or all)"
        )
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_reports(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Suites<'a> {
                suites: &'a [VerificationReport],
            }
            to_json_line(&Suites { suites: reports })
        }
        Format::Text => {
            let texts: Vec<String> = reports.iter().map(|r| r.to_text()).collect();
            texts.join("\n")
        }
        Format::Csv => {
            let mut out = String::from("suite,params,lhs,rhs,verdict\n");
            for report in reports {
                for case in &report.cases {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{}",
                        csv_field(&report.suite),
                        csv_field(&case.params),
                        csv_field(&case.lhs),
                        csv_field(&case.rhs),
                        case.verdict.word()
                    );
                }
            }
            out
        }
        Format::Markdown => {
            let mut out = String::new();
            for (i, report) in reports.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                let _ = writeln!(out, "## {}\n", report.suite);
                out.push_str("| params | lhs | rhs | verdict |\n|---|---|---|---|\n");
                for case in &report.cases {
                    let _ = writeln!(
                        out,
                        "| {} | {} | {} | {} |",
                        case.params, case.lhs, case.rhs,
                        case.verdict.word()
                    );
                }
                let _ = writeln!(
                    out,
                    "\n{} passed, {} failed, {} undecided",
                    report.summary.passed, report.summary.failed, report.summary.undecided
                );
            }
            out
        }
    }
}

fn cmd_verify(suite: &str, format: Format) -> u8 {
    let reports = match collect_reports(suite) {
        Ok(reports) => reports,
        Err(message) => {
            eprintln!("error: {message}");
            return 1;
        }
    };
    print!("{}", render_reports(&reports, format));
    // A definite Fail outranks cases that are merely undecided.
    if reports.iter().any(VerificationReport::has_fail) {
        1
    } else if reports.iter().any(VerificationReport::has_undecided) {
        2
    } else {
        0
    }
}

// ---------------------------------------------------------------------------
// diameter

#[derive(Serialize)]
struct PolytopeOut {
    mode: &'static str,
    input: String,
    dimension: usize,
    halfspaces: usize,
    vertices: usize,
    diameter: u64,
    cross_check: VerificationReport,
}

#[derive(Serialize)]
struct ComplexOut {
    mode: &'static str,
    input: String,
    facet_size: usize,
    labels: usize,
    facets: usize,
    diameter: u64,
    predicates: ComplexPredicates,
    cross_check: VerificationReport,
}

fn cmd_diameter(
    input: &str,
    mode: Mode,
    target: Option<&str>,
    format: Format,
) -> Result<String, String> {
    require_json_or_text(format)?;
    let target = match target {
        Some(t) => Some(BoundTarget::from_str(t).map_err(|e| e.to_string())?),
        None => None,
    };
    let text = std::fs::read_to_string(input).map_err(|e| format!("cannot read {input}: {e}"))?;
    match mode {
        Mode::Polytope => {
            let p = parse_hpolytope(&text).map_err(|e| e.to_string())?;
            let vertices = enumerate_vertices(&p).map_err(|e| e.to_string())?;
            let diameter = polytope_diameter(&p).map_err(|e| e.to_string())?;
            let target = target.unwrap_or(BoundTarget::DeltaB);
            let report = cross_check(&CheckInstance::Polytope(p.clone()), target, input)
                .map_err(|e| e.to_string())?;
            let out = PolytopeOut {
                mode: "polytope",
                input: input.to_string(),
                dimension: p.dimension(),
                halfspaces: p.halfspace_count(),
                vertices: vertices.len(),
                diameter,
                cross_check: report,
            };
            Ok(match format {
                Format::Json => to_json_line(&out),
                Format::Text => {
                    let mut text = String::new();
                    let _ = writeln!(text, "mode: polytope");
                    let _ = writeln!(text, "input: {}", out.input);
                    let _ = writeln!(text, "dimension: {}", out.dimension);
                    let _ = writeln!(text, "halfspaces: {}", out.halfspaces);
                    let _ = writeln!(text, "vertices: {}", out.vertices);
                    let _ = writeln!(text, "diameter: {}", out.diameter);
                    text.push('\n');
                    text.push_str(&out.cross_check.to_text());
                    text
                }
                _ => unreachable!("filtered by require_json_or_text"),
            })
        }
        Mode::Complex => {
            let c = parse_complex(&text).map_err(|e| e.to_string())?;
            let diameter = dual_diameter(&c).map_err(|e| e.to_string())?;
            let predicates = complex_predicates(&c);
            let target = target.unwrap_or(BoundTarget::Sigma);
            let report = cross_check(&CheckInstance::Complex(c.clone()), target, input)
                .map_err(|e| e.to_string())?;
            let out = ComplexOut {
                mode: "complex",
                input: input.to_string(),
                facet_size: c.facet_size(),
                labels: c.label_count(),
                facets: c.facets().len(),
                diameter,
                predicates,
                cross_check: report,
            };
            Ok(match format {
                Format::Json => to_json_line(&out),
                Format::Text => {
                    let mut text = String::new();
                    let _ = writeln!(text, "mode: complex");
                    let _ = writeln!(text, "input: {}", out.input);
                    let _ = writeln!(text, "facet size: {}", out.facet_size);
                    let _ = writeln!(text, "labels: {}", out.labels);
                    let _ = writeln!(text, "facets: {}", out.facets);
                    let _ = writeln!(text, "diameter: {}", out.diameter);
                    let _ = writeln!(text, "pure: {}", out.predicates.is_pure);
                    let _ = writeln!(
                        text,
                        "pseudomanifold without boundary: {}",
                        out.predicates.is_pseudomanifold_without_boundary
                    );
                    let _ = writeln!(text, "normal: {}", out.predicates.is_normal);
                    text.push('\n');
                    text.push_str(&out.cross_check.to_text());
                    text
                }
                _ => unreachable!("filtered by require_json_or_text"),
            })
        }
    }
}

fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut rendered =
        serde_json::to_string(value).expect("output structs serialize infallibly");
    rendered.push('\n');
    rendered
}
