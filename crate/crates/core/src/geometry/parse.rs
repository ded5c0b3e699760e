//! Text formats for geometry instances.
//!
//! H-representation: first significant line `d m`, then `m` lines of `d+1`
//! space-separated rationals `a1 .. ad b`, one halfspace `a·x <= b` each.
//! Complex: first significant line `d n`, then one facet per line as `d`
//! vertex labels below `n`. Both formats allow `#` comments (to end of
//! line) and arbitrary whitespace; blank lines are skipped. Rationals are
//! integers or `p/q`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exact::Rat;

use super::complex::PureComplex;
use super::polytope::{HPolytope, Halfspace};
use super::GeometryError;

fn parse_error(line: usize, message: impl Into<String>) -> GeometryError {
    GeometryError::Parse { line, message: message.into() }
}

/// Significant lines (comment-stripped, non-blank) with 1-based numbers.
fn significant_lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let tokens: Vec<&str> =
                raw.split('#').next().unwrap_or("").split_whitespace().collect();
            if tokens.is_empty() {
                None
            } else {
                Some((i + 1, tokens))
            }
        })
        .collect()
}

fn parse_usize(token: &str, line: usize, what: &str) -> Result<usize, GeometryError> {
    token.parse().map_err(|_| parse_error(line, format!("cannot read {what} from `{token}`")))
}

fn parse_rational(token: &str, line: usize) -> Result<Rat, GeometryError> {
    let bad = || parse_error(line, format!("cannot read a rational from `{token}`"));
    match token.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p).map_err(|_| bad())?;
            let q = BigInt::from_str(q).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(parse_error(line, format!("zero denominator in `{token}`")));
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(BigInt::from_str(token).map_err(|_| bad())?)),
    }
}

/// Parses the H-representation format.
pub fn parse_hpolytope(text: &str) -> Result<HPolytope, GeometryError> {
    let lines = significant_lines(text);
    let Some((header_line, header)) = lines.first() else {
        return Err(parse_error(1, "missing header line `d m`"));
    };
    if header.len() != 2 {
        return Err(parse_error(*header_line, "header must be exactly `d m`"));
    }
    let d = parse_usize(header[0], *header_line, "the dimension d")?;
    let m = parse_usize(header[1], *header_line, "the halfspace count m")?;
    let body = &lines[1..];
    if body.len() != m {
        let at = body.last().map_or(*header_line, |(line, _)| *line);
        return Err(parse_error(
            at,
            format!("expected {m} halfspace lines after the header, found {}", body.len()),
        ));
    }
    let mut halfspaces = Vec::with_capacity(m);
    for (line, tokens) in body {
        if tokens.len() != d + 1 {
            return Err(parse_error(
                *line,
                format!("expected {} rationals (a1 .. ad b), found {}", d + 1, tokens.len()),
            ));
        }
        let mut values = Vec::with_capacity(d + 1);
        for token in tokens {
            values.push(parse_rational(token, *line)?);
        }
        let offset = values.pop().expect("d+1 >= 1 values parsed");
        halfspaces.push(Halfspace { normal: values, offset });
    }
    HPolytope::new(d, halfspaces)
}

/// Parses the pure-complex format.
pub fn parse_complex(text: &str) -> Result<PureComplex, GeometryError> {
    let lines = significant_lines(text);
    let Some((header_line, header)) = lines.first() else {
        return Err(parse_error(1, "missing header line `d n`"));
    };
    if header.len() != 2 {
        return Err(parse_error(*header_line, "header must be exactly `d n`"));
    }
    let d = parse_usize(header[0], *header_line, "the facet size d")?;
    let n = parse_usize(header[1], *header_line, "the label count n")?;
    let mut facets = Vec::new();
    for (line, tokens) in &lines[1..] {
        if tokens.len() != d {
            return Err(parse_error(
                *line,
                format!("expected {d} vertex labels, found {}", tokens.len()),
            ));
        }
        let mut facet = Vec::with_capacity(d);
        for token in tokens {
            facet.push(parse_usize(token, *line, "a vertex label")?);
        }
        facets.push(facet);
    }
    PureComplex::new(d, n, facets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::complex::dual_diameter;
    use crate::geometry::polytope::polytope_diameter;

    const CUBE3: &str = "\
# the unit 3-cube, 0 <= x_i <= 1
3 6
 1 0 0  1
-1 0 0  0
0  1 0  1   # top
0 -1 0  0
0 0  1  1
0 0 -1  0
";

    #[test]
    fn hrep_round_trip() {
        let p = parse_hpolytope(CUBE3).unwrap();
        assert_eq!(p.dimension(), 3);
        assert_eq!(p.halfspace_count(), 6);
        assert_eq!(polytope_diameter(&p).unwrap(), 3);
    }

    #[test]
    fn hrep_accepts_fractions() {
        let p = parse_hpolytope("1 2\n 2/3 1/2 \n -1 0\n").unwrap();
        // 2x/3 <= 1/2 and x >= 0: the interval [0, 3/4].
        assert_eq!(polytope_diameter(&p).unwrap(), 1);
    }

    #[test]
    fn hrep_errors_carry_line_numbers() {
        let err = parse_hpolytope("3 6\n1 0 0 1\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = parse_hpolytope("1 1\n1 x\n").unwrap_err();
        assert!(err.to_string().contains("line 2") && err.to_string().contains("`x`"), "{err}");
        let err = parse_hpolytope("1 1\n1 1/0\n").unwrap_err();
        assert!(err.to_string().contains("zero denominator"), "{err}");
        let err = parse_hpolytope("# only comments\n").unwrap_err();
        assert!(err.to_string().contains("header"), "{err}");
    }

    #[test]
    fn complex_round_trip() {
        let text = "2 5  # the 5-cycle\n0 1\n1 2\n2 3\n3 4\n4 0\n";
        let c = parse_complex(text).unwrap();
        assert_eq!(c.facet_size(), 2);
        assert_eq!(c.label_count(), 5);
        assert_eq!(dual_diameter(&c).unwrap(), 2);
    }

    #[test]
    fn complex_errors_carry_line_numbers() {
        let err = parse_complex("2 3\n0 1 2\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = parse_complex("2 3\n0 9\n1 2\n2 0\n").unwrap_err();
        // Label out of range is caught by construction, with the facet index.
        assert!(err.to_string().contains("label 9"), "{err}");
    }
}
