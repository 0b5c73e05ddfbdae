//! Text formats for functions on the cube.
//!
//! Two function formats are accepted anywhere a function is expected:
//!
//! * point table: first line `n`, then 2^n values in index order,
//!   whitespace separated;
//! * sparse spectrum: one `<subset-bitmask-hex> <coefficient>` pair per
//!   line, densified on load; `n` is inferred from the highest bit unless
//!   overridden.
//!
//! Recorded query samples use the same two-token shape (`<x-mask-hex>
//! <value>`) but are never sniffed; callers ask for them explicitly.
//! Blank lines and `#` comments are ignored everywhere.

use crate::error::{Error, Result};
use crate::hypercube::{PointTable, Spectrum};
use crate::scalar::{s, Scalar};
use std::path::Path;

/// A function read from text, in whichever domain the file described.
#[derive(Debug, Clone)]
pub enum ParsedFunction<S> {
    Points(PointTable<S>),
    Coefficients(Spectrum<S>),
}

impl<S: Scalar> ParsedFunction<S> {
    pub fn n(&self) -> usize {
        match self {
            ParsedFunction::Points(t) => t.n(),
            ParsedFunction::Coefficients(f) => f.n(),
        }
    }

    pub fn into_spectrum(self) -> Spectrum<S> {
        match self {
            ParsedFunction::Points(t) => t.analyze(),
            ParsedFunction::Coefficients(f) => f,
        }
    }

    pub fn into_table(self) -> PointTable<S> {
        match self {
            ParsedFunction::Points(t) => t,
            ParsedFunction::Coefficients(f) => f.synthesize(),
        }
    }
}

/// 1-based line numbers alongside content, with blanks and comments gone.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn parse_value(line: usize, token: &str) -> Result<f64> {
    token.parse::<f64>().map_err(|_| Error::Parse {
        line,
        message: format!("expected a number, got {token:?}"),
    })
}

fn parse_mask(line: usize, token: &str) -> Result<u64> {
    let hex = token
        .strip_prefix("0x")
        .or_else(|| token.strip_prefix("0X"))
        .unwrap_or(token);
    u64::from_str_radix(hex, 16).map_err(|_| Error::Parse {
        line,
        message: format!("expected a hex bitmask, got {token:?}"),
    })
}

/// Smallest n that can host every mask seen (at least 1).
fn inferred_n(masks: &[u64]) -> usize {
    masks
        .iter()
        .map(|&m| (64 - m.leading_zeros()) as usize)
        .max()
        .unwrap_or(0)
        .max(1)
}

fn resolve_n(inferred: usize, n_override: Option<usize>) -> Result<usize> {
    match n_override {
        None => Ok(inferred),
        Some(n) if n >= inferred => Ok(n),
        Some(n) => Err(Error::Argument(format!(
            "n override {n} is below the {inferred} variables the file mentions"
        ))),
    }
}

pub fn parse_point_table<S: Scalar>(text: &str) -> Result<PointTable<S>> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty function file".into(),
    })?;
    let n: usize = header.parse().map_err(|_| Error::Parse {
        line: header_line,
        message: format!("expected the variable count, got {header:?}"),
    })?;
    let mut values = Vec::new();
    for (line, content) in lines {
        for token in content.split_whitespace() {
            values.push(s::<S>(parse_value(line, token)?));
        }
    }
    PointTable::new(n, values)
}

pub fn parse_sparse_spectrum<S: Scalar>(
    text: &str,
    n_override: Option<usize>,
) -> Result<Spectrum<S>> {
    let mut entries: Vec<(u64, S)> = Vec::new();
    for (line, content) in content_lines(text) {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected `<mask-hex> <coefficient>`, got {content:?}"),
            });
        }
        let mask = parse_mask(line, tokens[0])?;
        let value = parse_value(line, tokens[1])?;
        entries.push((mask, s::<S>(value)));
    }
    if entries.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "no spectrum entries".into(),
        });
    }
    let masks: Vec<u64> = entries.iter().map(|&(m, _)| m).collect();
    let n = resolve_n(inferred_n(&masks), n_override)?;
    Spectrum::from_sparse(n, &entries)
}

/// Sniffs the format from the first content line: one token means a point
/// table header, two means sparse spectrum lines.
pub fn parse_function<S: Scalar>(
    text: &str,
    n_override: Option<usize>,
) -> Result<ParsedFunction<S>> {
    let (line, first) = content_lines(text).next().ok_or(Error::Parse {
        line: 1,
        message: "empty function file".into(),
    })?;
    match first.split_whitespace().count() {
        1 => Ok(ParsedFunction::Points(parse_point_table(text)?)),
        2 => Ok(ParsedFunction::Coefficients(parse_sparse_spectrum(
            text, n_override,
        )?)),
        k => Err(Error::Parse {
            line,
            message: format!("expected 1 or 2 tokens on the first line, got {k}"),
        }),
    }
}

pub fn read_function<S: Scalar>(
    path: &Path,
    n_override: Option<usize>,
) -> Result<ParsedFunction<S>> {
    parse_function(&std::fs::read_to_string(path)?, n_override)
}

/// Recorded oracle pairs, one `<x-mask-hex> <value>` per line, in draw
/// order. Returns the resolved variable count alongside the pairs.
pub fn parse_recorded_samples<S: Scalar>(
    text: &str,
    n_override: Option<usize>,
) -> Result<(usize, Vec<(u64, S)>)> {
    let mut samples: Vec<(u64, S)> = Vec::new();
    for (line, content) in content_lines(text) {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected `<x-mask-hex> <value>`, got {content:?}"),
            });
        }
        let mask = parse_mask(line, tokens[0])?;
        let value = parse_value(line, tokens[1])?;
        samples.push((mask, s::<S>(value)));
    }
    if samples.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "no recorded samples".into(),
        });
    }
    let masks: Vec<u64> = samples.iter().map(|&(m, _)| m).collect();
    let n = resolve_n(inferred_n(&masks), n_override)?;
    Ok((n, samples))
}

pub fn read_recorded_samples<S: Scalar>(
    path: &Path,
    n_override: Option<usize>,
) -> Result<(usize, Vec<(u64, S)>)> {
    parse_recorded_samples(&std::fs::read_to_string(path)?, n_override)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_tables_round_trip() {
        let text = "2\n1.0 -0.5\n0.25\n0.125\n";
        let table: PointTable<f64> = parse_point_table(text).unwrap();
        assert_eq!(table.n(), 2);
        assert_eq!(table.values(), &[1.0, -0.5, 0.25, 0.125]);
        let rendered = format!(
            "{}\n{}\n",
            table.n(),
            table
                .values()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("\n")
        );
        let back: PointTable<f64> = parse_point_table(&rendered).unwrap();
        assert_eq!(back.values(), table.values());
    }

    #[test]
    fn point_table_errors_carry_line_numbers() {
        match parse_point_table::<f64>("2\n1.0 oops\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("expected a parse error on line 2, got {other:?}"),
        }
        match parse_point_table::<f64>("x\n") {
            Err(Error::Parse { line: 1, .. }) => {}
            other => panic!("expected a parse error on line 1, got {other:?}"),
        }
        // wrong count surfaces as a length error
        assert!(parse_point_table::<f64>("2\n1.0 2.0\n").is_err());
    }

    #[test]
    fn sparse_spectra_infer_n_from_the_highest_bit() {
        let text = "3 0.5\n0x10 -1\n";
        let f: Spectrum<f64> = parse_sparse_spectrum(text, None).unwrap();
        assert_eq!(f.n(), 5);
        assert_eq!(f.coeff(0b11), 0.5);
        assert_eq!(f.coeff(0b10000), -1.0);
        let widened: Spectrum<f64> = parse_sparse_spectrum(text, Some(8)).unwrap();
        assert_eq!(widened.n(), 8);
        assert!(parse_sparse_spectrum::<f64>(text, Some(3)).is_err());
        // constant-only files still describe one variable
        let constant: Spectrum<f64> = parse_sparse_spectrum("0 0.25\n", None).unwrap();
        assert_eq!(constant.n(), 1);
    }

    #[test]
    fn sparse_duplicate_masks_accumulate() {
        let f: Spectrum<f64> = parse_sparse_spectrum("1 0.5\n1 0.25\n", None).unwrap();
        assert_eq!(f.coeff(1), 0.75);
    }

    #[test]
    fn sniffing_picks_the_right_format() {
        let table: ParsedFunction<f64> = parse_function("1\n0.5\n-0.5\n", None).unwrap();
        assert!(matches!(table, ParsedFunction::Points(_)));
        let sparse: ParsedFunction<f64> = parse_function("0x3 1.0\n", None).unwrap();
        assert!(matches!(sparse, ParsedFunction::Coefficients(_)));
        assert_eq!(sparse.n(), 2);
        assert!(parse_function::<f64>("1 2 3\n", None).is_err());
        assert!(parse_function::<f64>("# only comments\n\n", None).is_err());
    }

    #[test]
    fn parsed_functions_convert_between_domains() {
        let f: ParsedFunction<f64> = parse_function("0x1 1.0\n", None).unwrap();
        let table = f.clone().into_table();
        assert_eq!(table.values(), &[1.0, -1.0]);
        let spec = f.into_spectrum();
        assert_eq!(spec.coeff(1), 1.0);
        let p: ParsedFunction<f64> = parse_function("1\n1 -1\n", None).unwrap();
        assert_eq!(p.into_spectrum().coeff(1), 1.0);
    }

    #[test]
    fn comments_and_blanks_are_ignored() {
        let text = "# point table\n\n2\n0.1 0.2 # trailing\n0.3 0.4\n";
        let table: PointTable<f64> = parse_point_table(text).unwrap();
        assert_eq!(table.values(), &[0.1, 0.2, 0.3, 0.4]);
    }

    #[test]
    fn recorded_samples_parse_in_order() {
        let (n, samples) = parse_recorded_samples::<f64>("0 1.0\n0x3 -0.5\n1 0.25\n", None).unwrap();
        assert_eq!(n, 2);
        assert_eq!(samples, vec![(0, 1.0), (3, -0.5), (1, 0.25)]);
        let (n8, _) = parse_recorded_samples::<f64>("0 1.0\n", Some(8)).unwrap();
        assert_eq!(n8, 8);
        assert!(parse_recorded_samples::<f64>("", None).is_err());
        match parse_recorded_samples::<f64>("0 1.0\nzz 1.0\n", None) {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("expected a parse error on line 2, got {other:?}"),
        }
    }

    #[test]
    fn missing_files_surface_io_errors() {
        match read_function::<f64>(Path::new("/nonexistent/fn.txt"), None) {
            Err(Error::Io(_)) => {}
            other => panic!("expected an io error, got {other:?}"),
        }
    }
}
