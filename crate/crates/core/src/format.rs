//! Text listings of sequences.
//!
//! Both formats start with a header line `n=<dim>`. The decimal format then
//! lists the decimal value of each word in sequence order, whitespace
//! separated (written 16 to a line). The binary format has one MSB-first
//! `0`/`1` string of length `n` per line.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::{check_dim, Word};
use crate::verify::TernarySequence;

const PER_LINE: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    Decimal,
    Binary,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "decimal" => Ok(Format::Decimal),
            "binary" => Ok(Format::Binary),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

pub fn write_sequence(seq: &TernarySequence, format: Format) -> String {
    let mut out = format!("n={}\n", seq.dim());
    match format {
        Format::Decimal => {
            for chunk in seq.decimals().chunks(PER_LINE) {
                let line: Vec<String> = chunk.iter().map(u32::to_string).collect();
                out.push_str(&line.join(" "));
                out.push('\n');
            }
        }
        Format::Binary => {
            for w in seq.words() {
                let _ = writeln!(out, "{w}");
            }
        }
    }
    out
}

/// Parses a listing. With `format = None` the format is detected: binary
/// when every data line is a single `n`-character `0`/`1` string.
///
/// Values must be nonzero and fit in `n` bits, and there must be exactly
/// `2^n - 1` of them. Repeats and triple sums are not checked here.
pub fn parse_sequence(text: &str, format: Option<Format>) -> Result<(TernarySequence, Format)> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let dim = match lines.next() {
        Some((_, header)) => parse_header(header)?,
        None => return Err(Error::parse(1, "empty input: expected header n=<dim>")),
    };
    let data: Vec<(usize, &str)> = lines.filter(|(_, l)| !l.is_empty()).collect();
    let format = format.unwrap_or_else(|| detect(dim, &data));

    let max = (1u64 << dim) - 1;
    let mut values = Vec::new();
    for &(line_no, line) in &data {
        let tokens: Vec<&str> = match format {
            Format::Decimal => line.split_whitespace().collect(),
            Format::Binary => vec![line],
        };
        for tok in tokens {
            let value = match format {
                Format::Decimal => tok
                    .parse::<u64>()
                    .map_err(|_| Error::parse(line_no, format!("invalid value {tok:?}")))?,
                Format::Binary => {
                    if tok.len() != dim as usize {
                        return Err(Error::parse(
                            line_no,
                            format!("expected a {dim}-character 0/1 string, got {tok:?}"),
                        ));
                    }
                    let w: Word = tok.parse().map_err(|_| {
                        Error::parse(line_no, format!("invalid 0/1 string {tok:?}"))
                    })?;
                    w.bits().into()
                }
            };
            if value == 0 {
                return Err(Error::parse(line_no, "zero word not permitted"));
            }
            if value > max {
                return Err(Error::parse(
                    line_no,
                    format!("value {value} out of range [1, {max}]"),
                ));
            }
            values.push(value as u32);
        }
    }

    let expected = TernarySequence::expected_len(dim);
    if values.len() != expected {
        let line = data.last().map_or(1, |&(n, _)| n);
        return Err(Error::parse(
            line,
            format!("expected {expected} values, found {}", values.len()),
        ));
    }
    Ok((TernarySequence::from_decimals(dim, values)?, format))
}

fn parse_header(header: &str) -> Result<u32> {
    let bad = || Error::parse(1, format!("malformed header {header:?}: expected n=<dim>"));
    let dim: u32 = header
        .strip_prefix("n=")
        .ok_or_else(bad)?
        .trim()
        .parse()
        .map_err(|_| bad())?;
    check_dim(dim, 2).map_err(|e| Error::parse(1, e.to_string()))?;
    Ok(dim)
}

fn detect(dim: u32, data: &[(usize, &str)]) -> Format {
    let binary_line =
        |l: &str| l.len() == dim as usize && l.bytes().all(|b| b == b'0' || b == b'1');
    if !data.is_empty() && data.iter().all(|&(_, l)| binary_line(l)) {
        Format::Binary
    } else {
        Format::Decimal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn message(text: &str) -> (usize, String) {
        match parse_sequence(text, None) {
            Err(Error::Parse { line, message }) => (line, message),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn writes_both_formats() {
        let seq = TernarySequence::from_decimals(2, vec![1, 2, 3]).unwrap();
        assert_eq!(write_sequence(&seq, Format::Decimal), "n=2\n1 2 3\n");
        assert_eq!(write_sequence(&seq, Format::Binary), "n=2\n01\n10\n11\n");
    }

    #[test]
    fn detects_format() {
        let (seq, f) = parse_sequence("n=2\n01\n11\n10\n", None).unwrap();
        assert_eq!((seq.decimals(), f), (&[1, 3, 2][..], Format::Binary));
        let (seq, f) = parse_sequence("n=2\n1\n3 \n\n2", None).unwrap();
        assert_eq!((seq.decimals(), f), (&[1, 3, 2][..], Format::Decimal));
    }

    #[test]
    fn parse_errors() {
        let (line, msg) = message("dim=5\n1 2 3");
        assert_eq!(line, 1);
        assert!(msg.contains("malformed header"), "{msg}");
        assert_eq!(message("n=1\n1").0, 1);
        assert!(message("").1.contains("empty"));

        let thirty: Vec<String> = (1..=30).map(|v| v.to_string()).collect();
        let (_, msg) = message(&format!("n=5\n{}\n", thirty.join(" ")));
        assert!(msg.contains("expected 31 values"), "{msg}");

        assert_eq!(
            message("n=2\n1 2\n0\n"),
            (3, "zero word not permitted".into())
        );
        assert_eq!(
            message("n=2\n01\n00\n11\n"),
            (3, "zero word not permitted".into())
        );
        let (line, msg) = message("n=2\n1 2 4\n");
        assert_eq!(line, 2);
        assert!(msg.contains("out of range [1, 3]"), "{msg}");
        assert!(message("n=2\n1 x 3\n").1.contains("invalid value"));
        let forced = parse_sequence("n=2\n01\n1\n11\n", Some(Format::Binary));
        assert!(matches!(forced, Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn repeats_are_left_to_verify() {
        let (seq, _) = parse_sequence("n=2\n1 1 1", None).unwrap();
        assert_eq!(seq.decimals(), [1, 1, 1]);
    }

    #[test]
    fn wraps_long_listings() {
        let seq = TernarySequence::from_decimals(5, (1..=31).collect()).unwrap();
        let text = write_sequence(&seq, Format::Decimal);
        assert_eq!(text.lines().count(), 1 + 2);
        assert_eq!(parse_sequence(&text, None).unwrap().0, seq);
    }
}
