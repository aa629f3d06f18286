//! Text format for harmonic factors.
//!
//! ```text
//! # comments and blank lines are ignored
//! offset 1
//! 2 0 0.2378
//! 4 -3 0.01
//! ```
//!
//! The first content line is `offset <value>`; every following content line
//! is one term `l m coeff`, separated by whitespace. Numbers are written in
//! shortest round-trip decimal form, so formatting then parsing is lossless.

use std::path::Path;

use super::factor::{HarmonicSpec, HarmonicTerm};
use super::FactorError;

pub fn parse_spec(text: &str, max_degree: usize) -> Result<HarmonicSpec, FactorError> {
    let mut offset = None;
    let mut terms = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse_err = |message: String| FactorError::Parse {
            line: line_no,
            message,
        };
        match offset {
            None => {
                if fields.len() != 2 || fields[0] != "offset" {
                    return Err(parse_err(format!(
                        "expected `offset <value>`, found `{line}`"
                    )));
                }
                let value: f64 = fields[1]
                    .parse()
                    .map_err(|e| parse_err(format!("bad offset `{}`: {e}", fields[1])))?;
                offset = Some(value);
            }
            Some(_) => {
                if fields.len() != 3 {
                    return Err(parse_err(format!("expected `l m coeff`, found `{line}`")));
                }
                let l: usize = fields[0]
                    .parse()
                    .map_err(|e| parse_err(format!("bad degree `{}`: {e}", fields[0])))?;
                let m: i64 = fields[1]
                    .parse()
                    .map_err(|e| parse_err(format!("bad order `{}`: {e}", fields[1])))?;
                let coeff: f64 = fields[2]
                    .parse()
                    .map_err(|e| parse_err(format!("bad coefficient `{}`: {e}", fields[2])))?;
                terms.push(HarmonicTerm { l, m, coeff });
            }
        }
    }
    let offset = offset.ok_or(FactorError::Parse {
        line: 0,
        message: "missing `offset` header".into(),
    })?;
    HarmonicSpec::with_max_degree(offset, terms, max_degree)
}

pub fn format_terms(offset: f64, terms: &[HarmonicTerm]) -> String {
    let mut out = format!("offset {offset}\n");
    for t in terms {
        out.push_str(&format!("{} {} {}\n", t.l, t.m, t.coeff));
    }
    out
}

pub fn format_spec(spec: &HarmonicSpec) -> String {
    format_terms(spec.offset(), spec.terms())
}

pub fn read_spec_file(path: &Path, max_degree: usize) -> Result<HarmonicSpec, FactorError> {
    let text = std::fs::read_to_string(path).map_err(|e| FactorError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_spec(&text, max_degree)
}

pub fn write_spec_file(path: &Path, spec: &HarmonicSpec) -> Result<(), FactorError> {
    std::fs::write(path, format_spec(spec)).map_err(|e| FactorError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::DEFAULT_MAX_DEGREE;
    use proptest::prelude::*;

    #[test]
    fn parses_header_and_terms() {
        let text = "# p2 example\noffset 1\n\n2 0 0.25\n4 -3 -1e-2\n";
        let spec = parse_spec(text, DEFAULT_MAX_DEGREE).unwrap();
        assert_eq!(spec.offset(), 1.0);
        assert_eq!(
            spec.terms(),
            &[
                HarmonicTerm {
                    l: 2,
                    m: 0,
                    coeff: 0.25
                },
                HarmonicTerm {
                    l: 4,
                    m: -3,
                    coeff: -0.01
                }
            ]
        );
    }

    #[test]
    fn offset_only_is_a_constant() {
        let spec = parse_spec("offset 2.5", DEFAULT_MAX_DEGREE).unwrap();
        assert!(spec.terms().is_empty());
        assert_eq!(spec.evaluate(crate::geometry::UnitVec3::Z), 2.5);
    }

    #[test]
    fn reports_line_numbers() {
        match parse_spec("offset 1\n2 0\n", DEFAULT_MAX_DEGREE) {
            Err(FactorError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        match parse_spec("2 0 0.1\n", DEFAULT_MAX_DEGREE) {
            Err(FactorError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_spec("", 16),
            Err(FactorError::Parse { line: 0, .. })
        ));
        assert!(matches!(
            parse_spec("offset 1\n3 4 0.1", 16),
            Err(FactorError::BadOrder { l: 3, m: 4 })
        ));
        assert!(matches!(
            parse_spec("offset 1\n30 0 0.1", 16),
            Err(FactorError::DegreeTooHigh { .. })
        ));
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.txt");
        let spec = parse_spec("offset 1\n2 1 0.125\n", 16).unwrap();
        write_spec_file(&path, &spec).unwrap();
        assert_eq!(read_spec_file(&path, 16).unwrap(), spec);
        assert!(matches!(
            read_spec_file(&dir.path().join("missing.txt"), 16),
            Err(FactorError::Io { .. })
        ));
    }

    proptest! {
        #[test]
        fn format_then_parse_is_lossless(
            offset in -10.0f64..10.0,
            raw in proptest::collection::vec((0usize..=16, any::<i64>(), -1.0f64..1.0), 0..12),
        ) {
            let terms: Vec<HarmonicTerm> = raw
                .into_iter()
                .map(|(l, m, coeff)| HarmonicTerm { l, m: m.rem_euclid(2 * l as i64 + 1) - l as i64, coeff })
                .collect();
            let spec = HarmonicSpec::new(offset, terms).unwrap();
            let back = parse_spec(&format_spec(&spec), DEFAULT_MAX_DEGREE).unwrap();
            prop_assert_eq!(back, spec);
        }
    }
}
