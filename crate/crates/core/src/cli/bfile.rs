//! OEIS b-files: `index value` per line, `#` comments.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub first_index: i64,
    pub values: Vec<BigUint>,
}

pub fn parse_bfile(text: &str) -> Result<BFile> {
    let mut first_index = None;
    let mut values: Vec<BigUint> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let bad = |message: String| Error::Parse { line, message };
        let mut parts = l.split_whitespace();
        let (Some(idx), Some(val), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad(format!("expected \"index value\", got {l:?}")));
        };
        let idx: i64 = idx.parse().map_err(|_| bad(format!("bad index {idx:?}")))?;
        let val = BigUint::from_str(val).map_err(|_| bad(format!("bad value {val:?}")))?;
        let expected = *first_index.get_or_insert(idx) + values.len() as i64;
        if idx != expected {
            return Err(bad(format!("expected index {expected}, got {idx}")));
        }
        if values.last().is_some_and(|last| last >= &val) {
            return Err(bad("values not strictly increasing".into()));
        }
        values.push(val);
    }
    Ok(BFile {
        first_index: first_index.unwrap_or(1),
        values,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OeisOutcome {
    NoTerms,
    Agree { terms: usize },
    Mismatch {
        index: i64,
        expected: Option<BigUint>,
        computed: Option<BigUint>,
    },
}

impl OeisOutcome {
    pub fn agrees(&self) -> bool {
        !matches!(self, OeisOutcome::Mismatch { .. })
    }
}

impl fmt::Display for OeisOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &Option<BigUint>| v.as_ref().map_or("(none)".to_string(), |v| v.to_string());
        match self {
            OeisOutcome::NoTerms => f.write_str("no terms to compare"),
            OeisOutcome::Agree { terms } => write!(f, "agree on all {terms} terms"),
            OeisOutcome::Mismatch { index, expected, computed } => write!(
                f,
                "first mismatch at index {index}: b-file {}, computed {}",
                show(expected),
                show(computed)
            ),
        }
    }
}

/// Compares `computed` (every member ≤ `limit`, sorted) with the b-file
/// terms ≤ `limit`. A b-file that stops short of `limit` is compared on
/// the terms it has.
pub fn compare(bfile: &BFile, computed: &[BigUint], limit: &BigUint) -> OeisOutcome {
    let within = bfile.values.partition_point(|v| v <= limit);
    if within == 0 {
        return OeisOutcome::NoTerms;
    }
    let truncated = within == bfile.values.len();
    let span = if truncated { within } else { within.max(computed.len()) };
    for i in 0..span {
        let e = bfile.values[..within].get(i);
        let c = computed.get(i);
        if e != c {
            return OeisOutcome::Mismatch {
                index: bfile.first_index + i as i64,
                expected: e.cloned(),
                computed: c.cloned(),
            };
        }
    }
    OeisOutcome::Agree { terms: within }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nums(v: &[u32]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn parses_with_comments() {
        let b = parse_bfile("# A001013\n\n1 1\n2 2\n3 4\n").unwrap();
        assert_eq!(b.first_index, 1);
        assert_eq!(b.values, nums(&[1, 2, 4]));
    }

    #[test]
    fn parse_errors_carry_lines() {
        for (text, line) in [
            ("1 1\n2 x\n", 2),
            ("1 1\n3 2\n", 2),
            ("# c\n1 2\n2 1\n", 3),
            ("1 1 1\n", 1),
            ("1\n", 1),
        ] {
            match parse_bfile(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn comparisons() {
        let limit = BigUint::from(10u32);
        let computed = nums(&[1, 2, 4, 6, 8]);
        let empty = parse_bfile("# nothing\n").unwrap();
        assert_eq!(compare(&empty, &computed, &limit), OeisOutcome::NoTerms);
        let full = parse_bfile("1 1\n2 2\n3 4\n4 6\n5 8\n6 12\n").unwrap();
        assert_eq!(compare(&full, &computed, &limit), OeisOutcome::Agree { terms: 5 });
        let short = parse_bfile("1 1\n2 2\n").unwrap();
        assert_eq!(compare(&short, &computed, &limit), OeisOutcome::Agree { terms: 2 });
        let wrong = parse_bfile("1 1\n2 3\n3 4\n4 12\n").unwrap();
        assert!(matches!(compare(&wrong, &computed, &limit), OeisOutcome::Mismatch { index: 2, .. }));
        let missing = parse_bfile("1 1\n2 2\n3 4\n4 6\n5 12\n").unwrap();
        match compare(&missing, &computed, &limit) {
            OeisOutcome::Mismatch { index, expected, computed } => {
                assert_eq!(index, 5);
                assert_eq!(expected, None);
                assert_eq!(computed, Some(BigUint::from(8u32)));
            }
            other => panic!("{other:?}"),
        }
    }
}
