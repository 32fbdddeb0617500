//! Output formats for `list`, each with a parser that inverts it.

use std::str::FromStr;

use clap::ValueEnum;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jp::{Family, JpEnumeration};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Txt,
    Csv,
    Json,
}

#[derive(Debug, Serialize, Deserialize)]
struct ListDocument {
    family: String,
    bound: String,
    count: usize,
    values: Vec<String>,
}

pub fn render(list: &JpEnumeration, format: Format) -> String {
    match format {
        Format::Txt => list.values.iter().map(|v| format!("{v}\n")).collect(),
        Format::Csv => {
            let mut out = String::from("index,value\n");
            for (i, v) in list.values.iter().enumerate() {
                out.push_str(&format!("{},{}\n", i + 1, v));
            }
            out
        }
        Format::Json => {
            let doc = ListDocument {
                family: list.family.tag().to_string(),
                bound: list.bound.to_string(),
                count: list.count(),
                values: list.values.iter().map(|v| v.to_string()).collect(),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("plain strings serialize");
            s.push('\n');
            s
        }
    }
}

fn parse_value(s: &str, line: usize) -> Result<BigUint> {
    BigUint::from_str(s.trim()).map_err(|_| Error::Parse {
        line,
        message: format!("not a natural number: {s:?}"),
    })
}

pub fn parse_txt(text: &str) -> Result<Vec<BigUint>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_value(l, i + 1))
        .collect()
}

pub fn parse_csv(text: &str) -> Result<Vec<BigUint>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == "index,value" => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                message: "expected header \"index,value\"".into(),
            })
        }
    }
    let mut out = Vec::new();
    for (i, l) in lines.filter(|(_, l)| !l.trim().is_empty()) {
        let line = i + 1;
        let (idx, val) = l.split_once(',').ok_or_else(|| Error::Parse {
            line,
            message: "expected \"index,value\"".into(),
        })?;
        if idx.trim().parse::<usize>().ok() != Some(out.len() + 1) {
            return Err(Error::Parse {
                line,
                message: format!("expected index {}, got {idx:?}", out.len() + 1),
            });
        }
        out.push(parse_value(val, line)?);
    }
    Ok(out)
}

pub fn parse_json(text: &str) -> Result<JpEnumeration> {
    let doc: ListDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let values = doc
        .values
        .iter()
        .map(|v| parse_value(v, 0))
        .collect::<Result<Vec<_>>>()?;
    if values.len() != doc.count {
        return Err(Error::Parse {
            line: 0,
            message: format!("count {} disagrees with {} values", doc.count, values.len()),
        });
    }
    Ok(JpEnumeration {
        family: Family::from_str(&doc.family)?,
        bound: parse_value(&doc.bound, 0)?,
        values,
    })
}

/// Parses any rendered format back to its value list.
pub fn parse(text: &str, format: Format) -> Result<Vec<BigUint>> {
    match format {
        Format::Txt => parse_txt(text),
        Format::Csv => parse_csv(text),
        Format::Json => parse_json(text).map(|e| e.values),
    }
}
