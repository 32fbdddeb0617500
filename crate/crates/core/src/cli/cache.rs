//! On-disk enumeration cache: three header lines, then one value per line.
//!
//! ```text
//! # jordan-polya cache v1
//! # family=j
//! # bound=10000
//! 1
//! 2
//! ...
//! ```

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::jp::{enumerate_family, EnumerationLimits, Family, JpEnumeration};

pub const CACHE_MAGIC: &str = "# jordan-polya cache v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    /// No usable file; the enumeration was computed and written.
    Written,
}

pub fn cache_path(dir: &Path, family: Family) -> PathBuf {
    dir.join(format!("jordan-polya-{}.cache", family.tag()))
}

pub fn render_cache(list: &JpEnumeration) -> String {
    let mut out = format!("{CACHE_MAGIC}\n# family={}\n# bound={}\n", list.family, list.bound);
    for v in &list.values {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}

fn header<'a>(line: Option<&'a str>, key: &str, n: usize) -> Result<&'a str> {
    line.and_then(|l| l.strip_prefix(&format!("# {key}=")))
        .ok_or_else(|| Error::Parse {
            line: n,
            message: format!("expected \"# {key}=...\""),
        })
}

pub fn parse_cache(text: &str) -> Result<JpEnumeration> {
    let mut lines = text.lines();
    if lines.next() != Some(CACHE_MAGIC) {
        return Err(Error::Parse {
            line: 1,
            message: "unrecognized cache header or version".into(),
        });
    }
    let family = Family::from_str(header(lines.next(), "family", 2)?)?;
    let bound = BigUint::from_str(header(lines.next(), "bound", 3)?).map_err(|_| Error::Parse {
        line: 3,
        message: "bad bound".into(),
    })?;
    let mut values: Vec<BigUint> = Vec::new();
    for (i, l) in lines.enumerate() {
        let line = i + 4;
        let v = BigUint::from_str(l.trim()).map_err(|_| Error::Parse {
            line,
            message: format!("not a natural number: {l:?}"),
        })?;
        if values.last().is_some_and(|last| last >= &v) {
            return Err(Error::Parse {
                line,
                message: "values not strictly increasing".into(),
            });
        }
        values.push(v);
    }
    if values.last().is_some_and(|v| v > &bound) {
        return Err(Error::Parse {
            line: values.len() + 3,
            message: "value above the header bound".into(),
        });
    }
    Ok(JpEnumeration { bound, family, values })
}

pub fn write_cache(path: &Path, list: &JpEnumeration) -> Result<()> {
    fs::write(path, render_cache(list))?;
    Ok(())
}

pub fn read_cache(path: &Path) -> Result<JpEnumeration> {
    parse_cache(&fs::read_to_string(path)?)
}

/// Uses the cached list when its family and bound match exactly; otherwise
/// recomputes and overwrites the file.
pub fn load_or_build(
    dir: &Path,
    bound: &BigUint,
    family: Family,
    limits: EnumerationLimits,
) -> Result<(JpEnumeration, CacheStatus)> {
    let path = cache_path(dir, family);
    if let Ok(list) = read_cache(&path) {
        if list.family == family && &list.bound == bound {
            return Ok((list, CacheStatus::Hit));
        }
    }
    let list = enumerate_family(bound, family, limits)?;
    fs::create_dir_all(dir)?;
    write_cache(&path, &list)?;
    Ok((list, CacheStatus::Written))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_files() {
        assert!(parse_cache("").is_err());
        assert!(parse_cache("# jordan-polya cache v2\n# family=j\n# bound=5\n").is_err());
        assert!(parse_cache(&format!("{CACHE_MAGIC}\n# family=q\n# bound=5\n")).is_err());
        assert!(parse_cache(&format!("{CACHE_MAGIC}\n# family=j\n# bound=5\n1\n2\n2\n")).is_err());
        assert!(parse_cache(&format!("{CACHE_MAGIC}\n# family=j\n# bound=5\n1\n6\n")).is_err());
        let ok = parse_cache(&format!("{CACHE_MAGIC}\n# family=jp\n# bound=5\n1\n2\n4\n")).unwrap();
        assert_eq!(ok.family, Family::JPrime);
        assert_eq!(ok.count(), 3);
    }
}
