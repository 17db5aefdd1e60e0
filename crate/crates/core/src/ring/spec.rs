//! Ring-spec grammar:
//!
//! ```text
//! spec := "Z" | "Q" | "Zmod:" n | "Mat:" k ":" spec | "UT:" k ":" spec | "Table:" path
//! ```
//!
//! `Table:@ut2:<spec>` names the built-in three-dimensional algebra over a
//! scalar ring instead of a JSON file.

use std::path::Path;
use std::str::FromStr;

use super::table::{TableAlgebra, UPPER2_PREFIX};
use super::Ring;
use crate::error::{Error, Result};

impl Ring {
    pub fn parse_spec(text: &str) -> Result<Ring> {
        parse_at(text, 0)
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ring::parse_spec(s)
    }
}

fn parse_at(text: &str, offset: usize) -> Result<Ring> {
    if text == "Z" {
        return Ok(Ring::int());
    }
    if text == "Q" {
        return Ok(Ring::rat());
    }
    if let Some(rest) = text.strip_prefix("Zmod:") {
        let pos = offset + 5;
        let n: u64 = parse_number(rest, pos)?;
        return Ring::residue(n).map_err(|e| Error::parse(pos, e.to_string()));
    }
    for (prefix, upper) in [("Mat:", false), ("UT:", true)] {
        if let Some(rest) = text.strip_prefix(prefix) {
            let pos = offset + prefix.len();
            let (k_text, base_text) = rest
                .split_once(':')
                .ok_or_else(|| Error::parse(pos, format!("expected `{prefix}<k>:<base>`")))?;
            let k: usize = parse_number(k_text, pos)?;
            let base = parse_at(base_text, pos + k_text.len() + 1)?;
            let ring = if upper {
                Ring::upper_triangular(k, base)
            } else {
                Ring::matrix(k, base)
            };
            return ring.map_err(|e| Error::parse(pos, e.to_string()));
        }
    }
    if let Some(rest) = text.strip_prefix("Table:") {
        let pos = offset + 6;
        if rest.is_empty() {
            return Err(Error::parse(pos, "missing table path"));
        }
        if let Some(base_text) = rest.strip_prefix(UPPER2_PREFIX) {
            let base = parse_at(base_text, pos + UPPER2_PREFIX.len())?;
            return TableAlgebra::upper2(base).map(Ring::table).map_err(|e| Error::parse(pos, e.to_string()));
        }
        let algebra = TableAlgebra::from_path(Path::new(rest)).map_err(|e| Error::parse(pos, e.to_string()))?;
        return Ok(Ring::table(algebra));
    }
    Err(Error::parse(
        offset,
        format!("unknown ring `{text}` (expected Z, Q, Zmod:<n>, Mat:<k>:<base>, UT:<k>:<base> or Table:<path>)"),
    ))
}

fn parse_number<T: FromStr>(text: &str, pos: usize) -> Result<T> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(pos, format!("expected a positive integer, found `{text}`")));
    }
    text.parse().map_err(|_| Error::parse(pos, format!("integer out of range: `{text}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_display() {
        for s in ["Z", "Q", "Zmod:6", "Mat:3:Z", "UT:2:Zmod:5", "Mat:2:Mat:2:Zmod:2", "Table:@ut2:Zmod:3"] {
            let ring = Ring::parse_spec(s).unwrap();
            assert_eq!(ring.to_string(), s);
        }
    }

    #[test]
    fn errors_carry_positions() {
        match Ring::parse_spec("Mat:2:Zmod:x") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 11),
            other => panic!("unexpected {other:?}"),
        }
        match Ring::parse_spec("Zmod:1") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(Ring::parse_spec("z"), Err(Error::Parse { pos: 0, .. })));
        assert!(Ring::parse_spec("Mat:0:Z").is_err());
        assert!(Ring::parse_spec("Table:/definitely/not/here.json").is_err());
    }

    #[test]
    fn loads_table_from_file() {
        let dir = std::env::temp_dir().join(format!("ncsplit-table-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("ut2.json");
        let t = TableAlgebra::upper2(Ring::residue(5).unwrap()).unwrap();
        std::fs::write(&path, serde_json::to_string(t.descriptor()).unwrap()).unwrap();
        let ring = Ring::parse_spec(&format!("Table:{}", path.display())).unwrap();
        assert_eq!(ring.size(), Some(125));
        std::fs::remove_dir_all(&dir).ok();
    }
}
