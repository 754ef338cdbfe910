//! Plain-text code files: a header line `n k`, then `k` generator rows in
//! hex, coordinate 1 as the most significant bit of the first digit. Blank
//! lines and `#` comments are ignored.

use std::fmt::Write as _;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Renders `code` (its reduced generator) as a code file.
pub fn write_code(code: &LinearCode) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", code.n(), code.k()).expect("writing to a String");
    for r in code.rows() {
        writeln!(out, "{}", r.to_hex()).expect("writing to a String");
    }
    out
}

/// Parses a code file; errors carry 1-based line numbers.
pub fn read_code(text: &str) -> Result<LinearCode> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "empty code file"))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::parse(hline, format!("bad number `{t}`"))))
        .collect::<Result<_>>()?;
    let [n, k] = nums[..] else {
        return Err(Error::parse(hline, "header must be `n k`"));
    };
    let mut rows = Vec::with_capacity(k);
    let mut last = hline;
    for (line, text) in lines {
        last = line;
        let v = BitVector::from_hex(n, text).map_err(|e| Error::parse(line, e.to_string()))?;
        rows.push(v);
    }
    if rows.len() != k {
        return Err(Error::parse(last, format!("expected {k} rows, found {}", rows.len())));
    }
    let code = LinearCode::from_rows(n, rows).map_err(|e| Error::parse(hline, e.to_string()))?;
    if code.k() != k {
        return Err(Error::parse(hline, format!("rows span dimension {}, not {k}", code.k())));
    }
    Ok(code)
}
