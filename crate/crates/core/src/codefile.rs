//! The plain-text `.code` format.
//!
//! ```text
//! # comment
//! q k n
//! row 1: n symbols
//! ...
//! row k
//! ```
//!
//! Symbols use the integer encoding of [`crate::gf`]. Blank lines and lines
//! starting with `#` are skipped; anything else malformed is an error
//! carrying its 1-based line number.

use std::fmt::Write as _;

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf::FiniteField;
use crate::linalg::{MatrixGF, MAX_MASK_COLUMNS};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_number(tok: &str, line: usize, what: &str) -> Result<u64> {
    tok.parse::<u64>().map_err(|_| {
        parse_err(
            line,
            format!("{what}: expected a nonnegative integer, got {tok:?}"),
        )
    })
}

pub fn parse_code_file(text: &str) -> Result<LinearCode> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "missing `q k n` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(parse_err(
            header_line,
            format!("header needs 3 fields, got {}", fields.len()),
        ));
    }
    let q = parse_number(fields[0], header_line, "q")?;
    let k = parse_number(fields[1], header_line, "k")? as usize;
    let n = parse_number(fields[2], header_line, "n")? as usize;
    let field = FiniteField::with_order(q).map_err(|e| parse_err(header_line, e.to_string()))?;
    if k == 0 || n == 0 {
        return Err(parse_err(header_line, "k and n must be positive"));
    }
    if k > n {
        return Err(parse_err(header_line, format!("k = {k} exceeds n = {n}")));
    }
    if n > MAX_MASK_COLUMNS {
        return Err(parse_err(
            header_line,
            format!("n = {n} exceeds {MAX_MASK_COLUMNS}"),
        ));
    }

    let mut entries = Vec::with_capacity(k * n);
    let mut last_line = header_line;
    for row in 0..k {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| parse_err(last_line, format!("expected {k} rows, found {row}")))?;
        last_line = line_no;
        let symbols: Vec<&str> = line.split_whitespace().collect();
        if symbols.len() != n {
            return Err(parse_err(
                line_no,
                format!("row has {} symbols, expected {n}", symbols.len()),
            ));
        }
        for tok in symbols {
            let v = parse_number(tok, line_no, "symbol")?;
            if v >= q {
                return Err(parse_err(
                    line_no,
                    format!("symbol {v} is not below q = {q}"),
                ));
            }
            entries.push(v as u32);
        }
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(parse_err(
            line_no,
            format!("unexpected content after {k} rows"),
        ));
    }
    LinearCode::from_generator(MatrixGF::new(field, k, n, entries)?)
}

pub fn to_code_file(code: &LinearCode) -> String {
    let g = code.generator();
    let mut out = format!("{} {} {}\n", code.q(), code.k(), code.n());
    for r in 0..g.rows() {
        let row: Vec<String> = g.row(r).iter().map(u32::to_string).collect();
        writeln!(out, "{}", row.join(" ")).expect("writing to a String");
    }
    out
}
