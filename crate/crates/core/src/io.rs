//! Text format for solution tables: a header `n=<N> base=<0|1>`, then `N`
//! lines of `N` cells `z,w` for `S`, optionally a blank line and a second
//! block for `beta`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{AlgebraError, SolutionTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn perr(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse { line, msg: msg.into() }
}

/// Parses one or two tables. Lines after the tables are returned untouched
/// (with their 1-based line numbers) for formats that extend this one.
pub fn parse_solution_file(text: &str) -> Result<(SolutionTable, Option<SolutionTable>), IoError> {
    let (s, beta, rest) = parse_solution_prefix(text)?;
    if let Some((line, l)) = rest.iter().find(|(_, l)| !l.trim().is_empty()) {
        return Err(perr(*line, format!("unexpected content '{l}'")));
    }
    Ok((s, beta))
}

type Prefix<'a> = (SolutionTable, Option<SolutionTable>, Vec<(usize, &'a str)>);

pub(crate) fn parse_solution_prefix(text: &str) -> Result<Prefix<'_>, IoError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim_end()))
        .collect();
    let mut idx = 0;
    while idx < lines.len() && lines[idx].1.trim().is_empty() {
        idx += 1;
    }
    let (hline, header) = *lines.get(idx).ok_or_else(|| perr(0, "empty solution file"))?;
    let (n, base) = parse_header(hline, header)?;
    idx += 1;
    let s = parse_block(&lines, &mut idx, n, base)?;
    let mut look = idx;
    while look < lines.len() && lines[look].1.trim().is_empty() {
        look += 1;
    }
    let beta = if look < lines.len() && looks_like_row(lines[look].1) {
        idx = look;
        Some(parse_block(&lines, &mut idx, n, base)?)
    } else {
        None
    };
    Ok((s, beta, lines[idx..].to_vec()))
}

fn looks_like_row(l: &str) -> bool {
    let t = l.trim();
    !t.is_empty() && t.split_whitespace().all(|c| c.contains(',') && c.split(',').all(|p| p.parse::<i64>().is_ok()))
}

fn parse_header(line: usize, header: &str) -> Result<(usize, usize), IoError> {
    let mut n = None;
    let mut base = None;
    for tok in header.split_whitespace() {
        match tok.split_once('=') {
            Some(("n", v)) => n = v.parse::<usize>().ok(),
            Some(("base", v)) => base = v.parse::<usize>().ok().filter(|b| *b <= 1),
            _ => return Err(perr(line, format!("bad header token '{tok}'"))),
        }
    }
    match (n, base) {
        (Some(n), Some(b)) if n >= 1 => Ok((n, b)),
        _ => Err(perr(line, "header must be 'n=<N> base=<0|1>'")),
    }
}

fn parse_block(lines: &[(usize, &str)], idx: &mut usize, n: usize, base: usize) -> Result<SolutionTable, IoError> {
    let mut cells = Vec::with_capacity(n * n);
    for _ in 0..n {
        let (ln, l) = *lines.get(*idx).ok_or_else(|| perr(0, format!("expected {n} table rows")))?;
        *idx += 1;
        let row: Vec<&str> = l.split_whitespace().collect();
        if row.len() != n {
            return Err(perr(ln, format!("expected {n} cells, found {}", row.len())));
        }
        for cell in row {
            let (z, w) = cell.split_once(',').ok_or_else(|| perr(ln, format!("cell '{cell}' is not 'z,w'")))?;
            let parse = |v: &str| -> Result<usize, IoError> {
                let v: usize = v.trim().parse().map_err(|_| perr(ln, format!("bad entry in '{cell}'")))?;
                if v < base || v - base >= n {
                    return Err(perr(ln, format!("entry {v} out of range in '{cell}'")));
                }
                Ok(v - base)
            };
            cells.push((parse(z)?, parse(w)?));
        }
    }
    Ok(SolutionTable::new(n, cells)?)
}

pub fn format_solution_file(s: &SolutionTable, beta: Option<&SolutionTable>, base: usize) -> String {
    let mut out = format!("n={} base={base}\n", s.n());
    write_block(&mut out, s, base);
    if let Some(b) = beta {
        out.push('\n');
        write_block(&mut out, b, base);
    }
    out
}

fn write_block(out: &mut String, t: &SolutionTable, base: usize) {
    let n = t.n();
    for x in 0..n {
        let row: Vec<String> = (0..n)
            .map(|y| {
                let (z, w) = t.apply(x, y);
                format!("{},{}", z + base, w + base)
            })
            .collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
}
