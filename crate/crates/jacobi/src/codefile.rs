//! Text formats for codes and polynomials.
//!
//! A code file holds `n k` on the first line followed by `k` generator rows of
//! `n` binary digits. Whitespace anywhere after the header is ignored, so rows
//! may be split or spaced freely.

use std::fs;
use std::path::Path;

use jacobi_core::gf2::{builtin, BinaryCode, GfVector};
use jacobi_core::mpoly::MPoly;
use jacobi_core::tables::NamedCode;
use jacobi_core::xform::GenusContext;

use crate::{CliError, Result};

pub fn parse_code(text: &str) -> Result<BinaryCode> {
    let mut tokens = text.split_whitespace();
    let mut header = |what: &str| -> Result<usize> {
        tokens
            .next()
            .ok_or_else(|| CliError::Usage(format!("code file: missing {what}")))?
            .parse()
            .map_err(|_| CliError::Usage(format!("code file: {what} is not a number")))
    };
    let n = header("length")?;
    let k = header("row count")?;
    let digits: String = tokens.collect();
    if let Some(bad) = digits.chars().find(|c| *c != '0' && *c != '1') {
        return Err(CliError::Usage(format!("code file: unexpected character {bad:?}")));
    }
    if digits.len() != n * k {
        return Err(CliError::Usage(format!(
            "code file: expected {k} rows of {n} digits, found {} digits",
            digits.len()
        )));
    }
    let rows = (0..k)
        .map(|r| digits[r * n..(r + 1) * n].parse::<GfVector>())
        .collect::<jacobi_core::Result<Vec<_>>>()?;
    Ok(BinaryCode::new(n, rows)?)
}

pub fn write_code(code: &BinaryCode) -> String {
    let mut out = format!("{} {}\n", code.len(), code.dim());
    for row in code.basis() {
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// A code file if `arg` names an existing file, otherwise a built-in code.
pub fn resolve_code(arg: &str) -> Result<NamedCode> {
    let path = Path::new(arg);
    if path.is_file() {
        let name = path.file_stem().map_or(arg.to_string(), |s| s.to_string_lossy().into_owned());
        return Ok(NamedCode::new(&name, parse_code(&read(path)?)?));
    }
    Ok(NamedCode::new(arg, builtin(arg)?))
}

/// Reads a polynomial in canonical text or JSON form, rejecting variables outside `ctx`.
pub fn read_poly(path: &Path, ctx: Option<&GenusContext>) -> Result<MPoly> {
    let text = read(path)?;
    let p: MPoly = if text.trim_start().starts_with('[') {
        serde_json::from_str(&text)?
    } else {
        text.trim().parse()?
    };
    if let Some(ctx) = ctx {
        ctx.check(&p)?;
    }
    Ok(p)
}

/// Parses `"1,2,3"` (empty for the empty set).
pub fn parse_set(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Usage(format!("bad coordinate {t:?}"))))
        .collect()
}

/// Parses `"1-4;5,6,8"`: blocks separated by `;`, each a list of coordinates or ranges.
pub fn parse_blocks(s: &str) -> Result<Vec<Vec<usize>>> {
    s.split(';')
        .map(|block| {
            let mut out = Vec::new();
            for part in block.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                match part.split_once('-') {
                    Some((a, b)) => {
                        let bad = || CliError::Usage(format!("bad range {part:?}"));
                        let a: usize = a.trim().parse().map_err(|_| bad())?;
                        let b: usize = b.trim().parse().map_err(|_| bad())?;
                        if a > b {
                            return Err(bad());
                        }
                        out.extend(a..=b);
                    }
                    None => out.push(part.parse().map_err(|_| CliError::Usage(format!("bad coordinate {part:?}")))?),
                }
            }
            Ok(out)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_round_trip() {
        let c = builtin("d8+").unwrap();
        assert_eq!(parse_code(&write_code(&c)).unwrap(), c);
        let spaced = "4 2\n1 1 0 0\n0 0\n1 1\n";
        assert_eq!(parse_code(spaced).unwrap().dim(), 2);
    }

    #[test]
    fn code_errors() {
        assert!(parse_code("4 2\n1100\n").is_err());
        assert!(parse_code("4 1\n1120\n").is_err());
        assert!(parse_code("x").is_err());
    }

    #[test]
    fn sets_and_blocks() {
        assert_eq!(parse_set("").unwrap(), Vec::<usize>::new());
        assert_eq!(parse_set("1, 3,5").unwrap(), vec![1, 3, 5]);
        assert_eq!(parse_blocks("1-4;5-8").unwrap(), vec![vec![1, 2, 3, 4], vec![5, 6, 7, 8]]);
        assert_eq!(parse_blocks("1;").unwrap(), vec![vec![1], vec![]]);
        assert!(parse_blocks("4-1").is_err());
    }
}
