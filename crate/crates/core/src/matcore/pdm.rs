//! The `pdm1` plain-text matrix format.
//!
//! ```text
//! # optional comments
//! pdm1 2 real
//! 2.0 0.5
//! 0.5 1.0
//! ```
//!
//! Complex payloads carry `2n` numbers per row as interleaved `re im` pairs.

use std::fmt::Write as _;

use num_complex::Complex64;

use super::hermitian::{CMat, HermitianMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PdmMode {
    Real,
    Complex,
}

fn format_err(line: usize, message: impl Into<String>) -> Error {
    Error::PdmFormat {
        line,
        message: message.into(),
    }
}

/// Reads any square matrix, without the Hermitian check.
pub fn read_pdm_general(text: &str) -> Result<CMat> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| format_err(1, "missing header"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 || parts[0] != "pdm1" {
        return Err(format_err(hline, "header must be `pdm1 <n> <real|complex>`"));
    }
    let n: usize = parts[1]
        .parse()
        .map_err(|_| format_err(hline, format!("invalid dimension `{}`", parts[1])))?;
    if n == 0 {
        return Err(format_err(hline, "dimension must be positive"));
    }
    let mode = match parts[2] {
        "real" => PdmMode::Real,
        "complex" => PdmMode::Complex,
        other => return Err(format_err(hline, format!("unknown mode `{other}`"))),
    };
    let width = match mode {
        PdmMode::Real => n,
        PdmMode::Complex => 2 * n,
    };

    let mut m = CMat::zeros(n, n);
    let mut last_line = hline;
    for row in 0..n {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| format_err(last_line + 1, format!("expected {n} rows, found {row}")))?;
        last_line = ln;
        let values = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| format_err(ln, format!("invalid number `{tok}`")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if values.len() != width {
            return Err(format_err(
                ln,
                format!("expected {width} values, found {}", values.len()),
            ));
        }
        for col in 0..n {
            m[(row, col)] = match mode {
                PdmMode::Real => Complex64::new(values[col], 0.0),
                PdmMode::Complex => Complex64::new(values[2 * col], values[2 * col + 1]),
            };
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(format_err(ln, "unexpected trailing data"));
    }
    Ok(m)
}

/// Reads a Hermitian matrix; payloads outside the Hermitian tolerance are
/// rejected.
pub fn read_pdm(text: &str) -> Result<HermitianMatrix> {
    HermitianMatrix::new(read_pdm_general(text)?)
}

/// Writes with 17 significant digits.
pub fn write_pdm(m: &CMat, mode: PdmMode) -> String {
    let n = m.nrows();
    let mut out = String::new();
    let tag = match mode {
        PdmMode::Real => "real",
        PdmMode::Complex => "complex",
    };
    writeln!(out, "pdm1 {n} {tag}").unwrap();
    for r in 0..n {
        let mut fields = Vec::with_capacity(2 * n);
        for c in 0..m.ncols() {
            let z = m[(r, c)];
            fields.push(format!("{:.16e}", z.re));
            if mode == PdmMode::Complex {
                fields.push(format!("{:.16e}", z.im));
            }
        }
        writeln!(out, "{}", fields.join(" ")).unwrap();
    }
    out
}

/// Real mode when every imaginary part is zero, complex otherwise.
pub fn write_pdm_auto(m: &CMat) -> String {
    let mode = if m.iter().all(|z| z.im == 0.0) {
        PdmMode::Real
    } else {
        PdmMode::Complex
    };
    write_pdm(m, mode)
}
