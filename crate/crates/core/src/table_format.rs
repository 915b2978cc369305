//! Truth-table files.
//!
//! Text form: a line `n=<k>`, then one line of `2^k` characters from
//! `{0,1}` in `enc` order (entry `x` at column `x`, `x_1` least
//! significant), newline-terminated.
//!
//! Binary form (`.ttb`): one byte holding `k`, then `ceil(2^k / 8)` bytes
//! with entry `x` at bit `x % 8` of byte `x / 8`. Unused high bits of the
//! last byte must be zero.

use thiserror::Error;

use crate::boolfn::{BoolFnError, TruthTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableFormatError {
    #[error("missing header line `n=<k>`")]
    MissingHeader,
    #[error("malformed header `{0}`")]
    Header(String),
    #[error("missing table line")]
    MissingBits,
    #[error("invalid character '{ch}' at table position {position}")]
    Character { ch: char, position: usize },
    #[error("unexpected content after the table line")]
    TrailingContent,
    #[error("binary table has {got} bytes, expected {expected}")]
    BinaryLength { expected: usize, got: usize },
    #[error("binary table has non-zero padding bits")]
    Padding,
    #[error(transparent)]
    Function(#[from] BoolFnError),
}

pub fn to_text(table: &TruthTable) -> String {
    let mut out = format!("n={}\n", table.n());
    out.extend(table.bits().map(|b| if b { '1' } else { '0' }));
    out.push('\n');
    out
}

pub fn parse_text(text: &str) -> Result<TruthTable, TableFormatError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(TableFormatError::MissingHeader)?.trim();
    let n: usize = header
        .strip_prefix("n=")
        .and_then(|k| k.trim().parse().ok())
        .ok_or_else(|| TableFormatError::Header(header.to_string()))?;
    crate::boolfn::check_arity(n)?;
    let row = lines.next().ok_or(TableFormatError::MissingBits)?.trim_end();
    let bits = row
        .chars()
        .enumerate()
        .map(|(position, ch)| match ch {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(TableFormatError::Character { ch, position }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(TableFormatError::TrailingContent);
    }
    Ok(TruthTable::from_bits(n, &bits)?)
}

pub fn to_binary(table: &TruthTable) -> Vec<u8> {
    let len = table.len().div_ceil(8);
    let mut out = Vec::with_capacity(1 + len);
    out.push(table.n() as u8);
    out.extend(table.words().iter().flat_map(|w| w.to_le_bytes()).take(len));
    out
}

pub fn parse_binary(bytes: &[u8]) -> Result<TruthTable, TableFormatError> {
    let (&n, body) = bytes.split_first().ok_or(TableFormatError::MissingHeader)?;
    let n = n as usize;
    crate::boolfn::check_arity(n)?;
    let expected = (1usize << n).div_ceil(8);
    if body.len() != expected {
        return Err(TableFormatError::BinaryLength { expected: 1 + expected, got: bytes.len() });
    }
    if n < 3 && body[0] >> (1 << n) != 0 {
        return Err(TableFormatError::Padding);
    }
    let words = body
        .chunks(8)
        .map(|chunk| {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            u64::from_le_bytes(buf)
        })
        .collect();
    Ok(TruthTable::from_words(n, words)?)
}
