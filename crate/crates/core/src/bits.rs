//! Packed bitstring helpers. Bit u of the `u64` is the measurement outcome
//! of qubit u; the text form writes qubit 0 first.

use crate::error::{Error, Result};

/// Render packed bits as a string with qubit 0 leftmost.
pub fn format_bits(bits: u64, n: usize) -> String {
    (0..n)
        .map(|u| if bits >> u & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parse the text form produced by [`format_bits`].
pub fn parse_bits(s: &str, n: usize) -> Result<u64> {
    if s.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: s.len(),
        });
    }
    let mut bits = 0u64;
    for (u, ch) in s.chars().enumerate() {
        match ch {
            '0' => {}
            '1' => bits |= 1 << u,
            other => {
                return Err(Error::InvalidParameter(format!(
                    "invalid bit character `{other}`"
                )))
            }
        }
    }
    Ok(bits)
}

/// Lexicographic order on the text form (qubit 0 first): the deterministic
/// tie-break for solution extraction.
pub fn cmp_lexicographic(a: u64, b: u64, n: usize) -> std::cmp::Ordering {
    for u in 0..n {
        let (ba, bb) = (a >> u & 1, b >> u & 1);
        if ba != bb {
            return ba.cmp(&bb);
        }
    }
    std::cmp::Ordering::Equal
}
