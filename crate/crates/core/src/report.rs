//! Text forms for report documents.

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

/// Decimal strings longer than this are elided.
pub const ELIDE_DIGITS: usize = 80;
const KEEP: usize = 20;

/// Full decimal text up to [`ELIDE_DIGITS`] digits; beyond that the first and
/// last digits, the digit count, and the SHA-256 of the full decimal text.
///
/// ```
/// use dynint_core::report::elide_integer;
/// use num_bigint::BigInt;
/// assert_eq!(elide_integer(&BigInt::from(-12345)), "-12345");
/// let big = BigInt::from(10).pow(100);
/// assert!(elide_integer(&big).starts_with("10000000000000000000...00000000000000000000 (101 digits, sha256:"));
/// ```
pub fn elide_integer(n: &BigInt) -> String {
    let text = n.to_string();
    let (sign, digits) = match text.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", text.as_str()),
    };
    if digits.len() <= ELIDE_DIGITS {
        return text;
    }
    let hash = hex::encode(Sha256::digest(text.as_bytes()));
    format!(
        "{sign}{}...{} ({} digits, sha256:{hash})",
        &digits[..KEEP],
        &digits[digits.len() - KEEP..],
        digits.len()
    )
}
