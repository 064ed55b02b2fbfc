//! Polynomial string hashing and the packed path-key encoding.
//!
//! Every node of a concept path is reduced to the absolute value of a
//! 32-bit polynomial hash over its URI, and the whole path is packed into
//! one big integer so the index can keep a compact per-path key.

use num_bigint::BigUint;

/// Polynomial hash `s[0]*31^(n-1) + s[1]*31^(n-2) + ... + s[n-1]` over the
/// UTF-16 code units of `s`, accumulated with wrapping signed 32-bit
/// arithmetic. The empty string hashes to 0.
pub fn string_hash31(s: &str) -> i32 {
    let mut h: i32 = 0;
    for unit in s.encode_utf16() {
        h = h.wrapping_mul(31).wrapping_add(i32::from(unit));
    }
    h
}

/// Absolute value of [`string_hash31`] as an unsigned magnitude.
///
/// `i32::MIN` maps to 2^31, which still fits one base-2^32 digit.
pub fn abs_hash31(s: &str) -> u32 {
    string_hash31(s).unsigned_abs()
}

/// A concept path re-expressed as hash magnitudes, index-aligned with the
/// path nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HashPath(Vec<u32>);

impl HashPath {
    pub fn new(codes: Vec<u32>) -> Self {
        HashPath(codes)
    }

    pub fn codes(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A hash path packed into a single non-negative big integer.
///
/// The codes are treated as base-2^32 digits, most significant first:
/// `value = Σ codes[i] · 2^(32·(n−1−i))`. The packing is injective for
/// paths of equal length and, together with the stored path length, fully
/// invertible via [`PathKey::decode`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathKey(BigUint);

impl PathKey {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    /// Recovers the hash path, given the length of the path it encodes.
    pub fn decode(&self, len: usize) -> HashPath {
        let mut digits = self.0.to_u32_digits(); // little-endian
        digits.resize(len, 0);
        digits.reverse();
        HashPath(digits)
    }
}

impl std::fmt::Display for PathKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Packs a hash path into its big-integer key.
pub fn encode_path_key(hp: &HashPath) -> PathKey {
    let mut digits = hp.0.clone();
    digits.reverse(); // BigUint::new takes little-endian digits
    PathKey(BigUint::new(digits))
}
