use std::fmt;

/// An element `ω·major + minor` of `ω·ω`.
///
/// The derived ordering is lexicographic with `major` first, which is the
/// ordinal order. Plain natural numbers use `major = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OrdinalValue {
    pub major: u64,
    pub minor: u64,
}

impl OrdinalValue {
    pub const fn new(major: u64, minor: u64) -> Self {
        Self { major, minor }
    }

    /// A finite ordinal.
    pub const fn finite(n: u64) -> Self {
        Self { major: 0, minor: n }
    }
}

impl fmt::Display for OrdinalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.major, self.minor)
    }
}

/// Lexicographic comparison of two ordinal values.
pub fn ordinal_compare(a: OrdinalValue, b: OrdinalValue) -> std::cmp::Ordering {
    a.cmp(&b)
}
