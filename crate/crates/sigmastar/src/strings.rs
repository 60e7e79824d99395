//! The standard model of binary strings: non-empty words over the two-letter
//! alphabet `{a, b}` with concatenation, the prefix/suffix/substring
//! relations, the string successor, the R-ordering, and tally arithmetic.
//!
//! The empty string is not an element of the model; every constructor
//! enforces that.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use thiserror::Error;

/// The two digits of the alphabet.
pub const DIGIT_A: u8 = b'a';
/// See [`DIGIT_A`].
pub const DIGIT_B: u8 = b'b';

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StringError {
    #[error("empty input: the model contains no empty string")]
    Empty,
    #[error("invalid digit {0:?}: expected 'a' or 'b'")]
    BadDigit(char),
    #[error("not a b-tally: {0}")]
    NotATally(String),
}

/// A non-empty finite string over `{a, b}`.
///
/// Ordering is by length first, then lexicographic with `a < b`. That order
/// is used everywhere a canonical enumeration or a deterministic export is
/// required.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinString(Vec<u8>);

impl BinString {
    /// The one-digit string `a`.
    pub fn a() -> Self {
        BinString(vec![DIGIT_A])
    }

    /// The one-digit string `b`.
    pub fn b() -> Self {
        BinString(vec![DIGIT_B])
    }

    /// Builds a string from raw digit bytes. Internal: callers must pass
    /// non-empty slices of `b'a'`/`b'b'` only.
    pub(crate) fn from_bytes(bytes: Vec<u8>) -> Self {
        debug_assert!(!bytes.is_empty());
        debug_assert!(bytes.iter().all(|&d| d == DIGIT_A || d == DIGIT_B));
        BinString(bytes)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Strings are never empty, so this is always false; provided because
    /// clippy expects it next to `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    /// Concatenation `x * y`.
    pub fn concat(&self, other: &BinString) -> BinString {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        BinString(v)
    }

    /// `xBy`: x is a *proper* prefix of y (the witness of `x*z = y` must be
    /// non-empty, since the model has no empty string).
    pub fn begins(&self, other: &BinString) -> bool {
        self.len() < other.len() && other.0[..self.len()] == self.0[..]
    }

    /// `xEy`: x is a proper suffix of y.
    pub fn ends(&self, other: &BinString) -> bool {
        self.len() < other.len() && other.0[other.len() - self.len()..] == self.0[..]
    }

    /// `x ⊆p y`: x occurs contiguously in y; equality counts.
    pub fn is_substring_of(&self, other: &BinString) -> bool {
        if self.len() > other.len() {
            return false;
        }
        other
            .0
            .windows(self.len())
            .any(|w| w == &self.0[..])
    }

    /// String successor: `S(a) = b`, otherwise `S(x) = x*b`.
    pub fn successor(&self) -> BinString {
        if self.0 == [DIGIT_A] {
            BinString::b()
        } else {
            let mut v = self.0.clone();
            v.push(DIGIT_B);
            BinString(v)
        }
    }

    /// `xRy`: x = a and y ≠ a, or x is a proper prefix of y.
    ///
    /// On the standard model every string is tractable (R is irreflexive),
    /// so the strict order `<` of the tree-like ordering coincides with R;
    /// the verification suites assert that rather than assuming it.
    pub fn r_precedes(&self, other: &BinString) -> bool {
        (self.0 == [DIGIT_A] && other.0 != [DIGIT_A]) || self.begins(other)
    }

    /// `x ≤ y` in the R-ordering.
    pub fn r_le(&self, other: &BinString) -> bool {
        self == other || self.r_precedes(other)
    }

    pub fn is_tally_a(&self) -> bool {
        self.0.iter().all(|&d| d == DIGIT_A)
    }

    pub fn is_tally_b(&self) -> bool {
        self.0.iter().all(|&d| d == DIGIT_B)
    }

    /// Appends a single digit.
    pub fn push_digit(&self, digit: u8) -> BinString {
        debug_assert!(digit == DIGIT_A || digit == DIGIT_B);
        let mut v = self.0.clone();
        v.push(digit);
        BinString(v)
    }

    /// Length of the longest run of consecutive b's; 0 when no b occurs.
    pub fn max_b_run(&self) -> usize {
        let mut best = 0;
        let mut cur = 0;
        for &d in &self.0 {
            if d == DIGIT_B {
                cur += 1;
                best = best.max(cur);
            } else {
                cur = 0;
            }
        }
        best
    }

    /// All proper prefixes, shortest first.
    pub fn proper_prefixes(&self) -> impl Iterator<Item = BinString> + '_ {
        (1..self.len()).map(move |k| BinString(self.0[..k].to_vec()))
    }

    /// All proper suffixes, shortest first.
    pub fn proper_suffixes(&self) -> impl Iterator<Item = BinString> + '_ {
        (1..self.len()).map(move |k| BinString(self.0[self.len() - k..].to_vec()))
    }
}

impl PartialOrd for BinString {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BinString {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for BinString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Digits are ASCII by construction.
        f.write_str(std::str::from_utf8(&self.0).expect("ascii digits"))
    }
}

impl fmt::Debug for BinString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinString({})", self)
    }
}

impl FromStr for BinString {
    type Err = StringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(StringError::Empty);
        }
        let mut v = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                'a' => v.push(DIGIT_A),
                'b' => v.push(DIGIT_B),
                other => return Err(StringError::BadDigit(other)),
            }
        }
        Ok(BinString(v))
    }
}

/// A non-empty string of b's. `b^(n+1)` denotes the natural number n.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BTally(BinString);

impl BTally {
    pub fn new(s: BinString) -> Result<Self, StringError> {
        if s.is_tally_b() {
            Ok(BTally(s))
        } else {
            Err(StringError::NotATally(s.to_string()))
        }
    }

    /// The tally of `len` b's; `len` must be at least 1.
    pub fn of_len(len: usize) -> Self {
        assert!(len >= 1, "tallies are non-empty");
        BTally(BinString(vec![DIGIT_B; len]))
    }

    pub fn into_inner(self) -> BinString {
        self.0
    }

    pub fn as_string(&self) -> &BinString {
        &self.0
    }
}

impl Deref for BTally {
    type Target = BinString;

    fn deref(&self) -> &BinString {
        &self.0
    }
}

impl fmt::Display for BTally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for BTally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BTally({})", self.0)
    }
}

/// Tally addition. On b-tallies `b^m`, `b^n` the result is `b^(m+n-1)`,
/// matching ordinary addition under the `b^(n+1) ↔ n` denotation; any other
/// input falls through to the definition's default clause and yields `b`.
pub fn addtally(x: &BinString, y: &BinString) -> BTally {
    if !x.is_tally_b() || !y.is_tally_b() {
        return BTally::of_len(1);
    }
    BTally::of_len(x.len() + y.len() - 1)
}

/// `n ↦ b^(n+1)`.
pub fn nat_to_tally(n: u64) -> BTally {
    BTally::of_len(n as usize + 1)
}

/// `b^(n+1) ↦ n`; rejects anything that is not a b-tally.
pub fn tally_to_nat(t: &BinString) -> Result<u64, StringError> {
    if t.is_tally_b() {
        Ok(t.len() as u64 - 1)
    } else {
        Err(StringError::NotATally(t.to_string()))
    }
}

/// All strings of length 1..=max_len in canonical (length, lexicographic)
/// order. The exhaustive verification suites enumerate from here.
pub fn all_strings(max_len: usize) -> Vec<BinString> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        // Counting in binary with a=0, b=1 yields lexicographic order.
        for code in 0..(1u64 << len) {
            let mut v = Vec::with_capacity(len);
            for i in (0..len).rev() {
                v.push(if (code >> i) & 1 == 0 { DIGIT_A } else { DIGIT_B });
            }
            out.push(BinString(v));
        }
    }
    out
}

/// All strings of exactly the given length, lexicographic.
pub fn strings_of_len(len: usize) -> Vec<BinString> {
    assert!(len >= 1);
    let mut out = Vec::with_capacity(1 << len);
    for code in 0..(1u64 << len) {
        let mut v = Vec::with_capacity(len);
        for i in (0..len).rev() {
            v.push(if (code >> i) & 1 == 0 { DIGIT_A } else { DIGIT_B });
        }
        out.push(BinString(v));
    }
    out
}
