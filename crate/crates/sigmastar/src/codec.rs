//! Full binary trees and their Polish string codes: a leaf is written `a`,
//! an internal node is `b` followed by the codes of its two children. The
//! codes are exactly the almost-even strings.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::counting::is_almost_even;
use crate::strings::{BinString, DIGIT_A, DIGIT_B};

/// A full binary tree: every internal node has exactly two children. These
/// are the variable-free terms over a constant and a pairing operation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TreeTerm {
    Leaf,
    Node(Box<TreeTerm>, Box<TreeTerm>),
}

impl TreeTerm {
    pub fn node(left: TreeTerm, right: TreeTerm) -> TreeTerm {
        TreeTerm::Node(Box::new(left), Box::new(right))
    }

    /// Number of internal nodes.
    pub fn internal_nodes(&self) -> usize {
        match self {
            TreeTerm::Leaf => 0,
            TreeTerm::Node(l, r) => 1 + l.internal_nodes() + r.internal_nodes(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TreeTerm::Leaf => 0,
            TreeTerm::Node(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// All subtrees, including the tree itself, deduplicated.
    pub fn subterms(&self) -> Vec<TreeTerm> {
        let mut seen = Vec::new();
        fn walk(t: &TreeTerm, seen: &mut Vec<TreeTerm>) {
            if !seen.contains(t) {
                seen.push(t.clone());
            }
            if let TreeTerm::Node(l, r) = t {
                walk(l, seen);
                walk(r, seen);
            }
        }
        walk(self, &mut seen);
        seen
    }
}

impl fmt::Display for TreeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeTerm::Leaf => f.write_str("0"),
            TreeTerm::Node(l, r) => write!(f, "({},{})", l, r),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("not an almost-even string: {0}")]
    NotAlmostEven(String),
    #[error("not decomposable: {0}")]
    NotDecomposable(String),
    #[error("tree syntax error at byte {pos}: {msg}")]
    TreeSyntax { pos: usize, msg: String },
}

/// Encodes a tree as its Polish code: leaf ↦ `a`, node ↦ `b` ++ left ++ right.
pub fn encode_tree(t: &TreeTerm) -> BinString {
    let mut bytes = Vec::new();
    fn walk(t: &TreeTerm, out: &mut Vec<u8>) {
        match t {
            TreeTerm::Leaf => out.push(DIGIT_A),
            TreeTerm::Node(l, r) => {
                out.push(DIGIT_B);
                walk(l, out);
                walk(r, out);
            }
        }
    }
    walk(t, &mut bytes);
    BinString::from_bytes(bytes)
}

/// Decodes a Polish code by streaming descent: consume `b`, recurse twice;
/// consume `a`, emit a leaf. Succeeds exactly on almost-even strings.
pub fn decode_tree(x: &BinString) -> Result<TreeTerm, CodecError> {
    let digits = x.digits();
    let mut pos = 0usize;
    let tree = parse_subtree(digits, &mut pos)
        .ok_or_else(|| CodecError::NotAlmostEven(x.to_string()))?;
    if pos != digits.len() {
        // leftover digits after a complete code
        return Err(CodecError::NotAlmostEven(x.to_string()));
    }
    Ok(tree)
}

fn parse_subtree(digits: &[u8], pos: &mut usize) -> Option<TreeTerm> {
    match digits.get(*pos) {
        Some(&DIGIT_A) => {
            *pos += 1;
            Some(TreeTerm::Leaf)
        }
        Some(&DIGIT_B) => {
            *pos += 1;
            let left = parse_subtree(digits, pos)?;
            let right = parse_subtree(digits, pos)?;
            Some(TreeTerm::node(left, right))
        }
        _ => None, // stream exhausted mid-subtree
    }
}

/// The splitting step from the decomposition proof, kept as its own
/// deliverable: given an almost-even `x ≠ a`, drop the leading `b` and take
/// the shortest prefix of the remainder whose a-count exceeds its b-count by
/// exactly one; that prefix is the left child code and the rest the right.
pub fn split_by_counting(x: &BinString) -> Result<(BinString, BinString), CodecError> {
    if !is_almost_even(x) || x.len() == 1 {
        return Err(CodecError::NotDecomposable(x.to_string()));
    }
    let digits = x.digits();
    debug_assert_eq!(digits[0], DIGIT_B);
    let rest = &digits[1..];
    let mut surplus: i64 = 0;
    for (i, &d) in rest.iter().enumerate() {
        surplus += if d == DIGIT_A { 1 } else { -1 };
        if surplus == 1 {
            let left = BinString::from_bytes(rest[..=i].to_vec());
            if i + 1 == rest.len() {
                return Err(CodecError::NotDecomposable(x.to_string()));
            }
            let right = BinString::from_bytes(rest[i + 1..].to_vec());
            return Ok((left, right));
        }
    }
    Err(CodecError::NotDecomposable(x.to_string()))
}

/// Codes of all subtrees of the tree coded by `x`, deduplicated. Always
/// contains `a` and `x` itself.
pub fn subterm_codes(x: &BinString) -> Result<BTreeSet<BinString>, CodecError> {
    let tree = decode_tree(x)?;
    let mut out = BTreeSet::new();
    fn walk(t: &TreeTerm, out: &mut BTreeSet<BinString>) {
        out.insert(encode_tree(t));
        if let TreeTerm::Node(l, r) = t {
            walk(l, out);
            walk(r, out);
        }
    }
    walk(&tree, &mut out);
    Ok(out)
}

impl FromStr for TreeTerm {
    type Err = CodecError;

    /// Parses the concrete syntax `0` / `(s,t)`, whitespace-insensitive.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let t = parse_tree_syntax(bytes, &mut pos)?;
        skip_ws(bytes, &mut pos);
        if pos != bytes.len() {
            return Err(CodecError::TreeSyntax {
                pos,
                msg: "trailing input".into(),
            });
        }
        Ok(t)
    }
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while bytes.get(*pos).is_some_and(|b| b.is_ascii_whitespace()) {
        *pos += 1;
    }
}

fn parse_tree_syntax(bytes: &[u8], pos: &mut usize) -> Result<TreeTerm, CodecError> {
    skip_ws(bytes, pos);
    match bytes.get(*pos) {
        Some(b'0') => {
            *pos += 1;
            Ok(TreeTerm::Leaf)
        }
        Some(b'(') => {
            *pos += 1;
            let left = parse_tree_syntax(bytes, pos)?;
            skip_ws(bytes, pos);
            if bytes.get(*pos) != Some(&b',') {
                return Err(CodecError::TreeSyntax {
                    pos: *pos,
                    msg: "expected ','".into(),
                });
            }
            *pos += 1;
            let right = parse_tree_syntax(bytes, pos)?;
            skip_ws(bytes, pos);
            if bytes.get(*pos) != Some(&b')') {
                return Err(CodecError::TreeSyntax {
                    pos: *pos,
                    msg: "expected ')'".into(),
                });
            }
            *pos += 1;
            Ok(TreeTerm::node(left, right))
        }
        other => Err(CodecError::TreeSyntax {
            pos: *pos,
            msg: format!("expected '0' or '(', found {:?}", other.map(|&b| b as char)),
        }),
    }
}

/// All trees with exactly `k` internal nodes.
pub fn trees_with_internal_nodes(k: usize) -> Vec<TreeTerm> {
    if k == 0 {
        return vec![TreeTerm::Leaf];
    }
    let mut out = Vec::new();
    for left_k in 0..k {
        for l in trees_with_internal_nodes(left_k) {
            for r in trees_with_internal_nodes(k - 1 - left_k) {
                out.push(TreeTerm::node(l.clone(), r));
            }
        }
    }
    out
}

/// All trees of depth at most `d`.
pub fn trees_up_to_depth(d: usize) -> Vec<TreeTerm> {
    let mut layers: Vec<Vec<TreeTerm>> = vec![vec![TreeTerm::Leaf]];
    for depth in 1..=d {
        let prev: Vec<TreeTerm> = layers.iter().flatten().cloned().collect();
        let mut layer = Vec::new();
        for l in &prev {
            for r in &prev {
                let t = TreeTerm::node(l.clone(), r.clone());
                if t.depth() == depth {
                    layer.push(t);
                }
            }
        }
        layers.push(layer);
    }
    layers.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::all_strings;

    fn s(t: &str) -> BinString {
        t.parse().unwrap()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode_tree(&TreeTerm::Leaf), s("a"));
        assert_eq!(encode_tree(&TreeTerm::node(TreeTerm::Leaf, TreeTerm::Leaf)), s("baa"));
        let t = TreeTerm::node(
            TreeTerm::node(TreeTerm::Leaf, TreeTerm::Leaf),
            TreeTerm::node(TreeTerm::Leaf, TreeTerm::Leaf),
        );
        assert_eq!(encode_tree(&t), s("bbaabaa"));
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode_tree(&s("a")).unwrap(), TreeTerm::Leaf);
        assert_eq!(
            decode_tree(&s("bbaaa")).unwrap(),
            TreeTerm::node(TreeTerm::node(TreeTerm::Leaf, TreeTerm::Leaf), TreeTerm::Leaf)
        );
        assert!(matches!(decode_tree(&s("ab")), Err(CodecError::NotAlmostEven(_))));
        assert!(matches!(decode_tree(&s("baaa")), Err(CodecError::NotAlmostEven(_))));
        assert!(matches!(decode_tree(&s("ba")), Err(CodecError::NotAlmostEven(_))));
    }

    #[test]
    fn split_examples() {
        assert_eq!(split_by_counting(&s("baa")).unwrap(), (s("a"), s("a")));
        assert_eq!(split_by_counting(&s("bbaabaa")).unwrap(), (s("baa"), s("baa")));
        assert_eq!(split_by_counting(&s("babaa")).unwrap(), (s("a"), s("baa")));
        assert!(split_by_counting(&s("a")).is_err());
        assert!(split_by_counting(&s("ab")).is_err());
    }

    #[test]
    fn split_agrees_with_recursive_descent() {
        for x in all_strings(13) {
            if !is_almost_even(&x) || x.len() == 1 {
                continue;
            }
            let (l, r) = split_by_counting(&x).unwrap();
            match decode_tree(&x).unwrap() {
                TreeTerm::Node(dl, dr) => {
                    assert_eq!(encode_tree(&dl), l);
                    assert_eq!(encode_tree(&dr), r);
                }
                TreeTerm::Leaf => unreachable!(),
            }
        }
    }

    #[test]
    fn roundtrip_both_ways() {
        for k in 0..=6 {
            for t in trees_with_internal_nodes(k) {
                assert_eq!(decode_tree(&encode_tree(&t)).unwrap(), t);
            }
        }
        for x in all_strings(13) {
            if is_almost_even(&x) {
                assert_eq!(encode_tree(&decode_tree(&x).unwrap()), x);
            }
        }
    }

    #[test]
    fn decoding_succeeds_exactly_on_almost_even_strings() {
        for x in all_strings(13) {
            assert_eq!(decode_tree(&x).is_ok(), is_almost_even(&x), "{x}");
        }
    }

    #[test]
    fn decomposition_is_unique() {
        // For almost-even x other than a there is exactly one almost-even
        // pair (y, z) with x = b*y*z: exhaustive over every split point.
        for x in all_strings(13) {
            if !is_almost_even(&x) || x.len() == 1 {
                continue;
            }
            let digits = x.digits();
            assert_eq!(digits[0], b'b');
            let mut found = 0;
            for cut in 2..digits.len() {
                let y = BinString::from_bytes(digits[1..cut].to_vec());
                let z = BinString::from_bytes(digits[cut..].to_vec());
                if is_almost_even(&y) && is_almost_even(&z) {
                    found += 1;
                }
            }
            assert_eq!(found, 1, "{x}");
        }
    }

    #[test]
    fn subterm_codes_examples() {
        let set = |items: &[&str]| items.iter().map(|t| s(t)).collect::<BTreeSet<_>>();
        assert_eq!(subterm_codes(&s("a")).unwrap(), set(&["a"]));
        assert_eq!(subterm_codes(&s("baa")).unwrap(), set(&["a", "baa"]));
        assert_eq!(subterm_codes(&s("bbaabaa")).unwrap(), set(&["a", "baa", "bbaabaa"]));
        assert!(subterm_codes(&s("ab")).is_err());
    }

    #[test]
    fn subterm_codes_are_exactly_the_almost_even_substrings() {
        let ae: Vec<BinString> = all_strings(13).into_iter().filter(is_almost_even).collect();
        for t in &ae {
            let codes = subterm_codes(t).unwrap();
            for x in &ae {
                assert_eq!(codes.contains(x), x.is_substring_of(t), "{x} in {t}");
            }
        }
    }

    #[test]
    fn substring_decomposes_through_node_codes() {
        // For almost-even x, y, z: x occurs in b*y*z iff x equals it or
        // occurs in a child. Checked for codes built from children of
        // length <= 6 plus x of length <= 13.
        let ae: Vec<BinString> = all_strings(6)
            .into_iter()
            .filter(crate::counting::is_almost_even)
            .collect();
        let xs: Vec<BinString> = all_strings(13)
            .into_iter()
            .filter(crate::counting::is_almost_even)
            .collect();
        let b = s("b");
        for y in &ae {
            for z in &ae {
                let byz = b.concat(y).concat(z);
                for x in &xs {
                    let lhs = x.is_substring_of(&byz);
                    let rhs = *x == byz || x.is_substring_of(y) || x.is_substring_of(z);
                    assert_eq!(lhs, rhs, "x={x} y={y} z={z}");
                }
            }
        }
    }

    #[test]
    fn census_matches_catalan_numbers() {
        let expected = [1usize, 1, 2, 5, 14, 42, 132];
        for (k, &want) in expected.iter().enumerate() {
            let len = 2 * k + 1;
            let got = crate::strings::strings_of_len(len)
                .into_iter()
                .filter(crate::counting::is_almost_even)
                .count();
            assert_eq!(got, want, "length {len}");
            if len > 1 {
                let even = crate::strings::strings_of_len(len - 1)
                    .into_iter()
                    .filter(crate::counting::is_almost_even)
                    .count();
                assert_eq!(even, 0, "even length {}", len - 1);
            }
        }
    }

    #[test]
    fn encoding_is_injective_up_to_depth_five() {
        let trees = trees_up_to_depth(5);
        assert_eq!(trees.len(), 458_330);
        let codes: std::collections::HashSet<BinString> =
            trees.iter().map(encode_tree).collect();
        assert_eq!(codes.len(), trees.len());
    }

    #[test]
    fn tree_syntax_roundtrip() {
        for text in ["0", "(0,0)", "((0,0),0)", "( 0 , ( 0 , 0 ) )"] {
            let t: TreeTerm = text.parse().unwrap();
            let printed = t.to_string();
            let again: TreeTerm = printed.parse().unwrap();
            assert_eq!(t, again);
        }
        assert!("".parse::<TreeTerm>().is_err());
        assert!("(0,0".parse::<TreeTerm>().is_err());
        assert!("(0 0)".parse::<TreeTerm>().is_err());
    }

    #[test]
    fn tree_generators_count() {
        assert_eq!(trees_with_internal_nodes(6).len(), 132);
        assert_eq!(trees_up_to_depth(3).len(), 26);
    }
}
