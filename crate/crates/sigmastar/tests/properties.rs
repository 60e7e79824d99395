//! Randomized invariants complementing the exhaustive suites.

use proptest::prelude::*;

use sigmastar::{
    addtally, alpha, beta, decode_pair, decode_tree, encode_pair, encode_set, encode_tree,
    is_almost_even, members, BinString, TreeTerm,
};

fn bin_string(max_len: usize) -> impl Strategy<Value = BinString> {
    prop::collection::vec(prop::bool::ANY, 1..=max_len).prop_map(|bits| {
        let text: String = bits.iter().map(|&b| if b { 'b' } else { 'a' }).collect();
        text.parse().unwrap()
    })
}

fn tree() -> impl Strategy<Value = TreeTerm> {
    let leaf = Just(TreeTerm::Leaf);
    leaf.prop_recursive(6, 64, 2, |inner| {
        (inner.clone(), inner).prop_map(|(l, r)| TreeTerm::node(l, r))
    })
}

proptest! {
    #[test]
    fn concatenation_is_associative(
        x in bin_string(12),
        y in bin_string(12),
        z in bin_string(12),
    ) {
        prop_assert_eq!(x.concat(&y.concat(&z)), x.concat(&y).concat(&z));
    }

    #[test]
    fn counting_is_additive(x in bin_string(16), y in bin_string(16)) {
        let xy = x.concat(&y);
        prop_assert_eq!(alpha(&xy), addtally(alpha(&x).as_string(), alpha(&y).as_string()));
        prop_assert_eq!(beta(&xy), addtally(beta(&x).as_string(), beta(&y).as_string()));
    }

    #[test]
    fn tree_codes_roundtrip_and_are_almost_even(t in tree()) {
        let code = encode_tree(&t);
        prop_assert!(is_almost_even(&code));
        prop_assert_eq!(code.len(), 2 * t.internal_nodes() + 1);
        prop_assert_eq!(decode_tree(&code).unwrap(), t);
    }

    #[test]
    fn appending_a_digit_never_stays_almost_even_twice(x in bin_string(14)) {
        // of x*a and x*b at most one can be almost even, and only by
        // closing the count exactly
        let xa = x.push_digit(b'a');
        let xb = x.push_digit(b'b');
        prop_assert!(!(is_almost_even(&xa) && is_almost_even(&xb)));
    }

    #[test]
    fn pair_codes_roundtrip(x in bin_string(10), y in bin_string(10)) {
        let z = encode_pair(&x, &y);
        prop_assert_eq!(decode_pair(&z).unwrap(), (x, y));
    }

    #[test]
    fn set_codes_roundtrip(ws in prop::collection::vec(bin_string(6), 0..5)) {
        let code = encode_set(&ws);
        let expected: std::collections::BTreeSet<BinString> = ws.into_iter().collect();
        prop_assert_eq!(members(&code.raw).unwrap(), expected);
    }

    #[test]
    fn almost_even_strings_are_never_proper_prefixes(s in tree(), t in tree()) {
        // prefix-freeness of the code set
        let x = encode_tree(&s);
        let y = encode_tree(&t);
        prop_assert!(!x.begins(&y));
    }
}
