//! The digit-counting functions `alpha` (number of a's) and `beta` (number
//! of b's), valued in b-tallies, and the almost-even predicate that carves
//! out exactly the tree codes.

use crate::strings::{BTally, BinString, DIGIT_A};

/// Number of a-digits in `x`, as the tally `b^(count+1)`.
///
/// Satisfies the recursion `alpha(a) = bb`, `alpha(b) = b`,
/// `alpha(x*a) = S(alpha(x))`, `alpha(x*b) = alpha(x)`.
pub fn alpha(x: &BinString) -> BTally {
    BTally::of_len(count_a(x) as usize + 1)
}

/// Number of b-digits in `x`, as a tally; dual recursion to [`alpha`].
pub fn beta(x: &BinString) -> BTally {
    BTally::of_len(count_b(x) as usize + 1)
}

/// Plain a-digit count (the tally denotation of [`alpha`]).
pub fn count_a(x: &BinString) -> u64 {
    x.digits().iter().filter(|&&d| d == DIGIT_A).count() as u64
}

/// Plain b-digit count.
pub fn count_b(x: &BinString) -> u64 {
    x.len() as u64 - count_a(x)
}

/// A string is almost even when it has exactly one more a than b and no
/// proper prefix has more a's than b's. These are exactly the Polish codes
/// of full binary trees.
///
/// Single left-to-right scan; the recursion-certificate machinery re-derives
/// the same counts independently and agreement is an acceptance criterion.
pub fn is_almost_even(x: &BinString) -> bool {
    let mut surplus: i64 = 0; // a-count minus b-count so far
    let n = x.len();
    for (i, &d) in x.digits().iter().enumerate() {
        surplus += if d == DIGIT_A { 1 } else { -1 };
        if i + 1 < n && surplus > 0 {
            return false;
        }
    }
    surplus == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::{addtally, all_strings, nat_to_tally, tally_to_nat};

    fn s(t: &str) -> BinString {
        t.parse().unwrap()
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(&s("a")).as_string(), &s("bb"));
        assert_eq!(alpha(&s("b")).as_string(), &s("b"));
        assert_eq!(alpha(&s("babaa")).as_string(), &s("bbbb"));
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(&s("a")).as_string(), &s("b"));
        assert_eq!(beta(&s("bbb")).as_string(), &s("bbbb"));
        assert_eq!(beta(&s("babaa")).as_string(), &s("bbb"));
    }

    #[test]
    fn alpha_beta_satisfy_the_recursion_equations() {
        for x in all_strings(9) {
            let xa = x.push_digit(b'a');
            let xb = x.push_digit(b'b');
            assert_eq!(alpha(&xa).as_string(), &alpha(&x).successor());
            assert_eq!(alpha(&xb), alpha(&x));
            assert_eq!(beta(&xa), beta(&x));
            assert_eq!(beta(&xb).as_string(), &beta(&x).successor());
        }
    }

    #[test]
    fn additivity_over_concatenation() {
        // alpha(x*y) = alpha(x) + alpha(y), and dually for beta,
        // exhaustively over short strings (lengths sum to <= 13).
        let xs = all_strings(6);
        for x in &xs {
            for y in &xs {
                let xy = x.concat(y);
                assert_eq!(alpha(&xy), addtally(alpha(x).as_string(), alpha(y).as_string()));
                assert_eq!(beta(&xy), addtally(beta(x).as_string(), beta(y).as_string()));
            }
        }
    }

    #[test]
    fn tallies_have_trivial_counts() {
        // alpha of a b-tally is b; beta of an a-tally is b;
        // beta of a b-tally of length n is the tally denoting n.
        for n in 1..=10 {
            let bt = nat_to_tally(n - 1);
            assert_eq!(alpha(bt.as_string()).as_string(), &s("b"));
            assert_eq!(tally_to_nat(beta(bt.as_string()).as_string()).unwrap(), n);
            let at: BinString = "a".repeat(n as usize).parse().unwrap();
            assert_eq!(beta(&at).as_string(), &s("b"));
        }
    }

    #[test]
    fn almost_even_examples() {
        for good in ["a", "baa", "babaa", "bbaaa", "bbaabaa"] {
            assert!(is_almost_even(&s(good)), "{good}");
        }
        for bad in ["aa", "ab", "ba", "bb", "b"] {
            assert!(!is_almost_even(&s(bad)), "{bad}");
        }
    }

    #[test]
    fn almost_even_matches_definition_exhaustively() {
        // Cross-check the scan against a direct reading of the two
        // conditions: counts on the whole string and on every proper prefix.
        for x in all_strings(13) {
            let c1 = count_a(&x) == count_b(&x) + 1;
            let c2 = x.proper_prefixes().all(|u| count_a(&u) <= count_b(&u));
            assert_eq!(is_almost_even(&x), c1 && c2, "{x}");
        }
    }

    #[test]
    fn nonleaf_codes_start_b_end_aa() {
        // 2.1(a): a non-trivial almost-even string begins with b and ends
        // with aa; 2.1(b)/6.1(a): every proper suffix has a-surplus >= 1.
        for x in all_strings(13) {
            if !is_almost_even(&x) {
                continue;
            }
            if x != s("a") {
                assert!(s("b").begins(&x));
                assert!(s("aa").ends(&x));
            }
            for x2 in x.proper_suffixes() {
                assert!(count_a(&x2) >= count_b(&x2) + 1, "{x} suffix {x2}");
                // tally form: S(beta(x2)) <= alpha(x2) in the R-order
                assert!(beta(&x2).successor().r_le(alpha(&x2).as_string()));
            }
        }
    }

    #[test]
    fn almost_even_strings_form_a_prefix_code() {
        // 2.1(c) with the corrected conclusion y = v: if x, u are almost
        // even and x*y = u*v then x = u and y = v. Equivalently: no
        // almost-even string is a proper prefix of another.
        let all = all_strings(13);
        let ae: Vec<_> = all.iter().filter(|x| is_almost_even(x)).collect();
        for x in &ae {
            for u in &ae {
                assert!(!x.begins(u), "{x} begins {u}");
            }
        }
    }
}
