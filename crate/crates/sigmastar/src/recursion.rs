//! String recursion made executable. A recursion is given by base values at
//! the two digits and two step maps; running it folds over the digits of the
//! argument. A computation certificate is a set code whose members are pair
//! codes `(index, value)` covering the index closure of the argument, and an
//! independent checker decides the certificate clauses without re-running
//! the recursion the same way.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::setcode::{decode_pair, encode_pair, encode_set, members, SetCode};
use crate::strings::{BinString, DIGIT_A, DIGIT_B};

type StepFn = Arc<dyn Fn(&BinString, &BinString) -> BinString + Send + Sync>;

/// A two-successor string recursion: `h(a) = p`, `h(b) = q`,
/// `h(z*a) = f1(z, h(z))`, `h(z*b) = f2(z, h(z))`. The step maps must be
/// total and deterministic.
#[derive(Clone)]
pub struct RecursionSpec {
    pub name: String,
    pub p: BinString,
    pub q: BinString,
    f1: StepFn,
    f2: StepFn,
}

impl RecursionSpec {
    pub fn new(
        name: impl Into<String>,
        p: BinString,
        q: BinString,
        f1: impl Fn(&BinString, &BinString) -> BinString + Send + Sync + 'static,
        f2: impl Fn(&BinString, &BinString) -> BinString + Send + Sync + 'static,
    ) -> Self {
        RecursionSpec {
            name: name.into(),
            p,
            q,
            f1: Arc::new(f1),
            f2: Arc::new(f2),
        }
    }

    pub fn step_a(&self, z: &BinString, h: &BinString) -> BinString {
        (self.f1)(z, h)
    }

    pub fn step_b(&self, z: &BinString, h: &BinString) -> BinString {
        (self.f2)(z, h)
    }

    /// The recursion whose value counts a-digits: base bb at a, b at b,
    /// appending one b per a-digit.
    pub fn alpha() -> Self {
        RecursionSpec::new(
            "alpha",
            "bb".parse().unwrap(),
            "b".parse().unwrap(),
            |_, u| u.push_digit(DIGIT_B),
            |_, u| u.clone(),
        )
    }

    /// The b-digit counter; bases and steps of [`RecursionSpec::alpha`]
    /// with the two roles exchanged.
    pub fn beta() -> Self {
        RecursionSpec::new(
            "beta",
            "b".parse().unwrap(),
            "bb".parse().unwrap(),
            |_, u| u.clone(),
            |_, u| u.push_digit(DIGIT_B),
        )
    }

    /// Looks up a built-in spec by name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "alpha" => Some(Self::alpha()),
            "beta" => Some(Self::beta()),
            _ => None,
        }
    }
}

/// Runs the recursion directly: fold over the digits of `m`.
pub fn run_recursion(spec: &RecursionSpec, m: &BinString) -> BinString {
    let digits = m.digits();
    let mut prefix = BinString::from_bytes(vec![digits[0]]);
    let mut value = if digits[0] == DIGIT_A {
        spec.p.clone()
    } else {
        spec.q.clone()
    };
    for &d in &digits[1..] {
        value = if d == DIGIT_A {
            spec.step_a(&prefix, &value)
        } else {
            spec.step_b(&prefix, &value)
        };
        prefix = prefix.push_digit(d);
    }
    value
}

/// The least index set containing `a`, containing `b` when `b ≤ m`, and
/// closed under appending a digit to any member strictly below `m`.
pub fn index_closure(m: &BinString) -> BTreeSet<BinString> {
    let mut out = BTreeSet::new();
    let mut work = vec![BinString::a()];
    let b = BinString::b();
    if b.r_le(m) {
        work.push(b);
    }
    while let Some(z) = work.pop() {
        if !out.insert(z.clone()) {
            continue;
        }
        if z.r_precedes(m) {
            work.push(z.push_digit(DIGIT_A));
            work.push(z.push_digit(DIGIT_B));
        }
    }
    out
}

/// A computation certificate: a set code whose members are the pair codes
/// `(z, h(z))` for `z` in the index closure of the argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub code: SetCode,
}

impl Certificate {
    /// Length of the certificate string, reported so growth can be bounded.
    pub fn len(&self) -> usize {
        self.code.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Decodes every member as an (index, value) pair. Fails when a member
    /// is not a pair code.
    pub fn pairs(&self) -> Option<BTreeMap<BinString, BinString>> {
        let mut out = BTreeMap::new();
        for w in self.code.members() {
            let (z, v) = decode_pair(&w).ok()?;
            if out.insert(z, v).is_some() {
                return None;
            }
        }
        Some(out)
    }
}

/// Builds the canonical certificate for `m`: one member pair per index in
/// the closure, carrying the recursion value at that index.
pub fn build_certificate(spec: &RecursionSpec, m: &BinString) -> Certificate {
    let member_codes: Vec<BinString> = index_closure(m)
        .iter()
        .map(|z| encode_pair(z, &run_recursion(spec, z)))
        .collect();
    Certificate {
        code: encode_set(&member_codes),
    }
}

/// Decides the certificate clauses for an arbitrary string `u`:
/// it must be a set code; the base pairs at `a` (and at `b` when `b ≤ m`)
/// must be members; members with an index strictly below `m` must have both
/// digit-successor pairs present with the stepped values; and no index may
/// carry two values. Members that are not pair codes never trigger the
/// closure clauses.
pub fn check_comp(u: &BinString, m: &BinString, spec: &RecursionSpec) -> bool {
    let Ok(member_set) = members(u) else {
        return false; // C1
    };
    let mut pairs: BTreeMap<BinString, BinString> = BTreeMap::new();
    for w in &member_set {
        if let Ok((z, v)) = decode_pair(w) {
            if let Some(prev) = pairs.get(&z) {
                if *prev != v {
                    return false; // C6
                }
            }
            pairs.insert(z, v);
        }
    }
    // C6 also fails when two distinct member strings decode to the same
    // index: pair codes are canonical, so that means two values.
    let decodable = member_set
        .iter()
        .filter(|w| decode_pair(w).is_ok())
        .count();
    if decodable != pairs.len() {
        return false;
    }
    // C2: a <= m always holds
    if !member_set.contains(&encode_pair(&BinString::a(), &spec.p)) {
        return false;
    }
    // C3
    if BinString::b().r_le(m) && !member_set.contains(&encode_pair(&BinString::b(), &spec.q)) {
        return false;
    }
    // C4/C5
    for (z, v) in &pairs {
        if z.r_precedes(m) {
            let za = encode_pair(&z.push_digit(DIGIT_A), &spec.step_a(z, v));
            let zb = encode_pair(&z.push_digit(DIGIT_B), &spec.step_b(z, v));
            if !member_set.contains(&za) || !member_set.contains(&zb) {
                return false;
            }
        }
    }
    true
}

/// Indices strictly below `m` in the R-ordering: `a` (when `m ≠ a`) and the
/// proper prefixes of `m`.
fn strictly_below(m: &BinString) -> Vec<BinString> {
    let mut out = Vec::new();
    let a = BinString::a();
    if *m != a {
        out.push(a);
    }
    for p in m.proper_prefixes() {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// The minimality side of the certificate. The defining clause quantifies
/// over every competing certificate; clauses C2-C5 force each competitor's
/// members to include the closure pairs (induction along the ordering), so
/// membership-minimality is equivalent to the member set being exactly the
/// canonical one. The index-bound clause is decided directly.
pub fn check_min_comp(u: &BinString, m: &BinString, spec: &RecursionSpec) -> bool {
    if !check_comp(u, m, spec) {
        return false;
    }
    let Ok(member_set) = members(u) else {
        return false;
    };
    let canonical = build_certificate(spec, m).code.members();
    if member_set != canonical {
        return false;
    }
    // index bound: every decoded index z satisfies
    // (m=a & z=a) or (m=b & z=b) or exists n < m with z <= na or z <= nb
    let below = strictly_below(m);
    let a = BinString::a();
    let b = BinString::b();
    for w in &member_set {
        let Ok((z, _)) = decode_pair(w) else {
            return false;
        };
        let ok = (*m == a && z == a)
            || (*m == b && z == b)
            || below.iter().any(|n| {
                z.r_le(&n.push_digit(DIGIT_A)) || z.r_le(&n.push_digit(DIGIT_B))
            });
        if !ok {
            return false;
        }
    }
    true
}

/// The graph relation realized through certificates: `(m, y)` holds when
/// the canonical minimal certificate for `m` contains the pair `(m, y)`.
pub fn graph_holds(spec: &RecursionSpec, m: &BinString, y: &BinString) -> bool {
    let cert = build_certificate(spec, m);
    cert.code.members().contains(&encode_pair(m, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{alpha, beta};
    use crate::strings::all_strings;

    fn s(t: &str) -> BinString {
        t.parse().unwrap()
    }

    fn set(items: &[&str]) -> BTreeSet<BinString> {
        items.iter().map(|t| s(t)).collect()
    }

    #[test]
    fn run_recursion_examples() {
        let al = RecursionSpec::alpha();
        let be = RecursionSpec::beta();
        assert_eq!(run_recursion(&al, &s("a")), s("bb"));
        assert_eq!(run_recursion(&al, &s("babaa")), s("bbbb"));
        assert_eq!(run_recursion(&be, &s("a")), s("b"));
        assert_eq!(run_recursion(&be, &s("bbb")), s("bbbb"));
    }

    #[test]
    fn run_agrees_with_direct_counting() {
        let al = RecursionSpec::alpha();
        let be = RecursionSpec::beta();
        for m in all_strings(8) {
            assert_eq!(&run_recursion(&al, &m), alpha(&m).as_string());
            assert_eq!(&run_recursion(&be, &m), beta(&m).as_string());
        }
    }

    #[test]
    fn index_closure_examples() {
        assert_eq!(index_closure(&s("a")), set(&["a"]));
        assert_eq!(index_closure(&s("b")), set(&["a", "b", "aa", "ab"]));
        assert_eq!(index_closure(&s("ba")), set(&["a", "b", "aa", "ab", "ba", "bb"]));
        assert_eq!(index_closure(&s("ab")), set(&["a", "aa", "ab"]));
    }

    #[test]
    fn closure_always_contains_its_argument() {
        for m in all_strings(6) {
            assert!(index_closure(&m).contains(&m), "{m}");
        }
    }

    #[test]
    fn certificate_members_are_the_closure_pairs() {
        let al = RecursionSpec::alpha();
        let cert = build_certificate(&al, &s("a"));
        assert_eq!(
            cert.code.members(),
            BTreeSet::from([encode_pair(&s("a"), &s("bb"))])
        );
        let cert_b = build_certificate(&al, &s("b"));
        assert_eq!(
            cert_b.code.members(),
            BTreeSet::from([
                encode_pair(&s("a"), &s("bb")),
                encode_pair(&s("b"), &s("b")),
                encode_pair(&s("aa"), &s("bbb")),
                encode_pair(&s("ab"), &s("bb")),
            ])
        );
        let cert_ab = build_certificate(&al, &s("ab"));
        let idx: BTreeSet<BinString> = cert_ab
            .pairs()
            .unwrap()
            .into_keys()
            .collect();
        assert_eq!(idx, set(&["a", "aa", "ab"]));
    }

    #[test]
    fn built_certificates_verify() {
        for spec in [RecursionSpec::alpha(), RecursionSpec::beta()] {
            for m in all_strings(4) {
                let cert = build_certificate(&spec, &m);
                assert!(check_comp(&cert.code.raw, &m, &spec), "{} {m}", spec.name);
                assert!(check_min_comp(&cert.code.raw, &m, &spec), "{} {m}", spec.name);
            }
        }
    }

    #[test]
    fn check_comp_rejects_trivial_garbage() {
        let al = RecursionSpec::alpha();
        assert!(!check_comp(&s("aa"), &s("a"), &al)); // empty set lacks the base pair
        assert!(!check_min_comp(&s("aa"), &s("a"), &al));
        assert!(!check_comp(&s("ab"), &s("a"), &al)); // not even a set
    }

    #[test]
    fn mutated_certificates_are_rejected() {
        let al = RecursionSpec::alpha();
        for m in all_strings(4) {
            let pairs = build_certificate(&al, &m).pairs().unwrap();
            // replace one member's value
            for (z, v) in &pairs {
                let mut mutated: Vec<BinString> = Vec::new();
                for (z2, v2) in &pairs {
                    let w = if z2 == z {
                        encode_pair(z2, &v2.push_digit(DIGIT_B))
                    } else {
                        encode_pair(z2, v2)
                    };
                    mutated.push(w);
                }
                let code = encode_set(&mutated);
                assert!(
                    !check_min_comp(&code.raw, &m, &al),
                    "m={m} mutated at {z} (value {v})"
                );
            }
            // append an extra well-formed pair at a fresh larger index
            let fresh = m.push_digit(DIGIT_A).push_digit(DIGIT_A);
            let mut extended: Vec<BinString> =
                pairs.iter().map(|(z, v)| encode_pair(z, v)).collect();
            extended.push(encode_pair(&fresh, &s("b")));
            let code = encode_set(&extended);
            assert!(check_comp(&code.raw, &m, &al), "m={m}: superset is still closed");
            assert!(!check_min_comp(&code.raw, &m, &al), "m={m}: superset is not minimal");
        }
    }

    #[test]
    fn graph_examples() {
        let al = RecursionSpec::alpha();
        assert!(graph_holds(&al, &s("a"), &s("bb")));
        assert!(!graph_holds(&al, &s("b"), &s("bb")));
        assert!(graph_holds(&al, &s("babaa"), &s("bbbb")));
    }

    #[test]
    fn graph_is_functional_and_matches_the_run() {
        // For each argument exactly one value satisfies the graph relation,
        // and it is the directly computed one. Candidate values are scanned
        // over all short strings.
        let specs = [RecursionSpec::alpha(), RecursionSpec::beta()];
        let candidates = all_strings(8);
        for spec in &specs {
            for m in all_strings(5) {
                let expected = run_recursion(spec, &m);
                let hits: Vec<&BinString> = candidates
                    .iter()
                    .filter(|y| graph_holds(spec, &m, y))
                    .collect();
                assert_eq!(hits, vec![&expected], "{} at {m}", spec.name);
            }
        }
    }

    #[test]
    fn base_and_step_clauses() {
        let al = RecursionSpec::alpha();
        // base: the graph at a digit holds exactly of the base value
        for y in all_strings(4) {
            assert_eq!(graph_holds(&al, &s("a"), &y), y == al.p);
            assert_eq!(graph_holds(&al, &s("b"), &y), y == al.q);
        }
        // step: the value at m*a is the stepped value at m
        for m in all_strings(6) {
            let u = run_recursion(&al, &m);
            assert!(graph_holds(&al, &m, &u));
            let ma = m.push_digit(DIGIT_A);
            let mb = m.push_digit(DIGIT_B);
            assert!(graph_holds(&al, &ma, &al.step_a(&m, &u)));
            assert!(graph_holds(&al, &mb, &al.step_b(&m, &u)));
        }
    }

    #[test]
    fn randomized_total_specs_satisfy_the_theorem_clauses() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(0x5157);
        for round in 0..3 {
            // step maps keyed by a random table over bounded output length
            let salt: u64 = rng.random();
            let step = move |which: u64| {
                move |z: &BinString, u: &BinString| -> BinString {
                    let mix = salt
                        ^ which
                        ^ (z.len() as u64).wrapping_mul(0x9e37)
                        ^ (u.max_b_run() as u64).wrapping_mul(31)
                        ^ (crate::counting::count_a(u) << 3);
                    let len = (mix % 4) as usize + 1;
                    let mut bytes = Vec::with_capacity(len);
                    for i in 0..len {
                        bytes.push(if (mix >> i) & 1 == 0 { DIGIT_A } else { DIGIT_B });
                    }
                    BinString::from_bytes(bytes)
                }
            };
            let spec = RecursionSpec::new(
                format!("random-{round}"),
                s("ab"),
                s("ba"),
                step(1),
                step(2),
            );
            for m in all_strings(5) {
                let expected = run_recursion(&spec, &m);
                assert!(graph_holds(&spec, &m, &expected));
                let cert = build_certificate(&spec, &m);
                assert!(check_min_comp(&cert.code.raw, &m, &spec));
            }
        }
    }

    #[test]
    fn certificate_growth_is_reported() {
        let al = RecursionSpec::alpha();
        let small = build_certificate(&al, &s("a")).len();
        let large = build_certificate(&al, &s("bbbb")).len();
        assert!(small < large);
        assert!(small >= 9); // at least one pair code plus its frame
    }
}
