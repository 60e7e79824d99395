//! Suites for the census of tree codes, the codec itself, the set and pair
//! coding lemmas, and the recursion certificates.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::codec::{
    decode_tree, encode_tree, split_by_counting, subterm_codes, trees_up_to_depth,
    trees_with_internal_nodes, TreeTerm,
};
use crate::counting::{alpha, beta, is_almost_even};
use crate::recursion::{
    build_certificate, check_comp, check_min_comp, graph_holds, run_recursion, RecursionSpec,
};
use crate::report::{witness, witness1, Failure, ReportBuilder, VerificationReport};
use crate::setcode::{
    decode_pair, encode_pair, encode_set, members, min_nonoccurrent_tally, parse_set,
};
use crate::strings::{all_strings, strings_of_len, BinString, DIGIT_A, DIGIT_B};

/// Catalan numbers by the convolution recurrence, independent of any
/// string machinery.
fn catalan(upto: usize) -> Vec<u64> {
    let mut c = vec![0u64; upto + 1];
    c[0] = 1;
    for n in 0..upto {
        let mut sum = 0;
        for i in 0..=n {
            sum += c[i] * c[n - i];
        }
        c[n + 1] = sum;
    }
    c
}

/// Counts of almost-even strings per length against the Catalan numbers,
/// by brute enumeration of every string of each length up to the bound.
pub fn ae_census(bound: usize) -> VerificationReport {
    let mut b = ReportBuilder::new("ae-census", bound as u64);
    let cat = catalan(bound / 2 + 1);
    for len in 1..=bound {
        let count = strings_of_len(len)
            .into_iter()
            .filter(|x| is_almost_even(x))
            .count() as u64;
        b.cases += 1u64 << len;
        let expected = if len % 2 == 1 { cat[(len - 1) / 2] } else { 0 };
        if count != expected {
            b.failures.push(Failure {
                law: "ae-census".into(),
                witness: witness(&[
                    ("length", &len),
                    ("count", &count),
                    ("expected", &expected),
                ]),
            });
        }
    }
    b.finish()
}

/// Codec suite: both round trips, the characterization of decodability,
/// agreement of the two decomposition routes, uniqueness of decomposition,
/// the substring/subtree correspondence, and injectivity of the encoding.
pub fn codec(bound: usize) -> VerificationReport {
    let mut b = ReportBuilder::new("codec", bound as u64);
    let max_nodes = (bound - 1) / 2;

    for k in 0..=max_nodes.min(6) {
        for t in trees_with_internal_nodes(k) {
            b.case("roundtrip-tree", decode_tree(&encode_tree(&t)) == Ok(t.clone()), || {
                witness1("t", t.to_string())
            });
        }
    }

    let universe = all_strings(bound);
    let ae: Vec<BinString> = universe
        .iter()
        .filter(|x| is_almost_even(x))
        .cloned()
        .collect();

    for x in &universe {
        b.case(
            "characterization",
            decode_tree(x).is_ok() == is_almost_even(x),
            || witness1("x", x),
        );
    }

    for x in &ae {
        b.case(
            "roundtrip-string",
            encode_tree(&decode_tree(x).unwrap()) == *x,
            || witness1("x", x),
        );
        if x.len() > 1 {
            // the counting split agrees with recursive descent
            let split = split_by_counting(x).ok();
            let children = match decode_tree(x).unwrap() {
                TreeTerm::Node(l, r) => Some((encode_tree(&l), encode_tree(&r))),
                TreeTerm::Leaf => None,
            };
            b.case("split-agreement", split == children, || witness1("x", x));
            // exactly one almost-even split point
            let d = x.digits();
            let splits = (2..d.len())
                .filter(|&cut| {
                    is_almost_even(&BinString::from_bytes(d[1..cut].to_vec()))
                        && is_almost_even(&BinString::from_bytes(d[cut..].to_vec()))
                })
                .count();
            b.case("unique-decomposition", splits == 1, || witness1("x", x));
        }
    }

    // substring coincides with coded subtree on almost-even pairs
    for x in &ae {
        for t in &ae {
            b.case(
                "subterm-substring",
                subterm_codes(t).unwrap().contains(x) == x.is_substring_of(t),
                || witness(&[("x", x), ("t", t)]),
            );
        }
    }

    // parts of a node code decompose through the children
    let short_ae: Vec<BinString> = all_strings(6)
        .into_iter()
        .filter(is_almost_even)
        .collect();
    let b_str = BinString::b();
    let fail_23: Vec<Failure> = ae
        .par_iter()
        .flat_map_iter(|x| {
            let mut local = Vec::new();
            for y in &short_ae {
                for z in &short_ae {
                    let byz = b_str.concat(y).concat(z);
                    let lhs = x.is_substring_of(&byz);
                    let rhs = *x == byz || x.is_substring_of(y) || x.is_substring_of(z);
                    if lhs != rhs {
                        local.push(Failure {
                            law: "2.3".into(),
                            witness: witness(&[("x", x), ("y", y), ("z", z)]),
                        });
                    }
                }
            }
            local
        })
        .collect();
    b.bulk((ae.len() * short_ae.len() * short_ae.len()) as u64, fail_23);

    // injectivity of the encoding over all trees of depth five or less
    let trees = trees_up_to_depth(5);
    let codes: std::collections::HashSet<BinString> = trees.iter().map(encode_tree).collect();
    b.case("injectivity-depth5", codes.len() == trees.len(), || {
        witness(&[("trees", &trees.len()), ("codes", &codes.len())])
    });
    b.cases += trees.len() as u64;

    b.finish()
}

/// Set and pair coding: the singleton, doubleton and appending lemma
/// conclusions, both round trips, and uniqueness of pair decomposition.
pub fn set_coding(bound: usize) -> VerificationReport {
    let mut b = ReportBuilder::new("set-coding", bound as u64);

    // singleton shape for every core of length <= 5
    for u in all_strings(5) {
        let payload = BinString::a().concat(&u).concat(&BinString::a());
        let t = min_nonoccurrent_tally(&payload);
        let code = t.concat(&payload).concat(&t);
        b.case(
            "singleton",
            members(&code) == Ok(BTreeSet::from([u.clone()])),
            || witness1("u", &u),
        );
    }

    // doubleton for distinct cores of length <= 4
    let small = all_strings(4);
    for u in &small {
        for v in &small {
            if u == v {
                continue;
            }
            let code = encode_set(&[u.clone(), v.clone()]);
            b.case(
                "doubleton",
                parse_set(&code.raw).map(|c| c.members())
                    == Ok(BTreeSet::from([u.clone(), v.clone()])),
                || witness(&[("u", u), ("v", v)]),
            );
        }
    }

    // appending: for disjoint sets over short strings, the shared-ladder
    // concatenation of the two codes is the code of the union
    let pool = all_strings(2);
    let subsets: Vec<Vec<BinString>> = subsets_up_to(&pool, 2);
    for xs in &subsets {
        for ys in &subsets {
            if xs.is_empty() || ys.is_empty() || xs.iter().any(|x| ys.contains(x)) {
                continue;
            }
            let union: Vec<BinString> = xs.iter().chain(ys.iter()).cloned().collect();
            let code = encode_set(&union);
            let ok = code.members() == union.iter().cloned().collect::<BTreeSet<_>>()
                && parse_set(&code.raw).is_ok();
            b.case("appending", ok, || {
                witness(&[
                    ("x", &format_set(xs)),
                    ("y", &format_set(ys)),
                ])
            });
        }
    }

    // encode/members round trip over member sets of size <= 3
    for ws in subsets_up_to(&all_strings(3), 3) {
        let code = encode_set(&ws);
        b.case(
            "set-roundtrip",
            members(&code.raw) == Ok(ws.iter().cloned().collect()),
            || witness1("ws", format_set(&ws)),
        );
    }

    // pair round trip over components of length <= 5
    let comps = all_strings(5);
    for x in &comps {
        for y in &comps {
            let z = encode_pair(x, y);
            b.case(
                "pair-roundtrip",
                decode_pair(&z) == Ok((x.clone(), y.clone())),
                || witness(&[("x", x), ("y", y)]),
            );
        }
    }

    // at most one pair decomposition for any string up to the bound
    let fail_unique: Vec<Failure> = all_strings(bound)
        .par_iter()
        .flat_map_iter(|z| {
            let mut local = Vec::new();
            let decompositions = pair_decompositions(z);
            if decompositions.len() > 1 {
                local.push(Failure {
                    law: "pair-uniqueness".into(),
                    witness: witness1("z", z),
                });
            }
            let decoded = decode_pair(z).ok();
            if decoded != decompositions.first().cloned() {
                local.push(Failure {
                    law: "pair-decode-agreement".into(),
                    witness: witness1("z", z),
                });
            }
            local
        })
        .collect();
    b.bulk((1u64 << (bound + 1)) - 2, fail_unique);

    b.finish()
}

/// Independent enumeration of the template decompositions of a string.
fn pair_decompositions(z: &BinString) -> Vec<(BinString, BinString)> {
    let n = z.len();
    let mut found = Vec::new();
    for t_len in 1..=n {
        let overhead = 3 * t_len + 4;
        if overhead + 2 > n {
            break;
        }
        let free = n - overhead;
        for x_len in 1..free {
            let y_len = free - x_len;
            for x in strings_of_len(x_len) {
                for y in strings_of_len(y_len) {
                    if encode_pair(&x, &y) == *z {
                        found.push((x.clone(), y));
                    }
                }
            }
        }
    }
    found
}

fn subsets_up_to(pool: &[BinString], max_size: usize) -> Vec<Vec<BinString>> {
    let mut out: Vec<Vec<BinString>> = vec![Vec::new()];
    for item in pool {
        let existing = out.clone();
        for mut s in existing {
            if s.len() < max_size {
                s.push(item.clone());
                out.push(s);
            }
        }
    }
    out
}

fn format_set(ws: &[BinString]) -> String {
    let names: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
    format!("{{{}}}", names.join(","))
}

/// Recursion suite: certificate-based evaluation agrees with the direct
/// counting functions, certified computations verify, and mutations of a
/// certificate are rejected.
pub fn recursion(bound: usize) -> VerificationReport {
    let mut b = ReportBuilder::new("recursion", bound as u64);
    let alpha_spec = RecursionSpec::alpha();
    let beta_spec = RecursionSpec::beta();

    // graph agreement with the single-scan counters for every argument up
    // to the bound
    let args = all_strings(bound);
    let agreement_failures: Vec<Failure> = args
        .par_iter()
        .flat_map_iter(|m| {
            let mut local = Vec::new();
            let a = alpha(m);
            let bt = beta(m);
            if !graph_holds(&RecursionSpec::alpha(), m, a.as_string()) {
                local.push(Failure {
                    law: "alpha-agreement".into(),
                    witness: witness1("m", m),
                });
            }
            if graph_holds(&RecursionSpec::alpha(), m, &a.successor()) {
                local.push(Failure {
                    law: "alpha-functionality".into(),
                    witness: witness1("m", m),
                });
            }
            if !graph_holds(&RecursionSpec::beta(), m, bt.as_string()) {
                local.push(Failure {
                    law: "beta-agreement".into(),
                    witness: witness1("m", m),
                });
            }
            if graph_holds(&RecursionSpec::beta(), m, &bt.successor()) {
                local.push(Failure {
                    law: "beta-functionality".into(),
                    witness: witness1("m", m),
                });
            }
            local
        })
        .collect();
    b.bulk(4 * args.len() as u64, agreement_failures);

    // base and step clauses for small arguments
    for spec in [&alpha_spec, &beta_spec] {
        b.case(
            &format!("{}-base-a", spec.name),
            graph_holds(spec, &BinString::a(), &spec.p),
            || witness1("spec", &spec.name),
        );
        b.case(
            &format!("{}-base-b", spec.name),
            graph_holds(spec, &BinString::b(), &spec.q),
            || witness1("spec", &spec.name),
        );
        for m in all_strings(6) {
            let u = run_recursion(spec, &m);
            let step_ok = graph_holds(spec, &m.push_digit(DIGIT_A), &spec.step_a(&m, &u))
                && graph_holds(spec, &m.push_digit(DIGIT_B), &spec.step_b(&m, &u));
            b.case("step-clauses", step_ok, || {
                witness(&[("spec", &spec.name), ("m", &m)])
            });
        }
    }

    // certificates verify and mutations are rejected, for short arguments
    for spec in [&alpha_spec, &beta_spec] {
        for m in all_strings(4) {
            let cert = build_certificate(spec, &m);
            b.case(
                "certificate-verifies",
                check_comp(&cert.code.raw, &m, spec)
                    && check_min_comp(&cert.code.raw, &m, spec),
                || witness(&[("spec", &spec.name), ("m", &m)]),
            );
            let pairs = cert.pairs().expect("canonical members are pairs");
            for z in pairs.keys() {
                let mutated: Vec<BinString> = pairs
                    .iter()
                    .map(|(z2, v2)| {
                        if z2 == z {
                            encode_pair(z2, &v2.push_digit(DIGIT_B))
                        } else {
                            encode_pair(z2, v2)
                        }
                    })
                    .collect();
                let code = encode_set(&mutated);
                b.case(
                    "mutation-rejected",
                    !check_min_comp(&code.raw, &m, spec),
                    || witness(&[("spec", &spec.name), ("m", &m), ("index", z)]),
                );
            }
            // a closed superset is a computation but not minimal
            let fresh = m.push_digit(DIGIT_A).push_digit(DIGIT_A);
            let mut extended: Vec<BinString> =
                pairs.iter().map(|(z, v)| encode_pair(z, v)).collect();
            extended.push(encode_pair(&fresh, &BinString::b()));
            let code = encode_set(&extended);
            b.case(
                "superset-not-minimal",
                check_comp(&code.raw, &m, spec) && !check_min_comp(&code.raw, &m, spec),
                || witness(&[("spec", &spec.name), ("m", &m)]),
            );
        }
    }

    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_oracle() {
        assert_eq!(catalan(6), vec![1, 1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn census_passes_at_thirteen() {
        let report = ae_census(13);
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn codec_suite_passes_small() {
        let report = codec(9);
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn set_coding_passes_small() {
        let report = set_coding(9);
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn recursion_passes_small() {
        let report = recursion(5);
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn subset_enumeration_counts() {
        let pool = all_strings(2); // 6 strings
        assert_eq!(subsets_up_to(&pool, 3).len(), 1 + 6 + 15 + 20);
    }
}
