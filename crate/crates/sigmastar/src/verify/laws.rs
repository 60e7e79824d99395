//! Exhaustive law suites for the string algebra and for tally arithmetic.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::report::{witness, Failure, ReportBuilder, VerificationReport};
use crate::strings::{addtally, all_strings, nat_to_tally, tally_to_nat, BTally, BinString};

fn w2(x: &BinString, y: &BinString) -> std::collections::BTreeMap<String, String> {
    witness(&[("x", x), ("y", y)])
}

/// String-algebra laws: the five concatenation axioms plus successor
/// functionality, tractability of every string, and the part-of and
/// initial/end-segment decomposition laws.
pub fn strings_laws(bound: usize) -> VerificationReport {
    let mut b = ReportBuilder::new("strings-laws", bound as u64);
    let u = all_strings(bound);
    let n = u.len() as u64;

    // associativity, checked three ways up to the bound
    let qt1_failures: Vec<Failure> = u
        .par_iter()
        .flat_map_iter(|x| {
            let mut local = Vec::new();
            for y in &u {
                let xy = x.concat(y);
                for z in &u {
                    let l = x.concat(&y.concat(z));
                    let r = xy.concat(z);
                    if l != r {
                        local.push(Failure {
                            law: "QT1".into(),
                            witness: witness(&[("x", x), ("y", y), ("z", z)]),
                        });
                    }
                }
            }
            local
        })
        .collect();
    b.bulk(n * n * n, qt1_failures);

    for x in &u {
        for y in &u {
            let xy = x.concat(y);
            // no product is a digit
            b.case("QT2", xy != BinString::a() && xy != BinString::b(), || w2(x, y));
            // cancellation of an outer digit
            let qt3 = [
                (x.push_digit(b'a'), y.push_digit(b'a')),
                (x.push_digit(b'b'), y.push_digit(b'b')),
                (BinString::a().concat(x), BinString::a().concat(y)),
                (BinString::b().concat(x), BinString::b().concat(y)),
            ]
            .iter()
            .all(|(l, r)| (l == r) == (x == y));
            b.case("QT3", qt3, || w2(x, y));
            // products starting or ending with different digits differ
            let qt4 = BinString::a().concat(x) != BinString::b().concat(y)
                && x.push_digit(b'a') != y.push_digit(b'b');
            b.case("QT4", qt4, || w2(x, y));
        }
    }

    for x in &u {
        // every string is a digit or has a digit prefix and a digit suffix
        let qt5 = x.len() == 1 || {
            let d = x.digits();
            let head = BinString::from_bytes(vec![d[0]]);
            let tail = BinString::from_bytes(d[1..].to_vec());
            let front = BinString::from_bytes(d[..d.len() - 1].to_vec());
            let last = BinString::from_bytes(vec![d[d.len() - 1]]);
            head.concat(&tail) == *x && front.concat(&last) == *x
        };
        b.case("QT5", qt5, || witness(&[("x", x)]));
        // the defining disjunction picks out exactly the successor; the
        // witness leaves the range only for strings of maximal length
        let s = x.successor();
        let matches = u
            .iter()
            .filter(|y| {
                (*x == BinString::a() && **y == BinString::b())
                    || (*x != BinString::a() && x.push_digit(b'b') == **y)
            })
            .count();
        let expected = usize::from(s.len() <= bound);
        b.case("QT6-functional", matches == expected, || witness(&[("x", x)]));
        // tractability: the ordering is irreflexive, so the strict order
        // coincides with the raw relation
        b.case("I0", !x.r_precedes(x), || witness(&[("x", x)]));
    }

    // 3.2: successor and tallies
    for y in &u {
        if y.is_tally_b() {
            b.case("3.2a", y.successor().is_tally_b(), || witness(&[("y", y)]));
        }
        let rhs = *y == BinString::b()
            || u.iter().any(|y1| y1.is_tally_b() && y1.successor() == *y);
        b.case("3.2b", y.is_tally_b() == rhs, || witness(&[("y", y)]));
    }
    for v in &u {
        if !v.is_tally_b() {
            continue;
        }
        for x in &u {
            if x.r_precedes(v) {
                b.case("3.2c", x.successor().r_le(v), || w2(x, v));
            }
            b.case(
                "3.2d",
                x.r_precedes(v) == x.successor().r_precedes(&v.successor()),
                || w2(x, v),
            );
        }
    }

    // 3.3: tally closure, digit commutation, successor shifting
    let tallies: Vec<BinString> = (1..=bound).map(|k| BTally::of_len(k).into_inner()).collect();
    for x in &tallies {
        b.case(
            "3.3c",
            x.concat(&BinString::b()) == BinString::b().concat(x),
            || witness(&[("u", x)]),
        );
        for y in &tallies {
            b.case("3.3a", x.concat(y).is_tally_b(), || w2(x, y));
            b.case("3.3b", x.r_le(y) || y.r_le(x), || w2(x, y));
            let s = x.concat(y).successor();
            b.case(
                "3.3d",
                x.successor().concat(y) == s && x.concat(&y.successor()) == s,
                || w2(x, y),
            );
            b.case("3.3e", x.concat(y) == y.concat(x), || w2(x, y));
        }
    }

    // 3.6: the part-of relation behaves like containment
    for z in &u {
        let subs_z = substrings(z);
        for y in &subs_z {
            for x in substrings(y) {
                b.case("3.6a", x.is_substring_of(z), || {
                    witness(&[("x", &x), ("y", y), ("z", z)])
                });
            }
        }
        b.case("3.6b", !z.ends(z), || witness(&[("x", z)]));
        // no proper inner decomposition equals the whole
        let d = z.digits();
        let mut ok = true;
        for i in 1..d.len() {
            for j in i + 1..d.len() {
                if &d[i..j] == d {
                    ok = false;
                }
            }
        }
        b.case("3.6c", ok, || witness(&[("x", z)]));
    }
    for x in &u {
        for y in &u {
            b.case(
                "3.6d",
                !(x.is_substring_of(y) && y.is_substring_of(x)) || x == y,
                || w2(x, y),
            );
            let xy = x.concat(y);
            let yx = y.concat(x);
            b.case(
                "3.6e",
                !xy.is_substring_of(x) && !yx.is_substring_of(x),
                || w2(x, y),
            );
        }
    }

    // 3.7: decomposition of initial segments, end segments and parts of a
    // concatenation
    let seg_failures: Vec<Failure> = u
        .par_iter()
        .flat_map_iter(|y| {
            let mut local = Vec::new();
            let mut push = |law: &str, z: &BinString| {
                local.push(Failure {
                    law: law.into(),
                    witness: w2(y, z),
                });
            };
            // (a)/(d): prefixes and suffixes are linearly ordered
            let prefixes: Vec<BinString> = y.proper_prefixes().collect();
            for u1 in &prefixes {
                for v1 in &prefixes {
                    if !(u1 == v1 || u1.begins(v1) || v1.begins(u1)) {
                        push("3.7a", y);
                    }
                }
            }
            let suffixes: Vec<BinString> = y.proper_suffixes().collect();
            for u1 in &suffixes {
                for v1 in &suffixes {
                    if !(u1 == v1 || u1.ends(v1) || v1.ends(u1)) {
                        push("3.7d", y);
                    }
                }
            }
            for z in &u {
                let yz = y.concat(z);
                // (b) prefixes of a product
                let lhs: BTreeSet<BinString> = yz.proper_prefixes().collect();
                let mut rhs: BTreeSet<BinString> = y.proper_prefixes().collect();
                rhs.insert(y.clone());
                for w in z.proper_prefixes() {
                    rhs.insert(y.concat(&w));
                }
                if lhs != rhs {
                    push("3.7b", z);
                }
                // (e) suffixes of a product
                let lhs_e: BTreeSet<BinString> = yz.proper_suffixes().collect();
                let mut rhs_e: BTreeSet<BinString> = z.proper_suffixes().collect();
                rhs_e.insert(z.clone());
                for w in y.proper_suffixes() {
                    rhs_e.insert(w.concat(z));
                }
                if lhs_e != rhs_e {
                    push("3.7e", z);
                }
                // (c) prefixes of b*(y*z), with the fourth disjunct reading
                // b*(y*w) for w an initial segment of z
                let byz = BinString::b().concat(&yz);
                let lhs_c: BTreeSet<BinString> = byz.proper_prefixes().collect();
                let mut rhs_c: BTreeSet<BinString> = BTreeSet::new();
                rhs_c.insert(BinString::b());
                let by = BinString::b().concat(y);
                for p in by.proper_prefixes() {
                    if p.len() >= 2 {
                        rhs_c.insert(p);
                    }
                }
                rhs_c.insert(by.clone());
                for w in z.proper_prefixes() {
                    rhs_c.insert(by.concat(&w));
                }
                if lhs_c != rhs_c {
                    push("3.7c", z);
                }
                // (f) inner occurrences split over the seam
                let d = yz.digits();
                'outer: for i in 1..d.len() {
                    for j in i + 1..d.len() {
                        let x = BinString::from_bytes(d[i..j].to_vec());
                        let ok = x.is_substring_of(y)
                            || x.is_substring_of(z)
                            || (i < y.len()
                                && j > y.len()
                                && y.proper_suffixes().any(|y1| {
                                    z.proper_prefixes().any(|z1| y1.concat(&z1) == x)
                                }));
                        if !ok {
                            push("3.7f", z);
                            break 'outer;
                        }
                    }
                }
                // (g) parts of a product: both inclusions as a set identity
                let lhs_g = substrings(&yz);
                let mut rhs_g: BTreeSet<BinString> = BTreeSet::new();
                rhs_g.insert(yz.clone());
                rhs_g.extend(substrings(y));
                rhs_g.extend(substrings(z));
                for y1 in y.proper_suffixes() {
                    rhs_g.insert(y1.concat(z));
                    for z1 in z.proper_prefixes() {
                        rhs_g.insert(y1.concat(&z1));
                    }
                }
                for z1 in z.proper_prefixes() {
                    rhs_g.insert(y.concat(&z1));
                }
                if lhs_g != rhs_g {
                    push("3.7g", z);
                }
                // (h) parts of b*(y*z)
                let mut rhs_h: BTreeSet<BinString> = BTreeSet::new();
                rhs_h.insert(byz.clone());
                rhs_h.insert(BinString::b());
                rhs_h.extend(substrings(&yz));
                for u2 in yz.proper_prefixes() {
                    rhs_h.insert(BinString::b().concat(&u2));
                }
                if !substrings(&byz).is_subset(&rhs_h) {
                    push("3.7h", z);
                }
            }
            local
        })
        .collect();
    b.bulk(n * n, seg_failures);

    b.finish()
}

fn substrings(x: &BinString) -> BTreeSet<BinString> {
    let d = x.digits();
    let mut out = BTreeSet::new();
    for i in 0..d.len() {
        for j in i + 1..=d.len() {
            out.insert(BinString::from_bytes(d[i..j].to_vec()));
        }
    }
    out
}

/// Reading of the tally-addition predicate exactly as defined, used as the
/// independent relational oracle for the functional implementation.
fn addtally_rel(x: &BinString, y: &BinString, z: &BinString) -> bool {
    let tallies = x.is_tally_b() && y.is_tally_b();
    if !tallies {
        return *z == BinString::b();
    }
    let b = BinString::b();
    if *x == b && z == y {
        return true;
    }
    if *y == b && z == x {
        return true;
    }
    // x = Sx1, y = Sy1, z = x * y1
    if x.len() >= 2 && y.len() >= 2 {
        let y1 = BTally::of_len(y.len() - 1);
        return *z == x.concat(&y1);
    }
    false
}

/// Tally arithmetic: the addition laws and agreement with natural-number
/// addition under the tally denotation.
pub fn tally_arith(bound: usize) -> VerificationReport {
    let mut b = ReportBuilder::new("tally-arith", bound as u64);
    let tallies: Vec<BinString> = (1..=bound).map(|k| BTally::of_len(k).into_inner()).collect();

    // 3.4(a): the defining relation is single-valued and matches the
    // function, over all short strings including non-tallies
    let mixed = all_strings(4);
    for x in &mixed {
        for y in &mixed {
            let f = addtally(x, y);
            let candidates: Vec<&BinString> = mixed
                .iter()
                .chain(tallies.iter())
                .filter(|z| addtally_rel(x, y, z))
                .collect();
            let ok = candidates.iter().all(|z| **z == *f)
                && addtally_rel(x, y, f.as_string());
            b.case("3.4a", ok, || w2(x, y));
        }
    }

    let bb: BinString = "bb".parse().unwrap();
    for x in &tallies {
        b.case("3.4b", *addtally(x, &BinString::b()) == *x, || witness(&[("x", x)]));
        b.case("3.4c", *addtally(&BinString::b(), x) == *x, || witness(&[("x", x)]));
        b.case("3.4d", *addtally(x, &bb) == x.successor(), || witness(&[("x", x)]));
        b.case("3.5c", *addtally(&bb, x) == x.successor(), || witness(&[("x", x)]));
        for y in &tallies {
            b.case(
                "3.4e",
                *addtally(x, &y.successor()) == addtally(x, y).successor(),
                || w2(x, y),
            );
            b.case(
                "3.5d",
                *addtally(&x.successor(), y) == addtally(x, y).successor(),
                || w2(x, y),
            );
            b.case("3.5g", addtally(x, y) == addtally(y, x), || w2(x, y));
            // subtraction characterization of the ordering
            let le = x.r_le(y);
            let wit = tallies.iter().any(|z| *addtally(z, x) == *y);
            b.case("3.5f", le == wit, || w2(x, y));
            // agreement with natural addition
            b.case(
                "nat-agreement",
                tally_to_nat(addtally(x, y).as_string()).unwrap()
                    == tally_to_nat(x).unwrap() + tally_to_nat(y).unwrap(),
                || w2(x, y),
            );
            for z in &tallies {
                b.case(
                    "3.5b",
                    !y.r_le(z) || addtally(x, y).r_le(addtally(x, z).as_string()),
                    || witness(&[("x", x), ("u", y), ("v", z)]),
                );
                b.case(
                    "3.5e",
                    !(addtally(x, y) == addtally(x, z)) || y == z,
                    || witness(&[("x", x), ("y", y), ("z", z)]),
                );
                b.case(
                    "3.5h",
                    *addtally(addtally(x, y).as_string(), z)
                        == *addtally(x, addtally(y, z).as_string()),
                    || witness(&[("x", x), ("y", y), ("z", z)]),
                );
            }
        }
    }

    // 3.5(i): x1+x2 = S(y1+y2) and x1 <= y1 force Sy2 <= x2
    for x1 in &tallies {
        for x2 in &tallies {
            for y1 in &tallies {
                for y2 in &tallies {
                    let z1 = addtally(x1, x2);
                    let z2 = addtally(y1, y2);
                    if *z1 == z2.successor() && x1.r_le(y1) {
                        b.case("3.5i", y2.successor().r_le(x2), || {
                            witness(&[("x1", x1), ("x2", x2), ("y1", y1), ("y2", y2)])
                        });
                    }
                }
            }
        }
    }

    // nat roundtrip across the whole range
    for k in 0..bound as u64 {
        b.case(
            "nat-roundtrip",
            tally_to_nat(nat_to_tally(k).as_string()) == Ok(k),
            || witness(&[("n", &k)]),
        );
    }

    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strings_laws_pass_at_default_bound() {
        let report = strings_laws(6);
        assert!(report.passed(), "{:?}", report.failures);
        assert!(report.cases > 1_000_000);
    }

    #[test]
    fn tally_arith_passes() {
        let report = tally_arith(10);
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn relational_oracle_matches_function_on_tallies() {
        for m in 1..=6usize {
            for n in 1..=6usize {
                let x = BTally::of_len(m).into_inner();
                let y = BTally::of_len(n).into_inner();
                assert!(addtally_rel(&x, &y, addtally(&x, &y).as_string()));
            }
        }
        let ab: BinString = "ab".parse().unwrap();
        assert!(addtally_rel(&ab, &BinString::b(), &BinString::b()));
    }
}
