//! Axiom generators for the tree theory, its schematic weakening, the
//! concatenation theory, and the two bounded concatenation variants. Each
//! generator also comes in a labeled form so verification reports can name
//! the law an instance came from.

use crate::codec::TreeTerm;

use super::syntax::{Formula, ObjTerm};

fn v(name: &str) -> ObjTerm {
    ObjTerm::var(name)
}

/// `x B y`: x is a proper prefix, `∃w y = x*w` with a fresh witness.
fn begins(x: ObjTerm, y: ObjTerm, fresh: &str) -> Formula {
    Formula::exists(fresh, Formula::Eq(y, ObjTerm::star(x, v(fresh))))
}

/// `x E y`: x is a proper suffix.
fn ends(x: ObjTerm, y: ObjTerm, fresh: &str) -> Formula {
    Formula::exists(fresh, Formula::Eq(y, ObjTerm::star(v(fresh), x)))
}

/// The two-sided definitional substring formula used by the bounded
/// schemas: `x=y ∨ xBy ∨ xEy ∨ ∃z1z2 y=z1*(x*z2) ∨ ∃z1z2 y=(z1*x)*z2`,
/// with witnesses named after `tag` to avoid capture.
fn subp_expanded(x: ObjTerm, y: ObjTerm, tag: &str) -> Formula {
    let w = |i: usize| format!("{tag}{i}");
    Formula::or_all(vec![
        Formula::Eq(x.clone(), y.clone()),
        begins(x.clone(), y.clone(), &w(1)),
        ends(x.clone(), y.clone(), &w(2)),
        Formula::exists_many(
            [w(3), w(4)],
            Formula::Eq(
                y.clone(),
                ObjTerm::star(v(&w(3)), ObjTerm::star(x.clone(), v(&w(4)))),
            ),
        ),
        Formula::exists_many(
            [w(5), w(6)],
            Formula::Eq(y, ObjTerm::star(ObjTerm::star(v(&w(5)), x), v(&w(6)))),
        ),
    ])
}

/// The four axioms of the tree theory.
pub fn axioms_t_labeled() -> Vec<(String, Formula)> {
    let t1 = Formula::forall_many(
        ["x", "y"],
        Formula::not(Formula::Eq(ObjTerm::pair(v("x"), v("y")), ObjTerm::zero())),
    );
    let t2 = Formula::forall_many(
        ["x", "y", "z", "w"],
        Formula::imp(
            Formula::Eq(ObjTerm::pair(v("x"), v("y")), ObjTerm::pair(v("z"), v("w"))),
            Formula::and(Formula::Eq(v("x"), v("z")), Formula::Eq(v("y"), v("w"))),
        ),
    );
    let t3 = Formula::forall(
        "x",
        Formula::iff(
            Formula::SubT(v("x"), ObjTerm::zero()),
            Formula::Eq(v("x"), ObjTerm::zero()),
        ),
    );
    let t4 = Formula::forall_many(
        ["x", "y", "z"],
        Formula::iff(
            Formula::SubT(v("x"), ObjTerm::pair(v("y"), v("z"))),
            Formula::or_all(vec![
                Formula::Eq(v("x"), ObjTerm::pair(v("y"), v("z"))),
                Formula::SubT(v("x"), v("y")),
                Formula::SubT(v("x"), v("z")),
            ]),
        ),
    );
    vec![
        ("T1".into(), t1),
        ("T2".into(), t2),
        ("T3".into(), t3),
        ("T4".into(), t4),
    ]
}

pub fn axioms_t() -> Vec<Formula> {
    axioms_t_labeled().into_iter().map(|(_, f)| f).collect()
}

/// Tree terms as object terms of the tree signature.
pub fn tree_to_objterm(t: &TreeTerm) -> ObjTerm {
    match t {
        TreeTerm::Leaf => ObjTerm::zero(),
        TreeTerm::Node(l, r) => ObjTerm::pair(tree_to_objterm(l), tree_to_objterm(r)),
    }
}

/// Tree terms as their code terms over the concatenation signature:
/// leaf ↦ `a`, node ↦ `b*(l*r)`.
pub fn tree_to_code_term(t: &TreeTerm) -> ObjTerm {
    match t {
        TreeTerm::Leaf => ObjTerm::a(),
        TreeTerm::Node(l, r) => ObjTerm::star(
            ObjTerm::b(),
            ObjTerm::star(tree_to_code_term(l), tree_to_code_term(r)),
        ),
    }
}

/// Schematic weak tree theory: inequations between distinct variable-free
/// terms, and one explicit-subterm axiom per term, over all terms of depth
/// at most `depth`.
pub fn axioms_wt_labeled(depth: usize) -> Vec<(String, Formula)> {
    let terms = crate::codec::trees_up_to_depth(depth);
    let mut out = Vec::new();
    for i in 0..terms.len() {
        for j in i + 1..terms.len() {
            let f = Formula::not(Formula::Eq(
                tree_to_objterm(&terms[i]),
                tree_to_objterm(&terms[j]),
            ));
            out.push((format!("WT1[{},{}]", terms[i], terms[j]), f));
        }
    }
    for t in &terms {
        let subs = t.subterms();
        let body = Formula::iff(
            Formula::SubT(v("x"), tree_to_objterm(t)),
            Formula::or_all(
                subs.iter()
                    .map(|s| Formula::Eq(v("x"), tree_to_objterm(s)))
                    .collect(),
            ),
        );
        out.push((format!("WT2[{t}]"), Formula::forall("x", body)));
    }
    out
}

pub fn axioms_wt(depth: usize) -> Vec<Formula> {
    axioms_wt_labeled(depth).into_iter().map(|(_, f)| f).collect()
}

/// The concatenation theory: five axioms plus the successor axiom expanded
/// to a pure existence-and-uniqueness statement.
pub fn axioms_qt_plus_labeled() -> Vec<(String, Formula)> {
    let a = ObjTerm::a;
    let b = ObjTerm::b;
    let qt1 = Formula::forall_many(
        ["x", "y", "z"],
        Formula::Eq(
            ObjTerm::star(v("x"), ObjTerm::star(v("y"), v("z"))),
            ObjTerm::star(ObjTerm::star(v("x"), v("y")), v("z")),
        ),
    );
    let qt2 = Formula::forall_many(
        ["x", "y"],
        Formula::and(
            Formula::not(Formula::Eq(ObjTerm::star(v("x"), v("y")), a())),
            Formula::not(Formula::Eq(ObjTerm::star(v("x"), v("y")), b())),
        ),
    );
    let cancel = |l: ObjTerm, r: ObjTerm| {
        Formula::imp(Formula::Eq(l, r), Formula::Eq(v("x"), v("y")))
    };
    let qt3 = Formula::forall_many(
        ["x", "y"],
        Formula::and_all(vec![
            cancel(ObjTerm::star(v("x"), a()), ObjTerm::star(v("y"), a())),
            cancel(ObjTerm::star(v("x"), b()), ObjTerm::star(v("y"), b())),
            cancel(ObjTerm::star(a(), v("x")), ObjTerm::star(a(), v("y"))),
            cancel(ObjTerm::star(b(), v("x")), ObjTerm::star(b(), v("y"))),
        ]),
    );
    let qt4 = Formula::forall_many(
        ["x", "y"],
        Formula::and(
            Formula::not(Formula::Eq(
                ObjTerm::star(a(), v("x")),
                ObjTerm::star(b(), v("y")),
            )),
            Formula::not(Formula::Eq(
                ObjTerm::star(v("x"), a()),
                ObjTerm::star(v("y"), b()),
            )),
        ),
    );
    let qt5 = Formula::forall(
        "x",
        Formula::or_all(vec![
            Formula::Eq(v("x"), a()),
            Formula::Eq(v("x"), b()),
            Formula::and(
                Formula::exists(
                    "y",
                    Formula::or(
                        Formula::Eq(ObjTerm::star(a(), v("y")), v("x")),
                        Formula::Eq(ObjTerm::star(b(), v("y")), v("x")),
                    ),
                ),
                Formula::exists(
                    "z",
                    Formula::or(
                        Formula::Eq(ObjTerm::star(v("z"), a()), v("x")),
                        Formula::Eq(ObjTerm::star(v("z"), b()), v("x")),
                    ),
                ),
            ),
        ]),
    );
    // successor, with the function symbol eliminated. Only the
    // at-most-one half is stated: the witness for a string of maximal
    // length leaves any length-bounded range, so the existence half is not
    // a bounded-evaluable sentence; totality of the successor operation is
    // checked directly by the string-law suite.
    let succ_def = |y: &str| {
        Formula::or(
            Formula::and(Formula::Eq(v("x"), a()), Formula::Eq(v(y), b())),
            Formula::and(
                Formula::not(Formula::Eq(v("x"), a())),
                Formula::Eq(ObjTerm::star(v("x"), b()), v(y)),
            ),
        )
    };
    let qt6 = Formula::forall_many(
        ["x", "y", "z"],
        Formula::imp(
            Formula::and(succ_def("y"), succ_def("z")),
            Formula::Eq(v("y"), v("z")),
        ),
    );
    vec![
        ("QT1".into(), qt1),
        ("QT2".into(), qt2),
        ("QT3".into(), qt3),
        ("QT4".into(), qt4),
        ("QT5".into(), qt5),
        ("QT6".into(), qt6),
    ]
}

pub fn axioms_qt_plus() -> Vec<Formula> {
    axioms_qt_plus_labeled().into_iter().map(|(_, f)| f).collect()
}

/// The schematic theory over coded trees: inequations between distinct pool
/// codes, the decomposition axiom for every ordered pair of pool codes, and
/// the leaf axiom.
pub fn axioms_wqt_labeled(pool: &[TreeTerm]) -> Vec<(String, Formula)> {
    let mut out = Vec::new();
    for i in 0..pool.len() {
        for j in i + 1..pool.len() {
            if pool[i] == pool[j] {
                continue;
            }
            let f = Formula::not(Formula::Eq(
                tree_to_code_term(&pool[i]),
                tree_to_code_term(&pool[j]),
            ));
            out.push((format!("WQT1[{},{}]", pool[i], pool[j]), f));
        }
    }
    for s in pool {
        for t in pool {
            let code = ObjTerm::star(
                ObjTerm::b(),
                ObjTerm::star(tree_to_code_term(s), tree_to_code_term(t)),
            );
            let body = Formula::iff(
                Formula::SubStar(v("z"), code.clone()),
                Formula::or_all(vec![
                    Formula::Eq(v("z"), code),
                    Formula::SubStar(v("z"), tree_to_code_term(s)),
                    Formula::SubStar(v("z"), tree_to_code_term(t)),
                ]),
            );
            out.push((format!("WQT2[{s},{t}]"), Formula::forall("z", body)));
        }
    }
    out.push(("WQT3".into(), wqt3()));
    out
}

fn wqt3() -> Formula {
    Formula::forall(
        "z",
        Formula::iff(
            Formula::SubStar(v("z"), ObjTerm::a()),
            Formula::Eq(v("z"), ObjTerm::a()),
        ),
    )
}

pub fn axioms_wqt(pool: &[TreeTerm]) -> Vec<Formula> {
    axioms_wqt_labeled(pool).into_iter().map(|(_, f)| f).collect()
}

/// Which reading of the hybrid theory's schemas to generate. `Literal`
/// follows the displayed schemas (with the transitivity axiom in its
/// corrected reading — the displayed one has a free variable and a vacuous
/// conclusion, and is generated separately). `Repaired` additionally guards
/// the decomposition schema's two split variables by reflexivity, which
/// confines them to coded trees; the literal schema is refutable in the
/// standard model itself, so no model of string values can satisfy it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WqtStarVariant {
    Literal,
    Repaired,
}

/// The hybrid bounded theory over a pool of variable-free terms: per-term
/// bounded instances of the five concatenation axioms and the decomposition
/// schema, plus the three unbounded relational axioms.
pub fn axioms_wqt_star_labeled(
    pool: &[ObjTerm],
    variant: WqtStarVariant,
) -> Vec<(String, Formula)> {
    let mut out = Vec::new();
    for t in pool {
        assert!(t.is_ground(), "pool terms must be variable-free");
        out.push((format!("WQT*1[{}]", super::sexpr::print_term(t)), wqt_star_1(t)));
        out.push((format!("WQT*2[{}]", super::sexpr::print_term(t)), wqt_star_2(t)));
        out.push((format!("WQT*3[{}]", super::sexpr::print_term(t)), wqt_star_3(t)));
        out.push((format!("WQT*4[{}]", super::sexpr::print_term(t)), wqt_star_4(t)));
        out.push((format!("WQT*5[{}]", super::sexpr::print_term(t)), wqt_star_5(t)));
        out.push((
            format!("WQT*6[{}]", super::sexpr::print_term(t)),
            wqt_star_6(t, variant),
        ));
    }
    out.push(("WQT*7".into(), wqt3()));
    out.push((
        "WQT*8".into(),
        Formula::forall_many(
            ["x", "y"],
            Formula::imp(
                Formula::and(
                    Formula::SubStar(v("x"), v("y")),
                    Formula::SubStar(v("y"), v("x")),
                ),
                Formula::Eq(v("x"), v("y")),
            ),
        ),
    ));
    out.push(("WQT*9".into(), wqt_star_9_corrected()));
    out
}

/// Spec surface: the literal instance list with the corrected transitivity
/// axiom, 6n+3 formulas for a pool of n terms.
pub fn axioms_wqt_star(pool: &[ObjTerm]) -> Vec<Formula> {
    axioms_wqt_star_labeled(pool, WqtStarVariant::Literal)
        .into_iter()
        .map(|(_, f)| f)
        .collect()
}

fn wqt_star_1(t: &ObjTerm) -> Formula {
    let lhs = ObjTerm::star(v("x"), ObjTerm::star(v("y"), v("z")));
    let rhs = ObjTerm::star(ObjTerm::star(v("x"), v("y")), v("z"));
    Formula::forall_many(
        ["x", "y", "z"],
        Formula::imp(
            Formula::or(
                subp_expanded(lhs.clone(), t.clone(), "w"),
                subp_expanded(rhs.clone(), t.clone(), "u"),
            ),
            Formula::Eq(lhs, rhs),
        ),
    )
}

fn wqt_star_2(t: &ObjTerm) -> Formula {
    let xy = ObjTerm::star(v("x"), v("y"));
    Formula::forall_many(
        ["x", "y"],
        Formula::imp(
            subp_expanded(xy.clone(), t.clone(), "w"),
            Formula::and(
                Formula::not(Formula::Eq(xy.clone(), ObjTerm::a())),
                Formula::not(Formula::Eq(xy, ObjTerm::b())),
            ),
        ),
    )
}

fn wqt_star_3(t: &ObjTerm) -> Formula {
    // four bounded cancellation conjuncts; the displayed schema's fourth
    // conjunct bounds y*b (its "x*y" is a typo)
    let conj = |l: ObjTerm, r: ObjTerm, tag1: &str, tag2: &str| {
        Formula::imp(
            Formula::and(
                subp_expanded(l.clone(), t.clone(), tag1),
                subp_expanded(r.clone(), t.clone(), tag2),
            ),
            Formula::imp(Formula::Eq(l, r), Formula::Eq(v("x"), v("y"))),
        )
    };
    let a = ObjTerm::a;
    let b = ObjTerm::b;
    Formula::forall_many(
        ["x", "y"],
        Formula::and_all(vec![
            conj(ObjTerm::star(a(), v("x")), ObjTerm::star(a(), v("y")), "u", "w"),
            conj(ObjTerm::star(b(), v("x")), ObjTerm::star(b(), v("y")), "p", "q"),
            conj(ObjTerm::star(v("x"), a()), ObjTerm::star(v("y"), a()), "r", "s"),
            conj(ObjTerm::star(v("x"), b()), ObjTerm::star(v("y"), b()), "m", "n"),
        ]),
    )
}

fn wqt_star_4(t: &ObjTerm) -> Formula {
    let conj = |l: ObjTerm, r: ObjTerm, tag1: &str, tag2: &str| {
        Formula::imp(
            Formula::and(
                subp_expanded(l.clone(), t.clone(), tag1),
                subp_expanded(r.clone(), t.clone(), tag2),
            ),
            Formula::not(Formula::Eq(l, r)),
        )
    };
    let a = ObjTerm::a;
    let b = ObjTerm::b;
    Formula::forall_many(
        ["x", "y"],
        Formula::and(
            conj(ObjTerm::star(a(), v("x")), ObjTerm::star(b(), v("y")), "u", "w"),
            conj(ObjTerm::star(v("x"), a()), ObjTerm::star(v("y"), b()), "p", "q"),
        ),
    )
}

fn wqt_star_5(t: &ObjTerm) -> Formula {
    let a = ObjTerm::a;
    let b = ObjTerm::b;
    Formula::forall(
        "x",
        Formula::imp(
            subp_expanded(v("x"), t.clone(), "w"),
            Formula::or_all(vec![
                Formula::Eq(v("x"), a()),
                Formula::Eq(v("x"), b()),
                Formula::and(
                    Formula::or(
                        begins(a(), v("x"), "u1"),
                        begins(b(), v("x"), "u2"),
                    ),
                    Formula::or(ends(a(), v("x"), "u3"), ends(b(), v("x"), "u4")),
                ),
            ]),
        ),
    )
}

fn wqt_star_6(t: &ObjTerm, variant: WqtStarVariant) -> Formula {
    let byz = ObjTerm::star(ObjTerm::b(), ObjTerm::star(v("y"), v("z")));
    let body = Formula::forall(
        "x",
        Formula::iff(
            Formula::SubStar(v("x"), byz.clone()),
            Formula::or_all(vec![
                Formula::Eq(v("x"), byz.clone()),
                Formula::SubStar(v("x"), v("y")),
                Formula::SubStar(v("x"), v("z")),
            ]),
        ),
    );
    let guard = match variant {
        WqtStarVariant::Literal => Formula::SubStar(byz.clone(), t.clone()),
        WqtStarVariant::Repaired => Formula::and_all(vec![
            Formula::SubStar(v("y"), v("y")),
            Formula::SubStar(v("z"), v("z")),
            Formula::SubStar(byz.clone(), t.clone()),
        ]),
    };
    Formula::forall_many(["y", "z"], Formula::imp(guard, body))
}

fn wqt_star_9_corrected() -> Formula {
    Formula::forall_many(
        ["x", "y", "z"],
        Formula::imp(
            Formula::and(
                Formula::SubStar(v("x"), v("y")),
                Formula::SubStar(v("y"), v("z")),
            ),
            Formula::SubStar(v("x"), v("z")),
        ),
    )
}

/// The displayed transitivity axiom taken literally has `z` free and
/// repeats an antecedent conjunct as its conclusion; its universal closure
/// is generated here for the record.
pub fn wqt_star_9_literal_closure() -> Formula {
    Formula::forall_many(
        ["z", "x", "y"],
        Formula::imp(
            Formula::and(
                Formula::SubStar(v("x"), v("y")),
                Formula::SubStar(v("y"), v("z")),
            ),
            Formula::SubStar(v("y"), v("z")),
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::syntax::{check_sorted, Signature};

    #[test]
    fn tree_axiom_census_and_closedness() {
        let axs = axioms_t_labeled();
        assert_eq!(axs.len(), 4);
        for (name, f) in &axs {
            assert!(f.is_closed(), "{name}");
            assert!(check_sorted(f, Signature::Trees).is_ok(), "{name}");
        }
    }

    #[test]
    fn wt_census() {
        // depth 0: a single explicit-subterm axiom, no inequations
        assert_eq!(axioms_wt(0).len(), 1);
        // depth 1: two terms, one inequation, two subterm axioms
        let d1 = axioms_wt_labeled(1);
        assert_eq!(d1.len(), 3);
        assert_eq!(d1.iter().filter(|(n, _)| n.starts_with("WT1")).count(), 1);
        for (name, f) in &d1 {
            assert!(f.is_closed(), "{name}");
        }
    }

    #[test]
    fn qt_plus_census() {
        let axs = axioms_qt_plus_labeled();
        assert_eq!(axs.len(), 6);
        for (name, f) in &axs {
            assert!(f.is_closed(), "{name}");
            assert!(check_sorted(f, Signature::Concat).is_ok(), "{name}");
        }
    }

    #[test]
    fn wqt_census() {
        use crate::codec::TreeTerm;
        let leaf = TreeTerm::Leaf;
        let node = TreeTerm::node(TreeTerm::Leaf, TreeTerm::Leaf);
        // pool {0}: the leaf axiom and one decomposition instance
        assert_eq!(axioms_wqt(std::slice::from_ref(&leaf)).len(), 2);
        let two = axioms_wqt_labeled(&[leaf, node]);
        assert_eq!(two.iter().filter(|(n, _)| n.starts_with("WQT1")).count(), 1);
        assert_eq!(two.iter().filter(|(n, _)| n.starts_with("WQT2")).count(), 4);
        for (name, f) in &two {
            assert!(f.is_closed(), "{name}");
            assert!(check_sorted(f, Signature::ConcatSubStar).is_ok(), "{name}");
        }
    }

    #[test]
    fn wqt_star_census() {
        let pool = [
            ObjTerm::star(ObjTerm::a(), ObjTerm::b()),
            ObjTerm::b(),
        ];
        for variant in [WqtStarVariant::Literal, WqtStarVariant::Repaired] {
            let axs = axioms_wqt_star_labeled(&pool, variant);
            assert_eq!(axs.len(), 6 * pool.len() + 3);
            for (name, f) in &axs {
                assert!(f.is_closed(), "{name}: {:?}", f.free_vars());
                assert!(check_sorted(f, Signature::ConcatSubStar).is_ok(), "{name}");
            }
        }
        assert_eq!(axioms_wqt_star(&pool).len(), 15);
        assert!(wqt_star_9_literal_closure().is_closed());
    }
}
