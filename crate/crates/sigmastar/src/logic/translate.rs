//! The two interpretation translations out of the tree signature: into the
//! concatenation signature (constant 0 becomes the digit a, pairing becomes
//! `b*(s*t)`, the subtree relation becomes the substring relation, and
//! quantifiers are relativized to the almost-even domain atom), and into
//! the extended signature (subtree becomes the coded-subtree relation and
//! the domain atom becomes the shape atom).

use super::syntax::{check_sorted, ConstSym, Formula, ObjTerm, OpSym, Signature, SortError};

/// Which target the tree vocabulary is translated into.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Target {
    Concat,
    ConcatSubStar,
}

fn translate_term(t: &ObjTerm) -> ObjTerm {
    match t {
        ObjTerm::Var(v) => ObjTerm::Var(v.clone()),
        ObjTerm::Const(ConstSym::Zero) => ObjTerm::a(),
        ObjTerm::Const(c) => ObjTerm::Const(*c),
        ObjTerm::App(OpSym::PairT, l, r) => ObjTerm::star(
            ObjTerm::b(),
            ObjTerm::star(translate_term(l), translate_term(r)),
        ),
        ObjTerm::App(OpSym::Star, l, r) => {
            ObjTerm::star(translate_term(l), translate_term(r))
        }
    }
}

fn domain_atom(target: Target, t: ObjTerm) -> Formula {
    match target {
        Target::Concat => Formula::Dom(t),
        Target::ConcatSubStar => Formula::TStar(t),
    }
}

fn translate_formula(f: &Formula, target: Target) -> Formula {
    match f {
        Formula::Eq(s, t) => Formula::Eq(translate_term(s), translate_term(t)),
        Formula::SubT(s, t) => {
            let (s, t) = (translate_term(s), translate_term(t));
            match target {
                Target::Concat => Formula::SubP(s, t),
                Target::ConcatSubStar => Formula::SubStar(s, t),
            }
        }
        Formula::SubStar(_, _) | Formula::SubP(_, _) | Formula::Dom(_) | Formula::TStar(_) => {
            unreachable!("input is checked to be tree-sorted")
        }
        Formula::Not(g) => Formula::not(translate_formula(g, target)),
        Formula::And(l, r) => Formula::and(
            translate_formula(l, target),
            translate_formula(r, target),
        ),
        Formula::Or(l, r) => Formula::or(
            translate_formula(l, target),
            translate_formula(r, target),
        ),
        Formula::Imp(l, r) => Formula::imp(
            translate_formula(l, target),
            translate_formula(r, target),
        ),
        Formula::Iff(l, r) => Formula::iff(
            translate_formula(l, target),
            translate_formula(r, target),
        ),
        Formula::ForAll(v, g) => Formula::forall(
            v.clone(),
            Formula::imp(
                domain_atom(target, ObjTerm::var(v.clone())),
                translate_formula(g, target),
            ),
        ),
        Formula::Exists(v, g) => Formula::exists(
            v.clone(),
            Formula::and(
                domain_atom(target, ObjTerm::var(v.clone())),
                translate_formula(g, target),
            ),
        ),
        Formula::ExistsUnique(vs, g) => {
            let mut parts: Vec<Formula> = vs
                .iter()
                .map(|v| domain_atom(target, ObjTerm::var(v.clone())))
                .collect();
            parts.push(translate_formula(g, target));
            Formula::ExistsUnique(vs.clone(), Box::new(Formula::and_all(parts)))
        }
    }
}

/// Translates a tree-sorted formula into the concatenation signature.
pub fn translate_t(f: &Formula) -> Result<Formula, SortError> {
    check_sorted(f, Signature::Trees)?;
    Ok(translate_formula(f, Target::Concat))
}

/// Translates a tree-sorted formula into the extended signature.
pub fn translate_wt(f: &Formula) -> Result<Formula, SortError> {
    check_sorted(f, Signature::Trees)?;
    Ok(translate_formula(f, Target::ConcatSubStar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::sexpr::{parse_formula, print_formula};
    use crate::logic::theories::axioms_t_labeled;

    #[test]
    fn atom_translations() {
        let f = parse_formula("(= (zero) (zero))").unwrap();
        assert_eq!(print_formula(&translate_t(&f).unwrap()), "(= (a) (a))");

        let pair = parse_formula("(subt x (pair y z))").unwrap();
        assert_eq!(
            print_formula(&translate_t(&pair).unwrap()),
            "(subp x (star (b) (star y z)))"
        );
        assert_eq!(
            print_formula(&translate_wt(&pair).unwrap()),
            "(substar x (star (b) (star y z)))"
        );
    }

    #[test]
    fn quantifiers_are_relativized() {
        let t3 = &axioms_t_labeled()[2].1;
        let tr = translate_t(t3).unwrap();
        assert_eq!(
            print_formula(&tr),
            "(forall (x) (imp (dom x) (iff (subp x (a)) (= x (a)))))"
        );
        let t1 = &axioms_t_labeled()[0].1;
        assert_eq!(
            print_formula(&translate_t(t1).unwrap()),
            "(forall (x) (imp (dom x) (forall (y) (imp (dom y) \
             (not (= (star (b) (star x y)) (a)))))))"
        );
    }

    #[test]
    fn translation_preserves_connective_shape() {
        fn shape(f: &Formula) -> String {
            match f {
                Formula::Eq(..) | Formula::SubT(..) | Formula::SubStar(..)
                | Formula::SubP(..) | Formula::Dom(..) | Formula::TStar(..) => "A".into(),
                Formula::Not(g) => format!("N{}", shape(g)),
                Formula::And(l, r) => format!("C{}{}", shape(l), shape(r)),
                Formula::Or(l, r) => format!("D{}{}", shape(l), shape(r)),
                Formula::Imp(l, r) => format!("I{}{}", shape(l), shape(r)),
                Formula::Iff(l, r) => format!("B{}{}", shape(l), shape(r)),
                Formula::ForAll(_, g) | Formula::Exists(_, g) => format!("Q{}", shape(g)),
                Formula::ExistsUnique(_, g) => format!("U{}", shape(g)),
            }
        }
        // after stripping the one guard added at each binder, the shape is
        // unchanged
        fn strip_guards(f: &Formula) -> Formula {
            match f {
                Formula::ForAll(v, g) => match g.as_ref() {
                    Formula::Imp(_, body) => Formula::forall(v.clone(), strip_guards(body)),
                    _ => panic!("missing guard"),
                },
                Formula::Exists(v, g) => match g.as_ref() {
                    Formula::And(_, body) => Formula::exists(v.clone(), strip_guards(body)),
                    _ => panic!("missing guard"),
                },
                Formula::Not(g) => Formula::not(strip_guards(g)),
                Formula::And(l, r) => Formula::and(strip_guards(l), strip_guards(r)),
                Formula::Or(l, r) => Formula::or(strip_guards(l), strip_guards(r)),
                Formula::Imp(l, r) => Formula::imp(strip_guards(l), strip_guards(r)),
                Formula::Iff(l, r) => Formula::iff(strip_guards(l), strip_guards(r)),
                other => other.clone(),
            }
        }
        for (name, ax) in axioms_t_labeled() {
            let tr = translate_t(&ax).unwrap();
            assert_eq!(shape(&strip_guards(&tr)), shape(&ax), "{name}");
        }
    }

    #[test]
    fn non_tree_input_is_a_sort_error() {
        let f = parse_formula("(subp x y)").unwrap();
        assert!(translate_t(&f).is_err());
        let g = parse_formula("(= (a) (a))").unwrap();
        assert!(translate_t(&g).is_err());
    }
}
