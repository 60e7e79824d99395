//! First-order syntax shared by the three signatures: the tree signature
//! (constant 0, pairing, subtree relation), the concatenation signature
//! (digits a and b, star, substring relation) and its extension with the
//! coded-subtree relation.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Constant symbols. `Zero` belongs to the tree signature, the digits to
/// the concatenation signatures.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ConstSym {
    Zero,
    DigitA,
    DigitB,
}

/// Binary operation symbols: tree pairing and concatenation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum OpSym {
    PairT,
    Star,
}

/// Object-level terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ObjTerm {
    Var(String),
    Const(ConstSym),
    App(OpSym, Box<ObjTerm>, Box<ObjTerm>),
}

impl ObjTerm {
    pub fn var(name: impl Into<String>) -> Self {
        ObjTerm::Var(name.into())
    }

    pub fn zero() -> Self {
        ObjTerm::Const(ConstSym::Zero)
    }

    pub fn a() -> Self {
        ObjTerm::Const(ConstSym::DigitA)
    }

    pub fn b() -> Self {
        ObjTerm::Const(ConstSym::DigitB)
    }

    pub fn pair(l: ObjTerm, r: ObjTerm) -> Self {
        ObjTerm::App(OpSym::PairT, Box::new(l), Box::new(r))
    }

    pub fn star(l: ObjTerm, r: ObjTerm) -> Self {
        ObjTerm::App(OpSym::Star, Box::new(l), Box::new(r))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            ObjTerm::Var(_) => false,
            ObjTerm::Const(_) => true,
            ObjTerm::App(_, l, r) => l.is_ground() && r.is_ground(),
        }
    }

    pub fn free_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            ObjTerm::Var(v) => {
                out.insert(v.clone());
            }
            ObjTerm::Const(_) => {}
            ObjTerm::App(_, l, r) => {
                l.free_vars(out);
                r.free_vars(out);
            }
        }
    }

    /// Number of occurrences of the variable in the term.
    pub fn occurrences(&self, var: &str) -> usize {
        match self {
            ObjTerm::Var(v) => usize::from(v == var),
            ObjTerm::Const(_) => 0,
            ObjTerm::App(_, l, r) => l.occurrences(var) + r.occurrences(var),
        }
    }

    /// Star-depth of the term, counting nested applications.
    pub fn depth(&self) -> usize {
        match self {
            ObjTerm::Var(_) | ObjTerm::Const(_) => 0,
            ObjTerm::App(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }
}

/// Formulas over the object terms. The substring relation is kept atomic so
/// the bounded evaluator can decide it directly; the five-disjunct
/// definitional expansion is produced where an axiom schema calls for it.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    Eq(ObjTerm, ObjTerm),
    /// Subtree relation of the tree signature.
    SubT(ObjTerm, ObjTerm),
    /// Coded-subtree relation of the extended concatenation signature.
    SubStar(ObjTerm, ObjTerm),
    /// Substring relation (equality allowed).
    SubP(ObjTerm, ObjTerm),
    /// Domain atom of the tree-in-strings interpretation; holds of the
    /// almost-even strings.
    Dom(ObjTerm),
    /// Domain atom of the tree-shape interpretation; holds of `a` and of
    /// anything of the form `b*(y*z)`.
    TStar(ObjTerm),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    ForAll(String, Box<Formula>),
    Exists(String, Box<Formula>),
    /// Exactly-one over a block of variables, read as
    /// `∃xs(φ & ∀xs'(φ' → xs'=xs))`.
    ExistsUnique(Vec<String>, Box<Formula>),
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    pub fn forall(v: impl Into<String>, f: Formula) -> Formula {
        Formula::ForAll(v.into(), Box::new(f))
    }

    pub fn forall_many<I: IntoIterator<Item = S>, S: Into<String>>(vs: I, f: Formula) -> Formula {
        let names: Vec<String> = vs.into_iter().map(Into::into).collect();
        names
            .into_iter()
            .rev()
            .fold(f, |acc, v| Formula::ForAll(v, Box::new(acc)))
    }

    pub fn exists(v: impl Into<String>, f: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(f))
    }

    pub fn exists_many<I: IntoIterator<Item = S>, S: Into<String>>(vs: I, f: Formula) -> Formula {
        let names: Vec<String> = vs.into_iter().map(Into::into).collect();
        names
            .into_iter()
            .rev()
            .fold(f, |acc, v| Formula::Exists(v, Box::new(acc)))
    }

    /// Right-folded conjunction of a non-empty list.
    pub fn and_all(mut fs: Vec<Formula>) -> Formula {
        let last = fs.pop().expect("non-empty conjunction");
        fs.into_iter().rev().fold(last, |acc, f| Formula::and(f, acc))
    }

    /// Right-folded disjunction of a non-empty list.
    pub fn or_all(mut fs: Vec<Formula>) -> Formula {
        let last = fs.pop().expect("non-empty disjunction");
        fs.into_iter().rev().fold(last, |acc, f| Formula::or(f, acc))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut BTreeSet::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut BTreeSet<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(s, t)
            | Formula::SubT(s, t)
            | Formula::SubStar(s, t)
            | Formula::SubP(s, t) => {
                let mut vars = BTreeSet::new();
                s.free_vars(&mut vars);
                t.free_vars(&mut vars);
                for v in vars {
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
            }
            Formula::Dom(t) | Formula::TStar(t) => {
                let mut vars = BTreeSet::new();
                t.free_vars(&mut vars);
                for v in vars {
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Imp(l, r)
            | Formula::Iff(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Formula::ForAll(v, f) | Formula::Exists(v, f) => {
                let fresh = bound.insert(v.clone());
                f.collect_free(bound, out);
                if fresh {
                    bound.remove(v);
                }
            }
            Formula::ExistsUnique(vs, f) => {
                let added: Vec<&String> = vs.iter().filter(|v| bound.insert((*v).clone())).collect();
                f.collect_free(bound, out);
                for v in added {
                    bound.remove(v);
                }
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }
}

/// The three signatures formulas are checked against.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Signature {
    /// `{0, (,), ⊑}`
    Trees,
    /// `{a, b, *}` with the substring relation and the interpretation's
    /// domain atom
    Concat,
    /// `{a, b, *, ⊑*}` with the shape atom
    ConcatSubStar,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Signature::Trees => f.write_str("trees"),
            Signature::Concat => f.write_str("concat"),
            Signature::ConcatSubStar => f.write_str("concat+substar"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SortError {
    #[error("symbol {symbol} is not part of signature {signature}")]
    Mismatch { symbol: String, signature: Signature },
}

fn term_sorted(t: &ObjTerm, sig: Signature) -> Result<(), SortError> {
    let bad = |symbol: &str| {
        Err(SortError::Mismatch {
            symbol: symbol.to_string(),
            signature: sig,
        })
    };
    match t {
        ObjTerm::Var(_) => Ok(()),
        ObjTerm::Const(ConstSym::Zero) => {
            if sig == Signature::Trees {
                Ok(())
            } else {
                bad("0")
            }
        }
        ObjTerm::Const(ConstSym::DigitA) | ObjTerm::Const(ConstSym::DigitB) => {
            if sig == Signature::Trees {
                bad("digit")
            } else {
                Ok(())
            }
        }
        ObjTerm::App(op, l, r) => {
            match (op, sig) {
                (OpSym::PairT, Signature::Trees) => {}
                (OpSym::Star, Signature::Concat | Signature::ConcatSubStar) => {}
                (OpSym::PairT, _) => return bad("pair"),
                (OpSym::Star, _) => return bad("star"),
            }
            term_sorted(l, sig)?;
            term_sorted(r, sig)
        }
    }
}

/// Checks that every symbol in the formula belongs to the signature.
pub fn check_sorted(f: &Formula, sig: Signature) -> Result<(), SortError> {
    let bad = |symbol: &str| {
        Err(SortError::Mismatch {
            symbol: symbol.to_string(),
            signature: sig,
        })
    };
    match f {
        Formula::Eq(s, t) => {
            term_sorted(s, sig)?;
            term_sorted(t, sig)
        }
        Formula::SubT(s, t) => {
            if sig != Signature::Trees {
                return bad("subt");
            }
            term_sorted(s, sig)?;
            term_sorted(t, sig)
        }
        Formula::SubStar(s, t) => {
            if sig != Signature::ConcatSubStar {
                return bad("substar");
            }
            term_sorted(s, sig)?;
            term_sorted(t, sig)
        }
        Formula::SubP(s, t) => {
            if sig != Signature::Concat {
                return bad("subp");
            }
            term_sorted(s, sig)?;
            term_sorted(t, sig)
        }
        Formula::Dom(t) => {
            if sig != Signature::Concat {
                return bad("dom");
            }
            term_sorted(t, sig)
        }
        Formula::TStar(t) => {
            if sig != Signature::ConcatSubStar {
                return bad("tstar");
            }
            term_sorted(t, sig)
        }
        Formula::Not(g) => check_sorted(g, sig),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) | Formula::Iff(l, r) => {
            check_sorted(l, sig)?;
            check_sorted(r, sig)
        }
        Formula::ForAll(_, g) | Formula::Exists(_, g) => check_sorted(g, sig),
        Formula::ExistsUnique(_, g) => check_sorted(g, sig),
    }
}
