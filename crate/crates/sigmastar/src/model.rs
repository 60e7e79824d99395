//! Finite models of the extended concatenation signature, built from a pool
//! of variable-free terms. Elements are value classes of terms; the
//! operation table sends a pair of classes to the class of the concatenated
//! value when that value is present and to a default otherwise; the
//! relation table holds of almost-even values whose first component codes a
//! subtree of the second.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::codec::subterm_codes;
use crate::counting::is_almost_even;
use crate::logic::eval::{eval_finite, falsify_finite};
use crate::logic::syntax::{ConstSym, Formula, ObjTerm, OpSym};
use crate::report::{Failure, ReportBuilder, VerificationReport};
use crate::strings::BinString;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("pool terms must be variable-free, found variable {0}")]
    NonGround(String),
    #[error("pool terms must be concatenation terms, found {0}")]
    WrongSignature(String),
}

/// A finite structure: classes with string values (plus an optional
/// valueless sink), a total operation table, and a relation table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModel {
    /// Value of each class, in canonical (length, lex) order; the sink
    /// element, when present, is last and carries no value.
    pub rep: Vec<Option<BinString>>,
    pub a_elem: usize,
    pub b_elem: usize,
    op_table: Vec<usize>,
    rel_table: Vec<bool>,
}

impl FiniteModel {
    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op_table[x * self.rep.len() + y]
    }

    pub fn rel(&self, x: usize, y: usize) -> bool {
        self.rel_table[x * self.rep.len() + y]
    }

    /// Class of a given string value, when present.
    pub fn class_of(&self, value: &BinString) -> Option<usize> {
        self.rep
            .iter()
            .position(|r| r.as_ref() == Some(value))
    }

    pub fn describe(&self, e: usize) -> String {
        match &self.rep[e] {
            Some(v) => v.to_string(),
            None => "#sink".to_string(),
        }
    }

    fn build(values: BTreeSet<BinString>, with_sink: bool) -> FiniteModel {
        let mut values = values;
        values.insert(BinString::a());
        values.insert(BinString::b());
        let reps: Vec<BinString> = values.into_iter().collect();
        let n = reps.len() + usize::from(with_sink);
        let index: BTreeMap<&BinString, usize> =
            reps.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let a_elem = index[&BinString::a()];
        let b_elem = index[&BinString::b()];
        let sink = if with_sink { Some(n - 1) } else { None };
        let default = sink.unwrap_or(b_elem);

        let mut op_table = vec![default; n * n];
        for (i, vi) in reps.iter().enumerate() {
            for (j, vj) in reps.iter().enumerate() {
                let joined = vi.concat(vj);
                op_table[i * n + j] = index.get(&joined).copied().unwrap_or(default);
            }
        }
        // products involving the sink stay in the sink
        if let Some(s) = sink {
            for k in 0..n {
                op_table[s * n + k] = s;
                op_table[k * n + s] = s;
            }
        }

        let mut rel_table = vec![false; n * n];
        for (j, vj) in reps.iter().enumerate() {
            if !is_almost_even(vj) {
                continue;
            }
            let codes = subterm_codes(vj).expect("almost even");
            for (i, vi) in reps.iter().enumerate() {
                if codes.contains(vi) {
                    rel_table[i * n + j] = true;
                }
            }
        }

        let mut rep: Vec<Option<BinString>> = reps.into_iter().map(Some).collect();
        if with_sink {
            rep.push(None);
        }
        FiniteModel {
            rep,
            a_elem,
            b_elem,
            op_table,
            rel_table,
        }
    }

    /// Deterministic text export: element list with representatives, the
    /// operation matrix, and the relation pairs.
    pub fn export(&self) -> String {
        let mut out = String::new();
        out.push_str("elements:\n");
        for e in 0..self.len() {
            out.push_str(&format!("  {} = {}\n", e, self.describe(e)));
        }
        out.push_str("op:\n");
        for i in 0..self.len() {
            let row: Vec<String> = (0..self.len()).map(|j| self.op(i, j).to_string()).collect();
            out.push_str(&format!("  {}\n", row.join(" ")));
        }
        out.push_str("rel:\n");
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.rel(i, j) {
                    out.push_str(&format!(
                        "  {} < {}\n",
                        self.describe(i),
                        self.describe(j)
                    ));
                }
            }
        }
        out
    }
}

/// Concrete syntax for variable-free concatenation terms: `a`, `b`, or
/// `(s*t)`, whitespace-insensitive.
pub fn parse_star_term(text: &str) -> Result<ObjTerm, ModelError> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let t = parse_star_inner(bytes, &mut pos)?;
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(ModelError::WrongSignature(format!(
            "trailing input at byte {pos}"
        )));
    }
    Ok(t)
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while bytes.get(*pos).is_some_and(|b| b.is_ascii_whitespace()) {
        *pos += 1;
    }
}

fn parse_star_inner(bytes: &[u8], pos: &mut usize) -> Result<ObjTerm, ModelError> {
    skip_ws(bytes, pos);
    match bytes.get(*pos) {
        Some(b'a') => {
            *pos += 1;
            Ok(ObjTerm::a())
        }
        Some(b'b') => {
            *pos += 1;
            Ok(ObjTerm::b())
        }
        Some(b'(') => {
            *pos += 1;
            let l = parse_star_inner(bytes, pos)?;
            skip_ws(bytes, pos);
            if bytes.get(*pos) != Some(&b'*') {
                return Err(ModelError::WrongSignature(format!(
                    "expected '*' at byte {pos}"
                )));
            }
            *pos += 1;
            let r = parse_star_inner(bytes, pos)?;
            skip_ws(bytes, pos);
            if bytes.get(*pos) != Some(&b')') {
                return Err(ModelError::WrongSignature(format!(
                    "expected ')' at byte {pos}"
                )));
            }
            *pos += 1;
            Ok(ObjTerm::star(l, r))
        }
        other => Err(ModelError::WrongSignature(format!(
            "expected 'a', 'b' or '(' at byte {pos}, found {:?}",
            other.map(|&b| b as char)
        ))),
    }
}

/// Inverse of [`parse_star_term`].
pub fn star_term_display(t: &ObjTerm) -> String {
    match t {
        ObjTerm::Const(ConstSym::DigitA) => "a".into(),
        ObjTerm::Const(ConstSym::DigitB) => "b".into(),
        ObjTerm::App(OpSym::Star, l, r) => {
            format!("({}*{})", star_term_display(l), star_term_display(r))
        }
        other => format!("{other:?}"),
    }
}

/// Flattens a variable-free concatenation term to its string value.
pub fn term_value(t: &ObjTerm) -> Result<BinString, ModelError> {
    match t {
        ObjTerm::Var(v) => Err(ModelError::NonGround(v.clone())),
        ObjTerm::Const(ConstSym::DigitA) => Ok(BinString::a()),
        ObjTerm::Const(ConstSym::DigitB) => Ok(BinString::b()),
        ObjTerm::Const(ConstSym::Zero) => Err(ModelError::WrongSignature("0".into())),
        ObjTerm::App(OpSym::Star, l, r) => Ok(term_value(l)?.concat(&term_value(r)?)),
        ObjTerm::App(OpSym::PairT, _, _) => Err(ModelError::WrongSignature("pair".into())),
    }
}

/// The construction as displayed: classes for the digits and the pool
/// values only, with missing products defaulting to the class of b.
pub fn build_model(pool: &[ObjTerm]) -> Result<FiniteModel, ModelError> {
    let mut values = BTreeSet::new();
    for t in pool {
        values.insert(term_value(t)?);
    }
    Ok(FiniteModel::build(values, false))
}

/// The repaired construction: the domain carries every variable-free term
/// occurring in the axiom instances to be checked, closed under substring
/// values so that each element owns its split witnesses, and missing
/// products land in an absorbing valueless sink instead of the class of b.
pub fn build_witnessed_model(
    pool: &[ObjTerm],
    instances: &[Formula],
) -> Result<FiniteModel, ModelError> {
    let mut values = BTreeSet::new();
    for t in pool {
        values.insert(term_value(t)?);
    }
    for f in instances {
        collect_ground_term_values(f, &mut values);
    }
    let mut closed = BTreeSet::new();
    for v in values {
        let d = v.digits();
        for i in 0..d.len() {
            for j in i + 1..=d.len() {
                closed.insert(BinString::from_bytes(d[i..j].to_vec()));
            }
        }
    }
    Ok(FiniteModel::build(closed, true))
}

fn collect_ground_term_values(f: &Formula, out: &mut BTreeSet<BinString>) {
    fn term(t: &ObjTerm, out: &mut BTreeSet<BinString>) {
        if let Ok(v) = term_value(t) {
            out.insert(v);
        }
        if let ObjTerm::App(_, l, r) = t {
            term(l, out);
            term(r, out);
        }
    }
    match f {
        Formula::Eq(s, t)
        | Formula::SubT(s, t)
        | Formula::SubStar(s, t)
        | Formula::SubP(s, t) => {
            term(s, out);
            term(t, out);
        }
        Formula::Dom(t) | Formula::TStar(t) => term(t, out),
        Formula::Not(g) => collect_ground_term_values(g, out),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) | Formula::Iff(l, r) => {
            collect_ground_term_values(l, out);
            collect_ground_term_values(r, out);
        }
        Formula::ForAll(_, g) | Formula::Exists(_, g) | Formula::ExistsUnique(_, g) => {
            collect_ground_term_values(g, out)
        }
    }
}

/// Evaluates each labeled instance in the model, collecting failures with
/// leading-universal witnesses.
pub fn check_axioms(model: &FiniteModel, instances: &[(String, Formula)]) -> VerificationReport {
    let mut builder = ReportBuilder::new("check-axioms", 0);
    for (law, f) in instances {
        builder.cases += 1;
        match eval_finite(f, model, &BTreeMap::new()) {
            Ok(true) => {}
            Ok(false) => {
                let witness = falsify_finite(f, model)
                    .ok()
                    .flatten()
                    .unwrap_or_default();
                builder.failures.push(Failure {
                    law: law.clone(),
                    witness,
                });
            }
            Err(e) => {
                builder.failures.push(Failure {
                    law: law.clone(),
                    witness: BTreeMap::from([("error".to_string(), e.to_string())]),
                });
            }
        }
    }
    builder.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::sexpr::parse_term;

    fn term(text: &str) -> ObjTerm {
        parse_term(text).unwrap()
    }

    fn s(t: &str) -> BinString {
        t.parse().unwrap()
    }

    #[test]
    fn empty_pool_model() {
        let m = build_model(&[]).unwrap();
        assert_eq!(m.len(), 2);
        // aa is absent, so a*a defaults to the class of b
        assert_eq!(m.op(m.a_elem, m.a_elem), m.b_elem);
        assert_eq!(m.describe(m.a_elem), "a");
    }

    #[test]
    fn single_code_pool() {
        let m = build_model(&[term("(star (b) (star (a) (a)))")]).unwrap();
        assert_eq!(m.len(), 3);
        let baa = m.class_of(&s("baa")).unwrap();
        assert!(m.rel(m.a_elem, baa));
        assert!(m.rel(baa, baa));
        assert!(!m.rel(m.b_elem, baa));
        assert!(!m.rel(baa, m.a_elem));
    }

    #[test]
    fn classes_identify_reparenthesizations() {
        let m = build_model(&[
            term("(star (star (a) (b)) (star (a) (b)))"),
            term("(star (a) (star (b) (star (a) (b))))"),
        ])
        .unwrap();
        // both terms have value abab, so a single class beyond the digits
        assert_eq!(m.len(), 3);
        assert!(m.class_of(&s("abab")).is_some());
    }

    #[test]
    fn op_respects_present_values() {
        let m = build_model(&[term("(star (a) (b))")]).unwrap();
        let ab = m.class_of(&s("ab")).unwrap();
        assert_eq!(m.op(m.a_elem, m.b_elem), ab);
        // abab is absent
        assert_eq!(m.op(ab, ab), m.b_elem);
    }

    #[test]
    fn witnessed_model_contains_split_witnesses_and_sink() {
        let pool = [term("(star (b) (star (a) (a)))")];
        let m = build_witnessed_model(&pool, &[]).unwrap();
        // substrings of baa: a, b, aa, ba, baa; plus the sink
        assert_eq!(m.len(), 6);
        assert!(m.class_of(&s("ba")).is_some());
        let sink = m.len() - 1;
        assert_eq!(m.rep[sink], None);
        assert_eq!(m.op(m.b_elem, m.b_elem), sink);
        assert_eq!(m.op(sink, m.a_elem), sink);
        assert!(!m.rel(sink, sink));
    }

    #[test]
    fn ground_terms_are_rejected_when_not_concatenation() {
        assert!(build_model(&[ObjTerm::var("x")]).is_err());
        assert!(build_model(&[ObjTerm::zero()]).is_err());
    }

    #[test]
    fn export_is_deterministic() {
        let m = build_model(&[term("(star (a) (b))")]).unwrap();
        let text = m.export();
        assert!(text.contains("elements:"));
        assert!(text.contains("0 = a"));
        assert!(text.contains("a < a"));
        assert_eq!(text, m.export());
    }
}
