//! S-expression concrete syntax for formulas and terms.
//!
//! Terms: `(zero)`, `(a)`, `(b)`, `(pair s t)`, `(star s t)`, bare symbols
//! as variables. Atoms: `(= s t)`, `(subt s t)`, `(substar s t)`,
//! `(subp s t)`, `(dom x)`, `(tstar x)`. Connectives `(not f)`, `(and …)`,
//! `(or …)`, `(imp f g)`, `(iff f g)`; binders `(forall (x) f)`,
//! `(exists (x) f)`, `(exists1 (x y …) f)`. `and`/`or` accept two or more
//! arguments and are printed right-nested, so printing is a stable
//! canonical form: parse(print(f)) == f.

use thiserror::Error;

use super::syntax::{Formula, ObjTerm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SexprError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, SexprError> {
    Err(SexprError::Parse {
        pos,
        msg: msg.into(),
    })
}

#[derive(Debug, Clone, PartialEq)]
enum Sexpr {
    Sym(String),
    List(Vec<Sexpr>),
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn parse(&mut self) -> Result<Sexpr, SexprError> {
        self.skip_ws();
        match self.bytes.get(self.pos) {
            Some(b'(') => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match self.bytes.get(self.pos) {
                        Some(b')') => {
                            self.pos += 1;
                            return Ok(Sexpr::List(items));
                        }
                        Some(_) => items.push(self.parse()?),
                        None => return err(self.pos, "unclosed '('"),
                    }
                }
            }
            Some(b')') => err(self.pos, "unexpected ')'"),
            Some(_) => {
                let start = self.pos;
                while self.bytes.get(self.pos).is_some_and(|&b| {
                    !b.is_ascii_whitespace() && b != b'(' && b != b')'
                }) {
                    self.pos += 1;
                }
                let sym = std::str::from_utf8(&self.bytes[start..self.pos])
                    .map_err(|_| SexprError::Parse {
                        pos: start,
                        msg: "non-utf8 symbol".into(),
                    })?
                    .to_string();
                Ok(Sexpr::Sym(sym))
            }
            None => err(self.pos, "unexpected end of input"),
        }
    }
}

fn term_of(sx: &Sexpr) -> Result<ObjTerm, SexprError> {
    match sx {
        Sexpr::Sym(name) => {
            if name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
                Ok(ObjTerm::var(name.clone()))
            } else {
                err(0, format!("bad variable name {name:?}"))
            }
        }
        Sexpr::List(items) => {
            let Some(Sexpr::Sym(head)) = items.first() else {
                return err(0, "expected term head symbol");
            };
            match (head.as_str(), items.len()) {
                ("zero", 1) => Ok(ObjTerm::zero()),
                ("a", 1) => Ok(ObjTerm::a()),
                ("b", 1) => Ok(ObjTerm::b()),
                ("pair", 3) => Ok(ObjTerm::pair(term_of(&items[1])?, term_of(&items[2])?)),
                ("star", 3) => Ok(ObjTerm::star(term_of(&items[1])?, term_of(&items[2])?)),
                _ => err(0, format!("bad term form ({head} …) with {} items", items.len())),
            }
        }
    }
}

fn binder_vars(sx: &Sexpr) -> Result<Vec<String>, SexprError> {
    let Sexpr::List(items) = sx else {
        return err(0, "binder expects a variable list");
    };
    let mut out = Vec::new();
    for item in items {
        match item {
            Sexpr::Sym(v) => out.push(v.clone()),
            Sexpr::List(_) => return err(0, "binder variables must be symbols"),
        }
    }
    if out.is_empty() {
        return err(0, "binder requires at least one variable");
    }
    Ok(out)
}

fn formula_of(sx: &Sexpr) -> Result<Formula, SexprError> {
    let Sexpr::List(items) = sx else {
        return err(0, "formula must be a list");
    };
    let Some(Sexpr::Sym(head)) = items.first() else {
        return err(0, "formula head must be a symbol");
    };
    let n = items.len();
    match head.as_str() {
        "=" if n == 3 => Ok(Formula::Eq(term_of(&items[1])?, term_of(&items[2])?)),
        "subt" if n == 3 => Ok(Formula::SubT(term_of(&items[1])?, term_of(&items[2])?)),
        "substar" if n == 3 => Ok(Formula::SubStar(term_of(&items[1])?, term_of(&items[2])?)),
        "subp" if n == 3 => Ok(Formula::SubP(term_of(&items[1])?, term_of(&items[2])?)),
        "dom" if n == 2 => Ok(Formula::Dom(term_of(&items[1])?)),
        "tstar" if n == 2 => Ok(Formula::TStar(term_of(&items[1])?)),
        "not" if n == 2 => Ok(Formula::not(formula_of(&items[1])?)),
        "and" | "or" if n >= 3 => {
            let parts = items[1..]
                .iter()
                .map(formula_of)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(if head == "and" {
                Formula::and_all(parts)
            } else {
                Formula::or_all(parts)
            })
        }
        "imp" if n == 3 => Ok(Formula::imp(formula_of(&items[1])?, formula_of(&items[2])?)),
        "iff" if n == 3 => Ok(Formula::iff(formula_of(&items[1])?, formula_of(&items[2])?)),
        "forall" | "exists" if n == 3 => {
            let vars = binder_vars(&items[1])?;
            let body = formula_of(&items[2])?;
            Ok(if head == "forall" {
                Formula::forall_many(vars, body)
            } else {
                Formula::exists_many(vars, body)
            })
        }
        "exists1" if n == 3 => {
            let vars = binder_vars(&items[1])?;
            Ok(Formula::ExistsUnique(vars, Box::new(formula_of(&items[2])?)))
        }
        _ => err(0, format!("bad formula form ({head} …) with {n} items")),
    }
}

/// Parses a single formula from text.
pub fn parse_formula(text: &str) -> Result<Formula, SexprError> {
    let mut lex = Lexer::new(text);
    let sx = lex.parse()?;
    lex.skip_ws();
    if lex.pos != lex.bytes.len() {
        return err(lex.pos, "trailing input after formula");
    }
    formula_of(&sx)
}

/// Parses a single term from text.
pub fn parse_term(text: &str) -> Result<ObjTerm, SexprError> {
    let mut lex = Lexer::new(text);
    let sx = lex.parse()?;
    lex.skip_ws();
    if lex.pos != lex.bytes.len() {
        return err(lex.pos, "trailing input after term");
    }
    term_of(&sx)
}

pub fn print_term(t: &ObjTerm) -> String {
    match t {
        ObjTerm::Var(v) => v.clone(),
        ObjTerm::Const(super::syntax::ConstSym::Zero) => "(zero)".into(),
        ObjTerm::Const(super::syntax::ConstSym::DigitA) => "(a)".into(),
        ObjTerm::Const(super::syntax::ConstSym::DigitB) => "(b)".into(),
        ObjTerm::App(op, l, r) => {
            let head = match op {
                super::syntax::OpSym::PairT => "pair",
                super::syntax::OpSym::Star => "star",
            };
            format!("({head} {} {})", print_term(l), print_term(r))
        }
    }
}

pub fn print_formula(f: &Formula) -> String {
    match f {
        Formula::Eq(s, t) => format!("(= {} {})", print_term(s), print_term(t)),
        Formula::SubT(s, t) => format!("(subt {} {})", print_term(s), print_term(t)),
        Formula::SubStar(s, t) => format!("(substar {} {})", print_term(s), print_term(t)),
        Formula::SubP(s, t) => format!("(subp {} {})", print_term(s), print_term(t)),
        Formula::Dom(t) => format!("(dom {})", print_term(t)),
        Formula::TStar(t) => format!("(tstar {})", print_term(t)),
        Formula::Not(g) => format!("(not {})", print_formula(g)),
        Formula::And(l, r) => format!("(and {} {})", print_formula(l), print_formula(r)),
        Formula::Or(l, r) => format!("(or {} {})", print_formula(l), print_formula(r)),
        Formula::Imp(l, r) => format!("(imp {} {})", print_formula(l), print_formula(r)),
        Formula::Iff(l, r) => format!("(iff {} {})", print_formula(l), print_formula(r)),
        Formula::ForAll(v, g) => format!("(forall ({v}) {})", print_formula(g)),
        Formula::Exists(v, g) => format!("(exists ({v}) {})", print_formula(g)),
        Formula::ExistsUnique(vs, g) => {
            format!("(exists1 ({}) {})", vs.join(" "), print_formula(g))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_stable() {
        let texts = [
            "(forall (x) (imp (dom x) (iff (subp x (a)) (= x (a)))))",
            "(forall (x y) (not (= (star (b) (star x y)) (a))))",
            "(exists1 (y z) (and (= x (star (b) (star y z))) (dom y) (dom z)))",
            "(forall (z) (iff (substar z (a)) (= z (a))))",
            "(tstar (star (a) (b)))",
            "(subt (zero) (pair (zero) (zero)))",
        ];
        for text in texts {
            let f = parse_formula(text).unwrap();
            let printed = print_formula(&f);
            let again = parse_formula(&printed).unwrap();
            assert_eq!(f, again, "{text}");
            assert_eq!(printed, print_formula(&again));
        }
    }

    #[test]
    fn variadic_and_nests_right() {
        let f = parse_formula("(and (dom x) (dom y) (dom z))").unwrap();
        assert_eq!(
            print_formula(&f),
            "(and (dom x) (and (dom y) (dom z)))"
        );
    }

    #[test]
    fn multi_var_binders_nest() {
        let f = parse_formula("(forall (x y) (= x y))").unwrap();
        assert_eq!(print_formula(&f), "(forall (x) (forall (y) (= x y)))");
    }

    #[test]
    fn errors_are_reported() {
        assert!(parse_formula("").is_err());
        assert!(parse_formula("(= x)").is_err());
        assert!(parse_formula("(and (dom x))").is_err());
        assert!(parse_formula("(forall x (= x x))").is_err());
        assert!(parse_formula("(= x y) extra").is_err());
        assert!(parse_term("(star a b)").is_ok()); // a, b parse as variables here
        assert!(parse_term("(star (a) (q))").is_err());
    }
}
