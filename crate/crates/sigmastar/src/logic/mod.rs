//! First-order syntax over the three signatures, axiom generators,
//! interpretation translations, an S-expression reader/printer, and the two
//! evaluators (length-bounded over the string model, and table-driven over
//! finite models).

pub mod eval;
pub mod sexpr;
pub mod syntax;
pub mod theories;
pub mod translate;

pub use eval::{eval_bounded, eval_finite, falsify_bounded, falsify_finite, Assignment, EvalError};
pub use sexpr::{parse_formula, parse_term, print_formula, print_term, SexprError};
pub use syntax::{check_sorted, ConstSym, Formula, ObjTerm, OpSym, Signature, SortError};
pub use translate::{translate_t, translate_wt};
