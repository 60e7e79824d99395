//! The standard model of two-letter concatenation, computably: binary
//! strings and tally arithmetic, Polish tree codes and the almost-even
//! strings, tally-framed set and pair codes, string-recursion computation
//! certificates, first-order syntax with bounded evaluation over the string
//! model, interpretation translations out of the tree vocabulary, and
//! finite models of the bounded hybrid theory — together with exhaustive
//! desk-scale verification suites for all of it.

pub mod codec;
pub mod counting;
pub mod logic;
pub mod model;
pub mod recursion;
pub mod report;
pub mod setcode;
pub mod strings;
pub mod verify;

pub use codec::{decode_tree, encode_tree, split_by_counting, subterm_codes, CodecError, TreeTerm};
pub use counting::{alpha, beta, count_a, count_b, is_almost_even};
pub use model::{build_model, build_witnessed_model, check_axioms, FiniteModel, ModelError};
pub use recursion::{
    build_certificate, check_comp, check_min_comp, graph_holds, index_closure, run_recursion,
    Certificate, RecursionSpec,
};
pub use report::{Failure, VerificationReport};
pub use setcode::{
    decode_pair, encode_pair, encode_set, members, min_nonoccurrent_tally, parse_set, Frame,
    FrameKind, PairError, SetCode, SetError,
};
pub use strings::{addtally, all_strings, nat_to_tally, tally_to_nat, BTally, BinString, StringError};
