//! Tape diagrams over a monoidal signature, their matrix normal forms, and a
//! decision procedure for the positive calculus of relations.

pub mod circuit;
pub mod cr;
pub mod error;
pub mod gen;
pub mod hypergraph;
pub mod matrix;
pub mod order;
pub mod parse;
pub mod rel;
pub mod selftest;
pub mod signature;
pub mod tape;

pub use circuit::{cb_leq, circuits_equal, transpose, type_check_circuit, CircuitTerm};
pub use cr::{decide_equiv, decide_leq, encode, eval_cr, CrExpr, Verdict};
pub use error::{Error, Result};
pub use hypergraph::InterfacedHypergraph;
pub use matrix::{from_matrix, mat_compose, mat_kron, mat_oplus, to_matrix, MonomialEntry, TapeMatrix};
pub use order::{em_leq, tape_equiv, tape_leq, Mode, Theory};
pub use parse::{parse_circuit, parse_cr, parse_signature, parse_tape, ParsedSignature};
pub use rel::{eval_circuit, eval_tape, search_counterexample, FiniteRelation, Interpretation, SearchConfig};
pub use signature::{poly_product, reduce_rig_signature, MonSignature, Monomial, Polynomial, RigSignature, Sort};
pub use tape::{type_check_tape, TapeTerm};
