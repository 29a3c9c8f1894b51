//! Worked examples through the text front end.

use tape_diagrams::cr::{cr_signature, decide_equiv, decide_leq, eval_cr};
use tape_diagrams::matrix::{entry, entry_via_injections, to_matrix};
use tape_diagrams::order::{tape_equiv, tape_leq, Theory};
use tape_diagrams::parse::{parse_circuit, parse_cr, parse_signature, parse_tape};
use tape_diagrams::rel::{eval_tape, Interpretation, SearchConfig};
use tape_diagrams::{Error, MonSignature};

fn sig(text: &str) -> MonSignature {
    parse_signature(text).unwrap().into_monoidal().unwrap().0
}

#[test]
fn sum_of_two_relations_normalises_to_one_cell() {
    let s = sig("sort A; gen R : A -> A; gen S : A -> A;");
    let t = parse_tape("diag(A) ; ([R] (+) [S]) ; codiag(A)", &s, None).unwrap();
    let m = to_matrix(&t, Theory::MULTISET).unwrap();
    assert_eq!(m.rows().len(), 1);
    assert_eq!(m.entry(0, 0).unwrap().to_string(), "{R, S}");
}

#[test]
fn cells_agree_with_injection_projection() {
    let s = sig("sort U V W Z; gen c : V -> U; gen d : U -> Z; gen e : Z -> W;");
    let t = parse_tape("(idm(U) (+) [c]) ; codiag(U) ; [d] ; diag(Z) ; ([e] (+) idm(Z))", &s, None).unwrap();
    for j in 0..2 {
        for i in 0..2 {
            assert_eq!(
                entry(&t, j, i, Theory::MULTISET).unwrap(),
                entry_via_injections(&t, j, i, Theory::MULTISET).unwrap()
            );
        }
    }
    assert!(matches!(entry(&t, 2, 0, Theory::MULTISET), Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn sums_of_a_circuit_collapse_only_in_set_mode() {
    let s = sig("sort A; gen R : A -> A;");
    let two = parse_tape("diag(A) ; ([R] (+) [R]) ; codiag(A)", &s, None).unwrap();
    let one = parse_tape("[R]", &s, None).unwrap();
    assert!(tape_equiv(&two, &one, Theory::SET).unwrap());
    assert_ne!(to_matrix(&two, Theory::MULTISET).unwrap(), to_matrix(&one, Theory::MULTISET).unwrap());
    assert_eq!(tape_leq(&two, &one, Theory::MULTISET), Err(Error::ModeMismatch("multiset")));
}

#[test]
fn copy_then_apply_is_above_apply_then_copy() {
    let s = sig("sort A B; gen f : A -> B;").with_frobenius();
    let lo = parse_circuit("f ; cp(B)", &s).unwrap();
    let hi = parse_circuit("cp(A) ; f * f", &s).unwrap();
    assert!(tape_diagrams::cb_leq(&lo, &hi, &s).unwrap());
    assert!(!tape_diagrams::cb_leq(&hi, &lo, &s).unwrap());
}

#[test]
fn relational_laws() {
    let s = cr_signature(["R", "S", "T"]);
    let cfg = SearchConfig::default();
    let p = |t: &str| parse_cr(t, Some(&s)).unwrap();
    assert!(decide_equiv(&p("R;(S|T)"), &p("R;S | R;T"), &s, &cfg).unwrap().holds());
    assert!(decide_equiv(&p("(R;S)~"), &p("S~;R~"), &s, &cfg).unwrap().holds());
    assert!(decide_leq(&p("R & S;T"), &p("S;(S~;R & T)"), &s, &cfg).unwrap().holds());
    assert!(decide_leq(&p("R"), &p("R;R~;R"), &s, &cfg).unwrap().holds());
    assert!(!decide_leq(&p("R;R~"), &p("id"), &s, &cfg).unwrap().holds());
    assert!(!decide_leq(&p("top"), &p("R | id"), &s, &cfg).unwrap().holds());
}

#[test]
fn intersection_through_a_model() {
    let s = sig("sort A; gen R : A -> A; gen S : A -> A;").with_frobenius();
    let i = Interpretation::from_json(
        r#"{"carrier":{"A":3},"relations":{"R":[[[0],[1]],[[1],[2]],[[2],[2]]],"S":[[[0],[1]],[[2],[0]],[[2],[2]]]}}"#,
    )
    .unwrap();
    let e = parse_cr("R & S", Some(&s)).unwrap();
    let r = eval_cr(&e, &s, &i).unwrap();
    let t = tape_diagrams::encode(&e, &s).unwrap();
    assert_eq!(eval_tape(&t, &i).unwrap(), r);
    let pairs: Vec<_> = r.pairs(&i).into_iter().map(|((_, x), (_, y))| (x[0], y[0])).collect();
    assert_eq!(pairs, [(0, 1), (2, 2)]);
}

#[test]
fn errors_carry_positions() {
    let s = sig("sort A; gen R : A -> A;");
    match parse_tape("[R] ;\n  ;", &s, None) {
        Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_circuit("cp(A)", &s), Err(Error::FrobeniusDisabled)));
}
