//! Small facts about individual operations, checked on concrete inputs.

use tape_diagrams::cr::cr_signature;
use tape_diagrams::order::{tape_equiv, Theory};
use tape_diagrams::parse::{parse_circuit, parse_cr, parse_signature};
use tape_diagrams::rel::Interpretation;
use tape_diagrams::tape::{self, copier_poly, inv_left_distributor, left_distributor, tensor_symmetry};
use tape_diagrams::{decide_equiv, eval_circuit, to_matrix, CircuitTerm, MonSignature, Monomial, Polynomial, SearchConfig, TapeTerm};

fn p(words: &[&[&str]]) -> Polynomial {
    Polynomial::new(words.iter().map(|w| Monomial::of(w)).collect())
}

fn sig() -> MonSignature {
    parse_signature("sort A B C D; gen R : A -> A; gen S : A -> A; gen T : A -> A;")
        .unwrap()
        .into_monoidal()
        .unwrap()
        .0
        .with_frobenius()
}

#[test]
fn products_distribute_on_the_left_first() {
    let ab = p(&[&["A"], &["B"]]);
    let cd = p(&[&["C"], &["D"]]);
    assert_eq!(ab.product(&cd), p(&[&["A", "C"], &["A", "D"], &["B", "C"], &["B", "D"]]));
    let a1 = p(&[&["A"], &[]]);
    assert_eq!(a1.product(&a1), p(&[&["A", "A"], &["A"], &["A"], &[]]));
}

#[test]
fn hypergraph_sizes() {
    let s = sig();
    let r = parse_circuit("R", &s).unwrap().to_hypergraph().unwrap();
    assert_eq!((r.vertex_count(), r.edges.len()), (2, 1));
    let meet = parse_circuit("cp(A) ; S * T ; cocp(A)", &s).unwrap().to_hypergraph().unwrap();
    assert_eq!((meet.vertex_count(), meet.edges.len()), (2, 2));
}

#[test]
fn distributor_inverse_and_symmetry_involution() {
    let s = sig();
    let (x, y, z) = (p(&[&["A"], &["B"]]), p(&[&["C"]]), p(&[&["D"], &[]]));
    let round = TapeTerm::seq(left_distributor(&x, &y, &z), inv_left_distributor(&x, &y, &z));
    let dom = x.product(&y.oplus(&z));
    assert!(tape_equiv(&round, &tape::id_poly(&dom), Theory::MULTISET).unwrap());
    assert!(tape_equiv(&tensor_symmetry(&x, &Polynomial::one()), &tape::id_poly(&x), Theory::MULTISET).unwrap());
    let twice = TapeTerm::seq(tensor_symmetry(&x, &z), tensor_symmetry(&z, &x));
    assert!(tape_equiv(&twice, &tape::id_poly(&x.product(&z)), Theory::MULTISET).unwrap());
    let cp = copier_poly(&x, &s).unwrap();
    assert_eq!(cp.type_of().unwrap(), (x.clone(), x.product(&x)));
}

#[test]
fn sums_keep_multiplicity_and_zero_is_neutral() {
    let s = sig();
    let (c, d) = (TapeTerm::lift(s.gen("R").unwrap()), TapeTerm::lift(s.gen("S").unwrap()));
    let ccd = tape::sum(&c, &tape::sum(&c, &d).unwrap()).unwrap();
    let m = to_matrix(&ccd, Theory::MULTISET).unwrap();
    assert_eq!(m.entry(0, 0).unwrap().to_string(), "{R, R, S}");
    let a = p(&[&["A"]]);
    let cz = tape::sum(&c, &tape::zero(&a, &a)).unwrap();
    assert!(tape_equiv(&cz, &c, Theory::MULTISET).unwrap());
}

#[test]
fn copier_relation_on_two_points() {
    let s = sig();
    let i = Interpretation::from_json(r#"{"carrier":{"A":2,"B":1,"C":1,"D":1},"relations":{"R":[],"S":[],"T":[]}}"#).unwrap();
    let r = eval_circuit(&CircuitTerm::Copier(s.sort("A").unwrap().clone()), &i).unwrap();
    assert_eq!(r.len(), 2);
}

#[test]
fn identity_and_converse_laws() {
    let s = cr_signature(["R", "S"]);
    let cfg = SearchConfig::default();
    let e = |t: &str| parse_cr(t, Some(&s)).unwrap();
    assert!(decide_equiv(&e("id ; R & S"), &e("R & S"), &s, &cfg).unwrap().holds());
    assert!(decide_equiv(&e("(R | S;R)~"), &e("R~ | (S;R)~"), &s, &cfg).unwrap().holds());
}
