//! Seeded property suites shared by the acceptance tests and `tapes selftest`.
//!
//! Every check draws from its own ChaCha stream, so a transcript depends on the
//! seed alone.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{self, cb_leq, circuits_equal, graph_leq, CircuitTerm};
use crate::cr::{self, decide_leq, encode, eval_cr, CrExpr};
use crate::error::Result;
use crate::gen::{all_cr, random_cr, test_signature, Gen};
use crate::matrix::{from_matrix, mat_kron, mat_transpose, to_matrix};
use crate::order::{tape_equiv, tape_leq, Theory};
use crate::rel::{eval_circuit, eval_tape, Interpretation, ModelSpace, SearchConfig};
use crate::signature::{MonSignature, Monomial, Polynomial};
use crate::tape::{self, TapeTerm};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
    pub note: Option<String>,
    /// Named counters a caller may gate on.
    pub stats: Vec<(&'static str, usize)>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn stat(&self, key: &str) -> Option<usize> {
        self.stats.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed() { "ok  " } else { "FAIL" };
        write!(f, "{tag} {:<28} {:>5} cases", self.name, self.cases)?;
        if self.failures > 0 {
            write!(f, ", {} failed", self.failures)?;
        }
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        if let Some(m) = &self.first_failure {
            write!(f, "\n     first failure: {m}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let bad = self.checks.iter().filter(|c| !c.passed()).count();
        write!(f, "{} checks, {} failed", self.checks.len(), bad)
    }
}

/// Case counts; `Sizes::default()` is the full acceptance scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sizes {
    pub whiskering: usize,
    pub axioms: usize,
    pub isomorphism: usize,
    pub kronecker: usize,
    pub order: usize,
    pub cb_samples: usize,
    pub cr_random: usize,
    pub cr_pairs: usize,
    pub cr_enum_ops: usize,
}

impl Default for Sizes {
    fn default() -> Self {
        Sizes {
            whiskering: 200,
            axioms: 50,
            isomorphism: 200,
            kronecker: 200,
            order: 50,
            cb_samples: 1000,
            cr_random: 100,
            cr_pairs: 500,
            cr_enum_ops: 4,
        }
    }
}

impl Sizes {
    /// A fast profile for smoke runs.
    pub fn quick() -> Self {
        Sizes {
            whiskering: 20,
            axioms: 10,
            isomorphism: 20,
            kronecker: 20,
            order: 10,
            cb_samples: 100,
            cr_random: 10,
            cr_pairs: 30,
            cr_enum_ops: 2,
        }
    }
}

fn stream(seed: u64, name: &str) -> ChaCha8Rng {
    let salt = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

/// Runs `case` for each index; `Some(msg)` or an error marks a failure.
fn check(name: &str, cases: usize, mut case: impl FnMut(usize) -> Result<Option<String>>) -> Check {
    let mut failures = 0;
    let mut first_failure = None;
    for k in 0..cases {
        let outcome = match case(k) {
            Ok(None) => continue,
            Ok(Some(m)) => m,
            Err(e) => format!("error: {e}"),
        };
        failures += 1;
        first_failure.get_or_insert(outcome);
    }
    Check {
        name: name.to_string(),
        cases,
        failures,
        first_failure,
        note: None,
        stats: Vec::new(),
    }
}

/// `check` for pure cases, spread over the available cores. Failures are
/// reported in index order, so the outcome matches a sequential run.
fn par_check(name: &str, cases: usize, case: impl Fn(usize) -> Result<Option<String>> + Sync) -> Check {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(cases.max(1));
    let results: Vec<Option<String>> = std::thread::scope(|sc| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let case = &case;
                sc.spawn(move || {
                    (t..cases)
                        .step_by(threads)
                        .map(|k| match case(k) {
                            Ok(r) => (k, r),
                            Err(e) => (k, Some(format!("error: {e}"))),
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        let mut all = vec![None; cases];
        for h in handles {
            for (k, r) in h.join().expect("selftest worker panicked") {
                all[k] = r;
            }
        }
        all
    });
    let failures = results.iter().filter(|r| r.is_some()).count();
    Check {
        name: name.to_string(),
        cases,
        failures,
        first_failure: results.into_iter().flatten().next(),
        note: None,
        stats: Vec::new(),
    }
}

fn same_nf(t: &TapeTerm, s: &TapeTerm, theory: Theory) -> Result<Option<String>> {
    let (m, n) = (to_matrix(t, theory)?, to_matrix(s, theory)?);
    Ok(if m == n {
        None
    } else {
        Some(format!("{t}  vs  {s}"))
    })
}

fn holds(b: bool, what: impl FnOnce() -> String) -> Option<String> {
    if b {
        None
    } else {
        Some(what())
    }
}

// Whiskering

/// The seventeen whiskering laws, each as a random instance compared in normal form.
pub fn whiskering(seed: u64, cases: usize) -> Report {
    let sig = test_signature(false);
    let th = Theory::MULTISET;
    let law = |name: &str, f: &dyn Fn(&mut Gen<ChaCha8Rng>) -> Result<Option<String>>| {
        let mut rng = stream(seed, name);
        let mut g = Gen::new(&mut rng, &sig);
        check(name, cases, |_| f(&mut g))
    };
    let size = |g: &mut Gen<ChaCha8Rng>| g.rng.gen_range(1..=6);
    let mut checks = Vec::new();

    checks.push(law("whisker/identity", &|g| {
        let (s, p) = (g.polynomial(), g.polynomial());
        let a = same_nf(&tape::whisker_left(&s, &tape::id_poly(&p)), &tape::id_poly(&s.product(&p)), th)?;
        let b = same_nf(&tape::whisker_right(&s, &tape::id_poly(&p))?, &tape::id_poly(&p.product(&s)), th)?;
        Ok(a.or(b))
    }));
    checks.push(law("whisker/composition", &|g| {
        let s = g.polynomial();
        let (n1, n2) = (size(g), size(g));
        let t1 = g.tape(n1);
        let t2 = g.tape_from(&t1.cod()?, n2);
        let a = same_nf(
            &tape::whisker_left(&s, &TapeTerm::seq(t1.clone(), t2.clone())),
            &TapeTerm::seq(tape::whisker_left(&s, &t1), tape::whisker_left(&s, &t2)),
            th,
        )?;
        let b = same_nf(
            &tape::whisker_right(&s, &TapeTerm::seq(t1.clone(), t2.clone()))?,
            &TapeTerm::seq(tape::whisker_right(&s, &t1)?, tape::whisker_right(&s, &t2)?),
            th,
        )?;
        Ok(a.or(b))
    }));
    checks.push(law("whisker/unit-polynomial", &|g| {
        let n = size(g);
        let t = g.tape(n);
        let one = Polynomial::one();
        Ok(same_nf(&tape::whisker_left(&one, &t), &t, th)?.or(same_nf(&tape::whisker_right(&one, &t)?, &t, th)?))
    }));
    checks.push(law("whisker/zero-polynomial", &|g| {
        let n = size(g);
        let t = g.tape(n);
        let zero = Polynomial::zero();
        Ok(same_nf(&tape::whisker_left(&zero, &t), &TapeTerm::IdZero, th)?
            .or(same_nf(&tape::whisker_right(&zero, &t)?, &TapeTerm::IdZero, th)?))
    }));
    checks.push(law("whisker/sum-of-tapes", &|g| {
        let s = g.polynomial();
        let (n1, n2) = (size(g), size(g));
        let (t1, t2) = (g.tape(n1), g.tape(n2));
        let ((p1, q1), (p2, q2)) = (t1.type_of()?, t2.type_of()?);
        let both = TapeTerm::Oplus(t1.clone().into(), t2.clone().into());
        let a = same_nf(
            &tape::whisker_left(&s, &both),
            &tape::seq_all([
                tape::left_distributor(&s, &p1, &p2),
                TapeTerm::Oplus(tape::whisker_left(&s, &t1).into(), tape::whisker_left(&s, &t2).into()),
                tape::inv_left_distributor(&s, &q1, &q2),
            ]),
            th,
        )?;
        let b = same_nf(
            &tape::whisker_right(&s, &both)?,
            &TapeTerm::Oplus(tape::whisker_right(&s, &t1)?.into(), tape::whisker_right(&s, &t2)?.into()),
            th,
        )?;
        Ok(a.or(b))
    }));
    checks.push(law("whisker/sum-of-polynomials", &|g| {
        let (s, t_) = (g.polynomial(), g.polynomial());
        let n = size(g);
        let t = g.tape(n);
        let (p, q) = t.type_of()?;
        let st = s.oplus(&t_);
        let a = same_nf(
            &tape::whisker_left(&st, &t),
            &TapeTerm::Oplus(tape::whisker_left(&s, &t).into(), tape::whisker_left(&t_, &t).into()),
            th,
        )?;
        let b = same_nf(
            &tape::whisker_right(&st, &t)?,
            &tape::seq_all([
                tape::left_distributor(&p, &s, &t_),
                TapeTerm::Oplus(tape::whisker_right(&s, &t)?.into(), tape::whisker_right(&t_, &t)?.into()),
                tape::inv_left_distributor(&q, &s, &t_),
            ]),
            th,
        )?;
        Ok(a.or(b))
    }));
    checks.push(law("whisker/interchange", &|g| {
        let (n1, n2) = (size(g), size(g));
        let (t1, t2) = (g.tape(n1), g.tape(n2));
        let ((p1, q1), (p2, q2)) = (t1.type_of()?, t2.type_of()?);
        same_nf(
            &TapeTerm::seq(tape::whisker_left(&p1, &t2), tape::whisker_right(&q2, &t1)?),
            &TapeTerm::seq(tape::whisker_right(&p2, &t1)?, tape::whisker_left(&q1, &t2)),
            th,
        )
    }));
    checks.push(law("whisker/diag-codiag", &|g| {
        let (s, u) = (g.polynomial(), g.monomial());
        let us = u.to_poly().product(&s);
        let a = same_nf(&tape::whisker_right(&s, &TapeTerm::Diag(u.clone()))?, &tape::diag_poly(&us), th)?;
        let b = same_nf(&tape::whisker_right(&s, &TapeTerm::Codiag(u))?, &tape::codiag_poly(&us), th)?;
        Ok(a.or(b))
    }));
    checks.push(law("whisker/bang-cobang", &|g| {
        let (s, u) = (g.polynomial(), g.monomial());
        let us = u.to_poly().product(&s);
        let a = same_nf(&tape::whisker_right(&s, &TapeTerm::Bang(u.clone()))?, &tape::bang_poly(&us), th)?;
        let b = same_nf(&tape::whisker_right(&s, &TapeTerm::Cobang(u))?, &tape::cobang_poly(&us), th)?;
        Ok(a.or(b))
    }));
    checks.push(law("whisker/sum-symmetry", &|g| {
        let (s, p, q) = (g.polynomial(), g.polynomial(), g.polynomial());
        same_nf(
            &tape::whisker_right(&s, &tape::sym_plus_poly(&p, &q))?,
            &tape::sym_plus_poly(&p.product(&s), &q.product(&s)),
            th,
        )
    }));
    checks.push(law("whisker/product-symmetry", &|g| {
        let (p, q, s) = (g.polynomial(), g.polynomial(), g.polynomial());
        same_nf(
            &tape::tensor_symmetry(&p.product(&q), &s),
            &TapeTerm::seq(
                tape::whisker_left(&p, &tape::tensor_symmetry(&q, &s)),
                tape::whisker_right(&q, &tape::tensor_symmetry(&p, &s))?,
            ),
            th,
        )
    }));
    checks.push(law("whisker/symmetry-naturality", &|g| {
        let s = g.polynomial();
        let n = size(g);
        let t = g.tape(n);
        let (p, q) = t.type_of()?;
        same_nf(
            &TapeTerm::seq(tape::whisker_right(&s, &t)?, tape::tensor_symmetry(&q, &s)),
            &TapeTerm::seq(tape::tensor_symmetry(&p, &s), tape::whisker_left(&s, &t)),
            th,
        )
    }));
    checks.push(law("whisker/left-right-commute", &|g| {
        let (s, t_) = (g.polynomial(), g.polynomial());
        let n = size(g);
        let t = g.tape(n);
        same_nf(
            &tape::whisker_left(&s, &tape::whisker_right(&t_, &t)?),
            &tape::whisker_right(&t_, &tape::whisker_left(&s, &t))?,
            th,
        )
    }));
    checks.push(law("whisker/left-associativity", &|g| {
        let (s, t_) = (g.polynomial(), g.polynomial());
        let n = size(g);
        let t = g.tape(n);
        same_nf(
            &tape::whisker_left(&s.product(&t_), &t),
            &tape::whisker_left(&s, &tape::whisker_left(&t_, &t)),
            th,
        )
    }));
    checks.push(law("whisker/right-associativity", &|g| {
        let (s, t_) = (g.polynomial(), g.polynomial());
        let n = size(g);
        let t = g.tape(n);
        same_nf(
            &tape::whisker_right(&t_.product(&s), &t)?,
            &tape::whisker_right(&s, &tape::whisker_right(&t_, &t)?)?,
            th,
        )
    }));
    checks.push(law("whisker/right-distributor", &|g| {
        let (s, p, q, r) = (g.polynomial(), g.polynomial(), g.polynomial(), g.polynomial());
        same_nf(
            &tape::whisker_right(&s, &tape::left_distributor(&p, &q, &r))?,
            &tape::left_distributor(&p, &q.product(&s), &r.product(&s)),
            th,
        )
    }));
    checks.push(law("whisker/left-distributor", &|g| {
        let (s, p, q, r) = (g.polynomial(), g.polynomial(), g.polynomial(), g.polynomial());
        same_nf(
            &tape::whisker_left(&s, &tape::left_distributor(&p, &q, &r)),
            &TapeTerm::seq(
                tape::left_distributor(&s.product(&p), &q, &r),
                tape::inv_left_distributor(&s, &p.product(&q), &p.product(&r)),
            ),
            th,
        )
    }));
    Report { checks }
}

// Tape axioms

/// The tape axioms on random monomials and lifted circuits.
pub fn tape_axioms(seed: u64, cases: usize) -> Report {
    use TapeTerm::*;
    let sig = test_signature(false);
    let th = Theory::MULTISET;
    let ax = |name: &str, f: &dyn Fn(&mut Gen<ChaCha8Rng>) -> Result<Option<String>>| {
        let mut rng = stream(seed, name);
        let mut g = Gen::new(&mut rng, &sig);
        check(name, cases, |_| f(&mut g))
    };
    let o = |a: TapeTerm, b: TapeTerm| TapeTerm::Oplus(a.into(), b.into());
    let s = |v: Vec<TapeTerm>| tape::seq_all(v);
    let id = |u: &Monomial| IdMon(u.clone());
    let mut checks = Vec::new();

    checks.push(ax("tape/sym-inv", &|g| {
        let (u, v) = (g.monomial(), g.monomial());
        same_nf(&s(vec![SymPlus(u.clone(), v.clone()), SymPlus(v.clone(), u.clone())]), &o(id(&u), id(&v)), th)
    }));
    checks.push(ax("tape/sym-nat", &|g| {
        let (u1, u2) = (g.monomial(), g.monomial());
        let ((c, v1), (d, v2)) = (g.circuit_from(&u1, 2), g.circuit_from(&u2, 2));
        same_nf(
            &s(vec![o(Lift(c.clone()), Lift(d.clone())), SymPlus(v1, v2)]),
            &s(vec![SymPlus(u1, u2), o(Lift(d), Lift(c))]),
            th,
        )
    }));
    checks.push(ax("tape/diag-as", &|g| {
        let u = g.monomial();
        same_nf(
            &s(vec![Diag(u.clone()), o(Diag(u.clone()), id(&u))]),
            &s(vec![Diag(u.clone()), o(id(&u), Diag(u.clone()))]),
            th,
        )
    }));
    checks.push(ax("tape/diag-un", &|g| {
        let u = g.monomial();
        same_nf(&s(vec![Diag(u.clone()), o(Bang(u.clone()), id(&u))]), &id(&u), th)
    }));
    checks.push(ax("tape/diag-co", &|g| {
        let u = g.monomial();
        same_nf(&s(vec![Diag(u.clone()), SymPlus(u.clone(), u.clone())]), &Diag(u), th)
    }));
    checks.push(ax("tape/codiag-as", &|g| {
        let u = g.monomial();
        same_nf(
            &s(vec![o(Codiag(u.clone()), id(&u)), Codiag(u.clone())]),
            &s(vec![o(id(&u), Codiag(u.clone())), Codiag(u.clone())]),
            th,
        )
    }));
    checks.push(ax("tape/codiag-un", &|g| {
        let u = g.monomial();
        same_nf(&s(vec![o(Cobang(u.clone()), id(&u)), Codiag(u.clone())]), &id(&u), th)
    }));
    checks.push(ax("tape/codiag-co", &|g| {
        let u = g.monomial();
        same_nf(&s(vec![SymPlus(u.clone(), u.clone()), Codiag(u.clone())]), &Codiag(u), th)
    }));
    checks.push(ax("tape/bi", &|g| {
        let u = g.monomial();
        same_nf(
            &s(vec![Codiag(u.clone()), Diag(u.clone())]),
            &s(vec![
                o(Diag(u.clone()), Diag(u.clone())),
                o(o(id(&u), SymPlus(u.clone(), u.clone())), id(&u)),
                o(Codiag(u.clone()), Codiag(u.clone())),
            ]),
            th,
        )
    }));
    checks.push(ax("tape/bo", &|g| {
        let u = g.monomial();
        same_nf(&s(vec![Cobang(u.clone()), Bang(u)]), &IdZero, th)
    }));
    checks.push(ax("tape/diag-bi", &|g| {
        let u = g.monomial();
        same_nf(&s(vec![Cobang(u.clone()), Diag(u.clone())]), &o(Cobang(u.clone()), Cobang(u)), th)
    }));
    checks.push(ax("tape/codiag-bi", &|g| {
        let u = g.monomial();
        same_nf(&s(vec![Codiag(u.clone()), Bang(u.clone())]), &o(Bang(u.clone()), Bang(u)), th)
    }));
    checks.push(ax("tape/diag-nat", &|g| {
        let u = g.monomial();
        let (c, v) = g.circuit_from(&u, 3);
        same_nf(&s(vec![Lift(c.clone()), Diag(v)]), &s(vec![Diag(u), o(Lift(c.clone()), Lift(c))]), th)
    }));
    checks.push(ax("tape/bang-nat", &|g| {
        let u = g.monomial();
        let (c, v) = g.circuit_from(&u, 3);
        same_nf(&s(vec![Lift(c), Bang(v)]), &Bang(u), th)
    }));
    checks.push(ax("tape/codiag-nat", &|g| {
        let u = g.monomial();
        let (c, v) = g.circuit_from(&u, 3);
        same_nf(&s(vec![o(Lift(c.clone()), Lift(c.clone())), Codiag(v)]), &s(vec![Codiag(u), Lift(c)]), th)
    }));
    checks.push(ax("tape/cobang-nat", &|g| {
        let u = g.monomial();
        let (c, v) = g.circuit_from(&u, 3);
        same_nf(&s(vec![Cobang(u), Lift(c)]), &Cobang(v), th)
    }));
    Report { checks }
}

// Normal forms

/// `F∘G = id` on matrices and `F∘G∘F = F` on tapes, in every mode.
pub fn isomorphism(seed: u64, cases: usize) -> Report {
    let mut checks = Vec::new();
    for (theory, frob) in [(Theory::MULTISET, false), (Theory::SET, false), (Theory::CB, true)] {
        let sig = test_signature(frob);
        let mode = theory.mode.name();
        let name = format!("iso/{mode}/F(G(M))=M");
        let mut rng = stream(seed, &name);
        let mut g = Gen::new(&mut rng, &sig);
        checks.push(check(&name, cases, |_| {
            let m = g.matrix(theory)?;
            let back = to_matrix(&from_matrix(&m), theory)?;
            Ok(holds(back == m, || format!("{m}\nbecame\n{back}")))
        }));
        let name = format!("iso/{mode}/F(G(F(t)))=F(t)");
        let mut rng = stream(seed, &name);
        let mut g = Gen::new(&mut rng, &sig);
        checks.push(check(&name, cases, |_| {
            let n = g.rng.gen_range(1..=6);
            let t = g.tape(n);
            let m = to_matrix(&t, theory)?;
            Ok(holds(to_matrix(&from_matrix(&m), theory)? == m, || t.to_string()))
        }));
    }
    Report { checks }
}

/// `F(t ⊗ s) = F(t) ⊛ F(s)`.
pub fn kronecker(seed: u64, cases: usize) -> Report {
    let sig = test_signature(false);
    let name = "kron/F(t*s)=F(t)(x)F(s)";
    let mut rng = stream(seed, name);
    let mut g = Gen::new(&mut rng, &sig);
    let c = check(name, cases, |_| {
        let (n1, n2) = (g.rng.gen_range(1..=4), g.rng.gen_range(1..=4));
        let (t, s) = (g.tape(n1), g.tape(n2));
        let lhs = to_matrix(&tape::tensor(&t, &s)?, Theory::MULTISET)?;
        let rhs = mat_kron(&to_matrix(&t, Theory::MULTISET)?, &to_matrix(&s, Theory::MULTISET)?);
        Ok(holds(lhs == rhs, || format!("{t}  with  {s}")))
    });
    Report { checks: vec![c] }
}

// Orders

/// Set-mode order: adjointness of the biproduct structure, idempotency and
/// collapse of multiplicities.
pub fn set_order(seed: u64, cases: usize) -> Report {
    use TapeTerm::*;
    let sig = test_signature(false);
    let th = Theory::SET;
    let o = |a: TapeTerm, b: TapeTerm| TapeTerm::Oplus(a.into(), b.into());
    let mut checks = Vec::new();
    let mut ineq = |name: &str, f: &dyn Fn(&Monomial) -> (TapeTerm, TapeTerm)| {
        let mut rng = stream(seed, name);
        let mut g = Gen::new(&mut rng, &sig);
        checks.push(check(name, cases, |_| {
            let (l, r) = f(&g.monomial());
            Ok(holds(tape_leq(&l, &r, th)?, || format!("{l}  <=  {r}")))
        }));
    };
    ineq("set/cobang-bang", &|u| (IdZero, TapeTerm::seq(Cobang(u.clone()), Bang(u.clone()))));
    ineq("set/bang-cobang", &|u| (TapeTerm::seq(Bang(u.clone()), Cobang(u.clone())), IdMon(u.clone())));
    ineq("set/codiag-diag", &|u| {
        (o(IdMon(u.clone()), IdMon(u.clone())), TapeTerm::seq(Codiag(u.clone()), Diag(u.clone())))
    });
    ineq("set/diag-codiag", &|u| (TapeTerm::seq(Diag(u.clone()), Codiag(u.clone())), IdMon(u.clone())));

    let name = "set/idempotent-sum";
    let mut rng = stream(seed, name);
    let mut g = Gen::new(&mut rng, &sig);
    checks.push(check(name, cases, |_| {
        let ms = g.matrices(th, 2)?;
        let (t, s) = (from_matrix(&ms[0]), from_matrix(&ms[1]));
        let tt = tape::sum(&t, &t)?;
        let ts = tape::sum(&t, &s)?;
        let ok = tape_equiv(&tt, &t, th)? && tape_leq(&t, &ts, th)? && tape_leq(&s, &ts, th)?;
        Ok(holds(ok, || format!("{t}  and  {s}")))
    }));

    let name = "set/multiplicity-collapse";
    let mut rng = stream(seed, name);
    let mut g = Gen::new(&mut rng, &sig);
    checks.push(check(name, cases, |_| {
        let c = TapeTerm::Lift(g.circuit(3));
        let cc = tape::sum(&c, &c)?;
        let collapsed = tape_equiv(&cc, &c, th)?;
        let kept = to_matrix(&cc, Theory::MULTISET)? != to_matrix(&c, Theory::MULTISET)?;
        Ok(holds(collapsed && kept, || c.to_string()))
    }));
    Report { checks }
}

fn word_meet(c: &CircuitTerm, d: &CircuitTerm) -> Result<CircuitTerm> {
    let (u, v) = c.type_of()?;
    Ok(circuit::CircuitTerm::seq(
        CircuitTerm::seq(circuit::word_copier(&u), CircuitTerm::tensor(c.clone(), d.clone())),
        circuit::word_cocopier(&v),
    ))
}

fn word_top(u: &Monomial, v: &Monomial) -> CircuitTerm {
    CircuitTerm::seq(circuit::word_discharger(u), circuit::word_codischarger(v))
}

/// A random interpretation with carrier size `n` on every sort.
pub fn random_interpretation<R: Rng>(rng: &mut R, sig: &MonSignature, n: usize) -> Interpretation {
    let space = ModelSpace::new(sig, n);
    let bits: Vec<bool> = (0..space.bits).map(|_| rng.gen()).collect();
    space.build(|k| bits[k])
}

/// The axioms of cartesian bicategories at circuit level, and the soundness of
/// `cb_leq` against finite relations.
pub fn cb_order(seed: u64, cases: usize, samples: usize) -> Report {
    use CircuitTerm::{Cocopier, Codischarger, Copier, Discharger, Id, IdUnit, Sym};
    let sig = test_signature(true);
    let mut checks = Vec::new();
    let t = CircuitTerm::tensor;
    let s = CircuitTerm::seq;
    let mut law = |name: &str, eq: bool, f: &dyn Fn(&mut Gen<ChaCha8Rng>) -> Result<(CircuitTerm, CircuitTerm)>| {
        let mut rng = stream(seed, name);
        let mut g = Gen::new(&mut rng, &sig);
        checks.push(check(name, cases, |_| {
            let (l, r) = f(&mut g)?;
            let ok = if eq { circuits_equal(&l, &r, &sig)? } else { cb_leq(&l, &r, &sig)? };
            Ok(holds(ok, || format!("{l}  vs  {r}")))
        }));
    };
    law("cb/sym-inv", true, &|g| {
        let (a, b) = (g.sort(), g.sort());
        Ok((s(Sym(a.clone(), b.clone()), Sym(b.clone(), a.clone())), t(Id(a), Id(b))))
    });
    law("cb/sym-nat", true, &|g| {
        let (u1, u2) = (g.word(), g.word());
        let ((c, v1), (d, v2)) = (g.circuit_from(&u1, 2), g.circuit_from(&u2, 2));
        Ok((
            s(t(c.clone(), d.clone()), circuit::sym_word(&v1, &v2)),
            s(circuit::sym_word(&u1, &u2), t(d, c)),
        ))
    });
    law("cb/copier-as", true, &|g| {
        let a = g.sort();
        Ok((
            s(Copier(a.clone()), t(Copier(a.clone()), Id(a.clone()))),
            s(Copier(a.clone()), t(Id(a.clone()), Copier(a))),
        ))
    });
    law("cb/copier-un", true, &|g| {
        let a = g.sort();
        Ok((s(Copier(a.clone()), t(Discharger(a.clone()), Id(a.clone()))), Id(a)))
    });
    law("cb/copier-co", true, &|g| {
        let a = g.sort();
        Ok((s(Copier(a.clone()), Sym(a.clone(), a.clone())), Copier(a)))
    });
    law("cb/cocopier-as", true, &|g| {
        let a = g.sort();
        Ok((
            s(t(Cocopier(a.clone()), Id(a.clone())), Cocopier(a.clone())),
            s(t(Id(a.clone()), Cocopier(a.clone())), Cocopier(a)),
        ))
    });
    law("cb/cocopier-un", true, &|g| {
        let a = g.sort();
        Ok((s(t(Codischarger(a.clone()), Id(a.clone())), Cocopier(a.clone())), Id(a)))
    });
    law("cb/cocopier-co", true, &|g| {
        let a = g.sort();
        Ok((s(Sym(a.clone(), a.clone()), Cocopier(a.clone())), Cocopier(a)))
    });
    law("cb/special", true, &|g| {
        let a = g.sort();
        Ok((s(Copier(a.clone()), Cocopier(a.clone())), Id(a)))
    });
    law("cb/frobenius", true, &|g| {
        let a = g.sort();
        Ok((
            s(t(Copier(a.clone()), Id(a.clone())), t(Id(a.clone()), Cocopier(a.clone()))),
            s(Cocopier(a.clone()), Copier(a)),
        ))
    });
    law("cb/copier-nat", false, &|g| {
        let u = g.word();
        let (c, v) = g.circuit_from(&u, 3);
        Ok((s(c.clone(), circuit::word_copier(&v)), s(circuit::word_copier(&u), t(c.clone(), c))))
    });
    law("cb/discharger-nat", false, &|g| {
        let u = g.word();
        let (c, v) = g.circuit_from(&u, 3);
        Ok((s(c, circuit::word_discharger(&v)), circuit::word_discharger(&u)))
    });
    law("cb/codischarger-discharger", false, &|g| {
        let a = g.sort();
        Ok((s(Codischarger(a.clone()), Discharger(a)), IdUnit))
    });
    law("cb/discharger-codischarger", false, &|g| {
        let a = g.sort();
        Ok((Id(a.clone()), s(Discharger(a.clone()), Codischarger(a))))
    });
    law("cb/cocopier-copier", false, &|g| {
        let a = g.sort();
        Ok((s(Cocopier(a.clone()), Copier(a.clone())), t(Id(a.clone()), Id(a))))
    });
    law("cb/copier-cocopier", false, &|g| {
        let a = g.sort();
        Ok((Id(a.clone()), s(Copier(a.clone()), Cocopier(a))))
    });
    checks.push(cb_soundness(seed, samples, &sig));
    Report { checks }
}

/// Random comparable circuits checked against random finite interpretations.
/// The note records how often the homomorphism criterion fired, and how many
/// violations the opposite direction would have produced.
pub fn cb_soundness(seed: u64, samples: usize, sig: &MonSignature) -> Check {
    let name = "cb/soundness-vs-relations";
    let mut rng = stream(seed, name);
    let mut fired = 0;
    let mut reversed_bad = 0;
    let mut inner = ChaCha8Rng::seed_from_u64(rng.gen());
    let mut g = Gen::new(&mut inner, sig);
    let mut c = check(name, samples, |_| {
        let u = g.word();
        let (c1, v) = g.circuit_from(&u, 3);
        let mut c2 = word_top(&u, &v);
        for _ in 0..20 {
            let (d, dv) = g.circuit_from(&u, 3);
            if dv == v {
                c2 = d;
                break;
            }
        }
        let pool = [
            c1.clone(),
            c2.clone(),
            word_meet(&c1, &c2)?,
            word_meet(&c1, &c1)?,
            word_top(&u, &v),
            CircuitTerm::seq(c1.clone(), CircuitTerm::seq(circuit::word_copier(&v), circuit::word_cocopier(&v))),
        ];
        let x = pool.choose(&mut rng).unwrap();
        let y = pool.choose(&mut rng).unwrap();
        let n = rng.gen_range(1..=3);
        let interp = random_interpretation(&mut rng, sig, n);
        let (rx, ry) = (eval_circuit(x, &interp)?, eval_circuit(y, &interp)?);
        let (gx, gy) = (x.to_hypergraph()?, y.to_hypergraph()?);
        // the same test with the homomorphism running the other way
        if graph_leq(&gy, &gx) && !rx.is_subset(&ry) {
            reversed_bad += 1;
        }
        if !cb_leq(x, y, sig)? {
            return Ok(None);
        }
        fired += 1;
        Ok(holds(rx.is_subset(&ry), || format!("{x}  <=  {y} under {}", interp.to_json())))
    });
    c.note = Some(format!("criterion held in {fired}, opposite direction unsound in {reversed_bad}"));
    c.stats = vec![("held", fired), ("opposite_unsound", reversed_bad)];
    c
}

// Relations

fn cr_sig() -> MonSignature {
    cr::cr_signature(["R", "S", "T"])
}

/// Random inclusions every model satisfies: bottom, top, double converse.
pub fn cr_laws(seed: u64, cases: usize, cfg: &SearchConfig) -> Report {
    let sig = cr_sig();
    let syms = ["R", "S", "T"];
    let mut checks = Vec::new();
    let mut law = |name: &str, f: &dyn Fn(&CrExpr) -> (CrExpr, CrExpr), both: bool| {
        let mut rng = stream(seed, name);
        checks.push(check(name, cases, |_| {
            let n = rng.gen_range(0..=12);
            let e = random_cr(&mut rng, &syms, n);
            let (l, r) = f(&e);
            let mut ok = decide_leq(&l, &r, &sig, cfg)?.holds();
            if both {
                ok &= decide_leq(&r, &l, &sig, cfg)?.holds();
            }
            Ok(holds(ok, || format!("{l}  <=  {r}")))
        }));
    };
    law("cr/bot-below", &|e| (CrExpr::Bot, e.clone()), false);
    law("cr/top-above", &|e| (e.clone(), CrExpr::Top), false);
    law("cr/converse-involutive", &|e| (CrExpr::op(CrExpr::op(e.clone())), e.clone()), true);
    Report { checks }
}

/// The encoding agrees with the direct semantics on every small expression.
pub fn cr_agreement(max_ops: usize) -> Report {
    let sig = cr_sig();
    let two = |rels: [u8; 3]| -> Interpretation {
        let space = ModelSpace::new(&sig, 2);
        // generators are ordered by name, four bits each
        let mask = rels.iter().enumerate().fold(0u128, |m, (k, r)| m | ((*r as u128) << (4 * k)));
        space.from_mask(mask)
    };
    let leaves = [CrExpr::rel("R"), CrExpr::rel("S")];
    let exprs = all_cr(&leaves, max_ops);
    // R varies over all sixteen relations, S and T stay fixed
    let models: Vec<Interpretation> = (0..16u8).map(|r| two([r, 0b0110, 0b1001])).collect();
    let name = format!("cr/encode-agrees<={max_ops}ops");
    let mut c = par_check(&name, exprs.len(), |k| {
        let e = &exprs[k];
        let t = encode(e, &sig)?;
        for m in &models {
            if eval_cr(e, &sig, m)? != eval_tape(&t, m)? {
                return Ok(Some(format!("{e} under {}", m.to_json())));
            }
        }
        Ok(None)
    });
    c.note = Some(format!("{} models each", models.len()));
    let leaves = [CrExpr::rel("R"), CrExpr::One, CrExpr::Top, CrExpr::Bot];
    let consts = all_cr(&leaves, max_ops.min(2));
    let mut d = par_check("cr/encode-agrees-constants", consts.len(), |k| {
        let e = &consts[k];
        let t = encode(e, &sig)?;
        for m in &models {
            if eval_cr(e, &sig, m)? != eval_tape(&t, m)? {
                return Ok(Some(format!("{e} under {}", m.to_json())));
            }
        }
        Ok(None)
    });
    d.note = c.note.clone();
    Report { checks: vec![c, d] }
}

/// A candidate pair likely to be an inclusion.
fn cr_pair<R: Rng>(rng: &mut R, syms: &[&str]) -> (CrExpr, CrExpr) {
    let mut e = |n: usize| {
        let k = rng.gen_range(0..=n);
        random_cr(rng, syms, k)
    };
    let (a, b, c) = (e(3), e(3), e(3));
    match rng.gen_range(0..8) {
        0 => (a.clone(), CrExpr::union(a, b)),
        1 => (CrExpr::inter(a.clone(), b), a),
        2 => (CrExpr::seq(a.clone(), CrExpr::union(b.clone(), c.clone())), CrExpr::union(CrExpr::seq(a.clone(), b), CrExpr::seq(a, c))),
        3 => (CrExpr::seq(a.clone(), CrExpr::inter(b.clone(), c.clone())), CrExpr::inter(CrExpr::seq(a.clone(), b), CrExpr::seq(a, c))),
        4 => (CrExpr::op(CrExpr::seq(a.clone(), b.clone())), CrExpr::seq(CrExpr::op(b), CrExpr::op(a))),
        5 => (CrExpr::inter(CrExpr::seq(a.clone(), b.clone()), c.clone()), CrExpr::seq(a.clone(), CrExpr::inter(b, CrExpr::seq(CrExpr::op(a), c)))),
        6 => (a.clone(), CrExpr::seq(a.clone(), CrExpr::seq(CrExpr::op(a.clone()), a))),
        _ => (a, b),
    }
}

/// Whenever the procedure accepts, no model on two points refutes the inclusion.
pub fn cr_soundness(seed: u64, accepted: usize, cfg: &SearchConfig) -> Report {
    let sig = cr_sig();
    let syms = ["R", "S", "T"];
    let name = "cr/accepted-are-valid";
    let mut rng = stream(seed, name);
    let space = ModelSpace::new(&sig, 2);
    let exhaustive = space.count() < 1 << 16;
    let models: Vec<Interpretation> = if exhaustive {
        (0..space.count()).map(|m| space.from_mask(m)).collect()
    } else {
        (0..1 << 12).map(|_| random_interpretation(&mut rng, &sig, 2)).collect()
    };
    let mut tried = 0;
    let mut pairs = Vec::new();
    let mut error = None;
    while pairs.len() < accepted && tried < accepted * 40 {
        tried += 1;
        let (l, r) = cr_pair(&mut rng, &syms);
        match decide_leq(&l, &r, &sig, cfg) {
            Ok(v) if v.holds() => pairs.push((l, r)),
            Ok(_) => {}
            Err(e) => {
                error.get_or_insert(format!("{l} <= {r}: {e}"));
            }
        }
    }
    let mut c = par_check(name, pairs.len(), |k| {
        let (l, r) = &pairs[k];
        for m in &models {
            if !eval_cr(l, &sig, m)?.is_subset(&eval_cr(r, &sig, m)?) {
                return Ok(Some(format!("{l}  <=  {r} refuted by {}", m.to_json())));
            }
        }
        Ok(None)
    });
    if pairs.len() < accepted || error.is_some() {
        c.failures += 1;
        c.first_failure.get_or_insert(error.unwrap_or_else(|| format!("only {} accepted pairs", pairs.len())));
    }
    c.stats = vec![("accepted", pairs.len()), ("candidates", tried), ("models", models.len())];
    c.note = Some(format!(
        "{} of {tried} candidates accepted, {} {} models",
        pairs.len(),
        models.len(),
        if exhaustive { "exhaustive" } else { "sampled" }
    ));
    Report { checks: vec![c] }
}

/// The structural mirror of a tape has the transposed normal form.
pub fn converse_agreement(seed: u64, cases: usize) -> Report {
    let sig = test_signature(true);
    let name = "cr/dagger-is-transpose";
    let mut rng = stream(seed, name);
    let mut g = Gen::new(&mut rng, &sig);
    let c = check(name, cases, |_| {
        let n = g.rng.gen_range(1..=6);
        let t = g.tape(n);
        let lhs = to_matrix(&tape::dagger(&t)?, Theory::CB)?;
        let rhs = mat_transpose(&to_matrix(&t, Theory::CB)?)?;
        Ok(holds(lhs == rhs, || t.to_string()))
    });
    Report { checks: vec![c] }
}

/// Every suite at the given scale.
pub fn run_all(seed: u64, sizes: Sizes, cfg: &SearchConfig) -> Report {
    let mut r = Report::default();
    r.extend(whiskering(seed, sizes.whiskering));
    r.extend(tape_axioms(seed, sizes.axioms));
    r.extend(isomorphism(seed, sizes.isomorphism));
    r.extend(kronecker(seed, sizes.kronecker));
    r.extend(set_order(seed, sizes.order));
    r.extend(cb_order(seed, sizes.axioms, sizes.cb_samples));
    r.extend(cr_laws(seed, sizes.cr_random, cfg));
    r.extend(cr_agreement(sizes.cr_enum_ops));
    r.extend(cr_soundness(seed, sizes.cr_pairs, cfg));
    r.extend(converse_agreement(seed, sizes.isomorphism));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_profile_passes() {
        let r = run_all(1, Sizes::quick(), &SearchConfig::default());
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn transcripts_are_reproducible() {
        let a = whiskering(5, 5).to_string();
        assert_eq!(a, whiskering(5, 5).to_string());
    }
}
