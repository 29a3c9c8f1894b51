//! The ten acceptance criteria, one verdict line each. Runs without the libtest
//! harness so the lines always reach the terminal.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tape_diagrams::circuit::CircuitTerm;
use tape_diagrams::cr::{cr_signature, decide_equiv, decide_leq, eval_cr, CrExpr, Verdict};
use tape_diagrams::gen::random_cr;
use tape_diagrams::matrix::{mat_kron, to_matrix, TapeMatrix};
use tape_diagrams::order::Theory;
use tape_diagrams::parse::{parse_cr, parse_signature, parse_tape};
use tape_diagrams::rel::SearchConfig;
use tape_diagrams::selftest::{self, Report};
use tape_diagrams::signature::{expand_generator, reduce_rig_signature, MonSignature, Monomial, Polynomial, RigSignature};
use tape_diagrams::tape;

const SEED: u64 = 2024;

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_report(r: &Report) -> Outcome {
    let failed: Vec<String> = r.checks.iter().filter(|c| !c.passed()).map(|c| c.to_string()).collect();
    Outcome {
        ok: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} checks", r.checks.len())
        } else {
            failed.join("; ")
        },
    }
}

fn whiskering() -> Outcome {
    let start = Instant::now();
    let r = selftest::whiskering(SEED, 200);
    let took = start.elapsed();
    let mut o = from_report(&r);
    o.ok &= r.checks.len() == 17 && took < Duration::from_secs(60);
    o.detail = format!("{} in {:.1?}", o.detail, took);
    o
}

fn tape_axioms() -> Outcome {
    from_report(&selftest::tape_axioms(SEED, 50))
}

fn isomorphism() -> Outcome {
    from_report(&selftest::isomorphism(SEED, 200))
}

/// The worked tensor example: two tapes with two-by-two normal forms.
fn kronecker_example() -> Result<bool, tape_diagrams::Error> {
    let sig = parse_signature(
        "sort U V W Z U2 V2 W2 Z2;
         gen c : V -> U; gen d : U -> Z; gen e : Z -> W;
         gen c2 : U2 -> V2; gen d2 : V2 -> W2; gen e2 : W2 -> Z2;",
    )?
    .into_monoidal()?
    .0;
    let t = parse_tape("(idm(U) (+) [c]) ; codiag(U) ; [d] ; diag(Z) ; ([e] (+) idm(Z))", &sig, None)?;
    let s = parse_tape("([c2] (+) idm(V2)) ; codiag(V2) ; [d2] ; diag(W2) ; (idm(W2) (+) [e2])", &sig, None)?;
    let th = Theory::MULTISET;
    let got = to_matrix(&tape::tensor(&t, &s)?, th)?;
    let g = |n: &str| sig.gen(n).unwrap();
    let q = |cs: &[&str]| cs.iter().map(|n| g(n)).reduce(CircuitTerm::seq).unwrap();
    let x = |a: &[&str], b: &[&str]| vec![CircuitTerm::tensor(q(a), q(b))];
    let (de, cde, d_, cd) = (&["d", "e"][..], &["c", "d", "e"][..], &["d"][..], &["c", "d"][..]);
    let (cd2, d2, cde2, de2) = (&["c2", "d2"][..], &["d2"][..], &["c2", "d2", "e2"][..], &["d2", "e2"][..]);
    let poly = |ws: &[&[&str]]| Polynomial::new(ws.iter().map(|w| Monomial::of(w)).collect());
    let want = TapeMatrix::new(
        poly(&[&["U", "U2"], &["U", "V2"], &["V", "U2"], &["V", "V2"]]),
        poly(&[&["W", "W2"], &["W", "Z2"], &["Z", "W2"], &["Z", "Z2"]]),
        vec![
            vec![x(de, cd2), x(de, d2), x(cde, cd2), x(cde, d2)],
            vec![x(de, cde2), x(de, de2), x(cde, cde2), x(cde, de2)],
            vec![x(d_, cd2), x(d_, d2), x(cd, cd2), x(cd, d2)],
            vec![x(d_, cde2), x(d_, de2), x(cd, cde2), x(cd, de2)],
        ],
        th,
    )?;
    let kron = mat_kron(&to_matrix(&t, th)?, &to_matrix(&s, th)?);
    Ok(got == want && kron == want)
}

fn kronecker() -> Outcome {
    let mut o = from_report(&selftest::kronecker(SEED, 200));
    match kronecker_example() {
        Ok(true) => o.detail.push_str(", worked 4x4 example reproduced"),
        Ok(false) => {
            o.ok = false;
            o.detail.push_str(", worked 4x4 example differs");
        }
        Err(e) => {
            o.ok = false;
            o.detail.push_str(&format!(", worked example errored: {e}"));
        }
    }
    o
}

fn set_order() -> Outcome {
    from_report(&selftest::set_order(SEED, 50))
}

fn cb_order() -> Outcome {
    let r = selftest::cb_order(SEED, 50, 1000);
    let mut o = from_report(&r);
    let gate = r.get("cb/soundness-vs-relations").unwrap();
    let held = gate.stat("held").unwrap_or(0);
    // a gate that never fires proves nothing
    o.ok &= held >= 100;
    o.detail = format!("{}, {}", o.detail, gate.note.clone().unwrap_or_default());
    o
}

fn cr_decisions() -> Outcome {
    let sig = cr_signature(["R", "S", "T"]);
    let cfg = SearchConfig::default();
    let p = |s: &str| parse_cr(s, Some(&sig)).unwrap();
    let mut bad = Vec::new();
    let mut expect = |what: &str, v: Result<Verdict, tape_diagrams::Error>, holds: bool| match v {
        Ok(v) if v.holds() == holds => Some(v),
        other => {
            bad.push(format!("{what}: {other:?}"));
            None
        }
    };
    expect("distributivity", decide_equiv(&p("R;(S|T)"), &p("R;S | R;T"), &sig, &cfg), true);
    expect("absorption", decide_equiv(&p("R | R & S"), &p("R"), &sig, &cfg), true);
    expect("meet below", decide_leq(&p("R;(S&T)"), &p("R;S & R;T"), &sig, &cfg), true);
    let (l, r) = (p("R;S & R;T"), p("R;(S&T)"));
    if let Some(Verdict::Fails(w)) = expect("meet above", decide_leq(&l, &r, &sig, &cfg), false) {
        match w {
            Some(i) if i.carrier.values().all(|n| *n <= 3)
                && !eval_cr(&l, &sig, &i).unwrap().is_subset(&eval_cr(&r, &sig, &i).unwrap()) => {}
            other => bad.push(format!("meet above: bad witness {other:?}")),
        }
    }
    let laws = selftest::cr_laws(SEED, 100, &cfg);
    for c in laws.checks.iter().filter(|c| !c.passed()) {
        bad.push(c.to_string());
    }
    let slowest = slowest_decision(&sig, &cfg);
    if slowest >= Duration::from_secs(5) {
        bad.push(format!("slowest decision took {slowest:.1?}"));
    }
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("named laws and {} random checks, slowest decision {:.1?}", laws.checks.len(), slowest)
        } else {
            bad.join("; ")
        },
    }
}

/// Times inclusions between random twelve-operator expressions, both accepted
/// and refuted ones.
fn slowest_decision(sig: &MonSignature, cfg: &SearchConfig) -> Duration {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let syms = ["R", "S", "T"];
    let mut worst = Duration::ZERO;
    for k in 0..40 {
        let a = random_cr(&mut rng, &syms, 12);
        let b = if k % 2 == 0 {
            random_cr(&mut rng, &syms, 12)
        } else {
            CrExpr::union(a.clone(), random_cr(&mut rng, &syms, 5))
        };
        let start = Instant::now();
        let _ = decide_leq(&a, &b, sig, cfg);
        worst = worst.max(start.elapsed());
    }
    worst
}

fn cr_agreement() -> Outcome {
    from_report(&selftest::cr_agreement(4))
}

fn cr_soundness() -> Outcome {
    let r = selftest::cr_soundness(SEED, 500, &SearchConfig::default());
    let mut o = from_report(&r);
    o.detail = format!("{}, {}", o.detail, r.checks[0].note.clone().unwrap_or_default());
    o
}

fn reduction() -> Outcome {
    let run = || -> Result<bool, tape_diagrams::Error> {
        let mut rs = RigSignature::new();
        for a in ["A", "B", "C"] {
            rs.add_sort(a)?;
        }
        let p = |ws: &[&[&str]]| Polynomial::new(ws.iter().map(|w| Monomial::of(w)).collect());
        rs.add_generator("s", p(&[&["A", "B"], &["C"]]), p(&[&["A"], &["B"], &["C"]]))?;
        let (sig, table) = reduce_rig_signature(&rs)?;
        let names: Vec<String> = sig.generators().map(|g| g.name.to_string()).collect();
        let six = names == ["s__1_1", "s__1_2", "s__2_1", "s__2_2", "s__3_1", "s__3_2"];
        let m = to_matrix(&expand_generator("s", &table)?, Theory::MULTISET)?;
        let mut cells = true;
        for j in 0..3 {
            for i in 0..2 {
                let e = m.entry(j, i)?;
                let name = format!("s__{}_{}", j + 1, i + 1);
                cells &= e.len() == 1 && e.terms().next() == Some(&sig.gen(&name)?);
            }
        }
        Ok(six && cells && m.rows().len() == 3)
    };
    match run() {
        Ok(ok) => Outcome {
            ok,
            detail: "six components, entry (j,i) = {s__j_i}".into(),
        },
        Err(e) => Outcome {
            ok: false,
            detail: e.to_string(),
        },
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("whiskering laws", whiskering),
        ("tape axioms", tape_axioms),
        ("matrix isomorphism", isomorphism),
        ("kronecker product", kronecker),
        ("set-mode order", set_order),
        ("cartesian bicategory order", cb_order),
        ("relation calculus decisions", cr_decisions),
        ("encoding agrees with semantics", cr_agreement),
        ("soundness sweep", cr_soundness),
        ("signature reduction", reduction),
    ];
    let mut all = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        all &= o.ok;
        println!(
            "criterion {:>2} {} {:<32} [{:.1?}] {}",
            k + 1,
            if o.ok { "PASS" } else { "FAIL" },
            name,
            start.elapsed(),
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
