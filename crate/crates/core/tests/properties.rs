use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tape_diagrams::cr::{cr_signature, decide_leq, eval_cr};
use tape_diagrams::gen::{random_cr, test_signature, Gen};
use tape_diagrams::matrix::{from_matrix, to_matrix};
use tape_diagrams::order::Theory;
use tape_diagrams::rel::{eval_tape, SearchConfig};
use tape_diagrams::selftest::random_interpretation;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    // Normalising never changes what a tape denotes, in any mode the oracle can see.
    #[test]
    fn normal_forms_preserve_relations(seed in any::<u64>(), size in 1usize..=6, n in 1usize..=2) {
        let sig = test_signature(true);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = Gen::new(&mut rng, &sig).tape(size);
        let interp = random_interpretation(&mut rng, &sig, n);
        let before = eval_tape(&t, &interp).unwrap();
        for theory in [Theory::SET, Theory::CB] {
            let back = from_matrix(&to_matrix(&t, theory).unwrap());
            prop_assert_eq!(&eval_tape(&back, &interp).unwrap(), &before, "{} in {}", t, theory.mode);
        }
    }

    // An accepted inclusion survives every model we throw at it; a refutation
    // comes with a model that really refutes.
    #[test]
    fn verdicts_agree_with_models(seed in any::<u64>(), a in 0usize..=6, b in 0usize..=6) {
        let sig = cr_signature(["R", "S"]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e1 = random_cr(&mut rng, &["R", "S"], a);
        let e2 = random_cr(&mut rng, &["R", "S"], b);
        let cfg = SearchConfig { budget: 512, ..SearchConfig::default() };
        let verdict = decide_leq(&e1, &e2, &sig, &cfg).unwrap();
        if verdict.holds() {
            for n in 1..=3 {
                let i = random_interpretation(&mut rng, &sig, n);
                prop_assert!(eval_cr(&e1, &sig, &i).unwrap().is_subset(&eval_cr(&e2, &sig, &i).unwrap()), "{} <= {}", e1, e2);
            }
        } else if let tape_diagrams::Verdict::Fails(Some(i)) = verdict {
            prop_assert!(!eval_cr(&e1, &sig, &i).unwrap().is_subset(&eval_cr(&e2, &sig, &i).unwrap()));
        }
    }
}
