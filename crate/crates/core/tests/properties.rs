//! Algebraic invariants on randomly generated instances. Each case draws a
//! seed and builds its structures with the crate's generators.

use blendkit::blend::{amalgamate, in_reduct_set, lax_cocone_with_amalgamation, lax_sign_pushout, verify_cocone, Span};
use blendkit::dsl::{from_json, parse, print, random::random_document, to_json};
use blendkit::gen::{self, PL_POOL};
use blendkit::inclusion::{factorization_violation, InclusiveCategory, SemiInclusivePullbacks};
use blendkit::institution::Institution;
use blendkit::msa::{Msa, MsaInclusionKind, MsaSignatures};
use blendkit::partial::{compose, compose_via_pullback, embed, factorize_partial, is_psign_inclusion, is_psign_surjection, leq};
use blendkit::pl::{Pl, PlSignature, SetInclusions};
use blendkit::theory::classify_32_theory_morphism;
use blendkit::three_halves::{is_total, pmod_reduct, psen_translate};
use blendkit::RunConfig;
use proptest::prelude::*;

const CAP: u64 = 1 << 16;

fn nonempty(g: &mut gen::Gen, max: usize) -> PlSignature {
    loop {
        let s = gen::pl_signature(g, PL_POOL.len(), max);
        if !s.is_empty() {
            return s;
        }
    }
}

fn msa_with_sorts(g: &mut gen::Gen) -> blendkit::msa::MsaSignature {
    loop {
        let s = gen::msa_signature(g, 2, 3);
        if !s.sorts().is_empty() {
            return s;
        }
    }
}

fn kind_of(i: u8) -> MsaInclusionKind {
    MsaInclusionKind::ALL[i as usize % 3]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn pl_factorization_is_the_unique_one(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let f = gen::pl_arrow(&mut g, 5);
        let fact = SetInclusions.factorize(&f).unwrap();
        prop_assert_eq!(&fact.image, &f.image());
        prop_assert_eq!(factorization_violation(&SetInclusions, &f, &fact, CAP).unwrap(), None);
    }

    #[test]
    fn msa_factorization_is_the_unique_one(seed in any::<u64>(), k in 0u8..3) {
        let mut g = gen::rng(seed);
        let cat = MsaSignatures::new(kind_of(k));
        let src = gen::msa_signature(&mut g, 2, 3);
        let f = gen::msa_morphism_from(&mut g, &src, 1);
        let fact = cat.factorize(&f).unwrap();
        prop_assert_eq!(factorization_violation(&cat, &f, &fact, CAP).unwrap(), None);
    }

    #[test]
    fn semi_inclusive_pullbacks_commute(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let f = gen::pl_arrow(&mut g, 4);
        let sub = gen::pl_subsignature(&mut g, f.target());
        let incl = SetInclusions.inclusion(&sub, f.target()).unwrap();
        let sq = SetInclusions.semi_inclusive_pullback(&f, &incl).unwrap();
        prop_assert!(SetInclusions.is_inclusion(&sq.left));
        let a = SetInclusions.compose(&sq.left, &f).unwrap();
        let b = SetInclusions.compose(&sq.bottom, &incl).unwrap();
        prop_assert_eq!(a, b);
        // the domain is the preimage of the subsignature
        let expected: Vec<&String> = f.source().symbols().iter().filter(|s| sub.contains(f.apply(s))).collect();
        let got: Vec<&String> = SetInclusions.source(&sq.left).symbols().iter().collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn pl_satisfaction_condition(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let pl = Pl::new();
        let (a, b) = (nonempty(&mut g, 4), nonempty(&mut g, 4));
        let f = gen::pl_morphism(&mut g, &a, &b);
        let m = gen::pl_model(&mut g, f.target());
        let rho = gen::pl_sentence(&mut g, f.source(), 3);
        let lhs = pl.satisfies(f.target(), &m, &pl.translate(&f, &rho).unwrap()).unwrap();
        let rhs = pl.satisfies(f.source(), &pl.reduct(&f, &m).unwrap(), &rho).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pl_translation_and_reduct_are_functorial(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let pl = Pl::new();
        let a = nonempty(&mut g, 4);
        let b = nonempty(&mut g, 4);
        let c = nonempty(&mut g, 4);
        let f = gen::pl_morphism(&mut g, &a, &b);
        let h = gen::pl_morphism(&mut g, &b, &c);
        let fh = f.compose(&h).unwrap();
        let rho = gen::pl_sentence(&mut g, &a, 3);
        prop_assert_eq!(pl.translate(&fh, &rho).unwrap(), pl.translate(&h, &pl.translate(&f, &rho).unwrap()).unwrap());
        let m = gen::pl_model(&mut g, &c);
        prop_assert_eq!(pl.reduct(&fh, &m).unwrap(), pl.reduct(&f, &pl.reduct(&h, &m).unwrap()).unwrap());
    }

    #[test]
    fn msa_satisfaction_condition(seed in any::<u64>(), k in 0u8..3) {
        let mut g = gen::rng(seed);
        let msa = Msa::new(kind_of(k));
        let src = msa_with_sorts(&mut g);
        let f = gen::msa_morphism_from(&mut g, &src, 1);
        let m = gen::msa_algebra(&mut g, f.target(), 2);
        let rho = gen::msa_sentence(&mut g, &src, 3);
        let lhs = msa.satisfies(f.target(), &m, &msa.translate(&f, &rho).unwrap()).unwrap();
        let rhs = msa.satisfies(&src, &msa.reduct(&f, &m).unwrap(), &rho).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn partial_composition_is_associative(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let sigs: Vec<PlSignature> = (0..4).map(|_| gen::pl_signature(&mut g, PL_POOL.len(), 4)).collect();
        let f = gen::pl_partial(&mut g, &sigs[0], &sigs[1]);
        let h = gen::pl_partial(&mut g, &sigs[1], &sigs[2]);
        let k = gen::pl_partial(&mut g, &sigs[2], &sigs[3]);
        let left = compose(&SetInclusions, &compose(&SetInclusions, &f, &h).unwrap(), &k).unwrap();
        let right = compose(&SetInclusions, &f, &compose(&SetInclusions, &h, &k).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(compose(&SetInclusions, &f, &h).unwrap(), compose_via_pullback(&SetInclusions, &f, &h).unwrap());
    }

    #[test]
    fn msa_partial_composition_is_associative(seed in any::<u64>(), k in 0u8..3) {
        let mut g = gen::rng(seed);
        let cat = MsaSignatures::new(kind_of(k));
        let a = gen::msa_signature(&mut g, 2, 2);
        let f = gen::msa_partial(&mut g, &cat, &a, 1);
        let h = gen::msa_partial(&mut g, &cat, f.target(), 1);
        let j = gen::msa_partial(&mut g, &cat, h.target(), 0);
        let left = compose(&cat, &compose(&cat, &f, &h).unwrap(), &j).unwrap();
        let right = compose(&cat, &f, &compose(&cat, &h, &j).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn restriction_order_is_monotone(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let a = gen::pl_signature(&mut g, PL_POOL.len(), 4);
        let b = gen::pl_signature(&mut g, PL_POOL.len(), 4);
        let c = gen::pl_signature(&mut g, PL_POOL.len(), 4);
        let big = gen::pl_partial(&mut g, &a, &b);
        let sub = gen::pl_subsignature(&mut g, big.dom());
        let small = blendkit::partial::restrict(&SetInclusions, &big, &sub).unwrap();
        prop_assert!(leq(&SetInclusions, &big, &big).unwrap());
        prop_assert!(leq(&SetInclusions, &small, &big).unwrap());
        prop_assert_eq!(leq(&SetInclusions, &big, &small).unwrap(), small == big);
        let after = gen::pl_partial(&mut g, &b, &c);
        prop_assert!(leq(&SetInclusions, &compose(&SetInclusions, &small, &after).unwrap(), &compose(&SetInclusions, &big, &after).unwrap()).unwrap());
        let before = gen::pl_partial(&mut g, &c, &a);
        prop_assert!(leq(&SetInclusions, &compose(&SetInclusions, &before, &small).unwrap(), &compose(&SetInclusions, &before, &big).unwrap()).unwrap());
    }

    #[test]
    fn partial_factorization_splits_the_morphism(seed in any::<u64>(), k in 0u8..3) {
        let mut g = gen::rng(seed);
        let cat = MsaSignatures::new(kind_of(k));
        let a = gen::msa_signature(&mut g, 2, 3);
        let phi = gen::msa_partial(&mut g, &cat, &a, 1);
        let fact = factorize_partial(&cat, &phi).unwrap();
        prop_assert!(is_psign_surjection(&cat, &fact.surjection));
        prop_assert!(is_psign_inclusion(&cat, &fact.inclusion));
        prop_assert_eq!(compose(&cat, &fact.surjection, &fact.inclusion).unwrap(), phi);
    }

    #[test]
    fn partial_translation_is_strict(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let pl = Pl::new();
        let a = nonempty(&mut g, 4);
        let b = gen::pl_signature(&mut g, PL_POOL.len(), 4);
        let c = gen::pl_signature(&mut g, PL_POOL.len(), 4);
        let f = gen::pl_partial(&mut g, &a, &b);
        let h = gen::pl_partial(&mut g, &b, &c);
        let fh = compose(&SetInclusions, &f, &h).unwrap();
        let rho = gen::pl_sentence(&mut g, &a, 3);
        let stepwise = match psen_translate(&pl, &f, &rho).unwrap() {
            Some(r) => psen_translate(&pl, &h, &r).unwrap(),
            None => None,
        };
        prop_assert_eq!(psen_translate(&pl, &fh, &rho).unwrap(), stepwise);
    }

    #[test]
    fn partial_reduction_is_lax(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let pl = Pl::new();
        let cfg = RunConfig::default();
        let a = gen::pl_signature(&mut g, PL_POOL.len(), 3);
        let b = gen::pl_signature(&mut g, PL_POOL.len(), 3);
        let c = gen::pl_signature(&mut g, PL_POOL.len(), 3);
        let f = gen::pl_partial(&mut g, &a, &b);
        let h = gen::pl_partial(&mut g, &b, &c);
        let m = gen::pl_model(&mut g, &c);
        let direct = pmod_reduct(&pl, &compose(&SetInclusions, &f, &h).unwrap(), &m, &cfg).unwrap().members;
        for mid in pmod_reduct(&pl, &h, &m, &cfg).unwrap().members {
            for low in pmod_reduct(&pl, &f, &mid, &cfg).unwrap().members {
                prop_assert!(direct.contains(&low));
            }
        }
        let id = blendkit::partial::identity(&SetInclusions, &c);
        prop_assert!(pmod_reduct(&pl, &id, &m, &cfg).unwrap().members.contains(&m));
    }

    #[test]
    fn lax_cocones_verify_and_amalgamate(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let pl = Pl::new();
        let cfg = RunConfig::default();
        let s0 = gen::pl_signature(&mut g, PL_POOL.len(), 3);
        let s1 = nonempty(&mut g, 3);
        let s2 = nonempty(&mut g, 3);
        let span = Span::new(gen::pl_partial(&mut g, &s0, &s1), gen::pl_partial(&mut g, &s0, &s2)).unwrap();
        let blend = lax_sign_pushout(&SetInclusions, &span).unwrap();
        prop_assert!(verify_cocone(&SetInclusions, &blend).unwrap());
        for leg in [&blend.theta0, &blend.theta1, &blend.theta2] {
            prop_assert!(is_total(&pl, leg, &cfg).unwrap());
        }
        let c = lax_cocone_with_amalgamation(&SetInclusions, &span, None).unwrap();
        prop_assert!(verify_cocone(&SetInclusions, &c).unwrap());
        // a compatible family: reducts of a model of the apex
        let top = gen::pl_model(&mut g, c.apex());
        let m1 = pl.reduct(c.theta1.total(), &top).unwrap();
        let m2 = pl.reduct(c.theta2.total(), &top).unwrap();
        let m0 = pl.reduct(c.theta0.total(), &top).unwrap();
        let a = amalgamate(&pl, &c, &m0, &m1, &m2, &cfg).unwrap();
        prop_assert!(a.is_unique());
        prop_assert!(in_reduct_set(&pl, &c.theta1, &m1, &a.model).unwrap());
        prop_assert!(in_reduct_set(&pl, &c.theta2, &m2, &a.model).unwrap());
        prop_assert!(in_reduct_set(&pl, &c.theta0, &m0, &a.model).unwrap());
    }

    #[test]
    fn total_spans_give_strict_cocones(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let s0 = gen::pl_signature(&mut g, PL_POOL.len(), 3);
        let s1 = nonempty(&mut g, 3);
        let s2 = nonempty(&mut g, 3);
        let l = embed(&SetInclusions, &gen::pl_morphism(&mut g, &s0, &s1));
        let r = embed(&SetInclusions, &gen::pl_morphism(&mut g, &s0, &s2));
        let c = lax_sign_pushout(&SetInclusions, &Span::new(l, r).unwrap()).unwrap();
        prop_assert_eq!(c.strict, [true, true]);
    }

    #[test]
    fn theory_morphism_notions_nest(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let pl = Pl::new();
        let a = gen::pl_signature(&mut g, PL_POOL.len(), 3);
        let b = gen::pl_signature(&mut g, PL_POOL.len(), 3);
        let phi = gen::pl_partial(&mut g, &a, &b);
        let t = gen::pl_theory(&mut g, &a, 2, 2);
        let u = gen::pl_theory(&mut g, &b, 2, 2);
        let rep = classify_32_theory_morphism(&pl, &phi, &t, &u, &RunConfig::default()).unwrap();
        prop_assert!(rep.nesting_holds());
        prop_assert!(!rep.strong32.holds || rep.weak32.holds);
        prop_assert_eq!(rep.weak32.holds, rep.closed_partial.holds);
        prop_assert!(!rep.closed_partial.holds || rep.strong_partial.holds);
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let mut g = gen::rng(seed);
        let doc = random_document(&mut g).unwrap();
        let text = print(&doc);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(print(&back), text);
        let json = to_json(&doc);
        prop_assert_eq!(&from_json(&json).unwrap(), &doc);
    }
}
