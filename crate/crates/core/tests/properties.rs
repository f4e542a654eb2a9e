use gentle_core::catalog;
use gentle_core::cluster::order_coideals;
use gentle_core::decompose::{decompose, Summand};
use gentle_core::homological::{is_isomorphic, tau_dtr, tau_string, WordModule};
use gentle_core::laurent::LaurentPoly;
use gentle_core::quiver::GentleAlgebra;
use gentle_core::rep::{string_module, Representation};
use gentle_core::surface::{build_qt, catalog as surfaces, CoefficientArrow, CoefficientQuiver, LaminationSampler};
use gentle_core::words::{canonical_string, enumerate_strings};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn algebras() -> Vec<GentleAlgebra> {
    vec![catalog::torus(), catalog::a3_zero_relation(), catalog::wheel(), catalog::loops_and_two_cycle()]
}

fn poly(n: usize) -> impl Strategy<Value = LaurentPoly> {
    let term = (prop::collection::vec(-2i64..3, n), prop::collection::vec(0u32..2, n), -3i64..4);
    prop::collection::vec(term, 0..4).prop_map(move |ts| {
        ts.into_iter()
            .fold(LaurentPoly::zero(n), |acc, (x, y, c)| acc.add(&LaurentPoly::monomial(x, y, BigInt::from(c))))
    })
}

fn brute_coideals(q: &CoefficientQuiver) -> usize {
    let m = q.labels.len();
    (0u32..1 << m)
        .filter(|s| q.arrows.iter().all(|a| s & (1 << a.from) != 0 || s & (1 << a.to) == 0))
        .count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_laws(a in poly(3), b in poly(3), c in poly(3)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&LaurentPoly::one(3)), a.clone());
        prop_assert_eq!(a.pow(2), a.mul(&a));
    }

    #[test]
    fn coideals_match_subset_count(m in 1usize..8, edges in prop::collection::vec((0usize..8, 0usize..8), 0..10)) {
        let arrows: Vec<CoefficientArrow> = edges
            .into_iter()
            .filter(|&(u, v)| u < m && v < m && u != v)
            .map(|(u, v)| CoefficientArrow { from: u.min(v), to: u.max(v), arrow: String::new() })
            .collect();
        let q = CoefficientQuiver { labels: vec![1; m], arrows, cyclic: false };
        let ideals = order_coideals(&q);
        prop_assert_eq!(ideals.len(), brute_coideals(&q));
        let mut sorted = ideals.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), ideals.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tau_from_words_matches_dtr(which in 0usize..4, pick in 0usize..10_000) {
        let alg = &algebras()[which];
        let strings = enumerate_strings(alg, 5);
        let c = &strings[pick % strings.len()];
        let m = string_module(alg, c);
        let t = tau_dtr(alg, &m);
        let mut rng = ChaCha8Rng::seed_from_u64(pick as u64);
        match tau_string(alg, c) {
            None => prop_assert!(t.is_zero()),
            Some(d) => prop_assert!(is_isomorphic(alg, &t, &string_module(alg, &d), &mut rng)),
        }
    }

    #[test]
    fn conjugated_sums_decompose_back(picks in prop::collection::vec(0usize..10_000, 1..4), seed in 0u64..1000) {
        let alg = catalog::torus();
        let strings = enumerate_strings(&alg, 4);
        let chosen: Vec<_> = picks.iter().map(|p| canonical_string(&strings[p % strings.len()])).collect();
        let parts: Vec<Representation> = chosen.iter().map(|c| string_module(&alg, c)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Representation::sum_all(&alg, &parts).random_conjugate(&alg, &mut rng);
        let got = decompose(&alg, &m, 5, seed).unwrap();
        let mut found: Vec<_> = got
            .iter()
            .map(|s| match s {
                Summand::Word(WordModule::Str(c)) => Some(canonical_string(c)),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .expect("only strings");
        let mut want = chosen.clone();
        found.sort();
        want.sort();
        prop_assert_eq!(found, want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn shear_is_additive_and_leads_the_bangle(seed in 0u64..10_000) {
        let s = build_qt(&surfaces::three_holed_sphere()).unwrap();
        let mut sampler = LaminationSampler::new(&s, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = sampler.sample(&mut rng, 3, 2).unwrap();
        let mut sum = vec![0i64; s.n()];
        for (c, k) in &l.entries {
            for (x, y) in sum.iter_mut().zip(s.shear(c)) {
                *x += *k as i64 * y;
            }
        }
        prop_assert_eq!(&s.shear_lamination(&l), &sum);
        let x = gentle_core::cluster::bangle_lamination(&s, &l).unwrap();
        prop_assert_eq!(x.coefficient(&sum, &vec![0; s.n()]), BigInt::from(1));
    }
}
