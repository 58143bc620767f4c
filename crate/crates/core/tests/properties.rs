//! Randomized invariants. Complexes are built from a proptest-chosen seed so failures
//! shrink to a reproducible seed.

use cm_lab::complex::Face;
use cm_lab::homology::{self, IdealOracle};
use cm_lab::ideals::{self, Monomial, MonomialIdeal};
use cm_lab::satisfying::{self, AlphaOffset, TreeCase};
use cm_lab::{generate, graphs, structure, AlphaVector, FieldSpec, SimplicialComplex};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn char(p: u32) -> FieldSpec {
    FieldSpec::new(p).unwrap()
}

/// A Cohen-Macaulay complex with at least three facets and a tree facet graph, drawn
/// from the seeded stream; `None` only if a long run of draws all miss.
fn cm_tree_complex(seed: u64) -> Option<SimplicialComplex> {
    let mut r = rng(seed);
    (0..200).find_map(|_| {
        let delta = generate::strongly_connected_quasi_tree(&mut r, 7);
        let tree = graphs::facet_graph(&delta).ok()?.is_tree();
        (tree && delta.num_facets() >= 3 && homology::is_cm_complex(&delta, FieldSpec::RATIONALS))
            .then_some(delta)
    })
}

fn prime_ideal(n: usize, face: Face) -> MonomialIdeal {
    MonomialIdeal::from_powers(n, face.complement(n).iter().map(|v| (v, 1)))
}

fn intersect_all(n: usize, ideals: impl IntoIterator<Item = MonomialIdeal>) -> MonomialIdeal {
    ideals.into_iter().fold(MonomialIdeal::unit(n), |acc, q| acc.intersect(&q).unwrap())
}

fn ideal_strategy() -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(prop::collection::vec(0u32..3, 4), 0..4).prop_map(|gens| {
        MonomialIdeal::new(4, gens.into_iter().map(Monomial::new)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn primes_recover_the_facets(seed in any::<u64>()) {
        let delta = generate::arbitrary_complex(&mut rng(seed), 6, 5);
        let back: Vec<Face> =
            delta.stanley_reisner_primes().iter().map(|p| p.complement(delta.n())).collect();
        prop_assert_eq!(back, delta.facets().to_vec());
    }

    #[test]
    fn shellable_implies_cm_in_every_characteristic(seed in any::<u64>()) {
        let delta = generate::pure_strongly_connected(&mut rng(seed), 7, 6);
        if structure::find_shelling(&delta, None).unwrap().is_some() {
            for p in [0, 2, 3] {
                prop_assert!(homology::is_cm_complex(&delta, char(p)), "char {}", p);
            }
        }
    }

    #[test]
    fn cm_implies_pure(seed in any::<u64>()) {
        let delta = generate::arbitrary_complex(&mut rng(seed), 6, 4);
        if homology::is_cm_complex(&delta, FieldSpec::RATIONALS) {
            prop_assert!(delta.is_pure());
        }
    }

    #[test]
    fn greedy_leaf_order_is_complete(seed in any::<u64>()) {
        let delta = generate::arbitrary_complex(&mut rng(seed), 6, 5);
        prop_assert_eq!(
            structure::find_leaf_order(&delta).is_some(),
            structure::find_leaf_order_exhaustive(&delta).is_some()
        );
    }

    #[test]
    fn radical_is_stanley_reisner(seed in any::<u64>(), max in 1u32..4) {
        let mut r = rng(seed);
        let delta = generate::arbitrary_complex(&mut r, 5, 4);
        let alpha = generate::uniform_alpha(&mut r, &delta, max);
        let ideal = ideals::expand_ideal(&delta, &alpha).unwrap();
        prop_assert_eq!(ideal.radical(), ideals::stanley_reisner_ideal(&delta).unwrap());
    }

    #[test]
    fn sum_and_intersection_laws(a in ideal_strategy(), b in ideal_strategy(), c in ideal_strategy()) {
        prop_assert_eq!(a.sum(&b).unwrap(), b.sum(&a).unwrap());
        prop_assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
        prop_assert_eq!(
            a.sum(&b).unwrap().sum(&c).unwrap(),
            a.sum(&b.sum(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.intersect(&b).unwrap().intersect(&c).unwrap(),
            a.intersect(&b.intersect(&c).unwrap()).unwrap()
        );
        let meet = a.intersect(&b).unwrap();
        prop_assert!(meet.is_subset(&a).unwrap() && a.is_subset(&a.sum(&b).unwrap()).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn tree_condition_matches_oracle(seed in any::<u64>(), monotone in any::<bool>()) {
        let Some(delta) = cm_tree_complex(seed) else { return Ok(()) };
        let case = TreeCase::new(&delta).unwrap();
        let mut r = rng(seed ^ 0x5eed);
        let alpha = if monotone {
            generate::monotone_alpha(&mut r, &case, 3)
        } else {
            generate::uniform_alpha(&mut r, &delta, 3)
        };
        let fast = case.check(&alpha).unwrap().satisfied;
        for p in [0, 2] {
            let slow = homology::is_cm_ideal_oracle(&delta, &alpha, char(p)).unwrap().cohen_macaulay;
            prop_assert_eq!(fast, slow, "char {}", p);
        }
        prop_assert!(!monotone || fast);
    }

    #[test]
    fn cm_offsets_add_up(seed in any::<u64>()) {
        let Some(delta) = cm_tree_complex(seed) else { return Ok(()) };
        let case = TreeCase::new(&delta).unwrap();
        let mut r = rng(seed ^ 0xadd);
        let a = generate::monotone_alpha(&mut r, &case, 3);
        let b = generate::monotone_alpha(&mut r, &case, 3);
        let sum = AlphaOffset::from_alpha(&a).add(&AlphaOffset::from_alpha(&b)).to_alpha(&delta).unwrap();
        let oracle = IdealOracle::new(&delta, FieldSpec::RATIONALS).unwrap();
        prop_assert!(oracle.check(&a).unwrap().cohen_macaulay);
        prop_assert!(oracle.check(&b).unwrap().cohen_macaulay);
        prop_assert!(oracle.check(&sum).unwrap().cohen_macaulay);
    }

    #[test]
    fn tree_condition_implies_general(seed in any::<u64>()) {
        let Some(delta) = cm_tree_complex(seed) else { return Ok(()) };
        let case = TreeCase::new(&delta).unwrap();
        let alpha = generate::monotone_alpha(&mut rng(seed ^ 7), &case, 3);
        prop_assert!(satisfying::is_general_satisfying(&delta, &alpha).unwrap());
    }

    #[test]
    fn quasitree_condition_implies_general_and_cm(seed in any::<u64>()) {
        let mut r = rng(seed);
        let delta = generate::strongly_connected_quasi_tree(&mut r, 6);
        let alpha = generate::uniform_alpha(&mut r, &delta, 2);
        if satisfying::is_quasitree_satisfying(&delta, &alpha).unwrap().satisfied {
            prop_assert!(satisfying::is_general_satisfying(&delta, &alpha).unwrap());
            let oracle = homology::is_cm_ideal_oracle(&delta, &alpha, FieldSpec::RATIONALS).unwrap();
            prop_assert!(oracle.cohen_macaulay);
        }
    }

    #[test]
    fn facet_prime_splits_over_codimension_one_neighbors(seed in any::<u64>()) {
        let delta = generate::pure_strongly_connected(&mut rng(seed), 7, 6);
        if !homology::is_cm_complex(&delta, FieldSpec::RATIONALS) {
            return Ok(());
        }
        let (n, facets) = (delta.n(), delta.facets());
        let d = facets[0].len();
        for (i, &fi) in facets.iter().enumerate() {
            let others = facets.iter().enumerate().filter(|&(j, _)| j != i);
            let lhs = intersect_all(n, others.clone().map(|(_, &fj)| prime_ideal(n, fj)))
                .sum(&prime_ideal(n, fi))
                .unwrap();
            let rhs = intersect_all(
                n,
                others
                    .filter(|(_, fj)| fj.intersection(fi).len() + 1 == d)
                    .map(|(_, &fj)| prime_ideal(n, fj.intersection(fi))),
            );
            prop_assert_eq!(lhs, rhs, "facet {}", i + 1);
        }
    }
}

#[test]
fn trivial_alpha_is_stanley_reisner() {
    let delta = SimplicialComplex::from_facets(4, [[1, 2], [2, 3], [3, 4]]).unwrap();
    let ones = AlphaVector::ones(&delta);
    assert_eq!(
        ideals::expand_ideal(&delta, &ones).unwrap().to_string(),
        ideals::stanley_reisner_ideal(&delta).unwrap().to_string()
    );
}
