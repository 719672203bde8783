use std::collections::BTreeSet;

use fispec::fixtures::{
    containment, crush, disjoint_ordered_pairs, distinct_points, empty_on, half_ordered_triples, incidence,
    intersection, kneser, points_and_pairs, subsets, tuples,
};
use fispec::group::conjugacy_classes;
use fispec::multiplicity::{per_n_multiplicity, stable_from, stable_multiplicity};
use fispec::partition::factorial;
use fispec::relation::counting_lemma_value;
use fispec::spectra::{analyze, brute_force_spectrum, predicted_charpoly, DegreeTraces, Operator, SpectrumOptions};
use fispec::{Caps, FISetSpec, Injection, Partition, Permutation, Rational, RationalPolynomial, RelationSpec};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn caps() -> Caps {
    Caps::default()
}

fn relations() -> Vec<RelationSpec> {
    vec![
        kneser(2),
        distinct_points(),
        disjoint_ordered_pairs(),
        intersection(2, 1),
        containment(),
        incidence(),
        empty_on(crush()).unwrap(),
    ]
}

fn spaces() -> Vec<FISetSpec> {
    vec![
        subsets(1),
        subsets(2),
        tuples(2),
        half_ordered_triples(),
        points_and_pairs(),
        crush(),
        FISetSpec::empty(),
    ]
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

/// A relation index, a degree and a permutation of that degree.
fn relation_at_degree(max_n: usize) -> impl Strategy<Value = (usize, usize, Permutation)> {
    (0..relations().len(), 1..=max_n).prop_flat_map(|(r, n)| (Just(r), Just(n), permutation(n)))
}

fn pairs(rel: &RelationSpec, n: usize) -> BTreeSet<(usize, usize)> {
    rel.materialize(n, &caps()).unwrap().pairs().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn permutation_inverse_and_associativity(
        (a, b, c) in (1usize..8).prop_flat_map(|n| (permutation(n), permutation(n), permutation(n)))
    ) {
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(a.compose(&b).unwrap().sign(), a.sign() * b.sign());
    }

    #[test]
    fn conjugation_is_an_involution(parts in proptest::collection::vec(1usize..6, 0..6)) {
        let p = Partition::from_unsorted(parts);
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        prop_assert_eq!(p.conjugate().hook_dimension(), p.hook_dimension());
    }

    #[test]
    fn relations_are_equivariant((r, n, sigma) in relation_at_degree(6)) {
        let rel = &relations()[r];
        let (xs, ys) = rel.evaluate(n, &caps()).unwrap();
        let ys = ys.unwrap_or_else(|| xs.clone());
        let target = if rel.is_self_relation() { rel.source() } else { rel.target() };
        let r_n = pairs(rel, n);
        for &(x, y) in &r_n {
            let image = (xs.act(rel.source(), &sigma, x), ys.act(target, &sigma, y));
            prop_assert!(r_n.contains(&image), "{:?} ~ {:?} not mapped into R", x, y);
        }
    }

    #[test]
    fn relations_are_closed_under_transitions(
        (r, n, sigma) in relation_at_degree(5).prop_flat_map(|(r, n, _)| (Just(r), Just(n), permutation(n + 1)))
    ) {
        let rel = &relations()[r];
        let g = Injection::new(n + 1, sigma.images()[..n].to_vec()).unwrap();
        let (xs, ys) = rel.evaluate(n, &caps()).unwrap();
        let ys = ys.unwrap_or_else(|| xs.clone());
        let (xs1, ys1) = rel.evaluate(n + 1, &caps()).unwrap();
        let ys1 = ys1.unwrap_or_else(|| xs1.clone());
        let target = if rel.is_self_relation() { rel.source() } else { rel.target() };
        let next = pairs(rel, n + 1);
        for (x, y) in pairs(rel, n) {
            let gx = rel.source().transition(n, &xs.elements()[x], &g, &caps()).unwrap();
            let gy = target.transition(n, &ys.elements()[y], &g, &caps()).unwrap();
            let pair = (xs1.index_of(&gx).unwrap(), ys1.index_of(&gy).unwrap());
            prop_assert!(next.contains(&pair));
        }
    }

    #[test]
    fn transpose_swaps_pairs((r, n, _) in relation_at_degree(6)) {
        let rel = &relations()[r];
        let swapped: BTreeSet<_> = pairs(rel, n).into_iter().map(|(x, y)| (y, x)).collect();
        prop_assert_eq!(pairs(&rel.transpose(), n), swapped);
    }

    #[test]
    fn counting_profiles_take_two_shapes(r in 0usize..4, mask in 0u32..64) {
        let rel = [kneser(2), disjoint_ordered_pairs(), intersection(2, 1), containment()][r].clone();
        let m = rel.max_threshold();
        let s: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        let t = rel.target().orbits()[0].m;
        for g in rel.generators() {
            let counts: Vec<u64> = (m..=8)
                .map(|n| rel.counting_profile(n, m, &g.x, g.y.orbit, &g.y.coset, &s, &caps()).unwrap())
                .collect();
            let binom: Vec<u64> = (m..=8).map(|n| counting_lemma_value(n, m, t, s.len())).collect();
            prop_assert!(counts.iter().all(|&c| c == 0) || counts == binom, "S = {:?}: {:?}", s, counts);
        }
    }

    #[test]
    fn burnside_counts_orbits(space in 0..spaces().len(), n in 0usize..7) {
        let spec = &spaces()[space];
        let orbits = spec.orbits_at(n, &caps()).unwrap().len();
        let mut sum = BigUint::from(0u32);
        for class in conjugacy_classes(n, &caps()).unwrap() {
            sum += &class.class_size * spec.fixed_points(n, &class.representative, &caps()).unwrap();
        }
        prop_assert_eq!(sum, factorial(n) * orbits);
    }

    #[test]
    fn multiplicities_account_for_every_element(space in 0..spaces().len(), n in 1usize..8) {
        let spec = &spaces()[space];
        let mut total = BigUint::from(0u32);
        for mu in Partition::all(n) {
            let lambda = Partition::new(mu.parts()[1..].to_vec()).unwrap();
            total += mu.hook_dimension() * per_n_multiplicity(spec, n, &lambda, &caps()).unwrap();
        }
        prop_assert_eq!(total, BigUint::from(spec.evaluate(n, &caps()).unwrap().len()));
    }

    #[test]
    fn stable_multiplicities_match_characters(space in 0..spaces().len(), lambda in 0usize..7, extra in 0usize..3) {
        let spec = &spaces()[space];
        let lambda = Partition::up_to(3)[lambda].clone();
        let n = stable_from(spec, &lambda, &caps()).unwrap() + extra;
        prop_assert_eq!(
            stable_multiplicity(spec, &lambda, &caps()).unwrap(),
            per_n_multiplicity(spec, n, &lambda, &caps()).unwrap()
        );
    }

    #[test]
    fn interpolation_recovers_polynomials(coeffs in proptest::collection::vec(-20i64..20, 1..6), offset in -5i64..5) {
        let p = RationalPolynomial::from_ints(&coeffs);
        let points: Vec<(Rational, Rational)> = (0..coeffs.len() as i64)
            .map(|i| {
                let t = Rational::from_integer(BigInt::from(i + offset));
                (t.clone(), p.eval(&t))
            })
            .collect();
        prop_assert_eq!(RationalPolynomial::interpolate(&points), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn block_traces_sum_to_the_full_trace(r in 0usize..4, n in 2usize..8) {
        let rel = [kneser(2), distinct_points(), disjoint_ordered_pairs(), intersection(2, 1)][r].clone();
        let traces = DegreeTraces::compute(&rel, Operator::Adjacency, n, 3, &caps()).unwrap();
        let mut sums = vec![Rational::from_integer(BigInt::from(0)); 3];
        for mu in Partition::all(n) {
            let lambda = Partition::new(mu.parts()[1..].to_vec()).unwrap();
            let dim = Rational::from_integer(BigInt::from(mu.hook_dimension()));
            for (s, t) in sums.iter_mut().zip(traces.isotypic(&lambda).unwrap()) {
                *s += &dim * t;
            }
        }
        let total: Vec<Rational> = traces.total_traces().into_iter().map(Rational::from_integer).collect();
        prop_assert_eq!(sums, total);
    }

    #[test]
    fn predicted_spectrum_matches_brute_force(r in 0usize..6, extra in 0usize..3) {
        let rel = relations()[r].clone();
        let op = if rel.is_self_relation() { Operator::Adjacency } else { Operator::Gram };
        let opts = SpectrumOptions { operator: op, ..Default::default() };
        let report = analyze(&rel, &opts, &caps()).unwrap();
        let start = report.blocks.iter().map(|b| b.valid_from).max().unwrap_or(0).max(report.stable_start);
        let n = start + extra;
        let brute = brute_force_spectrum(&rel, op, n, &caps()).unwrap();
        prop_assert_eq!(predicted_charpoly(&report, n), brute.charpoly);
    }
}
