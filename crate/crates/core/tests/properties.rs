mod common;

use std::collections::BTreeSet;

use num_integer::Integer;
use proptest::prelude::*;

use common::{element, eval_letters, perm, word};
use wordmap::abelian::{
    abelian_word_image, endo_closed_subsets, power_image, CyclicSubset,
};
use wordmap::catalog::{build, GroupSpec};
use wordmap::imaging::{check_closure, image_bruteforce, image_orbit, DEFAULT_TUPLE_CAP};
use wordmap::{FiniteGroup, Permutation, TupleDomain, Word};

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig::with_cases(n)
}

proptest! {
    #![proptest_config(cases(1000))]

    // conjugation commutes with evaluation: w(t)^g = w(t^g)
    #[test]
    fn evaluation_is_conjugation_equivariant(
        w in word(3),
        t in prop::collection::vec(perm(7), 3),
        g in perm(7),
    ) {
        let lhs = w.evaluate(&t).unwrap().conjugate_by(&g);
        let moved: Vec<Permutation> = t.iter().map(|x| x.conjugate_by(&g)).collect();
        prop_assert_eq!(lhs, w.evaluate(&moved).unwrap());
    }

    // ... and with power endomorphisms of a cyclic group
    #[test]
    fn evaluation_commutes_with_power_maps(
        w in word(2),
        m in 2usize..=12,
        a in 0i64..12,
        b in 0i64..12,
        k in 0i64..12,
    ) {
        let cyc = build(GroupSpec::Cyclic(m)).unwrap();
        let gen = cyc.group.generators()[0].clone();
        let t = [gen.pow(a), gen.pow(b)];
        let lhs = w.evaluate(&t).unwrap().pow(k);
        let moved: Vec<Permutation> = t.iter().map(|x| x.pow(k)).collect();
        prop_assert_eq!(lhs, w.evaluate(&moved).unwrap());
    }

    #[test]
    fn print_parse_round_trip(w in word(3)) {
        let printed = w.to_string();
        let back = Word::parse(&printed)
            .map_err(|e| TestCaseError::fail(format!("{printed}: {e}")))?
            .with_arity(3);
        prop_assert_eq!(back.to_string(), printed);
        prop_assert_eq!(back.reduced_letters(), w.reduced_letters());
    }

    #[test]
    fn composition_is_associative(a in perm(9), b in perm(9), c in perm(9)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.pow(a.order() as i64), Permutation::identity(9));
    }

    #[test]
    fn cycle_notation_round_trip(a in perm(11)) {
        prop_assert_eq!(Permutation::parse_cycles(11, &a.to_string()).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(cases(10_000))]

    #[test]
    fn slp_matches_tree_and_letter_evaluation(
        w in word(3),
        t in prop::collection::vec(perm(6), 3),
    ) {
        let slp = w.compile();
        let by_slp = slp.evaluate(&t, 6).unwrap();
        prop_assert_eq!(&by_slp, &w.evaluate(&t).unwrap());
        prop_assert_eq!(&by_slp, &eval_letters(&w, &t, 6));
    }
}

fn small_groups() -> Vec<(GroupSpec, wordmap::CatalogGroup)> {
    [
        GroupSpec::Symmetric(3),
        GroupSpec::Alternating(4),
        GroupSpec::Alternating(5),
        GroupSpec::Dihedral(6),
    ]
    .into_iter()
    .map(|s| (s, build(s).unwrap()))
    .collect()
}

/// `g^h ∈ set` for every `g` in the set and every `h` of the ambient group.
fn union_of_ambient_orbits(group: &FiniteGroup, ambient: &FiniteGroup, set: &[usize]) -> bool {
    let members: BTreeSet<&Permutation> = set.iter().map(|&i| group.element(i)).collect();
    ambient.elements().iter().all(|h| {
        members.iter().all(|g| members.contains(&g.conjugate_by(h)))
    })
}

proptest! {
    #![proptest_config(cases(1000))]

    #[test]
    fn orbit_and_brute_images_agree(w in word(2), pick in 0usize..4) {
        let groups = small_groups();
        let (spec, cg) = &groups[pick];
        let brute = image_bruteforce(&w, &cg.group, None, DEFAULT_TUPLE_CAP).unwrap();
        let orbit = image_orbit(&w, &cg.action, None, DEFAULT_TUPLE_CAP).unwrap();
        prop_assert_eq!(&brute.members, &orbit.members, "{} over {}", w, spec);
        prop_assert!(orbit.tuples_evaluated <= brute.tuples_evaluated);
    }

    #[test]
    fn images_contain_identity_and_are_orbit_unions(w in word(2), pick in 0usize..4) {
        let groups = small_groups();
        let (_, cg) = &groups[pick];
        let g = &cg.group;
        let image = image_bruteforce(&w, g, None, DEFAULT_TUPLE_CAP).unwrap();
        prop_assert!(image.contains(g.identity_index()));
        prop_assert!(union_of_ambient_orbits(g, cg.action.ambient(), &image.members));
        let verdict = check_closure(&image.members, &cg.action).unwrap();
        prop_assert!(verdict.aut_closed);
        prop_assert_ne!(verdict.endo_closed, Some(false));
    }

    // shrinking the domain can only shrink the image
    #[test]
    fn image_is_monotone_in_the_domain(w in word(2), order in 1u64..=5) {
        let a5 = build(GroupSpec::Alternating(5)).unwrap();
        let g = &a5.group;
        let full = image_bruteforce(&w, g, None, DEFAULT_TUPLE_CAP).unwrap();
        let domain = TupleDomain::filtered(g, 2, |p| p.order() <= order);
        let part = image_orbit(&w, &a5.action, Some(&domain), DEFAULT_TUPLE_CAP).unwrap();
        prop_assert!(part.members.iter().all(|e| full.contains(*e)));
    }

    #[test]
    fn abelian_image_matches_cyclic_permutation_group(w in word(2), m in 2u64..=12) {
        let cyc = build(GroupSpec::Cyclic(m as usize)).unwrap();
        let brute = image_bruteforce(&w, &cyc.group, None, DEFAULT_TUPLE_CAP).unwrap();
        let expected = CyclicSubset::from_group_indices(&cyc, &brute.members).unwrap();
        prop_assert_eq!(abelian_word_image(&w, m).unwrap(), expected);
    }

    // Lagrange: subgroup orders divide the group order
    #[test]
    fn subgroup_orders_divide(pick in 0usize..4, a in 0usize..60, b in 0usize..60) {
        let groups = small_groups();
        let g = &groups[pick].1.group;
        let gens = [a % g.order(), b % g.order()];
        let size = g.subgroup_size_capped(&gens, g.order());
        prop_assert_eq!(g.order() % size, 0);
    }

    #[test]
    fn element_strategy_stays_in_group(x in element(&M11_SAMPLE)) {
        prop_assert!(M11_SAMPLE.contains(&x));
        prop_assert_eq!(M11_SAMPLE.order() as u64 % x.order(), 0);
    }
}

static M11_SAMPLE: std::sync::LazyLock<std::sync::Arc<FiniteGroup>> =
    std::sync::LazyLock::new(|| build(GroupSpec::Mathieu11).unwrap().group);

#[test]
fn power_image_depends_only_on_gcd() {
    for m in 1u64..=24 {
        for k in -2 * m as i64..=2 * m as i64 {
            let d = k.unsigned_abs().gcd(&m) as i64;
            let direct: BTreeSet<u64> = (0..m).map(|x| (k.rem_euclid(m as i64) as u64 * x) % m).collect();
            let img = power_image(m, k).unwrap();
            assert_eq!(img, power_image(m, d).unwrap(), "m = {m}, k = {k}");
            assert_eq!(img.members, direct, "m = {m}, k = {k}");
        }
    }
}

#[test]
fn endo_closed_subsets_are_closed_under_union() {
    for m in 1u64..=16 {
        let all = endo_closed_subsets(m).unwrap();
        let set: BTreeSet<&CyclicSubset> = all.iter().collect();
        for a in &all {
            assert!(a.is_endo_closed());
            for b in &all {
                assert!(set.contains(&a.union(b)), "m = {m}: {a} ∪ {b}");
            }
        }
    }
}
