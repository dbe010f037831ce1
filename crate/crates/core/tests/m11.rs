use std::collections::BTreeSet;

use wordmap::catalog::{build, GroupSpec};
use wordmap::imaging::{check_closure, image_orbit, DEFAULT_TUPLE_CAP};
use wordmap::theorem2::{run_theorem2, run_theorem2_with, WORD};
use wordmap::{TupleDomain, Word};

#[test]
fn m11_structure() {
    let m11 = build(GroupSpec::Mathieu11).unwrap();
    let g = &m11.group;
    assert_eq!(g.order(), 7920);
    let orders: BTreeSet<u64> = g.element_orders().iter().copied().collect();
    assert_eq!(orders, BTreeSet::from([1, 2, 3, 4, 5, 6, 8, 11]));
    assert_eq!(g.element_orders().iter().filter(|&&o| o == 3).count(), 440);

    let classes = g.conjugacy_classes();
    assert_eq!(classes.len(), 10);
    assert_eq!(classes.sizes().iter().sum::<usize>(), 7920);
    let mut rep_orders = classes.orders.clone();
    rep_orders.sort_unstable();
    assert_eq!(rep_orders, vec![1, 2, 3, 4, 5, 6, 8, 8, 11, 11]);

    let eleven: Vec<usize> = (0..classes.len()).filter(|&c| classes.orders[c] == 11).collect();
    assert_eq!(eleven.len(), 2);
    for &c in &eleven {
        assert_eq!(classes.classes[c].len(), 720);
        // inversion swaps the two classes
        let inv_class = classes.class_of[g.inv(classes.representatives[c])];
        assert_ne!(inv_class, c);
        assert!(eleven.contains(&inv_class));
    }
    assert!(g.is_simple());
}

#[test]
fn element_orders_divide_group_order() {
    for spec in [
        GroupSpec::Mathieu11,
        GroupSpec::Alternating(5),
        GroupSpec::Symmetric(5),
        GroupSpec::Cyclic(12),
        GroupSpec::Dihedral(6),
    ] {
        let g = build(spec).unwrap().group;
        assert!(g.element_orders().iter().all(|&o| g.order() as u64 % o == 0), "{spec}");
    }
}

#[test]
fn m11_chirality_pipeline() {
    let v = run_theorem2().unwrap();
    assert!(v.passed, "{v:#?}");
    assert_eq!(v.steps.len(), 6);
    assert_eq!(v.order3_elements, 440);
    assert_eq!(v.order3_pairs, 193_600);
    assert!(v.pair_count_note.starts_with("discrepancy"));
    assert_eq!(v.order_spectrum.keys().copied().collect::<Vec<_>>(), vec![1, 2, 4, 5, 6, 11]);
    assert_eq!(v.reduced_length, 9680);
    assert!(v.slp_instructions <= 80);
    assert!(v.chirality_witnesses > 0);
    assert!(v.orbit_evaluations < v.order3_pairs);
}

#[test]
fn m11_chirality_negative_control_fails_at_step_three() {
    let v = run_theorem2_with(WORD, "[x(x^y), y]").unwrap();
    assert!(!v.passed);
    assert_eq!(v.failed_step, Some(3));
    assert_eq!(v.steps.len(), 3);
}

#[test]
fn class_plus_identity_is_closed() {
    let m11 = build(GroupSpec::Mathieu11).unwrap();
    let classes = m11.group.conjugacy_classes();
    let c = (0..classes.len()).find(|&c| classes.orders[c] == 11).unwrap();
    let mut set = classes.classes[c].clone();
    set.push(m11.group.identity_index());
    set.sort_unstable();
    let verdict = check_closure(&set, &m11.action).unwrap();
    assert!(verdict.aut_closed);
    assert_eq!(verdict.endo_closed, Some(true));
}

#[test]
fn orbit_strategy_cuts_order3_evaluations() {
    let m11 = build(GroupSpec::Mathieu11).unwrap();
    let g = &m11.group;
    let domain = TupleDomain::filtered(g, 2, |p| p.order() == 3);
    let img = image_orbit(&Word::parse("[x,y]").unwrap(), &m11.action, Some(&domain), DEFAULT_TUPLE_CAP)
        .unwrap();
    assert_eq!(img.tuple_space, 193_600);
    assert!(img.tuples_evaluated * 100 < 193_600, "{}", img.tuples_evaluated);
}
