//! End-to-end check that
//!
//! ```text
//! w = [x^-440 (x^-440)^(y^-440) x^-440, (y^-440)^(x^-440 y^-440) y^-440]
//! ```
//!
//! witnesses the chirality of M₁₁: its image contains an element of order
//! 11 whose inverse is not in the image.
//!
//! The argument runs in six checked steps:
//!
//! 1. `g^-440` is `1`, `g` or `g⁴` according to the order of `g`.
//! 2. `w = v'(x^-440, y^-440)` for a commutator word `v'`, `v'` vanishes
//!    when either argument is trivial, and `g ↦ g^-440` maps M₁₁ onto the
//!    identity plus the order-3 elements. So `w(G) = {1} ∪ w(X × X)` with
//!    `X` the elements of order 3.
//! 3. `w(a, b) = v(a, b)` on `X × X` for `v = [x(x^y)x, y^(x y) y]`.
//! 4. The image contains elements of orders 1, 2, 4, 5, 6 and 11 only.
//! 5. The order-11 elements of the image form a single conjugacy class.
//! 6. That class does not contain the inverses of its members.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::action::TupleDomain;
use crate::catalog::{build, GroupSpec};
use crate::error::Result;
use crate::imaging::{image_orbit, ImageReport, WordImage, DEFAULT_TUPLE_CAP};
use crate::perm::Permutation;
use crate::word::{power_case_table, Word};

pub const WORD: &str = "[x^-440 (x^-440)^(y^-440) x^-440, (y^-440)^(x^-440 y^-440) y^-440]";
pub const SHORT_WORD: &str = "[x(x^y)x, y^(x y) y]";
pub const EXPONENT: i64 = -440;
/// The order-3 pair count as commonly quoted for this argument; the
/// enumeration gives 440² = 193,600.
pub const PRINTED_PAIR_COUNT: u64 = 93_600;

/// `g^-440` by element order: 0 stands for `1`, 1 for `g`, 4 for `g⁴`.
pub const EXPECTED_CASE_TABLE: [(u64, u64); 8] =
    [(1, 0), (2, 0), (3, 1), (4, 0), (5, 0), (6, 4), (8, 0), (11, 0)];
pub const EXPECTED_SPECTRUM_SUPPORT: [u64; 6] = [1, 2, 4, 5, 6, 11];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub number: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem2Verdict {
    pub passed: bool,
    pub failed_step: Option<u8>,
    pub steps: Vec<Step>,
    pub word: String,
    pub short_word: String,
    pub reduced_length: usize,
    pub slp_instructions: usize,
    pub power_case_table: BTreeMap<u64, u64>,
    pub order3_elements: usize,
    pub order3_pairs: u64,
    pub printed_pair_count: u64,
    pub pair_count_note: String,
    pub image_size: usize,
    pub order_spectrum: BTreeMap<u64, usize>,
    /// Cycle notation of the least order-11 image element.
    pub order11_representative: Option<String>,
    pub order11_in_image: usize,
    pub chirality_witnesses: usize,
    pub orbit_evaluations: u64,
}

/// Runs with the words as stated.
pub fn run_theorem2() -> Result<Theorem2Verdict> {
    run_theorem2_with(WORD, SHORT_WORD)
}

/// Runs the same six steps with caller-supplied words (for negative controls).
pub fn run_theorem2_with(word_text: &str, short_text: &str) -> Result<Theorem2Verdict> {
    let m11 = build(GroupSpec::Mathieu11)?;
    let g = &m11.group;
    let word = Word::parse(word_text)?.with_arity(2);
    let short = Word::parse(short_text)?.with_arity(2);
    let order3: Vec<usize> = (0..g.order()).filter(|&i| g.element_order(i) == 3).collect();
    let mut v = Theorem2Verdict {
        passed: false,
        failed_step: None,
        steps: Vec::new(),
        word: word.to_string(),
        short_word: short.to_string(),
        reduced_length: word.reduced_length(),
        slp_instructions: word.compile().len(),
        power_case_table: power_case_table(g, EXPONENT),
        order3_elements: order3.len(),
        order3_pairs: (order3.len() as u64).pow(2),
        printed_pair_count: PRINTED_PAIR_COUNT,
        pair_count_note: String::new(),
        image_size: 0,
        order_spectrum: BTreeMap::new(),
        order11_representative: None,
        order11_in_image: 0,
        chirality_witnesses: 0,
        orbit_evaluations: 0,
    };
    v.pair_count_note = if v.order3_pairs == PRINTED_PAIR_COUNT {
        "enumerated pair count matches the printed figure".into()
    } else {
        format!(
            "discrepancy: enumeration finds {} elements of order 3, hence {} ordered pairs; the printed figure is {}",
            v.order3_elements, v.order3_pairs, PRINTED_PAIR_COUNT
        )
    };

    // 1
    let expected: BTreeMap<u64, u64> = EXPECTED_CASE_TABLE.into_iter().collect();
    let ok = v.power_case_table == expected;
    let detail = format!(
        "residues by order {:?}; expected {:?}",
        v.power_case_table, expected
    );
    if !record(&mut v, 1, "power case table for k = -440", ok, detail) {
        return Ok(v);
    }

    // 2
    let identity = Permutation::identity(g.degree());
    let collapse = word.factor_through_power(EXPONENT);
    let (ok, detail) = match &collapse {
        None => (false, format!("{word} is not a word in x^{EXPONENT}, y^{EXPONENT}")),
        Some(inner) => {
            let slp = inner.compile();
            let targets: BTreeSet<usize> = (0..g.order())
                .map(|i| g.index_of(&g.element(i).pow(EXPONENT)).expect("closed"))
                .collect();
            let mut expected_targets: BTreeSet<usize> = order3.iter().copied().collect();
            expected_targets.insert(g.identity_index());
            let vanishes = g.elements().par_iter().all(|b| {
                slp.run(&[identity.clone(), b.clone()], g.degree()).is_identity()
                    && slp.run(&[b.clone(), identity.clone()], g.degree()).is_identity()
            });
            let ok = targets == expected_targets && vanishes;
            (
                ok,
                format!(
                    "w = v'(x^{EXPONENT}, y^{EXPONENT}) with v' = {inner}; g -> g^{EXPONENT} has {} values \
                     (identity + {} of order 3): {}; v' trivial when an argument is 1: {vanishes}; \
                     domain reduces to {} pairs of order-3 elements",
                    targets.len(),
                    order3.len(),
                    targets == expected_targets,
                    v.order3_pairs
                ),
            )
        }
    };
    if !record(&mut v, 2, "domain collapses to order-3 pairs", ok, detail) {
        return Ok(v);
    }

    // 3
    let word_slp = word.compile();
    let short_slp = short.compile();
    let n3 = order3.len();
    let results: Vec<(usize, bool)> = (0..n3 * n3)
        .into_par_iter()
        .map(|r| {
            let t = [g.element(order3[r / n3]).clone(), g.element(order3[r % n3]).clone()];
            let a = word_slp.run(&t, g.degree());
            let b = short_slp.run(&t, g.degree());
            (g.index_of(&a).expect("closed"), a == b)
        })
        .collect();
    let mismatches = results.iter().filter(|(_, eq)| !eq).count();
    let ok = mismatches == 0;
    if !record(&mut v, 3, "w(a,b) = v(a,b) on order-3 pairs", ok, format!(
        "{} pairs compared, {mismatches} mismatches",
        results.len()
    )) {
        return Ok(v);
    }

    // image = {1} ∪ w(X × X), cross-checked against the orbit strategy
    let mut flags = vec![false; g.order()];
    flags[g.identity_index()] = true;
    for &(e, _) in &results {
        flags[e] = true;
    }
    let members: Vec<usize> = (0..g.order()).filter(|&i| flags[i]).collect();
    let domain = TupleDomain::from_coordinates(vec![order3.clone(), order3.clone()]);
    let orbit = image_orbit(&word, &m11.action, Some(&domain), DEFAULT_TUPLE_CAP)?;
    v.orbit_evaluations = orbit.tuples_evaluated;
    let mut orbit_members = orbit.members.clone();
    if let Err(pos) = orbit_members.binary_search(&g.identity_index()) {
        orbit_members.insert(pos, g.identity_index());
    }
    let image = WordImage {
        members,
        tuples_evaluated: results.len() as u64,
        tuple_space: results.len() as u128,
        strategy: crate::imaging::Strategy::Brute,
        filtered: true,
    };
    let report = ImageReport::new(&word, &m11.action, &image)?;
    v.image_size = report.image.len();
    v.order_spectrum = report.order_spectrum.clone();
    v.chirality_witnesses = report.chirality_witnesses.len();

    // 4
    let support: Vec<u64> = report.order_spectrum.keys().copied().collect();
    let strategies_agree = orbit_members == image.members;
    let ok = support == EXPECTED_SPECTRUM_SUPPORT && strategies_agree;
    let detail = format!(
        "support {support:?}, expected {EXPECTED_SPECTRUM_SUPPORT:?}; image size {}; \
         orbit strategy ({} evaluations) agrees: {strategies_agree}",
        v.image_size, orbit.tuples_evaluated
    );
    if !record(&mut v, 4, "order spectrum support", ok, detail) {
        return Ok(v);
    }

    // 5
    let classes = g.conjugacy_classes();
    let order11: Vec<usize> = image
        .members
        .iter()
        .copied()
        .filter(|&e| g.element_order(e) == 11)
        .collect();
    v.order11_in_image = order11.len();
    let class_ids: BTreeSet<usize> = order11.iter().map(|&e| classes.class_of[e]).collect();
    let ok = class_ids.len() == 1;
    v.order11_representative = order11.first().map(|&e| g.element(e).to_string());
    if !record(&mut v, 5, "order-11 image elements are conjugate", ok, format!(
        "{} order-11 elements in the image, spread over {} class(es)",
        order11.len(),
        class_ids.len()
    )) {
        return Ok(v);
    }

    // 6
    let class = *class_ids.iter().next().expect("one class");
    let rep = classes.representatives[class];
    let inverse_class = classes.class_of[g.inv(rep)];
    let witnesses_all_order11 = report
        .chirality_witnesses
        .iter()
        .all(|&e| g.element_order(e) == 11);
    let ok = inverse_class != class && !report.chirality_witnesses.is_empty() && witnesses_all_order11;
    record(&mut v, 6, "inverse class differs", ok, format!(
        "class of {} (size {}) vs class of its inverse (size {}): distinct = {}; \
         {} chirality witnesses, all of order 11: {witnesses_all_order11}",
        g.element(rep),
        classes.classes[class].len(),
        classes.classes[inverse_class].len(),
        inverse_class != class,
        report.chirality_witnesses.len()
    ));
    if ok {
        v.passed = true;
    }
    Ok(v)
}

fn record(v: &mut Theorem2Verdict, number: u8, name: &'static str, passed: bool, detail: String) -> bool {
    v.steps.push(Step {
        number,
        name,
        passed,
        detail,
    });
    if !passed {
        v.failed_step = Some(number);
    }
    passed
}
