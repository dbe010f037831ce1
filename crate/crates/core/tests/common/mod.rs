#![allow(dead_code)]

use proptest::prelude::*;
use wordmap::word::{Expr, Letter};
use wordmap::{FiniteGroup, Permutation, Word};

/// Random expression trees over `vars` variables with small exponents.
pub fn expr(vars: usize) -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        8 => (0..vars).prop_map(Expr::var),
        1 => Just(Expr::identity()),
    ];
    leaf.prop_recursive(4, 24, 4, |inner| {
        prop_oneof![
            inner.clone().prop_map(Expr::inv),
            prop::collection::vec(inner.clone(), 0..4).prop_map(Expr::Product),
            (inner.clone(), -7i64..=7).prop_map(|(e, k)| e.pow(k)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.conj(b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.comm(b)),
        ]
    })
}

pub fn word(arity: usize) -> impl Strategy<Value = Word> {
    expr(arity).prop_map(move |e| Word::new(e).with_arity(arity))
}

pub fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

pub fn element(group: &FiniteGroup) -> impl Strategy<Value = Permutation> + '_ {
    (0..group.order()).prop_map(move |i| group.element(i).clone())
}

/// Letter-by-letter product of the freely reduced word: an evaluator that
/// shares nothing with the tree walk or the straight-line program.
pub fn eval_letters(word: &Word, tuple: &[Permutation], degree: usize) -> Permutation {
    word.reduced_letters()
        .iter()
        .fold(Permutation::identity(degree), |acc, l: &Letter| {
            let g = &tuple[l.var];
            acc.compose(&if l.inverse { g.inverse() } else { g.clone() })
        })
}
