//! Free-group words: syntax trees, canonical printing, free reduction,
//! abelianization and evaluation on permutations.
//!
//! Grammar accepted by [`Word::parse`]:
//!
//! ```text
//! word     := product
//! product  := factor ( ['*'] factor )*
//! factor   := atom ( '^' exponent )*          left associative
//! exponent := ['-'|'+'] digits                power
//!           | '(' ['-'|'+'] digits ')'        power
//!           | atom                            conjugation a^b = b⁻¹ a b
//! atom     := variable | '1' | '(' product ')' | '[' product (',' product)+ ']'
//! variable := 'x' | 'y' | 'z' | 'x1' … 'x9'
//! ```
//!
//! `x`, `y`, `z` are the same variables as `x1`, `x2`, `x3`.
//! `[a,b] = a⁻¹b⁻¹ab`, and longer brackets nest to the left:
//! `[a,b,c] = [[a,b],c]`.

mod parse;
mod slp;

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

pub use slp::{Instruction, Slp};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(usize),
    Inverse(Box<Expr>),
    /// Empty product is the identity.
    Product(Vec<Expr>),
    Power(Box<Expr>, i64),
    /// `Conjugate(a, b)` is `b⁻¹ a b`.
    Conjugate(Box<Expr>, Box<Expr>),
    /// `Commutator(a, b)` is `a⁻¹ b⁻¹ a b`.
    Commutator(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn identity() -> Self {
        Expr::Product(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        Expr::Var(i)
    }

    pub fn pow(self, k: i64) -> Self {
        Expr::Power(Box::new(self), k)
    }

    pub fn inv(self) -> Self {
        Expr::Inverse(Box::new(self))
    }

    pub fn conj(self, by: Expr) -> Self {
        Expr::Conjugate(Box::new(self), Box::new(by))
    }

    pub fn comm(self, other: Expr) -> Self {
        Expr::Commutator(Box::new(self), Box::new(other))
    }

    pub fn node_count(&self) -> usize {
        1 + match self {
            Expr::Var(_) => 0,
            Expr::Inverse(e) | Expr::Power(e, _) => e.node_count(),
            Expr::Product(v) => v.iter().map(Expr::node_count).sum(),
            Expr::Conjugate(a, b) | Expr::Commutator(a, b) => a.node_count() + b.node_count(),
        }
    }

    fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Var(i) => Some(*i),
            Expr::Inverse(e) | Expr::Power(e, _) => e.max_var(),
            Expr::Product(v) => v.iter().filter_map(Expr::max_var).max(),
            Expr::Conjugate(a, b) | Expr::Commutator(a, b) => a.max_var().max(b.max_var()),
        }
    }

    fn eval(&self, tuple: &[Permutation], identity: &Permutation) -> Permutation {
        match self {
            Expr::Var(i) => tuple[*i].clone(),
            Expr::Inverse(e) => e.eval(tuple, identity).inverse(),
            Expr::Product(v) => v
                .iter()
                .fold(identity.clone(), |acc, e| acc.compose(&e.eval(tuple, identity))),
            Expr::Power(e, k) => e.eval(tuple, identity).pow(*k),
            Expr::Conjugate(a, b) => a.eval(tuple, identity).conjugate_by(&b.eval(tuple, identity)),
            Expr::Commutator(a, b) => a.eval(tuple, identity).commutator(&b.eval(tuple, identity)),
        }
    }

    fn exponent_sums(&self, sums: &mut [i128], scale: i128) {
        match self {
            Expr::Var(i) => sums[*i] += scale,
            Expr::Inverse(e) => e.exponent_sums(sums, -scale),
            Expr::Product(v) => v.iter().for_each(|e| e.exponent_sums(sums, scale)),
            Expr::Power(e, k) => e.exponent_sums(sums, scale * i128::from(*k)),
            Expr::Conjugate(a, _) => a.exponent_sums(sums, scale),
            Expr::Commutator(_, _) => {}
        }
    }

    fn letters(&self, out: &mut Vec<Letter>) {
        match self {
            Expr::Var(i) => push_reduced(out, Letter::new(*i, false)),
            Expr::Inverse(e) => {
                let inner = e.reduced();
                extend_reduced(out, inverse_letters(&inner));
            }
            Expr::Product(v) => v.iter().for_each(|e| e.letters(out)),
            Expr::Power(e, k) => {
                let mut inner = e.reduced();
                if *k < 0 {
                    inner = inverse_letters(&inner);
                }
                extend_reduced(out, power_letters(&inner, k.unsigned_abs()));
            }
            Expr::Conjugate(a, b) => {
                let b = b.reduced();
                extend_reduced(out, inverse_letters(&b));
                a.letters(out);
                extend_reduced(out, b);
            }
            Expr::Commutator(a, b) => {
                let a = a.reduced();
                let b = b.reduced();
                extend_reduced(out, inverse_letters(&a));
                extend_reduced(out, inverse_letters(&b));
                extend_reduced(out, a);
                extend_reduced(out, b);
            }
        }
    }

    fn reduced(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        self.letters(&mut out);
        out
    }

    fn strip_powers(&self, k: i64) -> Option<Expr> {
        Some(match self {
            Expr::Var(_) => return None,
            Expr::Power(inner, e) if *e == k => match **inner {
                Expr::Var(i) => Expr::Var(i),
                _ => Expr::Power(Box::new(inner.strip_powers(k)?), *e),
            },
            Expr::Power(inner, e) => Expr::Power(Box::new(inner.strip_powers(k)?), *e),
            Expr::Inverse(e) => Expr::Inverse(Box::new(e.strip_powers(k)?)),
            Expr::Product(v) => {
                Expr::Product(v.iter().map(|e| e.strip_powers(k)).collect::<Option<_>>()?)
            }
            Expr::Conjugate(a, b) => {
                Expr::Conjugate(Box::new(a.strip_powers(k)?), Box::new(b.strip_powers(k)?))
            }
            Expr::Commutator(a, b) => {
                Expr::Commutator(Box::new(a.strip_powers(k)?), Box::new(b.strip_powers(k)?))
            }
        })
    }
}

/// A generator or inverse generator of the free group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub var: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(var: usize, inverse: bool) -> Self {
        Letter { var, inverse }
    }

    pub fn inverted(self) -> Self {
        Letter {
            var: self.var,
            inverse: !self.inverse,
        }
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inverted()) {
        out.pop();
    } else {
        out.push(l);
    }
}

fn extend_reduced(out: &mut Vec<Letter>, letters: Vec<Letter>) {
    for l in letters {
        push_reduced(out, l);
    }
}

fn inverse_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inverted()).collect()
}

/// `r^k` for a freely reduced `r`, written as `u c^k u⁻¹` with `c`
/// cyclically reduced, so the result is reduced without a cancellation pass.
fn power_letters(r: &[Letter], k: u64) -> Vec<Letter> {
    if k == 0 || r.is_empty() {
        return Vec::new();
    }
    let mut lo = 0;
    let mut hi = r.len();
    while hi - lo >= 2 && r[lo] == r[hi - 1].inverted() {
        lo += 1;
        hi -= 1;
    }
    let (prefix, core, suffix) = (&r[..lo], &r[lo..hi], &r[hi..]);
    let mut out = Vec::with_capacity(prefix.len() + suffix.len() + core.len() * k as usize);
    out.extend_from_slice(prefix);
    for _ in 0..k {
        out.extend_from_slice(core);
    }
    out.extend_from_slice(suffix);
    out
}

/// Exponent sum of each variable, and their gcd (0 when all vanish).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentVector {
    pub sums: Vec<i128>,
    pub gcd: u128,
}

/// A word in `arity` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    arity: usize,
    expr: Expr,
}

impl Word {
    /// Wraps an expression; arity is one past the largest variable index.
    pub fn new(expr: Expr) -> Self {
        let arity = expr.max_var().map_or(0, |m| m + 1);
        Word { arity, expr }
    }

    /// Same word regarded as a word in at least `arity` variables.
    pub fn with_arity(mut self, arity: usize) -> Self {
        self.arity = self.arity.max(arity);
        self
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse::parse(text).map(Word::new)
    }

    pub fn from_letters(arity: usize, letters: &[Letter]) -> Self {
        let factors = letters
            .iter()
            .map(|l| {
                if l.inverse {
                    Expr::Var(l.var).pow(-1)
                } else {
                    Expr::Var(l.var)
                }
            })
            .collect();
        Word::new(Expr::Product(factors)).with_arity(arity)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn node_count(&self) -> usize {
        self.expr.node_count()
    }

    /// The freely reduced letter sequence of the fully expanded word.
    pub fn reduced_letters(&self) -> Vec<Letter> {
        self.expr.reduced()
    }

    pub fn reduced_length(&self) -> usize {
        self.reduced_letters().len()
    }

    pub fn abelianize(&self) -> ExponentVector {
        let mut sums = vec![0i128; self.arity];
        self.expr.exponent_sums(&mut sums, 1);
        let gcd = sums
            .iter()
            .fold(0u128, |g, s| g.gcd(&s.unsigned_abs()));
        ExponentVector { sums, gcd }
    }

    pub fn compile(&self) -> Slp {
        Slp::compile(self)
    }

    /// Evaluates at `tuple`; all entries must share one degree.
    pub fn evaluate(&self, tuple: &[Permutation]) -> Result<Permutation> {
        if tuple.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: tuple.len(),
            });
        }
        let degree = match tuple.first() {
            Some(g) => g.degree(),
            None => 0,
        };
        if let Some(g) = tuple.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        Ok(self.expr.eval(tuple, &Permutation::identity(degree)))
    }

    /// Evaluates at a tuple of elements of `group`.
    pub fn evaluate_in(&self, tuple: &[Permutation], group: &FiniteGroup) -> Result<Permutation> {
        if tuple.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: tuple.len(),
            });
        }
        for g in tuple {
            group.require(g)?;
        }
        Ok(self.expr.eval(tuple, &Permutation::identity(group.degree())))
    }

    /// If every variable occurs only as `xᵢᵏ`, the word `v` with
    /// `self = v(x₁ᵏ, …, xₙᵏ)` syntactically.
    pub fn factor_through_power(&self, k: i64) -> Option<Word> {
        self.expr
            .strip_powers(k)
            .map(|e| Word::new(e).with_arity(self.arity))
    }
}

/// For each element order `d` present in `group`, the residue `k mod d`:
/// `gᵏ = g^(k mod d)` whenever `g` has order `d`.
pub fn power_case_table(group: &FiniteGroup, k: i64) -> BTreeMap<u64, u64> {
    group
        .element_orders()
        .iter()
        .map(|&d| (d, (i128::from(k).rem_euclid(i128::from(d))) as u64))
        .collect()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let named = self.arity <= 3;
        write_expr(f, &self.expr, named)
    }
}

fn write_var(f: &mut fmt::Formatter<'_>, i: usize, named: bool) -> fmt::Result {
    if named {
        f.write_str(["x", "y", "z"][i])
    } else {
        write!(f, "x{}", i + 1)
    }
}

/// A one-factor product prints as its factor.
fn unwrap_single(e: &Expr) -> &Expr {
    match e {
        Expr::Product(v) if v.len() == 1 => unwrap_single(&v[0]),
        _ => e,
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr, named: bool) -> fmt::Result {
    match unwrap_single(e) {
        Expr::Product(v) if v.is_empty() => f.write_str("1"),
        Expr::Product(v) => {
            for (i, item) in v.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                match unwrap_single(item) {
                    item @ Expr::Product(inner) if !inner.is_empty() => {
                        f.write_str("(")?;
                        write_expr(f, item, named)?;
                        f.write_str(")")?;
                    }
                    _ => write_expr(f, item, named)?,
                }
            }
            Ok(())
        }
        Expr::Var(i) => write_var(f, *i, named),
        Expr::Inverse(a) => {
            write_atom(f, a, named)?;
            f.write_str("^-1")
        }
        Expr::Power(a, k) => {
            write_atom(f, a, named)?;
            write!(f, "^{k}")
        }
        Expr::Conjugate(a, b) => {
            write_atom(f, a, named)?;
            f.write_str("^")?;
            write_atom(f, b, named)
        }
        Expr::Commutator(a, b) => {
            f.write_str("[")?;
            write_expr(f, a, named)?;
            f.write_str(", ")?;
            write_expr(f, b, named)?;
            f.write_str("]")
        }
    }
}

fn write_atom(f: &mut fmt::Formatter<'_>, e: &Expr, named: bool) -> fmt::Result {
    let e = unwrap_single(e);
    match e {
        Expr::Var(_) | Expr::Commutator(_, _) => write_expr(f, e, named),
        Expr::Product(v) if v.is_empty() => write_expr(f, e, named),
        _ => {
            f.write_str("(")?;
            write_expr(f, e, named)?;
            f.write_str(")")
        }
    }
}
