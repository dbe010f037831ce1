//! Straight-line programs compiled from words.
//!
//! Repeated subexpressions are compiled once. Powers stay as single
//! instructions and are evaluated by square-and-multiply, so a word like
//! `x^-440` costs two instructions however long its letter expansion is.

use std::collections::HashMap;
use std::fmt;

use super::{Expr, Word};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Instruction {
    /// The identity element.
    Identity,
    Load(usize),
    Invert(usize),
    Multiply(usize, usize),
    Power(usize, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slp {
    arity: usize,
    instructions: Vec<Instruction>,
    result: usize,
}

impl Slp {
    pub fn compile(word: &Word) -> Slp {
        let mut c = Compiler::default();
        let result = c.expr(word.expr());
        Slp {
            arity: word.arity(),
            instructions: c.out,
            result,
        }
    }

    /// Builds an SLP from raw instructions, checking that every reference
    /// points to an earlier instruction.
    pub fn from_instructions(
        arity: usize,
        instructions: Vec<Instruction>,
        result: usize,
    ) -> Result<Slp> {
        let bad = |i: usize| Error::WordSyntax {
            offset: i,
            message: "instruction refers to itself, a later slot or a missing variable".into(),
        };
        for (i, ins) in instructions.iter().enumerate() {
            let ok = match *ins {
                Instruction::Identity => true,
                Instruction::Load(v) => v < arity,
                Instruction::Invert(a) | Instruction::Power(a, _) => a < i,
                Instruction::Multiply(a, b) => a < i && b < i,
            };
            if !ok {
                return Err(bad(i));
            }
        }
        if result >= instructions.len() {
            return Err(bad(result));
        }
        Ok(Slp {
            arity,
            instructions,
            result,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    /// Group multiplications and inversions performed by one evaluation.
    pub fn step_count(&self) -> u64 {
        self.instructions
            .iter()
            .map(|ins| match *ins {
                Instruction::Identity | Instruction::Load(_) => 0,
                Instruction::Invert(_) | Instruction::Multiply(_, _) => 1,
                Instruction::Power(_, k) => power_steps(k),
            })
            .sum()
    }

    /// Evaluates on `tuple`, which must match the arity and share one degree.
    pub fn evaluate(&self, tuple: &[Permutation], degree: usize) -> Result<Permutation> {
        if tuple.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: tuple.len(),
            });
        }
        if let Some(g) = tuple.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        Ok(self.run(tuple, degree))
    }

    pub fn evaluate_in(&self, tuple: &[Permutation], group: &FiniteGroup) -> Result<Permutation> {
        for g in tuple {
            group.require(g)?;
        }
        self.evaluate(tuple, group.degree())
    }

    /// Unchecked evaluation for hot loops; arity and degrees must already match.
    pub fn run(&self, tuple: &[Permutation], degree: usize) -> Permutation {
        let mut regs: Vec<Permutation> = Vec::with_capacity(self.instructions.len());
        for ins in &self.instructions {
            let v = match *ins {
                Instruction::Identity => Permutation::identity(degree),
                Instruction::Load(i) => tuple[i].clone(),
                Instruction::Invert(a) => regs[a].inverse(),
                Instruction::Multiply(a, b) => regs[a].compose(&regs[b]),
                Instruction::Power(a, k) => regs[a].pow(k),
            };
            regs.push(v);
        }
        regs.swap_remove(self.result)
    }
}

/// Square-and-multiply cost of `g ↦ gᵏ`, counting an inversion for `k < 0`.
fn power_steps(k: i64) -> u64 {
    let e = k.unsigned_abs();
    if e <= 1 {
        return u64::from(k < 0);
    }
    let bits = 64 - u64::from(e.leading_zeros());
    let squarings = bits - 1;
    let multiplies = u64::from(e.count_ones()) - 1;
    squarings + multiplies + u64::from(k < 0)
}

#[derive(Default)]
struct Compiler {
    out: Vec<Instruction>,
    memo: HashMap<Expr, usize>,
    emitted: HashMap<Instruction, usize>,
}

impl Compiler {
    fn emit(&mut self, ins: Instruction) -> usize {
        if let Some(&r) = self.emitted.get(&ins) {
            return r;
        }
        self.out.push(ins);
        let r = self.out.len() - 1;
        self.emitted.insert(ins, r);
        r
    }

    fn invert(&mut self, r: usize) -> usize {
        if let Instruction::Invert(orig) = self.out[r] {
            return orig;
        }
        self.emit(Instruction::Invert(r))
    }

    fn expr(&mut self, e: &Expr) -> usize {
        if let Some(&r) = self.memo.get(e) {
            return r;
        }
        let r = match e {
            Expr::Var(i) => self.emit(Instruction::Load(*i)),
            Expr::Inverse(a) => {
                let a = self.expr(a);
                self.invert(a)
            }
            Expr::Product(v) if v.is_empty() => self.emit(Instruction::Identity),
            Expr::Product(v) => {
                let mut acc = self.expr(&v[0]);
                for item in &v[1..] {
                    let next = self.expr(item);
                    acc = self.emit(Instruction::Multiply(acc, next));
                }
                acc
            }
            Expr::Power(a, k) => {
                let a = self.expr(a);
                match *k {
                    0 => self.emit(Instruction::Identity),
                    1 => a,
                    -1 => self.invert(a),
                    k => self.emit(Instruction::Power(a, k)),
                }
            }
            Expr::Conjugate(a, b) => {
                let a = self.expr(a);
                let b = self.expr(b);
                let bi = self.invert(b);
                let t = self.emit(Instruction::Multiply(bi, a));
                self.emit(Instruction::Multiply(t, b))
            }
            Expr::Commutator(a, b) => {
                // a⁻¹b⁻¹ab = (ba)⁻¹(ab)
                let a = self.expr(a);
                let b = self.expr(b);
                let ab = self.emit(Instruction::Multiply(a, b));
                let ba = self.emit(Instruction::Multiply(b, a));
                let bai = self.invert(ba);
                self.emit(Instruction::Multiply(bai, ab))
            }
        };
        self.memo.insert(e.clone(), r);
        r
    }
}

impl fmt::Display for Slp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, ins) in self.instructions.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            match *ins {
                Instruction::Identity => write!(f, "r{i} = 1")?,
                Instruction::Load(v) => write!(f, "r{i} = x{}", v + 1)?,
                Instruction::Invert(a) => write!(f, "r{i} = r{a}^-1")?,
                Instruction::Multiply(a, b) => write!(f, "r{i} = r{a} r{b}")?,
                Instruction::Power(a, k) => write!(f, "r{i} = r{a}^{k}")?,
            }
        }
        write!(f, "; return r{}", self.result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, GroupSpec};

    fn compile(s: &str) -> Slp {
        Word::parse(s).unwrap().compile()
    }

    #[test]
    fn commutator_size() {
        let slp = compile("[x,y]");
        assert!(slp.len() <= 7, "{slp}");
        assert_eq!(slp.len(), 6);
    }

    #[test]
    fn power_cost() {
        let slp = compile("x^440");
        assert!(slp.step_count() <= 12, "{}", slp.step_count());
        assert_eq!(power_steps(440), 12);
        assert_eq!(power_steps(-440), 13);
        assert_eq!(power_steps(1), 0);
        assert_eq!(power_steps(-1), 1);
        assert_eq!(power_steps(2), 1);
        assert_eq!(power_steps(i64::MIN), 64);
    }

    #[test]
    fn chiral_word_is_short() {
        let w = Word::parse(crate::word::tests::CHIRAL_WORD).unwrap();
        let slp = w.compile();
        assert!(slp.len() <= 80, "{}", slp.len());
        assert!(slp.len() <= 2 * w.node_count());
        assert_eq!(w.reduced_length(), 9680);
    }

    #[test]
    fn agrees_with_tree_evaluation() {
        let s4 = build(GroupSpec::Symmetric(4)).unwrap();
        let w = Word::parse("[x^3 y, y^(x y)]^-2 x^y 1").unwrap();
        let slp = w.compile();
        for a in s4.group.elements() {
            for b in s4.group.elements().iter().step_by(3) {
                let t = [a.clone(), b.clone()];
                assert_eq!(slp.evaluate_in(&t, &s4.group).unwrap(), w.evaluate(&t).unwrap());
            }
        }
    }

    #[test]
    fn identity_only_programs() {
        let slp = compile("1");
        assert_eq!(slp.arity(), 0);
        assert!(slp.evaluate(&[], 5).unwrap().is_identity());
        let slp = compile("x^0");
        let g = Permutation::parse_cycles(3, "(1,2,3)").unwrap();
        assert!(slp.evaluate(&[g], 3).unwrap().is_identity());
    }

    #[test]
    fn rejects_forward_references() {
        assert!(Slp::from_instructions(1, vec![Instruction::Invert(0)], 0).is_err());
        assert!(Slp::from_instructions(1, vec![Instruction::Load(1)], 0).is_err());
        assert!(Slp::from_instructions(1, vec![Instruction::Load(0)], 1).is_err());
        let ok = Slp::from_instructions(
            1,
            vec![Instruction::Load(0), Instruction::Power(0, 3)],
            1,
        )
        .unwrap();
        let g = Permutation::parse_cycles(3, "(1,2)").unwrap();
        assert_eq!(ok.evaluate(&[g.clone()], 3).unwrap(), g);
    }
}
