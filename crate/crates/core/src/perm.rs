//! Permutations on `0..degree`, stored as image arrays.
//!
//! Products are read left to right: `p.compose(&q)` applies `p` first and
//! then `q`, so point `i` goes to `q[p[i]]`. Conjugation follows the same
//! convention, `a^b = b⁻¹ a b`.
//!
//! Text I/O uses one-based cycle notation such as `(1,2,3)(4,5)`; the
//! identity prints as `()`.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest supported degree. Points are stored as `u8`.
pub const MAX_DEGREE: usize = 255;

type Images = SmallVec<[u8; 16]>;

/// A bijection of `0..degree`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Images,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        Permutation {
            images: (0..degree as u8).collect(),
        }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let degree = images.len();
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(degree));
        }
        let mut seen = vec![false; degree];
        for &img in images {
            if img >= degree || seen[img] {
                return Err(Error::NotABijection(images.to_vec()));
            }
            seen[img] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&i| i as u8).collect(),
        })
    }

    /// Builds a permutation of `degree` points from zero-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(degree));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (pos, &pt) in cycle.iter().enumerate() {
                if pt >= degree {
                    return Err(Error::PointOutOfRange { point: pt + 1, degree });
                }
                if touched[pt] {
                    return Err(Error::RepeatedPoint(pt + 1));
                }
                touched[pt] = true;
                images[pt] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Self::from_images(&images)
    }

    /// Parses one-based cycle notation, e.g. `(1,2,3)(4,5)` or `()`.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let err = |msg: &str| Error::CycleSyntax {
            text: text.to_string(),
            message: msg.to_string(),
        };
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(err("empty input"));
        }
        while !rest.is_empty() {
            let body_start = rest.strip_prefix('(').ok_or_else(|| err("expected '('"))?;
            let close = body_start.find(')').ok_or_else(|| err("unclosed cycle"))?;
            let body = body_start[..close].trim();
            if !body.is_empty() {
                let mut cycle = Vec::new();
                for tok in body.split(',') {
                    let pt: usize = tok
                        .trim()
                        .parse()
                        .map_err(|_| err(&format!("bad point {:?}", tok.trim())))?;
                    if pt == 0 {
                        return Err(err("points are one-based"));
                    }
                    cycle.push(pt - 1);
                }
                cycles.push(cycle);
            }
            rest = body_start[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u8] {
        &self.images
    }

    #[inline]
    pub fn image_of(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// `self` then `other`. Panics on degree mismatch; see [`Self::try_compose`].
    #[inline]
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&p| other.images[p as usize]).collect(),
        }
    }

    pub fn try_compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> Permutation {
        let mut images: Images = SmallVec::from_elem(0, self.degree());
        for (i, &p) in self.images.iter().enumerate() {
            images[p as usize] = i as u8;
        }
        Permutation { images }
    }

    /// `by⁻¹ · self · by`.
    #[inline]
    pub fn conjugate_by(&self, by: &Permutation) -> Permutation {
        assert_eq!(self.degree(), by.degree(), "degree mismatch");
        let mut images: Images = SmallVec::from_elem(0, self.degree());
        for (i, &p) in self.images.iter().enumerate() {
            images[by.images[i] as usize] = by.images[p as usize];
        }
        Permutation { images }
    }

    /// `self⁻¹ · other⁻¹ · self · other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse()
            .compose(&other.inverse())
            .compose(self)
            .compose(other)
    }

    /// Square-and-multiply power; negative exponents go through the inverse.
    pub fn pow(&self, exponent: i64) -> Permutation {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        base.pow_unsigned(exponent.unsigned_abs())
    }

    fn pow_unsigned(&self, mut e: u64) -> Permutation {
        let mut result: Option<Permutation> = None;
        let mut square = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    Some(r) => r.compose(&square),
                    None => square.clone(),
                });
            }
            e >>= 1;
            if e > 0 {
                square = square.compose(&square);
            }
        }
        result.unwrap_or_else(|| Permutation::identity(self.degree()))
    }

    /// Zero-based cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.image_of(start);
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.image_of(next);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least `m ≥ 1` with `self^m = 1`, the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.images.cmp(&other.images))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, pt) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", pt + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> Permutation {
        Permutation::parse_cycles(3, "(1,2,3)").unwrap()
    }

    #[test]
    fn compose_examples() {
        let id = Permutation::identity(3);
        assert_eq!(c3().compose(&id), c3());
        let t = Permutation::parse_cycles(3, "(1,2)").unwrap();
        assert!(t.compose(&t).is_identity());
        // 0 -> 1 -> 2, 1 -> 2 -> 0, 2 -> 0 -> 1
        assert_eq!(c3().compose(&c3()).images(), &[2, 0, 1]);
        assert_eq!(c3().compose(&c3()).to_string(), "(1,3,2)");
    }

    #[test]
    fn compose_applies_left_first() {
        let p = Permutation::parse_cycles(3, "(1,2)").unwrap();
        let q = Permutation::parse_cycles(3, "(2,3)").unwrap();
        // 0 -p-> 1 -q-> 2
        assert_eq!(p.compose(&q).image_of(0), 2);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(a.try_compose(&b), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn orders() {
        assert_eq!(Permutation::identity(5).order(), 1);
        assert_eq!(Permutation::parse_cycles(5, "(1,2,3,4,5)").unwrap().order(), 5);
        assert_eq!(Permutation::parse_cycles(5, "(1,2)(3,4,5)").unwrap().order(), 6);
    }

    #[test]
    fn cycle_text_round_trip() {
        let p = Permutation::parse_cycles(11, "(3,7,11,8)(4,10,5,6)").unwrap();
        assert_eq!(p.to_string(), "(3,7,11,8)(4,10,5,6)");
        assert_eq!(Permutation::parse_cycles(4, "()").unwrap(), Permutation::identity(4));
        assert_eq!(Permutation::identity(4).to_string(), "()");
    }

    #[test]
    fn cycle_parse_errors() {
        assert!(Permutation::parse_cycles(3, "(1,4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1,2)(2,3)").is_err());
        assert!(Permutation::parse_cycles(3, "(0,1)").is_err());
        assert!(Permutation::parse_cycles(3, "(1,2").is_err());
        assert!(Permutation::parse_cycles(3, "1,2").is_err());
        assert!(Permutation::from_images(&[0, 0, 1]).is_err());
    }

    #[test]
    fn powers_and_conjugates() {
        let p = Permutation::parse_cycles(6, "(1,2)(3,4,5)").unwrap();
        assert!(p.pow(6).is_identity());
        assert_eq!(p.pow(-1), p.inverse());
        assert_eq!(p.pow(-440), p.pow(-440i64.rem_euclid(6)));
        let b = Permutation::parse_cycles(6, "(1,6)").unwrap();
        assert_eq!(
            p.conjugate_by(&b),
            b.inverse().compose(&p).compose(&b)
        );
        assert_eq!(p.commutator(&b), p.inverse().compose(&b.inverse()).compose(&p).compose(&b));
    }
}
