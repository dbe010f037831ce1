//! Word images over cyclic groups.
//!
//! Elements of `Cₘ = ⟨a⟩` are encoded additively: `aⁱ` is the residue `i`.
//! A word `w` with exponent sums `k₁ … kₙ` takes the same values on an
//! abelian group as `x^k` with `k = gcd(kᵢ)`, so every word image over `Cₘ`
//! is a power image `{ x^k }`, the multiples of `gcd(k, m)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::catalog::CatalogGroup;
use crate::error::{Error, Result};
use crate::word::Word;

/// Largest modulus accepted by [`endo_closed_subsets`].
pub const MAX_SUBSET_MODULUS: u64 = 24;

/// A subset of `Cₘ`, as residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CyclicSubset {
    pub modulus: u64,
    pub members: BTreeSet<u64>,
}

impl CyclicSubset {
    pub fn new(modulus: u64, members: impl IntoIterator<Item = u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(CyclicSubset {
            modulus,
            members: members.into_iter().map(|i| i % modulus).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, residue: u64) -> bool {
        self.members.contains(&(residue % self.modulus))
    }

    pub fn union(&self, other: &CyclicSubset) -> CyclicSubset {
        assert_eq!(self.modulus, other.modulus);
        CyclicSubset {
            modulus: self.modulus,
            members: self.members.union(&other.members).copied().collect(),
        }
    }

    pub fn is_subset(&self, other: &CyclicSubset) -> bool {
        self.modulus == other.modulus && self.members.is_subset(&other.members)
    }

    /// First `(t, x)` with `t·x ∉ self`, if any. Endomorphisms of `Cₘ` are
    /// exactly the maps `x ↦ t·x`.
    pub fn endo_violation(&self) -> Option<(u64, u64)> {
        (0..self.modulus).find_map(|t| {
            self.members
                .iter()
                .find(|&&x| !self.contains(t * x))
                .map(|&x| (t, x))
        })
    }

    pub fn is_endo_closed(&self) -> bool {
        self.endo_violation().is_none()
    }

    /// Element indices of the same subset inside a built cyclic group.
    pub fn to_group_indices(&self, cyclic: &CatalogGroup) -> Result<Vec<usize>> {
        let g = &cyclic.group;
        if g.order() as u64 != self.modulus || g.generators().len() != 1 {
            return Err(Error::ActionMismatch(format!(
                "{} is not a cyclic group of order {}",
                g.name(),
                self.modulus
            )));
        }
        let a = &g.generators()[0];
        let mut idx: Vec<usize> = self
            .members
            .iter()
            .map(|&i| g.index_of(&a.pow(i as i64)).expect("powers of the generator"))
            .collect();
        idx.sort_unstable();
        Ok(idx)
    }

    /// Inverse of [`Self::to_group_indices`].
    pub fn from_group_indices(cyclic: &CatalogGroup, indices: &[usize]) -> Result<Self> {
        let g = &cyclic.group;
        let m = g.order() as u64;
        let a = &g.generators()[0];
        let log: BTreeMap<usize, u64> = (0..m)
            .map(|i| (g.index_of(&a.pow(i as i64)).expect("powers of the generator"), i))
            .collect();
        if log.len() as u64 != m {
            return Err(Error::ActionMismatch(format!("{} is not cyclic on its generator", g.name())));
        }
        CyclicSubset::new(m, indices.iter().map(|i| log[i]))
    }
}

impl fmt::Display for CyclicSubset {
    /// `{1, a^2, a^4}` in the generator notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, &r) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match r {
                0 => f.write_str("1")?,
                1 => f.write_str("a")?,
                r => write!(f, "a^{r}")?,
            }
        }
        f.write_str("}")
    }
}

/// `{ x^k : x ∈ Cₘ }`, the multiples of `gcd(k, m)`.
pub fn power_image(m: u64, k: i64) -> Result<CyclicSubset> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let step = k.unsigned_abs().gcd(&m);
    CyclicSubset::new(m, (0..m).step_by(step as usize))
}

/// Image of `word` over `Cₘ`, from its exponent sums.
pub fn abelian_word_image(word: &Word, m: u64) -> Result<CyclicSubset> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let gcd = word.abelianize().gcd;
    // gcd(g, m) only depends on g mod m
    power_image(m, (gcd % u128::from(m)) as i64)
}

/// Image of `word` over `Cₘ` by evaluating every tuple of residues.
pub fn abelian_word_image_bruteforce(word: &Word, m: u64) -> Result<CyclicSubset> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let sums = word.abelianize().sums;
    let n = sums.len() as u32;
    let mut out = BTreeSet::new();
    for rank in 0..m.pow(n) {
        let mut r = rank;
        let mut value: i128 = 0;
        for s in &sums {
            value += s * i128::from(r % m);
            r /= m;
        }
        out.insert(value.rem_euclid(i128::from(m)) as u64);
    }
    CyclicSubset::new(m, out)
}

/// All endomorphism-closed subsets of `Cₘ`, sorted by size then members.
///
/// A nonempty closed subset contains `t·x` for every `t`, so it contains
/// the subgroup `⟨x⟩` of each member: closed subsets are the empty set and
/// the unions of subgroups. Subgroups correspond to divisors of `m`.
pub fn endo_closed_subsets(m: u64) -> Result<Vec<CyclicSubset>> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    if m > MAX_SUBSET_MODULUS {
        return Err(Error::ModulusCapExceeded {
            modulus: m,
            cap: MAX_SUBSET_MODULUS,
        });
    }
    let subgroups: Vec<CyclicSubset> = (1..=m)
        .filter(|d| m.is_multiple_of(*d))
        .map(|d| power_image(m, d as i64))
        .collect::<Result<_>>()?;
    let mut all: BTreeSet<CyclicSubset> = BTreeSet::new();
    for mask in 0u32..(1 << subgroups.len()) {
        let mut s = CyclicSubset::new(m, [])?;
        for (i, sg) in subgroups.iter().enumerate() {
            if mask & (1 << i) != 0 {
                s = s.union(sg);
            }
        }
        all.insert(s);
    }
    let mut out: Vec<CyclicSubset> = all.into_iter().collect();
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.members.iter().cmp(b.members.iter()))
    });
    Ok(out)
}

/// The power images `{x^k}` for `k = 0..=m`, with their distinct values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerImageLattice {
    pub modulus: u64,
    pub images: BTreeMap<u64, CyclicSubset>,
    /// Distinct images, largest first.
    pub distinct: Vec<CyclicSubset>,
}

impl PowerImageLattice {
    pub fn new(m: u64) -> Result<Self> {
        let images: BTreeMap<u64, CyclicSubset> = (0..=m)
            .map(|k| power_image(m, k as i64).map(|s| (k, s)))
            .collect::<Result<_>>()?;
        let mut distinct: Vec<CyclicSubset> = images.values().cloned().collect();
        distinct.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        distinct.dedup();
        Ok(PowerImageLattice {
            modulus: m,
            images,
            distinct,
        })
    }

    /// Pairs `(i, j)` of indices into `distinct` with `distinct[i] ⊂ distinct[j]`.
    pub fn inclusions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, a) in self.distinct.iter().enumerate() {
            for (j, b) in self.distinct.iter().enumerate() {
                if i != j && a.is_subset(b) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// The power images of `C₁₂` as displayed: `x^12`, `x^1`, `x^2`, `x^3`,
/// `x^4`, `x^6`.
pub const C12_POWER_IMAGES: [(u64, &[u64]); 6] = [
    (12, &[0]),
    (1, &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]),
    (2, &[0, 2, 4, 6, 8, 10]),
    (3, &[0, 3, 6, 9]),
    (4, &[0, 4, 8]),
    (6, &[0, 6]),
];

/// Squares together with cubes in `C₁₂`.
pub const C12_SQUARES_AND_CUBES: [u64; 8] = [0, 2, 3, 4, 6, 8, 9, 10];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem3Step {
    pub number: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem3Verdict {
    pub passed: bool,
    pub failed_step: Option<u8>,
    pub steps: Vec<Theorem3Step>,
    /// The candidate set in generator notation.
    pub subset: String,
    pub power_images: Vec<String>,
}

/// Checks that squares ∪ cubes in `C₁₂` is endomorphism-closed but is not
/// the image of any word.
pub fn run_theorem3() -> Result<Theorem3Verdict> {
    run_theorem3_with(&CyclicSubset::new(12, C12_SQUARES_AND_CUBES)?)
}

/// The same checks for another candidate subset of `C₁₂`.
pub fn run_theorem3_with(candidate: &CyclicSubset) -> Result<Theorem3Verdict> {
    let m = 12;
    let lattice = PowerImageLattice::new(m)?;
    let mut v = Theorem3Verdict {
        passed: false,
        failed_step: None,
        steps: Vec::new(),
        subset: candidate.to_string(),
        power_images: lattice.distinct.iter().map(ToString::to_string).collect(),
    };

    // 1
    let displayed: BTreeSet<CyclicSubset> = C12_POWER_IMAGES
        .iter()
        .map(|(_, members)| CyclicSubset::new(m, members.iter().copied()))
        .collect::<Result<_>>()?;
    let per_k_ok = C12_POWER_IMAGES
        .iter()
        .all(|(k, members)| lattice.images[k].members.iter().eq(members.iter()));
    let computed: BTreeSet<CyclicSubset> = lattice.distinct.iter().cloned().collect();
    let ok = per_k_ok && computed == displayed;
    let detail = format!(
        "{} distinct power images: {}",
        lattice.distinct.len(),
        v.power_images.join(" ")
    );
    if !push(&mut v, 1, "power images of C12", ok, detail) {
        return Ok(v);
    }

    // 2
    let violation = candidate.endo_violation();
    let ok = candidate.modulus == m && violation.is_none();
    let detail = match violation {
        None => format!("{candidate} is closed under x -> t*x for every t"),
        Some((t, x)) => format!(
            "not closed: t = {t} maps a^{x} to a^{} outside {candidate}",
            (t * x) % m
        ),
    };
    if !push(&mut v, 2, "candidate is endomorphism-closed", ok, detail) {
        return Ok(v);
    }

    // 3
    let matches: Vec<u64> = (0..m)
        .filter(|&k| lattice.images[&k] == *candidate)
        .collect();
    let ok = matches.is_empty();
    push(&mut v, 3, "candidate is no power image, hence no word image", ok, if ok {
        format!("{candidate} differs from all {} power images; every word image over C12 is a power image", lattice.distinct.len())
    } else {
        format!("{candidate} equals the image of x^k for k in {matches:?}")
    });
    v.passed = ok;
    Ok(v)
}

fn push(v: &mut Theorem3Verdict, number: u8, name: &'static str, passed: bool, detail: String) -> bool {
    v.steps.push(Theorem3Step {
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

#[cfg(test)]
mod tests {
    use super::*;

    fn set(m: u64, xs: &[u64]) -> CyclicSubset {
        CyclicSubset::new(m, xs.iter().copied()).unwrap()
    }

    #[test]
    fn power_image_examples() {
        assert_eq!(power_image(12, 2).unwrap(), set(12, &[0, 2, 4, 6, 8, 10]));
        assert_eq!(power_image(12, 12).unwrap(), set(12, &[0]));
        assert_eq!(power_image(12, 5).unwrap().len(), 12);
        assert_eq!(power_image(12, 0).unwrap(), set(12, &[0]));
        assert_eq!(power_image(12, -3).unwrap(), set(12, &[0, 3, 6, 9]));
        assert!(matches!(power_image(0, 1), Err(Error::ZeroModulus)));
    }

    #[test]
    fn word_images() {
        let w = |s: &str| Word::parse(s).unwrap();
        assert_eq!(abelian_word_image(&w("[x,y]"), 7).unwrap(), set(7, &[0]));
        assert_eq!(abelian_word_image(&w("x^2 y^4"), 12).unwrap(), power_image(12, 2).unwrap());
        assert_eq!(
            abelian_word_image_bruteforce(&w("x^2 y^4"), 12).unwrap(),
            power_image(12, 2).unwrap()
        );
        assert_eq!(abelian_word_image(&w("x y"), 12).unwrap().len(), 12);
    }

    #[test]
    fn closed_subsets_of_c12() {
        let subsets = endo_closed_subsets(12).unwrap();
        assert!(subsets.contains(&set(12, &C12_SQUARES_AND_CUBES)));
        for k in 0..=12 {
            assert!(subsets.contains(&power_image(12, k).unwrap()));
        }
        assert!(subsets.iter().all(CyclicSubset::is_endo_closed));
        assert_eq!(endo_closed_subsets(1).unwrap(), vec![set(1, &[]), set(1, &[0])]);
        assert!(endo_closed_subsets(25).is_err());
    }

    #[test]
    fn closed_subsets_match_powerset_scan() {
        for m in 1..=12u64 {
            let mut brute: Vec<CyclicSubset> = (0u32..(1 << m))
                .map(|mask| set(m, &(0..m).filter(|i| mask & (1 << i) != 0).collect::<Vec<_>>()))
                .filter(CyclicSubset::is_endo_closed)
                .collect();
            brute.sort();
            let mut fast = endo_closed_subsets(m).unwrap();
            fast.sort();
            assert_eq!(fast, brute, "m = {m}");
        }
    }

    #[test]
    fn lattice_of_c12() {
        let lattice = PowerImageLattice::new(12).unwrap();
        assert_eq!(lattice.distinct.len(), 6);
        assert_eq!(lattice.distinct[0].len(), 12);
        // {0} lies in every other image
        let trivial = lattice.distinct.iter().position(|s| s.len() == 1).unwrap();
        assert_eq!(lattice.inclusions().iter().filter(|(i, _)| *i == trivial).count(), 5);
    }

    #[test]
    fn display_uses_generator_notation() {
        assert_eq!(
            set(12, &C12_SQUARES_AND_CUBES).to_string(),
            "{1,a^2,a^3,a^4,a^6,a^8,a^9,a^10}"
        );
        assert_eq!(set(12, &[0, 1]).to_string(), "{1,a}");
    }

    #[test]
    fn c12_counterexample_passes() {
        let v = run_theorem3().unwrap();
        assert!(v.passed, "{v:#?}");
        assert_eq!(v.steps.len(), 3);
        assert_eq!(v.subset, "{1,a^2,a^3,a^4,a^6,a^8,a^9,a^10}");
    }

    #[test]
    fn c12_counterexample_negative_control() {
        let mut members = C12_SQUARES_AND_CUBES.to_vec();
        members.push(5);
        let v = run_theorem3_with(&set(12, &members)).unwrap();
        assert!(!v.passed);
        assert_eq!(v.failed_step, Some(2));
        assert!(v.steps[1].detail.contains("t = 5"), "{}", v.steps[1].detail);
        // a power image passes closure but fails step 3
        let v = run_theorem3_with(&power_image(12, 2).unwrap()).unwrap();
        assert_eq!(v.failed_step, Some(3));
    }
}
