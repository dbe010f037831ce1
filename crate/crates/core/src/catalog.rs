//! Built-in groups: M₁₁, Aₙ, Sₙ, cyclic and dihedral groups.
//!
//! Each construction comes with an ambient overgroup whose conjugation
//! action realizes automorphisms of the group:
//!
//! | group | ambient | scope |
//! |-------|---------|-------|
//! | M₁₁   | M₁₁     | full (Out(M₁₁) is trivial, taken as known) |
//! | Aₙ    | Sₙ      | full, except n = 6 |
//! | Sₙ    | Sₙ      | full, except n = 6 |
//! | Cₘ    | Hol(Cₘ) = Cₘ ⋊ Aut(Cₘ) | full |
//! | Dₘ    | Hol(Cₘ) | full for odd m, partial for even m |
//!
//! M₁₁ uses the standard pair on 11 points,
//! `a = (1,2,3,4,5,6,7,8,9,10,11)` and `b = (3,7,11,8)(4,10,5,6)`.
//! The build checks the order (7920) and simplicity, so a wrong generator
//! pair cannot pass silently.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::action::{ActionScope, AutAction};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

pub const MAX_CATALOG_DEGREE: usize = 12;
pub const MAX_CATALOG_ORDER: usize = 45_000;

pub const M11_GENERATORS: [&str; 2] = ["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"];
pub const M11_ORDER: usize = 7920;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    Mathieu11,
    Alternating(usize),
    Symmetric(usize),
    Cyclic(usize),
    /// Dihedral group of order `2m`, acting on the `m`-gon.
    Dihedral(usize),
}

impl GroupSpec {
    pub fn degree(self) -> usize {
        match self {
            GroupSpec::Mathieu11 => 11,
            GroupSpec::Alternating(n) | GroupSpec::Symmetric(n) => n,
            GroupSpec::Cyclic(m) | GroupSpec::Dihedral(m) => m,
        }
    }

    /// The order the construction must reproduce.
    pub fn expected_order(self) -> usize {
        let factorial = |n: usize| (1..=n).product::<usize>();
        match self {
            GroupSpec::Mathieu11 => M11_ORDER,
            GroupSpec::Alternating(n) => (factorial(n) / 2).max(1),
            GroupSpec::Symmetric(n) => factorial(n),
            GroupSpec::Cyclic(m) => m,
            GroupSpec::Dihedral(m) => 2 * m,
        }
    }

    fn check_range(self) -> Result<()> {
        let degree = self.degree();
        let ok_degree = match self {
            GroupSpec::Mathieu11 => true,
            GroupSpec::Alternating(n) | GroupSpec::Symmetric(n) => (1..=MAX_CATALOG_DEGREE).contains(&n),
            GroupSpec::Cyclic(m) => (1..=MAX_CATALOG_DEGREE).contains(&m),
            GroupSpec::Dihedral(m) => (3..=MAX_CATALOG_DEGREE).contains(&m),
        };
        if !ok_degree || degree > MAX_CATALOG_DEGREE {
            return Err(Error::GroupOutOfRange(format!(
                "{self}: degree must be within the supported range (at most {MAX_CATALOG_DEGREE}; dihedral needs m >= 3)"
            )));
        }
        if self.expected_order() > MAX_CATALOG_ORDER {
            return Err(Error::GroupOutOfRange(format!(
                "{self}: order {} exceeds {MAX_CATALOG_ORDER}",
                self.expected_order()
            )));
        }
        Ok(())
    }

    fn generators(self) -> Vec<Permutation> {
        let n = self.degree();
        let cycle = |pts: Vec<usize>| Permutation::from_cycles(n, &[pts]).expect("valid cycle");
        match self {
            GroupSpec::Mathieu11 => M11_GENERATORS
                .iter()
                .map(|s| Permutation::parse_cycles(11, s).expect("valid generator"))
                .collect(),
            GroupSpec::Symmetric(n) if n >= 2 => vec![cycle((0..n).collect()), cycle(vec![0, 1])],
            GroupSpec::Alternating(n) if n >= 3 => {
                let long = if n % 2 == 1 {
                    cycle((0..n).collect())
                } else {
                    cycle((1..n).collect())
                };
                vec![long, cycle(vec![0, 1, 2])]
            }
            GroupSpec::Symmetric(_) | GroupSpec::Alternating(_) => {
                vec![Permutation::identity(n)]
            }
            GroupSpec::Cyclic(m) => vec![affine(m, 1, 1)],
            GroupSpec::Dihedral(m) => vec![affine(m, 1, 1), affine(m, m - 1, 0)],
        }
    }
}

/// `i ↦ unit·i + shift (mod m)`.
fn affine(m: usize, unit: usize, shift: usize) -> Permutation {
    let images: Vec<usize> = (0..m).map(|i| (unit * i + shift) % m).collect();
    Permutation::from_images(&images).expect("unit is invertible mod m")
}

fn holomorph_generators(m: usize) -> Vec<Permutation> {
    let mut gens = vec![affine(m, 1, 1)];
    gens.extend(
        (2..m)
            .filter(|u| u.gcd(&m) == 1)
            .map(|u| affine(m, u, 0)),
    );
    gens
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Mathieu11 => f.write_str("M11"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Cyclic(m) => write!(f, "C{m}"),
            GroupSpec::Dihedral(m) => write!(f, "D{m}"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Accepts `M11`, `A5`, `S5`, `C12` (or `Z12`), `D6`, case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        if t == "M11" {
            return Ok(GroupSpec::Mathieu11);
        }
        let unknown = || Error::UnknownGroup(s.to_string());
        let (head, digits) = t.split_at(t.chars().next().map_or(0, char::len_utf8));
        let n: usize = digits.parse().map_err(|_| unknown())?;
        match head {
            "A" => Ok(GroupSpec::Alternating(n)),
            "S" => Ok(GroupSpec::Symmetric(n)),
            "C" | "Z" => Ok(GroupSpec::Cyclic(n)),
            "D" => Ok(GroupSpec::Dihedral(n)),
            _ => Err(unknown()),
        }
    }
}

/// A built group with its designated automorphism action.
#[derive(Debug, Clone)]
pub struct CatalogGroup {
    pub spec: GroupSpec,
    pub group: Arc<FiniteGroup>,
    pub action: AutAction,
}

pub fn build(spec: GroupSpec) -> Result<CatalogGroup> {
    spec.check_range()?;
    let group = Arc::new(FiniteGroup::new(spec.to_string(), spec.generators())?);
    if group.order() != spec.expected_order() {
        return Err(Error::GroupOutOfRange(format!(
            "{spec}: closure has order {} but {} was expected",
            group.order(),
            spec.expected_order()
        )));
    }
    if spec == GroupSpec::Mathieu11 && !group.is_simple() {
        return Err(Error::GroupOutOfRange("M11 generators do not give a simple group".into()));
    }
    let action = match spec {
        GroupSpec::Mathieu11 => AutAction::new(group.clone(), group.clone(), ActionScope::FullAut)?,
        GroupSpec::Symmetric(n) => {
            let scope = if n == 6 { ActionScope::PartialAut } else { ActionScope::FullAut };
            AutAction::new(group.clone(), group.clone(), scope)?
        }
        GroupSpec::Alternating(n) => {
            let ambient = Arc::new(FiniteGroup::new(
                format!("S{n}"),
                GroupSpec::Symmetric(n).generators(),
            )?);
            let scope = if n == 6 { ActionScope::PartialAut } else { ActionScope::FullAut };
            AutAction::new(group.clone(), ambient, scope)?
        }
        GroupSpec::Cyclic(m) => {
            let ambient = Arc::new(FiniteGroup::new(format!("Hol(C{m})"), holomorph_generators(m))?);
            AutAction::new(group.clone(), ambient, ActionScope::FullAut)?
                .with_endomorphisms(cyclic_endomorphisms(&group))?
        }
        GroupSpec::Dihedral(m) => {
            let ambient = Arc::new(FiniteGroup::new(format!("Hol(C{m})"), holomorph_generators(m))?);
            let scope = if m % 2 == 1 { ActionScope::FullAut } else { ActionScope::PartialAut };
            AutAction::new(group.clone(), ambient, scope)?
        }
    };
    Ok(CatalogGroup {
        spec,
        group,
        action,
    })
}

/// Parses a group name and builds it.
pub fn build_named(name: &str) -> Result<CatalogGroup> {
    build(name.parse()?)
}

/// The power maps `x ↦ xᵗ`, `t = 0..|G|`: every endomorphism of a cyclic group.
fn cyclic_endomorphisms(group: &FiniteGroup) -> Vec<Vec<usize>> {
    (0..group.order() as i64)
        .map(|t| {
            group
                .elements()
                .iter()
                .map(|e| group.index_of(&e.pow(t)).expect("powers stay in the group"))
                .collect()
        })
        .collect()
}

/// True iff the group has no proper nontrivial normal subgroup.
pub fn verify_simplicity(group: &FiniteGroup) -> Result<bool> {
    if group.order() > MAX_CATALOG_ORDER {
        return Err(Error::ElementCapExceeded {
            cap: MAX_CATALOG_ORDER,
        });
    }
    Ok(group.is_simple())
}
