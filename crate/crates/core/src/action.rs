//! Automorphism actions realized by conjugation inside an ambient group, and
//! orbit enumeration on tuple spaces under the diagonal action.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{orbit_partition, FiniteGroup};
use crate::perm::Permutation;

/// How much of `Aut(G)` the ambient conjugation action is known to realize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionScope {
    /// Every automorphism of the base is induced by some ambient element.
    FullAut,
    /// The ambient normalizes the base but may miss outer automorphisms.
    PartialAut,
    /// Only inner automorphisms (the ambient is the base itself).
    InnerOnly,
}

impl ActionScope {
    pub fn label(self) -> &'static str {
        match self {
            ActionScope::FullAut => "Aut(G)",
            ActionScope::PartialAut => "subgroup of Aut(G) induced by the ambient group",
            ActionScope::InnerOnly => "closure checked under Inn(G) only",
        }
    }
}

/// Conjugation action of `ambient` on a normal subgroup `base`.
#[derive(Debug, Clone)]
pub struct AutAction {
    base: Arc<FiniteGroup>,
    ambient: Arc<FiniteGroup>,
    scope: ActionScope,
    generator_maps: Vec<Vec<usize>>,
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
    endomorphisms: Option<Arc<Vec<Vec<usize>>>>,
}

impl AutAction {
    pub fn new(
        base: Arc<FiniteGroup>,
        ambient: Arc<FiniteGroup>,
        scope: ActionScope,
    ) -> Result<Self> {
        if base.degree() != ambient.degree() {
            return Err(Error::ActionMismatch(format!(
                "base has degree {} but ambient has degree {}",
                base.degree(),
                ambient.degree()
            )));
        }
        if let Some(g) = base.generators().iter().find(|g| !ambient.contains(g)) {
            return Err(Error::ActionMismatch(format!(
                "generator {g} of {} is not in {}",
                base.name(),
                ambient.name()
            )));
        }
        // Conjugation by an ambient generator is injective, so mapping base
        // into itself means mapping it onto itself.
        let generator_maps = ambient
            .generators()
            .iter()
            .map(|c| base.conjugation_map(c))
            .collect::<Result<Vec<_>>>()?;
        let orbits = orbit_partition(base.order(), &generator_maps);
        let mut orbit_of = vec![0; base.order()];
        for (i, orbit) in orbits.iter().enumerate() {
            for &e in orbit {
                orbit_of[e] = i;
            }
        }
        Ok(AutAction {
            base,
            ambient,
            scope,
            generator_maps,
            orbits,
            orbit_of,
            endomorphisms: None,
        })
    }

    /// Conjugation by the group itself.
    pub fn inner(group: Arc<FiniteGroup>) -> Self {
        Self::new(group.clone(), group, ActionScope::InnerOnly)
            .expect("a group normalizes itself")
    }

    /// Attaches a complete list of endomorphisms, each an index map on the base.
    pub fn with_endomorphisms(mut self, endos: Vec<Vec<usize>>) -> Result<Self> {
        let n = self.base.order();
        if let Some(bad) = endos.iter().find(|m| m.len() != n || m.iter().any(|&x| x >= n)) {
            return Err(Error::ActionMismatch(format!(
                "endomorphism table of length {} does not match group order {n}",
                bad.len()
            )));
        }
        self.endomorphisms = Some(Arc::new(endos));
        Ok(self)
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn ambient(&self) -> &Arc<FiniteGroup> {
        &self.ambient
    }

    pub fn scope(&self) -> ActionScope {
        self.scope
    }

    pub fn endomorphisms(&self) -> Option<&[Vec<usize>]> {
        self.endomorphisms.as_deref().map(Vec::as_slice)
    }

    /// Index maps on the base, one per ambient generator.
    pub fn generator_maps(&self) -> &[Vec<usize>] {
        &self.generator_maps
    }

    /// Orbits of single base elements, ordered by least member.
    pub fn element_orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn element_orbit_of(&self, element: usize) -> usize {
        self.orbit_of[element]
    }
}

/// A product domain `D₁ × … × Dₙ` of base-element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleDomain {
    coords: Vec<Vec<usize>>,
}

impl TupleDomain {
    /// All of `Gⁿ`.
    pub fn full(group: &FiniteGroup, arity: usize) -> Self {
        TupleDomain {
            coords: vec![(0..group.order()).collect(); arity],
        }
    }

    /// `Dⁿ` with `D` the elements satisfying `keep`.
    pub fn filtered(
        group: &FiniteGroup,
        arity: usize,
        keep: impl Fn(&Permutation) -> bool,
    ) -> Self {
        let coord: Vec<usize> = (0..group.order())
            .filter(|&i| keep(group.element(i)))
            .collect();
        TupleDomain {
            coords: vec![coord; arity],
        }
    }

    /// Explicit per-coordinate index sets (sorted and deduplicated here).
    pub fn from_coordinates(mut coords: Vec<Vec<usize>>) -> Self {
        for c in &mut coords {
            c.sort_unstable();
            c.dedup();
        }
        TupleDomain { coords }
    }

    pub fn arity(&self) -> usize {
        self.coords.len()
    }

    pub fn coordinate(&self, i: usize) -> &[usize] {
        &self.coords[i]
    }

    /// Number of tuples, as an exact count.
    pub fn size(&self) -> u128 {
        self.coords.iter().map(|c| c.len() as u128).product()
    }

    pub fn is_full(&self, group: &FiniteGroup) -> bool {
        self.coords.iter().all(|c| c.len() == group.order())
    }

    /// Checks every coordinate set is mapped into itself by the action.
    pub fn check_invariant(&self, action: &AutAction) -> Result<()> {
        let n = action.base().order();
        for (ci, coord) in self.coords.iter().enumerate() {
            let mut member = vec![false; n];
            for &e in coord {
                if e >= n {
                    return Err(Error::DomainNotInvariant(format!(
                        "coordinate {ci} names index {e} outside the group"
                    )));
                }
                member[e] = true;
            }
            for map in action.generator_maps() {
                if let Some(&e) = coord.iter().find(|&&e| !member[map[e]]) {
                    return Err(Error::DomainNotInvariant(format!(
                        "coordinate {ci}: conjugate of {} leaves the domain",
                        action.base().element(e)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Row-major iteration order: the tuple at `rank`.
    pub(crate) fn tuple_at(&self, mut rank: u128, out: &mut [usize]) {
        for (slot, coord) in out.iter_mut().zip(&self.coords).rev() {
            let len = coord.len() as u128;
            *slot = coord[(rank % len) as usize];
            rank /= len;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TupleOrbit {
    /// Lexicographically least tuple of the orbit, as element indices.
    pub representative: Vec<usize>,
    pub size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TupleOrbits {
    pub orbits: Vec<TupleOrbit>,
    /// Size of the enumerated space (generating tuples only, when requested).
    pub tuple_space: u128,
}

impl TupleOrbits {
    pub fn count(&self) -> usize {
        self.orbits.len()
    }
}

/// Default cap on the number of orbit representatives produced.
pub const DEFAULT_ORBIT_CAP: u64 = 10_000_000;

/// Orbits of the diagonal conjugation action on `domain`.
///
/// Representatives are found coordinate by coordinate: orbit
/// representatives of the first coordinate under the ambient group, then of
/// the next coordinate under the stabilizer of the prefix, and so on. The
/// first unvisited candidate in index order is the least member of its
/// orbit, so every representative is the least tuple of its orbit.
pub fn tuple_orbits(
    action: &AutAction,
    domain: &TupleDomain,
    generating_only: bool,
    cap: u64,
) -> Result<TupleOrbits> {
    domain.check_invariant(action)?;
    let base = action.base();
    let ambient_order = action.ambient().order() as u64;
    let produced = AtomicU64::new(0);
    let exceeded = |n: u64| n > cap;

    if domain.arity() == 0 {
        let rep = TupleOrbit {
            representative: vec![],
            size: 1,
        };
        let keep = !generating_only || base.order() == 1;
        return Ok(TupleOrbits {
            orbits: if keep { vec![rep] } else { vec![] },
            tuple_space: u128::from(keep),
        });
    }

    let stabilizer: Vec<Permutation> = action.ambient().elements().to_vec();
    let first = orbit_reps_under(base, domain.coordinate(0), &stabilizer);
    let branches: Vec<Result<Vec<TupleOrbit>>> = first
        .into_par_iter()
        .map(|(rep, stab)| {
            let mut out = Vec::new();
            let mut prefix = vec![rep];
            descend(
                base,
                domain,
                &stab,
                &mut prefix,
                ambient_order,
                &mut out,
                &produced,
                cap,
            )?;
            Ok(out)
        })
        .collect();
    let mut orbits = Vec::new();
    for b in branches {
        orbits.extend(b?);
    }
    if exceeded(orbits.len() as u64) {
        return Err(Error::TupleCapExceeded {
            size: orbits.len() as u128,
            cap: cap as u128,
        });
    }
    if generating_only {
        orbits.retain(|o| base.generates_indices(&o.representative));
    }
    let tuple_space = if generating_only {
        orbits.iter().map(|o| o.size as u128).sum()
    } else {
        domain.size()
    };
    Ok(TupleOrbits {
        orbits,
        tuple_space,
    })
}

#[allow(clippy::too_many_arguments)]
fn descend(
    base: &FiniteGroup,
    domain: &TupleDomain,
    stabilizer: &[Permutation],
    prefix: &mut Vec<usize>,
    ambient_order: u64,
    out: &mut Vec<TupleOrbit>,
    produced: &AtomicU64,
    cap: u64,
) -> Result<()> {
    if prefix.len() == domain.arity() {
        let n = produced.fetch_add(1, Ordering::Relaxed) + 1;
        if n > cap {
            return Err(Error::TupleCapExceeded {
                size: n as u128,
                cap: cap as u128,
            });
        }
        out.push(TupleOrbit {
            representative: prefix.clone(),
            size: ambient_order / stabilizer.len() as u64,
        });
        return Ok(());
    }
    let level = prefix.len();
    for (rep, stab) in orbit_reps_under(base, domain.coordinate(level), stabilizer) {
        prefix.push(rep);
        descend(base, domain, &stab, prefix, ambient_order, out, produced, cap)?;
        prefix.pop();
    }
    Ok(())
}

/// Orbit representatives of `candidates` under conjugation by the elements
/// of `stabilizer`, each paired with its own stabilizer.
fn orbit_reps_under(
    base: &FiniteGroup,
    candidates: &[usize],
    stabilizer: &[Permutation],
) -> Vec<(usize, Vec<Permutation>)> {
    let mut visited = vec![false; base.order()];
    let mut reps = Vec::new();
    for &c in candidates {
        if visited[c] {
            continue;
        }
        let element = base.element(c);
        let mut fixing = Vec::new();
        for s in stabilizer {
            let img = base
                .index_of(&element.conjugate_by(s))
                .expect("ambient normalizes base");
            visited[img] = true;
            if img == c {
                fixing.push(s.clone());
            }
        }
        reps.push((c, fixing));
    }
    reps
}

/// `d(n)`: orbits of the action on generating `n`-tuples.
pub fn count_dn(action: &AutAction, arity: usize, cap: u64) -> Result<usize> {
    let domain = TupleDomain::full(action.base(), arity);
    Ok(tuple_orbits(action, &domain, true, cap)?.count())
}
