//! Finite permutation groups with a fully materialized element list.
//!
//! Elements are kept sorted by their image arrays, so an element's index is
//! also its rank in the lexicographic order. Every "least member" choice in
//! the crate (class representatives, orbit representatives) is a minimum
//! over these indices.

use std::collections::{HashSet, VecDeque};

use rustc_hash::FxHashMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default ceiling on the number of elements a closure may produce.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// Closure of `generators` under composition (and hence inversion), sorted.
pub fn generate(generators: &[Permutation]) -> Result<Vec<Permutation>> {
    generate_capped(generators, DEFAULT_ELEMENT_CAP)
}

pub fn generate_capped(generators: &[Permutation], cap: usize) -> Result<Vec<Permutation>> {
    let first = generators.first().ok_or(Error::NoGenerators)?;
    let degree = first.degree();
    if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
        return Err(Error::DegreeMismatch {
            left: degree,
            right: bad.degree(),
        });
    }
    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(e) = queue.pop_front() {
        for g in generators {
            let next = e.compose(g);
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return Err(Error::ElementCapExceeded { cap });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort();
    Ok(elements)
}

/// Partition of `0..n` into orbits of the maps in `maps` (each a function on
/// `0..n`). Orbits come out ordered by least member, members sorted.
pub(crate) fn orbit_partition(n: usize, maps: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut cursor = 0;
        while cursor < orbit.len() {
            let x = orbit[cursor];
            cursor += 1;
            for map in maps {
                let y = map[x];
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

/// The conjugacy classes of a group, as sets of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClasses {
    /// Member indices per class, each sorted; classes ordered by representative.
    pub classes: Vec<Vec<usize>>,
    /// Least member of each class.
    pub representatives: Vec<usize>,
    /// Element order shared by the members of each class.
    pub orders: Vec<u64>,
    /// Class index of every element.
    pub class_of: Vec<usize>,
}

impl ConjugacyClasses {
    pub(crate) fn from_partition(partition: Vec<Vec<usize>>, orders: &[u64]) -> Self {
        let mut class_of = vec![0; orders.len()];
        for (ci, class) in partition.iter().enumerate() {
            for &e in class {
                class_of[e] = ci;
            }
        }
        ConjugacyClasses {
            representatives: partition.iter().map(|c| c[0]).collect(),
            orders: partition.iter().map(|c| orders[c[0]]).collect(),
            classes: partition,
            class_of,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// A finite permutation group together with its sorted element list.
pub struct FiniteGroup {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: FxHashMap<Permutation, usize>,
    identity: usize,
    orders: OnceLock<Vec<u64>>,
    classes: OnceLock<ConjugacyClasses>,
    simple: OnceLock<bool>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .finish()
    }
}

impl FiniteGroup {
    pub fn new(name: impl Into<String>, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_cap(name, generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn with_cap(
        name: impl Into<String>,
        generators: Vec<Permutation>,
        cap: usize,
    ) -> Result<Self> {
        let elements = generate_capped(&generators, cap)?;
        let degree = generators[0].degree();
        let index: FxHashMap<Permutation, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        // The identity is the lexicographically least permutation.
        debug_assert!(elements[0].is_identity());
        Ok(FiniteGroup {
            name: name.into(),
            degree,
            generators,
            elements,
            index,
            identity: 0,
            orders: OnceLock::new(),
            classes: OnceLock::new(),
            simple: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &Permutation {
        &self.elements[index]
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index.contains_key(g)
    }

    /// Index of `g`, or a [`Error::ForeignElement`] naming this group.
    pub fn require(&self, g: &Permutation) -> Result<usize> {
        self.index_of(g)
            .ok_or_else(|| Error::ForeignElement(g.to_string(), self.name.clone()))
    }

    /// Element orders, indexed like [`Self::elements`].
    pub fn element_orders(&self) -> &[u64] {
        self.orders
            .get_or_init(|| self.elements.iter().map(Permutation::order).collect())
    }

    pub fn element_order(&self, index: usize) -> u64 {
        self.element_orders()[index]
    }

    /// Index of `elements[a] * elements[b]`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    /// Index map `e ↦ c⁻¹ e c` for a permutation `c` normalizing this group.
    pub(crate) fn conjugation_map(&self, c: &Permutation) -> Result<Vec<usize>> {
        self.elements
            .iter()
            .map(|e| {
                let img = e.conjugate_by(c);
                self.index_of(&img).ok_or_else(|| {
                    Error::ActionMismatch(format!(
                        "conjugation by {c} moves {e} outside {}",
                        self.name
                    ))
                })
            })
            .collect()
    }

    /// Conjugacy classes, computed on first use.
    pub fn conjugacy_classes(&self) -> &ConjugacyClasses {
        self.classes.get_or_init(|| {
            let maps: Vec<Vec<usize>> = self
                .generators
                .iter()
                .map(|g| self.conjugation_map(g).expect("a group normalizes itself"))
                .collect();
            let partition = orbit_partition(self.order(), &maps);
            ConjugacyClasses::from_partition(partition, self.element_orders())
        })
    }

    /// `(order, class sizes)`, a cheap isomorphism-invariant fingerprint.
    pub fn fingerprint(&self) -> (usize, Vec<usize>) {
        (self.order(), self.conjugacy_classes().sizes())
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|a| {
            self.generators
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }

    /// Size of the subgroup generated by the elements at `gens`, stopping
    /// early once the count passes `stop_above`.
    pub fn subgroup_size_capped(&self, gens: &[usize], stop_above: usize) -> usize {
        let gens: Vec<&Permutation> = gens
            .iter()
            .filter(|&&g| g != self.identity)
            .map(|&g| &self.elements[g])
            .collect();
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut frontier = vec![self.identity];
        let mut count = 1;
        while let Some(e) = frontier.pop() {
            for g in &gens {
                let next = self.index[&self.elements[e].compose(g)];
                if !seen[next] {
                    seen[next] = true;
                    count += 1;
                    if count > stop_above {
                        return count;
                    }
                    frontier.push(next);
                }
            }
        }
        count
    }

    /// Whether the elements at `tuple` generate the whole group.
    pub fn generates_indices(&self, tuple: &[usize]) -> bool {
        // A subgroup larger than half the group is the group.
        let half = self.order() / 2;
        let size = self.subgroup_size_capped(tuple, half);
        size > half || size == self.order()
    }

    /// Whether `tuple` generates the group. Entries must lie in the group.
    pub fn is_generating(&self, tuple: &[Permutation]) -> Result<bool> {
        let idx = tuple
            .iter()
            .map(|g| self.require(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.generates_indices(&idx))
    }

    /// First `h` in element order with `⟨g, h⟩` equal to the whole group.
    pub fn cogenerator_witness(&self, g: &Permutation) -> Result<Option<Permutation>> {
        let gi = self.require(g)?;
        if gi == self.identity {
            return Err(Error::TrivialElement);
        }
        Ok(self.cogenerator_index(gi).map(|h| self.elements[h].clone()))
    }

    pub(crate) fn cogenerator_index(&self, g: usize) -> Option<usize> {
        (0..self.order()).find(|&h| self.generates_indices(&[g, h]))
    }

    /// A cogenerator for every nontrivial element, in element order.
    ///
    /// `⟨g, h⟩ = G` implies `⟨gᶜ, hᶜ⟩ = G`, so only class representatives
    /// get the full scan. The other members of a class start from the
    /// conjugate of their representative's witness, found by walking the
    /// class with the generator conjugation maps. Every witness returned is
    /// checked, and a failed check falls back to the scan.
    pub fn cogenerator_survey(&self) -> Vec<(usize, Option<usize>)> {
        let maps: Vec<Vec<usize>> = self
            .generators
            .iter()
            .map(|c| self.conjugation_map(c).expect("generators normalize the group"))
            .collect();
        let classes = self.conjugacy_classes();
        let reps: Vec<usize> = classes
            .representatives
            .iter()
            .copied()
            .filter(|&r| r != self.identity)
            .collect();
        let rep_witness: Vec<Option<usize>> =
            reps.par_iter().map(|&r| self.cogenerator_index(r)).collect();
        let mut candidate: Vec<Option<usize>> = vec![None; self.order()];
        let mut hopeless = vec![false; self.order()];
        for (&r, w) in reps.iter().zip(rep_witness) {
            let Some(w) = w else {
                // no member of the class has one either
                for &x in &classes.classes[classes.class_of[r]] {
                    hopeless[x] = true;
                }
                continue;
            };
            candidate[r] = Some(w);
            let mut stack = vec![r];
            while let Some(x) = stack.pop() {
                let wx = candidate[x].expect("set before push");
                for m in &maps {
                    if candidate[m[x]].is_none() {
                        candidate[m[x]] = Some(m[wx]);
                        stack.push(m[x]);
                    }
                }
            }
        }
        (0..self.order())
            .into_par_iter()
            .filter(|&g| g != self.identity)
            .map(|g| {
                if hopeless[g] {
                    return (g, None);
                }
                let found = candidate[g]
                    .filter(|&h| self.generates_indices(&[g, h]))
                    .or_else(|| self.cogenerator_index(g));
                (g, found)
            })
            .collect()
    }

    /// True iff the group has no proper nontrivial normal subgroup.
    ///
    /// A normal subgroup is a union of classes, so the group is simple iff
    /// every nontrivial class generates the whole group.
    pub fn is_simple(&self) -> bool {
        *self.simple.get_or_init(|| {
            if self.order() == 1 {
                return false;
            }
            let classes = self.conjugacy_classes();
            classes
                .classes
                .iter()
                .filter(|c| c[0] != self.identity)
                .all(|class| self.class_generates_group(class))
        })
    }

    fn class_generates_group(&self, class: &[usize]) -> bool {
        let half = self.order() / 2;
        let mut gens: Vec<usize> = Vec::new();
        let mut members = vec![false; self.order()];
        members[self.identity] = true;
        for &c in class {
            if members[c] {
                continue;
            }
            gens.push(c);
            let size = self.subgroup_size_capped(&gens, half);
            if size > half {
                return true;
            }
            members.iter_mut().for_each(|m| *m = false);
            self.mark_subgroup(&gens, &mut members);
        }
        members.iter().all(|&m| m)
    }

    fn mark_subgroup(&self, gens: &[usize], members: &mut [bool]) {
        members[self.identity] = true;
        let mut frontier = vec![self.identity];
        while let Some(e) = frontier.pop() {
            for &g in gens {
                let next = self.index[&self.elements[e].compose(&self.elements[g])];
                if !members[next] {
                    members[next] = true;
                    frontier.push(next);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(degree: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(degree, s).unwrap()
    }

    fn s3() -> FiniteGroup {
        FiniteGroup::new("S3", vec![perm(3, "(1,2)"), perm(3, "(1,2,3)")]).unwrap()
    }

    fn a5() -> FiniteGroup {
        FiniteGroup::new("A5", vec![perm(5, "(1,2,3,4,5)"), perm(5, "(1,2,3)")]).unwrap()
    }

    #[test]
    fn closure_sizes() {
        assert_eq!(generate(&[Permutation::identity(4)]).unwrap().len(), 1);
        assert_eq!(s3().order(), 6);
        assert_eq!(a5().order(), 60);
    }

    #[test]
    fn closure_is_closed() {
        let g = a5();
        for a in g.elements() {
            assert!(g.contains(&a.inverse()));
            for b in g.elements() {
                assert!(g.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn closure_errors() {
        assert!(matches!(generate(&[]), Err(Error::NoGenerators)));
        let mixed = [Permutation::identity(3), Permutation::identity(4)];
        assert!(matches!(generate(&mixed), Err(Error::DegreeMismatch { .. })));
        let big = [perm(6, "(1,2,3,4,5,6)"), perm(6, "(1,2)")];
        assert!(matches!(
            generate_capped(&big, 100),
            Err(Error::ElementCapExceeded { cap: 100 })
        ));
    }

    #[test]
    fn s3_classes_by_brute_force() {
        let g = s3();
        let classes = g.conjugacy_classes();
        // brute-force orbits under conjugation by every element
        let mut oracle: Vec<Vec<usize>> = Vec::new();
        for e in g.elements() {
            let mut orbit: Vec<usize> = g
                .elements()
                .iter()
                .map(|c| g.index_of(&e.conjugate_by(c)).unwrap())
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            if !oracle.contains(&orbit) {
                oracle.push(orbit);
            }
        }
        oracle.sort();
        let mut got = classes.classes.clone();
        got.sort();
        assert_eq!(got, oracle);
        assert_eq!(classes.sizes(), vec![1, 3, 2]);
    }

    #[test]
    fn identity_is_first_and_representatives_are_least() {
        let g = a5();
        assert!(g.element(g.identity_index()).is_identity());
        let classes = g.conjugacy_classes();
        for (class, &rep) in classes.classes.iter().zip(&classes.representatives) {
            assert_eq!(rep, *class.iter().min().unwrap());
            let o = g.element_order(rep);
            assert!(class.iter().all(|&e| g.element_order(e) == o));
        }
    }

    #[test]
    fn generating_pairs_in_a5() {
        let g = a5();
        let id = Permutation::identity(5);
        assert!(!g.is_generating(&[id.clone(), id]).unwrap());
        assert!(g
            .is_generating(&[perm(5, "(1,2,3,4,5)"), perm(5, "(1,2,3)")])
            .unwrap());
        // both inside the point stabilizer A4
        assert!(!g
            .is_generating(&[perm(5, "(1,2,3)"), perm(5, "(1,2)(3,4)")])
            .unwrap());
        assert!(g.is_generating(&[perm(5, "(1,2)")]).is_err());
    }

    #[test]
    fn cogenerators_in_a5() {
        let g = a5();
        assert!(matches!(
            g.cogenerator_witness(&Permutation::identity(5)),
            Err(Error::TrivialElement)
        ));
        let five = perm(5, "(1,2,3,4,5)");
        let h = g.cogenerator_witness(&five).unwrap().unwrap();
        assert!(g.is_generating(&[five, h]).unwrap());
        let survey = g.cogenerator_survey();
        assert_eq!(survey.len(), 59);
        assert!(survey.iter().all(|(_, h)| h.is_some()));
    }

    #[test]
    fn simplicity() {
        assert!(a5().is_simple());
        assert!(!s3().is_simple());
        let z5 = FiniteGroup::new("C5", vec![perm(5, "(1,2,3,4,5)")]).unwrap();
        assert!(z5.is_simple());
        let trivial = FiniteGroup::new("1", vec![Permutation::identity(2)]).unwrap();
        assert!(!trivial.is_simple());
    }
}
