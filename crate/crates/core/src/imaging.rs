//! Word images `w(G) = { w(ḡ) : ḡ ∈ Gⁿ }`.
//!
//! Two strategies compute the same set. [`image_bruteforce`] evaluates the
//! word on every tuple of the domain. [`image_orbit`] evaluates it once per
//! orbit of the diagonal automorphism action and then closes each value
//! under the action, which is sound because word maps commute with
//! automorphisms.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::action::{tuple_orbits, ActionScope, AutAction, TupleDomain};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;
use crate::word::{Letter, Word};

/// Default ceiling on word evaluations per image.
pub const DEFAULT_TUPLE_CAP: u64 = 10_000_000;

const RANK_CHUNK: u128 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Brute,
    Orbit,
}

impl Strategy {
    pub fn label(self) -> &'static str {
        match self {
            Strategy::Brute => "brute",
            Strategy::Orbit => "orbit",
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "brute" | "bruteforce" | "brute-force" => Ok(Strategy::Brute),
            "orbit" => Ok(Strategy::Orbit),
            _ => Err(Error::WordSyntax {
                offset: 0,
                message: format!("unknown strategy {s:?}"),
            }),
        }
    }
}

/// The raw result of an image computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordImage {
    /// Sorted element indices.
    pub members: Vec<usize>,
    pub tuples_evaluated: u64,
    pub tuple_space: u128,
    pub strategy: Strategy,
    pub filtered: bool,
}

impl WordImage {
    pub fn contains(&self, element: usize) -> bool {
        self.members.binary_search(&element).is_ok()
    }
}

fn resolve_domain(word: &Word, group: &FiniteGroup, domain: Option<&TupleDomain>) -> Result<TupleDomain> {
    match domain {
        Some(d) if d.arity() != word.arity() => Err(Error::ArityMismatch {
            expected: word.arity(),
            got: d.arity(),
        }),
        Some(d) => Ok(d.clone()),
        None => Ok(TupleDomain::full(group, word.arity())),
    }
}

fn members_from_flags(flags: &[bool]) -> Vec<usize> {
    flags
        .iter()
        .enumerate()
        .filter_map(|(i, &f)| f.then_some(i))
        .collect()
}

/// Exact image over `domain` (all of `Gⁿ` when `None`) by evaluating every tuple.
pub fn image_bruteforce(
    word: &Word,
    group: &FiniteGroup,
    domain: Option<&TupleDomain>,
    cap: u64,
) -> Result<WordImage> {
    let domain = resolve_domain(word, group, domain)?;
    let size = domain.size();
    if size > u128::from(cap) {
        return Err(Error::TupleCapExceeded {
            size,
            cap: u128::from(cap),
        });
    }
    let slp = word.compile();
    let chunks = size.div_ceil(RANK_CHUNK);
    let flags = (0..chunks as u64)
        .into_par_iter()
        .fold(
            || vec![false; group.order()],
            |mut flags, chunk| {
                let start = u128::from(chunk) * RANK_CHUNK;
                let end = (start + RANK_CHUNK).min(size);
                let mut idx = vec![0; domain.arity()];
                let mut tuple: Vec<Permutation> = Vec::with_capacity(domain.arity());
                for rank in start..end {
                    domain.tuple_at(rank, &mut idx);
                    tuple.clear();
                    tuple.extend(idx.iter().map(|&i| group.element(i).clone()));
                    let value = slp.run(&tuple, group.degree());
                    flags[group.index_of(&value).expect("word values stay in the group")] = true;
                }
                flags
            },
        )
        .reduce(
            || vec![false; group.order()],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x |= y);
                a
            },
        );
    Ok(WordImage {
        members: members_from_flags(&flags),
        tuples_evaluated: size as u64,
        tuple_space: size,
        strategy: Strategy::Brute,
        filtered: !domain.is_full(group),
    })
}

/// Same set as [`image_bruteforce`], evaluating one tuple per orbit of the
/// action. The domain must be invariant under the action.
pub fn image_orbit(
    word: &Word,
    action: &AutAction,
    domain: Option<&TupleDomain>,
    cap: u64,
) -> Result<WordImage> {
    let group = action.base();
    let domain = resolve_domain(word, group, domain)?;
    let orbits = tuple_orbits(action, &domain, false, cap)?;
    let slp = word.compile();
    let values: Vec<usize> = orbits
        .orbits
        .par_iter()
        .map(|o| {
            let tuple: Vec<Permutation> = o
                .representative
                .iter()
                .map(|&i| group.element(i).clone())
                .collect();
            let value = slp.run(&tuple, group.degree());
            group.index_of(&value).expect("word values stay in the group")
        })
        .collect();
    let mut flags = vec![false; group.order()];
    let mut done = vec![false; action.element_orbits().len()];
    for v in values {
        let oi = action.element_orbit_of(v);
        if !done[oi] {
            done[oi] = true;
            for &e in &action.element_orbits()[oi] {
                flags[e] = true;
            }
        }
    }
    Ok(WordImage {
        members: members_from_flags(&flags),
        tuples_evaluated: orbits.count() as u64,
        tuple_space: domain.size(),
        strategy: Strategy::Orbit,
        filtered: !domain.is_full(group),
    })
}

pub fn compute_image(
    word: &Word,
    action: &AutAction,
    domain: Option<&TupleDomain>,
    strategy: Strategy,
    cap: u64,
) -> Result<WordImage> {
    match strategy {
        Strategy::Brute => image_bruteforce(word, action.base(), domain, cap),
        Strategy::Orbit => image_orbit(word, action, domain, cap),
    }
}

/// Evidence that a subset is not closed: `element ↦ image` under `by`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub element: usize,
    pub image: usize,
    /// Description of the map, e.g. `conjugation by (1,2)` or `endomorphism 5`.
    pub by: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureVerdict {
    pub aut_closed: bool,
    /// `None` when endomorphism closure could not be decided.
    pub endo_closed: Option<bool>,
    pub action_scope: String,
    pub violation: Option<Violation>,
}

/// Closure of a set of element indices under the action, and under
/// endomorphisms when that can be decided.
///
/// Endomorphism closure is decided from a supplied endomorphism table, or,
/// for a simple group whose full automorphism group is realized, from the
/// fact that each endomorphism is either trivial or an automorphism.
pub fn check_closure(set: &[usize], action: &AutAction) -> Result<ClosureVerdict> {
    let base = action.base();
    let mut member = vec![false; base.order()];
    for &e in set {
        if e >= base.order() {
            return Err(Error::ForeignElement(format!("index {e}"), base.name().to_string()));
        }
        member[e] = true;
    }
    let mut violation = None;
    'outer: for (gi, map) in action.generator_maps().iter().enumerate() {
        for &e in set {
            if !member[map[e]] {
                violation = Some(Violation {
                    element: e,
                    image: map[e],
                    by: format!("conjugation by {}", action.ambient().generators()[gi]),
                });
                break 'outer;
            }
        }
    }
    let aut_closed = violation.is_none();
    let endo_closed = if let Some(endos) = action.endomorphisms() {
        let mut closed = true;
        'endo: for (ti, map) in endos.iter().enumerate() {
            for &e in set {
                if !member[map[e]] {
                    closed = false;
                    if violation.is_none() {
                        violation = Some(Violation {
                            element: e,
                            image: map[e],
                            by: format!("endomorphism {ti}"),
                        });
                    }
                    break 'endo;
                }
            }
        }
        Some(closed)
    } else if action.scope() == ActionScope::FullAut && base.is_simple() {
        Some(aut_closed && (set.is_empty() || member[base.identity_index()]))
    } else {
        None
    };
    Ok(ClosureVerdict {
        aut_closed,
        endo_closed,
        action_scope: action.scope().label().to_string(),
        violation,
    })
}

/// [`check_closure`] for explicit permutations.
pub fn check_closure_elements(set: &[Permutation], action: &AutAction) -> Result<ClosureVerdict> {
    let mut idx = set
        .iter()
        .map(|g| action.base().require(g))
        .collect::<Result<Vec<_>>>()?;
    idx.sort_unstable();
    idx.dedup();
    check_closure(&idx, action)
}

/// Members `g` of the sorted set with `g⁻¹` outside it.
pub fn chirality_witnesses(set: &[usize], group: &FiniteGroup) -> Vec<usize> {
    set.iter()
        .copied()
        .filter(|&g| set.binary_search(&group.inv(g)).is_err())
        .collect()
}

/// Image of a word with everything derived from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageReport {
    pub word: String,
    pub group: String,
    /// Sorted element indices.
    pub image: Vec<usize>,
    pub order_spectrum: BTreeMap<u64, usize>,
    /// Representatives of the conjugacy classes contained in the image.
    pub class_decomposition: Vec<usize>,
    pub closure: ClosureVerdict,
    pub chirality_witnesses: Vec<usize>,
    pub tuples_evaluated: u64,
    pub tuple_space: u128,
    pub strategy: Strategy,
    pub domain_filtered: bool,
}

impl ImageReport {
    pub fn new(word: &Word, action: &AutAction, image: &WordImage) -> Result<Self> {
        let group = action.base();
        let orders = group.element_orders();
        let mut order_spectrum = BTreeMap::new();
        for &e in &image.members {
            *order_spectrum.entry(orders[e]).or_insert(0) += 1;
        }
        let classes = group.conjugacy_classes();
        let class_decomposition = classes
            .classes
            .iter()
            .filter(|c| c.iter().all(|&e| image.contains(e)))
            .map(|c| c[0])
            .collect();
        Ok(ImageReport {
            word: word.to_string(),
            group: group.name().to_string(),
            order_spectrum,
            class_decomposition,
            closure: check_closure(&image.members, action)?,
            chirality_witnesses: chirality_witnesses(&image.members, group),
            tuples_evaluated: image.tuples_evaluated,
            tuple_space: image.tuple_space,
            strategy: image.strategy,
            domain_filtered: image.filtered,
            image: image.members.clone(),
        })
    }
}

/// Where the catalog search takes its words from.
#[derive(Debug, Clone)]
pub enum WordSource {
    /// Every freely reduced word in `x, y` of length at most `max_length`.
    Exhaustive { max_length: usize },
    /// `samples` random reduced words in `x, y` of length at most `max_length`.
    Random {
        samples: usize,
        max_length: usize,
        seed: u64,
    },
    Explicit(Vec<Word>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    /// First word found with this image.
    pub word: String,
    pub image: Vec<usize>,
    pub contains_identity: bool,
    pub closure: ClosureVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageCatalog {
    pub group: String,
    pub entries: Vec<CatalogEntry>,
    pub words_tried: usize,
    /// False when the word budget ran out before the source was exhausted.
    pub complete: bool,
}

/// All freely reduced words of length at most `max_length` in `arity`
/// variables, shortest first, then in letter order `x, x⁻¹, y, y⁻¹, …`.
pub fn reduced_words(arity: usize, max_length: usize) -> impl Iterator<Item = Vec<Letter>> {
    let alphabet: Vec<Letter> = (0..arity)
        .flat_map(|v| [Letter::new(v, false), Letter::new(v, true)])
        .collect();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    let mut length = 0;
    std::iter::from_fn(move || {
        if length > max_length {
            return None;
        }
        let current = std::mem::take(&mut layer);
        if length < max_length {
            for w in &current {
                for &l in &alphabet {
                    if w.last() != Some(&l.inverted()) {
                        let mut next = w.clone();
                        next.push(l);
                        layer.push(next);
                    }
                }
            }
        }
        length += 1;
        Some(current)
    })
    .flatten()
}

fn random_reduced_word(rng: &mut ChaCha8Rng, arity: usize, max_length: usize) -> Vec<Letter> {
    let len = rng.gen_range(0..=max_length);
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    while out.len() < len {
        let l = Letter::new(rng.gen_range(0..arity), rng.gen_bool(0.5));
        if out.last() != Some(&l.inverted()) {
            out.push(l);
        }
    }
    out
}

/// Distinct images of words from `source`, at most `max_words` words tried.
pub fn image_catalog(
    action: &AutAction,
    source: WordSource,
    max_words: usize,
    cap: u64,
) -> Result<ImageCatalog> {
    let words: Box<dyn Iterator<Item = Word>> = match source {
        WordSource::Exhaustive { max_length } => Box::new(
            reduced_words(2, max_length).map(|l| Word::from_letters(2, &l)),
        ),
        WordSource::Random {
            samples,
            max_length,
            seed,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Box::new(
                (0..samples)
                    .map(move |_| Word::from_letters(2, &random_reduced_word(&mut rng, 2, max_length))),
            )
        }
        WordSource::Explicit(list) => Box::new(list.into_iter()),
    };
    let group = action.base();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut entries = Vec::new();
    let mut words_tried = 0;
    for word in words {
        if words_tried == max_words {
            return Ok(ImageCatalog {
                group: group.name().to_string(),
                entries,
                words_tried,
                complete: false,
            });
        }
        words_tried += 1;
        let image = image_orbit(&word, action, None, cap)?;
        if seen.insert(image.members.clone()) {
            entries.push(CatalogEntry {
                word: word.to_string(),
                contains_identity: image.contains(group.identity_index()),
                closure: check_closure(&image.members, action)?,
                image: image.members,
            });
        }
    }
    Ok(ImageCatalog {
        group: group.name().to_string(),
        entries,
        words_tried,
        complete: true,
    })
}
