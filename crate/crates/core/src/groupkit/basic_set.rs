use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::search::Explorer;
use super::{GroupElement, Presentation, Word};
use crate::jet::Order;

pub const DEFAULT_WORD_BOUND: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessSource {
    /// The generators are equal; the empty word works.
    Trivial,
    Supplied,
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum NonConjugacy {
    DifferentOrders { left: Order, right: Order },
    DifferentInvariants,
    /// Every pair of generators commutes, so the group is abelian and
    /// distinct elements are never conjugate.
    AbelianDistinct,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum PairStatus {
    /// w ∘ f_j ∘ w^-1 = f_i.
    Witness { word: Word, source: WitnessSource },
    NotFound { bound: usize },
    NotConjugate(NonConjugacy),
}

impl PairStatus {
    pub fn witness(&self) -> Option<&Word> {
        match self {
            PairStatus::Witness { word, .. } => Some(word),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasicSetVerdict {
    IrreducibleVerified,
    ConditionAFailed,
    ConditionBUnresolved,
}

impl BasicSetVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            BasicSetVerdict::IrreducibleVerified => "irreducible-verified",
            BasicSetVerdict::ConditionAFailed => "condition-a-failed",
            BasicSetVerdict::ConditionBUnresolved => "condition-b-unresolved",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BasicSetReport<E> {
    pub product_is_identity: bool,
    /// f1 ∘ f2 ∘ ... ∘ f_last.
    pub residual: E,
    /// One entry per pair i < j, in lexicographic order.
    pub pairs: Vec<((usize, usize), PairStatus)>,
    /// Supplied witnesses that failed verification.
    pub rejected_witnesses: Vec<(usize, usize)>,
    pub word_bound: usize,
    pub verdict: BasicSetVerdict,
}

impl<E> BasicSetReport<E> {
    pub fn status(&self, i: usize, j: usize) -> Option<&PairStatus> {
        let key = (i.min(j), i.max(j));
        self.pairs.iter().find(|(k, _)| *k == key).map(|(_, s)| s)
    }

    /// Some pair was shown not to be conjugate.
    pub fn condition_b_disproved(&self) -> bool {
        self.pairs
            .iter()
            .any(|(_, s)| matches!(s, PairStatus::NotConjugate(_)))
    }
}

/// Composes the generators in listed order.
pub fn check_product_identity<E: GroupElement>(p: &Presentation<E>) -> (bool, E) {
    let residual = p
        .generators()
        .iter()
        .fold(p.identity(), |acc, g| acc.compose(g));
    (residual.is_identity(), residual)
}

pub fn verify_witness<E: GroupElement>(p: &Presentation<E>, i: usize, j: usize, w: &Word) -> bool {
    let e = p.evaluate(w);
    let gens = p.generators();
    gens[j].conjugate_by(&e, &e.inverse()) == gens[i]
}

struct Invariants {
    orders: Vec<Order>,
    spectra: Vec<Vec<crate::cyclo::CycloNum>>,
    abelian: bool,
}

fn invariants<E: GroupElement>(reps: &[E]) -> Invariants {
    let orders = reps.par_iter().map(E::element_order).collect();
    let spectra = reps.iter().map(E::conjugacy_invariant).collect();
    let abelian = reps.iter().enumerate().all(|(a, x)| {
        reps[a + 1..]
            .iter()
            .all(|y| x.compose(y) == y.compose(x))
    });
    Invariants {
        orders,
        spectra,
        abelian,
    }
}

fn prescreen(inv: &Invariants, a: usize, b: usize) -> Option<NonConjugacy> {
    let (oa, ob) = (&inv.orders[a], &inv.orders[b]);
    if oa.provably_differs(ob) {
        return Some(NonConjugacy::DifferentOrders {
            left: oa.clone(),
            right: ob.clone(),
        });
    }
    if inv.spectra[a] != inv.spectra[b] {
        return Some(NonConjugacy::DifferentInvariants);
    }
    if inv.abelian {
        return Some(NonConjugacy::AbelianDistinct);
    }
    None
}

/// Shortest-then-lexicographic witnesses w with w ∘ f_j ∘ w^-1 = f_i for the
/// requested (i, j) pairs, over words of length <= `bound`.
fn search_witnesses<E: GroupElement>(
    p: &Presentation<E>,
    wanted: &[(usize, usize)],
    bound: usize,
    parallel: bool,
) -> BTreeMap<(usize, usize), Word> {
    let gens = p.generators();
    let mut found = BTreeMap::new();
    if wanted.is_empty() {
        return found;
    }
    let lookup: HashMap<&E, Vec<usize>> = wanted.iter().fold(HashMap::new(), |mut m, &(i, _)| {
        m.entry(&gens[i]).or_insert_with(Vec::new).push(i);
        m
    });
    let mut sources: Vec<usize> = wanted.iter().map(|&(_, j)| j).collect();
    sources.sort_unstable();
    sources.dedup();
    let mut explorer = Explorer::new(p, parallel);
    for depth in 0..=bound {
        if depth > 0 && explorer.grow(usize::MAX) == 0 {
            break;
        }
        let level: Vec<usize> = explorer.level().collect();
        let check = |&n: &usize| -> Vec<(usize, usize)> {
            let node = &explorer.nodes[n];
            let mut hits = Vec::new();
            for &j in &sources {
                let c = gens[j].conjugate_by(&node.elem, &node.inv);
                if let Some(targets) = lookup.get(&c) {
                    hits.extend(targets.iter().map(|&i| (i, j)));
                }
            }
            hits
        };
        let hits: Vec<Vec<(usize, usize)>> = if parallel {
            level.par_iter().map(check).collect()
        } else {
            level.iter().map(check).collect()
        };
        for (n, hs) in level.iter().zip(hits) {
            for key in hs {
                if wanted.contains(&key) && !found.contains_key(&key) {
                    found.insert(key, explorer.word(*n));
                }
            }
        }
        if wanted.iter().all(|k| found.contains_key(k)) {
            break;
        }
    }
    found
}

/// Witness for a single pair: verifies a supplied word first, then searches.
pub fn find_conjugacy_witness<E: GroupElement>(
    p: &Presentation<E>,
    i: usize,
    j: usize,
    bound: usize,
) -> Option<Word> {
    if p.generators()[i] == p.generators()[j] {
        return Some(Word::empty());
    }
    if let Some(w) = p.witnesses().get(&(i, j)) {
        if verify_witness(p, i, j, w) {
            return Some(w.clone());
        }
    }
    search_witnesses(p, &[(i, j)], bound, false).remove(&(i, j))
}

/// Conditions (a) and (b): product of the generators is Id, and every pair
/// is conjugate in the group.
pub fn check_basic_set<E: GroupElement>(
    p: &Presentation<E>,
    bound: usize,
    parallel: bool,
) -> BasicSetReport<E> {
    let (product_is_identity, residual) = check_product_identity(p);
    let gens = p.generators();
    let n = gens.len();

    // one class per distinct generator, represented by its first index
    let mut class_of = vec![0; n];
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..n {
        match reps.iter().position(|&r| gens[r] == gens[i]) {
            Some(c) => class_of[i] = c,
            None => {
                class_of[i] = reps.len();
                reps.push(i);
            }
        }
    }
    let rep_elems: Vec<E> = reps.iter().map(|&r| gens[r].clone()).collect();
    let inv = invariants(&rep_elems);

    // supplied witnesses, keyed by directed class representatives
    let mut supplied: BTreeMap<(usize, usize), Word> = BTreeMap::new();
    let mut rejected = Vec::new();
    for (&(i, j), w) in p.witnesses() {
        if verify_witness(p, i, j, w) {
            let (ri, rj) = (reps[class_of[i]], reps[class_of[j]]);
            supplied.entry((ri, rj)).or_insert_with(|| w.clone());
            supplied.entry((rj, ri)).or_insert_with(|| w.inverse());
        } else {
            rejected.push((i, j));
        }
    }

    // class pairs still open: directed (class of i, class of j) with i < j
    let mut wanted: Vec<(usize, usize)> = Vec::new();
    let mut screened: BTreeMap<(usize, usize), NonConjugacy> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            if class_of[i] == class_of[j] {
                continue;
            }
            let key = (reps[class_of[i]], reps[class_of[j]]);
            if supplied.contains_key(&key) || wanted.contains(&key) || screened.contains_key(&key) {
                continue;
            }
            match prescreen(&inv, class_of[i], class_of[j]) {
                Some(e) => {
                    screened.insert(key, e);
                }
                None => wanted.push(key),
            }
        }
    }
    let found = search_witnesses(p, &wanted, bound, parallel);

    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let key = (reps[class_of[i]], reps[class_of[j]]);
            let status = if class_of[i] == class_of[j] {
                PairStatus::Witness {
                    word: Word::empty(),
                    source: WitnessSource::Trivial,
                }
            } else if let Some(w) = supplied.get(&key) {
                PairStatus::Witness {
                    word: w.clone(),
                    source: WitnessSource::Supplied,
                }
            } else if let Some(e) = screened.get(&key) {
                PairStatus::NotConjugate(e.clone())
            } else if let Some(w) = found.get(&key) {
                PairStatus::Witness {
                    word: w.clone(),
                    source: WitnessSource::Search,
                }
            } else {
                PairStatus::NotFound { bound }
            };
            pairs.push(((i, j), status));
        }
    }
    let all_witnessed = pairs.iter().all(|(_, s)| s.witness().is_some());
    let verdict = if !product_is_identity {
        BasicSetVerdict::ConditionAFailed
    } else if all_witnessed {
        BasicSetVerdict::IrreducibleVerified
    } else {
        BasicSetVerdict::ConditionBUnresolved
    };
    BasicSetReport {
        product_is_identity,
        residual,
        pairs,
        rejected_witnesses: rejected,
        word_bound: bound,
        verdict,
    }
}
