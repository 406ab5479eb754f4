//! Breadth-first exploration of a finitely generated group.
//!
//! Letters are tried in the order g1, g1^-1, g2, g2^-1, ...; letters whose
//! element repeats an earlier letter are dropped. Elements are deduplicated
//! and each keeps the first word that reached it, which is the shortest and
//! then lexicographically least word for that element.

use std::collections::HashMap;

use rayon::prelude::*;

use super::{GroupElement, Letter, Presentation, Word};

pub(crate) struct Node<E> {
    pub elem: E,
    pub inv: E,
    parent: usize,
    letter: usize,
}

pub(crate) struct Explorer<E> {
    letters: Vec<(Letter, E, E)>,
    pub nodes: Vec<Node<E>>,
    index: HashMap<E, usize>,
    level_start: usize,
    parallel: bool,
}

const ROOT: usize = usize::MAX;

impl<E: GroupElement> Explorer<E> {
    pub fn new(p: &Presentation<E>, parallel: bool) -> Self {
        let mut letters: Vec<(Letter, E, E)> = Vec::new();
        for (i, g) in p.generators().iter().enumerate() {
            let inv = g.inverse();
            for (inverse, e, e_inv) in [(false, g.clone(), inv.clone()), (true, inv, g.clone())] {
                if !letters.iter().any(|(_, x, _)| x == &e) {
                    letters.push((Letter { generator: i, inverse }, e, e_inv));
                }
            }
        }
        let id = p.identity();
        let mut index = HashMap::new();
        index.insert(id.clone(), 0);
        Explorer {
            letters,
            nodes: vec![Node {
                elem: id.clone(),
                inv: id,
                parent: ROOT,
                letter: 0,
            }],
            index,
            level_start: 0,
            parallel,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Node indices of the most recent level.
    pub fn level(&self) -> std::ops::Range<usize> {
        self.level_start..self.nodes.len()
    }

    pub fn word(&self, mut idx: usize) -> Word {
        let mut letters = Vec::new();
        while self.nodes[idx].parent != ROOT {
            letters.push(self.letters[self.nodes[idx].letter].0);
            idx = self.nodes[idx].parent;
        }
        letters.reverse();
        Word(letters)
    }

    /// Expands the current level by one letter. Stops adding once `cap`
    /// nodes exist. Returns the number of new nodes.
    pub fn grow(&mut self, cap: usize) -> usize {
        let range = self.level();
        let letters = &self.letters;
        let nodes = &self.nodes;
        let expand = |p: usize| -> Vec<(usize, usize, E)> {
            letters
                .iter()
                .enumerate()
                .map(|(li, (_, e, _))| (p, li, nodes[p].elem.compose(e)))
                .collect()
        };
        let candidates: Vec<(usize, usize, E)> = if self.parallel {
            range.clone().into_par_iter().flat_map_iter(expand).collect()
        } else {
            range.clone().flat_map(expand).collect()
        };
        let mut fresh: Vec<(usize, usize, E)> = Vec::new();
        for (p, li, e) in candidates {
            if self.index.len() >= cap {
                break;
            }
            if self.index.contains_key(&e) {
                continue;
            }
            self.index.insert(e.clone(), self.nodes.len() + fresh.len());
            fresh.push((p, li, e));
        }
        let invert = |(p, li, e): (usize, usize, E)| {
            // (x ∘ l)^-1 = l^-1 ∘ x^-1
            let inv = self.letters[li].2.compose(&self.nodes[p].inv);
            Node {
                elem: e,
                inv,
                parent: p,
                letter: li,
            }
        };
        let new_nodes: Vec<Node<E>> = if self.parallel {
            fresh.into_par_iter().map(invert).collect()
        } else {
            fresh.into_iter().map(invert).collect()
        };
        let added = new_nodes.len();
        self.level_start = self.nodes.len();
        self.nodes.extend(new_nodes);
        added
    }
}
