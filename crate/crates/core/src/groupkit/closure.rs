use std::collections::HashSet;

use rayon::prelude::*;

use super::search::Explorer;
use super::{GroupElement, Presentation, Word};
use crate::error::{Error, Result};

pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure<E> {
    /// Every element with its shortest-then-least word, in discovery order.
    Finite(Vec<(Word, E)>),
    CapExceeded { cap: usize },
}

impl<E> Closure<E> {
    pub fn elements(&self) -> Option<Vec<&E>> {
        match self {
            Closure::Finite(v) => Some(v.iter().map(|(_, e)| e).collect()),
            Closure::CapExceeded { .. } => None,
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            Closure::Finite(v) => Some(v.len()),
            Closure::CapExceeded { .. } => None,
        }
    }
}

/// Breadth-first closure under the generators and their inverses.
pub fn closure_enumerate<E: GroupElement>(p: &Presentation<E>, cap: usize, parallel: bool) -> Closure<E> {
    let mut explorer = Explorer::new(p, parallel);
    loop {
        // one node past the cap shows the group is larger than `cap`
        if explorer.grow(cap + 1) == 0 {
            break;
        }
        if explorer.len() > cap {
            return Closure::CapExceeded { cap };
        }
    }
    let words: Vec<Word> = (0..explorer.len()).map(|i| explorer.word(i)).collect();
    Closure::Finite(
        words
            .into_iter()
            .zip(explorer.nodes.into_iter().map(|n| n.elem))
            .collect(),
    )
}

/// A generator of the finite group `elements`, scanning in canonical
/// (sorted) order.
pub fn is_cyclic<E: GroupElement>(elements: &[E]) -> Result<Option<E>> {
    if elements.is_empty() {
        return Err(Error::NotClosed);
    }
    let set: HashSet<&E> = elements.iter().collect();
    let closed = elements
        .par_iter()
        .all(|a| elements.iter().all(|b| set.contains(&a.compose(b))));
    if !closed {
        return Err(Error::NotClosed);
    }
    let mut sorted: Vec<&E> = set.iter().copied().collect();
    sorted.sort();
    let n = sorted.len();
    for g in sorted {
        let mut x = g.clone();
        let mut k = 1;
        while !x.is_identity() && k <= n {
            x = x.compose(g);
            k += 1;
        }
        if k == n {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}
