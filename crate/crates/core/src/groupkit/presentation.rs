use std::collections::BTreeMap;

use super::{GroupElement, Word};
use crate::error::{Error, Result};
use crate::jet::GermJet;

/// Named generators, listed in the order used for the product condition,
/// plus optional supplied witnesses keyed by (target, source) index.
#[derive(Clone, Debug)]
pub struct Presentation<E> {
    names: Vec<String>,
    generators: Vec<E>,
    witnesses: BTreeMap<(usize, usize), Word>,
}

pub type GroupPresentation = Presentation<GermJet>;

impl<E: GroupElement> Presentation<E> {
    pub fn new(names: Vec<String>, generators: Vec<E>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Precondition("at least one generator is required".into()));
        }
        if names.len() != generators.len() {
            return Err(Error::Shape("one name per generator".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateName(n.clone()));
            }
        }
        for g in &generators[1..] {
            generators[0].check_compatible(g)?;
        }
        Ok(Presentation {
            names,
            generators,
            witnesses: BTreeMap::new(),
        })
    }

    /// Generators named `f1`, `f2`, ...
    pub fn numbered(generators: Vec<E>) -> Result<Self> {
        let names = (1..=generators.len()).map(|i| format!("f{i}")).collect();
        Self::new(names, generators)
    }

    /// Records a claimed witness w with w ∘ source ∘ w^-1 = target.
    pub fn add_witness(&mut self, target: &str, source: &str, word: &str) -> Result<()> {
        let i = self.index_of(target)?;
        let j = self.index_of(source)?;
        let w = Word::parse(word, &self.names)?;
        self.witnesses.insert((i, j), w);
        Ok(())
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn witnesses(&self) -> &BTreeMap<(usize, usize), Word> {
        &self.witnesses
    }

    pub fn identity(&self) -> E {
        self.generators[0].identity_like()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Word::parse(text, &self.names)
    }

    pub fn evaluate(&self, word: &Word) -> E {
        word.evaluate(&self.generators)
    }

    pub fn render(&self, word: &Word) -> String {
        word.render(&self.names)
    }

    /// The same generators with every element mapped through `f`.
    pub fn map<F: GroupElement>(&self, f: impl Fn(&E) -> F) -> Result<Presentation<F>> {
        let mut out = Presentation::new(self.names.clone(), self.generators.iter().map(f).collect())?;
        out.witnesses = self.witnesses.clone();
        Ok(out)
    }
}
