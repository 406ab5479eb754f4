use std::fmt;

use super::GroupElement;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

/// A product of generators and their inverses, read left to right as
/// composition: `f1^4*f5*f1` is f1∘f1∘f1∘f1∘f5∘f1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(
            self.0
                .iter()
                .rev()
                .map(|l| Letter {
                    generator: l.generator,
                    inverse: !l.inverse,
                })
                .collect(),
        )
    }

    /// Parses `name(^int)?(*name(^int)?)*`. The empty string, `Id` and `e`
    /// denote the empty word unless they are generator names.
    pub fn parse(text: &str, names: &[String]) -> Result<Word> {
        let trimmed = text.trim();
        let is_name = |s: &str| names.iter().any(|n| n == s);
        if trimmed.is_empty() || ((trimmed == "Id" || trimmed == "e") && !is_name(trimmed)) {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        let mut offset = text.len() - text.trim_start().len();
        for token in trimmed.split('*') {
            let position = offset;
            offset += token.len() + 1;
            let token = token.trim();
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.trim().parse().map_err(|_| Error::Parse {
                        position,
                        message: format!("bad exponent in `{token}`"),
                    })?;
                    (n.trim(), e)
                }
                None => (token, 1),
            };
            let generator = names.iter().position(|n| n == name).ok_or_else(|| Error::Parse {
                position,
                message: format!("unknown generator `{name}`"),
            })?;
            let letter = Letter {
                generator,
                inverse: exp < 0,
            };
            letters.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
        }
        Ok(Word(letters))
    }

    /// Renders runs of one letter as powers, e.g. `f1^4*f5*B^-1`.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_empty() {
            return "Id".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let run = (j - i) as i64;
            let exp = if l.inverse { -run } else { run };
            let name = &names[l.generator];
            parts.push(if exp == 1 {
                name.clone()
            } else {
                format!("{name}^{exp}")
            });
            i = j;
        }
        parts.join("*")
    }

    pub fn evaluate<E: GroupElement>(&self, generators: &[E]) -> E {
        let mut acc = generators[0].identity_like();
        for l in &self.0 {
            let g = &generators[l.generator];
            acc = if l.inverse {
                acc.compose(&g.inverse())
            } else {
                acc.compose(g)
            };
        }
        acc
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.0.iter().map(|l| l.generator).max().unwrap_or(0))
            .map(|i| format!("g{}", i + 1))
            .collect();
        f.write_str(&self.render(&names))
    }
}
