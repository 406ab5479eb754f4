use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cyclo::{parse_coeff, CycloField, CycloNum};
use crate::error::{Error, Result};
use crate::groupkit::{AffineFamily, GroupPresentation, Presentation};
use crate::jet::{GermJet, LinearPart, Monomial};
use crate::moebius::MoebiusMap;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    #[default]
    Jets,
    Moebius,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: String,
    pub monomial: Vec<u32>,
}

/// A generator is given either by its coordinates or, for linear jets and
/// Möbius maps, by a matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<Vec<TermSpec>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessSpec {
    pub target: String,
    pub source: String,
    pub word: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineSpec {
    pub eta: String,
    pub betas: Vec<String>,
}

/// One command of a corpus entry and the verdict fields it must produce.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    pub verdicts: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default)]
    pub kind: Kind,
    pub conductor: u32,
    pub dimension: usize,
    pub truncation: u32,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<WitnessSpec>,
    /// Eigenvalues for `resonances`; defaults to the diagonal of the first
    /// generator.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affine: Option<AffineSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_count: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expected: Vec<Expectation>,
}

/// A validated document: the field and the generator list in one of the two
/// element kinds.
#[derive(Clone, Debug)]
pub enum Model {
    Jets(GroupPresentation),
    Moebius(Presentation<MoebiusMap>),
}

fn at(path: &str, e: Error) -> Error {
    Error::Input(format!("{path}: {e}"))
}

fn coeff(field: &CycloField, path: &str, text: &str) -> Result<CycloNum> {
    parse_coeff(field, text).map_err(|e| at(path, e))
}

/// Parses and validates a JSON document. Serde errors carry line and
/// column; semantic errors carry the JSON path of the offending value.
pub fn parse_input(text: &str) -> Result<InputDocument> {
    let doc: InputDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        position: byte_offset(text, e.line(), e.column()),
        message: format!("line {}, column {}: {e}", e.line(), e.column()),
    })?;
    doc.model(None)?;
    Ok(doc)
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let start: usize = text.split_inclusive('\n').take(line - 1).map(str::len).sum();
    (start + column.saturating_sub(1)).min(text.len())
}

impl InputDocument {
    pub fn field(&self) -> Result<CycloField> {
        CycloField::new(self.conductor).map_err(|e| at("conductor", e))
    }

    /// Builds the generators, with the truncation optionally overridden.
    pub fn model(&self, truncation: Option<u32>) -> Result<Model> {
        let field = self.field()?;
        if self.dimension == 0 {
            return Err(at("dimension", Error::Shape("must be positive".into())));
        }
        if self.truncation == 0 || truncation == Some(0) {
            return Err(at("truncation", Error::Shape("must be positive".into())));
        }
        if self.generators.is_empty() {
            return Err(at("generators", Error::Shape("no generators".into())));
        }
        let names: Vec<String> = self.generators.iter().map(|g| g.name.clone()).collect();
        let mut model = match self.kind {
            Kind::Jets => {
                let k = truncation.unwrap_or(self.truncation);
                let gens = self
                    .generators
                    .iter()
                    .enumerate()
                    .map(|(i, g)| Ok(self.jet(&field, i, g)?.with_order(k)))
                    .collect::<Result<Vec<_>>>()?;
                Model::Jets(Presentation::new(names, gens).map_err(|e| at("generators", e))?)
            }
            Kind::Moebius => {
                if self.dimension != 1 {
                    return Err(at("dimension", Error::Shape("Möbius maps act in dimension 1".into())));
                }
                let gens = self
                    .generators
                    .iter()
                    .enumerate()
                    .map(|(i, g)| self.moebius(&field, i, g))
                    .collect::<Result<Vec<_>>>()?;
                Model::Moebius(Presentation::new(names, gens).map_err(|e| at("generators", e))?)
            }
        };
        for (i, w) in self.witnesses.iter().enumerate() {
            let path = format!("witnesses[{i}]");
            match &mut model {
                Model::Jets(p) => p.add_witness(&w.target, &w.source, &w.word),
                Model::Moebius(p) => p.add_witness(&w.target, &w.source, &w.word),
            }
            .map_err(|e| at(&path, e))?;
        }
        if let Some(eigs) = &self.eigenvalues {
            self.eigenvalues(&field)?;
            if eigs.len() != self.dimension {
                return Err(at("eigenvalues", Error::Shape(format!("expected {} values", self.dimension))));
            }
        }
        if self.affine.is_some() {
            self.affine_family(&field)?;
        }
        if let Some(c) = self.expected_count {
            if c != self.generators.len() as u64 {
                return Err(at(
                    "expected_count",
                    Error::Shape(format!("{c} given, {} generators listed", self.generators.len())),
                ));
            }
        }
        Ok(model)
    }

    fn matrix(&self, field: &CycloField, path: &str, rows: &[Vec<String>], n: usize) -> Result<Vec<Vec<CycloNum>>> {
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(at(path, Error::Shape(format!("expected a {n}x{n} matrix"))));
        }
        rows.iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(|(c, x)| coeff(field, &format!("{path}[{r}][{c}]"), x))
                    .collect()
            })
            .collect()
    }

    fn jet(&self, field: &CycloField, i: usize, g: &GeneratorSpec) -> Result<GermJet> {
        let path = format!("generators[{i}]");
        let n = self.dimension;
        let k = self.truncation;
        match (&g.coords, &g.matrix) {
            (Some(coords), None) => {
                if coords.len() != n {
                    return Err(at(
                        &format!("{path}.coords"),
                        Error::Shape(format!("expected {n} coordinates, got {}", coords.len())),
                    ));
                }
                let mut terms = Vec::with_capacity(n);
                for (s, coord) in coords.iter().enumerate() {
                    let mut row = Vec::with_capacity(coord.len());
                    for (t, term) in coord.iter().enumerate() {
                        let tpath = format!("{path}.coords[{s}][{t}]");
                        let m = &term.monomial;
                        let degree: u32 = m.iter().sum();
                        if m.len() != n {
                            return Err(at(
                                &format!("{tpath}.monomial"),
                                Error::Shape(format!("expected {n} exponents, got {}", m.len())),
                            ));
                        }
                        if degree == 0 || degree > k {
                            return Err(at(
                                &format!("{tpath}.monomial"),
                                Error::Shape(format!("degree {degree} outside 1..={k}")),
                            ));
                        }
                        row.push((coeff(field, &format!("{tpath}.coeff"), &term.coeff)?, Monomial::new(m.clone())));
                    }
                    terms.push(row);
                }
                GermJet::new(field, n, k, terms).map_err(|e| at(&path, e))
            }
            (None, Some(rows)) => {
                let m = self.matrix(field, &format!("{path}.matrix"), rows, n)?;
                let l = LinearPart::from_rows(field, m).map_err(|e| at(&path, e))?;
                l.inverse().map_err(|e| at(&path, e))?;
                Ok(GermJet::from_linear(&l, k))
            }
            _ => Err(at(&path, Error::Shape("give exactly one of `coords` or `matrix`".into()))),
        }
    }

    fn moebius(&self, field: &CycloField, i: usize, g: &GeneratorSpec) -> Result<MoebiusMap> {
        let path = format!("generators[{i}]");
        let Some(rows) = &g.matrix else {
            return Err(at(&path, Error::Shape("Möbius generators need a 2x2 `matrix`".into())));
        };
        if g.coords.is_some() {
            return Err(at(&path, Error::Shape("give exactly one of `coords` or `matrix`".into())));
        }
        let m = self.matrix(field, &format!("{path}.matrix"), rows, 2)?;
        let [a, b] = [m[0][0].clone(), m[0][1].clone()];
        let [c, d] = [m[1][0].clone(), m[1][1].clone()];
        MoebiusMap::new(a, b, c, d).map_err(|e| at(&path, e))
    }

    pub fn eigenvalues(&self, field: &CycloField) -> Result<Option<Vec<CycloNum>>> {
        self.eigenvalues
            .as_ref()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .map(|(i, x)| coeff(field, &format!("eigenvalues[{i}]"), x))
                    .collect()
            })
            .transpose()
    }

    pub fn affine_family(&self, field: &CycloField) -> Result<Option<AffineFamily>> {
        let Some(spec) = &self.affine else {
            return Ok(None);
        };
        let eta = coeff(field, "affine.eta", &spec.eta)?;
        let betas = spec
            .betas
            .iter()
            .enumerate()
            .map(|(i, b)| coeff(field, &format!("affine.betas[{i}]"), b))
            .collect::<Result<Vec<_>>>()?;
        if eta.is_zero() {
            return Err(at("affine.eta", Error::DivisionByZero));
        }
        Ok(Some(AffineFamily { eta, betas }))
    }

    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| "<input>".into())
    }
}
