use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::{json, Map, Value};

use super::input::{InputDocument, Model};
use super::report::{Report, ToJson};
use crate::error::{Error, Result};
use crate::groupkit::{
    affine_keylemma_decide, check_basic_set, claim_morphism_check, closure_enumerate, is_cyclic, linearize_group,
    BasicSetVerdict, ClaimEntry, Closure, GroupElement, LinearizationOutcome, NonConjugacy, PairStatus,
    Presentation, WitnessSource, DEFAULT_CLOSURE_CAP, DEFAULT_WORD_BOUND,
};
use crate::jet::Order;
use crate::moebius::{holonomy_check, HolonomyOptions};
use crate::resonance::{enumerate_resonances, poincare_dulac_normalize};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    CheckBasicSet,
    Resonances,
    Normalize { generator: String },
    Linearize,
    Closure,
    Order { element: String },
    Keylemma,
    MoebiusHolonomy,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckBasicSet => "check-basic-set",
            Command::Resonances => "resonances",
            Command::Normalize { .. } => "normalize",
            Command::Linearize => "linearize",
            Command::Closure => "closure",
            Command::Order { .. } => "order",
            Command::Keylemma => "keylemma",
            Command::MoebiusHolonomy => "moebius-holonomy",
        }
    }

    /// Rebuilds a command from its name and the optional argument recorded
    /// in a corpus expectation.
    pub fn from_parts(name: &str, element: Option<&str>, generator: Option<&str>) -> Result<Command> {
        let need = |arg: Option<&str>, flag: &str| {
            arg.map(str::to_string)
                .ok_or_else(|| Error::Input(format!("`{name}` needs {flag}")))
        };
        Ok(match name {
            "check-basic-set" => Command::CheckBasicSet,
            "resonances" => Command::Resonances,
            "normalize" => Command::Normalize {
                generator: need(generator, "a generator")?,
            },
            "linearize" => Command::Linearize,
            "closure" => Command::Closure,
            "order" => Command::Order {
                element: need(element, "an element")?,
            },
            "keylemma" => Command::Keylemma,
            "moebius-holonomy" => Command::MoebiusHolonomy,
            other => return Err(Error::Input(format!("unknown command `{other}`"))),
        })
    }

    fn echo(&self) -> String {
        match self {
            Command::Normalize { generator } => format!("normalize --generator {generator}"),
            Command::Order { element } => format!("order --element {element}"),
            c => c.name().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    pub witness_bound: usize,
    pub closure_cap: usize,
    pub truncation: Option<u32>,
    pub parallel: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            witness_bound: DEFAULT_WORD_BOUND,
            closure_cap: DEFAULT_CLOSURE_CAP,
            truncation: None,
            parallel: false,
        }
    }
}

/// Verdicts, certificates and whether a limit stopped the computation.
type Body = (BTreeMap<String, String>, Value, bool);

fn verdicts<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn jets_only(cmd: &Command, model: &Model) -> Result<Presentation<crate::jet::GermJet>> {
    match model {
        Model::Jets(p) => Ok(p.clone()),
        Model::Moebius(_) => Err(Error::Input(format!("`{}` needs a jets document", cmd.name()))),
    }
}

pub fn run(cmd: &Command, doc: &InputDocument, flags: &Flags) -> Result<Report> {
    let start = Instant::now();
    let model = doc.model(flags.truncation)?;
    let (verdicts, certificates, limit_reached) = match (cmd, &model) {
        (Command::CheckBasicSet, Model::Jets(p)) => basic_set(p, flags),
        (Command::CheckBasicSet, Model::Moebius(p)) => basic_set(p, flags),
        (Command::Closure, Model::Jets(p)) => closure(p, flags)?,
        (Command::Closure, Model::Moebius(p)) => closure(p, flags)?,
        (Command::Order { element }, Model::Jets(p)) => order(p, element)?,
        (Command::Order { element }, Model::Moebius(p)) => order(p, element)?,
        (Command::Resonances, _) => resonances(doc, &jets_only(cmd, &model)?, flags)?,
        (Command::Normalize { generator }, _) => normalize(&jets_only(cmd, &model)?, generator)?,
        (Command::Linearize, _) => linearize(&jets_only(cmd, &model)?)?,
        (Command::Keylemma, _) => keylemma(doc, &model)?,
        (Command::MoebiusHolonomy, Model::Moebius(p)) => holonomy(doc, p, flags)?,
        (Command::MoebiusHolonomy, Model::Jets(_)) => {
            return Err(Error::Input("`moebius-holonomy` needs a moebius document".into()))
        }
    };
    Ok(Report {
        command: cmd.echo(),
        input: doc.display_name(),
        verdicts,
        certificates,
        limit_reached,
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

fn order_text(o: &Order) -> String {
    match o {
        Order::Finite(m) => m.to_string(),
        Order::Infinite(_) => "infinite".into(),
        Order::Inconclusive { .. } => "inconclusive".into(),
    }
}

fn order_json(o: &Order) -> Value {
    match o {
        Order::Finite(m) => json!(m),
        Order::Infinite(cert) => json!({"infinite": cert.to_string()}),
        Order::Inconclusive { bound } => json!({"inconclusive_below": bound}),
    }
}

fn basic_set<E: GroupElement + ToJson>(p: &Presentation<E>, flags: &Flags) -> Body {
    let r = check_basic_set(p, flags.witness_bound, flags.parallel);
    let names = p.names();
    let mut v = verdicts([
        ("verdict", r.verdict.as_str().to_string()),
        ("product_is_identity", r.product_is_identity.to_string()),
        ("condition_b_disproved", r.condition_b_disproved().to_string()),
    ]);
    let mut pairs = Vec::new();
    let mut witnessed = 0;
    for ((i, j), status) in &r.pairs {
        let mut entry = Map::new();
        entry.insert("pair".into(), json!([names[*i], names[*j]]));
        let tag = match status {
            PairStatus::Witness { word, source } => {
                witnessed += 1;
                entry.insert("word".into(), json!(p.render(word)));
                let src = match source {
                    WitnessSource::Trivial => "equal-generators",
                    WitnessSource::Supplied => "supplied",
                    WitnessSource::Search => "search",
                };
                entry.insert("source".into(), json!(src));
                "witness"
            }
            PairStatus::NotFound { bound } => {
                entry.insert("bound".into(), json!(bound));
                "not-found"
            }
            PairStatus::NotConjugate(reason) => {
                let why = match reason {
                    NonConjugacy::DifferentOrders { left, right } => {
                        format!("orders differ: {left} vs {right}")
                    }
                    NonConjugacy::DifferentInvariants => "conjugacy invariants differ".into(),
                    NonConjugacy::AbelianDistinct => "generators commute and differ".into(),
                };
                entry.insert("reason".into(), json!(why));
                "not-conjugate"
            }
        };
        entry.insert("status".into(), json!(tag));
        v.insert(format!("pair {},{}", names[*i], names[*j]), tag.into());
        pairs.push(Value::Object(entry));
    }
    v.insert("pairs_witnessed".into(), format!("{witnessed}/{}", r.pairs.len()));
    let rejected: Vec<Value> = r
        .rejected_witnesses
        .iter()
        .map(|(i, j)| json!([names[*i], names[*j]]))
        .collect();
    let certs = json!({
        "residual": r.residual.to_json(),
        "pairs": pairs,
        "rejected_witnesses": rejected,
        "word_bound": r.word_bound,
    });
    let limit = r.verdict == BasicSetVerdict::ConditionBUnresolved && !r.condition_b_disproved();
    (v, certs, limit)
}

fn closure<E: GroupElement + ToJson>(p: &Presentation<E>, flags: &Flags) -> Result<Body> {
    Ok(match closure_enumerate(p, flags.closure_cap, flags.parallel) {
        Closure::Finite(list) => {
            let elems: Vec<E> = list.iter().map(|(_, e)| e.clone()).collect();
            let generator = is_cyclic(&elems)?;
            let mut v = verdicts([
                ("closure", "finite".into()),
                ("order", list.len().to_string()),
                ("cyclic", generator.is_some().to_string()),
            ]);
            let mut certs = Map::new();
            if let Some(g) = &generator {
                let (w, _) = list.iter().find(|(_, e)| e == g).expect("generator is listed");
                certs.insert("cyclic_generator".into(), json!(p.render(w)));
            } else {
                let max = elems.iter().filter_map(|e| e.element_order().finite()).max().unwrap_or(1);
                v.insert("max_element_order".into(), max.to_string());
            }
            certs.insert(
                "elements".into(),
                list.iter()
                    .map(|(w, e)| json!({"word": p.render(w), "element": e.to_json()}))
                    .collect(),
            );
            (v, Value::Object(certs), false)
        }
        Closure::CapExceeded { cap } => (
            verdicts([("closure", "cap-exceeded".into())]),
            json!({"cap": cap}),
            true,
        ),
    })
}

fn order<E: GroupElement + ToJson>(p: &Presentation<E>, element: &str) -> Result<Body> {
    let word = p.parse_word(element)?;
    let e = p.evaluate(&word);
    let o = e.element_order();
    let limit = matches!(o, Order::Inconclusive { .. });
    Ok((
        verdicts([("order", order_text(&o))]),
        json!({"element": e.to_json(), "word": p.render(&word), "order": order_json(&o)}),
        limit,
    ))
}

fn resonances(doc: &InputDocument, p: &Presentation<crate::jet::GermJet>, flags: &Flags) -> Result<Body> {
    let eigs = match doc.eigenvalues(&doc.field()?)? {
        Some(e) => e,
        None => {
            let l = p.generators()[0].linear_part();
            if !l.is_diagonal() {
                return Err(Error::NotDiagonal);
            }
            l.diagonal()
        }
    };
    let k = flags.truncation.unwrap_or(doc.truncation);
    let records = enumerate_resonances(&eigs, k)?;
    let list: Vec<Value> = records
        .iter()
        .map(|r| {
            json!({
                "coordinate": r.coordinate + 1,
                "order": r.order.exponents(),
                "degree": r.order.degree(),
            })
        })
        .collect();
    let degrees: std::collections::BTreeSet<u32> = records.iter().map(|r| r.order.degree()).collect();
    Ok((
        verdicts([
            ("count", records.len().to_string()),
            (
                "degrees",
                degrees.iter().map(u32::to_string).collect::<Vec<_>>().join(", "),
            ),
        ]),
        json!({
            "eigenvalues": eigs.iter().map(ToJson::to_json).collect::<Vec<_>>(),
            "truncation": k,
            "resonances": list,
        }),
        false,
    ))
}

fn normalize(p: &Presentation<crate::jet::GermJet>, generator: &str) -> Result<Body> {
    let f = &p.generators()[p.index_of(generator)?];
    let r = poincare_dulac_normalize(f)?;
    let removed: Vec<Value> = r
        .removed
        .iter()
        .map(|t| {
            json!({
                "coordinate": t.coordinate + 1,
                "monomial": t.monomial.exponents(),
                "coeff": t.coeff.to_json(),
            })
        })
        .collect();
    Ok((
        verdicts([
            ("normal_form_linear", r.normal_form.is_linear().to_string()),
            ("removed_terms", r.removed.len().to_string()),
        ]),
        json!({
            "normal_form": r.normal_form.to_json(),
            "conjugator": r.conjugator.to_json(),
            "removed": removed,
        }),
        false,
    ))
}

fn linearize(p: &Presentation<crate::jet::GermJet>) -> Result<Body> {
    Ok(match linearize_group(p)? {
        LinearizationOutcome::Success {
            conjugator,
            diagonal_generator,
            group_order,
        } => (
            verdicts([
                ("linearization", "success".into()),
                ("group_order", group_order.to_string()),
            ]),
            json!({
                "conjugator": conjugator.to_json(),
                "diagonal_generator": diagonal_generator.to_json(),
            }),
            false,
        ),
        LinearizationOutcome::Failure {
            degree,
            reason,
            detail,
            eigenvalue_orders,
            offending,
        } => {
            let orders: Vec<String> = eigenvalue_orders
                .iter()
                .map(|o| o.map_or("infinite".into(), |m| m.to_string()))
                .collect();
            let offending: Vec<Value> = offending
                .iter()
                .map(|o| {
                    json!({
                        "generator": p.names()[o.generator],
                        "coordinate": o.coordinate + 1,
                        "monomial": o.monomial.exponents(),
                        "coeff": o.coeff.to_json(),
                    })
                })
                .collect();
            let mut v = verdicts([
                ("linearization", "failure".into()),
                ("reason", reason.as_str().into()),
                ("degree", degree.to_string()),
            ]);
            if !orders.is_empty() {
                v.insert("eigenvalue_orders".into(), orders.join(", "));
            }
            (v, json!({"detail": detail, "offending": offending}), false)
        }
    })
}

fn keylemma(doc: &InputDocument, model: &Model) -> Result<Body> {
    if let Some(family) = doc.affine_family(&doc.field()?)? {
        let k = affine_keylemma_decide(&family)?;
        return Ok((
            verdicts([
                ("pairwise_conjugate", k.pairwise_conjugate.to_string()),
                ("order", k.order.to_string()),
            ]),
            json!({"explanation": k.to_string()}),
            false,
        ));
    }
    let Model::Jets(p) = model else {
        return Err(Error::Input("`keylemma` needs an `affine` block or a jets document".into()));
    };
    let degree = p
        .generators()
        .iter()
        .filter_map(|f| f.lowest_nonlinear_degree())
        .min()
        .ok_or_else(|| Error::Precondition("every generator is linear".into()))?;
    let report = claim_morphism_check(p, degree)?;
    let mut v = verdicts([("degree", degree.to_string())]);
    let mut claims = Vec::new();
    for entry in &report.entries {
        let ClaimEntry::Nonresonant(c) = entry else { continue };
        let key = format!("claim {}@{}", c.monomial, c.coordinate + 1);
        let value = match &c.keylemma {
            Some(k) if k.pairwise_conjugate => "conjugate",
            Some(_) => "not-conjugate",
            None => "not-applicable",
        };
        v.insert(key, value.into());
        claims.push(json!({
            "coordinate": c.coordinate + 1,
            "monomial": c.monomial.exponents(),
            "eta": c.family.eta.to_json(),
            "betas": c.family.betas.iter().map(ToJson::to_json).collect::<Vec<_>>(),
            "eta_order": c.eta_order,
            "explanation": c.keylemma.map(|k| k.to_string()),
        }));
    }
    Ok((v, json!({"claims": claims}), false))
}

fn holonomy(doc: &InputDocument, p: &Presentation<crate::moebius::MoebiusMap>, flags: &Flags) -> Result<Body> {
    let opts = HolonomyOptions {
        word_bound: flags.witness_bound,
        truncation: flags.truncation.unwrap_or(doc.truncation),
        closure_cap: flags.closure_cap,
        parallel: flags.parallel,
    };
    let count = doc.expected_count.unwrap_or(p.len() as u64);
    let h = holonomy_check(p, count, &opts)?;
    let mut v = verdicts([
        ("finite_cyclic", h.finite_cyclic.to_string()),
        ("model", h.model.as_str().into()),
        ("routes_disagree", h.routes_disagree.to_string()),
    ]);
    if let Some(k) = h.order {
        v.insert("order".into(), k.to_string());
    }
    if let Some(e) = h.first_integral_exponent {
        v.insert("first_integral_exponent".into(), e.to_string());
    }
    if let Some(b) = h.basic_set {
        v.insert("basic_set".into(), b.as_str().into());
    }
    let infinite = h
        .infinite
        .as_ref()
        .map(|(i, cert)| json!({"generator": p.names()[*i], "certificate": cert.to_string()}));
    Ok((
        v,
        json!({
            "fixed_point": h.fixed_point.as_ref().map(ToString::to_string),
            "infinite": infinite,
            "linearization": h.linearization.as_ref().map(ToString::to_string),
            "closure_order": h.closure_order,
            "detail": h.detail,
        }),
        false,
    ))
}
