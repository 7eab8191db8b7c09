//! The JSON form of a document: one object per declaration, in order.
//! Import goes through the same resolution and checks as the text parser.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::document::{ByBase, Decl, EdgeDecl, Kind, MsaMapSpec, OpRef, SpecDocument};
use crate::error::{Error, Pos, Result};
use crate::msa::{MsaInclusionKind, MsaSentence, MsaSignature, OpSym};
use crate::pl::{PlModel, PlSentence, PlSignature};

pub const FORMAT: &str = "blendkit-document/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonDocument {
    pub format: String,
    pub inclusions: MsaInclusionKind,
    pub declarations: Vec<JsonDecl>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum JsonDecl {
    Signature {
        name: String,
        #[serde(flatten)]
        value: JsonSignature,
    },
    Morphism {
        name: String,
        source: String,
        target: String,
        #[serde(flatten)]
        map: JsonMap,
    },
    Model {
        name: String,
        signature: String,
        #[serde(flatten)]
        value: JsonModel,
    },
    Sentence {
        name: String,
        signature: String,
        #[serde(flatten)]
        value: JsonSentence,
    },
    Theory {
        name: String,
        signature: String,
        #[serde(flatten)]
        axioms: JsonAxioms,
    },
    Span {
        name: String,
        left: String,
        right: String,
    },
    Square {
        name: String,
        morphisms: [String; 4],
    },
    Diagram {
        name: String,
        nodes: Vec<JsonNode>,
        edges: Vec<JsonEdge>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "base", rename_all = "snake_case")]
pub enum JsonSignature {
    Pl { symbols: Vec<String> },
    Msa { sorts: Vec<String>, ops: Vec<OpSym> },
}

/// `dom` is absent for total morphisms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "base", rename_all = "snake_case")]
pub enum JsonMap {
    Pl {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dom: Option<Vec<String>>,
        map: BTreeMap<String, String>,
    },
    Msa {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dom: Option<JsonMsaSignature>,
        sorts: BTreeMap<String, String>,
        ops: Vec<JsonOpImage>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonMsaSignature {
    pub sorts: Vec<String>,
    pub ops: Vec<OpSym>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonOpImage {
    pub op: OpSym,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "base", rename_all = "snake_case")]
pub enum JsonModel {
    /// The symbols the model makes true.
    Pl { holds: Vec<String> },
    Msa {
        carriers: BTreeMap<String, usize>,
        tables: Vec<JsonTable>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonTable {
    pub op: OpSym,
    pub values: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "base", rename_all = "snake_case")]
pub enum JsonSentence {
    Pl { sentence: PlSentence },
    Msa { sentence: MsaSentence },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "base", rename_all = "snake_case")]
pub enum JsonAxioms {
    Pl { axioms: Vec<PlSentence> },
    Msa { axioms: Vec<MsaSentence> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonNode {
    pub name: String,
    pub theory: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonEdge {
    pub name: String,
    pub from: String,
    pub to: String,
    pub morphism: String,
}

fn msa_sig_json(s: &MsaSignature) -> JsonMsaSignature {
    JsonMsaSignature {
        sorts: s.sorts().iter().cloned().collect(),
        ops: s.ops().iter().cloned().collect(),
    }
}

pub fn to_json_document(doc: &SpecDocument) -> JsonDocument {
    let mut declarations = Vec::new();
    for item in doc.items() {
        let name = item.name.clone();
        declarations.push(match &item.decl {
            Decl::Signature(ByBase::Pl(s)) => JsonDecl::Signature {
                name,
                value: JsonSignature::Pl {
                    symbols: s.symbols().iter().cloned().collect(),
                },
            },
            Decl::Signature(ByBase::Msa(s)) => {
                let j = msa_sig_json(s);
                JsonDecl::Signature {
                    name,
                    value: JsonSignature::Msa { sorts: j.sorts, ops: j.ops },
                }
            }
            Decl::Morphism {
                source,
                target,
                partial,
                value,
            } => JsonDecl::Morphism {
                name,
                source: source.clone(),
                target: target.clone(),
                map: match value {
                    ByBase::Pl(p) => JsonMap::Pl {
                        dom: partial.then(|| p.dom().symbols().iter().cloned().collect()),
                        map: p.total().map().clone(),
                    },
                    ByBase::Msa(p) => JsonMap::Msa {
                        dom: partial.then(|| msa_sig_json(p.dom())),
                        sorts: p.total().sort_map().clone(),
                        ops: p
                            .total()
                            .op_map()
                            .iter()
                            .map(|(o, t)| JsonOpImage { op: o.clone(), to: t.clone() })
                            .collect(),
                    },
                },
            },
            Decl::Model { signature, value } => JsonDecl::Model {
                name,
                signature: signature.clone(),
                value: match value {
                    ByBase::Pl(m) => JsonModel::Pl {
                        holds: m.0.iter().cloned().collect(),
                    },
                    ByBase::Msa(a) => JsonModel::Msa {
                        carriers: a.carriers().clone(),
                        tables: a
                            .tables()
                            .iter()
                            .map(|(o, v)| JsonTable {
                                op: o.clone(),
                                values: v.clone(),
                            })
                            .collect(),
                    },
                },
            },
            Decl::Sentence { signature, value } => JsonDecl::Sentence {
                name,
                signature: signature.clone(),
                value: match value {
                    ByBase::Pl(s) => JsonSentence::Pl { sentence: s.clone() },
                    ByBase::Msa(s) => JsonSentence::Msa { sentence: s.clone() },
                },
            },
            Decl::Theory { signature, value } => JsonDecl::Theory {
                name,
                signature: signature.clone(),
                axioms: match value {
                    ByBase::Pl(t) => JsonAxioms::Pl { axioms: t.axioms.clone() },
                    ByBase::Msa(t) => JsonAxioms::Msa { axioms: t.axioms.clone() },
                },
            },
            Decl::Span { left, right, .. } => JsonDecl::Span {
                name,
                left: left.clone(),
                right: right.clone(),
            },
            Decl::Square { morphisms, .. } => JsonDecl::Square {
                name,
                morphisms: morphisms.clone(),
            },
            Decl::Diagram { nodes, edges, .. } => JsonDecl::Diagram {
                name,
                nodes: nodes
                    .iter()
                    .map(|(n, t)| JsonNode {
                        name: n.clone(),
                        theory: t.clone(),
                    })
                    .collect(),
                edges: edges
                    .iter()
                    .map(|e| JsonEdge {
                        name: e.name.clone(),
                        from: e.from.clone(),
                        to: e.to.clone(),
                        morphism: e.morphism.clone(),
                    })
                    .collect(),
            },
        });
    }
    JsonDocument {
        format: FORMAT.into(),
        inclusions: doc.inclusions(),
        declarations,
    }
}

/// Rebuilds a document; the position of the `i`-th declaration is reported as line `i + 1`.
pub fn from_json_document(j: &JsonDocument) -> Result<SpecDocument> {
    if j.format != FORMAT {
        return Err(Error::Input(format!("unknown document format {:?}, expected {FORMAT:?}", j.format)));
    }
    let mut doc = SpecDocument::new(j.inclusions);
    for (i, d) in j.declarations.iter().enumerate() {
        let pos = Pos { line: i + 1, col: 1 };
        match d {
            JsonDecl::Signature { name, value } => {
                let sig = match value {
                    JsonSignature::Pl { symbols } => ByBase::Pl(PlSignature::new(symbols.iter().cloned())),
                    JsonSignature::Msa { sorts, ops } => {
                        ByBase::Msa(MsaSignature::new(sorts.iter().cloned(), ops.iter().cloned()).map_err(|e| e.at(pos))?)
                    }
                };
                doc.add_signature(name, pos, sig)?;
            }
            JsonDecl::Morphism {
                name,
                source,
                target,
                map,
            } => {
                let (dom, spec) = match map {
                    JsonMap::Pl { dom, map } => (
                        dom.as_ref().map(|d| ByBase::Pl(PlSignature::new(d.iter().cloned()))),
                        ByBase::Pl(map.clone()),
                    ),
                    JsonMap::Msa { dom, sorts, ops } => {
                        let dom = match dom {
                            Some(d) => Some(ByBase::Msa(
                                MsaSignature::new(d.sorts.iter().cloned(), d.ops.iter().cloned()).map_err(|e| e.at(pos))?,
                            )),
                            None => None,
                        };
                        let spec = MsaMapSpec {
                            sorts: sorts.clone(),
                            ops: ops.iter().map(|o| (OpRef::full(&o.op), o.to.clone())).collect(),
                        };
                        (dom, ByBase::Msa(spec))
                    }
                };
                doc.add_morphism(name, pos, source, target, dom, spec)?;
            }
            JsonDecl::Model { name, signature, value } => match value {
                JsonModel::Pl { holds } => doc.add_pl_model(name, pos, signature, PlModel::new(holds.iter().cloned()))?,
                JsonModel::Msa { carriers, tables } => {
                    let spec: Vec<(OpRef, Vec<usize>)> =
                        tables.iter().map(|t| (OpRef::full(&t.op), t.values.clone())).collect();
                    doc.add_msa_model(name, pos, signature, carriers.clone(), &spec)?
                }
            },
            JsonDecl::Sentence { name, signature, value } => {
                let s = match value {
                    JsonSentence::Pl { sentence } => ByBase::Pl(sentence.clone()),
                    JsonSentence::Msa { sentence } => ByBase::Msa(sentence.clone()),
                };
                doc.add_sentence(name, pos, signature, s)?;
            }
            JsonDecl::Theory { name, signature, axioms } => {
                let ax = match axioms {
                    JsonAxioms::Pl { axioms } => ByBase::Pl(axioms.clone()),
                    JsonAxioms::Msa { axioms } => ByBase::Msa(axioms.clone()),
                };
                doc.add_theory(name, pos, signature, ax)?;
            }
            JsonDecl::Span { name, left, right } => doc.add_span(name, pos, left, right)?,
            JsonDecl::Square { name, morphisms } => doc.add_square(name, pos, morphisms.each_ref().map(String::as_str))?,
            JsonDecl::Diagram { name, nodes, edges } => doc.add_diagram(
                name,
                pos,
                nodes.iter().map(|n| (n.name.clone(), n.theory.clone())).collect(),
                edges
                    .iter()
                    .map(|e| EdgeDecl {
                        name: e.name.clone(),
                        from: e.from.clone(),
                        to: e.to.clone(),
                        morphism: e.morphism.clone(),
                    })
                    .collect(),
            )?,
        }
    }
    Ok(doc)
}

pub fn to_json(doc: &SpecDocument) -> String {
    serde_json::to_string_pretty(&to_json_document(doc)).expect("documents serialize") + "\n"
}

pub fn from_json(text: &str) -> Result<SpecDocument> {
    let j: JsonDocument = serde_json::from_str(text).map_err(|e| Error::Syntax {
        pos: Pos {
            line: e.line(),
            col: e.column(),
        },
        msg: format!("bad JSON document: {e}"),
    })?;
    from_json_document(&j)
}

/// Declaration counts by kind, for reports.
pub fn summary(doc: &SpecDocument) -> BTreeMap<String, usize> {
    Kind::ALL
        .iter()
        .map(|k| (k.to_string(), doc.count(*k)))
        .filter(|(_, n)| *n > 0)
        .collect()
}
