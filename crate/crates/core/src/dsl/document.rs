use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::blend::{CommutingSquare, Diagram, DiagramEdge, DiagramNode, Span};
use crate::error::{Error, Pos, Result};
use crate::inclusion::InclusiveCategory;
use crate::institution::{Institution, Mor, Obj};
use crate::msa::{Algebra, Msa, MsaInclusionKind, MsaMorphism, MsaSentence, MsaSignature, OpSym};
use crate::partial::PartialMorphism;
use crate::pl::{Pl, PlModel, PlMorphism, PlSentence, PlSignature};
use crate::theory::{Theory, TheoryOf};
use crate::three_halves::PartialOf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Base {
    Pl,
    Msa,
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Base::Pl => "pl",
            Base::Msa => "msa",
        })
    }
}

/// A value of one of the two shipped base institutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ByBase<P, M> {
    Pl(P),
    Msa(M),
}

impl<P, M> ByBase<P, M> {
    pub fn base(&self) -> Base {
        match self {
            ByBase::Pl(_) => Base::Pl,
            ByBase::Msa(_) => Base::Msa,
        }
    }
}

pub type AnySignature = ByBase<PlSignature, MsaSignature>;
pub type AnyPartial = ByBase<PartialOf<Pl>, PartialOf<Msa>>;
pub type AnyModel = ByBase<PlModel, Algebra>;
pub type AnySentence = ByBase<PlSentence, MsaSentence>;
pub type AnyTheory = ByBase<TheoryOf<Pl>, TheoryOf<Msa>>;

/// Declaration namespaces: names are unique within each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Signature,
    Morphism,
    Model,
    Sentence,
    Theory,
    Span,
    Square,
    Diagram,
}

impl Kind {
    pub const ALL: [Kind; 8] = [
        Kind::Signature,
        Kind::Morphism,
        Kind::Model,
        Kind::Sentence,
        Kind::Theory,
        Kind::Span,
        Kind::Square,
        Kind::Diagram,
    ];
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Signature => "signature",
            Kind::Morphism => "morphism",
            Kind::Model => "model",
            Kind::Sentence => "sentence",
            Kind::Theory => "theory",
            Kind::Span => "span",
            Kind::Square => "square",
            Kind::Diagram => "diagram",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDecl {
    pub name: String,
    pub from: String,
    pub to: String,
    pub morphism: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Signature(AnySignature),
    /// `partial` is false for morphisms declared total; those are stored embedded.
    Morphism {
        source: String,
        target: String,
        partial: bool,
        value: AnyPartial,
    },
    Model {
        signature: String,
        value: AnyModel,
    },
    Sentence {
        signature: String,
        value: AnySentence,
    },
    Theory {
        signature: String,
        value: AnyTheory,
    },
    Span {
        left: String,
        right: String,
        base: Base,
    },
    Square {
        morphisms: [String; 4],
        base: Base,
    },
    Diagram {
        nodes: Vec<(String, String)>,
        edges: Vec<EdgeDecl>,
        base: Base,
    },
}

impl Decl {
    pub fn kind(&self) -> Kind {
        match self {
            Decl::Signature(_) => Kind::Signature,
            Decl::Morphism { .. } => Kind::Morphism,
            Decl::Model { .. } => Kind::Model,
            Decl::Sentence { .. } => Kind::Sentence,
            Decl::Theory { .. } => Kind::Theory,
            Decl::Span { .. } => Kind::Span,
            Decl::Square { .. } => Kind::Square,
            Decl::Diagram { .. } => Kind::Diagram,
        }
    }

    pub fn base(&self) -> Base {
        match self {
            Decl::Signature(v) => v.base(),
            Decl::Morphism { value, .. } => value.base(),
            Decl::Model { value, .. } => value.base(),
            Decl::Sentence { value, .. } => value.base(),
            Decl::Theory { value, .. } => value.base(),
            Decl::Span { base, .. } | Decl::Square { base, .. } | Decl::Diagram { base, .. } => *base,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Item {
    pub name: String,
    pub pos: Pos,
    pub decl: Decl,
}

/// A resolved, typechecked specification document. Declarations keep their
/// order; every reference points backwards.
#[derive(Debug, Clone, Default)]
pub struct SpecDocument {
    inclusions: MsaInclusionKind,
    items: Vec<Item>,
    index: BTreeMap<(Kind, String), usize>,
}

/// Positions are not part of a document's identity.
impl PartialEq for SpecDocument {
    fn eq(&self, other: &Self) -> bool {
        self.inclusions == other.inclusions
            && self.items.len() == other.items.len()
            && self
                .items
                .iter()
                .zip(&other.items)
                .all(|(a, b)| a.name == b.name && a.decl == b.decl)
    }
}

impl Eq for SpecDocument {}

/// A morphism body as written: explicit pairs, with unmapped symbols keeping their name.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MsaMapSpec {
    pub sorts: BTreeMap<String, String>,
    pub ops: Vec<(OpRef, String)>,
}

/// An operation named in a body: by name alone, or with its rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpRef {
    pub name: String,
    pub rank: Option<(Vec<String>, String)>,
}

impl OpRef {
    pub fn full(op: &OpSym) -> Self {
        OpRef {
            name: op.name.clone(),
            rank: Some((op.args.clone(), op.result.clone())),
        }
    }

    pub fn resolve(&self, sig: &MsaSignature) -> Result<OpSym> {
        let hits: Vec<&OpSym> = sig
            .ops()
            .iter()
            .filter(|o| o.name == self.name && self.rank.as_ref().is_none_or(|(a, r)| &o.args == a && &o.result == r))
            .collect();
        match hits.as_slice() {
            [one] => Ok((*one).clone()),
            [] => Err(Error::validation(format!("no operation {} in the signature", self.describe()))),
            _ => Err(Error::validation(format!("operation {} is overloaded; give its rank", self.name))),
        }
    }

    fn describe(&self) -> String {
        match &self.rank {
            None => self.name.clone(),
            Some((a, r)) => OpSym::new(self.name.clone(), a.clone(), r.clone()).to_string(),
        }
    }
}

pub type MapSpec = ByBase<BTreeMap<String, String>, MsaMapSpec>;

/// MSA model tables as written.
pub type TableSpec = Vec<(OpRef, Vec<usize>)>;

impl SpecDocument {
    pub fn new(inclusions: MsaInclusionKind) -> Self {
        SpecDocument {
            inclusions,
            items: Vec::new(),
            index: BTreeMap::new(),
        }
    }

    pub fn inclusions(&self) -> MsaInclusionKind {
        self.inclusions
    }

    pub fn msa(&self) -> Msa {
        Msa::new(self.inclusions)
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn count(&self, kind: Kind) -> usize {
        self.items.iter().filter(|i| i.decl.kind() == kind).count()
    }

    pub fn get(&self, kind: Kind, name: &str) -> Option<&Item> {
        self.index.get(&(kind, name.to_string())).map(|&i| &self.items[i])
    }

    /// Looks `name` up in the namespaces `kinds`, in order.
    pub fn find(&self, kinds: &[Kind], name: &str) -> Result<&Item> {
        kinds
            .iter()
            .find_map(|k| self.get(*k, name))
            .ok_or_else(|| {
                let what: Vec<String> = kinds.iter().map(Kind::to_string).collect();
                Error::Input(format!("no {} named {name}", what.join(" or ")))
            })
    }

    fn push(&mut self, name: &str, pos: Pos, decl: Decl) -> Result<()> {
        let key = (decl.kind(), name.to_string());
        if self.index.contains_key(&key) {
            return Err(Error::Resolution {
                pos,
                msg: format!("{} {name} is declared twice", decl.kind()),
            });
        }
        self.index.insert(key, self.items.len());
        self.items.push(Item {
            name: name.to_string(),
            pos,
            decl,
        });
        Ok(())
    }

    fn lookup(&self, kind: Kind, name: &str, pos: Pos) -> Result<&Decl> {
        self.get(kind, name).map(|i| &i.decl).ok_or_else(|| Error::Resolution {
            pos,
            msg: format!("undeclared {kind} {name}"),
        })
    }

    pub fn signature(&self, name: &str, pos: Pos) -> Result<&AnySignature> {
        match self.lookup(Kind::Signature, name, pos)? {
            Decl::Signature(s) => Ok(s),
            _ => unreachable!("namespace holds signatures"),
        }
    }

    pub fn morphism(&self, name: &str, pos: Pos) -> Result<(&AnyPartial, bool)> {
        match self.lookup(Kind::Morphism, name, pos)? {
            Decl::Morphism { value, partial, .. } => Ok((value, *partial)),
            _ => unreachable!("namespace holds morphisms"),
        }
    }

    pub fn model(&self, name: &str, pos: Pos) -> Result<(&str, &AnyModel)> {
        match self.lookup(Kind::Model, name, pos)? {
            Decl::Model { signature, value } => Ok((signature, value)),
            _ => unreachable!("namespace holds models"),
        }
    }

    pub fn sentence(&self, name: &str, pos: Pos) -> Result<(&str, &AnySentence)> {
        match self.lookup(Kind::Sentence, name, pos)? {
            Decl::Sentence { signature, value } => Ok((signature, value)),
            _ => unreachable!("namespace holds sentences"),
        }
    }

    pub fn theory(&self, name: &str, pos: Pos) -> Result<(&str, &AnyTheory)> {
        match self.lookup(Kind::Theory, name, pos)? {
            Decl::Theory { signature, value } => Ok((signature, value)),
            _ => unreachable!("namespace holds theories"),
        }
    }

    pub fn add_signature(&mut self, name: &str, pos: Pos, sig: AnySignature) -> Result<()> {
        if let ByBase::Msa(s) = &sig {
            s.validate().map_err(|e| e.at(pos))?;
        }
        self.push(name, pos, Decl::Signature(sig))
    }

    /// `dom = None` declares a total morphism.
    pub fn add_morphism(
        &mut self,
        name: &str,
        pos: Pos,
        source: &str,
        target: &str,
        dom: Option<AnySignature>,
        map: MapSpec,
    ) -> Result<()> {
        let src = self.signature(source, pos)?.clone();
        let tgt = self.signature(target, pos)?.clone();
        let partial = dom.is_some();
        let value = match (src, tgt, dom, map) {
            (ByBase::Pl(s), ByBase::Pl(t), dom, ByBase::Pl(pairs)) => {
                let dom = match dom {
                    None => s.clone(),
                    Some(ByBase::Pl(d)) => d,
                    Some(_) => return Err(mixed(pos)),
                };
                ByBase::Pl(pl_partial(&s, &t, dom, &pairs).map_err(|e| e.at(pos))?)
            }
            (ByBase::Msa(s), ByBase::Msa(t), dom, ByBase::Msa(spec)) => {
                let dom = match dom {
                    None => s.clone(),
                    Some(ByBase::Msa(d)) => d,
                    Some(_) => return Err(mixed(pos)),
                };
                ByBase::Msa(msa_partial(self.inclusions, &s, &t, dom, &spec).map_err(|e| e.at(pos))?)
            }
            _ => return Err(mixed(pos)),
        };
        self.push(
            name,
            pos,
            Decl::Morphism {
                source: source.into(),
                target: target.into(),
                partial,
                value,
            },
        )
    }

    pub fn add_pl_model(&mut self, name: &str, pos: Pos, signature: &str, holds: PlModel) -> Result<()> {
        let ByBase::Pl(sig) = self.signature(signature, pos)? else {
            return Err(mixed(pos));
        };
        holds.check(sig).map_err(|e| e.at(pos))?;
        self.push(
            name,
            pos,
            Decl::Model {
                signature: signature.into(),
                value: ByBase::Pl(holds),
            },
        )
    }

    pub fn add_msa_model(
        &mut self,
        name: &str,
        pos: Pos,
        signature: &str,
        carriers: BTreeMap<String, usize>,
        tables: &TableSpec,
    ) -> Result<()> {
        let ByBase::Msa(sig) = self.signature(signature, pos)? else {
            return Err(mixed(pos));
        };
        let mut resolved = BTreeMap::new();
        for (op, values) in tables {
            let o = op.resolve(sig).map_err(|e| e.at(pos))?;
            if resolved.insert(o.clone(), values.clone()).is_some() {
                return Err(Error::validation(format!("table of {o} is given twice")).at(pos));
            }
        }
        let alg = Algebra::new(carriers, resolved);
        alg.check(sig).map_err(|e| e.at(pos))?;
        self.push(
            name,
            pos,
            Decl::Model {
                signature: signature.into(),
                value: ByBase::Msa(alg),
            },
        )
    }

    pub fn add_sentence(&mut self, name: &str, pos: Pos, signature: &str, value: AnySentence) -> Result<()> {
        check_sentence(self.signature(signature, pos)?, &value).map_err(|e| e.at(pos))?;
        self.push(
            name,
            pos,
            Decl::Sentence {
                signature: signature.into(),
                value,
            },
        )
    }

    pub fn add_theory(&mut self, name: &str, pos: Pos, signature: &str, axioms: ByBase<Vec<PlSentence>, Vec<MsaSentence>>) -> Result<()> {
        let value = match (self.signature(signature, pos)?, axioms) {
            (ByBase::Pl(s), ByBase::Pl(ax)) => ByBase::Pl(Theory::new(&Pl::new(), s.clone(), ax).map_err(|e| e.at(pos))?),
            (ByBase::Msa(s), ByBase::Msa(ax)) => ByBase::Msa(Theory::new(&self.msa(), s.clone(), ax).map_err(|e| e.at(pos))?),
            _ => return Err(mixed(pos)),
        };
        self.push(
            name,
            pos,
            Decl::Theory {
                signature: signature.into(),
                value,
            },
        )
    }

    pub fn add_span(&mut self, name: &str, pos: Pos, left: &str, right: &str) -> Result<()> {
        let (l, _) = self.morphism(left, pos)?;
        let (r, _) = self.morphism(right, pos)?;
        let base = match (l, r) {
            (ByBase::Pl(a), ByBase::Pl(b)) => Span::new(a.clone(), b.clone()).map(|_| Base::Pl),
            (ByBase::Msa(a), ByBase::Msa(b)) => Span::new(a.clone(), b.clone()).map(|_| Base::Msa),
            _ => return Err(mixed(pos)),
        }
        .map_err(|e| e.at(pos))?;
        self.push(
            name,
            pos,
            Decl::Span {
                left: left.into(),
                right: right.into(),
                base,
            },
        )
    }

    /// `f1 ; g1 = f2 ; g2`, all four total.
    pub fn add_square(&mut self, name: &str, pos: Pos, morphisms: [&str; 4]) -> Result<()> {
        let mut bases = BTreeSet::new();
        for m in morphisms {
            let (v, partial) = self.morphism(m, pos)?;
            if partial {
                return Err(Error::validation(format!("square edge {m} must be a total morphism")).at(pos));
            }
            bases.insert(v.base());
        }
        let base = match bases.into_iter().collect::<Vec<_>>()[..] {
            [b] => b,
            _ => return Err(mixed(pos)),
        };
        let sq = Decl::Square {
            morphisms: morphisms.map(String::from),
            base,
        };
        self.push(name, pos, sq)?;
        let check = match base {
            Base::Pl => self.square::<Pl>(name).map(|_| ()),
            Base::Msa => self.square::<Msa>(name).map(|_| ()),
        };
        if let Err(e) = check {
            self.pop(Kind::Square, name);
            return Err(e.at(pos));
        }
        Ok(())
    }

    pub fn add_diagram(&mut self, name: &str, pos: Pos, nodes: Vec<(String, String)>, edges: Vec<EdgeDecl>) -> Result<()> {
        let mut bases = BTreeSet::new();
        for (_, t) in &nodes {
            let item = self.find(&[Kind::Theory, Kind::Signature], t).map_err(|_| Error::Resolution {
                pos,
                msg: format!("undeclared theory {t}"),
            })?;
            bases.insert(item.decl.base());
        }
        for e in &edges {
            bases.insert(self.morphism(&e.morphism, pos)?.0.base());
        }
        let base = match bases.into_iter().collect::<Vec<_>>()[..] {
            [b] => b,
            [] => Base::Pl,
            _ => return Err(mixed(pos)),
        };
        self.push(name, pos, Decl::Diagram { nodes, edges, base })?;
        let check = match base {
            Base::Pl => self.diagram::<Pl>(name).map(|_| ()),
            Base::Msa => self.diagram::<Msa>(name).map(|_| ()),
        };
        if let Err(e) = check {
            self.pop(Kind::Diagram, name);
            return Err(e.at(pos));
        }
        Ok(())
    }

    fn pop(&mut self, kind: Kind, name: &str) {
        self.index.remove(&(kind, name.to_string()));
        self.items.pop();
    }

    pub fn span<I: DocBase>(&self, name: &str) -> Result<Span<Obj<I>, Mor<I>>> {
        match &self.find(&[Kind::Span], name)?.decl {
            Decl::Span { left, right, .. } => Span::new(self.partial::<I>(left)?.clone(), self.partial::<I>(right)?.clone()),
            _ => unreachable!("namespace holds spans"),
        }
    }

    pub fn square<I: DocBase>(&self, name: &str) -> Result<CommutingSquare<Mor<I>>> {
        match &self.find(&[Kind::Square], name)?.decl {
            Decl::Square { morphisms, .. } => {
                let [f1, f2, g1, g2] = [0, 1, 2, 3].map(|i| self.partial::<I>(&morphisms[i]).map(|p| p.total().clone()));
                let sq = CommutingSquare {
                    f1: f1?,
                    f2: f2?,
                    g1: g1?,
                    g2: g2?,
                };
                let inst = I::default();
                let cat = inst.category();
                let (a, b) = (cat.compose(&sq.f1, &sq.g1)?, cat.compose(&sq.f2, &sq.g2)?);
                if a != b {
                    return Err(Error::validation(format!("square {name} does not commute")));
                }
                Ok(sq)
            }
            _ => unreachable!("namespace holds squares"),
        }
    }

    pub fn diagram<I: DocBase>(&self, name: &str) -> Result<Diagram<Obj<I>, Mor<I>, I::Sentence>> {
        match &self.find(&[Kind::Diagram], name)?.decl {
            Decl::Diagram { nodes, edges, .. } => {
                let mut out = Diagram {
                    nodes: Vec::new(),
                    edges: Vec::new(),
                };
                for (n, t) in nodes {
                    let (signature, axioms) = match self.get(Kind::Theory, t) {
                        Some(_) => {
                            let th = self.theory_of::<I>(t)?;
                            (th.signature.clone(), th.axioms.clone())
                        }
                        None => (self.signature_of::<I>(t)?.clone(), Vec::new()),
                    };
                    out.nodes.push(DiagramNode {
                        name: n.clone(),
                        signature,
                        axioms,
                    });
                }
                for e in edges {
                    out.edges.push(DiagramEdge {
                        name: e.name.clone(),
                        from: e.from.clone(),
                        to: e.to.clone(),
                        morphism: self.partial::<I>(&e.morphism)?.clone(),
                    });
                }
                out.validate()?;
                Ok(out)
            }
            _ => unreachable!("namespace holds diagrams"),
        }
    }

    pub fn signature_of<I: DocBase>(&self, name: &str) -> Result<&Obj<I>> {
        match &self.find(&[Kind::Signature], name)?.decl {
            Decl::Signature(s) => I::signature(s).ok_or_else(|| wrong_base::<I>(name)),
            _ => unreachable!(),
        }
    }

    pub fn partial<I: DocBase>(&self, name: &str) -> Result<&PartialOf<I>> {
        match &self.find(&[Kind::Morphism], name)?.decl {
            Decl::Morphism { value, .. } => I::partial(value).ok_or_else(|| wrong_base::<I>(name)),
            _ => unreachable!(),
        }
    }

    pub fn model_of<I: DocBase>(&self, name: &str) -> Result<&I::Model> {
        match &self.find(&[Kind::Model], name)?.decl {
            Decl::Model { value, .. } => I::model(value).ok_or_else(|| wrong_base::<I>(name)),
            _ => unreachable!(),
        }
    }

    pub fn sentence_of<I: DocBase>(&self, name: &str) -> Result<&I::Sentence> {
        match &self.find(&[Kind::Sentence], name)?.decl {
            Decl::Sentence { value, .. } => I::sentence(value).ok_or_else(|| wrong_base::<I>(name)),
            _ => unreachable!(),
        }
    }

    pub fn theory_of<I: DocBase>(&self, name: &str) -> Result<&TheoryOf<I>> {
        match &self.find(&[Kind::Theory], name)?.decl {
            Decl::Theory { value, .. } => I::theory(value).ok_or_else(|| wrong_base::<I>(name)),
            _ => unreachable!(),
        }
    }

    /// A theory by name, or a signature read as the theory with no axioms.
    pub fn theory_or_signature<I: DocBase>(&self, name: &str) -> Result<TheoryOf<I>> {
        if self.get(Kind::Theory, name).is_some() {
            return self.theory_of::<I>(name).cloned();
        }
        Ok(Theory {
            signature: self.signature_of::<I>(name)?.clone(),
            axioms: Vec::new(),
        })
    }
}

fn mixed(pos: Pos) -> Error {
    Error::validation("declaration mixes pl and msa").at(pos)
}

fn wrong_base<I: DocBase>(name: &str) -> Error {
    Error::Input(format!("{name} is not a {} declaration", I::BASE))
}

fn check_sentence(sig: &AnySignature, s: &AnySentence) -> Result<()> {
    match (sig, s) {
        (ByBase::Pl(sig), ByBase::Pl(s)) => s.typecheck(sig),
        (ByBase::Msa(sig), ByBase::Msa(s)) => s.typecheck(sig),
        _ => Err(Error::validation("declaration mixes pl and msa")),
    }
}

fn pl_partial(source: &PlSignature, target: &PlSignature, dom: PlSignature, pairs: &BTreeMap<String, String>) -> Result<PartialOf<Pl>> {
    if let Some(k) = pairs.keys().find(|k| !dom.contains(k)) {
        return Err(Error::validation(format!("{k} is mapped but lies outside the domain")));
    }
    let map = dom
        .symbols()
        .iter()
        .map(|s| (s.clone(), pairs.get(s).unwrap_or(s).clone()))
        .collect();
    let total = PlMorphism::new(dom, target.clone(), map)?;
    PartialMorphism::new(&crate::pl::SetInclusions, source.clone(), total)
}

fn msa_partial(
    kind: MsaInclusionKind,
    source: &MsaSignature,
    target: &MsaSignature,
    dom: MsaSignature,
    spec: &MsaMapSpec,
) -> Result<PartialOf<Msa>> {
    dom.validate()?;
    if let Some(k) = spec.sorts.keys().find(|k| !dom.has_sort(k)) {
        return Err(Error::validation(format!("sort {k} is mapped but lies outside the domain")));
    }
    let mut ops = BTreeMap::new();
    for (r, to) in &spec.ops {
        let o = r.resolve(&dom)?;
        if ops.insert(o.clone(), to.clone()).is_some() {
            return Err(Error::validation(format!("operation {o} is mapped twice")));
        }
    }
    for o in dom.ops() {
        ops.entry(o.clone()).or_insert_with(|| o.name.clone());
    }
    let sorts = dom
        .sorts()
        .iter()
        .map(|s| (s.clone(), spec.sorts.get(s).unwrap_or(s).clone()))
        .collect();
    let total = MsaMorphism::new(dom, target.clone(), sorts, ops)?;
    PartialMorphism::new(&crate::msa::MsaSignatures::new(kind), source.clone(), total)
}

/// Projections from the two-base document types onto one institution.
pub trait DocBase: Institution + Default {
    const BASE: Base;
    fn signature(s: &AnySignature) -> Option<&Obj<Self>>;
    fn partial(m: &AnyPartial) -> Option<&PartialOf<Self>>;
    fn model(m: &AnyModel) -> Option<&Self::Model>;
    fn sentence(s: &AnySentence) -> Option<&Self::Sentence>;
    fn theory(t: &AnyTheory) -> Option<&TheoryOf<Self>>;
}

impl DocBase for Pl {
    const BASE: Base = Base::Pl;
    fn signature(s: &AnySignature) -> Option<&PlSignature> {
        match s {
            ByBase::Pl(x) => Some(x),
            _ => None,
        }
    }
    fn partial(m: &AnyPartial) -> Option<&PartialOf<Pl>> {
        match m {
            ByBase::Pl(x) => Some(x),
            _ => None,
        }
    }
    fn model(m: &AnyModel) -> Option<&PlModel> {
        match m {
            ByBase::Pl(x) => Some(x),
            _ => None,
        }
    }
    fn sentence(s: &AnySentence) -> Option<&PlSentence> {
        match s {
            ByBase::Pl(x) => Some(x),
            _ => None,
        }
    }
    fn theory(t: &AnyTheory) -> Option<&TheoryOf<Pl>> {
        match t {
            ByBase::Pl(x) => Some(x),
            _ => None,
        }
    }
}

impl DocBase for Msa {
    const BASE: Base = Base::Msa;
    fn signature(s: &AnySignature) -> Option<&MsaSignature> {
        match s {
            ByBase::Msa(x) => Some(x),
            _ => None,
        }
    }
    fn partial(m: &AnyPartial) -> Option<&PartialOf<Msa>> {
        match m {
            ByBase::Msa(x) => Some(x),
            _ => None,
        }
    }
    fn model(m: &AnyModel) -> Option<&Algebra> {
        match m {
            ByBase::Msa(x) => Some(x),
            _ => None,
        }
    }
    fn sentence(s: &AnySentence) -> Option<&MsaSentence> {
        match s {
            ByBase::Msa(x) => Some(x),
            _ => None,
        }
    }
    fn theory(t: &AnyTheory) -> Option<&TheoryOf<Msa>> {
        match t {
            ByBase::Msa(x) => Some(x),
            _ => None,
        }
    }
}
