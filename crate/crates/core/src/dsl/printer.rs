use std::fmt::Write;

use super::document::{AnyModel, AnyPartial, AnySentence, AnySignature, ByBase, Decl, DocBase, SpecDocument};
use crate::institution::{Mor, Obj};
use crate::msa::{Algebra, Msa, MsaInclusionKind, MsaMorphism, MsaSentence, MsaSignature, Term, Var};
use crate::pl::{Pl, PlModel, PlMorphism, PlSentence, PlSignature};
use crate::three_halves::PartialOf;

/// Canonical text of a document; `parse` reads it back to an equal document.
pub fn print(doc: &SpecDocument) -> String {
    let mut out = String::new();
    if doc.inclusions() != MsaInclusionKind::default() {
        writeln!(out, "inclusions {}", doc.inclusions()).unwrap();
    }
    for item in doc.items() {
        let n = &item.name;
        match &item.decl {
            Decl::Signature(s) => writeln!(out, "sig {n} = {}", signature(s)),
            Decl::Morphism {
                source,
                target,
                partial,
                value,
            } => {
                let kw = if *partial { "pmorph" } else { "morph" };
                write!(out, "{kw} {n} : {source} -> {target} ").unwrap();
                if *partial {
                    let dom = match value {
                        ByBase::Pl(p) => pl_signature(p.dom()),
                        ByBase::Msa(p) => msa_signature(p.dom()),
                    };
                    write!(out, "on {dom} ").unwrap();
                }
                writeln!(out, "{}", morphism_body(value))
            }
            Decl::Model { signature, value } => writeln!(out, "model {n} : {signature} = {}", model(value)),
            Decl::Sentence { signature, value } => {
                let text = match value {
                    ByBase::Pl(s) => pl_sentence(s),
                    ByBase::Msa(s) => {
                        let Some(ByBase::Msa(sig)) = sig_of(doc, signature) else {
                            unreachable!("resolved documents typecheck")
                        };
                        msa_sentence(sig, s)
                    }
                };
                writeln!(out, "sentence {n} : {signature} = {text}")
            }
            Decl::Theory { signature, value } => {
                let axioms: Vec<String> = match value {
                    ByBase::Pl(t) => t.axioms.iter().map(pl_sentence).collect(),
                    ByBase::Msa(t) => t.axioms.iter().map(|a| msa_sentence(&t.signature, a)).collect(),
                };
                if axioms.is_empty() {
                    writeln!(out, "theory {n} : {signature} = {{}}")
                } else {
                    writeln!(out, "theory {n} : {signature} = {{ {} }}", axioms.join("; "))
                }
            }
            Decl::Span { left, right, .. } => writeln!(out, "span {n} = {left}, {right}"),
            Decl::Square { morphisms, .. } => writeln!(out, "square {n} = {}", morphisms.join(", ")),
            Decl::Diagram { nodes, edges, .. } => {
                writeln!(out, "diagram {n} {{").unwrap();
                for (a, t) in nodes {
                    writeln!(out, "  node {a} : {t};").unwrap();
                }
                for e in edges {
                    writeln!(out, "  edge {} : {} -> {} = {};", e.name, e.from, e.to, e.morphism).unwrap();
                }
                writeln!(out, "}}")
            }
        }
        .unwrap();
    }
    out
}

fn sig_of<'a>(doc: &'a SpecDocument, name: &str) -> Option<&'a AnySignature> {
    match &doc.get(super::document::Kind::Signature, name)?.decl {
        Decl::Signature(s) => Some(s),
        _ => None,
    }
}

pub fn signature(s: &AnySignature) -> String {
    match s {
        ByBase::Pl(s) => pl_signature(s),
        ByBase::Msa(s) => msa_signature(s),
    }
}

pub fn pl_signature(s: &PlSignature) -> String {
    s.to_string()
}

pub fn msa_signature(s: &MsaSignature) -> String {
    s.to_string()
}

pub fn morphism_body(m: &AnyPartial) -> String {
    match m {
        ByBase::Pl(p) => pl_morphism(p.total()),
        ByBase::Msa(p) => msa_morphism(p.total()),
    }
}

pub fn pl_morphism(m: &PlMorphism) -> String {
    if m.map().is_empty() {
        "{}".into()
    } else {
        m.to_string()
    }
}

pub fn msa_morphism(m: &MsaMorphism) -> String {
    m.to_string()
}

pub fn model(m: &AnyModel) -> String {
    match m {
        ByBase::Pl(m) => m.to_string(),
        ByBase::Msa(a) => algebra(a),
    }
}

pub fn algebra(a: &Algebra) -> String {
    a.to_string()
}

pub fn sentence(sig: &AnySignature, s: &AnySentence) -> String {
    match (sig, s) {
        (_, ByBase::Pl(s)) => pl_sentence(s),
        (ByBase::Msa(sig), ByBase::Msa(s)) => msa_sentence(sig, s),
        (ByBase::Pl(_), ByBase::Msa(s)) => s.to_string(),
    }
}

pub fn pl_sentence(s: &PlSentence) -> String {
    s.to_string()
}

/// Prints `s`, annotating operation terms whose name and argument sorts do
/// not determine them in `sig`.
pub fn msa_sentence(sig: &MsaSignature, s: &MsaSentence) -> String {
    let mut out = String::new();
    write_msa(&mut out, sig, s, &mut Vec::new());
    out
}

fn write_msa(out: &mut String, sig: &MsaSignature, s: &MsaSentence, scope: &mut Vec<Var>) {
    let bin = |out: &mut String, scope: &mut Vec<Var>, a: &MsaSentence, op: &str, b: &MsaSentence| {
        out.push('(');
        write_msa(out, sig, a, scope);
        write!(out, " {op} ").unwrap();
        write_msa(out, sig, b, scope);
        out.push(')');
    };
    match s {
        MsaSentence::Eq(a, b) => {
            write_term(out, sig, a, scope);
            out.push_str(" = ");
            write_term(out, sig, b, scope);
        }
        MsaSentence::Not(a) => {
            out.push('!');
            let wrap = matches!(**a, MsaSentence::Eq(..));
            if wrap {
                out.push('(');
            }
            write_msa(out, sig, a, scope);
            if wrap {
                out.push(')');
            }
        }
        MsaSentence::And(a, b) => bin(out, scope, a, "&", b),
        MsaSentence::Or(a, b) => bin(out, scope, a, "|", b),
        MsaSentence::Implies(a, b) => bin(out, scope, a, "->", b),
        MsaSentence::Forall(vs, body) | MsaSentence::Exists(vs, body) => {
            let q = if matches!(s, MsaSentence::Forall(..)) { "forall" } else { "exists" };
            write!(out, "({q} ").unwrap();
            for (i, v) in vs.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write!(out, "{}:{}", v.name, v.sort).unwrap();
            }
            out.push_str(" . ");
            let depth = scope.len();
            scope.extend(vs.iter().cloned());
            write_msa(out, sig, body, scope);
            scope.truncate(depth);
            out.push(')');
        }
    }
}

fn write_term(out: &mut String, sig: &MsaSignature, t: &Term, scope: &[Var]) {
    match t {
        Term::Var(v) => out.push_str(&v.name),
        Term::Op { op, args } => {
            out.push_str(&op.name);
            let ambiguous = sig.lookup(&op.name, &op.args).nth(1).is_some();
            if ambiguous {
                write!(out, ":{}", op.result).unwrap();
            }
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_term(out, sig, a, scope);
                }
                out.push(')');
            } else if !ambiguous && scope.iter().any(|v| v.name == op.name) {
                out.push_str("()");
            }
        }
    }
}

/// Text forms of one base's values, as they appear in documents.
pub trait Render: DocBase {
    fn signature_text(s: &Obj<Self>) -> String;
    fn morphism_text(m: &Mor<Self>) -> String;
    fn model_text(m: &Self::Model) -> String;
    fn sentence_text(sig: &Obj<Self>, s: &Self::Sentence) -> String;

    /// `name : source -> target [on dom] { .. }` for a partial morphism.
    fn partial_text(phi: &PartialOf<Self>) -> String {
        let mut out = format!("{} -> {}", Self::signature_text(phi.source()), Self::signature_text(phi.target()));
        if !phi.is_defined_everywhere() {
            write!(out, " on {}", Self::signature_text(phi.dom())).unwrap();
        }
        write!(out, " {}", Self::morphism_text(phi.total())).unwrap();
        out
    }
}

impl Render for Pl {
    fn signature_text(s: &PlSignature) -> String {
        pl_signature(s)
    }
    fn morphism_text(m: &PlMorphism) -> String {
        pl_morphism(m)
    }
    fn model_text(m: &PlModel) -> String {
        m.to_string()
    }
    fn sentence_text(_: &PlSignature, s: &PlSentence) -> String {
        pl_sentence(s)
    }
}

impl Render for Msa {
    fn signature_text(s: &MsaSignature) -> String {
        msa_signature(s)
    }
    fn morphism_text(m: &MsaMorphism) -> String {
        msa_morphism(m)
    }
    fn model_text(m: &Algebra) -> String {
        algebra(m)
    }
    fn sentence_text(sig: &MsaSignature, s: &MsaSentence) -> String {
        msa_sentence(sig, s)
    }
}
