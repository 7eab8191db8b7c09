//! The document language: a text syntax for authoring and a JSON form for
//! tools, both resolving to the same [`SpecDocument`].
//!
//! ```text
//! sig P = {p, q}
//! sig N = sorts {s} ops { c : -> s; f : s -> s }
//! morph f : P -> Q { p |-> a, q |-> a }
//! pmorph g : P -> Q on {p} { p |-> b }
//! model M : P = {p}
//! model A : N = carriers { s = 2 } ops { c : -> s = [0]; f : s -> s = [1, 0] }
//! sentence r : P = (p & !q)
//! theory T : N = { (forall x:s . f(f(x)) = x) }
//! span S = g, f
//! square Q = f1, f2, g1, g2
//! diagram D { node A : T; node B : P; edge e : A -> B = g; }
//! ```

mod document;
pub mod json;
mod lexer;
mod parser;
pub mod printer;
pub mod random;

pub use document::{
    AnyModel, AnyPartial, AnySentence, AnySignature, AnyTheory, Base, ByBase, Decl, DocBase, EdgeDecl, Item, Kind,
    MapSpec, MsaMapSpec, OpRef, SpecDocument, TableSpec,
};
pub use json::{from_json, to_json};
pub use parser::parse;
pub use printer::{print, Render};

/// Parses text or JSON, choosing by the first non-blank character.
pub fn parse_any(text: &str) -> crate::Result<SpecDocument> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        parse(text)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::error::{Error, Pos};
    use crate::gen;
    use crate::msa::{Msa, MsaSentence, MsaSignature, OpSym, Term, Var};
    use crate::partial::PartialMorphism;
    use crate::pl::{Pl, PlMorphism, PlSignature, SetInclusions};

    #[test]
    fn empty_document() {
        let doc = parse("  // nothing\n").unwrap();
        assert!(doc.is_empty());
        assert_eq!(print(&doc), "");
    }

    #[test]
    fn partial_morphism_declaration() {
        let doc = parse("sig P = {p,q}\npmorph f : P -> P on {p} { p |-> q }").unwrap();
        assert_eq!((doc.count(Kind::Signature), doc.count(Kind::Morphism)), (1, 1));
        let p = PlSignature::new(["p", "q"]);
        let dom = PlSignature::new(["p"]);
        let total = PlMorphism::new(dom, p.clone(), BTreeMap::from([("p".into(), "q".into())])).unwrap();
        let expected = PartialMorphism::new(&SetInclusions, p, total).unwrap();
        assert_eq!(doc.partial::<Pl>("f").unwrap(), &expected);
    }

    #[test]
    fn undeclared_signature() {
        let e = parse("sig P = {p}\nmorph f : P -> Q {}").unwrap_err();
        assert_eq!(
            e,
            Error::Resolution {
                pos: Pos { line: 2, col: 16 },
                msg: "undeclared signature Q".into()
            }
        );
        assert!(e.to_string().contains("Q"));
    }

    #[test]
    fn located_errors() {
        let e = parse("sig P = {p}\nsentence r : P = (p & q)").unwrap_err();
        assert!(e.to_string().starts_with("2:23:"), "{e}");
        let e = parse("sig P = {p}\nsig P = {q}").unwrap_err();
        assert!(e.to_string().contains("declared twice"));
        let e = parse("sig P = {p}\nmodel M : P = {q}").unwrap_err();
        assert!(e.to_string().starts_with("2:1:"), "{e}");
        let e = parse("sig P = {p} sig").unwrap_err();
        assert!(matches!(e, Error::Syntax { .. }));
    }

    #[test]
    fn sugar_desugars_to_the_core_connectives() {
        let doc = parse("sig P = {p, q}\nsentence r : P = p -> q | !p").unwrap();
        assert_eq!(print(&doc), "sig P = {p, q}\nsentence r : P = !(p & !!(!q & !!p))\n");
    }

    #[test]
    fn msa_terms_resolve_by_scope_and_rank() {
        let text = "sig N = sorts {s, t} ops { c : -> s; c : -> t; x : -> s; f : s -> s; f : t -> t }\n\
                    sentence r : N = (forall x:s . f(x) = x())\n\
                    sentence k : N = !(c:s = x)";
        let doc = parse(text).unwrap();
        let r = doc.sentence_of::<Msa>("r").unwrap();
        let f = OpSym::new("f", ["s"], "s");
        let expected = MsaSentence::forall(
            vec![Var::new("x", "s")],
            MsaSentence::eq(Term::op(f, vec![Term::var("x", "s")]), Term::constant(OpSym::constant("x", "s"))),
        );
        assert_eq!(r, &expected);
        let printed = print(&doc);
        assert!(printed.contains("sentence k : N = !(c:s = x)"), "{printed}");
        assert_eq!(parse(&printed).unwrap(), doc);
        assert!(parse("sig N = sorts {s, t} ops { c : -> s; c : -> t }\nsentence k : N = c = c").is_err());
    }

    #[test]
    fn msa_declarations() {
        let text = "inclusions closed\n\
                    sig N = sorts {s} ops { z : -> s; f : s -> s }\n\
                    sig M = sorts {u} ops { a : -> u; g : u -> u }\n\
                    morph h : N -> M { sorts { s |-> u } ops { z |-> a; f : s -> s |-> g } }\n\
                    model A : N = carriers { s = 2 } ops { z = [0]; f : s -> s = [1, 0] }\n\
                    theory T : N = { (forall x:s . f(f(x)) = x); !(f(z) = z) }";
        let doc = parse(text).unwrap();
        assert_eq!(doc.inclusions(), crate::msa::MsaInclusionKind::Closed);
        let h = doc.partial::<Msa>("h").unwrap();
        assert_eq!(h.total().op(&OpSym::new("f", ["s"], "s")).name, "g");
        assert_eq!(doc.theory_of::<Msa>("T").unwrap().axioms.len(), 2);
        let printed = print(&doc);
        assert_eq!(parse(&printed).unwrap(), doc);
        assert_eq!(print(&parse(&printed).unwrap()), printed);
        let sig: &MsaSignature = doc.signature_of::<Msa>("N").unwrap();
        assert_eq!(sig.ops().len(), 2);
    }

    #[test]
    fn closed_domains_are_checked() {
        // under closed inclusions a subsignature keeps every operation on its sorts
        let text = "inclusions closed\nsig N = sorts {s} ops { f : s -> s }\nsig M = sorts {s} ops {}\n\
                    pmorph h : N -> M on sorts {s} ops {} { }";
        assert!(parse(text).is_err());
        assert!(parse(&text.replacen("closed", "strong", 1)).is_ok());
    }

    #[test]
    fn squares_must_commute() {
        let base = "sig A = {a}\nsig B = {b, c}\nmorph f : A -> B { a |-> b }\nmorph g : A -> B { a |-> c }\nmorph i : B -> B { b |-> b, c |-> c }\n";
        assert!(parse(&format!("{base}square Q = f, f, i, i")).is_ok());
        let e = parse(&format!("{base}square Q = f, g, i, i")).unwrap_err();
        assert!(e.to_string().contains("does not commute"), "{e}");
    }

    #[test]
    fn random_documents_round_trip() {
        let mut g = gen::rng(11);
        for _ in 0..20 {
            let doc = random::random_document(&mut g).unwrap();
            let text = print(&doc);
            let back = parse(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
            assert_eq!(back, doc, "{text}");
            assert_eq!(print(&back), text);
            let json = to_json(&doc);
            let from = from_json(&json).unwrap();
            assert_eq!(from, doc);
            assert_eq!(to_json(&from), json);
            assert_eq!(parse_any(&json).unwrap(), doc);
        }
    }
}
