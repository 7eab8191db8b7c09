//! Random well-formed documents, for round-trip and determinism checks.

use rand::seq::SliceRandom;
use rand::Rng;

use super::document::{ByBase, EdgeDecl, MapSpec, MsaMapSpec, OpRef, SpecDocument};
use crate::error::{Pos, Result};
use crate::gen::{self, Gen, PL_POOL};
use crate::inclusion::{FiniteEnumeration, Pushouts};
use crate::msa::{MsaInclusionKind, MsaMorphism, MsaSignature, MsaSignatures};
use crate::pl::{PlMorphism, PlSignature, SetInclusions};

fn pl_map(m: &PlMorphism) -> MapSpec {
    ByBase::Pl(m.map().clone())
}

fn msa_map(m: &MsaMorphism) -> MapSpec {
    ByBase::Msa(MsaMapSpec {
        sorts: m.sort_map().clone(),
        ops: m.op_map().iter().map(|(o, n)| (OpRef::full(o), n.clone())).collect(),
    })
}

fn nonempty_pl(g: &mut Gen) -> PlSignature {
    loop {
        let s = gen::pl_signature(g, PL_POOL.len(), 4);
        if !s.is_empty() {
            return s;
        }
    }
}

fn msa_with_sorts(g: &mut Gen) -> MsaSignature {
    loop {
        let s = gen::msa_signature(g, 2, 3);
        if !s.sorts().is_empty() {
            return s;
        }
    }
}

/// A document exercising every declaration kind over both bases.
pub fn random_document(g: &mut Gen) -> Result<SpecDocument> {
    let kind = *MsaInclusionKind::ALL.choose(g).expect("non-empty");
    let mut doc = SpecDocument::new(kind);
    let mut line = 0;
    let mut pos = || {
        line += 1;
        Pos { line, col: 1 }
    };

    let sigs: Vec<PlSignature> = (0..3).map(|_| nonempty_pl(g)).collect();
    for (i, s) in sigs.iter().enumerate() {
        doc.add_signature(&format!("P{i}"), pos(), ByBase::Pl(s.clone()))?;
    }
    let f1 = gen::pl_partial(g, &sigs[0], &sigs[1]);
    let f2 = gen::pl_partial(g, &sigs[0], &sigs[2]);
    doc.add_morphism("f1", pos(), "P0", "P1", Some(ByBase::Pl(f1.dom().clone())), pl_map(f1.total()))?;
    doc.add_morphism("f2", pos(), "P0", "P2", Some(ByBase::Pl(f2.dom().clone())), pl_map(f2.total()))?;
    doc.add_span("S", pos(), "f1", "f2")?;

    let t1 = gen::pl_morphism(g, &sigs[0], &sigs[1]);
    let t2 = gen::pl_morphism(g, &sigs[0], &sigs[2]);
    let po = SetInclusions.pushout(&t1, &t2)?;
    doc.add_signature("Apex", pos(), ByBase::Pl(po.left.target().clone()))?;
    doc.add_morphism("t1", pos(), "P0", "P1", None, pl_map(&t1))?;
    doc.add_morphism("t2", pos(), "P0", "P2", None, pl_map(&t2))?;
    doc.add_morphism("u1", pos(), "P1", "Apex", None, pl_map(&po.left))?;
    doc.add_morphism("u2", pos(), "P2", "Apex", None, pl_map(&po.right))?;
    doc.add_square("Q", pos(), ["t1", "t2", "u1", "u2"])?;

    for (i, s) in sigs.iter().enumerate() {
        doc.add_pl_model(&format!("M{i}"), pos(), &format!("P{i}"), gen::pl_model(g, s))?;
        doc.add_sentence(&format!("r{i}"), pos(), &format!("P{i}"), ByBase::Pl(gen::pl_sentence(g, s, 3)))?;
        let t = gen::pl_theory(g, s, 3, 2);
        doc.add_theory(&format!("T{i}"), pos(), &format!("P{i}"), ByBase::Pl(t.axioms))?;
    }
    doc.add_diagram(
        "D",
        pos(),
        vec![("A".into(), "T0".into()), ("B".into(), "P1".into())],
        vec![EdgeDecl {
            name: "e".into(),
            from: "A".into(),
            to: "B".into(),
            morphism: "f1".into(),
        }],
    )?;

    let cat = MsaSignatures::new(kind);
    let n = msa_with_sorts(g);
    doc.add_signature("N", pos(), ByBase::Msa(n.clone()))?;
    let h = gen::msa_morphism_from(g, &n, 1);
    doc.add_signature("N1", pos(), ByBase::Msa(h.target().clone()))?;
    doc.add_morphism("h", pos(), "N", "N1", None, msa_map(&h))?;
    let subs = cat.subobjects(&n, 1 << 12)?;
    let dom = subs.choose(g).expect("non-empty").clone();
    let k = gen::msa_morphism_from(g, &dom, 0);
    doc.add_signature("N2", pos(), ByBase::Msa(k.target().clone()))?;
    doc.add_morphism("k", pos(), "N", "N2", Some(ByBase::Msa(dom)), msa_map(&k))?;
    doc.add_span("SN", pos(), "h", "k")?;
    for (name, sig) in [("N", &n), ("N1", h.target())] {
        let carrier = g.gen_range(1..=2);
        let alg = gen::msa_algebra(g, sig, carrier);
        let spec: Vec<(OpRef, Vec<usize>)> = alg.tables().iter().map(|(o, v)| (OpRef::full(o), v.clone())).collect();
        doc.add_msa_model(&format!("A_{name}"), pos(), name, alg.carriers().clone(), &spec)?;
    }
    let axioms = (0..g.gen_range(0..=2)).map(|_| gen::msa_sentence(g, &n, 3)).collect();
    doc.add_theory("TN", pos(), "N", ByBase::Msa(axioms))?;
    doc.add_sentence("rn", pos(), "N", ByBase::Msa(gen::msa_sentence(g, &n, 3)))?;
    Ok(doc)
}
