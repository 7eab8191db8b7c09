//! Many-sorted algebra: ranked signatures, first-order sentences over
//! equations, finite algebras, and the closed/strong/nearly strong inclusion
//! systems on signatures.

mod algebra;
mod inclusion;
mod sentence;
mod signature;

pub use algebra::{
    algebra_count, eval_term, msa_enumerate_algebras, msa_reduct, msa_satisfies, term_eval, Algebra,
    SignatureExtension,
};
pub use inclusion::{msa_pushout, MsaInclusionKind, MsaSignatures};
pub use sentence::{msa_translate, MsaSentence, Term, Var};
pub use signature::{MsaMorphism, MsaSignature, OpSym};

use std::collections::BTreeMap;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::inclusion::PushoutCocone;
use crate::institution::Institution;

/// The institution of many-sorted algebra, over a chosen inclusion system.
#[derive(Debug, Clone, Copy, Default)]
pub struct Msa {
    cat: MsaSignatures,
}

impl Msa {
    pub fn new(kind: MsaInclusionKind) -> Self {
        Msa {
            cat: MsaSignatures::new(kind),
        }
    }

    pub fn kind(&self) -> MsaInclusionKind {
        self.cat.kind
    }
}

impl Institution for Msa {
    type Sign = MsaSignatures;
    type Sentence = MsaSentence;
    type Model = Algebra;

    fn category(&self) -> &MsaSignatures {
        &self.cat
    }

    fn name(&self) -> &'static str {
        "msa"
    }

    fn exact_semantics(&self) -> bool {
        false
    }

    fn check_sentence(&self, sig: &MsaSignature, sentence: &MsaSentence) -> Result<()> {
        sentence.typecheck(sig)
    }

    fn check_model(&self, sig: &MsaSignature, model: &Algebra) -> Result<()> {
        model.check(sig)
    }

    fn translate(&self, m: &MsaMorphism, sentence: &MsaSentence) -> Result<MsaSentence> {
        msa_translate(m, sentence)
    }

    fn reduct(&self, m: &MsaMorphism, model: &Algebra) -> Result<Algebra> {
        msa_reduct(m, model)
    }

    fn satisfies(&self, sig: &MsaSignature, model: &Algebra, sentence: &MsaSentence) -> Result<bool> {
        sentence.typecheck(sig)?;
        msa_satisfies(model, sentence)
    }

    fn models(&self, sig: &MsaSignature, cfg: &RunConfig) -> Result<Vec<Algebra>> {
        msa_enumerate_algebras(sig, cfg.max_carrier, cfg.enumeration_cap)
    }

    fn has_sentences(&self, sig: &MsaSignature) -> bool {
        !sig.sorts().is_empty()
    }

    fn amalgamate_pushout(
        &self,
        cocone: &PushoutCocone<MsaMorphism>,
        m1: &Algebra,
        m2: &Algebra,
    ) -> Result<Algebra> {
        let apex = cocone.left.target();
        if apex != cocone.right.target() {
            return Err(Error::contract("cocone legs have different apexes"));
        }
        m1.check(cocone.left.source())?;
        m2.check(cocone.right.source())?;
        let mut carriers = BTreeMap::new();
        let mut tables = BTreeMap::new();
        for (leg, m) in [(&cocone.left, m1), (&cocone.right, m2)] {
            for (s, t) in leg.sort_map() {
                carriers.entry(t.clone()).or_insert(m.carrier(s));
            }
            for o in leg.source().ops() {
                tables.entry(leg.op(o)).or_insert_with(|| m.table(o).to_vec());
            }
        }
        let amalgam = Algebra::new(carriers, tables);
        amalgam
            .check(apex)
            .map_err(|_| Error::contract("cocone legs are not jointly surjective"))?;
        if algebra::reduct_unchecked(&cocone.left, &amalgam) != *m1
            || algebra::reduct_unchecked(&cocone.right, &amalgam) != *m2
        {
            return Err(Error::contract("algebras disagree on the shared part of the span"));
        }
        Ok(amalgam)
    }
}
