//! The base-institution contract the 3/2 construction is generic over.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use crate::config::RunConfig;
use crate::error::Result;
use crate::inclusion::{
    FiniteEnumeration, InclusiveCategory, Pushouts, PushoutCocone, SemiInclusivePullbacks,
};

pub type Obj<I> = <<I as Institution>::Sign as InclusiveCategory>::Object;
pub type Mor<I> = <<I as Institution>::Sign as InclusiveCategory>::Morphism;

/// An institution whose signature category carries an inclusion system with
/// semi-inclusive pullbacks, and whose sentence functor is inclusive
/// (a sentence over `Σ ⊆ Σ′` is verbatim a sentence over `Σ′`).
pub trait Institution {
    type Sign: InclusiveCategory + SemiInclusivePullbacks + Pushouts + FiniteEnumeration;
    type Sentence: Clone + Eq + Ord + Hash + Debug + Display;
    type Model: Clone + Eq + Ord + Hash + Debug;

    fn category(&self) -> &Self::Sign;

    fn name(&self) -> &'static str;

    /// Whether model enumeration is complete (true) or relative to a carrier bound.
    fn exact_semantics(&self) -> bool;

    /// Typechecks `sentence` against `sig`.
    fn check_sentence(&self, sig: &Obj<Self>, sentence: &Self::Sentence) -> Result<()>;

    fn check_model(&self, sig: &Obj<Self>, model: &Self::Model) -> Result<()>;

    fn translate(&self, m: &Mor<Self>, sentence: &Self::Sentence) -> Result<Self::Sentence>;

    fn reduct(&self, m: &Mor<Self>, model: &Self::Model) -> Result<Self::Model>;

    fn satisfies(&self, sig: &Obj<Self>, model: &Self::Model, sentence: &Self::Sentence)
        -> Result<bool>;

    /// All models of `sig` within the bounds of `cfg`, in canonical order.
    fn models(&self, sig: &Obj<Self>, cfg: &RunConfig) -> Result<Vec<Self::Model>>;

    /// Whether `Sen(sig)` is non-empty.
    fn has_sentences(&self, sig: &Obj<Self>) -> bool;

    /// Amalgamates `m1` (over the source of `cocone.left`) and `m2` (over the
    /// source of `cocone.right`) along a pushout cocone. Fails when the two
    /// models disagree on the shared part.
    fn amalgamate_pushout(
        &self,
        cocone: &PushoutCocone<Mor<Self>>,
        m1: &Self::Model,
        m2: &Self::Model,
    ) -> Result<Self::Model>;
}

/// Whether `sentence` belongs to `Sen(sig)`.
pub fn is_sentence_over<I: Institution>(inst: &I, sig: &Obj<I>, sentence: &I::Sentence) -> bool {
    inst.check_sentence(sig, sentence).is_ok()
}
