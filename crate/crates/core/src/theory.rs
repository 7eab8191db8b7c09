//! Theories, semantic entailment, and the four notions of partial theory
//! morphism.
//!
//! Closures are never written out. A closed theory is kept as its signature
//! together with its class of models (within the configured bounds), which
//! determines the closure: two closed theories are equal exactly when these
//! agree.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::inclusion::{Factorization, InclusiveCategory, PullbackSquare, SemiInclusivePullbacks};
use crate::institution::{Institution, Mor, Obj};
use crate::partial::PartialMorphism;
use crate::pl::{pl_enumerate_models, PlModel, PlSentence, PlSignature};
use crate::three_halves::{pmod_reduct_among, PartialOf};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theory<O, S> {
    pub signature: O,
    pub axioms: Vec<S>,
}

pub type TheoryOf<I> = Theory<Obj<I>, <I as Institution>::Sentence>;

impl<O, S> Theory<O, S> {
    pub fn new<I>(inst: &I, signature: O, axioms: Vec<S>) -> Result<Self>
    where
        I: Institution<Sentence = S>,
        I::Sign: InclusiveCategory<Object = O>,
    {
        for a in &axioms {
            inst.check_sentence(&signature, a)?;
        }
        Ok(Theory { signature, axioms })
    }
}

fn bound_of<I: Institution>(inst: &I, cfg: &RunConfig) -> Option<usize> {
    (!inst.exact_semantics()).then_some(cfg.max_carrier)
}

/// All enumerated models of the signature that satisfy every axiom.
pub fn theory_models<I: Institution>(inst: &I, t: &TheoryOf<I>, cfg: &RunConfig) -> Result<Vec<I::Model>> {
    let mut out = Vec::new();
    'models: for m in inst.models(&t.signature, cfg)? {
        for a in &t.axioms {
            if !inst.satisfies(&t.signature, &m, a)? {
                continue 'models;
            }
        }
        out.push(m);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entailment<M> {
    pub holds: bool,
    pub countermodel: Option<M>,
    /// Carrier bound for bounded verdicts.
    pub bound: Option<usize>,
}

pub fn entails<I: Institution>(
    inst: &I,
    t: &TheoryOf<I>,
    rho: &I::Sentence,
    cfg: &RunConfig,
) -> Result<Entailment<I::Model>> {
    inst.check_sentence(&t.signature, rho)?;
    let mut countermodel = None;
    for m in theory_models(inst, t, cfg)? {
        if !inst.satisfies(&t.signature, &m, rho)? {
            countermodel = Some(m);
            break;
        }
    }
    Ok(Entailment {
        holds: countermodel.is_none(),
        countermodel,
        bound: bound_of(inst, cfg),
    })
}

/// A model of `target` whose reduct along `chi` violates an axiom of `source`.
pub fn theory_morphism_counterexample<I: Institution>(
    inst: &I,
    chi: &Mor<I>,
    source: &TheoryOf<I>,
    target: &TheoryOf<I>,
    cfg: &RunConfig,
) -> Result<Option<I::Model>> {
    let cat = inst.category();
    if cat.source(chi) != &source.signature || cat.target(chi) != &target.signature {
        return Err(Error::typecheck("morphism does not fit the theories"));
    }
    let translated = source
        .axioms
        .iter()
        .map(|e| inst.translate(chi, e))
        .collect::<Result<Vec<_>>>()?;
    for m in theory_models(inst, target, cfg)? {
        for e in &translated {
            if !inst.satisfies(&target.signature, &m, e)? {
                return Ok(Some(m));
            }
        }
    }
    Ok(None)
}

/// `E′ ⊨ Sen(χ)E`.
pub fn is_theory_morphism<I: Institution>(
    inst: &I,
    chi: &Mor<I>,
    source: &TheoryOf<I>,
    target: &TheoryOf<I>,
    cfg: &RunConfig,
) -> Result<bool> {
    Ok(theory_morphism_counterexample(inst, chi, source, target, cfg)?.is_none())
}

/// A theory given by its signature and the models of its closure.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ClosedTheory<O, M> {
    pub signature: O,
    pub models: BTreeSet<M>,
}

pub type ClosedOf<I> = ClosedTheory<Obj<I>, <I as Institution>::Model>;

/// How a closed theory was presented, for display and serialization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Presentation<O, S> {
    /// The consequences of the generators.
    Generators { signature: O, generators: Vec<S> },
    /// The consequences of `generators` (over a larger signature) that are
    /// sentences over `signature`.
    Restriction { signature: O, generators: Vec<S> },
}

/// A morphism of closed theories: a base morphism whose reduct maps models of
/// the target into models of the source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoryMorphism<O, M, B> {
    pub source: ClosedTheory<O, M>,
    pub target: ClosedTheory<O, M>,
    pub base: B,
}

pub type TheoryMorphismOf<I> = TheoryMorphism<Obj<I>, <I as Institution>::Model, Mor<I>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoryInclusionKind {
    /// `Σ ⊆ Σ′` and `E = Sen(Σ) ∩ E′`.
    #[default]
    Closed,
    /// `Σ ⊆ Σ′` and the inclusion is a theory morphism.
    Strong,
}

impl std::fmt::Display for TheoryInclusionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Closed => "closed",
            Self::Strong => "strong",
        })
    }
}

/// The category of closed theories over a base institution, with one of the
/// two inherited inclusion systems.
pub struct ClosedTheories<'a, I: Institution> {
    inst: &'a I,
    kind: TheoryInclusionKind,
    cfg: RunConfig,
}

impl<'a, I: Institution> ClosedTheories<'a, I> {
    pub fn new(inst: &'a I, kind: TheoryInclusionKind, cfg: &RunConfig) -> Self {
        ClosedTheories {
            inst,
            kind,
            cfg: *cfg,
        }
    }

    pub fn kind(&self) -> TheoryInclusionKind {
        self.kind
    }

    pub fn institution(&self) -> &I {
        self.inst
    }

    fn all_models(&self, sig: &Obj<I>) -> Result<BTreeSet<I::Model>> {
        Ok(self.inst.models(sig, &self.cfg)?.into_iter().collect())
    }

    /// The models of the sentences a class validates. Without sentences
    /// every model qualifies; otherwise the class itself is taken as definable.
    fn hull(&self, sig: &Obj<I>, class: BTreeSet<I::Model>) -> Result<BTreeSet<I::Model>> {
        if self.inst.has_sentences(sig) {
            Ok(class)
        } else {
            self.all_models(sig)
        }
    }

    pub fn close(&self, t: &TheoryOf<I>) -> Result<ClosedOf<I>> {
        Ok(ClosedTheory {
            signature: t.signature.clone(),
            models: theory_models(self.inst, t, &self.cfg)?.into_iter().collect(),
        })
    }

    /// `E• ∩ Sen(sub)` as a closed theory over `sub`.
    pub fn restrict(&self, t: &ClosedOf<I>, sub: &Obj<I>) -> Result<ClosedOf<I>> {
        let incl = self.inst.category().inclusion(sub, &t.signature)?;
        let mut proj = BTreeSet::new();
        for m in &t.models {
            proj.insert(self.inst.reduct(&incl, m)?);
        }
        Ok(ClosedTheory {
            signature: sub.clone(),
            models: self.hull(sub, proj)?,
        })
    }

    /// The closure of `Sen(base)E` over the target of `base`.
    pub fn image(&self, base: &Mor<I>, t: &ClosedOf<I>) -> Result<ClosedOf<I>> {
        let target = self.inst.category().target(base).clone();
        let mut models = BTreeSet::new();
        for m in self.inst.models(&target, &self.cfg)? {
            if t.models.contains(&self.inst.reduct(base, &m)?) {
                models.insert(m);
            }
        }
        Ok(ClosedTheory {
            signature: target,
            models,
        })
    }

    /// A target model whose reduct is not a source model.
    pub fn morphism_counterexample(
        &self,
        base: &Mor<I>,
        source: &ClosedOf<I>,
        target: &ClosedOf<I>,
    ) -> Result<Option<I::Model>> {
        let cat = self.inst.category();
        if cat.source(base) != &source.signature || cat.target(base) != &target.signature {
            return Err(Error::typecheck("morphism does not fit the theories"));
        }
        for m in &target.models {
            if !source.models.contains(&self.inst.reduct(base, m)?) {
                return Ok(Some(m.clone()));
            }
        }
        Ok(None)
    }

    pub fn morphism(&self, source: ClosedOf<I>, target: ClosedOf<I>, base: Mor<I>) -> Result<TheoryMorphismOf<I>> {
        if let Some(m) = self.morphism_counterexample(&base, &source, &target)? {
            return Err(Error::contract(format!(
                "not a theory morphism: the target model {m:?} reduces outside the source theory"
            )));
        }
        Ok(TheoryMorphism { source, target, base })
    }
}

impl<I: Institution> InclusiveCategory for ClosedTheories<'_, I> {
    type Object = ClosedOf<I>;
    type Morphism = TheoryMorphismOf<I>;

    fn source<'a>(&self, m: &'a Self::Morphism) -> &'a Self::Object {
        &m.source
    }

    fn target<'a>(&self, m: &'a Self::Morphism) -> &'a Self::Object {
        &m.target
    }

    fn validate(&self, m: &Self::Morphism) -> Result<()> {
        self.inst.category().validate(&m.base)?;
        match self.morphism_counterexample(&m.base, &m.source, &m.target)? {
            None => Ok(()),
            Some(w) => Err(Error::validation(format!("target model {w:?} reduces outside the source theory"))),
        }
    }

    fn identity(&self, obj: &Self::Object) -> Self::Morphism {
        TheoryMorphism {
            source: obj.clone(),
            target: obj.clone(),
            base: self.inst.category().identity(&obj.signature),
        }
    }

    fn compose(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism> {
        if f.target != g.source {
            return Err(Error::contract("theory morphisms are not composable"));
        }
        Ok(TheoryMorphism {
            source: f.source.clone(),
            target: g.target.clone(),
            base: self.inst.category().compose(&f.base, &g.base)?,
        })
    }

    fn is_inclusion(&self, m: &Self::Morphism) -> bool {
        if !self.inst.category().is_inclusion(&m.base) {
            return false;
        }
        match self.kind {
            TheoryInclusionKind::Strong => self.validate(m).is_ok(),
            TheoryInclusionKind::Closed => self
                .restrict(&m.target, &m.source.signature)
                .is_ok_and(|r| r == m.source),
        }
    }

    fn is_surjection(&self, m: &Self::Morphism) -> bool {
        if !self.inst.category().is_surjection(&m.base) {
            return false;
        }
        match self.kind {
            TheoryInclusionKind::Closed => true,
            TheoryInclusionKind::Strong => self.image(&m.base, &m.source).is_ok_and(|t| t == m.target),
        }
    }

    fn inclusion(&self, sub: &Self::Object, sup: &Self::Object) -> Result<Self::Morphism> {
        let base = self.inst.category().inclusion(&sub.signature, &sup.signature)?;
        let m = TheoryMorphism {
            source: sub.clone(),
            target: sup.clone(),
            base,
        };
        if self.is_inclusion(&m) {
            Ok(m)
        } else {
            Err(Error::contract(format!("no {} theory inclusion between these theories", self.kind)))
        }
    }

    fn factorize(&self, f: &Self::Morphism) -> Result<Factorization<Self::Object, Self::Morphism>> {
        let base = self.inst.category().factorize(&f.base)?;
        let image = match self.kind {
            TheoryInclusionKind::Closed => self.restrict(&f.target, &base.image)?,
            TheoryInclusionKind::Strong => self.image(&base.surjection, &f.source)?,
        };
        Ok(Factorization {
            surjection: self.morphism(f.source.clone(), image.clone(), base.surjection)?,
            inclusion: self.morphism(image.clone(), f.target.clone(), base.inclusion)?,
            image,
        })
    }
}

impl<I: Institution> SemiInclusivePullbacks for ClosedTheories<'_, I> {
    fn semi_inclusive_pullback(
        &self,
        f: &Self::Morphism,
        incl: &Self::Morphism,
    ) -> Result<PullbackSquare<Self::Morphism>> {
        if !self.is_inclusion(incl) {
            return Err(Error::contract("pullback leg is not a theory inclusion"));
        }
        let base = self.inst.category().semi_inclusive_pullback(&f.base, &incl.base)?;
        let sig = self.inst.category().source(&base.left).clone();
        // the weakest theory over the pullback signature mapping into both
        let mut models = BTreeSet::new();
        for m in &f.source.models {
            models.insert(self.inst.reduct(&base.left, m)?);
        }
        for m in &incl.source.models {
            models.insert(self.inst.reduct(&base.bottom, m)?);
        }
        let corner = ClosedTheory {
            models: self.hull(&sig, models)?,
            signature: sig,
        };
        Ok(PullbackSquare {
            top: f.clone(),
            right: incl.clone(),
            bottom: self.morphism(corner.clone(), incl.source.clone(), base.bottom)?,
            left: self.morphism(corner, f.source.clone(), base.left)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flag<M> {
    pub holds: bool,
    /// A target model refuting the flag, when there is one.
    pub counterexample: Option<M>,
}

impl<M> Flag<M> {
    fn from_counterexample(c: Option<M>) -> Self {
        Flag {
            holds: c.is_none(),
            counterexample: c,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoryMorphismReport<M> {
    /// Total, and an ordinary theory morphism.
    pub plain: Flag<M>,
    pub weak32: Flag<M>,
    pub strong32: Flag<M>,
    pub closed_partial: Flag<M>,
    pub strong_partial: Flag<M>,
    pub bound: Option<usize>,
}

impl<M> TheoryMorphismReport<M> {
    /// Checks the nesting strong32 ⇒ weak32 ⇔ closed-partial ⇒ strong-partial.
    pub fn nesting_holds(&self) -> bool {
        (!self.strong32.holds || self.weak32.holds)
            && self.weak32.holds == self.closed_partial.holds
            && (!self.closed_partial.holds || self.strong_partial.holds)
    }
}

/// The candidate closed-partial morphism induced by `phi`: domain theory
/// `E• ∩ Sen(dom φ)`, total part `φ⁰`. Returns the domain theory and a
/// refuting target model if `φ⁰` is not a theory morphism out of it.
fn induced_domain<I: Institution>(
    cat: &ClosedTheories<'_, I>,
    phi: &PartialOf<I>,
    source: &ClosedOf<I>,
    target: &ClosedOf<I>,
) -> Result<(ClosedOf<I>, Option<I::Model>)> {
    let dom = cat.restrict(source, phi.dom())?;
    let cex = cat.morphism_counterexample(phi.total(), &dom, target)?;
    Ok((dom, cex))
}

/// Whether a candidate is a partial morphism of closed theories under the
/// inclusion system of `cat`: the domain theory includes into the source and
/// the total part is a theory morphism.
pub fn partial_theory_morphism_counterexample<I: Institution>(
    cat: &ClosedTheories<'_, I>,
    phi: &PartialOf<I>,
    source: &ClosedOf<I>,
    dom: &ClosedOf<I>,
    target: &ClosedOf<I>,
) -> Result<std::result::Result<Option<I::Model>, String>> {
    if phi.dom() != &dom.signature || phi.source() != &source.signature || phi.target() != &target.signature {
        return Err(Error::typecheck("partial morphism does not fit the theories"));
    }
    if cat.inclusion(dom, source).is_err() {
        return Ok(Err(format!("the domain theory is not a {} subtheory of the source", cat.kind())));
    }
    Ok(Ok(cat.morphism_counterexample(phi.total(), dom, target)?))
}

pub fn is_strong_partial_theory_morphism<I: Institution>(
    inst: &I,
    phi: &PartialOf<I>,
    source: &ClosedOf<I>,
    dom: &ClosedOf<I>,
    target: &ClosedOf<I>,
    cfg: &RunConfig,
) -> Result<bool> {
    let cat = ClosedTheories::new(inst, TheoryInclusionKind::Strong, cfg);
    Ok(matches!(partial_theory_morphism_counterexample(&cat, phi, source, dom, target)?, Ok(None)))
}

pub fn is_closed_partial_theory_morphism<I: Institution>(
    inst: &I,
    phi: &PartialOf<I>,
    source: &ClosedOf<I>,
    dom: &ClosedOf<I>,
    target: &ClosedOf<I>,
    cfg: &RunConfig,
) -> Result<bool> {
    let cat = ClosedTheories::new(inst, TheoryInclusionKind::Closed, cfg);
    Ok(matches!(partial_theory_morphism_counterexample(&cat, phi, source, dom, target)?, Ok(None)))
}

pub fn classify_32_theory_morphism<I: Institution>(
    inst: &I,
    phi: &PartialOf<I>,
    source: &TheoryOf<I>,
    target: &TheoryOf<I>,
    cfg: &RunConfig,
) -> Result<TheoryMorphismReport<I::Model>> {
    crate::three_halves::check_partial(inst, phi)?;
    if phi.source() != &source.signature || phi.target() != &target.signature {
        return Err(Error::typecheck("partial morphism does not fit the theories"));
    }
    let closed = ClosedTheories::new(inst, TheoryInclusionKind::Closed, cfg);
    let strong = ClosedTheories::new(inst, TheoryInclusionKind::Strong, cfg);
    let src_models = theory_models(inst, source, cfg)?;
    let tgt_models = theory_models(inst, target, cfg)?;

    let plain = if phi.is_defined_everywhere() {
        Flag::from_counterexample(theory_morphism_counterexample(inst, phi.total(), source, target, cfg)?)
    } else {
        Flag {
            holds: false,
            counterexample: None,
        }
    };

    let mut strong_cex = None;
    for m in &tgt_models {
        if pmod_reduct_among(inst, phi, m, &src_models)?.is_empty() {
            strong_cex = Some(m.clone());
            break;
        }
    }

    // every target model must reduce into the projection of the source models
    let mut weak_cex = None;
    if inst.has_sentences(phi.dom()) {
        let mut projection = BTreeSet::new();
        for m in &src_models {
            projection.insert(inst.reduct(phi.witness(), m)?);
        }
        for m in &tgt_models {
            if !projection.contains(&inst.reduct(phi.total(), m)?) {
                weak_cex = Some(m.clone());
                break;
            }
        }
    }

    let src_closed = closed.close(source)?;
    let tgt_closed = closed.close(target)?;
    let (dom, closed_cex) = induced_domain(&closed, phi, &src_closed, &tgt_closed)?;
    let closed_ok = partial_theory_morphism_counterexample(&closed, phi, &src_closed, &dom, &tgt_closed)?;
    let strong_ok = partial_theory_morphism_counterexample(&strong, phi, &src_closed, &dom, &tgt_closed)?;
    let as_flag = |r: std::result::Result<Option<I::Model>, String>| match r {
        Ok(c) => Flag::from_counterexample(c),
        Err(_) => Flag {
            holds: false,
            counterexample: None,
        },
    };
    debug_assert_eq!(closed_cex.is_none(), matches!(closed_ok, Ok(None)));

    Ok(TheoryMorphismReport {
        plain,
        weak32: Flag::from_counterexample(weak_cex),
        strong32: Flag::from_counterexample(strong_cex),
        closed_partial: as_flag(closed_ok),
        strong_partial: as_flag(strong_ok),
        bound: bound_of(inst, cfg),
    })
}

/// A weak 3/2-theory morphism seen as a partial morphism of closed theories.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedPartial<O, M, B, S> {
    pub morphism: PartialMorphism<ClosedTheory<O, M>, TheoryMorphism<O, M, B>>,
    pub dom_presentation: Presentation<O, S>,
}

pub type ClosedPartialOf<I> = ClosedPartial<Obj<I>, <I as Institution>::Model, Mor<I>, <I as Institution>::Sentence>;

pub fn to_closed_partial<I: Institution>(
    inst: &I,
    phi: &PartialOf<I>,
    source: &TheoryOf<I>,
    target: &TheoryOf<I>,
    cfg: &RunConfig,
) -> Result<ClosedPartialOf<I>> {
    let report = classify_32_theory_morphism(inst, phi, source, target, cfg)?;
    if !report.weak32.holds {
        return Err(Error::contract("not a weak 3/2-theory morphism"));
    }
    let cat = ClosedTheories::new(inst, TheoryInclusionKind::Closed, cfg);
    let src = cat.close(source)?;
    let tgt = cat.close(target)?;
    let dom = cat.restrict(&src, phi.dom())?;
    let total = cat.morphism(dom, tgt, phi.total().clone())?;
    Ok(ClosedPartial {
        morphism: PartialMorphism::new(&cat, src, total)?,
        dom_presentation: Presentation::Restriction {
            signature: phi.dom().clone(),
            generators: source.axioms.clone(),
        },
    })
}

/// Truth tables (bitmasks over the `2^n` valuations) of every PL sentence
/// over `n` symbols of depth at most `depth`, up to equivalence.
pub fn pl_tables_up_to_depth(n: usize, depth: usize) -> Result<BTreeSet<u64>> {
    if n > 6 {
        return Err(Error::resource("truth-table symbols", n as u128, 6));
    }
    let rows = 1usize << n;
    let full = if rows == 64 { u64::MAX } else { (1u64 << rows) - 1 };
    let mut level: BTreeSet<u64> = (0..n)
        .map(|i| (0..rows).filter(|r| r >> i & 1 == 1).fold(0u64, |t, r| t | 1 << r))
        .collect();
    for _ in 0..depth {
        let prev: Vec<u64> = level.iter().copied().collect();
        for &a in &prev {
            level.insert(!a & full);
            for &b in &prev {
                level.insert(a & b);
            }
        }
    }
    Ok(level)
}

/// Decides `pSen(φ)E• ⊆ E′•` for PL by quantifying over every sentence over
/// `dom φ` up to `depth`: whenever `E` entails it, `E′` must entail its
/// translation. Sentences are handled through their truth tables; a
/// conjunction is entailed exactly when both conjuncts are, so the top-level
/// conjunctions of the last level need no separate check.
pub fn pl_weak32_syntactic(
    phi: &PartialMorphism<PlSignature, crate::pl::PlMorphism>,
    source: &Theory<PlSignature, PlSentence>,
    target: &Theory<PlSignature, PlSentence>,
    depth: usize,
    cap: usize,
) -> Result<bool> {
    let dom: Vec<&String> = phi.dom().symbols().iter().collect();
    if dom.is_empty() {
        return Ok(true);
    }
    let row = |holds: &dyn Fn(&str) -> bool| -> usize {
        dom.iter().enumerate().filter(|(_, s)| holds(s)).fold(0, |r, (i, _)| r | 1 << i)
    };
    let models_of = |t: &Theory<PlSignature, PlSentence>| -> Result<Vec<PlModel>> {
        Ok(pl_enumerate_models(&t.signature, cap)?
            .into_iter()
            .filter(|m| t.axioms.iter().all(|a| crate::pl::pl_satisfies(m, a)))
            .collect())
    };
    let source_rows = models_of(source)?
        .iter()
        .fold(0u64, |acc, m| acc | 1 << row(&|s| m.holds(s)));
    let target_rows = models_of(target)?
        .iter()
        .fold(0u64, |acc, m| acc | 1 << row(&|s| m.holds(phi.total().apply(s))));
    let n = dom.len();
    let rows = 1usize << n;
    let full = if rows == 64 { u64::MAX } else { (1u64 << rows) - 1 };
    let below = if depth == 0 {
        pl_tables_up_to_depth(n, 0)?
    } else {
        let prev = pl_tables_up_to_depth(n, depth - 1)?;
        prev.iter().flat_map(|&t| [t, !t & full]).collect()
    };
    Ok(below
        .into_iter()
        .all(|t| source_rows & !t != 0 || target_rows & !t == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partial::compose;
    use crate::pl::{Pl, PlMorphism, SetInclusions};

    fn sig(xs: &[&str]) -> PlSignature {
        PlSignature::new(xs.iter().copied())
    }

    fn v(s: &str) -> PlSentence {
        PlSentence::var(s)
    }

    fn th(xs: &[&str], axioms: Vec<PlSentence>) -> Theory<PlSignature, PlSentence> {
        Theory::new(&Pl::new(), sig(xs), axioms).unwrap()
    }

    fn pm(src: &[&str], dom: &[&str], tgt: &[&str], pairs: &[(&str, &str)]) -> PartialOf<Pl> {
        let total = PlMorphism::from_pairs(sig(dom), sig(tgt), pairs.iter().copied()).unwrap();
        PartialMorphism::new(&SetInclusions, sig(src), total).unwrap()
    }

    #[test]
    fn entailment() {
        let pl = Pl::new();
        let cfg = RunConfig::default();
        let t = th(&["p", "q"], vec![PlSentence::and(v("p"), v("q"))]);
        assert!(entails(&pl, &t, &v("p"), &cfg).unwrap().holds);
        let e = entails(&pl, &th(&["p"], vec![]), &v("p"), &cfg).unwrap();
        assert_eq!(e.countermodel, Some(PlModel::default()));
        assert!(entails(&pl, &t, &t.axioms[0], &cfg).unwrap().holds);
    }

    #[test]
    fn theory_morphisms() {
        let pl = Pl::new();
        let cfg = RunConfig::default();
        let t = th(&["p"], vec![v("p")]);
        assert!(is_theory_morphism(&pl, &PlMorphism::identity(&sig(&["p"])), &t, &t, &cfg).unwrap());
        let chi = PlMorphism::from_pairs(sig(&["p"]), sig(&["a"]), [("p", "a")]).unwrap();
        assert!(is_theory_morphism(&pl, &chi, &t, &th(&["a"], vec![v("a")]), &cfg).unwrap());
        let cex = theory_morphism_counterexample(&pl, &chi, &t, &th(&["a"], vec![]), &cfg).unwrap();
        assert_eq!(cex, Some(PlModel::default()));
    }

    #[test]
    fn classification_examples() {
        let pl = Pl::new();
        let cfg = RunConfig::default();
        let phi = pm(&["p", "q"], &["p"], &["a"], &[("p", "a")]);
        let r = classify_32_theory_morphism(&pl, &phi, &th(&["p", "q"], vec![v("p")]), &th(&["a"], vec![v("a")]), &cfg).unwrap();
        assert!(r.strong32.holds && r.weak32.holds && r.closed_partial.holds && r.strong_partial.holds);
        assert!(!r.plain.holds);

        let phi = pm(&["p"], &["p"], &["a"], &[("p", "a")]);
        let r = classify_32_theory_morphism(&pl, &phi, &th(&["p"], vec![v("p")]), &th(&["a"], vec![]), &cfg).unwrap();
        assert!(!r.weak32.holds && !r.strong32.holds && !r.plain.holds);
        assert_eq!(r.weak32.counterexample, Some(PlModel::default()));
        assert!(r.nesting_holds());

        let id = pm(&["p"], &["p"], &["p"], &[("p", "p")]);
        let t = th(&["p"], vec![v("p")]);
        let r = classify_32_theory_morphism(&pl, &id, &t, &t, &cfg).unwrap();
        assert!(r.plain.holds && r.weak32.holds);
    }

    #[test]
    fn empty_domain_is_vacuously_weak() {
        let pl = Pl::new();
        let cfg = RunConfig::default();
        let inconsistent = th(&["p"], vec![PlSentence::and(v("p"), PlSentence::not(v("p")))]);
        let phi = pm(&["p"], &[], &["a"], &[]);
        let r = classify_32_theory_morphism(&pl, &phi, &inconsistent, &th(&["a"], vec![]), &cfg).unwrap();
        assert!(r.weak32.holds && r.closed_partial.holds);
        assert!(!r.strong32.holds);
        assert!(pl_weak32_syntactic(&phi, &inconsistent, &th(&["a"], vec![]), 4, 20).unwrap());
    }

    #[test]
    fn closed_partial_construction() {
        let pl = Pl::new();
        let cfg = RunConfig::default();
        let phi = pm(&["p", "q"], &["p"], &["a"], &[("p", "a")]);
        let cp = to_closed_partial(&pl, &phi, &th(&["p", "q"], vec![v("p")]), &th(&["a"], vec![v("a")]), &cfg).unwrap();
        let dom = cp.morphism.dom();
        assert_eq!(dom.signature, sig(&["p"]));
        assert_eq!(dom.models, BTreeSet::from([PlModel::new(["p"])]));

        let phi = pm(&["p"], &[], &["a"], &[]);
        let cp = to_closed_partial(&pl, &phi, &th(&["p"], vec![v("p")]), &th(&["a"], vec![]), &cfg).unwrap();
        assert_eq!(cp.morphism.dom().signature, PlSignature::empty());
        assert_eq!(cp.morphism.dom().models.len(), 1);

        let total = pm(&["p"], &["p"], &["a"], &[("p", "a")]);
        let cp = to_closed_partial(&pl, &total, &th(&["p"], vec![v("p")]), &th(&["a"], vec![v("a")]), &cfg).unwrap();
        assert!(cp.morphism.is_defined_everywhere());

        assert!(to_closed_partial(&pl, &total, &th(&["p"], vec![v("p")]), &th(&["a"], vec![]), &cfg).is_err());
    }

    #[test]
    fn theory_inclusions() {
        let pl = Pl::new();
        let cfg = RunConfig::default();
        let closed = ClosedTheories::new(&pl, TheoryInclusionKind::Closed, &cfg);
        let strong = ClosedTheories::new(&pl, TheoryInclusionKind::Strong, &cfg);
        let big = closed.close(&th(&["p", "q"], vec![v("p")])).unwrap();
        let small = closed.close(&th(&["p"], vec![v("p")])).unwrap();
        let weak = closed.close(&th(&["p"], vec![])).unwrap();
        for cat in [&closed, &strong] {
            assert!(cat.is_inclusion(&cat.identity(&big)));
            assert!(cat.inclusion(&small, &big).is_ok());
        }
        assert!(closed.inclusion(&weak, &big).is_err());
        assert!(strong.inclusion(&weak, &big).is_ok());
    }

    #[test]
    fn strong_partial_only() {
        let pl = Pl::new();
        let cfg = RunConfig::default();
        let closed = ClosedTheories::new(&pl, TheoryInclusionKind::Closed, &cfg);
        let src = closed.close(&th(&["p", "q"], vec![v("p")])).unwrap();
        let tgt = closed.close(&th(&["a"], vec![])).unwrap();
        let dom = closed.close(&th(&["p"], vec![])).unwrap();
        let phi = pm(&["p", "q"], &["p"], &["a"], &[("p", "a")]);
        assert!(is_strong_partial_theory_morphism(&pl, &phi, &src, &dom, &tgt, &cfg).unwrap());
        assert!(!is_closed_partial_theory_morphism(&pl, &phi, &src, &dom, &tgt, &cfg).unwrap());
        let id = pm(&["p", "q"], &["p", "q"], &["p", "q"], &[("p", "p"), ("q", "q")]);
        assert!(is_strong_partial_theory_morphism(&pl, &id, &src, &src, &src, &cfg).unwrap());
    }

    #[test]
    fn factorization_in_both_systems() {
        let pl = Pl::new();
        let cfg = RunConfig::default();
        for kind in [TheoryInclusionKind::Closed, TheoryInclusionKind::Strong] {
            let cat = ClosedTheories::new(&pl, kind, &cfg);
            let src = cat.close(&th(&["p", "q"], vec![v("p")])).unwrap();
            let tgt = cat.close(&th(&["a", "b"], vec![PlSentence::and(v("a"), v("b"))])).unwrap();
            let base = PlMorphism::from_pairs(sig(&["p", "q"]), sig(&["a", "b"]), [("p", "a"), ("q", "a")]).unwrap();
            let f = cat.morphism(src, tgt, base).unwrap();
            let fact = cat.factorize(&f).unwrap();
            assert!(cat.is_surjection(&fact.surjection), "{kind}");
            assert!(cat.is_inclusion(&fact.inclusion), "{kind}");
            assert_eq!(cat.compose(&fact.surjection, &fact.inclusion).unwrap(), f);
        }
    }

    #[test]
    fn closed_partial_is_functorial() {
        let pl = Pl::new();
        let cfg = RunConfig::default();
        let t0 = th(&["p", "q"], vec![PlSentence::and(v("p"), v("q"))]);
        let t1 = th(&["a", "b"], vec![v("a")]);
        let t2 = th(&["x"], vec![v("x")]);
        let f = pm(&["p", "q"], &["p"], &["a", "b"], &[("p", "a")]);
        let g = pm(&["a", "b"], &["a"], &["x"], &[("a", "x")]);
        let fg = compose(&SetInclusions, &f, &g).unwrap();
        let cat = ClosedTheories::new(&pl, TheoryInclusionKind::Closed, &cfg);
        let a = to_closed_partial(&pl, &f, &t0, &t1, &cfg).unwrap().morphism;
        let b = to_closed_partial(&pl, &g, &t1, &t2, &cfg).unwrap().morphism;
        let ab = to_closed_partial(&pl, &fg, &t0, &t2, &cfg).unwrap().morphism;
        assert_eq!(compose(&cat, &a, &b).unwrap(), ab);
    }

    #[test]
    fn truth_tables() {
        assert_eq!(pl_tables_up_to_depth(1, 0).unwrap(), BTreeSet::from([0b10]));
        assert_eq!(pl_tables_up_to_depth(1, 1).unwrap(), BTreeSet::from([0b01, 0b10]));
        // two symbols: exclusive or and its negation first appear at depth 4
        let d3 = pl_tables_up_to_depth(2, 3).unwrap();
        assert!(d3.contains(&0) && d3.contains(&0b1111));
        assert!(!d3.contains(&0b0110) && !d3.contains(&0b1001));
        assert_eq!(d3.len(), 14);
        assert_eq!(pl_tables_up_to_depth(2, 4).unwrap().len(), 16);
    }

    #[test]
    fn syntactic_and_semantic_weak32_agree() {
        let pl = Pl::new();
        let cfg = RunConfig::default();
        let phi = pm(&["p", "q"], &["p", "q"], &["a"], &[("p", "a"), ("q", "a")]);
        let cases = [
            (th(&["p", "q"], vec![PlSentence::implies(v("p"), v("q"))]), th(&["a"], vec![])),
            (th(&["p", "q"], vec![PlSentence::and(v("p"), PlSentence::not(v("q")))]), th(&["a"], vec![v("a")])),
            (th(&["p", "q"], vec![v("p")]), th(&["a"], vec![v("a")])),
        ];
        for (s, t) in cases {
            let r = classify_32_theory_morphism(&pl, &phi, &s, &t, &cfg).unwrap();
            assert_eq!(r.weak32.holds, pl_weak32_syntactic(&phi, &s, &t, 4, 20).unwrap());
        }
    }
}
