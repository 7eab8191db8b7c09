//! The 3/2-institution generated by a base institution: sentences translate
//! only when they live over the domain of definition, and a model reduces to
//! the set of all models agreeing with it on that domain.

use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::inclusion::InclusiveCategory;
use crate::institution::{Institution, Mor};
use crate::partial::{compose, PartialMorphism};
use crate::pl::{pl_enumerate_models, pl_reduct, PlModel, PlMorphism, PlSignature};

pub type PartialOf<I> = PartialMorphism<crate::institution::Obj<I>, Mor<I>>;

/// `pSen(φ)ρ`: `None` when `ρ` mentions symbols outside `dom φ`.
pub fn psen_translate<I: Institution>(
    inst: &I,
    phi: &PartialOf<I>,
    rho: &I::Sentence,
) -> Result<Option<I::Sentence>> {
    inst.check_sentence(phi.source(), rho)?;
    if inst.check_sentence(phi.dom(), rho).is_err() {
        return Ok(None);
    }
    inst.translate(phi.total(), rho).map(Some)
}

/// The models `M` over the source with `M|dom = Mod(φ⁰)M′`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductSet<M> {
    pub target_model: M,
    pub members: Vec<M>,
    /// Carrier bound the set is relative to; `None` when semantics are exact.
    pub bound: Option<usize>,
}

impl<M: PartialEq> ReductSet<M> {
    pub fn contains(&self, m: &M) -> bool {
        self.members.contains(m)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn bound_of<I: Institution>(inst: &I, cfg: &RunConfig) -> Option<usize> {
    (!inst.exact_semantics()).then_some(cfg.max_carrier)
}

/// Filters `candidates` (models of the source) by the reduct equation.
pub fn pmod_reduct_among<I: Institution>(
    inst: &I,
    phi: &PartialOf<I>,
    target_model: &I::Model,
    candidates: &[I::Model],
) -> Result<Vec<I::Model>> {
    let restricted = inst.reduct(phi.total(), target_model)?;
    let mut out = Vec::new();
    for m in candidates {
        if inst.reduct(phi.witness(), m)? == restricted {
            out.push(m.clone());
        }
    }
    Ok(out)
}

pub fn pmod_reduct<I: Institution>(
    inst: &I,
    phi: &PartialOf<I>,
    target_model: &I::Model,
    cfg: &RunConfig,
) -> Result<ReductSet<I::Model>> {
    inst.check_model(phi.target(), target_model)?;
    let candidates = inst.models(phi.source(), cfg)?;
    Ok(ReductSet {
        target_model: target_model.clone(),
        members: pmod_reduct_among(inst, phi, target_model, &candidates)?,
        bound: bound_of(inst, cfg),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SatisfactionReport<S, M> {
    pub translated: S,
    pub target_holds: bool,
    pub reducts_checked: usize,
    /// Reducts whose verdict differs from the target model's.
    pub violations: Vec<M>,
    pub bound: Option<usize>,
}

impl<S, M> SatisfactionReport<S, M> {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `M′ ⊨ pSen(φ)ρ` iff `M ⊨ ρ`, for every `M` in the reduct set of `M′`.
pub fn check_satisfaction<I: Institution>(
    inst: &I,
    phi: &PartialOf<I>,
    target_model: &I::Model,
    rho: &I::Sentence,
    cfg: &RunConfig,
) -> Result<SatisfactionReport<I::Sentence, I::Model>> {
    let Some(translated) = psen_translate(inst, phi, rho)? else {
        return Err(Error::contract(format!("{rho} is outside the domain of the translation")));
    };
    let target_holds = inst.satisfies(phi.target(), target_model, &translated)?;
    let reducts = pmod_reduct(inst, phi, target_model, cfg)?;
    let mut violations = Vec::new();
    for m in &reducts.members {
        if inst.satisfies(phi.source(), m, rho)? != target_holds {
            violations.push(m.clone());
        }
    }
    Ok(SatisfactionReport {
        translated,
        target_holds,
        reducts_checked: reducts.len(),
        violations,
        bound: reducts.bound,
    })
}

/// Whether `pSen(φ)` is total: the domain is everything, or there is nothing
/// to translate in the first place.
pub fn is_sen_maximal<I: Institution>(inst: &I, phi: &PartialOf<I>) -> bool {
    phi.is_defined_everywhere() || !inst.has_sentences(phi.source())
}

/// Whether every enumerated target model has exactly one reduct.
pub fn is_mod_maximal<I: Institution>(inst: &I, phi: &PartialOf<I>, cfg: &RunConfig) -> Result<bool> {
    let sources = inst.models(phi.source(), cfg)?;
    for m in inst.models(phi.target(), cfg)? {
        if pmod_reduct_among(inst, phi, &m, &sources)?.len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_total<I: Institution>(inst: &I, phi: &PartialOf<I>, cfg: &RunConfig) -> Result<bool> {
    Ok(is_sen_maximal(inst, phi) && is_mod_maximal(inst, phi, cfg)?)
}

/// A target model on which `Mod(φ);Mod(θ)` and `Mod(θ;φ)` differ, if any.
/// `theta` ends where `phi` starts.
pub fn mod_strictness_witness<I: Institution>(
    inst: &I,
    phi: &PartialOf<I>,
    theta: &PartialOf<I>,
    cfg: &RunConfig,
) -> Result<Option<I::Model>> {
    if theta.target() != phi.source() {
        return Err(Error::contract("theta must end at the source of phi"));
    }
    let composite = compose(inst.category(), theta, phi)?;
    let mid = inst.models(phi.source(), cfg)?;
    let bottom = inst.models(theta.source(), cfg)?;
    for m in inst.models(phi.target(), cfg)? {
        let mut stepwise = Vec::new();
        for m1 in pmod_reduct_among(inst, phi, &m, &mid)? {
            stepwise.extend(pmod_reduct_among(inst, theta, &m1, &bottom)?);
        }
        stepwise.sort();
        stepwise.dedup();
        let mut direct = pmod_reduct_among(inst, &composite, &m, &bottom)?;
        direct.sort();
        if stepwise != direct {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

pub fn is_mod_strict<I: Institution>(
    inst: &I,
    phi: &PartialOf<I>,
    theta: &PartialOf<I>,
    cfg: &RunConfig,
) -> Result<bool> {
    Ok(mod_strictness_witness(inst, phi, theta, cfg)?.is_none())
}

/// The reduct of the PL homomorphism `M′ ⊆ N′`: all inclusions `M ⊆ N` with
/// `M` a reduct of `M′` and `N` a reduct of `N′`.
pub fn pl_homomorphism_reduct(
    phi: &PartialMorphism<PlSignature, PlMorphism>,
    lower: &PlModel,
    upper: &PlModel,
    cap: usize,
) -> Result<Vec<(PlModel, PlModel)>> {
    if !lower.0.is_subset(&upper.0) {
        return Err(Error::contract("not a homomorphism: the models are not nested"));
    }
    let models = pl_enumerate_models(phi.source(), cap)?;
    let reducts = |m: &PlModel| -> Result<Vec<PlModel>> {
        let r = pl_reduct(phi.total(), m)?;
        let mut out = Vec::new();
        for x in &models {
            if pl_reduct(phi.witness(), x)? == r {
                out.push(x.clone());
            }
        }
        Ok(out)
    };
    let lows = reducts(lower)?;
    let highs = reducts(upper)?;
    let mut out = Vec::new();
    for m in &lows {
        for n in &highs {
            if m.0.is_subset(&n.0) {
                out.push((m.clone(), n.clone()));
            }
        }
    }
    Ok(out)
}

/// Checks that `phi` is a well-formed arrow in the base category's sense.
pub fn check_partial<I: Institution>(inst: &I, phi: &PartialOf<I>) -> Result<()> {
    let cat = inst.category();
    cat.validate(phi.total())?;
    if !cat.is_inclusion(phi.witness()) {
        return Err(Error::validation("domain witness is not an inclusion"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partial::embed;
    use crate::pl::{Pl, PlSentence, SetInclusions};

    fn sig(xs: &[&str]) -> PlSignature {
        PlSignature::new(xs.iter().copied())
    }

    fn pm(src: &[&str], dom: &[&str], tgt: &[&str], pairs: &[(&str, &str)]) -> PartialOf<Pl> {
        let total = PlMorphism::from_pairs(sig(dom), sig(tgt), pairs.iter().copied()).unwrap();
        PartialMorphism::new(&SetInclusions, sig(src), total).unwrap()
    }

    fn v(s: &str) -> PlSentence {
        PlSentence::var(s)
    }

    #[test]
    fn partial_translation() {
        let pl = Pl::new();
        let phi = pm(&["p", "q"], &["p"], &["a"], &[("p", "a")]);
        let pnp = PlSentence::and(v("p"), PlSentence::not(v("p")));
        assert_eq!(
            psen_translate(&pl, &phi, &pnp).unwrap(),
            Some(PlSentence::and(v("a"), PlSentence::not(v("a"))))
        );
        assert_eq!(psen_translate(&pl, &phi, &PlSentence::and(v("p"), v("q"))).unwrap(), None);
        assert!(psen_translate(&pl, &phi, &v("z")).is_err());
    }

    #[test]
    fn reduct_sets() {
        let pl = Pl::new();
        let cfg = RunConfig::default();
        let phi = pm(&["p", "q"], &["p"], &["a"], &[("p", "a")]);
        let r = pmod_reduct(&pl, &phi, &PlModel::new(["a"]), &cfg).unwrap();
        // oracle: the subsets of {p, q} that contain p
        let expected: Vec<PlModel> = pl_enumerate_models(&sig(&["p", "q"]), 20)
            .unwrap()
            .into_iter()
            .filter(|m| m.holds("p"))
            .collect();
        assert_eq!(r.members, expected);
        assert_eq!(r.members, vec![PlModel::new(["p"]), PlModel::new(["p", "q"])]);
        assert_eq!(r.bound, None);

        let empty = pm(&["p", "q"], &[], &["a"], &[]);
        assert_eq!(pmod_reduct(&pl, &empty, &PlModel::default(), &cfg).unwrap().len(), 4);

        let total = embed(&SetInclusions, &PlMorphism::from_pairs(sig(&["p"]), sig(&["a"]), [("p", "a")]).unwrap());
        assert_eq!(pmod_reduct(&pl, &total, &PlModel::new(["a"]), &cfg).unwrap().members, vec![PlModel::new(["p"])]);
    }

    #[test]
    fn satisfaction_examples() {
        let pl = Pl::new();
        let cfg = RunConfig::default();
        let phi = pm(&["p", "q"], &["p"], &["a"], &[("p", "a")]);
        let r = check_satisfaction(&pl, &phi, &PlModel::new(["a"]), &v("p"), &cfg).unwrap();
        assert!(r.target_holds && r.holds() && r.reducts_checked == 2);
        let r = check_satisfaction(&pl, &phi, &PlModel::default(), &v("p"), &cfg).unwrap();
        assert!(!r.target_holds && r.holds());
        assert!(check_satisfaction(&pl, &phi, &PlModel::default(), &v("q"), &cfg).is_err());
    }

    #[test]
    fn maximality() {
        let pl = Pl::new();
        let cfg = RunConfig::default();
        let phi = pm(&["p", "q"], &["p"], &["a"], &[("p", "a")]);
        assert!(!is_sen_maximal(&pl, &phi));
        assert!(!is_mod_maximal(&pl, &phi, &cfg).unwrap());
        let chi = PlMorphism::from_pairs(sig(&["p", "q"]), sig(&["a"]), [("p", "a"), ("q", "a")]).unwrap();
        assert!(is_total(&pl, &embed(&SetInclusions, &chi), &cfg).unwrap());
        let nothing = pm(&[], &[], &["a"], &[]);
        assert!(is_sen_maximal(&pl, &nothing));
    }

    #[test]
    fn strictness_counterexample() {
        let pl = Pl::new();
        let cfg = RunConfig::default();
        // θ collapses r, s onto p; φ forgets p entirely
        let theta = embed(
            &SetInclusions,
            &PlMorphism::from_pairs(sig(&["r", "s"]), sig(&["p"]), [("r", "p"), ("s", "p")]).unwrap(),
        );
        let phi = pm(&["p"], &[], &["a"], &[]);
        let w = mod_strictness_witness(&pl, &phi, &theta, &cfg).unwrap();
        assert!(w.is_some());
        // stepwise reducts keep r and s equal; the composite leaves them free
        let composite = compose(&SetInclusions, &theta, &phi).unwrap();
        assert_eq!(pmod_reduct(&pl, &composite, &PlModel::default(), &cfg).unwrap().len(), 4);
        assert!(is_mod_strict(&pl, &embed(&SetInclusions, theta.total()), &pm(&["x"], &["x"], &["r", "s"], &[("x", "r")]), &cfg).unwrap());
    }

    #[test]
    fn homomorphism_reducts() {
        let phi = pm(&["p", "q"], &["p"], &["a"], &[("p", "a")]);
        let homs = pl_homomorphism_reduct(&phi, &PlModel::default(), &PlModel::new(["a"]), 20).unwrap();
        // M ∈ {∅, {q}}, N ∈ {{p}, {p,q}}, M ⊆ N
        assert_eq!(homs.len(), 3);
        assert!(pl_homomorphism_reduct(&phi, &PlModel::new(["a"]), &PlModel::default(), 20).is_err());
    }
}
