//! Partial signature morphisms over a category with an inclusion system.
//!
//! A partial morphism `Σ ⇀ Σ′` is a subobject `dom ⊆ Σ` together with a total
//! morphism `dom → Σ′`. Composition pulls the first total part back along the
//! domain inclusion of the second.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inclusion::{
    Factorization, FiniteEnumeration, InclusiveCategory, SemiInclusivePullbacks,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialMorphism<O, M> {
    source: O,
    target: O,
    dom: O,
    witness: M,
    total: M,
}

pub type PMor<C> = PartialMorphism<<C as InclusiveCategory>::Object, <C as InclusiveCategory>::Morphism>;

impl<O: Clone + Eq, M: Clone> PartialMorphism<O, M> {
    /// Builds `source ⇀ target(total)` defined on `source(total) ⊆ source`.
    pub fn new<C>(cat: &C, source: O, total: M) -> Result<Self>
    where
        C: InclusiveCategory<Object = O, Morphism = M>,
    {
        cat.validate(&total)?;
        let dom = cat.source(&total).clone();
        let witness = cat.inclusion(&dom, &source)?;
        Ok(PartialMorphism {
            target: cat.target(&total).clone(),
            source,
            dom,
            witness,
            total,
        })
    }
}

impl<O: Eq, M> PartialMorphism<O, M> {
    pub fn source(&self) -> &O {
        &self.source
    }

    pub fn target(&self) -> &O {
        &self.target
    }

    /// The domain of definition.
    pub fn dom(&self) -> &O {
        &self.dom
    }

    /// The inclusion `dom ⊆ source`.
    pub fn witness(&self) -> &M {
        &self.witness
    }

    /// The total part `dom → target`.
    pub fn total(&self) -> &M {
        &self.total
    }

    pub fn is_defined_everywhere(&self) -> bool {
        self.dom == self.source
    }
}

/// `[χ]`: a total morphism as a partial one defined everywhere.
pub fn embed<C: InclusiveCategory>(cat: &C, chi: &C::Morphism) -> PMor<C> {
    let source = cat.source(chi).clone();
    PartialMorphism {
        target: cat.target(chi).clone(),
        dom: source.clone(),
        witness: cat.identity(&source),
        source,
        total: chi.clone(),
    }
}

pub fn identity<C: InclusiveCategory>(cat: &C, obj: &C::Object) -> PMor<C> {
    embed(cat, &cat.identity(obj))
}

fn check_composable<C: InclusiveCategory>(phi: &PMor<C>, psi: &PMor<C>) -> Result<()> {
    if phi.target != psi.source {
        return Err(Error::contract(format!(
            "cannot compose: target {:?} differs from source {:?}",
            phi.target, psi.source
        )));
    }
    Ok(())
}

/// Composition through the semi-inclusive pullback of `phi`'s total part
/// along the domain inclusion of `psi`.
pub fn compose_via_pullback<C>(cat: &C, phi: &PMor<C>, psi: &PMor<C>) -> Result<PMor<C>>
where
    C: SemiInclusivePullbacks,
{
    check_composable::<C>(phi, psi)?;
    let square = cat.semi_inclusive_pullback(&phi.total, &psi.witness)?;
    let witness = cat.compose(&square.left, &phi.witness)?;
    let total = cat.compose(&square.bottom, &psi.total)?;
    Ok(PartialMorphism {
        source: phi.source.clone(),
        target: psi.target.clone(),
        dom: cat.source(&square.left).clone(),
        witness,
        total,
    })
}

/// `phi ; psi`. When `psi` is defined everywhere the domain of `phi` is kept
/// as is; debug builds cross-check this against the pullback route.
pub fn compose<C>(cat: &C, phi: &PMor<C>, psi: &PMor<C>) -> Result<PMor<C>>
where
    C: SemiInclusivePullbacks,
{
    check_composable::<C>(phi, psi)?;
    if !psi.is_defined_everywhere() {
        return compose_via_pullback(cat, phi, psi);
    }
    let out = PartialMorphism {
        source: phi.source.clone(),
        target: psi.target.clone(),
        dom: phi.dom.clone(),
        witness: phi.witness.clone(),
        total: cat.compose(&phi.total, &psi.total)?,
    };
    debug_assert_eq!(Some(&out), compose_via_pullback(cat, phi, psi).ok().as_ref());
    Ok(out)
}

/// `phi ≤ theta`: `dom phi ⊆ dom theta` and `phi` is the restriction of `theta`.
pub fn leq<C: InclusiveCategory>(cat: &C, phi: &PMor<C>, theta: &PMor<C>) -> Result<bool> {
    if phi.source != theta.source || phi.target != theta.target {
        return Err(Error::contract("compared partial morphisms have different endpoints"));
    }
    let Ok(incl) = cat.inclusion(&phi.dom, &theta.dom) else {
        return Ok(false);
    };
    Ok(cat.compose(&incl, &theta.total)? == phi.total)
}

/// The restriction of `phi` to a smaller domain `sub ⊆ dom phi`.
pub fn restrict<C: InclusiveCategory>(cat: &C, phi: &PMor<C>, sub: &C::Object) -> Result<PMor<C>> {
    let incl = cat.inclusion(sub, &phi.dom)?;
    PartialMorphism::new(cat, phi.source.clone(), cat.compose(&incl, &phi.total)?)
}

pub fn is_psign_inclusion<C: InclusiveCategory>(cat: &C, phi: &PMor<C>) -> bool {
    phi.is_defined_everywhere() && cat.is_inclusion(&phi.total)
}

pub fn is_psign_surjection<C: InclusiveCategory>(cat: &C, phi: &PMor<C>) -> bool {
    cat.is_surjection(&phi.total)
}

/// `phi = e ; i` with `e` defined on `dom phi` and `i` an embedded inclusion.
pub fn factorize_partial<C: InclusiveCategory>(
    cat: &C,
    phi: &PMor<C>,
) -> Result<Factorization<C::Object, PMor<C>>> {
    let base = cat.factorize(&phi.total)?;
    let e = PartialMorphism {
        source: phi.source.clone(),
        target: base.image.clone(),
        dom: phi.dom.clone(),
        witness: phi.witness.clone(),
        total: base.surjection,
    };
    Ok(Factorization {
        surjection: e,
        inclusion: embed(cat, &base.inclusion),
        image: base.image,
    })
}

/// Every partial morphism `a ⇀ b`, grouped by domain in subobject order.
pub fn all_partial_morphisms<C: FiniteEnumeration>(
    cat: &C,
    a: &C::Object,
    b: &C::Object,
    cap: u64,
) -> Result<Vec<PMor<C>>> {
    let mut out = Vec::new();
    for dom in cat.subobjects(a, cap)? {
        let witness = cat.inclusion(&dom, a)?;
        for total in cat.morphisms(&dom, b, cap)? {
            out.push(PartialMorphism {
                source: a.clone(),
                target: b.clone(),
                dom: dom.clone(),
                witness: witness.clone(),
                total,
            });
            if out.len() as u64 > cap {
                return Err(Error::resource("partial morphisms", out.len() as u128, cap as u128));
            }
        }
    }
    Ok(out)
}

/// The category of partial morphisms, with the inclusion system inherited
/// from the base: inclusions are embedded base inclusions, surjections are the
/// partial morphisms whose total part is a base surjection.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PartialSign<C> {
    pub base: C,
}

impl<C> PartialSign<C> {
    pub fn new(base: C) -> Self {
        PartialSign { base }
    }
}

impl<C: SemiInclusivePullbacks> InclusiveCategory for PartialSign<C> {
    type Object = C::Object;
    type Morphism = PMor<C>;

    fn source<'a>(&self, m: &'a PMor<C>) -> &'a C::Object {
        &m.source
    }

    fn target<'a>(&self, m: &'a PMor<C>) -> &'a C::Object {
        &m.target
    }

    fn validate(&self, m: &PMor<C>) -> Result<()> {
        self.base.validate(&m.total)?;
        if !self.base.is_inclusion(&m.witness)
            || self.base.source(&m.witness) != &m.dom
            || self.base.target(&m.witness) != &m.source
            || self.base.source(&m.total) != &m.dom
            || self.base.target(&m.total) != &m.target
        {
            return Err(Error::validation("partial morphism components do not fit together"));
        }
        Ok(())
    }

    fn identity(&self, obj: &C::Object) -> PMor<C> {
        identity(&self.base, obj)
    }

    fn compose(&self, f: &PMor<C>, g: &PMor<C>) -> Result<PMor<C>> {
        compose(&self.base, f, g)
    }

    fn is_inclusion(&self, m: &PMor<C>) -> bool {
        is_psign_inclusion(&self.base, m)
    }

    fn is_surjection(&self, m: &PMor<C>) -> bool {
        is_psign_surjection(&self.base, m)
    }

    fn inclusion(&self, sub: &C::Object, sup: &C::Object) -> Result<PMor<C>> {
        Ok(embed(&self.base, &self.base.inclusion(sub, sup)?))
    }

    fn is_subobject(&self, sub: &C::Object, sup: &C::Object) -> bool {
        self.base.is_subobject(sub, sup)
    }

    fn factorize(&self, f: &PMor<C>) -> Result<Factorization<C::Object, PMor<C>>> {
        factorize_partial(&self.base, f)
    }
}

impl<C> FiniteEnumeration for PartialSign<C>
where
    C: SemiInclusivePullbacks + FiniteEnumeration,
{
    fn subobjects(&self, obj: &C::Object, cap: u64) -> Result<Vec<C::Object>> {
        self.base.subobjects(obj, cap)
    }

    fn morphisms(&self, a: &C::Object, b: &C::Object, cap: u64) -> Result<Vec<PMor<C>>> {
        all_partial_morphisms(&self.base, a, b, cap)
    }

    fn join(&self, a: &C::Object, b: &C::Object, ambient: &C::Object) -> Result<C::Object> {
        self.base.join(a, b, ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inclusion::factorization_violation;
    use crate::pl::{PlMorphism, PlSignature, SetInclusions};

    fn sig(xs: &[&str]) -> PlSignature {
        PlSignature::new(xs.iter().copied())
    }

    fn pm(src: &[&str], dom: &[&str], tgt: &[&str], pairs: &[(&str, &str)]) -> PMor<SetInclusions> {
        let total = PlMorphism::from_pairs(sig(dom), sig(tgt), pairs.iter().copied()).unwrap();
        PartialMorphism::new(&SetInclusions, sig(src), total).unwrap()
    }

    /// Composition of partial functions as relations, the oracle for `compose`.
    fn relational(phi: &PMor<SetInclusions>, psi: &PMor<SetInclusions>) -> Vec<(String, String)> {
        phi.total()
            .map()
            .iter()
            .filter_map(|(a, b)| psi.total().get(b).map(|c| (a.clone(), c.to_string())))
            .collect()
    }

    #[test]
    fn composition_examples() {
        let cat = SetInclusions;
        let phi = pm(&["p", "q"], &["p", "q"], &["a", "b"], &[("p", "a"), ("q", "a")]);
        let psi = pm(&["a", "b"], &["b"], &["z"], &[("b", "z")]);
        let c = compose(&cat, &phi, &psi).unwrap();
        assert_eq!(c.dom(), &PlSignature::empty());
        assert!(relational(&phi, &psi).is_empty());

        let phi = pm(&["p", "q"], &["p"], &["a", "b"], &[("p", "a")]);
        let psi = pm(&["a", "b"], &["a", "b"], &["z"], &[("a", "z"), ("b", "z")]);
        let c = compose(&cat, &phi, &psi).unwrap();
        assert_eq!(c.dom(), &sig(&["p"]));
        assert_eq!(c.total().apply("p"), "z");
        assert_eq!(c, compose_via_pullback(&cat, &phi, &psi).unwrap());

        let id = identity(&cat, &sig(&["p", "q"]));
        assert_eq!(compose(&cat, &id, &phi).unwrap(), phi);
        assert_eq!(compose(&cat, &phi, &identity(&cat, &sig(&["a", "b"]))).unwrap(), phi);
        assert!(compose(&cat, &psi, &phi).is_err());
    }

    #[test]
    fn order_examples() {
        let cat = SetInclusions;
        let small = pm(&["p", "q"], &["p"], &["a", "b"], &[("p", "a")]);
        let big = pm(&["p", "q"], &["p", "q"], &["a", "b"], &[("p", "a"), ("q", "b")]);
        let empty = pm(&["p", "q"], &[], &["a", "b"], &[]);
        assert!(leq(&cat, &small, &small).unwrap());
        assert!(leq(&cat, &small, &big).unwrap());
        assert!(!leq(&cat, &big, &small).unwrap());
        assert!(leq(&cat, &empty, &big).unwrap());
        let other = pm(&["p", "q"], &["p", "q"], &["a", "b"], &[("p", "b"), ("q", "b")]);
        assert!(!leq(&cat, &small, &other).unwrap());
        assert!(leq(&cat, &small, &pm(&["p"], &["p"], &["a"], &[("p", "a")])).is_err());
    }

    #[test]
    fn embedding_is_a_faithful_functor() {
        let cat = SetInclusions;
        let a = sig(&["x", "y"]);
        let ms = cat.morphisms(&a, &a, 100).unwrap();
        for f in &ms {
            for g in &ms {
                assert_eq!(
                    compose(&cat, &embed(&cat, f), &embed(&cat, g)).unwrap(),
                    embed(&cat, &f.compose(g).unwrap())
                );
                assert_eq!(f == g, embed(&cat, f) == embed(&cat, g));
            }
        }
        assert_eq!(embed(&cat, &PlMorphism::identity(&a)), identity(&cat, &a));
    }

    #[test]
    fn factorization_examples() {
        let cat = SetInclusions;
        let phi = pm(&["p", "q"], &["p"], &["a", "b"], &[("p", "a")]);
        let f = factorize_partial(&cat, &phi).unwrap();
        assert_eq!(f.image, sig(&["a"]));
        assert_eq!(f.surjection.dom(), &sig(&["p"]));
        assert_eq!(f.inclusion, embed(&cat, &PlMorphism::inclusion(&sig(&["a"]), &sig(&["a", "b"])).unwrap()));
        assert_eq!(compose(&cat, &f.surjection, &f.inclusion).unwrap(), phi);
        assert!(is_psign_surjection(&cat, &f.surjection));
        assert!(is_psign_inclusion(&cat, &f.inclusion));
        assert!(!is_psign_inclusion(&cat, &phi));

        let psign = PartialSign::new(cat);
        assert_eq!(factorization_violation(&psign, &phi, &f, 100_000).unwrap(), None);

        let surj = pm(&["p", "q"], &["p", "q"], &["a"], &[("p", "a"), ("q", "a")]);
        let f = factorize_partial(&cat, &surj).unwrap();
        assert_eq!(f.surjection, surj);
        assert_eq!(f.inclusion, identity(&cat, &sig(&["a"])));
    }
}
