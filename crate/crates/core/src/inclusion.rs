//! Categories equipped with an inclusion system.
//!
//! An inclusion system on a category is a pair of broad subcategories
//! (abstract inclusions, abstract surjections) such that the inclusions form
//! a partial order and every arrow factors uniquely as a surjection followed
//! by an inclusion. The traits below are the contract both shipped signature
//! categories implement; everything in [`crate::partial`] is generic over them.

use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub trait InclusiveCategory {
    type Object: Clone + Eq + Ord + Hash + Debug;
    type Morphism: Clone + Eq + Debug;

    fn source<'a>(&self, m: &'a Self::Morphism) -> &'a Self::Object;
    fn target<'a>(&self, m: &'a Self::Morphism) -> &'a Self::Object;

    /// Checks that `m` is a well-formed arrow of this category.
    fn validate(&self, m: &Self::Morphism) -> Result<()>;

    fn identity(&self, obj: &Self::Object) -> Self::Morphism;

    /// Diagrammatic composition: `f` first, then `g`.
    fn compose(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism>;

    fn is_inclusion(&self, m: &Self::Morphism) -> bool;
    fn is_surjection(&self, m: &Self::Morphism) -> bool;

    /// The abstract inclusion `sub ⊆ sup`, if there is one.
    fn inclusion(&self, sub: &Self::Object, sup: &Self::Object) -> Result<Self::Morphism>;

    fn is_subobject(&self, sub: &Self::Object, sup: &Self::Object) -> bool {
        self.inclusion(sub, sup).is_ok()
    }

    fn factorize(&self, f: &Self::Morphism) -> Result<Factorization<Self::Object, Self::Morphism>>;
}

/// `f = surjection ; inclusion` with `image` the middle object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization<O, M> {
    pub surjection: M,
    pub inclusion: M,
    pub image: O,
}

/// A pullback of `top: A → B` along the inclusion `right: B′ ⊆ B`.
///
/// ```text
///   A  --top-->   B
///   ⊆             ⊆ right
///   A′ --bottom-> B′
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PullbackSquare<M> {
    pub top: M,
    pub right: M,
    pub bottom: M,
    pub left: M,
}

/// Legs of a pushout cocone; the apex is their common target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PushoutCocone<M> {
    pub left: M,
    pub right: M,
}

pub trait SemiInclusivePullbacks: InclusiveCategory {
    /// The unique pullback square of `f` along `incl` whose left leg is an inclusion.
    fn semi_inclusive_pullback(
        &self,
        f: &Self::Morphism,
        incl: &Self::Morphism,
    ) -> Result<PullbackSquare<Self::Morphism>>;
}

pub trait Pushouts: InclusiveCategory {
    /// Pushout of the span `(f1, f2)`; the apex uses canonical symbol names.
    fn pushout(
        &self,
        f1: &Self::Morphism,
        f2: &Self::Morphism,
    ) -> Result<PushoutCocone<Self::Morphism>>;
}

/// Enumeration hooks for exhaustive law checking on small objects.
pub trait FiniteEnumeration: InclusiveCategory {
    /// All objects `X` with `X ⊆ obj` in the inclusion system.
    fn subobjects(&self, obj: &Self::Object, cap: u64) -> Result<Vec<Self::Object>>;

    /// All arrows `a → b`.
    fn morphisms(&self, a: &Self::Object, b: &Self::Object, cap: u64)
        -> Result<Vec<Self::Morphism>>;

    /// Least subobject of `ambient` containing both `a` and `b`.
    fn join(
        &self,
        a: &Self::Object,
        b: &Self::Object,
        ambient: &Self::Object,
    ) -> Result<Self::Object>;
}

pub type FactorizationOf<C> =
    Factorization<<C as InclusiveCategory>::Object, <C as InclusiveCategory>::Morphism>;

/// True iff `is_surjection(top)` implies `is_surjection(bottom)`.
pub fn check_surjection_stability<C: InclusiveCategory>(
    cat: &C,
    square: &PullbackSquare<C::Morphism>,
) -> bool {
    !cat.is_surjection(&square.top) || cat.is_surjection(&square.bottom)
}

/// Checks that a square commutes: `left ; top = bottom ; right`.
pub fn square_commutes<C: InclusiveCategory>(
    cat: &C,
    square: &PullbackSquare<C::Morphism>,
) -> Result<bool> {
    let a = cat.compose(&square.left, &square.top)?;
    let b = cat.compose(&square.bottom, &square.right)?;
    Ok(a == b)
}

/// Verifies that `fact` is a valid factorization of `f`: a surjection then an
/// inclusion through the stated image, composing to `f`.
pub fn factorization_shape_violation<C: InclusiveCategory>(
    cat: &C,
    f: &C::Morphism,
    fact: &FactorizationOf<C>,
) -> Result<Option<String>> {
    if !cat.is_surjection(&fact.surjection) {
        return Ok(Some(format!("e is not a surjection: {:?}", fact.surjection)));
    }
    if !cat.is_inclusion(&fact.inclusion) {
        return Ok(Some(format!("i is not an inclusion: {:?}", fact.inclusion)));
    }
    if cat.target(&fact.surjection) != &fact.image || cat.source(&fact.inclusion) != &fact.image {
        return Ok(Some("image object does not match the factor endpoints".into()));
    }
    if &cat.compose(&fact.surjection, &fact.inclusion)? != f {
        return Ok(Some("e;i differs from f".into()));
    }
    Ok(None)
}

/// [`factorization_shape_violation`], then a search for a second
/// factorization among all surjections into subobjects of the target. Returns
/// a description of the first problem found. An enumeration past `cap` is a
/// resource error.
pub fn factorization_violation<C: FiniteEnumeration>(
    cat: &C,
    f: &C::Morphism,
    fact: &FactorizationOf<C>,
    cap: u64,
) -> Result<Option<String>> {
    if let Some(v) = factorization_shape_violation(cat, f, fact)? {
        return Ok(Some(v));
    }
    let src = cat.source(f);
    let tgt = cat.target(f);
    for sub in cat.subobjects(tgt, cap)? {
        let incl = cat.inclusion(&sub, tgt)?;
        for e in cat.morphisms(src, &sub, cap)? {
            if !cat.is_surjection(&e) {
                continue;
            }
            if &cat.compose(&e, &incl)? == f && (e != fact.surjection || incl != fact.inclusion) {
                return Ok(Some(format!("second factorization through {sub:?}")));
            }
        }
    }
    Ok(None)
}

/// Checks a returned semi-inclusive pullback against every commuting square over
/// the same cospan whose left leg is an inclusion: each must factor through the
/// returned one by an inclusion, and the returned one must be the only such
/// square with that property.
pub fn pullback_violation<C: FiniteEnumeration>(
    cat: &C,
    square: &PullbackSquare<C::Morphism>,
    cap: u64,
) -> Result<Option<String>> {
    if !cat.is_inclusion(&square.left) || !cat.is_inclusion(&square.right) {
        return Ok(Some("legs are not inclusions".into()));
    }
    if !square_commutes(cat, square)? {
        return Ok(Some("square does not commute".into()));
    }
    let a = cat.source(&square.top);
    let b_sub = cat.source(&square.right);
    let apex = cat.source(&square.bottom);
    let mut commuting: Vec<PullbackSquare<C::Morphism>> = Vec::new();
    for sub in cat.subobjects(a, cap)? {
        let left = cat.inclusion(&sub, a)?;
        for bottom in cat.morphisms(&sub, b_sub, cap)? {
            let cand = PullbackSquare {
                top: square.top.clone(),
                right: square.right.clone(),
                bottom,
                left: left.clone(),
            };
            if square_commutes(cat, &cand)? {
                commuting.push(cand);
            }
        }
    }
    let mut universal = 0;
    for cand in &commuting {
        let cand_apex = cat.source(&cand.bottom);
        let through_cand = commuting
            .iter()
            .all(|other| cat.is_subobject(cat.source(&other.bottom), cand_apex));
        if through_cand {
            universal += 1;
            if cand != square {
                return Ok(Some(format!("another pullback square with apex {cand_apex:?}")));
            }
        }
    }
    if universal != 1 {
        return Ok(Some(format!(
            "returned square (apex {apex:?}) is not universal among {} commuting squares",
            commuting.len()
        )));
    }
    Ok(None)
}

pub(crate) fn require_inclusion<C: InclusiveCategory>(cat: &C, m: &C::Morphism) -> Result<()> {
    if cat.is_inclusion(m) {
        Ok(())
    } else {
        Err(Error::contract(format!("expected an abstract inclusion, got {m:?}")))
    }
}
