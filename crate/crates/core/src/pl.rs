//! Propositional logic: signatures are finite sets of symbols, sentences are
//! built from symbols with `∧` and `¬`, and a model is the set of symbols it
//! makes true.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::inclusion::{
    require_inclusion, Factorization, FiniteEnumeration, InclusiveCategory, PullbackSquare,
    PushoutCocone, Pushouts, SemiInclusivePullbacks,
};
use crate::institution::Institution;
use crate::quotient::{canonical_names, UnionFind};

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PlSignature {
    symbols: BTreeSet<String>,
}

impl PlSignature {
    pub fn new<I, S>(symbols: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        PlSignature {
            symbols: symbols.into_iter().map(Into::into).collect(),
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn symbols(&self) -> &BTreeSet<String> {
        &self.symbols
    }

    pub fn contains(&self, s: &str) -> bool {
        self.symbols.contains(s)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn is_subset(&self, other: &PlSignature) -> bool {
        self.symbols.is_subset(&other.symbols)
    }

    pub fn union(&self, other: &PlSignature) -> PlSignature {
        PlSignature {
            symbols: self.symbols.union(&other.symbols).cloned().collect(),
        }
    }
}

impl fmt::Display for PlSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_set(f, self.symbols.iter())
    }
}

pub(crate) fn write_set<'a>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = &'a String>,
) -> fmt::Result {
    f.write_str("{")?;
    for (i, s) in items.enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        f.write_str(s)?;
    }
    f.write_str("}")
}

/// A total function between propositional signatures.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PlMorphism {
    source: PlSignature,
    target: PlSignature,
    map: BTreeMap<String, String>,
}

impl PlMorphism {
    pub fn new(source: PlSignature, target: PlSignature, map: BTreeMap<String, String>) -> Result<Self> {
        let m = PlMorphism { source, target, map };
        m.validate()?;
        Ok(m)
    }

    /// Builds a morphism from `(from, to)` pairs.
    pub fn from_pairs<'a>(
        source: PlSignature,
        target: PlSignature,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let map = pairs
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        Self::new(source, target, map)
    }

    pub fn identity(sig: &PlSignature) -> Self {
        let map = sig.symbols.iter().map(|s| (s.clone(), s.clone())).collect();
        PlMorphism {
            source: sig.clone(),
            target: sig.clone(),
            map,
        }
    }

    pub fn inclusion(sub: &PlSignature, sup: &PlSignature) -> Result<Self> {
        if !sub.is_subset(sup) {
            return Err(Error::contract(format!("{sub} is not a subset of {sup}")));
        }
        let map = sub.symbols.iter().map(|s| (s.clone(), s.clone())).collect();
        Ok(PlMorphism {
            source: sub.clone(),
            target: sup.clone(),
            map,
        })
    }

    pub fn source(&self) -> &PlSignature {
        &self.source
    }

    pub fn target(&self) -> &PlSignature {
        &self.target
    }

    pub fn map(&self) -> &BTreeMap<String, String> {
        &self.map
    }

    /// Image of a source symbol. Panics on symbols outside the source.
    pub fn apply(&self, s: &str) -> &str {
        &self.map[s]
    }

    pub fn get(&self, s: &str) -> Option<&str> {
        self.map.get(s).map(String::as_str)
    }

    pub fn image(&self) -> PlSignature {
        PlSignature {
            symbols: self.map.values().cloned().collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for s in &self.source.symbols {
            match self.map.get(s) {
                None => return Err(Error::validation(format!("symbol {s} is not mapped"))),
                Some(t) if !self.target.contains(t) => {
                    return Err(Error::validation(format!(
                        "{s} is mapped to {t}, which is not in the target {}",
                        self.target
                    )))
                }
                _ => {}
            }
        }
        if let Some(extra) = self.map.keys().find(|k| !self.source.contains(k)) {
            return Err(Error::validation(format!("{extra} is not in the source {}", self.source)));
        }
        Ok(())
    }

    pub fn compose(&self, g: &PlMorphism) -> Result<PlMorphism> {
        if self.target != g.source {
            return Err(Error::contract(format!(
                "cannot compose: target {} differs from source {}",
                self.target, g.source
            )));
        }
        let map = self
            .map
            .iter()
            .map(|(a, b)| (a.clone(), g.map[b].clone()))
            .collect();
        Ok(PlMorphism {
            source: self.source.clone(),
            target: g.target.clone(),
            map,
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.image() == self.target
    }
}

impl fmt::Display for PlMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{ ")?;
        for (i, (a, b)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a} |-> {b}")?;
        }
        f.write_str(" }")
    }
}

/// `S ::= P | S ∧ S | ¬ S`
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlSentence {
    Var(String),
    And(Box<PlSentence>, Box<PlSentence>),
    Not(Box<PlSentence>),
}

impl PlSentence {
    pub fn var(s: impl Into<String>) -> Self {
        PlSentence::Var(s.into())
    }

    pub fn and(a: PlSentence, b: PlSentence) -> Self {
        PlSentence::And(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: PlSentence) -> Self {
        PlSentence::Not(Box::new(a))
    }

    /// `a ∨ b` as `¬(¬a ∧ ¬b)`.
    pub fn or(a: PlSentence, b: PlSentence) -> Self {
        Self::not(Self::and(Self::not(a), Self::not(b)))
    }

    /// `a → b` as `¬(a ∧ ¬b)`.
    pub fn implies(a: PlSentence, b: PlSentence) -> Self {
        Self::not(Self::and(a, Self::not(b)))
    }

    /// Depth with `depth(Var) = 0`.
    pub fn depth(&self) -> usize {
        match self {
            PlSentence::Var(_) => 0,
            PlSentence::Not(a) => 1 + a.depth(),
            PlSentence::And(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            PlSentence::Var(s) => {
                out.insert(s.clone());
            }
            PlSentence::Not(a) => a.collect_symbols(out),
            PlSentence::And(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
        }
    }

    fn all_symbols_in(&self, sig: &PlSignature) -> std::result::Result<(), String> {
        match self {
            PlSentence::Var(s) if sig.contains(s) => Ok(()),
            PlSentence::Var(s) => Err(s.clone()),
            PlSentence::Not(a) => a.all_symbols_in(sig),
            PlSentence::And(a, b) => {
                a.all_symbols_in(sig)?;
                b.all_symbols_in(sig)
            }
        }
    }

    pub fn typecheck(&self, sig: &PlSignature) -> Result<()> {
        self.all_symbols_in(sig)
            .map_err(|s| Error::typecheck(format!("symbol {s} is not in signature {sig}")))
    }

    fn rename(&self, map: &BTreeMap<String, String>) -> PlSentence {
        match self {
            PlSentence::Var(s) => PlSentence::Var(map[s].clone()),
            PlSentence::Not(a) => PlSentence::Not(Box::new(a.rename(map))),
            PlSentence::And(a, b) => PlSentence::And(Box::new(a.rename(map)), Box::new(b.rename(map))),
        }
    }

    fn eval(&self, model: &PlModel) -> bool {
        match self {
            PlSentence::Var(s) => model.0.contains(s),
            PlSentence::Not(a) => !a.eval(model),
            PlSentence::And(a, b) => a.eval(model) && b.eval(model),
        }
    }
}

impl fmt::Display for PlSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlSentence::Var(s) => f.write_str(s),
            PlSentence::Not(a) => write!(f, "!{a}"),
            PlSentence::And(a, b) => write!(f, "({a} & {b})"),
        }
    }
}

/// The set of symbols a model makes true.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PlModel(pub BTreeSet<String>);

impl PlModel {
    pub fn new<I, S>(symbols: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        PlModel(symbols.into_iter().map(Into::into).collect())
    }

    pub fn holds(&self, s: &str) -> bool {
        self.0.contains(s)
    }

    pub fn check(&self, sig: &PlSignature) -> Result<()> {
        match self.0.iter().find(|s| !sig.contains(s)) {
            Some(s) => Err(Error::validation(format!("model symbol {s} is not in {sig}"))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for PlModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_set(f, self.0.iter())
    }
}

/// Replaces every symbol `p` by `φ(p)`.
pub fn pl_translate(phi: &PlMorphism, rho: &PlSentence) -> Result<PlSentence> {
    rho.typecheck(&phi.source)?;
    Ok(rho.rename(&phi.map))
}

/// The reduct `M(p) = M′(φ(p))`.
pub fn pl_reduct(phi: &PlMorphism, model: &PlModel) -> Result<PlModel> {
    model.check(&phi.target)?;
    Ok(PlModel(
        phi.map
            .iter()
            .filter(|(_, t)| model.0.contains(*t))
            .map(|(s, _)| s.clone())
            .collect(),
    ))
}

pub fn pl_satisfies(model: &PlModel, rho: &PlSentence) -> bool {
    rho.eval(model)
}

/// Satisfaction with both arguments typechecked against `sig`.
pub fn pl_satisfies_checked(sig: &PlSignature, model: &PlModel, rho: &PlSentence) -> Result<bool> {
    rho.typecheck(sig)?;
    model.check(sig)?;
    Ok(rho.eval(model))
}

/// All `2^|Σ|` models. Model number `m` contains the `i`-th symbol (in sorted
/// order) iff bit `i` of `m` is set.
pub fn pl_enumerate_models(sig: &PlSignature, cap: usize) -> Result<Vec<PlModel>> {
    if sig.len() > cap {
        return Err(Error::resource(
            format!("models of a {}-symbol signature", sig.len()),
            1u128 << sig.len().min(127),
            1u128 << cap.min(127),
        ));
    }
    let syms: Vec<&String> = sig.symbols.iter().collect();
    let n = syms.len();
    Ok((0u64..(1u64 << n))
        .map(|mask| {
            PlModel(
                syms.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, s)| (*s).clone())
                    .collect(),
            )
        })
        .collect())
}

/// Number of sentences of depth at most `d` over `n` symbols.
pub fn pl_sentence_count(n: usize, d: usize) -> u128 {
    let mut total = n as u128;
    for _ in 0..d {
        total = total
            .saturating_mul(total)
            .saturating_add(total)
            .saturating_add(n as u128);
    }
    total
}

/// Every sentence of depth at most `d` over `sig`, ordered by depth and then
/// by generation order (negations before conjunctions, conjunctions in
/// lexicographic order of their operand indices).
pub fn pl_sentences_up_to_depth(sig: &PlSignature, d: usize, cap: u64) -> Result<Vec<PlSentence>> {
    let needed = pl_sentence_count(sig.len(), d);
    if needed > cap as u128 {
        return Err(Error::resource(
            format!("sentences of depth {d} over {} symbols", sig.len()),
            needed,
            cap as u128,
        ));
    }
    let mut all: Vec<PlSentence> = sig.symbols.iter().map(PlSentence::var).collect();
    // all[..prev_end] have depth < k-1, all[prev_end..] have depth exactly k-1
    let mut prev_end = 0;
    for _ in 0..d {
        let level_start = prev_end;
        let level_end = all.len();
        let mut next = Vec::new();
        for s in &all[level_start..level_end] {
            next.push(PlSentence::not(s.clone()));
        }
        for i in 0..level_end {
            for j in 0..level_end {
                if i >= level_start || j >= level_start {
                    next.push(PlSentence::and(all[i].clone(), all[j].clone()));
                }
            }
        }
        prev_end = level_end;
        all.extend(next);
    }
    Ok(all)
}

/// Visits the same sentences as [`pl_sentences_up_to_depth`], in the same
/// order, holding only the levels below `d` in memory.
pub fn pl_for_each_sentence(
    sig: &PlSignature,
    d: usize,
    mut f: impl FnMut(&PlSentence) -> Result<()>,
) -> Result<()> {
    if d == 0 {
        for s in sig.symbols.iter().map(PlSentence::var) {
            f(&s)?;
        }
        return Ok(());
    }
    let lower = pl_sentences_up_to_depth(sig, d - 1, u64::MAX)?;
    for s in &lower {
        f(s)?;
    }
    let level_start = lower.iter().position(|s| s.depth() == d - 1).unwrap_or(lower.len());
    for s in &lower[level_start..] {
        f(&PlSentence::not(s.clone()))?;
    }
    for (i, a) in lower.iter().enumerate() {
        for (j, b) in lower.iter().enumerate() {
            if i >= level_start || j >= level_start {
                f(&PlSentence::and(a.clone(), b.clone()))?;
            }
        }
    }
    Ok(())
}

/// `SET` with subset inclusions and surjective functions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SetInclusions;

impl InclusiveCategory for SetInclusions {
    type Object = PlSignature;
    type Morphism = PlMorphism;

    fn source<'a>(&self, m: &'a PlMorphism) -> &'a PlSignature {
        &m.source
    }

    fn target<'a>(&self, m: &'a PlMorphism) -> &'a PlSignature {
        &m.target
    }

    fn validate(&self, m: &PlMorphism) -> Result<()> {
        m.validate()
    }

    fn identity(&self, obj: &PlSignature) -> PlMorphism {
        PlMorphism::identity(obj)
    }

    fn compose(&self, f: &PlMorphism, g: &PlMorphism) -> Result<PlMorphism> {
        f.compose(g)
    }

    fn is_inclusion(&self, m: &PlMorphism) -> bool {
        m.source.is_subset(&m.target) && m.map.iter().all(|(a, b)| a == b)
    }

    fn is_surjection(&self, m: &PlMorphism) -> bool {
        m.is_surjective()
    }

    fn inclusion(&self, sub: &PlSignature, sup: &PlSignature) -> Result<PlMorphism> {
        PlMorphism::inclusion(sub, sup)
    }

    fn is_subobject(&self, sub: &PlSignature, sup: &PlSignature) -> bool {
        sub.is_subset(sup)
    }

    fn factorize(&self, f: &PlMorphism) -> Result<Factorization<PlSignature, PlMorphism>> {
        f.validate()?;
        let image = f.image();
        let surjection = PlMorphism {
            source: f.source.clone(),
            target: image.clone(),
            map: f.map.clone(),
        };
        let inclusion = PlMorphism::inclusion(&image, &f.target)?;
        Ok(Factorization {
            surjection,
            inclusion,
            image,
        })
    }
}

impl SemiInclusivePullbacks for SetInclusions {
    fn semi_inclusive_pullback(
        &self,
        f: &PlMorphism,
        incl: &PlMorphism,
    ) -> Result<PullbackSquare<PlMorphism>> {
        require_inclusion(self, incl)?;
        if incl.target != f.target {
            return Err(Error::contract("the inclusion does not end at the target of f"));
        }
        let sub_target = &incl.source;
        let map: BTreeMap<String, String> = f
            .map
            .iter()
            .filter(|(_, b)| sub_target.contains(b))
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect();
        let apex = PlSignature {
            symbols: map.keys().cloned().collect(),
        };
        let left = PlMorphism::inclusion(&apex, &f.source)?;
        let bottom = PlMorphism {
            source: apex,
            target: sub_target.clone(),
            map,
        };
        Ok(PullbackSquare {
            top: f.clone(),
            right: incl.clone(),
            bottom,
            left,
        })
    }
}

impl Pushouts for SetInclusions {
    fn pushout(&self, f1: &PlMorphism, f2: &PlMorphism) -> Result<PushoutCocone<PlMorphism>> {
        if f1.source != f2.source {
            return Err(Error::contract("span legs have different sources"));
        }
        let left: Vec<&String> = f1.target.symbols.iter().collect();
        let right: Vec<&String> = f2.target.symbols.iter().collect();
        let index_left: BTreeMap<&str, usize> =
            left.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let index_right: BTreeMap<&str, usize> = right
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), left.len() + i))
            .collect();
        let mut uf = UnionFind::new(left.len() + right.len());
        for x in &f1.source.symbols {
            uf.union(index_left[f1.apply(x)], index_right[f2.apply(x)]);
        }
        let (class_of, count) = uf.classes();
        let mut members = vec![BTreeSet::new(); count];
        for (i, s) in left.iter().chain(right.iter()).enumerate() {
            members[class_of[i]].insert((*s).clone());
        }
        let classes: Vec<((), BTreeSet<String>)> = members.into_iter().map(|m| ((), m)).collect();
        let names = canonical_names(&classes);
        let apex = PlSignature::new(names.iter().cloned());
        let g1 = left
            .iter()
            .enumerate()
            .map(|(i, s)| ((*s).clone(), names[class_of[i]].clone()))
            .collect();
        let g2 = right
            .iter()
            .enumerate()
            .map(|(i, s)| ((*s).clone(), names[class_of[left.len() + i]].clone()))
            .collect();
        Ok(PushoutCocone {
            left: PlMorphism {
                source: f1.target.clone(),
                target: apex.clone(),
                map: g1,
            },
            right: PlMorphism {
                source: f2.target.clone(),
                target: apex,
                map: g2,
            },
        })
    }
}

impl FiniteEnumeration for SetInclusions {
    fn subobjects(&self, obj: &PlSignature, cap: u64) -> Result<Vec<PlSignature>> {
        let needed = 1u128 << obj.len().min(127);
        if needed > cap as u128 {
            return Err(Error::resource("subsets", needed, cap as u128));
        }
        let syms: Vec<&String> = obj.symbols.iter().collect();
        Ok((0u64..(1u64 << syms.len()))
            .map(|mask| {
                PlSignature::new(
                    syms.iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, s)| (*s).clone()),
                )
            })
            .collect())
    }

    fn morphisms(&self, a: &PlSignature, b: &PlSignature, cap: u64) -> Result<Vec<PlMorphism>> {
        let needed = (b.len() as u128).saturating_pow(a.len() as u32);
        if needed > cap as u128 {
            return Err(Error::resource("functions", needed, cap as u128));
        }
        let src: Vec<&String> = a.symbols.iter().collect();
        let tgt: Vec<&String> = b.symbols.iter().collect();
        let mut out = Vec::with_capacity(needed as usize);
        let mut digits = vec![0usize; src.len()];
        if !src.is_empty() && tgt.is_empty() {
            return Ok(out);
        }
        loop {
            let map = src
                .iter()
                .zip(&digits)
                .map(|(s, &d)| ((*s).clone(), tgt[d].clone()))
                .collect();
            out.push(PlMorphism {
                source: a.clone(),
                target: b.clone(),
                map,
            });
            if !odometer(&mut digits, tgt.len()) {
                break;
            }
        }
        Ok(out)
    }

    fn join(&self, a: &PlSignature, b: &PlSignature, ambient: &PlSignature) -> Result<PlSignature> {
        if !a.is_subset(ambient) || !b.is_subset(ambient) {
            return Err(Error::contract("join arguments are not subsets of the ambient signature"));
        }
        Ok(a.union(b))
    }
}

/// Advances a little-endian odometer; false once it wraps around.
pub(crate) fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// The institution of propositional logic.
#[derive(Debug, Clone, Copy, Default)]
pub struct Pl {
    cat: SetInclusions,
}

impl Pl {
    pub fn new() -> Self {
        Pl { cat: SetInclusions }
    }
}

impl Institution for Pl {
    type Sign = SetInclusions;
    type Sentence = PlSentence;
    type Model = PlModel;

    fn category(&self) -> &SetInclusions {
        &self.cat
    }

    fn name(&self) -> &'static str {
        "pl"
    }

    fn exact_semantics(&self) -> bool {
        true
    }

    fn check_sentence(&self, sig: &PlSignature, sentence: &PlSentence) -> Result<()> {
        sentence.typecheck(sig)
    }

    fn check_model(&self, sig: &PlSignature, model: &PlModel) -> Result<()> {
        model.check(sig)
    }

    fn translate(&self, m: &PlMorphism, sentence: &PlSentence) -> Result<PlSentence> {
        pl_translate(m, sentence)
    }

    fn reduct(&self, m: &PlMorphism, model: &PlModel) -> Result<PlModel> {
        pl_reduct(m, model)
    }

    fn satisfies(&self, sig: &PlSignature, model: &PlModel, sentence: &PlSentence) -> Result<bool> {
        sentence.typecheck(sig)?;
        Ok(sentence.eval(model))
    }

    fn models(&self, sig: &PlSignature, cfg: &RunConfig) -> Result<Vec<PlModel>> {
        pl_enumerate_models(sig, cfg.pl_signature_cap)
    }

    fn has_sentences(&self, sig: &PlSignature) -> bool {
        !sig.is_empty()
    }

    fn amalgamate_pushout(
        &self,
        cocone: &PushoutCocone<PlMorphism>,
        m1: &PlModel,
        m2: &PlModel,
    ) -> Result<PlModel> {
        let apex = &cocone.left.target;
        if apex != &cocone.right.target {
            return Err(Error::contract("cocone legs have different apexes"));
        }
        let mut out = BTreeSet::new();
        let mut seen = BTreeSet::new();
        for (leg, model) in [(&cocone.left, m1), (&cocone.right, m2)] {
            model.check(&leg.source)?;
            for (x, y) in &leg.map {
                if seen.insert(y.clone()) && model.holds(x) {
                    out.insert(y.clone());
                }
            }
        }
        if seen.len() != apex.len() {
            return Err(Error::contract("cocone legs are not jointly surjective"));
        }
        let amalgam = PlModel(out);
        if pl_reduct(&cocone.left, &amalgam)? != *m1 || pl_reduct(&cocone.right, &amalgam)? != *m2 {
            return Err(Error::contract("models disagree on the shared part of the span"));
        }
        Ok(amalgam)
    }
}
