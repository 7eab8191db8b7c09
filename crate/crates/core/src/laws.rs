//! Law suites. Each suite walks a family of instances, either exhaustively
//! over a small slice or as a seeded random sample, and counts violations.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::blend::{
    amalgamate_stepwise, completion_index, count_completions, lax_cocone_with_amalgamation, lax_sign_pushout,
    minimal_dom_theta0, span_models, verify_cocone, verify_lax_t_pushout, Span,
};
use crate::config::RunConfig;
use crate::error::Result;
use crate::gen::{self, Gen};
use crate::inclusion::{
    check_surjection_stability, factorization_shape_violation, factorization_violation, FactorizationOf, pullback_violation, FiniteEnumeration, InclusiveCategory,
    SemiInclusivePullbacks,
};
use crate::institution::{Institution, Obj};
use crate::msa::{Msa, MsaInclusionKind, MsaSignatures};
use crate::partial::{all_partial_morphisms, compose, embed, factorize_partial, identity, leq, restrict, PMor, PartialSign};
use crate::pl::{pl_for_each_sentence, pl_satisfies, Pl, PlModel, PlMorphism, PlSignature, SetInclusions};
use crate::theory::{classify_32_theory_morphism, pl_weak32_syntactic, Theory};
use crate::three_halves::{is_mod_strict, is_total, mod_strictness_witness, pl_homomorphism_reduct, pmod_reduct_among, psen_translate, PartialOf};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub name: String,
    pub checked: u64,
    pub violations: u64,
    /// The first violation found.
    pub example: Option<String>,
}

impl LawResult {
    pub fn new(name: impl Into<String>) -> Self {
        LawResult {
            name: name.into(),
            checked: 0,
            violations: 0,
            example: None,
        }
    }

    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.example.is_none() {
                self.example = Some(describe());
            }
        }
    }

    fn check_opt(&mut self, violation: Option<String>) {
        self.checked += 1;
        if let Some(v) = violation {
            self.violations += 1;
            self.example.get_or_insert(v);
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0 && self.checked > 0
    }
}

impl fmt::Display for LawResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "ok" } else { "FAIL" };
        write!(f, "{verdict:4} {} ({} checked, {} violations)", self.name, self.checked, self.violations)?;
        if let Some(e) = &self.example {
            write!(f, ": {e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub seed: u64,
    pub iters: usize,
    pub laws: Vec<LawResult>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawResult::passed)
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "law suite, seed {}, {} iterations", self.seed, self.iters)?;
        for l in &self.laws {
            writeln!(f, "  {l}")?;
        }
        Ok(())
    }
}

/// `{prefix0, .., prefix(n-1)}`.
pub fn named(prefix: &str, n: usize) -> PlSignature {
    PlSignature::new((0..n).map(|i| format!("{prefix}{i}")))
}

fn pl_partial_maps(a: &PlSignature, b: &PlSignature) -> Result<Vec<PartialOf<Pl>>> {
    all_partial_morphisms(&SetInclusions, a, b, u64::MAX)
}

pub fn factorization_pl(g: &mut Gen, iters: usize, max_symbols: usize, cap: u64) -> Result<LawResult> {
    let mut r = LawResult::new(format!("factorization in SET (≤{max_symbols} symbols)"));
    for _ in 0..iters {
        let f = gen::pl_arrow(g, max_symbols);
        let fact = SetInclusions.factorize(&f)?;
        let v = match factorization_shape_violation(&SetInclusions, &f, &fact)? {
            Some(v) => Some(v),
            None => second_set_factorization(&f, &fact, cap)?,
        };
        r.check_opt(v.map(|v| format!("{f}: {v}")));
    }
    Ok(r)
}

/// Every surjection `e` onto every subset `B′` of the target with
/// `e ; (B′ ⊆ B) = f`, found by backtracking over the values of `e` and
/// abandoning a branch at the first symbol where it disagrees with `f`.
/// Returns the first one that differs from `fact`.
fn second_set_factorization(f: &PlMorphism, fact: &FactorizationOf<SetInclusions>, cap: u64) -> Result<Option<String>> {
    fn extend(src: &[&String], f: &PlMorphism, sub: &[&String], chosen: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
        let Some(x) = src.get(chosen.len()) else {
            out.push(chosen.clone());
            return;
        };
        for y in sub {
            if f.apply(x) == y.as_str() {
                chosen.push((*y).clone());
                extend(src, f, sub, chosen, out);
                chosen.pop();
            }
        }
    }
    let src: Vec<&String> = f.source().symbols().iter().collect();
    for sub in SetInclusions.subobjects(f.target(), cap)? {
        let values: Vec<&String> = sub.symbols().iter().collect();
        let mut found = Vec::new();
        extend(&src, f, &values, &mut Vec::new(), &mut found);
        for image in found {
            let map = src.iter().map(|s| (*s).clone()).zip(image).collect();
            let e = PlMorphism::new(f.source().clone(), sub.clone(), map)?;
            if !e.is_surjective() {
                continue;
            }
            let incl = SetInclusions.inclusion(&sub, f.target())?;
            if e != fact.surjection || incl != fact.inclusion {
                return Ok(Some(format!("second factorization through {sub}")));
            }
        }
    }
    Ok(None)
}

pub fn factorization_msa(g: &mut Gen, iters: usize, kind: MsaInclusionKind, cap: u64) -> Result<LawResult> {
    let cat = MsaSignatures::new(kind);
    let mut r = LawResult::new(format!("factorization in {kind} MSA signatures"));
    for _ in 0..iters {
        let src = gen::msa_signature(g, 3, 4);
        let f = gen::msa_morphism_from(g, &src, 1);
        let fact = cat.factorize(&f)?;
        let v = factorization_violation(&cat, &f, &fact, cap)?;
        r.check_opt(v.map(|v| format!("{f}: {v}")));
    }
    Ok(r)
}

/// Every cospan `f : A → B`, `B′ ⊆ B` with `|A|, |B| ≤ max`.
pub fn pullback_uniqueness_pl(max: usize, cap: u64) -> Result<LawResult> {
    let cat = SetInclusions;
    let mut r = LawResult::new(format!("semi-inclusive pullbacks in SET are unique (|A|, |B| ≤ {max})"));
    for na in 0..=max {
        for nb in 0..=max {
            let (a, b) = (named("a", na), named("b", nb));
            for f in cat.morphisms(&a, &b, cap)? {
                for sub in cat.subobjects(&b, cap)? {
                    let incl = cat.inclusion(&sub, &b)?;
                    let sq = cat.semi_inclusive_pullback(&f, &incl)?;
                    let v = pullback_violation(&cat, &sq, cap)?;
                    r.check_opt(v.map(|v| format!("{f} along {sub}: {v}")));
                }
            }
        }
    }
    Ok(r)
}

/// Associativity over every composable triple, and the unit laws, for partial
/// maps between signatures of at most `max` symbols.
pub fn psign_category_pl(max: usize) -> Result<[LawResult; 2]> {
    let cat = SetInclusions;
    let mut assoc = LawResult::new(format!("partial composition is associative (≤{max} symbols)"));
    let mut units = LawResult::new(format!("partial identities are units (≤{max} symbols)"));
    let objs: Vec<PlSignature> = (0..=max).map(|n| named("x", n)).collect();
    let mut maps: HashMap<(usize, usize), Vec<PartialOf<Pl>>> = HashMap::new();
    for i in 0..objs.len() {
        for j in 0..objs.len() {
            maps.insert((i, j), pl_partial_maps(&objs[i], &objs[j])?);
        }
    }
    for ((i, j), fs) in &maps {
        let (ida, idb) = (identity(&cat, &objs[*i]), identity(&cat, &objs[*j]));
        for f in fs {
            let ok = compose(&cat, &ida, f)? == *f && compose(&cat, f, &idb)? == *f;
            units.check(ok, || format!("{f:?}"));
        }
    }
    for a in 0..objs.len() {
        for b in 0..objs.len() {
            for c in 0..objs.len() {
                for d in 0..objs.len() {
                    let (fs, gs, hs) = (&maps[&(a, b)], &maps[&(b, c)], &maps[&(c, d)]);
                    let gh: Vec<Vec<PartialOf<Pl>>> = gs
                        .iter()
                        .map(|g| hs.iter().map(|h| compose(&cat, g, h)).collect())
                        .collect::<Result<_>>()?;
                    for f in fs {
                        for (gi, g) in gs.iter().enumerate() {
                            let fg = compose(&cat, f, g)?;
                            for (hi, h) in hs.iter().enumerate() {
                                let lhs = compose(&cat, &fg, h)?;
                                let rhs = compose(&cat, f, &gh[gi][hi])?;
                                assoc.check(lhs == rhs, || format!("{f:?} ; {g:?} ; {h:?}"));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok([assoc, units])
}

/// The hom-set order is a partial order and composition is monotone in both
/// arguments, on random pairs.
pub fn psign_order_pl(g: &mut Gen, iters: usize) -> Result<LawResult> {
    let cat = SetInclusions;
    let mut r = LawResult::new("pSign order: partial order, composition monotone");
    for _ in 0..iters {
        let a = gen::pl_signature(g, 4, 3);
        let b = nonempty(gen::pl_signature(g, 4, 3));
        let c = nonempty(gen::pl_signature(g, 4, 3));
        let big = gen::pl_partial(g, &a, &b);
        let small = restrict(&cat, &big, &gen::pl_subsignature(g, big.dom()))?;
        let smaller = restrict(&cat, &small, &gen::pl_subsignature(g, small.dom()))?;
        let ok = leq(&cat, &big, &big)? && leq(&cat, &small, &big)? && leq(&cat, &smaller, &small)? && leq(&cat, &smaller, &big)?;
        r.check(ok, || format!("reflexivity or transitivity at {big:?}"));

        let other = gen::pl_partial(g, &a, &b);
        if leq(&cat, &other, &big)? && leq(&cat, &big, &other)? {
            r.check(other == big, || format!("antisymmetry at {big:?}"));
        }

        let theta_big = gen::pl_partial(g, &b, &c);
        let theta = restrict(&cat, &theta_big, &gen::pl_subsignature(g, theta_big.dom()))?;
        let lo = compose(&cat, &small, &theta)?;
        let hi = compose(&cat, &big, &theta_big)?;
        r.check(leq(&cat, &lo, &hi)?, || format!("monotonicity at {small:?}, {theta:?}"));
    }
    Ok(r)
}

fn nonempty(s: PlSignature) -> PlSignature {
    if s.is_empty() {
        PlSignature::new(["p"])
    } else {
        s
    }
}

/// `factorize_partial` gives the unique (surjection, inclusion) factorization
/// in the category of partial morphisms.
pub fn psign_factorization<C, F>(cat: &C, g: &mut Gen, iters: usize, cap: u64, name: &str, mut sample: F) -> Result<LawResult>
where
    C: SemiInclusivePullbacks + FiniteEnumeration + Clone,
    F: FnMut(&mut Gen) -> PMor<C>,
{
    let pcat = PartialSign::new(cat.clone());
    let mut r = LawResult::new(format!("factorization of partial morphisms over {name}"));
    for _ in 0..iters {
        let f = sample(g);
        let fact = factorize_partial(cat, &f)?;
        let v = factorization_violation(&pcat, &f, &fact, cap)?;
        r.check_opt(v.map(|v| format!("{f:?}: {v}")));
    }
    Ok(r)
}

/// Surjections are stable under semi-inclusive pullbacks.
pub fn surjection_stability<C, F>(cat: &C, g: &mut Gen, iters: usize, name: &str, mut sample: F) -> Result<LawResult>
where
    C: SemiInclusivePullbacks,
    F: FnMut(&mut Gen) -> (C::Morphism, C::Morphism),
{
    let mut r = LawResult::new(format!("surjections stable under pullback in {name}"));
    for _ in 0..iters {
        let (f, incl) = sample(g);
        let sq = cat.semi_inclusive_pullback(&f, &incl)?;
        r.check(check_surjection_stability(cat, &sq), || format!("{sq:?}"));
    }
    Ok(r)
}

/// A random PL cospan `f : A → B ⊇ B′`, with `f` surjective half the time.
pub fn pl_cospan(g: &mut Gen) -> (PlMorphism, PlMorphism) {
    let mut f = gen::pl_arrow(g, 5);
    if g.gen_bool(0.5) {
        f = SetInclusions.factorize(&f).expect("factorizations exist").surjection;
    }
    let sub = gen::pl_subsignature(g, f.target());
    let incl = PlMorphism::inclusion(&sub, f.target()).expect("subset");
    (f, incl)
}

/// A random MSA cospan in the given inclusion system.
pub fn msa_cospan(g: &mut Gen, cat: &MsaSignatures) -> (crate::msa::MsaMorphism, crate::msa::MsaMorphism) {
    let src = gen::msa_signature(g, 3, 4);
    let mut f = gen::msa_morphism_from(g, &src, 1);
    if g.gen_bool(0.5) {
        f = cat.factorize(&f).expect("factorizations exist").surjection;
    }
    let subs = cat.subobjects(f.target(), 1 << 16).expect("small signature");
    let sub = subs.choose(g).expect("non-empty").clone();
    let incl = cat.inclusion(&sub, f.target()).expect("subobject");
    (f, incl)
}

/// Iso-class representatives of partial maps from `n` to `m` symbols: the
/// domain is an initial segment and fibres are consecutive, of non-increasing size.
pub fn partial_map_representatives(n: usize, m: usize) -> Vec<PartialOf<Pl>> {
    let (src, tgt) = (named("a", n), named("b", m));
    let mut out = Vec::new();
    for d in 0..=n {
        for parts in partitions(d, d, m) {
            let mut pairs = Vec::new();
            let mut next = 0;
            for (j, size) in parts.iter().enumerate() {
                for _ in 0..*size {
                    pairs.push((format!("a{next}"), format!("b{j}")));
                    next += 1;
                }
            }
            let dom = named("a", d);
            let total = PlMorphism::new(dom, tgt.clone(), pairs.into_iter().collect()).expect("well-formed");
            out.push(PartialOf::<Pl>::new(&SetInclusions, src.clone(), total).expect("initial segment"));
        }
    }
    out
}

/// Partitions of `n` into at most `parts` positive parts, each at most `largest`.
fn partitions(n: usize, largest: usize, parts: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    if parts == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in (1..=largest.min(n)).rev() {
        for mut rest in partitions(n - first, first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The Satisfaction Condition for every partial map between signatures of at
/// most `max` symbols (up to renaming), every target model, and every
/// sentence over the domain of depth at most `depth`.
pub fn pl_satisfaction_exhaustive(max: usize, depth: usize, cap: usize) -> Result<LawResult> {
    let pl = Pl::new();
    let cfg = RunConfig::default();
    let mut r = LawResult::new(format!("PL satisfaction condition (≤{max} symbols, depth ≤{depth})"));
    for n in 0..=max {
        for m in 0..=max {
            for phi in partial_map_representatives(n, m) {
                let sources = pl.models(phi.source(), &cfg)?;
                let targets = crate::pl::pl_enumerate_models(phi.target(), cap)?;
                let mut reducts = Vec::with_capacity(targets.len());
                for t in &targets {
                    reducts.push(pmod_reduct_among(&pl, &phi, t, &sources)?);
                }
                pl_for_each_sentence(phi.dom(), depth, |rho| {
                    let translated = psen_translate(&pl, &phi, rho)?.expect("sentence over the domain");
                    for (t, members) in targets.iter().zip(&reducts) {
                        let holds = pl_satisfies(t, &translated);
                        for m in members {
                            r.check(pl_satisfies(m, rho) == holds, || format!("{phi:?}, {t:?}, {rho}"));
                        }
                    }
                    Ok(())
                })?;
            }
        }
    }
    Ok(r)
}

/// The Satisfaction Condition on sampled `(φ, M′, ρ)`.
pub fn satisfaction_sampled<I, F>(inst: &I, g: &mut Gen, iters: usize, cfg: &RunConfig, mut sample: F) -> Result<LawResult>
where
    I: Institution,
    F: FnMut(&mut Gen) -> (PartialOf<I>, I::Model, I::Sentence),
{
    let mut r = LawResult::new(format!("{} satisfaction condition (sampled)", inst.name()));
    for _ in 0..iters {
        let (phi, m, rho) = sample(g);
        let rep = crate::three_halves::check_satisfaction(inst, &phi, &m, &rho, cfg)?;
        r.check(rep.holds(), || format!("{phi:?}, {m:?}, {rho}"));
    }
    Ok(r)
}

/// A random `(φ, M′, ρ)` for MSA: `ρ` is over `dom φ`, which has a sort.
pub fn msa_satisfaction_sample(g: &mut Gen, cat: &MsaSignatures, k: usize) -> (PartialOf<Msa>, crate::msa::Algebra, crate::msa::MsaSentence) {
    loop {
        let src = gen::msa_signature(g, 2, 3);
        let phi = gen::msa_partial(g, cat, &src, 1);
        if phi.dom().sorts().is_empty() {
            continue;
        }
        let m = gen::msa_algebra(g, phi.target(), k);
        let rho = gen::msa_sentence(g, phi.dom(), 3);
        return (phi, m, rho);
    }
}

/// `pSen(φ;θ)ρ = pSen(θ)(pSen(φ)ρ)`, both sides possibly undefined.
pub fn psen_strict_violation<I: Institution>(inst: &I, phi: &PartialOf<I>, theta: &PartialOf<I>, rho: &I::Sentence) -> Result<Option<String>> {
    let composite = compose(inst.category(), phi, theta)?;
    let direct = psen_translate(inst, &composite, rho)?;
    let stepwise = match psen_translate(inst, phi, rho)? {
        Some(s) => psen_translate(inst, theta, &s)?,
        None => None,
    };
    Ok((direct != stepwise).then(|| format!("{phi:?} ; {theta:?} on {rho}: {direct:?} vs {stepwise:?}")))
}

/// pSen strictness over every composable pair of partial maps between
/// signatures of at most `max` symbols and every source sentence up to `depth`.
pub fn psen_strictness_pl(max: usize, depth: usize) -> Result<LawResult> {
    let pl = Pl::new();
    let mut r = LawResult::new(format!("PL sentence translation is strict (≤{max} symbols, depth ≤{depth})"));
    let objs: Vec<PlSignature> = (0..=max).map(|n| named("x", n)).collect();
    for a in &objs {
        let mut sentences = Vec::new();
        pl_for_each_sentence(a, depth, |s| {
            sentences.push(s.clone());
            Ok(())
        })?;
        for b in &objs {
            for phi in pl_partial_maps(a, b)? {
                for c in &objs {
                    for theta in pl_partial_maps(b, c)? {
                        for rho in &sentences {
                            r.check_opt(psen_strict_violation(&pl, &phi, &theta, rho)?);
                        }
                    }
                }
            }
        }
    }
    Ok(r)
}

/// pSen strictness on sampled PL pairs with signatures of at most `max`
/// symbols and sentences over the source of depth at most `depth`.
pub fn psen_strictness_pl_sampled(g: &mut Gen, iters: usize, max: usize, depth: usize) -> Result<LawResult> {
    let pl = Pl::new();
    let mut r = LawResult::new(format!("PL sentence translation is strict (sampled, ≤{max} symbols, depth ≤{depth})"));
    for _ in 0..iters {
        let a = nonempty(gen::pl_signature(g, 6, max));
        let b = gen::pl_signature(g, 6, max);
        let c = gen::pl_signature(g, 6, max);
        let phi = gen::pl_partial(g, &a, &b);
        let theta = gen::pl_partial(g, &b, &c);
        let rho = gen::pl_sentence(g, &a, depth);
        r.check_opt(psen_strict_violation(&pl, &phi, &theta, &rho)?);
    }
    Ok(r)
}

/// `pMod(φ)(pMod(θ)M″) ⊆ pMod(φ;θ)M″` for every enumerated `M″`.
pub fn pmod_lax_violation<I: Institution>(inst: &I, phi: &PartialOf<I>, theta: &PartialOf<I>, cfg: &RunConfig) -> Result<Option<String>> {
    let composite = compose(inst.category(), phi, theta)?;
    let a = inst.models(phi.source(), cfg)?;
    let b = inst.models(theta.source(), cfg)?;
    for m2 in inst.models(theta.target(), cfg)? {
        let direct: BTreeSet<I::Model> = pmod_reduct_among(inst, &composite, &m2, &a)?.into_iter().collect();
        for m1 in pmod_reduct_among(inst, theta, &m2, &b)? {
            for m0 in pmod_reduct_among(inst, phi, &m1, &a)? {
                if !direct.contains(&m0) {
                    return Ok(Some(format!("{phi:?} ; {theta:?}: {m0:?} from {m2:?}")));
                }
            }
        }
    }
    Ok(None)
}

/// `φ ≤ θ` implies `pMod(θ)M′ ⊆ pMod(φ)M′`.
pub fn pmod_monotone_violation<I: Institution>(inst: &I, small: &PartialOf<I>, big: &PartialOf<I>, cfg: &RunConfig) -> Result<Option<String>> {
    let a = inst.models(small.source(), cfg)?;
    for m in inst.models(small.target(), cfg)? {
        let lo: BTreeSet<I::Model> = pmod_reduct_among(inst, small, &m, &a)?.into_iter().collect();
        if let Some(x) = pmod_reduct_among(inst, big, &m, &a)?.into_iter().find(|x| !lo.contains(x)) {
            return Ok(Some(format!("{small:?} ≤ {big:?}: {x:?} from {m:?}")));
        }
    }
    Ok(None)
}

/// `M ∈ pMod(1)M`.
pub fn pmod_identity_violation<I: Institution>(inst: &I, sig: &Obj<I>, cfg: &RunConfig) -> Result<Option<String>> {
    let id = identity(inst.category(), sig);
    let all = inst.models(sig, cfg)?;
    for m in &all {
        if !pmod_reduct_among(inst, &id, m, &all)?.contains(m) {
            return Ok(Some(format!("{m:?} is not among its own identity reducts")));
        }
    }
    Ok(None)
}

/// The lax laws of pMod over every composable pair of partial maps between
/// signatures of at most `max` symbols, plus identity and monotonicity.
pub fn pmod_laws_pl(max: usize) -> Result<LawResult> {
    let pl = Pl::new();
    let cat = SetInclusions;
    let cfg = RunConfig::default();
    let mut r = LawResult::new(format!("PL model reduction is lax (≤{max} symbols)"));
    let objs: Vec<PlSignature> = (0..=max).map(|n| named("x", n)).collect();
    for a in &objs {
        r.check_opt(pmod_identity_violation(&pl, a, &cfg)?);
        for b in &objs {
            for phi in pl_partial_maps(a, b)? {
                for sub in cat.subobjects(phi.dom(), u64::MAX)? {
                    let small = restrict(&cat, &phi, &sub)?;
                    r.check_opt(pmod_monotone_violation(&pl, &small, &phi, &cfg)?);
                }
                for c in &objs {
                    for theta in pl_partial_maps(b, c)? {
                        r.check_opt(pmod_lax_violation(&pl, &phi, &theta, &cfg)?);
                    }
                }
            }
        }
    }
    Ok(r)
}

/// [`pmod_laws_pl`] with `φ` ranging over representatives up to renaming of
/// its source and target, and `θ` over every partial map out of that target.
/// Renaming both sides of a composable pair preserves each law, so this covers
/// the same slice.
pub fn pmod_laws_pl_up_to_renaming(max: usize) -> Result<LawResult> {
    let pl = Pl::new();
    let cat = SetInclusions;
    let cfg = RunConfig::default();
    let mut r = LawResult::new(format!("PL model reduction is lax (≤{max} symbols, up to renaming)"));
    for n in 0..=max {
        r.check_opt(pmod_identity_violation(&pl, &named("a", n), &cfg)?);
        for m in 0..=max {
            for phi in partial_map_representatives(n, m) {
                for sub in cat.subobjects(phi.dom(), u64::MAX)? {
                    let small = restrict(&cat, &phi, &sub)?;
                    r.check_opt(pmod_monotone_violation(&pl, &small, &phi, &cfg)?);
                }
                for c in 0..=max {
                    for theta in pl_partial_maps(phi.target(), &named("c", c))? {
                        r.check_opt(pmod_lax_violation(&pl, &phi, &theta, &cfg)?);
                    }
                }
            }
        }
    }
    Ok(r)
}

/// The same laws on sampled MSA pairs.
pub fn pmod_laws_msa(g: &mut Gen, iters: usize, kind: MsaInclusionKind, cfg: &RunConfig) -> Result<LawResult> {
    let msa = Msa::new(kind);
    let cat = *msa.category();
    let mut r = LawResult::new(format!("MSA model reduction is lax ({kind}, carriers ≤{})", cfg.max_carrier));
    for _ in 0..iters {
        let a = gen::msa_signature(g, 2, 2);
        let phi = gen::msa_partial(g, &cat, &a, 0);
        let theta = gen::msa_partial(g, &cat, phi.target(), 1);
        r.check_opt(pmod_lax_violation(&msa, &phi, &theta, cfg)?);
        let subs = cat.subobjects(phi.dom(), 1 << 16)?;
        let sub = subs.choose(g).expect("non-empty");
        r.check_opt(pmod_monotone_violation(&msa, &restrict(&cat, &phi, sub)?, &phi, cfg)?);
        r.check_opt(pmod_identity_violation(&msa, &a, cfg)?);
    }
    Ok(r)
}

/// pSen strictness on sampled MSA pairs.
pub fn psen_strictness_msa(g: &mut Gen, iters: usize, kind: MsaInclusionKind) -> Result<LawResult> {
    let msa = Msa::new(kind);
    let cat = *msa.category();
    let mut r = LawResult::new(format!("MSA sentence translation is strict ({kind})"));
    let mut done = 0;
    while done < iters {
        let a = gen::msa_signature(g, 3, 4);
        if a.sorts().is_empty() {
            continue;
        }
        let phi = gen::msa_partial(g, &cat, &a, 1);
        let theta = gen::msa_partial(g, &cat, phi.target(), 1);
        // sentences over the domain exercise translation; the rest must stay undefined
        let over = if phi.dom().sorts().is_empty() || g.gen_bool(0.3) { &a } else { phi.dom() };
        let rho = gen::msa_sentence(g, over, 3);
        r.check_opt(psen_strict_violation(&msa, &phi, &theta, &rho)?);
        done += 1;
    }
    Ok(r)
}

/// Reducts of PL homomorphisms compose laxly and contain identities.
pub fn pl_homomorphism_laws(max: usize) -> Result<LawResult> {
    let pl = Pl::new();
    let cfg = RunConfig::default();
    let mut r = LawResult::new(format!("PL homomorphism reducts are lax (≤{max} symbols)"));
    let objs: Vec<PlSignature> = (0..=max).map(|n| named("x", n)).collect();
    for a in &objs {
        for b in &objs {
            let models = pl.models(b, &cfg)?;
            let sources = pl.models(a, &cfg)?;
            for phi in pl_partial_maps(a, b)? {
                for m in &models {
                    let hom = pl_homomorphism_reduct(&phi, m, m, 64)?;
                    for x in pmod_reduct_among(&pl, &phi, m, &sources)? {
                        r.check(hom.contains(&(x.clone(), x.clone())), || format!("identity on {x:?} under {phi:?}"));
                    }
                }
                for m in &models {
                    for n in models.iter().filter(|n| m.0.is_subset(&n.0)) {
                        for p in models.iter().filter(|p| n.0.is_subset(&p.0)) {
                            let h1 = pl_homomorphism_reduct(&phi, m, n, 64)?;
                            let h2 = pl_homomorphism_reduct(&phi, n, p, 64)?;
                            let h12 = pl_homomorphism_reduct(&phi, m, p, 64)?;
                            for (x, y) in &h1 {
                                for (_, z) in h2.iter().filter(|(y2, _)| y2 == y) {
                                    let pair = (x.clone(), z.clone());
                                    r.check(h12.contains(&pair), || format!("{pair:?} under {phi:?}"));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(r)
}

/// A partial morphism that is not Mod-strict, with the arrow into it and the
/// target model exposing the difference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrictnessWitness {
    pub phi: PartialOf<Pl>,
    pub theta: PartialOf<Pl>,
    pub model: PlModel,
}

/// Every embedded total map between signatures of at most `max` symbols is
/// total and Mod-strict against every partial map into its source.
pub fn embedded_total_laws_pl(max: usize) -> Result<LawResult> {
    let pl = Pl::new();
    let cat = SetInclusions;
    let cfg = RunConfig::default();
    let mut r = LawResult::new(format!("embedded total maps are total and Mod-strict (≤{max} symbols)"));
    let objs: Vec<PlSignature> = (0..=max).map(|n| named("x", n)).collect();
    for a in &objs {
        for b in &objs {
            for chi in cat.morphisms(a, b, u64::MAX)? {
                let e = embed(&cat, &chi);
                r.check(is_total(&pl, &e, &cfg)?, || format!("{chi} is not total"));
                for x in &objs {
                    for theta in pl_partial_maps(x, a)? {
                        r.check(is_mod_strict(&pl, &e, &theta, &cfg)?, || format!("{chi} after {theta:?}"));
                    }
                }
            }
        }
    }
    Ok(r)
}

/// Searches partial maps between signatures of `min..=max` symbols for one
/// that is not Mod-strict.
pub fn find_non_strict_pl(min: usize, max: usize) -> Result<Option<StrictnessWitness>> {
    let pl = Pl::new();
    let cfg = RunConfig::default();
    let objs: Vec<PlSignature> = (min..=max).map(|n| named("x", n)).collect();
    for a in &objs {
        for b in &objs {
            for phi in pl_partial_maps(a, b)? {
                if phi.is_defined_everywhere() {
                    continue;
                }
                for x in &objs {
                    for theta in pl_partial_maps(x, a)? {
                        if let Some(model) = mod_strictness_witness(&pl, &phi, &theta, &cfg)? {
                            return Ok(Some(StrictnessWitness { phi, theta, model }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// A random PL span with signatures of at most `max` symbols.
pub fn pl_span(g: &mut Gen, max: usize) -> Span<PlSignature, PlMorphism> {
    let s0 = gen::pl_signature(g, 6, max);
    let s1 = nonempty(gen::pl_signature(g, 6, max));
    let s2 = nonempty(gen::pl_signature(g, 6, max));
    Span::new(gen::pl_partial(g, &s0, &s1), gen::pl_partial(g, &s0, &s2)).expect("shared source")
}

/// For each span: both canonical cocones are valid lax cocones with total
/// side legs, every span model amalgamates stepwise, and exhaustive search
/// over apex models finds exactly one completion.
pub fn cocone_amalgamation_pl(g: &mut Gen, iters: usize, max: usize) -> Result<LawResult> {
    let pl = Pl::new();
    let cat = SetInclusions;
    let cfg = RunConfig::default();
    let mut r = LawResult::new(format!("lax cocones amalgamate uniquely (≤{max} symbols)"));
    for _ in 0..iters {
        let span = pl_span(g, max);
        let minimal = minimal_dom_theta0(&cat, &span)?;
        for d in [None, Some(&minimal)] {
            let c = lax_cocone_with_amalgamation(&cat, &span, d)?;
            let legs_total = c.theta1.is_defined_everywhere() && c.theta2.is_defined_everywhere();
            r.check(verify_cocone(&cat, &c)? && legs_total, || format!("invalid cocone over {span:?}"));
            let index = completion_index(&pl, &c, &cfg)?;
            for [m0, m1, m2] in span_models(&pl, &span, &cfg)? {
                let built = amalgamate_stepwise(&pl, &c, &m0, &m1, &m2);
                let n = count_completions(&pl, &c, &index, [&m0, &m1, &m2])?;
                r.check(built.is_ok() && n == 1, || {
                    format!("span {span:?}, models {m0:?} {m1:?} {m2:?}: {n} completions, {built:?}")
                });
            }
        }
    }
    Ok(r)
}

/// Lax Sign-pushouts of every PL span with signatures of at most `max`
/// symbols admit exactly one mediator into every competing total lax cocone
/// with an apex of at most `max_apex` symbols.
pub fn lax_pushout_universality_pl(max: usize, max_apex: usize, cap: u64) -> Result<LawResult> {
    let cat = SetInclusions;
    let mut r = LawResult::new(format!("lax Sign-pushouts are universal (≤{max} symbols, apex ≤{max_apex})"));
    for n0 in 0..=max {
        let s0 = named("c", n0);
        for n1 in 0..=max {
            let left = pl_partial_maps(&s0, &named("a", n1))?;
            for n2 in 0..=max {
                let right = pl_partial_maps(&s0, &named("b", n2))?;
                for f1 in &left {
                    for f2 in &right {
                        let span = Span::new(f1.clone(), f2.clone())?;
                        r.check_opt(universality_violation(&cat, &span, max_apex, cap)?);
                    }
                }
            }
        }
    }
    Ok(r)
}

fn universality_violation(cat: &SetInclusions, span: &Span<PlSignature, PlMorphism>, max_apex: usize, cap: u64) -> Result<Option<String>> {
    let c = lax_sign_pushout(cat, span)?;
    let total = c.theta0.is_defined_everywhere() && c.theta1.is_defined_everywhere() && c.theta2.is_defined_everywhere();
    if !total || !verify_cocone(cat, &c)? {
        return Ok(Some(format!("not a total lax cocone: {span:?}")));
    }
    let rep = verify_lax_t_pushout(&c, max_apex, cap)?;
    Ok((!rep.holds()).then(|| format!("{span:?}: {:?}", rep.failures)))
}

/// The same check on random spans.
pub fn lax_pushout_universality_sampled(g: &mut Gen, iters: usize, max: usize, max_apex: usize, cap: u64) -> Result<LawResult> {
    let mut r = LawResult::new(format!("lax Sign-pushouts are universal (sampled, apex ≤{max_apex})"));
    for _ in 0..iters {
        let span = pl_span(g, max);
        r.check_opt(universality_violation(&SetInclusions, &span, max_apex, cap)?);
    }
    Ok(r)
}

/// Random PL theory-morphism instances. Half of them copy the translatable
/// axioms of the source into the target, so that positive cases occur.
pub fn theory_instance(g: &mut Gen, max: usize, max_axioms: usize) -> (PartialOf<Pl>, Theory<PlSignature, crate::pl::PlSentence>, Theory<PlSignature, crate::pl::PlSentence>) {
    let pl = Pl::new();
    let s = gen::pl_signature(g, 6, max);
    let t = nonempty(gen::pl_signature(g, 6, max));
    let phi = gen::pl_partial(g, &s, &t);
    let src = gen::pl_theory(g, &s, max_axioms, 2);
    let mut tgt = gen::pl_theory(g, &t, max_axioms, 2);
    if g.gen_bool(0.5) {
        for a in &src.axioms {
            if let Ok(Some(x)) = psen_translate(&pl, &phi, a) {
                tgt.axioms.push(x);
            }
        }
        tgt.axioms.truncate(max_axioms);
    }
    (phi, src, tgt)
}

/// strong32 ⇒ weak32 ⇔ closed-partial ⇒ strong-partial, and the semantic
/// weak32 verdict agrees with the syntactic depth-`depth` check.
pub fn theory_nesting_pl(g: &mut Gen, iters: usize, max: usize, depth: usize) -> Result<[LawResult; 2]> {
    let pl = Pl::new();
    let cfg = RunConfig::default();
    let mut nesting = LawResult::new(format!("theory morphism notions nest (≤{max} symbols)"));
    let mut agree = LawResult::new(format!("weak 3/2 verdict agrees with the depth-{depth} syntactic check"));
    for _ in 0..iters {
        let (phi, src, tgt) = theory_instance(g, max, 3);
        let rep = classify_32_theory_morphism(&pl, &phi, &src, &tgt, &cfg)?;
        nesting.check(rep.nesting_holds(), || format!("{phi:?}, {src:?}, {tgt:?}: {rep:?}"));
        let syntactic = pl_weak32_syntactic(&phi, &src, &tgt, depth, cfg.pl_signature_cap)?;
        agree.check(syntactic == rep.weak32.holds, || format!("{phi:?}, {src:?}, {tgt:?}"));
    }
    Ok([nesting, agree])
}

/// The randomized suite behind `verify-laws`: every family, sampled with
/// `iters` instances from `seed`, plus the cheap exhaustive slices.
pub fn run_all(seed: u64, iters: usize, cfg: &RunConfig) -> Result<LawReport> {
    let mut g = gen::rng(seed);
    let cap = cfg.enumeration_cap;
    let msa_cfg = cfg.with_max_carrier(cfg.max_carrier.min(2));
    let mut laws = vec![factorization_pl(&mut g, iters, 6, cap)?];
    for kind in MsaInclusionKind::ALL {
        laws.push(factorization_msa(&mut g, iters, kind, cap)?);
    }
    laws.extend(psign_category_pl(2)?);
    laws.push(psign_order_pl(&mut g, iters)?);
    laws.push(psign_factorization(&SetInclusions, &mut g, iters, cap, "SET", |g| {
        let a = gen::pl_signature(g, 6, 4);
        let b = nonempty(gen::pl_signature(g, 6, 4));
        gen::pl_partial(g, &a, &b)
    })?);
    laws.push(surjection_stability(&SetInclusions, &mut g, iters, "SET", pl_cospan)?);
    for kind in MsaInclusionKind::ALL {
        let cat = MsaSignatures::new(kind);
        laws.push(psign_factorization(&cat, &mut g, iters, cap, &format!("{kind} MSA"), |g| {
            let a = gen::msa_signature(g, 2, 2);
            gen::msa_partial(g, &cat, &a, 0)
        })?);
        laws.push(surjection_stability(&cat, &mut g, iters, &format!("{kind} MSA"), |g| msa_cospan(g, &cat))?);
    }
    let pl = Pl::new();
    laws.push(satisfaction_sampled(&pl, &mut g, iters, cfg, |g| {
        let a = gen::pl_signature(g, 6, 4);
        let b = nonempty(gen::pl_signature(g, 6, 4));
        let mut phi = gen::pl_partial(g, &a, &b);
        while phi.dom().is_empty() {
            phi = gen::pl_partial(g, &nonempty(a.clone()), &b);
        }
        let m = gen::pl_model(g, &b);
        let rho = gen::pl_sentence(g, phi.dom(), 3);
        (phi, m, rho)
    })?);
    for kind in MsaInclusionKind::ALL {
        let msa = Msa::new(kind);
        let cat = *msa.category();
        let mut sat = satisfaction_sampled(&msa, &mut g, iters, &msa_cfg, |g| {
            msa_satisfaction_sample(g, &cat, msa_cfg.max_carrier)
        })?;
        sat.name = format!("MSA satisfaction condition ({kind}, sampled)");
        laws.push(sat);
        laws.push(psen_strictness_msa(&mut g, iters, kind)?);
        laws.push(pmod_laws_msa(&mut g, iters.div_ceil(4), kind, &msa_cfg)?);
    }
    laws.push(psen_strictness_pl(2, 1)?);
    laws.push(pmod_laws_pl(2)?);
    laws.push(pl_homomorphism_laws(2)?);
    laws.push(embedded_total_laws_pl(2)?);
    let mut search = LawResult::new("some strictly partial map is not Mod-strict");
    let found = find_non_strict_pl(1, 2)?;
    search.check(found.is_some(), || "no witness among 1–2 symbol signatures".into());
    laws.push(search);
    laws.push(cocone_amalgamation_pl(&mut g, iters, 3)?);
    laws.push(lax_pushout_universality_sampled(&mut g, iters, 3, 2, cap)?);
    laws.extend(theory_nesting_pl(&mut g, iters, 4, 4)?);
    Ok(LawReport { seed, iters, laws })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representatives_cover_every_map_up_to_renaming() {
        // oracle: the number of iso classes of partial maps n → m equals the
        // number of partitions of some d ≤ n into at most m parts
        assert_eq!(partial_map_representatives(0, 3).len(), 1);
        assert_eq!(partial_map_representatives(2, 2).len(), 1 + 1 + 2);
        assert_eq!(partial_map_representatives(4, 4).len(), 1 + 1 + 2 + 3 + 5);
        assert_eq!(partial_map_representatives(3, 1).len(), 4);
    }

    #[test]
    fn small_exhaustive_slices_pass() {
        assert!(pullback_uniqueness_pl(2, 1 << 20).unwrap().passed());
        for l in psign_category_pl(1).unwrap() {
            assert!(l.passed(), "{l}");
        }
        assert!(pl_satisfaction_exhaustive(2, 2, 20).unwrap().passed());
        assert!(psen_strictness_pl(1, 1).unwrap().passed());
        assert!(pmod_laws_pl(1).unwrap().passed());
        assert!(pl_homomorphism_laws(1).unwrap().passed());
        assert!(embedded_total_laws_pl(1).unwrap().passed());
        assert!(lax_pushout_universality_pl(1, 2, 1 << 20).unwrap().passed());
    }

    #[test]
    fn set_factorization_search_agrees_with_enumeration() {
        let mut g = gen::rng(21);
        for _ in 0..200 {
            let f = gen::pl_arrow(&mut g, 4);
            let fact = SetInclusions.factorize(&f).unwrap();
            assert_eq!(second_set_factorization(&f, &fact, 1 << 20).unwrap(), None);
            assert_eq!(factorization_violation(&SetInclusions, &f, &fact, 1 << 20).unwrap(), None);
        }
        // a factorization through a larger subset is caught as a second one
        let f = PlMorphism::from_pairs(named("a", 2), named("b", 3), [("a0", "b0"), ("a1", "b0")]).unwrap();
        let wrong = SetInclusions.factorize(&PlMorphism::identity(&named("b", 1))).unwrap();
        assert!(second_set_factorization(&f, &wrong, 1 << 20).unwrap().is_some());
    }

    #[test]
    fn renaming_slice_passes_where_the_full_one_does() {
        assert!(pmod_laws_pl(2).unwrap().passed());
        assert!(pmod_laws_pl_up_to_renaming(2).unwrap().passed());
    }

    #[test]
    fn a_non_strict_witness_exists() {
        let w = find_non_strict_pl(1, 2).unwrap().expect("witness");
        assert!(!w.phi.is_defined_everywhere());
    }

    #[test]
    fn sampled_suite_passes() {
        let rep = run_all(3, 15, &RunConfig::default()).unwrap();
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn violations_are_recorded() {
        let mut r = LawResult::new("x");
        r.check(true, || unreachable!());
        r.check(false, || "first".into());
        r.check(false, || "second".into());
        assert_eq!((r.checked, r.violations, r.example.as_deref()), (3, 2, Some("first")));
        assert!(!r.passed());
        assert!(!LawResult::new("empty").passed());
    }
}
