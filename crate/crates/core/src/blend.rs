//! Lax cocones over spans of partial morphisms, the blends they produce, and
//! model amalgamation along them.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Display, Write as _};

use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::inclusion::{FiniteEnumeration, InclusiveCategory, PushoutCocone, Pushouts, SemiInclusivePullbacks};
use crate::institution::{Institution, Mor, Obj};
use crate::partial::{compose, embed, leq, PartialMorphism, PMor};
use crate::pl::{PlMorphism, PlSignature};

/// Two partial morphisms out of a common signature.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Span<O, M> {
    pub left: PartialMorphism<O, M>,
    pub right: PartialMorphism<O, M>,
}

impl<O: Clone + Eq + fmt::Debug, M: Clone> Span<O, M> {
    pub fn new(left: PartialMorphism<O, M>, right: PartialMorphism<O, M>) -> Result<Self> {
        if left.source() != right.source() {
            return Err(Error::contract(format!(
                "span legs start at {:?} and {:?}",
                left.source(),
                right.source()
            )));
        }
        Ok(Span { left, right })
    }

}

impl<O: Eq, M> Span<O, M> {
    pub fn apex(&self) -> &O {
        self.left.source()
    }

    pub fn legs(&self) -> [&PartialMorphism<O, M>; 2] {
        [&self.left, &self.right]
    }
}

/// Which construction produced a cocone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoconeKind {
    SignPushout,
    Amalgamation,
}

/// The intermediate pushouts. `first[k]` is the pushout of the total part of
/// leg `k` against `dom_k ⊆ dom_theta0`, with `left` out of `Σ_k` and `right`
/// out of `dom_theta0`; `second` is the pushout of the two `right` legs. For
/// the lax Sign-pushout `dom_theta0` is the whole source and these are the
/// `(χ_k, α_k)` and `(β_1, β_2)` of that construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoconeTrace<O, M> {
    pub kind: CoconeKind,
    pub dom_theta0: O,
    pub first: [PushoutCocone<M>; 2],
    pub second: PushoutCocone<M>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LaxCocone<O, M> {
    pub span: Span<O, M>,
    pub theta0: PartialMorphism<O, M>,
    pub theta1: PartialMorphism<O, M>,
    pub theta2: PartialMorphism<O, M>,
    /// `leg_k ; theta_k ≤ theta0`, as checked at construction.
    pub below: [bool; 2],
    /// Whether those inequalities are equalities.
    pub strict: [bool; 2],
    pub trace: CoconeTrace<O, M>,
}

impl<O: Eq, M> LaxCocone<O, M> {
    pub fn apex(&self) -> &O {
        self.theta0.target()
    }

    pub fn sides(&self) -> [&PartialMorphism<O, M>; 2] {
        [&self.theta1, &self.theta2]
    }
}

/// Recomputes `leg_k ; theta_k ≤ theta0` and equality, for `k = 1, 2`.
pub fn cocone_witnesses<C: SemiInclusivePullbacks>(
    cat: &C,
    span: &Span<C::Object, C::Morphism>,
    theta0: &PMor<C>,
    sides: [&PMor<C>; 2],
) -> Result<([bool; 2], [bool; 2])> {
    let mut below = [false; 2];
    let mut strict = [false; 2];
    for (k, (leg, side)) in span.legs().into_iter().zip(sides).enumerate() {
        let path = compose(cat, leg, side)?;
        below[k] = leq(cat, &path, theta0)?;
        strict[k] = path == *theta0;
    }
    Ok((below, strict))
}

pub fn verify_cocone<C: SemiInclusivePullbacks>(cat: &C, cocone: &LaxCocone<C::Object, C::Morphism>) -> Result<bool> {
    let (below, _) = cocone_witnesses(cat, &cocone.span, &cocone.theta0, cocone.sides())?;
    Ok(below == [true, true])
}

/// The least admissible domain for `theta0`: the join of the two leg domains.
pub fn minimal_dom_theta0<C: FiniteEnumeration>(cat: &C, span: &Span<C::Object, C::Morphism>) -> Result<C::Object> {
    cat.join(span.left.dom(), span.right.dom(), span.apex())
}

fn build<C>(
    cat: &C,
    span: &Span<C::Object, C::Morphism>,
    dom_theta0: C::Object,
    kind: CoconeKind,
) -> Result<LaxCocone<C::Object, C::Morphism>>
where
    C: SemiInclusivePullbacks + Pushouts,
{
    let d_incl = cat.inclusion(&dom_theta0, span.apex()).map_err(|_| {
        Error::contract(format!("{dom_theta0:?} is not a subsignature of the span source"))
    })?;
    let mut first = Vec::with_capacity(2);
    for (k, leg) in span.legs().into_iter().enumerate() {
        let incl = cat.inclusion(leg.dom(), &dom_theta0).map_err(|_| {
            Error::contract(format!(
                "the domain of leg {} is not contained in the chosen domain {dom_theta0:?}",
                k + 1
            ))
        })?;
        first.push(cat.pushout(leg.total(), &incl)?);
    }
    let first: [PushoutCocone<C::Morphism>; 2] = [first[0].clone(), first[1].clone()];
    let second = cat.pushout(&first[0].right, &first[1].right)?;
    let theta1 = embed(cat, &cat.compose(&first[0].left, &second.left)?);
    let theta2 = embed(cat, &cat.compose(&first[1].left, &second.right)?);
    let theta0_total = cat.compose(&first[0].right, &second.left)?;
    debug_assert_eq!(Ok(&theta0_total), cat.compose(&first[1].right, &second.right).as_ref());
    let theta0 = PartialMorphism::new(cat, span.apex().clone(), theta0_total)?;
    debug_assert_eq!(theta0.witness(), &d_incl);
    let (below, strict) = cocone_witnesses(cat, span, &theta0, [&theta1, &theta2])?;
    Ok(LaxCocone {
        span: span.clone(),
        theta0,
        theta1,
        theta2,
        below,
        strict,
        trace: CoconeTrace {
            kind,
            dom_theta0,
            first,
            second,
        },
    })
}

/// The lax Sign-pushout of a span: all three legs are total.
pub fn lax_sign_pushout<C>(cat: &C, span: &Span<C::Object, C::Morphism>) -> Result<LaxCocone<C::Object, C::Morphism>>
where
    C: SemiInclusivePullbacks + Pushouts,
{
    build(cat, span, span.apex().clone(), CoconeKind::SignPushout)
}

/// The lax cocone whose `theta0` is defined on `dom_theta0` (default: the
/// whole source). The chosen domain must contain both leg domains.
pub fn lax_cocone_with_amalgamation<C>(
    cat: &C,
    span: &Span<C::Object, C::Morphism>,
    dom_theta0: Option<&C::Object>,
) -> Result<LaxCocone<C::Object, C::Morphism>>
where
    C: SemiInclusivePullbacks + Pushouts,
{
    let d = dom_theta0.cloned().unwrap_or_else(|| span.apex().clone());
    build(cat, span, d, CoconeKind::Amalgamation)
}

/// One model per node of a diagram.
pub type DiagramModel<M> = BTreeMap<String, M>;

/// Whether `lower` lies in the reduct set of `upper` along `phi`.
pub fn in_reduct_set<I: Institution>(
    inst: &I,
    phi: &PartialMorphism<Obj<I>, Mor<I>>,
    lower: &I::Model,
    upper: &I::Model,
) -> Result<bool> {
    Ok(inst.reduct(phi.witness(), lower)? == inst.reduct(phi.total(), upper)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Amalgamation<M> {
    pub model: M,
    /// Number of apex models completing the span model, by exhaustive search.
    pub completions: usize,
    pub bound: Option<usize>,
}

impl<M> Amalgamation<M> {
    pub fn is_unique(&self) -> bool {
        self.completions == 1
    }
}

fn check_span_model<I: Institution>(
    inst: &I,
    span: &Span<Obj<I>, Mor<I>>,
    models: [&I::Model; 3],
) -> Result<()> {
    inst.check_model(span.apex(), models[0])?;
    for (k, leg) in span.legs().into_iter().enumerate() {
        inst.check_model(leg.target(), models[k + 1])?;
        if !in_reduct_set(inst, leg, models[0], models[k + 1])? {
            return Err(Error::contract(format!(
                "the source model is not a reduct of the model of side {} along leg {}",
                k + 1,
                k + 1
            )));
        }
    }
    Ok(())
}

/// Whether `apex_model` completes `(m0, m1, m2)` to a model of the cocone.
pub fn completes<I: Institution>(
    inst: &I,
    cocone: &LaxCocone<Obj<I>, Mor<I>>,
    models: [&I::Model; 3],
    apex_model: &I::Model,
) -> Result<bool> {
    Ok(inst.reduct(cocone.theta1.total(), apex_model)? == *models[1]
        && inst.reduct(cocone.theta2.total(), apex_model)? == *models[2]
        && in_reduct_set(inst, &cocone.theta0, models[0], apex_model)?)
}

/// For each apex model, the data a completion has to agree with:
/// the two side reducts and the restriction to `dom theta0`.
pub type CompletionIndex<M> = HashMap<(M, M, M), usize>;

pub fn completion_index<I: Institution>(
    inst: &I,
    cocone: &LaxCocone<Obj<I>, Mor<I>>,
    cfg: &RunConfig,
) -> Result<CompletionIndex<I::Model>> {
    let mut index = HashMap::new();
    for m in inst.models(cocone.apex(), cfg)? {
        let key = (
            inst.reduct(cocone.theta1.total(), &m)?,
            inst.reduct(cocone.theta2.total(), &m)?,
            inst.reduct(cocone.theta0.total(), &m)?,
        );
        *index.entry(key).or_insert(0) += 1;
    }
    Ok(index)
}

/// Number of completions of a span model, looked up in a precomputed index.
pub fn count_completions<I: Institution>(
    inst: &I,
    cocone: &LaxCocone<Obj<I>, Mor<I>>,
    index: &CompletionIndex<I::Model>,
    models: [&I::Model; 3],
) -> Result<usize> {
    let n0 = inst.reduct(cocone.theta0.witness(), models[0])?;
    Ok(index
        .get(&(models[1].clone(), models[2].clone(), n0))
        .copied()
        .unwrap_or(0))
}

/// Builds the amalgamation step by step: first the restriction `N0` of the
/// source model to `dom theta0`, then `M′_k` from `N0` and `M_k`, then the
/// apex model from `M′_1` and `M′_2`.
pub fn amalgamate_stepwise<I: Institution>(
    inst: &I,
    cocone: &LaxCocone<Obj<I>, Mor<I>>,
    m0: &I::Model,
    m1: &I::Model,
    m2: &I::Model,
) -> Result<I::Model> {
    check_span_model(inst, &cocone.span, [m0, m1, m2])?;
    let n0 = inst.reduct(cocone.theta0.witness(), m0)?;
    let side1 = inst.amalgamate_pushout(&cocone.trace.first[0], m1, &n0)?;
    let side2 = inst.amalgamate_pushout(&cocone.trace.first[1], m2, &n0)?;
    let m = inst.amalgamate_pushout(&cocone.trace.second, &side1, &side2)?;
    if !completes(inst, cocone, [m0, m1, m2], &m)? {
        return Err(Error::contract("stepwise amalgamation is not a model of the cocone"));
    }
    Ok(m)
}

pub fn amalgamate<I: Institution>(
    inst: &I,
    cocone: &LaxCocone<Obj<I>, Mor<I>>,
    m0: &I::Model,
    m1: &I::Model,
    m2: &I::Model,
    cfg: &RunConfig,
) -> Result<Amalgamation<I::Model>> {
    let model = amalgamate_stepwise(inst, cocone, m0, m1, m2)?;
    let mut completions = 0;
    for m in inst.models(cocone.apex(), cfg)? {
        if completes(inst, cocone, [m0, m1, m2], &m)? {
            completions += 1;
        }
    }
    Ok(Amalgamation {
        model,
        completions,
        bound: (!inst.exact_semantics()).then_some(cfg.max_carrier),
    })
}

/// Every model `(M0, M1, M2)` of a span.
pub fn span_models<I: Institution>(
    inst: &I,
    span: &Span<Obj<I>, Mor<I>>,
    cfg: &RunConfig,
) -> Result<Vec<[I::Model; 3]>> {
    let m0s = inst.models(span.apex(), cfg)?;
    let m1s = inst.models(span.left.target(), cfg)?;
    let m2s = inst.models(span.right.target(), cfg)?;
    let mut by_restriction: [HashMap<I::Model, Vec<&I::Model>>; 2] = [HashMap::new(), HashMap::new()];
    for (k, (leg, ms)) in span.legs().into_iter().zip([&m1s, &m2s]).enumerate() {
        for m in ms {
            by_restriction[k].entry(inst.reduct(leg.total(), m)?).or_default().push(m);
        }
    }
    let mut out = Vec::new();
    for m0 in &m0s {
        let r1 = inst.reduct(span.left.witness(), m0)?;
        let r2 = inst.reduct(span.right.witness(), m0)?;
        let (Some(a), Some(b)) = (by_restriction[0].get(&r1), by_restriction[1].get(&r2)) else {
            continue;
        };
        for m1 in a {
            for m2 in b {
                out.push([m0.clone(), (*m1).clone(), (*m2).clone()]);
            }
        }
    }
    Ok(out)
}

/// A commuting square of total morphisms `f_k : Σ0 → Σ_k`, `g_k : Σ_k → Σ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutingSquare<M> {
    pub f1: M,
    pub f2: M,
    pub g1: M,
    pub g2: M,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AmalgamationVerdict {
    Amalgamation,
    Weak,
    Neither,
}

impl Display for AmalgamationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Amalgamation => "amalgamation",
            Self::Weak => "weak amalgamation",
            Self::Neither => "no amalgamation",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareReport<M> {
    pub verdict: AmalgamationVerdict,
    pub span_models: usize,
    /// A span model `(M1, M2)` with no completion, or failing that, one with several.
    pub witness: Option<(M, M, usize)>,
    pub bound: Option<usize>,
}

pub fn check_amalgamation_square<I: Institution>(
    inst: &I,
    square: &CommutingSquare<Mor<I>>,
    cfg: &RunConfig,
) -> Result<SquareReport<I::Model>> {
    let cat = inst.category();
    if cat.compose(&square.f1, &square.g1)? != cat.compose(&square.f2, &square.g2)? {
        return Err(Error::contract("the square does not commute"));
    }
    let mut index: HashMap<(I::Model, I::Model), usize> = HashMap::new();
    for m in inst.models(cat.target(&square.g1), cfg)? {
        let key = (inst.reduct(&square.g1, &m)?, inst.reduct(&square.g2, &m)?);
        *index.entry(key).or_insert(0) += 1;
    }
    let mut by_restriction: HashMap<I::Model, Vec<I::Model>> = HashMap::new();
    for m2 in inst.models(cat.target(&square.f2), cfg)? {
        by_restriction.entry(inst.reduct(&square.f2, &m2)?).or_default().push(m2);
    }
    let mut missing = None;
    let mut several = None;
    let mut count = 0;
    for m1 in inst.models(cat.target(&square.f1), cfg)? {
        let r = inst.reduct(&square.f1, &m1)?;
        for m2 in by_restriction.get(&r).into_iter().flatten() {
            count += 1;
            let n = index.get(&(m1.clone(), m2.clone())).copied().unwrap_or(0);
            if n == 0 && missing.is_none() {
                missing = Some((m1.clone(), m2.clone(), 0));
            } else if n > 1 && several.is_none() {
                several = Some((m1.clone(), m2.clone(), n));
            }
        }
    }
    let verdict = match (&missing, &several) {
        (Some(_), _) => AmalgamationVerdict::Neither,
        (None, Some(_)) => AmalgamationVerdict::Weak,
        (None, None) => AmalgamationVerdict::Amalgamation,
    };
    Ok(SquareReport {
        verdict,
        span_models: count,
        witness: missing.or(several),
        bound: (!inst.exact_semantics()).then_some(cfg.max_carrier),
    })
}

/// A finite diagram: nodes carry a signature and optional axioms, edges are
/// partial morphisms between node signatures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagram<O, M, S> {
    pub nodes: Vec<DiagramNode<O, S>>,
    pub edges: Vec<DiagramEdge<O, M>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramNode<O, S> {
    pub name: String,
    pub signature: O,
    pub axioms: Vec<S>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramEdge<O, M> {
    pub name: String,
    pub from: String,
    pub to: String,
    pub morphism: PartialMorphism<O, M>,
}

pub type DiagramOf<I> = Diagram<Obj<I>, Mor<I>, <I as Institution>::Sentence>;

impl<O: Eq + fmt::Debug, M, S> Diagram<O, M, S> {
    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeMap::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if seen.insert(n.name.as_str(), i).is_some() {
                return Err(Error::validation(format!("node {} is declared twice", n.name)));
            }
        }
        for e in &self.edges {
            let (Some(&a), Some(&b)) = (seen.get(e.from.as_str()), seen.get(e.to.as_str())) else {
                return Err(Error::validation(format!("edge {} refers to an unknown node", e.name)));
            };
            if e.morphism.source() != &self.nodes[a].signature || e.morphism.target() != &self.nodes[b].signature {
                return Err(Error::validation(format!("edge {} does not fit its nodes", e.name)));
            }
        }
        Ok(())
    }
}

/// Searches for a model of the diagram: one model of each node's axioms
/// such that every edge relates them by reduct. Backtracks over nodes in
/// declaration order.
pub fn find_diagram_model<I: Institution>(
    inst: &I,
    diagram: &DiagramOf<I>,
    cfg: &RunConfig,
) -> Result<Option<DiagramModel<I::Model>>> {
    diagram.validate()?;
    let mut candidates = Vec::with_capacity(diagram.nodes.len());
    for n in &diagram.nodes {
        let mut ok = Vec::new();
        for m in inst.models(&n.signature, cfg)? {
            let mut sat = true;
            for a in &n.axioms {
                if !inst.satisfies(&n.signature, &m, a)? {
                    sat = false;
                    break;
                }
            }
            if sat {
                ok.push(m);
            }
        }
        candidates.push(ok);
    }
    let index: BTreeMap<&str, usize> = diagram.nodes.iter().enumerate().map(|(i, n)| (n.name.as_str(), i)).collect();
    // edges become checkable once both endpoints are assigned
    let mut ready: Vec<Vec<(usize, usize, &PartialMorphism<Obj<I>, Mor<I>>)>> = vec![Vec::new(); diagram.nodes.len()];
    for e in &diagram.edges {
        let (a, b) = (index[e.from.as_str()], index[e.to.as_str()]);
        ready[a.max(b)].push((a, b, &e.morphism));
    }
    let mut choice: Vec<usize> = Vec::with_capacity(diagram.nodes.len());
    let mut next = 0usize;
    loop {
        let depth = choice.len();
        if depth == diagram.nodes.len() {
            let model = diagram
                .nodes
                .iter()
                .zip(&choice)
                .zip(&candidates)
                .map(|((n, &c), cs)| (n.name.clone(), cs[c].clone()))
                .collect();
            return Ok(Some(model));
        }
        if next < candidates[depth].len() {
            choice.push(next);
            let mut fits = true;
            for &(a, b, phi) in &ready[depth] {
                if !in_reduct_set(inst, phi, &candidates[a][choice[a]], &candidates[b][choice[b]])? {
                    fits = false;
                    break;
                }
            }
            if fits {
                next = 0;
            } else {
                next = choice.pop().unwrap() + 1;
            }
        } else {
            match choice.pop() {
                Some(c) => next = c + 1,
                None => return Ok(None),
            }
        }
    }
}

pub fn is_consistent<I: Institution>(inst: &I, diagram: &DiagramOf<I>, cfg: &RunConfig) -> Result<bool> {
    Ok(find_diagram_model(inst, diagram, cfg)?.is_some())
}

/// Outcome of checking a cocone for minimality among total lax cocones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniversalityReport {
    pub competitors: u64,
    pub max_apex: usize,
    /// Competitors with no mediator or with several, as `(apex size, mediator count)`.
    pub failures: Vec<(usize, u128)>,
}

impl UniversalityReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn positions(sig: &PlSignature) -> BTreeMap<&str, usize> {
    sig.symbols().iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect()
}

fn as_indices(m: &PlMorphism) -> Vec<usize> {
    let tgt = positions(m.target());
    m.source().symbols().iter().map(|s| tgt[m.apply(s)]).collect()
}

/// Number of `μ : apex → m` with `theta_k ; μ = gamma_k`, by propagating the
/// value each apex symbol is forced to.
fn mediator_count(thetas: [&[usize]; 3], gammas: [&[usize]; 3], apex: usize, m: usize, scratch: &mut [Option<usize>]) -> u128 {
    scratch[..apex].fill(None);
    for (theta, gamma) in thetas.iter().zip(gammas) {
        for (&y, &v) in theta.iter().zip(gamma) {
            match scratch[y] {
                None => scratch[y] = Some(v),
                Some(w) if w != v => return 0,
                _ => {}
            }
        }
    }
    let free = scratch[..apex].iter().filter(|x| x.is_none()).count();
    (m as u128).pow(free as u32)
}

/// Checks that `cocone` (over a PL span) is a lax pushout among total lax
/// cocones: every competitor `(γ0, γ1, γ2)` of total morphisms into an apex of
/// at most `max_apex` symbols, with `leg_k ; γ_k ≤ γ0`, factors through it by
/// exactly one total `μ`.
pub fn verify_lax_t_pushout(
    cocone: &LaxCocone<PlSignature, PlMorphism>,
    max_apex: usize,
    cap: u64,
) -> Result<UniversalityReport> {
    if !cocone.theta0.is_defined_everywhere()
        || !cocone.theta1.is_defined_everywhere()
        || !cocone.theta2.is_defined_everywhere()
    {
        return Err(Error::contract("cocone legs must be total"));
    }
    let s0 = cocone.span.apex();
    let (s1, s2) = (cocone.span.left.target(), cocone.span.right.target());
    let apex = cocone.apex().len();
    let th0 = as_indices(cocone.theta0.total());
    let th1 = as_indices(cocone.theta1.total());
    let th2 = as_indices(cocone.theta2.total());
    let p0 = positions(s0);
    // constraint of leg k: (index in Σ0, index in Σ_k)
    let leg_pairs: Vec<Vec<(usize, usize)>> = cocone
        .span
        .legs()
        .into_iter()
        .map(|leg| {
            let tgt = positions(leg.target());
            leg.total()
                .map()
                .iter()
                .map(|(a, b)| (p0[a.as_str()], tgt[b.as_str()]))
                .collect()
        })
        .collect();
    let mut needed: u128 = 0;
    for m in 0..=max_apex {
        let m = m as u128;
        needed = needed.saturating_add(m.saturating_pow((s0.len() + s1.len() + s2.len()) as u32));
    }
    if needed > cap as u128 {
        return Err(Error::resource("competing cocones", needed, cap as u128));
    }
    let mut report = UniversalityReport {
        competitors: 0,
        max_apex,
        failures: Vec::new(),
    };
    let mut scratch = vec![None; apex];
    let mut g0 = vec![0usize; s0.len()];
    for m in 0..=max_apex {
        if m == 0 && !(s1.is_empty() && s2.is_empty() && s0.is_empty()) {
            continue;
        }
        let mut g1 = vec![0usize; s1.len()];
        loop {
            let mut g2 = vec![0usize; s2.len()];
            loop {
                // γ0 is forced on the leg domains and free elsewhere
                let mut forced: Vec<Option<usize>> = vec![None; s0.len()];
                let mut ok = true;
                for (pairs, g) in leg_pairs.iter().zip([&g1, &g2]) {
                    for &(x, y) in pairs {
                        match forced[x] {
                            None => forced[x] = Some(g[y]),
                            Some(v) if v != g[y] => ok = false,
                            _ => {}
                        }
                    }
                }
                if ok {
                    let free: Vec<usize> = (0..s0.len()).filter(|&i| forced[i].is_none()).collect();
                    let mut digits = vec![0usize; free.len()];
                    loop {
                        for (i, x) in g0.iter_mut().enumerate() {
                            *x = forced[i].unwrap_or(0);
                        }
                        for (&i, &d) in free.iter().zip(&digits) {
                            g0[i] = d;
                        }
                        report.competitors += 1;
                        let n = mediator_count([&th0, &th1, &th2], [&g0, &g1, &g2], apex, m, &mut scratch);
                        if n != 1 && report.failures.len() < 16 {
                            report.failures.push((m, n));
                        }
                        if !crate::pl::odometer(&mut digits, m) {
                            break;
                        }
                    }
                }
                if !crate::pl::odometer(&mut g2, m) {
                    break;
                }
            }
            if !crate::pl::odometer(&mut g1, m) {
                break;
            }
        }
    }
    Ok(report)
}

/// Dot description of a blend: the span, the apex and the three cocone legs.
/// Partial arrows are dashed.
pub fn cocone_to_dot<O: Display + Eq, M>(cocone: &LaxCocone<O, M>, names: [&str; 4]) -> String {
    let [n0, n1, n2, apex] = names;
    let mut out = String::from("digraph blend {\n  rankdir=BT;\n  node [shape=box];\n");
    let label = |name: &str, sig: &O| format!("  \"{name}\" [label=\"{name}\\n{}\"];\n", escape(&sig.to_string()));
    out += &label(n0, cocone.span.apex());
    out += &label(n1, cocone.span.left.target());
    out += &label(n2, cocone.span.right.target());
    out += &label(apex, cocone.apex());
    let edge = |out: &mut String, a: &str, b: &str, name: &str, partial: bool| {
        let style = if partial { ", style=dashed" } else { "" };
        let _ = writeln!(out, "  \"{a}\" -> \"{b}\" [label=\"{name}\"{style}];");
    };
    edge(&mut out, n0, n1, "phi1", !cocone.span.left.is_defined_everywhere());
    edge(&mut out, n0, n2, "phi2", !cocone.span.right.is_defined_everywhere());
    edge(&mut out, n1, apex, "theta1", false);
    edge(&mut out, n2, apex, "theta2", false);
    edge(&mut out, n0, apex, "theta0", !cocone.theta0.is_defined_everywhere());
    out += "}\n";
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pl::{Pl, PlModel, SetInclusions};

    fn sig(xs: &[&str]) -> PlSignature {
        PlSignature::new(xs.iter().copied())
    }

    fn pm(src: &[&str], dom: &[&str], tgt: &[&str], pairs: &[(&str, &str)]) -> PartialMorphism<PlSignature, PlMorphism> {
        let total = PlMorphism::from_pairs(sig(dom), sig(tgt), pairs.iter().copied()).unwrap();
        PartialMorphism::new(&SetInclusions, sig(src), total).unwrap()
    }

    fn blend_span() -> Span<PlSignature, PlMorphism> {
        Span::new(pm(&["c"], &["c"], &["h"], &[("c", "h")]), pm(&["c"], &[], &["b"], &[])).unwrap()
    }

    #[test]
    fn blend_example() {
        let cat = SetInclusions;
        let c = lax_sign_pushout(&cat, &blend_span()).unwrap();
        // first pushouts: {h} ⊔_{c} {c} = {c ~ h} named c; {b} ⊔ {c} = {b, c}
        // second: {c} and {b, c} glued along c
        assert_eq!(c.apex(), &sig(&["b", "c"]));
        assert_eq!(c.theta1.total().apply("h"), "c");
        assert_eq!(c.theta2.total().apply("b"), "b");
        assert_eq!(c.theta0.total().apply("c"), "c");
        assert_eq!(c.below, [true, true]);
        assert_eq!(c.strict, [true, false]);
        assert!(verify_cocone(&cat, &c).unwrap());

        let a = lax_cocone_with_amalgamation(&cat, &blend_span(), None).unwrap();
        assert_eq!((a.theta0.clone(), a.theta1.clone(), a.theta2.clone()), (c.theta0.clone(), c.theta1.clone(), c.theta2.clone()));
    }

    #[test]
    fn empty_domains_give_a_coproduct() {
        let cat = SetInclusions;
        let span = Span::new(pm(&["x"], &[], &["y"], &[]), pm(&["x"], &[], &["z"], &[])).unwrap();
        let c = lax_sign_pushout(&cat, &span).unwrap();
        assert_eq!(c.apex(), &sig(&["x", "y", "z"]));
    }

    #[test]
    fn total_legs_are_strict() {
        let cat = SetInclusions;
        let span = Span::new(pm(&["c"], &["c"], &["h"], &[("c", "h")]), pm(&["c"], &["c"], &["b"], &[("c", "b")])).unwrap();
        let c = lax_sign_pushout(&cat, &span).unwrap();
        assert_eq!(c.strict, [true, true]);
        assert_eq!(c.apex().len(), 1);
    }

    #[test]
    fn domain_choice_is_checked() {
        let cat = SetInclusions;
        let span = Span::new(pm(&["a", "b", "c"], &["a"], &["x"], &[("a", "x")]), pm(&["a", "b", "c"], &[], &["y"], &[])).unwrap();
        assert!(lax_cocone_with_amalgamation(&cat, &span, Some(&sig(&["b"]))).is_err());
        let mid = lax_cocone_with_amalgamation(&cat, &span, Some(&sig(&["a", "b"]))).unwrap();
        let full = lax_cocone_with_amalgamation(&cat, &span, None).unwrap();
        assert_ne!(mid.theta0, full.theta0);
        assert!(verify_cocone(&cat, &mid).unwrap() && verify_cocone(&cat, &full).unwrap());
        assert_eq!(minimal_dom_theta0(&cat, &span).unwrap(), sig(&["a"]));
    }

    #[test]
    fn amalgamation_example() {
        let pl = Pl::new();
        let cfg = RunConfig::default();
        let c = lax_cocone_with_amalgamation(&SetInclusions, &blend_span(), None).unwrap();
        let a = amalgamate(&pl, &c, &PlModel::new(["c"]), &PlModel::new(["h"]), &PlModel::default(), &cfg).unwrap();
        assert_eq!(a.model, PlModel::new(["c"]));
        assert!(a.is_unique());
        // oracle: filter the four apex models directly
        let direct: Vec<PlModel> = crate::pl::pl_enumerate_models(c.apex(), 20)
            .unwrap()
            .into_iter()
            .filter(|m| m.holds("c") && !m.holds("b"))
            .collect();
        assert_eq!(direct, vec![a.model.clone()]);
        assert!(amalgamate(&pl, &c, &PlModel::new(["c"]), &PlModel::default(), &PlModel::default(), &cfg).is_err());
    }

    #[test]
    fn squares() {
        let pl = Pl::new();
        let cfg = RunConfig::default();
        let e = PlSignature::empty();
        let f1 = PlMorphism::inclusion(&e, &sig(&["a"])).unwrap();
        let f2 = PlMorphism::inclusion(&e, &sig(&["b"])).unwrap();
        let po = SetInclusions.pushout(&f1, &f2).unwrap();
        let sq = CommutingSquare { f1: f1.clone(), f2: f2.clone(), g1: po.left.clone(), g2: po.right.clone() };
        let r = check_amalgamation_square(&pl, &sq, &cfg).unwrap();
        assert_eq!(r.verdict, AmalgamationVerdict::Amalgamation);
        assert_eq!(r.span_models, 4);

        let id = PlMorphism::identity(&sig(&["p"]));
        let sq = CommutingSquare { f1: id.clone(), f2: id.clone(), g1: id.clone(), g2: id };
        assert_eq!(check_amalgamation_square(&pl, &sq, &cfg).unwrap().verdict, AmalgamationVerdict::Amalgamation);

        let padded = sig(&["a", "b", "junk"]);
        let g1 = PlMorphism::inclusion(&sig(&["a"]), &padded).unwrap();
        let g2 = PlMorphism::inclusion(&sig(&["b"]), &padded).unwrap();
        let r = check_amalgamation_square(&pl, &CommutingSquare { f1, f2, g1, g2 }, &cfg).unwrap();
        assert_eq!(r.verdict, AmalgamationVerdict::Weak);
        assert_eq!(r.witness.unwrap().2, 2);
    }

    #[test]
    fn universality() {
        let c = lax_sign_pushout(&SetInclusions, &blend_span()).unwrap();
        let r = verify_lax_t_pushout(&c, 3, 1 << 20).unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(r.competitors > 0);

        let mut padded = c.clone();
        let apex = sig(&["b", "c", "junk"]);
        for leg in [&mut padded.theta0, &mut padded.theta1, &mut padded.theta2] {
            let t = PlMorphism::new(leg.total().source().clone(), apex.clone(), leg.total().map().clone()).unwrap();
            *leg = embed(&SetInclusions, &t);
        }
        let r = verify_lax_t_pushout(&padded, 2, 1 << 20).unwrap();
        assert!(!r.holds());
        assert!(r.failures.iter().any(|&(_, n)| n == 2));
    }

    #[test]
    fn consistency() {
        let pl = Pl::new();
        let cfg = RunConfig::default();
        let node = |name: &str, s: &[&str], axioms: Vec<crate::pl::PlSentence>| DiagramNode { name: name.into(), signature: sig(s), axioms };
        let single: DiagramOf<Pl> = Diagram { nodes: vec![node("A", &["p", "q"], vec![])], edges: vec![] };
        assert!(is_consistent(&pl, &single, &cfg).unwrap());

        let p = crate::pl::PlSentence::var("p");
        let np = crate::pl::PlSentence::not(p.clone());
        let id = pm(&["p"], &["p"], &["p"], &[("p", "p")]);
        let contradictory: DiagramOf<Pl> = Diagram {
            nodes: vec![node("C", &["p"], vec![]), node("T", &["p"], vec![p]), node("F", &["p"], vec![np])],
            edges: vec![
                DiagramEdge { name: "f".into(), from: "C".into(), to: "T".into(), morphism: id.clone() },
                DiagramEdge { name: "g".into(), from: "C".into(), to: "F".into(), morphism: id },
            ],
        };
        assert!(!is_consistent(&pl, &contradictory, &cfg).unwrap());

        let span = blend_span();
        let d: DiagramOf<Pl> = Diagram {
            nodes: vec![node("S0", &["c"], vec![]), node("S1", &["h"], vec![]), node("S2", &["b"], vec![])],
            edges: vec![
                DiagramEdge { name: "phi1".into(), from: "S0".into(), to: "S1".into(), morphism: span.left.clone() },
                DiagramEdge { name: "phi2".into(), from: "S0".into(), to: "S2".into(), morphism: span.right.clone() },
            ],
        };
        assert!(is_consistent(&pl, &d, &cfg).unwrap());
    }

    #[test]
    fn dot_output() {
        let c = lax_sign_pushout(&SetInclusions, &blend_span()).unwrap();
        let dot = cocone_to_dot(&c, ["S0", "S1", "S2", "Blend"]);
        assert!(dot.starts_with("digraph blend {"));
        assert!(dot.contains("\"S0\" -> \"S2\" [label=\"phi2\", style=dashed];"));
    }
}
