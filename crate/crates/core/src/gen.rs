//! Seeded random structures for the law suites and acceptance runs.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::inclusion::FiniteEnumeration;
use crate::msa::{Algebra, MsaMorphism, MsaSentence, MsaSignature, MsaSignatures, OpSym, Term, Var};
use crate::partial::PartialMorphism;
use crate::pl::{PlModel, PlMorphism, PlSentence, PlSignature, SetInclusions};
use crate::theory::Theory;

pub type Gen = ChaCha8Rng;

pub fn rng(seed: u64) -> Gen {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const PL_POOL: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];

/// A random subset of the first `pool` symbols of [`PL_POOL`], of size at most `max`.
pub fn pl_signature(g: &mut Gen, pool: usize, max: usize) -> PlSignature {
    let pool = &PL_POOL[..pool.min(PL_POOL.len())];
    let n = g.gen_range(0..=max.min(pool.len()));
    PlSignature::new(pool.choose_multiple(g, n).copied())
}

/// A random total map. `target` must be non-empty unless `source` is empty.
pub fn pl_morphism(g: &mut Gen, source: &PlSignature, target: &PlSignature) -> PlMorphism {
    let tgt: Vec<&String> = target.symbols().iter().collect();
    let map = source
        .symbols()
        .iter()
        .map(|s| (s.clone(), (*tgt.choose(g).expect("empty target")).clone()))
        .collect();
    PlMorphism::new(source.clone(), target.clone(), map).expect("well-formed by construction")
}

/// A random morphism together with random endpoints of at most `max` symbols.
pub fn pl_arrow(g: &mut Gen, max: usize) -> PlMorphism {
    let source = pl_signature(g, PL_POOL.len(), max);
    let mut target = pl_signature(g, PL_POOL.len(), max);
    if target.is_empty() && !source.is_empty() {
        target = PlSignature::new(["p"]);
    }
    pl_morphism(g, &source, &target)
}

pub fn pl_subsignature(g: &mut Gen, sig: &PlSignature) -> PlSignature {
    PlSignature::new(sig.symbols().iter().filter(|_| g.gen_bool(0.5)).cloned())
}

pub fn pl_partial(g: &mut Gen, source: &PlSignature, target: &PlSignature) -> PartialMorphism<PlSignature, PlMorphism> {
    let mut dom = pl_subsignature(g, source);
    if target.is_empty() {
        dom = PlSignature::empty();
    }
    PartialMorphism::new(&SetInclusions, source.clone(), pl_morphism(g, &dom, target)).expect("domain is a subset")
}

pub fn pl_model(g: &mut Gen, sig: &PlSignature) -> PlModel {
    PlModel(sig.symbols().iter().filter(|_| g.gen_bool(0.5)).cloned().collect())
}

/// A random sentence of depth at most `depth`; `sig` must be non-empty.
pub fn pl_sentence(g: &mut Gen, sig: &PlSignature, depth: usize) -> PlSentence {
    let syms: Vec<&String> = sig.symbols().iter().collect();
    if depth == 0 || g.gen_bool(0.3) {
        return PlSentence::var((*syms.choose(g).expect("empty signature")).clone());
    }
    if g.gen_bool(0.4) {
        PlSentence::not(pl_sentence(g, sig, depth - 1))
    } else {
        PlSentence::and(pl_sentence(g, sig, depth - 1), pl_sentence(g, sig, depth - 1))
    }
}

pub fn pl_theory(g: &mut Gen, sig: &PlSignature, max_axioms: usize, depth: usize) -> Theory<PlSignature, PlSentence> {
    let n = if sig.is_empty() { 0 } else { g.gen_range(0..=max_axioms) };
    Theory {
        signature: sig.clone(),
        axioms: (0..n).map(|_| pl_sentence(g, sig, depth)).collect(),
    }
}

/// A random signature with sorts drawn from `s0, s1, ..` and operations of arity ≤ 2.
pub fn msa_signature(g: &mut Gen, max_sorts: usize, max_ops: usize) -> MsaSignature {
    let n = g.gen_range(0..=max_sorts);
    let sorts: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let mut ops = BTreeSet::new();
    if !sorts.is_empty() {
        for i in 0..g.gen_range(0..=max_ops) {
            ops.insert(random_op(g, &sorts, format!("f{i}")));
        }
    }
    MsaSignature::new(sorts, ops).expect("well-formed by construction")
}

fn random_op(g: &mut Gen, sorts: &[String], name: String) -> OpSym {
    let arity = g.gen_range(0..=2);
    let args: Vec<String> = (0..arity).map(|_| sorts.choose(g).unwrap().clone()).collect();
    OpSym::new(name, args, sorts.choose(g).unwrap().clone())
}

/// A random morphism out of `source`, with a target built around its image:
/// sorts may merge, operations may merge when their images share a rank, and
/// the target may carry extra sorts and operations.
pub fn msa_morphism_from(g: &mut Gen, source: &MsaSignature, extra: usize) -> MsaMorphism {
    let src_sorts: Vec<&String> = source.sorts().iter().collect();
    let n_img = if src_sorts.is_empty() { 0 } else { g.gen_range(1..=src_sorts.len()) };
    let n_tgt = n_img + g.gen_range(0..=extra);
    let tgt_sorts: Vec<String> = (0..n_tgt).map(|i| format!("t{i}")).collect();
    let sorts: BTreeMap<String, String> = src_sorts
        .iter()
        .map(|s| ((*s).clone(), tgt_sorts[g.gen_range(0..n_img)].clone()))
        .collect();
    let mut tgt_ops: BTreeSet<OpSym> = BTreeSet::new();
    let mut ops = BTreeMap::new();
    for (i, o) in source.ops().iter().enumerate() {
        let (args, result) = o.rank_image(&sorts);
        let same_rank: Vec<&OpSym> = tgt_ops.iter().filter(|t| t.args == args && t.result == result).collect();
        let name = match same_rank.choose(g) {
            Some(t) if g.gen_bool(0.5) => t.name.clone(),
            _ => format!("g{i}"),
        };
        tgt_ops.insert(OpSym::new(name.clone(), args, result));
        ops.insert(o.clone(), name);
    }
    if !tgt_sorts.is_empty() {
        for i in 0..g.gen_range(0..=extra) {
            tgt_ops.insert(random_op(g, &tgt_sorts, format!("h{i}")));
        }
    }
    let target = MsaSignature::new(tgt_sorts, tgt_ops).expect("well-formed by construction");
    MsaMorphism::new(source.clone(), target, sorts, ops).expect("well-formed by construction")
}

/// A random partial morphism out of `source`: a random subobject under the
/// inclusion system of `cat`, mapped by [`msa_morphism_from`].
pub fn msa_partial(g: &mut Gen, cat: &MsaSignatures, source: &MsaSignature, extra: usize) -> PartialMorphism<MsaSignature, MsaMorphism> {
    let subs = cat.subobjects(source, 1 << 16).expect("small signature");
    let dom = subs.choose(g).expect("a signature is a subobject of itself").clone();
    let total = msa_morphism_from(g, &dom, extra);
    PartialMorphism::new(cat, source.clone(), total).expect("domain is a subobject")
}

/// A random algebra with carriers of size at most `k`. Empty carriers are
/// allowed as long as every operation still has somewhere to land.
pub fn msa_algebra(g: &mut Gen, sig: &MsaSignature, k: usize) -> Algebra {
    let mut carriers: BTreeMap<String, usize> = sig.sorts().iter().map(|s| (s.clone(), g.gen_range(0..=k))).collect();
    loop {
        let mut changed = false;
        for o in sig.ops() {
            let inputs: usize = o.args.iter().map(|a| carriers[a]).product();
            if inputs > 0 && carriers[&o.result] == 0 {
                carriers.insert(o.result.clone(), 1);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let tables = sig
        .ops()
        .iter()
        .map(|o| {
            let len: usize = o.args.iter().map(|a| carriers[a]).product();
            let n = carriers[&o.result];
            (o.clone(), (0..len).map(|_| g.gen_range(0..n)).collect())
        })
        .collect();
    Algebra::new(carriers, tables)
}

fn msa_term(g: &mut Gen, sig: &MsaSignature, scope: &[Var], sort: &str, depth: usize) -> Option<Term> {
    let vars: Vec<&Var> = scope.iter().filter(|v| v.sort == sort).collect();
    let ops: Vec<&OpSym> = sig
        .ops()
        .iter()
        .filter(|o| o.result == sort && (depth > 0 || o.is_constant()))
        .collect();
    if !vars.is_empty() && (ops.is_empty() || g.gen_bool(0.5)) {
        let v = vars.choose(g).unwrap();
        return Some(Term::var(v.name.clone(), v.sort.clone()));
    }
    let op = *ops.choose(g)?;
    let args = op
        .args
        .iter()
        .map(|a| msa_term(g, sig, scope, a, depth.saturating_sub(1)))
        .collect::<Option<Vec<_>>>()?;
    Some(Term::op(op.clone(), args))
}

fn msa_formula(g: &mut Gen, sig: &MsaSignature, scope: &mut Vec<Var>, depth: usize) -> MsaSentence {
    let sorts: Vec<&String> = sig.sorts().iter().collect();
    let choice = if depth == 0 { 0 } else { g.gen_range(0..6) };
    match choice {
        1 => MsaSentence::not(msa_formula(g, sig, scope, depth - 1)),
        2 => MsaSentence::and(msa_formula(g, sig, scope, depth - 1), msa_formula(g, sig, scope, depth - 1)),
        3 => MsaSentence::implies(msa_formula(g, sig, scope, depth - 1), msa_formula(g, sig, scope, depth - 1)),
        4 | 5 => {
            let v = Var::new(format!("x{}", scope.len()), (*sorts.choose(g).unwrap()).clone());
            scope.push(v.clone());
            let body = msa_formula(g, sig, scope, depth - 1);
            scope.pop();
            if choice == 4 {
                MsaSentence::forall(vec![v], body)
            } else {
                MsaSentence::exists(vec![v], body)
            }
        }
        _ => {
            for _ in 0..4 {
                let s = sorts.choose(g).unwrap();
                if let (Some(a), Some(b)) = (msa_term(g, sig, scope, s, 2), msa_term(g, sig, scope, s, 2)) {
                    return MsaSentence::eq(a, b);
                }
            }
            // fall back to a reflexive equation over a fresh variable
            let v = Var::new(format!("x{}", scope.len()), (*sorts.choose(g).unwrap()).clone());
            let t = Term::var(v.name.clone(), v.sort.clone());
            MsaSentence::forall(vec![v], MsaSentence::eq(t.clone(), t))
        }
    }
}

/// A random closed sentence; `sig` must have at least one sort.
pub fn msa_sentence(g: &mut Gen, sig: &MsaSignature, depth: usize) -> MsaSentence {
    assert!(!sig.sorts().is_empty(), "no sentences over a signature without sorts");
    msa_formula(g, sig, &mut Vec::new(), depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::msa::msa_satisfies;

    #[test]
    fn deterministic_for_a_seed() {
        let a: Vec<PlMorphism> = (0..20).map(|_| pl_arrow(&mut rng(7), 5)).collect();
        let b: Vec<PlMorphism> = (0..20).map(|_| pl_arrow(&mut rng(7), 5)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn generated_structures_are_well_formed() {
        let mut g = rng(1);
        for _ in 0..200 {
            let f = pl_arrow(&mut g, 4);
            f.validate().unwrap();
            let sig = f.target().clone();
            if !sig.is_empty() {
                pl_sentence(&mut g, &sig, 3).typecheck(&sig).unwrap();
            }
            let src = msa_signature(&mut g, 3, 4);
            let m = msa_morphism_from(&mut g, &src, 2);
            m.validate().unwrap();
            let alg = msa_algebra(&mut g, m.target(), 2);
            alg.check(m.target()).unwrap();
            if !m.target().sorts().is_empty() {
                let rho = msa_sentence(&mut g, m.target(), 3);
                rho.typecheck(m.target()).unwrap();
                msa_satisfies(&alg, &rho).unwrap();
            }
        }
    }
}
