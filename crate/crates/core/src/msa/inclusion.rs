use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::algebra::next_mixed;
use super::signature::{MsaMorphism, MsaSignature, OpSym};
use crate::error::{Error, Result};
use crate::inclusion::{
    require_inclusion, Factorization, FiniteEnumeration, InclusiveCategory, PullbackSquare,
    PushoutCocone, Pushouts, SemiInclusivePullbacks,
};
use crate::quotient::{canonical_names, UnionFind};

/// The three non-trivial inclusion systems on many-sorted signatures.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MsaInclusionKind {
    /// `S ⊆ S′` and no new operations at ranks over `S`.
    Closed,
    /// Componentwise `S ⊆ S′`, `F ⊆ F′`.
    #[default]
    Strong,
    /// `S = S′` and `F ⊆ F′`.
    NearlyStrong,
}

impl MsaInclusionKind {
    pub const ALL: [MsaInclusionKind; 3] = [Self::Closed, Self::Strong, Self::NearlyStrong];
}

impl fmt::Display for MsaInclusionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Closed => "closed",
            Self::Strong => "strong",
            Self::NearlyStrong => "nearly_strong",
        })
    }
}

impl FromStr for MsaInclusionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Self::Closed),
            "strong" => Ok(Self::Strong),
            "nearly_strong" | "nearly-strong" => Ok(Self::NearlyStrong),
            _ => Err(Error::Input(format!("unknown inclusion system {s}"))),
        }
    }
}

/// The category of many-sorted signatures with a chosen inclusion system.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MsaSignatures {
    pub kind: MsaInclusionKind,
}

impl MsaSignatures {
    pub fn new(kind: MsaInclusionKind) -> Self {
        MsaSignatures { kind }
    }

    /// Whether `sub ⊆ sup` in this inclusion system.
    pub fn includes(&self, sub: &MsaSignature, sup: &MsaSignature) -> bool {
        if !sub.is_substructure_of(sup) {
            return false;
        }
        match self.kind {
            MsaInclusionKind::Strong => true,
            MsaInclusionKind::NearlyStrong => sub.sorts() == sup.sorts(),
            MsaInclusionKind::Closed => sup
                .ops()
                .iter()
                .filter(|o| o.rank_within(sub.sorts()))
                .all(|o| sub.has_op(o)),
        }
    }
}

impl InclusiveCategory for MsaSignatures {
    type Object = MsaSignature;
    type Morphism = MsaMorphism;

    fn source<'a>(&self, m: &'a MsaMorphism) -> &'a MsaSignature {
        m.source()
    }

    fn target<'a>(&self, m: &'a MsaMorphism) -> &'a MsaSignature {
        m.target()
    }

    fn validate(&self, m: &MsaMorphism) -> Result<()> {
        m.validate()
    }

    fn identity(&self, obj: &MsaSignature) -> MsaMorphism {
        MsaMorphism::identity(obj)
    }

    fn compose(&self, f: &MsaMorphism, g: &MsaMorphism) -> Result<MsaMorphism> {
        f.compose(g)
    }

    fn is_inclusion(&self, m: &MsaMorphism) -> bool {
        m.is_embedding() && self.includes(m.source(), m.target())
    }

    fn is_surjection(&self, m: &MsaMorphism) -> bool {
        let sorts_onto = m.sort_image() == *m.target().sorts();
        let ops_onto = || m.op_image() == *m.target().ops();
        match self.kind {
            MsaInclusionKind::Closed => sorts_onto,
            MsaInclusionKind::Strong => sorts_onto && ops_onto(),
            MsaInclusionKind::NearlyStrong => ops_onto(),
        }
    }

    fn inclusion(&self, sub: &MsaSignature, sup: &MsaSignature) -> Result<MsaMorphism> {
        if !self.includes(sub, sup) {
            return Err(Error::contract(format!("{sub} is not a {} subsignature of {sup}", self.kind)));
        }
        MsaMorphism::embedding(sub, sup)
    }

    fn is_subobject(&self, sub: &MsaSignature, sup: &MsaSignature) -> bool {
        self.includes(sub, sup)
    }

    fn factorize(&self, f: &MsaMorphism) -> Result<Factorization<MsaSignature, MsaMorphism>> {
        f.validate()?;
        let image = match self.kind {
            MsaInclusionKind::Closed => f.target().restrict_to_sorts(&f.sort_image()),
            MsaInclusionKind::Strong => MsaSignature::new_unchecked(f.sort_image(), f.op_image()),
            MsaInclusionKind::NearlyStrong => MsaSignature::new_unchecked(f.target().sorts().clone(), f.op_image()),
        };
        let surjection = f.with_target(image.clone());
        let inclusion = self.inclusion(&image, f.target())?;
        Ok(Factorization {
            surjection,
            inclusion,
            image,
        })
    }
}

impl SemiInclusivePullbacks for MsaSignatures {
    fn semi_inclusive_pullback(
        &self,
        f: &MsaMorphism,
        incl: &MsaMorphism,
    ) -> Result<PullbackSquare<MsaMorphism>> {
        require_inclusion(self, incl)?;
        if incl.target() != f.target() {
            return Err(Error::contract("the inclusion does not end at the target of f"));
        }
        let sub = incl.source();
        let sorts: BTreeSet<String> = f
            .sort_map()
            .iter()
            .filter(|(_, t)| sub.has_sort(t))
            .map(|(s, _)| s.clone())
            .collect();
        let ops: BTreeSet<OpSym> = f
            .source()
            .ops()
            .iter()
            .filter(|o| o.rank_within(&sorts) && sub.has_op(&f.op(o)))
            .cloned()
            .collect();
        let apex = MsaSignature::new_unchecked(sorts.clone(), ops.clone());
        let left = self.inclusion(&apex, f.source())?;
        let bottom = MsaMorphism::new_unchecked(
            apex,
            sub.clone(),
            f.sort_map().iter().filter(|(s, _)| sorts.contains(*s)).map(|(a, b)| (a.clone(), b.clone())).collect(),
            f.op_map().iter().filter(|(o, _)| ops.contains(*o)).map(|(a, b)| (a.clone(), b.clone())).collect(),
        );
        Ok(PullbackSquare {
            top: f.clone(),
            right: incl.clone(),
            bottom,
            left,
        })
    }
}

impl Pushouts for MsaSignatures {
    fn pushout(&self, f1: &MsaMorphism, f2: &MsaMorphism) -> Result<PushoutCocone<MsaMorphism>> {
        msa_pushout(f1, f2)
    }
}

/// Pushout of signatures. Sorts are named first; operations are then named
/// within their apex rank.
pub fn msa_pushout(f1: &MsaMorphism, f2: &MsaMorphism) -> Result<PushoutCocone<MsaMorphism>> {
    if f1.source() != f2.source() {
        return Err(Error::contract("span legs have different sources"));
    }
    let (s1, s2) = (f1.target(), f2.target());
    let sorts: Vec<&String> = s1.sorts().iter().chain(s2.sorts().iter()).collect();
    let n1 = s1.sorts().len();
    let sort_index = |side: usize, s: &str| -> usize {
        if side == 1 {
            s1.sorts().iter().position(|x| x == s).unwrap()
        } else {
            n1 + s2.sorts().iter().position(|x| x == s).unwrap()
        }
    };
    let mut uf = UnionFind::new(sorts.len());
    for s in f1.source().sorts() {
        uf.union(sort_index(1, f1.sort(s)), sort_index(2, f2.sort(s)));
    }
    let (sort_class, count) = uf.classes();
    let mut members = vec![BTreeSet::new(); count];
    for (i, s) in sorts.iter().enumerate() {
        members[sort_class[i]].insert((*s).clone());
    }
    let sort_names = canonical_names(&members.into_iter().map(|m| ((), m)).collect::<Vec<_>>());
    let g1_sorts: BTreeMap<String, String> = s1
        .sorts()
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), sort_names[sort_class[i]].clone()))
        .collect();
    let g2_sorts: BTreeMap<String, String> = s2
        .sorts()
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), sort_names[sort_class[n1 + i]].clone()))
        .collect();

    let ops: Vec<(usize, &OpSym)> = s1.ops().iter().map(|o| (1, o)).chain(s2.ops().iter().map(|o| (2, o))).collect();
    let m1 = s1.ops().len();
    let op_index = |side: usize, o: &OpSym| -> usize {
        if side == 1 {
            s1.ops().iter().position(|x| x == o).unwrap()
        } else {
            m1 + s2.ops().iter().position(|x| x == o).unwrap()
        }
    };
    let mut uf = UnionFind::new(ops.len());
    for o in f1.source().ops() {
        uf.union(op_index(1, &f1.op(o)), op_index(2, &f2.op(o)));
    }
    let (op_class, count) = uf.classes();
    let mut op_members: Vec<((Vec<String>, String), BTreeSet<String>)> = vec![Default::default(); count];
    for (i, (side, o)) in ops.iter().enumerate() {
        let sm = if *side == 1 { &g1_sorts } else { &g2_sorts };
        let entry = &mut op_members[op_class[i]];
        entry.0 = o.rank_image(sm);
        entry.1.insert(o.name.clone());
    }
    let op_names = canonical_names(&op_members);
    let apex_ops: Vec<OpSym> = op_members
        .iter()
        .zip(&op_names)
        .map(|(((args, result), _), n)| OpSym::new(n.clone(), args.clone(), result.clone()))
        .collect();
    let apex = MsaSignature::new_unchecked(sort_names.iter().cloned().collect(), apex_ops.iter().cloned().collect());
    let g1_ops = s1.ops().iter().enumerate().map(|(i, o)| (o.clone(), op_names[op_class[i]].clone())).collect();
    let g2_ops = s2
        .ops()
        .iter()
        .enumerate()
        .map(|(i, o)| (o.clone(), op_names[op_class[m1 + i]].clone()))
        .collect();
    Ok(PushoutCocone {
        left: MsaMorphism::new_unchecked(s1.clone(), apex.clone(), g1_sorts, g1_ops),
        right: MsaMorphism::new_unchecked(s2.clone(), apex, g2_sorts, g2_ops),
    })
}

fn subsets<T: Clone + Ord>(items: &[T]) -> impl Iterator<Item = BTreeSet<T>> + '_ {
    (0u64..(1u64 << items.len())).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, x)| x.clone())
            .collect()
    })
}

impl FiniteEnumeration for MsaSignatures {
    fn subobjects(&self, obj: &MsaSignature, cap: u64) -> Result<Vec<MsaSignature>> {
        let sorts: Vec<String> = obj.sorts().iter().cloned().collect();
        let ops: Vec<OpSym> = obj.ops().iter().cloned().collect();
        let needed: u128 = match self.kind {
            MsaInclusionKind::Closed => 1u128 << sorts.len().min(127),
            MsaInclusionKind::NearlyStrong => 1u128 << ops.len().min(127),
            MsaInclusionKind::Strong => (1u128 << sorts.len().min(63)).saturating_mul(1u128 << ops.len().min(63)),
        };
        if needed > cap as u128 {
            return Err(Error::resource("subsignatures", needed, cap as u128));
        }
        let out = match self.kind {
            MsaInclusionKind::Closed => subsets(&sorts).map(|s| obj.restrict_to_sorts(&s)).collect(),
            MsaInclusionKind::NearlyStrong => subsets(&ops)
                .map(|f| MsaSignature::new_unchecked(obj.sorts().clone(), f))
                .collect(),
            MsaInclusionKind::Strong => {
                let mut out = Vec::new();
                for s in subsets(&sorts) {
                    let within: Vec<OpSym> = ops.iter().filter(|o| o.rank_within(&s)).cloned().collect();
                    for f in subsets(&within) {
                        out.push(MsaSignature::new_unchecked(s.clone(), f));
                    }
                }
                out
            }
        };
        Ok(out)
    }

    fn morphisms(&self, a: &MsaSignature, b: &MsaSignature, cap: u64) -> Result<Vec<MsaMorphism>> {
        let src_sorts: Vec<&String> = a.sorts().iter().collect();
        let tgt_sorts: Vec<&String> = b.sorts().iter().collect();
        let sort_maps = (tgt_sorts.len() as u128).saturating_pow(src_sorts.len() as u32);
        if sort_maps > cap as u128 {
            return Err(Error::resource("sort maps", sort_maps, cap as u128));
        }
        let mut out = Vec::new();
        if !src_sorts.is_empty() && tgt_sorts.is_empty() {
            return Ok(out);
        }
        let ops: Vec<&OpSym> = a.ops().iter().collect();
        let mut digits = vec![0usize; src_sorts.len()];
        let bounds = vec![tgt_sorts.len(); src_sorts.len()];
        loop {
            let sm: BTreeMap<String, String> = src_sorts
                .iter()
                .zip(&digits)
                .map(|(s, &d)| ((*s).clone(), tgt_sorts[d].clone()))
                .collect();
            let choices: Vec<Vec<&OpSym>> = ops
                .iter()
                .map(|o| {
                    let (args, result) = o.rank_image(&sm);
                    b.ops().iter().filter(|t| t.args == args && t.result == result).collect()
                })
                .collect();
            let radix: Vec<usize> = choices.iter().map(Vec::len).collect();
            if !radix.contains(&0) {
                let n: u128 = radix.iter().map(|&r| r as u128).product();
                if (out.len() as u128).saturating_add(n) > cap as u128 {
                    return Err(Error::resource("signature morphisms", out.len() as u128 + n, cap as u128));
                }
                let mut od = vec![0usize; ops.len()];
                loop {
                    let om = ops
                        .iter()
                        .zip(&od)
                        .zip(&choices)
                        .map(|((o, &d), c)| ((*o).clone(), c[d].name.clone()))
                        .collect();
                    out.push(MsaMorphism::new_unchecked(a.clone(), b.clone(), sm.clone(), om));
                    if !next_mixed(&mut od, &radix) {
                        break;
                    }
                }
            }
            if !next_mixed(&mut digits, &bounds) {
                break;
            }
        }
        Ok(out)
    }

    fn join(&self, a: &MsaSignature, b: &MsaSignature, ambient: &MsaSignature) -> Result<MsaSignature> {
        if !self.includes(a, ambient) || !self.includes(b, ambient) {
            return Err(Error::contract("join arguments are not subsignatures of the ambient signature"));
        }
        Ok(match self.kind {
            MsaInclusionKind::Closed => ambient.restrict_to_sorts(&a.sorts().union(b.sorts()).cloned().collect()),
            MsaInclusionKind::Strong | MsaInclusionKind::NearlyStrong => a.union(b),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inclusion::{check_surjection_stability, factorization_violation, pullback_violation};

    fn sig(sorts: &[&str], ops: &[OpSym]) -> MsaSignature {
        MsaSignature::new(sorts.iter().copied(), ops.iter().cloned()).unwrap()
    }

    #[test]
    fn strong_factorization_example() {
        let sigma = OpSym::constant("sigma", "s");
        let sigma2 = OpSym::constant("sigma2", "t");
        let tau = OpSym::constant("tau", "t");
        let a = sig(&["s"], std::slice::from_ref(&sigma));
        let b = sig(&["t"], &[sigma2.clone(), tau]);
        let phi = MsaMorphism::from_parts(a, b.clone(), [("s", "t")], [(sigma, "sigma2")]).unwrap();
        let cat = MsaSignatures::new(MsaInclusionKind::Strong);
        let fact = cat.factorize(&phi).unwrap();
        assert_eq!(fact.image, sig(&["t"], &[sigma2]));
        assert!(cat.is_inclusion(&fact.inclusion));
        assert!(cat.is_surjection(&fact.surjection));
        assert_eq!(factorization_violation(&cat, &phi, &fact, 100_000).unwrap(), None);
        // the closed system keeps tau in the image
        let closed = MsaSignatures::new(MsaInclusionKind::Closed).factorize(&phi).unwrap();
        assert_eq!(&closed.image, &b);
    }

    #[test]
    fn inclusion_table_rows() {
        let closed = MsaSignatures::new(MsaInclusionKind::Closed);
        let strong = MsaSignatures::new(MsaInclusionKind::Strong);
        let nearly = MsaSignatures::new(MsaInclusionKind::NearlyStrong);
        let small = sig(&["s"], &[]);
        let big = sig(&["s", "t"], &[]);
        assert!(closed.includes(&small, &big));
        assert!(!nearly.includes(&small, &big));
        let sigma = OpSym::constant("sigma", "s");
        let tau = OpSym::constant("tau", "s");
        let one = sig(&["s"], std::slice::from_ref(&sigma));
        let two = sig(&["s"], &[sigma, tau]);
        assert!(strong.includes(&one, &two));
        assert!(nearly.includes(&one, &two));
        assert!(!closed.includes(&one, &two));
    }

    #[test]
    fn pullback_sort_formula() {
        let a = sig(&["u", "v"], &[]);
        let b = sig(&["m", "n"], &[]);
        let phi = MsaMorphism::from_parts(a, b.clone(), [("u", "m"), ("v", "n")], []).unwrap();
        let cat = MsaSignatures::new(MsaInclusionKind::Strong);
        let incl = cat.inclusion(&sig(&["m"], &[]), &b).unwrap();
        let sq = cat.semi_inclusive_pullback(&phi, &incl).unwrap();
        assert_eq!(sq.left.source(), &sig(&["u"], &[]));
        assert!(check_surjection_stability(&cat, &sq));
        assert_eq!(pullback_violation(&cat, &sq, 100_000).unwrap(), None);
    }

    #[test]
    fn pushout_overloading_after_sort_merge() {
        let f_s = OpSym::new("f", ["s"], "s");
        let f_t = OpSym::new("f", ["t"], "t");
        let base = sig(&["x", "y"], &[]);
        let one = sig(&["s", "t"], &[f_s.clone(), f_t.clone()]);
        let two = sig(&["r"], &[]);
        let g1 = MsaMorphism::from_parts(base.clone(), one, [("x", "s"), ("y", "t")], []).unwrap();
        let g2 = MsaMorphism::from_parts(base, two, [("x", "r"), ("y", "r")], []).unwrap();
        let po = msa_pushout(&g1, &g2).unwrap();
        let apex = po.left.target();
        assert_eq!(apex.sorts().iter().collect::<Vec<_>>(), vec!["r"]);
        let names: BTreeSet<&str> = apex.ops().iter().map(|o| o.name.as_str()).collect();
        assert_eq!(names, ["f", "f_2"].into_iter().collect());
        assert_eq!(g1.compose(&po.left).unwrap(), g2.compose(&po.right).unwrap());
    }
}
