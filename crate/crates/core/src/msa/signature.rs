use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An operation symbol together with its rank `args -> result`.
/// Two symbols with the same name but different ranks are different symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OpSym {
    pub name: String,
    pub args: Vec<String>,
    pub result: String,
}

impl OpSym {
    pub fn new<A: Into<String>>(name: impl Into<String>, args: impl IntoIterator<Item = A>, result: impl Into<String>) -> Self {
        OpSym {
            name: name.into(),
            args: args.into_iter().map(Into::into).collect(),
            result: result.into(),
        }
    }

    pub fn constant(name: impl Into<String>, sort: impl Into<String>) -> Self {
        OpSym {
            name: name.into(),
            args: Vec::new(),
            result: sort.into(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.args.is_empty()
    }

    /// Whether every sort of the rank lies in `sorts`.
    pub fn rank_within(&self, sorts: &BTreeSet<String>) -> bool {
        sorts.contains(&self.result) && self.args.iter().all(|a| sorts.contains(a))
    }

    /// The rank pushed along a sort map.
    pub fn rank_image(&self, sorts: &BTreeMap<String, String>) -> (Vec<String>, String) {
        (
            self.args.iter().map(|a| sorts[a].clone()).collect(),
            sorts[&self.result].clone(),
        )
    }
}

impl fmt::Display for OpSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} :", self.name)?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        write!(f, " -> {}", self.result)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MsaSignature {
    sorts: BTreeSet<String>,
    ops: BTreeSet<OpSym>,
}

impl MsaSignature {
    pub fn new<S: Into<String>>(sorts: impl IntoIterator<Item = S>, ops: impl IntoIterator<Item = OpSym>) -> Result<Self> {
        let sig = MsaSignature {
            sorts: sorts.into_iter().map(Into::into).collect(),
            ops: ops.into_iter().collect(),
        };
        sig.validate()?;
        Ok(sig)
    }

    pub(crate) fn new_unchecked(sorts: BTreeSet<String>, ops: BTreeSet<OpSym>) -> Self {
        MsaSignature { sorts, ops }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn validate(&self) -> Result<()> {
        match self.ops.iter().find(|o| !o.rank_within(&self.sorts)) {
            Some(o) => Err(Error::validation(format!("operation {o} uses a sort outside {:?}", self.sorts))),
            None => Ok(()),
        }
    }

    pub fn sorts(&self) -> &BTreeSet<String> {
        &self.sorts
    }

    pub fn ops(&self) -> &BTreeSet<OpSym> {
        &self.ops
    }

    pub fn has_sort(&self, s: &str) -> bool {
        self.sorts.contains(s)
    }

    pub fn has_op(&self, op: &OpSym) -> bool {
        self.ops.contains(op)
    }

    /// Operations with the given rank.
    pub fn ops_of_rank<'a>(&'a self, args: &'a [String], result: &'a str) -> impl Iterator<Item = &'a OpSym> + 'a {
        self.ops.iter().filter(move |o| o.args == args && o.result == result)
    }

    /// Operations with the given name and argument sorts.
    pub fn lookup<'a>(&'a self, name: &'a str, args: &'a [String]) -> impl Iterator<Item = &'a OpSym> + 'a {
        self.ops.iter().filter(move |o| o.name == name && o.args == args)
    }

    pub fn is_substructure_of(&self, other: &MsaSignature) -> bool {
        self.sorts.is_subset(&other.sorts) && self.ops.is_subset(&other.ops)
    }

    /// Componentwise union.
    pub fn union(&self, other: &MsaSignature) -> MsaSignature {
        MsaSignature {
            sorts: self.sorts.union(&other.sorts).cloned().collect(),
            ops: self.ops.union(&other.ops).cloned().collect(),
        }
    }

    /// The operations of `self` whose rank lies in `sorts`.
    pub fn restrict_to_sorts(&self, sorts: &BTreeSet<String>) -> MsaSignature {
        MsaSignature {
            sorts: sorts.clone(),
            ops: self.ops.iter().filter(|o| o.rank_within(sorts)).cloned().collect(),
        }
    }
}

impl fmt::Display for MsaSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("sorts ")?;
        crate::pl::write_set(f, self.sorts.iter())?;
        f.write_str(" ops {")?;
        for (i, o) in self.ops.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { "; " })?;
            write!(f, "{o}")?;
        }
        f.write_str(if self.ops.is_empty() { "}" } else { " }" })
    }
}

/// A signature morphism: a sort map and, per source operation, the name of
/// its image at the translated rank.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MsaMorphism {
    source: MsaSignature,
    target: MsaSignature,
    sorts: BTreeMap<String, String>,
    ops: BTreeMap<OpSym, String>,
}

impl MsaMorphism {
    pub fn new(
        source: MsaSignature,
        target: MsaSignature,
        sorts: BTreeMap<String, String>,
        ops: BTreeMap<OpSym, String>,
    ) -> Result<Self> {
        let m = MsaMorphism { source, target, sorts, ops };
        m.validate()?;
        Ok(m)
    }

    /// Builds a morphism from sort pairs and `(source op, target name)` pairs.
    /// Operations left unmapped keep their name.
    pub fn from_parts<'a>(
        source: MsaSignature,
        target: MsaSignature,
        sort_pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
        op_pairs: impl IntoIterator<Item = (OpSym, &'a str)>,
    ) -> Result<Self> {
        let mut sorts: BTreeMap<String, String> = sort_pairs
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        for s in &source.sorts {
            sorts.entry(s.clone()).or_insert_with(|| s.clone());
        }
        let mut ops: BTreeMap<OpSym, String> = op_pairs.into_iter().map(|(o, n)| (o, n.to_string())).collect();
        for o in &source.ops {
            ops.entry(o.clone()).or_insert_with(|| o.name.clone());
        }
        Self::new(source, target, sorts, ops)
    }

    pub(crate) fn new_unchecked(
        source: MsaSignature,
        target: MsaSignature,
        sorts: BTreeMap<String, String>,
        ops: BTreeMap<OpSym, String>,
    ) -> Self {
        MsaMorphism { source, target, sorts, ops }
    }

    pub fn identity(sig: &MsaSignature) -> Self {
        MsaMorphism {
            source: sig.clone(),
            target: sig.clone(),
            sorts: sig.sorts.iter().map(|s| (s.clone(), s.clone())).collect(),
            ops: sig.ops.iter().map(|o| (o.clone(), o.name.clone())).collect(),
        }
    }

    /// The structural embedding `sub → sup`; fails unless `sub` is a
    /// componentwise substructure of `sup`.
    pub fn embedding(sub: &MsaSignature, sup: &MsaSignature) -> Result<Self> {
        if !sub.is_substructure_of(sup) {
            return Err(Error::contract("not a componentwise subsignature"));
        }
        let mut m = Self::identity(sub);
        m.target = sup.clone();
        Ok(m)
    }

    pub fn source(&self) -> &MsaSignature {
        &self.source
    }

    pub fn target(&self) -> &MsaSignature {
        &self.target
    }

    pub fn sort_map(&self) -> &BTreeMap<String, String> {
        &self.sorts
    }

    pub fn op_map(&self) -> &BTreeMap<OpSym, String> {
        &self.ops
    }

    pub fn sort(&self, s: &str) -> &str {
        &self.sorts[s]
    }

    /// The target symbol of a source operation.
    pub fn op(&self, o: &OpSym) -> OpSym {
        let (args, result) = o.rank_image(&self.sorts);
        OpSym {
            name: self.ops[o].clone(),
            args,
            result,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.source.validate()?;
        self.target.validate()?;
        for s in &self.source.sorts {
            match self.sorts.get(s) {
                None => return Err(Error::validation(format!("sort {s} is not mapped"))),
                Some(t) if !self.target.has_sort(t) => {
                    return Err(Error::validation(format!("sort {s} is mapped to unknown sort {t}")))
                }
                _ => {}
            }
        }
        if let Some(s) = self.sorts.keys().find(|s| !self.source.has_sort(s)) {
            return Err(Error::validation(format!("{s} is not a source sort")));
        }
        for o in &self.source.ops {
            if !self.ops.contains_key(o) {
                return Err(Error::validation(format!("operation {o} is not mapped")));
            }
            let img = self.op(o);
            if !self.target.has_op(&img) {
                return Err(Error::validation(format!(
                    "operation {o} is mapped to {img}, which is not in the target"
                )));
            }
        }
        if let Some(o) = self.ops.keys().find(|o| !self.source.has_op(o)) {
            return Err(Error::validation(format!("{o} is not a source operation")));
        }
        Ok(())
    }

    pub fn compose(&self, g: &MsaMorphism) -> Result<MsaMorphism> {
        if self.target != g.source {
            return Err(Error::contract("cannot compose: endpoints differ"));
        }
        let sorts = self.sorts.iter().map(|(a, b)| (a.clone(), g.sorts[b].clone())).collect();
        let ops = self
            .source
            .ops
            .iter()
            .map(|o| (o.clone(), g.ops[&self.op(o)].clone()))
            .collect();
        Ok(MsaMorphism {
            source: self.source.clone(),
            target: g.target.clone(),
            sorts,
            ops,
        })
    }

    pub fn sort_image(&self) -> BTreeSet<String> {
        self.sorts.values().cloned().collect()
    }

    pub fn op_image(&self) -> BTreeSet<OpSym> {
        self.source.ops.iter().map(|o| self.op(o)).collect()
    }

    /// Whether the sort map and operation map are identities into a superset.
    pub fn is_embedding(&self) -> bool {
        self.source.is_substructure_of(&self.target)
            && self.sorts.iter().all(|(a, b)| a == b)
            && self.ops.iter().all(|(o, n)| &o.name == n)
    }

    pub(crate) fn with_target(&self, target: MsaSignature) -> MsaMorphism {
        MsaMorphism {
            source: self.source.clone(),
            target,
            sorts: self.sorts.clone(),
            ops: self.ops.clone(),
        }
    }
}

impl fmt::Display for MsaMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{ sorts {")?;
        for (i, (a, b)) in self.sorts.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            write!(f, "{a} |-> {b}")?;
        }
        f.write_str(" } ops {")?;
        for (i, (o, n)) in self.ops.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { "; " })?;
            write!(f, "{o} |-> {n}")?;
        }
        f.write_str(" } }")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_checks() {
        assert!(MsaSignature::new(["s"], [OpSym::new("f", ["t"], "s")]).is_err());
        let sig = MsaSignature::new(["s"], [OpSym::constant("c", "s"), OpSym::new("c", ["s"], "s")]).unwrap();
        assert_eq!(sig.ops().len(), 2);
        assert_eq!(sig.lookup("c", &[]).count(), 1);
    }

    #[test]
    fn morphism_validation_and_composition() {
        let a = MsaSignature::new(["s"], [OpSym::new("f", ["s"], "s")]).unwrap();
        let b = MsaSignature::new(["t"], [OpSym::new("g", ["t"], "t")]).unwrap();
        let m = MsaMorphism::from_parts(a.clone(), b.clone(), [("s", "t")], [(OpSym::new("f", ["s"], "s"), "g")]).unwrap();
        assert_eq!(m.op(&OpSym::new("f", ["s"], "s")), OpSym::new("g", ["t"], "t"));
        assert!(MsaMorphism::from_parts(a.clone(), b.clone(), [("s", "t")], []).is_err());
        let back = MsaMorphism::from_parts(b, a.clone(), [("t", "s")], [(OpSym::new("g", ["t"], "t"), "f")]).unwrap();
        assert_eq!(m.compose(&back).unwrap(), MsaMorphism::identity(&a));
    }
}
