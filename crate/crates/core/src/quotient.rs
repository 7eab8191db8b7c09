//! Union-find over tagged symbols and the canonical naming of equivalence
//! classes used for pushout apexes.
//!
//! A class is named by the lexicographically least plain name among its
//! members. When two classes in the same naming domain end up with the same
//! name, the later one (in class-creation order) gets `_2`, `_3`, ... appended,
//! skipping any candidate that is already taken or that is the natural name
//! of another class.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::hash::Hash;

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes; the smaller root wins so earlier elements stay roots.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Class index of every element, classes numbered in creation order
    /// (order of their first element).
    pub(crate) fn classes(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut root_to_class = HashMap::new();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let r = self.find(i);
            let next = root_to_class.len();
            let c = *root_to_class.entry(r).or_insert(next);
            out.push(c);
        }
        let count = root_to_class.len();
        (out, count)
    }
}

/// Assigns canonical names to classes. `classes[i]` is `(domain, member names)`;
/// names only have to be distinct within a domain.
pub(crate) fn canonical_names<D: Clone + Eq + Hash>(classes: &[(D, BTreeSet<String>)]) -> Vec<String> {
    let natural: Vec<String> = classes
        .iter()
        .map(|(_, names)| names.iter().next().cloned().unwrap_or_default())
        .collect();
    let natural_set: HashSet<(D, String)> = classes
        .iter()
        .zip(&natural)
        .map(|((d, _), n)| (d.clone(), n.clone()))
        .collect();
    let mut taken: HashSet<(D, String)> = HashSet::new();
    let mut out = Vec::with_capacity(classes.len());
    for ((d, _), base) in classes.iter().zip(&natural) {
        let key = (d.clone(), base.clone());
        if !taken.contains(&key) {
            taken.insert(key);
            out.push(base.clone());
            continue;
        }
        let mut k = 2;
        loop {
            let cand = format!("{base}_{k}");
            let key = (d.clone(), cand.clone());
            if !taken.contains(&key) && !natural_set.contains(&key) {
                taken.insert(key);
                out.push(cand);
                break;
            }
            k += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn least_member_names_the_class() {
        let names = canonical_names(&[((), set(&["h", "b"]))]);
        assert_eq!(names, vec!["b"]);
    }

    #[test]
    fn collisions_get_suffixes_in_creation_order() {
        let names = canonical_names(&[((), set(&["a"])), ((), set(&["a"])), ((), set(&["a"]))]);
        assert_eq!(names, vec!["a", "a_2", "a_3"]);
    }

    #[test]
    fn suffix_skips_natural_names_of_other_classes() {
        let names = canonical_names(&[((), set(&["a"])), ((), set(&["a"])), ((), set(&["a_2"]))]);
        assert_eq!(names, vec!["a", "a_3", "a_2"]);
    }

    #[test]
    fn domains_are_independent() {
        let names = canonical_names(&[(1, set(&["f"])), (2, set(&["f"]))]);
        assert_eq!(names, vec!["f", "f"]);
    }

    #[test]
    fn union_find_creation_order() {
        let mut uf = UnionFind::new(4);
        uf.union(3, 1);
        let (cls, n) = uf.classes();
        assert_eq!(n, 3);
        assert_eq!(cls, vec![0, 1, 2, 1]);
    }
}
