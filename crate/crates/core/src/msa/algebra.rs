use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::sentence::{MsaSentence, Term, Var};
use super::signature::{MsaMorphism, MsaSignature, OpSym};
use crate::error::{Error, Result};

/// A finite algebra. The carrier of a sort of size `n` is `{0, .., n-1}`.
/// An operation table lists results in mixed-radix order of the arguments,
/// first argument most significant.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Algebra {
    carriers: BTreeMap<String, usize>,
    tables: BTreeMap<OpSym, Vec<usize>>,
}

impl Algebra {
    pub fn new(carriers: BTreeMap<String, usize>, tables: BTreeMap<OpSym, Vec<usize>>) -> Self {
        Algebra { carriers, tables }
    }

    pub fn carriers(&self) -> &BTreeMap<String, usize> {
        &self.carriers
    }

    pub fn tables(&self) -> &BTreeMap<OpSym, Vec<usize>> {
        &self.tables
    }

    pub fn carrier(&self, sort: &str) -> usize {
        self.carriers[sort]
    }

    pub fn table(&self, op: &OpSym) -> &[usize] {
        &self.tables[op]
    }

    pub fn table_len(&self, op: &OpSym) -> usize {
        op.args.iter().map(|a| self.carriers[a]).product()
    }

    /// Checks carriers and tables against `sig`.
    pub fn check(&self, sig: &MsaSignature) -> Result<()> {
        if self.carriers.keys().ne(sig.sorts().iter()) {
            return Err(Error::validation("algebra carriers do not match the signature sorts"));
        }
        if self.tables.keys().ne(sig.ops().iter()) {
            return Err(Error::validation("algebra tables do not match the signature operations"));
        }
        for (op, table) in &self.tables {
            let len = self.table_len(op);
            if table.len() != len {
                return Err(Error::validation(format!("table of {op} has {} entries, expected {len}", table.len())));
            }
            let bound = self.carriers[&op.result];
            if let Some(v) = table.iter().find(|&&v| v >= bound) {
                return Err(Error::validation(format!("table of {op} yields {v}, outside a carrier of size {bound}")));
            }
        }
        Ok(())
    }

    pub fn apply(&self, op: &OpSym, args: &[usize]) -> usize {
        let mut idx = 0;
        for (a, s) in args.iter().zip(&op.args) {
            idx = idx * self.carriers[s] + a;
        }
        self.tables[op][idx]
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("carriers {")?;
        for (i, (s, n)) in self.carriers.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            write!(f, "{s} = {n}")?;
        }
        f.write_str(" } ops {")?;
        for (i, (o, t)) in self.tables.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { "; " })?;
            write!(f, "{o} = {t:?}")?;
        }
        f.write_str(" }")
    }
}

/// Evaluates a term under a valuation of its variables (innermost binding last).
pub fn eval_term(alg: &Algebra, t: &Term, env: &[(String, usize)]) -> Result<usize> {
    match t {
        Term::Var(v) => env
            .iter()
            .rev()
            .find(|(n, _)| *n == v.name)
            .map(|(_, x)| *x)
            .ok_or_else(|| Error::contract(format!("free variable {}", v.name))),
        Term::Op { op, args } => {
            let vals = args.iter().map(|a| eval_term(alg, a, env)).collect::<Result<Vec<_>>>()?;
            Ok(alg.apply(op, &vals))
        }
    }
}

/// Value of a ground term.
pub fn term_eval(alg: &Algebra, t: &Term) -> Result<usize> {
    eval_term(alg, t, &[])
}

fn holds(alg: &Algebra, rho: &MsaSentence, env: &mut Vec<(String, usize)>) -> Result<bool> {
    Ok(match rho {
        MsaSentence::Eq(a, b) => eval_term(alg, a, env)? == eval_term(alg, b, env)?,
        MsaSentence::Not(a) => !holds(alg, a, env)?,
        MsaSentence::And(a, b) => holds(alg, a, env)? && holds(alg, b, env)?,
        MsaSentence::Or(a, b) => holds(alg, a, env)? || holds(alg, b, env)?,
        MsaSentence::Implies(a, b) => !holds(alg, a, env)? || holds(alg, b, env)?,
        MsaSentence::Forall(vars, body) => quantify(alg, vars, body, env, true)?,
        MsaSentence::Exists(vars, body) => quantify(alg, vars, body, env, false)?,
    })
}

/// Runs through every expansion of `alg` by values for `vars`.
fn quantify(
    alg: &Algebra,
    vars: &[Var],
    body: &MsaSentence,
    env: &mut Vec<(String, usize)>,
    universal: bool,
) -> Result<bool> {
    let sizes: Vec<usize> = vars.iter().map(|v| alg.carrier(&v.sort)).collect();
    if sizes.contains(&0) {
        return Ok(universal);
    }
    let base = env.len();
    let mut digits = vec![0usize; vars.len()];
    loop {
        env.truncate(base);
        env.extend(vars.iter().zip(&digits).map(|(v, &d)| (v.name.clone(), d)));
        let b = holds(alg, body, env)?;
        if b != universal {
            env.truncate(base);
            return Ok(!universal);
        }
        if !next_mixed(&mut digits, &sizes) {
            break;
        }
    }
    env.truncate(base);
    Ok(universal)
}

/// Advances a big-endian mixed-radix counter; false once it wraps around.
pub(crate) fn next_mixed(digits: &mut [usize], sizes: &[usize]) -> bool {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < sizes[i] {
            return true;
        }
        digits[i] = 0;
    }
    false
}

pub fn msa_satisfies(alg: &Algebra, rho: &MsaSentence) -> Result<bool> {
    holds(alg, rho, &mut Vec::new())
}

/// `M(x) = M′(φ(x))` for every sort and operation `x` of the source.
pub fn msa_reduct(phi: &MsaMorphism, m: &Algebra) -> Result<Algebra> {
    m.check(phi.target())?;
    Ok(reduct_unchecked(phi, m))
}

pub(crate) fn reduct_unchecked(phi: &MsaMorphism, m: &Algebra) -> Algebra {
    let carriers = phi.sort_map().iter().map(|(s, t)| (s.clone(), m.carriers[t])).collect();
    let tables = phi
        .source()
        .ops()
        .iter()
        .map(|o| (o.clone(), m.tables[&phi.op(o)].clone()))
        .collect();
    Algebra { carriers, tables }
}

/// Number of algebras with carriers of size at most `k`.
pub fn algebra_count(sig: &MsaSignature, k: usize) -> u128 {
    let sorts: Vec<&String> = sig.sorts().iter().collect();
    let mut sizes = vec![0usize; sorts.len()];
    let bounds = vec![k + 1; sorts.len()];
    let mut total: u128 = 0;
    loop {
        let carriers: BTreeMap<&str, usize> = sorts.iter().map(|s| s.as_str()).zip(sizes.iter().copied()).collect();
        let mut n: u128 = 1;
        for op in sig.ops() {
            let len: u128 = op.args.iter().map(|a| carriers[a.as_str()] as u128).product();
            let r = carriers[op.result.as_str()] as u128;
            n = n.saturating_mul(pow_sat(r, len));
        }
        total = total.saturating_add(n);
        if !next_mixed(&mut sizes, &bounds) {
            break;
        }
    }
    total
}

fn pow_sat(base: u128, exp: u128) -> u128 {
    if exp == 0 {
        return 1;
    }
    if base <= 1 {
        return base;
    }
    if exp > 128 {
        return u128::MAX;
    }
    base.saturating_pow(exp as u32)
}

/// All algebras with every carrier of size at most `k`: carrier sizes vary
/// lexicographically over the sorted sorts, then the operation tables vary
/// lexicographically.
pub fn msa_enumerate_algebras(sig: &MsaSignature, k: usize, cap: u64) -> Result<Vec<Algebra>> {
    let needed = algebra_count(sig, k);
    if needed > cap as u128 {
        return Err(Error::resource(format!("algebras with carriers up to {k}"), needed, cap as u128));
    }
    let sorts: Vec<&String> = sig.sorts().iter().collect();
    let ops: Vec<&OpSym> = sig.ops().iter().collect();
    let mut out = Vec::with_capacity(needed as usize);
    let mut sizes = vec![0usize; sorts.len()];
    let bounds = vec![k + 1; sorts.len()];
    loop {
        let carriers: BTreeMap<String, usize> = sorts.iter().map(|s| (*s).clone()).zip(sizes.iter().copied()).collect();
        let lens: Vec<usize> = ops.iter().map(|o| o.args.iter().map(|a| carriers[a]).product()).collect();
        let radix: Vec<usize> = ops
            .iter()
            .zip(&lens)
            .flat_map(|(o, &l)| std::iter::repeat_n(carriers[&o.result], l))
            .collect();
        if !radix.contains(&0) {
            let mut digits = vec![0usize; radix.len()];
            loop {
                let mut tables = BTreeMap::new();
                let mut at = 0;
                for (o, &l) in ops.iter().zip(&lens) {
                    tables.insert((*o).clone(), digits[at..at + l].to_vec());
                    at += l;
                }
                out.push(Algebra {
                    carriers: carriers.clone(),
                    tables,
                });
                if !next_mixed(&mut digits, &radix) {
                    break;
                }
            }
        }
        if !next_mixed(&mut sizes, &bounds) {
            break;
        }
    }
    Ok(out)
}

/// `Σ + X`: the base signature with the variables of `X` added as constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureExtension {
    pub base: MsaSignature,
    pub vars: Vec<Var>,
    pub extended: MsaSignature,
    constants: Vec<OpSym>,
}

impl SignatureExtension {
    pub fn new(base: &MsaSignature, vars: &[Var]) -> Result<Self> {
        let mut ops: BTreeSet<OpSym> = base.ops().clone();
        let mut constants = Vec::new();
        for v in vars {
            if !base.has_sort(&v.sort) {
                return Err(Error::typecheck(format!("sort {} is not in the signature", v.sort)));
            }
            let mut name = v.name.clone();
            let mut n = 2;
            while ops.contains(&OpSym::constant(name.clone(), v.sort.clone())) {
                name = format!("{}_{n}", v.name);
                n += 1;
            }
            let c = OpSym::constant(name, v.sort.clone());
            ops.insert(c.clone());
            constants.push(c);
        }
        Ok(SignatureExtension {
            base: base.clone(),
            vars: vars.to_vec(),
            extended: MsaSignature::new_unchecked(base.sorts().clone(), ops),
            constants,
        })
    }

    /// The new constant standing for the `i`-th variable.
    pub fn constant(&self, i: usize) -> &OpSym {
        &self.constants[i]
    }

    /// Every `Σ+X`-algebra whose `Σ`-reduct is `alg`.
    pub fn expansions(&self, alg: &Algebra) -> Vec<Algebra> {
        let sizes: Vec<usize> = self.vars.iter().map(|v| alg.carrier(&v.sort)).collect();
        if sizes.contains(&0) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut digits = vec![0usize; sizes.len()];
        loop {
            let mut e = alg.clone();
            for (c, &d) in self.constants.iter().zip(&digits) {
                e.tables.insert(c.clone(), vec![d]);
            }
            out.push(e);
            if !next_mixed(&mut digits, &sizes) {
                break;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat2() -> (MsaSignature, OpSym, OpSym) {
        let c = OpSym::constant("c", "s");
        let f = OpSym::new("f", ["s"], "s");
        (MsaSignature::new(["s"], [c.clone(), f.clone()]).unwrap(), c, f)
    }

    fn alg(carriers: &[(&str, usize)], tables: &[(&OpSym, &[usize])]) -> Algebra {
        Algebra::new(
            carriers.iter().map(|(s, n)| (s.to_string(), *n)).collect(),
            tables.iter().map(|(o, t)| ((*o).clone(), t.to_vec())).collect(),
        )
    }

    #[test]
    fn term_evaluation() {
        let (sig, c, f) = nat2();
        let m = alg(&[("s", 2)], &[(&c, &[1]), (&f, &[1, 0])]);
        m.check(&sig).unwrap();
        let tc = Term::constant(c.clone());
        assert_eq!(term_eval(&m, &tc).unwrap(), 1);
        let fc = Term::op(f.clone(), vec![tc]);
        assert_eq!(term_eval(&m, &fc).unwrap(), 0);
        assert_eq!(term_eval(&m, &Term::op(f, vec![fc])).unwrap(), 1);
        assert!(term_eval(&m, &Term::var("x", "s")).is_err());
    }

    #[test]
    fn mixed_radix_tables() {
        let g = OpSym::new("g", ["a", "b"], "a");
        let m = alg(&[("a", 2), ("b", 3)], &[(&g, &[0, 1, 0, 1, 1, 0])]);
        // (1, 2) sits at 1 * 3 + 2
        assert_eq!(m.apply(&g, &[1, 2]), 0);
        assert_eq!(m.apply(&g, &[0, 1]), 1);
    }

    #[test]
    fn satisfaction_examples() {
        let s = MsaSignature::new(["s"], []).unwrap();
        let refl = MsaSentence::forall(vec![Var::new("x", "s")], MsaSentence::eq(Term::var("x", "s"), Term::var("x", "s")));
        for m in msa_enumerate_algebras(&s, 3, 100).unwrap() {
            assert!(msa_satisfies(&m, &refl).unwrap());
        }
        let ex = MsaSentence::exists(vec![Var::new("x", "s")], MsaSentence::eq(Term::var("x", "s"), Term::var("x", "s")));
        assert!(!msa_satisfies(&alg(&[("s", 0)], &[]), &ex).unwrap());

        let f = OpSym::new("f", ["s"], "s");
        let m = alg(&[("s", 2)], &[(&f, &[0, 1])]);
        let fx = MsaSentence::forall(
            vec![Var::new("x", "s")],
            MsaSentence::eq(Term::op(f.clone(), vec![Term::var("x", "s")]), Term::var("x", "s")),
        );
        assert!(msa_satisfies(&m, &fx).unwrap());
        assert!(!msa_satisfies(&alg(&[("s", 2)], &[(&f, &[1, 0])]), &fx).unwrap());
    }

    #[test]
    fn quantifiers_agree_with_expansions() {
        let (sig, _, f) = nat2();
        let x = Term::var("x", "s");
        let body = MsaSentence::eq(Term::op(f.clone(), vec![x.clone()]), x);
        let vars = vec![Var::new("x", "s")];
        let ext = SignatureExtension::new(&sig, &vars).unwrap();
        assert_eq!(ext.constant(0).name, "x");
        let ground = MsaSentence::eq(
            Term::op(f, vec![Term::constant(ext.constant(0).clone())]),
            Term::constant(ext.constant(0).clone()),
        );
        for m in msa_enumerate_algebras(&sig, 3, 10_000).unwrap() {
            let exps = ext.expansions(&m);
            let all = exps.iter().all(|e| msa_satisfies(e, &ground).unwrap());
            let any = exps.iter().any(|e| msa_satisfies(e, &ground).unwrap());
            assert_eq!(msa_satisfies(&m, &MsaSentence::forall(vars.clone(), body.clone())).unwrap(), all);
            assert_eq!(msa_satisfies(&m, &MsaSentence::exists(vars.clone(), body.clone())).unwrap(), any);
        }
    }

    #[test]
    fn reduct_examples() {
        let src = MsaSignature::new(["s1", "s2"], []).unwrap();
        let tgt = MsaSignature::new(["t"], []).unwrap();
        let phi = MsaMorphism::from_parts(src, tgt.clone(), [("s1", "t"), ("s2", "t")], []).unwrap();
        let m = alg(&[("t", 2)], &[]);
        let r = msa_reduct(&phi, &m).unwrap();
        assert_eq!(r.carrier("s1"), 2);
        assert_eq!(r.carrier("s2"), 2);
        assert_eq!(msa_reduct(&MsaMorphism::identity(&tgt), &m).unwrap(), m);
    }

    #[test]
    fn enumeration_counts() {
        let one = MsaSignature::new(["s"], []).unwrap();
        assert_eq!(msa_enumerate_algebras(&one, 1, 100).unwrap().len(), 2);
        assert_eq!(msa_enumerate_algebras(&MsaSignature::empty(), 3, 100).unwrap(), vec![Algebra::default()]);
        let c = OpSym::constant("c", "s");
        let sig = MsaSignature::new(["s"], [c.clone()]).unwrap();
        assert_eq!(msa_enumerate_algebras(&sig, 1, 100).unwrap(), vec![alg(&[("s", 1)], &[(&c, &[0])])]);
        // unary op, k = 2: sizes 0,1,2 give 1 + 1 + 4 tables
        let (u, _, _) = (MsaSignature::new(["s"], [OpSym::new("f", ["s"], "s")]).unwrap(), 0, 0);
        let all = msa_enumerate_algebras(&u, 2, 100).unwrap();
        assert_eq!(all.len(), 6);
        assert_eq!(algebra_count(&u, 2), 6);
        assert!(all.windows(2).all(|w| w[0].carrier("s") <= w[1].carrier("s")));
        assert!(all.iter().all(|a| a.check(&u).is_ok()));
        assert!(msa_enumerate_algebras(&u, 2, 5).unwrap_err().is_resource());
    }
}
