use std::fmt;

use serde::{Deserialize, Serialize};

use super::signature::{MsaMorphism, MsaSignature, OpSym};
use crate::error::{Error, Result};

/// A sorted variable. Inside a quantifier body a variable is referred to by
/// name; an inner binding shadows outer ones of the same name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Var {
    pub name: String,
    pub sort: String,
}

impl Var {
    pub fn new(name: impl Into<String>, sort: impl Into<String>) -> Self {
        Var {
            name: name.into(),
            sort: sort.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Term {
    Op { op: OpSym, args: Vec<Term> },
    Var(Var),
}

impl Term {
    pub fn op(op: OpSym, args: Vec<Term>) -> Self {
        Term::Op { op, args }
    }

    pub fn constant(op: OpSym) -> Self {
        Term::Op { op, args: Vec::new() }
    }

    pub fn var(name: impl Into<String>, sort: impl Into<String>) -> Self {
        Term::Var(Var::new(name, sort))
    }

    pub fn sort(&self) -> &str {
        match self {
            Term::Op { op, .. } => &op.result,
            Term::Var(v) => &v.sort,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Op { args, .. } => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    fn typecheck(&self, sig: &MsaSignature, scope: &[Var]) -> Result<()> {
        match self {
            Term::Var(v) => match scope.iter().rev().find(|b| b.name == v.name) {
                Some(b) if b.sort == v.sort => Ok(()),
                Some(b) => Err(Error::typecheck(format!(
                    "variable {} has sort {} but is bound at sort {}",
                    v.name, v.sort, b.sort
                ))),
                None => Err(Error::typecheck(format!("variable {} is not bound", v.name))),
            },
            Term::Op { op, args } => {
                if !sig.has_op(op) {
                    return Err(Error::typecheck(format!("operation {op} is not in the signature")));
                }
                if args.len() != op.args.len() {
                    return Err(Error::typecheck(format!(
                        "{} expects {} arguments, got {}",
                        op.name,
                        op.args.len(),
                        args.len()
                    )));
                }
                for (t, s) in args.iter().zip(&op.args) {
                    if t.sort() != s {
                        return Err(Error::typecheck(format!(
                            "argument of {} has sort {}, expected {s}",
                            op.name,
                            t.sort()
                        )));
                    }
                    t.typecheck(sig, scope)?;
                }
                Ok(())
            }
        }
    }

    fn translate(&self, phi: &MsaMorphism) -> Term {
        match self {
            Term::Var(v) => Term::Var(Var::new(v.name.clone(), phi.sort(&v.sort))),
            Term::Op { op, args } => Term::Op {
                op: phi.op(op),
                args: args.iter().map(|t| t.translate(phi)).collect(),
            },
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(&v.name),
            Term::Op { op, args } if args.is_empty() => f.write_str(&op.name),
            Term::Op { op, args } => {
                write!(f, "{}(", op.name)?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// First-order sentences with equational atoms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MsaSentence {
    Eq(Term, Term),
    And(Box<MsaSentence>, Box<MsaSentence>),
    Or(Box<MsaSentence>, Box<MsaSentence>),
    Implies(Box<MsaSentence>, Box<MsaSentence>),
    Not(Box<MsaSentence>),
    Forall(Vec<Var>, Box<MsaSentence>),
    Exists(Vec<Var>, Box<MsaSentence>),
}

impl MsaSentence {
    pub fn eq(a: Term, b: Term) -> Self {
        MsaSentence::Eq(a, b)
    }

    pub fn and(a: MsaSentence, b: MsaSentence) -> Self {
        MsaSentence::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: MsaSentence, b: MsaSentence) -> Self {
        MsaSentence::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: MsaSentence, b: MsaSentence) -> Self {
        MsaSentence::Implies(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: MsaSentence) -> Self {
        MsaSentence::Not(Box::new(a))
    }

    pub fn forall(vars: Vec<Var>, body: MsaSentence) -> Self {
        MsaSentence::Forall(vars, Box::new(body))
    }

    pub fn exists(vars: Vec<Var>, body: MsaSentence) -> Self {
        MsaSentence::Exists(vars, Box::new(body))
    }

    /// Connective/quantifier nesting depth; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            MsaSentence::Eq(..) => 0,
            MsaSentence::Not(a) | MsaSentence::Forall(_, a) | MsaSentence::Exists(_, a) => 1 + a.depth(),
            MsaSentence::And(a, b) | MsaSentence::Or(a, b) | MsaSentence::Implies(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    /// Checks that the sentence is closed and well-sorted over `sig`.
    pub fn typecheck(&self, sig: &MsaSignature) -> Result<()> {
        self.check(sig, &mut Vec::new())
    }

    fn check(&self, sig: &MsaSignature, scope: &mut Vec<Var>) -> Result<()> {
        match self {
            MsaSentence::Eq(a, b) => {
                if a.sort() != b.sort() {
                    return Err(Error::typecheck(format!(
                        "equation sides have sorts {} and {}",
                        a.sort(),
                        b.sort()
                    )));
                }
                if !sig.has_sort(a.sort()) {
                    return Err(Error::typecheck(format!("sort {} is not in the signature", a.sort())));
                }
                a.typecheck(sig, scope)?;
                b.typecheck(sig, scope)
            }
            MsaSentence::Not(a) => a.check(sig, scope),
            MsaSentence::And(a, b) | MsaSentence::Or(a, b) | MsaSentence::Implies(a, b) => {
                a.check(sig, scope)?;
                b.check(sig, scope)
            }
            MsaSentence::Forall(vars, body) | MsaSentence::Exists(vars, body) => {
                for (i, v) in vars.iter().enumerate() {
                    if !sig.has_sort(&v.sort) {
                        return Err(Error::typecheck(format!("sort {} of {} is not in the signature", v.sort, v.name)));
                    }
                    if vars[..i].iter().any(|w| w.name == v.name) {
                        return Err(Error::typecheck(format!("variable {} is bound twice", v.name)));
                    }
                }
                let depth = scope.len();
                scope.extend(vars.iter().cloned());
                let r = body.check(sig, scope);
                scope.truncate(depth);
                r
            }
        }
    }

    pub(crate) fn translate_unchecked(&self, phi: &MsaMorphism) -> MsaSentence {
        let tr = |s: &MsaSentence| Box::new(s.translate_unchecked(phi));
        let vars = |vs: &[Var]| vs.iter().map(|v| Var::new(v.name.clone(), phi.sort(&v.sort))).collect();
        match self {
            MsaSentence::Eq(a, b) => MsaSentence::Eq(a.translate(phi), b.translate(phi)),
            MsaSentence::Not(a) => MsaSentence::Not(tr(a)),
            MsaSentence::And(a, b) => MsaSentence::And(tr(a), tr(b)),
            MsaSentence::Or(a, b) => MsaSentence::Or(tr(a), tr(b)),
            MsaSentence::Implies(a, b) => MsaSentence::Implies(tr(a), tr(b)),
            MsaSentence::Forall(vs, a) => MsaSentence::Forall(vars(vs), tr(a)),
            MsaSentence::Exists(vs, a) => MsaSentence::Exists(vars(vs), tr(a)),
        }
    }
}

/// Renames sort and operation symbols along `phi`; variable names are kept
/// and their sorts retagged. Since variables resolve by name, identifying
/// sorts cannot capture a variable.
pub fn msa_translate(phi: &MsaMorphism, rho: &MsaSentence) -> Result<MsaSentence> {
    rho.typecheck(phi.source())?;
    Ok(rho.translate_unchecked(phi))
}

fn write_vars(f: &mut fmt::Formatter<'_>, vars: &[Var]) -> fmt::Result {
    for (i, v) in vars.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{}:{}", v.name, v.sort)?;
    }
    Ok(())
}

impl fmt::Display for MsaSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MsaSentence::Eq(a, b) => write!(f, "{a} = {b}"),
            MsaSentence::Not(a) => write!(f, "!({a})"),
            MsaSentence::And(a, b) => write!(f, "({a} & {b})"),
            MsaSentence::Or(a, b) => write!(f, "({a} | {b})"),
            MsaSentence::Implies(a, b) => write!(f, "({a} -> {b})"),
            MsaSentence::Forall(vs, a) => {
                f.write_str("(forall ")?;
                write_vars(f, vs)?;
                write!(f, " . {a})")
            }
            MsaSentence::Exists(vs, a) => {
                f.write_str("(exists ")?;
                write_vars(f, vs)?;
                write!(f, " . {a})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unary() -> (MsaSignature, OpSym) {
        let sigma = OpSym::new("sigma", ["s"], "s");
        (MsaSignature::new(["s"], [sigma.clone()]).unwrap(), sigma)
    }

    #[test]
    fn typecheck_scoping() {
        let (sig, sigma) = unary();
        let x = Term::var("x", "s");
        let ok = MsaSentence::forall(vec![Var::new("x", "s")], MsaSentence::eq(Term::op(sigma.clone(), vec![x.clone()]), x.clone()));
        assert!(ok.typecheck(&sig).is_ok());
        assert!(MsaSentence::eq(x.clone(), x.clone()).typecheck(&sig).is_err());
        let twice = MsaSentence::forall(vec![Var::new("x", "s"), Var::new("x", "s")], MsaSentence::eq(x.clone(), x));
        assert!(twice.typecheck(&sig).is_err());
    }

    #[test]
    fn translation_renames_and_retags() {
        let (src, sigma) = unary();
        let tau = OpSym::new("tau", ["t"], "t");
        let tgt = MsaSignature::new(["t"], [tau.clone()]).unwrap();
        let phi = MsaMorphism::from_parts(src.clone(), tgt, [("s", "t")], [(sigma.clone(), "tau")]).unwrap();
        let rho = MsaSentence::forall(
            vec![Var::new("x", "s")],
            MsaSentence::eq(Term::op(sigma, vec![Term::var("x", "s")]), Term::var("x", "s")),
        );
        let expected = MsaSentence::forall(
            vec![Var::new("x", "t")],
            MsaSentence::eq(Term::op(tau, vec![Term::var("x", "t")]), Term::var("x", "t")),
        );
        assert_eq!(msa_translate(&phi, &rho).unwrap(), expected);
        assert_eq!(msa_translate(&MsaMorphism::identity(&src), &rho).unwrap(), rho);
    }

    #[test]
    fn sort_collapse() {
        let src = MsaSignature::new(["s1", "s2"], []).unwrap();
        let tgt = MsaSignature::new(["t"], []).unwrap();
        let phi = MsaMorphism::from_parts(src, tgt, [("s1", "t"), ("s2", "t")], []).unwrap();
        let rho = MsaSentence::forall(
            vec![Var::new("x", "s1")],
            MsaSentence::forall(vec![Var::new("y", "s2")], MsaSentence::not(MsaSentence::eq(Term::var("x", "s1"), Term::var("x", "s1")))),
        );
        let out = msa_translate(&phi, &rho).unwrap();
        assert_eq!(out.to_string(), "(forall x:t . (forall y:t . !(x = x)))");
    }
}
