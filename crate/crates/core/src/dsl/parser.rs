use std::collections::BTreeMap;

use super::document::{ByBase, EdgeDecl, MapSpec, MsaMapSpec, OpRef, SpecDocument, TableSpec};
use super::lexer::{lex, Tok};
use crate::error::{Error, Pos, Result};
use crate::msa::{MsaInclusionKind, MsaSentence, MsaSignature, OpSym, Term, Var};
use crate::pl::{PlModel, PlSentence, PlSignature};

/// Parses and resolves a document. Declarations may only refer to earlier ones.
pub fn parse(text: &str) -> Result<SpecDocument> {
    let mut p = Parser {
        toks: lex(text)?,
        i: 0,
    };
    let mut kind = MsaInclusionKind::default();
    if p.at_word("inclusions") {
        p.bump();
        let (w, pos) = p.ident()?;
        kind = w.parse().map_err(|e: Error| e.at(pos))?;
    }
    let mut doc = SpecDocument::new(kind);
    while !p.at(&Tok::Eof) {
        p.declaration(&mut doc)?;
    }
    Ok(doc)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

type Sigs<'a> = ByBase<&'a PlSignature, &'a MsaSignature>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn at(&self, t: &Tok) -> bool {
        self.peek() == t
    }

    fn at_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == w)
    }

    fn error(&self, expected: &str) -> Error {
        Error::Syntax {
            pos: self.pos(),
            msg: format!("expected {expected}, found {}", self.peek().describe()),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.at(t) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.error(&t.describe()))
        }
    }

    fn keyword(&mut self, w: &str) -> Result<()> {
        if self.at_word(w) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("`{w}`")))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos)> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok((s, pos))
            }
            _ => Err(self.error("a name")),
        }
    }

    fn number(&mut self) -> Result<usize> {
        match *self.peek() {
            Tok::Num(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.error("a number")),
        }
    }

    /// `open item (sep item)* [sep] close`, with `open` already consumed.
    fn list<T>(&mut self, sep: Tok, close: Tok, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        let mut out = Vec::new();
        while !self.eat(&close) {
            out.push(item(self)?);
            if !self.eat(&sep) {
                self.expect(close)?;
                break;
            }
        }
        Ok(out)
    }

    fn declaration(&mut self, doc: &mut SpecDocument) -> Result<()> {
        let pos = self.pos();
        let (word, _) = self.ident().map_err(|_| self.error("a declaration"))?;
        match word.as_str() {
            "sig" => {
                let (name, _) = self.ident()?;
                self.expect(Tok::Eq)?;
                let sig = self.signature_literal()?;
                doc.add_signature(&name, pos, sig)
            }
            "morph" | "pmorph" => {
                let (name, _) = self.ident()?;
                self.expect(Tok::Colon)?;
                let (src, spos) = self.ident()?;
                self.expect(Tok::Arrow)?;
                let (tgt, tpos) = self.ident()?;
                let base = doc.signature(&src, spos)?.base();
                doc.signature(&tgt, tpos)?;
                let dom = if word == "pmorph" {
                    self.keyword("on")?;
                    let d = self.signature_literal()?;
                    if d.base() != base {
                        return Err(Error::validation("domain and source have different bases").at(pos));
                    }
                    Some(d)
                } else {
                    None
                };
                let map = self.morphism_body(base == super::Base::Pl)?;
                doc.add_morphism(&name, pos, &src, &tgt, dom, map)
            }
            "model" => {
                let (name, _) = self.ident()?;
                self.expect(Tok::Colon)?;
                let (sig, spos) = self.ident()?;
                self.expect(Tok::Eq)?;
                match doc.signature(&sig, spos)? {
                    ByBase::Pl(_) => {
                        self.expect(Tok::LBrace)?;
                        let holds = self.list(Tok::Comma, Tok::RBrace, |p| p.ident().map(|x| x.0))?;
                        doc.add_pl_model(&name, pos, &sig, PlModel::new(holds))
                    }
                    ByBase::Msa(_) => {
                        let (carriers, tables) = self.algebra_body()?;
                        doc.add_msa_model(&name, pos, &sig, carriers, &tables)
                    }
                }
            }
            "sentence" => {
                let (name, _) = self.ident()?;
                self.expect(Tok::Colon)?;
                let (sig, spos) = self.ident()?;
                self.expect(Tok::Eq)?;
                let s = match doc.signature(&sig, spos)? {
                    ByBase::Pl(s) => ByBase::Pl(self.sentence(ByBase::Pl(s), &mut Vec::new())?.into_pl()),
                    ByBase::Msa(s) => ByBase::Msa(self.sentence(ByBase::Msa(s), &mut Vec::new())?.into_msa()),
                };
                doc.add_sentence(&name, pos, &sig, s)
            }
            "theory" => {
                let (name, _) = self.ident()?;
                self.expect(Tok::Colon)?;
                let (sig, spos) = self.ident()?;
                self.expect(Tok::Eq)?;
                self.expect(Tok::LBrace)?;
                let axioms = match doc.signature(&sig, spos)? {
                    ByBase::Pl(s) => ByBase::Pl(
                        self.list(Tok::Semi, Tok::RBrace, |p| Ok(p.sentence(ByBase::Pl(s), &mut Vec::new())?.into_pl()))?,
                    ),
                    ByBase::Msa(s) => ByBase::Msa(
                        self.list(Tok::Semi, Tok::RBrace, |p| Ok(p.sentence(ByBase::Msa(s), &mut Vec::new())?.into_msa()))?,
                    ),
                };
                doc.add_theory(&name, pos, &sig, axioms)
            }
            "span" => {
                let (name, _) = self.ident()?;
                self.expect(Tok::Eq)?;
                let (l, _) = self.ident()?;
                self.expect(Tok::Comma)?;
                let (r, _) = self.ident()?;
                doc.add_span(&name, pos, &l, &r)
            }
            "square" => {
                let (name, _) = self.ident()?;
                self.expect(Tok::Eq)?;
                let mut ms = Vec::new();
                for k in 0..4 {
                    if k > 0 {
                        self.expect(Tok::Comma)?;
                    }
                    ms.push(self.ident()?.0);
                }
                doc.add_square(&name, pos, [&ms[0], &ms[1], &ms[2], &ms[3]].map(String::as_str))
            }
            "diagram" => {
                let (name, _) = self.ident()?;
                self.expect(Tok::LBrace)?;
                let (mut nodes, mut edges) = (Vec::new(), Vec::new());
                while !self.eat(&Tok::RBrace) {
                    let (w, wpos) = self.ident()?;
                    match w.as_str() {
                        "node" => {
                            let (n, _) = self.ident()?;
                            self.expect(Tok::Colon)?;
                            let (t, _) = self.ident()?;
                            nodes.push((n, t));
                        }
                        "edge" => {
                            let (e, _) = self.ident()?;
                            self.expect(Tok::Colon)?;
                            let (from, _) = self.ident()?;
                            self.expect(Tok::Arrow)?;
                            let (to, _) = self.ident()?;
                            self.expect(Tok::Eq)?;
                            let (morphism, _) = self.ident()?;
                            edges.push(EdgeDecl {
                                name: e,
                                from,
                                to,
                                morphism,
                            });
                        }
                        _ => {
                            return Err(Error::Syntax {
                                pos: wpos,
                                msg: format!("expected `node` or `edge`, found `{w}`"),
                            })
                        }
                    }
                    self.expect(Tok::Semi)?;
                }
                doc.add_diagram(&name, pos, nodes, edges)
            }
            other => Err(Error::Syntax {
                pos,
                msg: format!("expected a declaration, found `{other}`"),
            }),
        }
    }

    /// `{ p, q }` or `sorts { .. } ops { .. }`.
    fn signature_literal(&mut self) -> Result<ByBase<PlSignature, MsaSignature>> {
        if self.eat(&Tok::LBrace) {
            let syms = self.list(Tok::Comma, Tok::RBrace, |p| p.ident().map(|x| x.0))?;
            return Ok(ByBase::Pl(PlSignature::new(syms)));
        }
        let pos = self.pos();
        self.keyword("sorts")?;
        self.expect(Tok::LBrace)?;
        let sorts = self.list(Tok::Comma, Tok::RBrace, |p| p.ident().map(|x| x.0))?;
        self.keyword("ops")?;
        self.expect(Tok::LBrace)?;
        let ops = self.list(Tok::Semi, Tok::RBrace, |p| {
            let (name, _) = p.ident()?;
            p.expect(Tok::Colon)?;
            let (args, result) = p.rank()?;
            Ok(OpSym::new(name, args, result))
        })?;
        MsaSignature::new(sorts, ops).map(ByBase::Msa).map_err(|e| e.at(pos))
    }

    /// `s1 s2 -> s`, after the colon.
    fn rank(&mut self) -> Result<(Vec<String>, String)> {
        let mut args = Vec::new();
        while !self.eat(&Tok::Arrow) {
            args.push(self.ident().map_err(|_| self.error("a sort or `->`"))?.0);
        }
        Ok((args, self.ident()?.0))
    }

    fn op_ref(&mut self) -> Result<OpRef> {
        let (name, _) = self.ident()?;
        let rank = if self.eat(&Tok::Colon) { Some(self.rank()?) } else { None };
        Ok(OpRef { name, rank })
    }

    fn morphism_body(&mut self, pl: bool) -> Result<MapSpec> {
        self.expect(Tok::LBrace)?;
        if pl {
            let pairs = self.list(Tok::Comma, Tok::RBrace, |p| {
                let (a, _) = p.ident()?;
                p.expect(Tok::MapsTo)?;
                Ok((a, p.ident()?.0))
            })?;
            return Ok(ByBase::Pl(unique_pairs(pairs, self.pos())?));
        }
        let mut spec = MsaMapSpec::default();
        if self.at_word("sorts") {
            self.bump();
            self.expect(Tok::LBrace)?;
            let pairs = self.list(Tok::Comma, Tok::RBrace, |p| {
                let (a, _) = p.ident()?;
                p.expect(Tok::MapsTo)?;
                Ok((a, p.ident()?.0))
            })?;
            spec.sorts = unique_pairs(pairs, self.pos())?;
        }
        if self.at_word("ops") {
            self.bump();
            self.expect(Tok::LBrace)?;
            spec.ops = self.list(Tok::Semi, Tok::RBrace, |p| {
                let r = p.op_ref()?;
                p.expect(Tok::MapsTo)?;
                Ok((r, p.ident()?.0))
            })?;
        }
        self.expect(Tok::RBrace)?;
        Ok(ByBase::Msa(spec))
    }

    fn algebra_body(&mut self) -> Result<(BTreeMap<String, usize>, TableSpec)> {
        self.keyword("carriers")?;
        self.expect(Tok::LBrace)?;
        let carriers = self.list(Tok::Comma, Tok::RBrace, |p| {
            let (s, _) = p.ident()?;
            p.expect(Tok::Eq)?;
            Ok((s, p.number()?))
        })?;
        let carriers = unique_pairs(carriers, self.pos())?;
        self.keyword("ops")?;
        self.expect(Tok::LBrace)?;
        let tables = self.list(Tok::Semi, Tok::RBrace, |p| {
            let r = p.op_ref()?;
            p.expect(Tok::Eq)?;
            p.expect(Tok::LBracket)?;
            Ok((r, p.list(Tok::Comma, Tok::RBracket, Parser::number)?))
        })?;
        Ok((carriers, tables))
    }

    /// `imp := or ['->' imp]`, `or := and ('|' and)*`, `and := unary ('&' unary)*`.
    fn sentence(&mut self, sig: Sigs<'_>, scope: &mut Vec<Var>) -> Result<Sen> {
        let lhs = self.disjunction(sig, scope)?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.sentence(sig, scope)?;
            return Ok(Sen::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self, sig: Sigs<'_>, scope: &mut Vec<Var>) -> Result<Sen> {
        let mut acc = self.conjunction(sig, scope)?;
        while self.eat(&Tok::Bar) {
            let rhs = self.conjunction(sig, scope)?;
            acc = Sen::or(acc, rhs);
        }
        Ok(acc)
    }

    fn conjunction(&mut self, sig: Sigs<'_>, scope: &mut Vec<Var>) -> Result<Sen> {
        let mut acc = self.unary(sig, scope)?;
        while self.eat(&Tok::Amp) {
            let rhs = self.unary(sig, scope)?;
            acc = Sen::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self, sig: Sigs<'_>, scope: &mut Vec<Var>) -> Result<Sen> {
        if self.eat(&Tok::Bang) {
            return Ok(Sen::not(self.unary(sig, scope)?));
        }
        if self.eat(&Tok::LParen) {
            let s = self.sentence(sig, scope)?;
            self.expect(Tok::RParen)?;
            return Ok(s);
        }
        match sig {
            ByBase::Pl(s) => {
                let (p, pos) = self.ident().map_err(|_| self.error("a sentence"))?;
                if !s.contains(&p) {
                    return Err(Error::Resolution {
                        pos,
                        msg: format!("symbol {p} is not in the signature"),
                    });
                }
                Ok(Sen::Pl(PlSentence::var(p)))
            }
            ByBase::Msa(m) => {
                if self.at_word("forall") || self.at_word("exists") {
                    let universal = self.at_word("forall");
                    self.bump();
                    let mut vars = Vec::new();
                    loop {
                        let (x, _) = self.ident()?;
                        self.expect(Tok::Colon)?;
                        let (s, spos) = self.ident()?;
                        if !m.has_sort(&s) {
                            return Err(Error::Resolution {
                                pos: spos,
                                msg: format!("sort {s} is not in the signature"),
                            });
                        }
                        vars.push(Var::new(x, s));
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(Tok::Dot)?;
                    let depth = scope.len();
                    scope.extend(vars.iter().cloned());
                    let body = self.sentence(sig, scope);
                    scope.truncate(depth);
                    let body = body?.into_msa();
                    return Ok(Sen::Msa(if universal {
                        MsaSentence::forall(vars, body)
                    } else {
                        MsaSentence::exists(vars, body)
                    }));
                }
                let pos = self.pos();
                let a = self.term(m, scope)?;
                self.expect(Tok::Eq)?;
                let b = self.term(m, scope)?;
                if a.sort() != b.sort() {
                    return Err(Error::typecheck(format!("equation sides have sorts {} and {}", a.sort(), b.sort())).at(pos));
                }
                Ok(Sen::Msa(MsaSentence::eq(a, b)))
            }
        }
    }

    /// `x`, `c`, `c()`, `f(t, ..)`, with an optional `:sort` after the name
    /// to pick among operations differing only in result sort.
    fn term(&mut self, sig: &MsaSignature, scope: &[Var]) -> Result<Term> {
        let (name, pos) = self.ident().map_err(|_| self.error("a term"))?;
        let result = if self.eat(&Tok::Colon) { Some(self.ident()?.0) } else { None };
        let applied = self.at(&Tok::LParen);
        if result.is_none() && !applied {
            if let Some(v) = scope.iter().rev().find(|v| v.name == name) {
                return Ok(Term::Var(v.clone()));
            }
        }
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            args = self.list(Tok::Comma, Tok::RParen, |p| p.term(sig, scope))?;
        }
        let arg_sorts: Vec<String> = args.iter().map(|t| t.sort().to_string()).collect();
        let hits: Vec<&OpSym> = sig
            .lookup(&name, &arg_sorts)
            .filter(|o| result.as_ref().is_none_or(|r| &o.result == r))
            .collect();
        match hits.as_slice() {
            [op] => Ok(Term::op((*op).clone(), args)),
            [] => Err(Error::Resolution {
                pos,
                msg: format!("no variable or operation {name}({}) in scope", arg_sorts.join(", ")),
            }),
            _ => Err(Error::Resolution {
                pos,
                msg: format!("operation {name} is ambiguous; write {name}:sort"),
            }),
        }
    }
}

fn unique_pairs<V>(pairs: Vec<(String, V)>, pos: Pos) -> Result<BTreeMap<String, V>> {
    let mut out = BTreeMap::new();
    for (k, v) in pairs {
        if out.insert(k.clone(), v).is_some() {
            return Err(Error::Syntax {
                pos,
                msg: format!("{k} is given twice"),
            });
        }
    }
    Ok(out)
}

/// A sentence of either base while parsing.
enum Sen {
    Pl(PlSentence),
    Msa(MsaSentence),
}

impl Sen {
    fn into_pl(self) -> PlSentence {
        match self {
            Sen::Pl(s) => s,
            Sen::Msa(_) => unreachable!("parsed against a PL signature"),
        }
    }

    fn into_msa(self) -> MsaSentence {
        match self {
            Sen::Msa(s) => s,
            Sen::Pl(_) => unreachable!("parsed against an MSA signature"),
        }
    }

    fn not(a: Sen) -> Sen {
        match a {
            Sen::Pl(a) => Sen::Pl(PlSentence::not(a)),
            Sen::Msa(a) => Sen::Msa(MsaSentence::not(a)),
        }
    }

    fn and(a: Sen, b: Sen) -> Sen {
        match (a, b) {
            (Sen::Pl(a), Sen::Pl(b)) => Sen::Pl(PlSentence::and(a, b)),
            (a, b) => Sen::Msa(MsaSentence::and(a.into_msa(), b.into_msa())),
        }
    }

    fn or(a: Sen, b: Sen) -> Sen {
        match (a, b) {
            (Sen::Pl(a), Sen::Pl(b)) => Sen::Pl(PlSentence::or(a, b)),
            (a, b) => Sen::Msa(MsaSentence::or(a.into_msa(), b.into_msa())),
        }
    }

    fn implies(a: Sen, b: Sen) -> Sen {
        match (a, b) {
            (Sen::Pl(a), Sen::Pl(b)) => Sen::Pl(PlSentence::implies(a, b)),
            (a, b) => Sen::Msa(MsaSentence::implies(a.into_msa(), b.into_msa())),
        }
    }
}
