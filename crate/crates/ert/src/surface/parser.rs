//! Recursive-descent parser for `.ert` files.
//!
//! Precedence: application > `*` > `+` > `/\` > `\/` > `->`/`=>`
//! (right-associative) > quantifiers. Equations `a = b` sit at the
//! proposition atom level with both sides parsed at application level;
//! lambdas and lets on either side need parentheses.

use super::lexer::{lex, Tok, Token};
use super::*;
use crate::diag::{Diagnostic, Span};

pub struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

type Res<T> = Result<T, Diagnostic>;

pub fn parse_file(src: &str) -> Res<Vec<SurfaceDecl>> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let mut decls = Vec::new();
    while p.peek() != &Tok::Eof {
        decls.push(p.decl()?);
    }
    Ok(decls)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Res<()> {
        if self.peek() == &t {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected {}", t.describe())))
        }
    }

    fn unexpected(&self, what: &str) -> Diagnostic {
        // Anchor end-of-input errors to the last real token.
        let span = if *self.peek() == Tok::Eof && self.pos > 0 {
            self.toks[self.pos - 1].span
        } else {
            self.span()
        };
        Diagnostic::new("Parse", format!("{what}, found {}", self.peek().describe()))
            .with_span(span)
    }

    fn ident(&mut self) -> Res<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected("expected an identifier")),
        }
    }

    fn grow<T>(f: impl FnOnce() -> T) -> T {
        stacker::maybe_grow(256 * 1024, 8 * 1024 * 1024, f)
    }

    fn save(&self) -> usize {
        self.pos
    }

    fn restore(&mut self, pos: usize) {
        self.pos = pos;
    }

    // -----------------------------------------------------------------
    // Declarations

    fn decl(&mut self) -> Res<SurfaceDecl> {
        let start = self.span();
        match self.peek() {
            Tok::Def => {
                self.bump();
                let name = self.ident()?;
                self.expect(Tok::Colon)?;
                let ty = self.ty()?;
                self.expect(Tok::ColonEq)?;
                let body = self.term()?;
                Ok(SurfaceDecl {
                    name,
                    span: start,
                    kind: SurfaceDeclKind::Def { ty, body },
                })
            }
            Tok::Thm => {
                self.bump();
                let name = self.ident()?;
                self.expect(Tok::Colon)?;
                let prop = self.prop()?;
                self.expect(Tok::ColonEq)?;
                let body = self.proof()?;
                Ok(SurfaceDecl {
                    name,
                    span: start,
                    kind: SurfaceDeclKind::Thm { prop, body },
                })
            }
            _ => Err(self.unexpected("expected `def` or `thm`")),
        }
    }

    // -----------------------------------------------------------------
    // Types

    fn ty(&mut self) -> Res<Sp<STy>> {
        Self::grow(|| self.ty_entry())
    }

    fn ty_entry(&mut self) -> Res<Sp<STy>> {
        let start = self.span();
        match self.peek() {
            Tok::Forall | Tok::Exists => {
                let ex = self.bump() == Tok::Exists;
                let x = self.ident()?;
                self.expect(Tok::Colon)?;
                let dom = self.ty()?;
                self.expect(Tok::Comma)?;
                let body = self.ty()?;
                let node = if ex {
                    STy::Exists(x, Box::new(dom), Box::new(body))
                } else {
                    STy::Forall(x, Box::new(dom), Box::new(body))
                };
                Ok(Sp::new(node, start))
            }
            _ => self.ty_arrow(),
        }
    }

    fn ty_arrow(&mut self) -> Res<Sp<STy>> {
        let start = self.span();
        if self.peek() == &Tok::LBracket {
            self.bump();
            let u = self.ident()?;
            self.expect(Tok::Colon)?;
            let hyp = self.prop()?;
            self.expect(Tok::RBracket)?;
            self.expect(Tok::FatArrow)?;
            let body = self.ty_arrow()?;
            return Ok(Sp::new(STy::Pre(u, Box::new(hyp), Box::new(body)), start));
        }
        let lhs = self.ty_sum()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.ty_arrow()?;
            Ok(Sp::new(
                STy::Fn("_".into(), Box::new(lhs), Box::new(rhs)),
                start,
            ))
        } else {
            Ok(lhs)
        }
    }

    fn ty_sum(&mut self) -> Res<Sp<STy>> {
        let start = self.span();
        let lhs = self.ty_prod()?;
        if self.eat(&Tok::PlusSym) {
            let rhs = self.ty_sum()?;
            Ok(Sp::new(STy::Sum(Box::new(lhs), Box::new(rhs)), start))
        } else {
            Ok(lhs)
        }
    }

    fn ty_prod(&mut self) -> Res<Sp<STy>> {
        let start = self.span();
        // Dependent binder `(x: A)` followed by `->` or `*`.
        if self.peek() == &Tok::LParen
            && matches!(self.peek_at(1), Tok::Ident(_))
            && self.peek_at(2) == &Tok::Colon
        {
            self.bump();
            let x = self.ident()?;
            self.expect(Tok::Colon)?;
            let dom = self.ty()?;
            self.expect(Tok::RParen)?;
            return match self.peek() {
                Tok::Arrow => {
                    self.bump();
                    let rhs = self.ty_arrow()?;
                    Ok(Sp::new(STy::Fn(x, Box::new(dom), Box::new(rhs)), start))
                }
                Tok::Star => {
                    self.bump();
                    let rhs = self.ty_prod()?;
                    Ok(Sp::new(STy::Pair(x, Box::new(dom), Box::new(rhs)), start))
                }
                _ => Err(self.unexpected("expected `->` or `*` after a dependent binder")),
            };
        }
        let lhs = self.ty_atom()?;
        if self.eat(&Tok::Star) {
            let rhs = self.ty_prod()?;
            Ok(Sp::new(
                STy::Pair("_".into(), Box::new(lhs), Box::new(rhs)),
                start,
            ))
        } else {
            Ok(lhs)
        }
    }

    fn ty_atom(&mut self) -> Res<Sp<STy>> {
        let start = self.span();
        match self.peek().clone() {
            Tok::UnitTy => {
                self.bump();
                Ok(Sp::new(STy::Unit, start))
            }
            Tok::NatTy => {
                self.bump();
                Ok(Sp::new(STy::Nat, start))
            }
            Tok::LBrace => {
                self.bump();
                let x = self.ident()?;
                self.expect(Tok::Colon)?;
                let base = self.ty()?;
                self.expect(Tok::Pipe)?;
                let pred = self.prop()?;
                self.expect(Tok::RBrace)?;
                Ok(Sp::new(
                    STy::Subset(x, Box::new(base), Box::new(pred)),
                    start,
                ))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.ty()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Forall | Tok::Exists => self.ty(),
            _ => Err(self.unexpected("expected a type")),
        }
    }

    // -----------------------------------------------------------------
    // Propositions

    fn prop(&mut self) -> Res<Sp<SProp>> {
        Self::grow(|| self.prop_entry())
    }

    fn prop_entry(&mut self) -> Res<Sp<SProp>> {
        let start = self.span();
        match self.peek() {
            Tok::Forall | Tok::Exists => {
                let ex = self.bump() == Tok::Exists;
                let x = self.ident()?;
                self.expect(Tok::Colon)?;
                let dom = self.ty()?;
                self.expect(Tok::Comma)?;
                let body = self.prop()?;
                let node = if ex {
                    SProp::Exists(x, Box::new(dom), Box::new(body))
                } else {
                    SProp::Forall(x, Box::new(dom), Box::new(body))
                };
                Ok(Sp::new(node, start))
            }
            _ => self.prop_imp(),
        }
    }

    fn prop_imp(&mut self) -> Res<Sp<SProp>> {
        let start = self.span();
        if self.peek() == &Tok::LBracket {
            self.bump();
            let u = self.ident()?;
            self.expect(Tok::Colon)?;
            let hyp = self.prop()?;
            self.expect(Tok::RBracket)?;
            self.expect(Tok::FatArrow)?;
            let body = self.prop_imp()?;
            return Ok(Sp::new(SProp::Imp(u, Box::new(hyp), Box::new(body)), start));
        }
        let lhs = self.prop_or()?;
        if self.eat(&Tok::FatArrow) {
            let rhs = self.prop_imp()?;
            Ok(Sp::new(
                SProp::Imp("_".into(), Box::new(lhs), Box::new(rhs)),
                start,
            ))
        } else {
            Ok(lhs)
        }
    }

    fn prop_or(&mut self) -> Res<Sp<SProp>> {
        let start = self.span();
        let lhs = self.prop_and()?;
        if self.eat(&Tok::OrSym) {
            let rhs = self.prop_or()?;
            Ok(Sp::new(SProp::Or(Box::new(lhs), Box::new(rhs)), start))
        } else {
            Ok(lhs)
        }
    }

    fn prop_and(&mut self) -> Res<Sp<SProp>> {
        let start = self.span();
        // Dependent conjunction binder `(u: phi) /\ psi`.
        if self.peek() == &Tok::LParen
            && matches!(self.peek_at(1), Tok::Ident(_))
            && self.peek_at(2) == &Tok::Colon
        {
            self.bump();
            let u = self.ident()?;
            self.expect(Tok::Colon)?;
            let lhs = self.prop()?;
            self.expect(Tok::RParen)?;
            self.expect(Tok::AndSym)?;
            let rhs = self.prop_and()?;
            return Ok(Sp::new(SProp::And(u, Box::new(lhs), Box::new(rhs)), start));
        }
        let lhs = self.prop_atom()?;
        if self.eat(&Tok::AndSym) {
            let rhs = self.prop_and()?;
            Ok(Sp::new(
                SProp::And("_".into(), Box::new(lhs), Box::new(rhs)),
                start,
            ))
        } else {
            Ok(lhs)
        }
    }

    fn prop_atom(&mut self) -> Res<Sp<SProp>> {
        let start = self.span();
        match self.peek() {
            Tok::Top => {
                self.bump();
                return Ok(Sp::new(SProp::Top, start));
            }
            Tok::Bot => {
                self.bump();
                return Ok(Sp::new(SProp::Bot, start));
            }
            _ => {}
        }
        // Try an equation; fall back to a parenthesized proposition.
        let mark = self.save();
        match self.try_equation(start) {
            Ok(p) => Ok(p),
            Err(eq_err) => {
                self.restore(mark);
                if self.peek() == &Tok::LParen {
                    self.bump();
                    let inner = self.prop()?;
                    self.expect(Tok::RParen)?;
                    Ok(inner)
                } else {
                    Err(eq_err)
                }
            }
        }
    }

    fn try_equation(&mut self, start: Span) -> Res<Sp<SProp>> {
        let lhs = self.term_app()?;
        self.expect(Tok::Equals)?;
        let annot = if self.eat(&Tok::LBracket) {
            let t = self.ty()?;
            self.expect(Tok::RBracket)?;
            Some(Box::new(t))
        } else {
            None
        };
        let rhs = self.term_app()?;
        Ok(Sp::new(
            SProp::Eq(annot, Box::new(lhs), Box::new(rhs)),
            start,
        ))
    }

    // -----------------------------------------------------------------
    // Terms

    fn term(&mut self) -> Res<Sp<STerm>> {
        Self::grow(|| self.term_entry())
    }

    fn term_entry(&mut self) -> Res<Sp<STerm>> {
        let start = self.span();
        match self.peek() {
            Tok::Backslash => {
                self.bump();
                if self.eat(&Tok::Pipe) {
                    // \|x: A|. e
                    let x = self.ident()?;
                    self.expect(Tok::Colon)?;
                    let dom = self.ty()?;
                    self.expect(Tok::Pipe)?;
                    self.expect(Tok::Dot)?;
                    let body = self.term()?;
                    Ok(Sp::new(
                        STerm::LamIr(x, Box::new(dom), Box::new(body)),
                        start,
                    ))
                } else {
                    let x = self.ident()?;
                    self.expect(Tok::Colon)?;
                    let dom = self.ty()?;
                    self.expect(Tok::Dot)?;
                    let body = self.term()?;
                    Ok(Sp::new(STerm::Lam(x, Box::new(dom), Box::new(body)), start))
                }
            }
            Tok::Backslash2 => {
                self.bump();
                let u = self.ident()?;
                self.expect(Tok::Colon)?;
                let hyp = self.prop()?;
                self.expect(Tok::Dot)?;
                let body = self.term()?;
                Ok(Sp::new(
                    STerm::LamPr(u, Box::new(hyp), Box::new(body)),
                    start,
                ))
            }
            Tok::Let => self.term_let(start),
            _ => self.term_app(),
        }
    }

    fn motive_ty(&mut self) -> Res<Option<(String, Box<Sp<STy>>)>> {
        if self.peek() == &Tok::LBracket {
            self.bump();
            let x = self.ident()?;
            self.expect(Tok::FatArrow)?;
            let t = self.ty()?;
            self.expect(Tok::RBracket)?;
            Ok(Some((x, Box::new(t))))
        } else {
            Ok(None)
        }
    }

    fn motive_prop(&mut self) -> Res<Option<(String, Box<Sp<SProp>>)>> {
        if self.peek() == &Tok::LBracket {
            self.bump();
            let x = self.ident()?;
            self.expect(Tok::FatArrow)?;
            let p = self.prop()?;
            self.expect(Tok::RBracket)?;
            Ok(Some((x, Box::new(p))))
        } else {
            Ok(None)
        }
    }

    /// Patterns after `let`: `(x, y)`, `(|x|, y)`, `{x, u}`.
    fn term_let(&mut self, start: Span) -> Res<Sp<STerm>> {
        self.expect(Tok::Let)?;
        let motive = self.motive_ty()?;
        let (shape, names) = self.let_pattern()?;
        self.expect(Tok::Colon)?;
        let annot = Box::new(self.ty()?);
        self.expect(Tok::Equals)?;
        let scrut = Box::new(self.term()?);
        self.expect(Tok::In)?;
        let body = Box::new(self.term()?);
        let node = match shape {
            PatShape::Pair => STerm::LetPair {
                motive,
                names,
                annot,
                scrut,
                body,
            },
            PatShape::Set => STerm::LetSet {
                motive,
                names,
                annot,
                scrut,
                body,
            },
            PatShape::Repr => STerm::LetRepr {
                motive,
                names,
                annot,
                scrut,
                body,
            },
        };
        Ok(Sp::new(node, start))
    }

    fn let_pattern(&mut self) -> Res<(PatShape, (String, String))> {
        match self.peek() {
            Tok::LParen => {
                self.bump();
                if self.eat(&Tok::Pipe) {
                    let x = self.ident()?;
                    self.expect(Tok::Pipe)?;
                    self.expect(Tok::Comma)?;
                    let y = self.ident()?;
                    self.expect(Tok::RParen)?;
                    Ok((PatShape::Repr, (x, y)))
                } else {
                    let x = self.ident()?;
                    self.expect(Tok::Comma)?;
                    let y = self.ident()?;
                    self.expect(Tok::RParen)?;
                    Ok((PatShape::Pair, (x, y)))
                }
            }
            Tok::LBrace => {
                self.bump();
                let x = self.ident()?;
                self.expect(Tok::Comma)?;
                let u = self.ident()?;
                self.expect(Tok::RBrace)?;
                Ok((PatShape::Set, (x, u)))
            }
            _ => Err(self.unexpected("expected a let pattern")),
        }
    }

    fn term_app(&mut self) -> Res<Sp<STerm>> {
        let start = self.span();
        let mut head = self.term_head()?;
        loop {
            match self.peek() {
                Tok::Pipe => {
                    // A `|` may open a ghost argument or close an
                    // enclosing pipe region; commit only if a full
                    // `|term|` parses.
                    let mark = self.save();
                    let ghost = (|| -> Res<Sp<STerm>> {
                        self.expect(Tok::Pipe)?;
                        let arg = self.term()?;
                        self.expect(Tok::Pipe)?;
                        Ok(arg)
                    })();
                    match ghost {
                        Ok(arg) => {
                            head = Sp::new(STerm::AppIr(Box::new(head), Box::new(arg)), start);
                        }
                        Err(_) => {
                            self.restore(mark);
                            return Ok(head);
                        }
                    }
                }
                Tok::LBrace => {
                    // Either a set-intro argument `{a, p}` or a proof
                    // argument `{p}`; try the former, fall back.
                    let mark = self.save();
                    let as_set = (|| -> Res<Sp<STerm>> {
                        self.expect(Tok::LBrace)?;
                        let a = self.term()?;
                        self.expect(Tok::Comma)?;
                        let p = self.proof()?;
                        self.expect(Tok::RBrace)?;
                        Ok(Sp::new(STerm::SetIntro(Box::new(a), Box::new(p)), start))
                    })();
                    match as_set {
                        Ok(arg) => {
                            head = Sp::new(STerm::App(Box::new(head), Box::new(arg)), start);
                        }
                        Err(_) => {
                            self.restore(mark);
                            self.expect(Tok::LBrace)?;
                            let p = self.proof()?;
                            self.expect(Tok::RBrace)?;
                            head = Sp::new(STerm::AppPr(Box::new(head), Box::new(p)), start);
                        }
                    }
                }
                Tok::LParen | Tok::Ident(_) | Tok::NatLit(_) | Tok::Succ => {
                    let arg = self.term_atom()?;
                    head = Sp::new(STerm::App(Box::new(head), Box::new(arg)), start);
                }
                _ => return Ok(head),
            }
        }
    }

    fn term_head(&mut self) -> Res<Sp<STerm>> {
        let start = self.span();
        match self.peek() {
            Tok::Inl => {
                self.bump();
                let e = self.term_atom()?;
                Ok(Sp::new(STerm::Inl(Box::new(e)), start))
            }
            Tok::Inr => {
                self.bump();
                let e = self.term_atom()?;
                Ok(Sp::new(STerm::Inr(Box::new(e)), start))
            }
            Tok::Absurd => {
                self.bump();
                let p = self.proof_atom()?;
                Ok(Sp::new(STerm::Absurd(Box::new(p)), start))
            }
            Tok::Cases => {
                self.bump();
                let motive = self.required_motive_ty()?;
                let scrut = Box::new(self.term_atom()?);
                let left = self.branch_term(Tok::Inl)?;
                let right = self.branch_term(Tok::Inr)?;
                Ok(Sp::new(
                    STerm::Cases {
                        motive,
                        scrut,
                        left,
                        right,
                    },
                    start,
                ))
            }
            Tok::Natrec => {
                self.bump();
                let motive = self.required_motive_ty()?;
                let scrut = Box::new(self.term_atom()?);
                let zero = Box::new(self.term_atom()?);
                let succ = self.natrec_succ_case()?;
                Ok(Sp::new(
                    STerm::Natrec {
                        motive,
                        scrut,
                        zero,
                        succ,
                    },
                    start,
                ))
            }
            _ => self.term_atom(),
        }
    }

    fn required_motive_ty(&mut self) -> Res<(String, Box<Sp<STy>>)> {
        match self.motive_ty()? {
            Some(m) => Ok(m),
            None => Err(self.unexpected("expected a motive `[x => C]`")),
        }
    }

    fn required_motive_prop(&mut self) -> Res<(String, Box<Sp<SProp>>)> {
        match self.motive_prop()? {
            Some(m) => Ok(m),
            None => Err(self.unexpected("expected a motive `[x => phi]`")),
        }
    }

    fn branch_term(&mut self, kw: Tok) -> Res<(String, Box<Sp<STerm>>)> {
        self.expect(Tok::LParen)?;
        self.expect(kw)?;
        let x = self.ident()?;
        self.expect(Tok::FatArrow)?;
        let body = self.term()?;
        self.expect(Tok::RParen)?;
        Ok((x, Box::new(body)))
    }

    /// `(|succ n|, y => s)`
    fn natrec_succ_case(&mut self) -> Res<(String, String, Box<Sp<STerm>>)> {
        self.expect(Tok::LParen)?;
        self.expect(Tok::Pipe)?;
        self.expect(Tok::Succ)?;
        let n = self.ident()?;
        self.expect(Tok::Pipe)?;
        self.expect(Tok::Comma)?;
        let y = self.ident()?;
        self.expect(Tok::FatArrow)?;
        let body = self.term()?;
        self.expect(Tok::RParen)?;
        Ok((n, y, Box::new(body)))
    }

    fn term_atom(&mut self) -> Res<Sp<STerm>> {
        let start = self.span();
        match self.peek().clone() {
            Tok::Ident(x) => {
                self.bump();
                Ok(Sp::new(STerm::Var(x), start))
            }
            Tok::NatLit(n) => {
                self.bump();
                Ok(Sp::new(STerm::NatLit(n), start))
            }
            Tok::Succ => {
                self.bump();
                Ok(Sp::new(STerm::Succ, start))
            }
            Tok::LBrace => {
                self.bump();
                let a = self.term()?;
                self.expect(Tok::Comma)?;
                let p = self.proof()?;
                self.expect(Tok::RBrace)?;
                Ok(Sp::new(STerm::SetIntro(Box::new(a), Box::new(p)), start))
            }
            Tok::LParen => {
                self.bump();
                if self.eat(&Tok::RParen) {
                    return Ok(Sp::new(STerm::Unit, start));
                }
                if self.eat(&Tok::Pipe) {
                    let a = self.term()?;
                    self.expect(Tok::Pipe)?;
                    self.expect(Tok::Comma)?;
                    let b = self.term()?;
                    self.expect(Tok::RParen)?;
                    return Ok(Sp::new(STerm::Repr(Box::new(a), Box::new(b)), start));
                }
                let first = self.term()?;
                if self.eat(&Tok::Comma) {
                    let second = self.term()?;
                    self.expect(Tok::RParen)?;
                    Ok(Sp::new(
                        STerm::Pair(Box::new(first), Box::new(second)),
                        start,
                    ))
                } else {
                    self.expect(Tok::RParen)?;
                    Ok(first)
                }
            }
            _ => Err(self.unexpected("expected a term")),
        }
    }

    // -----------------------------------------------------------------
    // Proofs

    fn proof(&mut self) -> Res<Sp<SProof>> {
        Self::grow(|| self.proof_entry())
    }

    fn proof_entry(&mut self) -> Res<Sp<SProof>> {
        let start = self.span();
        match self.peek() {
            Tok::Backslash => {
                self.bump();
                self.expect(Tok::Pipe)?;
                let x = self.ident()?;
                self.expect(Tok::Colon)?;
                let dom = self.ty()?;
                self.expect(Tok::Pipe)?;
                self.expect(Tok::Dot)?;
                let body = self.proof()?;
                Ok(Sp::new(
                    SProof::Gen(x, Box::new(dom), Box::new(body)),
                    start,
                ))
            }
            Tok::Backslash2 => {
                self.bump();
                let u = self.ident()?;
                self.expect(Tok::Colon)?;
                let hyp = self.prop()?;
                self.expect(Tok::Dot)?;
                let body = self.proof()?;
                Ok(Sp::new(
                    SProof::ImpIntro(u, Box::new(hyp), Box::new(body)),
                    start,
                ))
            }
            Tok::Let => self.proof_let(start),
            _ => self.proof_app(),
        }
    }

    fn proof_let(&mut self, start: Span) -> Res<Sp<SProof>> {
        self.expect(Tok::Let)?;
        let motive = self.motive_prop()?;
        match self.peek() {
            Tok::Lt => {
                self.bump();
                if self.eat(&Tok::Pipe) {
                    // let <|x|, u>: phi = p in q
                    let x = self.ident()?;
                    self.expect(Tok::Pipe)?;
                    self.expect(Tok::Comma)?;
                    let u = self.ident()?;
                    self.expect(Tok::Gt)?;
                    self.expect(Tok::Colon)?;
                    let annot = Box::new(self.prop()?);
                    self.expect(Tok::Equals)?;
                    let scrut = Box::new(self.proof()?);
                    self.expect(Tok::In)?;
                    let body = Box::new(self.proof()?);
                    Ok(Sp::new(
                        SProof::LetExists {
                            motive,
                            names: (x, u),
                            annot,
                            scrut,
                            body,
                        },
                        start,
                    ))
                } else {
                    let u = self.ident()?;
                    self.expect(Tok::Comma)?;
                    let v = self.ident()?;
                    self.expect(Tok::Gt)?;
                    self.expect(Tok::Colon)?;
                    let annot = Box::new(self.prop()?);
                    self.expect(Tok::Equals)?;
                    let scrut = Box::new(self.proof()?);
                    self.expect(Tok::In)?;
                    let body = Box::new(self.proof()?);
                    Ok(Sp::new(
                        SProof::LetAnd {
                            motive,
                            names: (u, v),
                            annot,
                            scrut,
                            body,
                        },
                        start,
                    ))
                }
            }
            Tok::LParen | Tok::LBrace => {
                let (shape, names) = self.let_pattern()?;
                self.expect(Tok::Colon)?;
                let annot = Box::new(self.ty()?);
                self.expect(Tok::Equals)?;
                let scrut = Box::new(self.term()?);
                self.expect(Tok::In)?;
                let body = Box::new(self.proof()?);
                let node = match shape {
                    PatShape::Pair => SProof::LetPairPr {
                        motive,
                        names,
                        annot,
                        scrut,
                        body,
                    },
                    PatShape::Set => SProof::LetSetPr {
                        motive,
                        names,
                        annot,
                        scrut,
                        body,
                    },
                    PatShape::Repr => SProof::LetReprPr {
                        motive,
                        names,
                        annot,
                        scrut,
                        body,
                    },
                };
                Ok(Sp::new(node, start))
            }
            _ => Err(self.unexpected("expected a let pattern")),
        }
    }

    fn proof_app(&mut self) -> Res<Sp<SProof>> {
        let start = self.span();
        let mut head = self.proof_head()?;
        loop {
            match self.peek() {
                Tok::Pipe => {
                    let mark = self.save();
                    let ghost = (|| -> Res<Sp<STerm>> {
                        self.expect(Tok::Pipe)?;
                        let arg = self.term()?;
                        self.expect(Tok::Pipe)?;
                        Ok(arg)
                    })();
                    match ghost {
                        Ok(arg) => {
                            head = Sp::new(SProof::Spec(Box::new(head), Box::new(arg)), start);
                        }
                        Err(_) => {
                            self.restore(mark);
                            return Ok(head);
                        }
                    }
                }
                Tok::Ident(_) | Tok::Lt | Tok::LParen => {
                    let arg = self.proof_atom()?;
                    head = Sp::new(SProof::App(Box::new(head), Box::new(arg)), start);
                }
                _ => return Ok(head),
            }
        }
    }

    fn proof_head(&mut self) -> Res<Sp<SProof>> {
        let start = self.span();
        match self.peek().clone() {
            Tok::Rfl => {
                self.bump();
                let a = self.term_atom()?;
                Ok(Sp::new(SProof::Rfl(Box::new(a)), start))
            }
            Tok::Uniq => {
                self.bump();
                let a = self.term_atom()?;
                Ok(Sp::new(SProof::Uniq(Box::new(a)), start))
            }
            Tok::Discr => {
                self.bump();
                let a = self.term_atom()?;
                let b = self.term_atom()?;
                let p = self.proof_atom()?;
                Ok(Sp::new(
                    SProof::Discr(Box::new(a), Box::new(b), Box::new(p)),
                    start,
                ))
            }
            Tok::Orl => {
                self.bump();
                let p = self.proof_atom()?;
                Ok(Sp::new(SProof::Orl(Box::new(p)), start))
            }
            Tok::Orr => {
                self.bump();
                let p = self.proof_atom()?;
                Ok(Sp::new(SProof::Orr(Box::new(p)), start))
            }
            Tok::Absurd => {
                self.bump();
                let p = self.proof_atom()?;
                Ok(Sp::new(SProof::Absurd(Box::new(p)), start))
            }
            Tok::Beta => {
                self.bump();
                Ok(Sp::new(SProof::ByBeta, start))
            }
            Tok::Trans => {
                self.bump();
                self.expect(Tok::LBracket)?;
                let first = Box::new(self.term_app()?);
                let mut links = Vec::new();
                loop {
                    self.expect(Tok::Equals)?;
                    self.expect(Tok::LBrace)?;
                    let p = self.proof()?;
                    self.expect(Tok::RBrace)?;
                    let t = self.term_app()?;
                    links.push((p, t));
                    if self.eat(&Tok::RBracket) {
                        break;
                    }
                }
                Ok(Sp::new(SProof::TransChain { first, links }, start))
            }
            Tok::Subst => {
                self.bump();
                let motive = self.required_motive_prop()?;
                self.expect(Tok::LBracket)?;
                let lhs = Box::new(self.term()?);
                self.expect(Tok::RBracket)?;
                self.expect(Tok::LBracket)?;
                let rhs = Box::new(self.term()?);
                self.expect(Tok::RBracket)?;
                let eq = Box::new(self.proof_atom()?);
                let body = Box::new(self.proof_atom()?);
                Ok(Sp::new(
                    SProof::Subst {
                        motive,
                        lhs,
                        rhs,
                        eq,
                        body,
                    },
                    start,
                ))
            }
            Tok::Cases => {
                self.bump();
                let motive = self.required_motive_prop()?;
                let scrut = Box::new(self.term_atom()?);
                let left = self.branch_proof(Tok::Inl)?;
                let right = self.branch_proof(Tok::Inr)?;
                Ok(Sp::new(
                    SProof::CasesPr {
                        motive,
                        scrut,
                        left,
                        right,
                    },
                    start,
                ))
            }
            Tok::CasesOr => {
                self.bump();
                let motive = self.required_motive_prop()?;
                let scrut = Box::new(self.proof_atom()?);
                let left = self.branch_proof(Tok::Orl)?;
                let right = self.branch_proof(Tok::Orr)?;
                Ok(Sp::new(
                    SProof::CasesOr {
                        motive,
                        scrut,
                        left,
                        right,
                    },
                    start,
                ))
            }
            Tok::Ind => {
                self.bump();
                let motive = self.required_motive_prop()?;
                let scrut = Box::new(self.term_atom()?);
                let zero = Box::new(self.proof_atom()?);
                // (succ n, u => q)
                self.expect(Tok::LParen)?;
                self.expect(Tok::Succ)?;
                let n = self.ident()?;
                self.expect(Tok::Comma)?;
                let u = self.ident()?;
                self.expect(Tok::FatArrow)?;
                let body = self.proof()?;
                self.expect(Tok::RParen)?;
                Ok(Sp::new(
                    SProof::Ind {
                        motive,
                        scrut,
                        zero,
                        succ: (n, u, Box::new(body)),
                    },
                    start,
                ))
            }
            Tok::BetaPr => {
                self.bump();
                // (u: phi => e) p; the hypothesis sits below the
                // implication level so its `=>` is the body separator.
                self.expect(Tok::LParen)?;
                let u = self.ident()?;
                self.expect(Tok::Colon)?;
                let hyp = self.prop_or()?;
                self.expect(Tok::FatArrow)?;
                let body = self.term()?;
                self.expect(Tok::RParen)?;
                let arg = self.proof_atom()?;
                Ok(Sp::new(
                    SProof::BetaPr {
                        hyp: (u, Box::new(hyp)),
                        body: Box::new(body),
                        arg: Box::new(arg),
                    },
                    start,
                ))
            }
            Tok::BetaTy | Tok::BetaIr => {
                let is_ty = self.bump() == Tok::BetaTy;
                self.expect(Tok::LParen)?;
                let x = self.ident()?;
                self.expect(Tok::Colon)?;
                let dom = self.ty()?;
                self.expect(Tok::FatArrow)?;
                let body = self.term()?;
                self.expect(Tok::RParen)?;
                let arg = self.term_atom()?;
                let node = if is_ty {
                    SProof::BetaTy {
                        dom: (x, Box::new(dom)),
                        body: Box::new(body),
                        arg: Box::new(arg),
                    }
                } else {
                    SProof::BetaIr {
                        dom: (x, Box::new(dom)),
                        body: Box::new(body),
                        arg: Box::new(arg),
                    }
                };
                Ok(Sp::new(node, start))
            }
            Tok::BetaLeft | Tok::BetaRight => {
                let is_left = self.bump() == Tok::BetaLeft;
                // [x: S => C] (inl y => l) (inr z => r) a
                self.expect(Tok::LBracket)?;
                let x = self.ident()?;
                self.expect(Tok::Colon)?;
                let sum = self.ty()?;
                self.expect(Tok::FatArrow)?;
                let mot = self.ty()?;
                self.expect(Tok::RBracket)?;
                let left = self.branch_term(Tok::Inl)?;
                let right = self.branch_term(Tok::Inr)?;
                let arg = Box::new(self.term_atom()?);
                let motive = (x, Box::new(sum), Box::new(mot));
                let node = if is_left {
                    SProof::BetaLeft {
                        motive,
                        left,
                        right,
                        arg,
                    }
                } else {
                    SProof::BetaRight {
                        motive,
                        left,
                        right,
                        arg,
                    }
                };
                Ok(Sp::new(node, start))
            }
            Tok::BetaZero => {
                self.bump();
                let motive = self.required_motive_ty()?;
                let zero = Box::new(self.term_atom()?);
                let succ = self.natrec_succ_case()?;
                Ok(Sp::new(SProof::BetaZero { motive, zero, succ }, start))
            }
            Tok::BetaSucc => {
                self.bump();
                let motive = self.required_motive_ty()?;
                let arg = Box::new(self.term_atom()?);
                let zero = Box::new(self.term_atom()?);
                let succ = self.natrec_succ_case()?;
                Ok(Sp::new(
                    SProof::BetaSucc {
                        motive,
                        arg,
                        zero,
                        succ,
                    },
                    start,
                ))
            }
            Tok::BetaPair => {
                self.bump();
                let motive = self.motive_ty()?;
                // ((y, z): T => e) (a, b)
                self.expect(Tok::LParen)?;
                self.expect(Tok::LParen)?;
                let y = self.ident()?;
                self.expect(Tok::Comma)?;
                let z = self.ident()?;
                self.expect(Tok::RParen)?;
                self.expect(Tok::Colon)?;
                let annot = Box::new(self.ty()?);
                self.expect(Tok::FatArrow)?;
                let body = Box::new(self.term()?);
                self.expect(Tok::RParen)?;
                self.expect(Tok::LParen)?;
                let fst = Box::new(self.term()?);
                self.expect(Tok::Comma)?;
                let snd = Box::new(self.term()?);
                self.expect(Tok::RParen)?;
                Ok(Sp::new(
                    SProof::BetaPair {
                        motive,
                        names: (y, z),
                        annot,
                        body,
                        fst,
                        snd,
                    },
                    start,
                ))
            }
            Tok::BetaSet => {
                self.bump();
                let motive = self.motive_ty()?;
                // ({y, u}: T => e) {a, p}
                self.expect(Tok::LParen)?;
                self.expect(Tok::LBrace)?;
                let y = self.ident()?;
                self.expect(Tok::Comma)?;
                let u = self.ident()?;
                self.expect(Tok::RBrace)?;
                self.expect(Tok::Colon)?;
                let annot = Box::new(self.ty()?);
                self.expect(Tok::FatArrow)?;
                let body = Box::new(self.term()?);
                self.expect(Tok::RParen)?;
                self.expect(Tok::LBrace)?;
                let elem = Box::new(self.term()?);
                self.expect(Tok::Comma)?;
                let pf = Box::new(self.proof()?);
                self.expect(Tok::RBrace)?;
                Ok(Sp::new(
                    SProof::BetaSet {
                        motive,
                        names: (y, u),
                        annot,
                        body,
                        elem,
                        pf,
                    },
                    start,
                ))
            }
            Tok::BetaRepr => {
                self.bump();
                let motive = self.motive_ty()?;
                // ((|y|, z): T => e) (|a|, b)
                self.expect(Tok::LParen)?;
                self.expect(Tok::LParen)?;
                self.expect(Tok::Pipe)?;
                let y = self.ident()?;
                self.expect(Tok::Pipe)?;
                self.expect(Tok::Comma)?;
                let z = self.ident()?;
                self.expect(Tok::RParen)?;
                self.expect(Tok::Colon)?;
                let annot = Box::new(self.ty()?);
                self.expect(Tok::FatArrow)?;
                let body = Box::new(self.term()?);
                self.expect(Tok::RParen)?;
                self.expect(Tok::LParen)?;
                self.expect(Tok::Pipe)?;
                let ghost = Box::new(self.term()?);
                self.expect(Tok::Pipe)?;
                self.expect(Tok::Comma)?;
                let wit = Box::new(self.term()?);
                self.expect(Tok::RParen)?;
                Ok(Sp::new(
                    SProof::BetaRepr {
                        motive,
                        names: (y, z),
                        annot,
                        body,
                        ghost,
                        wit,
                    },
                    start,
                ))
            }
            Tok::EtaTy => {
                self.bump();
                let f = self.term_atom()?;
                Ok(Sp::new(SProof::EtaTy(Box::new(f)), start))
            }
            Tok::IrPr => {
                self.bump();
                self.expect(Tok::LParen)?;
                let u = self.ident()?;
                self.expect(Tok::Colon)?;
                let hyp = self.prop_or()?;
                self.expect(Tok::FatArrow)?;
                let body = self.term()?;
                self.expect(Tok::RParen)?;
                let fst = self.proof_atom()?;
                let snd = self.proof_atom()?;
                Ok(Sp::new(
                    SProof::IrPr {
                        hyp: (u, Box::new(hyp)),
                        body: Box::new(body),
                        fst: Box::new(fst),
                        snd: Box::new(snd),
                    },
                    start,
                ))
            }
            Tok::IrTy => {
                self.bump();
                let fun = self.term_atom()?;
                let fst = self.term_atom()?;
                let snd = self.term_atom()?;
                Ok(Sp::new(
                    SProof::IrTy {
                        fun: Box::new(fun),
                        fst: Box::new(fst),
                        snd: Box::new(snd),
                    },
                    start,
                ))
            }
            Tok::EtaIr => {
                self.bump();
                let f = self.term_atom()?;
                let g = self.term_atom()?;
                self.expect(Tok::Pipe)?;
                let inhab = self.term()?;
                self.expect(Tok::Pipe)?;
                self.expect(Tok::LParen)?;
                let x = self.ident()?;
                self.expect(Tok::FatArrow)?;
                let body = self.proof()?;
                self.expect(Tok::RParen)?;
                Ok(Sp::new(
                    SProof::EtaIr {
                        fst: Box::new(f),
                        snd: Box::new(g),
                        inhab: Box::new(inhab),
                        body: (x, Box::new(body)),
                    },
                    start,
                ))
            }
            Tok::EtaPr => {
                self.bump();
                let f = self.term_atom()?;
                let g = self.term_atom()?;
                self.expect(Tok::LBrace)?;
                let inhab = self.proof()?;
                self.expect(Tok::RBrace)?;
                self.expect(Tok::LParen)?;
                let u = self.ident()?;
                self.expect(Tok::FatArrow)?;
                let body = self.proof()?;
                self.expect(Tok::RParen)?;
                Ok(Sp::new(
                    SProof::EtaPr {
                        fst: Box::new(f),
                        snd: Box::new(g),
                        inhab: Box::new(inhab),
                        body: (u, Box::new(body)),
                    },
                    start,
                ))
            }
            _ => self.proof_atom(),
        }
    }

    fn branch_proof(&mut self, kw: Tok) -> Res<(String, Box<Sp<SProof>>)> {
        self.expect(Tok::LParen)?;
        self.expect(kw)?;
        let x = self.ident()?;
        self.expect(Tok::FatArrow)?;
        let body = self.proof()?;
        self.expect(Tok::RParen)?;
        Ok((x, Box::new(body)))
    }

    fn proof_atom(&mut self) -> Res<Sp<SProof>> {
        let start = self.span();
        match self.peek().clone() {
            Tok::Beta => {
                self.bump();
                Ok(Sp::new(SProof::ByBeta, start))
            }
            Tok::Ident(u) => {
                self.bump();
                Ok(Sp::new(SProof::Var(u), start))
            }
            Tok::Lt => {
                self.bump();
                if self.eat(&Tok::Gt) {
                    return Ok(Sp::new(SProof::TrueIntro, start));
                }
                if self.eat(&Tok::Pipe) {
                    let a = self.term()?;
                    self.expect(Tok::Pipe)?;
                    self.expect(Tok::Comma)?;
                    let p = self.proof()?;
                    self.expect(Tok::Gt)?;
                    return Ok(Sp::new(SProof::Wit(Box::new(a), Box::new(p)), start));
                }
                let p = self.proof()?;
                self.expect(Tok::Comma)?;
                let q = self.proof()?;
                self.expect(Tok::Gt)?;
                Ok(Sp::new(SProof::AndIntro(Box::new(p), Box::new(q)), start))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.proof()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => Err(self.unexpected("expected a proof")),
        }
    }
}

enum PatShape {
    Pair,
    Set,
    Repr,
}
