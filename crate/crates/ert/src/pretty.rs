//! Rendering of core expressions back into concrete syntax.
//!
//! Binder names are invented (`x0`, `x1`, ... for term and ghost
//! binders, `u0`, `u1`, ... for proof binders); printing a resolved
//! program and re-resolving it yields the same de Bruijn trees.

use crate::syntax::{Proof, Prop, Term, Ty};

pub struct Printer {
    names: Vec<String>,
    next_term: usize,
    next_proof: usize,
}

const PREC_BOTTOM: u8 = 0;
const PREC_ARROW: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_SUM: u8 = 4;
const PREC_PROD: u8 = 5;
const PREC_APP: u8 = 8;
const PREC_ATOM: u8 = 10;

impl Default for Printer {
    fn default() -> Self {
        Printer::new()
    }
}

impl Printer {
    pub fn new() -> Printer {
        Printer {
            names: Vec::new(),
            next_term: 0,
            next_proof: 0,
        }
    }

    /// Printer whose free variables render as the given names
    /// (outermost first).
    pub fn with_names(names: Vec<String>) -> Printer {
        Printer {
            names,
            next_term: 0,
            next_proof: 0,
        }
    }

    fn bind_term(&mut self) -> String {
        let n = format!("x{}", self.next_term);
        self.next_term += 1;
        self.names.push(n.clone());
        n
    }

    fn bind_proof(&mut self) -> String {
        let n = format!("u{}", self.next_proof);
        self.next_proof += 1;
        self.names.push(n.clone());
        n
    }

    fn unbind(&mut self) {
        self.names.pop();
    }

    fn var(&self, i: usize) -> String {
        if i < self.names.len() {
            self.names[self.names.len() - 1 - i].clone()
        } else {
            // Out of scope; render the raw index so the output stays readable.
            format!("?{}", i - self.names.len())
        }
    }

    pub fn ty(&mut self, t: &Ty) -> String {
        self.ty_at(t, PREC_BOTTOM)
    }

    pub fn prop(&mut self, p: &Prop) -> String {
        self.prop_at(p, PREC_BOTTOM)
    }

    pub fn term(&mut self, t: &Term) -> String {
        self.term_at(t, PREC_BOTTOM)
    }

    pub fn proof(&mut self, p: &Proof) -> String {
        self.proof_at(p, PREC_BOTTOM)
    }

    fn grow<T>(f: impl FnOnce() -> T) -> T {
        stacker::maybe_grow(256 * 1024, 8 * 1024 * 1024, f)
    }

    fn paren(s: String, need: bool) -> String {
        if need {
            format!("({s})")
        } else {
            s
        }
    }

    fn ty_at(&mut self, t: &Ty, prec: u8) -> String {
        Self::grow(|| self.ty_at_inner(t, prec))
    }

    fn ty_at_inner(&mut self, t: &Ty, prec: u8) -> String {
        match t {
            Ty::Unit => "Unit".into(),
            Ty::Nat => "Nat".into(),
            Ty::Fn(a, b) => {
                let dependent = b.strengthened(0, 1).is_err();
                let s = if dependent {
                    let dom = self.ty_at(a, PREC_BOTTOM);
                    let x = self.bind_term();
                    let cod = self.ty_at(b, PREC_ARROW);
                    self.unbind();
                    format!("({x}: {dom}) -> {cod}")
                } else {
                    let dom = self.ty_at(a, PREC_SUM);
                    self.names.push("_".into());
                    let cod = self.ty_at(b, PREC_ARROW);
                    self.unbind();
                    format!("{dom} -> {cod}")
                };
                Self::paren(s, prec > PREC_ARROW)
            }
            Ty::Pair(a, b) => {
                let dependent = b.strengthened(0, 1).is_err();
                let s = if dependent {
                    let fst = self.ty_at(a, PREC_BOTTOM);
                    let x = self.bind_term();
                    let snd = self.ty_at(b, PREC_PROD);
                    self.unbind();
                    format!("({x}: {fst}) * {snd}")
                } else {
                    let fst = self.ty_at(a, PREC_PROD + 1);
                    self.names.push("_".into());
                    let snd = self.ty_at(b, PREC_PROD);
                    self.unbind();
                    format!("{fst} * {snd}")
                };
                Self::paren(s, prec > PREC_PROD)
            }
            Ty::Sum(a, b) => {
                let l = self.ty_at(a, PREC_SUM + 1);
                let r = self.ty_at(b, PREC_SUM);
                Self::paren(format!("{l} + {r}"), prec > PREC_SUM)
            }
            Ty::Pre(p, a) => {
                let hyp = self.prop_at(p, PREC_BOTTOM);
                let u = self.bind_proof();
                let body = self.ty_at(a, PREC_ARROW);
                self.unbind();
                Self::paren(format!("[{u}: {hyp}] => {body}"), prec > PREC_ARROW)
            }
            Ty::Subset(a, p) => {
                let base = self.ty_at(a, PREC_BOTTOM);
                let x = self.bind_term();
                let pred = self.prop_at(p, PREC_BOTTOM);
                self.unbind();
                format!("{{{x}: {base} | {pred}}}")
            }
            Ty::All(a, b) => {
                let dom = self.ty_at(a, PREC_BOTTOM);
                let x = self.bind_term();
                let body = self.ty_at(b, PREC_BOTTOM);
                self.unbind();
                Self::paren(format!("forall {x}: {dom}, {body}"), prec > PREC_BOTTOM)
            }
            Ty::Ex(a, b) => {
                let dom = self.ty_at(a, PREC_BOTTOM);
                let x = self.bind_term();
                let body = self.ty_at(b, PREC_BOTTOM);
                self.unbind();
                Self::paren(format!("exists {x}: {dom}, {body}"), prec > PREC_BOTTOM)
            }
        }
    }

    fn prop_at(&mut self, p: &Prop, prec: u8) -> String {
        Self::grow(|| self.prop_at_inner(p, prec))
    }

    fn prop_at_inner(&mut self, p: &Prop, prec: u8) -> String {
        match p {
            Prop::Top => "top".into(),
            Prop::Bot => "bot".into(),
            Prop::Imp(a, b) => {
                let hyp = self.prop_at(a, PREC_BOTTOM);
                let u = self.bind_proof();
                let body = self.prop_at(b, PREC_ARROW);
                self.unbind();
                Self::paren(format!("[{u}: {hyp}] => {body}"), prec > PREC_ARROW)
            }
            Prop::And(a, b) => {
                let dependent = b.strengthened(0, 1).is_err();
                let s = if dependent {
                    let lhs = self.prop_at(a, PREC_BOTTOM);
                    let u = self.bind_proof();
                    let rhs = self.prop_at(b, PREC_AND);
                    self.unbind();
                    format!("({u}: {lhs}) /\\ {rhs}")
                } else {
                    let lhs = self.prop_at(a, PREC_AND + 1);
                    self.names.push("_".into());
                    let rhs = self.prop_at(b, PREC_AND);
                    self.unbind();
                    format!("{lhs} /\\ {rhs}")
                };
                Self::paren(s, prec > PREC_AND)
            }
            Prop::Or(a, b) => {
                let l = self.prop_at(a, PREC_OR + 1);
                let r = self.prop_at(b, PREC_OR);
                Self::paren(format!("{l} \\/ {r}"), prec > PREC_OR)
            }
            Prop::All(t, q) => {
                let dom = self.ty_at(t, PREC_BOTTOM);
                let x = self.bind_term();
                let body = self.prop_at(q, PREC_BOTTOM);
                self.unbind();
                Self::paren(format!("forall {x}: {dom}, {body}"), prec > PREC_BOTTOM)
            }
            Prop::Ex(t, q) => {
                let dom = self.ty_at(t, PREC_BOTTOM);
                let x = self.bind_term();
                let body = self.prop_at(q, PREC_BOTTOM);
                self.unbind();
                Self::paren(format!("exists {x}: {dom}, {body}"), prec > PREC_BOTTOM)
            }
            Prop::Eq(t, a, b) => {
                let ty = self.ty_at(t, PREC_BOTTOM);
                let lhs = self.term_at(a, PREC_APP);
                let rhs = self.term_at(b, PREC_APP);
                Self::paren(format!("{lhs} =[{ty}] {rhs}"), prec > PREC_SUM)
            }
        }
    }

    fn motive_ty(&mut self, m: &Option<Box<Ty>>) -> String {
        match m {
            None => String::new(),
            Some(c) => {
                let x = self.bind_term();
                let s = self.ty_at(c, PREC_BOTTOM);
                self.unbind();
                format!("[{x} => {s}] ")
            }
        }
    }

    fn motive_prop(&mut self, m: &Option<Box<Prop>>) -> String {
        match m {
            None => String::new(),
            Some(c) => {
                let x = self.bind_term();
                let s = self.prop_at(c, PREC_BOTTOM);
                self.unbind();
                format!("[{x} => {s}] ")
            }
        }
    }

    fn term_at(&mut self, t: &Term, prec: u8) -> String {
        Self::grow(|| self.term_at_inner(t, prec))
    }

    fn term_at_inner(&mut self, t: &Term, prec: u8) -> String {
        if let Some(n) = t.as_numeral() {
            return n.to_string();
        }
        match t {
            Term::Var(i) => self.var(*i),
            Term::Unit => "()".into(),
            Term::Zero => "0".into(),
            Term::Succ => "succ".into(),
            Term::Lam(a, e) => {
                let dom = self.ty_at(a, PREC_BOTTOM);
                let x = self.bind_term();
                let body = self.term_at(e, PREC_BOTTOM);
                self.unbind();
                Self::paren(format!("\\{x}: {dom}. {body}"), prec > PREC_BOTTOM)
            }
            Term::LamPr(p, e) => {
                let hyp = self.prop_at(p, PREC_BOTTOM);
                let u = self.bind_proof();
                let body = self.term_at(e, PREC_BOTTOM);
                self.unbind();
                Self::paren(format!("\\\\{u}: {hyp}. {body}"), prec > PREC_BOTTOM)
            }
            Term::LamIr(a, e) => {
                let dom = self.ty_at(a, PREC_BOTTOM);
                let x = self.bind_term();
                let body = self.term_at(e, PREC_BOTTOM);
                self.unbind();
                Self::paren(format!("\\|{x}: {dom}|. {body}"), prec > PREC_BOTTOM)
            }
            Term::App(f, a) => {
                let fun = self.term_at(f, PREC_APP);
                let arg = self.term_at(a, PREC_ATOM);
                Self::paren(format!("{fun} {arg}"), prec > PREC_APP)
            }
            Term::AppIr(f, a) => {
                let fun = self.term_at(f, PREC_APP);
                let arg = self.term_at(a, PREC_BOTTOM);
                Self::paren(format!("{fun} |{arg}|"), prec > PREC_APP)
            }
            Term::AppPr(f, p) => {
                let fun = self.term_at(f, PREC_APP);
                let arg = self.proof_at(p, PREC_BOTTOM);
                Self::paren(format!("{fun} {{{arg}}}"), prec > PREC_APP)
            }
            Term::Pair(a, b) => {
                let l = self.term_at(a, PREC_BOTTOM);
                let r = self.term_at(b, PREC_BOTTOM);
                format!("({l}, {r})")
            }
            Term::Repr(a, b) => {
                let l = self.term_at(a, PREC_BOTTOM);
                let r = self.term_at(b, PREC_BOTTOM);
                format!("(|{l}|, {r})")
            }
            Term::SetIntro(a, p) => {
                let l = self.term_at(a, PREC_BOTTOM);
                let r = self.proof_at(p, PREC_BOTTOM);
                format!("{{{l}, {r}}}")
            }
            Term::Inl(e) => {
                let s = self.term_at(e, PREC_ATOM);
                Self::paren(format!("inl {s}"), prec > PREC_APP)
            }
            Term::Inr(e) => {
                let s = self.term_at(e, PREC_ATOM);
                Self::paren(format!("inr {s}"), prec > PREC_APP)
            }
            Term::LetPair {
                annot,
                motive,
                scrut,
                body,
            } => {
                let m = self.motive_ty(motive);
                let t = self.ty_at(annot, PREC_BOTTOM);
                let e = self.term_at(scrut, PREC_BOTTOM);
                let x = self.bind_term();
                let y = self.bind_term();
                let b = self.term_at(body, PREC_BOTTOM);
                self.unbind();
                self.unbind();
                Self::paren(
                    format!("let {m}({x}, {y}): {t} = {e} in {b}"),
                    prec > PREC_BOTTOM,
                )
            }
            Term::LetSet {
                annot,
                motive,
                scrut,
                body,
            } => {
                let m = self.motive_ty(motive);
                let t = self.ty_at(annot, PREC_BOTTOM);
                let e = self.term_at(scrut, PREC_BOTTOM);
                let x = self.bind_term();
                let u = self.bind_proof();
                let b = self.term_at(body, PREC_BOTTOM);
                self.unbind();
                self.unbind();
                Self::paren(
                    format!("let {m}{{{x}, {u}}}: {t} = {e} in {b}"),
                    prec > PREC_BOTTOM,
                )
            }
            Term::LetRepr {
                annot,
                motive,
                scrut,
                body,
            } => {
                let m = self.motive_ty(motive);
                let t = self.ty_at(annot, PREC_BOTTOM);
                let e = self.term_at(scrut, PREC_BOTTOM);
                let x = self.bind_term();
                let y = self.bind_term();
                let b = self.term_at(body, PREC_BOTTOM);
                self.unbind();
                self.unbind();
                Self::paren(
                    format!("let {m}(|{x}|, {y}): {t} = {e} in {b}"),
                    prec > PREC_BOTTOM,
                )
            }
            Term::Cases {
                motive,
                scrut,
                left,
                right,
            } => {
                let x = self.bind_term();
                let c = self.ty_at(motive, PREC_BOTTOM);
                self.unbind();
                let e = self.term_at(scrut, PREC_ATOM);
                let y = self.bind_term();
                let l = self.term_at(left, PREC_BOTTOM);
                self.unbind();
                let z = self.bind_term();
                let r = self.term_at(right, PREC_BOTTOM);
                self.unbind();
                Self::paren(
                    format!("cases [{x} => {c}] {e} (inl {y} => {l}) (inr {z} => {r})"),
                    prec > PREC_APP,
                )
            }
            Term::Natrec {
                motive,
                scrut,
                zero,
                succ,
            } => {
                let x = self.bind_term();
                let c = self.ty_at(motive, PREC_BOTTOM);
                self.unbind();
                let e = self.term_at(scrut, PREC_ATOM);
                let z = self.term_at(zero, PREC_ATOM);
                let n = self.bind_term();
                let y = self.bind_term();
                let s = self.term_at(succ, PREC_BOTTOM);
                self.unbind();
                self.unbind();
                Self::paren(
                    format!("natrec [{x} => {c}] {e} {z} (|succ {n}|, {y} => {s})"),
                    prec > PREC_APP,
                )
            }
            Term::Absurd(p) => {
                let s = self.proof_at(p, PREC_ATOM);
                Self::paren(format!("absurd {s}"), prec > PREC_APP)
            }
        }
    }

    fn proof_at(&mut self, p: &Proof, prec: u8) -> String {
        Self::grow(|| self.proof_at_inner(p, prec))
    }

    fn proof_at_inner(&mut self, p: &Proof, prec: u8) -> String {
        match p {
            Proof::Var(i) => self.var(*i),
            Proof::TrueIntro => "<>".into(),
            Proof::Absurd(q) => {
                let s = self.proof_at(q, PREC_ATOM);
                Self::paren(format!("absurd {s}"), prec > PREC_APP)
            }
            Proof::ImpIntro(h, q) => {
                let hyp = self.prop_at(h, PREC_BOTTOM);
                let u = self.bind_proof();
                let body = self.proof_at(q, PREC_BOTTOM);
                self.unbind();
                Self::paren(format!("\\\\{u}: {hyp}. {body}"), prec > PREC_BOTTOM)
            }
            Proof::Gen(t, q) => {
                let dom = self.ty_at(t, PREC_BOTTOM);
                let x = self.bind_term();
                let body = self.proof_at(q, PREC_BOTTOM);
                self.unbind();
                Self::paren(format!("\\|{x}: {dom}|. {body}"), prec > PREC_BOTTOM)
            }
            Proof::App(f, a) => {
                let fun = self.proof_at(f, PREC_APP);
                let arg = self.proof_at(a, PREC_ATOM);
                Self::paren(format!("{fun} {arg}"), prec > PREC_APP)
            }
            Proof::Spec(f, a) => {
                let fun = self.proof_at(f, PREC_APP);
                let arg = self.term_at(a, PREC_BOTTOM);
                Self::paren(format!("{fun} |{arg}|"), prec > PREC_APP)
            }
            Proof::AndIntro(a, b) => {
                let l = self.proof_at(a, PREC_BOTTOM);
                let r = self.proof_at(b, PREC_BOTTOM);
                format!("<{l}, {r}>")
            }
            Proof::Wit(a, q) => {
                let l = self.term_at(a, PREC_BOTTOM);
                let r = self.proof_at(q, PREC_BOTTOM);
                format!("<|{l}|, {r}>")
            }
            Proof::Orl(q) => {
                let s = self.proof_at(q, PREC_ATOM);
                Self::paren(format!("orl {s}"), prec > PREC_APP)
            }
            Proof::Orr(q) => {
                let s = self.proof_at(q, PREC_ATOM);
                Self::paren(format!("orr {s}"), prec > PREC_APP)
            }
            Proof::LetAnd {
                annot,
                motive,
                scrut,
                body,
            } => {
                let m = self.motive_prop(motive);
                let t = self.prop_at(annot, PREC_BOTTOM);
                let e = self.proof_at(scrut, PREC_BOTTOM);
                let u = self.bind_proof();
                let v = self.bind_proof();
                let b = self.proof_at(body, PREC_BOTTOM);
                self.unbind();
                self.unbind();
                Self::paren(
                    format!("let {m}<{u}, {v}>: {t} = {e} in {b}"),
                    prec > PREC_BOTTOM,
                )
            }
            Proof::LetExists {
                annot,
                motive,
                scrut,
                body,
            } => {
                let m = self.motive_prop(motive);
                let t = self.prop_at(annot, PREC_BOTTOM);
                let e = self.proof_at(scrut, PREC_BOTTOM);
                let x = self.bind_term();
                let u = self.bind_proof();
                let b = self.proof_at(body, PREC_BOTTOM);
                self.unbind();
                self.unbind();
                Self::paren(
                    format!("let {m}<|{x}|, {u}>: {t} = {e} in {b}"),
                    prec > PREC_BOTTOM,
                )
            }
            Proof::LetPairPr {
                annot,
                motive,
                scrut,
                body,
            } => {
                let m = self.motive_prop(motive);
                let t = self.ty_at(annot, PREC_BOTTOM);
                let e = self.term_at(scrut, PREC_BOTTOM);
                let x = self.bind_term();
                let y = self.bind_term();
                let b = self.proof_at(body, PREC_BOTTOM);
                self.unbind();
                self.unbind();
                Self::paren(
                    format!("let {m}({x}, {y}): {t} = {e} in {b}"),
                    prec > PREC_BOTTOM,
                )
            }
            Proof::LetSetPr {
                annot,
                motive,
                scrut,
                body,
            } => {
                let m = self.motive_prop(motive);
                let t = self.ty_at(annot, PREC_BOTTOM);
                let e = self.term_at(scrut, PREC_BOTTOM);
                let x = self.bind_term();
                let u = self.bind_proof();
                let b = self.proof_at(body, PREC_BOTTOM);
                self.unbind();
                self.unbind();
                Self::paren(
                    format!("let {m}{{{x}, {u}}}: {t} = {e} in {b}"),
                    prec > PREC_BOTTOM,
                )
            }
            Proof::LetReprPr {
                annot,
                motive,
                scrut,
                body,
            } => {
                let m = self.motive_prop(motive);
                let t = self.ty_at(annot, PREC_BOTTOM);
                let e = self.term_at(scrut, PREC_BOTTOM);
                let x = self.bind_term();
                let y = self.bind_term();
                let b = self.proof_at(body, PREC_BOTTOM);
                self.unbind();
                self.unbind();
                Self::paren(
                    format!("let {m}(|{x}|, {y}): {t} = {e} in {b}"),
                    prec > PREC_BOTTOM,
                )
            }
            Proof::Subst {
                motive,
                lhs,
                rhs,
                eq,
                body,
            } => {
                let x = self.bind_term();
                let phi = self.prop_at(motive, PREC_BOTTOM);
                self.unbind();
                let a = self.term_at(lhs, PREC_BOTTOM);
                let b = self.term_at(rhs, PREC_BOTTOM);
                let e = self.proof_at(eq, PREC_ATOM);
                let q = self.proof_at(body, PREC_ATOM);
                Self::paren(
                    format!("subst [{x} => {phi}] [{a}] [{b}] {e} {q}"),
                    prec > PREC_APP,
                )
            }
            Proof::CasesOr {
                motive,
                scrut,
                left,
                right,
            } => {
                let u = self.bind_proof();
                let th = self.prop_at(motive, PREC_BOTTOM);
                self.unbind();
                let e = self.proof_at(scrut, PREC_ATOM);
                let v = self.bind_proof();
                let l = self.proof_at(left, PREC_BOTTOM);
                self.unbind();
                let w = self.bind_proof();
                let r = self.proof_at(right, PREC_BOTTOM);
                self.unbind();
                Self::paren(
                    format!("cases_or [{u} => {th}] {e} (orl {v} => {l}) (orr {w} => {r})"),
                    prec > PREC_APP,
                )
            }
            Proof::CasesPr {
                motive,
                scrut,
                left,
                right,
            } => {
                let x = self.bind_term();
                let phi = self.prop_at(motive, PREC_BOTTOM);
                self.unbind();
                let e = self.term_at(scrut, PREC_ATOM);
                let y = self.bind_term();
                let l = self.proof_at(left, PREC_BOTTOM);
                self.unbind();
                let z = self.bind_term();
                let r = self.proof_at(right, PREC_BOTTOM);
                self.unbind();
                Self::paren(
                    format!("cases [{x} => {phi}] {e} (inl {y} => {l}) (inr {z} => {r})"),
                    prec > PREC_APP,
                )
            }
            Proof::Ind {
                motive,
                scrut,
                zero,
                succ,
            } => {
                let x = self.bind_term();
                let phi = self.prop_at(motive, PREC_BOTTOM);
                self.unbind();
                let e = self.term_at(scrut, PREC_ATOM);
                let z = self.proof_at(zero, PREC_ATOM);
                let n = self.bind_term();
                let u = self.bind_proof();
                let s = self.proof_at(succ, PREC_BOTTOM);
                self.unbind();
                self.unbind();
                Self::paren(
                    format!("ind [{x} => {phi}] {e} {z} (succ {n}, {u} => {s})"),
                    prec > PREC_APP,
                )
            }
            Proof::Rfl(a) => {
                let s = self.term_at(a, PREC_ATOM);
                Self::paren(format!("rfl {s}"), prec > PREC_APP)
            }
            Proof::Uniq(a) => {
                let s = self.term_at(a, PREC_ATOM);
                Self::paren(format!("uniq {s}"), prec > PREC_APP)
            }
            Proof::Discr(a, b, q) => {
                let l = self.term_at(a, PREC_ATOM);
                let r = self.term_at(b, PREC_ATOM);
                let pf = self.proof_at(q, PREC_ATOM);
                Self::paren(format!("discr {l} {r} {pf}"), prec > PREC_APP)
            }
            Proof::BetaPr { hyp, body, arg } => {
                // The parser reads this hypothesis below the implication
                // level, so anything weaker needs parentheses.
                let h = self.prop_at(hyp, PREC_OR);
                let u = self.bind_proof();
                let e = self.term_at(body, PREC_BOTTOM);
                self.unbind();
                let a = self.proof_at(arg, PREC_ATOM);
                Self::paren(format!("beta_pr ({u}: {h} => {e}) {a}"), prec > PREC_APP)
            }
            Proof::BetaTy { dom, body, arg } => {
                let d = self.ty_at(dom, PREC_BOTTOM);
                let x = self.bind_term();
                let e = self.term_at(body, PREC_BOTTOM);
                self.unbind();
                let a = self.term_at(arg, PREC_ATOM);
                Self::paren(format!("beta_ty ({x}: {d} => {e}) {a}"), prec > PREC_APP)
            }
            Proof::BetaIr { dom, body, arg } => {
                let d = self.ty_at(dom, PREC_BOTTOM);
                let x = self.bind_term();
                let e = self.term_at(body, PREC_BOTTOM);
                self.unbind();
                let a = self.term_at(arg, PREC_ATOM);
                Self::paren(format!("beta_ir ({x}: {d} => {e}) {a}"), prec > PREC_APP)
            }
            Proof::BetaLeft {
                sum,
                motive,
                left,
                right,
                arg,
            }
            | Proof::BetaRight {
                sum,
                motive,
                left,
                right,
                arg,
            } => {
                let kw = if matches!(p, Proof::BetaLeft { .. }) {
                    "beta_left"
                } else {
                    "beta_right"
                };
                let st = self.ty_at(sum, PREC_BOTTOM);
                let x = self.bind_term();
                let c = self.ty_at(motive, PREC_BOTTOM);
                self.unbind();
                let y = self.bind_term();
                let l = self.term_at(left, PREC_BOTTOM);
                self.unbind();
                let z = self.bind_term();
                let r = self.term_at(right, PREC_BOTTOM);
                self.unbind();
                let a = self.term_at(arg, PREC_ATOM);
                Self::paren(
                    format!("{kw} [{x}: {st} => {c}] (inl {y} => {l}) (inr {z} => {r}) {a}"),
                    prec > PREC_APP,
                )
            }
            Proof::BetaZero { motive, zero, succ } => {
                let x = self.bind_term();
                let c = self.ty_at(motive, PREC_BOTTOM);
                self.unbind();
                let z = self.term_at(zero, PREC_ATOM);
                let n = self.bind_term();
                let y = self.bind_term();
                let s = self.term_at(succ, PREC_BOTTOM);
                self.unbind();
                self.unbind();
                Self::paren(
                    format!("beta_zero [{x} => {c}] {z} (|succ {n}|, {y} => {s})"),
                    prec > PREC_APP,
                )
            }
            Proof::BetaSucc {
                motive,
                arg,
                zero,
                succ,
            } => {
                let x = self.bind_term();
                let c = self.ty_at(motive, PREC_BOTTOM);
                self.unbind();
                let e = self.term_at(arg, PREC_ATOM);
                let z = self.term_at(zero, PREC_ATOM);
                let n = self.bind_term();
                let y = self.bind_term();
                let s = self.term_at(succ, PREC_BOTTOM);
                self.unbind();
                self.unbind();
                Self::paren(
                    format!("beta_succ [{x} => {c}] {e} {z} (|succ {n}|, {y} => {s})"),
                    prec > PREC_APP,
                )
            }
            Proof::BetaPair {
                annot,
                motive,
                fst,
                snd,
                body,
            } => {
                let m = self.motive_ty(motive);
                let t = self.ty_at(annot, PREC_BOTTOM);
                let y = self.bind_term();
                let z = self.bind_term();
                let e = self.term_at(body, PREC_BOTTOM);
                self.unbind();
                self.unbind();
                let a = self.term_at(fst, PREC_BOTTOM);
                let b = self.term_at(snd, PREC_BOTTOM);
                Self::paren(
                    format!("beta_pair {m}(({y}, {z}): {t} => {e}) ({a}, {b})"),
                    prec > PREC_APP,
                )
            }
            Proof::BetaSet {
                annot,
                motive,
                elem,
                pf,
                body,
            } => {
                let m = self.motive_ty(motive);
                let t = self.ty_at(annot, PREC_BOTTOM);
                let y = self.bind_term();
                let u = self.bind_proof();
                let e = self.term_at(body, PREC_BOTTOM);
                self.unbind();
                self.unbind();
                let a = self.term_at(elem, PREC_BOTTOM);
                let q = self.proof_at(pf, PREC_BOTTOM);
                Self::paren(
                    format!("beta_set {m}({{{y}, {u}}}: {t} => {e}) {{{a}, {q}}}"),
                    prec > PREC_APP,
                )
            }
            Proof::BetaRepr {
                annot,
                motive,
                ghost,
                wit,
                body,
            } => {
                let m = self.motive_ty(motive);
                let t = self.ty_at(annot, PREC_BOTTOM);
                let y = self.bind_term();
                let z = self.bind_term();
                let e = self.term_at(body, PREC_BOTTOM);
                self.unbind();
                self.unbind();
                let a = self.term_at(ghost, PREC_BOTTOM);
                let b = self.term_at(wit, PREC_BOTTOM);
                Self::paren(
                    format!("beta_repr {m}((|{y}|, {z}): {t} => {e}) (|{a}|, {b})"),
                    prec > PREC_APP,
                )
            }
            Proof::EtaTy(f) => {
                let s = self.term_at(f, PREC_ATOM);
                Self::paren(format!("eta_ty {s}"), prec > PREC_APP)
            }
            Proof::IrPr {
                hyp,
                body,
                fst,
                snd,
            } => {
                let h = self.prop_at(hyp, PREC_OR);
                let u = self.bind_proof();
                let e = self.term_at(body, PREC_BOTTOM);
                self.unbind();
                let a = self.proof_at(fst, PREC_ATOM);
                let b = self.proof_at(snd, PREC_ATOM);
                Self::paren(format!("ir_pr ({u}: {h} => {e}) {a} {b}"), prec > PREC_APP)
            }
            Proof::IrTy { fun, fst, snd } => {
                let f = self.term_at(fun, PREC_ATOM);
                let a = self.term_at(fst, PREC_ATOM);
                let b = self.term_at(snd, PREC_ATOM);
                Self::paren(format!("ir_ty {f} {a} {b}"), prec > PREC_APP)
            }
            Proof::EtaIr {
                fst,
                snd,
                inhab,
                body,
            } => {
                let f = self.term_at(fst, PREC_ATOM);
                let g = self.term_at(snd, PREC_ATOM);
                let i = self.term_at(inhab, PREC_BOTTOM);
                let x = self.bind_term();
                let q = self.proof_at(body, PREC_BOTTOM);
                self.unbind();
                Self::paren(
                    format!("eta_ir {f} {g} |{i}| ({x} => {q})"),
                    prec > PREC_APP,
                )
            }
            Proof::EtaPr {
                fst,
                snd,
                inhab,
                body,
            } => {
                let f = self.term_at(fst, PREC_ATOM);
                let g = self.term_at(snd, PREC_ATOM);
                let i = self.proof_at(inhab, PREC_BOTTOM);
                let u = self.bind_proof();
                let q = self.proof_at(body, PREC_BOTTOM);
                self.unbind();
                Self::paren(
                    format!("eta_pr {f} {g} {{{i}}} ({u} => {q})"),
                    prec > PREC_APP,
                )
            }
        }
    }
}

/// One-shot helpers for closed expressions.
pub fn ty(t: &Ty) -> String {
    Printer::new().ty(t)
}

pub fn prop(p: &Prop) -> String {
    Printer::new().prop(p)
}

pub fn term(t: &Term) -> String {
    Printer::new().term(t)
}

pub fn proof(p: &Proof) -> String {
    Printer::new().proof(p)
}

/// Renders a context as `x0: A, |x1: B|, u0: phi`.
pub fn context(ctx: &crate::ctx::Context) -> String {
    let mut pr = Printer::new();
    let mut parts = Vec::new();
    for h in ctx.iter() {
        match h {
            crate::ctx::Hyp::Computational(t) => {
                let s = pr.ty(t);
                let x = pr.bind_term();
                parts.push(format!("{x}: {s}"));
            }
            crate::ctx::Hyp::Ghost(t) => {
                let s = pr.ty(t);
                let x = pr.bind_term();
                parts.push(format!("|{x}: {s}|"));
            }
            crate::ctx::Hyp::Propositional(p) => {
                let s = pr.prop(p);
                let u = pr.bind_proof();
                parts.push(format!("{u}: {s}"));
            }
        }
    }
    parts.join(", ")
}
