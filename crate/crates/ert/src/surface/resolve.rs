//! Name resolution: surface syntax to de Bruijn core.
//!
//! Earlier top-level definitions are inlined at use sites (the calculus
//! has no definition judgment), and applications of inlined definitions
//! are contracted on the spot so that `add x y` resolves to the
//! definition's body applied notationally, not to a stack of wrapper
//! redexes.
//!
//! Resolution threads expected types and propositions structurally
//! where they are evident; that is what gives `beta` and unannotated
//! equalities their goals. An unannotated equality whose left side does
//! not synthesize needs the `a =[A] b` form.

use super::beta;
use super::{SProof, SProp, STerm, STy, Sp, SurfaceDecl, SurfaceDeclKind};
use crate::check;
use crate::ctx::{Context, Hyp, Mode};
use crate::diag::{Diagnostic, Span};
use crate::syntax::{Proof, Prop, Term, Ty};

const BETA_FUEL: u32 = 64;

type Res<T> = Result<T, Diagnostic>;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    TermLike,
    ProofLike,
}

/// A resolved, not-yet-checked declaration.
#[derive(Clone, Debug)]
pub struct ResolvedDecl {
    pub name: String,
    pub span: Span,
    pub kind: ResolvedKind,
}

#[derive(Clone, Debug)]
pub enum ResolvedKind {
    Def { ty: Ty, body: Term },
    Thm { prop: Prop, body: Proof },
}

struct Resolver<'d> {
    globals: &'d [ResolvedDecl],
    names: Vec<(String, Kind)>,
    ctx: Context,
}

/// Resolves a parsed file. Declarations resolve independently; a failed
/// declaration yields its diagnostic and is not available for inlining.
pub fn resolve_file(
    decls: &[SurfaceDecl],
) -> Vec<(String, Span, Result<ResolvedKind, Diagnostic>)> {
    let mut resolved: Vec<ResolvedDecl> = Vec::new();
    let mut out = Vec::new();
    for decl in decls {
        if resolved.iter().any(|d| d.name == decl.name) {
            out.push((
                decl.name.clone(),
                decl.span,
                Err(
                    Diagnostic::new("Resolve", format!("duplicate declaration `{}`", decl.name))
                        .with_span(decl.span),
                ),
            ));
            continue;
        }
        let mut r = Resolver {
            globals: &resolved,
            names: Vec::new(),
            ctx: Context::empty(),
        };
        let result = r.decl(decl);
        if let Ok(kind) = &result {
            resolved.push(ResolvedDecl {
                name: decl.name.clone(),
                span: decl.span,
                kind: kind.clone(),
            });
        }
        out.push((decl.name.clone(), decl.span, result));
    }
    out
}

impl<'d> Resolver<'d> {
    fn decl(&mut self, decl: &SurfaceDecl) -> Res<ResolvedKind> {
        match &decl.kind {
            SurfaceDeclKind::Def { ty, body } => {
                let rty = self.ty(ty)?;
                let (rbody, _) = self.term(body, Some(&rty))?;
                Ok(ResolvedKind::Def {
                    ty: rty,
                    body: rbody,
                })
            }
            SurfaceDeclKind::Thm { prop, body } => {
                let rprop = self.prop(prop)?;
                let rbody = self.proof(body, Some(&rprop))?;
                Ok(ResolvedKind::Thm {
                    prop: rprop,
                    body: rbody,
                })
            }
        }
    }

    fn grow<T>(f: impl FnOnce() -> T) -> T {
        stacker::maybe_grow(256 * 1024, 8 * 1024 * 1024, f)
    }

    fn err(&self, span: Span, msg: impl Into<String>) -> Diagnostic {
        Diagnostic::new("Resolve", msg).with_span(span)
    }

    fn bind(&mut self, name: &str, kind: Kind, hyp: Hyp) {
        self.names.push((name.to_string(), kind));
        self.ctx.push(hyp);
    }

    fn unbind(&mut self, n: usize) {
        for _ in 0..n {
            self.names.pop();
            self.ctx.pop();
        }
    }

    fn local(&self, name: &str) -> Option<(usize, Kind)> {
        self.names
            .iter()
            .rev()
            .position(|(n, _)| n == name)
            .map(|i| (i, self.names[self.names.len() - 1 - i].1))
    }

    fn global(&self, name: &str) -> Option<&ResolvedDecl> {
        self.globals.iter().find(|d| d.name == name)
    }

    /// Best-effort type synthesis during resolution, used to fill
    /// equality annotations and motive binder types.
    fn infer(&self, t: &Term) -> Option<Ty> {
        check::infer_term(&self.ctx, Mode::Logical, t).ok()
    }

    fn infer_proof(&self, p: &Proof) -> Option<Prop> {
        check::infer_proof(&self.ctx, Mode::Logical, p).ok()
    }

    // -----------------------------------------------------------------
    // Types

    fn ty(&mut self, t: &Sp<STy>) -> Res<Ty> {
        Self::grow(|| self.ty_inner(t))
    }

    fn ty_inner(&mut self, t: &Sp<STy>) -> Res<Ty> {
        Ok(match &t.node {
            STy::Unit => Ty::Unit,
            STy::Nat => Ty::Nat,
            STy::Fn(x, a, b) => {
                let ra = self.ty(a)?;
                self.bind(x, Kind::TermLike, Hyp::Computational(ra.clone()));
                let rb = self.ty(b);
                self.unbind(1);
                Ty::Fn(Box::new(ra), Box::new(rb?))
            }
            STy::Pair(x, a, b) => {
                let ra = self.ty(a)?;
                self.bind(x, Kind::TermLike, Hyp::Computational(ra.clone()));
                let rb = self.ty(b);
                self.unbind(1);
                Ty::Pair(Box::new(ra), Box::new(rb?))
            }
            STy::Sum(a, b) => Ty::Sum(Box::new(self.ty(a)?), Box::new(self.ty(b)?)),
            STy::Pre(u, h, a) => {
                let rh = self.prop(h)?;
                self.bind(u, Kind::ProofLike, Hyp::Propositional(rh.clone()));
                let ra = self.ty(a);
                self.unbind(1);
                Ty::Pre(Box::new(rh), Box::new(ra?))
            }
            STy::Subset(x, a, p) => {
                let ra = self.ty(a)?;
                self.bind(x, Kind::TermLike, Hyp::Computational(ra.clone()));
                let rp = self.prop(p);
                self.unbind(1);
                Ty::Subset(Box::new(ra), Box::new(rp?))
            }
            STy::Forall(x, a, b) => {
                let ra = self.ty(a)?;
                self.bind(x, Kind::TermLike, Hyp::Computational(ra.clone()));
                let rb = self.ty(b);
                self.unbind(1);
                Ty::All(Box::new(ra), Box::new(rb?))
            }
            STy::Exists(x, a, b) => {
                let ra = self.ty(a)?;
                self.bind(x, Kind::TermLike, Hyp::Computational(ra.clone()));
                let rb = self.ty(b);
                self.unbind(1);
                Ty::Ex(Box::new(ra), Box::new(rb?))
            }
        })
    }

    // -----------------------------------------------------------------
    // Propositions

    fn prop(&mut self, p: &Sp<SProp>) -> Res<Prop> {
        Self::grow(|| self.prop_inner(p))
    }

    fn prop_inner(&mut self, p: &Sp<SProp>) -> Res<Prop> {
        Ok(match &p.node {
            SProp::Top => Prop::Top,
            SProp::Bot => Prop::Bot,
            SProp::Imp(u, a, b) => {
                let ra = self.prop(a)?;
                self.bind(u, Kind::ProofLike, Hyp::Propositional(ra.clone()));
                let rb = self.prop(b);
                self.unbind(1);
                Prop::Imp(Box::new(ra), Box::new(rb?))
            }
            SProp::And(u, a, b) => {
                let ra = self.prop(a)?;
                self.bind(u, Kind::ProofLike, Hyp::Propositional(ra.clone()));
                let rb = self.prop(b);
                self.unbind(1);
                Prop::And(Box::new(ra), Box::new(rb?))
            }
            SProp::Or(a, b) => Prop::Or(Box::new(self.prop(a)?), Box::new(self.prop(b)?)),
            SProp::Forall(x, t, q) => {
                let rt = self.ty(t)?;
                self.bind(x, Kind::TermLike, Hyp::Computational(rt.clone()));
                let rq = self.prop(q);
                self.unbind(1);
                Prop::All(Box::new(rt), Box::new(rq?))
            }
            SProp::Exists(x, t, q) => {
                let rt = self.ty(t)?;
                self.bind(x, Kind::TermLike, Hyp::Computational(rt.clone()));
                let rq = self.prop(q);
                self.unbind(1);
                Prop::Ex(Box::new(rt), Box::new(rq?))
            }
            SProp::Eq(annot, lhs, rhs) => {
                let ty = match annot {
                    Some(t) => Some(self.ty(t)?),
                    None => None,
                };
                let (rl, _) = self.term(lhs, ty.as_ref())?;
                let (rr, _) = self.term(rhs, ty.as_ref())?;
                let ty = match ty {
                    Some(t) => t,
                    None => self.infer(&rl).or_else(|| self.infer(&rr)).ok_or_else(|| {
                        self.err(
                            p.span,
                            "cannot infer the type of this equality; \
                             annotate it as `a =[A] b`",
                        )
                    })?,
                };
                Prop::Eq(Box::new(ty), Box::new(rl), Box::new(rr))
            }
        })
    }

    // -----------------------------------------------------------------
    // Terms. The second component of the result marks terms that came
    // from inlining a definition, so application spines contract.

    fn term(&mut self, t: &Sp<STerm>, expected: Option<&Ty>) -> Res<(Term, bool)> {
        Self::grow(|| self.term_inner(t, expected))
    }

    fn term_inner(&mut self, t: &Sp<STerm>, expected: Option<&Ty>) -> Res<(Term, bool)> {
        let span = t.span;
        let plain = |t: Term| Ok((t, false));
        match &t.node {
            STerm::Var(x) => match self.local(x) {
                Some((i, Kind::TermLike)) => plain(Term::Var(i)),
                Some((_, Kind::ProofLike)) => Err(self.err(
                    span,
                    format!("`{x}` is a proof variable used in a term position"),
                )),
                None => match self.global(x) {
                    Some(ResolvedDecl {
                        kind: ResolvedKind::Def { body, .. },
                        ..
                    }) => Ok((body.clone(), true)),
                    Some(_) => Err(self.err(
                        span,
                        format!("`{x}` is a theorem; theorems cannot appear in terms"),
                    )),
                    None => Err(self.err(span, format!("unbound name `{x}`"))),
                },
            },
            STerm::Unit => plain(Term::Unit),
            STerm::Zero => plain(Term::Zero),
            STerm::Succ => plain(Term::Succ),
            STerm::NatLit(n) => plain(Term::numeral(*n)),
            STerm::Lam(x, dom, body) => {
                let rdom = self.ty(dom)?;
                let inner_expected = match expected {
                    Some(Ty::Fn(_, b)) => Some((**b).clone()),
                    _ => None,
                };
                self.bind(x, Kind::TermLike, Hyp::Computational(rdom.clone()));
                let rbody = self.term(body, inner_expected.as_ref());
                self.unbind(1);
                plain(Term::Lam(Box::new(rdom), Box::new(rbody?.0)))
            }
            STerm::LamPr(u, hyp, body) => {
                let rhyp = self.prop(hyp)?;
                let inner_expected = match expected {
                    Some(Ty::Pre(_, b)) => Some((**b).clone()),
                    _ => None,
                };
                self.bind(u, Kind::ProofLike, Hyp::Propositional(rhyp.clone()));
                let rbody = self.term(body, inner_expected.as_ref());
                self.unbind(1);
                plain(Term::LamPr(Box::new(rhyp), Box::new(rbody?.0)))
            }
            STerm::LamIr(x, dom, body) => {
                let rdom = self.ty(dom)?;
                let inner_expected = match expected {
                    Some(Ty::All(_, b)) => Some((**b).clone()),
                    _ => None,
                };
                self.bind(x, Kind::TermLike, Hyp::Ghost(rdom.clone()));
                let rbody = self.term(body, inner_expected.as_ref());
                self.unbind(1);
                plain(Term::LamIr(Box::new(rdom), Box::new(rbody?.0)))
            }
            STerm::App(f, a) => {
                let (rf, inlined) = self.term(f, None)?;
                let arg_expected = match self.infer(&rf) {
                    Some(Ty::Fn(dom, _)) => Some(*dom),
                    _ => None,
                };
                let (ra, _) = self.term(a, arg_expected.as_ref())?;
                if inlined {
                    if let Term::Lam(_, body) = &rf {
                        let contracted = body
                            .inst_term(&ra)
                            .map_err(|e| self.err(span, e.to_string()))?;
                        return Ok((contracted, true));
                    }
                }
                Ok((Term::App(Box::new(rf), Box::new(ra)), inlined))
            }
            STerm::AppIr(f, a) => {
                let (rf, inlined) = self.term(f, None)?;
                let arg_expected = match self.infer(&rf) {
                    Some(Ty::All(dom, _)) => Some(*dom),
                    _ => None,
                };
                let (ra, _) = self.term(a, arg_expected.as_ref())?;
                if inlined {
                    if let Term::LamIr(_, body) = &rf {
                        let contracted = body
                            .inst_term(&ra)
                            .map_err(|e| self.err(span, e.to_string()))?;
                        return Ok((contracted, true));
                    }
                }
                Ok((Term::AppIr(Box::new(rf), Box::new(ra)), inlined))
            }
            STerm::AppPr(f, p) => {
                let (rf, inlined) = self.term(f, None)?;
                let arg_expected = match self.infer(&rf) {
                    Some(Ty::Pre(hyp, _)) => Some(*hyp),
                    _ => None,
                };
                let rp = self.proof(p, arg_expected.as_ref())?;
                if inlined {
                    if let Term::LamPr(_, body) = &rf {
                        let contracted = body
                            .inst_proof(&rp)
                            .map_err(|e| self.err(span, e.to_string()))?;
                        return Ok((contracted, true));
                    }
                }
                Ok((Term::AppPr(Box::new(rf), Box::new(rp)), inlined))
            }
            STerm::Pair(a, b) => {
                let (fst_exp, snd_fam) = match expected {
                    Some(Ty::Pair(x, y)) => (Some((**x).clone()), Some((**y).clone())),
                    _ => (None, None),
                };
                let (ra, _) = self.term(a, fst_exp.as_ref())?;
                let snd_exp = snd_fam.and_then(|fam| fam.inst_term(&ra).ok());
                let (rb, _) = self.term(b, snd_exp.as_ref())?;
                plain(Term::Pair(Box::new(ra), Box::new(rb)))
            }
            STerm::Repr(a, b) => {
                let (ghost_exp, wit_fam) = match expected {
                    Some(Ty::Ex(x, y)) => (Some((**x).clone()), Some((**y).clone())),
                    _ => (None, None),
                };
                let (ra, _) = self.term(a, ghost_exp.as_ref())?;
                let wit_exp = wit_fam.and_then(|fam| fam.inst_term(&ra).ok());
                let (rb, _) = self.term(b, wit_exp.as_ref())?;
                plain(Term::Repr(Box::new(ra), Box::new(rb)))
            }
            STerm::SetIntro(a, p) => {
                let (base_exp, pred) = match expected {
                    Some(Ty::Subset(x, q)) => (Some((**x).clone()), Some((**q).clone())),
                    _ => (None, None),
                };
                let (ra, _) = self.term(a, base_exp.as_ref())?;
                let pf_exp = pred.and_then(|q| q.inst_term(&ra).ok());
                let rp = self.proof(p, pf_exp.as_ref())?;
                plain(Term::SetIntro(Box::new(ra), Box::new(rp)))
            }
            STerm::Inl(e) => {
                let inner = match expected {
                    Some(Ty::Sum(a, _)) => Some((**a).clone()),
                    _ => None,
                };
                let (re, _) = self.term(e, inner.as_ref())?;
                plain(Term::Inl(Box::new(re)))
            }
            STerm::Inr(e) => {
                let inner = match expected {
                    Some(Ty::Sum(_, b)) => Some((**b).clone()),
                    _ => None,
                };
                let (re, _) = self.term(e, inner.as_ref())?;
                plain(Term::Inr(Box::new(re)))
            }
            STerm::Absurd(p) => {
                let rp = self.proof(p, Some(&Prop::Bot))?;
                plain(Term::Absurd(Box::new(rp)))
            }
            STerm::LetPair {
                motive,
                names,
                annot,
                scrut,
                body,
            } => {
                let rannot = self.ty(annot)?;
                let (rscrut, _) = self.term(scrut, Some(&rannot))?;
                let (ra, rb) = match &rannot {
                    Ty::Pair(a, b) => ((**a).clone(), (**b).clone()),
                    _ => {
                        return Err(self.err(annot.span, "let-pair annotation must be a pair type"))
                    }
                };
                let rmotive = self.let_motive_ty(motive, &rannot)?;
                let body_exp = self.let_body_expected_ty(
                    &rmotive,
                    expected,
                    &Term::Pair(Box::new(Term::Var(1)), Box::new(Term::Var(0))),
                );
                self.bind(&names.0, Kind::TermLike, Hyp::Computational(ra));
                self.bind(&names.1, Kind::TermLike, Hyp::Computational(rb));
                let rbody = self.term(body, body_exp.as_ref());
                self.unbind(2);
                plain(Term::LetPair {
                    annot: Box::new(rannot),
                    motive: rmotive.map(Box::new),
                    scrut: Box::new(rscrut),
                    body: Box::new(rbody?.0),
                })
            }
            STerm::LetSet {
                motive,
                names,
                annot,
                scrut,
                body,
            } => {
                let rannot = self.ty(annot)?;
                let (rscrut, _) = self.term(scrut, Some(&rannot))?;
                let (ra, rp) = match &rannot {
                    Ty::Subset(a, p) => ((**a).clone(), (**p).clone()),
                    _ => {
                        return Err(self.err(annot.span, "let-set annotation must be a subset type"))
                    }
                };
                let rmotive = self.let_motive_ty(motive, &rannot)?;
                let body_exp = self.let_body_expected_ty(
                    &rmotive,
                    expected,
                    &Term::SetIntro(Box::new(Term::Var(1)), Box::new(Proof::Var(0))),
                );
                self.bind(&names.0, Kind::TermLike, Hyp::Computational(ra));
                self.bind(&names.1, Kind::ProofLike, Hyp::Propositional(rp));
                let rbody = self.term(body, body_exp.as_ref());
                self.unbind(2);
                plain(Term::LetSet {
                    annot: Box::new(rannot),
                    motive: rmotive.map(Box::new),
                    scrut: Box::new(rscrut),
                    body: Box::new(rbody?.0),
                })
            }
            STerm::LetRepr {
                motive,
                names,
                annot,
                scrut,
                body,
            } => {
                let rannot = self.ty(annot)?;
                let (rscrut, _) = self.term(scrut, Some(&rannot))?;
                let (ra, rb) = match &rannot {
                    Ty::Ex(a, b) => ((**a).clone(), (**b).clone()),
                    _ => return Err(self.err(annot.span, "let annotation must be a union type")),
                };
                let rmotive = self.let_motive_ty(motive, &rannot)?;
                let body_exp = self.let_body_expected_ty(
                    &rmotive,
                    expected,
                    &Term::Repr(Box::new(Term::Var(1)), Box::new(Term::Var(0))),
                );
                self.bind(&names.0, Kind::TermLike, Hyp::Ghost(ra));
                self.bind(&names.1, Kind::TermLike, Hyp::Computational(rb));
                let rbody = self.term(body, body_exp.as_ref());
                self.unbind(2);
                plain(Term::LetRepr {
                    annot: Box::new(rannot),
                    motive: rmotive.map(Box::new),
                    scrut: Box::new(rscrut),
                    body: Box::new(rbody?.0),
                })
            }
            STerm::Cases {
                motive,
                scrut,
                left,
                right,
            } => {
                let (rscrut, _) = self.term(scrut, None)?;
                let scrut_ty = self.infer(&rscrut).unwrap_or(Ty::Unit);
                let (ra, rb) = match &scrut_ty {
                    Ty::Sum(a, b) => ((**a).clone(), (**b).clone()),
                    _ => (Ty::Unit, Ty::Unit),
                };
                self.bind(
                    &motive.0,
                    Kind::TermLike,
                    Hyp::Computational(scrut_ty.clone()),
                );
                let rmotive = self.ty(&motive.1);
                self.unbind(1);
                let rmotive = rmotive?;
                let lexp = rmotive
                    .lifted(1, 1)
                    .inst_term(&Term::Inl(Box::new(Term::Var(0))))
                    .ok();
                self.bind(&left.0, Kind::TermLike, Hyp::Computational(ra));
                let rleft = self.term(&left.1, lexp.as_ref());
                self.unbind(1);
                let rexp = rmotive
                    .lifted(1, 1)
                    .inst_term(&Term::Inr(Box::new(Term::Var(0))))
                    .ok();
                self.bind(&right.0, Kind::TermLike, Hyp::Computational(rb));
                let rright = self.term(&right.1, rexp.as_ref());
                self.unbind(1);
                plain(Term::Cases {
                    motive: Box::new(rmotive),
                    scrut: Box::new(rscrut),
                    left: Box::new(rleft?.0),
                    right: Box::new(rright?.0),
                })
            }
            STerm::Natrec {
                motive,
                scrut,
                zero,
                succ,
            } => {
                self.bind(&motive.0, Kind::TermLike, Hyp::Computational(Ty::Nat));
                let rmotive = self.ty(&motive.1);
                self.unbind(1);
                let rmotive = rmotive?;
                let (rscrut, _) = self.term(scrut, Some(&Ty::Nat))?;
                let zexp = rmotive.inst_term(&Term::Zero).ok();
                let (rzero, _) = self.term(zero, zexp.as_ref())?;
                let sexp = rmotive
                    .lifted(1, 2)
                    .inst_term(&Term::App(Box::new(Term::Succ), Box::new(Term::Var(1))))
                    .ok();
                self.bind(&succ.0, Kind::TermLike, Hyp::Ghost(Ty::Nat));
                self.bind(&succ.1, Kind::TermLike, Hyp::Computational(rmotive.clone()));
                let rsucc = self.term(&succ.2, sexp.as_ref());
                self.unbind(2);
                plain(Term::Natrec {
                    motive: Box::new(rmotive),
                    scrut: Box::new(rscrut),
                    zero: Box::new(rzero),
                    succ: Box::new(rsucc?.0),
                })
            }
        }
    }

    fn let_motive_ty(
        &mut self,
        motive: &Option<(String, super::PTy)>,
        annot: &Ty,
    ) -> Res<Option<Ty>> {
        match motive {
            None => Ok(None),
            Some((z, m)) => {
                self.bind(z, Kind::TermLike, Hyp::Computational(annot.clone()));
                let r = self.ty(m);
                self.unbind(1);
                r.map(Some)
            }
        }
    }

    /// Expected type for a let body: the motive instantiated at the
    /// pattern, or the outer expectation weakened under the two binders.
    fn let_body_expected_ty(
        &self,
        motive: &Option<Ty>,
        expected: Option<&Ty>,
        pattern: &Term,
    ) -> Option<Ty> {
        match motive {
            Some(c) => c.lifted(1, 2).inst_term(pattern).ok(),
            None => expected.map(|e| e.lifted(0, 2)),
        }
    }

    fn let_motive_prop(
        &mut self,
        motive: &Option<(String, super::PProp)>,
        annot_ty: Option<&Ty>,
        annot_prop: Option<&Prop>,
    ) -> Res<Option<Prop>> {
        match motive {
            None => Ok(None),
            Some((z, m)) => {
                let hyp = match (annot_ty, annot_prop) {
                    (Some(t), _) => Hyp::Computational(t.clone()),
                    (_, Some(p)) => Hyp::Propositional(p.clone()),
                    _ => Hyp::Computational(Ty::Unit),
                };
                self.bind(
                    z,
                    if annot_prop.is_some() {
                        Kind::ProofLike
                    } else {
                        Kind::TermLike
                    },
                    hyp,
                );
                let r = self.prop(m);
                self.unbind(1);
                r.map(Some)
            }
        }
    }

    // -----------------------------------------------------------------
    // Proofs

    fn proof(&mut self, p: &Sp<SProof>, expected: Option<&Prop>) -> Res<Proof> {
        Self::grow(|| self.proof_inner(p, expected))
    }

    fn proof_inner(&mut self, p: &Sp<SProof>, expected: Option<&Prop>) -> Res<Proof> {
        let span = p.span;
        match &p.node {
            SProof::Var(u) => match self.local(u) {
                Some((i, Kind::ProofLike)) => Ok(Proof::Var(i)),
                Some((_, Kind::TermLike)) => Err(self.err(
                    span,
                    format!("`{u}` is a term variable used in a proof position"),
                )),
                None => match self.global(u) {
                    Some(ResolvedDecl {
                        kind: ResolvedKind::Thm { body, .. },
                        ..
                    }) => Ok(body.clone()),
                    Some(_) => Err(self.err(
                        span,
                        format!("`{u}` is a definition; definitions cannot appear as proofs"),
                    )),
                    None => Err(self.err(span, format!("unbound name `{u}`"))),
                },
            },
            SProof::TrueIntro => Ok(Proof::TrueIntro),
            SProof::ByBeta => match expected {
                Some(goal @ Prop::Eq(..)) => {
                    beta::elaborate(&self.ctx, goal, BETA_FUEL).map_err(|d| {
                        let mut d = d;
                        if d.span.is_none() {
                            d.span = Some(span);
                        }
                        d
                    })
                }
                Some(other) => Err(self.err(
                    span,
                    format!(
                        "`beta` proves equalities, but the goal here is {}",
                        crate::pretty::prop(other)
                    ),
                )),
                None => Err(self.err(
                    span,
                    "no goal is known for `beta` at this position; \
                     annotate the enclosing form",
                )),
            },
            SProof::TransChain { first, links } => {
                let (t0, _) = self.term(first, None)?;
                let ty = self.infer(&t0).ok_or_else(|| {
                    self.err(
                        first.span,
                        "the first endpoint of a trans chain must synthesize its type",
                    )
                })?;
                let mut terms = vec![t0];
                let mut proofs = Vec::new();
                for (pf, next) in links {
                    let (tn, _) = self.term(next, None)?;
                    let goal = Prop::Eq(
                        Box::new(ty.clone()),
                        Box::new(terms.last().unwrap().clone()),
                        Box::new(tn.clone()),
                    );
                    proofs.push(self.proof(pf, Some(&goal))?);
                    terms.push(tn);
                }
                Ok(desugar_trans(&ty, &terms, proofs))
            }
            SProof::ImpIntro(u, hyp, body) => {
                let rhyp = self.prop(hyp)?;
                let inner = match expected {
                    Some(Prop::Imp(_, b)) => Some((**b).clone()),
                    _ => None,
                };
                self.bind(u, Kind::ProofLike, Hyp::Propositional(rhyp.clone()));
                let rbody = self.proof(body, inner.as_ref());
                self.unbind(1);
                Ok(Proof::ImpIntro(Box::new(rhyp), Box::new(rbody?)))
            }
            SProof::Gen(x, dom, body) => {
                let rdom = self.ty(dom)?;
                let inner = match expected {
                    Some(Prop::All(_, b)) => Some((**b).clone()),
                    _ => None,
                };
                self.bind(x, Kind::TermLike, Hyp::Ghost(rdom.clone()));
                let rbody = self.proof(body, inner.as_ref());
                self.unbind(1);
                Ok(Proof::Gen(Box::new(rdom), Box::new(rbody?)))
            }
            SProof::App(f, a) => {
                let rf = self.proof(f, None)?;
                let arg_exp = match self.infer_proof(&rf) {
                    Some(Prop::Imp(h, _)) => Some(*h),
                    _ => None,
                };
                let ra = self.proof(a, arg_exp.as_ref())?;
                Ok(Proof::App(Box::new(rf), Box::new(ra)))
            }
            SProof::Spec(f, a) => {
                let rf = self.proof(f, None)?;
                let arg_exp = match self.infer_proof(&rf) {
                    Some(Prop::All(t, _)) => Some(*t),
                    _ => None,
                };
                let (ra, _) = self.term(a, arg_exp.as_ref())?;
                Ok(Proof::Spec(Box::new(rf), Box::new(ra)))
            }
            SProof::AndIntro(l, r) => {
                let (lexp, rfam) = match expected {
                    Some(Prop::And(a, b)) => (Some((**a).clone()), Some((**b).clone())),
                    _ => (None, None),
                };
                let rl = self.proof(l, lexp.as_ref())?;
                let rexp = rfam.and_then(|f| f.inst_proof(&rl).ok());
                let rr = self.proof(r, rexp.as_ref())?;
                Ok(Proof::AndIntro(Box::new(rl), Box::new(rr)))
            }
            SProof::Wit(a, q) => {
                let (texp, fam) = match expected {
                    Some(Prop::Ex(t, b)) => (Some((**t).clone()), Some((**b).clone())),
                    _ => (None, None),
                };
                let (ra, _) = self.term(a, texp.as_ref())?;
                let qexp = fam.and_then(|f| f.inst_term(&ra).ok());
                let rq = self.proof(q, qexp.as_ref())?;
                Ok(Proof::Wit(Box::new(ra), Box::new(rq)))
            }
            SProof::Orl(q) => {
                let inner = match expected {
                    Some(Prop::Or(a, _)) => Some((**a).clone()),
                    _ => None,
                };
                Ok(Proof::Orl(Box::new(self.proof(q, inner.as_ref())?)))
            }
            SProof::Orr(q) => {
                let inner = match expected {
                    Some(Prop::Or(_, b)) => Some((**b).clone()),
                    _ => None,
                };
                Ok(Proof::Orr(Box::new(self.proof(q, inner.as_ref())?)))
            }
            SProof::Absurd(q) => Ok(Proof::Absurd(Box::new(self.proof(q, Some(&Prop::Bot))?))),
            SProof::LetAnd {
                motive,
                names,
                annot,
                scrut,
                body,
            } => {
                let rannot = self.prop(annot)?;
                let rscrut = self.proof(scrut, Some(&rannot))?;
                let (ra, rb) = match &rannot {
                    Prop::And(a, b) => ((**a).clone(), (**b).clone()),
                    _ => return Err(self.err(annot.span, "let annotation must be a conjunction")),
                };
                let rmotive = self.let_motive_prop(motive, None, Some(&rannot))?;
                let body_exp = match &rmotive {
                    Some(m) => m
                        .lifted(1, 2)
                        .inst_proof(&Proof::AndIntro(
                            Box::new(Proof::Var(1)),
                            Box::new(Proof::Var(0)),
                        ))
                        .ok(),
                    None => expected.map(|e| e.lifted(0, 2)),
                };
                self.bind(&names.0, Kind::ProofLike, Hyp::Propositional(ra));
                self.bind(&names.1, Kind::ProofLike, Hyp::Propositional(rb));
                let rbody = self.proof(body, body_exp.as_ref());
                self.unbind(2);
                Ok(Proof::LetAnd {
                    annot: Box::new(rannot),
                    motive: rmotive.map(Box::new),
                    scrut: Box::new(rscrut),
                    body: Box::new(rbody?),
                })
            }
            SProof::LetExists {
                motive,
                names,
                annot,
                scrut,
                body,
            } => {
                let rannot = self.prop(annot)?;
                let rscrut = self.proof(scrut, Some(&rannot))?;
                let (rt, rphi) = match &rannot {
                    Prop::Ex(t, q) => ((**t).clone(), (**q).clone()),
                    _ => return Err(self.err(annot.span, "let annotation must be an existential")),
                };
                let rmotive = self.let_motive_prop(motive, None, Some(&rannot))?;
                let body_exp = match &rmotive {
                    Some(m) => m
                        .lifted(1, 2)
                        .inst_proof(&Proof::Wit(Box::new(Term::Var(1)), Box::new(Proof::Var(0))))
                        .ok(),
                    None => expected.map(|e| e.lifted(0, 2)),
                };
                // The witness hypothesis is computational here.
                self.bind(&names.0, Kind::TermLike, Hyp::Computational(rt));
                self.bind(&names.1, Kind::ProofLike, Hyp::Propositional(rphi));
                let rbody = self.proof(body, body_exp.as_ref());
                self.unbind(2);
                Ok(Proof::LetExists {
                    annot: Box::new(rannot),
                    motive: rmotive.map(Box::new),
                    scrut: Box::new(rscrut),
                    body: Box::new(rbody?),
                })
            }
            SProof::LetPairPr {
                motive,
                names,
                annot,
                scrut,
                body,
            } => {
                let rannot = self.ty(annot)?;
                let (rscrut, _) = self.term(scrut, Some(&rannot))?;
                let (ra, rb) = match &rannot {
                    Ty::Pair(a, b) => ((**a).clone(), (**b).clone()),
                    _ => return Err(self.err(annot.span, "let annotation must be a pair type")),
                };
                let rmotive = self.let_motive_prop(motive, Some(&rannot), None)?;
                let body_exp = self.let_pr_body_expected(
                    &rmotive,
                    expected,
                    &Term::Pair(Box::new(Term::Var(1)), Box::new(Term::Var(0))),
                );
                self.bind(&names.0, Kind::TermLike, Hyp::Computational(ra));
                self.bind(&names.1, Kind::TermLike, Hyp::Computational(rb));
                let rbody = self.proof(body, body_exp.as_ref());
                self.unbind(2);
                Ok(Proof::LetPairPr {
                    annot: Box::new(rannot),
                    motive: rmotive.map(Box::new),
                    scrut: Box::new(rscrut),
                    body: Box::new(rbody?),
                })
            }
            SProof::LetSetPr {
                motive,
                names,
                annot,
                scrut,
                body,
            } => {
                let rannot = self.ty(annot)?;
                let (rscrut, _) = self.term(scrut, Some(&rannot))?;
                let (ra, rphi) = match &rannot {
                    Ty::Subset(a, q) => ((**a).clone(), (**q).clone()),
                    _ => return Err(self.err(annot.span, "let annotation must be a subset type")),
                };
                let rmotive = self.let_motive_prop(motive, Some(&rannot), None)?;
                let body_exp = self.let_pr_body_expected(
                    &rmotive,
                    expected,
                    &Term::SetIntro(Box::new(Term::Var(1)), Box::new(Proof::Var(0))),
                );
                self.bind(&names.0, Kind::TermLike, Hyp::Computational(ra));
                self.bind(&names.1, Kind::ProofLike, Hyp::Propositional(rphi));
                let rbody = self.proof(body, body_exp.as_ref());
                self.unbind(2);
                Ok(Proof::LetSetPr {
                    annot: Box::new(rannot),
                    motive: rmotive.map(Box::new),
                    scrut: Box::new(rscrut),
                    body: Box::new(rbody?),
                })
            }
            SProof::LetReprPr {
                motive,
                names,
                annot,
                scrut,
                body,
            } => {
                let rannot = self.ty(annot)?;
                let (rscrut, _) = self.term(scrut, Some(&rannot))?;
                let (ra, rb) = match &rannot {
                    Ty::Ex(a, b) => ((**a).clone(), (**b).clone()),
                    _ => return Err(self.err(annot.span, "let annotation must be a union type")),
                };
                let rmotive = self.let_motive_prop(motive, Some(&rannot), None)?;
                let body_exp = self.let_pr_body_expected(
                    &rmotive,
                    expected,
                    &Term::Repr(Box::new(Term::Var(1)), Box::new(Term::Var(0))),
                );
                self.bind(&names.0, Kind::TermLike, Hyp::Computational(ra));
                self.bind(&names.1, Kind::TermLike, Hyp::Computational(rb));
                let rbody = self.proof(body, body_exp.as_ref());
                self.unbind(2);
                Ok(Proof::LetReprPr {
                    annot: Box::new(rannot),
                    motive: rmotive.map(Box::new),
                    scrut: Box::new(rscrut),
                    body: Box::new(rbody?),
                })
            }
            SProof::Subst {
                motive,
                lhs,
                rhs,
                eq,
                body,
            } => {
                let (rl, _) = self.term(lhs, None)?;
                let (rr, _) = self.term(rhs, None)?;
                let elem_ty = self.infer(&rl).or_else(|| self.infer(&rr));
                self.bind(
                    &motive.0,
                    Kind::TermLike,
                    Hyp::Computational(elem_ty.clone().unwrap_or(Ty::Unit)),
                );
                let rmotive = self.prop(&motive.1);
                self.unbind(1);
                let rmotive = rmotive?;
                let eq_exp = elem_ty
                    .map(|t| Prop::Eq(Box::new(t), Box::new(rl.clone()), Box::new(rr.clone())));
                let req = self.proof(eq, eq_exp.as_ref())?;
                let body_exp = rmotive.inst_term(&rl).ok();
                let rbody = self.proof(body, body_exp.as_ref())?;
                Ok(Proof::Subst {
                    motive: Box::new(rmotive),
                    lhs: Box::new(rl),
                    rhs: Box::new(rr),
                    eq: Box::new(req),
                    body: Box::new(rbody),
                })
            }
            SProof::CasesPr {
                motive,
                scrut,
                left,
                right,
            } => {
                let (rscrut, _) = self.term(scrut, None)?;
                let scrut_ty = self.infer(&rscrut).unwrap_or(Ty::Unit);
                let (ra, rb) = match &scrut_ty {
                    Ty::Sum(a, b) => ((**a).clone(), (**b).clone()),
                    _ => (Ty::Unit, Ty::Unit),
                };
                self.bind(
                    &motive.0,
                    Kind::TermLike,
                    Hyp::Computational(scrut_ty.clone()),
                );
                let rmotive = self.prop(&motive.1);
                self.unbind(1);
                let rmotive = rmotive?;
                let lexp = rmotive
                    .lifted(1, 1)
                    .inst_term(&Term::Inl(Box::new(Term::Var(0))))
                    .ok();
                self.bind(&left.0, Kind::TermLike, Hyp::Computational(ra));
                let rleft = self.proof(&left.1, lexp.as_ref());
                self.unbind(1);
                let rexp = rmotive
                    .lifted(1, 1)
                    .inst_term(&Term::Inr(Box::new(Term::Var(0))))
                    .ok();
                self.bind(&right.0, Kind::TermLike, Hyp::Computational(rb));
                let rright = self.proof(&right.1, rexp.as_ref());
                self.unbind(1);
                Ok(Proof::CasesPr {
                    motive: Box::new(rmotive),
                    scrut: Box::new(rscrut),
                    left: Box::new(rleft?),
                    right: Box::new(rright?),
                })
            }
            SProof::CasesOr {
                motive,
                scrut,
                left,
                right,
            } => {
                let rscrut = self.proof(scrut, None)?;
                let scrut_prop = self.infer_proof(&rscrut).unwrap_or(Prop::Top);
                let (ra, rb) = match &scrut_prop {
                    Prop::Or(a, b) => ((**a).clone(), (**b).clone()),
                    _ => (Prop::Top, Prop::Top),
                };
                self.bind(
                    &motive.0,
                    Kind::ProofLike,
                    Hyp::Propositional(scrut_prop.clone()),
                );
                let rmotive = self.prop(&motive.1);
                self.unbind(1);
                let rmotive = rmotive?;
                let lexp = rmotive
                    .lifted(1, 1)
                    .inst_proof(&Proof::Orl(Box::new(Proof::Var(0))))
                    .ok();
                self.bind(&left.0, Kind::ProofLike, Hyp::Propositional(ra));
                let rleft = self.proof(&left.1, lexp.as_ref());
                self.unbind(1);
                let rexp = rmotive
                    .lifted(1, 1)
                    .inst_proof(&Proof::Orr(Box::new(Proof::Var(0))))
                    .ok();
                self.bind(&right.0, Kind::ProofLike, Hyp::Propositional(rb));
                let rright = self.proof(&right.1, rexp.as_ref());
                self.unbind(1);
                Ok(Proof::CasesOr {
                    motive: Box::new(rmotive),
                    scrut: Box::new(rscrut),
                    left: Box::new(rleft?),
                    right: Box::new(rright?),
                })
            }
            SProof::Ind {
                motive,
                scrut,
                zero,
                succ,
            } => {
                self.bind(&motive.0, Kind::TermLike, Hyp::Computational(Ty::Nat));
                let rmotive = self.prop(&motive.1);
                self.unbind(1);
                let rmotive = rmotive?;
                let (rscrut, _) = self.term(scrut, Some(&Ty::Nat))?;
                let zexp = rmotive.inst_term(&Term::Zero).ok();
                let rzero = self.proof(zero, zexp.as_ref())?;
                let sexp = rmotive
                    .lifted(1, 2)
                    .inst_term(&Term::App(Box::new(Term::Succ), Box::new(Term::Var(1))))
                    .ok();
                self.bind(&succ.0, Kind::TermLike, Hyp::Computational(Ty::Nat));
                self.bind(
                    &succ.1,
                    Kind::ProofLike,
                    Hyp::Propositional(rmotive.clone()),
                );
                let rsucc = self.proof(&succ.2, sexp.as_ref());
                self.unbind(2);
                Ok(Proof::Ind {
                    motive: Box::new(rmotive),
                    scrut: Box::new(rscrut),
                    zero: Box::new(rzero),
                    succ: Box::new(rsucc?),
                })
            }
            SProof::Rfl(a) => {
                let (ra, _) = self.term(a, None)?;
                Ok(Proof::Rfl(Box::new(ra)))
            }
            SProof::Uniq(a) => {
                let (ra, _) = self.term(a, Some(&Ty::Unit))?;
                Ok(Proof::Uniq(Box::new(ra)))
            }
            SProof::Discr(a, b, q) => {
                let (ra, _) = self.term(a, None)?;
                let (rb, _) = self.term(b, None)?;
                let rq = self.proof(q, None)?;
                Ok(Proof::Discr(Box::new(ra), Box::new(rb), Box::new(rq)))
            }
            SProof::BetaPr { hyp, body, arg } => {
                let rhyp = self.prop(&hyp.1)?;
                self.bind(&hyp.0, Kind::ProofLike, Hyp::Propositional(rhyp.clone()));
                let rbody = self.term(body, None);
                self.unbind(1);
                let rarg = self.proof(arg, Some(&rhyp))?;
                Ok(Proof::BetaPr {
                    hyp: Box::new(rhyp),
                    body: Box::new(rbody?.0),
                    arg: Box::new(rarg),
                })
            }
            SProof::BetaTy { dom, body, arg } => {
                let rdom = self.ty(&dom.1)?;
                self.bind(&dom.0, Kind::TermLike, Hyp::Computational(rdom.clone()));
                let rbody = self.term(body, None);
                self.unbind(1);
                let (rarg, _) = self.term(arg, Some(&rdom))?;
                Ok(Proof::BetaTy {
                    dom: Box::new(rdom),
                    body: Box::new(rbody?.0),
                    arg: Box::new(rarg),
                })
            }
            SProof::BetaIr { dom, body, arg } => {
                let rdom = self.ty(&dom.1)?;
                self.bind(&dom.0, Kind::TermLike, Hyp::Computational(rdom.clone()));
                let rbody = self.term(body, None);
                self.unbind(1);
                let (rarg, _) = self.term(arg, Some(&rdom))?;
                Ok(Proof::BetaIr {
                    dom: Box::new(rdom),
                    body: Box::new(rbody?.0),
                    arg: Box::new(rarg),
                })
            }
            SProof::BetaLeft {
                motive,
                left,
                right,
                arg,
            }
            | SProof::BetaRight {
                motive,
                left,
                right,
                arg,
            } => {
                let rsum = self.ty(&motive.1)?;
                let (ra, rb) = match &rsum {
                    Ty::Sum(a, b) => ((**a).clone(), (**b).clone()),
                    _ => {
                        return Err(
                            self.err(motive.1.span, "the beta annotation must be a sum type")
                        )
                    }
                };
                self.bind(&motive.0, Kind::TermLike, Hyp::Computational(rsum.clone()));
                let rmotive = self.ty(&motive.2);
                self.unbind(1);
                let rmotive = rmotive?;
                self.bind(&left.0, Kind::TermLike, Hyp::Computational(ra.clone()));
                let rleft = self.term(&left.1, None);
                self.unbind(1);
                self.bind(&right.0, Kind::TermLike, Hyp::Computational(rb.clone()));
                let rright = self.term(&right.1, None);
                self.unbind(1);
                let is_left = matches!(p.node, SProof::BetaLeft { .. });
                let (rarg, _) = self.term(arg, Some(if is_left { &ra } else { &rb }))?;
                let node = if is_left {
                    Proof::BetaLeft {
                        sum: Box::new(rsum),
                        motive: Box::new(rmotive),
                        left: Box::new(rleft?.0),
                        right: Box::new(rright?.0),
                        arg: Box::new(rarg),
                    }
                } else {
                    Proof::BetaRight {
                        sum: Box::new(rsum),
                        motive: Box::new(rmotive),
                        left: Box::new(rleft?.0),
                        right: Box::new(rright?.0),
                        arg: Box::new(rarg),
                    }
                };
                Ok(node)
            }
            SProof::BetaZero { motive, zero, succ } => {
                let (rmotive, rzero, rsucc) = self.natrec_beta_parts(motive, zero, succ)?;
                Ok(Proof::BetaZero {
                    motive: Box::new(rmotive),
                    zero: Box::new(rzero),
                    succ: Box::new(rsucc),
                })
            }
            SProof::BetaSucc {
                motive,
                arg,
                zero,
                succ,
            } => {
                let (rarg, _) = self.term(arg, Some(&Ty::Nat))?;
                let (rmotive, rzero, rsucc) = self.natrec_beta_parts(motive, zero, succ)?;
                Ok(Proof::BetaSucc {
                    motive: Box::new(rmotive),
                    arg: Box::new(rarg),
                    zero: Box::new(rzero),
                    succ: Box::new(rsucc),
                })
            }
            SProof::BetaPair {
                motive,
                names,
                annot,
                body,
                fst,
                snd,
            } => {
                let rannot = self.ty(annot)?;
                let (ra, rb) = match &rannot {
                    Ty::Pair(a, b) => ((**a).clone(), (**b).clone()),
                    _ => {
                        return Err(self.err(annot.span, "the beta annotation must be a pair type"))
                    }
                };
                let rmotive = self.let_motive_ty(motive, &rannot)?;
                self.bind(&names.0, Kind::TermLike, Hyp::Computational(ra.clone()));
                self.bind(&names.1, Kind::TermLike, Hyp::Computational(rb));
                let rbody = self.term(body, None);
                self.unbind(2);
                let (rfst, _) = self.term(fst, Some(&ra))?;
                let snd_exp = match &rannot {
                    Ty::Pair(_, b) => b.inst_term(&rfst).ok(),
                    _ => None,
                };
                let (rsnd, _) = self.term(snd, snd_exp.as_ref())?;
                Ok(Proof::BetaPair {
                    annot: Box::new(rannot),
                    motive: rmotive.map(Box::new),
                    fst: Box::new(rfst),
                    snd: Box::new(rsnd),
                    body: Box::new(rbody?.0),
                })
            }
            SProof::BetaSet {
                motive,
                names,
                annot,
                body,
                elem,
                pf,
            } => {
                let rannot = self.ty(annot)?;
                let (ra, rphi) = match &rannot {
                    Ty::Subset(a, q) => ((**a).clone(), (**q).clone()),
                    _ => {
                        return Err(
                            self.err(annot.span, "the beta annotation must be a subset type")
                        )
                    }
                };
                let rmotive = self.let_motive_ty(motive, &rannot)?;
                self.bind(&names.0, Kind::TermLike, Hyp::Computational(ra.clone()));
                self.bind(&names.1, Kind::ProofLike, Hyp::Propositional(rphi.clone()));
                let rbody = self.term(body, None);
                self.unbind(2);
                let (relem, _) = self.term(elem, Some(&ra))?;
                let pf_exp = rphi.inst_term(&relem).ok();
                let rpf = self.proof(pf, pf_exp.as_ref())?;
                Ok(Proof::BetaSet {
                    annot: Box::new(rannot),
                    motive: rmotive.map(Box::new),
                    elem: Box::new(relem),
                    pf: Box::new(rpf),
                    body: Box::new(rbody?.0),
                })
            }
            SProof::BetaRepr {
                motive,
                names,
                annot,
                body,
                ghost,
                wit,
            } => {
                let rannot = self.ty(annot)?;
                let (ra, rb) = match &rannot {
                    Ty::Ex(a, b) => ((**a).clone(), (**b).clone()),
                    _ => {
                        return Err(self.err(annot.span, "the beta annotation must be a union type"))
                    }
                };
                let rmotive = self.let_motive_ty(motive, &rannot)?;
                self.bind(&names.0, Kind::TermLike, Hyp::Computational(ra.clone()));
                self.bind(&names.1, Kind::TermLike, Hyp::Computational(rb));
                let rbody = self.term(body, None);
                self.unbind(2);
                let (rghost, _) = self.term(ghost, Some(&ra))?;
                let wit_exp = match &rannot {
                    Ty::Ex(_, b) => b.inst_term(&rghost).ok(),
                    _ => None,
                };
                let (rwit, _) = self.term(wit, wit_exp.as_ref())?;
                Ok(Proof::BetaRepr {
                    annot: Box::new(rannot),
                    motive: rmotive.map(Box::new),
                    ghost: Box::new(rghost),
                    wit: Box::new(rwit),
                    body: Box::new(rbody?.0),
                })
            }
            SProof::EtaTy(f) => {
                let (rf, _) = self.term(f, None)?;
                Ok(Proof::EtaTy(Box::new(rf)))
            }
            SProof::IrPr {
                hyp,
                body,
                fst,
                snd,
            } => {
                let rhyp = self.prop(&hyp.1)?;
                self.bind(&hyp.0, Kind::ProofLike, Hyp::Propositional(rhyp.clone()));
                let rbody = self.term(body, None);
                self.unbind(1);
                let rfst = self.proof(fst, Some(&rhyp))?;
                let rsnd = self.proof(snd, Some(&rhyp))?;
                Ok(Proof::IrPr {
                    hyp: Box::new(rhyp),
                    body: Box::new(rbody?.0),
                    fst: Box::new(rfst),
                    snd: Box::new(rsnd),
                })
            }
            SProof::IrTy { fun, fst, snd } => {
                let (rfun, _) = self.term(fun, None)?;
                let dom = match self.infer(&rfun) {
                    Some(Ty::All(a, _)) => Some(*a),
                    _ => None,
                };
                let (rfst, _) = self.term(fst, dom.as_ref())?;
                let (rsnd, _) = self.term(snd, dom.as_ref())?;
                Ok(Proof::IrTy {
                    fun: Box::new(rfun),
                    fst: Box::new(rfst),
                    snd: Box::new(rsnd),
                })
            }
            SProof::EtaIr {
                fst,
                snd,
                inhab,
                body,
            } => {
                let (rfst, _) = self.term(fst, None)?;
                let fun_ty = self.infer(&rfst);
                let (rsnd, _) = self.term(snd, fun_ty.as_ref())?;
                let dom = match &fun_ty {
                    Some(Ty::All(a, _)) => Some((**a).clone()),
                    _ => None,
                };
                let (rinhab, _) = self.term(inhab, dom.as_ref())?;
                // Thread the pointwise goal so the body may be `beta`.
                let body_exp = fun_ty.as_ref().and_then(|t| match t {
                    Ty::All(_, b) => Some(Prop::Eq(
                        b.clone(),
                        Box::new(Term::AppIr(
                            Box::new(rfst.lifted(0, 1)),
                            Box::new(Term::Var(0)),
                        )),
                        Box::new(Term::AppIr(
                            Box::new(rsnd.lifted(0, 1)),
                            Box::new(Term::Var(0)),
                        )),
                    )),
                    _ => None,
                });
                self.bind(
                    &body.0,
                    Kind::TermLike,
                    Hyp::Computational(dom.unwrap_or(Ty::Unit)),
                );
                let rbody = self.proof(&body.1, body_exp.as_ref());
                self.unbind(1);
                Ok(Proof::EtaIr {
                    fst: Box::new(rfst),
                    snd: Box::new(rsnd),
                    inhab: Box::new(rinhab),
                    body: Box::new(rbody?),
                })
            }
            SProof::EtaPr {
                fst,
                snd,
                inhab,
                body,
            } => {
                let (rfst, _) = self.term(fst, None)?;
                let fun_ty = self.infer(&rfst);
                let (rsnd, _) = self.term(snd, fun_ty.as_ref())?;
                let hyp = match &fun_ty {
                    Some(Ty::Pre(h, _)) => Some((**h).clone()),
                    _ => None,
                };
                let rinhab = self.proof(inhab, hyp.as_ref())?;
                let body_exp = fun_ty.as_ref().and_then(|t| match t {
                    Ty::Pre(_, b) => Some(Prop::Eq(
                        b.clone(),
                        Box::new(Term::AppPr(
                            Box::new(rfst.lifted(0, 1)),
                            Box::new(Proof::Var(0)),
                        )),
                        Box::new(Term::AppPr(
                            Box::new(rsnd.lifted(0, 1)),
                            Box::new(Proof::Var(0)),
                        )),
                    )),
                    _ => None,
                });
                self.bind(
                    &body.0,
                    Kind::ProofLike,
                    Hyp::Propositional(hyp.unwrap_or(Prop::Top)),
                );
                let rbody = self.proof(&body.1, body_exp.as_ref());
                self.unbind(1);
                Ok(Proof::EtaPr {
                    fst: Box::new(rfst),
                    snd: Box::new(rsnd),
                    inhab: Box::new(rinhab),
                    body: Box::new(rbody?),
                })
            }
        }
    }

    fn let_pr_body_expected(
        &self,
        motive: &Option<Prop>,
        expected: Option<&Prop>,
        pattern: &Term,
    ) -> Option<Prop> {
        match motive {
            Some(m) => m.lifted(1, 2).inst_term(pattern).ok(),
            None => expected.map(|e| e.lifted(0, 2)),
        }
    }

    fn natrec_beta_parts(
        &mut self,
        motive: &(String, super::PTy),
        zero: &Sp<STerm>,
        succ: &(String, String, super::PTerm),
    ) -> Res<(Ty, Term, Term)> {
        self.bind(&motive.0, Kind::TermLike, Hyp::Computational(Ty::Nat));
        let rmotive = self.ty(&motive.1);
        self.unbind(1);
        let rmotive = rmotive?;
        let zexp = rmotive.inst_term(&Term::Zero).ok();
        let (rzero, _) = self.term(zero, zexp.as_ref())?;
        let sexp = rmotive
            .lifted(1, 2)
            .inst_term(&Term::App(Box::new(Term::Succ), Box::new(Term::Var(1))))
            .ok();
        self.bind(&succ.0, Kind::TermLike, Hyp::Computational(Ty::Nat));
        self.bind(&succ.1, Kind::TermLike, Hyp::Computational(rmotive.clone()));
        let rsucc = self.term(&succ.2, sexp.as_ref());
        self.unbind(2);
        Ok((rmotive, rzero, rsucc?.0))
    }
}

/// Right-nested expansion of a trans chain: with endpoints
/// `t_0 ... t_n` and link proofs `p_i : t_i = t_{i+1}`, produce a proof
/// of `t_0 = t_n` via the derived transitivity
/// `subst [x => t_i = x] [t_{i+1}] [t_n] q p`.
fn desugar_trans(ty: &Ty, terms: &[Term], mut proofs: Vec<Proof>) -> Proof {
    let last = terms.len() - 1;
    let mut acc = proofs.pop().expect("trans chain has at least one link");
    for i in (0..proofs.len()).rev() {
        let q = acc;
        let p = proofs.remove(i);
        acc = Proof::Subst {
            motive: Box::new(Prop::Eq(
                Box::new(ty.lifted(0, 1)),
                Box::new(terms[i].lifted(0, 1)),
                Box::new(Term::Var(0)),
            )),
            lhs: Box::new(terms[i + 1].clone()),
            rhs: Box::new(terms[last].clone()),
            eq: Box::new(q),
            body: Box::new(p),
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::parser::parse_file;

    fn resolve_one(src: &str) -> ResolvedKind {
        let decls = parse_file(src).expect("parses");
        let results = resolve_file(&decls);
        let (_, _, last) = results.into_iter().last().expect("one decl");
        last.expect("resolves")
    }

    #[test]
    fn single_link_trans_is_the_evidence_itself() {
        let kind = resolve_one(
            "thm t : forall a:Nat, forall b:Nat, [p : a = b] => a = b :=\n\
             \\|a:Nat|. \\|b:Nat|. \\\\p : a = b. trans [ a ={p} b ]",
        );
        let ResolvedKind::Thm { body, .. } = kind else {
            panic!()
        };
        // Strip the binders: the chain body must be the bare hypothesis.
        let Proof::Gen(_, p) = body else { panic!() };
        let Proof::Gen(_, p) = *p else { panic!() };
        let Proof::ImpIntro(_, p) = *p else { panic!() };
        assert_eq!(*p, Proof::Var(0));
    }

    #[test]
    fn two_link_trans_expands_to_subst() {
        let kind = resolve_one(
            "thm t : forall a:Nat, forall b:Nat, forall c:Nat,\n\
             [p : a = b] => [q : b = c] => a = c :=\n\
             \\|a:Nat|. \\|b:Nat|. \\|c:Nat|. \\\\p : a = b. \\\\q : b = c.\n\
             trans [ a ={p} b ={q} c ]",
        );
        let ResolvedKind::Thm { body, .. } = kind else {
            panic!()
        };
        let mut p = body;
        for _ in 0..3 {
            let Proof::Gen(_, inner) = p else { panic!() };
            p = *inner;
        }
        for _ in 0..2 {
            let Proof::ImpIntro(_, inner) = p else {
                panic!()
            };
            p = *inner;
        }
        // subst [x => a = x] [b] [c] q p
        let Proof::Subst {
            motive,
            lhs,
            rhs,
            eq,
            body,
        } = p
        else {
            panic!("expected the derived transitivity")
        };
        assert_eq!(
            *motive,
            Prop::Eq(
                Box::new(Ty::Nat),
                Box::new(Term::Var(5)),
                Box::new(Term::Var(0))
            )
        );
        assert_eq!(*lhs, Term::Var(3));
        assert_eq!(*rhs, Term::Var(2));
        assert_eq!(*eq, Proof::Var(0));
        assert_eq!(*body, Proof::Var(1));
    }

    #[test]
    fn three_link_trans_nests_rightward() {
        let kind = resolve_one(
            "thm t : forall a:Nat, forall b:Nat, forall c:Nat, forall d:Nat,\n\
             [p : a = b] => [q : b = c] => [r : c = d] => a = d :=\n\
             \\|a:Nat|. \\|b:Nat|. \\|c:Nat|. \\|d:Nat|.\n\
             \\\\p : a = b. \\\\q : b = c. \\\\r : c = d.\n\
             trans [ a ={p} b ={q} c ={r} d ]",
        );
        let ResolvedKind::Thm { body, .. } = kind else {
            panic!()
        };
        let mut p = body;
        for _ in 0..4 {
            let Proof::Gen(_, inner) = p else { panic!() };
            p = *inner;
        }
        for _ in 0..3 {
            let Proof::ImpIntro(_, inner) = p else {
                panic!()
            };
            p = *inner;
        }
        let Proof::Subst { eq, .. } = p else { panic!() };
        assert!(matches!(*eq, Proof::Subst { .. }), "right-nested chain");
    }

    #[test]
    fn forward_references_are_rejected() {
        let decls = parse_file(
            "def uses : Nat := later\n\
             def later : Nat := 0",
        )
        .unwrap();
        let results = resolve_file(&decls);
        assert!(results[0].2.is_err());
        assert!(results[1].2.is_ok());
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let decls = parse_file("def a : Nat := 0\ndef a : Nat := 1").unwrap();
        let results = resolve_file(&decls);
        assert!(results[0].2.is_ok());
        assert!(results[1].2.is_err());
    }

    #[test]
    fn kind_misuse_is_reported() {
        let decls = parse_file(
            "thm t : forall x:Nat, x = x := \\|x:Nat|. rfl x\n\
             def d : Nat := t",
        )
        .unwrap();
        let results = resolve_file(&decls);
        assert!(results[1].2.is_err());
    }

    #[test]
    fn definitions_inline_and_contract() {
        let kind = resolve_one(
            "def id : Nat -> Nat := \\x:Nat. x\n\
             def applied : Nat := id 3",
        );
        let ResolvedKind::Def { body, .. } = kind else {
            panic!()
        };
        // `id 3` contracts to the numeral itself, not to a redex.
        assert_eq!(body, Term::numeral(3));
    }
}
