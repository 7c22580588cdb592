//! The bidirectional checker for all five judgments: context
//! well-formedness, type and proposition well-formedness, term typing
//! and proof typing.
//!
//! Type equality is alpha-equivalence, nothing else: there is no
//! reduction in types, and every beta/eta principle is an explicit
//! axiom whose conclusion is computed from its annotations.
//!
//! Premises the rules state in the upgraded context run in logical
//! mode; upgrading is idempotent, so once a derivation enters logical
//! mode it stays there.

use crate::ctx::{Context, Hyp, LookupError, Mode};
use crate::diag::Diagnostic;
use crate::pretty;
use crate::subst::SubstError;
use crate::syntax::{alpha_eq, Proof, Prop, Term, Ty};

type Res<T> = Result<T, Diagnostic>;

fn diag(rule: &'static str, ctx: &Context, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::new(rule, msg).with_context(pretty::context(ctx))
}

fn mismatch_ty(rule: &'static str, ctx: &Context, expected: &Ty, found: &Ty) -> Diagnostic {
    diag(rule, ctx, "type mismatch").with_expected_found(pretty::ty(expected), pretty::ty(found))
}

fn mismatch_prop(rule: &'static str, ctx: &Context, expected: &Prop, found: &Prop) -> Diagnostic {
    diag(rule, ctx, "proposition mismatch")
        .with_expected_found(pretty::prop(expected), pretty::prop(found))
}

fn lookup_diag(rule: &'static str, ctx: &Context, err: LookupError) -> Diagnostic {
    match err {
        LookupError::OutOfRange { index, len } => diag(
            rule,
            ctx,
            format!("variable index {index} out of range (context has {len} slots)"),
        ),
        LookupError::GhostInComputationalPosition { index } => diag(
            rule,
            ctx,
            format!(
                "ghost variable (index {index}) used in a computational position; \
                 ghost variables may appear in propositions and proofs but not in terms"
            ),
        ),
        LookupError::WrongKind { index } => diag(
            rule,
            ctx,
            format!("variable index {index} refers to a hypothesis of the wrong kind"),
        ),
    }
}

fn subst_diag(rule: &'static str, ctx: &Context, err: SubstError) -> Diagnostic {
    diag(rule, ctx, format!("malformed substitution: {err}"))
}

/// One-binder instantiation helpers that turn kind errors into diagnostics.
macro_rules! inst {
    ($rule:expr, $ctx:expr, $body:expr, term $arg:expr) => {
        $body
            .inst_term($arg)
            .map_err(|e| subst_diag($rule, $ctx, e))
    };
    ($rule:expr, $ctx:expr, $body:expr, proof $arg:expr) => {
        $body
            .inst_proof($arg)
            .map_err(|e| subst_diag($rule, $ctx, e))
    };
}

/// `Gamma ok` (context well-formedness).
pub fn wf_ctx(ctx: &Context) -> Res<()> {
    let mut prefix = Context::empty();
    for h in ctx.iter() {
        match h {
            Hyp::Computational(ty) | Hyp::Ghost(ty) => wf_ty(&prefix, ty)?,
            Hyp::Propositional(p) => wf_prop(&prefix, p)?,
        }
        prefix = prefix.extended(h.clone());
    }
    Ok(())
}

/// `Gamma |- A ty`.
///
/// Well-formedness takes no mode: the only embedded term judgments are
/// the two sides of an equality, which always check in the upgraded
/// context.
pub fn wf_ty(ctx: &Context, ty: &Ty) -> Res<()> {
    match ty {
        Ty::Unit | Ty::Nat => Ok(()),
        Ty::Fn(a, b) | Ty::Pair(a, b) | Ty::All(a, b) | Ty::Ex(a, b) => {
            wf_ty(ctx, a)?;
            wf_ty(&ctx.extended(Hyp::Computational((**a).clone())), b)
        }
        Ty::Sum(a, b) => {
            wf_ty(ctx, a)?;
            wf_ty(ctx, b)
        }
        Ty::Pre(p, a) => {
            wf_prop(ctx, p)?;
            wf_ty(&ctx.extended(Hyp::Propositional((**p).clone())), a)
        }
        Ty::Subset(a, p) => {
            wf_ty(ctx, a)?;
            wf_prop(&ctx.extended(Hyp::Computational((**a).clone())), p)
        }
    }
}

/// `Gamma |- phi pr`.
pub fn wf_prop(ctx: &Context, p: &Prop) -> Res<()> {
    match p {
        Prop::Top | Prop::Bot => Ok(()),
        Prop::Imp(a, b) | Prop::And(a, b) => {
            wf_prop(ctx, a)?;
            wf_prop(&ctx.extended(Hyp::Propositional((**a).clone())), b)
        }
        Prop::Or(a, b) => {
            wf_prop(ctx, a)?;
            wf_prop(ctx, b)
        }
        Prop::All(t, q) | Prop::Ex(t, q) => {
            wf_ty(ctx, t)?;
            wf_prop(&ctx.extended(Hyp::Computational((**t).clone())), q)
        }
        Prop::Eq(t, a, b) => {
            wf_ty(ctx, t)?;
            check_term(ctx, Mode::Logical, a, t)?;
            check_term(ctx, Mode::Logical, b, t)
        }
    }
}

/// Reserve headroom before each recursive descent; checked proofs can
/// nest deeply once definitions are inlined.
fn grow<T>(f: impl FnOnce() -> T) -> T {
    stacker::maybe_grow(1024 * 1024, 16 * 1024 * 1024, f)
}

/// Synthesizes a type for `t`, or reports why it cannot.
pub fn infer_term(ctx: &Context, mode: Mode, t: &Term) -> Res<Ty> {
    grow(|| infer_term_inner(ctx, mode, t))
}

fn infer_term_inner(ctx: &Context, mode: Mode, t: &Term) -> Res<Ty> {
    match t {
        Term::Var(i) => ctx
            .lookup_term(*i, mode)
            .map_err(|e| lookup_diag("Var", ctx, e)),
        Term::Unit => Ok(Ty::Unit),
        Term::Zero => Ok(Ty::Nat),
        Term::Succ => Ok(Ty::Fn(Box::new(Ty::Nat), Box::new(Ty::Nat))),
        Term::Lam(a, e) => {
            wf_ty(ctx, a)?;
            let inner = ctx.extended(Hyp::Computational((**a).clone()));
            let b = infer_term(&inner, mode, e)?;
            Ok(Ty::Fn(a.clone(), Box::new(b)))
        }
        Term::App(f, arg) => {
            let fun_ty = infer_term(ctx, mode, f)?;
            match fun_ty {
                Ty::Fn(a, b) => {
                    check_term(ctx, mode, arg, &a)?;
                    inst!("App", ctx, b, term arg)
                }
                other => Err(diag(
                    "App",
                    ctx,
                    format!("applied a term of non-function type {}", pretty::ty(&other)),
                )),
            }
        }
        Term::LamPr(h, e) => {
            wf_prop(ctx, h)?;
            let inner = ctx.extended(Hyp::Propositional((**h).clone()));
            let b = infer_term(&inner, mode, e)?;
            Ok(Ty::Pre(h.clone(), Box::new(b)))
        }
        Term::AppPr(f, p) => {
            let fun_ty = infer_term(ctx, mode, f)?;
            match fun_ty {
                Ty::Pre(h, b) => {
                    check_proof(ctx, mode, p, &h)?;
                    inst!("App-Pr", ctx, b, proof p)
                }
                other => Err(diag(
                    "App-Pr",
                    ctx,
                    format!(
                        "proof application needs a precondition type, found {}",
                        pretty::ty(&other)
                    ),
                )),
            }
        }
        Term::LamIr(a, e) => {
            wf_ty(ctx, a)?;
            let inner = ctx.extended(Hyp::Ghost((**a).clone()));
            let b = infer_term(&inner, mode, e)?;
            Ok(Ty::All(a.clone(), Box::new(b)))
        }
        Term::AppIr(f, arg) => {
            let fun_ty = infer_term(ctx, mode, f)?;
            match fun_ty {
                Ty::All(a, b) => {
                    check_term(ctx, Mode::Logical, arg, &a)?;
                    inst!("App-Ir", ctx, b, term arg)
                }
                other => Err(diag(
                    "App-Ir",
                    ctx,
                    format!(
                        "ghost application needs an intersection type, found {}",
                        pretty::ty(&other)
                    ),
                )),
            }
        }
        Term::LetPair {
            annot,
            motive,
            scrut,
            body,
        } => {
            wf_ty(ctx, annot)?;
            let (a, b) = match &**annot {
                Ty::Pair(a, b) => (a.clone(), b.clone()),
                other => {
                    return Err(diag(
                        "Let-Pair",
                        ctx,
                        format!(
                            "let-pair annotation must be a pair type, found {}",
                            pretty::ty(other)
                        ),
                    ))
                }
            };
            check_term(ctx, mode, scrut, annot)?;
            let inner = ctx
                .extended(Hyp::Computational((*a).clone()))
                .extended(Hyp::Computational((*b).clone()));
            let pattern = Term::Pair(Box::new(Term::Var(1)), Box::new(Term::Var(0)));
            let result = |c: &Ty| inst!("Let-Pair", ctx, c, term scrut);
            match motive {
                Some(c) => {
                    let mctx = ctx.extended(Hyp::Computational((**annot).clone()));
                    wf_ty(&mctx, c)?;
                    let lifted = c.lifted(1, 2);
                    let target = inst!("Let-Pair", &inner, &lifted, term & pattern)?;
                    check_term(&inner, mode, body, &target)?;
                    result(c)
                }
                None => {
                    let c = infer_term(&inner, mode, body)?;
                    c.strengthened(0, 2).map_err(|_| {
                        diag(
                            "Let-Pair",
                            ctx,
                            "result type depends on the bound variables; annotate a motive",
                        )
                    })
                }
            }
        }
        Term::LetSet {
            annot,
            motive,
            scrut,
            body,
        } => {
            wf_ty(ctx, annot)?;
            let (a, phi) = match &**annot {
                Ty::Subset(a, p) => (a.clone(), p.clone()),
                other => {
                    return Err(diag(
                        "Let-Set",
                        ctx,
                        format!(
                            "let-set annotation must be a subset type, found {}",
                            pretty::ty(other)
                        ),
                    ))
                }
            };
            check_term(ctx, mode, scrut, annot)?;
            let inner = ctx
                .extended(Hyp::Computational((*a).clone()))
                .extended(Hyp::Propositional((*phi).clone()));
            let pattern = Term::SetIntro(Box::new(Term::Var(1)), Box::new(Proof::Var(0)));
            match motive {
                Some(c) => {
                    let mctx = ctx.extended(Hyp::Computational((**annot).clone()));
                    wf_ty(&mctx, c)?;
                    let lifted = c.lifted(1, 2);
                    let target = inst!("Let-Set", &inner, &lifted, term & pattern)?;
                    check_term(&inner, mode, body, &target)?;
                    inst!("Let-Set", ctx, c, term scrut)
                }
                None => {
                    let c = infer_term(&inner, mode, body)?;
                    c.strengthened(0, 2).map_err(|_| {
                        diag(
                            "Let-Set",
                            ctx,
                            "result type depends on the bound variables; annotate a motive",
                        )
                    })
                }
            }
        }
        Term::LetRepr {
            annot,
            motive,
            scrut,
            body,
        } => {
            wf_ty(ctx, annot)?;
            let (a, b) = match &**annot {
                Ty::Ex(a, b) => (a.clone(), b.clone()),
                other => {
                    return Err(diag(
                        "Let-Ir",
                        ctx,
                        format!(
                            "let annotation must be a union type, found {}",
                            pretty::ty(other)
                        ),
                    ))
                }
            };
            check_term(ctx, mode, scrut, annot)?;
            let inner = ctx
                .extended(Hyp::Ghost((*a).clone()))
                .extended(Hyp::Computational((*b).clone()));
            let pattern = Term::Repr(Box::new(Term::Var(1)), Box::new(Term::Var(0)));
            match motive {
                Some(c) => {
                    let mctx = ctx.extended(Hyp::Computational((**annot).clone()));
                    wf_ty(&mctx, c)?;
                    let lifted = c.lifted(1, 2);
                    let target = inst!("Let-Ir", &inner, &lifted, term & pattern)?;
                    check_term(&inner, mode, body, &target)?;
                    inst!("Let-Ir", ctx, c, term scrut)
                }
                None => {
                    let c = infer_term(&inner, mode, body)?;
                    c.strengthened(0, 2).map_err(|_| {
                        diag(
                            "Let-Ir",
                            ctx,
                            "result type depends on the bound variables; annotate a motive",
                        )
                    })
                }
            }
        }
        Term::Cases {
            motive,
            scrut,
            left,
            right,
        } => {
            let sum = infer_term(ctx, mode, scrut)?;
            let (a, b) = match &sum {
                Ty::Sum(a, b) => (a.clone(), b.clone()),
                other => {
                    return Err(diag(
                        "Cases",
                        ctx,
                        format!(
                            "case scrutinee must have a sum type, found {}",
                            pretty::ty(other)
                        ),
                    ))
                }
            };
            let mctx = ctx.extended(Hyp::Computational(sum.clone()));
            wf_ty(&mctx, motive)?;
            let lctx = ctx.extended(Hyp::Computational((*a).clone()));
            let ltarget = inst!(
                "Cases",
                &lctx,
                &motive.lifted(1, 1),
                term & Term::Inl(Box::new(Term::Var(0)))
            )?;
            check_term(&lctx, mode, left, &ltarget)?;
            let rctx = ctx.extended(Hyp::Computational((*b).clone()));
            let rtarget = inst!(
                "Cases",
                &rctx,
                &motive.lifted(1, 1),
                term & Term::Inr(Box::new(Term::Var(0)))
            )?;
            check_term(&rctx, mode, right, &rtarget)?;
            inst!("Cases", ctx, motive, term scrut)
        }
        Term::Natrec {
            motive,
            scrut,
            zero,
            succ,
        } => {
            let mctx = ctx.extended(Hyp::Computational(Ty::Nat));
            wf_ty(&mctx, motive)?;
            check_term(ctx, mode, scrut, &Ty::Nat)?;
            let ztarget = inst!("Natrec", ctx, motive, term & Term::Zero)?;
            check_term(ctx, mode, zero, &ztarget)?;
            // Successor case: |n: Nat| ghost, then y at the motive itself.
            let inner = ctx
                .extended(Hyp::Ghost(Ty::Nat))
                .extended(Hyp::Computational((**motive).clone()));
            let succ_n = Term::App(Box::new(Term::Succ), Box::new(Term::Var(1)));
            let starget = inst!("Natrec", &inner, &motive.lifted(1, 2), term & succ_n)?;
            check_term(&inner, mode, succ, &starget)?;
            inst!("Natrec", ctx, motive, term scrut)
        }
        Term::Pair(_, _) => Err(diag(
            "Pair",
            ctx,
            "pairs do not synthesize; a pair type annotation is required",
        )),
        Term::Inl(_) => Err(diag(
            "Inl",
            ctx,
            "inl does not synthesize; annotate the sum type",
        )),
        Term::Inr(_) => Err(diag(
            "Inr",
            ctx,
            "inr does not synthesize; annotate the sum type",
        )),
        Term::SetIntro(_, _) => Err(diag(
            "Set",
            ctx,
            "subset introduction does not synthesize; a subset type annotation is required",
        )),
        Term::Repr(_, _) => Err(diag(
            "Pair-Ir",
            ctx,
            "union introduction does not synthesize; a union type annotation is required",
        )),
        Term::Absurd(_) => Err(diag(
            "Absurd",
            ctx,
            "absurd does not synthesize; it checks against any type",
        )),
    }
}

/// Checks `t` against `expected`.
pub fn check_term(ctx: &Context, mode: Mode, t: &Term, expected: &Ty) -> Res<()> {
    grow(|| check_term_inner(ctx, mode, t, expected))
}

fn check_term_inner(ctx: &Context, mode: Mode, t: &Term, expected: &Ty) -> Res<()> {
    match (t, expected) {
        (Term::Lam(dom, body), Ty::Fn(a, b)) => {
            wf_ty(ctx, dom)?;
            if !alpha_eq(&**dom, &**a) {
                return Err(mismatch_ty("Lam", ctx, a, dom));
            }
            let inner = ctx.extended(Hyp::Computational((**dom).clone()));
            check_term(&inner, mode, body, b)
        }
        (Term::LamPr(hyp, body), Ty::Pre(h, b)) => {
            wf_prop(ctx, hyp)?;
            if !alpha_eq(&**hyp, &**h) {
                return Err(mismatch_prop("Lam-Pr", ctx, h, hyp));
            }
            let inner = ctx.extended(Hyp::Propositional((**hyp).clone()));
            check_term(&inner, mode, body, b)
        }
        (Term::LamIr(dom, body), Ty::All(a, b)) => {
            wf_ty(ctx, dom)?;
            if !alpha_eq(&**dom, &**a) {
                return Err(mismatch_ty("Lam-Ir", ctx, a, dom));
            }
            let inner = ctx.extended(Hyp::Ghost((**dom).clone()));
            check_term(&inner, mode, body, b)
        }
        (Term::Pair(l, r), Ty::Pair(a, b)) => {
            check_term(ctx, mode, l, a)?;
            let snd_ty = inst!("Pair", ctx, b, term l)?;
            check_term(ctx, mode, r, &snd_ty)
        }
        (Term::Pair(_, _), other) => Err(diag(
            "Pair",
            ctx,
            format!("pair checked against non-pair type {}", pretty::ty(other)),
        )),
        (Term::Inl(e), Ty::Sum(a, _)) => check_term(ctx, mode, e, a),
        (Term::Inr(e), Ty::Sum(_, b)) => check_term(ctx, mode, e, b),
        (Term::Inl(_), other) | (Term::Inr(_), other) => Err(diag(
            "Inl",
            ctx,
            format!(
                "injection checked against non-sum type {}",
                pretty::ty(other)
            ),
        )),
        (Term::SetIntro(a, p), Ty::Subset(base, phi)) => {
            check_term(ctx, mode, a, base)?;
            let target = inst!("Set", ctx, phi, term a)?;
            check_proof(ctx, mode, p, &target)
        }
        (Term::SetIntro(_, _), other) => Err(diag(
            "Set",
            ctx,
            format!("subset introduction checked against {}", pretty::ty(other)),
        )),
        (Term::Repr(a, b), Ty::Ex(dom, body)) => {
            check_term(ctx, Mode::Logical, a, dom)?;
            let target = inst!("Pair-Ir", ctx, body, term a)?;
            check_term(ctx, mode, b, &target)
        }
        (Term::Repr(_, _), other) => Err(diag(
            "Pair-Ir",
            ctx,
            format!("union introduction checked against {}", pretty::ty(other)),
        )),
        (Term::Absurd(p), _) => check_proof(ctx, mode, p, &Prop::Bot),
        // Let forms without a motive can push the expected type down
        // (the non-dependent reading).
        (
            Term::LetPair {
                annot,
                motive: None,
                scrut,
                body,
            },
            _,
        ) => {
            wf_ty(ctx, annot)?;
            let (a, b) = match &**annot {
                Ty::Pair(a, b) => (a.clone(), b.clone()),
                other => {
                    return Err(diag(
                        "Let-Pair",
                        ctx,
                        format!(
                            "let-pair annotation must be a pair type, found {}",
                            pretty::ty(other)
                        ),
                    ))
                }
            };
            check_term(ctx, mode, scrut, annot)?;
            let inner = ctx
                .extended(Hyp::Computational((*a).clone()))
                .extended(Hyp::Computational((*b).clone()));
            check_term(&inner, mode, body, &expected.lifted(0, 2))
        }
        (
            Term::LetSet {
                annot,
                motive: None,
                scrut,
                body,
            },
            _,
        ) => {
            wf_ty(ctx, annot)?;
            let (a, phi) = match &**annot {
                Ty::Subset(a, p) => (a.clone(), p.clone()),
                other => {
                    return Err(diag(
                        "Let-Set",
                        ctx,
                        format!(
                            "let-set annotation must be a subset type, found {}",
                            pretty::ty(other)
                        ),
                    ))
                }
            };
            check_term(ctx, mode, scrut, annot)?;
            let inner = ctx
                .extended(Hyp::Computational((*a).clone()))
                .extended(Hyp::Propositional((*phi).clone()));
            check_term(&inner, mode, body, &expected.lifted(0, 2))
        }
        (
            Term::LetRepr {
                annot,
                motive: None,
                scrut,
                body,
            },
            _,
        ) => {
            wf_ty(ctx, annot)?;
            let (a, b) = match &**annot {
                Ty::Ex(a, b) => (a.clone(), b.clone()),
                other => {
                    return Err(diag(
                        "Let-Ir",
                        ctx,
                        format!(
                            "let annotation must be a union type, found {}",
                            pretty::ty(other)
                        ),
                    ))
                }
            };
            check_term(ctx, mode, scrut, annot)?;
            let inner = ctx
                .extended(Hyp::Ghost((*a).clone()))
                .extended(Hyp::Computational((*b).clone()));
            check_term(&inner, mode, body, &expected.lifted(0, 2))
        }
        _ => {
            let found = infer_term(ctx, mode, t)?;
            if alpha_eq(&found, expected) {
                Ok(())
            } else {
                Err(mismatch_ty(rule_of_term(t), ctx, expected, &found))
            }
        }
    }
}

fn rule_of_term(t: &Term) -> &'static str {
    match t {
        Term::Var(_) => "Var",
        Term::Unit => "Unit",
        Term::Zero => "Zero",
        Term::Succ => "Succ",
        Term::Lam(_, _) => "Lam",
        Term::App(_, _) => "App",
        Term::Pair(_, _) => "Pair",
        Term::LetPair { .. } => "Let-Pair",
        Term::Inl(_) => "Inl",
        Term::Inr(_) => "Inr",
        Term::Cases { .. } => "Cases",
        Term::LamPr(_, _) => "Lam-Pr",
        Term::AppPr(_, _) => "App-Pr",
        Term::SetIntro(_, _) => "Set",
        Term::LetSet { .. } => "Let-Set",
        Term::LamIr(_, _) => "Lam-Ir",
        Term::AppIr(_, _) => "App-Ir",
        Term::Repr(_, _) => "Pair-Ir",
        Term::LetRepr { .. } => "Let-Ir",
        Term::Natrec { .. } => "Natrec",
        Term::Absurd(_) => "Absurd",
    }
}

/// Synthesizes the proposition proved by `p`.
pub fn infer_proof(ctx: &Context, mode: Mode, p: &Proof) -> Res<Prop> {
    grow(|| infer_proof_inner(ctx, mode, p))
}

fn infer_proof_inner(ctx: &Context, mode: Mode, p: &Proof) -> Res<Prop> {
    match p {
        Proof::Var(i) => ctx
            .lookup_proof(*i)
            .map_err(|e| lookup_diag("Var-Pr", ctx, e)),
        Proof::TrueIntro => Ok(Prop::Top),
        Proof::ImpIntro(h, q) => {
            wf_prop(ctx, h)?;
            let inner = ctx.extended(Hyp::Propositional((**h).clone()));
            let b = infer_proof(&inner, mode, q)?;
            Ok(Prop::Imp(h.clone(), Box::new(b)))
        }
        Proof::App(f, a) => {
            let fun = infer_proof(ctx, mode, f)?;
            match fun {
                Prop::Imp(h, b) => {
                    check_proof(ctx, mode, a, &h)?;
                    inst!("MP", ctx, b, proof a)
                }
                other => Err(diag(
                    "MP",
                    ctx,
                    format!(
                        "modus ponens needs an implication, found {}",
                        pretty::prop(&other)
                    ),
                )),
            }
        }
        Proof::Gen(t, q) => {
            wf_ty(ctx, t)?;
            let inner = ctx.extended(Hyp::Ghost((**t).clone()));
            let b = infer_proof(&inner, mode, q)?;
            Ok(Prop::All(t.clone(), Box::new(b)))
        }
        Proof::Spec(f, a) => {
            let fun = infer_proof(ctx, mode, f)?;
            match fun {
                Prop::All(t, b) => {
                    check_term(ctx, Mode::Logical, a, &t)?;
                    inst!("Spec", ctx, b, term a)
                }
                other => Err(diag(
                    "Spec",
                    ctx,
                    format!(
                        "specialization needs a universal, found {}",
                        pretty::prop(&other)
                    ),
                )),
            }
        }
        Proof::LetAnd {
            annot,
            motive,
            scrut,
            body,
        } => {
            wf_prop(ctx, annot)?;
            let (phi, psi) = match &**annot {
                Prop::And(a, b) => (a.clone(), b.clone()),
                other => {
                    return Err(diag(
                        "Let-And",
                        ctx,
                        format!(
                            "let annotation must be a conjunction, found {}",
                            pretty::prop(other)
                        ),
                    ))
                }
            };
            check_proof(ctx, mode, scrut, annot)?;
            let inner = ctx
                .extended(Hyp::Propositional((*phi).clone()))
                .extended(Hyp::Propositional((*psi).clone()));
            let pattern = Proof::AndIntro(Box::new(Proof::Var(1)), Box::new(Proof::Var(0)));
            match motive {
                Some(th) => {
                    let mctx = ctx.extended(Hyp::Propositional((**annot).clone()));
                    wf_prop(&mctx, th)?;
                    let lifted = th.lifted(1, 2);
                    let target = lifted
                        .inst_proof(&pattern)
                        .map_err(|e| subst_diag("Let-And", ctx, e))?;
                    check_proof(&inner, mode, body, &target)?;
                    inst!("Let-And", ctx, th, proof scrut)
                }
                None => {
                    let th = infer_proof(&inner, mode, body)?;
                    th.strengthened(0, 2).map_err(|_| {
                        diag(
                            "Let-And",
                            ctx,
                            "result depends on the bound proofs; annotate a motive",
                        )
                    })
                }
            }
        }
        Proof::CasesOr {
            motive,
            scrut,
            left,
            right,
        } => {
            let sum = infer_proof(ctx, mode, scrut)?;
            let (phi, psi) = match &sum {
                Prop::Or(a, b) => (a.clone(), b.clone()),
                other => {
                    return Err(diag(
                        "Cases-Or",
                        ctx,
                        format!(
                            "case scrutinee must prove a disjunction, found {}",
                            pretty::prop(other)
                        ),
                    ))
                }
            };
            let mctx = ctx.extended(Hyp::Propositional(sum.clone()));
            wf_prop(&mctx, motive)?;
            let lctx = ctx.extended(Hyp::Propositional((*phi).clone()));
            let ltarget = motive
                .lifted(1, 1)
                .inst_proof(&Proof::Orl(Box::new(Proof::Var(0))))
                .map_err(|e| subst_diag("Cases-Or", ctx, e))?;
            check_proof(&lctx, mode, left, &ltarget)?;
            let rctx = ctx.extended(Hyp::Propositional((*psi).clone()));
            let rtarget = motive
                .lifted(1, 1)
                .inst_proof(&Proof::Orr(Box::new(Proof::Var(0))))
                .map_err(|e| subst_diag("Cases-Or", ctx, e))?;
            check_proof(&rctx, mode, right, &rtarget)?;
            inst!("Cases-Or", ctx, motive, proof scrut)
        }
        Proof::LetExists {
            annot,
            motive,
            scrut,
            body,
        } => {
            wf_prop(ctx, annot)?;
            let (dom, phi) = match &**annot {
                Prop::Ex(t, q) => (t.clone(), q.clone()),
                other => {
                    return Err(diag(
                        "Let-Exists",
                        ctx,
                        format!(
                            "let annotation must be an existential, found {}",
                            pretty::prop(other)
                        ),
                    ))
                }
            };
            check_proof(ctx, mode, scrut, annot)?;
            // The witness hypothesis is computational here.
            let inner = ctx
                .extended(Hyp::Computational((*dom).clone()))
                .extended(Hyp::Propositional((*phi).clone()));
            let pattern = Proof::Wit(Box::new(Term::Var(1)), Box::new(Proof::Var(0)));
            match motive {
                Some(psi) => {
                    let mctx = ctx.extended(Hyp::Propositional((**annot).clone()));
                    wf_prop(&mctx, psi)?;
                    let lifted = psi.lifted(1, 2);
                    let target = lifted
                        .inst_proof(&pattern)
                        .map_err(|e| subst_diag("Let-Exists", ctx, e))?;
                    check_proof(&inner, mode, body, &target)?;
                    inst!("Let-Exists", ctx, psi, proof scrut)
                }
                None => {
                    let psi = infer_proof(&inner, mode, body)?;
                    psi.strengthened(0, 2).map_err(|_| {
                        diag(
                            "Let-Exists",
                            ctx,
                            "result depends on the bound variables; annotate a motive",
                        )
                    })
                }
            }
        }
        Proof::LetPairPr {
            annot,
            motive,
            scrut,
            body,
        } => {
            wf_ty(ctx, annot)?;
            let (a, b) = match &**annot {
                Ty::Pair(a, b) => (a.clone(), b.clone()),
                other => {
                    return Err(diag(
                        "Let-Pair-Pr",
                        ctx,
                        format!(
                            "let annotation must be a pair type, found {}",
                            pretty::ty(other)
                        ),
                    ))
                }
            };
            check_term(ctx, Mode::Logical, scrut, annot)?;
            let inner = ctx
                .extended(Hyp::Computational((*a).clone()))
                .extended(Hyp::Computational((*b).clone()));
            let pattern = Term::Pair(Box::new(Term::Var(1)), Box::new(Term::Var(0)));
            self::let_pr_result(
                ctx,
                mode,
                "Let-Pair-Pr",
                annot,
                motive,
                scrut,
                body,
                &inner,
                &pattern,
            )
        }
        Proof::LetSetPr {
            annot,
            motive,
            scrut,
            body,
        } => {
            wf_ty(ctx, annot)?;
            let (a, phi) = match &**annot {
                Ty::Subset(a, p) => (a.clone(), p.clone()),
                other => {
                    return Err(diag(
                        "Let-Set-Pr",
                        ctx,
                        format!(
                            "let annotation must be a subset type, found {}",
                            pretty::ty(other)
                        ),
                    ))
                }
            };
            check_term(ctx, Mode::Logical, scrut, annot)?;
            let inner = ctx
                .extended(Hyp::Computational((*a).clone()))
                .extended(Hyp::Propositional((*phi).clone()));
            let pattern = Term::SetIntro(Box::new(Term::Var(1)), Box::new(Proof::Var(0)));
            self::let_pr_result(
                ctx,
                mode,
                "Let-Set-Pr",
                annot,
                motive,
                scrut,
                body,
                &inner,
                &pattern,
            )
        }
        Proof::LetReprPr {
            annot,
            motive,
            scrut,
            body,
        } => {
            wf_ty(ctx, annot)?;
            let (a, b) = match &**annot {
                Ty::Ex(a, b) => (a.clone(), b.clone()),
                other => {
                    return Err(diag(
                        "Let-Ir-Pr",
                        ctx,
                        format!(
                            "let annotation must be a union type, found {}",
                            pretty::ty(other)
                        ),
                    ))
                }
            };
            check_term(ctx, Mode::Logical, scrut, annot)?;
            let inner = ctx
                .extended(Hyp::Computational((*a).clone()))
                .extended(Hyp::Computational((*b).clone()));
            let pattern = Term::Repr(Box::new(Term::Var(1)), Box::new(Term::Var(0)));
            self::let_pr_result(
                ctx,
                mode,
                "Let-Ir-Pr",
                annot,
                motive,
                scrut,
                body,
                &inner,
                &pattern,
            )
        }
        Proof::Subst {
            motive,
            lhs,
            rhs,
            eq,
            body,
        } => {
            let eq_prop = infer_proof(ctx, mode, eq)?;
            let elem_ty = match &eq_prop {
                Prop::Eq(t, a, b) => {
                    if !alpha_eq(&**a, &**lhs) || !alpha_eq(&**b, &**rhs) {
                        return Err(mismatch_prop(
                            "Subst",
                            ctx,
                            &Prop::Eq(
                                t.clone(),
                                Box::new((**lhs).clone()),
                                Box::new((**rhs).clone()),
                            ),
                            &eq_prop,
                        ));
                    }
                    t.clone()
                }
                other => {
                    return Err(diag(
                        "Subst",
                        ctx,
                        format!(
                            "substitution needs an equality proof, found {}",
                            pretty::prop(other)
                        ),
                    ))
                }
            };
            let mctx = ctx.extended(Hyp::Computational((*elem_ty).clone()));
            wf_prop(&mctx, motive)?;
            let base_target = inst!("Subst", ctx, motive, term lhs)?;
            check_proof(ctx, mode, body, &base_target)?;
            inst!("Subst", ctx, motive, term rhs)
        }
        Proof::CasesPr {
            motive,
            scrut,
            left,
            right,
        } => {
            // The scrutinee types in the plain context here, unlike
            // induction, whose subject may mention ghosts.
            let sum = infer_term(ctx, mode, scrut)?;
            let (a, b) = match &sum {
                Ty::Sum(a, b) => (a.clone(), b.clone()),
                other => {
                    return Err(diag(
                        "Cases-Pr",
                        ctx,
                        format!(
                            "case scrutinee must have a sum type, found {}",
                            pretty::ty(other)
                        ),
                    ))
                }
            };
            let mctx = ctx.extended(Hyp::Computational(sum.clone()));
            wf_prop(&mctx, motive)?;
            let lctx = ctx.extended(Hyp::Computational((*a).clone()));
            let ltarget = inst!(
                "Cases-Pr",
                &lctx,
                &motive.lifted(1, 1),
                term & Term::Inl(Box::new(Term::Var(0)))
            )?;
            check_proof(&lctx, mode, left, &ltarget)?;
            let rctx = ctx.extended(Hyp::Computational((*b).clone()));
            let rtarget = inst!(
                "Cases-Pr",
                &rctx,
                &motive.lifted(1, 1),
                term & Term::Inr(Box::new(Term::Var(0)))
            )?;
            check_proof(&rctx, mode, right, &rtarget)?;
            inst!("Cases-Pr", ctx, motive, term scrut)
        }
        Proof::Ind {
            motive,
            scrut,
            zero,
            succ,
        } => {
            let mctx = ctx.extended(Hyp::Computational(Ty::Nat));
            wf_prop(&mctx, motive)?;
            check_term(ctx, Mode::Logical, scrut, &Ty::Nat)?;
            let ztarget = inst!("Ind", ctx, motive, term & Term::Zero)?;
            check_proof(ctx, mode, zero, &ztarget)?;
            let inner = ctx
                .extended(Hyp::Computational(Ty::Nat))
                .extended(Hyp::Propositional((**motive).clone()));
            let succ_n = Term::App(Box::new(Term::Succ), Box::new(Term::Var(1)));
            let starget = inst!("Ind", &inner, &motive.lifted(1, 2), term & succ_n)?;
            check_proof(&inner, mode, succ, &starget)?;
            inst!("Ind", ctx, motive, term scrut)
        }
        // Axioms. Their term and proof premises all live in the
        // upgraded context, so they run in logical mode.
        Proof::Rfl(a) => {
            let ty = infer_term(ctx, Mode::Logical, a)?;
            Ok(Prop::Eq(
                Box::new(ty),
                Box::new((**a).clone()),
                Box::new((**a).clone()),
            ))
        }
        Proof::Uniq(a) => {
            check_term(ctx, Mode::Logical, a, &Ty::Unit)?;
            Ok(Prop::Eq(
                Box::new(Ty::Unit),
                Box::new((**a).clone()),
                Box::new(Term::Unit),
            ))
        }
        Proof::Discr(a, b, q) => {
            let eq_prop = infer_proof(ctx, mode, q)?;
            match &eq_prop {
                Prop::Eq(t, l, r) => {
                    let ok = matches!(&**t, Ty::Sum(_, _))
                        && alpha_eq(&**l, &Term::Inl(a.clone()))
                        && alpha_eq(&**r, &Term::Inr(b.clone()));
                    if !ok {
                        return Err(diag(
                            "Discr",
                            ctx,
                            format!(
                                "discr needs a proof of inl a = inr b at a sum type, found {}",
                                pretty::prop(&eq_prop)
                            ),
                        ));
                    }
                    if let Ty::Sum(l_ty, r_ty) = &**t {
                        check_term(ctx, Mode::Logical, a, l_ty)?;
                        check_term(ctx, Mode::Logical, b, r_ty)?;
                    }
                    Ok(Prop::Bot)
                }
                other => Err(diag(
                    "Discr",
                    ctx,
                    format!(
                        "discr needs an equality proof, found {}",
                        pretty::prop(other)
                    ),
                )),
            }
        }
        Proof::BetaPr { hyp, body, arg } => {
            wf_prop(ctx, hyp)?;
            let inner = ctx.extended(Hyp::Propositional((**hyp).clone()));
            let body_ty = infer_term(&inner, Mode::Logical, body)?;
            check_proof(ctx, mode, arg, hyp)?;
            let lhs = Term::AppPr(
                Box::new(Term::LamPr(hyp.clone(), body.clone())),
                Box::new((**arg).clone()),
            );
            let rhs = inst!("β_pr", ctx, body, proof arg)?;
            let ty = inst!("β_pr", ctx, &body_ty, proof arg)?;
            Ok(Prop::Eq(Box::new(ty), Box::new(lhs), Box::new(rhs)))
        }
        Proof::BetaTy { dom, body, arg } => {
            wf_ty(ctx, dom)?;
            let inner = ctx.extended(Hyp::Computational((**dom).clone()));
            let body_ty = infer_term(&inner, Mode::Logical, body)?;
            check_term(ctx, Mode::Logical, arg, dom)?;
            let lhs = Term::App(
                Box::new(Term::Lam(dom.clone(), body.clone())),
                Box::new((**arg).clone()),
            );
            let rhs = inst!("β_ty", ctx, body, term arg)?;
            let ty = inst!("β_ty", ctx, &body_ty, term arg)?;
            Ok(Prop::Eq(Box::new(ty), Box::new(lhs), Box::new(rhs)))
        }
        Proof::BetaIr { dom, body, arg } => {
            wf_ty(ctx, dom)?;
            // The conclusion wraps the body in a ghost lambda, so the
            // premise must keep the new binder ghost. The outer context
            // is upgraded for real here: the mode flag alone cannot say
            // "everything upgraded except the new hypothesis".
            let inner = ctx.upgrade().extended(Hyp::Ghost((**dom).clone()));
            let body_ty = infer_term(&inner, Mode::Computational, body)?;
            check_term(ctx, Mode::Logical, arg, dom)?;
            let lhs = Term::AppIr(
                Box::new(Term::LamIr(dom.clone(), body.clone())),
                Box::new((**arg).clone()),
            );
            let rhs = inst!("β_ir", ctx, body, term arg)?;
            let ty = inst!("β_ir", ctx, &body_ty, term arg)?;
            Ok(Prop::Eq(Box::new(ty), Box::new(lhs), Box::new(rhs)))
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
            let is_left = matches!(p, Proof::BetaLeft { .. });
            let rule = if is_left { "β_left" } else { "β_right" };
            wf_ty(ctx, sum)?;
            let (a, b) = match &**sum {
                Ty::Sum(a, b) => (a.clone(), b.clone()),
                other => {
                    return Err(diag(
                        rule,
                        ctx,
                        format!("annotation must be a sum type, found {}", pretty::ty(other)),
                    ))
                }
            };
            let mctx = ctx.extended(Hyp::Computational((**sum).clone()));
            wf_ty(&mctx, motive)?;
            let lctx = ctx.extended(Hyp::Computational((*a).clone()));
            let ltarget = inst!(
                rule,
                &lctx,
                &motive.lifted(1, 1),
                term & Term::Inl(Box::new(Term::Var(0)))
            )?;
            check_term(&lctx, Mode::Logical, left, &ltarget)?;
            let rctx = ctx.extended(Hyp::Computational((*b).clone()));
            let rtarget = inst!(
                rule,
                &rctx,
                &motive.lifted(1, 1),
                term & Term::Inr(Box::new(Term::Var(0)))
            )?;
            check_term(&rctx, Mode::Logical, right, &rtarget)?;
            let (inj, reduct) = if is_left {
                check_term(ctx, Mode::Logical, arg, &a)?;
                (Term::Inl(arg.clone()), inst!(rule, ctx, left, term arg)?)
            } else {
                check_term(ctx, Mode::Logical, arg, &b)?;
                (Term::Inr(arg.clone()), inst!(rule, ctx, right, term arg)?)
            };
            let lhs = Term::Cases {
                motive: motive.clone(),
                scrut: Box::new(inj.clone()),
                left: left.clone(),
                right: right.clone(),
            };
            let ty = inst!(rule, ctx, motive, term & inj)?;
            Ok(Prop::Eq(Box::new(ty), Box::new(lhs), Box::new(reduct)))
        }
        Proof::BetaZero { motive, zero, succ } => {
            let mctx = ctx.extended(Hyp::Computational(Ty::Nat));
            wf_ty(&mctx, motive)?;
            let ztarget = inst!("β_zero", ctx, motive, term & Term::Zero)?;
            check_term(ctx, Mode::Logical, zero, &ztarget)?;
            // The conclusion's natrec binds the index as a ghost.
            let inner = ctx
                .upgrade()
                .extended(Hyp::Ghost(Ty::Nat))
                .extended(Hyp::Computational((**motive).clone()));
            let succ_n = Term::App(Box::new(Term::Succ), Box::new(Term::Var(1)));
            let starget = inst!("β_zero", &inner, &motive.lifted(1, 2), term & succ_n)?;
            check_term(&inner, Mode::Computational, succ, &starget)?;
            let lhs = Term::Natrec {
                motive: motive.clone(),
                scrut: Box::new(Term::Zero),
                zero: zero.clone(),
                succ: succ.clone(),
            };
            Ok(Prop::Eq(
                Box::new(ztarget),
                Box::new(lhs),
                Box::new((**zero).clone()),
            ))
        }
        Proof::BetaSucc {
            motive,
            arg,
            zero,
            succ,
        } => {
            let mctx = ctx.extended(Hyp::Computational(Ty::Nat));
            wf_ty(&mctx, motive)?;
            check_term(ctx, Mode::Logical, arg, &Ty::Nat)?;
            let ztarget = inst!("β_succ", ctx, motive, term & Term::Zero)?;
            check_term(ctx, Mode::Logical, zero, &ztarget)?;
            // As in β_zero, the successor case binds its index ghost.
            let inner = ctx
                .upgrade()
                .extended(Hyp::Ghost(Ty::Nat))
                .extended(Hyp::Computational((**motive).clone()));
            let succ_n = Term::App(Box::new(Term::Succ), Box::new(Term::Var(1)));
            let starget = inst!("β_succ", &inner, &motive.lifted(1, 2), term & succ_n)?;
            check_term(&inner, Mode::Computational, succ, &starget)?;

            let succ_arg = Term::App(Box::new(Term::Succ), Box::new((**arg).clone()));
            let lhs = Term::Natrec {
                motive: motive.clone(),
                scrut: Box::new(succ_arg.clone()),
                zero: zero.clone(),
                succ: succ.clone(),
            };
            let recur = Term::Natrec {
                motive: motive.clone(),
                scrut: arg.clone(),
                zero: zero.clone(),
                succ: succ.clone(),
            };
            // s binds the ghost index (1) and the recursive result (0).
            let sub = crate::subst::Subst::inner(vec![
                crate::subst::Binding::Term(recur),
                crate::subst::Binding::Term((**arg).clone()),
            ]);
            let rhs = succ.subst(&sub).map_err(|e| subst_diag("β_succ", ctx, e))?;
            let ty = inst!("β_succ", ctx, motive, term & succ_arg)?;
            Ok(Prop::Eq(Box::new(ty), Box::new(lhs), Box::new(rhs)))
        }
        Proof::BetaPair {
            annot,
            motive,
            fst,
            snd,
            body,
        } => {
            wf_ty(ctx, annot)?;
            let (a, b) = match &**annot {
                Ty::Pair(a, b) => (a.clone(), b.clone()),
                other => {
                    return Err(diag(
                        "β_pair",
                        ctx,
                        format!(
                            "annotation must be a pair type, found {}",
                            pretty::ty(other)
                        ),
                    ))
                }
            };
            check_term(ctx, Mode::Logical, fst, &a)?;
            let snd_ty = inst!("β_pair", ctx, &b, term fst)?;
            check_term(ctx, Mode::Logical, snd, &snd_ty)?;
            let inner = ctx
                .extended(Hyp::Computational((*a).clone()))
                .extended(Hyp::Computational((*b).clone()));
            let pattern = Term::Pair(Box::new(Term::Var(1)), Box::new(Term::Var(0)));
            let scrut = Term::Pair(fst.clone(), snd.clone());
            let result_ty = beta_let_body(
                ctx,
                "β_pair",
                annot,
                motive,
                &inner,
                &pattern,
                &scrut,
                body,
                Mode::Logical,
            )?;
            let lhs = Term::LetPair {
                annot: annot.clone(),
                motive: motive.clone(),
                scrut: Box::new(scrut),
                body: body.clone(),
            };
            let sub = crate::subst::Subst::inner(vec![
                crate::subst::Binding::Term((**snd).clone()),
                crate::subst::Binding::Term((**fst).clone()),
            ]);
            let rhs = body.subst(&sub).map_err(|e| subst_diag("β_pair", ctx, e))?;
            Ok(Prop::Eq(Box::new(result_ty), Box::new(lhs), Box::new(rhs)))
        }
        Proof::BetaSet {
            annot,
            motive,
            elem,
            pf,
            body,
        } => {
            wf_ty(ctx, annot)?;
            let (a, phi) = match &**annot {
                Ty::Subset(a, p) => (a.clone(), p.clone()),
                other => {
                    return Err(diag(
                        "β_set",
                        ctx,
                        format!(
                            "annotation must be a subset type, found {}",
                            pretty::ty(other)
                        ),
                    ))
                }
            };
            check_term(ctx, Mode::Logical, elem, &a)?;
            let pf_target = inst!("β_set", ctx, &phi, term elem)?;
            check_proof(ctx, Mode::Logical, pf, &pf_target)?;
            let inner = ctx
                .extended(Hyp::Computational((*a).clone()))
                .extended(Hyp::Propositional((*phi).clone()));
            let pattern = Term::SetIntro(Box::new(Term::Var(1)), Box::new(Proof::Var(0)));
            let scrut = Term::SetIntro(elem.clone(), pf.clone());
            let result_ty = beta_let_body(
                ctx,
                "β_set",
                annot,
                motive,
                &inner,
                &pattern,
                &scrut,
                body,
                Mode::Logical,
            )?;
            let lhs = Term::LetSet {
                annot: annot.clone(),
                motive: motive.clone(),
                scrut: Box::new(scrut),
                body: body.clone(),
            };
            let sub = crate::subst::Subst::inner(vec![
                crate::subst::Binding::Proof((**pf).clone()),
                crate::subst::Binding::Term((**elem).clone()),
            ]);
            let rhs = body.subst(&sub).map_err(|e| subst_diag("β_set", ctx, e))?;
            Ok(Prop::Eq(Box::new(result_ty), Box::new(lhs), Box::new(rhs)))
        }
        Proof::BetaRepr {
            annot,
            motive,
            ghost,
            wit,
            body,
        } => {
            wf_ty(ctx, annot)?;
            let (a, b) = match &**annot {
                Ty::Ex(a, b) => (a.clone(), b.clone()),
                other => {
                    return Err(diag(
                        "β_repr",
                        ctx,
                        format!(
                            "annotation must be a union type, found {}",
                            pretty::ty(other)
                        ),
                    ))
                }
            };
            check_term(ctx, Mode::Logical, ghost, &a)?;
            let wit_ty = inst!("β_repr", ctx, &b, term ghost)?;
            check_term(ctx, Mode::Logical, wit, &wit_ty)?;
            // The conclusion's let rebinds the first component ghost.
            let inner = ctx
                .upgrade()
                .extended(Hyp::Ghost((*a).clone()))
                .extended(Hyp::Computational((*b).clone()));
            let pattern = Term::Repr(Box::new(Term::Var(1)), Box::new(Term::Var(0)));
            let scrut = Term::Repr(ghost.clone(), wit.clone());
            let result_ty = beta_let_body(
                ctx,
                "β_repr",
                annot,
                motive,
                &inner,
                &pattern,
                &scrut,
                body,
                Mode::Computational,
            )?;
            let lhs = Term::LetRepr {
                annot: annot.clone(),
                motive: motive.clone(),
                scrut: Box::new(scrut),
                body: body.clone(),
            };
            let sub = crate::subst::Subst::inner(vec![
                crate::subst::Binding::Term((**wit).clone()),
                crate::subst::Binding::Term((**ghost).clone()),
            ]);
            let rhs = body.subst(&sub).map_err(|e| subst_diag("β_repr", ctx, e))?;
            Ok(Prop::Eq(Box::new(result_ty), Box::new(lhs), Box::new(rhs)))
        }
        Proof::EtaTy(f) => {
            let fun_ty = infer_term(ctx, Mode::Logical, f)?;
            match &fun_ty {
                Ty::Fn(a, _) => {
                    let eta = Term::Lam(
                        a.clone(),
                        Box::new(Term::App(Box::new(f.lifted(0, 1)), Box::new(Term::Var(0)))),
                    );
                    Ok(Prop::Eq(
                        Box::new(fun_ty.clone()),
                        Box::new(eta),
                        Box::new((**f).clone()),
                    ))
                }
                other => Err(diag(
                    "η_ty",
                    ctx,
                    format!("eta needs a function, found {}", pretty::ty(other)),
                )),
            }
        }
        Proof::IrPr {
            hyp,
            body,
            fst,
            snd,
        } => {
            wf_prop(ctx, hyp)?;
            let inner = ctx.extended(Hyp::Propositional((**hyp).clone()));
            let body_ty = infer_term(&inner, Mode::Logical, body)?;
            let result_ty = body_ty.strengthened(0, 1).map_err(|_| {
                diag(
                    "Ir-Pr",
                    ctx,
                    "the body's type may not depend on the proof variable",
                )
            })?;
            wf_ty(ctx, &result_ty)?;
            check_proof(ctx, Mode::Logical, fst, hyp)?;
            check_proof(ctx, Mode::Logical, snd, hyp)?;
            let lhs = inst!("Ir-Pr", ctx, body, proof fst)?;
            let rhs = inst!("Ir-Pr", ctx, body, proof snd)?;
            Ok(Prop::Eq(Box::new(result_ty), Box::new(lhs), Box::new(rhs)))
        }
        Proof::IrTy { fun, fst, snd } => {
            let fun_ty = infer_term(ctx, Mode::Logical, fun)?;
            let (a, b) = match &fun_ty {
                Ty::All(a, b) => (a.clone(), b.clone()),
                other => {
                    return Err(diag(
                        "Ir-Ty",
                        ctx,
                        format!("ir_ty needs an intersection, found {}", pretty::ty(other)),
                    ))
                }
            };
            let result_ty = b.strengthened(0, 1).map_err(|_| {
                diag(
                    "Ir-Ty",
                    ctx,
                    "the result type may not depend on the ghost variable",
                )
            })?;
            check_term(ctx, Mode::Logical, fst, &a)?;
            check_term(ctx, Mode::Logical, snd, &a)?;
            let lhs = Term::AppIr(fun.clone(), fst.clone());
            let rhs = Term::AppIr(fun.clone(), snd.clone());
            Ok(Prop::Eq(Box::new(result_ty), Box::new(lhs), Box::new(rhs)))
        }
        Proof::EtaIr {
            fst,
            snd,
            inhab,
            body,
        } => {
            let fun_ty = infer_term(ctx, Mode::Logical, fst)?;
            let (a, b) = match &fun_ty {
                Ty::All(a, b) => (a.clone(), b.clone()),
                other => {
                    return Err(diag(
                        "η_ir",
                        ctx,
                        format!("eta_ir needs intersections, found {}", pretty::ty(other)),
                    ))
                }
            };
            check_term(ctx, Mode::Logical, snd, &fun_ty)?;
            check_term(ctx, Mode::Logical, inhab, &a)?;
            let inner = ctx.extended(Hyp::Computational((*a).clone()));
            let target = Prop::Eq(
                b.clone(),
                Box::new(Term::AppIr(
                    Box::new(fst.lifted(0, 1)),
                    Box::new(Term::Var(0)),
                )),
                Box::new(Term::AppIr(
                    Box::new(snd.lifted(0, 1)),
                    Box::new(Term::Var(0)),
                )),
            );
            check_proof(&inner, mode, body, &target)?;
            Ok(Prop::Eq(
                Box::new(fun_ty.clone()),
                Box::new((**fst).clone()),
                Box::new((**snd).clone()),
            ))
        }
        Proof::EtaPr {
            fst,
            snd,
            inhab,
            body,
        } => {
            let fun_ty = infer_term(ctx, Mode::Logical, fst)?;
            let (h, b) = match &fun_ty {
                Ty::Pre(h, b) => (h.clone(), b.clone()),
                other => {
                    return Err(diag(
                        "η_pr",
                        ctx,
                        format!(
                            "eta_pr needs precondition types, found {}",
                            pretty::ty(other)
                        ),
                    ))
                }
            };
            check_term(ctx, Mode::Logical, snd, &fun_ty)?;
            check_proof(ctx, Mode::Logical, inhab, &h)?;
            let inner = ctx.extended(Hyp::Propositional((*h).clone()));
            let target = Prop::Eq(
                b.clone(),
                Box::new(Term::AppPr(
                    Box::new(fst.lifted(0, 1)),
                    Box::new(Proof::Var(0)),
                )),
                Box::new(Term::AppPr(
                    Box::new(snd.lifted(0, 1)),
                    Box::new(Proof::Var(0)),
                )),
            );
            check_proof(&inner, mode, body, &target)?;
            Ok(Prop::Eq(
                Box::new(fun_ty.clone()),
                Box::new((**fst).clone()),
                Box::new((**snd).clone()),
            ))
        }
        Proof::AndIntro(_, _) => Err(diag(
            "And",
            ctx,
            "conjunction introduction does not synthesize; annotate the goal",
        )),
        Proof::Orl(_) => Err(diag(
            "Orl",
            ctx,
            "orl does not synthesize; annotate the goal",
        )),
        Proof::Orr(_) => Err(diag(
            "Orr",
            ctx,
            "orr does not synthesize; annotate the goal",
        )),
        Proof::Wit(_, _) => Err(diag(
            "Wit",
            ctx,
            "existential witness does not synthesize; annotate the goal",
        )),
        Proof::Absurd(_) => Err(diag(
            "Absurd-Pr",
            ctx,
            "absurd does not synthesize; it checks against any proposition",
        )),
    }
}

/// Result-motive handling shared by the proof-level let rules.
#[allow(clippy::too_many_arguments)]
fn let_pr_result(
    ctx: &Context,
    mode: Mode,
    rule: &'static str,
    annot: &Ty,
    motive: &Option<Box<Prop>>,
    scrut: &Term,
    body: &Proof,
    inner: &Context,
    pattern: &Term,
) -> Res<Prop> {
    match motive {
        Some(phi) => {
            let mctx = ctx.extended(Hyp::Computational(annot.clone()));
            wf_prop(&mctx, phi)?;
            let lifted = phi.lifted(1, 2);
            let target = lifted
                .inst_term(pattern)
                .map_err(|e| subst_diag(rule, ctx, e))?;
            check_proof(inner, mode, body, &target)?;
            phi.inst_term(scrut).map_err(|e| subst_diag(rule, ctx, e))
        }
        None => {
            let phi = infer_proof(inner, mode, body)?;
            phi.strengthened(0, 2).map_err(|_| {
                diag(
                    rule,
                    ctx,
                    "result depends on the bound variables; annotate a motive",
                )
            })
        }
    }
}

/// Body and motive handling shared by the beta axioms of the let
/// eliminators, mirroring the let rules themselves: with a motive the
/// body checks against the instantiated pattern, without one the body
/// must synthesize a type not mentioning the bound slots. Returns the
/// equality annotation of the conclusion.
#[allow(clippy::too_many_arguments)]
fn beta_let_body(
    ctx: &Context,
    rule: &'static str,
    annot: &Ty,
    motive: &Option<Box<Ty>>,
    inner: &Context,
    pattern: &Term,
    scrut: &Term,
    body: &Term,
    mode: Mode,
) -> Res<Ty> {
    match motive {
        Some(c) => {
            let mctx = ctx.extended(Hyp::Computational(annot.clone()));
            wf_ty(&mctx, c)?;
            let lifted = c.lifted(1, 2);
            let target = lifted
                .inst_term(pattern)
                .map_err(|e| subst_diag(rule, ctx, e))?;
            check_term(inner, mode, body, &target)?;
            c.inst_term(scrut).map_err(|e| subst_diag(rule, ctx, e))
        }
        None => {
            let t = infer_term(inner, mode, body)?;
            t.strengthened(0, 2).map_err(|_| {
                diag(
                    rule,
                    ctx,
                    "result type depends on the bound variables; annotate a motive",
                )
            })
        }
    }
}

/// Checks `p` against `expected`.
pub fn check_proof(ctx: &Context, mode: Mode, p: &Proof, expected: &Prop) -> Res<()> {
    grow(|| check_proof_inner(ctx, mode, p, expected))
}

fn check_proof_inner(ctx: &Context, mode: Mode, p: &Proof, expected: &Prop) -> Res<()> {
    match (p, expected) {
        (Proof::ImpIntro(hyp, body), Prop::Imp(h, b)) => {
            wf_prop(ctx, hyp)?;
            if !alpha_eq(&**hyp, &**h) {
                return Err(mismatch_prop("Imp", ctx, h, hyp));
            }
            let inner = ctx.extended(Hyp::Propositional((**hyp).clone()));
            check_proof(&inner, mode, body, b)
        }
        (Proof::Gen(dom, body), Prop::All(a, b)) => {
            wf_ty(ctx, dom)?;
            if !alpha_eq(&**dom, &**a) {
                return Err(mismatch_ty("Gen", ctx, a, dom));
            }
            let inner = ctx.extended(Hyp::Ghost((**dom).clone()));
            check_proof(&inner, mode, body, b)
        }
        (Proof::AndIntro(l, r), Prop::And(a, b)) => {
            check_proof(ctx, mode, l, a)?;
            let target = b.inst_proof(l).map_err(|e| subst_diag("And", ctx, e))?;
            check_proof(ctx, mode, r, &target)
        }
        (Proof::AndIntro(_, _), other) => Err(diag(
            "And",
            ctx,
            format!(
                "pair proof checked against non-conjunction {}",
                pretty::prop(other)
            ),
        )),
        (Proof::Orl(q), Prop::Or(a, _)) => check_proof(ctx, mode, q, a),
        (Proof::Orr(q), Prop::Or(_, b)) => check_proof(ctx, mode, q, b),
        (Proof::Orl(_), other) | (Proof::Orr(_), other) => Err(diag(
            "Orl",
            ctx,
            format!(
                "injection proof checked against non-disjunction {}",
                pretty::prop(other)
            ),
        )),
        (Proof::Wit(a, q), Prop::Ex(t, phi)) => {
            check_term(ctx, Mode::Logical, a, t)?;
            let target = phi.inst_term(a).map_err(|e| subst_diag("Wit", ctx, e))?;
            check_proof(ctx, mode, q, &target)
        }
        (Proof::Wit(_, _), other) => Err(diag(
            "Wit",
            ctx,
            format!(
                "witness checked against non-existential {}",
                pretty::prop(other)
            ),
        )),
        (Proof::Absurd(q), _) => check_proof(ctx, mode, q, &Prop::Bot),
        // Motive-free let forms push the expected proposition under the
        // two binders (the non-dependent reading).
        (
            Proof::LetAnd {
                annot,
                motive: None,
                scrut,
                body,
            },
            _,
        ) => {
            wf_prop(ctx, annot)?;
            let (phi, psi) = match &**annot {
                Prop::And(a, b) => (a.clone(), b.clone()),
                other => {
                    return Err(diag(
                        "Let-And",
                        ctx,
                        format!(
                            "let annotation must be a conjunction, found {}",
                            pretty::prop(other)
                        ),
                    ))
                }
            };
            check_proof(ctx, mode, scrut, annot)?;
            let inner = ctx
                .extended(Hyp::Propositional((*phi).clone()))
                .extended(Hyp::Propositional((*psi).clone()));
            check_proof(&inner, mode, body, &expected.lifted(0, 2))
        }
        (
            Proof::LetExists {
                annot,
                motive: None,
                scrut,
                body,
            },
            _,
        ) => {
            wf_prop(ctx, annot)?;
            let (dom, phi) = match &**annot {
                Prop::Ex(t, q) => (t.clone(), q.clone()),
                other => {
                    return Err(diag(
                        "Let-Exists",
                        ctx,
                        format!(
                            "let annotation must be an existential, found {}",
                            pretty::prop(other)
                        ),
                    ))
                }
            };
            check_proof(ctx, mode, scrut, annot)?;
            let inner = ctx
                .extended(Hyp::Computational((*dom).clone()))
                .extended(Hyp::Propositional((*phi).clone()));
            check_proof(&inner, mode, body, &expected.lifted(0, 2))
        }
        (
            Proof::LetPairPr {
                annot,
                motive: None,
                scrut,
                body,
            },
            _,
        ) => {
            wf_ty(ctx, annot)?;
            let (a, b) = match &**annot {
                Ty::Pair(a, b) => (a.clone(), b.clone()),
                other => {
                    return Err(diag(
                        "Let-Pair-Pr",
                        ctx,
                        format!(
                            "let annotation must be a pair type, found {}",
                            pretty::ty(other)
                        ),
                    ))
                }
            };
            check_term(ctx, Mode::Logical, scrut, annot)?;
            let inner = ctx
                .extended(Hyp::Computational((*a).clone()))
                .extended(Hyp::Computational((*b).clone()));
            check_proof(&inner, mode, body, &expected.lifted(0, 2))
        }
        (
            Proof::LetSetPr {
                annot,
                motive: None,
                scrut,
                body,
            },
            _,
        ) => {
            wf_ty(ctx, annot)?;
            let (a, phi) = match &**annot {
                Ty::Subset(a, q) => (a.clone(), q.clone()),
                other => {
                    return Err(diag(
                        "Let-Set-Pr",
                        ctx,
                        format!(
                            "let annotation must be a subset type, found {}",
                            pretty::ty(other)
                        ),
                    ))
                }
            };
            check_term(ctx, Mode::Logical, scrut, annot)?;
            let inner = ctx
                .extended(Hyp::Computational((*a).clone()))
                .extended(Hyp::Propositional((*phi).clone()));
            check_proof(&inner, mode, body, &expected.lifted(0, 2))
        }
        (
            Proof::LetReprPr {
                annot,
                motive: None,
                scrut,
                body,
            },
            _,
        ) => {
            wf_ty(ctx, annot)?;
            let (a, b) = match &**annot {
                Ty::Ex(a, b) => (a.clone(), b.clone()),
                other => {
                    return Err(diag(
                        "Let-Ir-Pr",
                        ctx,
                        format!(
                            "let annotation must be a union type, found {}",
                            pretty::ty(other)
                        ),
                    ))
                }
            };
            check_term(ctx, Mode::Logical, scrut, annot)?;
            let inner = ctx
                .extended(Hyp::Computational((*a).clone()))
                .extended(Hyp::Computational((*b).clone()));
            check_proof(&inner, mode, body, &expected.lifted(0, 2))
        }
        _ => {
            let found = infer_proof(ctx, mode, p)?;
            if alpha_eq(&found, expected) {
                Ok(())
            } else {
                Err(mismatch_prop(rule_of_proof(p), ctx, expected, &found))
            }
        }
    }
}

fn rule_of_proof(p: &Proof) -> &'static str {
    match p {
        Proof::Var(_) => "Var-Pr",
        Proof::TrueIntro => "True",
        Proof::Absurd(_) => "Absurd-Pr",
        Proof::ImpIntro(_, _) => "Imp",
        Proof::App(_, _) => "MP",
        Proof::AndIntro(_, _) => "And",
        Proof::LetAnd { .. } => "Let-And",
        Proof::Orl(_) => "Orl",
        Proof::Orr(_) => "Orr",
        Proof::CasesOr { .. } => "Cases-Or",
        Proof::Gen(_, _) => "Gen",
        Proof::Spec(_, _) => "Spec",
        Proof::Wit(_, _) => "Wit",
        Proof::LetExists { .. } => "Let-Exists",
        Proof::LetPairPr { .. } => "Let-Pair-Pr",
        Proof::LetSetPr { .. } => "Let-Set-Pr",
        Proof::LetReprPr { .. } => "Let-Ir-Pr",
        Proof::Subst { .. } => "Subst",
        Proof::CasesPr { .. } => "Cases-Pr",
        Proof::Ind { .. } => "Ind",
        Proof::Rfl(_) => "Rfl",
        Proof::Uniq(_) => "Uniq",
        Proof::Discr(_, _, _) => "Discr",
        Proof::BetaPr { .. } => "β_pr",
        Proof::BetaTy { .. } => "β_ty",
        Proof::BetaIr { .. } => "β_ir",
        Proof::BetaLeft { .. } => "β_left",
        Proof::BetaRight { .. } => "β_right",
        Proof::BetaZero { .. } => "β_zero",
        Proof::BetaSucc { .. } => "β_succ",
        Proof::BetaPair { .. } => "β_pair",
        Proof::BetaSet { .. } => "β_set",
        Proof::BetaRepr { .. } => "β_repr",
        Proof::EtaTy(_) => "η_ty",
        Proof::IrPr { .. } => "Ir-Pr",
        Proof::IrTy { .. } => "Ir-Ty",
        Proof::EtaIr { .. } => "η_ir",
        Proof::EtaPr { .. } => "η_pr",
    }
}
