//! Erasure of refined programs to the simply-typed target.
//!
//! Dependency and propositional content drop out of types; proofs
//! become `()`; ghost and proof binders on function-like types become
//! unit arguments so that the eager evaluation order never forces an
//! `error` early. Ghost contexts keep their slots as unit-typed entries,
//! so term indices survive erasure unchanged; the binders that do
//! vanish (the proof slot of a set-elimination, the ghost slot of a
//! union or `natrec` elimination) are plugged with `()`—exactly the
//! value the erased context stores there.

use crate::ctx::{Context, Hyp};
use crate::stlc;
use crate::subst::{Binding, Subst, Tail};
use crate::syntax::{Proof, Prop, Term, Ty};

pub fn erase_ty(t: &Ty) -> stlc::Ty {
    match t {
        Ty::Unit => stlc::Ty::Unit,
        Ty::Nat => stlc::Ty::Nat,
        Ty::Fn(a, b) => stlc::Ty::Fn(Box::new(erase_ty(a)), Box::new(erase_ty(b))),
        Ty::Pair(a, b) => stlc::Ty::Prod(Box::new(erase_ty(a)), Box::new(erase_ty(b))),
        Ty::Sum(a, b) => stlc::Ty::Sum(Box::new(erase_ty(a)), Box::new(erase_ty(b))),
        Ty::Pre(_, a) => stlc::Ty::Fn(Box::new(stlc::Ty::Unit), Box::new(erase_ty(a))),
        Ty::Subset(a, _) => erase_ty(a),
        Ty::All(_, b) => stlc::Ty::Fn(Box::new(stlc::Ty::Unit), Box::new(erase_ty(b))),
        Ty::Ex(_, b) => erase_ty(b),
    }
}

/// Propositions erase to the unit type.
pub fn erase_prop(_: &Prop) -> stlc::Ty {
    stlc::Ty::Unit
}

/// Proofs erase to `()`.
pub fn erase_proof(_: &Proof) -> stlc::Expr {
    stlc::Expr::Unit
}

/// Replaces the proof slot (index 0 of a two-binder body) with `()`.
fn drop_slot0(body: stlc::Expr) -> stlc::Expr {
    stlc::subst(&body, &stlc::Subst::single(stlc::Expr::Unit))
}

/// Replaces the ghost slot (index 1 of a two-binder body) with `()`,
/// keeping index 0.
fn drop_slot1(body: stlc::Expr) -> stlc::Expr {
    stlc::subst(
        &body,
        &stlc::Subst::new(vec![stlc::Expr::Var(0), stlc::Expr::Unit], 1),
    )
}

pub fn erase_term(t: &Term) -> stlc::Expr {
    match t {
        Term::Var(i) => stlc::Expr::Var(*i),
        Term::Unit => stlc::Expr::Unit,
        Term::Zero => stlc::Expr::Zero,
        Term::Succ => stlc::Expr::Succ,
        Term::Lam(a, e) => stlc::Expr::Lam(erase_ty(a), Box::new(erase_term(e))),
        Term::App(f, a) => stlc::Expr::App(Box::new(erase_term(f)), Box::new(erase_term(a))),
        Term::Pair(a, b) => stlc::Expr::Pair(Box::new(erase_term(a)), Box::new(erase_term(b))),
        Term::LetPair {
            annot, scrut, body, ..
        } => stlc::Expr::LetPair {
            annot: Some(erase_ty(annot)),
            scrut: Box::new(erase_term(scrut)),
            body: Box::new(erase_term(body)),
        },
        Term::Inl(e) => stlc::Expr::Inl(None, Box::new(erase_term(e))),
        Term::Inr(e) => stlc::Expr::Inr(None, Box::new(erase_term(e))),
        Term::Cases {
            motive,
            scrut,
            left,
            right,
        } => stlc::Expr::Cases {
            annot: Some(erase_ty(motive)),
            scrut: Box::new(erase_term(scrut)),
            left: Box::new(erase_term(left)),
            right: Box::new(erase_term(right)),
        },
        Term::LamPr(_, e) => stlc::Expr::Lam(stlc::Ty::Unit, Box::new(erase_term(e))),
        Term::AppPr(f, _) => stlc::Expr::App(Box::new(erase_term(f)), Box::new(stlc::Expr::Unit)),
        Term::SetIntro(a, _) => erase_term(a),
        Term::LetSet {
            annot, scrut, body, ..
        } => stlc::Expr::Let {
            annot: Some(erase_ty(annot)),
            bound: Box::new(erase_term(scrut)),
            body: Box::new(drop_slot0(erase_term(body))),
        },
        Term::LamIr(_, e) => stlc::Expr::Lam(stlc::Ty::Unit, Box::new(erase_term(e))),
        Term::AppIr(f, _) => stlc::Expr::App(Box::new(erase_term(f)), Box::new(stlc::Expr::Unit)),
        Term::Repr(_, b) => erase_term(b),
        Term::LetRepr {
            annot, scrut, body, ..
        } => stlc::Expr::Let {
            annot: Some(erase_ty(annot)),
            bound: Box::new(erase_term(scrut)),
            body: Box::new(drop_slot1(erase_term(body))),
        },
        Term::Natrec {
            motive,
            scrut,
            zero,
            succ,
        } => stlc::Expr::Natrec {
            annot: Some(erase_ty(motive)),
            scrut: Box::new(erase_term(scrut)),
            zero: Box::new(erase_term(zero)),
            succ: Box::new(drop_slot1(erase_term(succ))),
        },
        Term::Absurd(_) => stlc::Expr::Error(None),
    }
}

pub fn erase_ctx(ctx: &Context) -> stlc::Ctx {
    ctx.iter()
        .map(|h| match h {
            Hyp::Computational(t) => erase_ty(t),
            Hyp::Ghost(_) | Hyp::Propositional(_) => stlc::Ty::Unit,
        })
        .collect()
}

/// Erases a substitution pointwise: term entries erase, proof entries
/// become `()`, renames stay renames.
pub fn erase_subst(s: &Subst) -> stlc::Subst {
    let entries = s
        .entries
        .iter()
        .map(|b| match b {
            Binding::Term(t) => erase_term(t),
            Binding::Proof(_) => stlc::Expr::Unit,
            Binding::Rename(j) => stlc::Expr::Var(*j),
            Binding::Unbound => {
                panic!("cannot erase a strengthening substitution")
            }
        })
        .collect();
    let shift = match s.tail {
        Tail::Shift(n) => n,
        Tail::Unbound => panic!("cannot erase a scope-checking substitution"),
    };
    stlc::Subst::new(entries, shift)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_erasure_examples() {
        // forall n: Nat, (v: V) -> {x: Nat | x = n}  erases to  Unit -> V -> Nat
        let v = Ty::Sum(Box::new(Ty::Unit), Box::new(Ty::Unit));
        let refined = Ty::All(
            Box::new(Ty::Nat),
            Box::new(Ty::Fn(
                Box::new(v.clone()),
                Box::new(Ty::Subset(
                    Box::new(Ty::Nat),
                    Box::new(Prop::Eq(
                        Box::new(Ty::Nat),
                        Box::new(Term::Var(0)),
                        Box::new(Term::Var(2)),
                    )),
                )),
            )),
        );
        assert_eq!(
            erase_ty(&refined),
            stlc::Ty::Fn(
                Box::new(stlc::Ty::Unit),
                Box::new(stlc::Ty::Fn(
                    Box::new(erase_ty(&v)),
                    Box::new(stlc::Ty::Nat)
                )),
            )
        );
        assert_eq!(erase_ty(&Ty::Nat), stlc::Ty::Nat);
        let subset = Ty::Subset(Box::new(Ty::Nat), Box::new(Prop::Top));
        assert_eq!(erase_ty(&subset), stlc::Ty::Nat);
    }

    #[test]
    fn term_erasure_examples() {
        let set = Term::SetIntro(Box::new(Term::Zero), Box::new(Proof::TrueIntro));
        assert_eq!(erase_term(&set), stlc::Expr::Zero);

        let absurd = Term::Absurd(Box::new(Proof::Var(0)));
        assert_eq!(erase_term(&absurd), stlc::Expr::Error(None));

        let ghost_lam = Term::LamIr(Box::new(Ty::Nat), Box::new(Term::Zero));
        assert_eq!(
            erase_term(&ghost_lam),
            stlc::Expr::Lam(stlc::Ty::Unit, Box::new(stlc::Expr::Zero))
        );
    }

    #[test]
    fn ctx_erasure_examples() {
        assert_eq!(erase_ctx(&Context::empty()), Vec::<stlc::Ty>::new());
        let g = Context::empty()
            .extended(Hyp::Computational(Ty::Nat))
            .extended(Hyp::Propositional(Prop::Top));
        assert_eq!(erase_ctx(&g), vec![stlc::Ty::Nat, stlc::Ty::Unit]);
        let ghost = Context::empty().extended(Hyp::Ghost(Ty::Nat));
        assert_eq!(erase_ctx(&ghost), vec![stlc::Ty::Unit]);
    }

    #[test]
    fn vanishing_binders_are_plugged_with_unit() {
        // let {x, u}: {x: Nat | top} = 0 in x  erases to  let x = 0 in x
        let t = Term::LetSet {
            annot: Box::new(Ty::Subset(Box::new(Ty::Nat), Box::new(Prop::Top))),
            motive: None,
            scrut: Box::new(Term::Zero),
            body: Box::new(Term::Var(1)),
        };
        assert_eq!(
            erase_term(&t),
            stlc::Expr::Let {
                annot: Some(stlc::Ty::Nat),
                bound: Box::new(stlc::Expr::Zero),
                body: Box::new(stlc::Expr::Var(0)),
            }
        );
    }
}
