//! Capture-avoiding substitution over the four syntactic categories.
//!
//! A substitution maps every free de Bruijn index of the source scope to
//! either a term, a proof, or another index. Lifting, single-point
//! instantiation, strengthening and scope validation are all expressed
//! as substitutions so there is exactly one binder-aware traversal.

use crate::syntax::{Proof, Prop, Term, Ty};

/// What one source index maps to.
#[derive(Clone, Debug, PartialEq)]
pub enum Binding {
    Term(Term),
    Proof(Proof),
    /// Map to plain variable `j`, whatever its kind.
    Rename(usize),
    /// The index must not occur (used by strengthening and scope checks).
    Unbound,
}

/// Behaviour for indices past the explicit entries: either shift them
/// by a constant or reject them.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Tail {
    Shift(usize),
    Unbound,
}

#[derive(Clone, Debug)]
pub struct Subst {
    pub(crate) entries: Vec<Binding>,
    pub(crate) tail: Tail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubstError {
    /// A term variable was mapped to a proof or vice versa.
    KindMismatch { index: usize },
    /// An index marked `Unbound` occurred free.
    Unbound { index: usize },
}

impl std::fmt::Display for SubstError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SubstError::KindMismatch { index } => {
                write!(f, "substitution maps variable {index} to the wrong kind")
            }
            SubstError::Unbound { index } => {
                write!(f, "variable {index} escapes its scope")
            }
        }
    }
}

impl std::error::Error for SubstError {}

impl Subst {
    pub fn identity() -> Subst {
        Subst {
            entries: Vec::new(),
            tail: Tail::Shift(0),
        }
    }

    /// Shift free indices `>= cutoff` up by `amount`.
    pub fn lift(cutoff: usize, amount: usize) -> Subst {
        Subst {
            entries: (0..cutoff).map(Binding::Rename).collect(),
            tail: Tail::Shift(cutoff + amount),
        }
    }

    /// `[t/0]`: replace index 0, shift the rest down.
    pub fn term0(t: Term) -> Subst {
        Subst {
            entries: vec![Binding::Term(t)],
            tail: Tail::Shift(0),
        }
    }

    /// `[p/0]`.
    pub fn proof0(p: Proof) -> Subst {
        Subst {
            entries: vec![Binding::Proof(p)],
            tail: Tail::Shift(0),
        }
    }

    /// Replace the innermost `bindings.len()` slots at once; entry `i`
    /// substitutes index `i`. Remaining indices shift down accordingly.
    pub fn inner(bindings: Vec<Binding>) -> Subst {
        Subst {
            entries: bindings,
            tail: Tail::Shift(0),
        }
    }

    /// Remove `amount` slots starting at `cutoff`; occurrences fail.
    pub fn strengthen(cutoff: usize, amount: usize) -> Subst {
        let mut entries: Vec<Binding> = (0..cutoff).map(Binding::Rename).collect();
        entries.extend((0..amount).map(|_| Binding::Unbound));
        Subst {
            entries,
            tail: Tail::Shift(cutoff),
        }
    }

    /// Accept exactly the indices `< len`.
    pub fn scope(len: usize) -> Subst {
        Subst {
            entries: (0..len).map(Binding::Rename).collect(),
            tail: Tail::Unbound,
        }
    }

    /// The binding for source index `i` (public so composition can be
    /// built and tested externally).
    pub fn binding_at(&self, i: usize) -> Binding {
        self.get(i)
    }

    fn get(&self, i: usize) -> Binding {
        if i < self.entries.len() {
            self.entries[i].clone()
        } else {
            match self.tail {
                Tail::Shift(s) => Binding::Rename(i - self.entries.len() + s),
                Tail::Unbound => Binding::Unbound,
            }
        }
    }

    fn term_at(&self, i: usize, depth: usize) -> Result<Term, SubstError> {
        match self.get(i - depth) {
            Binding::Term(t) => Ok(lift_term(&t, 0, depth)),
            Binding::Rename(j) => Ok(Term::Var(j + depth)),
            Binding::Proof(_) => Err(SubstError::KindMismatch { index: i - depth }),
            Binding::Unbound => Err(SubstError::Unbound { index: i - depth }),
        }
    }

    fn proof_at(&self, i: usize, depth: usize) -> Result<Proof, SubstError> {
        match self.get(i - depth) {
            Binding::Proof(p) => Ok(lift_proof(&p, 0, depth)),
            Binding::Rename(j) => Ok(Proof::Var(j + depth)),
            Binding::Term(_) => Err(SubstError::KindMismatch { index: i - depth }),
            Binding::Unbound => Err(SubstError::Unbound { index: i - depth }),
        }
    }
}

fn opt<T, E>(m: &Option<Box<T>>, f: impl FnOnce(&T) -> Result<T, E>) -> Result<Option<Box<T>>, E> {
    match m {
        None => Ok(None),
        Some(b) => Ok(Some(Box::new(f(b)?))),
    }
}

/// Stack headroom for the traversal; substituted trees can be deep.
fn grow<T>(f: impl FnOnce() -> T) -> T {
    stacker::maybe_grow(1024 * 1024, 16 * 1024 * 1024, f)
}

pub fn apply_ty(s: &Subst, depth: usize, ty: &Ty) -> Result<Ty, SubstError> {
    grow(|| apply_ty_inner(s, depth, ty))
}

fn apply_ty_inner(s: &Subst, depth: usize, ty: &Ty) -> Result<Ty, SubstError> {
    use Ty::*;
    Ok(match ty {
        Unit => Unit,
        Nat => Nat,
        Fn(a, b) => Fn(
            Box::new(apply_ty(s, depth, a)?),
            Box::new(apply_ty(s, depth + 1, b)?),
        ),
        Pair(a, b) => Pair(
            Box::new(apply_ty(s, depth, a)?),
            Box::new(apply_ty(s, depth + 1, b)?),
        ),
        Sum(a, b) => Sum(
            Box::new(apply_ty(s, depth, a)?),
            Box::new(apply_ty(s, depth, b)?),
        ),
        Pre(p, a) => Pre(
            Box::new(apply_prop(s, depth, p)?),
            Box::new(apply_ty(s, depth + 1, a)?),
        ),
        Subset(a, p) => Subset(
            Box::new(apply_ty(s, depth, a)?),
            Box::new(apply_prop(s, depth + 1, p)?),
        ),
        All(a, b) => All(
            Box::new(apply_ty(s, depth, a)?),
            Box::new(apply_ty(s, depth + 1, b)?),
        ),
        Ex(a, b) => Ex(
            Box::new(apply_ty(s, depth, a)?),
            Box::new(apply_ty(s, depth + 1, b)?),
        ),
    })
}

pub fn apply_prop(s: &Subst, depth: usize, p: &Prop) -> Result<Prop, SubstError> {
    grow(|| apply_prop_inner(s, depth, p))
}

fn apply_prop_inner(s: &Subst, depth: usize, p: &Prop) -> Result<Prop, SubstError> {
    use Prop::*;
    Ok(match p {
        Top => Top,
        Bot => Bot,
        Imp(a, b) => Imp(
            Box::new(apply_prop(s, depth, a)?),
            Box::new(apply_prop(s, depth + 1, b)?),
        ),
        And(a, b) => And(
            Box::new(apply_prop(s, depth, a)?),
            Box::new(apply_prop(s, depth + 1, b)?),
        ),
        Or(a, b) => Or(
            Box::new(apply_prop(s, depth, a)?),
            Box::new(apply_prop(s, depth, b)?),
        ),
        All(t, q) => All(
            Box::new(apply_ty(s, depth, t)?),
            Box::new(apply_prop(s, depth + 1, q)?),
        ),
        Ex(t, q) => Ex(
            Box::new(apply_ty(s, depth, t)?),
            Box::new(apply_prop(s, depth + 1, q)?),
        ),
        Eq(t, a, b) => Eq(
            Box::new(apply_ty(s, depth, t)?),
            Box::new(apply_term(s, depth, a)?),
            Box::new(apply_term(s, depth, b)?),
        ),
    })
}

pub fn apply_term(s: &Subst, depth: usize, t: &Term) -> Result<Term, SubstError> {
    grow(|| apply_term_inner(s, depth, t))
}

fn apply_term_inner(s: &Subst, depth: usize, t: &Term) -> Result<Term, SubstError> {
    use Term::*;
    Ok(match t {
        Var(i) => {
            if *i < depth {
                Var(*i)
            } else {
                s.term_at(*i, depth)?
            }
        }
        Unit => Unit,
        Lam(a, e) => Lam(
            Box::new(apply_ty(s, depth, a)?),
            Box::new(apply_term(s, depth + 1, e)?),
        ),
        App(f, a) => App(
            Box::new(apply_term(s, depth, f)?),
            Box::new(apply_term(s, depth, a)?),
        ),
        Pair(a, b) => Pair(
            Box::new(apply_term(s, depth, a)?),
            Box::new(apply_term(s, depth, b)?),
        ),
        LetPair {
            annot,
            motive,
            scrut,
            body,
        } => LetPair {
            annot: Box::new(apply_ty(s, depth, annot)?),
            motive: opt(motive, |m| apply_ty(s, depth + 1, m))?,
            scrut: Box::new(apply_term(s, depth, scrut)?),
            body: Box::new(apply_term(s, depth + 2, body)?),
        },
        Inl(e) => Inl(Box::new(apply_term(s, depth, e)?)),
        Inr(e) => Inr(Box::new(apply_term(s, depth, e)?)),
        Cases {
            motive,
            scrut,
            left,
            right,
        } => Cases {
            motive: Box::new(apply_ty(s, depth + 1, motive)?),
            scrut: Box::new(apply_term(s, depth, scrut)?),
            left: Box::new(apply_term(s, depth + 1, left)?),
            right: Box::new(apply_term(s, depth + 1, right)?),
        },
        LamPr(p, e) => LamPr(
            Box::new(apply_prop(s, depth, p)?),
            Box::new(apply_term(s, depth + 1, e)?),
        ),
        AppPr(f, p) => AppPr(
            Box::new(apply_term(s, depth, f)?),
            Box::new(apply_proof(s, depth, p)?),
        ),
        SetIntro(a, p) => SetIntro(
            Box::new(apply_term(s, depth, a)?),
            Box::new(apply_proof(s, depth, p)?),
        ),
        LetSet {
            annot,
            motive,
            scrut,
            body,
        } => LetSet {
            annot: Box::new(apply_ty(s, depth, annot)?),
            motive: opt(motive, |m| apply_ty(s, depth + 1, m))?,
            scrut: Box::new(apply_term(s, depth, scrut)?),
            body: Box::new(apply_term(s, depth + 2, body)?),
        },
        LamIr(a, e) => LamIr(
            Box::new(apply_ty(s, depth, a)?),
            Box::new(apply_term(s, depth + 1, e)?),
        ),
        AppIr(f, a) => AppIr(
            Box::new(apply_term(s, depth, f)?),
            Box::new(apply_term(s, depth, a)?),
        ),
        Repr(a, b) => Repr(
            Box::new(apply_term(s, depth, a)?),
            Box::new(apply_term(s, depth, b)?),
        ),
        LetRepr {
            annot,
            motive,
            scrut,
            body,
        } => LetRepr {
            annot: Box::new(apply_ty(s, depth, annot)?),
            motive: opt(motive, |m| apply_ty(s, depth + 1, m))?,
            scrut: Box::new(apply_term(s, depth, scrut)?),
            body: Box::new(apply_term(s, depth + 2, body)?),
        },
        Zero => Zero,
        Succ => Succ,
        Natrec {
            motive,
            scrut,
            zero,
            succ,
        } => Natrec {
            motive: Box::new(apply_ty(s, depth + 1, motive)?),
            scrut: Box::new(apply_term(s, depth, scrut)?),
            zero: Box::new(apply_term(s, depth, zero)?),
            succ: Box::new(apply_term(s, depth + 2, succ)?),
        },
        Absurd(p) => Absurd(Box::new(apply_proof(s, depth, p)?)),
    })
}

pub fn apply_proof(s: &Subst, depth: usize, p: &Proof) -> Result<Proof, SubstError> {
    grow(|| apply_proof_inner(s, depth, p))
}

fn apply_proof_inner(s: &Subst, depth: usize, p: &Proof) -> Result<Proof, SubstError> {
    use Proof::*;
    Ok(match p {
        Var(i) => {
            if *i < depth {
                Var(*i)
            } else {
                s.proof_at(*i, depth)?
            }
        }
        TrueIntro => TrueIntro,
        Absurd(q) => Absurd(Box::new(apply_proof(s, depth, q)?)),
        ImpIntro(h, q) => ImpIntro(
            Box::new(apply_prop(s, depth, h)?),
            Box::new(apply_proof(s, depth + 1, q)?),
        ),
        App(f, a) => App(
            Box::new(apply_proof(s, depth, f)?),
            Box::new(apply_proof(s, depth, a)?),
        ),
        AndIntro(a, b) => AndIntro(
            Box::new(apply_proof(s, depth, a)?),
            Box::new(apply_proof(s, depth, b)?),
        ),
        LetAnd {
            annot,
            motive,
            scrut,
            body,
        } => LetAnd {
            annot: Box::new(apply_prop(s, depth, annot)?),
            motive: opt(motive, |m| apply_prop(s, depth + 1, m))?,
            scrut: Box::new(apply_proof(s, depth, scrut)?),
            body: Box::new(apply_proof(s, depth + 2, body)?),
        },
        Orl(q) => Orl(Box::new(apply_proof(s, depth, q)?)),
        Orr(q) => Orr(Box::new(apply_proof(s, depth, q)?)),
        CasesOr {
            motive,
            scrut,
            left,
            right,
        } => CasesOr {
            motive: Box::new(apply_prop(s, depth + 1, motive)?),
            scrut: Box::new(apply_proof(s, depth, scrut)?),
            left: Box::new(apply_proof(s, depth + 1, left)?),
            right: Box::new(apply_proof(s, depth + 1, right)?),
        },
        Gen(t, q) => Gen(
            Box::new(apply_ty(s, depth, t)?),
            Box::new(apply_proof(s, depth + 1, q)?),
        ),
        Spec(q, a) => Spec(
            Box::new(apply_proof(s, depth, q)?),
            Box::new(apply_term(s, depth, a)?),
        ),
        Wit(a, q) => Wit(
            Box::new(apply_term(s, depth, a)?),
            Box::new(apply_proof(s, depth, q)?),
        ),
        LetExists {
            annot,
            motive,
            scrut,
            body,
        } => LetExists {
            annot: Box::new(apply_prop(s, depth, annot)?),
            motive: opt(motive, |m| apply_prop(s, depth + 1, m))?,
            scrut: Box::new(apply_proof(s, depth, scrut)?),
            body: Box::new(apply_proof(s, depth + 2, body)?),
        },
        LetPairPr {
            annot,
            motive,
            scrut,
            body,
        } => LetPairPr {
            annot: Box::new(apply_ty(s, depth, annot)?),
            motive: opt(motive, |m| apply_prop(s, depth + 1, m))?,
            scrut: Box::new(apply_term(s, depth, scrut)?),
            body: Box::new(apply_proof(s, depth + 2, body)?),
        },
        LetSetPr {
            annot,
            motive,
            scrut,
            body,
        } => LetSetPr {
            annot: Box::new(apply_ty(s, depth, annot)?),
            motive: opt(motive, |m| apply_prop(s, depth + 1, m))?,
            scrut: Box::new(apply_term(s, depth, scrut)?),
            body: Box::new(apply_proof(s, depth + 2, body)?),
        },
        LetReprPr {
            annot,
            motive,
            scrut,
            body,
        } => LetReprPr {
            annot: Box::new(apply_ty(s, depth, annot)?),
            motive: opt(motive, |m| apply_prop(s, depth + 1, m))?,
            scrut: Box::new(apply_term(s, depth, scrut)?),
            body: Box::new(apply_proof(s, depth + 2, body)?),
        },
        Subst {
            motive,
            lhs,
            rhs,
            eq,
            body,
        } => Subst {
            motive: Box::new(apply_prop(s, depth + 1, motive)?),
            lhs: Box::new(apply_term(s, depth, lhs)?),
            rhs: Box::new(apply_term(s, depth, rhs)?),
            eq: Box::new(apply_proof(s, depth, eq)?),
            body: Box::new(apply_proof(s, depth, body)?),
        },
        CasesPr {
            motive,
            scrut,
            left,
            right,
        } => CasesPr {
            motive: Box::new(apply_prop(s, depth + 1, motive)?),
            scrut: Box::new(apply_term(s, depth, scrut)?),
            left: Box::new(apply_proof(s, depth + 1, left)?),
            right: Box::new(apply_proof(s, depth + 1, right)?),
        },
        Ind {
            motive,
            scrut,
            zero,
            succ,
        } => Ind {
            motive: Box::new(apply_prop(s, depth + 1, motive)?),
            scrut: Box::new(apply_term(s, depth, scrut)?),
            zero: Box::new(apply_proof(s, depth, zero)?),
            succ: Box::new(apply_proof(s, depth + 2, succ)?),
        },
        Rfl(a) => Rfl(Box::new(apply_term(s, depth, a)?)),
        Uniq(a) => Uniq(Box::new(apply_term(s, depth, a)?)),
        Discr(a, b, q) => Discr(
            Box::new(apply_term(s, depth, a)?),
            Box::new(apply_term(s, depth, b)?),
            Box::new(apply_proof(s, depth, q)?),
        ),
        BetaPr { hyp, body, arg } => BetaPr {
            hyp: Box::new(apply_prop(s, depth, hyp)?),
            body: Box::new(apply_term(s, depth + 1, body)?),
            arg: Box::new(apply_proof(s, depth, arg)?),
        },
        BetaTy { dom, body, arg } => BetaTy {
            dom: Box::new(apply_ty(s, depth, dom)?),
            body: Box::new(apply_term(s, depth + 1, body)?),
            arg: Box::new(apply_term(s, depth, arg)?),
        },
        BetaIr { dom, body, arg } => BetaIr {
            dom: Box::new(apply_ty(s, depth, dom)?),
            body: Box::new(apply_term(s, depth + 1, body)?),
            arg: Box::new(apply_term(s, depth, arg)?),
        },
        BetaLeft {
            sum,
            motive,
            left,
            right,
            arg,
        } => BetaLeft {
            sum: Box::new(apply_ty(s, depth, sum)?),
            motive: Box::new(apply_ty(s, depth + 1, motive)?),
            left: Box::new(apply_term(s, depth + 1, left)?),
            right: Box::new(apply_term(s, depth + 1, right)?),
            arg: Box::new(apply_term(s, depth, arg)?),
        },
        BetaRight {
            sum,
            motive,
            left,
            right,
            arg,
        } => BetaRight {
            sum: Box::new(apply_ty(s, depth, sum)?),
            motive: Box::new(apply_ty(s, depth + 1, motive)?),
            left: Box::new(apply_term(s, depth + 1, left)?),
            right: Box::new(apply_term(s, depth + 1, right)?),
            arg: Box::new(apply_term(s, depth, arg)?),
        },
        BetaZero { motive, zero, succ } => BetaZero {
            motive: Box::new(apply_ty(s, depth + 1, motive)?),
            zero: Box::new(apply_term(s, depth, zero)?),
            succ: Box::new(apply_term(s, depth + 2, succ)?),
        },
        BetaSucc {
            motive,
            arg,
            zero,
            succ,
        } => BetaSucc {
            motive: Box::new(apply_ty(s, depth + 1, motive)?),
            arg: Box::new(apply_term(s, depth, arg)?),
            zero: Box::new(apply_term(s, depth, zero)?),
            succ: Box::new(apply_term(s, depth + 2, succ)?),
        },
        BetaPair {
            annot,
            motive,
            fst,
            snd,
            body,
        } => BetaPair {
            annot: Box::new(apply_ty(s, depth, annot)?),
            motive: opt(motive, |m| apply_ty(s, depth + 1, m))?,
            fst: Box::new(apply_term(s, depth, fst)?),
            snd: Box::new(apply_term(s, depth, snd)?),
            body: Box::new(apply_term(s, depth + 2, body)?),
        },
        BetaSet {
            annot,
            motive,
            elem,
            pf,
            body,
        } => BetaSet {
            annot: Box::new(apply_ty(s, depth, annot)?),
            motive: opt(motive, |m| apply_ty(s, depth + 1, m))?,
            elem: Box::new(apply_term(s, depth, elem)?),
            pf: Box::new(apply_proof(s, depth, pf)?),
            body: Box::new(apply_term(s, depth + 2, body)?),
        },
        BetaRepr {
            annot,
            motive,
            ghost,
            wit,
            body,
        } => BetaRepr {
            annot: Box::new(apply_ty(s, depth, annot)?),
            motive: opt(motive, |m| apply_ty(s, depth + 1, m))?,
            ghost: Box::new(apply_term(s, depth, ghost)?),
            wit: Box::new(apply_term(s, depth, wit)?),
            body: Box::new(apply_term(s, depth + 2, body)?),
        },
        EtaTy(f) => EtaTy(Box::new(apply_term(s, depth, f)?)),
        IrPr {
            hyp,
            body,
            fst,
            snd,
        } => IrPr {
            hyp: Box::new(apply_prop(s, depth, hyp)?),
            body: Box::new(apply_term(s, depth + 1, body)?),
            fst: Box::new(apply_proof(s, depth, fst)?),
            snd: Box::new(apply_proof(s, depth, snd)?),
        },
        IrTy { fun, fst, snd } => IrTy {
            fun: Box::new(apply_term(s, depth, fun)?),
            fst: Box::new(apply_term(s, depth, fst)?),
            snd: Box::new(apply_term(s, depth, snd)?),
        },
        EtaIr {
            fst,
            snd,
            inhab,
            body,
        } => EtaIr {
            fst: Box::new(apply_term(s, depth, fst)?),
            snd: Box::new(apply_term(s, depth, snd)?),
            inhab: Box::new(apply_term(s, depth, inhab)?),
            body: Box::new(apply_proof(s, depth + 1, body)?),
        },
        EtaPr {
            fst,
            snd,
            inhab,
            body,
        } => EtaPr {
            fst: Box::new(apply_term(s, depth, fst)?),
            snd: Box::new(apply_term(s, depth, snd)?),
            inhab: Box::new(apply_proof(s, depth, inhab)?),
            body: Box::new(apply_proof(s, depth + 1, body)?),
        },
    })
}

fn lift_term(t: &Term, cutoff: usize, amount: usize) -> Term {
    apply_term(&Subst::lift(cutoff, amount), 0, t).expect("lifting is total")
}

fn lift_proof(p: &Proof, cutoff: usize, amount: usize) -> Proof {
    apply_proof(&Subst::lift(cutoff, amount), 0, p).expect("lifting is total")
}

macro_rules! impl_ops {
    ($ty:ty, $apply:ident) => {
        impl $ty {
            /// Shift free indices `>= cutoff` up by `amount`.
            pub fn lifted(&self, cutoff: usize, amount: usize) -> Self {
                $apply(&Subst::lift(cutoff, amount), 0, self).expect("lifting is total")
            }

            pub fn subst(&self, s: &Subst) -> Result<Self, SubstError> {
                $apply(s, 0, self)
            }

            /// Instantiate the innermost binder slot with a term.
            pub fn inst_term(&self, arg: &Term) -> Result<Self, SubstError> {
                $apply(&Subst::term0(arg.clone()), 0, self)
            }

            /// Instantiate the innermost binder slot with a proof.
            pub fn inst_proof(&self, arg: &Proof) -> Result<Self, SubstError> {
                $apply(&Subst::proof0(arg.clone()), 0, self)
            }

            /// Drop `amount` slots starting at `cutoff`; fails if they occur.
            pub fn strengthened(&self, cutoff: usize, amount: usize) -> Result<Self, SubstError> {
                $apply(&Subst::strengthen(cutoff, amount), 0, self)
            }

            /// True iff every free index is below `len`.
            pub fn scope_ok(&self, len: usize) -> bool {
                $apply(&Subst::scope(len), 0, self).is_ok()
            }
        }
    };
}

impl_ops!(Ty, apply_ty);
impl_ops!(Prop, apply_prop);
impl_ops!(Term, apply_term);
impl_ops!(Proof, apply_proof);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Term::*;

    fn lam(ty: Ty, body: Term) -> Term {
        Lam(Box::new(ty), Box::new(body))
    }

    #[test]
    fn lift_free_variable() {
        assert_eq!(Var(0).lifted(0, 1), Var(1));
    }

    #[test]
    fn lift_leaves_bound_variable() {
        let e = lam(Ty::Nat, Var(0));
        assert_eq!(e.lifted(0, 5), e);
    }

    #[test]
    fn lift_under_binder() {
        let e = lam(Ty::Nat, Var(1));
        assert_eq!(e.lifted(0, 2), lam(Ty::Nat, Var(3)));
    }

    #[test]
    fn lift_by_zero_is_identity() {
        let e = lam(Ty::Nat, App(Box::new(Var(0)), Box::new(Var(3))));
        assert_eq!(e.lifted(0, 0), e);
        assert_eq!(e.lifted(2, 0), e);
    }

    #[test]
    fn identity_subst() {
        let e = App(Box::new(Var(0)), Box::new(Var(1)));
        assert_eq!(e.subst(&Subst::identity()).unwrap(), e);
    }

    #[test]
    fn single_point() {
        let e = App(Box::new(Var(0)), Box::new(Var(0)));
        assert_eq!(
            e.inst_term(&Zero).unwrap(),
            App(Box::new(Zero), Box::new(Zero))
        );
    }

    #[test]
    fn instantiation_shifts_remaining() {
        assert_eq!(Var(1).inst_term(&Zero).unwrap(), Var(0));
    }

    #[test]
    fn kind_mismatch_is_reported() {
        let e = AppPr(Box::new(Var(1)), Box::new(Proof::Var(0)));
        let s = Subst::inner(vec![Binding::Term(Zero)]);
        assert_eq!(e.subst(&s), Err(SubstError::KindMismatch { index: 0 }));
    }

    #[test]
    fn strengthen_detects_occurrence() {
        assert_eq!(
            Var(0).strengthened(0, 1),
            Err(SubstError::Unbound { index: 0 })
        );
        assert_eq!(Var(1).strengthened(0, 1).unwrap(), Var(0));
    }

    #[test]
    fn scope_check() {
        assert!(Var(2).scope_ok(3));
        assert!(!Var(3).scope_ok(3));
        assert!(lam(Ty::Nat, Var(3)).scope_ok(3));
        assert!(!lam(Ty::Nat, Var(4)).scope_ok(3));
    }
}
