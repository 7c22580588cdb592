//! Core syntax in de Bruijn form.
//!
//! Four mutually recursive categories: types, propositions, terms and
//! proofs. Term, ghost and proof variables share a single index space;
//! the kind discipline is enforced by the checker, not the indices.
//! Every binder extends the context by exactly one slot.

/// Types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ty {
    Unit,
    Nat,
    /// `(x: A) -> B`; the codomain binds `x`.
    Fn(Box<Ty>, Box<Ty>),
    /// `(x: A) * B`; the second component binds `x`.
    Pair(Box<Ty>, Box<Ty>),
    /// `A + B`.
    Sum(Box<Ty>, Box<Ty>),
    /// `[u: phi] => A`; the body binds the proof `u`.
    Pre(Box<Prop>, Box<Ty>),
    /// `{x: A | phi}`; the predicate binds `x`.
    Subset(Box<Ty>, Box<Prop>),
    /// `forall x: A, B` (intersection); `B` binds the ghost `x`.
    All(Box<Ty>, Box<Ty>),
    /// `exists x: A, B` (union); `B` binds the ghost `x`.
    Ex(Box<Ty>, Box<Ty>),
}

/// Propositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Prop {
    Top,
    Bot,
    /// `[u: phi] => psi`; `psi` binds `u`.
    Imp(Box<Prop>, Box<Prop>),
    /// `(u: phi) /\ psi`; `psi` binds `u`.
    And(Box<Prop>, Box<Prop>),
    /// `phi \/ psi`.
    Or(Box<Prop>, Box<Prop>),
    /// `forall x: A, phi`; `phi` binds `x`.
    All(Box<Ty>, Box<Prop>),
    /// `exists x: A, phi`; `phi` binds `x`.
    Ex(Box<Ty>, Box<Prop>),
    /// `a =[A] b`; both sides live in the ambient (upgraded) scope.
    Eq(Box<Ty>, Box<Term>, Box<Term>),
}

/// Terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(usize),
    Unit,
    /// `\x: A. e`; the body binds `x`.
    Lam(Box<Ty>, Box<Term>),
    App(Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    /// `let (x, y): annot = scrut in body`; the body binds `x` then `y`.
    /// The optional motive binds the scrutinee variable.
    LetPair {
        annot: Box<Ty>,
        motive: Option<Box<Ty>>,
        scrut: Box<Term>,
        body: Box<Term>,
    },
    Inl(Box<Term>),
    Inr(Box<Term>),
    /// `cases [x => motive] scrut (inl y => left) (inr z => right)`.
    Cases {
        motive: Box<Ty>,
        scrut: Box<Term>,
        left: Box<Term>,
        right: Box<Term>,
    },
    /// `\\u: phi. e` — precondition introduction; the body binds `u`.
    LamPr(Box<Prop>, Box<Term>),
    /// `f {p}` — precondition elimination.
    AppPr(Box<Term>, Box<Proof>),
    /// `{a, p}` — subset introduction.
    SetIntro(Box<Term>, Box<Proof>),
    /// `let {x, u}: annot = scrut in body`; the body binds `x` then `u`.
    LetSet {
        annot: Box<Ty>,
        motive: Option<Box<Ty>>,
        scrut: Box<Term>,
        body: Box<Term>,
    },
    /// `\|x: A|. e` — intersection introduction; the body binds the ghost `x`.
    LamIr(Box<Ty>, Box<Term>),
    /// `f |a|` — intersection elimination.
    AppIr(Box<Term>, Box<Term>),
    /// `(|a|, b)` — union introduction; `a` is ghost.
    Repr(Box<Term>, Box<Term>),
    /// `let (|x|, y): annot = scrut in body`; the body binds ghost `x` then `y`.
    LetRepr {
        annot: Box<Ty>,
        motive: Option<Box<Ty>>,
        scrut: Box<Term>,
        body: Box<Term>,
    },
    Zero,
    /// `succ` as a first-class function of type `Nat -> Nat`.
    Succ,
    /// `natrec [x => motive] scrut zero (|succ n|, y => succ_case)`;
    /// the successor case binds the ghost `n` then the result `y`.
    Natrec {
        motive: Box<Ty>,
        scrut: Box<Term>,
        zero: Box<Term>,
        succ: Box<Term>,
    },
    Absurd(Box<Proof>),
}

/// Proofs, including the equality axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Proof {
    Var(usize),
    /// `<>`.
    TrueIntro,
    Absurd(Box<Proof>),
    /// `\\u: phi. p`; the body binds `u`.
    ImpIntro(Box<Prop>, Box<Proof>),
    /// Modus ponens `p q`.
    App(Box<Proof>, Box<Proof>),
    /// `<p, q>`.
    AndIntro(Box<Proof>, Box<Proof>),
    /// `let <u, v>: annot = scrut in body`; the body binds `u` then `v`.
    LetAnd {
        annot: Box<Prop>,
        motive: Option<Box<Prop>>,
        scrut: Box<Proof>,
        body: Box<Proof>,
    },
    Orl(Box<Proof>),
    Orr(Box<Proof>),
    CasesOr {
        motive: Box<Prop>,
        scrut: Box<Proof>,
        left: Box<Proof>,
        right: Box<Proof>,
    },
    /// `\|x: A|. p` — generalization; the body binds the ghost `x`.
    Gen(Box<Ty>, Box<Proof>),
    /// `p |a|` — specialization.
    Spec(Box<Proof>, Box<Term>),
    /// `<|a|, p>` — existential witness.
    Wit(Box<Term>, Box<Proof>),
    /// `let <|x|, u>: annot = scrut in body`; binds `x` then `u`.
    LetExists {
        annot: Box<Prop>,
        motive: Option<Box<Prop>>,
        scrut: Box<Proof>,
        body: Box<Proof>,
    },
    /// `let (x, y): annot = scrut in body` over a term scrutinee.
    LetPairPr {
        annot: Box<Ty>,
        motive: Option<Box<Prop>>,
        scrut: Box<Term>,
        body: Box<Proof>,
    },
    LetSetPr {
        annot: Box<Ty>,
        motive: Option<Box<Prop>>,
        scrut: Box<Term>,
        body: Box<Proof>,
    },
    LetReprPr {
        annot: Box<Ty>,
        motive: Option<Box<Prop>>,
        scrut: Box<Term>,
        body: Box<Proof>,
    },
    /// `subst [x => motive] [lhs] [rhs] eq body`.
    Subst {
        motive: Box<Prop>,
        lhs: Box<Term>,
        rhs: Box<Term>,
        eq: Box<Proof>,
        body: Box<Proof>,
    },
    CasesPr {
        motive: Box<Prop>,
        scrut: Box<Term>,
        left: Box<Proof>,
        right: Box<Proof>,
    },
    /// `ind [x => motive] scrut zero (succ n, u => succ_case)`;
    /// the successor case binds `n` then the hypothesis `u`.
    Ind {
        motive: Box<Prop>,
        scrut: Box<Term>,
        zero: Box<Proof>,
        succ: Box<Proof>,
    },
    Rfl(Box<Term>),
    Uniq(Box<Term>),
    Discr(Box<Term>, Box<Term>, Box<Proof>),
    /// `beta_pr (u: hyp => body) arg`.
    BetaPr {
        hyp: Box<Prop>,
        body: Box<Term>,
        arg: Box<Proof>,
    },
    /// `beta_ty (x: dom => body) arg`.
    BetaTy {
        dom: Box<Ty>,
        body: Box<Term>,
        arg: Box<Term>,
    },
    /// `beta_ir (x: dom => body) arg`.
    BetaIr {
        dom: Box<Ty>,
        body: Box<Term>,
        arg: Box<Term>,
    },
    /// `beta_left [x: sum => motive] (inl y => left) (inr z => right) arg`.
    BetaLeft {
        sum: Box<Ty>,
        motive: Box<Ty>,
        left: Box<Term>,
        right: Box<Term>,
        arg: Box<Term>,
    },
    BetaRight {
        sum: Box<Ty>,
        motive: Box<Ty>,
        left: Box<Term>,
        right: Box<Term>,
        arg: Box<Term>,
    },
    /// `beta_zero [x => motive] zero (|succ n|, y => succ)`.
    BetaZero {
        motive: Box<Ty>,
        zero: Box<Term>,
        succ: Box<Term>,
    },
    /// `beta_succ [x => motive] arg zero (|succ n|, y => succ)`.
    BetaSucc {
        motive: Box<Ty>,
        arg: Box<Term>,
        zero: Box<Term>,
        succ: Box<Term>,
    },
    /// `beta_pair [w => motive]? ((y, z): annot => body) (fst, snd)`.
    BetaPair {
        annot: Box<Ty>,
        motive: Option<Box<Ty>>,
        fst: Box<Term>,
        snd: Box<Term>,
        body: Box<Term>,
    },
    /// `beta_set [w => motive]? ({y, u}: annot => body) {elem, pf}`.
    BetaSet {
        annot: Box<Ty>,
        motive: Option<Box<Ty>>,
        elem: Box<Term>,
        pf: Box<Proof>,
        body: Box<Term>,
    },
    /// `beta_repr [w => motive]? ((|y|, z): annot => body) (|ghost|, wit)`.
    BetaRepr {
        annot: Box<Ty>,
        motive: Option<Box<Ty>>,
        ghost: Box<Term>,
        wit: Box<Term>,
        body: Box<Term>,
    },
    /// `eta_ty f`.
    EtaTy(Box<Term>),
    /// `ir_pr (u: hyp => body) p q`.
    IrPr {
        hyp: Box<Prop>,
        body: Box<Term>,
        fst: Box<Proof>,
        snd: Box<Proof>,
    },
    /// `ir_ty fun a b`.
    IrTy {
        fun: Box<Term>,
        fst: Box<Term>,
        snd: Box<Term>,
    },
    /// `eta_ir f g |inhab| (x => body)`; the body binds `x`.
    EtaIr {
        fst: Box<Term>,
        snd: Box<Term>,
        inhab: Box<Term>,
        body: Box<Proof>,
    },
    /// `eta_pr f g {inhab} (u => body)`; the body binds `u`.
    EtaPr {
        fst: Box<Term>,
        snd: Box<Term>,
        inhab: Box<Proof>,
        body: Box<Proof>,
    },
}

/// An expression of any of the four categories; used by generic
/// operations like substitution entries and scope checking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Ty(Ty),
    Prop(Prop),
    Term(Term),
    Proof(Proof),
}

/// Alpha-equivalence. De Bruijn representation makes this structural
/// equality, annotations included; no reduction is ever performed.
pub fn alpha_eq<T: PartialEq>(a: &T, b: &T) -> bool {
    a == b
}

impl Term {
    /// Builds the numeral `n` as iterated application of `succ`.
    pub fn numeral(n: u64) -> Term {
        let mut t = Term::Zero;
        for _ in 0..n {
            t = Term::App(Box::new(Term::Succ), Box::new(t));
        }
        t
    }

    /// If the term is a numeral (iterated `succ` of `0`), returns its value.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut t = self;
        let mut n = 0u64;
        loop {
            match t {
                Term::Zero => return Some(n),
                Term::App(f, a) if **f == Term::Succ => {
                    n = n.checked_add(1)?;
                    t = a;
                }
                _ => return None,
            }
        }
    }
}
