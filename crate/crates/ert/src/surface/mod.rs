//! Concrete syntax: lexing, parsing, name resolution and sugar
//! expansion (`trans [...]` chains and the `beta` rewriting form).

pub mod beta;
pub mod lexer;
pub mod parser;
pub mod resolve;

use crate::diag::Span;

/// A node with its source span.
#[derive(Clone, Debug)]
pub struct Sp<T> {
    pub node: T,
    pub span: Span,
}

impl<T> Sp<T> {
    pub fn new(node: T, span: Span) -> Sp<T> {
        Sp { node, span }
    }
}

pub type PTy = Box<Sp<STy>>;
pub type PProp = Box<Sp<SProp>>;
pub type PTerm = Box<Sp<STerm>>;
pub type PProof = Box<Sp<SProof>>;

#[derive(Clone, Debug)]
pub enum STy {
    Unit,
    Nat,
    /// `(x: A) -> B` or `A -> B` (binder `_`).
    Fn(String, PTy, PTy),
    Pair(String, PTy, PTy),
    Sum(PTy, PTy),
    /// `[u: phi] => A`.
    Pre(String, PProp, PTy),
    /// `{x: A | phi}`.
    Subset(String, PTy, PProp),
    Forall(String, PTy, PTy),
    Exists(String, PTy, PTy),
}

#[derive(Clone, Debug)]
pub enum SProp {
    Top,
    Bot,
    /// `[u: phi] => psi` or `phi => psi`.
    Imp(String, PProp, PProp),
    /// `(u: phi) /\ psi` or `phi /\ psi`.
    And(String, PProp, PProp),
    Or(PProp, PProp),
    Forall(String, PTy, PProp),
    Exists(String, PTy, PProp),
    /// `a = b` or `a =[A] b`.
    Eq(Option<PTy>, PTerm, PTerm),
}

#[derive(Clone, Debug)]
pub enum STerm {
    Var(String),
    Unit,
    Zero,
    Succ,
    NatLit(u64),
    Lam(String, PTy, PTerm),
    LamPr(String, PProp, PTerm),
    LamIr(String, PTy, PTerm),
    App(PTerm, PTerm),
    AppIr(PTerm, PTerm),
    AppPr(PTerm, PProof),
    Pair(PTerm, PTerm),
    Repr(PTerm, PTerm),
    SetIntro(PTerm, PProof),
    Inl(PTerm),
    Inr(PTerm),
    /// `let [z => C]? (x, y): T = e in body`.
    LetPair {
        motive: Option<(String, PTy)>,
        names: (String, String),
        annot: PTy,
        scrut: PTerm,
        body: PTerm,
    },
    LetSet {
        motive: Option<(String, PTy)>,
        names: (String, String),
        annot: PTy,
        scrut: PTerm,
        body: PTerm,
    },
    LetRepr {
        motive: Option<(String, PTy)>,
        names: (String, String),
        annot: PTy,
        scrut: PTerm,
        body: PTerm,
    },
    Cases {
        motive: (String, PTy),
        scrut: PTerm,
        left: (String, PTerm),
        right: (String, PTerm),
    },
    Natrec {
        motive: (String, PTy),
        scrut: PTerm,
        zero: PTerm,
        succ: (String, String, PTerm),
    },
    Absurd(PProof),
}

#[derive(Clone, Debug)]
pub enum SProof {
    Var(String),
    TrueIntro,
    AndIntro(PProof, PProof),
    Wit(PTerm, PProof),
    ImpIntro(String, PProp, PProof),
    Gen(String, PTy, PProof),
    App(PProof, PProof),
    Spec(PProof, PTerm),
    Orl(PProof),
    Orr(PProof),
    Absurd(PProof),
    LetAnd {
        motive: Option<(String, PProp)>,
        names: (String, String),
        annot: PProp,
        scrut: PProof,
        body: PProof,
    },
    LetExists {
        motive: Option<(String, PProp)>,
        names: (String, String),
        annot: PProp,
        scrut: PProof,
        body: PProof,
    },
    LetPairPr {
        motive: Option<(String, PProp)>,
        names: (String, String),
        annot: PTy,
        scrut: PTerm,
        body: PProof,
    },
    LetSetPr {
        motive: Option<(String, PProp)>,
        names: (String, String),
        annot: PTy,
        scrut: PTerm,
        body: PProof,
    },
    LetReprPr {
        motive: Option<(String, PProp)>,
        names: (String, String),
        annot: PTy,
        scrut: PTerm,
        body: PProof,
    },
    Subst {
        motive: (String, PProp),
        lhs: PTerm,
        rhs: PTerm,
        eq: PProof,
        body: PProof,
    },
    CasesOr {
        motive: (String, PProp),
        scrut: PProof,
        left: (String, PProof),
        right: (String, PProof),
    },
    CasesPr {
        motive: (String, PProp),
        scrut: PTerm,
        left: (String, PProof),
        right: (String, PProof),
    },
    Ind {
        motive: (String, PProp),
        scrut: PTerm,
        zero: PProof,
        succ: (String, String, PProof),
    },
    Rfl(PTerm),
    Uniq(PTerm),
    Discr(PTerm, PTerm, PProof),
    BetaPr {
        hyp: (String, PProp),
        body: PTerm,
        arg: PProof,
    },
    BetaTy {
        dom: (String, PTy),
        body: PTerm,
        arg: PTerm,
    },
    BetaIr {
        dom: (String, PTy),
        body: PTerm,
        arg: PTerm,
    },
    BetaLeft {
        motive: (String, PTy, PTy),
        left: (String, PTerm),
        right: (String, PTerm),
        arg: PTerm,
    },
    BetaRight {
        motive: (String, PTy, PTy),
        left: (String, PTerm),
        right: (String, PTerm),
        arg: PTerm,
    },
    BetaZero {
        motive: (String, PTy),
        zero: PTerm,
        succ: (String, String, PTerm),
    },
    BetaSucc {
        motive: (String, PTy),
        arg: PTerm,
        zero: PTerm,
        succ: (String, String, PTerm),
    },
    BetaPair {
        motive: Option<(String, PTy)>,
        names: (String, String),
        annot: PTy,
        body: PTerm,
        fst: PTerm,
        snd: PTerm,
    },
    BetaSet {
        motive: Option<(String, PTy)>,
        names: (String, String),
        annot: PTy,
        body: PTerm,
        elem: PTerm,
        pf: PProof,
    },
    BetaRepr {
        motive: Option<(String, PTy)>,
        names: (String, String),
        annot: PTy,
        body: PTerm,
        ghost: PTerm,
        wit: PTerm,
    },
    EtaTy(PTerm),
    IrPr {
        hyp: (String, PProp),
        body: PTerm,
        fst: PProof,
        snd: PProof,
    },
    IrTy {
        fun: PTerm,
        fst: PTerm,
        snd: PTerm,
    },
    EtaIr {
        fst: PTerm,
        snd: PTerm,
        inhab: PTerm,
        body: (String, PProof),
    },
    EtaPr {
        fst: PTerm,
        snd: PTerm,
        inhab: PProof,
        body: (String, PProof),
    },
    /// `trans [ t0 ={p0} t1 ={p1} ... tn ]`.
    TransChain {
        first: PTerm,
        links: Vec<(Sp<SProof>, Sp<STerm>)>,
    },
    /// `beta`: elaborated against the expected equality.
    ByBeta,
}

/// A top-level declaration.
#[derive(Clone, Debug)]
pub struct SurfaceDecl {
    pub name: String,
    pub span: Span,
    pub kind: SurfaceDeclKind,
}

#[derive(Clone, Debug)]
pub enum SurfaceDeclKind {
    Def { ty: Sp<STy>, body: Sp<STerm> },
    Thm { prop: Sp<SProp>, body: Sp<SProof> },
}
