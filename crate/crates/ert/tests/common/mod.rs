//! Shared helpers for the integration suites: corpus loading, judgment
//! harvesting, and seeded generation of well-typed terms.

#![allow(dead_code)]

use std::path::PathBuf;

use ert::ctx::{Context, Hyp};
use ert::driver::{check_path, DeclBody};
use ert::syntax::{Proof, Prop, Term, Ty};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus_files() -> Vec<PathBuf> {
    let dir = corpus_dir();
    ["arith.ert", "trans.ert", "eta_set.ert", "guards.ert"]
        .iter()
        .map(|f| dir.join(f))
        .collect()
}

/// Loads and checks the whole corpus, asserting every declaration
/// passes. Cached: the suites reuse the same resolved declarations.
pub fn checked_corpus() -> Vec<(String, DeclBody)> {
    static CACHE: std::sync::OnceLock<Vec<(String, DeclBody)>> = std::sync::OnceLock::new();
    CACHE
        .get_or_init(|| {
            let mut out = Vec::new();
            for path in corpus_files() {
                let report = check_path(&path).expect("corpus parses");
                assert!(
                    report.resolve_errors.is_empty(),
                    "corpus resolve errors: {:?}",
                    report.resolve_errors
                );
                for decl in report.decls {
                    if let Err(e) = &decl.result {
                        panic!("corpus declaration {} failed: {e}", decl.name);
                    }
                    out.push((decl.name, decl.body));
                }
            }
            out
        })
        .clone()
}

/// A judgment harvested from the corpus by peeling binder spines.
#[derive(Clone, Debug)]
pub enum Judgment {
    Term {
        ctx: Context,
        term: Term,
        ty: Ty,
    },
    Proof {
        ctx: Context,
        proof: Proof,
        prop: Prop,
    },
}

/// Peels lambda/generalization spines to produce open judgments.
pub fn peel(body: &DeclBody) -> Vec<Judgment> {
    let mut out = Vec::new();
    match body {
        DeclBody::Def { ty, term } => {
            let mut ctx = Context::empty();
            let mut term = term.clone();
            let mut ty = ty.clone();
            loop {
                out.push(Judgment::Term {
                    ctx: ctx.clone(),
                    term: term.clone(),
                    ty: ty.clone(),
                });
                match (term.clone(), ty.clone()) {
                    (Term::Lam(dom, body), Ty::Fn(a, b)) if dom == a => {
                        ctx.push(Hyp::Computational(*dom));
                        term = *body;
                        ty = *b;
                    }
                    (Term::LamIr(dom, body), Ty::All(a, b)) if dom == a => {
                        ctx.push(Hyp::Ghost(*dom));
                        term = *body;
                        ty = *b;
                    }
                    (Term::LamPr(hyp, body), Ty::Pre(h, b)) if hyp == h => {
                        ctx.push(Hyp::Propositional(*hyp));
                        term = *body;
                        ty = *b;
                    }
                    _ => break,
                }
            }
        }
        DeclBody::Thm { prop, proof } => {
            let mut ctx = Context::empty();
            let mut proof = proof.clone();
            let mut prop = prop.clone();
            loop {
                out.push(Judgment::Proof {
                    ctx: ctx.clone(),
                    proof: proof.clone(),
                    prop: prop.clone(),
                });
                match (proof.clone(), prop.clone()) {
                    (Proof::Gen(dom, body), Prop::All(a, b)) if dom == a => {
                        ctx.push(Hyp::Ghost(*dom));
                        proof = *body;
                        prop = *b;
                    }
                    (Proof::ImpIntro(hyp, body), Prop::Imp(h, b)) if hyp == h => {
                        ctx.push(Hyp::Propositional(*hyp));
                        proof = *body;
                        prop = *b;
                    }
                    _ => break,
                }
            }
        }
    }
    out
}

pub fn all_judgments() -> Vec<Judgment> {
    checked_corpus().iter().flat_map(|(_, b)| peel(b)).collect()
}

/// Collects every term subterm (with the number of binders above it).
pub fn term_subterms(t: &Term, depth: usize, out: &mut Vec<(Term, usize)>) {
    out.push((t.clone(), depth));
    match t {
        Term::Var(_) | Term::Unit | Term::Zero | Term::Succ => {}
        Term::Lam(_, e) | Term::LamIr(_, e) | Term::LamPr(_, e) => term_subterms(e, depth + 1, out),
        Term::App(f, a) | Term::AppIr(f, a) | Term::Pair(f, a) | Term::Repr(f, a) => {
            term_subterms(f, depth, out);
            term_subterms(a, depth, out);
        }
        Term::AppPr(f, _) | Term::SetIntro(f, _) => term_subterms(f, depth, out),
        Term::Inl(e) | Term::Inr(e) => term_subterms(e, depth, out),
        Term::LetPair { scrut, body, .. }
        | Term::LetSet { scrut, body, .. }
        | Term::LetRepr { scrut, body, .. } => {
            term_subterms(scrut, depth, out);
            term_subterms(body, depth + 2, out);
        }
        Term::Cases {
            scrut, left, right, ..
        } => {
            term_subterms(scrut, depth, out);
            term_subterms(left, depth + 1, out);
            term_subterms(right, depth + 1, out);
        }
        Term::Natrec {
            scrut, zero, succ, ..
        } => {
            term_subterms(scrut, depth, out);
            term_subterms(zero, depth, out);
            term_subterms(succ, depth + 2, out);
        }
        Term::Absurd(_) => {}
    }
}

/// All term subterms occurring anywhere in the corpus (from def bodies
/// and from the terms embedded in theorem statements).
pub fn corpus_term_subterms() -> Vec<(Term, usize)> {
    let mut out = Vec::new();
    for (_, body) in checked_corpus() {
        match body {
            DeclBody::Def { term, .. } => term_subterms(&term, 0, &mut out),
            DeclBody::Thm { prop, .. } => prop_terms(&prop, 0, &mut out),
        }
    }
    out
}

fn prop_terms(p: &Prop, depth: usize, out: &mut Vec<(Term, usize)>) {
    match p {
        Prop::Top | Prop::Bot => {}
        Prop::Imp(a, b) | Prop::And(a, b) => {
            prop_terms(a, depth, out);
            prop_terms(b, depth + 1, out);
        }
        Prop::Or(a, b) => {
            prop_terms(a, depth, out);
            prop_terms(b, depth, out);
        }
        Prop::All(_, q) | Prop::Ex(_, q) => prop_terms(q, depth + 1, out),
        Prop::Eq(_, a, b) => {
            term_subterms(a, depth, out);
            term_subterms(b, depth, out);
        }
    }
}

pub use ert::gen::Rng;

pub fn gen_fo_ty(rng: &mut Rng, depth: u32) -> ert::syntax::Ty {
    ert::gen::fo_ty(rng, depth)
}

pub fn gen_term(
    rng: &mut Rng,
    slots: &[ert::syntax::Ty],
    target: &ert::syntax::Ty,
    depth: u32,
) -> ert::syntax::Term {
    ert::gen::term(rng, slots, target, depth)
}

/// Converts a first-order value of the given type back into a closed,
/// fully annotated term literal.
pub fn value_literal(v: &ert::stlc::Value, ty: &ert::stlc::Ty) -> Option<ert::stlc::Expr> {
    use ert::stlc::{Expr, Ty, Value};
    Some(match (v, ty) {
        (Value::Unit, Ty::Unit) => Expr::Unit,
        (Value::Nat(n), Ty::Nat) => {
            let mut t = Expr::Zero;
            let mut k = n.clone();
            while k > num_bigint::BigUint::ZERO {
                t = Expr::App(Box::new(Expr::Succ), Box::new(t));
                k -= 1u32;
            }
            t
        }
        (Value::Inl(x), Ty::Sum(a, b)) => {
            Expr::Inl(Some((**b).clone()), Box::new(value_literal(x, a)?))
        }
        (Value::Inr(x), Ty::Sum(a, b)) => {
            Expr::Inr(Some((**a).clone()), Box::new(value_literal(x, b)?))
        }
        (Value::Pair(a, b), Ty::Prod(ta, tb)) => Expr::Pair(
            Box::new(value_literal(a, ta)?),
            Box::new(value_literal(b, tb)?),
        ),
        _ => return None,
    })
}
