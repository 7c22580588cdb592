//! Erasure preservation, erasure/substitution commutation, and the
//! simply-typed substitution lemmas (syntactic and semantic).

mod common;

use ert::erase::{erase_ctx, erase_subst, erase_term, erase_ty};
use ert::stlc::{self, Cmp, Outcome};
use ert::subst::{Binding, Subst};
use ert::syntax::{Proof, Term, Ty};

use common::{all_judgments, corpus_term_subterms, value_literal, Judgment, Rng};

/// Every corpus derivation erases to a well-typed simply-typed term at
/// the erased type, in the erased context. Exact, no exceptions.
#[test]
fn erasure_preserves_typing() {
    let mut checked = 0;
    for judgment in all_judgments() {
        if let Judgment::Term { ctx, term, ty } = judgment {
            let ectx = erase_ctx(&ctx);
            let eterm = erase_term(&term);
            let ety = erase_ty(&ty);
            stlc::check(&ectx, &eterm, &ety)
                .unwrap_or_else(|e| panic!("erasure broke typing: {e}\nterm {term:?}"));
            checked += 1;
        }
    }
    assert!(checked >= 10, "too few term derivations: {checked}");
}

/// `|[s]a| = [|s|]|a|` for at least 500 generated pairs of corpus
/// subterms and kind-correct substitutions. Structural equality, exact.
#[test]
fn erasure_commutes_with_substitution() {
    let mut rng = Rng::new(0xab5);
    let all = corpus_term_subterms();
    let closed: Vec<Term> = all
        .iter()
        .filter(|(t, d)| *d == 0 && t.scope_ok(0))
        .map(|(t, _)| t.clone())
        .collect();
    let mut tested = 0;
    let mut i = 0usize;
    while tested < 500 {
        let (term, depth) = all[i % all.len()].clone();
        i += 1;
        let free = depth + 3;
        let entries: Vec<Binding> = (0..free)
            .map(|_| match rng.below(3) {
                0 => Binding::Term(closed[rng.below(closed.len() as u64) as usize].clone()),
                1 => Binding::Rename(rng.below(4) as usize),
                _ => Binding::Proof(Proof::TrueIntro),
            })
            .collect();
        let s = Subst::inner(entries);
        let Ok(substituted) = term.subst(&s) else {
            continue; // kind mismatch; not a valid pair
        };
        let lhs = erase_term(&substituted);
        let rhs = stlc::subst(&erase_term(&term), &erase_subst(&s));
        assert_eq!(lhs, rhs, "erasure and substitution disagree on {term:?}");
        tested += 1;
    }
}

/// The erasure of a type never depends on its term content, so
/// substitution leaves it unchanged.
#[test]
fn type_erasure_ignores_substitution() {
    for judgment in all_judgments() {
        if let Judgment::Term { ty, .. } = judgment {
            let s = Subst::inner(vec![Binding::Term(Term::Zero)]);
            if let Ok(substituted) = ty.subst(&s) {
                assert_eq!(erase_ty(&substituted), erase_ty(&ty));
            }
        }
    }
}

/// Erasure is idempotent on the fragment that embeds back.
#[test]
fn erasure_idempotent_on_embedded_image() {
    fn embed_ty(t: &stlc::Ty) -> Option<Ty> {
        Some(match t {
            stlc::Ty::Void => return None,
            stlc::Ty::Unit => Ty::Unit,
            stlc::Ty::Nat => Ty::Nat,
            stlc::Ty::Fn(a, b) => Ty::Fn(Box::new(embed_ty(a)?), Box::new(embed_ty(b)?)),
            stlc::Ty::Prod(a, b) => Ty::Pair(Box::new(embed_ty(a)?), Box::new(embed_ty(b)?)),
            stlc::Ty::Sum(a, b) => Ty::Sum(Box::new(embed_ty(a)?), Box::new(embed_ty(b)?)),
        })
    }
    fn embed(t: &stlc::Expr) -> Option<Term> {
        Some(match t {
            stlc::Expr::Var(i) => Term::Var(*i),
            stlc::Expr::Unit => Term::Unit,
            stlc::Expr::Zero => Term::Zero,
            stlc::Expr::Succ => Term::Succ,
            stlc::Expr::Lam(ty, body) => Term::Lam(Box::new(embed_ty(ty)?), Box::new(embed(body)?)),
            stlc::Expr::App(f, a) => Term::App(Box::new(embed(f)?), Box::new(embed(a)?)),
            stlc::Expr::Pair(a, b) => Term::Pair(Box::new(embed(a)?), Box::new(embed(b)?)),
            stlc::Expr::Inl(None, e) => Term::Inl(Box::new(embed(e)?)),
            stlc::Expr::Inr(None, e) => Term::Inr(Box::new(embed(e)?)),
            _ => return None,
        })
    }
    for judgment in all_judgments() {
        if let Judgment::Term { term, .. } = judgment {
            let erased = erase_term(&term);
            if let Some(embedded) = embed(&erased) {
                assert_eq!(erase_term(&embedded), erased);
            }
        }
    }
}

/// Simply-typed syntactic substitution: plugging a closed literal for
/// the innermost slot preserves typing.
#[test]
fn stlc_substitution_preserves_typing() {
    let mut rng = Rng::new(0x57);
    let mut tested = 0;
    for judgment in all_judgments() {
        let Judgment::Term { ctx, term, ty } = judgment else {
            continue;
        };
        if ctx.is_empty() {
            continue;
        }
        let ectx = erase_ctx(&ctx);
        let eterm = erase_term(&term);
        let ety = erase_ty(&ty);
        let slot = ectx.last().unwrap().clone();
        let Some((values, _)) = stlc::enumerate(&slot, 8) else {
            continue;
        };
        if values.is_empty() {
            continue;
        }
        let v = &values[rng.below(values.len() as u64) as usize];
        let Some(lit) = value_literal(v, &slot) else {
            continue;
        };
        let substituted = stlc::subst(&eterm, &stlc::Subst::single(lit));
        let rest: stlc::Ctx = ectx[..ectx.len() - 1].to_vec();
        stlc::check(&rest, &substituted, &ety)
            .unwrap_or_else(|e| panic!("stlc substitution broke typing: {e}"));
        tested += 1;
    }
    assert!(tested >= 10, "too few instances: {tested}");
}

/// Simply-typed semantic substitution: evaluating in an environment
/// equals substituting the environment's literals and evaluating
/// closed, compared extensionally at fuel 8.
#[test]
fn stlc_semantic_substitution() {
    let mut rng = Rng::new(0x5e);
    let mut tested = 0;
    for judgment in all_judgments() {
        let Judgment::Term { ctx, term, .. } = judgment else {
            continue;
        };
        if ctx.is_empty() {
            continue;
        }
        let ectx = erase_ctx(&ctx);
        let eterm = erase_term(&term);
        // Build a concrete environment with literal values per slot.
        let mut env: stlc::Env = Vec::new();
        let mut literals: Vec<stlc::Expr> = Vec::new();
        let mut ok = true;
        for slot in &ectx {
            match stlc::enumerate(slot, 4) {
                Some((values, _)) if !values.is_empty() => {
                    let v = values[rng.below(values.len() as u64) as usize].clone();
                    match value_literal(&v, slot) {
                        Some(lit) => {
                            env.push(Outcome::Value(v));
                            literals.push(lit);
                        }
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        // Innermost slot is index 0: reverse the literal list.
        literals.reverse();
        let s = stlc::Subst::inner(literals);
        let direct = stlc::eval(&env, &eterm);
        let via_subst = stlc::eval(&Vec::new(), &stlc::subst(&eterm, &s));
        assert_ne!(
            stlc::value_eq(&direct, &via_subst, 8),
            Cmp::False,
            "semantic substitution disagrees"
        );
        tested += 1;
    }
    assert!(tested >= 10, "too few instances: {tested}");
}

/// Monad law at the interpreter: `let x = v in x` evaluates like `v`.
#[test]
fn eval_let_left_identity() {
    let values = [
        stlc::Expr::Zero,
        stlc::Expr::Unit,
        stlc::Expr::Pair(Box::new(stlc::Expr::Zero), Box::new(stlc::Expr::Unit)),
        stlc::Expr::Lam(stlc::Ty::Nat, Box::new(stlc::Expr::Var(0))),
    ];
    for v in values {
        let wrapped = stlc::Expr::Let {
            annot: None,
            bound: Box::new(v.clone()),
            body: Box::new(stlc::Expr::Var(0)),
        };
        let a = stlc::eval(&Vec::new(), &wrapped);
        let b = stlc::eval(&Vec::new(), &v);
        assert_eq!(a, b);
    }
}

/// Evaluation is deterministic and unary addition computes correctly.
#[test]
fn eval_examples() {
    use common::checked_corpus;
    use ert::driver::DeclBody;
    for (name, body) in checked_corpus() {
        if name == "two_plus_three" {
            let DeclBody::Def { term, .. } = body else {
                panic!()
            };
            let erased = erase_term(&term);
            let out = stlc::eval(&Vec::new(), &erased);
            // Independent oracle: unary arithmetic by hand.
            let expected = Outcome::Value(stlc::Value::Nat(num_bigint::BigUint::from(2u32 + 3u32)));
            assert_eq!(stlc::value_eq(&out, &expected, 8), Cmp::True);
            let again = stlc::eval(&Vec::new(), &erased);
            assert_eq!(out, again, "evaluation must be deterministic");
        }
    }
}

/// The application clause propagates errors through bind.
#[test]
fn app_propagates_error() {
    let idfun = stlc::Expr::Lam(stlc::Ty::Nat, Box::new(stlc::Expr::Var(0)));
    let t = stlc::Expr::App(Box::new(idfun), Box::new(stlc::Expr::Error(None)));
    assert_eq!(stlc::eval(&Vec::new(), &t), Outcome::Error);
}

/// Natrec on zero takes the zero branch without touching the step.
#[test]
fn natrec_on_zero() {
    let t = stlc::Expr::Natrec {
        annot: None,
        scrut: Box::new(stlc::Expr::Zero),
        zero: Box::new(stlc::Expr::numeral(7)),
        succ: Box::new(stlc::Expr::Error(None)),
    };
    let out = stlc::eval(&Vec::new(), &t);
    assert_eq!(
        out,
        Outcome::Value(stlc::Value::Nat(num_bigint::BigUint::from(7u32)))
    );
}

/// Extensional comparison distinguishes and identifies closures.
#[test]
fn value_eq_extensional() {
    use stlc::{Expr, Ty as STy};
    // \x: Nat. succ x  versus  succ
    let eta_succ = Expr::Lam(
        STy::Nat,
        Box::new(Expr::App(Box::new(Expr::Succ), Box::new(Expr::Var(0)))),
    );
    let a = stlc::eval(&Vec::new(), &eta_succ);
    let b = stlc::eval(&Vec::new(), &Expr::Succ);
    assert_eq!(stlc::value_eq(&a, &b, 8), Cmp::Unknown); // agrees on 0..=8

    // \x: Nat. 0  versus  \x: Nat. x
    let const0 = Expr::Lam(STy::Nat, Box::new(Expr::Zero));
    let ident = Expr::Lam(STy::Nat, Box::new(Expr::Var(0)));
    let c = stlc::eval(&Vec::new(), &const0);
    let d = stlc::eval(&Vec::new(), &ident);
    assert_eq!(stlc::value_eq(&c, &d, 8), Cmp::False);

    // Finite domain: equality is decided exactly.
    let lhs = Expr::Lam(STy::Unit, Box::new(Expr::Zero));
    let rhs = Expr::Lam(STy::Unit, Box::new(Expr::Zero));
    let e = stlc::eval(&Vec::new(), &lhs);
    let f = stlc::eval(&Vec::new(), &rhs);
    assert_eq!(stlc::value_eq(&e, &f, 2), Cmp::True);
}
