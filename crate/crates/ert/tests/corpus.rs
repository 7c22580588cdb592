//! Corpus acceptance and rejection, scope validation, and the
//! print/parse round trip.

mod common;

use std::time::Instant;

use ert::check::{check_proof, check_term, infer_proof};
use ert::ctx::{Context, Mode};
use ert::driver::{check_source, DeclBody};
use ert::pretty;
use ert::syntax::{alpha_eq, Proof, Prop, Term, Ty};

use common::{all_judgments, checked_corpus, corpus_dir, corpus_files, Judgment};

#[test]
fn corpus_accepts_quickly() {
    let start = Instant::now();
    let decls = checked_corpus();
    let elapsed = start.elapsed();
    assert!(
        decls.len() >= 20,
        "expected a substantial corpus, got {}",
        decls.len()
    );
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "corpus checking took {elapsed:?}, expected under a second"
    );
    for name in [
        "zero_left",
        "zero_right",
        "zero_comm",
        "succ_right",
        "succ_comm",
        "add_comm",
        "trans_rule",
        "eta_set",
    ] {
        assert!(decls.iter().any(|(n, _)| n == name), "missing {name}");
    }
}

#[test]
fn ghost_misuse_is_rejected() {
    // \|n: Nat|. n against forall n: Nat, Nat
    let bad = Term::LamIr(Box::new(Ty::Nat), Box::new(Term::Var(0)));
    let ty = Ty::All(Box::new(Ty::Nat), Box::new(Ty::Nat));
    let err = check_term(&Context::empty(), Mode::Computational, &bad, &ty).unwrap_err();
    assert_eq!(err.rule, "Var");
    assert!(err.message.contains("ghost"));

    let src = std::fs::read_to_string(corpus_dir().join("neg/bad_ghost.ert")).unwrap();
    let report = check_source(&src, "bad_ghost.ert").unwrap();
    let failure = report.decls[0].result.clone().unwrap_err();
    assert_eq!(failure.rule, "Var");
}

#[test]
fn truth_is_not_falsity() {
    let err = check_proof(
        &Context::empty(),
        Mode::Computational,
        &Proof::TrueIntro,
        &Prop::Bot,
    )
    .unwrap_err();
    assert_eq!(err.rule, "True");

    let src = std::fs::read_to_string(corpus_dir().join("neg/bad_true.ert")).unwrap();
    let report = check_source(&src, "bad_true.ert").unwrap();
    assert!(report.decls[0].result.is_err());
}

#[test]
fn resolver_output_is_scope_valid() {
    for judgment in all_judgments() {
        match judgment {
            Judgment::Term { ctx, term, ty } => {
                assert!(term.scope_ok(ctx.len()), "term escapes scope: {term:?}");
                assert!(ty.scope_ok(ctx.len()), "type escapes scope: {ty:?}");
            }
            Judgment::Proof { ctx, proof, prop } => {
                assert!(proof.scope_ok(ctx.len()), "proof escapes scope");
                assert!(prop.scope_ok(ctx.len()), "prop escapes scope");
            }
        }
    }
}

#[test]
fn print_parse_round_trip() {
    // Print every resolved declaration back to concrete syntax and
    // resolve it again; the de Bruijn trees must match exactly.
    for (name, body) in checked_corpus() {
        let src = match &body {
            DeclBody::Def { ty, term } => {
                format!("def {name} : {} := {}", pretty::ty(ty), pretty::term(term))
            }
            DeclBody::Thm { prop, proof } => format!(
                "thm {name} : {} := {}",
                pretty::prop(prop),
                pretty::proof(proof)
            ),
        };
        let report = check_source(&src, "printed.ert")
            .unwrap_or_else(|e| panic!("printed {name} failed to parse: {e}\n{src}"));
        assert!(
            report.resolve_errors.is_empty(),
            "printed {name} failed to resolve: {:?}\n{src}",
            report.resolve_errors
        );
        assert_eq!(report.decls.len(), 1);
        match (&body, &report.decls[0].body) {
            (DeclBody::Def { ty: t1, term: e1 }, DeclBody::Def { ty: t2, term: e2 }) => {
                assert!(alpha_eq(t1, t2), "{name}: type changed\n{src}");
                assert!(alpha_eq(e1, e2), "{name}: term changed\n{src}");
            }
            (
                DeclBody::Thm {
                    prop: p1,
                    proof: q1,
                },
                DeclBody::Thm {
                    prop: p2,
                    proof: q2,
                },
            ) => {
                assert!(alpha_eq(p1, p2), "{name}: prop changed\n{src}");
                assert!(alpha_eq(q1, q2), "{name}: proof changed\n{src}");
            }
            _ => panic!("{name}: declaration kind changed"),
        }
    }
}

#[test]
fn checker_is_deterministic() {
    for judgment in all_judgments() {
        if let Judgment::Proof { ctx, proof, .. } = judgment {
            let a = infer_proof(&ctx, Mode::Computational, &proof);
            let b = infer_proof(&ctx, Mode::Computational, &proof);
            match (a, b) {
                (Ok(x), Ok(y)) => assert!(alpha_eq(&x, &y)),
                (Err(_), Err(_)) => {}
                _ => panic!("nondeterministic inference"),
            }
        }
    }
}

#[test]
fn structured_output_round_trips() {
    use ert::report::Record;
    let src = std::fs::read_to_string(corpus_files()[0].clone()).unwrap();
    let report = check_source(&src, "arith.ert").unwrap();
    for decl in &report.decls {
        let record = Record::Decl {
            file: "arith.ert".into(),
            name: decl.name.clone(),
            ok: decl.result.is_ok(),
        };
        assert_eq!(Record::parse_line(&record.to_line()), Some(record));
    }
}

#[test]
fn parse_error_has_position() {
    let err = check_source("def bad : Nat := (", "bad.ert").unwrap_err();
    assert_eq!(err.rule, "Parse");
    let span = err.span.unwrap();
    assert_eq!(span.line, 1);
    assert_eq!(span.col, 18);
}

/// Round-trips hand-built declarations whose shapes the corpus does not
/// reach: implicational hypotheses inside annotation forms, nested
/// precondition types, motives on every let.
#[test]
fn print_parse_round_trip_constructed() {
    use ert::syntax::{Prop, Proof, Term, Ty};
    let imp_top = Prop::Imp(Box::new(Prop::Top), Box::new(Prop::Top));
    let cases: Vec<(&str, Proof)> = vec![
        (
            "imp_hyp_ir_pr",
            Proof::IrPr {
                hyp: Box::new(imp_top.clone()),
                body: Box::new(Term::Zero.lifted(0, 1)),
                fst: Box::new(Proof::ImpIntro(
                    Box::new(Prop::Top),
                    Box::new(Proof::TrueIntro),
                )),
                snd: Box::new(Proof::ImpIntro(
                    Box::new(Prop::Top),
                    Box::new(Proof::TrueIntro),
                )),
            },
        ),
        (
            "imp_hyp_beta_pr",
            Proof::BetaPr {
                hyp: Box::new(imp_top),
                body: Box::new(Term::Unit.lifted(0, 1)),
                arg: Box::new(Proof::ImpIntro(
                    Box::new(Prop::Top),
                    Box::new(Proof::TrueIntro),
                )),
            },
        ),
        (
            "quantified_eq",
            Proof::Gen(
                Box::new(Ty::Pre(
                    Box::new(Prop::Or(Box::new(Prop::Top), Box::new(Prop::Bot))),
                    Box::new(Ty::Nat),
                )),
                Box::new(Proof::Rfl(Box::new(Term::Var(0)))),
            ),
        ),
        (
            "pair_reduction",
            Proof::BetaPair {
                annot: Box::new(Ty::Pair(Box::new(Ty::Nat), Box::new(Ty::Nat))),
                motive: Some(Box::new(Ty::Nat)),
                fst: Box::new(Term::numeral(1)),
                snd: Box::new(Term::numeral(2)),
                body: Box::new(Term::Var(1)),
            },
        ),
        (
            "repr_reduction",
            Proof::BetaRepr {
                annot: Box::new(Ty::Ex(Box::new(Ty::Unit), Box::new(Ty::Nat))),
                motive: Some(Box::new(Ty::Nat)),
                ghost: Box::new(Term::Unit),
                wit: Box::new(Term::numeral(3)),
                body: Box::new(Term::Var(0)),
            },
        ),
    ];
    for (name, proof) in cases {
        let mut printer = ert::pretty::Printer::new();
        let prop = match ert::check::infer_proof(
            &Context::empty(),
            Mode::Computational,
            &proof,
        ) {
            Ok(p) => p,
            // The declaration need not check to round-trip; give it a
            // stated goal that at least parses.
            Err(_) => Prop::Top,
        };
        let src = format!(
            "thm {name} : {} := {}",
            ert::pretty::prop(&prop),
            printer.proof(&proof)
        );
        let report = check_source(&src, "constructed.ert")
            .unwrap_or_else(|e| panic!("constructed {name} failed to parse: {e}\n{src}"));
        assert!(report.resolve_errors.is_empty(), "{name}: {src}");
        let DeclBody::Thm { proof: reparsed, .. } = &report.decls[0].body else {
            panic!()
        };
        assert!(alpha_eq(reparsed, &proof), "{name} changed:\n{src}");
    }
}
