//! Acceptance suite. Each test covers one numbered criterion and
//! prints one pass line; tolerances and bounds are pinned here.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use ert::check::{check_proof, check_term, infer_proof, infer_term, wf_prop, wf_ty};
use ert::ctx::{Context, Hyp, Mode};
use ert::driver::{check_path, DeclBody};
use ert::erase::{erase_ctx, erase_subst, erase_term, erase_ty};
use ert::gen::{self, Rng};
use ert::oracle::{enumerate_envs, prop_holds, type_member, Fuel, Verdict};
use ert::report::Record;
use ert::stlc::{self, Cmp, Outcome, Value};
use ert::subst::{Binding, Subst};
use ert::syntax::{Proof, Prop, Term, Ty};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus_paths() -> Vec<PathBuf> {
    ["arith.ert", "trans.ert", "eta_set.ert", "guards.ert"]
        .iter()
        .map(|f| corpus_dir().join(f))
        .collect()
}

fn corpus() -> Vec<(String, DeclBody)> {
    let mut out = Vec::new();
    for path in corpus_paths() {
        let report = check_path(&path).expect("corpus parses");
        assert!(
            report.is_ok(),
            "corpus must check: {:?}",
            report.diagnostics()
        );
        for decl in report.decls {
            out.push((decl.name, decl.body));
        }
    }
    out
}

/// Open judgments obtained by peeling binder spines off declarations.
fn term_judgments() -> Vec<(Context, Term, Ty)> {
    let mut out = Vec::new();
    for (_, body) in corpus() {
        let DeclBody::Def { ty, term } = body else {
            continue;
        };
        let mut ctx = Context::empty();
        let mut term = term;
        let mut ty = ty;
        loop {
            out.push((ctx.clone(), term.clone(), ty.clone()));
            match (term, ty) {
                (Term::Lam(d, b), Ty::Fn(a, c)) if d == a => {
                    ctx.push(Hyp::Computational(*d));
                    term = *b;
                    ty = *c;
                }
                (Term::LamIr(d, b), Ty::All(a, c)) if d == a => {
                    ctx.push(Hyp::Ghost(*d));
                    term = *b;
                    ty = *c;
                }
                (Term::LamPr(h, b), Ty::Pre(g, c)) if h == g => {
                    ctx.push(Hyp::Propositional(*h));
                    term = *b;
                    ty = *c;
                }
                _ => break,
            }
        }
    }
    out
}

fn subterms(t: &Term, depth: usize, out: &mut Vec<(Term, usize)>) {
    out.push((t.clone(), depth));
    match t {
        Term::Var(_) | Term::Unit | Term::Zero | Term::Succ => {}
        Term::Lam(_, e) | Term::LamIr(_, e) | Term::LamPr(_, e) => subterms(e, depth + 1, out),
        Term::App(f, a) | Term::AppIr(f, a) | Term::Pair(f, a) | Term::Repr(f, a) => {
            subterms(f, depth, out);
            subterms(a, depth, out);
        }
        Term::AppPr(f, _) | Term::SetIntro(f, _) => subterms(f, depth, out),
        Term::Inl(e) | Term::Inr(e) => subterms(e, depth, out),
        Term::LetPair { scrut, body, .. }
        | Term::LetSet { scrut, body, .. }
        | Term::LetRepr { scrut, body, .. } => {
            subterms(scrut, depth, out);
            subterms(body, depth + 2, out);
        }
        Term::Cases {
            scrut, left, right, ..
        } => {
            subterms(scrut, depth, out);
            subterms(left, depth + 1, out);
            subterms(right, depth + 1, out);
        }
        Term::Natrec {
            scrut, zero, succ, ..
        } => {
            subterms(scrut, depth, out);
            subterms(zero, depth, out);
            subterms(succ, depth + 2, out);
        }
        Term::Absurd(_) => {}
    }
}

fn ert_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ert"))
}

fn pass(n: u32, what: &str) {
    println!("acceptance criterion {n:2} ({what}): pass");
}

#[test]
fn criterion_01_corpus_acceptance() {
    let start = Instant::now();
    let decls = corpus();
    let elapsed = start.elapsed();
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
    assert!(elapsed.as_secs_f64() < 1.0, "corpus check took {elapsed:?}");

    let status = ert_bin()
        .arg("check")
        .args(corpus_paths())
        .status()
        .unwrap();
    assert!(status.success());
    pass(1, "corpus accepted in under a second");
}

#[test]
fn criterion_02_corpus_rejection() {
    let bad = Term::LamIr(Box::new(Ty::Nat), Box::new(Term::Var(0)));
    let ty = Ty::All(Box::new(Ty::Nat), Box::new(Ty::Nat));
    let err = check_term(&Context::empty(), Mode::Computational, &bad, &ty).unwrap_err();
    assert_eq!(err.rule, "Var");
    assert!(err.message.contains("ghost"));

    let err2 = check_proof(
        &Context::empty(),
        Mode::Computational,
        &Proof::TrueIntro,
        &Prop::Bot,
    )
    .unwrap_err();
    assert_eq!(err2.rule, "True");

    let status = ert_bin()
        .arg("check")
        .arg(corpus_dir().join("neg/bad_ghost.ert"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
    pass(2, "ghost misuse and wrong proofs rejected");
}

#[test]
fn criterion_03_erasure_preservation() {
    let judgments = term_judgments();
    assert!(judgments.len() >= 10);
    for (ctx, term, ty) in &judgments {
        let ectx = erase_ctx(ctx);
        stlc::check(&ectx, &erase_term(term), &erase_ty(ty))
            .unwrap_or_else(|e| panic!("erasure broke typing: {e}"));
    }
    pass(3, "every corpus derivation erases well-typed");
}

#[test]
fn criterion_04_erasure_substitution_commutation() {
    let mut all = Vec::new();
    for (_, body) in corpus() {
        if let DeclBody::Def { term, .. } = body {
            subterms(&term, 0, &mut all);
        }
    }
    let closed: Vec<Term> = all
        .iter()
        .filter(|(t, d)| *d == 0 && t.scope_ok(0))
        .map(|(t, _)| t.clone())
        .collect();
    let mut rng = Rng::new(0x4a);
    let mut tested = 0;
    let mut i = 0;
    while tested < 500 {
        let (term, depth) = all[i % all.len()].clone();
        i += 1;
        let entries: Vec<Binding> = (0..depth + 3)
            .map(|_| match rng.below(3) {
                0 => Binding::Term(closed[rng.below(closed.len() as u64) as usize].clone()),
                1 => Binding::Rename(rng.below(4) as usize),
                _ => Binding::Proof(Proof::TrueIntro),
            })
            .collect();
        let s = Subst::inner(entries);
        let Ok(substituted) = term.subst(&s) else {
            continue;
        };
        assert_eq!(
            erase_term(&substituted),
            stlc::subst(&erase_term(&term), &erase_subst(&s)),
            "erasure and substitution disagree"
        );
        tested += 1;
    }
    pass(4, "500 erasure/substitution pairs agree exactly");
}

#[test]
fn criterion_05_substitution_and_regularity() {
    let judgments = term_judgments();
    let mut substituted = 0;
    let mut regular = 0;
    for (ctx, term, ty) in &judgments {
        // Weakening substitution under three kinds of fresh hypothesis.
        for hyp in [
            Hyp::Computational(Ty::Nat),
            Hyp::Ghost(Ty::Nat),
            Hyp::Propositional(Prop::Top),
        ] {
            let wide = ctx.extended(hyp);
            assert!(
                check_term(
                    &wide,
                    Mode::Computational,
                    &term.lifted(0, 1),
                    &ty.lifted(0, 1)
                )
                .is_ok(),
                "weakening failed"
            );
            substituted += 1;
        }
        // Single-point substitution when the innermost slot is a natural.
        if matches!(
            ctx.hyp(0),
            Some(Hyp::Computational(Ty::Nat)) | Some(Hyp::Ghost(Ty::Nat))
        ) {
            let hyps: Vec<Hyp> = ctx.iter().cloned().collect();
            let mut delta = Context::empty();
            for h in &hyps[..hyps.len() - 1] {
                delta.push(h.clone());
            }
            for k in 0..3u64 {
                let s = Subst::term0(Term::numeral(k));
                let t2 = term.subst(&s).unwrap();
                let ty2 = ty.subst(&s).unwrap();
                assert!(
                    check_term(&delta, Mode::Computational, &t2, &ty2).is_ok(),
                    "single-point substitution failed"
                );
                substituted += 1;
            }
        }
        // Regularity: synthesized types are well-formed.
        if let Ok(inferred) = infer_term(ctx, Mode::Computational, term) {
            wf_ty(ctx, &inferred).expect("synthesized type ill-formed");
            regular += 1;
        }
    }
    // Proof judgments: regularity of synthesized propositions.
    for (_, body) in corpus() {
        if let DeclBody::Thm { proof, .. } = body {
            if let Ok(p) = infer_proof(&Context::empty(), Mode::Computational, &proof) {
                wf_prop(&Context::empty(), &p).expect("synthesized proposition ill-formed");
                regular += 1;
            }
        }
    }
    assert!(
        substituted >= 50,
        "too few substitution cases: {substituted}"
    );
    assert!(regular >= 15, "too few regularity cases: {regular}");
    pass(5, "substitution and regularity suites have zero failures");
}

#[test]
fn criterion_06_beta_axiom_soundness() {
    fn sound(axiom: Proof) {
        let prop = infer_proof(&Context::empty(), Mode::Computational, &axiom)
            .unwrap_or_else(|e| panic!("axiom did not check: {e}"));
        let Prop::Eq(_, lhs, rhs) = prop else {
            panic!("not an equality")
        };
        let l = stlc::eval(&Vec::new(), &erase_term(&lhs));
        let r = stlc::eval(&Vec::new(), &erase_term(&rhs));
        assert_eq!(stlc::value_eq(&l, &r, 8), Cmp::True, "sides disagree");
    }
    fn synthesizing(t: Term, ty: &Ty) -> Term {
        Term::Natrec {
            motive: Box::new(ty.lifted(0, 1)),
            scrut: Box::new(Term::Zero),
            zero: Box::new(t),
            succ: Box::new(Term::Var(0)),
        }
    }
    let mut rng = Rng::new(0xbe7a);
    let mut count = [0usize; 10];
    for round in 0..50 {
        let dom = gen::fo_ty(&mut rng, 2);
        let cod = gen::fo_ty(&mut rng, 2);
        let a = gen::fo_ty(&mut rng, 1);
        let b = gen::fo_ty(&mut rng, 1);
        let arg_dom = gen::term(&mut rng, &[], &dom, 3);
        let nat = Term::numeral(rng.below(9));

        // β_ty
        sound(Proof::BetaTy {
            dom: Box::new(dom.clone()),
            body: Box::new(synthesizing(
                gen::term(&mut rng, &[dom.clone()], &cod, 3),
                &cod,
            )),
            arg: Box::new(arg_dom.clone()),
        });
        count[0] += 1;
        // β_ir (ghost binder: body ignores it)
        sound(Proof::BetaIr {
            dom: Box::new(dom.clone()),
            body: Box::new(synthesizing(gen::term(&mut rng, &[], &cod, 3), &cod).lifted(0, 1)),
            arg: Box::new(arg_dom.clone()),
        });
        count[1] += 1;
        // β_pr
        let (hyp, parg) = if round % 2 == 0 {
            (Prop::Top, Proof::TrueIntro)
        } else {
            (
                Prop::Eq(
                    Box::new(Ty::Nat),
                    Box::new(nat.clone()),
                    Box::new(nat.clone()),
                ),
                Proof::Rfl(Box::new(nat.clone())),
            )
        };
        sound(Proof::BetaPr {
            hyp: Box::new(hyp),
            body: Box::new(synthesizing(gen::term(&mut rng, &[], &cod, 3), &cod).lifted(0, 1)),
            arg: Box::new(parg),
        });
        count[2] += 1;
        // β_left / β_right
        let motive = gen::fo_ty(&mut rng, 2);
        let left = gen::term(&mut rng, &[a.clone()], &motive, 3);
        let right = gen::term(&mut rng, &[b.clone()], &motive, 3);
        let sum = Ty::Sum(Box::new(a.clone()), Box::new(b.clone()));
        sound(Proof::BetaLeft {
            sum: Box::new(sum.clone()),
            motive: Box::new(motive.lifted(0, 1)),
            left: Box::new(left.clone()),
            right: Box::new(right.clone()),
            arg: Box::new(gen::term(&mut rng, &[], &a, 3)),
        });
        count[3] += 1;
        sound(Proof::BetaRight {
            sum: Box::new(sum),
            motive: Box::new(motive.lifted(0, 1)),
            left: Box::new(left),
            right: Box::new(right),
            arg: Box::new(gen::term(&mut rng, &[], &b, 3)),
        });
        count[4] += 1;
        // β_zero / β_succ (the index is ghost: step uses the accumulator)
        let c = gen::fo_ty(&mut rng, 2);
        let zero = gen::term(&mut rng, &[], &c, 3);
        let succ = gen::term(&mut rng, &[c.clone()], &c, 3).lifted(1, 1);
        sound(Proof::BetaZero {
            motive: Box::new(c.lifted(0, 1)),
            zero: Box::new(zero.clone()),
            succ: Box::new(succ.clone()),
        });
        count[5] += 1;
        sound(Proof::BetaSucc {
            motive: Box::new(c.lifted(0, 1)),
            arg: Box::new(nat.clone()),
            zero: Box::new(zero),
            succ: Box::new(succ),
        });
        count[6] += 1;
        // β_pair
        let annot = Ty::Pair(Box::new(a.clone()), Box::new(b.lifted(0, 1)));
        sound(Proof::BetaPair {
            annot: Box::new(annot),
            motive: Some(Box::new(motive.lifted(0, 1))),
            fst: Box::new(gen::term(&mut rng, &[], &a, 3)),
            snd: Box::new(gen::term(&mut rng, &[], &b, 3)),
            body: Box::new(gen::term(&mut rng, &[b.clone(), a.clone()], &motive, 3)),
        });
        count[7] += 1;
        // β_set
        let elem = Term::numeral(rng.below(9));
        let (pred, pf) = if round % 2 == 0 {
            (Prop::Top, Proof::TrueIntro)
        } else {
            (
                Prop::Eq(
                    Box::new(Ty::Nat),
                    Box::new(Term::Var(0)),
                    Box::new(elem.lifted(0, 1)),
                ),
                Proof::Rfl(Box::new(elem.clone())),
            )
        };
        sound(Proof::BetaSet {
            annot: Box::new(Ty::Subset(Box::new(Ty::Nat), Box::new(pred))),
            motive: Some(Box::new(motive.lifted(0, 1))),
            elem: Box::new(elem),
            pf: Box::new(pf),
            body: Box::new(gen::term(&mut rng, &[Ty::Nat], &motive, 3).lifted(0, 1)),
        });
        count[8] += 1;
        // β_repr (ghost first component)
        sound(Proof::BetaRepr {
            annot: Box::new(Ty::Ex(Box::new(a.clone()), Box::new(b.lifted(0, 1)))),
            motive: Some(Box::new(motive.lifted(0, 1))),
            ghost: Box::new(gen::term(&mut rng, &[], &a, 3)),
            wit: Box::new(gen::term(&mut rng, &[], &b, 3)),
            body: Box::new(gen::term(&mut rng, &[b.clone()], &motive, 3).lifted(1, 1)),
        });
        count[9] += 1;
    }
    assert!(count.iter().all(|&c| c >= 50));
    pass(6, "all ten beta axioms sound on 50 instances each");
}

#[test]
fn criterion_07_no_error_theorem() {
    let mut defs = 0;
    let mut absurd_guarded = 0;
    for (name, body) in corpus() {
        if let DeclBody::Def { term, .. } = body {
            let outcome = stlc::eval(&Vec::new(), &erase_term(&term));
            assert!(!outcome.is_error(), "{name} evaluated to the error stop");
            if name.starts_with("absurd_") {
                absurd_guarded += 1;
            }
            defs += 1;
        }
    }
    assert!(defs >= 10);
    assert!(absurd_guarded >= 2, "corpus must include guarded absurdity");
    pass(7, "no closed corpus program goes wrong");
}

#[test]
fn criterion_08_semantic_regularity_audit() {
    let start = Instant::now();
    let fuel = Fuel::new(8, 2);
    for (name, body) in corpus() {
        let verdict = match &body {
            DeclBody::Def { ty, term } => {
                let out = stlc::eval(&Vec::new(), &erase_term(term));
                type_member(&Context::empty(), ty, &Vec::new(), &out, fuel)
            }
            DeclBody::Thm { prop, .. } => prop_holds(&Context::empty(), prop, &Vec::new(), fuel),
        };
        assert!(!verdict.is_fails(), "audit refuted {name}: {verdict:?}");
    }
    assert!(start.elapsed().as_secs() < 60, "audit exceeded 60 seconds");

    let status = ert_bin()
        .args(["oracle", "--fuel", "8", "--depth", "2"])
        .args(corpus_paths())
        .status()
        .unwrap();
    assert!(status.success());
    pass(8, "oracle audit reports zero failures at the stated fuel");
}

#[test]
fn criterion_09_convergence() {
    let fuel = Fuel::new(4, 2);
    let mut checked = 0;
    for (ctx, _, ty) in term_judgments() {
        let (envs, _) = enumerate_envs(&ctx, fuel);
        for env in envs.into_iter().take(16) {
            assert!(
                type_member(&ctx, &ty, &env, &Outcome::Error, fuel).is_fails(),
                "error admitted into a refined type"
            );
            checked += 1;
        }
    }
    assert!(checked >= 10);
    pass(9, "the error outcome inhabits no corpus type");
}

#[test]
fn criterion_10_negative_control() {
    // Library level: a wrong value is refuted.
    let refined = Ty::Subset(
        Box::new(Ty::Nat),
        Box::new(Prop::Eq(
            Box::new(Ty::Nat),
            Box::new(Term::Var(0)),
            Box::new(Term::Zero),
        )),
    );
    let one = Outcome::Value(Value::Nat(1u32.into()));
    assert!(matches!(
        type_member(
            &Context::empty(),
            &refined,
            &Vec::new(),
            &one,
            Fuel::new(4, 2)
        ),
        Verdict::Fails(_)
    ));

    // Binary level: the unchecked oracle path flags the planted violation.
    let out = ert_bin()
        .args(["oracle", "--unchecked", "--format", "structured"])
        .arg(corpus_dir().join("neg/unchecked_bogus.ert"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let fails = stdout
        .lines()
        .filter_map(Record::parse_line)
        .filter(|r| matches!(r, Record::Verdict { result, .. } if result == "fails"))
        .count();
    assert!(
        fails >= 1,
        "expected at least one failing verdict:\n{stdout}"
    );
    pass(10, "the unchecked path flags a planted violation");
}

#[test]
fn criterion_11_determinism() {
    let run = || {
        ert_bin()
            .args(["check", "--format", "structured"])
            .args(corpus_paths())
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout, "structured output differs between runs");
    assert!(!a.stdout.is_empty());
    pass(11, "structured output is byte-identical across runs");
}
