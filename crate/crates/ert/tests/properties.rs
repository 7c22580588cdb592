//! Metatheory property suites: lifting and substitution laws, the
//! upgrade and downgrade lemmas, syntactic substitution and regularity.

mod common;

use ert::check::{check_proof, check_term, infer_proof, infer_term, wf_ctx, wf_prop, wf_ty};
use ert::ctx::{Context, Hyp, Mode};
use ert::subst::{apply_term, Binding, Subst};
use ert::syntax::{alpha_eq, Term, Ty};
use proptest::prelude::*;

use common::{all_judgments, corpus_term_subterms, Judgment, Rng};

// ---------------------------------------------------------------------
// Lifting and substitution laws.

/// Strategy for small terms of the pure lambda fragment with free
/// indices below `free`.
fn arb_term(free: usize) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        (0..free.max(1)).prop_map(Term::Var),
        Just(Term::Zero),
        Just(Term::Unit),
        Just(Term::Succ),
    ];
    leaf.prop_recursive(4, 32, 2, move |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(f, a)| Term::App(Box::new(f), Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::Pair(Box::new(a), Box::new(b))),
            inner
                .clone()
                .prop_map(|e| Term::Lam(Box::new(Ty::Nat), Box::new(e))),
            inner.prop_map(|e| Term::Inl(Box::new(e))),
        ]
    })
}

proptest! {
    #[test]
    fn lift_by_zero_is_identity(e in arb_term(4), cutoff in 0usize..4) {
        prop_assert_eq!(e.lifted(cutoff, 0), e);
    }

    /// Standard de Bruijn cancellation: lifting over a fresh slot and
    /// instantiating that slot is the identity, whatever is plugged in.
    #[test]
    fn lift_then_instantiate_cancels(e in arb_term(4), plug in arb_term(1)) {
        let lifted = e.lifted(0, 1);
        prop_assert_eq!(lifted.inst_term(&plug).unwrap(), e);
    }

    #[test]
    fn alpha_eq_is_reflexive(e in arb_term(4)) {
        prop_assert!(alpha_eq(&e, &e));
    }

    #[test]
    fn alpha_eq_symmetric_transitive(a in arb_term(3), b in arb_term(3), c in arb_term(3)) {
        prop_assert_eq!(alpha_eq(&a, &b), alpha_eq(&b, &a));
        if alpha_eq(&a, &b) && alpha_eq(&b, &c) {
            prop_assert!(alpha_eq(&a, &c));
        }
    }
}

/// Builds the composition of two substitutions explicitly, entry by
/// entry, which is the independent oracle for the composition law.
fn compose_upto(outer: &Subst, inner: &Subst, bound: usize) -> Subst {
    let entries = (0..bound)
        .map(|i| match inner.binding_at(i) {
            Binding::Rename(j) => outer.binding_at(j),
            Binding::Term(t) => Binding::Term(apply_term(outer, 0, &t).unwrap()),
            Binding::Proof(p) => Binding::Proof(ert::subst::apply_proof(outer, 0, &p).unwrap()),
            Binding::Unbound => Binding::Unbound,
        })
        .collect();
    Subst::inner(entries)
}

fn arb_subst(free: usize) -> impl Strategy<Value = Subst> {
    proptest::collection::vec(
        prop_oneof![
            arb_term(0).prop_map(Binding::Term),
            (0usize..3).prop_map(Binding::Rename),
        ],
        free,
    )
    .prop_map(Subst::inner)
}

proptest! {
    /// `[outer]([inner]e) = [outer . inner]e` on random expressions.
    #[test]
    fn substitution_composes(
        e in arb_term(4),
        inner in arb_subst(4),
        outer in arb_subst(4),
    ) {
        let sequential =
            apply_term(&outer, 0, &apply_term(&inner, 0, &e).unwrap()).unwrap();
        let composed = compose_upto(&outer, &inner, 8);
        let at_once = apply_term(&composed, 0, &e).unwrap();
        prop_assert_eq!(sequential, at_once);
    }
}

#[test]
fn substitution_composes_bulk() {
    // A high-volume deterministic rerun of the composition law.
    let mut rng = Rng::new(0xe2);
    let all = corpus_term_subterms();
    let pool: Vec<Term> = all
        .iter()
        .filter(|(t, d)| *d == 0 && t.scope_ok(0))
        .map(|(t, _)| t.clone())
        .collect();
    assert!(pool.len() > 10);
    let mut tested = 0;
    for i in 0..2000 {
        let (e, depth) = {
            let pick = (rng.below(all.len() as u64) as usize + i) % all.len();
            all[pick].clone()
        };
        let free = depth + 3;
        let mk = |rng: &mut Rng| {
            let entries = (0..free)
                .map(|_| {
                    if rng.below(2) == 0 {
                        Binding::Term(pool[rng.below(pool.len() as u64) as usize].clone())
                    } else {
                        Binding::Rename(rng.below(3) as usize)
                    }
                })
                .collect();
            Subst::inner(entries)
        };
        let inner = mk(&mut rng);
        let outer = mk(&mut rng);
        let Ok(step1) = apply_term(&inner, 0, &e) else {
            continue;
        };
        let Ok(sequential) = apply_term(&outer, 0, &step1) else {
            continue;
        };
        let composed = compose_upto(&outer, &inner, free + 4);
        let at_once = apply_term(&composed, 0, &e).unwrap();
        assert_eq!(sequential, at_once);
        tested += 1;
        if tested >= 1000 {
            break;
        }
    }
    assert!(tested >= 1000, "only {tested} pairs were kind-correct");
}

// ---------------------------------------------------------------------
// Upgrade and downgrade (the corpus-wide renderings of the lemmas).

#[test]
fn upgrade_monotonicity() {
    // Whatever checks under a context checks under its upgrade, and
    // the mode flag is equivalent to materializing the upgrade.
    for judgment in all_judgments() {
        match judgment {
            Judgment::Term { ctx, term, ty } => {
                assert!(check_term(&ctx, Mode::Computational, &term, &ty).is_ok());
                let up = ctx.upgrade();
                assert!(check_term(&up, Mode::Computational, &term, &ty).is_ok());
                assert!(check_term(&ctx, Mode::Logical, &term, &ty).is_ok());
            }
            Judgment::Proof { ctx, proof, prop } => {
                assert!(check_proof(&ctx, Mode::Computational, &proof, &prop).is_ok());
                let up = ctx.upgrade();
                assert!(check_proof(&up, Mode::Computational, &proof, &prop).is_ok());
                assert!(check_proof(&ctx, Mode::Logical, &proof, &prop).is_ok());
            }
        }
    }
}

#[test]
fn downgrade_for_types_props_and_proofs() {
    // Type, proposition and proof judgments cannot tell a context from
    // its upgrade; term judgments are excluded (ghosts matter there).
    for judgment in all_judgments() {
        match judgment {
            Judgment::Term { ctx, ty, .. } => {
                let up = ctx.upgrade();
                assert_eq!(wf_ty(&up, &ty).is_ok(), wf_ty(&ctx, &ty).is_ok());
            }
            Judgment::Proof { ctx, proof, prop } => {
                let up = ctx.upgrade();
                assert_eq!(wf_prop(&up, &prop).is_ok(), wf_prop(&ctx, &prop).is_ok());
                assert_eq!(
                    check_proof(&up, Mode::Computational, &proof, &prop).is_ok(),
                    check_proof(&ctx, Mode::Computational, &proof, &prop).is_ok(),
                );
            }
        }
    }
}

#[test]
fn upgrade_relation_holds_for_corpus_contexts() {
    for judgment in all_judgments() {
        let ctx = match &judgment {
            Judgment::Term { ctx, .. } => ctx,
            Judgment::Proof { ctx, .. } => ctx,
        };
        assert!(wf_ctx(ctx).is_ok());
        assert!(ctx.is_upgrade_of(&ctx.upgrade()));
        assert!(ctx.is_upgrade_of(ctx));
    }
}

// ---------------------------------------------------------------------
// Syntactic substitution and regularity.

/// Weakening: inserting an unused innermost hypothesis preserves every
/// judgment, with indices shifted by one.
#[test]
fn weakening_preserves_judgments() {
    let fresh = [
        Hyp::Computational(Ty::Nat),
        Hyp::Ghost(Ty::Nat),
        Hyp::Propositional(ert::syntax::Prop::Top),
    ];
    for judgment in all_judgments() {
        for hyp in &fresh {
            match &judgment {
                Judgment::Term { ctx, term, ty } => {
                    let wide = ctx.extended(hyp.clone());
                    let term = term.lifted(0, 1);
                    let ty = ty.lifted(0, 1);
                    assert!(
                        check_term(&wide, Mode::Computational, &term, &ty).is_ok(),
                        "weakening broke a term judgment"
                    );
                }
                Judgment::Proof { ctx, proof, prop } => {
                    let wide = ctx.extended(hyp.clone());
                    let proof = proof.lifted(0, 1);
                    let prop = prop.lifted(0, 1);
                    assert!(
                        check_proof(&wide, Mode::Computational, &proof, &prop).is_ok(),
                        "weakening broke a proof judgment"
                    );
                }
            }
        }
    }
}

/// Single-point substitution: replacing the innermost natural-number
/// hypothesis with a closed numeral preserves the judgment.
#[test]
fn single_point_substitution_preserves_judgments() {
    let mut rng = Rng::new(0x51);
    let mut tested = 0;
    for judgment in all_judgments() {
        let (ctx, apply): (&Context, Box<dyn Fn(&Context, &Subst) -> bool>) = match &judgment {
            Judgment::Term { ctx, term, ty } => {
                let term = term.clone();
                let ty = ty.clone();
                (
                    ctx,
                    Box::new(move |delta: &Context, s: &Subst| {
                        let t2 = term.subst(s).unwrap();
                        let ty2 = ty.subst(s).unwrap();
                        check_term(delta, Mode::Computational, &t2, &ty2).is_ok()
                    }),
                )
            }
            Judgment::Proof { ctx, proof, prop } => {
                let proof = proof.clone();
                let prop = prop.clone();
                (
                    ctx,
                    Box::new(move |delta: &Context, s: &Subst| {
                        let p2 = proof.subst(s).unwrap();
                        let q2 = prop.subst(s).unwrap();
                        check_proof(delta, Mode::Computational, &p2, &q2).is_ok()
                    }),
                )
            }
        };
        // Only judgments whose innermost hypothesis is a natural.
        let is_nat_slot = matches!(
            ctx.hyp(0),
            Some(Hyp::Computational(Ty::Nat)) | Some(Hyp::Ghost(Ty::Nat))
        );
        if !is_nat_slot {
            continue;
        }
        // Rebuild the context without the innermost slot.
        let hyps: Vec<Hyp> = ctx.iter().cloned().collect();
        let mut delta = Context::empty();
        for h in &hyps[..hyps.len() - 1] {
            delta.push(h.clone());
        }
        for _ in 0..4 {
            let k = Term::numeral(rng.below(9));
            let s = Subst::term0(k);
            assert!(apply(&delta, &s), "substitution broke a judgment");
            tested += 1;
        }
    }
    assert!(tested >= 20, "too few substitution instances: {tested}");
}

/// Regularity: whatever the checker synthesizes is itself well-formed.
#[test]
fn synthesized_results_are_well_formed() {
    let mut terms = 0;
    let mut proofs = 0;
    for judgment in all_judgments() {
        match judgment {
            Judgment::Term { ctx, term, .. } => {
                if let Ok(ty) = infer_term(&ctx, Mode::Computational, &term) {
                    wf_ty(&ctx, &ty)
                        .unwrap_or_else(|e| panic!("synthesized type is ill-formed: {e}"));
                    terms += 1;
                }
            }
            Judgment::Proof { ctx, proof, .. } => {
                if let Ok(prop) = infer_proof(&ctx, Mode::Computational, &proof) {
                    wf_prop(&ctx, &prop)
                        .unwrap_or_else(|e| panic!("synthesized proposition is ill-formed: {e}"));
                    proofs += 1;
                }
            }
        }
    }
    assert!(terms >= 5, "too few synthesizable terms: {terms}");
    assert!(proofs >= 10, "too few synthesizable proofs: {proofs}");
}

/// The derived trans rule synthesizes the composed equality.
#[test]
fn derived_trans_synthesizes() {
    use ert::syntax::{Proof, Prop};
    let nat = || Box::new(Ty::Nat);
    let eq = |l: Term, r: Term| Prop::Eq(nat(), Box::new(l), Box::new(r));
    let ctx = Context::empty()
        .extended(Hyp::Ghost(Ty::Nat))
        .extended(Hyp::Ghost(Ty::Nat))
        .extended(Hyp::Ghost(Ty::Nat))
        .extended(Hyp::Propositional(eq(Term::Var(2), Term::Var(1))))
        .extended(Hyp::Propositional(eq(Term::Var(2), Term::Var(1))));
    let trans = Proof::Subst {
        motive: Box::new(eq(Term::Var(5), Term::Var(0))),
        lhs: Box::new(Term::Var(3)),
        rhs: Box::new(Term::Var(2)),
        eq: Box::new(Proof::Var(0)),
        body: Box::new(Proof::Var(1)),
    };
    let got = infer_proof(&ctx, Mode::Computational, &trans).unwrap();
    assert!(alpha_eq(&got, &eq(Term::Var(4), Term::Var(2))));
}

// ---------------------------------------------------------------------
// An independent rendering of lifting: convert to a named tree, rename
// the free variables, convert back.

#[derive(Clone, Debug, PartialEq)]
enum Named {
    Var(String),
    Lam(String, Box<Named>),
    App(Box<Named>, Box<Named>),
    Leaf(Term),
}

fn to_named(t: &Term, binders: &mut Vec<String>, fresh: &mut usize) -> Named {
    match t {
        Term::Var(i) => {
            if *i < binders.len() {
                Named::Var(binders[binders.len() - 1 - i].clone())
            } else {
                Named::Var(format!("f{}", i - binders.len()))
            }
        }
        Term::Lam(ty, body) if **ty == Ty::Nat => {
            let name = format!("b{fresh}");
            *fresh += 1;
            binders.push(name.clone());
            let inner = to_named(body, binders, fresh);
            binders.pop();
            Named::Lam(name, Box::new(inner))
        }
        Term::App(f, a) => Named::App(
            Box::new(to_named(f, binders, fresh)),
            Box::new(to_named(a, binders, fresh)),
        ),
        other => Named::Leaf(other.clone()),
    }
}

fn rename_free(n: &Named, cutoff: usize, amount: usize) -> Named {
    match n {
        Named::Var(name) => match name.strip_prefix('f').and_then(|s| s.parse::<usize>().ok()) {
            Some(j) if j >= cutoff => Named::Var(format!("f{}", j + amount)),
            _ => Named::Var(name.clone()),
        },
        Named::Lam(x, b) => Named::Lam(x.clone(), Box::new(rename_free(b, cutoff, amount))),
        Named::App(f, a) => Named::App(
            Box::new(rename_free(f, cutoff, amount)),
            Box::new(rename_free(a, cutoff, amount)),
        ),
        Named::Leaf(t) => Named::Leaf(t.clone()),
    }
}

proptest! {
    /// Lifting agrees with renaming free variables on a named tree.
    #[test]
    fn lift_matches_named_renaming(
        e in arb_term(4),
        cutoff in 0usize..3,
        amount in 0usize..4,
    ) {
        let lifted = e.lifted(cutoff, amount);
        let via_names = rename_free(
            &to_named(&e, &mut Vec::new(), &mut 0),
            cutoff,
            amount,
        );
        let direct = to_named(&lifted, &mut Vec::new(), &mut 0);
        // Leaves embed raw subtrees whose indices the renamer does not
        // walk, so compare only when the tree is fully named.
        fn fully_named(n: &Named) -> bool {
            match n {
                Named::Var(_) => true,
                Named::Lam(_, b) => fully_named(b),
                Named::App(f, a) => fully_named(f) && fully_named(a),
                Named::Leaf(t) => {
                    matches!(t, Term::Zero | Term::Succ | Term::Unit)
                }
            }
        }
        if fully_named(&direct) {
            prop_assert_eq!(via_names, direct);
        }
    }
}

/// Annotations participate in equality: interchanging domain
/// annotations is both alpha-distinct and ill-typed.
#[test]
fn annotation_mismatch_is_rejected() {
    let lam_nat = Term::Lam(Box::new(Ty::Nat), Box::new(Term::Var(0)));
    let lam_unit = Term::Lam(Box::new(Ty::Unit), Box::new(Term::Var(0)));
    assert!(!alpha_eq(&lam_nat, &lam_unit));
    let nat_to_nat = Ty::Fn(Box::new(Ty::Nat), Box::new(Ty::Nat));
    assert!(check_term(
        &Context::empty(),
        Mode::Computational,
        &lam_nat,
        &nat_to_nat
    )
    .is_ok());
    assert!(check_term(
        &Context::empty(),
        Mode::Computational,
        &lam_unit,
        &nat_to_nat
    )
    .is_err());
}

// ---------------------------------------------------------------------
// Robustness: the front end and checker return errors, never panic.

fn token_soup() -> impl Strategy<Value = String> {
    let atom = prop_oneof![
        Just("def".to_string()),
        Just("thm".to_string()),
        Just("let".to_string()),
        Just("in".to_string()),
        Just("forall".to_string()),
        Just("Nat".to_string()),
        Just("x".to_string()),
        Just("(".to_string()),
        Just(")".to_string()),
        Just("[".to_string()),
        Just("]".to_string()),
        Just("{".to_string()),
        Just("}".to_string()),
        Just(":".to_string()),
        Just(":=".to_string()),
        Just("=".to_string()),
        Just("=>".to_string()),
        Just("->".to_string()),
        Just("\\".to_string()),
        Just("\\\\".to_string()),
        Just("|".to_string()),
        Just(",".to_string()),
        Just(".".to_string()),
        Just("0".to_string()),
        Just("succ".to_string()),
        Just("beta".to_string()),
        Just("trans".to_string()),
        Just("--".to_string()),
        Just("{-".to_string()),
        Just("-}".to_string()),
    ];
    proptest::collection::vec(atom, 0..40).prop_map(|v| v.join(" "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]
    /// Arbitrary token sequences produce diagnostics, not panics.
    #[test]
    fn front_end_never_panics(src in token_soup()) {
        let _ = ert::driver::check_source(&src, "fuzz.ert");
    }

    /// The checker is total on arbitrary trees of the pure fragment:
    /// it answers, it does not crash, even on ill-typed input.
    #[test]
    fn checker_total_on_arbitrary_terms(e in arb_term(4)) {
        let ctx = Context::empty()
            .extended(Hyp::Computational(Ty::Nat))
            .extended(Hyp::Ghost(Ty::Nat))
            .extended(Hyp::Propositional(ert::syntax::Prop::Top))
            .extended(Hyp::Computational(Ty::Fn(
                Box::new(Ty::Nat),
                Box::new(Ty::Nat),
            )));
        let _ = infer_term(&ctx, Mode::Computational, &e);
        let _ = check_term(&ctx, Mode::Logical, &e, &Ty::Nat);
    }
}
