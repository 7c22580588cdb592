//! Bounded, executable model of the refined denotations.
//!
//! Types denote subsets of the denotations of their erasures;
//! propositions denote sets of environments; contexts denote the
//! environments whose slots all inhabit their refinements. The real
//! semantics quantifies over infinite sets, so every quantifier here is
//! truncated by fuel and a third verdict, `Unknown`, keeps the oracle
//! honest where the bound is hit without a refutation.
//!
//! Environments hold `ret`-wrapped values; the monadic lift of a type
//! rejects the error outcome outright, so no refined type ever contains
//! an error.

use crate::ctx::{Context, Hyp};
use crate::erase::{erase_term, erase_ty};
use crate::stlc::{self, Cmp, Env, Outcome, Value};
use crate::syntax::{Prop, Ty};

/// Enumeration bounds: the largest natural generated, and how deep
/// quantifier and function-space unfolding may nest.
#[derive(Clone, Copy, Debug)]
pub struct Fuel {
    pub nat_bound: u64,
    pub depth: u32,
}

impl Fuel {
    pub fn new(nat_bound: u64, depth: u32) -> Fuel {
        Fuel { nat_bound, depth }
    }

    fn deeper(self) -> Option<Fuel> {
        self.depth.checked_sub(1).map(|d| Fuel {
            nat_bound: self.nat_bound,
            depth: d,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(String),
    Unknown,
}

impl Verdict {
    pub fn is_fails(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    fn and(self, other: impl FnOnce() -> Verdict) -> Verdict {
        match self {
            Verdict::Fails(w) => Verdict::Fails(w),
            Verdict::Holds => other(),
            Verdict::Unknown => match other() {
                Verdict::Fails(w) => Verdict::Fails(w),
                _ => Verdict::Unknown,
            },
        }
    }

    /// Classical implication: a failing antecedent makes it hold, an
    /// unknown antecedent can never make it fail.
    fn implies(self, conseq: impl FnOnce() -> Verdict) -> Verdict {
        match self {
            Verdict::Fails(_) => Verdict::Holds,
            Verdict::Holds => conseq(),
            Verdict::Unknown => match conseq() {
                Verdict::Holds => Verdict::Holds,
                _ => Verdict::Unknown,
            },
        }
    }
}

fn cmp_verdict(c: Cmp, what: impl FnOnce() -> String) -> Verdict {
    match c {
        Cmp::True => Verdict::Holds,
        Cmp::False => Verdict::Fails(what()),
        Cmp::Unknown => Verdict::Unknown,
    }
}

fn extend(env: &Env, v: Value) -> Env {
    let mut out = env.clone();
    out.push(Outcome::Value(v));
    out
}

/// Discards ghost information: ghost slots become `ret ()`, everything
/// else is preserved. The result is an environment for the erased,
/// un-upgraded context.
pub fn downgrade_env(ctx: &Context, env: &Env) -> Result<Env, String> {
    if ctx.len() != env.len() {
        return Err(format!(
            "environment has {} slots but the context has {}",
            env.len(),
            ctx.len()
        ));
    }
    Ok(ctx
        .iter()
        .zip(env.iter())
        .map(|(h, o)| match h {
            Hyp::Ghost(_) => Outcome::Value(Value::Unit),
            _ => o.clone(),
        })
        .collect())
}

/// Is the outcome a member of the monadic lift of the type's
/// denotation? Errors never are.
pub fn type_member(ctx: &Context, ty: &Ty, env: &Env, o: &Outcome, fuel: Fuel) -> Verdict {
    match o {
        Outcome::Error => Verdict::Fails(format!(
            "error is not a member of {}",
            crate::pretty::ty(ty)
        )),
        Outcome::Value(v) => value_member(ctx, ty, env, v, fuel),
    }
}

/// Is the value a member of the type's denotation in `env`?
pub fn value_member(ctx: &Context, ty: &Ty, env: &Env, v: &Value, fuel: Fuel) -> Verdict {
    match ty {
        Ty::Unit => {
            if *v == Value::Unit {
                Verdict::Holds
            } else {
                Verdict::Fails(format!("{v} is not the unit value"))
            }
        }
        Ty::Nat => {
            if matches!(v, Value::Nat(_)) {
                Verdict::Holds
            } else {
                Verdict::Fails(format!("{v} is not a natural"))
            }
        }
        Ty::Sum(a, b) => match v {
            Value::Inl(x) => value_member(ctx, a, env, x, fuel),
            Value::Inr(x) => value_member(ctx, b, env, x, fuel),
            other => Verdict::Fails(format!("{other} is not an injection")),
        },
        Ty::Pair(a, b) => match v {
            Value::Pair(l, r) => value_member(ctx, a, env, l, fuel).and(|| {
                let inner = ctx.extended(Hyp::Computational((**a).clone()));
                value_member(&inner, b, &extend(env, (**l).clone()), r, fuel)
            }),
            other => Verdict::Fails(format!("{other} is not a pair")),
        },
        Ty::Subset(a, phi) => value_member(ctx, a, env, v, fuel).and(|| {
            let inner = ctx.extended(Hyp::Computational((**a).clone()));
            prop_holds(&inner, phi, &extend(env, v.clone()), fuel)
        }),
        Ty::Fn(a, b) => {
            if !matches!(v, Value::Closure { .. } | Value::SuccFn) {
                return Verdict::Fails(format!("{v} is not a function"));
            }
            let Some(deeper) = fuel.deeper() else {
                return Verdict::Unknown;
            };
            let (inputs, complete) = refined_values(ctx, a, env, deeper);
            let inner = ctx.extended(Hyp::Computational((**a).clone()));
            let mut verdict = if complete {
                Verdict::Holds
            } else {
                Verdict::Unknown
            };
            for x in inputs {
                let out = stlc::apply(v, x.clone());
                match type_member(&inner, b, &extend(env, x), &out, deeper) {
                    Verdict::Fails(w) => {
                        return Verdict::Fails(format!("function violates codomain: {w}"))
                    }
                    Verdict::Unknown => verdict = Verdict::Unknown,
                    Verdict::Holds => {}
                }
            }
            verdict
        }
        Ty::Pre(phi, a) => {
            if !matches!(v, Value::Closure { .. } | Value::SuccFn) {
                return Verdict::Fails(format!("{v} is not a thunk"));
            }
            let Some(deeper) = fuel.deeper() else {
                return Verdict::Unknown;
            };
            prop_holds(ctx, phi, env, deeper).implies(|| {
                let inner = ctx.extended(Hyp::Propositional((**phi).clone()));
                let out = stlc::apply(v, Value::Unit);
                type_member(&inner, a, &extend(env, Value::Unit), &out, deeper)
            })
        }
        Ty::All(a, b) => {
            if !matches!(v, Value::Closure { .. } | Value::SuccFn) {
                return Verdict::Fails(format!("{v} is not a thunk"));
            }
            let Some(deeper) = fuel.deeper() else {
                return Verdict::Unknown;
            };
            let (inputs, complete) = refined_values(ctx, a, env, deeper);
            let inner = ctx.extended(Hyp::Computational((**a).clone()));
            let out = stlc::apply(v, Value::Unit);
            let mut verdict = if complete {
                Verdict::Holds
            } else {
                Verdict::Unknown
            };
            for x in inputs {
                match type_member(&inner, b, &extend(env, x), &out, deeper) {
                    Verdict::Fails(w) => {
                        return Verdict::Fails(format!("intersection member fails: {w}"))
                    }
                    Verdict::Unknown => verdict = Verdict::Unknown,
                    Verdict::Holds => {}
                }
            }
            verdict
        }
        Ty::Ex(a, b) => {
            let Some(deeper) = fuel.deeper() else {
                return Verdict::Unknown;
            };
            let (inputs, complete) = refined_values(ctx, a, env, deeper);
            let inner = ctx.extended(Hyp::Computational((**a).clone()));
            let mut refuted = complete;
            for x in inputs {
                match value_member(&inner, b, &extend(env, x), v, deeper) {
                    Verdict::Holds => return Verdict::Holds,
                    Verdict::Unknown => refuted = false,
                    Verdict::Fails(_) => {}
                }
            }
            if refuted {
                Verdict::Fails(format!("{v} lies in no member of the union"))
            } else {
                Verdict::Unknown
            }
        }
    }
}

/// Does the environment satisfy the proposition?
pub fn prop_holds(ctx: &Context, p: &Prop, env: &Env, fuel: Fuel) -> Verdict {
    match p {
        Prop::Top => Verdict::Holds,
        Prop::Bot => Verdict::Fails("falsity never holds".into()),
        Prop::Imp(a, b) => prop_holds(ctx, a, env, fuel).implies(|| {
            let inner = ctx.extended(Hyp::Propositional((**a).clone()));
            prop_holds(&inner, b, &extend(env, Value::Unit), fuel)
        }),
        Prop::And(a, b) => prop_holds(ctx, a, env, fuel).and(|| {
            let inner = ctx.extended(Hyp::Propositional((**a).clone()));
            prop_holds(&inner, b, &extend(env, Value::Unit), fuel)
        }),
        Prop::Or(a, b) => match prop_holds(ctx, a, env, fuel) {
            Verdict::Holds => Verdict::Holds,
            left => match (left, prop_holds(ctx, b, env, fuel)) {
                (_, Verdict::Holds) => Verdict::Holds,
                (Verdict::Fails(w1), Verdict::Fails(w2)) => {
                    Verdict::Fails(format!("both disjuncts fail: {w1}; {w2}"))
                }
                _ => Verdict::Unknown,
            },
        },
        Prop::All(t, q) => {
            let Some(deeper) = fuel.deeper() else {
                return Verdict::Unknown;
            };
            let (inputs, complete) = refined_values(ctx, t, env, deeper);
            let inner = ctx.extended(Hyp::Computational((**t).clone()));
            let mut verdict = if complete {
                Verdict::Holds
            } else {
                Verdict::Unknown
            };
            for x in inputs {
                match prop_holds(&inner, q, &extend(env, x.clone()), deeper) {
                    Verdict::Fails(w) => return Verdict::Fails(format!("counterexample {x}: {w}")),
                    Verdict::Unknown => verdict = Verdict::Unknown,
                    Verdict::Holds => {}
                }
            }
            verdict
        }
        Prop::Ex(t, q) => {
            let Some(deeper) = fuel.deeper() else {
                return Verdict::Unknown;
            };
            let (inputs, complete) = refined_values(ctx, t, env, deeper);
            let inner = ctx.extended(Hyp::Computational((**t).clone()));
            let mut refuted = complete;
            for x in inputs {
                match prop_holds(&inner, q, &extend(env, x), deeper) {
                    Verdict::Holds => return Verdict::Holds,
                    Verdict::Unknown => refuted = false,
                    Verdict::Fails(_) => {}
                }
            }
            if refuted {
                Verdict::Fails("no witness exists within the bound".into())
            } else {
                Verdict::Unknown
            }
        }
        Prop::Eq(_, a, b) => {
            let lhs = stlc::eval(env, &erase_term(a));
            let rhs = stlc::eval(env, &erase_term(b));
            cmp_verdict(stlc::value_eq(&lhs, &rhs, fuel.nat_bound), || {
                format!("{lhs} differs from {rhs}")
            })
        }
    }
}

/// Is the environment a member of the context's denotation?
pub fn ctx_member(ctx: &Context, env: &Env, fuel: Fuel) -> Verdict {
    if ctx.len() != env.len() {
        return Verdict::Fails(format!(
            "environment has {} slots but the context has {}",
            env.len(),
            ctx.len()
        ));
    }
    let mut prefix = Context::empty();
    let mut penv: Env = Vec::new();
    for (h, o) in ctx.iter().zip(env.iter()) {
        match h {
            Hyp::Computational(t) | Hyp::Ghost(t) => match o {
                Outcome::Error => return Verdict::Fails("context slot holds an error".into()),
                Outcome::Value(v) => match value_member(&prefix, t, &penv, v, fuel) {
                    Verdict::Holds => {}
                    other => return other,
                },
            },
            // The propositional clause pairs the prefix denotation with
            // all of M 1, so the slot's own outcome is unconstrained.
            Hyp::Propositional(p) => match prop_holds(&prefix, p, &penv, fuel) {
                Verdict::Holds => {}
                other => return other,
            },
        }
        prefix = prefix.extended(h.clone());
        penv.push(o.clone());
    }
    Verdict::Holds
}

/// Enumerates the values of a refined type: candidates of the erased
/// type, filtered by membership. The flag reports completeness.
pub fn refined_values(ctx: &Context, ty: &Ty, env: &Env, fuel: Fuel) -> (Vec<Value>, bool) {
    match stlc::enumerate(&erase_ty(ty), fuel.nat_bound) {
        None => (Vec::new(), false),
        Some((candidates, mut complete)) => {
            let mut out = Vec::new();
            for v in candidates {
                match value_member(ctx, ty, env, &v, fuel) {
                    Verdict::Holds => out.push(v),
                    Verdict::Unknown => complete = false,
                    Verdict::Fails(_) => {}
                }
            }
            (out, complete)
        }
    }
}

/// All environments of the context denotation, up to fuel; propositional
/// slots are `ret ()` and only environments whose propositions hold are
/// kept. The flag reports completeness.
pub fn enumerate_envs(ctx: &Context, fuel: Fuel) -> (Vec<Env>, bool) {
    let mut envs: Vec<Env> = vec![Vec::new()];
    let mut complete = true;
    let mut prefix = Context::empty();
    for h in ctx.iter() {
        let mut next = Vec::new();
        match h {
            Hyp::Computational(t) | Hyp::Ghost(t) => {
                for env in &envs {
                    let (vals, c) = refined_values(&prefix, t, env, fuel);
                    complete &= c;
                    for v in vals {
                        next.push(extend(env, v));
                    }
                }
            }
            Hyp::Propositional(p) => {
                for env in &envs {
                    match prop_holds(&prefix, p, env, fuel) {
                        Verdict::Holds => next.push(extend(env, Value::Unit)),
                        Verdict::Unknown => complete = false,
                        Verdict::Fails(_) => {}
                    }
                }
            }
        }
        envs = next;
        prefix = prefix.extended(h.clone());
    }
    (envs, complete)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Term;
    use num_bigint::BigUint;

    fn natv(n: u64) -> Value {
        Value::Nat(BigUint::from(n))
    }

    fn nat_eq_zero() -> Ty {
        Ty::Subset(
            Box::new(Ty::Nat),
            Box::new(Prop::Eq(
                Box::new(Ty::Nat),
                Box::new(Term::Var(0)),
                Box::new(Term::Zero),
            )),
        )
    }

    fn fuel() -> Fuel {
        Fuel::new(4, 3)
    }

    #[test]
    fn naturals_are_members() {
        let v = type_member(
            &Context::empty(),
            &Ty::Nat,
            &Vec::new(),
            &Outcome::Value(natv(7)),
            fuel(),
        );
        assert_eq!(v, Verdict::Holds);
    }

    #[test]
    fn refinement_excludes_nonzero() {
        let v = type_member(
            &Context::empty(),
            &nat_eq_zero(),
            &Vec::new(),
            &Outcome::Value(natv(1)),
            fuel(),
        );
        assert!(v.is_fails());
        let ok = type_member(
            &Context::empty(),
            &nat_eq_zero(),
            &Vec::new(),
            &Outcome::Value(natv(0)),
            fuel(),
        );
        assert_eq!(ok, Verdict::Holds);
    }

    #[test]
    fn errors_are_never_members() {
        for ty in [Ty::Nat, Ty::Unit, nat_eq_zero()] {
            let v = type_member(&Context::empty(), &ty, &Vec::new(), &Outcome::Error, fuel());
            assert!(v.is_fails());
        }
    }

    #[test]
    fn prop_basics() {
        assert_eq!(
            prop_holds(&Context::empty(), &Prop::Top, &Vec::new(), fuel()),
            Verdict::Holds
        );
        assert!(prop_holds(&Context::empty(), &Prop::Bot, &Vec::new(), fuel()).is_fails());
    }

    #[test]
    fn ctx_member_examples() {
        assert_eq!(
            ctx_member(&Context::empty(), &Vec::new(), fuel()),
            Verdict::Holds
        );
        let g = Context::empty().extended(Hyp::Computational(Ty::Nat));
        assert_eq!(
            ctx_member(&g, &vec![Outcome::Value(natv(3))], fuel()),
            Verdict::Holds
        );
        let bad = Context::empty().extended(Hyp::Propositional(Prop::Bot));
        assert!(ctx_member(&bad, &vec![Outcome::Value(Value::Unit)], fuel()).is_fails());
    }

    #[test]
    fn downgrade_examples() {
        assert_eq!(
            downgrade_env(&Context::empty(), &Vec::new()),
            Ok(Vec::new())
        );
        let ghost = Context::empty().extended(Hyp::Ghost(Ty::Nat));
        assert_eq!(
            downgrade_env(&ghost, &vec![Outcome::Value(natv(3))]),
            Ok(vec![Outcome::Value(Value::Unit)])
        );
        let comp = Context::empty().extended(Hyp::Computational(Ty::Nat));
        assert_eq!(
            downgrade_env(&comp, &vec![Outcome::Value(natv(3))]),
            Ok(vec![Outcome::Value(natv(3))])
        );
        assert!(downgrade_env(&ghost, &Vec::new()).is_err());
    }

    #[test]
    fn env_enumeration_filters_by_refinement() {
        let g = Context::empty().extended(Hyp::Computational(Ty::Nat));
        let (envs, complete) = enumerate_envs(&g, Fuel::new(2, 3));
        assert_eq!(envs.len(), 3);
        assert!(!complete); // naturals are never exhausted

        let refined = Context::empty()
            .extended(Hyp::Computational(Ty::Nat))
            .extended(Hyp::Propositional(Prop::Eq(
                Box::new(Ty::Nat),
                Box::new(Term::Var(0)),
                Box::new(Term::Zero),
            )));
        let (envs, _) = enumerate_envs(&refined, Fuel::new(2, 3));
        assert_eq!(envs.len(), 1);
        assert_eq!(envs[0][0], Outcome::Value(natv(0)));
    }

    #[test]
    fn empty_context_has_one_env() {
        let (envs, complete) = enumerate_envs(&Context::empty(), fuel());
        assert_eq!(envs, vec![Vec::<Outcome>::new()]);
        assert!(complete);
    }
}
