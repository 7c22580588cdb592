//! The erased target: a simply-typed lambda calculus with an error
//! stop, its typing rules, substitution, and a call-by-value evaluator
//! for the exception-monad denotational semantics.
//!
//! Environments store outcomes (value or error) rather than bare
//! values: the substitution rule permits substituting arbitrary terms
//! for variables, so the semantics must too. Binders themselves always
//! insert `ret`-wrapped values.

use num_bigint::BigUint;
use num_traits::{One, Zero as NumZero};
use std::fmt;
use std::rc::Rc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ty {
    Void,
    Unit,
    Nat,
    Fn(Box<Ty>, Box<Ty>),
    Prod(Box<Ty>, Box<Ty>),
    Sum(Box<Ty>, Box<Ty>),
}

/// Terms. `Error`, `Inl`/`Inr` and the binding forms carry optional
/// annotations so that synthesis is unique; erasure fills them from the
/// refined program, while hand-written programs may omit them and rely
/// on checking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(usize),
    Unit,
    /// `error` at an optional annotated type.
    Error(Option<Ty>),
    Lam(Ty, Box<Expr>),
    App(Box<Expr>, Box<Expr>),
    Pair(Box<Expr>, Box<Expr>),
    /// `let (x, y) = scrut in body`; the body binds `x` then `y`.
    /// The annotation is the scrutinee's product type.
    LetPair {
        annot: Option<Ty>,
        scrut: Box<Expr>,
        body: Box<Expr>,
    },
    /// `inl e`; the annotation is the right component of the sum.
    Inl(Option<Ty>, Box<Expr>),
    /// `inr e`; the annotation is the left component of the sum.
    Inr(Option<Ty>, Box<Expr>),
    /// The annotation is the result type.
    Cases {
        annot: Option<Ty>,
        scrut: Box<Expr>,
        left: Box<Expr>,
        right: Box<Expr>,
    },
    Zero,
    Succ,
    /// The annotation is the result type; the step binds the previous result.
    Natrec {
        annot: Option<Ty>,
        scrut: Box<Expr>,
        zero: Box<Expr>,
        succ: Box<Expr>,
    },
    /// `let x = bound in body`; the annotation is the bound term's type.
    Let {
        annot: Option<Ty>,
        bound: Box<Expr>,
        body: Box<Expr>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Unit,
    Nat(BigUint),
    Inl(Box<Value>),
    Inr(Box<Value>),
    Pair(Box<Value>, Box<Value>),
    /// A closure remembers its domain type so extensional comparison
    /// knows what to enumerate.
    Closure {
        dom: Ty,
        env: Env,
        body: Rc<Expr>,
    },
    /// The `succ` primitive.
    SuccFn,
}

/// Result of evaluation in the exception monad.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Value(Value),
    Error,
}

impl Outcome {
    pub fn ret(v: Value) -> Outcome {
        Outcome::Value(v)
    }

    pub fn is_error(&self) -> bool {
        matches!(self, Outcome::Error)
    }
}

/// One outcome per context slot, innermost last.
pub type Env = Vec<Outcome>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeError(pub String);

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for TypeError {}

type Res<T> = Result<T, TypeError>;

fn err<T>(msg: impl Into<String>) -> Res<T> {
    Err(TypeError(msg.into()))
}

/// Simply-typed context, innermost slot last.
pub type Ctx = Vec<Ty>;

fn lookup(ctx: &Ctx, i: usize) -> Res<Ty> {
    if i < ctx.len() {
        Ok(ctx[ctx.len() - 1 - i].clone())
    } else {
        err(format!("unbound variable {i}"))
    }
}

/// Synthesizes the type of `t`. Annotation-free `error`/`inl`/`inr`
/// do not synthesize.
pub fn infer(ctx: &Ctx, t: &Expr) -> Res<Ty> {
    match t {
        Expr::Var(i) => lookup(ctx, *i),
        Expr::Unit => Ok(Ty::Unit),
        Expr::Zero => Ok(Ty::Nat),
        Expr::Succ => Ok(Ty::Fn(Box::new(Ty::Nat), Box::new(Ty::Nat))),
        Expr::Error(Some(ty)) => Ok(ty.clone()),
        Expr::Error(None) => err("error needs a type annotation to synthesize"),
        Expr::Lam(dom, body) => {
            let mut inner = ctx.clone();
            inner.push(dom.clone());
            let cod = infer(&inner, body)?;
            Ok(Ty::Fn(Box::new(dom.clone()), Box::new(cod)))
        }
        Expr::App(f, a) => match infer(ctx, f)? {
            Ty::Fn(dom, cod) => {
                check(ctx, a, &dom)?;
                Ok(*cod)
            }
            other => err(format!("applied non-function of type {other}")),
        },
        Expr::Pair(l, r) => Ok(Ty::Prod(Box::new(infer(ctx, l)?), Box::new(infer(ctx, r)?))),
        Expr::LetPair { annot, scrut, body } => {
            let scrut_ty = match annot {
                Some(ty) => {
                    check(ctx, scrut, ty)?;
                    ty.clone()
                }
                None => infer(ctx, scrut)?,
            };
            let (a, b) = match scrut_ty {
                Ty::Prod(a, b) => (a, b),
                other => return err(format!("let-pair scrutinee has type {other}")),
            };
            let mut inner = ctx.clone();
            inner.push(*a);
            inner.push(*b);
            infer(&inner, body)
        }
        Expr::Inl(Some(right), e) => Ok(Ty::Sum(Box::new(infer(ctx, e)?), Box::new(right.clone()))),
        Expr::Inr(Some(left), e) => Ok(Ty::Sum(Box::new(left.clone()), Box::new(infer(ctx, e)?))),
        Expr::Inl(None, _) | Expr::Inr(None, _) => {
            err("bare injection needs a sum annotation to synthesize")
        }
        Expr::Cases {
            annot,
            scrut,
            left,
            right,
        } => {
            let (a, b) = match infer(ctx, scrut)? {
                Ty::Sum(a, b) => (a, b),
                other => return err(format!("case scrutinee has type {other}")),
            };
            let mut lctx = ctx.clone();
            lctx.push(*a);
            let mut rctx = ctx.clone();
            rctx.push(*b);
            match annot {
                Some(c) => {
                    check(&lctx, left, c)?;
                    check(&rctx, right, c)?;
                    Ok(c.clone())
                }
                None => {
                    let c = infer(&lctx, left)?;
                    check(&rctx, right, &c)?;
                    Ok(c)
                }
            }
        }
        Expr::Natrec {
            annot,
            scrut,
            zero,
            succ,
        } => {
            check(ctx, scrut, &Ty::Nat)?;
            let c = match annot {
                Some(c) => {
                    check(ctx, zero, c)?;
                    c.clone()
                }
                None => infer(ctx, zero)?,
            };
            let mut inner = ctx.clone();
            inner.push(c.clone());
            check(&inner, succ, &c)?;
            Ok(c)
        }
        Expr::Let { annot, bound, body } => {
            let bound_ty = match annot {
                Some(ty) => {
                    check(ctx, bound, ty)?;
                    ty.clone()
                }
                None => infer(ctx, bound)?,
            };
            let mut inner = ctx.clone();
            inner.push(bound_ty);
            infer(&inner, body)
        }
    }
}

/// Checks `t` against `expected`, descending through the forms whose
/// annotations may be missing.
pub fn check(ctx: &Ctx, t: &Expr, expected: &Ty) -> Res<()> {
    match (t, expected) {
        (Expr::Error(None), _) => Ok(()),
        (Expr::Error(Some(ty)), _) => {
            if ty == expected {
                Ok(())
            } else {
                err(format!("error annotated {ty} checked against {expected}"))
            }
        }
        (Expr::Lam(dom, body), Ty::Fn(a, b)) => {
            if dom != &**a {
                return err(format!("lambda domain {dom} does not match {a}"));
            }
            let mut inner = ctx.clone();
            inner.push(dom.clone());
            check(&inner, body, b)
        }
        (Expr::Pair(l, r), Ty::Prod(a, b)) => {
            check(ctx, l, a)?;
            check(ctx, r, b)
        }
        (Expr::Inl(annot, e), Ty::Sum(a, b)) => {
            if let Some(right) = annot {
                if right != &**b {
                    return err(format!("inl annotation {right} does not match {b}"));
                }
            }
            check(ctx, e, a)
        }
        (Expr::Inr(annot, e), Ty::Sum(a, b)) => {
            if let Some(left) = annot {
                if left != &**a {
                    return err(format!("inr annotation {left} does not match {a}"));
                }
            }
            check(ctx, e, b)
        }
        (
            Expr::Cases {
                annot,
                scrut,
                left,
                right,
            },
            _,
        ) => {
            if let Some(c) = annot {
                if c != expected {
                    return err(format!("cases annotated {c} checked against {expected}"));
                }
            }
            let (a, b) = match infer(ctx, scrut)? {
                Ty::Sum(a, b) => (a, b),
                other => return err(format!("case scrutinee has type {other}")),
            };
            let mut lctx = ctx.clone();
            lctx.push(*a);
            check(&lctx, left, expected)?;
            let mut rctx = ctx.clone();
            rctx.push(*b);
            check(&rctx, right, expected)
        }
        (Expr::LetPair { annot, scrut, body }, _) => {
            let scrut_ty = match annot {
                Some(ty) => {
                    check(ctx, scrut, ty)?;
                    ty.clone()
                }
                None => infer(ctx, scrut)?,
            };
            let (a, b) = match scrut_ty {
                Ty::Prod(a, b) => (a, b),
                other => return err(format!("let-pair scrutinee has type {other}")),
            };
            let mut inner = ctx.clone();
            inner.push(*a);
            inner.push(*b);
            check(&inner, body, expected)
        }
        (
            Expr::Natrec {
                annot,
                scrut,
                zero,
                succ,
            },
            _,
        ) => {
            if let Some(c) = annot {
                if c != expected {
                    return err(format!("natrec annotated {c} checked against {expected}"));
                }
            }
            check(ctx, scrut, &Ty::Nat)?;
            check(ctx, zero, expected)?;
            let mut inner = ctx.clone();
            inner.push(expected.clone());
            check(&inner, succ, expected)
        }
        (Expr::Let { annot, bound, body }, _) => {
            let bound_ty = match annot {
                Some(ty) => {
                    check(ctx, bound, ty)?;
                    ty.clone()
                }
                None => infer(ctx, bound)?,
            };
            let mut inner = ctx.clone();
            inner.push(bound_ty);
            check(&inner, body, expected)
        }
        _ => {
            let found = infer(ctx, t)?;
            if &found == expected {
                Ok(())
            } else {
                err(format!("expected {expected}, found {found}"))
            }
        }
    }
}

// ---------------------------------------------------------------------
// Substitution.

/// Maps each free index to a term; indices past the entries shift.
#[derive(Clone, Debug)]
pub struct Subst {
    entries: Vec<Expr>,
    shift: usize,
}

impl Subst {
    pub fn new(entries: Vec<Expr>, shift: usize) -> Subst {
        Subst { entries, shift }
    }

    pub fn single(e: Expr) -> Subst {
        Subst {
            entries: vec![e],
            shift: 0,
        }
    }

    pub fn inner(entries: Vec<Expr>) -> Subst {
        Subst { entries, shift: 0 }
    }

    fn get(&self, i: usize) -> Expr {
        if i < self.entries.len() {
            self.entries[i].clone()
        } else {
            Expr::Var(i - self.entries.len() + self.shift)
        }
    }
}

pub fn lift(t: &Expr, cutoff: usize, amount: usize) -> Expr {
    map_vars(t, cutoff, &mut |i, depth| {
        if i >= depth + cutoff {
            Expr::Var(i + amount)
        } else {
            Expr::Var(i)
        }
    })
}

fn map_vars(t: &Expr, _cutoff: usize, f: &mut impl FnMut(usize, usize) -> Expr) -> Expr {
    fn go(t: &Expr, depth: usize, f: &mut impl FnMut(usize, usize) -> Expr) -> Expr {
        match t {
            Expr::Var(i) => {
                if *i < depth {
                    Expr::Var(*i)
                } else {
                    f(*i, depth)
                }
            }
            Expr::Unit => Expr::Unit,
            Expr::Zero => Expr::Zero,
            Expr::Succ => Expr::Succ,
            Expr::Error(a) => Expr::Error(a.clone()),
            Expr::Lam(ty, b) => Expr::Lam(ty.clone(), Box::new(go(b, depth + 1, f))),
            Expr::App(g, a) => Expr::App(Box::new(go(g, depth, f)), Box::new(go(a, depth, f))),
            Expr::Pair(l, r) => Expr::Pair(Box::new(go(l, depth, f)), Box::new(go(r, depth, f))),
            Expr::LetPair { annot, scrut, body } => Expr::LetPair {
                annot: annot.clone(),
                scrut: Box::new(go(scrut, depth, f)),
                body: Box::new(go(body, depth + 2, f)),
            },
            Expr::Inl(a, e) => Expr::Inl(a.clone(), Box::new(go(e, depth, f))),
            Expr::Inr(a, e) => Expr::Inr(a.clone(), Box::new(go(e, depth, f))),
            Expr::Cases {
                annot,
                scrut,
                left,
                right,
            } => Expr::Cases {
                annot: annot.clone(),
                scrut: Box::new(go(scrut, depth, f)),
                left: Box::new(go(left, depth + 1, f)),
                right: Box::new(go(right, depth + 1, f)),
            },
            Expr::Natrec {
                annot,
                scrut,
                zero,
                succ,
            } => Expr::Natrec {
                annot: annot.clone(),
                scrut: Box::new(go(scrut, depth, f)),
                zero: Box::new(go(zero, depth, f)),
                succ: Box::new(go(succ, depth + 1, f)),
            },
            Expr::Let { annot, bound, body } => Expr::Let {
                annot: annot.clone(),
                bound: Box::new(go(bound, depth, f)),
                body: Box::new(go(body, depth + 1, f)),
            },
        }
    }
    go(t, 0, f)
}

pub fn subst(t: &Expr, s: &Subst) -> Expr {
    map_vars(t, 0, &mut |i, depth| lift(&s.get(i - depth), 0, depth))
}

// ---------------------------------------------------------------------
// Evaluation.

fn bind(o: Outcome, f: impl FnOnce(Value) -> Outcome) -> Outcome {
    match o {
        Outcome::Value(v) => f(v),
        Outcome::Error => Outcome::Error,
    }
}

/// Applies a function value. Panics on ill-typed input; the evaluator
/// requires its argument to typecheck.
pub fn apply(fun: &Value, arg: Value) -> Outcome {
    match fun {
        Value::Closure { env, body, .. } => {
            let mut inner = env.clone();
            inner.push(Outcome::Value(arg));
            eval(&inner, body)
        }
        Value::SuccFn => match arg {
            Value::Nat(n) => Outcome::Value(Value::Nat(n + BigUint::one())),
            other => panic!("succ applied to non-numeral {other:?}"),
        },
        other => panic!("applied non-function value {other:?}"),
    }
}

/// Call-by-value evaluation in the exception monad. Total and
/// deterministic on typed input: the only recursion is the structural
/// fold of `natrec`.
pub fn eval(env: &Env, t: &Expr) -> Outcome {
    match t {
        Expr::Var(i) => env[env.len() - 1 - i].clone(),
        Expr::Unit => Outcome::Value(Value::Unit),
        Expr::Error(_) => Outcome::Error,
        Expr::Zero => Outcome::Value(Value::Nat(BigUint::ZERO)),
        Expr::Succ => Outcome::Value(Value::SuccFn),
        Expr::Lam(dom, body) => Outcome::Value(Value::Closure {
            dom: dom.clone(),
            env: env.clone(),
            body: Rc::new((**body).clone()),
        }),
        Expr::App(f, a) => bind(eval(env, f), |fv| bind(eval(env, a), |av| apply(&fv, av))),
        Expr::Pair(l, r) => bind(eval(env, l), |lv| {
            bind(eval(env, r), |rv| {
                Outcome::Value(Value::Pair(Box::new(lv), Box::new(rv)))
            })
        }),
        Expr::LetPair { scrut, body, .. } => bind(eval(env, scrut), |v| match v {
            Value::Pair(a, b) => {
                let mut inner = env.clone();
                inner.push(Outcome::Value(*a));
                inner.push(Outcome::Value(*b));
                eval(&inner, body)
            }
            other => panic!("let-pair scrutinee evaluated to {other:?}"),
        }),
        Expr::Inl(_, e) => bind(eval(env, e), |v| Outcome::Value(Value::Inl(Box::new(v)))),
        Expr::Inr(_, e) => bind(eval(env, e), |v| Outcome::Value(Value::Inr(Box::new(v)))),
        Expr::Cases {
            scrut, left, right, ..
        } => bind(eval(env, scrut), |v| match v {
            Value::Inl(a) => {
                let mut inner = env.clone();
                inner.push(Outcome::Value(*a));
                eval(&inner, left)
            }
            Value::Inr(b) => {
                let mut inner = env.clone();
                inner.push(Outcome::Value(*b));
                eval(&inner, right)
            }
            other => panic!("case scrutinee evaluated to {other:?}"),
        }),
        Expr::Natrec {
            scrut, zero, succ, ..
        } => bind(eval(env, scrut), |v| {
            let mut n = match v {
                Value::Nat(n) => n,
                other => panic!("natrec scrutinee evaluated to {other:?}"),
            };
            let mut acc = eval(env, zero);
            while !n.is_zero() {
                acc = bind(acc, |prev| {
                    let mut inner = env.clone();
                    inner.push(Outcome::Value(prev));
                    eval(&inner, succ)
                });
                n -= BigUint::one();
            }
            acc
        }),
        Expr::Let { bound, body, .. } => bind(eval(env, bound), |v| {
            let mut inner = env.clone();
            inner.push(Outcome::Value(v));
            eval(&inner, body)
        }),
    }
}

// ---------------------------------------------------------------------
// Extensional value comparison.

/// Three-valued comparison result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    True,
    False,
    /// No counterexample found within the enumeration bound.
    Unknown,
}

impl Cmp {
    fn and(self, other: Cmp) -> Cmp {
        match (self, other) {
            (Cmp::False, _) | (_, Cmp::False) => Cmp::False,
            (Cmp::Unknown, _) | (_, Cmp::Unknown) => Cmp::Unknown,
            _ => Cmp::True,
        }
    }
}

/// Enumerates values of a simple type: all of them for finite types,
/// the naturals `0..=bound` otherwise. The flag reports whether the
/// enumeration is exhaustive. Function types cannot be enumerated.
pub fn enumerate(ty: &Ty, bound: u64) -> Option<(Vec<Value>, bool)> {
    match ty {
        Ty::Void => Some((vec![], true)),
        Ty::Unit => Some((vec![Value::Unit], true)),
        Ty::Nat => Some((
            (0..=bound).map(|n| Value::Nat(BigUint::from(n))).collect(),
            false,
        )),
        Ty::Sum(a, b) => {
            let (ls, lc) = enumerate(a, bound)?;
            let (rs, rc) = enumerate(b, bound)?;
            let mut out: Vec<Value> = ls.into_iter().map(|v| Value::Inl(Box::new(v))).collect();
            out.extend(rs.into_iter().map(|v| Value::Inr(Box::new(v))));
            Some((out, lc && rc))
        }
        Ty::Prod(a, b) => {
            let (ls, lc) = enumerate(a, bound)?;
            let (rs, rc) = enumerate(b, bound)?;
            let mut out = Vec::new();
            for l in &ls {
                for r in &rs {
                    out.push(Value::Pair(Box::new(l.clone()), Box::new(r.clone())));
                }
            }
            Some((out, lc && rc))
        }
        Ty::Fn(_, _) => None,
    }
}

/// Compares two outcomes, testing function values extensionally on the
/// enumerable inhabitants of their domain up to `fuel`.
pub fn value_eq(a: &Outcome, b: &Outcome, fuel: u64) -> Cmp {
    match (a, b) {
        (Outcome::Error, Outcome::Error) => Cmp::True,
        (Outcome::Error, _) | (_, Outcome::Error) => Cmp::False,
        (Outcome::Value(x), Outcome::Value(y)) => value_eq_val(x, y, fuel),
    }
}

fn value_eq_val(a: &Value, b: &Value, fuel: u64) -> Cmp {
    match (a, b) {
        (Value::Unit, Value::Unit) => Cmp::True,
        (Value::Nat(m), Value::Nat(n)) => {
            if m == n {
                Cmp::True
            } else {
                Cmp::False
            }
        }
        (Value::Inl(x), Value::Inl(y)) | (Value::Inr(x), Value::Inr(y)) => value_eq_val(x, y, fuel),
        (Value::Inl(_), Value::Inr(_)) | (Value::Inr(_), Value::Inl(_)) => Cmp::False,
        (Value::Pair(x1, y1), Value::Pair(x2, y2)) => {
            value_eq_val(x1, x2, fuel).and(value_eq_val(y1, y2, fuel))
        }
        (Value::SuccFn, Value::SuccFn) => Cmp::True,
        (
            f @ (Value::Closure { .. } | Value::SuccFn),
            g @ (Value::Closure { .. } | Value::SuccFn),
        ) => {
            let dom = match (f, g) {
                (Value::Closure { dom, .. }, _) => dom.clone(),
                (_, Value::Closure { dom, .. }) => dom.clone(),
                _ => unreachable!(),
            };
            match enumerate(&dom, fuel) {
                None => Cmp::Unknown,
                Some((inputs, complete)) => {
                    let mut result = if complete { Cmp::True } else { Cmp::Unknown };
                    for input in inputs {
                        let fa = apply(f, input.clone());
                        let ga = apply(g, input);
                        match value_eq(&fa, &ga, fuel) {
                            Cmp::False => return Cmp::False,
                            Cmp::Unknown => result = Cmp::Unknown,
                            Cmp::True => {}
                        }
                    }
                    result
                }
            }
        }
        _ => Cmp::False,
    }
}

// ---------------------------------------------------------------------
// Printing.

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn at(t: &Ty, prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                Ty::Void => write!(f, "Void"),
                Ty::Unit => write!(f, "Unit"),
                Ty::Nat => write!(f, "Nat"),
                Ty::Fn(a, b) => {
                    let need = prec > 1;
                    if need {
                        write!(f, "(")?;
                    }
                    at(a, 2, f)?;
                    write!(f, " -> ")?;
                    at(b, 1, f)?;
                    if need {
                        write!(f, ")")?;
                    }
                    Ok(())
                }
                Ty::Sum(a, b) => {
                    let need = prec > 2;
                    if need {
                        write!(f, "(")?;
                    }
                    at(a, 3, f)?;
                    write!(f, " + ")?;
                    at(b, 2, f)?;
                    if need {
                        write!(f, ")")?;
                    }
                    Ok(())
                }
                Ty::Prod(a, b) => {
                    let need = prec > 3;
                    if need {
                        write!(f, "(")?;
                    }
                    at(a, 4, f)?;
                    write!(f, " * ")?;
                    at(b, 3, f)?;
                    if need {
                        write!(f, ")")?;
                    }
                    Ok(())
                }
            }
        }
        at(self, 0, f)
    }
}

impl Expr {
    /// Builds the numeral `n` as iterated application of `succ`.
    pub fn numeral(n: u64) -> Expr {
        let mut t = Expr::Zero;
        for _ in 0..n {
            t = Expr::App(Box::new(Expr::Succ), Box::new(t));
        }
        t
    }

    /// If the expression is a numeral, returns it.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut t = self;
        let mut n = 0u64;
        loop {
            match t {
                Expr::Zero => return Some(n),
                Expr::App(f, a) if **f == Expr::Succ => {
                    n = n.checked_add(1)?;
                    t = a;
                }
                _ => return None,
            }
        }
    }
}

/// Pretty-prints an erased term with invented binder names; binders the
/// body never uses print as `_`.
pub fn print_expr(t: &Expr) -> String {
    fn uses(t: &Expr, idx: usize) -> bool {
        let mut found = false;
        map_vars(t, 0, &mut |i, depth| {
            if i == idx + depth {
                found = true;
            }
            Expr::Var(i)
        });
        found
    }
    fn go(t: &Expr, names: &mut Vec<String>, fresh: &mut usize, prec: u8) -> String {
        let atom = 2u8;
        let app = 1u8;
        if let Some(n) = t.as_numeral() {
            return n.to_string();
        }
        let bind = |names: &mut Vec<String>, fresh: &mut usize, used: bool| -> String {
            let n = if used {
                let n = format!("x{fresh}");
                *fresh += 1;
                n
            } else {
                "_".to_string()
            };
            names.push(n.clone());
            n
        };
        let paren = |s: String, need: bool| if need { format!("({s})") } else { s };
        match t {
            Expr::Var(i) => {
                if *i < names.len() {
                    names[names.len() - 1 - *i].clone()
                } else {
                    format!("?{}", i - names.len())
                }
            }
            Expr::Unit => "()".into(),
            Expr::Zero => "0".into(),
            Expr::Succ => "succ".into(),
            Expr::Error(_) => "error".into(),
            Expr::Lam(ty, body) => {
                let x = bind(names, fresh, uses(body, 0));
                let b = go(body, names, fresh, 0);
                names.pop();
                paren(format!("\\{x}:{ty}. {b}"), prec > 0)
            }
            Expr::App(g, a) => {
                let fs = go(g, names, fresh, app);
                let as_ = go(a, names, fresh, atom);
                paren(format!("{fs} {as_}"), prec > app)
            }
            Expr::Pair(l, r) => {
                let ls = go(l, names, fresh, 0);
                let rs = go(r, names, fresh, 0);
                format!("({ls}, {rs})")
            }
            Expr::LetPair { scrut, body, .. } => {
                let es = go(scrut, names, fresh, 0);
                let x = bind(names, fresh, uses(body, 1));
                let y = bind(names, fresh, uses(body, 0));
                let bs = go(body, names, fresh, 0);
                names.pop();
                names.pop();
                paren(format!("let ({x}, {y}) = {es} in {bs}"), prec > 0)
            }
            Expr::Inl(_, e) => paren(format!("inl {}", go(e, names, fresh, atom)), prec > app),
            Expr::Inr(_, e) => paren(format!("inr {}", go(e, names, fresh, atom)), prec > app),
            Expr::Cases {
                scrut, left, right, ..
            } => {
                let es = go(scrut, names, fresh, atom);
                let x = bind(names, fresh, uses(left, 0));
                let ls = go(left, names, fresh, 0);
                names.pop();
                let y = bind(names, fresh, uses(right, 0));
                let rs = go(right, names, fresh, 0);
                names.pop();
                paren(
                    format!("cases {es} (inl {x} => {ls}) (inr {y} => {rs})"),
                    prec > app,
                )
            }
            Expr::Natrec {
                scrut, zero, succ, ..
            } => {
                let es = go(scrut, names, fresh, atom);
                let zs = go(zero, names, fresh, atom);
                let y = bind(names, fresh, uses(succ, 0));
                let ss = go(succ, names, fresh, 0);
                names.pop();
                paren(format!("natrec {es} {zs} ({y} => {ss})"), prec > app)
            }
            Expr::Let { bound, body, .. } => {
                let bs = go(bound, names, fresh, 0);
                let x = bind(names, fresh, uses(body, 0));
                let es = go(body, names, fresh, 0);
                names.pop();
                paren(format!("let {x} = {bs} in {es}"), prec > 0)
            }
        }
    }
    go(t, &mut Vec::new(), &mut 0, 0)
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Unit => write!(f, "()"),
            Value::Nat(n) => write!(f, "{n}"),
            Value::Inl(v) => write!(f, "inl {v}"),
            Value::Inr(v) => write!(f, "inr {v}"),
            Value::Pair(a, b) => write!(f, "({a}, {b})"),
            Value::Closure { .. } | Value::SuccFn => write!(f, "<closure>"),
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Value(v) => write!(f, "{v}"),
            Outcome::Error => write!(f, "error"),
        }
    }
}
