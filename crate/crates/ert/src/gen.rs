//! Bounded random generation of first-order types and well-typed
//! terms, used by the property and acceptance suites.

use crate::syntax::{Term, Ty};

/// Small deterministic xorshift PRNG so generated suites are
/// reproducible across runs.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }
}

/// A random first-order type (no functions), sum/pair depth bounded.
pub fn fo_ty(rng: &mut Rng, depth: u32) -> Ty {
    let choices = if depth == 0 { 2 } else { 4 };
    match rng.below(choices) {
        0 => Ty::Nat,
        1 => Ty::Unit,
        2 => Ty::Sum(
            Box::new(fo_ty(rng, depth - 1)),
            Box::new(fo_ty(rng, depth - 1)),
        ),
        _ => Ty::Pair(
            Box::new(fo_ty(rng, depth - 1)),
            Box::new(fo_ty(rng, depth - 1)),
        ),
    }
}

/// A well-typed term of `target` over `slots` (types of the free
/// variables, innermost first). Naturals stay at 8 or below. The
/// target must be first-order or a function into one; pair types must
/// be non-dependent.
pub fn term(rng: &mut Rng, slots: &[Ty], target: &Ty, depth: u32) -> Term {
    if depth > 0 && rng.below(3) == 0 {
        let hits: Vec<usize> = slots
            .iter()
            .enumerate()
            .filter(|(_, t)| *t == target)
            .map(|(i, _)| i)
            .collect();
        if !hits.is_empty() {
            let pick = hits[rng.below(hits.len() as u64) as usize];
            return Term::Var(pick);
        }
    }
    match target {
        Ty::Nat => {
            if depth > 0 && rng.below(4) == 0 {
                Term::App(
                    Box::new(Term::Succ),
                    Box::new(term(rng, slots, &Ty::Nat, depth - 1)),
                )
            } else {
                Term::numeral(rng.below(9))
            }
        }
        Ty::Unit => Term::Unit,
        Ty::Sum(a, b) => {
            if rng.below(2) == 0 {
                Term::Inl(Box::new(term(rng, slots, a, depth.saturating_sub(1))))
            } else {
                Term::Inr(Box::new(term(rng, slots, b, depth.saturating_sub(1))))
            }
        }
        Ty::Pair(a, b) => {
            let fst = term(rng, slots, a, depth.saturating_sub(1));
            let snd_ty = b.inst_term(&fst).expect("non-dependent pair");
            let snd = term(rng, slots, &snd_ty, depth.saturating_sub(1));
            Term::Pair(Box::new(fst), Box::new(snd))
        }
        Ty::Fn(a, b) => {
            let mut inner: Vec<Ty> = vec![(**a).clone()];
            inner.extend(slots.iter().map(|t| t.lifted(0, 1)));
            Term::Lam(
                a.clone(),
                Box::new(term(rng, &inner, b, depth.saturating_sub(1))),
            )
        }
        other => panic!("term generation cannot target {other:?}"),
    }
}
