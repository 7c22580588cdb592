//! Telescopic typing contexts.
//!
//! Hypotheses come in three kinds: computational `x: A`, ghost `|x: A|`
//! and propositional `u: phi`. Index 0 is the most recently bound slot.
//! The checker never materializes upgraded contexts; instead lookups
//! take a mode, and logical mode treats ghosts as computational.

use crate::syntax::{Prop, Ty};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hyp {
    Computational(Ty),
    Ghost(Ty),
    Propositional(Prop),
}

impl Hyp {
    pub fn is_ghost(&self) -> bool {
        matches!(self, Hyp::Ghost(_))
    }
}

/// Variable lookup mode. Logical positions (anything the rules state in
/// the upgraded context) may use ghost hypotheses as computational ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Computational,
    Logical,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Context {
    /// Innermost hypothesis last.
    hyps: Vec<Hyp>,
}

/// Lookup outcomes that the checker turns into diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LookupError {
    OutOfRange {
        index: usize,
        len: usize,
    },
    /// A ghost hypothesis was used in a computational position.
    GhostInComputationalPosition {
        index: usize,
    },
    /// Expected a term-like slot but found a propositional one, or the
    /// other way around.
    WrongKind {
        index: usize,
    },
}

impl Context {
    pub fn empty() -> Context {
        Context { hyps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.hyps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyps.is_empty()
    }

    /// Hypotheses from outermost to innermost.
    pub fn iter(&self) -> impl Iterator<Item = &Hyp> {
        self.hyps.iter()
    }

    pub fn extended(&self, h: Hyp) -> Context {
        let mut hyps = self.hyps.clone();
        hyps.push(h);
        Context { hyps }
    }

    pub fn push(&mut self, h: Hyp) {
        self.hyps.push(h);
    }

    pub fn pop(&mut self) {
        self.hyps.pop();
    }

    /// The raw hypothesis at de Bruijn index `i` (payload in its own scope).
    pub fn hyp(&self, i: usize) -> Option<&Hyp> {
        if i < self.hyps.len() {
            Some(&self.hyps[self.hyps.len() - 1 - i])
        } else {
            None
        }
    }

    /// Looks up a term variable; the returned type is lifted into the
    /// full scope of the context. Ghost hypotheses are only visible in
    /// logical mode.
    pub fn lookup_term(&self, i: usize, mode: Mode) -> Result<Ty, LookupError> {
        match self.hyp(i) {
            None => Err(LookupError::OutOfRange {
                index: i,
                len: self.hyps.len(),
            }),
            Some(Hyp::Computational(ty)) => Ok(ty.lifted(0, i + 1)),
            Some(Hyp::Ghost(ty)) => match mode {
                Mode::Logical => Ok(ty.lifted(0, i + 1)),
                Mode::Computational => Err(LookupError::GhostInComputationalPosition { index: i }),
            },
            Some(Hyp::Propositional(_)) => Err(LookupError::WrongKind { index: i }),
        }
    }

    /// Looks up a proof variable; the proposition is lifted to full scope.
    pub fn lookup_proof(&self, i: usize) -> Result<Prop, LookupError> {
        match self.hyp(i) {
            None => Err(LookupError::OutOfRange {
                index: i,
                len: self.hyps.len(),
            }),
            Some(Hyp::Propositional(p)) => Ok(p.lifted(0, i + 1)),
            Some(_) => Err(LookupError::WrongKind { index: i }),
        }
    }

    /// Every ghost hypothesis becomes computational.
    pub fn upgrade(&self) -> Context {
        Context {
            hyps: self
                .hyps
                .iter()
                .map(|h| match h {
                    Hyp::Ghost(ty) => Hyp::Computational(ty.clone()),
                    other => other.clone(),
                })
                .collect(),
        }
    }

    /// True iff `other` upgrades `self`: pointwise equal except that a
    /// ghost hypothesis here may be computational there.
    pub fn is_upgrade_of(&self, other: &Context) -> bool {
        self.hyps.len() == other.hyps.len()
            && self.hyps.iter().zip(other.hyps.iter()).all(|(g, d)| {
                g == d
                    || matches!(
                        (g, d),
                        (Hyp::Ghost(a), Hyp::Computational(b)) if a == b
                    )
            })
    }
}
