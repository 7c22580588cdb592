//! Structured diagnostics.

use std::fmt;

/// A half-open byte range in a source file, with 1-based line/column of
/// its start for display.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Span {
    pub offset: usize,
    pub len: usize,
    pub line: u32,
    pub col: u32,
}

impl Span {
    pub fn new(offset: usize, len: usize, line: u32, col: u32) -> Span {
        Span {
            offset,
            len,
            line,
            col,
        }
    }
}

/// A failed judgment: which rule rejected, where, and what was expected
/// versus found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    /// Name of the typing rule that rejected (e.g. "Var", "Lam-Ir", "β_succ").
    pub rule: &'static str,
    pub message: String,
    pub span: Option<Span>,
    pub file: Option<String>,
    pub expected: Option<String>,
    pub found: Option<String>,
    /// Rendered context dump.
    pub context: String,
}

impl Diagnostic {
    pub fn new(rule: &'static str, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            rule,
            message: message.into(),
            span: None,
            file: None,
            expected: None,
            found: None,
            context: String::new(),
        }
    }

    pub fn with_span(mut self, span: Span) -> Diagnostic {
        self.span = Some(span);
        self
    }

    pub fn with_file(mut self, file: impl Into<String>) -> Diagnostic {
        self.file = Some(file.into());
        self
    }

    pub fn with_expected_found(
        mut self,
        expected: impl Into<String>,
        found: impl Into<String>,
    ) -> Diagnostic {
        self.expected = Some(expected.into());
        self.found = Some(found.into());
        self
    }

    pub fn with_context(mut self, ctx: impl Into<String>) -> Diagnostic {
        self.context = ctx.into();
        self
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{file}:")?;
        }
        if let Some(span) = self.span {
            write!(f, "{}:{}: ", span.line, span.col)?;
        } else if self.file.is_some() {
            write!(f, " ")?;
        }
        write!(f, "[{}] {}", self.rule, self.message)?;
        if let Some(exp) = &self.expected {
            write!(f, "\n  expected: {exp}")?;
        }
        if let Some(found) = &self.found {
            write!(f, "\n  found:    {found}")?;
        }
        if !self.context.is_empty() {
            write!(f, "\n  in context: {}", self.context)?;
        }
        Ok(())
    }
}

impl std::error::Error for Diagnostic {}
