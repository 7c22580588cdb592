//! End-to-end pipeline: parse, resolve, check. Checking stops at the
//! first failure within a declaration but continues across the
//! declarations of a file.

use crate::check;
use crate::ctx::{Context, Mode};
use crate::diag::{Diagnostic, Span};
use crate::surface::parser::parse_file;
use crate::surface::resolve::{resolve_file, ResolvedKind};
use crate::syntax::{Proof, Prop, Term, Ty};

#[derive(Clone, Debug)]
pub enum DeclBody {
    Def { ty: Ty, term: Term },
    Thm { prop: Prop, proof: Proof },
}

/// A declaration that resolved; `result` records whether it checked.
#[derive(Clone, Debug)]
pub struct CheckedDecl {
    pub name: String,
    pub span: Span,
    pub body: DeclBody,
    pub result: Result<(), Diagnostic>,
}

#[derive(Clone, Debug, Default)]
pub struct FileReport {
    pub decls: Vec<CheckedDecl>,
    /// Declarations that failed to resolve at all.
    pub resolve_errors: Vec<Diagnostic>,
}

impl FileReport {
    pub fn is_ok(&self) -> bool {
        self.resolve_errors.is_empty() && self.decls.iter().all(|d| d.result.is_ok())
    }

    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        let mut out = self.resolve_errors.clone();
        out.extend(self.decls.iter().filter_map(|d| d.result.clone().err()));
        out
    }
}

/// Checks one resolved declaration from the empty context.
pub fn check_decl(body: &DeclBody) -> Result<(), Diagnostic> {
    let empty = Context::empty();
    match body {
        DeclBody::Def { ty, term } => {
            check::wf_ty(&empty, ty)?;
            check::check_term(&empty, Mode::Computational, term, ty)
        }
        DeclBody::Thm { prop, proof } => {
            check::wf_prop(&empty, prop)?;
            check::check_proof(&empty, Mode::Computational, proof, prop)
        }
    }
}

/// Parses, resolves and checks a whole file. A parse error aborts the
/// file; resolution and checking continue declaration by declaration.
pub fn check_source(src: &str, file: &str) -> Result<FileReport, Diagnostic> {
    let decls = parse_file(src).map_err(|d| d.with_file(file))?;
    let mut report = FileReport::default();
    for (name, span, resolved) in resolve_file(&decls) {
        match resolved {
            Err(d) => report.resolve_errors.push(d.with_file(file)),
            Ok(kind) => {
                let body = match kind {
                    ResolvedKind::Def { ty, body } => DeclBody::Def { ty, term: body },
                    ResolvedKind::Thm { prop, body } => DeclBody::Thm { prop, proof: body },
                };
                let result = check_decl(&body).map_err(|d| {
                    let mut d = d.with_file(file);
                    if d.span.is_none() {
                        d.span = Some(span);
                    }
                    d.message = format!("in `{name}`: {}", d.message);
                    d
                });
                report.decls.push(CheckedDecl {
                    name,
                    span,
                    body,
                    result,
                });
            }
        }
    }
    Ok(report)
}

/// Convenience wrapper reading from disk.
pub fn check_path(path: &std::path::Path) -> Result<FileReport, Diagnostic> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Diagnostic::new("IO", format!("cannot read {}: {e}", path.display())))?;
    check_source(&src, &path.display().to_string())
}
