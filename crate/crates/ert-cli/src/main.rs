//! Batch driver: check, erase, run and audit `.ert` files.
//!
//! Exit codes: 0 on success, 1 when checking or the audit rejects,
//! 2 for usage and IO errors.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ert::ctx::Context;
use ert::diag::Diagnostic;
use ert::driver::{self, DeclBody};
use ert::oracle::{self, Fuel, Verdict};
use ert::report::Record;
use ert::{erase, stlc};

#[derive(Parser)]
#[command(name = "ert", version, about = "Explicit refinement types toolchain")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Subcommand)]
enum Cmd {
    /// Type-check declarations.
    Check {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Print the erased simply-typed programs of checked declarations.
    Erase {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Evaluate one definition and print its value.
    Run { path: PathBuf, decl: String },
    /// Audit checked declarations against the bounded denotations.
    Oracle {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Largest natural number enumerated.
        #[arg(long, default_value_t = 8)]
        fuel: u64,
        /// Quantifier and function-space unfolding depth.
        #[arg(long, default_value_t = 2)]
        depth: u32,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
        /// Skip the checker and audit raw declarations. Unsound by
        /// design: only useful as a negative control.
        #[arg(long, hide = true)]
        unchecked: bool,
    },
}

struct Palette {
    error: &'static str,
    reset: &'static str,
}

fn palette() -> Palette {
    let on = matches!(
        std::env::var("ERT_COLOR").as_deref(),
        Ok("1") | Ok("true") | Ok("yes") | Ok("on")
    );
    if on {
        Palette {
            error: "\x1b[1;31m",
            reset: "\x1b[0m",
        }
    } else {
        Palette {
            error: "",
            reset: "",
        }
    }
}

fn print_diag(d: &Diagnostic, format: Format) {
    match format {
        Format::Structured => println!("{}", Record::from_diag(d).to_line()),
        Format::Human => {
            let p = palette();
            eprintln!("{}error{}: {d}", p.error, p.reset);
        }
    }
}

fn load(path: &Path) -> Result<ert::driver::FileReport, ExitCode> {
    if !path.exists() {
        eprintln!("error: no such file: {}", path.display());
        return Err(ExitCode::from(2));
    }
    match driver::check_path(path) {
        Ok(report) => Ok(report),
        Err(d) => {
            if d.rule == "IO" {
                eprintln!("error: {d}");
                Err(ExitCode::from(2))
            } else {
                print_diag(&d, Format::Human);
                Err(ExitCode::from(1))
            }
        }
    }
}

fn cmd_check(paths: &[PathBuf], format: Format) -> ExitCode {
    let mut failed = false;
    for path in paths {
        let file = path.display().to_string();
        if !path.exists() {
            eprintln!("error: no such file: {file}");
            return ExitCode::from(2);
        }
        let src = match std::fs::read_to_string(path) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: cannot read {file}: {e}");
                return ExitCode::from(2);
            }
        };
        match driver::check_source(&src, &file) {
            Err(d) => {
                failed = true;
                print_diag(&d, format);
            }
            Ok(report) => {
                for d in report.diagnostics() {
                    failed = true;
                    print_diag(&d, format);
                }
                for decl in &report.decls {
                    match format {
                        Format::Structured => println!(
                            "{}",
                            Record::Decl {
                                file: file.clone(),
                                name: decl.name.clone(),
                                ok: decl.result.is_ok(),
                            }
                            .to_line()
                        ),
                        Format::Human => {
                            if decl.result.is_ok() {
                                println!("checked {file}::{}", decl.name);
                            }
                        }
                    }
                }
            }
        }
    }
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_erase(paths: &[PathBuf]) -> ExitCode {
    for path in paths {
        let report = match load(path) {
            Ok(r) => r,
            Err(code) => return code,
        };
        if !report.is_ok() {
            for d in report.diagnostics() {
                print_diag(&d, Format::Human);
            }
            eprintln!("error: refusing to erase unchecked input");
            return ExitCode::from(1);
        }
        for decl in &report.decls {
            match &decl.body {
                DeclBody::Def { ty, term } => {
                    println!("def {} : {}", decl.name, erase::erase_ty(ty));
                    println!("  = {}", stlc::print_expr(&erase::erase_term(term)));
                }
                DeclBody::Thm { .. } => {
                    // Proofs erase to the unit value.
                    println!("thm {} : Unit", decl.name);
                    println!("  = ()");
                }
            }
        }
    }
    ExitCode::SUCCESS
}

fn cmd_run(path: &Path, decl: &str) -> ExitCode {
    let report = match load(path) {
        Ok(r) => r,
        Err(code) => return code,
    };
    if !report.is_ok() {
        for d in report.diagnostics() {
            print_diag(&d, Format::Human);
        }
        return ExitCode::from(1);
    }
    let Some(found) = report.decls.iter().find(|d| d.name == decl) else {
        eprintln!("error: no declaration named `{decl}` in {}", path.display());
        return ExitCode::from(2);
    };
    match &found.body {
        DeclBody::Thm { .. } => {
            eprintln!("error: `{decl}` is a theorem; proofs are not run");
            ExitCode::from(2)
        }
        DeclBody::Def { term, .. } => {
            let outcome = stlc::eval(&Vec::new(), &erase::erase_term(term));
            println!("{outcome}");
            ExitCode::SUCCESS
        }
    }
}

fn verdict_fields(v: &Verdict) -> (&'static str, String) {
    match v {
        Verdict::Holds => ("holds", String::new()),
        Verdict::Unknown => ("unknown", String::new()),
        Verdict::Fails(w) => ("fails", w.clone()),
    }
}

fn cmd_oracle(paths: &[PathBuf], fuel: Fuel, format: Format, unchecked: bool) -> ExitCode {
    let mut holds = 0usize;
    let mut unknown = 0usize;
    let mut fails = 0usize;
    for path in paths {
        let file = path.display().to_string();
        let report = match load(path) {
            Ok(r) => r,
            Err(code) => return code,
        };
        if !unchecked && !report.is_ok() {
            for d in report.diagnostics() {
                print_diag(&d, Format::Human);
            }
            eprintln!("error: refusing to audit unchecked input (run the checker first)");
            return ExitCode::from(1);
        }
        for decl in &report.decls {
            let (check, verdict) = match &decl.body {
                DeclBody::Def { ty, term } => {
                    let outcome = stlc::eval(&Vec::new(), &erase::erase_term(term));
                    let v = oracle::type_member(&Context::empty(), ty, &Vec::new(), &outcome, fuel);
                    ("regularity", v)
                }
                DeclBody::Thm { prop, .. } => {
                    let v = oracle::prop_holds(&Context::empty(), prop, &Vec::new(), fuel);
                    ("consistency", v)
                }
            };
            match verdict {
                Verdict::Holds => holds += 1,
                Verdict::Unknown => unknown += 1,
                Verdict::Fails(_) => fails += 1,
            }
            let (result, witness) = verdict_fields(&verdict);
            match format {
                Format::Structured => println!(
                    "{}",
                    Record::Verdict {
                        file: file.clone(),
                        name: decl.name.clone(),
                        check: check.to_string(),
                        result: result.to_string(),
                        witness,
                    }
                    .to_line()
                ),
                Format::Human => {
                    let suffix = if witness.is_empty() {
                        String::new()
                    } else {
                        format!(": {witness}")
                    };
                    println!("{result:<8} {check:<11} {file}::{}{suffix}", decl.name);
                }
            }
        }
    }
    if format == Format::Human {
        println!("audit: {holds} hold, {unknown} unknown, {fails} fail");
    }
    if fails > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Cmd::Check { paths, format } => cmd_check(&paths, format),
        Cmd::Erase { paths } => cmd_erase(&paths),
        Cmd::Run { path, decl } => cmd_run(&path, &decl),
        Cmd::Oracle {
            paths,
            fuel,
            depth,
            format,
            unchecked,
        } => cmd_oracle(&paths, Fuel::new(fuel, depth), format, unchecked),
    }
}
