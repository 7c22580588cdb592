//! Tokenizer for `.ert` source. Comments are `-- line` and nestable
//! `{- block -}`.

use crate::diag::{Diagnostic, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    NatLit(u64),
    // keywords
    Def,
    Thm,
    Let,
    In,
    Forall,
    Exists,
    Cases,
    CasesOr,
    Natrec,
    Ind,
    Subst,
    Inl,
    Inr,
    Orl,
    Orr,
    Absurd,
    Succ,
    Rfl,
    Uniq,
    Discr,
    Beta,
    BetaTy,
    BetaPr,
    BetaIr,
    BetaLeft,
    BetaRight,
    BetaZero,
    BetaSucc,
    BetaPair,
    BetaSet,
    BetaRepr,
    EtaTy,
    EtaIr,
    EtaPr,
    IrPr,
    IrTy,
    Trans,
    Top,
    Bot,
    UnitTy,
    NatTy,
    // symbols
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Lt,
    Gt,
    Comma,
    Dot,
    Colon,
    ColonEq,
    Equals,
    FatArrow,
    Arrow,
    Star,
    PlusSym,
    Pipe,
    Backslash,
    Backslash2,
    AndSym,
    OrSym,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::NatLit(n) => format!("numeral `{n}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::Def => "def",
            Tok::Thm => "thm",
            Tok::Let => "let",
            Tok::In => "in",
            Tok::Forall => "forall",
            Tok::Exists => "exists",
            Tok::Cases => "cases",
            Tok::CasesOr => "cases_or",
            Tok::Natrec => "natrec",
            Tok::Ind => "ind",
            Tok::Subst => "subst",
            Tok::Inl => "inl",
            Tok::Inr => "inr",
            Tok::Orl => "orl",
            Tok::Orr => "orr",
            Tok::Absurd => "absurd",
            Tok::Succ => "succ",
            Tok::Rfl => "rfl",
            Tok::Uniq => "uniq",
            Tok::Discr => "discr",
            Tok::Beta => "beta",
            Tok::BetaTy => "beta_ty",
            Tok::BetaPr => "beta_pr",
            Tok::BetaIr => "beta_ir",
            Tok::BetaLeft => "beta_left",
            Tok::BetaRight => "beta_right",
            Tok::BetaZero => "beta_zero",
            Tok::BetaSucc => "beta_succ",
            Tok::BetaPair => "beta_pair",
            Tok::BetaSet => "beta_set",
            Tok::BetaRepr => "beta_repr",
            Tok::EtaTy => "eta_ty",
            Tok::EtaIr => "eta_ir",
            Tok::EtaPr => "eta_pr",
            Tok::IrPr => "ir_pr",
            Tok::IrTy => "ir_ty",
            Tok::Trans => "trans",
            Tok::Top => "top",
            Tok::Bot => "bot",
            Tok::UnitTy => "Unit",
            Tok::NatTy => "Nat",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Lt => "<",
            Tok::Gt => ">",
            Tok::Comma => ",",
            Tok::Dot => ".",
            Tok::Colon => ":",
            Tok::ColonEq => ":=",
            Tok::Equals => "=",
            Tok::FatArrow => "=>",
            Tok::Arrow => "->",
            Tok::Star => "*",
            Tok::PlusSym => "+",
            Tok::Pipe => "|",
            Tok::Backslash => "\\",
            Tok::Backslash2 => "\\\\",
            Tok::AndSym => "/\\",
            Tok::OrSym => "\\/",
            Tok::Ident(_) | Tok::NatLit(_) | Tok::Eof => unreachable!(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn keyword(s: &str) -> Option<Tok> {
    Some(match s {
        "def" => Tok::Def,
        "thm" => Tok::Thm,
        "let" => Tok::Let,
        "in" => Tok::In,
        "forall" => Tok::Forall,
        "exists" => Tok::Exists,
        "cases" => Tok::Cases,
        "cases_or" => Tok::CasesOr,
        "natrec" => Tok::Natrec,
        "ind" => Tok::Ind,
        "subst" => Tok::Subst,
        "inl" => Tok::Inl,
        "inr" => Tok::Inr,
        "orl" => Tok::Orl,
        "orr" => Tok::Orr,
        "absurd" => Tok::Absurd,
        "succ" => Tok::Succ,
        "rfl" => Tok::Rfl,
        "uniq" => Tok::Uniq,
        "discr" => Tok::Discr,
        "beta" => Tok::Beta,
        "beta_ty" => Tok::BetaTy,
        "beta_pr" => Tok::BetaPr,
        "beta_ir" => Tok::BetaIr,
        "beta_left" => Tok::BetaLeft,
        "beta_right" => Tok::BetaRight,
        "beta_zero" => Tok::BetaZero,
        "beta_succ" => Tok::BetaSucc,
        "beta_pair" => Tok::BetaPair,
        "beta_set" => Tok::BetaSet,
        "beta_repr" => Tok::BetaRepr,
        "eta_ty" => Tok::EtaTy,
        "eta_ir" => Tok::EtaIr,
        "eta_pr" => Tok::EtaPr,
        "ir_pr" => Tok::IrPr,
        "ir_ty" => Tok::IrTy,
        "trans" => Tok::Trans,
        "top" => Tok::Top,
        "bot" => Tok::Bot,
        "Unit" => Tok::UnitTy,
        "Nat" => Tok::NatTy,
        _ => return None,
    })
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    line: u32,
    col: u32,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek2(&self) -> Option<u8> {
        self.src.get(self.pos + 1).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn span_from(&self, start: (usize, u32, u32)) -> Span {
        Span::new(start.0, self.pos - start.0, start.1, start.2)
    }

    fn here(&self) -> (usize, u32, u32) {
        (self.pos, self.line, self.col)
    }
}

pub fn lex(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut cur = Cursor {
        src: src.as_bytes(),
        pos: 0,
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    loop {
        // skip whitespace and comments
        loop {
            match cur.peek() {
                Some(c) if c.is_ascii_whitespace() => {
                    cur.bump();
                }
                Some(b'-') if cur.peek2() == Some(b'-') => {
                    while let Some(c) = cur.peek() {
                        if c == b'\n' {
                            break;
                        }
                        cur.bump();
                    }
                }
                Some(b'{') if cur.peek2() == Some(b'-') => {
                    let start = cur.here();
                    cur.bump();
                    cur.bump();
                    let mut depth = 1usize;
                    while depth > 0 {
                        match (cur.peek(), cur.peek2()) {
                            (Some(b'{'), Some(b'-')) => {
                                cur.bump();
                                cur.bump();
                                depth += 1;
                            }
                            (Some(b'-'), Some(b'}')) => {
                                cur.bump();
                                cur.bump();
                                depth -= 1;
                            }
                            (Some(_), _) => {
                                cur.bump();
                            }
                            (None, _) => {
                                return Err(Diagnostic::new("Parse", "unterminated block comment")
                                    .with_span(cur.span_from(start)));
                            }
                        }
                    }
                }
                _ => break,
            }
        }
        let start = cur.here();
        let Some(c) = cur.peek() else {
            out.push(Token {
                tok: Tok::Eof,
                span: cur.span_from(start),
            });
            return Ok(out);
        };
        let tok = match c {
            b'(' => {
                cur.bump();
                Tok::LParen
            }
            b')' => {
                cur.bump();
                Tok::RParen
            }
            b'[' => {
                cur.bump();
                Tok::LBracket
            }
            b']' => {
                cur.bump();
                Tok::RBracket
            }
            b'{' => {
                cur.bump();
                Tok::LBrace
            }
            b'}' => {
                cur.bump();
                Tok::RBrace
            }
            b'<' => {
                cur.bump();
                Tok::Lt
            }
            b'>' => {
                cur.bump();
                Tok::Gt
            }
            b',' => {
                cur.bump();
                Tok::Comma
            }
            b'.' => {
                cur.bump();
                Tok::Dot
            }
            b'*' => {
                cur.bump();
                Tok::Star
            }
            b'+' => {
                cur.bump();
                Tok::PlusSym
            }
            b'|' => {
                cur.bump();
                Tok::Pipe
            }
            b':' => {
                cur.bump();
                if cur.peek() == Some(b'=') {
                    cur.bump();
                    Tok::ColonEq
                } else {
                    Tok::Colon
                }
            }
            b'=' => {
                cur.bump();
                if cur.peek() == Some(b'>') {
                    cur.bump();
                    Tok::FatArrow
                } else {
                    Tok::Equals
                }
            }
            b'-' => {
                cur.bump();
                if cur.peek() == Some(b'>') {
                    cur.bump();
                    Tok::Arrow
                } else {
                    return Err(
                        Diagnostic::new("Parse", "stray `-`").with_span(cur.span_from(start))
                    );
                }
            }
            b'/' => {
                cur.bump();
                if cur.peek() == Some(b'\\') {
                    cur.bump();
                    Tok::AndSym
                } else {
                    return Err(
                        Diagnostic::new("Parse", "stray `/`").with_span(cur.span_from(start))
                    );
                }
            }
            b'\\' => {
                cur.bump();
                match cur.peek() {
                    Some(b'\\') => {
                        cur.bump();
                        Tok::Backslash2
                    }
                    Some(b'/') => {
                        cur.bump();
                        Tok::OrSym
                    }
                    _ => Tok::Backslash,
                }
            }
            b'0'..=b'9' => {
                let mut n: u64 = 0;
                while let Some(d @ b'0'..=b'9') = cur.peek() {
                    cur.bump();
                    n = n
                        .checked_mul(10)
                        .and_then(|n| n.checked_add((d - b'0') as u64))
                        .ok_or_else(|| {
                            Diagnostic::new("Parse", "numeral too large")
                                .with_span(cur.span_from(start))
                        })?;
                }
                Tok::NatLit(n)
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let from = cur.pos;
                while let Some(c) = cur.peek() {
                    if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                        cur.bump();
                    } else {
                        break;
                    }
                }
                let word = std::str::from_utf8(&cur.src[from..cur.pos]).unwrap();
                keyword(word).unwrap_or_else(|| Tok::Ident(word.to_string()))
            }
            other => {
                return Err(Diagnostic::new(
                    "Parse",
                    format!("unexpected character `{}`", other as char),
                )
                .with_span(cur.span_from(start)));
            }
        };
        out.push(Token {
            tok,
            span: cur.span_from(start),
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_tokens() {
        let toks =
            lex("def x : Nat := \\y:Nat. y -- comment\n{- block {- nested -} -} 42").unwrap();
        let kinds: Vec<Tok> = toks.into_iter().map(|t| t.tok).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Def,
                Tok::Ident("x".into()),
                Tok::Colon,
                Tok::NatTy,
                Tok::ColonEq,
                Tok::Backslash,
                Tok::Ident("y".into()),
                Tok::Colon,
                Tok::NatTy,
                Tok::Dot,
                Tok::Ident("y".into()),
                Tok::NatLit(42),
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn operators() {
        let toks = lex(":= => -> /\\ \\/ \\\\ \\ = : | <>").unwrap();
        let kinds: Vec<Tok> = toks.into_iter().map(|t| t.tok).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::ColonEq,
                Tok::FatArrow,
                Tok::Arrow,
                Tok::AndSym,
                Tok::OrSym,
                Tok::Backslash2,
                Tok::Backslash,
                Tok::Equals,
                Tok::Colon,
                Tok::Pipe,
                Tok::Lt,
                Tok::Gt,
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn spans_point_at_columns() {
        let toks = lex("def bad : Nat := (").unwrap();
        let lparen = toks.iter().find(|t| t.tok == Tok::LParen).unwrap();
        assert_eq!(lparen.span.line, 1);
        assert_eq!(lparen.span.col, 18);
    }
}
