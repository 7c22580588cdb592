//! Line-oriented structured output records, one per diagnostic or
//! verdict. The format round-trips: `parse_line(record.to_line())`
//! yields the record back.

use crate::diag::Diagnostic;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Record {
    Diag {
        file: String,
        line: u32,
        col: u32,
        rule: String,
        message: String,
        expected: String,
        found: String,
    },
    Decl {
        file: String,
        name: String,
        ok: bool,
    },
    Verdict {
        file: String,
        name: String,
        check: String,
        result: String,
        witness: String,
    },
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\")
        .replace('\t', "\\t")
        .replace('\n', "\\n")
}

fn unescape(s: &str) -> String {
    let mut out = String::new();
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            match chars.next() {
                Some('t') => out.push('\t'),
                Some('n') => out.push('\n'),
                Some('\\') => out.push('\\'),
                Some(other) => {
                    out.push('\\');
                    out.push(other);
                }
                None => out.push('\\'),
            }
        } else {
            out.push(c);
        }
    }
    out
}

impl Record {
    pub fn from_diag(d: &Diagnostic) -> Record {
        Record::Diag {
            file: d.file.clone().unwrap_or_default(),
            line: d.span.map(|s| s.line).unwrap_or(0),
            col: d.span.map(|s| s.col).unwrap_or(0),
            rule: d.rule.to_string(),
            message: d.message.clone(),
            expected: d.expected.clone().unwrap_or_default(),
            found: d.found.clone().unwrap_or_default(),
        }
    }

    pub fn to_line(&self) -> String {
        match self {
            Record::Diag {
                file,
                line,
                col,
                rule,
                message,
                expected,
                found,
            } => format!(
                "DIAG\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                escape(file),
                line,
                col,
                escape(rule),
                escape(message),
                escape(expected),
                escape(found),
            ),
            Record::Decl { file, name, ok } => format!(
                "DECL\t{}\t{}\t{}",
                escape(file),
                escape(name),
                if *ok { "ok" } else { "fail" },
            ),
            Record::Verdict {
                file,
                name,
                check,
                result,
                witness,
            } => format!(
                "VERDICT\t{}\t{}\t{}\t{}\t{}",
                escape(file),
                escape(name),
                escape(check),
                escape(result),
                escape(witness),
            ),
        }
    }

    pub fn parse_line(line: &str) -> Option<Record> {
        let fields: Vec<&str> = line.split('\t').collect();
        match fields.as_slice() {
            ["DIAG", file, line, col, rule, message, expected, found] => Some(Record::Diag {
                file: unescape(file),
                line: line.parse().ok()?,
                col: col.parse().ok()?,
                rule: unescape(rule),
                message: unescape(message),
                expected: unescape(expected),
                found: unescape(found),
            }),
            ["DECL", file, name, status] => Some(Record::Decl {
                file: unescape(file),
                name: unescape(name),
                ok: match *status {
                    "ok" => true,
                    "fail" => false,
                    _ => return None,
                },
            }),
            ["VERDICT", file, name, check, result, witness] => Some(Record::Verdict {
                file: unescape(file),
                name: unescape(name),
                check: unescape(check),
                result: unescape(result),
                witness: unescape(witness),
            }),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let records = vec![
            Record::Diag {
                file: "a.ert".into(),
                line: 3,
                col: 14,
                rule: "β_succ".into(),
                message: "odd\tmessage\nwith breaks".into(),
                expected: "Nat".into(),
                found: "Unit".into(),
            },
            Record::Decl {
                file: "a.ert".into(),
                name: "add".into(),
                ok: true,
            },
            Record::Verdict {
                file: "a.ert".into(),
                name: "add_comm".into(),
                check: "consistency".into(),
                result: "holds".into(),
                witness: String::new(),
            },
        ];
        for r in records {
            assert_eq!(Record::parse_line(&r.to_line()), Some(r));
        }
    }
}
