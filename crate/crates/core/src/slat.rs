//! The `.slat` text format.
//!
//! ```text
//! # comments run to end of line
//! n 5
//! elements 0 a b c 1      # optional
//! join                    # then n rows of n entries ...
//! 0 1 2 3 4
//! ...
//! ```
//!
//! or, instead of `join`, any number of `cover i j` lines (`i` is covered by
//! `j`). Entries may be indices or element names. [`emit_slat`] always writes
//! the join-table form with indices.

use thiserror::Error;

use crate::semilattice::{validate_semilattice, Semilattice, SemilatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("elements {x} and {y} have no least upper bound")]
    NoJoinExists { x: usize, y: usize },
    #[error(transparent)]
    Validation(SemilatticeError),
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn syntax(tok: &Token<'_>, message: impl Into<String>) -> SlatError {
    SlatError::Syntax { line: tok.line, column: tok.column, message: message.into() }
}

fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut rest = content;
        let mut offset = 0;
        while let Some(start) = rest.find(|ch: char| !ch.is_whitespace()) {
            let len = rest[start..].find(char::is_whitespace).unwrap_or(rest.len() - start);
            tokens.push(Token { text: &rest[start..start + len], line: i + 1, column: offset + start + 1 });
            offset += start + len;
            rest = &rest[start + len..];
        }
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    lines
}

pub fn parse_slat(text: &str) -> Result<Semilattice, SlatError> {
    let lines = tokenize(text);
    let mut lines = lines.iter();
    let header = lines.next().ok_or(SlatError::Syntax {
        line: 1,
        column: 1,
        message: "missing header `n <count>`".into(),
    })?;
    if header[0].text != "n" || header.len() != 2 {
        return Err(syntax(&header[0], "expected header `n <count>`"));
    }
    let n: usize = header[1]
        .text
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| syntax(&header[1], "element count must be a positive integer"))?;

    let mut names: Option<Vec<String>> = None;
    let mut rest: Vec<&Vec<Token<'_>>> = lines.collect();
    if let Some(first) = rest.first() {
        if first[0].text == "elements" {
            if first.len() != n + 1 {
                return Err(syntax(&first[0], format!("expected {n} element names, found {}", first.len() - 1)));
            }
            let list: Vec<String> = first[1..].iter().map(|t| t.text.to_string()).collect();
            for (i, tok) in first[1..].iter().enumerate() {
                if list[..i].contains(&list[i]) {
                    return Err(syntax(tok, format!("duplicate element name {:?}", tok.text)));
                }
            }
            names = Some(list);
            rest.remove(0);
        }
    }
    let resolve = |tok: &Token<'_>| -> Result<usize, SlatError> {
        if let Some(names) = &names {
            if let Some(i) = names.iter().position(|s| s == tok.text) {
                return Ok(i);
            }
        }
        tok.text
            .parse::<usize>()
            .ok()
            .filter(|&i| i < n)
            .ok_or_else(|| syntax(tok, format!("{:?} is not an element", tok.text)))
    };

    match rest.first() {
        Some(line) if line[0].text == "join" => {
            if line.len() != 1 {
                return Err(syntax(&line[1], "unexpected token after `join`"));
            }
            let rows = &rest[1..];
            if rows.len() != n {
                let at = rows.get(n).map_or(&line[0], |r| &r[0]);
                return Err(syntax(at, format!("expected {n} table rows, found {}", rows.len())));
            }
            let mut table = Vec::with_capacity(n);
            for row in rows {
                if row.len() != n {
                    return Err(syntax(&row[0], format!("expected {n} entries, found {}", row.len())));
                }
                table.push(row.iter().map(&resolve).collect::<Result<Vec<_>, _>>()?);
            }
            validate_semilattice(&table, names).map_err(SlatError::Validation)
        }
        _ => {
            let mut above = vec![false; n * n];
            for line in &rest {
                if line[0].text != "cover" || line.len() != 3 {
                    return Err(syntax(&line[0], "expected `cover <i> <j>`"));
                }
                let (i, j) = (resolve(&line[1])?, resolve(&line[2])?);
                above[i * n + j] = true;
            }
            let le = reflexive_transitive_closure(n, &above);
            Semilattice::from_order(n, |x, y| le[x * n + y], names).map_err(|e| match e {
                SemilatticeError::NoJoinExists { x, y } => SlatError::NoJoinExists { x, y },
                other => SlatError::Validation(other),
            })
        }
    }
}

fn reflexive_transitive_closure(n: usize, edges: &[bool]) -> Vec<bool> {
    let mut le = edges.to_vec();
    for x in 0..n {
        le[x * n + x] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if le[i * n + k] {
                for j in 0..n {
                    if le[k * n + j] {
                        le[i * n + j] = true;
                    }
                }
            }
        }
    }
    le
}

pub fn emit_slat(a: &Semilattice) -> String {
    let mut out = format!("n {}\n", a.size());
    if let Some(names) = a.names() {
        out.push_str("elements ");
        out.push_str(&names.join(" "));
        out.push('\n');
    }
    out.push_str("join\n");
    for row in a.rows() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::isomorphism_check;
    use crate::semilattice::fixtures::n5;

    #[test]
    fn join_table_form() {
        let a = parse_slat("n 2\njoin\n0 1\n1 1\n").unwrap();
        assert_eq!(a, Semilattice::chain(2));
    }

    #[test]
    fn cover_form_gives_n5() {
        let text = "n 5\ncover 0 1\ncover 0 2\ncover 2 3\ncover 1 4\ncover 3 4\n";
        let a = parse_slat(text).unwrap();
        assert_eq!(a, n5());
        let b = parse_slat(&emit_slat(&a)).unwrap();
        assert!(isomorphism_check(&a, &b).is_some());
    }

    #[test]
    fn missing_join_is_reported() {
        let err = parse_slat("n 4\ncover 0 2\ncover 1 2\ncover 0 3\n").unwrap_err();
        assert!(matches!(err, SlatError::NoJoinExists { .. }));
    }

    #[test]
    fn names_and_comments() {
        let text = "# pentagon\nn 5\nelements z a b c t\ncover z a # left\ncover z b\ncover b c\ncover a t\ncover c t\n";
        let a = parse_slat(text).unwrap();
        assert_eq!(a.rows(), n5().rows());
        assert_eq!(a.label(3), "c");
        let emitted = emit_slat(&a);
        assert!(emitted.starts_with("n 5\nelements z a b c t\njoin\n"));
        assert_eq!(emit_slat(&parse_slat(&emitted).unwrap()), emitted);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(parse_slat(""), Err(SlatError::Syntax { line: 1, .. })));
        assert_eq!(
            parse_slat("n 2\njoin\n0 1\n1 x\n").unwrap_err(),
            SlatError::Syntax { line: 4, column: 3, message: "\"x\" is not an element".into() }
        );
        assert!(matches!(parse_slat("n 2\njoin\n0 1\n"), Err(SlatError::Syntax { .. })));
        assert!(matches!(parse_slat("n 2\ncover 0 1\njoin\n"), Err(SlatError::Syntax { line: 3, .. })));
        assert!(matches!(
            parse_slat("n 2\njoin\n0 0\n1 1\n"),
            Err(SlatError::Validation(SemilatticeError::CommutativityViolation { .. }))
        ));
        assert!(matches!(
            parse_slat("n 2\ncover 0 1\ncover 1 0\n"),
            Err(SlatError::Validation(SemilatticeError::NotAPartialOrder { .. }))
        ));
    }
}
