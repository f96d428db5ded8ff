//! Line-oriented text format for presentations.
//!
//! ```text
//! # comment
//! vertices: 1 2 3
//! arrow: alpha 1 2
//! arrow: beta 2 3
//! relation: alpha beta
//! field: Q
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{is_identifier, Presentation, PresentationError};
use crate::linalg::Field;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: {error}")]
    Invalid { line: usize, column: usize, error: PresentationError },
    #[error("{0}")]
    Structure(PresentationError),
}

#[derive(Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn invalid(self, error: PresentationError) -> ParseError {
        ParseError::Invalid { line: self.line, column: self.column, error }
    }

    fn syntax(self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { line: self.line, column: self.column, message: message.into() }
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(text: &str, offset: usize) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((&text[s..i], offset + s + 1));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((&text[s..], offset + s + 1));
    }
    out
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut vertices: Vec<(String, Pos)> = Vec::new();
    let mut arrows: Vec<[(String, Pos); 3]> = Vec::new();
    let mut relations: Vec<[(String, Pos); 2]> = Vec::new();
    let mut field: Option<Field> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        let Some(colon) = content.find(':') else {
            return Err(Pos { line, column: lead + 1 }.syntax("expected `<keyword>: ...`"));
        };
        let keyword = content[..colon].trim();
        let args = tokens(&content[colon + 1..], colon + 1);
        let at = |column| Pos { line, column };
        let key_pos = at(lead + 1);
        let end_pos = at(content.trim_end().len() + 1);

        for &(tok, col) in &args {
            if keyword != "field" && !is_identifier(tok) {
                return Err(at(col).syntax(format!("invalid identifier `{tok}`")));
            }
        }
        let take = |n: usize| -> Result<Vec<(String, Pos)>, ParseError> {
            if args.len() != n {
                let pos = args.get(n).map_or(end_pos, |&(_, c)| at(c));
                return Err(pos.syntax(format!("`{keyword}` expects {n} argument(s), found {}", args.len())));
            }
            Ok(args.iter().map(|&(t, c)| (t.to_string(), at(c))).collect())
        };
        match keyword {
            "vertices" => {
                if args.is_empty() {
                    return Err(end_pos.syntax("`vertices` expects at least one vertex"));
                }
                vertices.extend(args.iter().map(|&(t, c)| (t.to_string(), at(c))));
            }
            "arrow" => {
                let v = take(3)?;
                arrows.push([v[0].clone(), v[1].clone(), v[2].clone()]);
            }
            "relation" => {
                let v = take(2)?;
                relations.push([v[0].clone(), v[1].clone()]);
            }
            "field" => {
                let v = take(1)?;
                if field.is_some() {
                    return Err(key_pos.syntax("`field` given twice"));
                }
                field = Some(v[0].0.parse().map_err(|e: crate::linalg::FieldError| v[0].1.syntax(e.to_string()))?);
            }
            other => return Err(key_pos.syntax(format!("unknown keyword `{other}`"))),
        }
    }

    // Validate references here so errors carry the offending token's position.
    let mut vertex_ids: HashMap<&str, ()> = HashMap::new();
    for (name, pos) in &vertices {
        if vertex_ids.insert(name, ()).is_some() {
            return Err(pos.invalid(PresentationError::DuplicateVertex(name.clone())));
        }
    }
    let mut arrow_ends: HashMap<&str, (&str, &str)> = HashMap::new();
    for [(name, npos), (s, spos), (t, tpos)] in &arrows {
        for (v, p) in [(s, spos), (t, tpos)] {
            if !vertex_ids.contains_key(v.as_str()) {
                return Err(p.invalid(PresentationError::UnknownVertex(v.clone())));
            }
        }
        if arrow_ends.insert(name, (s, t)).is_some() {
            return Err(npos.invalid(PresentationError::DuplicateArrow(name.clone())));
        }
    }
    let mut seen_rel = HashMap::new();
    for [(a, apos), (b, bpos)] in &relations {
        let Some(&(_, a_end)) = arrow_ends.get(a.as_str()) else {
            return Err(apos.invalid(PresentationError::UnknownArrow(a.clone())));
        };
        let Some(&(b_start, _)) = arrow_ends.get(b.as_str()) else {
            return Err(bpos.invalid(PresentationError::UnknownArrow(b.clone())));
        };
        if a_end != b_start {
            return Err(apos.invalid(PresentationError::NonComposable {
                first: a.clone(),
                second: b.clone(),
                end: a_end.to_string(),
                start: b_start.to_string(),
            }));
        }
        if seen_rel.insert((a.as_str(), b.as_str()), ()).is_some() {
            return Err(apos.invalid(PresentationError::DuplicateRelation(a.clone(), b.clone())));
        }
    }

    let v: Vec<&str> = vertices.iter().map(|(n, _)| n.as_str()).collect();
    let a: Vec<(&str, &str, &str)> =
        arrows.iter().map(|[n, s, t]| (n.0.as_str(), s.0.as_str(), t.0.as_str())).collect();
    let r: Vec<(&str, &str)> = relations.iter().map(|[x, y]| (x.0.as_str(), y.0.as_str())).collect();
    Presentation::from_names(&v, &a, &r, field.unwrap_or_default()).map_err(ParseError::Structure)
}

/// Canonical text form: vertices in topological order, arrows in declaration
/// order, relations sorted by arrow index. Re-parsing yields an equal value.
pub fn emit_presentation(p: &Presentation) -> String {
    let q = p.quiver();
    let mut out = String::new();
    let names: Vec<&str> = q.vertices().map(|v| q.vertex_name(v)).collect();
    let _ = writeln!(out, "vertices: {}", names.join(" "));
    for a in q.arrows() {
        let _ = writeln!(out, "arrow: {} {} {}", a.name, q.vertex_name(a.source), q.vertex_name(a.target));
    }
    for &(a, b) in p.relations() {
        let _ = writeln!(out, "relation: {} {}", q.arrow(a).name, q.arrow(b).name);
    }
    if p.field() != Field::Rational {
        let _ = writeln!(out, "field: {}", p.field());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parses_e5() {
        let p = fixtures::e5();
        assert_eq!(p.quiver().vertex_count(), 5);
        assert_eq!(p.quiver().arrow_count(), 6);
        assert_eq!(p.relations().len(), 5);
        assert_eq!(p.field(), Field::Rational);
    }

    #[test]
    fn parses_relation_free_quiver() {
        let p = parse_presentation("vertices: 1 2\narrow: a 1 2\n").unwrap();
        assert!(p.relations().is_empty());
        assert_eq!(p.quiver().arrow_count(), 1);
    }

    #[test]
    fn rejects_non_composable_relation() {
        let err = parse_presentation("vertices: 1 2\narrow: a 1 2\nrelation: a a\n").unwrap_err();
        match err {
            ParseError::Invalid { line: 3, column: 11, error: PresentationError::NonComposable { .. } } => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reports_positions() {
        let err = parse_presentation("vertices: 1 2\narrow: a 1 9\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::Invalid { line: 2, column: 12, error: PresentationError::UnknownVertex("9".into()) }
        );
        let err = parse_presentation("vertices: 1 2\narrow a 1 2\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, column: 1, .. }));
        let err = parse_presentation("vertices: 1 2\narrow: a 1\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }));
        let err = parse_presentation("vertices: 1 1\n").unwrap_err();
        assert!(matches!(err, ParseError::Invalid { line: 1, column: 13, .. }));
        let err = parse_presentation("vertices: 1 2\narrow: a 1 2\narrow: a 2 1\n").unwrap_err();
        assert!(matches!(err, ParseError::Invalid { line: 3, error: PresentationError::DuplicateArrow(_), .. }));
        let err = parse_presentation("vertices: 1\nrelation: x y\n").unwrap_err();
        assert!(matches!(err, ParseError::Invalid { line: 2, error: PresentationError::UnknownArrow(_), .. }));
    }

    #[test]
    fn rejects_cycles() {
        let err = parse_presentation("vertices: 1 2\narrow: a 1 2\narrow: b 2 1\n").unwrap_err();
        assert!(matches!(err, ParseError::Structure(PresentationError::Cyclic(_))));
    }

    #[test]
    fn field_line() {
        let p = parse_presentation("vertices: 1\nfield: F5 # comment\n").unwrap();
        assert_eq!(p.field(), Field::Prime(5));
        assert!(parse_presentation("vertices: 1\nfield: F4\n").is_err());
        assert!(parse_presentation("vertices: 1\nfield: Q\nfield: Q\n").is_err());
    }

    #[test]
    fn emit_then_parse_is_identity_on_fixtures() {
        for (_, p) in fixtures::all() {
            let again = parse_presentation(&emit_presentation(&p)).unwrap();
            assert_eq!(again, p);
        }
        let p = fixtures::d3().with_field(Field::Prime(3));
        assert_eq!(parse_presentation(&emit_presentation(&p)).unwrap(), p);
    }
}
