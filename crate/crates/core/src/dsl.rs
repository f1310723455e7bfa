//! Line-oriented text formats for algebras, modules and two-term complexes.
//!
//! Shared syntax: `#` starts a comment, blank lines are ignored, the first
//! word of a line is a keyword. Linear combinations look like
//! `alpha*beta - 2 gamma*delta + e(3)`.

use thiserror::Error;

use crate::algebra::{AlgebraError, Arrow, BoundQuiverAlgebra, Path, Quiver, Relation};
use crate::linalg::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

/// A non-empty, comment-stripped line with its 1-based number.
#[derive(Debug, Clone)]
pub struct Line<'a> {
    pub number: usize,
    pub keyword: &'a str,
    /// Text after the keyword.
    pub rest: &'a str,
    /// 1-based column where `rest` starts.
    pub rest_column: usize,
}

impl Line<'_> {
    pub fn error(&self, offset: usize, message: impl Into<String>) -> ParseError {
        ParseError::new(self.number, self.rest_column + offset, message)
    }
}

pub fn lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        };
        let start = content.len() - content.trim_start().len();
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let kw_end = trimmed.find(|c: char| c.is_whitespace() || c == ':' || c == '=').unwrap_or(trimmed.len());
        let keyword = &trimmed[..kw_end];
        let after = &trimmed[kw_end..];
        let rest = after.trim_start();
        let rest_column = start + kw_end + (after.len() - rest.len()) + 1;
        out.push(Line { number: i + 1, keyword, rest, rest_column });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Arrow(usize),
    Idempotent(usize),
}

/// One term `c * f1 * f2 * ...`; an empty factor list means the scalar `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coefficient: i64,
    pub factors: Vec<Factor>,
}

/// Parse a linear combination of words in arrows and `e(v)`.
/// `offset` is the column of `s` inside the line, used for errors.
pub fn parse_combination(
    quiver: &Quiver,
    s: &str,
    line: usize,
    offset: usize,
) -> Result<Vec<Term>, ParseError> {
    let err = |pos: usize, msg: String| ParseError::new(line, offset + pos, msg);
    let mut terms = Vec::new();
    let bytes: Vec<char> = s.chars().collect();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos >= bytes.len() {
        return Err(err(pos, "empty expression".into()));
    }
    let mut first = true;
    while pos < bytes.len() {
        let mut sign = 1i64;
        skip_ws(&mut pos);
        if pos < bytes.len() && (bytes[pos] == '+' || bytes[pos] == '-') {
            if bytes[pos] == '-' {
                sign = -1;
            }
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(err(pos, format!("expected `+` or `-`, found `{}`", bytes[pos])));
        }
        first = false;
        let mut coefficient = 1i64;
        let mut had_number = false;
        if pos < bytes.len() && bytes[pos].is_ascii_digit() {
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let text: String = bytes[start..pos].iter().collect();
            coefficient = text.parse().map_err(|_| err(start, format!("bad integer `{text}`")))?;
            had_number = true;
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == '*' {
                pos += 1;
                skip_ws(&mut pos);
            }
        }
        let mut factors = Vec::new();
        loop {
            if pos >= bytes.len() || bytes[pos] == '+' || bytes[pos] == '-' {
                break;
            }
            let start = pos;
            while pos < bytes.len() && (bytes[pos].is_alphanumeric() || "_'.^".contains(bytes[pos])) {
                pos += 1;
            }
            let name: String = bytes[start..pos].iter().collect();
            if name.is_empty() {
                return Err(err(start, format!("unexpected `{}`", bytes[start])));
            }
            if name == "e" && pos < bytes.len() && bytes[pos] == '(' {
                let close = bytes[pos..]
                    .iter()
                    .position(|&c| c == ')')
                    .ok_or_else(|| err(pos, "missing `)`".into()))?;
                let v: String = bytes[pos + 1..pos + close].iter().collect();
                let v = v.trim();
                let idx = quiver.vertex_index(v).ok_or_else(|| err(pos + 1, format!("unknown vertex `{v}`")))?;
                factors.push(Factor::Idempotent(idx));
                pos += close + 1;
            } else if name.chars().all(|c| c.is_ascii_digit()) {
                return Err(err(start, format!("unexpected number `{name}`")));
            } else {
                let idx = quiver.arrow_index(&name).ok_or_else(|| err(start, format!("unknown arrow `{name}`")))?;
                factors.push(Factor::Arrow(idx));
            }
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == '*' {
                pos += 1;
                skip_ws(&mut pos);
                if pos >= bytes.len() {
                    return Err(err(pos, "dangling `*`".into()));
                }
            } else {
                break;
            }
        }
        if factors.is_empty() && !had_number {
            return Err(err(pos, "expected a term".into()));
        }
        terms.push(Term { coefficient: sign * coefficient, factors });
        skip_ws(&mut pos);
    }
    Ok(terms)
}

/// Evaluate parsed terms in the algebra; a bare scalar is a multiple of 1.
pub fn evaluate_terms(alg: &BoundQuiverAlgebra, terms: &[Term]) -> Vec<u32> {
    let f = alg.field();
    let mut out = vec![0u32; alg.dim()];
    for t in terms {
        let mut x = alg.one();
        for fac in &t.factors {
            let y = match fac {
                Factor::Arrow(a) => alg.arrow_element(*a),
                Factor::Idempotent(v) => alg.vertex_element(*v),
            };
            x = alg.mul(&x, &y);
        }
        f.axpy(&mut out, f.from_i64(t.coefficient), &x);
    }
    out
}

pub fn parse_element(alg: &BoundQuiverAlgebra, s: &str) -> Result<Vec<u32>, ParseError> {
    let terms = parse_combination(alg.quiver(), s, 1, 1)?;
    Ok(evaluate_terms(alg, &terms))
}

/// Parse a `[[..],[..]]` literal into rows of raw entry strings with columns.
pub fn parse_matrix_literal(
    s: &str,
    line: usize,
    offset: usize,
) -> Result<Vec<Vec<(String, usize)>>, ParseError> {
    let err = |pos: usize, msg: &str| ParseError::new(line, offset + pos, msg.to_string());
    let chars: Vec<char> = s.chars().collect();
    let mut pos = 0;
    let ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    ws(&mut pos);
    if pos >= chars.len() || chars[pos] != '[' {
        return Err(err(pos, "expected `[`"));
    }
    pos += 1;
    let mut rows = Vec::new();
    ws(&mut pos);
    if pos < chars.len() && chars[pos] == ']' {
        pos += 1;
    } else {
        loop {
            ws(&mut pos);
            if pos >= chars.len() || chars[pos] != '[' {
                return Err(err(pos, "expected `[` starting a row"));
            }
            pos += 1;
            let mut row = Vec::new();
            ws(&mut pos);
            if pos < chars.len() && chars[pos] == ']' {
                pos += 1;
            } else {
                loop {
                    let start = pos;
                    let mut depth = 0;
                    while pos < chars.len() {
                        match chars[pos] {
                            '(' => depth += 1,
                            ')' => depth -= 1,
                            ',' | ']' if depth == 0 => break,
                            _ => {}
                        }
                        pos += 1;
                    }
                    if pos >= chars.len() {
                        return Err(err(pos, "unterminated row"));
                    }
                    let raw: String = chars[start..pos].iter().collect();
                    let lead = raw.len() - raw.trim_start().len();
                    if raw.trim().is_empty() {
                        return Err(err(start, "empty matrix entry"));
                    }
                    row.push((raw.trim().to_string(), offset + start + lead));
                    let c = chars[pos];
                    pos += 1;
                    if c == ']' {
                        break;
                    }
                }
            }
            rows.push(row);
            ws(&mut pos);
            if pos < chars.len() && chars[pos] == ',' {
                pos += 1;
                continue;
            }
            if pos < chars.len() && chars[pos] == ']' {
                pos += 1;
                break;
            }
            return Err(err(pos, "expected `,` or `]`"));
        }
    }
    ws(&mut pos);
    if pos < chars.len() {
        return Err(err(pos, "trailing characters after matrix"));
    }
    Ok(rows)
}

/// Parse an algebra description; `field_override` replaces any `field` line.
pub fn parse_algebra(text: &str, field_override: Option<Field>) -> Result<BoundQuiverAlgebra, ParseError> {
    let mut name = None;
    let mut field = None;
    let mut vertices: Option<Vec<String>> = None;
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut relation_lines = Vec::new();
    let ls = lines(text);
    for l in &ls {
        match l.keyword {
            "algebra" => {
                if l.rest.is_empty() || l.rest.split_whitespace().count() != 1 {
                    return Err(l.error(0, "expected a single algebra name"));
                }
                name = Some(l.rest.to_string());
            }
            "field" => {
                let p: u32 = l.rest.parse().map_err(|_| l.error(0, format!("bad field `{}`", l.rest)))?;
                field = Some(Field::new(p).map_err(|e| l.error(0, e.to_string()))?);
            }
            "vertices" => {
                if vertices.is_some() {
                    return Err(l.error(0, "duplicate `vertices` line"));
                }
                let vs: Vec<String> = l.rest.split_whitespace().map(String::from).collect();
                if vs.is_empty() {
                    return Err(l.error(0, "no vertices given"));
                }
                let mut seen = std::collections::HashSet::new();
                for v in &vs {
                    if !seen.insert(v) {
                        return Err(l.error(0, format!("duplicate vertex `{v}`")));
                    }
                }
                vertices = Some(vs);
            }
            "arrow" => {
                let vs = vertices.as_ref().ok_or_else(|| l.error(0, "`arrow` before `vertices`"))?;
                let colon = l.rest.find(':').ok_or_else(|| l.error(0, "expected `name : source -> target`"))?;
                let aname = l.rest[..colon].trim();
                if aname.is_empty() || !aname.chars().all(|c| c.is_alphanumeric() || "_'.^".contains(c)) {
                    return Err(l.error(0, format!("bad arrow name `{aname}`")));
                }
                if aname.chars().all(|c| c.is_ascii_digit()) || aname == "e" {
                    return Err(l.error(0, format!("reserved arrow name `{aname}`")));
                }
                let ends = &l.rest[colon + 1..];
                let arrow_pos = ends.find("->").ok_or_else(|| l.error(colon + 1, "expected `->`"))?;
                let s = ends[..arrow_pos].trim();
                let t = ends[arrow_pos + 2..].trim();
                let si = vs
                    .iter()
                    .position(|v| v == s)
                    .ok_or_else(|| l.error(colon + 1, format!("unknown vertex `{s}`")))?;
                let ti = vs
                    .iter()
                    .position(|v| v == t)
                    .ok_or_else(|| l.error(colon + 1 + arrow_pos + 2, format!("unknown vertex `{t}`")))?;
                if arrows.iter().any(|a| a.name == aname) {
                    return Err(l.error(0, format!("duplicate arrow `{aname}`")));
                }
                arrows.push(Arrow { name: aname.to_string(), source: si, target: ti });
            }
            "relation" => relation_lines.push(l.clone()),
            other => {
                return Err(ParseError::new(l.number, l.rest_column.saturating_sub(other.len() + 1).max(1), format!("unknown keyword `{other}`")))
            }
        }
    }
    let vertices = vertices.ok_or_else(|| ParseError::new(ls.last().map_or(1, |l| l.number), 1, "missing `vertices` line"))?;
    let field = field_override.or(field).unwrap_or_default();
    let quiver = Quiver::new(vertices, arrows).map_err(|e| ParseError::new(1, 1, e.to_string()))?;
    let mut relations = Vec::new();
    for l in &relation_lines {
        let terms = parse_combination(&quiver, l.rest, l.number, l.rest_column)?;
        let mut rel = Vec::new();
        let mut ends: Option<(usize, usize)> = None;
        for t in &terms {
            let mut arrows = Vec::new();
            for fac in &t.factors {
                match fac {
                    Factor::Arrow(a) => arrows.push(*a),
                    Factor::Idempotent(_) => return Err(l.error(0, "idempotents are not allowed in relations")),
                }
            }
            if arrows.len() < 2 {
                return Err(l.error(0, "relation paths must have length at least 2"));
            }
            let p: Path = quiver.path(&arrows).ok_or_else(|| l.error(0, "arrows in a relation term do not compose"))?;
            match ends {
                None => ends = Some((p.source, p.target)),
                Some(e) if e != (p.source, p.target) => return Err(l.error(0, "relation terms are not parallel paths")),
                _ => {}
            }
            rel.push((field.from_i64(t.coefficient), arrows));
        }
        relations.push(Relation { terms: rel });
    }
    let name = name.unwrap_or_else(|| "A".to_string());
    BoundQuiverAlgebra::new(name, field, quiver, relations).map_err(|e| {
        let line = match &e {
            AlgebraError::BadRelation(i, _) => relation_lines.get(*i).map_or(1, |l| l.number),
            _ => 1,
        };
        ParseError::new(line, 1, e.to_string())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const A3: &str = "field 2\nvertices 1 2 3\narrow a : 3 -> 2\narrow b : 2 -> 1\n";

    #[test]
    fn parses_linear_quiver() {
        let alg = parse_algebra(A3, None).unwrap();
        assert_eq!(alg.dim(), 6);
        assert_eq!(alg.field().p(), 2);
        assert_eq!(alg.num_vertices(), 3);
    }

    #[test]
    fn field_override_wins() {
        let alg = parse_algebra(A3, Some(Field::new(5).unwrap())).unwrap();
        assert_eq!(alg.field().p(), 5);
    }

    #[test]
    fn unknown_arrow_reports_position() {
        let text = "vertices 1 2 3\narrow a : 3 -> 2\narrow b : 2 -> 1\nrelation a*c\n";
        let e = parse_algebra(text, None).unwrap_err();
        assert_eq!(e.line, 4);
        assert_eq!(e.column, 12);
        assert!(e.message.contains("unknown arrow `c`"));
    }

    #[test]
    fn non_parallel_relation_rejected() {
        let text = "vertices 1 2 3 4\narrow a : 1 -> 2\narrow b : 2 -> 3\narrow c : 2 -> 4\nrelation a*b + a*c\n";
        let e = parse_algebra(text, None).unwrap_err();
        assert_eq!(e.line, 5);
        assert!(e.message.contains("parallel"));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a comment\n\nvertices 1 2   # trailing\narrow x : 1 -> 2\n";
        assert_eq!(parse_algebra(text, None).unwrap().dim(), 3);
    }

    #[test]
    fn bad_keyword() {
        let e = parse_algebra("vertices 1\nfoo bar\n", None).unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn combination_with_coefficients() {
        let alg = parse_algebra("field 3\nvertices 1 2 3 4\narrow a : 4 -> 2\narrow b : 2 -> 1\narrow c : 4 -> 3\narrow d : 3 -> 1\n", None).unwrap();
        let x = parse_element(&alg, "2 a*b - c*d + e(1)").unwrap();
        let y = parse_element(&alg, "2*a*b + 2 c*d + e(1)").unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn matrix_literal() {
        let rows = parse_matrix_literal("[[b,0,0],[0,a*b,0]]", 1, 1).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1][1].0, "a*b");
        assert_eq!(parse_matrix_literal("[[],[]]", 1, 1).unwrap(), vec![vec![], vec![]]);
        assert_eq!(parse_matrix_literal("[]", 1, 1).unwrap().len(), 0);
        assert!(parse_matrix_literal("[[1,2]", 1, 1).is_err());
    }
}
