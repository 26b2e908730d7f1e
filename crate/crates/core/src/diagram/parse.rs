//! Text format for diagrams.
//!
//! Statements are separated by newlines or `;`, and `#` starts a comment.
//!
//! ```text
//! surface torus
//! crossing c1: ports a,b,c,d
//! arc a: counters (1,0)
//! loop: counters (0,1)
//! ```
//!
//! `disk`, `annulus` and `torus` alone also declare the surface. `X[a,b,c,d]`
//! adds a crossing with an automatic id. `curve (p,q) x<m>` and `core x<n>`
//! add crossing-free components.

use super::{DiagramBuilder, Diagram, DiagramError, Multicurve, SurfaceKind};

fn syntax(line: usize, message: impl Into<String>) -> DiagramError {
    DiagramError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_int_list(line: usize, body: &str) -> Result<Vec<i64>, DiagramError> {
    let inner = body
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| syntax(line, format!("expected a parenthesized list, found `{body}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| syntax(line, format!("`{}` is not an integer", s.trim())))
        })
        .collect()
}

fn parse_multiplicity(line: usize, s: Option<&str>) -> Result<u32, DiagramError> {
    match s {
        None => Ok(1),
        Some(t) => t
            .strip_prefix('x')
            .and_then(|n| n.parse::<u32>().ok())
            .ok_or_else(|| syntax(line, format!("expected a multiplicity like `x2`, found `{t}`"))),
    }
}

fn split_labels(line: usize, body: &str) -> Result<[String; 4], DiagramError> {
    let labels: Vec<String> = body.split(',').map(|s| s.trim().to_string()).collect();
    if labels.len() != 4 || labels.iter().any(|l| l.is_empty()) {
        return Err(syntax(line, format!("a crossing needs four arc labels, found `{body}`")));
    }
    Ok([labels[0].clone(), labels[1].clone(), labels[2].clone(), labels[3].clone()])
}

enum Statement {
    Crossing(Option<String>, [String; 4]),
    Arc(String, Vec<i64>),
    Loop(Vec<i64>),
    Curve(i64, i64, u32),
    Core(u32),
}

/// Parses a diagram. Statements the grammar does not know are passed to
/// `extra` with their line number; it returns `Ok(false)` to reject them.
pub fn parse_diagram_with(
    text: &str,
    mut extra: impl FnMut(usize, &str) -> Result<bool, DiagramError>,
) -> Result<Diagram, DiagramError> {
    let mut surface: Option<SurfaceKind> = None;
    let mut statements = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("");
        for stmt in content.split(';') {
            let stmt = stmt.trim();
            if stmt.is_empty() {
                continue;
            }
            let (head, rest) = match stmt.find(|c: char| c.is_whitespace() || c == ':' || c == '[') {
                Some(i) => (&stmt[..i], stmt[i..].trim_start()),
                None => (stmt, ""),
            };
            match head {
                "surface" | "disk" | "annulus" | "torus" => {
                    let word = if head == "surface" { rest } else { head };
                    if head != "surface" && !rest.is_empty() {
                        return Err(syntax(line, format!("unexpected `{rest}` after surface")));
                    }
                    let s: SurfaceKind = word.parse()?;
                    if surface.is_some_and(|old| old != s) {
                        return Err(syntax(line, "surface declared twice"));
                    }
                    surface = Some(s);
                }
                "crossing" => {
                    let (id, body) = rest
                        .split_once(':')
                        .ok_or_else(|| syntax(line, "expected `crossing <id>: ports a,b,c,d`"))?;
                    let body = body
                        .trim()
                        .strip_prefix("ports")
                        .ok_or_else(|| syntax(line, "expected `ports` after the crossing id"))?;
                    let id = id.trim();
                    if id.is_empty() {
                        return Err(syntax(line, "missing crossing id"));
                    }
                    statements.push((line, Statement::Crossing(Some(id.to_string()), split_labels(line, body)?)));
                }
                "X" => {
                    let body = rest
                        .strip_prefix('[')
                        .and_then(|s| s.strip_suffix(']'))
                        .ok_or_else(|| syntax(line, "expected `X[a,b,c,d]`"))?;
                    statements.push((line, Statement::Crossing(None, split_labels(line, body)?)));
                }
                "arc" => {
                    let (label, body) = rest
                        .split_once(':')
                        .ok_or_else(|| syntax(line, "expected `arc <label>: counters (...)`"))?;
                    let body = body
                        .trim()
                        .strip_prefix("counters")
                        .ok_or_else(|| syntax(line, "expected `counters` after the arc label"))?;
                    statements.push((line, Statement::Arc(label.trim().to_string(), parse_int_list(line, body)?)));
                }
                "loop" => {
                    let body = rest
                        .strip_prefix(':')
                        .map(str::trim)
                        .and_then(|s| s.strip_prefix("counters"))
                        .ok_or_else(|| syntax(line, "expected `loop: counters (...)`"))?;
                    statements.push((line, Statement::Loop(parse_int_list(line, body)?)));
                }
                "curve" => {
                    let close = rest.find(')').ok_or_else(|| syntax(line, "expected `curve (p,q) x<m>`"))?;
                    let pq = parse_int_list(line, &rest[..=close])?;
                    if pq.len() != 2 {
                        return Err(syntax(line, "a curve class has two entries"));
                    }
                    let mut tail = rest[close + 1..].split_whitespace();
                    let m = parse_multiplicity(line, tail.next())?;
                    if let Some(t) = tail.next() {
                        return Err(syntax(line, format!("unexpected `{t}`")));
                    }
                    statements.push((line, Statement::Curve(pq[0], pq[1], m)));
                }
                "core" => {
                    let mut tail = rest.split_whitespace();
                    let m = parse_multiplicity(line, tail.next())?;
                    if let Some(t) = tail.next() {
                        return Err(syntax(line, format!("unexpected `{t}`")));
                    }
                    statements.push((line, Statement::Core(m)));
                }
                _ => {
                    if !extra(line, stmt)? {
                        return Err(syntax(line, format!("unrecognized statement `{stmt}`")));
                    }
                }
            }
        }
    }

    let surface = surface.ok_or(DiagramError::MissingSurface)?;
    let mut builder = DiagramBuilder::new(surface);
    let mut names: Vec<String> = statements
        .iter()
        .filter_map(|(_, s)| match s {
            Statement::Crossing(Some(id), _) => Some(id.clone()),
            _ => None,
        })
        .collect();
    let mut seen = std::collections::HashSet::new();
    for n in &names {
        if !seen.insert(n.clone()) {
            return Err(DiagramError::DuplicateCrossing(n.clone()));
        }
    }
    let mut auto = 0;
    let with_line = |line: usize, e: DiagramError| match e {
        DiagramError::Syntax { .. } => e,
        other => syntax(line, other.to_string()),
    };
    for (line, s) in statements {
        match s {
            Statement::Crossing(id, labels) => {
                let id = id.unwrap_or_else(|| loop {
                    auto += 1;
                    let candidate = format!("X{auto}");
                    if !names.contains(&candidate) {
                        names.push(candidate.clone());
                        break candidate;
                    }
                });
                builder.crossing(id, [&labels[0], &labels[1], &labels[2], &labels[3]].map(String::as_str));
            }
            Statement::Arc(label, c) => {
                builder.arc_counters(label, &c).map_err(|e| with_line(line, e))?;
            }
            Statement::Loop(c) => {
                builder.free_loop(&c).map_err(|e| with_line(line, e))?;
            }
            Statement::Curve(p, q, m) => {
                if surface != SurfaceKind::Torus {
                    return Err(syntax(line, format!("`curve` needs the torus, not the {surface}")));
                }
                let mc = Multicurve::torus(p, q, m).map_err(|e| with_line(line, e))?;
                for _ in 0..mc.components() {
                    builder.free_loop(&[p, q])?;
                }
            }
            Statement::Core(n) => {
                if surface != SurfaceKind::Annulus {
                    return Err(syntax(line, format!("`core` needs the annulus, not the {surface}")));
                }
                for _ in 0..n {
                    builder.free_loop(&[1])?;
                }
            }
        }
    }
    builder.build()
}

pub fn parse_diagram(text: &str) -> Result<Diagram, DiagramError> {
    parse_diagram_with(text, |_, _| Ok(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Homology;

    #[test]
    fn one_crossing_kink() {
        let d = parse_diagram("disk; X[1,2,2,1]").unwrap();
        assert_eq!(d.num_crossings(), 1);
        assert_eq!(d.crossings()[0].name, "X1");
        assert_eq!(d.arcs().len(), 2);
    }

    #[test]
    fn torus_curve() {
        let d = parse_diagram("torus; curve (1,0) x1").unwrap();
        assert_eq!(d.num_crossings(), 0);
        assert_eq!(d.loops(), &[Homology::new(1, 0)]);
        let d = parse_diagram("surface torus\ncurve (0,-1) x3 # three parallel copies").unwrap();
        assert_eq!(d.loops().len(), 3);
    }

    #[test]
    fn full_statements() {
        let text = "surface annulus\ncrossing c: ports a,b,b,a\narc a: counters (1)\n";
        let d = parse_diagram(text).unwrap();
        assert_eq!(d.total_counters(), Homology::new(1, 0));
        let d = parse_diagram("annulus; core x2").unwrap();
        assert_eq!(d.loops().len(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_diagram("disk\nX[1,2,2,1]\nfoo bar") {
            Err(DiagramError::Syntax { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_diagram("torus\nX[1,1,2,2]\narc 1: counters (1)") {
            Err(DiagramError::Syntax { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_diagram("X[1,2,2,1]"), Err(DiagramError::MissingSurface)));
        assert!(matches!(parse_diagram("disk; X[1,1,1,2]"), Err(DiagramError::PortMismatch { .. })));
        assert!(parse_diagram("disk; X[1,2,3]").is_err());
        assert!(parse_diagram("torus; curve (2,2) x1").is_err());
        assert!(parse_diagram("annulus; curve (1,0) x1").is_err());
        assert!(parse_diagram("klein").is_err());
        assert!(matches!(
            parse_diagram("disk; crossing c: ports 1,2,2,1; crossing c: ports 3,4,4,3"),
            Err(DiagramError::DuplicateCrossing(_))
        ));
    }

    #[test]
    fn explicit_names_are_not_reused() {
        let d = parse_diagram("disk; crossing X1: ports a,b,b,a; X[c,d,d,c]").unwrap();
        assert_eq!(d.crossings()[1].name, "X2");
    }
}
